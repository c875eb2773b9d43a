//! Multigraphs, orientations and exhaustive orientation enumeration.
//!
//! Vertex sets are small (at most 64 vertices), so reachability and
//! acyclicity tests run on `u64` adjacency masks.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest vertex count representable by the bitmask routines.
pub const MAX_VERTICES: usize = 64;

/// Default cap on the number of edges for `2^m` orientation scans.
pub const DEFAULT_ORIENTATION_EDGE_CAP: usize = 24;

/// Undirected multigraph with loops and parallel edges. Edge `i` is stored as
/// the pair `(u, v)` exactly as given, which also fixes the reference
/// orientation `u -> v` used by the flow counters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::cap("vertex count", vertex_count as u128, MAX_VERTICES as u128));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
            return Err(Error::Invalid(format!(
                "edge {u}-{v} has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Self { vertex_count, edges })
    }

    /// Parses the plain-text graph format:
    ///
    /// ```text
    /// # triangle
    /// vertices 3
    /// edge 0 1
    /// edge 1 2
    /// edge 0 2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            match (words[0], vertex_count) {
                ("vertices", None) => {
                    let [_, n] = words[..] else {
                        return Err(parse_err(line, "expected `vertices <n>`"));
                    };
                    let n = parse_usize(n, line)?;
                    if n > MAX_VERTICES {
                        return Err(parse_err(line, &format!("at most {MAX_VERTICES} vertices supported")));
                    }
                    vertex_count = Some(n);
                }
                ("vertices", Some(_)) => return Err(parse_err(line, "duplicate `vertices` line")),
                ("edge", Some(n)) => {
                    let [_, u, v] = words[..] else {
                        return Err(parse_err(line, "expected `edge <u> <v>`"));
                    };
                    let (u, v) = (parse_usize(u, line)?, parse_usize(v, line)?);
                    if u >= n || v >= n {
                        return Err(parse_err(line, &format!("endpoint out of range 0..{n}")));
                    }
                    edges.push((u, v));
                }
                ("edge", None) => return Err(parse_err(line, "`edge` before `vertices`")),
                (w, _) => return Err(parse_err(line, &format!("unknown keyword `{w}`"))),
            }
        }
        let n = vertex_count.ok_or_else(|| parse_err(1, "missing `vertices <n>` line"))?;
        Self::new(n, edges)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "edge {u} {v}");
        }
        s
    }

    pub fn edgeless(n: usize) -> Self {
        Self { vertex_count: n, edges: vec![] }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).tuple_combinations().collect();
        Self { vertex_count: n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Self { vertex_count: n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 2 {
            g.edges.push((n - 1, 0));
        }
        g
    }

    /// Hub 0 joined to a cycle on `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
        edges.extend((1..=rim).map(|i| (i, i % rim + 1)));
        Self { vertex_count: rim + 1, edges }
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn dipole(k: usize) -> Self {
        Self { vertex_count: 2, edges: vec![(0, 1); k] }
    }

    pub fn theta() -> Self {
        Self::dipole(3)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn has_loop(&self) -> bool {
        (0..self.edge_count()).any(|e| self.is_loop(e))
    }

    /// Undirected neighbour masks with loops and multiplicities dropped.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertex_count];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }

    /// Connected-component label of every vertex, labels in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.neighbor_masks();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for s in 0..self.vertex_count {
            if label[s] != usize::MAX {
                continue;
            }
            let mut seen = reach(&adj, 1 << s);
            while seen != 0 {
                let v = seen.trailing_zeros() as usize;
                label[v] = next;
                seen &= seen - 1;
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `|E| - |V| + c`; loops count as edges incident to their vertex.
    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::Invalid(format!(
                "edge index {e} out of range 0..{}",
                self.edges.len()
            )));
        }
        Ok(())
    }

    pub fn delete_edge(&self, e: usize) -> Result<Self> {
        self.check_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Self { vertex_count: self.vertex_count, edges })
    }

    /// Identifies the endpoints of `e` into the smaller label; labels above the
    /// removed vertex shift down by one. Parallel copies of `e` become loops.
    pub fn contract_edge(&self, e: usize) -> Result<Self> {
        self.check_edge(e)?;
        let (a, b) = self.edges[e];
        if a == b {
            return Err(Error::Invalid(format!("cannot contract loop edge {e}")));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| match x {
            x if x == gone => keep,
            x if x > gone => x - 1,
            x => x,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Ok(Self { vertex_count: self.vertex_count - 1, edges })
    }

    /// Edges whose removal disconnects their endpoints. Loops are never bridges.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                if u == v {
                    return false;
                }
                let mut adj = vec![0u64; self.vertex_count];
                for (i, &(x, y)) in self.edges.iter().enumerate() {
                    if i != e && x != y {
                        adj[x] |= 1 << y;
                        adj[y] |= 1 << x;
                    }
                }
                reach(&adj, 1 << u) & (1 << v) == 0
            })
            .collect()
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Same graph with loops removed and parallel edges merged, edges sorted.
    pub fn simplify(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .sorted()
            .dedup()
            .collect();
        Self { vertex_count: self.vertex_count, edges }
    }

    /// Same graph with vertices renamed by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count || perm.iter().collect::<HashSet<_>>().len() != perm.len() {
            return Err(Error::Invalid("relabeling is not a permutation".into()));
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.vertex_count, edges)
    }

    /// Canonical certificate of a simple graph: the smallest edge bitmask over all
    /// vertex relabelings. Multiplicities and loops are ignored.
    pub fn canonical_certificate(&self) -> Result<u64> {
        let n = self.vertex_count;
        if n > 8 {
            return Err(Error::cap("vertices for canonical form", n as u128, 8u128));
        }
        let simple = self.simplify();
        let pair_bit = pair_index_table(n);
        let mut best = u64::MAX;
        for perm in (0..n).permutations(n) {
            let code = simple
                .edges
                .iter()
                .fold(0u64, |acc, &(u, v)| acc | 1 << pair_bit[perm[u]][perm[v]]);
            best = best.min(code);
        }
        Ok(best)
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse { line, message: msg.to_string() }
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("`{s}` is not a nonnegative integer")))
}

// bit position of the unordered pair {u, v}, u != v, in an edge bitmask
fn pair_index_table(n: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![usize::MAX; n]; n];
    for (k, (u, v)) in (0..n).tuple_combinations().enumerate() {
        t[u][v] = k;
        t[v][u] = k;
    }
    t
}

/// All vertices reachable from `start` along `adj`.
pub(crate) fn reach(adj: &[u64], start: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Every connected simple graph on `n` vertices, one per isomorphism class,
/// ordered by canonical certificate.
pub fn connected_simple_graphs(n: usize) -> Result<Vec<Multigraph>> {
    if n > 7 {
        return Err(Error::cap("vertices for exhaustive enumeration", n as u128, 7u128));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        // a connected graph needs n - 1 edges
        if edges.len() + 1 < n {
            continue;
        }
        let g = Multigraph { vertex_count: n, edges };
        if !g.is_connected() {
            continue;
        }
        let cert = g.canonical_certificate()?;
        if seen.insert(cert) {
            out.push((cert, g));
        }
    }
    out.sort_by_key(|(c, _)| *c);
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// In-degree of every vertex under an orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InDegreeSequence(pub Vec<usize>);

/// An orientation of every edge of a graph. Bit `e` of `reversed` flips edge
/// `e` from its stored direction `u -> v` to `v -> u`; a loop is a directed
/// cycle either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orientation<'g> {
    graph: &'g Multigraph,
    reversed: u64,
}

impl<'g> Orientation<'g> {
    pub fn new(graph: &'g Multigraph, reversed: u64) -> Result<Self> {
        let m = graph.edge_count();
        if m < 64 && reversed >> m != 0 {
            return Err(Error::Invalid("direction bits beyond the edge count".into()));
        }
        Ok(Self { graph, reversed })
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn reversed_bits(&self) -> u64 {
        self.reversed
    }

    pub fn is_reversed(&self, e: usize) -> bool {
        self.reversed >> e & 1 == 1
    }

    /// `(tail, head)` of edge `e`.
    pub fn arc(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.graph.edge(e);
        if self.is_reversed(e) {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// `+1` if edge `e` points along its stored direction, `-1` otherwise.
    pub fn sign(&self, e: usize) -> i64 {
        if self.is_reversed(e) {
            -1
        } else {
            1
        }
    }

    fn successor_masks(&self) -> Vec<u64> {
        let mut succ = vec![0u64; self.graph.vertex_count()];
        for e in 0..self.graph.edge_count() {
            let (t, h) = self.arc(e);
            succ[t] |= 1 << h;
        }
        succ
    }

    fn predecessor_masks(&self) -> Vec<u64> {
        let mut pred = vec![0u64; self.graph.vertex_count()];
        for e in 0..self.graph.edge_count() {
            let (t, h) = self.arc(e);
            pred[h] |= 1 << t;
        }
        pred
    }

    /// No coherently oriented cycle. Loops and antiparallel pairs are cycles.
    pub fn is_acyclic(&self) -> bool {
        if self.graph.has_loop() {
            return false;
        }
        let pred = self.predecessor_masks();
        let n = self.graph.vertex_count();
        let mut remaining: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        // peel sources
        loop {
            let mut sources = 0u64;
            let mut rest = remaining;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if pred[v] & remaining == 0 {
                    sources |= 1 << v;
                }
            }
            if sources == 0 {
                return remaining == 0;
            }
            remaining &= !sources;
        }
    }

    /// Every connected component is strongly connected. This is equivalent to
    /// every edge lying on a coherently oriented cycle: an arc `t -> h` lies on
    /// a directed cycle iff `h` reaches `t`, and if that holds for every arc then
    /// reachability is symmetric along edges, hence along weak components.
    pub fn is_totally_cyclic(&self) -> bool {
        let succ = self.successor_masks();
        let pred = self.predecessor_masks();
        let undirected = self.graph.neighbor_masks();
        let mut done = 0u64;
        for v in 0..self.graph.vertex_count() {
            if done >> v & 1 == 1 {
                continue;
            }
            let comp = reach(&undirected, 1 << v);
            if reach(&succ, 1 << v) != comp || reach(&pred, 1 << v) != comp {
                return false;
            }
            done |= comp;
        }
        true
    }

    /// Direct check of the defining property: every edge lies on a coherently
    /// oriented cycle.
    pub fn every_edge_on_directed_cycle(&self) -> bool {
        let succ = self.successor_masks();
        (0..self.graph.edge_count()).all(|e| {
            let (t, h) = self.arc(e);
            t == h || reach(&succ, 1 << h) >> t & 1 == 1
        })
    }

    pub fn in_degrees(&self) -> InDegreeSequence {
        let mut deg = vec![0; self.graph.vertex_count()];
        for e in 0..self.graph.edge_count() {
            deg[self.arc(e).1] += 1;
        }
        InDegreeSequence(deg)
    }

    /// Human-readable arc list, e.g. `0->1 2->1`.
    pub fn describe(&self) -> String {
        (0..self.graph.edge_count())
            .map(|e| {
                let (t, h) = self.arc(e);
                format!("{t}->{h}")
            })
            .join(" ")
    }
}

fn check_orientation_cap(g: &Multigraph, cap: usize) -> Result<()> {
    let m = g.edge_count();
    if m > cap.min(63) {
        return Err(Error::cap("edges for orientation enumeration", m as u128, cap.min(63) as u128));
    }
    Ok(())
}

/// All acyclic orientations in increasing order of their direction bits.
/// Parallel edges must be co-directed; a graph with a loop has none.
pub fn enumerate_acyclic_orientations(g: &Multigraph) -> Result<Vec<Orientation<'_>>> {
    enumerate_acyclic_orientations_capped(g, DEFAULT_ORIENTATION_EDGE_CAP)
}

pub fn enumerate_acyclic_orientations_capped(g: &Multigraph, cap: usize) -> Result<Vec<Orientation<'_>>> {
    check_orientation_cap(g, cap)?;
    if g.has_loop() {
        return Ok(vec![]);
    }
    Ok((0..1u64 << g.edge_count())
        .map(|bits| Orientation { graph: g, reversed: bits })
        .filter(Orientation::is_acyclic)
        .collect())
}

/// All totally cyclic orientations in increasing order of their direction bits.
/// Both directions of a loop are listed.
pub fn enumerate_totally_cyclic_orientations(g: &Multigraph) -> Result<Vec<Orientation<'_>>> {
    enumerate_totally_cyclic_orientations_capped(g, DEFAULT_ORIENTATION_EDGE_CAP)
}

pub fn enumerate_totally_cyclic_orientations_capped(
    g: &Multigraph,
    cap: usize,
) -> Result<Vec<Orientation<'_>>> {
    check_orientation_cap(g, cap)?;
    Ok((0..1u64 << g.edge_count())
        .map(|bits| Orientation { graph: g, reversed: bits })
        .filter(Orientation::is_totally_cyclic)
        .collect())
}

/// Number of distinct (vertex-indexed) in-degree vectors.
pub fn in_degree_sequence_count(orientations: &[Orientation<'_>]) -> Result<usize> {
    let Some(first) = orientations.first() else {
        return Ok(0);
    };
    if orientations.iter().any(|o| o.graph != first.graph) {
        return Err(Error::Invalid("orientations over different graphs".into()));
    }
    Ok(orientations
        .iter()
        .map(Orientation::in_degrees)
        .collect::<HashSet<_>>()
        .len())
}

/// The poset on the vertex set generated by the arcs of an acyclic orientation.
pub fn orientation_to_poset(o: &Orientation<'_>) -> Result<Poset> {
    if !o.is_acyclic() {
        return Err(Error::Invalid("orientation has a directed cycle".into()));
    }
    let arcs: Vec<_> = (0..o.graph.edge_count()).map(|e| o.arc(e)).collect();
    Poset::from_relations(o.graph.vertex_count(), &arcs)
}
