//! Nowhere-zero modular and integral flow polynomials, counted over the
//! cycle space of a fixed spanning forest.
//!
//! Edge `i = (u, v)` of the graph is oriented `u -> v` for reference. A flow
//! is fixed by its values on the cotree edges; each tree edge then carries
//! the signed sum of the cotree values whose fundamental cycle uses it.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::checks::{chain_check, dominance_check, enforce, nonnegative_check, positive_check, Check, Mode};
use crate::error::{Error, Result, SkipReason};
use crate::graph::{enumerate_totally_cyclic_orientations, in_degree_sequence_count, Multigraph, Orientation};
use crate::order::prefixed;
use crate::poly::{binomial_transform, interpolate, IntPolynomial, Start, StarVector};
use crate::stapledon::{
    check_partial_sum_inequalities, stapledon_ca, symmetric_split, AuditReport, Family, SymmetricSplit,
};

/// Default cap on the cyclomatic number for flow enumeration.
pub const DEFAULT_CYCLOMATIC_CAP: usize = 8;
/// Largest number of cotree assignments a single count will visit.
pub const FLOW_BUDGET: u128 = 10_000_000_000;
/// Edge cap for the full edge-value scan.
pub const FULL_SCAN_EDGE_CAP: usize = 8;

/// Fundamental cycles of a breadth-first spanning forest.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    tree: Vec<usize>,
    cotree: Vec<usize>,
    /// `coef[c][t]`: signed use of tree edge `tree[t]` by the cycle of `cotree[c]`.
    coef: Vec<Vec<i64>>,
}

impl CycleBasis {
    pub fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; g.edge_count()];
        let mut incident: Vec<Vec<usize>> = vec![vec![]; n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            incident[u].push(e);
            if u != v {
                incident[v].push(e);
            }
        }
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &e in &incident[x] {
                    let (u, v) = g.edge(e);
                    let y = if u == x { v } else { u };
                    if !seen[y] {
                        seen[y] = true;
                        in_tree[e] = true;
                        parent[y] = x;
                        parent_edge[y] = Some(e);
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let tree: Vec<usize> = (0..g.edge_count()).filter(|&e| in_tree[e]).collect();
        let cotree: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
        let tree_pos = |e: usize| tree.iter().position(|&t| t == e).expect("tree edge");

        let coef = cotree
            .iter()
            .map(|&c| {
                let mut row = vec![0i64; tree.len()];
                let (u, v) = g.edge(c);
                // the cycle runs u -> v along c, then back from v to u in the tree
                let (mut a, mut b) = (v, u);
                while a != b {
                    if depth[a] >= depth[b] {
                        // travel a -> parent(a)
                        let e = parent_edge[a].expect("non-root");
                        row[tree_pos(e)] += if g.edge(e).0 == a { 1 } else { -1 };
                        a = parent[a];
                    } else {
                        // travel parent(b) -> b, on the far half of the path
                        let e = parent_edge[b].expect("non-root");
                        row[tree_pos(e)] += if g.edge(e).1 == b { 1 } else { -1 };
                        b = parent[b];
                    }
                }
                row
            })
            .collect();
        Self { tree, cotree, coef }
    }

    pub fn cyclomatic_number(&self) -> usize {
        self.cotree.len()
    }

    /// Number of flows with cotree values drawn from `choices[c]` and every
    /// tree value accepted by `tree_ok(t, value)`.
    fn count(&self, choices: &[Vec<i64>], tree_ok: &dyn Fn(usize, i64) -> bool) -> u64 {
        fn rec(
            basis: &CycleBasis,
            choices: &[Vec<i64>],
            tree_ok: &dyn Fn(usize, i64) -> bool,
            c: usize,
            acc: &mut Vec<i64>,
        ) -> u64 {
            if c == basis.cotree.len() {
                return u64::from(acc.iter().enumerate().all(|(t, &x)| tree_ok(t, x)));
            }
            let mut total = 0;
            for &x in &choices[c] {
                for (a, k) in acc.iter_mut().zip(&basis.coef[c]) {
                    *a += k * x;
                }
                total += rec(basis, choices, tree_ok, c + 1, acc);
                for (a, k) in acc.iter_mut().zip(&basis.coef[c]) {
                    *a -= k * x;
                }
            }
            total
        }
        let mut acc = vec![0i64; self.tree.len()];
        rec(self, choices, tree_ok, 0, &mut acc)
    }
}

fn check_flow_caps(xi: usize, range: u64) -> Result<()> {
    if xi > DEFAULT_CYCLOMATIC_CAP {
        return Err(Error::cap("cyclomatic number", xi as u128, DEFAULT_CYCLOMATIC_CAP as u128));
    }
    let space = (range as u128).checked_pow(xi as u32).unwrap_or(u128::MAX);
    if space > FLOW_BUDGET {
        return Err(Error::cap("cotree assignments", space, FLOW_BUDGET));
    }
    Ok(())
}

/// Nowhere-zero `Z_n`-flows.
pub fn modular_flow_count(g: &Multigraph, n: u64) -> Result<u64> {
    modular_count_with(&CycleBasis::new(g), n)
}

fn modular_count_with(basis: &CycleBasis, n: u64) -> Result<u64> {
    check_flow_caps(basis.cyclomatic_number(), n.saturating_sub(1))?;
    let n = n as i64;
    let choices = vec![(1..n).collect::<Vec<_>>(); basis.cyclomatic_number()];
    Ok(basis.count(&choices, &|_, x| x.rem_euclid(n) != 0))
}

/// Nowhere-zero integer flows with `|x(e)| < n`.
pub fn integral_flow_count(g: &Multigraph, n: u64) -> Result<u64> {
    integral_count_with(&CycleBasis::new(g), n)
}

fn integral_count_with(basis: &CycleBasis, n: u64) -> Result<u64> {
    check_flow_caps(basis.cyclomatic_number(), (2 * n).saturating_sub(1))?;
    let n = n as i64;
    let values: Vec<i64> = (1 - n..n).filter(|&x| x != 0).collect();
    let choices = vec![values; basis.cyclomatic_number()];
    Ok(basis.count(&choices, &|_, x| x != 0 && x.abs() < n))
}

/// Integer flows on `o` with `0 < x(e) < n` along every arc.
pub fn positive_flow_count(o: &Orientation<'_>, n: u64) -> Result<u64> {
    positive_count_with(&CycleBasis::new(o.graph()), o, n)
}

fn positive_count_with(basis: &CycleBasis, o: &Orientation<'_>, n: u64) -> Result<u64> {
    check_flow_caps(basis.cyclomatic_number(), n.saturating_sub(1))?;
    let n = n as i64;
    let choices: Vec<Vec<i64>> = basis
        .cotree
        .iter()
        .map(|&c| (1..n).map(|x| x * o.sign(c)).collect())
        .collect();
    let signs: Vec<i64> = basis.tree.iter().map(|&t| o.sign(t)).collect();
    Ok(basis.count(&choices, &|t, x| {
        let y = x * signs[t];
        0 < y && y < n
    }))
}

/// Oracle: scans every nowhere-zero edge labelling and checks conservation.
pub fn modular_flow_count_full_scan(g: &Multigraph, n: u64) -> Result<u64> {
    let m = g.edge_count();
    if m > FULL_SCAN_EDGE_CAP {
        return Err(Error::cap("edges for the full flow scan", m as u128, FULL_SCAN_EDGE_CAP as u128));
    }
    if n <= 1 {
        return Ok(u64::from(m == 0));
    }
    let n = n as i64;
    let mut x = vec![1i64; m];
    let mut count = 0;
    loop {
        let mut net = vec![0i64; g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            net[v] += x[e];
            net[u] -= x[e];
        }
        if net.iter().all(|s| s.rem_euclid(n) == 0) {
            count += 1;
        }
        // odometer over {1..n-1}^m
        let mut i = 0;
        loop {
            if i == m {
                return Ok(count);
            }
            x[i] += 1;
            if x[i] < n {
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

/// Per totally cyclic orientation, the number of its strictly positive flows
/// below `n`. These partition the integral flows by sign pattern.
pub fn kochol_orientation_counts(g: &Multigraph, n: u64) -> Result<Vec<(Orientation<'_>, u64)>> {
    if !g.is_bridgeless() {
        return Err(Error::Inapplicable { what: "orientation flow counts", reason: SkipReason::Bridge });
    }
    let basis = CycleBasis::new(g);
    enumerate_totally_cyclic_orientations(g)?
        .into_iter()
        .map(|o| positive_count_with(&basis, &o, n).map(|c| (o, c)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KocholRow {
    pub n: u64,
    /// Sum over totally cyclic orientations of the positive-flow counts.
    pub orientation_sum: u64,
    pub integral: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowResult {
    pub graph: Multigraph,
    pub xi: usize,
    pub phi: IntPolynomial,
    pub f: IntPolynomial,
    pub phi_star: StarVector,
    pub f_star: StarVector,
    /// `φ* = α - β` over `D = ξ + 1`.
    pub phi_split: SymmetricSplit,
    /// `f* = c - d` over `D = ξ + 1`.
    pub f_split: SymmetricSplit,
    pub tc_orientation_count: u64,
    pub indegree_sequence_count: u64,
    pub kochol: Vec<KocholRow>,
    pub audits: Vec<AuditReport>,
    pub checks: Vec<Check>,
}

impl FlowResult {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn fit(counts: &[u64], xi: usize) -> Result<IntPolynomial> {
    let points: Vec<(u64, u64)> = (1..=xi as u64 + 1).zip(counts.iter().copied()).collect();
    let poly = interpolate(&points, xi)?;
    let extra = xi as u64 + 2;
    if poly.evaluate(extra) != BigInt::from(counts[xi + 1]) {
        return Err(Error::Postcondition(format!(
            "fitted polynomial {poly} misses the count {} at n = {extra}",
            counts[xi + 1]
        )));
    }
    Ok(poly)
}

fn sum_into(total: &mut [BigInt], part: &[BigInt]) {
    for (t, x) in total.iter_mut().zip(part) {
        *t += x;
    }
}

/// Both flow polynomials, their star vectors and symmetric splits, checked
/// against the orientation oracles. Graphs with a bridge have no nowhere-zero
/// flows and are reported as inapplicable.
pub fn flow_polynomials(g: &Multigraph, mode: Mode) -> Result<FlowResult> {
    if !g.is_bridgeless() {
        return Err(Error::Inapplicable { what: "flow decomposition", reason: SkipReason::Bridge });
    }
    let xi = g.cyclomatic_number();
    if xi == 0 {
        return Err(Error::Inapplicable { what: "flow decomposition", reason: SkipReason::Empty });
    }
    let basis = CycleBasis::new(g);
    let nodes: Vec<u64> = (1..=xi as u64 + 2).collect();
    let modular: Vec<u64> = nodes.iter().map(|&n| modular_count_with(&basis, n)).collect::<Result<_>>()?;
    let integral: Vec<u64> = nodes.iter().map(|&n| integral_count_with(&basis, n)).collect::<Result<_>>()?;
    let phi = fit(&modular, xi)?;
    let f = fit(&integral, xi)?;
    let phi_star = binomial_transform(&phi, xi, Start::One)?;
    let f_star = binomial_transform(&f, xi, Start::One)?;
    let phi_split = symmetric_split(phi_star.entries(), xi + 1)?;
    let f_split = symmetric_split(f_star.entries(), xi + 1)?;

    let tc = enumerate_totally_cyclic_orientations(g)?;
    let tc_count = BigInt::from(tc.len());
    let indeg = in_degree_sequence_count(&tc)?;
    let indeg_count = BigInt::from(indeg);

    // positive flows per orientation, and the closed-polytope split of each
    let mut per_orientation: Vec<Vec<u64>> = Vec::with_capacity(tc.len());
    let mut c_sum = vec![BigInt::zero(); xi + 2];
    let mut a_sum = vec![BigInt::zero(); xi + 1];
    let mut orientation_checks = Vec::new();
    let sign = if xi.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
    for o in &tc {
        let counts: Vec<u64> = nodes.iter().map(|&n| positive_count_with(&basis, o, n)).collect::<Result<_>>()?;
        let open = fit(&counts, xi)?;
        let closed_points: Vec<(i64, BigInt)> =
            (0..=xi as i64).map(|n| (n, &sign * open.evaluate(-n))).collect();
        let closed = interpolate(&closed_points, xi)?;
        let hstar = binomial_transform(&closed, xi, Start::Zero)?;
        let interior = binomial_transform(&open, xi, Start::One)?;
        let ca = stapledon_ca(&hstar, Some(&interior))?;
        sum_into(&mut c_sum, &ca.c);
        sum_into(&mut a_sum, &ca.a);
        orientation_checks.extend(
            ca.checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| prefixed(&format!("orientation {}: ", o.describe()), c)),
        );
        per_orientation.push(counts);
    }
    let kochol: Vec<KocholRow> = nodes
        .iter()
        .enumerate()
        .map(|(i, &n)| KocholRow {
            n,
            orientation_sum: per_orientation.iter().map(|c| c[i]).sum(),
            integral: integral[i],
        })
        .collect();

    let mut checks = vec![
        Check::equal("phi*_0 = 0", &phi_star.get(0), &BigInt::zero()),
        Check::equal("f*_0 = 0", &f_star.get(0), &BigInt::zero()),
        Check::equal("alpha - beta = phi*", &phi_split.reconstruct(), &phi_star.entries().to_vec()),
        Check::equal("c - d = f*", &f_split.reconstruct(), &f_star.entries().to_vec()),
        Check::equal("alpha0 = in-degree sequences", &phi_split.p[0], &indeg_count),
        Check::equal("beta0 = in-degree sequences", &phi_split.q[0], &indeg_count),
        Check::equal("phi*_(xi+1) = in-degree sequences", &phi_star.get(xi + 1), &indeg_count),
        Check::equal("c0 = totally cyclic orientations", &f_split.p[0], &tc_count),
        Check::equal("d0 = totally cyclic orientations", &f_split.q[0], &tc_count),
        Check::equal("f*_(xi+1) = totally cyclic orientations", &f_star.get(xi + 1), &tc_count),
        chain_check("alpha0 <= alpha1 <= alphaj", &phi_split.p, xi),
        chain_check("beta0 <= beta1 <= betaj", &phi_split.q, xi - 1),
        chain_check("c0 <= c1 <= cj", &f_split.p, xi),
        chain_check("d0 <= d1 <= dj", &f_split.q, xi - 1),
        positive_check("alpha positive", &phi_split.p),
        positive_check("beta positive", &phi_split.q),
        positive_check("c positive", &f_split.p),
        positive_check("d positive", &f_split.q),
        nonnegative_check("phi* nonnegative", phi_star.entries()),
        nonnegative_check("f* nonnegative", f_star.entries()),
        dominance_check("alpha_j >= beta_j", &phi_split.p, &phi_split.q, 1, xi),
        dominance_check("c_j >= d_j", &f_split.p, &f_split.q, 1, xi),
    ];
    let bad: Vec<u64> = kochol.iter().filter(|r| r.orientation_sum != r.integral).map(|r| r.n).collect();
    checks.push(Check::new("orientation sums = integral counts", bad.is_empty(), format!("{bad:?}")));
    checks.push(Check::equal("c = sum of orientation c", &f_split.p, &c_sum));
    checks.push(Check::equal("d = sum of orientation a", &f_split.q, &a_sum));
    checks.push(Check::new(
        "orientation splits monotone",
        orientation_checks.is_empty(),
        orientation_checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>().join("; "),
    ));
    if g.edge_count() <= FULL_SCAN_EDGE_CAP {
        let bad: Vec<u64> = nodes[..=xi]
            .iter()
            .zip(&modular)
            .filter(|&(&n, &c)| modular_flow_count_full_scan(g, n).map_or(true, |s| s != c))
            .map(|(&n, _)| n)
            .collect();
        checks.push(Check::new("modular counts = full scan", bad.is_empty(), format!("{bad:?}")));
    }

    let audits = vec![
        check_partial_sum_inequalities(phi_star.entries(), xi, Family::MirrorSumsFromOne),
        check_partial_sum_inequalities(phi_star.entries(), xi, Family::MirrorSumsShifted),
        check_partial_sum_inequalities(f_star.entries(), xi, Family::MirrorSumsFromOne),
        check_partial_sum_inequalities(f_star.entries(), xi, Family::MirrorSumsShifted),
        check_partial_sum_inequalities(phi_star.entries(), xi, Family::MirrorEntriesFromOne),
    ];
    let labels = ["phi*", "phi*", "f*", "f*", "phi*"];
    checks.extend(
        audits
            .iter()
            .zip(labels)
            .map(|(a, l)| prefixed(&format!("{l} "), &a.as_check())),
    );
    enforce(mode, &checks)?;

    Ok(FlowResult {
        graph: g.clone(),
        xi,
        phi,
        f,
        phi_star,
        f_star,
        phi_split,
        f_split,
        tc_orientation_count: tc.len() as u64,
        indegree_sequence_count: indeg as u64,
        kochol,
        audits,
        checks,
    })
}
