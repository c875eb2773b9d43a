//! Finite posets on at most 64 elements, stored as strict up-set bitmasks.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    /// `above[a]` has bit `b` set iff `a < b`.
    above: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: usize,
    covers: Vec<(usize, usize)>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            elements: self.len(),
            covers: self.covers(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PosetJson::deserialize(d)?;
        Poset::from_relations(raw.elements, &raw.covers).map_err(serde::de::Error::custom)
    }
}

impl Poset {
    /// Order generated by the given pairs `a < b` (transitive closure).
    /// Rejects reflexive pairs and cycles.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::cap("poset elements", n as u128, 64u128));
        }
        let mut above = vec![0u64; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation {a} < {b} outside 0..{n}")));
            }
            if a == b {
                return Err(Error::Invalid(format!("reflexive relation {a} < {a}")));
            }
            above[a] |= 1 << b;
        }
        // closure by repeated propagation; n rounds suffice
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut acc = above[a];
                let mut rest = above[a];
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    acc |= above[b];
                }
                if acc != above[a] {
                    above[a] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(a) = (0..n).find(|&a| above[a] >> a & 1 == 1) {
            return Err(Error::Invalid(format!("relations are not antisymmetric: cycle through {a}")));
        }
        Ok(Self { above })
    }

    /// Parses `elements <d>` followed by `cover <a> <b>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{s}` is not a nonnegative integer"),
                })
            };
            let err = |m: &str| Error::Parse { line, message: m.to_string() };
            match (words.as_slice(), n) {
                (["elements", d], None) => {
                    let d = num(d)?;
                    if d > 64 {
                        return Err(err("at most 64 elements supported"));
                    }
                    n = Some(d);
                }
                (["elements", ..], _) => return Err(err("expected a single `elements <d>` line")),
                (["cover", a, b], Some(d)) => {
                    let (a, b) = (num(a)?, num(b)?);
                    if a >= d || b >= d {
                        return Err(err(&format!("element out of range 0..{d}")));
                    }
                    if a == b {
                        return Err(err("an element cannot cover itself"));
                    }
                    pairs.push((a, b));
                }
                (["cover", ..], _) => return Err(err("expected `cover <a> <b>` after `elements`")),
                ([w, ..], _) => return Err(err(&format!("unknown keyword `{w}`"))),
                ([], _) => unreachable!(),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            message: "missing `elements <d>` line".into(),
        })?;
        Self::from_relations(n, &pairs)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("elements {}\n", self.len());
        for (a, b) in self.covers() {
            let _ = writeln!(s, "cover {a} {b}");
        }
        s
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self { above: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    /// Strict relation `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn above_mask(&self, a: usize) -> u64 {
        self.above[a]
    }

    /// Elements strictly below `b`, as a bitmask.
    pub fn below_mask(&self, b: usize) -> u64 {
        (0..self.len())
            .filter(|&a| self.less(a, b))
            .fold(0, |m, a| m | 1 << a)
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_antichain(&self) -> bool {
        self.above.iter().all(|&m| m == 0)
    }

    /// Cover relations `a <. b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut rest = self.above[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                // b covers a unless some c with a < c < b
                if (0..self.len()).all(|c| !(self.less(a, c) && self.less(c, b))) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The lexicographically smallest linear extension.
    pub fn natural_order(&self) -> Vec<usize> {
        let n = self.len();
        let below: Vec<u64> = (0..n).map(|b| self.below_mask(b)).collect();
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&v| placed >> v & 1 == 0 && below[v] & !placed == 0)
                .expect("a finite poset has a minimal element");
            placed |= 1 << next;
            out.push(next);
        }
        out
    }

    /// Natural labeling: `label[x]` is the position of `x` in [`Poset::natural_order`].
    pub fn natural_labeling(&self) -> Vec<usize> {
        let mut label = vec![0; self.len()];
        for (pos, x) in self.natural_order().into_iter().enumerate() {
            label[x] = pos;
        }
        label
    }

    /// Every linear extension, as element sequences, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let below: Vec<u64> = (0..n).map(|b| self.below_mask(b)).collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(below: &[u64], placed: u64, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let n = below.len();
            if current.len() == n {
                out.push(current.clone());
                return;
            }
            for v in 0..n {
                if placed >> v & 1 == 0 && below[v] & !placed == 0 {
                    current.push(v);
                    rec(below, placed | 1 << v, current, out);
                    current.pop();
                }
            }
        }
        rec(&below, 0, &mut current, &mut out);
        out
    }

    fn code_under(&self, perm: &[usize]) -> u64 {
        let n = self.len();
        let mut code = 0u64;
        for a in 0..n {
            let mut rest = self.above[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                code |= 1 << (perm[a] * n + perm[b]);
            }
        }
        code
    }

    /// Smallest relation-matrix bitmask over all relabelings (at most 8 elements).
    pub fn canonical_certificate(&self) -> Result<u64> {
        let n = self.len();
        if n > 8 {
            return Err(Error::cap("poset elements for canonical form", n as u128, 8u128));
        }
        Ok((0..n)
            .permutations(n)
            .map(|p| self.code_under(&p))
            .min()
            .unwrap_or(0))
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len()
            && self.relation_count() == other.relation_count()
            && self.canonical_certificate().ok() == other.canonical_certificate().ok()
    }
}

/// One representative per isomorphism class of posets on `n` elements,
/// ordered by canonical certificate.
///
/// Every poset has a natural labeling, so it suffices to scan relations
/// contained in `{(a, b) : a < b}` and keep the transitive ones.
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    if n > 6 {
        return Err(Error::cap("poset elements for exhaustive generation", n as u128, 6u128));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut above = vec![0u64; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                above[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| {
            let mut rest = above[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if above[b] & !above[a] != 0 {
                    return false;
                }
            }
            true
        });
        if !transitive {
            continue;
        }
        let p = Poset { above };
        let cert = p.canonical_certificate()?;
        if seen.insert(cert) {
            reps.push((cert, p));
        }
    }
    reps.sort_by_key(|(c, _)| *c);
    Ok(reps.into_iter().map(|(_, p)| p).collect())
}

/// Distinct canonical certificates among `posets`.
pub fn distinct_classes(posets: &[Poset]) -> Result<usize> {
    Ok(posets
        .iter()
        .map(Poset::canonical_certificate)
        .collect::<Result<BTreeSet<_>>>()?
        .len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_covers() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p, Poset::chain(3));
    }

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_relations(2, &[(1, 1)]).is_err());
        assert!(Poset::from_relations(2, &[(0, 2)]).is_err());
        assert!(Poset::parse("elements 3\ncover 0 1\ncover 1 2\ncover 2 0\n").is_err());
    }

    #[test]
    fn parse_format() {
        let p = Poset::parse("# chain\nelements 3\ncover 0 1\ncover 1 2\n").unwrap();
        assert_eq!(p, Poset::chain(3));
        assert_eq!(Poset::parse(&p.to_text()).unwrap(), p);
        assert!(matches!(
            Poset::parse("elements 2\ncover 0 7\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Poset::parse("cover 0 1\n"), Err(Error::Parse { line: 1, .. })));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"elements":3,"covers":[[0,1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<Poset>(&json).unwrap(), p);
    }

    #[test]
    fn natural_labeling_is_lex_smallest() {
        // 2 < 0 and 1 free: smallest topological sort is 1, 2, 0
        let p = Poset::from_relations(3, &[(2, 0)]).unwrap();
        assert_eq!(p.natural_order(), vec![1, 2, 0]);
        assert_eq!(p.natural_labeling(), vec![2, 0, 1]);
    }

    #[test]
    fn linear_extension_counts() {
        assert_eq!(Poset::chain(4).linear_extensions().len(), 1);
        assert_eq!(Poset::antichain(4).linear_extensions().len(), 24);
        let v = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(v.linear_extensions(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn generator_matches_known_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        let five = all_posets(5).unwrap();
        assert_eq!(distinct_classes(&five).unwrap(), 63);
    }

    #[test]
    fn isomorphism() {
        let a = Poset::from_relations(3, &[(0, 1)]).unwrap();
        let b = Poset::from_relations(3, &[(2, 0)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&Poset::chain(3)));
    }
}
