//! Symmetric decompositions of star vectors and the partial-sum inequality
//! families derived from them.
//!
//! Every split computed here exists and is unique by linear algebra alone;
//! what is asserted about them is positivity and monotonicity of the parts. Those
//! properties are therefore recorded as [`Check`]s and never assumed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::checks::{chain_check, nonnegative_check, Check};
use crate::error::{Error, Result};
use crate::poly::{binomial, int_serde, Start, StarVector};

fn entry(v: &[BigInt], i: usize) -> BigInt {
    v.get(i).cloned().unwrap_or_else(BigInt::zero)
}

fn is_symmetric(v: &[BigInt]) -> bool {
    v.iter().eq(v.iter().rev())
}

/// `v = p - q` with `p` symmetric of degree `D` (length `D + 1`) and `q`
/// symmetric of degree `D - 1` (length `D`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSplit {
    #[serde(with = "int_serde::vec")]
    pub p: Vec<BigInt>,
    #[serde(with = "int_serde::vec")]
    pub q: Vec<BigInt>,
    #[serde(rename = "D")]
    pub degree: usize,
}

impl SymmetricSplit {
    /// `p - q` with `q` zero-padded at index `D`.
    pub fn reconstruct(&self) -> Vec<BigInt> {
        self.p
            .iter()
            .enumerate()
            .map(|(j, pj)| pj - entry(&self.q, j))
            .collect()
    }
}

/// The unique symmetric split of `v` over degree `D`:
/// `p_j = v_D + ... + v_{D-j} - v_0 - ... - v_{j-1}` and `q_j = p_j - v_j`.
pub fn symmetric_split(v: &[BigInt], degree: usize) -> Result<SymmetricSplit> {
    if v.len() > degree + 1 {
        return Err(Error::Invalid(format!(
            "vector of length {} does not fit degree {degree}",
            v.len()
        )));
    }
    let d = degree;
    let mut p = Vec::with_capacity(d + 1);
    let mut acc = entry(v, d);
    p.push(acc.clone());
    for j in 1..=d {
        acc += entry(v, d - j);
        acc -= entry(v, j - 1);
        p.push(acc.clone());
    }
    let q: Vec<BigInt> = (0..d).map(|j| &p[j] - entry(v, j)).collect();
    let split = SymmetricSplit { p, q, degree };
    if !is_symmetric(&split.p) || !is_symmetric(&split.q) {
        return Err(Error::Postcondition(format!("split of {v:?} is not symmetric")));
    }
    let padded: Vec<BigInt> = (0..=d).map(|i| entry(v, i)).collect();
    if split.reconstruct() != padded {
        return Err(Error::Postcondition(format!("split of {v:?} does not reconstruct it")));
    }
    Ok(split)
}

/// `(1 + z + ... + z^(l-1)) h(z) = a(z) + z^l b(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StapledonAB {
    #[serde(with = "int_serde::vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "int_serde::vec")]
    pub b: Vec<BigInt>,
    /// Degree of `h`.
    pub s: usize,
    /// Codegree `D + 1 - s`.
    pub l: usize,
    pub warnings: Vec<String>,
    /// Monotonicity and nonnegativity audit of `a` and `b`.
    pub checks: Vec<Check>,
}

fn validate_hstar(h: &StarVector) -> Result<(usize, Vec<String>)> {
    if h.start() != Start::Zero {
        return Err(Error::Invalid("expected a start-0 h*-vector".into()));
    }
    let s = h
        .degree()
        .ok_or_else(|| Error::Invalid("h*-vector is identically zero".into()))?;
    let h0 = h.get(0);
    let mut warnings = Vec::new();
    if !h0.is_positive() {
        return Err(Error::Invalid(format!("h*_0 = {h0} must be at least 1")));
    }
    if !h0.is_one() {
        warnings.push(format!("h*_0 = {h0}: not a single-polytope h*-vector"));
    }
    Ok((s, warnings))
}

pub fn stapledon_ab(h: &StarVector) -> Result<StapledonAB> {
    let (s, warnings) = validate_hstar(h)?;
    let d = h.transform_degree();
    let l = d + 1 - s;
    let hv = h.entries();
    let prefix = |j: usize| -> BigInt { (0..=j).map(|i| entry(hv, i)).sum() };

    let a: Vec<BigInt> = (0..=d)
        .map(|j| prefix(j) - (d + 1 - j..=d).map(|i| entry(hv, i)).sum::<BigInt>())
        .collect();
    let b: Vec<BigInt> = (0..s)
        .map(|j| (s - j..=s).map(|i| entry(hv, i)).sum::<BigInt>() - prefix(j))
        .collect();

    // (1 + ... + z^(l-1)) h(z) against a(z) + z^l b(z), both of degree <= d
    let lhs: Vec<BigInt> = (0..=d)
        .map(|k| (0..l.min(k + 1)).map(|t| entry(hv, k - t)).sum())
        .collect();
    let rhs: Vec<BigInt> = (0..=d)
        .map(|k| entry(&a, k) + if k >= l { entry(&b, k - l) } else { BigInt::zero() })
        .collect();
    if lhs != rhs || !is_symmetric(&a) || !is_symmetric(&b) {
        return Err(Error::Postcondition(format!(
            "Stapledon identity fails for h = {h}: a = {a:?}, b = {b:?}"
        )));
    }

    let mut checks = vec![chain_check("a0 <= a1 <= aj", &a, d.saturating_sub(1))];
    if h.get(0).is_one() {
        checks.push(Check::new("a0 = 1", a[0].is_one(), format!("a0 = {}", a[0])));
    }
    checks.push(nonnegative_check("b nonnegative", &b));
    Ok(StapledonAB { a, b, s, l, warnings, checks })
}

/// `h(z) = c(z) - z a(z)` with `c` symmetric of degree `D + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StapledonCA {
    #[serde(with = "int_serde::vec")]
    pub c: Vec<BigInt>,
    #[serde(with = "int_serde::vec")]
    pub a: Vec<BigInt>,
    pub checks: Vec<Check>,
}

/// Degree-independent split. When the interior star vector is supplied
/// (start 1, same `D`), `c - a` is checked against it.
pub fn stapledon_ca(h: &StarVector, interior: Option<&StarVector>) -> Result<StapledonCA> {
    let ab = stapledon_ab(h)?;
    let d = h.transform_degree();
    let a = ab.a;
    let c: Vec<BigInt> = (0..=d + 1)
        .map(|j| {
            let prev = if j == 0 { BigInt::zero() } else { entry(&a, j - 1) };
            prev + h.get(j)
        })
        .collect();
    if !is_symmetric(&c) {
        return Err(Error::Postcondition(format!("c = {c:?} is not symmetric")));
    }
    let recon: Vec<BigInt> = (0..=d + 1)
        .map(|j| &c[j] - if j == 0 { BigInt::zero() } else { entry(&a, j - 1) })
        .collect();
    let hv: Vec<BigInt> = (0..=d + 1).map(|j| h.get(j)).collect();
    if recon != hv {
        return Err(Error::Postcondition("c(z) - z a(z) != h(z)".into()));
    }

    let mut checks = vec![
        chain_check("a0 <= a1 <= aj", &a, d.saturating_sub(1)),
        chain_check("c0 <= c1 <= cj", &c, d),
    ];
    if h.get(0).is_one() {
        checks.push(Check::new("c0 = 1", c[0].is_one(), format!("c0 = {}", c[0])));
    }
    if let Some(inner) = interior {
        if inner.start() != Start::One || inner.transform_degree() != d {
            return Err(Error::Invalid("interior star vector must be start-1 with the same D".into()));
        }
        let diff: Vec<BigInt> = (0..=d + 1).map(|j| &c[j] - entry(&a, j)).collect();
        checks.push(Check::equal("c - a = interior h*", &diff, &inner.entries().to_vec()));
    }
    Ok(StapledonCA { c, a, checks })
}

/// Inequality families checked on star vectors. `d` is the transform degree
/// and `x` the cyclomatic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `v_{d-2} + ... + v_{d-j} >= v_2 + ... + v_j`, `2 <= j <= d/2`.
    MirrorSums,
    /// `v_{x-1} + ... + v_{x-j} >= v_1 + ... + v_j`, `1 <= j <= (x-1)/2`.
    MirrorSumsFromOne,
    /// `v_{x-1} + ... + v_{x-j} >= v_2 + ... + v_{j+1}`, `1 <= j <= (x-1)/2`.
    MirrorSumsShifted,
    /// `h_{d-1} + ... + h_{d-j} <= h_2 + ... + h_{j+1}`, `1 <= j <= d/2 - 1`.
    TopSumsBelowLow,
    /// `h_d + ... + h_{d-j+1} <= h_2 + ... + h_{j+1}`, `1 <= j <= d/2 - 1`.
    TopSumsWithLeadBelowLow,
    /// `v_{d-j} >= v_j`, `2 <= j <= (d-1)/2`.
    MirrorEntries,
    /// `v_{x-j} >= v_j`, `1 <= j <= x/2`.
    MirrorEntriesFromOne,
    /// `v_{d-j} <= C(v_{d-1} + j - 1, j)`, `1 <= j <= d`.
    BinomialGrowth,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("family serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Vacuous,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub j: usize,
    #[serde(with = "int_serde")]
    pub lhs: BigInt,
    #[serde(with = "int_serde")]
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub family: Family,
    pub parameters: BTreeMap<String, usize>,
    /// `">="` or `"<="`, read as `lhs relation rhs`.
    pub relation: String,
    pub rows: Vec<AuditRow>,
    pub verdict: Verdict,
}

impl AuditReport {
    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub fn as_check(&self) -> Check {
        let bad: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.holds)
            .map(|r| format!("j={}: {} {} {} fails", r.j, r.lhs, self.relation, r.rhs))
            .collect();
        Check::new(self.family.to_string(), bad.is_empty(), bad.join("; "))
    }
}

fn sum_range(v: &[BigInt], idx: impl Iterator<Item = usize>) -> BigInt {
    idx.map(|i| entry(v, i)).sum()
}

/// Evaluates one inequality family over its index range. Violations are
/// reported in the rows, never raised. `degree` is `d` for the chromatic,
/// order and Ehrhart families and the cyclomatic number for the flow families.
pub fn check_partial_sum_inequalities(v: &[BigInt], degree: usize, family: Family) -> AuditReport {
    let d = degree;
    let (range, ge): (std::ops::RangeInclusive<usize>, bool) = match family {
        Family::MirrorSums => (2..=d / 2, true),
        Family::MirrorSumsFromOne | Family::MirrorSumsShifted => (1..=d.saturating_sub(1) / 2, true),
        Family::TopSumsBelowLow | Family::TopSumsWithLeadBelowLow => (1..=(d / 2).saturating_sub(1), false),
        Family::MirrorEntries => (2..=d.saturating_sub(1) / 2, true),
        Family::MirrorEntriesFromOne => (1..=d / 2, true),
        Family::BinomialGrowth => (1..=d, false),
    };
    let rows: Vec<AuditRow> = range
        .map(|j| {
            let (lhs, rhs) = match family {
                Family::MirrorSums => (
                    sum_range(v, (2..=j).map(|i| d - i)),
                    sum_range(v, 2..=j),
                ),
                Family::MirrorSumsFromOne => (sum_range(v, (1..=j).map(|i| d - i)), sum_range(v, 1..=j)),
                Family::MirrorSumsShifted => {
                    (sum_range(v, (1..=j).map(|i| d - i)), sum_range(v, 2..=j + 1))
                }
                Family::TopSumsBelowLow => (sum_range(v, (1..=j).map(|i| d - i)), sum_range(v, 2..=j + 1)),
                Family::TopSumsWithLeadBelowLow => (sum_range(v, (0..j).map(|i| d - i)), sum_range(v, 2..=j + 1)),
                Family::MirrorEntries | Family::MirrorEntriesFromOne => (entry(v, d - j), entry(v, j)),
                Family::BinomialGrowth => {
                    let top = entry(v, d - 1) + BigInt::from(j) - 1;
                    (entry(v, d - j), binomial(&top, j as i64))
                }
            };
            let holds = if ge { lhs >= rhs } else { lhs <= rhs };
            AuditRow { j, lhs, rhs, holds }
        })
        .collect();
    let verdict = if rows.is_empty() {
        Verdict::Vacuous
    } else if rows.iter().all(|r| r.holds) {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    let key = match family {
        Family::MirrorSumsFromOne | Family::MirrorSumsShifted | Family::MirrorEntriesFromOne => "xi",
        _ => "d",
    };
    AuditReport {
        family,
        parameters: BTreeMap::from([(key.to_string(), d)]),
        relation: if ge { ">=" } else { "<=" }.to_string(),
        rows,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn split_examples() {
        let s = symmetric_split(&ints(&[0, 0, 2, 4]), 3).unwrap();
        assert_eq!((s.p, s.q), (ints(&[4, 6, 6, 4]), ints(&[4, 6, 4])));
        let s = symmetric_split(&ints(&[0, 1, 1]), 2).unwrap();
        assert_eq!((s.p, s.q), (ints(&[1, 2, 1]), ints(&[1, 1])));
        let s = symmetric_split(&ints(&[1]), 0).unwrap();
        assert_eq!((s.p, s.q), (ints(&[1]), vec![]));
        assert!(symmetric_split(&ints(&[1, 2, 3]), 1).is_err());
    }

    #[test]
    fn split_pads_short_vectors() {
        let s = symmetric_split(&ints(&[0, 1]), 3).unwrap();
        assert_eq!(s.reconstruct(), ints(&[0, 1, 0, 0]));
    }

    fn sv(v: &[i64], d: usize) -> StarVector {
        StarVector::from_i64s(v, d, Start::Zero).unwrap()
    }

    #[test]
    fn ab_examples() {
        let r = stapledon_ab(&sv(&[1, 1, 0], 2)).unwrap();
        assert_eq!((r.a, r.b, r.s, r.l), (ints(&[1, 2, 1]), ints(&[0]), 1, 2));
        let r = stapledon_ab(&sv(&[1, 0], 1)).unwrap();
        assert_eq!((r.a, r.b), (ints(&[1, 1]), vec![]));
        // (1 + z)(1 + 4z + z^2) = 1 + 5z + 5z^2 + z^3
        let r = stapledon_ab(&sv(&[1, 4, 1, 0], 3)).unwrap();
        assert_eq!((r.a, r.b), (ints(&[1, 5, 5, 1]), ints(&[0, 0])));
        assert!(r.checks.iter().all(|c| c.holds));
    }

    #[test]
    fn ab_rejects_bad_input() {
        assert!(stapledon_ab(&sv(&[0, 0, 0], 2)).is_err());
        assert!(stapledon_ab(&sv(&[0, 1, 1], 2)).is_err());
        let r = stapledon_ab(&sv(&[2, 1, 0], 2)).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn ca_examples() {
        let interior = StarVector::from_i64s(&[0, 0, 1, 1], 2, Start::One).unwrap();
        let r = stapledon_ca(&sv(&[1, 1, 0], 2), Some(&interior)).unwrap();
        assert_eq!((r.c.clone(), r.a.clone()), (ints(&[1, 2, 2, 1]), ints(&[1, 2, 1])));
        assert!(r.checks.iter().all(|c| c.holds), "{:?}", r.checks);

        let r = stapledon_ca(&sv(&[1, 0], 1), None).unwrap();
        assert_eq!((r.c, r.a), (ints(&[1, 1, 1]), ints(&[1, 1])));
        let r = stapledon_ca(&sv(&[1, 0, 0], 2), None).unwrap();
        assert_eq!((r.c, r.a), (ints(&[1, 1, 1, 1]), ints(&[1, 1, 1])));
    }

    #[test]
    fn ca_detects_wrong_interior() {
        let wrong = StarVector::from_i64s(&[0, 0, 2, 0], 2, Start::One).unwrap();
        let r = stapledon_ca(&sv(&[1, 1, 0], 2), Some(&wrong)).unwrap();
        assert!(!r.checks.iter().all(|c| c.holds));
    }

    #[test]
    fn family_examples() {
        let r = check_partial_sum_inequalities(&ints(&[0, 0, 0, 6]), 3, Family::MirrorSums);
        assert_eq!(r.verdict, Verdict::Vacuous);

        let r = check_partial_sum_inequalities(&ints(&[0, 0, 0, 2]), 2, Family::MirrorEntriesFromOne);
        assert_eq!(r.rows, vec![AuditRow { j: 1, lhs: 0.into(), rhs: 0.into(), holds: true }]);

        let r = check_partial_sum_inequalities(&ints(&[0, 1, 11, 11, 1]), 4, Family::MirrorSums);
        assert_eq!(r.rows, vec![AuditRow { j: 2, lhs: 11.into(), rhs: 11.into(), holds: true }]);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn binomial_growth_examples() {
        let r = check_partial_sum_inequalities(&ints(&[0, 0, 0, 6]), 3, Family::BinomialGrowth);
        assert_eq!(r.rows[0], AuditRow { j: 1, lhs: 0.into(), rhs: 0.into(), holds: true });
        assert_eq!(r.verdict, Verdict::Holds);
        let r = check_partial_sum_inequalities(&ints(&[0, 0, 2, 4]), 3, Family::BinomialGrowth);
        assert_eq!(r.rows[0], AuditRow { j: 1, lhs: 2.into(), rhs: 2.into(), holds: true });
        // v_{d-1} = 0 forces every other entry to vanish
        let r = check_partial_sum_inequalities(&ints(&[0, 1, 0, 6]), 3, Family::BinomialGrowth);
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn violations_are_reported() {
        let r = check_partial_sum_inequalities(&ints(&[0, 0, 5, 1, 0, 1]), 5, Family::MirrorEntries);
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(!r.as_check().holds);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["family"], "mirror_entries");
        assert_eq!(json["rows"][0]["lhs"], 1);
    }

    // rank of the linear map (p, q) -> p - q over symmetric pairs
    fn split_map_rank(d: usize) -> usize {
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for k in 0..=d / 2 {
            let mut c = vec![0; d + 1];
            c[k] = 1;
            c[d - k] = 1;
            cols.push(c);
        }
        if d >= 1 {
            for k in 0..=(d - 1) / 2 {
                let mut c = vec![0; d + 1];
                c[k] = -1;
                c[d - 1 - k] = -1;
                cols.push(c);
            }
        }
        // fraction-free Gaussian elimination over rows = cols transposed
        let mut m: Vec<Vec<i128>> = cols
            .into_iter()
            .map(|c| c.into_iter().map(i128::from).collect())
            .collect();
        let mut rank = 0;
        for col in 0..=d {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let (a, b) = (pivot[col], row[col]);
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = *x * a - *y * b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn split_is_unique() {
        for d in 1..=8 {
            let unknowns = d / 2 + 1 + (d - 1) / 2 + 1;
            assert_eq!(unknowns, d + 1);
            assert_eq!(split_map_rank(d), d + 1, "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn split_reconstructs(v in prop::collection::vec(-50i64..50, 1..10), extra in 0usize..3) {
            let d = v.len() - 1 + extra;
            let s = symmetric_split(&ints(&v), d).unwrap();
            let mut padded = ints(&v);
            padded.resize(d + 1, BigInt::zero());
            prop_assert_eq!(s.reconstruct(), padded);
            prop_assert!(is_symmetric(&s.p) && is_symmetric(&s.q));
        }

        // reversing v gives p - z q for the split (p, q) of v
        #[test]
        fn reversal_duality(v in prop::collection::vec(-50i64..50, 2..10)) {
            let d = v.len() - 1;
            let s = symmetric_split(&ints(&v), d).unwrap();
            let rev: Vec<BigInt> = ints(&v).into_iter().rev().collect();
            let shifted: Vec<BigInt> = (0..=d)
                .map(|j| &s.p[j] - if j == 0 { BigInt::zero() } else { entry(&s.q, j - 1) })
                .collect();
            prop_assert_eq!(shifted, rev);
        }

        #[test]
        fn ab_and_ca_agree(tail in prop::collection::vec(0i64..20, 0..7), extra in 0usize..3) {
            let mut h = vec![1i64];
            h.extend(tail);
            let d = h.len() - 1 + extra;
            h.resize(d + 1, 0);
            let hv = StarVector::from_i64s(&h, d, Start::Zero).unwrap();
            let ab = stapledon_ab(&hv).unwrap();
            let ca = stapledon_ca(&hv, None).unwrap();
            prop_assert_eq!(ab.a, ca.a);
        }
    }
}
