//! Order polynomials, their star vectors, and order-polytope lattice-point
//! oracles.
//!
//! Ground truth is brute-force map counting followed by exact interpolation.
//! The descent statistic over linear extensions is a second route to the
//! order polytope's `h*`-vector; its convention (descents of the natural
//! labels read along the extension) was fixed by comparing against the
//! lattice-point counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::checks::{chain_check, enforce, positive_check, Check, Mode};
use crate::error::{Error, Result};
use crate::poly::{binomial_transform, int_serde, interpolate, IntPolynomial, Start, StarVector};
use crate::poset::Poset;
use crate::stapledon::{
    check_partial_sum_inequalities, stapledon_ab, stapledon_ca, symmetric_split, AuditReport, Family,
    StapledonAB, StapledonCA, SymmetricSplit,
};

/// Default element cap for order-polynomial interpolation.
pub const DEFAULT_POSET_CAP: usize = 7;
/// Element cap for linear-extension enumeration.
pub const DESCENT_CAP: usize = 8;
/// Largest `range^d` search space the map counters will attempt.
pub const MAP_BUDGET: u128 = 10_000_000_000;

fn check_budget(d: usize, range: u64) -> Result<()> {
    let space = (range as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if space > MAP_BUDGET {
        return Err(Error::cap("map enumeration space", space, MAP_BUDGET));
    }
    Ok(())
}

/// Number of maps `f: P -> {lo..=hi}` with `a < b => f(a) < f(b)` (strict)
/// or `f(a) <= f(b)` (weak).
fn count_maps(p: &Poset, lo: i64, hi: i64, strict: bool) -> u64 {
    let order = p.natural_order();
    let covers = p.covers();
    // lower covers of each element, all placed before it in `order`
    let lower: Vec<Vec<usize>> = (0..p.len())
        .map(|b| covers.iter().filter(|c| c.1 == b).map(|c| c.0).collect())
        .collect();
    let gap = i64::from(strict);

    fn rec(order: &[usize], lower: &[Vec<usize>], values: &mut [i64], k: usize, lo: i64, hi: i64, gap: i64) -> u64 {
        if k == order.len() {
            return 1;
        }
        let x = order[k];
        let min = lower[x].iter().map(|&y| values[y] + gap).fold(lo, i64::max);
        let mut total = 0;
        for v in min..=hi {
            values[x] = v;
            total += rec(order, lower, values, k + 1, lo, hi, gap);
        }
        total
    }
    if lo > hi && !p.is_empty() {
        return 0;
    }
    let mut values = vec![0i64; p.len()];
    rec(&order, &lower, &mut values, 0, lo, hi, gap)
}

/// Strictly order-preserving maps into `[n]`.
pub fn count_strict_maps(p: &Poset, n: u64) -> Result<u64> {
    check_budget(p.len(), n)?;
    Ok(count_maps(p, 1, n as i64, true))
}

fn check_poset_cap(p: &Poset, cap: usize) -> Result<()> {
    if p.len() > cap {
        return Err(Error::cap("poset elements", p.len() as u128, cap as u128));
    }
    Ok(())
}

// interpolate from `nodes` and confirm on one extra node
fn fit_counts(
    degree: usize,
    first: u64,
    count: impl Fn(u64) -> Result<u64>,
) -> Result<IntPolynomial> {
    let points: Vec<(u64, u64)> = (first..=first + degree as u64)
        .map(|n| count(n).map(|c| (n, c)))
        .collect::<Result<_>>()?;
    let poly = interpolate(&points, degree)?;
    let extra = first + degree as u64 + 1;
    let want = count(extra)?;
    if poly.evaluate(extra) != BigInt::from(want) {
        return Err(Error::Postcondition(format!(
            "fitted polynomial {poly} misses the count {want} at n = {extra}"
        )));
    }
    Ok(poly)
}

/// The strict order polynomial `Ω°(n)`, degree `d`.
pub fn strict_order_poly(p: &Poset) -> Result<IntPolynomial> {
    strict_order_poly_capped(p, DEFAULT_POSET_CAP)
}

pub fn strict_order_poly_capped(p: &Poset, cap: usize) -> Result<IntPolynomial> {
    check_poset_cap(p, cap)?;
    fit_counts(p.len(), 1, |n| count_strict_maps(p, n))
}

/// `Ω*` as a length-`(d + 1)` vector. Since `Ω°(0) = 0` for `d >= 1`, the
/// series from `n = 1` and from `n = 0` agree and the start-1 numerator has a
/// vanishing `z^(d+1)` coefficient, which is checked here.
pub fn omega_star(p: &Poset) -> Result<StarVector> {
    omega_star_of(&strict_order_poly(p)?, p.len())
}

fn omega_star_of(omega: &IntPolynomial, d: usize) -> Result<StarVector> {
    if d == 0 {
        return Err(Error::Invalid("order star vector needs at least one element".into()));
    }
    let mut entries = binomial_transform(omega, d, Start::One)?.into_entries();
    let top = entries.pop().expect("start-1 vector has d + 2 entries");
    if !top.is_zero() {
        return Err(Error::Postcondition(format!("Omega* has nonzero z^{} coefficient {top}", d + 1)));
    }
    StarVector::new(entries, d, Start::Zero)
}

/// Conditions of the order-polynomial decomposition on a split of `Ω*`.
pub fn order_split_checks(omega_star: &StarVector, split: &SymmetricSplit) -> Vec<Check> {
    let d = split.degree;
    let one = BigInt::one();
    let mut checks = vec![
        Check::equal("a - b = Omega*", &split.reconstruct(), &omega_star.entries().to_vec()),
        Check::new("a0 = 1", split.p[0] == one, format!("a0 = {}", split.p[0])),
        chain_check("a0 <= a1 <= aj", &split.p, d.saturating_sub(1)),
        positive_check("a positive", &split.p),
        positive_check("b positive", &split.q),
        Check::equal("a0 = Omega*_d", &split.p[0], &omega_star.get(d)),
    ];
    if let Some(b0) = split.q.first() {
        checks.push(Check::new("b0 = 1", *b0 == one, format!("b0 = {b0}")));
        checks.push(chain_check("b0 <= b1 <= bj", &split.q, d.saturating_sub(2)));
    }
    checks
}

/// `Ω* = a - b` with `a`, `b` symmetric; in verify mode the positivity and
/// monotonicity conditions are enforced.
pub fn order_decomposition(p: &Poset, mode: Mode) -> Result<SymmetricSplit> {
    let w = omega_star(p)?;
    let split = symmetric_split(w.entries(), p.len())?;
    enforce(mode, &order_split_checks(&w, &split))?;
    Ok(split)
}

/// Lattice points of `n·O` (weakly order-preserving maps into `{0..n}`) or of
/// its interior (strictly order-preserving maps into `{1..n-1}`).
pub fn order_polytope_points(p: &Poset, n: u64, interior: bool) -> Result<u64> {
    check_budget(p.len(), n + 1)?;
    Ok(if interior {
        count_maps(p, 1, n as i64 - 1, true)
    } else {
        count_maps(p, 0, n as i64, false)
    })
}

/// `ehr_O(n)`, interpolated from `n = 0..=d`.
pub fn ehrhart_polynomial(p: &Poset) -> Result<IntPolynomial> {
    check_poset_cap(p, DEFAULT_POSET_CAP)?;
    fit_counts(p.len(), 0, |n| order_polytope_points(p, n, false))
}

/// `ehr_{O°}(n)`, interpolated from `n = 1..=d+1`.
pub fn interior_ehrhart_polynomial(p: &Poset) -> Result<IntPolynomial> {
    check_poset_cap(p, DEFAULT_POSET_CAP)?;
    fit_counts(p.len(), 1, |n| order_polytope_points(p, n, true))
}

/// `h*` of the order polytope from lattice-point counts.
pub fn lattice_hstar(p: &Poset) -> Result<StarVector> {
    binomial_transform(&ehrhart_polynomial(p)?, p.len(), Start::Zero)
}

/// `h*` of the interior, start-1 convention.
pub fn interior_hstar(p: &Poset) -> Result<StarVector> {
    binomial_transform(&interior_ehrhart_polynomial(p)?, p.len(), Start::One)
}

/// Distribution of descents over linear extensions, where a descent is a
/// position at which the natural labels decrease.
pub fn descent_hstar(p: &Poset) -> Result<StarVector> {
    if p.len() > DESCENT_CAP {
        return Err(Error::cap("poset elements for linear extensions", p.len() as u128, DESCENT_CAP as u128));
    }
    let label = p.natural_labeling();
    let mut counts = vec![BigInt::zero(); p.len() + 1];
    for ext in p.linear_extensions() {
        let des = ext.windows(2).filter(|w| label[w[0]] > label[w[1]]).count();
        counts[des] += 1;
    }
    StarVector::new(counts, p.len(), Start::Zero)
}

/// Descent `h*`-vector, checked against the lattice-point route.
pub fn hstar_via_descents(p: &Poset) -> Result<StarVector> {
    let fast = descent_hstar(p)?;
    let slow = lattice_hstar(p)?;
    if fast != slow {
        return Err(Error::Postcondition(format!(
            "descent h* {fast} disagrees with lattice h* {slow}"
        )));
    }
    Ok(fast)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityRow {
    pub n: u64,
    /// `(-1)^d ehr_O(-n)`.
    #[serde(with = "int_serde")]
    pub reciprocal: BigInt,
    /// Direct interior count of `n·O`.
    pub interior: u64,
}

/// Everything computed for one poset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderReport {
    pub poset: Poset,
    pub omega: IntPolynomial,
    pub omega_star: StarVector,
    pub split: SymmetricSplit,
    pub ehrhart: IntPolynomial,
    pub hstar: StarVector,
    pub hstar_descents: StarVector,
    pub hstar_interior: StarVector,
    pub stapledon_ab: StapledonAB,
    pub stapledon_ca: StapledonCA,
    pub reciprocity: Vec<ReciprocityRow>,
    pub audits: Vec<AuditReport>,
    pub checks: Vec<Check>,
}

impl OrderReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn analyze_poset(p: &Poset, mode: Mode) -> Result<OrderReport> {
    let d = p.len();
    if d == 0 {
        return Err(Error::Inapplicable {
            what: "order decomposition",
            reason: crate::error::SkipReason::Empty,
        });
    }
    let omega = strict_order_poly(p)?;
    let w = omega_star_of(&omega, d)?;
    let split = symmetric_split(w.entries(), d)?;
    let ehrhart = ehrhart_polynomial(p)?;
    let hstar = binomial_transform(&ehrhart, d, Start::Zero)?;
    let hstar_descents = descent_hstar(p)?;
    let hstar_interior = interior_hstar(p)?;
    let ab = stapledon_ab(&hstar)?;
    let ca = stapledon_ca(&hstar, Some(&hstar_interior))?;

    let mut checks = order_split_checks(&w, &split);
    checks.push(Check::equal("Omega*_d = 1", &w.get(d), &BigInt::one()));
    if !p.is_antichain() {
        checks.push(Check::equal("Omega*_1 = 0 (not an antichain)", &w.get(1), &BigInt::zero()));
    }
    let shifted: Vec<BigInt> = hstar_interior.entries()[1..].to_vec();
    checks.push(Check::equal("Omega* = h*_interior / z", &w.entries().to_vec(), &shifted));
    let reversed: Vec<BigInt> = hstar.entries().iter().rev().cloned().collect();
    checks.push(Check::equal("Omega* = z^d h*(1/z)", &w.entries().to_vec(), &reversed));
    checks.push(Check::equal("descent h* = lattice h*", &hstar_descents, &hstar));

    let sign = if d.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let reciprocity: Vec<ReciprocityRow> = (1..=d as u64 + 2)
        .map(|n| {
            Ok(ReciprocityRow {
                n,
                reciprocal: &sign * ehrhart.evaluate(-(n as i64)),
                interior: order_polytope_points(p, n, true)?,
            })
        })
        .collect::<Result<_>>()?;
    let bad: Vec<u64> = reciprocity
        .iter()
        .filter(|r| r.reciprocal != BigInt::from(r.interior))
        .map(|r| r.n)
        .collect();
    checks.push(Check::new("reciprocity", bad.is_empty(), format!("{bad:?}")));

    checks.extend(ab.checks.iter().map(|c| prefixed("stapledon a/b: ", c)));
    checks.extend(ca.checks.iter().map(|c| prefixed("stapledon c/a: ", c)));
    checks.push(Check::equal("a/b and c/a agree on a", &ab.a, &ca.a));

    let audits = vec![
        check_partial_sum_inequalities(w.entries(), d, Family::MirrorSums),
        check_partial_sum_inequalities(w.entries(), d, Family::BinomialGrowth),
        check_partial_sum_inequalities(hstar.entries(), d, Family::TopSumsBelowLow),
        check_partial_sum_inequalities(hstar.entries(), d, Family::TopSumsWithLeadBelowLow),
    ];
    checks.extend(audits.iter().map(AuditReport::as_check));
    enforce(mode, &checks)?;

    Ok(OrderReport {
        poset: p.clone(),
        omega,
        omega_star: w,
        split,
        ehrhart,
        hstar,
        hstar_descents,
        hstar_interior,
        stapledon_ab: ab,
        stapledon_ca: ca,
        reciprocity,
        audits,
        checks,
    })
}

pub(crate) fn prefixed(prefix: &str, c: &Check) -> Check {
    Check::new(format!("{prefix}{}", c.name), c.holds, c.detail.clone())
}
