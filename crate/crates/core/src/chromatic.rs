//! Chromatic polynomials, their star vectors, and the decomposition of the
//! star vector into symmetric parts anchored at the acyclic-orientation count.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::checks::{chain_check, enforce, nonnegative_check, positive_check, Check, Mode};
use crate::error::{Error, Result, SkipReason};
use crate::graph::{enumerate_acyclic_orientations, orientation_to_poset, Multigraph};
use crate::order::omega_star;
use crate::poly::{binomial_transform, int_serde, IntPolynomial, Start, StarVector};
use crate::stapledon::{check_partial_sum_inequalities, symmetric_split, AuditReport, Family, SymmetricSplit};

/// Default vertex cap for deletion-contraction.
pub const DEFAULT_VERTEX_CAP: usize = 10;
/// Hard limit of the bitmask memo key.
const MAX_DC_VERTICES: usize = 11;

type Coeffs = Vec<i128>;

struct DeletionContraction {
    memo: HashMap<(usize, u64), Coeffs>,
}

fn remove_vertex(adj: &[u32], v: usize) -> Vec<u32> {
    let low = (1u32 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &m)| (m & low) | ((m >> 1) & !low))
        .collect()
}

fn falling_factorial(n: usize) -> Coeffs {
    let mut p: Coeffs = vec![1];
    for k in 0..n as i128 {
        // p * (x - k)
        let mut next = vec![0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= k * c;
        }
        p = next;
    }
    p
}

impl DeletionContraction {
    fn solve(&mut self, adj: Vec<u32>) -> Coeffs {
        let n = adj.len();
        // relabel by ascending degree so that isomorphic states often collide
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| adj[v].count_ones());
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj: Vec<u32> = order
            .iter()
            .map(|&v| {
                let mut m = 0u32;
                let mut rest = adj[v];
                while rest != 0 {
                    m |= 1 << pos[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                m
            })
            .collect();
        let mut key = 0u64;
        let mut bit = 0;
        for (u, row) in adj.iter().enumerate() {
            for v in u + 1..n {
                key |= u64::from(row >> v & 1) << bit;
                bit += 1;
            }
        }
        if let Some(hit) = self.memo.get(&(n, key)) {
            return hit.clone();
        }

        let edges = key.count_ones() as usize;
        let result = if edges == 0 {
            let mut p = vec![0; n + 1];
            p[n] = 1;
            p
        } else if edges == n * (n - 1) / 2 {
            falling_factorial(n)
        } else {
            let u = adj.iter().position(|&m| m != 0).expect("an edge exists");
            let v = adj[u].trailing_zeros() as usize;
            let mut deleted = adj.clone();
            deleted[u] &= !(1 << v);
            deleted[v] &= !(1 << u);
            let (keep, gone) = (u.min(v), u.max(v));
            let mut merged = deleted.clone();
            merged[keep] |= deleted[gone];
            for (w, row) in merged.iter_mut().enumerate() {
                if deleted[gone] >> w & 1 == 1 {
                    *row |= 1 << keep;
                }
            }
            merged[keep] &= !(1 << keep);
            let contracted = remove_vertex(&merged, gone);
            let mut p = self.solve(deleted);
            let q = self.solve(contracted);
            for (i, c) in q.into_iter().enumerate() {
                p[i] -= c;
            }
            p
        };
        self.memo.insert((n, key), result.clone());
        result
    }
}

/// `χ_G` by memoized deletion-contraction. Parallel edges impose one
/// constraint; any loop gives the zero polynomial.
pub fn chromatic_poly(g: &Multigraph) -> Result<IntPolynomial> {
    chromatic_poly_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn chromatic_poly_capped(g: &Multigraph, cap: usize) -> Result<IntPolynomial> {
    let limit = cap.min(MAX_DC_VERTICES);
    if g.vertex_count() > limit {
        return Err(Error::cap("vertices for deletion-contraction", g.vertex_count() as u128, limit as u128));
    }
    if g.has_loop() {
        return Ok(IntPolynomial::zero());
    }
    let mut adj = vec![0u32; g.vertex_count()];
    for &(u, v) in g.simplify().edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut dc = DeletionContraction { memo: HashMap::new() };
    Ok(IntPolynomial::from_integers(dc.solve(adj)))
}

/// Brute-force count of proper `n`-colourings.
pub fn count_proper_colorings(g: &Multigraph, n: u32) -> u64 {
    if g.has_loop() {
        return 0;
    }
    let adj = g.simplify().neighbor_masks();
    let mut colors = vec![u32::MAX; g.vertex_count()];

    fn rec(v: usize, adj: &[u64], colors: &mut [u32], n: u32) -> u64 {
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let clash = (0..v).any(|w| adj[v] >> w & 1 == 1 && colors[w] == c);
            if !clash {
                colors[v] = c;
                total += rec(v + 1, adj, colors, n);
            }
        }
        total
    }
    rec(0, &adj, &mut colors, n)
}

/// `χ*_G`: start-0 transform over `D = d`.
pub fn chi_star(g: &Multigraph) -> Result<StarVector> {
    binomial_transform(&chromatic_poly(g)?, g.vertex_count(), Start::Zero)
}

/// Sum of `Ω*` over the posets of all acyclic orientations. Equal to
/// `χ*_G` because every proper colouring induces exactly one acyclic
/// orientation whose strict order-preserving maps it is.
pub fn chi_star_via_orders(g: &Multigraph) -> Result<StarVector> {
    let d = g.vertex_count();
    if g.has_loop() {
        return Err(Error::Inapplicable { what: "sum over acyclic orientations", reason: SkipReason::Loop });
    }
    if d == 0 {
        return Err(Error::Inapplicable { what: "sum over acyclic orientations", reason: SkipReason::Empty });
    }
    let mut memo: HashMap<u64, StarVector> = HashMap::new();
    let mut total = vec![BigInt::zero(); d + 1];
    for o in enumerate_acyclic_orientations(g)? {
        let poset = orientation_to_poset(&o)?;
        let w = match poset.canonical_certificate() {
            Ok(cert) => match memo.get(&cert) {
                Some(w) => w.clone(),
                None => {
                    let w = omega_star(&poset)?;
                    memo.insert(cert, w.clone());
                    w
                }
            },
            Err(_) => omega_star(&poset)?,
        };
        for (t, x) in total.iter_mut().zip(w.entries()) {
            *t += x;
        }
    }
    StarVector::new(total, d, Start::Zero)
}

/// `v_{d-j} <= C(v_{d-1} + j - 1, j)` for `1 <= j <= D`.
pub fn binomial_growth_check(v: &StarVector) -> AuditReport {
    check_partial_sum_inequalities(v.entries(), v.transform_degree(), Family::BinomialGrowth)
}

/// Everything computed for one graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChromaticResult {
    pub graph: Multigraph,
    pub chi: IntPolynomial,
    pub chi_star: StarVector,
    /// `χ* = a - b`.
    pub split: SymmetricSplit,
    pub acyclic_count: u64,
    pub chi_star_via_orders: StarVector,
    pub audits: Vec<AuditReport>,
    pub checks: Vec<Check>,
}

impl ChromaticResult {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Computes `χ`, `χ*`, its symmetric split and every cross-check. In verify
/// mode a failing check is returned as a counterexample.
pub fn chromatic_decomposition(g: &Multigraph, mode: Mode) -> Result<ChromaticResult> {
    let d = g.vertex_count();
    if g.has_loop() {
        return Err(Error::Inapplicable { what: "chromatic decomposition", reason: SkipReason::Loop });
    }
    if d == 0 {
        return Err(Error::Inapplicable { what: "chromatic decomposition", reason: SkipReason::Empty });
    }
    let chi = chromatic_poly(g)?;
    let star = binomial_transform(&chi, d, Start::Zero)?;
    let split = symmetric_split(star.entries(), d)?;
    let acyclic_count = enumerate_acyclic_orientations(g)?.len() as u64;
    let acyclic = BigInt::from(acyclic_count);
    let via_orders = chi_star_via_orders(g)?;

    let mut checks = vec![
        Check::equal("chi(0) = 0", &chi.evaluate(0), &BigInt::zero()),
        Check::equal("a - b = chi*", &split.reconstruct(), &star.entries().to_vec()),
        Check::equal("a0 = acyclic orientations", &split.p[0], &acyclic),
        Check::equal("b0 = acyclic orientations", &split.q.first().cloned().unwrap_or_default(), &acyclic),
        Check::equal("chi*_d = acyclic orientations", &star.get(d), &acyclic),
    ];
    let sign = if d.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
    checks.push(Check::equal("(-1)^d chi(-1) = acyclic orientations", &(sign * chi.evaluate(-1)), &acyclic));
    checks.push(chain_check("a0 <= a1 <= aj", &split.p, d.saturating_sub(1)));
    checks.push(chain_check("b0 <= b1 <= bj", &split.q, d.saturating_sub(2)));
    checks.push(positive_check("a positive", &split.p));
    checks.push(positive_check("b positive", &split.q));
    checks.push(nonnegative_check("chi* nonnegative", star.entries()));
    checks.push(Check::equal("chi* = sum of Omega* over acyclic orientations", &via_orders, &star));
    if d <= 7 {
        let bad: Vec<u32> = (0..=d as u32 + 1)
            .filter(|&n| chi.evaluate(n) != BigInt::from(count_proper_colorings(g, n)))
            .collect();
        checks.push(Check::new("chi agrees with colouring counts", bad.is_empty(), format!("{bad:?}")));
    }

    let audits = vec![
        check_partial_sum_inequalities(star.entries(), d, Family::MirrorSums),
        check_partial_sum_inequalities(star.entries(), d, Family::MirrorEntries),
        binomial_growth_check(&star),
    ];
    checks.extend(audits.iter().map(AuditReport::as_check));
    enforce(mode, &checks)?;

    Ok(ChromaticResult {
        graph: g.clone(),
        chi,
        chi_star: star,
        split,
        acyclic_count,
        chi_star_via_orders: via_orders,
        audits,
        checks,
    })
}

/// `Σ coefficients[k-1]·c_k + constant >= 0` over the monomial coefficients
/// `c_1, ..., c_{d-1}` of `n^d + c_{d-1} n^{d-1} + ... + c_1 n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    #[serde(with = "int_serde::vec")]
    pub coefficients: Vec<BigInt>,
    #[serde(with = "int_serde")]
    pub constant: BigInt,
}

impl LinearForm {
    pub fn from_i64s(coefficients: &[i64], constant: i64) -> Self {
        Self {
            coefficients: coefficients.iter().map(|&c| c.into()).collect(),
            constant: constant.into(),
        }
    }

    /// Divided by the gcd of all entries, with a positive constant term (or,
    /// if the constant vanishes, a positive leading nonzero coefficient).
    pub fn normalized(&self) -> Self {
        let g = self
            .coefficients
            .iter()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        let lead = if self.constant.is_zero() {
            self.coefficients.iter().find(|c| !c.is_zero()).cloned().unwrap_or_default()
        } else {
            self.constant.clone()
        };
        let g = if lead.is_negative() { -g } else { g };
        Self {
            coefficients: self.coefficients.iter().map(|c| c / &g).collect(),
            constant: &self.constant / &g,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &BigInt, var: String| -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let mag = c.abs();
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            if var.is_empty() {
                write!(f, "{sign}{mag}")
            } else if mag == BigInt::from(1) {
                write!(f, "{sign}{var}")
            } else {
                write!(f, "{sign}{mag}{var}")
            }
        };
        for (k, c) in self.coefficients.iter().enumerate() {
            term(f, c, format!("c_{}", k + 1))?;
        }
        term(f, &self.constant, String::new())?;
        if first {
            write!(f, "0")?;
        }
        write!(f, " >= 0")
    }
}

/// Known normalized forms of the mirrored partial-sum inequalities for
/// `d = 5, 6, 7`, as `(d, [c_1, ..., c_{d-1}, constant])`.
pub const REFERENCE_FORMS: [(usize, &[i64]); 4] = [
    (5, &[5, 1, -4, -5, 20]),
    (6, &[-5, 5, 7, -19, -65, 245]),
    (7, &[21, -1, -9, 11, -9, -301, 1071]),
    (7, &[-7, -3, 8, 15, -52, -273, 1148]),
];

/// One inequality `χ*_{d-2} + ... + χ*_{d-j} >= χ*_2 + ... + χ*_j` rewritten
/// in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialForm {
    pub d: usize,
    pub j: usize,
    pub raw: LinearForm,
    pub normalized: LinearForm,
}

/// Exact rewrite of every mirrored partial-sum inequality (`2 <= j <= d/2`)
/// in the monomial coefficients of a monic degree-`d` polynomial with zero
/// constant term.
pub fn monomial_forms(d: usize) -> Result<Vec<MonomialForm>> {
    if !(5..=7).contains(&d) {
        return Err(Error::Invalid(format!("monomial forms are tabulated for d in 5..=7, got {d}")));
    }
    // star vector of each basis monomial n^m, m = 1..=d
    let stars: Vec<StarVector> = (1..=d)
        .map(|m| {
            let mut coeffs = vec![0i64; m + 1];
            coeffs[m] = 1;
            binomial_transform(&IntPolynomial::from_integers(coeffs), d, Start::Zero)
        })
        .collect::<Result<_>>()?;
    let form_value = |v: &StarVector, j: usize| -> BigInt {
        (2..=j).map(|i| v.get(d - i) - v.get(i)).sum()
    };
    Ok((2..=d / 2)
        .map(|j| {
            let raw = LinearForm {
                coefficients: stars[..d - 1].iter().map(|v| form_value(v, j)).collect(),
                constant: form_value(&stars[d - 1], j),
            };
            let normalized = raw.normalized();
            MonomialForm { d, j, raw, normalized }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormMatch {
    pub d: usize,
    pub reference: LinearForm,
    /// Every `j` whose normalized form equals the reference.
    pub matched_j: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFormReport {
    pub forms: Vec<MonomialForm>,
    pub matches: Vec<FormMatch>,
    pub all_matched: bool,
}

/// Derives the forms for `d = 5, 6, 7` and matches them against
/// [`REFERENCE_FORMS`].
pub fn monomial_form_report() -> Result<MonomialFormReport> {
    let mut forms = Vec::new();
    for d in 5..=7 {
        forms.extend(monomial_forms(d)?);
    }
    let matches: Vec<FormMatch> = REFERENCE_FORMS
        .iter()
        .map(|&(d, row)| {
            let (constant, coefficients) = row.split_last().expect("nonempty row");
            let reference = LinearForm::from_i64s(coefficients, *constant);
            let matched_j = forms
                .iter()
                .filter(|f| f.d == d && f.normalized == reference)
                .map(|f| f.j)
                .collect();
            FormMatch { d, reference, matched_j }
        })
        .collect();
    let all_matched = matches.iter().all(|m| !m.matched_j.is_empty());
    Ok(MonomialFormReport { forms, matches, all_matched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_poly(&Multigraph::complete(3)).unwrap().to_string(), "n^3 - 3n^2 + 2n");
        assert_eq!(chromatic_poly(&Multigraph::path(3)).unwrap().to_string(), "n^3 - 2n^2 + n");
        let looped = Multigraph::new(1, vec![(0, 0)]).unwrap();
        assert!(chromatic_poly(&looped).unwrap().is_zero());
        assert!(matches!(
            chromatic_poly(&Multigraph::edgeless(11)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn chi_star_examples() {
        assert_eq!(chi_star(&Multigraph::complete(3)).unwrap().entries(), ints(&[0, 0, 0, 6]).as_slice());
        assert_eq!(chi_star(&Multigraph::path(3)).unwrap().entries(), ints(&[0, 0, 2, 4]).as_slice());
        assert_eq!(chi_star(&Multigraph::edgeless(1)).unwrap().entries(), ints(&[0, 1]).as_slice());
    }

    #[test]
    fn decomposition_examples() {
        let r = chromatic_decomposition(&Multigraph::complete(3), Mode::Verify).unwrap();
        assert_eq!((r.split.p, r.split.q), (ints(&[6, 6, 6, 6]), ints(&[6, 6, 6])));
        let r = chromatic_decomposition(&Multigraph::path(3), Mode::Verify).unwrap();
        assert_eq!((r.split.p, r.split.q), (ints(&[4, 6, 6, 4]), ints(&[4, 6, 4])));
        assert_eq!(r.acyclic_count, 4);
        let r = chromatic_decomposition(&Multigraph::path(2), Mode::Verify).unwrap();
        assert_eq!(r.chi_star.entries(), ints(&[0, 0, 2]).as_slice());
        assert_eq!((r.split.p, r.split.q), (ints(&[2, 2, 2]), ints(&[2, 2])));

        let looped = Multigraph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let err = chromatic_decomposition(&looped, Mode::Verify).unwrap_err();
        assert_eq!(err.skip_reason(), Some(SkipReason::Loop));
    }

    #[test]
    fn orders_sum_examples() {
        assert_eq!(
            chi_star_via_orders(&Multigraph::complete(3)).unwrap().entries(),
            ints(&[0, 0, 0, 6]).as_slice()
        );
        assert_eq!(
            chi_star_via_orders(&Multigraph::path(3)).unwrap().entries(),
            ints(&[0, 0, 2, 4]).as_slice()
        );
        assert_eq!(
            chi_star_via_orders(&Multigraph::edgeless(2)).unwrap().entries(),
            ints(&[0, 1, 1]).as_slice()
        );
    }

    #[test]
    fn binomial_growth_examples() {
        let k3 = chi_star(&Multigraph::complete(3)).unwrap();
        let r = binomial_growth_check(&k3);
        assert_eq!((r.rows[0].lhs.clone(), r.rows[0].rhs.clone()), (0.into(), 0.into()));
        assert!(r.rows.iter().all(|row| row.holds));
        let p3 = chi_star(&Multigraph::path(3)).unwrap();
        let r = binomial_growth_check(&p3);
        assert_eq!((r.rows[0].lhs.clone(), r.rows[0].rhs.clone()), (2.into(), 2.into()));
    }

    #[test]
    fn larger_families_against_colourings() {
        for g in [Multigraph::wheel(5), Multigraph::cycle(7), Multigraph::complete(5)] {
            let chi = chromatic_poly(&g).unwrap();
            for n in 0..=6u32 {
                assert_eq!(chi.evaluate(n), BigInt::from(count_proper_colorings(&g, n)), "{g:?} n={n}");
            }
        }
    }

    #[test]
    fn monomial_forms_match_reference_rows() {
        let f5 = monomial_forms(5).unwrap();
        assert_eq!(f5.len(), 1);
        assert_eq!(f5[0].normalized.to_string(), "5c_1 + c_2 - 4c_3 - 5c_4 + 20 >= 0");
        let f7 = monomial_forms(7).unwrap();
        assert_eq!(
            f7[0].normalized.to_string(),
            "21c_1 - c_2 - 9c_3 + 11c_4 - 9c_5 - 301c_6 + 1071 >= 0"
        );
        let report = monomial_form_report().unwrap();
        assert!(report.all_matched);
        assert_eq!(report.matches[1].matched_j, vec![2, 3]);
        assert!(monomial_forms(4).is_err());
    }

    #[test]
    fn linear_form_normalization() {
        let f = LinearForm::from_i64s(&[4, -2], -6).normalized();
        assert_eq!(f, LinearForm::from_i64s(&[-2, 1], 3));
        let f = LinearForm::from_i64s(&[-3, 6], 0).normalized();
        assert_eq!(f, LinearForm::from_i64s(&[1, -2], 0));
    }

    fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
        (1usize..=6).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..12).prop_map(move |edges| {
                let edges = edges.into_iter().filter(|(u, v)| u != v).collect();
                Multigraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parallel_edges_collapse(g in arb_multigraph()) {
            prop_assert_eq!(chromatic_poly(&g).unwrap(), chromatic_poly(&g.simplify()).unwrap());
            let chi = chromatic_poly(&g).unwrap();
            for n in 0..=3u32 {
                prop_assert_eq!(chi.evaluate(n), BigInt::from(count_proper_colorings(&g, n)));
            }
        }
    }
}
