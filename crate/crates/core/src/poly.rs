//! Exact univariate polynomials and the binomial transform.
//!
//! Counting polynomials here are integer-valued but not always integer-coefficient
//! (an order polynomial such as `C(n, 3)` has denominators), so coefficients are kept
//! as exact rationals and integer-valuedness is the type invariant.
//!
//! Star vectors come in two conventions, fixed by [`Start`]:
//!
//! * `Start::Zero`: `sum_{n >= 0} p(n) z^n = h(z) / (1 - z)^(D+1)`, entries `0..=D`.
//! * `Start::One`: `sum_{n >= 1} p(n) z^n = h(z) / (1 - z)^(D+1)`, entries `0..=D+1`
//!   with entry 0 forced to zero.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `BigInt` that serializes as a JSON number when it fits in an `i64`
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.parse().map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// `#[serde(with = ...)]` adapters for `BigInt` and `Vec<BigInt>`.
pub mod int_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        JsonInt::deserialize(d).map(|j| j.0)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &[BigInt],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&JsonInt(x.clone()))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<BigInt>, D::Error> {
            let v: Vec<JsonInt> = Vec::deserialize(d)?;
            Ok(v.into_iter().map(|j| j.0).collect())
        }
    }
}

/// Binomial coefficient with the combinatorial convention `C(a, b) = 0` for
/// `b < 0` or `a < b`.
pub fn binomial(a: &BigInt, b: i64) -> BigInt {
    if b < 0 || *a < BigInt::from(b) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..b {
        num *= a - t;
        den *= t + 1;
    }
    num / den
}

/// Integer-valued univariate polynomial with exact rational coefficients,
/// stored low-to-high with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigRational>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_integers([c])
    }

    /// `n`, the identity polynomial.
    pub fn var() -> Self {
        Self::from_integers([0, 1])
    }

    pub fn from_integers<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Self::normalized(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Builds a polynomial from rational coefficients, rejecting anything that
    /// is not integer-valued.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Result<Self> {
        let p = Self::normalized(coeffs);
        p.check_integer_valued()?;
        Ok(p)
    }

    fn normalized(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    // A degree-k polynomial is integer-valued iff it is integral at 0..=k.
    fn check_integer_valued(&self) -> Result<()> {
        let k = self.degree().unwrap_or(0);
        for x in 0..=k {
            let v = self.eval_rational(&BigRational::from_integer(x.into()));
            if !v.is_integer() {
                return Err(Error::NonIntegral(format!("{self} takes value {v} at n = {x}")));
            }
        }
        Ok(())
    }

    /// `C(n + shift, k)` as a polynomial in `n` (product formula, valid for
    /// every integer `n`, including negative ones).
    pub fn binomial_in_n(shift: i64, k: usize) -> Self {
        let mut p = Self::one();
        let mut fact = BigInt::one();
        for t in 0..k as i64 {
            p = &p * &Self::from_integers([BigInt::from(shift - t), BigInt::one()]);
            fact *= t + 1;
        }
        let inv = BigRational::new(BigInt::one(), fact);
        Self::normalized(p.coeffs.into_iter().map(|c| c * &inv).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Monomial coefficients when they are all integers.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact Horner evaluation; negative arguments are fine.
    pub fn evaluate(&self, n: impl Into<BigInt>) -> BigInt {
        let v = self.eval_rational(&BigRational::from_integer(n.into()));
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::normalized(self.coeffs.iter().map(|c| c * &k).collect())
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::normalized(
            (0..n)
                .map(|i| self.coefficient(i) + rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::normalized(
            (0..n)
                .map(|i| self.coefficient(i) - rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::normalized(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::normalized(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<'a> Sum<&'a IntPolynomial> for IntPolynomial {
    fn sum<I: Iterator<Item = &'a IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            if k == 0 || !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{k}")?,
            }
        }
        Ok(())
    }
}

fn rational_to_json(c: &BigRational) -> serde_json::Value {
    if c.is_integer() {
        match c.to_integer().to_i64() {
            Some(x) => x.into(),
            None => c.to_integer().to_string().into(),
        }
    } else {
        format!("{}/{}", c.numer(), c.denom()).into()
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rational_to_json(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<BigRational>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integers or \"p/q\" strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    let r = match &v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(|x| BigRational::from_integer(x.into()))
                            .ok_or_else(|| de::Error::custom("non-integer number"))?,
                        serde_json::Value::String(s) => {
                            s.parse::<BigRational>().map_err(de::Error::custom)?
                        }
                        _ => return Err(de::Error::custom("bad coefficient")),
                    };
                    out.push(r);
                }
                Ok(out)
            }
        }
        let coeffs = d.deserialize_seq(V)?;
        IntPolynomial::from_rationals(coeffs).map_err(de::Error::custom)
    }
}

/// Unique polynomial of degree at most `expected_degree` through the points,
/// computed by Newton divided differences over the rationals.
pub fn interpolate<X, Y>(points: &[(X, Y)], expected_degree: usize) -> Result<IntPolynomial>
where
    X: Clone + Into<BigInt>,
    Y: Clone + Into<BigInt>,
{
    if points.len() != expected_degree + 1 {
        return Err(Error::PointCount {
            expected: expected_degree + 1,
            got: points.len(),
        });
    }
    let xs: Vec<BigInt> = points.iter().map(|(x, _)| x.clone().into()).collect();
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(Error::DuplicateAbscissa(x.to_string()));
        }
    }
    let mut dd: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone().into()))
        .collect();
    let k = dd.len();
    for level in 1..k {
        for i in (level..k).rev() {
            let dx = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / dx;
        }
    }
    // expand the Newton form from the innermost coefficient outwards
    let mut acc = vec![dd[k - 1].clone()];
    for i in (0..k - 1).rev() {
        let xi = BigRational::from_integer(xs[i].clone());
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xi;
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntPolynomial::from_rationals(acc)
}

/// Lower summation bound of the series defining a star vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Start {
    Zero,
    One,
}

impl Start {
    pub fn as_usize(self) -> usize {
        match self {
            Start::Zero => 0,
            Start::One => 1,
        }
    }
}

impl Serialize for Start {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_usize() as u8)
    }
}

impl<'de> Deserialize<'de> for Start {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(Start::Zero),
            1 => Ok(Start::One),
            x => Err(de::Error::custom(format!("start must be 0 or 1, got {x}"))),
        }
    }
}

/// Coefficients of a binomial transform together with its transform degree
/// `D` and series start.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStarVector")]
pub struct StarVector {
    #[serde(with = "int_serde::vec")]
    entries: Vec<BigInt>,
    #[serde(rename = "D")]
    transform_degree: usize,
    start: Start,
}

#[derive(Deserialize)]
struct RawStarVector {
    #[serde(with = "int_serde::vec")]
    entries: Vec<BigInt>,
    #[serde(rename = "D")]
    transform_degree: usize,
    start: Start,
}

impl TryFrom<RawStarVector> for StarVector {
    type Error = Error;
    fn try_from(r: RawStarVector) -> Result<Self> {
        StarVector::new(r.entries, r.transform_degree, r.start)
    }
}

impl StarVector {
    pub fn expected_len(transform_degree: usize, start: Start) -> usize {
        transform_degree + 1 + start.as_usize()
    }

    pub fn new(entries: Vec<BigInt>, transform_degree: usize, start: Start) -> Result<Self> {
        let want = Self::expected_len(transform_degree, start);
        if entries.len() != want {
            return Err(Error::Invalid(format!(
                "star vector with D = {transform_degree}, start = {} needs {want} entries, got {}",
                start.as_usize(),
                entries.len()
            )));
        }
        if start == Start::One && !entries[0].is_zero() {
            return Err(Error::Invalid(
                "start-1 star vector must have zero constant entry".into(),
            ));
        }
        Ok(Self {
            entries,
            transform_degree,
            start,
        })
    }

    pub fn from_i64s(entries: &[i64], transform_degree: usize, start: Start) -> Result<Self> {
        Self::new(
            entries.iter().map(|&x| BigInt::from(x)).collect(),
            transform_degree,
            start,
        )
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    pub fn transform_degree(&self) -> usize {
        self.transform_degree
    }

    pub fn start(&self) -> Start {
        self.start
    }

    /// Entry `i`, zero beyond the stored range.
    pub fn get(&self, i: usize) -> BigInt {
        self.entries.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Highest index with a nonzero entry; `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().rposition(|x| !x.is_zero())
    }

    /// `D + 1 - s` for an `h*`-style vector of degree `s`.
    pub fn codegree(&self) -> Option<usize> {
        self.degree().map(|s| self.transform_degree + 1 - s)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }
}

impl fmt::Display for StarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Numerator of `(1 - z)^(D+1) * sum_{n >= start} p(n) z^n`.
pub fn binomial_transform(p: &IntPolynomial, d: usize, start: Start) -> Result<StarVector> {
    if let Some(deg) = p.degree() {
        if deg > d {
            return Err(Error::DegreeTooLarge { degree: deg, bound: d });
        }
    }
    let s = start.as_usize();
    let values: Vec<BigInt> = (0..=d as i64 + 2).map(|n| p.evaluate(n)).collect();
    let weights: Vec<BigInt> = (0..=d as i64 + 1)
        .map(|k| {
            let c = binomial(&BigInt::from(d + 1), k);
            if k.is_odd() {
                -c
            } else {
                c
            }
        })
        .collect();
    let coefficient = |i: usize| -> BigInt {
        (0..=i.min(d + 1))
            .filter(|k| i - k >= s)
            .map(|k| &weights[k] * &values[i - k])
            .sum()
    };
    let len = StarVector::expected_len(d, start);
    // numerator degree is at most D (start 0) or D + 1 (start 1)
    for j in len..=d + 2 {
        let c = coefficient(j);
        if !c.is_zero() {
            return Err(Error::Postcondition(format!(
                "transform numerator has nonzero z^{j} coefficient {c}"
            )));
        }
    }
    StarVector::new((0..len).map(coefficient).collect(), d, start)
}

/// `p(n) = sum_i v_i * C(n + D - i, D)`.
pub fn inverse_transform(v: &StarVector) -> IntPolynomial {
    let d = v.transform_degree();
    v.entries()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| IntPolynomial::binomial_in_n(d as i64 - i as i64, d).scale(c))
        .fold(IntPolynomial::zero(), |acc, t| &acc + &t)
}

/// Exact evaluation at an integer, negative arguments included.
pub fn evaluate(p: &IntPolynomial, n: impl Into<BigInt>) -> BigInt {
    p.evaluate(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn poly(v: &[i64]) -> IntPolynomial {
        IntPolynomial::from_integers(v.iter().copied())
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate(&[(1, 0), (2, 0), (3, 6)], 2).unwrap();
        assert_eq!(p, poly(&[6, -9, 3]));
        assert_eq!(interpolate(&[(0, 0), (1, 1)], 1).unwrap(), IntPolynomial::var());
        assert_eq!(interpolate(&[(0, 1), (1, 1), (2, 1)], 2).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn interpolation_errors() {
        assert!(matches!(
            interpolate(&[(1, 0), (1, 2)], 1),
            Err(Error::DuplicateAbscissa(_))
        ));
        assert!(matches!(interpolate(&[(1, 0)], 1), Err(Error::PointCount { .. })));
        // line through (0,0) and (2,1) is n/2
        assert!(matches!(
            interpolate(&[(0, 0), (2, 1)], 1),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn interpolation_keeps_rational_coefficients() {
        // C(n, 3) at n = 0..3
        let p = interpolate(&[(0, 0), (1, 0), (2, 0), (3, 1)], 3).unwrap();
        assert_eq!(p, IntPolynomial::binomial_in_n(0, 3));
        assert!(p.integer_coefficients().is_none());
        assert_eq!(p.evaluate(10), BigInt::from(120));
    }

    #[test]
    fn transform_examples() {
        let k3 = poly(&[0, 2, -3, 1]);
        let v = binomial_transform(&k3, 3, Start::Zero).unwrap();
        assert_eq!(v.entries(), ints(&[0, 0, 0, 6]).as_slice());

        let sq = poly(&[1, 2, 1]);
        let v = binomial_transform(&sq, 2, Start::Zero).unwrap();
        assert_eq!(v.entries(), ints(&[1, 1, 0]).as_slice());

        let theta = poly(&[2, -3, 1]);
        let v = binomial_transform(&theta, 2, Start::One).unwrap();
        assert_eq!(v.entries(), ints(&[0, 0, 0, 2]).as_slice());
    }

    #[test]
    fn transform_rejects_high_degree() {
        let p = poly(&[0, 0, 0, 1]);
        assert!(matches!(
            binomial_transform(&p, 2, Start::Zero),
            Err(Error::DegreeTooLarge { degree: 3, bound: 2 })
        ));
    }

    #[test]
    fn inverse_examples() {
        let v = StarVector::from_i64s(&[0, 0, 0, 6], 3, Start::Zero).unwrap();
        assert_eq!(inverse_transform(&v), poly(&[0, 2, -3, 1]));
        let v = StarVector::from_i64s(&[1], 0, Start::Zero).unwrap();
        assert_eq!(inverse_transform(&v), IntPolynomial::one());
        let v = StarVector::from_i64s(&[0, 1], 1, Start::Zero).unwrap();
        assert_eq!(inverse_transform(&v), IntPolynomial::var());
    }

    #[test]
    fn evaluation_examples() {
        let p = poly(&[0, 2, -3, 1]);
        assert_eq!(evaluate(&p, -1), BigInt::from(-6));
        assert_eq!(evaluate(&poly(&[7, 1, 1]), 0), BigInt::from(7));
        assert_eq!(evaluate(&poly(&[6, -9, 3]), 4), BigInt::from(18));
    }

    #[test]
    fn star_vector_invariants() {
        assert!(StarVector::from_i64s(&[1, 2], 2, Start::Zero).is_err());
        assert!(StarVector::from_i64s(&[1, 0, 0, 0], 2, Start::One).is_err());
        let v = StarVector::from_i64s(&[1, 1, 0], 2, Start::Zero).unwrap();
        assert_eq!(v.degree(), Some(1));
        assert_eq!(v.codegree(), Some(2));
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(1), 2), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(3), -1), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(0), 0), BigInt::one());
        // the polynomial extension differs from the combinatorial one at negative n
        assert_eq!(IntPolynomial::binomial_in_n(0, 2).evaluate(-2), BigInt::from(3));
    }

    #[test]
    fn json_shapes() {
        let p = IntPolynomial::binomial_in_n(0, 2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[0,"-1/2","1/2"]"#);
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1/2"]"#).is_err());

        let v = StarVector::from_i64s(&[0, 0, 1], 1, Start::One).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"entries":[0,0,1],"D":1,"start":1}"#);
        let back: StarVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<StarVector>(r#"{"entries":[1],"D":1,"start":0}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 2, -3, 1]).to_string(), "n^3 - 3n^2 + 2n");
        assert_eq!(poly(&[-1, 0, -2]).to_string(), "-2n^2 - 1");
        assert_eq!(IntPolynomial::binomial_in_n(0, 2).to_string(), "(1/2)n^2 - (1/2)n");
    }
}
