//! Exact scalars, parameter points, exponent vectors and their dominance order.
//!
//! Square norms in the eigenbasis are `a*n0 + b*n1 + c*n2 + d*n3` where
//! `(n0, n1, n2, n3)` are the squared coordinates of a vector. Keeping the
//! exponent vector separate from the parameter point lets a single lattice
//! computation serve every parameter point; [`sigma`] does the evaluation.

mod poly;
mod series;

pub use poly::{Monomial, ParamPolynomial};
pub use series::FormalQSeries;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or a plain integer. Decimal and exponent notation are
/// rejected so that no rounding can sneak in.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(err());
    }
    let num = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| err())?;
    let den = BigInt::from_str(den.trim_start_matches('+')).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `n` for integers, `n/d` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub mod rational_serde {
    //! Serializes a [`Rational`](super::Rational) as its exact `p/q` string.
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            x: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&format_rational(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// A point `(a, b, c, d)` of the parameter domain: the diagonal Gram matrix
/// of the lattice family in the eigenbasis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    coords: [Rational; 4],
}

impl ParamPoint {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let coords = [a, b, c, d];
        for (name, value) in ['a', 'b', 'c', 'd'].into_iter().zip(&coords) {
            if !value.is_positive() {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: format_rational(value),
                });
            }
        }
        Ok(ParamPoint { coords })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn from_slice(values: &[Rational]) -> Result<Self> {
        match values {
            [a, b, c, d] => Self::new(a.clone(), b.clone(), c.clone(), d.clone()),
            _ => Err(Error::ParseRational(format!(
                "expected 4 parameters, got {}",
                values.len()
            ))),
        }
    }

    /// The Schiemann point `(1, 7, 13, 19)`.
    pub fn schiemann() -> Self {
        Self::from_ints(1, 7, 13, 19).expect("positive")
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn a(&self) -> &Rational {
        &self.coords[0]
    }
    pub fn b(&self) -> &Rational {
        &self.coords[1]
    }
    pub fn c(&self) -> &Rational {
        &self.coords[2]
    }
    pub fn d(&self) -> &Rational {
        &self.coords[3]
    }

    /// Canonical chain `a < b < c < d`.
    pub fn is_admissible(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_pairwise_distinct(&self) -> bool {
        let mut sorted = self.coords.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Sorts the coordinates ascending. `perm[k]` is the input position of
    /// the `k`-th smallest value.
    pub fn sorted(&self) -> (ParamPoint, [usize; 4]) {
        let mut perm = [0usize, 1, 2, 3];
        perm.sort_by(|&i, &j| self.coords[i].cmp(&self.coords[j]).then(i.cmp(&j)));
        let coords = perm.map(|i| self.coords[i].clone());
        (ParamPoint { coords }, perm)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(format_rational).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let values = strings
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        ParamPoint::from_slice(&values).map_err(serde::de::Error::custom)
    }
}

/// Squared eigenbasis coordinates `(n0, n1, n2, n3)` of a lattice vector, or
/// a sum of such for a pair of vectors. The derived `Ord` is lexicographic
/// and only used for map keys; the dominance order is [`exp_cmp`].
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct ExponentVector(pub [u32; 4]);

impl ExponentVector {
    pub const ZERO: ExponentVector = ExponentVector([0; 4]);

    pub fn new(n0: u32, n1: u32, n2: u32, n3: u32) -> Self {
        ExponentVector([n0, n1, n2, n3])
    }

    pub fn component_sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `[n0+n1+n2+n3, n1+n2+n3, n2+n3, n3]`.
    pub fn suffix_sums(&self) -> [u32; 4] {
        let mut out = [0u32; 4];
        let mut acc = 0;
        for i in (0..4).rev() {
            acc += self.0[i];
            out[i] = acc;
        }
        out
    }

    /// `self ≼ other`.
    pub fn dominated_by(&self, other: &ExponentVector) -> bool {
        let (s, t) = (self.suffix_sums(), other.suffix_sums());
        s.iter().zip(&t).all(|(x, y)| x <= y)
    }

    /// `self ≺ other`.
    pub fn strictly_below(&self, other: &ExponentVector) -> bool {
        exp_cmp(self, other) == Dominance::Less
    }
}

impl Add for ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: ExponentVector) -> ExponentVector {
        ExponentVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [n0, n1, n2, n3] = self.0;
        write!(f, "({n0},{n1},{n2},{n3})")
    }
}

/// Outcome of comparing two exponent vectors in the suffix-sum order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Dominance {
    pub fn as_partial_ordering(self) -> Option<Ordering> {
        match self {
            Dominance::Less => Some(Ordering::Less),
            Dominance::Greater => Some(Ordering::Greater),
            Dominance::Equal => Some(Ordering::Equal),
            Dominance::Incomparable => None,
        }
    }
}

/// Compares by suffix sums: `e ≼ f` iff `Σ_{i≥i0} e_i ≤ Σ_{i≥i0} f_i` for
/// every `i0`.
pub fn exp_cmp(e: &ExponentVector, f: &ExponentVector) -> Dominance {
    if e == f {
        return Dominance::Equal;
    }
    match (e.dominated_by(f), f.dominated_by(e)) {
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        // both true would force equal suffix sums, hence e == f
        _ => Dominance::Incomparable,
    }
}

/// `a*n0 + b*n1 + c*n2 + d*n3`.
pub fn sigma(e: &ExponentVector, p: &ParamPoint) -> Rational {
    e.0.iter()
        .zip(p.coords())
        .fold(Rational::zero(), |acc, (&n, s)| acc + s * rat(n as i64))
}

/// Sampled check that strict dominance agrees with "σ is smaller at every
/// sample". The forward direction is a theorem; the reverse can only be
/// sampled at finitely many points.
pub fn cer_lem_check(
    e: &ExponentVector,
    f: &ExponentVector,
    samples: &[ParamPoint],
) -> Result<bool> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(bad) = samples.iter().find(|p| !p.is_admissible()) {
        return Err(Error::NotAdmissible(bad.to_string()));
    }
    let dominated = exp_cmp(e, f) == Dominance::Less;
    let smaller_everywhere = samples.iter().all(|p| sigma(e, p) < sigma(f, p));
    Ok(dominated == smaller_everywhere)
}
