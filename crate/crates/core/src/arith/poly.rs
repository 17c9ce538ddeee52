use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, rational_serde, ParamPoint, Rational};

const VARS: [char; 4] = ['a', 'b', 'c', 'd'];

/// Exponents of `a^e0 b^e1 c^e2 d^e3`.
///
/// Ordered graded-descending (higher total degree first, then lexicographic
/// with `a > b > c > d`), which is also the print order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub [u8; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 4];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    fn eval(&self, p: &ParamPoint) -> Rational {
        let mut acc = Rational::one();
        for (&e, s) in self.0.iter().zip(p.coords()) {
            for _ in 0..e {
                acc *= s;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, v) in self.0.iter().zip(VARS) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in the parameters `a, b, c, d` with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    /// The variable `a` (0), `b` (1), `c` (2) or `d` (3).
    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(i), Rational::one());
        p
    }

    /// `k0*a + k1*b + k2*c + k3*d`.
    pub fn linear(k: [i64; 4]) -> Self {
        let mut p = Self::zero();
        for (i, &ki) in k.iter().enumerate() {
            p.add_term(Monomial::var(i), rat(ki));
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &ParamPolynomial, factor: &Rational) {
        for (m, c) in &other.terms {
            self.add_term(*m, c * factor);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn eval(&self, p: &ParamPoint) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(p))
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match k {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: [u8; 4],
    #[serde(with = "rational_serde")]
    coefficient: Rational,
}

impl Serialize for ParamPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                monomial: m.0,
                coefficient: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        Ok(Self::from_terms(
            terms
                .into_iter()
                .map(|t| (Monomial(t.monomial), t.coefficient)),
        ))
    }
}

impl AddAssign<&ParamPolynomial> for ParamPolynomial {
    fn add_assign(&mut self, rhs: &ParamPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&ParamPolynomial> for ParamPolynomial {
    fn sub_assign(&mut self, rhs: &ParamPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = ParamPolynomial::zero();
        for (m, c) in &self.terms {
            for (n, e) in &rhs.terms {
                out.add_term(m.times(*n), c * e);
            }
        }
        out
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for ParamPolynomial {
            type Output = ParamPolynomial;
            fn $f(self, rhs: ParamPolynomial) -> ParamPolynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        -&self
    }
}
