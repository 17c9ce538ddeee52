use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{sigma, ExponentVector, ParamPoint, ParamPolynomial, Rational};
use crate::error::{Error, Result};

/// Truncated q-expansion keyed by exponent vectors.
///
/// A series with budget `N` holds only exponent vectors of component sum at
/// most `N`; contributions beyond the budget are discarded on insertion.
/// Evaluating at a parameter point is a separate step, [`collapse`].
///
/// [`collapse`]: FormalQSeries::collapse
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalQSeries {
    budget: u32,
    terms: BTreeMap<ExponentVector, ParamPolynomial>,
}

impl FormalQSeries {
    pub fn new(budget: u32) -> Self {
        FormalQSeries {
            budget,
            terms: BTreeMap::new(),
        }
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    /// Adds `poly * q^e`. Returns `false` (and stores nothing) when `e` is
    /// beyond the budget.
    pub fn accumulate(&mut self, e: ExponentVector, poly: &ParamPolynomial) -> bool {
        if e.component_sum() > self.budget {
            return false;
        }
        if poly.is_zero() {
            return true;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += poly;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
        true
    }

    pub fn coefficient(&self, e: &ExponentVector) -> ParamPolynomial {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &ParamPolynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalQSeries) -> Result<FormalQSeries> {
        self.combine(other, &Rational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &FormalQSeries) -> Result<FormalQSeries> {
        self.combine(other, &Rational::from_integer((-1).into()))
    }

    fn combine(&self, other: &FormalQSeries, factor: &Rational) -> Result<FormalQSeries> {
        if self.budget != other.budget {
            return Err(Error::BudgetMismatch {
                left: self.budget,
                right: other.budget,
            });
        }
        let mut out = self.clone();
        for (e, p) in &other.terms {
            out.accumulate(*e, &p.scale(factor));
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> FormalQSeries {
        let mut out = FormalQSeries::new(self.budget);
        for (e, p) in &self.terms {
            out.accumulate(*e, &p.scale(factor));
        }
        out
    }

    /// Drops every term above the (smaller) budget `budget`.
    pub fn truncate(&self, budget: u32) -> FormalQSeries {
        let budget = budget.min(self.budget);
        FormalQSeries {
            budget,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.component_sum() <= budget)
                .map(|(e, p)| (*e, p.clone()))
                .collect(),
        }
    }

    /// Maps each term `poly * q^e` to `(σ(e, p), poly(p))`, merges equal
    /// exponents, drops zero coefficients and sorts by exponent.
    pub fn collapse(&self, p: &ParamPoint) -> Vec<(Rational, Rational)> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e, poly) in &self.terms {
            *merged.entry(sigma(e, p)).or_insert_with(Rational::zero) += poly.eval(p);
        }
        merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ExponentVector as E};
    use proptest::prelude::*;

    fn konst(n: i64) -> ParamPolynomial {
        ParamPolynomial::constant(rat(n))
    }

    fn single(budget: u32, e: [u32; 4], p: ParamPolynomial) -> FormalQSeries {
        let mut s = FormalQSeries::new(budget);
        s.accumulate(E(e), &p);
        s
    }

    #[test]
    fn add_examples() {
        let s = single(10, [1, 0, 0, 0], konst(2));
        assert_eq!(s.add(&FormalQSeries::new(10)).unwrap(), s);
        assert!(s.add(&s.scale(&rat(-1))).unwrap().is_empty());
        let t = single(10, [1, 0, 0, 0], konst(3));
        assert_eq!(s.add(&t).unwrap(), single(10, [1, 0, 0, 0], konst(5)));
        assert_eq!(
            s.add(&FormalQSeries::new(11)),
            Err(Error::BudgetMismatch {
                left: 10,
                right: 11
            })
        );
    }

    #[test]
    fn collapse_examples() {
        let p = ParamPoint::schiemann();
        let mut s = FormalQSeries::new(40);
        s.accumulate(E([10, 10, 2, 2]), &konst(-432));
        s.accumulate(E([25, 5, 5, 1]), &konst(-576));
        assert_eq!(s.collapse(&p), vec![(rat(144), rat(-1008))]);
        assert!(FormalQSeries::new(3).collapse(&p).is_empty());
        let bma = &ParamPolynomial::var(1) - &ParamPolynomial::var(0);
        assert_eq!(
            single(3, [1, 0, 0, 0], bma).collapse(&p),
            vec![(rat(1), rat(6))]
        );
    }

    #[test]
    fn over_budget_terms_are_dropped() {
        let mut s = FormalQSeries::new(4);
        assert!(!s.accumulate(E([2, 2, 1, 0]), &konst(1)));
        assert!(s.accumulate(E([2, 2, 0, 0]), &konst(1)));
        assert_eq!(s.len(), 1);
        assert_eq!(s.truncate(3).len(), 0);
    }

    fn series() -> impl Strategy<Value = FormalQSeries> {
        prop::collection::vec((prop::array::uniform4(0u32..3), -3i64..4, 0usize..4), 0..8).prop_map(
            |items| {
                let mut s = FormalQSeries::new(6);
                for (e, c, v) in items {
                    s.accumulate(E(e), &ParamPolynomial::var(v).scale(&rat(c)));
                }
                s
            },
        )
    }

    fn merge(
        x: Vec<(Rational, Rational)>,
        y: Vec<(Rational, Rational)>,
    ) -> Vec<(Rational, Rational)> {
        let mut m: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e, c) in x.into_iter().chain(y) {
            *m.entry(e).or_insert_with(Rational::zero) += c;
        }
        m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    proptest! {
        #[test]
        fn add_is_commutative_and_associative(s in series(), t in series(), u in series()) {
            prop_assert_eq!(s.add(&t).unwrap(), t.add(&s).unwrap());
            prop_assert_eq!(
                s.add(&t).unwrap().add(&u).unwrap(),
                s.add(&t.add(&u).unwrap()).unwrap()
            );
        }

        #[test]
        fn collapse_is_additive(s in series(), t in series()) {
            let p = ParamPoint::from_ints(2, 3, 5, 7).unwrap();
            prop_assert_eq!(s.add(&t).unwrap().collapse(&p), merge(s.collapse(&p), t.collapse(&p)));
        }
    }
}
