//! Representation-number series and the invariant `Θ_{1,1}`.
//!
//! `Θ_{1,1}` is computed from ordered pairs `(l, k)` of lattice vectors, each
//! pair contributing a degree-2 polynomial in `a, b, c, d` at exponent
//! `φ(l) + φ(k)`. Two kernels are available: the defining sum of squared
//! harmonic theta series expanded pairwise, and the closed form
//! `16⟨l,k⟩² − 4‖l‖²‖k‖²`. They agree term by term.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{rat, sigma, FormalQSeries, Monomial, ParamPoint, ParamPolynomial, Rational};
use crate::lattice::{Lattice, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairKernel {
    /// `32 Σ_{i<j} x_i x_j y_i y_j + Σ_i (4x_i² − ‖x‖²)(4y_i² − ‖y‖²)` in
    /// orthonormal coordinates `x_i = √s_i λ_i`, which only ever needs the
    /// rational products `s_i s_j`.
    Defining,
    /// `16⟨l,k⟩² − 4‖l‖²‖k‖²`.
    Pairwise,
}

fn norm_poly(v: &LatticeVector) -> ParamPolynomial {
    v.inner_poly(v)
}

fn defining_kernel(l: &LatticeVector, k: &LatticeVector) -> ParamPolynomial {
    let (x, y) = (l.coords(), k.coords());
    let mut out = ParamPolynomial::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut m = [0u8; 4];
            m[i] = 1;
            m[j] = 1;
            out.add_term(Monomial(m), rat(32 * x[i] * x[j] * y[i] * y[j]));
        }
    }
    let (nl, nk) = (norm_poly(l), norm_poly(k));
    for i in 0..4 {
        let mut e = [0i64; 4];
        e[i] = 4 * x[i] * x[i];
        let hl = &ParamPolynomial::linear(e) - &nl;
        e[i] = 4 * y[i] * y[i];
        let hk = &ParamPolynomial::linear(e) - &nk;
        out += &(&hl * &hk);
    }
    out
}

fn pairwise_kernel(l: &LatticeVector, k: &LatticeVector) -> ParamPolynomial {
    let ip = l.inner_poly(k);
    let sq = &ip * &ip;
    let norms = &norm_poly(l) * &norm_poly(k);
    &sq.scale(&rat(16)) - &norms.scale(&rat(4))
}

pub fn kernel(kind: PairKernel, l: &LatticeVector, k: &LatticeVector) -> ParamPolynomial {
    match kind {
        PairKernel::Defining => defining_kernel(l, k),
        PairKernel::Pairwise => pairwise_kernel(l, k),
    }
}

/// `4(4cos²∠(l,k) − 1)‖l‖²‖k‖²` at `p`; `None` if either vector is zero.
pub fn angle_form(l: &LatticeVector, k: &LatticeVector, p: &ParamPoint) -> Option<Rational> {
    let (nl, nk) = (l.norm2(p), k.norm2(p));
    if nl.is_zero() || nk.is_zero() {
        return None;
    }
    let ip = l.inner(k, p);
    let cos2 = &ip * &ip / (&nl * &nk);
    Some(rat(4) * (rat(4) * cos2 - rat(1)) * nl * nk)
}

/// Number of lattice vectors at each exponent vector, up to `budget`.
pub fn rep_series(lattice: &Lattice, budget: u32) -> FormalQSeries {
    let one = ParamPolynomial::constant(rat(1));
    let mut s = FormalQSeries::new(budget);
    for v in lattice.enumerate(budget) {
        s.accumulate(v.phi(), &one);
    }
    s
}

/// Calls `visit(l, k)` for every ordered pair from `shell` whose combined
/// component sum is within `budget`.
pub(crate) fn for_each_pair(
    shell: &[LatticeVector],
    budget: u32,
    mut visit: impl FnMut(&LatticeVector, &LatticeVector),
) {
    let mut sorted: Vec<(u32, &LatticeVector)> =
        shell.iter().map(|v| (v.phi().component_sum(), v)).collect();
    sorted.sort_by_key(|(s, _)| *s);
    for &(sl, l) in &sorted {
        for &(sk, k) in &sorted {
            if sl + sk > budget {
                break;
            }
            visit(l, k);
        }
    }
}

/// `Θ_{1,1}` truncated at `budget`, summed over ordered pairs.
pub fn theta11(lattice: &Lattice, budget: u32, kind: PairKernel) -> FormalQSeries {
    let shell = lattice.enumerate(budget);
    let mut s = FormalQSeries::new(budget);
    for_each_pair(&shell, budget, |l, k| {
        s.accumulate(l.phi() + k.phi(), &kernel(kind, l, k));
    });
    s
}

/// `Σ coeff(p) · exp(−2π t σ(e, p))`, i.e. the series at `τ = i t`.
/// Floating point, for diagnostics only.
pub fn evaluate_at(series: &FormalQSeries, p: &ParamPoint, t: &Rational) -> f64 {
    let t = t.to_f64().unwrap_or(f64::NAN);
    series
        .terms()
        .map(|(e, poly)| {
            let coeff = poly.eval(p).to_f64().unwrap_or(f64::NAN);
            let exponent = sigma(e, p).to_f64().unwrap_or(f64::NAN);
            coeff * (-2.0 * std::f64::consts::PI * t * exponent).exp()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, ExponentVector};
    use crate::codes::K4Element;
    use crate::lattice::family;
    use proptest::prelude::*;

    #[test]
    fn kernels_agree_on_grid() {
        // deterministic sweep complementing the randomized check
        let vals = [-2i64, 0, 1, 3];
        for a in vals {
            for b in vals {
                let l = LatticeVector::new(a, b, a - b, 1);
                let k = LatticeVector::new(b, 2, -a, a + b);
                assert_eq!(
                    kernel(PairKernel::Defining, &l, &k),
                    kernel(PairKernel::Pairwise, &l, &k)
                );
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_identity(l in prop::array::uniform4(-5i64..=5), k in prop::array::uniform4(-5i64..=5)) {
            let (l, k) = (LatticeVector(l), LatticeVector(k));
            let d = kernel(PairKernel::Defining, &l, &k);
            prop_assert_eq!(&d, &kernel(PairKernel::Pairwise, &l, &k));
            prop_assert!(d.degree().unwrap_or(0) <= 2);
        }

        #[test]
        fn angle_form_matches_pairwise(
            l in prop::array::uniform4(-5i64..=5),
            k in prop::array::uniform4(-5i64..=5),
            den in 1i64..9,
        ) {
            let (l, k) = (LatticeVector(l), LatticeVector(k));
            let p = ParamPoint::new(ratio(1, den), rat(2), ratio(7 + den, 2), rat(11)).unwrap();
            match angle_form(&l, &k, &p) {
                Some(v) => prop_assert_eq!(v, kernel(PairKernel::Pairwise, &l, &k).eval(&p)),
                None => prop_assert!(l.is_zero() || k.is_zero()),
            }
        }
    }

    #[test]
    fn rep_series_examples() {
        let f = family();
        let s = rep_series(&f.l1, 12);
        let p = ParamPoint::schiemann();
        assert_eq!(s.collapse(&p)[..2], [(rat(0), rat(1)), (rat(48), rat(2))]);
        for lat in [&f.l, &f.l1, &f.l2, &f.m] {
            assert_eq!(
                rep_series(lat, 10)
                    .coefficient(&ExponentVector::ZERO)
                    .eval(&p),
                rat(1)
            );
        }
        // oracle: enumerate and count directly
        let shell = f.l1.enumerate(12);
        let count48 = shell.iter().filter(|v| v.norm2(&p) == rat(48)).count();
        assert_eq!(count48, 2);
    }

    #[test]
    fn l1_and_l2_are_isospectral() {
        let f = family();
        let (s1, s2) = (rep_series(&f.l1, 30), rep_series(&f.l2, 30));
        for p in [
            ParamPoint::schiemann(),
            ParamPoint::from_ints(1, 2, 3, 4).unwrap(),
        ] {
            assert_eq!(s1.collapse(&p), s2.collapse(&p));
        }
    }

    #[test]
    fn theta11_routes_agree() {
        let l1 = &family().l1;
        let d = theta11(l1, 24, PairKernel::Defining);
        assert_eq!(d, theta11(l1, 24, PairKernel::Pairwise));
        assert!(d.coefficient(&ExponentVector::ZERO).is_zero());
        assert!(!d.is_empty());
    }

    #[test]
    fn theta11_is_invariant_under_k4() {
        let l1 = &family().l1;
        let base = theta11(l1, 24, PairKernel::Pairwise);
        for g in K4Element::ALL {
            let gens = *l1.generators();
            let moved: [[i64; 4]; 4] =
                std::array::from_fn(|i| gens[i].map(|x| g.eigen_diagonal()[i] * x));
            let image = Lattice::new("gL1", moved).unwrap();
            assert_eq!(theta11(&image, 24, PairKernel::Pairwise), base, "{g}");
        }
    }

    #[test]
    fn theta11_truncation_is_consistent() {
        let l2 = &family().l2;
        let small = theta11(l2, 20, PairKernel::Pairwise);
        let large = theta11(l2, 30, PairKernel::Pairwise);
        assert_eq!(large.truncate(20), small);
    }

    #[test]
    fn theta11_distinguishes_the_pair() {
        let f = family();
        assert_ne!(
            theta11(&f.l1, 24, PairKernel::Pairwise),
            theta11(&f.l2, 24, PairKernel::Pairwise)
        );
    }

    #[test]
    fn evaluation_limits() {
        let p = ParamPoint::schiemann();
        assert_eq!(evaluate_at(&FormalQSeries::new(4), &p, &rat(1)), 0.0);
        let s = rep_series(&family().l1, 24);
        let v = evaluate_at(&s, &p, &rat(5));
        assert!((v - 1.0).abs() < 1e-12);
    }
}
