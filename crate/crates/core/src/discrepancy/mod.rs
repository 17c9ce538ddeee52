//! The discrepancy `δ = (Θ_{1,1}(L1) − Θ_{1,1}(L2)) / 128`, its split into
//! class series over `L1/M`, minimal vectors and pairs, and the
//! non-isometry certificate.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    exp_cmp, rat, ratio, rational_serde, sigma, Dominance, ExponentVector, FormalQSeries,
    ParamPoint, ParamPolynomial, Rational,
};
use crate::error::{Error, Result};
use crate::lattice::{family, CosetLabel, LatticeVector};
use crate::theta::{for_each_pair, theta11, PairKernel};

/// Smallest budget at which the minimal-vector search is complete.
pub const SOUND_BUDGET: u32 = 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DeltaRoute {
    /// `(Θ_{1,1}(L1) − Θ_{1,1}(L2)) / 128`.
    FromTheta,
    /// `(1/8) Σ_{(l,k) ∈ L1×L1} (⟨l,k⟩² − ⟨Ψl,Ψk⟩²) q^{φ(l)+φ(k)}`.
    FromPsiKernel,
}

/// An unordered pair of distinct classes `[v_i]`, `[v_j]` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassPair {
    i: usize,
    j: usize,
}

impl ClassPair {
    pub fn new(i: usize, j: usize) -> Option<ClassPair> {
        (i < j && j < 4).then_some(ClassPair { i, j })
    }

    pub fn all() -> Vec<ClassPair> {
        (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| ClassPair { i, j }))
            .collect()
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }
}

struct Entry {
    v: LatticeVector,
    psi: LatticeVector,
    label: CosetLabel,
}

/// The budget shell of `L1` with labels and `Ψ`-images attached.
struct LabeledShell {
    budget: u32,
    entries: Vec<Entry>,
}

impl LabeledShell {
    fn new(budget: u32) -> LabeledShell {
        let f = family();
        let entries =
            f.l1.enumerate(budget)
                .into_iter()
                .map(|v| Entry {
                    psi: f.psi(&v).expect("shell lies in L1"),
                    label: f.coset_label(&v).expect("shell lies in L1"),
                    v,
                })
                .collect();
        LabeledShell { budget, entries }
    }

    /// Visits ordered pairs within budget together with their kernel
    /// `⟨l,k⟩² − ⟨Ψl,Ψk⟩²`.
    fn for_each_pair(
        &self,
        mut visit: impl FnMut(&Entry, &Entry, ExponentVector, ParamPolynomial),
    ) {
        let index: BTreeMap<LatticeVector, usize> = self
            .entries
            .iter()
            .enumerate()
            .map(|(n, e)| (e.v, n))
            .collect();
        let vectors: Vec<LatticeVector> = self.entries.iter().map(|e| e.v).collect();
        for_each_pair(&vectors, self.budget, |l, k| {
            let (el, ek) = (&self.entries[index[l]], &self.entries[index[k]]);
            let kernel = psi_kernel(el, ek);
            visit(el, ek, l.phi() + k.phi(), kernel);
        });
    }
}

fn psi_kernel(l: &Entry, k: &Entry) -> ParamPolynomial {
    if l.label.group_element() == k.label.group_element() {
        // Ψ acts on both by the same isometry
        return ParamPolynomial::zero();
    }
    let before = l.v.inner_poly(&k.v);
    let after = l.psi.inner_poly(&k.psi);
    &(&before * &before) - &(&after * &after)
}

pub fn delta_series(budget: u32, route: DeltaRoute) -> FormalQSeries {
    match route {
        DeltaRoute::FromTheta => {
            let f = family();
            let t1 = theta11(&f.l1, budget, PairKernel::Pairwise);
            let t2 = theta11(&f.l2, budget, PairKernel::Pairwise);
            t1.sub(&t2).expect("same budget").scale(&ratio(1, 128))
        }
        DeltaRoute::FromPsiKernel => {
            let mut s = FormalQSeries::new(budget);
            LabeledShell::new(budget).for_each_pair(|_, _, e, kernel| {
                s.accumulate(e, &kernel);
            });
            s.scale(&ratio(1, 8))
        }
    }
}

/// `δ_{[v],[v']}`: the unnormalized sum over `l ∈ [v]`, `k ∈ [v']`.
pub fn class_series(left: CosetLabel, right: CosetLabel, budget: u32) -> FormalQSeries {
    let mut s = FormalQSeries::new(budget);
    LabeledShell::new(budget).for_each_pair(|l, k, e, kernel| {
        if l.label == left && k.label == right {
            s.accumulate(e, &kernel);
        }
    });
    s
}

/// All 81 class series in one pass.
pub fn all_class_series(budget: u32) -> BTreeMap<(CosetLabel, CosetLabel), FormalQSeries> {
    let mut out: BTreeMap<(CosetLabel, CosetLabel), FormalQSeries> = CosetLabel::all()
        .into_iter()
        .flat_map(|x| {
            CosetLabel::all()
                .into_iter()
                .map(move |y| ((x, y), FormalQSeries::new(budget)))
        })
        .collect();
    LabeledShell::new(budget).for_each_pair(|l, k, e, kernel| {
        out.get_mut(&(l.label, k.label))
            .expect("all labels present")
            .accumulate(e, &kernel);
    });
    out
}

pub fn delta_class(pair: ClassPair, budget: u32) -> FormalQSeries {
    class_series(
        CosetLabel::positive(pair.i),
        CosetLabel::positive(pair.j),
        budget,
    )
}

/// The four identities among the class series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `δ_{[v],[v]} = 0`
    Diagonal,
    /// `δ_{[v],[v']} = δ_{[v'],[v]}`
    Symmetric,
    /// `δ_{[v],[−v']} = δ_{[v],[v']}`
    SignInvariant,
    /// `δ_{[0],[v]} = 0`
    ZeroClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: Relation,
    pub left: String,
    pub right: String,
    pub witness: Option<ExponentVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub budget: u32,
    pub identities_checked: usize,
    pub violation: Option<RelationViolation>,
}

impl RelationsReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn first_difference(x: &FormalQSeries, y: &FormalQSeries) -> Option<ExponentVector> {
    x.terms()
        .chain(y.terms())
        .map(|(e, _)| *e)
        .find(|e| x.coefficient(e) != y.coefficient(e))
}

/// Checks the four relations as exact identities of truncated series over
/// all pairs of labels.
pub fn check_relations(budget: u32) -> RelationsReport {
    let series = all_class_series(budget);
    let empty = FormalQSeries::new(budget);
    let get = |x: CosetLabel, y: CosetLabel| &series[&(x, y)];
    let labels = CosetLabel::all();

    let mut checks: Vec<(
        Relation,
        CosetLabel,
        CosetLabel,
        &FormalQSeries,
        &FormalQSeries,
    )> = Vec::new();
    for &x in &labels {
        checks.push((Relation::Diagonal, x, x, get(x, x), &empty));
    }
    for &x in &labels {
        for &y in &labels {
            checks.push((Relation::Symmetric, x, y, get(x, y), get(y, x)));
        }
    }
    for &x in &labels {
        for &y in &labels {
            checks.push((
                Relation::SignInvariant,
                x,
                y.negate(),
                get(x, y.negate()),
                get(x, y),
            ));
        }
    }
    for &x in &labels {
        checks.push((
            Relation::ZeroClass,
            CosetLabel::Zero,
            x,
            get(CosetLabel::Zero, x),
            &empty,
        ));
    }

    let identities_checked = checks.len();
    let violation = checks
        .into_iter()
        .find(|(_, _, _, lhs, rhs)| lhs != rhs)
        .map(|(relation, x, y, lhs, rhs)| RelationViolation {
            relation,
            left: x.to_string(),
            right: y.to_string(),
            witness: first_difference(lhs, rhs),
        });
    RelationsReport {
        budget,
        identities_checked,
        violation,
    }
}

/// The minimal vectors `v0..v6`: `v0..v3` are the coset representatives,
/// `v4 ∈ [v0]`, `v5 ∈ [v1]`, `v6 ∈ [v3]`.
pub const MINIMAL_VECTORS: [[i64; 4]; 7] = [
    [-1, 3, -1, 1],
    [1, -1, -1, 3],
    [3, 1, -1, -1],
    [-1, -1, -3, -1],
    [-4, 0, 2, -2],
    [4, 2, 2, 0],
    [-4, 2, 0, 2],
];

/// Class index of each entry of [`MINIMAL_VECTORS`].
pub const MINIMAL_VECTOR_CLASS: [usize; 7] = [0, 1, 2, 3, 0, 1, 3];

pub fn minimal_vector(i: usize) -> LatticeVector {
    LatticeVector(MINIMAL_VECTORS[i])
}

/// Sums `φ(v_i) + φ(v_j)` over minimal vectors from distinct classes.
pub const REFERENCE_PAIR_TABLE: [((usize, usize), [u32; 4]); 18] = [
    ((0, 1), [2, 10, 2, 10]),
    ((0, 2), [10, 10, 2, 2]),
    ((0, 3), [2, 10, 10, 2]),
    ((0, 5), [17, 13, 5, 1]),
    ((0, 6), [17, 13, 1, 5]),
    ((1, 2), [10, 2, 2, 10]),
    ((1, 3), [2, 2, 10, 10]),
    ((1, 4), [17, 1, 5, 13]),
    ((1, 6), [17, 5, 1, 13]),
    ((2, 3), [10, 2, 10, 2]),
    ((2, 4), [25, 1, 5, 5]),
    ((2, 5), [25, 5, 5, 1]),
    ((2, 6), [25, 5, 1, 5]),
    ((3, 4), [17, 1, 13, 5]),
    ((3, 5), [17, 5, 13, 1]),
    ((4, 5), [32, 4, 8, 4]),
    ((4, 6), [32, 4, 4, 8]),
    ((5, 6), [32, 8, 4, 4]),
];

/// The two exponent vectors at which the leading coefficient of `δ` lives.
pub const LEADING_EXPONENTS: [[u32; 4]; 2] = [[10, 10, 2, 2], [25, 5, 5, 1]];

/// `−12(b−a)(d−c)` and `−96a(c−b)`.
pub fn leading_polynomials() -> [ParamPolynomial; 2] {
    let v = ParamPolynomial::var;
    let k = |n: i64| ParamPolynomial::constant(rat(n));
    [
        k(-12) * (&v(1) - &v(0)) * (&v(3) - &v(2)),
        k(-96) * v(0) * (&v(2) - &v(1)),
    ]
}

/// Elements of the class `label` in the budget shell that no other element
/// of the class strictly dominates, in lexicographic order.
pub fn minimal_vectors(label: CosetLabel, budget: u32) -> Vec<LatticeVector> {
    let f = family();
    let class: Vec<LatticeVector> =
        f.l1.enumerate(budget)
            .into_iter()
            .filter(|v| f.coset_label(v).expect("shell lies in L1") == label)
            .collect();
    class
        .iter()
        .filter(|v| !class.iter().any(|w| w.phi().strictly_below(&v.phi())))
        .copied()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub i: usize,
    pub j: usize,
    pub exponent: ExponentVector,
    /// No other row is strictly below this one.
    pub minimal: bool,
}

/// Runs the minimal-vector search for each class, names the results by
/// [`MINIMAL_VECTORS`], and tabulates `φ(v_i) + φ(v_j)` for vectors from
/// distinct classes.
pub fn minimal_pair_table(budget: u32) -> Result<Vec<PairRow>> {
    if budget < SOUND_BUDGET {
        return Err(Error::InsufficientBudget {
            required: SOUND_BUDGET,
            got: budget,
        });
    }
    let mut found: Vec<usize> = Vec::new();
    for class in 0..4 {
        for v in minimal_vectors(CosetLabel::positive(class), budget) {
            let idx = MINIMAL_VECTORS
                .iter()
                .position(|m| *m == v.0)
                .ok_or_else(|| {
                    Error::CertificateMismatch(format!(
                        "unexpected minimal vector {v} in class [v{class}]"
                    ))
                })?;
            found.push(idx);
        }
    }
    found.sort_unstable();
    let mut rows: Vec<PairRow> = Vec::new();
    for (n, &i) in found.iter().enumerate() {
        for &j in &found[n + 1..] {
            if MINIMAL_VECTOR_CLASS[i] != MINIMAL_VECTOR_CLASS[j] {
                let exponent = minimal_vector(i).phi() + minimal_vector(j).phi();
                rows.push(PairRow {
                    i,
                    j,
                    exponent,
                    minimal: false,
                });
            }
        }
    }
    let exps: Vec<ExponentVector> = rows.iter().map(|r| r.exponent).collect();
    for row in &mut rows {
        row.minimal = !exps
            .iter()
            .any(|e| exp_cmp(e, &row.exponent) == Dominance::Less);
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NonIsometric,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub exponent_vector: ExponentVector,
    pub polynomial: ParamPolynomial,
    #[serde(with = "rational_serde")]
    pub value: Rational,
}

/// Witness that `δ ≠ 0` at a parameter point: the smallest exponent of the
/// collapsed series together with the terms that produce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: ParamPoint,
    pub sorted_params: ParamPoint,
    /// `sorted_params[k] = params[permutation[k]]`.
    pub permutation: [usize; 4],
    pub budget: u32,
    #[serde(with = "rational_serde::option")]
    pub min_exponent: Option<Rational>,
    pub terms: Vec<CertificateTerm>,
    #[serde(with = "rational_serde::option")]
    pub total: Option<Rational>,
    pub verdict: Verdict,
}

/// Precomputed `δ` and cross-checks, reusable across parameter points.
pub struct Certifier {
    budget: u32,
    delta: FormalQSeries,
}

impl Certifier {
    pub fn new(budget: u32) -> Result<Certifier> {
        if budget < SOUND_BUDGET {
            return Err(Error::InsufficientBudget {
                required: SOUND_BUDGET,
                got: budget,
            });
        }
        let rows = minimal_pair_table(budget)?;
        let minimal: Vec<ExponentVector> = rows
            .iter()
            .filter(|r| r.minimal)
            .map(|r| r.exponent)
            .collect();
        let expected: Vec<ExponentVector> = LEADING_EXPONENTS
            .iter()
            .map(|e| ExponentVector(*e))
            .collect();
        if minimal != expected {
            return Err(Error::CertificateMismatch(format!(
                "minimal pair sums are {minimal:?}"
            )));
        }
        let delta = delta_series(budget, DeltaRoute::FromPsiKernel);
        for (e, poly) in expected.iter().zip(leading_polynomials()) {
            let got = delta.coefficient(e);
            if got != poly {
                return Err(Error::CertificateMismatch(format!(
                    "coefficient at {e} is {got}, expected {poly}"
                )));
            }
        }
        Ok(Certifier { budget, delta })
    }

    pub fn delta(&self) -> &FormalQSeries {
        &self.delta
    }

    pub fn certify(&self, params: &ParamPoint) -> Result<Certificate> {
        let (sorted, permutation) = params.sorted();
        let collapsed = self.delta.collapse(&sorted);
        let leading = collapsed.first().cloned();
        let min_exponent = leading.as_ref().map(|(e, _)| e.clone());

        let terms: Vec<CertificateTerm> = match &min_exponent {
            Some(m) => self
                .delta
                .terms()
                .filter(|(e, _)| sigma(e, &sorted) == *m)
                .map(|(e, poly)| CertificateTerm {
                    exponent_vector: *e,
                    polynomial: poly.clone(),
                    value: poly.eval(&sorted),
                })
                .collect(),
            None => Vec::new(),
        };
        let total = min_exponent
            .as_ref()
            .map(|_| terms.iter().fold(Rational::zero(), |acc, t| acc + &t.value));

        let mut cert = Certificate {
            params: params.clone(),
            sorted_params: sorted.clone(),
            permutation,
            budget: self.budget,
            min_exponent,
            terms,
            total,
            verdict: Verdict::Inconclusive,
        };
        if !params.is_pairwise_distinct() {
            return Ok(cert);
        }

        let expected_min = LEADING_EXPONENTS
            .iter()
            .map(|e| sigma(&ExponentVector(*e), &sorted))
            .min()
            .expect("two entries");
        let (found_min, found_coeff) = leading
            .ok_or_else(|| Error::CertificateMismatch("δ vanishes within the budget".into()))?;
        if found_min != expected_min {
            return Err(Error::CertificateMismatch(format!(
                "leading exponent {found_min}, expected {expected_min}"
            )));
        }
        if let Some(stray) = cert
            .terms
            .iter()
            .find(|t| !LEADING_EXPONENTS.contains(&t.exponent_vector.0))
        {
            return Err(Error::CertificateMismatch(format!(
                "unexpected term at {} in the leading coefficient",
                stray.exponent_vector
            )));
        }
        if cert.total.as_ref() != Some(&found_coeff) {
            return Err(Error::CertificateMismatch(
                "collapsed coefficient disagrees with its terms".into(),
            ));
        }
        if found_coeff.is_negative() {
            cert.verdict = Verdict::NonIsometric;
        }
        Ok(cert)
    }
}

/// One-shot [`Certifier::certify`].
pub fn certify(params: &ParamPoint, budget: u32) -> Result<Certificate> {
    Certifier::new(budget)?.certify(params)
}

#[cfg(test)]
mod tests;
