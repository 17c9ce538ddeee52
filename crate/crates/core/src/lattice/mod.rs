//! The lattice `L` and its sublattices `L1`, `L2`, `L12`, `M = 3L`, all in
//! integer coordinates with respect to the eigenbasis `u0..u3`.
//!
//! In these coordinates the Gram matrix is `diag(a, b, c, d)` and every
//! element of the Kleinian four group is a diagonal `±1` matrix, so norms,
//! inner products and the group action are one-line formulas. Standard
//! coordinates of `L ≅ Z⁴` only appear when reducing modulo 3 to meet the
//! ternary codes.

mod hnf;

pub use hnf::{column_hnf, IntMatrix};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{rat, sigma, ExponentVector, ParamPoint, ParamPolynomial, Rational};
use crate::codes::{F3Vector, K4Element};
use crate::error::{Error, Result};

/// Integer coordinates with respect to `u0..u3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVector(pub [i64; 4]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0; 4]);

    pub fn new(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        LatticeVector([x0, x1, x2, x3])
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Squared coordinates.
    pub fn phi(&self) -> ExponentVector {
        ExponentVector(self.0.map(|x| (x * x) as u32))
    }

    pub fn norm2(&self, p: &ParamPoint) -> Rational {
        sigma(&self.phi(), p)
    }

    pub fn inner(&self, other: &LatticeVector, p: &ParamPoint) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .zip(p.coords())
            .fold(Rational::zero(), |acc, ((x, y), s)| acc + s * rat(x * y))
    }

    /// The inner product as a linear polynomial in `a, b, c, d`.
    pub fn inner_poly(&self, other: &LatticeVector) -> ParamPolynomial {
        ParamPolynomial::linear(std::array::from_fn(|i| self.0[i] * other.0[i]))
    }

    /// The action of `g` (diagonal in this basis).
    pub fn apply(&self, g: K4Element) -> LatticeVector {
        let diag = g.eigen_diagonal();
        LatticeVector(std::array::from_fn(|i| diag[i] * self.0[i]))
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.map(|x| -x))
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(rhs.0.map(|x| self * x))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = self.0;
        write!(f, "({x0},{x1},{x2},{x3})")
    }
}

/// The Gram parameters `(r, α, β, γ)` of `L` in its standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramParams {
    pub r: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl GramParams {
    /// The Gram matrix of `L` in its standard basis.
    pub fn gram_matrix(&self) -> [[Rational; 4]; 4] {
        let (r, al, be, ga) = (&self.r, &self.alpha, &self.beta, &self.gamma);
        [
            [r.clone(), al.clone(), be.clone(), ga.clone()],
            [al.clone(), r.clone(), -ga, -be],
            [be.clone(), -ga, r.clone(), -al],
            [ga.clone(), -be, -al, r.clone()],
        ]
    }
}

/// Eigenvalues of the Gram matrix; errors unless all four are positive.
pub fn abcd_from_gram(g: &GramParams) -> Result<ParamPoint> {
    let quarter = |x: Rational| x / rat(4);
    let (r, al, be, ga) = (&g.r, &g.alpha, &g.beta, &g.gamma);
    ParamPoint::new(
        quarter(r - al - be - ga),
        quarter(r - al + be + ga),
        quarter(r + al - be + ga),
        quarter(r + al + be - ga),
    )
}

pub fn gram_from_abcd(p: &ParamPoint) -> GramParams {
    let [a, b, c, d] = p.coords();
    GramParams {
        r: a + b + c + d,
        alpha: c + d - a - b,
        beta: b + d - a - c,
        gamma: b + c - a - d,
    }
}

/// `4·u_i` in standard coordinates, as columns.
pub const EIGENBASIS_TIMES_FOUR: IntMatrix =
    [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]];

/// A basis `l0..l3` of `L` in standard coordinates (columns).
pub const STANDARD_BASIS: IntMatrix = [[1, 0, 1, 1], [-1, 1, 1, 0], [1, 1, 0, 1], [0, -1, -1, -1]];

/// The same basis `l0..l3` in eigenbasis coordinates (columns).
pub const EIGEN_GENERATORS: IntMatrix = [
    [-1, 1, -1, -1],
    [3, -1, -1, 1],
    [-1, -1, 1, -1],
    [1, 3, 3, 3],
];

/// Generators of `L2` in the form used by Conway and Sloane for `L⁻`.
pub const CONWAY_SLOANE_MINUS: IntMatrix = [
    [-3, 1, 1, 1],
    [-1, -3, -1, 1],
    [-1, 1, -3, -1],
    [-1, -1, 1, -3],
];

/// Generators of `L1`, equal to `L⁺` up to `diag(1, -1, 1, 1)`.
pub const CONWAY_SLOANE_PLUS_VARIANT: IntMatrix =
    [[3, 1, 1, 1], [1, -3, 1, -1], [-1, 1, 3, -1], [-1, -1, 1, 3]];

/// `m0..m3` spanning `M = 3L` (columns).
pub const M_GENERATORS: IntMatrix = [[-3, 3, 3, 3], [3, -3, 3, 3], [3, 3, -3, 3], [3, 3, 3, -3]];

/// Coset representatives `v0..v3` of `L1/M` (the `±[v_i]` classes).
pub const COSET_REPS: [[i64; 4]; 4] = [
    [-1, 3, -1, 1],
    [1, -1, -1, 3],
    [3, 1, -1, -1],
    [-1, -1, -3, -1],
];

pub fn coset_rep(i: usize) -> LatticeVector {
    LatticeVector(COSET_REPS[i])
}

fn column(m: &IntMatrix, j: usize) -> [i64; 4] {
    std::array::from_fn(|i| m[i][j])
}

fn with_columns(cols: [[i64; 4]; 4]) -> IntMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i]))
}

/// A full-rank sublattice of `Z⁴` (eigenbasis coordinates), identified by
/// its Hermite normal form.
#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    generators: IntMatrix,
    hnf: IntMatrix,
}

impl Lattice {
    /// Columns of `generators` are the basis vectors.
    pub fn new(name: impl Into<String>, generators: IntMatrix) -> Result<Lattice> {
        Ok(Lattice {
            name: name.into(),
            hnf: column_hnf(&generators)?,
            generators,
        })
    }

    pub fn from_columns(name: impl Into<String>, cols: [[i64; 4]; 4]) -> Result<Lattice> {
        Self::new(name, with_columns(cols))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> LatticeVector {
        LatticeVector(column(&self.generators, j))
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    /// Index of the lattice in `Z⁴` (absolute determinant).
    pub fn det(&self) -> i64 {
        (0..4).map(|i| self.hnf[i][i]).product()
    }

    /// Integer coordinates of `v` with respect to the HNF columns.
    fn solve(&self, v: &LatticeVector) -> Option<[i64; 4]> {
        let mut c = [0i64; 4];
        for i in 0..4 {
            let rest = v.0[i] - (0..i).map(|j| self.hnf[i][j] * c[j]).sum::<i64>();
            if rest % self.hnf[i][i] != 0 {
                return None;
            }
            c[i] = rest / self.hnf[i][i];
        }
        Some(c)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.solve(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        (0..4).all(|j| other.contains(&self.generator(j)))
    }

    /// `[other : self]`, or `None` if `self` is not contained in `other`.
    pub fn index_in(&self, other: &Lattice) -> Option<i64> {
        self.is_sublattice_of(other)
            .then(|| self.det() / other.det())
    }

    /// Coordinates of `v` in the given generators (not the HNF). Errors if
    /// `v` is not in the lattice.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<[i64; 4]> {
        solve_integer(&self.generators, &v.0).ok_or_else(|| self.not_member(v))
    }

    fn not_member(&self, v: &LatticeVector) -> Error {
        Error::NotMember {
            lattice: self.name.clone(),
            vector: v.to_string(),
        }
    }

    /// All members whose squared coordinates sum to at most `budget`, in
    /// lexicographic order.
    pub fn enumerate(&self, budget: u32) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        let mut x = [0i64; 4];
        self.scan(0, budget as i64, &mut x, &mut out);
        out
    }

    fn scan(&self, depth: usize, left: i64, x: &mut [i64; 4], out: &mut Vec<LatticeVector>) {
        if depth == 4 {
            let v = LatticeVector(*x);
            if self.contains(&v) {
                out.push(v);
            }
            return;
        }
        let r = isqrt(left);
        for t in -r..=r {
            x[depth] = t;
            self.scan(depth + 1, left - t * t, x, out);
        }
    }
}

/// Equality as sets of vectors.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf
    }
}

impl Eq for Lattice {}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Solves `m·x = v` over the integers by exact rational elimination.
fn solve_integer(m: &IntMatrix, v: &[i64; 4]) -> Option<[i64; 4]> {
    let mut aug: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| rat(m[i][j])).chain([rat(v[i])]).collect())
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in &mut aug[col][col..] {
            *x = &*x * &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    let mut x = [0i64; 4];
    for i in 0..4 {
        if !aug[i][4].is_integer() {
            return None;
        }
        x[i] = i64::try_from(aug[i][4].to_integer()).ok()?;
    }
    Some(x)
}

/// Which class of `L1/M` a vector lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetLabel {
    Zero,
    /// `+[v_index]` or, with `negative`, `-[v_index]`.
    Class {
        index: usize,
        negative: bool,
    },
}

impl CosetLabel {
    pub fn positive(index: usize) -> Self {
        CosetLabel::Class {
            index,
            negative: false,
        }
    }

    /// The nine labels: `[0]`, then `+[v_i]`, `-[v_i]` for `i = 0..3`.
    pub fn all() -> [CosetLabel; 9] {
        let mut out = [CosetLabel::Zero; 9];
        for i in 0..4 {
            out[1 + 2 * i] = CosetLabel::Class {
                index: i,
                negative: false,
            };
            out[2 + 2 * i] = CosetLabel::Class {
                index: i,
                negative: true,
            };
        }
        out
    }

    pub fn negate(self) -> Self {
        match self {
            CosetLabel::Zero => CosetLabel::Zero,
            CosetLabel::Class { index, negative } => CosetLabel::Class {
                index,
                negative: !negative,
            },
        }
    }

    /// The group element by which `Ψ` acts on the class.
    pub fn group_element(self) -> K4Element {
        match self {
            CosetLabel::Zero => K4Element::G0,
            CosetLabel::Class { index, .. } => K4Element::from_index(index),
        }
    }

    /// Signed representative in `L1`.
    pub fn representative(self) -> LatticeVector {
        match self {
            CosetLabel::Zero => LatticeVector::ZERO,
            CosetLabel::Class {
                index,
                negative: false,
            } => coset_rep(index),
            CosetLabel::Class {
                index,
                negative: true,
            } => -coset_rep(index),
        }
    }

    /// Signed representative of the corresponding class of `L2/M`.
    pub fn partner_representative(self) -> LatticeVector {
        self.representative().apply(self.group_element())
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetLabel::Zero => f.write_str("[0]"),
            CosetLabel::Class { index, negative } => {
                write!(f, "{}[v{index}]", if *negative { "-" } else { "+" })
            }
        }
    }
}

/// `L`, `L1`, `L2`, `L12` and `M`. The generator matrices do not depend on
/// the parameters.
#[derive(Clone, Debug)]
pub struct Family {
    pub l: Lattice,
    pub l1: Lattice,
    pub l2: Lattice,
    pub l12: Lattice,
    pub m: Lattice,
}

pub fn build_family() -> Family {
    let l = [0, 1, 2, 3].map(|j| column(&EIGEN_GENERATORS, j));
    let triple = |v: [i64; 4]| v.map(|x| 3 * x);
    let make = |name: &str, cols| Lattice::from_columns(name, cols).expect("nonsingular");
    Family {
        l: make("L", l),
        l1: make("L1", [l[0], l[1], triple(l[2]), triple(l[3])]),
        l2: make("L2", [l[0], triple(l[1]), l[2], triple(l[3])]),
        l12: make("L12", [l[0], triple(l[1]), triple(l[2]), triple(l[3])]),
        m: make("M", [0, 1, 2, 3].map(|j| column(&M_GENERATORS, j))),
    }
}

/// Shared instance of [`build_family`].
pub fn family() -> &'static Family {
    static FAMILY: OnceLock<Family> = OnceLock::new();
    FAMILY.get_or_init(build_family)
}

impl Family {
    pub fn lattice(&self, name: &str) -> Option<&Lattice> {
        [&self.l, &self.l1, &self.l2, &self.l12, &self.m]
            .into_iter()
            .find(|lat| lat.name().eq_ignore_ascii_case(name))
    }

    /// Standard coordinates of `v ∈ L`.
    pub fn to_standard(&self, v: &LatticeVector) -> Result<[i64; 4]> {
        let c = self.l.coordinates(v)?;
        Ok(crate::codes::mat_vec(&STANDARD_BASIS, &c))
    }

    /// Reduction `L → L/3L ≅ F₃⁴`.
    pub fn project_mod3(&self, v: &LatticeVector) -> Result<F3Vector> {
        Ok(F3Vector::from_ints(self.to_standard(v)?))
    }

    fn label_against(
        &self,
        lattice: &Lattice,
        v: &LatticeVector,
        rep: impl Fn(CosetLabel) -> LatticeVector,
    ) -> Result<CosetLabel> {
        if !lattice.contains(v) {
            return Err(lattice.not_member(v));
        }
        CosetLabel::all()
            .into_iter()
            .find(|&label| self.m.contains(&(*v - rep(label))))
            .ok_or_else(|| lattice.not_member(v))
    }

    /// Class of `v ∈ L1` modulo `M`.
    pub fn coset_label(&self, v: &LatticeVector) -> Result<CosetLabel> {
        self.label_against(&self.l1, v, CosetLabel::representative)
    }

    /// Class of `w ∈ L2` modulo `M`, labelled by the matching `L1` class.
    pub fn coset_label_l2(&self, w: &LatticeVector) -> Result<CosetLabel> {
        self.label_against(&self.l2, w, CosetLabel::partner_representative)
    }

    /// The norm-preserving bijection `Ψ: L1 → L2`: identity on `M`, `g_i` on
    /// the classes `±[v_i]`.
    pub fn psi(&self, v: &LatticeVector) -> Result<LatticeVector> {
        let label = self.coset_label(v)?;
        Ok(v.apply(label.group_element()))
    }

    /// The inverse `Φ: L2 → L1`.
    pub fn psi_inv(&self, w: &LatticeVector) -> Result<LatticeVector> {
        let label = self.coset_label_l2(w)?;
        Ok(w.apply(label.group_element()))
    }

    /// A pair in the budget shell of `L1` on which `Ψ` fails to be additive.
    pub fn psi_nonadditivity_witness(&self, budget: u32) -> Option<(LatticeVector, LatticeVector)> {
        let shell = self.l1.enumerate(budget);
        shell
            .iter()
            .flat_map(|x| shell.iter().map(move |y| (*x, *y)))
            .find(|(x, y)| {
                let lhs = self.psi(&(*x + *y)).expect("L1 is closed under addition");
                lhs != self.psi(x).unwrap() + self.psi(y).unwrap()
            })
    }
}
