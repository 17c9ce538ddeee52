//! Ternary codes in F₃⁴, the Kleinian four group acting on them, and the
//! census of self-dual codes.
//!
//! Residues are stored as `0, 1, 2`; the signed notation `-1` is read and
//! printed for `2`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A vector of F₃⁴ with canonical residues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F3Vector(pub [u8; 4]);

impl F3Vector {
    pub const ZERO: F3Vector = F3Vector([0; 4]);

    pub fn from_ints(v: [i64; 4]) -> Self {
        F3Vector(v.map(|x| x.rem_euclid(3) as u8))
    }

    /// Representatives in `{-1, 0, 1}`.
    pub fn signed(&self) -> [i8; 4] {
        self.0.map(|x| match x {
            2 => -1,
            x => x as i8,
        })
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn add(&self, other: &F3Vector) -> F3Vector {
        F3Vector(std::array::from_fn(|i| (self.0[i] + other.0[i]) % 3))
    }

    pub fn scale(&self, k: u8) -> F3Vector {
        F3Vector(self.0.map(|x| (x * (k % 3)) % 3))
    }

    pub fn dot(&self, other: &F3Vector) -> u8 {
        (self
            .0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| (x * y) as u32)
            .sum::<u32>()
            % 3) as u8
    }

    fn all() -> impl Iterator<Item = F3Vector> {
        (0..81u8).map(|k| F3Vector([k % 3, (k / 3) % 3, (k / 9) % 3, k / 27]))
    }
}

impl fmt::Display for F3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.signed();
        write!(f, "({},{},{},{})", s[0], s[1], s[2], s[3])
    }
}

impl Serialize for F3Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.signed().serialize(s)
    }
}

/// A two-dimensional subspace of F₃⁴. Equality is equality of element sets.
#[derive(Clone, Debug)]
pub struct TernaryCode {
    elements: BTreeSet<F3Vector>,
    generators: [F3Vector; 2],
}

impl TernaryCode {
    /// Span of two linearly independent words; `None` if they are dependent.
    pub fn span(x: F3Vector, y: F3Vector) -> Option<TernaryCode> {
        let elements: BTreeSet<F3Vector> = (0..3u8)
            .flat_map(|i| (0..3u8).map(move |j| x.scale(i).add(&y.scale(j))))
            .collect();
        (elements.len() == 9).then(|| TernaryCode {
            generators: canonical_generators(&elements),
            elements,
        })
    }

    pub fn from_signed(x: [i64; 4], y: [i64; 4]) -> Option<TernaryCode> {
        Self::span(F3Vector::from_ints(x), F3Vector::from_ints(y))
    }

    pub fn elements(&self) -> &BTreeSet<F3Vector> {
        &self.elements
    }

    /// Reduced row echelon basis, so equal codes have equal generators.
    pub fn generators(&self) -> [F3Vector; 2] {
        self.generators
    }

    pub fn contains(&self, v: &F3Vector) -> bool {
        self.elements.contains(v)
    }

    pub fn is_self_dual(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.elements.iter().all(|y| x.dot(y) == 0))
    }

    pub fn intersection_dim(&self, other: &TernaryCode) -> u32 {
        match self.elements.intersection(&other.elements).count() {
            1 => 0,
            3 => 1,
            9 => 2,
            n => unreachable!("intersection of subspaces has {n} elements"),
        }
    }
}

impl PartialEq for TernaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for TernaryCode {}

impl fmt::Display for TernaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.generators;
        write!(f, "span{{{x}, {y}}}")
    }
}

fn canonical_generators(elements: &BTreeSet<F3Vector>) -> [F3Vector; 2] {
    // Row reduce: the first generator has the smallest pivot with leading 1,
    // the second has a later pivot with leading 1 and a zero at the first pivot.
    let pivot = |v: &F3Vector| v.0.iter().position(|&x| x != 0);
    let normalized: Vec<&F3Vector> = elements
        .iter()
        .filter(|v| pivot(v).is_some_and(|p| v.0[p] == 1))
        .collect();
    let p0 = normalized
        .iter()
        .filter_map(|v| pivot(v))
        .min()
        .expect("nonzero code");
    let second = normalized
        .iter()
        .filter(|v| v.0[p0] == 0)
        .min_by_key(|v| pivot(v))
        .copied()
        .expect("two-dimensional");
    let p1 = pivot(second).unwrap();
    let first = normalized
        .iter()
        .find(|v| pivot(v) == Some(p0) && v.0[p1] == 0)
        .copied()
        .expect("reduced first row exists");
    [*first, *second]
}

/// Generators of `C1..C8` in signed notation, in the reference numbering.
pub const SELF_DUAL_GENERATORS: [[[i64; 4]; 2]; 8] = [
    [[1, 0, -1, -1], [0, 1, 1, -1]],
    [[1, 0, -1, 1], [0, 1, 1, 1]],
    [[1, 0, -1, 1], [0, 1, -1, -1]],
    [[1, 0, 1, 1], [0, 1, 1, -1]],
    [[1, 0, 1, -1], [0, 1, 1, 1]],
    [[1, 0, -1, -1], [0, 1, -1, 1]],
    [[1, 0, 1, 1], [0, 1, -1, 1]],
    [[1, 0, 1, -1], [0, 1, -1, -1]],
];

/// Code `C_n`, `n` in `1..=8`.
pub fn reference_code(n: usize) -> TernaryCode {
    let [x, y] = SELF_DUAL_GENERATORS[n - 1];
    TernaryCode::from_signed(x, y).expect("independent generators")
}

/// Nonzero words `v0..v3` of `C1` (together with their negatives they make
/// up `C1 \ {0}`).
pub const CODEWORDS_C1: [[i64; 4]; 4] =
    [[1, -1, 1, 0], [0, 1, 1, -1], [-1, 0, 1, 1], [-1, -1, 0, -1]];

/// Words `w0..w3` of `C2` with `g_i(v_i) = w_i`.
pub const CODEWORDS_C2: [[i64; 4]; 4] =
    [[1, -1, 1, 0], [1, 1, 0, -1], [0, -1, -1, -1], [1, 0, -1, 1]];

pub fn codeword(i: usize) -> F3Vector {
    F3Vector::from_ints(CODEWORDS_C1[i])
}

pub fn partner_codeword(i: usize) -> F3Vector {
    F3Vector::from_ints(CODEWORDS_C2[i])
}

/// Every two-dimensional subspace of F₃⁴, each listed once.
pub fn two_dim_subspaces() -> Vec<TernaryCode> {
    let mut seen: BTreeSet<Vec<F3Vector>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in F3Vector::all().filter(|v| !v.is_zero()) {
        for y in F3Vector::all() {
            if let Some(code) = TernaryCode::span(x, y) {
                if seen.insert(code.elements.iter().copied().collect()) {
                    out.push(code);
                }
            }
        }
    }
    out
}

/// The eight self-dual codes, found by exhaustive search and ordered as
/// `C1..C8`.
pub fn all_selfdual_codes() -> Vec<TernaryCode> {
    let reference: Vec<TernaryCode> = (1..=8).map(reference_code).collect();
    let mut found: Vec<TernaryCode> = two_dim_subspaces()
        .into_iter()
        .filter(TernaryCode::is_self_dual)
        .collect();
    found.sort_by_key(|c| reference.iter().position(|r| r == c).unwrap_or(usize::MAX));
    found
}

/// An element of the Kleinian four group `{g0, g1, g2, g3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum K4Element {
    G0,
    G1,
    G2,
    G3,
}

impl K4Element {
    pub const ALL: [K4Element; 4] = [K4Element::G0, K4Element::G1, K4Element::G2, K4Element::G3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> K4Element {
        Self::ALL[i]
    }

    /// Signed permutation matrix acting on the standard coordinates of `L`.
    pub fn standard_matrix(self) -> [[i64; 4]; 4] {
        const ID: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        const G1: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]];
        const G2: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]];
        match self {
            K4Element::G0 => ID,
            K4Element::G1 => G1,
            K4Element::G2 => G2,
            K4Element::G3 => mat_mul(&G2, &G1),
        }
    }

    /// Diagonal of the action in the eigenbasis `u0..u3`.
    pub fn eigen_diagonal(self) -> [i64; 4] {
        match self {
            K4Element::G0 => [1, 1, 1, 1],
            K4Element::G1 => [-1, 1, -1, 1],
            K4Element::G2 => [-1, -1, 1, 1],
            K4Element::G3 => [1, -1, -1, 1],
        }
    }

    pub fn apply_standard(self, v: &[i64; 4]) -> [i64; 4] {
        mat_vec(&self.standard_matrix(), v)
    }

    pub fn apply_f3(self, v: &F3Vector) -> F3Vector {
        F3Vector::from_ints(self.apply_standard(&v.0.map(i64::from)))
    }

    pub fn compose(self, other: K4Element) -> K4Element {
        K4Element::from_index(self.index() ^ other.index())
    }
}

impl fmt::Display for K4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.index())
    }
}

pub(crate) fn mat_mul(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| x[i][k] * y[k][j]).sum()))
}

pub(crate) fn mat_vec(m: &[[i64; 4]; 4], v: &[i64; 4]) -> [i64; 4] {
    std::array::from_fn(|i| (0..4).map(|k| m[i][k] * v[k]).sum())
}

pub fn k4_act_code(g: K4Element, code: &TernaryCode) -> TernaryCode {
    let [x, y] = code.generators();
    TernaryCode::span(g.apply_f3(&x), g.apply_f3(&y)).expect("group elements are invertible")
}

/// Orbits of the group action on `codes`, as sorted index lists ordered by
/// their smallest member.
pub fn orbit_partition(codes: &[TernaryCode]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; codes.len()];
    let mut orbits = Vec::new();
    for start in 0..codes.len() {
        if assigned[start] {
            continue;
        }
        let mut orbit: Vec<usize> = K4Element::ALL
            .iter()
            .filter_map(|&g| {
                let image = k4_act_code(g, &codes[start]);
                codes.iter().position(|c| *c == image)
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &i in &orbit {
            assigned[i] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Edges `(i, j)`, `i < j`, between codes meeting in a line.
pub fn intersection_graph(codes: &[TernaryCode]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            if codes[i].intersection_dim(&codes[j]) == 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// True iff `edges` is exactly the complete bipartite graph between `left`
/// and `right`.
pub fn is_complete_bipartite(edges: &[(usize, usize)], left: &[usize], right: &[usize]) -> bool {
    let expected: BTreeSet<(usize, usize)> = left
        .iter()
        .flat_map(|&x| right.iter().map(move |&y| (x.min(y), x.max(y))))
        .collect();
    let actual: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    actual.len() == edges.len() && actual == expected
}

/// The unique group element moving a nonzero word of `C1` into `C2`.
pub fn match_element(v: &F3Vector) -> Result<K4Element> {
    let c1 = reference_code(1);
    let c2 = reference_code(2);
    if v.is_zero() || !c1.contains(v) {
        return Err(Error::NotInCode(v.to_string()));
    }
    let hits: Vec<K4Element> = K4Element::ALL
        .into_iter()
        .filter(|g| c2.contains(&g.apply_f3(v)))
        .collect();
    match hits.as_slice() {
        [g] => Ok(*g),
        _ => Err(Error::AmbiguousMatch {
            word: v.to_string(),
            count: hits.len(),
        }),
    }
}
