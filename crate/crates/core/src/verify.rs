//! Reference checks that recompute every tabulated fact about the family
//! and compare it with the hard-coded values.

use serde::Serialize;

use crate::arith::{rat, ExponentVector, ParamPoint};
use crate::codes::{
    all_selfdual_codes, intersection_graph, is_complete_bipartite, mat_mul, orbit_partition,
    reference_code, two_dim_subspaces,
};
use crate::discrepancy::{
    check_relations, delta_class, delta_series, minimal_pair_table, minimal_vector,
    minimal_vectors, Certifier, ClassPair, DeltaRoute, Verdict, LEADING_EXPONENTS,
    REFERENCE_PAIR_TABLE, SOUND_BUDGET,
};
use crate::error::{Error, Result};
use crate::lattice::{
    family, CosetLabel, Lattice, CONWAY_SLOANE_MINUS, CONWAY_SLOANE_PLUS_VARIANT,
    EIGENBASIS_TIMES_FOUR, EIGEN_GENERATORS, STANDARD_BASIS,
};
use crate::theta::{theta11, PairKernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnchorResult {
    pub anchor: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AnchorResult {
    fn from_check(anchor: &'static str, outcome: std::result::Result<(), String>) -> AnchorResult {
        match outcome {
            Ok(()) => AnchorResult {
                anchor,
                status: Status::Pass,
                witness: None,
            },
            Err(w) => AnchorResult {
                anchor,
                status: Status::Fail,
                witness: Some(w),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

type Check = std::result::Result<(), String>;

fn code_census() -> Check {
    let n = two_dim_subspaces().len();
    ensure(n == 130, || format!("{n} two-dimensional subspaces"))?;
    let codes = all_selfdual_codes();
    ensure(codes.len() == 8, || {
        format!("{} self-dual codes", codes.len())
    })?;
    for (i, c) in codes.iter().enumerate() {
        ensure(*c == reference_code(i + 1), || format!("C{} = {c}", i + 1))?;
    }
    Ok(())
}

fn k4_orbits() -> Check {
    let orbits = orbit_partition(&all_selfdual_codes());
    ensure(orbits == vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]], || {
        format!("{orbits:?}")
    })
}

fn intersection_graph_check() -> Check {
    let edges = intersection_graph(&all_selfdual_codes());
    ensure(edges.len() == 16, || format!("{} edges", edges.len()))?;
    ensure(
        is_complete_bipartite(&edges, &[0, 2, 4, 6], &[1, 3, 5, 7]),
        || format!("{edges:?}"),
    )
}

fn basis_change() -> Check {
    let lhs = STANDARD_BASIS.map(|row| row.map(|x| 4 * x));
    let rhs = mat_mul(&EIGENBASIS_TIMES_FOUR, &EIGEN_GENERATORS);
    ensure(lhs == rhs, || format!("4S = {lhs:?}, 4U·G = {rhs:?}"))?;
    let det = Lattice::new("S", STANDARD_BASIS)
        .map_err(|e| e.to_string())?
        .det();
    ensure(det == 1, || format!("det S = {det}"))
}

fn lattice_indices() -> Check {
    let f = family();
    let got = [
        f.l1.index_in(&f.l),
        f.l2.index_in(&f.l),
        f.l12.index_in(&f.l1),
        f.l12.index_in(&f.l2),
        f.m.index_in(&f.l12),
    ];
    let want = [Some(9), Some(9), Some(3), Some(3), Some(3)];
    ensure(got == want, || format!("indices {got:?}"))?;
    let three_l = Lattice::new("3L", EIGEN_GENERATORS.map(|r| r.map(|x| 3 * x)))
        .map_err(|e| e.to_string())?;
    ensure(three_l == f.m, || "span{3l_i} != span{m_i}".into())
}

fn conway_sloane() -> Check {
    let f = family();
    let minus = Lattice::new("L-", CONWAY_SLOANE_MINUS).map_err(|e| e.to_string())?;
    ensure(minus == f.l2, || format!("L- has HNF {:?}", minus.hnf()))?;
    let plus = Lattice::new("L+", CONWAY_SLOANE_PLUS_VARIANT).map_err(|e| e.to_string())?;
    ensure(plus == f.l1, || {
        format!("L+ variant has HNF {:?}", plus.hnf())
    })
}

fn kernel_identity() -> Check {
    let l1 = &family().l1;
    let d = theta11(l1, 24, PairKernel::Defining);
    let p = theta11(l1, 24, PairKernel::Pairwise);
    ensure(d == p, || {
        let e = d
            .terms()
            .chain(p.terms())
            .map(|(e, _)| *e)
            .find(|e| d.coefficient(e) != p.coefficient(e));
        format!(
            "kernels differ at {}",
            e.map(|e| e.to_string()).unwrap_or_default()
        )
    })
}

fn relations() -> Check {
    let report = check_relations(24);
    match report.violation {
        None => Ok(()),
        Some(v) => Err(format!(
            "{:?} fails for {}, {} at {}",
            v.relation,
            v.left,
            v.right,
            v.witness.map(|e| e.to_string()).unwrap_or_default()
        )),
    }
}

fn decomposition(budget: u32) -> Check {
    let n = budget.min(24);
    let delta = delta_series(n, DeltaRoute::FromPsiKernel);
    let theta = delta_series(n, DeltaRoute::FromTheta);
    ensure(delta == theta, || "the two routes to δ differ".into())?;
    let mut sum = crate::arith::FormalQSeries::new(n);
    for pair in ClassPair::all() {
        sum = sum.add(&delta_class(pair, n)).map_err(|e| e.to_string())?;
    }
    ensure(sum == delta, || "class pairs do not sum to δ".into())
}

fn minimal_vector_table(budget: u32) -> Check {
    let expected: [&[usize]; 4] = [&[0, 4], &[1, 5], &[2], &[3, 6]];
    for (class, idx) in expected.iter().enumerate() {
        let mut want: Vec<_> = idx.iter().map(|&i| minimal_vector(i)).collect();
        want.sort();
        let got = minimal_vectors(CosetLabel::positive(class), budget);
        ensure(got == want, || {
            let shown: Vec<String> = got.iter().map(|v| v.to_string()).collect();
            format!("class [v{class}]: {}", shown.join(" "))
        })?;
    }
    Ok(())
}

fn minimal_pair_rows(budget: u32) -> Check {
    let rows = minimal_pair_table(budget).map_err(|e| e.to_string())?;
    ensure(rows.len() == REFERENCE_PAIR_TABLE.len(), || {
        format!("{} rows", rows.len())
    })?;
    for (row, ((i, j), e)) in rows.iter().zip(REFERENCE_PAIR_TABLE) {
        ensure((row.i, row.j, row.exponent.0) == (i, j, e), || {
            format!(
                "row ({},{}) -> {}, expected ({i},{j}) -> {}",
                row.i,
                row.j,
                row.exponent,
                ExponentVector(e)
            )
        })?;
    }
    let minimal: Vec<[u32; 4]> = rows
        .iter()
        .filter(|r| r.minimal)
        .map(|r| r.exponent.0)
        .collect();
    ensure(minimal == LEADING_EXPONENTS, || {
        format!("minimal rows {minimal:?}")
    })
}

fn leading_coefficients(certifier: &std::result::Result<Certifier, Error>) -> Check {
    // Certifier::new cross-checks both coefficients as polynomials
    certifier.as_ref().map(|_| ()).map_err(|e| e.to_string())
}

fn reference_certificate(certifier: &std::result::Result<Certifier, Error>) -> Check {
    let certifier = certifier.as_ref().map_err(|e| e.to_string())?;
    let p = ParamPoint::schiemann();
    let cert = certifier.certify(&p).map_err(|e| e.to_string())?;
    ensure(
        cert.min_exponent == Some(rat(144))
            && cert.total == Some(rat(-1008))
            && cert.verdict == Verdict::NonIsometric,
        || {
            format!(
                "min exponent {:?}, total {:?}, {:?}",
                cert.min_exponent, cert.total, cert.verdict
            )
        },
    )
}

fn psi_properties(budget: u32) -> Check {
    let f = family();
    let shell = f.l1.enumerate(budget);
    let p = ParamPoint::schiemann();
    for v in &shell {
        let w = f.psi(v).map_err(|e| e.to_string())?;
        ensure(f.l2.contains(&w), || format!("Ψ{v} = {w} is not in L2"))?;
        ensure(w.norm2(&p) == v.norm2(&p), || {
            format!("Ψ changes the norm of {v}")
        })?;
        let back = f.psi_inv(&w).map_err(|e| e.to_string())?;
        ensure(back == *v, || format!("Φ(Ψ{v}) = {back}"))?;
    }
    ensure(
        f.psi_nonadditivity_witness(budget.min(24)).is_some(),
        || "Ψ is additive on the shell".into(),
    )
}

/// Runs every check at `budget`, which must be at least [`SOUND_BUDGET`].
pub fn run_all(budget: u32) -> Result<Vec<AnchorResult>> {
    if budget < SOUND_BUDGET {
        return Err(Error::InsufficientBudget {
            required: SOUND_BUDGET,
            got: budget,
        });
    }
    let certifier = Certifier::new(budget);
    Ok(vec![
        AnchorResult::from_check("code-census", code_census()),
        AnchorResult::from_check("k4-orbits", k4_orbits()),
        AnchorResult::from_check("intersection-graph", intersection_graph_check()),
        AnchorResult::from_check("basis-change", basis_change()),
        AnchorResult::from_check("lattice-indices", lattice_indices()),
        AnchorResult::from_check("conway-sloane-generators", conway_sloane()),
        AnchorResult::from_check("kernel-identity", kernel_identity()),
        AnchorResult::from_check("class-relations", relations()),
        AnchorResult::from_check("delta-decomposition", decomposition(budget)),
        AnchorResult::from_check("minimal-vectors", minimal_vector_table(budget)),
        AnchorResult::from_check("minimal-pairs", minimal_pair_rows(budget)),
        AnchorResult::from_check("leading-coefficients", leading_coefficients(&certifier)),
        AnchorResult::from_check("reference-certificate", reference_certificate(&certifier)),
        AnchorResult::from_check("psi-bijection", psi_properties(budget)),
    ])
}
