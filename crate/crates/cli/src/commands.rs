use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;
use tetralattice::arith::{format_rational, parse_rational, ParamPoint};
use tetralattice::codes::{
    all_selfdual_codes, intersection_graph, is_complete_bipartite, orbit_partition,
};
use tetralattice::discrepancy::{delta_series, Certificate, Certifier, DeltaRoute, Verdict};
use tetralattice::lattice::{family, Lattice};
use tetralattice::theta::{rep_series, theta11, PairKernel};
use tetralattice::verify::run_all;

use crate::args::{
    Cli, CodesAction, Command, Format, GlobalArgs, KernelArg, LatticeName, PairAction, RouteArg,
};
use crate::render::{self, series_csv, series_rows, series_text, SeriesRow};

pub struct Outcome {
    pub body: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(body: String) -> Outcome {
        Outcome { body, exit: 0 }
    }
}

fn params(g: &GlobalArgs) -> Result<ParamPoint> {
    match &g.params {
        None => Ok(ParamPoint::schiemann()),
        Some(raw) => {
            let values = raw
                .iter()
                .map(|s| parse_rational(s))
                .collect::<tetralattice::Result<Vec<_>>>()?;
            Ok(ParamPoint::from_slice(&values)?)
        }
    }
}

fn lattice(name: LatticeName) -> &'static Lattice {
    let f = family();
    match name {
        LatticeName::L => &f.l,
        LatticeName::L1 => &f.l1,
        LatticeName::L2 => &f.l2,
        LatticeName::L12 => &f.l12,
        LatticeName::M => &f.m,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let fmt = g.format();
    match &cli.command {
        Command::Codes {
            action: CodesAction::List,
        } => codes_list(fmt),
        Command::Codes {
            action: CodesAction::Graph,
        } => codes_graph(fmt),
        Command::Pair {
            action: PairAction::Show { lattice },
        } => pair_show(fmt, *lattice),
        Command::Spectrum { lattice: name } => {
            let p = params(g)?;
            let rows = series_rows(&rep_series(lattice(*name), g.budget).collapse(&p));
            series_output(fmt, Some(name.as_str()), &p, g.budget, &rows)
        }
        Command::Isospectral => isospectral(fmt, &params(g)?, g.budget),
        Command::Invariant {
            lattice: name,
            kernel,
        } => {
            let p = params(g)?;
            let kind = match kernel {
                KernelArg::Defining => PairKernel::Defining,
                KernelArg::Pairwise => PairKernel::Pairwise,
            };
            let rows = series_rows(&theta11(lattice(*name), g.budget, kind).collapse(&p));
            series_output(fmt, Some(name.as_str()), &p, g.budget, &rows)
        }
        Command::Delta { route, symbolic } => {
            let route = match route {
                RouteArg::Theta => DeltaRoute::FromTheta,
                RouteArg::Psi => DeltaRoute::FromPsiKernel,
            };
            let delta = delta_series(g.budget, route);
            if *symbolic {
                symbolic_output(fmt, g.budget, &delta)
            } else {
                let p = params(g)?;
                series_output(fmt, None, &p, g.budget, &series_rows(&delta.collapse(&p)))
            }
        }
        Command::Certify => {
            let p = params(g)?;
            let cert = Certifier::new(g.budget)?.certify(&p)?;
            certificate_output(fmt, &cert)
        }
        Command::Verify => verify(fmt, g.budget),
    }
}

fn code_name(i: usize) -> String {
    format!("C{}", i + 1)
}

fn codes_list(fmt: Format) -> Result<Outcome> {
    let codes = all_selfdual_codes();
    let orbits = orbit_partition(&codes);
    let orbit_of = |i: usize| {
        orbits
            .iter()
            .position(|o| o.contains(&i))
            .map_or(0, |k| k + 1)
    };
    let body = match fmt {
        Format::Json => {
            let list: Vec<_> = codes
                .iter()
                .enumerate()
                .map(|(i, c)| json!({"name": code_name(i), "generators": c.generators(), "orbit": orbit_of(i)}))
                .collect();
            let orbit_names: Vec<Vec<String>> = orbits
                .iter()
                .map(|o| o.iter().map(|&i| code_name(i)).collect())
                .collect();
            render::json(&json!({"codes": list, "orbits": orbit_names}))?
        }
        Format::Csv => render::csv(
            &["code", "generator_1", "generator_2", "orbit"],
            codes.iter().enumerate().map(|(i, c)| {
                let [x, y] = c.generators();
                vec![
                    code_name(i),
                    x.to_string(),
                    y.to_string(),
                    orbit_of(i).to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s: String = codes
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{} {} orbit {}\n", code_name(i), c, orbit_of(i)))
                .collect();
            for (k, o) in orbits.iter().enumerate() {
                let names: Vec<String> = o.iter().map(|&i| code_name(i)).collect();
                s += &format!("orbit {}: {}\n", k + 1, names.join(" "));
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn codes_graph(fmt: Format) -> Result<Outcome> {
    let codes = all_selfdual_codes();
    let orbits = orbit_partition(&codes);
    let edges = intersection_graph(&codes);
    let bipartite = orbits.len() == 2 && is_complete_bipartite(&edges, &orbits[0], &orbits[1]);
    let named: Vec<[String; 2]> = edges
        .iter()
        .map(|&(i, j)| [code_name(i), code_name(j)])
        .collect();
    let body = match fmt {
        Format::Json => render::json(
            &json!({"edges": edges.len(), "bipartite": bipartite, "edge_list": named}),
        )?,
        Format::Csv => render::csv(&["left", "right"], named.iter().map(|e| e.to_vec()))?,
        Format::Text => {
            let mut s = format!("{} edges, complete bipartite: {bipartite}\n", edges.len());
            for [x, y] in &named {
                s += &format!("{x} -- {y}\n");
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    lattice: &'a str,
    generators: [[i64; 4]; 4],
    hnf: [[i64; 4]; 4],
}

const ALL_LATTICES: [LatticeName; 5] = [
    LatticeName::L,
    LatticeName::L1,
    LatticeName::L2,
    LatticeName::L12,
    LatticeName::M,
];

fn pair_show(fmt: Format, only: Option<LatticeName>) -> Result<Outcome> {
    let names: Vec<LatticeName> = only.map_or_else(|| ALL_LATTICES.to_vec(), |n| vec![n]);
    let entries: Vec<LatticeJson> = names
        .iter()
        .map(|&n| LatticeJson {
            lattice: n.as_str(),
            generators: *lattice(n).generators(),
            hnf: *lattice(n).hnf(),
        })
        .collect();
    let body = match fmt {
        Format::Json => match only {
            Some(_) => render::json(&entries[0])?,
            None => render::json(&entries)?,
        },
        Format::Csv => {
            let mut rows = Vec::new();
            for e in &entries {
                for (kind, m) in [("generators", &e.generators), ("hnf", &e.hnf)] {
                    for (r, row) in m.iter().enumerate() {
                        let mut cells =
                            vec![e.lattice.to_string(), kind.to_string(), r.to_string()];
                        cells.extend(row.iter().map(|x| x.to_string()));
                        rows.push(cells);
                    }
                }
            }
            render::csv(&["lattice", "matrix", "row", "c0", "c1", "c2", "c3"], rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                s += &format!(
                    "{} (det {})\ngenerators (columns):\n",
                    e.lattice,
                    lattice_det(e.lattice)
                );
                s += &render::matrix_text(&e.generators);
                s += "hnf:\n";
                s += &render::matrix_text(&e.hnf);
            }
            if only.is_none() {
                let f = family();
                for (sub, sup) in [
                    (&f.l1, &f.l),
                    (&f.l2, &f.l),
                    (&f.l12, &f.l1),
                    (&f.l12, &f.l2),
                    (&f.m, &f.l12),
                ] {
                    let idx = sub.index_in(sup).map_or("-".to_string(), |i| i.to_string());
                    s += &format!("[{}:{}] = {idx}\n", sup.name(), sub.name());
                }
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn lattice_det(name: &str) -> i64 {
    family().lattice(name).map_or(0, Lattice::det)
}

fn series_output(
    fmt: Format,
    name: Option<&str>,
    p: &ParamPoint,
    budget: u32,
    rows: &[SeriesRow],
) -> Result<Outcome> {
    let body = match fmt {
        Format::Json => {
            let mut obj = json!({"params": p, "budget": budget, "series": rows});
            if let Some(n) = name {
                obj["lattice"] = json!(n);
            }
            render::json(&obj)?
        }
        Format::Csv => series_csv(rows)?,
        Format::Text => series_text(rows),
    };
    Ok(Outcome::ok(body))
}

fn isospectral(fmt: Format, p: &ParamPoint, budget: u32) -> Result<Outcome> {
    let f = family();
    let s1 = rep_series(&f.l1, budget).collapse(p);
    let s2 = rep_series(&f.l2, budget).collapse(p);
    let equal = s1 == s2;
    let first_difference = s1
        .iter()
        .zip(&s2)
        .find(|(x, y)| x != y)
        .map(|(x, _)| format_rational(&x.0))
        .or_else(|| (s1.len() != s2.len()).then(|| "length".to_string()));
    let body = match fmt {
        Format::Json => render::json(&json!({
            "params": p,
            "budget": budget,
            "isospectral": equal,
            "terms_compared": s1.len().max(s2.len()),
            "first_difference": first_difference,
        }))?,
        Format::Csv => render::csv(
            &["params", "budget", "isospectral", "terms_compared"],
            [vec![
                p.to_string(),
                budget.to_string(),
                equal.to_string(),
                s1.len().max(s2.len()).to_string(),
            ]],
        )?,
        Format::Text => format!(
            "L1 and L2 at {p}, budget {budget}: {} ({} terms)\n",
            if equal {
                "isospectral"
            } else {
                "NOT isospectral"
            },
            s1.len().max(s2.len())
        ),
    };
    Ok(Outcome {
        body,
        exit: if equal { 0 } else { 1 },
    })
}

fn symbolic_output(
    fmt: Format,
    budget: u32,
    delta: &tetralattice::arith::FormalQSeries,
) -> Result<Outcome> {
    let rows: Vec<(String, String)> = delta
        .terms()
        .map(|(e, poly)| (e.to_string(), poly.to_string()))
        .collect();
    let body = match fmt {
        Format::Json => {
            let terms: Vec<_> = delta
                .terms()
                .map(|(e, poly)| json!({"exponent_vector": e, "polynomial": poly.to_string()}))
                .collect();
            render::json(&json!({"budget": budget, "terms": terms}))?
        }
        Format::Csv => render::csv(
            &["exponent_vector", "polynomial"],
            rows.iter().map(|(e, p)| vec![e, p]),
        )?,
        Format::Text => rows.iter().map(|(e, p)| format!("{e} {p}\n")).collect(),
    };
    Ok(Outcome::ok(body))
}

fn opt_rational(x: &Option<tetralattice::arith::Rational>) -> String {
    x.as_ref().map_or("-".to_string(), format_rational)
}

fn certificate_output(fmt: Format, cert: &Certificate) -> Result<Outcome> {
    let body = match fmt {
        Format::Json => render::json(cert)?,
        Format::Csv => render::csv(
            &["exponent_vector", "polynomial", "value"],
            cert.terms.iter().map(|t| {
                vec![
                    t.exponent_vector.to_string(),
                    t.polynomial.to_string(),
                    format_rational(&t.value),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = format!("params        {}\n", cert.params);
            s += &format!("sorted        {}\n", cert.sorted_params);
            s += &format!("budget        {}\n", cert.budget);
            s += &format!("min exponent  {}\n", opt_rational(&cert.min_exponent));
            for t in &cert.terms {
                s += &format!(
                    "term          {}  {}  = {}\n",
                    t.exponent_vector,
                    t.polynomial,
                    format_rational(&t.value)
                );
            }
            s += &format!("total         {}\n", opt_rational(&cert.total));
            s += &format!("verdict       {:?}\n", cert.verdict);
            s
        }
    };
    let exit = match cert.verdict {
        Verdict::NonIsometric => 0,
        Verdict::Inconclusive => 2,
    };
    Ok(Outcome { body, exit })
}

fn verify(fmt: Format, budget: u32) -> Result<Outcome> {
    let results = run_all(budget)?;
    let body = match fmt {
        Format::Json => render::json(&results)?,
        Format::Csv => render::csv(
            &["anchor", "status", "witness"],
            results.iter().map(|r| {
                let status = if r.passed() { "pass" } else { "fail" };
                vec![
                    r.anchor.to_string(),
                    status.to_string(),
                    r.witness.clone().unwrap_or_default(),
                ]
            }),
        )?,
        Format::Text => results
            .iter()
            .map(|r| match &r.witness {
                None => format!("PASS {}\n", r.anchor),
                Some(w) => format!("FAIL {}: {w}\n", r.anchor),
            })
            .collect(),
    };
    if let Some(first) = results.iter().find(|r| !r.passed()) {
        eprintln!("first failing check: {}", first.anchor);
        return Ok(Outcome { body, exit: 1 });
    }
    if results.is_empty() {
        bail!("no checks were run");
    }
    Ok(Outcome::ok(body))
}
