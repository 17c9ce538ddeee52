use anyhow::Result;
use serde::Serialize;
use tetralattice::arith::{format_rational, Rational};

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<S: AsRef<str>>(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<S>>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|s| s.as_ref()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
pub struct SeriesRow {
    pub exponent: String,
    pub coefficient: String,
}

pub fn series_rows(collapsed: &[(Rational, Rational)]) -> Vec<SeriesRow> {
    collapsed
        .iter()
        .map(|(e, c)| SeriesRow {
            exponent: format_rational(e),
            coefficient: format_rational(c),
        })
        .collect()
}

pub fn series_csv(rows: &[SeriesRow]) -> Result<String> {
    csv(
        &["exponent", "coefficient"],
        rows.iter()
            .map(|r| vec![r.exponent.as_str(), r.coefficient.as_str()]),
    )
}

pub fn series_text(rows: &[SeriesRow]) -> String {
    rows.iter()
        .map(|r| format!("{} {}\n", r.exponent, r.coefficient))
        .collect()
}

pub fn matrix_text(m: &[[i64; 4]; 4]) -> String {
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            format!("  {}\n", cells.join(""))
        })
        .collect()
}
