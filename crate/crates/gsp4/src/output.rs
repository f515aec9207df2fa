//! JSON, CSV and plain-text renderings of the reports, and parsers for the
//! JSON and CSV forms.
//!
//! CSV files have a header row, are UTF-8 with LF line endings, and use the
//! fixed columns of [`CsvRowN`], [`CsvRowR`], [`CsvCheck`] and
//! [`CsvDegree`]. Field elements appear as integer indices; JSON envelopes
//! also carry the polynomial rendering of every index.

use std::fmt::Write as _;

use anyhow::{bail, Context};
use gsp4_core::bessel::{HomDimReportN, HomDimReportR, SuiteReport};
use gsp4_core::ffield::{Elem, Field, FieldRecord};
use gsp4_core::gsp4::TorusCharacter;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// `index -> polynomial` for one field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementName {
    pub index: u32,
    pub poly: String,
}

/// Every JSON output: the field and its element names, then the payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub q: u32,
    pub field: FieldRecord,
    pub elements: Vec<ElementName>,
    pub report: T,
}

impl<T> Envelope<T> {
    pub fn new(f: &Field, report: T) -> Envelope<T> {
        let elements = f.elements().map(|x| ElementName { index: x.0 as u32, poly: f.render(x) }).collect();
        Envelope { q: f.order(), field: f.record(), elements, report }
    }
}

/// Summary printed by `chartab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartabSummary {
    pub classes: usize,
    pub irreducibles: usize,
    pub group_order: u64,
    pub conductor: u32,
    /// The prime `l` of the modular Dixon–Schneider step.
    pub prime: u64,
    /// `(degree, multiplicity)`, ascending.
    pub degrees: Vec<(u64, usize)>,
    pub conjugation_samples: usize,
    /// Cache file, when caching is enabled.
    pub cache: Option<String>,
}

pub fn to_json<T: Serialize>(f: &Field, report: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope::new(f, report))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json<T: DeserializeOwned>(s: &str) -> anyhow::Result<Envelope<T>> {
    Ok(serde_json::from_str(s)?)
}

/// One line of the `Hom_N` CSV. `dim0..dim3` follow the `columns` of the
/// report (rank 0, rank 1, then the two rank-2 classes); `matches` is
/// `;`-separated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRowN {
    pub row: usize,
    pub degree: u64,
    pub dim0: u64,
    pub dim1: u64,
    pub dim2: u64,
    pub dim3: u64,
    pub generic: bool,
    pub cuspidal: bool,
    pub matches: String,
}

/// One line of the `Hom_R` CSV; `s1`, `s2` are reduced fractions `n/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRowR {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub class: String,
    pub row: usize,
    pub degree: u64,
    pub character: String,
    pub central_match: bool,
    pub dim: u64,
    pub dim_n: u64,
    pub s1: String,
    pub s2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvCheck {
    pub suite: String,
    pub q: u32,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvDegree {
    pub row: usize,
    pub degree: u64,
}

pub fn rows_n(r: &HomDimReportN) -> Vec<CsvRowN> {
    r.rows
        .iter()
        .map(|x| CsvRowN {
            row: x.row,
            degree: x.degree,
            dim0: x.dims[0],
            dim1: x.dims[1],
            dim2: x.dims[2],
            dim3: x.dims[3],
            generic: x.generic,
            cuspidal: x.cuspidal,
            matches: x.matches.join(";"),
        })
        .collect()
}

fn fraction(x: [i64; 2]) -> String {
    if x[1] == 1 {
        x[0].to_string()
    } else {
        format!("{}/{}", x[0], x[1])
    }
}

pub fn rows_r(reports: &[HomDimReportR]) -> Vec<CsvRowR> {
    let mut out = Vec::new();
    for r in reports {
        for x in &r.records {
            out.push(CsvRowR {
                a: r.datum.a.0 as u32,
                b: r.datum.b.0 as u32,
                c: r.datum.c.0 as u32,
                class: r.datum.rank_class.name().into(),
                row: x.row,
                degree: x.degree,
                character: character_label(x.character),
                central_match: x.central_match,
                dim: x.dim,
                dim_n: r.dims_n[x.row],
                s1: fraction(x.s1),
                s2: fraction(x.s2),
            });
        }
    }
    out
}

pub fn rows_checks(reports: &[SuiteReport]) -> Vec<CsvCheck> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(|c| CsvCheck {
                suite: r.suite.clone(),
                q: r.q,
                check: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
        })
        .collect()
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn parse_csv<T: DeserializeOwned>(s: &str) -> anyhow::Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    r.deserialize().map(|x| x.map_err(anyhow::Error::from)).collect()
}

/// `split:i:j`, `nonsplit:i` or `even:k:j`.
pub fn character_label(chi: TorusCharacter) -> String {
    match chi {
        TorusCharacter::Split { plus, minus } => format!("split:{plus}:{minus}"),
        TorusCharacter::Nonsplit { index } => format!("nonsplit:{index}"),
        TorusCharacter::EvenProduct { central, index } => format!("even:{central}:{index}"),
    }
}

pub fn parse_character(s: &str) -> anyhow::Result<TorusCharacter> {
    let parts: Vec<&str> = s.split(':').collect();
    let num =
        |i: usize| -> anyhow::Result<u32> { parts[i].parse().with_context(|| format!("bad character label {s:?}")) };
    Ok(match (parts[0], parts.len()) {
        ("split", 3) => TorusCharacter::Split { plus: num(1)?, minus: num(2)? },
        ("nonsplit", 2) => TorusCharacter::Nonsplit { index: num(1)? },
        ("even", 3) => TorusCharacter::EvenProduct { central: num(1)?, index: num(2)? },
        _ => bail!("bad character label {s:?}; expected split:i:j, nonsplit:i or even:k:j"),
    })
}

fn elem(f: &Field, i: u32) -> String {
    let x = Elem(i as u16);
    if f.degree() == 1 {
        i.to_string()
    } else {
        format!("{i}[{}]", f.render(x))
    }
}

pub fn text_chartab(f: &Field, s: &ChartabSummary) -> String {
    let mut out = String::new();
    let degrees: Vec<String> =
        s.degrees.iter().map(|&(d, m)| if m == 1 { d.to_string() } else { format!("{d}^{m}") }).collect();
    writeln!(out, "GSp(4, {}), |G| = {}", f.order(), s.group_order).unwrap();
    writeln!(out, "classes: {}", s.classes).unwrap();
    writeln!(out, "irreducibles: {}", s.irreducibles).unwrap();
    writeln!(out, "degrees: {}", degrees.join(" ")).unwrap();
    writeln!(out, "conductor: {}", s.conductor).unwrap();
    writeln!(out, "prime: {}", s.prime).unwrap();
    writeln!(out, "sampled conjugations: {}", s.conjugation_samples).unwrap();
    if let Some(path) = &s.cache {
        writeln!(out, "cache: {path}").unwrap();
    }
    out
}

pub fn text_n(f: &Field, r: &HomDimReportN) -> String {
    let mut out = String::new();
    writeln!(out, "Hom_N dimensions, q = {}", r.q).unwrap();
    for (col, d) in r.columns.iter().zip(&r.data) {
        writeln!(out, "  {:<18} (a, b, c) = ({}, {}, {})", col.name(), elem(f, d[0]), elem(f, d[1]), elem(f, d[2]))
            .unwrap();
    }
    writeln!(out, "{:>4} {:>7}  {:>15}  {:>4} {:>4}  matches", "row", "degree", "dims", "gen", "cusp").unwrap();
    for x in &r.rows {
        let dims = format!("{:?}", x.dims);
        let flag = |b: bool| if b { "yes" } else { "-" };
        writeln!(
            out,
            "{:>4} {:>7}  {:>15}  {:>4} {:>4}  {}",
            x.row,
            x.degree,
            dims,
            flag(x.generic),
            flag(x.cuspidal),
            x.matches.join(", ")
        )
        .unwrap();
    }
    out
}

pub fn text_r(f: &Field, reports: &[HomDimReportR]) -> String {
    let mut out = String::new();
    for r in reports {
        let d = &r.datum;
        writeln!(
            out,
            "Hom_R dimensions, q = {}, (a, b, c) = ({}, {}, {}), {}, |T| = {}",
            r.q,
            elem(f, d.a.0 as u32),
            elem(f, d.b.0 as u32),
            elem(f, d.c.0 as u32),
            d.rank_class.name(),
            r.torus_order
        )
        .unwrap();
        writeln!(
            out,
            "{:>4} {:>7} {:>16} {:>4} {:>6}  {:>8} {:>8}",
            "row", "degree", "chi", "dim", "Hom_N", "S1", "S2"
        )
        .unwrap();
        for x in r.records.iter().filter(|x| x.central_match) {
            writeln!(
                out,
                "{:>4} {:>7} {:>16} {:>4} {:>6}  {:>8} {:>8}",
                x.row,
                x.degree,
                character_label(x.character),
                x.dim,
                r.dims_n[x.row],
                fraction(x.s1),
                fraction(x.s2)
            )
            .unwrap();
        }
    }
    out
}

pub fn text_checks(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for c in &r.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{mark} q={} {}: {}: {}", r.q, r.suite, c.name, c.detail).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_labels_round_trip() {
        for chi in [
            TorusCharacter::Split { plus: 1, minus: 0 },
            TorusCharacter::Nonsplit { index: 7 },
            TorusCharacter::EvenProduct { central: 2, index: 3 },
        ] {
            assert_eq!(parse_character(&character_label(chi)).unwrap(), chi);
        }
        assert!(parse_character("split:1").is_err());
        assert!(parse_character("odd:1").is_err());
    }

    #[test]
    fn csv_uses_lf_and_header() {
        let rows = vec![CsvDegree { row: 0, degree: 1 }, CsvDegree { row: 1, degree: 6 }];
        let s = to_csv(&rows).unwrap();
        assert_eq!(s, "row,degree\n0,1\n1,6\n");
        assert_eq!(parse_csv::<CsvDegree>(&s).unwrap(), rows);
    }
}
