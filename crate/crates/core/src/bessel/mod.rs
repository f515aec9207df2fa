//! Fourier coefficients `Hom_N(V, C_{a,b,c})` and Bessel models
//! `Hom_R(V, C_{chi,a,b,c})` of the irreducible representations of `GSp(4, q)`.

mod hom;
pub mod lemmas;
pub mod tables;
mod verify;

use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::ffield::Elem;
use crate::gsp4::{BesselDatum, RankClass, TorusCharacter};
use crate::Result;

pub use hom::{BesselContext, BesselModel};
pub use verify::{
    sweep_r, verify_canonical_forms, verify_corollary, verify_group, verify_lemmas, verify_table_n, verify_table_r,
    verify_types, CheckResult, SuiteReport,
};

/// `Hom_N` dimensions of one irreducible at the four datum classes.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RowN {
    pub row: usize,
    pub degree: u64,
    pub dims: [u64; 4],
    pub generic: bool,
    pub cuspidal: bool,
    /// Symbolic families whose instantiation has the same key.
    pub matches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomDimReportN {
    pub q: u32,
    pub columns: [RankClass; 4],
    /// The datum `(a, b, c)` (element indices) used for each column.
    pub data: [[u32; 3]; 4],
    pub rows: Vec<RowN>,
}

/// `Hom_R` dimension for one irreducible and one character of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecordR {
    pub row: usize,
    pub degree: u64,
    pub character: TorusCharacter,
    /// `chi|_Z` equals the central character of the row.
    pub central_match: bool,
    pub dim: u64,
    /// `S_1` and `S_2` as `[numerator, denominator]`.
    pub s1: [i64; 2],
    pub s2: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomDimReportR {
    pub q: u32,
    pub datum: BesselDatum,
    pub torus_order: u64,
    /// `dim Hom_N` of each row at the same datum.
    pub dims_n: Vec<u64>,
    pub records: Vec<RecordR>,
}

impl HomDimReportR {
    pub fn dim(&self, row: usize, chi: TorusCharacter) -> Option<u64> {
        self.records.iter().find(|r| r.row == row && r.character == chi).map(|r| r.dim)
    }
}

/// First datum of each class, in the index order of `(a, b, c)`.
pub fn representative_data(ctx: &BesselContext) -> [BesselDatum; 4] {
    let g = ctx.group();
    let all = g.all_data();
    RankClass::all(g.field().is_even()).map(|rc| *all.iter().find(|d| d.rank_class == rc).expect("every class occurs"))
}

pub fn report_n(ctx: &BesselContext) -> Result<HomDimReportN> {
    let f = ctx.field();
    let ct = ctx.table();
    let data = representative_data(ctx);
    let per_datum = data.iter().map(|d| ctx.hom_dims_n(d.a, d.b, d.c)).collect::<Result<Vec<_>>>()?;
    let generic = ctx.generic_flags()?;
    let cuspidal = ctx.cuspidal_flags()?;
    let rows = (0..ct.len())
        .map(|row| {
            let dims = [per_datum[0][row], per_datum[1][row], per_datum[2][row], per_datum[3][row]];
            let key = (ct.degree(row), dims, cuspidal[row], generic[row]);
            RowN {
                row,
                degree: ct.degree(row),
                dims,
                generic: generic[row],
                cuspidal: cuspidal[row],
                matches: tables::matching_rows(f.is_even(), f.order() as i64, key)
                    .into_iter()
                    .map(String::from)
                    .collect(),
            }
        })
        .collect();
    Ok(HomDimReportN {
        q: f.order(),
        columns: data.map(|d| d.rank_class),
        data: data.map(|d| [d.a.0 as u32, d.b.0 as u32, d.c.0 as u32]),
        rows,
    })
}

/// Every `Hom_R` dimension at one nondegenerate datum.
pub fn report_r(ctx: &BesselContext, a: Elem, b: Elem, c: Elem) -> Result<HomDimReportR> {
    let g = ctx.group();
    let ct = ctx.table();
    let datum = g.classify_datum(a, b, c);
    let model = ctx.bessel_model(&datum)?;
    let dims_n = ctx.hom_dims_n(a, b, c)?;
    let mut records = Vec::new();
    for row in 0..ct.len() {
        for (chi, dim) in ctx.hom_dims_r(&model, row)? {
            let central_match = ctx.central_match(row, model.torus(), chi)?;
            let (s1, s2) = if central_match {
                (ctx.s1(&model, dims_n[row]), ctx.s2(&model, row, chi)?)
            } else {
                (Ratio::from_integer(0), Ratio::from_integer(0))
            };
            records.push(RecordR {
                row,
                degree: ct.degree(row),
                character: chi,
                central_match,
                dim,
                s1: [*s1.numer(), *s1.denom()],
                s2: [*s2.numer(), *s2.denom()],
            });
        }
    }
    Ok(HomDimReportR { q: g.q(), datum, torus_order: model.torus().len() as u64, dims_n, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::CharacterTable;
    use crate::conj::ClassData;
    use crate::ffield::Field;
    use crate::gsp4::{Gsp4, DEFAULT_ELEMENT_BUDGET};

    fn pipeline(p: u32) -> (ClassData, CharacterTable) {
        let g = Gsp4::new(Field::new(p, 1).unwrap());
        let cd = ClassData::compute(&g, DEFAULT_ELEMENT_BUDGET).unwrap();
        let ct = CharacterTable::compute(&cd).unwrap();
        (cd, ct)
    }

    fn assert_passed(rep: &SuiteReport) {
        assert!(rep.passed(), "{}: {:?}", rep.suite, rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn q2_suites() {
        let (cd, ct) = pipeline(2);
        let ctx = BesselContext::new(&cd, &ct).unwrap();
        let (tn, rep) = verify_table_n(&ctx).unwrap();
        assert_passed(&rep);
        let tn = tn.unwrap();
        assert_eq!(tn.rows.len(), 11);
        let r16 = tn.rows.iter().find(|r| r.degree == 16).unwrap();
        assert_eq!(r16.dims, [2, 2, 2, 2]);
        assert!(r16.generic && !r16.cuspidal);
        let sweep = sweep_r(&ctx).unwrap();
        assert_passed(&verify_table_r(&ctx, &tn, &sweep).unwrap());
        assert_passed(&verify_corollary(&ctx, &tn, &sweep));
        assert_passed(&verify_types(&cd).unwrap());
        assert_passed(&verify_group(&cd, &ct));
    }

    #[test]
    fn q3_suites() {
        let (cd, ct) = pipeline(3);
        let ctx = BesselContext::new(&cd, &ct).unwrap();
        let (tn, rep) = verify_table_n(&ctx).unwrap();
        assert_passed(&rep);
        let tn = tn.unwrap();
        assert!(tn.rows.iter().any(|r| r.degree == 81 && r.dims == [3, 3, 3, 3] && r.generic));
        for r in tn.rows.iter().filter(|r| r.cuspidal && !r.generic) {
            assert_eq!(r.degree, 6);
        }
        let sweep = sweep_r(&ctx).unwrap();
        assert_eq!(sweep.len(), 18);
        assert_passed(&verify_table_r(&ctx, &tn, &sweep).unwrap());
        assert_passed(&verify_corollary(&ctx, &tn, &sweep));
    }

    #[test]
    fn q3_split_sum_rule() {
        let (cd, ct) = pipeline(3);
        let ctx = BesselContext::new(&cd, &ct).unwrap();
        let f = ctx.field().clone();
        let rep = report_r(&ctx, Elem::ZERO, Elem::ONE, Elem::ZERO).unwrap();
        assert!(rep.datum.split());
        assert_eq!(rep.torus_order, 4);
        for chi in rep.records.iter().map(|r| r.character).collect::<alloc::collections::BTreeSet<_>>() {
            let total: u64 = rep.records.iter().filter(|r| r.character == chi).map(|r| r.degree * r.dim).sum();
            assert_eq!(total, 960);
        }
        let err = report_r(&ctx, Elem::ZERO, Elem::ZERO, Elem::ZERO);
        assert!(err.is_err());
        let nonsplit = report_r(&ctx, Elem::ONE, Elem::ZERO, f.from_int(1)).unwrap();
        assert_eq!(nonsplit.torus_order, 8);
    }
}
