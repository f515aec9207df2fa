use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lemmas::{artin_schreier_image_size, check_all_triples, norm_one_count};
use super::tables::{symbolic_rows, SymbolicRow};
use super::{report_n, report_r, representative_data, BesselContext, HomDimReportN, HomDimReportR};
use crate::chartab::CharacterTable;
use crate::conj::{
    canonical_form_2x2, exhaustive_orbits, n_orbit_representative, tn_type, ClassData, Orbit2x2, TnFamily, TnType,
};
use crate::ffield::{Elem, Field};
use crate::gsp4::{group_order, GroupKind, TorusCharacter};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuiteReport {
    pub suite: String,
    pub q: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str, q: u32) -> SuiteReport {
        SuiteReport { suite: suite.into(), q, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, outcome: core::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult { name: name.into(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Group order against the formula, and the character table against both
/// orthogonality relations and `sum deg^2 = |G|`.
pub fn verify_group(cd: &ClassData, ct: &CharacterTable) -> SuiteReport {
    let q = cd.group().q();
    let mut rep = SuiteReport::new("group", q);
    let expected = group_order(q as u64, GroupKind::Full);
    let order = cd.group_order();
    rep.push(
        "group order",
        if order == expected { Ok(format!("{order}")) } else { Err(format!("{order} != {expected}")) },
    );
    rep.push(
        "class sizes sum to |G|",
        if cd.sizes().iter().sum::<u64>() == order {
            Ok(format!("{} classes", cd.len()))
        } else {
            Err("size mismatch".into())
        },
    );
    rep.push(
        "table matches the classes",
        if ct.classes() == &cd.summary() && ct.group_order() == order {
            Ok(format!("{} irreducibles", ct.len()))
        } else {
            Err("class data and table disagree".into())
        },
    );
    let sum_sq: u64 = ct.degrees().iter().map(|d| d * d).sum();
    rep.push(
        "sum of squared degrees",
        if sum_sq == order { Ok(format!("{sum_sq}")) } else { Err(format!("{sum_sq} != {order}")) },
    );
    rep.push("orthogonality", ct.verify().map(|_| "rows and columns".to_string()).map_err(|e| e.to_string()));
    rep
}

/// Closed-form sums against brute force, plus the two counting facts they use.
pub fn verify_lemmas(f: &Field) -> Result<SuiteReport> {
    let q = f.order();
    let mut rep = SuiteReport::new("lemmas", q);
    rep.push(
        "closed forms match brute force",
        match check_all_triples(f)? {
            Ok(n) => Ok(format!("{n} comparisons over {} triples", q.pow(3))),
            Err(m) => Err(format!("{m:?}")),
        },
    );
    if f.is_even() {
        let n = artin_schreier_image_size(f)?;
        let stored = f.q_circle().len() as u64;
        let ok = n == (q / 2) as u64 && stored == n;
        rep.push(
            "|F_q°| = q/2",
            if ok { Ok(format!("{n}")) } else { Err(format!("image has {n} elements, stored set {stored}")) },
        );
    } else {
        let n = norm_one_count(f)?;
        rep.push(
            "y^2 - xi x^2 = 1 has q + 1 solutions",
            if n == q as u64 + 1 { Ok(format!("{n}")) } else { Err(format!("{n} solutions")) },
        );
    }
    Ok(rep)
}

/// The `u A X (A')^-1` orbits on `(x, y, z)`, computed exhaustively.
pub fn verify_canonical_forms(f: &Field) -> SuiteReport {
    let q = f.order() as usize;
    let mut rep = SuiteReport::new("canonical-forms", q as u32);
    let orbits = exhaustive_orbits(f);
    let e = |v: usize| Elem(v as u16);
    let label = |k: usize| canonical_form_2x2(f, e(k / (q * q)), e(k / q % q), e(k % q));
    let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    rep.push(
        "four orbits",
        if orbits.len() == 4 {
            Ok(format!("sizes {sizes:?}"))
        } else {
            Err(format!("{} orbits, sizes {sizes:?}", orbits.len()))
        },
    );
    let mut labels = BTreeSet::new();
    let mut homogeneous = Ok(String::new());
    for orbit in &orbits {
        let first = label(orbit[0]);
        if let Some(&k) = orbit.iter().find(|&&k| label(k) != first) {
            homogeneous = Err(format!("orbit of {} contains {} with label {}", orbit[0], k, label(k).name()));
            break;
        }
        labels.insert(first);
    }
    rep.push("orbits have constant label", homogeneous.map(|_| format!("{} elements", f.order().pow(3))));
    let expected: BTreeSet<Orbit2x2> = Orbit2x2::all(f.is_even()).into_iter().collect();
    rep.push(
        "labels are the four classes",
        if labels == expected { Ok(format!("{labels:?}")) } else { Err(format!("found {labels:?}")) },
    );
    let mut reps = Ok("representatives lie in their orbits".to_string());
    for o in Orbit2x2::all(f.is_even()) {
        let (x, y, z) = n_orbit_representative(f, o);
        if canonical_form_2x2(f, x, y, z) != o {
            reps = Err(format!("representative of {} has another label", o.name()));
        }
    }
    rep.push("representatives", reps);
    rep
}

/// Labels from [`tn_type`] refine conjugacy: equal labels give one class and
/// different families never share a class. For even `q` classes are those of
/// `mu^(-1/2) t n` in `Sp(4, q)`.
pub fn verify_types(cd: &ClassData) -> Result<SuiteReport> {
    let g = cd.group();
    let f = g.field();
    let mut rep = SuiteReport::new("types", f.order());
    let mut label_class: BTreeMap<TnType, usize> = BTreeMap::new();
    let mut class_family: BTreeMap<usize, TnFamily> = BTreeMap::new();
    let mut same = Ok(());
    let mut distinct = Ok(());
    let mut checked = 0usize;
    for d in g.all_data().into_iter().filter(|d| d.is_nondegenerate()) {
        let torus = g.torus(&d)?;
        for t in torus.elements().iter().filter(|t| !t.s.is_zero()) {
            for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        let label = tn_type(&torus, t, x, y, z);
                        let TnType::Typed { family, .. } = label else { continue };
                        let h = g.mul(&t.element, &g.n(x, y, z));
                        let mut class = cd.class_of(&h).ok_or(crate::Error::NotInGroup)?;
                        if f.is_even() {
                            class = cd.split_index(class).0;
                        }
                        checked += 1;
                        let witness = || {
                            format!(
                                "datum ({}, {}, {}), t = ({}, {}), n = ({}, {}, {})",
                                d.a.0, d.b.0, d.c.0, t.r.0, t.s.0, x.0, y.0, z.0
                            )
                        };
                        if let Some(&c) = label_class.get(&label) {
                            if c != class && same.is_ok() {
                                same = Err(format!("{label:?} meets classes {c} and {class} at {}", witness()));
                            }
                        } else {
                            label_class.insert(label, class);
                        }
                        if let Some(&fam) = class_family.get(&class) {
                            if fam != family && distinct.is_ok() {
                                distinct = Err(format!(
                                    "class {class} has families {} and {} at {}",
                                    fam.name(),
                                    family.name(),
                                    witness()
                                ));
                            }
                        } else {
                            class_family.insert(class, family);
                        }
                    }
                }
            }
        }
    }
    rep.push("equal labels are conjugate", same.map(|_| format!("{checked} elements, {} labels", label_class.len())));
    rep.push("distinct families are not conjugate", distinct.map(|_| format!("{} classes met", class_family.len())));
    Ok(rep)
}

fn datum_str(a: Elem, b: Elem, c: Elem) -> String {
    format!("({}, {}, {})", a.0, b.0, c.0)
}

/// `Hom_N` table with its checks: both evaluation paths, constancy on datum
/// classes, choice of `psi` and `xi`, the induced-dimension sum rule, and the
/// match against the symbolic rows.
pub fn verify_table_n(ctx: &BesselContext) -> Result<(Option<HomDimReportN>, SuiteReport)> {
    let g = ctx.group();
    let f = ctx.field();
    let ct = ctx.table();
    let q = f.order() as u64;
    let mut rep = SuiteReport::new("table-n", q as u32);

    // integrality and Whittaker multiplicity one are enforced while building
    let report = match report_n(ctx) {
        Ok(r) => r,
        Err(e) => {
            rep.push("Hom_N table", Err(e.to_string()));
            return Ok((None, rep));
        }
    };
    rep.push(
        "Hom_N table",
        Ok(format!("{} rows, {} generic", report.rows.len(), report.rows.iter().filter(|r| r.generic).count())),
    );

    let data = g.all_data();
    let mut paths = Ok(());
    let mut constant = Ok(());
    let mut scaling = Ok(());
    let mut sum_rule = Ok(());
    let columns: BTreeMap<_, usize> = report.columns.iter().enumerate().map(|(i, rc)| (*rc, i)).collect();
    let target = ct.group_order() / q.pow(3);
    for d in &data {
        let dims = ctx.hom_dims_n(d.a, d.b, d.c)?;
        let col = columns[&d.rank_class];
        for row in 0..ct.len() {
            if paths.is_ok() {
                let by_orbits = ctx.hom_dim_n_by_orbits(row, f, d.a, d.b, d.c)?;
                if by_orbits != dims[row] {
                    paths = Err(format!(
                        "row {row}, datum {}: sum {} vs orbits {by_orbits}",
                        datum_str(d.a, d.b, d.c),
                        dims[row]
                    ));
                }
            }
            if constant.is_ok() && report.rows[row].dims[col] != dims[row] {
                constant =
                    Err(format!("row {row}: datum {} differs from its class representative", datum_str(d.a, d.b, d.c)));
            }
            if scaling.is_ok() {
                for lambda in f.units().skip(1) {
                    let v = ctx.hom_dim_n_scaled(row, d.a, d.b, d.c, lambda)?;
                    if v != dims[row] {
                        scaling = Err(format!(
                            "row {row}, datum {}, lambda {}: {v} vs {}",
                            datum_str(d.a, d.b, d.c),
                            lambda.0,
                            dims[row]
                        ));
                    }
                }
            }
        }
        let total: u64 = (0..ct.len()).map(|row| ct.degree(row) * dims[row]).sum();
        if total != target && sum_rule.is_ok() {
            sum_rule = Err(format!("datum {}: {total} != {target}", datum_str(d.a, d.b, d.c)));
        }
    }
    let n = data.len();
    rep.push("direct sum equals orbit decomposition", paths.map(|_| format!("{n} data")));
    rep.push("dimensions depend only on the datum class", constant.map(|_| format!("{n} data")));
    rep.push("independent of psi", scaling.map(|_| format!("{} scalings", q - 2)));
    rep.push("sum of deg * dim = |G| / q^3", sum_rule.map(|_| format!("{target}")));

    if !f.is_even() {
        let mut xi_check = Ok(0usize);
        for xi in f.units().filter(|&u| f.square_class(u).ok() == Some(crate::ffield::SquareClass::Nonsquare)) {
            let f2 = f.with_xi(xi)?;
            for d in &data {
                for row in 0..ct.len() {
                    let v = ctx.hom_dim_n_by_orbits(row, &f2, d.a, d.b, d.c)?;
                    let col = columns[&d.rank_class];
                    if v != report.rows[row].dims[col] {
                        xi_check = Err(format!("xi = {}, row {row}, datum {}", xi.0, datum_str(d.a, d.b, d.c)));
                    }
                }
            }
            if let Ok(k) = xi_check.as_mut() {
                *k += 1;
            }
        }
        rep.push("independent of xi", xi_check.map(|k| format!("{k} choices of xi")));
    }

    let unmatched: Vec<usize> = report.rows.iter().filter(|r| r.matches.is_empty()).map(|r| r.row).collect();
    rep.push(
        "every row matches a symbolic family",
        if unmatched.is_empty() {
            let ambiguous = report.rows.iter().filter(|r| r.matches.len() > 1).count();
            Ok(format!("{} rows, {ambiguous} with several candidate families", report.rows.len()))
        } else {
            let r = &report.rows[unmatched[0]];
            Err(format!(
                "row {}: degree {}, dims {:?}, cusp {}, gen {}",
                r.row, r.degree, r.dims, r.cuspidal, r.generic
            ))
        },
    );
    let trivial = ct.trivial_row().map(|t| &report.rows[t]);
    rep.push(
        "trivial representation",
        match trivial {
            Some(r) if r.dims == [1, 0, 0, 0] && !r.generic && !r.cuspidal => Ok("dims (1, 0, 0, 0)".into()),
            Some(r) => Err(format!("dims {:?}, gen {}, cusp {}", r.dims, r.generic, r.cuspidal)),
            None => Err("no trivial row".into()),
        },
    );
    Ok((Some(report), rep))
}

/// `Hom_R` reports for every nondegenerate datum.
pub fn sweep_r(ctx: &BesselContext) -> Result<Vec<HomDimReportR>> {
    ctx.group().all_data().into_iter().filter(|d| d.is_nondegenerate()).map(|d| report_r(ctx, d.a, d.b, d.c)).collect()
}

/// Index `j` of a character on `T cap Sp(4, q)` (even `q`); `0` otherwise.
fn sp_index(chi: TorusCharacter) -> u32 {
    match chi {
        TorusCharacter::EvenProduct { index, .. } => index,
        _ => 0,
    }
}

/// Isotypic completeness, the induced-dimension sum rule, `S_1 + S_2`,
/// independence of `psi`, and the parameter-free entries of the Bessel tables.
pub fn verify_table_r(ctx: &BesselContext, table_n: &HomDimReportN, sweep: &[HomDimReportR]) -> Result<SuiteReport> {
    let ct = ctx.table();
    let f = ctx.field();
    let q = f.order() as u64;
    let mut rep = SuiteReport::new("table-r", q as u32);
    let mut isotypic = Ok(());
    let mut sum_rule = Ok(());
    let mut s_paths = Ok(0usize);
    for r in sweep {
        let d = &r.datum;
        let ds = datum_str(d.a, d.b, d.c);
        for row in 0..ct.len() {
            let total: u64 = r.records.iter().filter(|x| x.row == row).map(|x| x.dim).sum();
            if total != r.dims_n[row] && isotypic.is_ok() {
                isotypic = Err(format!("row {row}, datum {ds}: sum over chi {total}, Hom_N {}", r.dims_n[row]));
            }
        }
        let target = ct.group_order() / (r.torus_order * q.pow(3));
        let mut per_chi: BTreeMap<TorusCharacter, u64> = BTreeMap::new();
        for x in &r.records {
            *per_chi.entry(x.character).or_insert(0) += x.degree * x.dim;
            if x.central_match {
                // s1 + s2 == dim as fractions
                let lhs = x.s1[0] as i128 * x.s2[1] as i128 + x.s2[0] as i128 * x.s1[1] as i128;
                let rhs = x.dim as i128 * x.s1[1] as i128 * x.s2[1] as i128;
                match s_paths.as_mut() {
                    Ok(k) if lhs == rhs => *k += 1,
                    Ok(_) => {
                        s_paths = Err(format!(
                            "row {}, datum {ds}, {:?}: S1 = {}/{}, S2 = {}/{}, dim {}",
                            x.row, x.character, x.s1[0], x.s1[1], x.s2[0], x.s2[1], x.dim
                        ))
                    }
                    Err(_) => {}
                }
            }
        }
        if let Some((chi, v)) = per_chi.iter().find(|(_, &v)| v != target) {
            if sum_rule.is_ok() {
                sum_rule = Err(format!("datum {ds}, {chi:?}: {v} != {target}"));
            }
        }
    }
    rep.push("sum over chi equals Hom_N", isotypic.map(|_| format!("{} data", sweep.len())));
    rep.push("sum of deg * dim = |G| / |R|", sum_rule.map(|_| "every datum and character".into()));
    rep.push("S1 + S2 equals the direct sum", s_paths.map(|k| format!("{k} pairs")));

    // psi -> psi(lambda .) at one datum per class
    let mut scaling = Ok(0usize);
    for d in representative_data(ctx).iter().filter(|d| d.is_nondegenerate()) {
        let base = ctx.bessel_model(d)?;
        for lambda in f.units().skip(1) {
            let scaled = ctx.bessel_model_scaled(d, lambda)?;
            for row in 0..ct.len() {
                let a = ctx.hom_dims_r(&base, row)?;
                let b = ctx.hom_dims_r(&scaled, row)?;
                match scaling.as_mut() {
                    Ok(k) if a == b => *k += 1,
                    Ok(_) => {
                        scaling = Err(format!("row {row}, datum {}, lambda {}", datum_str(d.a, d.b, d.c), lambda.0))
                    }
                    Err(_) => {}
                }
            }
        }
    }
    rep.push("independent of psi", scaling.map(|k| format!("{k} rows compared")));

    // entries that do not depend on family parameters
    let rows = symbolic_rows(f.is_even());
    let find = |name: &str| -> Option<&SymbolicRow> { rows.iter().find(|r| r.name == name) };
    let mut literal = Ok((0usize, 0usize));
    for r in sweep {
        let col = if r.datum.split() { 0 } else { 1 };
        for rn in &table_n.rows {
            let candidates: Vec<&SymbolicRow> = rn.matches.iter().filter_map(|m| find(m)).collect();
            if candidates.is_empty() || candidates.iter().any(|c| c.bessel[col].is_none()) {
                if let Ok((_, skipped)) = literal.as_mut() {
                    *skipped += 1;
                }
                continue;
            }
            let fits = |c: &&SymbolicRow| {
                let entry = c.bessel[col].unwrap();
                r.records
                    .iter()
                    .filter(|x| x.row == rn.row && x.central_match)
                    .all(|x| x.dim as i64 == entry.at(sp_index(x.character)))
            };
            match literal.as_mut() {
                Ok((checked, _)) if candidates.iter().any(fits) => *checked += 1,
                Ok(_) => {
                    literal = Err(format!(
                        "row {} ({}) at datum {}",
                        rn.row,
                        rn.matches.join("/"),
                        datum_str(r.datum.a, r.datum.b, r.datum.c)
                    ))
                }
                Err(_) => {}
            }
        }
    }
    rep.push(
        "parameter-free table entries",
        literal.map(|(c, s)| format!("{c} (row, datum) pairs checked, {s} depend on family parameters")),
    );
    Ok(rep)
}

/// Bounds on `dim Hom_R` by genericity and torus type, and the number of
/// characters with a one-dimensional space for nongeneric rows.
pub fn verify_corollary(ctx: &BesselContext, table_n: &HomDimReportN, sweep: &[HomDimReportR]) -> SuiteReport {
    let q = ctx.field().order();
    let mut rep = SuiteReport::new("corollary", q);
    let generic: Vec<bool> = table_n.rows.iter().map(|r| r.generic).collect();
    let mut bounds = Ok(());
    let mut at_most_two = Ok(());
    let mut two_chi_rows: [BTreeSet<usize>; 2] = [BTreeSet::new(), BTreeSet::new()];
    let mut attains_two: BTreeSet<usize> = BTreeSet::new();
    // rows missing some split model
    let mut misses_split: BTreeSet<usize> = BTreeSet::new();
    for r in sweep {
        let split = r.datum.split();
        let col = if split { 0 } else { 1 };
        let ds = datum_str(r.datum.a, r.datum.b, r.datum.c);
        let mut ones: BTreeMap<usize, usize> = BTreeMap::new();
        for x in r.records.iter().filter(|x| x.central_match) {
            let (lo, hi) = match (split, generic[x.row]) {
                (true, true) => (1, 2),
                _ => (0, 1),
            };
            if (x.dim < lo || x.dim > hi) && bounds.is_ok() {
                bounds =
                    Err(format!("row {}, datum {ds}, {:?}: dim {} outside [{lo}, {hi}]", x.row, x.character, x.dim));
            }
            if split && x.dim == 0 {
                misses_split.insert(x.row);
            }
            if x.dim == 2 {
                attains_two.insert(x.row);
            }
            if x.dim == 1 && !generic[x.row] {
                *ones.entry(x.row).or_insert(0) += 1;
            }
        }
        for (&row, &k) in &ones {
            if k > 2 && at_most_two.is_ok() {
                at_most_two = Err(format!("row {row}, datum {ds}: {k} characters"));
            }
            if k == 2 {
                two_chi_rows[col].insert(row);
            }
        }
    }
    rep.push("dimension bounds", bounds.map(|_| format!("{} data", sweep.len())));
    rep.push(
        "nongeneric rows have at most two characters",
        at_most_two.map(|_| format!("rows with two: split {:?}, nonsplit {:?}", two_chi_rows[0], two_chi_rows[1])),
    );
    rep.push(
        "upper bound 2 attained",
        if attains_two.is_empty() {
            Err("no dimension 2 found".into())
        } else {
            Ok(format!("{} rows: {:?}", attains_two.len(), attains_two))
        },
    );
    // generic rows never miss a split model (the bounds above); for q > 3
    // every nongeneric row must miss one
    let full_split: Vec<usize> = (0..generic.len()).filter(|&i| !generic[i] && !misses_split.contains(&i)).collect();
    let converse = if full_split.is_empty() {
        Ok("every nongeneric row misses some split model".into())
    } else if q > 3 {
        Err(format!("nongeneric rows with every split model: {full_split:?}"))
    } else {
        Ok(format!("not expected for q <= 3; nongeneric rows with every split model: {full_split:?}"))
    };
    rep.push("split models characterize genericity", converse);
    rep
}
