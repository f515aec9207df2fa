use std::collections::BTreeMap;

use anyhow::{bail, Context};
use gsp4_core::bessel::{
    report_n, report_r, verify_canonical_forms, verify_corollary, verify_group, verify_lemmas, verify_table_n,
    verify_table_r, verify_types, BesselContext, HomDimReportN, HomDimReportR, SuiteReport,
};
use gsp4_core::chartab::CharacterTable;
use gsp4_core::conj::ClassData;
use gsp4_core::ffield::{Elem, Field};
use gsp4_core::gsp4::{group_order, GroupKind, Gsp4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{load_or_build, CacheStatus};
use crate::config::{Command, Format, Model, RunConfig, Suite};
use crate::output::{self, ChartabSummary, CsvDegree};

/// Conjugations sampled by the `chartab` pre-pass.
pub const CONJUGATION_SAMPLES: usize = 256;

/// Rendered output and overall status of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
    /// Failing checks as JSON, for stderr.
    pub counterexample: Option<String>,
    /// Progress notes for stderr; kept out of `output` so reports stay
    /// byte-identical between runs.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { output, success: true, counterexample: None, notes: Vec::new() }
    }
}

/// Enumerates the group and its classes after checking the memory budget.
pub fn class_data(cfg: &RunConfig, f: &Field) -> anyhow::Result<ClassData> {
    let q = f.order() as u64;
    let kind = if f.is_even() { GroupKind::Symplectic } else { GroupKind::Full };
    let order = group_order(q, kind);
    let budget = cfg.element_budget();
    if order > budget {
        bail!(
            "enumerating GSp(4, {q}) needs {order} elements (about {} MiB) but the memory budget allows {budget}; \
             raise --mem-budget or pick a smaller q",
            (order * crate::config::BYTES_PER_ELEMENT) >> 20
        );
    }
    Ok(ClassData::compute(&Gsp4::new(f.clone()), budget)?)
}

/// Classes and character table, using the cache when configured.
pub fn pipeline(cfg: &RunConfig, f: &Field) -> anyhow::Result<(ClassData, CharacterTable, CacheStatus)> {
    let cd = class_data(cfg, f)?;
    let (ct, status) = load_or_build(cfg.cache.as_deref(), &cd)?;
    Ok((cd, ct, status))
}

/// Checks that conjugating class representatives by random group elements
/// stays in the class. Returns the number of samples.
pub fn sampled_conjugation_check(cd: &ClassData, seed: u64, samples: usize) -> anyhow::Result<usize> {
    let g = cd.group();
    let elements = cd.base().elements().packed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let h = g.unpack_element(elements[rng.gen_range(0..elements.len())]);
        let i = rng.gen_range(0..cd.len());
        let x = cd.representative(i);
        if cd.class_of(&g.conjugate(&h, &x)) != Some(i) {
            bail!("class {i} is not closed under conjugation");
        }
    }
    Ok(samples)
}

/// `Hom_R` reports at every given datum, in parallel, in input order.
pub fn sweep(ctx: &BesselContext, data: &[[Elem; 3]]) -> anyhow::Result<Vec<HomDimReportR>> {
    Ok(data.par_iter().map(|d| report_r(ctx, d[0], d[1], d[2])).collect::<gsp4_core::Result<Vec<_>>>()?)
}

fn nondegenerate_data(g: &Gsp4) -> Vec<[Elem; 3]> {
    g.all_data().into_iter().filter(|d| d.is_nondegenerate()).map(|d| [d.a, d.b, d.c]).collect()
}

fn render<T: Serialize>(
    cfg: &RunConfig,
    f: &Field,
    report: &T,
    csv: impl FnOnce() -> anyhow::Result<String>,
    text: impl FnOnce() -> String,
) -> anyhow::Result<String> {
    match cfg.format {
        Format::Json => output::to_json(f, report),
        Format::Csv => csv(),
        Format::Text => Ok(text()),
    }
}

fn elem(f: &Field, i: u32) -> anyhow::Result<Elem> {
    if i >= f.order() {
        bail!("element index {i} out of range for q = {}", f.order());
    }
    Ok(Elem(i as u16))
}

fn chartab(cfg: &RunConfig, f: &Field) -> anyhow::Result<Outcome> {
    let (cd, ct, status) = pipeline(cfg, f)?;
    let samples = sampled_conjugation_check(&cd, cfg.seed, CONJUGATION_SAMPLES)?;
    let mut degrees: BTreeMap<u64, usize> = BTreeMap::new();
    for &d in ct.degrees() {
        *degrees.entry(d).or_default() += 1;
    }
    let summary = ChartabSummary {
        classes: cd.len(),
        irreducibles: ct.len(),
        group_order: ct.group_order(),
        conductor: ct.conductor(),
        prime: ct.prime(),
        degrees: degrees.into_iter().collect(),
        conjugation_samples: samples,
        cache: status.path().map(|p| p.display().to_string()),
    };
    let rows: Vec<CsvDegree> =
        ct.degrees().iter().enumerate().map(|(row, &degree)| CsvDegree { row, degree }).collect();
    let mut outcome =
        Outcome::ok(render(cfg, f, &summary, || output::to_csv(&rows), || output::text_chartab(f, &summary))?);
    outcome.notes.push(format!("cache: {}", status.describe()));
    Ok(outcome)
}

fn table(
    cfg: &RunConfig,
    f: &Field,
    model: Model,
    datum: Option<[u32; 3]>,
    chi: Option<&str>,
) -> anyhow::Result<Outcome> {
    // check cheap preconditions before building anything
    let data = match (model, datum) {
        (Model::R, Some([a, b, c])) => {
            let (a, b, c) = (elem(f, a)?, elem(f, b)?, elem(f, c)?);
            let d = gsp4_core::gsp4::classify_datum(f, a, b, c);
            if !d.is_nondegenerate() {
                bail!(
                    "Bessel models need b^2 - 4ac != 0 (for even q, b != 0); ({}, {}, {}) is {}",
                    a.0,
                    b.0,
                    c.0,
                    d.rank_class.name()
                );
            }
            Some(vec![[a, b, c]])
        }
        (Model::R, None) => None,
        (Model::N, _) => {
            if chi.is_some() {
                bail!("--chi applies to --model R only");
            }
            None
        }
    };
    let chi = chi.map(output::parse_character).transpose()?;
    let (cd, ct, _) = pipeline(cfg, f)?;
    let ctx = BesselContext::new(&cd, &ct)?;
    match model {
        Model::N => {
            let r = report_n(&ctx)?;
            Ok(Outcome::ok(render(cfg, f, &r, || output::to_csv(&output::rows_n(&r)), || output::text_n(f, &r))?))
        }
        Model::R => {
            let data = data.unwrap_or_else(|| nondegenerate_data(ctx.group()));
            let mut reports = sweep(&ctx, &data)?;
            if let Some(chi) = chi {
                for r in &mut reports {
                    r.records.retain(|x| x.character == chi);
                }
                if reports.iter().all(|r| r.records.is_empty()) {
                    bail!("character {} does not occur at the requested data", output::character_label(chi));
                }
            }
            Ok(Outcome::ok(render(
                cfg,
                f,
                &reports,
                || output::to_csv(&output::rows_r(&reports)),
                || output::text_r(f, &reports),
            )?))
        }
    }
}

/// Runs one suite, or all of them in a fixed order.
pub fn run_suites(cfg: &RunConfig, f: &Field, suite: Suite) -> anyhow::Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Lemmas) {
        out.push(verify_lemmas(f)?);
    }
    if wants(Suite::CanonicalForms) {
        out.push(verify_canonical_forms(f));
    }
    if suite.field_only() {
        return Ok(out);
    }
    let (cd, ct, _) = pipeline(cfg, f)?;
    if wants(Suite::Group) {
        out.push(verify_group(&cd, &ct));
    }
    if wants(Suite::Types) {
        out.push(verify_types(&cd)?);
    }
    if !(wants(Suite::TableN) || wants(Suite::TableR) || wants(Suite::Corollary)) {
        return Ok(out);
    }
    let ctx = BesselContext::new(&cd, &ct)?;
    let (table_n, rep) = verify_table_n(&ctx)?;
    if wants(Suite::TableN) {
        out.push(rep);
    }
    if !(wants(Suite::TableR) || wants(Suite::Corollary)) {
        return Ok(out);
    }
    let table_n: HomDimReportN = table_n.context("the Hom_N table could not be built")?;
    let reports = sweep(&ctx, &nondegenerate_data(ctx.group()))?;
    if wants(Suite::TableR) {
        out.push(verify_table_r(&ctx, &table_n, &reports)?);
    }
    if wants(Suite::Corollary) {
        out.push(verify_corollary(&ctx, &table_n, &reports));
    }
    Ok(out)
}

fn verify(cfg: &RunConfig, f: &Field, suite: Suite) -> anyhow::Result<Outcome> {
    let reports = run_suites(cfg, f, suite)?;
    let success = reports.iter().all(|r| r.passed());
    let counterexample = if success {
        None
    } else {
        let failing: Vec<_> = output::rows_checks(&reports).into_iter().filter(|c| !c.passed).collect();
        Some(serde_json::to_string_pretty(&failing)?)
    };
    let text =
        render(cfg, f, &reports, || output::to_csv(&output::rows_checks(&reports)), || output::text_checks(&reports))?;
    Ok(Outcome { output: text, success, counterexample, notes: Vec::new() })
}

/// Runs the configured command on a pool of `cfg.threads` workers.
pub fn run(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let f = Field::new(cfg.p, cfg.n)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads.max(1)).build()?;
    pool.install(|| match &cfg.command {
        Command::Chartab => chartab(cfg, &f),
        Command::Table { model, datum, chi } => table(cfg, &f, *model, *datum, chi.as_deref()),
        Command::Verify { suite } => verify(cfg, &f, *suite),
    })
}
