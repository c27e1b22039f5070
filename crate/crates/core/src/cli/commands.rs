//! The five subcommands.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exact::{LinComb, Tensor};
use crate::gamma::{check_action, gamma_defects, GammaLieBialgebra};
use crate::hquant::{
    assemble_gamma_quantization_with, bialgebra_axiom_defects, classical_limit_defects, compare_pipelines,
    quasitriangular_gamma_quantize, Caps, Comparison, QuantOptions, TruncatedGammaBialgebra,
};
use crate::lie::{coboundary_cobracket, cocycle_defect, cojacobi_defect, cybe_defect, invariance_defect, jacobi_defect};
use crate::report::DefectReport;

use super::artifact::{Artifact, ArtifactSettings, DefectSummary};
use super::input::{document_of, seed_indices, InputDocument, Model, SchemaError};
use super::report::{ArtifactRef, CapsReport, CatalogLine, CheckResult, Outcome, Report};
use super::tables::{genmap_doc, series_doc};

const DEFAULT_ORDER: usize = 2;
const DEFAULT_CHECK_DEGREE: usize = 1;
const DEFAULT_AXIOM_DEGREE: usize = 2;

/// Flags shared by the solving commands; `None` defers to the input document
/// and then to the built-in defaults.
#[derive(Debug, Clone, Default)]
pub struct Tuning {
    pub order: Option<usize>,
    pub degree_cap: Option<usize>,
    pub seed_order: Option<Vec<String>>,
    pub timestamps: bool,
}

/// What a command produced: a report, or for `catalog NAME` a document.
#[derive(Debug, Clone)]
pub enum Output {
    Report(Box<Report>),
    Document(String, Box<Report>),
}

impl Output {
    pub fn report(&self) -> &Report {
        match self {
            Output::Report(r) | Output::Document(_, r) => r,
        }
    }
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, u128>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Self { on, last: Instant::now(), laps: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.laps.insert(stage.to_string(), now.duration_since(self.last).as_millis());
        self.last = now;
    }

    fn stamp(self, report: &mut Report) {
        if self.on {
            report.timings_ms = Some(self.laps);
            report.generated_at_unix = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn schema(report: &mut Report, e: SchemaError) {
    report.pointer = Some(e.pointer);
    report.finish(Outcome::Schema, Some(e.message));
}

fn load(path: &Path, report: &mut Report) -> Option<Model> {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            schema(report, SchemaError::new("/", format!("cannot read {}: {e}", path.display())));
            return None;
        }
    };
    report.input_digest = Some(digest(&bytes));
    match InputDocument::parse(&bytes).and_then(Model::from_document) {
        Ok(m) => Some(m),
        Err(e) => {
            schema(report, e);
            None
        }
    }
}

fn label_tuple(model: &Model, idx: &[usize]) -> String {
    let labels: Vec<&str> = idx.iter().map(|&i| model.bialg.alg().space().label(i)).collect();
    format!("({})", labels.join(","))
}

/// Splits a table tensor by its first `k` indices, one entry per key in
/// `keys`.
fn split(
    rep: &mut DefectReport,
    condition: &str,
    model: &Model,
    t: &Tensor,
    k: usize,
    keys: impl IntoIterator<Item = Vec<usize>>,
) {
    let mut parts: BTreeMap<Vec<usize>, LinComb<Vec<usize>>> = keys.into_iter().map(|k| (k, LinComb::zero())).collect();
    for (idx, c) in t.iter() {
        if let Some(p) = parts.get_mut(&idx[..k]) {
            p.add_term(idx[k..].to_vec(), c.clone());
        }
    }
    for (key, part) in parts {
        rep.push(condition, label_tuple(model, &key), part);
    }
}

fn increasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                let start = p.last().map_or(0, |&l| l + 1);
                (start..n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn internal(name: &str, e: Error) -> CheckResult {
    CheckResult::failed(name, e.to_string())
}

/// Every classical check that applies to the model, in a fixed order.
pub fn classical_checks(model: &Model, copoisson_degree: usize) -> Vec<CheckResult> {
    let n = model.dim();
    let alg = model.bialg.alg();
    let cob = model.bialg.cobracket();
    let mut out = Vec::new();

    let mut rep = DefectReport::new();
    split(&mut rep, "jacobi", model, &jacobi_defect(alg), 3, increasing(n, 3));
    out.push(CheckResult::from_report("jacobi", None, &rep));

    out.push(match cojacobi_defect(cob) {
        Ok(t) => {
            let mut rep = DefectReport::new();
            split(&mut rep, "co-jacobi", model, &t, 1, increasing(n, 1));
            CheckResult::from_report("co-jacobi", None, &rep)
        }
        Err(e) => internal("co-jacobi", e),
    });
    out.push(match cocycle_defect(alg, cob) {
        Ok(t) => {
            let mut rep = DefectReport::new();
            split(&mut rep, "cocycle", model, &t, 2, increasing(n, 2));
            CheckResult::from_report("cocycle", None, &rep)
        }
        Err(e) => internal("cocycle", e),
    });

    match &model.r {
        None => {
            out.push(CheckResult::skipped("cybe", "no r given"));
            out.push(CheckResult::skipped("t-invariance", "no r given"));
        }
        Some(r) => {
            out.push(match cybe_defect(alg, r) {
                Ok(t) => {
                    let mut rep = DefectReport::new();
                    rep.push("cybe", "r", t);
                    CheckResult::from_report("cybe", None, &rep)
                }
                Err(e) => internal("cybe", e),
            });
            let t = r.add(&r.swap().expect("2-tensor")).expect("same shape");
            out.push(match invariance_defect(alg, &t) {
                Ok(d) => {
                    let mut rep = DefectReport::new();
                    split(&mut rep, "t-invariance", model, &d, 1, increasing(n, 1));
                    CheckResult::from_report("t-invariance", None, &rep)
                }
                Err(e) => internal("t-invariance", e),
            });
            if let Some(stated) = &model.stated_cobracket {
                out.push(match coboundary_cobracket(alg, r) {
                    Ok(cb) => {
                        let mut rep = DefectReport::new();
                        for (i, (a, b)) in stated.iter().zip(&cb).enumerate() {
                            rep.push("coboundary", label_tuple(model, &[i]), a.sub(b).expect("same shape"));
                        }
                        CheckResult::from_report("cobracket = coboundary of r", None, &rep)
                    }
                    Err(e) => internal("cobracket = coboundary of r", e),
                });
            }
        }
    }

    let action_ok = match check_action(&model.action, alg) {
        Ok(rep) => {
            let c = CheckResult::from_report("action", None, &rep);
            let ok = c.passed();
            out.push(c);
            ok
        }
        Err(e) => {
            out.push(internal("action", e));
            false
        }
    };
    let classical_ok = out.iter().all(CheckResult::passed);

    let gamma = match model.gamma() {
        Ok(g) => Some(g),
        Err(e) => {
            out.push(CheckResult::failed("gamma (a)(b)(c)", format!("twist family rejected: {e}")));
            None
        }
    };
    let mut gamma_ok = false;
    if let Some(g) = &gamma {
        if action_ok {
            let c = match gamma_defects(g) {
                Ok(rep) => CheckResult::from_report("gamma (a)(b)(c)", None, &rep),
                Err(e) => internal("gamma (a)(b)(c)", e),
            };
            gamma_ok = c.passed();
            out.push(c);
        } else {
            out.push(CheckResult::skipped("gamma (a)(b)(c)", "the action check failed"));
        }
    }
    match &gamma {
        Some(g) if gamma_ok && classical_ok => out.push(match crate::envelope::copoisson_axiom_defects(g, copoisson_degree) {
            Ok(rep) => CheckResult::from_report("co-poisson", Some(copoisson_degree), &rep),
            Err(e) => internal("co-poisson", e),
        }),
        _ => out.push(CheckResult::skipped("co-poisson", "an earlier check failed")),
    }
    out
}

fn first_failure(report: &Report) -> String {
    let c = report.checks.iter().find(|c| !c.passed()).expect("a failing check");
    match c.failures.first() {
        Some(f) => format!("{} fails at {}", c.name, f.key),
        None => format!("{} fails: {}", c.name, c.note.clone().unwrap_or_default()),
    }
}

pub fn check(input: &Path, tuning: &Tuning) -> Output {
    let mut report = Report::new("check");
    let mut clock = Clock::new(tuning.timestamps);
    if let Some(model) = load(input, &mut report) {
        clock.lap("load");
        let degree = model.doc.options.check_degree.unwrap_or(DEFAULT_CHECK_DEGREE);
        report.checks = classical_checks(&model, degree);
        clock.lap("checks");
        if report.all_checks_pass() {
            report.finish(Outcome::Pass, None);
        } else {
            let why = first_failure(&report);
            report.finish(Outcome::Defect, Some(why));
        }
    }
    clock.stamp(&mut report);
    Output::Report(Box::new(report))
}

struct Plan {
    opts: QuantOptions,
    degree_cap: usize,
    seed_labels: Vec<String>,
    seed: Vec<usize>,
}

fn plan(model: &Model, tuning: &Tuning) -> Result<Plan, SchemaError> {
    let o = &model.doc.options;
    let order = tuning.order.or(o.order).unwrap_or(DEFAULT_ORDER);
    let degree_cap = tuning.degree_cap.or(o.degree_cap).unwrap_or(Caps::default().leg_extra);
    if degree_cap == 0 {
        return Err(SchemaError::new("/options/degree_cap", "degree cap must be at least 1"));
    }
    let caps = Caps { leg_extra: degree_cap, slack: degree_cap - 1 };
    let grp = model.group();
    let seed_labels = match tuning.seed_order.clone().or_else(|| o.seed_order.clone()) {
        Some(s) => s,
        None => grp.elements().filter(|&g| g != grp.identity()).map(|g| grp.label(g).to_string()).collect(),
    };
    let seed = seed_indices(grp, &seed_labels).map_err(|m| SchemaError::new("/options/seed_order", m))?;
    Ok(Plan { opts: QuantOptions { order, caps, ..QuantOptions::default() }, degree_cap, seed_labels, seed })
}

fn caps_report(p: &Plan) -> CapsReport {
    CapsReport {
        order: p.opts.order,
        degree_cap: p.degree_cap,
        leg_cap_at_top_order: p.opts.caps.leg(p.opts.order),
        total_cap_at_top_order: p.opts.caps.total(p.opts.order),
        window: p.opts.window,
    }
}

/// Maps a solver error to an exit status, filling in the report.
fn solver_error(report: &mut Report, e: Error, degree_cap: usize) {
    match e {
        Error::Inconsistent { what, order, cap, certificate } => {
            report.certificate = Some(json!({ "system": what, "order": order, "rows": certificate }));
            report.finish(
                Outcome::SolverCap,
                Some(format!(
                    "no solution for {what} at order {order} within total degree {cap}; retry with --degree-cap {}",
                    degree_cap + 1
                )),
            );
        }
        Error::Window { needed, cap } => report.finish(
            Outcome::SolverCap,
            Some(format!("degree window {cap} too small, {needed} needed; retry with a smaller --order")),
        ),
        Error::Axiom(m) => report.finish(Outcome::Defect, Some(m)),
        other => report.finish(Outcome::Failure, Some(other.to_string())),
    }
}

/// Runs the pre-checks; on failure the report is finished with a defect.
fn precheck(model: &Model, report: &mut Report) -> bool {
    let degree = model.doc.options.check_degree.unwrap_or(DEFAULT_CHECK_DEGREE);
    report.checks = classical_checks(model, degree);
    if report.all_checks_pass() {
        return true;
    }
    let why = format!("pre-check: {}", first_failure(report));
    report.finish(Outcome::Defect, Some(why));
    false
}

fn axiom_checks(a: &TruncatedGammaBialgebra, g: &GammaLieBialgebra, degree: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(match bialgebra_axiom_defects(a, degree) {
        Ok(rep) => CheckResult::from_report("bialgebra axioms", Some(degree), &rep),
        Err(e) => internal("bialgebra axioms", e),
    });
    out.push(match classical_limit_defects(a, g, degree) {
        Ok(rep) => CheckResult::from_report("classical limit", Some(degree), &rep),
        Err(e) => internal("classical limit", e),
    });
    out
}

fn summary(c: &CheckResult) -> DefectSummary {
    DefectSummary {
        check: c.name.clone(),
        degree: c.degree.unwrap_or(0),
        entries: c.entries,
        nonzero: c.failures.len(),
    }
}

/// Default artifact path: the input path with `.artifact.json` in place of
/// its extension.
pub fn default_artifact_path(input: &Path) -> PathBuf {
    input.with_extension("artifact.json")
}

pub fn quantize(input: &Path, out: Option<&Path>, tuning: &Tuning) -> Output {
    let mut report = Report::new("quantize");
    let mut clock = Clock::new(tuning.timestamps);
    let _ = (|| {
        let model = load(input, &mut report)?;
        let p = match plan(&model, tuning) {
            Ok(p) => p,
            Err(e) => {
                schema(&mut report, e);
                return None;
            }
        };
        report.caps = Some(caps_report(&p));
        clock.lap("load");
        if !precheck(&model, &mut report) {
            return None;
        }
        clock.lap("pre-check");
        let g = model.gamma().expect("pre-checked");
        let a = match assemble_gamma_quantization_with(&g, None, Some(&p.seed), &p.opts) {
            Ok(a) => a,
            Err(e) => {
                solver_error(&mut report, e, p.degree_cap);
                return None;
            }
        };
        report.solver_log = a.gauge_log().to_vec();
        clock.lap("solve");
        let degree = model.doc.options.axiom_degree.unwrap_or(DEFAULT_AXIOM_DEGREE);
        let checks = axiom_checks(&a, &g, degree);
        clock.lap("axioms");
        let settings = ArtifactSettings {
            order: p.opts.order,
            degree_cap: p.degree_cap,
            seed_order: p.seed_labels.clone(),
            axiom_degree: degree,
            window: p.opts.window,
        };
        let artifact = match Artifact::build(&model.doc, settings, &a, checks.iter().map(summary).collect()) {
            Ok(x) => x,
            Err(e) => {
                report.finish(Outcome::Failure, Some(e.to_string()));
                return None;
            }
        };
        let path = out.map(Path::to_path_buf).unwrap_or_else(|| default_artifact_path(input));
        if let Err(e) = std::fs::write(&path, artifact.to_json()) {
            report.finish(Outcome::Failure, Some(format!("cannot write {}: {e}", path.display())));
            return None;
        }
        clock.lap("write");
        report.artifact = Some(ArtifactRef { path: path.display().to_string(), digest: artifact.digest.clone() });
        let ok = checks.iter().all(CheckResult::passed);
        report.checks.extend(checks);
        if ok {
            report.finish(Outcome::Pass, None);
        } else {
            let why = first_failure(&report);
            report.finish(Outcome::Defect, Some(why));
        }
        Some(())
    })();
    clock.stamp(&mut report);
    Output::Report(Box::new(report))
}

pub fn compare(input: &Path, tuning: &Tuning) -> Output {
    let mut report = Report::new("compare");
    let mut clock = Clock::new(tuning.timestamps);
    let _ = (|| {
        let model = load(input, &mut report)?;
        if model.r.is_none() {
            schema(&mut report, SchemaError::new("/r", "compare needs an r-matrix"));
            return None;
        }
        let p = match plan(&model, tuning) {
            Ok(p) => p,
            Err(e) => {
                schema(&mut report, e);
                return None;
            }
        };
        report.caps = Some(caps_report(&p));
        clock.lap("load");
        if !precheck(&model, &mut report) {
            return None;
        }
        clock.lap("pre-check");
        let qd = match model.quasitriangular().expect("r present") {
            Ok(q) => q,
            Err(e) => {
                report.finish(Outcome::Defect, Some(e.to_string()));
                return None;
            }
        };
        let direct = match quasitriangular_gamma_quantize(&qd, &model.action, &p.opts) {
            Ok(a) => a,
            Err(e) => {
                solver_error(&mut report, e, p.degree_cap);
                return None;
            }
        };
        clock.lap("direct");
        let base = match direct.coproduct() {
            Ok(b) => b,
            Err(e) => {
                report.finish(Outcome::Failure, Some(e.to_string()));
                return None;
            }
        };
        let g = model.gamma().expect("pre-checked");
        let generic = match assemble_gamma_quantization_with(&g, Some(&base), Some(&p.seed), &p.opts) {
            Ok(a) => a,
            Err(Error::Invalid(m)) => {
                report.finish(Outcome::NotEquivalent, Some(m));
                return None;
            }
            Err(e) => {
                solver_error(&mut report, e, p.degree_cap);
                return None;
            }
        };
        report.solver_log = generic.gauge_log().to_vec();
        clock.lap("generic");
        match compare_pipelines(&direct, &generic, &p.opts) {
            Ok(Comparison::Witness(w)) => {
                let grp = model.group();
                let u: BTreeMap<String, _> =
                    grp.elements().map(|x| (grp.label(x).to_string(), series_doc(&w.u[x]))).collect();
                report.witness = Some(json!({ "j": genmap_doc(w.j.map()), "u": u }));
                report.finish(Outcome::Pass, None);
            }
            Ok(Comparison::NotFound(cert)) => {
                let why = format!("no witness at order {} within the degree caps", cert.order);
                report.certificate = Some(serde_json::to_value(&cert).expect("serializable"));
                report.finish(Outcome::NotEquivalent, Some(why));
            }
            Err(e) => solver_error(&mut report, e, p.degree_cap),
        }
        clock.lap("compare");
        Some(())
    })();
    clock.stamp(&mut report);
    Output::Report(Box::new(report))
}

pub fn verify_artifact(path: &Path, tuning: &Tuning) -> Output {
    let mut report = Report::new("verify-artifact");
    let mut clock = Clock::new(tuning.timestamps);
    let _ = (|| {
        let bytes = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) => {
                schema(&mut report, SchemaError::new("/", format!("cannot read {}: {e}", path.display())));
                return None;
            }
        };
        report.input_digest = Some(digest(&bytes));
        let artifact: Artifact = match super::input::parse_json(&bytes) {
            Ok(a) => a,
            Err(e) => {
                schema(&mut report, e);
                return None;
            }
        };
        if artifact.format != super::artifact::FORMAT {
            schema(&mut report, SchemaError::new("/format", format!("unsupported format {:?}", artifact.format)));
            return None;
        }
        if artifact.compute_digest() != artifact.digest {
            schema(&mut report, SchemaError::new("/digest", "digest does not match the stored tables"));
            return None;
        }
        let model = match Model::from_document(artifact.input.clone()) {
            Ok(m) => m,
            Err(e) => {
                schema(&mut report, SchemaError::new(format!("/input{}", e.pointer), e.message));
                return None;
            }
        };
        let a = match artifact.rebuild(&model) {
            Ok(a) => a,
            Err(e) => {
                schema(&mut report, e);
                return None;
            }
        };
        clock.lap("rebuild");
        let stored = match artifact.stored_isos(&model) {
            Ok(s) => s,
            Err(e) => {
                schema(&mut report, e);
                return None;
            }
        };
        let ring = a.ring();
        let mut rep = DefectReport::new();
        for (g, m) in stored.iter().enumerate() {
            let label = model.group().label(g).to_string();
            match a.iso(g) {
                Ok(i) => {
                    let bad = !i.map().same_as(&ring, m);
                    rep.push("iso", label, LinComb::<usize>::from_terms(bad.then(|| (0, crate::exact::qi(1)))));
                }
                Err(e) => {
                    report.checks.push(internal("iso tables", e));
                    break;
                }
            }
        }
        if report.checks.is_empty() {
            report.checks.push(CheckResult::from_report("iso tables", None, &rep));
        }
        let g = match model.gamma() {
            Ok(g) => g,
            Err(e) => {
                report.finish(Outcome::Defect, Some(e.to_string()));
                return None;
            }
        };
        report.checks.extend(axiom_checks(&a, &g, artifact.settings.axiom_degree));
        clock.lap("axioms");
        report.artifact = Some(ArtifactRef { path: path.display().to_string(), digest: artifact.digest.clone() });
        if report.all_checks_pass() {
            report.finish(Outcome::Pass, None);
        } else {
            let why = first_failure(&report);
            report.finish(Outcome::Defect, Some(why));
        }
        Some(())
    })();
    clock.stamp(&mut report);
    Output::Report(Box::new(report))
}

/// Shipped examples: the plain Lie bialgebras and the Γ-structures.
pub fn catalog_entries() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for &name in crate::lie::catalog::NAMES {
        let b = crate::lie::catalog::by_name(name).expect("listed");
        out.push((name.to_string(), format!("Lie bialgebra of dimension {}", b.dim())));
    }
    for &name in crate::gamma::catalog::NAMES {
        let g = crate::gamma::catalog::by_name(name).expect("listed");
        out.push((
            name.to_string(),
            format!("dimension {} with a group of order {}", g.dim(), g.action().group().order()),
        ));
    }
    out
}

/// The input document of a catalog entry.
pub fn catalog_document(name: &str) -> Option<InputDocument> {
    use crate::gamma::{FiniteGroup, GroupAction};
    let r = crate::lie::catalog::sl2_standard_r();
    let with_r = name.starts_with("sl2") && name != "sl2-zero";
    let g = match crate::gamma::catalog::by_name(name) {
        Some(g) => g,
        None => {
            let b = crate::lie::catalog::by_name(name)?;
            let n = b.dim();
            GammaLieBialgebra::new_unchecked(b, GroupAction::trivial(FiniteGroup::trivial(), n), vec![Tensor::zero_square(n, 2)])
                .expect("trivial group")
        }
    };
    Some(document_of(name, &g, with_r.then_some(&r)))
}

pub fn catalog(name: Option<&str>) -> Output {
    let mut report = Report::new("catalog");
    match name {
        None => {
            report.catalog = catalog_entries()
                .into_iter()
                .map(|(name, description)| CatalogLine { name, description })
                .collect();
            report.finish(Outcome::Pass, None);
            Output::Report(Box::new(report))
        }
        Some(n) => match catalog_document(n) {
            Some(doc) => {
                report.finish(Outcome::Pass, None);
                Output::Document(doc.to_json(), Box::new(report))
            }
            None => {
                report.finish(Outcome::Failure, Some(format!("unknown catalog entry {n:?}")));
                Output::Report(Box::new(report))
            }
        },
    }
}
