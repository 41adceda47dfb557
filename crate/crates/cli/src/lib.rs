//! Suites, parallel execution and report rendering behind the `qsym` binary.
//!
//! A suite is a list of [`Task`]s, each producing one or more reports. Tasks
//! run on a rayon pool of the requested size; results are sorted by
//! `(suite, id, params)` before rendering so output does not depend on
//! scheduling.

use qsym_core::algebra::Rational;
use qsym_core::identities::catalog::{self, Corollary, Expansion, Family, Specialization};
use qsym_core::identities::crosscheck::{
    crosscheck_expansion, coefficient_identity_check, lambda13_substitution_check, limit_check, series_identity_check,
};
use qsym_core::algebra::Monomial;
use qsym_core::identities::verify::{
    variant_census, verify_aux, verify_corollary, verify_family, verify_intro_chain, Fault, Report,
};
use qsym_core::padic::{moment_check, shift_identity_check, VolkenbornParams};
use qsym_core::{QsymError, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};
use std::time::Instant;

type Job = Box<dyn Fn() -> Result<Vec<Report>> + Send + Sync>;

/// One unit of schedulable work.
pub struct Task {
    job: Job,
}

impl Task {
    pub fn new(f: impl Fn() -> Result<Vec<Report>> + Send + Sync + 'static) -> Self {
        Task { job: Box::new(f) }
    }

    fn one(f: impl Fn() -> Result<Report> + Send + Sync + 'static) -> Self {
        Task::new(move || Ok(vec![f()?]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchOut {
    pub n: usize,
    pub label: String,
    pub monomial: String,
    pub expected: String,
    pub found: String,
}

/// A report as serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub suite: String,
    pub id: String,
    pub params: Map<String, Value>,
    pub status: &'static str,
    pub detail: String,
    pub flags: Vec<String>,
    pub mismatch: Option<MismatchOut>,
    pub millis: Option<u64>,
    #[serde(skip)]
    key: Vec<(String, i64)>,
}

impl Entry {
    fn from_report(r: Report, millis: Option<u64>) -> Self {
        Entry {
            suite: r.suite,
            id: r.id,
            params: r.params.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect(),
            status: if r.passed { "pass" } else { "fail" },
            detail: r.detail,
            flags: r.flags,
            mismatch: r.mismatch.map(|m| MismatchOut {
                n: m.n,
                label: m.label,
                monomial: m.monomial,
                expected: m.expected,
                found: m.found,
            }),
            millis,
            key: r.params,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn param_text(&self) -> String {
        self.key.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
    pub status: &'static str,
}

/// The full output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub config: Value,
    pub results: Vec<Entry>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(config: Value, results: Vec<Entry>) -> Self {
        let passed = results.iter().filter(|e| e.passed()).count();
        let summary = Summary {
            total: results.len(),
            passed,
            failed: results.len() - passed,
            flagged: results.iter().filter(|e| !e.flags.is_empty()).count(),
            status: if passed == results.len() { "pass" } else { "fail" },
        };
        RunReport { config, results, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Runs `tasks` on `threads` workers and returns entries in canonical order.
pub fn run_tasks(tasks: Vec<Task>, threads: usize, timings: bool) -> Result<Vec<Entry>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| QsymError::Domain(format!("thread pool: {e}")))?;
    let chunks: Vec<Result<Vec<Entry>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let reports = (t.job)()?;
                let ms = timings.then(|| start.elapsed().as_millis() as u64);
                Ok(reports.into_iter().map(|r| Entry::from_report(r, ms)).collect())
            })
            .collect()
    });
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    out.sort_by(|a, b| (&a.suite, &a.id, &a.key).cmp(&(&b.suite, &b.id, &b.key)));
    Ok(out)
}

/// All `[a, b, c]` with entries in `1..=max`.
pub fn weight_cube(max: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            for c in 1..=max {
                v.push([a, b, c]);
            }
        }
    }
    v
}

/// What `verify` runs.
#[derive(Clone, Debug, Default)]
pub struct VerifyPlan {
    pub families: Vec<&'static Family>,
    pub corollaries: Vec<&'static Corollary>,
    pub chain: bool,
    pub aux: bool,
    pub census: bool,
    pub n_max: usize,
    /// Weights for families and auxiliary checks.
    pub family_weights: Vec<[u32; 3]>,
    /// Weights for corollaries and the chain; unused slots are ignored.
    pub special_weights: Vec<[u32; 3]>,
    /// Adds 1 to the constant term of the second variant at `n = 0`, to
    /// exercise the failure path.
    pub inject_fault: bool,
}

pub fn verify_tasks(plan: &VerifyPlan) -> Vec<Task> {
    let n = plan.n_max;
    let mut tasks = Vec::new();
    for &f in &plan.families {
        for &w in &plan.family_weights {
            let fault = plan.inject_fault.then_some(Fault { variant: 1, n: 0, monomial: Monomial::one() });
            tasks.push(Task::one(move || verify_family(f, n, &w, fault)));
            if plan.aux && !f.aux.is_empty() {
                tasks.push(Task::one(move || verify_aux(f, n, &w)));
            }
        }
    }
    for &c in &plan.corollaries {
        let parent = catalog::family(c.parent).expect("catalog parents exist");
        let mut seen: Vec<[u32; 3]> = Vec::new();
        for &w in &plan.special_weights {
            let w = c.fix.apply(w);
            if !seen.contains(&w) {
                seen.push(w);
                tasks.push(Task::one(move || verify_corollary(c, parent, n, &w)));
            }
        }
    }
    if plan.chain {
        let mut seen = Vec::new();
        for &w in &plan.special_weights {
            let w = Specialization::W3.apply(w);
            if !seen.contains(&w) {
                seen.push(w);
                tasks.push(Task::one(move || verify_intro_chain(n, w[0], w[1])));
            }
        }
    }
    if plan.census {
        let fams = plan.families.clone();
        tasks.push(Task::one(move || {
            let owned: Vec<Family> = fams.iter().map(|f| (*f).clone()).collect();
            Ok(variant_census(&owned))
        }));
    }
    tasks
}

/// What `crosscheck` runs.
#[derive(Clone, Debug, Default)]
pub struct CrosscheckPlan {
    pub expansions: Vec<&'static Expansion>,
    pub order: usize,
    pub weights: Vec<[u32; 3]>,
    pub substitution_order: Option<usize>,
    pub coefficient_w_max: u32,
    pub coefficient_order: usize,
}

pub fn crosscheck_tasks(plan: &CrosscheckPlan) -> Vec<Task> {
    let mut tasks = Vec::new();
    let k = plan.order;
    for &e in &plan.expansions {
        for &w in &plan.weights {
            tasks.push(Task::one(move || crosscheck_expansion(e, &w, k)));
        }
    }
    if let Some(ko) = plan.substitution_order {
        for &w in &plan.weights {
            tasks.push(Task::one(move || lambda13_substitution_check(&w, ko)));
        }
    }
    let kc = plan.coefficient_order;
    for w in 1..=plan.coefficient_w_max {
        tasks.push(Task::one(move || coefficient_identity_check(w, kc)));
        tasks.push(Task::one(move || series_identity_check(w, kc)));
    }
    tasks
}

/// What `padic` runs; parameters are validated on construction.
#[derive(Clone, Debug)]
pub struct PadicPlan {
    /// `(p, q)` pairs.
    pub bases: Vec<(u64, Rational)>,
    pub n_max: u32,
    pub cutoffs: Vec<u32>,
    pub m: u32,
}

impl PadicPlan {
    pub fn new(primes: &[u64], q: Option<Rational>, n_max: u32, cutoffs: Vec<u32>, m: u32) -> Result<Self> {
        if cutoffs.is_empty() || primes.is_empty() {
            return Err(QsymError::Domain("empty prime or cutoff list".into()));
        }
        let mut bases = Vec::new();
        for &p in primes {
            let q = q.clone().unwrap_or_else(|| Rational::from_integer((1 + p).into()));
            for &nc in &cutoffs {
                VolkenbornParams::new(p, nc, m, q.clone())?;
            }
            bases.push((p, q));
        }
        let mut cutoffs = cutoffs;
        cutoffs.sort_unstable();
        cutoffs.dedup();
        Ok(PadicPlan { bases, n_max, cutoffs, m })
    }
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn padic_tasks(plan: &PadicPlan) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (p, q) in &plan.bases {
        for n in 0..=plan.n_max {
            let (p, q, m, cuts) = (*p, q.clone(), plan.m, plan.cutoffs.clone());
            let qs = q.to_string();
            let qm = q.clone();
            tasks.push(Task::one(move || {
                let r = moment_check(n, p, &qm, m, &cuts)?;
                let top = *cuts.last().unwrap() as i64;
                let mut rep = Report::new(
                    "padic-moment",
                    &format!("q={qs}"),
                    &[("p", p as i64), ("n", n as i64), ("M", m as i64), ("N_max", top)],
                );
                let detail = format!(
                    "valuations of V_N - B at N={}: {}; successive differences: {}; offset c={}; v(B)={}; {} digits agree at N={top}",
                    join(cuts.iter()),
                    join(r.valuations.iter().map(|x| x.1)),
                    join(r.steps.iter().map(|x| x.1)),
                    r.offset,
                    r.exact_valuation,
                    r.digits
                );
                if r.passed {
                    rep.detail = detail;
                } else {
                    rep.fail_with(detail);
                }
                Ok(rep)
            }));
            for &nc in &plan.cutoffs {
                let q = q.clone();
                let qs = q.to_string();
                tasks.push(Task::one(move || {
                    let r = shift_identity_check(n, &VolkenbornParams::new(p, nc, m, q.clone())?)?;
                    let mut rep = Report::new(
                        "padic-shift",
                        &format!("q={qs}"),
                        &[("p", p as i64), ("n", n as i64), ("M", m as i64), ("N", nc as i64)],
                    );
                    let detail = format!(
                        "discrepancy valuation {} (required {}); exact layer {}",
                        r.valuation,
                        r.required,
                        if r.exact_layer { "holds" } else { "fails" }
                    );
                    if r.passed {
                        rep.detail = detail;
                    } else {
                        rep.fail_with(detail);
                    }
                    Ok(rep)
                }));
            }
        }
    }
    tasks
}

pub fn limit_tasks(n_max: usize) -> Vec<Task> {
    vec![Task::one(move || limit_check(n_max))]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json, csv or text")),
        }
    }
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

fn render_csv(report: &RunReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "id", "params", "status", "detail", "flags", "mismatch_n", "mismatch_monomial", "expected", "found", "millis"])
        .expect("in-memory write");
    for e in &report.results {
        let (mn, mm, me, mf) = match &e.mismatch {
            Some(m) => (m.n.to_string(), m.monomial.clone(), m.expected.clone(), m.found.clone()),
            None => Default::default(),
        };
        w.write_record([
            e.suite.as_str(),
            &e.id,
            &e.param_text(),
            e.status,
            &e.detail,
            &e.flags.join(" | "),
            &mn,
            &mm,
            &me,
            &mf,
            &e.millis.map(|m| m.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn render_text(report: &RunReport) -> String {
    let mut s = String::new();
    for e in &report.results {
        let time = e.millis.map(|m| format!(" [{m} ms]")).unwrap_or_default();
        s.push_str(&format!("{} {} {} {}: {}{}\n", e.status.to_uppercase(), e.suite, e.id, e.param_text(), e.detail, time));
        for f in &e.flags {
            s.push_str(&format!("    flag: {f}\n"));
        }
    }
    let m = &report.summary;
    s.push_str(&format!("{} checks, {} passed, {} failed, {} flagged\n", m.total, m.passed, m.failed, m.flagged));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ignores_scheduling() {
        let plan = VerifyPlan {
            families: vec![catalog::family("F6").unwrap(), catalog::family("F8").unwrap()],
            n_max: 2,
            family_weights: weight_cube(2),
            ..Default::default()
        };
        let a = run_tasks(verify_tasks(&plan), 1, false).unwrap();
        let b = run_tasks(verify_tasks(&plan), 4, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        assert!(a.windows(2).all(|p| (&p[0].suite, &p[0].id, &p[0].key) <= (&p[1].suite, &p[1].id, &p[1].key)));
    }

    #[test]
    fn csv_has_one_row_per_entry() {
        let r = RunReport::new(Value::Null, run_tasks(limit_tasks(4), 1, false).unwrap());
        let text = render(&r, Format::Csv);
        assert_eq!(text.lines().count(), 2);
        assert!(r.all_passed());
    }

    #[test]
    fn padic_plan_validates() {
        assert!(PadicPlan::new(&[3], Some(Rational::from_integer(1.into())), 2, vec![1], 6).is_err());
        assert!(PadicPlan::new(&[3, 5], None, 2, vec![2, 1, 2], 6).unwrap().cutoffs == vec![1, 2]);
    }
}
