//! `qsym`: compute `q`-Bernoulli objects and run the verification suites.
//!
//! Exit status is 0 when every check passes, 1 when any check finds a
//! mismatch and 2 for usage or configuration errors.

use clap::{Args, Parser, Subcommand};
use qsym_cli::{
    crosscheck_tasks, limit_tasks, padic_tasks, render, run_tasks, verify_tasks, weight_cube, CrosscheckPlan, Format,
    PadicPlan, RunReport, Task, VerifyPlan,
};
use qsym_core::algebra::{Rational, Var};
use qsym_core::identities::catalog;
use qsym_core::qbernoulli::{power_sum, qbernoulli_number, qbernoulli_poly, rebase};
use qsym_core::{QsymError, Result};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qsym", version, about = "Exact verification of q-Bernoulli symmetry identities")]
struct Cli {
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, env = "QSYM_THREADS")]
    threads: Option<usize>,
    /// Record per-task wall time in milliseconds (makes reports nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a q-Bernoulli number, polynomial or power sum.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Check the identity families, their corollaries and the y1 chain.
    Verify(VerifyArgs),
    /// Compare series expansions with closed forms and check the geometric identities.
    Crosscheck(CrosscheckArgs),
    /// Compare Volkenborn sums with p-adic values of the q-Bernoulli numbers.
    Padic(PadicArgs),
    /// Check the q -> 1 limit against the classical Bernoulli numbers.
    Limit {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Compute {
    /// B_{n,q}, optionally in base q^w.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        rebase: u32,
    },
    /// B_{n,q}(x), optionally in base q^w.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        rebase: u32,
    },
    /// S_{k,q}(n) = sum_{i<=n} i^k q^i.
    Powersum {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all`, `none` or a comma-separated list of family ids. Defaults to all
    /// unless corollaries or the chain are selected.
    #[arg(long)]
    family: Option<String>,
    /// `all`, `none` or a comma-separated list of corollary ids.
    #[arg(long)]
    corollary: Option<String>,
    /// Also check the y1 chain.
    #[arg(long)]
    chain: bool,
    /// Also check the auxiliary index relabellings.
    #[arg(long)]
    aux: bool,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// Largest weight; defaults to 3 for families and 4 for corollaries and the chain.
    #[arg(long)]
    w_max: Option<u32>,
    /// A single weight triple `w1,w2,w3`.
    #[arg(long, value_parser = parse_triple)]
    w: Option<[u32; 3]>,
    /// Perturb one coefficient of every family check (self-test of the failure path).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    /// `all`, `none` or a comma-separated list of expansion ids.
    #[arg(long, default_value = "all")]
    expansion: String,
    /// Series order K.
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    w_max: u32,
    #[arg(long, value_parser = parse_triple)]
    w: Option<[u32; 3]>,
    /// Order of the substitution check; 0 disables it.
    #[arg(long, default_value_t = 8)]
    substitution_order: usize,
    /// Largest w for the geometric identities; 0 disables them.
    #[arg(long, default_value_t = 5)]
    geometric_w_max: u32,
    #[arg(long, default_value_t = 12)]
    geometric_order: usize,
}

#[derive(Args, Debug)]
struct PadicArgs {
    /// Comma-separated odd primes.
    #[arg(long, default_value = "3,5,7", value_delimiter = ',')]
    p: Vec<u64>,
    /// Base q as a rational; defaults to 1 + p for each p.
    #[arg(long)]
    q: Option<Rational>,
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    /// Comma-separated cutoff exponents N.
    #[arg(long = "N", default_value = "1,2,3,4,5", value_delimiter = ',')]
    cutoffs: Vec<u32>,
    /// Target precision M.
    #[arg(long = "M", default_value_t = 12)]
    m: u32,
}

fn parse_triple(s: &str) -> std::result::Result<[u32; 3], String> {
    let v: Vec<u32> = s.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| e.to_string())).collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c] if v.iter().all(|&x| x >= 1) => Ok([*a, *b, *c]),
        _ => Err("expected three positive integers w1,w2,w3".into()),
    }
}

fn select<T: 'static>(
    spec: &str,
    all: &'static [T],
    id: impl Fn(&T) -> &str,
    kind: &str,
) -> Result<Vec<&'static T>> {
    match spec {
        "all" => Ok(all.iter().collect()),
        "none" => Ok(Vec::new()),
        list => list
            .split(',')
            .map(|s| {
                let s = s.trim();
                all.iter().find(|x| id(x) == s).ok_or_else(|| QsymError::UnknownId(format!("{kind} {s}")))
            })
            .collect(),
    }
}

fn positive(w_max: u32) -> Result<u32> {
    if w_max == 0 {
        return Err(QsymError::Domain("weights must be at least 1".into()));
    }
    Ok(w_max)
}

fn verify_plan(a: &VerifyArgs) -> Result<(VerifyPlan, Value)> {
    let cor_spec = a.corollary.clone().unwrap_or_else(|| "none".into());
    let fam_default = if a.corollary.is_some() || a.chain { "none" } else { "all" };
    let fam_spec = a.family.clone().unwrap_or_else(|| fam_default.into());
    let families = select(&fam_spec, catalog::families(), |f| f.id, "family")?;
    let corollaries = select(&cor_spec, catalog::corollaries(), |c| c.id, "corollary")?;
    let (family_weights, special_weights) = match (a.w, a.w_max) {
        (Some(w), _) => (vec![w], vec![w]),
        (None, Some(m)) => (weight_cube(positive(m)?), weight_cube(m)),
        (None, None) => (weight_cube(3), weight_cube(4)),
    };
    let all_families = fam_spec == "all";
    let plan = VerifyPlan {
        families,
        corollaries,
        chain: a.chain,
        aux: a.aux,
        census: all_families,
        n_max: a.n_max,
        family_weights,
        special_weights,
        inject_fault: a.inject_fault,
    };
    let config = json!({
        "command": "verify",
        "family": fam_spec,
        "corollary": cor_spec,
        "chain": a.chain,
        "aux": a.aux,
        "n_max": a.n_max,
        "w_max": a.w_max,
        "w": a.w,
        "inject_fault": a.inject_fault,
    });
    Ok((plan, config))
}

fn crosscheck_plan(a: &CrosscheckArgs) -> Result<(CrosscheckPlan, Value)> {
    let expansions = select(&a.expansion, catalog::expansions(), |e| e.id, "expansion")?;
    let weights = match a.w {
        Some(w) => vec![w],
        None => weight_cube(positive(a.w_max)?),
    };
    let plan = CrosscheckPlan {
        expansions,
        order: a.order,
        weights,
        substitution_order: (a.substitution_order > 0).then_some(a.substitution_order),
        coefficient_w_max: a.geometric_w_max,
        coefficient_order: a.geometric_order,
    };
    let config = json!({
        "command": "crosscheck",
        "expansion": a.expansion,
        "order": a.order,
        "w_max": a.w_max,
        "w": a.w,
        "substitution_order": a.substitution_order,
        "geometric_w_max": a.geometric_w_max,
        "geometric_order": a.geometric_order,
    });
    Ok((plan, config))
}

fn padic_plan(a: &PadicArgs) -> Result<(PadicPlan, Value)> {
    let plan = PadicPlan::new(&a.p, a.q.clone(), a.n_max, a.cutoffs.clone(), a.m)?;
    let config = json!({
        "command": "padic",
        "p": a.p,
        "q": a.q.as_ref().map(|q| q.to_string()),
        "n_max": a.n_max,
        "N": plan.cutoffs,
        "M": a.m,
    });
    Ok((plan, config))
}

fn compute(what: &Compute, format: Format) -> Result<String> {
    let (object, params, value, parts): (&str, Value, String, Option<(String, String)>) = match *what {
        Compute::Bernoulli { n, rebase: w } => {
            let b = rebase(&qbernoulli_number(n), w)?;
            let parts = (b.coeff(0).to_string(), b.coeff(1).to_string());
            ("bernoulli", json!({"n": n, "rebase": w}), b.render(), Some(parts))
        }
        Compute::Poly { n, rebase: w } => {
            let b = rebase(&qbernoulli_poly(n, Var::X), w)?;
            ("poly", json!({"n": n, "rebase": w}), b.render(), None)
        }
        Compute::Powersum { k, n } => ("powersum", json!({"k": k, "n": n}), power_sum(k, n).render("q"), None),
    };
    Ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Json => {
            let mut v = json!({"object": object, "params": params, "value": value});
            if let Some((c0, c1)) = parts {
                v["constant"] = json!(c0);
                v["l_coefficient"] = json!(c1);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["object", "params", "value"]).expect("in-memory write");
            w.write_record([object, &params.to_string(), &value]).expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
    })
}

/// Builds the tasks and configuration for a suite command.
fn plan(cmd: &Command) -> Result<(Vec<Task>, Value)> {
    Ok(match cmd {
        Command::Verify(a) => {
            let (p, c) = verify_plan(a)?;
            (verify_tasks(&p), c)
        }
        Command::Crosscheck(a) => {
            let (p, c) = crosscheck_plan(a)?;
            (crosscheck_tasks(&p), c)
        }
        Command::Padic(a) => {
            let (p, c) = padic_plan(a)?;
            (padic_tasks(&p), c)
        }
        Command::Limit { n_max } => (limit_tasks(*n_max), json!({"command": "limit", "n_max": n_max})),
        Command::Compute { .. } => unreachable!("compute has no suite"),
    })
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<bool, String> {
    let text = match &cli.command {
        Command::Compute { what } => {
            let t = compute(what, cli.format).map_err(|e| e.to_string())?;
            emit(&t, &cli.out).map_err(|e| e.to_string())?;
            return Ok(true);
        }
        cmd => {
            let (tasks, config) = plan(cmd).map_err(|e| e.to_string())?;
            let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let entries = run_tasks(tasks, threads, cli.timings).map_err(|e| e.to_string())?;
            let report = RunReport::new(config, entries);
            let ok = report.all_passed();
            (render(&report, cli.format), ok)
        }
    };
    emit(&text.0, &cli.out).map_err(|e| e.to_string())?;
    Ok(text.1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
