//! Verification of families, corollaries and the `y1` chain.

use super::ast::{IdentityExpr, Part, S3};
use super::catalog::{intro_chain, Corollary, Family};
use super::eval::{evaluate_naive, evaluate_upto};
use crate::algebra::{LogPoly, MPoly, Monomial};
use crate::error::Result;

/// First place where two values disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    /// The expression whose value differs from the reference.
    pub label: String,
    pub monomial: String,
    pub expected: String,
    pub found: String,
}

/// Outcome of one check at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub id: String,
    /// Named integer parameters, in a fixed order.
    pub params: Vec<(String, i64)>,
    pub passed: bool,
    pub detail: String,
    /// Informational findings; they never change `passed`.
    pub flags: Vec<String>,
    pub mismatch: Option<Mismatch>,
}

impl Report {
    pub fn new(suite: &str, id: &str, params: &[(&str, i64)]) -> Self {
        Report {
            suite: suite.into(),
            id: id.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            passed: true,
            detail: String::new(),
            flags: Vec::new(),
            mismatch: None,
        }
    }

    /// Records the first mismatch only.
    pub fn fail(&mut self, m: Mismatch) {
        if self.passed {
            self.detail = format!(
                "{} differs at n={} in the coefficient of {}: expected {}, found {}",
                m.label, m.n, m.monomial, m.expected, m.found
            );
            self.mismatch = Some(m);
        }
        self.passed = false;
    }

    pub fn fail_with(&mut self, detail: String) {
        if self.passed {
            self.detail = detail;
        }
        self.passed = false;
    }

    /// Compares `found` with `expected`, failing on the lowest differing monomial.
    pub fn compare(&mut self, n: usize, label: &str, expected: &MPoly, found: &MPoly) -> bool {
        match expected.first_difference(found) {
            None => true,
            Some((m, e, f)) => {
                self.fail(Mismatch {
                    n,
                    label: label.into(),
                    monomial: m.to_string(),
                    expected: e.render(),
                    found: f.render(),
                });
                false
            }
        }
    }
}

/// `+1` added to one coefficient of one variant, for testing the checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    /// Index into the generated variants.
    pub variant: usize,
    pub n: usize,
    pub monomial: Monomial,
}

/// Distinct canonical images of `e` under `S_3`, in the order of [`S3`].
pub fn orbit(e: &IdentityExpr) -> Vec<IdentityExpr> {
    let mut out: Vec<IdentityExpr> = Vec::new();
    for p in &S3 {
        let img = e.permute(p);
        if !out.contains(&img) {
            out.push(img);
        }
    }
    out
}

/// Structural disagreement between a printed expression and the nearest
/// element of the orbit, or `None` if it lies in the orbit.
pub fn audit_printed(e: &IdentityExpr, orbit: &[IdentityExpr]) -> Option<String> {
    let c = e.canonical();
    if orbit.contains(&c) {
        return None;
    }
    let missing = |a: &IdentityExpr, b: &IdentityExpr| -> Vec<Part> {
        let mut rest = b.parts.clone();
        let mut out = Vec::new();
        for p in &a.parts {
            match rest.iter().position(|x| x == p) {
                Some(i) => {
                    rest.remove(i);
                }
                None => out.push(p.clone()),
            }
        }
        out
    };
    let cost = |o: &IdentityExpr| missing(&c, o).len() + usize::from(o.wconst != c.wconst);
    let near = orbit.iter().min_by_key(|o| cost(o))?;
    let mut parts = Vec::new();
    for (a, b) in missing(&c, near).iter().zip(missing(near, &c)) {
        parts.push(format!("`{}` where the group action gives `{}`", a.factor, b.factor));
    }
    if near.wconst != c.wconst {
        parts.push(format!("constant weight {} where the group action gives {}", c.wconst, near.wconst));
    }
    Some(parts.join("; "))
}

/// Printed expressions outside the orbit, as `(index, description)`.
pub fn typo_flags(f: &Family) -> Vec<(usize, String)> {
    let o = orbit(f.canonical());
    f.printed.iter().enumerate().filter_map(|(i, e)| audit_printed(e, &o).map(|d| (i, d))).collect()
}

/// Distinct values of the generated variants at `n`.
pub fn generate_variants(f: &Family, n: usize, w: &[u32; 3]) -> Result<Vec<MPoly>> {
    let mut out: Vec<MPoly> = Vec::new();
    for e in orbit(f.canonical()) {
        let v = evaluate_upto(&e, n, w)?.swap_remove(n);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

fn wparams(n_max: usize, w: &[u32; 3]) -> Vec<(&'static str, i64)> {
    vec![("n_max", n_max as i64), ("w1", w[0] as i64), ("w2", w[1] as i64), ("w3", w[2] as i64)]
}

/// Checks that every generated variant and every printed expression outside
/// the typo flags agree with the canonical expression for all `n <= n_max`.
pub fn verify_family(f: &Family, n_max: usize, w: &[u32; 3], fault: Option<Fault>) -> Result<Report> {
    let mut rep = Report::new("family", f.id, &wparams(n_max, w));
    let variants = orbit(f.canonical());
    let mut values: Vec<Vec<MPoly>> = variants.iter().map(|e| evaluate_upto(e, n_max, w)).collect::<Result<_>>()?;
    if let Some(ft) = fault {
        let v = &mut values[ft.variant][ft.n];
        v.add_term(ft.monomial, &LogPoly::one());
    }
    let (reference, others) = values.split_first().unwrap();
    for (j, vals) in others.iter().enumerate() {
        for n in 0..=n_max {
            rep.compare(n, &format!("variant {} against variant 1", j + 2), &reference[n], &vals[n]);
        }
    }
    let flags = typo_flags(f);
    for (i, e) in f.printed.iter().enumerate() {
        let vals = evaluate_upto(e, n_max, w)?;
        let flagged = flags.iter().find(|(k, _)| *k == i);
        match flagged {
            None => {
                for n in 0..=n_max {
                    rep.compare(n, &format!("printed expression {}", i + 1), &reference[n], &vals[n]);
                }
            }
            Some((_, d)) => {
                let agrees = (0..=n_max).all(|n| reference[n] == vals[n]);
                let verdict = if agrees { "its value still agrees here" } else { "its value differs here" };
                rep.flags.push(format!("printed expression {}: {d}; {verdict}", i + 1));
            }
        }
    }
    if rep.passed {
        rep.detail = format!(
            "{} generated variants and {} printed expressions agree for n <= {n_max}",
            variants.len(),
            f.printed.len() - flags.len()
        );
    }
    Ok(rep)
}

/// Evaluates the auxiliary expressions literally and compares them with the
/// printed ones they are claimed to equal.
pub fn verify_aux(f: &Family, n_max: usize, w: &[u32; 3]) -> Result<Report> {
    let mut rep = Report::new("aux", f.id, &wparams(n_max, w));
    for a in &f.aux {
        let target = evaluate_upto(&f.printed[a.equals], n_max, w)?;
        for (n, t) in target.iter().enumerate() {
            rep.compare(n, a.label, t, &evaluate_naive(&a.expr, n, w)?);
        }
    }
    if rep.passed {
        rep.detail = format!("{} auxiliary expressions agree for n <= {n_max}", f.aux.len());
    }
    Ok(rep)
}

/// Checks the printed corollary expressions against the parent family's
/// canonical expression at the specialized weights.
pub fn verify_corollary(c: &Corollary, parent: &Family, n_max: usize, w: &[u32; 3]) -> Result<Report> {
    let w = c.fix.apply(*w);
    let mut params = vec![("n_max", n_max as i64), ("w1", w[0] as i64)];
    if c.fix.free_slots() == 2 {
        params.push(("w2", w[1] as i64));
    }
    let mut rep = Report::new("corollary", c.id, &params);
    let reference = evaluate_upto(&parent.canonical().times(c.rescale), n_max, &w)?;
    for (i, e) in c.printed.iter().enumerate() {
        let vals = evaluate_upto(e, n_max, &w)?;
        for n in 0..=n_max {
            rep.compare(n, &format!("printed expression {}", i + 1), &reference[n], &vals[n]);
        }
    }
    if rep.passed {
        rep.detail = format!("{} printed expressions equal {} specialized, n <= {n_max}", c.printed.len(), parent.id);
    }
    Ok(rep)
}

/// The eight `y1` expressions at `(w1, w2, 1)` are pairwise equal.
pub fn verify_intro_chain(n_max: usize, w1: u32, w2: u32) -> Result<Report> {
    let w = [w1, w2, 1];
    let mut rep = Report::new("chain", "y1-chain", &[("n_max", n_max as i64), ("w1", w1 as i64), ("w2", w2 as i64)]);
    let chain = intro_chain();
    let reference = evaluate_upto(&chain[0], n_max, &w)?;
    for (i, e) in chain.iter().enumerate().skip(1) {
        let vals = evaluate_upto(e, n_max, &w)?;
        for n in 0..=n_max {
            rep.compare(n, &format!("expression {}", i + 1), &reference[n], &vals[n]);
        }
    }
    if rep.passed {
        rep.detail = format!("all {} expressions agree for n <= {n_max}", chain.len());
    }
    Ok(rep)
}

/// Orbit sizes of every family against the expected counts.
pub fn variant_census(families: &[Family]) -> Report {
    let mut rep = Report::new("census", "orbits", &[]);
    let mut seen = Vec::new();
    for f in families {
        let k = orbit(f.canonical()).len();
        seen.push(format!("{}={k}", f.id));
        if k != f.expected_orbit || 6 % k != 0 {
            rep.fail_with(format!("{} has {k} distinct images, expected {}", f.id, f.expected_orbit));
        }
    }
    if rep.passed {
        rep.detail = format!("orbit sizes {}", seen.join(" "));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::catalog::{corollary, family, families};

    #[test]
    fn census_matches() {
        let r = variant_census(families());
        assert!(r.passed, "{}", r.detail);
    }

    #[test]
    fn only_the_known_misprint_is_flagged() {
        for f in families() {
            let flags = typo_flags(f);
            if f.id == "F5" {
                assert_eq!(flags.len(), 1);
                assert_eq!(flags[0].0, 3);
                assert!(flags[0].1.contains("w3/w2"), "{}", flags[0].1);
            } else {
                assert!(flags.is_empty(), "{}: {flags:?}", f.id);
            }
        }
    }

    #[test]
    fn small_family_checks() {
        let r = verify_family(family("F1").unwrap(), 3, &[1, 2, 3], None).unwrap();
        assert!(r.passed, "{}", r.detail);
        let r = verify_family(family("F5").unwrap(), 2, &[2, 3, 1], None).unwrap();
        assert!(r.passed, "{}", r.detail);
        assert_eq!(r.flags.len(), 1);
    }

    #[test]
    fn fault_is_located() {
        let f = family("F1").unwrap();
        let m = Monomial([0, 0, 1, 1, 0]);
        let r = verify_family(f, 3, &[1, 2, 3], Some(Fault { variant: 2, n: 2, monomial: m })).unwrap();
        assert!(!r.passed);
        let mm = r.mismatch.unwrap();
        assert_eq!((mm.n, mm.monomial.as_str()), (2, "y1*y2"));
    }

    #[test]
    fn corollary_and_chain() {
        let c = corollary("F4@w2=w3=1").unwrap();
        let r = verify_corollary(c, family(c.parent).unwrap(), 4, &[3, 1, 1]).unwrap();
        assert!(r.passed, "{}", r.detail);
        let r = verify_intro_chain(3, 2, 3).unwrap();
        assert!(r.passed, "{}", r.detail);
    }
}
