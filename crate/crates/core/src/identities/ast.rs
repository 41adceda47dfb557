//! Expression trees for the symmetry identities and the `S_3` action on them.
//!
//! Every identity side has the shape
//!
//! ```text
//! coeff * W_const * sum_{k_1 + ... + k_r = n} (n; k_1, ..., k_r) prod_p f_p(k_p) s_p^{k_p}
//! ```
//!
//! with `r` in `1..=3`, each `W_const` and `s_p` a monomial in `w1, w2, w3`
//! (integer exponents), and each `f_p(k)` either a residue-summed
//! `q`-Bernoulli polynomial or a `q`-power sum. Binomial sums are the `r = 2`
//! case and an unsummed `B_{n,...}` is `r = 1`.

use crate::algebra::{Rational, Var};
use crate::error::{QsymError, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

/// A permutation of the weight slots: slot `i` is sent to `perm[i]`.
pub type Perm = [usize; 3];

/// All six permutations, identity first.
pub const S3: [Perm; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `w1^a w2^b w3^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WMono(pub [i8; 3]);

impl WMono {
    pub const ONE: WMono = WMono([0, 0, 0]);

    pub fn slot(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        WMono(e)
    }

    pub fn mul(self, o: WMono) -> WMono {
        WMono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn pow(self, k: i8) -> WMono {
        WMono([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    pub fn permute(self, p: &Perm) -> WMono {
        let mut e = [0; 3];
        for i in 0..3 {
            e[p[i]] = self.0[i];
        }
        WMono(e)
    }

    pub fn eval(self, w: &[u32; 3]) -> Rational {
        let mut r = Rational::one();
        for i in 0..3 {
            let b = Rational::from_integer(BigInt::from(w[i]));
            r *= b.pow(self.0[i] as i32);
        }
        r
    }

    /// Value as a positive integer; the monomial must have no negative exponent.
    pub fn eval_int(self, w: &[u32; 3]) -> u32 {
        assert!(self.0.iter().all(|&e| e >= 0), "integer weight monomial expected");
        (0..3).map(|i| w[i].pow(self.0[i] as u32)).product()
    }

    pub fn is_one(self) -> bool {
        self == WMono::ONE
    }
}

impl fmt::Display for WMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |pos: bool| {
            let mut s = String::new();
            for i in 0..3 {
                let e = self.0[i];
                if (pos && e > 0) || (!pos && e < 0) {
                    s.push_str(&format!("w{}", i + 1));
                    if e.abs() > 1 {
                        s.push_str(&format!("^{}", e.abs()));
                    }
                }
            }
            s
        };
        let (num, den) = (side(true), side(false));
        match (num.is_empty(), den.is_empty()) {
            (true, true) => f.write_str("1"),
            (false, true) => f.write_str(&num),
            (true, false) => write!(f, "1/{den}"),
            (false, false) => write!(f, "{num}/{den}"),
        }
    }
}

/// `sum_{i < w_range} q^{qexp * i}` with the argument shifted by `shift * i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub range: usize,
    pub qexp: WMono,
    pub shift: WMono,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `sum_res q^{...} B_{k, q^base}(coeff * var + sum shift * i)`.
    B { base: WMono, var: Var, coeff: WMono, residues: Vec<Residue> },
    /// `S_{k, q^base}(w_bound - 1)`.
    S { base: WMono, bound: usize },
}

impl Factor {
    fn permute(&self, p: &Perm) -> Factor {
        match self {
            Factor::B { base, var, coeff, residues } => {
                let mut residues: Vec<Residue> = residues
                    .iter()
                    .map(|r| Residue { range: p[r.range], qexp: r.qexp.permute(p), shift: r.shift.permute(p) })
                    .collect();
                residues.sort();
                Factor::B { base: base.permute(p), var: *var, coeff: coeff.permute(p), residues }
            }
            Factor::S { base, bound } => Factor::S { base: base.permute(p), bound: p[*bound] },
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::B { base, var, coeff, residues } => {
                let names = ["i", "j", "h"];
                let mut sums = String::new();
                let mut qe = Vec::new();
                let mut arg = if coeff.is_one() { var.to_string() } else { format!("{coeff}*{var}") };
                for (r, name) in residues.iter().zip(names) {
                    sums.push_str(&format!("sum_{{{name}<w{}}} ", r.range + 1));
                    qe.push(format!("{}*{name}", r.qexp));
                    arg.push_str(&format!(" + {}*{name}", r.shift));
                }
                let q = if qe.is_empty() { String::new() } else { format!("q^({}) ", qe.join(" + ")) };
                write!(f, "{sums}{q}B[q^({base})]({arg})")
            }
            Factor::S { base, bound } => write!(f, "S[q^({base})](w{} - 1)", bound + 1),
        }
    }
}

/// One summation index: its factor and the weight monomial raised to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub factor: Factor,
    pub scale: WMono,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdentityExpr {
    pub coeff: Rational,
    pub wconst: WMono,
    pub parts: Vec<Part>,
}

impl IdentityExpr {
    /// Sorted parts and residues; two expressions with equal canonical
    /// forms denote the same sum. Builders keep the printed order.
    pub fn canonical(&self) -> IdentityExpr {
        let mut parts: Vec<Part> = self
            .parts
            .iter()
            .map(|p| Part { factor: p.factor.permute(&[0, 1, 2]), scale: p.scale })
            .collect();
        parts.sort();
        IdentityExpr { coeff: self.coeff.clone(), wconst: self.wconst, parts }
    }

    /// The expression with `w_i` replaced by `w_{perm[i]}`, canonicalized.
    pub fn permute(&self, p: &Perm) -> IdentityExpr {
        IdentityExpr {
            coeff: self.coeff.clone(),
            wconst: self.wconst.permute(p),
            parts: self.parts.iter().map(|x| Part { factor: x.factor.permute(p), scale: x.scale.permute(p) }).collect(),
        }
        .canonical()
    }

    /// Multiplies by a weight monomial.
    pub fn times(&self, m: WMono) -> IdentityExpr {
        IdentityExpr { wconst: self.wconst.mul(m), ..self.clone() }
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for IdentityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = ["k", "l", "m"];
        let mut s = String::new();
        if !self.coeff.is_one() {
            s.push_str(&format!("{} * ", self.coeff));
        }
        if !self.wconst.is_one() {
            s.push_str(&format!("{} * ", self.wconst));
        }
        let names: Vec<&str> = if self.parts.len() == 1 { vec!["n"] } else { idx[..self.parts.len()].to_vec() };
        if self.parts.len() > 1 {
            s.push_str(&format!("sum_{{{} = n}} ({}) ", names.join("+"), names.join(",")));
        }
        let body: Vec<String> = self
            .parts
            .iter()
            .zip(&names)
            .map(|(p, k)| {
                let f = p.factor.to_string().replacen("B[", &format!("B[{k}, "), 1).replacen("S[", &format!("S[{k}, "), 1);
                if p.scale.is_one() {
                    f
                } else {
                    format!("{f} * ({})^{k}", p.scale)
                }
            })
            .collect();
        s.push_str(&body.join(" * "));
        f.write_str(&s)
    }
}

fn slot_of(tok: &str) -> Result<usize> {
    match tok {
        "w1" => Ok(0),
        "w2" => Ok(1),
        "w3" => Ok(2),
        _ => Err(QsymError::Domain(format!("unknown weight `{tok}`"))),
    }
}

/// Splits `w1w2 w3` into slot names.
fn weight_atoms(s: &str) -> Result<Vec<usize>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    let b = s.as_bytes();
    if b.len() % 2 != 0 {
        return Err(QsymError::Domain(format!("bad weight product `{s}`")));
    }
    (0..b.len() / 2).map(|i| slot_of(&s[2 * i..2 * i + 2])).collect()
}

/// Parses `w2w3`, `w2/w1`, `1/w1` or `1`.
pub fn parse_wmono(s: &str) -> Result<WMono> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    let mut e = [0i8; 3];
    for i in weight_atoms(num)? {
        e[i] += 1;
    }
    for i in weight_atoms(den)? {
        e[i] -= 1;
    }
    Ok(WMono(e))
}

/// Parses a linear exponent like `k+l-1`, `n-k` or `2` into per-index
/// coefficients over `names` plus a constant; `n` stands for the sum of
/// all indices.
fn parse_linear(s: &str, names: &[&str]) -> Result<(Vec<i8>, i8)> {
    let mut coeffs = vec![0i8; names.len()];
    let mut c = 0i8;
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut sign = 1i8;
    let mut i = 0;
    let b = s.as_bytes();
    while i < b.len() {
        match b[i] {
            b'+' => sign = 1,
            b'-' => sign = -1,
            ch if ch.is_ascii_digit() => {
                let start = i;
                while i + 1 < b.len() && b[i + 1].is_ascii_digit() {
                    i += 1;
                }
                c += sign * s[start..=i].parse::<i8>().unwrap();
            }
            ch if ch.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < b.len() && b[i + 1].is_ascii_alphabetic() {
                    i += 1;
                }
                let name = &s[start..=i];
                match names.iter().position(|n| *n == name) {
                    Some(j) => coeffs[j] += sign,
                    None if name == "n" => {
                        for x in coeffs.iter_mut() {
                            *x += sign;
                        }
                    }
                    None => return Err(QsymError::Domain(format!("unknown index `{name}` in `{s}`"))),
                }
            }
            ch => return Err(QsymError::Domain(format!("unexpected `{}` in `{s}`", ch as char))),
        }
        i += 1;
    }
    Ok((coeffs, c))
}

/// Parses a weight factor such as `w1^{l+m} w2^{k+m} w3^{k+l-1}` or
/// `(w1 w2)^{n-1}` into per-index scales and a constant monomial.
pub fn parse_weights(s: &str, names: &[&str]) -> Result<(Vec<WMono>, WMono)> {
    let mut scales = vec![WMono::ONE; names.len()];
    let mut konst = WMono::ONE;
    let s = s.trim();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        // base: `wD` or `(wD wD ...)`
        let base: Vec<usize> = if b[i] == b'(' {
            let close = s[i..].find(')').ok_or_else(|| QsymError::Domain(format!("unbalanced `{s}`")))? + i;
            let atoms = weight_atoms(&s[i + 1..close])?;
            i = close + 1;
            atoms
        } else {
            let a = slot_of(s.get(i..i + 2).unwrap_or(""))?;
            i += 2;
            vec![a]
        };
        let (coeffs, c) = if i < b.len() && b[i] == b'^' {
            i += 1;
            let exp = if b[i] == b'{' {
                let close = s[i..].find('}').ok_or_else(|| QsymError::Domain(format!("unbalanced `{s}`")))? + i;
                let e = &s[i + 1..close];
                i = close + 1;
                e
            } else {
                let start = i;
                if b[i] == b'-' {
                    i += 1;
                }
                while i < b.len() && b[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                &s[start..i]
            };
            parse_linear(exp, names)?
        } else {
            (vec![0; names.len()], 1)
        };
        for &slot in &base {
            let unit = WMono::slot(slot);
            for (j, &k) in coeffs.iter().enumerate() {
                scales[j] = scales[j].mul(unit.pow(k));
            }
            konst = konst.mul(unit.pow(c));
        }
    }
    Ok((scales, konst))
}

/// Residue summation attached to a `B` factor.
#[derive(Clone, Debug)]
pub struct ResidueSpec {
    pub symbol: &'static str,
    pub range: &'static str,
    pub qexp: &'static str,
}

/// Builds `sum_res q^{...} B_{., q^base}(arg)` from printed text, e.g.
/// `b("w1w3", "w2 y2 + w2/w1 i", &[res("i", "w1", "w2w3")])`.
pub fn b(base: &str, arg: &str, residues: &[ResidueSpec]) -> Factor {
    try_b(base, arg, residues).unwrap_or_else(|e| panic!("bad B factor `{arg}`: {e}"))
}

fn try_b(base: &str, arg: &str, residues: &[ResidueSpec]) -> Result<Factor> {
    let mut var = None;
    let mut coeff = WMono::ONE;
    let mut res = Vec::new();
    for term in arg.split('+').map(str::trim) {
        let sym = residues.iter().find(|r| term == r.symbol || term.ends_with(&format!(" {}", r.symbol)) || term.starts_with(&format!("{}/", r.symbol)));
        if let Some(r) = sym {
            let shift = if term == r.symbol {
                WMono::ONE
            } else if let Some(rest) = term.strip_prefix(&format!("{}/", r.symbol)) {
                parse_wmono(&format!("1/{rest}"))?
            } else {
                parse_wmono(term[..term.len() - r.symbol.len()].trim())?
            };
            res.push(Residue { range: slot_of(r.range)?, qexp: parse_wmono(r.qexp)?, shift });
            continue;
        }
        let (c, v) = match term.rsplit_once(' ') {
            Some((c, v)) => (c, v),
            None => ("1", term),
        };
        let v = Var::parse(v).ok_or_else(|| QsymError::Domain(format!("unknown variable in `{term}`")))?;
        if var.replace(v).is_some() {
            return Err(QsymError::Domain("two variables in one argument".into()));
        }
        coeff = parse_wmono(c)?;
    }
    if res.len() != residues.len() {
        return Err(QsymError::Domain("unused residue sum".into()));
    }
    res.sort();
    let var = var.ok_or_else(|| QsymError::Domain("argument without variable".into()))?;
    Ok(Factor::B { base: parse_wmono(base)?, var, coeff, residues: res })
}

pub fn res(symbol: &'static str, range: &'static str, qexp: &'static str) -> ResidueSpec {
    ResidueSpec { symbol, range, qexp }
}

/// `S_{., q^base}(w_bound - 1)`.
pub fn s(base: &str, bound: &str) -> Factor {
    Factor::S { base: parse_wmono(base).unwrap(), bound: slot_of(bound).unwrap() }
}

fn assemble(factors: Vec<Factor>, names: &[&str], weights: &str) -> IdentityExpr {
    let (scales, wconst) = parse_weights(weights, names).unwrap_or_else(|e| panic!("bad weights `{weights}`: {e}"));
    let parts = factors.into_iter().zip(scales).map(|(factor, scale)| Part { factor, scale }).collect();
    IdentityExpr { coeff: Rational::one(), wconst, parts }
}

/// `sum_{k+l+m=n} (n; k,l,m) f_k f_l f_m * weights`.
pub fn sum3(f: [Factor; 3], weights: &str) -> IdentityExpr {
    assemble(f.into(), &["k", "l", "m"], weights)
}

/// `sum_k C(n,k) f_k g_{n-k} * weights`; `weights` may use `k` and `n`.
pub fn sum2(fk: Factor, fnk: Factor, weights: &str) -> IdentityExpr {
    // `n` distributes over both indices, so `n - k` lands on the second.
    assemble(vec![fk, fnk], &["k", "nk"], &weights.replace("n-k", "nk"))
}

/// Unsummed `f_n * weights`.
pub fn single(f: Factor, weights: &str) -> IdentityExpr {
    assemble(vec![f], &["n"], weights)
}

/// Rejects expressions whose weights make no sense at evaluation time.
pub fn validate(e: &IdentityExpr) -> Result<()> {
    if e.parts.is_empty() || e.parts.len() > 3 {
        return Err(QsymError::Domain("expressions have one to three parts".into()));
    }
    for p in &e.parts {
        let base = match &p.factor {
            Factor::B { base, .. } | Factor::S { base, .. } => base,
        };
        if base.0.iter().any(|&x| x < 0) {
            return Err(QsymError::Domain(format!("base q^({base}) is not a polynomial power")));
        }
        if let Factor::B { residues, .. } = &p.factor {
            if residues.iter().any(|r| r.qexp.0.iter().any(|&x| x < 0)) {
                return Err(QsymError::Domain("residue q-exponent must be integral".into()));
            }
        }
    }
    if e.coeff.is_negative() {
        return Err(QsymError::Domain("negative prefactor".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_strings() {
        let (sc, k) = parse_weights("w1^{l+m} w2^{k+m} w3^{k+l-1}", &["k", "l", "m"]).unwrap();
        assert_eq!(sc, vec![WMono([0, 1, 1]), WMono([1, 0, 1]), WMono([1, 1, 0])]);
        assert_eq!(k, WMono([0, 0, -1]));
        let (sc, k) = parse_weights("(w1 w2)^{n-1}", &["n"]).unwrap();
        assert_eq!(sc, vec![WMono([1, 1, 0])]);
        assert_eq!(k, WMono([-1, -1, 0]));
        let (sc, k) = parse_weights("w1^{n-1} w3^{nk} w2^k", &["k", "nk"]).unwrap();
        assert_eq!(sc, vec![WMono([1, 1, 0]), WMono([1, 0, 1])]);
        assert_eq!(k, WMono([-1, 0, 0]));
        assert_eq!(parse_wmono("w2/w1").unwrap(), WMono([-1, 1, 0]));
        assert_eq!(parse_wmono("w1 w3").unwrap(), WMono([1, 0, 1]));
    }

    #[test]
    fn binomial_weights() {
        let e = sum2(b("w1w2", "w3 y1", &[]), b("w1w3", "w2 y2 + w2/w1 i", &[res("i", "w1", "w2w3")]), "w1^{n-1} w3^{n-k} w2^k");
        let fk = e.parts.iter().find(|p| matches!(&p.factor, Factor::B { var: Var::Y1, .. })).unwrap();
        assert_eq!(fk.scale, WMono([1, 1, 0]));
        let fnk = e.parts.iter().find(|p| matches!(&p.factor, Factor::B { var: Var::Y2, .. })).unwrap();
        assert_eq!(fnk.scale, WMono([1, 0, 1]));
        assert_eq!(e.wconst, WMono([-1, 0, 0]));
    }

    #[test]
    fn residue_arguments() {
        let f = b("w1w2", "y1 + i/w1 + j/w2", &[res("i", "w1", "w2"), res("j", "w2", "w1")]);
        match f {
            Factor::B { coeff, residues, .. } => {
                assert!(coeff.is_one());
                assert_eq!(residues.len(), 2);
                assert!(residues.iter().any(|r| r.shift == WMono([-1, 0, 0]) && r.qexp == WMono([0, 1, 0])));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn permutation_acts() {
        let e = sum3([b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2", &[]), b("w1w2", "w3 y3", &[])], "w1^{l+m} w2^{k+m} w3^{k+l}");
        let e = e.canonical();
        assert_eq!(e.permute(&S3[0]), e);
        let swapped = e.permute(&[0, 2, 1]);
        assert_ne!(swapped, e);
        assert_eq!(swapped.permute(&[0, 2, 1]), e);
    }
}
