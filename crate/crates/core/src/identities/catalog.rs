//! Every identity as printed, transcribed literally.
//!
//! A family's first printed expression is its canonical one; the remaining
//! printed expressions are audited against the `S_3` orbit of that one.
//! Corollaries are checked against their parent family at the specialized
//! weights.

use super::ast::{b, parse_wmono, res, s, single, sum2, sum3, IdentityExpr, WMono};
use crate::error::{QsymError, Result};
use crate::series::LambdaFamily;
use std::sync::OnceLock;

/// An extra expression that must evaluate to one of the printed ones.
#[derive(Clone, Debug)]
pub struct Aux {
    pub label: &'static str,
    pub expr: IdentityExpr,
    /// Index into [`Family::printed`].
    pub equals: usize,
}

#[derive(Clone, Debug)]
pub struct Family {
    pub id: &'static str,
    pub summary: &'static str,
    /// Size of the orbit of the canonical expression under `S_3`.
    pub expected_orbit: usize,
    pub printed: Vec<IdentityExpr>,
    pub aux: Vec<Aux>,
}

impl Family {
    pub fn canonical(&self) -> &IdentityExpr {
        &self.printed[0]
    }
}

/// Which weights a corollary sets to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    W3,
    W2W3,
}

impl Specialization {
    /// Forces the specialized slots to 1.
    pub fn apply(self, w: [u32; 3]) -> [u32; 3] {
        match self {
            Specialization::W3 => [w[0], w[1], 1],
            Specialization::W2W3 => [w[0], 1, 1],
        }
    }

    pub fn free_slots(self) -> usize {
        match self {
            Specialization::W3 => 2,
            Specialization::W2W3 => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Corollary {
    pub id: &'static str,
    pub parent: &'static str,
    pub fix: Specialization,
    /// The parent's canonical expression is multiplied by this first.
    pub rescale: WMono,
    pub printed: Vec<IdentityExpr>,
}

/// A series expansion of a quotient shape, compared with its closed form.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub id: &'static str,
    pub family: LambdaFamily,
    pub index: u32,
    pub expr: IdentityExpr,
    /// Known misprint in the surrounding derivation, reported verbatim.
    pub note: Option<&'static str>,
}

fn f1() -> Family {
    let p = vec![
        sum3([b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2", &[]), b("w1w2", "w3 y3", &[])], "w1^{l+m} w2^{k+m} w3^{k+l}"),
        sum3([b("w2w3", "w1 y1", &[]), b("w1w2", "w3 y2", &[]), b("w1w3", "w2 y3", &[])], "w1^{l+m} w3^{k+m} w2^{k+l}"),
        sum3([b("w1w3", "w2 y1", &[]), b("w2w3", "w1 y2", &[]), b("w1w2", "w3 y3", &[])], "w2^{l+m} w1^{k+m} w3^{k+l}"),
        sum3([b("w1w3", "w2 y1", &[]), b("w1w2", "w3 y2", &[]), b("w2w3", "w1 y3", &[])], "w2^{l+m} w3^{k+m} w1^{k+l}"),
        sum3([b("w1w2", "w3 y1", &[]), b("w2w3", "w1 y2", &[]), b("w1w3", "w2 y3", &[])], "w3^{l+m} w1^{k+m} w2^{k+l}"),
        sum3([b("w1w2", "w3 y1", &[]), b("w1w3", "w2 y2", &[]), b("w2w3", "w1 y3", &[])], "w3^{l+m} w2^{k+m} w1^{k+l}"),
    ];
    Family { id: "F1", summary: "three q-Bernoulli polynomials", expected_orbit: 6, printed: p, aux: vec![] }
}

fn f2() -> Family {
    let p = vec![
        sum3([b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2", &[]), s("w1w2", "w3")], "w1^{l+m} w2^{k+m} w3^{k+l-1}"),
        sum3([b("w2w3", "w1 y1", &[]), b("w1w2", "w3 y2", &[]), s("w1w3", "w2")], "w1^{l+m} w3^{k+m} w2^{k+l-1}"),
        sum3([b("w1w3", "w2 y1", &[]), b("w2w3", "w1 y2", &[]), s("w1w2", "w3")], "w2^{l+m} w1^{k+m} w3^{k+l-1}"),
        sum3([b("w1w3", "w2 y1", &[]), b("w1w2", "w3 y2", &[]), s("w2w3", "w1")], "w2^{l+m} w3^{k+m} w1^{k+l-1}"),
        sum3([b("w1w2", "w3 y1", &[]), b("w1w3", "w2 y2", &[]), s("w2w3", "w1")], "w3^{l+m} w2^{k+m} w1^{k+l-1}"),
        sum3([b("w1w2", "w3 y1", &[]), b("w2w3", "w1 y2", &[]), s("w1w3", "w2")], "w3^{l+m} w1^{k+m} w2^{k+l-1}"),
    ];
    Family { id: "F2", summary: "two polynomials and one power sum", expected_orbit: 6, printed: p, aux: vec![] }
}

fn f3() -> Family {
    let p = vec![
        sum2(b("w1w2", "w3 y1", &[]), b("w1w3", "w2 y2 + w2/w1 i", &[res("i", "w1", "w2w3")]), "w1^{n-1} w3^{n-k} w2^k"),
        sum2(b("w1w3", "w2 y1", &[]), b("w1w2", "w3 y2 + w3/w1 i", &[res("i", "w1", "w2w3")]), "w1^{n-1} w2^{n-k} w3^k"),
        sum2(b("w1w2", "w3 y1", &[]), b("w2w3", "w1 y2 + w1/w2 i", &[res("i", "w2", "w1w3")]), "w2^{n-1} w3^{n-k} w1^k"),
        sum2(b("w2w3", "w1 y1", &[]), b("w1w2", "w3 y2 + w3/w2 i", &[res("i", "w2", "w1w3")]), "w2^{n-1} w1^{n-k} w3^k"),
        sum2(b("w1w3", "w2 y1", &[]), b("w2w3", "w1 y2 + w1/w3 i", &[res("i", "w3", "w1w2")]), "w3^{n-1} w2^{n-k} w1^k"),
        sum2(b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2 + w2/w3 i", &[res("i", "w3", "w1w2")]), "w3^{n-1} w1^{n-k} w2^k"),
    ];
    Family { id: "F3", summary: "a polynomial times a residue-summed polynomial", expected_orbit: 6, printed: p, aux: vec![] }
}

fn f4() -> Family {
    let p = vec![
        sum3([b("w2w3", "w1 y1", &[]), s("w1w3", "w2"), s("w1w2", "w3")], "w1^{l+m} w2^{k+m-1} w3^{k+l-1}"),
        sum3([b("w1w3", "w2 y1", &[]), s("w1w2", "w3"), s("w2w3", "w1")], "w2^{l+m} w3^{k+m-1} w1^{k+l-1}"),
        sum3([b("w1w2", "w3 y1", &[]), s("w2w3", "w1"), s("w1w3", "w2")], "w3^{l+m} w1^{k+m-1} w2^{k+l-1}"),
    ];
    let aux = vec![
        Aux {
            label: "first printed form with l and m exchanged",
            expr: sum3([b("w2w3", "w1 y1", &[]), s("w1w2", "w3"), s("w1w3", "w2")], "w1^{l+m} w3^{k+m-1} w2^{k+l-1}"),
            equals: 0,
        },
        Aux {
            label: "second printed form with l and m exchanged",
            expr: sum3([b("w1w3", "w2 y1", &[]), s("w2w3", "w1"), s("w1w2", "w3")], "w2^{l+m} w1^{k+m-1} w3^{k+l-1}"),
            equals: 1,
        },
        Aux {
            label: "third printed form with l and m exchanged",
            expr: sum3([b("w1w2", "w3 y1", &[]), s("w1w3", "w2"), s("w2w3", "w1")], "w3^{l+m} w2^{k+m-1} w1^{k+l-1}"),
            equals: 2,
        },
    ];
    Family { id: "F4", summary: "one polynomial and two power sums", expected_orbit: 3, printed: p, aux }
}

fn f5() -> Family {
    let p = vec![
        sum2(b("w1w3", "w2 y1 + w2/w1 i", &[res("i", "w1", "w2w3")]), s("w1w2", "w3"), "w1^{n-1} w2^{n-k} w3^{k-1}"),
        sum2(b("w1w2", "w3 y1 + w3/w1 i", &[res("i", "w1", "w2w3")]), s("w1w3", "w2"), "w1^{n-1} w3^{n-k} w2^{k-1}"),
        sum2(b("w2w3", "w1 y1 + w1/w2 i", &[res("i", "w2", "w1w3")]), s("w1w2", "w3"), "w2^{n-1} w1^{n-k} w3^{k-1}"),
        sum2(b("w1w2", "w3 y1 + w3/w1 i", &[res("i", "w2", "w1w3")]), s("w2w3", "w1"), "w2^{n-1} w3^{n-k} w1^{k-1}"),
        sum2(b("w2w3", "w1 y1 + w1/w3 i", &[res("i", "w3", "w1w2")]), s("w1w3", "w2"), "w3^{n-1} w1^{n-k} w2^{k-1}"),
        sum2(b("w1w3", "w2 y1 + w2/w3 i", &[res("i", "w3", "w1w2")]), s("w2w3", "w1"), "w3^{n-1} w2^{n-k} w1^{k-1}"),
    ];
    Family { id: "F5", summary: "a residue-summed polynomial times a power sum", expected_orbit: 6, printed: p, aux: vec![] }
}

fn f6() -> Family {
    let p = vec![
        single(
            b("w1w2", "w3 y1 + w3/w1 i + w3/w2 j", &[res("i", "w1", "w2w3"), res("j", "w2", "w1w3")]),
            "(w1 w2)^{n-1}",
        ),
        single(
            b("w2w3", "w1 y1 + w1/w2 i + w1/w3 j", &[res("i", "w2", "w1w3"), res("j", "w3", "w1w2")]),
            "(w2 w3)^{n-1}",
        ),
        single(
            b("w1w3", "w2 y1 + w2/w3 i + w2/w1 j", &[res("i", "w3", "w1w2"), res("j", "w1", "w2w3")]),
            "(w3 w1)^{n-1}",
        ),
    ];
    Family { id: "F6", summary: "a doubly residue-summed polynomial", expected_orbit: 3, printed: p, aux: vec![] }
}

fn f7() -> Family {
    let p = vec![
        sum3([b("w3", "w1 y", &[]), b("w1", "w2 y", &[]), b("w2", "w3 y", &[])], "w3^k w1^l w2^m"),
        sum3([b("w2", "w1 y", &[]), b("w1", "w3 y", &[]), b("w3", "w2 y", &[])], "w2^k w1^l w3^m"),
    ];
    Family { id: "F7", summary: "three polynomials in one shared variable", expected_orbit: 2, printed: p, aux: vec![] }
}

fn f8() -> Family {
    let p = vec![
        sum3([s("w3", "w1"), s("w1", "w2"), s("w2", "w3")], "w3^{k-1} w1^{l-1} w2^{m-1}"),
        sum3([s("w2", "w1"), s("w1", "w3"), s("w3", "w2")], "w2^{k-1} w1^{l-1} w3^{m-1}"),
    ];
    let aux = vec![
        Aux {
            label: "cyclic relabelling k->l->m of the first form",
            expr: sum3([s("w1", "w2"), s("w2", "w3"), s("w3", "w1")], "w1^{k-1} w2^{l-1} w3^{m-1}"),
            equals: 0,
        },
        Aux {
            label: "cyclic relabelling k->m->l of the first form",
            expr: sum3([s("w2", "w3"), s("w3", "w1"), s("w1", "w2")], "w2^{k-1} w3^{l-1} w1^{m-1}"),
            equals: 0,
        },
        Aux {
            label: "cyclic relabelling k->l->m of the second form",
            expr: sum3([s("w1", "w3"), s("w3", "w2"), s("w2", "w1")], "w1^{k-1} w3^{l-1} w2^{m-1}"),
            equals: 1,
        },
        Aux {
            label: "cyclic relabelling k->m->l of the second form",
            expr: sum3([s("w3", "w2"), s("w2", "w1"), s("w1", "w3")], "w3^{k-1} w2^{l-1} w1^{m-1}"),
            equals: 1,
        },
    ];
    Family { id: "F8", summary: "three power sums", expected_orbit: 2, printed: p, aux }
}

pub fn families() -> &'static [Family] {
    static F: OnceLock<Vec<Family>> = OnceLock::new();
    F.get_or_init(|| vec![f1(), f2(), f3(), f4(), f5(), f6(), f7(), f8()])
}

pub fn family(id: &str) -> Result<&'static Family> {
    families().iter().find(|f| f.id == id).ok_or_else(|| QsymError::UnknownId(id.into()))
}

fn corollary_list() -> Vec<Corollary> {
    use Specialization::*;
    let one = WMono::ONE;
    vec![
        Corollary {
            id: "F2@w3=1",
            parent: "F2",
            fix: W3,
            rescale: one,
            printed: vec![
                sum2(b("w2", "w1 y1", &[]), b("w1", "w2 y2", &[]), "w1^{n-k} w2^k"),
                sum2(b("w1", "w2 y1", &[]), b("w2", "w1 y2", &[]), "w2^{n-k} w1^k"),
                sum3([b("w1w2", "y1", &[]), b("w1", "w2 y2", &[]), s("w2", "w1")], "w2^{k+m} w1^{k+l-1}"),
                sum3([b("w1", "w2 y1", &[]), b("w1w2", "y2", &[]), s("w2", "w1")], "w2^{l+m} w1^{k+l-1}"),
                sum3([b("w1w2", "y1", &[]), b("w2", "w1 y2", &[]), s("w1", "w2")], "w1^{k+m} w2^{k+l-1}"),
                sum3([b("w2", "w1 y1", &[]), b("w1w2", "y2", &[]), s("w1", "w2")], "w1^{l+m} w2^{k+l-1}"),
            ],
        },
        Corollary {
            id: "F2@w2=w3=1",
            parent: "F2",
            fix: W2W3,
            rescale: one,
            printed: vec![
                sum2(b("1", "w1 y1", &[]), b("w1", "y2", &[]), "w1^{n-k}"),
                sum2(b("w1", "y1", &[]), b("1", "w1 y2", &[]), "w1^k"),
                sum3([b("w1", "y1", &[]), b("w1", "y2", &[]), s("1", "w1")], "w1^{k+l-1}"),
            ],
        },
        Corollary {
            id: "F3@w3=1",
            parent: "F3",
            fix: W3,
            rescale: one,
            printed: vec![
                sum2(b("w2", "w1 y1", &[]), b("w1", "w2 y2", &[]), "w1^{n-k} w2^k"),
                sum2(b("w1", "w2 y1", &[]), b("w2", "w1 y2", &[]), "w2^{n-k} w1^k"),
                sum2(b("w1w2", "y1", &[]), b("w1", "w2 y2 + w2/w1 i", &[res("i", "w1", "w2")]), "w1^{n-1} w2^k"),
                sum2(b("w1", "w2 y1", &[]), b("w1w2", "y2 + i/w1", &[res("i", "w1", "w2")]), "w1^{n-1} w2^{n-k}"),
                sum2(b("w1w2", "y1", &[]), b("w2", "w1 y2 + w1/w2 i", &[res("i", "w2", "w1")]), "w2^{n-1} w1^k"),
                sum2(b("w2", "w1 y1", &[]), b("w1w2", "y2 + i/w2", &[res("i", "w2", "w1")]), "w2^{n-1} w1^{n-k}"),
            ],
        },
        Corollary {
            id: "F3@w2=w3=1",
            parent: "F3",
            fix: W2W3,
            rescale: one,
            printed: vec![
                sum2(b("w1", "y1", &[]), b("1", "w1 y2", &[]), "w1^k"),
                sum2(b("w1", "y2", &[]), b("1", "w1 y1", &[]), "w1^k"),
                sum2(b("w1", "y1", &[]), b("w1", "y2 + i/w1", &[res("i", "w1", "1")]), "w1^{n-1}"),
            ],
        },
        Corollary {
            id: "F4@w3=1",
            parent: "F4",
            fix: W3,
            rescale: one,
            printed: vec![
                sum2(b("w2", "w1 y1", &[]), s("w1", "w2"), "w1^{n-k} w2^{k-1}"),
                sum2(b("w1", "w2 y1", &[]), s("w2", "w1"), "w2^{n-k} w1^{k-1}"),
                sum3([b("w1w2", "y1", &[]), s("w2", "w1"), s("w1", "w2")], "w1^{k+m-1} w2^{k+l-1}"),
            ],
        },
        Corollary {
            id: "F4@w2=w3=1",
            parent: "F4",
            fix: W2W3,
            rescale: one,
            printed: vec![single(b("1", "w1 y1", &[]), ""), sum2(b("w1", "y1", &[]), s("1", "w1"), "w1^{k-1}")],
        },
        Corollary {
            id: "F5@w3=1",
            parent: "F5",
            fix: W3,
            rescale: one,
            printed: vec![
                single(b("w1", "w2 y1 + w2/w1 i", &[res("i", "w1", "w2")]), "w1^{n-1}"),
                single(b("w2", "w1 y1 + w1/w2 i", &[res("i", "w2", "w1")]), "w2^{n-1}"),
                sum2(b("w1", "w2 y1", &[]), s("w2", "w1"), "w2^{n-k} w1^{k-1}"),
                sum2(b("w2", "w1 y1", &[]), s("w1", "w2"), "w1^{n-k} w2^{k-1}"),
                sum2(b("w1w2", "y1 + i/w1", &[res("i", "w1", "w2")]), s("w1", "w2"), "w1^{n-1} w2^{k-1}"),
                sum2(b("w1w2", "y1 + i/w2", &[res("i", "w2", "w1")]), s("w2", "w1"), "w2^{n-1} w1^{k-1}"),
            ],
        },
        Corollary {
            id: "F5@w2=w3=1",
            parent: "F5",
            fix: W2W3,
            rescale: one,
            printed: vec![
                single(b("1", "w1 y1", &[]), ""),
                single(b("w1", "y1 + i/w1", &[res("i", "w1", "1")]), "w1^{n-1}"),
                sum2(b("w1", "y1", &[]), s("1", "w1"), "w1^{k-1}"),
            ],
        },
        Corollary {
            id: "F6@w3=1",
            parent: "F6",
            fix: W3,
            rescale: one,
            printed: vec![
                single(b("w1", "w2 y1 + w2/w1 j", &[res("j", "w1", "w2")]), "w1^{n-1}"),
                single(b("w2", "w1 y1 + w1/w2 i", &[res("i", "w2", "w1")]), "w2^{n-1}"),
                single(b("w1w2", "y1 + i/w1 + j/w2", &[res("i", "w1", "w2"), res("j", "w2", "w1")]), "(w1 w2)^{n-1}"),
            ],
        },
        Corollary {
            id: "F8@w3=1",
            parent: "F8",
            fix: W3,
            rescale: parse_wmono("w1w2").unwrap(),
            printed: vec![
                sum2(s("w1", "w2"), s("1", "w1"), "w1^k"),
                sum2(s("w2", "w1"), s("1", "w2"), "w2^k"),
            ],
        },
    ]
}

pub fn corollaries() -> &'static [Corollary] {
    static C: OnceLock<Vec<Corollary>> = OnceLock::new();
    C.get_or_init(corollary_list)
}

pub fn corollary(id: &str) -> Result<&'static Corollary> {
    corollaries().iter().find(|c| c.id == id).ok_or_else(|| QsymError::UnknownId(id.into()))
}

/// The eight equal expressions in `y1` at `w3 = 1`.
pub fn intro_chain() -> &'static [IdentityExpr] {
    static C: OnceLock<Vec<IdentityExpr>> = OnceLock::new();
    C.get_or_init(|| {
        vec![
            sum2(b("w2", "w1 y1", &[]), s("w1", "w2"), "w1^{n-k} w2^{k-1}"),
            sum2(b("w1", "w2 y1", &[]), s("w2", "w1"), "w2^{n-k} w1^{k-1}"),
            single(b("w1", "w2 y1 + w2/w1 i", &[res("i", "w1", "w2")]), "w1^{n-1}"),
            single(b("w2", "w1 y1 + w1/w2 i", &[res("i", "w2", "w1")]), "w2^{n-1}"),
            sum3([b("w1w2", "y1", &[]), s("w2", "w1"), s("w1", "w2")], "w1^{k+m-1} w2^{k+l-1}"),
            sum2(b("w1w2", "y1 + i/w1", &[res("i", "w1", "w2")]), s("w1", "w2"), "w1^{n-1} w2^{k-1}"),
            sum2(b("w1w2", "y1 + i/w2", &[res("i", "w2", "w1")]), s("w2", "w1"), "w2^{n-1} w1^{k-1}"),
            single(b("w1w2", "y1 + i/w1 + j/w2", &[res("i", "w1", "w2"), res("j", "w2", "w1")]), "(w1 w2)^{n-1}"),
        ]
    })
}

fn expansion_list() -> Vec<Expansion> {
    use LambdaFamily::*;
    let fam = |i: usize| families()[i].printed[0].clone();
    vec![
        Expansion { id: "L23.0", family: L23, index: 0, expr: fam(0), note: None },
        Expansion { id: "L23.1", family: L23, index: 1, expr: fam(1), note: None },
        Expansion {
            id: "L23.1r",
            family: L23,
            index: 1,
            expr: sum2(b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2 + w2/w3 i", &[res("i", "w3", "w1w2")]), "w3^{n-1} w1^{n-k} w2^k"),
            note: None,
        },
        Expansion { id: "L23.2", family: L23, index: 2, expr: fam(3), note: None },
        Expansion {
            id: "L23.2r",
            family: L23,
            index: 2,
            expr: sum2(b("w2w3", "w1 y1 + w1/w2 i", &[res("i", "w2", "w1w3")]), s("w1w2", "w3"), "w2^{n-1} w1^{n-k} w3^{k-1}"),
            note: None,
        },
        Expansion {
            id: "L23.2rr",
            family: L23,
            index: 2,
            expr: single(
                b("w2w3", "w1 y1 + w1/w2 i + w1/w3 j", &[res("i", "w2", "w1w3"), res("j", "w3", "w1w2")]),
                "(w2 w3)^{n-1}",
            ),
            note: None,
        },
        Expansion {
            id: "L23.3",
            family: L23,
            index: 3,
            expr: sum3([s("w2w3", "w1"), s("w1w3", "w2"), s("w1w2", "w3")], "w1^{l+m-1} w2^{k+m-1} w3^{k+l-1}"),
            note: None,
        },
        Expansion {
            id: "L12.0",
            family: L12,
            index: 0,
            expr: sum3([b("w1", "w2 y", &[]), b("w2", "w3 y", &[]), b("w3", "w1 y", &[])], "w1^k w2^l w3^m"),
            note: Some("first factor's series is printed as a sum over n with summand in k; read as a sum over k"),
        },
        Expansion {
            id: "L12.1",
            family: L12,
            index: 1,
            expr: sum3([s("w1", "w2"), s("w2", "w3"), s("w3", "w1")], "w1^{k-1} w2^{l-1} w3^{m-1}"),
            note: None,
        },
    ]
}

pub fn expansions() -> &'static [Expansion] {
    static E: OnceLock<Vec<Expansion>> = OnceLock::new();
    E.get_or_init(expansion_list)
}

pub fn expansion(id: &str) -> Result<&'static Expansion> {
    expansions().iter().find(|e| e.id == id).ok_or_else(|| QsymError::UnknownId(id.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::ast::validate;

    #[test]
    fn catalog_is_well_formed() {
        for f in families() {
            assert!([1, 2, 3, 6].contains(&f.expected_orbit));
            for e in f.printed.iter().chain(f.aux.iter().map(|a| &a.expr)) {
                validate(e).unwrap();
            }
        }
        for c in corollaries() {
            family(c.parent).unwrap();
            c.printed.iter().for_each(|e| validate(e).unwrap());
        }
        assert_eq!(intro_chain().len(), 8);
        assert_eq!(expansions().len(), 9);
        assert!(family("F9").is_err());
    }
}
