//! Reproduction of the published kernel partitions: for each listed group,
//! every kernel is decided by brute force and the set of commutative kernels
//! is compared with the listed one.

use std::sync::Arc;
use std::time::Instant;

use crate::classify::{CaseId, Classifier, ClassifyError};
use crate::group::{realize_text, subgroup_closure, FiniteGroup, GroupError, Subgroup, DEFAULT_COSET_LIMIT};
use crate::groupring::{is_skew_commutative, GroupRingElement, GroupRingError};
use crate::orient::{enumerate_kernels, Orientation};
use crate::ring::CoeffRing;

use super::groups::{Q8, Q8_C2};
use super::Row;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

/// One listed group over one ring.
#[derive(Debug, Clone, Copy)]
pub struct Expectation {
    pub label: &'static str,
    pub presentation: &'static str,
    pub ring: &'static str,
    /// Total number of kernels, when stated.
    pub kernel_count: Option<usize>,
    pub good: &'static [&'static str],
    pub bad: &'static [&'static str],
    /// Whether `good` lists every commutative kernel.
    pub complete: bool,
    /// Case the good kernels should be classified as, for presentations that
    /// differ from the catalog's.
    pub case: Option<CaseId>,
    /// Remarks printed with the block, e.g. where a listed word was read
    /// differently.
    pub notes: &'static [&'static str],
}

const fn full(
    label: &'static str,
    presentation: &'static str,
    ring: &'static str,
    kernel_count: Option<usize>,
    good: &'static [&'static str],
    bad: &'static [&'static str],
) -> Expectation {
    Expectation {
        label,
        presentation,
        ring,
        kernel_count,
        good,
        bad,
        complete: true,
        case: None,
        notes: &[],
    }
}

const G16_8: &str = "<a,b | a^8=1, b^2=a^4, ab=ba^3>";
const G16_9: &str = "<a,b | a^8=1, b^2=a^4, ab=ba^-1>";
const G16_13: &str = "<a,b,c | a^2=b^2=c^2=1, abc=bca=cab>";
const G16_4: &str = "<a,b | a^4=b^4=1, ab=b^-1a>";
const G32_35: &str = "<a,b,c | a^4=b^4=1, c^2=a^2, ab=ba, ac=ca^-1, bc=cb^-1>";
const G32_30: &str =
    "<a,b,c,d | a^4=b^2=c^2=d^2=1, ab=ba, ac=ca, ad=dab, bc=cb, bd=db, cd=da^2c>";
const G32_31: &str = "<a,b,c | a^4=b^4=c^2=1, ab=ba, ac=ca^-1, bc=ca^2b^-1>";
const G32_24: &str = "<a,b,c | a^4=b^4=c^2=1, ab=ba, ac=ca, bc=ca^2b>";

/// Every published partition, in report order.
pub const EXPECTATIONS: &[Expectation] = &[
    full("Q8", Q8, "z", Some(3), &["a", "b", "ab"], &[]),
    full("Q8", Q8, "z/4", Some(3), &["a", "b", "ab"], &[]),
    Expectation {
        label: "Q8xC2",
        presentation: Q8_C2,
        ring: "z/4",
        kernel_count: None,
        good: &["a, b"],
        bad: &[],
        complete: false,
        case: None,
        notes: &[],
    },
    Expectation {
        label: "Q8xC2",
        presentation: Q8_C2,
        ring: "z",
        kernel_count: None,
        good: &[],
        bad: &["a, b"],
        complete: false,
        case: None,
        notes: &[],
    },
    full("G[16,8]", G16_8, "z", Some(3), &["a^2, ab"], &[]),
    full("G[16,9]", G16_9, "z/4", None, &["a^2, b", "a^2, ab"], &[]),
    full(
        "G[16,13]",
        G16_13,
        "z",
        Some(7),
        &["a, b", "a, c", "b, c"],
        &["a, bc", "b, ac", "c, ab", "ab, ac"],
    ),
    full("G[16,4]", G16_4, "z", Some(3), &["a, b^2", "ab, b^2"], &["b, a^2"]),
    full("G[16,4]", G16_4, "z/4", Some(3), &["a, b^2", "ab, b^2"], &["b, a^2"]),
    full(
        "G[32,35]",
        G32_35,
        "z/4",
        Some(7),
        &["a, c, b^2", "a, bc, b^2"],
        &["a, b", "a^2, b, c", "a^2, b, ac", "a^2, a^3b, c", "a^2, a^3b, ac"],
    ),
    full(
        "G[32,30]",
        G32_30,
        "z",
        Some(7),
        &["b, c, d"],
        &[
            "a, b, c",
            "a^2, b, c, a^3bd",
            "a, b, d",
            "a^2, b, a^3c, d",
            "a, b, a^2cd",
            "a^2, b, a^3c, a^3bd",
        ],
    ),
    Expectation {
        label: "G[32,31]",
        presentation: G32_31,
        ring: "z",
        kernel_count: Some(7),
        good: &["a, c, b^2"],
        bad: &[
            "a^2, b, c",
            "a^2, ab, c",
            "a^2, b, ac",
            "a^2, a^3b, ac",
            "a, b^2, bc",
            "a, b",
        ],
        complete: true,
        case: None,
        notes: &[
            "second bad kernel listed as <a^2, a^2b, c>, which equals <a^2, b, c>; read as <a^2, ab, c> (a and ac outside N, as the argument requires)",
            "fifth bad kernel listed as <a, b^2, b^2c>, which equals the good kernel; read as <a, b^2, bc> (c and ac outside N, as the argument requires)",
        ],
    },
    full(
        "G[32,24]",
        G32_24,
        "z",
        Some(7),
        &["b, c", "ab, c"],
        &["a, b^2, c", "a, b", "a^2, b, a^3c", "a, b^2, a^2b^3c", "a^2, a^3b, a^3c"],
    ),
];

/// Presentations stated in other forms than the catalog's, with the case
/// their good kernels must be recognized as.
pub const ALTERNATE_FORMS: &[Expectation] = &[
    Expectation {
        label: "G[16,8] on generators g,h",
        presentation: "<g,h | g^8=1, h^2=g^4, gh=hg^3>",
        ring: "z",
        kernel_count: Some(3),
        good: &["g^2, gh"],
        bad: &[],
        complete: true,
        notes: &[],
        case: Some(CaseId::C1),
    },
    Expectation {
        label: "G[16,9] on generators g,h",
        presentation: "<g,h | g^8=1, h^2=g^4, gh=hg^-1>",
        ring: "z/4",
        kernel_count: None,
        good: &["g^2, h", "g^2, gh"],
        bad: &[],
        complete: true,
        notes: &[],
        case: Some(CaseId::C2),
    },
    Expectation {
        label: "G[32,35] with c of order 4",
        presentation: "<a,b,c | a^4=c^4=1, b^2=a^2, ac=ca, ab=ba^-1, cb=bc^-1>",
        ring: "z/4",
        kernel_count: Some(7),
        good: &["a, b, c^2", "a, cb, c^2"],
        bad: &[],
        complete: true,
        notes: &[],
        case: Some(CaseId::C6),
    },
    Expectation {
        label: "G[32,24] on generators g,a,b",
        presentation: "<g,a,b | g^4=a^4=b^2=1, ga=ag, gb=bg, ab=g^2ba>",
        ring: "z",
        kernel_count: Some(7),
        good: &["a, b", "ga, b"],
        bad: &[],
        complete: true,
        notes: &[],
        case: Some(CaseId::C10),
    },
];

#[derive(Debug, Clone)]
pub struct Check {
    pub description: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct PaperBlock {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub rows: Vec<Row>,
}

impl PaperBlock {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Default)]
pub struct PaperReport {
    pub blocks: Vec<PaperBlock>,
}

impl PaperReport {
    pub fn passed(&self) -> bool {
        self.blocks.iter().all(PaperBlock::passed)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> + '_ {
        self.blocks.iter().flat_map(|b| b.rows.iter())
    }

    pub fn block(&self, title: &str) -> Option<&PaperBlock> {
        self.blocks.iter().find(|b| b.title == title)
    }
}

fn check(checks: &mut Vec<Check>, passed: bool, description: String) {
    checks.push(Check {
        description,
        passed,
    });
}

fn labels(g: &FiniteGroup, subs: &[&Subgroup]) -> String {
    let v: Vec<String> = subs.iter().map(|s| s.label(g)).collect();
    format!("{{{}}}", v.join(", "))
}

/// Decides every kernel of one listed group and compares with the listing.
pub fn verify_expectation(
    e: &Expectation,
    classifier: &Classifier,
) -> Result<PaperBlock, VerifyError> {
    let g = Arc::new(realize_text(e.presentation, DEFAULT_COSET_LIMIT)?);
    let ring: CoeffRing = e.ring.parse().expect("listed rings are valid");
    let kernels = enumerate_kernels(&g);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut good = Vec::new();
    for k in &kernels {
        let start = Instant::now();
        let o = Orientation::new(g.clone(), k.clone()).expect("enumerated kernels have index 2");
        let verdict = is_skew_commutative(&o, ring)?;
        let facts = classifier.facts(&g, k)?;
        let case = facts.resolve(ring.ring_class());
        let brute = verdict.is_commutative();
        if brute {
            good.push(k);
        }
        rows.push(Row {
            group: e.label.to_string(),
            kernel: k.label(&g),
            ring,
            brute,
            predicted: g.is_abelian() || case.is_some(),
            case,
            witness: verdict.witness().map(|w| w.summary()),
            millis: start.elapsed().as_secs_f64() * 1000.0,
        });
    }

    match e.kernel_count {
        Some(n) => check(
            &mut checks,
            kernels.len() == n,
            format!("kernel count {} (listed {n})", kernels.len()),
        ),
        None => check(
            &mut checks,
            true,
            format!("kernel count {} (computed; not listed)", kernels.len()),
        ),
    }

    let resolve = |words: &str| -> Result<Subgroup, VerifyError> {
        let seeds = g.parse_elements(words).map_err(GroupError::Parse)?;
        Ok(subgroup_closure(&g, &seeds))
    };
    let listed_good: Vec<Subgroup> = e.good.iter().map(|w| resolve(w)).collect::<Result<_, _>>()?;
    let listed_bad: Vec<Subgroup> = e.bad.iter().map(|w| resolve(w)).collect::<Result<_, _>>()?;

    for (words, s) in e.good.iter().zip(&listed_good) {
        let is_kernel = kernels.contains(s);
        let commutes = good.contains(&s);
        check(
            &mut checks,
            is_kernel && commutes,
            format!(
                "<{words}> = {}: {}",
                s.label(&g),
                match (is_kernel, commutes) {
                    (false, _) => "not an index-2 subgroup",
                    (true, true) => "commutative",
                    (true, false) => "NOT commutative",
                }
            ),
        );
    }
    for (words, s) in e.bad.iter().zip(&listed_bad) {
        let is_kernel = kernels.contains(s);
        let commutes = good.contains(&s);
        check(
            &mut checks,
            is_kernel && !commutes,
            format!(
                "<{words}> = {}: {}",
                s.label(&g),
                match (is_kernel, commutes) {
                    (false, _) => "not an index-2 subgroup",
                    (true, false) => "not commutative",
                    (true, true) => "UNEXPECTEDLY commutative",
                }
            ),
        );
    }
    if e.complete {
        let expected: Vec<&Subgroup> = listed_good.iter().collect();
        let same = good.len() == expected.len() && good.iter().all(|k| expected.contains(k));
        check(
            &mut checks,
            same,
            format!(
                "commutative kernels {} (listed {})",
                labels(&g, &good),
                labels(&g, &expected)
            ),
        );
        if !e.bad.is_empty() {
            let mut distinct = listed_bad.clone();
            distinct.sort_by(|a, b| a.members().cmp(b.members()));
            distinct.dedup();
            let covered = distinct.len() + listed_good.len() == kernels.len();
            check(
                &mut checks,
                covered,
                format!(
                    "listed kernels cover all {} kernels ({} good, {} distinct bad)",
                    kernels.len(),
                    listed_good.len(),
                    distinct.len()
                ),
            );
        }
    }
    if let Some(case) = e.case {
        for (words, s) in e.good.iter().zip(&listed_good) {
            let got = if s.len() * 2 == g.order() {
                classifier.classify(&g, s, ring.ring_class())?
            } else {
                None
            };
            let got_id = got.as_ref().map(|c| c.case_id);
            check(
                &mut checks,
                got_id == Some(case),
                format!(
                    "<{words}> recognized as {}",
                    got.map_or("no case".to_string(), |c| c.to_string())
                ),
            );
        }
    }

    Ok(PaperBlock {
        title: format!("{} over {}", e.label, ring),
        checks,
        notes: e.notes.iter().map(|n| n.to_string()).collect(),
        rows,
    })
}

/// The displayed commutator for `G[16,4]` with kernel `<a^2, b>` over `Z`:
/// the reported witness must be `±2(ab + a⁻¹b - ab⁻¹ - a⁻¹b⁻¹)` for the pair
/// `a + a⁻¹`, `b - b⁻¹`.
pub fn verify_witness() -> Result<PaperBlock, VerifyError> {
    let g = Arc::new(realize_text(G16_4, DEFAULT_COSET_LIMIT)?);
    let z = CoeffRing::integers();
    let el = |w: &str| g.parse_element(w).map_err(GroupError::Parse);
    let n = subgroup_closure(&g, &[el("a^2")?, el("b")?]);
    let o = Orientation::new(g.clone(), n.clone()).expect("index 2");
    let start = Instant::now();
    let verdict = is_skew_commutative(&o, z)?;
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    let term = |w: &str, c: i64| -> Result<(usize, i64), VerifyError> { Ok((el(w)?, c)) };
    let expected = GroupRingElement::from_terms(
        g.clone(),
        z,
        &[
            term("a*b", 2)?,
            term("a^-1*b", 2)?,
            term("a*b^-1", -2)?,
            term("a^-1*b^-1", -2)?,
        ],
    )?;
    let sum = GroupRingElement::from_terms(g.clone(), z, &[term("a", 1)?, term("a^-1", 1)?])?;
    let diff = GroupRingElement::from_terms(g.clone(), z, &[term("b", 1)?, term("b^-1", -1)?])?;
    let mut checks = Vec::new();
    let w = verdict.witness();
    check(
        &mut checks,
        w.is_some(),
        "kernel <a^2,b> is not commutative over z".into(),
    );
    if let Some(w) = w {
        let pair_ok = [&w.left, &w.right].iter().any(|x| **x == sum || x.neg().ok().as_ref() == Some(&sum))
            && [&w.left, &w.right].iter().any(|x| **x == diff || x.neg().ok().as_ref() == Some(&diff));
        check(
            &mut checks,
            pair_ok,
            format!("witness pair ({}, {})", w.left, w.right),
        );
        let neg = expected.neg()?;
        let matches = w.commutator == expected || w.commutator == neg;
        check(
            &mut checks,
            matches,
            format!("commutator {} (expected up to sign {})", w.commutator, expected),
        );
    }
    let row = Row {
        group: "G[16,4]".into(),
        kernel: n.label(&g),
        ring: z,
        brute: verdict.is_commutative(),
        predicted: false,
        case: None,
        witness: w.map(|w| w.summary()),
        millis,
    };
    Ok(PaperBlock {
        title: "G[16,4] witness for <a^2,b> over z".into(),
        checks,
        notes: Vec::new(),
        rows: vec![row],
    })
}

/// Runs every listed partition, the witness check, and the alternate forms.
pub fn verify_paper(classifier: &Classifier) -> Result<PaperReport, VerifyError> {
    let mut blocks = Vec::new();
    for e in EXPECTATIONS {
        blocks.push(verify_expectation(e, classifier)?);
    }
    blocks.push(verify_witness()?);
    for e in ALTERNATE_FORMS {
        blocks.push(verify_expectation(e, classifier)?);
    }
    Ok(PaperReport { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_block_passes() {
        let b = verify_witness().unwrap();
        assert!(b.passed(), "{:#?}", b.checks);
    }

    #[test]
    fn small_partitions() {
        let c = Classifier::new().unwrap();
        for e in &EXPECTATIONS[..5] {
            let b = verify_expectation(e, &c).unwrap();
            assert!(b.passed(), "{}: {:#?}", b.title, b.checks);
        }
    }
}
