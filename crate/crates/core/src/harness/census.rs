//! Cross-validation of brute force against the structural classifier over a
//! family of groups, every kernel, and several coefficient rings.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::classify::{CaseId, Classifier, ClassifyError, StructuralFacts};
use crate::group::{GroupError, Subgroup};
use crate::groupring::{is_skew_commutative, GroupRingError};
use crate::orient::{enumerate_kernels, enumerate_kernels_brute_force, quotient_rank, Orientation};
use crate::ring::{CoeffRing, RingClass};
use crate::structure::exponent;

use super::audit::{audit_instance, AuditFinding};
use super::groups::{census_groups, CensusGroup, Family};
use super::Row;

/// Groups up to this order also have their kernels found by the slow
/// subgroup scan, as a check on the fast enumeration.
pub const BRUTE_KERNEL_LIMIT: usize = 32;

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

#[derive(Debug, Clone)]
pub struct GroupSummary {
    pub label: String,
    pub order: usize,
    pub exponent: usize,
    pub two_group: bool,
    pub abelian: bool,
    pub family: Family,
    pub quotient_rank: u32,
    pub kernels: usize,
    /// Kernel count from the subgroup scan, for small groups.
    pub scanned_kernels: Option<usize>,
    /// Whether the scan produced exactly the same subgroups.
    pub scan_agrees: Option<bool>,
}

impl GroupSummary {
    pub fn kernel_law_holds(&self) -> bool {
        self.kernels as u64 == (1u64 << self.quotient_rank) - 1 && self.scan_agrees != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub row: Row,
    pub family: Family,
    pub group_exponent: usize,
    pub two_group: bool,
    pub abelian: bool,
    /// The explicit case whose reference pair matches, when there is one
    /// (regardless of ring).
    pub structural: Vec<CaseId>,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub max_rank: u32,
    pub rings: Vec<CoeffRing>,
    pub groups: Vec<GroupSummary>,
    pub rows: Vec<CensusRow>,
    pub audit_violations: Vec<AuditFinding>,
    pub audited_instances: usize,
}

impl CensusReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CensusRow> + '_ {
        self.rows.iter().filter(|r| r.row.is_mismatch())
    }

    pub fn mismatch_count(&self) -> usize {
        self.mismatches().count()
    }

    /// Every group has `2^k - 1` kernels, and the scan agrees where it ran.
    pub fn kernel_law_holds(&self) -> bool {
        self.groups.iter().all(GroupSummary::kernel_law_holds)
    }

    /// Commutative rows of nonabelian groups all come from 2-groups of
    /// exponent dividing 8, and control groups have no commutative row.
    pub fn exponent_law_holds(&self) -> bool {
        self.rows.iter().all(|r| {
            let bad_exponent = !r.abelian
                && r.row.brute
                && !(r.two_group && 8 % r.group_exponent == 0);
            let control = r.family == Family::Control && r.row.brute;
            !bad_exponent && !control
        })
    }

    /// Rows over rings of class "other" for nonabelian 2-groups.
    fn other_class_rows(&self) -> impl Iterator<Item = &CensusRow> + '_ {
        self.rows.iter().filter(|r| {
            r.row.ring.ring_class() == RingClass::Other
                && !r.abelian
                && r.family != Family::Control
        })
    }

    /// Over rings of class "other", commutative rows are exactly those whose
    /// case is C4i or C5. `None` when no such ring was in the run.
    pub fn other_class_finding(&self) -> Option<OtherClassFinding> {
        let rows: Vec<&CensusRow> = self.other_class_rows().collect();
        if rows.is_empty() {
            return None;
        }
        let mut f = OtherClassFinding::default();
        for r in rows {
            let case = r.row.case.as_ref().map(|c| c.case_id);
            let allowed = matches!(case, Some(CaseId::C4i | CaseId::C5));
            if r.row.brute {
                f.commutative += 1;
                match case {
                    Some(CaseId::C4i) => f.c4i += 1,
                    Some(CaseId::C5) => f.c5 += 1,
                    _ => f.unexplained += 1,
                }
            } else if allowed {
                f.missed += 1;
            }
            f.rows += 1;
        }
        Some(f)
    }

    /// Kernels of `G[16,4] × C2^r`: how many commute, and whether those are
    /// exactly the ones matching `<a,b^2> × E` or `<ab,b^2> × E`.
    pub fn case_five_finding(&self) -> CaseFiveFinding {
        let mut f = CaseFiveFinding::default();
        for r in self.rows.iter().filter(|r| r.row.group.starts_with("G[16,4]")) {
            f.rows += 1;
            let matched = r.structural.contains(&CaseId::C5);
            match (r.row.brute, matched) {
                (true, true) => f.commutative_matched += 1,
                (true, false) => f.commutative_unmatched += 1,
                (false, true) => f.matched_not_commutative += 1,
                (false, false) => {}
            }
        }
        f
    }

    /// Commutative row counts per ring, split by case.
    pub fn case_counts(&self) -> BTreeMap<CoeffRing, BTreeMap<String, usize>> {
        let mut out: BTreeMap<CoeffRing, BTreeMap<String, usize>> = BTreeMap::new();
        for ring in &self.rings {
            out.entry(*ring).or_default();
        }
        for r in self.rows.iter().filter(|r| r.row.brute) {
            let key = if r.abelian {
                "abelian".to_string()
            } else {
                r.row
                    .case
                    .as_ref()
                    .map_or("none".to_string(), |c| c.case_id.to_string())
            };
            *out.entry(r.row.ring).or_default().entry(key).or_default() += 1;
        }
        out
    }

    pub fn passed(&self) -> bool {
        let other_ok = self
            .other_class_finding()
            .is_none_or(|f| f.unexplained == 0 && f.missed == 0);
        let five = self.case_five_finding();
        self.mismatch_count() == 0
            && self.audit_violations.is_empty()
            && self.kernel_law_holds()
            && self.exponent_law_holds()
            && other_ok
            && five.commutative_unmatched == 0
            && five.matched_not_commutative == 0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OtherClassFinding {
    pub rows: usize,
    pub commutative: usize,
    pub c4i: usize,
    pub c5: usize,
    /// Commutative rows with no C4i/C5 case.
    pub unexplained: usize,
    /// C4i/C5 rows that are not commutative.
    pub missed: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseFiveFinding {
    pub rows: usize,
    pub commutative_matched: usize,
    pub commutative_unmatched: usize,
    pub matched_not_commutative: usize,
}

struct Task<'a> {
    group: &'a CensusGroup,
    shared: Arc<crate::group::FiniteGroup>,
    kernel: Subgroup,
}

fn evaluate(
    task: &Task<'_>,
    rings: &[CoeffRing],
    classifier: &Classifier,
) -> Result<(Vec<CensusRow>, Vec<AuditFinding>, usize), CensusError> {
    let g = &task.shared;
    let label = task.kernel.label(g);
    let facts: StructuralFacts = if g.is_abelian() {
        StructuralFacts {
            kernel_elementary_abelian: false,
            group_hamiltonian: false,
            kernel_abelian: true,
            kernel_hamiltonian: false,
            catalog_matches: Vec::new(),
        }
    } else {
        classifier.facts(g, &task.kernel)?
    };
    let o = Orientation::new(g.clone(), task.kernel.clone()).expect("enumerated kernels have index 2");
    let exp = exponent(g);
    let mut rows = Vec::with_capacity(rings.len());
    let mut violations = Vec::new();
    let mut audited = 0;
    for &ring in rings {
        let start = Instant::now();
        let verdict = is_skew_commutative(&o, ring)?;
        let case = if g.is_abelian() {
            None
        } else {
            facts.resolve(ring.ring_class())
        };
        let millis = start.elapsed().as_secs_f64() * 1000.0;
        let brute = verdict.is_commutative();
        if brute && !g.is_abelian() {
            audited += 1;
            violations.extend(
                audit_instance(g, &task.kernel, ring, &task.group.label, &label)
                    .into_iter()
                    .filter(|f| f.violated),
            );
        }
        rows.push(CensusRow {
            row: Row {
                group: task.group.label.clone(),
                kernel: label.clone(),
                ring,
                brute,
                predicted: g.is_abelian() || case.is_some(),
                case,
                witness: verdict.witness().map(|w| w.summary()),
                millis,
            },
            family: task.group.family,
            group_exponent: exp,
            two_group: g.is_2group(),
            abelian: g.is_abelian(),
            structural: facts.catalog_matches.iter().map(|c| c.case_id).collect(),
        });
    }
    Ok((rows, violations, audited))
}

/// Runs the census over the default family up to `max_rank` extra `C2`
/// factors. Rows are computed in parallel and reported in a fixed order:
/// group, then kernel enumeration order, then ring order.
pub fn census(max_rank: u32, rings: &[CoeffRing], classifier: &Classifier) -> Result<CensusReport, CensusError> {
    let groups = census_groups(max_rank)?;
    let shared: Vec<Arc<crate::group::FiniteGroup>> =
        groups.iter().map(|g| Arc::new(g.group.clone())).collect();

    let summaries: Vec<GroupSummary> = groups
        .par_iter()
        .zip(&shared)
        .map(|(cg, g)| {
            let kernels = enumerate_kernels(g);
            let (scanned, agrees) = if g.order() <= BRUTE_KERNEL_LIMIT {
                let mut fast = kernels.clone();
                fast.sort_by(|a, b| a.members().cmp(b.members()));
                let slow = enumerate_kernels_brute_force(g);
                (Some(slow.len()), Some(slow == fast))
            } else {
                (None, None)
            };
            GroupSummary {
                label: cg.label.clone(),
                order: g.order(),
                exponent: exponent(g),
                two_group: g.is_2group(),
                abelian: g.is_abelian(),
                family: cg.family,
                quotient_rank: quotient_rank(g),
                kernels: kernels.len(),
                scanned_kernels: scanned,
                scan_agrees: agrees,
            }
        })
        .collect();

    let tasks: Vec<Task<'_>> = groups
        .iter()
        .zip(&shared)
        .flat_map(|(cg, g)| {
            enumerate_kernels(g).into_iter().map(move |kernel| Task {
                group: cg,
                shared: g.clone(),
                kernel,
            })
        })
        .collect();

    let results: Vec<_> = tasks
        .par_iter()
        .map(|t| evaluate(t, rings, classifier))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut audit_violations = Vec::new();
    let mut audited_instances = 0;
    for (r, v, a) in results {
        rows.extend(r);
        audit_violations.extend(v);
        audited_instances += a;
    }
    Ok(CensusReport {
        max_rank,
        rings: rings.to_vec(),
        groups: summaries,
        rows,
        audit_violations,
        audited_instances,
    })
}
