//! Necessary conditions that every commutative instance must satisfy, checked
//! directly on the group table.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{center, subgroup_closure, FiniteGroup, Subgroup};
use crate::groupring::{is_skew_commutative, GroupRingError};
use crate::orient::{OrientError, Orientation};
use crate::ring::CoeffRing;
use crate::structure::exponent;

/// Groups up to this order have every pair audited; larger ones are sampled.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 32;
pub const SAMPLED_PAIRS: usize = 1000;
const PAIR_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuditAssertion {
    /// `G` is a 2-group of exponent dividing 8.
    ExponentDividesEight,
    /// Exponent 4 forces every square into the center.
    SquaresCentral,
    /// With 2-torsion in `R`, every involution is central.
    InvolutionsCentral,
    /// With `R_2 = 0`, an involution outside `N` commutes with involutions
    /// outside `N` and with non-involutions in `N`.
    OutsideInvolutionsCommute,
    /// Pairs of non-involutions, both in `N`.
    PairsInKernel,
    /// Pairs of non-involutions, one in `N`.
    PairsSplit,
    /// Pairs of non-involutions, both outside `N`.
    PairsOutsideKernel,
}

impl AuditAssertion {
    pub const ALL: [AuditAssertion; 7] = [
        AuditAssertion::ExponentDividesEight,
        AuditAssertion::SquaresCentral,
        AuditAssertion::InvolutionsCentral,
        AuditAssertion::OutsideInvolutionsCommute,
        AuditAssertion::PairsInKernel,
        AuditAssertion::PairsSplit,
        AuditAssertion::PairsOutsideKernel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AuditAssertion::ExponentDividesEight => "exponent-divides-8",
            AuditAssertion::SquaresCentral => "exponent-4-squares-central",
            AuditAssertion::InvolutionsCentral => "torsion-involutions-central",
            AuditAssertion::OutsideInvolutionsCommute => "outside-involutions-commute",
            AuditAssertion::PairsInKernel => "pairs-both-in-kernel",
            AuditAssertion::PairsSplit => "pairs-one-in-kernel",
            AuditAssertion::PairsOutsideKernel => "pairs-both-outside-kernel",
        }
    }
}

impl fmt::Display for AuditAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditFinding {
    pub group: String,
    pub kernel: String,
    pub ring: CoeffRing,
    pub assertion: AuditAssertion,
    pub violated: bool,
    pub detail: String,
}

impl fmt::Display for AuditFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}: {} ({})",
            self.group,
            self.kernel,
            self.ring,
            self.assertion,
            if self.violated { "VIOLATED" } else { "ok" },
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("the audit needs a nonabelian group")]
    Abelian,
    #[error("the antisymmetric elements do not commute for this instance")]
    NotCommutative,
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

/// Checks the precondition (nonabelian, commutative) and then audits.
pub fn audit_commutative_instance(
    g: &Arc<FiniteGroup>,
    n: &Subgroup,
    ring: CoeffRing,
) -> Result<Vec<AuditFinding>, AuditError> {
    if g.is_abelian() {
        return Err(AuditError::Abelian);
    }
    let o = Orientation::new(g.clone(), n.clone())?;
    if !is_skew_commutative(&o, ring)?.is_commutative() {
        return Err(AuditError::NotCommutative);
    }
    Ok(audit_instance(g, n, ring, &g_label(g), &n.label(g)))
}

fn g_label(g: &FiniteGroup) -> String {
    format!("order-{}", g.order())
}

/// Runs every assertion without re-deciding commutativity.
pub fn audit_instance(
    g: &FiniteGroup,
    n: &Subgroup,
    ring: CoeffRing,
    group_label: &str,
    kernel_label: &str,
) -> Vec<AuditFinding> {
    let has_torsion = !ring.r2_generators().is_empty();
    let char4 = ring.characteristic() == 4;
    let z = center(g);
    let exp = exponent(g);
    let finding = |assertion, violated, detail: String| AuditFinding {
        group: group_label.to_string(),
        kernel: kernel_label.to_string(),
        ring,
        assertion,
        violated,
        detail,
    };
    let mut out = Vec::with_capacity(AuditAssertion::ALL.len());

    out.push(finding(
        AuditAssertion::ExponentDividesEight,
        !(g.is_2group() && 8 % exp == 0),
        format!("order {}, exponent {exp}", g.order()),
    ));

    if exp == 4 {
        let bad = g.elements().find(|&x| !z.contains(g.mul(x, x)));
        out.push(finding(
            AuditAssertion::SquaresCentral,
            bad.is_some(),
            match bad {
                Some(x) => format!("square of {} is not central", g.name(x)),
                None => "every square is central".into(),
            },
        ));
    } else {
        out.push(finding(
            AuditAssertion::SquaresCentral,
            false,
            format!("not applicable (exponent {exp})"),
        ));
    }

    if has_torsion {
        let bad = g
            .elements()
            .find(|&x| g.elem_order(x) == 2 && !z.contains(x));
        out.push(finding(
            AuditAssertion::InvolutionsCentral,
            bad.is_some(),
            match bad {
                Some(x) => format!("involution {} is not central", g.name(x)),
                None => "every involution is central".into(),
            },
        ));
    } else {
        out.push(finding(
            AuditAssertion::InvolutionsCentral,
            false,
            "not applicable (no 2-torsion)".into(),
        ));
    }

    if has_torsion {
        out.push(finding(
            AuditAssertion::OutsideInvolutionsCommute,
            false,
            "not applicable (2-torsion present)".into(),
        ));
    } else {
        let mut bad = None;
        'outer: for x in g.elements().filter(|&x| g.elem_order(x) == 2 && !n.contains(x)) {
            for y in g.elements() {
                let relevant = if n.contains(y) {
                    g.mul(y, y) != 0
                } else {
                    g.elem_order(y) == 2
                };
                if relevant && !g.commutes(x, y) {
                    bad = Some((x, y));
                    break 'outer;
                }
            }
        }
        out.push(finding(
            AuditAssertion::OutsideInvolutionsCommute,
            bad.is_some(),
            match bad {
                Some((x, y)) => format!("{} and {} do not commute", g.name(x), g.name(y)),
                None => "holds".into(),
            },
        ));
    }

    let pairs = audit_pairs(g);
    let sampled = pairs.len();
    let mut first_bad: [Option<(usize, usize)>; 3] = [None; 3];
    let mut counts = [0usize; 3];
    for &(x, y) in &pairs {
        let (slot, ok) = match (n.contains(x), n.contains(y)) {
            (true, true) => (0, pair_in_kernel(g, x, y, has_torsion, char4)),
            (true, false) => (1, pair_split(g, x, y)),
            (false, true) => (1, pair_split(g, y, x)),
            (false, false) => (2, pair_outside(g, x, y, has_torsion)),
        };
        counts[slot] += 1;
        if !ok && first_bad[slot].is_none() {
            first_bad[slot] = Some((x, y));
        }
    }
    let kinds = [
        AuditAssertion::PairsInKernel,
        AuditAssertion::PairsSplit,
        AuditAssertion::PairsOutsideKernel,
    ];
    for (slot, assertion) in kinds.into_iter().enumerate() {
        let detail = match first_bad[slot] {
            Some((x, y)) => format!("fails for ({}, {})", g.name(x), g.name(y)),
            None => format!("{} of {sampled} pairs checked", counts[slot]),
        };
        out.push(finding(assertion, first_bad[slot].is_some(), detail));
    }
    out
}

/// Ordered pairs of non-involutions: all of them for small groups, otherwise a
/// fixed pseudo-random sample.
fn audit_pairs(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let pool: Vec<usize> = g.elements().filter(|&x| g.mul(x, x) != 0).collect();
    if pool.is_empty() {
        return Vec::new();
    }
    if g.order() <= EXHAUSTIVE_PAIR_LIMIT {
        return pool
            .iter()
            .flat_map(|&x| pool.iter().map(move |&y| (x, y)))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
    (0..SAMPLED_PAIRS)
        .map(|_| {
            (
                pool[rng.gen_range(0..pool.len())],
                pool[rng.gen_range(0..pool.len())],
            )
        })
        .collect()
}

/// `(g^α h^β)² = 1` for all signs.
fn all_sign_products_square_to_one(g: &FiniteGroup, x: usize, y: usize) -> bool {
    [x, g.inv(x)].iter().all(|&a| {
        [y, g.inv(y)].iter().all(|&b| {
            let p = g.mul(a, b);
            g.mul(p, p) == 0
        })
    })
}

fn generates_quaternion(g: &FiniteGroup, x: usize, y: usize) -> bool {
    let s = subgroup_closure(g, &[x, y]);
    s.len() == 8
        && !s.is_abelian(g)
        && s.members().iter().filter(|&&m| g.elem_order(m) == 2).count() == 1
}

fn pair_in_kernel(g: &FiniteGroup, x: usize, y: usize, torsion: bool, char4: bool) -> bool {
    g.commutes(x, y)
        || (!torsion && all_sign_products_square_to_one(g, x, y))
        || (char4 && generates_quaternion(g, x, y))
}

/// `x ∈ N`, `y ∉ N`.
fn pair_split(g: &FiniteGroup, x: usize, y: usize) -> bool {
    let c = g.mul(g.mul(x, y), g.inv(x));
    c == y
        || c == g.inv(y)
        || (g.elem_order(x) == 4 && g.elem_order(y) == 4 && g.mul(x, x) == g.mul(y, y))
}

fn pair_outside(g: &FiniteGroup, x: usize, y: usize, torsion: bool) -> bool {
    let xy = g.mul(x, y);
    xy == g.mul(y, x)
        || xy == g.mul(g.inv(y), x)
        || xy == g.mul(y, g.inv(x))
        || (!torsion && all_sign_products_square_to_one(g, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{realize_text, DEFAULT_COSET_LIMIT};
    use crate::harness::groups::{D4, Q8, Q8_C2};

    fn group(text: &str) -> Arc<FiniteGroup> {
        Arc::new(realize_text(text, DEFAULT_COSET_LIMIT).unwrap())
    }

    fn sub(g: &FiniteGroup, words: &str) -> Subgroup {
        subgroup_closure(g, &g.parse_elements(words).unwrap())
    }

    #[test]
    fn quaternion_passes() {
        let q = group(Q8);
        let f = audit_commutative_instance(&q, &sub(&q, "a"), CoeffRing::integers()).unwrap();
        assert_eq!(f.len(), AuditAssertion::ALL.len());
        assert!(f.iter().all(|x| !x.violated), "{f:?}");
    }

    #[test]
    fn torsion_involutions_checked() {
        let g = group(Q8_C2);
        let f = audit_commutative_instance(&g, &sub(&g, "a, b"), CoeffRing::modulo(4).unwrap())
            .unwrap();
        let inv = f
            .iter()
            .find(|x| x.assertion == AuditAssertion::InvolutionsCentral)
            .unwrap();
        assert!(!inv.violated);
        assert_eq!(inv.detail, "every involution is central");
    }

    #[test]
    fn exponent_eight_recorded() {
        let g = group("<a,b | a^8=1, b^2=a^4, ab=ba^3>");
        let f = audit_commutative_instance(&g, &sub(&g, "a^2, ab"), CoeffRing::integers()).unwrap();
        assert_eq!(f[0].detail, "order 16, exponent 8");
        assert!(f.iter().all(|x| !x.violated));
    }

    #[test]
    fn preconditions() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        assert_eq!(
            audit_commutative_instance(&c4, &Subgroup::from_members(4, vec![0, 2]), CoeffRing::integers()),
            Err(AuditError::Abelian)
        );
        // over Z the quaternion kernel of Q8 x C2 is not commutative
        let g = group(Q8_C2);
        assert_eq!(
            audit_commutative_instance(&g, &sub(&g, "a, b"), CoeffRing::integers()),
            Err(AuditError::NotCommutative)
        );
    }

    #[test]
    fn violations_are_detected_on_noncommutative_instances() {
        // D4 with the cyclic kernel is not commutative over Z/4; the unchecked
        // audit should flag the noncentral reflections.
        let d = group(D4);
        let f = audit_instance(&d, &sub(&d, "r"), CoeffRing::modulo(4).unwrap(), "D4", "<r>");
        let inv = f
            .iter()
            .find(|x| x.assertion == AuditAssertion::InvolutionsCentral)
            .unwrap();
        assert!(inv.violated);
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = crate::group::with_c2_factors(&group(Q8), 3).unwrap();
        let a = audit_pairs(&g);
        assert_eq!(a.len(), SAMPLED_PAIRS);
        assert_eq!(a, audit_pairs(&g));
    }
}
