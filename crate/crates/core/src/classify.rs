//! Structural prediction of commutativity: the ten cases of the
//! classification theorem, recognized by oriented isomorphism against a
//! catalog of reference groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::group::{
    realize_text, subgroup_closure, with_c2_factors, FiniteGroup, GroupError, Subgroup,
    DEFAULT_COSET_LIMIT,
};
use crate::ring::RingClass;
use crate::structure::{
    find_isomorphism_profiled, is_hamiltonian_2group, subgroup_is_elementary_abelian_2,
    subgroup_is_hamiltonian_2group, IsoProfile,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("kernel of order {kernel} does not have index 2 in a group of order {group}")]
    NotIndexTwo { kernel: usize, group: usize },
    #[error("catalog presentation {label} failed to realize: {source}")]
    Catalog {
        label: &'static str,
        #[source]
        source: GroupError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C1,
    C2,
    C3,
    C4i,
    C4ii,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl CaseId {
    pub const ALL: [CaseId; 11] = [
        CaseId::C1,
        CaseId::C2,
        CaseId::C3,
        CaseId::C4i,
        CaseId::C4ii,
        CaseId::C5,
        CaseId::C6,
        CaseId::C7,
        CaseId::C8,
        CaseId::C9,
        CaseId::C10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::C1 => "C1",
            CaseId::C2 => "C2",
            CaseId::C3 => "C3",
            CaseId::C4i => "C4i",
            CaseId::C4ii => "C4ii",
            CaseId::C5 => "C5",
            CaseId::C6 => "C6",
            CaseId::C7 => "C7",
            CaseId::C8 => "C8",
            CaseId::C9 => "C9",
            CaseId::C10 => "C10",
        }
    }

    /// Ring classes for which the case applies.
    pub fn allows(self, rc: RingClass) -> bool {
        match self {
            CaseId::C1 | CaseId::C3 | CaseId::C7 | CaseId::C8 | CaseId::C9 | CaseId::C10 => {
                rc == RingClass::R2Zero
            }
            CaseId::C2 | CaseId::C4ii | CaseId::C6 => rc == RingClass::Char4,
            CaseId::C4i | CaseId::C5 => true,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown case {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TheoremCase {
    pub case_id: CaseId,
    /// Which listed kernel matched, for cases with more than one.
    pub kernel_variant: Option<String>,
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kernel_variant {
            Some(v) => write!(f, "{} (N ~ {v})", self.case_id),
            None => write!(f, "{}", self.case_id),
        }
    }
}

/// A base group from one of the explicit cases, with its listed kernels.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub presentation: &'static str,
    pub base: Arc<FiniteGroup>,
    /// `(label, kernel)` pairs; the label is the generator list as written.
    pub good_kernels: Vec<(String, Subgroup)>,
    pub case_id: CaseId,
}

/// `(label, presentation, kernels, case)` for every explicit case.
pub const CATALOG_SOURCE: [(&str, &str, &[&str], CaseId); 8] = [
    (
        "G[16,8]",
        "<a,b | a^8=1, b^2=a^4, ab=ba^3>",
        &["a^2, ab"],
        CaseId::C1,
    ),
    (
        "G[16,9]",
        "<a,b | a^8=1, b^2=a^4, ab=ba^-1>",
        &["a^2, b", "a^2, ab"],
        CaseId::C2,
    ),
    (
        "G[16,4]",
        "<a,b | a^4=b^4=1, ab=b^-1a>",
        &["a, b^2", "ab, b^2"],
        CaseId::C5,
    ),
    (
        "G[32,35]",
        "<a,b,c | a^4=b^4=1, c^2=a^2, ab=ba, ac=ca^-1, bc=cb^-1>",
        &["a, c, b^2", "a, bc, b^2"],
        CaseId::C6,
    ),
    (
        "G[16,13]",
        "<a,b,c | a^2=b^2=c^2=1, abc=bca=cab>",
        &["a, b", "a, c", "b, c"],
        CaseId::C7,
    ),
    (
        "G[32,30]",
        "<a,b,c,d | a^4=b^2=c^2=d^2=1, ab=ba, ac=ca, ad=dab, bc=cb, bd=db, cd=da^2c>",
        &["b, c, d"],
        CaseId::C8,
    ),
    (
        "G[32,31]",
        "<a,b,c | a^4=b^4=c^2=1, ab=ba, ac=ca^-1, bc=ca^2b^-1>",
        &["a, c, b^2"],
        CaseId::C9,
    ),
    (
        "G[32,24]",
        "<a,b,c | a^4=b^4=c^2=1, ab=ba, ac=ca, bc=ca^2b>",
        &["b, c", "ab, c"],
        CaseId::C10,
    ),
];

/// Realizes every catalog base group and its listed kernels.
pub fn build_catalog() -> Result<Vec<CatalogEntry>, ClassifyError> {
    CATALOG_SOURCE
        .iter()
        .map(|&(label, presentation, kernels, case_id)| {
            let base = realize_text(presentation, DEFAULT_COSET_LIMIT)
                .map_err(|source| ClassifyError::Catalog { label, source })?;
            let good_kernels = kernels
                .iter()
                .map(|&k| {
                    let seeds = base.parse_elements(k).map_err(|e| ClassifyError::Catalog {
                        label,
                        source: GroupError::Parse(e),
                    })?;
                    let n = subgroup_closure(&base, &seeds);
                    if n.len() * 2 != base.order() {
                        return Err(ClassifyError::NotIndexTwo {
                            kernel: n.len(),
                            group: base.order(),
                        });
                    }
                    Ok((format!("<{}>", k.replace(' ', "")), n))
                })
                .collect::<Result<_, _>>()?;
            Ok(CatalogEntry {
                label,
                presentation,
                base: Arc::new(base),
                good_kernels,
                case_id,
            })
        })
        .collect()
}

/// Everything about `(G, N)` that the prediction needs, independent of the
/// ring. Computing this once per pair lets several ring classes share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralFacts {
    pub kernel_elementary_abelian: bool,
    pub group_hamiltonian: bool,
    pub kernel_abelian: bool,
    pub kernel_hamiltonian: bool,
    /// Explicit cases whose reference pair is isomorphic to `(G, N)`, in
    /// catalog order.
    pub catalog_matches: Vec<TheoremCase>,
}

impl StructuralFacts {
    /// First applicable case for `rc`, in the order C3, C4i, C4ii, then the
    /// explicit cases.
    pub fn resolve(&self, rc: RingClass) -> Option<TheoremCase> {
        let plain = |case_id| {
            Some(TheoremCase {
                case_id,
                kernel_variant: None,
            })
        };
        if rc == RingClass::R2Zero && self.kernel_elementary_abelian {
            return plain(CaseId::C3);
        }
        if self.group_hamiltonian && self.kernel_abelian {
            return plain(CaseId::C4i);
        }
        if self.group_hamiltonian && self.kernel_hamiltonian && rc == RingClass::Char4 {
            return plain(CaseId::C4ii);
        }
        self.catalog_matches
            .iter()
            .find(|c| c.case_id.allows(rc))
            .cloned()
    }
}

/// A catalog base times `C2^r`, with its kernels times `C2^r`.
struct Reference {
    group: FiniteGroup,
    kernels: Vec<(String, Subgroup)>,
}

/// The classifier: the catalog plus a cache of reference pairs per rank.
pub struct Classifier {
    catalog: Vec<CatalogEntry>,
    references: Mutex<HashMap<(usize, u32), Arc<Reference>>>,
}

impl fmt::Debug for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Classifier")
            .field("catalog", &self.catalog.len())
            .finish()
    }
}

impl Classifier {
    pub fn new() -> Result<Self, ClassifyError> {
        Ok(Classifier {
            catalog: build_catalog()?,
            references: Mutex::new(HashMap::new()),
        })
    }

    pub fn catalog(&self) -> &[CatalogEntry] {
        &self.catalog
    }

    fn reference(&self, entry: usize, rank: u32) -> Arc<Reference> {
        if let Some(r) = self.references.lock().unwrap().get(&(entry, rank)) {
            return r.clone();
        }
        let e = &self.catalog[entry];
        let group = with_c2_factors(&e.base, rank).expect("reference orders stay within the limit");
        let scale = group.order() / e.base.order();
        // base element x sits at x * 2^rank in the product
        let kernels = e
            .good_kernels
            .iter()
            .map(|(label, k)| {
                let members = k
                    .members()
                    .iter()
                    .flat_map(|&x| (0..scale).map(move |y| x * scale + y))
                    .collect();
                (label.clone(), Subgroup::from_members(group.order(), members))
            })
            .collect();
        let r = Arc::new(Reference { group, kernels });
        self.references
            .lock()
            .unwrap()
            .insert((entry, rank), r.clone());
        r
    }

    /// Ring-independent facts about `(g, n)`.
    pub fn facts(&self, g: &FiniteGroup, n: &Subgroup) -> Result<StructuralFacts, ClassifyError> {
        if n.len() * 2 != g.order() || !n.is_subgroup_of(g) {
            return Err(ClassifyError::NotIndexTwo {
                kernel: n.len(),
                group: g.order(),
            });
        }
        let group_hamiltonian = is_hamiltonian_2group(g);
        let mut catalog_matches = Vec::new();
        if g.is_2group() {
            let target = IsoProfile::new(g, Some(n));
            for (i, e) in self.catalog.iter().enumerate() {
                let ratio = g.order() / e.base.order();
                if !g.order().is_multiple_of(e.base.order()) || !ratio.is_power_of_two() {
                    continue;
                }
                let rank = ratio.trailing_zeros();
                let r = self.reference(i, rank);
                for (label, k) in &r.kernels {
                    let src = IsoProfile::new(&r.group, Some(k));
                    if find_isomorphism_profiled(&src, &target).is_some() {
                        catalog_matches.push(TheoremCase {
                            case_id: e.case_id,
                            kernel_variant: Some(label.clone()),
                        });
                        break;
                    }
                }
            }
        }
        Ok(StructuralFacts {
            kernel_elementary_abelian: subgroup_is_elementary_abelian_2(g, n),
            group_hamiltonian,
            kernel_abelian: n.is_abelian(g),
            kernel_hamiltonian: subgroup_is_hamiltonian_2group(g, n),
            catalog_matches,
        })
    }

    /// The first matching case, or `None` when the prediction is "not
    /// commutative". `g` is expected to be nonabelian.
    pub fn classify(
        &self,
        g: &FiniteGroup,
        n: &Subgroup,
        rc: RingClass,
    ) -> Result<Option<TheoremCase>, ClassifyError> {
        Ok(self.facts(g, n)?.resolve(rc))
    }

    /// Predicted commutativity; abelian groups always commute.
    pub fn predict(&self, g: &FiniteGroup, n: &Subgroup, rc: RingClass) -> Result<bool, ClassifyError> {
        if g.is_abelian() {
            return Ok(true);
        }
        Ok(self.classify(g, n, rc)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::orient::enumerate_kernels;

    const Q8: &str = "<a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1>";
    const D4: &str = "<r,s | r^4, s^2, (rs)^2>";

    fn group(text: &str) -> FiniteGroup {
        realize_text(text, DEFAULT_COSET_LIMIT).unwrap()
    }

    fn sub(g: &FiniteGroup, words: &str) -> Subgroup {
        subgroup_closure(g, &g.parse_elements(words).unwrap())
    }

    fn classifier() -> Classifier {
        Classifier::new().unwrap()
    }

    #[test]
    fn catalog_shape() {
        let cat = build_catalog().unwrap();
        let shape: Vec<(&str, usize, usize)> = cat
            .iter()
            .map(|e| (e.label, e.base.order(), e.good_kernels.len()))
            .collect();
        assert_eq!(
            shape,
            vec![
                ("G[16,8]", 16, 1),
                ("G[16,9]", 16, 2),
                ("G[16,4]", 16, 2),
                ("G[32,35]", 32, 2),
                ("G[16,13]", 16, 3),
                ("G[32,30]", 32, 1),
                ("G[32,31]", 32, 1),
                ("G[32,24]", 32, 2),
            ]
        );
        for e in &cat {
            assert!(!e.base.is_abelian());
            for (_, k) in &e.good_kernels {
                assert_eq!(k.len() * 2, e.base.order());
                assert!(k.is_normal_in(&e.base));
            }
        }
        let c8 = &cat[5];
        assert_eq!(c8.good_kernels[0].0, "<b,c,d>");
    }

    #[test]
    fn structural_cases() {
        let c = classifier();
        let q8 = group(Q8);
        let case = c.classify(&q8, &sub(&q8, "a"), RingClass::R2Zero).unwrap();
        assert_eq!(case.unwrap().case_id, CaseId::C4i);

        let q8c2 = direct_product(&q8, &FiniteGroup::cyclic(2).unwrap()).unwrap();
        let copy: Vec<usize> = (0..8).map(|x| x * 2).collect();
        let n = Subgroup::from_members(16, copy);
        assert_eq!(
            c.classify(&q8c2, &n, RingClass::Char4).unwrap().unwrap().case_id,
            CaseId::C4ii
        );
        assert_eq!(c.classify(&q8c2, &n, RingClass::R2Zero).unwrap(), None);

        let d4 = group(D4);
        let n = sub(&d4, "r^2, s");
        assert_eq!(
            c.classify(&d4, &n, RingClass::R2Zero).unwrap().unwrap().case_id,
            CaseId::C3
        );
        assert_eq!(c.classify(&d4, &n, RingClass::Char4).unwrap(), None);
    }

    #[test]
    fn catalog_cases() {
        let c = classifier();
        let g13 = group(CATALOG_SOURCE[4].1);
        assert_eq!(
            c.classify(&g13, &sub(&g13, "a, bc"), RingClass::R2Zero).unwrap(),
            None
        );
        let hit = c
            .classify(&g13, &sub(&g13, "b, c"), RingClass::R2Zero)
            .unwrap()
            .unwrap();
        assert_eq!(hit.case_id, CaseId::C7);

        let g4 = group(CATALOG_SOURCE[2].1);
        let g4c2 = with_c2_factors(&g4, 1).unwrap();
        let n = sub(&g4c2, "a, b^2, e");
        assert_eq!(
            c.classify(&g4c2, &n, RingClass::Other).unwrap().unwrap().case_id,
            CaseId::C5
        );

        let g8 = group(CATALOG_SOURCE[0].1);
        assert!(!c.predict(&g8, &sub(&g8, "a"), RingClass::R2Zero).unwrap());
        assert!(c.predict(&g8, &sub(&g8, "a^2, ab"), RingClass::R2Zero).unwrap());
        assert!(!c.predict(&g8, &sub(&g8, "a^2, ab"), RingClass::Char4).unwrap());

        let g30 = group(CATALOG_SOURCE[5].1);
        assert!(c.predict(&g30, &sub(&g30, "b, c, d"), RingClass::R2Zero).unwrap());
    }

    #[test]
    fn abelian_and_odd_groups() {
        let c = classifier();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let n = Subgroup::from_members(4, vec![0, 2]);
        for rc in RingClass::ALL {
            assert!(c.predict(&c4, &n, rc).unwrap());
        }
        let s3 = group("<a,b | a^3, b^2, (ab)^2>");
        let k = &enumerate_kernels(&s3)[0];
        for rc in RingClass::ALL {
            assert!(!c.predict(&s3, k, rc).unwrap());
        }
    }

    #[test]
    fn bad_kernel_is_rejected() {
        let c = classifier();
        let q8 = group(Q8);
        let err = c.classify(&q8, &Subgroup::trivial(&q8), RingClass::R2Zero);
        assert!(matches!(err, Err(ClassifyError::NotIndexTwo { .. })));
    }

    #[test]
    fn ring_requirements() {
        assert!(CaseId::C5.allows(RingClass::Other));
        assert!(CaseId::C4i.allows(RingClass::Other));
        for c in CaseId::ALL {
            if !matches!(c, CaseId::C4i | CaseId::C5) {
                assert!(!c.allows(RingClass::Other), "{c}");
            }
        }
        assert_eq!("c4ii".parse::<CaseId>().unwrap(), CaseId::C4ii);
    }
}
