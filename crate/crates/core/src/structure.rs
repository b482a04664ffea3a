//! Structural predicates and (oriented) isomorphism search.

use crate::group::{center, derived_and_squares, FiniteGroup, Subgroup};
use crate::orient::enumerate_kernels;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructError {
    #[error("group of order {0} is not a 2-group")]
    NotTwoGroup(usize),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple of the element orders.
pub fn exponent(g: &FiniteGroup) -> usize {
    g.elements()
        .map(|x| g.elem_order(x))
        .fold(1, |acc, o| acc / gcd(acc, o) * o)
}

pub fn is_elementary_abelian_2(g: &FiniteGroup) -> bool {
    g.elements().all(|x| g.elem_order(x) <= 2)
}

/// Elementary abelian check for a subgroup (exponent 2 forces commutativity).
pub fn subgroup_is_elementary_abelian_2(g: &FiniteGroup, s: &Subgroup) -> bool {
    s.members().iter().all(|&x| g.elem_order(x) <= 2)
}

fn cyclic_subgroup_is_normal(g: &FiniteGroup, x: usize) -> bool {
    let mut powers = vec![false; g.order()];
    let mut y = 0;
    loop {
        powers[y] = true;
        y = g.mul(y, x);
        if y == 0 {
            break;
        }
    }
    g.generators().iter().all(|&s| powers[g.conjugate(x, s)])
}

/// Nonabelian 2-group all of whose cyclic subgroups are normal.
pub fn is_hamiltonian_2group(g: &FiniteGroup) -> bool {
    g.is_2group() && !g.is_abelian() && g.elements().all(|x| cyclic_subgroup_is_normal(g, x))
}

/// Same test for a subgroup of `g`.
pub fn subgroup_is_hamiltonian_2group(g: &FiniteGroup, s: &Subgroup) -> bool {
    s.len().is_power_of_two()
        && !s.is_abelian(g)
        && s.members().iter().all(|&x| {
            let mut y = x;
            let mut powers = vec![0usize];
            while y != 0 {
                powers.push(y);
                y = g.mul(y, x);
            }
            s.members()
                .iter()
                .all(|&t| powers.contains(&g.conjugate(x, t)))
        })
}

/// `G ≅ core × C2^r`, with the `r` stripped central involutions recorded.
#[derive(Debug, Clone)]
pub struct FactorDecomposition {
    pub core: FiniteGroup,
    /// core element index -> element of the original group
    pub core_embedding: Vec<usize>,
    /// the split-off central involutions, as elements of the original group
    pub stripped: Vec<usize>,
}

impl FactorDecomposition {
    pub fn stripped_rank(&self) -> u32 {
        self.stripped.len() as u32
    }
}

/// Splits off direct factors of order 2 for as long as there is a central
/// involution outside the Frattini subgroup. Each step keeps the first
/// index-2 subgroup (in enumeration order) that avoids the involution.
pub fn strip_c2_factors(g: &FiniteGroup) -> Result<FactorDecomposition, StructError> {
    if !g.is_2group() {
        return Err(StructError::NotTwoGroup(g.order()));
    }
    let mut core = g.clone();
    let mut embedding: Vec<usize> = g.elements().collect();
    let mut stripped = Vec::new();
    loop {
        let phi = derived_and_squares(&core);
        let z = center(&core);
        let Some(e) = z
            .members()
            .iter()
            .copied()
            .find(|&x| core.elem_order(x) == 2 && !phi.contains(x))
        else {
            break;
        };
        let m = enumerate_kernels(&core)
            .into_iter()
            .find(|k| !k.contains(e))
            .expect("an element outside the Frattini subgroup misses some maximal subgroup");
        stripped.push(embedding[e]);
        let (sub, emb) = m.as_group(&core);
        embedding = emb.iter().map(|&x| embedding[x]).collect();
        core = sub;
    }
    Ok(FactorDecomposition {
        core,
        core_embedding: embedding,
        stripped,
    })
}

/// Per-element invariants preserved by (oriented) isomorphisms, used both to
/// reject non-isomorphic pairs quickly and to restrict candidate images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementSignature {
    order: u32,
    central: bool,
    in_frattini: bool,
    in_kernel: bool,
    class_size: u32,
    square_roots: u32,
    kernel_centralizer: u32,
    square_in_kernel_center: bool,
}

/// A group (optionally with a designated kernel) prepared for isomorphism
/// searches.
#[derive(Debug, Clone)]
pub struct IsoProfile<'a> {
    group: &'a FiniteGroup,
    kernel: Option<&'a Subgroup>,
    sigs: Vec<ElementSignature>,
    sorted_sigs: Vec<ElementSignature>,
    generating_sequence: Vec<usize>,
    kernel_abelian: bool,
}

impl<'a> IsoProfile<'a> {
    pub fn new(group: &'a FiniteGroup, kernel: Option<&'a Subgroup>) -> Self {
        let n = group.order();
        let z = center(group);
        let phi = derived_and_squares(group);
        let mut square_roots = vec![0u32; n];
        for x in group.elements() {
            square_roots[group.mul(x, x)] += 1;
        }
        let kernel_center: Vec<bool> = match kernel {
            Some(k) => (0..n)
                .map(|x| {
                    k.contains(x) && k.members().iter().all(|&y| group.commutes(x, y))
                })
                .collect(),
            None => vec![false; n],
        };
        let sigs: Vec<ElementSignature> = group
            .elements()
            .map(|x| {
                let mut conj = vec![false; n];
                let mut class_size = 0;
                for y in group.elements() {
                    let c = group.conjugate(x, y);
                    if !conj[c] {
                        conj[c] = true;
                        class_size += 1;
                    }
                }
                let kernel_centralizer = kernel.map_or(0, |k| {
                    k.members().iter().filter(|&&y| group.commutes(x, y)).count() as u32
                });
                ElementSignature {
                    order: group.elem_order(x) as u32,
                    central: z.contains(x),
                    in_frattini: phi.contains(x),
                    in_kernel: kernel.is_some_and(|k| k.contains(x)),
                    class_size,
                    square_roots: square_roots[x],
                    kernel_centralizer,
                    square_in_kernel_center: kernel_center[group.mul(x, x)],
                }
            })
            .collect();
        let mut sorted_sigs = sigs.clone();
        sorted_sigs.sort_unstable();
        IsoProfile {
            group,
            kernel,
            sigs,
            sorted_sigs,
            generating_sequence: Subgroup::whole(group).greedy_generators(group),
            kernel_abelian: kernel.is_none_or(|k| k.is_abelian(group)),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    fn compatible(&self, other: &IsoProfile<'_>) -> bool {
        self.group.order() == other.group.order()
            && self.kernel.is_some() == other.kernel.is_some()
            && self.kernel_abelian == other.kernel_abelian
            && self.sorted_sigs == other.sorted_sigs
    }
}

/// Searches for an isomorphism `g → h`; with `oriented = Some((n, m))` the map
/// must also carry `n` onto `m`. Returns the element map on success.
pub fn find_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    oriented: Option<(&Subgroup, &Subgroup)>,
) -> Option<Vec<usize>> {
    let (kg, kh) = match oriented {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    find_isomorphism_profiled(&IsoProfile::new(g, kg), &IsoProfile::new(h, kh))
}

/// Like [`find_isomorphism`] but reuses precomputed profiles.
pub fn find_isomorphism_profiled(src: &IsoProfile<'_>, dst: &IsoProfile<'_>) -> Option<Vec<usize>> {
    if !src.compatible(dst) {
        return None;
    }
    let mut search = Search::new(src, dst);
    if search.descend(0) {
        Some(search.map)
    } else {
        None
    }
}

const UNSET: usize = usize::MAX;

struct Search<'p, 'a, 'b> {
    src: &'p IsoProfile<'a>,
    dst: &'p IsoProfile<'b>,
    gens: Vec<usize>,
    images: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl<'p, 'a, 'b> Search<'p, 'a, 'b> {
    fn new(src: &'p IsoProfile<'a>, dst: &'p IsoProfile<'b>) -> Self {
        let n = src.group.order();
        let mut map = vec![UNSET; n];
        map[0] = 0;
        let mut used = vec![false; n];
        used[0] = true;
        Search {
            src,
            dst,
            gens: src.generating_sequence.clone(),
            images: Vec::new(),
            map,
            used,
            mapped: vec![0],
        }
    }

    fn descend(&mut self, level: usize) -> bool {
        if level == self.gens.len() {
            return self.mapped.len() == self.src.group.order();
        }
        let s = self.gens[level];
        let want = self.src.sigs[s];
        let candidates: Vec<usize> = self
            .dst
            .group
            .elements()
            .filter(|&t| !self.used[t] && self.dst.sigs[t] == want)
            .collect();
        for t in candidates {
            let mark = self.mapped.len();
            self.images.push(t);
            if self.extend(level) && self.descend(level + 1) {
                return true;
            }
            self.images.pop();
            for &x in &self.mapped[mark..] {
                self.used[self.map[x]] = false;
                self.map[x] = UNSET;
            }
            self.mapped.truncate(mark);
        }
        false
    }

    /// Extends the partial homomorphism from `⟨s_0..s_{level-1}⟩` to
    /// `⟨s_0..s_level⟩` by walking the Cayley graph, checking every edge.
    fn extend(&mut self, level: usize) -> bool {
        let (g, h) = (self.src.group, self.dst.group);
        let old = self.mapped.len();
        let mut head = 0;
        while head < self.mapped.len() {
            let x = self.mapped[head];
            let first_gen = if head < old { level } else { 0 };
            head += 1;
            for j in first_gen..=level {
                let y = g.mul(x, self.gens[j]);
                let image = h.mul(self.map[x], self.images[j]);
                if self.map[y] != UNSET {
                    if self.map[y] != image {
                        return false;
                    }
                } else {
                    if self.used[image] || self.src.sigs[y] != self.dst.sigs[image] {
                        return false;
                    }
                    self.map[y] = image;
                    self.used[image] = true;
                    self.mapped.push(y);
                }
            }
        }
        true
    }
}

/// Checks that `map` is a bijective homomorphism `g → h` (full table check),
/// optionally carrying kernel `n` onto `m`.
pub fn is_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    map: &[usize],
    oriented: Option<(&Subgroup, &Subgroup)>,
) -> bool {
    if g.order() != h.order() || map.len() != g.order() {
        return false;
    }
    let mut hit = vec![false; h.order()];
    for &y in map {
        if y >= h.order() || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    let hom = g
        .elements()
        .all(|x| g.elements().all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y])));
    let kernels = oriented.is_none_or(|(n, m)| {
        n.len() == m.len() && n.members().iter().all(|&x| m.contains(map[x]))
    });
    hom && kernels
}
