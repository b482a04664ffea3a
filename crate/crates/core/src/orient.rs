//! Orientations `σ: G → {±1}`, represented by their kernels, and enumeration
//! of every index-2 subgroup of a group.

use std::sync::Arc;

use crate::group::{derived_and_squares, subgroup_closure, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientError {
    #[error("generated subgroup has order {sub} in a group of order {group}; an orientation kernel needs index 2")]
    NotIndexTwo { sub: usize, group: usize },
    #[error("kernel does not belong to this group")]
    WrongGroup,
}

/// An orientation of `group`, i.e. a homomorphism onto `{±1}`, given by its
/// kernel `N`: `σ(g) = +1` exactly when `g ∈ N`.
#[derive(Debug, Clone)]
pub struct Orientation {
    group: Arc<FiniteGroup>,
    kernel: Subgroup,
}

impl Orientation {
    /// Wraps an index-2 subgroup.
    pub fn new(group: Arc<FiniteGroup>, kernel: Subgroup) -> Result<Self, OrientError> {
        if kernel.members().last().is_none_or(|&m| m >= group.order()) {
            return Err(OrientError::WrongGroup);
        }
        if kernel.len() * 2 != group.order() || !kernel.is_subgroup_of(&group) {
            return Err(OrientError::NotIndexTwo {
                sub: kernel.len(),
                group: group.order(),
            });
        }
        Ok(Orientation { group, kernel })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `+1` on the kernel, `-1` off it.
    #[inline]
    pub fn sigma(&self, x: usize) -> i64 {
        if self.kernel.contains(x) {
            1
        } else {
            -1
        }
    }
}

/// Orientation whose kernel is the subgroup generated by `seeds`.
pub fn make_orientation(
    group: Arc<FiniteGroup>,
    seeds: &[usize],
) -> Result<Orientation, OrientError> {
    let kernel = subgroup_closure(&group, seeds);
    Orientation::new(group, kernel)
}

/// All index-2 subgroups of `g`, each once.
///
/// With `K` the subgroup generated by commutators and squares, `G/K` is an
/// elementary abelian 2-group of some rank `k`, and index-2 subgroups of `G`
/// correspond to the `2^k - 1` nonzero functionals on it. The quotient basis
/// is picked greedily in element-index order and functionals are listed in
/// lexicographic order of their coefficient vectors.
pub fn enumerate_kernels(g: &FiniteGroup) -> Vec<Subgroup> {
    let (coords, rank) = quotient_coordinates(g);
    let n = g.order();
    (1u64..(1u64 << rank))
        .map(|code| {
            // coefficient of basis vector i is bit (rank-1-i) of `code`
            let f: u64 = (0..rank)
                .filter(|&i| code >> (rank - 1 - i) & 1 == 1)
                .map(|i| 1u64 << i)
                .sum();
            let members = (0..n)
                .filter(|&x| (coords[x] & f).count_ones().is_multiple_of(2))
                .collect();
            Subgroup::from_members(n, members)
        })
        .collect()
}

/// F2-rank of `G / ⟨commutators, squares⟩`.
pub fn quotient_rank(g: &FiniteGroup) -> u32 {
    quotient_coordinates(g).1
}

/// Coordinates of every element in the quotient by commutators and squares,
/// as bit vectors over the greedily chosen basis.
fn quotient_coordinates(g: &FiniteGroup) -> (Vec<u64>, u32) {
    let k = derived_and_squares(g);
    let n = g.order();
    let mut coords: Vec<Option<u64>> = vec![None; n];
    for &x in k.members() {
        coords[x] = Some(0);
    }
    let mut rank = 0u32;
    let mut filled: Vec<usize> = k.members().to_vec();
    for x in 0..n {
        if coords[x].is_some() {
            continue;
        }
        let bit = 1u64 << rank;
        rank += 1;
        let mut added = Vec::with_capacity(filled.len());
        for &y in &filled {
            let z = g.mul(y, x);
            debug_assert!(coords[z].is_none());
            coords[z] = Some(coords[y].unwrap() | bit);
            added.push(z);
        }
        filled.extend(added);
    }
    (coords.into_iter().map(|c| c.expect("quotient covers group")).collect(), rank)
}

/// Brute-force oracle: every subgroup of order `|G|/2`, found by growing
/// subgroups one element at a time from the trivial subgroup. Intended for
/// small groups only.
pub fn enumerate_kernels_brute_force(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    if !n.is_multiple_of(2) {
        return Vec::new();
    }
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![Subgroup::trivial(g)];
    seen.insert(Subgroup::trivial(g));
    let mut result = Vec::new();
    while let Some(s) = frontier.pop() {
        if s.len() == n / 2 {
            result.push(s);
            continue;
        }
        if s.len() > n / 2 {
            continue;
        }
        for x in g.elements().filter(|&x| !s.contains(x)) {
            let mut seeds = s.members().to_vec();
            seeds.push(x);
            let t = subgroup_closure(g, &seeds);
            if t.len() <= n / 2 && seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    result.sort_by(|a, b| a.members().cmp(b.members()));
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{realize_text, DEFAULT_COSET_LIMIT};

    fn group(text: &str) -> Arc<FiniteGroup> {
        Arc::new(realize_text(text, DEFAULT_COSET_LIMIT).unwrap())
    }

    const Q8: &str = "<a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1>";

    #[test]
    fn orientation_from_seeds() {
        let q8 = group(Q8);
        let a = q8.parse_element("a").unwrap();
        let o = make_orientation(q8.clone(), &[a]).unwrap();
        assert_eq!(o.kernel().len(), 4);
        assert_eq!(o.sigma(q8.parse_element("a^2").unwrap()), 1);
        assert_eq!(o.sigma(q8.parse_element("b").unwrap()), -1);
        assert_eq!(o.sigma(0), 1);

        let both = q8.parse_elements("a, b").unwrap();
        assert_eq!(
            make_orientation(q8.clone(), &both).unwrap_err(),
            OrientError::NotIndexTwo { sub: 8, group: 8 }
        );

        let g13 = group("<a,b,c | a^2=b^2=c^2=1, abc=bca=cab>");
        let o = make_orientation(g13.clone(), &g13.parse_elements("a, b").unwrap()).unwrap();
        assert_eq!(o.kernel().len(), 8);
    }

    #[test]
    fn sigma_is_multiplicative() {
        let g = group("<a,b | a^8=1, b^2=a^4, ab=ba^3>");
        for kernel in enumerate_kernels(&g) {
            let o = Orientation::new(g.clone(), kernel).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(o.sigma(g.mul(x, y)), o.sigma(x) * o.sigma(y));
                }
            }
        }
    }

    #[test]
    fn kernels_of_g16_8() {
        let g = group("<a,b | a^8=1, b^2=a^4, ab=ba^3>");
        let ks = enumerate_kernels(&g);
        assert_eq!(ks.len(), 3);
        let expected: Vec<Subgroup> = ["a", "a^2, b", "a^2, a*b"]
            .iter()
            .map(|s| subgroup_closure(&g, &g.parse_elements(s).unwrap()))
            .collect();
        for e in &expected {
            assert!(ks.contains(e));
        }
    }

    #[test]
    fn kernels_of_q8_match_brute_force() {
        let q8 = group(Q8);
        let mut ks = enumerate_kernels(&q8);
        ks.sort_by(|a, b| a.members().cmp(b.members()));
        let brute = enumerate_kernels_brute_force(&q8);
        assert_eq!(ks, brute);
        assert_eq!(ks.len(), 3);
        for s in ["a", "b", "a*b"] {
            let k = subgroup_closure(&q8, &q8.parse_elements(s).unwrap());
            assert!(ks.contains(&k));
        }
    }

    #[test]
    fn odd_and_perfect_groups_have_no_kernels() {
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert!(enumerate_kernels(&c3).is_empty());
        assert!(enumerate_kernels_brute_force(&c3).is_empty());
        let a5 = group("<a,b | a^2, b^3, (ab)^5>");
        assert!(enumerate_kernels(&a5).is_empty());
        let trivial = Arc::new(FiniteGroup::cyclic(1).unwrap());
        assert!(enumerate_kernels(&trivial).is_empty());
    }

    #[test]
    fn symmetric_group_has_one_kernel() {
        let s3 = group("<a,b | a^3, b^2, (ab)^2>");
        let ks = enumerate_kernels(&s3);
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].len(), 3);
    }

    #[test]
    fn kernel_count_law() {
        let e = FiniteGroup::elementary_abelian(4).unwrap();
        assert_eq!(quotient_rank(&e), 4);
        assert_eq!(enumerate_kernels(&e).len(), 15);
        assert_eq!(enumerate_kernels_brute_force(&e).len(), 15);
    }
}
