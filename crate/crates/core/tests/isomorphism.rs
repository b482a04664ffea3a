//! The isomorphism search and the classifier's oriented matching against a
//! brute-force oracle on small groups.

use std::sync::Arc;

use skewring_core::classify::Classifier;
use skewring_core::group::{realize_text, subgroup_closure, FiniteGroup, Subgroup, DEFAULT_COSET_LIMIT};
use skewring_core::harness::groups::named_presentation;
use skewring_core::orient::enumerate_kernels;
use skewring_core::ring::RingClass;
use skewring_core::structure::{find_isomorphism, is_isomorphism};

fn realize(p: &str) -> FiniteGroup {
    realize_text(named_presentation(p).unwrap_or(p), DEFAULT_COSET_LIMIT).unwrap()
}

/// Tries every assignment of generator images, extends it to a map along a
/// BFS over the generators, and keeps it if it is a bijective homomorphism
/// (carrying `n` onto `m` when given).
fn oracle(g: &FiniteGroup, h: &FiniteGroup, kernels: Option<(&Subgroup, &Subgroup)>) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let gens = g.generators().to_vec();
    let n = h.order();
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend(g, h, &gens, &images) {
            let ok = match kernels {
                Some((a, b)) => a.members().iter().all(|&x| b.contains(map[x])),
                None => true,
            };
            if ok {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == images.len() {
                return false;
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                stack.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    let mut seen = vec![false; h.order()];
    for &v in &map {
        if std::mem::replace(&mut seen[v], true) {
            return None;
        }
    }
    Some(map)
}

const SMALL: &[&str] = &[
    "Q8",
    "D4",
    "<a,b | a^4, b^2, ab=ba>",
    "<a,b,c | a^2, b^2, c^2, ab=ba, ac=ca, bc=cb>",
    "<a | a^8>",
    "<x,y | x^4=1, y^2=x^2, y^-1*x*y=x^-1>",
    "<r,s | r^4, s^2, s*r*s=r^-1>",
];

const SIXTEEN: &[&str] = &[
    "G[16,8]",
    "G[16,9]",
    "G[16,4]",
    "G[16,13]",
    "G[16,3]",
    "Q8xC2",
    "<a,b | a^8=1, b^2=1, b*a*b=a^-1>",
    "<a,b | a^4=b^4=1, ab=ba>",
    "<a,b,e | a^4=b^2=e^2=1, b*a*b=a^-1, ae=ea, be=eb>",
    "<g,h | g^8=1, h^2=g^4, g*h=h*g^3>",
];

fn check_all(names: &[&str]) {
    let gs: Vec<FiniteGroup> = names.iter().map(|p| realize(p)).collect();
    for (i, g) in gs.iter().enumerate() {
        for (j, h) in gs.iter().enumerate() {
            let expected = oracle(g, h, None);
            let found = find_isomorphism(g, h, None);
            assert_eq!(found.is_some(), expected, "{} vs {}", names[i], names[j]);
            if let Some(map) = found {
                assert!(is_isomorphism(g, h, &map, None));
            }
        }
    }
}

#[test]
fn isomorphism_search_agrees_with_oracle_up_to_order_8() {
    check_all(SMALL);
}

#[test]
fn isomorphism_search_agrees_with_oracle_at_order_16() {
    check_all(SIXTEEN);
}

#[test]
fn oriented_search_agrees_with_oracle() {
    let pairs = [("G[16,8]", "<g,h | g^8=1, h^2=g^4, g*h=h*g^3>"), ("G[16,4]", "G[16,4]"), ("Q8xC2", "Q8xC2")];
    for (a, b) in pairs {
        let (g, h) = (realize(a), realize(b));
        for n in enumerate_kernels(&g) {
            for m in enumerate_kernels(&h) {
                let expected = oracle(&g, &h, Some((&n, &m)));
                let found = find_isomorphism(&g, &h, Some((&n, &m)));
                assert_eq!(found.is_some(), expected, "{a} {} vs {b} {}", n.label(&g), m.label(&h));
                if let Some(map) = found {
                    assert!(is_isomorphism(&g, &h, &map, Some((&n, &m))));
                }
            }
        }
    }
}

#[test]
fn classifier_recognizes_renamed_catalog_groups() {
    let c = Classifier::new().unwrap();
    // G[16,8] on renamed generators
    let g = Arc::new(realize("<g,h | g^8=1, h^2=g^4, g*h=h*g^3>"));
    let n = subgroup_closure(&g, &g.parse_elements("g^2, g*h").unwrap());
    let case = c.classify(&g, &n, RingClass::R2Zero).unwrap().unwrap();
    assert_eq!(case.case_id.as_str(), "C1");
    assert!(c.classify(&g, &n, RingClass::Char4).unwrap().is_none());
}
