//! Property tests: parser round trips, group-ring laws, and the involution.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use skewring_core::group::{realize_text, FiniteGroup, DEFAULT_COSET_LIMIT};
use skewring_core::groupring::{antisym_generators, commutator, phi_sigma, GroupRingElement};
use skewring_core::harness::groups::named_presentation;
use skewring_core::orient::{enumerate_kernels, Orientation};
use skewring_core::presdsl::{format_word, parse_presentation, parse_word, Word};
use skewring_core::ring::CoeffRing;

const NAMES: [&str; 4] = ["Q8", "D4", "G[16,4]", "G[16,13]"];

fn groups() -> &'static [Arc<FiniteGroup>] {
    static G: OnceLock<Vec<Arc<FiniteGroup>>> = OnceLock::new();
    G.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| Arc::new(realize_text(named_presentation(n).unwrap(), DEFAULT_COSET_LIMIT).unwrap()))
            .collect()
    })
}

fn gens() -> Vec<String> {
    ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, -5i64..=5), 0..8).prop_map(Word::from_factors)
}

fn rings() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![
        Just(CoeffRing::integers()),
        (3u64..=12).prop_map(|m| CoeffRing::modulo(m).unwrap()),
    ]
}

/// A group index, a ring, and three elements of the group ring.
fn triple() -> impl Strategy<Value = (usize, CoeffRing, [Vec<i64>; 3])> {
    (0..NAMES.len(), rings()).prop_flat_map(|(gi, r)| {
        let n = groups()[gi].order();
        let v = || prop::collection::vec(-6i64..=6, n);
        (Just(gi), Just(r), [v(), v(), v()])
    })
}

fn element(g: &Arc<FiniteGroup>, r: CoeffRing, c: &[i64]) -> GroupRingElement {
    let terms: Vec<(usize, i64)> = c.iter().copied().enumerate().collect();
    GroupRingElement::from_terms(g.clone(), r, &terms).unwrap()
}

proptest! {
    #[test]
    fn words_print_and_parse_back(w in word()) {
        let text = format_word(&w, &gens());
        prop_assert_eq!(parse_word(&text, &gens()).unwrap(), w);
    }

    #[test]
    fn presentations_print_and_parse_back(rels in prop::collection::vec(word(), 1..4)) {
        // the identity relator prints as "1", which parses back to the empty word
        let body: Vec<String> = rels.iter().map(|w| format_word(w, &gens())).collect();
        let text = format!("<a,b,c | {}>", body.join(", "));
        let p = parse_presentation(&text).unwrap();
        prop_assert_eq!(&p.generators, &gens());
        prop_assert_eq!(&p.relators, &rels);
        prop_assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn multiplication_is_associative_and_distributive((gi, r, [x, y, z]) in triple()) {
        let g = &groups()[gi];
        let (x, y, z) = (element(g, r, &x), element(g, r, &y), element(g, r, &z));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn phi_is_an_anti_automorphism((gi, r, [x, y, _]) in triple(), k in 0usize..7) {
        let g = &groups()[gi];
        let ks = enumerate_kernels(g);
        let o = Orientation::new(g.clone(), ks[k % ks.len()].clone()).unwrap();
        let (x, y) = (element(g, r, &x), element(g, r, &y));
        let phi = |e: &GroupRingElement| phi_sigma(&o, e).unwrap();
        prop_assert_eq!(phi(&phi(&x)), x.clone());
        prop_assert_eq!(phi(&x.mul(&y).unwrap()), phi(&y).mul(&phi(&x)).unwrap());
        prop_assert_eq!(phi(&x.add(&y).unwrap()), phi(&x).add(&phi(&y)).unwrap());
        // x - phi(x) is always antisymmetric
        let d = x.sub(&phi(&x)).unwrap();
        prop_assert_eq!(phi(&d), d.neg().unwrap());
    }

    #[test]
    fn commutator_is_antisymmetric_in_its_arguments((gi, r, [x, y, _]) in triple()) {
        let g = &groups()[gi];
        let (x, y) = (element(g, r, &x), element(g, r, &y));
        prop_assert_eq!(commutator(&x, &y).unwrap(), commutator(&y, &x).unwrap().neg().unwrap());
    }

    #[test]
    fn ring_operations_stay_reduced(r in rings(), a in -1000i64..1000, b in -1000i64..1000) {
        let (a, b) = (r.reduce(a), r.reduce(b));
        for v in [r.add(a, b).unwrap(), r.mul(a, b).unwrap(), r.neg(a).unwrap()] {
            prop_assert_eq!(r.reduce(v), v);
        }
        prop_assert!(r.is_zero(r.add(a, r.neg(a).unwrap()).unwrap()));
    }
}

#[test]
fn generators_are_antisymmetric() {
    for g in groups() {
        for k in enumerate_kernels(g) {
            let o = Orientation::new(g.clone(), k).unwrap();
            for r in ["z", "z/4", "z/6", "z/8"] {
                let set = antisym_generators(&o, r.parse().unwrap());
                for x in &set.generators {
                    assert!(!x.is_zero());
                    assert_eq!(phi_sigma(&o, x).unwrap(), x.neg().unwrap(), "{x}");
                }
            }
        }
    }
}
