use dpcheck::freegroup::Sign;
use dpcheck::orders::{classify, DyadicNode, Subtree};
use dpcheck::wspace::{in_n0, phi, support, WElement, WGen, WSampler};
use proptest::prelude::*;

/// Winding number of `e` around the gap `node`, counted letter by letter.
fn winding(e: &WElement, node: &DyadicNode) -> i64 {
    e.letters()
        .iter()
        .map(|l| {
            let hit = match l.gen {
                WGen::W(n) => n == *node,
                WGen::WInf(Subtree::Whole) => true,
                WGen::WInf(Subtree::Rooted(r)) => node.descends_from(&r),
            };
            match (hit, l.sign) {
                (false, _) => 0,
                (true, Sign::Pos) => 1,
                (true, Sign::Neg) => -1,
            }
        })
        .sum()
}

fn probe_nodes() -> Vec<DyadicNode> {
    let mut v: Vec<DyadicNode> = (1..=511)
        .map(|i| DyadicNode::from_bfs_index(i).unwrap())
        .collect();
    v.push(DyadicNode::new(20, 1).unwrap());
    v.push(DyadicNode::new(20, 1 << 19).unwrap());
    v.push(DyadicNode::new(30, 12345).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn phi_matches_letter_count(seed in any::<u64>()) {
        let mut s = WSampler::new(seed);
        let e = s.element();
        let p = phi(&e);
        for n in probe_nodes() {
            prop_assert_eq!(p.value_at(&n), winding(&e, &n), "at {}", n);
        }
    }

    #[test]
    fn phi_is_a_homomorphism(seed in any::<u64>()) {
        let mut s = WSampler::new(seed);
        let (g, h) = (s.element(), s.element());
        prop_assert_eq!(phi(&g.mul(&h)), phi(&g).add(&phi(&h)));
        prop_assert_eq!(phi(&g.inverse()), phi(&g).neg());
        prop_assert_eq!(phi(&g.conjugate_by(&h)), phi(&g));
        prop_assert_eq!(support(&phi(&g.conjugate_by(&h))), support(&phi(&g)));
    }

    #[test]
    fn n0_is_normal(seed in any::<u64>()) {
        let mut s = WSampler::new(seed);
        let (a, b, h) = (s.n0_element(), s.n0_element(), s.element());
        prop_assert!(in_n0(&a) && in_n0(&b));
        prop_assert!(in_n0(&a.mul(&b)));
        prop_assert!(in_n0(&a.inverse()));
        prop_assert!(in_n0(&a.conjugate_by(&h)));
        prop_assert!(!in_n0(&WElement::w_inf().mul(&a)));
        prop_assert!(in_n0(&h.commutator(&a)));
    }

    #[test]
    fn n0_is_decided_by_support(seed in any::<u64>()) {
        let mut s = WSampler::new(seed);
        let e = s.element();
        prop_assert_eq!(in_n0(&e), classify(&support(&phi(&e))).is_scattered());
    }
}
