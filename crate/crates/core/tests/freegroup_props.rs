use dpcheck::freegroup::{
    pair_kernel_member, reduce, stallings_member, truncate, Generator, Letter, Word,
};
use proptest::prelude::*;

fn letter(max: u32) -> impl Strategy<Value = Letter> {
    (1..=max, any::<bool>()).prop_map(|(i, pos)| {
        let g = Generator::c(i);
        if pos {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    })
}

fn raw(max: u32, len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(max), 0..len)
}

fn word(max: u32, len: usize) -> impl Strategy<Value = Word> {
    raw(max, len).prop_map(Word::new)
}

/// Deletes the leftmost cancelling pair until none is left.
fn naive_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i].cancels(&w[i + 1])) {
        w.drain(i..i + 2);
    }
    w
}

/// A product of conjugates of the pair generators `c_{2i-1} c_{2i}^-1`.
fn kernel_element(n: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec((word(2 * n, 6), 1..=n, any::<bool>()), 0..4).prop_map(|fs| {
        fs.into_iter().fold(Word::identity(), |acc, (g, i, pos)| {
            let p = Word::c_word(&[2 * i - 1]).concat(&Word::c_word(&[2 * i]).inverse());
            let p = if pos { p } else { p.inverse() };
            acc.concat(&g.conjugate(&p))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn reduce_matches_naive(w in raw(4, 24)) {
        let fast = reduce(w.clone());
        let slow = naive_reduce(w);
        prop_assert_eq!(fast.letters(), slow.as_slice());
    }

    #[test]
    fn reduce_idempotent_and_shrinking(w in raw(4, 24)) {
        let r = reduce(w.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(reduce(r.letters().iter().copied()), r.clone());
        prop_assert!(r.concat(&r.inverse()).is_identity());
    }

    #[test]
    fn inserted_pairs_vanish(w in raw(4, 16), at in any::<prop::sample::Index>(), l in letter(4)) {
        let mut v = w.clone();
        let i = at.index(v.len() + 1);
        v.splice(i..i, [l, l.inverse()]);
        prop_assert_eq!(reduce(v), reduce(w));
    }
}

proptest! {
    #[test]
    fn kernel_is_normal(
        u in kernel_element(3),
        v in kernel_element(3),
        g in word(6, 10),
        w in word(6, 10),
    ) {
        prop_assert!(pair_kernel_member(&u, 3).unwrap());
        prop_assert!(pair_kernel_member(&u.concat(&v), 3).unwrap());
        prop_assert!(pair_kernel_member(&u.inverse(), 3).unwrap());
        prop_assert!(pair_kernel_member(&g.conjugate(&u), 3).unwrap());
        prop_assert_eq!(
            pair_kernel_member(&g.conjugate(&w), 3).unwrap(),
            pair_kernel_member(&w, 3).unwrap()
        );
        // a coset of a non-member never meets the kernel
        if !pair_kernel_member(&w, 3).unwrap() {
            prop_assert!(!pair_kernel_member(&w.concat(&u), 3).unwrap());
        }
    }

    #[test]
    fn kernel_rejects_out_of_range(w in word(4, 8)) {
        prop_assert_eq!(pair_kernel_member(&w, 2).is_ok(), true);
        let outside = w.concat(&Word::c_word(&[5]));
        prop_assert!(pair_kernel_member(&outside, 2).is_err());
    }

    #[test]
    fn truncation_is_a_homomorphism(u in word(6, 12), v in word(6, 12), m in 0u32..7) {
        prop_assert_eq!(truncate(&u.concat(&v), m), truncate(&u, m).concat(&truncate(&v, m)));
        prop_assert_eq!(truncate(&truncate(&u, m), m), truncate(&u, m));
    }

    #[test]
    fn stallings_accepts_products(
        gens in prop::collection::vec(word(3, 5), 1..4),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..8),
    ) {
        let product = picks.iter().fold(Word::identity(), |acc, (i, pos)| {
            let g = &gens[i.index(gens.len())];
            acc.concat(&if *pos { g.clone() } else { g.inverse() })
        });
        prop_assert!(stallings_member(&gens, &product));
        for g in &gens {
            prop_assert!(stallings_member(&gens, g));
        }
    }

    #[test]
    fn stallings_is_closed(
        gens in prop::collection::vec(word(3, 5), 0..4),
        a in word(3, 6),
        b in word(3, 6),
    ) {
        let ma = stallings_member(&gens, &a);
        let mb = stallings_member(&gens, &b);
        if ma && mb {
            prop_assert!(stallings_member(&gens, &a.concat(&b.inverse())));
        }
        if ma && !mb {
            prop_assert!(!stallings_member(&gens, &a.concat(&b)));
        }
    }
}
