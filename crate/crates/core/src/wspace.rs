//! The Cantor-gap semicircle space `W` at the level of its support
//! homomorphism.
//!
//! Elements are formal words in `w_I` (one generator per Cantor gap, i.e.
//! per dyadic node) and `w_inf` (the loop running over every gap at once).
//! `w_inf` restricted to a subtree of gaps is also allowed; by
//! self-similarity it is a copy of `w_inf`. The support homomorphism sends a
//! word to its winding numbers around the closed curves `K_I`, an element of
//! the product of copies of `Z` indexed by the gaps. Membership in `N_0`
//! depends only on that image.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::freegroup::Sign;
use crate::orders::{classify, DyadicNode, Subtree, SymbolicDyadicSet, TreeFn};
use crate::report::VerificationReport;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum WGen {
    W(DyadicNode),
    WInf(Subtree),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WLetter {
    pub gen: WGen,
    pub sign: Sign,
}

impl WLetter {
    pub fn w(node: DyadicNode) -> Self {
        WLetter {
            gen: WGen::W(node),
            sign: Sign::Pos,
        }
    }

    pub fn w_inf(region: Subtree) -> Self {
        WLetter {
            gen: WGen::WInf(region),
            sign: Sign::Pos,
        }
    }

    pub fn inverse(self) -> Self {
        WLetter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for WLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            WGen::W(n) => write!(f, "w({},{})", n.level(), n.position())?,
            WGen::WInf(Subtree::Whole) => f.write_str("w-inf")?,
            WGen::WInf(Subtree::Rooted(n)) => write!(f, "w-inf({},{})", n.level(), n.position())?,
        }
        if self.sign == Sign::Neg {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A freely reduced word in the `W` generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WElement {
    letters: Vec<WLetter>,
}

impl WElement {
    pub fn new(letters: impl IntoIterator<Item = WLetter>) -> Self {
        let mut out: Vec<WLetter> = Vec::new();
        for l in letters {
            if out
                .last()
                .is_some_and(|t| t.gen == l.gen && t.sign != l.sign)
            {
                out.pop();
            } else {
                out.push(l);
            }
        }
        WElement { letters: out }
    }

    pub fn identity() -> Self {
        WElement::default()
    }

    pub fn w(node: DyadicNode) -> Self {
        WElement::new([WLetter::w(node)])
    }

    pub fn w_inf() -> Self {
        WElement::new([WLetter::w_inf(Subtree::Whole)])
    }

    pub fn letters(&self) -> &[WLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WElement {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &WElement) -> Self {
        WElement::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn conjugate_by(&self, h: &WElement) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    pub fn commutator(&self, other: &WElement) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("eps");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An element of the product of copies of `Z` over the gaps, constant on
/// all but finitely many subtrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportFamily {
    values: TreeFn<i64>,
}

impl SupportFamily {
    pub fn zero() -> Self {
        SupportFamily {
            values: TreeFn::Const(0),
        }
    }

    pub fn indicator(node: &DyadicNode) -> Self {
        SupportFamily {
            values: TreeFn::point(node, 1, 0),
        }
    }

    pub fn region(region: &Subtree) -> Self {
        SupportFamily {
            values: TreeFn::subtree_indicator(region, 1, 0),
        }
    }

    pub fn value_at(&self, node: &DyadicNode) -> i64 {
        self.values.value_at(node)
    }

    pub fn add(&self, other: &Self) -> Self {
        SupportFamily {
            values: self.values.zip_with(&other.values, &|a, b| a + b),
        }
    }

    pub fn neg(&self) -> Self {
        SupportFamily {
            values: self.values.map(&|a| -a),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.values == TreeFn::Const(0)
    }

    /// Subtree regions with their constant values.
    pub fn regions(&self) -> Vec<(Subtree, i64)> {
        self.values.regions()
    }

    /// Values pinned at individual nodes between the regions.
    pub fn overrides(&self) -> Vec<(DyadicNode, i64)> {
        self.values.split_values()
    }
}

/// The support homomorphism: winding numbers of `e` around every `K_I`.
pub fn phi(e: &WElement) -> SupportFamily {
    let mut exponents: BTreeMap<WGen, i64> = BTreeMap::new();
    for l in e.letters() {
        *exponents.entry(l.gen).or_insert(0) += match l.sign {
            Sign::Pos => 1,
            Sign::Neg => -1,
        };
    }
    exponents
        .into_iter()
        .filter(|&(_, k)| k != 0)
        .fold(SupportFamily::zero(), |acc, (g, k)| {
            let values = match g {
                WGen::W(n) => TreeFn::point(&n, k, 0),
                WGen::WInf(r) => TreeFn::subtree_indicator(&r, k, 0),
            };
            acc.add(&SupportFamily { values })
        })
}

/// Nodes where the family is non-zero.
pub fn support(s: &SupportFamily) -> SymbolicDyadicSet {
    SymbolicDyadicSet::from_indicator(s.values.map(&|v| *v != 0))
}

/// `e` lies in `N_0` iff its support is a scattered suborder.
pub fn in_n0(e: &WElement) -> bool {
    classify(&support(&phi(e))).is_scattered()
}

/// Seeded sampler for `W`-elements.
///
/// Word length is geometric with success probability 1/4 (mean 3, capped at
/// 64); each letter is a `w_I` with probability 4/5 and a `w_inf` otherwise;
/// `w_I` nodes and proper-subtree roots are uniform over the 255 nodes of
/// level at most 8; a `w_inf` covers the whole tree with probability 1/2;
/// signs are fair coins.
pub struct WSampler {
    rng: ChaCha8Rng,
}

pub const SAMPLE_MAX_LEVEL: u32 = 8;
const LENGTH_CAP: usize = 64;

impl WSampler {
    pub fn new(seed: u64) -> Self {
        WSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn node(&mut self) -> DyadicNode {
        let max = (1u64 << SAMPLE_MAX_LEVEL) - 1;
        DyadicNode::from_bfs_index(self.rng.gen_range(1..=max)).expect("index in range")
    }

    fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    fn length(&mut self) -> usize {
        let mut len = 0;
        while len < LENGTH_CAP && !self.rng.gen_bool(0.25) {
            len += 1;
        }
        len
    }

    pub fn letter(&mut self) -> WLetter {
        let gen = if self.rng.gen_range(0..5) < 4 {
            WGen::W(self.node())
        } else if self.rng.gen_bool(0.5) {
            WGen::WInf(Subtree::Whole)
        } else {
            WGen::WInf(Subtree::Rooted(self.node()))
        };
        WLetter {
            gen,
            sign: self.sign(),
        }
    }

    pub fn element(&mut self) -> WElement {
        let len = self.length();
        WElement::new((0..len).map(|_| self.letter()))
    }

    /// An element of `N_0` by construction: a product of `w_I` letters and
    /// conjugates of commutators of arbitrary sampled elements.
    pub fn n0_element(&mut self) -> WElement {
        let len = self.length().min(8);
        let mut acc = WElement::identity();
        for _ in 0..len {
            let factor = if self.rng.gen_bool(0.7) {
                let n = self.node();
                let l = WLetter::w(n);
                WElement::new([if self.rng.gen_bool(0.5) {
                    l
                } else {
                    l.inverse()
                }])
            } else {
                let a = self.element();
                let b = self.element();
                let h = self.element();
                a.commutator(&b).conjugate_by(&h)
            };
            acc = acc.mul(&factor);
        }
        acc
    }
}

/// Checks the subgroup, normality and generator claims for `N_0` on
/// `samples` seeded random pairs plus fixed witnesses.
pub fn verify_n0_proposition(samples: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("n0", Some(seed));
    let mut sampler = WSampler::new(seed);

    let mut closure_bad = 0usize;
    let mut closure_tested = 0usize;
    let mut conj_bad = 0usize;
    let mut union_bad = 0usize;
    let mut comm_bad = 0usize;
    let mut normal_bad = 0usize;
    let mut coset_bad = 0usize;
    let mut additive_bad = 0usize;
    let w_inf = WElement::w_inf();

    for _ in 0..samples {
        let g = sampler.element();
        let h = sampler.element();
        let n0g = sampler.n0_element();
        let n0h = sampler.n0_element();

        let (pg, ph) = (phi(&g), phi(&h));
        if phi(&g.mul(&h)) != pg.add(&ph) {
            additive_bad += 1;
        }

        // g, h in N_0 => g h^-1 in N_0, on both the raw and the N_0 samples
        for (a, b) in [(&g, &h), (&n0g, &n0h), (&n0g, &h), (&g, &n0h)] {
            if in_n0(a) && in_n0(b) {
                closure_tested += 1;
                if !in_n0(&a.mul(&b.inverse())) {
                    closure_bad += 1;
                }
            }
        }

        if phi(&g.conjugate_by(&h)) != pg {
            conj_bad += 1;
        }
        if in_n0(&g.conjugate_by(&h)) != in_n0(&g) || !in_n0(&n0g.conjugate_by(&h)) {
            normal_bad += 1;
        }

        let quotient = support(&phi(&g.mul(&h.inverse())));
        if !quotient.is_subset(&support(&pg).union(&support(&ph))) {
            union_bad += 1;
        }

        let comm = g.commutator(&h);
        if !phi(&comm).is_zero() || !in_n0(&comm) {
            comm_bad += 1;
        }

        if !in_n0(&n0g) || in_n0(&w_inf.mul(&n0g)) {
            coset_bad += 1;
        }
    }

    let count = |bad: usize, n: usize| format!("{} of {} failed", bad, n);
    report.check(
        "phi-additive",
        "phi-homomorphism",
        additive_bad == 0,
        count(additive_bad, samples),
    );
    report.check(
        "subgroup-closure",
        "n0-subgroup",
        closure_bad == 0 && closure_tested > 0,
        format!(
            "{}; {} pairs had both factors in N0",
            count(closure_bad, closure_tested),
            closure_tested
        ),
    );
    report.check(
        "phi-conjugation-invariant",
        "phi-conjugation-invariance",
        conj_bad == 0,
        count(conj_bad, samples),
    );
    report.check(
        "n0-normal",
        "n0-normal",
        normal_bad == 0,
        count(normal_bad, samples),
    );
    report.check(
        "support-union",
        "support-of-quotient-in-union",
        union_bad == 0,
        count(union_bad, samples),
    );
    report.check(
        "commutators-in-n0",
        "commutators-in-n0",
        comm_bad == 0,
        count(comm_bad, samples),
    );
    report.check(
        "w-inf-coset-avoids-n0",
        "w-inf-not-in-n0",
        coset_bad == 0,
        count(coset_bad, samples),
    );

    // fixed witnesses
    let mut w_ok = true;
    for i in 1..=(1u64 << SAMPLE_MAX_LEVEL) - 1 {
        let j = DyadicNode::from_bfs_index(i).expect("index in range");
        let e = WElement::w(j);
        let s = support(&phi(&e));
        w_ok &= in_n0(&e)
            && s.finite_members()
                .is_some_and(|m| m.len() == 1 && m.contains(&j));
    }
    report.check(
        "w-I-in-n0",
        "w-I-in-n0",
        w_ok,
        "every w_I with I of level <= 8 has one-point support",
    );
    let whole = support(&phi(&w_inf));
    report.check(
        "w-inf-not-in-n0",
        "w-inf-not-in-n0",
        !in_n0(&w_inf) && whole == SymbolicDyadicSet::whole(),
        format!("supp(phi(w_inf)) = {whole}"),
    );
    let j = DyadicNode::new(3, 2).expect("valid node");
    let comm = WElement::w(j).commutator(&w_inf);
    report.check(
        "commutator-w-I-w-inf",
        "commutators-in-n0",
        in_n0(&comm) && phi(&comm).is_zero(),
        format!("{comm}"),
    );
    let punctured = w_inf.mul(&WElement::w(j).inverse());
    let s = support(&phi(&punctured));
    report.check(
        "w-inf-minus-point-not-in-n0",
        "w-inf-not-in-n0",
        !in_n0(&punctured),
        format!("supp = {s}"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_welement;

    fn node(n: u32, k: u64) -> DyadicNode {
        DyadicNode::new(n, k).unwrap()
    }

    #[test]
    fn phi_examples() {
        let j = node(2, 1);
        let f = phi(&WElement::w(j));
        assert_eq!(f.value_at(&j), 1);
        assert_eq!(f.value_at(&node(1, 1)), 0);
        assert_eq!(f.value_at(&node(3, 1)), 0);
        let all = phi(&WElement::w_inf());
        assert_eq!(all.regions(), vec![(Subtree::Whole, 1)]);
        assert!(phi(&parse_welement("w(2,1) w(2,1)'").unwrap()).is_zero());
        let sub = phi(&parse_welement("w-inf(2,2)").unwrap());
        assert_eq!(sub.value_at(&node(4, 7)), 1);
        assert_eq!(sub.value_at(&node(1, 1)), 0);
    }

    #[test]
    fn phi_ignores_free_reduction_of_unrelated_letters() {
        // not freely reducible, but phi is additive and abelian
        let e = parse_welement("w(1,1) w-inf w(1,1)' w-inf'").unwrap();
        assert_eq!(e.len(), 4);
        assert!(phi(&e).is_zero());
    }

    #[test]
    fn support_examples() {
        let j = node(3, 3);
        let s = support(&phi(&WElement::w(j)));
        assert_eq!(
            s.finite_members().unwrap().into_iter().collect::<Vec<_>>(),
            vec![j]
        );
        assert_eq!(
            support(&phi(&WElement::w_inf())),
            SymbolicDyadicSet::whole()
        );
        assert!(support(&SupportFamily::zero()).is_empty());
    }

    #[test]
    fn n0_examples() {
        let j = node(2, 2);
        assert!(in_n0(&WElement::w(j)));
        assert!(!in_n0(&WElement::w_inf()));
        let comm = WElement::w(j).commutator(&WElement::w_inf());
        assert!(in_n0(&comm));
        let g = WElement::w_inf().mul(&WElement::w(j).inverse());
        assert!(!in_n0(&g));
        let h = WElement::w(j).mul(&WElement::w(node(3, 1)).inverse());
        assert!(in_n0(&h));
    }

    #[test]
    fn winf_on_subtree_cancels_against_its_pieces() {
        // w-inf = w-inf(2,1) + w(1,1) + w-inf(2,2) at the level of phi
        let e = parse_welement("w-inf w-inf(2,1)' w(1,1)' w-inf(2,2)'").unwrap();
        assert!(phi(&e).is_zero());
        assert!(in_n0(&e));
    }

    #[test]
    fn overrides_and_regions_describe_the_family() {
        let f = phi(&parse_welement("w-inf w(2,1) w(2,1)").unwrap());
        let regions = f.regions();
        let overrides = f.overrides();
        assert!(regions.iter().all(|(_, v)| *v == 1));
        assert!(overrides.contains(&(node(2, 1), 3)));
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<WElement> = {
            let mut s = WSampler::new(42);
            (0..50).map(|_| s.element()).collect()
        };
        let b: Vec<WElement> = {
            let mut s = WSampler::new(42);
            (0..50).map(|_| s.element()).collect()
        };
        assert_eq!(a, b);
        let mut s = WSampler::new(1);
        for _ in 0..200 {
            assert!(in_n0(&s.n0_element()));
        }
    }

    #[test]
    fn verifier_smoke() {
        let r = verify_n0_proposition(1, 7);
        assert_eq!(r.seed, Some(7));
        assert!(r.passed(), "{}", r.summary());
        let r = verify_n0_proposition(200, 7);
        assert!(r.passed(), "{}", r.summary());
    }
}
