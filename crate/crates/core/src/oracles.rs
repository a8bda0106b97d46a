//! Independent cross-checks for the two membership engines.
//!
//! Words over `c1..c4` are handled as byte codes (`2i-1` for `c_i`, `2i` for
//! its inverse) packed four bits per letter into a `u64`, which holds up to
//! sixteen letters.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::freegroup::{pair_kernel_member, stallings_member, Generator, Letter, Word};
use crate::report::VerificationReport;

type Code = u8;

fn inv(c: Code) -> Code {
    if c % 2 == 1 {
        c + 1
    } else {
        c - 1
    }
}

fn push(out: &mut Vec<Code>, c: Code) {
    if out.last() == Some(&inv(c)) {
        out.pop();
    } else {
        out.push(c);
    }
}

fn product(parts: &[&[Code]]) -> Vec<Code> {
    let mut out = Vec::new();
    for p in parts {
        for &c in *p {
            push(&mut out, c);
        }
    }
    out
}

fn inverse(w: &[Code]) -> Vec<Code> {
    w.iter().rev().map(|&c| inv(c)).collect()
}

fn pack(w: &[Code]) -> u64 {
    debug_assert!(w.len() <= 16);
    w.iter().fold(0u64, |acc, &c| (acc << 4) | u64::from(c))
}

fn unpack(mut x: u64) -> Vec<Code> {
    let mut out = Vec::new();
    while x != 0 {
        out.push((x & 0xf) as Code);
        x >>= 4;
    }
    out.reverse();
    out
}

fn to_word(w: &[Code]) -> Word {
    Word::new(w.iter().map(|&c| {
        let g = Generator::c(u32::from(c).div_ceil(2));
        if c % 2 == 1 {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    }))
}

/// All reduced words of length at most `max_len` over `rank` generators.
fn reduced_words(rank: u8, max_len: usize) -> Vec<Vec<Code>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in 1..=2 * rank {
                if w.last() == Some(&inv(c)) {
                    continue;
                }
                let mut v: Vec<Code> = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Bounds of the normal-closure enumeration for `n = 2`.
pub const KERNEL_WORD_LEN: usize = 6;
pub const KERNEL_CONJUGATOR_LEN: usize = 3;
pub const KERNEL_FACTORS: usize = 3;

/// Words of length at most six that are products of at most three
/// conjugates `g p g^-1` with `p` in `{c1 c2^-1, c3 c4^-1}^{+-1}` and
/// `|g| <= 3`.
pub fn enumerate_normal_closure() -> HashSet<u64> {
    let ps: [&[Code]; 2] = [&[1, 4], &[5, 8]];
    let mut conj: Vec<Vec<Code>> = Vec::new();
    for g in reduced_words(4, KERNEL_CONJUGATOR_LEN) {
        let gi = inverse(&g);
        for p in ps {
            let pi = inverse(p);
            conj.push(product(&[&g, p, &gi]));
            conj.push(product(&[&g, &pi, &gi]));
        }
    }
    conj.push(Vec::new());
    conj.sort();
    conj.dedup();

    // products of two factors
    let mut pairs: Vec<u64> = Vec::with_capacity(conj.len() * conj.len());
    for a in &conj {
        for b in &conj {
            pairs.push(pack(&product(&[a, b])));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    // third factors indexed by (length, prefix of length t) for every t
    let mut index: HashMap<(usize, usize, u64), Vec<&[Code]>> = HashMap::new();
    for c in &conj {
        for t in 0..=c.len() {
            index
                .entry((c.len(), t, pack(&c[..t])))
                .or_default()
                .push(c);
        }
    }
    let lengths: Vec<usize> = {
        let mut l: Vec<usize> = conj.iter().map(Vec::len).collect();
        l.sort_unstable();
        l.dedup();
        l
    };

    let mut found = HashSet::new();
    for &s in &pairs {
        let s = unpack(s);
        for &len in &lengths {
            // s.c has length |s| + |c| - 2t for cancellation t
            let need = (s.len() + len).saturating_sub(KERNEL_WORD_LEN).div_ceil(2);
            if need > len || need > s.len() {
                continue;
            }
            let tail = inverse(&s[s.len() - need..]);
            if let Some(cands) = index.get(&(len, need, pack(&tail))) {
                for c in cands {
                    let r = product(&[&s, c]);
                    if r.len() <= KERNEL_WORD_LEN {
                        found.insert(pack(&r));
                    }
                }
            }
        }
    }
    found
}

/// Compares `pair_kernel_member(w, 2)` with the enumeration on every reduced
/// word of length at most six over `c1..c4`.
pub fn kernel_agreement() -> (usize, usize, Vec<String>) {
    let closure = enumerate_normal_closure();
    let mut disagreements = Vec::new();
    let words = reduced_words(4, KERNEL_WORD_LEN);
    for w in &words {
        let member = pair_kernel_member(&to_word(w), 2).expect("word over c1..c4");
        if member != closure.contains(&pack(w)) {
            disagreements.push(to_word(w).to_string());
        }
    }
    (words.len(), closure.len(), disagreements)
}

pub const STALLINGS_RANK: u8 = 3;
pub const STALLINGS_GEN_LEN: usize = 4;
pub const STALLINGS_QUERY_LEN: usize = 8;
pub const STALLINGS_FACTORS: usize = 6;

/// Whether `target` is a product of at most `STALLINGS_FACTORS` generators
/// and inverses. A positive answer is a witness; a negative one is only
/// evidence.
fn bounded_member(gens: &[Vec<Code>], target: &[Code]) -> bool {
    let mut symbols: Vec<Vec<Code>> = Vec::new();
    for g in gens {
        symbols.push(g.clone());
        symbols.push(inverse(g));
    }
    fn walk(
        symbols: &[Vec<Code>],
        acc: &[Code],
        last: Option<usize>,
        left: usize,
        target: &[Code],
    ) -> bool {
        if acc == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for (i, s) in symbols.iter().enumerate() {
            if last.is_some_and(|l| l ^ 1 == i) {
                continue;
            }
            let next = product(&[acc, s]);
            if walk(symbols, &next, Some(i), left - 1, target) {
                return true;
            }
        }
        false
    }
    walk(&symbols, &[], None, STALLINGS_FACTORS, target)
}

/// Membership read off the unfolded petal graph.
///
/// A word lies in the subgroup iff some closed path at the base spells a
/// word that freely reduces to it, and such a path spells
/// `t0 x1 t1 x2 ... xk tk` with each `ti` freely trivial. `trivial[p][q]`
/// records whether a freely trivial word labels a path `p -> q`; it is the
/// least relation containing the diagonal that is closed under composition
/// and under wrapping `x . t . x^-1`.
fn petal_member(gens: &[Vec<Code>], target: &[Code]) -> bool {
    let mut edges: Vec<(usize, Code, usize)> = Vec::new();
    let mut vertices = 1;
    for g in gens {
        if g.is_empty() {
            continue;
        }
        let mut at = 0;
        for (i, &c) in g.iter().enumerate() {
            let to = if i + 1 == g.len() {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            edges.push((at, c, to));
            edges.push((to, inv(c), at));
            at = to;
        }
    }
    let mut trivial = vec![vec![false; vertices]; vertices];
    for (v, row) in trivial.iter_mut().enumerate() {
        row[v] = true;
    }
    loop {
        let mut changed = false;
        for &(p, x, q) in &edges {
            for &(r, y, t) in &edges {
                if y == inv(x) && trivial[q][r] && !trivial[p][t] {
                    trivial[p][t] = true;
                    changed = true;
                }
            }
        }
        for p in 0..vertices {
            for q in 0..vertices {
                if !trivial[p][q] {
                    continue;
                }
                let reach = trivial[q].clone();
                for (r, &t) in reach.iter().enumerate() {
                    if t && !trivial[p][r] {
                        trivial[p][r] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let close = |set: Vec<bool>| -> Vec<bool> {
        (0..vertices)
            .map(|t| (0..vertices).any(|p| set[p] && trivial[p][t]))
            .collect()
    };
    let mut at = vec![false; vertices];
    at[0] = true;
    at = close(at);
    for &c in target {
        let mut next = vec![false; vertices];
        for &(p, x, q) in &edges {
            if x == c && at[p] {
                next[q] = true;
            }
        }
        at = close(next);
    }
    at[0]
}

fn random_reduced(rng: &mut ChaCha8Rng, rank: u8, len: usize) -> Vec<Code> {
    let mut w: Vec<Code> = Vec::with_capacity(len);
    while w.len() < len {
        let c = rng.gen_range(1..=2 * rank);
        if w.last() != Some(&inv(c)) {
            w.push(c);
        }
    }
    w
}

/// One seeded instance: generators and a query that is, about half the
/// time, a short product of the generators.
fn stallings_instance(rng: &mut ChaCha8Rng) -> (Vec<Vec<Code>>, Vec<Code>) {
    let rank = rng.gen_range(1..=STALLINGS_RANK as usize);
    let gens: Vec<Vec<Code>> = (0..rank)
        .map(|_| {
            let len = rng.gen_range(1..=STALLINGS_GEN_LEN);
            random_reduced(rng, STALLINGS_RANK, len)
        })
        .collect();
    if rng.gen_bool(0.5) {
        for _ in 0..16 {
            let k = rng.gen_range(1..=4);
            let mut acc = Vec::new();
            for _ in 0..k {
                let g = gens.choose(rng).expect("rank >= 1");
                let g = if rng.gen_bool(0.5) {
                    g.clone()
                } else {
                    inverse(g)
                };
                acc = product(&[&acc, &g]);
            }
            if acc.len() <= STALLINGS_QUERY_LEN {
                return (gens, acc);
            }
        }
    }
    let len = rng.gen_range(0..=STALLINGS_QUERY_LEN);
    let query = random_reduced(rng, STALLINGS_RANK, len);
    (gens, query)
}

/// Runs `instances` seeded comparisons of `stallings_member` with the
/// petal-graph decision; every product witness found by bounded
/// enumeration must also be accepted. Returns the number of members and
/// the disagreeing instances.
pub fn stallings_agreement(instances: usize, seed: u64) -> (usize, usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = 0;
    let mut witnessed = 0;
    let mut bad = Vec::new();
    for _ in 0..instances {
        let (gens, query) = stallings_instance(&mut rng);
        let words: Vec<Word> = gens.iter().map(|g| to_word(g)).collect();
        let fast = stallings_member(&words, &to_word(&query));
        let exact = petal_member(&gens, &query);
        let witness = bounded_member(&gens, &query);
        members += usize::from(exact);
        witnessed += usize::from(witness);
        if fast != exact || (witness && !fast) {
            let shown: Vec<String> = words.iter().map(Word::to_string).collect();
            bad.push(format!("<{}> ? {}", shown.join(", "), to_word(&query)));
        }
    }
    (members, witnessed, bad)
}

/// Both engines against their enumeration oracles.
pub fn verify_oracles(instances: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("oracles", Some(seed));
    let (total, members, bad) = kernel_agreement();
    report.check(
        "pair-kernel-vs-normal-closure",
        "k2n-membership",
        bad.is_empty(),
        format!(
            "{total} words of length <= {KERNEL_WORD_LEN}, {members} found as products of <= {KERNEL_FACTORS} conjugates; {} disagreements{}",
            bad.len(),
            bad.first().map(|w| format!(", first {w}")).unwrap_or_default()
        ),
    );
    let (members, witnessed, bad) = stallings_agreement(instances, seed);
    report.check(
        "stallings-vs-petal-graph",
        "subgroup-membership",
        bad.is_empty(),
        format!(
            "{instances} instances, {members} members ({witnessed} with a product of <= {STALLINGS_FACTORS} factors); {} disagreements{}",
            bad.len(),
            bad.first().map(|w| format!(", first {w}")).unwrap_or_default()
        ),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trips() {
        for w in reduced_words(4, 4) {
            assert_eq!(unpack(pack(&w)), w);
        }
        assert_eq!(pack(&[]), 0);
    }

    #[test]
    fn word_counts() {
        // 1 + 8 (1 + 7 + ... + 7^(n-1))
        assert_eq!(reduced_words(4, 2).len(), 1 + 8 + 56);
        assert_eq!(
            reduced_words(4, 6).len(),
            1 + 8 + 56 + 392 + 2744 + 19208 + 134456
        );
    }

    #[test]
    fn bounded_member_examples() {
        let gens = vec![vec![1, 3], vec![1, 5]];
        // c2^-1 c3 = (c1 c2)^-1 (c1 c3)
        assert!(bounded_member(&gens, &[4, 5]));
        assert!(!bounded_member(&gens, &[1]));
        assert!(bounded_member(&gens, &[]));
    }

    #[test]
    fn petal_member_examples() {
        let gens = vec![vec![1, 3], vec![1, 5]];
        assert!(petal_member(&gens, &[4, 5]));
        assert!(!petal_member(&gens, &[3, 5]));
        assert!(petal_member(&gens, &[]));
        assert!(!petal_member(&[], &[1]));
        // <c2, c3 c2, c1^-1> is the whole group; the query needs ten factors
        let whole = vec![vec![3], vec![5, 3], vec![2]];
        let q = [2, 3, 3, 3, 3, 5, 4, 6];
        assert!(petal_member(&whole, &q));
        assert!(!bounded_member(&whole, &q));
    }

    #[test]
    fn stallings_small_run_agrees() {
        let (members, witnessed, bad) = stallings_agreement(60, 1);
        assert!(bad.is_empty(), "{bad:?}");
        assert!(members >= witnessed && witnessed > 0);
    }
}
