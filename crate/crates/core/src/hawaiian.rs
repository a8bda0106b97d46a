//! Transfinite elements of the one-sided Hawaiian earring group and their
//! finite truncations.
//!
//! The whisker to the base point is absorbed into the generators, so the
//! truncation of every element at level `m` is a word in `c_1..c_m`. The
//! densely ordered product `c_tau` runs over the Cantor gaps in order, the
//! gap at node `(n, k)` contributing `c_{2^(n-1)+k-1}`; `p_tau` is its odd
//! copy followed by the inverse of its even copy.

use std::fmt;

use rayon::prelude::*;

use crate::freegroup::{pair_kernel_member, truncate, Generator, Letter, Word};
use crate::orders::in_order_prefix;
use crate::report::{CaseResult, VerificationReport};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransfiniteElement {
    /// `c_1 c_2 c_3 ...`
    CInf,
    /// Product of `c_{bfs(I)}` over the gaps `I` in their dense order.
    CTau,
    /// Odd copy of `c_tau` times the inverse of its even copy.
    PTau,
    /// `c_{2i-1} c_{2i}^-1`
    Pn(u32),
    Cn(u32),
}

impl fmt::Display for TransfiniteElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransfiniteElement::CInf => f.write_str("c-inf"),
            TransfiniteElement::CTau => f.write_str("c-tau"),
            TransfiniteElement::PTau => f.write_str("p-tau"),
            TransfiniteElement::Pn(i) => write!(f, "p({i})"),
            TransfiniteElement::Cn(i) => write!(f, "c({i})"),
        }
    }
}

/// In-order word `c_{bfs(I)}` over the first `n` nodes, with each index sent
/// through `relabel`.
fn in_order_letters(n: u32, relabel: impl Fn(u32) -> u32) -> Vec<Letter> {
    in_order_prefix(u64::from(n))
        .into_iter()
        .map(|node| Letter::pos(Generator::c(relabel(node.bfs_index() as u32))))
        .collect()
}

/// Truncation of `p_tau` at the even level `2n`.
fn p_tau_even(n: u32) -> Word {
    let odd = in_order_letters(n, |i| 2 * i - 1);
    let even = Word::new(in_order_letters(n, |i| 2 * i));
    Word::new(odd).concat(&even.inverse())
}

/// The image of `e` under the retraction onto the first `m` circles.
pub fn truncation(e: TransfiniteElement, m: u32) -> Word {
    assert!(m >= 1, "truncation level starts at 1");
    match e {
        TransfiniteElement::CInf => Word::c_word(&(1..=m).collect::<Vec<_>>()),
        TransfiniteElement::CTau => Word::new(in_order_letters(m, |i| i)),
        TransfiniteElement::PTau => {
            if m.is_multiple_of(2) {
                p_tau_even(m / 2)
            } else {
                truncate(&p_tau_even(m.div_ceil(2)), m)
            }
        }
        TransfiniteElement::Cn(i) => {
            if i <= m {
                Word::c_word(&[i])
            } else {
                Word::identity()
            }
        }
        TransfiniteElement::Pn(i) => {
            let p = Word::new([
                Letter::pos(Generator::c(2 * i - 1)),
                Letter::neg(Generator::c(2 * i)),
            ]);
            truncate(&p, m)
        }
    }
}

/// `w_odd v_odd v_even^-1 w_even^-1`, split at a fixed position of the
/// reduced word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicFactorization {
    pub w_odd: Word,
    pub v_odd: Word,
    pub v_even: Word,
    pub w_even: Word,
}

fn uses_only(w: &Word, odd: bool) -> bool {
    w.letters()
        .iter()
        .all(|l| l.gen.family == 'c' && (l.gen.index % 2 == 1) == odd)
}

impl BasicFactorization {
    /// The product, with letters kept exactly as given (no reduction).
    pub fn raw_letters(&self) -> Vec<Letter> {
        let mut v = self.w_odd.letters().to_vec();
        v.extend_from_slice(self.v_odd.letters());
        v.extend_from_slice(self.v_even.inverse().letters());
        v.extend_from_slice(self.w_even.inverse().letters());
        v
    }

    pub fn product(&self) -> Word {
        Word::new(self.raw_letters())
    }

    pub fn w_pair(&self) -> Word {
        self.w_odd.concat(&self.w_even.inverse())
    }

    pub fn v_pair(&self) -> Word {
        self.v_odd.concat(&self.v_even.inverse())
    }

    /// Checks the defining conditions against `target`: the concatenation is
    /// already the reduced word `target`, the parity restrictions hold, and
    /// the w- and v-parts pair up in length.
    pub fn is_valid_for(&self, target: &Word) -> bool {
        let raw = self.raw_letters();
        raw.as_slice() == target.letters()
            && uses_only(&self.w_odd, true)
            && uses_only(&self.v_odd, true)
            && uses_only(&self.w_even, false)
            && uses_only(&self.v_even, false)
            && self.w_odd.len() == self.w_even.len()
            && self.v_odd.len() == self.v_even.len()
    }
}

impl fmt::Display for BasicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] [{}] [{}]^-1 [{}]^-1",
            self.w_odd, self.v_odd, self.v_even, self.w_even
        )
    }
}

/// All basic factorizations of the level-`2n` truncation of `p_tau`, one
/// per split point `s = |w_odd|` in `0..=n`.
pub fn basic_factorizations(n: u32) -> Vec<BasicFactorization> {
    let word = truncation(TransfiniteElement::PTau, 2 * n);
    let n = n as usize;
    let odd = word.slice(0..n);
    let even = word.slice(n..2 * n).inverse();
    (0..=n)
        .map(|s| BasicFactorization {
            w_odd: odd.slice(0..s),
            v_odd: odd.slice(s..n),
            v_even: even.slice(s..n),
            w_even: even.slice(0..s),
        })
        .collect()
}

/// Counts factorizations by trying every three-cut split of the reduced
/// word; independent of the split-point construction above.
pub fn count_factorizations_exhaustive(word: &Word) -> usize {
    let letters = word.letters();
    let len = letters.len();
    let is_odd: Vec<bool> = letters
        .iter()
        .map(|l| l.gen.family == 'c' && l.gen.index % 2 == 1)
        .collect();
    // prefix counts of odd letters and of even letters
    let mut odd_prefix = vec![0usize; len + 1];
    for i in 0..len {
        odd_prefix[i + 1] = odd_prefix[i] + usize::from(is_odd[i]);
    }
    let even_prefix: Vec<usize> = (0..=len).map(|i| i - odd_prefix[i]).collect();
    let all_odd = |a: usize, b: usize| odd_prefix[b] - odd_prefix[a] == b - a;
    let all_even = |a: usize, b: usize| even_prefix[b] - even_prefix[a] == b - a;
    let mut count = 0;
    for p1 in 0..=len {
        for p2 in p1..=len {
            for p3 in p2..=len {
                let ok = all_odd(0, p1)
                    && all_odd(p1, p2)
                    && all_even(p2, p3)
                    && all_even(p3, len)
                    && p1 == len - p3
                    && p2 - p1 == p3 - p2;
                if ok {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Splits the level-`2n` word around `c_{2n-1}` and `c_{2n}^-1`, returning
/// the factorization of the level-`2n-2` word the remaining pieces form.
pub fn recursive_split(n: u32) -> Option<BasicFactorization> {
    if n < 2 {
        return None;
    }
    let word = truncation(TransfiniteElement::PTau, 2 * n);
    let top_odd = Letter::pos(Generator::c(2 * n - 1));
    let top_even = Letter::neg(Generator::c(2 * n));
    let letters = word.letters();
    let i = letters.iter().position(|l| *l == top_odd)?;
    let j = letters.iter().position(|l| *l == top_even)?;
    if letters.iter().filter(|l| l.gen.index >= 2 * n - 1).count() != 2 || j < i {
        return None;
    }
    let w_odd = word.slice(0..i);
    let mid = word.slice(i + 1..j);
    let w_even = word.slice(j + 1..letters.len()).inverse();
    // mid = v_odd v_even^-1: odd letters first, then inverted evens
    let split = mid
        .letters()
        .iter()
        .position(|l| l.gen.index % 2 == 0)
        .unwrap_or(mid.len());
    let v_odd = mid.slice(0..split);
    let v_even = mid.slice(split..mid.len()).inverse();
    Some(BasicFactorization {
        w_odd,
        v_odd,
        v_even,
        w_even,
    })
}

fn check_level(n: u32) -> Vec<CaseResult> {
    let level = 2 * n;
    let word = truncation(TransfiniteElement::PTau, level);
    let mut cases = Vec::with_capacity(4);

    let member = pair_kernel_member(&word, n).unwrap_or(false);
    cases.push(CaseResult::new(
        format!("n={n}/membership"),
        "p-tau-truncation-in-K2n",
        member,
        format!("r_{level}(p_tau) = {}", abbreviate(&word)),
    ));

    let facts = basic_factorizations(n);
    let exhaustive = count_factorizations_exhaustive(&word);
    let mut bad = Vec::new();
    for (s, f) in facts.iter().enumerate() {
        let valid = f.is_valid_for(&word) && f.product() == word;
        let w_in = pair_kernel_member(&f.w_pair(), n).unwrap_or(false);
        let v_in = pair_kernel_member(&f.v_pair(), n).unwrap_or(false);
        // w_odd w_even^-1 (w_even (v_odd v_even^-1) w_even^-1) = word
        let rebuilt = f.w_pair().concat(&f.w_even.conjugate(&f.v_pair()));
        if !(valid && w_in && v_in && rebuilt == word) {
            bad.push(s);
        }
    }
    cases.push(CaseResult::new(
        format!("n={n}/factor-pairs"),
        "basic-factorization-pairs-in-K2n",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} factorizations, all w- and v-pairs in K_{level}",
                facts.len()
            )
        } else {
            format!("factorizations failing at splits {bad:?}")
        },
    ));

    let expected = n as usize + 1;
    cases.push(CaseResult::new(
        format!("n={n}/count"),
        "basic-factorization-count",
        facts.len() == expected && exhaustive == expected,
        format!(
            "constructed {}, exhaustive {}, expected {expected}",
            facts.len(),
            exhaustive
        ),
    ));

    let (ok, detail) = if n == 1 {
        let p1 = Word::new([Letter::pos(Generator::c(1)), Letter::neg(Generator::c(2))]);
        (word == p1, format!("r_2(p_tau) = {word}, p_1 = {p1}"))
    } else {
        recursive_identity(n, &word)
    };
    cases.push(CaseResult::new(
        format!("n={n}/recursion"),
        if n == 1 {
            "p-tau-level-2-equals-p1"
        } else {
            "p-tau-recursive-identity"
        },
        ok,
        detail,
    ));
    cases
}

fn recursive_identity(n: u32, word: &Word) -> (bool, String) {
    let Some(f) = recursive_split(n) else {
        return (false, "no split around c_{2n-1}, c_{2n}^-1".into());
    };
    let previous = truncation(TransfiniteElement::PTau, 2 * n - 2);
    let is_prev_factorization = f.is_valid_for(&previous);
    let c_odd = Word::generator(Generator::c(2 * n - 1));
    let c_even = Word::generator(Generator::c(2 * n));
    let reassembled = Word::new(
        f.w_odd
            .letters()
            .iter()
            .chain(c_odd.letters())
            .chain(f.v_odd.letters())
            .chain(f.v_even.inverse().letters())
            .chain(c_even.inverse().letters())
            .chain(f.w_even.inverse().letters())
            .copied(),
    );
    // (w_odd ((c_{2n-1} c_{2n}^-1)(c_{2n} (v_odd v_even^-1) c_{2n}^-1)) w_odd^-1)(w_odd w_even^-1)
    let p_n = c_odd.concat(&c_even.inverse());
    let inner = p_n.concat(&c_even.conjugate(&f.v_pair()));
    let rearranged = f.w_odd.conjugate(&inner).concat(&f.w_pair());
    let pieces_in_prev = pair_kernel_member(&f.w_pair(), n - 1).unwrap_or(false)
        && pair_kernel_member(&f.v_pair(), n - 1).unwrap_or(false);
    let ok = is_prev_factorization && reassembled == *word && rearranged == *word && pieces_in_prev;
    (
        ok,
        format!(
            "split |w|={} |v|={}: previous-level factorization {}, reassembly {}, rearrangement {}, pairs in K_{} {}",
            f.w_odd.len(),
            f.v_odd.len(),
            is_prev_factorization,
            reassembled == *word,
            rearranged == *word,
            2 * n - 2,
            pieces_in_prev
        ),
    )
}

fn abbreviate(w: &Word) -> String {
    if w.len() <= 8 {
        w.to_string()
    } else {
        let s = w.to_string();
        let head: Vec<&str> = s.split(' ').take(4).collect();
        format!("{} ... ({} letters)", head.join(" "), w.len())
    }
}

/// Runs the inductive argument that every level-`2n` truncation of `p_tau`
/// lies in `K_{2n}`, for `n = 1..=n_max`. Four cases per level.
pub fn verify_factorization_lemma(n_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("factorization-lemma", None);
    let per_level: Vec<Vec<CaseResult>> = (1..=n_max).into_par_iter().map(check_level).collect();
    report.extend(per_level.into_iter().flatten());
    report
}
