//! Free-group word calculus over signed abstract generators.

mod stallings;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use crate::error::FreeGroupError;

pub use stallings::{stallings_member, SubgroupGraph};

/// A generator such as `c3`: a one-letter family and a positive index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Generator {
    pub family: char,
    pub index: u32,
}

impl Generator {
    pub fn new(family: char, index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Generator { family, index }
    }

    pub fn c(index: u32) -> Self {
        Generator::new('c', index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: Generator) -> Self {
        Letter {
            gen,
            sign: Sign::Pos,
        }
    }

    pub fn neg(gen: Generator) -> Self {
        Letter {
            gen,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.gen),
            Sign::Neg => write!(f, "{}'", self.gen),
        }
    }
}

/// A freely reduced word. Every constructor reduces eagerly.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Free reduction with a stack; one pass suffices.
pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|top| top.cancels(&l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        reduce(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: Generator) -> Self {
        Word::letter(Letter::pos(g))
    }

    /// Positive word `c_{i1} c_{i2} ...` from indices.
    pub fn c_word(indices: &[u32]) -> Self {
        Word::new(indices.iter().map(|&i| Letter::pos(Generator::c(i))))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `self * inner * self^-1`
    pub fn conjugate(&self, inner: &Word) -> Word {
        self.concat(inner).concat(&self.inverse())
    }

    pub fn commutator(&self, other: &Word) -> Word {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    /// Sub-word by letter positions; the slice of a reduced word is reduced.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            letters: self.letters[range].to_vec(),
        }
    }

    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|l| l.gen.index).max().unwrap_or(0)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("eps");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// What a generator map does with generators it has no explicit image for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fallback {
    Identity,
    Kill,
}

/// A homomorphism given by images of finitely many generators, with a
/// per-family fallback for the rest.
#[derive(Clone, Debug, Default)]
pub struct GenMap {
    images: BTreeMap<Generator, Word>,
    fallback: BTreeMap<char, Fallback>,
}

impl GenMap {
    pub fn new() -> Self {
        GenMap::default()
    }

    pub fn identity_on(family: char) -> Self {
        GenMap::new().with_fallback(family, Fallback::Identity)
    }

    pub fn with_image(mut self, g: Generator, image: Word) -> Self {
        self.images.insert(g, image);
        self
    }

    pub fn with_fallback(mut self, family: char, fallback: Fallback) -> Self {
        self.fallback.insert(family, fallback);
        self
    }

    /// `c_i -> c_{2i-1}` for `i <= max_index`.
    pub fn odd_doubling(max_index: u32) -> Self {
        (1..=max_index).fold(GenMap::new(), |m, i| {
            m.with_image(Generator::c(i), Word::generator(Generator::c(2 * i - 1)))
        })
    }

    /// `c_i -> c_{2i}` for `i <= max_index`.
    pub fn even_doubling(max_index: u32) -> Self {
        (1..=max_index).fold(GenMap::new(), |m, i| {
            m.with_image(Generator::c(i), Word::generator(Generator::c(2 * i)))
        })
    }

    /// The truncation retraction onto `c_1..c_m`, spelled out for indices up
    /// to `max_index`; other `c` generators pass through unchanged.
    pub fn kill_above(m: u32, max_index: u32) -> Self {
        ((m + 1)..=max_index).fold(GenMap::identity_on('c'), |map, i| {
            map.with_image(Generator::c(i), Word::identity())
        })
    }

    fn image_of(&self, l: &Letter) -> Result<Word, FreeGroupError> {
        let base = match self.images.get(&l.gen) {
            Some(w) => w.clone(),
            None => match self.fallback.get(&l.gen.family) {
                Some(Fallback::Identity) => Word::generator(l.gen),
                Some(Fallback::Kill) => Word::identity(),
                None => return Err(FreeGroupError::MissingImage(l.gen.to_string())),
            },
        };
        Ok(match l.sign {
            Sign::Pos => base,
            Sign::Neg => base.inverse(),
        })
    }

    pub fn apply(&self, w: &Word) -> Result<Word, FreeGroupError> {
        let mut letters = Vec::with_capacity(w.len());
        for l in w.letters() {
            letters.extend_from_slice(self.image_of(l)?.letters());
        }
        Ok(reduce(letters))
    }
}

pub fn apply(h: &GenMap, w: &Word) -> Result<Word, FreeGroupError> {
    h.apply(w)
}

/// Deletes every `c_i` with `i > m` and reduces: the effect of the
/// retraction collapsing all circles above level `m`.
pub fn truncate(w: &Word, m: u32) -> Word {
    reduce(
        w.letters()
            .iter()
            .filter(|l| l.gen.family != 'c' || l.gen.index <= m)
            .copied(),
    )
}

/// Membership in the normal closure of `{c_{2i-1} c_{2i}^-1 : i <= n}` in the
/// free group on `c_1..c_{2n}`.
///
/// That normal closure is the kernel of the quotient identifying `c_{2i-1}`
/// with `c_{2i}`, and the quotient is free on `x_1..x_n`, so the test is free
/// reduction of the image.
pub fn pair_kernel_member(w: &Word, n: u32) -> Result<bool, FreeGroupError> {
    let max = 2 * n;
    let mut image = Vec::with_capacity(w.len());
    for l in w.letters() {
        if l.gen.family != 'c' || l.gen.index > max {
            return Err(FreeGroupError::OutOfRange {
                gen: l.gen.to_string(),
                max,
            });
        }
        image.push(Letter {
            gen: Generator::new('x', l.gen.index.div_ceil(2)),
            sign: l.sign,
        });
    }
    Ok(reduce(image).is_identity())
}
