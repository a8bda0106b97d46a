//! The dyadic arc space `D`: a base interval `B = [0,1] x {0}` with an upper
//! semicircle over every dyadic interval `[(j-1)/2^(n-1), j/2^(n-1)]`.
//!
//! Paths are symbolic edge paths. An `Arc(n, j, +)` runs along the
//! semicircle from its left foot to its right foot; a `Base(a, b)` runs
//! straight along `B`. All points where pieces meet lie on `B` and are
//! tracked by their exact `x` coordinate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::DSpaceError;
use crate::freegroup::Sign;
use crate::report::VerificationReport;

pub(crate) fn dyadic(numer: u64, exp: u32) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(1) << exp)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DPiece {
    Arc {
        level: u32,
        position: u64,
        sign: Sign,
    },
    Base {
        from: BigRational,
        to: BigRational,
    },
}

impl DPiece {
    pub fn arc(level: u32, position: u64, sign: Sign) -> Result<Self, DSpaceError> {
        if level == 0 || level > 63 || position == 0 || position > 1u64 << (level - 1) {
            return Err(DSpaceError::BadArc { level, position });
        }
        Ok(DPiece::Arc {
            level,
            position,
            sign,
        })
    }

    pub fn base(from: BigRational, to: BigRational) -> Result<Self, DSpaceError> {
        for x in [&from, &to] {
            if *x < BigRational::zero() || *x > BigRational::one() {
                return Err(DSpaceError::OffBase(x.to_string()));
            }
        }
        if from == to {
            return Err(DSpaceError::DegenerateBase(from.to_string()));
        }
        Ok(DPiece::Base { from, to })
    }

    /// Left and right feet of the arc's semicircle.
    fn arc_feet(level: u32, position: u64) -> (BigRational, BigRational) {
        (dyadic(position - 1, level - 1), dyadic(position, level - 1))
    }

    pub fn start(&self) -> BigRational {
        match self {
            DPiece::Arc {
                level,
                position,
                sign,
            } => {
                let (l, r) = Self::arc_feet(*level, *position);
                if *sign == Sign::Pos {
                    l
                } else {
                    r
                }
            }
            DPiece::Base { from, .. } => from.clone(),
        }
    }

    pub fn end(&self) -> BigRational {
        match self {
            DPiece::Arc {
                level,
                position,
                sign,
            } => {
                let (l, r) = Self::arc_feet(*level, *position);
                if *sign == Sign::Pos {
                    r
                } else {
                    l
                }
            }
            DPiece::Base { to, .. } => to.clone(),
        }
    }

    pub fn inverse(&self) -> DPiece {
        match self {
            DPiece::Arc {
                level,
                position,
                sign,
            } => DPiece::Arc {
                level: *level,
                position: *position,
                sign: sign.flip(),
            },
            DPiece::Base { from, to } => DPiece::Base {
                from: to.clone(),
                to: from.clone(),
            },
        }
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            DPiece::Arc { level, .. } => Some(*level),
            DPiece::Base { .. } => None,
        }
    }

    fn is_base(&self) -> bool {
        matches!(self, DPiece::Base { .. })
    }
}

impl fmt::Display for DPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DPiece::Arc {
                level,
                position,
                sign,
            } => {
                write!(f, "a({level},{position})")?;
                if *sign == Sign::Neg {
                    f.write_str("'")?;
                }
                Ok(())
            }
            DPiece::Base { from, to } => write!(f, "b({from},{to})"),
        }
    }
}

/// A continuous concatenation of pieces starting at `start` on the base.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DPath {
    start: BigRational,
    pieces: Vec<DPiece>,
}

impl DPath {
    /// Validates continuity; an empty path sits at `0`.
    pub fn new(pieces: Vec<DPiece>) -> Result<Self, DSpaceError> {
        let start = pieces.first().map_or_else(BigRational::zero, DPiece::start);
        Self::with_start(start, pieces)
    }

    pub fn with_start(start: BigRational, pieces: Vec<DPiece>) -> Result<Self, DSpaceError> {
        let mut at = start.clone();
        for (index, p) in pieces.iter().enumerate() {
            let s = p.start();
            if s != at {
                return Err(DSpaceError::Discontinuous {
                    index,
                    expected: at.to_string(),
                    found: s.to_string(),
                });
            }
            at = p.end();
        }
        Ok(DPath { start, pieces })
    }

    pub fn constant(at: BigRational) -> Self {
        DPath {
            start: at,
            pieces: Vec::new(),
        }
    }

    pub fn pieces(&self) -> &[DPiece] {
        &self.pieces
    }

    pub fn start(&self) -> &BigRational {
        &self.start
    }

    pub fn end(&self) -> BigRational {
        self.pieces
            .last()
            .map_or_else(|| self.start.clone(), DPiece::end)
    }

    pub fn is_constant(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn concat(&self, other: &DPath) -> Result<DPath, DSpaceError> {
        if self.end() != other.start {
            return Err(DSpaceError::EndpointMismatch);
        }
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(DPath {
            start: self.start.clone(),
            pieces,
        })
    }

    pub fn inverse(&self) -> DPath {
        DPath {
            start: self.end(),
            pieces: self.pieces.iter().rev().map(DPiece::inverse).collect(),
        }
    }

    pub fn max_level(&self) -> u32 {
        self.pieces
            .iter()
            .filter_map(DPiece::level)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "eps@{}", self.start);
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Pushes a piece onto a reduced stack, cancelling inverse arcs and merging
/// base runs.
fn push_reduced(stack: &mut Vec<DPiece>, piece: DPiece) {
    match piece {
        DPiece::Arc { .. } => {
            if stack.last() == Some(&piece.inverse()) {
                stack.pop();
            } else {
                stack.push(piece);
            }
        }
        DPiece::Base { from, to } => {
            let from = match stack.last() {
                Some(DPiece::Base { .. }) => match stack.pop() {
                    Some(DPiece::Base { from: f0, .. }) => f0,
                    _ => unreachable!(),
                },
                _ => from,
            };
            if from != to {
                stack.push(DPiece::Base { from, to });
            }
        }
    }
}

/// Reduced representative: no inverse arc pair is adjacent, and every
/// maximal base run is the direct segment between its ends (or nothing).
pub fn reduce_dpath(p: &DPath) -> DPath {
    let mut stack = Vec::with_capacity(p.pieces.len());
    for piece in &p.pieces {
        push_reduced(&mut stack, piece.clone());
    }
    DPath {
        start: p.start.clone(),
        pieces: stack,
    }
}

/// Merges base runs and drops the ones with no net displacement, leaving
/// arcs untouched. This only deletes constant subpaths.
pub fn delete_degenerate(p: &DPath) -> DPath {
    let mut out: Vec<DPiece> = Vec::with_capacity(p.pieces.len());
    let mut run: Option<(BigRational, BigRational)> = None;
    let flush = |out: &mut Vec<DPiece>, run: &mut Option<(BigRational, BigRational)>| {
        if let Some((from, to)) = run.take() {
            if from != to {
                out.push(DPiece::Base { from, to });
            }
        }
    };
    for piece in &p.pieces {
        match piece {
            DPiece::Base { from, to } => {
                run = Some(match run.take() {
                    Some((f0, _)) => (f0, to.clone()),
                    None => (from.clone(), to.clone()),
                });
            }
            arc => {
                flush(&mut out, &mut run);
                out.push(arc.clone());
            }
        }
    }
    flush(&mut out, &mut run);
    DPath {
        start: p.start.clone(),
        pieces: out,
    }
}

/// Applies the retraction onto `E_n` piecewise: arcs above level `n` are
/// pushed down onto their chord. No reduction.
pub fn project_raw(p: &DPath, n: u32) -> DPath {
    let pieces = p
        .pieces
        .iter()
        .map(|piece| match piece {
            DPiece::Arc { level, .. } if *level > n => DPiece::Base {
                from: piece.start(),
                to: piece.end(),
            },
            other => other.clone(),
        })
        .collect();
    DPath {
        start: p.start.clone(),
        pieces,
    }
}

/// Retraction onto the finite graph `E_n`, reduced.
pub fn project(p: &DPath, n: u32) -> DPath {
    let mut stack = Vec::with_capacity(p.pieces.len());
    for piece in &p.pieces {
        let piece = match piece {
            DPiece::Arc { level, .. } if *level > n => DPiece::Base {
                from: piece.start(),
                to: piece.end(),
            },
            other => other.clone(),
        };
        push_reduced(&mut stack, piece);
    }
    DPath {
        start: p.start.clone(),
        pieces: stack,
    }
}

/// Path-homotopy rel endpoints. Reduced representatives in a graph are
/// unique, and the base-run merge makes the representation canonical, so
/// equality of reduced forms decides it.
pub fn homotopic(p: &DPath, q: &DPath) -> Result<bool, DSpaceError> {
    if p.start != q.start || p.end() != q.end() {
        return Err(DSpaceError::EndpointMismatch);
    }
    Ok(reduce_dpath(p) == reduce_dpath(q))
}

/// The same question answered through the graph projections: equal reduced
/// images in every `E_n` up to the highest level either path uses.
pub fn homotopic_by_projections(p: &DPath, q: &DPath) -> Result<bool, DSpaceError> {
    if p.start != q.start || p.end() != q.end() {
        return Err(DSpaceError::EndpointMismatch);
    }
    let top = p.max_level().max(q.max_level()).max(1);
    Ok((1..=top).all(|n| project(p, n) == project(q, n)))
}

/// How large the preimage of the base arc is, ordered from smallest to
/// largest; the join of two classes is their maximum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ContactClass {
    Finite,
    ScatteredCompact,
    NowhereDense,
    ContainsInterval,
}

impl ContactClass {
    pub fn join(self, other: ContactClass) -> ContactClass {
        self.max(other)
    }

    /// Finitely many contacts with the base.
    pub fn in_f(self) -> bool {
        self <= ContactClass::Finite
    }

    /// Topologically scattered contact set.
    pub fn in_sc(self) -> bool {
        self <= ContactClass::ScatteredCompact
    }

    /// Nowhere dense contact set.
    pub fn in_nd(self) -> bool {
        self <= ContactClass::NowhereDense
    }
}

impl fmt::Display for ContactClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Class of the pieces exactly as given: an arc meets the base only at its
/// two feet, a base piece is an interval of contact.
pub fn raw_contact_class(p: &DPath) -> ContactClass {
    p.pieces
        .iter()
        .map(|piece| {
            if piece.is_base() {
                ContactClass::ContainsInterval
            } else {
                ContactClass::Finite
            }
        })
        .fold(ContactClass::Finite, ContactClass::join)
}

/// Contact class of the reduced representative. Reduction in a
/// one-dimensional space happens inside the image of the path, so this is
/// the class that decides membership in `F`, `Sc` and `Nd`.
pub fn contact_class(p: &DPath) -> ContactClass {
    raw_contact_class(&reduce_dpath(p))
}

/// `l_{1,1} . lambda^-1`: the top semicircle followed by the base run back.
pub fn d_infinity() -> DPath {
    DPath::new(vec![
        DPiece::Arc {
            level: 1,
            position: 1,
            sign: Sign::Pos,
        },
        DPiece::Base {
            from: BigRational::one(),
            to: BigRational::zero(),
        },
    ])
    .expect("d-inf is continuous")
}

/// Seeded random paths in `D` for property checks.
pub struct DSampler {
    rng: ChaCha8Rng,
    max_level: u32,
}

impl DSampler {
    pub fn new(seed: u64, max_level: u32) -> Self {
        DSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_level: max_level.max(1),
        }
    }

    /// A random arc with one foot at `x` (a dyadic point), if any exists at
    /// the allowed levels.
    fn arc_at(&mut self, x: &BigRational) -> DPiece {
        let mut options = Vec::new();
        for level in 1..=self.max_level {
            let scale = BigRational::from_integer(BigInt::from(1u64) << (level - 1));
            let scaled = x * &scale;
            if !scaled.is_integer() {
                continue;
            }
            let j: u64 = scaled.to_integer().try_into().expect("small position");
            let count = 1u64 << (level - 1);
            if j < count {
                options.push((level, j + 1, Sign::Pos));
            }
            if j >= 1 {
                options.push((level, j, Sign::Neg));
            }
        }
        let (level, position, sign) = options[self.rng.gen_range(0..options.len())];
        DPiece::Arc {
            level,
            position,
            sign,
        }
    }

    fn random_dyadic(&mut self) -> BigRational {
        let exp = self.rng.gen_range(0..self.max_level);
        let numer = self.rng.gen_range(0..=(1u64 << exp));
        dyadic(numer, exp)
    }

    /// A random loop at `0` built only from arcs: a random arc walk closed
    /// up by descending along the binary expansion of its endpoint.
    pub fn arc_loop(&mut self, steps: usize) -> DPath {
        let mut pieces = Vec::new();
        let mut at = BigRational::zero();
        for _ in 0..steps {
            let a = self.arc_at(&at);
            at = a.end();
            pieces.push(a);
        }
        pieces.extend(return_to_zero(&at));
        DPath::new(pieces).expect("walk is continuous")
    }

    /// A random path from `0` mixing arcs and base segments.
    pub fn mixed_path(&mut self, steps: usize) -> DPath {
        let mut pieces = Vec::new();
        let mut at = BigRational::zero();
        for _ in 0..steps {
            let piece = if self.rng.gen_bool(0.3) {
                let to = self.random_dyadic();
                if to == at {
                    continue;
                }
                DPiece::Base {
                    from: at.clone(),
                    to,
                }
            } else {
                self.arc_at(&at)
            };
            at = piece.end();
            pieces.push(piece);
        }
        DPath::new(pieces).expect("walk is continuous")
    }

    /// Inserts `g g^-1` for random pieces `g` at random positions.
    pub fn insert_cancelling(&mut self, p: &DPath, count: usize) -> DPath {
        let mut pieces = p.pieces.clone();
        for _ in 0..count {
            let idx = self.rng.gen_range(0..=pieces.len());
            let at = if idx == 0 {
                p.start.clone()
            } else {
                pieces[idx - 1].end()
            };
            let g = if self.rng.gen_bool(0.5) {
                self.arc_at(&at)
            } else {
                let mut to = self.random_dyadic();
                if to == at {
                    to = if at.is_zero() {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                }
                DPiece::Base { from: at, to }
            };
            let back = g.inverse();
            pieces.splice(idx..idx, [g, back]);
        }
        DPath::with_start(p.start.clone(), pieces).expect("insertion keeps continuity")
    }
}

/// Arcs from dyadic `x` back to `0`, largest arcs first.
pub fn return_to_zero(x: &BigRational) -> Vec<DPiece> {
    let mut out = Vec::new();
    let mut at = x.clone();
    while !at.is_zero() {
        // x = numer / 2^e with numer odd: the arc of level e+1 ending at x
        let denom = at.denom().clone();
        let exp = denom.bits() as u32 - 1;
        let numer: u64 = at.numer().try_into().expect("small numerator");
        let piece = DPiece::Arc {
            level: exp + 1,
            position: numer,
            sign: Sign::Neg,
        };
        at = piece.end();
        out.push(piece);
    }
    out
}

/// Checks that `F` sits inside `Nd` while `d_inf` does not: sampled arc
/// loops have finite contact, `d_inf` keeps an interval of contact after
/// reduction, and the class chain `F <= Sc <= Nd` holds on random paths.
pub fn verify_nd_example(samples: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("nd-example", Some(seed));
    let d = d_infinity();
    let reduced = reduce_dpath(&d);
    let class = contact_class(&d);
    report.check(
        "d-inf-excluded-from-nd",
        "d-inf-not-in-nd",
        reduced == d && class == ContactClass::ContainsInterval && !class.in_nd(),
        format!("reduced d_inf = {reduced}, contact class {class}"),
    );
    let lambda = DPath::new(vec![DPiece::Base {
        from: BigRational::zero(),
        to: BigRational::one(),
    }])
    .expect("continuous");
    report.check(
        "lambda-contact-interval",
        "lambda-preimage-has-interior",
        contact_class(&lambda) == ContactClass::ContainsInterval,
        format!("{lambda}: {}", contact_class(&lambda)),
    );
    let constant = DPath::constant(BigRational::zero());
    report.check(
        "constant-path-finite",
        "constant-path-in-nd",
        contact_class(&constant) == ContactClass::Finite,
        "empty path",
    );

    let mut sampler = DSampler::new(seed, 6);
    let mut not_finite = 0;
    let mut not_loop = 0;
    for i in 0..samples {
        let p = sampler.arc_loop(1 + i % 12);
        if p.end() != BigRational::zero() {
            not_loop += 1;
        }
        if contact_class(&p) != ContactClass::Finite {
            not_finite += 1;
        }
    }
    report.check(
        "arc-words-in-f",
        "d-inside-nd",
        not_finite == 0 && not_loop == 0,
        format!("{samples} arc loops at d0: {not_finite} not Finite, {not_loop} not closed"),
    );

    let mut chain_bad = 0;
    let mut monotone_bad = 0;
    for i in 0..samples {
        let p = sampler.mixed_path(1 + i % 16);
        let raw = raw_contact_class(&p);
        let red = contact_class(&p);
        for c in [raw, red] {
            if (c.in_f() && !c.in_sc()) || (c.in_sc() && !c.in_nd()) {
                chain_bad += 1;
            }
        }
        if red > raw {
            monotone_bad += 1;
        }
    }
    report.check(
        "class-chain",
        "f-sc-nd-chain",
        chain_bad == 0 && monotone_bad == 0,
        format!(
            "{samples} mixed paths: {chain_bad} chain violations, {monotone_bad} reductions raised the class"
        ),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_dpath;

    fn path(s: &str) -> DPath {
        parse_dpath(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_dpath(&path("a(1,1) a(1,1)'")).is_constant());
        assert!(reduce_dpath(&path("b(0,1/2) b(1/2,0)")).is_constant());
        assert_eq!(reduce_dpath(&path("b(0,1/2) b(1/2,1/4)")), path("b(0,1/4)"));
        // cancellation exposes a base run that merges
        assert_eq!(
            reduce_dpath(&path("b(0,1/2) a(2,2) a(2,2)' b(1/2,1)")),
            path("b(0,1)")
        );
    }

    #[test]
    fn reduce_keeps_start_of_a_null_loop() {
        let p = path("a(2,2) a(2,2)'");
        let r = reduce_dpath(&p);
        assert!(r.is_constant());
        assert_eq!(r.start(), &dyadic(1, 1));
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&path("a(2,1)"), 1), path("b(0,1/2)"));
        assert_eq!(project(&path("a(1,1)"), 3), path("a(1,1)"));
        assert!(project(&path("a(2,1) a(2,1)'"), 1).is_constant());
        assert_eq!(project_raw(&path("a(2,1)'"), 1), path("b(1/2,0)"));
    }

    #[test]
    fn homotopic_examples() {
        let p = path("a(1,1) b(1,1/4)");
        let q = path("a(1,1) b(1,1/4) a(3,2) a(3,2)'");
        assert!(homotopic(&p, &q).unwrap());
        assert!(!homotopic(&path("a(1,1)"), &path("b(0,1)")).unwrap());
        assert!(homotopic(&path("b(0,1/2) b(1/2,1)"), &path("b(0,1)")).unwrap());
        assert_eq!(
            homotopic(&path("a(1,1)"), &path("b(0,1/2)")),
            Err(DSpaceError::EndpointMismatch)
        );
    }

    #[test]
    fn contact_examples() {
        assert_eq!(
            contact_class(&path("a(1,1) a(2,2)' a(2,1)'")),
            ContactClass::Finite
        );
        assert_eq!(
            contact_class(&path("b(0,1)")),
            ContactClass::ContainsInterval
        );
        assert_eq!(contact_class(&d_infinity()), ContactClass::ContainsInterval);
        assert_eq!(contact_class(&path("eps")), ContactClass::Finite);
        // a base backtrack reduces away
        assert_eq!(
            contact_class(&path("a(1,1) b(1,1/2) b(1/2,1) a(1,1)'")),
            ContactClass::Finite
        );
        assert_eq!(
            raw_contact_class(&path("a(1,1) b(1,1/2) b(1/2,1) a(1,1)'")),
            ContactClass::ContainsInterval
        );
    }

    #[test]
    fn lattice_is_a_chain() {
        use ContactClass::*;
        let all = [Finite, ScatteredCompact, NowhereDense, ContainsInterval];
        for a in all {
            for b in all {
                let j = a.join(b);
                assert!(j >= a && j >= b);
                assert!(j == a || j == b);
            }
        }
        assert!(Finite.in_f() && Finite.in_sc() && Finite.in_nd());
        assert!(!ScatteredCompact.in_f() && ScatteredCompact.in_sc());
        assert!(NowhereDense.in_nd() && !NowhereDense.in_sc());
        assert!(!ContainsInterval.in_nd());
    }

    #[test]
    fn return_path_closes_loops() {
        for (n, e) in [(0u64, 0u32), (1, 1), (3, 2), (5, 3), (7, 3), (1, 0)] {
            let x = dyadic(n, e);
            let pieces = return_to_zero(&x);
            let p = DPath::with_start(x, pieces).unwrap();
            assert!(p.end().is_zero());
        }
    }

    #[test]
    fn verifier_passes() {
        let r = verify_nd_example(200, 3);
        assert!(r.passed(), "{}", r.summary());
    }
}
