//! The ternary Cantor map, middle-third gaps, and the fold map `W -> D`.
//!
//! The fold sends the semicircle over gap `(n,k)` to the loop
//! `gamma(n,k) = l(n+1,2k-1)^- . l(n,k) . l(n+1,2k)^-` based at
//! `(2k-1)/2^n`, and the base through the Cantor map. Truncating the
//! recursion at depth `G` replaces every deeper block by its base chord.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dspace::{delete_degenerate, dyadic, project, project_raw, reduce_dpath, DPath, DPiece};
use crate::error::CantorError;
use crate::freegroup::Sign;
use crate::orders::DyadicNode;
use crate::report::{CaseResult, VerificationReport};

/// Value of the ternary Cantor function at a rational with a terminating
/// ternary expansion.
pub fn cantor_value(x: &BigRational) -> Result<BigRational, CantorError> {
    if *x < BigRational::zero() || *x > BigRational::one() {
        return Err(CantorError::OutOfRange(x.to_string()));
    }
    if x.is_one() {
        return Ok(BigRational::one());
    }
    let three = BigInt::from(3);
    let mut denom = x.denom().clone();
    let mut digits = 0u32;
    while denom > BigInt::one() {
        let (q, r) = denom.div_rem(&three);
        if !r.is_zero() {
            return Err(CantorError::Unrepresentable(x.to_string()));
        }
        denom = q;
        digits += 1;
    }
    // ternary digits of numer, most significant first, padded to `digits`
    let mut numer = x.numer().clone();
    let mut rev = Vec::with_capacity(digits as usize);
    for _ in 0..digits {
        let (q, r) = numer.div_rem(&three);
        rev.push(r.to_u8().expect("ternary digit"));
        numer = q;
    }
    let mut bits = BigInt::zero();
    let mut len = 0u32;
    for d in rev.into_iter().rev() {
        bits <<= 1;
        len += 1;
        match d {
            0 => {}
            2 => bits += 1,
            _ => {
                bits += 1;
                break;
            }
        }
    }
    Ok(BigRational::new(bits, BigInt::one() << len))
}

/// A middle-third gap `(a,b)` removed at stage `level`, `position`-th from
/// the left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriadicGap {
    pub level: u32,
    pub position: u64,
    pub a: BigRational,
    pub b: BigRational,
}

impl TriadicGap {
    pub fn new(level: u32, position: u64) -> Result<Self, CantorError> {
        if level == 0 || level > 63 || position == 0 || position > 1u64 << (level - 1) {
            return Err(CantorError::BadGap { level, position });
        }
        // ternary 0.d1...d_{n-1}1 with d_i = 2 * (bit i of position-1)
        let mut numer = BigInt::zero();
        let k = position - 1;
        for i in (0..level - 1).rev() {
            numer *= 3;
            numer += 2 * ((k >> i) & 1);
        }
        numer = numer * 3 + 1;
        let denom = BigInt::from(3).pow(level);
        let a = BigRational::new(numer.clone(), denom.clone());
        let b = BigRational::new(numer + 1, denom);
        Ok(TriadicGap {
            level,
            position,
            a,
            b,
        })
    }

    pub fn node(&self) -> DyadicNode {
        DyadicNode::new(self.level, self.position).expect("gap indices are node indices")
    }

    /// All gaps of level at most `max_level`, level by level.
    pub fn up_to(max_level: u32) -> Vec<TriadicGap> {
        (1..=max_level)
            .flat_map(|n| (1..=1u64 << (n - 1)).map(move |k| TriadicGap::new(n, k).unwrap()))
            .collect()
    }
}

fn arc(level: u32, position: u64, sign: Sign) -> DPiece {
    DPiece::Arc {
        level,
        position,
        sign,
    }
}

/// The loop at `(2j-1)/2^n` the fold assigns to the gap with node `(n,j)`.
pub fn gamma(n: u32, j: u64) -> Result<DPath, CantorError> {
    if n == 0 || n > 62 || j == 0 || j > 1u64 << (n - 1) {
        return Err(CantorError::BadGap {
            level: n,
            position: j,
        });
    }
    Ok(DPath::new(gamma_pieces(n, j).to_vec()).expect("gamma is continuous"))
}

fn gamma_pieces(n: u32, j: u64) -> [DPiece; 3] {
    [
        arc(n + 1, 2 * j - 1, Sign::Neg),
        arc(n, j, Sign::Pos),
        arc(n + 1, 2 * j, Sign::Neg),
    ]
}

/// Finite stage of `f . upsilon`: gap loops down to level `depth`, base
/// chords below.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FoldWord {
    pub depth: u32,
    pub path: DPath,
}

pub fn fold_truncated(depth: u32) -> FoldWord {
    assert!((1..=60).contains(&depth), "fold depth must lie in 1..=60");
    let mut pieces = Vec::with_capacity((1usize << depth) * 4);
    fold_into(&mut pieces, 1, 1, depth);
    FoldWord {
        depth,
        path: DPath::new(pieces).expect("fold word is continuous"),
    }
}

fn fold_into(out: &mut Vec<DPiece>, n: u32, j: u64, depth: u32) {
    if n > depth {
        out.push(DPiece::Base {
            from: dyadic(j - 1, n - 1),
            to: dyadic(j, n - 1),
        });
        return;
    }
    fold_into(out, n + 1, 2 * j - 1, depth);
    out.extend(gamma_pieces(n, j));
    fold_into(out, n + 1, 2 * j, depth);
}

/// The level-`m` word `l(m,1) . gamma(first) . l(m,2) . ... . l(m,2^(m-1))`,
/// with the gamma loops of all levels below `m` in left-to-right order.
pub fn displayed_word(m: u32) -> DPath {
    assert!((1..=60).contains(&m), "level must lie in 1..=60");
    let mut pieces = Vec::new();
    let count = 1u64 << (m - 1);
    for i in 1..=count {
        pieces.push(arc(m, i, Sign::Pos));
        if i < count {
            // the node between arcs i and i+1 is the dyadic point i/2^(m-1)
            let tz = i.trailing_zeros();
            let level = m - 1 - tz;
            let j = (i >> tz).div_ceil(2);
            pieces.extend(gamma_pieces(level, j));
        }
    }
    DPath::new(pieces).expect("displayed word is continuous")
}

fn top_arc() -> DPath {
    DPath::new(vec![arc(1, 1, Sign::Pos)]).expect("continuous")
}

fn check_level(m: u32) -> Vec<CaseResult> {
    let target = top_arc();
    let mut cases = Vec::new();
    for g in m..=m + 2 {
        let fold = fold_truncated(g);
        let projected = project(&fold.path, m);
        cases.push(CaseResult::new(
            format!("m={m}/G={g}/reduces-to-top-arc"),
            "fold-projection-reduces",
            projected == target,
            format!(
                "{} pieces at depth {g}; reduced level-{m} projection = {}",
                fold.path.len(),
                truncated(&projected)
            ),
        ));
        if m <= 3 {
            let shown = displayed_word(m);
            let raw = delete_degenerate(&project_raw(&fold.path, m));
            cases.push(CaseResult::new(
                format!("m={m}/G={g}/matches-displayed"),
                "fold-displayed-word",
                raw == shown,
                format!(
                    "projection after deleting constant runs: {}",
                    truncated(&raw)
                ),
            ));
        }
    }
    let shown = displayed_word(m);
    let reduced = reduce_dpath(&shown);
    cases.push(CaseResult::new(
        format!("m={m}/displayed-reduces"),
        "displayed-word-reduces",
        reduced == target,
        format!("{} pieces reduce to {}", shown.len(), truncated(&reduced)),
    ));
    cases
}

fn truncated(p: &DPath) -> String {
    if p.len() <= 12 {
        return p.to_string();
    }
    let head: Vec<String> = p.pieces()[..6].iter().map(|x| x.to_string()).collect();
    format!("{} ... ({} pieces)", head.join(" "), p.len())
}

/// Checks that every truncated projection of the fold word reduces to the
/// top arc, and that the first three match the displayed concatenations.
pub fn verify_fold_identity(m_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("fold", None);
    let per_level: Vec<Vec<CaseResult>> = (1..=m_max).into_par_iter().map(check_level).collect();
    report.extend(per_level.into_iter().flatten());
    report
}

/// Sample points of the three arcs of `gamma(n,j)`, scaled by
/// `S = (grid-1) * 2^n` so that `x*S` and `(y*S)^2` are integers.
fn gamma_samples(n: u32, j: u64, grid: u32) -> Vec<(i128, i128)> {
    let g = i128::from(grid - 1);
    let mut pts = Vec::with_capacity(3 * grid as usize);
    for (level, pos) in [(n + 1, 2 * j - 1), (n, j), (n + 1, 2 * j)] {
        // x = (t + pos - 1) / 2^(level-1), y^2 = (t - t^2) / 4^(level-1)
        let shift = n + 1 - level;
        for i in 0..=g {
            let x = (i + g * (i128::from(pos) - 1)) << shift;
            let y2 = (i * (g - i)) << (2 * shift);
            pts.push((x, y2));
        }
    }
    pts
}

/// True iff the distance between the scaled points is at most `d`, decided
/// without square roots: `|p-q|^2 <= d^2` iff `L <= 2 y1 y2` for
/// `L = (x1-x2)^2 + y1^2 + y2^2 - d^2`.
fn within(p: (i128, i128), q: (i128, i128), d: i128) -> bool {
    let dx = p.0 - q.0;
    let l = dx * dx + p.1 + q.1 - d * d;
    l <= 0 || l * l <= 4 * p.1 * q.1
}

/// Diameter of each gamma image at levels up to `n_max`: the extreme base
/// points realize `2^-(n-1)` exactly, and no pair of grid points exceeds it.
pub fn verify_diameter(n_max: u32, grid: u32) -> VerificationReport {
    assert!(grid >= 2, "grid needs both arc endpoints");
    assert!(
        (1..=40).contains(&n_max),
        "diameter levels must lie in 1..=40"
    );
    let mut report = VerificationReport::new("diameter", None);
    let per_level: Vec<CaseResult> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let expected = dyadic(1, n - 1);
            let scaled_d = 2 * i128::from(grid - 1);
            let mut exact_bad = Vec::new();
            let mut sample_bad = Vec::new();
            for j in 1..=1u64 << (n - 1) {
                let path = gamma(n, j).expect("valid gamma");
                let top = &path.pieces()[1];
                let extent = top.end() - top.start();
                if extent != expected {
                    exact_bad.push(j);
                }
                let pts = gamma_samples(n, j, grid);
                let max_ok = pts
                    .iter()
                    .enumerate()
                    .all(|(a, &p)| pts[a + 1..].iter().all(|&q| within(p, q, scaled_d)));
                if !max_ok {
                    sample_bad.push(j);
                }
            }
            let gammas = 1u64 << (n - 1);
            CaseResult::new(
                format!("n={n}/diameter"),
                "gamma-image-diameter",
                exact_bad.is_empty() && sample_bad.is_empty(),
                format!(
                    "expected {expected}; {gammas} loops, {} with wrong extreme distance, {} exceeding it on a {grid}-point grid",
                    exact_bad.len(),
                    sample_bad.len()
                ),
            )
        })
        .collect();
    report.extend(per_level);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::compare;
    use crate::parse::parse_dpath;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::cmp::Ordering;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Cantor value by the self-similarity relations
    /// `c(x) = c(3x)/2` on `[0,1/3]`, `1/2` on the middle third,
    /// `c(x) = 1/2 + c(3x-2)/2` on `[2/3,1]`.
    fn cantor_recursive(x: &BigRational, depth: u32) -> BigRational {
        let third = q(1, 3);
        let two_thirds = q(2, 3);
        let half = q(1, 2);
        if x.is_zero() {
            return BigRational::zero();
        }
        if x.is_one() {
            return BigRational::one();
        }
        assert!(depth < 200);
        let three = q(3, 1);
        if *x <= third {
            cantor_recursive(&(x * &three), depth + 1) * &half
        } else if *x < two_thirds {
            half
        } else {
            &half + cantor_recursive(&(x * &three - q(2, 1)), depth + 1) * &half
        }
    }

    #[test]
    fn cantor_examples() {
        assert_eq!(cantor_value(&q(1, 3)).unwrap(), q(1, 2));
        assert_eq!(cantor_value(&q(2, 9)).unwrap(), q(1, 4));
        assert_eq!(cantor_value(&q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(cantor_value(&q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(cantor_value(&q(2, 3)).unwrap(), q(1, 2));
        assert!(matches!(
            cantor_value(&q(1, 2)),
            Err(CantorError::Unrepresentable(_))
        ));
        assert!(matches!(
            cantor_value(&q(4, 3)),
            Err(CantorError::OutOfRange(_))
        ));
    }

    #[test]
    fn cantor_matches_self_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let e = rng.gen_range(0..=12u32);
            let d = 3i64.pow(e);
            let x = q(rng.gen_range(0..=d), d);
            assert_eq!(
                cantor_value(&x).unwrap(),
                cantor_recursive(&x, 0),
                "x = {x}"
            );
        }
    }

    #[test]
    fn cantor_monotone_on_sorted_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = 3i64.pow(14);
        let mut xs: Vec<BigRational> = (0..10_001).map(|_| q(rng.gen_range(0..=d), d)).collect();
        xs.sort();
        let vals: Vec<BigRational> = xs.iter().map(|x| cantor_value(x).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn gaps_collapse_to_their_dyadic_point() {
        for gap in TriadicGap::up_to(10) {
            assert_eq!(
                &gap.b - &gap.a,
                BigRational::new(1.into(), BigInt::from(3).pow(gap.level))
            );
            let node = gap.node();
            let u = dyadic(node.numerator(), node.denominator_exp());
            assert_eq!(cantor_value(&gap.a).unwrap(), u);
            assert_eq!(cantor_value(&gap.b).unwrap(), u);
            // interior point a + 3^-(n+1) (the left end of the next gap inside)
            let mid = &gap.a + BigRational::new(1.into(), BigInt::from(3).pow(gap.level + 1));
            assert_eq!(cantor_value(&mid).unwrap(), u);
        }
        let g = TriadicGap::new(2, 2).unwrap();
        assert_eq!((g.a.clone(), g.b.clone()), (q(7, 9), q(8, 9)));
        assert!(TriadicGap::new(2, 3).is_err());
    }

    #[test]
    fn gap_correspondence_is_an_order_isomorphism() {
        for l in 1..=10 {
            let mut gaps = TriadicGap::up_to(l);
            assert_eq!(gaps.len(), (1usize << l) - 1);
            gaps.sort_by(|x, y| x.a.cmp(&y.a));
            let nodes: Vec<DyadicNode> = gaps.iter().map(TriadicGap::node).collect();
            assert!(nodes
                .windows(2)
                .all(|w| compare(&w[0], &w[1]) == Ordering::Less));
            // gaps are disjoint
            assert!(gaps.windows(2).all(|w| w[0].b < w[1].a));
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(
            gamma(1, 1).unwrap(),
            parse_dpath("a(2,1)' a(1,1) a(2,2)'").unwrap()
        );
        assert_eq!(
            gamma(2, 1).unwrap(),
            parse_dpath("a(3,1)' a(2,1) a(3,2)'").unwrap()
        );
        let g = gamma(1, 1).unwrap();
        assert_eq!(g.start(), &q(1, 2));
        assert_eq!(g.end(), q(1, 2));
        assert!(gamma(2, 3).is_err());
        assert!(gamma(0, 1).is_err());
    }

    #[test]
    fn fold_depth_one() {
        let f = fold_truncated(1);
        let expect = parse_dpath("b(0,1/2) a(2,1)' a(1,1) a(2,2)' b(1/2,1)").unwrap();
        assert_eq!(f.path, expect);
        assert_eq!(project(&f.path, 1), top_arc());
    }

    #[test]
    fn fold_shape() {
        for g in 1..=14u32 {
            let f = fold_truncated(g);
            assert!(f.path.start().is_zero());
            assert!(f.path.end().is_one());
            assert_eq!(f.path.len(), 3 * ((1 << g) - 1) + (1 << g));
        }
    }

    #[test]
    fn displayed_words_literal() {
        let lit = |s: &str| parse_dpath(s).unwrap();
        assert_eq!(displayed_word(1), lit("a(1,1)"));
        assert_eq!(
            displayed_word(2),
            lit("a(2,1) a(2,1)' a(1,1) a(2,2)' a(2,2)")
        );
        assert_eq!(
            displayed_word(3),
            lit("a(3,1) a(3,1)' a(2,1) a(3,2)' a(3,2) \
                 a(2,1)' a(1,1) a(2,2)' a(3,3) \
                 a(3,3)' a(2,2) a(3,4)' a(3,4)")
        );
    }

    #[test]
    fn level_two_projection_is_displayed() {
        let want = parse_dpath("a(2,1) a(2,1)' a(1,1) a(2,2)' a(2,2)").unwrap();
        for g in 2..=5 {
            let raw = delete_degenerate(&project_raw(&fold_truncated(g).path, 2));
            assert_eq!(raw, want);
        }
        // the reduced projection collapses further
        assert_eq!(project(&fold_truncated(2).path, 2), top_arc());
    }

    #[test]
    fn projection_independent_of_depth() {
        for m in 1..=10u32 {
            let base = project(&fold_truncated(m).path, m);
            for g in m + 1..=m + 3 {
                assert_eq!(project(&fold_truncated(g).path, m), base, "m={m} G={g}");
            }
        }
    }

    #[test]
    fn fold_verifier_small() {
        let r = verify_fold_identity(5);
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.cases.len(), 3 * 3 + 3 * 5 + 5);
    }

    #[test]
    fn diameter_examples() {
        let r = verify_diameter(4, 64);
        assert!(r.passed(), "{}", r.summary());
        assert!(r
            .case("n=1/diameter")
            .unwrap()
            .detail
            .starts_with("expected 1;"));
        assert!(r
            .case("n=3/diameter")
            .unwrap()
            .detail
            .starts_with("expected 1/4;"));
        assert!(verify_diameter(3, 2).passed());
    }

    #[test]
    fn within_is_exact_at_the_boundary() {
        // the two feet of the top arc sit exactly at the diameter
        let pts = gamma_samples(1, 1, 64);
        let d = 2 * 63;
        let left = pts[64];
        let right = pts[127];
        assert_eq!(right.0 - left.0, d);
        assert!(within(left, right, d));
        assert!(!within(left, right, d - 1));
        // an interior pair strictly inside
        assert!(within(pts[70], pts[100], d));
    }
}
