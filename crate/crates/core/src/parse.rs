//! Text grammars for nodes, symbolic sets, words, `W`-elements and paths.
//!
//! ```text
//! node    := "(" n "," k ")" | n "," k | p "/" q          p odd, q a power of two
//! set     := term (("+" | "-") term)*
//! term    := "tree" | "empty" | "subtree(" node ")" | "points{" [node ("," node)*] "}"
//! word    := "eps" | letter+                              letter := [a-z] index "'"?
//! welem   := "eps" | wletter+                             wletter := ("w(" node ")" | "w-inf" | "w-inf(" node ")") "'"?
//! path    := "eps" | piece+                               piece := "a(" n "," j ")" "'"? | "b(" rat "," rat ")" | "d-inf"
//! hexpr   := "eps" | hterm+                               hterm := ("c-inf" | "c-tau" | "p-tau" | "p(" i ")" | "c(" i ")" | letter) "'"?
//! ```
//!
//! Every parser is total: malformed input yields a [`ParseError`] carrying
//! the byte offset, never a panic.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dspace::{DPath, DPiece};
use crate::error::ParseError;
use crate::freegroup::{Generator, Letter, Sign, Word};
use crate::hawaiian::TransfiniteElement;
use crate::orders::{DyadicNode, Subtree, SymbolicDyadicSet};
use crate::wspace::{WElement, WGen, WLetter};

/// Upper bound on accepted digit strings; keeps numbers and allocations small.
const MAX_DIGITS: usize = 40;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected a number");
        }
        if len > MAX_DIGITS {
            return self.err("number too long");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn uint<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse()
            .map_err(|_| ParseError::new(start, format!("number {d} out of range")))
    }

    fn prime(&mut self) -> Sign {
        if self.eat("'") {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    /// A word boundary: end of input or whitespace.
    fn boundary(&self) -> bool {
        self.peek().is_none_or(char::is_whitespace)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        if self.eat(kw) && self.boundary() {
            return true;
        }
        self.pos = save;
        false
    }
}

fn finish<T>(mut c: Cursor<'_>, value: T) -> Result<T, ParseError> {
    if c.at_end() {
        Ok(value)
    } else {
        c.err("unexpected trailing input")
    }
}

fn node_inner(c: &mut Cursor<'_>) -> Result<DyadicNode, ParseError> {
    c.skip_ws();
    let start = c.pos;
    let paren = c.eat("(");
    let a: u64 = c.uint()?;
    c.skip_ws();
    let node = if c.eat("/") {
        if paren {
            return c.err("rational nodes are written without parentheses");
        }
        let b: u64 = c.uint()?;
        DyadicNode::from_rational(a, b)
    } else if c.eat(",") {
        let k: u64 = c.uint()?;
        let level = u32::try_from(a).unwrap_or(u32::MAX);
        DyadicNode::new(level, k)
    } else {
        return c.err("expected `,` or `/` in node");
    };
    if paren {
        c.expect(")")?;
    }
    node.map_err(|e| ParseError::new(start, e.to_string()))
}

pub fn parse_node(src: &str) -> Result<DyadicNode, ParseError> {
    let mut c = Cursor::new(src);
    let n = node_inner(&mut c)?;
    finish(c, n)
}

fn set_term(c: &mut Cursor<'_>) -> Result<SymbolicDyadicSet, ParseError> {
    c.skip_ws();
    if c.eat("tree") {
        return Ok(SymbolicDyadicSet::whole());
    }
    if c.eat("empty") {
        return Ok(SymbolicDyadicSet::empty());
    }
    if c.eat("subtree(") {
        let n = node_in_call(c)?;
        c.expect(")")?;
        return Ok(SymbolicDyadicSet::subtree(&Subtree::Rooted(n)));
    }
    if c.eat("points{") {
        let mut nodes = Vec::new();
        c.skip_ws();
        if !c.eat("}") {
            loop {
                c.skip_ws();
                if c.peek() != Some('(') && !looks_rational(c.rest()) {
                    return c.err("points are written `(n,k)` or `p/q`");
                }
                nodes.push(node_inner(c)?);
                c.skip_ws();
                if c.eat("}") {
                    break;
                }
                c.expect(",")?;
            }
        }
        return Ok(SymbolicDyadicSet::points(&nodes));
    }
    c.err("expected `tree`, `empty`, `subtree(..)` or `points{..}`")
}

fn looks_rational(s: &str) -> bool {
    let d = s.bytes().take_while(u8::is_ascii_digit).count();
    d > 0 && s[d..].trim_start().starts_with('/')
}

/// A node written directly inside a call such as `subtree(2,1)` or `w(1/4)`.
fn node_in_call(c: &mut Cursor<'_>) -> Result<DyadicNode, ParseError> {
    node_inner(c)
}

pub fn parse_set(src: &str) -> Result<SymbolicDyadicSet, ParseError> {
    let mut c = Cursor::new(src);
    let mut acc = set_term(&mut c)?;
    loop {
        c.skip_ws();
        if c.eat("+") {
            acc = acc.union(&set_term(&mut c)?);
        } else if c.eat("-") {
            acc = acc.difference(&set_term(&mut c)?);
        } else {
            break;
        }
    }
    finish(c, acc)
}

fn free_letter(c: &mut Cursor<'_>) -> Result<Letter, ParseError> {
    let family = match c.peek() {
        Some(ch) if ch.is_ascii_lowercase() => ch,
        _ => return c.err("expected a letter such as `c3`"),
    };
    c.pos += 1;
    if !c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        return c.err("expected a generator index");
    }
    let start = c.pos;
    let index: u32 = c.uint()?;
    if index == 0 {
        return Err(ParseError::new(start, "generator indices start at 1"));
    }
    let sign = c.prime();
    Ok(Letter {
        gen: Generator { family, index },
        sign,
    })
}

fn separated<T>(
    src: &str,
    mut item: impl FnMut(&mut Cursor<'_>) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    let mut c = Cursor::new(src);
    if c.at_end() {
        return c.err("empty input (write `eps` for the identity)");
    }
    if c.eat_keyword("eps") {
        return finish(c, Vec::new());
    }
    let mut out = Vec::new();
    while !c.at_end() {
        out.push(item(&mut c)?);
        if !c.boundary() {
            return c.err("expected whitespace between letters");
        }
    }
    Ok(out)
}

pub fn parse_word(src: &str) -> Result<Word, ParseError> {
    separated(src, free_letter).map(Word::new)
}

fn w_letter(c: &mut Cursor<'_>) -> Result<WLetter, ParseError> {
    let gen = if c.eat("w-inf") {
        if c.eat("(") {
            let n = node_in_call(c)?;
            c.expect(")")?;
            WGen::WInf(Subtree::Rooted(n))
        } else {
            WGen::WInf(Subtree::Whole)
        }
    } else if c.eat("w(") {
        let n = node_in_call(c)?;
        c.expect(")")?;
        WGen::W(n)
    } else {
        return c.err("expected `w(n,k)`, `w-inf` or `w-inf(n,k)`");
    };
    let sign = c.prime();
    Ok(WLetter { gen, sign })
}

pub fn parse_welement(src: &str) -> Result<WElement, ParseError> {
    separated(src, w_letter).map(WElement::new)
}

fn rational(c: &mut Cursor<'_>) -> Result<BigRational, ParseError> {
    let start = c.pos;
    let p: BigInt = c.digits()?.parse().expect("digits parse");
    c.skip_ws();
    let q: BigInt = if c.eat("/") {
        c.digits()?.parse().expect("digits parse")
    } else {
        BigInt::from(1)
    };
    if q == BigInt::from(0) {
        return Err(ParseError::new(start, "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

fn d_pieces(c: &mut Cursor<'_>) -> Result<Vec<DPiece>, ParseError> {
    let start = c.pos;
    if c.eat("d-inf") {
        return Ok(crate::dspace::d_infinity().pieces().to_vec());
    }
    if c.eat("a(") {
        let n: u32 = c.uint()?;
        c.expect(",")?;
        let j: u64 = c.uint()?;
        c.expect(")")?;
        let sign = c.prime();
        return DPiece::arc(n, j, sign)
            .map(|p| vec![p])
            .map_err(|e| ParseError::new(start, e.to_string()));
    }
    if c.eat("b(") {
        let from = rational(c)?;
        c.expect(",")?;
        let to = rational(c)?;
        c.expect(")")?;
        return DPiece::base(from, to)
            .map(|p| vec![p])
            .map_err(|e| ParseError::new(start, e.to_string()));
    }
    c.err("expected `a(n,j)`, `b(p/q,r/s)` or `d-inf`")
}

pub fn parse_dpath(src: &str) -> Result<DPath, ParseError> {
    let pieces: Vec<DPiece> = separated(src, d_pieces)?.into_iter().flatten().collect();
    DPath::new(pieces).map_err(|e| ParseError::new(0, e.to_string()))
}

/// One factor of an expression over the Hawaiian earring catalog.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HTerm {
    Catalog(TransfiniteElement, Sign),
    Letter(Letter),
}

fn h_term(c: &mut Cursor<'_>) -> Result<HTerm, ParseError> {
    let named = [
        ("c-inf", TransfiniteElement::CInf),
        ("c-tau", TransfiniteElement::CTau),
        ("p-tau", TransfiniteElement::PTau),
    ];
    for (kw, e) in named {
        if c.eat(kw) {
            return Ok(HTerm::Catalog(e, c.prime()));
        }
    }
    for (kw, is_p) in [("p(", true), ("c(", false)] {
        if c.eat(kw) {
            let start = c.pos;
            let i: u32 = c.uint()?;
            if i == 0 {
                return Err(ParseError::new(start, "indices start at 1"));
            }
            if is_p && i > u32::MAX / 2 {
                return Err(ParseError::new(start, "index too large"));
            }
            c.expect(")")?;
            let e = if is_p {
                TransfiniteElement::Pn(i)
            } else {
                TransfiniteElement::Cn(i)
            };
            return Ok(HTerm::Catalog(e, c.prime()));
        }
    }
    free_letter(c).map(HTerm::Letter)
}

pub fn parse_hexpr(src: &str) -> Result<Vec<HTerm>, ParseError> {
    separated(src, h_term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{classify, OrderKind};

    fn node(n: u32, k: u64) -> DyadicNode {
        DyadicNode::new(n, k).unwrap()
    }

    #[test]
    fn nodes() {
        assert_eq!(parse_node("(2,1)").unwrap(), node(2, 1));
        assert_eq!(parse_node("4,5").unwrap(), node(4, 5));
        assert!(parse_node("3,5").is_err());
        assert_eq!(parse_node("9/16").unwrap(), node(4, 5));
        assert_eq!(parse_node(" 1/2 ").unwrap(), node(1, 1));
        assert!(parse_node("2/4").is_err());
        assert!(parse_node("(1/2)").is_err());
        assert!(parse_node("2,3").is_err());
        assert!(parse_node("99999999999999999999,1").is_err());
    }

    #[test]
    fn sets() {
        let s = parse_set("tree - points{(1,1), 1/4}").unwrap();
        assert!(!s.contains(&node(1, 1)));
        assert!(!s.contains(&node(2, 1)));
        assert!(s.contains(&node(2, 2)));
        assert_eq!(classify(&s).kind(), OrderKind::ContainsDense);
        let f = parse_set("points{1/2,(2,1)} + points{}").unwrap();
        assert!(classify(&f).is_scattered());
        let t = parse_set("subtree(2,1) - subtree(3,1)").unwrap();
        assert_eq!(t.regions(), vec![Subtree::Rooted(node(3, 2))]);
        assert!(parse_set("points{2,1}").is_err());
        assert!(parse_set("tree +").is_err());
        assert!(parse_set("").is_err());
    }

    #[test]
    fn words() {
        assert!(parse_word("c1 c1'").unwrap().is_identity());
        assert!(parse_word("eps").unwrap().is_identity());
        assert_eq!(parse_word("c3' x2").unwrap().to_string(), "c3' x2");
        let e = parse_word("c1 c0").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_word("c1c2").is_err());
        assert!(parse_word("").is_err());
        assert!(parse_word("eps c1").is_err());
    }

    #[test]
    fn welements() {
        let e = parse_welement("w(1,1) w-inf w(1/2)' w-inf'").unwrap();
        assert_eq!(e.len(), 4);
        let sub = parse_welement("w-inf(2,2)").unwrap();
        assert_eq!(
            sub.letters()[0].gen,
            WGen::WInf(Subtree::Rooted(node(2, 2)))
        );
        assert!(parse_welement("w(0,1)").is_err());
        assert!(parse_welement("w-inf(").is_err());
    }

    #[test]
    fn dpaths() {
        let p = parse_dpath("a(1,1) b(1,0)").unwrap();
        assert_eq!(p.pieces().len(), 2);
        assert_eq!(parse_dpath("d-inf").unwrap(), p);
        assert!(parse_dpath("a(2,1) a(2,2)'").is_err(), "discontinuous");
        assert!(parse_dpath("b(1/2,1/2)").is_err());
        assert!(parse_dpath("b(1/0,1)").is_err());
        assert!(parse_dpath("b(3/2,1)").is_err());
        assert!(parse_dpath("eps").unwrap().pieces().is_empty());
    }

    #[test]
    fn hexprs() {
        let t = parse_hexpr("p-tau c(2)' c3").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], HTerm::Catalog(TransfiniteElement::PTau, Sign::Pos));
        assert_eq!(t[1], HTerm::Catalog(TransfiniteElement::Cn(2), Sign::Neg));
        assert!(parse_hexpr("p(0)").is_err());
    }
}
