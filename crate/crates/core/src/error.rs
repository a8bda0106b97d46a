use thiserror::Error;

use crate::orders::{DyadicNode, Subtree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("level {0} out of range (1..=63)")]
    LevelOutOfRange(u32),
    #[error("position {position} out of range for level {level}")]
    PositionOutOfRange { level: u32, position: u64 },
    #[error("{numer}/{denom} is not a dyadic rational in (0,1) with odd numerator")]
    NotDyadic { numer: u64, denom: u64 },
    #[error("breadth-first indices start at 1")]
    ZeroIndex,
    #[error("regions {0} and {1} overlap")]
    RegionOverlap(Subtree, Subtree),
    #[error("node {0} is both added and removed")]
    ExtraAlsoRemoved(DyadicNode),
    #[error("added node {0} already lies in a full region")]
    ExtraInsideRegion(DyadicNode),
    #[error("removed node {0} lies outside every full region")]
    RemovalOutsideRegions(DyadicNode),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("no image for generator {0}")]
    MissingImage(String),
    #[error("generator {gen} outside c1..c{max}")]
    OutOfRange { gen: String, max: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DSpaceError {
    #[error("arc ({level},{position}) does not exist")]
    BadArc { level: u32, position: u64 },
    #[error("base segment must move: from = to = {0}")]
    DegenerateBase(String),
    #[error("base point {0} lies outside [0,1]")]
    OffBase(String),
    #[error("piece {index} starts at {found}, expected {expected}")]
    Discontinuous {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("paths have different endpoints")]
    EndpointMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("{0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("{0} has no finite ternary expansion")]
    Unrepresentable(String),
    #[error("gap ({level},{position}) does not exist")]
    BadGap { level: u32, position: u64 },
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of: factorization-lemma, n0, fold, nd-example, diameter, oracles)")]
    UnknownSuite(String),
    #[error("suite '{0}' is randomized and needs an explicit seed")]
    MissingSeed(String),
    #[error("parameter {name}={value} out of range ({range})")]
    BadParameter {
        name: &'static str,
        value: u64,
        range: &'static str,
    },
}
