//! Named verification suites and their parameters.

use std::fmt;
use std::str::FromStr;

use crate::cantor::{verify_diameter, verify_fold_identity};
use crate::dspace::verify_nd_example;
use crate::error::SuiteError;
use crate::hawaiian::verify_factorization_lemma;
use crate::oracles::verify_oracles;
use crate::report::VerificationReport;
use crate::wspace::verify_n0_proposition;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    FactorizationLemma,
    N0,
    Fold,
    NdExample,
    Diameter,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::FactorizationLemma,
        Suite::N0,
        Suite::Fold,
        Suite::NdExample,
        Suite::Diameter,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FactorizationLemma => "factorization-lemma",
            Suite::N0 => "n0",
            Suite::Fold => "fold",
            Suite::NdExample => "nd-example",
            Suite::Diameter => "diameter",
            Suite::Oracles => "oracles",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Suite::N0 | Suite::NdExample | Suite::Oracles)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

/// Suite parameters; `None` means the suite default.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SuiteParams {
    pub max_n: Option<u32>,
    pub max_level: Option<u32>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub grid: Option<u32>,
}

fn bounded(
    name: &'static str,
    value: Option<u64>,
    default: u64,
    lo: u64,
    hi: u64,
    range: &'static str,
) -> Result<u64, SuiteError> {
    let v = value.unwrap_or(default);
    if v < lo || v > hi {
        return Err(SuiteError::BadParameter {
            name,
            value: v,
            range,
        });
    }
    Ok(v)
}

/// Runs one suite. Randomized suites (`n0`, `nd-example`, `oracles`) refuse
/// to run without a seed.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport, SuiteError> {
    let seed = if suite.is_randomized() {
        Some(
            params
                .seed
                .ok_or_else(|| SuiteError::MissingSeed(suite.name().to_string()))?,
        )
    } else {
        None
    };
    let max_n = params.max_n.map(u64::from);
    let max_level = params.max_level.map(u64::from);
    let report = match suite {
        Suite::FactorizationLemma => {
            let n = bounded("max-n", max_n, 64, 1, 512, "1..=512")?;
            verify_factorization_lemma(n as u32)
        }
        Suite::N0 => {
            let s = bounded("samples", params.samples, 10_000, 1, 10_000_000, "1..=10^7")?;
            verify_n0_proposition(s as usize, seed.unwrap_or_default())
        }
        Suite::Fold => {
            let m = bounded("max-level", max_level, 12, 1, 16, "1..=16")?;
            verify_fold_identity(m as u32)
        }
        Suite::NdExample => {
            let s = bounded("samples", params.samples, 1_000, 1, 10_000_000, "1..=10^7")?;
            verify_nd_example(s as usize, seed.unwrap_or_default())
        }
        Suite::Diameter => {
            let n = bounded("max-level", max_level, 10, 1, 14, "1..=14")?;
            let grid = bounded("grid", params.grid.map(u64::from), 64, 2, 1024, "2..=1024")?;
            verify_diameter(n as u32, grid as u32)
        }
        Suite::Oracles => {
            let s = bounded("samples", params.samples, 500, 1, 100_000, "1..=100000")?;
            verify_oracles(s as usize, seed.unwrap_or_default())
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(
            "folds".parse::<Suite>(),
            Err(SuiteError::UnknownSuite("folds".into()))
        );
    }

    #[test]
    fn seed_required_for_random_suites() {
        let p = SuiteParams::default();
        assert!(matches!(
            run_suite(Suite::N0, &p),
            Err(SuiteError::MissingSeed(_))
        ));
        assert!(run_suite(
            Suite::Fold,
            &SuiteParams {
                max_level: Some(2),
                ..p
            }
        )
        .is_ok());
    }

    #[test]
    fn parameter_ranges() {
        let p = SuiteParams {
            max_n: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            run_suite(Suite::FactorizationLemma, &p),
            Err(SuiteError::BadParameter { name: "max-n", .. })
        ));
        let p = SuiteParams {
            max_level: Some(40),
            ..Default::default()
        };
        assert!(run_suite(Suite::Diameter, &p).is_err());
    }

    #[test]
    fn small_runs_pass() {
        let p = SuiteParams {
            max_n: Some(6),
            max_level: Some(3),
            samples: Some(20),
            seed: Some(9),
            grid: Some(8),
        };
        for s in [
            Suite::FactorizationLemma,
            Suite::N0,
            Suite::Fold,
            Suite::NdExample,
            Suite::Diameter,
        ] {
            let r = run_suite(s, &p).unwrap();
            assert!(r.passed(), "{}", r.summary());
            assert_eq!(r.suite, s.name());
        }
    }
}
