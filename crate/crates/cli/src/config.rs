//! Suite identifiers and the shared run configuration.

use diffn_core::Alpha;
use serde::Serialize;

use crate::CliError;

/// The verification suites, in the order `all` runs them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    RsFunctionalExtremal,
    RsFunctionalRandom,
    RsFunctionalAffine,
    PlLower,
    RsBodySimplex,
    RsBodyRandom,
    HullUnion,
    PolarIdentity,
    HullDuality,
    AlphaMinusInfinity,
    AlphaGeneralBound,
    Alpha1d,
    RearrangeLemma,
}

impl SuiteId {
    pub fn all() -> [SuiteId; 13] {
        use SuiteId::*;
        [
            RsFunctionalExtremal,
            RsFunctionalRandom,
            RsFunctionalAffine,
            PlLower,
            RsBodySimplex,
            RsBodyRandom,
            HullUnion,
            PolarIdentity,
            HullDuality,
            AlphaMinusInfinity,
            AlphaGeneralBound,
            Alpha1d,
            RearrangeLemma,
        ]
    }

    pub fn name(self) -> &'static str {
        use SuiteId::*;
        match self {
            RsFunctionalExtremal => "rs-functional-extremal",
            RsFunctionalRandom => "rs-functional-random",
            RsFunctionalAffine => "rs-functional-affine",
            PlLower => "pl-lower",
            RsBodySimplex => "rs-body-simplex",
            RsBodyRandom => "rs-body-random",
            HullUnion => "hull-union",
            PolarIdentity => "polar-identity",
            HullDuality => "hull-duality",
            AlphaMinusInfinity => "alpha-minus-infinity",
            AlphaGeneralBound => "alpha-general-bound",
            Alpha1d => "alpha-1d",
            RearrangeLemma => "rearrange-lemma",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteId> {
        SuiteId::all().into_iter().find(|id| id.name() == s)
    }
}

/// Concavity exponent as given on the command line: `0`, a negative finite
/// number, or `-inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaArg {
    Zero,
    Finite(f64),
    MinusInfinity,
}

impl AlphaArg {
    pub fn parse(s: &str) -> Result<AlphaArg, CliError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("-inf") || t.eq_ignore_ascii_case("-infinity") {
            return Ok(AlphaArg::MinusInfinity);
        }
        let x: f64 = t
            .parse()
            .map_err(|_| CliError::Config(format!("alpha must be 0, negative, or -inf: {s:?}")))?;
        if x == 0.0 {
            Ok(AlphaArg::Zero)
        } else if x < 0.0 && x.is_finite() {
            Ok(AlphaArg::Finite(x))
        } else {
            Err(CliError::Config(format!(
                "alpha must be 0, negative, or -inf: {s:?}"
            )))
        }
    }

    pub fn to_alpha(self) -> Alpha<f64> {
        match self {
            AlphaArg::Zero => Alpha::zero(),
            AlphaArg::Finite(a) => Alpha::finite(a).expect("validated on parse"),
            AlphaArg::MinusInfinity => Alpha::minus_infinity(),
        }
    }
}

impl Serialize for AlphaArg {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            AlphaArg::Zero => ser.serialize_str("0"),
            AlphaArg::Finite(a) => ser.serialize_str(&format!("{a}")),
            AlphaArg::MinusInfinity => ser.serialize_str("-inf"),
        }
    }
}

/// Options shared by every suite. `None` means the suite default.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub dim: Option<usize>,
    pub nodes: Option<usize>,
    pub halfwidth: Option<f64>,
    pub alpha: Option<AlphaArg>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dim: None,
            nodes: None,
            halfwidth: None,
            alpha: None,
            seed: 1,
            tol: 0.02,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(d) = self.dim {
            if !(1..=3).contains(&d) {
                return Err(CliError::Config(format!("dim must be 1..=3 (got {d})")));
            }
        }
        if let Some(n) = self.nodes {
            if n < 33 {
                return Err(CliError::Config(format!("nodes must be at least 33 (got {n})")));
            }
        }
        if let Some(w) = self.halfwidth {
            if !(w.is_finite() && w > 0.0) {
                return Err(CliError::Config(format!("halfwidth must be positive (got {w})")));
            }
        }
        if !(self.tol > 0.0 && self.tol <= 0.2) {
            return Err(CliError::Config(format!(
                "tol must lie in (0, 0.2] (got {})",
                self.tol
            )));
        }
        Ok(())
    }

    /// Suite node default, clamped from below by any explicit override.
    pub fn nodes_or(&self, default: usize) -> usize {
        self.nodes.unwrap_or(default)
    }

    pub fn halfwidth_or(&self, default: f64) -> f64 {
        self.halfwidth.unwrap_or(default)
    }

    /// Restricts a dimension list to `--dim` when given.
    pub fn dims_or<'a>(&self, defaults: &'a [usize]) -> Vec<usize> {
        match self.dim {
            Some(d) if defaults.contains(&d) => vec![d],
            Some(_) => Vec::new(),
            None => defaults.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::all() {
            assert_eq!(SuiteId::parse(id.name()), Some(id));
        }
        assert_eq!(SuiteId::parse("no-such-suite"), None);
    }

    #[test]
    fn alpha_strings_parse() {
        assert_eq!(AlphaArg::parse("-inf").unwrap(), AlphaArg::MinusInfinity);
        assert_eq!(AlphaArg::parse("0").unwrap(), AlphaArg::Zero);
        assert_eq!(AlphaArg::parse("-0.5").unwrap(), AlphaArg::Finite(-0.5));
        assert!(AlphaArg::parse("0.5").is_err());
        assert!(AlphaArg::parse("nan").is_err());
    }

    #[test]
    fn config_bounds_are_enforced() {
        let mut cfg = SuiteConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.nodes = Some(16);
        assert!(cfg.validate().is_err());
        cfg.nodes = None;
        cfg.tol = 0.5;
        assert!(cfg.validate().is_err());
        cfg.tol = 0.02;
        cfg.dim = Some(4);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn dim_restriction_filters_the_default_list() {
        let mut cfg = SuiteConfig::default();
        assert_eq!(cfg.dims_or(&[1, 2, 3]), vec![1, 2, 3]);
        cfg.dim = Some(2);
        assert_eq!(cfg.dims_or(&[1, 2, 3]), vec![2]);
        assert_eq!(cfg.dims_or(&[1]), Vec::<usize>::new());
    }
}
