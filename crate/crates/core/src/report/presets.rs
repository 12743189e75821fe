//! Built-in manifolds from the three-dimensional family
//! `[e2,e3] = 2e1`, `[e3,e1] = c2 e2`, `[e1,e2] = c3 e3` with ξ = e1.

use thiserror::Error;

use super::spec::{ManifoldSpec, MetricSpec};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset {0:?}; available: {list}", list = PRESET_NAMES.join(", "))]
    Unknown(String),
    #[error("preset {0} needs both --c2 and --c3")]
    MissingParameters(String),
    #[error("preset {0} takes no parameters")]
    UnexpectedParameters(String),
}

pub const PRESET_NAMES: [&str; 4] = ["paper-sasakian", "paper-family", "kappa-minus-mu", "n-kappa-flatcase"];

/// Family member with `c1 = 2`.
pub fn family_spec(label: &str, c2: Rational, c3: Rational) -> ManifoldSpec {
    ManifoldSpec {
        label: label.to_string(),
        dim: 3,
        structure_constants: vec![
            (2, 3, 1, Rational::int(2)),
            (3, 1, 2, c2),
            (1, 2, 3, c3),
        ],
        metric: MetricSpec::Identity("identity".to_string()),
        xi_index: 1,
    }
}

pub fn preset(name: &str, c2: Option<Rational>, c3: Option<Rational>) -> Result<ManifoldSpec, PresetError> {
    let fixed = match name {
        "paper-family" => {
            let (Some(c2), Some(c3)) = (c2, c3) else {
                return Err(PresetError::MissingParameters(name.to_string()));
            };
            return Ok(family_spec(name, c2, c3));
        }
        "paper-sasakian" => (Rational::one(), Rational::one()),
        "kappa-minus-mu" => (Rational::frac(-5, 2), Rational::frac(3, 2)),
        "n-kappa-flatcase" => (Rational::zero(), Rational::int(2)),
        other => return Err(PresetError::Unknown(other.to_string())),
    };
    if c2.is_some() || c3.is_some() {
        return Err(PresetError::UnexpectedParameters(name.to_string()));
    }
    Ok(family_spec(name, fixed.0, fixed.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build_frames() {
        for name in ["paper-sasakian", "kappa-minus-mu", "n-kappa-flatcase"] {
            let spec = preset(name, None, None).unwrap();
            assert!(spec.metric_frame().is_ok(), "{name}");
        }
        assert_eq!(
            preset("paper-family", Some(Rational::one()), None),
            Err(PresetError::MissingParameters("paper-family".into()))
        );
        assert!(matches!(preset("nope", None, None), Err(PresetError::Unknown(_))));
        assert!(matches!(
            preset("paper-sasakian", Some(Rational::one()), None),
            Err(PresetError::UnexpectedParameters(_))
        ));
    }
}
