use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sg_tadpole::profiles::Branch;
use sg_tadpole::{Grid, Params};

use crate::CliError;

/// Subcommand recorded in a manifest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Profile,
    Exists,
    Spectrum,
    Evolve,
    Certify,
}

/// Modulus selection: solve the gluing equation, or use a given `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KChoice {
    Auto,
    Value(f64),
}

impl FromStr for KChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(KChoice::Auto);
        }
        s.parse::<f64>()
            .map(KChoice::Value)
            .map_err(|_| format!("expected `auto` or a modulus in [0, 1), got `{s}`"))
    }
}

/// Replacement operators for pipeline tests, in place of the linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TestOperator {
    /// `−c_j²∂ₓ² + 1` on both edges with the state's `Z`; no negative spectrum when `Z <= 0`.
    Positive,
}

/// Overrides of the default discretization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GridOverrides {
    pub h: Option<f64>,
    pub radius: Option<f64>,
}

impl GridOverrides {
    /// The discretization for `g`, with defaults `h = 1e-3·min(L, c2)` and `R = 40·c2`.
    pub fn resolve(&self, g: &Params) -> Result<Grid, CliError> {
        let d = Grid::default_for(g)?;
        if self.h.is_none() && self.radius.is_none() {
            return Ok(d);
        }
        Ok(Grid::new(
            g.loop_half_length,
            self.h.unwrap_or(d.h),
            self.radius.unwrap_or(d.radius),
        )?)
    }
}

/// Everything needed to reproduce one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Command,
    pub params: Params,
    pub branch: Branch,
    pub k: KChoice,
    pub grid: GridOverrides,
    pub output_dir: PathBuf,
    /// Rows of the `exists` sweep.
    pub samples: usize,
    /// Seed amplitude of `evolve` and of the optional evolution check in `certify`.
    pub amplitude: f64,
    /// Whether `certify` runs the evolution check.
    pub evolve: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_operator: Option<TestOperator>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunManifest {
        RunManifest {
            command: Command::Certify,
            params: Params::new(1.5, 1.0, 0.5, 0.1 + 0.2).unwrap(),
            branch: Branch::AbovePi,
            k: KChoice::Value(0.206_183_948_119_276_1),
            grid: GridOverrides {
                h: Some(1e-3 / 3.0),
                radius: None,
            },
            output_dir: PathBuf::from("out/run"),
            samples: 1001,
            amplitude: 1e-4,
            evolve: true,
            test_operator: None,
        }
    }

    #[test]
    fn manifest_round_trips_through_json() {
        for m in [
            sample(),
            RunManifest {
                k: KChoice::Auto,
                test_operator: Some(TestOperator::Positive),
                ..sample()
            },
        ] {
            let text = crate::output::to_json_string(&m).unwrap();
            let back: RunManifest = serde_json::from_str(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(crate::output::to_json_string(&back).unwrap(), text);
        }
    }

    #[test]
    fn k_choice_parses() {
        assert_eq!("auto".parse::<KChoice>().unwrap(), KChoice::Auto);
        assert_eq!("0.5".parse::<KChoice>().unwrap(), KChoice::Value(0.5));
        assert!("half".parse::<KChoice>().is_err());
    }
}
