//! Size parameters for the verification suites, parsed from
//! `key=value,key=value` strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// The environment variable whose value overrides the default budget.
pub const BUDGET_ENV: &str = "FRACTAL_GROUPS_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Random maps per direction for the separation check.
    pub maps: usize,
    /// Random configurations for the split check.
    pub configs: usize,
    /// Truncation radius and cap for legal colorings.
    pub radius: usize,
    pub cap: usize,
    /// Random elements or pairs for the tree checks.
    pub samples: usize,
    /// Truncation used for the distortion check.
    pub qi_radius: usize,
    pub qi_cap: usize,
    pub qi_k: u32,
    /// Depth of the exhaustively checked embedding.
    pub embed_depth: usize,
    /// Random pairs and branch points for the lift check.
    pub lift_pairs: usize,
    pub lift_points: usize,
    /// Expansion depth for the replacement checks.
    pub depth: usize,
    /// Lamination generations.
    pub generations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            maps: 1000,
            configs: 100,
            radius: 5,
            cap: 5,
            samples: 200,
            qi_radius: 6,
            qi_cap: 4,
            qi_k: 3,
            embed_depth: 3,
            lift_pairs: 50,
            lift_points: 100,
            depth: 4,
            generations: 8,
        }
    }
}

impl Budget {
    /// Applies `key=value` overrides, comma separated.
    pub fn apply(&mut self, arg: &str) -> Result<(), CliError> {
        for item in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("budget entry `{item}` is not key=value")))?;
            let (k, v) = (k.trim(), v.trim());
            let n: usize = v
                .parse()
                .map_err(|_| CliError::Usage(format!("budget value `{v}` for `{k}` is not a count")))?;
            let slot = match k {
                "maps" => &mut self.maps,
                "configs" => &mut self.configs,
                "radius" => &mut self.radius,
                "cap" => &mut self.cap,
                "samples" => &mut self.samples,
                "qi_radius" => &mut self.qi_radius,
                "qi_cap" => &mut self.qi_cap,
                "qi_k" => {
                    self.qi_k = u32::try_from(n).map_err(|_| CliError::Usage(format!("qi_k = {n} is too large")))?;
                    continue;
                }
                "embed_depth" => &mut self.embed_depth,
                "lift_pairs" => &mut self.lift_pairs,
                "lift_points" => &mut self.lift_points,
                "depth" => &mut self.depth,
                "generations" => &mut self.generations,
                _ => return Err(CliError::Usage(format!("unknown budget key `{k}`"))),
            };
            *slot = n;
        }
        Ok(())
    }

    /// The default budget, overridden by [`BUDGET_ENV`] and then by `arg`.
    pub fn resolve(arg: Option<&str>) -> Result<Self, CliError> {
        let mut b = Budget::default();
        if let Ok(env) = std::env::var(BUDGET_ENV) {
            b.apply(&env)?;
        }
        if let Some(s) = arg {
            b.apply(s)?;
        }
        Ok(b)
    }

    /// The fields as a map, for reports.
    pub fn entries(&self) -> BTreeMap<&'static str, usize> {
        BTreeMap::from([
            ("maps", self.maps),
            ("configs", self.configs),
            ("radius", self.radius),
            ("cap", self.cap),
            ("samples", self.samples),
            ("qi_radius", self.qi_radius),
            ("qi_cap", self.qi_cap),
            ("qi_k", self.qi_k as usize),
            ("embed_depth", self.embed_depth),
            ("lift_pairs", self.lift_pairs),
            ("lift_points", self.lift_points),
            ("depth", self.depth),
            ("generations", self.generations),
        ])
    }
}

impl FromStr for Budget {
    type Err = CliError;

    /// Overrides on top of the defaults, ignoring the environment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut b = Budget::default();
        b.apply(s)?;
        Ok(b)
    }
}
