//! Flags shared by every subcommand and their parsing into core types.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use num_rational::Ratio;
use qca_core::qca::{rep_from_inline, rep_from_toml, Interval, OnsiteRep, Qca, QcaSpec};
use qca_core::QcaError;

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Local dimension.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Number of sites.
    #[arg(long, global = true)]
    pub sites: Option<usize>,
    /// Automaton: inline `shift:1*random-brickwork:7` or a TOML file.
    #[arg(long, global = true)]
    pub qca: Option<String>,
    /// On-site representation: inline `z2:0,1`, `trivial:N:d` or a TOML file.
    #[arg(long, global = true)]
    pub rep: Option<String>,
    /// Intervals `A:start:len` and `B:start:len`.
    #[arg(long, global = true, num_args = 1..)]
    pub interval: Vec<String>,
    /// Group order (search-collisions) or half-size of the chain (transport).
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    /// Largest representation dimension (search-collisions) or exponent
    /// bound (classify-z2).
    #[arg(long, global = true)]
    pub max_dim: Option<u64>,
    /// Character of the nontrivial element.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub chi: Option<i64>,
    /// `π₀` as `p/q`.
    #[arg(long, global = true)]
    pub pi0: Option<String>,
    /// `π₁` as `p/q`.
    #[arg(long, global = true)]
    pub pi1: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for numerical checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<QcaError> for CliError {
    fn from(e: QcaError) -> Self {
        match e {
            QcaError::Domain(_) | QcaError::Budget(_) | QcaError::NotSymmetric { .. } => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub fn invalid<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Validation(msg.into()))
}

fn read_or_inline(text: &str) -> Result<Option<String>, CliError> {
    let p = Path::new(text);
    if p.is_file() {
        return std::fs::read_to_string(p)
            .map(Some)
            .map_err(|e| CliError::Validation(format!("cannot read {text}: {e}")));
    }
    Ok(None)
}

impl Options {
    pub fn require<T: Copy>(&self, v: Option<T>, flag: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Validation(format!("--{flag} is required")))
    }

    pub fn rep(&self) -> Result<Option<OnsiteRep>, CliError> {
        let Some(text) = &self.rep else { return Ok(None) };
        let rep = match read_or_inline(text)? {
            Some(file) => rep_from_toml(&file)?,
            None => rep_from_inline(text)?,
        };
        Ok(Some(rep))
    }

    pub fn require_rep(&self) -> Result<OnsiteRep, CliError> {
        self.rep()?.ok_or_else(|| CliError::Validation("--rep is required".into()))
    }

    pub fn qca_spec(&self) -> Result<QcaSpec, CliError> {
        let text = self.qca.as_deref().ok_or_else(|| CliError::Validation("--qca is required".into()))?;
        Ok(match read_or_inline(text)? {
            Some(file) => QcaSpec::from_toml(&file)?,
            None => QcaSpec::from_inline(text)?,
        })
    }

    /// The automaton, with `d` defaulting to the representation's dimension.
    pub fn qca(&self, rep: Option<&OnsiteRep>, sites: Option<usize>) -> Result<Qca, CliError> {
        let spec = self.qca_spec()?;
        let d = self.d.or(rep.map(|r| r.dim()));
        let chain = spec.chain(d, self.sites.or(sites))?;
        if let Some(r) = rep {
            if r.dim() != chain.d() {
                return invalid(format!("representation has dimension {}, chain has d = {}", r.dim(), chain.d()));
            }
        }
        Ok(spec.build(chain, rep)?)
    }

    /// The intervals named `A` and `B`.
    pub fn intervals(&self) -> Result<(Option<Interval>, Option<Interval>), CliError> {
        let (mut a, mut b) = (None, None);
        for item in &self.interval {
            let parts: Vec<&str> = item.split(':').collect();
            let [name, start, len] = parts[..] else {
                return invalid(format!("interval '{item}' is not NAME:start:len"));
            };
            let num = |s: &str| s.parse::<usize>().map_err(|_| CliError::Validation(format!("bad number in '{item}'")));
            let iv = Interval::new(num(start)?, num(len)?);
            match name {
                "A" | "a" => a = Some(iv),
                "B" | "b" => b = Some(iv),
                _ => return invalid(format!("interval name '{name}' is neither A nor B")),
            }
        }
        Ok((a, b))
    }

    pub fn ratio(&self, v: &Option<String>, flag: &str) -> Result<Ratio<u64>, CliError> {
        let text = v.as_deref().ok_or_else(|| CliError::Validation(format!("--{flag} is required")))?;
        parse_ratio(text).ok_or_else(|| CliError::Validation(format!("--{flag} '{text}' is not a positive p/q")))
    }
}

pub fn parse_ratio(text: &str) -> Option<Ratio<u64>> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse().ok()?, q.trim().parse().ok()?),
        None => (text.trim().parse().ok()?, 1),
    };
    (p > 0 && q > 0).then(|| Ratio::new(p, q))
}
