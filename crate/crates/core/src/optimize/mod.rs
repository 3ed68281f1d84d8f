//! Derivative-free and stochastic optimizers for the energy objective.
//!
//! All methods minimize an [`Objective`] from a starting point and return
//! an [`OptimizerTrace`]: one record per iteration holding the best value
//! seen so far and the point that produced it.

mod nelder_mead;
mod powell;
mod spsa;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use nelder_mead::nelder_mead;
pub use powell::powell;
pub use spsa::spsa;

type ObjectiveFn<'a> = Box<dyn FnMut(&[f64], u64) -> f64 + 'a>;

/// A counted scalar function of a parameter vector.
///
/// The wrapped closure receives the point and the zero-based index of the
/// evaluation, which stochastic objectives use to derive per-call seeds.
pub struct Objective<'a> {
    f: ObjectiveFn<'a>,
    evaluations: u64,
}

impl<'a> Objective<'a> {
    pub fn new(f: impl FnMut(&[f64], u64) -> f64 + 'a) -> Self {
        Self {
            f: Box::new(f),
            evaluations: 0,
        }
    }

    /// Wraps a function that ignores the evaluation index.
    pub fn from_fn(mut f: impl FnMut(&[f64]) -> f64 + 'a) -> Self {
        Self::new(move |x, _| f(x))
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        let value = (self.f)(x, self.evaluations);
        self.evaluations += 1;
        if !value.is_finite() {
            return Err(Error::NonFiniteObjective(value));
        }
        Ok(value)
    }

    pub fn evaluation_count(&self) -> u64 {
        self.evaluations
    }
}

impl fmt::Debug for Objective<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective").field("evaluations", &self.evaluations).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    NelderMead,
    Powell,
    Spsa,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::NelderMead, Method::Powell, Method::Spsa];

    pub fn name(self) -> &'static str {
        match self {
            Method::NelderMead => "nelder-mead",
            Method::Powell => "powell",
            Method::Spsa => "spsa",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nelder-mead" | "neldermead" | "nm" => Ok(Method::NelderMead),
            "powell" => Ok(Method::Powell),
            "spsa" => Ok(Method::Spsa),
            "cobyla" | "l-bfgs-b" | "lbfgsb" => Err(Error::InvalidConfig(format!(
                "optimizer {s:?} is not implemented; the energy objective is unconstrained, use one of: nelder-mead, powell, spsa"
            ))),
            _ => Err(Error::InvalidConfig(format!(
                "unknown optimizer {s:?}; supported: nelder-mead, powell, spsa"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NelderMeadCoefficients {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Offset of each extra initial vertex along its coordinate axis.
    pub initial_step: f64,
}

impl Default for NelderMeadCoefficients {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.1,
        }
    }
}

/// How SPSA perturbs and differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpsaPerturbation {
    /// `c_k = c / (k+1)^γ`, `ĝᵢ = (f₊ − f₋) / (2 c_k Δᵢ)`.
    Gain,
    /// Fixed shift `c_k = π/2` with `ĝᵢ = ½(f₊ − f₋) / Δᵢ`.
    HalfPiShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpsaGains {
    pub a: f64,
    pub c: f64,
    pub stability: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub perturbation: SpsaPerturbation,
}

impl Default for SpsaGains {
    fn default() -> Self {
        Self {
            a: 0.2,
            c: 0.1,
            stability: 10.0,
            alpha: 0.602,
            gamma: 0.101,
            perturbation: SpsaPerturbation::Gain,
        }
    }
}

impl SpsaGains {
    /// Step size for zero-based iteration `k`.
    pub fn step(&self, k: usize) -> f64 {
        self.a / (k as f64 + 1.0 + self.stability).powf(self.alpha)
    }

    /// Perturbation size for zero-based iteration `k`.
    pub fn perturbation_size(&self, k: usize) -> f64 {
        match self.perturbation {
            SpsaPerturbation::Gain => self.c / (k as f64 + 1.0).powf(self.gamma),
            SpsaPerturbation::HalfPiShift => std::f64::consts::FRAC_PI_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub method: Method,
    pub max_iterations: usize,
    pub f_tolerance: f64,
    pub x_tolerance: f64,
    pub seed: u64,
    pub nelder_mead: NelderMeadCoefficients,
    pub spsa: SpsaGains,
}

impl OptimizerConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            max_iterations: 2000,
            f_tolerance: 1e-12,
            x_tolerance: 1e-10,
            seed: 0,
            nelder_mead: NelderMeadCoefficients::default(),
            spsa: SpsaGains::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.f_tolerance > 0.0 && self.x_tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalReason {
    ConvergedF,
    ConvergedX,
    MaxIterations,
}

impl fmt::Display for TerminalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TerminalReason::ConvergedF => "converged_f",
            TerminalReason::ConvergedX => "converged_x",
            TerminalReason::MaxIterations => "max_iterations",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    /// One-based.
    pub iteration: usize,
    pub best_energy: f64,
    pub incumbent: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerTrace {
    pub method: Method,
    pub records: Vec<TraceRecord>,
    pub terminal_reason: TerminalReason,
    pub evaluations: u64,
    /// The method's last iterate (the SPSA point after its final update;
    /// the incumbent for the direct-search methods).
    pub final_point: Vec<f64>,
    /// Nelder-Mead shrink steps, each costing one evaluation per dimension.
    pub shrinks: usize,
}

impl OptimizerTrace {
    pub fn best_energy(&self) -> f64 {
        self.records.last().map(|r| r.best_energy).unwrap_or(f64::INFINITY)
    }

    pub fn best_point(&self) -> &[f64] {
        self.records.last().map(|r| r.incumbent.as_slice()).unwrap_or(&[])
    }

    pub fn iterations(&self) -> usize {
        self.records.len()
    }
}

/// Runs the method named in `cfg`.
pub fn minimize(obj: &mut Objective<'_>, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerTrace> {
    match cfg.method {
        Method::NelderMead => nelder_mead(obj, x0, cfg),
        Method::Powell => powell(obj, x0, cfg),
        Method::Spsa => spsa(obj, x0, cfg),
    }
}

fn check_start(x0: &[f64], cfg: &OptimizerConfig) -> Result<()> {
    cfg.validate()?;
    if x0.is_empty() {
        return Err(Error::InvalidConfig("starting point is empty".into()));
    }
    if let Some((index, &value)) = x0.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFiniteParameter { index, value });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_counts_and_checks() {
        let mut obj = Objective::new(|x, i| if i == 2 { f64::NAN } else { x[0] });
        assert_eq!(obj.evaluate(&[1.0]).unwrap(), 1.0);
        assert_eq!(obj.evaluate(&[2.0]).unwrap(), 2.0);
        assert!(matches!(obj.evaluate(&[3.0]), Err(Error::NonFiniteObjective(_))));
        assert_eq!(obj.evaluation_count(), 3);
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        let err = "cobyla".parse::<Method>().unwrap_err().to_string();
        assert!(err.contains("nelder-mead") && err.contains("powell") && err.contains("spsa"));
        assert!("bfgs".parse::<Method>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = OptimizerConfig::new(Method::Powell);
        assert!(cfg.validate().is_ok());
        cfg.max_iterations = 0;
        assert!(cfg.validate().is_err());
        cfg.max_iterations = 1;
        cfg.f_tolerance = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn default_gain_sequences() {
        let g = SpsaGains::default();
        assert!((g.step(0) - 0.2 / 11f64.powf(0.602)).abs() < 1e-15);
        assert!((g.perturbation_size(0) - 0.1).abs() < 1e-15);
        let shift = SpsaGains {
            perturbation: SpsaPerturbation::HalfPiShift,
            ..g
        };
        assert_eq!(shift.perturbation_size(37), std::f64::consts::FRAC_PI_2);
    }
}
