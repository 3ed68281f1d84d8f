use hminus_core::hminus::build_hamiltonian;
use hminus_core::{
    AnsatzConfig, Encoding, HamiltonianSpec, Method, OptimizerConfig, PauliSum, SignConvention, TwoBodySign,
};
use serde::Serialize;

use crate::{CliError, Result};

/// Everything that determines a run. Identical configs give identical output.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub encoding: Encoding,
    pub sign_convention: SignConvention,
    pub two_body_sign: TwoBodySign,
    pub optimizer: OptimizerConfig,
    /// 0 evaluates the energy exactly.
    pub shots: u64,
    pub depth: usize,
    pub seed: u64,
    pub restarts: usize,
    /// Worker threads for restarts; 0 uses all cores. Does not affect results.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let spec = HamiltonianSpec::default();
        Self {
            encoding: spec.encoding,
            sign_convention: spec.integrals.sign_convention(),
            two_body_sign: spec.two_body_sign,
            optimizer: OptimizerConfig::new(Method::NelderMead),
            shots: hminus_core::vqe::DEFAULT_SHOTS,
            depth: 1,
            seed: 0,
            restarts: 1,
            jobs: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(CliError::Usage("--restarts must be at least 1".into()));
        }
        if self.depth == 0 {
            return Err(CliError::Usage("--depth must be at least 1".into()));
        }
        self.optimizer.validate()?;
        Ok(())
    }

    pub fn spec(&self) -> HamiltonianSpec {
        HamiltonianSpec::new(self.encoding, self.sign_convention, self.two_body_sign)
    }

    pub fn hamiltonian(&self) -> Result<PauliSum> {
        Ok(build_hamiltonian(&self.spec())?)
    }

    pub fn ansatz(&self) -> Result<AnsatzConfig> {
        Ok(AnsatzConfig::new(2, self.depth)?)
    }
}
