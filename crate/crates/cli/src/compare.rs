use std::time::Instant;

use hminus_core::hminus::PUBLISHED_OPTIMIZER_ENERGIES;
use hminus_core::Method;
use serde::Serialize;

use crate::{run_vqe, CliError, ExperimentConfig, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub best_energy: f64,
    /// Summed over restarts.
    pub evaluations: u64,
    pub wall_time_s: f64,
}

/// Runs the same experiment once per method.
pub fn compare_optimizers(cfg: &ExperimentConfig, methods: &[Method]) -> Result<Vec<ComparisonRow>> {
    if methods.len() < 2 {
        return Err(CliError::Usage(format!(
            "--compare needs at least two methods, got {}",
            methods.len()
        )));
    }
    for (i, m) in methods.iter().enumerate() {
        if methods[..i].contains(m) {
            return Err(CliError::Usage(format!("--compare lists {m} twice")));
        }
    }
    methods
        .iter()
        .map(|&method| {
            let mut c = cfg.clone();
            c.optimizer.method = method;
            let start = Instant::now();
            let outcome = run_vqe(&c)?;
            Ok(ComparisonRow {
                method,
                best_energy: outcome.summary.final_energy,
                evaluations: outcome.summary.total_evaluations,
                wall_time_s: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// CSV table followed by `#` annotation lines.
pub fn render_comparison(rows: &[ComparisonRow], exact_minimum: f64) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["method", "best_energy", "evaluations", "wall_time_s"])?;
    for r in rows {
        w.write_record([
            r.method.name().to_string(),
            r.best_energy.to_string(),
            r.evaluations.to_string(),
            format!("{:.6}", r.wall_time_s),
        ])?;
    }
    let mut out = String::from_utf8(w.into_inner().map_err(|e| CliError::io("buffering comparison table", e.into_error()))?).expect("csv output is utf-8");
    out += &format!("# exact minimum: {exact_minimum}\n");
    for p in PUBLISHED_OPTIMIZER_ENERGIES {
        out += &format!("# published {}: {} (annotation, not a target)\n", p.label, p.value);
    }
    Ok(out)
}
