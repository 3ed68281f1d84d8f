use serde::Deserialize;

use crate::{CliError, Result};

const NELDER_MEAD: &str = include_str!("../data/nelder_mead_simulator.csv");
const COBYLA_HARDWARE: &str = include_str!("../data/cobyla_ibmqx2.csv");

/// One row of a published convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ReferenceRow {
    pub iteration: u32,
    pub theoretical: f64,
    pub experimental: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub name: &'static str,
    pub label: &'static str,
    pub rows: Vec<ReferenceRow>,
}

/// Bundled published tables, kept verbatim (including a repeated
/// iteration index in the Nelder-Mead table).
pub fn reference_table(name: &str) -> Result<ReferenceTable> {
    let (name, label, text) = match name {
        "nelder-mead" => ("nelder-mead", "published Nelder-Mead (simulator)", NELDER_MEAD),
        "cobyla-ibmqx2" => ("cobyla-ibmqx2", "published COBYLA (ibmqx2)", COBYLA_HARDWARE),
        other => {
            return Err(CliError::Usage(format!(
                "unknown reference table {other:?}; available: nelder-mead, cobyla-ibmqx2"
            )))
        }
    };
    let rows = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<ReferenceRow>, _>>()?;
    Ok(ReferenceTable { name, label, rows })
}
