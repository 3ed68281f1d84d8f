use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hminus_core::hminus::reference_energies;
use hminus_core::OptimizerTrace;

use crate::{CliError, ReferenceTable, Result, RunOutcome};

/// `iteration,energy_hartree`, one row per trace record.
pub fn write_trace_csv(path: &Path, trace: &OptimizerTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["iteration", "energy_hartree"])?;
    for r in &trace.records {
        w.write_record([r.iteration.to_string(), r.best_energy.to_string()])?;
    }
    w.flush().map_err(|e| CliError::io(path.display().to_string(), e))?;
    Ok(())
}

/// Writes `trace.csv` and `summary.json` into `dir`, plus
/// `convergence.svg` when `plot` is set.
pub fn write_outputs(dir: &Path, outcome: &RunOutcome, plot: bool, overlay: Option<&ReferenceTable>) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
    write_trace_csv(&dir.join("trace.csv"), outcome.best_trace())?;
    let json = serde_json::to_string_pretty(&outcome.summary)?;
    let path = dir.join("summary.json");
    fs::write(&path, json + "\n").map_err(|e| CliError::io(path.display().to_string(), e))?;
    if plot {
        let svg = render_svg(outcome.best_trace(), outcome.summary.exact_minimum, overlay);
        let path = dir.join("convergence.svg");
        fs::write(&path, svg).map_err(|e| CliError::io(path.display().to_string(), e))?;
    }
    Ok(())
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

struct Frame {
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, it: f64) -> f64 {
        let span = (self.x_max - 1.0).max(1.0);
        LEFT + (it - 1.0) / span * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, e: f64) -> f64 {
        TOP + (self.y_max - e) / (self.y_max - self.y_min) * (HEIGHT - TOP - BOTTOM)
    }
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, frame: &Frame, style: &str) -> String {
    let pts: Vec<String> = points
        .map(|(x, y)| format!("{:.2},{:.2}", frame.x(x), frame.y(y)))
        .collect();
    format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", pts.join(" "))
}

/// Energy-versus-iteration chart with the literature reference lines.
pub fn render_svg(trace: &OptimizerTrace, exact_minimum: f64, overlay: Option<&ReferenceTable>) -> String {
    let refs = reference_energies();
    let lines = [
        (refs.theoretical_line, "theoretical -0.52952", "#c0392b"),
        (refs.hydrogen_atom, "hydrogen -0.5", "#7f8c8d"),
        (refs.hartree_fock_no_correlation, "no correlation -0.375", "#7f8c8d"),
        (exact_minimum, "exact minimum", "#27ae60"),
    ];
    let mut values: Vec<f64> = trace.records.iter().map(|r| r.best_energy).collect();
    values.extend(lines.iter().map(|l| l.0));
    let mut x_max = trace.records.len() as f64;
    if let Some(t) = overlay {
        values.extend(t.rows.iter().map(|r| r.experimental));
        x_max = x_max.max(t.rows.iter().map(|r| r.iteration as f64).fold(0.0, f64::max));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pad = ((hi - lo) * 0.05).max(1e-3);
    let frame = Frame {
        x_max: x_max.max(1.0),
        y_min: lo - pad,
        y_max: hi + pad,
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(s, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>", x1 - x0, y1 - y0);
    for k in 0..=5 {
        let e = frame.y_min + (frame.y_max - frame.y_min) * k as f64 / 5.0;
        let y = frame.y(e);
        let _ = writeln!(s, "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{e:.3}</text>", x0 - 6.0, y + 4.0);
    }
    for k in 0..=5 {
        let it = 1.0 + (frame.x_max - 1.0) * k as f64 / 5.0;
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{}</text>", frame.x(it), y1 + 18.0, it.round());
    }
    let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">iteration</text>", (x0 + x1) / 2.0, HEIGHT - 8.0);
    let _ = writeln!(
        s,
        "<text transform=\"translate(16,{:.2}) rotate(-90)\" text-anchor=\"middle\">energy (Hartree)</text>",
        (y0 + y1) / 2.0
    );
    for (e, label, color) in lines {
        let y = frame.y(e);
        let _ = writeln!(s, "<line x1=\"{x0}\" y1=\"{y:.2}\" x2=\"{x1}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-dasharray=\"6 4\"/>");
        let _ = writeln!(s, "<text x=\"{}\" y=\"{:.2}\" fill=\"{color}\">{label}</text>", x1 + 6.0, y + 4.0);
    }
    if let Some(t) = overlay {
        s += &polyline(
            t.rows.iter().map(|r| (r.iteration as f64, r.experimental)),
            &frame,
            "stroke=\"#e67e22\" stroke-width=\"1.2\"",
        );
        let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" fill=\"#e67e22\">{}</text>", x1 + 6.0, y1, t.label);
    }
    s += &polyline(
        trace.records.iter().map(|r| (r.iteration as f64, r.best_energy)),
        &frame,
        "stroke=\"#2c3e50\" stroke-width=\"1.8\"",
    );
    s += "</svg>\n";
    s
}
