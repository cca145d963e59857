//! CSV export. Every float is written with 17 significant digits so that it
//! reads back to the same double.

use std::path::Path;

use cnnw_core::solver::{ConvergenceRow, RunOutput};
use cnnw_core::spectral::SpectralCurve;

use crate::error::CliError;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn write_csv(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(CliError::io(path))
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_owned(),
        source: e.into(),
    }
}

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// One row per solution point: coordinates, cell, local node, primitive
/// variables and the integer scheme tag of the cell.
pub fn write_field(path: &Path, out: &RunOutput) -> Result<(), CliError> {
    let two_d = out.mesh.dim == 2;
    let npc = out.mesh.nodes_per_cell();
    let nv = out.n_vars();
    let mut header = strings(if two_d { &["x", "y"] } else { &["x"] });
    header.extend(strings(&["cell", "node"]));
    header.extend(strings(&out.variables));
    header.push("scheme".into());
    let pos = out.mesh.positions();
    let rows = pos.iter().enumerate().map(|(i, &(x, y))| {
        let mut r = vec![num(x)];
        if two_d {
            r.push(num(y));
        }
        r.push((i / npc).to_string());
        r.push((i % npc).to_string());
        r.extend(out.primitive[i * nv..(i + 1) * nv].iter().map(|&v| num(v)));
        r.push(out.tags[i / npc].tag().to_string());
        r
    });
    write_csv(path, &header, rows)
}

pub fn write_norms(path: &Path, out: &RunOutput) -> Result<bool, CliError> {
    let Some(e) = out.errors else { return Ok(false) };
    let row = vec![num(e.l1), num(e.l2), num(e.linf)];
    write_csv(path, &strings(&["l1", "l2", "linf"]), std::iter::once(row))?;
    Ok(true)
}

pub fn write_conservation(path: &Path, out: &RunOutput) -> Result<bool, CliError> {
    if !out.conservation.applicable {
        return Ok(false);
    }
    let rows = out
        .conservation
        .samples
        .iter()
        .map(|s| vec![num(s.t), num(s.integral), num(s.relative)]);
    write_csv(path, &strings(&["t", "integral", "relative"]), rows)?;
    Ok(true)
}

pub fn write_troubled(path: &Path, out: &RunOutput) -> Result<(), CliError> {
    let rows = out
        .troubled
        .iter()
        .map(|s| vec![s.step.to_string(), num(s.t), s.count.to_string()]);
    write_csv(path, &strings(&["step", "t", "troubled"]), rows)
}

pub fn write_convergence(path: &Path, rows: &[ConvergenceRow]) -> Result<(), CliError> {
    let header = strings(&["dofs", "l2", "linf", "order_l2", "order_linf"]);
    write_csv(path, &header, rows.iter().map(convergence_record))
}

pub fn convergence_record(r: &ConvergenceRow) -> Vec<String> {
    vec![r.dofs.to_string(), num(r.l2), num(r.linf), opt(r.order_l2), opt(r.order_linf)]
}

/// `(group, φ, Re λ, Im λ, Im λ_exact)` for every group and φ sample.
pub fn write_spectra(path: &Path, curve: &SpectralCurve) -> Result<(), CliError> {
    let header = strings(&["group", "phi", "re", "im", "exact_im"]);
    let rows = curve.samples.iter().map(|s| {
        vec![
            s.group.to_string(),
            num(s.phi),
            num(s.lambda.re),
            num(s.lambda.im),
            num(s.exact_im),
        ]
    });
    write_csv(path, &header, rows)
}
