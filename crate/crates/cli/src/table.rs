//! Trajectory CSV: header `t,<coordinates>,<invariants>[,<extra>]`, values in
//! shortest round-trip decimal form, LF line endings.

use std::path::Path;

use rikitake_core::integrate::Trajectory;

use crate::error::{CliError, CliResult};

/// An extra column appended after the invariants.
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

pub fn header(traj: &Trajectory, extra: &[Column]) -> Vec<String> {
    std::iter::once("t".to_string())
        .chain(traj.coordinate_names.iter().cloned())
        .chain(traj.invariant_names.iter().cloned())
        .chain(extra.iter().map(|c| c.name.clone()))
        .collect()
}

/// One row per stored sample.
pub fn rows(traj: &Trajectory, extra: &[Column]) -> Vec<Vec<f64>> {
    (0..traj.len())
        .map(|i| {
            let mut row = vec![traj.times[i]];
            row.extend(&traj.states[i]);
            row.extend(&traj.invariants[i]);
            row.extend(extra.iter().map(|c| c.values[i]));
            row
        })
        .collect()
}

pub fn write(path: &Path, header: &[String], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectory(path: &Path, traj: &Trajectory, extra: &[Column]) -> CliResult<()> {
    write(path, &header(traj, extra), &rows(traj, extra))
}

pub fn read(path: &Path) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| CliError::Runtime(format!("{}: `{s}`: {e}", path.display())))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![
            vec![0.1 + 0.2, -1e-300, 1.0 / 3.0, 6.02e23],
            vec![f64::MIN_POSITIVE, -0.0, 2.5, 1e-7],
        ];
        let header: Vec<String> = ["t", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        write(&path, &header, &rows).unwrap();
        let (h, back) = read(&path).unwrap();
        assert_eq!(h, header);
        for (a, b) in rows.iter().flatten().zip(back.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.starts_with("t,x,y,z\n"));
    }
}
