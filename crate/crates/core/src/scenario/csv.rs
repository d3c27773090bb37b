//! Trajectory CSV: one row per sample, 17 significant digits, `\n` endings.

use crate::model::PhaseState;
use crate::trajectory::Trajectory;

use super::ScenarioError;

pub const HEADER: &str = "t,x,y,px,py,H,Lz,Q,Ix,Iy,Iz";
const COLUMNS: [&str; 11] = ["t", "x", "y", "px", "py", "H", "Lz", "Q", "Ix", "Iy", "Iz"];

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub state: PhaseState,
    pub h: f64,
    pub lz: f64,
    pub q: f64,
    /// NaN where the invariant vector is undefined.
    pub ix: f64,
    pub iy: f64,
    pub iz: f64,
}

fn writer() -> ::csv::Writer<Vec<u8>> {
    ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: ::csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv")
}

/// Writes `header` and one row per entry of `rows`, each value as `{:.16e}`.
pub fn table_csv<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [f64; N]>,
) -> String {
    let mut w = writer();
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:.16e}")))
            .expect("in-memory csv");
    }
    finish(w)
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    table_csv(
        COLUMNS,
        traj.samples().iter().map(|sample| {
            let s = &sample.state;
            let snap = &sample.snapshot;
            let (ix, iy, iz) = match snap.invariant {
                Some(i) => (i.ix, i.iy, i.iz),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            [
                s.t, s.x, s.y, s.px, s.py, snap.h, snap.lz, snap.q, ix, iy, iz,
            ]
        }),
    )
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, ScenarioError> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| ScenarioError::Parse(e.to_string()))?;
    if !header.iter().eq(COLUMNS) {
        return Err(ScenarioError::Parse(format!(
            "expected header {HEADER:?}, found {header:?}"
        )));
    }
    reader
        .records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(|e| ScenarioError::Parse(format!("row {}: {e}", i + 1)))?;
            let v = rec
                .iter()
                .map(|f| f.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ScenarioError::Parse(format!("row {}: {e}", i + 1)))?;
            Ok(CsvRow {
                state: PhaseState::new(v[1], v[2], v[3], v[4], v[0]),
                h: v[5],
                lz: v[6],
                q: v[7],
                ix: v[8],
                iy: v[9],
                iz: v[10],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PotentialParams;

    #[test]
    fn header_and_nan_columns() {
        let p = PotentialParams::new(1.0, 1.0, 0.0).unwrap();
        let traj =
            Trajectory::from_states(p, &[PhaseState::new(1.0, 0.5, 0.0, 0.25, 0.0)]).unwrap();
        let text = trajectory_csv(&traj);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(HEADER));
        let row = lines.next().unwrap();
        assert!(row.ends_with(",NaN,NaN,NaN"));
        assert!(row.starts_with("0.0000000000000000e0,1.0000000000000000e0,5.0000000000000000e-1,"));
        assert!(!text.contains('\r'));
        let parsed = parse_csv(&text).unwrap();
        assert!(parsed[0].ix.is_nan());
        assert_eq!(parsed[0].state.y, 0.5);
    }

    #[test]
    fn rejects_bad_header_and_rows() {
        assert!(parse_csv("t,x\n").is_err());
        assert!(parse_csv(&format!("{HEADER}\n1,2,3\n")).is_err());
        assert!(parse_csv(&format!("{HEADER}\n1,2,3,4,5,6,7,8,9,10,abc\n")).is_err());
    }
}
