//! CSV writers. Values carry 17 significant digits so every `f64`
//! re-parses bit-exactly; lines end in `\n`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use yeefdtd::field::Field2;
use yeefdtd::solver1d::Snapshot1D;
use yeefdtd::solver3d::Plane;

use crate::error::RunError;

pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// `step,<name>` rows, one per completed step.
pub fn probe_csv(name: &str, values: &[f64]) -> String {
    let mut s = format!("step,{name}\n");
    for (n, v) in values.iter().enumerate() {
        let _ = writeln!(s, "{n},{}", fmt_value(*v));
    }
    s
}

/// `a,b,value` rows in row-major order; an empty field gives the header only.
pub fn field_csv(columns: [&str; 3], f: &Field2) -> String {
    let (ni, nj) = f.shape();
    let mut s = columns.join(",");
    s.push('\n');
    for i in 0..ni {
        for j in 0..nj {
            let _ = writeln!(s, "{i},{j},{}", fmt_value(f.get(i, j)));
        }
    }
    s
}

pub fn snapshot_1d_csv(snap: &Snapshot1D) -> String {
    let mut s = String::from("step,k,ex,hy\n");
    for (k, (e, h)) in snap.ex.iter().zip(&snap.hy).enumerate() {
        let _ = writeln!(s, "{},{k},{},{}", snap.step, fmt_value(*e), fmt_value(*h));
    }
    s
}

pub fn slice_axes(plane: Plane) -> [&'static str; 2] {
    match plane {
        Plane::Xy => ["i", "j"],
        Plane::Xz => ["i", "k"],
        Plane::Yz => ["j", "k"],
    }
}

/// Collects written files relative to the output directory.
pub struct OutDir {
    root: PathBuf,
    pub files: Vec<String>,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, RunError> {
        fs::create_dir_all(root).map_err(|source| RunError::Io {
            path: root.to_path_buf(),
            source,
        })?;
        Ok(OutDir {
            root: root.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), RunError> {
        let path = self.root.join(name);
        fs::write(&path, contents).map_err(|source| RunError::Io { path, source })?;
        self.files.push(name.to_string());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip_bit_exactly() {
        for v in [0.1, -1.0 / 3.0, 1e-300, 5e-324, f64::MAX, 0.0, -0.0] {
            let s = fmt_value(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt_value(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn field_rows_and_header() {
        let mut f = Field2::zeros(2, 2);
        f.set(1, 0, 0.5);
        let s = field_csv(["i", "j", "ez"], &f);
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "i,j,ez");
        assert_eq!(lines[3], "1,0,5.0000000000000000e-1");
        assert!(!s.contains('\r'));
        assert_eq!(
            field_csv(["i", "j", "ez"], &Field2::zeros(0, 0)),
            "i,j,ez\n"
        );
    }

    #[test]
    fn probe_rows() {
        assert_eq!(
            probe_csv("ex", &[1.0, -2.0]),
            "step,ex\n0,1.0000000000000000e0\n1,-2.0000000000000000e0\n"
        );
    }
}
