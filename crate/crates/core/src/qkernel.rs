//! Fidelity kernel `k(x, x') = |⟨φ(x')|φ(x)⟩|²` of the ZZ feature map.

use std::io::Write;

use crate::error::{Error, Result};
use crate::featmap::{DataMap, FeatureMap, FeatureMapSpec};
use crate::statevec::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    /// Row-major, `row_ids.len() × col_ids.len()`.
    pub values: Vec<Vec<f64>>,
}

impl KernelMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.row_ids.len(), self.col_ids.len())
    }

    /// CSV with a `sample_id` header cell followed by column ids; every value
    /// printed with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let header = std::iter::once("sample_id").chain(self.col_ids.iter().map(String::as_str));
        w.write_record(header)?;
        for (id, row) in self.row_ids.iter().zip(&self.values) {
            let cells = std::iter::once(id.clone()).chain(row.iter().map(|v| format!("{v:.16e}")));
            w.write_record(cells)?;
        }
        w.flush().map_err(|e| Error::io("<kernel csv>", e))?;
        Ok(())
    }
}

/// `|⟨a|b⟩|²`, clamped into `[0, 1]` against rounding.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

pub fn kernel_entry(
    x: &[f64],
    x_prime: &[f64],
    spec: &FeatureMapSpec,
    data_map: DataMap,
) -> Result<f64> {
    let fm = FeatureMap::with_data_map(*spec, data_map)?;
    fidelity(&fm.encode(x_prime)?, &fm.encode(x)?)
}

/// Kernel between every row of `a` and every row of `b`. Each sample is
/// encoded once.
pub fn kernel_matrix(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    spec: &FeatureMapSpec,
    data_map: DataMap,
) -> Result<KernelMatrix> {
    let ids = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    kernel_matrix_with_ids(a, &ids(a.len()), b, &ids(b.len()), spec, data_map)
}

pub fn kernel_matrix_with_ids(
    a: &[Vec<f64>],
    a_ids: &[String],
    b: &[Vec<f64>],
    b_ids: &[String],
    spec: &FeatureMapSpec,
    data_map: DataMap,
) -> Result<KernelMatrix> {
    if a.len() != a_ids.len() || b.len() != b_ids.len() {
        return Err(Error::Data(
            "kernel sample ids do not match sample count".into(),
        ));
    }
    let fm = FeatureMap::with_data_map(*spec, data_map)?;
    let sa: Vec<StateVector> = a.iter().map(|x| fm.encode(x)).collect::<Result<_>>()?;
    let sb: Vec<StateVector> = b.iter().map(|x| fm.encode(x)).collect::<Result<_>>()?;
    let values = sa
        .iter()
        .map(|u| {
            sb.iter()
                .map(|v| fidelity(v, u))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(KernelMatrix {
        row_ids: a_ids.to_vec(),
        col_ids: b_ids.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::featmap::{build_feature_map, default_data_map, Entanglement};
    use crate::statevec::run_circuit;
    use std::f64::consts::PI;

    fn spec(n: usize) -> FeatureMapSpec {
        FeatureMapSpec::new(n, 1, Entanglement::Full)
    }

    #[test]
    fn self_overlap_is_one() {
        let x = [0.1, 0.5, 0.9];
        assert!((kernel_entry(&x, &x, &spec(3), default_data_map()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_single_qubit_states() {
        let c = build_feature_map(&spec(1)).unwrap();
        let a = run_circuit(&c, &[0.0], &[]).unwrap();
        let b = run_circuit(&c, &[PI / 2.0], &[]).unwrap();
        assert!(fidelity(&a, &b).unwrap() < 1e-15);
    }

    #[test]
    fn symmetric_entries() {
        let (x, y) = ([0.2, 0.4, 0.8], [0.9, 0.1, 0.3]);
        let m = default_data_map();
        let a = kernel_entry(&x, &y, &spec(3), m).unwrap();
        let b = kernel_entry(&y, &x, &spec(3), m).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn shapes() {
        let a = vec![vec![0.1, 0.2], vec![0.3, 0.4], vec![0.5, 0.6]];
        let b = vec![vec![0.7, 0.8], vec![0.9, 1.0]];
        let k = kernel_matrix(&a, &b, &spec(2), default_data_map()).unwrap();
        assert_eq!(k.shape(), (3, 2));
        let one = kernel_matrix(&a[..1], &a[..1], &spec(2), default_data_map()).unwrap();
        assert!((one.values[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let a = vec![vec![0.1, 0.2], vec![0.3, 0.4]];
        let k = kernel_matrix(&a, &a, &spec(2), default_data_map()).unwrap();
        let mut buf = Vec::new();
        k.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "sample_id,0,1");
        assert!(
            lines[1].starts_with("0,1.0000000000000000e0,"),
            "{}",
            lines[1]
        );
        assert_eq!(lines.len(), 3);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(kernel_entry(&[0.1], &[0.1, 0.2], &spec(2), default_data_map()).is_err());
    }
}
