//! Pure states and density matrices on `ℂ^|G|`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WehrlError};

pub const NORM_TOLERANCE: f64 = 1e-12;
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// A unit vector, amplitudes indexed by group element in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps `amplitudes`, rejecting vectors whose norm is off by more than
    /// `1e-12`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(WehrlError::NotNormalized((norm - 1.0).abs()));
        }
        Ok(StateVector { amplitudes })
    }

    /// Scales `amplitudes` to unit norm. Fails on the zero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(WehrlError::NotNormalized(1.0));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(StateVector { amplitudes })
    }

    pub(crate) fn from_unit_unchecked(amplitudes: Vec<Complex64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::default(); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> DensityMatrix {
        let v = nalgebra::DVector::from_column_slice(&self.amplitudes);
        DensityMatrix {
            matrix: &v * v.adjoint(),
        }
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                out.push(a * b);
            }
        }
        StateVector { amplitudes: out }
    }
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Which tensor factor a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// A Hermitian, positive semidefinite, trace-one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (`1e-12`), positivity (eigenvalues `≥ −1e-10`)
    /// and unit trace (`1e-10`).
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(WehrlError::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let herm = (&matrix - matrix.adjoint())
            .iter()
            .fold(0.0f64, |m, x| m.max(x.norm()));
        if herm > HERMITIAN_TOLERANCE {
            return Err(WehrlError::NotHermitian(herm));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOLERANCE || trace.im.abs() > TRACE_TOLERANCE {
            return Err(WehrlError::BadTrace(trace.re));
        }
        let rho = DensityMatrix { matrix };
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOLERANCE {
            return Err(WehrlError::NotPositive(min));
        }
        Ok(rho)
    }

    /// Builds and validates a `dim × dim` matrix from row-major entries.
    pub fn from_row_slice(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(WehrlError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        DensityMatrix::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<Complex64>) -> Self {
        DensityMatrix { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: DMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Eigenvalues in ascending order, computed on the Hermitian part.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut eig: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        eig
    }

    /// `⟨v|ρ|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let n = self.dim();
        let mut acc = Complex64::default();
        for (i, vi) in v.iter().enumerate().take(n) {
            let row: Complex64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| self.matrix[(i, j)] * vj)
                .sum();
            acc += vi.conj() * row;
        }
        acc.re
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Traces out `removed` from a state on `ℂ^{d₁} ⊗ ℂ^{d₂}`.
    pub fn partial_trace(&self, dims: (usize, usize), removed: Subsystem) -> Result<DensityMatrix> {
        let (d1, d2) = dims;
        if d1 * d2 != self.dim() {
            return Err(WehrlError::DimensionMismatch {
                expected: self.dim(),
                found: d1 * d2,
            });
        }
        let m = &self.matrix;
        let out = match removed {
            Subsystem::Second => DMatrix::from_fn(d1, d1, |i, j| {
                (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()
            }),
            Subsystem::First => DMatrix::from_fn(d2, d2, |i, j| {
                (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()
            }),
        };
        Ok(DensityMatrix { matrix: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn state_validation() {
        assert!(StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(WehrlError::NotNormalized(_))
        ));
        let s = StateVector::normalized(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(StateVector::normalized(vec![c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn density_validation() {
        let good =
            DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.1), c(0.0, -0.1), c(0.5, 0.0)]);
        assert!(DensityMatrix::new(good).is_ok());
        let non_herm =
            DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(non_herm),
            Err(WehrlError::NotHermitian(_))
        ));
        let bad_trace =
            DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(WehrlError::BadTrace(_))
        ));
        let negative =
            DMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(WehrlError::NotPositive(_))
        ));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = StateVector::normalized(vec![c(1.0, 0.0), c(0.3, -0.4)])
            .unwrap()
            .projector();
        let b = DensityMatrix::maximally_mixed(3);
        let ab = a.tensor(&b);
        let back = ab.partial_trace((2, 3), Subsystem::Second).unwrap();
        assert!((back.matrix() - a.matrix())
            .iter()
            .all(|x| x.norm() < 1e-12));
        let other = ab.partial_trace((2, 3), Subsystem::First).unwrap();
        assert!((other.matrix() - b.matrix())
            .iter()
            .all(|x| x.norm() < 1e-12));
        assert!(ab.partial_trace((2, 2), Subsystem::First).is_err());
    }
}
