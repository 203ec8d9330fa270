//! Random test states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::state::{DensityMatrix, StateVector};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector in `ℂ^dim`.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(s) = StateVector::normalized(v) {
            return s;
        }
    }
}

/// `G G† / Tr(G G†)` for a `dim × rank` complex Ginibre matrix `G`.
/// With `rank = dim` this samples the Hilbert–Schmidt measure.
pub fn random_density_with_rank(dim: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = DMatrix::from_fn(dim, rank.max(1), |_, _| gaussian(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let mut m = m / Complex64::new(tr, 0.0);
    // exact Hermitian symmetry
    for i in 0..dim {
        m[(i, i)].im = 0.0;
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
    }
    DensityMatrix::from_matrix_unchecked(m)
}

/// Hilbert–Schmidt random density matrix.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    random_density_with_rank(dim, dim, rng)
}
