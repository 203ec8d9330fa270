//! Husimi functions, Wehrl and von Neumann entropies, and the measuring
//! channel of a coherent-state frame.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WehrlError};
use crate::fourier::GroupFourier;
use crate::frame::CoherentFrame;
use crate::group::{GroupDescriptor, PhaseSpacePoint};
use crate::state::{DensityMatrix, StateVector, Subsystem};

/// `Q` values below this contribute nothing to `−Q log Q`.
pub const ENTROPY_ZERO_THRESHOLD: f64 = 1e-15;
/// Eigenvalues below this are treated as zero in `S(ρ)`.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;
/// A state counts as coherent when `max_z Q(z) ≥ 1 − 1e-9`.
pub const COHERENCE_THRESHOLD: f64 = 1e-9;

/// `Q_ρ(z)` for every `z ∈ F`, indexed by point index.
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiTable {
    group: GroupDescriptor,
    values: Vec<f64>,
}

impl HusimiTable {
    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn haar_weight(&self) -> f64 {
        1.0 / self.group.order() as f64
    }

    pub fn get(&self, z: &PhaseSpacePoint) -> Result<f64> {
        self.group.check_point(z)?;
        Ok(self.values[self.group.point_index(z)])
    }

    /// `Σ_z w·Q(z)`, which is `Tr ρ`.
    pub fn mass(&self) -> f64 {
        self.haar_weight() * self.values.iter().sum::<f64>()
    }

    /// Largest value and the first point attaining it.
    pub fn max(&self) -> (PhaseSpacePoint, f64) {
        let (i, q) =
            self.values
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &q)| {
                    if q > best.1 {
                        (i, q)
                    } else {
                        best
                    }
                });
        (self.group.point_at(i), q)
    }

    /// `max_z Q(z) ≥ 1 − 1e-9`.
    pub fn is_coherent(&self) -> bool {
        self.max().1 >= 1.0 - COHERENCE_THRESHOLD
    }
}

fn check_dims(frame: &CoherentFrame, dim: usize) -> Result<()> {
    if dim != frame.dim() {
        return Err(WehrlError::DimensionMismatch {
            expected: frame.dim(),
            found: dim,
        });
    }
    Ok(())
}

/// `Q(z) = ⟨z|ρ|z⟩` by building every `|z⟩`; the `O(|G|⁴)` reference path.
pub fn husimi(frame: &CoherentFrame, rho: &DensityMatrix) -> Result<HusimiTable> {
    check_dims(frame, rho.dim())?;
    let values = frame
        .coherent_states()
        .map(|z| rho.expectation(z.amplitudes()).max(0.0))
        .collect();
    Ok(HusimiTable {
        group: frame.group().clone(),
        values,
    })
}

/// `⟨z|ψ⟩` for every `z`, by one group Fourier transform per `g`:
/// `⟨W(g,λ)φ|ψ⟩ = Σ_h conj(λ(h)) · conj(φ(h − g)) ψ(h)`.
pub(crate) fn frame_amplitudes(
    frame: &CoherentFrame,
    fourier: &GroupFourier,
    psi: &[Complex64],
) -> Vec<Complex64> {
    let n = frame.dim();
    let table = frame.table();
    let phi = frame.fiducial().amplitudes();
    let mut out = vec![Complex64::default(); n * n];
    for (g, row) in out.chunks_mut(n).enumerate() {
        for h in 0..n {
            row[h] = phi[table.sub(h, g)].conj() * psi[h];
        }
        fourier.forward(row);
    }
    out
}

/// `Σ_z c_z |z⟩`, the adjoint of [`frame_amplitudes`].
pub(crate) fn frame_synthesis(
    frame: &CoherentFrame,
    fourier: &GroupFourier,
    coeffs: &[Complex64],
) -> Vec<Complex64> {
    let n = frame.dim();
    let table = frame.table();
    let phi = frame.fiducial().amplitudes();
    let mut out = vec![Complex64::default(); n];
    let mut row = vec![Complex64::default(); n];
    for (g, c) in coeffs.chunks(n).enumerate() {
        row.copy_from_slice(c);
        fourier.inverse(&mut row);
        for h in 0..n {
            out[h] += row[h] * phi[table.sub(h, g)];
        }
    }
    out
}

/// `Q(g, λ) = |⟨W(g,λ)φ|ψ⟩|²` via multidimensional FFTs, `O(|G|² log |G|)`.
pub fn husimi_fast(frame: &CoherentFrame, psi: &StateVector) -> Result<HusimiTable> {
    check_dims(frame, psi.dim())?;
    let fourier = GroupFourier::new(frame.group());
    let values = frame_amplitudes(frame, &fourier, psi.amplitudes())
        .into_iter()
        .map(|a| a.norm_sqr())
        .collect();
    Ok(HusimiTable {
        group: frame.group().clone(),
        values,
    })
}

fn eta(q: f64) -> f64 {
    if q < ENTROPY_ZERO_THRESHOLD {
        0.0
    } else {
        -q * q.ln()
    }
}

/// `S^W = −Σ_z w·Q(z) log Q(z)` in nats.
pub fn wehrl_entropy(table: &HusimiTable) -> f64 {
    table.haar_weight() * table.values.iter().map(|&q| eta(q)).sum::<f64>()
}

/// Wehrl entropy of a pure state through the fast path.
pub fn wehrl_entropy_pure(frame: &CoherentFrame, psi: &StateVector) -> Result<f64> {
    husimi_fast(frame, psi).map(|t| wehrl_entropy(&t))
}

/// `−vol(K) Σ_{α ∈ F/K} Q(α) log Q(α)` with `vol(K) = 1`, evaluating `Q`
/// only at the `|G|` coset representatives.
pub fn wehrl_entropy_coset(frame: &CoherentFrame, rho: &DensityMatrix) -> Result<f64> {
    let k = frame
        .maximal_compact()
        .ok_or_else(|| WehrlError::NotVacuumFrame("coset formula requires vacuum frame".into()))?;
    check_dims(frame, rho.dim())?;
    let group = frame.group();
    let vol = k.order() as f64 * frame.haar_weight();
    let sum: f64 = k
        .cosets()
        .iter()
        .map(|alpha| {
            let state = frame.coherent_state_at(group.point_index(alpha));
            eta(rho.expectation(state.amplitudes()).max(0.0))
        })
        .sum();
    Ok(vol * sum)
}

/// Largest spread `max Q − min Q` within a coset of `F/K`.
pub fn coset_spread(frame: &CoherentFrame, table: &HusimiTable) -> Result<f64> {
    let k = frame.maximal_compact().ok_or_else(|| {
        WehrlError::NotVacuumFrame("coset constancy requires vacuum frame".into())
    })?;
    let (reps, labels) = k.coset_labels();
    let mut lo = vec![f64::INFINITY; reps.len()];
    let mut hi = vec![f64::NEG_INFINITY; reps.len()];
    for (&label, &q) in labels.iter().zip(&table.values) {
        lo[label] = lo[label].min(q);
        hi[label] = hi[label].max(q);
    }
    Ok(lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max))
}

/// `S(ρ) = −Tr ρ log ρ` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .map(|e| {
            if e < EIGENVALUE_CLAMP {
                0.0
            } else {
                -e * e.ln()
            }
        })
        .sum()
}

/// `Φ[ρ] = Σ_z w·Q(z)·|z⟩⟨z|`.
pub fn measurement_channel(frame: &CoherentFrame, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_dims(frame, rho.dim())?;
    let n = frame.dim();
    let w = frame.haar_weight();
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for state in frame.coherent_states() {
        let v = state.amplitudes();
        let q = rho.expectation(v) * w;
        for i in 0..n {
            let vi = v[i] * q;
            for j in 0..n {
                out[(i, j)] += vi * v[j].conj();
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// `S^W(ρ₁₂) − [S^W(ρ₁) + S^W(ρ₂) + S(ρ₁₂) − S(ρ₁) − S(ρ₂)]` for product
/// frames. Reported only: nothing here asserts its sign.
pub fn strong_subadditivity_gap(
    frame1: &CoherentFrame,
    frame2: &CoherentFrame,
    rho12: &DensityMatrix,
) -> Result<f64> {
    let joint = frame1.tensor_product(frame2)?;
    let dims = (frame1.dim(), frame2.dim());
    let rho1 = rho12.partial_trace(dims, Subsystem::Second)?;
    let rho2 = rho12.partial_trace(dims, Subsystem::First)?;
    let lhs = wehrl_entropy(&husimi(&joint, rho12)?);
    let rhs = wehrl_entropy(&husimi(frame1, &rho1)?)
        + wehrl_entropy(&husimi(frame2, &rho2)?)
        + von_neumann_entropy(rho12)
        - von_neumann_entropy(&rho1)
        - von_neumann_entropy(&rho2);
    Ok(lhs - rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    /// Converts a value in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub wehrl: f64,
    pub von_neumann: f64,
    pub gap: f64,
    pub log_base: LogBase,
}

pub fn entropy_report(
    frame: &CoherentFrame,
    rho: &DensityMatrix,
    log_base: LogBase,
) -> Result<EntropyReport> {
    let wehrl = wehrl_entropy(&husimi(frame, rho)?);
    let von_neumann = von_neumann_entropy(rho);
    Ok(EntropyReport {
        wehrl: log_base.from_nats(wehrl),
        von_neumann: log_base.from_nats(von_neumann),
        gap: log_base.from_nats(wehrl - von_neumann),
        log_base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(spec: &str) -> GroupDescriptor {
        GroupDescriptor::parse(spec).unwrap()
    }

    #[test]
    fn husimi_examples() {
        let z4 = g("Z4xZ2");
        for h in z4.all_subgroups() {
            let frame = CoherentFrame::vacuum(&h);
            let t = husimi(&frame, &DensityMatrix::maximally_mixed(8)).unwrap();
            assert!(t.values().iter().all(|q| (q - 1.0 / 8.0).abs() < 1e-15));
            let z0 = z4.parse_point("1,1;2,0").unwrap();
            let rho = frame.coherent_state(&z0).unwrap().projector();
            let t = husimi(&frame, &rho).unwrap();
            let k = frame.maximal_compact().unwrap();
            for z in z4.points() {
                let d = z4.point_sub(&z, &z0).unwrap();
                let expect = if k.contains(&d) { 1.0 } else { 0.0 };
                assert!((t.get(&z).unwrap() - expect).abs() < 1e-12);
            }
        }
        let z2 = g("Z2");
        let frame = CoherentFrame::vacuum(&z2.whole());
        let t = husimi(&frame, &StateVector::basis(2, 0).projector()).unwrap();
        assert!(t.values().iter().all(|q| (q - 0.5).abs() < 1e-15));
    }

    #[test]
    fn husimi_fast_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["Z2", "Z6", "Z4xZ2", "Z3xZ3"] {
            let group = g(spec);
            let n = group.order();
            let frames = [
                CoherentFrame::vacuum(&group.all_subgroups()[1]),
                CoherentFrame::new(&group, random_state(n, &mut rng)).unwrap(),
            ];
            for frame in &frames {
                for _ in 0..10 {
                    let psi = random_state(n, &mut rng);
                    let fast = husimi_fast(frame, &psi).unwrap();
                    let dense = husimi(frame, &psi.projector()).unwrap();
                    for (a, b) in fast.values().iter().zip(dense.values()) {
                        assert!((a - b).abs() <= 1e-11);
                    }
                    assert!((fast.mass() - 1.0).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn wehrl_examples() {
        let z2 = g("Z2");
        let frame = CoherentFrame::vacuum(&z2.whole());
        let coherent = frame
            .coherent_state(&z2.parse_point("0;1").unwrap())
            .unwrap();
        assert!(wehrl_entropy(&husimi(&frame, &coherent.projector()).unwrap()).abs() < 1e-12);
        let flat = wehrl_entropy(&husimi(&frame, &DensityMatrix::maximally_mixed(2)).unwrap());
        assert!((flat - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn coset_formula_requires_vacuum() {
        let z2 = g("Z2");
        let fid = StateVector::normalized(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)])
            .unwrap();
        let frame = CoherentFrame::new(&z2, fid).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            wehrl_entropy_coset(&frame, &rho),
            Err(WehrlError::NotVacuumFrame(_))
        ));
        let t = husimi(&frame, &rho).unwrap();
        assert!(coset_spread(&frame, &t).is_err());
    }

    #[test]
    fn coset_formula_matches_full_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in ["Z4", "Z6", "Z2xZ2"] {
            for h in g(spec).all_subgroups() {
                let frame = CoherentFrame::vacuum(&h);
                for _ in 0..10 {
                    let rho = random_density(frame.dim(), &mut rng);
                    let t = husimi(&frame, &rho).unwrap();
                    let full = wehrl_entropy(&t);
                    let coset = wehrl_entropy_coset(&frame, &rho).unwrap();
                    assert!((full - coset).abs() <= 1e-10);
                    assert!(coset_spread(&frame, &t).unwrap() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn von_neumann_examples() {
        let pure =
            StateVector::normalized(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)])
                .unwrap();
        assert!(von_neumann_entropy(&pure.projector()).abs() < 1e-12);
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed(5)) - 5f64.ln()).abs() < 1e-12
        );
        let mut m = DMatrix::<Complex64>::zeros(4, 4);
        m[(0, 0)] = Complex64::new(0.5, 0.0);
        m[(1, 1)] = Complex64::new(0.5, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        assert!((von_neumann_entropy(&rho) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn channel_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let group = g("Z4xZ2");
        let h = group.all_subgroups()[3].clone();
        let frame = CoherentFrame::vacuum(&h);
        for _ in 0..10 {
            let rho = random_density(8, &mut rng);
            let out = measurement_channel(&frame, &rho).unwrap();
            assert!((out.trace().re - 1.0).abs() < 1e-10);
            DensityMatrix::new(out.matrix().clone()).unwrap();
        }
        let flat = measurement_channel(&frame, &DensityMatrix::maximally_mixed(8)).unwrap();
        assert!((flat.matrix() - DensityMatrix::maximally_mixed(8).matrix())
            .iter()
            .all(|x| x.norm() < 1e-12));
        let z0 = group.parse_point("3,1;1,1").unwrap();
        let coherent = frame.coherent_state(&z0).unwrap().projector();
        let out = measurement_channel(&frame, &coherent).unwrap();
        assert!((out.matrix() - coherent.matrix())
            .iter()
            .all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn tensor_product_frames() {
        let g1 = g("Z2");
        let g2 = g("Z3");
        for h1 in g1.all_subgroups() {
            for h2 in g2.all_subgroups() {
                let f1 = CoherentFrame::vacuum(&h1);
                let f2 = CoherentFrame::vacuum(&h2);
                let joint = f1.tensor_product(&f2).unwrap();
                let expected = CoherentFrame::vacuum(&h1.product(&h2).unwrap());
                assert!((joint.fiducial().inner(expected.fiducial()).re - 1.0).abs() < 1e-15);
                assert!(joint.is_vacuum());
                let group = joint.group().clone();
                for z1 in g1.points() {
                    for z2 in g2.points() {
                        let mut gc: Vec<i64> = z1.g.coords().iter().map(|&x| x as i64).collect();
                        gc.extend(z2.g.coords().iter().map(|&x| x as i64));
                        let mut ac: Vec<i64> =
                            z1.lambda.coords().iter().map(|&x| x as i64).collect();
                        ac.extend(z2.lambda.coords().iter().map(|&x| x as i64));
                        let z = PhaseSpacePoint::new(
                            group.element(&gc).unwrap(),
                            group.character(&ac).unwrap(),
                        );
                        let lhs = joint.coherent_state(&z).unwrap();
                        let rhs = f1
                            .coherent_state(&z1)
                            .unwrap()
                            .tensor(&f2.coherent_state(&z2).unwrap());
                        assert!(lhs
                            .amplitudes()
                            .iter()
                            .zip(rhs.amplitudes())
                            .all(|(a, b)| (a - b).norm() < 1e-15));
                    }
                }
            }
        }
    }

    #[test]
    fn report_in_bits() {
        let z2 = g("Z2");
        let frame = CoherentFrame::vacuum(&z2.whole());
        let r = entropy_report(&frame, &DensityMatrix::maximally_mixed(2), LogBase::Two).unwrap();
        assert!((r.wehrl - 1.0).abs() < 1e-14);
        assert!((r.von_neumann - 1.0).abs() < 1e-12);
    }
}
