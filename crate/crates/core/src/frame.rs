//! Coherent-state frames `{|z⟩ = W(z)|φ⟩ : z ∈ F}`, vacuum vectors and the
//! coset structure of vacuum frames.
//!
//! Each point of `F` carries weight `1/|G|`, so every frame resolves the
//! identity with constant 1 and a maximal compact subgroup `K` (which has
//! `|G|` points) has volume 1.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;

use crate::error::{Result, WehrlError};
use crate::group::{GroupDescriptor, PhaseSpacePoint, PhaseSubgroup, Subgroup};
use crate::state::{inner, l2_norm, StateVector};
use crate::weyl::{check_dense, cocycle, WeylTable};

/// Tolerance for accepting a fiducial as `K`-invariant.
pub const VACUUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
struct Vacuum {
    subgroup: Subgroup,
    compact: PhaseSubgroup,
}

#[derive(Debug, Clone)]
pub struct CoherentFrame {
    group: GroupDescriptor,
    fiducial: StateVector,
    vacuum: Option<Vacuum>,
    table: WeylTable,
}

impl CoherentFrame {
    /// A generalized frame for an arbitrary unit fiducial.
    pub fn new(group: &GroupDescriptor, fiducial: StateVector) -> Result<Self> {
        if fiducial.dim() != group.order() {
            return Err(WehrlError::DimensionMismatch {
                expected: group.order(),
                found: fiducial.dim(),
            });
        }
        Ok(CoherentFrame {
            group: group.clone(),
            fiducial,
            vacuum: None,
            table: WeylTable::new(group),
        })
    }

    /// The vacuum frame of `H`: fiducial `𝕀_H/√|H|`, invariant under
    /// `K = H × A(Ĝ, H)`.
    pub fn vacuum(h: &Subgroup) -> Self {
        let group = h.parent().clone();
        CoherentFrame {
            table: WeylTable::new(&group),
            fiducial: vacuum_vector(h),
            vacuum: Some(Vacuum {
                subgroup: h.clone(),
                compact: PhaseSubgroup::maximal_compact(h),
            }),
            group,
        }
    }

    /// A frame whose fiducial is claimed to be the vacuum of `H`; fails if
    /// it is not `K`-invariant.
    pub fn with_subgroup(h: &Subgroup, fiducial: StateVector) -> Result<Self> {
        let mut frame = CoherentFrame::new(h.parent(), fiducial)?;
        let compact = PhaseSubgroup::maximal_compact(h);
        let residual = invariance_residual(&compact, &frame.fiducial)?;
        if residual > VACUUM_TOLERANCE {
            return Err(WehrlError::NotVacuumFrame(format!(
                "fiducial moves under K by {residual:e}"
            )));
        }
        frame.vacuum = Some(Vacuum {
            subgroup: h.clone(),
            compact,
        });
        Ok(frame)
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn fiducial(&self) -> &StateVector {
        &self.fiducial
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// Number of frame vectors, `|F|`.
    pub fn len(&self) -> usize {
        self.group.phase_space_order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Weight of each point of `F`, `1/|G|`.
    pub fn haar_weight(&self) -> f64 {
        1.0 / self.group.order() as f64
    }

    pub fn is_vacuum(&self) -> bool {
        self.vacuum.is_some()
    }

    pub fn subgroup(&self) -> Option<&Subgroup> {
        self.vacuum.as_ref().map(|v| &v.subgroup)
    }

    pub fn maximal_compact(&self) -> Option<&PhaseSubgroup> {
        self.vacuum.as_ref().map(|v| &v.compact)
    }

    pub(crate) fn require_vacuum(&self, what: &str) -> Result<&PhaseSubgroup> {
        self.maximal_compact()
            .ok_or_else(|| WehrlError::NotVacuumFrame(format!("{what} requires vacuum frame")))
    }

    pub(crate) fn table(&self) -> &WeylTable {
        &self.table
    }

    /// `|z⟩ = W(z)|φ⟩`.
    pub fn coherent_state(&self, z: &PhaseSpacePoint) -> Result<StateVector> {
        self.group.check_point(z)?;
        Ok(self.coherent_state_at(self.group.point_index(z)))
    }

    pub fn coherent_state_at(&self, index: usize) -> StateVector {
        let mut out = vec![Complex64::default(); self.dim()];
        self.table
            .apply_into(index, self.fiducial.amplitudes(), &mut out);
        StateVector::from_unit_unchecked(out)
    }

    /// All frame vectors in point-index order.
    pub fn coherent_states(&self) -> impl Iterator<Item = StateVector> + '_ {
        (0..self.len()).map(move |i| self.coherent_state_at(i))
    }

    /// `‖Σ_z w |z⟩⟨z| − I‖_max`.
    pub fn resolution_residual(&self) -> f64 {
        let n = self.dim();
        let w = self.haar_weight();
        let mut sum = DMatrix::<Complex64>::zeros(n, n);
        for state in self.coherent_states() {
            let v = state.amplitudes();
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    sum[(i, j)] += vi * v[j].conj();
                }
            }
        }
        let mut max: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                max = max.max((sum[(i, j)] - target).norm());
            }
        }
        max
    }

    /// Product frame on `G₁ × G₂` with fiducial `φ₁ ⊗ φ₂`. Two vacuum
    /// frames give the vacuum frame of `H₁ × H₂`.
    pub fn tensor_product(&self, other: &CoherentFrame) -> Result<CoherentFrame> {
        match (self.subgroup(), other.subgroup()) {
            (Some(h1), Some(h2)) => {
                let h = h1.product(h2)?;
                CoherentFrame::with_subgroup(&h, self.fiducial.tensor(&other.fiducial))
            }
            _ => {
                let group = self.group.product(&other.group)?;
                CoherentFrame::new(&group, self.fiducial.tensor(&other.fiducial))
            }
        }
    }
}

/// `ψ[h] = 1/√|H|` on `H`, zero elsewhere.
pub fn vacuum_vector(h: &Subgroup) -> StateVector {
    let amp = Complex64::new(1.0 / (h.order() as f64).sqrt(), 0.0);
    let v = h
        .members()
        .iter()
        .map(|&m| if m { amp } else { Complex64::default() })
        .collect();
    StateVector::from_unit_unchecked(v)
}

/// `max_{u ∈ K} ‖W(u)ψ − ψ‖`.
pub fn invariance_residual(k: &PhaseSubgroup, psi: &StateVector) -> Result<f64> {
    let group = k.group();
    if psi.dim() != group.order() {
        return Err(WehrlError::DimensionMismatch {
            expected: group.order(),
            found: psi.dim(),
        });
    }
    let table = WeylTable::new(group);
    let mut out = vec![Complex64::default(); psi.dim()];
    let mut max: f64 = 0.0;
    for u in k.point_indices() {
        table.apply_into(u, psi.amplitudes(), &mut out);
        let diff: Vec<Complex64> = out
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| a - b)
            .collect();
        max = max.max(l2_norm(&diff));
    }
    Ok(max)
}

fn invariance_operator(k: &PhaseSubgroup) -> Result<DMatrix<Complex64>> {
    let group = k.group();
    let n = group.order();
    check_dense(n)?;
    let table = WeylTable::new(group);
    let mut m = DMatrix::<Complex64>::identity(n, n) * Complex64::new(k.order() as f64, 0.0);
    for u in k.point_indices() {
        let (g, a) = (u / n, u % n);
        for h in 0..n {
            m[(h, table.sub(h, g))] -= table.char_value(a, h);
        }
    }
    Ok(m)
}

fn null_space(m: DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    let n = m.nrows();
    let threshold = 1e-9 * n as f64;
    let svd = SVD::new(m, false, true);
    let v_t = svd.v_t.expect("requested V^H");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < threshold)
        .map(|(i, _)| v_t.row(i).iter().map(|x| x.conj()).collect())
        .collect()
}

/// Dimension of `{ψ : W(u)ψ = ψ ∀u ∈ K}`, the null space of
/// `Σ_{u∈K} (I − W(u))`.
pub fn invariant_subspace_dim(k: &PhaseSubgroup) -> Result<usize> {
    Ok(null_space(invariance_operator(k)?).len())
}

/// A unit `K`-invariant vector found by SVD, independent of the closed form
/// in [`vacuum_vector`]. Returns the first null vector when the invariant
/// subspace is larger than one dimension.
pub fn invariant_vector(k: &PhaseSubgroup) -> Result<StateVector> {
    let basis = null_space(invariance_operator(k)?);
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| WehrlError::NotVacuumFrame("K has no invariant vector".into()))?;
    StateVector::normalized(v)
}

/// The table `|⟨z|z'⟩|` over `F × F`, indexed by point index.
pub fn overlap_matrix(frame: &CoherentFrame) -> Result<DMatrix<f64>> {
    let len = frame.len();
    check_dense(len)?;
    let states: Vec<StateVector> = frame.coherent_states().collect();
    Ok(DMatrix::from_fn(len, len, |i, j| {
        inner(states[i].amplitudes(), states[j].amplitudes()).norm()
    }))
}

/// The vectors `|α⟩` for the least representative `α` of each coset in
/// `F/K`; an orthonormal basis for vacuum frames.
pub fn coset_basis(frame: &CoherentFrame) -> Result<Vec<(PhaseSpacePoint, StateVector)>> {
    let k = frame.require_vacuum("coset basis")?;
    let residual = invariance_residual(k, frame.fiducial())?;
    if residual > VACUUM_TOLERANCE {
        return Err(WehrlError::NotVacuumFrame(format!(
            "fiducial moves under K by {residual:e}"
        )));
    }
    let group = frame.group();
    Ok(k.cosets()
        .into_iter()
        .map(|alpha| {
            let state = frame.coherent_state_at(group.point_index(&alpha));
            (alpha, state)
        })
        .collect())
}

/// Some `u ∈ K` with `ω(z, u) ≠ 1`, which exists exactly when `z ∉ K`.
pub fn separating_point(k: &PhaseSubgroup, z: &PhaseSpacePoint) -> Result<Option<PhaseSpacePoint>> {
    let group = k.group();
    for u in k.elements() {
        if !cocycle(group, z, &u)?.is_one() {
            return Ok(Some(u));
        }
    }
    Ok(None)
}
