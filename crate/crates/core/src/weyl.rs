//! The cocycle `ω`, the Heisenberg group law and Weyl operators in the
//! natural representation on `ℂ^|G| ≅ L²(G)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, WehrlError};
use crate::group::{GroupDescriptor, PhaseSpacePoint};
use crate::phase::Phase;
use crate::random::random_state;

/// Default cap on the dimension of dense matrices built by oracle paths.
pub const DEFAULT_DENSE_LIMIT: usize = 256;

/// The dense-matrix cap, overridable through `WEHRL_DENSE_LIMIT`.
pub fn dense_limit() -> usize {
    std::env::var("WEHRL_DENSE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_LIMIT)
}

pub(crate) fn check_dense(dim: usize) -> Result<()> {
    let limit = dense_limit();
    if dim > limit {
        return Err(WehrlError::DenseLimitExceeded { dim, limit });
    }
    Ok(())
}

/// `ω(z, z') = λ(g')·conj(λ'(g))` as an exact phase.
pub fn cocycle(group: &GroupDescriptor, z: &PhaseSpacePoint, w: &PhaseSpacePoint) -> Result<Phase> {
    Ok(group.char_phase(&z.lambda, &w.g)? - group.char_phase(&w.lambda, &z.g)?)
}

pub fn cocycle_value(
    group: &GroupDescriptor,
    z: &PhaseSpacePoint,
    w: &PhaseSpacePoint,
) -> Result<Complex64> {
    cocycle(group, z, w).map(Phase::to_complex)
}

/// Cocycle on point indices, as a numerator over `group.exponent()`.
pub(crate) fn cocycle_index(group: &GroupDescriptor, z: usize, w: usize) -> usize {
    let n = group.order();
    let e = group.exponent();
    let (zg, za) = (z / n, z % n);
    let (wg, wa) = (w / n, w % n);
    (group.pairing_index(za, wg) + e - group.pairing_index(wa, zg)) % e
}

/// An element `(z, t)` of `Heis(G) = F × 𝕋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub z: PhaseSpacePoint,
    pub t: Phase,
}

impl HeisenbergElement {
    pub fn identity(group: &GroupDescriptor) -> Self {
        HeisenbergElement {
            z: group.origin(),
            t: Phase::ONE,
        }
    }
}

/// `(z, t)(z', t') = (z + z', t·t'·ω(z, z'))`.
pub fn heis_mul(
    group: &GroupDescriptor,
    a: &HeisenbergElement,
    b: &HeisenbergElement,
) -> Result<HeisenbergElement> {
    Ok(HeisenbergElement {
        z: group.point_add(&a.z, &b.z)?,
        t: a.t + b.t + cocycle(group, &a.z, &b.z)?,
    })
}

/// `W(g, λ)` in structured form `D_λ · P_g`: `(W f)(h) = λ(h)·f(h − g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOperator {
    z: PhaseSpacePoint,
    diagonal: Vec<Complex64>,
    source: Vec<usize>,
}

impl WeylOperator {
    pub fn new(group: &GroupDescriptor, z: &PhaseSpacePoint) -> Result<Self> {
        group.check_point(z)?;
        let roots = group.roots_of_unity();
        let g = group.index_of(&z.g);
        let a = group.character_index(&z.lambda);
        let n = group.order();
        Ok(WeylOperator {
            z: z.clone(),
            diagonal: (0..n).map(|h| roots[group.pairing_index(a, h)]).collect(),
            source: (0..n).map(|h| group.sub_index(h, g)).collect(),
        })
    }

    pub fn point(&self) -> &PhaseSpacePoint {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.source.len()
    }

    pub fn apply(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        if f.len() != self.dim() {
            return Err(WehrlError::DimensionMismatch {
                expected: self.dim(),
                found: f.len(),
            });
        }
        Ok(self
            .diagonal
            .iter()
            .zip(&self.source)
            .map(|(d, &s)| d * f[s])
            .collect())
    }

    pub fn dense(&self) -> Result<DMatrix<Complex64>> {
        check_dense(self.dim())?;
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (h, (&d, &s)) in self.diagonal.iter().zip(&self.source).enumerate() {
            m[(h, s)] = d;
        }
        Ok(m)
    }
}

/// `(W(z) f)(h) = λ(h)·f(h − g)` in `O(|G|)`.
pub fn weyl_apply(
    group: &GroupDescriptor,
    z: &PhaseSpacePoint,
    f: &[Complex64],
) -> Result<Vec<Complex64>> {
    if f.len() != group.order() {
        return Err(WehrlError::DimensionMismatch {
            expected: group.order(),
            found: f.len(),
        });
    }
    WeylOperator::new(group, z)?.apply(f)
}

/// Dense matrix of `W(z)` with `M[h, h − g] = λ(h)`.
pub fn weyl_dense(group: &GroupDescriptor, z: &PhaseSpacePoint) -> Result<DMatrix<Complex64>> {
    check_dense(group.order())?;
    WeylOperator::new(group, z)?.dense()
}

/// Precomputed Weyl action on indices, shared by the hot paths.
#[derive(Debug, Clone)]
pub(crate) struct WeylTable {
    pub roots: Vec<Complex64>,
    order: usize,
    pairing: Vec<u32>,
    sub: Vec<u32>,
}

impl WeylTable {
    pub fn new(group: &GroupDescriptor) -> Self {
        let n = group.order();
        let mut pairing = Vec::with_capacity(n * n);
        let mut sub = Vec::with_capacity(n * n);
        for a in 0..n {
            for h in 0..n {
                pairing.push(group.pairing_index(a, h) as u32);
                sub.push(group.sub_index(a, h) as u32);
            }
        }
        WeylTable {
            roots: group.roots_of_unity(),
            order: n,
            pairing,
            sub,
        }
    }

    /// `λ_a(h)`.
    #[inline]
    pub fn char_value(&self, a: usize, h: usize) -> Complex64 {
        self.roots[self.pairing[a * self.order + h] as usize]
    }

    /// Index of `h − g`.
    #[inline]
    pub fn sub(&self, h: usize, g: usize) -> usize {
        self.sub[h * self.order + g] as usize
    }

    /// Writes `W(z) f` into `out` for the point with index `z`.
    pub fn apply_into(&self, z: usize, f: &[Complex64], out: &mut [Complex64]) {
        let (g, a) = (z / self.order, z % self.order);
        for h in 0..self.order {
            out[h] = self.char_value(a, h) * f[self.sub(h, g)];
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CcrReport {
    pub group: String,
    pub pairs_checked: usize,
    pub exhaustive: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub const CCR_TOLERANCE: f64 = 1e-12;
const CCR_EXHAUSTIVE_LIMIT: usize = 256;
const CCR_RANDOM_PAIRS: usize = 10_000;

/// Checks `W(z)W(z') f = ω(z, z')·W(z')W(z) f` on a random unit vector,
/// over all pairs when `|F| ≤ 256` and 10⁴ random pairs otherwise.
pub fn verify_ccr(group: &GroupDescriptor, seed: u64) -> CcrReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = WeylTable::new(group);
    let n = group.order();
    let f_count = group.phase_space_order();
    let f = random_state(n, &mut rng);
    let f = f.amplitudes();
    let exhaustive = f_count <= CCR_EXHAUSTIVE_LIMIT;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..f_count)
            .flat_map(|z| (0..f_count).map(move |w| (z, w)))
            .collect()
    } else {
        (0..CCR_RANDOM_PAIRS)
            .map(|_| (rng.random_range(0..f_count), rng.random_range(0..f_count)))
            .collect()
    };
    let mut t1 = vec![Complex64::default(); n];
    let mut lhs = vec![Complex64::default(); n];
    let mut t2 = vec![Complex64::default(); n];
    let mut rhs = vec![Complex64::default(); n];
    let mut max_residual: f64 = 0.0;
    for &(z, w) in &pairs {
        table.apply_into(w, f, &mut t1);
        table.apply_into(z, &t1, &mut lhs);
        table.apply_into(z, f, &mut t2);
        table.apply_into(w, &t2, &mut rhs);
        let omega = table.roots[cocycle_index(group, z, w)];
        for (l, r) in lhs.iter().zip(&rhs) {
            max_residual = max_residual.max((l - omega * r).norm());
        }
    }
    CcrReport {
        group: group.to_string(),
        pairs_checked: pairs.len(),
        exhaustive,
        max_residual,
        tolerance: CCR_TOLERANCE,
        passed: max_residual <= CCR_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PhaseSubgroup;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2() -> GroupDescriptor {
        GroupDescriptor::parse("Z2").unwrap()
    }

    #[test]
    fn cocycle_examples() {
        let g = z2();
        for z in g.points() {
            assert!(cocycle(&g, &z, &z).unwrap().is_one());
        }
        let z = g.parse_point("1;1").unwrap();
        let w = g.parse_point("0;1").unwrap();
        assert_eq!(cocycle_value(&g, &z, &w).unwrap(), c(-1.0, 0.0));
        // antisymmetry
        let g4 = GroupDescriptor::parse("Z4xZ2").unwrap();
        for z in g4.points() {
            for w in g4.points().step_by(5) {
                assert_eq!(
                    cocycle(&g4, &w, &z).unwrap(),
                    cocycle(&g4, &z, &w).unwrap().conj()
                );
            }
        }
    }

    #[test]
    fn heisenberg_examples() {
        let g = z2();
        let id = HeisenbergElement::identity(&g);
        let a = HeisenbergElement {
            z: g.parse_point("1;1").unwrap(),
            t: Phase::new(1, 3),
        };
        assert_eq!(heis_mul(&g, &a, &id).unwrap(), a);
        let a = HeisenbergElement {
            z: g.parse_point("1;1").unwrap(),
            t: Phase::ONE,
        };
        let b = HeisenbergElement {
            z: g.parse_point("0;1").unwrap(),
            t: Phase::ONE,
        };
        assert_eq!(heis_mul(&g, &a, &b).unwrap().t, Phase::new(1, 2));
    }

    #[test]
    fn weyl_apply_examples() {
        let g = z2();
        let f = vec![c(0.3, 0.1), c(-0.2, 0.9)];
        assert_eq!(weyl_apply(&g, &g.origin(), &f).unwrap(), f);
        let delta0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let out = weyl_apply(&g, &g.parse_point("1;0").unwrap(), &delta0).unwrap();
        assert_eq!(out, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = vec![c(s, 0.0), c(s, 0.0)];
        let out = weyl_apply(&g, &g.parse_point("0;1").unwrap(), &plus).unwrap();
        assert_eq!(out, vec![c(s, 0.0), c(-s, 0.0)]);
        assert!(matches!(
            weyl_apply(&g, &g.origin(), &[c(1.0, 0.0)]),
            Err(WehrlError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn weyl_dense_examples() {
        let g = GroupDescriptor::parse("Z3xZ2").unwrap();
        assert_eq!(
            weyl_dense(&g, &g.origin()).unwrap(),
            DMatrix::identity(6, 6)
        );
        for z in g.points() {
            let m = weyl_dense(&g, &z).unwrap();
            for i in 0..6 {
                let row: Vec<_> = (0..6).filter(|&j| m[(i, j)].norm() > 0.0).collect();
                let col: Vec<_> = (0..6).filter(|&j| m[(j, i)].norm() > 0.0).collect();
                assert_eq!(row.len(), 1);
                assert_eq!(col.len(), 1);
                assert!((m[(i, row[0])].norm() - 1.0).abs() < 1e-15);
            }
        }
        let z2 = z2();
        let m = weyl_dense(&z2, &z2.parse_point("1;1").unwrap()).unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(-1.0, 0.0));
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn dense_limit_enforced() {
        let g = GroupDescriptor::parse("Z300").unwrap();
        assert!(matches!(
            weyl_dense(&g, &g.origin()),
            Err(WehrlError::DenseLimitExceeded { dim: 300, .. })
        ));
    }

    #[test]
    fn ccr_small_groups() {
        let r = verify_ccr(&z2(), 1);
        assert!(r.exhaustive);
        assert_eq!(r.pairs_checked, 16);
        assert!(r.passed, "{r:?}");
        let r = verify_ccr(&GroupDescriptor::parse("Z4xZ2").unwrap(), 2);
        assert!(r.passed, "{r:?}");
        let r = verify_ccr(&GroupDescriptor::parse("Z5xZ5").unwrap(), 3);
        assert!(!r.exhaustive);
        assert_eq!(r.pairs_checked, 10_000);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn cocycle_trivial_on_maximal_compact() {
        for spec in ["Z2", "Z4", "Z6", "Z2xZ2", "Z4xZ2", "Z8", "Z3xZ3"] {
            let g = GroupDescriptor::parse(spec).unwrap();
            for h in g.all_subgroups() {
                let k = PhaseSubgroup::maximal_compact(&h);
                let pts = k.elements();
                for u in &pts {
                    for v in &pts {
                        assert!(cocycle(&g, u, v).unwrap().is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn unitarity_dense() {
        for spec in ["Z2", "Z4", "Z2xZ2", "Z3xZ3", "Z4xZ2xZ2"] {
            let g = GroupDescriptor::parse(spec).unwrap();
            let n = g.order();
            for z in g.points() {
                let m = weyl_dense(&g, &z).unwrap();
                let r = m.adjoint() * &m - DMatrix::<Complex64>::identity(n, n);
                assert!(r.iter().all(|x| x.norm() <= 1e-12));
            }
        }
    }
}
