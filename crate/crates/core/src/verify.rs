//! The invariant suite behind `wehrl verify`: every structural identity of a
//! vacuum frame, checked numerically with a pinned tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::frame::{
    coset_basis, invariance_residual, invariant_subspace_dim, invariant_vector, overlap_matrix,
    separating_point, CoherentFrame,
};
use crate::group::{GroupDescriptor, PhaseSubgroup, Subgroup};
use crate::husimi::{
    coset_spread, husimi, husimi_fast, measurement_channel, von_neumann_entropy, wehrl_entropy,
    wehrl_entropy_coset,
};
use crate::minimizer::{minimize, MinimizerConfig};
use crate::random::{random_density, random_state};
use crate::state::DensityMatrix;
use crate::weyl::{cocycle, verify_ccr, weyl_apply, weyl_dense, CCR_TOLERANCE};

/// Groups exercised by the full suite.
pub const STANDARD_SUITE: [&str; 10] = [
    "Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z4xZ2", "Z3xZ3", "Z9", "Z2xZ2xZ2",
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }

    fn count(name: &'static str, failures: usize) -> Self {
        CheckResult::new(name, failures as f64, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub subgroup: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random states per statistical check.
    pub random_states: usize,
    /// Random fiducials for the resolution-of-identity check.
    pub random_fiducials: usize,
    pub run_minimizer: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            random_states: 100,
            random_fiducials: 5,
            run_minimizer: true,
        }
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.norm()))
}

fn group_checks(
    group: &GroupDescriptor,
    rng: &mut ChaCha8Rng,
    checks: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = group.order();
    let elems: Vec<_> = group.elements().collect();
    let mut law_failures = 0;
    if n <= 64 {
        for a in &elems {
            if group.add(a, &group.neg(a)?)? != group.zero() {
                law_failures += 1;
            }
            for b in &elems {
                let ab = group.add(a, b)?;
                if ab != group.add(b, a)? {
                    law_failures += 1;
                }
                for c in &elems {
                    if group.add(&ab, c)? != group.add(a, &group.add(b, c)?)? {
                        law_failures += 1;
                    }
                }
            }
        }
    }
    checks.push(CheckResult::count("group_laws", law_failures));

    let triples: Vec<(usize, usize, usize)> = if n <= 16 {
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |g| (0..n).map(move |h| (a, g, h))))
            .collect()
    } else {
        (0..1000)
            .map(|_| {
                (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
            .collect()
    };
    let mut mult: f64 = 0.0;
    for (a, g, h) in triples {
        let lambda = group.character_at(a);
        let (g, h) = (group.element_at(g), group.element_at(h));
        let lhs = group.char_eval(&lambda, &group.add(&g, &h)?)?;
        let rhs = group.char_eval(&lambda, &g)? * group.char_eval(&lambda, &h)?;
        mult = mult.max((lhs - rhs).norm());
    }
    checks.push(CheckResult::new("character_multiplicativity", mult, 1e-12));
    Ok(())
}

/// Runs the invariant suite for the vacuum frame of `h`.
pub fn verify_subgroup(h: &Subgroup, config: &VerifyConfig) -> Result<VerifyReport> {
    let group = h.parent().clone();
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();

    group_checks(&group, &mut rng, &mut checks)?;

    let ann = h.annihilator();
    checks.push(CheckResult::count(
        "annihilator_duality",
        (ann.order() * h.order()).abs_diff(n),
    ));
    let double = ann.annihilator();
    checks.push(CheckResult::count(
        "double_annihilator",
        (0..n)
            .filter(|&i| double.contains_index(i) != h.contains_index(i))
            .count(),
    ));
    checks.push(CheckResult::count(
        "maximality",
        usize::from(!h.separated_by_annihilator(&ann)),
    ));

    let ccr = verify_ccr(&group, config.seed);
    checks.push(CheckResult::new("ccr", ccr.max_residual, CCR_TOLERANCE));

    let k = PhaseSubgroup::maximal_compact(h);
    let k_pts = k.elements();
    let mut nontrivial = 0;
    for u in &k_pts {
        for v in &k_pts {
            if !cocycle(&group, u, v)?.is_one() {
                nontrivial += 1;
            }
        }
    }
    checks.push(CheckResult::count("cocycle_trivial_on_k", nontrivial));

    let f_len = group.phase_space_order();
    let mut bilinear = 0;
    for _ in 0..1000 {
        let z = group.point_at(rng.random_range(0..f_len));
        let z1 = group.point_at(rng.random_range(0..f_len));
        let w = group.point_at(rng.random_range(0..f_len));
        let lhs = cocycle(&group, &group.point_add(&z, &z1)?, &w)?;
        if lhs != cocycle(&group, &z, &w)? + cocycle(&group, &z1, &w)? {
            bilinear += 1;
        }
    }
    checks.push(CheckResult::count("cocycle_bilinearity", bilinear));

    if n <= 16 {
        let mut unitarity: f64 = 0.0;
        for z in group.points() {
            let m = weyl_dense(&group, &z)?;
            unitarity = unitarity.max(max_abs(&(m.adjoint() * &m - DMatrix::identity(n, n))));
        }
        checks.push(CheckResult::new("weyl_unitarity", unitarity, 1e-12));
    }
    let mut fast_dense: f64 = 0.0;
    for _ in 0..1000 {
        let z = group.point_at(rng.random_range(0..f_len));
        let f = random_state(n, &mut rng);
        let fast = weyl_apply(&group, &z, f.amplitudes())?;
        let dense = weyl_dense(&group, &z)? * nalgebra::DVector::from_column_slice(f.amplitudes());
        for (a, b) in fast.iter().zip(dense.iter()) {
            fast_dense = fast_dense.max((a - b).norm());
        }
    }
    checks.push(CheckResult::new("weyl_fast_vs_dense", fast_dense, 1e-13));

    let frame = CoherentFrame::vacuum(h);
    let vac = frame.fiducial();
    checks.push(CheckResult::new(
        "vacuum_invariance",
        invariance_residual(&k, vac)?,
        1e-13,
    ));
    let null_vec = invariant_vector(&k)?;
    checks.push(CheckResult::new(
        "vacuum_nullspace_agreement",
        (1.0 - null_vec.inner(vac).norm()).abs(),
        1e-12,
    ));
    checks.push(CheckResult::count(
        "invariant_subspace_dim",
        invariant_subspace_dim(&k)?.abs_diff(1),
    ));

    let mut resolution = frame.resolution_residual();
    for _ in 0..config.random_fiducials {
        let generic = CoherentFrame::new(&group, random_state(n, &mut rng))?;
        resolution = resolution.max(generic.resolution_residual());
    }
    checks.push(CheckResult::new(
        "resolution_of_identity",
        resolution,
        1e-11,
    ));

    if f_len <= crate::weyl::dense_limit() {
        let overlaps = overlap_matrix(&frame)?;
        let mut dichotomy: f64 = 0.0;
        let mut relation = 0;
        for i in 0..f_len {
            for j in 0..f_len {
                let o = overlaps[(i, j)];
                dichotomy = dichotomy.max(o.min((o - 1.0).abs()));
                let diff = group.point_sub(&group.point_at(i), &group.point_at(j))?;
                if (o > 0.5) != k.contains(&diff) {
                    relation += 1;
                }
            }
        }
        checks.push(CheckResult::new("overlap_dichotomy", dichotomy, 1e-12));
        checks.push(CheckResult::count("overlap_coset_relation", relation));
    }

    let mut vacuum_expectation: f64 = 0.0;
    let mut missing_separator = 0;
    for (i, z) in group.points().enumerate() {
        if k.contains_index(i) {
            continue;
        }
        if separating_point(&k, &z)?.is_none() {
            missing_separator += 1;
        }
        vacuum_expectation = vacuum_expectation.max(frame.coherent_state_at(i).inner(vac).norm());
    }
    checks.push(CheckResult::count(
        "separating_point_exists",
        missing_separator,
    ));
    checks.push(CheckResult::new(
        "vacuum_expectation_off_k",
        vacuum_expectation,
        1e-13,
    ));

    let basis = coset_basis(&frame)?;
    let mut gram: f64 = 0.0;
    for (i, (_, a)) in basis.iter().enumerate() {
        for (j, (_, b)) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            gram = gram.max((a.inner(b) - Complex64::new(target, 0.0)).norm());
        }
    }
    checks.push(CheckResult::count(
        "coset_basis_size",
        basis.len().abs_diff(n),
    ));
    checks.push(CheckResult::new("coset_basis_gram", gram, 1e-12));

    let mut mass: f64 = 0.0;
    let mut range: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut coset_formula: f64 = 0.0;
    let mut min_wehrl = f64::INFINITY;
    let mut min_gap = f64::INFINITY;
    let mut channel_trace: f64 = 0.0;
    let mut channel_min_eig = f64::INFINITY;
    let mut false_minima = 0;
    for _ in 0..config.random_states {
        let rho = random_density(n, &mut rng);
        let table = husimi(&frame, &rho)?;
        mass = mass.max((table.mass() - 1.0).abs());
        range = range.max(table.values().iter().fold(0.0, |a, &q| a.max(q - 1.0)));
        spread = spread.max(coset_spread(&frame, &table)?);
        let s_w = wehrl_entropy(&table);
        coset_formula = coset_formula.max((s_w - wehrl_entropy_coset(&frame, &rho)?).abs());
        min_wehrl = min_wehrl.min(s_w);
        min_gap = min_gap.min(s_w - von_neumann_entropy(&rho));
        if table.max().1 < 1.0 - 1e-6 && s_w < 1e-3 {
            false_minima += 1;
        }
        let out = measurement_channel(&frame, &rho)?;
        channel_trace = channel_trace.max((out.trace().re - 1.0).abs());
        channel_min_eig = channel_min_eig.min(out.eigenvalues()[0]);
    }
    checks.push(CheckResult::new("husimi_mass", mass, 1e-10));
    checks.push(CheckResult::new("husimi_upper_bound", range, 1e-12));
    checks.push(CheckResult::new("coset_constancy", spread, 1e-12));
    checks.push(CheckResult::new("coset_formula", coset_formula, 1e-10));
    checks.push(CheckResult::new(
        "wehrl_lower_bound",
        (-min_wehrl).max(0.0),
        1e-9,
    ));
    checks.push(CheckResult::new(
        "wehrl_vs_von_neumann",
        (-min_gap).max(0.0),
        1e-9,
    ));
    checks.push(CheckResult::count("noncoherent_near_zero", false_minima));
    checks.push(CheckResult::new("channel_trace", channel_trace, 1e-10));
    checks.push(CheckResult::new(
        "channel_positivity",
        (-channel_min_eig).max(0.0),
        1e-10,
    ));

    let mut coherent: f64 = 0.0;
    for state in frame.coherent_states() {
        coherent = coherent.max(wehrl_entropy(&husimi(&frame, &state.projector())?));
    }
    checks.push(CheckResult::new("coherent_states_zero", coherent, 1e-12));

    let flat = DensityMatrix::maximally_mixed(n);
    let log_n = (n as f64).ln();
    let flat_err = (wehrl_entropy(&husimi(&frame, &flat)?) - log_n)
        .abs()
        .max((von_neumann_entropy(&flat) - log_n).abs());
    checks.push(CheckResult::new(
        "maximally_mixed_equality",
        flat_err,
        1e-10,
    ));

    let mut fast: f64 = 0.0;
    for _ in 0..config.random_states {
        let psi = random_state(n, &mut rng);
        let a = husimi_fast(&frame, &psi)?;
        let b = husimi(&frame, &psi.projector())?;
        for (x, y) in a.values().iter().zip(b.values()) {
            fast = fast.max((x - y).abs());
        }
    }
    checks.push(CheckResult::new("husimi_fast_vs_dense", fast, 1e-11));

    if config.run_minimizer {
        let result = minimize(&frame, &MinimizerConfig::with_seed(config.seed))?;
        checks.push(CheckResult::new(
            "minimizer_entropy",
            result.best_entropy,
            1e-6,
        ));
        checks.push(CheckResult::new(
            "minimizer_overlap",
            1.0 - result.overlap,
            1e-4,
        ));
    }

    Ok(VerifyReport {
        group: group.to_string(),
        subgroup: h.generator_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
