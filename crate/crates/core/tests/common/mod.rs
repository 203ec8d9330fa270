use num_complex::Complex64;
use wehrl_core::husimi::wehrl_entropy_pure;
use wehrl_core::minimizer::entropy_gradient;
use wehrl_core::{CoherentFrame, StateVector};

const H: f64 = 1e-6;

fn entropy_at(frame: &CoherentFrame, v: Vec<Complex64>) -> f64 {
    wehrl_entropy_pure(frame, &StateVector::normalized(v).unwrap()).unwrap()
}

/// Central differences of `f(normalize(ψ + t·v))` along `e_k` and `i·e_k`.
/// Their halves are the real and imaginary parts of the Wirtinger gradient.
pub fn finite_difference(frame: &CoherentFrame, psi: &StateVector) -> Vec<Complex64> {
    let base = psi.amplitudes();
    let shifted = |k: usize, d: Complex64| {
        let mut v = base.to_vec();
        v[k] += d;
        entropy_at(frame, v)
    };
    (0..base.len())
        .map(|k| {
            let re = (shifted(k, Complex64::new(H, 0.0)) - shifted(k, Complex64::new(-H, 0.0)))
                / (2.0 * H);
            let im = (shifted(k, Complex64::new(0.0, H)) - shifted(k, Complex64::new(0.0, -H)))
                / (2.0 * H);
            Complex64::new(re, im) / 2.0
        })
        .collect()
}

/// `‖g − fd‖ / ‖g‖` for the analytic gradient `g`.
pub fn gradient_error(frame: &CoherentFrame, psi: &StateVector) -> f64 {
    let g = entropy_gradient(frame, psi).unwrap();
    let fd = finite_difference(frame, psi);
    let diff = g
        .iter()
        .zip(&fd)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale = g.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    diff / scale
}
