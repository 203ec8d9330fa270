//! Multidimensional DFT over `Z_{n_1} × … × Z_{n_k}` in row-major layout.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::group::GroupDescriptor;

pub(crate) struct GroupFourier {
    axes: Vec<Axis>,
    len: usize,
}

struct Axis {
    n: usize,
    stride: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl GroupFourier {
    pub fn new(group: &GroupDescriptor) -> Self {
        let mut planner = FftPlanner::new();
        let orders = group.cyclic_orders();
        let mut axes = Vec::with_capacity(orders.len());
        let mut stride = 1;
        for &n in orders.iter().rev() {
            axes.push(Axis {
                n,
                stride,
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            });
            stride *= n;
        }
        GroupFourier {
            axes,
            len: group.order(),
        }
    }

    /// `x̂(a) = Σ_h conj(λ_a(h)) x(h)`.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    /// `x̌(h) = Σ_a λ_a(h) x(a)`, unnormalized.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    fn transform(&self, data: &mut [Complex64], forward: bool) {
        debug_assert_eq!(data.len(), self.len);
        for axis in &self.axes {
            if axis.n == 1 {
                continue;
            }
            let fft = if forward {
                &axis.forward
            } else {
                &axis.inverse
            };
            let mut line = vec![Complex64::default(); axis.n];
            let block = axis.n * axis.stride;
            for base in (0..self.len).step_by(block) {
                for offset in 0..axis.stride {
                    let start = base + offset;
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[start + k * axis.stride];
                    }
                    fft.process(&mut line);
                    for (k, v) in line.iter().enumerate() {
                        data[start + k * axis.stride] = *v;
                    }
                }
            }
        }
    }
}
