//! Exact rational phases `exp(2πi p/q)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;

/// A point of the circle group stored as the reduced fraction `num/den`
/// of a full turn, with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };

    /// The phase `exp(2πi num/den)`. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let r = num.rem_euclid(den as i64) as u64;
        let g = r.gcd(&den);
        Phase {
            num: r / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn conj(self) -> Self {
        -self
    }

    /// Evaluates the phase as a complex number. Quarter turns are exact and
    /// the residual angle is folded into `[0, π/4]` before calling
    /// `sin_cos`, so conjugate and rotated phases are bit-identical up to
    /// sign and component swaps.
    pub fn to_complex(self) -> Complex64 {
        let quarter = (4 * self.num) / self.den;
        let rem = 4 * self.num - quarter * self.den;
        let base = if rem == 0 {
            Complex64::new(1.0, 0.0)
        } else if 2 * rem == self.den {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            Complex64::new(h, h)
        } else if 2 * rem < self.den {
            let angle = std::f64::consts::FRAC_PI_2 * rem as f64 / self.den as f64;
            let (s, c) = angle.sin_cos();
            Complex64::new(c, s)
        } else {
            let angle = std::f64::consts::FRAC_PI_2 * (self.den - rem) as f64 / self.den as f64;
            let (s, c) = angle.sin_cos();
            Complex64::new(s, c)
        };
        match quarter {
            0 => base,
            1 => Complex64::new(-base.im, base.re),
            2 => Complex64::new(-base.re, -base.im),
            _ => Complex64::new(base.im, -base.re),
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl Add for Phase {
    type Output = Phase;

    fn add(self, rhs: Phase) -> Phase {
        let den = self.den.lcm(&rhs.den);
        let num = self.num * (den / self.den) + rhs.num * (den / rhs.den);
        Phase::new((num % den) as i64, den)
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;

    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2πi·{}/{})", self.num, self.den)
    }
}
