//! Bessel and Hankel functions of the first kind, orders 0 to 2, for real
//! positive arguments.
//!
//! Below [`SERIES_LIMIT`] the ascending series are summed in double-double
//! arithmetic; the terms grow to roughly `exp(z)/sqrt(z)` before they decay,
//! so plain `f64` summation would lose about four digits near the switch.
//! Above it the Hankel asymptotic expansion is used, truncated at its smallest
//! term (about `exp(-2z)`).
//!
//! The logarithmic structure `Y_n(z) = (2/pi) J_n(z) ln(z/2) + ...` is what the
//! kernel splitting relies on: the coefficient of `ln r` in any combination of
//! `H_n(k r)` is obtained by replacing every `H_n` with `(2i/pi) J_n`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Arguments below this use the ascending series, above it the asymptotic
/// expansion.
pub const SERIES_LIMIT: f64 = 20.0;

const SERIES_REL_TOL: f64 = 1e-18;
const MAX_SERIES_TERMS: usize = 300;
const MAX_ASYMPTOTIC_TERMS: usize = 60;

/// `H_0`, `H_1`, `H_2` of the first kind at a shared argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelTriple {
    pub h0: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
}

impl HankelTriple {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.h0, self.h1, self.h2]
    }
}

/// `H_order^{(1)}(z)` for `order` in `{0, 1, 2}` and `z > 0`.
pub fn hankel1(order: u32, z: f64) -> Result<Complex64> {
    if order > 2 {
        return Err(Error::Domain(format!("unsupported Hankel order {order}")));
    }
    let t = hankel1_triple(z)?;
    Ok(t.as_array()[order as usize])
}

pub fn hankel1_triple(z: f64) -> Result<HankelTriple> {
    check_positive(z)?;
    let c = cylinder(z);
    Ok(HankelTriple {
        h0: Complex64::new(c.j[0], c.y[0]),
        h1: Complex64::new(c.j[1], c.y[1]),
        h2: Complex64::new(c.j[2], c.y[2]),
    })
}

/// `J_0`, `J_1`, `J_2` for `z >= 0`.
pub fn bessel_j_triple(z: f64) -> [f64; 3] {
    if z == 0.0 {
        return [1.0, 0.0, 0.0];
    }
    cylinder(z.abs()).j
}

/// `Y_0`, `Y_1`, `Y_2` for `z > 0`.
pub fn bessel_y_triple(z: f64) -> Result<[f64; 3]> {
    check_positive(z)?;
    Ok(cylinder(z).y)
}

/// Splits `H_0^{(1)}(z) = smooth + log_coeff * ln z`.
///
/// `log_coeff = (2i/pi) J_0(z)`; both parts are entire functions of `z^2`.
pub fn log_split_j0y0(z: f64) -> Result<(Complex64, Complex64)> {
    check_positive(z)?;
    if z < SERIES_LIMIT {
        let s = ascending(z);
        let log_coeff = Complex64::new(0.0, FRAC_2_PI * s.j0);
        let smooth_im = FRAC_2_PI * ((EULER_GAMMA - std::f64::consts::LN_2) * s.j0 - s.y0_tail);
        Ok((Complex64::new(s.j0, smooth_im), log_coeff))
    } else {
        let h0 = hankel1(0, z)?;
        let log_coeff = Complex64::new(0.0, FRAC_2_PI * cylinder(z).j[0]);
        Ok((h0 - log_coeff * z.ln(), log_coeff))
    }
}

fn check_positive(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "argument must be finite and > 0, got {z}"
        )));
    }
    Ok(())
}

struct Cylinder {
    j: [f64; 3],
    y: [f64; 3],
}

fn cylinder(z: f64) -> Cylinder {
    let (j0, j1, y0, y1) = if z < SERIES_LIMIT {
        let s = ascending(z);
        let log_term = (z / 2.0).ln() + EULER_GAMMA;
        let y0 = FRAC_2_PI * (log_term * s.j0 - s.y0_tail);
        let y1 = -FRAC_2_PI / z + FRAC_2_PI * log_term * s.j1 - s.y1_tail / PI;
        (s.j0, s.j1, y0, y1)
    } else {
        let h0 = asymptotic(0.0, z);
        let h1 = asymptotic(1.0, z);
        (h0.re, h1.re, h0.im, h1.im)
    };
    let j2 = 2.0 / z * j1 - j0;
    let y2 = 2.0 / z * y1 - y0;
    Cylinder {
        j: [j0, j1, j2],
        y: [y0, y1, y2],
    }
}

struct Ascending {
    j0: f64,
    j1: f64,
    /// `sum_{m>=1} H_m (-q)^m / (m!)^2` with `q = (z/2)^2`.
    y0_tail: f64,
    /// `sum_{m>=0} (H_m + H_{m+1}) (-1)^m (z/2)^{2m+1} / (m! (m+1)!)`.
    y1_tail: f64,
}

fn ascending(z: f64) -> Ascending {
    let half = Dd::from(z / 2.0);
    let neg_q = -(half * half);

    let mut t = Dd::from(1.0);
    let mut u = half;
    let mut harmonic = Dd::from(0.0);
    let mut j0 = t;
    let mut j1 = u;
    let mut y0_tail = Dd::from(0.0);
    let mut y1_tail = u; // H_0 + H_1 = 1
    for m in 1..MAX_SERIES_TERMS {
        let mf = m as f64;
        t = (t * neg_q).div_f64(mf * mf);
        u = (u * neg_q).div_f64(mf * (mf + 1.0));
        harmonic = harmonic + Dd::from(1.0).div_f64(mf);
        let harmonic_next = harmonic + Dd::from(1.0).div_f64(mf + 1.0);
        j0 = j0 + t;
        j1 = j1 + u;
        y0_tail = y0_tail + harmonic * t;
        y1_tail = y1_tail + (harmonic + harmonic_next) * u;

        let scale = j0
            .hi
            .abs()
            .max(j1.hi.abs())
            .max(y0_tail.hi.abs())
            .max(1e-300);
        let term = t.hi.abs().max(u.hi.abs()) * (harmonic_next.hi + harmonic.hi);
        if mf * mf > neg_q.hi.abs() && term < SERIES_REL_TOL * scale {
            break;
        }
    }
    Ascending {
        j0: j0.hi,
        j1: j1.hi,
        y0_tail: y0_tail.hi,
        y1_tail: y1_tail.hi,
    }
}

/// Hankel asymptotic expansion of `H_nu^{(1)}(z)`.
fn asymptotic(nu: f64, z: f64) -> Complex64 {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut c = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = c * (mu4 - odd * odd) / (k as f64 * 8.0 * z);
        if next.abs() >= prev {
            break;
        }
        prev = next.abs();
        c = next;
        // i^k: k = 1 -> i, 2 -> -1, 3 -> -i, 0 -> 1
        match k % 4 {
            0 => p += c,
            1 => q += c,
            2 => p -= c,
            _ => q -= c,
        }
        if c.abs() < 1e-17 {
            break;
        }
    }
    // e^{i(z - nu pi/2 - pi/4)} with the large argument kept exact
    let phase = (nu / 2.0) * PI + FRAC_PI_4;
    let (sz, cz) = z.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cz * cp + sz * sp;
    let sin_chi = sz * cp - cz * sp;
    let amp = (FRAC_2_PI / z).sqrt();
    Complex64::new(cos_chi, sin_chi) * Complex64::new(p, q) * amp
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Dd {
    fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let p = q * d;
        let e = q.mul_add(d, -p);
        let r = (self.hi - p - e + self.lo) / d;
        quick_two_sum(q, r)
    }
}
