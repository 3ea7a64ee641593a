//! Pointwise kernels of the elastic boundary integral operators.
//!
//! Every dynamic kernel is a combination `sum c_n(r) H_n(k r)` with smooth
//! coefficients, so its `ln r` coefficient is the same expression with each
//! `H_n` replaced by `(2i/pi) J_n`. [`Part::LogCoefficient`] evaluates exactly
//! that, which gives the splitting `K = L ln r + smooth` without transcribed
//! series. The static tensor uses `-c1 ln r I + c2 d d^T / r^2`.
//!
//! The antisymmetric matrix coupling the two normals in the hyper-singular
//! kernel is `J = nu_y nu_x^T - nu_x nu_y^T = (nu_x x nu_y) A`, with
//! `A = [[0, -1], [1, 0]]`. This choice was fixed by comparing the regularized
//! formula against a finite-difference double traction of the double-layer
//! potential (see `tests/kernel_oracles.rs`).

use std::f64::consts::{FRAC_2_PI, PI};

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::material::Material;
use crate::special_fn::{bessel_j_triple, hankel1_triple, EULER_GAMMA};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

const I: C64 = C64::new(0.0, 1.0);

/// Which piece of a kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// The kernel itself.
    Full,
    /// The smooth coefficient of `ln r`.
    LogCoefficient,
}

/// `A = [[0, -1], [1, 0]]`, rotation by +90 degrees.
pub fn rot() -> Mat2 {
    Mat2::new(C64::ZERO, -C64::ONE, C64::ONE, C64::ZERO)
}

pub fn outer(a: Point, b: Point) -> Mat2 {
    Mat2::new(
        (a[0] * b[0]).into(),
        (a[0] * b[1]).into(),
        (a[1] * b[0]).into(),
        (a[1] * b[1]).into(),
    )
}

pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Normal coupling matrix of the hyper-singular kernel.
pub fn j_matrix(nu_x: Point, nu_y: Point) -> Mat2 {
    let cross = nu_x[0] * nu_y[1] - nu_x[1] * nu_y[0];
    rot() * C64::from(cross)
}

/// Radial profile of a 2x2 tensor `phi1(r) I + phi2(r) dhat dhat^T` and its
/// derivatives in `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radial {
    pub phi1: C64,
    pub phi2: C64,
    pub dphi1: C64,
    pub dphi2: C64,
}

/// Hankel values (or their log coefficients) at `k_s r` and `k_p r`.
#[derive(Debug, Clone, Copy)]
struct Waves {
    hs: [C64; 3],
    hp: [C64; 3],
}

impl Waves {
    fn new(m: &Material, r: f64, part: Part) -> Result<Self> {
        let (ks, kp) = (m.k_s(), m.k_p());
        Ok(match part {
            Part::Full => Waves {
                hs: hankel1_triple(ks * r)?.as_array(),
                hp: hankel1_triple(kp * r)?.as_array(),
            },
            Part::LogCoefficient => {
                let f = |z: f64| bessel_j_triple(z).map(|j| C64::new(0.0, FRAC_2_PI * j));
                Waves {
                    hs: f(ks * r),
                    hp: f(kp * r),
                }
            }
        })
    }

    /// `k_s H1(k_s r) - k_p H1(k_p r)`
    fn e1(&self, m: &Material) -> C64 {
        self.hs[1] * m.k_s() - self.hp[1] * m.k_p()
    }
}

/// Kernel evaluator for one source/target pair, sharing the Hankel values
/// across all kernels built from them.
#[derive(Debug, Clone, Copy)]
pub struct PairEval {
    pub part: Part,
    pub d: Point,
    pub r: f64,
    pub dhat: Point,
    pub radial: Radial,
    /// `G_{k_s}` and `G_{k_p}` (zero in the static case).
    pub g_s: C64,
    pub g_p: C64,
    /// `grad_x [G_{k_s} - G_{k_p}]` (zero in the static case).
    pub grad_x_diff: [C64; 2],
    material: Material,
}

impl PairEval {
    pub fn new(m: &Material, x: Point, y: Point, part: Part) -> Result<Self> {
        let d = [x[0] - y[0], x[1] - y[1]];
        let r = d[0].hypot(d[1]);
        if !(r > 0.0) {
            return Err(Error::CoincidentPoints);
        }
        let dhat = [d[0] / r, d[1] / r];
        if m.is_static() {
            let c = m.constants();
            return Ok(PairEval {
                part,
                d,
                r,
                dhat,
                radial: static_radial(c.c1, c.c2, r, part),
                g_s: C64::ZERO,
                g_p: C64::ZERO,
                grad_x_diff: [C64::ZERO; 2],
                material: *m,
            });
        }
        let w = Waves::new(m, r, part)?;
        let (ks, kp) = (m.k_s(), m.k_p());
        let rw2 = m.rho_omega2();
        let e1 = w.e1(m);
        let e2 = w.hs[2] * (ks * ks) - w.hp[2] * (kp * kp);
        let b0 = w.hs[0] * (ks * ks) - w.hp[0] * (kp * kp);
        let b1 = w.hs[1] * (ks * ks * ks) - w.hp[1] * (kp * kp * kp);
        let radial = Radial {
            phi1: I / (4.0 * m.mu) * w.hs[0] - I / (4.0 * rw2 * r) * e1,
            phi2: I / (4.0 * rw2) * e2,
            dphi1: -I * ks / (4.0 * m.mu) * w.hs[1] - I / (4.0 * rw2 * r) * b0
                + I / (2.0 * rw2 * r * r) * e1,
            dphi2: I / (4.0 * rw2) * (b1 - e2 * (2.0 / r)),
        };
        let gx = -I / (4.0 * r) * e1;
        Ok(PairEval {
            part,
            d,
            r,
            dhat,
            radial,
            g_s: I / 4.0 * w.hs[0],
            g_p: I / 4.0 * w.hp[0],
            grad_x_diff: [gx * d[0], gx * d[1]],
            material: *m,
        })
    }

    /// `Pi(x, y)`
    pub fn pi(&self) -> Mat2 {
        tensor(&self.radial, self.dhat)
    }

    /// `d/d(d_k) Pi` for `k = 0, 1`, with `d = x - y`.
    pub fn grad(&self) -> [Mat2; 2] {
        tensor_grad(&self.radial, self.dhat, self.r)
    }

    /// `(T_y Pi(x, y))^T`, the double-layer kernel.
    pub fn traction_y(&self, nu_y: Point) -> Mat2 {
        traction_of(&self.material, &self.grad(), -1.0, nu_y).transpose()
    }

    /// `T_x Pi(x, y)`, the adjoint double-layer kernel.
    pub fn traction_x(&self, nu_x: Point) -> Mat2 {
        traction_of(&self.material, &self.grad(), 1.0, nu_x)
    }

    /// `A Pi A`
    pub fn a_pi_a(&self) -> Mat2 {
        let a = rot();
        a * self.pi() * a
    }

    /// Weakly singular first term of the regularized hyper-singular kernel.
    pub fn pi_n(&self, nu_x: Point, nu_y: Point) -> Mat2 {
        pi_n_from(&self.material, nu_x, nu_y, self.g_s, self.g_p)
    }

    /// `nu_x grad_x^T [G_s - G_p] A`
    pub fn nu_grad_a(&self, nu_x: Point) -> Mat2 {
        let g = self.grad_x_diff;
        let row = Mat2::new(
            g[0] * nu_x[0],
            g[1] * nu_x[0],
            g[0] * nu_x[1],
            g[1] * nu_x[1],
        );
        row * rot()
    }

    /// `A grad_y [G_s - G_p] nu_y^T`
    pub fn a_grad_nu(&self, nu_y: Point) -> Mat2 {
        let g = [-self.grad_x_diff[0], -self.grad_x_diff[1]];
        let col = Mat2::new(
            g[0] * nu_y[0],
            g[0] * nu_y[1],
            g[1] * nu_y[0],
            g[1] * nu_y[1],
        );
        rot() * col
    }
}

/// `-rho w^2 (nu_x nu_y^T - (nu_x.nu_y) I) g_s + mu_t k_s^2 g_s J + rho w^2 g_p nu_x nu_y^T`
/// for given values (or log coefficients) `g_s`, `g_p` of the Helmholtz kernels.
pub fn pi_n_from(m: &Material, nu_x: Point, nu_y: Point, g_s: C64, g_p: C64) -> Mat2 {
    let rw2 = m.rho_omega2();
    let ks2 = m.k_s() * m.k_s();
    let nn = outer(nu_x, nu_y);
    let first = (nn - Mat2::identity() * C64::from(dot(nu_x, nu_y))) * (g_s * -rw2);
    let second = j_matrix(nu_x, nu_y) * (g_s * (m.mu_tilde * ks2));
    let third = nn * (g_p * rw2);
    first + second + third
}

fn static_radial(c1: f64, c2: f64, r: f64, part: Part) -> Radial {
    match part {
        Part::Full => Radial {
            phi1: (-c1 * r.ln()).into(),
            phi2: c2.into(),
            dphi1: (-c1 / r).into(),
            dphi2: C64::ZERO,
        },
        Part::LogCoefficient => Radial {
            phi1: (-c1).into(),
            phi2: C64::ZERO,
            dphi1: C64::ZERO,
            dphi2: C64::ZERO,
        },
    }
}

fn tensor(rad: &Radial, dhat: Point) -> Mat2 {
    Mat2::identity() * rad.phi1 + outer(dhat, dhat) * rad.phi2
}

fn tensor_grad(rad: &Radial, e: Point, r: f64) -> [Mat2; 2] {
    let mut out = [Mat2::zeros(); 2];
    for (k, g) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let dij = if i == j { 1.0 } else { 0.0 };
                let dik = if i == k { 1.0 } else { 0.0 };
                let djk = if j == k { 1.0 } else { 0.0 };
                g[(i, j)] = rad.dphi1 * (e[k] * dij)
                    + rad.dphi2 * (e[k] * e[i] * e[j])
                    + rad.phi2 * ((dik * e[j] + e[i] * djk - 2.0 * e[i] * e[j] * e[k]) / r);
            }
        }
    }
    out
}

/// Generalized traction of a vector field with gradient `du[i][l] = d u_i / d x_l`.
pub fn traction_vector(m: &Material, du: &[[C64; 2]; 2], nu: Point) -> [C64; 2] {
    let tau = [-nu[1], nu[0]];
    let div = du[0][0] + du[1][1];
    // curl u = d2 u1 - d1 u2
    let curl = du[0][1] - du[1][0];
    let lt = m.lambda_tilde();
    let mut out = [C64::ZERO; 2];
    for (i, o) in out.iter_mut().enumerate() {
        let dnu = du[i][0] * nu[0] + du[i][1] * nu[1];
        *o = dnu * (m.mu + m.mu_tilde) + div * (lt * nu[i]) + curl * (m.mu_tilde * tau[i]);
    }
    out
}

/// Applies the generalized traction to each column of a tensor field whose
/// gradient with respect to the evaluation variable is `sign * grad[l]`.
fn traction_of(m: &Material, grad: &[Mat2; 2], sign: f64, nu: Point) -> Mat2 {
    let mut out = Mat2::zeros();
    for j in 0..2 {
        let du = [
            [grad[0][(0, j)] * sign, grad[1][(0, j)] * sign],
            [grad[0][(1, j)] * sign, grad[1][(1, j)] * sign],
        ];
        let t = traction_vector(m, &du, nu);
        out[(0, j)] = t[0];
        out[(1, j)] = t[1];
    }
    out
}

/// Time-harmonic fundamental displacement tensor; `omega == 0` gives the
/// static tensor.
pub fn fundamental_tensor(m: &Material, x: Point, y: Point) -> Result<Mat2> {
    Ok(PairEval::new(m, x, y, Part::Full)?.pi())
}

/// Static Kelvin-type tensor `-c1 ln r I + c2 d d^T / r^2`.
pub fn static_tensor(m: &Material, x: Point, y: Point) -> Result<Mat2> {
    fundamental_tensor(&m.with_omega(0.0), x, y)
}

/// Double-layer kernel `(T(d_y, nu_y) Pi(x, y))^T`.
pub fn traction_y_tensor(m: &Material, x: Point, y: Point, nu_y: Point) -> Result<Mat2> {
    Ok(PairEval::new(m, x, y, Part::Full)?.traction_y(nu_y))
}

/// Adjoint double-layer kernel `T(d_x, nu_x) Pi(x, y)`.
pub fn traction_x_tensor(m: &Material, x: Point, y: Point, nu_x: Point) -> Result<Mat2> {
    Ok(PairEval::new(m, x, y, Part::Full)?.traction_x(nu_x))
}

/// Kernel of the static operator in the regularized hyper-singular form:
/// `-c1_t ln r I + c2_t d d^T / r^2`.
pub fn v0_tensor(m: &Material, x: Point, y: Point, part: Part) -> Result<Mat2> {
    let d = [x[0] - y[0], x[1] - y[1]];
    let r = d[0].hypot(d[1]);
    if !(r > 0.0) {
        return Err(Error::CoincidentPoints);
    }
    let c = m.constants();
    let rad = static_radial(c.c1_t, c.c2_t, r, part);
    Ok(tensor(&rad, [d[0] / r, d[1] / r]))
}

/// The kernel factors of the regularized hyper-singular operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParts {
    /// Weakly singular `Pi^N` kernel, integrated against the density.
    pub pi_n: Mat2,
    /// `A Pi A`, sandwiched by tangential derivatives.
    pub a_pi_a: Mat2,
    /// `G_{k_s}`, sandwiched by tangential derivatives.
    pub g_s: C64,
    /// `nu_x grad_x^T [G_s - G_p] A`, applied to the density derivative.
    pub nu_grad_a: Mat2,
    /// `A grad_y [G_s - G_p] nu_y^T`, differentiated at the target.
    pub a_grad_nu: Mat2,
}

pub fn hyper_kernel_parts(
    m: &Material,
    x: Point,
    y: Point,
    nu_x: Point,
    nu_y: Point,
    part: Part,
) -> Result<HyperParts> {
    if m.is_static() {
        return Err(Error::Domain(
            "hyper-singular kernel parts need omega > 0".into(),
        ));
    }
    let e = PairEval::new(m, x, y, part)?;
    Ok(HyperParts {
        pi_n: e.pi_n(nu_x, nu_y),
        a_pi_a: e.a_pi_a(),
        g_s: e.g_s,
        nu_grad_a: e.nu_grad_a(nu_x),
        a_grad_nu: e.a_grad_nu(nu_y),
    })
}

/// `G_k(r) = (i/4) H0(k r)` or its log coefficient `-J0(k r)/(2 pi)`.
pub fn helmholtz(k: f64, r: f64, part: Part) -> Result<C64> {
    match part {
        Part::Full => Ok(I / 4.0 * hankel1_triple(k * r)?.h0),
        Part::LogCoefficient => Ok((-bessel_j_triple(k * r)[0] / (2.0 * PI)).into()),
    }
}

/// `lim_{r->0} [G_k(r) + ln(r)/(2 pi)]`
pub fn helmholtz_diag_smooth(k: f64) -> C64 {
    C64::new(-((k / 2.0).ln() + EULER_GAMMA) / (2.0 * PI), 0.25)
}

/// `lim [Pi(x, y) - L(x, y) ln r]` as `y -> x` along unit tangent `t`.
pub fn pi_diag_smooth(m: &Material, t: Point) -> Mat2 {
    let c = m.constants();
    let dyad = outer(t, t) * C64::from(c.c2);
    if m.is_static() {
        return dyad;
    }
    let (ks, kp) = (m.k_s(), m.k_p());
    let rw2 = m.rho_omega2();
    let dk2 = ks * ks - kp * kp;
    let re = -((ks / 2.0).ln() + EULER_GAMMA) / (2.0 * PI * m.mu)
        + (ks * ks * (ks / 2.0).ln() - kp * kp * (kp / 2.0).ln()) / (4.0 * PI * rw2)
        - (1.0 - 2.0 * EULER_GAMMA) * dk2 / (8.0 * PI * rw2);
    let im = 1.0 / (4.0 * m.mu) - dk2 / (8.0 * rw2);
    Mat2::identity() * C64::new(re, im) + dyad
}

/// Log coefficient of `Pi` at coincident points: `-c1 I`.
pub fn pi_diag_log(m: &Material) -> Mat2 {
    Mat2::identity() * C64::from(-m.constants().c1)
}

/// `lim [V0(x, y) - L ln r]` along unit tangent `t`: `c2_t t t^T`.
pub fn v0_diag_smooth(m: &Material, t: Point) -> Mat2 {
    outer(t, t) * C64::from(m.constants().c2_t)
}

/// Splitting `K = log * ln r + smooth` of a kernel at separation `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub log: Mat2,
    pub smooth: Mat2,
}

impl Split {
    pub fn from_parts(full: Mat2, log: Mat2, r: f64) -> Self {
        Split {
            log,
            smooth: full - log * C64::from(r.ln()),
        }
    }

    pub fn value(&self, r: f64) -> Mat2 {
        self.log * C64::from(r.ln()) + self.smooth
    }
}

/// Splitting of an open-arc kernel in the cosine variables:
/// `K = log * ln|t - iota| + constant + smooth`, where `constant` collects the
/// coincident-point value of the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSplit {
    pub log: Mat2,
    pub constant: Mat2,
    pub smooth: Mat2,
}

impl ArcSplit {
    pub fn value(&self, t: f64, iota: f64) -> Mat2 {
        self.log * C64::from((t - iota).abs().ln()) + self.constant + self.smooth
    }
}

/// Which open-arc kernel to split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKernel {
    /// The fundamental tensor.
    Pi,
    /// `(mu + mu_t)^2 A Pi A + 2 (mu + mu_t) G_{k_s} I`, or the static
    /// `-c1_t ln r I + c2_t d d^T / r^2` when `omega == 0`.
    V,
}

/// Splits `kernel(x(t), x(iota))` into the log coefficient in `ln|t - iota|`,
/// the coincident-point constant at `t` and the vanishing remainder.
pub fn split_open_arc_kernel(
    m: &Material,
    arc: &crate::geometry::OpenArc,
    kernel: ArcKernel,
    theta: f64,
    vartheta: f64,
) -> Result<ArcSplit> {
    let (t, iota) = (theta.cos(), vartheta.cos());
    let jt = arc.jet(t);
    let speed = jt.dx[0].hypot(jt.dx[1]);
    let tan = [jt.dx[0] / speed, jt.dx[1] / speed];
    let (log_diag, smooth_diag) = arc_kernel_diag(m, kernel, tan);
    let constant = smooth_diag + log_diag * C64::from(speed.ln());
    if t == iota {
        return Ok(ArcSplit {
            log: log_diag,
            constant,
            smooth: Mat2::zeros(),
        });
    }
    let x = jt.x;
    let y = arc.jet(iota).x;
    let full = arc_kernel(m, kernel, x, y, Part::Full)?;
    let log = arc_kernel(m, kernel, x, y, Part::LogCoefficient)?;
    // ln r = ln|t - iota| + ln(r / |t - iota|)
    let rest = full - log * C64::from((t - iota).abs().ln());
    Ok(ArcSplit {
        log,
        constant,
        smooth: rest - constant,
    })
}

/// Open-arc kernel value (or log coefficient) at two points.
pub fn arc_kernel(m: &Material, kernel: ArcKernel, x: Point, y: Point, part: Part) -> Result<Mat2> {
    match kernel {
        ArcKernel::Pi => Ok(PairEval::new(m, x, y, part)?.pi()),
        ArcKernel::V => {
            if m.is_static() {
                return v0_tensor(m, x, y, part);
            }
            let e = PairEval::new(m, x, y, part)?;
            let s = m.mu + m.mu_tilde;
            Ok(e.a_pi_a() * C64::from(s * s) + Mat2::identity() * (e.g_s * (2.0 * s)))
        }
    }
}

/// `(log coefficient, smooth limit)` of an arc kernel at coincident points
/// along unit tangent `t`.
pub fn arc_kernel_diag(m: &Material, kernel: ArcKernel, t: Point) -> (Mat2, Mat2) {
    match kernel {
        ArcKernel::Pi => (pi_diag_log(m), pi_diag_smooth(m, t)),
        ArcKernel::V => {
            if m.is_static() {
                let c = m.constants();
                return (Mat2::identity() * C64::from(-c.c1_t), v0_diag_smooth(m, t));
            }
            let s = m.mu + m.mu_tilde;
            let a = rot();
            let log = a * pi_diag_log(m) * a * C64::from(s * s)
                + Mat2::identity() * C64::from(-2.0 * s / (2.0 * PI));
            let smooth = a * pi_diag_smooth(m, t) * a * C64::from(s * s)
                + Mat2::identity() * (helmholtz_diag_smooth(m.k_s()) * (2.0 * s));
            (log, smooth)
        }
    }
}
