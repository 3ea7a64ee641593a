//! Nyström discretization of the boundary integral operators on closed
//! curves and the Calderón compositions.
//!
//! A kernel `K(s, sigma)` (already multiplied by any arc-length factor) is
//! split as
//!
//! `K = K1 ln(4 sin^2((s - sigma)/2)) + K_C cot((sigma - s)/2) + K2`
//!
//! with `K1 = L/2` from the log coefficient `L` of `ln r`, a constant Cauchy
//! coefficient `K_C` (double-layer kernels only) and a smooth remainder `K2`.
//! The three pieces are integrated with the Martensen–Kussmaul log weights,
//! the trigonometric principal-value weights and the trapezoidal rule.
//!
//! Tangential derivatives in the regularized hyper-singular operator are
//! applied as exact differentiation of the trigonometric interpolant.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{closed_nodes, ClosedCurve, ClosedNodes, Point};
use crate::kernels::{
    helmholtz_diag_smooth, pi_diag_log, pi_diag_smooth, pi_n_from, rot, v0_diag_smooth, v0_tensor,
    Mat2, PairEval, Part, C64,
};
use crate::material::Material;
use crate::operator::{identity, kron_i2, scale_rows, set_block, OperatorMatrix, OperatorMeta};

/// Geometric data of one boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geom {
    pub s: f64,
    pub x: Point,
    pub speed: f64,
    pub normal: Point,
}

impl Geom {
    pub fn at(curve: &ClosedCurve, s: f64) -> Self {
        let j = curve.jet(s);
        let sp = j.dx[0].hypot(j.dx[1]);
        Geom {
            s,
            x: j.x,
            speed: sp,
            normal: [j.dx[1] / sp, -j.dx[0] / sp],
        }
    }

    pub fn tangent(&self) -> Point {
        [-self.normal[1], self.normal[0]]
    }
}

fn node_geoms(nodes: &ClosedNodes) -> Vec<Geom> {
    (0..nodes.len())
        .map(|j| Geom {
            s: nodes.s[j],
            x: nodes.x[j],
            speed: nodes.speed[j],
            normal: nodes.normal[j],
        })
        .collect()
}

/// Martensen–Kussmaul weights `R(2 pi k / n)`, `k = 0..n-1`.
pub fn log_weights(n: usize) -> Vec<f64> {
    let h = n / 2;
    (0..n)
        .map(|k| {
            let x = 2.0 * PI * k as f64 / n as f64;
            let s: f64 = (1..h).map(|m| (m as f64 * x).cos() / m as f64).sum();
            -2.0 * PI / h as f64 * s - PI / (h * h) as f64 * (h as f64 * x).cos()
        })
        .collect()
}

/// Principal-value weights for `cot((sigma - s)/2)`: `T(2 pi k / n)` with
/// `k = (i - j) mod n`.
pub fn cot_weights(n: usize) -> Vec<f64> {
    let h = n / 2;
    (0..n)
        .map(|k| {
            let x = 2.0 * PI * k as f64 / n as f64;
            let s: f64 = (1..h).map(|m| (m as f64 * x).sin()).sum();
            -4.0 * PI / n as f64 * s
        })
        .collect()
}

/// Fourier differentiation matrix on `n` equispaced nodes (even `n`).
pub fn diff_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            let k = i as i64 - j as i64;
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            0.5 * sign / (PI * k as f64 / n as f64).tan()
        }
    })
}

/// Interleaved tangential derivative `diag(1/|x'|) d/ds` acting on 2-vectors.
fn tangential_derivative(nodes: &ClosedNodes) -> (DMatrix<C64>, DMatrix<C64>) {
    let d = kron_i2(&diff_matrix(nodes.len()));
    let mut left = d.clone();
    let inv: Vec<f64> = nodes.speed.iter().map(|s| 1.0 / s).collect();
    scale_rows(&mut left, &inv);
    (left, d)
}

/// How the coincident-point values `(K1, K2)` of a kernel are obtained.
pub enum Diagonal {
    Given(Vec<(Mat2, Mat2)>),
    /// Symmetric Richardson extrapolation of the split pieces.
    Extrapolate,
}

/// One kernel entering a Nyström assembly.
pub struct KernelSpec {
    pub cauchy: Option<Mat2>,
    pub diagonal: Diagonal,
}

const RICHARDSON_H0: f64 = 0.05;
const RICHARDSON_LEVELS: usize = 4;

fn split_pieces(full: Mat2, log: Mat2, cauchy: Option<Mat2>, s: f64, sigma: f64) -> (Mat2, Mat2) {
    let k1 = log * C64::from(0.5);
    let sn = ((s - sigma) / 2.0).sin();
    let mut k2 = full - k1 * C64::from((4.0 * sn * sn).ln());
    if let Some(kc) = cauchy {
        k2 -= kc * C64::from(1.0 / ((sigma - s) / 2.0).tan());
    }
    (k1, k2)
}

fn richardson<F>(f: F) -> Result<(Mat2, Mat2)>
where
    F: Fn(f64) -> Result<(Mat2, Mat2)>,
{
    let mut table: Vec<(Mat2, Mat2)> = Vec::with_capacity(RICHARDSON_LEVELS);
    for k in 0..RICHARDSON_LEVELS {
        table.push(f(RICHARDSON_H0 / 2f64.powi(k as i32))?);
    }
    // f(h) = f0 + a h^2 + b h^4 + ...
    for level in 1..RICHARDSON_LEVELS {
        let p = 4f64.powi(level as i32);
        for k in (level..RICHARDSON_LEVELS).rev() {
            let (a1, a2) = table[k];
            let (b1, b2) = table[k - 1];
            table[k] = (
                (a1 * C64::from(p) - b1) / C64::from(p - 1.0),
                (a2 * C64::from(p) - b2) / C64::from(p - 1.0),
            );
        }
    }
    Ok(table[RICHARDSON_LEVELS - 1])
}

/// Assembles `K` kernels that share one pair evaluation.
///
/// `kern(target, source)` returns `(full, log)` per kernel, both already
/// multiplied by any source arc-length factor.
pub fn nystrom<const K: usize, F>(
    curve: &ClosedCurve,
    nodes: &ClosedNodes,
    specs: &[KernelSpec; K],
    kern: F,
) -> Result<[DMatrix<C64>; K]>
where
    F: Fn(&Geom, &Geom) -> Result<[(Mat2, Mat2); K]> + Sync,
{
    let n = nodes.len();
    let geoms = node_geoms(nodes);
    let rw = log_weights(n);
    let tw = cot_weights(n);
    let h = 2.0 * PI / n as f64;
    let rows: Vec<Result<Vec<[Mat2; K]>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let gi = &geoms[i];
            let mut row = vec![[Mat2::zeros(); K]; n];
            for j in 0..n {
                let pieces: [(Mat2, Mat2); K] = if i == j {
                    let mut out = [(Mat2::zeros(), Mat2::zeros()); K];
                    let need_fd = specs
                        .iter()
                        .any(|s| matches!(s.diagonal, Diagonal::Extrapolate));
                    let fd = if need_fd {
                        let mut acc = Vec::with_capacity(K);
                        for q in 0..K {
                            acc.push(richardson(|dh| {
                                let mut sum = (Mat2::zeros(), Mat2::zeros());
                                for sgn in [1.0, -1.0] {
                                    let sigma = gi.s + sgn * dh;
                                    let gj = Geom::at(curve, sigma);
                                    let v = kern(gi, &gj)?;
                                    let (k1, k2) =
                                        split_pieces(v[q].0, v[q].1, specs[q].cauchy, gi.s, sigma);
                                    sum.0 += k1 * C64::from(0.5);
                                    sum.1 += k2 * C64::from(0.5);
                                }
                                Ok(sum)
                            })?);
                        }
                        Some(acc)
                    } else {
                        None
                    };
                    for q in 0..K {
                        out[q] = match &specs[q].diagonal {
                            Diagonal::Given(v) => v[i],
                            Diagonal::Extrapolate => fd.as_ref().unwrap()[q],
                        };
                    }
                    out
                } else {
                    let v = kern(gi, &geoms[j])?;
                    let mut out = [(Mat2::zeros(), Mat2::zeros()); K];
                    for q in 0..K {
                        out[q] = split_pieces(v[q].0, v[q].1, specs[q].cauchy, gi.s, geoms[j].s);
                    }
                    out
                };
                let k = (i + n - j) % n;
                for q in 0..K {
                    let (k1, k2) = pieces[q];
                    let mut e = k1 * C64::from(rw[k]) + k2 * C64::from(h);
                    if let Some(kc) = specs[q].cauchy {
                        e += kc * C64::from(tw[k]);
                    }
                    row[j][q] = e;
                }
            }
            Ok(row)
        })
        .collect();
    let mut out: [DMatrix<C64>; K] = std::array::from_fn(|_| DMatrix::zeros(2 * n, 2 * n));
    for (i, row) in rows.into_iter().enumerate() {
        let row = row?;
        for (j, blocks) in row.iter().enumerate() {
            for q in 0..K {
                set_block(&mut out[q], i, j, &blocks[q]);
            }
        }
    }
    Ok(out)
}

fn meta(m: &Material, curve: &ClosedCurve, n: usize, name: &str) -> OperatorMeta {
    OperatorMeta {
        name: name.to_string(),
        curve: curve_label(curve),
        nodes: n,
        material: *m,
    }
}

pub fn curve_label(curve: &ClosedCurve) -> String {
    use crate::geometry::ClosedShape;
    match &curve.shape {
        ClosedShape::Circle { radius, .. } => format!("circle:r={radius}"),
        ClosedShape::Ellipse { a, b } => format!("ellipse:a={a},b={b}"),
        ClosedShape::Kite => "kite".into(),
        ClosedShape::Trig { a, .. } => format!("sampled:{}", 2 * a.len() + 1),
    }
}

fn scaled(m: Mat2, s: f64) -> Mat2 {
    m * C64::from(s)
}

/// Single-layer operator `S`.
pub fn assemble_s(m: &Material, curve: &ClosedCurve, n: usize) -> Result<OperatorMatrix> {
    m.validate()?;
    let nodes = closed_nodes(curve, n)?;
    let diag = (0..n)
        .map(|i| {
            let sp = nodes.speed[i];
            let l = pi_diag_log(m);
            let sm = pi_diag_smooth(m, nodes.tangent[i]) + l * C64::from(sp.ln());
            (scaled(l, 0.5 * sp), scaled(sm, sp))
        })
        .collect();
    let spec = [KernelSpec {
        cauchy: None,
        diagonal: Diagonal::Given(diag),
    }];
    let [s] = nystrom(curve, &nodes, &spec, |x, y| {
        let f = PairEval::new(m, x.x, y.x, Part::Full)?;
        let l = PairEval::new(m, x.x, y.x, Part::LogCoefficient)?;
        Ok([(scaled(f.pi(), y.speed), scaled(l.pi(), y.speed))])
    })?;
    OperatorMatrix::new(s, meta(m, curve, n, "S"))
}

fn cauchy_coefficient(m: &Material) -> Mat2 {
    rot() * C64::from(m.constants().c_tilde / (2.0 * PI))
}

/// Double-layer operator `D`.
pub fn assemble_d(m: &Material, curve: &ClosedCurve, n: usize) -> Result<OperatorMatrix> {
    assemble_double_layer(m, curve, n, false)
}

/// Adjoint double-layer operator `D*`.
pub fn assemble_dstar(m: &Material, curve: &ClosedCurve, n: usize) -> Result<OperatorMatrix> {
    assemble_double_layer(m, curve, n, true)
}

fn assemble_double_layer(
    m: &Material,
    curve: &ClosedCurve,
    n: usize,
    adjoint: bool,
) -> Result<OperatorMatrix> {
    m.validate()?;
    let nodes = closed_nodes(curve, n)?;
    let spec = [KernelSpec {
        cauchy: Some(cauchy_coefficient(m)),
        diagonal: Diagonal::Extrapolate,
    }];
    let [d] = nystrom(curve, &nodes, &spec, |x, y| {
        let f = PairEval::new(m, x.x, y.x, Part::Full)?;
        let l = PairEval::new(m, x.x, y.x, Part::LogCoefficient)?;
        let (kf, kl) = if adjoint {
            (f.traction_x(x.normal), l.traction_x(x.normal))
        } else {
            (f.traction_y(y.normal), l.traction_y(y.normal))
        };
        Ok([(scaled(kf, y.speed), scaled(kl, y.speed))])
    })?;
    OperatorMatrix::new(d, meta(m, curve, n, if adjoint { "Dstar" } else { "D" }))
}

/// Hyper-singular operator `N` in regularized form; `omega == 0` gives the
/// static `d_tau V0 d_tau`.
pub fn assemble_n(m: &Material, curve: &ClosedCurve, n: usize) -> Result<OperatorMatrix> {
    m.validate()?;
    let nodes = closed_nodes(curve, n)?;
    let (dl, dr) = tangential_derivative(&nodes);
    if m.is_static() {
        let diag = (0..n)
            .map(|i| {
                let l = Mat2::identity() * C64::from(-m.constants().c1_t);
                let sm = v0_diag_smooth(m, nodes.tangent[i]) + l * C64::from(nodes.speed[i].ln());
                (scaled(l, 0.5), sm)
            })
            .collect();
        let spec = [KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(diag),
        }];
        let [v] = nystrom(curve, &nodes, &spec, |x, y| {
            Ok([(
                v0_tensor(m, x.x, y.x, Part::Full)?,
                v0_tensor(m, x.x, y.x, Part::LogCoefficient)?,
            )])
        })?;
        let n0 = &dl * v * &dr;
        return OperatorMatrix::new(n0, meta(m, curve, n, "N"));
    }

    let s = m.mu + m.mu_tilde;
    let ks = m.k_s();
    let gdiag = helmholtz_diag_smooth(ks);
    let glog = C64::from(-1.0 / (2.0 * PI));
    let mut d1 = Vec::with_capacity(n);
    let mut d2 = Vec::with_capacity(n);
    let mut d3 = Vec::with_capacity(n);
    let zero = (Mat2::zeros(), Mat2::zeros());
    for i in 0..n {
        let sp = nodes.speed[i];
        let lsp = C64::from(sp.ln());
        let nu = nodes.normal[i];
        let l1 = pi_n_from(m, nu, nu, glog, glog);
        let s1 = pi_n_from(m, nu, nu, gdiag, helmholtz_diag_smooth(m.k_p())) + l1 * lsp;
        d1.push((scaled(l1, 0.5 * sp), scaled(s1, sp)));
        let a = rot();
        let l2 = a * pi_diag_log(m) * a;
        let s2 = a * pi_diag_smooth(m, nodes.tangent[i]) * a + l2 * lsp;
        d2.push((scaled(l2, 0.5), s2));
        let l3 = Mat2::identity() * glog;
        d3.push((scaled(l3, 0.5), Mat2::identity() * (gdiag + glog * lsp)));
    }
    let specs = [
        KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(d1),
        },
        KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(d2),
        },
        KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(d3),
        },
        KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(vec![zero; n]),
        },
        KernelSpec {
            cauchy: None,
            diagonal: Diagonal::Given(vec![zero; n]),
        },
    ];
    let [k1, k2, k3, k4, k5] = nystrom(curve, &nodes, &specs, |x, y| {
        let f = PairEval::new(m, x.x, y.x, Part::Full)?;
        let l = PairEval::new(m, x.x, y.x, Part::LogCoefficient)?;
        let one = Mat2::identity();
        Ok([
            (
                scaled(f.pi_n(x.normal, y.normal), y.speed),
                scaled(l.pi_n(x.normal, y.normal), y.speed),
            ),
            (f.a_pi_a(), l.a_pi_a()),
            (one * f.g_s, one * l.g_s),
            (f.nu_grad_a(x.normal), l.nu_grad_a(x.normal)),
            (
                scaled(f.a_grad_nu(y.normal), y.speed),
                scaled(l.a_grad_nu(y.normal), y.speed),
            ),
        ])
    })?;
    let c = |v: f64| C64::from(v);
    let total =
        k1 + (&dl * (k2 * c(s * s) + k3 * c(2.0 * s)) * &dr) - k4 * &dr * c(s) - &dl * k5 * c(s);
    OperatorMatrix::new(total, meta(m, curve, n, "N"))
}

/// The four boundary operators at a common set of nodes.
pub struct ClosedOperators {
    pub s: OperatorMatrix,
    pub d: OperatorMatrix,
    pub dstar: OperatorMatrix,
    pub n: OperatorMatrix,
}

pub fn assemble_all(m: &Material, curve: &ClosedCurve, n: usize) -> Result<ClosedOperators> {
    Ok(ClosedOperators {
        s: assemble_s(m, curve, n)?,
        d: assemble_d(m, curve, n)?,
        dstar: assemble_dstar(m, curve, n)?,
        n: assemble_n(m, curve, n)?,
    })
}

/// Calderón compositions and the residual of `NS + I/4 - (D*)^2`.
#[derive(Debug, Clone)]
pub struct Calderon {
    pub ns: OperatorMatrix,
    pub sn: OperatorMatrix,
    pub residual: f64,
}

pub const CALDERON_PROBES: usize = 10;

/// Smooth random densities: low Fourier modes with decaying amplitudes.
pub fn smooth_probes(nodes: usize, count: usize, seed: u64) -> Vec<DVector<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let modes = 6;
            let coef: Vec<[C64; 2]> = (0..=modes)
                .map(|_| {
                    let mut c = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    [c(), c()]
                })
                .collect();
            let phase: Vec<f64> = (0..=modes).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            DVector::from_fn(2 * nodes, |idx, _| {
                let (j, comp) = (idx / 2, idx % 2);
                let s = 2.0 * PI * j as f64 / nodes as f64;
                (0..=modes)
                    .map(|k| {
                        coef[k][comp] * ((k as f64 * s + phase[k]).cos() / (1.0 + k as f64).powi(2))
                    })
                    .sum()
            })
        })
        .collect()
}

pub fn calderon_compose(
    s: &OperatorMatrix,
    n: &OperatorMatrix,
    dstar: &OperatorMatrix,
    seed: u64,
) -> Result<Calderon> {
    let ns = n.compose(s, "NS")?;
    let sn = s.compose(n, "SN")?;
    let d2 = dstar.compose(dstar, "Dstar^2")?;
    let quarter = identity(s.nodes()) * C64::from(0.25);
    let r = &ns.data + quarter - &d2.data;
    let residual = smooth_probes(s.nodes(), CALDERON_PROBES, seed)
        .iter()
        .map(|v| (&r * v).norm() / v.norm())
        .fold(0.0, f64::max);
    Ok(Calderon { ns, sn, residual })
}

/// Assembles all operators and composes them.
pub fn calderon_check(m: &Material, curve: &ClosedCurve, n: usize, seed: u64) -> Result<Calderon> {
    let ops = assemble_all(m, curve, n)?;
    calderon_compose(&ops.s, &ops.n, &ops.dstar, seed)
}
