//! Weighted open-arc operators in the cosine variable `t = cos(theta)`.
//!
//! Node values live at `theta_j = (2j+1) pi / (2M)`. Cosine series store the
//! coefficients `a_m` of `v = a_0/2 + sum a_m cos(m theta)`, each a complex
//! 2-vector. The straight-arc reference operators act exactly on the cosine
//! basis `e_n = cos(n theta)`; node-space matrices are built by sandwiching
//! those maps between the discrete cosine transform and its inverse.

use std::f64::consts::{LN_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{arc_nodes, ArcNodes, OpenArc};
use crate::kernels::{
    arc_kernel, arc_kernel_diag, helmholtz_diag_smooth, pi_n_from, ArcKernel, Mat2, PairEval, Part,
};
use crate::material::{Constants, Material};
use crate::operator::{set_block, OperatorMatrix, OperatorMeta};

pub type Vec2 = [C64; 2];

const ZERO2: Vec2 = [C64::ZERO, C64::ZERO];

/// Cosine coefficients `a_m`, `m = 0..len`, with the `a_0/2` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    pub coeffs: Vec<Vec2>,
}

impl CosineSeries {
    pub fn zeros(len: usize) -> Self {
        CosineSeries {
            coeffs: vec![ZERO2; len],
        }
    }

    /// `cos(n theta)` times the constant vector `v`, in a series of length `len`.
    pub fn basis(n: usize, v: Vec2, len: usize) -> Self {
        let mut s = CosineSeries::zeros(len.max(n + 1));
        s.coeffs[n] = if n == 0 { [v[0] * 2.0, v[1] * 2.0] } else { v };
        s
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients of `v` on `e_n`, i.e. `a_0/2, a_1, a_2, ...`.
    pub fn basis_coeffs(&self) -> Vec<Vec2> {
        let mut c = self.coeffs.clone();
        if let Some(c0) = c.first_mut() {
            *c0 = [c0[0] * 0.5, c0[1] * 0.5];
        }
        c
    }

    pub fn from_basis_coeffs(mut c: Vec<Vec2>) -> Self {
        if let Some(c0) = c.first_mut() {
            *c0 = [c0[0] * 2.0, c0[1] * 2.0];
        }
        CosineSeries { coeffs: c }
    }

    pub fn eval(&self, theta: f64) -> Vec2 {
        let mut out = ZERO2;
        for (m, a) in self.basis_coeffs().iter().enumerate() {
            let c = (m as f64 * theta).cos();
            out[0] += a[0] * c;
            out[1] += a[1] * c;
        }
        out
    }

    /// Keeps the first `len` coefficients; returns the dropped tail's 2-norm.
    pub fn truncate(&mut self, len: usize) -> f64 {
        let tail: f64 = self
            .coeffs
            .iter()
            .skip(len)
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .sum();
        self.coeffs.resize(len, ZERO2);
        tail.sqrt()
    }

    /// Index of the last coefficient above `tol` in modulus.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|a| a[0].norm() > tol || a[1].norm() > tol)
    }

    pub fn max_diff(&self, other: &CosineSeries) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|m| {
                let a = self.coeffs.get(m).copied().unwrap_or(ZERO2);
                let b = other.coeffs.get(m).copied().unwrap_or(ZERO2);
                (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
            })
            .fold(0.0, f64::max)
    }
}

/// Cosine node `theta_j` of an `m`-point grid.
pub fn cosine_node(j: usize, m: usize) -> f64 {
    (2 * j + 1) as f64 * PI / (2 * m) as f64
}

/// Interpolating cosine coefficients of node values.
pub fn dct_forward(values: &[Vec2]) -> Result<CosineSeries> {
    let m = values.len();
    if m == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let coeffs = (0..m)
        .map(|k| {
            let mut a = ZERO2;
            for (j, v) in values.iter().enumerate() {
                let c = (k as f64 * cosine_node(j, m)).cos();
                a[0] += v[0] * c;
                a[1] += v[1] * c;
            }
            let s = 2.0 / m as f64;
            [a[0] * s, a[1] * s]
        })
        .collect();
    Ok(CosineSeries { coeffs })
}

/// Values of a series at the `m`-point cosine grid.
pub fn dct_inverse(series: &CosineSeries, m: usize) -> Vec<Vec2> {
    (0..m).map(|j| series.eval(cosine_node(j, m))).collect()
}

/// `(|a_0|^2 + 2 sum m^{2s} |a_m|^2)^{1/2}` on the stored coefficients.
pub fn sobolev_norm(series: &CosineSeries, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!(
            "Sobolev index must be >= 0, got {s}"
        )));
    }
    let sq = |a: &Vec2| a[0].norm_sqr() + a[1].norm_sqr();
    let mut acc = series.coeffs.first().map(sq).unwrap_or(0.0);
    for (m, a) in series.coeffs.iter().enumerate().skip(1) {
        acc += 2.0 * (m as f64).powf(2.0 * s) * sq(a);
    }
    Ok(acc.sqrt())
}

pub fn to_nodes(v: &DVector<C64>) -> Vec<Vec2> {
    (0..v.len() / 2).map(|j| [v[2 * j], v[2 * j + 1]]).collect()
}

pub fn from_nodes(v: &[Vec2]) -> DVector<C64> {
    DVector::from_fn(2 * v.len(), |i, _| v[i / 2][i % 2])
}

fn map_basis(
    series: &CosineSeries,
    out_len: usize,
    f: impl Fn(usize, Vec2, &mut Vec<Vec2>),
) -> CosineSeries {
    let mut out = vec![ZERO2; out_len];
    for (n, c) in series.basis_coeffs().into_iter().enumerate() {
        if c != ZERO2 {
            f(n, c, &mut out);
        }
    }
    CosineSeries::from_basis_coeffs(out)
}

fn axpy(out: &mut [Vec2], k: usize, s: f64, c: Vec2) {
    out[k][0] += c[0] * s;
    out[k][1] += c[1] * s;
}

/// Adds `s U_{n-1}(cos theta) c = s sin(n theta)/sin(theta) c` on the basis.
fn add_chebyshev_u(out: &mut [Vec2], n: usize, s: f64, c: Vec2) {
    let mut j = n as isize - 1;
    while j >= 0 {
        axpy(out, j as usize, if j == 0 { s } else { 2.0 * s }, c);
        j -= 2;
    }
}

/// `T0[g] = d/dtheta (g sin theta)`; raises the degree by one.
pub fn op_t0(series: &CosineSeries) -> CosineSeries {
    map_basis(series, series.len() + 1, |n, c, out| {
        if n == 0 {
            axpy(out, 1, 1.0, c);
        } else {
            let nf = n as f64;
            axpy(out, n + 1, 0.5 * (1.0 + nf), c);
            axpy(out, n - 1, 0.5 * (1.0 - nf), c);
        }
    })
}

/// `D0[g] = g' / sin theta`; `e_m -> -m U_{m-1}(cos theta)`.
pub fn op_d0(series: &CosineSeries) -> CosineSeries {
    map_basis(
        series,
        series.len().saturating_sub(1).max(1),
        |n, c, out| add_chebyshev_u(out, n, -(n as f64), c),
    )
}

/// `C[e_n] = sin(n theta) / (n sin theta)`, `C[e_0] = 0`.
pub fn op_c(series: &CosineSeries) -> CosineSeries {
    map_basis(
        series,
        series.len().saturating_sub(1).max(1),
        |n, c, out| {
            if n > 0 {
                add_chebyshev_u(out, n, 1.0 / n as f64, c)
            }
        },
    )
}

/// Multiplication by the arc Jacobian at the series' own cosine grid.
pub fn op_z0(arc: &OpenArc, series: &CosineSeries) -> Result<CosineSeries> {
    let m = series.len();
    let nodes = arc_nodes(arc, m.max(2))?;
    let mut v = dct_inverse(series, nodes.len());
    for (vj, &jac) in v.iter_mut().zip(&nodes.jac) {
        *vj = [vj[0] * jac, vj[1] * jac];
    }
    let mut out = dct_forward(&v)?;
    out.truncate(m);
    Ok(out)
}

/// Eigenvalues `(lambda_1n, lambda_2n)` of a Symm-type diagonal operator
/// with log coefficient `a` and `e_1 e_1^T` coefficient `b`.
fn symm_eigs(a: f64, b: f64, n: usize) -> [f64; 2] {
    if n == 0 {
        [PI * (a * LN_2 + b), PI * a * LN_2]
    } else {
        [PI * a / n as f64; 2]
    }
}

fn diag_map(series: &CosineSeries, a: f64, b: f64, invert: bool) -> Result<CosineSeries> {
    let mut out = series.clone();
    for (n, c) in out.coeffs.iter_mut().enumerate() {
        let l = symm_eigs(a, b, n);
        for k in 0..2 {
            c[k] = if invert {
                if l[k] == 0.0 {
                    return Err(Error::Inadmissible(format!(
                        "zero diagonal entry at n = {n}"
                    )));
                }
                c[k] / l[k]
            } else {
                c[k] * l[k]
            };
        }
    }
    Ok(out)
}

/// Eigenvalues `(lambda^S_{1n}, lambda^S_{2n})` of the straight-arc single layer.
pub fn s0_eigs(c: &Constants, n: usize) -> [f64; 2] {
    symm_eigs(c.c1, c.c2, n)
}

/// Eigenvalues `(lambda^V_{1n}, lambda^V_{2n})` of the straight-arc `V0`.
pub fn v0_eigs(c: &Constants, n: usize) -> [f64; 2] {
    symm_eigs(c.c1_t, c.c2_t, n)
}

pub fn op_s0_diag(c: &Constants, series: &CosineSeries) -> CosineSeries {
    diag_map(series, c.c1, c.c2, false).expect("forward map")
}

pub fn op_v0_diag(c: &Constants, series: &CosineSeries) -> CosineSeries {
    diag_map(series, c.c1_t, c.c2_t, false).expect("forward map")
}

pub fn op_s0_inverse(c: &Constants, series: &CosineSeries) -> Result<CosineSeries> {
    diag_map(series, c.c1, c.c2, true)
}

pub fn op_v0_inverse(c: &Constants, series: &CosineSeries) -> Result<CosineSeries> {
    diag_map(series, c.c1_t, c.c2_t, true)
}

/// `N0 = D0 V0 T0` on the straight arc.
pub fn op_n0_straight(c: &Constants, series: &CosineSeries) -> CosineSeries {
    op_d0(&op_v0_diag(c, &op_t0(series)))
}

/// `J0 = N0 S0` on the straight arc.
pub fn op_j0(c: &Constants, series: &CosineSeries) -> CosineSeries {
    op_n0_straight(c, &op_s0_diag(c, series))
}

/// `J0^{-1} = -(pi^2 c1_t^2)^{-1} S0^{-1} C V0 T0`.
pub fn op_j0_inverse(m: &Material, series: &CosineSeries) -> Result<CosineSeries> {
    m.require_admissible()?;
    let c = m.constants();
    let inner = op_c(&op_v0_diag(&c, &op_t0(series)));
    let mut out = op_s0_inverse(&c, &inner)?;
    let s = -1.0 / (PI * PI * c.c1_t * c.c1_t);
    for a in out.coeffs.iter_mut() {
        *a = [a[0] * s, a[1] * s];
    }
    Ok(out)
}

/// Node-space matrix of a coefficient map on the `m`-point grid.
pub fn node_matrix<F>(m: usize, f: F) -> Result<DMatrix<C64>>
where
    F: Fn(&CosineSeries) -> Result<CosineSeries> + Sync,
{
    let cols: Vec<Result<Vec<Vec2>>> = (0..2 * m)
        .into_par_iter()
        .map(|col| {
            let mut v = vec![ZERO2; m];
            v[col / 2][col % 2] = C64::ONE;
            let mut out = f(&dct_forward(&v)?)?;
            out.truncate(m);
            Ok(dct_inverse(&out, m))
        })
        .collect();
    let mut a = DMatrix::zeros(2 * m, 2 * m);
    for (col, c) in cols.into_iter().enumerate() {
        a.set_column(col, &from_nodes(&c?));
    }
    Ok(a)
}

/// Product weights `W_j(theta_i)` with
/// `int_0^pi ln|cos theta - cos t| g(t) dt ~ sum_j W_j(theta) g(theta_j)`,
/// exact for cosine polynomials of degree below `m`.
pub fn log_weights(m: usize) -> DMatrix<f64> {
    let mf = m as f64;
    DMatrix::from_fn(m, m, |i, j| {
        let (ti, tj) = (cosine_node(i, m), cosine_node(j, m));
        let mut s = -0.5 * PI * LN_2;
        for k in 1..m {
            let kf = k as f64;
            s -= PI / kf * (kf * ti).cos() * (kf * tj).cos();
        }
        2.0 / mf * s
    })
}

/// Quadrature of one kernel on the arc grid. `kern(i, j)` returns
/// `(full, log coefficient of ln r)`, `diag(i)` returns
/// `(log coefficient, lim [K - log ln r])` at coincident nodes.
fn arc_nystrom<const K: usize, F, G>(
    nodes: &ArcNodes,
    logw: &DMatrix<f64>,
    weights: [&[f64]; K],
    diag: G,
    kern: F,
) -> Result<[DMatrix<C64>; K]>
where
    F: Fn(usize, usize) -> Result<[(Mat2, Mat2); K]> + Sync,
    G: Fn(usize) -> [(Mat2, Mat2); K] + Sync,
{
    let m = nodes.len();
    let h = PI / m as f64;
    let rows: Vec<Result<Vec<[Mat2; K]>>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![[Mat2::zeros(); K]; m];
            for (j, out) in row.iter_mut().enumerate() {
                let pieces = if i == j {
                    let d = diag(i);
                    let lj = nodes.jac[i].ln();
                    d.map(|(log, sm)| (log, sm + log * C64::from(lj)))
                } else {
                    let lt = (nodes.t[i] - nodes.t[j]).abs().ln();
                    kern(i, j)?.map(|(full, log)| (log, full - log * C64::from(lt)))
                };
                for q in 0..K {
                    let (log, rest) = pieces[q];
                    out[q] = (log * C64::from(logw[(i, j)]) + rest * C64::from(h))
                        * C64::from(weights[q][j]);
                }
            }
            Ok(row)
        })
        .collect();
    let mut out: [DMatrix<C64>; K] = std::array::from_fn(|_| DMatrix::zeros(2 * m, 2 * m));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, blocks) in row?.iter().enumerate() {
            for q in 0..K {
                set_block(&mut out[q], i, j, &blocks[q]);
            }
        }
    }
    Ok(out)
}

pub fn arc_label(arc: &OpenArc) -> String {
    use crate::geometry::ArcShape;
    match &arc.shape {
        ArcShape::Straight => "arc:straight".into(),
        ArcShape::Parabola => "arc:parabola".into(),
        ArcShape::Spiral => "arc:spiral".into(),
        ArcShape::Chebyshev { coeffs } => format!("arc:sampled:{}", coeffs.len()),
    }
}

fn meta(m: &Material, arc: &OpenArc, n: usize, name: &str) -> OperatorMeta {
    OperatorMeta {
        name: name.to_string(),
        curve: arc_label(arc),
        nodes: n,
        material: *m,
    }
}

/// Discretization of the weighted operators at a common grid.
pub struct ArcGrid {
    pub nodes: ArcNodes,
    pub logw: DMatrix<f64>,
}

impl ArcGrid {
    pub fn new(arc: &OpenArc, m: usize) -> Result<Self> {
        Ok(ArcGrid {
            nodes: arc_nodes(arc, m)?,
            logw: log_weights(m),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sin^2(theta_j) J(theta_j)`, the weight of kernels acting on `w psi^w`.
    pub fn neumann_weight(&self) -> Vec<f64> {
        self.nodes
            .sin_theta
            .iter()
            .zip(&self.nodes.jac)
            .map(|(s, j)| s * s * j)
            .collect()
    }

    fn split_kernel(
        &self,
        m: &Material,
        kernel: ArcKernel,
        weight: &[f64],
    ) -> Result<DMatrix<C64>> {
        let n = &self.nodes;
        let [a] = arc_nystrom(
            n,
            &self.logw,
            [weight],
            |i| [arc_kernel_diag(m, kernel, n.tangent[i])],
            |i, j| {
                Ok([(
                    arc_kernel(m, kernel, n.x[i], n.x[j], Part::Full)?,
                    arc_kernel(m, kernel, n.x[i], n.x[j], Part::LogCoefficient)?,
                )])
            },
        )?;
        Ok(a)
    }
}

/// Weighted single layer `int Pi(x(cos th), x(cos t)) g(t) J(t) dt`.
pub fn assemble_sw(m: &Material, arc: &OpenArc, n: usize) -> Result<OperatorMatrix> {
    m.validate()?;
    let grid = ArcGrid::new(arc, n)?;
    let s = grid.split_kernel(m, ArcKernel::Pi, &grid.nodes.jac)?;
    OperatorMatrix::new(s, meta(m, arc, n, "Sw"))
}

/// `int [(mu + mu_t)^2 A Pi A + 2 (mu + mu_t) G_{k_s}] g(t) dt`, without the
/// Jacobian; the static kernel `-c1_t ln r I + c2_t d d^T / r^2` at `omega = 0`.
pub fn assemble_vw(m: &Material, arc: &OpenArc, n: usize) -> Result<OperatorMatrix> {
    m.validate()?;
    let grid = ArcGrid::new(arc, n)?;
    let ones = vec![1.0; n];
    let v = grid.split_kernel(m, ArcKernel::V, &ones)?;
    OperatorMatrix::new(v, meta(m, arc, n, "Vw"))
}

/// The three pieces of the weighted hyper-singular operator.
pub struct NwParts {
    pub g1: DMatrix<C64>,
    pub g2: DMatrix<C64>,
    pub pv: DMatrix<C64>,
}

/// Node-space resampling: interpolate on the `from` grid, keep degrees below
/// `min(from, to)` and evaluate on the `to` grid.
pub fn resample_matrix(from: usize, to: usize) -> Result<DMatrix<C64>> {
    let keep = from.min(to);
    let mut a = DMatrix::zeros(2 * to, 2 * from);
    for col in 0..2 * from {
        let mut v = vec![ZERO2; from];
        v[col / 2][col % 2] = C64::ONE;
        let mut s = dct_forward(&v)?;
        s.truncate(keep);
        a.set_column(col, &from_nodes(&dct_inverse(&s, to)));
    }
    Ok(a)
}

/// Extra cosine modes carried while composing degree-raising maps.
pub const WORK_MODES: usize = 2;

/// Weighted hyper-singular operator `N[w psi^w]` as `g1 + g2 + pv`:
/// `g1` integrates `Pi^N sin^2 J`, `g2 = R1 T0 + Z0^{-1} D0 R2` and
/// `pv = Z0^{-1} D0 V T0`.
///
/// `T0` raises the cosine degree to `n`, which the `n`-point grid cannot
/// hold, so the pieces are assembled on an `n + 2` grid and resampled.
pub fn assemble_nw_parts(m: &Material, arc: &OpenArc, n: usize) -> Result<NwParts> {
    m.validate()?;
    let w = n + WORK_MODES;
    let grid = ArcGrid::new(arc, w)?;
    let nodes = &grid.nodes;
    let ones = vec![1.0; w];
    let t0 = node_matrix(w, |s| Ok(op_t0(s)))?;
    let mut zd0 = node_matrix(w, |s| Ok(op_d0(s)))?;
    let inv_jac: Vec<f64> = nodes.jac.iter().map(|j| 1.0 / j).collect();
    crate::operator::scale_rows(&mut zd0, &inv_jac);
    let up = resample_matrix(n, w)?;
    let down = resample_matrix(w, n)?;
    let project = |a: DMatrix<C64>| &down * a * &up;

    let v = grid.split_kernel(m, ArcKernel::V, &ones)?;
    let pv = project(&zd0 * v * &t0);
    if m.is_static() {
        let z = DMatrix::zeros(2 * n, 2 * n);
        return Ok(NwParts {
            g1: z.clone(),
            g2: z,
            pv,
        });
    }

    let sw = grid.neumann_weight();
    let s = m.mu + m.mu_tilde;
    let glog = C64::from(-1.0 / (2.0 * PI));
    let gs0 = helmholtz_diag_smooth(m.k_s());
    let gp0 = helmholtz_diag_smooth(m.k_p());
    let zero = (Mat2::zeros(), Mat2::zeros());
    let [g1, r1, r2] = arc_nystrom(
        nodes,
        &grid.logw,
        [&sw, &ones, &sw],
        |i| {
            let nu = nodes.normal[i];
            [
                (
                    pi_n_from(m, nu, nu, glog, glog),
                    pi_n_from(m, nu, nu, gs0, gp0),
                ),
                zero,
                zero,
            ]
        },
        |i, j| {
            let (x, y) = (nodes.x[i], nodes.x[j]);
            let (nx, ny) = (nodes.normal[i], nodes.normal[j]);
            let f = PairEval::new(m, x, y, Part::Full)?;
            let l = PairEval::new(m, x, y, Part::LogCoefficient)?;
            Ok([
                (f.pi_n(nx, ny), l.pi_n(nx, ny)),
                (f.nu_grad_a(nx), l.nu_grad_a(nx)),
                (f.a_grad_nu(ny), l.a_grad_nu(ny)),
            ])
        },
    )?;
    let cs = C64::from(-s);
    let g2 = project(r1 * cs * &t0 + &zd0 * r2 * cs);
    Ok(NwParts {
        g1: project(g1),
        g2,
        pv,
    })
}

pub fn assemble_nw(m: &Material, arc: &OpenArc, n: usize) -> Result<OperatorMatrix> {
    let p = assemble_nw_parts(m, arc, n)?;
    OperatorMatrix::new(p.g1 + p.g2 + p.pv, meta(m, arc, n, "Nw"))
}

/// Straight-arc reference `J0` conjugated by the Jacobian:
/// `Z0^{-1} (N0 S0) Z0` in node space.
pub fn assemble_j0_jacobian(m: &Material, arc: &OpenArc, n: usize) -> Result<OperatorMatrix> {
    let c = m.constants();
    let nodes = arc_nodes(arc, n)?;
    let mut j0 = node_matrix(n, |s| Ok(op_j0(&c, s)))?;
    for (j, &jac) in nodes.jac.iter().enumerate() {
        for comp in 0..2 {
            j0.column_mut(2 * j + comp).scale_mut(jac);
        }
    }
    let inv: Vec<f64> = nodes.jac.iter().map(|j| 1.0 / j).collect();
    crate::operator::scale_rows(&mut j0, &inv);
    OperatorMatrix::new(j0, meta(m, arc, n, "J0J"))
}

/// `Jw = Nw Sw`, its reference part `J0^J` and the remainder `K = Jw - J0^J`.
pub struct ArcCalderon {
    pub jw: OperatorMatrix,
    pub j0j: OperatorMatrix,
    pub k: OperatorMatrix,
}

pub fn compose_jw(m: &Material, arc: &OpenArc, n: usize) -> Result<ArcCalderon> {
    let sw = assemble_sw(m, arc, n)?;
    let nw = assemble_nw(m, arc, n)?;
    let jw = nw.compose(&sw, "Jw")?;
    let j0j = assemble_j0_jacobian(m, arc, n)?;
    let k = OperatorMatrix::new(&jw.data - &j0j.data, meta(m, arc, n, "K"))?;
    Ok(ArcCalderon { jw, j0j, k })
}

/// One row of the straight-arc basis-action check.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DiagRow {
    pub n: usize,
    pub component: usize,
    pub operator: &'static str,
    pub error: f64,
}

/// Compares the discrete static operators on the straight arc with their
/// exact cosine-basis actions for `n = 0..=nodes-3`, and checks that the
/// inverse of `J0` is two-sided. Errors for `N` are relative to `max(|N e_n|, 1)`.
pub fn diagonal_check(m: &Material, nodes: usize) -> Result<Vec<DiagRow>> {
    if nodes < 4 {
        return Err(Error::Domain(format!("need at least 4 nodes, got {nodes}")));
    }
    let st = Material::stat(m.lambda, m.mu, m.mu_tilde)?;
    let c = st.constants();
    let arc = OpenArc::straight();
    let (sw, vw, nw) = (
        assemble_sw(&st, &arc, nodes)?,
        assemble_vw(&st, &arc, nodes)?,
        assemble_nw(&st, &arc, nodes)?,
    );
    let vmax = |v: &DVector<C64>| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let at = |s: &CosineSeries| from_nodes(&dct_inverse(s, nodes));
    let mut rows = Vec::new();
    for n in 0..=nodes - 3 {
        for comp in 0..2 {
            let mut unit = ZERO2;
            unit[comp] = C64::ONE;
            let e = CosineSeries::basis(n, unit, nodes);
            let v = at(&e);
            let mut push = |operator, error| {
                rows.push(DiagRow {
                    n,
                    component: comp,
                    operator,
                    error,
                })
            };
            push("S", vmax(&(sw.apply(&v)? - at(&op_s0_diag(&c, &e)))));
            push("V", vmax(&(vw.apply(&v)? - at(&op_v0_diag(&c, &e)))));
            let mut want = op_n0_straight(&c, &e);
            want.truncate(nodes);
            let want = at(&want);
            push("N", vmax(&(nw.apply(&v)? - &want)) / vmax(&want).max(1.0));
            let left = op_j0_inverse(&st, &op_j0(&c, &e))?.max_diff(&e);
            let right = op_j0(&c, &op_j0_inverse(&st, &e)?).max_diff(&e);
            push("J0inv", left.max(right));
        }
    }
    Ok(rows)
}
