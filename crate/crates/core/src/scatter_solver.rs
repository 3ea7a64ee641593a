//! Dirichlet and Neumann scattering solves by restarted GMRES, with optional
//! Calderón preconditioning, incident fields and off-surface evaluation.
//!
//! Closed curves use the plain densities of `u = S phi` and `u = D psi`.
//! Open arcs use the weighted densities `phi = phi^w / w` and
//! `psi = w psi^w` with `w = sin(theta)` on the cosine grid.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_ops::{assemble_n, assemble_s, curve_label};
use crate::error::{Error, Result};
use crate::geometry::{arc_nodes, closed_nodes, Boundary, Point};
use crate::kernels::{traction_vector, PairEval, Part};
use crate::material::Material;
use crate::open_ops::{arc_label, assemble_nw, assemble_sw, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GmresOptions {
    pub restart: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        GmresOptions {
            restart: 200,
            tol: 1e-8,
            max_iter: 2000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GmresOutput {
    pub solution: DVector<C64>,
    pub iterations: usize,
    /// Relative residuals, starting with the initial guess.
    pub residuals: Vec<f64>,
}

/// Rotation `[[c, s], [-conj(s), c]]` that zeroes `b` against `a`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, C64::ZERO);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, a / na * b.conj() / r)
}

fn rotate(c: f64, s: C64, x: C64, y: C64) -> (C64, C64) {
    (x * c + s * y, -s.conj() * x + y * c)
}

/// Restarted GMRES with modified Gram–Schmidt and complex Givens rotations,
/// started from zero. All reductions run in a fixed order.
pub fn gmres<F>(apply: F, rhs: &DVector<C64>, opts: &GmresOptions) -> Result<GmresOutput>
where
    F: Fn(&DVector<C64>) -> DVector<C64>,
{
    let n = rhs.len();
    if opts.restart == 0 || !(opts.tol > 0.0) {
        return Err(Error::Domain("GMRES needs restart >= 1 and tol > 0".into()));
    }
    let bnorm = rhs.norm();
    if !bnorm.is_finite() {
        return Err(Error::NonFinite("GMRES right-hand side"));
    }
    let mut x = DVector::zeros(n);
    if bnorm == 0.0 {
        return Ok(GmresOutput {
            solution: x,
            iterations: 0,
            residuals: vec![0.0],
        });
    }
    let mut residuals = vec![1.0];
    let mut iterations = 0;
    let m = opts.restart.min(n.max(1));
    loop {
        let r = if iterations == 0 {
            rhs.clone()
        } else {
            rhs - apply(&x)
        };
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let beta = r.norm();
        let rel = beta / bnorm;
        if iterations > 0 {
            *residuals.last_mut().unwrap() = rel;
        }
        if rel <= opts.tol {
            return Ok(GmresOutput {
                solution: x,
                iterations,
                residuals,
            });
        }
        if iterations >= opts.max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual: rel,
                history: residuals,
            });
        }
        let mut v: Vec<DVector<C64>> = vec![r / C64::from(beta)];
        let mut h = DMatrix::<C64>::zeros(m + 1, m);
        let mut rot: Vec<(f64, C64)> = Vec::with_capacity(m);
        let mut g = vec![C64::ZERO; m + 1];
        g[0] = C64::from(beta);
        let mut k = 0;
        let mut lucky = false;
        while k < m && iterations < opts.max_iter {
            let mut w = apply(&v[k]);
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: w.len(),
                });
            }
            iterations += 1;
            for (j, vj) in v.iter().enumerate() {
                let hj = vj.dotc(&w);
                h[(j, k)] = hj;
                w.axpy(-hj, vj, C64::ONE);
            }
            let hn = w.norm();
            let col = (0..=k)
                .map(|j| h[(j, k)].norm_sqr())
                .sum::<f64>()
                .sqrt()
                .hypot(hn);
            h[(k + 1, k)] = C64::from(hn);
            for (j, &(c, s)) in rot.iter().enumerate() {
                let (a, b) = rotate(c, s, h[(j, k)], h[(j + 1, k)]);
                h[(j, k)] = a;
                h[(j + 1, k)] = b;
            }
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            let (a, _) = rotate(c, s, h[(k, k)], h[(k + 1, k)]);
            h[(k, k)] = a;
            h[(k + 1, k)] = C64::ZERO;
            let (g0, g1) = rotate(c, s, g[k], g[k + 1]);
            g[k] = g0;
            g[k + 1] = g1;
            rot.push((c, s));
            let est = g[k + 1].norm() / bnorm;
            if !est.is_finite() || !hn.is_finite() {
                return Err(Error::Breakdown("non-finite Arnoldi vector".into()));
            }
            if h[(k, k)].norm() <= 1e-13 * col {
                return Err(Error::Breakdown(format!(
                    "singular Hessenberg at step {iterations}"
                )));
            }
            residuals.push(est);
            k += 1;
            if est <= opts.tol {
                break;
            }
            if hn <= f64::EPSILON * beta {
                lucky = true;
                break;
            }
            v.push(w / C64::from(hn));
        }
        // back substitution on the rotated triangle
        let mut y = vec![C64::ZERO; k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for j in i + 1..k {
                s -= h[(i, j)] * y[j];
            }
            y[i] = s / h[(i, i)];
        }
        for (yi, vi) in y.iter().zip(&v) {
            x.axpy(*yi, vi, C64::ONE);
        }
        if lucky {
            let rel = (rhs - apply(&x)).norm() / bnorm;
            *residuals.last_mut().unwrap() = rel;
            if rel > opts.tol {
                return Err(Error::Breakdown(format!(
                    "Krylov space exhausted at relative residual {rel:.3e}"
                )));
            }
            return Ok(GmresOutput {
                solution: x,
                iterations,
                residuals,
            });
        }
    }
}

/// Incident displacement fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IncidentField {
    /// `d exp(i k_p x.d)` for a unit direction `d`.
    PlaneP { direction: Point },
    /// `d_perp exp(i k_s x.d)` with `d_perp = (-d_2, d_1)`.
    PlaneS { direction: Point },
    /// `Pi(x, source) q`.
    PointSource {
        source: Point,
        polarization: [C64; 2],
    },
}

impl IncidentField {
    pub fn plane_p(angle: f64) -> Self {
        IncidentField::PlaneP {
            direction: [angle.cos(), angle.sin()],
        }
    }

    pub fn plane_s(angle: f64) -> Self {
        IncidentField::PlaneS {
            direction: [angle.cos(), angle.sin()],
        }
    }

    pub fn point_source(source: Point, polarization: [C64; 2]) -> Self {
        IncidentField::PointSource {
            source,
            polarization,
        }
    }

    fn plane(&self, m: &Material) -> Option<(f64, Point, Point)> {
        match *self {
            IncidentField::PlaneP { direction: d } => Some((m.k_p(), d, d)),
            IncidentField::PlaneS { direction: d } => Some((m.k_s(), d, [-d[1], d[0]])),
            IncidentField::PointSource { .. } => None,
        }
    }

    pub fn value(&self, m: &Material, x: Point) -> Result<Vec2> {
        if let Some((k, d, p)) = self.plane(m) {
            let e = C64::new(0.0, k * (x[0] * d[0] + x[1] * d[1])).exp();
            return Ok([e * p[0], e * p[1]]);
        }
        let IncidentField::PointSource {
            source,
            polarization: q,
        } = *self
        else {
            unreachable!()
        };
        let pi = PairEval::new(m, x, source, Part::Full)?.pi();
        Ok([
            pi[(0, 0)] * q[0] + pi[(0, 1)] * q[1],
            pi[(1, 0)] * q[0] + pi[(1, 1)] * q[1],
        ])
    }

    /// `du[i][l] = d u_i / d x_l`.
    pub fn gradient(&self, m: &Material, x: Point) -> Result<[[C64; 2]; 2]> {
        if let Some((k, d, _)) = self.plane(m) {
            let u = self.value(m, x)?;
            let ik = C64::new(0.0, k);
            return Ok([
                [ik * d[0] * u[0], ik * d[1] * u[0]],
                [ik * d[0] * u[1], ik * d[1] * u[1]],
            ]);
        }
        let IncidentField::PointSource {
            source,
            polarization: q,
        } = *self
        else {
            unreachable!()
        };
        let g = PairEval::new(m, x, source, Part::Full)?.grad();
        let mut du = [[C64::ZERO; 2]; 2];
        for (i, row) in du.iter_mut().enumerate() {
            for (l, v) in row.iter_mut().enumerate() {
                *v = g[l][(i, 0)] * q[0] + g[l][(i, 1)] * q[1];
            }
        }
        Ok(du)
    }

    /// Generalized traction `T(d_x, nu) u` at `x`.
    pub fn traction(&self, m: &Material, x: Point, nu: Point) -> Result<Vec2> {
        Ok(traction_vector(m, &self.gradient(m, x)?, nu))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Dirichlet,
    Neumann,
}

/// Boundary nodes with the quadrature data of the layer potentials.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub points: Vec<Point>,
    pub normals: Vec<Point>,
    /// `(2 pi / n) |x'|` on closed curves; `(pi / M) J` on arcs.
    pub weights: Vec<f64>,
    /// `sin(theta_j)` on arcs, empty on closed curves.
    pub sin_theta: Vec<f64>,
    pub label: String,
    /// Dense polyline of the boundary for distance checks.
    outline: Vec<Point>,
}

const OUTLINE_POINTS: usize = 4096;

impl Discretization {
    pub fn new(boundary: &Boundary, n: usize) -> Result<Self> {
        match boundary {
            Boundary::Closed(c) => {
                let nodes = closed_nodes(c, n)?;
                let h = 2.0 * std::f64::consts::PI / n as f64;
                let outline = (0..OUTLINE_POINTS)
                    .map(|k| {
                        c.jet(2.0 * std::f64::consts::PI * k as f64 / OUTLINE_POINTS as f64)
                            .x
                    })
                    .collect();
                Ok(Discretization {
                    weights: nodes.speed.iter().map(|s| s * h).collect(),
                    points: nodes.x,
                    normals: nodes.normal,
                    sin_theta: Vec::new(),
                    label: curve_label(c),
                    outline,
                })
            }
            Boundary::Open(a) => {
                let nodes = arc_nodes(a, n)?;
                let h = std::f64::consts::PI / n as f64;
                let outline = (0..=OUTLINE_POINTS)
                    .map(|k| a.jet(-1.0 + 2.0 * k as f64 / OUTLINE_POINTS as f64).x)
                    .collect();
                Ok(Discretization {
                    weights: nodes.jac.iter().map(|j| j * h).collect(),
                    points: nodes.x,
                    normals: nodes.normal,
                    sin_theta: nodes.sin_theta,
                    label: arc_label(a),
                    outline,
                })
            }
        }
    }

    pub fn is_open(&self) -> bool {
        !self.sin_theta.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.outline.iter().enumerate() {
            for q in &self.outline[i + 1..] {
                d = d.max((p[0] - q[0]).hypot(p[1] - q[1]));
            }
        }
        d
    }

    /// Distance from `x` to the boundary polyline.
    pub fn distance(&self, x: Point) -> f64 {
        let k = self.outline.len();
        let segs = if self.is_open() { k - 1 } else { k };
        (0..segs)
            .map(|i| seg_dist(x, self.outline[i], self.outline[(i + 1) % k]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Boundary data of `field`: the trace for Dirichlet, the generalized
    /// traction for Neumann.
    pub fn trace(
        &self,
        m: &Material,
        field: &IncidentField,
        problem: Problem,
    ) -> Result<DVector<C64>> {
        let mut out = DVector::zeros(2 * self.len());
        for (j, (&x, &nu)) in self.points.iter().zip(&self.normals).enumerate() {
            let v = match problem {
                Problem::Dirichlet => field.value(m, x)?,
                Problem::Neumann => field.traction(m, x, nu)?,
            };
            out[2 * j] = v[0];
            out[2 * j + 1] = v[1];
        }
        Ok(out)
    }
}

fn seg_dist(x: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let l2 = dx * dx + dy * dy;
    let t = if l2 > 0.0 {
        (((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (x[0] - a[0] - t * dx).hypot(x[1] - a[1] - t * dy)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SolveOptions {
    pub precondition: bool,
    pub gmres: GmresOptions,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub problem: Problem,
    pub material: Material,
    pub options: SolveOptions,
    /// `phi` or `psi` on closed curves, `phi^w` or `psi^w` on arcs.
    pub density: DVector<C64>,
    pub iterations: usize,
    pub residuals: Vec<f64>,
    pub disc: Discretization,
}

/// Minimum evaluation distance relative to the boundary diameter.
pub const NEAR_FACTOR: f64 = 1e-3;

impl SolveResult {
    /// Physical density: `phi^w / sin(theta)` or `sin(theta) psi^w` on arcs.
    pub fn physical_density(&self) -> DVector<C64> {
        if !self.disc.is_open() {
            return self.density.clone();
        }
        DVector::from_fn(self.density.len(), |i, _| {
            let w = self.disc.sin_theta[i / 2];
            match self.problem {
                Problem::Dirichlet => self.density[i] / w,
                Problem::Neumann => self.density[i] * w,
            }
        })
    }

    /// Quadrature weight multiplying the stored density at node `j`.
    fn weight(&self, j: usize) -> f64 {
        let w = self.disc.weights[j];
        match (self.problem, self.disc.is_open()) {
            (Problem::Neumann, true) => w * self.disc.sin_theta[j].powi(2),
            _ => w,
        }
    }

    /// `u = S phi` (Dirichlet) or `u = D psi` (Neumann) at points off the boundary.
    pub fn evaluate_field(&self, points: &[Point]) -> Result<Vec<Vec2>> {
        let threshold = NEAR_FACTOR * self.disc.diameter();
        for &p in points {
            if !(self.disc.distance(p) >= threshold) {
                return Err(Error::TooClose {
                    point: p,
                    threshold,
                });
            }
        }
        points
            .par_iter()
            .map(|&x| {
                let mut u = [C64::ZERO; 2];
                for j in 0..self.disc.len() {
                    let e = PairEval::new(&self.material, x, self.disc.points[j], Part::Full)?;
                    let k = match self.problem {
                        Problem::Dirichlet => e.pi(),
                        Problem::Neumann => e.traction_y(self.disc.normals[j]),
                    };
                    let w = C64::from(self.weight(j));
                    let (a, b) = (self.density[2 * j] * w, self.density[2 * j + 1] * w);
                    u[0] += k[(0, 0)] * a + k[(0, 1)] * b;
                    u[1] += k[(1, 0)] * a + k[(1, 1)] * b;
                }
                Ok(u)
            })
            .collect()
    }

    /// Exponents `p` of `|phi| ~ d^p` fitted by least squares on the
    /// `count` nodes nearest each arc endpoint, `(t = 1, t = -1)`.
    pub fn endpoint_exponents(&self, count: usize) -> Result<(f64, f64)> {
        if !self.disc.is_open() {
            return Err(Error::Domain("endpoint exponent needs an open arc".into()));
        }
        let n = self.disc.len();
        if count < 2 || 2 * count > n {
            return Err(Error::Domain(format!("cannot fit {count} nodes on {n}")));
        }
        let phys = self.physical_density();
        let mag = |j: usize| phys[2 * j].norm().hypot(phys[2 * j + 1].norm());
        let ends = [self.disc.outline[OUTLINE_POINTS], self.disc.outline[0]];
        let fit = |idx: Vec<usize>, end: Point| {
            let pts: Vec<(f64, f64)> = idx
                .iter()
                .map(|&j| {
                    let p = self.disc.points[j];
                    ((p[0] - end[0]).hypot(p[1] - end[1]).ln(), mag(j).ln())
                })
                .collect();
            slope(&pts)
        };
        // theta_j increases with j, so j = 0 sits next to t = 1
        Ok((
            fit((0..count).collect(), ends[0]),
            fit((n - count..n).collect(), ends[1]),
        ))
    }

    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "problem": self.problem,
            "boundary": self.disc.label,
            "nodes": self.disc.len(),
            "material": self.material,
            "options": self.options,
            "iterations": self.iterations,
            "residuals": self.residuals,
        })
    }
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn check_solve(m: &Material, rhs: &DVector<C64>, n: usize) -> Result<()> {
    m.validate()?;
    m.require_admissible()?;
    if m.is_static() {
        return Err(Error::Domain("scattering solves need omega > 0".into()));
    }
    if rhs.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: rhs.len(),
        });
    }
    Ok(())
}

/// The two operators of a problem: the one being inverted and its Calderón
/// partner.
fn operators(
    m: &Material,
    boundary: &Boundary,
    n: usize,
    problem: Problem,
) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let (s, nn) = match boundary {
        Boundary::Closed(c) => (assemble_s(m, c, n)?, assemble_n(m, c, n)?),
        Boundary::Open(a) => (assemble_sw(m, a, n)?, assemble_nw(m, a, n)?),
    };
    Ok(match problem {
        Problem::Dirichlet => (s.data, nn.data),
        Problem::Neumann => (nn.data, s.data),
    })
}

fn solve(
    m: &Material,
    boundary: &Boundary,
    n: usize,
    rhs: &DVector<C64>,
    opts: &SolveOptions,
    problem: Problem,
) -> Result<SolveResult> {
    check_solve(m, rhs, n)?;
    let disc = Discretization::new(boundary, n)?;
    let (a, p) = operators(m, boundary, n, problem)?;
    let out = if opts.precondition {
        let b = &p * rhs;
        gmres(|v| &p * (&a * v), &b, &opts.gmres)?
    } else {
        gmres(|v| &a * v, rhs, &opts.gmres)?
    };
    Ok(SolveResult {
        problem,
        material: *m,
        options: *opts,
        density: out.solution,
        iterations: out.iterations,
        residuals: out.residuals,
        disc,
    })
}

/// Solves `S phi = F` (closed) or `S^w phi^w = F` (arc); with preconditioning
/// the system `N S phi = N F`.
pub fn solve_dirichlet(
    m: &Material,
    boundary: &Boundary,
    n: usize,
    rhs: &DVector<C64>,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    solve(m, boundary, n, rhs, opts, Problem::Dirichlet)
}

/// Solves `N psi = G` (closed) or `N^w psi^w = G` (arc); with preconditioning
/// the system `S N psi = S G`.
pub fn solve_neumann(
    m: &Material,
    boundary: &Boundary,
    n: usize,
    rhs: &DVector<C64>,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    solve(m, boundary, n, rhs, opts, Problem::Neumann)
}

/// CSV with columns `x,y,re_u1,im_u1,re_u2,im_u2`.
pub fn write_field_csv<W: Write>(
    mut w: W,
    points: &[Point],
    values: &[Vec2],
) -> std::io::Result<()> {
    writeln!(w, "x,y,re_u1,im_u1,re_u2,im_u2")?;
    for (p, u) in points.iter().zip(values) {
        writeln!(
            w,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            p[0], p[1], u[0].re, u[0].im, u[1].re, u[1].im
        )?;
    }
    Ok(())
}
