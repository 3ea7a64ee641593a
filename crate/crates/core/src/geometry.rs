//! Smooth parameterized curves and their quadrature nodes.
//!
//! Closed curves are 2π-periodic in `s` with the outward normal
//! `(x2', -x1')/|x'|` (counter-clockwise orientation). Open arcs are
//! parameterized on `t in [-1, 1]`, sampled at `t = cos(theta)` with interior
//! nodes only, and carry the left normal `(-x2', x1')/|x'|`. In both cases the
//! tangent is `tau = (-nu2, nu1)`.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

const MIN_SPEED: f64 = 1e-12;

/// Position, first and second derivative at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub x: Point,
    pub dx: Point,
    pub ddx: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ClosedShape {
    Circle {
        radius: f64,
        center: Point,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// `(cos s + 0.65 cos 2s - 0.65, 1.5 sin s)`
    Kite,
    /// Trigonometric interpolant: `x(s) = c0 + sum_k a_k cos ks + b_k sin ks`.
    Trig {
        c0: Point,
        a: Vec<Point>,
        b: Vec<Point>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedCurve {
    pub shape: ClosedShape,
}

impl ClosedCurve {
    pub fn circle(radius: f64) -> Self {
        Self::circle_at(radius, [0.0, 0.0])
    }

    pub fn circle_at(radius: f64, center: Point) -> Self {
        ClosedCurve {
            shape: ClosedShape::Circle { radius, center },
        }
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        ClosedCurve {
            shape: ClosedShape::Ellipse { a, b },
        }
    }

    pub fn kite() -> Self {
        ClosedCurve {
            shape: ClosedShape::Kite,
        }
    }

    /// Trigonometric interpolant through `points[j] = x(2 pi j / n)`.
    pub fn from_samples(points: &[Point]) -> Result<Self> {
        let n = points.len();
        if n < 4 {
            return Err(Error::DegenerateCurve(format!(
                "need at least 4 samples, got {n}"
            )));
        }
        let kmax = (n - 1) / 2;
        let mut c0 = [0.0; 2];
        for p in points {
            c0[0] += p[0] / n as f64;
            c0[1] += p[1] / n as f64;
        }
        let mut a = vec![[0.0; 2]; kmax];
        let mut b = vec![[0.0; 2]; kmax];
        for k in 1..=kmax {
            for (j, p) in points.iter().enumerate() {
                let s = 2.0 * PI * (j * k) as f64 / n as f64;
                let (sn, cs) = s.sin_cos();
                for c in 0..2 {
                    a[k - 1][c] += 2.0 * p[c] * cs / n as f64;
                    b[k - 1][c] += 2.0 * p[c] * sn / n as f64;
                }
            }
        }
        Ok(ClosedCurve {
            shape: ClosedShape::Trig { c0, a, b },
        })
    }

    pub fn jet(&self, s: f64) -> Jet {
        match &self.shape {
            ClosedShape::Circle { radius: r, center } => {
                let (sn, cs) = s.sin_cos();
                Jet {
                    x: [center[0] + r * cs, center[1] + r * sn],
                    dx: [-r * sn, r * cs],
                    ddx: [-r * cs, -r * sn],
                }
            }
            ClosedShape::Ellipse { a, b } => {
                let (sn, cs) = s.sin_cos();
                Jet {
                    x: [a * cs, b * sn],
                    dx: [-a * sn, b * cs],
                    ddx: [-a * cs, -b * sn],
                }
            }
            ClosedShape::Kite => {
                let (sn, cs) = s.sin_cos();
                let (sn2, cs2) = (2.0 * s).sin_cos();
                Jet {
                    x: [cs + 0.65 * cs2 - 0.65, 1.5 * sn],
                    dx: [-sn - 1.3 * sn2, 1.5 * cs],
                    ddx: [-cs - 2.6 * cs2, -1.5 * sn],
                }
            }
            ClosedShape::Trig { c0, a, b } => {
                let mut jet = Jet {
                    x: *c0,
                    dx: [0.0; 2],
                    ddx: [0.0; 2],
                };
                for k in 1..=a.len() {
                    let kf = k as f64;
                    let (sn, cs) = (kf * s).sin_cos();
                    for c in 0..2 {
                        let (ak, bk) = (a[k - 1][c], b[k - 1][c]);
                        jet.x[c] += ak * cs + bk * sn;
                        jet.dx[c] += kf * (-ak * sn + bk * cs);
                        jet.ddx[c] += -kf * kf * (ak * cs + bk * sn);
                    }
                }
                jet
            }
        }
    }

    pub fn nodes(&self, n: usize) -> Result<ClosedNodes> {
        closed_nodes(self, n)
    }
}

/// Geometric data at the equispaced Nyström nodes of a closed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedNodes {
    pub s: Vec<f64>,
    pub x: Vec<Point>,
    pub dx: Vec<Point>,
    pub ddx: Vec<Point>,
    pub speed: Vec<f64>,
    pub normal: Vec<Point>,
    pub tangent: Vec<Point>,
    /// Signed curvature, positive for a counter-clockwise convex curve.
    pub curvature: Vec<f64>,
}

impl ClosedNodes {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Largest distance between two nodes.
    pub fn diameter(&self) -> f64 {
        diameter(&self.x)
    }
}

/// `n` equispaced nodes `s_j = 2 pi j / n`; `n` must be even and at least 4.
pub fn closed_nodes(c: &ClosedCurve, n: usize) -> Result<ClosedNodes> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Domain(format!(
            "closed node count must be even and >= 4, got {n}"
        )));
    }
    let mut out = ClosedNodes {
        s: Vec::with_capacity(n),
        x: Vec::with_capacity(n),
        dx: Vec::with_capacity(n),
        ddx: Vec::with_capacity(n),
        speed: Vec::with_capacity(n),
        normal: Vec::with_capacity(n),
        tangent: Vec::with_capacity(n),
        curvature: Vec::with_capacity(n),
    };
    for j in 0..n {
        let s = 2.0 * PI * j as f64 / n as f64;
        let jet = c.jet(s);
        let sp = check_speed(&jet, s)?;
        let nu = [jet.dx[1] / sp, -jet.dx[0] / sp];
        out.s.push(s);
        out.x.push(jet.x);
        out.dx.push(jet.dx);
        out.ddx.push(jet.ddx);
        out.speed.push(sp);
        out.normal.push(nu);
        out.tangent.push([-nu[1], nu[0]]);
        out.curvature
            .push((jet.dx[0] * jet.ddx[1] - jet.dx[1] * jet.ddx[0]) / sp.powi(3));
    }
    Ok(out)
}

fn check_speed(jet: &Jet, at: f64) -> Result<f64> {
    let sp = jet.dx[0].hypot(jet.dx[1]);
    if !sp.is_finite() || !jet.x.iter().all(|v| v.is_finite()) {
        return Err(Error::DegenerateCurve(format!(
            "non-finite geometry at {at}"
        )));
    }
    if sp < MIN_SPEED {
        return Err(Error::DegenerateCurve(format!(
            "parameter speed {sp:.3e} below {MIN_SPEED:.0e} at {at}"
        )));
    }
    Ok(sp)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ArcShape {
    /// `(t, 0)`
    Straight,
    /// `(t, t^2)`
    Parabola,
    /// `r(t) (cos phi(t), sin phi(t))` with `phi = 3 pi (t + 1) / 4`
    /// and `r = 1 + (t + 1) / 4`: three quarters of a turn.
    Spiral,
    /// Chebyshev expansion `x(t) = sum_k c_k T_k(t)`.
    Chebyshev { coeffs: Vec<Point> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpenArc {
    pub shape: ArcShape,
}

impl OpenArc {
    pub fn straight() -> Self {
        OpenArc {
            shape: ArcShape::Straight,
        }
    }

    pub fn parabola() -> Self {
        OpenArc {
            shape: ArcShape::Parabola,
        }
    }

    pub fn spiral() -> Self {
        OpenArc {
            shape: ArcShape::Spiral,
        }
    }

    /// Chebyshev interpolant through samples at `t_j = cos((2j+1) pi / (2n))`.
    pub fn from_samples(points: &[Point]) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(Error::DegenerateCurve(format!(
                "need at least 2 samples, got {n}"
            )));
        }
        let mut coeffs = vec![[0.0; 2]; n];
        for (k, ck) in coeffs.iter_mut().enumerate() {
            for (j, p) in points.iter().enumerate() {
                let th = (2 * j + 1) as f64 * PI / (2 * n) as f64;
                let w = (k as f64 * th).cos() * 2.0 / n as f64;
                ck[0] += w * p[0];
                ck[1] += w * p[1];
            }
        }
        coeffs[0][0] *= 0.5;
        coeffs[0][1] *= 0.5;
        Ok(OpenArc {
            shape: ArcShape::Chebyshev { coeffs },
        })
    }

    /// Jet with respect to `t`.
    pub fn jet(&self, t: f64) -> Jet {
        match &self.shape {
            ArcShape::Straight => Jet {
                x: [t, 0.0],
                dx: [1.0, 0.0],
                ddx: [0.0, 0.0],
            },
            ArcShape::Parabola => Jet {
                x: [t, t * t],
                dx: [1.0, 2.0 * t],
                ddx: [0.0, 2.0],
            },
            ArcShape::Spiral => {
                let a = 0.75 * PI;
                let phi = a * (t + 1.0);
                let r = 1.0 + 0.25 * (t + 1.0);
                let (sn, cs) = phi.sin_cos();
                let dr = 0.25;
                Jet {
                    x: [r * cs, r * sn],
                    dx: [dr * cs - r * a * sn, dr * sn + r * a * cs],
                    ddx: [
                        -2.0 * dr * a * sn - r * a * a * cs,
                        2.0 * dr * a * cs - r * a * a * sn,
                    ],
                }
            }
            ArcShape::Chebyshev { coeffs } => chebyshev_jet(coeffs, t),
        }
    }

    pub fn nodes(&self, m: usize) -> Result<ArcNodes> {
        arc_nodes(self, m)
    }

    /// Arc length by Fejér's first rule on the cosine nodes.
    pub fn length(&self) -> f64 {
        let m = 256;
        (0..m)
            .map(|j| {
                let th = (2 * j + 1) as f64 * PI / (2 * m) as f64;
                let corr: f64 = (1..=m / 2)
                    .map(|k| (2.0 * k as f64 * th).cos() / (4.0 * (k * k) as f64 - 1.0))
                    .sum();
                let w = 2.0 / m as f64 * (1.0 - 2.0 * corr);
                let jet = self.jet(th.cos());
                w * jet.dx[0].hypot(jet.dx[1])
            })
            .sum()
    }
}

fn chebyshev_jet(c: &[Point], t: f64) -> Jet {
    let d1 = chebyshev_derivative(c);
    let d2 = chebyshev_derivative(&d1);
    Jet {
        x: clenshaw(c, t),
        dx: clenshaw(&d1, t),
        ddx: clenshaw(&d2, t),
    }
}

fn chebyshev_derivative(c: &[Point]) -> Vec<Point> {
    let n = c.len();
    if n <= 1 {
        return vec![[0.0; 2]];
    }
    let mut d = vec![[0.0; 2]; n];
    for k in (0..n - 1).rev() {
        for comp in 0..2 {
            let next = if k + 2 < n { d[k + 2][comp] } else { 0.0 };
            d[k][comp] = next + 2.0 * (k + 1) as f64 * c[k + 1][comp];
        }
    }
    d[0][0] *= 0.5;
    d[0][1] *= 0.5;
    d.truncate(n - 1);
    d
}

fn clenshaw(c: &[Point], t: f64) -> Point {
    let mut out = [0.0; 2];
    for comp in 0..2 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for k in (1..c.len()).rev() {
            let b0 = 2.0 * t * b1 - b2 + c[k][comp];
            b2 = b1;
            b1 = b0;
        }
        out[comp] = t * b1 - b2 + c[0][comp];
    }
    out
}

/// Geometric data at the cosine nodes `theta_j = (2j+1) pi / (2m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcNodes {
    pub theta: Vec<f64>,
    pub t: Vec<f64>,
    pub sin_theta: Vec<f64>,
    pub x: Vec<Point>,
    /// Derivative with respect to `t`.
    pub dx: Vec<Point>,
    pub ddx: Vec<Point>,
    /// `J(theta) = |x'(cos theta)|`
    pub jac: Vec<f64>,
    pub normal: Vec<Point>,
    pub tangent: Vec<Point>,
}

impl ArcNodes {
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.x)
    }
}

/// `m` interior cosine nodes; `m >= 2`.
pub fn arc_nodes(a: &OpenArc, m: usize) -> Result<ArcNodes> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "arc mode count must be >= 2, got {m}"
        )));
    }
    let thetas: Vec<f64> = (0..m)
        .map(|j| (2 * j + 1) as f64 * PI / (2 * m) as f64)
        .collect();
    arc_nodes_at(a, &thetas)
}

/// Geometric data at arbitrary angles in `(0, pi)`.
pub fn arc_nodes_at(a: &OpenArc, thetas: &[f64]) -> Result<ArcNodes> {
    let m = thetas.len();
    let mut out = ArcNodes {
        theta: Vec::with_capacity(m),
        t: Vec::with_capacity(m),
        sin_theta: Vec::with_capacity(m),
        x: Vec::with_capacity(m),
        dx: Vec::with_capacity(m),
        ddx: Vec::with_capacity(m),
        jac: Vec::with_capacity(m),
        normal: Vec::with_capacity(m),
        tangent: Vec::with_capacity(m),
    };
    for &th in thetas {
        let t = th.cos();
        let jet = a.jet(t);
        let sp = check_speed(&jet, t)?;
        let nu = [-jet.dx[1] / sp, jet.dx[0] / sp];
        out.theta.push(th);
        out.t.push(t);
        out.sin_theta.push(th.sin());
        out.x.push(jet.x);
        out.dx.push(jet.dx);
        out.ddx.push(jet.ddx);
        out.jac.push(sp);
        out.normal.push(nu);
        out.tangent.push([-nu[1], nu[0]]);
    }
    Ok(out)
}

fn diameter(x: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in x.iter().enumerate() {
        for q in &x[i + 1..] {
            d = d.max((p[0] - q[0]).hypot(p[1] - q[1]));
        }
    }
    d
}

/// A boundary parsed from a curve spec string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    Closed(ClosedCurve),
    Open(OpenArc),
}

/// Parses `circle`, `circle:r=2`, `ellipse:a=2,b=1`, `kite`,
/// `arc:straight`, `arc:parabola`, `arc:spiral`.
impl FromStr for Boundary {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, rest) = match spec.split_once(':') {
            Some((h, r)) => (h.trim(), r.trim()),
            None => (spec, ""),
        };
        let params = |rest: &str| -> Result<Vec<(String, f64)>> {
            rest.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| {
                    let (k, v) = p
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("expected key=value, got '{p}'")))?;
                    let v: f64 = v
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad number in '{p}'")))?;
                    Ok((k.trim().to_string(), v))
                })
                .collect()
        };
        let lookup = |ps: &[(String, f64)], key: &str, default: f64| -> Result<f64> {
            for (k, _) in ps {
                if !matches!(k.as_str(), "r" | "a" | "b") {
                    return Err(Error::Parse(format!("unknown curve parameter '{k}'")));
                }
            }
            Ok(ps
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .unwrap_or(default))
        };
        match head {
            "circle" => {
                let ps = params(rest)?;
                let r = lookup(&ps, "r", 1.0)?;
                if !(r > 0.0) {
                    return Err(Error::Parse("circle radius must be > 0".into()));
                }
                Ok(Boundary::Closed(ClosedCurve::circle(r)))
            }
            "ellipse" => {
                let ps = params(rest)?;
                let a = lookup(&ps, "a", 2.0)?;
                let b = lookup(&ps, "b", 1.0)?;
                if !(a > 0.0 && b > 0.0) {
                    return Err(Error::Parse("ellipse semi-axes must be > 0".into()));
                }
                Ok(Boundary::Closed(ClosedCurve::ellipse(a, b)))
            }
            "kite" if rest.is_empty() => Ok(Boundary::Closed(ClosedCurve::kite())),
            "arc" => match rest {
                "straight" | "" => Ok(Boundary::Open(OpenArc::straight())),
                "parabola" => Ok(Boundary::Open(OpenArc::parabola())),
                "spiral" => Ok(Boundary::Open(OpenArc::spiral())),
                other => Err(Error::Parse(format!("unknown arc '{other}'"))),
            },
            _ => Err(Error::Parse(format!("unknown curve spec '{spec}'"))),
        }
    }
}
