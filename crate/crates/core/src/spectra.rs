//! Eigenvalues of assembled operators, the theoretical open-arc spectrum
//! sets and clustering diagnostics.

use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::material::Constants;

/// All eigenvalues of a dense complex matrix (Hessenberg QR via faer).
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("eigenvalue input"));
    }
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let f = faer::Mat::<Complex64>::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)]);
    f.eigenvalues()
        .map_err(|e| Error::Domain(format!("eigenvalue iteration failed: {e:?}")))
}

/// `{lam1_j, lam2_j} ∪ {lam3_j (1 + 1/n) : n = 1..n_max}`.
pub fn lambda_inf(c: &Constants, n_max: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::from(c.lam1_j), Complex64::from(c.lam2_j)];
    out.extend((1..=n_max).map(|n| Complex64::from(c.lam3_j * (1.0 + 1.0 / n as f64))));
    out
}

/// Membership of `z` in the open set `Lambda_s` of the weighted open-arc
/// composition on `H^s_e`.
///
/// Writing `z = -lam3_j (x + i y)`, `z` belongs to the set when `x + 1 < 0`
/// and `s + 1/2 < -(x + 1) / ((x + 1)^2 + y^2)`.
pub fn in_lambda_s(c: &Constants, s: f64, z: Complex64) -> Result<bool> {
    if c.lam3_j == 0.0 {
        return Err(Error::Inadmissible("lam3_j = 0".into()));
    }
    let w = z / (-c.lam3_j);
    let (x1, y) = (w.re + 1.0, w.im);
    if !(x1 < 0.0) {
        return Ok(false);
    }
    Ok(s + 0.5 < -x1 / (x1 * x1 + y * y))
}

/// Closed-curve cluster point `-1/4 + c_tilde^2`.
pub fn closed_cluster_point(c: &Constants) -> Complex64 {
    Complex64::from(c.cluster_closed)
}

/// Open-arc cluster point `lam3_j`.
pub fn arc_cluster_point(c: &Constants) -> Complex64 {
    Complex64::from(c.lam3_j)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Complex64>,
    pub cluster_point: Complex64,
    /// `(radius, fraction of eigenvalues within radius)`, radii ascending.
    pub fraction_within: Vec<(f64, f64)>,
    /// Distances to the cluster point, ascending.
    pub sorted_distances: Vec<f64>,
    pub lambda_inf: Option<Vec<Complex64>>,
}

impl SpectrumReport {
    pub fn fraction_at(&self, r: f64) -> f64 {
        fraction(&self.sorted_distances, r)
    }

    pub fn median_distance(&self) -> f64 {
        let d = &self.sorted_distances;
        if d.is_empty() {
            return f64::NAN;
        }
        let k = d.len() / 2;
        if d.len() % 2 == 1 {
            d[k]
        } else {
            0.5 * (d[k - 1] + d[k])
        }
    }

    /// CSV with columns `re,im,dist_to_cluster`, one row per eigenvalue.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "re,im,dist_to_cluster")?;
        for z in &self.eigenvalues {
            writeln!(
                w,
                "{:.17e},{:.17e},{:.17e}",
                z.re,
                z.im,
                (z - self.cluster_point).norm()
            )?;
        }
        Ok(())
    }

    pub fn write_files(&self, csv: &Path, sidecar: serde_json::Value) -> std::io::Result<()> {
        self.write_csv(std::io::BufWriter::new(std::fs::File::create(csv)?))?;
        let mut json = serde_json::json!({
            "cluster_point": [self.cluster_point.re, self.cluster_point.im],
            "count": self.eigenvalues.len(),
            "fraction_within": self.fraction_within,
            "median_distance": self.median_distance(),
        });
        if let Some(l) = &self.lambda_inf {
            json["lambda_inf"] = l
                .iter()
                .map(|z| vec![z.re, z.im])
                .collect::<Vec<_>>()
                .into();
        }
        json["config"] = sidecar;
        let mut p = csv.as_os_str().to_owned();
        p.push(".json");
        std::fs::write(p, serde_json::to_string_pretty(&json)? + "\n")
    }
}

fn fraction(sorted: &[f64], r: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    sorted.partition_point(|&d| d <= r) as f64 / sorted.len() as f64
}

pub fn cluster_report(
    eigs: &[Complex64],
    cluster_point: Complex64,
    radii: &[f64],
) -> SpectrumReport {
    let mut d: Vec<f64> = eigs.iter().map(|z| (z - cluster_point).norm()).collect();
    d.sort_by(f64::total_cmp);
    let mut r = radii.to_vec();
    r.sort_by(f64::total_cmp);
    SpectrumReport {
        eigenvalues: eigs.to_vec(),
        cluster_point,
        fraction_within: r.iter().map(|&r| (r, fraction(&d, r))).collect(),
        sorted_distances: d,
        lambda_inf: None,
    }
}
