use std::fmt::Write as _;
use std::path::PathBuf;

use elastocald::closed_ops::calderon_check;
use elastocald::geometry::{Boundary, Point};
use elastocald::open_ops::{compose_jw, diagonal_check};
use elastocald::scatter_solver::*;
use elastocald::spectra::{
    arc_cluster_point, closed_cluster_point, cluster_report, eigenvalues, lambda_inf,
    SpectrumReport,
};
use elastocald::{Error, Material, Result};
use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Result of a verb: the tolerance verdict plus the files it wrote.
pub struct Outcome {
    pub failures: Vec<String>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Writes `<out>/<name>.csv` and its sidecar `<name>.csv.json`.
fn emit(
    cfg: &RunConfig,
    name: &str,
    csv: &str,
    mut summary: Value,
    failures: Vec<String>,
) -> Result<Outcome> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", cfg.out.display()));
    std::fs::create_dir_all(&cfg.out).map_err(io)?;
    let path = cfg.out.join(format!("{name}.csv"));
    std::fs::write(&path, csv).map_err(io)?;
    summary["config"] = cfg.to_json();
    summary["pass"] = failures.is_empty().into();
    summary["failures"] = json!(failures);
    let side = cfg.out.join(format!("{name}.csv.json"));
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(&side, text + "\n").map_err(io)?;
    Ok(Outcome {
        failures,
        files: vec![path, side],
    })
}

fn boundary_length(b: &Boundary) -> Result<f64> {
    Ok(match b {
        Boundary::Open(a) => a.length(),
        Boundary::Closed(_) => Discretization::new(b, 512)?.weights.iter().sum(),
    })
}

fn material(cfg: &RunConfig, b: &Boundary) -> Result<Material> {
    if cfg.omega == 0.0 && cfg.ks_length.is_none() {
        return cfg.static_material();
    }
    let len = if cfg.ks_length.is_some() {
        Some(boundary_length(b)?)
    } else {
        None
    };
    cfg.material(len)
}

fn c2(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn spectrum_csv(r: &SpectrumReport) -> String {
    let mut buf = Vec::new();
    r.write_csv(&mut buf).expect("write to memory");
    String::from_utf8(buf).expect("ascii")
}

fn spectrum_summary(r: &SpectrumReport) -> Value {
    json!({
        "cluster_point": c2(r.cluster_point),
        "count": r.eigenvalues.len(),
        "fraction_within": r.fraction_within,
        "median_distance": r.median_distance(),
    })
}

pub fn constants(cfg: &RunConfig) -> Result<Outcome> {
    let m = cfg.static_material()?;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "material": m,
            "constants": m.constants(),
            "admissibility": m.check_admissible().to_string(),
        }))
        .expect("json")
    );
    if cfg.sweep_steps < 2 {
        return Err(Error::Parse("sweep_steps must be at least 2".into()));
    }
    let [lo, hi] = cfg.sweep;
    let k = cfg.sweep_steps - 1;
    let mut csv = String::from("mu_tilde,c_tilde,cluster,admissible\n");
    for i in 0..=k {
        let mt = (lo * (k - i) as f64 + hi * i as f64) / k as f64;
        let row = Material::stat(cfg.lambda, cfg.mu, mt)?;
        let c = row.constants();
        let ok = row.check_admissible().is_admissible();
        writeln!(
            csv,
            "{mt:.17e},{:.17e},{:.17e},{ok}",
            c.c_tilde, c.cluster_closed
        )
        .unwrap();
    }
    emit(
        cfg,
        "constants",
        &csv,
        json!({"constants": m.constants()}),
        vec![],
    )
}

pub fn spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let curve = cfg.closed_curve()?;
    let m = material(cfg, &Boundary::Closed(curve.clone()))?;
    let radius = cfg.tol_or(0.05);
    let cal = calderon_check(&m, &curve, cfg.n, cfg.seed)?;
    let eigs = eigenvalues(&cal.ns.data)?;
    let c = m.constants();
    let r = cluster_report(
        &eigs,
        closed_cluster_point(&c),
        &[0.01, 0.02, radius, 0.1, 0.2],
    );
    let frac = r.fraction_at(radius);
    let mut failures = vec![];
    if frac < 0.9 {
        failures.push(format!(
            "fraction within {radius} of the cluster point is {frac:.3} < 0.9"
        ));
    }
    let mut s = spectrum_summary(&r);
    s["calderon_residual"] = cal.residual.into();
    emit(cfg, "spectrum", &spectrum_csv(&r), s, failures)
}

pub fn arc_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let arc = cfg.open_arc()?;
    let m = material(cfg, &Boundary::Open(arc.clone()))?;
    let c = m.constants();
    let cal = compose_jw(&m, &arc, cfg.n)?;
    let op = match cfg.operator.as_str() {
        "jw" => &cal.jw,
        "k" => &cal.k,
        "j0j" => &cal.j0j,
        o => return Err(Error::Parse(format!("unknown operator '{o}'"))),
    };
    let eigs = eigenvalues(&op.data)?;
    let centre = if cfg.operator == "k" {
        C64::ZERO
    } else {
        arc_cluster_point(&c)
    };
    let mut r = cluster_report(&eigs, centre, &[0.01, 0.05, 0.1, 0.2]);
    r.lambda_inf = Some(lambda_inf(&c, cfg.n));
    let (lo, hi) = (c.spectrum_min_modulus(), c.spectrum_max_modulus());
    let mut moduli: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    let mut failures = vec![];
    match cfg.operator.as_str() {
        "jw" => {
            let big = moduli.iter().filter(|&&a| a > 10.0 * hi).count();
            let small = moduli
                .iter()
                .filter(|&&a| a < c.lam3_j.abs() / 10.0)
                .count();
            if big > 0 {
                failures.push(format!("{big} eigenvalues exceed 10 x {hi:.6}"));
            }
            if small as f64 > 0.1 * moduli.len() as f64 {
                failures.push(format!("{small} eigenvalues below |lam3_j|/10"));
            }
        }
        "j0j" => {
            let tol = cfg.tol_or(1e-8);
            let out = moduli
                .iter()
                .filter(|&&a| a < lo - tol || a > hi + tol)
                .count();
            if out > 0 {
                failures.push(format!("{out} eigenvalues outside [{lo:.6}, {hi:.6}]"));
            }
        }
        _ => {}
    }
    let mut s = spectrum_summary(&r);
    s["lambda_inf"] = r
        .lambda_inf
        .as_ref()
        .unwrap()
        .iter()
        .map(|z| c2(*z))
        .collect::<Vec<_>>()
        .into();
    s["annulus"] = json!([lo, hi]);
    s["largest_moduli"] = json!(moduli.iter().take(10).collect::<Vec<_>>());
    s["operator"] = cfg.operator.clone().into();
    emit(cfg, "arc-spectrum", &spectrum_csv(&r), s, failures)
}

pub fn calderon(cfg: &RunConfig) -> Result<Outcome> {
    let curve = cfg.closed_curve()?;
    let m = material(cfg, &Boundary::Closed(curve.clone()))?;
    let tol = cfg.tol_or(1e-6);
    let mut csv = String::from("n,residual\n");
    let mut res = vec![];
    for &n in &cfg.sizes {
        let r = calderon_check(&m, &curve, n, cfg.seed)?.residual;
        writeln!(csv, "{n},{r:.17e}").unwrap();
        res.push(r);
    }
    let mut failures = vec![];
    match res.last() {
        Some(&r) if r > tol => failures.push(format!(
            "residual {r:.3e} at the largest size exceeds {tol:e}"
        )),
        None => failures.push("empty size ladder".into()),
        _ => {}
    }
    if res.windows(2).any(|w| w[1] > w[0] && w[1] > 1e-13) {
        failures.push("residual does not decrease under refinement".into());
    }
    emit(cfg, "calderon", &csv, json!({"residuals": res}), failures)
}

pub fn diag_test(cfg: &RunConfig) -> Result<Outcome> {
    let m = cfg.static_material()?;
    let tol = cfg.tol_or(1e-10);
    let rows = diagonal_check(&m, cfg.n)?;
    let mut csv = String::from("n,component,operator,error,pass\n");
    let mut failures = vec![];
    for r in &rows {
        let ok = r.error <= tol;
        writeln!(
            csv,
            "{},{},{},{:.17e},{ok}",
            r.n, r.component, r.operator, r.error
        )
        .unwrap();
        if !ok {
            failures.push(format!(
                "{} e_{}[{}]: {:.3e}",
                r.operator, r.n, r.component, r.error
            ));
        }
    }
    let worst = rows.iter().map(|r| r.error).fold(0.0, f64::max);
    emit(
        cfg,
        "diag",
        &csv,
        json!({"rows": rows.len(), "max_error": worst}),
        failures,
    )
}

fn solve_with(
    m: &Material,
    b: &Boundary,
    cfg: &RunConfig,
    n: usize,
    rhs: &DVector<C64>,
    pc: bool,
) -> Result<SolveResult> {
    let opts = SolveOptions {
        precondition: pc,
        gmres: GmresOptions {
            restart: cfg.restart,
            tol: cfg.tol_or(1e-8),
            max_iter: cfg.max_iter,
        },
    };
    match cfg.problem()? {
        Problem::Dirichlet => solve_dirichlet(m, b, n, rhs, &opts),
        Problem::Neumann => solve_neumann(m, b, n, rhs, &opts),
    }
}

fn grid(cfg: &RunConfig) -> Vec<Point> {
    let [x0, x1, y0, y1] = cfg.field_box;
    let k = cfg.field_res.max(2) - 1;
    let at = |a: f64, b: f64, i: usize| a + (b - a) * i as f64 / k as f64;
    (0..=k)
        .flat_map(|j| (0..=k).map(move |i| [at(x0, x1, i), at(y0, y1, j)]))
        .collect()
}

pub fn solve(cfg: &RunConfig) -> Result<Outcome> {
    let b = cfg.boundary()?;
    let m = material(cfg, &b)?;
    let inc = cfg.incident()?;
    let problem = cfg.problem()?;
    let disc = Discretization::new(&b, cfg.n)?;
    // a point source inside a closed curve is its own exterior solution
    let exact = matches!(inc, IncidentField::PointSource { .. });
    let trace = disc.trace(&m, &inc, problem)?;
    let rhs = if exact { trace } else { -trace };
    let r = solve_with(&m, &b, cfg, cfg.n, &rhs, cfg.precondition)?;

    let near = NEAR_FACTOR * disc.diameter() * 50.0;
    let pts: Vec<Point> = grid(cfg)
        .into_iter()
        .filter(|&x| disc.distance(x) >= near)
        .collect();
    let u = r.evaluate_field(&pts)?;
    let mut buf = Vec::new();
    write_field_csv(&mut buf, &pts, &u).expect("write to memory");
    let mut out = emit(
        cfg,
        "solve-field",
        &String::from_utf8(buf).expect("ascii"),
        r.report(),
        vec![],
    )?;

    let phi = r.physical_density();
    let mut csv = String::from("x,y,re_phi1,im_phi1,re_phi2,im_phi2\n");
    for (j, x) in disc.points.iter().enumerate() {
        let (a, c) = (phi[2 * j], phi[2 * j + 1]);
        writeln!(
            csv,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            x[0], x[1], a.re, a.im, c.re, c.im
        )
        .unwrap();
    }
    let mut summary = json!({"iterations": r.iterations, "field_points": pts.len()});
    let mut failures = vec![];
    if disc.is_open() {
        let (a, z) = r.endpoint_exponents(5)?;
        summary["endpoint_exponents"] = json!([a, z]);
    }
    if exact {
        let rad = 2.0
            * disc
                .points
                .iter()
                .map(|p| p[0].hypot(p[1]))
                .fold(0.0, f64::max);
        let ring: Vec<Point> = (0..16)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                [rad * a.cos(), rad * a.sin()]
            })
            .collect();
        let err = ring
            .iter()
            .zip(r.evaluate_field(&ring)?)
            .map(|(x, u)| {
                let e = inc.value(&m, *x)?;
                Ok((u[0] - e[0]).norm().hypot((u[1] - e[1]).norm())
                    / e[0].norm().hypot(e[1].norm()))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        summary["exact_error"] = err.into();
        let lim = 100.0 * cfg.tol_or(1e-8);
        if err > lim {
            failures.push(format!("exterior field error {err:.3e} exceeds {lim:e}"));
        }
    }
    let dens = emit(cfg, "solve-density", &csv, summary, failures)?;
    out.failures = dens.failures;
    out.files.extend(dens.files);
    Ok(out)
}

pub fn iters(cfg: &RunConfig) -> Result<Outcome> {
    let b = cfg.boundary()?;
    let m = material(cfg, &b)?;
    let inc = cfg.incident()?;
    let mut csv = String::from("method,n,iterations,final_residual\n");
    let mut failures = vec![];
    let mut table = vec![];
    for &n in &cfg.sizes {
        let rhs = -Discretization::new(&b, n)?.trace(&m, &inc, cfg.problem()?)?;
        let mut its = [0; 2];
        for (k, (name, pc)) in [("plain", false), ("preconditioned", true)]
            .into_iter()
            .enumerate()
        {
            let r = solve_with(&m, &b, cfg, n, &rhs, pc)?;
            let last = r.residuals.last().copied().unwrap_or(0.0);
            writeln!(csv, "{name},{n},{},{last:.17e}", r.iterations).unwrap();
            its[k] = r.iterations;
            table.push(json!({"method": name, "n": n, "iterations": r.iterations}));
        }
        if its[1] >= its[0] {
            failures.push(format!(
                "n={n}: preconditioned {} not below plain {}",
                its[1], its[0]
            ));
        }
    }
    emit(
        cfg,
        "iters",
        &csv,
        json!({"omega": m.omega, "table": table}),
        failures,
    )
}
