//! Run configuration: a JSON file merged with command-line overrides.

use std::path::{Path, PathBuf};

use clap::Args;
use elastocald::geometry::{Boundary, ClosedCurve, OpenArc};
use elastocald::scatter_solver::{IncidentField, Problem};
use elastocald::{Error, Material, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub lambda: f64,
    pub mu: f64,
    pub mu_tilde: f64,
    pub rho: f64,
    pub omega: f64,
    /// When set, `omega` is chosen so that `k_s` times the boundary length equals this.
    pub ks_length: Option<f64>,
    /// circle | ellipse | kite | straight | parabola | spiral
    pub geometry: String,
    pub radius: f64,
    pub axes: [f64; 2],
    pub n: usize,
    /// Size ladder for calderon-check and iters.
    pub sizes: Vec<usize>,
    pub tol: Option<f64>,
    pub out: PathBuf,
    pub seed: u64,
    /// dirichlet | neumann
    pub problem: String,
    /// plane-p | plane-s | point-source
    pub incident: String,
    pub angle: f64,
    pub source: [f64; 2],
    pub polarization: [[f64; 2]; 2],
    pub precondition: bool,
    pub max_iter: usize,
    pub restart: usize,
    pub sweep: [f64; 2],
    pub sweep_steps: usize,
    /// jw | k | j0j
    pub operator: String,
    pub field_box: [f64; 4],
    pub field_res: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            lambda: 2.0,
            mu: 1.0,
            mu_tilde: 1.0,
            rho: 1.0,
            omega: 2.0,
            ks_length: None,
            geometry: "circle".into(),
            radius: 1.0,
            axes: [1.5, 1.0],
            n: 64,
            sizes: vec![32, 64, 128],
            tol: None,
            out: PathBuf::from("."),
            seed: 0,
            problem: "dirichlet".into(),
            incident: "plane-p".into(),
            angle: 0.0,
            source: [0.3, 0.2],
            polarization: [[1.0, 0.0], [0.0, 0.5]],
            precondition: false,
            max_iter: 2000,
            restart: 200,
            sweep: [-2.0, 3.0],
            sweep_steps: 51,
            operator: "jw".into(),
            field_box: [-3.0, 3.0, -3.0, 3.0],
            field_res: 41,
        }
    }
}

/// Flags shared by every verb. Each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON config file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu_tilde: Option<f64>,
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    #[arg(long, global = true)]
    pub ks_length: Option<f64>,
    #[arg(long, global = true)]
    pub geometry: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated size ladder
    #[arg(long, global = true, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub problem: Option<String>,
    #[arg(long, global = true)]
    pub incident: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub angle: Option<f64>,
    #[arg(long, global = true)]
    pub precondition: bool,
    #[arg(long, global = true)]
    pub operator: Option<String>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
}

impl RunConfig {
    pub fn load(command: &str, o: &Overrides) -> Result<Self> {
        let mut c = match &o.config {
            Some(p) => read_config(p)?,
            None => RunConfig::default(),
        };
        c.command = command.into();
        macro_rules! set {
            ($($f:ident),*) => {$(if let Some(v) = &o.$f { c.$f = v.clone(); })*};
        }
        set!(
            out, seed, lambda, mu, mu_tilde, rho, omega, geometry, n, sizes, problem, incident,
            angle, operator, max_iter
        );
        if o.tol.is_some() {
            c.tol = o.tol;
        }
        if o.ks_length.is_some() {
            c.ks_length = o.ks_length;
        }
        c.precondition |= o.precondition;
        Ok(c)
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub fn boundary(&self) -> Result<Boundary> {
        Ok(match self.geometry.as_str() {
            "circle" => Boundary::Closed(ClosedCurve::circle(self.radius)),
            "ellipse" => Boundary::Closed(ClosedCurve::ellipse(self.axes[0], self.axes[1])),
            "kite" => Boundary::Closed(ClosedCurve::kite()),
            "straight" => Boundary::Open(OpenArc::straight()),
            "parabola" => Boundary::Open(OpenArc::parabola()),
            "spiral" => Boundary::Open(OpenArc::spiral()),
            g => return Err(Error::Parse(format!("unknown geometry '{g}'"))),
        })
    }

    pub fn closed_curve(&self) -> Result<ClosedCurve> {
        match self.boundary()? {
            Boundary::Closed(c) => Ok(c),
            Boundary::Open(_) => Err(Error::Parse(format!(
                "'{}' is not a closed curve",
                self.geometry
            ))),
        }
    }

    pub fn open_arc(&self) -> Result<OpenArc> {
        match self.boundary()? {
            Boundary::Open(a) => Ok(a),
            Boundary::Closed(_) => Err(Error::Parse(format!(
                "'{}' is not an open arc",
                self.geometry
            ))),
        }
    }

    /// Material at the configured frequency. `boundary_length` resolves `ks_length`.
    pub fn material(&self, boundary_length: Option<f64>) -> Result<Material> {
        let omega = match (self.ks_length, boundary_length) {
            (Some(kl), Some(len)) => kl / len * (self.mu / self.rho).sqrt(),
            (Some(_), None) => return Err(Error::Parse("ks_length needs a boundary".into())),
            (None, _) => self.omega,
        };
        Material::new(self.lambda, self.mu, self.mu_tilde, self.rho, omega)
    }

    pub fn static_material(&self) -> Result<Material> {
        Material::stat(self.lambda, self.mu, self.mu_tilde)
    }

    pub fn problem(&self) -> Result<Problem> {
        match self.problem.as_str() {
            "dirichlet" => Ok(Problem::Dirichlet),
            "neumann" => Ok(Problem::Neumann),
            p => Err(Error::Parse(format!("unknown problem '{p}'"))),
        }
    }

    pub fn incident(&self) -> Result<IncidentField> {
        let q = self.polarization.map(|[re, im]| C64::new(re, im));
        match self.incident.as_str() {
            "plane-p" => Ok(IncidentField::plane_p(self.angle)),
            "plane-s" => Ok(IncidentField::plane_s(self.angle)),
            "point-source" => Ok(IncidentField::point_source(self.source, q)),
            f => Err(Error::Parse(format!("unknown incident field '{f}'"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

fn read_config(p: &Path) -> Result<RunConfig> {
    let text =
        std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}
