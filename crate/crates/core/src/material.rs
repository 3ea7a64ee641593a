//! Lamé parameters, the generalized traction parameter and every scalar
//! constant derived from them.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used when comparing `mu_tilde` against its forbidden values.
pub const ADMISSIBILITY_RTOL: f64 = 1e-12;

/// Isotropic homogeneous medium plus the free traction parameter `mu_tilde`.
///
/// `omega == 0` selects the static (zero-frequency) operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub lambda: f64,
    pub mu: f64,
    pub mu_tilde: f64,
    pub rho: f64,
    pub omega: f64,
}

impl Material {
    pub fn new(lambda: f64, mu: f64, mu_tilde: f64, rho: f64, omega: f64) -> Result<Self> {
        let m = Material {
            lambda,
            mu,
            mu_tilde,
            rho,
            omega,
        };
        m.validate()?;
        Ok(m)
    }

    /// Static material with unit density.
    pub fn stat(lambda: f64, mu: f64, mu_tilde: f64) -> Result<Self> {
        Self::new(lambda, mu, mu_tilde, 1.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.lambda, self.mu, self.mu_tilde, self.rho, self.omega];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMaterial("parameters must be finite".into()));
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidMaterial(format!(
                "mu must be > 0, got {}",
                self.mu
            )));
        }
        if !(self.lambda + self.mu > 0.0) {
            return Err(Error::InvalidMaterial("lambda + mu must be > 0".into()));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidMaterial("rho must be > 0".into()));
        }
        if self.omega < 0.0 {
            return Err(Error::InvalidMaterial("omega must be >= 0".into()));
        }
        Ok(())
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_mu_tilde(mut self, mu_tilde: f64) -> Self {
        self.mu_tilde = mu_tilde;
        self
    }

    pub fn is_static(&self) -> bool {
        self.omega == 0.0
    }

    /// `lambda_tilde = lambda + mu - mu_tilde`, so that the generalized
    /// traction keeps `lambda_tilde + mu_tilde = lambda + mu`.
    pub fn lambda_tilde(&self) -> f64 {
        self.lambda + self.mu - self.mu_tilde
    }

    /// Compressional wavenumber `omega sqrt(rho / (lambda + 2 mu))`.
    pub fn k_p(&self) -> f64 {
        self.omega * (self.rho / (self.lambda + 2.0 * self.mu)).sqrt()
    }

    /// Shear wavenumber `omega sqrt(rho / mu)`.
    pub fn k_s(&self) -> f64 {
        self.omega * (self.rho / self.mu).sqrt()
    }

    pub fn rho_omega2(&self) -> f64 {
        self.rho * self.omega * self.omega
    }

    pub fn constants(&self) -> Constants {
        Constants::from_material(self)
    }

    pub fn check_admissible(&self) -> Admissibility {
        let (lambda, mu, mt) = (self.lambda, self.mu, self.mu_tilde);
        let mut failures = Vec::new();
        if rel_eq(mt, -mu) {
            failures.push(Inadmissibility::MuTildeEqualsMinusMu);
        }
        let second = mu * (3.0 * lambda + 5.0 * mu) / (lambda + 3.0 * mu);
        if rel_eq(mt, second) {
            failures.push(Inadmissibility::SecondDegenerateValue);
        }
        let c = self.constants();
        let combo = c.c1_t * LN_2 + c.c2_t;
        let scale = c.c1_t.abs() * LN_2 + c.c2_t.abs();
        if combo.abs() <= ADMISSIBILITY_RTOL * scale.max(f64::MIN_POSITIVE) {
            failures.push(Inadmissibility::ZeroLogCombination);
        }
        Admissibility { failures }
    }

    /// Errors when the material violates an admissibility condition.
    pub fn require_admissible(&self) -> Result<()> {
        let a = self.check_admissible();
        if a.is_admissible() {
            Ok(())
        } else {
            Err(Error::Inadmissible(a.to_string()))
        }
    }

    /// The `mu_tilde` for which the double-layer operators are compact.
    pub fn compact_double_layer_mu_tilde(lambda: f64, mu: f64) -> f64 {
        mu * (lambda + mu) / (lambda + 3.0 * mu)
    }

    /// The two `mu_tilde` values at which the Calderón compositions are compact.
    pub fn degenerate_mu_tildes(lambda: f64, mu: f64) -> [f64; 2] {
        [-mu, mu * (3.0 * lambda + 5.0 * mu) / (lambda + 3.0 * mu)]
    }
}

fn rel_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ADMISSIBILITY_RTOL * a.abs().max(b.abs()).max(1e-300)
}

/// Closed-form scalar constants of the operator theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// `mu / (2 (lambda + 2 mu))`
    pub c_lm: f64,
    /// Double-layer cluster constant for the generalized traction.
    pub c_tilde: f64,
    /// Log coefficient of the static Kelvin tensor.
    pub c1: f64,
    /// Dyadic coefficient of the static Kelvin tensor.
    pub c2: f64,
    /// Log coefficient of the regularized hyper-singular kernel.
    pub c1_t: f64,
    /// Dyadic coefficient of the regularized hyper-singular kernel.
    pub c2_t: f64,
    /// `-1/4 + c_tilde^2`
    pub cluster_closed: f64,
    pub lam1_j: f64,
    pub lam2_j: f64,
    pub lam3_j: f64,
}

impl Constants {
    pub fn from_material(m: &Material) -> Self {
        let (lambda, mu, mt) = (m.lambda, m.mu, m.mu_tilde);
        let l2m = lambda + 2.0 * mu;
        let den = 4.0 * PI * mu * l2m;
        let c_lm = mu / (2.0 * l2m);
        let c_tilde = (2.0 * mu * mt + (lambda + mu) * (mt - mu)) / (4.0 * mu * l2m);
        let c1 = (lambda + 3.0 * mu) / den;
        let c2 = (lambda + mu) / den;
        let c1_t = -(mt + mu) * ((lambda + mu) * (mt - 3.0 * mu) + 2.0 * mu * (mt - mu)) / den;
        let c2_t = (lambda + mu) * (mt + mu).powi(2) / den;
        let pi2 = PI * PI;
        Constants {
            c_lm,
            c_tilde,
            c1,
            c2,
            c1_t,
            c2_t,
            cluster_closed: -0.25 + c_tilde * c_tilde,
            lam1_j: -pi2 * c1_t * (c1 * LN_2 + c2),
            lam2_j: -pi2 * c1_t * c1 * LN_2,
            lam3_j: -pi2 * c1_t * c1,
        }
    }

    /// Largest modulus of the open-arc point spectrum.
    pub fn spectrum_max_modulus(&self) -> f64 {
        self.lam1_j
            .abs()
            .max(self.lam2_j.abs())
            .max(3.0 * self.lam3_j.abs())
    }

    /// Distance of the open-arc point spectrum from zero. `lam2_j = ln 2 lam3_j`
    /// belongs to the spectrum, so this is below `|lam3_j|` in general.
    pub fn spectrum_min_modulus(&self) -> f64 {
        self.lam1_j
            .abs()
            .min(self.lam2_j.abs())
            .min(self.lam3_j.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Inadmissibility {
    MuTildeEqualsMinusMu,
    SecondDegenerateValue,
    ZeroLogCombination,
}

impl fmt::Display for Inadmissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inadmissibility::MuTildeEqualsMinusMu => "mu_tilde = -mu",
            Inadmissibility::SecondDegenerateValue => {
                "mu_tilde = mu(3 lambda + 5 mu)/(lambda + 3 mu)"
            }
            Inadmissibility::ZeroLogCombination => "c1_t ln 2 + c2_t = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Admissibility {
    pub failures: Vec<Inadmissibility>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("admissible");
        }
        let parts: Vec<String> = self.failures.iter().map(|r| r.to_string()).collect();
        write!(f, "inadmissible: {}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(mt: f64) -> Material {
        Material::new(2.0, 1.0, mt, 1.0, 2.0).unwrap()
    }

    #[test]
    fn reference_constants() {
        let c = mat(1.0).constants();
        assert!((c.c_lm - 0.125).abs() < 1e-15);
        assert!((c.c_tilde - 0.125).abs() < 1e-15);
        assert!((c.cluster_closed + 15.0 / 64.0).abs() < 1e-15);
        assert!((c.c1 - 5.0 / (16.0 * PI)).abs() < 1e-15);
        assert!((c.c2 - 3.0 / (16.0 * PI)).abs() < 1e-15);
        assert!((c.c1_t - 3.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((c.lam3_j + 15.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn compact_double_layer_value_zeroes_c_tilde() {
        let mt = Material::compact_double_layer_mu_tilde(2.0, 1.0);
        assert!((mt - 0.6).abs() < 1e-15);
        assert!(mat(mt).constants().c_tilde.abs() < 1e-16);
    }

    #[test]
    fn standard_traction_reduction() {
        let c = mat(1.0).constants();
        let expect = 1.0 * 3.0 / (PI * 4.0);
        assert!((c.c1_t - expect).abs() < 1e-15);
        assert!((c.c2_t + 0.0 - 4.0 * c.c2).abs() < 1e-15);
    }

    #[test]
    fn admissibility_reports() {
        let a = mat(-1.0).check_admissible();
        assert!(!a.is_admissible());
        // both hyper-singular coefficients vanish at mu_tilde = -mu
        assert_eq!(
            a.failures,
            vec![
                Inadmissibility::MuTildeEqualsMinusMu,
                Inadmissibility::ZeroLogCombination
            ]
        );
        assert_eq!(a.failures[0].to_string(), "mu_tilde = -mu");

        assert!(mat(1.0).check_admissible().is_admissible());

        let a = mat(11.0 / 5.0).check_admissible();
        assert_eq!(a.failures, vec![Inadmissibility::SecondDegenerateValue]);
        assert!(mat(1.0).require_admissible().is_ok());
        assert!(mat(-1.0).require_admissible().is_err());
    }

    #[test]
    fn wavenumbers_follow_compressional_shear_convention() {
        let m = mat(1.0);
        assert!((m.k_s() - 2.0).abs() < 1e-15);
        assert!((m.k_p() - 1.0).abs() < 1e-15);
        let lhs = (m.k_s().powi(2) - m.k_p().powi(2)) / (4.0 * PI * m.rho_omega2());
        assert!((lhs - m.constants().c2).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Material::new(2.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(Material::new(-2.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(Material::new(2.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Material::new(2.0, 1.0, 1.0, 1.0, -1.0).is_err());
    }
}
