//! Mass profiles and constant-mass reference potentials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::kummer_poly;

/// Which of the two evaluator sets to use: the exact construction or the
/// formula as printed in the source literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Construction,
    Printed,
}

/// Mass function with analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MassProfile {
    /// m = 1
    Constant,
    /// m = ((δ + x²) / (1 + x²))²
    Rational { delta: f64 },
    /// m = a / (δ' + x²)
    Lorentzian { a: f64, dp: f64 },
    /// m = 1 + tanh(δ'' x)
    Tanh { dpp: f64 },
    /// m = μ r^κ
    RadialPower { mu: f64, kappa: f64 },
}

/// m, m', m'' at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassTriple {
    pub m: f64,
    pub dm: f64,
    pub d2m: f64,
}

impl MassProfile {
    #[must_use]
    pub fn id(&self) -> &'static str {
        match self {
            Self::Constant => "const",
            Self::Rational { .. } => "A1",
            Self::Lorentzian { .. } => "A2",
            Self::Tanh { .. } => "A3",
            Self::RadialPower { .. } => "rpow",
        }
    }

    /// Check that the parameters give a positive mass.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Parameter(s));
        match *self {
            Self::Constant => Ok(()),
            Self::Rational { delta } if !(delta > 0.0) || !delta.is_finite() => bad(format!("delta must be positive, got {delta}")),
            Self::Lorentzian { a, dp } if !(a > 0.0 && dp > 0.0) || !(a + dp).is_finite() => {
                bad(format!("a and dp must be positive, got a={a}, dp={dp}"))
            }
            Self::Tanh { dpp } if !(dpp > 0.0) || !dpp.is_finite() => bad(format!("dpp must be positive, got {dpp}")),
            Self::RadialPower { mu, kappa } if !(mu > 0.0) || !(mu + kappa).is_finite() => {
                bad(format!("mu must be positive, got mu={mu}, kappa={kappa}"))
            }
            _ => Ok(()),
        }
    }

    /// Open interval on which the mass is defined.
    #[must_use]
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Self::RadialPower { .. } => (0.0, f64::INFINITY),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn eval(&self, x: f64) -> Result<MassTriple> {
        let (lo, hi) = self.domain();
        if !(x > lo && x < hi) {
            return Err(Error::Domain {
                what: "mass profile",
                x,
                lo,
                hi,
            });
        }
        let t = match *self {
            Self::Constant => MassTriple { m: 1.0, dm: 0.0, d2m: 0.0 },
            Self::Rational { delta } => {
                let d = delta - 1.0;
                let q = 1.0 + x * x;
                let s = 1.0 + d / q;
                let s1 = -2.0 * x * d / (q * q);
                let s2 = d * (6.0 * x * x - 2.0) / (q * q * q);
                MassTriple {
                    m: s * s,
                    dm: 2.0 * s * s1,
                    d2m: 2.0 * (s1 * s1 + s * s2),
                }
            }
            Self::Lorentzian { a, dp } => {
                let q = dp + x * x;
                MassTriple {
                    m: a / q,
                    dm: -2.0 * a * x / (q * q),
                    d2m: a * (6.0 * x * x - 2.0 * dp) / (q * q * q),
                }
            }
            Self::Tanh { dpp } => {
                // 2 / (1 + e^{-2kx}) keeps full relative precision on the left tail
                let m = 2.0 / (1.0 + (-2.0 * dpp * x).exp());
                let dm = dpp * m * (2.0 - m);
                MassTriple {
                    m,
                    dm,
                    d2m: -2.0 * dpp * (dpp * x).tanh() * dm,
                }
            }
            Self::RadialPower { mu, kappa } => MassTriple {
                m: mu * x.powf(kappa),
                dm: mu * kappa * x.powf(kappa - 1.0),
                d2m: mu * kappa * (kappa - 1.0) * x.powf(kappa - 2.0),
            },
        };
        if t.m > 0.0 && t.m.is_finite() && t.dm.is_finite() && t.d2m.is_finite() {
            Ok(t)
        } else {
            Err(Error::Singular { x })
        }
    }

    /// Lower limit of the closed-form integral of √m.
    #[must_use]
    pub fn sigma_origin(&self) -> f64 {
        match *self {
            Self::Tanh { .. } => f64::NEG_INFINITY,
            Self::RadialPower { kappa: -2.0, .. } => 1.0,
            _ => 0.0,
        }
    }

    /// Closed form of ∫ √m from `sigma_origin()` to x, if one is known.
    #[must_use]
    pub fn sqrt_mass_integral(&self, x: f64) -> Option<f64> {
        match *self {
            Self::Constant => Some(x),
            Self::Rational { delta } => Some(x + (delta - 1.0) * x.atan()),
            Self::Lorentzian { a, dp } => Some(a.sqrt() * (x / dp.sqrt()).asinh()),
            Self::Tanh { dpp } => Some(tanh_sigma(dpp, x)),
            Self::RadialPower { mu, kappa } => {
                if kappa == -2.0 {
                    Some(mu.sqrt() * x.ln())
                } else if kappa > -2.0 {
                    let nu = 1.0 + 0.5 * kappa;
                    Some(mu.sqrt() * x.powf(nu) / nu)
                } else {
                    None
                }
            }
        }
    }
}

/// ∫_{-∞}^x √(1 + tanh(kt)) dt = (√2/k) artanh(√(m/2)), in a form that stays
/// accurate when m/2 is within rounding of 1.
fn tanh_sigma(k: f64, x: f64) -> f64 {
    let lq = -2.0 * k * x; // ln q with q = e^{-2kx}
    let ln1pq = if lq > 36.0 { lq + (-lq).exp().ln_1p() } else { lq.exp().ln_1p() };
    let u = (-0.5 * ln1pq).exp();
    let ln_1mu = if lq < -36.0 {
        lq - std::f64::consts::LN_2
    } else {
        (-(-0.5 * ln1pq).exp_m1()).ln()
    };
    std::f64::consts::SQRT_2 / k * 0.5 * (u.ln_1p() - ln_1mu)
}

/// (m, m', m'') of a profile at x.
pub fn mass_eval(profile: &MassProfile, x: f64) -> Result<(f64, f64, f64)> {
    let t = profile.eval(x)?;
    Ok((t.m, t.dm, t.d2m))
}

/// Constant-mass solvable potentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ReferencePotential {
    /// U = A/y + B/y² on y > 0 (no centrifugal term).
    Kratzer { a: f64, b: f64 },
    /// U = -a/ρ + c, radial.
    CoulombConst { a: f64, c: f64 },
    /// U = -a/ρ + c/ρ², radial.
    CoulombInvSq { a: f64, c: f64 },
    /// U = c ρ² + a/ρ², radial.
    OscInvSq { a: f64, c: f64 },
}

impl ReferencePotential {
    #[must_use]
    pub fn id(&self) -> &'static str {
        match self {
            Self::Kratzer { .. } => "kratzer",
            Self::CoulombConst { .. } => "B1",
            Self::CoulombInvSq { .. } => "B2",
            Self::OscInvSq { .. } => "B3",
        }
    }

    #[must_use]
    pub fn is_radial(&self) -> bool {
        !matches!(self, Self::Kratzer { .. })
    }

    /// The bare potential U(y).
    #[must_use]
    pub fn potential(&self, y: f64) -> f64 {
        match *self {
            Self::Kratzer { a, b } => a / y + b / (y * y),
            Self::CoulombConst { a, c } => -a / y + c,
            Self::CoulombInvSq { a, c } => -a / y + c / (y * y),
            Self::OscInvSq { a, c } => c * y * y + a / (y * y),
        }
    }

    /// U plus the centrifugal term ℓ'(ℓ'+1)/(2y²) for radial references.
    #[must_use]
    pub fn effective_potential(&self, l_ref: f64, y: f64) -> f64 {
        if self.is_radial() {
            self.potential(y) + l_ref * (l_ref + 1.0) / (2.0 * y * y)
        } else {
            self.potential(y)
        }
    }

    /// Bound-state existence for level n at reference angular momentum ℓ'.
    pub fn validity(&self, _n: u32, l_ref: f64) -> Result<()> {
        let fail = |s: String| Err(Error::Validity(s));
        match *self {
            Self::Kratzer { a, b } => {
                if !(a < 0.0) {
                    return fail(format!("Kratzer needs A < 0, got A = {a}"));
                }
                if 16.0 * b > 1.0 || 1.0 + 8.0 * b < 0.0 {
                    return fail(format!("Kratzer needs -1/8 <= B <= 1/16, got B = {b}"));
                }
                Ok(())
            }
            Self::CoulombConst { a, .. } => {
                if !(a > 0.0) {
                    return fail(format!("Coulomb coupling a must be positive, got {a}"));
                }
                if !(l_ref >= -0.5) {
                    return fail(format!("reference angular momentum {l_ref} < -1/2"));
                }
                Ok(())
            }
            Self::CoulombInvSq { a, c } => {
                if !(a > 0.0) {
                    return fail(format!("Coulomb coupling a must be positive, got {a}"));
                }
                let r = (l_ref + 0.5).powi(2) + 2.0 * c;
                if !(r >= 0.0) {
                    return fail(format!("(l'+1/2)^2 + 2c = {r} < 0"));
                }
                Ok(())
            }
            Self::OscInvSq { a, c } => {
                if !(c > 0.0) {
                    return fail(format!("oscillator coupling c must be positive, got {c}"));
                }
                let r = (2.0 * l_ref + 1.0).powi(2) + 8.0 * a;
                if !(r >= 0.0) {
                    return fail(format!("(2l'+1)^2 + 8a = {r} < 0"));
                }
                Ok(())
            }
        }
    }

    /// Eigenvalue of level n.
    pub fn energy(&self, n: u32, l_ref: f64, variant: Variant) -> Result<f64> {
        self.validity(n, l_ref)?;
        Ok(match *self {
            Self::Kratzer { a, b } => match variant {
                Variant::Printed => kratzer_energy(n, a, b)?,
                Variant::Construction => kratzer_energy_exact(n, a, b)?,
            },
            Self::CoulombConst { a, c } => coulomb_const_energy(n, l_ref, a, c),
            Self::CoulombInvSq { a, c } => coulomb_invsq_energy(n, l_ref, a, c)?,
            Self::OscInvSq { a, c } => osc_invsq_energy(n, l_ref, a, c)?,
        })
    }

    /// Unnormalized eigenfunction of level n.
    pub fn wavefunction(&self, n: u32, l_ref: f64, y: f64, variant: Variant) -> Result<f64> {
        self.validity(n, l_ref)?;
        if !(y >= 0.0) {
            return Err(Error::Domain {
                what: "reference wavefunction",
                x: y,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let nf = f64::from(n);
        match *self {
            Self::Kratzer { a, b } => match variant {
                Variant::Construction => {
                    let g = kratzer_gamma(b);
                    let xi = -a / (nf + g);
                    Ok(y.powf(g) * (-xi * y).exp() * kummer_poly(n, 2.0 * g, 2.0 * xi * y)?)
                }
                Variant::Printed => {
                    let s = (-a).sqrt();
                    let xi = (-2.0 * kratzer_energy(n, a, b)?).sqrt();
                    Ok(y.powf(0.5 + s) * (-xi * y).exp() * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * xi * y)?)
                }
            },
            Self::CoulombConst { a, .. } => {
                let k = a / (nf + l_ref + 1.0);
                Ok(y.powf(l_ref + 1.0) * (-k * y).exp() * kummer_poly(n, 2.0 * l_ref + 2.0, 2.0 * k * y)?)
            }
            Self::CoulombInvSq { a, c } => {
                let lam = -0.5 + ((l_ref + 0.5).powi(2) + 2.0 * c).sqrt();
                let k = a / (nf + lam + 1.0);
                let core = (-k * y).exp() * kummer_poly(n, 2.0 * lam + 2.0, 2.0 * k * y)?;
                Ok(match variant {
                    Variant::Construction => y.powf(lam + 1.0) * core,
                    Variant::Printed => core,
                })
            }
            Self::OscInvSq { a, c } => {
                let d = 0.25 * (1.0 + ((2.0 * l_ref + 1.0).powi(2) + 8.0 * a).sqrt());
                let w = (2.0 * c).sqrt();
                let f = kummer_poly(n, 2.0 * d + 0.5, w * y * y)?;
                Ok(match variant {
                    Variant::Construction => y.powf(2.0 * d) * (-0.5 * w * y * y).exp() * f,
                    Variant::Printed => (2.0 * c).powf(0.5 * d) * y.powf(2.0 * d) * (-0.5 * c * y * y).exp() * f,
                })
            }
        }
    }
}

fn kratzer_gamma(b: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 8.0 * b).sqrt())
}

/// Kratzer eigenvalue in the closed form as printed: -2A²/(2n+1+√(1-16B))².
pub fn kratzer_energy(n: u32, a: f64, b: f64) -> Result<f64> {
    if !(a < 0.0) || !(16.0 * b <= 1.0) {
        return Err(Error::Parameter(format!(
            "Kratzer printed spectrum needs A < 0 and 16B <= 1 (A={a}, B={b})"
        )));
    }
    let d = 2.0 * f64::from(n) + 1.0 + (1.0 - 16.0 * b).sqrt();
    Ok(-2.0 * a * a / (d * d))
}

/// Exact Kratzer eigenvalue for H = -½ d²/dy² + A/y + B/y² on y > 0.
pub fn kratzer_energy_exact(n: u32, a: f64, b: f64) -> Result<f64> {
    if !(a < 0.0) || !(1.0 + 8.0 * b >= 0.0) {
        return Err(Error::Parameter(format!(
            "Kratzer spectrum needs A < 0 and B >= -1/8 (A={a}, B={b})"
        )));
    }
    let d = f64::from(n) + kratzer_gamma(b);
    Ok(-a * a / (2.0 * d * d))
}

/// c - a²/(2(n+ℓ'+1)²)
#[must_use]
pub fn coulomb_const_energy(n: u32, l_ref: f64, a: f64, c: f64) -> f64 {
    let d = f64::from(n) + l_ref + 1.0;
    c - a * a / (2.0 * d * d)
}

/// -(a²/2)(n + ½ + √((ℓ'+½)² + 2c))⁻²
pub fn coulomb_invsq_energy(n: u32, l_ref: f64, a: f64, c: f64) -> Result<f64> {
    let r = (l_ref + 0.5).powi(2) + 2.0 * c;
    if !(r >= 0.0) {
        return Err(Error::Parameter(format!("(l'+1/2)^2 + 2c = {r} < 0")));
    }
    let d = f64::from(n) + 0.5 + r.sqrt();
    Ok(-a * a / (2.0 * d * d))
}

/// √(2c)[2n + 1 + ½√((2ℓ'+1)² + 8a)]
pub fn osc_invsq_energy(n: u32, l_ref: f64, a: f64, c: f64) -> Result<f64> {
    let r = (2.0 * l_ref + 1.0).powi(2) + 8.0 * a;
    if !(r >= 0.0) || !(c > 0.0) {
        return Err(Error::Parameter(format!("(2l'+1)^2 + 8a = {r} < 0 or c = {c} <= 0")));
    }
    Ok((2.0 * c).sqrt() * (2.0 * f64::from(n) + 1.0 + 0.5 * r.sqrt()))
}

/// Unnormalized reference eigenfunction (exact construction).
pub fn reference_wavefunction(reference: &ReferencePotential, n: u32, l_ref: f64, y: f64) -> Result<f64> {
    reference.wavefunction(n, l_ref, y, Variant::Construction)
}

/// Catalog entry addressed by a string id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogEntry {
    Profile(&'static str),
    Reference(&'static str),
}

/// Look up a catalog id: "A1","A2","A3","const","rpow" are mass profiles,
/// "B1","B2","B3","kratzer" are reference potentials.
#[must_use]
pub fn lookup(id: &str) -> Option<CatalogEntry> {
    match id {
        "A1" => Some(CatalogEntry::Profile("Rational")),
        "A2" => Some(CatalogEntry::Profile("Lorentzian")),
        "A3" => Some(CatalogEntry::Profile("Tanh")),
        "const" => Some(CatalogEntry::Profile("Constant")),
        "rpow" => Some(CatalogEntry::Profile("RadialPower")),
        "B1" => Some(CatalogEntry::Reference("CoulombConst")),
        "B2" => Some(CatalogEntry::Reference("CoulombInvSq")),
        "B3" => Some(CatalogEntry::Reference("OscInvSq")),
        "kratzer" => Some(CatalogEntry::Reference("Kratzer")),
        _ => None,
    }
}
