//! Point canonical transformation: coordinate maps, the mass correction term,
//! target potentials and the transport of spectra and wavefunctions.
//!
//! With y = h(x) and φ = √(m/h')·ψ(h), the operator −½(φ'/m)' + Wφ maps onto
//! −½ψ'' + (U − ε)ψ = 0 when W = E − Q + (h'²/m)(U(h) − ε), where
//! Q = −(g'/m)'/(2g), g = √(m/h'). For h' = √m this reduces to
//! W = U(h) + (1/4m)[½m''/m − (7/8)(m'/m)²].

use serde::{Deserialize, Serialize};

use crate::catalog::{MassProfile, ReferencePotential, Variant};
use crate::error::{Error, Result};
use crate::models::{Spectrum, SpectrumEntry};
use crate::special::{adaptive_quad, kummer_poly, QUAD_TOL};

/// h(x) = βσ(x) = ∫_{x0}^x √m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PctMap {
    pub beta: f64,
    pub x0: f64,
    pub profile: MassProfile,
    offset: f64,
    closed: bool,
}

impl PctMap {
    pub fn h_prime(&self, x: f64) -> Result<f64> {
        Ok(self.profile.eval(x)?.m.sqrt())
    }

    /// σ(x) = (1/β)∫_{x0}^x √m.
    pub fn sigma(&self, x: f64) -> Result<f64> {
        if self.closed {
            let v = self
                .profile
                .sqrt_mass_integral(x)
                .ok_or(Error::Parameter("closed form of sigma unavailable".into()))?;
            return Ok((v - self.offset) / self.beta);
        }
        let p = self.profile;
        let f = move |t: f64| p.eval(t).map_or(f64::NAN, |m| m.m.sqrt());
        let v = if x >= self.x0 {
            adaptive_quad(&f, self.x0, x, QUAD_TOL)?
        } else {
            -adaptive_quad(&f, x, self.x0, QUAD_TOL)?
        };
        Ok(v / self.beta)
    }

    /// Mapped coordinate y = βσ(x).
    pub fn h(&self, x: f64) -> Result<f64> {
        Ok(self.beta * self.sigma(x)?)
    }
}

/// Build the map for a profile. σ uses the closed form when the profile has
/// one, quadrature from x0 otherwise.
pub fn build_map(profile: &MassProfile, beta: f64, x0: f64) -> Result<PctMap> {
    profile.validate()?;
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Parameter(format!("beta must be positive, got {beta}")));
    }
    let origin = profile.sigma_origin();
    let (lo, hi) = profile.domain();
    if x0 != origin && !(x0 > lo && x0 < hi) {
        return Err(Error::Domain {
            what: "sigma lower limit",
            x: x0,
            lo,
            hi,
        });
    }
    let closed_at_x0 = if x0 == origin { Some(0.0) } else { profile.sqrt_mass_integral(x0) };
    let closed = profile.sqrt_mass_integral(1.0).is_some() && closed_at_x0.is_some();
    Ok(PctMap {
        beta,
        x0,
        profile: *profile,
        offset: closed_at_x0.unwrap_or(0.0),
        closed,
    })
}

/// Force the quadrature path (used to cross-check closed forms).
pub fn build_map_quadrature(profile: &MassProfile, beta: f64, x0: f64) -> Result<PctMap> {
    let mut map = build_map(profile, beta, x0)?;
    if !x0.is_finite() {
        return Err(Error::Parameter("quadrature needs a finite lower limit".into()));
    }
    map.closed = false;
    map.offset = 0.0;
    Ok(map)
}

/// (1/4m)[½m''/m − (7/8)(m'/m)²]
pub fn mass_term(profile: &MassProfile, x: f64) -> Result<f64> {
    let t = profile.eval(x)?;
    let r = t.dm / t.m;
    Ok((0.5 * t.d2m / t.m - 0.875 * r * r) / (4.0 * t.m))
}

/// U(βσ(x)) + mass_term(x).
pub fn target_potential_1d(profile: &MassProfile, reference: &ReferencePotential, map: &PctMap, x: f64) -> Result<f64> {
    let y = map.h(x)?;
    if !(y > 0.0) {
        return Err(Error::Domain {
            what: "transported coordinate",
            x: y,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    Ok(reference.potential(y) + mass_term(profile, x)?)
}

/// Target spectrum equals the reference spectrum level by level.
pub fn transport_spectrum(reference: &ReferencePotential, n_max: u32, l_ref: f64, variant: Variant) -> Result<Spectrum> {
    let entries = (0..=n_max)
        .map(|n| {
            Ok(SpectrumEntry {
                n,
                l: 0,
                energy: reference.energy(n, l_ref, variant)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { entries })
}

/// m^{1/4}·ψ_n(βσ(x)), the transported eigenfunction (unnormalized).
pub fn transport_wavefunction(profile: &MassProfile, reference: &ReferencePotential, map: &PctMap, n: u32, x: f64) -> Result<f64> {
    transport_with_exponent(profile, reference, map, n, x, 0.25)
}

/// √(h'/m)·ψ_n = m^{−1/4}·ψ_n, the general prefactor as printed. It does not
/// solve the target equation for non-constant mass; kept for the report.
pub fn transport_wavefunction_printed(profile: &MassProfile, reference: &ReferencePotential, map: &PctMap, n: u32, x: f64) -> Result<f64> {
    transport_with_exponent(profile, reference, map, n, x, -0.25)
}

fn transport_with_exponent(
    profile: &MassProfile,
    reference: &ReferencePotential,
    map: &PctMap,
    n: u32,
    x: f64,
    exponent: f64,
) -> Result<f64> {
    let m = profile.eval(x)?.m;
    let y = map.h(x)?;
    Ok(m.powf(exponent) * reference.wavefunction(n, 0.0, y, Variant::Construction)?)
}

/// Coordinate map with derivatives up to third order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinateMap {
    Sigma(PctMap),
    /// h = r^ν
    Power {
        nu: f64,
    },
    /// h = ln(r)/a
    Log {
        a: f64,
    },
}

impl CoordinateMap {
    pub fn h(&self, x: f64) -> Result<f64> {
        match *self {
            Self::Sigma(map) => map.h(x),
            Self::Power { nu } => Ok(x.powf(nu)),
            Self::Log { a } => Ok(x.ln() / a),
        }
    }

    /// [h', h'', h'''] at x.
    pub fn derivatives(&self, x: f64) -> Result<[f64; 3]> {
        Ok(match *self {
            Self::Sigma(map) => {
                let t = map.profile.eval(x)?;
                let s = t.m.sqrt();
                [s, 0.5 * t.dm / s, 0.5 * t.d2m / s - 0.25 * t.dm * t.dm / (t.m * s)]
            }
            Self::Power { nu } => [
                nu * x.powf(nu - 1.0),
                nu * (nu - 1.0) * x.powf(nu - 2.0),
                nu * (nu - 1.0) * (nu - 2.0) * x.powf(nu - 3.0),
            ],
            Self::Log { a } => [1.0 / (a * x), -1.0 / (a * x * x), 2.0 / (a * x * x * x)],
        })
    }
}

/// Target potential from the general transport relation for an arbitrary
/// map: V = E − Q + (h'²/m)(U_eff(h) − ε), minus the radial diagonal terms
/// when `l` is given. `u_eff` must include the reference centrifugal term.
pub fn transport_potential(
    mass: &MassProfile,
    map: &CoordinateMap,
    u_eff: &dyn Fn(f64) -> f64,
    epsilon: f64,
    energy: f64,
    l: Option<u32>,
    x: f64,
) -> Result<f64> {
    let t = mass.eval(x)?;
    let [h1, h2, h3] = map.derivatives(x)?;
    let y = map.h(x)?;
    let s = 0.5 * (t.dm / t.m - h2 / h1);
    let ds = 0.5 * (t.d2m / t.m - (t.dm / t.m).powi(2) - h3 / h1 + (h2 / h1).powi(2));
    let q = -(ds + s * s - s * t.dm / t.m) / (2.0 * t.m);
    let w = energy - q + h1 * h1 / t.m * (u_eff(y) - epsilon);
    Ok(match l {
        Some(l) => {
            let ll = f64::from(l * (l + 1));
            w - ll / (2.0 * t.m * x * x) + t.dm / (2.0 * t.m * t.m * x)
        }
        None => w,
    })
}

/// √(m/h')·ψ(h(x)) for an arbitrary map.
pub fn transport_general_wavefunction(mass: &MassProfile, map: &CoordinateMap, psi: &dyn Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let m = mass.eval(x)?.m;
    let [h1, _, _] = map.derivatives(x)?;
    Ok((m / h1).sqrt() * psi(map.h(x)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    B1,
    B2,
    B3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    NuA,
    NuB,
    Log,
}

/// Couplings of a radial case. `coupling` is C (B1, B2) or Θ (B3 log);
/// `a` and `c` are the reference constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCouplings {
    pub coupling: f64,
    pub a: f64,
    pub c: f64,
}

/// Reference operator used to check a radial case numerically. The target
/// energy is `scale·λ + shift` where λ is the reference eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceOperator {
    /// −½ψ'' + U_eff ψ = λψ
    Standard { reference: ReferencePotential, l_ref: f64 },
    /// −½ψ'' + [ℓ'(ℓ'+1)/(2ρ²) + inv_sq/ρ² + constant]ψ = λ ρ^weight_power ψ
    Sturmian {
        l_ref: f64,
        inv_sq: f64,
        constant: f64,
        weight_power: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceProblem {
    pub operator: ReferenceOperator,
    pub scale: f64,
    pub shift: f64,
}

impl ReferenceOperator {
    /// Effective potential at ρ (the left-hand side without the kinetic term).
    #[must_use]
    pub fn effective_potential(&self, y: f64) -> f64 {
        match *self {
            Self::Standard { reference, l_ref } => reference.effective_potential(l_ref, y),
            Self::Sturmian {
                l_ref, inv_sq, constant, ..
            } => (0.5 * l_ref * (l_ref + 1.0) + inv_sq) / (y * y) + constant,
        }
    }

    /// Weight of the right-hand side, None for the standard problem.
    #[must_use]
    pub fn weight(&self, y: f64) -> Option<f64> {
        match *self {
            Self::Standard { .. } => None,
            Self::Sturmian { weight_power, .. } => Some(y.powf(weight_power)),
        }
    }
}

/// Reference problem whose level n transports onto target level n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelReference {
    pub reference: ReferencePotential,
    pub l_ref: f64,
    pub epsilon: f64,
}

/// A radial power-law (or logarithmic) mass case, m = μ r^κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCase {
    pub family: Family,
    pub branch: Branch,
    pub kappa: f64,
    pub mu: f64,
    pub l: u32,
    /// Exponent of h = r^ν (None for the logarithmic map).
    pub nu: Option<f64>,
    /// Index as defined in the printed closed forms (ℒ, ℒ', Λ, Λ' or Γ).
    pub script_l: f64,
    pub couplings: RadialCouplings,
    /// Effective index p of the transported solution (ℓ'+½ of the
    /// reference after absorbing inverse-square terms).
    pub index: f64,
    /// ℓ' + ½ of the reference problem.
    pub l_ref_half: f64,
}

fn sqrt_checked(r: f64, what: &str) -> Result<f64> {
    if r >= 0.0 && r.is_finite() {
        Ok(r.sqrt())
    } else {
        Err(Error::Parameter(format!("negative radicand {r} in {what}")))
    }
}

/// ℓ-independent checks of a radial case.
pub fn check_radial_params(family: Family, branch: Branch, kappa: f64, mu: f64, couplings: RadialCouplings) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Parameter(format!("mu must be positive, got {mu}")));
    }
    let RadialCouplings { coupling, a, c } = couplings;
    if !(coupling.is_finite() && a.is_finite() && c.is_finite() && kappa.is_finite()) {
        return Err(Error::Parameter("non-finite coupling".into()));
    }
    match branch {
        Branch::Log if kappa != -2.0 => return Err(Error::Parameter(format!("logarithmic branch needs kappa = -2, got {kappa}"))),
        Branch::NuA | Branch::NuB if !(kappa > -2.0) => {
            return Err(Error::Parameter(format!("power branch needs kappa > -2, got {kappa}")))
        }
        _ => {}
    }
    let fail = |s: &str| Err(Error::Validity(s.to_string()));
    match (family, branch) {
        (Family::B1, Branch::NuA) if coupling == 0.0 => fail("B1a needs C != 0"),
        (_, Branch::NuB) if !(coupling > 0.0) => fail("coupling-exchange branch needs C > 0"),
        (Family::B2, Branch::NuA) | (_, Branch::Log) if !(a > 0.0) => fail("coupling a must be positive"),
        (Family::B3, Branch::NuA | Branch::Log) if !(c > 0.0) => fail("oscillator coupling c must be positive"),
        _ => Ok(()),
    }
}

/// Build a radial case: ν from the branch, the printed index ℒ(ℓ) and the
/// matched reference angular momentum.
pub fn radial_case(family: Family, branch: Branch, kappa: f64, mu: f64, l: u32, couplings: RadialCouplings) -> Result<RadialCase> {
    check_radial_params(family, branch, kappa, mu, couplings)?;
    let RadialCouplings { coupling, a, c } = couplings;
    let lf = f64::from(l);
    let ll = lf * (lf + 1.0);
    let k2 = kappa + 2.0;
    let nu = match (branch, family) {
        (Branch::NuA, _) => Some(1.0 + 0.5 * kappa),
        (Branch::NuB, Family::B3) => Some(0.25 * k2),
        (Branch::NuB, _) => Some(k2),
        (Branch::Log, _) => None,
    };
    let km1 = (kappa - 1.0) * (kappa - 1.0);
    let script_l = match (family, branch) {
        (Family::B1, Branch::NuA | Branch::NuB) => sqrt_checked(4.0 * ll + km1, "L(l)")? / k2,
        (Family::B2, Branch::NuA | Branch::NuB) => sqrt_checked(4.0 * ll + km1 - 2.0 * c * k2 * k2, "L(l)")? / k2,
        (Family::B3, Branch::NuA) => sqrt_checked(4.0 * ll + km1 - 2.0 * a * k2 * k2, "L(l)")? / k2,
        (Family::B3, Branch::NuB) => sqrt_checked(16.0 * ll + 4.0 * km1 - 2.0 * a * k2 * k2, "L'(l)")? / k2,
        (Family::B1 | Family::B2, Branch::Log) => 0.5 * sqrt_checked(1.0 + 4.0 * mu * coupling, "Lambda(l)")?,
        (Family::B3, Branch::Log) => 0.5 * sqrt_checked(1.0 + 8.0 * mu * coupling, "Gamma(l)")?,
    };
    let (index, l_ref_half) = match (family, nu) {
        (_, Some(nu)) => {
            let p = (ll + 0.25 * km1).sqrt() / nu;
            let half = match family {
                Family::B1 => p,
                Family::B2 => sqrt_checked(p * p - 2.0 * c, "matched reference angular momentum")?,
                Family::B3 => sqrt_checked(p * p - 2.0 * a, "matched reference angular momentum")?,
            };
            (p, half)
        }
        (Family::B1, None) => (script_l, script_l),
        (Family::B2, None) => (sqrt_checked(script_l * script_l + 2.0 * c, "effective index")?, script_l),
        (Family::B3, None) => (sqrt_checked(script_l * script_l + 2.0 * a, "effective index")?, script_l),
    };
    let case = RadialCase {
        family,
        branch,
        kappa,
        mu,
        l,
        nu,
        script_l,
        couplings,
        index,
        l_ref_half,
    };
    Ok(case)
}

impl RadialCase {
    #[must_use]
    pub fn mass(&self) -> MassProfile {
        MassProfile::RadialPower {
            mu: self.mu,
            kappa: self.kappa,
        }
    }

    #[must_use]
    pub fn map(&self) -> CoordinateMap {
        match self.nu {
            Some(nu) => CoordinateMap::Power { nu },
            None => CoordinateMap::Log { a: self.couplings.a },
        }
    }

    /// Left boundary of the radial domain (origin, or r = 1 for the log map).
    #[must_use]
    pub fn wall(&self) -> f64 {
        if self.nu.is_some() {
            0.0
        } else {
            1.0
        }
    }

    #[must_use]
    pub fn reference_l(&self) -> f64 {
        self.l_ref_half - 0.5
    }

    fn nu(&self) -> f64 {
        self.nu.unwrap_or(f64::NAN)
    }

    fn log_shift(&self) -> f64 {
        let lf = f64::from(self.l);
        (1.125 + 0.5 * lf * (lf + 1.0)) / self.mu
    }

    /// Matched reference coupling for the B1a case, a = μ²C²/ν².
    fn b1a_coupling(&self) -> f64 {
        let nu = self.nu();
        (self.mu * self.couplings.coupling / nu).powi(2)
    }

    /// Constant W of the coupling-exchange (Sturmian) branches.
    fn exchange_constant(&self) -> f64 {
        let nu = self.nu();
        let mu = self.mu;
        let cc = self.couplings.coupling;
        match self.family {
            Family::B1 => mu * mu * cc / (2.0 * nu * nu),
            Family::B2 => 2.0 * mu * mu * cc / (nu * nu),
            Family::B3 => 2.0 * mu * mu * cc / (nu * nu),
        }
    }

    /// Reference coupling at level n for the exchange branches: a_n for
    /// B1b/B2b, c_n for B3b.
    #[must_use]
    pub fn exchange_coupling(&self, n: u32) -> f64 {
        let nf = f64::from(n);
        let w = self.exchange_constant();
        match self.family {
            Family::B1 | Family::B2 => (nf + 0.5 + self.index) * (2.0 * w).sqrt(),
            Family::B3 => w * w / (2.0 * (2.0 * nf + 1.0 + self.index).powi(2)),
        }
    }

    /// Construction target potential V(r).
    #[must_use]
    pub fn potential(&self, r: f64) -> f64 {
        let RadialCouplings { coupling: cc, a, c } = self.couplings;
        let mu = self.mu;
        let t = r.ln();
        match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => -mu * cc * cc * r.powf(-self.nu()),
            (Family::B1, Branch::NuB) => 0.5 * mu * cc * r.powf(self.nu()),
            (Family::B1, Branch::Log) => -1.0 / (mu * t) + cc / (2.0 * t * t),
            (Family::B2, Branch::NuA) => -(a * self.nu().powi(2) / mu) * r.powf(-self.nu()),
            (Family::B2, Branch::NuB) => 2.0 * mu * cc * r.powf(self.nu()),
            (Family::B2, Branch::Log) => -1.0 / (mu * t) + (c / mu + 0.5 * cc) / (t * t),
            (Family::B3, Branch::NuA) => (c * self.nu().powi(2) / mu) * r.powf(self.kappa + 2.0),
            (Family::B3, Branch::NuB) => -2.0 * mu * cc * r.powf(-2.0 * self.nu()),
            (Family::B3, Branch::Log) => c * t * t / (mu * a.powi(4)) + (a / mu + cc) / (t * t),
        }
    }

    /// Construction eigenvalue E_n.
    #[must_use]
    pub fn energy(&self, n: u32) -> f64 {
        let RadialCouplings { coupling: cc, a, c } = self.couplings;
        let nf = f64::from(n);
        let mu = self.mu;
        let p = self.index;
        match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => {
                let nu = self.nu();
                let am = self.b1a_coupling();
                -(nu * nu / (2.0 * mu)) * am * am / (nf + 0.5 + p).powi(2)
            }
            (Family::B1, Branch::NuB) => self.nu() * cc.sqrt() * (nf + 0.5 + p),
            (Family::B2, Branch::NuA) => {
                let nu = self.nu();
                -(nu * nu / (2.0 * mu)) * a * a / (nf + 0.5 + p).powi(2)
            }
            (Family::B2, Branch::NuB) => 2.0 * self.nu() * cc.sqrt() * (nf + 0.5 + p),
            (Family::B1 | Family::B2, Branch::Log) => self.log_shift() - 1.0 / (2.0 * mu * (nf + 0.5 + p).powi(2)),
            (Family::B3, Branch::NuA) => {
                let nu = self.nu();
                (nu * nu / mu) * (2.0 * c).sqrt() * (2.0 * nf + 1.0 + p)
            }
            (Family::B3, Branch::NuB) => {
                let nu = self.nu();
                -2.0 * mu.powi(3) * cc * cc / (nu * nu * (2.0 * nf + 1.0 + p).powi(2))
            }
            (Family::B3, Branch::Log) => self.log_shift() + (2.0 * c).sqrt() * (2.0 * nf + 1.0 + p) / (mu * a * a),
        }
    }

    /// Reference problem that transports onto level n.
    pub fn level_reference(&self, n: u32) -> Result<LevelReference> {
        let RadialCouplings { a, c, .. } = self.couplings;
        let l_ref = self.reference_l();
        let (reference, epsilon) = match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => (ReferencePotential::CoulombConst { a: self.b1a_coupling(), c }, None),
            (Family::B1, Branch::NuB) => (
                ReferencePotential::CoulombConst {
                    a: self.exchange_coupling(n),
                    c: 0.0,
                },
                Some(-self.exchange_constant()),
            ),
            (Family::B1, Branch::Log) => (ReferencePotential::CoulombConst { a, c }, None),
            (Family::B2, Branch::NuA | Branch::Log) => (ReferencePotential::CoulombInvSq { a, c }, None),
            (Family::B2, Branch::NuB) => (
                ReferencePotential::CoulombInvSq {
                    a: self.exchange_coupling(n),
                    c,
                },
                Some(-self.exchange_constant()),
            ),
            (Family::B3, Branch::NuA | Branch::Log) => (ReferencePotential::OscInvSq { a, c }, None),
            (Family::B3, Branch::NuB) => (
                ReferencePotential::OscInvSq {
                    a,
                    c: self.exchange_coupling(n),
                },
                Some(self.exchange_constant()),
            ),
        };
        let epsilon = match epsilon {
            Some(e) => e,
            None => reference.energy(n, l_ref, Variant::Construction)?,
        };
        Ok(LevelReference { reference, l_ref, epsilon })
    }

    /// Constant-mass problem on the mapped coordinate used by the verifier.
    pub fn reference_problem(&self) -> Result<ReferenceProblem> {
        let RadialCouplings { a, c, .. } = self.couplings;
        let l_ref = self.reference_l();
        let mu = self.mu;
        let sturmian = |inv_sq: f64, constant: f64, weight_power: f64| ReferenceOperator::Sturmian {
            l_ref,
            inv_sq,
            constant,
            weight_power,
        };
        let nu2 = self.nu.map_or(f64::NAN, |v| v * v);
        let log_scale = 1.0 / (a * a * mu);
        Ok(match (self.family, self.branch) {
            (Family::B1, Branch::NuB) => ReferenceProblem {
                operator: sturmian(0.0, self.exchange_constant(), -1.0),
                scale: nu2 / mu,
                shift: 0.0,
            },
            (Family::B2, Branch::NuB) => ReferenceProblem {
                operator: sturmian(c, self.exchange_constant(), -1.0),
                scale: nu2 / mu,
                shift: 0.0,
            },
            (Family::B3, Branch::NuB) => ReferenceProblem {
                operator: sturmian(a, -self.exchange_constant(), 2.0),
                scale: nu2 / mu,
                shift: 0.0,
            },
            (family, branch) => {
                let reference = self.level_reference(0)?.reference;
                let operator = ReferenceOperator::Standard { reference, l_ref };
                let (scale, shift) = match (family, branch) {
                    (Family::B1, Branch::NuA) => (nu2 / mu, -nu2 / mu * c),
                    (Family::B1, Branch::Log) => (log_scale, -c * log_scale + self.log_shift()),
                    (_, Branch::Log) => (log_scale, self.log_shift()),
                    _ => (nu2 / mu, 0.0),
                };
                ReferenceProblem { operator, scale, shift }
            }
        })
    }

    /// Construction wavefunction √(m/h')·ψ_n(h(r)) (unnormalized).
    pub fn wavefunction(&self, n: u32, r: f64) -> Result<f64> {
        if !(r > self.wall()) {
            if r == self.wall() {
                return Ok(0.0);
            }
            return Err(Error::Domain {
                what: "radial wavefunction",
                x: r,
                lo: self.wall(),
                hi: f64::INFINITY,
            });
        }
        let lr = self.level_reference(n)?;
        let psi = |y: f64| lr.reference.wavefunction(n, lr.l_ref, y, Variant::Construction);
        transport_general_wavefunction(&self.mass(), &self.map(), &psi, r)
    }

    /// Target potential as printed.
    #[must_use]
    pub fn printed_potential(&self, r: f64) -> f64 {
        let RadialCouplings { coupling: cc, a, c } = self.couplings;
        let mu = self.mu;
        let k = self.kappa;
        let t = r.ln();
        match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => -mu * cc * cc * r.powf(-1.0 - 0.5 * k),
            (Family::B1, Branch::NuB) => -0.5 * mu * cc * r.powf(k + 2.0),
            (Family::B2, Branch::NuA) => -(a * self.nu().powi(2) / mu) * r.powf(-1.0 - 0.5 * k),
            (Family::B2, Branch::NuB) => -2.0 * mu * cc * r.powf(k + 2.0),
            (Family::B3, Branch::NuB) => -2.0 * mu * cc * r.powf(-0.5 * k - 1.0),
            (Family::B1, Branch::Log) => -1.0 / (mu * t) + 0.5 * cc / (t * t),
            (Family::B2, Branch::Log) => -1.0 / (mu * t) + (c / mu + 0.5 * cc) / (t * t),
            (Family::B3, Branch::NuA) => (c * self.nu().powi(2) / mu) * r.powf(k + 2.0),
            (Family::B3, Branch::Log) => c / (mu * a.powi(4)) * t * t + (a / mu + cc) / (t * t),
        }
    }

    /// Eigenvalue as printed; NaN where the printed expression is undefined.
    #[must_use]
    pub fn printed_energy(&self, n: u32) -> f64 {
        let RadialCouplings { coupling: cc, a, c } = self.couplings;
        let nf = f64::from(n);
        let mu = self.mu;
        let sl = self.script_l;
        match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => -0.5 * self.b1a_coupling() * mu * cc * cc / (nf + sl + 0.5).powi(2),
            (Family::B1, Branch::NuB) => mu * cc / (2.0 * self.exchange_coupling(n)) * (2.0 * nf + 2.0 * sl + 1.0).powi(2),
            (Family::B1, Branch::Log) => (-0.5 / (nf + 0.5 + sl).powi(2) - 1.125) / mu,
            (Family::B2, Branch::NuA) => {
                let nu = self.nu();
                -(a * a * nu * nu / (2.0 * mu)) / (nf + 0.5 + (sl * sl + 2.0 * c).sqrt()).powi(2)
            }
            (Family::B2, Branch::NuB) => -(4.0 * mu * cc / self.exchange_coupling(n)) * (nf + 0.5 + (sl * sl + 2.0 * c).sqrt()).powi(2),
            (Family::B2, Branch::Log) => (-0.5 * (nf + 0.5 + (sl + 2.0 * c).sqrt()).powi(2) - 1.125) / mu,
            (Family::B3, Branch::NuA) => {
                let nu = self.nu();
                (2.0 * c * nu.powi(4) / (mu * mu)).sqrt() * (2.0 * nf + 1.0 + (2.0 * sl * sl + 2.0 * a).sqrt())
            }
            (Family::B3, Branch::NuB) => {
                let cn = self.exchange_coupling(n);
                -(2.0 * cc * cc * mu * mu * cn).sqrt() / (2.0 * nf + 1.0 + (sl * sl + 2.0 * a).sqrt())
            }
            (Family::B3, Branch::Log) => {
                (2.0 * c / (mu * mu * a.powi(4))).sqrt() * (2.0 * nf + 1.0 + (sl * sl + 2.0 * a).sqrt()) - 1.125 / mu
            }
        }
    }

    /// Wavefunction as printed, up to its normalization constant.
    pub fn printed_wavefunction(&self, n: u32, r: f64) -> Result<f64> {
        let RadialCouplings { a, c, .. } = self.couplings;
        let nf = f64::from(n);
        let k = self.kappa;
        let sl = self.script_l;
        let t = r.ln();
        // δ of the oscillator reference evaluated at the matched ℓ'
        let delta = 0.25 * (1.0 + 2.0 * self.index);
        Ok(match (self.family, self.branch) {
            (Family::B1, Branch::NuA) => {
                let nu = 1.0 + 0.5 * k;
                let zeta = self.b1a_coupling() / (nf + sl + 0.5);
                let rn = r.powf(nu);
                (-zeta * rn).exp() * r.powf(nu * (sl + 0.5) + 0.25 * k) * kummer_poly(n, 2.0 * sl + 1.0, 2.0 * zeta * rn)?
            }
            (Family::B1, Branch::NuB) => {
                let zeta = self.exchange_coupling(n) / (nf + sl + 0.5);
                (-zeta * r.powf(k + 2.0)).exp()
                    * r.powf((k + 2.0) * (sl + 0.5) - 0.5)
                    * kummer_poly(n, 2.0 * sl + 1.0, 2.0 * zeta * r.powf(1.0 + 0.5 * k))?
            }
            (Family::B1, Branch::Log) => {
                let eta = 1.0 / (nf + 0.5 + sl);
                r.powf(-0.5) * t.powf(0.5 + sl) * (-eta * t).exp() * kummer_poly(n, 1.0 + 2.0 * sl, 2.0 * eta * t)?
            }
            (Family::B2, Branch::NuA) => {
                let s = (sl * sl + 2.0 * c).sqrt();
                let z = a / (nf + 0.5 + s);
                let rn = r.powf(1.0 + 0.5 * k);
                r.powf(0.25 * k) * (-z * rn).exp() * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * z * rn)?
            }
            (Family::B2, Branch::NuB) => {
                let s = (sl * sl + 2.0 * c).sqrt();
                let z = self.exchange_coupling(n) / (nf + 0.5 + s);
                r.powf(-0.5) * (-z).exp() * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * z * r.powf(k + 2.0))?
            }
            (Family::B2, Branch::Log) => {
                let s = (sl * sl + 2.0 * c).sqrt();
                let eta = 1.0 / (nf + 0.5 + s);
                r.powf(-0.5) * (-eta * t).exp() * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * eta * t)?
            }
            (Family::B3, Branch::NuA) => {
                let rk = r.powf(k + 2.0);
                r.powf(delta * (k + 2.0) + 0.25 * k)
                    * (-(0.5 * c).sqrt() * rk).exp()
                    * kummer_poly(n, 2.0 * delta + 0.5, (2.0 * c).sqrt() * rk)?
            }
            (Family::B3, Branch::NuB) => {
                let cn = self.exchange_coupling(n);
                r.powf(delta * (1.0 + 0.5 * k) + 0.25 * k)
                    * (-(0.5 * cn).sqrt() * r.powf(1.0 + 0.5 * k)).exp()
                    * kummer_poly(n, 2.0 * delta + 0.5, (2.0 * cn).sqrt() * r.powf(0.5 * k))?
            }
            (Family::B3, Branch::Log) => {
                let d = 0.25 * (1.0 + (4.0 * sl * sl + 8.0 * a).sqrt());
                let a4 = a.powi(4);
                r.powf(-0.5) * (-(c / (2.0 * a4)).sqrt() * t * t).exp() * kummer_poly(n, 2.0 * d + 0.5, (2.0 * c / a4).sqrt() * t * t)?
            }
        })
    }
}

/// Radial target at r: construction and printed potential plus energy
/// evaluators, tagged with the equation numbers of the printed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialTarget {
    pub potential: f64,
    pub printed_potential: f64,
    pub potential_equation: u32,
    pub energy_equation: u32,
    pub case: RadialCase,
}

impl RadialTarget {
    #[must_use]
    pub fn energy(&self, n: u32) -> f64 {
        self.case.energy(n)
    }

    #[must_use]
    pub fn printed_energy(&self, n: u32) -> f64 {
        self.case.printed_energy(n)
    }
}

/// Equation numbers (potential, energy, wavefunction) of a radial case.
#[must_use]
pub fn radial_equations(family: Family, branch: Branch) -> [u32; 3] {
    match (family, branch) {
        (Family::B1, Branch::NuA) => [36, 37, 38],
        (Family::B1, Branch::NuB) => [39, 40, 41],
        (Family::B1, Branch::Log) => [42, 43, 44],
        (Family::B2, Branch::NuA) => [48, 49, 50],
        (Family::B2, Branch::NuB) => [51, 52, 53],
        (Family::B2, Branch::Log) => [54, 55, 56],
        (Family::B3, Branch::NuA) => [59, 60, 61],
        (Family::B3, Branch::NuB) => [62, 63, 64],
        (Family::B3, Branch::Log) => [65, 66, 67],
    }
}

pub fn radial_target(case: &RadialCase, r: f64) -> Result<RadialTarget> {
    if !(r > case.wall()) {
        return Err(Error::Domain {
            what: "radial target",
            x: r,
            lo: case.wall(),
            hi: f64::INFINITY,
        });
    }
    let [pe, ee, _] = radial_equations(case.family, case.branch);
    Ok(RadialTarget {
        potential: case.potential(r),
        printed_potential: case.printed_potential(r),
        potential_equation: pe,
        energy_equation: ee,
        case: *case,
    })
}
