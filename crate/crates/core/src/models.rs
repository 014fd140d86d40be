//! The twelve named cases: mass profile + reference + map, with construction
//! and as-printed evaluators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{kratzer_energy, MassProfile, ReferencePotential, Variant};
use crate::error::{Error, Result};
use crate::pct::{
    build_map, check_radial_params, radial_case, radial_equations, transport_wavefunction, transport_wavefunction_printed, Branch, Family,
    PctMap, RadialCase, RadialCouplings, ReferenceOperator, ReferenceProblem,
};
use crate::special::kummer_poly;
use crate::verify::Grid;

pub type Params = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    A1,
    A2,
    A3,
    B1a,
    B1b,
    B1log,
    B2a,
    B2b,
    B2log,
    B3a,
    B3b,
    B3log,
}

impl CaseId {
    pub const ALL: [CaseId; 12] = [
        Self::A1,
        Self::A2,
        Self::A3,
        Self::B1a,
        Self::B1b,
        Self::B1log,
        Self::B2a,
        Self::B2b,
        Self::B2log,
        Self::B3a,
        Self::B3b,
        Self::B3log,
    ];

    #[must_use]
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::A1 => "A1",
            Self::A2 => "A2",
            Self::A3 => "A3",
            Self::B1a => "B1a",
            Self::B1b => "B1b",
            Self::B1log => "B1log",
            Self::B2a => "B2a",
            Self::B2b => "B2b",
            Self::B2log => "B2log",
            Self::B3a => "B3a",
            Self::B3b => "B3b",
            Self::B3log => "B3log",
        }
    }

    #[must_use]
    pub fn is_radial(&self) -> bool {
        !matches!(self, Self::A1 | Self::A2 | Self::A3)
    }

    fn radial_kind(&self) -> Option<(Family, Branch)> {
        Some(match self {
            Self::B1a => (Family::B1, Branch::NuA),
            Self::B1b => (Family::B1, Branch::NuB),
            Self::B1log => (Family::B1, Branch::Log),
            Self::B2a => (Family::B2, Branch::NuA),
            Self::B2b => (Family::B2, Branch::NuB),
            Self::B2log => (Family::B2, Branch::Log),
            Self::B3a => (Family::B3, Branch::NuA),
            Self::B3b => (Family::B3, Branch::NuB),
            Self::B3log => (Family::B3, Branch::Log),
            _ => return None,
        })
    }

    /// Parameter keys accepted by this case.
    #[must_use]
    pub fn keys(&self) -> &'static [&'static str] {
        match self {
            Self::A1 => &["theta", "beta", "delta"],
            Self::A2 => &["theta", "beta", "a", "dp"],
            Self::A3 => &["theta", "beta", "dpp"],
            Self::B1a => &["mu", "kappa", "C", "c"],
            Self::B1b => &["mu", "kappa", "C"],
            Self::B2a | Self::B3a => &["mu", "kappa", "a", "c"],
            Self::B2b => &["mu", "kappa", "C", "c"],
            Self::B3b => &["mu", "kappa", "C", "a"],
            Self::B1log | Self::B2log => &["mu", "C", "a", "c"],
            Self::B3log => &["mu", "Theta", "a", "c"],
        }
    }

    /// Default ("desk") parameter set.
    #[must_use]
    pub fn desk_params(&self) -> Params {
        let pairs: &[(&str, f64)] = match self {
            Self::A1 => &[("theta", -0.2), ("beta", 1.0), ("delta", 2.0)],
            Self::A2 => &[("theta", -0.2), ("beta", 1.0), ("a", 1.0), ("dp", 1.0)],
            Self::A3 => &[("theta", -0.2), ("beta", 1.0), ("dpp", 1.0)],
            Self::B1a => &[("mu", 1.0), ("kappa", 1.0), ("C", 1.0), ("c", 0.5)],
            Self::B1b => &[("mu", 1.0), ("kappa", 1.0), ("C", 1.0)],
            Self::B2a => &[("mu", 1.0), ("kappa", 1.0), ("a", 1.0), ("c", 0.02)],
            Self::B2b => &[("mu", 1.0), ("kappa", 1.0), ("C", 1.0), ("c", 0.02)],
            Self::B3a => &[("mu", 1.0), ("kappa", 1.0), ("a", 0.0), ("c", 0.5)],
            Self::B3b => &[("mu", 1.0), ("kappa", 1.0), ("C", 1.0), ("a", 0.0)],
            Self::B1log | Self::B2log => &[("mu", 1.0), ("C", 1.0), ("a", 1.0), ("c", 0.5)],
            Self::B3log => &[("mu", 1.0), ("Theta", 0.5), ("a", 1.0), ("c", 2.0)],
        };
        pairs.iter().map(|(k, v)| ((*k).to_string(), *v)).collect()
    }

    /// Default angular momenta.
    #[must_use]
    pub fn desk_l_set(&self) -> Vec<u32> {
        if self.is_radial() {
            vec![1, 2]
        } else {
            vec![0]
        }
    }

    /// Default verification grid for the desk set; `truncated` marks cases
    /// whose bound states cannot be covered by any finite grid.
    #[must_use]
    pub fn desk_grid(&self) -> DeskGrid {
        let (left, right, points, truncated) = match self {
            Self::A1 => (0.0, 600.0, 30001, false),
            Self::A2 => (0.0, 200.0, 20001, true),
            Self::A3 => (-14.0, 430.0, 30001, false),
            Self::B1a => (0.0, 60.0, 20001, false),
            Self::B1b | Self::B3a => (0.0, 5.0, 20001, false),
            Self::B2a => (0.0, 35.0, 20001, false),
            Self::B2b => (0.0, 4.0, 20001, false),
            Self::B3b => (0.0, 40.0, 20001, false),
            Self::B1log | Self::B2log => (1.0, 200.0, 20001, true),
            Self::B3log => (1.0, 250.0, 20001, false),
        };
        DeskGrid {
            left,
            right,
            points,
            truncated,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown case '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeskGrid {
    pub left: f64,
    pub right: f64,
    pub points: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: u32,
    pub l: u32,
    pub energy: f64,
}

/// Energies sorted by (ℓ, n).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ModelKind {
    OneDim {
        reference: ReferencePotential,
        map: PctMap,
    },
    Radial {
        family: Family,
        branch: Branch,
        kappa: f64,
        mu: f64,
        couplings: RadialCouplings,
    },
}

/// A bound case: mass profile, reference, map, and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetModel {
    pub case: CaseId,
    pub params: Params,
    pub profile: MassProfile,
    kind: ModelKind,
}

fn get(params: &Params, key: &str) -> f64 {
    params.get(key).copied().unwrap_or(f64::NAN)
}

/// Bind a case with the desk parameters overridden by `overrides`.
pub fn make_model(case: CaseId, overrides: &Params) -> Result<TargetModel> {
    let mut params = case.desk_params();
    for (k, v) in overrides {
        if !case.keys().contains(&k.as_str()) {
            return Err(Error::Parameter(format!(
                "unknown parameter '{k}' for case {case} (accepted: {})",
                case.keys().join(", ")
            )));
        }
        if !v.is_finite() {
            return Err(Error::Parameter(format!("parameter {k} = {v} is not finite")));
        }
        params.insert(k.clone(), *v);
    }
    let p = |k: &str| get(&params, k);
    let (profile, kind) = match case {
        CaseId::A1 | CaseId::A2 | CaseId::A3 => {
            let (theta, beta) = (p("theta"), p("beta"));
            let a = theta * beta;
            if !(beta > 0.0) {
                return Err(Error::Validity(format!("beta must be positive, got {beta}")));
            }
            if !(a < 0.0) {
                return Err(Error::Validity(format!("theta*beta must be negative, got {a}")));
            }
            if a.abs() > 0.25 {
                return Err(Error::Validity(format!("|theta*beta| = {} > 1/4", a.abs())));
            }
            let profile = match case {
                CaseId::A1 => MassProfile::Rational { delta: p("delta") },
                CaseId::A2 => MassProfile::Lorentzian { a: p("a"), dp: p("dp") },
                _ => MassProfile::Tanh { dpp: p("dpp") },
            };
            profile.validate()?;
            let map = build_map(&profile, beta, profile.sigma_origin())?;
            let reference = ReferencePotential::Kratzer { a, b: a * a };
            (profile, ModelKind::OneDim { reference, map })
        }
        _ => {
            let (family, branch) = case.radial_kind().expect("radial case");
            let kappa = if branch == Branch::Log { -2.0 } else { p("kappa") };
            let coupling = if case == CaseId::B3log {
                p("Theta")
            } else {
                params.get("C").copied().unwrap_or(0.0)
            };
            let couplings = RadialCouplings {
                coupling,
                a: params.get("a").copied().unwrap_or(0.0),
                c: params.get("c").copied().unwrap_or(0.0),
            };
            let mu = p("mu");
            // per-ℓ radicands are checked when a radial case is built
            check_radial_params(family, branch, kappa, mu, couplings)?;
            let profile = MassProfile::RadialPower { mu, kappa };
            profile.validate()?;
            (
                profile,
                ModelKind::Radial {
                    family,
                    branch,
                    kappa,
                    mu,
                    couplings,
                },
            )
        }
    };
    Ok(TargetModel {
        case,
        params,
        profile,
        kind,
    })
}

impl TargetModel {
    #[must_use]
    pub fn is_radial(&self) -> bool {
        self.case.is_radial()
    }

    /// Radial case at angular momentum ℓ.
    pub fn radial(&self, l: u32) -> Result<RadialCase> {
        match self.kind {
            ModelKind::Radial {
                family,
                branch,
                kappa,
                mu,
                couplings,
            } => radial_case(family, branch, kappa, mu, l, couplings),
            ModelKind::OneDim { .. } => Err(Error::Parameter(format!("{} is not a radial case", self.case))),
        }
    }

    /// Kratzer reference and map of a one-dimensional case.
    pub fn one_dim(&self) -> Result<(ReferencePotential, PctMap)> {
        match self.kind {
            ModelKind::OneDim { reference, map } => Ok((reference, map)),
            ModelKind::Radial { .. } => Err(Error::Parameter(format!("{} is not a one-dimensional case", self.case))),
        }
    }

    /// Open interval of the target coordinate.
    #[must_use]
    pub fn domain(&self) -> (f64, f64) {
        match self.case {
            CaseId::A3 => (f64::NEG_INFINITY, f64::INFINITY),
            CaseId::B1log | CaseId::B2log | CaseId::B3log => (1.0, f64::INFINITY),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// ℓ values used for this model (ℓ = 0 only for one-dimensional cases).
    #[must_use]
    pub fn l_values(&self, l_set: &[u32]) -> Vec<u32> {
        if self.is_radial() {
            l_set.to_vec()
        } else {
            vec![0]
        }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x > lo && x < hi {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "target model",
                x,
                lo,
                hi,
            })
        }
    }

    /// Construction target potential.
    pub fn potential(&self, l: u32, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        match self.kind {
            ModelKind::OneDim { reference, map } => crate::pct::target_potential_1d(&self.profile, &reference, &map, x),
            ModelKind::Radial { .. } => Ok(self.radial(l)?.potential(x)),
        }
    }

    /// Target potential as printed.
    pub fn printed_potential(&self, l: u32, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        match self.kind {
            ModelKind::OneDim { .. } => {
                let a = get(&self.params, "theta") * get(&self.params, "beta");
                let y = self.printed_coordinate(x);
                let mass = match self.case {
                    CaseId::A1 => {
                        let d = get(&self.params, "delta");
                        let x2 = x * x;
                        0.5 * (d - 1.0) * (3.0 * x2 * x2 + 2.0 * (2.0 - d) * x2 - d) / (d + x2).powi(4)
                    }
                    CaseId::A2 => {
                        let (aa, dp) = (get(&self.params, "a"), get(&self.params, "dp"));
                        -(x * x + 2.0 * dp) / (8.0 * aa * (dp + x * x))
                    }
                    _ => {
                        let k = get(&self.params, "dpp");
                        -(k * k / 32.0) * (7.0 + (k * x).tanh()) / ((k * x).sinh() + (k * x).cosh()).powi(2)
                    }
                };
                Ok(a / y * (1.0 + a / y) + mass)
            }
            ModelKind::Radial { .. } => Ok(self.radial(l)?.printed_potential(x)),
        }
    }

    /// Mapped coordinate with the printed σ (A1: 1/tan variant; A2: √(1+x²)).
    fn printed_coordinate(&self, x: f64) -> f64 {
        let beta = get(&self.params, "beta");
        beta * self.printed_sigma(x).unwrap_or(f64::NAN)
    }

    /// σ(x) as printed, for the one-dimensional cases.
    #[must_use]
    pub fn printed_sigma(&self, x: f64) -> Option<f64> {
        let beta = get(&self.params, "beta");
        match self.case {
            CaseId::A1 => Some((x + (get(&self.params, "delta") - 1.0) / x.tan()) / beta),
            CaseId::A2 => Some(get(&self.params, "a").sqrt() / beta * (x + (1.0 + x * x).sqrt()).ln()),
            // same expression as the closed form, evaluated in its stable form
            CaseId::A3 => self.profile.sqrt_mass_integral(x).map(|v| v / beta),
            _ => None,
        }
    }

    /// Construction σ(x) for the one-dimensional cases.
    pub fn sigma(&self, x: f64) -> Result<f64> {
        self.one_dim()?.1.sigma(x)
    }

    /// Construction eigenvalue E_n at ℓ.
    pub fn energy(&self, n: u32, l: u32) -> Result<f64> {
        match self.kind {
            ModelKind::OneDim { reference, .. } => reference.energy(n, 0.0, Variant::Construction),
            ModelKind::Radial { .. } => Ok(self.radial(l)?.energy(n)),
        }
    }

    /// Eigenvalue as printed (NaN where the printed expression is undefined).
    pub fn printed_energy(&self, n: u32, l: u32) -> Result<f64> {
        match self.kind {
            ModelKind::OneDim { .. } => {
                let tb = get(&self.params, "theta") * get(&self.params, "beta");
                let d = 2.0 * f64::from(n) + 1.0 + (1.0 - 16.0 * tb * tb).sqrt();
                Ok(-tb * tb / (d * d))
            }
            ModelKind::Radial { .. } => Ok(self.radial(l)?.printed_energy(n)),
        }
    }

    /// Construction wavefunction (unnormalized).
    pub fn wavefunction(&self, n: u32, l: u32, x: f64) -> Result<f64> {
        match self.kind {
            ModelKind::OneDim { reference, map } => {
                let (lo, _) = self.domain();
                if x == lo {
                    return Ok(0.0);
                }
                self.check_domain(x)?;
                transport_wavefunction(&self.profile, &reference, &map, n, x)
            }
            ModelKind::Radial { .. } => self.radial(l)?.wavefunction(n, x),
        }
    }

    /// m^{-1/4}ψ_n: the general transport prefactor as printed.
    pub fn general_prefactor_wavefunction(&self, n: u32, x: f64) -> Result<f64> {
        let (reference, map) = self.one_dim()?;
        let (lo, _) = self.domain();
        if x == lo {
            return Ok(0.0);
        }
        transport_wavefunction_printed(&self.profile, &reference, &map, n, x)
    }

    /// Wavefunction as printed, up to normalization.
    pub fn printed_wavefunction(&self, n: u32, l: u32, x: f64) -> Result<f64> {
        match self.kind {
            ModelKind::OneDim { .. } => {
                let (th, beta) = (get(&self.params, "theta"), get(&self.params, "beta"));
                let a = th * beta;
                let pre = match self.case {
                    CaseId::A1 => {
                        let d = get(&self.params, "delta");
                        ((d + x * x) / (1.0 + x * x)).sqrt()
                    }
                    CaseId::A2 => (get(&self.params, "dp") + x * x).powf(-0.25),
                    _ => (1.0 + (get(&self.params, "dpp") * x).tanh()).powf(0.25),
                };
                let y = self.printed_coordinate(x);
                let s = (-a).sqrt();
                let xi = (-2.0 * kratzer_energy(n, a, a * a)?).sqrt();
                Ok(pre * y.powf(0.5 + s) * (-xi * y).exp() * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * xi * y)?)
            }
            ModelKind::Radial { .. } => self.radial(l)?.printed_wavefunction(n, x),
        }
    }

    /// Constant-mass problem on the mapped coordinate.
    pub fn reference_problem(&self, l: u32) -> Result<ReferenceProblem> {
        match self.kind {
            ModelKind::OneDim { reference, .. } => Ok(ReferenceProblem {
                operator: ReferenceOperator::Standard { reference, l_ref: 0.0 },
                scale: 1.0,
                shift: 0.0,
            }),
            ModelKind::Radial { .. } => self.radial(l)?.reference_problem(),
        }
    }

    /// Map x ↦ h(x) onto the reference coordinate.
    pub fn mapped(&self, l: u32, x: f64) -> Result<f64> {
        match self.kind {
            ModelKind::OneDim { map, .. } => {
                if x == self.domain().0 {
                    return Ok(0.0);
                }
                map.h(x)
            }
            ModelKind::Radial { .. } => self.radial(l)?.map().h(x),
        }
    }

    /// Equation numbers (potential, energy, wavefunction) of the printed forms.
    #[must_use]
    pub fn equations(&self) -> [u32; 3] {
        case_equations(self.case)
    }
}

/// Equation numbers (potential, energy, wavefunction) of a case.
#[must_use]
pub fn case_equations(case: CaseId) -> [u32; 3] {
    match case {
        CaseId::A1 => [23, 24, 25],
        CaseId::A2 => [26, 27, 28],
        CaseId::A3 => [29, 30, 31],
        c => {
            let (f, b) = c.radial_kind().expect("radial case");
            radial_equations(f, b)
        }
    }
}

/// Construction spectrum for n = 0..=n_max and each ℓ.
pub fn eval_spectrum(model: &TargetModel, n_max: u32, l_set: &[u32]) -> Result<Spectrum> {
    spectrum_with(model, n_max, l_set, Variant::Construction)
}

/// Spectrum from either evaluator set.
pub fn spectrum_with(model: &TargetModel, n_max: u32, l_set: &[u32], variant: Variant) -> Result<Spectrum> {
    let mut ls = model.l_values(l_set);
    ls.sort_unstable();
    ls.dedup();
    let mut entries = Vec::new();
    for l in ls {
        for n in 0..=n_max {
            let energy = match variant {
                Variant::Construction => model.energy(n, l)?,
                Variant::Printed => model.printed_energy(n, l)?,
            };
            entries.push(SpectrumEntry { n, l, energy });
        }
    }
    Ok(Spectrum { entries })
}

/// Trapezoid ∫|φ|² of the construction wavefunction on a grid.
pub fn norm_squared(model: &TargetModel, n: u32, l: u32, grid: &Grid) -> Result<f64> {
    let xs = grid.nodes();
    let vals = xs
        .iter()
        .map(|&x| model.wavefunction(n, l, x).map(|v| v * v))
        .collect::<Result<Vec<_>>>()?;
    let inner: f64 = vals[1..vals.len() - 1].iter().sum();
    Ok(grid.spacing() * (inner + 0.5 * (vals[0] + vals[vals.len() - 1])))
}

/// Construction wavefunction, optionally normalized on the desk grid.
pub fn eval_wavefunction(model: &TargetModel, n: u32, l: u32, x: f64, normalize: bool) -> Result<f64> {
    let v = model.wavefunction(n, l, x)?;
    if !normalize {
        return Ok(v);
    }
    let g = model.case.desk_grid();
    let grid = Grid::new(g.left, g.right, g.points)?;
    let ns = norm_squared(model, n, l, &grid)?;
    if !(ns > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(v / ns.sqrt())
}

/// Catalog row for one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub case: String,
    pub mass: String,
    pub reference: String,
    pub equations: Vec<u32>,
    pub params: Vec<String>,
    pub constraints: String,
}

/// Descriptors of the twelve cases.
#[must_use]
pub fn list_cases() -> Vec<CaseDescriptor> {
    CaseId::ALL
        .iter()
        .map(|&case| {
            let (mass, reference, constraints) = match case {
                CaseId::A1 => (
                    "((delta+x^2)/(1+x^2))^2",
                    "kratzer",
                    "theta*beta < 0, |theta*beta| <= 1/4, delta > 0",
                ),
                CaseId::A2 => ("a/(dp+x^2)", "kratzer", "theta*beta < 0, |theta*beta| <= 1/4, a > 0, dp > 0"),
                CaseId::A3 => ("1+tanh(dpp*x)", "kratzer", "theta*beta < 0, |theta*beta| <= 1/4, dpp > 0"),
                CaseId::B1a => ("mu*r^kappa", "B1", "kappa > -2, C != 0"),
                CaseId::B1b => ("mu*r^kappa", "B1", "kappa > -2, C > 0"),
                CaseId::B1log => ("mu/r^2", "B1", "1+4*mu*C >= 0, a > 0"),
                CaseId::B2a => ("mu*r^kappa", "B2", "kappa > -2, a > 0, p^2 >= 2c"),
                CaseId::B2b => ("mu*r^kappa", "B2", "kappa > -2, C > 0, p^2 >= 2c"),
                CaseId::B2log => ("mu/r^2", "B2", "1+4*mu*C >= 0, a > 0"),
                CaseId::B3a => ("mu*r^kappa", "B3", "kappa > -2, c > 0, p^2 >= 2a"),
                CaseId::B3b => ("mu*r^kappa", "B3", "kappa > -2, C > 0, p^2 >= 2a"),
                CaseId::B3log => ("mu/r^2", "B3", "1+8*mu*Theta >= 0, a > 0, c > 0"),
            };
            CaseDescriptor {
                case: case.as_str().to_string(),
                mass: mass.to_string(),
                reference: reference.to_string(),
                equations: case_equations(case).to_vec(),
                params: case.keys().iter().map(|s| (*s).to_string()).collect(),
                constraints: constraints.to_string(),
            }
        })
        .collect()
}
