//! Finite-difference eigensolver for the position-dependent-mass operator.
//!
//! The kinetic term −½ d/dx (1/m) d/dx is assembled in flux form on cells
//! around each node, with 1/m sampled at cell faces. The result is a
//! symmetric generalized problem A u = λ W u with diagonal W (cell widths),
//! scaled to the standard symmetric form W^{-½} A W^{-½}. Dirichlet
//! conditions hold at the first and last node.
//!
//! Radial mode adds ℓ(ℓ+1)/(2mr²) − m'/(2m²r) to the diagonal. With
//! u = r R this reproduces the radial equation exactly: expanding
//! −½(u'/m)' gives −u''/(2m) + m'u'/(2m²), so no first-derivative term is
//! left over and no further similarity transform is needed.

use serde::{Deserialize, Serialize};

use crate::catalog::MassProfile;
use crate::error::{Error, Result};

/// Uniform grid on [left, right]. `wall`, when set, is a Dirichlet boundary
/// left of `left` joined to it by one extra cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub left: f64,
    pub right: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall: Option<f64>,
}

impl Grid {
    pub fn new(left: f64, right: f64, points: usize) -> Result<Self> {
        if !(left.is_finite() && right.is_finite()) || !(right > left) {
            return Err(Error::Grid(format!("need finite left < right, got [{left}, {right}]")));
        }
        if points < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {points}")));
        }
        Ok(Self {
            left,
            right,
            points,
            wall: None,
        })
    }

    pub fn with_wall(mut self, wall: f64) -> Result<Self> {
        if !(wall < self.left) {
            return Err(Error::Grid(format!("wall {wall} must lie left of {}", self.left)));
        }
        self.wall = Some(wall);
        Ok(self)
    }

    #[must_use]
    pub fn spacing(&self) -> f64 {
        (self.right - self.left) / (self.points - 1) as f64
    }

    /// Grid nodes, without the wall.
    #[must_use]
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut xs: Vec<f64> = (0..self.points).map(|i| self.left + i as f64 * h).collect();
        xs[self.points - 1] = self.right;
        xs
    }

    /// Nodes used by the discretization: the wall (if any) then the grid.
    #[must_use]
    pub fn solver_nodes(&self) -> Vec<f64> {
        let mut xs = Vec::with_capacity(self.points + 1);
        if let Some(w) = self.wall {
            xs.push(w);
        }
        xs.extend(self.nodes());
        xs
    }
}

/// Uniformly sampled function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub left: f64,
    pub right: f64,
    pub spacing: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    /// Number of sign changes, ignoring values below `floor`·max|v|.
    #[must_use]
    pub fn sign_changes(&self, floor: f64) -> usize {
        count_sign_changes(&self.values, floor)
    }
}

/// Sign changes in a sample, ignoring entries below `floor`·max|v|.
#[must_use]
pub fn count_sign_changes(values: &[f64], floor: f64) -> usize {
    let peak = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in values {
        if v.abs() <= floor * peak {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Symmetric tridiagonal matrix, optionally tied to the interior nodes and
/// weights of a discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    /// Interior node coordinates (empty for a bare matrix).
    pub nodes: Vec<f64>,
    /// Diagonal weights W of the generalized problem (empty for a bare matrix).
    pub weights: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::Grid(format!(
                "tridiagonal sizes {} and {} do not match",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        if let Some(i) = diagonal.iter().chain(&off_diagonal).position(|v| !v.is_finite()) {
            return Err(Error::Singular { x: i as f64 });
        }
        Ok(Self {
            diagonal,
            off_diagonal,
            nodes: Vec::new(),
            weights: Vec::new(),
        })
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// ∞-norm.
    #[must_use]
    pub fn norm_inf(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i].abs();
                if i > 0 {
                    s += self.off_diagonal[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.off_diagonal[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// y = T x
    #[must_use]
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * x[i];
                if i > 0 {
                    s += self.off_diagonal[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off_diagonal[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_diagonal[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off_diagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below x (Sturm sequence).
    fn count_below(&self, e2: &[f64], pivmin: f64, x: f64) -> usize {
        let mut q = self.diagonal[0] - x;
        let mut count = usize::from(q < 0.0);
        for i in 1..self.len() {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            q = self.diagonal[i] - x - e2[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }
}

/// The k algebraically smallest eigenvalues, ascending, by Sturm bisection.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    let n = op.len();
    if k == 0 || k > n {
        return Err(Error::Range { k, n });
    }
    let e2: Vec<f64> = op.off_diagonal.iter().map(|e| e * e).collect();
    let pivmin = f64::MIN_POSITIVE * e2.iter().fold(1.0f64, |a, &b| a.max(b));
    let (glo, ghi) = op.gershgorin();
    let pad = 2.0 * f64::EPSILON * glo.abs().max(ghi.abs()) + pivmin;
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // eigenvalue j is not below eigenvalue j-1
        let mut lo = out.last().map_or(glo, |&prev: &f64| prev - pad);
        let mut hi = ghi;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if op.count_below(&e2, pivmin, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Solve (T − σI)x = b by Gaussian elimination with partial pivoting;
/// exact zero pivots are replaced by `tiny`.
fn shifted_solve(op: &TridiagonalOperator, sigma: f64, b: &mut [f64], tiny: f64) {
    let n = op.len();
    let mut d: Vec<f64> = op.diagonal.iter().map(|v| v - sigma).collect();
    let mut dl = op.off_diagonal.clone();
    let mut du = op.off_diagonal.clone();
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            dl[i] = 0.0;
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            } else {
                dl[i] = 0.0;
            }
            du[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
    s
}

/// Unit eigenvector at a converged eigenvalue, by inverse iteration. The
/// sign is fixed so the first significant entry is positive.
pub fn eigenvector(op: &TridiagonalOperator, lambda: f64) -> Result<GridFunction> {
    let n = op.len();
    let norm = op.norm_inf().max(1.0);
    let tiny = f64::EPSILON * norm;
    let mut v: Vec<f64> = (0..n).map(|i| 0.5 + ((i * 7919) % 101) as f64 / 101.0).collect();
    normalize(&mut v);
    let mut converged = false;
    for _ in 0..8 {
        shifted_solve(op, lambda, &mut v, tiny);
        if !(normalize(&mut v) > 0.0) || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NoConvergence { lambda });
        }
        let tv = op.apply(&v);
        let res = tv.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        if res <= 1e-8 * norm {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { lambda });
    }
    let peak = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let (left, right, spacing) = if op.nodes.len() >= 2 {
        let l = op.nodes[0];
        let r = op.nodes[op.nodes.len() - 1];
        (l, r, (r - l) / (op.nodes.len() - 1) as f64)
    } else {
        (0.0, (n - 1) as f64, 1.0)
    };
    Ok(GridFunction {
        left,
        right,
        spacing,
        values: v,
    })
}

/// Assemble the flux-form operator on arbitrary nodes. `inv_mass` is
/// sampled at faces, `veff` and `weight` at interior nodes.
pub fn assemble(
    nodes: &[f64],
    inv_mass: &dyn Fn(f64) -> f64,
    veff: &dyn Fn(f64) -> f64,
    weight: Option<&dyn Fn(f64) -> f64>,
) -> Result<TridiagonalOperator> {
    let n = nodes.len();
    if n < 3 {
        return Err(Error::Grid(format!("need at least 3 nodes, got {n}")));
    }
    let faces: Vec<f64> = nodes
        .windows(2)
        .map(|w| {
            let h = w[1] - w[0];
            let x = 0.5 * (w[0] + w[1]);
            let c = inv_mass(x) / h;
            if c.is_finite() && h > 0.0 {
                Ok(c)
            } else {
                Err(Error::Singular { x })
            }
        })
        .collect::<Result<_>>()?;
    let m = n - 2;
    let mut diag = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    for i in 1..=m {
        let x = nodes[i];
        let width = 0.5 * (nodes[i + 1] - nodes[i - 1]);
        let v = veff(x);
        let wt = width * weight.map_or(1.0, |f| f(x));
        if !v.is_finite() || !(wt > 0.0) || !wt.is_finite() {
            return Err(Error::Singular { x });
        }
        diag.push(0.5 * (faces[i - 1] + faces[i]) + width * v);
        w.push(wt);
    }
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    for i in 0..m.saturating_sub(1) {
        off.push(-0.5 * faces[i + 1] / (w[i] * w[i + 1]).sqrt());
    }
    for (d, wt) in diag.iter_mut().zip(&w) {
        *d /= wt;
    }
    let mut op = TridiagonalOperator::new(diag, off)?;
    op.nodes = nodes[1..=m].to_vec();
    op.weights = w;
    Ok(op)
}

/// Effective diagonal potential: V plus, in radial mode, the centrifugal and
/// mass-gradient terms.
fn effective_potential(mass: &MassProfile, potential: &dyn Fn(f64) -> f64, l: Option<u32>, x: f64) -> f64 {
    let Ok(t) = mass.eval(x) else { return f64::NAN };
    let v = potential(x);
    match l {
        Some(l) => {
            let ll = f64::from(l * (l + 1));
            v + ll / (2.0 * t.m * x * x) - t.dm / (2.0 * t.m * t.m * x)
        }
        None => v,
    }
}

/// Discretize H = −½ d/dx (1/m) d/dx + V (+ radial terms when `l` is set).
pub fn discretize_pdm(mass: &MassProfile, potential: &dyn Fn(f64) -> f64, l: Option<u32>, grid: &Grid) -> Result<TridiagonalOperator> {
    let nodes = grid.solver_nodes();
    let inv_mass = |x: f64| mass.eval(x).map_or(f64::NAN, |t| 1.0 / t.m);
    let veff = |x: f64| effective_potential(mass, potential, l, x);
    assemble(&nodes, &inv_mass, &veff, None)
}

/// ‖(H − E)φ‖₂ / ‖φ‖₂ with the stencil applied at interior grid nodes and φ
/// sampled at every node (the wall is not used).
pub fn residual_norm(
    mass: &MassProfile,
    potential: &dyn Fn(f64) -> f64,
    l: Option<u32>,
    grid: &Grid,
    phi: &dyn Fn(f64) -> f64,
    energy: f64,
) -> Result<f64> {
    let xs = grid.nodes();
    let f: Vec<f64> = xs.iter().map(|&x| phi(x)).collect();
    residual_from_values(mass, potential, l, grid, &f, energy)
}

/// As [`residual_norm`], from precomputed samples on `grid.nodes()`.
pub fn residual_from_values(
    mass: &MassProfile,
    potential: &dyn Fn(f64) -> f64,
    l: Option<u32>,
    grid: &Grid,
    f: &[f64],
    energy: f64,
) -> Result<f64> {
    let xs = grid.nodes();
    let h = grid.spacing();
    if let Some(i) = f.iter().position(|v| !v.is_finite()) {
        return Err(Error::Singular { x: xs[i] });
    }
    let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let w: Vec<f64> = xs
        .windows(2)
        .map(|p| mass.eval(0.5 * (p[0] + p[1])).map(|t| 1.0 / t.m))
        .collect::<Result<_>>()?;
    let mut sum = 0.0;
    for i in 1..xs.len() - 1 {
        let v = effective_potential(mass, potential, l, xs[i]);
        if !v.is_finite() {
            return Err(Error::Singular { x: xs[i] });
        }
        let kin = (-w[i] * (f[i + 1] - f[i]) + w[i - 1] * (f[i] - f[i - 1])) / (2.0 * h * h);
        sum += (kin + (v - energy) * f[i]).powi(2);
    }
    Ok(sum.sqrt() / norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub spacing: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub points: Vec<ConvergencePoint>,
    /// Observed order between successive refinements.
    pub orders: Vec<f64>,
}

impl ConvergenceStudy {
    /// Order observed on the finest pair.
    #[must_use]
    pub fn order(&self) -> f64 {
        self.orders.last().copied().unwrap_or(f64::NAN)
    }

    #[must_use]
    pub fn monotone(&self) -> bool {
        self.points.windows(2).all(|p| p[1].error < p[0].error)
    }
}

/// Errors |solve(grid) − exact| over a refinement sequence.
pub fn convergence_study_with(grids: &[Grid], exact: f64, solve: &dyn Fn(&Grid) -> Result<f64>) -> Result<ConvergenceStudy> {
    if grids.len() < 3 {
        return Err(Error::Grid(format!(
            "convergence study needs at least 3 grids, got {}",
            grids.len()
        )));
    }
    for p in grids.windows(2) {
        if !(p[1].spacing() < p[0].spacing() * (1.0 - 1e-9)) {
            return Err(Error::Grid("grids must be strictly refined".into()));
        }
    }
    let points = grids
        .iter()
        .map(|g| {
            Ok(ConvergencePoint {
                spacing: g.spacing(),
                error: (solve(g)? - exact).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let orders = points
        .windows(2)
        .map(|p| (p[0].error / p[1].error).ln() / (p[0].spacing / p[1].spacing).ln())
        .collect();
    Ok(ConvergenceStudy { points, orders })
}
