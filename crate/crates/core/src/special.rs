//! Polynomial confluent hypergeometric functions, Laguerre polynomials and
//! adaptive quadrature.

use crate::error::{Error, Result};

/// Truncated power series with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeries {
    pub degree: usize,
    pub coefficients: Vec<f64>,
}

impl PolySeries {
    /// Coefficients of 1F1(-n; b; x).
    pub fn kummer(n: u32, b: f64) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(n as usize + 1);
        let mut c = 1.0;
        coefficients.push(c);
        for k in 0..n {
            let bk = b + f64::from(k);
            if bk == 0.0 {
                return Err(Error::Pole { n, b, k });
            }
            c *= (f64::from(k) - f64::from(n)) / (bk * f64::from(k + 1));
            coefficients.push(c);
        }
        Ok(Self {
            degree: n as usize,
            coefficients,
        })
    }

    /// Horner evaluation.
    #[must_use]
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// 1F1(-n; b; x) as an exact finite sum, accumulated through term ratios.
/// Terms and the running sum are carried in double-double precision: for
/// x ≫ 1 the terms alternate and exceed the result by many orders of
/// magnitude, so plain f64 accumulation loses digits to cancellation.
pub fn kummer_poly(n: u32, b: f64, x: f64) -> Result<f64> {
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    for k in 0..n {
        let kf = f64::from(k);
        let bk = Dd::sum(b, kf);
        if bk.hi == 0.0 {
            return Err(Error::Pole { n, b, k });
        }
        term = term.mul(kf - f64::from(n)).mul(x).div(&bk).div(&Dd::from(kf + 1.0));
        sum = sum.add(&term);
    }
    let v = sum.hi + sum.lo;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("kummer_poly"))
    }
}

/// Unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Dd {
    fn quick(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    /// Exact a + b.
    fn sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn add(&self, o: &Self) -> Self {
        let s = Self::sum(self.hi, o.hi);
        Self::quick(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(&self, d: f64) -> Self {
        let p = self.hi * d;
        let e = self.hi.mul_add(d, -p) + self.lo * d;
        Self::quick(p, e)
    }

    fn div(&self, o: &Self) -> Self {
        let q1 = self.hi / o.hi;
        let p = o.mul(q1);
        let r = self.add(&Self { hi: -p.hi, lo: -p.lo });
        let q2 = r.hi / o.hi;
        Self::quick(q1, q2)
    }
}

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::Parameter(format!("laguerre needs alpha > -1, got {alpha}")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow("laguerre"))
    }
}

/// Rising factorial (x)_n as a running product.
#[must_use]
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + f64::from(k)))
}

const MAX_DEPTH: u32 = 50;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn quad_rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, whole: (f64, f64), depth: u32) -> Result<f64> {
    let (est, err) = whole;
    if !est.is_finite() {
        return Err(Error::Quadrature { a, b });
    }
    // accept at the rounding floor so tiny sub-tolerances cannot recurse forever
    if err <= tol || err <= 50.0 * f64::EPSILON * est.abs() {
        return Ok(est);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature { a, b });
    }
    let m = 0.5 * (a + b);
    let left = quad_rec(f, a, m, 0.5 * tol, gk15(f, a, m), depth + 1)?;
    let right = quad_rec(f, m, b, 0.5 * tol, gk15(f, m, b), depth + 1)?;
    Ok(left + right)
}

/// Adaptive Gauss-Kronrod (7/15) quadrature with bisection.
pub fn adaptive_quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !(a <= b) {
        return Err(Error::Parameter(format!(
            "adaptive_quad needs a <= b and tol > 0 (a={a}, b={b}, tol={tol})"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    quad_rec(f, a, b, tol, gk15(f, a, b), 0)
}

/// Default tolerance for quadrature feeding σ.
pub const QUAD_TOL: f64 = 1e-10;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_poly(0, 2.5, 7.3).unwrap(), 1.0);
        assert!((kummer_poly(1, 2.0, 3.0).unwrap() + 0.5).abs() < 1e-15);
        assert!((kummer_poly(2, 3.0, 1.5).unwrap() - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn kummer_pole() {
        assert!(matches!(kummer_poly(3, -1.0, 1.0), Err(Error::Pole { k: 1, .. })));
        assert!(matches!(kummer_poly(2, 0.0, 1.0), Err(Error::Pole { k: 0, .. })));
        // pole beyond the truncation point is harmless
        assert!(kummer_poly(2, -2.0, 1.0).is_ok());
    }

    #[test]
    fn series_matches_recurrence() {
        let s = PolySeries::kummer(5, 1.7).unwrap();
        assert_eq!(s.coefficients.len(), s.degree + 1);
        for x in [0.0, 0.3, 2.0, 9.5] {
            let a = s.eval(x);
            let b = kummer_poly(5, 1.7, x).unwrap();
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(1, 0.0, 2.0).unwrap(), -1.0);
        assert_eq!(laguerre(0, 3.7, 9.0).unwrap(), 1.0);
        assert!((laguerre(2, 0.0, 1.0).unwrap() + 0.5).abs() < 1e-15);
        assert!(laguerre(2, -1.5, 1.0).is_err());
    }

    #[test]
    fn quad_examples() {
        let one = adaptive_quad(&|_| 1.0, 0.0, 2.0, 1e-10).unwrap();
        assert!((one - 2.0).abs() < 1e-12);
        let v = adaptive_quad(&|x: f64| 1.0 / (1.0 + x * x).sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - 0.881_373_587_019_543_f64).abs() < 1e-10);
        let s = adaptive_quad(&|x: f64| x * x, -1.0, 1.0, 1e-10).unwrap();
        assert!((s - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quad_rejects_singularity() {
        assert!(matches!(
            adaptive_quad(&|x: f64| 1.0 / x, 0.0, 1.0, 1e-10),
            Err(Error::Quadrature { .. })
        ));
    }
}
