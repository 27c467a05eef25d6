//! Scalar backends for the invariant engine.
//!
//! Two interchangeable coefficient fields are supported: double-precision
//! complex numbers ([`C64`]) and exact rational complex numbers ([`CQ`]).
//! A computation is carried out entirely in one of them; conversions happen
//! only at the boundaries (parameter parsing, report rendering).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type C64 = Complex<f64>;
pub type CQ = Complex<BigRational>;

/// Coefficient field used by forms, metrics and curvature tensors.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// True for the rational backend, where every comparison is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit √−1.
    fn i() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_cq(v: &CQ) -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn to_c64(&self) -> C64;

    fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Zero test: exact equality for rationals, `|x| <= threshold` for floats.
    fn is_negligible(&self, threshold: f64) -> bool;

    /// Strict positivity of the real part, exact for rationals.
    fn re_is_positive(&self) -> bool;

    fn is_exact_zero(&self) -> bool;

    fn scale_f64(&self, c: f64) -> Self;

    fn render(&self) -> String;
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn from_cq(v: &CQ) -> Self {
        C64::new(ratio_to_f64(&v.re), ratio_to_f64(&v.im))
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn re(&self) -> Self {
        C64::new(self.re, 0.0)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn is_negligible(&self, threshold: f64) -> bool {
        self.norm() <= threshold
    }
    fn re_is_positive(&self) -> bool {
        self.re > 0.0
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn scale_f64(&self, c: f64) -> Self {
        self * c
    }
    fn render(&self) -> String {
        format_c64(*self)
    }
}

impl Scalar for CQ {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn from_cq(v: &CQ) -> Self {
        v.clone()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn re(&self) -> Self {
        Complex::new(self.re.clone(), BigRational::zero())
    }
    fn to_c64(&self) -> C64 {
        C64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
    fn is_negligible(&self, _threshold: f64) -> bool {
        self.is_exact_zero()
    }
    fn re_is_positive(&self) -> bool {
        self.re.is_positive()
    }
    fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn scale_f64(&self, c: f64) -> Self {
        let q = BigRational::from_float(c).expect("finite scale factor");
        Complex::new(&self.re * &q, &self.im * &q)
    }
    fn render(&self) -> String {
        format_cq(self)
    }
}

pub fn ratio_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

/// Float rendering used in every report: 12 significant digits, `-0` folded to `0`.
pub fn format_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn format_c64(z: C64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_f64(z.re), sign, format_f64(im.abs()))
}

pub fn format_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical `a+bi` literal, the same grammar the structure-file parser reads.
pub fn format_cq(z: &CQ) -> String {
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_ratio(&z.re), sign, format_ratio(&z.im.abs()))
}

/// Exact rational from an `f64` (binary expansion, no rounding).
pub fn cq_from_f64(re: f64, im: f64) -> CQ {
    Complex::new(
        BigRational::from_float(re).expect("finite real part"),
        BigRational::from_float(im).expect("finite imaginary part"),
    )
}

pub fn cq_real(num: i64, den: i64) -> CQ {
    CQ::from_ratio(num, den)
}

pub fn cq(re: (i64, i64), im: (i64, i64)) -> CQ {
    Complex::new(
        BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
        BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
    )
}

/// Relative comparison used by verification tables.
pub fn approx_eq<S: Scalar>(a: &S, b: &S, rel: f64) -> bool {
    if S::EXACT {
        return a == b;
    }
    let (a, b) = (a.to_c64(), b.to_c64());
    (a - b).norm() <= rel * a.norm().max(b.norm()) + crate::tolerance::ABS_ZERO
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_render_canonically() {
        assert_eq!(format_cq(&cq((1, 2), (-3, 4))), "1/2-3/4i");
        assert_eq!(format_cq(&CQ::i()), "0+1i");
        assert_eq!(format_cq(&CQ::from_i64(-2)), "-2+0i");
    }

    #[test]
    fn float_format_has_twelve_significant_digits() {
        assert_eq!(format_f64(-0.0), "0.00000000000e0");
        assert_eq!(format_f64(0.5), "5.00000000000e-1");
        assert_eq!(format_c64(C64::new(1.0, -2.0)), "1.00000000000e0-2.00000000000e0i");
    }

    #[test]
    fn exact_backend_is_exact() {
        let third = CQ::from_ratio(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, <CQ as Scalar>::one());
        assert!((CQ::i() * CQ::i() + <CQ as Scalar>::one()).is_exact_zero());
    }
}
