//! Nested forward-mode differentiation.
//!
//! A [`HyperDual`] carries a value, two first-order perturbations ε₁, ε₂ and
//! the mixed term ε₁ε₂ (with ε₁² = ε₂² = 0). Evaluating a function at
//! `x + ε₁e_a + ε₂e_b` returns f, ∂_a f, ∂_b f and ∂_a∂_b f exactly. Since
//! `HyperDual<T>` is itself [`Real`], nesting gives higher mixed derivatives.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(v: f64) -> Self;
    /// Value with every perturbation discarded.
    fn value(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn powi(self, n: i32) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn scale(self, c: f64) -> Self {
        self * Self::from_f64(c)
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperDual<T> {
    pub re: T,
    pub e1: T,
    pub e2: T,
    pub e12: T,
}

impl<T: Real> HyperDual<T> {
    pub fn constant(re: T) -> Self {
        HyperDual { re, e1: T::zero(), e2: T::zero(), e12: T::zero() }
    }

    /// Coordinate value seeded along ε₁ and/or ε₂.
    pub fn variable(re: T, d1: bool, d2: bool) -> Self {
        let seed = |on: bool| if on { T::one() } else { T::zero() };
        HyperDual { re, e1: seed(d1), e2: seed(d2), e12: T::zero() }
    }

    /// Chain rule for a scalar function with value `f0`, first and second derivative.
    fn chain(self, f0: T, f1: T, f2: T) -> Self {
        HyperDual { re: f0, e1: f1 * self.e1, e2: f1 * self.e2, e12: f1 * self.e12 + f2 * self.e1 * self.e2 }
    }
}

impl<T: Real> Add for HyperDual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        HyperDual { re: self.re + o.re, e1: self.e1 + o.e1, e2: self.e2 + o.e2, e12: self.e12 + o.e12 }
    }
}

impl<T: Real> Sub for HyperDual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        HyperDual { re: self.re - o.re, e1: self.e1 - o.e1, e2: self.e2 - o.e2, e12: self.e12 - o.e12 }
    }
}

impl<T: Real> Mul for HyperDual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        HyperDual {
            re: self.re * o.re,
            e1: self.re * o.e1 + self.e1 * o.re,
            e2: self.re * o.e2 + self.e2 * o.re,
            e12: self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        }
    }
}

impl<T: Real> Div for HyperDual<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        let inv = T::one() / o.re;
        self * o.chain(inv, -(inv * inv), (inv * inv * inv).scale(2.0))
    }
}

impl<T: Real> Neg for HyperDual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        HyperDual { re: -self.re, e1: -self.e1, e2: -self.e2, e12: -self.e12 }
    }
}

impl<T: Real> Real for HyperDual<T> {
    fn from_f64(v: f64) -> Self {
        HyperDual::constant(T::from_f64(v))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let inv = T::one() / self.re;
        self.chain(self.re.ln(), inv, -(inv * inv))
    }
    fn sin(self) -> Self {
        let (s, c) = (self.re.sin(), self.re.cos());
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = (self.re.sin(), self.re.cos());
        self.chain(c, -s, -c)
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        let d1 = (T::one() / r).scale(0.5);
        self.chain(r, d1, -(d1 / self.re).scale(0.5))
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::one(),
            1 => self,
            _ => {
                let nf = f64::from(n);
                let pm2 = self.re.powi(n - 2);
                let pm1 = pm2 * self.re;
                self.chain(pm1 * self.re, pm1.scale(nf), pm2.scale(nf * (nf - 1.0)))
            }
        }
    }
}

/// Complex number over a [`Real`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    pub fn real(re: T) -> Self {
        Cx { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn i() -> Self {
        Cx { re: T::zero(), im: T::one() }
    }

    pub fn conj(self) -> Self {
        Cx { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, c: T) -> Self {
        Cx { re: self.re * c, im: self.im * c }
    }

    pub fn value(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.value(), self.im.value())
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Real> Sub for Cx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Real> Mul for Cx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl<T: Real> Div for Cx<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        let n = self * o.conj();
        Cx { re: n.re / d, im: n.im / d }
    }
}

impl<T: Real> Neg for Cx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

/// Complex matrix over a [`Real`].
pub type CMatrix<T> = Vec<Vec<Cx<T>>>;

/// Determinant by elimination without pivoting (Hermitian positive-definite input).
pub fn det<T: Real>(m: &CMatrix<T>) -> Cx<T> {
    let n = m.len();
    let mut a = m.clone();
    let mut out = Cx::one();
    for c in 0..n {
        let piv = a[c][c];
        out = out * piv;
        for r in c + 1..n {
            let factor = a[r][c] / piv;
            for k in c..n {
                let v = a[c][k] * factor;
                a[r][k] = a[r][k] - v;
            }
        }
    }
    out
}
