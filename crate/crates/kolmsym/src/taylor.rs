//! Univariate truncated Taylor series with runtime order over f64 or
//! complex f64 scalars. Used to manufacture high-order derivative arrays of
//! closed-form and ODE-defined functions at a point: series are built from
//! coordinate seeds by arithmetic and elementary lifts, or integrated
//! directly from a linear second-order ODE via the coefficient recurrence.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TaylorError {
    #[error("division by a series with zero constant term")]
    DivByZeroConstant,
    #[error("logarithm of a series with zero constant term")]
    LnOfZero,
    #[error("non-finite value produced in series arithmetic")]
    NonFinite,
}

/// Scalar field for series coefficients. The transcendental methods are only
/// ever applied to constant terms; everything else is pure arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn powf(&self, p: f64) -> Self;
    fn abs_f64(&self) -> f64;
    fn is_finite_scalar(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_f64(x: f64) -> f64 {
        x
    }
    fn exp(&self) -> f64 {
        f64::exp(*self)
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn sin(&self) -> f64 {
        f64::sin(*self)
    }
    fn cos(&self) -> f64 {
        f64::cos(*self)
    }
    fn powf(&self, p: f64) -> f64 {
        f64::powf(*self, p)
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }
    fn exp(&self) -> Complex64 {
        Complex64::exp(*self)
    }
    fn ln(&self) -> Complex64 {
        Complex64::ln(*self)
    }
    fn sin(&self) -> Complex64 {
        Complex64::sin(*self)
    }
    fn cos(&self) -> Complex64 {
        Complex64::cos(*self)
    }
    fn powf(&self, p: f64) -> Complex64 {
        Complex64::powf(*self, p)
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn is_finite_scalar(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Truncated Taylor expansion Σ_k c[k] s^k around a point; c[k] is the
/// coefficient, so the k-th derivative is k!·c[k]. All binary operations
/// require equal truncation orders.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T: Scalar> {
    c: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// Series of the constant v, truncated at order `ord`.
    pub fn constant(v: T, ord: usize) -> Series<T> {
        let mut c = vec![T::zero(); ord + 1];
        c[0] = v;
        Series { c }
    }

    /// Series of the local coordinate x0 + s.
    pub fn var(x0: T, ord: usize) -> Series<T> {
        let mut s = Series::constant(x0, ord);
        if ord >= 1 {
            s.c[1] = T::one();
        }
        s
    }

    pub fn from_coeffs(c: Vec<T>) -> Series<T> {
        assert!(!c.is_empty());
        Series { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c[k].clone()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    /// Derivative values (f(0), f′(0), …, f^{(n)}(0)) = (k!·c_k).
    pub fn derivatives(&self) -> Vec<T> {
        let mut fact = 1.0;
        self.c
            .iter()
            .enumerate()
            .map(|(k, ck)| {
                if k > 0 {
                    fact *= k as f64;
                }
                ck.clone() * T::from_f64(fact)
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(Scalar::is_finite_scalar)
    }

    fn check(self) -> Result<Series<T>, TaylorError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(TaylorError::NonFinite)
        }
    }

    pub fn add(&self, o: &Series<T>) -> Series<T> {
        assert_eq!(self.order(), o.order());
        Series {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Series<T>) -> Series<T> {
        assert_eq!(self.order(), o.order());
        Series {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Series<T> {
        Series {
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, v: &T) -> Series<T> {
        Series {
            c: self.c.iter().map(|a| a.clone() * v.clone()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, o: &Series<T>) -> Series<T> {
        assert_eq!(self.order(), o.order());
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j > n {
                    break;
                }
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { c }
    }

    /// Reciprocal, requiring a nonzero constant term.
    pub fn recip(&self) -> Result<Series<T>, TaylorError> {
        if self.c[0].abs_f64() == 0.0 {
            return Err(TaylorError::DivByZeroConstant);
        }
        let n = self.order();
        let inv0 = T::one() / self.c[0].clone();
        let mut g = vec![T::zero(); n + 1];
        g[0] = inv0.clone();
        for k in 1..=n {
            // (f·g)_k = 0 for k ≥ 1.
            let mut acc = T::zero();
            for j in 0..k {
                acc = acc + self.c[k - j].clone() * g[j].clone();
            }
            g[k] = -(acc * inv0.clone());
        }
        Series { c: g }.check()
    }

    pub fn div(&self, o: &Series<T>) -> Result<Series<T>, TaylorError> {
        Ok(self.mul(&o.recip()?))
    }

    /// Antiderivative with constant term `c0` (series length grows by one
    /// conceptually; truncated back to the same order).
    fn integrate_with(&self, c0: T) -> Series<T> {
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        c[0] = c0;
        for k in 1..=n {
            c[k] = self.c[k - 1].clone() * T::from_f64(1.0 / k as f64);
        }
        Series { c }
    }

    pub fn derive(&self) -> Series<T> {
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        for k in 0..n {
            c[k] = self.c[k + 1].clone() * T::from_f64((k + 1) as f64);
        }
        Series { c }
    }

    /// exp(f): g′ = f′·g with g(0) = exp(f(0)), solved coefficientwise.
    pub fn exp(&self) -> Result<Series<T>, TaylorError> {
        let n = self.order();
        let mut g = vec![T::zero(); n + 1];
        g[0] = self.c[0].exp();
        for k in 1..=n {
            // k·g_k = Σ_{j=1..k} j·f_j·g_{k−j}
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + T::from_f64(j as f64) * self.c[j].clone() * g[k - j].clone();
            }
            g[k] = acc * T::from_f64(1.0 / k as f64);
        }
        Series { c: g }.check()
    }

    /// ln(f): ln(f(0)) + ∫ f′/f, requiring a nonzero constant term.
    pub fn ln(&self) -> Result<Series<T>, TaylorError> {
        if self.c[0].abs_f64() == 0.0 {
            return Err(TaylorError::LnOfZero);
        }
        let df = self.derive();
        let q = df.div(self)?;
        q.integrate_with(self.c[0].ln()).check()
    }

    /// f^p for real p via exp(p·ln f).
    pub fn powf(&self, p: f64) -> Result<Series<T>, TaylorError> {
        if self.c[0].abs_f64() == 0.0 {
            return Err(TaylorError::LnOfZero);
        }
        self.ln()?.scale(&T::from_f64(p)).exp()
    }

    pub fn sqrt(&self) -> Result<Series<T>, TaylorError> {
        self.powf(0.5)
    }

    /// Simultaneous sin(f), cos(f) from the coupled first-order system.
    pub fn sin_cos(&self) -> Result<(Series<T>, Series<T>), TaylorError> {
        let n = self.order();
        let mut s = vec![T::zero(); n + 1];
        let mut co = vec![T::zero(); n + 1];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for k in 1..=n {
            let mut accs = T::zero();
            let mut accc = T::zero();
            for j in 1..=k {
                let jf = T::from_f64(j as f64) * self.c[j].clone();
                accs = accs + jf.clone() * co[k - j].clone();
                accc = accc + jf * s[k - j].clone();
            }
            let inv = T::from_f64(1.0 / k as f64);
            s[k] = accs * inv.clone();
            co[k] = -(accc * inv);
        }
        Ok((Series { c: s }.check()?, Series { c: co }.check()?))
    }
}

/// Taylor coefficients of the solution of w″ = a·w′ + b·w + r with
/// w(0) = v0, w′(0) = v1. All input series must share the target order.
pub fn ode2_solve<T: Scalar>(
    a: &Series<T>,
    b: &Series<T>,
    r: Option<&Series<T>>,
    v0: T,
    v1: T,
    ord: usize,
) -> Series<T> {
    assert_eq!(a.order(), ord);
    assert_eq!(b.order(), ord);
    let mut c = vec![T::zero(); ord + 1];
    c[0] = v0;
    if ord >= 1 {
        c[1] = v1;
    }
    if ord < 2 {
        return Series::from_coeffs(c);
    }
    for k in 0..=ord - 2 {
        // (k+1)(k+2)·c_{k+2} = [a·w′ + b·w + r]_k, using only c_0..c_{k+1}.
        let mut acc = T::zero();
        for j in 0..=k {
            let wp = c[k - j + 1].clone() * T::from_f64((k - j + 1) as f64);
            acc = acc + a.coeff(j) * wp + b.coeff(j) * c[k - j].clone();
        }
        if let Some(rr) = r {
            acc = acc + rr.coeff(k);
        }
        c[k + 2] = acc * T::from_f64(1.0 / ((k + 1) as f64 * (k + 2) as f64));
    }
    Series::from_coeffs(c)
}
