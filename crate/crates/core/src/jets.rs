//! Order-2 forward-mode automatic differentiation.
//!
//! A [`Jet2`] carries a scalar value together with its gradient and Hessian
//! with respect to a fixed set of `N` independent variables. Propagating jets
//! through arithmetic and elementary functions yields exact first and second
//! partial derivatives of the composite map, which is how every derivative of
//! the defining function `H` and of immersion components is obtained.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {func} of {value}")]
    Domain { func: &'static str, value: f64 },
}

/// Value, gradient and symmetric Hessian in `N` variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<const N: usize> {
    pub value: f64,
    pub grad: [f64; N],
    pub hess: [[f64; N]; N],
}

/// Jets in three variables, the arity of both evaluation contexts
/// (`x2,x3,x4` for defining functions, `u1,u2,u3` for immersions).
pub type Jet3 = Jet2<3>;

impl<const N: usize> Jet2<N> {
    pub fn constant(value: f64) -> Self {
        Jet2 {
            value,
            grad: [0.0; N],
            hess: [[0.0; N]; N],
        }
    }

    /// Seed for independent variable `index`: gradient e_index, zero Hessian.
    pub fn variable(value: f64, index: usize) -> Self {
        assert!(index < N, "variable index {index} out of arity {N}");
        let mut grad = [0.0; N];
        grad[index] = 1.0;
        Jet2 {
            value,
            grad,
            hess: [[0.0; N]; N],
        }
    }

    /// Composition with a scalar function given by its value and first two
    /// derivatives at `self.value` (chain rule to order 2).
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Jet2::constant(f0);
        for i in 0..N {
            out.grad[i] = f1 * self.grad[i];
            for j in 0..N {
                out.hess[i][j] = f1 * self.hess[i][j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn div(self, rhs: Self) -> Result<Self, JetError> {
        if rhs.value == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        Ok(self * rhs.recip_unchecked())
    }

    pub fn recip(self) -> Result<Self, JetError> {
        if self.value == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(self) -> Self {
        let inv = 1.0 / self.value;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    /// Integer power by repeated multiplication (exact product rule; no
    /// logarithms involved, so negative bases are fine).
    pub fn powi(self, n: i32) -> Result<Self, JetError> {
        if n < 0 {
            if self.value == 0.0 {
                return Err(JetError::DivisionByZero);
            }
            return Ok(self.powi_unsigned((-n) as u32).recip_unchecked());
        }
        Ok(self.powi_unsigned(n as u32))
    }

    fn powi_unsigned(self, n: u32) -> Self {
        let mut acc = Jet2::constant(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Real power with constant exponent. Integral exponents take the exact
    /// repeated-multiplication route; fractional ones go through exp/ln and
    /// need a positive base.
    pub fn powf(self, e: f64) -> Result<Self, JetError> {
        if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
            return self.powi(e as i32);
        }
        if self.value <= 0.0 {
            return Err(JetError::Domain {
                func: "pow",
                value: self.value,
            });
        }
        let v = self.value.powf(e);
        Ok(self.chain(v, e * v / self.value, e * (e - 1.0) * v / (self.value * self.value)))
    }

    /// General power with jet exponent: constant exponents dispatch to
    /// [`Jet2::powf`], otherwise exp(rhs * ln(self)).
    pub fn pow(self, rhs: Self) -> Result<Self, JetError> {
        if rhs.is_constant() {
            return self.powf(rhs.value);
        }
        if self.value <= 0.0 {
            return Err(JetError::Domain {
                func: "pow",
                value: self.value,
            });
        }
        Ok((rhs * self.ln()?).exp())
    }

    fn is_constant(&self) -> bool {
        self.grad.iter().all(|&g| g == 0.0)
            && self.hess.iter().all(|row| row.iter().all(|&h| h == 0.0))
    }

    pub fn exp(self) -> Self {
        let v = self.value.exp();
        self.chain(v, v, v)
    }

    pub fn ln(self) -> Result<Self, JetError> {
        if self.value <= 0.0 {
            return Err(JetError::Domain {
                func: "ln",
                value: self.value,
            });
        }
        let inv = 1.0 / self.value;
        Ok(self.chain(self.value.ln(), inv, -inv * inv))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn sinh(self) -> Self {
        let s = self.value.sinh();
        self.chain(s, self.value.cosh(), s)
    }

    pub fn cosh(self) -> Self {
        let c = self.value.cosh();
        self.chain(c, self.value.sinh(), c)
    }

    pub fn sqrt(self) -> Result<Self, JetError> {
        if self.value <= 0.0 {
            return Err(JetError::Domain {
                func: "sqrt",
                value: self.value,
            });
        }
        let r = self.value.sqrt();
        Ok(self.chain(r, 0.5 / r, -0.25 / (r * self.value)))
    }
}

impl<const N: usize> std::ops::Add for Jet2<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        out.value += rhs.value;
        for i in 0..N {
            out.grad[i] += rhs.grad[i];
            for j in 0..N {
                out.hess[i][j] += rhs.hess[i][j];
            }
        }
        out
    }
}

impl<const N: usize> std::ops::Sub for Jet2<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const N: usize> std::ops::Neg for Jet2<N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self;
        out.value = -out.value;
        for i in 0..N {
            out.grad[i] = -out.grad[i];
            for j in 0..N {
                out.hess[i][j] = -out.hess[i][j];
            }
        }
        out
    }
}

impl<const N: usize> std::ops::Mul for Jet2<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // product rule: (fg)'' = f''g + f'g' + g'f' + fg''
        let mut out = Jet2::constant(self.value * rhs.value);
        for i in 0..N {
            out.grad[i] = self.grad[i] * rhs.value + self.value * rhs.grad[i];
            for j in 0..N {
                out.hess[i][j] = self.hess[i][j] * rhs.value
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i]
                    + self.value * rhs.hess[i][j];
            }
        }
        out
    }
}

impl<const N: usize> std::ops::Mul<f64> for Jet2<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * Jet2::constant(rhs)
    }
}

impl<const N: usize> std::ops::Add<f64> for Jet2<N> {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        let mut out = self;
        out.value += rhs;
        out
    }
}
