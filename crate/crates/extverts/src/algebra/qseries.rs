//! Power series in q, truncated at a stated order, with rational-function
//! coefficients. Powers with symbolic exponents go through exp∘log.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::One;

use super::mpoly::{rat_int, Rat, Var};
use super::ratfun::RatFun;
use super::AlgebraError;

/// Truncated series Σ_{k≤order} c_k q^k. Arithmetic never consults
/// coefficients beyond `order`.
#[derive(Clone, PartialEq)]
pub struct QSeries {
    coeffs: Vec<RatFun>, // index = power of q, length order+1
}

impl QSeries {
    pub fn zero(order: usize) -> QSeries {
        QSeries {
            coeffs: vec![RatFun::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> QSeries {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = RatFun::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<RatFun>) -> QSeries {
        assert!(!coeffs.is_empty());
        debug_assert!(coeffs.iter().all(coeff_is_q_free));
        QSeries { coeffs }
    }

    /// The series 1 − q^n (truncated; identically 1 when n > order).
    pub fn one_minus_q_pow(n: usize, order: usize) -> QSeries {
        let mut s = QSeries::one(order);
        if n <= order && n > 0 {
            s.coeffs[n] = RatFun::from_int(-1);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RatFun {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: RatFun) {
        debug_assert!(coeff_is_q_free(&c));
        self.coeffs[k] = c;
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, RatFun::zero());
        QSeries { coeffs }
    }

    pub fn scale(&self, c: &RatFun) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<QSeries, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm(format!(
                "{}",
                self.coeffs[0]
            )));
        }
        let order = self.order();
        let mut acc = QSeries::one(order);
        let mut power = QSeries::one(order);
        let mut factorial = Rat::one();
        // self^k vanishes past k = order since the constant term is zero.
        for k in 1..=order {
            power = &power * self;
            factorial *= rat_int(k as i64);
            let inv = RatFun::from_rat(factorial.recip());
            acc = &acc + &power.scale(&inv);
        }
        Ok(acc)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<QSeries, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::ConstantTermNotOne(format!(
                "{}",
                self.coeffs[0]
            )));
        }
        let order = self.order();
        let mut rest = self.clone();
        rest.coeffs[0] = RatFun::zero(); // rest = self − 1
        let mut acc = QSeries::zero(order);
        let mut power = QSeries::one(order);
        for k in 1..=order {
            power = &power * &rest;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = RatFun::from_rat(super::mpoly::rat(sign, k as i64));
            acc = &acc + &power.scale(&c);
        }
        Ok(acc)
    }

    /// self^exponent = exp(exponent·log self); requires constant term 1.
    pub fn pow_ratfun(&self, exponent: &RatFun) -> Result<QSeries, AlgebraError> {
        self.log()?.scale(exponent).exp()
    }

    /// Substitutes a rational value for a parameter variable in every
    /// coefficient.
    pub fn eval_var(&self, v: Var, value: &Rat) -> Result<QSeries, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval_var(v, value))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs })
    }
}

fn coeff_is_q_free(c: &RatFun) -> bool {
    c.num().max_degree_in(Var::Q) == 0 && c.den().max_degree_in(Var::Q) == 0
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
            .collect();
        QSeries { coeffs }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![RatFun::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        QSeries { coeffs }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = format!("{c}");
            let needs_parens = cs.contains(' ') && k > 0;
            let cs = if needs_parens { format!("({cs})") } else { cs };
            match k {
                0 => write!(f, "{cs}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{cs}*q")?,
                _ if c.is_one() => write!(f, "q^{k}")?,
                _ => write!(f, "{cs}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
