//! Exact rational functions in the registered indeterminates.
//!
//! Full multivariate gcd is deliberately avoided. Reduction cancels
//! monomial content, constant denominators, and univariate denominator
//! factors; everything the identities need beyond that goes through exact
//! cross-multiplied equality. Callers that know their denominators in
//! factored form (the localization sweeps) reduce by trial division there.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::mpoly::{
    gcd_univariate, mpoly_from_json, mpoly_to_json, rat_to_string, MPoly, Rat, Var,
};
use super::AlgebraError;

/// Quotient of two polynomials, denominator nonzero.
#[derive(Clone)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(reduce(num, den))
    }

    pub fn from_mpoly(p: MPoly) -> RatFun {
        RatFun {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> RatFun {
        RatFun::from_mpoly(MPoly::constant(c))
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::from_rat(super::mpoly::rat_int(n))
    }

    pub fn zero() -> RatFun {
        RatFun::from_mpoly(MPoly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_mpoly(MPoly::one())
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from_mpoly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &RatFun::one()
    }

    /// Constant value if both numerator and denominator are constants.
    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn inv(&self) -> Result<RatFun, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(reduce(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &RatFun) -> Result<RatFun, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow_i64(&self, e: i64) -> Result<RatFun, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes a rational function for a variable. Errors if the
    /// denominator specializes to zero.
    pub fn substitute(&self, v: Var, value: &RatFun) -> Result<RatFun, AlgebraError> {
        let num = substitute_mpoly(&self.num, v, value)?;
        let den = substitute_mpoly(&self.den, v, value)?;
        if den.is_zero() {
            return Err(AlgebraError::SingularSubstitution);
        }
        num.try_div(&den)
    }

    /// Substitutes an exact rational value for a variable.
    pub fn eval_var(&self, v: Var, value: &Rat) -> Result<RatFun, AlgebraError> {
        self.substitute(v, &RatFun::from_rat(value.clone()))
    }

    /// Multiplies by an exact rational scalar.
    pub fn scale_rat(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

/// Substitution into a polynomial may introduce denominators (Laurent
/// exponents, rational-function values), so the result is a RatFun.
fn substitute_mpoly(p: &MPoly, v: Var, value: &RatFun) -> Result<RatFun, AlgebraError> {
    let mut out = RatFun::zero();
    for (mono, c) in p.terms() {
        let e = mono.exp(v);
        let mut rest = mono.0;
        rest[v.index()] = 0;
        let base = RatFun::from_mpoly(MPoly::monomial(super::mpoly::Mono(rest), c.clone()));
        let term = &base * &value.pow_i64(e as i64)?;
        out = &out + &term;
    }
    Ok(out)
}

/// The reduction pipeline. `den` must be nonzero.
fn reduce(num: MPoly, den: MPoly) -> RatFun {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
        };
    }

    // Cancel shared monomial content; afterwards both parts are ordinary
    // polynomials with no common monomial factor.
    let cn = num.monomial_content();
    let cd = den.monomial_content();
    let mut g = cn.0;
    for (a, b) in g.iter_mut().zip(cd.0.iter()) {
        *a = (*a).min(*b);
    }
    let g = super::mpoly::Mono(g);
    let mut num = num.div_mono(&g);
    let mut den = den.div_mono(&g);

    if let Some(c) = den.as_constant() {
        num = num.scale(&c.recip());
        den = MPoly::one();
        return RatFun { num, den };
    }

    if let Some(v) = den.single_var() {
        // gcd(num, den) lies in ℚ[v]; it is gcd of den with the
        // ℚ[v]-content of num.
        let content = num.univariate_content_in(v);
        let g = gcd_univariate(&content, &den, v);
        if g.max_degree_in(v) > 0 {
            num = num.div_exact(&g).expect("content divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
    } else {
        if let Some(q) = num.div_exact(&den) {
            return RatFun {
                num: q,
                den: MPoly::one(),
            };
        }
        if let Some(q) = den.div_exact(&num) {
            // num/den = 1/q
            num = MPoly::one();
            den = q;
        }
    }

    // Sign/scale normalization: denominator primitive with positive
    // leading coefficient.
    let (den, removed) = den.primitive_part();
    let num = num.scale(&removed.recip());
    RatFun { num, den }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return reduce(&self.num + &rhs.num, self.den.clone());
        }
        reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // Cross-reduce first to keep intermediates small.
        let a = reduce(self.num.clone(), rhs.den.clone());
        let b = reduce(rhs.num.clone(), self.den.clone());
        reduce(&a.num * &b.num, &a.den * &b.den)
    }
}

/// Exact equality by cross-multiplication; independent of representation.
impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let den = if self.den.num_terms() > 1 {
            format!("({})", self.den)
        } else {
            format!("{}", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON encoding: `{"num": <mpoly>, "den": <mpoly>}`.
pub fn ratfun_to_json(r: &RatFun) -> serde_json::Value {
    serde_json::json!({
        "num": mpoly_to_json(r.num()),
        "den": mpoly_to_json(r.den()),
    })
}

pub fn ratfun_from_json(v: &serde_json::Value) -> Result<RatFun, AlgebraError> {
    let bad = || AlgebraError::BadJson("ratfun".into());
    let num = mpoly_from_json(v.get("num").ok_or_else(bad)?)?;
    let den = mpoly_from_json(v.get("den").ok_or_else(bad)?)?;
    RatFun::new(num, den)
}

/// Convenience display used in reports: numerator/denominator with an
/// explicit rational normal check already applied.
pub fn ratfun_to_string(r: &RatFun) -> String {
    format!("{r}")
}

#[allow(unused)]
fn _rat_to_string_is_used(r: &Rat) -> String {
    rat_to_string(r)
}
