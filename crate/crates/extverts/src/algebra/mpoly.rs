//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! The indeterminate registry is fixed for the whole library: the seven
//! variables `t1, t2, m, θ, q, z1, z2`. The character variables `z1`, `z2`
//! are Laurent (negative exponents allowed); the others are ordinary.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exact rational scalar: arbitrary-precision, always in lowest terms with
/// positive denominator (maintained by `num_rational`).
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as "p" or "p/q".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" (optionally signed) into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat, AlgebraError> {
    let bad = || AlgebraError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Number of registered indeterminates.
pub const NVARS: usize = 7;

/// The global indeterminate registry.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Var {
    T1,
    T2,
    M,
    Theta,
    Q,
    Z1,
    Z2,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::T1,
        Var::T2,
        Var::M,
        Var::Theta,
        Var::Q,
        Var::Z1,
        Var::Z2,
    ];

    pub fn index(self) -> usize {
        match self {
            Var::T1 => 0,
            Var::T2 => 1,
            Var::M => 2,
            Var::Theta => 3,
            Var::Q => 4,
            Var::Z1 => 5,
            Var::Z2 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::M => "m",
            Var::Theta => "θ",
            Var::Q => "q",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
        }
    }

    /// Laurent indeterminates admit negative exponents.
    pub fn is_laurent(self) -> bool {
        matches!(self, Var::Z1 | Var::Z2)
    }
}

/// An exponent vector, one slot per registered indeterminate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [i32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Mono {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Mono(m)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Mono(m)
    }

    /// Componentwise divisibility (all exponents of `other` ≤ ours).
    fn divisible_by(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// True if every non-Laurent slot is nonnegative.
    fn respects_registry(&self) -> bool {
        Var::ALL
            .iter()
            .all(|&v| v.is_laurent() || self.0[v.index()] >= 0)
    }
}

// Graded lexicographic order: total degree first, then slot-wise exponents.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariant: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(Mono::ONE, c);
        p
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Mono::var(v, 1), Rat::one())
    }

    pub fn var_pow(v: Var, e: i32) -> MPoly {
        MPoly::monomial(Mono::var(v, e), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(m, c);
        p
    }

    /// Merges `c·m` into the polynomial, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.respects_registry(), "negative exponent on ordinary var");
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Returns the constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// The variables that actually occur.
    pub fn vars_used(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) != 0))
            .collect()
    }

    pub fn max_degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    /// Zero polynomial has content 1.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::ONE,
        };
        let mut content = first.0;
        for m in it {
            for (c, e) in content.iter_mut().zip(m.0.iter()) {
                *c = (*c).min(*e);
            }
        }
        Mono(content)
    }

    /// Divides every term by the monomial `m` (must divide exactly in the
    /// Laurent sense; ordinary slots are the caller's responsibility).
    pub fn div_mono(&self, m: &Mono) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.div(m), c.clone());
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sends z1 ↦ z1⁻¹ and z2 ↦ z2⁻¹ (dual of a torus character).
    pub fn dual_z(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[Var::Z1.index()] = -e[Var::Z1.index()];
            e[Var::Z2.index()] = -e[Var::Z2.index()];
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Division with remainder in the Laurent ring, by a single divisor:
    /// self = q·d + r, with r = 0 exactly when d divides self. Monomials
    /// are units in the Laurent slots, so both operands are shifted to
    /// monomial content 1 first.
    pub fn div_rem(&self, d: &MPoly) -> (MPoly, MPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return (MPoly::zero(), MPoly::zero());
        }
        let cb = self.monomial_content();
        let cd = d.monomial_content();
        let shift = cb.div(&cd);
        if !shift.respects_registry() {
            // an ordinary-variable monomial factor of d is missing
            return (MPoly::zero(), self.clone());
        }
        let b0 = self.div_mono(&cb);
        let d0 = d.div_mono(&cd);
        let (q0, r0) = b0.div_rem_ordinary(&d0);
        (q0.mul_mono(&shift), r0.mul_mono(&cb))
    }

    /// Division with both operands having monomial content 1 (all
    /// exponents nonnegative). Leading terms not divisible by the
    /// divisor's leading term move to the remainder.
    fn div_rem_ordinary(&self, d: &MPoly) -> (MPoly, MPoly) {
        let (dm, dc) = d.leading().expect("divisor is nonzero");
        let dm = *dm;
        let dc = dc.clone();
        let mut work = self.clone();
        let mut quot = MPoly::zero();
        let mut rem = MPoly::zero();
        while !work.is_zero() {
            let (wm, wc) = work.leading().unwrap();
            if wm.divisible_by(&dm) {
                let qm = wm.div(&dm);
                let qc = wc / &dc;
                quot.add_term(qm, qc.clone());
                work = &work - &d.mul_mono(&qm).scale(&qc);
            } else {
                let (wm, wc) = (*wm, wc.clone());
                rem.add_term(wm, wc.clone());
                work.add_term(wm, -wc);
            }
        }
        (quot, rem)
    }

    /// Exact division in the Laurent ring; `None` when `d` does not
    /// divide.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// True when `d` divides `self` exactly (Laurent sense).
    pub fn divisible(&self, d: &MPoly) -> bool {
        self.div_exact(d).is_some()
    }

    /// Substitutes an exact rational value for a variable.
    pub fn eval_var(&self, v: Var, value: &Rat) -> Result<MPoly, AlgebraError> {
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            let e = mono.exp(v);
            let mut m = mono.0;
            m[v.index()] = 0;
            let factor = if e >= 0 {
                pow_rat(value, e as u32)
            } else {
                if value.is_zero() {
                    return Err(AlgebraError::SingularSubstitution);
                }
                pow_rat(value, (-e) as u32).recip()
            };
            out.add_term(Mono(m), c * factor);
        }
        Ok(out)
    }

    /// Rescales so the coefficients are coprime integers with the leading
    /// one positive; returns the removed rational factor.
    pub fn primitive_part(&self) -> (MPoly, Rat) {
        if self.is_zero() {
            return (MPoly::zero(), Rat::one());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scale = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        (self.scale(&inv), scale)
    }

    /// Univariate view: the single variable used, if at most one.
    pub fn single_var(&self) -> Option<Var> {
        let used = self.vars_used();
        match used.len() {
            0 => None,
            1 => Some(used[0]),
            _ => None,
        }
    }

    /// Viewing the polynomial in ℚ[other vars][v], the gcd of all
    /// ℚ[v]-coefficients. Result is a polynomial in `v` alone.
    pub fn univariate_content_in(&self, v: Var) -> MPoly {
        let mut groups: BTreeMap<Mono, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = m.0;
            rest[v.index()] = 0;
            groups
                .entry(Mono(rest))
                .or_insert_with(MPoly::zero)
                .add_term(Mono::var(v, e), c.clone());
        }
        let mut acc = MPoly::zero();
        for g in groups.values() {
            acc = gcd_univariate(&acc, g, v);
            if acc.as_constant().is_some() && !acc.is_zero() {
                return MPoly::one();
            }
        }
        acc
    }
}

/// Monic gcd of two polynomials in the single variable `v`.
/// gcd(0, b) = b normalized; gcd(0, 0) = 0.
pub fn gcd_univariate(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    fn to_monic(p: &MPoly) -> MPoly {
        let (_, lead) = p.leading().unwrap();
        p.scale(&lead.recip())
    }
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = rem_univariate(&a, &b, v);
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        to_monic(&a)
    }
}

/// Remainder of univariate division in `v`.
fn rem_univariate(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.max_degree_in(v);
    let (bm, bc) = b.leading().expect("nonzero divisor");
    debug_assert_eq!(bm.exp(v), db);
    let bc = bc.clone();
    let mut rem = a.clone();
    loop {
        if rem.is_zero() {
            return rem;
        }
        let da = rem.max_degree_in(v);
        if da < db {
            return rem;
        }
        let lc = rem
            .terms()
            .find(|(m, _)| m.exp(v) == da)
            .map(|(_, c)| c.clone())
            .unwrap();
        let qc = &lc / &bc;
        let qm = Mono::var(v, da - db);
        rem = &rem - &b.mul_mono(&qm).scale(&qc);
    }
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest term first reads naturally.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = mono_to_string(m);
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", rat_to_string(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn mono_to_string(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 1 {
            parts.push(v.name().to_string());
        } else if e != 0 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

/// JSON encoding: `{"terms": [{"exps": [..7 ints..], "coeff": "p/q"}]}`.
pub fn mpoly_to_json(p: &MPoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(m, c)| {
            serde_json::json!({
                "exps": m.0.to_vec(),
                "coeff": rat_to_string(c),
            })
        })
        .collect();
    serde_json::json!({ "terms": terms })
}

pub fn mpoly_from_json(v: &serde_json::Value) -> Result<MPoly, AlgebraError> {
    let bad = || AlgebraError::BadJson("mpoly".into());
    let terms = v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)?;
    let mut p = MPoly::zero();
    for t in terms {
        let exps = t.get("exps").and_then(|e| e.as_array()).ok_or_else(bad)?;
        if exps.len() != NVARS {
            return Err(bad());
        }
        let mut m = [0i32; NVARS];
        for (slot, e) in m.iter_mut().zip(exps.iter()) {
            *slot = e.as_i64().ok_or_else(bad)? as i32;
        }
        let coeff = t.get("coeff").and_then(|c| c.as_str()).ok_or_else(bad)?;
        p.add_term(Mono(m), rat_from_str(coeff)?);
    }
    Ok(p)
}
