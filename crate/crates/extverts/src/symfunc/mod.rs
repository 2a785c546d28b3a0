//! Symmetric functions in the power-sum basis with rational-function
//! coefficients: the Jack inner product, Jack polynomials, the operator E
//! of multiplication by 1 + e_1 + e_2 + …, and adjoints.

mod jack;
mod pieri;
mod transition;

pub use jack::{gram_schmidt_with_order, JackCacheError, JackPoly, JackTable};
pub use pieri::{
    base_case_closed_form, base_case_inner_product, pieri_lhs, pieri_rhs, BaseCaseShape,
};
pub use transition::{monomial_sym, to_monomial_basis};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{rat, rat_int, AlgebraError, MPoly, Rat, RatFun, Var};
use crate::partitions::Partition;

/// Finite linear combination of power-sum monomials p_λ = Π p_{λ_i}.
#[derive(Clone, PartialEq, Default)]
pub struct SymFunc {
    terms: BTreeMap<Partition, RatFun>,
}

impl SymFunc {
    pub fn zero() -> SymFunc {
        SymFunc {
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1 = p_∅.
    pub fn one() -> SymFunc {
        SymFunc::p_monomial(Partition::empty())
    }

    /// The basis monomial p_λ.
    pub fn p_monomial(lambda: Partition) -> SymFunc {
        let mut f = SymFunc::zero();
        f.add_term(lambda, RatFun::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: RatFun) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFun {
        self.terms.get(lambda).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &RatFun) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, v)| (l.clone(), v * c))
                .collect(),
        }
    }

    /// Maximum symmetric-function degree present.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    /// The homogeneous component of degree d.
    pub fn degree_slice(&self, d: u32) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == d)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every component of degree above `cap`.
    pub fn truncate_degree(&self, cap: u32) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() <= cap)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at total degree `cap`.
    pub fn mul_truncated(&self, rhs: &SymFunc, cap: u32) -> SymFunc {
        let mut out = SymFunc::zero();
        for (la, ca) in &self.terms {
            if la.size() > cap {
                continue;
            }
            for (lb, cb) in &rhs.terms {
                if la.size() + lb.size() > cap {
                    continue;
                }
                out.add_term(la.merge(lb), ca * cb);
            }
        }
        out
    }

    /// Substitutes a rational-function value for a parameter variable in
    /// every coefficient.
    pub fn substitute(&self, v: Var, value: &RatFun) -> Result<SymFunc, AlgebraError> {
        let mut out = SymFunc::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.substitute(v, value)?);
        }
        Ok(out)
    }

    /// ∂/∂p_n: each p-monomial loses one part n, scaled by its multiplicity.
    pub fn partial_p(&self, n: u32) -> SymFunc {
        let mut out = SymFunc::zero();
        for (l, c) in &self.terms {
            let mult = l.multiplicity(n);
            if mult == 0 {
                continue;
            }
            let reduced = l.without_part(n).expect("part present");
            out.add_term(reduced, c.scale_rat(&rat_int(mult as i64)));
        }
        out
    }
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &(-rhs)
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), -c))
                .collect(),
        }
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (la, ca) in &self.terms {
            for (lb, cb) in &rhs.terms {
                out.add_term(la.merge(lb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = p_monomial_string(l);
            let cs = format!("{c}");
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else if cs.contains(' ') || cs.contains('/') {
                write!(f, "({cs})*{mono}")?;
            } else {
                write!(f, "{cs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn p_monomial_string(l: &Partition) -> String {
    if l.is_empty() {
        return String::new();
    }
    let mut factors: Vec<String> = Vec::new();
    let mut distinct: Vec<u32> = l.parts().to_vec();
    distinct.dedup();
    for k in distinct {
        let mult = l.multiplicity(k);
        if mult == 1 {
            factors.push(format!("p{k}"));
        } else {
            factors.push(format!("p{k}^{mult}"));
        }
    }
    // smallest parts first: p1^2*p2 style
    factors.reverse();
    factors.join("*")
}

/// Jack inner product: ⟨p_λ, p_μ⟩ = δ_{λμ} z_λ θ^{−ℓ(λ)}, extended
/// bilinearly. Exact in ℚ(θ) (and whatever parameters the coefficients
/// carry).
pub fn jack_inner(f: &SymFunc, g: &SymFunc) -> RatFun {
    pairing_with_norm(f, g, |l| {
        let theta_pow = MPoly::var_pow(Var::Theta, l.len() as i32);
        RatFun::new(MPoly::constant(l.z_factor()), theta_pow).expect("θ^ℓ is nonzero")
    })
}

/// Generic diagonal pairing Σ_λ f_λ g_λ ⟨p_λ, p_λ⟩.
pub(crate) fn pairing_with_norm(
    f: &SymFunc,
    g: &SymFunc,
    norm: impl Fn(&Partition) -> RatFun,
) -> RatFun {
    let mut acc = RatFun::zero();
    for (l, cf) in f.terms() {
        let cg = g.coeff(l);
        if cg.is_zero() {
            continue;
        }
        acc = &acc + &(&(cf * &cg) * &norm(l));
    }
    acc
}

/// Applies the adjoint of multiplication-by-f to g under the Jack pairing:
/// p_k* = (k/θ) ∂/∂p_k.
pub fn apply_dual(f: &SymFunc, g: &SymFunc) -> SymFunc {
    let theta_inv = RatFun::new(MPoly::one(), MPoly::var(Var::Theta)).unwrap();
    let mut out = SymFunc::zero();
    for (l, c) in f.terms() {
        let mut cur = g.clone();
        let mut scale = c.clone();
        for &k in l.parts() {
            cur = cur.partial_p(k);
            scale = &scale * &theta_inv.scale_rat(&rat_int(k as i64));
            if cur.is_zero() {
                break;
            }
        }
        if !cur.is_zero() {
            out = &out + &cur.scale(&scale);
        }
    }
    out
}

/// The log of E: A = Σ_{n≥1} (−1)^{n−1} p_n / n, truncated at degree cap.
/// E = 1 + e_1 + e_2 + … = exp(A).
fn e_log(cap: u32) -> SymFunc {
    let mut a = SymFunc::zero();
    for n in 1..=cap {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        a.add_term(
            Partition::new(vec![n]),
            RatFun::from_rat(rat(sign, n as i64)),
        );
    }
    a
}

/// E^s = exp(s·A) with symbolic exponent s, all components of degree
/// ≤ degree_cap. Coefficients are polynomial in s.
pub fn e_operator_power(s: &RatFun, degree_cap: u32) -> SymFunc {
    let a = e_log(degree_cap).scale(s);
    exp_truncated(&a, degree_cap)
}

/// exp of a symmetric function with zero constant term, truncated.
fn exp_truncated(a: &SymFunc, cap: u32) -> SymFunc {
    debug_assert!(a.coeff(&Partition::empty()).is_zero());
    let mut acc = SymFunc::one();
    let mut power = SymFunc::one();
    let mut factorial = Rat::from_integer(1.into());
    for k in 1..=cap {
        power = power.mul_truncated(a, cap);
        if power.is_zero() {
            break;
        }
        factorial *= rat_int(k as i64);
        acc = &acc + &power.scale(&RatFun::from_rat(factorial.recip()));
    }
    acc
}

/// (E^s)* applied to v: exp(s·A*) v, where A* = Σ (−1)^{n−1} (1/θ) ∂/∂p_n.
/// Finite because each application lowers degree.
pub fn e_star_power_apply(s: &RatFun, v: &SymFunc) -> SymFunc {
    let theta_inv = RatFun::new(MPoly::one(), MPoly::var(Var::Theta)).unwrap();
    let apply_a_star = |f: &SymFunc| -> SymFunc {
        let mut out = SymFunc::zero();
        for n in 1..=f.max_degree() {
            let d = f.partial_p(n);
            if d.is_zero() {
                continue;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = &out + &d.scale(&theta_inv.scale_rat(&rat_int(sign)));
        }
        out
    };
    let mut acc = v.clone();
    let mut power = v.clone();
    let mut scale = RatFun::one();
    let mut factorial = Rat::from_integer(1.into());
    for k in 1..=(v.max_degree() as i64).max(0) {
        power = apply_a_star(&power);
        if power.is_zero() {
            break;
        }
        scale = &scale * s;
        factorial *= rat_int(k);
        acc = &acc + &power.scale(&scale.scale_rat(&factorial.recip()));
    }
    acc
}
