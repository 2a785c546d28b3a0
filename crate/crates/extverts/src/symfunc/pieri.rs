//! Both sides of the Pieri-type evaluation
//! ⟨E^m (E*)^{θ−m−1} J_λ, J_μ⟩ with m and θ symbolic, plus the one-row /
//! one-column closed forms it degenerates to.

use crate::algebra::{rat_int, MPoly, Mono, RatFun, Var};
use crate::partitions::Partition;

use super::{e_operator_power, e_star_power_apply, jack_inner, JackTable};

/// Left-hand side: expand (E*)^{θ−m−1} J_λ across degrees, multiply by
/// the matching slices of E^m up to degree |μ|, and pair with J_μ.
/// Exact element of ℚ(m, θ).
pub fn pieri_lhs(lambda: &Partition, mu: &Partition, table: &JackTable) -> RatFun {
    let jl = table.jack(lambda);
    let jm = table.jack(mu);
    let m = RatFun::var(Var::M);
    let theta = RatFun::var(Var::Theta);
    let s = &(&theta - &m) - &RatFun::one();
    let lowered = e_star_power_apply(&s, &jl.expansion);
    let e_m = e_operator_power(&m, mu.size());
    let raised = lowered.mul_truncated(&e_m, mu.size());
    jack_inner(&raised, &jm.expansion)
}

/// Right-hand side:
/// (−1)^{|λ|} θ^{−|λ|−|μ|} Π_{□∈λ}(m + a_λ + 1 + θ l_μ)
///                         Π_{□∈μ}(m − a_μ − θ(l_λ + 1)),
/// with total (zero-extended) arms and legs across both diagrams.
pub fn pieri_rhs(lambda: &Partition, mu: &Partition) -> RatFun {
    let mut num = MPoly::one();
    for sq in lambda.squares() {
        num = &num * &linear_m_theta(lambda.arm(sq) + 1, mu.leg(sq));
    }
    for sq in mu.squares() {
        num = &num * &linear_m_theta(-mu.arm(sq), -(lambda.leg(sq) + 1));
    }
    if lambda.size() % 2 == 1 {
        num = -&num;
    }
    let den = MPoly::var_pow(Var::Theta, (lambda.size() + mu.size()) as i32);
    RatFun::new(num, den).expect("θ power is nonzero")
}

/// m + c + θ·t as a polynomial.
fn linear_m_theta(c: i64, t: i64) -> MPoly {
    let mut p = MPoly::var(Var::M);
    p.add_term(Mono::ONE, rat_int(c));
    p.add_term(Mono::var(Var::Theta, 1), rat_int(t));
    p
}

/// One-row (l) and one-column (1^k) shapes of the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseCaseShape {
    Row(u32),
    Column(u32),
}

/// Closed forms of the rank-one matrix elements:
///   (E^m, J_(l))       = θ^{−l} Π_{i=0}^{l−1} (m − i)
///   (E^m p_1, J_(l))   = l θ^{−l} Π_{i=0}^{l−2} (m − i)
///   (E^m, J_(1^k))     = θ^{−k} Π_{i=0}^{k−1} (m + iθ)
///   (E^m p_1, J_(1^k)) = k θ^{−k} Π_{i=0}^{k−2} (m + iθ)
/// The column-with-p_1 prefactor is k, fixed by brute-force comparison
/// against the inner-product route.
pub fn base_case_closed_form(shape: BaseCaseShape, with_p1: bool) -> RatFun {
    let (size, prefactor, factor): (u32, i64, Box<dyn Fn(i64) -> MPoly>) = match shape {
        BaseCaseShape::Row(l) => {
            assert!(l >= 1);
            (l, l as i64, Box::new(|i| linear_m_theta(-i, 0)))
        }
        BaseCaseShape::Column(k) => {
            assert!(k >= 1);
            (k, k as i64, Box::new(|i| linear_m_theta(0, i)))
        }
    };
    let bound = if with_p1 {
        size as i64 - 1
    } else {
        size as i64
    };
    let mut num = MPoly::one();
    for i in 0..bound {
        num = &num * &factor(i);
    }
    if with_p1 {
        num = num.scale(&rat_int(prefactor));
    }
    let den = MPoly::var_pow(Var::Theta, size as i32);
    RatFun::new(num, den).expect("θ power is nonzero")
}

/// Brute-force companion of `base_case_closed_form`: the same quantity
/// via `e_operator_power` and `jack_inner`.
pub fn base_case_inner_product(shape: BaseCaseShape, with_p1: bool, table: &JackTable) -> RatFun {
    let (mu, n) = match shape {
        BaseCaseShape::Row(l) => (Partition::new(vec![l]), l),
        BaseCaseShape::Column(k) => (Partition::new(vec![1; k as usize]), k),
    };
    let j = table.jack(&mu);
    let m = RatFun::var(Var::M);
    let mut f = e_operator_power(&m, n);
    if with_p1 {
        f = f.mul_truncated(&super::SymFunc::p_monomial(Partition::new(vec![1])), n);
    }
    jack_inner(&f, &j.expansion)
}
