//! The adjoint-matter instanton partition function: fixed-point sum over
//! partitions and the closed infinite-product form, both exact in
//! ℚ(m, t1, t2).
//!
//! The per-coefficient sums keep denominators as multisets of primitive
//! linear forms, so reduction is the lcm merge plus trial division — no
//! general multivariate gcd is needed.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{MPoly, QSeries, Rat, RatFun, Var};
use crate::partitions::Partition;

use super::{euler_class, ext_character_hooks, tangent_weights, LinearForm};

/// Fraction with denominator kept as a multiset of primitive linear
/// forms. Scalar content of the forms is folded into the numerator.
#[derive(Clone)]
struct FactoredFrac {
    num: MPoly,
    den: BTreeMap<LinearForm, u32>,
}

impl FactoredFrac {
    fn zero() -> FactoredFrac {
        FactoredFrac {
            num: MPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    fn add(&self, other: &FactoredFrac) -> FactoredFrac {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        let mut den: BTreeMap<LinearForm, u32> = self.den.clone();
        for (f, &k) in &other.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(k);
        }
        let mut num = MPoly::zero();
        for (base_num, base_den) in [(&self.num, &self.den), (&other.num, &other.den)] {
            let mut scaled = base_num.clone();
            for (f, &k) in &den {
                let have = base_den.get(f).copied().unwrap_or(0);
                for _ in have..k {
                    scaled = &scaled * &f.to_mpoly();
                }
            }
            num = &num + &scaled;
        }
        FactoredFrac { num, den }
    }

    /// Cancels denominator factors that divide the numerator, then
    /// expands what is left.
    fn into_ratfun(self) -> RatFun {
        let mut num = self.num;
        let mut den = MPoly::one();
        for (f, mult) in self.den {
            let poly = f.to_mpoly();
            let mut remaining = mult;
            while remaining > 0 {
                match num.div_exact(&poly) {
                    Some(q) => {
                        num = q;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..remaining {
                den = &den * &poly;
            }
        }
        RatFun::new(num, den).expect("denominator is a product of nonzero forms")
    }
}

/// The localization ratio e(𝖤, m) / e(T) at the fixed point λ.
fn fixed_point_ratio(lambda: &Partition) -> FactoredFrac {
    let masked = euler_class(&ext_character_hooks(lambda, lambda), true)
        .expect("diagonal character is effective");
    let tangent = tangent_weights(lambda);
    let mut num = masked.value();
    let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let mut scale = Rat::one();
    for f in tangent.factors() {
        let (prim, s) = f.normalized();
        scale *= s;
        *den.entry(prim).or_insert(0) += 1;
    }
    num = num.scale(&scale.recip());
    FactoredFrac { num, den }
}

/// Fixed-point sum: Σ_λ q^{|λ|} e(𝖤|_{(λ,λ)}, mass on) / e(T_λ Hilb).
/// Coefficient of q⁰ is 1. The sweep over partitions of each size is
/// parallel; the reduction order is fixed for determinism.
pub fn nekrasov_sum(order: usize) -> QSeries {
    let mut series = QSeries::zero(order);
    for n in 0..=order {
        let partitions = Partition::enumerate(n as u32);
        let fracs: Vec<FactoredFrac> = partitions
            .par_iter()
            .map(fixed_point_ratio)
            .collect();
        let total = fracs
            .iter()
            .fold(FactoredFrac::zero(), |acc, f| acc.add(f));
        series.set_coeff(n, total.into_ratfun());
    }
    series
}

/// Closed product form: Π_{n≥1} (1 − q^n)^{(𝓛,𝒦−𝓛) − e(C²)} with the
/// localized intersection number (𝓛,𝒦−𝓛) = m(−t1−t2−m)/(t1 t2) and
/// e(C²) = 1, i.e. exponent −m(m+t1+t2)/(t1 t2) − 1.
pub fn nekrasov_product(order: usize) -> QSeries {
    let m = MPoly::var(Var::M);
    let t1 = MPoly::var(Var::T1);
    let t2 = MPoly::var(Var::T2);
    let t1t2 = &t1 * &t2;
    // −(m(m+t1+t2) + t1t2) / (t1t2)
    let num = -&(&(&m * &(&(&m + &t1) + &t2)) + &t1t2);
    let exponent = RatFun::new(num, t1t2).expect("t1 t2 is nonzero");

    let mut log_sum = QSeries::zero(order);
    for n in 1..=order {
        log_sum = &log_sum
            + &QSeries::one_minus_q_pow(n, order)
                .log()
                .expect("constant term is 1");
    }
    log_sum.scale(&exponent).exp().expect("constant term is 0")
}
