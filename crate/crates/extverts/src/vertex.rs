//! The Fock-space side: the geometric pairing on symmetric functions,
//! the fixed-point dictionary, the vertex operator built from the two
//! Heisenberg exponentials, its z-graded matrix elements, and the
//! q-weighted operator trace.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{rat, rat_int, MPoly, QSeries, RatFun, Var};
use crate::partitions::Partition;
use crate::symfunc::{pairing_with_norm, JackTable, SymFunc};

/// A vector of the Fock space ⊕_n H*(Hilb_n), graded by the number of
/// points: a symmetric function with coefficients in ℚ(t1, t2, m).
pub type FockVector = SymFunc;

/// Finitely supported map from z-power to a value; tracks the degree
/// bookkeeping z^{l−k} of the vertex operator.
pub type ZGraded<T> = BTreeMap<i64, T>;

/// Which exponential legs of the vertex operator to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaDirection {
    Creation,
    Annihilation,
    Both,
}

/// The localization inner product in the power-sum basis:
/// ⟨p_λ, p_μ⟩ = δ_{λμ} (−1)^{|λ|−ℓ(λ)} z_λ (t1 t2)^{−ℓ(λ)}.
///
/// The parity sign is forced by the norm bridge ⟨f_λ, f_λ⟩ = tangent
/// Euler class (already visible at λ = (2)); without it the q² trace
/// coefficient disagrees with the closed product form.
pub fn geom_pairing(f: &FockVector, g: &FockVector) -> RatFun {
    pairing_with_norm(f, g, geom_norm)
}

fn geom_norm(l: &Partition) -> RatFun {
    let t1t2 = &MPoly::var(Var::T1) * &MPoly::var(Var::T2);
    let sign = if (l.size() as usize + l.len()).is_multiple_of(2) {
        rat_int(1)
    } else {
        rat_int(-1)
    };
    RatFun::new(
        MPoly::constant(l.z_factor() * sign),
        t1t2.pow(l.len() as u32),
    )
    .expect("t1 t2 is nonzero")
}

/// The class of the torus-fixed point I_λ under the Fock dictionary:
/// t2^{|λ|} · J_λ with θ = −t2/t1 substituted and then p_i ↦ t1 p_i.
pub fn fixed_point_class(lambda: &Partition, table: &JackTable) -> FockVector {
    let jack = table.jack(lambda);
    let theta_val = RatFun::new(
        -&MPoly::var(Var::T2),
        MPoly::var(Var::T1),
    )
    .expect("t1 is nonzero");
    let substituted = jack
        .expansion
        .substitute(Var::Theta, &theta_val)
        .expect("Jack denominators survive θ = −t2/t1");
    let mut out = SymFunc::zero();
    let size = lambda.size() as i32;
    for (l, c) in substituted.terms() {
        // t2^{|λ|} from the dictionary, t1^{ℓ} from rescaling each p_i
        let scale = RatFun::from_mpoly(MPoly::monomial(
            crate::algebra::Mono::var(Var::T2, size).mul(&crate::algebra::Mono::var(
                Var::T1,
                l.len() as i32,
            )),
            rat_int(1),
        ));
        out.add_term(l.clone(), c * &scale);
    }
    out
}

/// Applies the vertex operator
///   Γ = exp(Σ_n (−1)^{n−1} z^n (m/n) p_n) ·
///       exp(Σ_n (−1)^{n−1} z^{−n} ((m+t1+t2)/(t1 t2)) ∂/∂p_n)
/// to a vector, tracking z-powers: the creation leg contributes z^{+n},
/// the annihilation leg z^{−n}. The annihilation coefficients are the
/// adjoints n⁻¹ α*_{−n} of the Nakajima operators under `geom_pairing`,
/// whose parity sign matches the pairing's. Output degrees are capped at
/// degree_cap.
pub fn gamma_apply(
    v: &FockVector,
    direction: GammaDirection,
    degree_cap: u32,
) -> ZGraded<FockVector> {
    let mut graded: ZGraded<FockVector> = BTreeMap::new();
    graded.insert(0, v.clone());
    // annihilation acts first (right factor of the operator product)
    if matches!(direction, GammaDirection::Annihilation | GammaDirection::Both) {
        graded = apply_annihilation_exp(&graded);
    }
    if matches!(direction, GammaDirection::Creation | GammaDirection::Both) {
        graded = apply_creation_exp(&graded, degree_cap);
    }
    graded.retain(|_, f| !f.is_zero());
    graded
}

/// exp(Σ_n (−1)^{n−1} z^{−n} c ∂_n) with c = (m+t1+t2)/(t1 t2); finite
/// on each vector because every application lowers degree.
fn apply_annihilation_exp(graded: &ZGraded<FockVector>) -> ZGraded<FockVector> {
    let t1t2 = &MPoly::var(Var::T1) * &MPoly::var(Var::T2);
    let num = &(&MPoly::var(Var::M) + &MPoly::var(Var::T1)) + &MPoly::var(Var::T2);
    let c = RatFun::new(num, t1t2).expect("t1 t2 is nonzero");

    let mut out = graded.clone();
    let mut current = graded.clone();
    let mut k = 1i64;
    loop {
        // current ← D(current)/k, accumulating D^k/k! applied to v
        let mut next: ZGraded<FockVector> = BTreeMap::new();
        for (&zp, f) in &current {
            for n in 1..=f.max_degree() {
                let d = f.partial_p(n);
                if d.is_zero() {
                    continue;
                }
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let scaled = d.scale(&c.scale_rat(&rat(sign, k)));
                add_graded(&mut next, zp - n as i64, scaled);
            }
        }
        if next.is_empty() {
            break;
        }
        for (zp, f) in &next {
            add_graded(&mut out, *zp, f.clone());
        }
        current = next;
        k += 1;
    }
    out
}

/// exp(Σ_n (−1)^{n−1} z^n (m/n) p_n), truncated at total degree cap.
fn apply_creation_exp(graded: &ZGraded<FockVector>, cap: u32) -> ZGraded<FockVector> {
    let m = RatFun::var(Var::M);
    let mut out = graded.clone();
    let mut current = graded.clone();
    let mut k = 1i64;
    for _ in 0..=cap {
        let mut next: ZGraded<FockVector> = BTreeMap::new();
        for (&zp, f) in &current {
            for n in 1..=cap {
                let raised = f.mul_truncated(&SymFunc::p_monomial(Partition::new(vec![n])), cap);
                if raised.is_zero() {
                    continue;
                }
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let coeff = m.scale_rat(&rat(sign, n as i64 * k));
                add_graded(&mut next, zp + n as i64, raised.scale(&coeff));
            }
        }
        if next.is_empty() {
            break;
        }
        for (zp, f) in &next {
            add_graded(&mut out, *zp, f.clone());
        }
        current = next;
        k += 1;
    }
    out
}

fn add_graded(graded: &mut ZGraded<FockVector>, zp: i64, f: FockVector) {
    if f.is_zero() {
        return;
    }
    match graded.entry(zp) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(f);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &f;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Matrix element ⟨Γ f_λ, f_μ⟩ between fixed-point classes, z-graded.
/// Supported on the single power z^{|μ|−|λ|}.
pub fn w_matrix_element(
    lambda: &Partition,
    mu: &Partition,
    table: &JackTable,
) -> ZGraded<RatFun> {
    let f_lambda = fixed_point_class(lambda, table);
    let f_mu = fixed_point_class(mu, table);
    let image = gamma_apply(&f_lambda, GammaDirection::Both, mu.size());
    let mut out: ZGraded<RatFun> = BTreeMap::new();
    for (&zp, component) in &image {
        let value = geom_pairing(component, &f_mu);
        if !value.is_zero() {
            out.insert(zp, value);
        }
    }
    out
}

/// Operator trace Σ_λ q^{|λ|} ⟨(Γ p_λ)_{z⁰}, p_λ⟩ / ⟨p_λ, p_λ⟩ over the
/// orthogonal power-sum basis; the z⁰ component is the degree-preserving
/// part that the q-weighted trace pairs.
pub fn gamma_trace(order: usize) -> QSeries {
    trace_over_basis(order, |lambda| {
        (SymFunc::p_monomial(lambda.clone()), geom_norm(lambda))
    })
}

/// The same trace over the fixed-point basis f_λ; must agree with the
/// p-basis trace.
pub fn gamma_trace_fixed_point_basis(order: usize, table: &JackTable) -> QSeries {
    trace_over_basis(order, |lambda| {
        let f = fixed_point_class(lambda, table);
        let norm = geom_pairing(&f, &f);
        (f, norm)
    })
}

fn trace_over_basis(
    order: usize,
    basis: impl Fn(&Partition) -> (FockVector, RatFun) + Sync,
) -> QSeries {
    let mut series = QSeries::zero(order);
    for n in 0..=order {
        let partitions = Partition::enumerate(n as u32);
        let contributions: Vec<RatFun> = partitions
            .par_iter()
            .map(|lambda| {
                let (vector, norm) = basis(lambda);
                let image = gamma_apply(&vector, GammaDirection::Both, n as u32);
                let diagonal = match image.get(&0) {
                    Some(f) => geom_pairing(f, &vector),
                    None => RatFun::zero(),
                };
                diagonal.try_div(&norm).expect("basis norms are nonzero")
            })
            .collect();
        let total = contributions
            .iter()
            .fold(RatFun::zero(), |acc, c| &acc + c);
        series.set_coeff(n, total);
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{euler_class, ext_character_hooks, tangent_weights};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn v(x: Var) -> RatFun {
        RatFun::var(x)
    }

    fn t1t2() -> RatFun {
        &v(Var::T1) * &v(Var::T2)
    }

    #[test]
    fn pairing_basics() {
        assert_eq!(geom_pairing(&SymFunc::one(), &SymFunc::one()), RatFun::one());
        let p1 = SymFunc::p_monomial(p(&[1]));
        assert_eq!(geom_pairing(&p1, &p1), t1t2().inv().unwrap());
    }

    #[test]
    fn adjointness_of_lowering() {
        // ⟨p_n f, g⟩ = ⟨f, (−1)^{n−1} (n/(t1t2)) ∂_n g⟩ on a mixed pair.
        let mut f = SymFunc::p_monomial(p(&[2, 1]));
        f.add_term(p(&[3]), RatFun::from_int(2));
        let mut g = SymFunc::p_monomial(p(&[2, 2, 1]));
        g.add_term(p(&[3, 2]), v(Var::T1));
        for n in 1..=3u32 {
            let pn = SymFunc::p_monomial(p(&[n]));
            let lhs = geom_pairing(&(&pn * &f), &g);
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let scale = t1t2().inv().unwrap().scale_rat(&rat_int(sign * n as i64));
            let rhs = geom_pairing(&f, &g.partial_p(n).scale(&scale));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn fixed_point_classes_small() {
        let table = JackTable::new();
        // ∅ ↦ 1
        assert_eq!(fixed_point_class(&Partition::empty(), &table), SymFunc::one());
        // (1) ↦ t1 t2 p_1
        let f1 = fixed_point_class(&p(&[1]), &table);
        assert_eq!(f1.coeff(&p(&[1])), t1t2());
        assert_eq!(f1.num_terms(), 1);
        // (1,1) ↦ t2²(t1² p_1² − t1 p_2)
        let f11 = fixed_point_class(&p(&[1, 1]), &table);
        let t2sq = &v(Var::T2) * &v(Var::T2);
        let t1sq = &v(Var::T1) * &v(Var::T1);
        assert_eq!(f11.coeff(&p(&[1, 1])), &t2sq * &t1sq);
        assert_eq!(f11.coeff(&p(&[2])), -&(&t2sq * &v(Var::T1)));
    }

    #[test]
    fn norm_bridge_small() {
        // ⟨f_λ, f_λ⟩ = tangent weight product
        let table = JackTable::new();
        for n in 0..=3u32 {
            for lambda in Partition::enumerate(n) {
                let f = fixed_point_class(&lambda, &table);
                let got = geom_pairing(&f, &f);
                let want = tangent_weights(&lambda).to_ratfun();
                assert_eq!(got, want, "λ = {lambda}");
            }
        }
    }

    #[test]
    fn vacuum_matrix_elements() {
        let table = JackTable::new();
        // ⟨Γ|⟩, f_(1)⟩ = m·z
        let w = w_matrix_element(&Partition::empty(), &p(&[1]), &table);
        assert_eq!(w.len(), 1);
        assert_eq!(w.get(&1).unwrap(), &v(Var::M));
        // ⟨Γ f_(1), |⟩⟩ = (m+t1+t2)·z⁻¹
        let w = w_matrix_element(&p(&[1]), &Partition::empty(), &table);
        assert_eq!(w.len(), 1);
        let want = &(&v(Var::M) + &v(Var::T1)) + &v(Var::T2);
        assert_eq!(w.get(&-1).unwrap(), &want);
        // ⟨Γ|⟩, |⟩⟩ = 1·z⁰
        let w = w_matrix_element(&Partition::empty(), &Partition::empty(), &table);
        assert_eq!(w.len(), 1);
        assert_eq!(w.get(&0).unwrap(), &RatFun::one());
    }

    #[test]
    fn diagonal_matrix_element_is_euler_class() {
        let table = JackTable::new();
        let w = w_matrix_element(&p(&[1]), &p(&[1]), &table);
        assert_eq!(w.len(), 1);
        let want = (&(&v(Var::M) + &v(Var::T1)) * &(&v(Var::M) + &v(Var::T2))).clone();
        assert_eq!(w.get(&0).unwrap(), &want);
        // and agrees with the geometry route
        let e = euler_class(&ext_character_hooks(&p(&[1]), &p(&[1])), true)
            .unwrap()
            .to_ratfun();
        assert_eq!(w.get(&0).unwrap(), &e);
    }

    #[test]
    fn trace_first_coefficients() {
        let s = gamma_trace(1);
        assert_eq!(s.coeff(0), &RatFun::one());
        let want = (&(&v(Var::M) + &v(Var::T1)) * &(&v(Var::M) + &v(Var::T2)))
            .try_div(&t1t2())
            .unwrap();
        assert_eq!(s.coeff(1), &want);
    }

    #[test]
    fn trace_is_basis_independent_to_order_two() {
        let table = JackTable::new();
        let a = gamma_trace(2);
        let b = gamma_trace_fixed_point_basis(2, &table);
        for k in 0..=2 {
            assert_eq!(a.coeff(k), b.coeff(k), "q^{k}");
        }
    }
}
