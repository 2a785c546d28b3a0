//! Transition between the power-sum and monomial bases of symmetric
//! functions, degree by degree.
//!
//! The expansion p_μ = Σ_λ R_{μλ} m_λ has the combinatorial description
//! R_{μλ} = number of maps from the parts of μ onto the positions of λ
//! whose fibers sum to the targeted parts. The matrix is computed by a
//! capacity-filling count and inverted once per degree.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::algebra::{rat_int, Rat, RatFun};
use crate::partitions::Partition;

use super::SymFunc;

pub(crate) struct TransitionTable {
    pub parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// p_μ = Σ_λ p_in_m[μ][λ]·m_λ
    p_in_m: Vec<Vec<Rat>>,
    /// m_λ = Σ_μ m_in_p[λ][μ]·p_μ
    m_in_p: Vec<Vec<Rat>>,
}

impl TransitionTable {
    fn build(n: u32) -> TransitionTable {
        let parts = Partition::enumerate(n);
        let index: HashMap<Partition, usize> = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let dim = parts.len();
        let mut p_in_m = vec![vec![Rat::zero(); dim]; dim];
        for (i, mu) in parts.iter().enumerate() {
            for (j, lam) in parts.iter().enumerate() {
                p_in_m[i][j] = rat_int(count_fillings(mu, lam) as i64);
            }
        }
        let m_in_p = invert_rational_matrix(&p_in_m);
        TransitionTable {
            parts,
            index,
            p_in_m,
            m_in_p,
        }
    }

    pub fn index_of(&self, lambda: &Partition) -> usize {
        self.index[lambda]
    }
}

/// Number of maps g from the parts of μ to the positions of λ such that
/// the parts mapped to position j sum to λ_j (positions with equal values
/// are distinct).
fn count_fillings(mu: &Partition, lam: &Partition) -> u64 {
    fn rec(
        parts: &[u32],
        caps: &mut Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), u64>,
        depth: usize,
    ) -> u64 {
        if depth == parts.len() {
            return if caps.iter().all(|&c| c == 0) { 1 } else { 0 };
        }
        let mut key_caps = caps.clone();
        key_caps.sort_unstable();
        let key = (depth, key_caps);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let p = parts[depth];
        let mut total = 0u64;
        // Group positions by remaining capacity: positions with equal
        // capacity contribute symmetric futures.
        let mut seen: Vec<u32> = Vec::new();
        for idx in 0..caps.len() {
            let c = caps[idx];
            if c < p || seen.contains(&c) {
                continue;
            }
            seen.push(c);
            let mult = caps.iter().filter(|&&x| x == c).count() as u64;
            caps[idx] -= p;
            total += mult * rec(parts, caps, memo, depth + 1);
            caps[idx] += p;
        }
        memo.insert(key, total);
        total
    }
    if mu.size() != lam.size() {
        return 0;
    }
    let mut caps: Vec<u32> = lam.parts().to_vec();
    let mut memo = HashMap::new();
    rec(mu.parts(), &mut caps, &mut memo, 0)
}

/// Dense Gauss-Jordan inverse over exact rationals.
fn invert_rational_matrix(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = a.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { rat_int(1) } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !work[r][col].is_zero())
            .expect("transition matrix is invertible");
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p = work[col][col].clone();
        for j in 0..n {
            work[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for j in 0..n {
                let w = &work[col][j] * &f;
                work[r][j] -= w;
                let v = &inv[col][j] * &f;
                inv[r][j] -= v;
            }
        }
    }
    inv
}

static TABLES: OnceLock<RwLock<HashMap<u32, Arc<TransitionTable>>>> = OnceLock::new();

pub(crate) fn transition_table(n: u32) -> Arc<TransitionTable> {
    let lock = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = lock.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let table = Arc::new(TransitionTable::build(n));
    let mut w = lock.write().unwrap();
    Arc::clone(w.entry(n).or_insert(table))
}

/// The monomial symmetric function m_λ expanded in the power-sum basis,
/// with exact rational coefficients.
pub fn monomial_sym(lambda: &Partition) -> SymFunc {
    let table = transition_table(lambda.size());
    let i = table.index_of(lambda);
    let mut f = SymFunc::zero();
    for (j, mu) in table.parts.iter().enumerate() {
        let c = &table.m_in_p[i][j];
        if !c.is_zero() {
            f.add_term(mu.clone(), RatFun::from_rat(c.clone()));
        }
    }
    f
}

/// Re-expands a homogeneous-or-mixed symmetric function in the monomial
/// basis: returns λ ↦ coefficient of m_λ.
pub fn to_monomial_basis(f: &SymFunc) -> Vec<(Partition, RatFun)> {
    let mut out: Vec<(Partition, RatFun)> = Vec::new();
    let max = f.max_degree();
    for d in 0..=max {
        let slice = f.degree_slice(d);
        if slice.is_zero() {
            continue;
        }
        let table = transition_table(d);
        for (j, lam) in table.parts.iter().enumerate() {
            let mut acc = RatFun::zero();
            for (mu, c) in slice.terms() {
                let i = table.index_of(mu);
                let r = &table.p_in_m[i][j];
                if !r.is_zero() {
                    acc = &acc + &c.scale_rat(r);
                }
            }
            if !acc.is_zero() {
                out.push((lam.clone(), acc));
            }
        }
    }
    out
}
