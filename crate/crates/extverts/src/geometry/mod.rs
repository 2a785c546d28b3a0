//! Equivariant localization data for the Hilbert scheme of points on C²:
//! ideal-sheaf characters, the Ext-bundle character by two independent
//! routes, Euler classes as products of torus weights, tangent weights,
//! and the adjoint-matter partition function.

mod nekrasov;

pub use nekrasov::{nekrasov_product, nekrasov_sum};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use thiserror::Error;

use crate::algebra::{rat_int, AlgebraError, MPoly, Mono, RatFun, Var};
use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("ratio is not a Laurent polynomial; remainder {remainder}")]
    NotLaurent { remainder: MPoly },
    #[error("not a character: {0}")]
    NotCharacter(String),
    #[error("negative coefficient in character; Euler class undefined")]
    NegativeCoefficient,
    #[error("weight product contains a zero factor and cannot be inverted")]
    ZeroWeight,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Laurent polynomial in z1, z2 with integer coefficients: the trace of
/// (z1, z2) on a T-module, as an element of the representation ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Character {
    terms: BTreeMap<(i32, i32), i64>,
}

impl Character {
    pub fn zero() -> Character {
        Character::default()
    }

    pub fn monomial(e1: i32, e2: i32, mult: i64) -> Character {
        let mut c = Character::zero();
        c.add_term(e1, e2, mult);
        c
    }

    pub fn add_term(&mut self, e1: i32, e2: i32, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry((e1, e2)).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Total coefficient mass Σ multiplicities (the virtual rank for
    /// effective characters).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&v| v >= 0)
    }

    /// The dual module: z_i ↦ z_i⁻¹.
    pub fn dual(&self) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &v)| ((-a, -b), v))
                .collect(),
        }
    }

    /// Multiplies by the monomial z1^a z2^b.
    pub fn shift(&self, a: i32, b: i32) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(&(e1, e2), &v)| ((e1 + a, e2 + b), v))
                .collect(),
        }
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::zero();
        for (&(e1, e2), &v) in &self.terms {
            let mono = Mono::var(Var::Z1, e1).mul(&Mono::var(Var::Z2, e2));
            p.add_term(mono, rat_int(v));
        }
        p
    }

    /// Reads a Laurent polynomial in z1, z2 back as a character; errors
    /// on stray variables or non-integer coefficients.
    pub fn from_mpoly(p: &MPoly) -> Result<Character, GeometryError> {
        let mut c = Character::zero();
        for (mono, coeff) in p.terms() {
            for v in [Var::T1, Var::T2, Var::M, Var::Theta, Var::Q] {
                if mono.exp(v) != 0 {
                    return Err(GeometryError::NotCharacter(format!(
                        "unexpected variable {}",
                        v.name()
                    )));
                }
            }
            if !coeff.is_integer() {
                return Err(GeometryError::NotCharacter(format!(
                    "non-integer coefficient {coeff}"
                )));
            }
            let mult: i64 = coeff
                .numer()
                .try_into()
                .map_err(|_| GeometryError::NotCharacter("coefficient overflow".into()))?;
            c.add_term(mono.exp(Var::Z1), mono.exp(Var::Z2), mult);
        }
        Ok(c)
    }

    /// JSON encoding: `[{"e1": .., "e2": .., "mult": ..}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(e1, e2), &mult)| serde_json::json!({"e1": e1, "e2": e2, "mult": mult}))
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for ((e1, e2), v) in rhs.terms() {
            out.add_term(e1, e2, v);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for ((e1, e2), v) in rhs.terms() {
            out.add_term(e1, e2, -v);
        }
        out
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_mpoly())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Extracts the Laurent polynomial from a rational function whose
/// denominator divides its numerator; the error carries the remainder,
/// which signals a convention bug upstream.
pub fn laurent_extract(r: &RatFun) -> Result<Character, GeometryError> {
    let (q, rem) = r.num().div_rem(r.den());
    if !rem.is_zero() {
        return Err(GeometryError::NotLaurent { remainder: rem });
    }
    Character::from_mpoly(&q)
}

/// The character of the ideal sheaf I_μ inside ℂ[x1, x2]:
/// [I_μ] = Σ_{i≥1} z1^{−μ_i} z2^{1−i} / (1 − z1⁻¹), with the geometric
/// tail past ℓ(μ) summed in closed form.
pub fn ideal_character(mu: &Partition) -> RatFun {
    let ell = mu.len() as i32;
    let one = MPoly::one();
    let z1_inv = MPoly::var_pow(Var::Z1, -1);
    let z2_inv = MPoly::var_pow(Var::Z2, -1);
    let d1 = &one - &z1_inv; // 1 − z1⁻¹
    let d2 = &one - &z2_inv; // 1 − z2⁻¹

    // finite rows: Σ_{i=1}^{ℓ} z1^{−μ_i} z2^{1−i}
    let mut rows = MPoly::zero();
    for (i, &p) in mu.parts().iter().enumerate() {
        let mono = Mono::var(Var::Z1, -(p as i32)).mul(&Mono::var(Var::Z2, -(i as i32)));
        rows.add_term(mono, rat_int(1));
    }
    // tail: Σ_{i>ℓ} z2^{1−i} = z2^{−ℓ} / (1 − z2⁻¹)
    let tail_num = MPoly::var_pow(Var::Z2, -ell);
    // [I_μ] = (rows·(1−z2⁻¹) + z2^{−ℓ}) / ((1−z1⁻¹)(1−z2⁻¹))
    let num = &(&rows * &d2) + &tail_num;
    let den = &d1 * &d2;
    RatFun::new(num, den).expect("denominator is nonzero")
}

/// [𝒪] = [I_∅], the structure-sheaf character.
pub fn structure_sheaf_character() -> RatFun {
    ideal_character(&Partition::empty())
}

/// Ext-bundle character via the ideal-sheaf ratio:
/// [𝖤] = ([𝒪][𝒪]^∨ − [I_μ][I_λ]^∨) / [𝒪]^∨, extracted as a Laurent
/// polynomial.
pub fn ext_character_ratfun(
    lambda: &Partition,
    mu: &Partition,
) -> Result<Character, GeometryError> {
    let o = structure_sheaf_character();
    let o_dual = o.dual_z();
    let i_mu = ideal_character(mu);
    let i_lambda_dual = ideal_character(lambda).dual_z();
    let num = &(&o * &o_dual) - &(&i_mu * &i_lambda_dual);
    let e = num.try_div(&o_dual)?;
    laurent_extract(&e)
}

/// Ext-bundle character via the hook sums:
/// Σ_{□∈μ} z1^{−a_μ(□)} z2^{l_λ(□)+1} + Σ_{□∈λ} z1^{a_λ(□)+1} z2^{−l_μ(□)}.
pub fn ext_character_hooks(lambda: &Partition, mu: &Partition) -> Character {
    let mut c = Character::zero();
    for sq in mu.squares() {
        c.add_term(
            -(mu.arm(sq) as i32),
            (lambda.leg(sq) + 1) as i32,
            1,
        );
    }
    for sq in lambda.squares() {
        c.add_term(
            (lambda.arm(sq) + 1) as i32,
            -(mu.leg(sq) as i32),
            1,
        );
    }
    c
}

/// Serre dual at character level: z_i ↦ z_i⁻¹ followed by multiplication
/// by z1 z2.
pub fn serre_dual(c: &Character) -> Character {
    c.dual().shift(1, 1)
}

/// Linear torus weight c_m·m + c_t1·t1 + c_t2·t2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct LinearForm {
    pub c_m: i64,
    pub c_t1: i64,
    pub c_t2: i64,
}

impl LinearForm {
    pub fn is_zero(&self) -> bool {
        self.c_m == 0 && self.c_t1 == 0 && self.c_t2 == 0
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(Mono::var(Var::M, 1), rat_int(self.c_m));
        p.add_term(Mono::var(Var::T1, 1), rat_int(self.c_t1));
        p.add_term(Mono::var(Var::T2, 1), rat_int(self.c_t2));
        p
    }

    /// Writes the form as scalar·primitive with coprime integer
    /// coefficients and positive first nonzero coefficient.
    pub fn normalized(&self) -> (LinearForm, crate::algebra::Rat) {
        assert!(!self.is_zero());
        let gcd = gcd3(self.c_m.abs(), self.c_t1.abs(), self.c_t2.abs());
        let first = [self.c_m, self.c_t1, self.c_t2]
            .into_iter()
            .find(|&c| c != 0)
            .unwrap();
        let scale = if first < 0 { -(gcd) } else { gcd };
        (
            LinearForm {
                c_m: self.c_m / scale,
                c_t1: self.c_t1 / scale,
                c_t2: self.c_t2 / scale,
            },
            rat_int(scale),
        )
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    gcd(gcd(a, b), c).max(1)
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

/// Product of linear torus weights; the Euler class of an effective
/// character. A zero factor is representable but poisons inversion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightProduct {
    factors: Vec<LinearForm>,
}

impl WeightProduct {
    /// The empty product, 1.
    pub fn one() -> WeightProduct {
        WeightProduct {
            factors: Vec::new(),
        }
    }

    pub fn from_factors(mut factors: Vec<LinearForm>) -> WeightProduct {
        factors.sort_unstable();
        WeightProduct { factors }
    }

    pub fn factors(&self) -> &[LinearForm] {
        &self.factors
    }

    /// Degree of the product = rank of the bundle.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn has_zero_factor(&self) -> bool {
        self.factors.iter().any(|f| f.is_zero())
    }

    /// Expands the product.
    pub fn value(&self) -> MPoly {
        let mut acc = MPoly::one();
        for f in &self.factors {
            acc = &acc * &f.to_mpoly();
        }
        acc
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::from_mpoly(self.value())
    }

    /// 1 / product; refuses zero factors with a diagnostic.
    pub fn inverse(&self) -> Result<RatFun, GeometryError> {
        if self.has_zero_factor() {
            return Err(GeometryError::ZeroWeight);
        }
        Ok(RatFun::new(MPoly::one(), self.value())?)
    }

    /// JSON encoding: `[{"m": .., "t1": .., "t2": ..}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|f| serde_json::json!({"m": f.c_m, "t1": f.c_t1, "t2": f.c_t2}))
            .collect();
        serde_json::Value::Array(factors)
    }
}

impl fmt::Display for WeightProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, form) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({form})")?;
        }
        Ok(())
    }
}

/// Euler class of an effective character: each term z1^a z2^b contributes
/// (m·[mass_on] + a·t1 + b·t2) with the term's multiplicity.
pub fn euler_class(c: &Character, mass_on: bool) -> Result<WeightProduct, GeometryError> {
    if !c.all_nonnegative() {
        return Err(GeometryError::NegativeCoefficient);
    }
    let mut factors = Vec::new();
    for ((e1, e2), mult) in c.terms() {
        let form = LinearForm {
            c_m: i64::from(mass_on),
            c_t1: e1 as i64,
            c_t2: e2 as i64,
        };
        for _ in 0..mult {
            factors.push(form);
        }
    }
    Ok(WeightProduct::from_factors(factors))
}

/// Torus weights of the tangent space at the monomial ideal I_λ: the
/// mass-off Euler class of the diagonal Ext character. All 2|λ| factors
/// are nonzero; a zero factor is a convention violation and aborts.
pub fn tangent_weights(lambda: &Partition) -> WeightProduct {
    let c = ext_character_hooks(lambda, lambda);
    let w = euler_class(&c, false).expect("diagonal character is effective");
    assert!(
        !w.has_zero_factor(),
        "zero tangent weight at λ = {lambda}: convention violation"
    );
    w
}

impl RatFun {
    /// Applies z_i ↦ z_i⁻¹ to numerator and denominator.
    pub fn dual_z(&self) -> RatFun {
        RatFun::new(self.num().dual_z(), self.den().dual_z()).expect("dual keeps den nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn laurent_extract_examples() {
        // (z1 − z1²)/(1 − z1) → z1
        let z1 = RatFun::var(Var::Z1);
        let f = (&z1 - &(&z1 * &z1))
            .try_div(&(&RatFun::one() - &z1))
            .unwrap();
        assert_eq!(laurent_extract(&f).unwrap(), Character::monomial(1, 0, 1));
        // 0/(1 − z2⁻¹) → 0
        let z2inv = RatFun::from_mpoly(MPoly::var_pow(Var::Z2, -1));
        let zero = RatFun::zero()
            .try_div(&(&RatFun::one() - &z2inv))
            .unwrap();
        assert_eq!(laurent_extract(&zero).unwrap(), Character::zero());
        // non-divisible ratio carries a remainder
        let bad = RatFun::new(
            &MPoly::var(Var::Z1) + &MPoly::one(),
            &MPoly::var(Var::Z1) - &MPoly::one(),
        )
        .unwrap();
        assert!(matches!(
            laurent_extract(&bad),
            Err(GeometryError::NotLaurent { .. })
        ));
    }

    #[test]
    fn structure_sheaf_closed_form() {
        // [𝒪] = 1/((1−z1⁻¹)(1−z2⁻¹))
        let one = RatFun::one();
        let z1_inv = RatFun::from_mpoly(MPoly::var_pow(Var::Z1, -1));
        let z2_inv = RatFun::from_mpoly(MPoly::var_pow(Var::Z2, -1));
        let want = one
            .try_div(&(&(&RatFun::one() - &z1_inv) * &(&RatFun::one() - &z2_inv)))
            .unwrap();
        assert_eq!(structure_sheaf_character(), want);
    }

    #[test]
    fn ideal_character_colength() {
        // [𝒪] − [I_μ] is the colength-many sum of box weights.
        let o = structure_sheaf_character();
        // μ = (1): exactly the single monomial 1 removed
        let diff = &o - &ideal_character(&p(&[1]));
        assert_eq!(
            laurent_extract(&diff).unwrap(),
            Character::monomial(0, 0, 1)
        );
        // μ = (2,1): three box weights z1^{1−j} z2^{1−i}, i.e. 1, z1⁻¹, z2⁻¹
        let diff = &o - &ideal_character(&p(&[2, 1]));
        let got = laurent_extract(&diff).unwrap();
        let mut want = Character::monomial(0, 0, 1);
        want.add_term(-1, 0, 1);
        want.add_term(0, -1, 1);
        assert_eq!(got, want);
        assert_eq!(got.mass(), 3);
    }

    #[test]
    fn ext_character_hand_values() {
        let empty = Partition::empty();
        assert_eq!(ext_character_hooks(&empty, &empty), Character::zero());
        assert_eq!(ext_character_ratfun(&empty, &empty).unwrap(), Character::zero());

        // λ=(1), μ=(1) → z1 + z2
        let mut want = Character::monomial(1, 0, 1);
        want.add_term(0, 1, 1);
        assert_eq!(ext_character_hooks(&p(&[1]), &p(&[1])), want);
        assert_eq!(ext_character_ratfun(&p(&[1]), &p(&[1])).unwrap(), want);

        // λ=(1), μ=∅ → z1 z2
        let want = Character::monomial(1, 1, 1);
        assert_eq!(ext_character_hooks(&p(&[1]), &empty), want);
        assert_eq!(ext_character_ratfun(&p(&[1]), &empty).unwrap(), want);

        // λ=∅, μ=(1) → 1 (the zero weight)
        let want = Character::monomial(0, 0, 1);
        assert_eq!(ext_character_hooks(&empty, &p(&[1])), want);
        assert_eq!(ext_character_ratfun(&empty, &p(&[1])).unwrap(), want);

        // λ=μ=(2) → z1⁻¹z2 + z2 + z1² + z1
        let mut want = Character::monomial(-1, 1, 1);
        want.add_term(0, 1, 1);
        want.add_term(2, 0, 1);
        want.add_term(1, 0, 1);
        assert_eq!(ext_character_hooks(&p(&[2]), &p(&[2])), want);
        assert_eq!(ext_character_ratfun(&p(&[2]), &p(&[2])).unwrap(), want);
    }

    #[test]
    fn serre_dual_examples() {
        let empty = Partition::empty();
        // serre_dual(ext(∅,(1))) = ext((1),∅)
        let a = ext_character_hooks(&empty, &p(&[1]));
        let b = ext_character_hooks(&p(&[1]), &empty);
        assert_eq!(serre_dual(&a), b);
        // z1 + z2 is self-dual
        let mut c = Character::monomial(1, 0, 1);
        c.add_term(0, 1, 1);
        assert_eq!(serre_dual(&c), c);
        assert_eq!(serre_dual(&Character::zero()), Character::zero());
    }

    #[test]
    fn euler_class_examples() {
        // z1 + z2 with mass → (m + t1)(m + t2)
        let mut c = Character::monomial(1, 0, 1);
        c.add_term(0, 1, 1);
        let w = euler_class(&c, true).unwrap();
        assert_eq!(w.rank(), 2);
        let m = MPoly::var(Var::M);
        let t1 = MPoly::var(Var::T1);
        let t2 = MPoly::var(Var::T2);
        assert_eq!(w.value(), &(&m + &t1) * &(&m + &t2));

        // the zero weight with mass on → m
        let w = euler_class(&Character::monomial(0, 0, 1), true).unwrap();
        assert_eq!(w.value(), m);

        // empty product = 1
        let w = euler_class(&Character::zero(), true).unwrap();
        assert!(w.value().is_one());

        // zero weight with mass off is flagged and poisons inversion
        let w = euler_class(&Character::monomial(0, 0, 1), false).unwrap();
        assert!(w.has_zero_factor());
        assert!(matches!(w.inverse(), Err(GeometryError::ZeroWeight)));
    }

    #[test]
    fn tangent_weights_examples() {
        let t1 = MPoly::var(Var::T1);
        let t2 = MPoly::var(Var::T2);
        assert_eq!(tangent_weights(&p(&[1])).value(), &t1 * &t2);
        assert!(tangent_weights(&Partition::empty()).value().is_one());
        // λ=(2) → (2t1)(t2−t1)(t1)(t2)
        let two_t1 = t1.scale(&rat_int(2));
        let want = &(&(&two_t1 * &(&t2 - &t1)) * &t1) * &t2;
        assert_eq!(tangent_weights(&p(&[2])).value(), want);
    }

    #[test]
    fn extraction_round_trips() {
        // re-multiplication by the denominator reproduces the numerator
        for l in Partition::enumerate_up_to(3) {
            for u in Partition::enumerate_up_to(3) {
                let o_dual = structure_sheaf_character().dual_z();
                let num = &(&structure_sheaf_character() * &o_dual)
                    - &(&ideal_character(&u) * &ideal_character(&l).dual_z());
                let e = num.try_div(&o_dual).unwrap();
                let c = laurent_extract(&e).unwrap();
                let back = &RatFun::from_mpoly(c.to_mpoly()) * &o_dual;
                assert_eq!(back, num, "λ={l} μ={u}");
            }
        }
    }
}
