//! Integer partitions and diagram combinatorics: arms, legs, transpose,
//! dominance order, enumeration, and the symmetrization constant z_λ.
//!
//! Boxes use the English/matrix convention: the square (i, j) lies in λ
//! iff j ≤ λ_i, with the row index i pairing with x2 and the column index
//! j with x1 in the monomial-ideal dictionary.

use std::fmt;

use crate::algebra::{rat_int, Rat};

/// Weakly decreasing sequence of positive integers; the empty sequence is
/// the empty partition ∅.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A square □ = (i, j), 1-based, not necessarily inside any diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Square {
    pub row: u32,
    pub col: u32,
}

impl Square {
    pub fn new(row: u32, col: u32) -> Square {
        assert!(row >= 1 && col >= 1, "squares are 1-based");
        Square { row, col }
    }
}

impl Partition {
    /// Parts must be weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |λ| = Σ λ_i.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// ℓ(λ), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ_i with zero-extension: rows beyond ℓ(λ) have length 0. 1-based.
    pub fn row(&self, i: u32) -> u32 {
        assert!(i >= 1);
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// λ′_j = #{i : λ_i ≥ j} with zero-extension. 1-based.
    pub fn col(&self, j: u32) -> u32 {
        assert!(j >= 1);
        self.parts.iter().take_while(|&&p| p >= j).count() as u32
    }

    pub fn contains(&self, sq: Square) -> bool {
        sq.col <= self.row(sq.row)
    }

    /// Arm length a_λ(□) = λ_i − j; may be negative for squares outside λ.
    pub fn arm(&self, sq: Square) -> i64 {
        self.row(sq.row) as i64 - sq.col as i64
    }

    /// Leg length l_λ(□) = λ′_j − i; may be negative for squares outside λ.
    pub fn leg(&self, sq: Square) -> i64 {
        self.col(sq.col) as i64 - sq.row as i64
    }

    /// The transposed diagram λ′.
    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=cols).map(|j| self.col(j)).collect(),
        }
    }

    /// Dominance: self ⊴ other (requires equal size; false otherwise).
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for k in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(k).copied().unwrap_or(0) as u64;
            b += other.parts.get(k).copied().unwrap_or(0) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Squares of the diagram in row-major order.
    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| {
            (1..=p).map(move |j| Square {
                row: i as u32 + 1,
                col: j,
            })
        })
    }

    /// Multiplicity of the part value k.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// z_λ = Π_k k^{m_k} m_k!, the symmetrization constant of the
    /// power-sum pairing.
    pub fn z_factor(&self) -> Rat {
        let mut z = rat_int(1);
        let mut k = 0u32;
        let mut mult = 0u64;
        for &p in self.parts.iter().chain(std::iter::once(&0)) {
            if p == k {
                mult += 1;
            } else {
                if k > 0 {
                    for _ in 0..mult {
                        z *= rat_int(k as i64);
                    }
                    for f in 1..=mult {
                        z *= rat_int(f as i64);
                    }
                }
                k = p;
                mult = 1;
            }
        }
        z
    }

    /// Sorted merge of the parts of two partitions (so p_λ·p_μ = p_{λ∪μ}).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts: Vec<u32> = self
            .parts
            .iter()
            .chain(other.parts.iter())
            .copied()
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Appends one part of value k and re-sorts.
    pub fn with_part(&self, k: u32) -> Partition {
        assert!(k > 0);
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < k).unwrap_or(parts.len());
        parts.insert(pos, k);
        Partition { parts }
    }

    /// Removes one part of value k; None if absent.
    pub fn without_part(&self, k: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// All partitions of n in reverse lexicographic order:
    /// (n) first, (1,…,1) last.
    pub fn enumerate(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n.max(1), &mut current, &mut out);
        if n == 0 {
            return vec![Partition::empty()];
        }
        out
    }

    /// All partitions of sizes 0..=n, ordered by size then reverse lex.
    pub fn enumerate_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::enumerate).collect()
    }

    /// Serialized form: comma-separated parts ("3,1"); ∅ serializes as "0".
    pub fn serialize(&self) -> String {
        if self.parts.is_empty() {
            "0".to_string()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses "3,1"; both "" and "0" give ∅.
    pub fn parse(s: &str) -> Result<Partition, String> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| format!("invalid partition part '{tok}'"))?;
            if p == 0 {
                return Err(format!("partition parts must be positive, got '{tok}'"));
            }
            parts.push(p);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts must be weakly decreasing: '{s}'"));
        }
        Ok(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Partition {
        Partition::new(parts.to_vec())
    }
}
