//! Minimal residue systems (Apéry sets) `m_0, …, m_{a₁-1}` with respect to
//! the smallest generator.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::poly::SparsePoly;
use crate::{Error, Result};

/// Coprime semigroup generators `a₁ < a₂ < … < a_k`, `k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generators {
    values: Vec<u64>,
}

impl Generators {
    /// Sorts and deduplicates; rejects zeros, fewer than two distinct
    /// values, and non-coprime sets.
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut values: Vec<u64> = values.into_iter().collect();
        if values.contains(&0) {
            return Err(Error::InvalidGenerators("generators must be positive".into()));
        }
        values.sort_unstable();
        values.dedup();
        if values.len() < 2 {
            return Err(Error::InvalidGenerators("need at least two distinct generators".into()));
        }
        let g = values.iter().fold(0u64, |g, &v| g.gcd(&v));
        if g != 1 {
            return Err(Error::InvalidGenerators(format!("gcd of generators is {g}, expected 1")));
        }
        Ok(Generators { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn smallest(&self) -> u64 {
        self.values[0]
    }

    pub fn largest(&self) -> u64 {
        *self.values.last().expect("k >= 2")
    }

    /// The progression these generators form, if they are `a, a+d, …`
    /// with `2 <= k <= a`.
    pub fn as_progression(&self) -> Option<ArithProgression> {
        let a = self.values[0];
        let d = self.values[1] - a;
        let is_ap = self.values.windows(2).all(|w| w[1] - w[0] == d);
        if !is_ap {
            return None;
        }
        ArithProgression::new(a, d, self.values.len() as u64).ok()
    }
}

impl fmt::Display for Generators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Generators `a, a+d, …, a+(k-1)d` with `gcd(a, d) = 1` and `2 <= k <= a`,
/// along with the decomposition `a - 1 = q(k-1) + r`, `0 <= r < k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArithProgression {
    a: u64,
    d: u64,
    k: u64,
    q: u64,
    r: u64,
}

impl ArithProgression {
    pub fn new(a: u64, d: u64, k: u64) -> Result<Self> {
        if a == 0 || d == 0 {
            return Err(Error::InvalidProgression("a and d must be positive".into()));
        }
        if a.gcd(&d) != 1 {
            return Err(Error::InvalidProgression(format!("gcd({a}, {d}) != 1")));
        }
        if k < 2 || k > a {
            return Err(Error::InvalidProgression(format!("need 2 <= k <= a, got k = {k}, a = {a}")));
        }
        let (q, r) = (a - 1).div_rem(&(k - 1));
        debug_assert!(q >= 1);
        Ok(ArithProgression { a, d, k, q, r })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `⌊(a-1)/(k-1)⌋`
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(a-1) mod (k-1)`
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The largest generator `a + (k-1)d`.
    pub fn largest(&self) -> u64 {
        self.a + (self.k - 1) * self.d
    }

    pub fn generators(&self) -> Generators {
        Generators::new((0..self.k).map(|j| self.a + j * self.d)).expect("validated progression")
    }
}

/// `m[i]` is the least representable integer `≡ i (mod a₁)`; `m[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    m: Vec<u64>,
}

impl AperyTable {
    /// Wraps an externally supplied table after checking the residue
    /// structure (`m[0] = 0`, `m[i] ≡ i`). Minimality is not checked.
    pub fn from_residues(m: Vec<u64>) -> Result<Self> {
        let a = m.len() as u64;
        if a == 0 || m[0] != 0 {
            return Err(Error::InvalidGenerators("table must start with m_0 = 0".into()));
        }
        if let Some((i, v)) = m.iter().enumerate().find(|(i, v)| **v % a != *i as u64) {
            return Err(Error::InvalidGenerators(format!("m_{i} = {v} is not ≡ {i} mod {a}")));
        }
        Ok(AperyTable { m })
    }

    /// `a₁`
    pub fn modulus(&self) -> u64 {
        self.m.len() as u64
    }

    /// `m_0, …, m_{a₁-1}`, indexed by residue.
    pub fn residues(&self) -> &[u64] {
        &self.m
    }

    pub fn max(&self) -> u64 {
        self.m.iter().copied().max().unwrap_or(0)
    }

    /// `Σ_{i ≥ 1} m_i^p` as an exact integer.
    pub fn moment(&self, p: usize) -> BigInt {
        self.m[1..].iter().map(|&v| num_traits::pow(BigInt::from(v), p)).sum()
    }
}

/// Apéry set of arbitrary generators: shortest paths from residue 0 over
/// the `a₁` residue classes, with an arc `i → i + a_j` of weight `a_j`.
pub fn apery_general(gens: &Generators) -> AperyTable {
    let a = gens.smallest() as usize;
    let steps: Vec<u64> = gens.values()[1..]
        .iter()
        .copied()
        .filter(|v| v % a as u64 != 0)
        .collect();
    let mut dist = vec![u64::MAX; a];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((w, node))) = heap.pop() {
        if w > dist[node] {
            continue;
        }
        for &s in &steps {
            let next = (node + (s % a as u64) as usize) % a;
            let nw = w + s;
            if nw < dist[next] {
                dist[next] = nw;
                heap.push(Reverse((nw, next)));
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != u64::MAX), "coprime generators reach every class");
    AperyTable { m: dist }
}

/// Apéry set of an arithmetic progression, filled in row by row: row `s`
/// (`1 <= s <= q`) holds `s·a + jd` for `(s-1)(k-1) < j <= s(k-1)`, and a
/// final partial row `(q+1)a + jd` for `q(k-1) < j <= q(k-1) + r`.
pub fn apery_arith(ap: &ArithProgression) -> AperyTable {
    let (a, d, k1) = (ap.a(), ap.d(), ap.k() - 1);
    let mut m = vec![0u64; a as usize];
    let mut place = |row: u64, j: u64| {
        let v = row * a + j * d;
        m[(v % a) as usize] = v;
    };
    for s in 1..=ap.q() {
        for j in (s - 1) * k1 + 1..=s * k1 {
            place(s, j);
        }
    }
    for j in ap.q() * k1 + 1..=ap.q() * k1 + ap.r() {
        place(ap.q() + 1, j);
    }
    AperyTable { m }
}

/// `P(x) = Σ_i x^{m_i}`, including the constant term from `m_0 = 0`.
pub fn apery_polynomial(t: &AperyTable) -> SparsePoly {
    let mut p = SparsePoly::new();
    for &v in t.residues() {
        p.add_term(v, BigInt::from(1));
    }
    p
}
