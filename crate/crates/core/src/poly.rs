//! Univariate polynomials: dense over Q (ring arithmetic, inversion,
//! cyclotomic construction) and sparse over Z (exponent-indexed sums such
//! as `sum_i x^{m_i}`).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{rat, BigInt, BigRational};
use crate::numberfield::RingElement;

/// Dense polynomial over Q, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigRational::zero(); n + 1];
        c[0] = -BigRational::one();
        c[n] = BigRational::one();
        QPoly::new(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and
    /// `s * self = g (mod modulus)`.
    pub fn gcd_with_cofactor(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (modulus.clone(), self.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lead = r0.lead().cloned().unwrap_or_else(BigRational::one).recip();
        (r0.scale(&lead), s0.scale(&lead))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = crate::exact::fmt_rational(c);
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "({cs})*x")?,
                _ => write!(f, "({cs})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_e` for
/// every proper divisor `e` of `n`.
pub fn cyclotomic(n: usize) -> QPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = QPoly::x_pow_minus_one(n);
    for e in (1..n).filter(|e| n.is_multiple_of(*e)) {
        let (q, r) = p.div_rem(&cyclotomic(e));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

/// Sparse polynomial over Z keyed by exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<u64, BigInt>,
}

impl SparsePoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, exp: u64, coeff: BigInt) {
        let e = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Adds `x^start + x^{start+step} + ... ` with `count` terms.
    pub fn add_geometric(&mut self, start: u64, step: u64, count: u64) {
        for t in 0..count {
            self.add_term(start + t * step, BigInt::one());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// `h`-th formal derivative.
    pub fn derivative(&self, h: u32) -> SparsePoly {
        let mut out = SparsePoly::new();
        for (&e, c) in &self.terms {
            if e < h as u64 {
                continue;
            }
            let falling: BigInt = (0..h as u64).map(|t| BigInt::from(e - t)).product();
            out.add_term(e - h as u64, c * falling);
        }
        out
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&e, c)| rat(c.clone()) * num_traits::pow(x.clone(), e as usize))
            .sum()
    }

    /// Evaluates at a ring element, walking exponents upward so each power
    /// is one multiplication (by a cached step power) away from the last.
    pub fn eval(&self, x: &RingElement) -> RingElement {
        let mut acc = x.ring().zero();
        let mut power = x.ring().one();
        let mut at = 0u64;
        for (&e, c) in &self.terms {
            power = &power * &x.pow(e - at);
            at = e;
            acc = &acc + &power.scale(&rat(c.clone()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), qp(&[-1, 1]));
        assert_eq!(cyclotomic(2), qp(&[1, 1]));
        assert_eq!(cyclotomic(5), qp(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), qp(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), qp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = qp(&[3, 0, 2, 5, 1]);
        let b = qp(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_detects_common_factor() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let f = qp(&[-2, 1, 1]);
        let g = qp(&[3, -4, 1]);
        let (d, _) = g.gcd_with_cofactor(&f);
        assert_eq!(d, qp(&[-1, 1]));
    }

    #[test]
    fn cofactor_is_inverse_for_coprime() {
        let f = qp(&[-2, 0, 0, 1]);
        let g = qp(&[1, 1]);
        let (d, s) = g.gcd_with_cofactor(&f);
        assert_eq!(d, QPoly::one());
        let (_, r) = s.mul(&g).div_rem(&f);
        assert_eq!(r, QPoly::one());
    }

    #[test]
    fn sparse_derivative() {
        let mut p = SparsePoly::new();
        p.add_term(0, BigInt::from(1));
        p.add_term(3, BigInt::from(1));
        let d2 = p.derivative(2);
        assert_eq!(d2.terms().collect::<Vec<_>>(), vec![(1, &BigInt::from(6))]);
        assert_eq!(p.eval_rational(&ratio(1, 2)), ratio(9, 8));
        assert!(p.derivative(4).is_empty());
    }
}
