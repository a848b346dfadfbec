//! Brute-force ground truth: sieve the gap set and sum over it directly.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::apery::Generators;
use crate::exact::rat;
use crate::numberfield::RingElement;

/// The gaps of the semigroup, found by sieving up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSet {
    gaps: Vec<u64>,
    bound: u64,
}

impl GapSet {
    /// Sorted gaps.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Sieve horizon; every integer above the largest gap and up to here
    /// was checked representable.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Number of gaps (the genus).
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Largest gap, `-1` when there are none.
    pub fn frobenius(&self) -> i64 {
        self.gaps.last().map_or(-1, |&g| g as i64)
    }
}

/// Representability flags for `0..=limit`.
pub fn representable(gens: &Generators, limit: u64) -> Vec<bool> {
    let mut rep = vec![false; limit as usize + 1];
    rep[0] = true;
    for n in 1..=limit as usize {
        rep[n] = gens
            .values()
            .iter()
            .any(|&g| n >= g as usize && rep[n - g as usize]);
    }
    rep
}

/// Sieves until `a₁` consecutive representable integers appear (everything
/// beyond follows by adding `a₁`), capped at `a₁·a_k`.
pub fn gap_set(gens: &Generators) -> GapSet {
    let a1 = gens.smallest();
    let cap = a1 * gens.largest();
    let mut rep = vec![true];
    let mut run = 1u64;
    let mut gaps = Vec::new();
    let mut n = 0u64;
    while run < a1 && n < cap {
        n += 1;
        let ok = gens
            .values()
            .iter()
            .any(|&g| n >= g && rep[(n - g) as usize]);
        rep.push(ok);
        if ok {
            run += 1;
        } else {
            run = 0;
            gaps.push(n);
        }
    }
    GapSet { gaps, bound: n }
}

/// `Σ_{n ∈ gaps} n^μ`
pub fn oracle_power_sum(gs: &GapSet, mu: u32) -> BigInt {
    gs.gaps
        .iter()
        .map(|&g| num_traits::pow(BigInt::from(g), mu as usize))
        .sum()
}

/// `Σ_{n ∈ gaps} λ^n n^μ`, walking `λ^n` upward one factor at a time.
pub fn oracle_weighted_sum(gs: &GapSet, mu: u32, lambda: &RingElement) -> RingElement {
    let ring = lambda.ring();
    let mut acc = ring.zero();
    let mut power = ring.one();
    let mut at = 0u64;
    for &g in &gs.gaps {
        while at < g {
            power = &power * lambda;
            at += 1;
        }
        let w = num_traits::pow(BigInt::from(g), mu as usize);
        if !w.is_zero() {
            acc = &acc + &power.scale(&rat(w));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::numberfield::NumberRing;

    #[test]
    fn two_three() {
        let gs = gap_set(&Generators::new([2, 3]).unwrap());
        assert_eq!(gs.gaps(), &[1]);
        assert_eq!(gs.frobenius(), 1);
    }

    #[test]
    fn thirteen_sequence_gap_listing() {
        let gs = gap_set(&Generators::new([13, 16, 19, 22, 25]).unwrap());
        let want = [
            1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 17, 18, 20, 21, 23, 24, 27, 28, 30, 31,
            33, 34, 36, 37, 40, 43, 46, 49, 53, 56, 59, 62,
        ];
        assert_eq!(gs.gaps(), &want);
        assert_eq!(oracle_power_sum(&gs, 2), BigInt::from(33150));
    }

    #[test]
    fn fourteen_sequence_gap_listing() {
        let gs = gap_set(&Generators::new([14, 17, 20, 23, 26, 29]).unwrap());
        let want = [
            1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 18, 19, 21, 22, 24, 25, 27, 30, 32,
            33, 35, 36, 38, 39, 41, 44, 47, 50, 53, 61, 64, 67,
        ];
        assert_eq!(gs.gaps(), &want);
        let minus_one = NumberRing::rationals().from_int(-1);
        assert_eq!(oracle_weighted_sum(&gs, 3, &minus_one), NumberRing::rationals().from_int(-375500));
        assert_eq!(oracle_weighted_sum(&gs, 1, &minus_one), NumberRing::rationals().from_int(-116));
    }

    #[test]
    fn half_weight() {
        let gs = gap_set(&Generators::new([2, 3]).unwrap());
        let half = NumberRing::rationals().from_rational(ratio(1, 2));
        assert_eq!(oracle_weighted_sum(&gs, 9, &half), half);
    }

    #[test]
    fn generator_one_has_no_gaps() {
        let gs = gap_set(&Generators::new([1, 5]).unwrap());
        assert!(gs.is_empty());
        assert_eq!(gs.frobenius(), -1);
    }

    #[test]
    fn closure_under_addition() {
        let g = Generators::new([7, 11, 13]).unwrap();
        let gs = gap_set(&g);
        let rep = representable(&g, gs.bound());
        for x in 0..=gs.bound() as usize {
            for y in 0..=gs.bound() as usize - x {
                if rep[x] && rep[y] {
                    assert!(rep[x + y]);
                }
            }
        }
        for n in 1..=gs.bound() {
            assert_eq!(gs.gaps().binary_search(&n).is_ok(), !rep[n as usize]);
        }
    }
}
