//! Frobenius number, genus, power sums and weighted power sums of the gap
//! set, computed from an [`AperyTable`] for arbitrary generators.
//!
//! Weighted sums split on whether `λ^{a₁} = 1`:
//! * `λ^{a₁} ≠ 1`: a geometric-tail expansion with Eulerian numbers and
//!   powers of `1/(λ^{a₁} - 1)` ([`weighted_sum_general`]);
//! * `λ^{a₁} = 1`: a Bernoulli expansion over the residue table plus an
//!   Eulerian correction ([`weighted_sum_unity_a`]). This identity is
//!   classically stated for arithmetic progressions; its derivation only
//!   uses the residue table, and the test suite checks it against brute
//!   force for arbitrary generators.

use std::fmt;

use num_traits::{One, Zero};

use crate::apery::{apery_general, apery_polynomial, AperyTable, Generators};
use crate::exact::{bernoulli, binomial, eulerian, rat, rat_pow, stirling2, to_integer, BigInt, BigRational};
use crate::numberfield::RingElement;
use crate::{Error, Result};

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Residue-table formulas, `λ^{a₁} ≠ 1` for weighted sums.
    GeneralApery,
    /// Residue-table formulas in the `λ^{a₁} = 1` case.
    GeneralAperyUnityA,
    /// Closed forms for arithmetic progressions (unweighted).
    ClosedForm,
    /// Progression closed form with `λ^a ≠ 1`, `λ^d ≠ 1`.
    ClosedFormGeneric,
    /// Progression closed form with `λ^d = 1`.
    ClosedFormUnityD,
    /// Progression closed form with `λ^a = 1`.
    ClosedFormUnityA,
    /// Direct summation over the sieved gap set.
    Oracle,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::GeneralApery => "general-apery",
            Method::GeneralAperyUnityA => "general-apery/unity-a",
            Method::ClosedForm => "ap-closed-form",
            Method::ClosedFormGeneric => "ap-closed-form/generic",
            Method::ClosedFormUnityD => "ap-closed-form/unity-d",
            Method::ClosedFormUnityA => "ap-closed-form/unity-a",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(max_i m_i) - a₁`
pub fn frobenius(t: &AperyTable) -> i64 {
    t.max() as i64 - t.modulus() as i64
}

/// Number of gaps, `(1/a₁) Σ m_i - (a₁ - 1)/2`.
pub fn genus(t: &AperyTable) -> Result<BigInt> {
    let a = t.modulus() as i64;
    let n = rat(t.moment(1)) / rat(a) - BigRational::new((a - 1).into(), 2.into());
    to_integer(&n).ok_or_else(|| Error::Internal(format!("genus came out non-integral: {n}")))
}

/// `s_μ = Σ_{gaps} n^μ` as a Bernoulli-weighted combination of the moments
/// `Σ m_i^p` plus `B_{μ+1}/(μ+1) (a₁^{μ+1} - 1)`.
pub fn power_sum(t: &AperyTable, mu: u32) -> Result<BigInt> {
    let a = rat(t.modulus());
    let mu = mu as usize;
    let mut acc = BigRational::zero();
    for kappa in 0..=mu {
        let b = bernoulli(kappa);
        if b.is_zero() {
            continue;
        }
        let c = rat(binomial(mu as i64 + 1, kappa as i64)) * b * rat_pow(&a, kappa as i64 - 1);
        acc += c * rat(t.moment(mu + 1 - kappa));
    }
    acc /= rat(mu as i64 + 1);
    acc += bernoulli(mu + 1) / rat(mu as i64 + 1) * (num_traits::pow(a, mu + 1) - BigRational::one());
    to_integer(&acc).ok_or_else(|| Error::Internal(format!("power sum s_{mu} came out non-integral: {acc}")))
}

/// `Σ_{i=0}^{a₁-1} m_i^ν λ^{m_i}` by direct evaluation (`m_0 = 0` contributes
/// `1` when `ν = 0`).
pub fn weighted_moment_direct(t: &AperyTable, nu: u32, lambda: &RingElement) -> RingElement {
    let mut m = t.residues().to_vec();
    m.sort_unstable();
    let ring = lambda.ring();
    let mut acc = ring.zero();
    let mut power = ring.one();
    let mut at = 0u64;
    for v in m {
        power = &power * &lambda.pow(v - at);
        at = v;
        let w = num_traits::pow(BigInt::from(v), nu as usize);
        acc = &acc + &power.scale(&rat(w));
    }
    acc
}

/// The same moment through `Σ_h S(ν,h) λ^h P^{(h)}(λ)` with
/// `P(x) = Σ_i x^{m_i}`.
pub fn weighted_moment_stirling(t: &AperyTable, nu: u32, lambda: &RingElement) -> RingElement {
    stirling_derivative_sum(&apery_polynomial(t), nu, lambda)
}

pub(crate) fn stirling_derivative_sum(
    p: &crate::poly::SparsePoly,
    nu: u32,
    lambda: &RingElement,
) -> RingElement {
    let ring = lambda.ring();
    let mut acc = ring.zero();
    let mut lam_h = ring.one();
    for h in 0..=nu {
        let s = stirling2(nu as usize, h as usize);
        if !s.is_zero() {
            let term = &lam_h * &p.derivative(h).eval(lambda);
            acc = &acc + &term.scale(&rat(s));
        }
        lam_h = &lam_h * lambda;
    }
    acc
}

/// `Σ_i m_i^ν λ^{m_i}`, evaluated both directly and through Stirling
/// derivatives of the residue polynomial; the two must agree.
pub fn weighted_moment(t: &AperyTable, nu: u32, lambda: &RingElement) -> Result<RingElement> {
    let direct = weighted_moment_direct(t, nu, lambda);
    let via_stirling = weighted_moment_stirling(t, nu, lambda);
    if direct != via_stirling {
        return Err(Error::Internal(format!(
            "weighted moment paths disagree for nu = {nu}: {direct} vs {via_stirling}"
        )));
    }
    Ok(direct)
}

fn check_weight(lambda: &RingElement) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::InvalidLambda("weight must be nonzero".into()));
    }
    if lambda.is_one() {
        return Err(Error::LambdaIsOne);
    }
    Ok(())
}

fn check_mu(mu: u32) -> Result<()> {
    if mu == 0 {
        return Err(Error::InvalidLambda("weighted sums need mu >= 1".into()));
    }
    Ok(())
}

/// `(-1)^{μ+1}/(λ-1)^{μ+1} Σ_{j=0}^{μ} <μ, μ-j> λ^j`
pub(crate) fn eulerian_tail(mu: u32, lambda: &RingElement) -> Result<RingElement> {
    let ring = lambda.ring();
    let mut poly = ring.zero();
    let mut lam_j = ring.one();
    for j in 0..=mu as i64 {
        let e = eulerian(mu as usize, mu as i64 - j);
        if !e.is_zero() {
            poly = &poly + &lam_j.scale(&rat(e));
        }
        lam_j = &lam_j * lambda;
    }
    let denom = (lambda - &ring.one()).inverse()?.pow(mu as u64 + 1);
    let out = &poly * &denom;
    Ok(if mu.is_multiple_of(2) { -&out } else { out })
}

/// `(-1)^{μ+1}/(λ-1)^{μ+1} Σ_{j=0}^{μ-1} <μ, j> λ^{j+1}`
pub(crate) fn eulerian_tail_shifted(mu: u32, lambda: &RingElement) -> Result<RingElement> {
    let ring = lambda.ring();
    let mut poly = ring.zero();
    let mut lam_j = lambda.clone();
    for j in 0..mu as i64 {
        let e = eulerian(mu as usize, j);
        if !e.is_zero() {
            poly = &poly + &lam_j.scale(&rat(e));
        }
        lam_j = &lam_j * lambda;
    }
    let denom = (lambda - &ring.one()).inverse()?.pow(mu as u64 + 1);
    let out = &poly * &denom;
    Ok(if mu.is_multiple_of(2) { -&out } else { out })
}

/// Combines weighted moments into `s_μ^{(λ)}` for `λ^{a₁} ≠ 1`.
///
/// `moment(ν)` must return `Σ_{i=0}^{a₁-1} m_i^ν λ^{m_i}`, where the `ν = 0`
/// value includes the `m_0` term `1`. Only the `n = μ` summand uses
/// `moment(0)`, so no `0^0` convention is involved.
pub(crate) fn combine_nonunity(
    a1: u64,
    mu: u32,
    lambda: &RingElement,
    mut moment: impl FnMut(u32) -> Result<RingElement>,
) -> Result<RingElement> {
    let ring = lambda.ring();
    let lam_a = lambda.pow(a1);
    let inv = (&lam_a - &ring.one()).inverse()?;
    let mut acc = ring.zero();
    let mut inv_pow = inv.clone();
    let minus_a = rat(-(a1 as i64));
    for n in 0..=mu {
        // Σ_j <n, n-j> λ^{j a₁}
        let mut eul = ring.zero();
        let mut lam_ja = ring.one();
        for j in 0..=n as i64 {
            let e = eulerian(n as usize, n as i64 - j);
            if !e.is_zero() {
                eul = &eul + &lam_ja.scale(&rat(e));
            }
            lam_ja = &lam_ja * &lam_a;
        }
        let coeff = rat_pow(&minus_a, n as i64) * rat(binomial(mu as i64, n as i64));
        let term = &(&eul * &inv_pow) * &moment(mu - n)?;
        acc = &acc + &term.scale(&coeff);
        inv_pow = &inv_pow * &inv;
    }
    Ok(&acc + &eulerian_tail(mu, lambda)?)
}

/// Combines moments for `λ^{a₁} = 1`:
/// `1/(μ+1) Σ_n C(μ+1,n) B_n a₁^{n-1} V(μ+1-n)` plus the Eulerian
/// correction, where `moment(p) = Σ_{i≥1} m_i^p λ^{m_i}` for `p >= 1`.
pub(crate) fn combine_unity(
    a1: u64,
    mu: u32,
    lambda: &RingElement,
    mut moment: impl FnMut(u32) -> Result<RingElement>,
) -> Result<RingElement> {
    let ring = lambda.ring();
    let a = rat(a1);
    let mut acc = ring.zero();
    for n in 0..=mu {
        let b = bernoulli(n as usize);
        if b.is_zero() {
            continue;
        }
        let c = rat(binomial(mu as i64 + 1, n as i64)) * b * rat_pow(&a, n as i64 - 1);
        acc = &acc + &moment(mu + 1 - n)?.scale(&c);
    }
    let acc = acc.scale(&BigRational::new(1.into(), (mu as i64 + 1).into()));
    Ok(&acc + &eulerian_tail_shifted(mu, lambda)?)
}

/// `s_μ^{(λ)}` for `λ^{a₁} ≠ 1` from the residue table.
pub fn weighted_sum_general(t: &AperyTable, mu: u32, lambda: &RingElement) -> Result<RingElement> {
    check_weight(lambda)?;
    check_mu(mu)?;
    let a1 = t.modulus();
    if lambda.is_power_unity(a1) {
        return Err(Error::WrongBranch(format!(
            "lambda^{a1} = 1; use the unity-a formula"
        )));
    }
    combine_nonunity(a1, mu, lambda, |nu| weighted_moment(t, nu, lambda))
}

/// `λ^{m_i}` for every residue, indexed like the table.
fn residue_weights(t: &AperyTable, lambda: &RingElement) -> Vec<RingElement> {
    t.residues().iter().map(|&m| lambda.pow(m)).collect()
}

fn check_unity_a(t: &AperyTable, mu: u32, lambda: &RingElement) -> Result<()> {
    check_weight(lambda)?;
    check_mu(mu)?;
    if !lambda.is_power_unity(t.modulus()) {
        return Err(Error::WrongBranch(format!(
            "lambda^{} != 1; use the general formula",
            t.modulus()
        )));
    }
    Ok(())
}

/// `λ^{a₁} = 1` form pairing each `m_i` with its residue `i = m_i mod a₁`:
/// `1/(μ+1) Σ_n C(μ+1,n) B_n a₁^{n-1} Σ_{i≥1} (m_i^{μ+1-n} - i^{μ+1-n}) λ^{m_i}`.
pub fn unity_a_residue_form(t: &AperyTable, mu: u32, lambda: &RingElement) -> Result<RingElement> {
    check_unity_a(t, mu, lambda)?;
    let weights = residue_weights(t, lambda);
    let ring = lambda.ring();
    let a = rat(t.modulus());
    let mut acc = ring.zero();
    for n in 0..=mu as usize {
        let b = bernoulli(n);
        if b.is_zero() {
            continue;
        }
        let p = mu as usize + 1 - n;
        let mut inner = ring.zero();
        for (i, (&m, w)) in t.residues().iter().zip(&weights).enumerate().skip(1) {
            let diff = num_traits::pow(BigInt::from(m), p) - num_traits::pow(BigInt::from(i), p);
            inner = &inner + &w.scale(&rat(diff));
        }
        let c = rat(binomial(mu as i64 + 1, n as i64)) * b * rat_pow(&a, n as i64 - 1);
        acc = &acc + &inner.scale(&c);
    }
    Ok(acc.scale(&BigRational::new(1.into(), (mu as i64 + 1).into())))
}

/// `λ^{a₁} = 1` form using only the `m_i` plus the Eulerian correction.
pub fn unity_a_eulerian_form(t: &AperyTable, mu: u32, lambda: &RingElement) -> Result<RingElement> {
    check_unity_a(t, mu, lambda)?;
    let weights = residue_weights(t, lambda);
    combine_unity(t.modulus(), mu, lambda, |p| {
        let ring = lambda.ring();
        let mut acc = ring.zero();
        for (&m, w) in t.residues().iter().zip(&weights).skip(1) {
            acc = &acc + &w.scale(&rat(num_traits::pow(BigInt::from(m), p as usize)));
        }
        Ok(acc)
    })
}

/// `s_μ^{(λ)}` for `λ^{a₁} = 1`; evaluates both forms and checks they agree.
pub fn weighted_sum_unity_a(t: &AperyTable, mu: u32, lambda: &RingElement) -> Result<RingElement> {
    let residue = unity_a_residue_form(t, mu, lambda)?;
    let eulerian = unity_a_eulerian_form(t, mu, lambda)?;
    if residue != eulerian {
        return Err(Error::Internal(format!(
            "unity-a forms disagree: {residue} vs {eulerian}"
        )));
    }
    Ok(residue)
}

/// Routes to [`weighted_sum_general`] or [`weighted_sum_unity_a`].
pub fn weighted_sum_with_table(
    t: &AperyTable,
    mu: u32,
    lambda: &RingElement,
) -> Result<(RingElement, Method)> {
    check_weight(lambda)?;
    if lambda.is_power_unity(t.modulus()) {
        Ok((weighted_sum_unity_a(t, mu, lambda)?, Method::GeneralAperyUnityA))
    } else {
        Ok((weighted_sum_general(t, mu, lambda)?, Method::GeneralApery))
    }
}

pub fn weighted_sum(g: &Generators, mu: u32, lambda: &RingElement) -> Result<(RingElement, Method)> {
    weighted_sum_with_table(&apery_general(g), mu, lambda)
}
