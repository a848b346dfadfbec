//! Closed forms for generators in arithmetic progression
//! `a, a+d, …, a+(k-1)d` with `gcd(a, d) = 1`, `2 <= k <= a` and
//! `a - 1 = q(k-1) + r`. None of these build the residue table.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::apery::ArithProgression;
use crate::exact::{bernoulli, binomial, int_pow, rat, rat_pow, to_integer, BigInt, BigRational};
use crate::numberfield::RingElement;
use crate::poly::SparsePoly;
use crate::sylvester::{combine_nonunity, combine_unity, stirling_derivative_sum, Method};
use crate::{Error, Result};

/// Which weighted closed form applies. `λ^a = 1` and `λ^d = 1` cannot hold
/// together for `λ ≠ 1` since `gcd(a, d) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApBranch {
    /// `λ^a ≠ 1`, `λ^d ≠ 1`
    Generic,
    /// `λ^a ≠ 1`, `λ^d = 1`
    UnityD,
    /// `λ^a = 1`, `λ^d ≠ 1`
    UnityA,
}

impl ApBranch {
    pub fn method(self) -> Method {
        match self {
            ApBranch::Generic => Method::ClosedFormGeneric,
            ApBranch::UnityD => Method::ClosedFormUnityD,
            ApBranch::UnityA => Method::ClosedFormUnityA,
        }
    }
}

/// `⌊(a-2)/(k-1)⌋ a + (a-1) d`
pub fn frobenius_ap(ap: &ArithProgression) -> i64 {
    let (a, d, k) = (ap.a() as i64, ap.d() as i64, ap.k() as i64);
    (a - 2) / (k - 1) * a + (a - 1) * d
}

/// `((a-1)(q+d) + r(q+1)) / 2`
pub fn genus_ap(ap: &ArithProgression) -> Result<BigInt> {
    let (a, d, q, r) = (ap.a(), ap.d(), ap.q(), ap.r());
    let twice = BigInt::from(a - 1) * BigInt::from(q + d) + BigInt::from(r) * BigInt::from(q + 1);
    if twice.bit(0) {
        return Err(Error::Internal(format!("odd doubled genus {twice} for {ap:?}")));
    }
    Ok(twice / 2)
}

/// Power sum `s_μ` as a triple Bernoulli sum over `(κ, l, j)`.
pub fn power_sum_ap(ap: &ArithProgression, mu: u32) -> Result<BigInt> {
    let (a, d, k, q) = (ap.a(), ap.d(), ap.k(), ap.q());
    let mu = mu as i64;
    let ar = rat(a);
    let mut acc = BigRational::zero();
    let mut brackets: HashMap<(usize, usize), BigRational> = HashMap::new();
    for kappa in 0..=mu {
        let bk = bernoulli(kappa as usize);
        if bk.is_zero() {
            continue;
        }
        for l in 0..=mu + 1 - kappa {
            let e = (mu + 1 - kappa - l) as usize;
            let outer = rat(binomial(mu + 1, kappa) * binomial(mu + 1 - kappa, l))
                * &bk
                * rat_pow(&ar, mu - l)
                * rat(int_pow(d, l as usize))
                / rat(l + 1);
            for j in 0..=l {
                let bj = bernoulli(j as usize);
                if bj.is_zero() {
                    continue;
                }
                let p = (l + 1 - j) as usize;
                let bracket = brackets.entry((e, p)).or_insert_with(|| {
                    let mut b = int_pow(q + 1, e) * int_pow(a, p) - BigInt::one();
                    for i in 1..=q {
                        let step = int_pow(i + 1, e) - int_pow(i, e);
                        if !step.is_zero() {
                            b -= step * int_pow(i * (k - 1) + 1, p);
                        }
                    }
                    rat(b)
                });
                acc += &outer * rat(binomial(l + 1, j)) * &bj * &*bracket;
            }
        }
    }
    acc /= rat(mu + 1);
    acc += bernoulli(mu as usize + 1) / rat(mu + 1) * (rat(int_pow(a, mu as usize + 1)) - BigRational::one());
    to_integer(&acc).ok_or_else(|| Error::Internal(format!("closed-form s_{mu} non-integral: {acc}")))
}

/// The residue polynomial of the progression with all geometric-sum
/// denominators divided out:
/// `1 + x^{a+d} (x^{q a_k} - 1)/(x^{a_k} - 1) · (x^{(k-1)d} - 1)/(x^d - 1)
///    + x^{q a_k + a + d} (x^{rd} - 1)/(x^d - 1)`.
pub fn bracket_polynomial(ap: &ArithProgression) -> SparsePoly {
    let (a, d, k, q, r) = (ap.a(), ap.d(), ap.k(), ap.q(), ap.r());
    let ak = ap.largest();
    let mut p = SparsePoly::new();
    p.add_term(0, BigInt::one());
    for s in 0..q {
        p.add_geometric(a + d + s * ak, d, k - 1);
    }
    p.add_geometric(q * ak + a + d, d, r);
    p
}

/// `Σ_{i=0}^{a-1} λ^{m_i} m_i^ν` through Stirling-weighted derivatives of
/// [`bracket_polynomial`]. Valid for any `λ`; the generic weighted branch
/// is where it is used.
pub fn generic_moment(ap: &ArithProgression, nu: u32, lambda: &RingElement) -> RingElement {
    stirling_derivative_sum(&bracket_polynomial(ap), nu, lambda)
}

/// `Σ_{i=0}^{a-1} λ^{m_i} m_i^ν` for `λ^d = 1`, summing each row of the
/// residue table with Faulhaber polynomials. Includes the `m_0` term, so
/// the `ν = 0` value counts `1` for it.
pub fn unity_d_moment(ap: &ArithProgression, nu: u32, lambda: &RingElement) -> Result<RingElement> {
    if !lambda.is_power_unity(ap.d()) {
        return Err(Error::WrongBranch("unity_d_moment needs lambda^d = 1".into()));
    }
    let (a, d, k, q, r) = (ap.a(), ap.d(), ap.k(), ap.q(), ap.r());
    let ring = lambda.ring();
    let lam_a = lambda.pow(a);
    // λ^{s a} for s = 0..=q+1
    let mut lam_sa = vec![ring.one()];
    for s in 1..=q as usize + 1 {
        lam_sa.push(&lam_sa[s - 1] * &lam_a);
    }
    let nu = nu as i64;
    let mut acc = ring.zero();
    for l in 0..=nu {
        let e = (nu - l) as usize;
        let outer = rat(binomial(nu, l) * int_pow(d, l as usize)) / rat(l + 1);
        let row = |s: u64| lam_sa[s as usize].scale(&rat(int_pow(s * a, e)));
        for j in 0..=l {
            let bj = bernoulli(j as usize);
            if bj.is_zero() {
                continue;
            }
            let p = (l + 1 - j) as usize;
            let mut bracket = -&row(1);
            for s in 1..=q {
                let diff = &row(s + 1) - &row(s);
                bracket = &bracket - &diff.scale(&rat(int_pow(s * (k - 1) + 1, p)));
            }
            bracket = &bracket + &row(q + 1).scale(&rat(int_pow(q * (k - 1) + r + 1, p)));
            let c = &outer * rat(binomial(l + 1, j)) * bj;
            acc = &acc + &bracket.scale(&c);
        }
    }
    if nu == 0 {
        acc = acc.add_rational(&BigRational::one());
    }
    Ok(acc)
}

/// `D_j = λ^{jd} j^ℓ`, with `0^0 = 1`.
pub fn unity_a_dj(j: u64, l: u32, d: u64, lambda: &RingElement) -> RingElement {
    lambda.pow(j * d).scale(&rat(int_pow(j, l as usize)))
}

/// `Σ_{i=1}^{a-1} λ^{m_i} m_i^ν` for `λ^a = 1`, where `λ^{m_i}` reduces to
/// `λ^{jd}` along each row.
pub fn unity_a_moment(ap: &ArithProgression, nu: u32, lambda: &RingElement) -> Result<RingElement> {
    if !lambda.is_power_unity(ap.a()) {
        return Err(Error::WrongBranch("unity_a_moment needs lambda^a = 1".into()));
    }
    let (a, d, k1, q, r) = (ap.a(), ap.d(), ap.k() - 1, ap.q(), ap.r());
    let ring = lambda.ring();
    let lam_d = lambda.pow(d);
    // λ^{jd} for j = 0..a-1
    let mut lam_jd = vec![ring.one()];
    for j in 1..a as usize {
        lam_jd.push(&lam_jd[j - 1] * &lam_d);
    }
    let row_sum = |lo: u64, hi: u64, l: usize| {
        (lo..=hi).fold(ring.zero(), |acc, j| &acc + &lam_jd[j as usize].scale(&rat(int_pow(j, l))))
    };
    let nu = nu as i64;
    let mut acc = ring.zero();
    for l in 0..=nu {
        let e = (nu - l) as usize;
        let mut inner = ring.zero();
        for s in 1..=q {
            let rs = row_sum((s - 1) * k1 + 1, s * k1, l as usize);
            inner = &inner + &rs.scale(&rat(int_pow(s * a, e)));
        }
        if r > 0 {
            let rs = row_sum(q * k1 + 1, q * k1 + r, l as usize);
            inner = &inner + &rs.scale(&rat(int_pow((q + 1) * a, e)));
        }
        acc = &acc + &inner.scale(&rat(binomial(nu, l) * int_pow(d, l as usize)));
    }
    Ok(acc)
}

/// Weighted power sum `s_μ^{(λ)}` for a progression, choosing the closed
/// form by whether `λ^a` or `λ^d` equals 1.
pub fn weighted_sum_ap(
    ap: &ArithProgression,
    mu: u32,
    lambda: &RingElement,
) -> Result<(RingElement, ApBranch)> {
    if lambda.is_zero() {
        return Err(Error::InvalidLambda("weight must be nonzero".into()));
    }
    if lambda.is_one() {
        return Err(Error::LambdaIsOne);
    }
    if mu == 0 {
        return Err(Error::InvalidLambda("weighted sums need mu >= 1".into()));
    }
    let unity_a = lambda.is_power_unity(ap.a());
    let unity_d = lambda.is_power_unity(ap.d());
    match (unity_a, unity_d) {
        (true, true) => Err(Error::Internal(
            "lambda^a = lambda^d = 1 with gcd(a, d) = 1 forces lambda = 1".into(),
        )),
        (true, false) => {
            let v = combine_unity(ap.a(), mu, lambda, |p| unity_a_moment(ap, p, lambda))?;
            Ok((v, ApBranch::UnityA))
        }
        (false, true) => {
            let v = combine_nonunity(ap.a(), mu, lambda, |nu| unity_d_moment(ap, nu, lambda))?;
            Ok((v, ApBranch::UnityD))
        }
        (false, false) => {
            let v = combine_nonunity(ap.a(), mu, lambda, |nu| Ok(generic_moment(ap, nu, lambda)))?;
            Ok((v, ApBranch::Generic))
        }
    }
}
