//! Exact arithmetic in `Q[θ]/(f)` for a monic `f`.
//!
//! Weights such as `7`, `-1/2`, `∛2`, `ζ₅` or `4 + 3i` all live in a
//! [`NumberRing`]; every weighted sum is an exact [`RingElement`] in the
//! power basis `1, θ, …, θ^{n-1}`.
//!
//! Irreducibility of `f` is never checked up front. If `f` is reducible
//! this only shows up when an inversion hits a zero divisor, which is
//! reported as [`Error::ReducibleModulus`] along with the factor found.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::exact::{fmt_rational, parse_rational, rat, to_f64, BigRational};
use crate::poly::{cyclotomic, QPoly};
use crate::{Error, Result};

/// The ring `Q[θ]/(f)`. Cheap to clone.
#[derive(Clone)]
pub struct NumberRing {
    inner: Arc<RingData>,
}

struct RingData {
    /// Full monic polynomial, leading coefficient included.
    minpoly: QPoly,
}

impl NumberRing {
    /// Builds the ring from `c_0, …, c_{n-1}, 1`, the coefficients of a
    /// monic `f` in ascending order (leading 1 included).
    pub fn new(minpoly: Vec<BigRational>) -> Result<Self> {
        let poly = QPoly::new(minpoly);
        match poly.degree() {
            None | Some(0) => Err(Error::InvalidMinpoly("degree must be at least 1".into())),
            Some(_) if !poly.lead().is_some_and(One::is_one) => {
                Err(Error::InvalidMinpoly(format!("{poly} is not monic")))
            }
            Some(_) => Ok(NumberRing {
                inner: Arc::new(RingData { minpoly: poly }),
            }),
        }
    }

    /// The rationals, presented as `Q[θ]/(θ)`.
    pub fn rationals() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()]).expect("x is monic")
    }

    /// `Q[θ]/(θ^n - r)`.
    pub fn radical(n: u32, r: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMinpoly("radical index must be positive".into()));
        }
        let mut c = vec![BigRational::zero(); n as usize + 1];
        c[0] = -r;
        c[n as usize] = BigRational::one();
        Self::new(c)
    }

    /// `Q(ζ_n)` via the `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMinpoly("cyclotomic index must be positive".into()));
        }
        Self::new(cyclotomic(n as usize).coeffs().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.degree().expect("nonzero minpoly")
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.inner.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(&self) -> RingElement {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> RingElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> RingElement {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        RingElement { ring: self.clone(), coeffs }
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.from_rational(rat(n))
    }

    /// The class of `θ`.
    pub fn generator(&self) -> RingElement {
        if self.degree() == 1 {
            return self.from_rational(-self.inner.minpoly.coeffs()[0].clone());
        }
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[1] = BigRational::one();
        RingElement { ring: self.clone(), coeffs }
    }

    /// Element with power-basis coefficients `b_0 + b_1 θ + …`; longer
    /// inputs are reduced modulo `f`.
    pub fn element(&self, coeffs: Vec<BigRational>) -> RingElement {
        self.reduce(QPoly::new(coeffs))
    }

    fn reduce(&self, p: QPoly) -> RingElement {
        let (_, r) = p.div_rem(&self.inner.minpoly);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), BigRational::zero());
        RingElement { ring: self.clone(), coeffs }
    }

    pub fn same_as(&self, other: &NumberRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly
    }
}

impl PartialEq for NumberRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for NumberRing {}

impl fmt::Debug for NumberRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberRing({})", self.inner.minpoly)
    }
}

/// An element of a [`NumberRing`] in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: NumberRing,
    coeffs: Vec<BigRational>,
}

impl RingElement {
    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    /// Power-basis coordinates; length equals the ring degree.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RingElement { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(RingElement { ring: self.ring.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(self.ring.from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // θ^n = -(c_0 + … + c_{n-1} θ^{n-1})
        let f = self.ring.inner.minpoly.coeffs();
        for top in (n..2 * n - 1).rev() {
            let c = std::mem::replace(&mut prod[top], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, fj) in f[..n].iter().enumerate() {
                if !fj.is_zero() {
                    prod[top - n + j] -= &c * fj;
                }
            }
        }
        prod.truncate(n);
        Ok(RingElement { ring: self.ring.clone(), coeffs: prod })
    }

    pub fn scale(&self, q: &BigRational) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn add_rational(&self, q: &BigRational) -> RingElement {
        let mut out = self.clone();
        out.coeffs[0] += q;
        out
    }

    /// `self^e` by repeated squaring; `x^0 = 1`.
    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through [`RingElement::inverse`].
    pub fn powi(&self, e: i64) -> Result<RingElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self) -> Result<RingElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = QPoly::new(self.coeffs.clone());
        let (d, s) = g.gcd_with_cofactor(&self.ring.inner.minpoly);
        if d.degree() != Some(0) {
            return Err(Error::ReducibleModulus { factor: d.to_string() });
        }
        Ok(self.ring.reduce(s))
    }

    pub fn try_div(&self, other: &RingElement) -> Result<RingElement> {
        self.try_mul(&other.inverse()?)
    }

    /// `self^e == 1` exactly.
    pub fn is_power_unity(&self, e: u64) -> bool {
        self.pow(e).is_one()
    }

    /// Approximate complex value under the embedding `θ ↦ root`.
    pub fn numeric(&self, embedding: &Embedding) -> Result<Complex64> {
        let root = embedding.resolve(&self.ring)?;
        Ok(self.numeric_at(root))
    }

    /// Evaluates the coordinate polynomial at a given complex value of `θ`.
    pub fn numeric_at(&self, theta: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * theta + to_f64(c))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return f.write_str(&fmt_rational(q));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = fmt_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => f.write_str(&body)?,
                1 => write!(f, "{body}*θ")?,
                _ => write!(f, "{body}*θ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self} mod {})", self.ring.inner.minpoly)
    }
}

// Operator forms panic on ring mismatch; use the `try_*` methods when the
// operands may come from different rings.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Choice of complex root of the minimal polynomial for numeric previews.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Embedding {
    /// Largest real root; for a degree-1 ring, the only root.
    PrincipalReal,
    /// `e^{2πi/n}`.
    RootOfUnity(u32),
    /// Index into the roots sorted by argument in `(-π, π]`, then modulus.
    Index(usize),
    /// Root nearest to the given point.
    Near(Complex64),
}

impl Embedding {
    /// The complex value of `θ` under this embedding.
    pub fn resolve(&self, ring: &NumberRing) -> Result<Complex64> {
        let f = float_poly(ring.minpoly());
        match *self {
            Embedding::PrincipalReal => {
                let roots = all_roots(&f)?;
                roots
                    .into_iter()
                    .filter(|z| z.im.abs() <= 1e-9 * (1.0 + z.norm()))
                    .map(|z| Complex64::new(z.re, 0.0))
                    .max_by(|a, b| a.re.total_cmp(&b.re))
                    .ok_or(Error::NoConvergence)
            }
            Embedding::RootOfUnity(n) => {
                let guess = Complex64::from_polar(1.0, std::f64::consts::TAU / n.max(1) as f64);
                newton(&f, guess)
            }
            Embedding::Index(i) => {
                let mut roots = all_roots(&f)?;
                roots.sort_by(|a, b| {
                    let key = |z: &Complex64| {
                        let arg = if z.im.abs() <= 1e-12 * (1.0 + z.norm()) && z.re < 0.0 {
                            std::f64::consts::PI
                        } else {
                            z.arg()
                        };
                        (arg, z.norm())
                    };
                    let (ka, kb) = (key(a), key(b));
                    ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
                });
                roots.get(i).copied().ok_or(Error::NoConvergence)
            }
            Embedding::Near(p) => {
                let roots = all_roots(&f)?;
                let best = roots
                    .into_iter()
                    .min_by(|a, b| (a - p).norm().total_cmp(&(b - p).norm()))
                    .ok_or(Error::NoConvergence)?;
                newton(&f, best)
            }
        }
    }
}

fn float_poly(p: &QPoly) -> Vec<f64> {
    p.coeffs().iter().map(to_f64).collect()
}

fn horner(f: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for &c in f.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

fn newton(f: &[f64], mut z: Complex64) -> Result<Complex64> {
    for _ in 0..200 {
        let (v, d) = horner(f, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    let (v, _) = horner(f, z);
    let scale: f64 = f.iter().map(|c| c.abs()).sum::<f64>() * (1.0 + z.norm()).powi(f.len() as i32);
    if v.norm() <= 1e-10 * scale {
        Ok(z)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Durand–Kerner on a monic float polynomial, then Newton polishing.
fn all_roots(f: &[f64]) -> Result<Vec<Complex64>> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(vec![Complex64::new(-f[0], 0.0)]);
    }
    let radius = 1.0 + f[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::from_polar(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    let mut converged = false;
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let (v, _) = horner(f, roots[i]);
            let denom: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| roots[i] - roots[j])
                .product();
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                delta = f64::INFINITY;
                continue;
            }
            let step = v / denom;
            roots[i] -= step;
            delta = delta.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if delta < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    roots.into_iter().map(|z| newton(f, z).or(Ok(z))).collect()
}

/// A weight specification, parsed from the text grammar
/// `p/q | root(n,p/q) | zeta(n) | elem(minpoly=[c0,…,1]; coeffs=[b0,…])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    Rational(BigRational),
    /// `θ` with `θ^n = r`.
    Root(u32, BigRational),
    /// A primitive `n`-th root of unity.
    Zeta(u32),
    /// Explicit element `coeffs` of `Q[θ]/(minpoly)`.
    Custom {
        minpoly: Vec<BigRational>,
        coeffs: Vec<BigRational>,
    },
}

impl LambdaSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let spec = if let Some(body) = strip_call(&s, "root") {
            let (n, r) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected root(n,p/q), got {text:?}")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad radical index {n:?}")))?;
            LambdaSpec::Root(n, parse_rational(r)?)
        } else if let Some(body) = strip_call(&s, "zeta") {
            let n: u32 = body
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic index {body:?}")))?;
            LambdaSpec::Zeta(n)
        } else if let Some(body) = strip_call(&s, "elem") {
            let mut minpoly = None;
            let mut coeffs = None;
            for part in body.split(';') {
                let (key, val) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=[…] in {part:?}")))?;
                let list = parse_list(val)?;
                match key {
                    "minpoly" => minpoly = Some(list),
                    "coeffs" => coeffs = Some(list),
                    _ => return Err(Error::Parse(format!("unknown elem field {key:?}"))),
                }
            }
            LambdaSpec::Custom {
                minpoly: minpoly.ok_or_else(|| Error::Parse("elem(...) needs minpoly".into()))?,
                coeffs: coeffs.ok_or_else(|| Error::Parse("elem(...) needs coeffs".into()))?,
            }
        } else {
            LambdaSpec::Rational(parse_rational(&s)?)
        };
        Ok(spec)
    }

    /// Builds the weight as a ring element. Rejects weights equal to 0 or 1.
    pub fn to_element(&self) -> Result<RingElement> {
        let elem = self.to_element_unchecked()?;
        if elem.is_zero() {
            return Err(Error::InvalidLambda("weight must be nonzero".into()));
        }
        if elem.is_one() {
            return Err(Error::LambdaIsOne);
        }
        Ok(elem)
    }

    /// Like [`LambdaSpec::to_element`] but accepts 0 and 1.
    pub fn to_element_unchecked(&self) -> Result<RingElement> {
        match self {
            LambdaSpec::Rational(q) => Ok(NumberRing::rationals().from_rational(q.clone())),
            LambdaSpec::Root(n, r) => {
                if r.is_zero() {
                    return Err(Error::InvalidLambda("root of zero".into()));
                }
                Ok(NumberRing::radical(*n, r.clone())?.generator())
            }
            LambdaSpec::Zeta(n) => Ok(NumberRing::cyclotomic(*n)?.generator()),
            LambdaSpec::Custom { minpoly, coeffs } => {
                let ring = NumberRing::new(minpoly.clone())?;
                if coeffs.len() > ring.degree() {
                    return Err(Error::Parse(format!(
                        "{} coefficients for a degree-{} ring",
                        coeffs.len(),
                        ring.degree()
                    )));
                }
                Ok(ring.element(coeffs.clone()))
            }
        }
    }

    /// The embedding a numeric preview uses unless told otherwise.
    pub fn default_embedding(&self) -> Embedding {
        match self {
            LambdaSpec::Rational(_) => Embedding::Index(0),
            LambdaSpec::Root(_, r) if r.is_positive() => Embedding::PrincipalReal,
            LambdaSpec::Root(..) => Embedding::Index(0),
            LambdaSpec::Zeta(n) => Embedding::RootOfUnity(*n),
            LambdaSpec::Custom { minpoly, .. } => Embedding::Index(minpoly.len().saturating_sub(2)),
        }
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Rational(q) => f.write_str(&fmt_rational(q)),
            LambdaSpec::Root(n, r) => write!(f, "root({n},{})", fmt_rational(r)),
            LambdaSpec::Zeta(n) => write!(f, "zeta({n})"),
            LambdaSpec::Custom { minpoly, coeffs } => {
                let join = |v: &[BigRational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(",");
                write!(f, "elem(minpoly=[{}]; coeffs=[{}])", join(minpoly), join(coeffs))
            }
        }
    }
}

fn strip_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_list(s: &str) -> Result<Vec<BigRational>> {
    let body = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] list, got {s:?}")))?;
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(parse_rational).collect()
}
