//! Exact arithmetic: arbitrary-precision rationals and dense univariate
//! polynomials over them. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact rational number. Always stored reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum NumError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial rejected")]
    ZeroPolynomial,
    #[error("discriminant requires degree >= 1")]
    DegreeZeroDiscriminant,
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let s = s.trim();
    let bad = || NumError::BadRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Textual form "p/q", or "p" when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// r^e for a signed exponent; r must be nonzero when e < 0.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow::pow(r.clone(), e as usize)
    } else {
        num_traits::pow::pow(r.recip(), (-e) as usize)
    }
}

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list; the leading
/// coefficient is otherwise nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn x() -> Self {
        Poly::new(vec![rat(0), rat(1)])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// c * x^d
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut v = vec![rat(0); d + 1];
        v[d] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> Rational {
        self.coeffs.last().expect("lc of zero polynomial").clone()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            Poly::zero()
        } else {
            self.scale(&self.lc().recip())
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly), NumError> {
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lcinv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![rat(0); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lcinv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &c * dc;
                    rem[k + i] = v;
                }
                quot[k] = c;
            }
            rem.pop();
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, NumError> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic gcd; gcd(f, 0) = monic(f).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (d, u, v) with u*self + v*other = d = monic gcd.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = Poly::one();
        let mut u1 = Poly::zero();
        let mut v0 = Poly::zero();
        let mut v1 = Poly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).unwrap();
            let nu = &u0 - &(&q * &u1);
            let nv = &v0 - &(&q * &v1);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let c = r0.lc().recip();
        (r0.scale(&c), u0.scale(&c), v0.scale(&c))
    }

    /// gcd(f, f') = 1, i.e. no repeated roots. Rejects the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool, NumError> {
        if self.is_zero() {
            return Err(NumError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let g = self.gcd(&self.derivative());
        Ok(g.degree() == Some(0))
    }
}

/// Resultant with the convention res(f, g) = lc(g)^{deg f} * prod f(beta)
/// over the roots beta of g, so that res(x-a, x-b) = b - a.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational, NumError> {
    if f.is_zero() || g.is_zero() {
        return Err(NumError::ZeroPolynomial);
    }
    fn go(f: &Poly, g: &Poly) -> Rational {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if m == 0 {
            return rat_pow(&f.lc(), n as i64);
        }
        if n == 0 {
            return rat_pow(&g.lc(), m as i64);
        }
        if m < n {
            let sign = if (m * n) % 2 == 1 { rat(-1) } else { rat(1) };
            return sign * go(g, f);
        }
        let r = f.rem(g).unwrap();
        if r.is_zero() {
            return rat(0);
        }
        let d = r.degree().unwrap();
        // res(f, g) = lc(g)^{m-d} * res(r, g), then flip r and g.
        let sign = if (d * n) % 2 == 1 { rat(-1) } else { rat(1) };
        rat_pow(&g.lc(), (m - d) as i64) * sign * go(g, &r)
    }
    Ok(go(f, g))
}

/// disc(f) = (-1)^{d(d-1)/2} res(f, f') / lc(f).
pub fn discriminant(f: &Poly) -> Result<Rational, NumError> {
    let d = match f.degree() {
        None => return Err(NumError::ZeroPolynomial),
        Some(0) => return Err(NumError::DegreeZeroDiscriminant),
        Some(d) => d,
    };
    let r = resultant(f, &f.derivative())?;
    let sign = if (d * (d - 1) / 2) % 2 == 1 {
        rat(-1)
    } else {
        rat(1)
    };
    Ok(sign * r / f.lc())
}

/// Distinct rational roots of a nonzero polynomial, by the rational-root
/// test on an integer rescaling. Sorted for determinism.
pub fn rational_roots(f: &Poly) -> Result<Vec<Rational>, crate::intfactor::FactorError> {
    use crate::intfactor::{factor_u64, FactorError, HEIGHT_CAP};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};

    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let mut roots: Vec<Rational> = Vec::new();
    let mut coeffs: Vec<Rational> = f.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if roots.is_empty() {
            roots.push(rat(0));
        }
    }
    if coeffs.len() <= 1 {
        roots.sort();
        return Ok(roots);
    }
    // clear denominators
    let mut scale = BigInt::from(1);
    for c in &coeffs {
        scale = scale.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
    let to_capped = |n: &BigInt| -> Result<u64, FactorError> {
        let v = n.abs().to_u64().ok_or(FactorError::HeightExceeded)?;
        if v > HEIGHT_CAP {
            return Err(FactorError::HeightExceeded);
        }
        Ok(v)
    };
    let divisors = |n: u64| -> Vec<u64> {
        let mut out = vec![1u64];
        for (p, e) in factor_u64(n) {
            let prev = out.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                out.extend(prev.iter().map(|d| d * pk));
            }
        }
        out
    };
    let a0 = to_capped(&ints[0])?;
    let an = to_capped(ints.last().unwrap())?;
    for p in divisors(a0) {
        for q in &divisors(an) {
            for sign in [1i64, -1] {
                let cand = ratio(sign * p as i64, *q as i64);
                if f.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*x", format_rational(c))?,
                _ => write!(f, "{}*x^{}", format_rational(c), i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
