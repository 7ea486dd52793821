//! Quaternion algebras over Q and Q(t): Hilbert symbols, division
//! tests, splitting by quadratic etale algebras, tame residues on the
//! rational function field, and the non-retract-rationality certificate
//! for even-degree twists.

use crate::etale::{EtaleAlgebra, EtaleError};
use crate::exactnum::{format_rational, rat, rat_pow, NumError, Poly, Rational};
use crate::intfactor::{factor_u64, is_prime_u64, pow_mod, squarefree_part_int, FactorError};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BrauerError {
    #[error("symbol entries must be nonzero")]
    ZeroSymbolEntry,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported factor degree {0} (only 1 and 2 are decidable here)")]
    UnsupportedFactorDegree(usize),
    #[error("quaternion algebra is not division")]
    NotDivision,
    #[error("witness parameter a_{0} is a square, so E_{0} is not a field")]
    SquareParameter(usize),
    #[error("witness degree must be an even integer >= 6, got {0}")]
    InvalidWitnessDegree(usize),
    #[error("algebra is ramified at the requested point")]
    Ramified,
    #[error("symbol entry vanishes at the requested point")]
    ZeroEntry,
    #[error("residue lives over a non-rational residue field")]
    NonRationalResidue,
    #[error("place must be monic of degree >= 1")]
    BadPlace,
    #[error("algebra must have odd total degree")]
    EvenDegreeAlgebra,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Symbol algebra (a, b) over Q: generators i, j with i^2 = a,
/// j^2 = b, ij = -ji. Equality is symbol-level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuaternionAlgebra {
    a: Rational,
    b: Rational,
}

impl QuaternionAlgebra {
    pub fn new(a: Rational, b: Rational) -> Result<Self, BrauerError> {
        if a.is_zero() || b.is_zero() {
            return Err(BrauerError::ZeroSymbolEntry);
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self, BrauerError> {
        QuaternionAlgebra::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

/// Symbol algebra (f(t), g(t)) over Q(t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuaternionOverFt {
    f: Poly,
    g: Poly,
}

impl QuaternionOverFt {
    pub fn new(f: Poly, g: Poly) -> Result<Self, BrauerError> {
        if f.is_zero() || g.is_zero() {
            return Err(BrauerError::ZeroSymbolEntry);
        }
        Ok(QuaternionOverFt { f, g })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }
}

/// A place of Q.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QPlace {
    Infinity,
    Prime(u64),
}

impl std::fmt::Display for QPlace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QPlace::Infinity => write!(f, "inf"),
            QPlace::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A place of P^1 over Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    /// Monic polynomial of degree >= 1 (irreducible for the class
    /// decision to be meaningful).
    Finite(Poly),
    Infinity,
}

/// Square class of the residue at a place.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Residue {
    Trivial,
    /// Nontrivial class, as a signed squarefree integer != 1.
    Class(i64),
    /// Tame-symbol representative modulo a higher-degree place; squareness
    /// in the residue field is not decided here.
    Undecided(Poly),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueClass {
    pub place: Place,
    pub residue: Residue,
}

/// Signed squarefree integer representing the square class of a nonzero
/// rational.
pub fn squarefree_part(r: &Rational) -> Result<i64, BrauerError> {
    if r.is_zero() {
        return Err(BrauerError::ZeroSymbolEntry);
    }
    let num = squarefree_part_int(r.numer())?;
    let den = squarefree_part_int(r.denom())?;
    // the fraction is reduced, so the two squarefree parts are coprime
    num.checked_mul(den).ok_or(BrauerError::Factor(FactorError::HeightExceeded))
}

pub fn is_square(r: &Rational) -> Result<bool, BrauerError> {
    Ok(!r.is_zero() && squarefree_part(r)? == 1)
}

fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1);
    let am = a.rem_euclid(p as i64) as u64;
    if am == 0 {
        return 0;
    }
    let r = pow_mod(am, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Valuation and unit part of a squarefree integer at p.
fn val_unit(n: i64, p: u64) -> (u32, i64) {
    let mut v = 0;
    let mut u = n;
    while u % p as i64 == 0 {
        u /= p as i64;
        v += 1;
    }
    (v, u)
}

/// Local Hilbert symbol (a, b)_p in {+1, -1}.
pub fn local_hilbert(a: &Rational, b: &Rational, place: QPlace) -> Result<i32, BrauerError> {
    if a.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroSymbolEntry);
    }
    let sa = squarefree_part(a)?;
    let sb = squarefree_part(b)?;
    match place {
        QPlace::Infinity => Ok(if sa < 0 && sb < 0 { -1 } else { 1 }),
        QPlace::Prime(p) => {
            if !is_prime_u64(p) {
                return Err(BrauerError::NotPrime(p));
            }
            let (alpha, u) = val_unit(sa, p);
            let (beta, v) = val_unit(sb, p);
            if p == 2 {
                let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
                let omega = |x: i64| ((x * x - 1) / 8).rem_euclid(2);
                let e = eps(u) * eps(v) + alpha as i64 * omega(v) + beta as i64 * omega(u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let eps_p = ((p - 1) / 2 % 2) as i64;
                let mut sign = 1i32;
                if (alpha * beta) as i64 * eps_p % 2 == 1 {
                    sign = -sign;
                }
                if beta % 2 == 1 {
                    sign *= legendre(u, p);
                }
                if alpha % 2 == 1 {
                    sign *= legendre(v, p);
                }
                Ok(sign)
            }
        }
    }
}

/// The finitely many places where the symbol (a, b) can ramify:
/// infinity, 2, and the odd primes dividing the squarefree parts.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<QPlace>, BrauerError> {
    let sa = squarefree_part(a)?;
    let sb = squarefree_part(b)?;
    let mut places = vec![QPlace::Infinity, QPlace::Prime(2)];
    for s in [sa, sb] {
        for (p, _) in factor_u64(s.unsigned_abs()) {
            if p != 2 && !places.contains(&QPlace::Prime(p)) {
                places.push(QPlace::Prime(p));
            }
        }
    }
    places.sort();
    Ok(places)
}

/// Full local symbol table at the relevant places.
pub fn local_symbols(alg: &QuaternionAlgebra) -> Result<Vec<(QPlace, i32)>, BrauerError> {
    let places = relevant_places(&alg.a, &alg.b)?;
    let table: Vec<(QPlace, i32)> = places
        .into_iter()
        .map(|pl| Ok((pl, local_hilbert(&alg.a, &alg.b, pl)?)))
        .collect::<Result<_, BrauerError>>()?;
    // product formula self-check: an even number of -1 entries
    let minus = table.iter().filter(|(_, s)| *s == -1).count();
    assert!(
        minus % 2 == 0,
        "product formula violated for ({}, {})",
        format_rational(&alg.a),
        format_rational(&alg.b)
    );
    Ok(table)
}

pub fn is_division(alg: &QuaternionAlgebra) -> Result<bool, BrauerError> {
    Ok(local_symbols(alg)?.iter().any(|(_, s)| *s == -1))
}

/// Is d a square in the completion of Q at the given place?
fn is_local_square(d: i64, place: QPlace) -> bool {
    debug_assert_ne!(d, 0);
    match place {
        QPlace::Infinity => d > 0,
        QPlace::Prime(p) => {
            let (v, u) = val_unit(d, p);
            if v % 2 == 1 {
                return false;
            }
            if p == 2 {
                u.rem_euclid(8) == 1
            } else {
                legendre(u, p) == 1
            }
        }
    }
}

/// Does A split over Q(sqrt(d))? True when d is a square, when A is
/// already split, and otherwise exactly when d stays a non-square in
/// every completion where A ramifies (equivalently, the ternary form
/// <a, b, -ab> represents d).
pub fn splits_over_quadratic(alg: &QuaternionAlgebra, d: &Rational) -> Result<bool, BrauerError> {
    if d.is_zero() {
        return Err(BrauerError::ZeroSymbolEntry);
    }
    let sd = squarefree_part(d)?;
    if sd == 1 {
        return Ok(true);
    }
    let table = local_symbols(alg)?;
    Ok(table
        .iter()
        .filter(|(_, s)| *s == -1)
        .all(|(pl, _)| !is_local_square(sd, *pl)))
}

/// Is A split by E (x) K for K = Q? Each degree-1 factor of E demands A
/// split outright; each degree-2 factor demands splitting over its
/// discriminant field. Factors of degree >= 3 are out of decidable scope.
pub fn etale_splits_quaternion(
    alg: &QuaternionAlgebra,
    e: &EtaleAlgebra,
) -> Result<bool, BrauerError> {
    let mut split_needed = false;
    let mut discs = Vec::new();
    for p in e.factors() {
        match p.degree() {
            Some(1) => split_needed = true,
            Some(2) => {
                let beta = p.coeff(1);
                let gamma = p.coeff(0);
                discs.push(&beta * &beta - rat(4) * gamma);
            }
            Some(d) => return Err(BrauerError::UnsupportedFactorDegree(d)),
            None => unreachable!("etale factors are nonconstant"),
        }
    }
    if split_needed && is_division(alg)? {
        return Ok(false);
    }
    for d in discs {
        if !splits_over_quadratic(alg, &d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Machine-checkable transcript for a non-retract-rationality witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub quaternion: (String, String),
    pub partition: (usize, usize, usize),
    pub division_symbols: Vec<(QPlace, i32)>,
    pub split_discriminants: Vec<(String, bool)>,
}

/// Builds the even-degree witness algebra E = E1^{n1} x E2 x E3 with
/// Ei = Q(sqrt(a_i)), a3 = a1 a2, n1 = n/2 - 2, and the certificate
/// that A is division yet split by E.
pub fn non_retract_witness(
    n: usize,
    alg: &QuaternionAlgebra,
) -> Result<(EtaleAlgebra, Certificate), BrauerError> {
    if n < 6 || n % 2 != 0 {
        return Err(BrauerError::InvalidWitnessDegree(n));
    }
    let a1 = alg.a.clone();
    let a2 = alg.b.clone();
    let a3 = &a1 * &a2;
    for (i, ai) in [&a1, &a2, &a3].into_iter().enumerate() {
        if is_square(ai)? {
            return Err(BrauerError::SquareParameter(i + 1));
        }
    }
    let symbols = local_symbols(alg)?;
    if !symbols.iter().any(|(_, s)| *s == -1) {
        return Err(BrauerError::NotDivision);
    }
    let n1 = n / 2 - 2;
    let quad = |ai: &Rational| Poly::new(vec![-ai.clone(), rat(0), rat(1)]);
    let mut factors = vec![quad(&a1); n1];
    factors.push(quad(&a2));
    factors.push(quad(&a3));
    let e = EtaleAlgebra::new(factors)?;

    let mut split_discriminants = Vec::new();
    for p in e.factors() {
        let beta = p.coeff(1);
        let d = &beta * &beta - rat(4) * p.coeff(0);
        split_discriminants.push((format_rational(&d), splits_over_quadratic(alg, &d)?));
    }
    debug_assert!(split_discriminants.iter().all(|(_, ok)| *ok));
    let cert = Certificate {
        n,
        quaternion: (format_rational(&alg.a), format_rational(&alg.b)),
        partition: (n1, 1, 1),
        division_symbols: symbols,
        split_discriminants,
    };
    Ok((e, cert))
}

/// Re-verifies both component facts of a certificate from scratch.
pub fn verify_certificate(cert: &Certificate, e: &EtaleAlgebra) -> Result<bool, BrauerError> {
    let a = crate::exactnum::parse_rational(&cert.quaternion.0)?;
    let b = crate::exactnum::parse_rational(&cert.quaternion.1)?;
    let alg = QuaternionAlgebra::new(a, b)?;
    if e.degree() != cert.n {
        return Ok(false);
    }
    Ok(is_division(&alg)? && etale_splits_quaternion(&alg, e)?)
}

fn strip_place(f: &Poly, pi: &Poly) -> (u32, Poly) {
    let mut v = 0;
    let mut rem = f.clone();
    loop {
        let (q, r) = rem.divmod(pi).unwrap();
        if r.is_zero() {
            v += 1;
            rem = q;
        } else {
            return (v, rem);
        }
    }
}

fn residue_of_rational(u: &Rational) -> Result<Residue, BrauerError> {
    let sf = squarefree_part(u)?;
    Ok(if sf == 1 { Residue::Trivial } else { Residue::Class(sf) })
}

/// Tame residue of the symbol (f, g) at a place of P^1 over Q:
/// the class of (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} in the residue
/// field, modulo squares. Degree-1 places and infinity are decided;
/// higher-degree places return the representative undecided.
pub fn tame_residue(alg: &QuaternionOverFt, place: &Place) -> Result<ResidueClass, BrauerError> {
    match place {
        Place::Infinity => {
            let vf = -(alg.f.degree().unwrap() as i64);
            let vg = -(alg.g.degree().unwrap() as i64);
            let sign = if (vf * vg) % 2 == 0 { rat(1) } else { rat(-1) };
            let u = sign * rat_pow(&alg.f.lc(), vg) * rat_pow(&alg.g.lc(), -vf);
            Ok(ResidueClass {
                place: place.clone(),
                residue: residue_of_rational(&u)?,
            })
        }
        Place::Finite(pi) => {
            let deg = pi.degree().filter(|&d| d >= 1).ok_or(BrauerError::BadPlace)?;
            if !pi.is_monic() {
                return Err(BrauerError::BadPlace);
            }
            let (vf, f0) = strip_place(&alg.f, pi);
            let (vg, g0) = strip_place(&alg.g, pi);
            let sign = if (vf * vg) % 2 == 0 { rat(1) } else { rat(-1) };
            if deg == 1 {
                let t0 = -pi.coeff(0);
                let u = sign * rat_pow(&f0.eval(&t0), vg as i64)
                    / rat_pow(&g0.eval(&t0), vf as i64);
                Ok(ResidueClass {
                    place: place.clone(),
                    residue: residue_of_rational(&u)?,
                })
            } else {
                // representative modulo pi, squareness left undecided
                let fpow = f0.pow(vg).rem(pi)?;
                let gpow = g0.pow(vf).rem(pi)?;
                let (d, ginv, _) = gpow.xgcd(pi);
                if d.degree() != Some(0) {
                    return Err(BrauerError::BadPlace);
                }
                let rep = (&(&fpow * &ginv).rem(pi)? * &Poly::constant(sign)).rem(pi)?;
                if rep.degree() == Some(0) {
                    return Ok(ResidueClass {
                        place: place.clone(),
                        residue: residue_of_rational(&rep.coeff(0))?,
                    });
                }
                Ok(ResidueClass {
                    place: place.clone(),
                    residue: Residue::Undecided(rep),
                })
            }
        }
    }
}

/// Specialization of (f, g) at a rational point where the algebra is
/// unramified and both entries are nonzero.
pub fn specialize(alg: &QuaternionOverFt, t0: &Rational) -> Result<QuaternionAlgebra, BrauerError> {
    let pi = Poly::new(vec![-t0.clone(), rat(1)]);
    let rc = tame_residue(alg, &Place::Finite(pi))?;
    if rc.residue != Residue::Trivial {
        return Err(BrauerError::Ramified);
    }
    let fv = alg.f.eval(t0);
    let gv = alg.g.eval(t0);
    if fv.is_zero() || gv.is_zero() {
        return Err(BrauerError::ZeroEntry);
    }
    QuaternionAlgebra::new(fv, gv)
}

/// Replays the residue-triviality argument: a nontrivial residue class
/// (b) at a rational place is incompatible with the symbol being split
/// by all three quadratics Q(sqrt(a_i)) -- either (b) differs from some
/// (a_i) directly, or it matches all three and then
/// (b) = (a1) + (a2) + (a3) = (a1 a2 a3) = 0 forces (b) trivial.
pub fn claim_check(
    residue: &ResidueClass,
    a1: &Rational,
    a2: &Rational,
) -> Result<bool, BrauerError> {
    let b = match &residue.residue {
        Residue::Trivial => return Ok(false),
        Residue::Class(b) => *b,
        Residue::Undecided(_) => return Err(BrauerError::NonRationalResidue),
    };
    let a3 = a1 * a2;
    let classes = [
        squarefree_part(a1)?,
        squarefree_part(a2)?,
        squarefree_part(&a3)?,
    ];
    let matches_all = classes.iter().all(|&c| c == b);
    if matches_all {
        // (b) = (a1 a2 a3) which is the trivial class, contradicting
        // b nontrivial
        let product_class = squarefree_part(&(&(a1 * a2) * &a3))?;
        Ok(product_class == 1 && b != 1)
    } else {
        Ok(true)
    }
}

/// For odd-degree E with factors of degree <= 2, no division algebra is
/// split by E (some factor has degree 1). Verified on a deterministic
/// sample of division algebras.
pub fn h1_triviality_check(e: &EtaleAlgebra, sample_size: usize) -> Result<bool, BrauerError> {
    if e.degree() % 2 == 0 {
        return Err(BrauerError::EvenDegreeAlgebra);
    }
    for p in e.factors() {
        match p.degree() {
            Some(1) | Some(2) => {}
            Some(d) => return Err(BrauerError::UnsupportedFactorDegree(d)),
            None => unreachable!(),
        }
    }
    for alg in sample_division_algebras(sample_size) {
        if etale_splits_quaternion(&alg, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic list of pairwise-distinct division algebras.
pub fn sample_division_algebras(count: usize) -> Vec<QuaternionAlgebra> {
    let pool: &[i64] = &[-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, 11, 13, -13, 17, 19, -19, 21, 23];
    let mut out = Vec::new();
    'outer: for &a in pool {
        for &b in pool {
            let alg = QuaternionAlgebra::from_i64(a, b).unwrap();
            if is_division(&alg).unwrap() && !out.contains(&alg) {
                out.push(alg);
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    out
}
