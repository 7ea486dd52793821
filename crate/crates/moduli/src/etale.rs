//! Arithmetic in etale Q-algebras E = prod Q[x]/(p_i) with squarefree
//! monic p_i. Elements are coordinate vectors in the concatenated power
//! basis {1, x, ..., x^{deg p_i - 1}} of the factors.

use crate::exactnum::{rat, NumError, Poly, Rational};
use crate::linal::Matrix;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EtaleError {
    #[error("factor {0} is not monic")]
    NotMonic(usize),
    #[error("factor {0} is not squarefree")]
    NotSquarefree(usize),
    #[error("factor {0} has degree 0")]
    ConstantFactor(usize),
    #[error("algebra must have at least one factor")]
    NoFactors,
    #[error("element has {0} coordinates, algebra has degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a unit: component in factor {factor} shares a root with its modulus")]
    NotAUnit { factor: usize },
    #[error("generator search exhausted after {0} candidates (malformed algebra?)")]
    GeneratorSearchExhausted(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// E = Q[x]/(p_1) x ... x Q[x]/(p_r), each p_i monic squarefree of
/// degree >= 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaleAlgebra {
    factors: Vec<Poly>,
    offsets: Vec<usize>,
    degree: usize,
}

/// Coordinates of an element in the distinguished basis of its algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElement {
    coords: Vec<Rational>,
}

impl AlgElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        AlgElement { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl EtaleAlgebra {
    pub fn new(factors: Vec<Poly>) -> Result<Self, EtaleError> {
        if factors.is_empty() {
            return Err(EtaleError::NoFactors);
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut degree = 0;
        for (i, p) in factors.iter().enumerate() {
            match p.degree() {
                None | Some(0) => return Err(EtaleError::ConstantFactor(i)),
                Some(d) => {
                    if !p.is_monic() {
                        return Err(EtaleError::NotMonic(i));
                    }
                    if !p.is_squarefree()? {
                        return Err(EtaleError::NotSquarefree(i));
                    }
                    offsets.push(degree);
                    degree += d;
                }
            }
        }
        Ok(EtaleAlgebra {
            factors,
            offsets,
            degree,
        })
    }

    /// The split algebra Q^n, presented by the linear factors x - d for
    /// d = 0, 1, ..., n-1.
    pub fn split(n: usize) -> Result<Self, EtaleError> {
        EtaleAlgebra::new(
            (0..n)
                .map(|d| Poly::new(vec![rat(-(d as i64)), rat(1)]))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|p| p.degree() == Some(1))
    }

    fn check(&self, u: &AlgElement) -> Result<(), EtaleError> {
        if u.coords.len() != self.degree {
            return Err(EtaleError::DegreeMismatch(u.coords.len(), self.degree));
        }
        Ok(())
    }

    /// Component of u in factor i, as a polynomial of degree < deg p_i.
    pub fn component(&self, u: &AlgElement, i: usize) -> Poly {
        let d = self.factors[i].degree().unwrap();
        let off = self.offsets[i];
        Poly::new(u.coords[off..off + d].to_vec())
    }

    fn assemble(&self, comps: Vec<Poly>) -> AlgElement {
        let mut coords = Vec::with_capacity(self.degree);
        for (p, c) in self.factors.iter().zip(comps) {
            let d = p.degree().unwrap();
            for j in 0..d {
                coords.push(c.coeff(j));
            }
        }
        AlgElement::new(coords)
    }

    pub fn from_components(&self, comps: Vec<Poly>) -> Result<AlgElement, EtaleError> {
        assert_eq!(comps.len(), self.factors.len());
        let mut reduced = Vec::with_capacity(comps.len());
        for (p, c) in self.factors.iter().zip(comps) {
            reduced.push(c.rem(p)?);
        }
        Ok(self.assemble(reduced))
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement::new(vec![rat(0); self.degree])
    }

    pub fn one(&self) -> AlgElement {
        self.scalar(&rat(1))
    }

    /// The image of a rational scalar under the diagonal embedding.
    pub fn scalar(&self, c: &Rational) -> AlgElement {
        let mut coords = vec![rat(0); self.degree];
        for &off in &self.offsets {
            coords[off] = c.clone();
        }
        AlgElement::new(coords)
    }

    pub fn basis_element(&self, i: usize) -> AlgElement {
        let mut coords = vec![rat(0); self.degree];
        coords[i] = rat(1);
        AlgElement::new(coords)
    }

    pub fn add(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement, EtaleError> {
        self.check(u)?;
        self.check(v)?;
        Ok(AlgElement::new(
            u.coords.iter().zip(&v.coords).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement, EtaleError> {
        self.check(u)?;
        self.check(v)?;
        Ok(AlgElement::new(
            u.coords.iter().zip(&v.coords).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scalar_mul(&self, c: &Rational, u: &AlgElement) -> Result<AlgElement, EtaleError> {
        self.check(u)?;
        Ok(AlgElement::new(u.coords.iter().map(|a| a * c).collect()))
    }

    pub fn mul(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement, EtaleError> {
        self.check(u)?;
        self.check(v)?;
        let mut comps = Vec::with_capacity(self.factors.len());
        for (i, p) in self.factors.iter().enumerate() {
            let prod = &self.component(u, i) * &self.component(v, i);
            comps.push(prod.rem(p)?);
        }
        Ok(self.assemble(comps))
    }

    pub fn inverse(&self, u: &AlgElement) -> Result<AlgElement, EtaleError> {
        self.check(u)?;
        let mut comps = Vec::with_capacity(self.factors.len());
        for (i, p) in self.factors.iter().enumerate() {
            let c = self.component(u, i);
            let (d, s, _) = c.xgcd(p);
            if d.degree() != Some(0) {
                return Err(EtaleError::NotAUnit { factor: i });
            }
            comps.push(s.rem(p)?);
        }
        Ok(self.assemble(comps))
    }

    pub fn is_unit(&self, u: &AlgElement) -> Result<bool, EtaleError> {
        self.check(u)?;
        Ok(!self.norm(u)?.is_zero())
    }

    pub fn pow(&self, u: &AlgElement, e: usize) -> Result<AlgElement, EtaleError> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, u)?;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by u in the distinguished basis
    /// (block diagonal across factors).
    pub fn mult_matrix(&self, u: &AlgElement) -> Result<Matrix, EtaleError> {
        self.check(u)?;
        let mut m = Matrix::zeros(self.degree, self.degree);
        for (i, p) in self.factors.iter().enumerate() {
            let d = p.degree().unwrap();
            let off = self.offsets[i];
            let c = self.component(u, i);
            for j in 0..d {
                let col = (&c * &Poly::monomial(rat(1), j)).rem(p)?;
                for k in 0..d {
                    m[(off + k, off + j)] = col.coeff(k);
                }
            }
        }
        Ok(m)
    }

    /// Characteristic polynomial of multiplication by u: the product of
    /// the per-factor characteristic polynomials, computed exactly by
    /// Faddeev-LeVerrier.
    pub fn char_poly(&self, u: &AlgElement) -> Result<Poly, EtaleError> {
        self.check(u)?;
        let mut out = Poly::one();
        for (i, p) in self.factors.iter().enumerate() {
            let d = p.degree().unwrap();
            let off = self.offsets[i];
            let full = self.mult_matrix(u)?;
            let mut block = Matrix::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    block[(r, c)] = full[(off + r, off + c)].clone();
                }
            }
            out = &out * &char_poly_matrix(&block);
        }
        Ok(out)
    }

    pub fn trace(&self, u: &AlgElement) -> Result<Rational, EtaleError> {
        Ok(self.mult_matrix(u)?.trace())
    }

    pub fn norm(&self, u: &AlgElement) -> Result<Rational, EtaleError> {
        Ok(self.mult_matrix(u)?.det())
    }

    pub fn has_distinct_eigenvalues(&self, u: &AlgElement) -> Result<bool, EtaleError> {
        Ok(self.char_poly(u)?.is_squarefree()?)
    }

    /// Gram matrix of the trace form in the distinguished basis.
    pub fn trace_gram(&self) -> Result<Matrix, EtaleError> {
        let n = self.degree;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = self.trace(&self.mul(&self.basis_element(i), &self.basis_element(j))?)?;
                g[(i, j)] = t.clone();
                g[(j, i)] = t;
            }
        }
        Ok(g)
    }

    /// The unique c in E with l(x) = trace(c*x) for all x, where l is the
    /// linear functional with the given coefficient row. The trace form
    /// is nondegenerate over Q, so the Gram system is always solvable.
    pub fn trace_dual(&self, functional: &[Rational]) -> Result<AlgElement, EtaleError> {
        if functional.len() != self.degree {
            return Err(EtaleError::DegreeMismatch(functional.len(), self.degree));
        }
        let g = self.trace_gram()?;
        let c = g
            .solve(functional)
            .expect("trace form nondegenerate on an etale algebra");
        Ok(AlgElement::new(c))
    }

    /// Deterministic generator search: candidate k takes component
    /// x + (seed + (k+1)*i) in factor i. The first candidate whose
    /// characteristic polynomial is squarefree is returned; the bad
    /// spacings form a finite set, so the loop terminates.
    pub fn find_generator(&self, seed: i64) -> Result<AlgElement, EtaleError> {
        const CAP: usize = 1_000_000;
        for k in 0..CAP {
            let comps: Vec<Poly> = (0..self.factors.len())
                .map(|i| {
                    let shift = seed + (k as i64 + 1) * i as i64;
                    let lin = Poly::new(vec![rat(shift), rat(1)]);
                    if self.factors[i].degree() == Some(1) {
                        Poly::constant(lin.coeff(0))
                    } else {
                        lin
                    }
                })
                .collect();
            let cand = self.from_components(comps)?;
            if self.has_distinct_eigenvalues(&cand)? {
                return Ok(cand);
            }
        }
        Err(EtaleError::GeneratorSearchExhausted(CAP))
    }
}

/// Faddeev-LeVerrier: exact characteristic polynomial det(xI - M),
/// monic of degree n.
pub fn char_poly_matrix(m: &Matrix) -> Poly {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let mut coeffs = vec![rat(0); n + 1];
    coeffs[n] = rat(1);
    let mut mk = m.clone();
    let mut c = rat(1);
    for k in 1..=n {
        if k > 1 {
            let shifted = mk.add(&Matrix::identity(n).scale(&c)).unwrap();
            mk = m.matmul(&shifted).unwrap();
        }
        c = -mk.trace() / rat(k as i64);
        coeffs[n - k] = c.clone();
    }
    Poly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q_x5_minus_2() -> EtaleAlgebra {
        EtaleAlgebra::new(vec![Poly::from_i64(&[-2, 0, 0, 0, 0, 1])]).unwrap()
    }

    fn rand_elt(alg: &EtaleAlgebra, rng: &mut ChaCha8Rng) -> AlgElement {
        AlgElement::new(
            (0..alg.degree())
                .map(|_| rat(rng.gen_range(-10..=10)))
                .collect(),
        )
    }

    #[test]
    fn construction_rejects_bad_factors() {
        assert_eq!(
            EtaleAlgebra::new(vec![Poly::from_i64(&[1, -2, 1])]),
            Err(EtaleError::NotSquarefree(0))
        );
        assert_eq!(
            EtaleAlgebra::new(vec![Poly::from_i64(&[-2, 2])]),
            Err(EtaleError::NotMonic(0))
        );
        assert_eq!(EtaleAlgebra::new(vec![]), Err(EtaleError::NoFactors));
    }

    #[test]
    fn defining_relation() {
        // x^4 * x = 2 in Q[x]/(x^5-2)
        let alg = q_x5_minus_2();
        let x4 = alg.basis_element(4);
        let x = alg.basis_element(1);
        assert_eq!(alg.mul(&x4, &x).unwrap(), alg.scalar(&rat(2)));
    }

    #[test]
    fn split_mul_is_coordinatewise() {
        let alg = EtaleAlgebra::split(5).unwrap();
        let u = AlgElement::new((1..=5).map(rat).collect());
        let ones = alg.one();
        assert_eq!(alg.mul(&u, &ones).unwrap(), u);
    }

    #[test]
    fn mixed_product() {
        // Q[x]/(x^2+1) x Q[x]/(x-1): (x,1)*(x,1) = (-1,1)
        let alg =
            EtaleAlgebra::new(vec![Poly::from_i64(&[1, 0, 1]), Poly::from_i64(&[-1, 1])]).unwrap();
        let u = AlgElement::new(vec![rat(0), rat(1), rat(1)]);
        let sq = alg.mul(&u, &u).unwrap();
        assert_eq!(sq, AlgElement::new(vec![rat(-1), rat(0), rat(1)]));
    }

    #[test]
    fn inverse_examples() {
        let alg = EtaleAlgebra::new(vec![Poly::from_i64(&[1, 0, 1])]).unwrap();
        assert_eq!(alg.inverse(&alg.one()).unwrap(), alg.one());
        // inverse(x) = -x in Q[x]/(x^2+1)
        let x = alg.basis_element(1);
        assert_eq!(alg.inverse(&x).unwrap(), AlgElement::new(vec![rat(0), rat(-1)]));

        let split = EtaleAlgebra::split(5).unwrap();
        let u = AlgElement::new(vec![rat(1), rat(2), rat(3), rat(4), rat(0)]);
        assert_eq!(split.inverse(&u), Err(EtaleError::NotAUnit { factor: 4 }));
    }

    #[test]
    fn char_poly_trace_norm() {
        let alg = q_x5_minus_2();
        let x = alg.basis_element(1);
        assert_eq!(alg.char_poly(&x).unwrap(), Poly::from_i64(&[-2, 0, 0, 0, 0, 1]));
        assert_eq!(alg.trace(&alg.one()).unwrap(), rat(5));

        let split = EtaleAlgebra::split(5).unwrap();
        let u = AlgElement::new((1..=5).map(rat).collect());
        assert_eq!(split.norm(&u).unwrap(), rat(120));
    }

    #[test]
    fn distinct_eigenvalues() {
        let alg = q_x5_minus_2();
        assert!(alg.has_distinct_eigenvalues(&alg.basis_element(1)).unwrap());
        assert!(!alg.has_distinct_eigenvalues(&alg.one()).unwrap());

        let split = EtaleAlgebra::split(5).unwrap();
        let u = AlgElement::new((0..5).map(rat).collect());
        assert!(split.has_distinct_eigenvalues(&u).unwrap());
    }

    #[test]
    fn trace_dual_examples() {
        // l = trace itself => c = 1
        let alg = q_x5_minus_2();
        let l: Vec<Rational> = (0..5)
            .map(|i| alg.trace(&alg.basis_element(i)).unwrap())
            .collect();
        assert_eq!(alg.trace_dual(&l).unwrap(), alg.one());

        // split: trace form is the standard dot product
        let split = EtaleAlgebra::split(4).unwrap();
        let l: Vec<Rational> = (1..=4).map(rat).collect();
        assert_eq!(split.trace_dual(&l).unwrap(), AlgElement::new(l));

        // Q[x]/(x^2+1), l(a+bx) = b => c = -x/2
        let gauss = EtaleAlgebra::new(vec![Poly::from_i64(&[1, 0, 1])]).unwrap();
        let c = gauss.trace_dual(&[rat(0), rat(1)]).unwrap();
        assert_eq!(c, AlgElement::new(vec![rat(0), ratio(-1, 2)]));
    }

    #[test]
    fn find_generator_examples() {
        let alg = q_x5_minus_2();
        let a = alg.find_generator(0).unwrap();
        assert!(alg.has_distinct_eigenvalues(&a).unwrap());

        // frozen regression value for the split algebra: components
        // seed, seed+1, ..., seed+n-1
        let split = EtaleAlgebra::split(5).unwrap();
        let a = split.find_generator(0).unwrap();
        assert_eq!(a, AlgElement::new((0..5).map(rat).collect()));
        assert!(split.has_distinct_eigenvalues(&a).unwrap());

        // degree 1: 0 has squarefree char poly x - 0
        let q = EtaleAlgebra::split(1).unwrap();
        assert_eq!(q.find_generator(0).unwrap(), AlgElement::new(vec![rat(0)]));

        // repeated factors are separated by shifting
        let rep = EtaleAlgebra::new(vec![Poly::from_i64(&[1, 0, 1]), Poly::from_i64(&[1, 0, 1])])
            .unwrap();
        let a = rep.find_generator(0).unwrap();
        assert!(rep.has_distinct_eigenvalues(&a).unwrap());
    }

    #[test]
    fn ring_axioms_random() {
        let algebras = vec![
            q_x5_minus_2(),
            EtaleAlgebra::split(5).unwrap(),
            EtaleAlgebra::new(vec![Poly::from_i64(&[1, 0, 1]), Poly::from_i64(&[-2, 0, 0, 1])])
                .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in &algebras {
            for _ in 0..100 {
                let u = rand_elt(alg, &mut rng);
                let v = rand_elt(alg, &mut rng);
                let w = rand_elt(alg, &mut rng);
                let uv_w = alg.mul(&alg.mul(&u, &v).unwrap(), &w).unwrap();
                let u_vw = alg.mul(&u, &alg.mul(&v, &w).unwrap()).unwrap();
                assert_eq!(uv_w, u_vw);
                assert_eq!(alg.mul(&u, &v).unwrap(), alg.mul(&v, &u).unwrap());
                let lhs = alg.mul(&u, &alg.add(&v, &w).unwrap()).unwrap();
                let rhs = alg
                    .add(&alg.mul(&u, &v).unwrap(), &alg.mul(&u, &w).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_form_nondegenerate() {
        for alg in [
            q_x5_minus_2(),
            EtaleAlgebra::split(7).unwrap(),
            EtaleAlgebra::new(vec![
                Poly::from_i64(&[-2, 0, 1]),
                Poly::from_i64(&[-3, 0, 1]),
                Poly::from_i64(&[-2, 0, 0, 1]),
            ])
            .unwrap(),
        ] {
            assert!(!alg.trace_gram().unwrap().det().is_zero());
        }
    }

    #[test]
    fn cayley_hamilton_random() {
        let algebras = vec![
            EtaleAlgebra::new(vec![Poly::from_i64(&[-2, 0, 0, 0, 0, 1])]).unwrap(),
            EtaleAlgebra::new(vec![
                Poly::from_i64(&[-2, 0, 1]),
                Poly::from_i64(&[-3, 0, 1]),
                Poly::from_i64(&[-2, 0, 0, 1]),
            ])
            .unwrap(),
            EtaleAlgebra::split(9).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for alg in &algebras {
            for _ in 0..5 {
                let u = rand_elt(alg, &mut rng);
                let m = alg.mult_matrix(&u).unwrap();
                let cp = alg.char_poly(&u).unwrap();
                let n = alg.degree();
                let mut acc = Matrix::zeros(n, n);
                let mut p = Matrix::identity(n);
                for c in cp.coeffs() {
                    acc = acc.add(&p.scale(c)).unwrap();
                    p = p.matmul(&m).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn unit_iff_nonzero_norm() {
        let alg = EtaleAlgebra::new(vec![Poly::from_i64(&[-2, 0, 1]), Poly::from_i64(&[-1, 1])])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let u = rand_elt(&alg, &mut rng);
            let inv = alg.inverse(&u);
            assert_eq!(!alg.norm(&u).unwrap().is_zero(), inv.is_ok());
            if let Ok(inv) = inv {
                assert_eq!(alg.mul(&u, &inv).unwrap(), alg.one());
            }
        }
    }
}
