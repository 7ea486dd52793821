//! Exact linear algebra over Q: RREF, rank, kernels, and canonical
//! subspaces. A subspace is stored as its reduced row echelon basis, so
//! equality of subspaces is structural equality.

use crate::etale::EtaleAlgebra;
use crate::exactnum::{rat, Rational};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LinalError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix shape mismatch")]
    ShapeMismatch,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![rat(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(LinalError::ShapeMismatch);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinalError> {
        if self.cols != other.rows {
            return Err(LinalError::ShapeMismatch);
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &out[(i, j)] + &a * &other[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalError::ShapeMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// In-place Gauss-Jordan; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].clone().recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(i, j)] - &factor * &self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = rat(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return rat(0);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det = det * &m[(c, c)];
            let inv = m[(c, c)].clone().recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &factor * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Right kernel {x : Mx = 0} as a subspace of Q^cols.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![rat(0); self.cols];
            v[f] = rat(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    /// Solves Mx = rhs for square invertible M.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return None;
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != self.cols || pivots.contains(&self.cols) {
            return None;
        }
        Some((0..self.rows).map(|i| aug[(i, self.cols)].clone()).collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(
                f,
                "[{}]",
                self.row(i)
                    .iter()
                    .map(crate::exactnum::format_rational)
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        Ok(())
    }
}

/// F-linear subspace of Q^n in canonical form: the basis matrix is in
/// reduced row echelon form with no zero rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Matrix::zeros(0, ambient),
            };
        }
        let mut m = Matrix::from_rows(vectors).unwrap();
        let pivots = m.rref_in_place();
        let dim = pivots.len();
        let rows = (0..dim).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(0, ambient)),
        }
    }

    pub fn zero_space(ambient: usize) -> Subspace {
        Subspace::span(ambient, vec![])
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.rows_vec()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.basis.clone();
        m.rref_in_place()
    }

    pub fn member(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rows = self.basis_rows();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).unwrap().rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalError> {
        if self.ambient != other.ambient {
            return Err(LinalError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(other.basis_rows().iter().all(|r| self.member(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalError> {
        if self.ambient != other.ambient {
            return Err(LinalError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::span(self.ambient, rows))
    }

    /// Zassenhaus: row-reduce [A|A; B|0]; rows with zero left block carry
    /// an intersection basis in the right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalError> {
        if self.ambient != other.ambient {
            return Err(LinalError::AmbientMismatch(self.ambient, other.ambient));
        }
        let n = self.ambient;
        let mut rows = Vec::new();
        for r in self.basis_rows() {
            let mut v = r.clone();
            v.extend(r);
            rows.push(v);
        }
        for r in other.basis_rows() {
            let mut v = r;
            v.extend(vec![rat(0); n]);
            rows.push(v);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero_space(n));
        }
        let mut m = Matrix::from_rows(rows).unwrap();
        m.rref_in_place();
        let mut inter = Vec::new();
        for i in 0..m.nrows() {
            let row = m.row(i);
            if row[..n].iter().all(|c| c.is_zero()) && row[n..].iter().any(|c| !c.is_zero()) {
                inter.push(row[n..].to_vec());
            }
        }
        Ok(Subspace::span(n, inter))
    }
}

/// Span of all products v*w in E as v, w run over bases of V and W.
pub fn mul_subspaces(
    v: &Subspace,
    w: &Subspace,
    alg: &EtaleAlgebra,
) -> Result<Subspace, LinalError> {
    let n = alg.degree();
    if v.ambient_dim() != n {
        return Err(LinalError::AmbientMismatch(v.ambient_dim(), n));
    }
    if w.ambient_dim() != n {
        return Err(LinalError::AmbientMismatch(w.ambient_dim(), n));
    }
    let mut products = Vec::new();
    for a in v.basis_rows() {
        for b in w.basis_rows() {
            let p = alg
                .mul(&crate::etale::AlgElement::new(a.clone()), &crate::etale::AlgElement::new(b))
                .expect("ambient dims checked");
            products.push(p.into_coords());
        }
    }
    Ok(Subspace::span(n, products))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etale::AlgElement;
    use crate::exactnum::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize, n: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    #[test]
    fn vandermonde_rank_five_nodes() {
        // nodes 0..4; det = prod (j - i) = 288
        let rows: Vec<Vec<Rational>> = (0..5)
            .map(|p| (0..5).map(|x| crate::exactnum::rat_pow(&rat(x), p as i64)).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        assert_eq!(m.rank(), 5);
        let mut det_oracle = rat(1);
        for i in 0..5 {
            for j in (i + 1)..5 {
                det_oracle = det_oracle * rat(j - i);
            }
        }
        assert_eq!(det_oracle, rat(288));
        assert_eq!(m.det(), rat(288));
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let m = Matrix::zeros(2, 5);
        assert_eq!(m.kernel(), Subspace::full(5));
    }

    #[test]
    fn power_rows_rank_in_split_algebra() {
        // rows 1, a, a^2, a^3 for a = (0,1,2,3,4,5) in Q^6: rank 4
        let a: Vec<Rational> = (0..6).map(rat).collect();
        let rows: Vec<Vec<Rational>> = (0..4)
            .map(|p| a.iter().map(|x| crate::exactnum::rat_pow(x, p as i64)).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        assert_eq!(m.rank(), 4);
        // brute-force cross-check: some 4x4 minor is nonzero
        let mut found = false;
        'outer: for c0 in 0..6 {
            for c1 in (c0 + 1)..6 {
                for c2 in (c1 + 1)..6 {
                    for c3 in (c2 + 1)..6 {
                        let cols = [c0, c1, c2, c3];
                        let mut mm = Matrix::zeros(4, 4);
                        for i in 0..4 {
                            for (j, &c) in cols.iter().enumerate() {
                                mm[(i, j)] = m[(i, c)].clone();
                            }
                        }
                        if !mm.det().is_zero() {
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn subspace_lattice_basics() {
        let s = Subspace::span(5, vec![e(0, 5), e(1, 5)]);
        let mut v = vec![rat(0); 5];
        v[0] = rat(1);
        v[1] = rat(1);
        assert!(s.member(&v));
        let t = Subspace::span(5, vec![e(1, 5), e(2, 5)]);
        assert_eq!(s.intersect(&t).unwrap(), Subspace::span(5, vec![e(1, 5)]));
        assert!(s.contains(&Subspace::span(5, vec![e(0, 5)])).unwrap());
        assert_eq!(
            s.contains(&Subspace::full(4)),
            Err(LinalError::AmbientMismatch(5, 4))
        );
    }

    #[test]
    fn rref_is_complete_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let rows: Vec<Vec<Rational>> = (0..3)
                .map(|_| (0..5).map(|_| rat(rng.gen_range(-5..=5))).collect())
                .collect();
            let s = Subspace::span(5, rows.clone());
            // random invertible row mix
            let mut mixed: Vec<Vec<Rational>> = Vec::new();
            for _ in 0..4 {
                let mut v = vec![rat(0); 5];
                for r in &rows {
                    let c = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
                    for (vi, ri) in v.iter_mut().zip(r) {
                        *vi = &*vi + &c * ri;
                    }
                }
                mixed.push(v);
            }
            let t = Subspace::span(5, mixed);
            assert!(s.contains(&t).unwrap());
            if t.dim() == s.dim() {
                assert_eq!(s, t);
            }
            // idempotence
            assert_eq!(s.basis().rref(), *s.basis());
        }
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..6);
            let rows: Vec<Vec<Rational>> = (0..r)
                .map(|_| (0..c).map(|_| rat(rng.gen_range(-5..=5))).collect())
                .collect();
            let m = Matrix::from_rows(rows).unwrap();
            assert_eq!(m.rank() + m.kernel().dim(), c);
        }
    }

    #[test]
    fn subspace_product_basics() {
        // split Q^5 with a = (0,1,2,3,4)
        let alg = EtaleAlgebra::split(5).unwrap();
        let ones: Vec<Rational> = vec![rat(1); 5];
        let a: Vec<Rational> = (0..5).map(rat).collect();
        let asq: Vec<Rational> = (0..5).map(|i| rat(i * i)).collect();
        let v = Subspace::span(5, vec![ones.clone(), a.clone()]);
        let w = Subspace::span(5, vec![ones.clone(), asq]);
        let vw = mul_subspaces(&v, &w, &alg).unwrap();
        assert_eq!(vw.dim(), 4);
        let powers = Subspace::span(
            5,
            (0..4)
                .map(|p| a.iter().map(|x| crate::exactnum::rat_pow(x, p)).collect())
                .collect(),
        );
        assert_eq!(vw, powers);

        // V * span{1} = V
        let one_space = Subspace::span(5, vec![ones]);
        assert_eq!(mul_subspaces(&v, &one_space, &alg).unwrap(), v);
    }

    #[test]
    fn subspace_product_respects_ideals() {
        // V, W killed in coordinate 0 => V*W killed in coordinate 0
        let alg = EtaleAlgebra::split(5).unwrap();
        let v = Subspace::span(5, vec![e(1, 5), e(2, 5)]);
        let w = Subspace::span(5, vec![e(2, 5), e(3, 5)]);
        let vw = mul_subspaces(&v, &w, &alg).unwrap();
        for r in vw.basis_rows() {
            assert!(r[0].is_zero());
        }
    }

    #[test]
    fn product_dim_invariant_under_unit_scaling() {
        let alg = EtaleAlgebra::split(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let v = Subspace::span(
                5,
                (0..2)
                    .map(|_| (0..5).map(|_| rat(rng.gen_range(-5..=5))).collect())
                    .collect(),
            );
            let w = Subspace::span(
                5,
                (0..2)
                    .map(|_| (0..5).map(|_| rat(rng.gen_range(-5..=5))).collect())
                    .collect(),
            );
            let t: Vec<Rational> = (0..5).map(|_| rat(rng.gen_range(1..=5))).collect();
            let tv = Subspace::span(
                5,
                v.basis_rows()
                    .into_iter()
                    .map(|r| {
                        alg.mul(&AlgElement::new(t.clone()), &AlgElement::new(r))
                            .unwrap()
                            .into_coords()
                    })
                    .collect(),
            );
            let vw = mul_subspaces(&v, &w, &alg).unwrap();
            let tvw = mul_subspaces(&tv, &w, &alg).unwrap();
            assert_eq!(vw.dim(), tvw.dim());
            // t(V*W) = (tV)*W
            let t_of_vw = Subspace::span(
                5,
                vw.basis_rows()
                    .into_iter()
                    .map(|r| {
                        alg.mul(&AlgElement::new(t.clone()), &AlgElement::new(r))
                            .unwrap()
                            .into_coords()
                    })
                    .collect(),
            );
            assert_eq!(t_of_vw, tvw);
        }
    }
}
