//! Canonical forms for twisted point configurations: for an odd-degree
//! etale algebra E of degree n = 2s+1 >= 5, a configuration (x, y)
//! spans a plane V in E; multiplying by W = span{1, a, ..., a^{s-1}}
//! maps V to a hyperplane, and scaling V back to the fixed hyperplane
//! H = ker(trace) produces a distinguished plane inside Z, unique up to
//! nothing. Two configurations are equivalent under the twisted group
//! exactly when their distinguished planes coincide.

use crate::etale::{AlgElement, EtaleAlgebra, EtaleError};
use crate::exactnum::{rat, Rational};
use crate::linal::{mul_subspaces, LinalError, Subspace};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParamError {
    #[error("algebra degree is even")]
    EvenDegree,
    #[error("algebra degree {0} is below the minimum 5")]
    DegreeTooSmall(usize),
    #[error("context verification failed: {0}")]
    ContextDegenerate(String),
    #[error("configuration not in general position")]
    NotInGeneralPosition,
    #[error("configuration lies outside the dense orbit")]
    NotInDenseOrbit,
    #[error("subspace is not contained in Z")]
    NotInZ,
    #[error("malformed chart profile")]
    MalformedChart,
    #[error("group element has singular matrix part")]
    SingularMatrix,
    #[error("group element has non-unit algebra part")]
    NonUnitScale,
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Linal(#[from] LinalError),
}

/// An ordered twisted configuration: the pair (x, y) in E^2, i.e. a
/// point of A(F^2 (x) E). In the split case this is the n-tuple of
/// points [x_i : y_i] on P^1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Configuration {
    pub x: AlgElement,
    pub y: AlgElement,
}

/// An element of (GL_2 x R_{E/F}(G_m))/G_m: an invertible 2x2 rational
/// matrix together with a unit of E, up to the central scaling
/// (g, t) ~ (c*g, c^{-1}*t).
#[derive(Clone, Debug)]
pub struct TwistedGroupElement {
    pub g: [[Rational; 2]; 2],
    pub t: AlgElement,
}

/// A hyperplane of E represented by its trace-dual element c, so that
/// the hyperplane is ker(x -> trace(c*x)). Normalized so the first
/// nonzero coordinate of c is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    dual: AlgElement,
}

impl Hyperplane {
    pub fn from_dual(dual: AlgElement) -> Option<Hyperplane> {
        let first = dual.coords().iter().find(|c| !c.is_zero())?.clone();
        let coords = dual.coords().iter().map(|c| c / &first).collect();
        Some(Hyperplane {
            dual: AlgElement::new(coords),
        })
    }

    pub fn dual(&self) -> &AlgElement {
        &self.dual
    }

    pub fn as_subspace(&self, alg: &EtaleAlgebra) -> Result<Subspace, ParamError> {
        let n = alg.degree();
        let mut rows = Vec::with_capacity(1);
        let row: Vec<Rational> = (0..n)
            .map(|i| alg.trace(&alg.mul(&self.dual, &alg.basis_element(i))?))
            .collect::<Result<_, _>>()?;
        rows.push(row);
        Ok(crate::linal::Matrix::from_rows(rows)?.kernel())
    }
}

/// Frozen data defining one parametrization of the twisted moduli space:
/// the algebra, a generator a with distinct eigenvalues, the multiplier
/// space W, the reference hyperplane H with unit dual c_H, and
/// Z = {b in E : b*W inside H} with its ordered basis.
#[derive(Clone, Debug)]
pub struct ParamContext {
    algebra: EtaleAlgebra,
    s: usize,
    a: AlgElement,
    w: Subspace,
    c_h: AlgElement,
    z: Subspace,
    zbasis: Vec<AlgElement>,
}

impl ParamContext {
    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.algebra
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn generator(&self) -> &AlgElement {
        &self.a
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    pub fn c_h(&self) -> &AlgElement {
        &self.c_h
    }

    pub fn z(&self) -> &Subspace {
        &self.z
    }

    pub fn zbasis(&self) -> &[AlgElement] {
        &self.zbasis
    }
}

fn powers(alg: &EtaleAlgebra, a: &AlgElement, count: usize) -> Result<Vec<AlgElement>, EtaleError> {
    let mut out = Vec::with_capacity(count);
    let mut acc = alg.one();
    for _ in 0..count {
        out.push(acc.clone());
        acc = alg.mul(&acc, a)?;
    }
    Ok(out)
}

/// Builds a parametrization context with the default reference
/// hyperplane H = ker(trace), i.e. c_H = 1.
pub fn build_context(alg: &EtaleAlgebra, seed: i64) -> Result<ParamContext, ParamError> {
    let c_h = alg.one();
    build_context_with_hyperplane(alg, seed, c_h)
}

/// As `build_context` but with an injected unit dual c_H, used to check
/// that the induced equivalence does not depend on the hyperplane.
pub fn build_context_with_hyperplane(
    alg: &EtaleAlgebra,
    seed: i64,
    c_h: AlgElement,
) -> Result<ParamContext, ParamError> {
    let n = alg.degree();
    if n % 2 == 0 {
        return Err(ParamError::EvenDegree);
    }
    if n < 5 {
        return Err(ParamError::DegreeTooSmall(n));
    }
    let s = (n - 1) / 2;
    if !alg.is_unit(&c_h)? {
        return Err(ParamError::ContextDegenerate(
            "hyperplane dual is not a unit".into(),
        ));
    }
    let a = alg.find_generator(seed)?;

    // 1, a, ..., a^{2s} must span E: the (2s+1)-point Vandermonde step,
    // realized as an exact rank computation.
    let all_powers = powers(alg, &a, 2 * s + 1)?;
    let power_rows: Vec<Vec<Rational>> = all_powers.iter().map(|p| p.coords().to_vec()).collect();
    let full = Subspace::span(n, power_rows.clone());
    if full.dim() != 2 * s + 1 {
        return Err(ParamError::ContextDegenerate(format!(
            "powers of the generator span dimension {} instead of {}",
            full.dim(),
            2 * s + 1
        )));
    }

    let w = Subspace::span(n, power_rows[..s].to_vec());

    // Z = kernel of the s conditions trace(c_H * b * a^j) = 0, j < s.
    let mut cond_rows = Vec::with_capacity(s);
    for j in 0..s {
        let cw = alg.mul(&c_h, &all_powers[j])?;
        let row: Vec<Rational> = (0..n)
            .map(|i| alg.trace(&alg.mul(&cw, &alg.basis_element(i))?))
            .collect::<Result<_, _>>()?;
        cond_rows.push(row);
    }
    let z = crate::linal::Matrix::from_rows(cond_rows)?.kernel();
    if z.dim() != s + 1 {
        return Err(ParamError::ContextDegenerate(format!(
            "Z has dimension {} instead of {}",
            z.dim(),
            s + 1
        )));
    }
    let zbasis = z
        .basis_rows()
        .into_iter()
        .map(AlgElement::new)
        .collect::<Vec<_>>();

    let ctx = ParamContext {
        algebra: alg.clone(),
        s,
        a: a.clone(),
        w,
        c_h,
        z,
        zbasis,
    };

    // Witness V0 = span{1, a^s}: V0*W must be a hyperplane with unit
    // dual, i.e. V0 maps into the dense orbit.
    let v0 = Subspace::span(
        n,
        vec![
            all_powers[0].coords().to_vec(),
            all_powers[s].coords().to_vec(),
        ],
    );
    let h0 = f_w(&ctx, &v0).map_err(|e| {
        ParamError::ContextDegenerate(format!("witness plane failed the product test: {e}"))
    })?;
    if !alg.is_unit(h0.dual())? {
        return Err(ParamError::ContextDegenerate(
            "witness hyperplane dual is not a unit".into(),
        ));
    }
    Ok(ctx)
}

/// The twisted group action: (x, y) -> (t*(g11 x + g12 y), t*(g21 x + g22 y)).
pub fn act(
    alg: &EtaleAlgebra,
    e: &TwistedGroupElement,
    cfg: &Configuration,
) -> Result<Configuration, ParamError> {
    let det = &e.g[0][0] * &e.g[1][1] - &e.g[0][1] * &e.g[1][0];
    if det.is_zero() {
        return Err(ParamError::SingularMatrix);
    }
    if !alg.is_unit(&e.t)? {
        return Err(ParamError::NonUnitScale);
    }
    let row = |i: usize| -> Result<AlgElement, ParamError> {
        let gx = alg.scalar_mul(&e.g[i][0], &cfg.x)?;
        let gy = alg.scalar_mul(&e.g[i][1], &cfg.y)?;
        Ok(alg.mul(&e.t, &alg.add(&gx, &gy)?)?)
    };
    Ok(Configuration {
        x: row(0)?,
        y: row(1)?,
    })
}

/// f_W: V -> V*W, defined when dim(V*W) = 2s; the image hyperplane is
/// returned through its normalized trace-dual.
pub fn f_w(ctx: &ParamContext, v: &Subspace) -> Result<Hyperplane, ParamError> {
    let alg = &ctx.algebra;
    let n = alg.degree();
    if v.dim() != 2 {
        return Err(ParamError::NotInGeneralPosition);
    }
    let vw = mul_subspaces(v, &ctx.w, alg)?;
    if vw.dim() != 2 * ctx.s {
        return Err(ParamError::NotInGeneralPosition);
    }
    // dual = kernel of c -> (trace(c * basis of VW))
    let rows: Vec<Vec<Rational>> = vw
        .basis_rows()
        .into_iter()
        .map(|b| {
            let b = AlgElement::new(b);
            (0..n)
                .map(|i| Ok(alg.trace(&alg.mul(&b, &alg.basis_element(i))?)?))
                .collect::<Result<Vec<_>, ParamError>>()
        })
        .collect::<Result<_, _>>()?;
    let ker = crate::linal::Matrix::from_rows(rows)?.kernel();
    debug_assert_eq!(ker.dim(), 1);
    let dual = AlgElement::new(ker.basis_rows().remove(0));
    Hyperplane::from_dual(dual).ok_or(ParamError::NotInGeneralPosition)
}

fn config_plane(alg: &EtaleAlgebra, cfg: &Configuration) -> Subspace {
    Subspace::span(
        alg.degree(),
        vec![cfg.x.coords().to_vec(), cfg.y.coords().to_vec()],
    )
}

/// Canonical form of a configuration: the unique plane t*V inside Z with
/// f_W(t*V) = H, where t = c_V * c_H^{-1}.
pub fn canonical(ctx: &ParamContext, cfg: &Configuration) -> Result<Subspace, ParamError> {
    let alg = &ctx.algebra;
    let v = config_plane(alg, cfg);
    if v.dim() != 2 {
        return Err(ParamError::NotInGeneralPosition);
    }
    let c_v = f_w(ctx, &v)?.dual().clone();
    if !alg.is_unit(&c_v)? {
        return Err(ParamError::NotInDenseOrbit);
    }
    let t = alg.mul(&c_v, &alg.inverse(&ctx.c_h)?)?;
    let tv = Subspace::span(
        alg.degree(),
        v.basis_rows()
            .into_iter()
            .map(|r| Ok(alg.mul(&t, &AlgElement::new(r))?.into_coords()))
            .collect::<Result<Vec<_>, ParamError>>()?,
    );
    // Postconditions: tV sits inside Z and maps back to H.
    if !ctx.z.contains(&tv)? {
        return Err(ParamError::ContextDegenerate(
            "canonical plane escaped Z".into(),
        ));
    }
    let h = f_w(ctx, &tv)?;
    let expected = Hyperplane::from_dual(ctx.c_h.clone()).expect("c_H nonzero");
    if h != expected {
        return Err(ParamError::ContextDegenerate(
            "canonical plane does not map to H".into(),
        ));
    }
    Ok(tv)
}

/// Pivot profile and affine coordinates of a plane S inside Gr(2, Z),
/// in the ordered basis of Z. Pivot columns are reported 1-based; the
/// generic chart has pivots (1, 2) and 2(s-1) = n-3 coordinates.
pub fn chart_coords(
    ctx: &ParamContext,
    s_plane: &Subspace,
) -> Result<((usize, usize), Vec<Rational>), ParamError> {
    if s_plane.dim() != 2 {
        return Err(ParamError::NotInGeneralPosition);
    }
    if !ctx.z.contains(s_plane)? {
        return Err(ParamError::NotInZ);
    }
    // Coordinates in the Z basis: entries of each row at Z's pivot columns.
    let zpivots = ctx.z.pivot_columns();
    let m = ctx.s + 1;
    let rows: Vec<Vec<Rational>> = s_plane
        .basis_rows()
        .into_iter()
        .map(|r| zpivots.iter().map(|&p| r[p].clone()).collect())
        .collect();
    let reduced = Subspace::span(m, rows);
    debug_assert_eq!(reduced.dim(), 2);
    let pivots = reduced.pivot_columns();
    let (p0, p1) = (pivots[0], pivots[1]);
    let mut coords = Vec::with_capacity(2 * (m - 2));
    for row in reduced.basis_rows() {
        for (j, entry) in row.into_iter().enumerate() {
            if j != p0 && j != p1 {
                coords.push(entry);
            }
        }
    }
    Ok(((p0 + 1, p1 + 1), coords))
}

/// Inverse of `chart_coords`: rebuilds the plane inside Z from a pivot
/// profile and the non-pivot entries (row-major).
pub fn from_chart(
    ctx: &ParamContext,
    pivots: (usize, usize),
    coords: &[Rational],
) -> Result<Subspace, ParamError> {
    let m = ctx.s + 1;
    let (p0, p1) = (pivots.0.wrapping_sub(1), pivots.1.wrapping_sub(1));
    if p0 >= m || p1 >= m || p0 >= p1 || coords.len() != 2 * (m - 2) {
        return Err(ParamError::MalformedChart);
    }
    let mut rows = vec![vec![rat(0); m], vec![rat(0); m]];
    rows[0][p0] = rat(1);
    rows[1][p1] = rat(1);
    let mut it = coords.iter();
    for row in rows.iter_mut() {
        for j in 0..m {
            if j != p0 && j != p1 {
                row[j] = it.next().unwrap().clone();
            }
        }
    }
    // The rebuilt matrix must itself be in reduced echelon form.
    let reduced = Subspace::span(m, rows.clone());
    if reduced.basis_rows() != rows {
        return Err(ParamError::MalformedChart);
    }
    // Map back through the Z basis.
    let n = ctx.algebra.degree();
    let lifted: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![rat(0); n];
            for (c, zb) in r.iter().zip(&ctx.zbasis) {
                for (vi, bi) in v.iter_mut().zip(zb.coords()) {
                    *vi = &*vi + c * bi;
                }
            }
            v
        })
        .collect();
    Ok(Subspace::span(n, lifted))
}

/// A configuration whose plane is S: the two basis rows of S.
pub fn realize(ctx: &ParamContext, s_plane: &Subspace) -> Result<Configuration, ParamError> {
    if s_plane.dim() != 2 {
        return Err(ParamError::NotInGeneralPosition);
    }
    if s_plane.ambient_dim() != ctx.algebra.degree() {
        return Err(ParamError::Linal(LinalError::AmbientMismatch(
            s_plane.ambient_dim(),
            ctx.algebra.degree(),
        )));
    }
    let rows = s_plane.basis_rows();
    Ok(Configuration {
        x: AlgElement::new(rows[0].clone()),
        y: AlgElement::new(rows[1].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn split5_ctx() -> ParamContext {
        build_context(&EtaleAlgebra::split(5).unwrap(), 0).unwrap()
    }

    fn x5_minus_2_ctx() -> ParamContext {
        let alg = EtaleAlgebra::new(vec![Poly::from_i64(&[-2, 0, 0, 0, 0, 1])]).unwrap();
        build_context(&alg, 0).unwrap()
    }

    fn cfg(xs: &[i64], ys: &[i64]) -> Configuration {
        Configuration {
            x: AlgElement::new(xs.iter().map(|&v| rat(v)).collect()),
            y: AlgElement::new(ys.iter().map(|&v| rat(v)).collect()),
        }
    }

    #[test]
    fn build_context_dimensions() {
        let ctx = split5_ctx();
        assert_eq!(ctx.s(), 2);
        assert_eq!(ctx.w().dim(), 2);
        assert_eq!(ctx.z().dim(), 3);

        let ctx = x5_minus_2_ctx();
        assert_eq!(ctx.w().dim(), 2);
        assert_eq!(ctx.z().dim(), 3);
    }

    #[test]
    fn build_context_rejections() {
        let even = EtaleAlgebra::new(vec![
            Poly::from_i64(&[-2, 0, 1]),
            Poly::from_i64(&[-3, 0, 1]),
            Poly::from_i64(&[-5, 0, 1]),
        ])
        .unwrap();
        assert!(matches!(build_context(&even, 0), Err(ParamError::EvenDegree)));
        let small = EtaleAlgebra::split(3).unwrap();
        assert!(matches!(
            build_context(&small, 0),
            Err(ParamError::DegreeTooSmall(3))
        ));
    }

    #[test]
    fn act_identity_and_swap() {
        let alg = EtaleAlgebra::split(5).unwrap();
        let c = cfg(&[0, 1, 1, 2, 3], &[1, 1, 0, 1, 1]);
        let id = TwistedGroupElement {
            g: [[rat(1), rat(0)], [rat(0), rat(1)]],
            t: alg.one(),
        };
        assert_eq!(act(&alg, &id, &c).unwrap(), c);

        let swap = TwistedGroupElement {
            g: [[rat(0), rat(1)], [rat(1), rat(0)]],
            t: alg.one(),
        };
        let swapped = act(&alg, &swap, &c).unwrap();
        assert_eq!(swapped.x, c.y);
        assert_eq!(swapped.y, c.x);

        let singular = TwistedGroupElement {
            g: [[rat(1), rat(1)], [rat(2), rat(2)]],
            t: alg.one(),
        };
        assert!(matches!(
            act(&alg, &singular, &c),
            Err(ParamError::SingularMatrix)
        ));
        let nonunit = TwistedGroupElement {
            g: [[rat(1), rat(0)], [rat(0), rat(1)]],
            t: alg.zero(),
        };
        assert!(matches!(act(&alg, &nonunit, &c), Err(ParamError::NonUnitScale)));
    }

    #[test]
    fn f_w_witness_is_power_span() {
        // V0 = span{1, a^s} maps to span{1, a, ..., a^{2s-1}}
        for ctx in [split5_ctx(), x5_minus_2_ctx()] {
            let alg = ctx.algebra();
            let n = alg.degree();
            let s = ctx.s();
            let pows = powers(alg, ctx.generator(), 2 * s).unwrap();
            let v0 = Subspace::span(
                n,
                vec![pows[0].coords().to_vec(), pows[s].coords().to_vec()],
            );
            let h = f_w(&ctx, &v0).unwrap();
            let hyper = h.as_subspace(alg).unwrap();
            let power_span =
                Subspace::span(n, pows.iter().map(|p| p.coords().to_vec()).collect());
            assert_eq!(hyper, power_span);
        }
    }

    #[test]
    fn f_w_detects_degenerate_planes() {
        // coordinate plane in split Q^5 is killed by three coordinates
        let ctx = split5_ctx();
        let v = Subspace::span(
            5,
            vec![
                vec![rat(1), rat(0), rat(0), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0), rat(0), rat(0)],
            ],
        );
        assert!(matches!(f_w(&ctx, &v), Err(ParamError::NotInGeneralPosition)));
    }

    #[test]
    fn f_w_equivariance_under_unit_scaling() {
        let ctx = split5_ctx();
        let alg = ctx.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let v = Subspace::span(
                5,
                (0..2)
                    .map(|_| (0..5).map(|_| rat(rng.gen_range(-9..=9))).collect())
                    .collect(),
            );
            if v.dim() != 2 {
                continue;
            }
            let t = AlgElement::new((0..5).map(|_| rat(rng.gen_range(1..=9))).collect());
            let Ok(h) = f_w(&ctx, &v) else { continue };
            let tv = Subspace::span(
                5,
                v.basis_rows()
                    .into_iter()
                    .map(|r| alg.mul(&t, &AlgElement::new(r)).unwrap().into_coords())
                    .collect(),
            );
            let ht = f_w(&ctx, &tv).unwrap();
            // dual of f_W(tV) is c_V * t^{-1} up to scale
            let expected = Hyperplane::from_dual(
                alg.mul(h.dual(), &alg.inverse(&t).unwrap()).unwrap(),
            )
            .unwrap();
            assert_eq!(ht, expected);
        }
    }

    #[test]
    fn canonical_fixed_point() {
        // if V*W = H already, canonical returns V itself
        let ctx = split5_ctx();
        let s_plane = {
            // take any canonical form and re-canonicalize its realization
            let c = cfg(&[0, 1, 1, 2, 3], &[1, 1, 0, 1, 1]);
            canonical(&ctx, &c).unwrap()
        };
        let again = canonical(&ctx, &realize(&ctx, &s_plane).unwrap()).unwrap();
        assert_eq!(again, s_plane);
    }

    #[test]
    fn canonical_invariance_small() {
        let ctx = split5_ctx();
        let alg = ctx.algebra();
        let c = cfg(&[0, 1, 1, 2, 3], &[1, 1, 0, 1, 1]);
        let base = canonical(&ctx, &c).unwrap();

        // Moebius z -> 1/z
        let swap = TwistedGroupElement {
            g: [[rat(0), rat(1)], [rat(1), rat(0)]],
            t: alg.one(),
        };
        let c2 = act(alg, &swap, &c).unwrap();
        assert_eq!(canonical(&ctx, &c2).unwrap(), base);

        // random unit scaling
        let t = AlgElement::new(vec![rat(2), rat(-1), rat(3), rat(1), rat(5)]);
        let scale = TwistedGroupElement {
            g: [[rat(1), rat(0)], [rat(0), rat(1)]],
            t,
        };
        let c3 = act(alg, &scale, &c).unwrap();
        assert_eq!(canonical(&ctx, &c3).unwrap(), base);
    }

    #[test]
    fn degenerate_configuration_reported() {
        let ctx = split5_ctx();
        let c = cfg(&[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1]);
        assert!(matches!(
            canonical(&ctx, &c),
            Err(ParamError::NotInGeneralPosition)
        ));
    }

    #[test]
    fn chart_round_trip() {
        let ctx = split5_ctx();
        let c = cfg(&[0, 1, 1, 2, 3], &[1, 1, 0, 1, 1]);
        let s_plane = canonical(&ctx, &c).unwrap();
        let (pivots, coords) = chart_coords(&ctx, &s_plane).unwrap();
        assert_eq!(coords.len(), 2); // n - 3
        let rebuilt = from_chart(&ctx, pivots, &coords).unwrap();
        assert_eq!(rebuilt, s_plane);
    }

    #[test]
    fn chart_of_leading_basis_plane() {
        let ctx = split5_ctx();
        let n = ctx.algebra().degree();
        let s_plane = Subspace::span(
            n,
            vec![
                ctx.zbasis()[0].coords().to_vec(),
                ctx.zbasis()[1].coords().to_vec(),
            ],
        );
        let (pivots, coords) = chart_coords(&ctx, &s_plane).unwrap();
        assert_eq!(pivots, (1, 2));
        assert!(coords.iter().all(|c| c.is_zero()));
        assert_eq!(from_chart(&ctx, pivots, &coords).unwrap(), s_plane);

        // malformed profiles are rejected
        assert!(matches!(
            from_chart(&ctx, (2, 1), &coords),
            Err(ParamError::MalformedChart)
        ));
        assert!(matches!(
            from_chart(&ctx, (1, 9), &coords),
            Err(ParamError::MalformedChart)
        ));
    }

    #[test]
    fn realize_then_canonical_detects_ideal_planes() {
        // a plane inside a proper ideal of split E realizes fine but is
        // not in general position
        let ctx = split5_ctx();
        let v = Subspace::span(
            5,
            vec![
                vec![rat(1), rat(0), rat(0), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0), rat(0), rat(0)],
            ],
        );
        let c = realize(&ctx, &v).unwrap();
        assert!(matches!(
            canonical(&ctx, &c),
            Err(ParamError::NotInGeneralPosition)
        ));
    }
}
