//! JSON descriptors for every CLI-facing object, plus the parsing entry
//! points that validate untrusted input. Rationals travel as "p/q"
//! strings; polynomials as coefficient lists, constant term first.

use crate::brauer::{QuaternionAlgebra, QuaternionOverFt};
use crate::etale::{AlgElement, EtaleAlgebra};
use crate::exactnum::{format_rational, parse_rational, Poly, Rational};
use crate::linal::Subspace;
use crate::parametrize::{Configuration, ParamContext};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("number: {0}")]
    Num(#[from] crate::exactnum::NumError),
    #[error("algebra: {0}")]
    Etale(#[from] crate::etale::EtaleError),
    #[error("brauer: {0}")]
    Brauer(#[from] crate::brauer::BrauerError),
    #[error("context: {0}")]
    Param(#[from] crate::parametrize::ParamError),
    #[error("descriptor: {0}")]
    Malformed(String),
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraDesc {
    pub factors: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ElementDesc {
    pub coords: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ConfigDesc {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ContextDesc {
    pub algebra: AlgebraDesc,
    pub seed: i64,
    pub s: usize,
    pub a: Vec<String>,
    pub c_h: Vec<String>,
    pub zbasis: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SubspaceDesc {
    pub ambient: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ChartDesc {
    pub pivots: [usize; 2],
    pub coords: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct QuaternionDesc {
    pub a: String,
    pub b: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FtQuaternionDesc {
    pub f: Vec<String>,
    pub g: Vec<String>,
}

fn parse_coords(raw: &[String]) -> Result<Vec<Rational>, IoError> {
    raw.iter().map(|s| Ok(parse_rational(s)?)).collect()
}

fn format_coords(coords: &[Rational]) -> Vec<String> {
    coords.iter().map(format_rational).collect()
}

pub fn parse_poly(raw: &[String]) -> Result<Poly, IoError> {
    Ok(Poly::new(parse_coords(raw)?))
}

pub fn format_poly(p: &Poly) -> Vec<String> {
    format_coords(p.coeffs())
}

pub fn algebra_from_desc(desc: &AlgebraDesc) -> Result<EtaleAlgebra, IoError> {
    let factors = desc
        .factors
        .iter()
        .map(|f| parse_poly(f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EtaleAlgebra::new(factors)?)
}

pub fn algebra_to_desc(alg: &EtaleAlgebra) -> AlgebraDesc {
    AlgebraDesc {
        factors: alg.factors().iter().map(format_poly).collect(),
    }
}

pub fn config_from_desc(desc: &ConfigDesc) -> Result<Configuration, IoError> {
    Ok(Configuration {
        x: AlgElement::new(parse_coords(&desc.x)?),
        y: AlgElement::new(parse_coords(&desc.y)?),
    })
}

pub fn config_to_desc(cfg: &Configuration) -> ConfigDesc {
    ConfigDesc {
        x: format_coords(cfg.x.coords()),
        y: format_coords(cfg.y.coords()),
    }
}

pub fn context_to_desc(ctx: &ParamContext, seed: i64) -> ContextDesc {
    ContextDesc {
        algebra: algebra_to_desc(ctx.algebra()),
        seed,
        s: ctx.s(),
        a: format_coords(ctx.generator().coords()),
        c_h: format_coords(ctx.c_h().coords()),
        zbasis: ctx
            .zbasis()
            .iter()
            .map(|z| format_coords(z.coords()))
            .collect(),
    }
}

/// Rebuilds a context from its descriptor and cross-checks the frozen
/// data against a fresh build with the recorded seed.
pub fn context_from_desc(desc: &ContextDesc) -> Result<ParamContext, IoError> {
    let alg = algebra_from_desc(&desc.algebra)?;
    let c_h = AlgElement::new(parse_coords(&desc.c_h)?);
    let ctx = crate::parametrize::build_context_with_hyperplane(&alg, desc.seed, c_h)?;
    if ctx.s() != desc.s
        || format_coords(ctx.generator().coords()) != desc.a
        || context_to_desc(&ctx, desc.seed).zbasis != desc.zbasis
    {
        return Err(IoError::Malformed(
            "context descriptor disagrees with deterministic rebuild".into(),
        ));
    }
    Ok(ctx)
}

pub fn subspace_to_desc(s: &Subspace) -> SubspaceDesc {
    SubspaceDesc {
        ambient: s.ambient_dim(),
        rows: s.basis_rows().iter().map(|r| format_coords(r)).collect(),
    }
}

pub fn quaternion_from_desc(desc: &QuaternionDesc) -> Result<QuaternionAlgebra, IoError> {
    Ok(QuaternionAlgebra::new(
        parse_rational(&desc.a)?,
        parse_rational(&desc.b)?,
    )?)
}

pub fn ft_quaternion_from_desc(desc: &FtQuaternionDesc) -> Result<QuaternionOverFt, IoError> {
    Ok(QuaternionOverFt::new(
        parse_poly(&desc.f)?,
        parse_poly(&desc.g)?,
    )?)
}

// Parsing entry points over raw text, used by the CLI and fuzzed against
// arbitrary input.

pub fn parse_algebra_json(text: &str) -> Result<EtaleAlgebra, IoError> {
    let desc: AlgebraDesc = serde_json::from_str(text)?;
    algebra_from_desc(&desc)
}

pub fn parse_config_json(text: &str) -> Result<Configuration, IoError> {
    let desc: ConfigDesc = serde_json::from_str(text)?;
    config_from_desc(&desc)
}

pub fn parse_context_json(text: &str) -> Result<ParamContext, IoError> {
    let desc: ContextDesc = serde_json::from_str(text)?;
    context_from_desc(&desc)
}

pub fn parse_quaternion_json(text: &str) -> Result<QuaternionAlgebra, IoError> {
    let desc: QuaternionDesc = serde_json::from_str(text)?;
    quaternion_from_desc(&desc)
}

pub fn parse_ft_quaternion_json(text: &str) -> Result<QuaternionOverFt, IoError> {
    let desc: FtQuaternionDesc = serde_json::from_str(text)?;
    ft_quaternion_from_desc(&desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parametrize::build_context;

    #[test]
    fn algebra_round_trip() {
        let text = r#"{ "factors": [["-2","0","0","0","0","1"]] }"#;
        let alg = parse_algebra_json(text).unwrap();
        assert_eq!(alg.degree(), 5);
        let desc = algebra_to_desc(&alg);
        assert_eq!(desc.factors, vec![vec!["-2", "0", "0", "0", "0", "1"]]);
        assert_eq!(algebra_from_desc(&desc).unwrap(), alg);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_algebra_json("not json").is_err());
        assert!(parse_algebra_json(r#"{ "factors": [["1","1/0"]] }"#).is_err());
        assert!(parse_algebra_json(r#"{ "factors": [["1","-2","1"]] }"#).is_err());
        assert!(parse_quaternion_json(r#"{ "a": "0", "b": "3" }"#).is_err());
    }

    #[test]
    fn context_round_trip() {
        let alg = EtaleAlgebra::split(5).unwrap();
        let ctx = build_context(&alg, 0).unwrap();
        let text = serde_json::to_string(&context_to_desc(&ctx, 0)).unwrap();
        let back = parse_context_json(&text).unwrap();
        assert_eq!(back.z(), ctx.z());
        assert_eq!(back.generator(), ctx.generator());
    }
}
