//! JSON file formats. Rationals are strings `"p/q"` (integers bare); keys are ordered.

use crate::exactlinalg::RatMatrix;
use crate::orthogonalize::{FloatBasis, MomentFunctional, OrthoBasis, WeightFn};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::recurrence::Recurrence;
use crate::staircase::{MonomialOrder, MultiIndex, OrderKind, PointSet, Poly, Staircase};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid content: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

/// A rational read from a string `"p/q"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => parse_rational(&s).map(Rat).map_err(de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_rational(&n.to_string()).map(Rat).map_err(de::Error::custom)
            }
            other => Err(de::Error::custom(format!("expected a rational string or integer, got {other}"))),
        }
    }
}

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn unrat(v: Vec<Rat>) -> Vec<Rational> {
    v.into_iter().map(|r| r.0).collect()
}

pub type MatrixFile = Vec<Vec<Rat>>;

pub fn matrix_to_file(m: &RatMatrix) -> MatrixFile {
    (0..m.rows()).map(|i| rats(m.row(i))).collect()
}

pub fn matrix_from_file(rows: MatrixFile) -> Result<RatMatrix, IoError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(invalid("ragged matrix rows"));
    }
    Ok(RatMatrix::from_rows(rows.into_iter().map(unrat).collect(), cols))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub dimension: usize,
    pub points: Vec<Vec<Rat>>,
}

impl PointSetFile {
    pub fn from_points(v: &PointSet) -> Self {
        Self { dimension: v.dim(), points: v.points().iter().map(|p| rats(p)).collect() }
    }

    pub fn into_points(self) -> Result<PointSet, IoError> {
        PointSet::new(self.dimension, self.points.into_iter().map(unrat).collect()).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaircaseFile {
    pub order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precedence: Option<Vec<usize>>,
    pub indices: Vec<Vec<u32>>,
}

impl StaircaseFile {
    pub fn from_staircase(s: &Staircase) -> Self {
        let order = s.order();
        Self {
            order: order.kind().name().to_string(),
            precedence: (!order.is_default_precedence()).then(|| order.precedence().to_vec()),
            indices: s.indices().iter().map(|a| a.exponents().to_vec()).collect(),
        }
    }

    pub fn into_staircase(self) -> Result<Staircase, IoError> {
        let kind: OrderKind = self.order.parse().map_err(invalid)?;
        let dim = self.indices.first().map(Vec::len).ok_or_else(|| invalid("staircase has no indices"))?;
        let order = order_from(kind, dim, self.precedence)?;
        Staircase::from_indices(order, self.indices.into_iter().map(MultiIndex::new).collect()).map_err(invalid)
    }
}

/// Builds an order, with default precedence when none is given.
pub fn order_from(kind: OrderKind, dim: usize, precedence: Option<Vec<usize>>) -> Result<MonomialOrder, IoError> {
    match precedence {
        Some(p) if p.len() != dim => Err(invalid(format!("precedence has {} entries for dimension {dim}", p.len()))),
        Some(p) => MonomialOrder::with_precedence(kind, p).map_err(invalid),
        None => Ok(MonomialOrder::new(kind, dim)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Uniform {
    Flag(bool),
    Value(Rat),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Rat>>,
    /// `true` for `1/|V|`, or a constant value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<Uniform>,
}

impl WeightsFile {
    pub fn into_weights(self, points: usize) -> Result<WeightFn, IoError> {
        match (self.values, self.uniform) {
            (Some(v), None) => WeightFn::new(unrat(v)).map_err(invalid),
            (None, Some(Uniform::Flag(true))) => Ok(WeightFn::uniform(points)),
            (None, Some(Uniform::Value(c))) => WeightFn::new(vec![c.0; points]).map_err(invalid),
            _ => Err(invalid("weights need exactly one of \"values\" or \"uniform\"")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub coeffs: BTreeMap<String, Rat>,
}

impl PolyFile {
    pub fn from_poly(p: &Poly) -> Self {
        Self { coeffs: p.terms().map(|(a, c)| (a.to_string(), Rat(c.clone()))).collect() }
    }

    pub fn into_poly(self, dim: usize) -> Result<Poly, IoError> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (k, v) in self.coeffs {
            let alpha: MultiIndex = k.parse().map_err(invalid)?;
            if alpha.dim() != dim {
                return Err(invalid(format!("monomial {k} in dimension {dim}")));
            }
            terms.push((alpha, v.0));
        }
        Ok(Poly::from_terms(dim, terms))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub staircase: StaircaseFile,
    pub blocks: Vec<Vec<PolyFile>>,
    #[serde(default)]
    pub gram: Vec<MatrixFile>,
}

impl BasisFile {
    pub fn from_basis(b: &OrthoBasis) -> Self {
        Self {
            staircase: StaircaseFile::from_staircase(b.staircase()),
            blocks: b.blocks().iter().map(|bl| bl.iter().map(PolyFile::from_poly).collect()).collect(),
            gram: (0..b.blocks().len()).map(|k| matrix_to_file(b.gram(k))).collect(),
        }
    }

    /// Staircase and blocks; the stored Gram blocks are informational and recomputed on use.
    pub fn into_parts(self) -> Result<(Staircase, Vec<Vec<Poly>>), IoError> {
        let staircase = self.staircase.into_staircase()?;
        let dim = staircase.dim();
        let blocks = self
            .blocks
            .into_iter()
            .map(|bl| bl.into_iter().map(|p| p.into_poly(dim)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok((staircase, blocks))
    }

    pub fn into_basis(self, l: &MomentFunctional) -> Result<OrthoBasis, IoError> {
        let (staircase, blocks) = self.into_parts()?;
        OrthoBasis::from_blocks(staircase, blocks, l).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FloatPolyFile {
    pub coeffs: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FloatBasisFile {
    pub staircase: StaircaseFile,
    pub orthonormal: bool,
    pub blocks: Vec<Vec<FloatPolyFile>>,
}

impl FloatBasisFile {
    pub fn from_basis(b: &FloatBasis) -> Self {
        Self {
            staircase: StaircaseFile::from_staircase(b.staircase()),
            orthonormal: true,
            blocks: b
                .blocks()
                .iter()
                .map(|bl| {
                    bl.iter()
                        .map(|p| FloatPolyFile { coeffs: p.terms().map(|(a, c)| (a.to_string(), *c)).collect() })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceBlocks {
    #[serde(rename = "A")]
    pub a: Vec<Vec<MatrixFile>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<MatrixFile>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<MatrixFile>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceFile {
    pub d: usize,
    pub r: Vec<usize>,
    pub blocks: RecurrenceBlocks,
}

impl RecurrenceFile {
    pub fn from_recurrence(rec: &Recurrence) -> Self {
        let conv = |blocks: &[Vec<RatMatrix>]| -> Vec<Vec<MatrixFile>> {
            blocks.iter().map(|row| row.iter().map(matrix_to_file).collect()).collect()
        };
        Self {
            d: rec.dim(),
            r: rec.sizes().to_vec(),
            blocks: RecurrenceBlocks { a: conv(rec.a_blocks()), b: conv(rec.b_blocks()), c: conv(rec.c_blocks()) },
        }
    }

    /// Matrices with no columns (such as `C_0`) may be written as `[]` or as empty rows.
    pub fn into_recurrence(self) -> Result<Recurrence, IoError> {
        let sizes = self.r;
        let conv = |blocks: Vec<Vec<MatrixFile>>, shape: &dyn Fn(usize) -> Option<(usize, usize)>| {
            blocks
                .into_iter()
                .enumerate()
                .map(|(k, row)| {
                    row.into_iter()
                        .map(|m| match shape(k) {
                            Some((rows, 0)) if m.iter().all(Vec::is_empty) => Ok(RatMatrix::zeros(rows, 0)),
                            _ => matrix_from_file(m),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, IoError>>()
        };
        let a = conv(self.blocks.a, &|k| Some((*sizes.get(k)?, *sizes.get(k + 1)?)))?;
        let b = conv(self.blocks.b, &|k| Some((*sizes.get(k)?, *sizes.get(k)?)))?;
        let c = conv(self.blocks.c, &|k| {
            Some((*sizes.get(k)?, if k == 0 { 0 } else { *sizes.get(k - 1)? }))
        })?;
        Recurrence::new(self.d, sizes, a, b, c).map_err(invalid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub dimension: usize,
    pub points: Vec<Vec<Rat>>,
    pub values: Vec<Rat>,
}

impl MeasureFile {
    pub fn from_functional(l: &MomentFunctional) -> Self {
        Self {
            dimension: l.dim(),
            points: l.points().points().iter().map(|p| rats(p)).collect(),
            values: rats(l.weights().values()),
        }
    }

    pub fn into_functional(self) -> Result<MomentFunctional, IoError> {
        let v = PointSet::new(self.dimension, self.points.into_iter().map(unrat).collect()).map_err(invalid)?;
        let w = WeightFn::new(unrat(self.values)).map_err(invalid)?;
        MomentFunctional::new(v, w).map_err(invalid)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}
