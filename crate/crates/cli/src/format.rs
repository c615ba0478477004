//! The JSON file format shared by every command.
//!
//! Each file is an envelope `{schema_version, field_spec, kind, payload}`.
//! Scalars are lists: `[num, den]` over the rationals, `[residue]` over
//! `gf:p`. Sparse coordinate lists prefix each scalar with its indices;
//! dense matrices are `{rows, cols, data}` with `data` row-major.

use std::path::Path;
use std::sync::Arc;

use num::bigint::BigInt;
use num::ToPrimitive;
use quasihopf::algebra::{BasedAlgebra, TensorElement};
use quasihopf::linalg::{rational_parts, CoordVector, Field, LinearMap, Scalar};
use quasihopf::quasi_hopf::{normalize_alpha_beta, QuasiBialgebra, QuasiHopfAlgebra};
use quasihopf::representations::{ComoduleAlgebra, ModuleAlgebra};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Algebra,
    QuasiHopf,
    ModuleAlgebra,
    ComoduleAlgebra,
    Morphism,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub field_spec: String,
    pub kind: Kind,
    pub payload: Value,
}

/// An integer that may not fit in 64 bits; large values are strings.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Big(String),
}

impl Num {
    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(i) => Num::Int(i),
            None => Num::Big(n.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            Num::Int(i) => Ok(BigInt::from(*i)),
            Num::Big(s) => s.parse().map_err(|_| CliError::schema(format!("not an integer: {s:?}"))),
        }
    }

    fn index(&self, bound: usize) -> Result<usize, CliError> {
        match self {
            Num::Int(i) if *i >= 0 && (*i as u64) < bound as u64 => Ok(*i as usize),
            other => Err(CliError::schema(format!("index {other:?} out of range 0..{bound}"))),
        }
    }
}

type Entry = Vec<Num>;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraPayload {
    pub labels: Vec<String>,
    pub structure_constants: Vec<Entry>,
    pub unit: Vec<Entry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QuasiHopfPayload {
    pub algebra: AlgebraPayload,
    pub comultiplication: Dense,
    pub counit: Dense,
    pub antipode: Dense,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<Dense>,
    pub phi: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_inverse: Option<Vec<Entry>>,
    pub alpha: Vec<Entry>,
    pub beta: Vec<Entry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleAlgebraPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<QuasiHopfPayload>,
    pub algebra: AlgebraPayload,
    pub action: Dense,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComoduleAlgebraPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<QuasiHopfPayload>,
    pub algebra: AlgebraPayload,
    pub coaction: Dense,
    pub phi_rho: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_rho_inverse: Option<Vec<Entry>>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Linear,
    Algebra,
    ModuleAlgebra,
    ComoduleAlgebra,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MorphismPayload {
    pub morphism_of: MorphismKind,
    pub matrix: Dense,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Box<Document>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Box<Document>>,
}

/// How scalars in a file are read: the field the file was written over and
/// the field the caller works in.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub file: Field,
    pub target: Field,
}

impl Ctx {
    fn scalar(&self, raw: &[Num]) -> Result<Scalar, CliError> {
        match (self.file, raw) {
            (Field::Rational, [n, d]) => {
                let (n, d) = (n.to_bigint()?, d.to_bigint()?);
                Ok(self.target.from_bigints(&n, &d)?)
            }
            (Field::Prime(p), [r]) => {
                let r = r.to_bigint()?;
                if r < BigInt::from(0) || r >= BigInt::from(p) {
                    return Err(CliError::schema(format!("residue {r} out of range for gf:{p}")));
                }
                if self.target != self.file {
                    return Err(CliError::schema(format!("gf:{p} data cannot be read over {}", self.target)));
                }
                Ok(self.target.from_bigints(&r, &BigInt::from(1))?)
            }
            (Field::Rational, _) => Err(CliError::schema("rational scalars are [numerator, denominator]")),
            (Field::Prime(_), _) => Err(CliError::schema("modular scalars are [residue]")),
        }
    }

    fn sparse(&self, entries: &[Entry], dims: &[usize]) -> Result<TensorElement, CliError> {
        let width = match self.file {
            Field::Rational => 2,
            Field::Prime(_) => 1,
        };
        let mut terms = Vec::with_capacity(entries.len());
        for e in entries {
            if e.len() != dims.len() + width {
                return Err(CliError::schema(format!(
                    "sparse entry {e:?} should have {} indices and {width} scalar part(s)",
                    dims.len()
                )));
            }
            let idx = e[..dims.len()]
                .iter()
                .zip(dims)
                .map(|(n, &d)| n.index(d))
                .collect::<Result<Vec<_>, _>>()?;
            terms.push((idx, self.scalar(&e[dims.len()..])?));
        }
        Ok(TensorElement::from_terms(self.target, dims, terms)?)
    }

    fn vector(&self, entries: &[Entry], dim: usize) -> Result<CoordVector, CliError> {
        Ok(self.sparse(entries, &[dim])?.into_coords())
    }

    fn dense(&self, m: &Dense, rows: usize, cols: usize, what: &str) -> Result<LinearMap, CliError> {
        if m.rows != rows || m.cols != cols {
            return Err(CliError::schema(format!(
                "{what} must be {rows}x{cols}, file declares {}x{}",
                m.rows, m.cols
            )));
        }
        self.dense_any(m, what)
    }

    fn dense_any(&self, m: &Dense, what: &str) -> Result<LinearMap, CliError> {
        if m.data.len() != m.rows || m.data.iter().any(|r| r.len() != m.cols) {
            return Err(CliError::schema(format!("{what}: data does not match {}x{}", m.rows, m.cols)));
        }
        let entries = m
            .data
            .iter()
            .flatten()
            .map(|e| self.scalar(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap::from_row_major(self.target, m.rows, m.cols, entries)?)
    }

    pub fn algebra(&self, p: &AlgebraPayload) -> Result<BasedAlgebra, CliError> {
        let d = p.labels.len();
        if d == 0 {
            return Err(CliError::schema("an algebra needs at least one basis element"));
        }
        let table = self.sparse(&p.structure_constants, &[d, d, d])?;
        let unit = self.vector(&p.unit, d)?;
        let triples = table.terms().map(|(i, c)| (i[0], i[1], i[2], c.clone())).collect::<Vec<_>>();
        Ok(BasedAlgebra::new(self.target, p.labels.clone(), triples, unit)?)
    }

    /// Builds `H`, normalizing `α, β` when `ε(α)ε(β) = 1`.
    pub fn quasi_hopf(&self, p: &QuasiHopfPayload) -> Result<QuasiHopfAlgebra, CliError> {
        let algebra = self.algebra(&p.algebra)?;
        let d = algebra.dim();
        let comul = self.dense(&p.comultiplication, d * d, d, "comultiplication")?;
        let counit = self.dense(&p.counit, 1, d, "counit")?;
        let antipode = self.dense(&p.antipode, d, d, "antipode")?;
        let antipode_inv = p
            .antipode_inverse
            .as_ref()
            .map(|m| self.dense(m, d, d, "antipode_inverse"))
            .transpose()?;
        let phi = self.sparse(&p.phi, &[d, d, d])?;
        let phi_inv = p.phi_inverse.as_ref().map(|e| self.sparse(e, &[d, d, d])).transpose()?;
        let alpha = self.vector(&p.alpha, d)?;
        let beta = self.vector(&p.beta, d)?;
        let base = QuasiBialgebra::new(algebra, comul, counit, phi, phi_inv)?;
        let h = QuasiHopfAlgebra::new(base, antipode, antipode_inv, alpha, beta)?;
        Ok(normalize_alpha_beta(&h).unwrap_or(h))
    }

    fn resolve_hopf(
        &self,
        embedded: Option<&QuasiHopfPayload>,
        external: Option<&Arc<QuasiHopfAlgebra>>,
    ) -> Result<Arc<QuasiHopfAlgebra>, CliError> {
        match (embedded, external) {
            (Some(p), Some(h)) => {
                let own = self.quasi_hopf(p)?;
                if &own != h.as_ref() {
                    return Err(CliError::schema("the embedded H differs from the one given with -H"));
                }
                Ok(h.clone())
            }
            (Some(p), None) => Ok(Arc::new(self.quasi_hopf(p)?)),
            (None, Some(h)) => Ok(h.clone()),
            (None, None) => Err(CliError::schema("no quasi-Hopf algebra: embed one or pass -H")),
        }
    }

    pub fn module_algebra(
        &self,
        p: &ModuleAlgebraPayload,
        hopf: Option<&Arc<QuasiHopfAlgebra>>,
    ) -> Result<ModuleAlgebra, CliError> {
        let hopf = self.resolve_hopf(p.hopf.as_ref(), hopf)?;
        let carrier = self.algebra(&p.algebra)?;
        let action = self.dense(&p.action, carrier.dim(), hopf.dim() * carrier.dim(), "action")?;
        Ok(ModuleAlgebra::new(hopf, carrier, action)?)
    }

    pub fn comodule_algebra(
        &self,
        p: &ComoduleAlgebraPayload,
        hopf: Option<&Arc<QuasiHopfAlgebra>>,
    ) -> Result<ComoduleAlgebra, CliError> {
        let hopf = self.resolve_hopf(p.hopf.as_ref(), hopf)?;
        let algebra = self.algebra(&p.algebra)?;
        let (db, dh) = (algebra.dim(), hopf.dim());
        let coaction = self.dense(&p.coaction, db * dh, db, "coaction")?;
        let phi_rho = self.sparse(&p.phi_rho, &[db, dh, dh])?;
        let inv = p
            .phi_rho_inverse
            .as_ref()
            .map(|e| self.sparse(e, &[db, dh, dh]))
            .transpose()?;
        Ok(ComoduleAlgebra::new(hopf, algebra, coaction, phi_rho, inv)?)
    }

    pub fn matrix(&self, m: &Dense) -> Result<LinearMap, CliError> {
        self.dense_any(m, "matrix")
    }
}

/// Reads and parses a file; `field` overrides the file's own field.
pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc: Document =
        serde_json::from_str(&text).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))?;
    check_version(&doc)?;
    Ok(doc)
}

fn check_version(doc: &Document) -> Result<(), CliError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::schema(format!(
            "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
            doc.schema_version
        )));
    }
    Ok(())
}

impl Document {
    pub fn new(field: Field, kind: Kind, payload: impl Serialize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            field_spec: field.to_string(),
            kind,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
        }
    }

    pub fn field(&self) -> Result<Field, CliError> {
        self.field_spec
            .parse()
            .map_err(|e: quasihopf::Error| CliError::schema(e.to_string()))
    }

    /// The scalar context for reading this document over `target` (or its
    /// own field when `None`).
    pub fn ctx(&self, target: Option<Field>) -> Result<Ctx, CliError> {
        let file = self.field()?;
        Ok(Ctx {
            file,
            target: target.unwrap_or(file),
        })
    }

    pub fn payload<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::schema(format!("{:?} payload: {e}", self.kind)))
    }

    pub fn expect_kind(&self, kinds: &[Kind]) -> Result<(), CliError> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(CliError::schema(format!("expected a file of kind {kinds:?}, found {:?}", self.kind)))
        }
    }

    /// Nested documents must be readable in `ctx.target`.
    pub fn nested_ctx(&self, ctx: Ctx) -> Result<Ctx, CliError> {
        check_version(self)?;
        self.ctx(Some(ctx.target))
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        render(&serde_json::to_value(self).expect("documents serialize"), 0, &mut out);
        out.push('\n');
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_pretty()).map_err(|e| CliError::io(path, e))
    }
}

/// Pretty JSON with short scalar arrays kept on one line.
pub fn render(v: &Value, indent: usize, out: &mut String) {
    const WIDTH: usize = 96;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                render(val, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let compact = serde_json::to_string(v).expect("values serialize");
            let has_object = items.iter().any(|x| matches!(x, Value::Object(_)));
            if !has_object && compact.len() + indent * 2 <= WIDTH {
                out.push_str(&compact);
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&serde_json::to_string(other).expect("values serialize")),
    }
}

pub fn encode_scalar(s: &Scalar) -> Entry {
    match s.to_rational() {
        Some(q) => {
            let (n, d) = rational_parts(&q);
            vec![Num::from_bigint(&n), Num::from_bigint(&d)]
        }
        None => vec![Num::Int(i64::from(s.residue().expect("modular scalar")))],
    }
}

pub fn encode_sparse(t: &TensorElement) -> Vec<Entry> {
    t.terms()
        .map(|(idx, c)| {
            let mut e: Entry = idx.into_iter().map(|i| Num::Int(i as i64)).collect();
            e.extend(encode_scalar(c));
            e
        })
        .collect()
}

fn encode_vector(v: &CoordVector) -> Vec<Entry> {
    encode_sparse(&TensorElement::new(vec![v.dim()], v.clone()).expect("vector shape"))
}

pub fn encode_dense(m: &LinearMap) -> Dense {
    Dense {
        rows: m.dst_dim(),
        cols: m.src_dim(),
        data: (0..m.dst_dim()).map(|r| m.row(r).iter().map(encode_scalar).collect()).collect(),
    }
}

pub fn encode_algebra(a: &BasedAlgebra) -> AlgebraPayload {
    AlgebraPayload {
        labels: a.labels().to_vec(),
        structure_constants: a
            .structure_constants()
            .map(|(i, j, k, c)| {
                let mut e = vec![Num::Int(i as i64), Num::Int(j as i64), Num::Int(k as i64)];
                e.extend(encode_scalar(c));
                e
            })
            .collect(),
        unit: encode_vector(a.unit()),
    }
}

pub fn encode_quasi_hopf(h: &QuasiHopfAlgebra) -> QuasiHopfPayload {
    QuasiHopfPayload {
        algebra: encode_algebra(h.algebra()),
        comultiplication: encode_dense(h.comul()),
        counit: encode_dense(h.counit()),
        antipode: encode_dense(h.antipode()),
        antipode_inverse: None,
        phi: encode_sparse(h.phi()),
        phi_inverse: Some(encode_sparse(h.phi_inv())),
        alpha: encode_vector(h.alpha()),
        beta: encode_vector(h.beta()),
    }
}

pub fn quasi_hopf_document(h: &QuasiHopfAlgebra) -> Document {
    Document::new(h.field(), Kind::QuasiHopf, encode_quasi_hopf(h))
}

pub fn module_algebra_document(ma: &ModuleAlgebra) -> Document {
    let payload = ModuleAlgebraPayload {
        hopf: Some(encode_quasi_hopf(ma.hopf())),
        algebra: encode_algebra(ma.carrier()),
        action: encode_dense(ma.action()),
    };
    Document::new(ma.field(), Kind::ModuleAlgebra, payload)
}

pub fn comodule_algebra_document(ca: &ComoduleAlgebra) -> Document {
    let payload = ComoduleAlgebraPayload {
        hopf: Some(encode_quasi_hopf(ca.hopf())),
        algebra: encode_algebra(ca.algebra()),
        coaction: encode_dense(ca.coaction()),
        phi_rho: encode_sparse(ca.phi_rho()),
        phi_rho_inverse: Some(encode_sparse(ca.phi_rho_inv())),
    };
    Document::new(ca.field(), Kind::ComoduleAlgebra, payload)
}

pub fn morphism_document(
    kind: MorphismKind,
    matrix: &LinearMap,
    source: Option<Document>,
    target: Option<Document>,
) -> Document {
    let payload = MorphismPayload {
        morphism_of: kind,
        matrix: encode_dense(matrix),
        source: source.map(Box::new),
        target: target.map(Box::new),
    };
    Document::new(matrix.field(), Kind::Morphism, payload)
}
