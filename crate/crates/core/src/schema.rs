//! Versioned JSON artifacts and parsers for untrusted text input.
//!
//! Integers whose magnitude exceeds `2^53` are written as decimal strings;
//! readers accept either form. Every reader also accepts a command result
//! envelope (`{"schema", "command", "status", "payload", ...}`) and looks for
//! the artifact under `payload`, `payload.code` or `payload.set`.
//!
//! The `parse_*` functions never panic on any input.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::algebra::{AbelianGroup, GroupElement, IntegerMatrix};
use crate::codes::{lattice_from_ordered, LatticeCode, Source};
use crate::error::{Error, Result};
use crate::sets::{BhSet, DifferenceSet, DsParams};

pub const SCHEMA: &str = "sidon-lattice/1";

/// Largest dimension accepted from text.
pub const MAX_DIM: usize = 24;
/// Largest number of set elements accepted from text.
pub const MAX_ELEMENTS: usize = 4096;
/// Longest decimal integer accepted from text.
pub const MAX_DIGITS: usize = 40;
/// Longest document accepted.
pub const MAX_TEXT: usize = 1 << 20;

const SAFE_INT: u64 = 1 << 53;

/// An integer that round-trips through lossy JSON consumers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.unsigned_abs() <= SAFE_INT => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match Value::deserialize(d)? {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))
                .map(JsonInt)
                .ok_or_else(|| D::Error::custom("expected an integer")),
            Value::String(s) => {
                if s.len() > MAX_DIGITS + 1 {
                    return Err(D::Error::custom("integer has too many digits"));
                }
                s.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| D::Error::custom("expected a decimal integer"))
            }
            _ => Err(D::Error::custom("expected an integer")),
        }
    }
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        JsonInt(x.clone())
    }
}

impl From<u64> for JsonInt {
    fn from(x: u64) -> Self {
        JsonInt(x.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeArtifact {
    #[serde(default = "schema_tag")]
    pub schema: String,
    #[serde(default = "code_kind")]
    pub kind: String,
    /// Index of the lattice, the order of the quotient.
    pub v: JsonInt,
    pub n: usize,
    /// Syndrome images of the unit vectors when the quotient is `Z_v`.
    #[serde(default)]
    pub parity_row: Option<Vec<JsonInt>>,
    pub basis: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub quotient: Option<Vec<u64>>,
    #[serde(default = "basis_source")]
    pub source: Source,
}

fn schema_tag() -> String {
    SCHEMA.into()
}

fn code_kind() -> String {
    "lattice-code".into()
}

fn basis_source() -> Source {
    Source::Basis
}

/// A set element: an integer in a cyclic group, a coordinate list otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(u64),
    Coords(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetArtifact {
    #[serde(default = "schema_tag")]
    pub schema: String,
    /// `difference-set`, `bh-set` or `set`.
    #[serde(default = "set_kind")]
    pub kind: String,
    pub group: Vec<u64>,
    pub elements: Vec<ElementRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<DsParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
}

fn set_kind() -> String {
    "set".into()
}

/// A parsed set: not yet verified as anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSet {
    pub group: AbelianGroup,
    pub elements: Vec<GroupElement>,
    pub kind: String,
    pub h: Option<u32>,
}

pub fn code_artifact(code: &LatticeCode) -> CodeArtifact {
    CodeArtifact {
        schema: SCHEMA.into(),
        kind: code_kind(),
        v: code.det_abs().into(),
        n: code.n(),
        parity_row: code
            .parity_row()
            .map(|row| row.into_iter().map(JsonInt::from).collect()),
        basis: code
            .basis()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(JsonInt::from).collect())
            .collect(),
        quotient: Some(code.quotient().invariant_factors().to_vec()),
        source: code.source().clone(),
    }
}

pub fn set_artifact(
    kind: &str,
    group: &AbelianGroup,
    elements: &[GroupElement],
    params: Option<DsParams>,
    h: Option<u32>,
) -> SetArtifact {
    let elements = elements
        .iter()
        .map(|e| {
            if group.is_cyclic() {
                ElementRepr::Int(group.index_of(e))
            } else {
                ElementRepr::Coords(e.0.clone())
            }
        })
        .collect();
    SetArtifact {
        schema: SCHEMA.into(),
        kind: kind.into(),
        group: group.invariant_factors().to_vec(),
        elements,
        params,
        h,
    }
}

pub fn difference_set_artifact(ds: &DifferenceSet) -> SetArtifact {
    set_artifact("difference-set", ds.group(), ds.elements(), Some(ds.params()), None)
}

pub fn bh_set_artifact(b: &BhSet) -> SetArtifact {
    set_artifact("bh-set", b.group(), b.elements(), None, Some(b.h()))
}

fn parse_value(text: &str) -> Result<Value> {
    if text.len() > MAX_TEXT {
        return Err(Error::Parse(format!("input longer than {MAX_TEXT} bytes")));
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Unwraps a command result envelope and an optional named member.
fn artifact_value(mut v: Value, member: &str) -> Value {
    if let Some(p) = v.get_mut("payload") {
        v = p.take();
    }
    match v.get_mut(member) {
        Some(inner) if inner.is_object() => inner.take(),
        _ => v,
    }
}

fn check_schema(tag: &str) -> Result<()> {
    if tag != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {tag:?}")));
    }
    Ok(())
}

fn small(x: &JsonInt, what: &str) -> Result<u64> {
    if x.0.is_negative() {
        return Err(Error::Parse(format!("{what} must be nonnegative")));
    }
    x.0.to_u64()
        .ok_or_else(|| Error::Parse(format!("{what} is too large")))
}

/// Reads a lattice code; the basis is re-reduced and every stored derived
/// field (`v`, `n`, `parity_row`) is checked against it.
pub fn parse_code(text: &str) -> Result<LatticeCode> {
    let v = artifact_value(parse_value(text)?, "code");
    let art: CodeArtifact = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    code_from_artifact(&art)
}

pub fn code_from_artifact(art: &CodeArtifact) -> Result<LatticeCode> {
    check_schema(&art.schema)?;
    let n = art.n;
    if n == 0 || n > MAX_DIM {
        return Err(Error::Parse(format!("dimension must be in 1..={MAX_DIM}")));
    }
    if art.basis.len() != n || art.basis.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("basis must be {n} x {n}")));
    }
    for x in art.basis.iter().flatten() {
        if x.0.to_string().len() > MAX_DIGITS + 1 {
            return Err(Error::Parse("basis entry has too many digits".into()));
        }
    }
    let rows: Vec<Vec<BigInt>> = art
        .basis
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    let basis = IntegerMatrix::from_rows(&rows)?;
    let code = LatticeCode::from_basis(basis, art.source.clone())?;
    let v = small(&art.v, "v")?;
    if v != code.det_abs() {
        return Err(Error::Parse(format!(
            "v = {v} but the basis has index {}",
            code.det_abs()
        )));
    }
    match &art.parity_row {
        None => Ok(code),
        Some(row) => {
            if row.len() != n {
                return Err(Error::Parse(format!("parity row must have {n} entries")));
            }
            let group = AbelianGroup::cyclic(v)?;
            if !code.quotient().is_cyclic() {
                return Err(Error::Parse("parity row given for a non-cyclic quotient".into()));
            }
            let mut elements = vec![group.zero()];
            for x in row {
                let x = small(x, "parity entry")? % v.max(1);
                elements.push(group.element(&[x as i64])?);
            }
            let from_row = lattice_from_ordered(&group, &elements)
                .map_err(|e| Error::Parse(format!("parity row does not define the lattice: {e}")))?;
            if from_row.hermite() != code.hermite() {
                return Err(Error::Parse("parity row and basis describe different lattices".into()));
            }
            Ok(from_row.with_source(art.source.clone()))
        }
    }
}

/// Reads a set artifact. Elements are checked against the group but not verified.
pub fn parse_set(text: &str) -> Result<ParsedSet> {
    let v = artifact_value(parse_value(text)?, "set");
    let art: SetArtifact = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    set_from_artifact(&art)
}

pub fn set_from_artifact(art: &SetArtifact) -> Result<ParsedSet> {
    check_schema(&art.schema)?;
    if art.group.len() > MAX_DIM {
        return Err(Error::Parse("too many group factors".into()));
    }
    if art.elements.len() > MAX_ELEMENTS {
        return Err(Error::Parse(format!("more than {MAX_ELEMENTS} elements")));
    }
    let group = AbelianGroup::new(&art.group)?;
    let elements = art
        .elements
        .iter()
        .map(|e| {
            let el = match e {
                ElementRepr::Int(x) => {
                    if *x >= group.order() {
                        return Err(Error::ElementOutOfRange(vec![*x as i64]));
                    }
                    group.element_at(*x)
                }
                ElementRepr::Coords(c) => GroupElement(c.clone()),
            };
            group.check(&el)?;
            Ok(el)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedSet {
        group,
        elements,
        kind: art.kind.clone(),
        h: art.h,
    })
}

/// Integer vector such as `4,4,12`, `(4, 4, 12)` or `[4 4 -12]`.
pub fn parse_word(text: &str) -> Result<Vec<i64>> {
    let inner = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    let out = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() || out.len() > MAX_DIM {
        return Err(Error::Parse(format!("expected 1 to {MAX_DIM} integers")));
    }
    Ok(out)
}

/// Cyclic factors such as `2,6` or `2x6`, normalized to invariant-factor form.
pub fn parse_factor_list(text: &str) -> Result<AbelianGroup> {
    let factors = text
        .split(|c: char| c == ',' || c == 'x' || c == '*' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("not a positive integer: {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if factors.is_empty() || factors.len() > MAX_DIM {
        return Err(Error::Parse(format!("expected 1 to {MAX_DIM} factors")));
    }
    AbelianGroup::new(&factors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

/// Envelope for every command's JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub schema: String,
    pub command: String,
    /// `ok`, `error` or `not-found`.
    pub status: String,
    pub payload: Value,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
}
