//! JSON bundle format: named algebras, bimodules, maps, tensors and forms
//! over Q, with cross-references by name.
//!
//! Rationals are strings `"p/q"` or `"p"`. All entry lists are sparse.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bimodule::{check_bimodule, dual_bimodule, regular_bimodule, Bimodule};
use crate::cluster::{check_axioms, ClusterAlgebra, Level};
use crate::error::{Error, Result};
use crate::forms::{classify_form, BilinearForm};
use crate::linalg::{format_rational, parse_rational, Matrix, Tensor3};
use crate::operators::{is_o_operator, is_rota_baxter, InterMap};
use crate::report::{Report, Violation};
use crate::yang_baxter::{check_equation, Parity, Tensor2};

/// Bimodule names resolved against the algebra rather than looked up.
pub const BUILTIN_BIMODULES: &[&str] = &["regular", "dual_regular"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Meta {
    pub provenance: String,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraRecord {
    pub algebra: ClusterAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleRecord {
    pub bimodule: Bimodule,
    /// The algebra it is claimed to be a bimodule over.
    pub algebra: Option<String>,
}

/// With `algebra` and no `bimodule` the map is checked as a Rota-Baxter
/// operator; with both, as an O-operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRecord {
    pub map: InterMap,
    pub algebra: Option<String>,
    pub bimodule: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRecord {
    pub tensor: Tensor2,
    pub algebra: Option<String>,
    /// Declared parity; verified, never assumed.
    pub parity: Option<Parity>,
    /// Whether the tensor is claimed to solve the algebra's equation.
    pub solves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRecord {
    pub form: BilinearForm,
    pub algebra: Option<String>,
    /// Classification flags claimed to hold.
    pub require: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle {
    pub algebras: BTreeMap<String, AlgebraRecord>,
    pub bimodules: BTreeMap<String, BimoduleRecord>,
    pub maps: BTreeMap<String, MapRecord>,
    pub tensors: BTreeMap<String, TensorRecord>,
    pub forms: BTreeMap<String, FormRecord>,
    pub meta: Option<Meta>,
}

// ---- wire format ----

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<RawMeta>,
    #[serde(default)]
    algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    bimodules: BTreeMap<String, RawBimodule>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    tensors: BTreeMap<String, RawTensor>,
    #[serde(default)]
    forms: BTreeMap<String, RawForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeta {
    provenance: String,
    oracle: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    level: usize,
    dim: usize,
    entries: Vec<(String, usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    level: usize,
    algebra_dim: usize,
    module_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    entries: Vec<(String, String, usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    source_dim: usize,
    target_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bimodule: Option<String>,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parity: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    solves: bool,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    require: Vec<String>,
    entries: Vec<(usize, usize, String)>,
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    Ok(())
}

fn matrix_from_entries(rows: usize, cols: usize, entries: &[(usize, usize, String)]) -> Result<Matrix> {
    let mut m = Matrix::zeros(rows, cols);
    for (r, c, v) in entries {
        check_index(*r, rows)?;
        check_index(*c, cols)?;
        m[(*r, *c)] = parse_rational(v)?;
    }
    Ok(m)
}

fn matrix_entries(m: &Matrix) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() {
                out.push((r, c, format_rational(&m[(r, c)])));
            }
        }
    }
    out
}

pub fn algebra_to_value(a: &ClusterAlgebra) -> serde_json::Value {
    serde_json::to_value(raw_algebra(a)).expect("serializable")
}

fn raw_algebra(a: &ClusterAlgebra) -> RawAlgebra {
    let names = a.level().op_names();
    let mut entries = Vec::new();
    for (op, t) in a.tensors().iter().enumerate() {
        for ((i, j, k), v) in t.nonzero() {
            entries.push((names[op].to_string(), i, j, k, format_rational(v)));
        }
    }
    RawAlgebra { level: a.level().value(), dim: a.dim(), entries }
}

fn algebra_from_raw(r: &RawAlgebra) -> Result<ClusterAlgebra> {
    let level = Level::from_value(r.level)?;
    let d = r.dim;
    let mut sc = vec![Tensor3::cube(d); level.op_count()];
    for (op, i, j, k, v) in &r.entries {
        let o = level.op_index(op)?;
        for x in [*i, *j, *k] {
            check_index(x, d)?;
        }
        sc[o][(*i, *j, *k)] = parse_rational(v)?;
    }
    ClusterAlgebra::new(level, d, sc)
}

fn raw_bimodule(m: &Bimodule, algebra: Option<String>) -> RawBimodule {
    let names = m.level().op_names();
    let mut entries = Vec::new();
    for (op, name) in names.iter().enumerate() {
        for (side, maps) in [("l", m.lmap(op)), ("r", m.rmap(op))] {
            for (i, mat) in maps.iter().enumerate() {
                for (row, col, v) in matrix_entries(mat) {
                    entries.push((side.to_string(), name.to_string(), i, row, col, v));
                }
            }
        }
    }
    RawBimodule {
        level: m.level().value(),
        algebra_dim: m.algebra_dim(),
        module_dim: m.module_dim(),
        algebra,
        entries,
    }
}

fn bimodule_from_raw(r: &RawBimodule) -> Result<Bimodule> {
    let level = Level::from_value(r.level)?;
    let mut m = Bimodule::zero(level, r.algebra_dim, r.module_dim)?;
    for (side, op, i, row, col, v) in &r.entries {
        let o = level.op_index(op)?;
        check_index(*i, r.algebra_dim)?;
        check_index(*row, r.module_dim)?;
        check_index(*col, r.module_dim)?;
        let maps = match side.as_str() {
            "l" => m.lmap_mut(o),
            "r" => m.rmap_mut(o),
            _ => return Err(Error::Parse(format!("bimodule side `{side}` is not \"l\" or \"r\""))),
        };
        maps[*i][(*row, *col)] = parse_rational(v)?;
    }
    Ok(m)
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Skew => "skew",
        Parity::Sym => "sym",
        Parity::Any => "any",
    }
}

pub fn map_to_value(m: &InterMap) -> serde_json::Value {
    serde_json::to_value(RawMap {
        source_dim: m.source_dim(),
        target_dim: m.target_dim(),
        algebra: None,
        bimodule: None,
        entries: matrix_entries(m.matrix()),
    })
    .expect("serializable")
}

pub fn tensor_to_value(r: &Tensor2) -> serde_json::Value {
    serde_json::to_value(RawTensor {
        dim: r.dim(),
        algebra: None,
        parity: None,
        solves: false,
        entries: matrix_entries(r.matrix()),
    })
    .expect("serializable")
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Bundle> {
        let raw: RawBundle =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        if raw.field != "Q" {
            return Err(Error::Parse(format!("field must be \"Q\", got \"{}\"", raw.field)));
        }
        let ctx = |kind: &str, name: &str| {
            let (kind, name) = (kind.to_string(), name.to_string());
            move |e: Error| Error::Parse(format!("{kind} `{name}`: {e}"))
        };
        let mut b = Bundle {
            meta: raw.meta.map(|m| Meta { provenance: m.provenance, oracle: m.oracle }),
            ..Default::default()
        };
        for (name, r) in &raw.algebras {
            let algebra = algebra_from_raw(r).map_err(ctx("algebra", name))?;
            b.algebras.insert(name.clone(), AlgebraRecord { algebra });
        }
        for (name, r) in &raw.bimodules {
            let bimodule = bimodule_from_raw(r).map_err(ctx("bimodule", name))?;
            b.bimodules.insert(name.clone(), BimoduleRecord { bimodule, algebra: r.algebra.clone() });
        }
        for (name, r) in &raw.maps {
            let m = matrix_from_entries(r.target_dim, r.source_dim, &r.entries)
                .map_err(ctx("map", name))?;
            b.maps.insert(
                name.clone(),
                MapRecord { map: InterMap::new(m), algebra: r.algebra.clone(), bimodule: r.bimodule.clone() },
            );
        }
        for (name, r) in &raw.tensors {
            let m = matrix_from_entries(r.dim, r.dim, &r.entries).map_err(ctx("tensor", name))?;
            let parity = r.parity.as_deref().map(Parity::parse).transpose().map_err(ctx("tensor", name))?;
            b.tensors.insert(
                name.clone(),
                TensorRecord { tensor: Tensor2::new(m)?, algebra: r.algebra.clone(), parity, solves: r.solves },
            );
        }
        for (name, r) in &raw.forms {
            let m = matrix_from_entries(r.dim, r.dim, &r.entries).map_err(ctx("form", name))?;
            b.forms.insert(
                name.clone(),
                FormRecord { form: BilinearForm::new(m)?, algebra: r.algebra.clone(), require: r.require.clone() },
            );
        }
        b.check_references()?;
        Ok(b)
    }

    fn check_references(&self) -> Result<()> {
        let missing = |kind: &str, owner: &str, target: &str| {
            Error::Parse(format!("{kind} `{owner}` references unknown object `{target}`"))
        };
        let alg_refs = self
            .bimodules
            .iter()
            .map(|(n, r)| ("bimodule", n, &r.algebra))
            .chain(self.maps.iter().map(|(n, r)| ("map", n, &r.algebra)))
            .chain(self.tensors.iter().map(|(n, r)| ("tensor", n, &r.algebra)))
            .chain(self.forms.iter().map(|(n, r)| ("form", n, &r.algebra)));
        for (kind, owner, target) in alg_refs {
            if let Some(t) = target {
                if !self.algebras.contains_key(t) {
                    return Err(missing(kind, owner, t));
                }
            }
        }
        for (n, r) in &self.maps {
            if let Some(m) = &r.bimodule {
                if r.algebra.is_none() {
                    return Err(Error::Parse(format!("map `{n}` names a bimodule but no algebra")));
                }
                if !self.bimodules.contains_key(m) && !BUILTIN_BIMODULES.contains(&m.as_str()) {
                    return Err(missing("map", n, m));
                }
            }
        }
        Ok(())
    }

    fn to_raw(&self) -> RawBundle {
        RawBundle {
            field: "Q".into(),
            meta: self
                .meta
                .as_ref()
                .map(|m| RawMeta { provenance: m.provenance.clone(), oracle: m.oracle.clone() }),
            algebras: self.algebras.iter().map(|(n, r)| (n.clone(), raw_algebra(&r.algebra))).collect(),
            bimodules: self
                .bimodules
                .iter()
                .map(|(n, r)| (n.clone(), raw_bimodule(&r.bimodule, r.algebra.clone())))
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|(n, r)| {
                    (
                        n.clone(),
                        RawMap {
                            source_dim: r.map.source_dim(),
                            target_dim: r.map.target_dim(),
                            algebra: r.algebra.clone(),
                            bimodule: r.bimodule.clone(),
                            entries: matrix_entries(r.map.matrix()),
                        },
                    )
                })
                .collect(),
            tensors: self
                .tensors
                .iter()
                .map(|(n, r)| {
                    (
                        n.clone(),
                        RawTensor {
                            dim: r.tensor.dim(),
                            algebra: r.algebra.clone(),
                            parity: r.parity.map(|p| parity_name(p).to_string()),
                            solves: r.solves,
                            entries: matrix_entries(r.tensor.matrix()),
                        },
                    )
                })
                .collect(),
            forms: self
                .forms
                .iter()
                .map(|(n, r)| {
                    (
                        n.clone(),
                        RawForm {
                            dim: r.form.dim(),
                            algebra: r.algebra.clone(),
                            require: r.require.clone(),
                            entries: matrix_entries(r.form.matrix()),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("serializable")
    }

    /// Deterministic text: objects indented, each sparse entry on one line.
    pub fn to_json_string(&self) -> String {
        let mut s = String::new();
        write_value(&mut s, &self.to_value(), 0);
        s.push('\n');
        s
    }

    /// Merge `other` into `self`; objects in `other` replace same-named ones.
    pub fn merge(&mut self, other: Bundle) {
        self.algebras.extend(other.algebras);
        self.bimodules.extend(other.bimodules);
        self.maps.extend(other.maps);
        self.tensors.extend(other.tensors);
        self.forms.extend(other.forms);
        if other.meta.is_some() {
            self.meta = other.meta;
        }
    }

    pub fn algebra(&self, name: &str) -> Result<&ClusterAlgebra> {
        self.algebras
            .get(name)
            .map(|r| &r.algebra)
            .ok_or_else(|| Error::UnknownEntry(format!("algebra `{name}`")))
    }

    /// A bimodule by name; `regular` and `dual_regular` are built from `algebra`.
    pub fn bimodule(&self, name: &str, algebra: &ClusterAlgebra) -> Result<Bimodule> {
        match name {
            "regular" => regular_bimodule(algebra),
            "dual_regular" => dual_bimodule(algebra, &regular_bimodule(algebra)?),
            _ => self
                .bimodules
                .get(name)
                .map(|r| r.bimodule.clone())
                .ok_or_else(|| Error::UnknownEntry(format!("bimodule `{name}`"))),
        }
    }

    pub fn map(&self, name: &str) -> Result<&InterMap> {
        self.maps.get(name).map(|r| &r.map).ok_or_else(|| Error::UnknownEntry(format!("map `{name}`")))
    }

    pub fn tensor(&self, name: &str) -> Result<&Tensor2> {
        self.tensors
            .get(name)
            .map(|r| &r.tensor)
            .ok_or_else(|| Error::UnknownEntry(format!("tensor `{name}`")))
    }

    pub fn form(&self, name: &str) -> Result<&BilinearForm> {
        self.forms.get(name).map(|r| &r.form).ok_or_else(|| Error::UnknownEntry(format!("form `{name}`")))
    }

    /// The kind of object a name refers to, in lookup order.
    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        if self.algebras.contains_key(name) {
            Some("algebra")
        } else if self.bimodules.contains_key(name) {
            Some("bimodule")
        } else if self.maps.contains_key(name) {
            Some("map")
        } else if self.tensors.contains_key(name) {
            Some("tensor")
        } else if self.forms.contains_key(name) {
            Some("form")
        } else {
            None
        }
    }

    /// Run the checks an object's record claims:
    /// algebra → axioms; bimodule → module identities over its algebra;
    /// map → Rota-Baxter or O-operator identity; tensor → declared parity
    /// and (if `solves`) the level's equation; form → required flags.
    pub fn check(&self, name: &str) -> Result<Report> {
        if let Some(r) = self.algebras.get(name) {
            return Ok(check_axioms(&r.algebra));
        }
        if let Some(r) = self.bimodules.get(name) {
            return match &r.algebra {
                Some(a) => check_bimodule(self.algebra(a)?, &r.bimodule),
                None => Ok(Report::ok()),
            };
        }
        if let Some(r) = self.maps.get(name) {
            let Some(an) = &r.algebra else { return Ok(Report::ok()) };
            let a = self.algebra(an)?;
            return match &r.bimodule {
                Some(m) => is_o_operator(a, &self.bimodule(m, a)?, &r.map),
                None => is_rota_baxter(a, &r.map),
            };
        }
        if let Some(r) = self.tensors.get(name) {
            let mut rep = Report::ok();
            if let Some(p) = r.parity {
                if !r.tensor.has_parity(p) {
                    rep.push(flag_violation(&format!("parity-{}", parity_name(p))));
                }
            }
            if r.solves {
                let an = r
                    .algebra
                    .as_ref()
                    .ok_or_else(|| Error::Parse(format!("tensor `{name}` solves but names no algebra")))?;
                rep.merge(check_equation(self.algebra(an)?, &r.tensor)?);
            }
            return Ok(rep);
        }
        if let Some(r) = self.forms.get(name) {
            let mut rep = Report::ok();
            if r.require.is_empty() {
                return Ok(rep);
            }
            let an = r
                .algebra
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("form `{name}` requires flags but names no algebra")))?;
            let cls = classify_form(self.algebra(an)?, &r.form)?;
            let flags = cls.flags();
            for want in &r.require {
                let value = match want.as_str() {
                    "symmetric" => Some(cls.symmetric),
                    "skew" => Some(cls.skew),
                    "nondegenerate" => Some(cls.nondegenerate),
                    _ => flags.iter().find(|(k, _)| k == want).map(|(_, v)| *v).ok_or_else(|| {
                        Error::Parse(format!("form `{name}` requires unknown flag `{want}`"))
                    })?,
                };
                if value != Some(true) {
                    rep.push(flag_violation(want));
                }
            }
            return Ok(rep);
        }
        Err(Error::UnknownEntry(name.to_string()))
    }

    /// Every object's check; only the failing ones are returned.
    pub fn verify_all(&self) -> Result<Vec<(String, Report)>> {
        let names = self
            .algebras
            .keys()
            .chain(self.bimodules.keys())
            .chain(self.maps.keys())
            .chain(self.tensors.keys())
            .chain(self.forms.keys());
        let mut out = Vec::new();
        for n in names {
            let rep = self.check(n)?;
            if !rep.is_ok() {
                out.push((n.clone(), rep));
            }
        }
        Ok(out)
    }
}

fn flag_violation(id: &str) -> Violation {
    Violation { identity_id: id.to_string(), witness: vec![], discrepancy: vec![], entry: None }
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                write_value(out, val, indent + 1);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("json")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NIL2: &str = r#"{
        "field": "Q",
        "algebras": { "nil2": { "level": 1, "dim": 2, "entries": [
            ["star", 0, 0, 0, "1"], ["star", 0, 1, 1, "1"], ["star", 1, 0, 1, "1"] ] } },
        "maps": { "rb": { "source_dim": 2, "target_dim": 2, "algebra": "nil2",
            "entries": [[1, 0, "1"]] } }
    }"#;

    #[test]
    fn parse_roundtrip() {
        let b = Bundle::parse(NIL2).unwrap();
        assert!(b.verify_all().unwrap().is_empty());
        let again = Bundle::parse(&b.to_json_string()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn rejects_bad_field_and_refs() {
        assert!(matches!(Bundle::parse(&NIL2.replace("\"Q\"", "\"R\"")), Err(Error::Parse(_))));
        let bad = NIL2.replace("\"algebra\": \"nil2\"", "\"algebra\": \"nope\"");
        assert!(matches!(Bundle::parse(&bad), Err(Error::Parse(_))));
        let bad = NIL2.replace("\"1\"]]", "\"1/0\"]]");
        assert!(Bundle::parse(&bad).is_err());
    }
}
