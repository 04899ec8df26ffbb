//! Bilinear forms: classification against the invariance / cocycle
//! conditions of each level, the form ↔ tensor bridge, and finer structures
//! induced by nondegenerate forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::bimodule::{dual_bimodule, regular_bimodule};
use crate::cluster::{derived_op, project_coarser, ClusterAlgebra, Level};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, Tensor3};
use crate::operators::{compatible_from_invertible_with, InterMap, Verify};
use crate::report::{Report, Violation};
use crate::yang_baxter::{
    check_aybe, check_d_equation, evaluate_equations, EquivalenceReport, Parity, Tensor2,
    Q_EQUATION,
};

/// B[i][j] = B(e_i, e_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    m: Matrix,
}

impl BilinearForm {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("a bilinear form needs a square matrix".into()));
        }
        Ok(BilinearForm { m })
    }

    pub fn zero(d: usize) -> Self {
        BilinearForm { m: Matrix::zeros(d, d) }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.m[(i, j)]
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.is_symmetric()
    }

    pub fn is_skew(&self) -> bool {
        self.m.is_skew()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.m.rank() == self.dim()
    }

    pub fn has_parity(&self, p: Parity) -> bool {
        match p {
            Parity::Skew => self.is_skew(),
            Parity::Sym => self.is_symmetric(),
            Parity::Any => true,
        }
    }

    /// uᵀ B v
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let b = &self.m[(i, j)];
                if !b.is_zero() && !vj.is_zero() {
                    acc += ui * b * vj;
                }
            }
        }
        acc
    }
}

/// An argument of B: one of the variables x, y, z or a product of two.
#[derive(Clone, Copy, Debug)]
pub enum Arg {
    V(usize),
    P(&'static str, usize, usize),
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// `coef · B(left, right)`.
#[derive(Clone, Copy, Debug)]
pub struct FormTerm {
    pub coef: i64,
    pub left: Arg,
    pub right: Arg,
}

const fn t(coef: i64, left: Arg, right: Arg) -> FormTerm {
    FormTerm { coef, left, right }
}

const fn v(k: usize) -> Arg {
    Arg::V(k)
}

const fn p(sym: &'static str, a: usize, b: usize) -> Arg {
    Arg::P(sym, a, b)
}

/// A form condition: Σ terms = 0 for every basis triple (x, y, z).
pub type FormEquation = (&'static str, &'static [FormTerm]);

pub const ASSOC_FORMS: &[FormEquation] = &[
    ("2.2.6", &[t(1, p("star", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
    (
        "2.2.7",
        &[t(1, p("star", X, Y), v(Z)), t(1, p("star", Y, Z), v(X)), t(1, p("star", Z, X), v(Y))],
    ),
];

pub const DEND_FORMS: &[FormEquation] = &[
    ("3.2.1", &[t(1, p("succ", X, Y), v(Z)), t(-1, v(Y), p("star", Z, X))]),
    ("3.2.2", &[t(1, p("prec", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
    ("3.2.3", &[t(1, p("succ", X, Y), v(Z)), t(1, v(X), p("prec", Y, Z))]),
    (
        "3.2.4",
        &[t(1, p("succ", X, Y), v(Z)), t(1, p("succ", Y, Z), v(X)), t(1, p("succ", Z, X), v(Y))],
    ),
    (
        "3.2.5",
        &[t(1, p("prec", X, Y), v(Z)), t(1, p("prec", Y, Z), v(X)), t(1, p("prec", Z, X), v(Y))],
    ),
    (
        "3.2.8",
        &[t(1, p("star", X, Y), v(Z)), t(-1, v(Y), p("prec", Z, X)), t(-1, v(X), p("succ", Y, Z))],
    ),
];

// On a quadri-algebra, succ/prec/vee/wedge are the horizontal and vertical
// dendriform products.
pub const QUADRI_FORMS: &[FormEquation] = &[
    ("3.4.13", &[t(1, p("se", X, Y), v(Z)), t(-1, v(Y), p("star", Z, X))]),
    ("3.4.14", &[t(1, p("ne", X, Y), v(Z)), t(1, v(X), p("prec", Y, Z))]),
    ("3.4.15", &[t(1, p("nw", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
    ("3.4.16", &[t(1, p("sw", X, Y), v(Z)), t(1, v(Y), p("succ", Z, X))]),
    ("4.3.1", &[t(1, v(X), p("succ", Y, Z)), t(-1, p("wedge", X, Y), v(Z))]),
    ("4.3.2", &[t(1, v(Y), p("prec", Z, X)), t(-1, p("vee", X, Y), v(Z))]),
    ("4.3.3", &[t(1, p("se", X, Y), v(Z)), t(-1, v(X), p("nw", Y, Z))]),
    (
        "4.3.4",
        &[t(1, p("ne", X, Y), v(Z)), t(1, p("sw", Z, X), v(Y)), t(1, p("star", Y, Z), v(X))],
    ),
    (
        "4.3.5",
        &[t(1, p("se", X, Y), v(Z)), t(1, p("ne", Y, Z), v(X)), t(-1, p("succ", Z, X), v(Y))],
    ),
    (
        "4.3.6",
        &[t(1, p("nw", X, Y), v(Z)), t(1, p("sw", Z, X), v(Y)), t(-1, p("prec", Y, Z), v(X))],
    ),
    (
        "4.3.7-1",
        &[t(1, v(Z), p("succ", X, Y)), t(-1, v(X), p("sw", Y, Z)), t(1, v(Y), p("wedge", Z, X))],
    ),
    (
        "4.3.7-2",
        &[t(1, v(Z), p("prec", X, Y)), t(1, v(X), p("vee", Y, Z)), t(-1, v(Y), p("ne", Z, X))],
    ),
];

/// The identities tying a form to the finer structure it induces, evaluated
/// on the finer algebra (the coarse products appear as its derived sums).
pub const DEND_FROM_FORM: &[FormEquation] = &[
    ("2.2.8-1", &[t(1, p("succ", X, Y), v(Z)), t(-1, v(Y), p("star", Z, X))]),
    ("2.2.8-2", &[t(1, p("prec", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
];

pub const QUADRI_FROM_FORM: &[FormEquation] = &[
    ("3.4.13", &[t(1, p("se", X, Y), v(Z)), t(-1, v(Y), p("star", Z, X))]),
    ("3.4.14", &[t(1, p("ne", X, Y), v(Z)), t(1, v(X), p("prec", Y, Z))]),
    ("3.4.15", &[t(1, p("nw", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
    ("3.4.16", &[t(1, p("sw", X, Y), v(Z)), t(1, v(Y), p("succ", Z, X))]),
];

// Depth quadri products on an octo-algebra: ↘ = se12, ↖ = nw12,
// ≻ = gg, ≺ = ll, ∨ = bigvee, ∧ = bigwedge.
pub const OCTO_FROM_FORM: &[FormEquation] = &[
    ("4.4.22-se1", &[t(1, p("se1", X, Y), v(Z)), t(-1, v(X), p("nw12", Y, Z))]),
    ("4.4.22-se2", &[t(1, p("se2", X, Y), v(Z)), t(-1, v(Y), p("star", Z, X))]),
    ("4.4.22-ne1", &[t(1, p("ne1", X, Y), v(Z)), t(1, v(X), p("ll", Y, Z))]),
    ("4.4.22-ne2", &[t(1, p("ne2", X, Y), v(Z)), t(1, v(Y), p("bigvee", Z, X))]),
    ("4.4.22-nw1", &[t(1, p("nw1", X, Y), v(Z)), t(-1, v(X), p("star", Y, Z))]),
    ("4.4.22-nw2", &[t(1, p("nw2", X, Y), v(Z)), t(-1, v(Y), p("se12", Z, X))]),
    ("4.4.22-sw1", &[t(1, p("sw1", X, Y), v(Z)), t(1, v(X), p("bigwedge", Y, Z))]),
    ("4.4.22-sw2", &[t(1, p("sw2", X, Y), v(Z)), t(1, v(Y), p("gg", Z, X))]),
];

/// The condition tables whose products are those of a `level` algebra.
pub fn form_equations(level: Level) -> &'static [FormEquation] {
    match level {
        Level::Assoc => ASSOC_FORMS,
        Level::Dend => DEND_FORMS,
        Level::Quadri => QUADRI_FORMS,
        Level::Octo => &[],
    }
}

fn eval_arg(prods: &HashMap<&str, Tensor3>, arg: Arg, idx: [usize; 3], d: usize) -> Vec<Rational> {
    match arg {
        Arg::V(k) => {
            let mut e = vec![Rational::zero(); d];
            e[idx[k]] = Rational::from_integer(1.into());
            e
        }
        Arg::P(sym, a, b) => {
            let t = &prods[sym];
            (0..d).map(|k| t[(idx[a], idx[b], k)].clone()).collect()
        }
    }
}

/// Evaluate each condition on every basis triple; one violation per failing
/// triple, witness `[x, y, z]`.
pub fn evaluate_form_equations(
    a: &ClusterAlgebra,
    b: &BilinearForm,
    eqs: &[FormEquation],
) -> Result<Report> {
    let d = a.dim();
    if b.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "form has dimension {} but the algebra has dimension {d}",
            b.dim()
        )));
    }
    let mut prods: HashMap<&str, Tensor3> = HashMap::new();
    for (_, terms) in eqs {
        for term in terms.iter() {
            for arg in [term.left, term.right] {
                if let Arg::P(sym, _, _) = arg {
                    if !prods.contains_key(sym) {
                        prods.insert(sym, derived_op(a, sym)?);
                    }
                }
            }
        }
    }
    let mut report = Report::ok();
    for (id, terms) in eqs {
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let idx = [x, y, z];
                    let mut acc = Rational::zero();
                    for term in terms.iter() {
                        let l = eval_arg(&prods, term.left, idx, d);
                        let r = eval_arg(&prods, term.right, idx, d);
                        acc += b.eval(&l, &r) * Rational::from_integer(term.coef.into());
                    }
                    if !acc.is_zero() {
                        report.push(Violation {
                            identity_id: id.to_string(),
                            witness: vec![x, y, z],
                            discrepancy: vec![acc],
                            entry: None,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

pub const QUADRI_AUX: &[&str] = &["4.3.1", "4.3.2", "4.3.3", "4.3.4", "4.3.5", "4.3.6"];

/// Flags of a form on an algebra. A level-n algebra populates its own flags
/// and, through the projections used by the finer-structure constructions
/// (associated associative, horizontal dendriform, depth quadri), those of
/// every coarser level; flags of other levels stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormClassification {
    pub symmetric: bool,
    pub skew: bool,
    pub nondegenerate: bool,
    pub invariant_assoc: Option<bool>,
    pub connes_cocycle: Option<bool>,
    pub dend_invariant: Option<bool>,
    pub dend_aux: Option<bool>,
    pub dend_cyclic_succ: Option<bool>,
    pub dend_cyclic_prec: Option<bool>,
    pub dend_2cocycle: Option<bool>,
    pub quadri_invariant: Option<bool>,
    pub quadri_aux: Option<BTreeMap<String, bool>>,
    pub quadri_2cocycle: Option<bool>,
    /// Raw report of every evaluated condition, keyed by equation id.
    pub equations: BTreeMap<String, Report>,
}

impl FormClassification {
    /// Whether the raw condition `id` holds (None if not evaluated).
    pub fn holds(&self, id: &str) -> Option<bool> {
        self.equations.get(id).map(Report::is_ok)
    }

    /// The named conditional flags with their values, in a fixed order.
    pub fn flags(&self) -> Vec<(String, Option<bool>)> {
        let mut out = vec![
            ("invariant_assoc".to_string(), self.invariant_assoc),
            ("connes_cocycle".to_string(), self.connes_cocycle),
            ("dend_invariant".to_string(), self.dend_invariant),
            ("dend_aux".to_string(), self.dend_aux),
            ("dend_cyclic_succ".to_string(), self.dend_cyclic_succ),
            ("dend_cyclic_prec".to_string(), self.dend_cyclic_prec),
            ("dend_2cocycle".to_string(), self.dend_2cocycle),
            ("quadri_invariant".to_string(), self.quadri_invariant),
        ];
        match &self.quadri_aux {
            Some(m) => out.extend(m.iter().map(|(k, v)| (format!("quadri_aux_{k}"), Some(*v)))),
            None => out.extend(QUADRI_AUX.iter().map(|k| (format!("quadri_aux_{k}"), None))),
        }
        out.push(("quadri_2cocycle".to_string(), self.quadri_2cocycle));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("symmetric".into(), self.symmetric.into());
        obj.insert("skew".into(), self.skew.into());
        obj.insert("nondegenerate".into(), self.nondegenerate.into());
        for (k, v) in self.flags() {
            if let Some(b) = v {
                obj.insert(k, b.into());
            }
        }
        let eqs: serde_json::Map<String, serde_json::Value> = self
            .equations
            .iter()
            .map(|(k, r)| (k.clone(), r.is_ok().into()))
            .collect();
        obj.insert("equations".into(), eqs.into());
        serde_json::Value::Object(obj)
    }
}

impl fmt::Display for FormClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symmetric: {}", self.symmetric)?;
        writeln!(f, "skew: {}", self.skew)?;
        writeln!(f, "nondegenerate: {}", self.nondegenerate)?;
        for (k, v) in self.flags() {
            if let Some(b) = v {
                writeln!(f, "{k}: {b}")?;
            }
        }
        Ok(())
    }
}

pub fn classify_form(a: &ClusterAlgebra, b: &BilinearForm) -> Result<FormClassification> {
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "form has dimension {} but the algebra has dimension {}",
            b.dim(),
            a.dim()
        )));
    }
    let mut c = FormClassification {
        symmetric: b.is_symmetric(),
        skew: b.is_skew(),
        nondegenerate: b.is_nondegenerate(),
        ..Default::default()
    };
    // Walk down the projection chain, evaluating each level's conditions on
    // the algebra whose products they use.
    let mut cur = a.clone();
    loop {
        for (id, rep) in split_by_id(&cur, b, form_equations(cur.level()))? {
            c.equations.insert(id, rep);
        }
        if cur.level() == Level::Assoc {
            break;
        }
        cur = project_coarser(&cur)?;
    }
    let ok = |id: &str| c.equations.get(id).map(Report::is_ok);
    let all = |ids: &[&str]| -> Option<bool> {
        ids.iter().map(|id| ok(id)).collect::<Option<Vec<bool>>>().map(|v| v.iter().all(|b| *b))
    };
    let (sym, skew) = (c.symmetric, c.skew);
    let with = |parity: bool, x: Option<bool>| x.map(|b| parity && b);
    c.invariant_assoc = ok("2.2.6");
    c.connes_cocycle = with(skew, ok("2.2.7"));
    c.dend_invariant = with(skew, all(&["3.2.1", "3.2.2"]));
    c.dend_aux = ok("3.2.3");
    c.dend_cyclic_succ = ok("3.2.4");
    c.dend_cyclic_prec = ok("3.2.5");
    c.dend_2cocycle = with(sym, ok("3.2.8"));
    c.quadri_invariant = with(sym, all(&["3.4.13", "3.4.14", "3.4.15", "3.4.16"]));
    c.quadri_aux = all(QUADRI_AUX).map(|_| {
        QUADRI_AUX.iter().map(|id| (id.to_string(), ok(id).unwrap_or(false))).collect()
    });
    c.quadri_2cocycle = with(skew, all(&["4.3.7-1", "4.3.7-2"]));
    Ok(c)
}

fn split_by_id(
    a: &ClusterAlgebra,
    b: &BilinearForm,
    eqs: &[FormEquation],
) -> Result<Vec<(String, Report)>> {
    eqs.iter()
        .map(|eq| Ok((eq.0.to_string(), evaluate_form_equations(a, b, std::slice::from_ref(eq))?)))
        .collect()
}

/// B = r⁻¹ as matrices. This sends the block tensor [[0,I],[−I,0]] to the
/// skew form ω(x+a*, y+b*) = −⟨x,b*⟩ + ⟨a*,y⟩ and the symmetric block
/// [[0,I],[I,0]] to B(x+a*, y+b*) = ⟨x,b*⟩ + ⟨a*,y⟩.
pub fn tensor_to_form(r: &Tensor2) -> Result<BilinearForm> {
    BilinearForm::new(r.matrix().inverse()?)
}

/// Inverse of `tensor_to_form`: r = B⁻¹.
pub fn form_to_tensor(b: &BilinearForm) -> Result<Tensor2> {
    Tensor2::new(b.matrix().inverse()?)
}

/// The flag and parity a form needs to induce the next finer structure.
fn finer_requirement(level: Level) -> Result<(&'static str, Parity)> {
    match level {
        Level::Assoc => Ok(("connes_cocycle", Parity::Skew)),
        Level::Dend => Ok(("dend_2cocycle", Parity::Sym)),
        Level::Quadri => Ok(("quadri_2cocycle", Parity::Skew)),
        Level::Octo => Err(Error::LevelMismatch("no finer structure above level 8".into())),
    }
}

/// The identities a finer structure built from `b` should satisfy.
pub fn compatibility_equations(fine: Level) -> &'static [FormEquation] {
    match fine {
        Level::Assoc => &[],
        Level::Dend => DEND_FROM_FORM,
        Level::Quadri => QUADRI_FROM_FORM,
        Level::Octo => OCTO_FROM_FORM,
    }
}

/// Check the defining identities of a form-induced structure on `fine`.
pub fn check_form_compatibility(fine: &ClusterAlgebra, b: &BilinearForm) -> Result<Report> {
    evaluate_form_equations(fine, b, compatibility_equations(fine.level()))
}

/// The compatible finer structure determined by a nondegenerate form:
/// with T: A → A*, ⟨T x, y⟩ = B(x, y), T⁻¹ is an O-operator for the dual
/// of the regular bimodule and induces the finer products on A.
pub fn finer_from_form(a: &ClusterAlgebra, b: &BilinearForm) -> Result<ClusterAlgebra> {
    let (flag, parity) = finer_requirement(a.level())?;
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch("form and algebra dimensions differ".into()));
    }
    if !b.has_parity(parity) {
        return Err(Error::Parity(format!("{flag} needs a {parity:?} form")));
    }
    if !b.is_nondegenerate() {
        return Err(Error::Singular);
    }
    let cls = classify_form(a, b)?;
    let has = cls.flags().into_iter().any(|(k, v)| k == flag && v == Some(true));
    if !has {
        return Err(Error::MissingFlag(flag.to_string()));
    }
    let out = finer_from_form_with(a, b, Verify::Full)?;
    let rep = check_form_compatibility(&out, b)?;
    if !rep.is_ok() {
        return Err(Error::PostVerification(rep));
    }
    Ok(out)
}

/// The same construction without the flag requirement or any checks; the
/// result is a finer structure exactly when the form has the required flag.
pub fn finer_from_form_unverified(a: &ClusterAlgebra, b: &BilinearForm) -> Result<ClusterAlgebra> {
    finer_from_form_with(a, b, Verify::Skip)
}

fn finer_from_form_with(a: &ClusterAlgebra, b: &BilinearForm, verify: Verify) -> Result<ClusterAlgebra> {
    finer_requirement(a.level())?;
    // T(e_i) = Σ_j B(e_i, e_j) e_j*, so the matrix of T is Bᵀ.
    let s = InterMap::new(b.matrix().transpose().inverse()?);
    let dual = dual_bimodule(a, &regular_bimodule(a)?)?;
    compatible_from_invertible_with(a, &dual, &s, verify)
}

fn form_condition(a: &ClusterAlgebra, b: &BilinearForm) -> Result<Report> {
    let ids: &[&str] = match a.level() {
        Level::Assoc => &["2.2.7"],
        Level::Dend => &["3.2.8"],
        Level::Quadri => &["4.3.7-1", "4.3.7-2"],
        Level::Octo => unreachable!(),
    };
    let eqs: Vec<FormEquation> = form_equations(a.level())
        .iter()
        .filter(|e| ids.contains(&e.0))
        .copied()
        .collect();
    evaluate_form_equations(a, b, &eqs)
}

/// Both sides of the tensor ↔ form correspondence for an invertible r:
/// ("equation", the level's tensor equation on r) and ("form", the cocycle
/// condition on tensor_to_form(r)).
pub fn bridge_equivalence(a: &ClusterAlgebra, r: &Tensor2) -> Result<EquivalenceReport> {
    let parity = match a.level() {
        Level::Assoc | Level::Quadri => Parity::Skew,
        Level::Dend => Parity::Sym,
        Level::Octo => {
            return Err(Error::LevelMismatch("no form bridge at level 8".into()));
        }
    };
    if r.dim() != a.dim() {
        return Err(Error::DimensionMismatch("tensor and algebra dimensions differ".into()));
    }
    if !r.has_parity(parity) {
        return Err(Error::Parity(format!("the level-{} bridge needs a {parity:?} tensor", a.level())));
    }
    let b = tensor_to_form(r)?;
    let equation = match a.level() {
        Level::Assoc => check_aybe(a, r)?,
        Level::Dend => check_d_equation(a, r)?,
        _ => evaluate_equations(a, r, Q_EQUATION)?,
    };
    let form = form_condition(a, &b)?;
    Ok(EquivalenceReport {
        conditions: vec![("equation".to_string(), equation), ("form".to_string(), form)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn block(d: usize, sign: i64) -> Matrix {
        Matrix::from_fn(2 * d, 2 * d, |i, j| {
            if i < d && j == i + d {
                int(1)
            } else if i >= d && j + d == i {
                int(sign)
            } else {
                int(0)
            }
        })
    }

    #[test]
    fn pinned_bridge() {
        let skew = Tensor2::new(block(2, -1)).unwrap();
        assert_eq!(tensor_to_form(&skew).unwrap().matrix(), &block(2, -1).neg());
        let sym = Tensor2::new(block(2, 1)).unwrap();
        assert_eq!(tensor_to_form(&sym).unwrap().matrix(), &block(2, 1));
    }

    #[test]
    fn scalar_bridge() {
        let r = Tensor2::new(Matrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(tensor_to_form(&r).unwrap().get(0, 0), &crate::linalg::q(1, 3));
    }

    #[test]
    fn zero_form_flags() {
        let a = ClusterAlgebra::zero(Level::Quadri, 2);
        let c = classify_form(&a, &BilinearForm::zero(2)).unwrap();
        assert!(!c.nondegenerate);
        assert!(c.flags().iter().all(|(_, v)| *v == Some(true)));
    }

    #[test]
    fn level_populates_coarser_only() {
        let a = ClusterAlgebra::zero(Level::Dend, 2);
        let c = classify_form(&a, &BilinearForm::zero(2)).unwrap();
        assert_eq!(c.connes_cocycle, Some(true));
        assert_eq!(c.quadri_invariant, None);
        assert_eq!(c.quadri_aux, None);
    }
}
