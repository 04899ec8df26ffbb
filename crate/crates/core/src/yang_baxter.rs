//! Tensors in A⊗A, the slot-product calculus, the AYBE / D- / Q- / O-equations
//! and the constructions relating their solutions to O-operators.
//!
//! `r = Σ r_ij e_i⊗e_j` is read as the map A* → A with `r(e_j*) = Σ_i r_ij e_i`,
//! so the matrix of that map is the coefficient matrix itself.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::bimodule::{
    dual_bimodule, regular_bimodule, restrict_bimodule, semidirect_sum, semidirect_sum_unchecked,
    Bimodule,
};
use crate::cluster::{
    check_axioms, derived_op, mult_operator, project, project_coarser, ClusterAlgebra, Level,
    Side,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, Tensor3};
use crate::operators::{induce_on_module, is_o_operator, InterMap, Verify};
use crate::report::{Report, Violation};

/// Parity requested of / declared for a tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Skew,
    Sym,
    Any,
}

impl Parity {
    pub fn parse(s: &str) -> Result<Parity> {
        match s.to_ascii_lowercase().as_str() {
            "skew" => Ok(Parity::Skew),
            "sym" | "symmetric" => Ok(Parity::Sym),
            "any" | "none" => Ok(Parity::Any),
            _ => Err(Error::Parse(format!("unknown parity `{s}`"))),
        }
    }
}

/// `r = Σ r_ij e_i ⊗ e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    m: Matrix,
}

impl Tensor2 {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("Tensor2 needs a square matrix".into()));
        }
        Ok(Tensor2 { m })
    }

    pub fn zero(d: usize) -> Self {
        Tensor2 { m: Matrix::zeros(d, d) }
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        Tensor2 { m: Matrix::from_fn(d, d, f) }
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

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.m[(i, j)] = v;
    }

    /// σ(r) = Σ r_ij e_j ⊗ e_i
    pub fn flip(&self) -> Tensor2 {
        Tensor2 { m: self.m.transpose() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.is_symmetric()
    }

    pub fn is_skew(&self) -> bool {
        self.m.is_skew()
    }

    pub fn has_parity(&self, p: Parity) -> bool {
        match p {
            Parity::Skew => self.is_skew(),
            Parity::Sym => self.is_symmetric(),
            Parity::Any => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2> {
        Ok(Tensor2 { m: self.m.add(other.m())? })
    }

    pub fn scale(&self, s: &Rational) -> Tensor2 {
        Tensor2 { m: self.m.scale(s) }
    }

    fn m(&self) -> &Matrix {
        &self.m
    }

    /// r as the map A* → A.
    pub fn as_map(&self) -> InterMap {
        InterMap::new(self.m.clone())
    }
}

/// The three tensor legs of A⊗A⊗A a Tensor2 can occupy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    S12,
    S13,
    S23,
}

impl Slot {
    fn legs(self) -> (usize, usize) {
        match self {
            Slot::S12 => (0, 1),
            Slot::S13 => (0, 2),
            Slot::S23 => (1, 2),
        }
    }

    pub fn parse(s: &str) -> Result<Slot> {
        match s {
            "12" => Ok(Slot::S12),
            "13" => Ok(Slot::S13),
            "23" => Ok(Slot::S23),
            _ => Err(Error::Parse(format!("unknown slot `{s}`"))),
        }
    }
}

/// `r_α ∘ s_β`: the ∘-left factor is always taken from `r`.
pub fn slot_product(
    a: &ClusterAlgebra,
    op: &str,
    r: &Tensor2,
    s: &Tensor2,
    place: (Slot, Slot),
) -> Result<Tensor3> {
    let t = derived_op(a, op)?;
    slot_product_tensor(&t, r, s, place)
}

fn slot_product_tensor(t: &Tensor3, r: &Tensor2, s: &Tensor2, place: (Slot, Slot)) -> Result<Tensor3> {
    let d = t.dims().0;
    if r.dim() != d || s.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "tensors of dim {}/{} in a dim-{d} algebra",
            r.dim(),
            s.dim()
        )));
    }
    let (alpha, beta) = place;
    if alpha == beta {
        return Err(Error::Parse("slot placement needs two distinct slots".into()));
    }
    let (a1, a2) = alpha.legs();
    let (b1, b2) = beta.legs();
    let shared = [a1, a2].into_iter().find(|x| *x == b1 || *x == b2).unwrap();
    // products e_x ∘ e_y, nonzero coordinates only
    let mut prod: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); d]; d];
    for ((x, y, p), v) in t.nonzero() {
        prod[x][y].push((p, v.clone()));
    }
    let nz = |m: &Tensor2| -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if !m.get(i, j).is_zero() {
                    out.push((i, j, m.get(i, j).clone()));
                }
            }
        }
        out
    };
    let (rn, sn) = (nz(r), nz(s));
    let mut out = Tensor3::cube(d);
    for (i, j, rv) in &rn {
        for (k, l, sv) in &sn {
            let mut idx = [0usize; 3];
            idx[a1] = *i;
            idx[a2] = *j;
            idx[b1] = *k;
            idx[b2] = *l;
            let x = if a1 == shared { *i } else { *j };
            let y = if b1 == shared { *k } else { *l };
            let w = rv * sv;
            for (p, c) in &prod[x][y] {
                idx[shared] = *p;
                let cell = &mut out[(idx[0], idx[1], idx[2])];
                *cell += &w * c;
            }
        }
    }
    Ok(out)
}

/// One term `coef · (r_α ∘ r_β)` of an equation written as Σ terms = 0.
#[derive(Clone, Copy, Debug)]
pub struct Term {
    pub coef: i64,
    pub op: &'static str,
    pub left: Slot,
    pub right: Slot,
}

const fn t(coef: i64, op: &'static str, left: Slot, right: Slot) -> Term {
    Term { coef, op, left, right }
}

use Slot::{S12, S13, S23};

/// Tensor equations, each as (id, Σ terms = 0).
pub const AYBE: &[(&str, &[Term])] =
    &[("2.2.1", &[t(1, "star", S12, S13), t(1, "star", S13, S23), t(-1, "star", S23, S12)])];

pub const D_EQUATION: &[(&str, &[Term])] =
    &[("2.3.10", &[t(1, "star", S12, S13), t(-1, "prec", S13, S23), t(-1, "succ", S23, S12)])];

pub const Q_EQUATION: &[(&str, &[Term])] = &[
    (
        "3.4.17",
        &[t(1, "succ", S13, S23), t(-1, "ne", S23, S12), t(-1, "nw", S23, S12), t(-1, "sw", S12, S13)],
    ),
    (
        "3.4.18",
        &[t(1, "prec", S13, S23), t(1, "ne", S23, S12), t(1, "se", S12, S13), t(1, "sw", S12, S13)],
    ),
];

/// Sum of the two Q-equations.
pub const Q_CONSEQUENCE: &[(&str, &[Term])] =
    &[("3.4.19", &[t(1, "star", S13, S23), t(-1, "nw", S23, S12), t(1, "se", S12, S13)])];

pub const Q_DUAL_FORMS: &[(&str, &[Term])] = &[
    ("4.2.5", &[t(1, "se", S13, S23), t(-1, "star", S23, S12), t(1, "nw", S12, S13)]),
    ("4.2.6", &[t(1, "ne", S13, S23), t(1, "vee", S23, S12), t(-1, "prec", S12, S13)]),
    ("4.2.7", &[t(1, "nw", S13, S23), t(-1, "se", S23, S12), t(1, "star", S12, S13)]),
    ("4.2.8", &[t(1, "sw", S13, S23), t(1, "succ", S23, S12), t(-1, "wedge", S12, S13)]),
];

pub const O_EQUATION: &[(&str, &[Term])] = &[
    ("4.4.23", &[t(1, "se12", S13, S23), t(-1, "sigma1", S23, S12), t(-1, "nw2", S12, S13)]),
    ("4.4.24", &[t(1, "ne12", S13, S23), t(1, "vee1", S23, S12), t(1, "prec2", S12, S13)]),
    ("4.4.25", &[t(1, "nw12", S13, S23), t(-1, "se1", S23, S12), t(-1, "sigma2", S12, S13)]),
    ("4.4.26", &[t(1, "sw12", S13, S23), t(1, "succ1", S23, S12), t(1, "wedge2", S12, S13)]),
];

/// Evaluate equations `Σ terms = 0` on `r`; every nonzero coordinate of
/// every equation becomes a violation with witness (p,q,t).
pub fn evaluate_equations(
    a: &ClusterAlgebra,
    r: &Tensor2,
    eqs: &[(&str, &[Term])],
) -> Result<Report> {
    let mut cache: HashMap<(&str, Slot, Slot), Tensor3> = HashMap::new();
    let mut tensors: HashMap<&str, Tensor3> = HashMap::new();
    let d = a.dim();
    let mut report = Report::ok();
    for (id, terms) in eqs {
        let mut acc = Tensor3::cube(d);
        for term in terms.iter() {
            if !tensors.contains_key(term.op) {
                tensors.insert(term.op, derived_op(a, term.op)?);
            }
            let key = (term.op, term.left, term.right);
            if !cache.contains_key(&key) {
                let v = slot_product_tensor(&tensors[term.op], r, r, (term.left, term.right))?;
                cache.insert(key, v);
            }
            acc.add_scaled(&cache[&key], &Rational::from_integer(term.coef.into()));
        }
        for ((p, q, s), v) in acc.nonzero() {
            report.push(Violation {
                identity_id: id.to_string(),
                witness: vec![p, q, s],
                discrepancy: vec![v.clone()],
                entry: None,
            });
        }
    }
    Ok(report)
}

fn require_level(a: &ClusterAlgebra, lv: Level, what: &str) -> Result<()> {
    if a.level() != lv {
        return Err(Error::LevelMismatch(format!(
            "{what} needs a level-{lv} algebra, got level {}",
            a.level()
        )));
    }
    Ok(())
}

fn require_parity(r: &Tensor2, p: Parity, what: &str) -> Result<()> {
    if !r.has_parity(p) {
        return Err(Error::Parity(format!("{what} needs a {p:?} tensor")));
    }
    Ok(())
}

pub fn check_aybe(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Assoc, "AYBE")?;
    evaluate_equations(a, r, AYBE)
}

pub fn check_d_equation(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Dend, "D-equation")?;
    evaluate_equations(a, r, D_EQUATION)
}

/// Both Q-equations plus their sum as a cross-check.
pub fn check_q_equation(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Quadri, "Q-equation")?;
    let mut rep = evaluate_equations(a, r, Q_EQUATION)?;
    rep.merge(evaluate_equations(a, r, Q_CONSEQUENCE)?);
    Ok(rep)
}

pub fn check_q_dual_forms(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Quadri, "Q dual forms")?;
    require_parity(r, Parity::Skew, "the dual forms of the Q-equation")?;
    evaluate_equations(a, r, Q_DUAL_FORMS)
}

pub fn check_o_equation(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Octo, "O-equation")?;
    require_parity(r, Parity::Sym, "the O-equation")?;
    evaluate_equations(a, r, O_EQUATION)
}

/// The equation attached to the level: AYBE, D-, Q- or O-equation.
pub fn check_equation(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    match a.level() {
        Level::Assoc => check_aybe(a, r),
        Level::Dend => check_d_equation(a, r),
        Level::Quadri => check_q_equation(a, r),
        Level::Octo => check_o_equation(a, r),
    }
}

/// r as an O-operator of (A,*) for the dual regular bimodule (R*, L*).
pub fn aybe_as_o_operator(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Assoc, "AYBE")?;
    require_parity(r, Parity::Skew, "the O-operator form of the AYBE")?;
    let m = dual_bimodule(a, &regular_bimodule(a)?)?;
    is_o_operator(a, &m, &r.as_map())
}

/// Several conditions that should all hold or all fail together.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub conditions: Vec<(String, Report)>,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        let first = self.conditions.first().map(|c| c.1.is_ok());
        self.conditions.iter().all(|c| Some(c.1.is_ok()) == first)
    }

    pub fn all_ok(&self) -> bool {
        self.conditions.iter().all(|c| c.1.is_ok())
    }

    pub fn booleans(&self) -> Vec<(&str, bool)> {
        self.conditions.iter().map(|(n, r)| (n.as_str(), r.is_ok())).collect()
    }
}

fn only_ids(rep: &Report, prefix: &str, relabel: &str) -> Report {
    Report {
        violations: rep
            .violations
            .iter()
            .filter(|v| v.identity_id == prefix)
            .cloned()
            .map(|mut v| {
                v.identity_id = relabel.to_string();
                v
            })
            .collect(),
    }
}

/// For symmetric r on a dendriform algebra:
/// (1) the D-equation; (2) r is an O-operator of (A,*) for (R_≺*, L_≻*);
/// (3) the ≻-component and (4) the ≺-component of r being an O-operator
/// of A for the dual regular bimodule.
pub fn d_equation_equivalents(a: &ClusterAlgebra, r: &Tensor2) -> Result<EquivalenceReport> {
    require_level(a, Level::Dend, "D-equation")?;
    require_parity(r, Parity::Sym, "the D-equation equivalences")?;
    let reg = regular_bimodule(a)?;
    let (assoc, split) = restrict_bimodule(a, &reg, "assoc-succ-prec")?;
    let o_assoc = is_o_operator(&assoc, &dual_bimodule(&assoc, &split)?, &r.as_map())?;
    let o_dend = is_o_operator(a, &dual_bimodule(a, &reg)?, &r.as_map())?;
    Ok(EquivalenceReport {
        conditions: vec![
            ("D-equation".into(), check_d_equation(a, r)?),
            ("O-operator of (A,*) for (R_prec*, L_succ*)".into(), o_assoc),
            ("succ component".into(), only_ids(&o_dend, "3.3.1-1", "3.3.2")),
            ("prec component".into(), only_ids(&o_dend, "3.3.1-2", "3.3.3")),
        ],
    })
}

/// For skew r on a quadri-algebra: the Q-equation; r as an O-operator of
/// the horizontal dendriform algebra for the dual of (L_se, R_ne, L_sw, R_nw);
/// r as an O-operator of the quadri-algebra for its dual regular bimodule;
/// and the dual forms (4.2.6) ∧ (4.2.8).
pub fn q_equation_equivalents(a: &ClusterAlgebra, r: &Tensor2) -> Result<EquivalenceReport> {
    require_level(a, Level::Quadri, "Q-equation")?;
    require_parity(r, Parity::Skew, "the Q-equation equivalences")?;
    let reg = regular_bimodule(a)?;
    let (horiz, split) = restrict_bimodule(a, &reg, "horiz-dend")?;
    let o_horiz = is_o_operator(&horiz, &dual_bimodule(&horiz, &split)?, &r.as_map())?;
    let o_quadri = is_o_operator(a, &dual_bimodule(a, &reg)?, &r.as_map())?;
    let duals = check_q_dual_forms(a, r)?;
    let pair = Report {
        violations: duals
            .violations
            .into_iter()
            .filter(|v| v.identity_id == "4.2.6" || v.identity_id == "4.2.8")
            .collect(),
    };
    Ok(EquivalenceReport {
        conditions: vec![
            ("Q-equation".into(), evaluate_equations(a, r, Q_EQUATION)?),
            ("O-operator of the horizontal dendriform algebra".into(), o_horiz),
            ("O-operator of the quadri-algebra".into(), o_quadri),
            ("4.2.6 and 4.2.8".into(), pair),
        ],
    })
}

/// The bimodule of the next-coarser algebra for which the identity map is
/// an O-operator recovering `fine`: l_∘ = L of the left child of ∘,
/// r_∘ = R of the right child.
pub fn split_bimodule(fine: &ClusterAlgebra) -> Result<(ClusterAlgebra, Bimodule)> {
    let coarse = project_coarser(fine)?;
    let lv = coarse.level();
    let d = fine.dim();
    let names = fine.level().op_names();
    let mut slots = Vec::new();
    for c in 0..lv.op_count() {
        for side in [Side::Left, Side::Right] {
            let child = names[fine.level().child(c, side)];
            slots.push(
                (0..d)
                    .map(|i| mult_operator(fine, child, side, i))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    let m = Bimodule::from_slots(lv, d, d, slots)?;
    Ok((coarse, m))
}

/// O-operator test for r on the depth quadri-algebra of an octo-algebra,
/// for the dual of (L_∘2, R_∘1).
pub fn o_equation_as_o_operator(a: &ClusterAlgebra, r: &Tensor2) -> Result<Report> {
    require_level(a, Level::Octo, "O-equation")?;
    let (depth, split) = split_bimodule(a)?;
    is_o_operator(&depth, &dual_bimodule(&depth, &split)?, &r.as_map())
}

/// Result of lifting T: V → A into the double A ⋉ V*.
#[derive(Clone, Debug)]
pub struct Lift {
    pub double: ClusterAlgebra,
    pub r: Tensor2,
    pub equation: Report,
    pub o_operator: Report,
}

impl Lift {
    pub fn agree(&self) -> bool {
        self.equation.is_ok() == self.o_operator.is_ok()
    }
}

/// The parity used by the lift at each level.
pub fn lift_parity(level: Level) -> Result<Parity> {
    match level {
        Level::Assoc | Level::Quadri => Ok(Parity::Skew),
        Level::Dend => Ok(Parity::Sym),
        Level::Octo => Err(Error::LevelMismatch("no lift at level 8".into())),
    }
}

/// Embed T as Σ T(v_i)⊗v_i* in the double A ⋉ V* and form r = T ∓ σ(T).
pub fn lift_o_operator(
    a: &ClusterAlgebra,
    m: &Bimodule,
    t: &InterMap,
    parity: Parity,
) -> Result<Lift> {
    let expected = lift_parity(a.level())?;
    if parity != expected {
        return Err(Error::Parity(format!(
            "level {} lifts with {expected:?}, not {parity:?}",
            a.level()
        )));
    }
    if t.target_dim() != a.dim() || t.source_dim() != m.module_dim() {
        return Err(Error::DimensionMismatch("map shape vs algebra/module".into()));
    }
    let double = semidirect_sum(a, &dual_bimodule(a, m)?)?;
    let (d, n) = (a.dim(), m.module_dim());
    let sign = if parity == Parity::Sym { Rational::one() } else { -Rational::one() };
    let mut r = Tensor2::zero(d + n);
    for row in 0..d {
        for i in 0..n {
            let v = t.matrix()[(row, i)].clone();
            if !v.is_zero() {
                r.set(d + i, row, &sign * &v);
                r.set(row, d + i, v);
            }
        }
    }
    let equation = check_equation(&double, &r)?;
    let o_operator = is_o_operator(a, m, t)?;
    Ok(Lift { double, r, equation, o_operator })
}

/// Image of T: the induced finer algebra on T(V), the bimodule of T(V)
/// on V padded with zeros, and the lift of T: V → T(V) in that double.
pub fn image_lift(a: &ClusterAlgebra, m: &Bimodule, t: &InterMap) -> Result<Lift> {
    let rule = match a.level() {
        Level::Assoc => "embed-dend",
        Level::Dend => "embed-quadri",
        _ => return Err(Error::LevelMismatch("image lift needs level 1 or 2".into())),
    };
    let on_v = induce_on_module(a, m, t)?;
    let (_, pivots) = t.matrix().rref();
    let basis: Vec<Vec<Rational>> = pivots.iter().map(|&p| t.image(p)).collect();
    let k = basis.len();
    // coordinates of a vector of T(V) in the pivot basis
    let bmat = Matrix::from_fn(a.dim(), k, |r, c| basis[c][r].clone());
    let coords = |v: &[Rational]| -> Result<Vec<Rational>> { solve_in_span(&bmat, v) };
    let preimage: Vec<usize> = pivots.clone();
    let fine_level = on_v.level();
    let mut img = ClusterAlgebra::zero(fine_level, k);
    let n = m.module_dim();
    for op in 0..fine_level.op_count() {
        for x in 0..k {
            for y in 0..k {
                let mut u = vec![Rational::zero(); n];
                u[preimage[x]] = Rational::one();
                let mut w = vec![Rational::zero(); n];
                w[preimage[y]] = Rational::one();
                let prod = on_v.mul_set(crate::cluster::OpSet::single(op), &u, &w);
                let c = coords(&t.apply(&prod)?)?;
                for (z, val) in c.into_iter().enumerate() {
                    img.op_at_mut(op)[(x, y, z)] = val;
                }
            }
        }
    }
    // bimodule of the coarse image algebra: the maps of m at the basis vectors
    let mut slots = Vec::new();
    for op in 0..a.level().op_count() {
        for side in [Side::Left, Side::Right] {
            let set = crate::cluster::OpSet::single(op);
            slots.push(basis.iter().map(|b| m.act(side, set, b)).collect());
        }
    }
    let coarse_m = Bimodule::from_slots(a.level(), k, n, slots)?;
    let (_, embedded) = restrict_bimodule(&img, &coarse_m, rule)?;
    let t_img = InterMap::new(Matrix::from_fn(k, n, |r, c| {
        coords(&t.image(c)).map(|v| v[r].clone()).unwrap_or_else(|_| Rational::zero())
    }));
    lift_o_operator(&img, &embedded, &t_img, lift_parity(fine_level)?)
}

/// Coordinates of v in the column span of b (columns independent).
fn solve_in_span(b: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    let (rows, k) = (b.rows(), b.cols());
    let aug = Matrix::from_fn(rows, k + 1, |r, c| if c < k { b[(r, c)].clone() } else { v[r].clone() });
    let (red, piv) = aug.rref();
    if piv.contains(&k) {
        return Err(Error::DimensionMismatch("vector outside the image".into()));
    }
    let mut out = vec![Rational::zero(); k];
    for (row, &c) in piv.iter().enumerate() {
        out[c] = red[(row, k)].clone();
    }
    Ok(out)
}

/// Named canonical double constructions.
pub const CANONICAL_VARIANTS: &[(&str, Level)] = &[
    ("Cor2.2.8", Level::Dend),
    ("Cor3.3.8", Level::Dend),
    ("Prop3.4.12", Level::Quadri),
    ("Cor4.2.10", Level::Quadri),
    ("Cor4.4.13", Level::Octo),
];

#[derive(Clone, Debug)]
pub struct CanonicalSolution {
    pub variant: String,
    /// The algebra the double is built over.
    pub base: ClusterAlgebra,
    pub bimodule: Bimodule,
    pub double: ClusterAlgebra,
    pub r: Tensor2,
    pub parity: Parity,
    pub equation: Report,
}

/// Σ_i sign · (transpose of the multiplication operators of `sym`).
fn dual_mult(a: &ClusterAlgebra, terms: &[(i64, &str, Side)]) -> Result<Vec<Matrix>> {
    let d = a.dim();
    (0..d)
        .map(|i| {
            let mut out = Matrix::zeros(d, d);
            for (sign, sym, side) in terms {
                let m = mult_operator(a, sym, *side, i)?;
                out.add_scaled(&m.transpose(), &Rational::from_integer((*sign).into()));
            }
            Ok(out)
        })
        .collect()
}

/// The bimodule on A* named by a canonical variant, written out from the
/// transposed multiplication operators of `a`.
pub fn canonical_bimodule(a: &ClusterAlgebra, variant: &str) -> Result<(ClusterAlgebra, Bimodule)> {
    use Side::{Left as L, Right as R};
    let want = CANONICAL_VARIANTS
        .iter()
        .find(|v| v.0 == variant)
        .ok_or_else(|| Error::InvalidVariant(variant.to_string()))?;
    if want.1 != a.level() {
        return Err(Error::InvalidVariant(format!("{variant} at level {}", a.level())));
    }
    let d = a.dim();
    let z: &[(i64, &str, Side)] = &[];
    let (base, slots): (ClusterAlgebra, Vec<&[(i64, &str, Side)]>) = match variant {
        "Cor2.2.8" => (project(a, "Assoc")?, vec![&[(1, "prec", R)], &[(1, "succ", L)]]),
        "Cor3.3.8" => (a.clone(), vec![&[(1, "prec", R)], z, z, &[(1, "succ", L)]]),
        "Prop3.4.12" => (
            project(a, "HorizDend")?,
            vec![
                &[(1, "ne", R), (1, "nw", R)],
                &[(-1, "sw", L)],
                &[(-1, "ne", R)],
                &[(1, "se", L), (1, "sw", L)],
            ],
        ),
        "Cor4.2.10" => (
            a.clone(),
            vec![&[(1, "wedge", R)], z, z, &[(-1, "sw", L)], z, &[(1, "vee", L)], &[(-1, "ne", R)], z],
        ),
        "Cor4.4.13" => (
            project(a, "DepthQuadri")?,
            vec![
                &[(1, "sigma1", R)],
                &[(1, "nw2", L)],
                &[(-1, "vee1", R)],
                &[(-1, "prec2", L)],
                &[(1, "se1", R)],
                &[(1, "sigma2", L)],
                &[(-1, "succ1", R)],
                &[(-1, "wedge2", L)],
            ],
        ),
        _ => return Err(Error::InvalidVariant(variant.to_string())),
    };
    let maps = slots.iter().map(|s| dual_mult(a, s)).collect::<Result<Vec<_>>>()?;
    let m = Bimodule::from_slots(base.level(), d, d, maps)?;
    Ok((base, m))
}

/// `r = Σ e_i⊗e_i* ± e_i*⊗e_i` in the double named by `variant`.
pub fn canonical_double_solution(a: &ClusterAlgebra, variant: &str) -> Result<CanonicalSolution> {
    let (base, m) = canonical_bimodule(a, variant)?;
    let double = semidirect_sum(&base, &m)?;
    let parity = lift_parity(base.level())?;
    let d = a.dim();
    let sign = if parity == Parity::Sym { 1 } else { -1 };
    let r = Tensor2::from_fn(2 * d, |i, j| {
        if j == i + d {
            Rational::one()
        } else if i == j + d {
            Rational::from_integer(sign.into())
        } else {
            Rational::zero()
        }
    });
    let equation = check_equation(&double, &r)?;
    Ok(CanonicalSolution { variant: variant.to_string(), base, bimodule: m, double, r, parity, equation })
}

/// Which α defines which operation of the dual dendriform algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualAssignment {
    /// ≻ on A* from α_≻, ≺ from α_≺.
    Direct,
    /// ≻ on A* from α_≺, ≺ from α_≻.
    Swapped,
}

/// Dual structure constants ĉ[a][b][k] = α(e_k)_{ab}.
pub fn induce_dual_product(a: &ClusterAlgebra, r: &Tensor2) -> Result<ClusterAlgebra> {
    induce_dual_product_with(a, r, Verify::Full)
}

pub fn induce_dual_product_with(a: &ClusterAlgebra, r: &Tensor2, verify: Verify) -> Result<ClusterAlgebra> {
    if r.dim() != a.dim() {
        return Err(Error::DimensionMismatch("tensor dim vs algebra dim".into()));
    }
    if verify == Verify::Full {
        let (parity, rep) = match a.level() {
            Level::Assoc => (Parity::Skew, check_aybe(a, r)?),
            Level::Dend => (Parity::Sym, check_d_equation(a, r)?),
            _ => return Err(Error::LevelMismatch("dual products at levels 1 and 2 only".into())),
        };
        require_parity(r, parity, "the dual product")?;
        if !rep.is_ok() {
            return Err(Error::EquationFailed(rep));
        }
    }
    let out = dual_product_raw(a, r, DUAL_ASSIGNMENT)?;
    if verify == Verify::Full {
        let rep = check_axioms(&out);
        if !rep.is_ok() {
            return Err(Error::PostVerification(rep));
        }
    }
    Ok(out)
}

/// The assignment that yields a dendriform algebra on A*.
pub const DUAL_ASSIGNMENT: DualAssignment = DualAssignment::Direct;

/// (1⊗L_f(x) − R_g(x)⊗1) r, scaled: coefficient on e_a⊗e_b for x = e_k is
/// lsign·Σ_q r_aq f[k][q][b] + rsign·Σ_p r_pb g[p][k][a].
fn coproduct(
    f: &Tensor3,
    g: &Tensor3,
    lsign: i64,
    rsign: i64,
    r: &Tensor2,
) -> Tensor3 {
    let d = r.dim();
    let (ls, rs) = (Rational::from_integer(lsign.into()), Rational::from_integer(rsign.into()));
    let mut out = Tensor3::cube(d);
    for ((k, q, b), c) in f.nonzero() {
        for a in 0..d {
            let rv = r.get(a, q);
            if !rv.is_zero() {
                out[(a, b, k)] += &ls * rv * c;
            }
        }
    }
    for ((p, k, a), c) in g.nonzero() {
        for b in 0..d {
            let rv = r.get(p, b);
            if !rv.is_zero() {
                out[(a, b, k)] += &rs * rv * c;
            }
        }
    }
    out
}

/// The dual product without any checks.
pub fn dual_product_raw(a: &ClusterAlgebra, r: &Tensor2, assign: DualAssignment) -> Result<ClusterAlgebra> {
    let d = a.dim();
    match a.level() {
        Level::Assoc => {
            let c = a.op_at(0);
            ClusterAlgebra::new(Level::Assoc, d, vec![coproduct(c, c, 1, -1, r)])
        }
        Level::Dend => {
            let star = derived_op(a, "star")?;
            let succ = derived_op(a, "succ")?;
            let prec = derived_op(a, "prec")?;
            // α_≻(x) = (−1⊗L_*(x) + R_≺(x)⊗1) r ; α_≺(x) = (1⊗L_≻(x) − R_*(x)⊗1) r
            let alpha_succ = coproduct(&star, &prec, -1, 1, r);
            let alpha_prec = coproduct(&succ, &star, 1, -1, r);
            let sc = match assign {
                DualAssignment::Direct => vec![alpha_succ, alpha_prec],
                DualAssignment::Swapped => vec![alpha_prec, alpha_succ],
            };
            ClusterAlgebra::new(Level::Dend, d, sc)
        }
        _ => Err(Error::LevelMismatch("dual products at levels 1 and 2 only".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleVariant {
    Frobenius,
    Connes,
}

impl DoubleVariant {
    pub fn parse(s: &str) -> Result<DoubleVariant> {
        match s {
            "frobenius" => Ok(DoubleVariant::Frobenius),
            "connes" => Ok(DoubleVariant::Connes),
            _ => Err(Error::InvalidVariant(s.to_string())),
        }
    }
}

/// The associative algebra on A ⊕ A* built from products on A and A*.
/// Frobenius: both level 1. Connes: both level 2, the cross terms use the
/// dendriform operations and the blocks use the sums.
pub fn double_product(
    a: &ClusterAlgebra,
    a_dual: &ClusterAlgebra,
    variant: DoubleVariant,
) -> Result<ClusterAlgebra> {
    if a.dim() != a_dual.dim() {
        return Err(Error::DimensionMismatch("A and A* must have equal dimension".into()));
    }
    let lv = match variant {
        DoubleVariant::Frobenius => Level::Assoc,
        DoubleVariant::Connes => Level::Dend,
    };
    if a.level() != lv || a_dual.level() != lv {
        return Err(Error::LevelMismatch(format!("{variant:?} double needs level-{lv} inputs")));
    }
    // (L-side op, R-side op) for each factor; for Frobenius both are *.
    let (al, ar, dl, dr) = match variant {
        DoubleVariant::Frobenius => ("star", "star", "star", "star"),
        DoubleVariant::Connes => ("succ", "prec", "succ", "prec"),
    };
    let c = derived_op(a, "star")?;
    let ch = derived_op(a_dual, "star")?;
    let (ca_l, ca_r) = (derived_op(a, al)?, derived_op(a, ar)?);
    let (cd_l, cd_r) = (derived_op(a_dual, dl)?, derived_op(a_dual, dr)?);
    let d = a.dim();
    let mut t = Tensor3::cube(2 * d);
    for ((i, j, k), v) in c.nonzero() {
        t[(i, j, k)] = v.clone();
    }
    for ((i, j, k), v) in ch.nonzero() {
        t[(d + i, j + d, k + d)] = v.clone();
    }
    for i in 0..d {
        for j in 0..d {
            for b in 0..d {
                // e_i · e_j* = L*_{A*}(e_j*) e_i + R*_A(e_i) e_j*
                t[(i, d + j, b)] = cd_l[(j, b, i)].clone();
                t[(i, d + j, d + b)] = ca_r[(b, i, j)].clone();
                // e_i* · e_j = R*_{A*}(e_i*) e_j + L*_A(e_j) e_i*
                t[(d + i, j, b)] = cd_r[(b, i, j)].clone();
                t[(d + i, j, d + b)] = ca_l[(j, b, i)].clone();
            }
        }
    }
    ClusterAlgebra::new(Level::Assoc, 2 * d, vec![t])
}

/// Unchecked semidirect sum with the dual of a bimodule, for tests that
/// build doubles from failing maps.
pub fn double_unchecked(a: &ClusterAlgebra, m: &Bimodule) -> Result<ClusterAlgebra> {
    semidirect_sum_unchecked(a, &dual_bimodule(a, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn nil2() -> ClusterAlgebra {
        ClusterAlgebra::from_products(Level::Assoc, 2, |_, i, j| match (i, j) {
            (0, 0) => vec![int(1), int(0)],
            (0, 1) | (1, 0) => vec![int(0), int(1)],
            _ => vec![int(0), int(0)],
        })
    }

    #[test]
    fn scalar_slot_products() {
        let a = ClusterAlgebra::from_products(Level::Assoc, 1, |_, _, _| vec![int(1)]);
        let r = Tensor2::from_fn(1, |_, _| int(1));
        for p in [(S12, S13), (S13, S12), (S12, S23), (S23, S12), (S13, S23), (S23, S13)] {
            let out = slot_product(&a, "star", &r, &r, p).unwrap();
            assert_eq!(out[(0, 0, 0)], int(1));
        }
    }

    #[test]
    fn unit_tensor_on_nil2() {
        let a = nil2();
        let r = Tensor2::from_fn(2, |i, j| int((i == 0 && j == 0) as i64));
        let out = slot_product(&a, "star", &r, &r, (S12, S13)).unwrap();
        assert_eq!(out[(0, 0, 0)], int(1));
        assert_eq!(out.nonzero().count(), 1);
        assert!(!check_aybe(&a, &r).unwrap().is_ok());
    }

    #[test]
    fn zero_solves_everything() {
        let a = nil2();
        assert!(check_aybe(&a, &Tensor2::zero(2)).unwrap().is_ok());
        assert!(aybe_as_o_operator(&a, &Tensor2::zero(2)).unwrap().is_ok());
    }
}
