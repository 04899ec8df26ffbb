//! Bimodules over algebras at levels 1, 2 and 4.
//!
//! The module identities are read off the algebra identities: putting the
//! module variable in position z, y or x of `(x A y) B z = x C (y D z)` gives
//!
//! * `l_B(x A y) = l_C(x) l_D(y)`
//! * `r_B(z) l_A(x) = l_C(x) r_D(z)`
//! * `r_B(z) r_A(y) = r_C(y D z)`
//!
//! so a tuple of maps is a bimodule exactly when the semidirect sum passes
//! the algebra axioms.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::cluster::{
    check_axioms, identities, mult_matrix, project, symbol_set, ClusterAlgebra, Level, OpSet,
    Side,
};
use crate::error::{Error, Result};
use crate::linalg::{mat_mul, Matrix, Rational, Tensor3};
use crate::report::{Report, Violation};

/// lmap[op][i] is the matrix of l_op(e_i) acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    level: Level,
    algebra_dim: usize,
    module_dim: usize,
    lmap: Vec<Vec<Matrix>>,
    rmap: Vec<Vec<Matrix>>,
}

impl Bimodule {
    pub fn new(
        level: Level,
        algebra_dim: usize,
        module_dim: usize,
        lmap: Vec<Vec<Matrix>>,
        rmap: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        if level == Level::Octo {
            return Err(Error::LevelMismatch("no bimodules at level 8".into()));
        }
        let n = level.op_count();
        let shape_ok = |maps: &Vec<Vec<Matrix>>| {
            maps.len() == n
                && maps.iter().all(|v| {
                    v.len() == algebra_dim
                        && v.iter().all(|m| m.rows() == module_dim && m.cols() == module_dim)
                })
        };
        if !shape_ok(&lmap) || !shape_ok(&rmap) {
            return Err(Error::DimensionMismatch("bimodule map shapes".into()));
        }
        Ok(Bimodule { level, algebra_dim, module_dim, lmap, rmap })
    }

    pub fn zero(level: Level, algebra_dim: usize, module_dim: usize) -> Result<Self> {
        let z = vec![vec![Matrix::zeros(module_dim, module_dim); algebra_dim]; level.op_count()];
        Bimodule::new(level, algebra_dim, module_dim, z.clone(), z)
    }

    /// From maps in slot order (l_op0, r_op0, l_op1, r_op1, …).
    pub fn from_slots(
        level: Level,
        algebra_dim: usize,
        module_dim: usize,
        slots: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        if slots.len() != 2 * level.op_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} slots for a level-{level} bimodule",
                slots.len()
            )));
        }
        let mut lmap = Vec::new();
        let mut rmap = Vec::new();
        for (k, s) in slots.into_iter().enumerate() {
            if k % 2 == 0 {
                lmap.push(s);
            } else {
                rmap.push(s);
            }
        }
        Bimodule::new(level, algebra_dim, module_dim, lmap, rmap)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn lmap(&self, op: usize) -> &[Matrix] {
        &self.lmap[op]
    }

    pub fn rmap(&self, op: usize) -> &[Matrix] {
        &self.rmap[op]
    }

    pub fn lmap_mut(&mut self, op: usize) -> &mut [Matrix] {
        &mut self.lmap[op]
    }

    pub fn rmap_mut(&mut self, op: usize) -> &mut [Matrix] {
        &mut self.rmap[op]
    }

    pub fn side(&self, side: Side, op: usize) -> &[Matrix] {
        match side {
            Side::Left => &self.lmap[op],
            Side::Right => &self.rmap[op],
        }
    }

    /// Σ_{op∈set} of one side's maps, one matrix per basis element.
    pub fn summed(&self, side: Side, set: OpSet) -> Vec<Matrix> {
        (0..self.algebra_dim)
            .map(|i| {
                let mut m = Matrix::zeros(self.module_dim, self.module_dim);
                for op in set.ops() {
                    m.add_scaled(&self.side(side, op)[i], &Rational::one());
                }
                m
            })
            .collect()
    }

    /// ρ(x) for a coordinate vector x, ρ = Σ_{op∈set} side maps.
    pub fn act(&self, side: Side, set: OpSet, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.module_dim, self.module_dim);
        for op in set.ops() {
            for (i, xi) in x.iter().enumerate() {
                m.add_scaled(&self.side(side, op)[i], xi);
            }
        }
        m
    }

    pub fn named(&self, side: Side, sym: &str) -> Result<Vec<Matrix>> {
        Ok(self.summed(side, symbol_set(self.level, sym)?))
    }

    pub fn is_zero(&self) -> bool {
        self.lmap.iter().chain(&self.rmap).all(|v| v.iter().all(Matrix::is_zero))
    }
}

/// A module identity: position `s` of the module variable in the algebra
/// identity `(x A y) B z = x C (y D z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleIdentity {
    pub id: String,
    pub s: usize,
    pub a: OpSet,
    pub b: OpSet,
    pub c: OpSet,
    pub d: OpSet,
}

fn build_bimodule_identities(level: Level) -> Vec<BimoduleIdentity> {
    let mut out = Vec::new();
    for (pos, idn) in identities(level).iter().enumerate() {
        for s in 1..=3 {
            let id = match level {
                Level::Assoc => format!("2.1.1-{}", [1, 3, 2][s - 1]),
                Level::Dend => format!("3.1.{}", 3 * pos + s),
                Level::Quadri => {
                    let rest = idn.id.strip_prefix("3.4.").unwrap();
                    let (p, q) = rest.split_once('-').unwrap();
                    let (p, q): (usize, usize) = (p.parse().unwrap(), q.parse().unwrap());
                    format!("4.1.{}-{}", 3 * (q - 1) + p, s)
                }
                Level::Octo => unreachable!(),
            };
            out.push(BimoduleIdentity { id, s, a: idn.a, b: idn.b, c: idn.c, d: idn.d });
        }
    }
    out.sort_by_key(|i| {
        i.id.split(['.', '-']).filter_map(|s| s.parse::<usize>().ok()).collect::<Vec<_>>()
    });
    out
}

pub fn bimodule_identities(level: Level) -> &'static [BimoduleIdentity] {
    static T: OnceLock<[Vec<BimoduleIdentity>; 3]> = OnceLock::new();
    let t = T.get_or_init(|| {
        [
            build_bimodule_identities(Level::Assoc),
            build_bimodule_identities(Level::Dend),
            build_bimodule_identities(Level::Quadri),
        ]
    });
    match level {
        Level::Assoc => &t[0],
        Level::Dend => &t[1],
        Level::Quadri => &t[2],
        Level::Octo => &[],
    }
}

fn check_shapes(a: &ClusterAlgebra, m: &Bimodule) -> Result<()> {
    if a.level() != m.level {
        return Err(Error::LevelMismatch(format!(
            "level-{} algebra with a level-{} bimodule",
            a.level(),
            m.level
        )));
    }
    if a.dim() != m.algebra_dim {
        return Err(Error::DimensionMismatch(format!(
            "algebra dim {} vs bimodule algebra_dim {}",
            a.dim(),
            m.algebra_dim
        )));
    }
    Ok(())
}

fn combine(coeffs: &[(usize, Rational)], maps: &[Matrix], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (k, c) in coeffs {
        out.add_scaled(&maps[*k], c);
    }
    out
}

fn nz(t: &Tensor3, i: usize, j: usize) -> Vec<(usize, Rational)> {
    let d = t.dims().2;
    (0..d).filter(|&k| !t[(i, j, k)].is_zero()).map(|k| (k, t[(i, j, k)].clone())).collect()
}

/// Every module identity as a matrix equation on all basis pairs.
pub fn check_bimodule(a: &ClusterAlgebra, m: &Bimodule) -> Result<Report> {
    check_shapes(a, m)?;
    let d = a.dim();
    let n = m.module_dim;
    let mut maps: HashMap<(Side, OpSet), Vec<Matrix>> = HashMap::new();
    let mut tensors: HashMap<OpSet, Tensor3> = HashMap::new();
    let mut report = Report::ok();
    for idn in bimodule_identities(m.level) {
        let mut get = |side, set| maps.entry((side, set)).or_insert_with(|| m.summed(side, set)).clone();
        let (lb, lc, ld) = (get(Side::Left, idn.b), get(Side::Left, idn.c), get(Side::Left, idn.d));
        let (rb, rd, la) = (get(Side::Right, idn.b), get(Side::Right, idn.d), get(Side::Left, idn.a));
        let (ra, rc) = (get(Side::Right, idn.a), get(Side::Right, idn.c));
        let ta = tensors.entry(idn.a).or_insert_with(|| a.set_tensor(idn.a)).clone();
        let td = tensors.entry(idn.d).or_insert_with(|| a.set_tensor(idn.d)).clone();
        for p in 0..d {
            for q in 0..d {
                let diff = match idn.s {
                    1 => combine(&nz(&ta, p, q), &lb, n).sub(&mat_mul(&lc[p], &ld[q])?)?,
                    2 => mat_mul(&rb[q], &la[p])?.sub(&mat_mul(&lc[p], &rd[q])?)?,
                    _ => mat_mul(&rb[q], &ra[p])?.sub(&combine(&nz(&td, p, q), &rc, n))?,
                };
                if !diff.is_zero() {
                    let pos = diff.entries().iter().position(|x| !x.is_zero()).unwrap();
                    report.push(Violation {
                        identity_id: idn.id.clone(),
                        witness: vec![p, q],
                        discrepancy: diff.entries().to_vec(),
                        entry: Some((pos / n, pos % n)),
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn regular_bimodule(a: &ClusterAlgebra) -> Result<Bimodule> {
    if a.level() == Level::Octo {
        return Err(Error::LevelMismatch("no regular bimodule at level 8".into()));
    }
    let d = a.dim();
    let side = |s| {
        (0..a.level().op_count())
            .map(|op| (0..d).map(|i| mult_matrix(a.op_at(op), s, i)).collect())
            .collect()
    };
    Bimodule::new(a.level(), d, d, side(Side::Left), side(Side::Right))
}

fn transpose_all(v: &[Matrix], sign: i64) -> Vec<Matrix> {
    let s = Rational::from_integer(sign.into());
    v.iter().map(|m| m.transpose().scale(&s)).collect()
}

/// The dual bimodule on V*; the matrix of ρ*(x) is the transpose of ρ(x).
pub fn dual_bimodule(a: &ClusterAlgebra, m: &Bimodule) -> Result<Bimodule> {
    check_shapes(a, m)?;
    let lv = m.level;
    let l = |sym: &str, sign| Ok::<_, Error>(transpose_all(&m.named(Side::Left, sym)?, sign));
    let r = |sym: &str, sign| Ok::<_, Error>(transpose_all(&m.named(Side::Right, sym)?, sign));
    let slots = match lv {
        Level::Assoc => vec![r("star", 1)?, l("star", 1)?],
        // (r_≻*+r_≺*, −l_≺*, −r_≻*, l_≻*+l_≺*)
        Level::Dend => vec![r("star", 1)?, l("prec", -1)?, r("succ", -1)?, l("star", 1)?],
        // (r_**, l_↖*, −r_∨*, −l_≺*, r_↘*, l_**, −r_≻*, −l_∧*)
        Level::Quadri => vec![
            r("star", 1)?,
            l("nw", 1)?,
            r("vee", -1)?,
            l("prec", -1)?,
            r("se", 1)?,
            l("star", 1)?,
            r("succ", -1)?,
            l("wedge", -1)?,
        ],
        Level::Octo => unreachable!(),
    };
    Bimodule::from_slots(lv, m.algebra_dim, m.module_dim, slots)
}

/// Named restriction and re-embedding rules between levels.
pub const RESTRICTION_RULES: &[(&str, &str)] = &[
    ("assoc-succ-prec", "level 2 → 1: (l_succ, r_prec); level 4 → 1: (l_succ, r_prec)"),
    ("assoc-sum", "level 2 → 1: (l_star, r_star); level 4 → 1 likewise"),
    ("dend-sum", "level 2: (l_star, 0, 0, r_star)"),
    ("dend-succ-prec", "level 2: (l_succ, 0, 0, r_prec)"),
    ("embed-dend", "level 1 bimodule of the associated algebra → (l, 0, 0, r)"),
    ("horiz-dend", "level 4 → 2: (l_se, r_ne, l_sw, r_nw)"),
    ("horiz-dend-sum", "level 4 → 2: (l_succ, r_succ, l_prec, r_prec)"),
    ("quadri-split", "level 4: (l_se, 0, 0, r_ne, 0, r_nw, l_sw, 0)"),
    ("quadri-sum", "level 4: (l_succ, 0, 0, r_succ, 0, r_prec, l_prec, 0)"),
    ("embed-quadri", "level 2 bimodule of the horizontal algebra → (l_succ,0,0,r_succ,0,r_prec,l_prec,0)"),
    ("assoc-se-nw", "level 4 → 1: (l_se, r_nw)"),
    ("assoc-vee-wedge", "level 4 → 1: (l_vee, r_wedge)"),
    ("embed-quadri-assoc", "level 1 bimodule of the associated algebra → (l,0,0,0,0,r,0,0)"),
];

/// Apply a restriction rule. Restrictions take `a` and `m` at the same level
/// and return the coarser (or same-level) algebra with the combined maps;
/// embeddings take the finer algebra `a` together with a bimodule `m` of the
/// relevant coarser projection of `a`, and return `a` with the padded maps.
pub fn restrict_bimodule(
    a: &ClusterAlgebra,
    m: &Bimodule,
    rule: &str,
) -> Result<(ClusterAlgebra, Bimodule)> {
    let invalid = || Error::InvalidRule { rule: rule.to_string(), level: m.level.value() };
    let (d, n) = (m.algebra_dim, m.module_dim);
    if a.dim() != d {
        return Err(Error::DimensionMismatch("algebra and bimodule dims differ".into()));
    }
    let zero = || vec![Matrix::zeros(n, n); d];
    let l = |s: &str| m.named(Side::Left, s);
    let r = |s: &str| m.named(Side::Right, s);
    let out = match (a.level(), m.level, rule) {
        (Level::Dend, Level::Dend, "assoc-succ-prec") => {
            (project(a, "Assoc")?, vec![l("succ")?, r("prec")?])
        }
        (Level::Dend, Level::Dend, "assoc-sum") => (project(a, "Assoc")?, vec![l("star")?, r("star")?]),
        (Level::Dend, Level::Dend, "dend-sum") => {
            (a.clone(), vec![l("star")?, zero(), zero(), r("star")?])
        }
        (Level::Dend, Level::Dend, "dend-succ-prec") => {
            (a.clone(), vec![l("succ")?, zero(), zero(), r("prec")?])
        }
        (Level::Dend, Level::Assoc, "embed-dend") => {
            (a.clone(), vec![l("star")?, zero(), zero(), r("star")?])
        }
        (Level::Quadri, Level::Quadri, "horiz-dend") => {
            (project(a, "HorizDend")?, vec![l("se")?, r("ne")?, l("sw")?, r("nw")?])
        }
        (Level::Quadri, Level::Quadri, "horiz-dend-sum") => {
            (project(a, "HorizDend")?, vec![l("succ")?, r("succ")?, l("prec")?, r("prec")?])
        }
        (Level::Quadri, Level::Quadri, "quadri-split") => (
            a.clone(),
            vec![l("se")?, zero(), zero(), r("ne")?, zero(), r("nw")?, l("sw")?, zero()],
        ),
        (Level::Quadri, Level::Quadri, "quadri-sum") => (
            a.clone(),
            vec![l("succ")?, zero(), zero(), r("succ")?, zero(), r("prec")?, l("prec")?, zero()],
        ),
        (Level::Quadri, Level::Dend, "embed-quadri") => (
            a.clone(),
            vec![l("succ")?, zero(), zero(), r("succ")?, zero(), r("prec")?, l("prec")?, zero()],
        ),
        (Level::Quadri, Level::Quadri, "assoc-se-nw") => (project(a, "Assoc")?, vec![l("se")?, r("nw")?]),
        (Level::Quadri, Level::Quadri, "assoc-succ-prec") => {
            (project(a, "Assoc")?, vec![l("succ")?, r("prec")?])
        }
        (Level::Quadri, Level::Quadri, "assoc-vee-wedge") => {
            (project(a, "Assoc")?, vec![l("vee")?, r("wedge")?])
        }
        (Level::Quadri, Level::Quadri, "assoc-sum") => (project(a, "Assoc")?, vec![l("star")?, r("star")?]),
        (Level::Quadri, Level::Assoc, "embed-quadri-assoc") => (
            a.clone(),
            vec![l("star")?, zero(), zero(), zero(), zero(), r("star")?, zero(), zero()],
        ),
        _ => return Err(invalid()),
    };
    let (alg, slots) = out;
    let bm = Bimodule::from_slots(alg.level(), d, n, slots)?;
    Ok((alg, bm))
}

/// A ⊕ V with the algebra block first; no bimodule check.
pub fn semidirect_sum_unchecked(a: &ClusterAlgebra, m: &Bimodule) -> Result<ClusterAlgebra> {
    check_shapes(a, m)?;
    let (d, n) = (a.dim(), m.module_dim);
    let mut sc = Vec::new();
    for op in 0..a.level().op_count() {
        let mut t = Tensor3::cube(d + n);
        for ((i, j, k), v) in a.op_at(op).nonzero() {
            t[(i, j, k)] = v.clone();
        }
        for i in 0..d {
            for v in 0..n {
                for w in 0..n {
                    // l(e_i) v_v and r(e_i) v_v, coordinates on v_w
                    let lv = &m.lmap[op][i][(w, v)];
                    if !lv.is_zero() {
                        t[(i, d + v, d + w)] = lv.clone();
                    }
                    let rv = &m.rmap[op][i][(w, v)];
                    if !rv.is_zero() {
                        t[(d + v, i, d + w)] = rv.clone();
                    }
                }
            }
        }
        sc.push(t);
    }
    ClusterAlgebra::new(a.level(), d + n, sc)
}

pub fn semidirect_sum(a: &ClusterAlgebra, m: &Bimodule) -> Result<ClusterAlgebra> {
    let rep = check_bimodule(a, m)?;
    if !rep.is_ok() {
        return Err(Error::NotBimodule(rep));
    }
    semidirect_sum_unchecked(a, m)
}

/// Convenience: both characterizations of the bimodule property.
pub fn bimodule_via_semidirect(a: &ClusterAlgebra, m: &Bimodule) -> Result<Report> {
    Ok(check_axioms(&semidirect_sum_unchecked(a, m)?))
}
