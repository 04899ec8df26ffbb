//! O-operators, Rota–Baxter operators (weight zero) and the finer
//! structures they induce.
//!
//! A fine operation is a pair (coarse op ∘, side). Given an O-operator
//! T: V → A for a bimodule (l, r), the induced structure on V is
//!
//! * `u (∘,L) v = l_∘(T u) v`
//! * `u (∘,R) v = r_∘(T v) u`
//!
//! and T is then a homomorphism from the coarse sum structure on V to A.

use num_traits::Zero;

use crate::bimodule::{check_bimodule, regular_bimodule, Bimodule};
use crate::cluster::{
    check_axioms, project_coarser, ClusterAlgebra, Level, OpSet, Side,
};
use crate::error::{Error, Result};
use crate::linalg::{mat_inverse, mat_mul, Matrix, Rational};
use crate::report::{Report, Violation};

/// A linear map V → A: column j holds the coordinates of T(v_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterMap {
    matrix: Matrix,
}

impl InterMap {
    pub fn new(matrix: Matrix) -> Self {
        InterMap { matrix }
    }

    pub fn identity(d: usize) -> Self {
        InterMap { matrix: Matrix::identity(d) }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        InterMap { matrix: Matrix::zeros(target_dim, source_dim) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    pub fn image(&self, j: usize) -> Vec<Rational> {
        self.matrix.column(j)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.apply(v)
    }

    /// self ∘ other
    pub fn compose(&self, other: &InterMap) -> Result<InterMap> {
        Ok(InterMap { matrix: mat_mul(&self.matrix, &other.matrix)? })
    }

    pub fn commutes_with(&self, other: &InterMap) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn inverse(&self) -> Result<InterMap> {
        Ok(InterMap { matrix: mat_inverse(&self.matrix)? })
    }
}

/// Skip pre- and post-verification (the CLI's `--no-verify`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Verify {
    #[default]
    Full,
    Skip,
}

fn o_identity_id(level: Level, op: usize) -> String {
    match level {
        Level::Assoc => "2.1.3".into(),
        Level::Dend => format!("3.3.1-{}", op + 1),
        Level::Quadri => format!("4.2.{}", op + 1),
        Level::Octo => unreachable!(),
    }
}

fn check_map_dims(a: &ClusterAlgebra, m: &Bimodule, t: &InterMap) -> Result<()> {
    if a.level() != m.level() {
        return Err(Error::LevelMismatch(format!(
            "level-{} algebra, level-{} bimodule",
            a.level(),
            m.level()
        )));
    }
    if t.target_dim() != a.dim() || t.source_dim() != m.module_dim() || m.algebra_dim() != a.dim()
    {
        return Err(Error::DimensionMismatch(format!(
            "map {}→{} for algebra dim {} and module dim {}",
            t.source_dim(),
            t.target_dim(),
            a.dim(),
            m.module_dim()
        )));
    }
    Ok(())
}

/// T(u)∘T(v) = T(l_∘(T u) v + r_∘(T v) u) for every base operation ∘.
pub fn is_o_operator(a: &ClusterAlgebra, m: &Bimodule, t: &InterMap) -> Result<Report> {
    check_map_dims(a, m, t)?;
    let n = m.module_dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|j| t.image(j)).collect();
    let mut report = Report::ok();
    for op in 0..a.level().op_count() {
        let set = OpSet::single(op);
        let lacts: Vec<Matrix> = images.iter().map(|x| m.act(Side::Left, set, x)).collect();
        let racts: Vec<Matrix> = images.iter().map(|x| m.act(Side::Right, set, x)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = a.mul_set(set, &images[i], &images[j]);
                let mut inner = lacts[i].column(j);
                for (w, x) in inner.iter_mut().zip(racts[j].column(i)) {
                    *w += x;
                }
                let rhs = t.apply(&inner)?;
                let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                if diff.iter().any(|x| !x.is_zero()) {
                    report.push(Violation {
                        identity_id: o_identity_id(a.level(), op),
                        witness: vec![i, j],
                        discrepancy: diff,
                        entry: None,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// RB identity at levels 1, 2, 4: the O-operator identity for the regular
/// bimodule, reported under the RB equation ids.
pub fn is_rota_baxter(a: &ClusterAlgebra, r: &InterMap) -> Result<Report> {
    if a.level() == Level::Octo {
        return Err(Error::LevelMismatch("no Rota-Baxter operators at level 8".into()));
    }
    if !r.is_square() || r.target_dim() != a.dim() {
        return Err(Error::DimensionMismatch("Rota-Baxter map must be d×d".into()));
    }
    let mut rep = is_o_operator(a, &regular_bimodule(a)?, r)?;
    for v in &mut rep.violations {
        v.identity_id = match a.level() {
            Level::Assoc => "2.1.4".into(),
            Level::Dend => v.identity_id.replace("3.3.1", "3.4.10"),
            _ => v.identity_id.replace("4.2.", "4.4.19-"),
        };
    }
    Ok(rep)
}

fn require_o_operator(a: &ClusterAlgebra, m: &Bimodule, t: &InterMap) -> Result<()> {
    let rep = is_o_operator(a, m, t)?;
    if !rep.is_ok() {
        return Err(Error::NotOOperator(rep));
    }
    Ok(())
}

/// T(u ∘ v) = T(u) ∘ T(v) for the coarse sums ∘ of `fine` (living on V).
pub fn homomorphism_report(fine: &ClusterAlgebra, a: &ClusterAlgebra, t: &InterMap) -> Result<Report> {
    let coarse = project_coarser(fine)?;
    let n = fine.dim();
    let mut report = Report::ok();
    let basis = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from_integer(1.into());
        v
    };
    for op in 0..coarse.level().op_count() {
        let set = OpSet::single(op);
        for i in 0..n {
            for j in 0..n {
                let lhs = t.apply(&coarse.mul_set(set, &basis(i), &basis(j)))?;
                let rhs = a.mul_set(set, &t.image(i), &t.image(j));
                let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                if diff.iter().any(|x| !x.is_zero()) {
                    report.push(Violation {
                        identity_id: format!("homomorphism-{}", coarse.level().op_names()[op]),
                        witness: vec![i, j],
                        discrepancy: diff,
                        entry: None,
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn induce_on_module(a: &ClusterAlgebra, m: &Bimodule, t: &InterMap) -> Result<ClusterAlgebra> {
    induce_on_module_with(a, m, t, Verify::Full)
}

/// The finer structure on V; with `Verify::Full` the O-identity is checked
/// first and the output is re-checked (axioms and homomorphism).
pub fn induce_on_module_with(
    a: &ClusterAlgebra,
    m: &Bimodule,
    t: &InterMap,
    verify: Verify,
) -> Result<ClusterAlgebra> {
    check_map_dims(a, m, t)?;
    let fine = a
        .level()
        .finer()
        .ok_or_else(|| Error::LevelMismatch("no level above 8".into()))?;
    if verify == Verify::Full {
        require_o_operator(a, m, t)?;
    }
    let n = m.module_dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|j| t.image(j)).collect();
    let mut out = ClusterAlgebra::zero(fine, n);
    for op in 0..fine.op_count() {
        let (c, side) = fine.parent(op);
        let set = OpSet::single(c);
        let acts: Vec<Matrix> = images.iter().map(|x| m.act(side, set, x)).collect();
        let tensor = out.op_at_mut(op);
        for i in 0..n {
            for j in 0..n {
                // (L) l_c(T v_i) v_j ; (R) r_c(T v_j) v_i
                let col = match side {
                    Side::Left => acts[i].column(j),
                    Side::Right => acts[j].column(i),
                };
                for (k, v) in col.into_iter().enumerate() {
                    tensor[(i, j, k)] = v;
                }
            }
        }
    }
    if verify == Verify::Full {
        let mut rep = check_axioms(&out);
        rep.merge(homomorphism_report(&out, a, t)?);
        if !rep.is_ok() {
            return Err(Error::PostVerification(rep));
        }
    }
    Ok(out)
}

fn require_rb(a: &ClusterAlgebra, r: &InterMap) -> Result<()> {
    let rep = is_rota_baxter(a, r)?;
    if !rep.is_ok() {
        return Err(Error::NotRotaBaxter(rep));
    }
    Ok(())
}

/// x (∘,L) y = R(x)∘y, x (∘,R) y = x∘R(y).
pub fn rb_finer(a: &ClusterAlgebra, r: &InterMap) -> Result<ClusterAlgebra> {
    rb_finer_with(a, r, Verify::Full)
}

pub fn rb_finer_with(a: &ClusterAlgebra, r: &InterMap, verify: Verify) -> Result<ClusterAlgebra> {
    if verify == Verify::Full {
        require_rb(a, r)?;
    }
    induce_on_module_with(a, &regular_bimodule(a)?, r, verify)
}

fn require_level1(a: &ClusterAlgebra) -> Result<()> {
    if a.level() != Level::Assoc {
        return Err(Error::LevelMismatch("Rota-Baxter families need a level-1 algebra".into()));
    }
    Ok(())
}

/// Products u·v where each argument is first pushed through a composite of
/// the given maps; `f(x, y)` lists (left maps, right maps) per operation.
fn rb_products(
    a: &ClusterAlgebra,
    level: Level,
    per_op: &[(Vec<&InterMap>, Vec<&InterMap>)],
) -> Result<ClusterAlgebra> {
    let d = a.dim();
    let star = OpSet::single(0);
    let apply_all = |maps: &[&InterMap], v: Vec<Rational>| -> Result<Vec<Rational>> {
        maps.iter().try_fold(v, |acc, m| m.apply(&acc))
    };
    let mut out = ClusterAlgebra::zero(level, d);
    for (op, (lm, rm)) in per_op.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let mut x = vec![Rational::zero(); d];
                x[i] = Rational::from_integer(1.into());
                let mut y = vec![Rational::zero(); d];
                y[j] = Rational::from_integer(1.into());
                let p = a.mul_set(star, &apply_all(lm, x)?, &apply_all(rm, y)?);
                for (k, v) in p.into_iter().enumerate() {
                    out.op_at_mut(op)[(i, j, k)] = v;
                }
            }
        }
    }
    Ok(out)
}

pub fn rb_pair_quadri(a: &ClusterAlgebra, r1: &InterMap, r2: &InterMap) -> Result<ClusterAlgebra> {
    rb_pair_quadri_with(a, r1, r2, Verify::Full)
}

/// se: R1R2(x)·y, ne: R1(x)·R2(y), nw: x·R1R2(y), sw: R2(x)·R1(y).
pub fn rb_pair_quadri_with(
    a: &ClusterAlgebra,
    r1: &InterMap,
    r2: &InterMap,
    verify: Verify,
) -> Result<ClusterAlgebra> {
    require_level1(a)?;
    if verify == Verify::Full {
        require_rb(a, r1)?;
        require_rb(a, r2)?;
    }
    if !r1.commutes_with(r2)? {
        return Err(Error::NotCommuting);
    }
    let ops = vec![
        (vec![r2, r1], vec![]),
        (vec![r1], vec![r2]),
        (vec![], vec![r2, r1]),
        (vec![r2], vec![r1]),
    ];
    let out = rb_products(a, Level::Quadri, &ops)?;
    post_axioms(out, verify)
}

pub fn rb_triple_octo(
    a: &ClusterAlgebra,
    r1: &InterMap,
    r2: &InterMap,
    r3: &InterMap,
) -> Result<ClusterAlgebra> {
    rb_triple_octo_with(a, r1, r2, r3, Verify::Full)
}

/// The eight products
/// se1: R2R3(x)·R1(y), se2: R1R2R3(x)·y, ne1: R2(x)·R1R3(y),
/// ne2: R1R2(x)·R3(y), nw1: x·R1R2R3(y), nw2: R1(x)·R2R3(y),
/// sw1: R3(x)·R1R2(y), sw2: R1R3(x)·R2(y).
pub fn rb_triple_octo_with(
    a: &ClusterAlgebra,
    r1: &InterMap,
    r2: &InterMap,
    r3: &InterMap,
    verify: Verify,
) -> Result<ClusterAlgebra> {
    require_level1(a)?;
    if verify == Verify::Full {
        for r in [r1, r2, r3] {
            require_rb(a, r)?;
        }
    }
    if !r1.commutes_with(r2)? || !r1.commutes_with(r3)? || !r2.commutes_with(r3)? {
        return Err(Error::NotCommuting);
    }
    let ops = vec![
        (vec![r3, r2], vec![r1]),
        (vec![r3, r2, r1], vec![]),
        (vec![r2], vec![r3, r1]),
        (vec![r2, r1], vec![r3]),
        (vec![], vec![r3, r2, r1]),
        (vec![r1], vec![r3, r2]),
        (vec![r3], vec![r2, r1]),
        (vec![r3, r1], vec![r2]),
    ];
    let out = rb_products(a, Level::Octo, &ops)?;
    post_axioms(out, verify)
}

fn post_axioms(out: ClusterAlgebra, verify: Verify) -> Result<ClusterAlgebra> {
    if verify == Verify::Full {
        let rep = check_axioms(&out);
        if !rep.is_ok() {
            return Err(Error::PostVerification(rep));
        }
    }
    Ok(out)
}

pub fn compatible_from_invertible(
    a: &ClusterAlgebra,
    m: &Bimodule,
    t: &InterMap,
) -> Result<ClusterAlgebra> {
    compatible_from_invertible_with(a, m, t, Verify::Full)
}

/// Finer structure on A itself:
/// x (∘,L) y = T(l_∘(x) T⁻¹y), x (∘,R) y = T(r_∘(y) T⁻¹x).
/// With `Verify::Full` the O-identity is required and the output must pass
/// its axioms and project back onto `a` exactly.
pub fn compatible_from_invertible_with(
    a: &ClusterAlgebra,
    m: &Bimodule,
    t: &InterMap,
    verify: Verify,
) -> Result<ClusterAlgebra> {
    check_map_dims(a, m, t)?;
    if !t.is_square() {
        return Err(Error::DimensionMismatch("compatible structure needs a square map".into()));
    }
    let fine = a
        .level()
        .finer()
        .ok_or_else(|| Error::LevelMismatch("no level above 8".into()))?;
    let tinv = t.inverse()?;
    if verify == Verify::Full {
        require_o_operator(a, m, t)?;
    }
    let d = a.dim();
    // columns of T⁻¹: T⁻¹(e_j)
    let pre: Vec<Vec<Rational>> = (0..d).map(|j| tinv.image(j)).collect();
    let mut out = ClusterAlgebra::zero(fine, d);
    for op in 0..fine.op_count() {
        let (c, side) = fine.parent(op);
        let maps = m.side(side, c);
        for i in 0..d {
            for j in 0..d {
                let w = match side {
                    Side::Left => maps[i].apply(&pre[j])?,
                    Side::Right => maps[j].apply(&pre[i])?,
                };
                for (k, v) in t.apply(&w)?.into_iter().enumerate() {
                    out.op_at_mut(op)[(i, j, k)] = v;
                }
            }
        }
    }
    if verify == Verify::Full {
        let mut rep = check_axioms(&out);
        if project_coarser(&out)? != *a {
            rep.push(Violation {
                identity_id: "compatibility".into(),
                witness: vec![],
                discrepancy: vec![],
                entry: None,
            });
        }
        if !rep.is_ok() {
            return Err(Error::PostVerification(rep));
        }
    }
    Ok(out)
}

/// Check a bimodule before using it, as a convenience for callers.
pub fn require_bimodule(a: &ClusterAlgebra, m: &Bimodule) -> Result<()> {
    let rep = check_bimodule(a, m)?;
    if !rep.is_ok() {
        return Err(Error::NotBimodule(rep));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, q};

    fn trunc(n: usize) -> ClusterAlgebra {
        ClusterAlgebra::from_products(Level::Assoc, n, |_, i, j| {
            (0..n).map(|k| int((i + j == k) as i64)).collect()
        })
    }

    fn int3() -> InterMap {
        InterMap::new(Matrix::from_fn(3, 3, |r, c| match (r, c) {
            (1, 0) => int(1),
            (2, 1) => q(1, 2),
            _ => int(0),
        }))
    }

    #[test]
    fn zero_map_is_o_operator() {
        let a = trunc(2);
        let reg = regular_bimodule(&a).unwrap();
        assert!(is_o_operator(&a, &reg, &InterMap::zero(2, 2)).unwrap().is_ok());
    }

    #[test]
    fn int3_is_rb_and_identity_is_not() {
        let a = trunc(3);
        assert!(is_rota_baxter(&a, &int3()).unwrap().is_ok());
        let idr = is_rota_baxter(&trunc(2), &InterMap::identity(2)).unwrap();
        assert!(!idr.is_ok());
        assert_eq!(idr.violations[0].identity_id, "2.1.4");
        assert_eq!(idr.violations[0].witness, vec![0, 0]);
    }

    #[test]
    fn rb_finer_of_trunc3_is_dendriform() {
        let d = rb_finer(&trunc(3), &int3()).unwrap();
        assert_eq!(d.level(), Level::Dend);
        let q = rb_finer(&d, &int3()).unwrap();
        assert_eq!(q.level(), Level::Quadri);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = trunc(3);
        let other = InterMap::new(Matrix::from_fn(3, 3, |r, c| int((r == 2 && c == 0) as i64)));
        // other is RB on trunc3 (image in the square-zero part) but need not commute
        if is_rota_baxter(&a, &other).unwrap().is_ok() && !int3().commutes_with(&other).unwrap() {
            assert!(matches!(rb_pair_quadri(&a, &int3(), &other), Err(Error::NotCommuting)));
        }
    }
}
