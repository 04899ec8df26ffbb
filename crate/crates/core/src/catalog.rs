//! Desk-scale example algebras, operators and tensors.
//!
//! Every entry has a generator here and a shipped bundle under
//! `data/catalog/`; `load` reads the bundle and re-verifies everything in it.

use std::path::{Path, PathBuf};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundle::{AlgebraRecord, Bundle, MapRecord, Meta};
use crate::cluster::{ClusterAlgebra, Level};
use crate::error::{Error, Result};
use crate::forms::{finer_from_form, tensor_to_form, BilinearForm};
use crate::linalg::{int, q, Matrix, Rational};
use crate::operators::{rb_finer, rb_pair_quadri, rb_triple_octo, InterMap};
use crate::yang_baxter::{canonical_double_solution, Parity, Tensor2};

/// The entries every catalog ships.
pub const MANDATORY: &[&str] = &[
    "zero_3",
    "nil2",
    "rb_nil2",
    "trunc3",
    "int3",
    "dend_from_rb_nil2",
    "dend_from_int3",
    "quadri_from_int3_pair",
    "octo_from_int3_triple",
    "ut2",
];

/// Further shipped entries with nonvanishing level-8 structure (the octo
/// products of a Rota-Baxter triple apply three degree-raising maps, so
/// `octo_from_int3_triple` is the zero octo-algebra).
pub const EXTRA: &[&str] = &["trunc5", "int5", "octo_from_int5_triple", "octo_from_quadri_double"];

/// Every shipped entry.
pub fn shipped() -> impl Iterator<Item = &'static str> {
    MANDATORY.iter().chain(EXTRA).copied()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub bundle: Bundle,
    pub provenance: String,
    pub oracle: String,
}

impl CatalogEntry {
    /// The algebra named like the entry, or the one a map entry acts on.
    pub fn algebra(&self) -> Result<&ClusterAlgebra> {
        if let Some(a) = self.bundle.algebras.get(&self.name) {
            return Ok(&a.algebra);
        }
        let m = self.map_record()?;
        let an = m.algebra.as_ref().ok_or_else(|| Error::UnknownEntry(self.name.clone()))?;
        Ok(&self.bundle.algebras[an].algebra)
    }

    pub fn map(&self) -> Result<&InterMap> {
        Ok(&self.map_record()?.map)
    }

    fn map_record(&self) -> Result<&MapRecord> {
        self.bundle.maps.get(&self.name).ok_or_else(|| Error::UnknownEntry(self.name.clone()))
    }

    pub fn is_map(&self) -> bool {
        self.bundle.maps.contains_key(&self.name)
    }
}

pub fn nil2() -> ClusterAlgebra {
    truncated(2)
}

pub fn trunc3() -> ClusterAlgebra {
    truncated(3)
}

/// Upper-triangular 2×2 matrices on the basis (E11, E12, E22).
pub fn ut2() -> ClusterAlgebra {
    ClusterAlgebra::from_products(Level::Assoc, 3, |_, i, j| {
        let k = match (i, j) {
            (0, 0) => Some(0),
            (0, 1) | (1, 2) => Some(1),
            (2, 2) => Some(2),
            _ => None,
        };
        (0..3).map(|x| int((Some(x) == k) as i64)).collect()
    })
}

/// e0 ↦ e1, e1 ↦ 0
pub fn rb_nil2() -> InterMap {
    InterMap::new(Matrix::from_i64(&[&[0, 0], &[1, 0]]))
}

/// Integration on F[x]/(x³): e0 ↦ e1, e1 ↦ e2/2, e2 ↦ 0.
pub fn int3() -> InterMap {
    InterMap::new(Matrix::from_fn(3, 3, |r, c| match (r, c) {
        (1, 0) => int(1),
        (2, 1) => q(1, 2),
        _ => Rational::zero(),
    }))
}

/// F[x]/(x^n) on the basis (1, x, …, x^{n−1}).
pub fn truncated(n: usize) -> ClusterAlgebra {
    ClusterAlgebra::from_products(Level::Assoc, n, |_, i, j| {
        (0..n).map(|k| int((i + j == k) as i64)).collect()
    })
}

/// Integration on F[x]/(x^n): e_k ↦ e_{k+1}/(k+1), top degree ↦ 0.
pub fn integration(n: usize) -> InterMap {
    InterMap::new(Matrix::from_fn(n, n, |r, c| {
        if r == c + 1 {
            q(1, r as i64)
        } else {
            Rational::zero()
        }
    }))
}

pub fn trunc5() -> ClusterAlgebra {
    truncated(5)
}

pub fn int5() -> InterMap {
    integration(5)
}

pub fn octo_from_int5_triple() -> Result<ClusterAlgebra> {
    let r = int5();
    rb_triple_octo(&trunc5(), &r, &r, &r)
}

/// The octo-algebra induced by the canonical skew 2-cocycle on the quadri
/// double of `quadri_from_int3_pair` (6-dimensional).
pub fn octo_from_quadri_double() -> Result<ClusterAlgebra> {
    let s = canonical_double_solution(&quadri_from_int3_pair()?, "Cor4.2.10")?;
    finer_from_form(&s.double, &tensor_to_form(&s.r)?)
}

pub fn dend_from_rb_nil2() -> Result<ClusterAlgebra> {
    rb_finer(&nil2(), &rb_nil2())
}

pub fn dend_from_int3() -> Result<ClusterAlgebra> {
    rb_finer(&trunc3(), &int3())
}

pub fn quadri_from_int3_pair() -> Result<ClusterAlgebra> {
    rb_pair_quadri(&trunc3(), &int3(), &int3())
}

pub fn octo_from_int3_triple() -> Result<ClusterAlgebra> {
    let r = int3();
    rb_triple_octo(&trunc3(), &r, &r, &r)
}

/// `zero_<d>` (level 1) or `zero_<level>_<d>`.
fn parse_zero(name: &str) -> Option<(Level, usize)> {
    let rest = name.strip_prefix("zero_")?;
    let parts: Vec<&str> = rest.split('_').collect();
    match parts.as_slice() {
        [d] => Some((Level::Assoc, d.parse().ok()?)),
        [l, d] => Some((Level::from_value(l.parse().ok()?).ok()?, d.parse().ok()?)),
        _ => None,
    }
}

/// The generated (not file-backed) entry.
pub fn generate(name: &str) -> Result<CatalogEntry> {
    let mut b = Bundle::default();
    let alg = |b: &mut Bundle, n: &str, a: ClusterAlgebra| {
        b.algebras.insert(n.to_string(), AlgebraRecord { algebra: a });
    };
    let map = |b: &mut Bundle, n: &str, m: InterMap, on: &str| {
        b.maps.insert(
            n.to_string(),
            MapRecord { map: m, algebra: Some(on.to_string()), bimodule: None },
        );
    };
    let (prov, oracle) = match name {
        "nil2" => {
            alg(&mut b, name, nil2());
            ("F[x]/(x^2) on the basis (1, x)", "exhaustive associativity over 8 triples")
        }
        "trunc3" => {
            alg(&mut b, name, trunc3());
            ("F[x]/(x^3) on the basis (1, x, x^2)", "exhaustive associativity over 27 triples")
        }
        "ut2" => {
            alg(&mut b, name, ut2());
            ("upper-triangular 2x2 matrices on (E11, E12, E22)", "exhaustive associativity")
        }
        "rb_nil2" => {
            alg(&mut b, "nil2", nil2());
            map(&mut b, name, rb_nil2(), "nil2");
            ("e0 -> e1, e1 -> 0 on nil2", "weight-zero Rota-Baxter identity over 4 pairs")
        }
        "int3" => {
            alg(&mut b, "trunc3", trunc3());
            map(&mut b, name, int3(), "trunc3");
            ("integration e0 -> e1, e1 -> e2/2, e2 -> 0 on trunc3", "Rota-Baxter identity over 9 pairs")
        }
        "dend_from_rb_nil2" => {
            alg(&mut b, name, dend_from_rb_nil2()?);
            ("x>y = R(x)y, x<y = xR(y) for R = rb_nil2 on nil2", "exhaustive dendriform identities")
        }
        "dend_from_int3" => {
            alg(&mut b, name, dend_from_int3()?);
            ("x>y = R(x)y, x<y = xR(y) for R = int3 on trunc3", "exhaustive dendriform identities")
        }
        "quadri_from_int3_pair" => {
            alg(&mut b, name, quadri_from_int3_pair()?);
            ("Rota-Baxter pair (int3, int3) on trunc3", "exhaustive quadri identities (9 x 27 triples)")
        }
        "octo_from_int3_triple" => {
            alg(&mut b, name, octo_from_int3_triple()?);
            ("Rota-Baxter triple (int3, int3, int3) on trunc3", "exhaustive octo identities (27 x 27 triples)")
        }
        "trunc5" => {
            alg(&mut b, name, trunc5());
            ("F[x]/(x^5) on the basis (1, x, ..., x^4)", "exhaustive associativity over 125 triples")
        }
        "int5" => {
            alg(&mut b, "trunc5", trunc5());
            map(&mut b, name, int5(), "trunc5");
            ("integration e_k -> e_{k+1}/(k+1) on trunc5", "Rota-Baxter identity over 25 pairs")
        }
        "octo_from_int5_triple" => {
            alg(&mut b, name, octo_from_int5_triple()?);
            ("Rota-Baxter triple (int5, int5, int5) on trunc5", "exhaustive octo identities (27 x 125 triples)")
        }
        "octo_from_quadri_double" => {
            alg(&mut b, name, octo_from_quadri_double()?);
            (
                "compatible octo structure of the canonical skew 2-cocycle on the quadri double of quadri_from_int3_pair",
                "exhaustive octo identities (27 x 216 triples); depth projection equals the double",
            )
        }
        _ => {
            let (lv, d) = parse_zero(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
            alg(&mut b, name, ClusterAlgebra::zero(lv, d));
            ("zero algebra", "all products vanish")
        }
    };
    b.meta = Some(Meta { provenance: prov.to_string(), oracle: oracle.to_string() });
    Ok(CatalogEntry { name: name.to_string(), bundle: b, provenance: prov.into(), oracle: oracle.into() })
}

/// Catalog directory: `$CLUSTERALG_CATALOG`, else the repository's `data/catalog`.
pub fn catalog_dir() -> PathBuf {
    match std::env::var_os("CLUSTERALG_CATALOG") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/catalog"),
    }
}

/// Names of the bundle files in the catalog directory, sorted.
pub fn list(dir: &Path) -> Result<Vec<String>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut names: Vec<String> = rd
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let p = e.path();
            if p.extension()? != "json" {
                return None;
            }
            Some(p.file_stem()?.to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    Ok(names)
}

pub fn load(name: &str) -> Result<CatalogEntry> {
    load_from(&catalog_dir(), name)
}

/// Read `<dir>/<name>.json` and verify every object in it; `zero_*` names
/// without a file are generated.
pub fn load_from(dir: &Path, name: &str) -> Result<CatalogEntry> {
    let path = dir.join(format!("{name}.json"));
    let bundle = match std::fs::read_to_string(&path) {
        Ok(text) => Bundle::parse(&text)?,
        Err(_) if parse_zero(name).is_some() => generate(name)?.bundle,
        Err(_) => return Err(Error::UnknownEntry(name.to_string())),
    };
    if !bundle.algebras.contains_key(name) && !bundle.maps.contains_key(name) {
        return Err(Error::UnknownEntry(format!("{name} (bundle lacks the object)")));
    }
    let failures = bundle.verify_all()?;
    if let Some((obj, rep)) = failures.into_iter().next() {
        let _ = obj;
        return Err(Error::PostVerification(rep));
    }
    let meta = bundle.meta.clone().unwrap_or_default();
    Ok(CatalogEntry { name: name.to_string(), bundle, provenance: meta.provenance, oracle: meta.oracle })
}

/// Write every mandatory generated entry as a bundle file.
pub fn export(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(e.to_string()))?;
    for name in shipped() {
        let e = generate(name)?;
        std::fs::write(dir.join(format!("{name}.json")), e.bundle.to_json_string())
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Small random rational: numerator in [−4, 4], denominator in {1, 2, 3}.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// A nonzero small random rational.
pub fn random_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = random_rational(rng);
        }
    }
    m
}

fn random_parity_matrix(dim: usize, parity: Parity, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = random_rational(rng);
            match parity {
                Parity::Skew => {
                    if i != j {
                        m[(j, i)] = -v.clone();
                        m[(i, j)] = v;
                    }
                }
                Parity::Sym => {
                    m[(j, i)] = v.clone();
                    m[(i, j)] = v;
                }
                Parity::Any => {
                    m[(i, j)] = v;
                    if i != j {
                        m[(j, i)] = random_rational(rng);
                    }
                }
            }
        }
    }
    m
}

/// Deterministic random tensor with the requested parity.
pub fn random_tensor2(dim: usize, parity: Parity, seed: u64) -> Tensor2 {
    let mut r = rng(seed);
    Tensor2::new(random_parity_matrix(dim, parity, &mut r)).expect("square")
}

pub fn random_form(dim: usize, parity: Parity, seed: u64) -> BilinearForm {
    let mut r = rng(seed);
    BilinearForm::new(random_parity_matrix(dim, parity, &mut r)).expect("square")
}
