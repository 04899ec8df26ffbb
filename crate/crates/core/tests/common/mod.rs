#![allow(dead_code)]

use clusteralg::catalog::{self, generate};
use clusteralg::forms::{finer_from_form, tensor_to_form};
use clusteralg::linalg::{int, Rational};
use clusteralg::yang_baxter::canonical_double_solution;
use clusteralg::{ClusterAlgebra, InterMap, Level};

pub fn e(d: usize, k: usize) -> Vec<Rational> {
    (0..d).map(|t| int((t == k) as i64)).collect()
}

/// Every shipped catalog algebra (map entries contribute their algebra once).
pub fn catalog_algebras() -> Vec<(String, ClusterAlgebra)> {
    let mut out: Vec<(String, ClusterAlgebra)> = vec![];
    for n in catalog::shipped() {
        let e = generate(n).unwrap();
        if e.is_map() {
            continue;
        }
        out.push((n.to_string(), e.algebra().unwrap().clone()));
    }
    out
}

pub fn at_level(level: Level) -> Vec<(String, ClusterAlgebra)> {
    let mut v: Vec<_> = catalog_algebras().into_iter().filter(|(_, a)| a.level() == level).collect();
    v.extend(extra(level));
    v
}

/// Algebras beyond the catalog with denser structure: form-induced finer
/// structures on canonical doubles.
pub fn extra(level: Level) -> Vec<(String, ClusterAlgebra)> {
    let from = |base: ClusterAlgebra, variant: &str| {
        let s = canonical_double_solution(&base, variant).unwrap();
        let b = tensor_to_form(&s.r).unwrap();
        (s.double.clone(), finer_from_form(&s.double, &b).unwrap())
    };
    match level {
        Level::Assoc => {
            let (d, _) = from(catalog::dend_from_int3().unwrap(), "Cor2.2.8");
            vec![("double_Cor2.2.8".into(), d)]
        }
        Level::Dend => {
            let (_, f) = from(catalog::dend_from_int3().unwrap(), "Cor2.2.8");
            let (d, _) = from(catalog::dend_from_int3().unwrap(), "Cor3.3.8");
            vec![("finer_Cor2.2.8".into(), f), ("double_Cor3.3.8".into(), d)]
        }
        Level::Quadri => {
            let (_, f) = from(catalog::dend_from_int3().unwrap(), "Cor3.3.8");
            let (d, _) = from(catalog::quadri_from_int3_pair().unwrap(), "Cor4.2.10");
            vec![("finer_Cor3.3.8".into(), f), ("double_Cor4.2.10".into(), d)]
        }
        Level::Octo => vec![],
    }
}

pub fn maps() -> Vec<(String, ClusterAlgebra, InterMap)> {
    catalog::shipped()
        .filter_map(|n| {
            let e = generate(n).unwrap();
            e.is_map().then(|| (n.to_string(), e.algebra().unwrap().clone(), e.map().unwrap().clone()))
        })
        .collect()
}
