use clusteralg::bundle::algebra_to_value;
use clusteralg::cluster::{check_axioms, mult_operator, project};
use clusteralg::forms::{form_to_tensor, tensor_to_form};
use clusteralg::linalg::{format_rational, parse_rational, q, Matrix, Perm3, Rational, Tensor3};
use clusteralg::{Bundle, ClusterAlgebra, Level, Side, Tensor2};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), d)
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    vector(n * n).prop_map(move |v| Matrix::from_vec(n, n, v).unwrap())
}

fn cube(d: usize) -> impl Strategy<Value = Tensor3> {
    vector(d * d * d).prop_map(move |v| Tensor3::from_vec((d, d, d), v).unwrap())
}

fn algebra(level: Level, d: usize) -> impl Strategy<Value = ClusterAlgebra> {
    prop::collection::vec(cube(d), level.op_count())
        .prop_map(move |sc| ClusterAlgebra::new(level, d, sc).unwrap())
}

fn level() -> impl Strategy<Value = Level> {
    prop::sample::select(Level::ALL.to_vec())
}

fn perm() -> impl Strategy<Value = Perm3> {
    prop::sample::select(vec![
        Perm3([0, 1, 2]),
        Perm3([0, 2, 1]),
        Perm3([1, 0, 2]),
        Perm3([1, 2, 0]),
        Perm3([2, 0, 1]),
        Perm3([2, 1, 0]),
    ])
}

fn scaled(a: &ClusterAlgebra, c: &Rational) -> ClusterAlgebra {
    ClusterAlgebra::new(a.level(), a.dim(), a.tensors().iter().map(|t| t.scale(c)).collect()).unwrap()
}

fn axpy(x: &[Rational], c: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + c * b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(m in matrix(3)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
                prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(3));
                prop_assert_eq!(m.transpose().inverse().unwrap(), inv.transpose());
                prop_assert_eq!(m.rank(), 3);
            }
            Err(_) => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn rank_nullity(v in vector(12)) {
        let m = Matrix::from_vec(3, 4, v).unwrap();
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 4);
        for n in &null {
            prop_assert!(m.apply(n).unwrap().iter().all(|x| *x == q(0, 1)));
        }
    }

    #[test]
    fn permutations_compose(t in cube(2), p in perm(), s in perm()) {
        let twice = t.permute(p).unwrap().permute(s).unwrap();
        prop_assert_eq!(twice, t.permute(s.after(&p)).unwrap());
        prop_assert_eq!(t.permute(p).unwrap().permute(p.inverse()).unwrap(), t.clone());
        let cyc = t.permute(Perm3::S123).unwrap();
        prop_assert_eq!(cyc.permute(Perm3::S132).unwrap(), t);
    }

    #[test]
    fn products_are_bilinear(a in level().prop_flat_map(|l| algebra(l, 2)),
                             x in vector(2), y in vector(2), z in vector(2), c in rational()) {
        for sym in a.level().op_names() {
            let lhs = a.mul(sym, &axpy(&x, &c, &y), &z).unwrap();
            let rhs = axpy(&a.mul(sym, &x, &z).unwrap(), &c, &a.mul(sym, &y, &z).unwrap());
            prop_assert_eq!(lhs, rhs);
            let lhs = a.mul(sym, &z, &axpy(&x, &c, &y)).unwrap();
            let rhs = axpy(&a.mul(sym, &z, &x).unwrap(), &c, &a.mul(sym, &z, &y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn multiplication_operators_are_products(a in level().prop_flat_map(|l| algebra(l, 2)),
                                             x in vector(2)) {
        for sym in ["star"].iter().chain(a.level().op_names()) {
            for i in 0..2 {
                let mut ei = vec![q(0, 1); 2];
                ei[i] = q(1, 1);
                let l = mult_operator(&a, sym, Side::Left, i).unwrap();
                let r = mult_operator(&a, sym, Side::Right, i).unwrap();
                prop_assert_eq!(l.apply(&x).unwrap(), a.mul(sym, &ei, &x).unwrap());
                prop_assert_eq!(r.apply(&x).unwrap(), a.mul(sym, &x, &ei).unwrap());
            }
        }
    }

    #[test]
    fn every_route_to_star_agrees(a in algebra(Level::Octo, 2), x in vector(2), y in vector(2)) {
        let direct = project(&a, "Assoc").unwrap();
        let total = a.level().op_names().iter().fold(vec![q(0, 1); 2], |acc, s| {
            axpy(&acc, &q(1, 1), &a.mul(s, &x, &y).unwrap())
        });
        prop_assert_eq!(direct.mul("star", &x, &y).unwrap(), total);
        for quadri in ["DepthQuadri", "VertQuadri", "HorizQuadri"] {
            let b = project(&a, quadri).unwrap();
            prop_assert_eq!(project(&b, "Assoc").unwrap(), direct.clone());
            for dend in ["HorizDend", "VertDend"] {
                let c = project(&b, dend).unwrap();
                prop_assert_eq!(project(&c, "Assoc").unwrap(), direct.clone());
            }
        }
        for dend in ["VertDend", "HorizDend", "SigmaDend"] {
            prop_assert_eq!(project(&project(&a, dend).unwrap(), "Assoc").unwrap(), direct.clone());
        }
    }

    #[test]
    fn axioms_are_scale_invariant(a in level().prop_flat_map(|l| algebra(l, 2)), c in rational()) {
        prop_assume!(c != q(0, 1));
        let s = scaled(&a, &c);
        let (ra, rs) = (check_axioms(&a), check_axioms(&s));
        prop_assert_eq!(ra.failed_ids(), rs.failed_ids());
        prop_assert!(check_axioms(&scaled(&a, &q(0, 1))).is_ok());
    }

    #[test]
    fn form_bridge_roundtrips(m in matrix(3)) {
        let r = Tensor2::new(m.clone()).unwrap();
        match tensor_to_form(&r) {
            Ok(b) => {
                prop_assert_eq!(b.matrix().mul(&m).unwrap(), Matrix::identity(3));
                prop_assert_eq!(form_to_tensor(&b).unwrap(), r);
            }
            Err(_) => prop_assert!(m.inverse().is_err()),
        }
    }

    #[test]
    fn rationals_roundtrip_as_text(n in -1000i64..1000, d in 1i64..50) {
        let x = q(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn algebras_roundtrip_through_bundles(a in level().prop_flat_map(|l| algebra(l, 2))) {
        let text = serde_json::json!({
            "field": "Q",
            "algebras": { "a": algebra_to_value(&a) },
        })
        .to_string();
        let b = Bundle::parse(&text).unwrap();
        prop_assert_eq!(b.algebra("a").unwrap(), &a);
        prop_assert_eq!(Bundle::parse(&b.to_json_string()).unwrap(), b);
    }
}
