use std::sync::Arc;

use kmfaces::{
    BoundaryKind, FaceSearch, FaceVerdict, Gcm, ParabolicType, Realization, TensorCone, Triple, Weight,
};

fn cone(g: Gcm) -> TensorCone {
    TensorCone::new(Arc::new(Realization::new(g)))
}

fn check_all_faces(g: Gcm, max_length: usize, search: FaceSearch) {
    let c = cone(g);
    let n = c.weyl().rank();
    let dim_h = c.realization().dim_h();
    let engine = c.tensor().unwrap();
    for ineq in c.enumerate_inequalities(max_length).unwrap().inequalities {
        let p = ParabolicType::maximal(n, ineq.parabolic).unwrap();
        let f = c.face(&p, &ineq.w1, &ineq.w2, &ineq.v).unwrap();
        assert_eq!(c.equality_rank_on_e(&f), 1);
        let rep = c.face_dimension(&f, &search).unwrap();
        assert_eq!(rep.d_expected, 2 * dim_h + n - 1);
        assert_eq!(rep.kernel_dim, rep.d_expected);
        assert_eq!(rep.verdict, FaceVerdict::Pass, "{} {} {}", ineq.w1, ineq.w2, ineq.v);
        for w in &rep.witnesses {
            assert!(f.contains(&w.triple));
            let again = engine
                .gamma_member(&w.triple.lambda1, &w.triple.lambda2, &w.triple.mu, w.n, search.depth)
                .unwrap();
            assert!(again.is_member());
        }
    }
}

#[test]
fn finite_faces_have_expected_dimension() {
    check_all_faces(Gcm::type_a(2), 3, FaceSearch::default());
    check_all_faces(Gcm::type_b(2), 4, FaceSearch::default());
}

#[test]
fn affine_faces_have_expected_dimension() {
    let search = FaceSearch {
        height: 6,
        n_max: 3,
        depth: 20,
        max_tests: 5000,
    };
    check_all_faces(Gcm::affine_a(1), 3, search);
}

#[test]
fn boundary_classes_partition_the_divisors() {
    let c = cone(Gcm::type_a(2));
    let wg = c.weyl().clone();
    let borel = ParabolicType::borel(2);
    let reps = wg.min_coset_reps(&borel, 3);
    let calc = c.calculus(&borel, 3);
    let mut kinds = std::collections::HashSet::new();
    for w1 in reps.reps() {
        for w2 in reps.reps() {
            for v in reps.of_length(w1.length() + w2.length()) {
                if calc.deformed_coefficient(w1, w2, v).unwrap() != 1 {
                    continue;
                }
                let f = c.face(&borel, w1, w2, v).unwrap();
                let classes = c.classify_boundary(&f).unwrap();
                let expected = wg.delta_plus(w1, &borel).unwrap().len()
                    + wg.delta_plus(w2, &borel).unwrap().len()
                    + wg.delta_minus(v).len();
                assert_eq!(classes.len(), expected);
                for k in &classes {
                    kinds.insert(k.kind);
                    if k.kind == BoundaryKind::D3 {
                        assert_eq!((k.w1_below, k.w2_below), (Some(false), Some(false)));
                    }
                }
            }
        }
    }
    assert!(kinds.contains(&BoundaryKind::D1) && kinds.contains(&BoundaryKind::D2));
}

#[test]
fn dominant_points_have_nonnegative_degrees() {
    let c = cone(Gcm::type_a(2));
    let n = 2;
    for ineq in c.enumerate_inequalities(3).unwrap().inequalities {
        let p = ParabolicType::maximal(n, ineq.parabolic).unwrap();
        let f = c.face(&p, &ineq.w1, &ineq.w2, &ineq.v).unwrap();
        let rep = c.face_dimension(&f, &FaceSearch::default()).unwrap();
        for w in &rep.witnesses {
            assert!(c.restriction_check(&f, &w.triple).unwrap().all_nonnegative);
        }
    }
}

#[test]
fn finite_inequalities_are_facets() {
    for g in [Gcm::type_a(2), Gcm::type_b(2)] {
        let c = cone(g);
        let sys = c.enumerate_inequalities(4).unwrap();
        assert!(sys.exhaustive);
        for k in 0..sys.inequalities.len() {
            assert!(c.irredundancy_certificate(k, &sys.inequalities).unwrap().is_irredundant());
        }
    }
}

#[test]
fn witness_families_are_realizable() {
    let c = cone(Gcm::type_a(2));
    let e = c.tensor().unwrap();
    let r = c.realization();
    let rho = r.rho();
    for i in 0..2 {
        let t = Triple::new(rho.clone(), rho.clone(), rho.add(&rho).sub(&r.simple_root(i)));
        assert!(c.lattice_condition(&t).unwrap());
        assert!(e.gamma_member(&t.lambda1, &t.lambda2, &t.mu, 1, 0).unwrap().is_member());
    }
    let l = Weight::from_ints(&[2, 1]);
    let m = Weight::from_ints(&[0, 3]);
    assert!(e.gamma_member(&l, &m, &l.add(&m), 1, 0).unwrap().is_member());
}
