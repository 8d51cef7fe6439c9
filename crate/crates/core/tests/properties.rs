use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use splitfield::algebra::{cyclic_group_table, group_algebra, quotient_algebra, upper_triangular, AlgebraDesc};
use splitfield::basechange::{descend_module, extend_algebra, extend_module, theta_dim_check};
use splitfield::corpus::{self, random_modules};
use splitfield::document::Document;
use splitfield::field::{embed_find, Field};
use splitfield::linalg::{Matrix, Vector};
use splitfield::module::{hom_space, inflate, is_isomorphic, regular_module, sub_quotient, Isomorphism, ModuleDesc};
use splitfield::split::{find_splitting_field, is_absolutely_simple, is_splitting_field};
use splitfield::structure::oracle::oracle_is_simple;
use splitfield::structure::{composition_dims, radical, radical_of_module, simple_modules};

fn fields() -> Vec<Field> {
    vec![Field::rationals(), corpus::f2(), corpus::f3(), corpus::f4(), Field::prime(5).unwrap(), corpus::q_i()]
}

fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| f.random(rng, 3))
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn is_isomorphic_or_unknown(m: &ModuleDesc, n: &ModuleDesc) -> bool {
    !matches!(is_isomorphic(m, n, 0).unwrap(), Isomorphism::NotIsomorphic)
}

fn isomorphic(m: &ModuleDesc, n: &ModuleDesc) -> bool {
    matches!(is_isomorphic(m, n, 0).unwrap(), Isomorphism::Isomorphic(_))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds(seed in any::<u64>(), fi in 0usize..6, rows in 0usize..5, cols in 0usize..5) {
        let f = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(f, rows, cols, &mut rng);
        let (r, rank, pivots) = a.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(pivots.len(), rank);
        let kernel = a.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(a.mat_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kronecker_mixed_product(seed in any::<u64>(), fi in 0usize..6) {
        let f = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(f, 2, 3, &mut rng);
        let b = random_matrix(f, 2, 2, &mut rng);
        let c = random_matrix(f, 3, 2, &mut rng);
        let d = random_matrix(f, 2, 1, &mut rng);
        let lhs = a.kronecker(&b).unwrap().mul(&c.kronecker(&d).unwrap());
        let rhs = a.mul(&c).kronecker(&b.mul(&d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_and_determinant_agree(seed in any::<u64>(), fi in 0usize..6, n in 1usize..5) {
        let f = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(f, n, n, &mut rng);
        match a.inverse().unwrap() {
            Some(inv) => {
                prop_assert!(a.mul(&inv).is_identity());
                prop_assert!(!a.det().unwrap().is_zero());
            }
            None => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn embeddings_are_ring_homomorphisms(seed in any::<u64>(), case in 0usize..4) {
        let (e, f) = match case {
            0 => (corpus::f4(), corpus::f16()),
            1 => (corpus::f9(), Field::finite(3, 4).unwrap()),
            2 => (Field::rationals(), corpus::q_i()),
            _ => (corpus::q_sqrt2(), Field::number_field_int(&[1, 0, -10, 0, 1]).unwrap()),
        };
        let emb = embed_find(&e, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = e.random(&mut rng, 5);
        let y = e.random(&mut rng, 5);
        prop_assert_eq!(emb.apply(&(&x + &y)), &emb.apply(&x) + &emb.apply(&y));
        prop_assert_eq!(emb.apply(&(&x * &y)), &emb.apply(&x) * &emb.apply(&y));
        prop_assert!(emb.apply(&e.one()).is_one());
        prop_assert_eq!(emb.preimage(&emb.apply(&x)), Some(x));
    }

    #[test]
    fn hom_dimension_is_basis_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = random_modules(2, seed).unwrap();
        let m = &ms[0].value;
        let p = random_invertible(m.field(), m.dim(), &mut rng);
        let m2 = m.change_basis(&p).unwrap();
        prop_assert_eq!(hom_space(m, m).unwrap().dim(), hom_space(&m2, &m2).unwrap().dim());
        prop_assert_eq!(hom_space(m, &m2).unwrap().dim(), hom_space(m, m).unwrap().dim());
        prop_assert!(isomorphic(m, &m2));
    }

    #[test]
    fn composition_dims_do_not_depend_on_basis_or_seed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_modules(1, seed).unwrap().remove(0).value;
        let p = random_invertible(m.field(), m.dim(), &mut rng);
        let m2 = m.change_basis(&p).unwrap();
        let mut a = composition_dims(&m, seed).unwrap();
        let mut b = composition_dims(&m2, seed.wrapping_add(1)).unwrap();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a.iter().sum::<usize>(), m.dim());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn theta_dimension_identity_on_random_modules(seed in any::<u64>()) {
        let ms = random_modules(1, seed).unwrap();
        let m = &ms[0].value;
        for emb in corpus::extensions_of(m.field()).into_iter().take(2) {
            let ctx = extend_algebra(m.algebra(), &emb).unwrap();
            let dims = theta_dim_check(m, m, &ctx).unwrap();
            prop_assert!(dims.equal);
            let mf = extend_module(m, &ctx).unwrap();
            prop_assert_eq!(mf.dim(), m.dim());
        }
    }

    #[test]
    fn simplicity_descends_on_random_modules(seed in any::<u64>()) {
        let m = random_modules(1, seed).unwrap().remove(0).value;
        let emb = corpus::extensions_of(m.field()).remove(0);
        let ctx = extend_algebra(m.algebra(), &emb).unwrap();
        let mf = extend_module(&m, &ctx).unwrap();
        if oracle_is_simple(&mf).unwrap() {
            prop_assert!(oracle_is_simple(&m).unwrap());
        }
    }

    #[test]
    fn descend_then_extend_is_isomorphic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_modules(1, seed).unwrap().remove(0).value;
        let k = m.field().clone();
        let f = if k == corpus::f2() { corpus::f16() } else { corpus::f9() };
        let ctx = extend_algebra(m.algebra(), &embed_find(&k, &f).unwrap()).unwrap();
        let p = random_invertible(&f, m.dim(), &mut rng);
        let v = extend_module(&m, &ctx).unwrap().change_basis(&p).unwrap();
        let w = descend_module(&v, &ctx).unwrap();
        let back = extend_algebra(w.module.algebra(), &w.emb).unwrap();
        let uf = extend_module(&w.module, &back).unwrap();
        prop_assert!(isomorphic(&uf, &v));
    }

    #[test]
    fn scalar_extension_is_exact(seed in any::<u64>()) {
        let m = random_modules(1, seed).unwrap().remove(0).value;
        let rad = radical_of_module(&m, seed).unwrap();
        prop_assume!(!rad.is_empty() && rad.len() < m.dim());
        let emb = corpus::extensions_of(m.field()).remove(0);
        let ctx = extend_algebra(m.algebra(), &emb).unwrap();
        let (sub, quo) = sub_quotient(&m, &rad).unwrap();
        let lifted: Vec<Vector> = rad.iter().map(|v| v.iter().map(|c| emb.apply(c)).collect()).collect();
        let (sub_f, quo_f) = sub_quotient(&extend_module(&m, &ctx).unwrap(), &lifted).unwrap();
        prop_assert!(isomorphic(&extend_module(&sub, &ctx).unwrap(), &sub_f));
        prop_assert!(isomorphic(&extend_module(&quo, &ctx).unwrap(), &quo_f));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let m = random_modules(1, seed).unwrap().remove(0).value;
        let text = Document::module(Some("m".into()), &m).to_json();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.to_module().unwrap(), m);
    }
}

#[test]
fn absolutely_simple_modules_stay_simple_under_extension() {
    let mut checked = 0;
    for name in ["F2C3", "F2C2", "M2(F2)", "UT2(F2)", "F4/F2", "F3C4", "M2(F3)"] {
        let a = corpus::algebra(name).unwrap();
        for (s, _) in simple_modules(&a, 0).unwrap().entries {
            let flag = is_absolutely_simple(&s, 0).unwrap().flag;
            for emb in corpus::extensions_of(s.field()) {
                let ctx = extend_algebra(&a, &emb).unwrap();
                let simple = oracle_is_simple(&extend_module(&s, &ctx).unwrap()).unwrap();
                if flag {
                    assert!(simple, "{name}: absolutely simple module split over {}", emb.target().name());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 10);
}

fn quotient_cases() -> Vec<(Arc<AlgebraDesc>, Vec<Vector>)> {
    let q = Field::rationals();
    let ut3 = upper_triangular(3, &q).unwrap();
    let rad = radical(&ut3, 0).unwrap();
    let f2c4 = group_algebra(&cyclic_group_table(4), &corpus::f2()).unwrap();
    let rad4 = radical(&f2c4, 0).unwrap();
    let qc4 = group_algebra(&cyclic_group_table(4), &q).unwrap();
    // the ideal generated by 1 + g² in ℚC₄
    let ideal = vec![vec![q.one(), q.zero(), q.one(), q.zero()], vec![q.zero(), q.one(), q.zero(), q.one()]];
    vec![(Arc::new(ut3), rad), (Arc::new(f2c4), rad4), (Arc::new(qc4), ideal)]
}

#[test]
fn absolute_simplicity_survives_inflation() {
    let mut checked = 0;
    for (a, ideal) in quotient_cases() {
        let (b, projection) = quotient_algebra(&a, &ideal).unwrap();
        let b = Arc::new(b);
        for (s, _) in simple_modules(&b, 0).unwrap().entries {
            if is_absolutely_simple(&s, 0).unwrap().flag {
                let inflated = inflate(&s, &projection, &a).unwrap();
                assert!(is_absolutely_simple(&inflated, 0).unwrap().flag);
                checked += 1;
            }
        }
    }
    assert!(checked >= 4);
}

#[test]
fn splitting_field_certificates_hold() {
    for name in ["H(-1,-1/Q)", "QC3", "QC4", "F4/F2", "F8/F2", "F9/F3", "F2C3", "Q(i)/Q", "M2(Q)"] {
        let a = corpus::algebra(name).unwrap();
        let cap = a.dim() * a.dim();
        let r = find_splitting_field(&a, None, 0).unwrap();
        assert!(r.degree <= cap, "{name}");
        assert_eq!(r.degree, r.tower.iter().map(|e| e.degree()).product::<usize>(), "{name}");
        let check = is_splitting_field(&a, &r.embedding, 0).unwrap();
        assert!(check.verdict, "{name}");
        assert!(check.per_simple.iter().all(|s| s.multiplicity == s.dim), "{name}");
        let again = find_splitting_field(&a, None, 0).unwrap();
        assert_eq!(again.tower, r.tower, "{name}");
    }
}

#[test]
fn regular_module_radical_matches_algebra_radical() {
    for a in corpus::bundled_algebras() {
        if a.value.dim() > 4 {
            continue;
        }
        let rad = radical(&a.value, 0).unwrap();
        let u = regular_module(&a.value);
        let rad_u = radical_of_module(&u, 0).unwrap();
        assert_eq!(rad.len(), rad_u.len(), "{}", a.name);
    }
}

#[test]
fn unknown_isomorphism_is_never_reported_as_false_for_isomorphic_modules() {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let qc3 = Arc::new(group_algebra(&cyclic_group_table(3), &q).unwrap());
    let reg = regular_module(&qc3);
    for _ in 0..5 {
        let p = random_invertible(&q, 3, &mut rng);
        assert!(is_isomorphic_or_unknown(&reg, &reg.change_basis(&p).unwrap()));
    }
}
