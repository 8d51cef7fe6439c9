//! Bundled algebras, modules, embeddings and seeded random modules used by
//! the self-test suite and the example documents.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    cyclic_group_table, direct_product, field_as_algebra, field_over_prime, group_algebra, matrix_algebra,
    quaternion_algebra, upper_triangular, AlgebraDesc,
};
use crate::error::Result;
use crate::field::{embed_find, Field, FieldEmbedding};
use crate::linalg::Matrix;
use crate::module::{column_module, enveloping_module, regular_module, ModuleDesc};

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named { name: name.into(), value }
}

pub fn f2() -> Field {
    Field::prime(2).expect("prime")
}

pub fn f3() -> Field {
    Field::prime(3).expect("prime")
}

pub fn f4() -> Field {
    Field::finite(2, 2).expect("F_4")
}

pub fn f8() -> Field {
    Field::finite(2, 3).expect("F_8")
}

pub fn f9() -> Field {
    Field::finite(3, 2).expect("F_9")
}

pub fn f16() -> Field {
    Field::finite(2, 4).expect("F_16")
}

/// `ℚ(i)`, modulus `x² + 1`.
pub fn q_i() -> Field {
    Field::number_field_int(&[1, 0, 1]).expect("Q(i)")
}

/// `ℚ(ζ₃)`, modulus `x² + x + 1`.
pub fn q_zeta3() -> Field {
    Field::number_field_int(&[1, 1, 1]).expect("Q(zeta3)")
}

/// `ℚ(√2)`, modulus `x² − 2`.
pub fn q_sqrt2() -> Field {
    Field::number_field_int(&[-2, 0, 1]).expect("Q(sqrt2)")
}

fn field_label(f: &Field) -> String {
    if *f == q_i() {
        "Q(i)".into()
    } else if *f == q_zeta3() {
        "Q(zeta3)".into()
    } else if *f == q_sqrt2() {
        "Q(sqrt2)".into()
    } else if f.is_finite() {
        format!("F{}", f.order().expect("finite"))
    } else {
        f.name()
    }
}

pub fn quaternions() -> AlgebraDesc {
    let q = Field::rationals();
    quaternion_algebra(&q.from_int(-1), &q.from_int(-1), &q).expect("quaternions")
}

pub fn cyclic_group_algebra(n: usize, f: &Field) -> AlgebraDesc {
    group_algebra(&cyclic_group_table(n), f).expect("cyclic group algebra")
}

pub fn q_times_q() -> AlgebraDesc {
    let q = field_as_algebra(&Field::rationals());
    direct_product(&q, &q).expect("Q x Q")
}

/// Every bundled algebra, in a fixed order.
pub fn bundled_algebras() -> Vec<Named<Arc<AlgebraDesc>>> {
    let q = Field::rationals();
    let mut out = Vec::new();
    for f in [q.clone(), f2(), f3(), q_i()] {
        for n in 1..=3 {
            out.push(named(format!("M{n}({})", field_label(&f)), matrix_algebra(n, &f).expect("matrix algebra")));
        }
    }
    for f in [q.clone(), f2(), f3()] {
        for n in 2..=4 {
            out.push(named(format!("{}C{n}", field_label(&f)), cyclic_group_algebra(n, &f)));
        }
        out.push(named(format!("UT2({})", field_label(&f)), upper_triangular(2, &f).expect("UT2")));
        out.push(named(format!("UT3({})", field_label(&f)), upper_triangular(3, &f).expect("UT3")));
    }
    out.push(named("H(-1,-1/Q)", quaternions()));
    out.push(named("QxQ", q_times_q()));
    out.push(named("F4/F2", field_over_prime(&f4())));
    out.push(named("F8/F2", field_over_prime(&f8())));
    out.push(named("F9/F3", field_over_prime(&f9())));
    out.push(named("Q(i)/Q", field_over_prime(&q_i())));
    out.into_iter().map(|n| named(n.name, Arc::new(n.value))).collect()
}

pub fn algebra(name: &str) -> Option<Arc<AlgebraDesc>> {
    bundled_algebras().into_iter().find(|n| n.name == name).map(|n| n.value)
}

/// Extension fields used with algebras over a given base field.
pub fn extension_fields(base: &Field) -> Vec<Field> {
    if *base == Field::rationals() {
        vec![q_i(), q_zeta3()]
    } else if *base == f2() {
        vec![f4(), f8(), f16()]
    } else if *base == f3() {
        vec![f9()]
    } else {
        Vec::new()
    }
}

pub fn extensions_of(base: &Field) -> Vec<FieldEmbedding> {
    extension_fields(base).iter().map(|f| embed_find(base, f).expect("bundled embedding")).collect()
}

/// Regular and column-type modules of the bundled algebras.
pub fn bundled_modules() -> Vec<Named<ModuleDesc>> {
    let mut out = Vec::new();
    for a in bundled_algebras() {
        out.push(named(format!("{} regular", a.name), regular_module(&a.value)));
    }
    for f in [Field::rationals(), f2(), f3(), q_i()] {
        for n in 1..=3 {
            out.push(named(format!("column {n} over {}", field_label(&f)), column_module(n, &f).expect("column module")));
        }
    }
    out
}

fn random_matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(f, n, n, |_, _| f.random(rng, 1))
}

/// Block upper-triangular `[[A, C], [0, B]]` with the given block sizes.
fn random_block_triangular(f: &Field, a: usize, b: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let n = a + b;
    Matrix::from_fn(f, n, n, |i, j| if i >= a && j < a { f.zero() } else { f.random(rng, 1) })
}

/// Seeded random modules over `F_2` and `F_3` of dimension at most 6, given
/// by one or two generating matrices (modules of their enveloping algebras).
/// Roughly half preserve a random flag of subspaces, so that both simple and
/// non-simple modules occur.
pub fn random_modules(count: usize, seed: u64) -> Result<Vec<Named<ModuleDesc>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let f = if rng.gen_bool(0.5) { f2() } else { f3() };
        let n = rng.gen_range(1..=6usize);
        let gens_count = rng.gen_range(1..=2usize);
        let reducible = n > 1 && rng.gen_bool(0.5);
        let cut = if reducible { rng.gen_range(1..n) } else { 0 };
        let gens: Vec<Matrix> = (0..gens_count)
            .map(|_| if reducible { random_block_triangular(&f, cut, n - cut, &mut rng) } else { random_matrix(&f, n, &mut rng) })
            .collect();
        let m = enveloping_module(&f, n, &gens)?;
        out.push(named(format!("random #{idx} (dim {n} over {})", field_label(&f)), m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_validate;
    use crate::module::module_validate;

    #[test]
    fn bundled_objects_validate() {
        for a in bundled_algebras() {
            assert!(algebra_validate(&a.value).is_ok(), "{}", a.name);
        }
        for m in bundled_modules() {
            assert!(module_validate(&m.value).is_ok(), "{}", m.name);
        }
    }

    #[test]
    fn random_modules_are_reproducible() {
        let a = random_modules(10, 7).unwrap();
        let b = random_modules(10, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value, y.value);
            assert!(module_validate(&x.value).is_ok());
        }
    }
}
