//! Finite-dimensional associative unital algebras given by structure
//! constants: `a_i · a_j = Σ_l c[i][j][l] a_l`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{canonical_basis, EchelonBuilder, Matrix, Vector};

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraDesc {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// Flat `dim³` table, index `(i * dim + j) * dim + l`.
    constants: Vec<FieldElement>,
    unit: Vector,
}

impl fmt::Debug for AlgebraDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra of dim {} over {} [{}]", self.dim, self.field, self.labels.join(", "))
    }
}

/// First failing axiom found by [`algebra_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    Associativity { triple: (usize, usize, usize), labels: (String, String, String) },
    LeftUnit { index: usize, label: String },
    RightUnit { index: usize, label: String },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Associativity { triple: (i, j, l), labels: (a, b, c) } => {
                write!(f, "associativity fails at ({i}, {j}, {l}) = ({a}, {b}, {c})")
            }
            AlgebraViolation::LeftUnit { index, label } => {
                write!(f, "unit is not a left identity on basis element {index} ({label})")
            }
            AlgebraViolation::RightUnit { index, label } => {
                write!(f, "unit is not a right identity on basis element {index} ({label})")
            }
        }
    }
}

impl AlgebraDesc {
    /// Builds a descriptor after checking shapes and owners (not axioms; see
    /// [`algebra_validate`]).
    pub fn new(field: &Field, labels: Vec<String>, constants: Vec<FieldElement>, unit: Vector) -> Result<AlgebraDesc> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} structure constants for dimension {dim} (expected {})",
                constants.len(),
                dim * dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        if let Some(bad) = constants.iter().chain(&unit).find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.name(), bad.field().name()));
        }
        Ok(AlgebraDesc { field: field.clone(), dim, labels, constants, unit })
    }

    /// Like [`AlgebraDesc::new`] but also runs [`algebra_validate`].
    pub fn new_validated(field: &Field, labels: Vec<String>, constants: Vec<FieldElement>, unit: Vector) -> Result<AlgebraDesc> {
        let a = AlgebraDesc::new(field, labels, constants, unit)?;
        algebra_validate(&a).map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[FieldElement] {
        &self.constants
    }

    pub fn constant(&self, i: usize, j: usize, l: usize) -> &FieldElement {
        &self.constants[(i * self.dim + j) * self.dim + l]
    }

    pub fn unit(&self) -> &[FieldElement] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Coordinates of `a_i · a_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.dim + j) * self.dim;
        self.constants[start..start + self.dim].to_vec()
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, l);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_cols(&self.field, self.dim, &cols)
    }

    /// Matrix of right multiplication by `x` on coordinate columns.
    pub fn right_mult_matrix(&self, x: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_cols(&self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The same algebra with every scalar mapped into `target`.
    pub fn map_scalars(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> AlgebraDesc {
        AlgebraDesc {
            field: target.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            constants: self.constants.iter().map(&f).collect(),
            unit: self.unit.iter().map(&f).collect(),
        }
    }

    /// Two-sided ideal generated by the given elements, as a canonical basis.
    pub fn ideal_closure(&self, gens: &[Vector]) -> Vec<Vector> {
        let mut ech = EchelonBuilder::new(&self.field, self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for g in gens {
            if ech.insert(g) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for k in 0..self.dim {
                let b = self.basis_vector(k);
                for w in [self.mul(&b, &v), self.mul(&v, &b)] {
                    if ech.insert(&w) {
                        queue.push(w);
                    }
                }
            }
        }
        ech.canonical_basis()
    }

    /// Whether the span of `basis` is closed under multiplication on both
    /// sides by every basis element.
    pub fn is_two_sided_ideal(&self, basis: &[Vector]) -> bool {
        let mut ech = EchelonBuilder::new(&self.field, self.dim);
        for v in basis {
            ech.insert(v);
        }
        basis.iter().all(|v| {
            (0..self.dim).all(|k| {
                let b = self.basis_vector(k);
                ech.contains(&self.mul(&b, v)) && ech.contains(&self.mul(v, &b))
            })
        })
    }
}

/// Exhaustive check of associativity on basis triples and of the unit axiom.
pub fn algebra_validate(a: &AlgebraDesc) -> std::result::Result<(), AlgebraViolation> {
    let n = a.dim;
    for i in 0..n {
        let e = a.basis_vector(i);
        if a.mul(&a.unit, &e) != e {
            return Err(AlgebraViolation::LeftUnit { index: i, label: a.labels[i].clone() });
        }
        if a.mul(&e, &a.unit) != e {
            return Err(AlgebraViolation::RightUnit { index: i, label: a.labels[i].clone() });
        }
    }
    let products: Vec<Vector> = (0..n * n).map(|ij| a.basis_product(ij / n, ij % n)).collect();
    for i in 0..n {
        let ei = a.basis_vector(i);
        for j in 0..n {
            let ij = &products[i * n + j];
            for l in 0..n {
                let lhs = a.mul(ij, &a.basis_vector(l));
                let rhs = a.mul(&ei, &products[j * n + l]);
                if lhs != rhs {
                    return Err(AlgebraViolation::Associativity {
                        triple: (i, j, l),
                        labels: (a.labels[i].clone(), a.labels[j].clone(), a.labels[l].clone()),
                    });
                }
            }
        }
    }
    Ok(())
}

fn unit_label(n: usize, a: usize, b: usize) -> String {
    if n < 10 {
        format!("e{}{}", a + 1, b + 1)
    } else {
        format!("e{}_{}", a + 1, b + 1)
    }
}

/// Builds constants from a closure returning the sparse product of two basis
/// indices as `(index, coefficient)` pairs.
fn from_sparse(
    field: &Field,
    labels: Vec<String>,
    unit: Vector,
    product: impl Fn(usize, usize) -> Vec<(usize, FieldElement)>,
) -> AlgebraDesc {
    let n = labels.len();
    let mut constants = vec![field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (l, c) in product(i, j) {
                let idx = (i * n + j) * n + l;
                constants[idx] = &constants[idx] + &c;
            }
        }
    }
    AlgebraDesc::new(field, labels, constants, unit).expect("constructor produces consistent shapes")
}

/// The full matrix algebra `M_n(F)` on matrix units `e_ab` in row-major order.
pub fn matrix_algebra(n: usize, field: &Field) -> Result<AlgebraDesc> {
    if n == 0 {
        return Err(Error::BadParams("matrix size must be positive".into()));
    }
    let labels = (0..n * n).map(|k| unit_label(n, k / n, k % n)).collect();
    let unit = (0..n * n).map(|k| if k / n == k % n { field.one() } else { field.zero() }).collect();
    Ok(from_sparse(field, labels, unit, |x, y| {
        let (a, b) = (x / n, x % n);
        let (c, d) = (y / n, y % n);
        if b == c {
            vec![(a * n + d, field.one())]
        } else {
            Vec::new()
        }
    }))
}

/// Upper-triangular `n×n` matrices, basis `e_ab` with `a ≤ b` in row-major order.
pub fn upper_triangular(n: usize, field: &Field) -> Result<AlgebraDesc> {
    if n == 0 {
        return Err(Error::BadParams("matrix size must be positive".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).expect("upper pair");
    let labels = pairs.iter().map(|&(a, b)| unit_label(n, a, b)).collect();
    let unit = pairs.iter().map(|&(a, b)| if a == b { field.one() } else { field.zero() }).collect();
    Ok(from_sparse(field, labels, unit, |x, y| {
        let (a, b) = pairs[x];
        let (c, d) = pairs[y];
        if b == c {
            vec![(index(a, d), field.one())]
        } else {
            Vec::new()
        }
    }))
}

/// Multiplication table of the cyclic group of order `n` (`g_i g_j = g_{i+j}`).
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Group algebra from a multiplication table of indices `0..n`.
pub fn group_algebra(table: &[Vec<usize>], field: &Field) -> Result<AlgebraDesc> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    if let Some(r) = table.iter().position(|row| row.len() != n) {
        return Err(Error::NotAGroup(format!("row {r} has the wrong length")));
    }
    if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
        return Err(Error::NotAGroup(format!("entry {bad} is out of range")));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for r in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for c in 0..n {
            if std::mem::replace(&mut seen_row[table[r][c]], true) {
                return Err(Error::NotAGroup(format!("row {r} repeats an entry (not a Latin square)")));
            }
            if std::mem::replace(&mut seen_col[table[c][r]], true) {
                return Err(Error::NotAGroup(format!("column {r} repeats an entry (not a Latin square)")));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let labels = (0..n).map(|g| format!("g{g}")).collect();
    let unit = (0..n).map(|g| if g == identity { field.one() } else { field.zero() }).collect();
    Ok(from_sparse(field, labels, unit, |i, j| vec![(table[i][j], field.one())]))
}

/// The quaternion algebra `(a, b)` with basis `1, i, j, k`, `i² = a`,
/// `j² = b`, `ij = k = -ji`.
pub fn quaternion_algebra(a: &FieldElement, b: &FieldElement, field: &Field) -> Result<AlgebraDesc> {
    if field.characteristic() == 2 {
        return Err(Error::BadParams("quaternion algebras need characteristic other than 2".into()));
    }
    if a.field() != field || b.field() != field {
        return Err(Error::FieldMismatch(field.name(), a.field().name()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::BadParams("quaternion parameters must be nonzero".into()));
    }
    let one = field.one();
    let neg_ab = -(a * b);
    let labels = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    let unit = vec![field.one(), field.zero(), field.zero(), field.zero()];
    Ok(from_sparse(field, labels, unit, |x, y| match (x, y) {
        (0, y) => vec![(y, one.clone())],
        (x, 0) => vec![(x, one.clone())],
        (1, 1) => vec![(0, a.clone())],
        (2, 2) => vec![(0, b.clone())],
        (3, 3) => vec![(0, neg_ab.clone())],
        (1, 2) => vec![(3, one.clone())],
        (2, 1) => vec![(3, -&one)],
        (1, 3) => vec![(2, a.clone())],
        (3, 1) => vec![(2, -a)],
        (2, 3) => vec![(1, -b)],
        (3, 2) => vec![(1, b.clone())],
        _ => unreachable!(),
    }))
}

/// A field as a one-dimensional algebra over itself.
pub fn field_as_algebra(field: &Field) -> AlgebraDesc {
    AlgebraDesc::new(field, vec!["1".into()], vec![field.one()], vec![field.one()]).expect("1-dim algebra")
}

/// A field regarded as an algebra over its prime field, on the power basis
/// `1, a, a², …`.
pub fn field_over_prime(field: &Field) -> AlgebraDesc {
    let prime = field.prime_field();
    let d = field.degree();
    let power = |k: usize| field.generator().pow(k as u128);
    let labels = (0..d).map(|k| if k == 0 { "1".to_string() } else { format!("a^{k}") }).collect();
    let mut unit = vec![prime.zero(); d];
    unit[0] = prime.one();
    from_sparse(&prime, labels, unit, |i, j| {
        (&power(i) * &power(j)).prime_coords().into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// The direct product `A × B`, basis of `A` followed by that of `B`.
pub fn direct_product(a: &AlgebraDesc, b: &AlgebraDesc) -> Result<AlgebraDesc> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.name(), b.field.name()));
    }
    let n = a.dim;
    let labels = a
        .labels
        .iter()
        .map(|l| format!("{l}.0"))
        .chain(b.labels.iter().map(|l| format!("{l}.1")))
        .collect();
    let unit = a.unit.iter().chain(&b.unit).cloned().collect();
    Ok(from_sparse(&a.field, labels, unit, |i, j| {
        if i < n && j < n {
            a.basis_product(i, j).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
        } else if i >= n && j >= n {
            b.basis_product(i - n, j - n)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (l + n, c))
                .collect()
        } else {
            Vec::new()
        }
    }))
}

/// The opposite algebra: `c'_{ij}^l = c_{ji}^l`, same unit.
pub fn opposite_algebra(a: &AlgebraDesc) -> AlgebraDesc {
    let n = a.dim;
    let mut constants = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            constants.extend(a.basis_product(j, i));
        }
    }
    AlgebraDesc { constants, ..a.clone() }
}

/// Quotient `A / I` on the canonical complement (standard basis vectors at
/// the non-pivot columns of the rref of `I`), with the projection matrix
/// from `A`-coordinates to quotient coordinates.
///
/// The ideal generated by `ideal_basis` is computed first: if it is all of
/// `A` the result is [`Error::ZeroQuotient`]; if it is strictly larger than
/// the given span the input was not an ideal.
pub fn quotient_algebra(a: &AlgebraDesc, ideal_basis: &[Vector]) -> Result<(AlgebraDesc, Matrix)> {
    let field = &a.field;
    let n = a.dim;
    if let Some(v) = ideal_basis.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!("ideal vector of length {} in dimension {n}", v.len())));
    }
    let span = canonical_basis(field, n, ideal_basis);
    let closure = a.ideal_closure(&span);
    if closure.len() == n {
        return Err(Error::ZeroQuotient);
    }
    if closure.len() != span.len() {
        return Err(Error::NotAnIdeal(format!(
            "span has dimension {} but the ideal it generates has dimension {}",
            span.len(),
            closure.len()
        )));
    }
    let pivots: Vec<usize> = span.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let project = |x: &[FieldElement]| -> Vector {
        let mut w = x.to_vec();
        for (row, &p) in span.iter().zip(&pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj = &*wj - &(&c * rj);
            }
        }
        complement.iter().map(|&c| w[c].clone()).collect()
    };
    let cols: Vec<Vector> = (0..n).map(|j| project(&a.basis_vector(j))).collect();
    let projection = Matrix::from_cols(field, complement.len(), &cols);
    let labels = complement.iter().map(|&c| a.labels[c].clone()).collect();
    let unit = project(&a.unit);
    let qdim = complement.len();
    let mut constants = Vec::with_capacity(qdim * qdim * qdim);
    for &x in &complement {
        for &y in &complement {
            constants.extend(project(&a.basis_product(x, y)));
        }
    }
    let q = AlgebraDesc::new(field, labels, constants, unit)?;
    Ok((q, projection))
}

/// Subalgebra of `M_n(F)` spanned by products of the given matrices and the
/// identity, on a basis whose first element is the identity. Returns the
/// algebra and the basis matrices.
pub fn enveloping_algebra(field: &Field, n: usize, gens: &[Matrix]) -> Result<(AlgebraDesc, Vec<Matrix>)> {
    if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimensionMismatch(format!("generator of shape {}x{}, expected {n}x{n}", g.rows(), g.cols())));
    }
    let mut ech = EchelonBuilder::new(field, n * n);
    let mut basis = vec![Matrix::identity(field, n)];
    ech.insert(&basis[0].to_vec());
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let p = g.mul(&b);
            if ech.insert(&p.to_vec()) {
                basis.push(p);
            }
        }
    }
    let d = basis.len();
    let flat: Vec<Vector> = basis.iter().map(|m| m.to_vec()).collect();
    let span = Matrix::from_cols(field, n * n, &flat);
    // coordinates are read off d independent entry positions
    let (_, _, rows) = span.transpose().rref();
    let pick = Matrix::from_fn(field, d, d, |i, j| span.get(rows[i], j).clone());
    let pick_inv = pick.inverse()?.ok_or_else(|| Error::InvariantBreach("enveloping basis is dependent".into()))?;
    let mut constants = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            let p = x.mul(y).to_vec();
            let c = pick_inv.mat_vec(&rows.iter().map(|&r| p[r].clone()).collect::<Vec<_>>());
            if span.mat_vec(&c) != p {
                return Err(Error::InvariantBreach("enveloping span not closed under products".into()));
            }
            constants.extend(c);
        }
    }
    let labels = (0..d).map(|k| format!("b{k}")).collect();
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    Ok((AlgebraDesc::new(field, labels, constants, unit)?, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn matrix_algebra_examples() {
        let m1 = matrix_algebra(1, &q()).unwrap();
        assert_eq!(m1, field_as_algebra(&q()).clone_with_labels(vec!["e11".into()]));
        let m2 = matrix_algebra(2, &q()).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.basis_product(0, 1), m2.basis_vector(1));
        assert!(algebra_validate(&m2).is_ok());
        let m3 = matrix_algebra(3, &Field::prime(2).unwrap()).unwrap();
        assert_eq!(m3.dim(), 9);
        assert_eq!(m3.unit().iter().filter(|c| !c.is_zero()).count(), 3);
    }

    #[test]
    fn perturbed_constant_is_reported() {
        let m2 = matrix_algebra(2, &q()).unwrap();
        let mut constants = m2.constants().to_vec();
        // e12 · e21 = e11 becomes e11 + e12
        constants[(4 + 2) * 4 + 1] = q().one();
        let bad = AlgebraDesc::new(&q(), m2.labels().to_vec(), constants, m2.unit().to_vec()).unwrap();
        assert!(matches!(algebra_validate(&bad), Err(AlgebraViolation::Associativity { .. })));
        let one = field_as_algebra(&q());
        assert!(algebra_validate(&one).is_ok());
    }

    #[test]
    fn group_algebras() {
        let c2 = group_algebra(&cyclic_group_table(2), &q()).unwrap();
        assert_eq!(c2.basis_product(1, 1), c2.unit().to_vec());
        let c3 = group_algebra(&cyclic_group_table(3), &q()).unwrap();
        assert!(c3.is_commutative());
        assert!(algebra_validate(&c3).is_ok());
        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(group_algebra(&bad, &q()), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn quaternions() {
        let f = q();
        let h = quaternion_algebra(&f.from_int(-1), &f.from_int(-1), &f).unwrap();
        assert!(algebra_validate(&h).is_ok());
        assert_eq!(h.basis_product(3, 3), vec![f.from_int(-1), f.zero(), f.zero(), f.zero()]);
        let split = quaternion_algebra(&f.one(), &f.one(), &f).unwrap();
        assert!(algebra_validate(&split).is_ok());
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(quaternion_algebra(&f2.one(), &f2.one(), &f2), Err(Error::BadParams(_))));
    }

    #[test]
    fn quotients() {
        let f = q();
        let t = upper_triangular(2, &f).unwrap();
        // basis e11, e12, e22; strict upper part is e12
        let (quo, proj) = quotient_algebra(&t, &[t.basis_vector(1)]).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(algebra_validate(&quo).is_ok());
        assert!(quo.is_commutative());
        assert_eq!((proj.rows(), proj.cols()), (2, 3));
        // both quotient basis elements are idempotent
        for i in 0..2 {
            assert_eq!(quo.basis_product(i, i), quo.basis_vector(i));
        }

        let (same, proj) = quotient_algebra(&t, &[]).unwrap();
        assert_eq!(same, t);
        assert!(proj.is_identity());

        let m2 = matrix_algebra(2, &f).unwrap();
        assert_eq!(quotient_algebra(&m2, &[m2.unit().to_vec()]).unwrap_err(), Error::ZeroQuotient);
        assert!(matches!(quotient_algebra(&t, &[t.basis_vector(0)]), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn opposite_is_involution() {
        let m2 = matrix_algebra(2, &q()).unwrap();
        let op = opposite_algebra(&m2);
        assert!(algebra_validate(&op).is_ok());
        assert_ne!(op, m2);
        assert_eq!(opposite_algebra(&op), m2);
        let c3 = group_algebra(&cyclic_group_table(3), &q()).unwrap();
        assert_eq!(opposite_algebra(&c3), c3);
    }

    #[test]
    fn field_and_products() {
        let f4 = Field::finite(2, 2).unwrap();
        let a = field_over_prime(&f4);
        assert_eq!(a.dim(), 2);
        assert!(algebra_validate(&a).is_ok());
        let qq = direct_product(&field_as_algebra(&q()), &field_as_algebra(&q())).unwrap();
        assert_eq!(qq.dim(), 2);
        assert!(algebra_validate(&qq).is_ok());
    }

    #[test]
    fn enveloping_of_a_nilpotent() {
        let f = q();
        let n = Matrix::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let (a, basis) = enveloping_algebra(&f, 2, &[n]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(basis.len(), 2);
        assert!(algebra_validate(&a).is_ok());
    }

    impl AlgebraDesc {
        fn clone_with_labels(&self, labels: Vec<String>) -> AlgebraDesc {
            AlgebraDesc { labels, ..self.clone() }
        }
    }
}
