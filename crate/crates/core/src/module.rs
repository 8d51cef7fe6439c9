//! Left modules given by one action matrix per algebra basis element, acting
//! on column vectors.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{enveloping_algebra, matrix_algebra, AlgebraDesc};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{canonical_basis, EchelonBuilder, Matrix, Vector};

/// Number of random intertwiner combinations tried before giving up.
pub const ISO_SEARCH_CAP: usize = 200;
/// Exhaustive intertwiner search is used when `|F|^dim Hom` is at most this.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

#[derive(Clone, PartialEq, Eq)]
pub struct ModuleDesc {
    algebra: Arc<AlgebraDesc>,
    dim: usize,
    actions: Vec<Matrix>,
}

impl fmt::Debug for ModuleDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "module of dim {} over {:?}", self.dim, self.algebra)?;
        for (label, m) in self.algebra.labels().iter().zip(&self.actions) {
            write!(f, "{label}: {m:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleViolation {
    /// `ρ(a_i)ρ(a_j) ≠ Σ_l c_{ij}^l ρ(a_l)`.
    Relation { pair: (usize, usize) },
    UnitNotIdentity,
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Relation { pair: (i, j) } => {
                write!(f, "action does not respect the product of basis elements ({i}, {j})")
            }
            ModuleViolation::UnitNotIdentity => write!(f, "the unit does not act as the identity"),
        }
    }
}

fn same_algebra(a: &Arc<AlgebraDesc>, b: &Arc<AlgebraDesc>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ModuleDesc {
    /// Builds a module after checking shapes and owners (not axioms; see
    /// [`module_validate`]).
    pub fn new(algebra: Arc<AlgebraDesc>, dim: usize, actions: Vec<Matrix>) -> Result<ModuleDesc> {
        if actions.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        for m in &actions {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix of shape {}x{} in a module of dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field().name(), m.field().name()));
            }
        }
        Ok(ModuleDesc { algebra, dim, actions })
    }

    pub fn new_validated(algebra: Arc<AlgebraDesc>, dim: usize, actions: Vec<Matrix>) -> Result<ModuleDesc> {
        let m = ModuleDesc::new(algebra, dim, actions)?;
        module_validate(&m).map_err(|v| Error::InvalidModule(v.to_string()))?;
        Ok(m)
    }

    pub fn zero(algebra: Arc<AlgebraDesc>) -> ModuleDesc {
        let field = algebra.field().clone();
        let actions = vec![Matrix::zeros(&field, 0, 0); algebra.dim()];
        ModuleDesc { algebra, dim: 0, actions }
    }

    pub fn algebra(&self) -> &Arc<AlgebraDesc> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    /// `ρ(x)` for an algebra element given by coordinates.
    pub fn action_of(&self, x: &[FieldElement]) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.actions) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// The module with actions `P⁻¹ ρ(a) P`, i.e. `self` rewritten in the basis
    /// given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<ModuleDesc> {
        let inv = p
            .inverse()?
            .ok_or_else(|| Error::BadBasis("change-of-basis matrix is singular".into()))?;
        let actions = self.actions.iter().map(|m| inv.mul(m).mul(p)).collect();
        ModuleDesc::new(self.algebra.clone(), self.dim, actions)
    }

    /// Stable ordering key: dimension, then the printed action entries.
    pub fn canonical_key(&self) -> (usize, Vec<String>) {
        let entries = self.actions.iter().flat_map(|m| m.entries().iter().map(|e| e.to_string())).collect();
        (self.dim, entries)
    }
}

/// Exhaustive check of the representation axioms; reports the first failure.
pub fn module_validate(m: &ModuleDesc) -> std::result::Result<(), ModuleViolation> {
    let a = &m.algebra;
    if !m.action_of(a.unit()).is_identity() && m.dim > 0 {
        return Err(ModuleViolation::UnitNotIdentity);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.actions[i].mul(&m.actions[j]);
            let rhs = m.action_of(&a.basis_product(i, j));
            if lhs != rhs {
                return Err(ModuleViolation::Relation { pair: (i, j) });
            }
        }
    }
    Ok(())
}

/// `A` acting on itself by left multiplication.
pub fn regular_module(a: &Arc<AlgebraDesc>) -> ModuleDesc {
    let actions = (0..a.dim()).map(|i| a.left_mult_matrix(&a.basis_vector(i))).collect();
    ModuleDesc { algebra: a.clone(), dim: a.dim(), actions }
}

/// The column module `F^n` of `M_n(F)`, with `e_ab` acting as the matrix unit.
pub fn column_module(n: usize, field: &Field) -> Result<ModuleDesc> {
    let a = Arc::new(matrix_algebra(n, field)?);
    let actions = (0..n * n)
        .map(|k| {
            Matrix::from_fn(field, n, n, |i, j| if i == k / n && j == k % n { field.one() } else { field.zero() })
        })
        .collect();
    Ok(ModuleDesc { algebra: a, dim: n, actions })
}

/// The natural module of the enveloping algebra of the given matrices.
pub fn enveloping_module(field: &Field, n: usize, gens: &[Matrix]) -> Result<ModuleDesc> {
    let (a, basis) = enveloping_algebra(field, n, gens)?;
    ModuleDesc::new(Arc::new(a), n, basis)
}

pub fn direct_sum(m: &ModuleDesc, n: &ModuleDesc) -> Result<ModuleDesc> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let d = m.dim + n.dim;
    let field = m.field().clone();
    let actions = m
        .actions
        .iter()
        .zip(&n.actions)
        .map(|(x, y)| {
            Matrix::from_fn(&field, d, d, |i, j| {
                if i < m.dim && j < m.dim {
                    x.get(i, j).clone()
                } else if i >= m.dim && j >= m.dim {
                    y.get(i - m.dim, j - m.dim).clone()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    Ok(ModuleDesc { algebra: m.algebra.clone(), dim: d, actions })
}

/// Inflation along a surjection `A ↠ B` given by its projection matrix
/// (`dim B × dim A`): `a_i` acts as `Σ_k P[k][i] ρ(b_k)`.
pub fn inflate(m: &ModuleDesc, projection: &Matrix, a: &Arc<AlgebraDesc>) -> Result<ModuleDesc> {
    if projection.rows() != m.algebra.dim() || projection.cols() != a.dim() {
        return Err(Error::DimensionMismatch("projection shape does not match the algebras".into()));
    }
    let actions = (0..a.dim()).map(|i| m.action_of(&projection.col(i))).collect();
    ModuleDesc::new(a.clone(), m.dim, actions)
}

/// Closure of the span of `seeds` under the action, as a canonical (rref) basis.
pub fn spin(m: &ModuleDesc, seeds: &[Vector]) -> Vec<Vector> {
    spin_builder(m, seeds).canonical_basis()
}

pub(crate) fn spin_builder(m: &ModuleDesc, seeds: &[Vector]) -> EchelonBuilder {
    let mut ech = EchelonBuilder::new(m.field(), m.dim);
    let mut queue = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in &m.actions {
            let w = a.mat_vec(&v);
            if ech.insert(&w) {
                queue.push(w);
                if ech.dim() == m.dim {
                    return ech;
                }
            }
        }
    }
    ech
}

/// Whether the span of `basis` is invariant under every action matrix.
pub fn is_invariant(m: &ModuleDesc, basis: &[Vector]) -> bool {
    let mut ech = EchelonBuilder::new(m.field(), m.dim);
    for v in basis {
        ech.insert(v);
    }
    basis.iter().all(|v| m.actions.iter().all(|a| ech.contains(&a.mat_vec(v))))
}

/// A submodule together with its canonical basis and the complement used for
/// the quotient.
#[derive(Clone, Debug)]
pub struct Section {
    pub sub: ModuleDesc,
    pub quotient: ModuleDesc,
    /// Canonical (rref) basis of the submodule.
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
    /// Coordinates spanning the quotient's complement.
    pub complement: Vec<usize>,
}

impl Section {
    /// Quotient coordinates of a vector of the ambient module.
    pub fn project(&self, v: &[FieldElement]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj = &*wj - &(&c * rj);
                }
            }
        }
        self.complement.iter().map(|&c| w[c].clone()).collect()
    }

    /// Lifts quotient coordinates to the ambient space via the complement.
    pub fn lift(&self, q: &[FieldElement], field: &Field, dim: usize) -> Vector {
        let mut v = vec![field.zero(); dim];
        for (&c, x) in self.complement.iter().zip(q) {
            v[c] = x.clone();
        }
        v
    }

    /// Ambient coordinates of a vector given in the submodule's basis.
    pub fn embed(&self, s: &[FieldElement], field: &Field, dim: usize) -> Vector {
        let mut v = vec![field.zero(); dim];
        for (c, row) in s.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (vj, rj) in v.iter_mut().zip(row) {
                *vj = &*vj + &(c * rj);
            }
        }
        v
    }
}

/// Restriction to the span of `sub_basis` and the induced action on the
/// quotient, both on canonical bases.
pub fn section(m: &ModuleDesc, sub_basis: &[Vector]) -> Result<Section> {
    if let Some(v) = sub_basis.iter().find(|v| v.len() != m.dim) {
        return Err(Error::DimensionMismatch(format!("vector of length {} in a module of dimension {}", v.len(), m.dim)));
    }
    let field = m.field().clone();
    let basis = canonical_basis(&field, m.dim, sub_basis);
    if !is_invariant(m, &basis) {
        return Err(Error::NotInvariant);
    }
    let pivots: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let complement: Vec<usize> = (0..m.dim).filter(|c| !pivots.contains(c)).collect();
    let k = basis.len();
    let sub_actions = m
        .actions
        .iter()
        .map(|a| {
            let cols: Vec<Vector> = basis
                .iter()
                .map(|w| {
                    let img = a.mat_vec(w);
                    pivots.iter().map(|&p| img[p].clone()).collect()
                })
                .collect();
            Matrix::from_cols(&field, k, &cols)
        })
        .collect();
    let mut sec = Section {
        sub: ModuleDesc::zero(m.algebra.clone()),
        quotient: ModuleDesc::zero(m.algebra.clone()),
        basis,
        pivots,
        complement,
    };
    let qd = sec.complement.len();
    let quot_actions = m
        .actions
        .iter()
        .map(|a| {
            let cols: Vec<Vector> = sec.complement.iter().map(|&c| sec.project(&a.col(c))).collect();
            Matrix::from_cols(&field, qd, &cols)
        })
        .collect();
    sec.sub = ModuleDesc { algebra: m.algebra.clone(), dim: k, actions: sub_actions };
    sec.quotient = ModuleDesc { algebra: m.algebra.clone(), dim: qd, actions: quot_actions };
    Ok(sec)
}

pub fn sub_quotient(m: &ModuleDesc, sub_basis: &[Vector]) -> Result<(ModuleDesc, ModuleDesc)> {
    let s = section(m, sub_basis)?;
    Ok((s.sub, s.quotient))
}

/// A basis of `Hom_A(M, N)` as `dim N × dim M` matrices.
///
/// The basis is the canonical kernel basis of the intertwining system in the
/// unknowns `vec(f)` (row-major), so the coordinates of any intertwiner in
/// this basis are its entries at the free positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source_dim: usize,
    pub target_dim: usize,
    pub mats: Vec<Matrix>,
    /// Row-major positions of the free variables, one per basis matrix.
    pub free: Vec<usize>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// Coordinates of an intertwiner in this basis (no membership check).
    pub fn coordinates(&self, f: &Matrix) -> Vector {
        self.free.iter().map(|&p| f.entries()[p].clone()).collect()
    }

    pub fn combine(&self, field: &Field, coeffs: &[FieldElement]) -> Matrix {
        let mut acc = Matrix::zeros(field, self.target_dim, self.source_dim);
        for (c, m) in coeffs.iter().zip(&self.mats) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }
}

/// Whether `f` satisfies `f·ρ_M(a_i) = ρ_N(a_i)·f` for every basis element.
pub fn is_intertwiner(m: &ModuleDesc, n: &ModuleDesc, f: &Matrix) -> bool {
    f.rows() == n.dim
        && f.cols() == m.dim
        && m.actions.iter().zip(&n.actions).all(|(x, y)| f.mul(x) == y.mul(f))
}

pub fn hom_space(m: &ModuleDesc, n: &ModuleDesc) -> Result<HomBasis> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field().clone();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    let mut ech = EchelonBuilder::new(&field, unknowns);
    for (x, y) in m.actions.iter().zip(&n.actions) {
        if x.is_identity() && y.is_identity() {
            continue;
        }
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..dm {
                    let e = x.get(k, c);
                    if !e.is_zero() {
                        row[r * dm + k] = &row[r * dm + k] + e;
                    }
                }
                for k in 0..dn {
                    let e = y.get(r, k);
                    if !e.is_zero() {
                        row[k * dm + c] = &row[k * dm + c] - e;
                    }
                }
                ech.insert(&row);
                if ech.dim() == unknowns {
                    return Ok(HomBasis { source_dim: dm, target_dim: dn, mats: Vec::new(), free: Vec::new() });
                }
            }
        }
    }
    let rows = ech.canonical_basis();
    let kernel = Matrix::from_rows(&field, unknowns, &rows).kernel_basis();
    let mut pivot = vec![false; unknowns];
    for row in &rows {
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            pivot[p] = true;
        }
    }
    let free: Vec<usize> = (0..unknowns).filter(|&p| !pivot[p]).collect();
    let mats = kernel
        .into_iter()
        .map(|v| Matrix::new(&field, dn, dm, v).expect("shape"))
        .collect();
    Ok(HomBasis { source_dim: dm, target_dim: dn, mats, free })
}

/// `End_A(M)` as an algebra on the basis of [`hom_space`]`(M, M)`, with
/// multiplication given by composition.
pub fn end_algebra(m: &ModuleDesc) -> Result<AlgebraDesc> {
    let h = hom_space(m, m)?;
    end_algebra_from_basis(m.field(), &h)
}

pub(crate) fn end_algebra_from_basis(field: &Field, h: &HomBasis) -> Result<AlgebraDesc> {
    let d = h.dim();
    if d == 0 {
        return Err(Error::PreconditionFailed("endomorphism algebra of the zero module".into()));
    }
    let mut constants = Vec::with_capacity(d * d * d);
    for x in &h.mats {
        for y in &h.mats {
            let p = x.mul(y);
            let c = h.coordinates(&p);
            if h.combine(field, &c) != p {
                return Err(Error::InvariantBreach("composition of endomorphisms left the hom space".into()));
            }
            constants.extend(c);
        }
    }
    let unit = h.coordinates(&Matrix::identity(field, h.source_dim));
    let labels = (0..d).map(|k| format!("f{k}")).collect();
    AlgebraDesc::new(field, labels, constants, unit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// An invertible intertwiner `M → N`.
    Isomorphic(Matrix),
    NotIsomorphic,
    /// The randomized search hit its cap without a decision.
    Unknown,
}

impl Isomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }
}

/// Searches `Hom_A(M, N)` for an invertible element: basis elements first,
/// then seeded random combinations, then (over small finite fields) every
/// combination.
pub fn is_isomorphic(m: &ModuleDesc, n: &ModuleDesc, seed: u64) -> Result<Isomorphism> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(Isomorphism::NotIsomorphic);
    }
    let field = m.field().clone();
    if m.dim == 0 {
        return Ok(Isomorphism::Isomorphic(Matrix::zeros(&field, 0, 0)));
    }
    if m == n {
        return Ok(Isomorphism::Isomorphic(Matrix::identity(&field, m.dim)));
    }
    let h = hom_space(m, n)?;
    if h.is_empty() {
        return Ok(Isomorphism::NotIsomorphic);
    }
    Ok(match find_invertible(&field, &h, seed) {
        Some(f) => Isomorphism::Isomorphic(f),
        None if exhaustive_feasible(&field, h.dim()) => Isomorphism::NotIsomorphic,
        None => Isomorphism::Unknown,
    })
}

pub(crate) fn exhaustive_feasible(field: &Field, dim: usize) -> bool {
    field
        .order()
        .and_then(|q| q.checked_pow(dim as u32))
        .is_some_and(|n| n <= EXHAUSTIVE_LIMIT)
}

/// Invertible element of the span, or `None` when the search (exhaustive
/// when feasible) finds none.
pub(crate) fn find_invertible(field: &Field, h: &HomBasis, seed: u64) -> Option<Matrix> {
    if let Some(f) = h.mats.iter().find(|f| f.is_invertible()) {
        return Some(f.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_SEARCH_CAP {
        let coeffs: Vec<FieldElement> = (0..h.dim()).map(|_| field.random(&mut rng, 3)).collect();
        let f = h.combine(field, &coeffs);
        if f.is_invertible() {
            return Some(f);
        }
    }
    if exhaustive_feasible(field, h.dim()) {
        let q = field.order().expect("finite");
        let total = q.pow(h.dim() as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<FieldElement> = (0..h.dim())
                .map(|_| {
                    let e = field.element_at(c % q);
                    c /= q;
                    e
                })
                .collect();
            let f = h.combine(field, &coeffs);
            if f.is_invertible() {
                return Some(f);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, group_algebra, quaternion_algebra};

    fn q() -> Field {
        Field::rationals()
    }

    fn vecq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().from_int(x)).collect()
    }

    fn qc2() -> Arc<AlgebraDesc> {
        Arc::new(group_algebra(&cyclic_group_table(2), &q()).unwrap())
    }

    /// The 1-dim module of ℚC_2 where the generator acts by `sign`.
    fn character(a: &Arc<AlgebraDesc>, sign: i64) -> ModuleDesc {
        let actions = vec![Matrix::from_ints(&q(), &[&[1]]), Matrix::from_ints(&q(), &[&[sign]])];
        ModuleDesc::new_validated(a.clone(), 1, actions).unwrap()
    }

    #[test]
    fn validation() {
        for n in 1..=3 {
            assert!(module_validate(&column_module(n, &q()).unwrap()).is_ok());
        }
        let h = Arc::new(quaternion_algebra(&q().from_int(-1), &q().from_int(-1), &q()).unwrap());
        let reg = regular_module(&h);
        assert!(module_validate(&reg).is_ok());
        let mut actions = reg.actions().to_vec();
        actions.swap(1, 2);
        let swapped = ModuleDesc::new(h, 4, actions).unwrap();
        assert!(matches!(module_validate(&swapped), Err(ModuleViolation::Relation { .. })));
    }

    #[test]
    fn spinning() {
        let col = column_module(3, &q()).unwrap();
        assert_eq!(spin(&col, &[vecq(&[1, 0, 0])]).len(), 3);
        assert!(spin(&col, &[vecq(&[0, 0, 0])]).is_empty());
        let reg = regular_module(&qc2());
        assert_eq!(spin(&reg, &[vecq(&[1, 1])]), vec![vecq(&[1, 1])]);
    }

    #[test]
    fn sub_and_quotient() {
        let a = qc2();
        let reg = regular_module(&a);
        let (s, quo) = sub_quotient(&reg, &[vecq(&[1, 1])]).unwrap();
        assert_eq!(s, character(&a, 1));
        assert_eq!(quo, character(&a, -1));
        let (s, quo) = sub_quotient(&reg, &[vecq(&[1, 0]), vecq(&[0, 1])]).unwrap();
        assert_eq!((s.dim(), quo.dim()), (2, 0));
        let col = column_module(2, &q()).unwrap();
        assert_eq!(sub_quotient(&col, &[vecq(&[1, 0])]).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn hom_dimensions() {
        for n in 1..=3 {
            let col = column_module(n, &q()).unwrap();
            assert_eq!(hom_space(&col, &col).unwrap().dim(), 1);
        }
        let a = qc2();
        assert_eq!(hom_space(&character(&a, 1), &character(&a, -1)).unwrap().dim(), 0);
        let reg = regular_module(&a);
        let h = hom_space(&reg, &reg).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.mats.iter().all(|f| is_intertwiner(&reg, &reg, f)));
        let col = column_module(2, &q()).unwrap();
        assert_eq!(hom_space(&reg, &col).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn endomorphism_algebras() {
        let col = column_module(3, &q()).unwrap();
        assert_eq!(end_algebra(&col).unwrap().dim(), 1);
        let h = Arc::new(quaternion_algebra(&q().from_int(-1), &q().from_int(-1), &q()).unwrap());
        let e = end_algebra(&regular_module(&h)).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(crate::algebra::algebra_validate(&e).is_ok());
        let s = column_module(2, &q()).unwrap();
        let ss = direct_sum(&s, &s).unwrap();
        let e = end_algebra(&ss).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(!e.is_commutative());
    }

    #[test]
    fn isomorphism_search() {
        let col = column_module(2, &q()).unwrap();
        assert_eq!(
            is_isomorphic(&col, &col, 0).unwrap(),
            Isomorphism::Isomorphic(Matrix::identity(&q(), 2))
        );
        let a = qc2();
        assert_eq!(is_isomorphic(&regular_module(&a), &character(&a, 1), 0).unwrap(), Isomorphism::NotIsomorphic);

        let f3 = Field::prime(3).unwrap();
        let col3 = column_module(2, &f3).unwrap();
        let p = Matrix::from_ints(&f3, &[&[1, 2], &[1, 1]]);
        let other = col3.change_basis(&p).unwrap();
        assert_ne!(other, col3);
        match is_isomorphic(&col3, &other, 0).unwrap() {
            Isomorphism::Isomorphic(f) => {
                assert!(f.is_invertible());
                assert!(is_intertwiner(&col3, &other, &f));
            }
            r => panic!("expected an isomorphism, got {r:?}"),
        }
    }

    #[test]
    fn inflation_and_sums() {
        let a = qc2();
        let triv = character(&a, 1);
        let s = direct_sum(&triv, &character(&a, -1)).unwrap();
        assert!(module_validate(&s).is_ok());
        assert!(matches!(is_isomorphic(&s, &regular_module(&a), 0).unwrap(), Isomorphism::Isomorphic(_)));
    }
}
