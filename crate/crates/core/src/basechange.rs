//! Scalar extension of algebras and modules along a field embedding, the
//! comparison of Hom spaces before and after extension, and descent of a
//! module to the subfield generated by its action entries.

use std::sync::Arc;

use crate::algebra::{algebra_validate, AlgebraDesc};
use crate::error::{Error, Result};
use crate::field::{embed_find, subfield_generated, Field, FieldEmbedding, FieldElement};
use crate::linalg::{EchelonBuilder, Matrix, Vector};
use crate::module::{end_algebra_from_basis, hom_space, is_intertwiner, HomBasis, ModuleDesc};

/// An algebra `A` over `k` together with `A^F` for an embedding `k → F`.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    pub emb: FieldEmbedding,
    pub algebra: Arc<AlgebraDesc>,
    pub extended: Arc<AlgebraDesc>,
}

impl ExtensionContext {
    pub fn target(&self) -> &Field {
        self.emb.target()
    }
}

/// `A^F`: structure constants and unit mapped through the embedding.
pub fn extend_algebra(a: &Arc<AlgebraDesc>, emb: &FieldEmbedding) -> Result<ExtensionContext> {
    if a.field() != emb.source() {
        return Err(Error::FieldMismatch(emb.source().name(), a.field().name()));
    }
    let extended = if emb.is_identity() {
        a.clone()
    } else {
        let ext = a.map_scalars(emb.target(), |c| emb.apply(c));
        algebra_validate(&ext).map_err(|v| Error::InvariantBreach(format!("extended algebra: {v}")))?;
        Arc::new(ext)
    };
    Ok(ExtensionContext { emb: emb.clone(), algebra: a.clone(), extended })
}

pub fn extend_matrix(m: &Matrix, emb: &FieldEmbedding) -> Matrix {
    m.map(emb.target(), |c| emb.apply(c))
}

/// `M^F` over `A^F`; same dimension, entries mapped through the embedding.
pub fn extend_module(m: &ModuleDesc, ctx: &ExtensionContext) -> Result<ModuleDesc> {
    if m.algebra() != &ctx.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let actions = m.actions().iter().map(|a| extend_matrix(a, &ctx.emb)).collect();
    let ext = ModuleDesc::new(ctx.extended.clone(), m.dim(), actions)?;
    if ext.dim() != m.dim() {
        return Err(Error::InvariantBreach("scalar extension changed the dimension".into()));
    }
    Ok(ext)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaDims {
    /// `dim_k Hom_A(M, N)`.
    pub base: usize,
    /// `dim_F Hom_{A^F}(M^F, N^F)`.
    pub extended: usize,
    pub equal: bool,
}

/// Compares `dim_k Hom_A(M, N)` with `dim_F Hom_{A^F}(M^F, N^F)`.
pub fn theta_dim_check(m: &ModuleDesc, n: &ModuleDesc, ctx: &ExtensionContext) -> Result<ThetaDims> {
    let base = hom_space(m, n)?.dim();
    let extended = hom_space(&extend_module(m, ctx)?, &extend_module(n, ctx)?)?.dim();
    Ok(ThetaDims { base, extended, equal: base == extended })
}

/// `θ(f) = id_F ⊗ f`: the entrywise image of an intertwiner, checked to
/// intertwine the extended modules.
pub fn theta_apply(f: &Matrix, m: &ModuleDesc, n: &ModuleDesc, ctx: &ExtensionContext) -> Result<Matrix> {
    if !is_intertwiner(m, n, f) {
        return Err(Error::PreconditionFailed("matrix is not an intertwiner".into()));
    }
    let g = extend_matrix(f, &ctx.emb);
    if !is_intertwiner(&extend_module(m, ctx)?, &extend_module(n, ctx)?, &g) {
        return Err(Error::InvariantBreach("extended intertwiner no longer intertwines".into()));
    }
    Ok(g)
}

/// Whether the images of a Hom basis under `θ` stay linearly independent over F.
pub fn theta_images_independent(h: &HomBasis, ctx: &ExtensionContext) -> bool {
    let mut ech = EchelonBuilder::new(ctx.target(), h.source_dim * h.target_dim);
    h.mats.iter().all(|f| ech.insert(&extend_matrix(f, &ctx.emb).to_vec()))
}

/// Checks that `θ` induces an algebra isomorphism `End_A(M)^F → End_{A^F}(M^F)`:
/// bijective on bases, unital and multiplicative on every basis pair, where
/// the products on the right are taken with the structure constants computed
/// independently for `M^F`.
pub fn end_algebra_extension_check(m: &ModuleDesc, ctx: &ExtensionContext) -> Result<bool> {
    let field = ctx.target().clone();
    if m.dim() == 0 {
        return Ok(true);
    }
    let h = hom_space(m, m)?;
    let end = end_algebra_from_basis(m.field(), &h)?;
    let end_ext = end.map_scalars(&field, |c| ctx.emb.apply(c));
    let mf = extend_module(m, ctx)?;
    let hf = hom_space(&mf, &mf)?;
    let end_f = end_algebra_from_basis(&field, &hf)?;
    if end_ext.dim() != end_f.dim() {
        return Ok(false);
    }
    let d = end_f.dim();
    let mut cols = Vec::with_capacity(d);
    for f in &h.mats {
        let g = extend_matrix(f, &ctx.emb);
        let c = hf.coordinates(&g);
        if hf.combine(&field, &c) != g {
            return Ok(false);
        }
        cols.push(c);
    }
    let t = Matrix::from_cols(&field, d, &cols);
    if !t.is_invertible() {
        return Ok(false);
    }
    if t.mat_vec(end_ext.unit()) != end_f.unit() {
        return Ok(false);
    }
    for a in 0..d {
        for b in 0..d {
            let lhs = t.mat_vec(&end_ext.basis_product(a, b));
            let rhs = end_f.mul(&cols[a], &cols[b]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The algebra over `E` whose extension along `E → F` is `a`, when every
/// structure constant lies in the image of `E`.
pub fn pull_back_algebra(a: &AlgebraDesc, emb: &FieldEmbedding) -> Result<AlgebraDesc> {
    if a.field() != emb.target() {
        return Err(Error::FieldMismatch(emb.target().name(), a.field().name()));
    }
    let pull = |xs: &[FieldElement]| -> Result<Vec<FieldElement>> {
        xs.iter().map(|x| emb.preimage(x).ok_or(Error::NotOverE)).collect()
    };
    AlgebraDesc::new(emb.source(), a.labels().to_vec(), pull(a.constants())?, pull(a.unit())?)
}

/// A module over `A^E` whose extension to `F` is isomorphic to the input.
#[derive(Clone, Debug)]
pub struct WrittenIn {
    pub field: Field,
    /// `k → E`.
    pub base_emb: FieldEmbedding,
    /// `E → F`.
    pub emb: FieldEmbedding,
    pub module: ModuleDesc,
    /// Invertible intertwiner `U^F → V` (the change-of-basis matrix).
    pub witness: Matrix,
}

/// Rewrites `V` (a module over `A^F`, where `ctx` describes `k → F`) in the
/// given basis and pulls every action entry back along `E → F`.
///
/// Returns [`Error::NotOverE`] when some entry is outside the image of `E`.
pub fn write_in(v: &ModuleDesc, ctx: &ExtensionContext, emb_ef: &FieldEmbedding, basis: &[Vector]) -> Result<WrittenIn> {
    if v.algebra() != &ctx.extended {
        return Err(Error::AlgebraMismatch);
    }
    if emb_ef.target() != ctx.target() {
        return Err(Error::FieldMismatch(ctx.target().name(), emb_ef.target().name()));
    }
    let k = ctx.algebra.field();
    let e = emb_ef.source().clone();
    let emb_ke = embed_find(k, &e)?;
    if emb_ke.then(emb_ef)? != ctx.emb {
        return Err(Error::PreconditionFailed("k → E → F does not compose to the given k → F".into()));
    }
    let d = v.dim();
    if basis.len() != d || basis.iter().any(|b| b.len() != d) {
        return Err(Error::BadBasis(format!("expected {d} vectors of length {d}")));
    }
    let f = ctx.target();
    let p = Matrix::from_cols(f, d, basis);
    let p_inv = p.inverse()?.ok_or_else(|| Error::BadBasis("vectors are linearly dependent".into()))?;
    let ctx_e = extend_algebra(&ctx.algebra, &emb_ke)?;
    let mut actions = Vec::with_capacity(v.actions().len());
    for a in v.actions() {
        let b = p_inv.mul(a).mul(&p);
        let mut pulled = Vec::with_capacity(d * d);
        for x in b.entries() {
            pulled.push(emb_ef.preimage(x).ok_or(Error::NotOverE)?);
        }
        actions.push(Matrix::new(&e, d, d, pulled)?);
    }
    let u = ModuleDesc::new(ctx_e.extended.clone(), d, actions)?;
    let ctx_ef = extend_algebra(&ctx_e.extended, emb_ef)?;
    let uf = extend_module(&u, &ctx_ef)?;
    if uf.algebra() != v.algebra() || !is_intertwiner(&uf, v, &p) {
        return Err(Error::InvariantBreach("descended module does not extend back to the input".into()));
    }
    Ok(WrittenIn { field: e, base_emb: emb_ke, emb: emb_ef.clone(), module: u, witness: p })
}

/// Descends `V` to the subfield generated over `k` by the entries of its
/// action matrices in the standard basis.
pub fn descend_module(v: &ModuleDesc, ctx: &ExtensionContext) -> Result<WrittenIn> {
    let entries: Vec<FieldElement> = v.actions().iter().flat_map(|a| a.entries().iter().cloned()).collect();
    let (_, emb_ef) = subfield_generated(ctx.target(), &entries)?;
    let d = v.dim();
    let f = ctx.target();
    let standard: Vec<Vector> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    match write_in(v, ctx, &emb_ef, &standard) {
        Err(Error::NotOverE) => Err(Error::InvariantBreach("entries escaped the subfield they generate".into())),
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, group_algebra, matrix_algebra, quaternion_algebra};
    use crate::module::{column_module, is_isomorphic, regular_module, Isomorphism};

    fn qi() -> Field {
        Field::number_field_int(&[1, 0, 1]).unwrap()
    }

    fn q_to_qi() -> FieldEmbedding {
        embed_find(&Field::rationals(), &qi()).unwrap()
    }

    #[test]
    fn extension_examples() {
        let q = Field::rationals();
        let m2 = Arc::new(matrix_algebra(2, &q).unwrap());
        let ctx = extend_algebra(&m2, &q_to_qi()).unwrap();
        assert_eq!(*ctx.extended, matrix_algebra(2, &qi()).unwrap());
        let id = extend_algebra(&m2, &FieldEmbedding::identity(&q)).unwrap();
        assert_eq!(id.extended, m2);

        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let c2 = Arc::new(group_algebra(&cyclic_group_table(2), &f2).unwrap());
        let ctx = extend_algebra(&c2, &embed_find(&f2, &f4).unwrap()).unwrap();
        assert_eq!(*ctx.extended, group_algebra(&cyclic_group_table(2), &f4).unwrap());
    }

    #[test]
    fn module_extension() {
        let col = column_module(2, &Field::rationals()).unwrap();
        let ctx = extend_algebra(col.algebra(), &q_to_qi()).unwrap();
        let ext = extend_module(&col, &ctx).unwrap();
        assert_eq!(ext, column_module(2, &qi()).unwrap());
        let zero = ModuleDesc::zero(col.algebra().clone());
        assert_eq!(extend_module(&zero, &ctx).unwrap().dim(), 0);
    }

    #[test]
    fn theta_dimensions() {
        let q = Field::rationals();
        let col = column_module(3, &q).unwrap();
        let ctx = extend_algebra(col.algebra(), &q_to_qi()).unwrap();
        assert_eq!(theta_dim_check(&col, &col, &ctx).unwrap(), ThetaDims { base: 1, extended: 1, equal: true });

        let h = Arc::new(quaternion_algebra(&q.from_int(-1), &q.from_int(-1), &q).unwrap());
        let reg = regular_module(&h);
        let ctx = extend_algebra(&h, &q_to_qi()).unwrap();
        assert_eq!(theta_dim_check(&reg, &reg, &ctx).unwrap(), ThetaDims { base: 4, extended: 4, equal: true });
        assert!(end_algebra_extension_check(&reg, &ctx).unwrap());

        let zero = ModuleDesc::zero(h.clone());
        assert_eq!(theta_dim_check(&zero, &zero, &ctx).unwrap(), ThetaDims { base: 0, extended: 0, equal: true });
    }

    #[test]
    fn theta_on_intertwiners() {
        let q = Field::rationals();
        let c2 = Arc::new(group_algebra(&cyclic_group_table(2), &q).unwrap());
        let reg = regular_module(&c2);
        let ctx = extend_algebra(&c2, &q_to_qi()).unwrap();
        let swap = Matrix::from_ints(&q, &[&[0, 1], &[1, 0]]);
        let img = theta_apply(&swap, &reg, &reg, &ctx).unwrap();
        assert_eq!(img, Matrix::from_ints(&qi(), &[&[0, 1], &[1, 0]]));
        let id = theta_apply(&Matrix::identity(&q, 2), &reg, &reg, &ctx).unwrap();
        assert!(id.is_identity());
        assert!(theta_apply(&Matrix::zeros(&q, 2, 2), &reg, &reg, &ctx).unwrap().is_zero());
        assert!(theta_images_independent(&hom_space(&reg, &reg).unwrap(), &ctx));
    }

    #[test]
    fn end_extension_small_cases() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let col = column_module(2, &f2).unwrap();
        let ctx = extend_algebra(col.algebra(), &embed_find(&f2, &f4).unwrap()).unwrap();
        assert!(end_algebra_extension_check(&col, &ctx).unwrap());
        let one = column_module(1, &f2).unwrap();
        let ctx = extend_algebra(one.algebra(), &embed_find(&f2, &f4).unwrap()).unwrap();
        assert!(end_algebra_extension_check(&one, &ctx).unwrap());
    }

    #[test]
    fn pull_back_inverts_extension() {
        let q = Field::rationals();
        let h = Arc::new(quaternion_algebra(&q.from_int(-1), &q.from_int(-1), &q).unwrap());
        let ctx = extend_algebra(&h, &q_to_qi()).unwrap();
        assert_eq!(pull_back_algebra(&ctx.extended, &q_to_qi()).unwrap(), *h);
        let qi = qi();
        let twisted = quaternion_algebra(&qi.generator(), &qi.from_int(-1), &qi).unwrap();
        assert_eq!(pull_back_algebra(&twisted, &q_to_qi()).unwrap_err(), Error::NotOverE);
    }

    #[test]
    fn writing_in_subfields() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let col2 = column_module(2, &f2).unwrap();
        let ctx = extend_algebra(col2.algebra(), &embed_find(&f2, &f4).unwrap()).unwrap();
        let v = extend_module(&col2, &ctx).unwrap();
        let standard: Vec<Vector> = (0..2).map(|i| (0..2).map(|j| if i == j { f4.one() } else { f4.zero() }).collect()).collect();
        let emb_e = embed_find(&f2, &f4).unwrap();
        let w = write_in(&v, &ctx, &emb_e, &standard).unwrap();
        assert_eq!(w.module, col2);

        // a 1-dim module of F_2C_5 over F_16 where g acts by an element of degree 4
        let c5 = Arc::new(group_algebra(&cyclic_group_table(5), &f2).unwrap());
        let ctx16 = extend_algebra(&c5, &embed_find(&f2, &f16).unwrap()).unwrap();
        let z = f16.generator().pow(3);
        assert!(z.pow(5).is_one());
        let acts: Vec<Matrix> = (0..5).map(|k| Matrix::from_fn(&f16, 1, 1, |_, _| z.pow(k))).collect();
        let v = ModuleDesc::new_validated(ctx16.extended.clone(), 1, acts).unwrap();
        let emb_4 = embed_find(&f4, &f16).unwrap();
        let one = vec![vec![f16.one()]];
        assert_eq!(write_in(&v, &ctx16, &emb_4, &one).unwrap_err(), Error::NotOverE);
        let d = descend_module(&v, &ctx16).unwrap();
        assert_eq!(d.field, f16);

        let zero = ModuleDesc::zero(ctx.extended.clone());
        assert_eq!(write_in(&zero, &ctx, &emb_e, &[]).unwrap().module.dim(), 0);
    }

    #[test]
    fn descent_examples() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let col = column_module(2, &f2).unwrap();
        let ctx = extend_algebra(col.algebra(), &embed_find(&f2, &f16).unwrap()).unwrap();
        let v = extend_module(&col, &ctx).unwrap();
        let d = descend_module(&v, &ctx).unwrap();
        assert_eq!(d.field, f2);
        assert!(matches!(is_isomorphic(&d.module, &col, 0).unwrap(), Isomorphism::Isomorphic(_)));

        // F_4C_3: g acts by a primitive cube root of unity
        let c3 = Arc::new(group_algebra(&cyclic_group_table(3), &f2).unwrap());
        let ctx4 = extend_algebra(&c3, &embed_find(&f2, &f4).unwrap()).unwrap();
        let t = f4.generator();
        let acts: Vec<Matrix> = (0..3).map(|k| Matrix::from_fn(&f4, 1, 1, |_, _| t.pow(k))).collect();
        let v = ModuleDesc::new_validated(ctx4.extended.clone(), 1, acts).unwrap();
        let d = descend_module(&v, &ctx4).unwrap();
        assert_eq!(d.field, f4);
    }
}
