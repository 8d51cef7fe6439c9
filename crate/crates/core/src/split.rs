//! Absolute simplicity, split algebras, splitting fields and the
//! comparison of a split algebra's radical with that of its extension.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraDesc;
use crate::basechange::{descend_module, extend_algebra, extend_module, ExtensionContext};
use crate::error::{Error, Result};
use crate::field::factor::{norm_poly, roots};
use crate::field::{embed_find, factor, is_irreducible, Field, FieldEmbedding, Poly};
use crate::linalg::{canonical_basis, EchelonBuilder, Matrix, Vector};
use crate::module::{hom_space, regular_module, ModuleDesc};
use crate::structure::{composition_dims, radical, radical_of_module, simple_modules};

/// Outcome of the absolute-simplicity test for one simple module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbsoluteSimplicity {
    pub flag: bool,
    /// `dim End_A(S)`.
    pub dim_end: usize,
    /// Rank of the image of `A` in `End_k(S)`.
    pub image_rank: usize,
}

/// Decides absolute simplicity of a simple module by its endomorphism
/// dimension and, independently, by the rank of `A → End_k(S)`; the two
/// criteria must agree.
pub fn is_absolutely_simple(s: &ModuleDesc, seed: u64) -> Result<AbsoluteSimplicity> {
    let length = composition_dims(s, seed)?.len();
    if length != 1 {
        return Err(Error::NotSimple(length));
    }
    let dim_end = hom_space(s, s)?.dim();
    let d = s.dim();
    let mut ech = EchelonBuilder::new(s.field(), d * d);
    for a in s.actions() {
        ech.insert(&a.to_vec());
    }
    let image_rank = ech.dim();
    let flag = dim_end == 1;
    if flag != (image_rank == d * d) {
        return Err(Error::InvariantBreach(format!(
            "endomorphism dimension {dim_end} disagrees with image rank {image_rank} for a simple module of dimension {d}"
        )));
    }
    Ok(AbsoluteSimplicity { flag, dim_end, image_rank })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleReport {
    pub id: String,
    pub dim: usize,
    /// Multiplicity `n_S` in `A / Rad A`.
    pub multiplicity: usize,
    pub dim_end: usize,
    pub image_rank: usize,
    pub absolutely_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitReport {
    pub algebra: String,
    pub field: String,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub verdict: bool,
    pub per_simple: Vec<SimpleReport>,
}

impl SplitReport {
    /// `Σ (dim S)²` over the simple modules.
    pub fn sum_of_squares(&self) -> usize {
        self.per_simple.iter().map(|s| s.dim * s.dim).sum()
    }
}

fn algebra_id(a: &AlgebraDesc) -> String {
    format!("algebra of dimension {} over {}", a.dim(), a.field().name())
}

/// Runs the simple-module decomposition and the absolute-simplicity test
/// on every simple, in canonical order.
pub fn is_split(a: &Arc<AlgebraDesc>, seed: u64) -> Result<SplitReport> {
    Ok(split_with_simples(a, seed)?.0)
}

fn split_with_simples(a: &Arc<AlgebraDesc>, seed: u64) -> Result<(SplitReport, Vec<ModuleDesc>)> {
    let list = simple_modules(a, seed)?;
    let mut per_simple = Vec::with_capacity(list.entries.len());
    let mut modules = Vec::with_capacity(list.entries.len());
    for (i, (s, mult)) in list.entries.iter().enumerate() {
        let r = is_absolutely_simple(s, seed)?;
        per_simple.push(SimpleReport {
            id: format!("S{i}"),
            dim: s.dim(),
            multiplicity: *mult,
            dim_end: r.dim_end,
            image_rank: r.image_rank,
            absolutely_simple: r.flag,
        });
        modules.push(s.clone());
    }
    let report = SplitReport {
        algebra: algebra_id(a),
        field: a.field().name(),
        algebra_dim: a.dim(),
        radical_dim: list.radical_dim(),
        verdict: per_simple.iter().all(|s| s.absolutely_simple),
        per_simple,
    };
    Ok((report, modules))
}

/// Whether `A^F` is split.
pub fn is_splitting_field(a: &Arc<AlgebraDesc>, emb: &FieldEmbedding, seed: u64) -> Result<SplitReport> {
    let ctx = extend_algebra(a, emb)?;
    is_split(&ctx.extended, seed)
}

#[derive(Clone, Debug)]
pub struct SplittingFieldResult {
    /// Successive steps `k → E₁ → … → E`.
    pub tower: Vec<FieldEmbedding>,
    /// The composite `k → E`.
    pub embedding: FieldEmbedding,
    pub field: Field,
    pub degree: usize,
    pub iterations: usize,
    pub certificate: SplitReport,
}

/// Default degree cap: `(dim A)²`.
pub fn default_max_degree(a: &AlgebraDesc) -> usize {
    (a.dim() * a.dim()).max(1)
}

fn is_scalar_matrix(m: &Matrix) -> bool {
    let n = m.rows();
    let c = if n == 0 { return true } else { m.get(0, 0) };
    (0..n).all(|i| (0..n).all(|j| if i == j { m.get(i, j) == c } else { m.get(i, j).is_zero() }))
}

/// Field `L ⊇ E` containing a root of the irreducible `h ∈ E[x]`, with the
/// embedding `E → L` under which `h` acquires that root.
fn adjoin_root(e: &Field, h: &Poly) -> Result<FieldEmbedding> {
    let d = h.deg();
    if e.is_finite() {
        let l = Field::finite(e.characteristic(), e.degree() * d)?;
        return embed_find(e, &l);
    }
    if e.degree() == 1 {
        let l = Field::number_field(h.coeffs().iter().map(|c| c.to_rational().expect("rational")).collect())?;
        return embed_find(e, &l);
    }
    let a = e.generator();
    let mut shifts = vec![0i64];
    for s in 1..=20 {
        shifts.push(s);
        shifts.push(-s);
    }
    let modulus = e.modulus();
    for s in shifts {
        let sa = &a * &e.from_int(s);
        // roots of h(x - s·a) are y + s·a for the roots y of h
        let shifted = h.shift(&-&sa);
        let norm = norm_poly(&shifted).monic();
        if norm.gcd(&norm.derivative()).deg() > 0 || !is_irreducible(&norm) {
            continue;
        }
        let l = Field::number_field(norm.coeffs().iter().map(|c| c.to_rational().expect("rational")).collect())?;
        let gamma = l.generator();
        let mut candidates = roots(&modulus.lift_to(&l));
        candidates.sort_by(|x, y| x.cmp_lex(y));
        for r in candidates {
            let sigma = FieldEmbedding::new(e, &l, r.clone())?;
            let y = &gamma - &(&r * &l.from_int(s));
            if sigma.apply_poly(h).eval(&y).is_zero() {
                return Ok(sigma);
            }
        }
    }
    Err(Error::Inconclusive(format!("no primitive element found for adjoining a root of {h}")))
}

/// Greedy search for a finite-degree splitting field: while `A^E` is not
/// split, adjoin a root of the first nonlinear irreducible factor of the
/// minimal polynomial of the first non-scalar endomorphism of the first
/// non-absolutely-simple module.
pub fn find_splitting_field(a: &Arc<AlgebraDesc>, max_degree: Option<usize>, seed: u64) -> Result<SplittingFieldResult> {
    let cap = max_degree.unwrap_or_else(|| default_max_degree(a));
    if cap == 0 {
        return Err(Error::BadParams("max_degree must be at least 1".into()));
    }
    let k = a.field().clone();
    let mut total = FieldEmbedding::identity(&k);
    let mut tower: Vec<FieldEmbedding> = Vec::new();
    let mut degree = 1usize;
    loop {
        let ctx = extend_algebra(a, &total)?;
        let (report, simples) = split_with_simples(&ctx.extended, seed)?;
        if report.verdict {
            return Ok(SplittingFieldResult {
                iterations: tower.len(),
                tower,
                field: total.target().clone(),
                embedding: total,
                degree,
                certificate: report,
            });
        }
        let idx = report.per_simple.iter().position(|s| !s.absolutely_simple).expect("failing simple");
        let s = &simples[idx];
        let end = hom_space(s, s)?;
        let f = end
            .mats
            .iter()
            .find(|m| !is_scalar_matrix(m))
            .ok_or_else(|| Error::InvariantBreach("endomorphism algebra of dimension > 1 has only scalars".into()))?;
        let mp = f.min_poly()?;
        let h = factor(&mp)
            .into_iter()
            .map(|(g, _)| g)
            .find(|g| g.deg() > 1)
            .ok_or_else(|| Error::InvariantBreach(format!("minimal polynomial {mp} of an endomorphism splits")))?;
        let next = degree * h.deg();
        if next > cap {
            let mut names = vec![k.name()];
            names.extend(tower.iter().map(|e| e.target().name()));
            return Err(Error::DegreeCapExceeded { cap, reached: next, tower: names });
        }
        let step = adjoin_root(total.target(), &h)?;
        total = total.then(&step)?;
        tower.push(step);
        degree = next;
        if total.target().degree() != k.degree() * degree {
            return Err(Error::InvariantBreach("tower degree does not match the field degree".into()));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainReport {
    /// `F` splits `A` and every simple `A^F`-module can be written in `E`.
    pub side_written_in: Verdict,
    /// `E` splits `A`.
    pub side_splitting: bool,
    pub f_splits: bool,
    /// `None` when the written-in side is undecided.
    pub consistent: Option<bool>,
}

/// Evaluates both sides of the equivalence "E splits A" ⇔ "F splits A and
/// every simple A^F-module can be written in E" for a tower `k → E → F`.
pub fn verify_chain_theorem(
    a: &Arc<AlgebraDesc>,
    emb_ke: &FieldEmbedding,
    emb_ef: &FieldEmbedding,
    seed: u64,
) -> Result<ChainReport> {
    if emb_ke.target() != emb_ef.source() {
        return Err(Error::FieldMismatch(emb_ke.target().name(), emb_ef.source().name()));
    }
    let side_splitting = is_splitting_field(a, emb_ke, seed)?.verdict;
    let emb_kf = emb_ke.then(emb_ef)?;
    let ctx_f = extend_algebra(a, &emb_kf)?;
    let (report_f, simples) = split_with_simples(&ctx_f.extended, seed)?;
    let side_written_in = if !report_f.verdict {
        Verdict::False
    } else {
        simples_written_in(&simples, &ctx_f, emb_ef)?
    };
    let consistent = match side_written_in {
        Verdict::Unknown => None,
        v => Some((v == Verdict::True) == side_splitting),
    };
    Ok(ChainReport { side_written_in, side_splitting, f_splits: report_f.verdict, consistent })
}

/// True when each simple descends (standard basis) into the image of `E`;
/// False when some action has a minimal polynomial with a coefficient
/// outside `E`, which rules out every basis; Unknown otherwise.
fn simples_written_in(simples: &[ModuleDesc], ctx_f: &ExtensionContext, emb_ef: &FieldEmbedding) -> Result<Verdict> {
    let mut verdict = Verdict::True;
    for v in simples {
        let d = descend_module(v, ctx_f)?;
        if emb_ef.preimage(d.emb.generator_image()).is_some() {
            continue;
        }
        for act in v.actions() {
            let mp = act.min_poly()?;
            if mp.coeffs().iter().any(|c| emb_ef.preimage(c).is_none()) {
                return Ok(Verdict::False);
            }
        }
        verdict = Verdict::Unknown;
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalExtensionReport {
    pub radical_dim: usize,
    pub extended_radical_dim: usize,
    /// `(Rad A)^F = Rad A^F`.
    pub algebra_equal: bool,
    /// `(Rad U)^F = Rad U^F` for the regular module `U`.
    pub module_equal: bool,
}

impl RadicalExtensionReport {
    pub fn holds(&self) -> bool {
        self.algebra_equal && self.module_equal
    }
}

fn same_subspace(field: &Field, len: usize, x: &[Vector], y: &[Vector]) -> bool {
    canonical_basis(field, len, x) == canonical_basis(field, len, y)
}

/// Compares `(Rad A)^F` with `Rad A^F` and `(Rad U)^F` with `Rad U^F` for the
/// regular module, for a split algebra `A`.
pub fn verify_split_radical(a: &Arc<AlgebraDesc>, emb: &FieldEmbedding, seed: u64) -> Result<RadicalExtensionReport> {
    if !is_split(a, seed)?.verdict {
        return Err(Error::PreconditionFailed("algebra is not split".into()));
    }
    let ctx = extend_algebra(a, emb)?;
    let f = ctx.target().clone();
    let n = a.dim();
    let lift = |vs: &[Vector]| -> Vec<Vector> { vs.iter().map(|v| v.iter().map(|c| emb.apply(c)).collect()).collect() };

    let rad = radical(a, seed)?;
    let rad_ext = radical(&ctx.extended, seed)?;
    let algebra_equal = same_subspace(&f, n, &lift(&rad), &rad_ext);

    let u = regular_module(a);
    let rad_u = radical_of_module(&u, seed)?;
    let uf = extend_module(&u, &ctx)?;
    let rad_uf = radical_of_module(&uf, seed)?;
    let module_equal = same_subspace(&f, n, &lift(&rad_u), &rad_uf);

    Ok(RadicalExtensionReport {
        radical_dim: rad.len(),
        extended_radical_dim: rad_ext.len(),
        algebra_equal,
        module_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        cyclic_group_table, direct_product, field_as_algebra, field_over_prime, group_algebra, matrix_algebra,
        quaternion_algebra, upper_triangular,
    };
    use crate::module::column_module;

    fn q() -> Field {
        Field::rationals()
    }

    fn qi() -> Field {
        Field::number_field_int(&[1, 0, 1]).unwrap()
    }

    fn quaternions() -> Arc<AlgebraDesc> {
        Arc::new(quaternion_algebra(&q().from_int(-1), &q().from_int(-1), &q()).unwrap())
    }

    #[test]
    fn absolute_simplicity_examples() {
        for n in 1..=3 {
            let col = column_module(n, &q()).unwrap();
            let r = is_absolutely_simple(&col, 0).unwrap();
            assert_eq!(r, AbsoluteSimplicity { flag: true, dim_end: 1, image_rank: n * n });
        }
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let a = Arc::new(field_over_prime(&f4));
        let reg = regular_module(&a);
        assert_eq!(is_absolutely_simple(&reg, 0).unwrap(), AbsoluteSimplicity { flag: false, dim_end: 2, image_rank: 2 });
        let c2 = Arc::new(group_algebra(&cyclic_group_table(2), &f2).unwrap());
        assert_eq!(is_absolutely_simple(&regular_module(&c2), 0).unwrap_err(), Error::NotSimple(2));
    }

    #[test]
    fn split_examples() {
        assert!(is_split(&Arc::new(matrix_algebra(2, &q()).unwrap()), 0).unwrap().verdict);
        let h = is_split(&quaternions(), 0).unwrap();
        assert!(!h.verdict);
        assert_eq!(h.per_simple.len(), 1);
        assert_eq!(h.per_simple[0].dim_end, 4);
        let c3 = is_split(&Arc::new(group_algebra(&cyclic_group_table(3), &q()).unwrap()), 0).unwrap();
        assert!(!c3.verdict);
        assert_eq!(c3.per_simple.iter().map(|s| (s.dim, s.dim_end)).collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn splitting_field_examples() {
        let zeta = Field::number_field_int(&[1, 1, 1]).unwrap();
        let c3 = Arc::new(group_algebra(&cyclic_group_table(3), &q()).unwrap());
        let r = is_splitting_field(&c3, &embed_find(&q(), &zeta).unwrap(), 0).unwrap();
        assert!(r.verdict);
        assert_eq!(r.per_simple.len(), 3);

        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let a = Arc::new(field_over_prime(&f4));
        let r = is_splitting_field(&a, &embed_find(&f2, &f4).unwrap(), 0).unwrap();
        assert!(r.verdict);
        assert_eq!(r.per_simple.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 1]);

        let h = quaternions();
        assert_eq!(is_splitting_field(&h, &FieldEmbedding::identity(&q()), 0).unwrap(), is_split(&h, 0).unwrap());
    }

    #[test]
    fn find_splitting_field_examples() {
        let m3 = Arc::new(matrix_algebra(3, &q()).unwrap());
        let r = find_splitting_field(&m3, None, 0).unwrap();
        assert_eq!((r.degree, r.iterations), (1, 0));
        assert_eq!(r.field, q());

        let f4 = Field::finite(2, 2).unwrap();
        let r = find_splitting_field(&Arc::new(field_over_prime(&f4)), None, 0).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.field, f4);

        let r = find_splitting_field(&quaternions(), None, 0).unwrap();
        assert_eq!(r.degree, 2);
        assert!(r.certificate.verdict);
        let s = &r.certificate.per_simple;
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].dim, s[0].dim_end, s[0].multiplicity), (2, 1, 2));
        // the adjoined field contains a square root of -1
        let x2p1 = Poly::from_ints(&r.field, &[1, 0, 1]);
        assert!(!roots(&x2p1).is_empty());
        let again = find_splitting_field(&quaternions(), None, 0).unwrap();
        assert_eq!(again.tower, r.tower);
    }

    #[test]
    fn degree_cap() {
        let err = find_splitting_field(&quaternions(), Some(1), 0).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { cap: 1, reached: 2, .. }));
    }

    #[test]
    fn adjoining_over_a_number_field() {
        // over Q(i), adjoin a root of x^2 - 2: result has degree 4 and holds both i and √2
        let k = qi();
        let h = Poly::from_ints(&k, &[-2, 0, 1]);
        let sigma = adjoin_root(&k, &h).unwrap();
        let l = sigma.target().clone();
        assert_eq!(l.degree(), 4);
        assert!(!roots(&sigma.apply_poly(&h)).is_empty());
    }

    #[test]
    fn chain_examples() {
        let zeta = Field::number_field_int(&[1, 1, 1]).unwrap();
        let c3 = Arc::new(group_algebra(&cyclic_group_table(3), &q()).unwrap());
        let r = verify_chain_theorem(&c3, &embed_find(&q(), &zeta).unwrap(), &FieldEmbedding::identity(&zeta), 0).unwrap();
        assert_eq!((r.side_written_in, r.side_splitting, r.consistent), (Verdict::True, true, Some(true)));

        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let a = Arc::new(field_over_prime(&f4));
        let r = verify_chain_theorem(&a, &FieldEmbedding::identity(&f2), &embed_find(&f2, &f4).unwrap(), 0).unwrap();
        assert_eq!((r.side_written_in, r.side_splitting, r.consistent), (Verdict::False, false, Some(true)));

        let m2 = Arc::new(matrix_algebra(2, &f2).unwrap());
        let r = verify_chain_theorem(&m2, &FieldEmbedding::identity(&f2), &embed_find(&f2, &f16).unwrap(), 0).unwrap();
        assert_eq!((r.side_written_in, r.side_splitting, r.consistent), (Verdict::True, true, Some(true)));
    }

    #[test]
    fn radical_extension_examples() {
        let t = Arc::new(upper_triangular(2, &q()).unwrap());
        let r = verify_split_radical(&t, &embed_find(&q(), &qi()).unwrap(), 0).unwrap();
        assert!(r.holds());
        assert_eq!((r.radical_dim, r.extended_radical_dim), (1, 1));

        let qq = Arc::new(direct_product(&field_as_algebra(&q()), &field_as_algebra(&q())).unwrap());
        let r = verify_split_radical(&qq, &embed_find(&q(), &qi()).unwrap(), 0).unwrap();
        assert!(r.holds());
        assert_eq!((r.radical_dim, r.extended_radical_dim), (0, 0));

        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let c2 = Arc::new(group_algebra(&cyclic_group_table(2), &f2).unwrap());
        let r = verify_split_radical(&c2, &embed_find(&f2, &f4).unwrap(), 0).unwrap();
        assert!(r.holds());
        assert_eq!((r.radical_dim, r.extended_radical_dim), (1, 1));

        assert!(matches!(
            verify_split_radical(&quaternions(), &embed_find(&q(), &qi()).unwrap(), 0),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
