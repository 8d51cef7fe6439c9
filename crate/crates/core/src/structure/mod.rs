//! Structure theory: the radical, composition factors (a MeatAxe-style
//! splitter with rigorous irreducibility certificates) and the list of
//! simple modules of an algebra.

pub mod oracle;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraDesc;
use crate::error::{Error, Result};
use crate::field::{factor, Field, FieldElement};
use crate::linalg::{canonical_basis, is_zero_vector, EchelonBuilder, Matrix, Vector};
use crate::module::{
    end_algebra_from_basis, exhaustive_feasible, hom_space, regular_module, section, spin, HomBasis,
    ModuleDesc, ISO_SEARCH_CAP,
};

/// Random algebra elements tried by the splitter before falling back to the
/// certificate searches.
pub const MEATAXE_ATTEMPTS: usize = 100;

/// Closure of `seeds` under the given matrices.
fn spin_under(field: &Field, dim: usize, actions: &[Matrix], seeds: &[Vector]) -> Vec<Vector> {
    let mut ech = EchelonBuilder::new(field, dim);
    let mut queue = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.dim() == dim {
            break;
        }
        for a in actions {
            let w = a.mat_vec(&v);
            if ech.insert(&w) {
                queue.push(w);
            }
        }
    }
    ech.rows().to_vec()
}

/// Vectors annihilated by every row of `dual`.
fn annihilator(field: &Field, dim: usize, dual: &[Vector]) -> Vec<Vector> {
    Matrix::from_rows(field, dim, dual).kernel_basis()
}

fn is_scalar(m: &Matrix) -> bool {
    let d = m.rows();
    (0..d).all(|i| (0..d).all(|j| if i == j { m.get(i, j) == m.get(0, 0) } else { m.get(i, j).is_zero() }))
}

/// Radical of an algebra in characteristic 0: the kernel of the trace form
/// `(x, y) ↦ Tr(L_x L_y)`.
fn radical_trace_form(a: &AlgebraDesc) -> Vec<Vector> {
    let field = a.field();
    let n = a.dim();
    let lm: Vec<Matrix> = (0..n).map(|i| a.left_mult_matrix(&a.basis_vector(i))).collect();
    let trace_of_product = |x: &Matrix, y: &Matrix| {
        let mut t = field.zero();
        for i in 0..n {
            for k in 0..n {
                let (p, q) = (x.get(i, k), y.get(k, i));
                if !p.is_zero() && !q.is_zero() {
                    t = &t + &(p * q);
                }
            }
        }
        t
    };
    let gram = Matrix::from_fn(field, n, n, |i, j| trace_of_product(&lm[i], &lm[j]));
    canonical_basis(field, n, &gram.kernel_basis())
}

/// Joint kernel of the algebra acting on the given modules.
fn joint_kernel(a: &AlgebraDesc, modules: &[&ModuleDesc]) -> Vec<Vector> {
    let field = a.field();
    let n = a.dim();
    let mut ech = EchelonBuilder::new(field, n);
    for m in modules {
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                let row: Vector = (0..n).map(|i| m.action(i).get(r, c).clone()).collect();
                ech.insert(&row);
            }
        }
    }
    let eqs = Matrix::from_rows(field, n, ech.rows());
    canonical_basis(field, n, &eqs.kernel_basis())
}

/// Checks that `basis` spans a nilpotent two-sided ideal.
fn check_radical(a: &AlgebraDesc, basis: &[Vector]) -> Result<()> {
    if !a.is_two_sided_ideal(basis) {
        return Err(Error::InvariantBreach("computed radical is not a two-sided ideal".into()));
    }
    let mut power = basis.to_vec();
    for _ in 0..=a.dim() {
        if power.is_empty() {
            return Ok(());
        }
        let products: Vec<Vector> = power.iter().flat_map(|x| basis.iter().map(move |y| a.mul(x, y))).collect();
        power = canonical_basis(a.field(), a.dim(), &products);
    }
    Err(Error::InvariantBreach("computed radical is not nilpotent".into()))
}

/// Canonical basis of the Jacobson radical.
///
/// Characteristic 0 uses the trace form; characteristic p takes the joint
/// kernel of the action on the composition factors of the regular module.
/// Both results are checked to be nilpotent two-sided ideals.
pub fn radical(a: &AlgebraDesc, seed: u64) -> Result<Vec<Vector>> {
    let rad = if a.field().characteristic() == 0 {
        radical_trace_form(a)
    } else {
        let reg = regular_module(&Arc::new(a.clone()));
        let factors = composition_factors(&reg, seed)?;
        let mods: Vec<&ModuleDesc> = factors.iter().map(|(s, _)| s).collect();
        joint_kernel(a, &mods)
    };
    check_radical(a, &rad)?;
    Ok(rad)
}

/// `Rad(A)·U`, as a canonical basis of a submodule of `U`.
pub fn radical_of_module(m: &ModuleDesc, seed: u64) -> Result<Vec<Vector>> {
    let rad = radical(m.algebra(), seed)?;
    Ok(radical_times(m, &rad))
}

pub(crate) fn radical_times(m: &ModuleDesc, rad: &[Vector]) -> Vec<Vector> {
    let field = m.field();
    let mut gens = Vec::new();
    for r in rad {
        let x = m.action_of(r);
        for j in 0..m.dim() {
            let v = x.col(j);
            if !is_zero_vector(&v) {
                gens.push(v);
            }
        }
    }
    canonical_basis(field, m.dim(), &gens)
}

/// Outcome of one splitting step.
enum Split {
    Proper(Vec<Vector>),
    Simple,
}

struct Candidate {
    g: Matrix,
    nullity: usize,
}

fn random_theta(field: &Field, n: usize, rng: &mut ChaCha8Rng, prime_only: bool) -> Vector {
    let prime = field.prime_field();
    (0..n)
        .map(|_| {
            if prime_only {
                field.from_prime(&prime.random(rng, 3))
            } else {
                field.random(rng, 3)
            }
        })
        .collect()
}

/// Tries kernel vectors of `g(X)` and of its transpose; a proper spin gives
/// a submodule directly, a proper dual spin gives one as its annihilator.
fn try_kernel(m: &ModuleDesc, transposed: &[Matrix], g: &Matrix, limit: usize) -> Option<Vec<Vector>> {
    let field = m.field();
    let d = m.dim();
    for v in g.kernel_basis().into_iter().take(limit) {
        let w = spin(m, &[v]);
        if w.len() < d {
            return Some(w);
        }
    }
    for v in g.transpose().kernel_basis().into_iter().take(limit) {
        let w = spin_under(field, d, transposed, &[v]);
        if w.len() < d {
            return Some(annihilator(field, d, &w));
        }
    }
    None
}

/// Enumerates every vector of `ker g` and of `ker gᵀ` (complete for finite
/// fields of feasible size).
fn exhaustive_kernel_search(m: &ModuleDesc, transposed: &[Matrix], g: &Matrix) -> Option<Split> {
    let field = m.field();
    let d = m.dim();
    let q = field.order()?;
    let k = g.kernel_basis();
    let kt = g.transpose().kernel_basis();
    if !exhaustive_feasible(field, k.len()) || !exhaustive_feasible(field, kt.len()) {
        return None;
    }
    let combos = |basis: &[Vector]| -> Vec<Vector> {
        let total = q.pow(basis.len() as u32);
        (1..total)
            .map(|code| {
                let mut c = code;
                let mut v = vec![field.zero(); d];
                for b in basis {
                    let coef = field.element_at(c % q);
                    c /= q;
                    if coef.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = &*vi + &(&coef * bi);
                    }
                }
                v
            })
            .collect()
    };
    for v in combos(&k) {
        let w = spin(m, &[v]);
        if w.len() < d {
            return Some(Split::Proper(w));
        }
    }
    for v in combos(&kt) {
        let w = spin_under(field, d, transposed, &[v]);
        if w.len() < d {
            return Some(Split::Proper(annihilator(field, d, &w)));
        }
    }
    Some(Split::Simple)
}

enum FieldCheck {
    Field,
    /// Coordinates of a nonzero zero divisor.
    ZeroDivisor(Vector),
    Undecided,
}

/// Whether the commutative algebra `e` is a field: some element has an
/// irreducible minimal polynomial of full degree, while a reducible minimal
/// polynomial exhibits a zero divisor.
fn commutative_is_field(e: &AlgebraDesc, rng: &mut ChaCha8Rng) -> Result<FieldCheck> {
    let n = e.dim();
    let field = e.field();
    for attempt in 0..20 {
        let x = if attempt < n { e.basis_vector(attempt) } else { random_theta(field, n, rng, false) };
        let lx = e.left_mult_matrix(&x);
        let mp = lx.min_poly()?;
        let parts = factor(&mp);
        if parts.len() > 1 || parts.iter().any(|(_, k)| *k > 1) {
            let z = lx.eval_poly(&parts[0].0).mat_vec(e.unit());
            return Ok(FieldCheck::ZeroDivisor(z));
        }
        if mp.deg() == n {
            return Ok(FieldCheck::Field);
        }
    }
    Ok(FieldCheck::Undecided)
}

/// A nonzero singular element of the span of `h`, if a search finds one:
/// basis elements, then factors of minimal polynomials of random elements,
/// then random combinations.
fn singular_endomorphism(field: &Field, h: &HomBasis, rng: &mut ChaCha8Rng) -> Result<Option<Matrix>> {
    if let Some(f) = h.mats.iter().find(|f| !f.is_zero() && !f.is_invertible()) {
        return Ok(Some(f.clone()));
    }
    for _ in 0..ISO_SEARCH_CAP {
        let coeffs: Vec<FieldElement> = (0..h.dim()).map(|_| field.random(rng, 3)).collect();
        let f = h.combine(field, &coeffs);
        if f.is_zero() {
            continue;
        }
        if !f.is_invertible() {
            return Ok(Some(f));
        }
        let mp = f.min_poly()?;
        let parts = factor(&mp);
        if parts.len() > 1 || parts[0].1 > 1 {
            let z = f.eval_poly(&parts[0].0);
            debug_assert!(!z.is_zero() && !z.is_invertible());
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Decides simplicity of a semisimple module from its endomorphism algebra.
fn split_by_endomorphisms(m: &ModuleDesc, rng: &mut ChaCha8Rng) -> Result<Split> {
    let field = m.field();
    let h = hom_space(m, m)?;
    if h.dim() == 1 {
        return Ok(Split::Simple);
    }
    if let Some(f) = singular_endomorphism(field, &h, rng)? {
        let k = f.kernel_basis();
        return Ok(Split::Proper(canonical_basis(field, m.dim(), &k)));
    }
    let e = end_algebra_from_basis(field, &h)?;
    if e.is_commutative() {
        return match commutative_is_field(&e, rng)? {
            FieldCheck::Field => Ok(Split::Simple),
            FieldCheck::ZeroDivisor(z) => {
                let k = h.combine(field, &z).kernel_basis();
                Ok(Split::Proper(canonical_basis(field, m.dim(), &k)))
            }
            FieldCheck::Undecided => Err(Error::Inconclusive(format!(
                "could not certify the {}-dimensional endomorphism algebra as a field",
                e.dim()
            ))),
        };
    }
    // every tried nonzero endomorphism was invertible with irreducible
    // minimal polynomial: accepted as a division algebra
    Ok(Split::Simple)
}

/// One splitting step on a module of dimension at least 2.
fn split_module(m: &ModuleDesc, seed: u64) -> Result<Split> {
    let d = m.dim();
    if d <= 1 {
        return Ok(Split::Simple);
    }
    let field = m.field().clone();
    let n = m.algebra().dim();
    let transposed: Vec<Matrix> = m.actions().iter().map(|a| a.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Candidate> = None;
    let mut tried = 0;
    let mut attempt = 0;
    while tried < MEATAXE_ATTEMPTS {
        let theta = if attempt < n {
            m.algebra().basis_vector(attempt)
        } else {
            tried += 1;
            random_theta(&field, n, &mut rng, tried <= MEATAXE_ATTEMPTS / 2)
        };
        attempt += 1;
        let x = m.action_of(&theta);
        if is_scalar(&x) {
            continue;
        }
        let mp = x.min_poly()?;
        for (g, _) in factor(&mp) {
            let gx = x.eval_poly(&g);
            let nullity = d - gx.rank();
            if let Some(w) = try_kernel(m, &transposed, &gx, 2) {
                return Ok(Split::Proper(w));
            }
            if nullity == g.deg() {
                return Ok(Split::Simple);
            }
            if best.as_ref().is_none_or(|b| nullity < b.nullity) {
                best = Some(Candidate { g: gx, nullity });
            }
        }
    }
    if field.is_finite() {
        if let Some(c) = &best {
            if let Some(s) = exhaustive_kernel_search(m, &transposed, &c.g) {
                return Ok(s);
            }
        }
        // every element acts as a scalar: the module is a sum of copies of
        // the 1-dimensional module
        if best.is_none() {
            return Ok(Split::Proper(vec![unit_vector(&field, d, 0)]));
        }
        return Err(Error::Inconclusive(format!(
            "no certificate for a {d}-dimensional module over {field} within the search limits"
        )));
    }
    if best.is_none() {
        return Ok(Split::Proper(vec![unit_vector(&field, d, 0)]));
    }
    let rad = radical_trace_form(m.algebra());
    let rm = radical_times(m, &rad);
    if !rm.is_empty() {
        if rm.len() >= d {
            return Err(Error::InvariantBreach("Rad(A)·M equals M".into()));
        }
        return Ok(Split::Proper(rm));
    }
    split_by_endomorphisms(m, &mut rng)
}

fn unit_vector(field: &Field, d: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    v
}

/// Whether the module is simple (nonzero with no proper nonzero submodule).
pub fn is_simple(m: &ModuleDesc, seed: u64) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    Ok(matches!(split_module(m, seed)?, Split::Simple))
}

/// A proper nonzero submodule, or `None` for a simple module.
pub fn proper_submodule(m: &ModuleDesc, seed: u64) -> Result<Option<Vec<Vector>>> {
    if m.dim() == 0 {
        return Ok(None);
    }
    Ok(match split_module(m, seed)? {
        Split::Proper(w) => Some(w),
        Split::Simple => None,
    })
}

fn collect_factors(m: &ModuleDesc, seed: u64, out: &mut Vec<ModuleDesc>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match split_module(m, seed)? {
        Split::Simple => out.push(m.clone()),
        Split::Proper(w) => {
            let s = section(m, &w)?;
            if s.sub.dim() == 0 || s.quotient.dim() == 0 {
                return Err(Error::InvariantBreach("splitter returned a trivial submodule".into()));
            }
            collect_factors(&s.sub, seed, out)?;
            collect_factors(&s.quotient, seed, out)?;
        }
    }
    Ok(())
}

/// Groups simple modules up to isomorphism (nonzero `Hom` between simples is
/// an isomorphism) and sorts by dimension, then by the printed actions.
fn group_simples(simples: Vec<ModuleDesc>) -> Result<Vec<(ModuleDesc, usize)>> {
    let mut groups: Vec<(ModuleDesc, usize)> = Vec::new();
    for s in simples {
        let mut found = false;
        for (rep, count) in groups.iter_mut() {
            if rep.dim() == s.dim() && !hom_space(rep, &s)?.is_empty() {
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((s, 1));
        }
    }
    groups.sort_by_cached_key(|(s, _)| s.canonical_key());
    Ok(groups)
}

/// Composition factors of `M` grouped by isomorphism, with multiplicities.
pub fn composition_factors(m: &ModuleDesc, seed: u64) -> Result<Vec<(ModuleDesc, usize)>> {
    let mut simples = Vec::new();
    collect_factors(m, seed, &mut simples)?;
    group_simples(simples)
}

/// Dimensions of the composition factors, sorted, with repetition.
pub fn composition_dims(m: &ModuleDesc, seed: u64) -> Result<Vec<usize>> {
    let mut simples = Vec::new();
    collect_factors(m, seed, &mut simples)?;
    let mut dims: Vec<usize> = simples.iter().map(|s| s.dim()).collect();
    dims.sort_unstable();
    Ok(dims)
}

/// The simple modules of an algebra with their multiplicities `n_S` in
/// `A / Rad A`.
#[derive(Clone, Debug)]
pub struct SimpleList {
    pub algebra: Arc<AlgebraDesc>,
    pub radical: Vec<Vector>,
    pub entries: Vec<(ModuleDesc, usize)>,
}

impl SimpleList {
    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    /// `Σ n_S · dim S`, which equals `dim A − dim Rad A`.
    pub fn semisimple_dim(&self) -> usize {
        self.entries.iter().map(|(s, k)| s.dim() * k).sum()
    }
}

/// Simple modules of `A`: the composition factors of the semisimple
/// `A`-module `A / Rad A`.
pub fn simple_modules(a: &Arc<AlgebraDesc>, seed: u64) -> Result<SimpleList> {
    let rad = radical(a, seed)?;
    let reg = regular_module(a);
    let top = section(&reg, &rad)?.quotient;
    let entries = composition_factors(&top, seed)?;
    let list = SimpleList { algebra: a.clone(), radical: rad, entries };
    if list.semisimple_dim() + list.radical_dim() != a.dim() {
        return Err(Error::InvariantBreach(format!(
            "simple modules account for {} dimensions, expected {}",
            list.semisimple_dim(),
            a.dim() - list.radical_dim()
        )));
    }
    Ok(list)
}
