//! The self-test suite: eight end-to-end checks over the bundled corpus,
//! each reporting pass/fail, the number of cases examined and whether an
//! internal invariant was breached.

use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraDesc;
use crate::basechange::{extend_algebra, extend_module, theta_dim_check, theta_images_independent};
use crate::corpus::{self, Named};
use crate::error::{Error, Result};
use crate::field::{embed_find, factor, Field, FieldEmbedding, Poly};
use crate::module::{column_module, hom_space, is_isomorphic, regular_module, Isomorphism, ModuleDesc};
use crate::split::{find_splitting_field, is_split, verify_chain_theorem, verify_split_radical};
use crate::structure::oracle::{oracle_composition_dims, oracle_is_simple, ORACLE_VECTOR_LIMIT};
use crate::structure::{composition_dims, simple_modules};

/// Minimum number of (M, N, embedding) triples for the Hom-dimension check.
pub const MIN_THETA_TRIPLES: usize = 30;
/// Number of seeded random modules compared against the oracle.
pub const RANDOM_MODULES: usize = 50;
/// Seed of the random-module corpus (independent of the run seed).
pub const RANDOM_CORPUS_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub breach: bool,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} cases{}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.cases,
            if self.detail.is_empty() { String::new() } else { format!("; {}", self.detail) }
        )
    }
}

pub const TITLES: [&str; 8] = [
    "matrix algebras have one simple module, absolutely simple",
    "Hom dimension is preserved by scalar extension",
    "simplicity descends from extensions",
    "radical of a split algebra commutes with extension",
    "splitting fields of finite degree",
    "chain theorem sides agree",
    "composition factors agree with the oracle",
    "split algebras satisfy sum of squares",
];

/// Tally of a criterion run: failures carry a message, breaches mark bugs.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    breach: bool,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }

    fn breach(&mut self, what: String) {
        self.breach = true;
        self.failures.push(what);
    }

    fn error(&mut self, context: &str, e: Error) {
        if matches!(e, Error::InvariantBreach(_)) {
            self.breach(format!("{context}: {e}"));
        } else {
            self.fail(format!("{context}: {e}"));
        }
    }

    fn finish(self, id: usize, extra: Option<String>) -> CriterionResult {
        let mut detail = self.failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
        if self.failures.len() > 3 {
            detail.push_str(&format!("; and {} more", self.failures.len() - 3));
        }
        if let Some(x) = extra {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&x);
        }
        CriterionResult {
            id,
            title: TITLES[id - 1],
            passed: self.failures.is_empty() && !self.breach,
            cases: self.cases,
            detail,
            breach: self.breach,
        }
    }
}

fn bundled(name: &str) -> Arc<AlgebraDesc> {
    corpus::algebra(name).unwrap_or_else(|| panic!("bundled algebra {name} missing"))
}

// 1 -------------------------------------------------------------------------

fn matrix_algebras(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    for f in [Field::rationals(), corpus::f2(), corpus::f3(), corpus::q_i()] {
        for n in 1..=3 {
            let ctx = format!("M{n}({})", f.name());
            let run = || -> Result<(bool, String)> {
                let a = Arc::new(crate::algebra::matrix_algebra(n, &f)?);
                let list = simple_modules(&a, seed)?;
                let shape: Vec<(usize, usize)> = list.entries.iter().map(|(s, k)| (s.dim(), *k)).collect();
                if shape != vec![(n, n)] {
                    return Ok((false, format!("simple shape {shape:?}")));
                }
                let col = column_module(n, &f)?;
                if !matches!(is_isomorphic(&list.entries[0].0, &col, seed)?, Isomorphism::Isomorphic(_)) {
                    return Ok((false, "simple is not the column module".into()));
                }
                let r = is_split(&a, seed)?;
                let s = &r.per_simple[0];
                let ok = r.verdict && s.dim_end == 1 && s.image_rank == n * n;
                Ok((ok, format!("verdict {} dim End {} rank {}", r.verdict, s.dim_end, s.image_rank)))
            };
            match run() {
                Ok((ok, msg)) => t.check(ok, || format!("{ctx}: {msg}")),
                Err(e) => t.error(&ctx, e),
            }
        }
    }
    t.finish(1, None)
}

// 2 -------------------------------------------------------------------------

const THETA_ALGEBRAS: [&str; 13] = [
    "QC2", "QC3", "QC4", "F2C2", "F2C3", "F2C4", "F3C2", "F3C3", "F3C4", "UT2(Q)", "UT2(F2)", "UT3(F3)", "H(-1,-1/Q)",
];

fn theta_triples(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    for name in THETA_ALGEBRAS {
        let a = bundled(name);
        let mut mods = vec![regular_module(&a)];
        match simple_modules(&a, seed) {
            Ok(list) => mods.extend(list.entries.into_iter().map(|(s, _)| s)),
            Err(e) => {
                t.error(name, e);
                continue;
            }
        }
        for emb in corpus::extensions_of(a.field()).into_iter().take(2) {
            let ctx = match extend_algebra(&a, &emb) {
                Ok(c) => c,
                Err(e) => {
                    t.error(name, e);
                    continue;
                }
            };
            for (i, m) in mods.iter().enumerate() {
                for (j, n) in mods.iter().enumerate() {
                    let label = format!("{name} ({i},{j}) to {}", emb.target().name());
                    let run = || -> Result<(bool, bool)> {
                        let dims = theta_dim_check(m, n, &ctx)?;
                        let h = hom_space(m, n)?;
                        Ok((dims.equal, theta_images_independent(&h, &ctx)))
                    };
                    match run() {
                        Ok((equal, independent)) => {
                            t.cases += 1;
                            if !equal {
                                t.breach(format!("{label}: Hom dimensions differ"));
                            }
                            if !independent {
                                t.breach(format!("{label}: images of a Hom basis became dependent"));
                            }
                        }
                        Err(e) => t.error(&label, e),
                    }
                }
            }
        }
    }
    if t.cases < MIN_THETA_TRIPLES {
        let cases = t.cases;
        t.fail(format!("only {cases} triples, need {MIN_THETA_TRIPLES}"));
    }
    t.finish(2, None)
}

// 3 -------------------------------------------------------------------------

fn fits_oracle(f: &Field, dim: usize) -> bool {
    let q = f.order().expect("finite field");
    let mut total: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_mul(q);
        if total > ORACLE_VECTOR_LIMIT {
            return false;
        }
    }
    true
}

fn simplicity_descent() -> CriterionResult {
    let mut t = Tally::default();
    let mut nonvacuous = 0;
    for Named { name, value: m } in corpus::bundled_modules() {
        if !m.field().is_finite() || m.dim() == 0 {
            continue;
        }
        for emb in corpus::extensions_of(m.field()) {
            if !fits_oracle(emb.target(), m.dim()) {
                continue;
            }
            let label = format!("{name} to {}", emb.target().name());
            let run = || -> Result<(bool, bool)> {
                let ctx = extend_algebra(m.algebra(), &emb)?;
                let mf = extend_module(&m, &ctx)?;
                Ok((oracle_is_simple(&mf)?, oracle_is_simple(&m)?))
            };
            match run() {
                Ok((ext_simple, simple)) => {
                    if ext_simple {
                        nonvacuous += 1;
                    }
                    t.check(!ext_simple || simple, || format!("{label}: extension simple but module not"));
                }
                Err(e) => t.error(&label, e),
            }
        }
    }
    if nonvacuous == 0 {
        t.fail("no case with a simple extension".into());
    }
    t.finish(3, Some(format!("{nonvacuous} with simple extension")))
}

// 4 -------------------------------------------------------------------------

fn split_radicals(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    let cases: Vec<(&str, Vec<Field>)> = vec![
        ("M2(Q)", vec![corpus::q_i(), corpus::q_sqrt2()]),
        ("UT2(Q)", vec![corpus::q_i(), corpus::q_sqrt2()]),
        ("F2C2", vec![corpus::f4(), corpus::f8()]),
        ("QxQ", vec![corpus::q_i(), corpus::q_sqrt2()]),
    ];
    for (name, fields) in cases {
        let a = bundled(name);
        for f in fields {
            let label = format!("{name} to {}", f.name());
            let run = || -> Result<bool> {
                let emb = embed_find(a.field(), &f)?;
                Ok(verify_split_radical(&a, &emb, seed)?.holds())
            };
            match run() {
                Ok(ok) => t.check(ok, || format!("{label}: radicals differ")),
                Err(e) => t.error(&label, e),
            }
        }
    }
    t.finish(4, None)
}

// 5 -------------------------------------------------------------------------

/// Degrees of the irreducible factors of `p` lifted to `f`.
fn factor_degrees(p: &[i64], f: &Field) -> Vec<usize> {
    let mut d: Vec<usize> = factor(&Poly::from_ints(f, p)).iter().flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m)).collect();
    d.sort_unstable();
    d
}

fn splitting_fields(seed: u64) -> CriterionResult {
    let mut t = Tally::default();

    let mut case = |label: &str, name: &str, check: &dyn Fn(&crate::split::SplittingFieldResult) -> Result<Option<String>>| {
        let a = bundled(name);
        match find_splitting_field(&a, None, seed).and_then(|r| check(&r)) {
            Ok(None) => t.check(true, String::new),
            Ok(Some(msg)) => t.check(false, || format!("{label}: {msg}")),
            Err(e) => t.error(label, e),
        }
    };

    case("quaternions", "H(-1,-1/Q)", &|r| {
        let s = &r.certificate.per_simple;
        if r.degree != 2 || !r.certificate.verdict {
            return Ok(Some(format!("degree {}", r.degree)));
        }
        if s.len() != 1 || (s[0].dim, s[0].dim_end, s[0].multiplicity) != (2, 1, 2) {
            return Ok(Some(format!("certificate {s:?}")));
        }
        if factor_degrees(&[1, 0, 1], &r.field) != vec![1, 1] {
            return Ok(Some("x^2+1 does not split over the found field".into()));
        }
        Ok(None)
    });

    case("F4 over F2", "F4/F2", &|r| {
        if r.degree != 2 || r.field != corpus::f4() {
            return Ok(Some(format!("found {} of degree {}", r.field.name(), r.degree)));
        }
        let ext = extend_algebra(&bundled("F4/F2"), &r.embedding)?;
        let dims = oracle_composition_dims(&regular_module(&ext.extended))?;
        if dims != vec![1, 1] {
            return Ok(Some(format!("oracle composition dims {dims:?}")));
        }
        Ok(None)
    });

    case("QC3", "QC3", &|r| {
        let dims: Vec<usize> = r.certificate.per_simple.iter().map(|s| s.dim).collect();
        if r.degree != 2 || dims != vec![1, 1, 1] {
            return Ok(Some(format!("degree {}, simple dims {dims:?}", r.degree)));
        }
        if factor_degrees(&[1, 1, 1], &r.field) != vec![1, 1] || factor_degrees(&[-1, 0, 0, 1], &r.field) != vec![1, 1, 1] {
            return Ok(Some("x^3-1 does not split over the found field".into()));
        }
        Ok(None)
    });

    case("QC4", "QC4", &|r| {
        let dims: Vec<usize> = r.certificate.per_simple.iter().map(|s| s.dim).collect();
        if r.degree != 2 || dims != vec![1, 1, 1, 1] {
            return Ok(Some(format!("degree {}, simple dims {dims:?}", r.degree)));
        }
        if factor_degrees(&[1, 0, 1], &r.field) != vec![1, 1] || factor_degrees(&[-1, 0, 0, 0, 1], &r.field) != vec![1, 1, 1, 1] {
            return Ok(Some("x^4-1 does not split over the found field".into()));
        }
        Ok(None)
    });

    t.finish(5, None)
}

// 6 -------------------------------------------------------------------------

fn chain_cases() -> Vec<(String, Arc<AlgebraDesc>, Field, Field)> {
    let mut out = Vec::new();
    let f2_towers = [(corpus::f2(), corpus::f4()), (corpus::f2(), corpus::f16()), (corpus::f4(), corpus::f16()), (corpus::f4(), corpus::f4())];
    for name in ["M2(F2)", "F2C2", "F2C3", "F2C4", "UT2(F2)", "F4/F2"] {
        for (e, f) in &f2_towers {
            out.push((name.to_string(), bundled(name), e.clone(), f.clone()));
        }
    }
    let q = Field::rationals();
    let z = corpus::q_zeta3();
    for name in ["QC2", "QC3", "H(-1,-1/Q)"] {
        out.push((name.to_string(), bundled(name), q.clone(), z.clone()));
        out.push((name.to_string(), bundled(name), z.clone(), z.clone()));
    }
    out
}

fn chain_theorem(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    let mut undecided = 0;
    for (name, a, e, f) in chain_cases() {
        let label = format!("{name} with {} in {}", e.name(), f.name());
        let run = || -> Result<Option<bool>> {
            let ke = embed_find(a.field(), &e)?;
            let ef = embed_find(&e, &f)?;
            Ok(verify_chain_theorem(&a, &ke, &ef, seed)?.consistent)
        };
        match run() {
            Ok(Some(true)) => t.cases += 1,
            Ok(Some(false)) => {
                t.cases += 1;
                t.breach(format!("{label}: sides disagree"));
            }
            Ok(None) => undecided += 1,
            Err(e) => t.error(&label, e),
        }
    }
    if t.cases == 0 {
        t.fail("no decisive case".into());
    }
    t.finish(6, Some(format!("{undecided} undecided")))
}

// 7 -------------------------------------------------------------------------

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn meataxe_vs_oracle(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    let modules = match corpus::random_modules(RANDOM_MODULES, RANDOM_CORPUS_SEED) {
        Ok(m) => m,
        Err(e) => {
            t.error("random corpus", e);
            return t.finish(7, None);
        }
    };
    for Named { name, value: m } in modules {
        let run = || -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
            let oracle = sorted(oracle_composition_dims(&m)?);
            let runs = (0..3).map(|k| composition_dims(&m, seed.wrapping_add(k)).map(sorted)).collect::<Result<Vec<_>>>()?;
            Ok((oracle, runs))
        };
        match run() {
            Ok((oracle, runs)) => {
                let ok = runs.iter().all(|r| *r == oracle);
                t.check(ok, || format!("{name}: oracle {oracle:?}, splitter {runs:?}"));
            }
            Err(e) => t.error(&name, e),
        }
    }
    if t.cases < RANDOM_MODULES {
        let cases = t.cases;
        t.fail(format!("only {cases} modules compared"));
    }
    t.finish(7, None)
}

// 8 -------------------------------------------------------------------------

fn sum_of_squares(seed: u64) -> CriterionResult {
    let mut t = Tally::default();
    let mut split_count = 0;
    let mut algebras: Vec<(String, Arc<AlgebraDesc>)> = Vec::new();
    for Named { name, value } in corpus::bundled_algebras() {
        if let Some(emb) = corpus::extensions_of(value.field()).into_iter().next() {
            if value.dim() <= 4 {
                match extend_algebra(&value, &emb) {
                    Ok(ctx) => algebras.push((format!("{name} over {}", emb.target().name()), ctx.extended)),
                    Err(e) => t.error(&name, e),
                }
            }
        }
        algebras.push((name, value));
    }
    for name in ["H(-1,-1/Q)", "QC3", "QC4", "F4/F2", "F9/F3"] {
        match find_splitting_field(&bundled(name), None, seed).and_then(|r| extend_algebra(&bundled(name), &r.embedding)) {
            Ok(ctx) => algebras.push((format!("{name} split"), ctx.extended)),
            Err(e) => t.error(name, e),
        }
    }
    for (name, a) in algebras {
        match is_split(&a, seed) {
            Ok(r) if r.verdict => {
                split_count += 1;
                let lhs = r.sum_of_squares();
                let rhs = r.algebra_dim - r.radical_dim;
                let n_ok = r.per_simple.iter().all(|s| s.multiplicity == s.dim);
                t.check(lhs == rhs && n_ok, || format!("{name}: sum of squares {lhs} vs {rhs}"));
            }
            Ok(_) => {}
            Err(e) => t.error(&name, e),
        }
    }
    t.finish(8, Some(format!("{split_count} split algebras")))
}

/// Runs one criterion (1 to 8).
pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    match id {
        1 => matrix_algebras(seed),
        2 => theta_triples(seed),
        3 => simplicity_descent(),
        4 => split_radicals(seed),
        5 => splitting_fields(seed),
        6 => chain_theorem(seed),
        7 => meataxe_vs_oracle(seed),
        8 => sum_of_squares(seed),
        _ => panic!("no criterion {id}"),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=8).map(|id| run_criterion(id, seed)).collect()
}

/// Whether a module's extension along `emb` stays simple per the oracle.
pub fn extension_stays_simple(m: &ModuleDesc, emb: &FieldEmbedding) -> Result<bool> {
    let ctx = extend_algebra(m.algebra(), emb)?;
    oracle_is_simple(&extend_module(m, &ctx)?)
}
