//! Brute-force submodule oracle for small modules over finite fields.
//!
//! Runs on its own table-driven field arithmetic and its own elimination so
//! that it shares no code path with the splitter it cross-checks. Every
//! vector of the module is enumerated, so the module must satisfy
//! `|F|^dim ≤ 2^20`.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::field::{Coords, Field};
use crate::module::ModuleDesc;

pub const ORACLE_VECTOR_LIMIT: u128 = 1 << 20;
const TABLE_LIMIT: u64 = 1024;
const LATTICE_LIMIT: usize = 20_000;

/// `F_q` with elements numbered `Σ c_i p^i` and full operation tables.
#[derive(Clone, Debug)]
struct Tables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Tables {
    fn new(field: &Field) -> Result<Tables> {
        let p = field.characteristic();
        if p == 0 {
            return Err(Error::PreconditionFailed("the oracle needs a finite field".into()));
        }
        let q = field.order().filter(|&q| q <= TABLE_LIMIT as u128).ok_or_else(|| {
            Error::TooLarge(format!("{} is too large for operation tables", field.name()))
        })? as usize;
        let modulus = match field.modulus_coords() {
            Coords::Modular(m) => m,
            Coords::Rational(_) => unreachable!("finite field"),
        };
        let d = modulus.len() - 1;
        let digits = |mut x: usize| -> Vec<u64> {
            (0..d)
                .map(|_| {
                    let r = (x as u64) % p;
                    x /= p as usize;
                    r
                })
                .collect()
        };
        let number = |ds: &[u64]| ds.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let s: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = number(&s) as u32;
                let mut prod = vec![0u64; 2 * d];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                for k in (d..2 * d).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (i, m) in modulus.iter().enumerate().take(d) {
                        prod[k - d + i] = (prod[k - d + i] + (p - c) * m) % p;
                    }
                    prod[k] = 0;
                }
                mul[x * q + y] = number(&prod[..d]) as u32;
            }
        }
        let neg = (0..q).map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u32).collect();
        let inv = (0..q)
            .map(|x| if x == 0 { 0 } else { (1..q).find(|&y| mul[x * q + y] == 1).unwrap() as u32 })
            .collect();
        Ok(Tables { q, add, mul, neg, inv })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
}

type Vect = Vec<u32>;
type Basis = Vec<Vect>;

/// Module with entries encoded as table indices.
#[derive(Clone, Debug)]
struct TableModule {
    t: Tables,
    dim: usize,
    /// Row-major action matrices.
    actions: Vec<Vec<u32>>,
}

impl TableModule {
    fn from_module(m: &ModuleDesc) -> Result<TableModule> {
        let field = m.field();
        let q = field.order().ok_or_else(|| Error::PreconditionFailed("the oracle needs a finite field".into()))?;
        let fits = q.checked_pow(m.dim() as u32).is_some_and(|n| n <= ORACLE_VECTOR_LIMIT);
        if !fits {
            return Err(Error::TooLarge(format!("{}^{} vectors exceed 2^20", q, m.dim())));
        }
        let t = Tables::new(field)?;
        let actions = m
            .actions()
            .iter()
            .map(|a| a.entries().iter().map(|e| field.index_of(e) as u32).collect())
            .collect();
        Ok(TableModule { t, dim: m.dim(), actions })
    }

    fn apply(&self, a: &[u32], v: &[u32]) -> Vect {
        (0..self.dim)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.dim {
                    acc = self.t.add(acc, self.t.mul(a[i * self.dim + j], v[j]));
                }
                acc
            })
            .collect()
    }

    /// Reduced echelon basis of the span, sorted by pivot.
    fn rref(&self, vectors: &[Vect]) -> Basis {
        let t = &self.t;
        let mut rows: Basis = Vec::new();
        for v in vectors {
            let mut w = v.clone();
            for r in &rows {
                let p = r.iter().position(|&x| x != 0).unwrap();
                let c = w[p];
                if c != 0 {
                    for j in 0..w.len() {
                        w[j] = t.sub(w[j], t.mul(c, r[j]));
                    }
                }
            }
            let Some(p) = w.iter().position(|&x| x != 0) else { continue };
            let inv = t.inv[w[p] as usize];
            for x in w.iter_mut() {
                *x = t.mul(*x, inv);
            }
            for r in rows.iter_mut() {
                let c = r[p];
                if c != 0 {
                    for j in 0..r.len() {
                        r[j] = t.sub(r[j], t.mul(c, w[j]));
                    }
                }
            }
            rows.push(w);
        }
        rows.sort_by_key(|r| r.iter().position(|&x| x != 0).unwrap());
        rows
    }

    fn spin(&self, seeds: &[Vect]) -> Basis {
        let mut basis = self.rref(seeds);
        let mut frontier = basis.clone();
        while !frontier.is_empty() && basis.len() < self.dim {
            let mut images = basis.clone();
            for v in &frontier {
                for a in &self.actions {
                    images.push(self.apply(a, v));
                }
            }
            let grown = self.rref(&images);
            if grown.len() == basis.len() {
                break;
            }
            frontier = grown.clone();
            basis = grown;
        }
        basis
    }

    /// Every vector whose first nonzero coordinate is 1.
    fn normalized_vectors(&self) -> impl Iterator<Item = Vect> + '_ {
        let q = self.t.q as u64;
        let total = q.pow(self.dim as u32);
        (1..total).filter_map(move |code| {
            let mut c = code;
            let v: Vect = (0..self.dim)
                .map(|_| {
                    let x = (c % q) as u32;
                    c /= q;
                    x
                })
                .collect();
            (v.iter().find(|&&x| x != 0) == Some(&1)).then_some(v)
        })
    }

    /// Action on the quotient by the span of the echelon basis `sub`, on the
    /// complement of its pivot coordinates.
    fn quotient(&self, sub: &Basis) -> TableModule {
        let t = &self.t;
        let pivots: Vec<usize> = sub.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
        let comp: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let project = |v: &Vect| -> Vect {
            let mut w = v.clone();
            for (r, &p) in sub.iter().zip(&pivots) {
                let c = w[p];
                if c != 0 {
                    for j in 0..w.len() {
                        w[j] = t.sub(w[j], t.mul(c, r[j]));
                    }
                }
            }
            comp.iter().map(|&c| w[c]).collect()
        };
        let qd = comp.len();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let mut out = vec![0u32; qd * qd];
                for (jj, &c) in comp.iter().enumerate() {
                    let col: Vect = (0..self.dim).map(|i| a[i * self.dim + c]).collect();
                    for (ii, x) in project(&col).into_iter().enumerate() {
                        out[ii * qd + jj] = x;
                    }
                }
                out
            })
            .collect();
        TableModule { t: self.t.clone(), dim: qd, actions }
    }
}

/// Simplicity by brute force: every nonzero vector spins to the whole space.
pub fn oracle_is_simple(m: &ModuleDesc) -> Result<bool> {
    let tm = TableModule::from_module(m)?;
    if tm.dim == 0 {
        return Ok(false);
    }
    for v in tm.normalized_vectors() {
        if tm.spin(&[v]).len() < tm.dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension multiset (sorted) of the full submodule lattice, including `0`
/// and the module itself. Every submodule is a sum of cyclic ones, so the
/// lattice is the closure of the cyclic submodules under sums.
pub fn oracle_submodules(m: &ModuleDesc) -> Result<Vec<usize>> {
    let tm = TableModule::from_module(m)?;
    let mut cyclic: BTreeSet<Basis> = BTreeSet::new();
    for v in tm.normalized_vectors() {
        cyclic.insert(tm.spin(&[v]));
        if cyclic.len() > LATTICE_LIMIT {
            return Err(Error::TooLarge("more cyclic submodules than the lattice limit".into()));
        }
    }
    let cyclic: Vec<Basis> = cyclic.into_iter().collect();
    let mut lattice: HashSet<Basis> = HashSet::new();
    lattice.insert(Vec::new());
    let mut queue: Vec<Basis> = vec![Vec::new()];
    while let Some(x) = queue.pop() {
        for c in &cyclic {
            let mut gens = x.clone();
            gens.extend(c.iter().cloned());
            let s = tm.rref(&gens);
            if lattice.insert(s.clone()) {
                if lattice.len() > LATTICE_LIMIT {
                    return Err(Error::TooLarge(format!("more than {LATTICE_LIMIT} submodules")));
                }
                queue.push(s);
            }
        }
    }
    let mut dims: Vec<usize> = lattice.iter().map(|b| b.len()).collect();
    dims.sort_unstable();
    Ok(dims)
}

/// Composition factor dimensions (sorted): peel off a minimal submodule,
/// which is a cyclic submodule of least dimension, and recurse on the
/// quotient.
pub fn oracle_composition_dims(m: &ModuleDesc) -> Result<Vec<usize>> {
    let mut tm = TableModule::from_module(m)?;
    let mut dims = Vec::new();
    while tm.dim > 0 {
        let mut least: Option<Basis> = None;
        for v in tm.normalized_vectors() {
            let s = tm.spin(&[v]);
            if least.as_ref().is_none_or(|l| s.len() < l.len()) {
                let done = s.len() == 1;
                least = Some(s);
                if done {
                    break;
                }
            }
        }
        let sub = least.expect("nonzero module has a nonzero vector");
        dims.push(sub.len());
        tm = tm.quotient(&sub);
    }
    dims.sort_unstable();
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{cyclic_group_table, group_algebra};
    use crate::module::{column_module, regular_module};

    #[test]
    fn lattice_examples() {
        let f2 = Field::prime(2).unwrap();
        let col = column_module(2, &f2).unwrap();
        assert_eq!(oracle_submodules(&col).unwrap(), vec![0, 2]);
        assert!(oracle_is_simple(&col).unwrap());
        let c2 = Arc::new(group_algebra(&cyclic_group_table(2), &f2).unwrap());
        let reg = regular_module(&c2);
        assert_eq!(oracle_submodules(&reg).unwrap(), vec![0, 1, 2]);
        assert!(!oracle_is_simple(&reg).unwrap());
        assert_eq!(oracle_composition_dims(&reg).unwrap(), vec![1, 1]);
        let zero = ModuleDesc::zero(c2);
        assert_eq!(oracle_submodules(&zero).unwrap(), vec![0]);
    }

    #[test]
    fn tables_match_field_arithmetic() {
        let f = Field::finite(3, 2).unwrap();
        let t = Tables::new(&f).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let (ia, ib) = (f.index_of(&a) as u32, f.index_of(&b) as u32);
                assert_eq!(t.mul(ia, ib) as u128, f.index_of(&(&a * &b)));
                assert_eq!(t.add(ia, ib) as u128, f.index_of(&(&a + &b)));
            }
        }
    }

    #[test]
    fn rejects_large_and_char_zero() {
        let f = Field::prime(2).unwrap();
        let c21 = Arc::new(group_algebra(&cyclic_group_table(21), &f).unwrap());
        assert!(matches!(oracle_submodules(&regular_module(&c21)), Err(Error::TooLarge(_))));
        let q = column_module(2, &Field::rationals()).unwrap();
        assert!(oracle_is_simple(&q).is_err());
    }
}
