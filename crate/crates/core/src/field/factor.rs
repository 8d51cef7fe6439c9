//! Factorization of univariate polynomials over every supported field.
//!
//! * finite fields: square-free decomposition, then Berlekamp;
//! * ℚ: Yun's square-free decomposition, then Zassenhaus (Berlekamp mod a
//!   small prime, Hensel lifting, subset recombination);
//! * number fields: Trager's norm method on top of the ℚ factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{is_prime, Field, FieldElement, FieldKind, Poly};
use crate::linalg::Matrix;

/// Monic irreducible factors with multiplicities, in canonical order
/// (degree, then coefficients lexicographically). `f` must be nonzero.
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "factor of the zero polynomial");
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let field = f.field().clone();
    let parts = if field.is_finite() { squarefree_finite(&f) } else { squarefree_char0(&f) };
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in parts {
        let irreducibles = match field.kind() {
            FieldKind::PrimeField | FieldKind::FiniteField => berlekamp(&part),
            FieldKind::Rationals => factor_squarefree_rational(&part),
            FieldKind::NumberField => trager(&part),
        };
        for g in irreducibles {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += mult,
                None => out.push((g, mult)),
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    out
}

pub(crate) fn canonical_cmp(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            let o = x.cmp_lex(y);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn is_irreducible(f: &Poly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// All roots of `f` in its coefficient field, sorted lexicographically by
/// coordinates. Finite fields up to 2^16 elements are searched exhaustively;
/// otherwise roots are read off the linear factors.
pub fn roots(f: &Poly) -> Vec<FieldElement> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let field = f.field().clone();
    let mut out: Vec<FieldElement> = match field.order() {
        Some(q) if q <= 1 << 16 => field.elements().filter(|x| f.eval(x).is_zero()).collect(),
        _ => factor(f)
            .into_iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| -&g.coeff(0))
            .collect(),
    };
    out.sort_by(|a, b| a.cmp_lex(b));
    out.dedup();
    out
}

fn squarefree_char0(f: &Poly) -> Vec<(Poly, usize)> {
    // Yun's algorithm
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_exact(&a0).monic();
    let mut c = d.div_exact(&a0);
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&dd);
        b = b.div_exact(&a).monic();
        c = dd.div_exact(&a);
        dd = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn pth_root_poly(c: &Poly) -> Poly {
    let field = c.field().clone();
    let p = field.characteristic() as usize;
    let q = field.order().expect("finite field");
    let root_exp = q / p as u128;
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| a.pow(root_exp))
        .collect();
    Poly::from_coeffs(&field, coeffs)
}

fn squarefree_finite(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.field().characteristic() as usize;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).monic();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).monic();
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).monic();
        i += 1;
    }
    if c.deg() > 0 {
        let root = pth_root_poly(&c);
        for (g, m) in squarefree_finite(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Berlekamp's algorithm for a monic square-free polynomial over a finite field.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let x = Poly::x(&field);
    let xq = x.pow_mod(q, f);
    let mut cols: Vec<Poly> = Vec::with_capacity(n);
    let mut acc = Poly::one(&field);
    for _ in 0..n {
        cols.push(acc.clone());
        acc = acc.mul(&xq).rem(f);
    }
    let m = Matrix::from_fn(&field, n, n, |i, j| {
        let v = cols[j].coeff(i);
        if i == j {
            &v - &field.one()
        } else {
            v
        }
    });
    let kernel = m.kernel_basis();
    let r = kernel.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for v in &kernel {
        let g = Poly::from_coeffs(&field, v.clone());
        if g.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 {
                next.push(u);
                continue;
            }
            let mut found = 0;
            for c in field.elements() {
                let h = u.gcd(&g.sub(&Poly::constant(c)));
                if h.deg() > 0 {
                    found += h.deg();
                    next.push(h);
                    if found == u.deg() {
                        break;
                    }
                }
            }
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

// ---------------------------------------------------------------------------
// ℚ: Zassenhaus

type IntPoly = Vec<BigInt>;

fn int_trim(v: &mut IntPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    int_trim(&mut out);
    out
}

fn int_sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    int_trim(&mut out);
    out
}

/// Exact division by a monic integer polynomial, `None` on a remainder.
fn int_div_monic(a: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (dd..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            r[k - dd + i] -= &c * di;
        }
        q[k - dd] = c;
    }
    if r[..dd].iter().any(|c| !c.is_zero()) {
        return None;
    }
    int_trim(&mut q);
    Some(q)
}

fn to_fp(a: &IntPoly, fp: &Field) -> Poly {
    let p = BigInt::from(fp.characteristic());
    Poly::from_coeffs(
        fp,
        a.iter().map(|c| fp.from_u64(c.mod_floor(&p).to_u64().unwrap())).collect(),
    )
}

fn from_fp(a: &Poly) -> IntPoly {
    a.coeffs().iter().map(|c| BigInt::from(c.modular_coords()[0])).collect()
}

fn symmetric_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    let mut out: IntPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    int_trim(&mut out);
    out
}

fn hensel_pair(f: &IntPoly, g: &Poly, h: &Poly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let fp = g.field().clone();
    let (one, s, t) = g.ext_gcd(h);
    debug_assert!(one.is_one(), "Hensel factors must be coprime mod p");
    let pb = BigInt::from(p);
    let mut gl = from_fp(g);
    let mut hl = from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = int_sub(f, &int_mul(&gl, &hl));
        let e_int: IntPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e_int, &fp);
        let (quo, dh) = s.mul(&e).divrem(h);
        let dg = t.mul(&e).add(&quo.mul(g));
        for (i, c) in from_fp(&dg).into_iter().enumerate() {
            if i >= gl.len() {
                gl.resize(i + 1, BigInt::zero());
            }
            gl[i] += &pj * c;
        }
        for (i, c) in from_fp(&dh).into_iter().enumerate() {
            if i >= hl.len() {
                hl.resize(i + 1, BigInt::zero());
            }
            hl[i] += &pj * c;
        }
        pj *= &pb;
    }
    let modulus = pj;
    let reduce = |v: &IntPoly| -> IntPoly {
        let mut out: IntPoly = v.iter().map(|c| c.mod_floor(&modulus)).collect();
        int_trim(&mut out);
        out
    };
    (reduce(&gl), reduce(&hl))
}

fn hensel_multi(f: &IntPoly, factors: &[Poly], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        let mut out: IntPoly = f.iter().map(|c| c.mod_floor(&m)).collect();
        int_trim(&mut out);
        return vec![out];
    }
    let fp = factors[0].field().clone();
    let rest = factors[1..].iter().fold(Poly::one(&fp), |acc, g| acc.mul(g));
    let (gl, hl) = hensel_pair(f, &factors[0], &rest, p, k);
    let mut out = vec![gl];
    out.extend(hensel_multi(&hl, &factors[1..], p, k));
    out
}

/// Factors a monic square-free integer polynomial over ℤ.
fn zassenhaus(h: &IntPoly) -> Vec<IntPoly> {
    let n = h.len() - 1;
    if n <= 1 {
        return vec![h.clone()];
    }
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut good = 0;
    let mut p = 2u64;
    while good < 3 && p < 2000 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fp = Field::prime(p).expect("prime");
        let hp = to_fp(h, &fp);
        if hp.gcd(&hp.derivative()).deg() > 0 {
            continue;
        }
        good += 1;
        let fs = berlekamp(&hp);
        if fs.len() == 1 {
            return vec![h.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    let (p, modfactors) = best.expect("some prime keeps the polynomial square-free");

    let norm_sq: BigInt = h.iter().map(|c| c * c).sum();
    let bound = (norm_sq.sqrt() + BigInt::one()) << n;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(h, &modfactors, p, k);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = h.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit: Option<(Vec<usize>, IntPoly, IntPoly)> = None;
        for subset in combinations(&remaining, s) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| symmetric_mod(&int_mul(&acc, &lifted[i]), &pk));
            let cand = symmetric_mod(&prod, &pk);
            if let Some(q) = int_div_monic(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                remaining.retain(|i| !subset.contains(i));
            }
            None => s += 1,
        }
    }
    out.push(rest);
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn factor_squarefree_rational(f: &Poly) -> Vec<Poly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.monic()];
    }
    let q = f.field().clone();
    let rats: Vec<BigRational> = f.coeffs().iter().map(|c| c.to_rational().expect("rational")).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut g: IntPoly = rats.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in g.iter_mut() {
        *c /= &content;
    }
    if g[n].is_negative() {
        for c in g.iter_mut() {
            *c = -c.clone();
        }
    }
    let a = g[n].clone();
    // monic transform: H(y) = a^{n-1} G(y / a)
    let mut h: IntPoly = Vec::with_capacity(n + 1);
    for (i, c) in g.iter().enumerate() {
        if i == n {
            h.push(BigInt::one());
        } else {
            h.push(c * a.pow((n - 1 - i) as u32));
        }
    }
    zassenhaus(&h)
        .into_iter()
        .map(|fac| {
            // back-substitute y = a x and normalize
            let coeffs = fac
                .iter()
                .enumerate()
                .map(|(i, c)| q.from_rational(BigRational::from_integer(c * a.pow(i as u32))))
                .collect();
            Poly::from_coeffs(&q, coeffs).monic()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// number fields: Trager

/// Norm of an element of a number field down to ℚ.
pub(crate) fn element_norm(a: &FieldElement) -> BigRational {
    let field = a.field();
    if field.degree() == 1 {
        return a.to_rational().expect("rational");
    }
    let m = mult_matrix(a);
    m.det().expect("square").to_rational().expect("rational")
}

/// Matrix of multiplication by `a` on the power basis, over the prime field.
pub(crate) fn mult_matrix(a: &FieldElement) -> Matrix {
    let field = a.field();
    let prime = field.prime_field();
    let d = field.degree();
    let g = field.generator();
    let mut cols = Vec::with_capacity(d);
    let mut basis = field.one();
    for _ in 0..d {
        cols.push((a * &basis).prime_coords());
        basis = &basis * &g;
    }
    Matrix::from_fn(&prime, d, d, |i, j| cols[j][i].clone())
}

/// Lagrange interpolation over a field through the given points.
pub(crate) fn interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Poly {
    let mut acc = Poly::zero(field);
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one(field);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::linear(xj));
                denom = &denom * &(xi - xj);
            }
        }
        let c = yi * &denom.inv().expect("distinct nodes");
        acc = acc.add(&basis.scale(&c));
    }
    acc
}

/// `Norm_{K/ℚ}(g)` for `g ∈ K[x]`, computed by evaluation and interpolation.
pub(crate) fn norm_poly(g: &Poly) -> Poly {
    let k = g.field().clone();
    let q = Field::rationals();
    let deg = g.deg() * k.degree();
    let points: Vec<_> = (0..=deg as i64)
        .map(|x0| {
            let v = g.eval(&k.from_int(x0));
            (q.from_int(x0), q.from_rational(element_norm(&v)))
        })
        .collect();
    interpolate(&q, &points)
}

fn trager(f: &Poly) -> Vec<Poly> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let k = f.field().clone();
    let alpha = k.generator();
    let mut shifts = vec![0i64];
    for s in 1..=20 {
        shifts.push(s);
        shifts.push(-s);
    }
    for s in shifts {
        let sa = &alpha * &k.from_int(s);
        let g = f.shift(&-&sa);
        let norm = norm_poly(&g);
        if norm.gcd(&norm.derivative()).deg() > 0 {
            continue;
        }
        let norm_factors = factor_squarefree_rational(&norm.monic());
        if norm_factors.len() == 1 {
            return vec![f.monic()];
        }
        return norm_factors
            .iter()
            .map(|ni| {
                let lifted = ni.lift_to(&k);
                g.gcd(&lifted).shift(&sa).monic()
            })
            .filter(|h| h.deg() > 0)
            .collect();
    }
    panic!("no square-free norm found for {f} within 41 shifts");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac_degrees(f: &Poly) -> Vec<(usize, usize)> {
        factor(f).into_iter().map(|(g, m)| (g.deg(), m)).collect()
    }

    fn product(fs: &[(Poly, usize)], field: &Field) -> Poly {
        fs.iter().fold(Poly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    #[test]
    fn x_cubed_minus_one_over_q() {
        let q = Field::rationals();
        let f = Poly::from_ints(&q, &[-1, 0, 0, 1]);
        assert_eq!(fac_degrees(&f), vec![(1, 1), (2, 1)]);
        assert_eq!(factor(&f)[1].0, Poly::from_ints(&q, &[1, 1, 1]));
    }

    #[test]
    fn x4_minus_one_over_q_and_qi() {
        let q = Field::rationals();
        let f = Poly::from_ints(&q, &[-1, 0, 0, 0, 1]);
        assert_eq!(fac_degrees(&f), vec![(1, 1), (1, 1), (2, 1)]);
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        let g = Poly::from_ints(&qi, &[-1, 0, 0, 0, 1]);
        assert_eq!(fac_degrees(&g), vec![(1, 1); 4]);
    }

    #[test]
    fn repeated_and_non_monic_over_q() {
        let q = Field::rationals();
        // (2x + 1)^2 (x^2 - 2)
        let a = Poly::from_ints(&q, &[1, 2]);
        let b = Poly::from_ints(&q, &[-2, 0, 1]);
        let f = a.mul(&a).mul(&b);
        let fs = factor(&f);
        assert_eq!(fs.iter().map(|(g, m)| (g.deg(), *m)).collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert_eq!(product(&fs, &q), f.monic());
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let q = Field::rationals();
        let f = Poly::from_ints(&q, &[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn finite_field_factorizations() {
        let f2 = Field::prime(2).unwrap();
        // x^4 + x = x (x+1)(x^2+x+1) over F_2
        let f = Poly::from_ints(&f2, &[0, 1, 0, 0, 1]);
        assert_eq!(fac_degrees(&f), vec![(1, 1), (1, 1), (2, 1)]);
        // (x+1)^2 = x^2 + 1 over F_2: inseparable square
        let g = Poly::from_ints(&f2, &[1, 0, 1]);
        assert_eq!(fac_degrees(&g), vec![(1, 2)]);
        let f4 = Field::finite(2, 2).unwrap();
        let h = Poly::from_ints(&f4, &[1, 1, 1]);
        assert_eq!(fac_degrees(&h), vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn roots_examples() {
        let f5 = Field::prime(5).unwrap();
        let r = roots(&Poly::from_ints(&f5, &[1, 0, 1]));
        assert_eq!(r, vec![f5.from_int(2), f5.from_int(3)]);
        let q = Field::rationals();
        assert!(roots(&Poly::from_ints(&q, &[1, 0, 1])).is_empty());
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        let r = roots(&Poly::from_ints(&qi, &[1, 0, 1]));
        let i = qi.generator();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&i) && r.contains(&-&i));
    }

    #[test]
    fn trager_over_cyclotomic() {
        let qz = Field::number_field_int(&[1, 1, 1]).unwrap();
        // x^3 - 1 splits completely over Q(zeta_3)
        let f = Poly::from_ints(&qz, &[-1, 0, 0, 1]);
        assert_eq!(fac_degrees(&f), vec![(1, 1); 3]);
        // x^2 + 1 stays irreducible over Q(zeta_3)
        assert!(is_irreducible(&Poly::from_ints(&qz, &[1, 0, 1])));
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        let z = &qi.from_int(3) + &(&qi.generator() * &qi.from_int(4));
        assert_eq!(element_norm(&z), BigRational::from_integer(25.into()));
    }

    #[test]
    fn combinations_enumerates_all() {
        assert_eq!(combinations(&[0, 1, 2, 3], 2).len(), 6);
        assert_eq!(combinations(&[5, 7], 1), vec![vec![5], vec![7]]);
        assert_eq!(combinations(&[1, 2, 3], 3), vec![vec![1, 2, 3]]);
    }
}
