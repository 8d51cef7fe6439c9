//! Scalar arithmetic in the prime base (ℚ or F_p) and polynomial helpers over
//! it. Extension-field multiplication and inversion are written once here,
//! generically over [`Base`], and instantiated for both characteristics.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait Base {
    type S: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn is_zero(&self, a: &Self::S) -> bool;
    fn add(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn sub(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn mul(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn inv(&self, a: &Self::S) -> Option<Self::S>;
}

pub(crate) struct RationalBase;

impl Base for RationalBase {
    type S = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Arithmetic modulo a prime `p < 2^32`.
pub(crate) struct ModularBase(pub u64);

impl Base for ModularBase {
    type S = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.0 as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.0 as i64) as u64)
    }
}

fn trim<B: Base>(b: &B, v: &mut Vec<B::S>) {
    while v.last().is_some_and(|c| b.is_zero(c)) {
        v.pop();
    }
}

/// Product of two coordinate vectors, reduced modulo the monic `modulus`
/// (given little-endian, including the leading 1). Inputs have length
/// `deg(modulus)`.
pub(crate) fn mul_mod<B: Base>(b: &B, x: &[B::S], y: &[B::S], modulus: &[B::S]) -> Vec<B::S> {
    let d = modulus.len() - 1;
    let mut prod = vec![b.zero(); 2 * d.max(1) - 1];
    for (i, xi) in x.iter().enumerate() {
        if b.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if b.is_zero(yj) {
                continue;
            }
            prod[i + j] = b.add(&prod[i + j], &b.mul(xi, yj));
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k].clone();
        if b.is_zero(&c) {
            continue;
        }
        for (i, m) in modulus.iter().enumerate().take(d) {
            prod[k - d + i] = b.sub(&prod[k - d + i], &b.mul(&c, m));
        }
        prod[k] = b.zero();
    }
    prod.truncate(d);
    prod.resize(d, b.zero());
    prod
}

/// Division with remainder of base polynomials; `den` must be nonzero.
pub(crate) fn divrem<B: Base>(b: &B, num: &[B::S], den: &[B::S]) -> (Vec<B::S>, Vec<B::S>) {
    let mut den = den.to_vec();
    trim(b, &mut den);
    let mut r = num.to_vec();
    trim(b, &mut r);
    if r.len() < den.len() {
        return (Vec::new(), r);
    }
    let lc_inv = b.inv(den.last().expect("nonzero divisor")).expect("field scalar");
    let mut q = vec![b.zero(); r.len() - den.len() + 1];
    while r.len() >= den.len() && !r.is_empty() {
        let shift = r.len() - den.len();
        let c = b.mul(r.last().unwrap(), &lc_inv);
        for (i, di) in den.iter().enumerate() {
            r[shift + i] = b.sub(&r[shift + i], &b.mul(&c, di));
        }
        q[shift] = c;
        r.pop();
        trim(b, &mut r);
    }
    trim(b, &mut q);
    (q, r)
}

fn poly_mul<B: Base>(b: &B, x: &[B::S], y: &[B::S]) -> Vec<B::S> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![b.zero(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            out[i + j] = b.add(&out[i + j], &b.mul(xi, yj));
        }
    }
    trim(b, &mut out);
    out
}

fn poly_sub<B: Base>(b: &B, x: &[B::S], y: &[B::S]) -> Vec<B::S> {
    let n = x.len().max(y.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let xi = x.get(i).cloned().unwrap_or_else(|| b.zero());
        let yi = y.get(i).cloned().unwrap_or_else(|| b.zero());
        out.push(b.sub(&xi, &yi));
    }
    trim(b, &mut out);
    out
}

/// Inverse of `x` in base[y]/(modulus), or `None` when `x` is not invertible
/// (zero, or sharing a factor with a reducible modulus).
pub(crate) fn inv_mod<B: Base>(b: &B, x: &[B::S], modulus: &[B::S]) -> Option<Vec<B::S>> {
    let d = modulus.len() - 1;
    let mut r0 = modulus.to_vec();
    let mut r1 = x.to_vec();
    trim(b, &mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<B::S> = Vec::new();
    let mut t1: Vec<B::S> = vec![b.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(b, &r0, &r1);
        let t2 = poly_sub(b, &t0, &poly_mul(b, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is the gcd; a unit iff it is a nonzero constant
    if r0.len() != 1 {
        return None;
    }
    let c = b.inv(&r0[0])?;
    let mut out: Vec<B::S> = t0.iter().map(|t| b.mul(t, &c)).collect();
    let (_, rem) = divrem(b, &out, modulus);
    out = rem;
    out.resize(d, b.zero());
    Some(out)
}
