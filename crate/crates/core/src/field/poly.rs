use std::fmt;

use super::{Field, FieldElement};

/// Univariate polynomial over a [`Field`], little-endian, with no trailing
/// zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> Poly {
        Poly::from_coeffs(field, cs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        Poly::from_coeffs(&field, vec![c])
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear(r: &FieldElement) -> Poly {
        let f = r.field().clone();
        Poly::from_coeffs(&f, vec![-r, f.one()])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(&self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.field, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(&self.field), self.clone());
        }
        let lc_inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] * &lc_inv;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k - dd + i] = &r[k - dd + i] - &(&c * di);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(&self.field, q), Poly::from_coeffs(&self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; panics (debug) when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_u64(i as u64))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// `self(x + c)` by Horner's rule.
    pub fn shift(&self, c: &FieldElement) -> Poly {
        let lin = Poly::from_coeffs(&self.field, vec![c.clone(), self.field.one()]);
        let mut acc = Poly::zero(&self.field);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Poly {
        Poly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    /// Lifts a polynomial over the prime field into `target`.
    pub fn lift_to(&self, target: &Field) -> Poly {
        self.map_coeffs(target, |c| target.from_prime(c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let wrapped = if cs.contains(' ') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (i, wrapped.as_str()) {
                (0, _) => wrapped.clone(),
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{wrapped}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let q = Field::rationals();
        let a = Poly::from_ints(&q, &[-1, 0, 0, 1]);
        let b = Poly::from_ints(&q, &[1, 1]);
        let (quo, r) = a.divrem(&b);
        assert_eq!(quo.mul(&b).add(&r), a);
        assert_eq!(r.deg(), 0);
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let f = Field::prime(5).unwrap();
        let a = Poly::from_ints(&f, &[-1, 0, 1]);
        let b = Poly::from_ints(&f, &[-1, 1]).mul(&Poly::from_ints(&f, &[2, 1]));
        assert_eq!(a.gcd(&b), Poly::from_ints(&f, &[-1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn shift_matches_evaluation() {
        let q = Field::rationals();
        let p = Poly::from_ints(&q, &[3, -2, 0, 5]);
        let c = q.from_int(4);
        let s = p.shift(&c);
        for x in -3..4 {
            let xe = q.from_int(x);
            assert_eq!(s.eval(&xe), p.eval(&(&xe + &c)));
        }
    }

    #[test]
    fn display() {
        let q = Field::rationals();
        assert_eq!(Poly::from_ints(&q, &[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(Poly::from_ints(&q, &[-1, -1]).to_string(), "-x - 1");
    }
}
