//! Exact fields: ℚ, number fields ℚ[a]/(f), prime fields F_p and finite
//! fields F_p[a]/(g). Every field is stored in absolute form over its prime
//! base; elements are coefficient vectors in the power basis of the
//! generator `a`.

mod base;
pub mod embed;
pub mod factor;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use base::{Base, ModularBase, RationalBase};

pub use embed::{embed_find, subfield_generated, FieldEmbedding};
pub use factor::{factor, is_irreducible};
pub use poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    NumberField,
    PrimeField,
    FiniteField,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Characteristic 0; monic modulus over ℚ (just `a` for ℚ itself).
    Rational(Vec<BigRational>),
    /// Characteristic p; monic modulus over F_p (just `a` for F_p itself).
    Modular(u64, Vec<u64>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    repr: Repr,
}

/// Shared handle to an immutable field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Coefficients of an element over the prime base, little-endian.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coords {
    Rational(Vec<BigRational>),
    Modular(Vec<u64>),
}

impl Coords {
    pub fn len(&self) -> usize {
        match self {
            Coords::Rational(v) => v.len(),
            Coords::Modular(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coords: Coords,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor {
            kind: FieldKind::Rationals,
            repr: Repr::Rational(vec![rat(0), rat(1)]),
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field(Arc::new(FieldDescriptor {
            kind: FieldKind::PrimeField,
            repr: Repr::Modular(p, vec![0, 1]),
        })))
    }

    /// F_{p^m} with the canonical modulus: the least monic irreducible
    /// polynomial of degree `m`, ordering the lower coefficients as a base-p
    /// integer with `c_0` least significant.
    pub fn finite(p: u64, m: usize) -> Result<Field> {
        let prime = Field::prime(p)?;
        if m == 0 {
            return Err(Error::InvalidField("degree 0".into()));
        }
        if m == 1 {
            return Ok(prime);
        }
        let count = (p as u128).checked_pow(m as u32).ok_or_else(|| {
            Error::InvalidField(format!("F_{p}^{m} is too large to search for a modulus"))
        })?;
        for code in 0..count {
            let mut c = code;
            let mut coeffs = Vec::with_capacity(m + 1);
            for _ in 0..m {
                coeffs.push((c % p as u128) as u64);
                c /= p as u128;
            }
            if coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            let f = Poly::from_coeffs(
                &prime,
                coeffs.iter().map(|&c| prime.from_u64(c)).collect(),
            );
            if is_irreducible(&f) {
                return Field::finite_with_modulus(p, coeffs);
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {m} over F_{p}")))
    }

    /// F_p[a]/(g) for a caller-supplied monic irreducible `g` (little-endian).
    pub fn finite_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let prime = Field::prime(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.len() == 2 {
            return Ok(prime);
        }
        let f = Poly::from_coeffs(&prime, modulus.iter().map(|&c| prime.from_u64(c)).collect());
        if !is_irreducible(&f) {
            return Err(Error::InvalidField(format!("{f} is reducible over F_{p}")));
        }
        Ok(Field(Arc::new(FieldDescriptor {
            kind: FieldKind::FiniteField,
            repr: Repr::Modular(p, modulus),
        })))
    }

    /// ℚ[a]/(f) for a monic irreducible `f` over ℚ (little-endian).
    pub fn number_field(modulus: Vec<BigRational>) -> Result<Field> {
        if modulus.len() < 2 || !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.len() == 2 {
            return Ok(Field::rationals());
        }
        let q = Field::rationals();
        let f = Poly::from_coeffs(&q, modulus.iter().map(|c| q.from_rational(c.clone())).collect());
        if !is_irreducible(&f) {
            return Err(Error::InvalidField(format!("{f} is reducible over Q")));
        }
        Ok(Field(Arc::new(FieldDescriptor {
            kind: FieldKind::NumberField,
            repr: Repr::Rational(modulus),
        })))
    }

    /// Convenience: number field from integer coefficients.
    pub fn number_field_int(modulus: &[i64]) -> Result<Field> {
        Field::number_field(modulus.iter().map(|&c| rat(c)).collect())
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.repr {
            Repr::Rational(_) => 0,
            Repr::Modular(p, _) => *p,
        }
    }

    pub fn degree(&self) -> usize {
        match &self.0.repr {
            Repr::Rational(m) => m.len() - 1,
            Repr::Modular(_, m) => m.len() - 1,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, FieldKind::Rationals | FieldKind::PrimeField)
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, if finite and representable.
    pub fn order(&self) -> Option<u128> {
        match &self.0.repr {
            Repr::Rational(_) => None,
            Repr::Modular(p, m) => (*p as u128).checked_pow((m.len() - 1) as u32),
        }
    }

    /// The modulus as a polynomial over the prime field.
    pub fn modulus(&self) -> Poly {
        let prime = self.prime_field();
        let coeffs = match &self.0.repr {
            Repr::Rational(m) => m.iter().map(|c| prime.from_rational(c.clone())).collect(),
            Repr::Modular(_, m) => m.iter().map(|&c| prime.from_u64(c)).collect(),
        };
        Poly::from_coeffs(&prime, coeffs)
    }

    /// Modulus coefficients, little-endian, for serialization.
    pub fn modulus_coords(&self) -> Coords {
        match &self.0.repr {
            Repr::Rational(m) => Coords::Rational(m.clone()),
            Repr::Modular(_, m) => Coords::Modular(m.clone()),
        }
    }

    pub fn prime_field(&self) -> Field {
        match &self.0.repr {
            Repr::Rational(_) if self.is_prime_field() => self.clone(),
            Repr::Rational(_) => Field::rationals(),
            Repr::Modular(_, _) if self.is_prime_field() => self.clone(),
            Repr::Modular(p, _) => Field::prime(*p).expect("characteristic is prime"),
        }
    }

    pub fn name(&self) -> String {
        match self.0.kind {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::PrimeField => format!("F_{}", self.characteristic()),
            FieldKind::NumberField => format!("Q[a]/({})", self.modulus()),
            FieldKind::FiniteField => {
                format!("F_{}[a]/({})", self.characteristic(), self.modulus())
            }
        }
    }

    fn make(&self, coords: Coords) -> FieldElement {
        FieldElement { field: self.clone(), coords }
    }

    pub fn zero(&self) -> FieldElement {
        let d = self.degree();
        match &self.0.repr {
            Repr::Rational(_) => self.make(Coords::Rational(vec![BigRational::zero(); d])),
            Repr::Modular(_, _) => self.make(Coords::Modular(vec![0; d])),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let d = self.degree();
        match &self.0.repr {
            Repr::Rational(_) => {
                let mut v = vec![BigRational::zero(); d];
                v[0] = rat(n);
                self.make(Coords::Rational(v))
            }
            Repr::Modular(p, _) => {
                let mut v = vec![0; d];
                v[0] = n.rem_euclid(*p as i64) as u64;
                self.make(Coords::Modular(v))
            }
        }
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        match &self.0.repr {
            Repr::Rational(_) => self.from_rational(BigRational::from_integer(BigInt::from(n))),
            Repr::Modular(p, _) => {
                let mut v = vec![0; self.degree()];
                v[0] = n % p;
                self.make(Coords::Modular(v))
            }
        }
    }

    /// Embeds a rational scalar. In characteristic p the denominator must be
    /// a unit mod p.
    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        match &self.0.repr {
            Repr::Rational(_) => {
                let mut v = vec![BigRational::zero(); self.degree()];
                v[0] = q;
                self.make(Coords::Rational(v))
            }
            Repr::Modular(p, _) => {
                let pb = BigInt::from(*p);
                let to_mod = |n: &BigInt| -> u64 {
                    let r = ((n % &pb) + &pb) % &pb;
                    r.to_u64().unwrap()
                };
                let b = ModularBase(*p);
                let num = to_mod(q.numer());
                let den = b.inv(&to_mod(q.denom())).expect("denominator invertible mod p");
                let mut v = vec![0; self.degree()];
                v[0] = b.mul(&num, &den);
                self.make(Coords::Modular(v))
            }
        }
    }

    /// The generator `a` of the power basis (1 for prime fields).
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.one();
        }
        let mut e = self.zero();
        match &mut e.coords {
            Coords::Rational(v) => v[1] = BigRational::one(),
            Coords::Modular(v) => v[1] = 1,
        }
        e
    }

    /// Builds an element from raw coordinates, reducing them (mod p) and
    /// checking the length.
    pub fn element(&self, coords: Coords) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "element of {} needs {} coordinates, got {}",
                self.name(),
                self.degree(),
                coords.len()
            )));
        }
        match (&self.0.repr, coords) {
            (Repr::Rational(_), Coords::Rational(v)) => Ok(self.make(Coords::Rational(v))),
            (Repr::Modular(p, _), Coords::Modular(v)) => {
                Ok(self.make(Coords::Modular(v.into_iter().map(|c| c % p).collect())))
            }
            _ => Err(Error::FieldMismatch(self.name(), "coordinates of other characteristic".into())),
        }
    }

    /// Element `Σ c_i a^i` for prime-field scalars `c_i`.
    pub fn from_prime_coords(&self, cs: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(cs.len(), self.degree());
        match &self.0.repr {
            Repr::Rational(_) => self.make(Coords::Rational(
                cs.iter().map(|c| c.rational_coords()[0].clone()).collect(),
            )),
            Repr::Modular(_, _) => {
                self.make(Coords::Modular(cs.iter().map(|c| c.modular_coords()[0]).collect()))
            }
        }
    }

    /// Lifts a prime-field scalar into this field.
    pub fn from_prime(&self, c: &FieldElement) -> FieldElement {
        match &c.coords {
            Coords::Rational(v) => self.from_rational(v[0].clone()),
            Coords::Modular(v) => self.from_u64(v[0]),
        }
    }

    /// Index of an element of a finite field: `Σ c_i p^i`.
    pub fn index_of(&self, a: &FieldElement) -> u128 {
        let p = self.characteristic() as u128;
        a.modular_coords().iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    /// Inverse of [`Field::index_of`].
    pub fn element_at(&self, mut idx: u128) -> FieldElement {
        let p = self.characteristic() as u128;
        assert!(p > 0, "element_at needs a finite field");
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push((idx % p) as u64);
            idx /= p;
        }
        self.make(Coords::Modular(v))
    }

    /// All elements in index order (finite fields only).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.order().expect("elements() needs a finite field of representable order");
        (0..n).map(move |i| self.element_at(i))
    }

    /// A pseudo-random element; coordinates in `[-bound, bound]` over ℚ and
    /// uniform over F_p.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match &self.0.repr {
            Repr::Rational(_) => self.make(Coords::Rational(
                (0..self.degree()).map(|_| rat(rng.gen_range(-bound..=bound))).collect(),
            )),
            Repr::Modular(p, _) => {
                self.make(Coords::Modular((0..self.degree()).map(|_| rng.gen_range(0..*p)).collect()))
            }
        }
    }

    /// Checked binary/unary arithmetic with explicit owner checks.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<ArithValue> {
        let check = |x: &FieldElement| {
            if &x.field != self {
                Err(Error::FieldMismatch(self.name(), x.field.name()))
            } else {
                Ok(())
            }
        };
        check(a)?;
        if let Some(b) = b {
            check(b)?;
        }
        let need_b = || b.ok_or_else(|| Error::BadParams(format!("{op:?} needs two operands")));
        Ok(match op {
            ArithOp::Add => ArithValue::Element(a + need_b()?),
            ArithOp::Sub => ArithValue::Element(a - need_b()?),
            ArithOp::Mul => ArithValue::Element(a * need_b()?),
            ArithOp::Neg => ArithValue::Element(-a),
            ArithOp::Inv => ArithValue::Element(a.inv()?),
            ArithOp::Eq => ArithValue::Bool(a == need_b()?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithValue {
    Element(FieldElement),
    Bool(bool),
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub(crate) fn rational_coords(&self) -> &[BigRational] {
        match &self.coords {
            Coords::Rational(v) => v,
            Coords::Modular(_) => panic!("characteristic p element has no rational coordinates"),
        }
    }

    pub(crate) fn modular_coords(&self) -> &[u64] {
        match &self.coords {
            Coords::Modular(v) => v,
            Coords::Rational(_) => panic!("characteristic 0 element has no modular coordinates"),
        }
    }

    /// Coordinates as prime-field elements.
    pub fn prime_coords(&self) -> Vec<FieldElement> {
        let prime = self.field.prime_field();
        match &self.coords {
            Coords::Rational(v) => v.iter().map(|c| prime.from_rational(c.clone())).collect(),
            Coords::Modular(v) => v.iter().map(|&c| prime.from_u64(c)).collect(),
        }
    }

    /// The rational value of a prime-field element over ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.coords {
            Coords::Rational(v) if v[1..].iter().all(|c| c.is_zero()) => Some(v[0].clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Rational(v) => v.iter().all(|c| c.is_zero()),
            Coords::Modular(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.coords {
            Coords::Rational(v) => v[0].is_one() && v[1..].iter().all(|c| c.is_zero()),
            Coords::Modular(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_scalar(&self) -> bool {
        match &self.coords {
            Coords::Rational(v) => v[1..].iter().all(|c| c.is_zero()),
            Coords::Modular(v) => v[1..].iter().all(|&c| c == 0),
        }
    }

    fn check_same(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field.name(),
            other.field.name()
        );
    }

    fn zip_with<FQ, FP>(&self, other: &FieldElement, fq: FQ, fp: FP) -> FieldElement
    where
        FQ: Fn(&BigRational, &BigRational) -> BigRational,
        FP: Fn(u64, u64, u64) -> u64,
    {
        self.check_same(other);
        let coords = match (&self.field.0.repr, &self.coords, &other.coords) {
            (Repr::Rational(_), Coords::Rational(x), Coords::Rational(y)) => {
                Coords::Rational(x.iter().zip(y).map(|(a, b)| fq(a, b)).collect())
            }
            (Repr::Modular(p, _), Coords::Modular(x), Coords::Modular(y)) => {
                Coords::Modular(x.iter().zip(y).map(|(&a, &b)| fp(a, b, *p)).collect())
            }
            _ => unreachable!("coordinates match their field"),
        };
        self.field.make(coords)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coords = match (&self.field.0.repr, &self.coords) {
            (Repr::Rational(m), Coords::Rational(x)) => {
                if x.len() == 1 {
                    Coords::Rational(vec![x[0].recip()])
                } else {
                    Coords::Rational(base::inv_mod(&RationalBase, x, m).ok_or(Error::DivisionByZero)?)
                }
            }
            (Repr::Modular(p, m), Coords::Modular(x)) => {
                let b = ModularBase(*p);
                if x.len() == 1 {
                    Coords::Modular(vec![b.inv(&x[0]).ok_or(Error::DivisionByZero)?])
                } else {
                    Coords::Modular(base::inv_mod(&b, x, m).ok_or(Error::DivisionByZero)?)
                }
            }
            _ => unreachable!("coordinates match their field"),
        };
        Ok(self.field.make(coords))
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Lexicographic comparison of coordinate vectors (index 0 first).
    pub fn cmp_lex(&self, other: &FieldElement) -> Ordering {
        match (&self.coords, &other.coords) {
            (Coords::Rational(x), Coords::Rational(y)) => x.cmp(y),
            (Coords::Modular(x), Coords::Modular(y)) => x.cmp(y),
            _ => panic!("comparing elements of different characteristic"),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.zip_with(rhs, |a, b| a + b, |a, b, p| {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        })
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.zip_with(rhs, |a, b| a - b, |a, b, p| if a >= b { a - b } else { a + p - b })
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let coords = match (&self.field.0.repr, &self.coords, &rhs.coords) {
            (Repr::Rational(m), Coords::Rational(x), Coords::Rational(y)) => {
                if x.len() == 1 {
                    Coords::Rational(vec![&x[0] * &y[0]])
                } else {
                    Coords::Rational(base::mul_mod(&RationalBase, x, y, m))
                }
            }
            (Repr::Modular(p, m), Coords::Modular(x), Coords::Modular(y)) => {
                if x.len() == 1 {
                    Coords::Modular(vec![x[0] * y[0] % p])
                } else {
                    Coords::Modular(base::mul_mod(&ModularBase(*p), x, y, m))
                }
            }
            _ => unreachable!("coordinates match their field"),
        };
        self.field.make(coords)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let coords = match (&self.field.0.repr, &self.coords) {
            (Repr::Rational(_), Coords::Rational(x)) => Coords::Rational(x.iter().map(|c| -c).collect()),
            (Repr::Modular(p, _), Coords::Modular(x)) => {
                Coords::Modular(x.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
            }
            _ => unreachable!("coordinates match their field"),
        };
        self.field.make(coords)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, bool)> = match &self.coords {
            Coords::Rational(v) => v
                .iter()
                .map(|c| (fmt_rational(&c.abs()), c.is_negative()))
                .collect(),
            Coords::Modular(v) => v.iter().map(|c| (c.to_string(), false)).collect(),
        };
        let mut out = String::new();
        for (i, (mag, neg)) in terms.iter().enumerate().rev() {
            if mag == "0" {
                continue;
            }
            if out.is_empty() {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            match i {
                0 => out.push_str(mag),
                _ => {
                    if mag != "1" {
                        out.push_str(mag);
                        out.push('*');
                    }
                    out.push('a');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::finite_with_modulus(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn f4_generator_squared() {
        let f = f4();
        let t = f.generator();
        let tt = &t * &t;
        assert_eq!(tt, &t + &f.one());
    }

    #[test]
    fn gaussian_inverse() {
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        let i = qi.generator();
        let x = &qi.one() + &i;
        let half = qi.from_rational(BigRational::new(1.into(), 2.into()));
        let expected = &(&qi.one() - &i) * &half;
        assert_eq!(x.inv().unwrap(), expected);
    }

    #[test]
    fn additive_inverse_everywhere() {
        for f in [Field::rationals(), Field::prime(7).unwrap(), f4(), Field::number_field_int(&[1, 1, 1]).unwrap()] {
            let a = &f.generator() + &f.from_int(3);
            assert!((&a + &(-&a)).is_zero());
        }
    }

    #[test]
    fn inv_zero_is_error() {
        assert_eq!(f4().zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Field::rationals().zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn arith_reports_mismatch() {
        let a = Field::prime(3).unwrap().one();
        let b = Field::prime(5).unwrap().one();
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(
            f3.arith(ArithOp::Add, &a, Some(&b)),
            Err(Error::FieldMismatch(_, _))
        ));
        assert_eq!(f3.arith(ArithOp::Eq, &a, Some(&a)).unwrap(), ArithValue::Bool(true));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Field::finite_with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(Field::number_field_int(&[-1, 0, 1]).is_err());
        assert_eq!(Field::number_field_int(&[2, 1]).unwrap(), Field::rationals());
    }

    #[test]
    fn canonical_small_fields() {
        assert_eq!(Field::finite(2, 2).unwrap(), f4());
        assert_eq!(Field::finite(2, 3).unwrap().modulus_coords(), Coords::Modular(vec![1, 1, 0, 1]));
        assert_eq!(Field::finite(2, 4).unwrap().modulus_coords(), Coords::Modular(vec![1, 1, 0, 0, 1]));
        assert_eq!(Field::finite(3, 2).unwrap().modulus_coords(), Coords::Modular(vec![1, 0, 1]));
        assert_eq!(Field::finite(5, 1).unwrap(), Field::prime(5).unwrap());
    }

    #[test]
    fn display_forms() {
        let f = f4();
        assert_eq!((&f.generator() + &f.one()).to_string(), "a + 1");
        let q = Field::rationals();
        assert_eq!(q.from_rational(BigRational::new((-3).into(), 4.into())).to_string(), "-3/4");
    }

    #[test]
    fn enumerate_and_index_roundtrip() {
        let f = Field::finite(3, 2).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len(), 9);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(f.index_of(e), i as u128);
        }
    }
}
