use std::fmt;

use super::factor::roots;
use super::{Field, FieldElement, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A field homomorphism `source → target`, determined by the image of the
/// source generator.
#[derive(Clone)]
pub struct FieldEmbedding {
    source: Field,
    target: Field,
    generator_image: FieldElement,
    /// Images of the source power basis `1, a, a², …`.
    basis_images: Vec<FieldElement>,
}

impl fmt::Debug for FieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (a |-> {})", self.source, self.target, self.generator_image)
    }
}

impl PartialEq for FieldEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.generator_image == other.generator_image
    }
}
impl Eq for FieldEmbedding {}

impl FieldEmbedding {
    /// Builds the embedding sending the source generator to `image`, checking
    /// that `image` is a root of the source modulus.
    pub fn new(source: &Field, target: &Field, image: FieldElement) -> Result<FieldEmbedding> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::NoEmbedding(source.name(), target.name()));
        }
        if image.field() != target {
            return Err(Error::FieldMismatch(target.name(), image.field().name()));
        }
        let image = if source.degree() == 1 { target.one() } else { image };
        if source.degree() > 1 {
            let m = source.modulus().lift_to(target);
            if !m.eval(&image).is_zero() {
                return Err(Error::InvalidField(format!(
                    "{image} is not a root of {} in {}",
                    source.modulus(),
                    target.name()
                )));
            }
        }
        let mut basis_images = Vec::with_capacity(source.degree());
        let mut acc = target.one();
        for _ in 0..source.degree() {
            basis_images.push(acc.clone());
            acc = &acc * &image;
        }
        Ok(FieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            generator_image: image,
            basis_images,
        })
    }

    pub fn identity(field: &Field) -> FieldEmbedding {
        FieldEmbedding::new(field, field, field.generator()).expect("identity embedding")
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn generator_image(&self) -> &FieldElement {
        &self.generator_image
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.generator_image == self.source.generator()
    }

    /// Degree `[target : source]`.
    pub fn degree(&self) -> usize {
        self.target.degree() / self.source.degree()
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        assert!(a.field() == &self.source, "element of {} fed to embedding from {}", a.field(), self.source);
        let mut acc = self.target.zero();
        for (c, img) in a.prime_coords().iter().zip(&self.basis_images) {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&self.target.from_prime(c) * img);
        }
        acc
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        p.map_coeffs(&self.target, |c| self.apply(c))
    }

    /// The preimage of `b`, or `None` when `b` is not in the image. Decided
    /// by a linear solve over the prime field.
    pub fn preimage(&self, b: &FieldElement) -> Option<FieldElement> {
        let prime = self.target.prime_field();
        let cols: Vec<Vec<FieldElement>> = self.basis_images.iter().map(|e| e.prime_coords()).collect();
        let m = Matrix::from_fn(&prime, self.target.degree(), self.source.degree(), |i, j| cols[j][i].clone());
        let x = m.solve(&b.prime_coords()).expect("dimensions agree")?;
        Some(self.source.from_prime_coords(&x))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding> {
        if next.source != self.target {
            return Err(Error::FieldMismatch(self.target.name(), next.source.name()));
        }
        FieldEmbedding::new(&self.source, &next.target, next.apply(&self.generator_image))
    }
}

/// The embedding `E → F` whose generator image is the least root of `E`'s
/// modulus in `F` (lexicographic order on coordinates). Deterministic.
pub fn embed_find(e: &Field, f: &Field) -> Result<FieldEmbedding> {
    if e.characteristic() != f.characteristic() {
        return Err(Error::NoEmbedding(e.name(), f.name()));
    }
    if e.degree() == 1 {
        return FieldEmbedding::new(e, f, f.one());
    }
    if e == f {
        return Ok(FieldEmbedding::identity(f));
    }
    if !f.degree().is_multiple_of(e.degree()) {
        return Err(Error::NoEmbedding(e.name(), f.name()));
    }
    let m = e.modulus().lift_to(f);
    let rs = roots(&m);
    match rs.into_iter().next() {
        Some(r) => FieldEmbedding::new(e, f, r),
        None => Err(Error::NoEmbedding(e.name(), f.name())),
    }
}

/// Minimal polynomial over the prime field of an element, via the first
/// linear dependence among its powers.
pub fn min_poly_over_prime(a: &FieldElement) -> Poly {
    let field = a.field();
    let prime = field.prime_field();
    let d = field.degree();
    let mut powers: Vec<Vec<FieldElement>> = Vec::new();
    let mut acc = field.one();
    for k in 0..=d {
        let v = acc.prime_coords();
        if k > 0 {
            let m = Matrix::from_fn(&prime, d, k, |i, j| powers[j][i].clone());
            if let Some(x) = m.solve(&v).expect("dimensions agree") {
                let mut coeffs: Vec<FieldElement> = x.iter().map(|c| -c).collect();
                coeffs.push(prime.one());
                return Poly::from_coeffs(&prime, coeffs);
            }
        }
        powers.push(v);
        acc = &acc * a;
    }
    unreachable!("powers of an element of a degree-{d} field are dependent after {d} steps")
}

/// Dimension over the prime field of the subalgebra (= subfield) generated by
/// `gens`, computed by closing `{1}` under multiplication by the generators.
fn generated_dimension(field: &Field, gens: &[FieldElement]) -> usize {
    let prime = field.prime_field();
    let mut basis: Vec<FieldElement> = vec![field.one()];
    let mut queue = vec![field.one()];
    let rank_of = |b: &[FieldElement]| {
        Matrix::from_fn(&prime, b.len(), field.degree(), |i, j| b[i].prime_coords()[j].clone()).rank()
    };
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = &v * g;
            let mut trial = basis.clone();
            trial.push(w.clone());
            if rank_of(&trial) > basis.len() {
                basis.push(w.clone());
                queue.push(w);
            }
        }
    }
    basis.len()
}

/// The smallest subfield of `field` containing the prime base and `gens`,
/// together with its embedding into `field`.
///
/// Finite fields: `F_{p^m}` with `m` the lcm of the generators' degrees,
/// carried by the canonical modulus. Number fields: a primitive element
/// `Σ c^i g_i` with `c = 1, -1, 2, -2, …, ±20`. When the subfield is the
/// whole field (or the prime base), that field itself is returned.
pub fn subfield_generated(field: &Field, gens: &[FieldElement]) -> Result<(Field, FieldEmbedding)> {
    let prime = field.prime_field();
    let gens: Vec<FieldElement> = gens.iter().filter(|g| !g.is_prime_scalar()).cloned().collect();
    if gens.is_empty() {
        let emb = FieldEmbedding::new(&prime, field, field.one())?;
        return Ok((prime, emb));
    }
    if field.is_finite() {
        let m = gens
            .iter()
            .map(|g| min_poly_over_prime(g).deg())
            .fold(1usize, num_integer::lcm);
        if m == field.degree() {
            return Ok((field.clone(), FieldEmbedding::identity(field)));
        }
        let sub = Field::finite(field.characteristic(), m)?;
        let emb = embed_find(&sub, field)?;
        return Ok((sub, emb));
    }
    let dim = generated_dimension(field, &gens);
    if dim == field.degree() {
        return Ok((field.clone(), FieldEmbedding::identity(field)));
    }
    let mut multipliers = vec![1i64];
    for c in 1..=20 {
        multipliers.push(-c);
        if c < 20 {
            multipliers.push(c + 1);
        }
    }
    for c in multipliers {
        let ce = field.from_int(c);
        let mut weight = field.one();
        let mut gamma = field.zero();
        for g in &gens {
            gamma = &gamma + &(&weight * g);
            weight = &weight * &ce;
        }
        let mp = min_poly_over_prime(&gamma);
        if mp.deg() == dim {
            let sub = Field::number_field(mp.coeffs().iter().map(|c| c.to_rational().unwrap()).collect())?;
            let emb = FieldEmbedding::new(&sub, field, gamma)?;
            return Ok((sub, emb));
        }
    }
    Err(Error::Inconclusive("no primitive element among multipliers up to ±20".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inclusion() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let e = embed_find(&f2, &f4).unwrap();
        assert!(e.generator_image().is_one());
    }

    #[test]
    fn f4_into_f16() {
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let e = embed_find(&f4, &f16).unwrap();
        let r = e.generator_image().clone();
        // exhaustive oracle: collect all roots of t^2+t+1 in F_16 and take the least
        let mut all: Vec<_> = f16
            .elements()
            .filter(|x| (&(&(x * x) + x) + &f16.one()).is_zero())
            .collect();
        all.sort_by(|a, b| a.cmp_lex(b));
        assert_eq!(all.len(), 2);
        assert_eq!(r, all[0]);
        assert_eq!(embed_find(&f4, &f16).unwrap(), e);
    }

    #[test]
    fn no_embedding_by_degree() {
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        assert!(matches!(embed_find(&qi, &Field::rationals()), Err(Error::NoEmbedding(_, _))));
        let f4 = Field::finite(2, 2).unwrap();
        let f8 = Field::finite(2, 3).unwrap();
        assert!(embed_find(&f4, &f8).is_err());
    }

    #[test]
    fn preimage_membership() {
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let e = embed_find(&f4, &f16).unwrap();
        let t = f4.generator();
        assert_eq!(e.preimage(&e.apply(&t)), Some(t));
        assert_eq!(e.preimage(&f16.generator()), None);
    }

    #[test]
    fn composition() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let a = embed_find(&f2, &f4).unwrap();
        let b = embed_find(&f4, &f16).unwrap();
        let c = a.then(&b).unwrap();
        assert_eq!(c.source(), &f2);
        assert_eq!(c.target(), &f16);
    }

    #[test]
    fn subfield_examples() {
        let f16 = Field::finite(2, 4).unwrap();
        let (e, _) = subfield_generated(&f16, &[f16.one(), f16.zero()]).unwrap();
        assert_eq!(e, Field::prime(2).unwrap());
        let (e, emb) = subfield_generated(&f16, &[f16.generator()]).unwrap();
        assert_eq!(e, f16);
        assert!(emb.is_identity());
        // a cube root of unity generates F_4
        let w = f16.generator().pow(5);
        let (e, emb) = subfield_generated(&f16, std::slice::from_ref(&w)).unwrap();
        assert_eq!(e.degree(), 2);
        assert!(emb.preimage(&w).is_some());

        let qz = Field::number_field_int(&[1, 1, 1]).unwrap();
        let (e, _) = subfield_generated(&qz, &[qz.generator()]).unwrap();
        assert_eq!(e.degree(), 2);
    }

    #[test]
    fn subfield_of_biquadratic() {
        // Q(sqrt2, sqrt3) = Q(b) with b^4 - 10 b^2 + 1 = 0; sqrt2 = (b^3 - 9b)/2
        let k = Field::number_field_int(&[1, 0, -10, 0, 1]).unwrap();
        let b = k.generator();
        let half = k.from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        let s2 = (&b.pow(3) - &(&b * &k.from_int(9))) * &half;
        assert_eq!(&s2 * &s2, k.from_int(2));
        let (e, emb) = subfield_generated(&k, std::slice::from_ref(&s2)).unwrap();
        assert_eq!(e.degree(), 2);
        assert!(emb.preimage(&s2).is_some());
        assert!(emb.preimage(&b).is_none());
    }
}
