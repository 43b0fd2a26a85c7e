//! The truncated valuation ring `O/p^m` of the unramified dyadic field with
//! residue field `GF(2^f)` and uniformizer `2`, realised as the Galois ring
//! `GR(2^m, f) = (Z/2^m)[X]/(h)` where `h` is the 0/1 lift of the field
//! modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{FieldElem, FieldSpec, MAX_DEGREE};

/// Largest supported precision exponent.
pub const MAX_PRECISION: u32 = 63;

/// Default working precision. The deepest congruence checked is mod `p^3`;
/// one more digit absorbs carries.
pub const DEFAULT_PRECISION: u32 = 4;

const D: usize = MAX_DEGREE as usize;

/// Coordinates over `Z/2^m` in the basis `1, X, ..., X^{f-1}`. Unused
/// trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    c: [u64; D],
}

impl RingElem {
    pub fn coeffs(&self) -> &[u64; D] {
        &self.c
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let used = self.c.iter().rposition(|&v| v != 0).map_or(1, |i| i + 1);
        f.debug_list().entries(&self.c[..used]).finish()
    }
}

/// Parameters of `GR(2^m, f)`.
#[derive(Debug)]
pub struct RingSpec {
    field: Arc<FieldSpec>,
    m: u32,
    f: usize,
    mask: u64,
    // Low coefficients h_0..h_{f-1} of the monic modulus h.
    modulus: [u64; D],
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.field == other.field
    }
}

impl Eq for RingSpec {}

impl RingSpec {
    pub fn new(field: Arc<FieldSpec>, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_PRECISION {
            return Err(Error::Usage(format!(
                "precision m = {m} outside supported range 1..={MAX_PRECISION}"
            )));
        }
        let f = field.degree() as usize;
        let mut modulus = [0u64; D];
        for (i, slot) in modulus.iter_mut().take(f).enumerate() {
            *slot = (field.modulus() >> i) & 1;
        }
        Ok(RingSpec {
            field,
            m,
            f,
            mask: (1u64 << m) - 1,
            modulus,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    /// Number of elements, `2^{mf}`, if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        1u64.checked_shl(self.m * self.f as u32)
    }

    /// Builds an element from coordinates, reducing each mod `2^m`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<RingElem> {
        if coeffs.len() > self.f {
            return Err(Error::Usage(format!(
                "{} coordinates given for a ring of degree {}",
                coeffs.len(),
                self.f
            )));
        }
        let mut c = [0u64; D];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v & self.mask;
        }
        Ok(RingElem { c })
    }

    pub fn zero(&self) -> RingElem {
        RingElem::default()
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    /// Image of an integer.
    pub fn from_int(&self, v: i64) -> RingElem {
        let mut c = [0u64; D];
        c[0] = (v as u64) & self.mask;
        RingElem { c }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut c = [0u64; D];
        for (ci, (x, y)) in c.iter_mut().zip(a.c.iter().zip(&b.c)).take(self.f) {
            *ci = x.wrapping_add(*y) & self.mask;
        }
        RingElem { c }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut c = [0u64; D];
        for (ci, (x, y)) in c.iter_mut().zip(a.c.iter().zip(&b.c)).take(self.f) {
            *ci = x.wrapping_sub(*y) & self.mask;
        }
        RingElem { c }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = self.f;
        let mut prod = [0u64; 2 * D];
        for i in 0..f {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = prod[i + j].wrapping_add(a.c[i].wrapping_mul(b.c[j]));
            }
        }
        // X^f = -(h_0 + ... + h_{f-1} X^{f-1})
        for k in (f..2 * f - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..f {
                if self.modulus[j] != 0 {
                    prod[k - f + j] = prod[k - f + j].wrapping_sub(top);
                }
            }
        }
        let mut c = [0u64; D];
        for i in 0..f {
            c[i] = prod[i] & self.mask;
        }
        RingElem { c }
    }

    pub fn square(&self, a: &RingElem) -> RingElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut acc = self.one();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplication by the uniformizer `2`.
    pub fn mul_uniformizer(&self, a: &RingElem) -> RingElem {
        self.add(a, a)
    }

    /// `a / 2` for `a` in `p`. The result is determined mod `p^{m-1}`; its
    /// top digit is returned as zero.
    pub fn div_uniformizer(&self, a: &RingElem) -> Result<RingElem> {
        if self.valuation(a) == 0 {
            return Err(Error::Domain("division by the uniformizer of a unit".into()));
        }
        let mut c = [0u64; D];
        for (ci, x) in c.iter_mut().zip(&a.c).take(self.f) {
            *ci = x >> 1;
        }
        Ok(RingElem { c })
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.c[..self.f].iter().all(|&v| v == 0)
    }

    /// Largest `t <= m` with `a` in `p^t`; zero has valuation `m`.
    pub fn valuation(&self, a: &RingElem) -> u32 {
        a.c[..self.f]
            .iter()
            .map(|&v| if v == 0 { self.m } else { v.trailing_zeros() })
            .min()
            .unwrap_or(self.m)
            .min(self.m)
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.valuation(a) == 0
    }

    /// `a == b mod p^t`. Fails when `t` exceeds the working precision.
    pub fn eq_mod(&self, a: &RingElem, b: &RingElem, t: u32) -> Result<bool> {
        if t > self.m {
            return Err(Error::Precision { needed: t, have: self.m });
        }
        Ok(self.valuation(&self.sub(a, b)) >= t)
    }

    /// Residue map onto `k`.
    pub fn reduce(&self, a: &RingElem) -> FieldElem {
        let bits = (0..self.f).fold(0u32, |acc, i| acc | (((a.c[i] & 1) as u32) << i));
        FieldElem(bits)
    }

    /// Lift with 0/1 coordinates.
    pub fn lift(&self, a: FieldElem) -> RingElem {
        let mut c = [0u64; D];
        for (i, slot) in c.iter_mut().take(self.f).enumerate() {
            *slot = u64::from((a.0 >> i) & 1);
        }
        RingElem { c }
    }

    /// Teichmuller representative: the unique lift fixed by `t -> t^q`.
    pub fn teichmuller(&self, a: FieldElem) -> RingElem {
        let mut t = self.lift(a);
        // Each q-th power gains one 2-adic digit of accuracy.
        for _ in 0..=self.m {
            let next = self.frobenius_power(&t);
            if next == t {
                return t;
            }
            t = next;
        }
        unreachable!("Teichmuller iteration converges within m steps")
    }

    /// `a^q`, computed by `f` squarings.
    fn frobenius_power(&self, a: &RingElem) -> RingElem {
        (0..self.f).fold(*a, |acc, _| self.square(&acc))
    }

    /// Inverse of a unit, by Newton lifting `y <- y(2 - a y)` from the
    /// residue-field inverse.
    pub fn invert(&self, a: &RingElem) -> Result<RingElem> {
        let v = self.valuation(a);
        if v > 0 {
            return Err(Error::NotUnit { valuation: v });
        }
        let residue_inv = self.field.inv(self.reduce(a))?;
        let mut y = self.lift(residue_inv);
        let two = self.from_int(2);
        let one = self.one();
        // Quadratic convergence: ceil(log2 m) + 1 rounds suffice.
        for _ in 0..8 {
            let ay = self.mul(a, &y);
            if ay == one {
                return Ok(y);
            }
            y = self.mul(&y, &self.sub(&two, &ay));
        }
        unreachable!("Newton iteration for a unit converges")
    }

    /// Teichmuller digits `d_0, d_1, ...` with `a = sum 2^i [d_i]`,
    /// trailing zero digits dropped.
    pub fn to_digits(&self, a: &RingElem) -> Vec<FieldElem> {
        let mut digits = Vec::with_capacity(self.m as usize);
        let mut rest = *a;
        for _ in 0..self.m {
            let d = self.reduce(&rest);
            digits.push(d);
            let diff = self.sub(&rest, &self.teichmuller(d));
            rest = self.div_uniformizer(&diff).unwrap_or_else(|_| self.zero());
        }
        while digits.last() == Some(&FieldElem::ZERO) {
            digits.pop();
        }
        digits
    }

    /// Inverse of [`to_digits`](Self::to_digits); digits past `m` are rejected.
    pub fn from_digits(&self, digits: &[FieldElem]) -> Result<RingElem> {
        if digits.len() > self.m as usize {
            return Err(Error::Usage(format!(
                "{} Teichmuller digits given at precision m = {}",
                digits.len(),
                self.m
            )));
        }
        let mut acc = self.zero();
        for &d in digits.iter().rev() {
            if !self.field.contains(d) {
                return Err(Error::Usage(format!("digit {} is not in GF({})", d.0, self.field.q())));
            }
            acc = self.add(&self.mul_uniformizer(&acc), &self.teichmuller(d));
        }
        Ok(acc)
    }

    /// Every element, for exhaustive checks on small rings.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let total = self.cardinality().expect("ring too large to enumerate");
        (0..total).map(move |idx| {
            let mut c = [0u64; D];
            for (i, slot) in c.iter_mut().take(self.f).enumerate() {
                *slot = (idx >> (i as u32 * self.m)) & self.mask;
            }
            RingElem { c }
        })
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> RingElem {
        let mut c = [0u64; D];
        for slot in c.iter_mut().take(self.f) {
            *slot = rng.random::<u64>() & self.mask;
        }
        RingElem { c }
    }

    /// Uniform element of `p^t`.
    pub fn random_in_ideal<R: rand::Rng + ?Sized>(&self, rng: &mut R, t: u32) -> RingElem {
        let x = self.random(rng);
        self.mul(&x, &self.from_int(1i64 << t.min(self.m)))
    }

    pub fn random_unit<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> RingElem {
        loop {
            let x = self.random(rng);
            if self.is_unit(&x) {
                return x;
            }
        }
    }

    /// Element of `p^t` not in `p^{t+1}`.
    pub fn random_of_valuation<R: rand::Rng + ?Sized>(&self, rng: &mut R, t: u32) -> RingElem {
        let u = self.random_unit(rng);
        self.mul(&u, &self.from_int(1i64 << t.min(self.m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(f: u32, m: u32) -> RingSpec {
        RingSpec::new(Arc::new(FieldSpec::new(f, None).unwrap()), m).unwrap()
    }

    // Schoolbook multiply over Z then reduce mod (2^m, h) by long division,
    // all in i128 without masking until the end.
    fn oracle_mul(r: &RingSpec, a: &RingElem, b: &RingElem) -> Vec<u64> {
        let f = r.degree();
        let h: Vec<i128> = (0..=f).map(|i| ((r.field().modulus() >> i) & 1) as i128).collect();
        let mut p = vec![0i128; 2 * f];
        for i in 0..f {
            for j in 0..f {
                p[i + j] += a.coeffs()[i] as i128 * b.coeffs()[j] as i128;
            }
        }
        for k in (f..2 * f).rev() {
            let t = p[k];
            for j in 0..=f {
                p[k - f + j] -= t * h[j];
            }
        }
        let modulus = 1i128 << r.precision();
        p[..f].iter().map(|v| v.rem_euclid(modulus) as u64).collect()
    }

    #[test]
    fn construction() {
        assert!(RingSpec::new(Arc::new(FieldSpec::new(2, None).unwrap()), 0).is_err());
        assert_eq!(ring(2, 4).cardinality(), Some(256));
        assert_eq!(ring(2, 4).elements().count(), 256);
        assert_eq!(ring(1, 3).cardinality(), Some(8));
    }

    #[test]
    fn m_one_collapses_to_residue_field() {
        let r = ring(2, 1);
        let k = r.field().clone();
        for a in k.elements() {
            for b in k.elements() {
                let prod = r.mul(&r.lift(a), &r.lift(b));
                assert_eq!(r.reduce(&prod), k.mul(a, b));
            }
        }
    }

    #[test]
    fn z8_examples() {
        let r = ring(1, 3);
        assert_eq!(r.mul(&r.from_int(5), &r.from_int(5)), r.one());
        assert_eq!(r.invert(&r.from_int(3)).unwrap(), r.from_int(3));
        assert_eq!(r.invert(&r.from_int(2)), Err(Error::NotUnit { valuation: 1 }));
        assert_eq!(r.valuation(&r.from_int(4)), 2);
        assert_eq!(r.valuation(&r.zero()), 3);
        assert_eq!(r.reduce(&r.from_int(5)), FieldElem::ONE);
        assert_eq!(r.teichmuller(FieldElem::ONE), r.one());
    }

    #[test]
    fn f1_matches_integer_arithmetic() {
        for m in 1..=8 {
            let r = ring(1, m);
            let modulus = 1i64 << m;
            for a in 0..modulus {
                for b in 0..modulus {
                    let (x, y) = (r.from_int(a), r.from_int(b));
                    assert_eq!(r.mul(&x, &y), r.from_int(a * b % modulus));
                    assert_eq!(r.add(&x, &y), r.from_int((a + b) % modulus));
                    assert_eq!(r.sub(&x, &y), r.from_int((a - b).rem_euclid(modulus)));
                }
            }
        }
    }

    #[test]
    fn mul_matches_schoolbook_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (f, m) in [(2, 3), (3, 5), (4, 7), (8, 20)] {
            let r = ring(f, m);
            for _ in 0..1000 {
                let (a, b) = (r.random(&mut rng), r.random(&mut rng));
                assert_eq!(&r.mul(&a, &b).coeffs()[..f as usize], &oracle_mul(&r, &a, &b)[..]);
            }
        }
    }

    #[test]
    fn inverses_and_negation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = ring(2, 3);
        for _ in 0..1000 {
            let u = r.random_unit(&mut rng);
            assert_eq!(r.mul(&u, &r.invert(&u).unwrap()), r.one());
            let x = r.random(&mut rng);
            assert!(r.is_zero(&r.add(&x, &r.neg(&x))));
            let y = r.random(&mut rng);
            assert_eq!(r.reduce(&r.add(&x, &y)), r.field().add(r.reduce(&x), r.reduce(&y)));
        }
    }

    #[test]
    fn valuation_of_twice_units_exhaustive() {
        let r = ring(2, 3);
        for u in r.elements().filter(|u| r.is_unit(u)) {
            assert_eq!(r.valuation(&r.mul_uniformizer(&u)), 1);
        }
    }

    #[test]
    fn teichmuller_properties_exhaustive() {
        for f in 1..=4 {
            for m in 1..=6 {
                let r = ring(f, m);
                let k = r.field().clone();
                assert_eq!(r.teichmuller(FieldElem::ZERO), r.zero());
                assert_eq!(r.teichmuller(FieldElem::ONE), r.one());
                for a in k.elements() {
                    let t = r.teichmuller(a);
                    assert_eq!(r.reduce(&t), a);
                    assert_eq!(r.pow(&t, k.q() as u64), t);
                    for b in k.elements() {
                        assert_eq!(r.mul(&t, &r.teichmuller(b)), r.teichmuller(k.mul(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn digits_round_trip_exhaustive() {
        let r = ring(2, 3);
        for x in r.elements() {
            assert_eq!(r.from_digits(&r.to_digits(&x)).unwrap(), x);
        }
        assert!(r.from_digits(&[FieldElem::ONE; 4]).is_err());
    }

    #[test]
    fn eq_mod_respects_precision() {
        let r = ring(1, 3);
        assert!(r.eq_mod(&r.from_int(1), &r.from_int(5), 2).unwrap());
        assert!(!r.eq_mod(&r.from_int(1), &r.from_int(5), 3).unwrap());
        assert_eq!(
            r.eq_mod(&r.zero(), &r.zero(), 4),
            Err(Error::Precision { needed: 4, have: 3 })
        );
    }
}
