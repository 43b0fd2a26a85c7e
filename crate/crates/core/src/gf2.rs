//! The residue field `k = GF(2^f)` in a polynomial basis, its absolute trace
//! and the additive character `psi = (-1)^Tr`.
//!
//! Elements are plain bit patterns ([`FieldElem`]); every operation goes
//! through the owning [`FieldSpec`], which holds discrete log/exp tables
//! against a fixed primitive element `g`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree. Log tables hold `2^f` entries.
pub const MAX_DEGREE: u32 = 16;

/// Polynomial-basis coordinates of an element of `GF(2^f)`; bit `i` is the
/// coefficient of `X^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Degree of a nonzero polynomial over F2 packed in a `u64`.
fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

/// Remainder of `a` modulo `b` over F2.
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Carry-less product reduced modulo `modulus`.
fn clmul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    let f = degree(modulus);
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> f) & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn pow_mod(mut base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = poly_rem(1, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = clmul_mod(acc, base, modulus);
        }
        base = clmul_mod(base, base, modulus);
        e >>= 1;
    }
    acc
}

/// Returns a nontrivial factor of `p` if it is reducible over F2.
pub fn find_factor(p: u64) -> Option<u64> {
    let d = degree(p);
    (2u64..(1u64 << (d / 2 + 1)))
        .filter(|&c| degree(c) <= d / 2)
        .find(|&c| poly_rem(p, c) == 0)
}

/// Least (as an integer bit pattern) irreducible monic polynomial of degree `f`.
pub fn default_modulus(f: u32) -> u64 {
    ((1u64 << f)..(1u64 << (f + 1)))
        .find(|&p| find_factor(p).is_none())
        .expect("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The residue field `GF(2^f)` with a fixed modulus and primitive element.
///
/// Immutable once built; share it behind an `Arc`.
pub struct FieldSpec {
    f: u32,
    modulus: u64,
    q: u32,
    generator: FieldElem,
    // exp has 2(q-1) entries so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_mask: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("f", &self.f)
            .field("modulus", &format_args!("{:#b}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

// Everything else is derived from the degree and modulus.
impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `GF(2^f)`. Without a modulus the least irreducible polynomial
    /// of degree `f` is used, so reports are reproducible.
    pub fn new(f: u32, modulus: Option<u64>) -> Result<Self> {
        if f == 0 || f > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "degree f = {f} outside supported range 1..={MAX_DEGREE}"
            )));
        }
        let modulus = match modulus {
            None => default_modulus(f),
            Some(p) => {
                if p == 0 || degree(p) != f {
                    return Err(Error::InvalidField(format!(
                        "modulus {p:#b} does not have degree {f}"
                    )));
                }
                if let Some(factor) = find_factor(p) {
                    return Err(Error::ReducibleModulus { modulus: p, factor });
                }
                p
            }
        };
        let q = 1u32 << f;
        let order = u64::from(q - 1);
        let factors = prime_factors(order);
        let generator = (1..u64::from(q))
            .find(|&c| factors.iter().all(|&r| pow_mod(c, order / r, modulus) != 1))
            .map(|c| FieldElem(c as u32))
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u64;
        for (k, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = cur as u32;
            log[cur as usize] = k as u32;
            cur = clmul_mod(cur, u64::from(generator.0), modulus);
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }

        let mut field = FieldSpec {
            f,
            modulus,
            q,
            generator,
            exp,
            log,
            trace_mask: 0,
        };
        let mask = (0..f)
            .filter(|&i| field.trace_by_frobenius(FieldElem(1 << i)))
            .fold(0u32, |m, i| m | (1 << i));
        field.trace_mask = mask;
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// Modulus as a bit pattern including the leading coefficient.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        x.0 < self.q
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a) && self.contains(b));
        FieldElem(a.0 ^ b.0)
    }

    /// Same as [`add`](Self::add) in characteristic 2.
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, b)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        match self.log(a) {
            None => Err(Error::Domain("inverse of 0 in the residue field".into())),
            Some(l) => Ok(self.gen_pow(u64::from(self.q - 1 - l))),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        match self.log(a) {
            None => FieldElem::ZERO,
            Some(l) => {
                let n = u64::from(self.q - 1);
                self.gen_pow((u64::from(l) * (e % n)) % n)
            }
        }
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Inverse of the Frobenius: the unique `s` with `s^2 = a`.
    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        self.pow(a, u64::from(self.q / 2))
    }

    /// `g^k` for the fixed primitive element `g`.
    pub fn gen_pow(&self, k: u64) -> FieldElem {
        FieldElem(self.exp[(k % u64::from(self.q - 1)) as usize])
    }

    /// Discrete logarithm to base `g`, `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Absolute trace `Tr_{k/F2}` as a bit.
    pub fn trace(&self, a: FieldElem) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Trace computed as `sum_{i<f} a^(2^i)`.
    pub fn trace_by_frobenius(&self, a: FieldElem) -> bool {
        let mut acc = 0u64;
        let mut cur = u64::from(a.0);
        for _ in 0..self.f {
            acc ^= cur;
            cur = clmul_mod(cur, cur, self.modulus);
        }
        debug_assert!(acc <= 1, "trace must land in the prime field");
        acc == 1
    }

    /// The additive character `psi(x) = (-1)^{Tr(x)}`.
    pub fn psi(&self, a: FieldElem) -> i32 {
        1 - 2 * i32::from(self.trace(a))
    }

    /// Nonzero elements as `g^0, g^1, ..., g^{q-2}`.
    pub fn units(&self) -> impl ExactSizeIterator<Item = FieldElem> + '_ {
        self.exp[..(self.q - 1) as usize].iter().map(|&b| FieldElem(b))
    }

    /// All `q` elements in bit-pattern order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Parses `0`, `1`, `g` or `g^k`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        match s {
            "0" => return Ok(FieldElem::ZERO),
            "1" => return Ok(FieldElem::ONE),
            "g" => return Ok(self.gen_pow(1)),
            _ => {}
        }
        let exp = s
            .strip_prefix("g^")
            .ok_or_else(|| Error::Parse(format!("expected 0, 1 or g^k, got {s:?}")))?;
        let k: u64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        Ok(self.gen_pow(k))
    }

    /// Canonical text form: `0` or `g^k` with `0 <= k < q-1`.
    pub fn format_elem(&self, a: FieldElem) -> String {
        match self.log(a) {
            None => "0".to_string(),
            Some(l) => format!("g^{l}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(f: u32) -> FieldSpec {
        FieldSpec::new(f, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf(1).modulus(), 0b10);
        assert_eq!(gf(2).modulus(), 0b111);
        assert_eq!(gf(3).modulus(), 0b1011);
        assert_eq!(gf(4).modulus(), 0b10011);
    }

    #[test]
    fn only_irreducible_quadratic() {
        let irreducible: Vec<u64> = (4u64..8).filter(|&p| find_factor(p).is_none()).collect();
        assert_eq!(irreducible, vec![0b111]);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(
            FieldSpec::new(2, Some(0b100)).unwrap_err(),
            Error::ReducibleModulus { modulus: 0b100, factor: 0b10 }
        );
        assert!(matches!(FieldSpec::new(3, Some(0b111)), Err(Error::InvalidField(_))));
        assert!(FieldSpec::new(0, None).is_err());
        assert!(FieldSpec::new(MAX_DEGREE + 1, None).is_err());
        // X^4 + X^3 + X^2 + X + 1 is irreducible but not primitive; still fine.
        assert!(FieldSpec::new(4, Some(0b11111)).is_ok());
    }

    #[test]
    fn gf4_cube_root_of_unity() {
        let k = gf(2);
        let w = FieldElem(0b10);
        let w2 = k.mul(w, w);
        assert_eq!(k.mul(w, w2), FieldElem::ONE);
        assert_eq!(k.add(k.add(w2, w), FieldElem::ONE), FieldElem::ZERO);
    }

    #[test]
    fn traces_and_psi() {
        let f2 = gf(1);
        assert_eq!(f2.trace(FieldElem::ONE), 1);
        assert_eq!(f2.psi(FieldElem::ONE), -1);
        let k = gf(2);
        assert_eq!(k.trace(FieldElem::ONE), 0);
        assert_eq!(k.trace(FieldElem(0b10)), 1);
        assert_eq!(k.psi(FieldElem::ZERO), 1);
        assert_eq!(k.psi(FieldElem::ONE), 1);
    }

    #[test]
    fn units_enumeration() {
        assert_eq!(gf(1).units().collect::<Vec<_>>(), vec![FieldElem::ONE]);
        assert_eq!(gf(2).units().len(), 3);
        let mut u: Vec<_> = gf(3).units().collect();
        u.sort();
        u.dedup();
        assert_eq!(u.len(), 7);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let k = gf(3);
        assert!(matches!(k.inv(FieldElem::ZERO), Err(Error::Domain(_))));
        assert_eq!(k.inv(FieldElem::ONE).unwrap(), FieldElem::ONE);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in 1..=4 {
            let k = gf(f);
            for a in k.elements() {
                assert_eq!(k.add(a, a), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElem::ONE);
                }
                for b in k.elements() {
                    let schoolbook = clmul_mod(a.0.into(), b.0.into(), k.modulus());
                    assert_eq!(k.mul(a, b).0 as u64, schoolbook);
                }
            }
        }
    }

    #[test]
    fn trace_mask_matches_frobenius_sum() {
        for f in 1..=10 {
            let k = gf(f);
            for a in k.elements() {
                assert_eq!(k.trace(a) == 1, k.trace_by_frobenius(a), "f={f} a={a:?}");
            }
        }
    }

    #[test]
    fn psi_invariants_exhaustive() {
        for f in 1..=10 {
            let k = gf(f);
            let mut total = 0i64;
            for a in k.elements() {
                assert_eq!(k.psi(k.square(a)), k.psi(a));
                total += i64::from(k.psi(a));
            }
            assert_eq!(total, 0, "character orthogonality, f={f}");
        }
    }

    #[test]
    fn squaring_is_bijective_and_sqrt_inverts_it() {
        for f in 1..=8 {
            let k = gf(f);
            let mut seen = vec![false; k.q() as usize];
            for a in k.units() {
                let s = k.square(a);
                assert!(!seen[s.0 as usize]);
                seen[s.0 as usize] = true;
                assert_eq!(k.sqrt(s), a);
            }
        }
    }

    #[test]
    fn wilson_product() {
        for f in 2..=8 {
            let k = gf(f);
            let prod = k.units().fold(FieldElem::ONE, |acc, u| k.mul(acc, u));
            assert_eq!(prod, FieldElem::ONE);
        }
    }

    #[test]
    fn parse_and_format() {
        let k = gf(3);
        assert_eq!(k.parse_elem("0").unwrap(), FieldElem::ZERO);
        assert_eq!(k.parse_elem("1").unwrap(), FieldElem::ONE);
        assert_eq!(k.parse_elem("g^7").unwrap(), FieldElem::ONE);
        let g5 = k.parse_elem("g^5").unwrap();
        assert_eq!(k.format_elem(g5), "g^5");
        assert_eq!(k.parse_elem("g").unwrap(), k.generator());
        assert!(k.parse_elem("h^2").is_err());
        assert!(k.parse_elem("g^x").is_err());
    }
}
