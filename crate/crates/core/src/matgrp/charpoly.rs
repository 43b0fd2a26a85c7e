//! Characteristic polynomials over `O/p^m` without division (Berkowitz),
//! expanded around `T = 1`.

use crate::dring::RingElem;
use crate::error::{Error, Result};

use super::iwahori::{classify_filtration, theta_norm, FiltrationClass, Group};
use super::mat::Mat;

/// Coefficients of `det(S I - a)`, leading coefficient first.
pub fn berkowitz(a: &Mat) -> Vec<RingElem> {
    let r = a.ring().clone();
    let n = a.dim();
    if n == 0 {
        return vec![r.one()];
    }
    let mut poly = vec![r.one(), r.neg(a.get(n - 1, n - 1))];
    for k in (0..n - 1).rev() {
        // Border the trailing principal submatrix A1 = a[k+1.., k+1..].
        let s = n - k - 1;
        let mut toeplitz = Vec::with_capacity(s + 2);
        toeplitz.push(r.one());
        toeplitz.push(r.neg(a.get(k, k)));
        let mut v: Vec<RingElem> = (k + 1..n).map(|i| *a.get(i, k)).collect();
        for _ in 0..s {
            let dot = (0..s).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(k, k + 1 + j), &v[j])));
            toeplitz.push(r.neg(&dot));
            v = (0..s)
                .map(|i| (0..s).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(a.get(k + 1 + i, k + 1 + j), &v[j]))))
                .collect();
        }
        poly = (0..s + 2)
            .map(|i| {
                (0..=i.min(s)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&toeplitz[i - j], &poly[j])))
            })
            .collect();
    }
    poly
}

/// Determinant from the constant term of the characteristic polynomial.
pub fn det_division_free(a: &Mat) -> RingElem {
    let r = a.ring();
    let c = *berkowitz(a).last().expect("nonempty");
    if a.dim().is_multiple_of(2) {
        c
    } else {
        r.neg(&c)
    }
}

/// `p(T) = (T-1)^N + a_{N-1}(T-1)^{N-1} + ... + a_0`, stored as
/// `a_0, ..., a_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedCharPoly {
    pub coeffs: Vec<RingElem>,
}

impl ShiftedCharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_i`.
    pub fn coeff(&self, i: usize) -> &RingElem {
        &self.coeffs[i]
    }

    /// Full coefficient list in the `(T-1)` basis, lowest first, including
    /// the leading 1.
    pub fn monic_coeffs(&self, one: RingElem) -> Vec<RingElem> {
        let mut v = self.coeffs.clone();
        v.push(one);
        v
    }
}

/// Characteristic polynomial of `g` in the variable `S = T - 1`, computed
/// as the characteristic polynomial of `g - I`.
pub fn shifted_charpoly(g: &Mat) -> ShiftedCharPoly {
    let shifted = g.sub(&Mat::identity(g.ring(), g.dim()));
    let mut desc = berkowitz(&shifted);
    desc.reverse();
    desc.pop();
    ShiftedCharPoly { coeffs: desc }
}

/// Outcome of the Eisenstein test on `x θ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinReport {
    pub passes: bool,
    /// `a_1`, the constant term of `p(T) / (T-1)`.
    pub constant_term: RingElem,
    /// `a_0` vanishes at the working precision.
    pub a0_vanishes: bool,
    pub charpoly: ShiftedCharPoly,
}

/// Tests whether the characteristic polynomial of `x θ(x)` is `(T-1)` times
/// an Eisenstein polynomial in `T-1`.
pub fn eisenstein_check(x: &Mat) -> Result<EisensteinReport> {
    if !matches!(
        classify_filtration(x, Group::GL)?,
        FiltrationClass::IwahoriPlus | FiltrationClass::IwahoriPlusPlus
    ) {
        return Err(Error::Usage("Eisenstein check needs x in I+".into()));
    }
    let r = x.ring();
    let p = shifted_charpoly(&theta_norm(x)?);
    let a0_vanishes = r.is_zero(p.coeff(0));
    let higher_in_p = p.coeffs[1..].iter().all(|a| r.valuation(a) >= 1);
    let a1 = *p.coeff(1);
    let passes = a0_vanishes && higher_in_p && r.valuation(&a1) == 1;
    Ok(EisensteinReport {
        passes,
        constant_term: a1,
        a0_vanishes,
        charpoly: p,
    })
}

/// `h` is a norm of `g`: the characteristic polynomial of `g θ(g)` equals
/// `(T-1)` times that of `h`.
pub fn norm_correspondence_check(g: &Mat, h: &Mat) -> Result<bool> {
    if g.dim() != h.dim() + 1 || g.dim().is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "norm correspondence pairs GL_(2n+1) with Sp_2n, got sizes {} and {}",
            g.dim(),
            h.dim()
        )));
    }
    let r = g.ring();
    let lhs = shifted_charpoly(&theta_norm(g)?).monic_coeffs(r.one());
    let mut rhs = vec![r.zero()];
    rhs.extend(shifted_charpoly(h).monic_coeffs(r.one()));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dring::RingSpec;
    use crate::gf2::{FieldElem, FieldSpec};
    use crate::matgrp::family::{make_g, make_h};
    use crate::matgrp::sample::{random_iwahori_plus, random_theta_affine_generic};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn ring(f: u32, m: u32) -> Arc<RingSpec> {
        Arc::new(RingSpec::new(Arc::new(FieldSpec::new(f, None).unwrap()), m).unwrap())
    }

    fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // Inserting at `pos` adds `len - pos` inversions.
                out.push((q, even == ((p.len() - pos) % 2 == 0)));
            }
        }
        out
    }

    // Leibniz expansion of det(S I - a) as a polynomial in S, lowest first.
    fn leibniz_charpoly(a: &Mat) -> Vec<RingElem> {
        let r = a.ring();
        let n = a.dim();
        let mut total = vec![r.zero(); n + 1];
        for (perm, even) in permutations(n) {
            let mut term = vec![r.one()];
            for (i, &j) in perm.iter().enumerate() {
                let c = r.neg(a.get(i, j));
                let lin = if i == j { vec![c, r.one()] } else { vec![c] };
                let mut next = vec![r.zero(); term.len() + lin.len() - 1];
                for (x, tx) in term.iter().enumerate() {
                    for (y, ly) in lin.iter().enumerate() {
                        next[x + y] = r.add(&next[x + y], &r.mul(tx, ly));
                    }
                }
                term = next;
            }
            for (k, c) in term.iter().enumerate() {
                total[k] = if even { r.add(&total[k], c) } else { r.sub(&total[k], c) };
            }
        }
        total
    }

    #[test]
    fn berkowitz_matches_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (f, m) in [(1, 5), (2, 4), (3, 3)] {
            let r = ring(f, m);
            for n in 1..=5 {
                for _ in 0..10 {
                    let a = Mat::from_fn(&r, n, |_, _| r.random(&mut rng));
                    let mut b = berkowitz(&a);
                    b.reverse();
                    assert_eq!(b, leibniz_charpoly(&a));
                }
            }
        }
    }

    #[test]
    fn identity_has_zero_shifted_coefficients() {
        let r = ring(2, 4);
        for n in 1..=5 {
            assert!(shifted_charpoly(&Mat::identity(&r, n)).coeffs.iter().all(|c| r.is_zero(c)));
        }
    }

    #[test]
    fn norm_coefficients_lie_in_p() {
        let r = ring(2, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=3 {
            for _ in 0..50 {
                let x = random_iwahori_plus(&r, 2 * n + 1, &mut rng);
                let p = shifted_charpoly(&theta_norm(&x).unwrap());
                assert!(p.coeffs.iter().all(|a| r.valuation(a) >= 1));
                // a_0 = det(I - xθ(x)) vanishes identically.
                assert!(r.is_zero(p.coeff(0)));
            }
        }
    }

    #[test]
    fn eisenstein_on_family() {
        let r = ring(2, 4);
        let k = r.field().clone();
        for n in 1..=3 {
            for u in k.units() {
                let rep = eisenstein_check(&make_g(n, u, &r).unwrap()).unwrap();
                assert!(rep.passes && rep.a0_vanishes);
                assert_eq!(r.reduce(&r.div_uniformizer(&rep.constant_term).unwrap()), u);
            }
        }
        let id = eisenstein_check(&Mat::identity(&r, 3)).unwrap();
        assert!(!id.passes);
        assert!(r.is_zero(&id.constant_term));
    }

    #[test]
    fn eisenstein_on_samples() {
        let r = ring(1, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.random_range(1..=3);
            assert!(eisenstein_check(&random_theta_affine_generic(&r, n, &mut rng)).unwrap().passes);
        }
        let outside = Mat::from_ints(&r, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(eisenstein_check(&outside), Err(Error::Usage(_))));
    }

    #[test]
    fn norm_correspondence_examples() {
        let r = ring(2, 4);
        let u = FieldElem(0b10);
        for n in 1..=4 {
            let g = make_g(n, u, &r).unwrap();
            assert!(norm_correspondence_check(&g, &make_h(n, u, &r).unwrap()).unwrap());
            assert!(!norm_correspondence_check(&g, &Mat::identity(&r, 2 * n)).unwrap());
            assert!(
                norm_correspondence_check(&Mat::identity(&r, 2 * n + 1), &Mat::identity(&r, 2 * n)).unwrap()
            );
        }
        let g = make_g(1, u, &r).unwrap();
        assert!(matches!(
            norm_correspondence_check(&g, &Mat::identity(&r, 4)),
            Err(Error::Usage(_))
        ));
    }
}
