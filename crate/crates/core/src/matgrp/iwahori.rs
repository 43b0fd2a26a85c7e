//! Iwahori filtrations `I ⊃ I+ ⊃ I++` of `GL_N` and `Sp_2n`, their simple
//! affine root coordinates, and the involution `θ(g) = J ᵗg⁻¹ J⁻¹` of
//! `GL_{2n+1}`.

use std::sync::Arc;

use crate::dring::RingSpec;
use crate::error::{Error, Result};
use crate::gf2::{FieldElem, FieldSpec};

use super::mat::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Group {
    GL,
    Sp,
}

/// Finest filtration step containing an element. Nested:
/// `IwahoriPlusPlus ⊂ IwahoriPlus ⊂ Iwahori`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum FiltrationClass {
    Outside,
    Iwahori,
    IwahoriPlus,
    IwahoriPlusPlus,
}

impl FiltrationClass {
    /// Membership in `I+` (which includes `I++`).
    pub fn in_plus(self) -> bool {
        self >= FiltrationClass::IwahoriPlus
    }
}

/// Image of an element of `I+` in `I+/I++ ≅ k^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineComponents(pub Vec<FieldElem>);

impl AffineComponents {
    pub fn values(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn all_nonzero(&self) -> bool {
        self.0.iter().all(|c| !c.is_zero())
    }
}

/// The anti-diagonal `J_N` with `(i, N+1-i)` entry `(-1)^{i-1}`.
pub fn antidiag_j(n: usize, ring: &Arc<RingSpec>) -> Mat {
    let mut j = Mat::zero(ring, n);
    for i in 0..n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        j.set(i, n - 1 - i, ring.from_int(sign));
    }
    j
}

/// `J_N^{-1} = (-1)^{N-1} J_N`.
pub fn antidiag_j_inverse(n: usize, ring: &Arc<RingSpec>) -> Mat {
    let j = antidiag_j(n, ring);
    if n % 2 == 1 {
        j
    } else {
        j.neg()
    }
}

/// `ᵗg J_{2n} g = J_{2n}` exactly in `O/p^m`.
pub fn is_symplectic(g: &Mat) -> Result<bool> {
    if !g.dim().is_multiple_of(2) {
        return Err(Error::Usage(format!("symplectic test on odd dimension {}", g.dim())));
    }
    let j = antidiag_j(g.dim(), g.ring());
    Ok(g.transpose().mul(&j).mul(g) == j)
}

/// Valuation pattern of `I`, `I+`, `I++` for `GL_N`; for `Sp` additionally
/// requires the symplectic identity (the filtration is cut out by
/// intersection).
pub fn classify_filtration(g: &Mat, group: Group) -> Result<FiltrationClass> {
    let r = g.ring();
    if r.precision() < 2 {
        return Err(Error::Precision { needed: 2, have: r.precision() });
    }
    if group == Group::Sp && !is_symplectic(g)? {
        return Ok(FiltrationClass::Outside);
    }
    let n = g.dim();
    let one = r.one();
    let v = |i: usize, j: usize| r.valuation(g.get(i, j));

    let lower_in_p = (0..n).all(|i| (0..i).all(|j| v(i, j) >= 1));
    let diag_units = (0..n).all(|i| v(i, i) == 0);
    if !(lower_in_p && diag_units) {
        return Ok(FiltrationClass::Outside);
    }
    let diag_one = (0..n).all(|i| r.valuation(&r.sub(g.get(i, i), &one)) >= 1);
    if !diag_one {
        return Ok(FiltrationClass::Iwahori);
    }
    let plus_plus = if n == 1 {
        r.valuation(&r.sub(g.get(0, 0), &one)) >= 2
    } else {
        (0..n - 1).all(|i| v(i, i + 1) >= 1) && v(n - 1, 0) >= 2
    };
    Ok(if plus_plus {
        FiltrationClass::IwahoriPlusPlus
    } else {
        FiltrationClass::IwahoriPlus
    })
}

/// Coordinates in `I+/I++`: for `GL_N` the residues of
/// `x_{1,2}, ..., x_{N-1,N}, x_{N,1}/ϖ`; for `Sp_2n` the residues of
/// `y_{1,2}, ..., y_{n,n+1}, y_{2n,1}/ϖ`.
pub fn affine_components(g: &Mat, group: Group) -> Result<AffineComponents> {
    let n = g.dim();
    if n < 2 {
        return Err(Error::Usage("affine components need dimension >= 2".into()));
    }
    if group == Group::Sp && !n.is_multiple_of(2) {
        return Err(Error::Usage(format!("Sp needs even dimension, got {n}")));
    }
    if !classify_filtration(g, group)?.in_plus() {
        return Err(Error::Usage(format!("element is not in I+ of {group:?}_{n}")));
    }
    Ok(affine_components_unchecked(g, group))
}

/// [`affine_components`] without the membership test; the caller guarantees
/// `g ∈ I+`.
pub(crate) fn affine_components_unchecked(g: &Mat, group: Group) -> AffineComponents {
    let r = g.ring();
    let n = g.dim();
    let bands = match group {
        Group::GL => n - 1,
        Group::Sp => n / 2,
    };
    let mut out: Vec<FieldElem> = (0..bands).map(|i| r.reduce(g.get(i, i + 1))).collect();
    let corner = r.div_uniformizer(g.get(n - 1, 0)).expect("corner lies in p");
    out.push(r.reduce(&corner));
    AffineComponents(out)
}

/// Every affine component is nonzero.
pub fn is_affine_generic(y: &Mat, group: Group) -> Result<bool> {
    Ok(affine_components(y, group)?.all_nonzero())
}

fn require_odd(g: &Mat) -> Result<usize> {
    let n = g.dim();
    if n.is_multiple_of(2) {
        return Err(Error::Usage(format!("θ is defined on GL_(2n+1), got dimension {n}")));
    }
    Ok((n - 1) / 2)
}

/// `θ(g) = J ᵗg⁻¹ J⁻¹` on `GL_{2n+1}`.
pub fn theta(g: &Mat) -> Result<Mat> {
    require_odd(g)?;
    let n = g.dim();
    let j = antidiag_j(n, g.ring());
    let j_inv = antidiag_j_inverse(n, g.ring());
    Ok(j.mul(&g.inverse()?.transpose()).mul(&j_inv))
}

/// `x θ(x)`.
pub fn theta_norm(x: &Mat) -> Result<Mat> {
    Ok(x.mul(&theta(x)?))
}

/// `x_{i,i+1} + x_{2n+1-i,2n+2-i}` is a unit for `i = 1..n` and
/// `x_{2n+1,1}` has valuation exactly 1.
pub fn is_theta_affine_generic(x: &Mat) -> Result<bool> {
    let n = require_odd(x)?;
    if n == 0 {
        return Err(Error::Usage("θ-affine genericity needs 2n+1 >= 3".into()));
    }
    if !classify_filtration(x, Group::GL)?.in_plus() {
        return Err(Error::Usage("element is not in I+ of GL_(2n+1)".into()));
    }
    let r = x.ring();
    let big = 2 * n + 1;
    let sums_are_units = (1..=n).all(|i| {
        let s = r.add(x.entry(i, i + 1), x.entry(big - i, big + 1 - i));
        r.is_unit(&s)
    });
    Ok(sums_are_units && r.valuation(x.entry(big, 1)) == 1)
}

/// The action of θ induced on `I+/I++ ≅ k^{2n+1}`:
/// `(c_1, ..., c_{2n}, c_{2n+1}) -> (c_{2n}, ..., c_1, -c_{2n+1})`.
/// In characteristic 2 the last sign is invisible.
pub fn theta_on_components(c: &AffineComponents) -> AffineComponents {
    let v = c.values();
    let len = v.len();
    let mut out: Vec<FieldElem> = v[..len - 1].iter().rev().copied().collect();
    out.push(v[len - 1]);
    AffineComponents(out)
}

/// `θ` on a diagonal matrix given by its entries in `k^×`:
/// `diag(d_1..d_N) -> diag(1/d_N, ..., 1/d_1)`.
pub fn theta_diag(field: &FieldSpec, d: &[FieldElem]) -> Result<Vec<FieldElem>> {
    d.iter().rev().map(|&x| field.inv(x)).collect()
}

/// Image of the affine components of `x` under `x -> diag(l) x diag(r)`
/// with `l, r` diagonal with unit entries, computed on the quotient:
/// band `i` is scaled by `l_i r_{i+1}`, the corner by `l_N r_1`.
pub fn twist_components(
    field: &FieldSpec,
    c: &AffineComponents,
    left: &[FieldElem],
    right: &[FieldElem],
) -> AffineComponents {
    let v = c.values();
    let bands = v.len() - 1;
    let n = left.len();
    let mut out: Vec<FieldElem> = (0..bands)
        .map(|i| field.mul(field.mul(left[i], v[i]), right[i + 1]))
        .collect();
    out.push(field.mul(field.mul(left[n - 1], v[bands]), right[0]));
    AffineComponents(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::family::{make_g, make_h};
    use crate::matgrp::sample::{
        random_invertible, random_iwahori_plus, random_iwahori_plus_plus, random_sp_affine_generic,
        random_sp_iwahori_plus,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(f: u32, m: u32) -> Arc<RingSpec> {
        Arc::new(RingSpec::new(Arc::new(FieldSpec::new(f, None).unwrap()), m).unwrap())
    }

    #[test]
    fn antidiagonal() {
        let r = ring(1, 4);
        assert_eq!(antidiag_j(1, &r), Mat::from_ints(&r, &[&[1]]));
        assert_eq!(antidiag_j(2, &r), Mat::from_ints(&r, &[&[0, 1], &[-1, 0]]));
        for n in 1..=6 {
            let j = antidiag_j(n, &r);
            let signed = if n % 2 == 1 { j.clone() } else { j.neg() };
            assert_eq!(j.transpose(), signed);
            assert_eq!(j.mul(&antidiag_j_inverse(n, &r)), Mat::identity(&r, n));
        }
    }

    #[test]
    fn symplectic_examples() {
        let r = ring(2, 4);
        assert!(is_symplectic(&Mat::identity(&r, 4)).unwrap());
        assert!(!is_symplectic(&Mat::from_ints(&r, &[&[2, 0], &[0, 1]])).unwrap());
        assert!(matches!(is_symplectic(&Mat::identity(&r, 3)), Err(Error::Usage(_))));
        for m in 2..=6 {
            let r = ring(2, m);
            for n in 1..=5 {
                for u in r.field().units() {
                    assert!(is_symplectic(&make_h(n, u, &r).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let r = ring(2, 4);
        for n in 1..=5 {
            assert_eq!(
                classify_filtration(&Mat::identity(&r, n), Group::GL).unwrap(),
                FiltrationClass::IwahoriPlusPlus
            );
        }
        let g = make_g(2, FieldElem::ONE, &r).unwrap();
        assert_eq!(classify_filtration(&g, Group::GL).unwrap(), FiltrationClass::IwahoriPlus);
        let perm = Mat::from_ints(&r, &[&[0, 1], &[1, 0]]);
        assert_eq!(classify_filtration(&perm, Group::GL).unwrap(), FiltrationClass::Outside);
        let torus = Mat::diag(&r, &[r.teichmuller(FieldElem(0b10)), r.one()]);
        assert_eq!(classify_filtration(&torus, Group::GL).unwrap(), FiltrationClass::Iwahori);
        assert!(matches!(
            classify_filtration(&Mat::identity(&ring(2, 1), 2), Group::GL),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn components_of_family() {
        let r = ring(2, 4);
        let k = r.field().clone();
        for n in 1..=4 {
            for u in k.units() {
                let g = make_g(n, u, &r).unwrap();
                let mut expected = vec![FieldElem::ONE; n];
                expected.extend(vec![FieldElem::ZERO; n]);
                expected.push(u);
                assert_eq!(affine_components(&g, Group::GL).unwrap().0, expected);
                assert!(is_theta_affine_generic(&g).unwrap());

                let h = make_h(n, u, &r).unwrap();
                let mut expected = vec![FieldElem::ONE; n];
                expected.push(u);
                assert_eq!(affine_components(&h, Group::Sp).unwrap().0, expected);
                assert!(is_affine_generic(&h, Group::Sp).unwrap());
            }
        }
    }

    #[test]
    fn genericity_controls() {
        let r = ring(2, 4);
        let u = FieldElem(0b11);
        let mut h = make_h(2, u, &r).unwrap();
        h.set_entry(1, 2, r.from_int(2));
        assert!(!is_affine_generic(&h, Group::Sp).unwrap_or(false));
        assert!(!is_affine_generic(&Mat::identity(&r, 4), Group::Sp).unwrap());
        assert!(!is_theta_affine_generic(&Mat::identity(&r, 5)).unwrap());
        let mut g = make_g(2, u, &r).unwrap();
        g.set_entry(5, 1, r.mul_uniformizer(&r.mul_uniformizer(&r.teichmuller(u))));
        assert!(!is_theta_affine_generic(&g).unwrap());
        let perm = Mat::from_ints(&r, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(is_theta_affine_generic(&perm), Err(Error::Usage(_))));
        assert!(matches!(affine_components(&perm, Group::GL), Err(Error::Usage(_))));
    }

    #[test]
    fn theta_basics() {
        let r = ring(2, 4);
        assert_eq!(theta(&Mat::identity(&r, 5)).unwrap(), Mat::identity(&r, 5));
        assert_eq!(theta_norm(&Mat::identity(&r, 5)).unwrap(), Mat::identity(&r, 5));
        assert!(matches!(theta(&Mat::identity(&r, 4)), Err(Error::Usage(_))));
        let singular = Mat::from_ints(&r, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(theta(&singular), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_involution_and_stability() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (f, m) in [(1, 4), (2, 4), (3, 5)] {
            let r = ring(f, m);
            for n in [1usize, 3, 5, 7] {
                for _ in 0..20 {
                    let g = random_invertible(&r, n, &mut rng);
                    assert_eq!(theta(&theta(&g).unwrap()).unwrap(), g);
                    let x = random_iwahori_plus(&r, n, &mut rng);
                    let tx = theta(&x).unwrap();
                    assert!(classify_filtration(&tx, Group::GL).unwrap().in_plus());
                    if n > 1 {
                        assert_eq!(
                            affine_components(&tx, Group::GL).unwrap(),
                            theta_on_components(&affine_components(&x, Group::GL).unwrap())
                        );
                    }
                    let y = random_iwahori_plus_plus(&r, n, &mut rng);
                    assert_eq!(
                        classify_filtration(&theta(&y).unwrap(), Group::GL).unwrap(),
                        FiltrationClass::IwahoriPlusPlus
                    );
                }
            }
        }
    }

    #[test]
    fn theta_on_diagonal() {
        let r = ring(3, 4);
        let k = r.field().clone();
        let d: Vec<FieldElem> = (0..5).map(|i| k.gen_pow(i * 2 + 1)).collect();
        let lift = |v: &[FieldElem]| v.iter().map(|&e| r.teichmuller(e)).collect::<Vec<_>>();
        let expected = Mat::diag(&r, &lift(&theta_diag(&k, &d).unwrap()));
        assert_eq!(theta(&Mat::diag(&r, &lift(&d))).unwrap(), expected);
    }

    #[test]
    fn twist_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let r = ring(3, 4);
        let k = r.field().clone();
        for n in 2..=6 {
            let x = random_iwahori_plus(&r, n, &mut rng);
            let l: Vec<FieldElem> = (0..n).map(|i| k.gen_pow(3 * i as u64 + 1)).collect();
            let rt: Vec<FieldElem> = (0..n).map(|i| k.gen_pow(5 * i as u64 + 2)).collect();
            let lift = |v: &[FieldElem]| v.iter().map(|&e| r.teichmuller(e)).collect::<Vec<_>>();
            let conj = x.diag_mul(&lift(&l), &lift(&rt));
            // The conjugate leaves I+ (its diagonal is no longer 1 mod p),
            // but its quotient coordinates still make sense.
            assert_eq!(
                affine_components_unchecked(&conj, Group::GL),
                twist_components(&k, &affine_components(&x, Group::GL).unwrap(), &l, &rt)
            );
        }
    }

    #[test]
    fn sp_samplers() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let r = ring(2, 4);
        for n in 1..=3 {
            for _ in 0..20 {
                let y = random_sp_iwahori_plus(&r, n, &mut rng);
                assert!(classify_filtration(&y, Group::Sp).unwrap().in_plus());
                let y = random_sp_affine_generic(&r, n, &mut rng);
                assert!(is_affine_generic(&y, Group::Sp).unwrap());
            }
        }
    }
}
