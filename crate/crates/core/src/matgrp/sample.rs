//! Random elements of the filtration subgroups, for property checks.

use std::sync::Arc;

use rand::Rng;

use crate::dring::{RingElem, RingSpec};
use crate::gf2::FieldElem;

use super::iwahori::{affine_components_unchecked, antidiag_j, antidiag_j_inverse, Group};
use super::mat::Mat;

fn random_nonzero<R: Rng + ?Sized>(ring: &RingSpec, rng: &mut R) -> FieldElem {
    let q = ring.field().q();
    FieldElem(rng.random_range(1..q))
}

/// Uniform element of `I+` of `GL_N`: diagonal in `1+p`, strict upper
/// triangle in `O`, strict lower triangle in `p`.
pub fn random_iwahori_plus<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    Mat::from_fn(ring, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => ring.add(&ring.one(), &ring.random_in_ideal(rng, 1)),
        std::cmp::Ordering::Less => ring.random(rng),
        std::cmp::Ordering::Greater => ring.random_in_ideal(rng, 1),
    })
}

/// Uniform element of `I++` of `GL_N`.
pub fn random_iwahori_plus_plus<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    let mut x = random_iwahori_plus(ring, n, rng);
    for i in 0..n.saturating_sub(1) {
        x.set(i, i + 1, ring.random_in_ideal(rng, 1));
    }
    if n > 1 {
        x.set(n - 1, 0, ring.random_in_ideal(rng, 2));
    } else if n == 1 {
        // GL_1 has no affine roots; the next step is 1 + p^2.
        x.set(0, 0, ring.add(&ring.one(), &ring.random_in_ideal(rng, 2)));
    }
    x
}

/// θ-affine generic element of `GL_{2n+1}` by construction: a free `I+`
/// element whose symmetrized band sums are overwritten with fresh units and
/// whose corner is `2 · unit`.
pub fn random_theta_affine_generic<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    let big = 2 * n + 1;
    let mut x = random_iwahori_plus(ring, big, rng);
    for i in 1..=n {
        let unit = ring.random_unit(rng);
        let partner = *x.entry(big - i, big + 1 - i);
        x.set_entry(i, i + 1, ring.sub(&unit, &partner));
    }
    x.set_entry(big, 1, ring.random_of_valuation(rng, 1));
    x
}

/// Element of `I+` of `GL_{2n+1}` that violates θ-affine genericity: either
/// one band sum is pushed into `p` or the corner into `p^2`.
pub fn random_non_theta_generic<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    let big = 2 * n + 1;
    let mut x = random_iwahori_plus(ring, big, rng);
    let which = rng.random_range(0..=n);
    if which == 0 {
        x.set_entry(big, 1, ring.random_in_ideal(rng, 2));
    } else {
        let i = which;
        let partner = *x.entry(big - i, big + 1 - i);
        let small = ring.random_in_ideal(rng, 1);
        x.set_entry(i, i + 1, ring.sub(&small, &partner));
    }
    x
}

/// Matrix with unit determinant.
pub fn random_invertible<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = Mat::from_fn(ring, n, |_, _| ring.random(rng));
        if ring.is_unit(&m.det()) {
            return m;
        }
    }
}

/// `σ(A) = J⁻¹ ᵗA J`; `A ∈ sp_{2n}` iff `σ(A) = -A`.
fn sigma(a: &Mat) -> Mat {
    let n = a.dim();
    let j = antidiag_j(n, a.ring());
    antidiag_j_inverse(n, a.ring()).mul(&a.transpose()).mul(&j)
}

/// Square-zero element of `sp_{2n}` supported on the root position `(i, j)`
/// (zero-based, `i != j`) and its partner `(2n-1-j, 2n-1-i)`.
fn root_vector(ring: &Arc<RingSpec>, n2: usize, i: usize, j: usize) -> Mat {
    let mut e = Mat::zero(ring, n2);
    e.set(i, j, ring.one());
    if j == n2 - 1 - i {
        debug_assert_eq!(sigma(&e), e.neg(), "long root vectors lie in sp");
        e
    } else {
        e.sub(&sigma(&e))
    }
}

/// Random element of `I+` of `Sp_2n`, built as a product of a torus element
/// in `1+p` and root subgroup elements `I + sE` (with `s ∈ O` above the
/// diagonal, `s ∈ p` below).
pub fn random_sp_iwahori_plus<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    let n2 = 2 * n;
    let mut d: Vec<RingElem> = vec![ring.zero(); n2];
    for i in 0..n {
        let t = ring.add(&ring.one(), &ring.random_in_ideal(rng, 1));
        d[i] = t;
        d[n2 - 1 - i] = ring.invert(&t).expect("1+p is a unit");
    }
    let mut y = Mat::diag(ring, &d);
    for _ in 0..2 {
        for i in 0..n2 {
            for j in 0..n2 {
                if i == j {
                    continue;
                }
                let s = if i < j { ring.random(rng) } else { ring.random_in_ideal(rng, 1) };
                let root = root_vector(ring, n2, i, j).scale(&s);
                y = Mat::identity(ring, n2).add(&root).mul(&y);
            }
        }
    }
    y
}

/// Affine generic element of `I+` of `Sp_2n`: a random `I+` element whose
/// `n+1` affine components are steered to random nonzero targets by left
/// multiplication with root subgroup elements.
pub fn random_sp_affine_generic<R: Rng + ?Sized>(ring: &Arc<RingSpec>, n: usize, rng: &mut R) -> Mat {
    let n2 = 2 * n;
    let k = ring.field().clone();
    let mut y = random_sp_iwahori_plus(ring, n, rng);
    let current = affine_components_unchecked(&y, Group::Sp);
    for i in 0..n {
        let target = random_nonzero(ring, rng);
        let delta = k.sub(target, current.values()[i]);
        let s = ring.teichmuller(delta);
        let root = root_vector(ring, n2, i, i + 1).scale(&s);
        y = Mat::identity(ring, n2).add(&root).mul(&y);
    }
    let target = random_nonzero(ring, rng);
    let delta = k.sub(target, current.values()[n]);
    let s = ring.mul_uniformizer(&ring.teichmuller(delta));
    let root = root_vector(ring, n2, n2 - 1, 0).scale(&s);
    Mat::identity(ring, n2).add(&root).mul(&y)
}
