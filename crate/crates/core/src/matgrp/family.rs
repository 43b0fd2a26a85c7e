//! Explicit elements: the θ-affine generic `g_u ∈ GL_{2n+1}`, its norm
//! `h_u ∈ Sp_{2n}`, and the normalizer elements `φ_a`.

use std::sync::Arc;

use crate::dring::{RingElem, RingSpec};
use crate::error::{Error, Result};
use crate::gf2::FieldElem;

use super::iwahori::antidiag_j;
use super::mat::Mat;

fn check_params(u: FieldElem, ring: &RingSpec, what: &str) -> Result<()> {
    if u.is_zero() || !ring.field().contains(u) {
        return Err(Error::Domain(format!("{what} needs a parameter in k^×")));
    }
    if ring.precision() < 2 {
        return Err(Error::Precision { needed: 2, have: ring.precision() });
    }
    Ok(())
}

/// `ϖ[u]`, the uniformizer times the Teichmuller lift.
pub fn uniformizer_times(ring: &RingSpec, u: FieldElem) -> RingElem {
    ring.mul_uniformizer(&ring.teichmuller(u))
}

/// `g_u`: unipotent with ones on `(i, i+1)` for `i <= n`, zeros on the rest of
/// the superdiagonal, and `ϖu` in the corner `(2n+1, 1)`.
pub fn make_g(n: usize, u: FieldElem, ring: &Arc<RingSpec>) -> Result<Mat> {
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    check_params(u, ring, "g_u")?;
    let big = 2 * n + 1;
    let mut g = Mat::identity(ring, big);
    for i in 1..=n {
        g.set_entry(i, i + 1, ring.one());
    }
    g.set_entry(big, 1, uniformizer_times(ring, u));
    Ok(g)
}

/// `h_u = [[P, X], [Y, Q]]`, the upper-left `2n × 2n` block of `g_u θ(g_u)`.
pub fn make_h(n: usize, u: FieldElem, ring: &Arc<RingSpec>) -> Result<Mat> {
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    check_params(u, ring, "h_u")?;
    let minus_wu = ring.neg(&uniformizer_times(ring, u));
    let mut h = Mat::zero(ring, 2 * n);
    // P: identity plus superdiagonal ones plus -ϖu at (n, 1). For n = 1 the
    // corner lands on the diagonal.
    for i in 1..=n {
        h.set_entry(i, i, ring.one());
        if i < n {
            h.set_entry(i, i + 1, ring.one());
        }
    }
    h.set_entry(n, 1, ring.add(h.entry(n, 1), &minus_wu));
    // X: last row of ones.
    for j in 1..=n {
        h.set_entry(n, n + j, ring.one());
    }
    // Y: first column of -ϖu.
    for i in 1..=n {
        h.set_entry(n + i, 1, minus_wu);
    }
    // Q: upper triangular ones.
    for i in 1..=n {
        for j in i..=n {
            h.set_entry(n + i, n + j, ring.one());
        }
    }
    Ok(h)
}

/// `θ(g_u)` written out entry by entry: identity on the first `n` rows,
/// `-ϖu` down the first column from row `n+1`, upper triangular ones on the
/// trailing `(n+1) × (n+1)` block.
pub fn displayed_theta_g(n: usize, u: FieldElem, ring: &Arc<RingSpec>) -> Result<Mat> {
    check_params(u, ring, "θ(g_u)")?;
    let big = 2 * n + 1;
    let minus_wu = ring.neg(&uniformizer_times(ring, u));
    let mut m = Mat::identity(ring, big);
    for i in n + 1..=big {
        m.set_entry(i, 1, minus_wu);
        for j in i..=big {
            m.set_entry(i, j, ring.one());
        }
    }
    Ok(m)
}

/// `g_u θ(g_u)` written out entry by entry.
pub fn displayed_g_theta_g(n: usize, u: FieldElem, ring: &Arc<RingSpec>) -> Result<Mat> {
    check_params(u, ring, "g_u θ(g_u)")?;
    let big = 2 * n + 1;
    let minus_wu = ring.neg(&uniformizer_times(ring, u));
    let mut m = Mat::identity(ring, big);
    for i in 1..n {
        m.set_entry(i, i + 1, ring.one());
    }
    m.set_entry(n, 1, ring.add(m.entry(n, 1), &minus_wu));
    for j in n + 1..=big {
        m.set_entry(n, j, ring.one());
    }
    for i in n + 1..=2 * n {
        m.set_entry(i, 1, minus_wu);
        for j in i..=big {
            m.set_entry(i, j, ring.one());
        }
    }
    Ok(m)
}

/// `[[0, I_{N-1}], [c, 0]]` for an arbitrary corner `c`.
pub fn phi_with_corner(big_n: usize, corner: RingElem, ring: &Arc<RingSpec>) -> Mat {
    let mut m = Mat::zero(ring, big_n);
    for i in 1..big_n {
        m.set_entry(i, i + 1, ring.one());
    }
    m.set_entry(big_n, 1, corner);
    m
}

/// `φ_a = [[0, I_{N-1}], [ϖa, 0]]`; its `N`-th power is `ϖa I_N`.
pub fn make_phi(big_n: usize, a: FieldElem, ring: &Arc<RingSpec>) -> Result<Mat> {
    if big_n == 0 {
        return Err(Error::Usage("N must be positive".into()));
    }
    check_params(a, ring, "φ_a")?;
    Ok(phi_with_corner(big_n, uniformizer_times(ring, a), ring))
}

/// `θ(φ_a) = -(φ_{-a})^{-1}`, checked in the integral form
/// `φ_{-a} J + J ᵗφ_a = 0` since `φ_a` is not invertible over `O`. Here
/// `φ_{-a}` carries `-ϖ[a]` in its corner.
pub fn theta_phi_identity(big_n: usize, a: FieldElem, ring: &Arc<RingSpec>) -> Result<bool> {
    if big_n.is_multiple_of(2) {
        return Err(Error::Usage("θ is defined on GL_(2n+1)".into()));
    }
    let phi = make_phi(big_n, a, ring)?;
    let phi_neg = phi_with_corner(big_n, ring.neg(&uniformizer_times(ring, a)), ring);
    let j = antidiag_j(big_n, ring);
    Ok(phi_neg.mul(&j).add(&j.mul(&phi.transpose())).is_zero())
}
