//! Character values of simple supercuspidal representations at affine
//! generic elements, as finite torus sums, and the endoscopic comparison at
//! the explicit pair `(g_u, h_u)`.

use std::sync::Arc;

use rayon::prelude::*;

use super::kloosterman::{kloosterman_fast, KlValue};
use crate::dring::{RingElem, RingSpec};
use crate::error::{Error, Result};
use crate::gf2::{FieldElem, FieldSpec};
use crate::matgrp::iwahori::{affine_components, twist_components, AffineComponents};
use crate::matgrp::{
    is_affine_generic, is_theta_affine_generic, make_g, make_h, norm_correspondence_check, theta_norm,
    Group, Mat,
};

/// Rank `n` and the parameter `a ∈ k^×` of the representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharParams {
    pub n: usize,
    pub a: FieldElem,
}

impl CharParams {
    pub fn new(n: usize, a: FieldElem) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("rank n must be at least 1".into()));
        }
        if a.is_zero() {
            return Err(Error::Domain("parameter a must be nonzero".into()));
        }
        Ok(CharParams { n, a })
    }
}

/// `Σ_{t ∈ (k^×)^n} term(t)`, row-major in generator-power coordinates; the
/// outermost coordinate is split across threads.
pub fn torus_sum<F>(field: &FieldSpec, n: usize, term: F) -> i128
where
    F: Fn(&[FieldElem]) -> i32 + Sync,
{
    let order = u64::from(field.q() - 1);
    (0..order)
        .into_par_iter()
        .map(|first| {
            let mut logs = vec![0u64; n];
            logs[0] = first;
            let mut t: Vec<FieldElem> = logs.iter().map(|&e| field.gen_pow(e)).collect();
            let mut total = 0i128;
            loop {
                total += i128::from(term(&t));
                let mut pos = n;
                loop {
                    if pos <= 1 {
                        return total;
                    }
                    pos -= 1;
                    logs[pos] += 1;
                    if logs[pos] < order {
                        t[pos] = field.gen_pow(logs[pos]);
                        break;
                    }
                    logs[pos] = 0;
                    t[pos] = FieldElem::ONE;
                }
            }
        })
        .sum()
}

/// `ψ(c_1 + ⋯ + c_{r-1} + a c_r)`: the affine generic character on the
/// quotient coordinates.
fn affine_character(field: &FieldSpec, c: &AffineComponents, a: FieldElem) -> i32 {
    let v = c.values();
    let (corner, bands) = v.split_last().expect("nonempty components");
    let s = bands.iter().fold(field.mul(a, *corner), |acc, &b| field.add(acc, b));
    field.psi(s)
}

fn quo(field: &FieldSpec, a: FieldElem, b: FieldElem) -> FieldElem {
    field.div(a, b).expect("torus coordinates are units")
}

/// `diag(t_1, ..., t_n, t_n^{-1}, ..., t_1^{-1})`.
pub fn sp_torus(field: &FieldSpec, t: &[FieldElem]) -> Vec<FieldElem> {
    let inv: Vec<FieldElem> = t.iter().rev().map(|&x| field.inv(x).expect("unit")).collect();
    t.iter().copied().chain(inv).collect()
}

/// `diag(t_1, ..., t_n, 1, t_n^{-1}, ..., t_1^{-1})`, the θ-fixed torus.
pub fn theta_torus(field: &FieldSpec, t: &[FieldElem]) -> Vec<FieldElem> {
    let inv = t.iter().rev().map(|&x| field.inv(x).expect("unit"));
    t.iter().copied().chain(std::iter::once(FieldElem::ONE)).chain(inv).collect()
}

fn check_rank(g: &Mat, expected: usize, what: &str) -> Result<()> {
    if g.dim() != expected {
        return Err(Error::Usage(format!(
            "{what} must be {expected}x{expected}, got {}x{}",
            g.dim(),
            g.dim()
        )));
    }
    Ok(())
}

fn require_affine_generic(y: &Mat, params: &CharParams) -> Result<AffineComponents> {
    check_rank(y, 2 * params.n, "symplectic element")?;
    if !is_affine_generic(y, Group::Sp)? {
        return Err(Error::Usage("element is not affine generic".into()));
    }
    affine_components(y, Group::Sp)
}

fn require_theta_affine_generic(x: &Mat, params: &CharParams) -> Result<()> {
    check_rank(x, 2 * params.n + 1, "element")?;
    if !is_theta_affine_generic(x)? {
        return Err(Error::Usage("element is not θ-affine generic".into()));
    }
    Ok(())
}

/// Character of `π^{Sp}_a` at an affine generic `y`: the sum over the split
/// torus of the affine generic character at `t y t^{-1}`.
pub fn char_sp(y: &Mat, params: &CharParams) -> Result<KlValue> {
    let comps = require_affine_generic(y, params)?;
    let field = y.ring().field().clone();
    let total = torus_sum(&field, params.n, |t| {
        let left = sp_torus(&field, t);
        let right: Vec<FieldElem> = left.iter().map(|&x| field.inv(x).expect("unit")).collect();
        affine_character(&field, &twist_components(&field, &comps, &left, &right), params.a)
    });
    Ok(KlValue(total))
}

/// The same torus sum written in closed form:
/// `Σ ψ(Σ_{i<n} (t_i/t_{i+1}) ȳ_{i,i+1} + t_n^2 ȳ_{n,n+1} + (a/t_1^2) ȳ_{2n,1}/ϖ)`.
pub fn char_sp_closed_form(y: &Mat, params: &CharParams) -> Result<KlValue> {
    let comps = require_affine_generic(y, params)?;
    let field = y.ring().field().clone();
    let c = comps.values();
    let n = params.n;
    let total = torus_sum(&field, n, |t| {
        let mut s = FieldElem::ZERO;
        for i in 0..n - 1 {
            s = field.add(s, field.mul(quo(&field, t[i], t[i + 1]), c[i]));
        }
        s = field.add(s, field.mul(field.square(t[n - 1]), c[n - 1]));
        let corner = quo(&field, params.a, field.square(t[0]));
        field.psi(field.add(s, field.mul(corner, c[n])))
    });
    Ok(KlValue(total))
}

fn residue_over_uniformizer(ring: &RingSpec, x: &RingElem) -> Result<FieldElem> {
    Ok(ring.reduce(&ring.div_uniformizer(x)?))
}

/// Residue of `a y_{1,2}^2 ⋯ y_{n-1,n}^2 y_{n,n+1} y_{2n,1} / ϖ`.
pub fn beta_of(y: &Mat, params: &CharParams) -> Result<FieldElem> {
    require_affine_generic(y, params)?;
    let ring = y.ring();
    let n = params.n;
    let mut prod = ring.teichmuller(params.a);
    for i in 1..n {
        prod = ring.mul(&prod, &ring.square(y.entry(i, i + 1)));
    }
    prod = ring.mul(&prod, y.entry(n, n + 1));
    prod = ring.mul(&prod, y.entry(2 * n, 1));
    residue_over_uniformizer(ring, &prod)
}

/// Residue of `-a y_{1,2}^2 ⋯ y_{n-1,n}^2 y_{n,n+1} y_{2n,1} / ϖ`; in residue
/// characteristic 2 this always agrees with [`beta_of`].
pub fn beta_of_signed(y: &Mat, params: &CharParams) -> Result<FieldElem> {
    require_affine_generic(y, params)?;
    let ring = y.ring();
    let n = params.n;
    let mut prod = ring.neg(&ring.teichmuller(params.a));
    for i in 1..n {
        prod = ring.mul(&prod, &ring.square(y.entry(i, i + 1)));
    }
    prod = ring.mul(&prod, y.entry(n, n + 1));
    prod = ring.mul(&prod, y.entry(2 * n, 1));
    residue_over_uniformizer(ring, &prod)
}

/// θ-twisted character of `π^{GL_{2n+1}}_a` at a θ-affine generic `x`: the
/// sum over `T^θ` of the affine generic character at `t x θ(t)^{-1}`.
pub fn twisted_char(x: &Mat, params: &CharParams) -> Result<KlValue> {
    require_theta_affine_generic(x, params)?;
    let comps = affine_components(x, Group::GL)?;
    let field = x.ring().field().clone();
    let total = torus_sum(&field, params.n, |t| {
        let left = theta_torus(&field, t);
        // θ(t)^{-1} is the reversed diagonal.
        let right: Vec<FieldElem> = left.iter().rev().copied().collect();
        affine_character(&field, &twist_components(&field, &comps, &left, &right), params.a)
    });
    Ok(KlValue(total))
}

/// The same sum in closed form through `z = xθ(x)`:
/// `Σ ψ(Σ_{i<n} (t_i/t_{i+1}) z̄_{i,i+1} + t_n z̄_{n,n+1} + t_1^{-2} a x̄_{2n+1,1}/ϖ)`.
pub fn twisted_char_closed_form(x: &Mat, params: &CharParams) -> Result<KlValue> {
    require_theta_affine_generic(x, params)?;
    let ring = x.ring();
    let field = ring.field().clone();
    let n = params.n;
    let z = theta_norm(x)?;
    let band: Vec<FieldElem> = (1..=n).map(|i| ring.reduce(z.entry(i, i + 1))).collect();
    let corner = residue_over_uniformizer(ring, x.entry(2 * n + 1, 1))?;
    let total = torus_sum(&field, n, |t| {
        let mut s = FieldElem::ZERO;
        for i in 0..n - 1 {
            s = field.add(s, field.mul(quo(&field, t[i], t[i + 1]), band[i]));
        }
        s = field.add(s, field.mul(t[n - 1], band[n - 1]));
        let c = quo(&field, params.a, field.square(t[0]));
        field.psi(field.add(s, field.mul(c, corner)))
    });
    Ok(KlValue(total))
}

/// Residue of `a z_{1,2}^2 ⋯ z_{n,n+1}^2 x_{2n+1,1} / ϖ` with `z = xθ(x)`.
pub fn alpha_of(x: &Mat, params: &CharParams) -> Result<FieldElem> {
    require_theta_affine_generic(x, params)?;
    let ring = x.ring();
    let z = theta_norm(x)?;
    let mut prod = ring.teichmuller(params.a);
    for i in 1..=params.n {
        prod = ring.mul(&prod, &ring.square(z.entry(i, i + 1)));
    }
    prod = ring.mul(&prod, x.entry(2 * params.n + 1, 1));
    residue_over_uniformizer(ring, &prod)
}

/// Outcome of comparing both sides at `(g_u, h_u)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EndoscopyReport {
    pub norm_related: bool,
    pub twisted: KlValue,
    pub symplectic: KlValue,
    pub kloosterman: KlValue,
}

impl EndoscopyReport {
    pub fn holds(&self) -> bool {
        self.norm_related && self.twisted == self.symplectic && self.symplectic == self.kloosterman
    }
}

/// Builds `g_u`, `h_u` and compares the twisted character, the symplectic
/// character and `Kl^{n+1}_{au}`.
pub fn endoscopy_check(n: usize, u: FieldElem, a: FieldElem, ring: &Arc<RingSpec>) -> Result<EndoscopyReport> {
    let params = CharParams::new(n, a)?;
    let g = make_g(n, u, ring)?;
    let h = make_h(n, u, ring)?;
    endoscopy_check_pair(&g, &h, u, &params)
}

/// As [`endoscopy_check`] with caller-supplied matrices.
pub fn endoscopy_check_pair(g: &Mat, h: &Mat, u: FieldElem, params: &CharParams) -> Result<EndoscopyReport> {
    let field = g.ring().field();
    let norm_related = norm_correspondence_check(g, h)?;
    let twisted = twisted_char(g, params)?;
    let symplectic = char_sp(h, params)?;
    let big_n = u32::try_from(params.n + 1).map_err(|_| Error::Usage("rank too large".into()))?;
    let kloosterman = kloosterman_fast(big_n, field.mul(params.a, u), field)?;
    Ok(EndoscopyReport {
        norm_related,
        twisted,
        symplectic,
        kloosterman,
    })
}
