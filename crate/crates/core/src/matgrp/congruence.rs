//! Entrywise congruences satisfied by `θ(x)` and `x θ(x)` for `x ∈ I+`.
//!
//! A congruence modulo `p^t` is only evaluated when the working precision
//! is at least `t + 1`; otherwise it is reported as skipped.

use crate::dring::RingElem;
use crate::error::{Error, Result};

use super::charpoly::EisensteinReport;
use super::iwahori::{theta, Group, classify_filtration};
use super::mat::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub label: String,
    /// The check is modulo `p^modulus`.
    pub modulus: u32,
    pub verdict: Verdict,
}

impl Congruence {
    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

fn congruence(x: &Mat, label: String, lhs: &RingElem, rhs: &RingElem, t: u32) -> Congruence {
    let ring = x.ring();
    let verdict = if ring.precision() < t + 1 {
        Verdict::Skipped
    } else if ring.eq_mod(lhs, rhs, t).expect("t < m") {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Congruence { label, modulus: t, verdict }
}

fn split(x: &Mat) -> Result<usize> {
    let big = x.dim();
    if big.is_multiple_of(2) || big < 3 {
        return Err(Error::Usage(format!("expected GL_(2n+1) with n >= 1, got size {big}")));
    }
    if !classify_filtration(x, Group::GL)?.in_plus() {
        return Err(Error::Usage("element is not in I+".into()));
    }
    Ok((big - 1) / 2)
}

/// Congruences for `θ(x) = (x'_{ij})`.
pub fn theta_congruences(x: &Mat) -> Result<Vec<Congruence>> {
    let n = split(x)?;
    let big = 2 * n + 1;
    let r = x.ring();
    let xp = theta(x)?;
    let mut out = Vec::with_capacity(big + 2);
    for i in 1..=2 * n {
        out.push(congruence(
            x,
            format!("x'[{i},{}] = x[{},{}]", i + 1, big - i, big + 1 - i),
            xp.entry(i, i + 1),
            x.entry(big - i, big + 1 - i),
            1,
        ));
    }
    let corner = x.entry(big, 1);
    out.push(congruence(
        x,
        format!("x'[{},1] = x[{big},2] - x[1,2] x[{big},1]", 2 * n),
        xp.entry(2 * n, 1),
        &r.sub(x.entry(big, 2), &r.mul(x.entry(1, 2), corner)),
        2,
    ));
    out.push(congruence(
        x,
        format!("x'[{big},2] = x[{},1] - x[{},{big}] x[{big},1]", 2 * n, 2 * n),
        xp.entry(big, 2),
        &r.sub(x.entry(2 * n, 1), &r.mul(x.entry(2 * n, big), corner)),
        2,
    ));
    out.push(congruence(
        x,
        format!("x'[{big},1] = -x[{big},1]"),
        xp.entry(big, 1),
        &r.neg(corner),
        2,
    ));
    Ok(out)
}

/// Congruences for `x θ(x) = (z_{ij})`.
pub fn norm_congruences(x: &Mat) -> Result<Vec<Congruence>> {
    let n = split(x)?;
    let big = 2 * n + 1;
    let r = x.ring();
    let z = x.mul(&theta(x)?);
    let mut out = Vec::with_capacity(big + 2);
    for i in 1..=2 * n {
        out.push(congruence(
            x,
            format!("z[{i},{}] = x[{i},{}] + x[{},{}]", i + 1, i + 1, big - i, big + 1 - i),
            z.entry(i, i + 1),
            &r.add(x.entry(i, i + 1), x.entry(big - i, big + 1 - i)),
            1,
        ));
    }
    let corner = x.entry(big, 1);
    let lower = r.add(x.entry(2 * n, 1), x.entry(big, 2));
    let band_sum = r.add(x.entry(1, 2), x.entry(2 * n, big));
    out.push(congruence(
        x,
        format!("z[{},1] = x[{},1] + x[{big},2] - (x[1,2] + x[{},{big}]) x[{big},1]", 2 * n, 2 * n, 2 * n),
        z.entry(2 * n, 1),
        &r.sub(&lower, &r.mul(&band_sum, corner)),
        2,
    ));
    out.push(congruence(
        x,
        format!("z[{big},2] = x[{},1] + x[{big},2]", 2 * n),
        z.entry(big, 2),
        &lower,
        2,
    ));
    out.push(congruence(x, format!("z[{big},1] = 0"), z.entry(big, 1), &r.zero(), 2));
    Ok(out)
}

/// `z_{1,2}^2 ... z_{n,n+1}^2 x_{2n+1,1}`, the predicted Eisenstein constant
/// term modulo `p^2`.
pub fn predicted_constant_term(x: &Mat) -> Result<RingElem> {
    let n = split(x)?;
    let r = x.ring();
    let z = x.mul(&theta(x)?);
    let bands = (1..=n).fold(r.one(), |acc, i| r.mul(&acc, &r.square(z.entry(i, i + 1))));
    Ok(r.mul(&bands, x.entry(2 * n + 1, 1)))
}

/// `a_1 ≡ z_{1,2}^2 ... z_{n,n+1}^2 x_{2n+1,1} (mod p^2)`. Signs are
/// irrelevant here: `c ≡ -c (mod p^2)` for every `c ∈ p`.
pub fn constant_term_congruence(x: &Mat, report: &EisensteinReport) -> Result<Congruence> {
    let predicted = predicted_constant_term(x)?;
    Ok(congruence(
        x,
        "a_1 = z[1,2]^2 ... z[n,n+1]^2 x[2n+1,1]".into(),
        &report.constant_term,
        &predicted,
        2,
    ))
}
