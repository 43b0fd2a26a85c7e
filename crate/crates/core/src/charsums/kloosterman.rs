//! Kloosterman sums `Kl^N_x(ψ) = Σ_{x_1⋯x_N = x} ψ(x_1 + ⋯ + x_N)` over
//! `k^×`, their Frobenius-twisted variants, and Fourier transforms against
//! multiplicative characters.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{FieldElem, FieldSpec};

/// An exact Kloosterman-type sum. `ψ = ±1`, so every value is an integer
/// bounded in absolute value by the number of terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct KlValue(pub i128);

impl fmt::Display for KlValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(q-1)^{N-1}`, the number of terms of `Kl^N_x`; errors when the bound no
/// longer fits an `i128` (then neither would the partial sums).
pub fn term_bound(big_n: u32, q: u32) -> Result<i128> {
    i128::from(q - 1)
        .checked_pow(big_n.saturating_sub(1))
        .ok_or_else(|| Error::Overflow(format!("(q-1)^(N-1) for q={q}, N={big_n}")))
}

fn check_args(big_n: u32, x: FieldElem, field: &FieldSpec) -> Result<u32> {
    if big_n == 0 {
        return Err(Error::Usage("Kloosterman sums need N >= 1".into()));
    }
    term_bound(big_n, field.q())?;
    field
        .log(x)
        .ok_or_else(|| Error::Domain("Kloosterman sum at x = 0".into()))
}

/// Brute force over the `N-1` free coordinates; the last is forced by the
/// product constraint.
pub fn kloosterman(big_n: u32, x: FieldElem, field: &FieldSpec) -> Result<KlValue> {
    let log_x = check_args(big_n, x, field)?;
    let order = u64::from(field.q() - 1);
    let free = (big_n - 1) as usize;
    if free == 0 {
        return Ok(KlValue(i128::from(field.psi(x))));
    }
    // Enumerate logs (e_1..e_{N-1}); x_N = g^{log x - Σ e_i}.
    let sum_from = |first: u64| -> i128 {
        let mut logs = vec![0u64; free];
        logs[0] = first;
        let mut total = 0i128;
        loop {
            let mut partial = FieldElem::ZERO;
            let mut log_sum = 0u64;
            for &e in &logs {
                partial = field.add(partial, field.gen_pow(e));
                log_sum += e;
            }
            let last_log = (u64::from(log_x) + order * free as u64 - log_sum) % order;
            let s = field.add(partial, field.gen_pow(last_log));
            total += i128::from(field.psi(s));
            // Odometer over positions 1..free; position 0 is fixed per task.
            let mut pos = free;
            loop {
                if pos == 1 {
                    return total;
                }
                pos -= 1;
                logs[pos] += 1;
                if logs[pos] < order {
                    break;
                }
                logs[pos] = 0;
            }
        }
    };
    let total: i128 = (0..order).into_par_iter().map(sum_from).sum();
    Ok(KlValue(total))
}

/// `[Kl^N_{g^0}, Kl^N_{g^1}, ..., Kl^N_{g^{q-2}}]` by iterated multiplicative
/// convolution: `K_{j+1}(x) = Σ_y K_j(x/y) ψ(y)`, `O(N q^2)`.
pub fn kloosterman_table(big_n: u32, field: &FieldSpec) -> Result<Vec<KlValue>> {
    check_args(big_n, FieldElem::ONE, field)?;
    let order = (field.q() - 1) as usize;
    let psi: Vec<i128> = field.units().map(|u| i128::from(field.psi(u))).collect();
    let mut table = psi.clone();
    for _ in 1..big_n {
        table = (0..order)
            .into_par_iter()
            .map(|k| {
                (0..order)
                    .map(|l| table[(k + order - l) % order] * psi[l])
                    .sum::<i128>()
            })
            .collect();
    }
    Ok(table.into_iter().map(KlValue).collect())
}

/// Same value as [`kloosterman`], read off the convolution table.
pub fn kloosterman_fast(big_n: u32, x: FieldElem, field: &FieldSpec) -> Result<KlValue> {
    let log_x = check_args(big_n, x, field)?;
    Ok(kloosterman_table(big_n, field)?[log_x as usize])
}

/// `Σ ψ(s_1 + ⋯ + s_N)` over unit tuples with `s_1^{e_1} ⋯ s_N^{e_N} = x`,
/// by enumeration of all `(q-1)^N` tuples. For exponents that are powers of
/// two this equals `Kl^N_x`, since squaring is a bijection fixing `ψ`.
pub fn kloosterman_twisted(exponents: &[u64], x: FieldElem, field: &FieldSpec) -> Result<KlValue> {
    let big_n = u32::try_from(exponents.len()).map_err(|_| Error::Usage("too many exponents".into()))?;
    if exponents.contains(&0) {
        return Err(Error::Usage("twist exponents must be positive".into()));
    }
    let log_x = u64::from(check_args(big_n, x, field)?);
    i128::from(field.q() - 1)
        .checked_pow(big_n)
        .ok_or_else(|| Error::Overflow("too many tuples".into()))?;
    let order = u64::from(field.q() - 1);
    let mut logs = vec![0u64; exponents.len()];
    let mut total = 0i128;
    loop {
        let weighted = logs
            .iter()
            .zip(exponents)
            .fold(0u64, |acc, (&l, &e)| (acc + l * (e % order)) % order);
        if weighted == log_x {
            let s = logs.iter().fold(FieldElem::ZERO, |acc, &l| field.add(acc, field.gen_pow(l)));
            total += i128::from(field.psi(s));
        }
        let mut pos = logs.len();
        loop {
            if pos == 0 {
                return Ok(KlValue(total));
            }
            pos -= 1;
            logs[pos] += 1;
            if logs[pos] < order {
                break;
            }
            logs[pos] = 0;
        }
    }
}

/// `Σ_{x ∈ k^×} Kl^N_x χ_j(x)` with `χ_j(g^k) = e^{2πi jk/(q-1)}`.
pub fn kl_fourier(big_n: u32, chi: u32, field: &FieldSpec) -> Result<Complex64> {
    let table = kloosterman_table(big_n, field)?;
    Ok(fourier_from_table(&table, chi))
}

fn grouped_by_phase(table: &[KlValue], chi: u32) -> Vec<i128> {
    let order = table.len();
    let mut grouped = vec![0i128; order];
    for (k, v) in table.iter().enumerate() {
        grouped[(k * chi as usize) % order] += v.0;
    }
    grouped
}

fn fourier_from_table(table: &[KlValue], chi: u32) -> Complex64 {
    let order = table.len();
    // Exact integer coefficient per root of unity, then one float pass.
    grouped_by_phase(table, chi)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(r, &c)| {
            let angle = 2.0 * std::f64::consts::PI * r as f64 / order as f64;
            Complex64::from_polar(c as f64, angle)
        })
        .sum()
}

/// Coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
fn cyclotomic(m: usize) -> Vec<i128> {
    // X^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i128; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// `|Σ_x Kl^N_x χ_j(x)|^2` computed exactly in `Z[ζ_{q-1}]`. Returns the
/// rational integer when the reduced norm has no irrational part (it always
/// should), `None` otherwise.
pub fn kl_fourier_norm_exact(big_n: u32, chi: u32, field: &FieldSpec) -> Result<Option<i128>> {
    let table = kloosterman_table(big_n, field)?;
    let order = table.len();
    let c = grouped_by_phase(&table, chi);
    // Σ c_r ζ^r times its conjugate Σ c_s ζ^{-s}.
    let mut prod = vec![0i128; order];
    for (r, &cr) in c.iter().enumerate() {
        if cr == 0 {
            continue;
        }
        for (s, &cs) in c.iter().enumerate() {
            let idx = (r + order - s) % order;
            prod[idx] = cr
                .checked_mul(cs)
                .and_then(|v| v.checked_add(prod[idx]))
                .ok_or_else(|| Error::Overflow("Fourier norm".into()))?;
        }
    }
    let phi = cyclotomic(order);
    let deg = phi.len() - 1;
    // Reduce modulo Φ (monic) from the top.
    for k in (deg..order).rev() {
        let top = prod[k];
        if top == 0 {
            continue;
        }
        for (j, &p) in phi.iter().enumerate() {
            prod[k - deg + j] -= top * p;
        }
    }
    Ok(prod[1..deg].iter().all(|&v| v == 0).then_some(prod[0]))
}

/// Some `u ∈ k^×` with `Kl^{n+1}_{au} ≠ 0`, searched exhaustively.
pub fn nonvanishing_witness(n: u32, a: FieldElem, field: &FieldSpec) -> Result<FieldElem> {
    if a.is_zero() {
        return Err(Error::Domain("parameter a must be nonzero".into()));
    }
    let table = kloosterman_table(n + 1, field)?;
    field
        .units()
        .find(|&u| {
            let au = field.mul(a, u);
            table[field.log(au).expect("unit") as usize].0 != 0
        })
        .ok_or_else(|| {
            Error::Domain(format!(
                "Kl^{}_(a u) vanishes for every u with a = {}",
                n + 1,
                field.format_elem(a)
            ))
        })
}

/// First pair of distinct domain points with equal images, if any.
pub fn find_collision<K, V, I, F>(domain: I, mut f: F) -> Option<(K, K)>
where
    K: Clone,
    V: Eq + Hash,
    I: IntoIterator<Item = K>,
    F: FnMut(&K) -> V,
{
    let mut seen: HashMap<V, K> = HashMap::new();
    for point in domain {
        let image = f(&point);
        if let Some(prev) = seen.get(&image) {
            return Some((prev.clone(), point));
        }
        seen.insert(image, point);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub injective: bool,
    pub collision: Option<(FieldElem, FieldElem)>,
}

/// Whether `a -> (Kl^{n+1}_{au})_{u ∈ k^×}` is injective on `k^×`.
pub fn kl_injectivity(n: u32, field: &FieldSpec) -> Result<InjectivityReport> {
    let table = kloosterman_table(n + 1, field)?;
    let collision = find_collision(field.units(), |&a| {
        field
            .units()
            .map(|u| table[field.log(field.mul(a, u)).expect("unit") as usize])
            .collect::<Vec<_>>()
    });
    Ok(InjectivityReport {
        injective: collision.is_none(),
        collision,
    })
}
