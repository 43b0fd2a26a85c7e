use rand::Rng;
use serde_json::json;

use super::Context;
use crate::charsums::characters::{beta_of_signed, char_sp_closed_form, endoscopy_check_pair, twisted_char_closed_form};
use crate::charsums::{
    alpha_of, beta_of, char_sp, endoscopy_check, find_collision, kl_fourier, kl_fourier_norm_exact,
    kl_injectivity, kloosterman, kloosterman_table, kloosterman_twisted, nonvanishing_witness, twisted_char,
    CharParams, KlValue,
};
use crate::charsums::kloosterman::term_bound;
use crate::gf2::FieldElem;
use crate::matgrp::sample::{random_sp_affine_generic, random_theta_affine_generic};
use crate::matgrp::{make_g, make_h, norm_correspondence_check};
use crate::report::{Check, CheckRecord, Outcome};

const BRUTE_FORCE_Q: u64 = 32;
const TWIST_Q: u64 = 16;
const MAX_TORUS_TERMS: u64 = 1 << 22;
const MAX_TABLE_Q: u64 = 4096;
const FOURIER_TOLERANCE: f64 = 1e-9;
const MAX_ENDOSCOPY_TERMS: u64 = 1 << 30;

fn power(base: u64, exp: usize) -> u64 {
    base.checked_pow(exp as u32).unwrap_or(u64::MAX)
}

pub fn checks(ctx: &Context) -> Vec<CheckRecord> {
    let k = &ctx.field;
    let r = &ctx.ring;
    let q = ctx.q();
    let samples = ctx.config.samples;
    let n_max = ctx.config.n_max;
    let units: Vec<FieldElem> = k.units().collect();
    let mut out = Vec::new();

    for big_n in 1..=4u32 {
        let check = Check::new("charsums.kl_fast_vs_brute").param("N", big_n).param("q", q);
        out.push(if q > BRUTE_FORCE_Q {
            check.skip(format!("brute force limited to q <= {BRUTE_FORCE_Q}"))
        } else {
            check.run(|| {
                let table = match kloosterman_table(big_n, k) {
                    Ok(t) => t,
                    Err(e) => return Outcome::Fail(json!({"error": e.to_string()})),
                };
                ctx.exhaustive(units.clone(), |&x| {
                    let brute = kloosterman(big_n, x, k)?;
                    let fast = table[k.log(x).expect("unit") as usize];
                    Ok((brute != fast).then(|| json!({"x": ctx.elem(x), "brute": brute.0, "fast": fast.0})))
                })
            })
        });
    }

    for big_n in 1..=(n_max as u32 + 1) {
        let check = Check::new("charsums.kl_bound").param("N", big_n).param("q", q);
        out.push(if q > MAX_TABLE_Q {
            check.skip(format!("table limited to q <= {MAX_TABLE_Q}"))
        } else {
            check.run(|| {
                super::outcome((|| {
                    let bound = term_bound(big_n, k.q())?;
                    let table = kloosterman_table(big_n, k)?;
                    // Kl^N_x ≡ (q-1)^{N-1} mod 2 since ψ = ±1.
                    Ok(table
                        .iter()
                        .position(|v| v.0.abs() > bound || (v.0 - bound) % 2 != 0)
                        .map(|i| json!({"x": format!("g^{i}"), "value": table[i].0})))
                })())
            })
        });
    }

    for big_n in 2..=4usize {
        let check = Check::new("charsums.frobenius_twist").param("N", big_n).param("q", q);
        out.push(if q > TWIST_Q {
            check.skip(format!("tuple enumeration limited to q <= {TWIST_Q}"))
        } else {
            check.run(|| {
                let mut pattern = vec![2u64; big_n - 2];
                pattern.extend([1, 1]);
                let mixed: Vec<u64> = (0..big_n).map(|i| 1u64 << (i % 3)).collect();
                ctx.exhaustive(units.clone(), |&x| {
                    let plain = kloosterman(big_n as u32, x, k)?;
                    for e in [&pattern, &mixed] {
                        let t = kloosterman_twisted(e, x, k)?;
                        if t != plain {
                            return Ok(Some(json!({"x": ctx.elem(x), "exponents": e, "twisted": t.0, "plain": plain.0})));
                        }
                    }
                    Ok(None)
                })
            })
        });
    }

    for n in 1..=n_max {
        let terms = power(q - 1, n);
        let label = |name: &str| format!("charsums.{name}/n={n}");

        let check = Check::new("charsums.char_sp").param("n", n).param("samples", samples);
        out.push(if terms > MAX_TORUS_TERMS {
            check.skip("torus too large")
        } else {
            check.run(|| {
                ctx.sampled(&label("char_sp"), samples, |rng| {
                    let a = FieldElem(rng.random_range(1..k.q()));
                    let p = CharParams::new(n, a)?;
                    let y = random_sp_affine_generic(r, n, rng);
                    let value = char_sp(&y, &p)?;
                    let beta = beta_of(&y, &p)?;
                    let kl = kloosterman(n as u32 + 1, beta, k)?;
                    let ok = value == kl && value == char_sp_closed_form(&y, &p)? && beta == beta_of_signed(&y, &p)?;
                    Ok((!ok).then(|| json!({"a": ctx.elem(a), "y": ctx.mat(&y), "value": value.0, "kl": kl.0})))
                })
            })
        });

        let check = Check::new("charsums.twisted_char").param("n", n).param("samples", samples);
        out.push(if terms > MAX_TORUS_TERMS {
            check.skip("torus too large")
        } else {
            check.run(|| {
                ctx.sampled(&label("twisted_char"), samples, |rng| {
                    let a = FieldElem(rng.random_range(1..k.q()));
                    let p = CharParams::new(n, a)?;
                    let x = random_theta_affine_generic(r, n, rng);
                    let value = twisted_char(&x, &p)?;
                    let kl = kloosterman(n as u32 + 1, alpha_of(&x, &p)?, k)?;
                    let ok = value == kl && value == twisted_char_closed_form(&x, &p)?;
                    Ok((!ok).then(|| json!({"a": ctx.elem(a), "x": ctx.mat(&x), "value": value.0, "kl": kl.0})))
                })
            })
        });

        let check = Check::new("charsums.nonvanishing").param("n", n).param("q", q);
        out.push(if q > MAX_TABLE_Q {
            check.skip(format!("table limited to q <= {MAX_TABLE_Q}"))
        } else {
            check.run(|| {
                ctx.exhaustive(units.clone(), |&a| {
                    let u = nonvanishing_witness(n as u32, a, k)?;
                    let v = kloosterman_table(n as u32 + 1, k)?[k.log(k.mul(a, u)).expect("unit") as usize];
                    Ok((v == KlValue(0)).then(|| json!({"a": ctx.elem(a)})))
                })
            })
        });

        let check = Check::new("charsums.injectivity").param("n", n).param("q", q);
        out.push(if q > 256 {
            check.skip("pairwise comparison limited to q <= 256")
        } else {
            check.run(|| {
                super::outcome(kl_injectivity(n as u32, k).map(|rep| {
                    rep.collision.map(|(a, b)| json!({"a": ctx.elem(a), "b": ctx.elem(b)}))
                }))
            })
        });
    }

    for big_n in 1..=(n_max as u32 + 1) {
        let check = Check::new("charsums.fourier").param("N", big_n).param("q", q);
        out.push(if q > MAX_TABLE_Q {
            check.skip(format!("table limited to q <= {MAX_TABLE_Q}"))
        } else {
            check.run(|| {
                let target = (q as f64).powi(big_n as i32);
                let exact_target = i128::from(q as u32).pow(big_n);
                ctx.exhaustive((1..k.q() - 1).collect(), |&chi| {
                    let z = kl_fourier(big_n, chi, k)?;
                    let exact = kl_fourier_norm_exact(big_n, chi, k)?;
                    let close = (z.norm_sqr() - target).abs() <= FOURIER_TOLERANCE * target;
                    Ok((!close || exact != Some(exact_target))
                        .then(|| json!({"chi": chi, "norm_sqr": z.norm_sqr(), "exact": exact.map(|v| v.to_string())})))
                })
            })
        });
    }

    out.push(Check::new("charsums.collision_self_test").run(|| {
        let found = find_collision([0u8, 1], |_| ());
        super::outcome(Ok((found != Some((0, 1))).then(|| json!("constant map not detected"))))
    }));
    out
}

pub fn endoscopy_checks(ctx: &Context) -> Vec<CheckRecord> {
    let k = &ctx.field;
    let r = &ctx.ring;
    let q = ctx.q();
    let pairs: Vec<(FieldElem, FieldElem)> = k.units().flat_map(|u| k.units().map(move |a| (u, a))).collect();
    (1..=ctx.config.n_max)
        .map(|n| {
            let check = Check::new("endoscopy.relation").param("n", n).param("q", q);
            if power(q - 1, n + 2) > MAX_ENDOSCOPY_TERMS {
                return check.skip("grid too large");
            }
            check.run(|| {
                ctx.exhaustive(pairs.clone(), |&(u, a)| {
                    let rep = endoscopy_check(n, u, a, r)?;
                    Ok((!rep.holds()).then(|| json!({"u": ctx.elem(u), "a": ctx.elem(a), "report": rep})))
                })
            })
        })
        .collect()
}

/// Runs the endoscopy comparison on a deliberately broken pair: `h_u` with
/// its first band entry shifted by one. Must fail.
pub fn negative_control(ctx: &Context) -> CheckRecord {
    let r = &ctx.ring;
    Check::new("negative_control").param("mutation", "h[1,2] += 1").run(|| {
        super::outcome((|| {
            let u = FieldElem::ONE;
            let g = make_g(1, u, r)?;
            let mut h = make_h(1, u, r)?;
            h.set_entry(1, 2, r.add(h.entry(1, 2), &r.one()));
            let norm = norm_correspondence_check(&g, &h)?;
            let relation = match endoscopy_check_pair(&g, &h, u, &CharParams::new(1, u)?) {
                Ok(rep) => rep.holds(),
                Err(_) => false,
            };
            Ok((!(norm && relation)).then(|| json!({"h": ctx.mat(&h), "norm_related": norm})))
        })())
    })
}
