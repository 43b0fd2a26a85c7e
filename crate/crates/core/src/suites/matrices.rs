use serde_json::{json, Value};

use super::Context;
use crate::error::Result;
use crate::gf2::FieldElem;
use crate::matgrp::congruence::{constant_term_congruence, norm_congruences, theta_congruences, Verdict};
use crate::matgrp::family::{displayed_g_theta_g, displayed_theta_g, make_phi, theta_phi_identity, uniformizer_times};
use crate::matgrp::iwahori::theta_on_components;
use crate::matgrp::sample::{
    random_invertible, random_iwahori_plus, random_iwahori_plus_plus, random_non_theta_generic,
    random_theta_affine_generic,
};
use crate::matgrp::{
    affine_components, classify_filtration, eisenstein_check, is_symplectic, make_g, make_h,
    norm_correspondence_check, theta, theta_norm, FiltrationClass, Group, Mat,
};
use crate::report::{Check, CheckRecord};

fn failed_congruences(list: Vec<crate::matgrp::congruence::Congruence>) -> Option<Value> {
    let bad: Vec<String> = list.into_iter().filter(|c| c.failed()).map(|c| c.label).collect();
    (!bad.is_empty()).then(|| json!(bad))
}

pub fn checks(ctx: &Context) -> Vec<CheckRecord> {
    let r = &ctx.ring;
    let k = r.field();
    let m = r.precision();
    let samples = ctx.config.samples;
    let units: Vec<FieldElem> = k.units().collect();
    let mut out = Vec::new();

    for n in 1..=ctx.config.n_max {
        let big = 2 * n + 1;
        let label = |name: &str| format!("matgrp.{name}/n={n}");
        let id = |name: &str| format!("matgrp.{name}");

        out.push(Check::new(id("theta_involution")).param("n", n).param("samples", samples).run(|| {
            ctx.sampled(&label("theta_involution"), samples, |rng| {
                let g = random_invertible(r, big, rng);
                Ok((theta(&theta(&g)?)? != g).then(|| ctx.mat(&g)))
            })
        }));

        out.push(Check::new(id("filtration_stability")).param("n", n).param("samples", samples).run(|| {
            ctx.sampled(&label("filtration_stability"), samples, |rng| {
                let x = random_iwahori_plus(r, big, rng);
                let tx = theta(&x)?;
                if !classify_filtration(&tx, Group::GL)?.in_plus() {
                    return Ok(Some(json!({"class": "I+", "x": ctx.mat(&x)})));
                }
                if affine_components(&tx, Group::GL)? != theta_on_components(&affine_components(&x, Group::GL)?) {
                    return Ok(Some(json!({"quotient_action": ctx.mat(&x)})));
                }
                let y = random_iwahori_plus_plus(r, big, rng);
                let ty = classify_filtration(&theta(&y)?, Group::GL)?;
                Ok((ty != FiltrationClass::IwahoriPlusPlus).then(|| json!({"class": "I++", "x": ctx.mat(&y)})))
            })
        }));

        for (name, which) in [("theta_congruences", 1), ("norm_congruences", 2)] {
            let check = Check::new(id(name)).param("n", n).param("samples", samples).param("m", m);
            out.push(if m < 3 {
                check.skip("congruences mod p^2 need m >= 3")
            } else {
                check.run(|| {
                    ctx.sampled(&label(name), samples, |rng| {
                        let x = random_iwahori_plus(r, big, rng);
                        let list = if which == 1 { theta_congruences(&x)? } else { norm_congruences(&x)? };
                        Ok(failed_congruences(list).map(|bad| json!({"failed": bad, "x": ctx.mat(&x)})))
                    })
                })
            });
        }

        out.push(Check::new(id("symplectic_h")).param("n", n).run(|| {
            ctx.exhaustive(units.clone(), |&u| {
                Ok((!is_symplectic(&make_h(n, u, r)?)?).then(|| json!({"u": ctx.elem(u)})))
            })
        }));

        out.push(Check::new(id("example_display")).param("n", n).run(|| {
            ctx.exhaustive(units.clone(), |&u| {
                let g = make_g(n, u, r)?;
                let z = theta_norm(&g)?;
                let ok = theta(&g)? == displayed_theta_g(n, u, r)?
                    && z == displayed_g_theta_g(n, u, r)?
                    && z.block(0..2 * n, 0..2 * n) == make_h(n, u, r)?;
                Ok((!ok).then(|| json!({"u": ctx.elem(u)})))
            })
        }));

        out.push(Check::new(id("norm_correspondence")).param("n", n).run(|| {
            ctx.exhaustive(units.clone(), |&u| {
                let ok = norm_correspondence_check(&make_g(n, u, r)?, &make_h(n, u, r)?)?
                    && !norm_correspondence_check(&make_g(n, u, r)?, &Mat::identity(r, 2 * n))?;
                Ok((!ok).then(|| json!({"u": ctx.elem(u)})))
            })
        }));

        let check = Check::new(id("eisenstein_forward")).param("n", n).param("samples", samples);
        out.push(if m < 3 {
            check.skip("constant term congruence mod p^2 needs m >= 3")
        } else {
            check.run(|| {
                ctx.sampled(&label("eisenstein_forward"), samples, |rng| {
                    let x = random_theta_affine_generic(r, n, rng);
                    let rep = eisenstein_check(&x)?;
                    let term = constant_term_congruence(&x, &rep)?;
                    Ok((!rep.passes || term.verdict != Verdict::Holds).then(|| ctx.mat(&x)))
                })
            })
        });

        out.push(Check::new(id("eisenstein_converse")).param("n", n).param("samples", samples).run(|| {
            ctx.sampled(&label("eisenstein_converse"), samples, |rng| {
                let x = random_non_theta_generic(r, n, rng);
                Ok(eisenstein_check(&x)?.passes.then(|| ctx.mat(&x)))
            })
        }));

        out.push(Check::new(id("eisenstein_family")).param("n", n).run(|| {
            ctx.exhaustive(units.clone(), |&u| {
                let rep = eisenstein_check(&make_g(n, u, r)?)?;
                let residue = r.reduce(&r.div_uniformizer(&rep.constant_term)?);
                Ok((!(rep.passes && rep.a0_vanishes && residue == u)).then(|| json!({"u": ctx.elem(u)})))
            })
        }));

        out.push(Check::new(id("phi")).param("n", n).run(|| {
            ctx.exhaustive(units.clone(), |&a| -> Result<Option<Value>> {
                let phi = make_phi(big, a, r)?;
                let scalar = Mat::identity(r, big).scale(&uniformizer_times(r, a));
                let ok = phi.pow(big as u64) == scalar && theta_phi_identity(big, a, r)?;
                Ok((!ok).then(|| json!({"a": ctx.elem(a)})))
            })
        }));
    }
    out
}
