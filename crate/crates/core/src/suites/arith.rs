use rand::Rng;
use serde_json::{json, Value};

use super::{outcome, Context};
use crate::gf2::FieldElem;
use crate::report::{Check, CheckRecord};

// Above this many field elements, per-element ring checks are sampled.
const EXHAUSTIVE_RING_LIMIT: u32 = 256;

pub fn field_checks(ctx: &Context) -> Vec<CheckRecord> {
    let k = &ctx.field;
    let q = k.q();
    let mut out = Vec::new();

    out.push(Check::new("gf2.psi_frobenius").param("q", q).run(|| {
        ctx.exhaustive(k.elements().collect(), |&x| {
            Ok((k.psi(k.square(x)) != k.psi(x)).then(|| json!({"x": ctx.elem(x)})))
        })
    }));

    out.push(Check::new("gf2.inverse").param("q", q).run(|| {
        ctx.exhaustive(k.units().collect(), |&x| {
            Ok((k.mul(x, k.inv(x)?) != FieldElem::ONE).then(|| json!({"x": ctx.elem(x)})))
        })
    }));

    out.push(Check::new("gf2.trace_frobenius").param("q", q).run(|| {
        ctx.exhaustive(k.elements().collect(), |&x| {
            Ok(((k.trace(x) == 1) != k.trace_by_frobenius(x)).then(|| json!({"x": x.bits()})))
        })
    }));

    out.push(Check::new("gf2.generator_order").param("q", q).run(|| {
        let g = k.generator();
        let mut seen = vec![false; q as usize];
        let mut x = FieldElem::ONE;
        for i in 0..q - 1 {
            if seen[x.bits() as usize] {
                return outcome(Ok(Some(json!({"repeat_at": i}))));
            }
            seen[x.bits() as usize] = true;
            x = k.mul(x, g);
        }
        outcome(Ok((x != FieldElem::ONE).then(|| json!({"g^(q-1)": x.bits()}))))
    }));

    // Σ_x ψ(ax) = 0 for a ≠ 0: ψ is a nontrivial additive character.
    out.push(
        Check::new("gf2.psi_orthogonality")
            .param("q", q)
            .param("samples", ctx.config.samples)
            .run(|| {
                ctx.sampled("gf2.psi_orthogonality", ctx.config.samples.min(64), |rng| {
                    let a = FieldElem(rng.random_range(1..q));
                    let s: i64 = k.elements().map(|x| i64::from(k.psi(k.mul(a, x)))).sum();
                    Ok((s != 0).then(|| json!({"a": ctx.elem(a), "sum": s})))
                })
            }),
    );
    out
}

pub fn ring_checks(ctx: &Context) -> Vec<CheckRecord> {
    let r = &ctx.ring;
    let k = r.field();
    let q = k.q();
    let m = r.precision();
    let samples = ctx.config.samples;
    let mut out = Vec::new();

    let teich = |a: FieldElem, b: FieldElem| -> Option<Value> {
        let ta = r.teichmuller(a);
        let fixed = r.pow(&ta, u64::from(q)) == ta;
        let section = r.reduce(&ta) == a;
        let mult = r.mul(&ta, &r.teichmuller(b)) == r.teichmuller(k.mul(a, b));
        (!(fixed && section && mult)).then(|| json!({"a": ctx.elem(a), "b": ctx.elem(b)}))
    };
    let check = Check::new("dring.teichmuller").param("q", q).param("m", m);
    out.push(if q <= 16 {
        check.param("mode", "exhaustive").run(|| {
            let pairs: Vec<(FieldElem, FieldElem)> =
                k.elements().flat_map(|a| k.elements().map(move |b| (a, b))).collect();
            ctx.exhaustive(pairs, |&(a, b)| Ok(teich(a, b)))
        })
    } else {
        let n = if q <= EXHAUSTIVE_RING_LIMIT { q as usize } else { samples };
        check.param("mode", "sampled").param("samples", n).run(|| {
            ctx.sampled("dring.teichmuller", n, |rng| {
                Ok(teich(FieldElem(rng.random_range(0..q)), FieldElem(rng.random_range(0..q))))
            })
        })
    });

    out.push(Check::new("dring.inverse").param("samples", samples).run(|| {
        ctx.sampled("dring.inverse", samples, |rng| {
            let x = r.random_unit(rng);
            Ok((r.mul(&x, &r.invert(&x)?) != r.one()).then(|| json!({"x": x.coeffs()[..r.degree()].to_vec()})))
        })
    }));

    out.push(Check::new("dring.reduce_homomorphism").param("samples", samples).run(|| {
        ctx.sampled("dring.reduce_homomorphism", samples, |rng| {
            let (x, y) = (r.random(rng), r.random(rng));
            let add = r.reduce(&r.add(&x, &y)) == k.add(r.reduce(&x), r.reduce(&y));
            let mul = r.reduce(&r.mul(&x, &y)) == k.mul(r.reduce(&x), r.reduce(&y));
            Ok((!(add && mul)).then(|| json!({"x": r.to_digits(&x).iter().map(|d| d.bits()).collect::<Vec<_>>()})))
        })
    }));

    out.push(Check::new("dring.valuation").param("samples", samples).run(|| {
        ctx.sampled("dring.valuation", samples, |rng| {
            let u = r.random_unit(rng);
            let x = r.random(rng);
            let y = r.random(rng);
            let (vx, vy) = (r.valuation(&x), r.valuation(&y));
            let uniformizer_ok = r.valuation(&r.mul_uniformizer(&u)) == 1.min(m);
            let product_ok = (vx == m && vy == m) || r.valuation(&r.mul(&x, &y)) == (vx + vy).min(m);
            let sum_ok = r.valuation(&r.add(&x, &y)) >= vx.min(vy);
            Ok((!(uniformizer_ok && product_ok && sum_ok)).then(|| json!({"vx": vx, "vy": vy})))
        })
    }));

    let check = Check::new("dring.integer_oracle").param("m", m);
    out.push(if k.degree() != 1 {
        check.skip("only meaningful for f = 1")
    } else if m > 8 {
        check.skip("exhaustive comparison limited to m <= 8")
    } else {
        check.run(|| {
            let modulus = 1i64 << m;
            let pairs: Vec<(i64, i64)> = (0..modulus).flat_map(|a| (0..modulus).map(move |b| (a, b))).collect();
            ctx.exhaustive(pairs, |&(a, b)| {
                let (x, y) = (r.from_int(a), r.from_int(b));
                let ok = r.add(&x, &y) == r.from_int((a + b) % modulus)
                    && r.mul(&x, &y) == r.from_int((a * b) % modulus)
                    && r.sub(&x, &y) == r.from_int((a - b).rem_euclid(modulus));
                Ok((!ok).then(|| json!({"a": a, "b": b})))
            })
        })
    });
    out
}
