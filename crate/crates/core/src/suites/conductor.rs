use num_rational::Ratio;
use serde_json::json;

use super::Context;
use crate::conductor::{
    artin_adjoint, artin_rankin_selberg, depth_pair, formal_degree_match, formal_degree_match_with, gamma_abs,
    gamma_report, swan_split, ParamSpec,
};
use crate::report::{Check, CheckRecord};

const N_RANGE: u64 = 100;

pub fn checks(ctx: &Context) -> Vec<CheckRecord> {
    let q = ctx.q();
    let top = N_RANGE.max(ctx.config.n_max as u64);
    let ns: Vec<u64> = (1..=top).collect();
    let run = |id: &str, body: fn(u64, u64) -> bool| {
        Check::new(id)
            .param("n_max", top)
            .param("q", q)
            .run(|| ctx.exhaustive(ns.clone(), |&n| Ok((!body(n, q)).then(|| json!({"n": n})))))
    };
    vec![
        run("conductor.rankin_selberg", |n, _| {
            let d = Ratio::from_integer(2 * n + 1);
            let displayed = d * d * (Ratio::from_integer(1) + Ratio::new(2 * n, 1) / (d * d)) - 1;
            displayed == Ratio::from_integer(artin_rankin_selberg(n)) && artin_rankin_selberg(n) == (2 * n + 1).pow(2) + 2 * n - 1
        }),
        run("conductor.swan", |n, _| {
            let s = swan_split(n);
            let d = 2 * n + 1;
            s.sum == artin_rankin_selberg(n) - (d * d - 1) && s.difference == 0 && s.swan_wedge == n && s.swan_sym == n
        }),
        run("conductor.artin_adjoint", |n, _| artin_adjoint(n) == 2 * (n * n + n)),
        run("conductor.gamma_exponent", |n, q| {
            let g = gamma_abs(n, q);
            g.base == q && g.exponent == n * n + n && 2 * g.exponent == artin_adjoint(n)
        }),
        run("conductor.formal_degree", |n, q| {
            let rep = gamma_report(&ParamSpec { n, q });
            formal_degree_match(n, q) && rep.gamma_abs_log_q == rep.formal_degree_log_q
        }),
        run("conductor.formal_degree_control", |n, q| !formal_degree_match_with(n, q, n * n + 1)),
        run("conductor.depth", |n, _| {
            let (g, p) = depth_pair(n);
            g == Ratio::new(1, 2 * n) && p == Ratio::new(1, 2 * n + 1) && g > p
        }),
    ]
}
