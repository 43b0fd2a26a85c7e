//! Closed-form conductor, γ-factor and formal-degree bookkeeping for the
//! parameter of a simple supercuspidal representation of `Sp_2n`: an
//! irreducible `2n+1`-dimensional orthogonal representation induced from a
//! totally ramified extension of degree `2n+1`.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// The numeric shape of the parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub n: u64,
    pub q: u64,
}

impl ParamSpec {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("rank n must be at least 1".into()));
        }
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::Usage(format!("q = {q} is not a power of 2")));
        }
        Ok(ParamSpec { n, q })
    }

    pub fn dim(&self) -> u64 {
        2 * self.n + 1
    }

    /// Degree of the inducing extension.
    pub fn extension_degree(&self) -> u64 {
        2 * self.n + 1
    }

    /// The inducing character is quadratic.
    pub fn character_order(&self) -> u64 {
        2
    }

    pub fn character_swan(&self) -> u64 {
        1
    }
}

/// Artin conductor of `φ ⊗ φ^∨`: `d^2 (1 + c/d^2) - 1` with `d = 2n+1`
/// and `c = 2n`, i.e. `(2n+1)^2 + 2n - 1`.
pub fn artin_rankin_selberg(n: u64) -> u64 {
    let d = 2 * n + 1;
    d * d + 2 * n - 1
}

/// Swan conductors of `Sym^2 φ` and `∧^2 φ = Ad ∘ φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SwanSplit {
    pub sum: u64,
    pub difference: i64,
    pub swan_wedge: u64,
    pub swan_sym: u64,
}

/// `Swan(φ ⊗ φ^∨) = Artin - (dim - dim of inertia invariants)`, split evenly
/// between the symmetric and alternating squares.
pub fn swan_split(n: u64) -> SwanSplit {
    let d = 2 * n + 1;
    // φ is irreducible on inertia, so (φ ⊗ φ^∨)^I is one-dimensional.
    let sum = artin_rankin_selberg(n) - (d * d - 1);
    SwanSplit {
        sum,
        difference: 0,
        swan_wedge: sum / 2,
        swan_sym: sum / 2,
    }
}

/// `Artin(Ad ∘ φ) = dim Ad + Swan(Ad ∘ φ) = n(2n+1) + n`; the adjoint
/// L-factor is trivial so there is no inertia-invariant correction.
pub fn artin_adjoint(n: u64) -> u64 {
    n * (2 * n + 1) + swan_split(n).swan_wedge
}

/// An exact power `base^exponent`, kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Power {
    pub base: u64,
    pub exponent: u64,
}

impl Power {
    /// The value, if it fits.
    pub fn value(&self) -> Option<u128> {
        u128::from(self.base).checked_pow(u32::try_from(self.exponent).ok()?)
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.exponent)
    }
}

/// `|γ(0, Ad ∘ φ, ψ)| = q^{Artin(Ad ∘ φ)/2} = q^{n^2+n}`.
pub fn gamma_abs(n: u64, q: u64) -> Power {
    Power {
        base: q,
        exponent: artin_adjoint(n) / 2,
    }
}

/// Compares `q^{n^2+n} |γ_0|^{-1}` with `q^{N+ℓ} / (|Z(q)| |γ_0|)` for
/// `Sp_2n`, where `N = n^2` counts positive roots, `ℓ = n` is the rank and
/// `|Z(q)| = 1`. The principal-parameter factor `γ_0` cancels.
pub fn formal_degree_match(n: u64, q: u64) -> bool {
    formal_degree_match_with(n, q, n * n)
}

/// [`formal_degree_match`] with an arbitrary positive-root count.
pub fn formal_degree_match_with(n: u64, q: u64, positive_roots: u64) -> bool {
    let rank = n;
    let center_order = 1u64;
    center_order == 1 && gamma_abs(n, q).exponent == positive_roots + rank
}

/// Depth of the representation and depth of its parameter:
/// `(1/(2n), 1/(2n+1))`.
pub fn depth_pair(n: u64) -> (Ratio<u64>, Ratio<u64>) {
    (Ratio::new(1, 2 * n), Ratio::new(1, 2 * n + 1))
}

/// Everything above for one `(n, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub artin_rs: u64,
    pub swan_ad: u64,
    pub artin_ad: u64,
    pub gamma_abs_log_q: Ratio<u64>,
    pub formal_degree_log_q: Ratio<u64>,
    pub depth_group: Ratio<u64>,
    pub depth_parameter: Ratio<u64>,
}

pub fn gamma_report(spec: &ParamSpec) -> GammaReport {
    let n = spec.n;
    let artin_ad = artin_adjoint(n);
    let (depth_group, depth_parameter) = depth_pair(n);
    GammaReport {
        artin_rs: artin_rankin_selberg(n),
        swan_ad: swan_split(n).swan_wedge,
        artin_ad,
        gamma_abs_log_q: Ratio::new(artin_ad, 2),
        formal_degree_log_q: Ratio::from_integer(n * n + n),
        depth_group,
        depth_parameter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rankin_selberg() {
        assert_eq!(artin_rankin_selberg(1), 10);
        assert_eq!(artin_rankin_selberg(2), 28);
        // d^2 (1 + 2n/d^2) - 1 in rational arithmetic.
        for n in 1..=100u64 {
            let d = Ratio::from_integer(2 * n + 1);
            let expr = d * d * (Ratio::from_integer(1) + Ratio::new(2 * n, 1) / (d * d)) - 1;
            assert_eq!(expr, Ratio::from_integer(artin_rankin_selberg(n)));
        }
        assert_eq!(artin_rankin_selberg(3), 54);
    }

    #[test]
    fn swan() {
        assert_eq!(swan_split(1), SwanSplit { sum: 2, difference: 0, swan_wedge: 1, swan_sym: 1 });
        assert_eq!(swan_split(4), SwanSplit { sum: 8, difference: 0, swan_wedge: 4, swan_sym: 4 });
        for n in 1..=100 {
            let s = swan_split(n);
            assert_eq!(s.sum, 2 * s.swan_wedge);
            assert_eq!(s.swan_wedge, n);
        }
    }

    #[test]
    fn adjoint_and_gamma() {
        assert_eq!(artin_adjoint(1), 4);
        assert_eq!(artin_adjoint(2), 12);
        assert_eq!(artin_adjoint(10), 220);
        assert_eq!(gamma_abs(1, 2).value(), Some(4));
        assert_eq!(gamma_abs(2, 4).to_string(), "4^6");
        for n in 1..=100 {
            assert_eq!(artin_adjoint(n), 2 * (n * n + n));
            assert_eq!(gamma_abs(n, 2).exponent % 2, 0);
        }
        assert_eq!(gamma_abs(10_000, 1 << 16).exponent, 100_010_000);
    }

    #[test]
    fn formal_degree() {
        assert!(formal_degree_match(1, 2));
        assert!(formal_degree_match(7, 8));
        assert!(!formal_degree_match_with(3, 2, 3 * 3 + 1));
    }

    #[test]
    fn depths() {
        assert_eq!(depth_pair(1), (Ratio::new(1, 2), Ratio::new(1, 3)));
        assert_eq!(depth_pair(3), (Ratio::new(1, 6), Ratio::new(1, 7)));
        for n in 1..50 {
            let (g, p) = depth_pair(n);
            assert!(g > p);
            assert!(depth_pair(n + 1).0 < g);
        }
    }

    #[test]
    fn report() {
        let r = gamma_report(&ParamSpec::new(2, 4).unwrap());
        assert_eq!((r.artin_rs, r.swan_ad, r.artin_ad), (28, 2, 12));
        assert_eq!(r.gamma_abs_log_q, Ratio::from_integer(6));
        assert_eq!(r.gamma_abs_log_q, r.formal_degree_log_q);
        assert!(ParamSpec::new(0, 4).is_err());
        assert!(ParamSpec::new(1, 6).is_err());
    }
}
