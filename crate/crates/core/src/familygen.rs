//! The six-parameter family of rational quartics with three double base
//! points at (2,0), (0,0), (1,1), its specializations and random
//! perturbations.

use std::fmt;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::epsgeo::{check_hypotheses, cluster_decompose, find_eps_singularities, is_eps_rational};
use crate::poly::{BiPoly, HomPoly};

/// Term of the base system: monomial `x^i y^j z^k` with coefficient
/// `sum_l w[l] u_{l+1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseTerm {
    pub exps: (usize, usize, usize),
    pub weights: [f64; 6],
}

/// The linear system G(x, y, z; u1..u6) of quartics through the divisor
/// 2(2:0:1) + 2(0:0:1) + 2(1:1:1).
#[derive(Clone, Debug, PartialEq)]
pub struct BaseSystem {
    pub terms: Vec<BaseTerm>,
}

pub fn base_system() -> BaseSystem {
    let t = |i, j, k, weights| BaseTerm { exps: (i, j, k), weights };
    BaseSystem {
        terms: vec![
            t(0, 2, 2, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]),
            t(0, 3, 1, [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
            t(0, 4, 0, [0.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
            t(1, 1, 2, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
            t(1, 2, 1, [0.0, -2.0, -3.0, -4.0, -0.5, -2.0]),
            t(1, 3, 0, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            t(2, 0, 2, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            t(2, 1, 1, [-1.0, 0.0, 2.0, 4.0, -1.5, 2.0]),
            t(2, 2, 0, [0.25, 1.0, 1.0, 1.0, 0.5, 0.0]),
            t(3, 0, 1, [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            t(3, 1, 0, [0.5, 0.0, -1.0, -2.0, 0.5, -1.0]),
            t(4, 0, 0, [0.25, 0.0, 0.0, 0.0, 0.0, 0.0]),
        ],
    }
}

impl BaseSystem {
    /// The quartic form for fixed parameters.
    pub fn at(&self, u: &[f64; 6]) -> HomPoly {
        let terms: Vec<(usize, usize, f64)> = self
            .terms
            .iter()
            .map(|t| (t.exps.0, t.exps.1, t.weights.iter().zip(u).map(|(w, u)| w * u).sum()))
            .collect();
        HomPoly::new(BiPoly::from_terms(&terms), 4)
    }
}

/// The member `G(u = 1)` with `z = 1`.
pub fn exact_quartic() -> BiPoly {
    base_system().at(&[1.0; 6]).dehomogenize()
}

/// Parameters `u_k = (r/100)^i` for `k = j`, and 1 otherwise.
pub fn parameters(i: u32, j: usize, r_ij: u32) -> [f64; 6] {
    assert!((1..=6).contains(&j), "parameter slot out of range");
    let mut u = [1.0; 6];
    u[j - 1] = (r_ij as f64 / 100.0).powi(i as i32);
    u
}

/// `G_ij` as a homogeneous quartic.
pub fn specialize(i: u32, j: usize, r_ij: u32) -> HomPoly {
    base_system().at(&parameters(i, j, r_ij))
}

/// `G(x, y, 1) + eps r1/100 (x + y) + eps^2 r2/100 (x^2 + xy + y^2)
///  + eps^3 r3/100 (x^3 + x^2 y + x y^2 + y^3)`
pub fn perturb(g: &HomPoly, r1: u32, r2: u32, r3: u32, eps: f64) -> BiPoly {
    let mut terms: Vec<(usize, usize, f64)> = g.dehomogenize().terms().collect();
    let levels = [(1usize, r1), (2, r2), (3, r3)];
    for (k, r) in levels {
        let c = eps.powi(k as i32) * r as f64 / 100.0;
        if c != 0.0 {
            terms.extend((0..=k).map(|a| (a, k - a, c)));
        }
    }
    BiPoly::from_terms(&terms)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub seed: u64,
    pub epsilon: f64,
    pub count_i: u32,
    pub count_j: usize,
    /// Forces `r1 = r2 = r3 = 0` while keeping the draw sequence.
    pub zero_perturbation: bool,
}

impl FamilySpec {
    pub fn new(seed: u64) -> Self {
        FamilySpec { seed, epsilon: 0.01, count_i: 10, count_j: 6, zero_perturbation: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MemberStatus {
    Rational,
    NotRational,
    HypothesisFailed(String),
}

impl fmt::Display for MemberStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemberStatus::Rational => write!(f, "rational"),
            MemberStatus::NotRational => write!(f, "not_rational"),
            MemberStatus::HypothesisFailed(r) => write!(f, "hypothesis_failed:{r}"),
        }
    }
}

impl std::str::FromStr for MemberStatus {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" => Ok(MemberStatus::Rational),
            "not_rational" => Ok(MemberStatus::NotRational),
            _ => s
                .strip_prefix("hypothesis_failed:")
                .map(|r| MemberStatus::HypothesisFailed(r.to_string()))
                .ok_or_else(|| format!("unknown status {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub i: u32,
    pub j: usize,
    pub r_ij: u32,
    pub r1: u32,
    pub r2: u32,
    pub r3: u32,
    pub big_g: HomPoly,
    pub g: BiPoly,
    pub status: MemberStatus,
}

impl FamilyMember {
    pub fn manifest_line(&self) -> String {
        format!("{} {} {} {} {} {} {}", self.i, self.j, self.r_ij, self.r1, self.r2, self.r3, self.status)
    }

    pub fn curve_file_name(&self) -> String {
        format!("curve_{}_{}.curve", self.i, self.j)
    }
}

/// Integer in `[0, 100]` from the high 32 bits of the next output.
pub fn draw(rng: &mut SplitMix64) -> u32 {
    (((rng.next_u64() >> 32) * 101) >> 32) as u32
}

/// Hypotheses, then the genus test on the cluster decomposition.
pub fn screen(g: &BiPoly, eps: f64) -> MemberStatus {
    let hyp = check_hypotheses(g, eps);
    if let Some(reason) = hyp.failure() {
        return MemberStatus::HypothesisFailed(reason.to_string());
    }
    match find_eps_singularities(g, eps) {
        Ok(sings) => {
            if is_eps_rational(g.total_degree(), &cluster_decompose(&sings)) {
                MemberStatus::Rational
            } else {
                MemberStatus::NotRational
            }
        }
        Err(_) => MemberStatus::HypothesisFailed("numeric_failure".to_string()),
    }
}

pub fn generate_family(spec: &FamilySpec) -> Vec<FamilyMember> {
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let mut draws = Vec::new();
    for i in 1..=spec.count_i {
        for j in 1..=spec.count_j {
            let r_ij = draw(&mut rng);
            let (mut r1, mut r2, mut r3) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if spec.zero_perturbation {
                (r1, r2, r3) = (0, 0, 0);
            }
            draws.push((i, j, r_ij, r1, r2, r3));
        }
    }
    draws
        .into_par_iter()
        .map(|(i, j, r_ij, r1, r2, r3)| {
            let big_g = specialize(i, j, r_ij);
            let g = perturb(&big_g, r1, r2, r3, spec.epsilon);
            let status = screen(&g, spec.epsilon);
            FamilyMember { i, j, r_ij, r1, r2, r3, big_g, g, status }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_value() {
        let mut rng = SplitMix64::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn parameter_rule() {
        let u = parameters(3, 2, 50);
        assert_eq!(u[1], 0.125);
        assert!(u.iter().enumerate().all(|(k, &v)| k == 1 || v == 1.0));
        assert_eq!(parameters(7, 4, 100), [1.0; 6]);
        assert_eq!(parameters(1, 6, 0)[5], 0.0);
    }

    #[test]
    fn x4_coefficient() {
        let g = base_system().at(&[2.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(g.coeff(4, 0, 0), 0.5);
    }

    #[test]
    fn perturbation_examples() {
        let g = specialize(1, 1, 100);
        assert_eq!(perturb(&g, 0, 0, 0, 0.01), g.dehomogenize());
        let p = perturb(&g, 100, 0, 0, 0.01);
        let diff = &p - &g.dehomogenize();
        assert_eq!(diff.coeff(1, 0), 0.01);
        assert_eq!(diff.coeff(0, 1), 0.01);
        assert_eq!(p.leading_form(), g.dehomogenize().leading_form());
    }

    #[test]
    fn status_round_trip() {
        for s in [MemberStatus::Rational, MemberStatus::NotRational, MemberStatus::HypothesisFailed("eps_reducible".into())] {
            assert_eq!(s.to_string().parse::<MemberStatus>().unwrap(), s);
        }
    }
}
