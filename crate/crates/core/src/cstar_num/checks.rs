use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{close, op_norm_sup, CstarError, DiagAlgebra, LinearMapC, DEFAULT_SAMPLES};

/// Every linear `f: ℂᵐ → ℂ` with `f(aⁿ) = f(a)ⁿ` identically.
pub fn classify_njordan_functionals(m: usize, n: u32) -> Result<Vec<LinearMapC>, CstarError> {
    if !(2..=4).contains(&n) || m == 0 || m > 6 {
        return Err(CstarError::Precondition(format!(
            "classification needs n in 2..=4 and m in 1..=6, got m={m}, n={n}"
        )));
    }
    // Write f = Σ cᵢaᵢ. The coefficient of aᵢⁿ gives cᵢⁿ = cᵢ; the
    // coefficient of aᵢⁿ⁻¹aⱼ is 0 on the left and n·cᵢⁿ⁻¹cⱼ on the right, so
    // at most one cᵢ is nonzero, and a nonzero one is an (n-1)-th root of 1.
    let roots: Vec<Complex64> = (0..n - 1)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (n - 1) as f64);
            let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
            Complex64::new(snap(z.re), snap(z.im))
        })
        .collect();
    let mut out = vec![LinearMapC::zero(m, 1)];
    for i in 0..m {
        for &w in &roots {
            out.push(LinearMapC::scaled_projection(m, i, w));
        }
    }
    Ok(out)
}

/// Index of the first sample where `h(aⁿ) ≠ h(a)ⁿ`.
fn jordan_failure(h: &LinearMapC, n: u32, samples: &[Vec<Complex64>]) -> Option<usize> {
    samples
        .iter()
        .position(|a| !close(&h.apply(&DiagAlgebra::pow(a, n)), &DiagAlgebra::pow(&h.apply(a), n), h.tolerance))
}

fn involution_failure(h: &LinearMapC, samples: &[Vec<Complex64>]) -> Option<usize> {
    samples.iter().position(|a| !close(&h.apply(&DiagAlgebra::star(a)), &DiagAlgebra::star(&h.apply(a)), h.tolerance))
}

/// `h(a*a) = h(a)*h(a)`.
fn star_square_failure(h: &LinearMapC, samples: &[Vec<Complex64>]) -> Option<usize> {
    samples.iter().position(|a| {
        let ha = h.apply(a);
        let lhs = h.apply(&DiagAlgebra::mul(&DiagAlgebra::star(a), a));
        let rhs = DiagAlgebra::mul(&DiagAlgebra::star(&ha), &ha);
        !close(&lhs, &rhs, h.tolerance)
    })
}

fn witness(sample: &[Complex64]) -> Vec<[f64; 2]> {
    sample.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MapVerdict {
    pub map: LinearMapC,
    pub norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractiveReport {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub maps: Vec<MapVerdict>,
    pub max_norm: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Filters each map for involution preservation (real entries) and the
/// 3-Jordan identity on samples, then checks `‖h‖ ≤ 1`.
pub fn check_contractive_jordan(
    maps: &[LinearMapC],
    samples: usize,
    seed: u64,
) -> Result<ContractiveReport, CstarError> {
    let m = maps.first().map_or(0, |h| h.domain_dim);
    let k = maps.first().map_or(0, |h| h.codomain_dim());
    let points = DiagAlgebra::new(m).samples(samples, seed);
    let mut verdicts = Vec::with_capacity(maps.len());
    for h in maps {
        if h.domain_dim != m || h.codomain_dim() != k {
            return Err(CstarError::Shape(format!("`{}` is not a map C^{m} -> C^{k}", h.name)));
        }
        if !h.is_real() {
            let i = involution_failure(h, &points).unwrap_or(0);
            return Err(CstarError::Hypothesis {
                hypothesis: "involution-preserving".into(),
                map: h.name.clone(),
                sample: witness(&points[i]),
            });
        }
        if let Some(i) = jordan_failure(h, 3, &points) {
            return Err(CstarError::Hypothesis {
                hypothesis: "3-Jordan".into(),
                map: h.name.clone(),
                sample: witness(&points[i]),
            });
        }
        let norm = op_norm_sup(h);
        if norm > 1.0 {
            return Err(CstarError::NotContractive { map: h.name.clone(), norm });
        }
        verdicts.push(MapVerdict { map: h.clone(), norm });
    }
    let max_norm = verdicts.iter().map(|v| v.norm).fold(0.0, f64::max);
    Ok(ContractiveReport { domain_dim: m, codomain_dim: k, maps: verdicts, max_norm, samples, seed })
}

/// All maps ℂᵐ → ℂᵏ whose components are real 3-Jordan functionals, each
/// checked for contractivity.
pub fn check_corollary_2_6(m: usize, k: usize) -> Result<ContractiveReport, CstarError> {
    if m == 0 || k == 0 || m > 4 || k > 4 {
        return Err(CstarError::Precondition(format!("dimensions must lie in 1..=4, got m={m}, k={k}")));
    }
    let parts: Vec<LinearMapC> = classify_njordan_functionals(m, 3)?.into_iter().filter(LinearMapC::is_real).collect();
    let total = parts.len().pow(k as u32);
    let maps: Vec<LinearMapC> = (0..total)
        .map(|mut idx| {
            let chosen: Vec<LinearMapC> = (0..k)
                .map(|_| {
                    let p = parts[idx % parts.len()].clone();
                    idx /= parts.len();
                    p
                })
                .collect();
            LinearMapC::stack(&chosen).expect("components share a domain")
        })
        .collect();
    check_contractive_jordan(&maps, DEFAULT_SAMPLES, 0)
}

/// Whether "h is n-Jordan" and "every coordinate of h is n-Jordan" agree on
/// the same sample set.
pub fn step2_reduction_check(h: &LinearMapC, n: u32, samples: usize, seed: u64) -> bool {
    let points = DiagAlgebra::new(h.domain_dim).samples(samples, seed);
    let whole = jordan_failure(h, n, &points).is_none();
    let parts = (0..h.codomain_dim()).all(|i| jordan_failure(&h.component(i), n, &points).is_none());
    whole == parts
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterVerdict {
    pub hypothesis: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub map: LinearMapC,
    pub power: u32,
    pub filters: Vec<FilterVerdict>,
    pub norm: f64,
    /// Extremes of `‖h‖⁴‖a‖^(4k+2) - ‖h(a)‖^(4k+2)` over the samples.
    pub max_slack: f64,
    pub min_slack: f64,
    pub chain_holds: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Filters `h` for the k-Jordan, involution and `h(a*a) = h(a)*h(a)`
/// hypotheses on samples, then checks `‖h‖ ≤ 1 + τ` and traces the bound
/// `‖h(a)‖^(4k+2) ≤ ‖h‖⁴‖a‖^(4k+2)` at every sample.
pub fn check_theorem_2_7(h: &LinearMapC, k: u32, samples: usize, seed: u64) -> Result<StarReport, CstarError> {
    if k == 0 || samples == 0 {
        return Err(CstarError::Precondition("power parameter and sample count must be positive".into()));
    }
    let points = DiagAlgebra::new(h.domain_dim).samples(samples, seed);
    let jordan = format!("{k}-Jordan");
    let checks: [(&str, Option<usize>); 3] = [
        (&jordan, jordan_failure(h, k, &points)),
        ("involution-preserving", involution_failure(h, &points)),
        ("h(a*a)=h(a)*h(a)", star_square_failure(h, &points)),
    ];
    for (name, failure) in &checks {
        if let Some(i) = failure {
            return Err(CstarError::Hypothesis {
                hypothesis: name.to_string(),
                map: h.name.clone(),
                sample: witness(&points[*i]),
            });
        }
    }
    let filters = checks.iter().map(|(name, _)| FilterVerdict { hypothesis: name.to_string(), holds: true }).collect();

    let norm = op_norm_sup(h);
    if norm > 1.0 + h.tolerance {
        return Err(CstarError::NotContractive { map: h.name.clone(), norm });
    }
    let e = (4 * k + 2) as i32;
    let slacks: Vec<f64> = points
        .iter()
        .map(|a| norm.powi(4) * DiagAlgebra::norm(a).powi(e) - DiagAlgebra::norm(&h.apply(a)).powi(e))
        .collect();
    let max_slack = slacks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_slack = slacks.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(StarReport {
        map: h.clone(),
        power: k,
        filters,
        norm,
        max_slack,
        min_slack,
        chain_holds: min_slack >= -h.tolerance,
        samples,
        seed,
    })
}
