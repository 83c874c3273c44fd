//! Index sets of basic effective invariants.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::constraints::general_bound;
use crate::error::{Error, Result};
use crate::target::{dot, DiscreteData, TargetSpec};

/// One basic effective invariant: genus `g`, class `β`, and `n = 2g − 2 − t`
/// markings of contact `−2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BasicIndex {
    pub g: u32,
    pub beta: Vec<i64>,
    pub t: i64,
    pub n: i64,
    /// Set when `Σ m_i β_i < t < Σ M_i β_i`: the fiber class might be
    /// constrained beyond the census rule.
    pub further_constraints_possible: bool,
}

impl BasicIndex {
    pub fn discrete_data(&self, target: &TargetSpec) -> Result<DiscreteData> {
        DiscreteData::new(target, self.g, self.beta.clone(), Some(self.t), &vec![-2; self.n as usize])
    }
}

/// Every `(g, β)` with vanishing expected dimension and an effective fiber
/// class, i.e. `Σ_i m_i β_i ≤ 2g − 2` with `m_i = min_j d_ji`.
pub fn enumerate_basic(target: &TargetSpec, g: u32) -> Result<Vec<BasicIndex>> {
    if g < 2 {
        return Err(Error::invalid("basic effective invariants need g ≥ 2"));
    }
    let budget = 2 * g as i64 - 2;
    let m = target.bundle.min_twist();
    let big_m = target.bundle.max_twist();
    let gens = &target.ambient.effective_generators;
    let weights: Vec<i64> = gens.iter().map(|gen| dot(&m, gen)).collect();
    if weights.iter().any(|w| *w <= 0) {
        return Err(Error::invalid(
            "the census needs every effective generator to pair positively with the minimal twist",
        ));
    }
    let mut classes = BTreeSet::new();
    let mut coeffs = vec![0i64; gens.len()];
    collect(gens, &weights, budget, 0, 0, &mut coeffs, &mut classes);

    let rank = target.rank();
    let mut out = Vec::new();
    for beta in classes {
        let probe = DiscreteData {
            g,
            beta: beta.clone(),
            t: 0,
            markings: vec![],
        };
        if general_bound(&probe, target) != 0 {
            continue;
        }
        let low = dot(&m, &beta);
        let t = match target.rank_one_t(&beta) {
            Some(t) => t,
            None => budget,
        };
        if t > budget || low > t {
            continue;
        }
        out.push(BasicIndex {
            g,
            n: budget - t,
            further_constraints_possible: rank >= 2 && low < t && dot(&big_m, &beta) > t,
            beta,
            t,
        });
    }
    Ok(out)
}

fn collect(
    gens: &[Vec<i64>],
    weights: &[i64],
    budget: i64,
    idx: usize,
    used: i64,
    coeffs: &mut Vec<i64>,
    out: &mut BTreeSet<Vec<i64>>,
) {
    if idx == gens.len() {
        let k = gens[0].len();
        let beta = (0..k)
            .map(|i| gens.iter().zip(coeffs.iter()).map(|(g, c)| g[i] * c).sum())
            .collect();
        out.insert(beta);
        return;
    }
    let mut c = 0;
    while used + c * weights[idx] <= budget {
        coeffs[idx] = c;
        collect(gens, weights, budget, idx + 1, used + c * weights[idx], coeffs, out);
        c += 1;
    }
    coeffs[idx] = 0;
}

pub fn count_basic(target: &TargetSpec, g: u32) -> Result<usize> {
    enumerate_basic(target, g).map(|v| v.len())
}

/// Per-genus census for `g` in `lo..=hi`.
pub fn census_range(target: &TargetSpec, lo: u32, hi: u32) -> Result<Vec<(u32, Vec<BasicIndex>)>> {
    (lo..=hi).map(|g| Ok((g, enumerate_basic(target, g)?))).collect()
}
