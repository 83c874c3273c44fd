//! Balancing, reduced virtual dimensions, vanishing rules and ampleness
//! thresholds.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::target::{dot, DiscreteData, TargetSpec};

pub mod rule {
    pub const BALANCING: &str = "balancing";
    pub const GENUS0_NEF: &str = "genus0-nef";
    pub const GENUS1_AMPLE: &str = "genus1-ample";
    pub const GENERAL_TYPE: &str = "general-type";
    pub const GENERAL_NON_VANISHING: &str = "general-non-vanishing";
    pub const GENERAL_NON_VANISHING_H1: &str = "general-non-vanishing-h1";
    pub const DIMENSION: &str = "dimension";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Vanishing {
    /// The moduli space is empty.
    Empty,
    /// The cycle (or, for the dimension rule, the invariant) is zero.
    ZeroCycle,
    Unknown,
}

impl Vanishing {
    pub fn vanishes(self) -> bool {
        self != Vanishing::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Vanishing::Empty => "empty",
            Vanishing::ZeroCycle => "zero_cycle",
            Vanishing::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balancing {
    pub satisfied: bool,
    /// `Σ c_i/r_i − (1/ℓ)[t − (d/r)(2g − 2 + n + ∫_β c₁(L_spin))]`; in the
    /// untwisted case `Σ(c_i + 1) − (t − (2g − 2))`.
    #[serde(with = "crate::rational::serde_q")]
    pub defect: Q,
    /// The value `Σ(c_i/r_i + 1)` must take.
    #[serde(with = "crate::rational::serde_q")]
    pub slack: Q,
    /// With negative contacts and zero slack every contact must be `−1`.
    pub all_minus_one_forced: bool,
}

/// The degree constraint on the contact orders.
pub fn balancing(data: &DiscreteData, target: &TargetSpec) -> Balancing {
    let n = data.n() as i64;
    let two_g_minus_2 = 2 * data.g as i64 - 2;
    let spin = dot(&target.spin, &data.beta);
    let dr = Q::new(target.d.into(), target.r.into());
    let rhs = (q(data.t) - dr * q(two_g_minus_2 + n + spin)) / q(target.ell as i64);
    let lhs: Q = data
        .markings
        .iter()
        .map(|m| Q::new(m.contact.into(), m.order.into()))
        .sum();
    let defect = lhs - &rhs;
    let slack = rhs + q(n);
    Balancing {
        satisfied: defect.is_zero(),
        all_minus_one_forced: slack.is_zero(),
        defect,
        slack,
    }
}

/// `Σ(c_i + 1)`.
pub fn contact_excess(data: &DiscreteData) -> i64 {
    data.markings.iter().map(|m| m.contact + 1).sum()
}

/// `(3 − dim X + rk E)(g − 1) − ∫_{β_X} c₁(K_X ⊗ det E)`.
pub fn general_bound(data: &DiscreteData, target: &TargetSpec) -> i64 {
    let a = 3 - target.ambient.dim as i64 + target.rank() as i64;
    a * (data.g as i64 - 1) - target.kdet_degree(&data.beta)
}

/// Virtual dimension of stable maps to the complete intersection.
pub fn ci_vdim(data: &DiscreteData, target: &TargetSpec) -> i64 {
    general_bound(data, target) + data.n() as i64
}

/// Reduced virtual dimension as the stable-map dimension plus the
/// contact correction `rk E · Σ(c_i + 1)`.
pub fn reduced_vdim(data: &DiscreteData, target: &TargetSpec) -> i64 {
    ci_vdim(data, target) + target.rank() as i64 * contact_excess(data)
}

/// Reduced virtual dimension through `∞_X`: `(2 − dim ∞)(g − 1) − ∫_β K_∞ + n`
/// with `∫_β c₁(O(1)) = 2g − 2 + Σ(c_i + 1)`.
pub fn reduced_vdim_original(data: &DiscreteData, target: &TargetSpec) -> i64 {
    let inf = target.infinity_data();
    let fiber = 2 * data.g as i64 - 2 + contact_excess(data);
    (2 - inf.dim as i64) * (data.g as i64 - 1) - inf.canonical_degree(&data.beta, fiber)
        + data.n() as i64
}

/// The same through `∞_X`, pairing `K_∞` with the actual `t`; agrees with
/// [`reduced_vdim`] exactly when balancing holds.
pub fn reduced_vdim_from_t(data: &DiscreteData, target: &TargetSpec) -> i64 {
    let inf = target.infinity_data();
    (2 - inf.dim as i64) * (data.g as i64 - 1) - inf.canonical_degree(&data.beta, data.t)
        + data.n() as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub vanish: Vanishing,
    pub reasons: Vec<String>,
}

/// Applies the cycle-level vanishing rules. `insertion_degrees` are real
/// cohomological degrees (`2·codim`), one per marking.
pub fn vanishing_check(data: &DiscreteData, target: &TargetSpec, insertion_degrees: &[u32]) -> Verdict {
    let mut reasons = Vec::new();
    let mut vanish = Vanishing::Unknown;
    let mut hit = |v: Vanishing, r: &str, vanish: &mut Vanishing| {
        reasons.push(r.to_string());
        *vanish = (*vanish).min(v);
    };
    let negative = data.markings.iter().all(|m| m.contact < 0);
    if !balancing(data, target).satisfied {
        hit(Vanishing::Empty, rule::BALANCING, &mut vanish);
    }
    if data.g == 0 && target.l_log_nef() && negative {
        hit(Vanishing::Empty, rule::GENUS0_NEF, &mut vanish);
    }
    if data.g == 1
        && target.bundle.is_ample()
        && (data.beta.iter().any(|b| *b != 0) || data.markings.iter().any(|m| m.contact != -1))
    {
        hit(Vanishing::Empty, rule::GENUS1_AMPLE, &mut vanish);
    }
    if ci_vdim(data, target) < 0 {
        hit(Vanishing::ZeroCycle, rule::GENERAL_TYPE, &mut vanish);
    }
    if general_bound(data, target) < 0 {
        let deg = |i: usize| insertion_degrees.get(i).copied().unwrap_or(0);
        let each = data
            .markings
            .iter()
            .enumerate()
            .all(|(i, m)| m.contact <= -2 || (m.contact == -1 && deg(i) >= 2));
        if each {
            hit(Vanishing::ZeroCycle, rule::GENERAL_NON_VANISHING, &mut vanish);
        } else if target.ambient.h1_vanishes {
            hit(Vanishing::ZeroCycle, rule::GENERAL_NON_VANISHING_H1, &mut vanish);
        }
    }
    Verdict { vanish, reasons }
}

/// Whether `ψ_min^k · ∏ α_i` can have degree against the reduced cycle.
pub fn dimension_matches(data: &DiscreteData, target: &TargetSpec, insertion_degrees: &[u32], k: u32) -> bool {
    let codim: u32 = insertion_degrees.iter().map(|d| d / 2).sum();
    let odd = insertion_degrees.iter().any(|d| d % 2 == 1);
    odd || reduced_vdim(data, target) == (k + codim) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    #[serde(with = "crate::rational::serde_q")]
    pub balancing_defect: Q,
    pub feasible: bool,
    pub all_minus_one_forced: bool,
    pub red_vdim: i64,
    pub ci_vdim: i64,
    pub vanish: Vanishing,
    pub reasons: Vec<String>,
}

/// Balancing, dimensions and the vanishing verdict for the invariant with
/// `ψ_min^k` and the given insertions; a dimension mismatch zeroes it.
pub fn analyze(
    data: &DiscreteData,
    target: &TargetSpec,
    insertion_degrees: &[u32],
    k: u32,
) -> FeasibilityReport {
    let b = balancing(data, target);
    let mut v = vanishing_check(data, target, insertion_degrees);
    if !dimension_matches(data, target, insertion_degrees, k) {
        v.reasons.push(rule::DIMENSION.to_string());
        v.vanish = v.vanish.min(Vanishing::ZeroCycle);
    }
    let red = reduced_vdim(data, target);
    debug_assert_eq!(red, reduced_vdim_original(data, target));
    FeasibilityReport {
        feasible: b.satisfied,
        balancing_defect: b.defect,
        all_minus_one_forced: b.all_minus_one_forced,
        red_vdim: red,
        ci_vdim: ci_vdim(data, target),
        vanish: v.vanish,
        reasons: v.reasons,
    }
}

/// `d(N − 2) > 2N + 2` for a degree-`d` hypersurface in `P^N`, `N ≥ 5`.
pub fn hypersurface_threshold(d: i64, n: i64) -> Result<bool> {
    if n < 5 {
        return Err(Error::regime(format!("N = {n} < 5: the hypersurface has dimension below 4")));
    }
    Ok(d * (n - 2) > 2 * n + 2)
}

/// `3 − N + R + (2/d₁)(N + 1 − Σ d_j)`.
pub fn ci_threshold_value(degrees: &[i64], n: i64) -> Q {
    let d1 = *degrees.iter().min().expect("non-empty degrees");
    let r = degrees.len() as i64;
    let sum: i64 = degrees.iter().sum();
    q(3 - n + r) + Q::new((2 * (n + 1 - sum)).into(), d1.into())
}

fn ci_regime(degrees: &[i64], n: i64) -> Result<()> {
    if degrees.is_empty() {
        return Err(Error::regime("no equations"));
    }
    if degrees.iter().any(|d| *d < 2) {
        return Err(Error::regime("all degrees must be at least 2"));
    }
    let sum: i64 = degrees.iter().sum();
    if sum > n {
        return Err(Error::regime(format!("not Fano: Σd = {sum} > N = {n}")));
    }
    if n - (degrees.len() as i64) < 4 {
        return Err(Error::regime(format!(
            "dimension N − R = {} below 4",
            n - degrees.len() as i64
        )));
    }
    Ok(())
}

/// The vanishing threshold for a Fano complete intersection in `P^N`.
pub fn ci_threshold(degrees: &[i64], n: i64) -> Result<bool> {
    ci_regime(degrees, n)?;
    Ok(ci_threshold_value(degrees, n).is_negative())
}

/// Componentwise `d_j(ΣN − 2) > 2N_j + 2` for a single summand; several
/// summands go through the Barton criterion with `A = O(1, .., 1)`.
pub fn product_threshold(degrees: &[Vec<i64>], dims: &[u32]) -> Result<bool> {
    let total: i64 = dims.iter().map(|n| *n as i64).sum();
    if total < 5 {
        return Err(Error::regime(format!("ΣN = {total} < 5")));
    }
    if degrees.iter().any(|d| d.len() != dims.len()) {
        return Err(Error::invalid("degree vectors must have one entry per factor"));
    }
    match degrees {
        [] => Err(Error::invalid("no summands")),
        [row] => Ok(row
            .iter()
            .zip(dims)
            .all(|(d, n)| d * (total - 2) > 2 * (*n as i64) + 2)),
        _ => {
            if total - (degrees.len() as i64) < 4 {
                return Err(Error::regime("dim X − rk E below 4"));
            }
            let b = barton(degrees, dims, &vec![1; dims.len()])?;
            Ok(b.vanishes)
        }
    }
}

/// `d(K(N − K) − 2) > 2N` for a hypersurface in `Gr(K, N)`.
pub fn grassmann_threshold(d: i64, k: i64, n: i64) -> Result<bool> {
    if k <= 0 || k >= n {
        return Err(Error::invalid(format!("Gr({k},{n}) is not a Grassmannian")));
    }
    let dim = k * (n - k);
    if dim < 5 {
        return Err(Error::regime(format!("dim Gr = {dim} < 5")));
    }
    Ok(d * (dim - 2) > 2 * n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Barton {
    #[serde(with = "crate::rational::serde_q")]
    pub m_a: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub m_prime_a: Q,
    /// `3 − dim X + rk E + 2m'_A/m_A`.
    #[serde(with = "crate::rational::serde_q")]
    pub criterion: Q,
    pub vanishes: bool,
}

/// Barton data of `E = ⊕ O(d_j)` on `∏ P^{N_i}` against `A = O(a)`.
pub fn barton(degrees: &[Vec<i64>], dims: &[u32], a: &[i64]) -> Result<Barton> {
    if a.len() != dims.len() || a.iter().any(|x| *x <= 0) {
        return Err(Error::invalid("A must have one positive entry per factor"));
    }
    if degrees.is_empty() || degrees.iter().any(|d| d.len() != dims.len()) {
        return Err(Error::invalid("degree vectors must have one entry per factor"));
    }
    if degrees.iter().flatten().any(|x| *x <= 0) {
        return Err(Error::invalid("E is not ample"));
    }
    let m_a = degrees
        .iter()
        .flat_map(|d| d.iter().zip(a).map(|(x, y)| Q::new((*x).into(), (*y).into())))
        .min()
        .unwrap();
    let m_prime_a = (0..dims.len())
        .map(|i| {
            let s: i64 = degrees.iter().map(|d| d[i]).sum();
            Q::new((dims[i] as i64 + 1 - s).into(), a[i].into())
        })
        .max()
        .unwrap();
    let dim_x: i64 = dims.iter().map(|n| *n as i64).sum();
    let criterion = q(3 - dim_x + degrees.len() as i64) + q(2) * &m_prime_a / &m_a;
    Ok(Barton {
        vanishes: !m_prime_a.is_negative() && criterion.is_negative(),
        m_a,
        m_prime_a,
        criterion,
    })
}

/// Barton data of a target over a product of projective spaces.
pub fn barton_for(target: &TargetSpec, a: &[i64]) -> Result<Barton> {
    let dims = target
        .ambient
        .factor_dims
        .as_ref()
        .ok_or_else(|| Error::invalid("Barton invariants need a product of projective spaces"))?;
    barton(&target.bundle.degrees, dims, a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdTable {
    pub family: String,
    /// Pairs where the threshold holds.
    pub vanishing: Vec<(i64, i64)>,
    /// Fano pairs inside the regime where it fails.
    pub exceptions: Vec<(i64, i64)>,
    /// Fano pairs below the regime floor.
    pub out_of_regime: Vec<(i64, i64)>,
}

/// `(d, N)` with `3 ≤ d ≤ max_d`, `d ≤ N ≤ max_n`, classified.
pub fn hypersurface_table(max_n: i64, max_d: i64) -> ThresholdTable {
    let mut t = ThresholdTable {
        family: "pn-hypersurface".into(),
        vanishing: vec![],
        exceptions: vec![],
        out_of_regime: vec![],
    };
    for d in 3..=max_d {
        for n in d..=max_n {
            match hypersurface_threshold(d, n) {
                Ok(true) => t.vanishing.push((d, n)),
                Ok(false) => t.exceptions.push((d, n)),
                Err(_) => t.out_of_regime.push((d, n)),
            }
        }
    }
    t
}

/// Membership in `(d = 3, N ≥ 9), (d = 4, N ≥ 6), (d ≥ 5, N ≥ d)`.
pub fn hypersurface_list_contains(d: i64, n: i64) -> bool {
    (d == 3 && n >= 9) || (d == 4 && n >= 6) || (d >= 5 && n >= d)
}

/// `K = 2` Grassmannian hypersurfaces with `2 ≤ d < N ≤ max_n`.
pub fn grassmann_table(max_n: i64) -> ThresholdTable {
    let mut t = ThresholdTable {
        family: "grassmann".into(),
        vanishing: vec![],
        exceptions: vec![],
        out_of_regime: vec![],
    };
    for d in 2..max_n {
        for n in (d + 1)..=max_n {
            match grassmann_threshold(d, 2, n) {
                Ok(true) => t.vanishing.push((d, n)),
                Ok(false) => t.exceptions.push((d, n)),
                Err(_) => t.out_of_regime.push((d, n)),
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductRow {
    pub factors: i64,
    pub degree: i64,
    /// Smallest `N` in range for which the uniform product vanishes and
    /// every larger `N` does too.
    pub min_n: Option<i64>,
}

/// `(P^N)^k` with uniform degree `d ∈ {1, 2}`, `2 ≤ k ≤ max_k`.
pub fn product_table(max_k: i64, max_n: i64) -> Vec<ProductRow> {
    let mut rows = Vec::new();
    for degree in 1..=2 {
        for k in 2..=max_k {
            let holds = |n: i64| {
                product_threshold(&[vec![degree; k as usize]], &vec![n as u32; k as usize])
                    .unwrap_or(false)
            };
            let min_n = (1..=max_n)
                .filter(|n| k * n >= 5)
                .find(|n| (*n..=max_n).all(holds));
            rows.push(ProductRow { factors: k, degree, min_n });
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CiException {
    pub degrees: Vec<i64>,
    /// Values of `N` in the regime where the threshold fails.
    pub failing_n: Vec<i64>,
}

/// Degree tuples `2 ≤ d₁ ≤ .. ≤ d_R` with `R ≥ min_r` for which the
/// threshold fails for some admissible `N ≤ max_n`.
pub fn ci_exception_scan(max_n: i64, min_r: usize) -> Vec<CiException> {
    let mut out = Vec::new();
    let mut stack: Vec<i64> = Vec::new();
    scan_tuples(&mut stack, 2, 0, max_n, min_r, &mut out);
    out
}

fn scan_tuples(
    tuple: &mut Vec<i64>,
    lo: i64,
    sum: i64,
    max_n: i64,
    min_r: usize,
    out: &mut Vec<CiException>,
) {
    if tuple.len() >= min_r {
        let r = tuple.len() as i64;
        let d1 = tuple[0];
        let floor = sum.max(r + 4);
        // d₁·(value) = d₁(3 − N + R) + 2(N + 1 − Σd), non-increasing in N
        let failing: Vec<i64> = (floor..=max_n)
            .take_while(|n| d1 * (3 - n + r) + 2 * (n + 1 - sum) >= 0)
            .collect();
        if !failing.is_empty() {
            out.push(CiException {
                degrees: tuple.clone(),
                failing_n: failing,
            });
        }
    }
    let mut d = lo;
    while sum + d <= max_n {
        tuple.push(d);
        scan_tuples(tuple, d, sum + d, max_n, min_r, out);
        tuple.pop();
        d += 1;
    }
}

/// Groups table pairs by degree into `(d, [N...])`.
pub fn group_by_degree(pairs: &[(i64, i64)]) -> BTreeMap<i64, Vec<i64>> {
    let mut m: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for (d, n) in pairs {
        m.entry(*d).or_default().push(*n);
    }
    m
}
