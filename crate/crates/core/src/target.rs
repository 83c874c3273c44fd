//! Punctured R-map targets: ambient space, split bundle and root data.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{frac, Q};

/// The ambient `X`, described by its curve-class pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientSpace {
    pub name: String,
    pub dim: u32,
    /// Factor dimensions `N_i` when `X = ∏ P^{N_i}`.
    pub factor_dims: Option<Vec<u32>>,
    /// `∫_β c₁(K_X)` per curve-class coordinate.
    pub canonical_pairing: Vec<i64>,
    /// Additional named line bundles and their pairings.
    pub pairings: BTreeMap<String, Vec<i64>>,
    /// Generators of the effective cone of curves.
    pub effective_generators: Vec<Vec<i64>>,
    pub h1_vanishes: bool,
    pub chow_supported: bool,
}

impl AmbientSpace {
    /// `P^{N_1} × .. × P^{N_k}` with hyperplane classes `h` (or `h1..hk`).
    pub fn projective_product(dims: &[u32]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("a product needs at least one factor"));
        }
        if dims.iter().any(|n| *n == 0) {
            return Err(Error::invalid("projective factors must have positive dimension"));
        }
        let k = dims.len();
        let names = hyperplane_names(k);
        let unit = |i: usize| (0..k).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
        let name = dims
            .iter()
            .map(|n| format!("P{n}"))
            .collect::<Vec<_>>()
            .join("x");
        Ok(AmbientSpace {
            name,
            dim: dims.iter().sum(),
            factor_dims: Some(dims.to_vec()),
            canonical_pairing: dims.iter().map(|n| -(*n as i64) - 1).collect(),
            pairings: names.into_iter().enumerate().map(|(i, n)| (n, unit(i))).collect(),
            effective_generators: (0..k).map(unit).collect(),
            h1_vanishes: true,
            chow_supported: true,
        })
    }

    /// An ambient known only through pairing data.
    pub fn abstract_space(
        name: impl Into<String>,
        dim: u32,
        canonical_pairing: Vec<i64>,
        effective_generators: Option<Vec<Vec<i64>>>,
        h1_vanishes: bool,
    ) -> Result<Self> {
        let k = canonical_pairing.len();
        if k == 0 {
            return Err(Error::invalid("curve rank must be at least 1"));
        }
        let gens = effective_generators
            .unwrap_or_else(|| (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect());
        if gens.is_empty() || gens.iter().any(|g| g.len() != k) {
            return Err(Error::invalid("effective generators must be non-empty vectors of the curve rank"));
        }
        if gens.iter().any(|g| g.iter().any(|x| *x < 0) || g.iter().all(|x| *x == 0)) {
            return Err(Error::invalid("effective generators must be nonzero and non-negative"));
        }
        Ok(AmbientSpace {
            name: name.into(),
            dim,
            factor_dims: None,
            canonical_pairing,
            pairings: BTreeMap::new(),
            effective_generators: gens,
            h1_vanishes,
            chow_supported: false,
        })
    }

    pub fn curve_rank(&self) -> usize {
        self.canonical_pairing.len()
    }

    pub fn hyperplane_names(&self) -> Vec<String> {
        hyperplane_names(self.curve_rank())
    }
}

pub fn hyperplane_names(k: usize) -> Vec<String> {
    if k == 1 {
        vec!["h".to_string()]
    } else {
        (1..=k).map(|i| format!("h{i}")).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `E = ⊕_j O(d_j)`, each `d_j` a curve-class pairing vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBundle {
    pub degrees: Vec<Vec<i64>>,
}

impl SplitBundle {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Pairing vector of `det E`.
    pub fn det(&self) -> Vec<i64> {
        let k = self.degrees.first().map_or(0, Vec::len);
        (0..k).map(|i| self.degrees.iter().map(|d| d[i]).sum()).collect()
    }

    /// `m_i = min_j d_ji`.
    pub fn min_twist(&self) -> Vec<i64> {
        let k = self.degrees.first().map_or(0, Vec::len);
        (0..k)
            .map(|i| self.degrees.iter().map(|d| d[i]).min().unwrap())
            .collect()
    }

    /// `M_i = max_j d_ji`.
    pub fn max_twist(&self) -> Vec<i64> {
        let k = self.degrees.first().map_or(0, Vec::len);
        (0..k)
            .map(|i| self.degrees.iter().map(|d| d[i]).max().unwrap())
            .collect()
    }

    /// Every entry positive.
    pub fn is_ample(&self) -> bool {
        self.degrees.iter().flatten().all(|d| *d > 0)
    }
}

/// Ambient, bundle and root data `(r, d, ℓ)` of a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSpec {
    pub name: String,
    pub ambient: AmbientSpace,
    pub bundle: SplitBundle,
    pub spin: Vec<i64>,
    pub r: u64,
    pub d: u64,
    pub ell: u64,
    pub superpotential: bool,
}

/// Numerical data of the infinity divisor `∞_X = P(E∨)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityData {
    pub dim: u32,
    pub rank: usize,
    /// Pairing vector of `K_X ⊗ det E`.
    pub kdet_pairing: Vec<i64>,
}

impl InfinityData {
    /// `∫_β c₁(K_∞) = −rk·t + ∫_{β_X} c₁(K_X ⊗ det E)`.
    pub fn canonical_degree(&self, beta: &[i64], t: i64) -> i64 {
        -(self.rank as i64) * t + dot(&self.kdet_pairing, beta)
    }
}

impl TargetSpec {
    pub fn new(ambient: AmbientSpace, degrees: Vec<Vec<i64>>) -> Result<Self> {
        let k = ambient.curve_rank();
        let t = TargetSpec {
            name: ambient.name.clone(),
            ambient,
            bundle: SplitBundle { degrees },
            spin: vec![0; k],
            r: 1,
            d: 1,
            ell: 1,
            superpotential: false,
        };
        t.validate()?;
        Ok(t)
    }

    /// Complete intersection in `∏ P^{N_i}` cut out by sections of `⊕ O(d_j)`.
    pub fn complete_intersection(dims: &[u32], degrees: Vec<Vec<i64>>) -> Result<Self> {
        TargetSpec::new(AmbientSpace::projective_product(dims)?, degrees)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_roots(mut self, r: u64, d: u64, ell: u64) -> Result<Self> {
        self.r = r;
        self.d = d;
        self.ell = ell;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.ambient.curve_rank();
        if k == 0 {
            return Err(Error::invalid("curve rank must be at least 1"));
        }
        if self.bundle.rank() == 0 {
            return Err(Error::invalid("bundle rank must be at least 1"));
        }
        if let Some((j, _)) = self.bundle.degrees.iter().enumerate().find(|(_, d)| d.len() != k) {
            return Err(Error::invalid(format!("bundle summand {j} has wrong length")));
        }
        if self.spin.len() != k {
            return Err(Error::invalid("spin vector has wrong length"));
        }
        if self.r == 0 || self.d == 0 || self.ell == 0 {
            return Err(Error::invalid("r, d and ell must be positive"));
        }
        if self.superpotential && !self.rtilde().is_integer() {
            return Err(Error::invalid(format!(
                "r*ell/d = {} must be an integer when a superpotential is declared",
                crate::rational::fmt_q(&self.rtilde())
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn curve_rank(&self) -> usize {
        self.ambient.curve_rank()
    }

    /// `r̃ = rℓ/d`.
    pub fn rtilde(&self) -> Q {
        Q::new((self.r * self.ell).into(), self.d.into())
    }

    pub fn infinity_data(&self) -> InfinityData {
        let det = self.bundle.det();
        InfinityData {
            dim: self.ambient.dim + self.rank() as u32 - 1,
            rank: self.rank(),
            kdet_pairing: self
                .ambient
                .canonical_pairing
                .iter()
                .zip(&det)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `∫_β c₁(K_X ⊗ det E)`.
    pub fn kdet_degree(&self, beta: &[i64]) -> i64 {
        dot(&self.infinity_data().kdet_pairing, beta)
    }

    /// `t = ∫_β c₁(L_log)`, determined by `β_X` when `rk E = 1`.
    pub fn rank_one_t(&self, beta: &[i64]) -> Option<i64> {
        (self.rank() == 1).then(|| dot(&self.bundle.degrees[0], beta))
    }

    /// `L_log` is nef when every summand pairs non-negatively with every
    /// effective generator.
    pub fn l_log_nef(&self) -> bool {
        self.bundle.degrees.iter().all(|d| {
            self.ambient
                .effective_generators
                .iter()
                .all(|g| dot(d, g) >= 0)
        })
    }

    /// Curve classes must be non-negative combinations of the generators;
    /// for the coordinate cone this is componentwise non-negativity.
    pub fn is_effective(&self, beta: &[i64]) -> bool {
        let gens = &self.ambient.effective_generators;
        let k = self.curve_rank();
        let coordinate = gens.len() == k
            && gens
                .iter()
                .enumerate()
                .all(|(i, g)| g.iter().enumerate().all(|(j, x)| *x == i64::from(i == j)));
        if coordinate {
            return beta.iter().all(|b| *b >= 0);
        }
        effective_combination(gens, beta)
    }

    /// The equivalent target with `ℓ = 1`.
    pub fn normalized(&self) -> Result<(TargetSpec, Normalization)> {
        let n = normalize_target(self.r, self.d, self.ell)?;
        let mut t = self.clone();
        t.r = n.r_hat;
        t.d = n.d_hat;
        t.ell = 1;
        Ok((t, n))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: TargetDoc = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("target JSON line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        doc.into_target()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(TargetDoc::from_target(self)).expect("target serializes")
    }
}

/// Decides `β ∈ Σ ℕ·g` for non-negative, nonzero generators.
fn effective_combination(gens: &[Vec<i64>], beta: &[i64]) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![beta.to_vec()];
    while let Some(b) = stack.pop() {
        if b.iter().all(|x| *x == 0) {
            return true;
        }
        if !seen.insert(b.clone()) {
            continue;
        }
        for g in gens {
            let rest: Vec<i64> = b.iter().zip(g).map(|(x, y)| x - y).collect();
            if rest.iter().all(|x| *x >= 0) {
                stack.push(rest);
            }
        }
    }
    false
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    ambient: AmbientDoc,
    bundle: SplitBundle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spin: Option<Vec<i64>>,
    #[serde(default = "one")]
    r: u64,
    #[serde(default = "one")]
    d: u64,
    #[serde(default = "one")]
    ell: u64,
    #[serde(default)]
    superpotential: bool,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AmbientDoc {
    ProjectiveProduct {
        dims: Vec<u32>,
    },
    Abstract {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dim: u32,
        pairings: BTreeMap<String, Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        h1_vanishes: bool,
    },
}

const CANONICAL_KEY: &str = "K";

impl TargetDoc {
    fn into_target(self) -> Result<TargetSpec> {
        let field = |path: &str, e: Error| match e {
            Error::InvalidData(m) => Error::parse(path.to_string(), m),
            other => other,
        };
        let ambient = match self.ambient {
            AmbientDoc::ProjectiveProduct { dims } => AmbientSpace::projective_product(&dims)
                .map_err(|e| field("ambient.dims", e))?,
            AmbientDoc::Abstract {
                name,
                dim,
                mut pairings,
                generators,
                h1_vanishes,
            } => {
                let k = pairings
                    .remove(CANONICAL_KEY)
                    .ok_or_else(|| Error::parse("ambient.pairings", "missing canonical pairing `K`"))?;
                let len = k.len();
                if let Some((n, _)) = pairings.iter().find(|(_, v)| v.len() != len) {
                    return Err(Error::parse(
                        format!("ambient.pairings.{n}"),
                        "pairing vector length differs from `K`",
                    ));
                }
                let mut a = AmbientSpace::abstract_space(
                    name.unwrap_or_else(|| "X".into()),
                    dim,
                    k,
                    generators,
                    h1_vanishes,
                )
                .map_err(|e| field("ambient", e))?;
                a.pairings = pairings;
                a
            }
        };
        let k = ambient.curve_rank();
        for (j, d) in self.bundle.degrees.iter().enumerate() {
            if d.len() != k {
                return Err(Error::parse(
                    format!("bundle.degrees[{j}]"),
                    format!("expected {k} entries, found {}", d.len()),
                ));
            }
        }
        if self.bundle.degrees.is_empty() {
            return Err(Error::parse("bundle.degrees", "bundle rank must be at least 1"));
        }
        let spin = self.spin.unwrap_or_else(|| vec![0; k]);
        if spin.len() != k {
            return Err(Error::parse("spin", format!("expected {k} entries")));
        }
        for (key, v) in [("r", self.r), ("d", self.d), ("ell", self.ell)] {
            if v == 0 {
                return Err(Error::parse(key, "must be a positive integer"));
            }
        }
        let t = TargetSpec {
            name: self.name.unwrap_or_else(|| ambient.name.clone()),
            ambient,
            bundle: self.bundle,
            spin,
            r: self.r,
            d: self.d,
            ell: self.ell,
            superpotential: self.superpotential,
        };
        t.validate().map_err(|e| field("target", e))?;
        Ok(t)
    }

    fn from_target(t: &TargetSpec) -> Self {
        let ambient = match &t.ambient.factor_dims {
            Some(dims) => AmbientDoc::ProjectiveProduct { dims: dims.clone() },
            None => {
                let mut pairings = t.ambient.pairings.clone();
                pairings.insert(CANONICAL_KEY.into(), t.ambient.canonical_pairing.clone());
                AmbientDoc::Abstract {
                    name: Some(t.ambient.name.clone()),
                    dim: t.ambient.dim,
                    pairings,
                    generators: Some(t.ambient.effective_generators.clone()),
                    h1_vanishes: t.ambient.h1_vanishes,
                }
            }
        };
        TargetDoc {
            name: Some(t.name.clone()),
            ambient,
            bundle: t.bundle.clone(),
            spin: Some(t.spin.clone()),
            r: t.r,
            d: t.d,
            ell: t.ell,
            superpotential: t.superpotential,
        }
    }
}

/// A marking: contact order, gerbe order and age `{c/r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sector {
    pub contact: i64,
    pub order: u64,
    #[serde(with = "crate::rational::serde_q")]
    pub age: Q,
}

impl Sector {
    pub fn new(contact: i64, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("gerbe order must be positive"));
        }
        Ok(Sector {
            contact,
            order,
            age: frac(&Q::new(contact.into(), order.into())),
        })
    }

    pub fn untwisted(contact: i64) -> Self {
        Sector::new(contact, 1).expect("order 1")
    }
}

/// Genus, curve class, `t = ∫_β c₁(L_log)` and markings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteData {
    pub g: u32,
    pub beta: Vec<i64>,
    pub t: i64,
    pub markings: Vec<Sector>,
}

impl DiscreteData {
    /// Untwisted markings. `t` is derived from `β` when `rk E = 1` and
    /// must be supplied otherwise.
    pub fn new(target: &TargetSpec, g: u32, beta: Vec<i64>, t: Option<i64>, contacts: &[i64]) -> Result<Self> {
        let markings = contacts.iter().map(|c| Sector::untwisted(*c)).collect();
        Self::with_markings(target, g, beta, t, markings)
    }

    pub fn with_markings(
        target: &TargetSpec,
        g: u32,
        beta: Vec<i64>,
        t: Option<i64>,
        markings: Vec<Sector>,
    ) -> Result<Self> {
        if beta.len() != target.curve_rank() {
            return Err(Error::invalid(format!(
                "curve class has {} coordinates, target has {}",
                beta.len(),
                target.curve_rank()
            )));
        }
        let t = match (target.rank_one_t(&beta), t) {
            (Some(x), None) => x,
            (Some(x), Some(y)) if x == y => x,
            (Some(x), Some(y)) => {
                return Err(Error::invalid(format!("t = {y} contradicts d·β = {x} for a rank-one bundle")))
            }
            (None, Some(y)) => y,
            (None, None) => return Err(Error::invalid("t must be given when rk E ≥ 2")),
        };
        Ok(DiscreteData { g, beta, t, markings })
    }

    pub fn n(&self) -> usize {
        self.markings.len()
    }

    pub fn contacts(&self) -> Vec<i64> {
        self.markings.iter().map(|m| m.contact).collect()
    }
}

/// Output of [`normalize_target`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub r_hat: u64,
    pub d_hat: u64,
    pub a: i64,
    pub b: i64,
    pub r_prime: u64,
    pub d_prime: u64,
}

/// Replaces `(r, d, ℓ)` by the `ℓ = 1` data `(r̂, d̂)`, with a Bezout pair
/// `aℓ + bd = rℓ/r̂`. Among all pairs the one with smallest `|b|` is
/// returned, ties broken towards `b ≥ 0`.
pub fn normalize_target(r: u64, d: u64, ell: u64) -> Result<Normalization> {
    if r == 0 || d == 0 || ell == 0 {
        return Err(Error::invalid("r, d and ell must be positive"));
    }
    let num = d as i128;
    let den = (r * ell) as i128;
    let g = num.gcd(&den);
    let (d_prime, r_prime) = ((num / g) as u64, (den / g) as u64);
    let r_hat = r.lcm(&r_prime);
    let d_hat = d_prime * (r_hat / r_prime);
    let target = (r * ell / r_hat) as i128;
    let (l, dd) = (ell as i128, d as i128);
    let eg = l.extended_gcd(&dd);
    if target % eg.gcd != 0 {
        return Err(Error::invalid(format!(
            "no integers a, b with {ell}a + {d}b = {target}"
        )));
    }
    let scale = target / eg.gcd;
    let step = l / eg.gcd;
    let mut b = (eg.y * scale).rem_euclid(step);
    if 2 * b > step {
        b -= step;
    }
    let a = (target - b * dd) / l;
    Ok(Normalization {
        r_hat,
        d_hat,
        a: a as i64,
        b: b as i64,
        r_prime,
        d_prime,
    })
}

/// `c' = (ℓ/ρ)c` with `ρ = r/r'`, from `∞^{1/ℓ}` down to `∞`.
pub fn push_contacts(markings: &[Sector], base_orders: &[u64], ell: u64) -> Result<Vec<Sector>> {
    if markings.len() != base_orders.len() {
        return Err(Error::invalid("one base gerbe order per marking is required"));
    }
    markings
        .iter()
        .zip(base_orders)
        .map(|(m, rp)| {
            if *rp == 0 || m.order % rp != 0 {
                return Err(Error::invalid(format!(
                    "base order {rp} does not divide gerbe order {}",
                    m.order
                )));
            }
            let rho = m.order / rp;
            if ell % rho != 0 {
                return Err(Error::invalid(format!("ρ = {rho} does not divide ℓ = {ell}")));
            }
            Sector::new((ell / rho) as i64 * m.contact, *rp)
        })
        .collect()
}

/// Inverse of [`push_contacts`]: `c = sign(c')·lcm(ℓ,|c'|)/ℓ`,
/// `ρ = lcm(ℓ,|c'|)/|c'|`, `r = ρr'`; the lifted age is `{c'/(r'ℓ)}`.
pub fn lift_contacts(markings: &[Sector], ell: u64) -> Result<Vec<Sector>> {
    if ell == 0 {
        return Err(Error::invalid("ℓ must be positive"));
    }
    markings
        .iter()
        .map(|m| {
            if m.contact == 0 {
                return Err(Error::invalid("contact order 0 cannot be lifted"));
            }
            let abs = m.contact.unsigned_abs();
            let l = ell.lcm(&abs);
            let rho = l / abs;
            let s = Sector::new(m.contact.signum() * (l / ell) as i64, rho * m.order)?;
            debug_assert_eq!(s.age, lift_age(m.contact, m.order, ell));
            Ok(s)
        })
        .collect()
}

/// `{c'/(r'ℓ)}`.
pub fn lift_age(contact: i64, order: u64, ell: u64) -> Q {
    frac(&Q::new(contact.into(), (order * ell).into()))
}

/// The unit sector `(−d, {1/r})` of a target with `ℓ = 1`.
pub fn unit_sector(target: &TargetSpec) -> Result<(i64, Q)> {
    if target.ell != 1 {
        return Err(Error::invalid("unit sector requires ℓ = 1; normalize the target first"));
    }
    Ok((-(target.d as i64), frac(&Q::new(1.into(), target.r.into()))))
}

/// Ages lie in `[0, 1)`.
pub fn age_in_range(age: &Q) -> bool {
    !age.is_negative() && age < &Q::from_integer(1.into())
}

/// Worked examples used throughout the tests and the CLI.
pub mod presets {
    use super::*;

    pub fn quintic() -> TargetSpec {
        TargetSpec::complete_intersection(&[4], vec![vec![5]])
            .unwrap()
            .with_name("quintic")
    }

    pub fn x33() -> TargetSpec {
        TargetSpec::complete_intersection(&[5], vec![vec![3], vec![3]])
            .unwrap()
            .with_name("X33")
    }

    pub fn x24() -> TargetSpec {
        TargetSpec::complete_intersection(&[5], vec![vec![2], vec![4]])
            .unwrap()
            .with_name("X24")
    }

    pub fn x223() -> TargetSpec {
        TargetSpec::complete_intersection(&[6], vec![vec![2], vec![2], vec![3]])
            .unwrap()
            .with_name("X223")
    }

    pub fn x2222() -> TargetSpec {
        TargetSpec::complete_intersection(&[7], vec![vec![2]; 4])
            .unwrap()
            .with_name("X2222")
    }

    /// `Gr(2,7)` cut by seven Plücker hyperplanes, given by pairings only.
    pub fn gr27() -> TargetSpec {
        let a = AmbientSpace::abstract_space("Gr(2,7)", 10, vec![-7], None, true).unwrap();
        TargetSpec::new(a, vec![vec![1]; 7]).unwrap().with_name("Gr27")
    }

    pub fn hypersurface(n: u32, d: i64) -> TargetSpec {
        TargetSpec::complete_intersection(&[n], vec![vec![d]])
            .unwrap()
            .with_name(format!("X{d}_P{n}"))
    }

    pub fn by_name(name: &str) -> Option<TargetSpec> {
        Some(match name {
            "quintic" => quintic(),
            "X33" => x33(),
            "X24" => x24(),
            "X223" => x223(),
            "X2222" => x2222(),
            "Gr27" => gr27(),
            _ => return None,
        })
    }

    pub const NAMES: [&str; 6] = ["quintic", "X33", "X24", "X223", "X2222", "Gr27"];
}
