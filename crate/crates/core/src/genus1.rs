//! Genus-one effective cycles on `M̄_{1,1} × ∞_X` and their invariants.
//!
//! The ring is `ℚ[λ, h_i, ζ]` with `λ² = 0`, `h_i^{N_i+1} = 0` and the
//! projective-bundle relation of `∞_X = P(E∨)`, where `ζ = c₁(L_log)`.
//! `T_∞` enters as the K-class `Σ_i (N_i+1)·O(h_i) + Σ_j O(ζ − d_j·h) − (k+1)·O`
//! from the Euler sequences of the factors and of the bundle.

use num_traits::Zero;
use serde::Serialize;

use crate::constraints::Vanishing;
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::ring::{
    chern_kclass, integrate, make_ring, BundleDesc, Generator, GradedElement, Ring, RingSpec,
    HODGE_NAME,
};
use crate::target::{DiscreteData, TargetSpec};

pub const ZETA_NAME: &str = "zeta";

#[derive(Debug, Clone)]
pub struct GenusOneModel {
    pub ring: Ring,
    pub base: Ring,
    /// `ψ_min = λ − ζ`.
    pub psi_min: GradedElement,
    /// Dimension-one reduced cycle.
    pub red_cycle: GradedElement,
    /// Dimension-zero canonical cycle.
    pub vir_cycle: GradedElement,
    pub rtilde: Q,
    pub dim_infinity: u32,
}

/// Ring generators: `λ`, the hyperplane classes, then `ζ`.
fn build_rings(target: &TargetSpec, normalization: Q) -> Result<(Ring, Ring, Vec<GradedElement>)> {
    let dims = target
        .ambient
        .factor_dims
        .as_ref()
        .filter(|_| target.ambient.chow_supported)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "the genus-one model needs a product of projective spaces, not `{}`",
                target.ambient.name
            ))
        })?;
    let names = target.ambient.hyperplane_names();
    let mut gens = vec![Generator::nilpotent(HODGE_NAME, 1, 2)];
    gens.extend(names.iter().zip(dims).map(|(n, d)| Generator::nilpotent(n.as_str(), 1, d + 1)));
    let base = make_ring(
        RingSpec::new(gens)
            .with_hodge()
            .with_normalization(normalization),
    )?;
    let hs: Vec<GradedElement> = names
        .iter()
        .map(|n| base.generator(n))
        .collect::<Result<_>>()?;
    let degree_class = |d: &[i64]| -> GradedElement {
        hs.iter()
            .zip(d)
            .fold(GradedElement::zero(&base), |acc, (h, x)| &acc + &h.scale(&q(*x)))
    };
    // lines in E∨: summands −d_j·h
    let dual = BundleDesc::new(
        target
            .bundle
            .degrees
            .iter()
            .map(|d| -degree_class(d))
            .collect(),
    )?;
    let ring = make_ring(RingSpec::projective_bundle(&base, ZETA_NAME, &dual)?)?;
    let hs = names
        .iter()
        .map(|n| ring.generator(n))
        .collect::<Result<_>>()?;
    Ok((ring, base, hs))
}

/// Builds the genus-one model with the default λ-normalization `1/24`.
pub fn build_genus1(target: &TargetSpec) -> Result<GenusOneModel> {
    build_genus1_with(target, crate::ring::default_normalization())
}

pub fn build_genus1_with(target: &TargetSpec, normalization: Q) -> Result<GenusOneModel> {
    if !target.bundle.is_ample() {
        return Err(Error::invalid("the genus-one model needs an ample bundle E"));
    }
    let (ring, base, hs) = build_rings(target, normalization)?;
    let dims = target.ambient.factor_dims.as_ref().unwrap();
    let lambda = ring.generator(HODGE_NAME)?;
    let zeta = ring.generator(ZETA_NAME)?;
    let zero = GradedElement::zero(&ring);
    let twist = -&lambda;

    let mut tangent = Vec::new();
    for (h, n) in hs.iter().zip(dims) {
        tangent.extend(std::iter::repeat(h.clone()).take(*n as usize + 1));
    }
    for d in &target.bundle.degrees {
        let dh = hs
            .iter()
            .zip(d)
            .fold(GradedElement::zero(&ring), |acc, (h, x)| &acc + &h.scale(&q(*x)));
        tangent.push(&zeta - &dh);
    }
    let tangent = BundleDesc::new(tangent)?;
    let k = dims.len();
    let dim_inf = target.infinity_data().dim;

    // T_∞ + O − L: numerator over k trivial summands and L
    let mut den = vec![zero.clone(); k];
    den.push(zeta.clone());
    let red_full = chern_kclass(&tangent, &BundleDesc::new(den)?, &twist)?;
    let red_cycle = red_full.homogeneous_part(dim_inf);

    let euler = chern_kclass(&tangent, &BundleDesc::trivial(&ring, k + 1), &twist)?;
    let vir_cycle = &twist * &euler.homogeneous_part(dim_inf);

    Ok(GenusOneModel {
        psi_min: &lambda - &zeta,
        red_cycle,
        vir_cycle,
        rtilde: target.rtilde(),
        dim_infinity: dim_inf,
        ring,
        base,
    })
}

impl GenusOneModel {
    /// `vir = −r̃ · ψ_min · red`.
    pub fn consistency_holds(&self) -> bool {
        let rhs = (&self.psi_min * &self.red_cycle).scale(&-self.rtilde.clone());
        rhs == self.vir_cycle
    }

    pub fn parse_insertion(&self, text: &str) -> Result<GradedElement> {
        GradedElement::parse(&self.ring, text)
    }

    /// `L_log = ζ`.
    pub fn l_log(&self) -> GradedElement {
        self.ring.generator(ZETA_NAME).expect("zeta generator")
    }

    /// A model whose degree functional uses another λ-weight.
    pub fn renormalized(&self, normalization: Q) -> Result<GenusOneModel> {
        let ring = self.ring.renormalized(normalization)?;
        let base = ring.base().unwrap().clone();
        let move_to = |x: &GradedElement| {
            GradedElement::from_terms(&ring, x.terms().map(|(e, c)| (e.clone(), c.clone())))
        };
        Ok(GenusOneModel {
            psi_min: move_to(&self.psi_min),
            red_cycle: move_to(&self.red_cycle),
            vir_cycle: move_to(&self.vir_cycle),
            rtilde: self.rtilde.clone(),
            dim_infinity: self.dim_infinity,
            ring,
            base,
        })
    }

    /// Pushes a class to the base `M̄_{1,1} × X`.
    pub fn on_base(&self, x: &GradedElement) -> Result<GradedElement> {
        crate::ring::segre_pushforward(x)
    }
}

/// `deg(ψ_min^k · ∏ α_i ∩ [R]^red)`; all evaluation maps agree since `β = 0`.
pub fn genus1_invariant(model: &GenusOneModel, k: u32, insertions: &[GradedElement]) -> Result<Q> {
    let mut x = &model.psi_min.pow(k) * &model.red_cycle;
    for a in insertions {
        let a = if a.ring().same(&model.ring) {
            a.clone()
        } else if a.ring().same(&model.base) {
            a.pullback(&model.ring)?
        } else {
            return Err(Error::RingMismatch);
        };
        x = x.checked_mul(&a)?;
        if x.is_zero() {
            return Ok(Q::zero());
        }
    }
    Ok(integrate(&x))
}

/// Genus zero with nef `L_log` has empty moduli.
pub fn genus0_status(target: &TargetSpec, data: &DiscreteData) -> Result<Vanishing> {
    if data.g != 0 {
        return Err(Error::invalid("genus0_status needs g = 0"));
    }
    Ok(if target.l_log_nef() {
        Vanishing::Empty
    } else {
        Vanishing::Unknown
    })
}

/// Genus-one invariant with `n ≥ 1` markings of contact `−1`, reduced to
/// the one-pointed model through the string equation.
pub fn genus1_reduce(
    target: &TargetSpec,
    n: usize,
    k: u32,
    insertions: &[String],
    normalization: Option<Q>,
) -> Result<Q> {
    use crate::recursion::{Insertion, Reducer, Token};
    if n == 0 {
        return Err(Error::Infeasible("genus-one data needs at least one marking".into()));
    }
    if insertions.len() > n {
        return Err(Error::invalid("more insertions than markings"));
    }
    let mut reducer = Reducer::new(target.clone())?;
    if let Some(nz) = normalization {
        reducer = reducer.with_normalization(nz)?;
    }
    let mut marks = Vec::with_capacity(n);
    for i in 0..n {
        let ins = match insertions.get(i) {
            Some(s) => Insertion::parse(target, s)?,
            None => Insertion::one(target),
        };
        marks.push((-1, ins));
    }
    let token = Token::new(target, 1, vec![0; target.curve_rank()], Some(0), marks, k)?;
    let result = reducer.reduce(&token)?;
    result.value().ok_or_else(|| Error::ReductionNotGuaranteed {
        reason: "genus-one reduction left symbolic terms".into(),
        trace: result.trace.clone(),
    })
}

/// Summary of a model, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ModelReport {
    pub dim_infinity: u32,
    pub psi_min: String,
    pub red_cycle: String,
    pub vir_cycle: String,
    pub consistency: bool,
}

impl From<&GenusOneModel> for ModelReport {
    fn from(m: &GenusOneModel) -> Self {
        ModelReport {
            dim_infinity: m.dim_infinity,
            psi_min: m.psi_min.to_string(),
            red_cycle: m.red_cycle.to_string(),
            vir_cycle: m.vir_cycle.to_string(),
            consistency: m.consistency_holds(),
        }
    }
}
