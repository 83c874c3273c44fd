//! Exact graded commutative quotient algebras.
//!
//! An algebra is generated by finitely many graded generators. Every
//! generator is either nilpotent (`x^b = 0`) or is the distinguished
//! projective-bundle class `ζ = c₁(O(1))` on `P(F)`, the bundle of lines in
//! a split bundle `F` over the subalgebra spanned by the other generators.
//! `ζ` satisfies the Grothendieck relation `Σ_j c_j(F) ζ^{rk−j} = 0`.
//!
//! Elements are kept in normal form at all times: `ζ`-powers `≥ rk` are
//! rewritten through the relation and monomials beyond a nilpotency bound
//! are dropped, so the monomial basis is finite and products are canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

pub type Exponents = Vec<u32>;
type Terms = BTreeMap<Exponents, Q>;

pub const HODGE_NAME: &str = "lambda";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    /// `x^n = 0`.
    Nilpotent(u32),
    /// Governed by the projective-bundle relation.
    Relation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub bound: Bound,
}

impl Generator {
    pub fn nilpotent(name: impl Into<String>, degree: u32, bound: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            bound: Bound::Nilpotent(bound),
        }
    }

    pub fn relation(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            degree: 1,
            bound: Bound::Relation,
        }
    }
}

/// Rewrite rule for the top power of `ζ`: the Chern classes `c_1..c_rk` of
/// the bundle whose lines `ζ` parameterizes. Exponent vectors run over all
/// generators with a zero in the `ζ` slot.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleRelation {
    pub generator: String,
    pub chern_classes: Vec<BTreeMap<Exponents, Q>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingSpec {
    pub generators: Vec<Generator>,
    pub bundle_relation: Option<BundleRelation>,
    /// When set, the generator named `lambda` is the Hodge class and the
    /// degree functional weighs it by `normalization`.
    pub hodge: bool,
    pub normalization: Q,
}

impl RingSpec {
    pub fn new(generators: Vec<Generator>) -> Self {
        RingSpec {
            generators,
            bundle_relation: None,
            hodge: false,
            normalization: default_normalization(),
        }
    }

    /// `ℚ[x₁..x_k]/(x₁^{b₁}, ..)` with every generator in degree one.
    pub fn truncated_polynomial(vars: &[(&str, u32)]) -> Self {
        RingSpec::new(
            vars.iter()
                .map(|(n, b)| Generator::nilpotent(*n, 1, *b))
                .collect(),
        )
    }

    pub fn with_hodge(mut self) -> Self {
        self.hodge = true;
        self
    }

    pub fn with_normalization(mut self, normalization: Q) -> Self {
        self.normalization = normalization;
        self
    }

    /// Spec of `P(F)`, the bundle of lines in `F = ⊕ summands` over `base`,
    /// with `ζ = c₁(O(1))` appended as the last generator.
    pub fn projective_bundle(base: &Ring, zeta: &str, summands: &BundleDesc) -> Result<RingSpec> {
        if base.0.zeta.is_some() {
            return Err(Error::spec("base ring already carries a bundle relation"));
        }
        if summands.is_empty() {
            return Err(Error::spec("projective bundle of a rank-zero bundle"));
        }
        for s in summands.summands() {
            if !s.ring.same(base) {
                return Err(Error::RingMismatch);
            }
        }
        let total = chern_twisted(summands, &GradedElement::zero(base))?;
        let chern_classes = (1..=summands.rank() as u32)
            .map(|j| {
                total
                    .homogeneous_part(j)
                    .terms
                    .into_iter()
                    .map(|(mut e, c)| {
                        e.push(0);
                        (e, c)
                    })
                    .collect()
            })
            .collect();
        let mut generators = base.spec().generators.clone();
        generators.push(Generator::relation(zeta));
        Ok(RingSpec {
            generators,
            bundle_relation: Some(BundleRelation {
                generator: zeta.to_string(),
                chern_classes,
            }),
            hodge: base.spec().hodge,
            normalization: base.spec().normalization.clone(),
        })
    }
}

pub fn default_normalization() -> Q {
    Q::new(1.into(), 24.into())
}

#[derive(Debug)]
struct ZetaData {
    index: usize,
    rank: u32,
    /// Normal forms of `ζ^rk, ζ^{rk+1}, .., ζ^{2rk−2}`.
    powers: Vec<Terms>,
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    degrees: Vec<u32>,
    bounds: Vec<Option<u32>>,
    zeta: Option<ZetaData>,
    hodge_index: Option<usize>,
    base: Option<Ring>,
}

/// Shared handle to a validated algebra.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

/// Builds the algebra described by `spec`.
pub fn make_ring(spec: RingSpec) -> Result<Ring> {
    Ring::new(spec)
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let n = spec.generators.len();
        let mut seen = std::collections::BTreeSet::new();
        let mut zeta_index = None;
        for (i, g) in spec.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::spec(format!("generator `{}` has degree 0", g.name)));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::spec(format!("duplicate generator `{}`", g.name)));
            }
            match g.bound {
                Bound::Nilpotent(0) => {
                    return Err(Error::spec(format!("generator `{}` has bound 0", g.name)))
                }
                Bound::Nilpotent(_) => {}
                Bound::Relation => {
                    if zeta_index.replace(i).is_some() {
                        return Err(Error::spec("more than one relation generator"));
                    }
                }
            }
        }
        let degrees: Vec<u32> = spec.generators.iter().map(|g| g.degree).collect();
        let bounds: Vec<Option<u32>> = spec
            .generators
            .iter()
            .map(|g| match g.bound {
                Bound::Nilpotent(b) => Some(b),
                Bound::Relation => None,
            })
            .collect();

        let hodge_index = if spec.hodge {
            let i = spec
                .generators
                .iter()
                .position(|g| g.name == HODGE_NAME)
                .ok_or_else(|| Error::spec("hodge flag set but no `lambda` generator"))?;
            let g = &spec.generators[i];
            if g.degree != 1 || g.bound != Bound::Nilpotent(2) {
                return Err(Error::spec("`lambda` must have degree 1 and square zero"));
            }
            Some(i)
        } else {
            None
        };

        let (zeta, base) = match (&spec.bundle_relation, zeta_index) {
            (None, None) => (None, None),
            (Some(_), None) => {
                return Err(Error::spec("bundle relation given without a relation generator"))
            }
            (None, Some(i)) => {
                return Err(Error::spec(format!(
                    "generator `{}` has no bundle relation",
                    spec.generators[i].name
                )))
            }
            (Some(rel), Some(i)) => {
                if rel.generator != spec.generators[i].name {
                    return Err(Error::spec("bundle relation names the wrong generator"));
                }
                let zdeg = degrees[i];
                let rank = rel.chern_classes.len() as u32;
                if rank == 0 {
                    return Err(Error::spec("bundle relation of rank zero"));
                }
                for (j, cj) in rel.chern_classes.iter().enumerate() {
                    for e in cj.keys() {
                        if e.len() != n {
                            return Err(Error::spec("relation exponent vector has wrong length"));
                        }
                        if e[i] != 0 {
                            return Err(Error::spec("relation coefficient involves ζ"));
                        }
                        let deg: u32 = e.iter().zip(&degrees).map(|(a, d)| a * d).sum();
                        if deg != (j as u32 + 1) * zdeg {
                            return Err(Error::spec(format!(
                                "inconsistent relation degree: c_{} has a term of degree {deg}",
                                j + 1
                            )));
                        }
                    }
                }
                let mut base_gens = spec.generators.clone();
                base_gens.remove(i);
                let base = Ring::new(RingSpec {
                    generators: base_gens,
                    bundle_relation: None,
                    hodge: spec.hodge,
                    normalization: spec.normalization.clone(),
                })?;
                (Some((i, rank, rel.chern_classes.clone())), Some(base))
            }
        };

        let mut inner = RingInner {
            spec,
            degrees,
            bounds,
            zeta: None,
            hodge_index,
            base,
        };
        if let Some((index, rank, chern)) = zeta {
            // ζ^rk = −Σ_j c_j ζ^{rk−j}
            let mut top = Terms::new();
            for (j, cj) in chern.iter().enumerate() {
                for (e, c) in cj {
                    if inner.exceeds_bounds(e) {
                        continue;
                    }
                    let mut e = e.clone();
                    e[index] = rank - (j as u32 + 1);
                    accumulate(&mut top, e, -c.clone());
                }
            }
            prune(&mut top);
            let mut powers = vec![top.clone()];
            for _ in rank..(2 * rank).saturating_sub(2) {
                let next = inner.times_zeta(powers.last().unwrap(), index, rank, &top);
                powers.push(next);
            }
            inner.zeta = Some(ZetaData {
                index,
                rank,
                powers,
            });
        }
        Ok(Ring(Arc::new(inner)))
    }

    /// The rational numbers.
    pub fn rationals() -> Ring {
        Ring::new(RingSpec::new(Vec::new())).expect("empty ring spec is valid")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }

    pub fn num_generators(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.spec.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, name: &str) -> Result<GradedElement> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| Error::spec(format!("no generator named `{name}`")))?;
        let mut e = vec![0; self.num_generators()];
        e[i] = 1;
        Ok(self.monomial(&e, q(1)))
    }

    /// The normal form of `coefficient · x^exponents`.
    pub fn monomial(&self, exponents: &[u32], coefficient: Q) -> GradedElement {
        assert_eq!(exponents.len(), self.num_generators(), "exponent length");
        let mut terms = Terms::new();
        self.0.reduce_into(&mut terms, exponents.to_vec(), coefficient);
        prune(&mut terms);
        GradedElement {
            ring: self.clone(),
            terms,
        }
    }

    /// Rank of the projective bundle, if this ring carries one.
    pub fn bundle_rank(&self) -> Option<u32> {
        self.0.zeta.as_ref().map(|z| z.rank)
    }

    pub fn zeta_index(&self) -> Option<usize> {
        self.0.zeta.as_ref().map(|z| z.index)
    }

    /// The subalgebra the projective bundle lives over.
    pub fn base(&self) -> Option<&Ring> {
        self.0.base.as_ref()
    }

    pub fn hodge_index(&self) -> Option<usize> {
        self.0.hodge_index
    }

    pub fn normalization(&self) -> &Q {
        &self.0.spec.normalization
    }

    /// A copy of this ring whose degree functional uses another λ-weight.
    pub fn renormalized(&self, normalization: Q) -> Result<Ring> {
        let mut spec = self.0.spec.clone();
        spec.normalization = normalization;
        Ring::new(spec)
    }

    /// Exponent vector of the fundamental class.
    pub fn top_monomial(&self) -> Exponents {
        let mut e: Exponents = self.0.bounds.iter().map(|b| b.map_or(0, |b| b - 1)).collect();
        if let Some(z) = &self.0.zeta {
            e[z.index] = z.rank - 1;
        }
        e
    }

    /// Graded dimension of the top monomial.
    pub fn top_degree(&self) -> u32 {
        self.0.degree_of(&self.top_monomial())
    }

    pub fn monomial_degree(&self, e: &[u32]) -> u32 {
        self.0.degree_of(e)
    }

    /// Total Chern class `c(F) = 1 + c_1 + .. + c_rk` of the bundle whose
    /// lines `ζ` parameterizes, as a base element.
    pub fn bundle_chern_class(&self) -> Result<GradedElement> {
        let z = self.require_bundle()?;
        let base = self.0.base.as_ref().unwrap();
        let mut total = GradedElement::one(base);
        for cj in &self.0.spec.bundle_relation.as_ref().unwrap().chern_classes {
            let mut terms = Terms::new();
            for (e, c) in cj {
                let mut e = e.clone();
                e.remove(z.index);
                base.0.reduce_into(&mut terms, e, c.clone());
            }
            prune(&mut terms);
            total = &total
                + &GradedElement {
                    ring: base.clone(),
                    terms,
                };
        }
        Ok(total)
    }

    fn require_bundle(&self) -> Result<&ZetaData> {
        self.0
            .zeta
            .as_ref()
            .ok_or_else(|| Error::spec("ring carries no projective-bundle structure"))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl RingInner {
    fn degree_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.degrees).map(|(a, d)| a * d).sum()
    }

    fn exceeds_bounds(&self, e: &[u32]) -> bool {
        e.iter()
            .zip(&self.bounds)
            .any(|(a, b)| matches!(b, Some(b) if a >= b))
    }

    /// Multiplies `terms` (ζ-exponents `< rk`) by `ζ`.
    fn times_zeta(&self, terms: &Terms, index: usize, rank: u32, top: &Terms) -> Terms {
        let mut out = Terms::new();
        for (e, c) in terms {
            if e[index] + 1 < rank {
                let mut e = e.clone();
                e[index] += 1;
                accumulate(&mut out, e, c.clone());
            } else {
                let mut base = e.clone();
                base[index] = 0;
                self.mul_base_into(&mut out, &base, c, top);
            }
        }
        prune(&mut out);
        out
    }

    /// Adds `coef · x^base · other` where `other` is already reduced in ζ.
    fn mul_base_into(&self, acc: &mut Terms, base: &[u32], coef: &Q, other: &Terms) {
        for (e, c) in other {
            let prod: Exponents = e.iter().zip(base).map(|(a, b)| a + b).collect();
            if self.exceeds_bounds(&prod) {
                continue;
            }
            accumulate(acc, prod, coef * c);
        }
    }

    fn zeta_power(&self, c: u32) -> Terms {
        let z = self.zeta.as_ref().expect("zeta data");
        let cached = (c - z.rank) as usize;
        if cached < z.powers.len() {
            return z.powers[cached].clone();
        }
        let mut p = z.powers.last().unwrap().clone();
        for _ in (z.rank as usize + z.powers.len() - 1)..c as usize {
            p = self.times_zeta(&p, z.index, z.rank, &z.powers[0]);
        }
        p
    }

    /// Adds the normal form of `coef · x^e` to `acc`.
    fn reduce_into(&self, acc: &mut Terms, e: Exponents, coef: Q) {
        if coef.is_zero() || self.exceeds_bounds(&e) {
            return;
        }
        match &self.zeta {
            Some(z) if e[z.index] >= z.rank => {
                let power = self.zeta_power(e[z.index]);
                let mut base = e;
                base[z.index] = 0;
                self.mul_base_into(acc, &base, &coef, &power);
            }
            _ => accumulate(acc, e, coef),
        }
    }

    fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.reduce_into(&mut out, e, ca * cb);
            }
        }
        prune(&mut out);
        out
    }
}

fn accumulate(acc: &mut Terms, e: Exponents, c: Q) {
    use std::collections::btree_map::Entry;
    match acc.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
        }
    }
}

fn prune(terms: &mut Terms) {
    terms.retain(|_, c| !c.is_zero());
}

/// An element of a graded algebra in normal form.
#[derive(Debug, Clone)]
pub struct GradedElement {
    ring: Ring,
    terms: Terms,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl GradedElement {
    pub fn zero(ring: &Ring) -> Self {
        GradedElement {
            ring: ring.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, q(1))
    }

    pub fn constant(ring: &Ring, c: Q) -> Self {
        ring.monomial(&vec![0; ring.num_generators()], c)
    }

    /// Normalizes an arbitrary list of `(exponents, coefficient)` pairs.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Q)>,
    {
        let mut acc = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.num_generators(), "exponent length");
            ring.0.reduce_into(&mut acc, e, c);
        }
        prune(&mut acc);
        GradedElement {
            ring: ring.clone(),
            terms: acc,
        }
    }

    /// Parses sums of monomials such as `205*h^4 + 40*lambda*h^3 - 1/2`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let mut out = GradedElement::zero(ring);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                chunks.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                negative ^= ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            if chunks.is_empty() {
                return Err(Error::parse("element", "empty expression"));
            }
            return Err(Error::parse("element", format!("dangling sign in `{text}`")));
        }
        chunks.push((negative, current));
        for (neg, chunk) in chunks {
            let mut coef = q(1);
            let mut e = vec![0u32; ring.num_generators()];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::parse("element", format!("empty factor in `{chunk}`")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= parse_q(factor)?;
                    continue;
                }
                let (name, pow) = match factor.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<u32>().map_err(|_| {
                            Error::parse("element", format!("bad exponent in `{factor}`"))
                        })?,
                    ),
                    None => (factor, 1),
                };
                let i = ring
                    .generator_index(name)
                    .ok_or_else(|| Error::parse("element", format!("unknown generator `{name}`")))?;
                e[i] += pow;
            }
            if neg {
                coef = -coef;
            }
            out = &out + &ring.monomial(&e, coef);
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&vec![0; self.ring.num_generators()])
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        GradedElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| self.ring.0.degree_of(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has degree `d` (vacuously for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| self.ring.0.degree_of(e) == d)
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|e| self.ring.0.degree_of(e)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        prune(&mut terms);
        Ok(GradedElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(GradedElement {
            ring: self.ring.clone(),
            terms: self.ring.0.mul_terms(&self.terms, &other.terms),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return GradedElement::zero(&self.ring);
        }
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GradedElement::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The inverse of an element with constant term 1, by the geometric
    /// series of its nilpotent part.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NotAUnit(fmt_q(&c0)));
        }
        let one = GradedElement::one(&self.ring);
        let minus_nil = &one - self;
        let mut result = one.clone();
        let mut power = one;
        // the nilpotent part raised past the top degree vanishes
        for _ in 0..=self.ring.top_degree() {
            power = &power * &minus_nil;
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        debug_assert!(power.is_zero());
        Ok(result)
    }

    /// Embeds a base-ring element into the projective-bundle ring.
    pub fn pullback(&self, bundle_ring: &Ring) -> Result<Self> {
        let z = bundle_ring.require_bundle()?;
        if !self.ring.same(bundle_ring.base().unwrap()) {
            return Err(Error::RingMismatch);
        }
        Ok(GradedElement::from_terms(
            bundle_ring,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e.insert(z.index, 0);
                (e, c.clone())
            }),
        ))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Exponents, &Q)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            self.ring
                .0
                .degree_of(b)
                .cmp(&self.ring.0.degree_of(a))
                .then_with(|| a.cmp(b))
        });
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let names: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > 0)
                .map(|(j, p)| {
                    let name = &self.ring.0.spec.generators[j].name;
                    if *p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", crate::rational::sign_char(c))?;
            }
            match (names.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_q(&mag))?,
                (false, true) => write!(f, "{}", names.join("*"))?,
                (false, false) => write!(f, "{}*{}", fmt_q(&mag), names.join("*"))?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> std::ops::$tr<&'a GradedElement> for &'a GradedElement {
            type Output = GradedElement;
            fn $m(self, rhs: &'a GradedElement) -> GradedElement {
                let f: fn(&GradedElement, &GradedElement) -> Result<GradedElement> = $body;
                f(self, rhs).expect("operands from different rings")
            }
        }
        impl std::ops::$tr<GradedElement> for GradedElement {
            type Output = GradedElement;
            fn $m(self, rhs: GradedElement) -> GradedElement {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b));
binop!(Sub, sub, |a, b| a.checked_add(&-b));
binop!(Mul, mul, |a, b| a.checked_mul(b));

impl std::ops::Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&q(-1))
    }
}

impl std::ops::Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}

/// A split bundle given by the first Chern classes of its line summands.
#[derive(Debug, Clone)]
pub struct BundleDesc {
    summands: Vec<GradedElement>,
}

impl BundleDesc {
    pub fn new(summands: Vec<GradedElement>) -> Result<Self> {
        if let Some(first) = summands.first() {
            for s in &summands {
                if !s.ring.same(&first.ring) {
                    return Err(Error::RingMismatch);
                }
                if !s.is_homogeneous_of(1) {
                    return Err(Error::spec(format!("summand `{s}` is not a degree-1 class")));
                }
            }
        }
        Ok(BundleDesc { summands })
    }

    /// `O^{⊕ rank}`.
    pub fn trivial(ring: &Ring, rank: usize) -> Self {
        BundleDesc {
            summands: vec![GradedElement::zero(ring); rank],
        }
    }

    pub fn summands(&self) -> &[GradedElement] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &BundleDesc) -> Result<BundleDesc> {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        BundleDesc::new(s)
    }
}

/// `∏_j (1 + v_j + twist)`: the total Chern class of `V ⊗ T` for the line
/// class `twist = c₁(T)`.
pub fn chern_twisted(bundle: &BundleDesc, twist: &GradedElement) -> Result<GradedElement> {
    if !twist.is_homogeneous_of(1) {
        return Err(Error::spec(format!("twist `{twist}` is not a degree-1 class")));
    }
    let one = GradedElement::one(&twist.ring);
    let mut total = one.clone();
    for v in &bundle.summands {
        let factor = one.checked_add(v)?.checked_add(twist)?;
        total = total.checked_mul(&factor)?;
    }
    Ok(total)
}

/// Total Chern class of the K-class `(num − den) ⊗ T`.
pub fn chern_kclass(
    num: &BundleDesc,
    den: &BundleDesc,
    twist: &GradedElement,
) -> Result<GradedElement> {
    let top = chern_twisted(num, twist)?;
    let bottom = chern_twisted(den, twist)?.invert_unit()?;
    top.checked_mul(&bottom)
}

/// `π_*` along the projective bundle: `ζ^{rk−1+a} · b ↦ s_a · b`.
///
/// On normal forms this keeps exactly the `ζ^{rk−1}` coefficients.
pub fn segre_pushforward(x: &GradedElement) -> Result<GradedElement> {
    let z = x.ring.require_bundle()?;
    let base = x.ring.base().unwrap();
    let mut terms = Terms::new();
    for (e, c) in &x.terms {
        if e[z.index] == z.rank - 1 {
            let mut e = e.clone();
            e.remove(z.index);
            accumulate(&mut terms, e, c.clone());
        }
    }
    prune(&mut terms);
    Ok(GradedElement {
        ring: base.clone(),
        terms,
    })
}

/// The Segre class `s_a = [c(F)^{-1}]_a` of the bundle `ζ` lives over.
pub fn segre_class(ring: &Ring, a: u32) -> Result<GradedElement> {
    let s = ring.bundle_chern_class()?.invert_unit()?;
    Ok(s.homogeneous_part(a * ring.spec().generators[ring.zeta_index().unwrap()].degree))
}

/// The degree functional: coefficient of the fundamental class, weighted
/// by the λ-normalization when the Hodge class is present.
pub fn integrate(x: &GradedElement) -> Q {
    if x.ring.bundle_rank().is_some() {
        let pushed = segre_pushforward(x).expect("bundle ring");
        return integrate(&pushed);
    }
    let c = x.coefficient(&x.ring.top_monomial());
    if x.ring.hodge_index().is_some() {
        c * x.ring.normalization()
    } else {
        c
    }
}
