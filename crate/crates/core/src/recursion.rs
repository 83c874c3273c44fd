//! String, divisor and dilaton reductions of effective invariants, root
//! rescaling, disconnected assembly and the `ψ_min` push-forward identity.
//!
//! An invariant `deg(ψ_min^k · ∏ ev_i*α_i ∩ [R_ς]^red)` is a [`Token`].
//! Insertions are monomials in the hyperplane classes and `L = c₁(L_log)`;
//! at a marking `ψ_DF = −L`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constraints::{self, rule, Vanishing};
use crate::error::{Error, Result};
use crate::genus1::{build_genus1_with, genus1_invariant, GenusOneModel, ZETA_NAME};
use crate::rational::{fmt_q, q, RationalJson, Q};
use crate::ring::{make_ring, segre_pushforward, BundleDesc, GradedElement, Ring, RingSpec};
use crate::series::{expand_pole, LaurentSeries, PoleSign};
use crate::target::{DiscreteData, Sector, TargetSpec};

pub const L_NAME: &str = "L";

/// A monomial `∏ h_i^{a_i} · L^b`, stored as `[a_1, .., a_k, b]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Insertion(pub Vec<u32>);

impl Insertion {
    pub fn one(target: &TargetSpec) -> Self {
        Insertion(vec![0; target.curve_rank() + 1])
    }

    pub fn codim(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.codim() == 0
    }

    pub fn times(&self, other: &Insertion) -> Insertion {
        Insertion(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn l_power(target: &TargetSpec, p: u32) -> Self {
        let mut v = vec![0; target.curve_rank() + 1];
        v[target.curve_rank()] = p;
        Insertion(v)
    }

    /// Parses `1`, `h^2`, `h1*h2`, `L`, `h^3*L^2`.
    pub fn parse(target: &TargetSpec, text: &str) -> Result<Self> {
        let mut names = target.ambient.hyperplane_names();
        names.push(L_NAME.to_string());
        let mut v = vec![0u32; names.len()];
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Insertion(v));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::parse("insertion", format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::parse("insertion", format!("unknown class `{name}`; expected one of {names:?}")))?;
            v[i] += pow;
        }
        Ok(Insertion(v))
    }

    /// `∫_β D` for a divisor monomial: `β_i` for `h_i`, `t` for `L`.
    fn pairing(&self, beta: &[i64], t: i64) -> i64 {
        let k = beta.len();
        (0..k).map(|i| self.0[i] as i64 * beta[i]).sum::<i64>() + self.0[k] as i64 * t
    }

    fn render(&self, target_rank: usize) -> String {
        let mut names = crate::target::hyperplane_names(target_rank);
        names.push(L_NAME.to_string());
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(&names)
            .filter(|(p, _)| **p > 0)
            .map(|(p, n)| if *p == 1 { n.clone() } else { format!("{n}^{p}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Marking {
    pub contact: i64,
    pub order: u64,
    pub insertion: Insertion,
    /// Power of `ψ_DF`-type descendants; only `0` is supported.
    pub descendant: u32,
}

/// `(g, β, t, markings, k)` with markings kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Token {
    pub g: u32,
    pub beta: Vec<i64>,
    pub t: i64,
    pub markings: Vec<Marking>,
    pub k: u32,
}

impl Token {
    /// Untwisted token; `t` is derived from `β` when `rk E = 1`.
    pub fn new(
        target: &TargetSpec,
        g: u32,
        beta: Vec<i64>,
        t: Option<i64>,
        markings: Vec<(i64, Insertion)>,
        k: u32,
    ) -> Result<Self> {
        let data = DiscreteData::new(target, g, beta, t, &[])?;
        let width = target.curve_rank() + 1;
        let mut ms = Vec::with_capacity(markings.len());
        for (c, ins) in markings {
            if c >= 0 {
                return Err(Error::invalid(format!("contact order {c} is not negative")));
            }
            if ins.0.len() != width {
                return Err(Error::invalid("insertion has the wrong number of exponents"));
            }
            ms.push(Marking {
                contact: c,
                order: 1,
                insertion: ins,
                descendant: 0,
            });
        }
        Ok(Token::from_parts(g, data.beta, data.t, ms, k))
    }

    pub fn from_parts(g: u32, beta: Vec<i64>, t: i64, mut markings: Vec<Marking>, k: u32) -> Self {
        markings.sort();
        Token { g, beta, t, markings, k }
    }

    pub fn n(&self) -> usize {
        self.markings.len()
    }

    pub fn discrete_data(&self) -> DiscreteData {
        DiscreteData {
            g: self.g,
            beta: self.beta.clone(),
            t: self.t,
            markings: self
                .markings
                .iter()
                .map(|m| Sector::new(m.contact, m.order).expect("positive order"))
                .collect(),
        }
    }

    fn insertion_degrees(&self) -> Vec<u32> {
        self.markings.iter().map(|m| 2 * m.insertion.codim()).collect()
    }

    /// `(n, k)`, strictly decreasing along every reduction.
    pub fn measure(&self) -> (usize, u32) {
        (self.n(), self.k)
    }

    fn without(&self, idx: usize) -> Vec<Marking> {
        let mut ms = self.markings.clone();
        ms.remove(idx);
        ms
    }

    fn is_unit(&self, idx: usize, unit_contact: i64) -> bool {
        let m = &self.markings[idx];
        m.contact == unit_contact && m.order == 1 && m.descendant == 0 && m.insertion.codim() <= 1
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self
            .markings
            .iter()
            .map(|m| format!("({}, {})", m.contact, m.insertion.render(self.beta.len())))
            .collect();
        write!(
            f,
            "[g={} β={:?} t={} n={} {{{}}} k={}]",
            self.g,
            self.beta,
            self.t,
            self.n(),
            ms.join(", "),
            self.k
        )
    }
}

/// Rational combination of tokens.
pub type LinComb = BTreeMap<Token, Q>;

fn add_term(acc: &mut LinComb, tok: Token, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(tok).or_insert_with(Q::zero);
    *e += c;
    acc.retain(|_, v| !v.is_zero());
}

fn add_comb(acc: &mut LinComb, other: &LinComb, scale: &Q) {
    for (t, c) in other {
        add_term(acc, t.clone(), c * scale);
    }
}

/// Index of a basic effective invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasicKey {
    pub g: u32,
    pub beta: Vec<i64>,
    pub t: i64,
    pub n: usize,
}

impl fmt::Display for BasicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B(g={}, β={:?}, t={}, n={})", self.g, self.beta, self.t, self.n)
    }
}

/// `constant + Σ c_B · B`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reduced {
    pub constant: Q,
    pub basics: BTreeMap<BasicKey, Q>,
}

impl Reduced {
    pub fn zero() -> Self {
        Reduced {
            constant: Q::zero(),
            basics: BTreeMap::new(),
        }
    }

    fn value(v: Q) -> Self {
        Reduced {
            constant: v,
            basics: BTreeMap::new(),
        }
    }

    fn basic(key: BasicKey) -> Self {
        let mut basics = BTreeMap::new();
        basics.insert(key, Q::one());
        Reduced {
            constant: Q::zero(),
            basics,
        }
    }

    fn add_scaled(&mut self, other: &Reduced, c: &Q) {
        self.constant += &other.constant * c;
        for (k, v) in &other.basics {
            let e = self.basics.entry(k.clone()).or_insert_with(Q::zero);
            *e += v * c;
        }
        self.basics.retain(|_, v| !v.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.basics.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Reduced {
        let mut out = Reduced::zero();
        out.add_scaled(self, c);
        out
    }
}

impl Serialize for Reduced {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            basic: &'a BasicKey,
            coefficient: RationalJson,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            constant: RationalJson,
            basics: Vec<Term<'a>>,
        }
        Repr {
            constant: RationalJson(self.constant.clone()),
            basics: self
                .basics
                .iter()
                .map(|(k, c)| Term {
                    basic: k,
                    coefficient: RationalJson(c.clone()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.basics.is_empty() {
            parts.push(fmt_q(&self.constant));
        }
        for (k, c) in &self.basics {
            parts.push(if c.is_one() {
                k.to_string()
            } else {
                format!("{}·{}", fmt_q(c), k)
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Status of a ledger entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Symbolic { combination: Reduced },
    Value {
        #[serde(with = "crate::rational::serde_q")]
        value: Q,
    },
    Zero { rule: String },
}

/// Result of [`Reducer::reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub result: Reduced,
    pub status: Status,
    pub trace: Vec<String>,
}

impl ReductionResult {
    pub fn value(&self) -> Option<Q> {
        self.result
            .basics
            .is_empty()
            .then(|| self.result.constant.clone())
    }
}

/// Which unit marking the reducer removes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitChoice {
    First,
    Last,
    /// Cycles through the available units starting from a seed.
    Rotate(u64),
}

/// Applies string/divisor reductions down to basic invariants and the
/// genus-one model, memoizing every token.
pub struct Reducer {
    target: TargetSpec,
    infinity: Option<Ring>,
    normalization: Q,
    model: Option<GenusOneModel>,
    ledger: BTreeMap<Token, Reduced>,
    trace: Vec<String>,
    choice: UnitChoice,
    step: u64,
    unit_contact: i64,
}

/// Cohomology ring of `∞_X` over a product of projective spaces, with
/// generators `h_i` and `L`.
pub fn infinity_ring(target: &TargetSpec) -> Result<Ring> {
    let dims = target
        .ambient
        .factor_dims
        .as_ref()
        .ok_or_else(|| Error::Unsupported("no cohomology ring for an abstract ambient".into()))?;
    let names = target.ambient.hyperplane_names();
    let spec = RingSpec::truncated_polynomial(
        &names
            .iter()
            .zip(dims)
            .map(|(n, d)| (n.as_str(), d + 1))
            .collect::<Vec<_>>(),
    );
    let base = make_ring(spec)?;
    let hs: Vec<GradedElement> = names.iter().map(|n| base.generator(n)).collect::<Result<_>>()?;
    let dual = BundleDesc::new(
        target
            .bundle
            .degrees
            .iter()
            .map(|d| {
                hs.iter()
                    .zip(d)
                    .fold(GradedElement::zero(&base), |acc, (h, x)| &acc - &h.scale(&q(*x)))
            })
            .collect(),
    )?;
    make_ring(RingSpec::projective_bundle(&base, L_NAME, &dual)?)
}

impl Reducer {
    /// String and divisor reductions are implemented for untwisted targets
    /// (`r = d = ℓ = 1`, trivial spin).
    pub fn new(target: TargetSpec) -> Result<Self> {
        if target.r != 1 || target.d != 1 || target.ell != 1 || target.spin.iter().any(|s| *s != 0) {
            return Err(Error::Unsupported(
                "string/divisor reduction needs an untwisted target (r = d = ell = 1, trivial spin)".into(),
            ));
        }
        let infinity = if target.ambient.chow_supported {
            Some(infinity_ring(&target)?)
        } else {
            None
        };
        Ok(Reducer {
            unit_contact: -(target.d as i64),
            target,
            infinity,
            normalization: crate::ring::default_normalization(),
            model: None,
            ledger: BTreeMap::new(),
            trace: Vec::new(),
            choice: UnitChoice::First,
            step: 0,
        })
    }

    pub fn with_normalization(mut self, normalization: Q) -> Result<Self> {
        self.normalization = normalization;
        self.model = None;
        self.ledger.clear();
        Ok(self)
    }

    pub fn with_unit_choice(mut self, choice: UnitChoice) -> Self {
        self.choice = choice;
        if let UnitChoice::Rotate(s) = choice {
            self.step = s;
        }
        self
    }

    pub fn target(&self) -> &TargetSpec {
        &self.target
    }

    pub fn ledger(&self) -> &BTreeMap<Token, Reduced> {
        &self.ledger
    }

    /// Normal form of an insertion as a combination of monomials.
    pub fn canonical_insertion(&self, ins: &Insertion) -> Vec<(Q, Insertion)> {
        match &self.infinity {
            None => vec![(Q::one(), ins.clone())],
            Some(ring) => ring
                .monomial(&ins.0, Q::one())
                .terms()
                .map(|(e, c)| (c.clone(), Insertion(e.clone())))
                .collect(),
        }
    }

    /// Rewrites every insertion in normal form.
    pub fn canonicalize(&self, token: &Token) -> LinComb {
        let mut partial: Vec<(Q, Vec<Marking>)> = vec![(Q::one(), Vec::new())];
        for m in &token.markings {
            let options = self.canonical_insertion(&m.insertion);
            let mut next = Vec::new();
            for (c, ms) in &partial {
                for (c2, ins) in &options {
                    let mut ms = ms.clone();
                    ms.push(Marking {
                        insertion: ins.clone(),
                        ..m.clone()
                    });
                    next.push((c * c2, ms));
                }
            }
            partial = next;
        }
        let mut out = LinComb::new();
        for (c, ms) in partial {
            add_term(
                &mut out,
                Token::from_parts(token.g, token.beta.clone(), token.t, ms, token.k),
                c,
            );
        }
        out
    }

    fn canonicalize_comb(&self, comb: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (t, c) in comb {
            add_comb(&mut out, &self.canonicalize(t), c);
        }
        out
    }

    fn check_unit(&self, token: &Token, unit: usize, max_codim: u32) -> Result<()> {
        if unit >= token.n() || !token.is_unit(unit, self.unit_contact) || token.markings[unit].insertion.codim() > max_codim {
            return Err(Error::invalid(format!("marking {unit} of {token} is not a unit marking")));
        }
        Ok(())
    }

    /// `Σ_{j≠u} |c_j|/r_j Σ_{k'<k} (−1)^{k'} [α_j·D·L^{k'} at j, k − 1 − k']`.
    fn sum_over_markings(&self, token: &Token, unit: usize, extra: &Insertion) -> LinComb {
        let rest = token.without(unit);
        let mut out = LinComb::new();
        for j in 0..rest.len() {
            let weight = Q::new(rest[j].contact.abs().into(), rest[j].order.into());
            for kp in 0..token.k {
                let mut ms = rest.clone();
                ms[j].insertion = ms[j]
                    .insertion
                    .times(extra)
                    .times(&Insertion::l_power(&self.target, kp));
                let sign = if kp % 2 == 0 { q(1) } else { q(-1) };
                add_term(
                    &mut out,
                    Token::from_parts(token.g, token.beta.clone(), token.t, ms, token.k - 1 - kp),
                    &weight * sign,
                );
            }
        }
        self.canonicalize_comb(&out)
    }

    /// String equation at the unit marking `unit` (insertion `1`).
    pub fn reduce_string(&self, token: &Token, unit: usize) -> Result<LinComb> {
        self.check_unit(token, unit, 0)?;
        Ok(self.sum_over_markings(token, unit, &Insertion::one(&self.target)))
    }

    /// Divisor equation at the unit marking `unit` carrying a divisor `D`.
    pub fn reduce_divisor(&self, token: &Token, unit: usize) -> Result<LinComb> {
        self.check_unit(token, unit, 1)?;
        let d = token.markings[unit].insertion.clone();
        if d.codim() != 1 {
            return Err(Error::invalid("the divisor equation needs a degree-one insertion"));
        }
        let mut out = self.sum_over_markings(token, unit, &d);
        let first = d.pairing(&token.beta, token.t);
        let base = Token::from_parts(token.g, token.beta.clone(), token.t, token.without(unit), token.k);
        add_comb(&mut out, &self.canonicalize(&base), &q(first));
        Ok(out)
    }

    /// `(d/r)(2g − 2 + n)` for the token without its unit marking.
    pub fn dilaton_factor(&self, g: u32, n: usize) -> Q {
        Q::new(self.target.d.into(), self.target.r.into()) * q(2 * g as i64 - 2 + n as i64)
    }

    /// Checks `string(k+1) + divisor(L, k) = (t + Σ|c_j|/r_j)[ς, k]` and
    /// `t + Σ|c_j|/r_j = (d/r)(2g − 2 + n)` for a balanced `ς`.
    pub fn dilaton_check(&self, base: &Token) -> Result<bool> {
        let unit = |ins: Insertion| Marking {
            contact: self.unit_contact,
            order: 1,
            insertion: ins,
            descendant: 0,
        };
        let with_unit = |ins: Insertion, k: u32| {
            let mut ms = base.markings.clone();
            ms.push(unit(ins));
            Token::from_parts(base.g, base.beta.clone(), base.t, ms, k)
        };
        let s_tok = with_unit(Insertion::one(&self.target), base.k + 1);
        let d_tok = with_unit(Insertion::l_power(&self.target, 1), base.k);
        let s_idx = s_tok.markings.iter().position(|m| *m == unit(Insertion::one(&self.target))).unwrap();
        let d_idx = d_tok
            .markings
            .iter()
            .position(|m| *m == unit(Insertion::l_power(&self.target, 1)))
            .unwrap();
        let mut lhs = self.reduce_string(&s_tok, s_idx)?;
        add_comb(&mut lhs, &self.reduce_divisor(&d_tok, d_idx)?, &q(1));
        let weight: Q = q(base.t)
            + base
                .markings
                .iter()
                .map(|m| Q::new(m.contact.abs().into(), m.order.into()))
                .sum::<Q>();
        let mut rhs = LinComb::new();
        add_comb(&mut rhs, &self.canonicalize(base), &weight);
        let balanced = constraints::balancing(&base.discrete_data(), &self.target).satisfied;
        Ok(lhs == rhs && (!balanced || weight == self.dilaton_factor(base.g, base.n())))
    }

    fn model(&mut self) -> Result<&GenusOneModel> {
        if self.model.is_none() {
            self.model = Some(build_genus1_with(&self.target, self.normalization.clone())?);
        }
        Ok(self.model.as_ref().unwrap())
    }

    fn pick_unit(&mut self, token: &Token) -> Option<usize> {
        let units: Vec<usize> = (0..token.n()).filter(|i| token.is_unit(*i, self.unit_contact)).collect();
        if units.is_empty() {
            return None;
        }
        Some(match self.choice {
            UnitChoice::First => units[0],
            UnitChoice::Last => units[units.len() - 1],
            UnitChoice::Rotate(_) => {
                self.step = self.step.wrapping_add(1);
                units[(self.step % units.len() as u64) as usize]
            }
        })
    }

    /// Reduces a token to basic invariants, genus-one values or zero.
    pub fn reduce(&mut self, token: &Token) -> Result<ReductionResult> {
        self.trace.clear();
        if token.markings.iter().any(|m| m.descendant != 0) {
            return Err(Error::Unsupported(
                "tokens with descendant insertions at non-unit markings are not reducible".into(),
            ));
        }
        let top_zero = self.zero_rule(token);
        let mut result = Reduced::zero();
        for (t, c) in self.canonicalize(token) {
            let r = self.reduce_one(&t)?;
            result.add_scaled(&r, &c);
        }
        let status = match (&top_zero, result.basics.is_empty()) {
            (Some(r), _) => Status::Zero { rule: r.clone() },
            (None, true) => Status::Value {
                value: result.constant.clone(),
            },
            (None, false) => Status::Symbolic {
                combination: result.clone(),
            },
        };
        Ok(ReductionResult {
            result,
            status,
            trace: std::mem::take(&mut self.trace),
        })
    }

    fn zero_rule(&self, token: &Token) -> Option<String> {
        let data = token.discrete_data();
        let degrees = token.insertion_degrees();
        let verdict = constraints::vanishing_check(&data, &self.target, &degrees);
        if verdict.vanish != Vanishing::Unknown {
            return verdict.reasons.first().cloned();
        }
        if !constraints::dimension_matches(&data, &self.target, &degrees, token.k) {
            return Some(rule::DIMENSION.to_string());
        }
        None
    }

    fn reduce_comb(&mut self, comb: &LinComb) -> Result<Reduced> {
        let mut out = Reduced::zero();
        for (t, c) in comb {
            let r = self.reduce_one(t)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn stuck(&self, token: &Token, why: &str) -> Error {
        Error::ReductionNotGuaranteed {
            reason: format!("{token}: {why}"),
            trace: self.trace.clone(),
        }
    }

    fn reduce_one(&mut self, token: &Token) -> Result<Reduced> {
        if let Some(r) = self.ledger.get(token) {
            return Ok(r.clone());
        }
        let r = self.reduce_fresh(token)?;
        self.ledger.insert(token.clone(), r.clone());
        Ok(r)
    }

    fn reduce_fresh(&mut self, token: &Token) -> Result<Reduced> {
        if let Some(rule) = self.zero_rule(token) {
            self.trace.push(format!("{token} = 0 by {rule}"));
            return Ok(Reduced::zero());
        }
        if token.g == 1 && token.beta.iter().all(|b| *b == 0) {
            return self.reduce_genus_one(token);
        }
        if token.g >= 2 {
            if let Some(u) = self.pick_unit(token) {
                let comb = if token.markings[u].insertion.is_one() {
                    self.trace.push(format!("{token}: string at marking {u}"));
                    self.reduce_string(token, u)?
                } else {
                    self.trace.push(format!("{token}: divisor at marking {u}"));
                    self.reduce_divisor(token, u)?
                };
                debug_assert!(comb.keys().all(|t| t.measure() < token.measure()));
                return self.reduce_comb(&comb);
            }
            let basic = token.k == 0
                && token
                    .markings
                    .iter()
                    .all(|m| m.contact == -2 && m.order == 1 && m.insertion.is_one());
            if basic && constraints::general_bound(&token.discrete_data(), &self.target) == 0 {
                let key = BasicKey {
                    g: token.g,
                    beta: token.beta.clone(),
                    t: token.t,
                    n: token.n(),
                };
                self.trace.push(format!("{token} = {key}"));
                return Ok(Reduced::basic(key));
            }
            return Err(self.stuck(token, "neither basic, zero nor reducible outside the regime of the reduction"));
        }
        Err(self.stuck(token, "no reduction rule applies in this genus and degree"))
    }

    /// `β = 0`, `g = 1`: every evaluation map agrees, so insertions merge onto
    /// one marking and the string equation removes the others.
    fn reduce_genus_one(&mut self, token: &Token) -> Result<Reduced> {
        if token.n() == 0 {
            return Err(Error::Infeasible("genus-one invariants need at least one marking".into()));
        }
        let merged = token
            .markings
            .iter()
            .fold(Insertion::one(&self.target), |acc, m| acc.times(&m.insertion));
        let already = token.markings.iter().skip(1).all(|m| m.insertion.is_one())
            && token.markings[0].insertion == merged;
        if !already {
            let mut ms = token.markings.clone();
            for m in ms.iter_mut() {
                m.insertion = Insertion::one(&self.target);
            }
            ms[0].insertion = merged;
            // sorting would move the merged insertion; keep it in front
            let tok = Token {
                g: token.g,
                beta: token.beta.clone(),
                t: token.t,
                markings: ms,
                k: token.k,
            };
            self.trace.push(format!("{token}: merge insertions (β = 0)"));
            let comb = self.canonicalize_unsorted(&tok);
            return self.reduce_comb_genus_one(&comb);
        }
        if token.n() == 1 {
            let ins = token.markings[0].insertion.clone();
            let value = self.evaluate_genus_one(token.k, &ins)?;
            self.trace
                .push(format!("{token} = {} from the genus-one model", fmt_q(&value)));
            return Ok(Reduced::value(value));
        }
        let units: Vec<usize> = (1..token.n()).collect();
        let u = match self.choice {
            UnitChoice::First => units[0],
            UnitChoice::Last => units[units.len() - 1],
            UnitChoice::Rotate(_) => {
                self.step = self.step.wrapping_add(1);
                units[(self.step % units.len() as u64) as usize]
            }
        };
        self.trace.push(format!("{token}: string at marking {u}"));
        let comb = self.string_unsorted(token, u);
        self.reduce_comb_genus_one(&comb)
    }

    fn canonicalize_unsorted(&self, token: &Token) -> Vec<(Token, Q)> {
        let options = self.canonical_insertion(&token.markings[0].insertion);
        options
            .into_iter()
            .map(|(c, ins)| {
                let mut t = token.clone();
                t.markings[0].insertion = ins;
                (t, c)
            })
            .collect()
    }

    fn string_unsorted(&self, token: &Token, unit: usize) -> Vec<(Token, Q)> {
        let rest = token.without(unit);
        let mut out = Vec::new();
        for j in 0..rest.len() {
            let weight = Q::new(rest[j].contact.abs().into(), rest[j].order.into());
            for kp in 0..token.k {
                let mut ms = rest.clone();
                ms[j].insertion = ms[j].insertion.times(&Insertion::l_power(&self.target, kp));
                let sign = if kp % 2 == 0 { q(1) } else { q(-1) };
                let t = Token {
                    g: token.g,
                    beta: token.beta.clone(),
                    t: token.t,
                    markings: ms,
                    k: token.k - 1 - kp,
                };
                out.push((t, &weight * sign));
            }
        }
        out
    }

    fn reduce_comb_genus_one(&mut self, comb: &[(Token, Q)]) -> Result<Reduced> {
        let mut out = Reduced::zero();
        for (t, c) in comb {
            let r = self.reduce_one(t)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn evaluate_genus_one(&mut self, k: u32, ins: &Insertion) -> Result<Q> {
        let names = self.target.ambient.hyperplane_names();
        let model = self.model()?;
        let mut x = GradedElement::one(&model.ring);
        for (i, p) in ins.0.iter().enumerate() {
            let name = if i < names.len() { names[i].as_str() } else { ZETA_NAME };
            x = &x * &model.ring.generator(name)?.pow(*p);
        }
        genus1_invariant(model, k, &[x])
    }
}

/// Direction of a root change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootDirection {
    /// From `∞^{1/ℓ}` down to `∞`: multiply by `ℓ^{1+k}`.
    ToBase,
    /// From `∞` up to `∞^{1/ℓ}`: divide by `ℓ^{1+k}`.
    ToRoot,
}

/// `ℓ^{1+k}`.
pub fn root_factor(k: u32, ell: u64) -> Q {
    Q::from_integer(num_bigint::BigInt::from(ell).pow(k + 1))
}

pub fn rescale_roots(value: &Reduced, k: u32, ell: u64, direction: RootDirection) -> Result<Reduced> {
    if ell == 0 {
        return Err(Error::invalid("ℓ must be positive"));
    }
    let f = root_factor(k, ell);
    Ok(match direction {
        RootDirection::ToBase => value.scale(&f),
        RootDirection::ToRoot => value.scale(&(Q::one() / f)),
    })
}

/// One connected part `val/(−t − ψ)` of a disconnected invariant.
#[derive(Debug, Clone)]
pub struct ConnectedPart {
    pub value: GradedElement,
    pub psi: GradedElement,
}

/// `∏_i r̃t · val_i/(−t − ψ_i)`, or `∏_i val_i/(−t − ψ_i)` for the
/// canonical variant, to order `K`.
pub fn assemble_disconnected(parts: &[ConnectedPart], rtilde: &Q, order: usize, canonical: bool) -> Result<LaurentSeries> {
    let first = parts
        .first()
        .ok_or_else(|| Error::invalid("at least one connected part is required"))?;
    let ring = first.value.ring().clone();
    let mut acc = LaurentSeries::one(&ring, order);
    for p in parts {
        if !p.value.ring().same(&ring) || !p.psi.ring().same(&ring) {
            return Err(Error::RingMismatch);
        }
        let factor = if canonical {
            expand_pole(PoleSign::Minus, &p.psi, order).scale(&p.value)
        } else {
            expand_pole(PoleSign::Minus, &p.psi, order + 1)
                .mul_t()?
                .scale(&p.value.scale(rtilde))
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Checks `π_*(1/(−t − ψ_min)) = ∏_i 1/(−t − ψ_{min,i})` on `P(⊕ O(e_i))`
/// over `(P¹)^m`, with `ψ_min = ζ` and `ψ_{min,i} = −e_i`.
pub fn pushforward_min_check(m: usize, order: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let names: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    let base = make_ring(RingSpec::truncated_polynomial(
        &names.iter().map(|n| (n.as_str(), 2)).collect::<Vec<_>>(),
    ))?;
    pushforward_min_check_over(&base, &names, order)
}

/// The same identity over an arbitrary base with line classes `e_i`.
pub fn pushforward_min_check_over(base: &Ring, classes: &[String], order: usize) -> Result<bool> {
    let es: Vec<GradedElement> = classes.iter().map(|n| base.generator(n)).collect::<Result<_>>()?;
    let bundle = BundleDesc::new(es.clone())?;
    let ring = make_ring(RingSpec::projective_bundle(base, "zeta", &bundle)?)?;
    let zeta = ring.generator("zeta")?;
    let lhs = expand_pole(PoleSign::Minus, &zeta, order).map_coefficients(base, segre_pushforward)?;
    let mut rhs = LaurentSeries::one(base, order);
    for e in &es {
        rhs = rhs.mul(&expand_pole(PoleSign::Minus, &-e, order))?;
    }
    Ok(lhs == rhs)
}
