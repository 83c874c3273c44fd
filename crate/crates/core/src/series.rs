//! Truncated Laurent series in `u = 1/t` with coefficients in a graded algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::ring::{GradedElement, Ring};

pub const DEFAULT_ORDER: usize = 24;
pub const TRUNCATION_ENV: &str = "EFFINT_TRUNCATION";

/// The truncation order from `EFFINT_TRUNCATION`, else [`DEFAULT_ORDER`].
pub fn default_order() -> usize {
    std::env::var(TRUNCATION_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleSign {
    /// `1/(t − a)`
    Plus,
    /// `1/(−t − a)`
    Minus,
}

/// `Σ_{p ≥ 1} P_p t^p + Σ_{k=0}^{K} T_k t^{−k}`, exact up to `t^{−K}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    ring: Ring,
    poly: BTreeMap<u32, GradedElement>,
    tail: Vec<GradedElement>,
}

impl LaurentSeries {
    pub fn zero(ring: &Ring, order: usize) -> Self {
        LaurentSeries {
            ring: ring.clone(),
            poly: BTreeMap::new(),
            tail: vec![GradedElement::zero(ring); order + 1],
        }
    }

    pub fn constant(c: &GradedElement, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one(ring: &Ring, order: usize) -> Self {
        Self::constant(&GradedElement::one(ring), order)
    }

    /// `c · t^power`.
    pub fn monomial(c: &GradedElement, power: i64, order: usize) -> Self {
        let mut s = Self::zero(c.ring(), order);
        s.set(power, c.clone());
        s
    }

    /// Builds a series from tail coefficients `t^0, t^{−1}, ..`.
    pub fn from_tail(ring: &Ring, tail: Vec<GradedElement>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::TruncationExhausted);
        }
        if tail.iter().any(|c| !c.ring().same(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(LaurentSeries {
            ring: ring.clone(),
            poly: BTreeMap::new(),
            tail,
        })
    }

    fn set(&mut self, power: i64, c: GradedElement) {
        if power >= 1 {
            if c.is_zero() {
                self.poly.remove(&(power as u32));
            } else {
                self.poly.insert(power as u32, c);
            }
        } else if let Some(slot) = self.tail.get_mut((-power) as usize) {
            *slot = c;
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.tail.len() - 1
    }

    /// Coefficient of `t^power`, or `None` past the truncation order.
    pub fn coefficient(&self, power: i64) -> Option<GradedElement> {
        if power >= 1 {
            Some(
                self.poly
                    .get(&(power as u32))
                    .cloned()
                    .unwrap_or_else(|| GradedElement::zero(&self.ring)),
            )
        } else {
            self.tail.get((-power) as usize).cloned()
        }
    }

    pub fn tail(&self) -> &[GradedElement] {
        &self.tail
    }

    pub fn poly_part(&self) -> &BTreeMap<u32, GradedElement> {
        &self.poly
    }

    fn max_poly(&self) -> usize {
        self.poly.keys().next_back().map_or(0, |p| *p as usize)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.tail.truncate(order + 1);
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order().min(other.order());
        let mut out = Self::zero(&self.ring, order);
        for (p, c) in self.poly.iter().chain(other.poly.iter()) {
            let acc = out.coefficient(*p as i64).unwrap();
            out.set(*p as i64, &acc + c);
        }
        for k in 0..=order {
            out.tail[k] = &self.tail[k] + &other.tail[k];
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&GradedElement::constant(&self.ring, crate::rational::q(-1)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &GradedElement) -> Self {
        LaurentSeries {
            ring: self.ring.clone(),
            poly: self
                .poly
                .iter()
                .map(|(p, x)| (*p, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            tail: self.tail.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&GradedElement::constant(&self.ring, c.clone()))
    }

    /// Cauchy product. Tail coefficients are kept only where both factors
    /// are fully known: order `min(Kx − Py, Ky − Px)` for top polynomial
    /// powers `Px`, `Py`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let kx = self.order() as i64 - other.max_poly() as i64;
        let ky = other.order() as i64 - self.max_poly() as i64;
        let order = kx.min(ky);
        if order < 0 {
            return Err(Error::TruncationExhausted);
        }
        let mut out = Self::zero(&self.ring, order as usize);
        let terms = |s: &Self| -> Vec<(i64, GradedElement)> {
            s.poly
                .iter()
                .map(|(p, c)| (*p as i64, c.clone()))
                .chain(
                    s.tail
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (-(k as i64), c.clone())),
                )
                .collect()
        };
        let xs = terms(self);
        let ys = terms(other);
        for (px, cx) in &xs {
            for (py, cy) in &ys {
                let p = px + py;
                if p < -order {
                    continue;
                }
                let acc = out.coefficient(p).unwrap();
                out.set(p, &acc + &(cx * cy));
            }
        }
        Ok(out)
    }

    /// Multiplies by `t`; the tail loses one order.
    pub fn mul_t(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::TruncationExhausted);
        }
        let mut out = Self::zero(&self.ring, self.order() - 1);
        for (p, c) in &self.poly {
            out.set(*p as i64 + 1, c.clone());
        }
        out.set(1, self.tail[0].clone());
        for k in 1..=self.order() {
            out.set(-(k as i64) + 1, self.tail[k].clone());
        }
        Ok(out)
    }

    /// Applies a coefficientwise linear map into another ring.
    pub fn map_coefficients<F>(&self, target: &Ring, f: F) -> Result<Self>
    where
        F: Fn(&GradedElement) -> Result<GradedElement>,
    {
        let mut out = Self::zero(target, self.order());
        for (p, c) in &self.poly {
            let v = f(c)?;
            if !v.ring().same(target) {
                return Err(Error::RingMismatch);
            }
            out.set(*p as i64, v);
        }
        for (k, c) in self.tail.iter().enumerate() {
            let v = f(c)?;
            if !v.ring().same(target) {
                return Err(Error::RingMismatch);
            }
            out.tail[k] = v;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.tail.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (p, c) in self.poly.iter().rev() {
            parts.push(format!("({c})*t^{p}"));
        }
        for (k, c) in self.tail.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(if k == 0 {
                format!("({c})")
            } else {
                format!("({c})*t^-{k}")
            });
        }
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O(t^-{})", self.order() + 1)
    }
}

/// `1/(t − a) = Σ a^k t^{−k−1}` or `1/(−t − a) = −Σ (−a)^k t^{−k−1}`.
pub fn expand_pole(sign: PoleSign, a: &GradedElement, order: usize) -> LaurentSeries {
    let ring = a.ring();
    let base = match sign {
        PoleSign::Plus => a.clone(),
        PoleSign::Minus => -a,
    };
    let lead = match sign {
        PoleSign::Plus => GradedElement::one(ring),
        PoleSign::Minus => -GradedElement::one(ring),
    };
    let mut out = LaurentSeries::zero(ring, order);
    let mut power = lead;
    for k in 1..=order {
        if power.is_zero() {
            break;
        }
        out.tail[k] = power.clone();
        power = &power * &base;
    }
    out
}

/// Checks `1/((t−a)(t−b)) = Σ_{k≥1} t^{−k−1} Σ_{k'<k} a^{k'} b^{k−1−k'}`.
pub fn verify_double_pole(a: &GradedElement, b: &GradedElement, order: usize) -> bool {
    if !a.ring().same(b.ring()) {
        return false;
    }
    let product = match expand_pole(PoleSign::Plus, a, order).mul(&expand_pole(PoleSign::Plus, b, order)) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let ring = a.ring();
    (0..=order).all(|n| {
        // t^{−n} = t^{−k−1} with k = n − 1
        let expected = if n < 2 {
            GradedElement::zero(ring)
        } else {
            let k = n - 1;
            (0..k).fold(GradedElement::zero(ring), |acc, kp| {
                &acc + &(&a.pow(kp as u32) * &b.pow((k - 1 - kp) as u32))
            })
        };
        product.coefficient(-(n as i64)).as_ref() == Some(&expected)
    })
}
