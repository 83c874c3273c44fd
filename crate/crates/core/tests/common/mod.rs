//! Independent oracles used by the integration tests. None of them call the
//! library's ring, census or constraint code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense element of `ℚ[λ, h]/(λ², h^{N+1})`, indexed `[λ-power][h-power]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub c: [Vec<Q>; 2],
}

impl Dense {
    pub fn zero(n: usize) -> Self {
        Dense {
            n,
            c: [vec![Q::zero(); n + 1], vec![Q::zero(); n + 1]],
        }
    }

    pub fn term(n: usize, l: usize, h: usize, v: Q) -> Self {
        let mut x = Self::zero(n);
        if h <= n {
            x.c[l][h] = v;
        }
        x
    }

    pub fn one(n: usize) -> Self {
        Self::term(n, 0, 0, Q::one())
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut x = self.clone();
        for l in 0..2 {
            for h in 0..=self.n {
                x.c[l][h] += &o.c[l][h];
            }
        }
        x
    }

    pub fn scale(&self, s: &Q) -> Dense {
        let mut x = self.clone();
        for row in x.c.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        x
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let mut x = Self::zero(self.n);
        for l1 in 0..2 {
            for l2 in 0..(2 - l1) {
                for h1 in 0..=self.n {
                    for h2 in 0..=(self.n - h1) {
                        let v = &self.c[l1][h1] * &o.c[l2][h2];
                        x.c[l1 + l2][h1 + h2] += v;
                    }
                }
            }
        }
        x
    }

    pub fn pow(&self, k: u32) -> Dense {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// `1/(1 + x)` for nilpotent `x` (truncated geometric series).
    pub fn inv_one_plus(x: &Dense) -> Dense {
        let mut acc = Self::one(x.n);
        let mut p = Self::one(x.n);
        for _ in 0..(x.n + 2) {
            p = p.mul(x).scale(&q(-1));
            acc = acc.add(&p);
        }
        acc
    }

    /// Part of total degree `deg`.
    pub fn degree_part(&self, deg: usize) -> Dense {
        let mut x = Self::zero(self.n);
        for l in 0..2 {
            if deg >= l && deg - l <= self.n {
                x.c[l][deg - l] = self.c[l][deg - l].clone();
            }
        }
        x
    }

    /// Coefficient of `λ h^N` times the λ-weight.
    pub fn integrate(&self, weight: &Q) -> Q {
        &self.c[1][self.n] * weight
    }
}

/// Genus-one reduced and canonical cycles for a degree-`d` hypersurface in
/// `P^N`, written out for `ℚ[λ,h]/(λ², h^{N+1})` with `ζ = d·h`:
/// `red = [(1 + h − λ)^{N+1} / (1 + dh − λ)]_N`,
/// `vir = −λ · [(1 + h − λ)^{N+1} / (1 − λ)]_N`.
pub struct HypersurfaceGenusOne {
    pub n: usize,
    pub d: i64,
    pub red: Dense,
    pub vir: Dense,
    pub psi_min: Dense,
}

pub fn hypersurface_genus_one(n: usize, d: i64) -> HypersurfaceGenusOne {
    let lam = Dense::term(n, 1, 0, Q::one());
    let h = Dense::term(n, 0, 1, Q::one());
    let one = Dense::one(n);
    let base = one.add(&h).add(&lam.scale(&q(-1)));
    let num = base.pow(n as u32 + 1);
    let den = Dense::inv_one_plus(&h.scale(&q(d)).add(&lam.scale(&q(-1))));
    let red = num.mul(&den).degree_part(n);
    let den2 = Dense::inv_one_plus(&lam.scale(&q(-1)));
    let vir = lam.scale(&q(-1)).mul(&num.mul(&den2).degree_part(n));
    let psi_min = lam.add(&h.scale(&q(-d)));
    HypersurfaceGenusOne { n, d, red, vir, psi_min }
}

impl HypersurfaceGenusOne {
    pub fn invariant(&self, k: u32, h_power: u32, weight: &Q) -> Q {
        let h = Dense::term(self.n, 0, h_power as usize, Q::one());
        self.psi_min.pow(k).mul(&self.red).mul(&h).integrate(weight)
    }
}

/// `⌊(2g − 2)/w⌋ + 1` classes `β ≥ 0` of minimal weight `w` fit into
/// `w·β ≤ 2g − 2`.
pub fn census_count(g: i64, w: i64) -> usize {
    ((2 * g - 2) / w + 1) as usize
}

/// `(3 − dim X + rk)(g − 1) − ∫_β (K_X + det E) + n + rk Σ(c_i + 1)`.
pub fn vdim_on_x(dim_x: i64, rk: i64, g: i64, kdet_beta: i64, contacts: &[i64]) -> i64 {
    let excess: i64 = contacts.iter().map(|c| c + 1).sum();
    (3 - dim_x + rk) * (g - 1) - kdet_beta + contacts.len() as i64 + rk * excess
}

/// Through `∞_X = P(E∨)`: `dim ∞ = dim X + rk − 1`,
/// `K_∞ = π*(K_X + det E) − rk·ζ`, `∫_β ζ = 2g − 2 + Σ(c_i + 1)`.
pub fn vdim_on_infinity(dim_x: i64, rk: i64, g: i64, kdet_beta: i64, contacts: &[i64]) -> i64 {
    let dim_inf = dim_x + rk - 1;
    let fiber = 2 * g - 2 + contacts.iter().map(|c| c + 1).sum::<i64>();
    let k_inf = kdet_beta - rk * fiber;
    (2 - dim_inf) * (g - 1) - k_inf + contacts.len() as i64
}

/// The published list `(d = 3, N ≥ 9), (d = 4, N ≥ 6), (d ≥ 5, N ≥ d)`.
pub fn hypersurface_list(d: i64, n: i64) -> bool {
    match d {
        3 => n >= 9,
        4 => n >= 6,
        _ => d >= 5 && n >= d,
    }
}

/// The published Fano complete-intersection exceptions with `R ≥ 2`.
pub fn ci_exceptions() -> Vec<Vec<i64>> {
    vec![
        vec![2, 2],
        vec![2, 3],
        vec![2, 4],
        vec![2, 2, 2],
        vec![2, 2, 3],
        vec![2, 2, 2, 2],
    ]
}
