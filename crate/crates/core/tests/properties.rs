mod common;

use std::collections::BTreeSet;

use common::{q, qf, Q};
use effint_core::constraints::{self, Vanishing};
use effint_core::recursion::{rescale_roots, Reduced, RootDirection, UnitChoice};
use effint_core::target::{age_in_range, presets};
use effint_core::{
    chern_twisted, count_basic, enumerate_basic, expand_pole, genus1_invariant, lift_contacts,
    make_ring, normalize_target, push_contacts, segre_class, segre_pushforward,
    verify_double_pole, BundleDesc, DiscreteData, GradedElement, Insertion, LaurentSeries,
    PoleSign, Reducer, Ring, RingSpec, Sector, TargetSpec, Token,
};
use proptest::prelude::*;

fn base_ring() -> Ring {
    make_ring(RingSpec::truncated_polynomial(&[("x", 3), ("y", 4)])).unwrap()
}

fn bundle_ring() -> (Ring, Ring, BundleDesc) {
    let base = base_ring();
    let x = base.generator("x").unwrap();
    let y = base.generator("y").unwrap();
    let f = BundleDesc::new(vec![x.clone(), &y - &x, &x + &y.scale(&q(2))]).unwrap();
    let ring = make_ring(RingSpec::projective_bundle(&base, "z", &f).unwrap()).unwrap();
    (ring, base, f)
}

type Terms = Vec<(u32, u32, u32, i64, i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((0u32..3, 0u32..4, 0u32..4, -6i64..7, 1i64..4), 0..6)
}

fn element(ring: &Ring, ts: &Terms) -> GradedElement {
    let with_z = ring.num_generators() == 3;
    ts.iter().fold(GradedElement::zero(ring), |acc, (a, b, c, n, d)| {
        let e: Vec<u32> = if with_z { vec![*a, *b, *c] } else { vec![*a, *b] };
        &acc + &ring.monomial(&e, qf(*n, *d))
    })
}

fn series(ring: &Ring, order: usize, coeffs: &[Terms]) -> LaurentSeries {
    coeffs.iter().enumerate().fold(LaurentSeries::zero(ring, order), |acc, (i, ts)| {
        let m = LaurentSeries::monomial(&element(ring, ts), -(i as i64), order);
        acc.add(&m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        let (r, _, _) = bundle_ring();
        let (a, b, c) = (element(&r, &a), element(&r, &b), element(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn units_invert(a in terms()) {
        let (r, _, _) = bundle_ring();
        let nil: GradedElement = element(&r, &a);
        let nil = &nil - &GradedElement::constant(&r, nil.constant_term());
        let u = &nil + &GradedElement::one(&r);
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(&inv * &u, GradedElement::one(&r));
    }

    #[test]
    fn chern_twisted_is_multiplicative(a in terms(), b in terms(), c in terms(), t in terms()) {
        let r = base_ring();
        let pos = |ts: &Terms| element(&r, ts).homogeneous_part(1);
        let v = BundleDesc::new(vec![pos(&a), pos(&b)]).unwrap();
        let w = BundleDesc::new(vec![pos(&c)]).unwrap();
        let tw = pos(&t);
        let sum = v.direct_sum(&w).unwrap();
        prop_assert_eq!(
            chern_twisted(&sum, &tw).unwrap(),
            &chern_twisted(&v, &tw).unwrap() * &chern_twisted(&w, &tw).unwrap()
        );
        let zero = GradedElement::zero(&r);
        let plain = v.summands().iter().fold(GradedElement::one(&r), |acc, s| &acc * &(&GradedElement::one(&r) + s));
        prop_assert_eq!(chern_twisted(&v, &zero).unwrap(), plain);
    }

    #[test]
    fn projection_formula(a in terms(), b in terms()) {
        let (r, base, _) = bundle_ring();
        let x = element(&r, &a);
        let bb = element(&base, &b);
        let pulled = bb.pullback(&r).unwrap();
        prop_assert_eq!(
            segre_pushforward(&(&x * &pulled)).unwrap(),
            &bb * &segre_pushforward(&x).unwrap()
        );
    }

    #[test]
    fn series_multiplication(xs in prop::collection::vec(terms(), 1..5),
                             ys in prop::collection::vec(terms(), 1..5),
                             zs in prop::collection::vec(terms(), 1..5)) {
        let r = base_ring();
        let (x, y, z) = (series(&r, 8, &xs), series(&r, 8, &ys), series(&r, 8, &zs));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        let k = left.order().min(right.order());
        prop_assert_eq!(left.truncate(k), right.truncate(k));
    }

    #[test]
    fn pole_sign_relation(a in terms(), order in 1usize..16) {
        let r = base_ring();
        let a = element(&r, &a);
        prop_assert_eq!(
            expand_pole(PoleSign::Minus, &a, order),
            expand_pole(PoleSign::Plus, &-&a, order).neg()
        );
    }

    #[test]
    fn double_pole_identity(a in terms(), b in terms()) {
        let (r, _, _) = bundle_ring();
        prop_assert!(verify_double_pole(&element(&r, &a), &element(&r, &b), 12));
    }

    #[test]
    fn push_after_lift_is_identity(cs in prop::collection::vec((-40i64..40, 1u64..6), 1..6), ell in 1u64..12) {
        let ms: Vec<Sector> = cs.iter().filter(|(c, _)| *c != 0).map(|(c, r)| Sector::new(*c, *r).unwrap()).collect();
        let lifted = lift_contacts(&ms, ell).unwrap();
        for s in ms.iter().chain(&lifted) {
            prop_assert!(age_in_range(&s.age));
            prop_assert_eq!(s.age.clone(), effint_core::rational::frac(&Q::new(s.contact.into(), s.order.into())));
        }
        let orders: Vec<u64> = ms.iter().map(|m| m.order).collect();
        prop_assert_eq!(push_contacts(&lifted, &orders, ell).unwrap(), ms);
    }

    #[test]
    fn bezout_pair(r in 1u64..40, d in 1u64..40, ell in 1u64..40) {
        if let Ok(n) = normalize_target(r, d, ell) {
            prop_assert_eq!(n.a as i128 * ell as i128 + n.b as i128 * d as i128, (r * ell / n.r_hat) as i128);
            prop_assert_eq!(n.r_hat % r, 0);
            // d'/r' is d/(rℓ) in lowest terms
            prop_assert_eq!(Q::new(n.d_prime.into(), n.r_prime.into()), Q::new(d.into(), (r * ell).into()));
            prop_assert_eq!(Q::new(n.d_hat.into(), n.r_hat.into()), Q::new(d.into(), (r * ell).into()));
        }
    }

    #[test]
    fn vdim_formulas_agree(dims in prop::collection::vec(1u32..6, 1..3),
                           rk in 1usize..4,
                           seed in prop::collection::vec(0i64..5, 12),
                           g in 0u32..8,
                           contacts in prop::collection::vec(-6i64..0, 0..5)) {
        let k = dims.len();
        let degrees: Vec<Vec<i64>> = (0..rk).map(|j| (0..k).map(|i| seed[(j * k + i) % seed.len()]).collect()).collect();
        let t = TargetSpec::complete_intersection(&dims, degrees).unwrap();
        let beta: Vec<i64> = (0..k).map(|i| seed[(i + 5) % seed.len()]).collect();
        let tt = t.rank_one_t(&beta).unwrap_or(seed[11]);
        let d = DiscreteData::new(&t, g, beta.clone(), Some(tt), &contacts).unwrap();
        prop_assert_eq!(constraints::reduced_vdim(&d, &t), constraints::reduced_vdim_original(&d, &t));
        let dim_x: i64 = dims.iter().map(|x| *x as i64).sum();
        prop_assert_eq!(
            constraints::reduced_vdim(&d, &t),
            common::vdim_on_x(dim_x, rk as i64, g as i64, t.kdet_degree(&beta), &contacts)
        );
        if constraints::balancing(&d, &t).satisfied {
            prop_assert_eq!(constraints::reduced_vdim(&d, &t), constraints::reduced_vdim_from_t(&d, &t));
        }
    }

    #[test]
    fn vanishing_is_monotone(g in 0u32..6, beta in 0i64..3, contacts in prop::collection::vec(-4i64..0, 0..5),
                             degs in prop::collection::vec(0u32..8, 5), bump in prop::collection::vec(0u32..4, 5),
                             pick in 0usize..4) {
        let t = [presets::hypersurface(9, 3), presets::quintic(), presets::x24(), presets::gr27()][pick].clone();
        let tt = t.rank_one_t(&[beta]).unwrap_or(2 * g as i64 - 2 + contacts.iter().map(|c| c + 1).sum::<i64>());
        let d = DiscreteData::new(&t, g, vec![beta], Some(tt), &contacts).unwrap();
        let n = contacts.len();
        let weak = constraints::vanishing_check(&d, &t, &degs[..n]);
        let strong_degs: Vec<u32> = degs[..n].iter().zip(&bump).map(|(a, b)| a + b).collect();
        let strong = constraints::vanishing_check(&d, &t, &strong_degs);
        if weak.vanish.vanishes() {
            prop_assert!(strong.vanish.vanishes());
            prop_assert!(strong.vanish <= weak.vanish);
        }
    }

    #[test]
    fn census_monotone_and_consistent(g in 2u32..25, pick in 0usize..6) {
        let t = [presets::quintic(), presets::x33(), presets::x24(), presets::x223(), presets::x2222(), presets::gr27()][pick].clone();
        prop_assert!(count_basic(&t, g).unwrap() <= count_basic(&t, g + 1).unwrap());
        for b in enumerate_basic(&t, g).unwrap() {
            let d = b.discrete_data(&t).unwrap();
            prop_assert!(constraints::balancing(&d, &t).satisfied);
            prop_assert_eq!(constraints::reduced_vdim(&d, &t), 0);
        }
    }

    #[test]
    fn rank_one_census_is_degree_box(g in 2u32..60) {
        let d = 5;
        let t = presets::quintic();
        let got: BTreeSet<i64> = enumerate_basic(&t, g).unwrap().iter().map(|b| b.beta[0]).collect();
        let expect: BTreeSet<i64> = (0..).take_while(|b| d * b <= 2 * g as i64 - 2).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn genus_one_renormalization_is_linear(num in -20i64..20, den in 1i64..20, k in 0u32..3, a in 0u32..5) {
        let t = presets::quintic();
        let m = effint_core::build_genus1(&t).unwrap();
        let w = qf(num, den);
        let m2 = m.renormalized(w.clone()).unwrap();
        let h = |m: &effint_core::GenusOneModel| m.ring.generator("h").unwrap().pow(a);
        let base = genus1_invariant(&m, k, &[h(&m)]).unwrap();
        prop_assert_eq!(genus1_invariant(&m2, k, &[h(&m2)]).unwrap(), base * w * q(24));
    }

    #[test]
    fn root_rescaling_round_trip(num in -50i64..50, k in 0u32..6, ell in 1u64..9) {
        let v = Reduced { constant: qf(num, 7), ..Reduced::zero() };
        let up = rescale_roots(&v, k, ell, RootDirection::ToRoot).unwrap();
        prop_assert_eq!(rescale_roots(&up, k, ell, RootDirection::ToBase).unwrap(), v);
    }
}

#[test]
fn grothendieck_relation_and_segre_series() {
    let (r, base, f) = bundle_ring();
    let z = r.generator("z").unwrap();
    let c = r.bundle_chern_class().unwrap();
    let rk = f.rank() as u32;
    let rel = (0..=rk).fold(GradedElement::zero(&r), |acc, j| {
        &acc + &(&c.homogeneous_part(j).pullback(&r).unwrap() * &z.pow(rk - j))
    });
    assert!(rel.is_zero());
    let inv = c.invert_unit().unwrap();
    for a in 0..6 {
        let pushed = segre_pushforward(&z.pow(rk - 1 + a)).unwrap();
        assert_eq!(pushed, inv.homogeneous_part(a), "a = {a}");
        assert_eq!(segre_class(&r, a).unwrap(), inv.homogeneous_part(a));
    }
    assert!(base.same(r.base().unwrap()));
}

/// Random balanced quintic tokens with `g ≥ 2`.
pub fn random_quintic_token(rng: &mut impl rand::Rng) -> Token {
    let t = presets::quintic();
    loop {
        let g: u32 = rng.gen_range(2..6);
        let beta: i64 = rng.gen_range(0..2);
        let budget = 2 * g as i64 - 2 - 5 * beta;
        if budget < 0 {
            continue;
        }
        let mut marks: Vec<(i64, Insertion)> = Vec::new();
        let mut left = budget;
        while left > 0 {
            let e = rng.gen_range(1..=left.min(3));
            marks.push((-(e + 1), Insertion::parse(&t, if rng.gen_bool(0.8) { "1" } else { "h" }).unwrap()));
            left -= e;
        }
        for _ in 0..rng.gen_range(0..4) {
            let ins = ["1", "1", "h", "h^2"][rng.gen_range(0..4)];
            marks.push((-1, Insertion::parse(&t, ins).unwrap()));
        }
        let n = marks.len() as i64;
        let codim: i64 = marks.iter().map(|(_, i)| i.codim() as i64).sum();
        let fit = n - budget - codim;
        let k = if fit >= 0 && rng.gen_bool(0.85) { fit as u32 } else { rng.gen_range(0..4) };
        return Token::new(&t, g, vec![beta], None, marks, k).unwrap();
    }
}

#[test]
fn reduction_is_confluent_and_decreasing() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let t = presets::quintic();
    let mut nonzero = 0;
    for i in 0..300u64 {
        let tok = random_quintic_token(&mut rng);
        let outs: Vec<_> = [UnitChoice::First, UnitChoice::Last, UnitChoice::Rotate(i)]
            .into_iter()
            .map(|c| Reducer::new(t.clone()).unwrap().with_unit_choice(c).reduce(&tok).map(|r| r.result))
            .collect();
        let first = outs[0].as_ref().unwrap();
        for o in &outs[1..] {
            assert_eq!(o.as_ref().unwrap(), first, "{tok}");
        }
        if !first.is_zero() {
            nonzero += 1;
        }
        let r = Reducer::new(t.clone()).unwrap();
        for u in 0..tok.n() {
            let out = if tok.markings[u].insertion.is_one() { r.reduce_string(&tok, u) } else { r.reduce_divisor(&tok, u) };
            if let Ok(out) = out {
                assert!(out.keys().all(|s| s.measure() < tok.measure()));
            }
        }
    }
    assert!(nonzero > 20, "only {nonzero} nonzero reductions");
}

#[test]
fn string_series_resummation() {
    // Σ_k t^{−k−1} string(k) equals the t^{−k−1} coefficients of
    // Σ_j |c_j| α_j / ((t − ψ_DF)(t − ψ_min)) with ψ_DF = −L.
    let t = presets::quintic();
    let r = Reducer::new(t.clone()).unwrap();
    let order = 8usize;
    let fr = make_ring(RingSpec::truncated_polynomial(&[("a", order as u32 + 1), ("b", order as u32 + 1)])).unwrap();
    let a = fr.generator("a").unwrap();
    let b = fr.generator("b").unwrap();
    let prod = expand_pole(PoleSign::Plus, &a, order).mul(&expand_pole(PoleSign::Plus, &b, order)).unwrap();
    let one = Insertion::one(&t);
    for k in 0..(order as u32 - 1) {
        let tok = Token::new(&t, 3, vec![0], None, vec![(-2, one.clone()), (-3, one.clone()), (-1, one.clone())], k).unwrap();
        let u = tok.markings.iter().position(|m| m.contact == -1).unwrap();
        let direct = r.reduce_string(&tok, u).unwrap();
        let coeff = prod.coefficient(-(k as i64) - 1).unwrap();
        let mut resummed = effint_core::recursion::LinComb::new();
        for (j, c) in [(0usize, 2i64), (1, 3)] {
            for (e, v) in coeff.terms() {
                // a^{k'} b^{m}: ψ_DF^{k'} = (−L)^{k'} at j, ψ_min^m
                let (kp, m) = (e[0], e[1]);
                let sign = if kp % 2 == 0 { q(1) } else { q(-1) };
                let mut ms = tok.markings.clone();
                ms.remove(u);
                let pos = ms.iter().position(|x| x.contact == -(c)).unwrap();
                let _ = j;
                ms[pos].insertion = Insertion::l_power(&t, kp);
                let s = Token::from_parts(3, vec![0], 0, ms, m);
                for (cs, cv) in r.canonicalize(&s) {
                    *resummed.entry(cs).or_insert_with(|| q(0)) += v * &sign * q(c) * cv;
                }
            }
        }
        resummed.retain(|_, v| *v != q(0));
        assert_eq!(resummed, direct, "k = {k}");
    }
}

#[test]
fn string_at_k_zero_is_empty() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let t = presets::quintic();
    let r = Reducer::new(t.clone()).unwrap();
    for _ in 0..200 {
        let mut tok = random_quintic_token(&mut rng);
        tok.k = 0;
        for u in 0..tok.n() {
            if tok.markings[u].contact == -1 && tok.markings[u].insertion.is_one() {
                assert!(r.reduce_string(&tok, u).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn dilaton_consistency() {
    let t = presets::quintic();
    let r = Reducer::new(t.clone()).unwrap();
    let one = Insertion::one(&t);
    let h = Insertion::parse(&t, "h").unwrap();
    for (g, marks, k) in [
        (2u32, vec![(-2, one.clone()), (-2, one.clone())], 0u32),
        (3, vec![(-3, one.clone()), (-2, h.clone()), (-1, h.clone())], 2),
        (4, vec![(-2, one.clone()); 6], 1),
    ] {
        let tok = Token::new(&t, g, vec![0], None, marks, k).unwrap();
        assert!(r.dilaton_check(&tok).unwrap(), "{tok}");
    }
    assert_eq!(r.dilaton_factor(2, 3), q(5));
    assert_eq!(r.dilaton_factor(3, 0), q(4));
}

#[test]
fn zero_verdicts_carry_rules() {
    let t = presets::quintic();
    let d = DiscreteData::new(&t, 2, vec![1], None, &[-1]).unwrap();
    let v = constraints::vanishing_check(&d, &t, &[0]);
    assert_eq!(v.vanish, Vanishing::Empty);
    assert_eq!(v.reasons, vec!["balancing".to_string()]);
}
