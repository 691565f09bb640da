use genocchi_core::numeric::residue;
use genocchi_core::special::staudt_primes;
use genocchi_core::{
    congruent_mod, coprime_part, exp_sum_series, factorize, gen_genocchi_numbers,
    genocchi_numbers, padic_valuation, BernoulliTable, BigInt, EgfSeries, Rat, TheoremId,
    Valuation, Verifier,
};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

fn rat() -> impl Strategy<Value = Rat> {
    (-2000i64..2000, 1i64..500).prop_map(|(n, d)| Rat::new(n, d))
}

fn idc_series(order: usize) -> impl Strategy<Value = EgfSeries> {
    (1i64..=5, prop::collection::vec(-9i64..=9, order)).prop_map(|(a0, rest)| {
        EgfSeries::from_integers(std::iter::once(a0).chain(rest))
    })
}

/// Ordinary coefficients `a_n / n!`.
fn to_ordinary(f: &EgfSeries) -> Vec<Rat> {
    let mut fact = BigInt::from(1);
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n > 0 {
                fact *= n;
            }
            a / Rat::from_integer(fact.clone())
        })
        .collect()
}

fn cauchy_product(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    (0..x.len())
        .map(|n| (0..=n).map(|k| &x[k] * &y[n - k]).sum())
        .collect()
}

proptest! {
    #[test]
    fn normalization_is_idempotent(n in -1000i64..1000, d in 1i64..1000, k in prop_oneof![-50i64..=-1, 1i64..=50]) {
        prop_assert_eq!(Rat::new(n * k, d * k), Rat::new(n, d));
        let r = Rat::new(n * k, d * k);
        prop_assert!(r.den() > &BigInt::from(0));
        prop_assert_eq!(r.num().gcd(r.den()), BigInt::from(1));
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(x in rat(), y in rat(), pi in 0usize..SMALL_PRIMES.len()) {
        let p = SMALL_PRIMES[pi];
        let vx = padic_valuation(&x, p).unwrap();
        let vy = padic_valuation(&y, p).unwrap();
        prop_assert_eq!(padic_valuation(&(&x * &y), p).unwrap(), vx + vy);
        prop_assert!(padic_valuation(&(&x + &y), p).unwrap() >= vx.min(vy));
    }

    #[test]
    fn congruences_add(x1 in rat(), x2 in rat(), k1 in -20i64..20, k2 in -20i64..20, m in 1u64..60) {
        // y_i = x_i − k_i m is congruent to x_i by construction
        let y1 = &x1 - Rat::from(k1 * m as i64);
        let y2 = &x2 - Rat::from(k2 * m as i64);
        prop_assert!(congruent_mod(&x1, &y1, m).unwrap().holds);
        prop_assert!(congruent_mod(&(&x1 + &x2), &(&y1 + &y2), m).unwrap().holds);
    }

    #[test]
    fn congruences_scale_by_coprime_denominators(
        x in rat(),
        qn in -50i64..50,
        qd in 1u64..50,
        cn in -50i64..50,
        cd in 1u64..50,
        m in 1u64..60,
    ) {
        // y = x + m·q with den(q) coprime to m, so x ≡ y (mod m)
        let q = Rat::new(qn, coprime_part(qd, m).unwrap() as i64);
        let y = &x + Rat::from(m as i64) * q;
        prop_assert!(congruent_mod(&x, &y, m).unwrap().holds);
        let c = Rat::new(cn, coprime_part(cd, m).unwrap() as i64);
        prop_assert!(congruent_mod(&(&c * &x), &(&c * &y), m).unwrap().holds);
    }

    #[test]
    fn reciprocal_inverts(f in idc_series(12)) {
        let r = f.reciprocal().unwrap();
        prop_assert_eq!(f.mul(&r).unwrap(), EgfSeries::constant(Rat::one(), 12));
    }

    #[test]
    fn scale_arg_round_trips(f in idc_series(10), c in rat()) {
        prop_assume!(!c.is_zero());
        prop_assert_eq!(f.scale_arg(&c).scale_arg(&c.recip()), f);
    }

    #[test]
    fn shift_down_inverts_shift_up(f in idc_series(10)) {
        let g = f.shift_up();
        prop_assert_eq!(g.coeff(0), &Rat::zero());
        prop_assert_eq!(g.shift_down().unwrap(), f);
    }

    #[test]
    fn convolution_matches_ordinary_product(f in idc_series(9), g in idc_series(9)) {
        let egf = to_ordinary(&f.mul(&g).unwrap());
        prop_assert_eq!(egf, cauchy_product(&to_ordinary(&f), &to_ordinary(&g)));
    }
}

#[test]
fn congruence_criteria_agree_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let x = Rat::new(rng.gen_range(-5000i64..5000), rng.gen_range(1i64..400));
        let y = Rat::new(rng.gen_range(-5000i64..5000), rng.gen_range(1i64..400));
        let m = rng.gen_range(1u64..500);
        let j = congruent_mod(&x, &y, m).unwrap();
        let diff = &x - &y;
        let by_numerator = diff.num() % BigInt::from(m) == BigInt::from(0);
        let by_valuation = factorize(m).unwrap().into_iter().all(|(p, e)| {
            padic_valuation(&diff, p).unwrap() >= Valuation::Finite(e as i64)
        });
        assert_eq!(j.holds, by_numerator, "{x} {y} {m}");
        assert_eq!(j.holds, by_valuation, "{x} {y} {m}");
    }
}

#[test]
fn coprime_part_matches_factorization() {
    for n in 1..=500u64 {
        let support: Vec<u64> = factorize(n).unwrap().into_iter().map(|(p, _)| p).collect();
        for a in 1..=500u64 {
            let pi = coprime_part(n, a).unwrap();
            let oracle: u64 = factorize(n)
                .unwrap()
                .into_iter()
                .filter(|&(p, _)| a % p != 0)
                .map(|(p, e)| p.pow(e))
                .product();
            assert_eq!(pi, oracle, "n={n} a={a}");
            assert_eq!(n % pi, 0);
            assert_eq!(pi.gcd(&a), 1);
            let rest = n / pi;
            assert!(support.iter().all(|&p| rest % p != 0 || a % p == 0));
        }
    }
}

#[test]
fn factorization_reproduces_input() {
    for n in 1..=3000u64 {
        let f = factorize(n).unwrap();
        assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(f.iter().all(|&(_, e)| e >= 1));
    }
}

#[test]
fn prop1_holds_for_random_series_at_order_30() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..100 {
        let a0 = rng.gen_range(1i64..=5);
        let coeffs: Vec<i64> = std::iter::once(a0)
            .chain((0..30).map(|_| rng.gen_range(-9..=9)))
            .collect();
        let f = EgfSeries::from_integers(coeffs);
        assert!(f.idc_reciprocal_scaled().unwrap().is_idc());
        let r = f.reciprocal().unwrap();
        assert_eq!(f.mul(&r).unwrap(), EgfSeries::constant(Rat::one(), 30));
    }
}

#[test]
fn scaling_the_genocchi_series() {
    let g: Vec<BigInt> = genocchi_numbers(6).unwrap();
    let series = EgfSeries::from_integers(g);
    // 4t/(e^{2t}+1), expanded independently
    assert_eq!(
        series.scale_arg(&Rat::from(2)),
        EgfSeries::from_integers([0, 2, -4, 0, 16, 0, -192])
    );
}

#[test]
fn dividing_the_genocchi_series_by_t() {
    let series = EgfSeries::from_integers(genocchi_numbers(8).unwrap());
    let h = series.shift_down().unwrap();
    assert_eq!(&h.coeffs()[..4], &[Rat::one(), Rat::new(-1, 2), Rat::zero(), Rat::new(1, 4)]);
    assert!(!h.is_idc());
}

#[test]
fn theorem1_construction_from_prop1() {
    // a/f(at) with f = e^{(a−1)t} + … + 1 has coefficients a^{n−1} G_{n,a} / n
    for a in 2..=6u64 {
        let g = gen_genocchi_numbers(20, a).unwrap();
        let h = exp_sum_series(a, 19).unwrap().idc_reciprocal_scaled().unwrap();
        for n in 1..=20 {
            let want = Rat::new(BigInt::from(a).pow(n as u32 - 1) * &g[n], n as i64);
            assert_eq!(h.coeff(n - 1), &want);
        }
    }
}

#[test]
fn base_two_is_classical() {
    assert_eq!(gen_genocchi_numbers(64, 2).unwrap(), genocchi_numbers(64).unwrap());
}

#[test]
fn bernoulli_invariants() {
    let t = BernoulliTable::compute(120);
    for n in (3..=120).step_by(2) {
        assert!(t.get(n).unwrap().is_zero(), "B_{n}");
    }
    for n in (2..=120).step_by(2) {
        let den = t.get(n).unwrap().den().clone();
        let product: BigInt = staudt_primes(n).into_iter().map(BigInt::from).product();
        assert_eq!(den, product, "den(B_{n})");
    }
}

#[test]
fn theorem2_implies_corollary2_and_lemma_implies_theorem1() {
    let v = Verifier::new(60, 12).unwrap();
    for a in 2..=12u64 {
        for n in 2..=60 {
            if v.check_theorem2(n, a).unwrap().holds {
                assert!(v.check_corollary2(n, a).unwrap(), "n={n} a={a}");
            }
        }
        for n in 1..=60 {
            let pi = coprime_part(n as u64, a).unwrap();
            let a_pow = BigInt::from(a).pow(n as u32 - 1);
            if v.check_lemma_n_divides(n, a).unwrap() && a_pow.gcd(&BigInt::from(pi)) == BigInt::from(1) {
                assert!(v.check_theorem1(n, a).unwrap(), "n={n} a={a}");
            }
        }
    }
}

#[test]
fn all_theorems_hold_on_the_default_grid() {
    let v = Verifier::new(200, 20).unwrap();
    for id in TheoremId::ALL {
        let r = v.run_grid(id, 1..=200, 2..=20).unwrap();
        assert!(r.passed(), "{id}: {:?}", &r.failures[..r.failures.len().min(3)]);
    }
}

#[test]
fn reports_are_reproducible() {
    let v = Verifier::new(40, 8).unwrap();
    for id in TheoremId::ALL {
        let a = v.run_grid(id, 1..=40, 2..=8).unwrap();
        let b = v.run_grid(id, 1..=40, 2..=8).unwrap();
        assert!(a.same_outcome(&b), "{id}");
    }
    let m = Verifier::new(40, 8).unwrap().with_mutation(17, 5);
    let a = m.run_grid(TheoremId::Corollary2, 1..=40, 2..=8).unwrap();
    let b = m.run_grid(TheoremId::Corollary2, 1..=40, 2..=8).unwrap();
    assert!(a.same_outcome(&b));
    assert_eq!(a.failures.len(), 1);
    assert_eq!(residue(&(v.genocchi(17, 5).unwrap() + 1), 5), 2);
}
