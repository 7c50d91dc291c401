//! Randomized property suites, 100 cases each from a fixed ChaCha seed.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use sigma_forge::curve::{CurveKit, CurveParams, CurveSeries};
use sigma_forge::ring::{int, rat, MuPoly, Rat};
use sigma_forge::series::{BSeries, LSeries, Var};
use sigma_forge::sigma::SigmaKit;

const SEED: [u8; 32] = *b"sigma-forge property seed 000001";

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn curve() -> impl Strategy<Value = CurveParams> {
    proptest::array::uniform5(small_rat()).prop_map(CurveParams::from_rats)
}

fn integral_curve() -> impl Strategy<Value = CurveParams> {
    proptest::array::uniform5(-5i64..=5).prop_map(|a| CurveParams::from_rats(a.map(int)))
}

/// Coefficients from a few generators so that cancellations stay visible.
fn coefficient() -> impl Strategy<Value = MuPoly> {
    (small_rat(), -3i64..=3, -2i64..=2).prop_map(|(c, a, b)| {
        MuPoly::constant(c) + MuPoly::mu(1).scale_int(a) + (MuPoly::mu(2) * MuPoly::mu(3)).scale_int(b)
    })
}

fn series(lo: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = LSeries> {
    proptest::collection::vec(coefficient(), len)
        .prop_map(move |cs| LSeries::new(Var::T, lo, lo + cs.len() as i64 - 1, cs))
}

fn same(a: &LSeries, b: &LSeries, upto: i64, what: &str) -> Result<(), TestCaseError> {
    for n in a.lo().min(b.lo())..=upto {
        prop_assert_eq!(a.coeff(n), b.coeff(n), "{} at {}^{}", what, a.var(), n);
    }
    Ok(())
}

pub fn weights_symbolic() -> Result<(), String> {
    let kit = super::symbolic_kit();
    kit.curve().check_weights().map_err(|e| e.to_string())?;
    kit.check_weights().map_err(|e| e.to_string())
}

// mu_j -> l^j mu_j, t -> t/l scales each coefficient of t^n by l^(n + offset):
// the numeric face of weight homogeneity.
pub fn weights_numeric_scaling() -> Result<(), String> {
    let strategy = (integral_curve(), prop_oneof![Just(2i64), Just(-1), Just(3)], 4i64..=8);
    check(100, strategy, |(c, l, order)| {
        let vals = c.values().unwrap();
        let scaled = CurveParams::from_rats(std::array::from_fn(|k| {
            let j = sigma_forge::ring::MU_INDICES[k];
            &vals[k] * int(l.pow(j))
        }));
        let a = SigmaKit::new(&c, order).unwrap();
        let b = SigmaKit::new(&scaled, order).unwrap();
        let lr = int(l);
        for which in CurveSeries::ALL {
            let (sa, sb) = (a.curve().series(which), b.curve().series(which));
            let off = which.weight_offset();
            for n in sa.lo()..=sa.prec().min(sb.prec()) {
                let factor = num_traits::pow::Pow::pow(&lr, (n + off) as i32);
                prop_assert_eq!(sb.coeff(n).clone(), sa.coeff(n).scale(&factor), "{} t^{}", which.name(), n);
            }
        }
        // sigma has weight -1 in u
        for n in 0..=a.sigma().prec().min(b.sigma().prec()) {
            let factor = num_traits::pow::Pow::pow(&lr, (n - 1) as i32);
            prop_assert_eq!(b.sigma().coeff(n).clone(), a.sigma().coeff(n).scale(&factor), "sigma u^{}", n);
        }
        Ok(())
    })
}

pub fn precision_soundness() -> Result<(), String> {
    check(100, (curve(), 2i64..=7), |(c, order)| {
        let lo = SigmaKit::new(&c, order).unwrap();
        let hi = SigmaKit::new(&c, order + 5).unwrap();
        for which in CurveSeries::ALL {
            let s = lo.curve().series(which);
            same(s, hi.curve().series(which), s.prec(), which.name())?;
        }
        for (name, a, b) in [
            ("sigma", lo.sigma(), hi.sigma()),
            ("sigma^2", lo.sigma_sq(), hi.sigma_sq()),
            ("wp", lo.wp(), hi.wp()),
            ("wp'", lo.wp_prime(), hi.wp_prime()),
            ("sigma^2 in t", lo.sigma_sq_in_t(), hi.sigma_sq_in_t()),
        ] {
            prop_assert!(a.prec() >= order || name.starts_with("wp"), "{} known only to {}", name, a.prec());
            same(a, b, a.prec(), name)?;
        }
        let (x, y) = (lo.xi_regular(), hi.xi_regular());
        for (i, j, v) in x.iter() {
            prop_assert_eq!(v, y.coeff(i, j), "xi t1^{} t2^{}", i, j);
        }
        Ok(())
    })
}

pub fn conjugation_is_an_involution() -> Result<(), String> {
    check(100, (curve(), 3i64..=14), |(c, order)| {
        let kit = CurveKit::new(&c, order).unwrap();
        let tp = kit.tprime();
        let twice = tp.compose(tp).unwrap();
        same(&twice, &LSeries::identity(Var::T, twice.prec()), twice.prec(), "t'(t'(t))")
    })
}

pub fn xi_regular_is_symmetric() -> Result<(), String> {
    check(100, (curve(), 2i64..=8), |(c, order)| {
        let kit = SigmaKit::new(&c, order).unwrap();
        prop_assert!(kit.xi_regular().is_symmetric());
        Ok(())
    })
}

pub fn r_is_one_on_the_diagonal() -> Result<(), String> {
    check(100, (curve(), 2i64..=7), |(c, order)| {
        let kit = SigmaKit::new(&c, order).unwrap();
        let r = kit.r_series().unwrap();
        let d = r.diagonal(Var::T);
        same(&d, &LSeries::one(Var::T, d.prec()), d.prec(), "r(t, t)")?;
        // r - 1 is divisible by (t1 - t2)^2: it vanishes on the diagonal together with its normal derivative
        let dd = r.derivative_first().diagonal(Var::T);
        same(&dd, &LSeries::zero(Var::T, dd.prec()), dd.prec(), "d1 r(t, t)")
    })
}

pub fn sigma_squared_of_u_minus_v_is_translation_invariant() -> Result<(), String> {
    check(100, (curve(), 2i64..=6), |(c, order)| {
        let kit = SigmaKit::new(&c, order).unwrap();
        let two = kit.sigma_sq_two_var().unwrap();
        let shifted = BSeries::compose_linear((Var::U, Var::V), kit.sigma_sq(), 1, -1).unwrap();
        let p = two.prec().min(shifted.prec());
        prop_assert!(p >= 2);
        prop_assert_eq!(two.truncate(p), shifted.truncate(p));
        Ok(())
    })
}

pub fn exp_log_round_trip() -> Result<(), String> {
    check(100, series(1, 1..=9), |g| {
        let e = g.exp().unwrap();
        let back = e.log().unwrap();
        same(&back, &g, g.prec(), "log(exp(g))")?;
        let one_plus = g.try_add(&LSeries::one(Var::T, g.prec())).unwrap();
        let again = one_plus.log().unwrap().exp().unwrap();
        same(&again, &one_plus, g.prec(), "exp(log(1 + g))")
    })
}

pub fn sqrt_round_trip() -> Result<(), String> {
    check(100, series(1, 1..=9), |g| {
        let h = g.try_add(&LSeries::one(Var::T, g.prec())).unwrap();
        let r = h.sqrt_hurwitz().unwrap();
        same(&r.try_mul(&r).unwrap(), &h, h.prec(), "sqrt(h)^2")
    })
}

pub fn reversion_round_trip() -> Result<(), String> {
    check(100, series(2, 1..=9), |g| {
        let f = g.try_add(&LSeries::identity(Var::T, g.prec())).unwrap();
        let inv = f.revert(Var::U).unwrap();
        let id_u = f.compose(&inv).unwrap();
        same(&id_u, &LSeries::identity(Var::U, id_u.prec()), id_u.prec(), "f(f^-1(u))")?;
        let id_t = inv.compose(&f).unwrap();
        same(&id_t, &LSeries::identity(Var::T, id_t.prec()), id_t.prec(), "f^-1(f(t))")?;
        let back = inv.revert(Var::T).unwrap();
        same(&back, &f, f.prec(), "revert twice")
    })
}

pub fn inverse_round_trip() -> Result<(), String> {
    let lead = small_rat().prop_filter("unit", |r| *r != int(0));
    check(100, (lead, series(-1, 1..=8), coefficient()), |(a, g, c)| {
        let g = g.try_add(&LSeries::monomial(Var::T, MuPoly::constant(a), -2, g.prec())).unwrap();
        let inv = g.inverse().unwrap();
        let one = g.try_mul(&inv).unwrap();
        same(&one, &LSeries::one(Var::T, one.prec()), one.prec(), "g / g")?;
        let q = g.scale(&c).try_div(&g).unwrap();
        same(&q, &LSeries::constant(Var::T, c, q.prec()), q.prec(), "c g / g")
    })
}

pub fn substitution_order_does_not_matter() -> Result<(), String> {
    let strategy = (proptest::collection::vec(coefficient(), 21), series(1, 3..=6), series(1, 3..=6));
    check(100, strategy, |(cs, a, b)| {
        let vars = (Var::T1, Var::T2);
        let mut it = cs.into_iter();
        let f = BSeries::from_fn(vars, 5, |_, _| it.next().unwrap());
        let a = a.with_var(Var::U);
        let b = b.with_var(Var::V);
        let both = f.substitute(Some(&a), Some(&b)).unwrap();
        let one_by_one = f.substitute(Some(&a), None).unwrap().substitute(None, Some(&b)).unwrap();
        let other_way = f.substitute(None, Some(&b)).unwrap().substitute(Some(&a), None).unwrap();
        let p = both.prec().min(one_by_one.prec()).min(other_way.prec());
        prop_assert_eq!(both.truncate(p), one_by_one.truncate(p));
        prop_assert_eq!(both.truncate(p), other_way.truncate(p));
        Ok(())
    })
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: [Property; 12] = [
    ("weight homogeneity, symbolic", weights_symbolic),
    ("weight homogeneity, scaling", weights_numeric_scaling),
    ("precision soundness", precision_soundness),
    ("t' o t' = t", conjugation_is_an_involution),
    ("xi_reg symmetric", xi_regular_is_symmetric),
    ("r(t, t) = 1", r_is_one_on_the_diagonal),
    ("sigma^2(u - v) translation invariant", sigma_squared_of_u_minus_v_is_translation_invariant),
    ("exp/log round trip", exp_log_round_trip),
    ("sqrt round trip", sqrt_round_trip),
    ("reversion round trip", reversion_round_trip),
    ("inverse round trip", inverse_round_trip),
    ("substitution order", substitution_order_does_not_matter),
];
