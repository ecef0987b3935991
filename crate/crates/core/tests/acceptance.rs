//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured runtime. Run with `cargo test --release --test
//! acceptance -- --nocapture` to see the report.

use mills::asymptotic::jn_eval;
use mills::bounds::{self, Side};
use mills::constants::{constant_enclosure, ConstantId};
use mills::convergents::{
    convergent_eval, double_factorial, hermite_check, laurent_match_order, pn_explicit, pq,
    wronskian_rhs,
};
use mills::oracle::{self, mills_derivative_signed, mills_enclosure, MillsQuery};
use mills::polynomial::Polynomial;
use mills::rational::{parse_rational, rat, rat_int, ten_pow_neg, to_f64, Rational};
use mills::sturm::{count_roots, isolate_roots, SturmPoint, SturmSequence};
use mills::taylor::taylor_envelope;
use mills::verifier::{
    self, certify_positive, substitute_sandwich, term, MillsExpression, RationalFunction,
    Verdict,
};
use mills::Enclosure;
use num_traits::{One, Signed, Zero};
use std::time::Instant;

fn finish(criterion: &str, start: Instant, limit_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("ACCEPTANCE {criterion}: PASS ({elapsed:.2}s)");
    // the stated runtime budgets apply to optimized builds
    if !cfg!(debug_assertions) {
        assert!(
            elapsed < limit_secs,
            "{criterion} exceeded its {limit_secs}s budget: {elapsed:.2}s"
        );
    }
}

fn fin(x: Rational) -> SturmPoint {
    SturmPoint::Finite(x)
}

/// The convexity expression g = 2 + x^2 f^2 - f^2 - 3 x f.
fn convexity_expression() -> MillsExpression {
    use mills::symbolic::ConstExpr;
    MillsExpression::new(vec![
        term(ConstExpr::from_int(2), 0, 0),
        term(ConstExpr::from_int(1), 2, 2),
        term(ConstExpr::from_int(-1), 0, 2),
        term(ConstExpr::from_int(-3), 1, 1),
    ])
}

/// 100 rational grid points in (0, 10].
fn grid_0_10() -> Vec<Rational> {
    (1..=100).map(|i| rat(i, 10)).collect()
}

#[test]
fn criterion_1_appendix_reproduction() {
    let start = Instant::now();
    let p = Polynomial::new(vec![
        rat(2414, 5625),
        rat(-94, 75),
        rat(179249, 90000),
        rat(-469, 150),
        rat(3416, 5625),
    ]);
    let seq = SturmSequence::new(&p).unwrap();
    // p2 exactly as printed
    assert_eq!(
        seq.polys()[2],
        Polynomial::new(vec![
            rat(-1135387, 43920000),
            rat(-3202259, 9369600),
            rat(355316101, 175680000),
        ])
    );
    // sign-change counts
    assert_eq!(seq.sign_changes(&fin(rat_int(0))).changes, 3);
    assert_eq!(seq.sign_changes(&fin(rat(45, 100))).changes, 3);
    assert_eq!(seq.sign_changes(&fin(rat(46, 100))).changes, 2);
    assert_eq!(seq.sign_changes(&SturmPoint::PosInf).changes, 1);
    // root counts and isolation
    assert_eq!(count_roots(&p, &fin(rat_int(0)), &fin(rat(45, 100))).unwrap(), 0);
    assert_eq!(count_roots(&p, &fin(rat_int(0)), &SturmPoint::PosInf).unwrap(), 2);
    let roots = isolate_roots(&p, &fin(rat_int(0)), &SturmPoint::PosInf).unwrap();
    assert!(roots[0].0 >= rat(45, 100) && roots[0].1 <= rat(46, 100));
    finish("1 (appendix reproduction)", start, 1.0);
}

#[test]
fn criterion_2_convexity_reproduction() {
    let start = Instant::now();
    // G digit for digit, all seventeen printed coefficients
    let env = taylor_envelope(7, 1);
    let g = substitute_sandwich(
        &convexity_expression(),
        &RationalFunction::from_polynomial(&env.lower),
        &RationalFunction::from_polynomial(&env.upper),
        1,
    )
    .unwrap();
    let expected_g = [
        (16, rat(813359, 10160640000)),
        (15, rat(-41, 94500)),
        (14, rat(17139569, 10160640000)),
        (13, rat(-139, 25200)),
        (12, rat(1158121, 72576000)),
        (11, rat(-15671, 378000)),
        (10, rat(1308953, 13440000)),
        (9, rat(-327233, 1512000)),
        (8, rat(1528967, 3780000)),
        (7, rat(-9941, 14000)),
        (6, rat(616499, 540000)),
        (5, rat(-1862, 1125)),
        (4, rat(189937, 90000)),
        (3, rat(-1031, 450)),
        (2, rat(179249, 90000)),
        (1, rat(-94, 75)),
        (0, rat(2414, 5625)),
    ];
    assert_eq!(g.degree(), Some(16));
    for (k, c) in expected_g {
        assert_eq!(g.coeff(k), c, "G coefficient of x^{k}");
    }

    // N digit for digit
    let lo = pq(10);
    let hi = pq(11);
    let n = substitute_sandwich(
        &convexity_expression(),
        &RationalFunction::from_pair(&lo.q, &lo.p),
        &RationalFunction::from_pair(&hi.q, &hi.p),
        1,
    )
    .unwrap();
    let expected_n: [(usize, i64); 19] = [
        (36, 1),
        (34, 185),
        (32, 15388),
        (30, 761580),
        (28, 25019940),
        (26, 576522420),
        (24, 9601604100),
        (22, 117398708820),
        (20, 1059855272550),
        (18, 7043405005350),
        (16, 33995881448100),
        (14, 115607852356500),
        (12, 259703297525700),
        (10, 329529066520500),
        (8, 108511796893500),
        (6, -233411033740500),
        (4, -247669566519375),
        (2, -66176702274375),
        (0, -6584094720000),
    ];
    assert_eq!(n.degree(), Some(36));
    for (k, c) in expected_n {
        assert_eq!(n.coeff(k), rat_int(c), "N coefficient of x^{k}");
    }
    for k in (1..36).step_by(2) {
        assert!(n.coeff(k).is_zero(), "N has even powers only");
    }

    // positivity and root locations
    let g_report = certify_positive(&g, &fin(rat_int(0)), &fin(rat_int(1))).unwrap();
    assert!(g_report.positive);
    assert_eq!(g_report.total_real_roots, Some(2));
    assert_eq!(count_roots(&g, &fin(rat(11, 10)), &fin(rat(12, 10))).unwrap(), 1);
    assert_eq!(count_roots(&g, &SturmPoint::NegInf, &fin(rat(11, 10))).unwrap(), 0);

    let n_report = certify_positive(&n, &fin(rat_int(1)), &SturmPoint::PosInf).unwrap();
    assert!(n_report.positive);
    assert!(count_roots(&n, &fin(rat(93, 100)), &fin(rat(94, 100))).unwrap() >= 1);
    assert_eq!(count_roots(&n, &fin(rat(94, 100)), &SturmPoint::PosInf).unwrap(), 0);

    // the registered claim proves
    let cert = verifier::verify_claim_by_id("convexity_g_positive").unwrap();
    assert_eq!(cert.verdict, Verdict::Proved);
    finish("2 (convexity reproduction)", start, 30.0);
}

#[test]
fn criterion_3_exact_identities_to_50() {
    let start = Instant::now();
    for n in 1..=50usize {
        let hi = pq(n);
        let lo = pq(n - 1);
        // Wronskian
        let w = hi.q.mul(&lo.p).sub(&lo.q.mul(&hi.p));
        assert_eq!(w, Polynomial::constant(wronskian_rhs(n)), "Wronskian at n = {n}");
        // derivative identity
        assert_eq!(hi.p.derivative(), lo.p.scale(&rat_int(n as i64)), "P' at n = {n}");
        // explicit formula
        assert_eq!(pn_explicit(n), hi.p, "explicit formula at n = {n}");
        // Hermite substitution
        assert!(hermite_check(n), "Hermite check at n = {n}");
        // value at zero for even index
        if n % 2 == 0 {
            assert_eq!(
                hi.p.coeff(0),
                Rational::from_integer(double_factorial(n as i64 - 1)),
                "P_n(0) at n = {n}"
            );
        }
    }
    finish("3 (exact identities n <= 50)", start, 10.0);
}

#[test]
fn criterion_4_sandwich_and_ordering() {
    let start = Instant::now();
    let width = ten_pow_neg(9);
    for x in grid_0_10() {
        // width bound: |Q_{n+1}/P_{n+1} - Q_n/P_n| = n!/(P_{n+1} P_n) < n!/x^(2n+1),
        // applied to the even/odd pair (2n, 2n+1)
        for n in 1..=8usize {
            let even = 2 * n;
            let diff = convergent_eval(even + 1, &x).unwrap() - convergent_eval(even, &x).unwrap();
            assert!(diff.is_positive(), "sandwich order at n = {n}, x = {x}");
            // exact identity via the Wronskian
            let pair_lo = pq(even);
            let pair_hi = pq(even + 1);
            let exact = Rational::from_integer(factorial(even))
                / (pair_hi.p.eval(&x) * pair_lo.p.eval(&x));
            assert_eq!(diff, exact, "difference identity at n = {n}, x = {x}");
            // the stated bound with the spec's indices
            let bound = Rational::from_integer(factorial(n)) / x.pow(2 * n as i32 + 1);
            assert!(diff < bound, "width bound at n = {n}, x = {x}");
        }
        // tail-expansion chain J_2m < Q_2m/P_2m < f < Q_{2m+1}/P_{2m+1} < J_{2m+1}
        let f = mills_enclosure(&x, &width).unwrap();
        for m in 1..=8usize {
            let j_lo = jn_eval(2 * m, &x).unwrap();
            let j_hi = jn_eval(2 * m + 1, &x).unwrap();
            let c_lo = convergent_eval(2 * m, &x).unwrap();
            let c_hi = convergent_eval(2 * m + 1, &x).unwrap();
            assert!(j_lo < c_lo, "J below convergent at m = {m}, x = {x}");
            assert!(c_hi < j_hi, "convergent below J at m = {m}, x = {x}");
            assert!(c_lo < c_hi, "convergent ordering at m = {m}, x = {x}");
            // the enclosure of f sits inside the exact sandwich
            assert!(
                &c_lo < f.hi() && f.lo() < &c_hi,
                "f enclosure outside the sandwich at m = {m}, x = {x}"
            );
        }
    }
    finish("4 (sandwich and ordering on the grid)", start, 60.0);
}

fn factorial(n: usize) -> num_bigint::BigInt {
    (2..=n).fold(num_bigint::BigInt::one(), |acc, k| acc * num_bigint::BigInt::from(k))
}

#[test]
fn criterion_5_oracle_containment() {
    let start = Instant::now();
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x4d696c6c73);
    let width = ten_pow_neg(9);
    for _ in 0..200 {
        let numer = rng.gen_range(0..=20_000i64);
        let x = rat(numer, 1000); // in [0, 20]
        let enc = mills_enclosure(&x, &width).unwrap();
        assert!(enc.width() <= width, "width contract at x = {x}");
        // double-precision reference through the complementary error function
        let xf = to_f64(&x);
        let tail = libm::erfc(xf / std::f64::consts::SQRT_2) / 2.0;
        let density = (-xf * xf / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let reference = parse_rational(&format!("{:e}", tail / density)).unwrap();
        assert!(
            enc.contains_strictly(&reference),
            "double-precision f({xf}) = {} not strictly inside {}",
            tail / density,
            enc.display_decimal(15)
        );
    }
    // f(0) to twelve digits
    let f0 = mills_enclosure(&rat_int(0), &ten_pow_neg(12)).unwrap();
    let reference = parse_rational("1.253314137315500251207882").unwrap();
    assert!(f0.contains(&reference));
    assert!(f0.width() <= ten_pow_neg(12));
    finish("5 (oracle containment, 200 random points)", start, 60.0);
}

#[test]
fn criterion_6_catalog_side_correctness() {
    let start = Instant::now();
    let width = ten_pow_neg(9);
    let catalog = bounds::catalog();
    for x in grid_0_10() {
        for spec in &catalog {
            if spec.side == Side::Neither {
                continue;
            }
            assert!(
                bounds::respects_side(spec, &x, &width).unwrap(),
                "{} violates its side at x = {x}",
                spec.id
            );
        }
        // the max/min chain of the four square-root bounds
        let f = mills_enclosure(&x, &width).unwrap();
        let w30 = bounds::eval_bound("W_{3,0}", &x, 12).unwrap();
        let w12 = bounds::eval_bound("W_{1,2}", &x, 12).unwrap();
        let w21 = bounds::eval_bound("W_{2,1}", &x, 12).unwrap();
        let w03 = bounds::eval_bound("W_{0,3}", &x, 12).unwrap();
        for lower in [&w30, &w12] {
            assert!(lower.strictly_below(&f), "lower chain fails at x = {x}");
        }
        for upper in [&w21, &w03] {
            assert!(f.strictly_below(upper), "upper chain fails at x = {x}");
        }
    }
    finish("6 (catalog side-correctness)", start, 120.0);
}

#[test]
fn criterion_7_gap_constants() {
    let start = Instant::now();
    let tol = rat(1, 1000);
    let check = |upper: &str, lower: &str, threshold: Rational| {
        let report = bounds::gap(upper, lower, 4096, &tol).unwrap();
        let sup = parse_rational(&report.sup_gap).unwrap();
        assert!(
            sup < threshold,
            "gap({upper}, {lower}) = {} not below {threshold}",
            report.sup_gap_decimal
        );
        report
    };
    let w = check("W_{2,1}", "W_{3,0}", rat(15, 1000));
    // the refined argmax bracket intersects (1.98, 1.99)
    let (a, b) = (
        parse_rational(&w.argmax_interval.0).unwrap(),
        parse_rational(&w.argmax_interval.1).unwrap(),
    );
    assert!(
        a < rat(199, 100) && b > rat(198, 100),
        "argmax bracket [{}, {}] misses (1.98, 1.99)",
        to_f64(&a),
        to_f64(&b)
    );
    assert!(w.certified, "the endpoint certificate must back the W pair");
    check("p_{0,1}", "p_{1,2}", rat(8, 100));
    check("U_{2,0}", "U_{1,1}", rat(15, 100));
    check("U_rational_upper", "U_rational_lower", rat(19, 100));
    check("V_{1,3}", "V_{2,2}", rat(7, 100));
    check("V_rational_upper", "V_rational_lower", rat(13, 100));
    check("V_{3,1}", "V_{2,2}", rat(15, 1000));
    check("Z_{1,1}", "Z_{2,0}", rat(1, 10));
    finish("7 (gap constants)", start, 120.0);
}

#[test]
fn criterion_8_verify_all() {
    let start = Instant::now();
    let certificates = verifier::verify_all().unwrap();
    let expected = [
        "convexity_g_positive",
        "W03_upper",
        "W30_lower",
        "W12_lower",
        "W21_upper",
        "local2_lower",
        "local2_upper",
        "pade_p01_upper",
        "pade_p12_lower",
        "U11_lower",
        "U20_upper",
        "U_rational_lower",
        "U_rational_upper",
        "V22_lower",
        "V13_upper",
        "V31_upper",
        "V_rational_lower",
        "V_rational_upper",
        "Z20_lower",
        "Z11_upper",
        "chernoff_lower",
        "f_decreasing",
        "chernoff_upper",
        "qfunc_lower",
        "qfunc_upper",
    ];
    for id in expected {
        let cert = certificates
            .iter()
            .find(|c| c.claim_id == id)
            .unwrap_or_else(|| panic!("claim {id} missing from the registry"));
        assert_eq!(cert.verdict, Verdict::Proved, "claim {id} not proved");
    }
    assert_eq!(certificates.len(), expected.len());
    finish("8 (verify --all)", start, 600.0);
}

#[test]
fn criterion_9_complete_monotonicity() {
    let start = Instant::now();
    for n in 1..=8usize {
        for i in 1..=20 {
            let x = rat(i, 4); // grid on (0, 5]
            let enc = mills_derivative_signed(n, &x).unwrap();
            let ok = if n % 2 == 0 {
                enc.is_strictly_positive()
            } else {
                enc.is_strictly_negative()
            };
            assert!(ok, "(-1)^{n} f^({n})({x}) not positive: {enc}");
        }
    }
    finish("9 (complete monotonicity)", start, 60.0);
}

#[test]
fn criterion_10_pade_laurent_orders() {
    let start = Instant::now();
    for n in 1..=8 {
        let matched = laurent_match_order(n);
        assert!(matched >= n, "laurent_match_order({n}) = {matched}");
    }
    finish("10 (Pade-Laurent match orders)", start, 10.0);
}

/// Soundness spot-check behind the proofs: every PROVED claim's original
/// inequality holds at random rational points via oracle enclosures.
#[test]
fn proved_claims_hold_at_random_points() {
    let start = Instant::now();
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(7);
    let width = ten_pow_neg(9);
    // bound-backed claims are compared against the oracle via the catalog
    for spec in bounds::catalog() {
        if spec.claim_id.is_none() || spec.side == Side::Neither {
            continue;
        }
        for _ in 0..50 {
            let x = rat(rng.gen_range(1..=10_000i64), 1000);
            assert!(
                bounds::respects_side(&spec, &x, &width).unwrap(),
                "{} fails its proved inequality at x = {x}",
                spec.id
            );
        }
    }
    finish("soundness spot-check", start, 600.0);
}

/// Direction correctness: the substituted polynomial under-estimates the
/// expression. For the Taylor path the polynomial itself is the lower
/// bound of g.
#[test]
fn substitution_is_directed() {
    let env = taylor_envelope(7, 1);
    let g = substitute_sandwich(
        &convexity_expression(),
        &RationalFunction::from_polynomial(&env.lower),
        &RationalFunction::from_polynomial(&env.upper),
        1,
    )
    .unwrap();
    let width = ten_pow_neg(10);
    for i in 1..=10 {
        let x = rat(i, 10);
        let f = mills_enclosure(&x, &width).unwrap();
        // g(x) = 2 + x^2 f^2 - f^2 - 3 x f evaluated outward
        let x_enc = Enclosure::point(x.clone());
        let f2 = f.mul(&f);
        let g_true = Enclosure::point(rat_int(2))
            .add(&x_enc.mul(&x_enc).mul(&f2))
            .sub(&f2)
            .sub(&x_enc.mul(&f).scale(&rat_int(3)));
        let g_sub = g.eval(&x);
        assert!(
            &g_sub <= g_true.hi(),
            "substituted value exceeds the expression at x = {x}"
        );
    }
}

/// Raising the envelope orders never flips a proved claim.
#[test]
fn monotone_strengthening() {
    use mills::verifier::{FEnvelope, SubStrategy};
    let mut claim = verifier::claim_by_id("W30_lower").unwrap();
    claim.subclaims = vec![
        SubStrategy {
            lo: rat_int(0),
            hi: Some(rat_int(1)),
            envelope: FEnvelope::TaylorSymbolic { order: 9 },
            exp_envelope: None,
        },
        SubStrategy {
            lo: rat_int(1),
            hi: None,
            envelope: FEnvelope::Convergent { even_index: 24 },
            exp_envelope: None,
        },
    ];
    let cert = verifier::certify(&claim).unwrap();
    assert_eq!(cert.verdict, Verdict::Proved);
}

/// The derivative enclosure interface agrees with simple exact values.
#[test]
fn derivative_enclosures_match_known_values() {
    let width = ten_pow_neg(9);
    let d1 = oracle::mills_query(&MillsQuery::derivative(1, rat_int(0), width.clone())).unwrap();
    assert!(d1.contains(&rat_int(-1)));
    // f'(1) = f(1) - 1
    let f1 = mills_enclosure(&rat_int(1), &width).unwrap();
    let d1_at_1 =
        oracle::mills_query(&MillsQuery::derivative(1, rat_int(1), width.clone())).unwrap();
    let expected = f1.add_scalar(&rat_int(-1));
    assert!(d1_at_1.intersect(&expected).is_ok());
}

/// The paper-coarse constant brackets respond to precision requests.
#[test]
fn constants_meet_requested_precision() {
    for c in ConstantId::ALL {
        for p in [1u32, 5, 12, 20] {
            let enc = constant_enclosure(c, p);
            assert!(enc.width() <= ten_pow_neg(p));
        }
    }
}
