//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fibcat::catalan::{
    catalan_number, closed_form_root, prop41_check, prop41_series, radius, radius_prop41,
    ratio_test_radius, residual_series, series_solve, surface_identity_defect, surface_reduction,
    Prop41Params, SurfaceExampleParams,
};
use fibcat::chern::fm_twist_consistency;
use fibcat::chow::{self, ChowClass, FibrationModel};
use fibcat::rational::{format_rational, int, ratio, Rational};
use fibcat::sample;
use fibcat::stability::{solve_constraints, solve_with_target, verify_cceq, ConstraintSolution};
use fibcat::Error;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn binomial_catalan(n: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * n - i) / BigUint::from(i + 1);
    }
    c / BigUint::from(n + 1)
}

fn criterion_1() -> Outcome {
    let listed: Vec<BigUint> = (0..=6).map(catalan_number).collect();
    let expected: Vec<BigUint> = [1u32, 1, 2, 5, 14, 42, 132].map(BigUint::from).to_vec();
    if listed != expected {
        return fail(format!("c_0..c_6 = {listed:?}"));
    }
    for i in 0..=30u64 {
        if catalan_number(i as usize) != binomial_catalan(i) {
            return fail(format!("recurrence and binomial form differ at i = {i}"));
        }
    }
    pass("c_0..c_6 = 1 1 2 5 14 42 132; recurrence = binomial form for i <= 30")
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let a = sample::nonzero_rational(&mut rng, 12, 7);
        let b = sample::rational(&mut rng, 12, 7);
        let res = residual_series(&a, &b, 30).unwrap();
        if !res.is_zero() {
            return fail(format!(
                "A = {}, B = {}: first nonzero residual at degree {:?}",
                format_rational(&a),
                format_rational(&b),
                res.first_nonzero_degree()
            ));
        }
    }
    pass("20 random (A, B): residual through degree 30 is exactly zero")
}

fn radius_cases() -> Vec<(Rational, Rational)> {
    vec![(int(1), int(1)), (int(2), int(-3)), (ratio(1, 2), int(5))]
}

fn prop41_cases() -> Vec<(Rational, Rational, Rational)> {
    vec![
        (int(2), int(-1), int(3)),
        (int(2), int(1), int(2)),
        (int(5), int(-2), int(4)),
    ]
}

fn criterion_3a() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, b) in radius_cases() {
        let formula = radius(&a, &b).unwrap().value();
        let estimate = ratio_test_radius(&series_solve(&a, &b, 199).unwrap()).unwrap();
        let rel = (estimate - formula).abs() / formula;
        worst = worst.max(rel);
        if rel > 0.01 {
            return fail(format!(
                "A = {}, B = {}: estimate {estimate} vs {formula}",
                format_rational(&a),
                format_rational(&b)
            ));
        }
    }
    pass(format!(
        "ratio test over 200 coefficients vs 1/(2 sqrt|AB|): worst relative error {worst:.4}"
    ))
}

fn criterion_3b() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (r, h, v) in prop41_cases() {
        let p = Prop41Params::new(r.clone(), h.clone(), v).unwrap();
        let estimate = ratio_test_radius(&prop41_series(&p, 199).unwrap()).unwrap();
        let formula = radius_prop41(&r, &h).unwrap().value();
        let rel = (estimate - formula).abs() / formula;
        let halved = (estimate - formula / 2.0).abs() / (formula / 2.0);
        ok &= rel <= 0.01;
        lines.push(format!(
            "(r, h) = ({}, {}): estimate {estimate:.6} in w = 1/(2v), 1/sqrt|rh| = {formula:.6}, \
             rel err {rel:.4}, rel err vs 1/(2 sqrt|rh|) {halved:.4}",
            format_rational(&r),
            format_rational(&h)
        ));
    }
    let detail = lines.join("; ");
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, b) in radius_cases() {
        let u = series_solve(&a, &b, 200).unwrap();
        let rad = radius(&a, &b).unwrap().value();
        for frac in [0.4, 0.8] {
            let w = frac * rad;
            let err = (u.evaluate_f64(w) - closed_form_root(&a, &b, w).unwrap()).abs();
            worst = worst.max(err);
            if err > 1e-10 {
                return fail(format!(
                    "A = {}, B = {}, w = {w}: error {err:e}",
                    format_rational(&a),
                    format_rational(&b)
                ));
            }
        }
    }
    pass(format!(
        "N = 200 partial sums at 0.4 and 0.8 of the radius: worst error {worst:e}"
    ))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for (r, h, v) in prop41_cases() {
        let p = Prop41Params::new(r.clone(), h.clone(), v.clone()).unwrap();
        let check = prop41_check(&p, 200).unwrap();
        worst = worst.max(check.residual_f64);
        if check.residual_f64 > 1e-10 || !check.formal_residual_zero {
            return fail(format!(
                "(r, h, v) = ({}, {}, {}): residual {:e}",
                format_rational(&r),
                format_rational(&h),
                format_rational(&v),
                check.residual_f64
            ));
        }
    }
    let p = Prop41Params::new(int(2), int(0), int(3)).unwrap();
    let check = prop41_check(&p, 200).unwrap();
    if check.u_partial != ratio(1, 3) || !check.residual.is_zero() {
        return fail(format!(
            "h = 0: u = {}, residual {}",
            format_rational(&check.u_partial),
            format_rational(&check.residual)
        ));
    }
    pass(format!(
        "worst |hu^2 + 2uv - r| = {worst:e}; h = 0 gives u = r/(2v) exactly"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for h in [0, -1, 3] {
        let models = [
            FibrationModel::preset(int(h), int(2)).unwrap(),
            sample::threefold_model(&mut rng, 2, int(h)).unwrap(),
        ];
        for model in &models {
            for _ in 0..100 {
                let ch = sample::chern_data(&mut rng, model);
                let v = sample::rationals(&mut rng, model.base_rank(), 6, 5);
                let res = fm_twist_consistency(&ch, &v, model).unwrap();
                if !res.is_zero() {
                    return fail(format!("h = {h}: nonzero residual {res:?}"));
                }
                checked += 1;
            }
        }
    }
    pass(format!(
        "{checked} random (ch, V) over h in {{0, -1, 3}}: twisted transform residual exactly zero"
    ))
}

fn cceq_zero_on_samples(
    sol: &ConstraintSolution,
    model: &FibrationModel,
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<bool, Error> {
    for _ in 0..samples {
        let v = sample::rationals(rng, model.base_rank(), 6, 5);
        let ch = sample::chern_data(rng, model);
        let report = verify_cceq(
            &ch,
            &v,
            &sol.barred_params(&v, model)?,
            &sol.unbarred_params(&v, model)?,
            model,
        )?;
        if !report.residual.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let model = FibrationModel::preset(int(0), int(1)).unwrap();
    let mut irrational = 0;
    for _ in 0..10 {
        let k = sample::positive_rational(&mut rng, 6, 4);
        let l = sample::positive_rational(&mut rng, 6, 4);
        let sol = solve_constraints(&k, &l, &model).unwrap();
        if !sol.u.is_rational() {
            irrational += 1;
        }
        if !cceq_zero_on_samples(&sol, &model, &mut rng, 100).unwrap() {
            return fail(format!(
                "h = 0, d = 1, (k, l) = ({}, {}): nonzero residual",
                format_rational(&k),
                format_rational(&l)
            ));
        }
        let bumped = solve_with_target(&k, &l, &(&sol.r + int(1)), &model).unwrap();
        if cceq_zero_on_samples(&bumped, &model, &mut rng, 100).unwrap() {
            return fail("perturbing the first constraint by 1 left every residual zero");
        }
    }

    let special = FibrationModel::preset(int(-1), int(2)).unwrap();
    let special_note = match solve_constraints(&int(1), &int(1), &special) {
        Ok(sol) => {
            if !cceq_zero_on_samples(&sol, &special, &mut rng, 100).unwrap() {
                return fail("(k, l, h, d) = (1, 1, -1, 2): nonzero residual");
            }
            "(1, 1, -1, 2): residual zero".to_string()
        }
        Err(Error::NoRealSolution(why)) => format!("(1, 1, -1, 2) skipped, no real solution: {why}"),
        Err(e) => return fail(format!("(1, 1, -1, 2): {e}")),
    };

    let extra = FibrationModel::preset(int(1), int(1)).unwrap();
    let sol = solve_constraints(&int(1), &int(2), &extra).unwrap();
    if sol.u.is_rational() || !cceq_zero_on_samples(&sol, &extra, &mut rng, 100).unwrap() {
        return fail("(k, l, h, d) = (1, 2, 1, 1): expected an irrational u with zero residual");
    }

    pass(format!(
        "10 random (k, l) at h = 0, d = 1 x 100 characters: residual exactly zero \
         ({irrational} with irrational u), C1 + 1 gives nonzero residual; {special_note}; \
         (1, 2, 1, 1) zero in Q(sqrt 3/2)"
    ))
}

fn criterion_8() -> Outcome {
    let defect = surface_identity_defect();
    let red = surface_reduction(&SurfaceExampleParams {
        m: ratio(3, 2),
        alpha: int(-1),
        e: int(4),
    });
    if !defect.is_zero() || !red.identity_holds {
        return fail(format!("defect polynomial {defect:?}"));
    }
    pass("relation minus reduced form is the zero polynomial in Q[u, v, m, alpha, e]")
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let (u, v, h) = (
            sample::rational(&mut rng, 9, 5),
            sample::rational(&mut rng, 9, 5),
            sample::rational(&mut rng, 9, 5),
        );
        let d = sample::positive_rational(&mut rng, 9, 5);
        let model = FibrationModel::preset(h.clone(), d.clone()).unwrap();
        let theta: ChowClass = ChowClass::theta(&model);
        let w = ChowClass::span_divisor(&model, u.clone(), v.clone());
        let deg3 = |a: &ChowClass, b: &ChowClass, c: &ChowClass| {
            chow::intersection_number(&[a.clone(), b.clone(), c.clone()], &model).unwrap()
        };
        let checks = [
            (deg3(&theta, &theta, &theta), &h * &h * &d),
            (deg3(&w, &w, &theta), &d * (&h * &u + &v) * (&h * &u + &v)),
            (
                deg3(&w, &w, &w),
                &d * (&h * &h * &u * &u * &u + int(3) * &h * &u * &u * &v + int(3) * &u * &v * &v),
            ),
        ];
        if let Some((got, want)) = checks.iter().find(|(g, w)| g != w) {
            return fail(format!(
                "u = {}, v = {}, h = {}, d = {}: {} vs {}",
                format_rational(&u),
                format_rational(&v),
                format_rational(&h),
                format_rational(&d),
                format_rational(got),
                format_rational(want)
            ));
        }
    }
    pass("10 random (u, v, h, d): theta^3, omega^2 theta, omega^3 equal their closed forms")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let models = [
        sample::threefold_model(&mut rng, 2, int(-1)).unwrap(),
        FibrationModel::surface(int(-3)),
    ];
    let mut triples = 0;
    for model in &models {
        for _ in 0..50 {
            let a = sample::class(&mut rng, model).unwrap();
            let b = sample::class(&mut rng, model).unwrap();
            let c = sample::class(&mut rng, model).unwrap();
            let m = |x: &ChowClass, y: &ChowClass| chow::mul(x, y, model).unwrap();
            if m(&m(&a, &b), &c) != m(&a, &m(&b, &c)) {
                return fail("associativity");
            }
            if m(&a, &b) != m(&b, &a) {
                return fail("commutativity");
            }
            if m(&a, &(&b + &c)) != &m(&a, &b) + &m(&a, &c) {
                return fail("distributivity");
            }
            triples += 1;
        }
    }
    let unit_ok = {
        let model = &models[0];
        let a = sample::class(&mut rng, model).unwrap();
        chow::mul(&ChowClass::one(model), &a, model).unwrap() == a
    };
    if !unit_ok {
        return fail("unit");
    }
    pass(format!(
        "{triples} random triples on a rank-2 threefold and a surface: ring axioms hold exactly"
    ))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1", "Catalan numbers", criterion_1),
        ("2", "formal series solution", criterion_2),
        ("3a", "radius of the (A, B) series", criterion_3a),
        ("3b", "radius 1/sqrt|rh| in the variable 1/(2v)", criterion_3b),
        ("4", "numeric convergence", criterion_4),
        ("5", "quadratic in u, v end to end", criterion_5),
        ("6", "twisted transform consistency", criterion_6),
        ("7", "central-charge equation", criterion_7),
        ("8", "surface reduction", criterion_8),
        ("9", "intersection closed forms", criterion_9),
        ("10", "ring axioms", criterion_10),
    ];

    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failures += 1;
        }
        println!("{tag} criterion {id} ({name}): {}", outcome.detail);
    }
    panic::set_hook(default_hook);

    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
