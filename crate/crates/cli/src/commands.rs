use std::fs;
use std::io::Read;
use std::path::PathBuf;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use fibcat::catalan::{
    self, prop41_check, radius_prop41, ratio_test_radius, series_solve, surface_reduction,
    threefold_r, Prop41Params, SurfaceExampleParams, SweepRow,
};
use fibcat::chern::{self, ChernData};
use fibcat::chow::{self, ChowClass, FibrationModel};
use fibcat::rational::{format_rational, serde_rational, serde_rational_vec, to_f64, Rational};
use fibcat::sample;
use fibcat::scalar::Surd;
use fibcat::series::RationalSeries;
use fibcat::stability::{self, ConstraintSolution, StabilityParams};

use crate::args::{
    ChargeArgs, ChowEvalArgs, ConstraintArgs, FmArgs, Prop41Args, RadiusArgs, SeriesArgs,
    SurfaceArgs, SweepArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::output::{csv_float, json_float, Report};

/// Inline JSON, `-` for stdin, or a file path.
pub fn load_json(source: &str) -> Result<Value, CliError> {
    let trimmed = source.trim_start();
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io {
                path: PathBuf::from("<stdin>"),
                source: e,
            })?;
        buf
    } else if trimmed.starts_with('{') || trimmed.starts_with('[') {
        source.to_string()
    } else {
        fs::read_to_string(source).map_err(|e| CliError::Io {
            path: PathBuf::from(source),
            source: e,
        })?
    };
    Ok(serde_json::from_str(&text)?)
}

fn load<T: for<'de> Deserialize<'de>>(source: &str) -> Result<T, CliError> {
    Ok(serde_json::from_value(load_json(source)?)?)
}

fn field_rational(value: &Value, key: &str) -> Result<Option<Rational>, CliError> {
    match value.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => Ok(Some(serde_rational::deserialize(v.clone())?)),
    }
}

fn field_usize(value: &Value, key: &str) -> Result<Option<usize>, CliError> {
    match value.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| CliError::Usage(format!("{key} must be a non-negative integer"))),
    }
}

fn require<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

fn surd(x: &Surd) -> Value {
    serde_json::to_value(x).expect("surds serialize")
}

fn format_series(u: &RationalSeries) -> String {
    let mut out = String::new();
    for (i, c) in u.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let monomial = match i {
            0 => String::new(),
            1 => "·w".to_string(),
            _ => format!("·w^{i}"),
        };
        let magnitude = format_rational(&c.abs());
        if out.is_empty() {
            let sign = if c.is_negative() { "-" } else { "" };
            out = format!("{sign}{magnitude}{monomial}");
        } else {
            let sign = if c.is_negative() { " - " } else { " + " };
            out.push_str(&format!("{sign}{magnitude}{monomial}"));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn catalan(upto: usize) -> Result<Report, CliError> {
    let numbers = catalan::catalan_numbers(upto);
    let strings: Vec<String> = numbers.iter().map(|c| c.to_string()).collect();
    let csv = std::iter::once("i,c".to_string())
        .chain(strings.iter().enumerate().map(|(i, c)| format!("{i},{c}")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::new(strings.join(" "), json!({ "upto": upto, "catalan": strings })).with_csv(csv))
}

struct SeriesInput {
    a: Rational,
    b: Rational,
    n: usize,
}

fn series_input(args: &SeriesArgs) -> Result<SeriesInput, CliError> {
    let file = match &args.input {
        Some(src) => load_json(src)?,
        None => Value::Null,
    };
    Ok(SeriesInput {
        a: require(args.a.clone().or(field_rational(&file, "A")?), "A")?,
        b: require(args.b.clone().or(field_rational(&file, "B")?), "B")?,
        n: require(args.n.or(field_usize(&file, "N")?), "N")?,
    })
}

pub fn solve_series(args: &SeriesArgs) -> Result<Report, CliError> {
    let SeriesInput { a, b, n } = series_input(args)?;
    let u = series_solve(&a, &b, n)?;
    let csv = std::iter::once("degree,coefficient".to_string())
        .chain(
            u.coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{i},{}", format_rational(c))),
        )
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({ "A": q(&a), "B": q(&b), "N": n, "coefficients": qs(u.coefficients()) });
    Ok(Report::new(format_series(&u), json).with_csv(csv))
}

pub fn radius(args: &RadiusArgs) -> Result<Report, CliError> {
    let (formula, series, variable, mut json) = match (&args.a, &args.b, &args.r, &args.h) {
        (Some(a), Some(b), None, _) => (
            catalan::radius(a, b)?,
            series_solve(a, b, args.n)?,
            "w",
            json!({ "A": q(a), "B": q(b) }),
        ),
        (None, None, Some(r), Some(h)) => (
            radius_prop41(r, h)?,
            series_solve(r, &-h.clone(), args.n)?,
            "1/(2v)",
            json!({ "r": q(r), "h": q(h) }),
        ),
        _ => return Err(CliError::Usage("give either --A and --B, or --r and --h".into())),
    };
    let estimate = ratio_test_radius(&series);
    let obj = json.as_object_mut().expect("object");
    obj.insert("radius".into(), serde_json::to_value(formula)?);
    obj.insert("ratio_estimate".into(), estimate.map_or(Value::Null, json_float));
    obj.insert("coefficients".into(), json!(args.n + 1));
    obj.insert("variable".into(), json!(variable));
    let estimate_text = estimate.map_or("undefined".to_string(), |e| e.to_string());
    let text = format!(
        "radius {formula}\nratio-test estimate {estimate_text} from {} coefficients in {variable}",
        args.n + 1
    );
    Ok(Report::new(text, json))
}

pub fn prop41(args: &Prop41Args) -> Result<Report, CliError> {
    let file = match &args.input {
        Some(src) => load_json(src)?,
        None => Value::Null,
    };
    let r = require(args.r.clone().or(field_rational(&file, "r")?), "r")?;
    let h = require(args.h.clone().or(field_rational(&file, "h")?), "h")?;
    let v = require(args.v.clone().or(field_rational(&file, "v")?), "v")?;
    let n = require(args.n.or(field_usize(&file, "N")?), "N")?;
    let params = Prop41Params::new(r.clone(), h.clone(), v.clone())?;
    let check = prop41_check(&params, n)?;
    let u_decimal = to_f64(&check.u_partial);
    let json = json!({
        "r": q(&r), "h": q(&h), "v": q(&v), "N": n,
        "w": q(&params.w()),
        "u_partial": q(&check.u_partial),
        "u_decimal": json_float(u_decimal),
        "residual": q(&check.residual),
        "residual_decimal": json_float(check.residual_f64),
        "formal_residual_zero": check.formal_residual_zero,
        "radius": serde_json::to_value(check.radius)?,
    });
    let text = format!(
        "u ≈ {u_decimal} at w = {}\n|h u² + 2 v u − r| = {:e}\nformal residual zero: {}\nradius {}",
        format_rational(&params.w()),
        check.residual_f64,
        check.formal_residual_zero,
        check.radius
    );
    Ok(Report::new(text, json).verified(check.formal_residual_zero))
}

pub fn surface_reduce(args: &SurfaceArgs) -> Result<Report, CliError> {
    let sp = SurfaceExampleParams {
        m: args.m.clone(),
        alpha: args.alpha.clone(),
        e: args.e.clone(),
    };
    let red = surface_reduction(&sp);
    let json = json!({
        "m": q(&sp.m), "alpha": q(&sp.alpha), "e": q(&sp.e), "r": q(&sp.r()),
        "P": q(&red.p), "Q": q(&red.q), "variable": red.variable,
        "identity_holds": red.identity_holds,
    });
    let text = format!(
        "u = (P + Q·u²)·({}) with P = {}, Q = {}\nidentity holds: {}",
        red.variable,
        format_rational(&red.p),
        format_rational(&red.q),
        red.identity_holds
    );
    Ok(Report::new(text, json).verified(red.identity_holds))
}

/// `{theta, base}`, the divisor `theta·Θ + p*base`.
#[derive(Debug, Deserialize)]
struct DivisorSpec {
    #[serde(with = "serde_rational", default = "Rational::zero")]
    theta: Rational,
    #[serde(with = "serde_rational_vec")]
    base: Vec<Rational>,
}

impl DivisorSpec {
    fn to_class(&self, model: &FibrationModel) -> Result<ChowClass, CliError> {
        Ok(ChowClass::make_divisor(
            self.theta.clone(),
            self.base.clone(),
            model,
        )?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Factor {
    Divisor(DivisorSpec),
    Class(ChowClass),
}

pub fn chow_eval(args: &ChowEvalArgs) -> Result<Report, CliError> {
    let model: FibrationModel = load(&args.model)?;
    let factors: Vec<Factor> = load(&args.input)?;
    let classes = factors
        .iter()
        .map(|f| match f {
            Factor::Divisor(d) => d.to_class(&model),
            Factor::Class(c) => {
                model.check_shape(c)?;
                Ok(c.clone())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let product = chow::product(&classes, &model)?;
    let degree = chow::degree(&product, &model);
    let json = json!({ "product": serde_json::to_value(&product)?, "degree": q(&degree) });
    Ok(Report::new(format!("degree {}", format_rational(&degree)), json))
}

fn chern_text(ch: &ChernData) -> String {
    let list = |v: &[Rational]| {
        v.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "n = {}\nx = {}\nS = [{}]\neta = [{}]\na = {}\ns = {}",
        ch.rank,
        ch.section_coeff,
        list(&ch.ch1_base),
        list(&ch.ch2_theta),
        format_rational(&ch.ch2_fiber),
        format_rational(&ch.top)
    )
}

pub fn fm_transform(args: &FmArgs) -> Result<Report, CliError> {
    let model: FibrationModel = load(&args.model)?;
    let ch: ChernData = load(&args.input)?;
    ch.validate(&model)?;
    let out = chern::fm_transform(&ch, &model)?;
    Ok(Report::new(chern_text(&out), serde_json::to_value(&out)?))
}

pub fn central_charge(args: &ChargeArgs) -> Result<Report, CliError> {
    let model: FibrationModel = load(&args.model)?;
    let ch: ChernData = load(&args.input)?;
    ch.validate(&model)?;
    let omega: DivisorSpec = load(&args.omega)?;
    let v: Vec<Rational> = match &args.b {
        Some(src) => serde_rational_vec::deserialize(load_json(src)?)?,
        None => vec![Rational::zero(); model.base_rank()],
    };
    let params = StabilityParams::new(
        omega.to_class(&model)?,
        chern::pullback_field(&v, &model)?,
        args.delta.clone(),
        &model,
    )?;
    let z = stability::central_charge(&ch, &params, &model)?;
    let g = stability::gammas(&params, &model)?;
    let json = json!({
        "re": q(&z.re), "im": q(&z.im),
        "gamma": q(&g.gamma), "gamma_prime": q(&g.gamma_prime),
    });
    let text = format!(
        "Z = {} + i·({})",
        format_rational(&z.re),
        format_rational(&z.im)
    );
    Ok(Report::new(text, json))
}

fn solution_json(sol: &ConstraintSolution) -> Result<Value, CliError> {
    Ok(serde_json::to_value(sol)?)
}

pub fn solve_constraints(args: &ConstraintArgs) -> Result<Report, CliError> {
    let model: FibrationModel = load(&args.model)?;
    let sol = stability::solve_constraints(&args.k, &args.l, &model)?;
    let zero_v = vec![Rational::zero(); model.base_rank()];
    let res = stability::constraint_residuals(
        &sol.barred_params(&zero_v, &model)?,
        &sol.unbarred_params(&zero_v, &model)?,
        &model,
    )?;
    let mut json = solution_json(&sol)?;
    json.as_object_mut().expect("object").insert(
        "residuals".into(),
        json!({
            "c1": surd(&res.c1), "c2": surd(&res.c2), "c3": surd(&res.c3), "c4": surd(&res.c4),
            "c3_theta": surd(&res.c3_theta),
        }),
    );
    let text = format!(
        "k = {}, l = {}, r = {}\nu = {}\nv = {}\nepsilon = {}\ndelta = {}\ngamma = {}\ngamma' = {}\n\
         all positive: {}\nconstraint residuals zero: {} (theta pairing of the third: {})",
        format_rational(&sol.k),
        format_rational(&sol.l),
        format_rational(&sol.r),
        sol.u,
        sol.v,
        format_rational(&sol.epsilon),
        format_rational(&sol.delta),
        format_rational(&sol.gamma),
        sol.gamma_prime,
        sol.positive,
        res.all_zero(),
        res.c3_theta
    );
    Ok(Report::new(text, json).verified(res.all_zero()))
}

pub fn verify_cceq(args: &VerifyArgs) -> Result<Report, CliError> {
    let model: FibrationModel = load(&args.model)?;
    let (k, l) = match &args.input {
        Some(src) => {
            let v = load_json(src)?;
            (
                require(field_rational(&v, "k")?, "k")?,
                require(field_rational(&v, "l")?, "l")?,
            )
        }
        None => (require(args.k.clone(), "k")?, require(args.l.clone(), "l")?),
    };
    let sol = match &args.c1_shift {
        None => stability::solve_constraints(&k, &l, &model)?,
        Some(shift) => {
            let r = threefold_r(&k, &l, model.h())? + shift;
            stability::solve_with_target(&k, &l, &r, &model)?
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let inputs: Vec<(Vec<Rational>, ChernData)> = (0..args.samples)
        .map(|_| {
            let v = sample::rationals(&mut rng, model.base_rank(), 6, 5);
            (v, sample::chern_data(&mut rng, &model))
        })
        .collect();
    let reports = inputs
        .par_iter()
        .map(|(v, ch)| {
            stability::verify_cceq(
                ch,
                v,
                &sol.barred_params(v, &model)?,
                &sol.unbarred_params(v, &model)?,
                &model,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;

    let nonzero: Vec<usize> = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.residual.is_zero())
        .map(|(i, _)| i)
        .collect();
    let assumption_holds = reports.iter().all(|r| r.assumption_holds);
    let first = nonzero.first().map(|&i| {
        let res = &reports[i].residual;
        json!({ "sample": i, "re": surd(&res.re), "im": surd(&res.im) })
    });
    let json = json!({
        "k": q(&k), "l": q(&l), "r": q(&sol.r),
        "samples": args.samples, "seed": args.seed,
        "nonzero": nonzero.len(),
        "first_nonzero": first.unwrap_or(Value::Null),
        "assumption_holds": assumption_holds,
    });
    let csv = std::iter::once("sample,re,im".to_string())
        .chain(
            reports
                .iter()
                .enumerate()
                .map(|(i, r)| format!("{i},{},{}", r.residual.re, r.residual.im)),
        )
        .collect::<Vec<_>>()
        .join("\n");
    let text = if nonzero.is_empty() {
        format!(
            "residual 0 on {} samples (seed {}); gamma, gamma' > 0: {assumption_holds}",
            args.samples, args.seed
        )
    } else {
        format!(
            "nonzero residual on {} of {} samples (seed {}), first at sample {}",
            nonzero.len(),
            args.samples,
            args.seed,
            nonzero[0]
        )
    };
    Ok(Report::new(text, json)
        .with_csv(csv)
        .verified(nonzero.is_empty()))
}

fn sweep_points(args: &SweepArgs) -> Result<Vec<f64>, CliError> {
    let mut ws = if !args.w.is_empty() {
        args.w.clone()
    } else {
        let (from, to, steps) = match (args.from, args.to, args.steps) {
            (Some(f), Some(t), Some(s)) if s >= 1 => (f, t, s),
            _ => {
                return Err(CliError::Usage(
                    "give --w a,b,... or --from, --to and --steps ≥ 1".into(),
                ))
            }
        };
        if steps == 1 {
            vec![from]
        } else {
            (0..steps)
                .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
                .collect()
        }
    };
    if ws.iter().any(|w| !w.is_finite()) {
        return Err(CliError::Usage("sample points must be finite".into()));
    }
    ws.sort_by(f64::total_cmp);
    Ok(ws)
}

pub fn sweep(args: &SweepArgs) -> Result<Report, CliError> {
    let SeriesInput { a, b, n } = series_input(&args.series)?;
    let u = series_solve(&a, &b, n)?;
    let ws = sweep_points(args)?;
    let rows: Vec<SweepRow> = ws
        .par_iter()
        .map(|&w| match catalan::sweep_row(&u, &a, &b, w) {
            Ok(row) => Ok(row),
            Err(fibcat::Error::OutsideRadius(_)) => Ok(SweepRow {
                w,
                partial_sum: u.evaluate_f64(w),
                closed_root: f64::NAN,
                abs_error: f64::NAN,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;

    let header = "w,partial_sum_N,closed_root,abs_error";
    let line = |r: &SweepRow, sep: &str| {
        [r.w, r.partial_sum, r.closed_root, r.abs_error]
            .map(csv_float)
            .join(sep)
    };
    let csv = std::iter::once(header.to_string())
        .chain(rows.iter().map(|r| line(r, ",")))
        .collect::<Vec<_>>()
        .join("\n");
    let text = std::iter::once(format!(
        "{:>24}  {:>24}  {:>24}  {:>24}",
        "w", "partial_sum_N", "closed_root", "abs_error"
    ))
    .chain(rows.iter().map(|r| {
        [r.w, r.partial_sum, r.closed_root, r.abs_error]
            .map(|x| format!("{:>24}", csv_float(x)))
            .join("  ")
    }))
    .collect::<Vec<_>>()
    .join("\n");
    let json = json!({
        "A": q(&a), "B": q(&b), "N": n,
        "rows": rows.iter().map(|r| json!({
            "w": json_float(r.w),
            "partial_sum": json_float(r.partial_sum),
            "closed_root": json_float(r.closed_root),
            "abs_error": json_float(r.abs_error),
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json).with_csv(csv))
}
