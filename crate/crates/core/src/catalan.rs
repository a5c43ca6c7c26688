//! Catalan numbers and the quadratic implicit series `u = (A + B u²) w`.
//!
//! The unique series solution with `u(0) = 0` is
//! `u = Σ cᵢ A^{i+1} Bⁱ w^{2i+1}`, where `cᵢ` is the i-th Catalan number.
//! Its radius of convergence is `1 / (2√|AB|)`.
//!
//! ```
//! use fibcat::catalan::{residual_series, series_solve};
//! use fibcat::rational::int;
//!
//! let u = series_solve(&int(1), &int(1), 7).unwrap();
//! let odd: Vec<_> = (0..4).map(|i| u.coefficient(2 * i + 1).clone()).collect();
//! assert_eq!(odd, vec![int(1), int(1), int(2), int(5)]);
//! assert!(residual_series(&int(1), &int(1), 25).unwrap().is_zero());
//! ```

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, ratio, to_f64, Rational};
use crate::series::RationalSeries;

/// Extra degrees computed before a residual is formed.
pub const GUARD_DEGREES: usize = 2;

fn catalan_table() -> &'static Mutex<Vec<BigUint>> {
    static TABLE: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigUint::one()]))
}

/// `cₙ = Σ_{i+j=n-1} cᵢ cⱼ`, `c₀ = 1`, memoized across calls.
pub fn catalan_number(n: usize) -> BigUint {
    let mut table = catalan_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        let next: BigUint = (0..m).map(|i| &table[i] * &table[m - 1 - i]).sum();
        table.push(next);
    }
    table[n].clone()
}

/// `c₀, …, c_upto`.
pub fn catalan_numbers(upto: usize) -> Vec<BigUint> {
    catalan_number(upto);
    let table = catalan_table().lock().unwrap_or_else(|e| e.into_inner());
    table[..=upto].to_vec()
}

fn require_nonzero_a(a: &Rational) -> Result<()> {
    if a.is_zero() {
        return Err(Error::Invalid("A must be nonzero".into()));
    }
    Ok(())
}

/// The series solution of `u = (A + B u²) w`, truncated at degree `order`.
pub fn series_solve(a: &Rational, b: &Rational, order: usize) -> Result<RationalSeries> {
    require_nonzero_a(a)?;
    let mut u = RationalSeries::zero(order);
    let mut weight = a.clone();
    let mut i = 0;
    while 2 * i < order {
        let c = Rational::from_integer(BigInt::from(catalan_number(i)));
        *u.coefficient_mut(2 * i + 1) = c * &weight;
        weight *= a * b;
        i += 1;
    }
    Ok(u)
}

/// `u − (A + B u²) w`, truncated at `order`.
pub fn implicit_residual(u: &RationalSeries, a: &Rational, b: &Rational, order: usize) -> RationalSeries {
    let u = u.truncate(order);
    let rhs = (&RationalSeries::constant(a.clone(), order) + &u.square().scale(b)).shift(1);
    &u - &rhs
}

/// Residual of [`series_solve`] computed with [`GUARD_DEGREES`] extra degrees
/// and reported on degrees `0..=order`.
pub fn residual_series(a: &Rational, b: &Rational, order: usize) -> Result<RationalSeries> {
    let u = series_solve(a, b, order + GUARD_DEGREES)?;
    Ok(implicit_residual(&u, a, b, order))
}

/// A radius of convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    pub fn value(&self) -> f64 {
        match self {
            Radius::Finite(r) => *r,
            Radius::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Radius::Finite(_))
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => ser.serialize_f64(*r),
            Radius::Infinite => ser.serialize_str("infinite"),
        }
    }
}

/// `1 / (2√|AB|)`; infinite when `B = 0`.
pub fn radius(a: &Rational, b: &Rational) -> Result<Radius> {
    require_nonzero_a(a)?;
    if b.is_zero() {
        return Ok(Radius::Infinite);
    }
    Ok(Radius::Finite(0.5 * to_f64(&(a * b).abs().recip()).sqrt()))
}

/// `1 / √|rh|`; infinite when `h = 0`.
pub fn radius_prop41(r: &Rational, h: &Rational) -> Result<Radius> {
    if r.is_zero() {
        return Err(Error::Invalid("r must be nonzero".into()));
    }
    if h.is_zero() {
        return Ok(Radius::Infinite);
    }
    Ok(Radius::Finite(to_f64(&(r * h).abs().recip()).sqrt()))
}

/// Ratio-test estimate `|a_j / a_k|^{1/(k-j)}` from the last two nonzero
/// coefficients. `None` with fewer than two nonzero coefficients.
pub fn ratio_test_radius(series: &RationalSeries) -> Option<f64> {
    let mut nonzero = series
        .coefficients()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero());
    let (k, ak) = nonzero.next()?;
    let (j, aj) = nonzero.next()?;
    let q = (aj / ak).abs();
    Some(to_f64(&q).powf(1.0 / (k - j) as f64))
}

/// The root of `B w u² − u + A w = 0` with `u → 0` as `w → 0`.
///
/// Evaluated as `2Aw / (1 + √(1 − 4ABw²))`, which equals
/// `(1 − √(1 − 4ABw²)) / (2Bw)` without the cancellation near `w = 0`.
pub fn closed_form_root(a: &Rational, b: &Rational, w: f64) -> Result<f64> {
    let (a, b) = (to_f64(a), to_f64(b));
    if w == 0.0 {
        return Ok(0.0);
    }
    if b == 0.0 {
        return Ok(a * w);
    }
    let disc = 1.0 - 4.0 * a * b * w * w;
    if disc < 0.0 {
        return Err(Error::OutsideRadius(format!("discriminant {disc} at w = {w}")));
    }
    Ok(2.0 * a * w / (1.0 + disc.sqrt()))
}

/// The branch of the same quadratic that blows up as `w → 0`.
#[cfg(feature = "debug-branch")]
pub fn closed_form_other_root(a: &Rational, b: &Rational, w: f64) -> Result<f64> {
    let (a, b) = (to_f64(a), to_f64(b));
    if b == 0.0 || w == 0.0 {
        return Err(Error::DivisionByZero("the second branch needs B w ≠ 0".into()));
    }
    let disc = 1.0 - 4.0 * a * b * w * w;
    if disc < 0.0 {
        return Err(Error::OutsideRadius(format!("discriminant {disc} at w = {w}")));
    }
    Ok((1.0 + disc.sqrt()) / (2.0 * b * w))
}

/// One row of a numeric sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub w: f64,
    pub partial_sum: f64,
    pub closed_root: f64,
    pub abs_error: f64,
}

/// Compares the truncated sum of `u` against [`closed_form_root`] at `w`.
pub fn sweep_row(u: &RationalSeries, a: &Rational, b: &Rational, w: f64) -> Result<SweepRow> {
    let partial_sum = u.evaluate_f64(w);
    let closed_root = closed_form_root(a, b, w)?;
    Ok(SweepRow {
        w,
        partial_sum,
        closed_root,
        abs_error: (partial_sum - closed_root).abs(),
    })
}

/// `hu² + 2vu = r` for a divisor `uΘ + v p*H`-type class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop41Params {
    pub r: Rational,
    pub h: Rational,
    pub v: Rational,
}

impl Prop41Params {
    pub fn new(r: Rational, h: Rational, v: Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::Invalid("r must be nonzero".into()));
        }
        if !v.is_positive() {
            return Err(Error::Invalid("v must be positive".into()));
        }
        Ok(Prop41Params { r, h, v })
    }

    /// The series variable `1/(2v)`.
    pub fn w(&self) -> Rational {
        (int(2) * &self.v).recip()
    }

    pub fn a(&self) -> Rational {
        self.r.clone()
    }

    pub fn b(&self) -> Rational {
        -self.h.clone()
    }

    /// The root `u > 0` of `hu² + 2vu − r = 0` on the branch through `r/(2v)`.
    pub fn exact_root(&self) -> Result<f64> {
        closed_form_root(&self.a(), &self.b(), to_f64(&self.w()))
    }
}

/// `u` as a series in `w = 1/(2v)`: `u = Σ cᵢ r^{i+1} (−h)ⁱ w^{2i+1}`.
pub fn prop41_series(p: &Prop41Params, order: usize) -> Result<RationalSeries> {
    series_solve(&p.a(), &p.b(), order)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop41Check {
    /// Truncated sum at `w = 1/(2v)`, exact.
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    pub u_partial: Rational,
    /// `|h u² + 2v u − r|` at the truncated `u`, exact.
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    pub residual: Rational,
    pub residual_f64: f64,
    /// Whether `u − (r − hu²) w` vanishes through the truncation order.
    pub formal_residual_zero: bool,
    pub radius: Radius,
}

pub fn prop41_check(p: &Prop41Params, order: usize) -> Result<Prop41Check> {
    let u = prop41_series(p, order)?;
    let u_partial = u.evaluate(&p.w());
    let residual =
        (&p.h * &u_partial * &u_partial + int(2) * &p.v * &u_partial - &p.r).abs();
    let formal_residual_zero = residual_series(&p.a(), &p.b(), order)?.is_zero();
    Ok(Prop41Check {
        residual_f64: to_f64(&residual),
        u_partial,
        residual,
        formal_residual_zero,
        radius: radius_prop41(&p.r, &p.h)?,
    })
}

/// Surface data `m`, `α`, `e` with `r = 2(m + α − e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceExampleParams {
    pub m: Rational,
    pub alpha: Rational,
    pub e: Rational,
}

impl SurfaceExampleParams {
    pub fn r(&self) -> Rational {
        int(2) * (&self.m + &self.alpha - &self.e)
    }
}

/// `u = (P + Q u²) (1/v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReduction {
    #[serde(rename = "P", serialize_with = "crate::rational::serde_rational::serialize")]
    pub p: Rational,
    #[serde(rename = "Q", serialize_with = "crate::rational::serde_rational::serialize")]
    pub q: Rational,
    pub variable: &'static str,
    pub identity_holds: bool,
}

/// `−e u² + 2u(um + v) − 2(m + α − e) − 2(uv − P − Q u²)` with
/// `P = m + α − e`, `Q = −(m − e/2)`, in `ℚ[u, v, m, α, e]`.
pub fn surface_identity_defect() -> Poly {
    const N: usize = 5;
    let [u, v, m, alpha, e] = [0, 1, 2, 3, 4].map(|i| Poly::var(i, N));
    let two = Poly::constant(int(2), N);
    let half = ratio(1, 2);

    let v_tilde = &(&u * &m) + &v;
    let r = &two * &(&(&m + &alpha) - &e);
    let relation = &(&(&-&e * &(&u * &u)) + &(&two * &(&u * &v_tilde))) - &r;

    let p = &(&m + &alpha) - &e;
    let q = -&(&m - &e.scale(&half));
    let reduced = &two * &(&(&u * &v) - &(&p + &(&q * &(&u * &u))));
    &relation - &reduced
}

pub fn surface_reduction(sp: &SurfaceExampleParams) -> SurfaceReduction {
    SurfaceReduction {
        p: &sp.m + &sp.alpha - &sp.e,
        q: -(&sp.m - &sp.e / int(2)),
        variable: "1/v",
        identity_holds: surface_identity_defect().is_zero(),
    }
}

/// `r = 2(hk + l) / k`.
pub fn threefold_r(k: &Rational, l: &Rational, h: &Rational) -> Result<Rational> {
    if k.is_zero() {
        return Err(Error::DivisionByZero("k must be nonzero".into()));
    }
    Ok(int(2) * (h * k + l) / k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binomial_catalan(n: u64) -> BigUint {
        let mut c = BigUint::one();
        for i in 0..n {
            c = c * BigUint::from(2 * n - i) / BigUint::from(i + 1);
        }
        c / BigUint::from(n + 1)
    }

    #[test]
    fn first_catalan_numbers() {
        let got: Vec<u64> = catalan_numbers(6).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(catalan_number(1), catalan_number(0) * catalan_number(0));
    }

    #[test]
    fn recurrence_matches_binomial_form() {
        for n in 0..=30 {
            assert_eq!(catalan_number(n as usize), binomial_catalan(n), "n = {n}");
        }
    }

    #[test]
    fn b_zero_gives_linear_solution() {
        let u = series_solve(&ratio(3, 7), &int(0), 9).unwrap();
        let mut expected = RationalSeries::zero(9);
        *expected.coefficient_mut(1) = ratio(3, 7);
        assert_eq!(u, expected);
        assert!(residual_series(&ratio(3, 7), &int(0), 9).unwrap().is_zero());
        assert_eq!(radius(&int(1), &int(0)).unwrap(), Radius::Infinite);
    }

    #[test]
    fn coefficient_with_negative_b() {
        let u = series_solve(&int(2), &int(-3), 5).unwrap();
        assert_eq!(*u.coefficient(5), int(144));
        assert_eq!(*u.coefficient(3), int(-12));
    }

    #[test]
    fn a_zero_is_rejected() {
        assert!(matches!(series_solve(&int(0), &int(1), 3), Err(Error::Invalid(_))));
        assert!(radius(&int(0), &int(1)).is_err());
        assert!(radius_prop41(&int(0), &int(1)).is_err());
    }

    #[test]
    fn perturbation_shows_at_its_degree() {
        let mut u = series_solve(&int(1), &int(1), 12).unwrap();
        *u.coefficient_mut(5) += ratio(1, 3);
        let res = implicit_residual(&u, &int(1), &int(1), 10);
        assert_eq!(res.first_nonzero_degree(), Some(5));
        assert_eq!(*res.coefficient(5), ratio(1, 3));
    }

    #[test]
    fn radii() {
        assert_eq!(radius(&int(1), &int(1)).unwrap(), Radius::Finite(0.5));
        assert_eq!(
            radius_prop41(&int(2), &int(-1)).unwrap(),
            Radius::Finite(std::f64::consts::FRAC_1_SQRT_2)
        );
        assert_eq!(radius_prop41(&int(2), &int(0)).unwrap(), Radius::Infinite);
    }

    #[test]
    fn ratio_estimate_close_to_formula() {
        let u = series_solve(&int(1), &int(1), 199).unwrap();
        let est = ratio_test_radius(&u).unwrap();
        assert!((est - 0.5).abs() / 0.5 < 0.01, "estimate {est}");
        assert_eq!(ratio_test_radius(&RationalSeries::variable(3)), None);
    }

    #[test]
    fn closed_root_values() {
        assert_eq!(closed_form_root(&int(1), &int(1), 0.0).unwrap(), 0.0);
        let u = closed_form_root(&int(1), &int(1), 0.1).unwrap();
        let naive = (1.0 - 0.96f64.sqrt()) / 0.2;
        assert!((u - naive).abs() < 1e-14);
        assert!((u - (1.0 + u * u) * 0.1).abs() < 1e-14);
        assert!(matches!(
            closed_form_root(&int(1), &int(1), 0.6),
            Err(Error::OutsideRadius(_))
        ));
        assert_eq!(closed_form_root(&int(3), &int(0), 0.5).unwrap(), 1.5);
    }

    #[cfg(feature = "debug-branch")]
    #[test]
    fn roots_multiply_to_a_over_b() {
        let (a, b) = (int(2), int(3));
        let u1 = closed_form_root(&a, &b, 0.1).unwrap();
        let u2 = closed_form_other_root(&a, &b, 0.1).unwrap();
        assert!((u1 * u2 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn prop41_with_h_zero_is_one_term() {
        let p = Prop41Params::new(int(3), int(0), int(2)).unwrap();
        let u = prop41_series(&p, 15).unwrap();
        assert_eq!(u.first_nonzero_degree(), Some(1));
        assert_eq!(u.evaluate(&p.w()), ratio(3, 4));
        let check = prop41_check(&p, 15).unwrap();
        assert!(check.residual.is_zero());
        assert_eq!(check.radius, Radius::Infinite);
    }

    #[test]
    fn prop41_converges_to_quadratic_root() {
        let p = Prop41Params::new(int(2), int(1), int(2)).unwrap();
        let check = prop41_check(&p, 120).unwrap();
        let root = -2.0 + 6f64.sqrt();
        assert!((to_f64(&check.u_partial) - root).abs() < 1e-12);
        assert!((p.exact_root().unwrap() - root).abs() < 1e-15);
        assert!(check.residual_f64 < 1e-10);
        assert!(check.formal_residual_zero);
    }

    #[test]
    fn prop41_params_validation() {
        assert!(Prop41Params::new(int(0), int(1), int(1)).is_err());
        assert!(Prop41Params::new(int(1), int(1), int(0)).is_err());
        assert!(Prop41Params::new(int(1), int(1), int(-2)).is_err());
    }

    #[test]
    fn surface_identity_is_formal() {
        assert!(surface_identity_defect().is_zero());
        let red = surface_reduction(&SurfaceExampleParams {
            m: int(0),
            alpha: ratio(5, 2),
            e: int(0),
        });
        assert_eq!((red.p, red.q), (ratio(5, 2), int(0)));
        assert!(red.identity_holds);
    }

    #[test]
    fn threefold_r_values() {
        assert_eq!(threefold_r(&int(1), &int(1), &int(0)).unwrap(), int(2));
        assert_eq!(threefold_r(&int(2), &int(1), &int(-1)).unwrap(), int(-1));
        assert!(matches!(
            threefold_r(&int(0), &int(1), &int(1)),
            Err(Error::DivisionByZero(_))
        ));
    }

    proptest! {
        #[test]
        fn residual_vanishes(an in -20i64..20, ad in 1i64..8, bn in -20i64..20, bd in 1i64..8, n in 0usize..=40) {
            prop_assume!(an != 0);
            let (a, b) = (ratio(an, ad), ratio(bn, bd));
            prop_assert!(residual_series(&a, &b, n).unwrap().is_zero());
        }

        #[test]
        fn coefficient_formula(an in -9i64..9, bn in -9i64..9, i in 0usize..12) {
            prop_assume!(an != 0);
            let u = series_solve(&int(an), &int(bn), 2 * i + 1).unwrap();
            let expected = Rational::from_integer(BigInt::from(catalan_number(i)))
                * num_traits::pow(int(an), i + 1)
                * num_traits::pow(int(bn), i);
            prop_assert_eq!(u.coefficient(2 * i + 1), &expected);
            for d in (0..=2 * i + 1).step_by(2) {
                prop_assert!(u.coefficient(d).is_zero());
            }
        }

        #[test]
        fn surface_identity_pointwise(vals in proptest::collection::vec(-30i64..30, 5)) {
            let point: Vec<Rational> = vals.iter().map(|&x| ratio(x, 3)).collect();
            prop_assert!(surface_identity_defect().evaluate(&point).is_zero());
        }
    }
}
