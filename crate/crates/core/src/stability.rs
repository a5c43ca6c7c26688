//! Central charges on an elliptic threefold and the linear system that makes
//! the Fourier–Mukai transform act on them by a diagonal matrix.
//!
//! With `ω̄ = kΘ + l·p*H`, `ω = uΘ + v·p*H`, `B = p*V` and
//! `B̄ = B − ½p*K_Y`, the equation
//!
//! ```text
//! Z^δ_{ω,B}(ΦE) = diag(6γ/(εω̄³), 2γ′/(ω̄²Θ)) · (−i)·Z^ε_{ω̄,B̄}(E)
//! ```
//!
//! holds for every `E` once four scalar constraints hold. [`solve_constraints`]
//! produces a one-parameter family of solutions indexed by `(k, l)`; `u` is a
//! square root, so the ω side is computed in [`Surd`] arithmetic.

use num_traits::Zero;
use serde::Serialize;

use crate::chern::{self, ChernData};
use crate::chow::{self, ChowClass, FibrationModel};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::scalar::{Scalar, Surd};

/// A polarization `ω`, a B-field and the scaling `δ` of the `ω³` term.
///
/// The B-field must be a pullback divisor `p*V`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityParams<F = Rational> {
    pub omega: ChowClass<F>,
    pub b_field: ChowClass<Rational>,
    pub delta: F,
}

impl<F: Scalar> StabilityParams<F> {
    pub fn new(
        omega: ChowClass<F>,
        b_field: ChowClass<Rational>,
        delta: F,
        model: &FibrationModel,
    ) -> Result<Self> {
        require_threefold(model)?;
        model.check_shape(&omega)?;
        model.check_shape(&b_field)?;
        if !omega.is_divisor() {
            return Err(Error::Invalid("ω must be a divisor".into()));
        }
        if !b_field.is_divisor() || !b_field.theta_coefficient().is_zero() {
            return Err(Error::Invalid(
                "B-field must be a pullback divisor p*V (no Θ component)".into(),
            ));
        }
        if !delta.is_gt_zero() {
            return Err(Error::Invalid("δ must be positive".into()));
        }
        Ok(StabilityParams {
            omega,
            b_field,
            delta,
        })
    }

    /// `ω = uΘ + v·p*H` with `B = b_field`.
    pub fn in_span(
        u: F,
        v: F,
        b_field: ChowClass<Rational>,
        delta: F,
        model: &FibrationModel,
    ) -> Result<Self> {
        Self::new(ChowClass::span_divisor(model, u, v), b_field, delta, model)
    }

    /// True when both coefficients of `ω` in `{Θ, p*H}` are positive.
    pub fn is_ample_candidate(&self, model: &FibrationModel) -> bool {
        matches!(self.omega.span_coordinates(model), Some((u, v)) if u.is_gt_zero() && v.is_gt_zero())
    }
}

/// A complex number with exact real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Charge<F> {
    pub re: F,
    pub im: F,
}

impl<F: Scalar> Charge<F> {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn minus(&self, other: &Charge<F>) -> Charge<F> {
        Charge {
            re: self.re.clone() - other.re.clone(),
            im: self.im.clone() - other.im.clone(),
        }
    }

    fn plus(&self, other: &Charge<F>) -> Charge<F> {
        Charge {
            re: self.re.clone() + other.re.clone(),
            im: self.im.clone() + other.im.clone(),
        }
    }
}

fn require_threefold(model: &FibrationModel) -> Result<()> {
    if model.is_threefold() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "central charges are implemented for threefolds only".into(),
        ))
    }
}

fn deg<F: Scalar>(classes: &[ChowClass<F>], model: &FibrationModel) -> Result<F> {
    Ok(chow::degree(&chow::product(classes, model)?, model))
}

fn q<F: Scalar>(x: Rational) -> F {
    F::from(x)
}

fn divide<F: Scalar>(num: F, den: &F, what: &str) -> Result<F> {
    num.checked_div(den)
        .ok_or_else(|| Error::DivisionByZero(what.to_string()))
}

/// `Z^δ_{ω,B}` evaluated on an arbitrary total Chern class:
/// `−ch₃^B + ½ω²·ch₁^B + i(ω·ch₂^B − δ(ω³/6)ch₀^B)`.
pub fn central_charge_class<F: Scalar>(
    ch: &ChowClass,
    params: &StabilityParams<F>,
    model: &FibrationModel,
) -> Result<Charge<F>> {
    require_threefold(model)?;
    let twisted: ChowClass<F> = chern::twist_class(ch, &params.b_field, model)?.lift();
    let w = &params.omega;
    let w2 = chow::mul(w, w, model)?;
    let w3 = chow::mul(&w2, w, model)?;
    let ch0 = twisted.part(0).expect("degree 0").pull[0].clone();
    let ch1 = twisted.homogeneous(1);
    let ch2 = twisted.homogeneous(2);
    let ch3 = twisted.homogeneous(3);

    let re = -chow::degree(&ch3, model)
        + chow::degree(&chow::mul(&w2, &ch1, model)?, model).scale(&ratio(1, 2));
    let im = chow::degree(&chow::mul(w, &ch2, model)?, model)
        - params.delta.clone() * chow::degree(&w3, model).scale(&ratio(1, 6)) * ch0;
    Ok(Charge { re, im })
}

/// `Z^δ_{ω,B}(E)`; with `δ = 1` this is the unmodified `Z_{ω,B}`.
pub fn central_charge<F: Scalar>(
    ch: &ChernData,
    params: &StabilityParams<F>,
    model: &FibrationModel,
) -> Result<Charge<F>> {
    central_charge_class(&ch.to_class(model)?, params, model)
}

/// `γ = ½ω²Θ − (1/24)K_Y²` and `γ′ = (1/24)K_Y²·(ωf) + (δ/6)ω³`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPair<F = Rational> {
    pub gamma: F,
    pub gamma_prime: F,
}

impl<F: Scalar> GammaPair<F> {
    pub fn both_positive(&self) -> bool {
        self.gamma.is_gt_zero() && self.gamma_prime.is_gt_zero()
    }
}

pub fn gammas<F: Scalar>(params: &StabilityParams<F>, model: &FibrationModel) -> Result<GammaPair<F>> {
    require_threefold(model)?;
    let w = &params.omega;
    let theta = ChowClass::theta(model);
    let fiber = ChowClass::fiber(model);
    let k2: F = q(model.canonical_squared() * ratio(1, 24));
    let w2_theta = deg(&[w.clone(), w.clone(), theta], model)?;
    let w_f = deg(&[w.clone(), fiber], model)?;
    let w3 = deg(&[w.clone(), w.clone(), w.clone()], model)?;
    Ok(GammaPair {
        gamma: w2_theta.scale(&ratio(1, 2)) - k2.clone(),
        gamma_prime: k2 * w_f + params.delta.clone() * w3.scale(&ratio(1, 6)),
    })
}

/// Residuals of the four matching constraints.
///
/// * `c1`: `ω²·p*η̂ = (2ω̄Θ/(ω̄f))·p*η̂`, as `hu²+2uv − 2(hk+l)/k`;
/// * `c2`: `γ = εω̄³/(6·ω̄f)`;
/// * `c3`: `(ωf/2)·ω̄² = ωΘ` paired with `p*H`, as `(hu+v) − u(hk²+2kl)/2`;
/// * `c4`: `γ′ = (ωf)(ω̄²Θ)/2`.
///
/// `c3_theta` pairs the `c3` class equation with `Θ` instead; it is not
/// needed for the central-charge equation and is reported separately.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintResiduals<F = Rational> {
    pub c1: F,
    pub c2: F,
    pub c3: F,
    pub c4: F,
    pub c3_theta: F,
}

impl<F: Scalar> ConstraintResiduals<F> {
    /// `c1..c4` all vanish (`c3_theta` is not consulted).
    pub fn all_zero(&self) -> bool {
        [&self.c1, &self.c2, &self.c3, &self.c4]
            .iter()
            .all(|c| c.is_zero())
    }
}

pub fn constraint_residuals<F: Scalar>(
    barred: &StabilityParams<F>,
    unbarred: &StabilityParams<F>,
    model: &FibrationModel,
) -> Result<ConstraintResiduals<F>> {
    require_threefold(model)?;
    for (name, p) in [("ω̄", barred), ("ω", unbarred)] {
        if p.omega.span_coordinates(model).is_none() {
            return Err(Error::Invalid(format!("{name} must lie in span{{Θ, p*H}}")));
        }
    }
    let wb = &barred.omega;
    let w = &unbarred.omega;
    let theta = ChowClass::theta(model);
    let fiber = ChowClass::fiber(model);
    let ph = ChowClass::pullback_h(model);
    let d: F = q(model.d().clone());

    let k = deg(&[wb.clone(), fiber.clone()], model)?;
    if k.is_zero() {
        return Err(Error::DivisionByZero("ω̄·f = k is zero".into()));
    }
    let u = deg(&[w.clone(), fiber], model)?;
    let g = gammas(unbarred, model)?;

    let w2_ph = deg(&[w.clone(), w.clone(), ph.clone()], model)?;
    let wb_theta_ph = deg(&[wb.clone(), theta.clone(), ph.clone()], model)?;
    let c1 = divide(
        w2_ph - divide(wb_theta_ph.scale(&int(2)), &k, "k")?,
        &d,
        "d = H·H",
    )?;

    let wb3 = deg(&[wb.clone(), wb.clone(), wb.clone()], model)?;
    let c2 = g.gamma.clone()
        - divide(barred.delta.clone() * wb3, &k.scale(&int(6)), "k")?;

    let w_theta_ph = deg(&[w.clone(), theta.clone(), ph.clone()], model)?;
    let wb2_ph = deg(&[wb.clone(), wb.clone(), ph], model)?;
    let c3 = divide(
        w_theta_ph - u.clone() * wb2_ph.scale(&ratio(1, 2)),
        &d,
        "d = H·H",
    )?;

    let wb2_theta = deg(&[wb.clone(), wb.clone(), theta.clone()], model)?;
    let c4 = g.gamma_prime - u.clone() * wb2_theta.scale(&ratio(1, 2));

    let w_theta2 = deg(&[w.clone(), theta.clone(), theta], model)?;
    let c3_theta = w_theta2 - u * wb2_theta.scale(&ratio(1, 2));

    Ok(ConstraintResiduals {
        c1,
        c2,
        c3,
        c4,
        c3_theta,
    })
}

/// A member of the solution family, with `(k, l)` as free parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintSolution {
    #[serde(with = "crate::rational::serde_rational")]
    pub k: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub l: Rational,
    /// `hu² + 2uv`, the target of the first constraint.
    #[serde(with = "crate::rational::serde_rational")]
    pub r: Rational,
    pub u: Surd,
    pub v: Surd,
    #[serde(with = "crate::rational::serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub gamma: Rational,
    pub gamma_prime: Surd,
    /// `u, v, ε, δ, γ, γ′` all positive.
    pub positive: bool,
}

impl ConstraintSolution {
    /// `(ω̄ = kΘ + l·p*H, B̄ = p*V − ½p*K_Y, ε)`.
    pub fn barred_params(&self, v: &[Rational], model: &FibrationModel) -> Result<StabilityParams<Surd>> {
        StabilityParams::in_span(
            Surd::from(self.k.clone()),
            Surd::from(self.l.clone()),
            chern::barred_field(v, model)?,
            Surd::from(self.epsilon.clone()),
            model,
        )
    }

    /// `(ω = uΘ + v·p*H, B = p*V, δ)`.
    pub fn unbarred_params(&self, v: &[Rational], model: &FibrationModel) -> Result<StabilityParams<Surd>> {
        StabilityParams::in_span(
            self.u.clone(),
            self.v.clone(),
            chern::pullback_field(v, model)?,
            Surd::from(self.delta.clone()),
            model,
        )
    }
}

/// Closed-form solution of the four constraints for given `(k, l)`:
///
/// ```text
/// r = 2(hk + l)/k,   u = √(r / (hk² + 2kl − h)),   v = u·((hk² + 2kl)/2 − h)
/// ```
///
/// followed by `ε` from `c2` and `δ` from `c4`.
pub fn solve_constraints(k: &Rational, l: &Rational, model: &FibrationModel) -> Result<ConstraintSolution> {
    require_threefold(model)?;
    if !k.is_gt_zero() || !l.is_gt_zero() {
        return Err(Error::Invalid("k and l must be positive".into()));
    }
    let h = model.h();
    let r = int(2) * (h * k + l) / k;
    solve_with_target(k, l, &r, model)
}

/// As [`solve_constraints`] but with the first constraint's target `r`
/// supplied directly; any `r ≠ 2(hk+l)/k` leaves `c1 = r − 2(hk+l)/k`.
pub fn solve_with_target(
    k: &Rational,
    l: &Rational,
    r: &Rational,
    model: &FibrationModel,
) -> Result<ConstraintSolution> {
    require_threefold(model)?;
    if model.d().is_zero() {
        return Err(Error::Invalid("H·H must be nonzero".into()));
    }
    let h = model.h();
    let h_quad = h * k * k + int(2) * k * l;
    let denom = &h_quad - h;
    if denom.is_zero() {
        return Err(Error::NoRealSolution("hk² + 2kl − h = 0".into()));
    }
    let radicand = r / &denom;
    if radicand.is_zero() {
        return Err(Error::NoRealSolution(
            "r = 0 forces u = 0, so ω is not a polarization".into(),
        ));
    }
    let u = Surd::sqrt(&radicand).ok_or_else(|| {
        Error::NoRealSolution(format!(
            "u² = r/(hk² + 2kl − h) = {} is negative",
            crate::rational::format_rational(&radicand)
        ))
    })?;
    let v = u.clone() * Surd::from(&h_quad * ratio(1, 2) - h);

    let wb = ChowClass::span_divisor(model, Surd::from(k.clone()), Surd::from(l.clone()));
    let w = ChowClass::span_divisor(model, u.clone(), v.clone());
    let theta = ChowClass::theta(model);
    let k2_24 = Surd::from(model.canonical_squared() * ratio(1, 24));

    let gamma = deg(&[w.clone(), w.clone(), theta.clone()], model)?.scale(&ratio(1, 2)) - k2_24.clone();
    let wb3 = deg(&[wb.clone(), wb.clone(), wb.clone()], model)?;
    let epsilon = divide(gamma.scale(&(int(6) * k)), &wb3, "ω̄³ = 0")?;
    let wb2_theta = deg(&[wb.clone(), wb.clone(), theta], model)?;
    let w3 = deg(&[w.clone(), w.clone(), w], model)?;
    let gamma_prime = u.clone() * wb2_theta.scale(&ratio(1, 2));
    let delta = divide(
        (gamma_prime.clone() - k2_24 * u.clone()).scale(&int(6)),
        &w3,
        "ω³ = 0",
    )?;

    let rational = |s: Surd, name: &str| {
        s.to_rational().ok_or_else(|| {
            Error::Invalid(format!("{name} came out irrational; model data inconsistent"))
        })
    };
    let gamma = rational(gamma, "γ")?;
    let epsilon = rational(epsilon, "ε")?;
    let delta = rational(delta, "δ")?;
    let positive = [&u, &v, &gamma_prime].iter().all(|x| x.is_gt_zero())
        && [&epsilon, &delta, &gamma].iter().all(|x| x.is_gt_zero());

    Ok(ConstraintSolution {
        k: k.clone(),
        l: l.clone(),
        r: r.clone(),
        u,
        v,
        epsilon,
        delta,
        gamma,
        gamma_prime,
        positive,
    })
}

/// `diag(6γ/(εω̄³), 2γ′/(ω̄²Θ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingMatrix<F> {
    pub real_scale: F,
    pub imaginary_scale: F,
}

pub fn matching_matrix<F: Scalar>(
    barred: &StabilityParams<F>,
    unbarred: &StabilityParams<F>,
    model: &FibrationModel,
) -> Result<MatchingMatrix<F>> {
    let g = gammas(unbarred, model)?;
    let wb = &barred.omega;
    let wb3 = deg(&[wb.clone(), wb.clone(), wb.clone()], model)?;
    let wb2_theta = deg(&[wb.clone(), wb.clone(), ChowClass::theta(model)], model)?;
    Ok(MatchingMatrix {
        real_scale: divide(g.gamma.scale(&int(6)), &(barred.delta.clone() * wb3), "εω̄³ = 0")?,
        imaginary_scale: divide(g.gamma_prime.scale(&int(2)), &wb2_theta, "ω̄²Θ = 0")?,
    })
}

/// Outcome of one central-charge-equation check.
#[derive(Debug, Clone, PartialEq)]
pub struct CceqReport<F> {
    /// `Z^δ_{ω,B}(ΦE) − M·(−i)Z^ε_{ω̄,B̄}(E)`.
    pub residual: Charge<F>,
    pub gammas: GammaPair<F>,
    /// `γ, γ′ > 0`.
    pub assumption_holds: bool,
}

/// Checks the central-charge equation on `E` with `B = p*V`.
pub fn verify_cceq<F: Scalar>(
    ch: &ChernData,
    v: &[Rational],
    barred: &StabilityParams<F>,
    unbarred: &StabilityParams<F>,
    model: &FibrationModel,
) -> Result<CceqReport<F>> {
    require_threefold(model)?;
    if unbarred.b_field != chern::pullback_field(v, model)? {
        return Err(Error::Invalid("unbarred B-field must equal p*V".into()));
    }
    if barred.b_field != chern::barred_field(v, model)? {
        return Err(Error::Invalid(
            "barred B-field must equal p*V − ½p*K_Y".into(),
        ));
    }
    let lhs = central_charge(&chern::fm_transform(ch, model)?, unbarred, model)?;
    let z = central_charge(ch, barred, model)?;
    let m = matching_matrix(barred, unbarred, model)?;
    // (−i)(X + iY) = Y − iX
    let rhs = Charge {
        re: m.real_scale * z.im,
        im: -(m.imaginary_scale * z.re),
    };
    let gammas = gammas(unbarred, model)?;
    Ok(CceqReport {
        residual: lhs.minus(&rhs),
        assumption_holds: gammas.both_positive(),
        gammas,
    })
}

/// Sum of two charges; exposed for additivity checks.
pub fn add_charges<F: Scalar>(a: &Charge<F>, b: &Charge<F>) -> Charge<F> {
    a.plus(b)
}

/// `Z` with `δ = 1`.
pub fn unmodified<F: Scalar>(params: &StabilityParams<F>) -> StabilityParams<F> {
    StabilityParams {
        delta: F::one(),
        ..params.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::ChernVector;

    fn preset(h: i64, d: i64) -> FibrationModel {
        FibrationModel::preset(int(h), int(d)).unwrap()
    }

    fn params(u: Rational, v: Rational, delta: Rational, m: &FibrationModel) -> StabilityParams {
        StabilityParams::in_span(u, v, ChowClass::zero(m), delta, m).unwrap()
    }

    #[test]
    fn charge_of_structure_sheaf() {
        let m = preset(2, 3);
        let (u, v) = (ratio(1, 2), int(3));
        let p = params(u.clone(), v.clone(), int(1), &m);
        let z = central_charge(&ChernData::structure_sheaf(&m), &p, &m).unwrap();
        let (h, d) = (int(2), int(3));
        let w3 = &d * (&h * &h * &u * &u * &u + int(3) * &h * &u * &u * &v + int(3) * &u * &v * &v);
        assert_eq!(z, Charge { re: int(0), im: -w3 / int(6) });
    }

    #[test]
    fn charge_of_fiber_class() {
        let m = preset(-1, 4);
        let p = params(ratio(2, 5), int(7), ratio(1, 3), &m);
        let mut ch = ChernData::zero(&m);
        ch.ch2_fiber = ratio(3, 2);
        let z = central_charge(&ch, &p, &m).unwrap();
        assert_eq!(z, Charge { re: int(0), im: ratio(2, 5) * ratio(3, 2) });
    }

    #[test]
    fn params_validation() {
        let m = preset(0, 1);
        let b_theta = ChowClass::theta(&m);
        assert!(StabilityParams::in_span(int(1), int(1), b_theta, int(1), &m).is_err());
        assert!(StabilityParams::in_span(int(1), int(1), ChowClass::zero(&m), int(0), &m).is_err());
        let s = FibrationModel::surface(int(-1));
        assert!(matches!(
            StabilityParams::in_span(int(1), int(1), ChowClass::zero(&s), int(1), &s),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gammas_without_canonical_class() {
        let m = preset(0, 5);
        let (u, v, delta) = (ratio(1, 3), int(2), ratio(3, 2));
        let g = gammas(&params(u.clone(), v.clone(), delta.clone(), &m), &m).unwrap();
        assert_eq!(g.gamma, ratio(1, 2) * int(5) * &v * &v);
        assert_eq!(g.gamma_prime, &delta * int(5) * &u * &v * &v / int(2));
        assert!(g.both_positive());
    }

    #[test]
    fn gammas_closed_form() {
        let m = preset(-3, 2);
        let (u, v, delta) = (ratio(1, 2), int(4), ratio(2, 7));
        let (h, d) = (int(-3), int(2));
        let g = gammas(&params(u.clone(), v.clone(), delta.clone(), &m), &m).unwrap();
        let huv = &h * &u + &v;
        assert_eq!(g.gamma, ratio(1, 2) * &d * &huv * &huv - &h * &h * &d / int(24));
        let w3 = &d * (&h * &h * &u * &u * &u + int(3) * &h * &u * &u * &v + int(3) * &u * &v * &v);
        assert_eq!(g.gamma_prime, &h * &h * &d * &u / int(24) + &delta * w3 / int(6));
    }

    #[test]
    fn hand_solved_case() {
        // h = 0, k = l = 1: 2uv = 2 and v = u, so u = v = 1
        let m = preset(0, 1);
        let s = solve_constraints(&int(1), &int(1), &m).unwrap();
        assert_eq!(s.r, int(2));
        assert_eq!(s.u, Surd::from(int(1)));
        assert_eq!(s.v, Surd::from(int(1)));
        assert_eq!(s.gamma, ratio(1, 2));
        assert_eq!(s.epsilon, int(1));
        assert_eq!(s.gamma_prime, Surd::from(ratio(1, 2)));
        assert_eq!(s.delta, int(1));
        assert!(s.positive);
        let z = vec![int(0)];
        let r = constraint_residuals(&s.barred_params(&z, &m).unwrap(), &s.unbarred_params(&z, &m).unwrap(), &m)
            .unwrap();
        assert!(r.all_zero());
    }

    #[test]
    fn irrational_solution_is_exact() {
        let m = preset(1, 1);
        let s = solve_constraints(&int(1), &int(2), &m).unwrap();
        // r = 6, u² = 6/4
        assert!(!s.u.is_rational());
        assert_eq!(s.u.clone() * s.u.clone(), Surd::from(ratio(3, 2)));
        let v = vec![ratio(1, 3)];
        let r = constraint_residuals(&s.barred_params(&v, &m).unwrap(), &s.unbarred_params(&v, &m).unwrap(), &m)
            .unwrap();
        assert!(r.all_zero(), "{r:?}");
    }

    #[test]
    fn strict_theta_pairing_is_reported_separately() {
        let m = preset(0, 1);
        let s = solve_constraints(&int(1), &int(1), &m).unwrap();
        let z = vec![int(0)];
        let r = constraint_residuals(&s.barred_params(&z, &m).unwrap(), &s.unbarred_params(&z, &m).unwrap(), &m)
            .unwrap();
        // ωΘ² = (hu+v)hd = 0 at h = 0, while (u/2)ω̄²Θ = ½
        assert_eq!(r.c3_theta, Surd::from(ratio(-1, 2)));
    }

    #[test]
    fn solver_failures() {
        // r = 2(hk+l)/k = 0
        let m = preset(-1, 2);
        assert!(matches!(solve_constraints(&int(1), &int(1), &m), Err(Error::NoRealSolution(_))));
        // negative radicand: h = -3, k = 1, l = 1 → r = -4, denominator 2
        let m = preset(-3, 1);
        assert!(matches!(solve_constraints(&int(1), &int(1), &m), Err(Error::NoRealSolution(_))));
        let m = preset(0, 1);
        assert!(matches!(solve_constraints(&int(0), &int(1), &m), Err(Error::Invalid(_))));
    }

    #[test]
    fn c1_with_zero_k_is_a_division_error() {
        let m = preset(0, 1);
        let barred = params(int(0), int(1), int(1), &m);
        let unbarred = params(int(1), int(1), int(1), &m);
        assert!(matches!(
            constraint_residuals(&barred, &unbarred, &m),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn cceq_on_zero_character() {
        let m = preset(0, 1);
        let s = solve_constraints(&int(2), &int(3), &m).unwrap();
        let v = vec![int(1)];
        let r = verify_cceq(
            &ChernData::zero(&m),
            &v,
            &s.barred_params(&v, &m).unwrap(),
            &s.unbarred_params(&v, &m).unwrap(),
            &m,
        )
        .unwrap();
        assert!(r.residual.is_zero());
        assert!(r.assumption_holds);
    }

    #[test]
    fn cceq_rejects_mismatched_b_fields() {
        let m = preset(1, 1);
        let s = solve_constraints(&int(1), &int(2), &m).unwrap();
        let v = vec![int(1)];
        let other = vec![int(2)];
        let e = verify_cceq(
            &ChernData::structure_sheaf(&m),
            &v,
            &s.barred_params(&other, &m).unwrap(),
            &s.unbarred_params(&v, &m).unwrap(),
            &m,
        );
        assert!(e.is_err());
    }

    #[test]
    fn real_part_in_hat_variables() {
        let m = preset(2, 3);
        let v = vec![ratio(1, 2)];
        let ch = ChernData::threefold(2, -1, vec![int(1)], vec![ratio(-1, 3)], int(2), ratio(5, 4));
        let (k, l, eps) = (int(1), int(3), ratio(1, 2));
        let barred = StabilityParams::in_span(k, l, chern::barred_field(&v, &m).unwrap(), eps, &m).unwrap();
        let z = central_charge(&ch, &barred, &m).unwrap();
        let hats = chern::hat(&ch, &v, &m).unwrap();
        let wb = &barred.omega;
        let theta: ChowClass = ChowClass::theta(&m);
        let wb2_theta = deg(&[wb.clone(), wb.clone(), theta], &m).unwrap();
        let ps_hat = ChowClass::pullback(&m, 1, hats.ch1_base.clone()).unwrap();
        let wb2_s = deg(&[wb.clone(), wb.clone(), ps_hat], &m).unwrap();
        let x = int(-1);
        assert_eq!(z.re, -hats.top + ratio(1, 2) * wb2_theta * x + ratio(1, 2) * wb2_s);
    }

    #[test]
    fn n_and_x_slots_match_without_c1_c3() {
        // E with Ŝ = η̂ = â = ŝ = 0, i.e. ch^{B̄}(E) = n + xΘ.
        let m = preset(1, 2);
        let v = vec![ratio(1, 3)];
        let s = solve_with_target(&int(1), &int(2), &int(11), &m).unwrap();
        let barred = s.barred_params(&v, &m).unwrap();
        let unbarred = s.unbarred_params(&v, &m).unwrap();
        let res = constraint_residuals(&barred, &unbarred, &m).unwrap();
        assert!(!res.c1.is_zero());
        assert!(res.c2.is_zero() && res.c4.is_zero());
        let twisted = ChernVector {
            rank: int(3),
            section_coeff: int(-2),
            ..ChernVector::zero(&m)
        };
        let back_field = -chern::barred_field(&v, &m).unwrap();
        let class = chern::twist_class(&twisted.to_class(&m).unwrap(), &back_field, &m).unwrap();
        let ch = ChernVector::from_class(&class, &m).unwrap().to_integral().unwrap();
        let hats = chern::hat(&ch, &v, &m).unwrap();
        assert!(hats.ch1_base.iter().chain(&hats.ch2_theta).all(Zero::is_zero));
        assert!(hats.ch2_fiber.is_zero() && hats.top.is_zero());
        let r = verify_cceq(&ch, &v, &barred, &unbarred, &m).unwrap();
        assert!(r.residual.is_zero(), "{:?}", r.residual);
    }

    #[test]
    fn unmodified_charge_is_delta_one() {
        let m = preset(1, 1);
        let p = params(int(1), int(2), int(1), &m);
        let p2 = params(int(1), int(2), ratio(5, 2), &m);
        assert_eq!(unmodified(&p2), p);
        let ch = ChernData::threefold(1, 2, vec![int(1)], vec![int(0)], int(0), int(1));
        assert_eq!(
            central_charge(&ch, &unmodified(&p2), &m).unwrap(),
            central_charge(&ch, &p, &m).unwrap()
        );
        assert!(p.is_ample_candidate(&m));
    }
}
