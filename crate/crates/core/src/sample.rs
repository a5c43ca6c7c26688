//! Seeded random inputs for verification sweeps.

use num_traits::{One, Zero};
use rand::Rng;

use crate::chern::ChernData;
use crate::chow::{ChowClass, FibrationModel};
use crate::error::Result;
use crate::rational::{ratio, Rational};

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ max_den`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

/// As [`rational`] but strictly positive.
pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(1..=bound), rng.gen_range(1..=max_den))
}

/// As [`rational`] but nonzero.
pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    positive_rational(rng, bound, max_den) * ratio(sign, 1)
}

pub fn rationals<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64, max_den: i64) -> Vec<Rational> {
    (0..len).map(|_| rational(rng, bound, max_den)).collect()
}

/// Random Chern data: integral `n`, `x`; rational higher components.
pub fn chern_data<R: Rng + ?Sized>(rng: &mut R, model: &FibrationModel) -> ChernData {
    let rank = model.base_rank();
    let n = rng.gen_range(-5..=5);
    let x = rng.gen_range(-5..=5);
    if model.is_threefold() {
        ChernData::threefold(
            n,
            x,
            rationals(rng, rank, 6, 4),
            rationals(rng, rank, 6, 4),
            rational(rng, 6, 4),
            rational(rng, 6, 4),
        )
    } else {
        ChernData::surface(n, x, rational(rng, 6, 4), rational(rng, 6, 4))
    }
}

/// Random element of `A*(X)` with every component populated.
pub fn class<R: Rng + ?Sized>(rng: &mut R, model: &FibrationModel) -> Result<ChowClass> {
    let mut c = ChowClass::zero(model);
    for k in 0..=model.dim_x() {
        if k >= 1 {
            let alpha = rationals(rng, model.rank(k - 1), 5, 3);
            c = c + ChowClass::theta_pullback(model, k - 1, alpha)?;
        }
        if k <= model.dim_y() {
            let beta = rationals(rng, model.rank(k), 5, 3);
            c = c + ChowClass::pullback(model, k, beta)?;
        }
    }
    Ok(c)
}

/// Random divisor `cΘ + p*β`.
pub fn divisor<R: Rng + ?Sized>(rng: &mut R, model: &FibrationModel) -> Result<ChowClass> {
    let c = rational(rng, 5, 3);
    ChowClass::make_divisor(c, rationals(rng, model.base_rank(), 5, 3), model)
}

/// Random threefold model of the given base rank and `h`, with a
/// nondegenerate diagonal-dominant pairing.
pub fn threefold_model<R: Rng + ?Sized>(rng: &mut R, rank: usize, h: Rational) -> Result<FibrationModel> {
    let mut pairing = vec![vec![Rational::zero(); rank]; rank];
    #[allow(clippy::needless_range_loop)]
    for i in 0..rank {
        for j in 0..i {
            let x = rational(rng, 2, 1);
            pairing[i][j] = x.clone();
            pairing[j][i] = x;
        }
        pairing[i][i] = ratio(rng.gen_range(2 * rank as i64..=3 * rank as i64 + 2), 1)
            * ratio(if i == 0 { 1 } else { -1 }, 1);
    }
    let mut base_h = vec![Rational::zero(); rank];
    base_h[0] = Rational::one();
    FibrationModel::threefold(pairing, base_h, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_draws() {
        let model = FibrationModel::preset(int(-1), int(2)).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(chern_data(&mut a, &model), chern_data(&mut b, &model));
        assert_eq!(class(&mut a, &model).unwrap(), class(&mut b, &model).unwrap());
    }

    #[test]
    fn generated_data_validates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for rank in 1..=3 {
            let model = threefold_model(&mut rng, rank, int(3)).unwrap();
            assert!(model.d().is_positive());
            chern_data(&mut rng, &model).validate(&model).unwrap();
            model.check_shape(&class(&mut rng, &model).unwrap()).unwrap();
            assert!(divisor(&mut rng, &model).unwrap().is_divisor());
        }
        let surface = FibrationModel::surface(int(-2));
        chern_data(&mut rng, &surface).validate(&surface).unwrap();
        assert!(!nonzero_rational(&mut rng, 3, 3).is_zero());
    }
}
