//! Classes of pointed Brill-Noether divisors in `PE^k_g`: the Weierstrass
//! divisor `W^k_g`, the general `H^a_{g,d}` by closed form and by pushing
//! forward through the incidence divisor, and the genus-2 stratum of squares
//! of abelian differentials.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::brill_noether::{cone_weights, BNData};
use crate::error::{Error, Result};
use crate::picard::{
    brill_noether_pointed_class, classes_equal, downstairs_bn_pullback, incidence_class,
    pushforward_product, weierstrass_pointed_class, DownClass,
};
use crate::rational::{frac, int, Q};

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
    }
    Ok(())
}

/// Class of the closure of the divisor of `k`-differentials vanishing at a
/// Weierstrass point.
pub fn weierstrass_k_class(g: i64, k: i64) -> Result<DownClass> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g, min: 2 });
    }
    check_k(k)?;
    let mut c = DownClass::zero(g, k);
    c.eta = int(-g * (g * g - 1));
    c.lambda = int(k * (6 * g * g + 4 * g + 2));
    c.delta[0] = -Q::from_integer(binomial(BigInt::from(g + 1), BigInt::from(2)) * k);
    for i in 1..=g / 2 {
        c.delta[i as usize] = int(-k * (g + 3) * i * (g - i));
    }
    Ok(c)
}

/// `[H^a_{g,d}]` from the expanded closed form in `(mu, nu)`.
pub fn bn_k_class_direct(data: &BNData, k: i64) -> Result<DownClass> {
    check_k(k)?;
    let (mu, nu) = cone_weights(data)?;
    Ok(class_from_weights(data.g, k, &mu, &nu))
}

/// Closed form of the class for arbitrary `(mu, nu)`.
pub fn class_from_weights(g: i64, k: i64, mu: &Q, nu: &Q) -> DownClass {
    let kq = int(k);
    let mut c = DownClass::zero(g, k);
    c.eta = -(int(g * (g * g - 1)) * nu);
    c.lambda = int(2 * (g - 1) * (g + 3)) * &kq * mu + int(2 * (3 * g * g + 2 * g + 1)) * &kq * nu;
    c.delta[0] = -(frac(g * g - 1, 3) * &kq * mu + frac(g * (g + 1), 2) * &kq * nu);
    for i in 1..=g / 2 {
        let w = i * (g - i);
        c.delta[i as usize] = -(int(2 * w * (g - 1)) * &kq * mu + int(w * (g + 3)) * &kq * nu);
    }
    c
}

/// `[H^a_{g,d}] = pi_*([H^k_{g,1}] . (mu BN_g + nu W_g))`.
pub fn bn_k_class_pushforward(data: &BNData, k: i64) -> Result<DownClass> {
    check_k(k)?;
    let (mu, nu) = cone_weights(data)?;
    let g = data.g;
    let pointed =
        &(&brill_noether_pointed_class(g, k) * &mu) + &(&weierstrass_pointed_class(g, k) * &nu);
    pushforward_product(&incidence_class(g, k), &pointed)
}

/// `mu BN_g + nu W_g` in `Pic(M_{g,1}-bar)`, carried on `PE^k_{g,1}`.
pub fn pointed_bn_class(data: &BNData, k: i64) -> Result<crate::picard::UpClass> {
    let (mu, nu) = cone_weights(data)?;
    let g = data.g;
    Ok(&(&brill_noether_pointed_class(g, k) * &mu) + &(&weierstrass_pointed_class(g, k) * &nu))
}

/// Coefficients of `BN_g` and `[W^k_g]` in `[H^a_{g,d}]`: `(2k(g-1) mu, nu)`.
///
/// Fails with [`Error::Invariant`] if the recombination does not reproduce
/// [`bn_k_class_direct`].
pub fn cone_decomposition(data: &BNData, k: i64) -> Result<(Q, Q)> {
    check_k(k)?;
    let (mu, nu) = cone_weights(data)?;
    let g = data.g;
    let bn_coeff = int(2 * k * (g - 1)) * &mu;
    let recombined =
        &(&downstairs_bn_pullback(g, k) * &bn_coeff) + &(&weierstrass_k_class(g, k)? * &nu);
    let direct = bn_k_class_direct(data, k)?;
    if !classes_equal(&recombined, &direct)? {
        return Err(Error::Invariant(format!(
            "cone decomposition of {data} does not match the direct class"
        )));
    }
    Ok((bn_coeff, nu))
}

/// `[H^2_2(2,1,1)] + 2 [H^2_2(2,2)]`, the weighted sum of the two genus-2
/// double-zero strata of quadratic differentials.
pub fn genus_two_double_zero_sum() -> DownClass {
    DownClass::from_coefficients(2, 2, &[int(-10), int(72), int(-6), int(-6)])
        .expect("genus 2 has four generators")
}

/// `[H^2_2(2,2)]` before reduction: half of the double-zero sum minus
/// `[W^2_2]`.
pub fn stratum_h22_raw() -> Result<DownClass> {
    let twice = &genus_two_double_zero_sum() - &weierstrass_k_class(2, 2)?;
    let half = &twice * &frac(1, 2);
    if !half.coefficients().iter().all(|c| c.is_integer()) {
        return Err(Error::Invariant(
            "double-zero stratum class is not integral".into(),
        ));
    }
    Ok(half)
}

/// Class of the closure of the stratum of squares of abelian differentials
/// in `PE^2_2`, in the representative with no `delta_1` term:
/// `-2 eta + 12 lambda - delta_0`.
pub fn stratum_h22() -> Result<DownClass> {
    let raw = stratum_h22_raw()?;
    let expected = DownClass::from_coefficients(2, 2, &[int(-2), int(12), int(-1), int(0)])?;
    if !classes_equal(&raw, &expected)? {
        return Err(Error::Invariant(format!(
            "stratum class {raw} is not -2*eta + 12*lambda - 1*delta0"
        )));
    }
    let reduced = raw.reduce_genus_two();
    debug_assert!(reduced.delta[1].is_zero());
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brill_noether::VanishingSequence;

    fn data(g: i64, d: i64, a: &[i64]) -> BNData {
        BNData::new(g, d, VanishingSequence::new(a.to_vec()).unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn weierstrass_k_examples() {
        assert_eq!(
            weierstrass_k_class(2, 2).unwrap().coefficients(),
            ints(&[-6, 68, -6, -10])
        );
        assert_eq!(
            weierstrass_k_class(3, 1).unwrap().coefficients(),
            ints(&[-24, 68, -6, -12])
        );
        assert_eq!(
            weierstrass_k_class(4, 1).unwrap().coefficients(),
            ints(&[-60, 114, -10, -21, -28])
        );
        assert!(weierstrass_k_class(1, 1).is_err());
        assert!(weierstrass_k_class(3, 0).is_err());
    }

    #[test]
    fn direct_examples() {
        assert_eq!(
            bn_k_class_direct(&data(3, 2, &[0, 1]), 1)
                .unwrap()
                .coefficients(),
            ints(&[0, 36, -4, -12])
        );
        assert_eq!(
            bn_k_class_direct(&data(3, 4, &[0, 1, 3]), 2).unwrap(),
            weierstrass_k_class(3, 2).unwrap()
        );
        assert_eq!(
            bn_k_class_direct(&data(3, 4, &[0, 1, 3]), 1)
                .unwrap()
                .coefficients(),
            ints(&[-24, 68, -6, -12])
        );
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(
            bn_k_class_pushforward(&data(3, 2, &[0, 1]), 1)
                .unwrap()
                .coefficients(),
            ints(&[0, 36, -4, -12])
        );
        assert_eq!(
            bn_k_class_pushforward(&data(3, 4, &[0, 1, 3]), 1)
                .unwrap()
                .coefficients(),
            ints(&[-24, 68, -6, -12])
        );
        assert_eq!(
            bn_k_class_pushforward(&data(4, 6, &[0, 1, 2, 4]), 1).unwrap(),
            weierstrass_k_class(4, 1).unwrap()
        );
    }

    #[test]
    fn genus_two_weierstrass_routes_agree_modulo_relation() {
        let w = data(2, 2, &[0, 2]);
        for k in 1..=3 {
            let direct = bn_k_class_direct(&w, k).unwrap();
            let push = bn_k_class_pushforward(&w, k).unwrap();
            let thm = weierstrass_k_class(2, k).unwrap();
            assert!(classes_equal(&direct, &thm).unwrap());
            assert!(classes_equal(&push, &thm).unwrap());
        }
    }

    #[test]
    fn cone_decomposition_examples() {
        assert_eq!(
            cone_decomposition(&data(3, 2, &[0, 1]), 1).unwrap(),
            (int(6), int(0))
        );
        assert_eq!(
            cone_decomposition(&data(3, 4, &[0, 1, 3]), 1).unwrap(),
            (int(0), int(1))
        );
        assert_eq!(
            cone_decomposition(&data(4, 6, &[0, 1, 2, 4]), 2).unwrap(),
            (int(0), int(1))
        );
    }

    #[test]
    fn errors_propagate() {
        assert!(matches!(
            bn_k_class_direct(&data(2, 3, &[1, 3]), 1),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            bn_k_class_pushforward(&data(3, 4, &[0, 1, 2]), 1),
            Err(Error::RhoNotMinusOne(0))
        ));
    }

    #[test]
    fn stratum_h22_values() {
        assert_eq!(
            genus_two_double_zero_sum().coefficients(),
            ints(&[-10, 72, -6, -6])
        );
        assert_eq!(
            stratum_h22_raw().unwrap().coefficients(),
            ints(&[-2, 2, 0, 2])
        );
        let h = stratum_h22().unwrap();
        assert_eq!(h.coefficients(), ints(&[-2, 12, -1, 0]));
        assert_eq!(h.to_string(), "-2*eta + 12*lambda - 1*delta0");
    }
}
