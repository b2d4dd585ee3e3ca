use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FloatCertificate;
use crate::exact::Rational;

/// Closest rational to `x` with denominator at most `max_den`, found from
/// the continued-fraction convergents and the last admissible
/// semiconvergent. The expansion runs on the exact binary value of `x`.
pub fn best_rational_approximation(x: f64, max_den: u64) -> Rational {
    assert!(max_den >= 1, "max_den must be positive");
    let Some(target) = Rational::from_float(x) else {
        return Rational::zero();
    };
    let bound = BigInt::from(max_den);

    // convergents h/k: (h_prev, k_prev) = (1, 0), (h, k) = (floor, 1) after the first term
    let (mut h_prev, mut k_prev) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    let a0 = rest.floor().to_integer();
    let (mut h, mut k) = (a0.clone(), BigInt::one());
    rest -= Rational::from_integer(a0);

    while !rest.is_zero() {
        rest = rest.recip();
        let a = rest.floor().to_integer();
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            // largest semiconvergent still within the bound
            let j = (&bound - &k_prev).div_floor(&k);
            let semi = Rational::new(&j * &h + &h_prev, &j * &k + &k_prev);
            let conv = Rational::new(h.clone(), k.clone());
            return if (&semi - &target).abs() < (&conv - &target).abs() {
                semi
            } else {
                conv
            };
        }
        let h_next = &a * &h + &h_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        rest -= Rational::from_integer(a);
    }
    Rational::new(h, k)
}

/// Rounds every weight to its best approximation with denominator at most
/// `max_den`, clamping negatives to zero.
pub fn rationalize(c: &FloatCertificate, max_den: u64) -> Vec<Rational> {
    c.y.iter()
        .map(|&yi| {
            let r = best_rational_approximation(yi, max_den);
            if r.is_negative() {
                Rational::zero()
            } else {
                r
            }
        })
        .collect()
}
