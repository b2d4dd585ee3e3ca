//! Exact certificate checking.
//!
//! A weight vector `y` proves that `a_i + b_iᵀx + xᵀQ_i x <= 0` has no real
//! solution when `y >= 0` and `M = Σ y_i Q̂_i` is positive definite: then
//! `Σ y_i (a_i + b_iᵀx + xᵀQ_i x) = (1, x)ᵀ M (1, x) > 0` for every `x`,
//! while feasibility would make the left side `<= 0`. Nonnegativity is
//! enough here; strict positivity of the weights is not required.
//!
//! Everything in this module is exact and depends only on the system's
//! rational coefficients, never on solver output beyond `y` itself.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{leading_minors_positive, Rational, RationalMatrix};
use crate::system::QuadraticSystem;

/// Candidate infeasibility certificate: one weight per inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCertificate {
    pub y: Vec<Rational>,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// 1-based index of a negative weight.
    NegativeWeight(usize),
    /// 1-based order of the first leading principal minor that is `<= 0`.
    NonPositiveMinor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub nonnegativity_ok: bool,
    pub pd_ok: bool,
    pub verified: bool,
    pub witness: Option<Witness>,
}

/// Outcome of the exact positive-definiteness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdCheck {
    pub positive_definite: bool,
    pub failing_minor: Option<usize>,
}

/// `Σ y_i Q̂_i`, computed from the exact coefficients.
pub fn combine_exact(system: &QuadraticSystem, y: &[Rational]) -> Result<RationalMatrix> {
    if y.len() != system.len() {
        return Err(Error::DimensionMismatch {
            expected: system.len(),
            got: y.len(),
        });
    }
    let mut m = RationalMatrix::zeros(system.dimension() + 1);
    for (q, w) in system.inequalities().iter().zip(y) {
        m.add_scaled(w, &q.augmented())?;
    }
    Ok(m)
}

/// Sylvester's criterion via Bareiss elimination on the integer matrix
/// obtained by clearing denominators.
pub fn is_positive_definite_exact(m: &RationalMatrix) -> Result<PdCheck> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(match leading_minors_positive(m.clear_denominators()) {
        Ok(()) => PdCheck {
            positive_definite: true,
            failing_minor: None,
        },
        Err(k) => PdCheck {
            positive_definite: false,
            failing_minor: Some(k),
        },
    })
}

/// Decides whether `cert` proves `system` infeasible.
pub fn verify(system: &QuadraticSystem, cert: &RationalCertificate) -> Result<VerificationReport> {
    let m = combine_exact(system, &cert.y)?;
    let negative = cert.y.iter().position(Signed::is_negative);
    let pd = is_positive_definite_exact(&m)?;
    let nonnegativity_ok = negative.is_none();
    let witness = match (negative, pd.failing_minor) {
        (Some(i), _) => Some(Witness::NegativeWeight(i + 1)),
        (None, Some(k)) => Some(Witness::NonPositiveMinor(k)),
        (None, None) => None,
    };
    Ok(VerificationReport {
        nonnegativity_ok,
        pd_ok: pd.positive_definite,
        verified: nonnegativity_ok && pd.positive_definite,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::system::QuadraticInequality;

    /// `x² + 1 <= 0`
    fn sum_of_squares_plus_one() -> QuadraticSystem {
        let q = QuadraticInequality::new(rat_int(1), vec![rat_int(0)], RationalMatrix::identity(1))
            .unwrap();
        QuadraticSystem::new(1, vec![q]).unwrap()
    }

    #[test]
    fn combine_examples() {
        let sys = sum_of_squares_plus_one();
        assert!(combine_exact(&sys, &[rat_int(0)]).unwrap().is_zero());
        assert_eq!(combine_exact(&sys, &[rat_int(1)]).unwrap(), RationalMatrix::identity(2));

        let q = QuadraticInequality::new(rat_int(0), vec![rat_int(-1)], RationalMatrix::identity(1))
            .unwrap();
        let two = QuadraticSystem::new(1, vec![q.clone(), q.clone()]).unwrap();
        assert_eq!(
            combine_exact(&two, &[rat(1, 2), rat(1, 2)]).unwrap(),
            q.augmented()
        );
        assert!(combine_exact(&two, &[rat_int(1)]).is_err());
    }

    #[test]
    fn pd_examples() {
        let check = |rows: &[&[i64]]| {
            is_positive_definite_exact(&RationalMatrix::from_i64_rows(rows).unwrap()).unwrap()
        };
        assert!(check(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).positive_definite);
        assert_eq!(check(&[&[1, 2], &[2, 1]]).failing_minor, Some(2));
        assert_eq!(check(&[&[1, 0], &[0, 0]]).failing_minor, Some(2));
        assert!(is_positive_definite_exact(&RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap())
            .is_err());
    }

    #[test]
    fn verify_examples() {
        let sys = sum_of_squares_plus_one();
        let ok = verify(&sys, &RationalCertificate { y: vec![rat_int(1)] }).unwrap();
        assert!(ok.verified && ok.witness.is_none());

        let bad = verify(&sys, &RationalCertificate { y: vec![rat_int(-1)] }).unwrap();
        assert!(!bad.verified && !bad.nonnegativity_ok);
        assert_eq!(bad.witness, Some(Witness::NegativeWeight(1)));

        let zero = verify(&sys, &RationalCertificate { y: vec![rat_int(0)] }).unwrap();
        assert!(zero.nonnegativity_ok && !zero.pd_ok);
        assert_eq!(zero.witness, Some(Witness::NonPositiveMinor(1)));
    }

    #[test]
    fn feasible_system_is_never_certified() {
        // x² - 1 <= 0 holds at x = 0, so no weight can certify it
        let q = QuadraticInequality::new(rat_int(-1), vec![rat_int(0)], RationalMatrix::identity(1))
            .unwrap();
        let sys = QuadraticSystem::new(1, vec![q]).unwrap();
        for w in [rat_int(1), rat(1, 3), rat_int(100)] {
            assert!(!verify(&sys, &RationalCertificate { y: vec![w] }).unwrap().verified);
        }
    }
}
