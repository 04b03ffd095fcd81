//! Rational-function substitution with denominator clearing.
//!
//! A substitution sends each source variable to a ratio of polynomials in a
//! target context. The composite is formed over the rational-function field:
//! the common denominator is the product of per-variable denominators raised
//! to the source polynomial's per-variable degrees, and the caller-supplied
//! clearing factor must cancel it exactly.

use super::{Exponent, Polynomial, VarSet};
use num_rational::BigRational;
use std::fmt;

/// Per-variable (numerator, denominator) pairs in the target variables.
#[derive(Debug, Clone)]
pub struct RationalFunctionSubstitution {
    target_vars: VarSet,
    pairs: Vec<(Polynomial, Polynomial)>,
}

impl RationalFunctionSubstitution {
    /// One (numerator, denominator) pair per source variable, all over the
    /// same target context. Denominators must be nonzero.
    pub fn new(
        target_vars: VarSet,
        pairs: Vec<(Polynomial, Polynomial)>,
    ) -> Result<Self, SubstitutionError> {
        for (i, (num, den)) in pairs.iter().enumerate() {
            if num.vars() != &target_vars || den.vars() != &target_vars {
                return Err(SubstitutionError::ContextMismatch { variable: i });
            }
            if den.is_zero() {
                return Err(SubstitutionError::ZeroDenominator { variable: i });
            }
        }
        Ok(RationalFunctionSubstitution { target_vars, pairs })
    }

    pub fn target_vars(&self) -> &VarSet {
        &self.target_vars
    }

    pub fn arity(&self) -> usize {
        self.pairs.len()
    }

    /// Exact rational value of the substituted variable `i` at a target point.
    pub fn evaluate_at(
        &self,
        i: usize,
        point: &[BigRational],
    ) -> Result<BigRational, SubstitutionError> {
        let (num, den) = &self.pairs[i];
        let nv = num.evaluate(point).map_err(|_| SubstitutionError::Arity)?;
        let dv = den.evaluate(point).map_err(|_| SubstitutionError::Arity)?;
        if dv == BigRational::from_integer(0.into()) {
            return Err(SubstitutionError::DenominatorVanishes { variable: i });
        }
        Ok(nv / dv)
    }
}

/// Errors from constructing or applying a substitution.
#[derive(Debug, Clone)]
pub enum SubstitutionError {
    ContextMismatch { variable: usize },
    ZeroDenominator { variable: usize },
    DenominatorVanishes { variable: usize },
    Arity,
    /// The clearing factor does not cancel the common denominator; carries
    /// the leading terms of the residual for diagnosis.
    ClearingFactorInsufficient { residual_head: String },
}

impl fmt::Display for SubstitutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstitutionError::ContextMismatch { variable } => {
                write!(f, "substitution pair {} not over the target context", variable)
            }
            SubstitutionError::ZeroDenominator { variable } => {
                write!(f, "substitution denominator {} is the zero polynomial", variable)
            }
            SubstitutionError::DenominatorVanishes { variable } => {
                write!(f, "denominator of variable {} vanishes at the point", variable)
            }
            SubstitutionError::Arity => write!(f, "evaluation point has wrong arity"),
            SubstitutionError::ClearingFactorInsufficient { residual_head } => write!(
                f,
                "clearing factor insufficient; division residual begins with {}",
                residual_head
            ),
        }
    }
}

impl std::error::Error for SubstitutionError {}

/// Error from exact multivariate division.
#[derive(Debug, Clone)]
pub struct DivisionError {
    /// Leading terms of the non-divisible residual, serialized.
    pub residual_head: String,
}

impl fmt::Display for DivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inexact division; residual begins with {}", self.residual_head)
    }
}

impl std::error::Error for DivisionError {}

/// Computes `(p ∘ subst) * clearing_factor` exactly, verifying that the
/// common denominator divides out.
pub fn substitute_and_clear(
    p: &Polynomial,
    subst: &RationalFunctionSubstitution,
    clearing_factor: &Polynomial,
) -> Result<Polynomial, SubstitutionError> {
    assert_eq!(
        subst.arity(),
        p.vars().len(),
        "substitution arity must match source variable count"
    );
    assert_eq!(
        clearing_factor.vars(),
        subst.target_vars(),
        "clearing factor must live in the target context"
    );
    let tvars = subst.target_vars().clone();
    if p.is_zero() {
        return Ok(Polynomial::zero(tvars));
    }

    // per-variable max degrees set the common denominator powers
    let profile = p.degree_profile().expect("nonzero");
    let dmax = profile.per_variable;

    // precompute numerator and denominator powers up to dmax
    let mut num_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(subst.arity());
    let mut den_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(subst.arity());
    for (i, (num, den)) in subst.pairs.iter().enumerate() {
        let d = dmax[i] as usize;
        let mut np = Vec::with_capacity(d + 1);
        let mut dp = Vec::with_capacity(d + 1);
        np.push(Polynomial::one(tvars.clone()));
        dp.push(Polynomial::one(tvars.clone()));
        for k in 1..=d {
            np.push(&np[k - 1] * num);
            dp.push(&dp[k - 1] * den);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }

    // numerator of p∘subst over the common denominator ∏ den_i^dmax_i
    let mut numerator = Polynomial::zero(tvars.clone());
    for (e, c) in p.terms() {
        let mut term = Polynomial::constant(tvars.clone(), c.clone());
        for (i, &k) in e.0.iter().enumerate() {
            term = &term * &num_pows[i][k as usize];
            term = &term * &den_pows[i][(dmax[i] - k) as usize];
        }
        numerator = &numerator + &term;
    }
    let mut common_den = Polynomial::one(tvars.clone());
    for (i, dp) in den_pows.iter().enumerate() {
        common_den = &common_den * &dp[dmax[i] as usize];
    }

    let product = &numerator * clearing_factor;
    exact_div(&product, &common_den).map_err(|e| SubstitutionError::ClearingFactorInsufficient {
        residual_head: e.residual_head,
    })
}

/// Exact division of `p` by `d` in graded-lex order; errors with the
/// residual's leading terms when the division is inexact.
pub fn exact_div(p: &Polynomial, d: &Polynomial) -> Result<Polynomial, DivisionError> {
    assert!(!d.is_zero(), "division by the zero polynomial");
    let vars = p.vars().clone();
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(vars.clone());
    let (dlead_e, dlead_c) = {
        let (e, c) = d.leading_term().unwrap();
        (e.clone(), c.clone())
    };
    while let Some((rlead_e, rlead_c)) = rem.leading_term() {
        match rlead_e.checked_sub(&dlead_e) {
            Some(qe) => {
                let qc = rlead_c / &dlead_c;
                let mono = Polynomial::from_terms(vars.clone(), [(qe, qc)]);
                rem = &rem - &(&mono * d);
                quot = &quot + &mono;
            }
            None => {
                return Err(DivisionError {
                    residual_head: head_terms(&rem, 3),
                });
            }
        }
    }
    Ok(quot)
}

/// Serializes the leading `k` terms of a polynomial (for error reports).
pub(crate) fn head_terms(p: &Polynomial, k: usize) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.terms().rev().take(k) {
        let single = Polynomial::from_terms(p.vars().clone(), [(e.clone(), c.clone())]);
        parts.push(single.to_string());
    }
    if p.term_count() > k {
        parts.push("...".into());
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn single_var_subst() -> (VarSet, RationalFunctionSubstitution) {
        // alpha -> x^2 / (1 + x^2)
        let t = VarSet::new(["x"]);
        let num = parse("x^2", &t).unwrap();
        let den = parse("1 + x^2", &t).unwrap();
        let s = RationalFunctionSubstitution::new(t.clone(), vec![(num, den)]).unwrap();
        (t, s)
    }

    #[test]
    fn single_variable_clearing() {
        let src = VarSet::new(["a"]);
        let p = parse("a", &src).unwrap();
        let (t, s) = single_var_subst();
        let clearing = parse("1 + x^2", &t).unwrap();
        let out = substitute_and_clear(&p, &s, &clearing).unwrap();
        assert_eq!(out, parse("x^2", &t).unwrap());
    }

    #[test]
    fn insufficient_clearing_factor_reports_residual() {
        let src = VarSet::new(["a"]);
        let p = parse("a^2", &src).unwrap();
        let (t, s) = single_var_subst();
        // needs (1+x^2)^2; supply only (1+x^2)
        let clearing = parse("1 + x^2", &t).unwrap();
        let err = substitute_and_clear(&p, &s, &clearing).unwrap_err();
        match err {
            SubstitutionError::ClearingFactorInsufficient { residual_head } => {
                assert!(!residual_head.is_empty());
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn substitution_matches_rational_evaluation() {
        // random-ish degree-2 polynomial in 2 variables vs direct evaluation
        let src = VarSet::new(["a", "b"]);
        let p = parse("3*a^2 - a*b + 7*b - 2", &src).unwrap();
        let t = VarSet::new(["x", "y"]);
        let s = RationalFunctionSubstitution::new(
            t.clone(),
            vec![
                (parse("x^2", &t).unwrap(), parse("1 + x^2", &t).unwrap()),
                (parse("y^2", &t).unwrap(), parse("1 + y^2", &t).unwrap()),
            ],
        )
        .unwrap();
        let clearing = parse("(1 + x^2)^2*(1 + y^2)", &t).unwrap();
        let out = substitute_and_clear(&p, &s, &clearing).unwrap();

        for (px, py) in [(1i64, 2i64), (-3, 5), (2, -7), (0, 1), (4, 4)] {
            let pt = [rat(px, 3), rat(py, 2)];
            let aval = s.evaluate_at(0, &pt).unwrap();
            let bval = s.evaluate_at(1, &pt).unwrap();
            let direct = p.evaluate(&[aval, bval]).unwrap() * clearing.evaluate(&pt).unwrap();
            assert_eq!(out.evaluate(&pt).unwrap(), direct);
        }
    }

    #[test]
    fn exact_div_recovers_factor() {
        let v = VarSet::new(["x", "y"]);
        let a = parse("x^2 - y^2 + 3*x*y - 1", &v).unwrap();
        let b = parse("(1 + x^2)*(x - y)", &v).unwrap();
        let prod = &a * &b;
        assert_eq!(exact_div(&prod, &b).unwrap(), a);
        assert!(exact_div(&parse("x^2 + 1", &v).unwrap(), &parse("x + y", &v).unwrap()).is_err());
    }

    #[test]
    fn zero_denominator_rejected() {
        let t = VarSet::new(["x"]);
        let res = RationalFunctionSubstitution::new(
            t.clone(),
            vec![(parse("x", &t).unwrap(), Polynomial::zero(t.clone()))],
        );
        assert!(res.is_err());
    }
}
