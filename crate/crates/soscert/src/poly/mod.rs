//! Exact sparse multivariate polynomial arithmetic over arbitrary-precision
//! rationals.
//!
//! Polynomials are maps from exponent vectors to nonzero `BigRational`
//! coefficients, tied to an explicit ordered variable context. All ring
//! operations are exact; zero coefficients are never stored. The canonical
//! term order is graded-lexicographic (total degree first, then the exponent
//! vector in variable order), and serialization emits terms from largest to
//! smallest.

mod parse;
mod subst;

pub use parse::{parse, ParseError};
pub use subst::{substitute_and_clear, DivisionError, RationalFunctionSubstitution};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        VarSet(Arc::new(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    /// Index of a variable name, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Per-variable exponent vector of a monomial.
///
/// Ordering is graded-lexicographic: total degree first, ties broken by the
/// exponent entries in variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Component-wise sum (monomial product).
    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Component-wise difference if `other` divides `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Exponent(out))
    }

    /// Exponent parity vector as a bitmask (bit i set iff entry i is odd).
    pub fn parity_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, e)| acc | (((*e as u64) & 1) << i))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total and per-variable degree maxima of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub total: u32,
    pub per_variable: Vec<u32>,
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: VarSet) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Exponent::zeros(p.vars.len()), c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// The monomial `x_i` for variable index `i`.
    pub fn var(vars: VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = Exponent::zeros(vars.len());
        e.0[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, dropping zeros.
    pub fn from_terms(
        vars: VarSet,
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, e: &Exponent) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    /// The support as a list of exponents, ascending graded-lex.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Largest term in graded-lex order, if any.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigRational) {
        debug_assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Polynomial) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial variable contexts differ: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }

    /// Addition with explicit context check.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, ContextMismatch> {
        if self.vars != other.vars {
            return Err(ContextMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(self + other)
    }

    /// Multiplication with explicit context check.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, ContextMismatch> {
        if self.vars != other.vars {
            return Err(ContextMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(self * other)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    /// `self^k` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::one(self.vars.clone());
        }
        let mut result = self.clone();
        let mut base = self.clone();
        let mut exp = k - 1;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at a rational point supplying one value per variable.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, EvalError> {
        if point.len() != self.vars.len() {
            return Err(EvalError {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    term *= pow_rational(&point[i], k);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation, for sampling checks only.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    term *= point[i].powi(k as i32);
                }
            }
            acc += term;
        }
        acc
    }

    /// Total and per-variable degree maxima; `None` for the zero polynomial.
    pub fn degree_profile(&self) -> Option<DegreeProfile> {
        if self.terms.is_empty() {
            return None;
        }
        let n = self.vars.len();
        let mut per = vec![0u32; n];
        let mut total = 0u32;
        for e in self.terms.keys() {
            total = total.max(e.total_degree());
            for (i, &k) in e.0.iter().enumerate() {
                per[i] = per[i].max(k);
            }
        }
        Some(DegreeProfile {
            total,
            per_variable: per,
        })
    }

    /// Relabels variables without touching exponents. Lengths must match.
    pub fn rename(&self, vars: VarSet) -> Polynomial {
        assert_eq!(vars.len(), self.vars.len(), "rename must preserve arity");
        Polynomial {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Applies a variable permutation: variable `i` of `self` becomes
    /// variable `perm[i]` of the result, i.e. the result equals
    /// `self` composed with the inverse position map.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.vars.len());
        let n = self.vars.len();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; n];
            for (i, &k) in e.0.iter().enumerate() {
                ne[perm[i]] = k;
            }
            terms.insert(Exponent(ne), c.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Embeds into a wider variable context, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Polynomial, EmbedError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            match target.index_of(name) {
                Some(i) => map.push(i),
                None => {
                    return Err(EmbedError {
                        missing: name.clone(),
                    })
                }
            }
        }
        let mut out = Polynomial::zero(target.clone());
        for (e, c) in &self.terms {
            let mut ne = Exponent::zeros(target.len());
            for (i, &k) in e.0.iter().enumerate() {
                ne.0[map[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }
}

/// Error for binary operations across distinct variable contexts.
#[derive(Debug, Clone)]
pub struct ContextMismatch {
    pub left: VarSet,
    pub right: VarSet,
}

impl fmt::Display for ContextMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable contexts differ: {:?} vs {:?}",
            self.left.names(),
            self.right.names()
        )
    }
}

impl std::error::Error for ContextMismatch {}

/// Error when an evaluation point has the wrong arity.
#[derive(Debug, Clone)]
pub struct EvalError {
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "evaluation point supplies {} values, polynomial has {} variables",
            self.got, self.expected
        )
    }
}

impl std::error::Error for EvalError {}

/// Error when embedding into a context that lacks a variable.
#[derive(Debug, Clone)]
pub struct EmbedError {
    pub missing: String,
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "target context lacks variable `{}`", self.missing)
    }
}

impl std::error::Error for EmbedError {}

pub(crate) fn pow_rational(base: &BigRational, k: u32) -> BigRational {
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Lossy conversion used only on float-facing paths.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = bigint_to_f64(r.numer());
    let den = bigint_to_f64(r.denom());
    num / den
}

fn bigint_to_f64(i: &BigInt) -> f64 {
    // digit-wise conversion; BigInt does not expose To f64 losslessly for huge values
    let (sign, digits) = i.to_u64_digits();
    let mut val = 0.0f64;
    for &d in digits.iter().rev() {
        val = val * 1.8446744073709552e19 + d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -val,
        _ => val,
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_vars(rhs);
        let mut out = Polynomial::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.total_degree() == 0;
            let coeff_is_one = abs.is_one();
            if is_const || !coeff_is_one {
                write_rational(f, &abs)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_factor = true;
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first_factor {
                    write!(f, "*")?;
                }
                first_factor = false;
                write!(f, "{}", names[i])?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn xy() -> VarSet {
        VarSet::new(["x", "y"])
    }

    #[test]
    fn additive_inverse_cancels() {
        let v = xy();
        let x2 = Polynomial::var(v.clone(), 0).pow(2);
        let sum = &x2 + &x2.neg();
        assert!(sum.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let x = Polynomial::var(v.clone(), 0);
        let y = Polynomial::var(v.clone(), 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &x.pow(2) - &y.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pow_binomial_coefficients() {
        // (1 + x^2)^4 has coefficients 1,4,6,4,1 on x^0,x^2,...,x^8
        let v = VarSet::new(["x"]);
        let p = &Polynomial::one(v.clone()) + &Polynomial::var(v.clone(), 0).pow(2);
        let q = p.pow(4);
        assert_eq!(q.term_count(), 5);
        for (k, expect) in [(0u32, 1i64), (2, 4), (4, 6), (6, 4), (8, 1)] {
            assert_eq!(q.coeff(&Exponent(vec![k])), rat(expect));
        }
    }

    #[test]
    fn evaluate_at_ones_sums_coefficients() {
        let v = xy();
        let p = parse("2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4", &v).unwrap();
        let val = p.evaluate(&[rat(1), rat(1)]).unwrap();
        assert_eq!(val, rat(8));
    }

    #[test]
    fn evaluate_at_zero_gives_constant_term() {
        let v = xy();
        let p = parse("7 + x + 3*x*y^2", &v).unwrap();
        assert_eq!(p.evaluate(&[rat(0), rat(0)]).unwrap(), rat(7));
    }

    #[test]
    fn evaluate_arity_checked() {
        let v = xy();
        let p = parse("x + y", &v).unwrap();
        assert!(p.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn degree_profile_cases() {
        let v = xy();
        let p = parse("x^3*y^5", &v).unwrap();
        let d = p.degree_profile().unwrap();
        assert_eq!(d.total, 8);
        assert_eq!(d.per_variable, vec![3, 5]);

        let c = parse("5", &v).unwrap();
        assert_eq!(c.degree_profile().unwrap().total, 0);

        let z = Polynomial::zero(v);
        assert!(z.degree_profile().is_none());
    }

    #[test]
    fn grlex_display_order() {
        let v = xy();
        let p = parse("5*y^4 + 2*x^3*y - x^2*y^2 + 2*x^4", &v).unwrap();
        assert_eq!(p.to_string(), "2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4");
    }

    #[test]
    fn permute_swaps_variables() {
        let v = xy();
        let p = parse("x^2*y + 3*x", &v).unwrap();
        let q = p.permute_vars(&[1, 0]);
        assert_eq!(q, parse("y^2*x + 3*y", &v).unwrap());
    }

    #[test]
    fn embed_into_wider_context() {
        let v = xy();
        let big = VarSet::new(["r", "x", "y"]);
        let p = parse("x*y + 1", &v).unwrap();
        let q = p.embed(&big).unwrap();
        assert_eq!(q, parse("x*y + 1", &big).unwrap());
        assert!(p.embed(&VarSet::new(["x", "z"])).is_err());
    }

    #[test]
    fn checked_ops_reject_mismatched_contexts() {
        let p = parse("x", &VarSet::new(["x"])).unwrap();
        let q = parse("y", &VarSet::new(["y"])).unwrap();
        assert!(p.checked_add(&q).is_err());
        assert!(p.checked_mul(&q).is_err());
    }
}
