//! Sparse Laurent polynomials on a one- or two-dimensional torus.
//!
//! A term `coeff * e^{i(m1*x1 + m2*x2)}` is stored as `(m1, m2) -> coeff`
//! with Gaussian-rational coefficients and no zero coefficient ever kept.
//! The "leading term" is taken with respect to the dominance order of the
//! positive chamber x1 > x2 > 0: lexicographic on (m1+m2, m1).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::rational::{rat, rat_int, Rational};
use crate::{Error, Result};

/// Exponent vector; the second entry is 0 for one-variable polynomials.
pub type ExpVec = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<ExpVec, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        assert!(vars == 1 || vars == 2);
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term((0, 0), c);
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, GaussianRational::one())
    }

    /// The single term `e^{i m x_var}` (var is 0-based).
    pub fn exponential(vars: usize, var: usize, m: i64) -> Self {
        assert!(var < vars);
        let mut p = Self::zero(vars);
        let e = if var == 0 { (m, 0) } else { (0, m) };
        p.add_term(e, GaussianRational::one());
        p
    }

    /// cos x_var = (e^{ix} + e^{-ix})/2.
    pub fn cos(vars: usize, var: usize) -> Self {
        let half = GaussianRational::from_rational(rat(1, 2));
        let mut p = Self::zero(vars);
        let e = |m: i64| if var == 0 { (m, 0) } else { (0, m) };
        p.add_term(e(1), half.clone());
        p.add_term(e(-1), half);
        p
    }

    /// sin x_var = (e^{ix} - e^{-ix})/(2i).
    pub fn sin(vars: usize, var: usize) -> Self {
        // 1/(2i) = -i/2
        let c = GaussianRational::new(rat_int(0), rat(-1, 2));
        let mut p = Self::zero(vars);
        let e = |m: i64| if var == 0 { (m, 0) } else { (0, m) };
        p.add_term(e(1), c.clone());
        p.add_term(e(-1), -c);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: ExpVec) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, e: ExpVec, c: GaussianRational) {
        if self.vars == 1 {
            assert_eq!(e.1, 0, "one-variable polynomial with a second exponent");
        }
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    /// Coefficient-wise complex conjugation on the real torus:
    /// conj(sum c e^{i m x}) = sum conj(c) e^{-i m x}.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            out.add_term((-e.0, -e.1), v.conj());
        }
        out
    }

    /// Value at the identity (all x = 0): the sum of all coefficients.
    pub fn eval_identity(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for v in self.terms.values() {
            acc += v.clone();
        }
        acc
    }

    /// Substitute e^{i x_var} = c + i s for a rational circle point
    /// (c^2 + s^2 = 1), leaving the other variable formal.
    pub fn specialize(&self, var: usize, c: &Rational, s: &Rational) -> Self {
        assert!(var < self.vars);
        let point = GaussianRational::new(c.clone(), s.clone());
        let inv = point.conj(); // on the circle, e^{-ix} = conj(e^{ix})
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            let m = if var == 0 { e.0 } else { e.1 };
            let rest = if var == 0 { (0, e.1) } else { (e.0, 0) };
            let mut factor = GaussianRational::one();
            let base = if m >= 0 { point.clone() } else { inv.clone() };
            for _ in 0..m.abs() {
                factor *= base.clone();
            }
            out.add_term(rest, &factor * v);
        }
        out
    }

    /// JSON form: one `[[exponents], re, im]` triple per term, re/im as
    /// exact rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        use crate::scalars::rational::rational_string;
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps = if self.vars == 1 {
                    vec![e.0]
                } else {
                    vec![e.0, e.1]
                };
                serde_json::json!([exps, rational_string(&c.re), rational_string(&c.im)])
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    /// Maximal exponent under lexicographic (m1+m2, m1) with its coefficient.
    pub fn leading_term(&self) -> Result<(ExpVec, GaussianRational)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.0 + e.1, e.0))
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, v.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, -v.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = LaurentPoly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, v) in &self.terms {
            out.add_term(*e, -v.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if self.vars == 1 {
                write!(f, "({c})e[{}]", e.0)?;
            } else {
                write!(f, "({c})e[{},{}]", e.0, e.1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cosine_leading_term() {
        let p = LaurentPoly::cos(1, 0).scale(&GaussianRational::from_int(2));
        // e^{ix} + e^{-ix}
        let (e, c) = p.leading_term().unwrap();
        assert_eq!(e, (1, 0));
        assert_eq!(c, GaussianRational::one());
    }

    #[test]
    fn two_variable_product_leading() {
        // cos x1 cos x2 has leading exponent (1,1) with coefficient 1/4.
        let p = &LaurentPoly::cos(2, 0) * &LaurentPoly::cos(2, 1);
        let (e, c) = p.leading_term().unwrap();
        assert_eq!(e, (1, 1));
        assert_eq!(c, GaussianRational::from_rational(rat(1, 4)));
    }

    #[test]
    fn constant_leading_term_and_zero_error() {
        let one = LaurentPoly::one(2);
        assert_eq!(one.leading_term().unwrap(), ((0, 0), GaussianRational::one()));
        assert!(matches!(
            LaurentPoly::zero(1).leading_term(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn pythagorean_identity() {
        let c = LaurentPoly::cos(1, 0);
        let s = LaurentPoly::sin(1, 0);
        let sum = &(&c * &c) + &(&s * &s);
        assert_eq!(sum, LaurentPoly::one(1));
    }

    #[test]
    fn conj_product_constant_term_is_real() {
        let mut p = LaurentPoly::zero(2);
        p.add_term((2, -1), GaussianRational::new(rat(1, 3), rat(5, 7)));
        p.add_term((0, 1), GaussianRational::new(rat(-2, 5), rat(1, 2)));
        let q = &p.conj() * &p;
        let c0 = q.coeff((0, 0));
        assert!(c0.im.is_zero());
    }

    #[test]
    fn specialization_on_the_circle() {
        // 3-4-5 point: cos = 3/5, sin = 4/5.
        let p = LaurentPoly::cos(1, 0);
        let v = p.specialize(0, &rat(3, 5), &rat(4, 5));
        assert_eq!(v.eval_identity(), GaussianRational::from_rational(rat(3, 5)));
        let s = LaurentPoly::sin(1, 0).specialize(0, &rat(3, 5), &rat(4, 5));
        assert_eq!(s.eval_identity(), GaussianRational::from_rational(rat(4, 5)));
    }
}
