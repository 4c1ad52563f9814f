//! Integer-coefficient Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial with `i64` coefficients, stored sparsely as
/// exponent -> coefficient with no zero entries. Exponents may be negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn new(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.entry(e).or_insert(0i64);
            *entry += c;
            if *entry == 0 {
                coeffs.remove(&e);
            }
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 1)
    }

    /// The monomial `c * t^e`.
    pub fn term(exponent: i64, coefficient: i64) -> Self {
        Self::new([(exponent, coefficient)])
    }

    pub fn constant(c: i64) -> Self {
        Self::term(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Coefficients from the lowest exponent to the highest, inclusive.
    /// Empty for the zero polynomial.
    pub fn coefficient_list(&self) -> Vec<i64> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coefficient(e)).collect(),
            _ => Vec::new(),
        }
    }

    /// Evaluates at an integer. Negative exponents are only meaningful for
    /// the units `x = ±1` and panic otherwise.
    pub fn evaluate(&self, x: i64) -> i64 {
        self.terms()
            .map(|(e, c)| {
                assert!(e >= 0 || x == 1 || x == -1, "negative exponent needs unit argument");
                let p = if e >= 0 {
                    x.pow(e as u32)
                } else if x == 1 {
                    1
                } else {
                    // x == -1: parity decides
                    if e % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                };
                c * p
            })
            .sum()
    }

    pub fn evaluate_at_minus_one(&self) -> i64 {
        self.evaluate(-1)
    }

    /// Substitutes `t -> 1/t`.
    pub fn reversed(&self) -> Self {
        Self::new(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Multiplies by the unit `±t^k` that shifts the lowest exponent to 0
    /// and makes the constant coefficient positive. The zero polynomial is
    /// its own normal form.
    pub fn normalize(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let flip = if self.coefficient(lo) < 0 { -1 } else { 1 };
        Self::new(self.terms().map(|(e, c)| (e - lo, c * flip)))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::new(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::new(self.terms().chain(rhs.terms().map(|(e, c)| (e, -c))))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = Vec::with_capacity(self.coeffs.len() * rhs.coeffs.len());
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                terms.push((e1 + e2, c1 * c2));
            }
        }
        LaurentPolynomial::new(terms)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.terms().map(|(e, c)| (e, -c)))
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                $trait::$method(&self, rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl std::fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "[0]");
        }
        let lo = self.min_exponent().expect("nonzero");
        if lo != 0 {
            write!(f, "t^{lo}*")?;
        }
        write!(f, "[")?;
        for (i, c) in self.coefficient_list().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::new(terms.iter().copied())
    }

    #[test]
    fn ring_basics() {
        let one_minus_t = poly(&[(0, 1), (1, -1)]);
        let one_plus_t = poly(&[(0, 1), (1, 1)]);
        assert_eq!(&one_minus_t * &one_plus_t, poly(&[(0, 1), (2, -1)]));

        let p = poly(&[(-1, 2), (3, 5)]);
        assert_eq!(&p + &(-&p), LaurentPolynomial::zero());
        assert_eq!(&p - &p, LaurentPolynomial::zero());
        assert_eq!(&p * &LaurentPolynomial::one(), p);
    }

    #[test]
    fn normalization() {
        // -t^-1 + 3 - t  ->  1 - 3t + t^2
        let p = poly(&[(-1, -1), (0, 3), (1, -1)]);
        let n = p.normalize();
        assert_eq!(n, poly(&[(0, 1), (1, -3), (2, 1)]));
        assert_eq!(n.coefficient_list(), vec![1, -3, 1]);
        assert_eq!(n.normalize(), n);
        assert_eq!(LaurentPolynomial::zero().normalize(), LaurentPolynomial::zero());
    }

    #[test]
    fn evaluation() {
        let trefoil = poly(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(trefoil.evaluate_at_minus_one(), 3);
        assert_eq!(trefoil.evaluate(1), 1);
        let p = poly(&[(-2, 5), (-1, 1)]);
        assert_eq!(p.evaluate_at_minus_one(), 4);
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[(0, 1), (1, -1), (2, 1)]).to_string(), "[1,-1,1]");
        assert_eq!(poly(&[(-1, 1), (1, 2)]).to_string(), "t^-1*[1,0,2]");
        assert_eq!(LaurentPolynomial::zero().to_string(), "[0]");
    }

    #[test]
    fn reversal_detects_palindromes() {
        let sym = poly(&[(0, 1), (1, -3), (2, 1)]);
        assert_eq!(sym.reversed().normalize(), sym);
        let asym = poly(&[(0, 1), (1, 2)]);
        assert_ne!(asym.reversed().normalize(), asym);
    }
}
