//! Laurent polynomials in `T` with half-integer exponents and integer
//! coefficients. Exponents are stored doubled so all arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfLaurentPoly {
    // doubled exponent -> coefficient, zero coefficients never stored
    coeffs: BTreeMap<i64, i64>,
}

impl HalfLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * T^(exp2 / 2)`.
    pub fn monomial(c: i64, exp2: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp2, c);
        p
    }

    /// `T^{-1/2} - T^{1/2}`
    pub fn half_difference() -> Self {
        Self::monomial(1, -1) + Self::monomial(-1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (exp2, c) in terms {
            p.add_term(exp2, c);
        }
        p
    }

    /// Builds a polynomial with integer exponents from `(exponent, coefficient)` pairs.
    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    pub fn add_term(&mut self, exp2: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp2).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&exp2);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Coefficient of `T^(exp2 / 2)`.
    pub fn coeff2(&self, exp2: i64) -> i64 {
        self.coeffs.get(&exp2).copied().unwrap_or(0)
    }

    /// Coefficient of `T^s` for integral `s`.
    pub fn coeff(&self, s: i64) -> i64 {
        self.coeff2(2 * s)
    }

    pub fn max_exp2(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// Largest exponent, for polynomials with integral exponents.
    pub fn degree(&self) -> Option<i64> {
        self.max_exp2().map(|e| e.div_euclid(2))
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff2(-e) == c)
    }

    /// `p(T^{-1}) = -p(T)`, as for links with an even number of components.
    pub fn is_antisymmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff2(-e) == -c)
    }

    /// Multiplies by `T^(shift2 / 2)`.
    pub fn shifted(&self, shift2: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + shift2, c)).collect() }
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `T = 1`.
    pub fn value_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Value at `T = -1` with `T^{1/2} = i`, as a Gaussian integer `(re, im)`.
    pub fn value_at_minus_one(&self) -> (i64, i64) {
        let mut re = 0;
        let mut im = 0;
        for (&e, &c) in &self.coeffs {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    /// Normalizes by `±T^c` so that `p(T) = p(T^{-1})` and `p(1) = 1`.
    /// Returns `None` when no such normalization exists.
    pub fn symmetrized(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp2()?, self.max_exp2()?);
        if (lo + hi) % 2 != 0 {
            // mixed integral and half-integral exponents cannot be centered
            return None;
        }
        let centered = self.shifted(-(lo + hi) / 2);
        let sign = match centered.value_at_one() {
            1 => 1,
            -1 => -1,
            _ => return None,
        };
        let p = centered.scaled(sign);
        p.is_symmetric().then_some(p)
    }
}

impl Add for HalfLaurentPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for HalfLaurentPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for HalfLaurentPoly {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl Mul for &HalfLaurentPoly {
    type Output = HalfLaurentPoly;
    fn mul(self, rhs: &HalfLaurentPoly) -> HalfLaurentPoly {
        let mut p = HalfLaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Mul for HalfLaurentPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for HalfLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                2 => "T".to_string(),
                e if e % 2 == 0 => format!("T^{}", e / 2),
                e => format!("T^{}/2", e),
            };
            match (abs, var.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => write!(f, "{var}")?,
                _ => write!(f, "{abs}{var}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> HalfLaurentPoly {
        HalfLaurentPoly::from_int_terms([(1, 1), (0, -1), (-1, 1)])
    }

    #[test]
    fn arithmetic() {
        let d = HalfLaurentPoly::half_difference();
        let sq = &d * &d;
        assert_eq!(sq, HalfLaurentPoly::from_int_terms([(-1, 1), (0, -2), (1, 1)]));
        assert_eq!(d.clone() - d, HalfLaurentPoly::zero());
        assert_eq!(trefoil().pow(0), HalfLaurentPoly::one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(trefoil().value_at_one(), 1);
        assert_eq!(trefoil().value_at_minus_one(), (-3, 0));
        // (m/2)(T^{-1/2} - T^{1/2}) at T^{1/2} = i gives -m i
        let torus = HalfLaurentPoly::half_difference().scaled(-3);
        assert_eq!(torus.value_at_minus_one(), (0, 6));
    }

    #[test]
    fn symmetrize() {
        let raw = trefoil().shifted(4).scaled(-1);
        assert_eq!(raw.symmetrized(), Some(trefoil()));
        assert_eq!(HalfLaurentPoly::from_int_terms([(0, 1), (1, 1)]).symmetrized(), None);
        assert_eq!(HalfLaurentPoly::from_int_terms([(0, 2), (1, -1)]).symmetrized(), None);
    }

    #[test]
    fn display() {
        assert_eq!(trefoil().to_string(), "T - 1 + T^-1");
        assert_eq!(HalfLaurentPoly::half_difference().to_string(), "-T^1/2 + T^-1/2");
        assert_eq!(HalfLaurentPoly::zero().to_string(), "0");
    }
}
