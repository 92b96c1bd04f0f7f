//! Truncated formal power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `Σ_{k ≤ order} c_k x^k`; every operation is exact through `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads or truncates `coeffs` to degrees `0..=order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    /// The exponential generating function `Σ d_n x^n / n!` of a dimension table.
    pub fn from_dims(dims: &[(usize, usize)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(n, d) in dims {
            if n <= order {
                s.coeffs[n] = &Rational::from_int(d as i64) / &Rational::factorial(n as u32);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `n! c_n` for `n = 1..=order`: the dimensions behind an exponential series.
    pub fn dims(&self) -> Vec<Rational> {
        (1..=self.order()).map(|n| &self.coeffs[n] * &Rational::factorial(n as u32)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    fn truncated_to(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn derivative(&self) -> Self {
        let order = self.order();
        let coeffs = (1..=order).map(|k| &self.coeffs[k] * &Rational::from_int(k as i64)).collect();
        // the top coefficient is unknown after differentiating
        Self::new(coeffs, order.saturating_sub(1))
    }

    /// Antiderivative with zero constant term, one order higher.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, a)| a / &Rational::from_int(k as i64 + 1)));
        let order = self.order() + 1;
        Self::new(coeffs, order)
    }

    /// `1 / self`; needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Unsupported("reciprocal of a series without constant term".into()));
        }
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![inv0.clone()];
        for k in 1..=self.order() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&acc * &inv0));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `log(self)`, for a series with constant term 1: the antiderivative of
    /// `self' / self`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Unsupported("log needs constant term 1".into()));
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let q = &self.derivative() * &self.reciprocal()?;
        Ok(Self::new(q.integral().coeffs, order))
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.truncated_to(inner);
        let inner = Self::new(inner.coeffs.clone(), order);
        // Horner: a_0 + inner (a_1 + inner (a_2 + ...))
        let mut acc = Self::zero(order);
        for a in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = &acc.coeffs[0] + a;
        }
        Ok(acc)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.truncated_to(rhs);
        PowerSeries { coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self + &(-rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.truncated_to(rhs);
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PowerSeries { coeffs }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}·x"),
                _ => format!("{c}·x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `((1 - log(1 - x))² - 1) / 2` through `order`.
pub fn series_sp_dual(order: usize) -> PowerSeries {
    let one = PowerSeries::constant(Rational::one(), order);
    let log = (&one - &PowerSeries::x(order)).log().expect("constant term 1");
    let a = &one - &log;
    (&(&a * &a) - &one).scale(&Rational::new(1, 2))
}

/// Whether `h1(-h2(-x)) = x` through `order`.
pub fn check_koszul_inverse(h1: &PowerSeries, h2: &PowerSeries, order: usize) -> Result<bool> {
    let minus_x = -&PowerSeries::x(order);
    let h1 = PowerSeries::new(h1.coeffs.clone(), order);
    let h2 = PowerSeries::new(h2.coeffs.clone(), order);
    let inner = -&h2.compose(&minus_x)?;
    Ok(h1.compose(&inner)? == PowerSeries::x(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64], order: usize) -> PowerSeries {
        PowerSeries::new(xs.iter().map(|&x| Rational::from_int(x)).collect(), order)
    }

    #[test]
    fn sp_dual_dimensions() {
        let s = series_sp_dual(9);
        assert!(s.coeff(0).is_zero());
        let dims: Vec<i64> = s.dims().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 5, 17, 74, 394, 2484, 18108, 149904]);
    }

    #[test]
    fn logarithm_of_geometric_series() {
        // log(1/(1-x)) = Σ x^k / k
        let g = ints(&[1, -1], 6).reciprocal().unwrap();
        let l = g.log().unwrap();
        for k in 1..=6 {
            assert_eq!(l.coeff(k), Rational::new(1, k as i64));
        }
        assert!(matches!(ints(&[2, 1], 3).log(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn koszul_inverse_trivial_and_sound() {
        let x = PowerSeries::x(6);
        assert!(check_koszul_inverse(&x, &x, 6).unwrap());
        // Com and Lie: e^x - 1 and -log(1 - x)
        let com = PowerSeries::from_dims(&(1..=6).map(|n| (n, 1)).collect::<Vec<_>>(), 6);
        let lie = PowerSeries::from_dims(&(1..=6).map(|n| (n, (1..n).product())).collect::<Vec<_>>(), 6);
        assert!(check_koszul_inverse(&com, &lie, 6).unwrap());
        let mut bad = com.clone();
        bad.coeffs[4] = &bad.coeffs[4] + &Rational::one();
        assert!(!check_koszul_inverse(&bad, &lie, 6).unwrap());
        let shifted = ints(&[1, 1], 6);
        assert!(matches!(check_koszul_inverse(&x, &shifted, 6), Err(Error::NonzeroConstantTerm)));
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            a in proptest::collection::vec(-5i64..5, 5),
            b in proptest::collection::vec(-5i64..5, 5),
            c in proptest::collection::vec(-5i64..5, 5),
        ) {
            let a = ints(&a, 4);
            let mut b = ints(&b, 4);
            let mut c = ints(&c, 4);
            b.coeffs[0] = Rational::zero();
            c.coeffs[0] = Rational::zero();
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn log_turns_products_into_sums(
            a in proptest::collection::vec(-5i64..5, 5),
            b in proptest::collection::vec(-5i64..5, 5),
        ) {
            let mut a = ints(&a, 4);
            let mut b = ints(&b, 4);
            a.coeffs[0] = Rational::one();
            b.coeffs[0] = Rational::one();
            let lhs = (&a * &b).log().unwrap();
            let rhs = &a.log().unwrap() + &b.log().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
