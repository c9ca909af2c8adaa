//! Rank generating series and the power-series lemma behind the
//! S² rank identity.

use std::fmt;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::sym2::sym2;

/// A Laurent polynomial with integer coefficients: `coeffs[k]` multiplies t^(lo+k).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    lo: i64,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn new(lo: i64, coeffs: Vec<i64>) -> Self {
        Laurent { lo, coeffs }.trimmed()
    }

    pub fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.lo += lead as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: i64) -> i64 {
        if n < self.lo {
            return 0;
        }
        self.coeffs.get((n - self.lo) as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as (exponent, coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(k, &c)| (self.lo + k as i64, c))
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        Laurent::new(lo, (lo..hi).map(|n| self.coeff(n) + other.coeff(n)).collect())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Laurent::new(self.lo + other.lo, c)
    }

    pub fn scale(&self, k: i64) -> Laurent {
        Laurent::new(self.lo, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// P(−t²).
    pub fn at_minus_t_squared(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0; 2 * self.coeffs.len() - 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            let n = self.lo + k as i64;
            c[2 * k] = if n.rem_euclid(2) == 1 { -a } else { a };
        }
        Laurent::new(2 * self.lo, c)
    }

    /// Exact division by an integer, if every coefficient is divisible.
    pub fn div_exact(&self, k: i64) -> Option<Laurent> {
        self.coeffs.iter().all(|c| c % k == 0).then(|| Laurent::new(self.lo, self.coeffs.iter().map(|c| c / k).collect()))
    }
}

impl fmt::Display for Laurent {
    /// `1+2t+2t^2`, ascending powers, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (n, c)) in self.terms().enumerate() {
            if k > 0 && c > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if c < 0 {
                write!(f, "-")?;
            }
            match (n, mag) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => {}
                (_, m) => write!(f, "{m}")?,
            }
            match n {
                0 => {}
                1 => write!(f, "t")?,
                n => write!(f, "t^{n}")?,
            }
        }
        Ok(())
    }
}

/// P_X(t) = Σ rank(X_n) tⁿ.
pub fn rank_series(x: &FreeComplex) -> Laurent {
    Laurent::new(x.lo(), x.ranks().iter().map(|&r| r as i64).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesIdentity {
    /// P_{S²(X)}, read from the constructed complex.
    pub lhs: Laurent,
    /// ½[P_X(t)² + P_X(−t²)].
    pub rhs: Laurent,
}

impl SeriesIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn verify_series_identity(x: &FreeComplex) -> Result<SeriesIdentity> {
    let lhs = rank_series(&sym2(x)?.complex);
    let p = rank_series(x);
    let twice = p.mul(&p).add(&p.at_minus_t_squared());
    let rhs = twice.div_exact(2).ok_or_else(|| Error::Invalid(format!("{twice} is not divisible by 2")))?;
    Ok(SeriesIdentity { lhs, rhs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Invalid(format!("sign must be + or -, got {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One of the four special cases of the lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincCase {
    pub label: char,
    /// The case's hypothesis holds for the given data.
    pub applies: bool,
    /// The case's conclusion holds for the given data.
    pub conclusion: bool,
    pub statement: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincReport {
    pub sign: Sign,
    pub order: usize,
    /// Coefficients of Q(t)² ± Q(−t²) in degrees 0..=order.
    pub expansion: Vec<i64>,
    /// The expansion is constant to the given order.
    pub constant: bool,
    /// r_i = 0 for 0 < i ≤ order.
    pub higher_vanish: bool,
    pub cases: Vec<PoincCase>,
}

impl PoincReport {
    /// Constant expansion forces the higher coefficients to vanish, and every
    /// applicable case has its conclusion.
    pub fn consistent(&self) -> bool {
        (!self.constant || self.higher_vanish) && self.cases.iter().all(|c| !c.applies || c.conclusion)
    }

    /// The constant value, when the expansion is constant.
    pub fn value(&self) -> Option<i64> {
        self.constant.then(|| self.expansion[0])
    }
}

/// Evaluates Q(t)² ± Q(−t²) to order N for Q = Σ rᵢ tⁱ, treating the missing
/// coefficients as zero, so every verdict means "consistent to order N".
pub fn poinc_check(coeffs: &[u64], sign: Sign, order: usize) -> Result<PoincReport> {
    if coeffs.first().copied().unwrap_or(0) == 0 {
        return Err(Error::Invalid("the constant coefficient r0 must be positive".into()));
    }
    if order < 2 {
        return Err(Error::Invalid("the truncation order must be at least 2".into()));
    }
    let r = |i: usize| coeffs.get(i).copied().unwrap_or(0) as i64;
    let expansion: Vec<i64> = (0..=order)
        .map(|n| {
            let square: i64 = (0..=n).map(|i| r(i) * r(n - i)).sum();
            let sub = if n % 2 == 0 {
                let k = n / 2;
                if k % 2 == 1 {
                    -r(k)
                } else {
                    r(k)
                }
            } else {
                0
            };
            match sign {
                Sign::Plus => square + sub,
                Sign::Minus => square - sub,
            }
        })
        .collect();
    let constant = expansion[1..].iter().all(|&c| c == 0);
    let higher_vanish = (1..=order).all(|i| r(i) == 0);
    let value = constant.then(|| expansion[0]);
    let q_is = |k: i64| r(0) == k && higher_vanish;
    let cases = vec![
        PoincCase {
            label: 'a',
            applies: sign == Sign::Plus,
            conclusion: value != Some(0),
            statement: "Q(t)^2+Q(-t^2) != 0",
        },
        PoincCase {
            label: 'b',
            applies: sign == Sign::Minus && value == Some(0),
            conclusion: q_is(1),
            statement: "Q(t)^2-Q(-t^2) = 0 implies Q = 1",
        },
        PoincCase {
            label: 'c',
            applies: sign == Sign::Plus && value == Some(2),
            conclusion: q_is(1),
            statement: "Q(t)^2+Q(-t^2) = 2 implies Q = 1",
        },
        PoincCase {
            label: 'd',
            applies: sign == Sign::Minus && value == Some(2),
            conclusion: q_is(2),
            statement: "Q(t)^2-Q(-t^2) = 2 implies Q = 2",
        },
    ];
    Ok(PoincReport { sign, order, expansion, constant, higher_vanish, cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;
    use crate::scalar::{Ring, Scalar};

    #[test]
    fn formatting() {
        assert_eq!(Laurent::new(0, vec![1, 2, 2, 2, 1]).to_string(), "1+2t+2t^2+2t^3+t^4");
        assert_eq!(Laurent::new(-1, vec![3, 0, -1]).to_string(), "3t^-1-t");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn koszul_identity() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let k = koszul(&[Scalar::variable(&r, "x").unwrap(), Scalar::variable(&r, "y").unwrap()]).unwrap();
        assert_eq!(rank_series(&k).to_string(), "1+2t+t^2");
        let id = verify_series_identity(&k).unwrap();
        assert!(id.holds());
        assert_eq!(id.lhs.to_string(), "1+2t+2t^2+2t^3+t^4");
    }

    #[test]
    fn lemma_cases() {
        let one = poinc_check(&[1], Sign::Minus, 10).unwrap();
        assert_eq!(one.value(), Some(0));
        assert!(one.cases[1].applies && one.cases[1].conclusion);
        let two = poinc_check(&[2], Sign::Minus, 10).unwrap();
        assert_eq!(two.value(), Some(2));
        assert!(two.cases[3].applies && two.cases[3].conclusion);
        let lin = poinc_check(&[1, 1], Sign::Minus, 10).unwrap();
        assert!(!lin.constant);
        assert_eq!(&lin.expansion[..3], [0, 2, 2]);
        assert!(poinc_check(&[0, 1], Sign::Plus, 4).is_err());
    }
}
