use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{QpolyError, Var, NVARS};

/// Exponent vector over the fixed alphabet. Ordered graded-lexicographically:
/// total degree first, then lexicographically in `q, t, z, a, b, c, d, x, y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exponents(pub [i32; NVARS]);

impl Exponents {
    pub const ONE: Exponents = Exponents([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Self {
        let mut x = [0; NVARS];
        x[v.index()] = e;
        Exponents(x)
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut x = [0; NVARS];
        for &(v, e) in pairs {
            x[v.index()] += e;
        }
        Exponents(x)
    }

    pub fn get(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: Var, e: i32) {
        self.0[v.index()] = e;
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let mut x = self.0;
        for (l, r) in x.iter_mut().zip(other.0.iter()) {
            *l += r;
        }
        Exponents(x)
    }

    pub fn div(&self, other: &Exponents) -> Exponents {
        let mut x = self.0;
        for (l, r) in x.iter_mut().zip(other.0.iter()) {
            *l -= r;
        }
        Exponents(x)
    }

    pub fn pow(&self, n: i32) -> Exponents {
        let mut x = self.0;
        for e in x.iter_mut() {
            *e *= n;
        }
        Exponents(x)
    }

    /// Variables appearing with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        Var::ALL
            .iter()
            .copied()
            .filter_map(move |v| Some((v, self.get(v))).filter(|&(_, e)| e != 0))
    }

    /// Writes `q^2*t^-1` style text; the empty product is written as `1`.
    pub(crate) fn write_factors(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_factors(f)
    }
}

/// A single term `coeff * x^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exps: Exponents,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, pairs: &[(Var, i32)]) -> Self {
        Monomial {
            coeff: coeff.into(),
            exps: Exponents::from_pairs(pairs),
        }
    }

    pub fn one() -> Self {
        Monomial {
            coeff: BigInt::one(),
            exps: Exponents::ONE,
        }
    }

    /// `v^e` with coefficient 1.
    pub fn var(v: Var, e: i32) -> Self {
        Monomial {
            coeff: BigInt::one(),
            exps: Exponents::var(v, e),
        }
    }

    /// `q^e`.
    pub fn q(e: i32) -> Self {
        Monomial::var(Var::Q, e)
    }

    /// `Q = abcd`, the Boulet-Stanley norm monomial.
    pub fn big_q() -> Self {
        Monomial::new(1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1), (Var::D, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn neg(&self) -> Monomial {
        Monomial {
            coeff: -&self.coeff,
            exps: self.exps,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            coeff: &self.coeff * &other.coeff,
            exps: self.exps.mul(&other.exps),
        }
    }

    /// Integer power; negative powers need a unit coefficient.
    pub fn pow(&self, n: i32) -> Result<Monomial, QpolyError> {
        let coeff = if n >= 0 {
            num_traits::pow(self.coeff.clone(), n as usize)
        } else if self.coeff.abs().is_one() {
            num_traits::pow(self.coeff.clone(), n.unsigned_abs() as usize)
        } else {
            return Err(QpolyError::NonInvertibleCoefficient(self.coeff.to_string()));
        };
        Ok(Monomial {
            coeff,
            exps: self.exps.pow(n),
        })
    }

    /// Nonnegative power, infallible.
    pub fn powu(&self, n: u32) -> Monomial {
        Monomial {
            coeff: num_traits::pow(self.coeff.clone(), n as usize),
            exps: self.exps.pow(n as i32),
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Monomial {
        Monomial {
            coeff: &self.coeff * c.into(),
            exps: self.exps,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_one() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff == -BigInt::one() {
            f.write_str("-")?;
        } else if !self.coeff.is_one() {
            write!(f, "{}*", self.coeff)?;
        }
        self.exps.write_factors(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let qt = Exponents::from_pairs(&[(Var::Q, 1), (Var::T, 1)]);
        let q2 = Exponents::var(Var::Q, 2);
        let q3_t = Exponents::from_pairs(&[(Var::Q, 3), (Var::T, -1)]);
        let one = Exponents::ONE;
        assert!(one < qt);
        assert!(qt < q2);
        assert!(q2 < q3_t);
        assert!(Exponents::var(Var::Q, 5) > q3_t);
    }

    #[test]
    fn negative_power_needs_unit() {
        assert!(Monomial::new(2, &[(Var::Q, 1)]).pow(-1).is_err());
        let m = Monomial::new(-1, &[(Var::Q, 1)]).pow(-3).unwrap();
        assert_eq!(m, Monomial::new(-1, &[(Var::Q, -3)]));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(-1, &[(Var::Q, 2)]).to_string(), "-q^2");
        assert_eq!(
            Monomial::new(3, &[(Var::Q, 1), (Var::T, -1)]).to_string(),
            "3*q*t^-1"
        );
        assert_eq!(Monomial::new(7, &[]).to_string(), "7");
        assert_eq!(Monomial::big_q().to_string(), "a*b*c*d");
    }
}
