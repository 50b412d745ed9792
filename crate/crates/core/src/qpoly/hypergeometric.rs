use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QpolyError;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `x^k` for any integer `k`; the caller guarantees `x != 0` when `k < 0`.
pub(crate) fn rational_pow(x: &Rational, k: i32) -> Rational {
    let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// `(x; base)_len` over the rationals. Negative lengths follow
/// `(x; q)_{-n} = 1 / (x q^{-n}; q)_n`.
pub fn rational_pochhammer(
    x: &Rational,
    base: &Rational,
    len: i64,
) -> Result<Rational, QpolyError> {
    if len >= 0 {
        let mut acc = Rational::one();
        let mut term = x.clone();
        for _ in 0..len {
            acc *= Rational::one() - &term;
            term *= base;
        }
        return Ok(acc);
    }
    if base.is_zero() {
        return Err(QpolyError::DivisionByZero);
    }
    let n = len.unsigned_abs();
    let shift = rational_pow(
        base,
        -(i32::try_from(n).map_err(|_| QpolyError::DivisionByZero)?),
    );
    let den = rational_pochhammer(&(x * shift), base, n as i64)?;
    if den.is_zero() {
        return Err(QpolyError::DivisionByZero);
    }
    Ok(den.recip())
}

fn check_base(base: &Rational) -> Result<(), QpolyError> {
    if base.is_zero() || base.abs().is_one() {
        Err(QpolyError::DegenerateBase)
    } else {
        Ok(())
    }
}

/// Smallest `K >= 0` with `a = base^-K`, if any.
fn termination_index(a: &Rational, base: &Rational) -> Option<usize> {
    if a.is_zero() {
        return None;
    }
    let inv = base.recip();
    let growing = inv.abs() > Rational::one();
    let target = a.abs();
    let mut power = Rational::one();
    for k in 0.. {
        if &power == a {
            return Some(k);
        }
        let mag = power.abs();
        if (growing && mag > target) || (!growing && mag < target) {
            return None;
        }
        power *= &inv;
    }
    None
}

/// Terminating basic hypergeometric series
/// `sum_n (a_1..a_r; q)_n / (q, b_1..b_s; q)_n [(-1)^n q^C(n,2)]^(1+s-r) z^n`.
pub fn phi_terminating(
    upper: &[Rational],
    lower: &[Rational],
    base: &Rational,
    z: &Rational,
) -> Result<Rational, QpolyError> {
    check_base(base)?;
    let k = upper
        .iter()
        .filter_map(|a| termination_index(a, base))
        .min()
        .ok_or(QpolyError::NonTerminating)?;
    let excess = 1 + lower.len() as i64 - upper.len() as i64;

    let mut total = Rational::zero();
    let mut term = Rational::one();
    let mut q_n = Rational::one();
    for n in 0..=k {
        total += &term;
        if n == k {
            break;
        }
        // ratio of term n+1 to term n
        let mut num = z.clone();
        for a in upper {
            num *= Rational::one() - a * &q_n;
        }
        let mut den = Rational::one() - &q_n * base;
        for b in lower {
            den *= Rational::one() - b * &q_n;
        }
        if den.is_zero() {
            return Err(QpolyError::VanishingDenominator(n + 1));
        }
        // (-1)^{n+1} q^{C(n+1,2)} / ((-1)^n q^{C(n,2)}) = -q^n
        let correction = -&q_n;
        let factor = if excess >= 0 {
            num_traits::pow(correction, excess as usize)
        } else {
            num_traits::pow(correction.recip(), excess.unsigned_abs() as usize)
        };
        term = term * num * factor / den;
        q_n *= base;
    }
    Ok(total)
}
