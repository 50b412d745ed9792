use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Grading, LaurentPoly, Monomial, QpolyError, TruncatedSeries};

/// `(a0; base)_len = prod_{n < len} (1 - a0 * base^n)`.
pub fn pochhammer(a0: &Monomial, base: &Monomial, len: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut m = a0.clone();
    for _ in 0..len {
        let mut factor = LaurentPoly::one();
        factor -= &LaurentPoly::from_monomial(&m);
        acc = &acc * &factor;
        m = m.mul(base);
    }
    acc
}

/// Truncated `(a0; base)_len`; `None` is the infinite product, which needs
/// `base` to raise the grade so that only finitely many factors matter.
pub fn pochhammer_series(
    a0: &Monomial,
    base: &Monomial,
    len: Option<u32>,
    grading: &Grading,
) -> Result<TruncatedSeries, QpolyError> {
    let factors = factor_monomials(a0, base, len, grading)?;
    let mut acc = TruncatedSeries::one(grading.clone());
    for m in factors {
        let mut factor = LaurentPoly::one();
        factor -= &LaurentPoly::from_monomial(&m);
        acc = acc.mul_poly(&factor)?;
    }
    Ok(acc)
}

/// Truncated `1 / (a0; base)_len`, each factor expanded as a geometric series.
pub fn pochhammer_inv(
    a0: &Monomial,
    base: &Monomial,
    len: Option<u32>,
    grading: &Grading,
) -> Result<TruncatedSeries, QpolyError> {
    let factors = factor_monomials(a0, base, len, grading)?;
    let mut acc = TruncatedSeries::one(grading.clone());
    for m in factors {
        if !grading.is_topologically_nilpotent(&m.exps) {
            return Err(QpolyError::NonUnitFactor(m.to_string()));
        }
        let mut geometric = LaurentPoly::one();
        let mut power = m.clone();
        while grading.admits(&power.exps) {
            geometric.add_term(power.exps, power.coeff.clone());
            power = power.mul(&m);
        }
        acc = acc.mul(&TruncatedSeries::new(geometric, grading.clone())?)?;
    }
    Ok(acc)
}

/// The monomials `a0 * base^n` whose factors can affect a truncated product.
fn factor_monomials(
    a0: &Monomial,
    base: &Monomial,
    len: Option<u32>,
    grading: &Grading,
) -> Result<Vec<Monomial>, QpolyError> {
    let mut out = Vec::new();
    let mut m = a0.clone();
    match len {
        Some(len) => {
            for _ in 0..len {
                out.push(m.clone());
                m = m.mul(base);
            }
        }
        None => {
            if !grading.is_topologically_nilpotent(&base.exps) {
                return Err(QpolyError::NonUnitFactor(base.to_string()));
            }
            // base only raises grades, so once a factor is past the cutoff
            // every later one is 1 modulo the truncation.
            while grading.admits(&m.exps) {
                out.push(m.clone());
                m = m.mul(base);
            }
        }
    }
    Ok(out)
}

type BinomialRow = Vec<Arc<Vec<BigInt>>>;

fn binomial_rows() -> &'static Mutex<Vec<BinomialRow>> {
    static ROWS: OnceLock<Mutex<Vec<BinomialRow>>> = OnceLock::new();
    ROWS.get_or_init(|| Mutex::new(vec![vec![Arc::new(vec![BigInt::one()])]]))
}

/// Coefficients of `[k; n]_u` in ascending powers of `u`, from the Pascal
/// recurrence `[k;n] = [k-1;n-1] + u^n [k-1;n]`. Memoized process-wide.
fn binomial_coefficients(k: usize, n: usize) -> Arc<Vec<BigInt>> {
    let mut rows = binomial_rows().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= k {
        let prev = rows.last().expect("row 0 exists").clone();
        let r = prev.len();
        let mut row = Vec::with_capacity(r + 1);
        for j in 0..=r {
            let len = j * (r - j) + 1;
            let mut c = vec![BigInt::zero(); len];
            if j >= 1 {
                for (e, v) in prev[j - 1].iter().enumerate() {
                    c[e] += v;
                }
            }
            if j < r {
                for (e, v) in prev[j].iter().enumerate() {
                    c[e + j] += v;
                }
            }
            row.push(Arc::new(c));
        }
        rows.push(row);
    }
    rows[k][n].clone()
}

/// Gaussian binomial `[k; n]_base`, zero unless `k >= n >= 0`.
pub fn gaussian_binomial(k: i64, n: i64, base: &Monomial) -> LaurentPoly {
    if !(k >= n && n >= 0) {
        return LaurentPoly::zero();
    }
    let coeffs = binomial_coefficients(k as usize, n as usize);
    let mut out = LaurentPoly::zero();
    let mut power = Monomial::one();
    for c in coeffs.iter() {
        if !c.is_zero() {
            out.add_term(power.exps, c * &power.coeff);
        }
        power = power.mul(base);
    }
    out
}

/// `[k; n, m]_base = [k; n]_base [k - n; m]_base`.
pub fn q_trinomial(k: i64, n: i64, m: i64, base: &Monomial) -> LaurentPoly {
    if n < 0 || m < 0 || k < n + m {
        return LaurentPoly::zero();
    }
    &gaussian_binomial(k, n, base) * &gaussian_binomial(k - n, m, base)
}

/// Rogers-Szegő polynomial `H_n(z, base) = sum_l [n; l]_base z^l`.
pub fn rogers_szego(n: u32, z: &Monomial, base: &Monomial) -> LaurentPoly {
    (0..=n)
        .map(|l| gaussian_binomial(n as i64, l as i64, base).mul_monomial(&z.powu(l)))
        .sum()
}

/// `(base^a; base)_n / (base; base)_n` as a polynomial: `[a + n - 1; n]` for
/// `a >= 1`, and the Kronecker delta in `n` for `a = 0`.
pub fn q_ratio(a: u32, n: u32, base: &Monomial) -> LaurentPoly {
    match (a, n) {
        (_, 0) => LaurentPoly::one(),
        (0, _) => LaurentPoly::zero(),
        _ => gaussian_binomial((a + n - 1) as i64, n as i64, base),
    }
}
