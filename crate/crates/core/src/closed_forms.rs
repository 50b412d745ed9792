//! Closed-form generating functions, one builder per identity family.
//!
//! Bounds are passed raw (largest part, number of parts) and split internally
//! into `(N, nu)` with `bound = 2N + nu`.

use thiserror::Error;

use crate::qpoly::{
    gaussian_binomial, phi_terminating, pochhammer, pochhammer_inv, pochhammer_series, q_ratio,
    q_trinomial, rational_pochhammer, rogers_szego, Grading, LaurentPoly, Monomial, QpolyError,
    Rational, Substitution, TruncatedSeries, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Qpoly(#[from] QpolyError),
}

type Result<T> = std::result::Result<T, FormError>;

/// `bound = 2N + nu` with `nu` in `{0, 1}`.
pub fn split(bound: u32) -> (u32, u32) {
    (bound / 2, bound % 2)
}

fn q(e: i32) -> Monomial {
    Monomial::q(e)
}

fn mono(c: i64, pairs: &[(Var, i32)]) -> Monomial {
    Monomial::new(c, pairs)
}

fn poly(m: Monomial) -> LaurentPoly {
    LaurentPoly::from_monomial(&m)
}

/// `1 - m`.
fn one_minus(m: &Monomial) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    p -= &poly(m.clone());
    p
}

fn poch(a0: &Monomial, base: &Monomial, len: i64) -> LaurentPoly {
    debug_assert!(len >= 0, "negative Pochhammer length");
    pochhammer(a0, base, len.max(0) as u32)
}

fn gb(k: i64, n: i64, base: &Monomial) -> LaurentPoly {
    gaussian_binomial(k, n, base)
}

fn big_q() -> Monomial {
    Monomial::big_q()
}

fn var(v: Var) -> Monomial {
    Monomial::var(v, 1)
}

fn binom2(n: i64) -> i32 {
    (n * (n - 1) / 2) as i32
}

fn product(grading: &Grading, factors: Vec<TruncatedSeries>) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(grading.clone());
    for f in factors {
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

fn series(p: LaurentPoly, grading: &Grading) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::new(p, grading.clone())?)
}

// ---------------------------------------------------------------------------
// Distinct partitions by odd-indexed and even-indexed odd parts

/// `P_bound(i, j, q)`: distinct parts at most `bound`, with `i` odd-indexed and
/// `j` even-indexed odd parts. Odd bounds resolve the rational factor by exact
/// division.
pub fn p_distinct(bound: u32, i: u32, j: u32) -> Result<LaurentPoly> {
    let (n, nu) = split(bound);
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let lead = q((2 * i * i - i + 2 * j * j + j) as i32);
    if nu == 0 {
        if i + j > n {
            return Ok(LaurentPoly::zero());
        }
        let body = &poch(&q(2).neg(), &q(2), n - i - j) * &q_trinomial(n, i, j, &q(4));
        return Ok(body.mul_monomial(&lead));
    }
    if i + j > n + 1 {
        return Ok(LaurentPoly::zero());
    }
    let num = &(&poch(&q(2).neg(), &q(2), n - i - j + 1) * &q_trinomial(n + 1, i, j, &q(4)))
        * &one_minus(&q((2 * (n + i - j + 1)) as i32));
    let body = num.divide_exact(&one_minus(&q((4 * (n + 1)) as i32)))?;
    Ok(body.mul_monomial(&lead))
}

/// Left side of the three-binomial sum identity in base `u`:
/// `sum_l [N;l] [l+nu;i] [N-l;j] u^(N-l-j)`, binomials in `u^2`.
pub fn new52_lhs(n: u32, nu: u32, i: u32, j: u32, u: &Monomial) -> LaurentPoly {
    let (n, nu, i, j) = (n as i64, nu as i64, i as i64, j as i64);
    let u2 = u.powu(2);
    let mut acc = LaurentPoly::zero();
    for l in 0..=n {
        if n - l < j {
            continue;
        }
        let term = &(&gb(n, l, &u2) * &gb(l + nu, i, &u2)) * &gb(n - l, j, &u2);
        acc += &term.mul_monomial(&u.powu((n - l - j) as u32));
    }
    acc
}

/// Right side: `(-u;u)_{N-i-j+nu} [N+nu; i, j] (1 - nu u^(N+i-j+1)) / (1 - nu u^(2N+2))`.
pub fn new52_rhs(n: u32, nu: u32, i: u32, j: u32, u: &Monomial) -> Result<LaurentPoly> {
    let (n, nu, i, j) = (n as i64, nu as i64, i as i64, j as i64);
    if i + j > n + nu {
        return Ok(LaurentPoly::zero());
    }
    let u2 = u.powu(2);
    let body = &poch(&u.neg(), u, n - i - j + nu) * &q_trinomial(n + nu, i, j, &u2);
    if nu == 0 {
        return Ok(body);
    }
    let num = &body * &one_minus(&u.powu((n + i - j + 1) as u32));
    Ok(num.divide_exact(&one_minus(&u.powu((2 * n + 2) as u32)))?)
}

/// `P_bound(i, j, q)` through the three-binomial sum, a polynomial form with no
/// division: `q^(2i^2-i+2j^2+j)` times the sum in base `q^2`.
pub fn p_distinct_via_sum(bound: u32, i: u32, j: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (ii, jj) = (i as i64, j as i64);
    let lead = q((2 * ii * ii - ii + 2 * jj * jj + jj) as i32);
    new52_lhs(n, nu, i, j, &q(2)).mul_monomial(&lead)
}

/// Right side of the recurrence obtained by removing the largest part:
/// `P_{b-1}(i,j) + q^b [i >= nu] P_{b-1}(j, i-nu)` for `b >= 1`.
pub fn p_distinct_recurrence(bound: u32, i: u32, j: u32) -> Result<LaurentPoly> {
    if bound == 0 {
        return Err(FormError::InvalidParameters(
            "the recurrence needs bound >= 1".into(),
        ));
    }
    let nu = bound % 2;
    let mut out = p_distinct(bound - 1, i, j)?;
    if i >= nu {
        out += &p_distinct(bound - 1, j, i - nu)?.mul_monomial(&q(bound as i32));
    }
    Ok(out)
}

/// `(-q^2;q^2)_inf q^(2i^2-i) / (q^4;q^4)_i * q^(2j^2+j) / (q^4;q^4)_j`.
pub fn p_distinct_limit(i: u32, j: u32, grading: &Grading) -> Result<TruncatedSeries> {
    let (ii, jj) = (i as i64, j as i64);
    let lead = q((2 * ii * ii - ii + 2 * jj * jj + jj) as i32);
    let s = product(
        grading,
        vec![
            pochhammer_series(&q(2).neg(), &q(2), None, grading)?,
            pochhammer_inv(&q(4), &q(4), Some(i), grading)?,
            pochhammer_inv(&q(4), &q(4), Some(j), grading)?,
        ],
    )?;
    Ok(s.mul_monomial(&lead)?)
}

/// `q^(2k^2 + (-1)^mu k) / (q^4;q^4)_k`: `k` distinct parts congruent to
/// `2 + (-1)^mu` modulo 4.
pub fn gf_1or3mod4(k: u32, mu: u32, grading: &Grading) -> Result<TruncatedSeries> {
    let kk = k as i64;
    let sign = if mu == 0 { 1 } else { -1 };
    let lead = q((2 * kk * kk + sign * kk) as i32);
    Ok(pochhammer_inv(&q(4), &q(4), Some(k), grading)?.mul_monomial(&lead)?)
}

/// Sum over the free index with the other index fixed to `k`:
/// `eq = 1` fixes the even-indexed count, `eq = 2` the odd-indexed count.
pub fn savage_sills_product(k: u32, eq: u32, grading: &Grading) -> Result<TruncatedSeries> {
    let kk = k as i64;
    let (free, lead) = match eq {
        1 => (q(1).neg(), q((2 * kk * kk + kk) as i32)),
        2 => (q(3).neg(), q((2 * kk * kk - kk) as i32)),
        _ => {
            return Err(FormError::InvalidParameters(format!(
                "eq must be 1 or 2, got {eq}"
            )))
        }
    };
    let s = product(
        grading,
        vec![
            pochhammer_series(&q(2).neg(), &q(2), None, grading)?,
            pochhammer_series(&free, &q(4), None, grading)?,
            pochhammer_inv(&q(4), &q(4), Some(k), grading)?,
        ],
    )?;
    Ok(s.mul_monomial(&lead)?)
}

/// The two sides of the mod-8 product identities:
/// `(-q^2;q^2)_inf (-q^r;q^4)_inf` and `1 / prod_{s in S} (q^s;q^8)_inf`,
/// with `(r, S) = (1, {1,5,6})` for `eq = 1` and `(3, {2,3,7})` for `eq = 2`.
pub fn prod_sills(eq: u32, grading: &Grading) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let (r, residues): (i32, [i32; 3]) = match eq {
        1 => (1, [1, 5, 6]),
        2 => (3, [2, 3, 7]),
        _ => {
            return Err(FormError::InvalidParameters(format!(
                "eq must be 1 or 2, got {eq}"
            )))
        }
    };
    let lhs = product(
        grading,
        vec![
            pochhammer_series(&q(2).neg(), &q(2), None, grading)?,
            pochhammer_series(&q(r).neg(), &q(4), None, grading)?,
        ],
    )?;
    let rhs = product(
        grading,
        residues
            .iter()
            .map(|&s| pochhammer_inv(&q(s), &q(8), None, grading))
            .collect::<std::result::Result<Vec<_>, _>>()?,
    )?;
    Ok((lhs, rhs))
}

/// `1 / prod_{s in residues} (q^s; q^modulus)_inf`.
pub fn residue_class_product(
    modulus: u32,
    residues: &[u32],
    grading: &Grading,
) -> Result<TruncatedSeries> {
    product(
        grading,
        residues
            .iter()
            .map(|&s| pochhammer_inv(&q(s as i32), &q(modulus as i32), None, grading))
            .collect::<std::result::Result<Vec<_>, _>>()?,
    )
}

// ---------------------------------------------------------------------------
// BG-rank

/// `B_bound(k, q) = q^(2k^2-k) [bound; N+k]_{q^2}`.
pub fn bg_distinct(bound: u32, k: i64) -> LaurentPoly {
    let (n, _) = split(bound);
    gb(bound as i64, n as i64 + k, &q(2)).mul_monomial(&q((2 * k * k - k) as i32))
}

/// `q^(2k^2-k) / ((q^2;q^2)_{N+k} (q^2;q^2)_{N-k+nu})`, zero when either
/// length is negative.
pub fn bg_unrestricted(bound: u32, k: i64, grading: &Grading) -> Result<TruncatedSeries> {
    let (n, nu) = split(bound);
    let (l1, l2) = (n as i64 + k, n as i64 - k + nu as i64);
    if l1 < 0 || l2 < 0 {
        return Ok(TruncatedSeries::zero(grading.clone()));
    }
    let s = product(
        grading,
        vec![
            pochhammer_inv(&q(2), &q(2), Some(l1 as u32), grading)?,
            pochhammer_inv(&q(2), &q(2), Some(l2 as u32), grading)?,
        ],
    )?;
    Ok(s.mul_monomial(&q((2 * k * k - k) as i32))?)
}

/// Range of BG-ranks `-N ..= N + nu` attainable with largest part `bound`.
pub fn bg_range(bound: u32) -> std::ops::RangeInclusive<i64> {
    let (n, nu) = split(bound);
    -(n as i64)..=(n + nu) as i64
}

/// `(-q;q)_bound`.
pub fn distinct_product(bound: u32) -> LaurentPoly {
    pochhammer(&q(1).neg(), &q(1), bound)
}

/// `1 / (q;q)_bound`.
pub fn bounded_partitions_series(bound: u32, grading: &Grading) -> Result<TruncatedSeries> {
    Ok(pochhammer_inv(&q(1), &q(1), Some(bound), grading)?)
}

/// `[n+m; n]_{q^-1}` through the Pascal recurrence in the inverted base.
pub fn change_of_base_lhs(n: u32, m: u32) -> LaurentPoly {
    gb((n + m) as i64, n as i64, &q(-1))
}

/// `q^(-nm) [n+m; n]_q` with the binomial built from the factorial ratio.
pub fn change_of_base_rhs(n: u32, m: u32) -> Result<LaurentPoly> {
    let base = q(1);
    let num = pochhammer(&base, &base, n + m);
    let den = &pochhammer(&base, &base, n) * &pochhammer(&base, &base, m);
    Ok(num.divide_exact(&den)?.mul_monomial(&q(-((n * m) as i32))))
}

// ---------------------------------------------------------------------------
// Single-fold sums

/// `sum_i [N;i]_{q^4} (-qt;q^4)_{N-i+nu} (-qz;q^4)_i q^(2i)`.
pub fn double_to_single(bound: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (n, nu) = (n as i64, nu as i64);
    let qt = mono(-1, &[(Var::Q, 1), (Var::T, 1)]);
    let qz = mono(-1, &[(Var::Q, 1), (Var::Z, 1)]);
    (0..=n)
        .map(|i| {
            (&(&gb(n, i, &q(4)) * &poch(&qt, &q(4), n - i + nu)) * &poch(&qz, &q(4), i))
                .mul_monomial(&q((2 * i) as i32))
        })
        .sum()
}

/// Which of the two bounded mod-8 sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LittleGollnitz {
    /// No odd-indexed odd parts.
    First,
    /// No even-indexed odd parts.
    Second,
}

/// Left side: the sum over `k` with the rational factor
/// `(1 - nu q^(2(N -+ k + 1))) / (1 - nu q^(4(N+1)))`, divided out exactly.
pub fn little_gollnitz_lhs(which: LittleGollnitz, n: u32, nu: u32) -> Result<LaurentPoly> {
    let (n, nu) = (n as i64, nu as i64);
    let mut acc = LaurentPoly::zero();
    for k in 0..=n + nu {
        let (lead, shift) = match which {
            LittleGollnitz::First => (2 * k * k + k, n - k + 1),
            LittleGollnitz::Second => (2 * k * k - k, n + k + 1),
        };
        let mut term = (&gb(n + nu, k, &q(4)) * &poch(&q(2).neg(), &q(2), n - k + nu))
            .mul_monomial(&q(lead as i32));
        if nu == 1 {
            term = &term * &one_minus(&q((2 * shift) as i32));
        }
        acc += &term;
    }
    if nu == 1 {
        acc = acc.divide_exact(&one_minus(&q((4 * (n + 1)) as i32)))?;
    }
    Ok(acc)
}

/// Right side: `sum_k [N;k]_{q^4} (-q;q^4)_L q^(2k)` with `L = k` (first) or
/// `L = N - k + nu` (second).
pub fn little_gollnitz_rhs(which: LittleGollnitz, n: u32, nu: u32) -> LaurentPoly {
    let (n, nu) = (n as i64, nu as i64);
    (0..=n)
        .map(|k| {
            let len = match which {
                LittleGollnitz::First => k,
                LittleGollnitz::Second => n - k + nu,
            };
            (&gb(n, k, &q(4)) * &poch(&q(1).neg(), &q(4), len)).mul_monomial(&q((2 * k) as i32))
        })
        .sum()
}

/// `sum_k [N;k]_{q^4} (-q^3;q^4)_{N-k} q^(2k)`.
pub fn connect_rhs(n: u32) -> LaurentPoly {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            (&gb(n, k, &q(4)) * &poch(&q(3).neg(), &q(4), n - k)).mul_monomial(&q((2 * k) as i32))
        })
        .sum()
}

/// `sum_k [N;k]_q (y;q)_k z^k`.
pub fn cigler_lhs(n: u32) -> LaurentPoly {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            (&gb(n, k, &q(1)) * &poch(&var(Var::Y), &q(1), k))
                .mul_monomial(&Monomial::var(Var::Z, k as i32))
        })
        .sum()
}

/// `sum_k [N;k]_q (yz;q)_{N-k} z^k`.
pub fn cigler_rhs(n: u32) -> LaurentPoly {
    let n = n as i64;
    let yz = mono(1, &[(Var::Y, 1), (Var::Z, 1)]);
    (0..=n)
        .map(|k| {
            (&gb(n, k, &q(1)) * &poch(&yz, &q(1), n - k))
                .mul_monomial(&Monomial::var(Var::Z, k as i32))
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Boulet-Stanley weights

/// `(a, b, c, d) -> (c, d, a, b)`.
pub fn swap_rows() -> Substitution {
    Substitution::boulet([var(Var::C), var(Var::D), var(Var::A), var(Var::B)])
}

/// `(a, b, c, d) -> (m1, m2, m3, m4)`.
pub fn boulet_at(images: [Monomial; 4]) -> Substitution {
    Substitution::boulet(images)
}

/// `(qt, q/t, qz, q/z)`: Boulet weight becomes `q^|pi| t^i z^j`.
pub fn sub_ij() -> Substitution {
    boulet_at([
        mono(1, &[(Var::Q, 1), (Var::T, 1)]),
        mono(1, &[(Var::Q, 1), (Var::T, -1)]),
        mono(1, &[(Var::Q, 1), (Var::Z, 1)]),
        mono(1, &[(Var::Q, 1), (Var::Z, -1)]),
    ])
}

/// `(zq, zq, q/z, q/z)`: Boulet weight becomes `q^|pi| z^alt`.
pub fn sub_alt() -> Substitution {
    let zq = mono(1, &[(Var::Q, 1), (Var::Z, 1)]);
    let qz = mono(1, &[(Var::Q, 1), (Var::Z, -1)]);
    boulet_at([zq.clone(), zq, qz.clone(), qz])
}

/// `(qt, q/t, q/t, qt)`: Boulet weight becomes `q^|pi| t^BG`.
pub fn sub_bg() -> Substitution {
    let qt = mono(1, &[(Var::Q, 1), (Var::T, 1)]);
    let tq = mono(1, &[(Var::Q, 1), (Var::T, -1)]);
    boulet_at([qt.clone(), tq.clone(), tq, qt])
}

/// `(aq, q/a, aq, q/a)`: Boulet weight becomes `q^|pi| a^(odd parts)`.
pub fn sub_odd() -> Substitution {
    let aq = mono(1, &[(Var::Q, 1), (Var::A, 1)]);
    let qa = mono(1, &[(Var::Q, 1), (Var::A, -1)]);
    boulet_at([aq.clone(), qa.clone(), aq, qa])
}

/// `(q, q, q, q)`.
pub fn sub_q() -> Substitution {
    boulet_at([q(1), q(1), q(1), q(1)])
}

/// `Psi_bound = sum_i [N;i]_Q (-a;Q)_{N-i+nu} (-c;Q)_i (ab)^i`.
pub fn psi_bounded(bound: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (n, nu) = (n as i64, nu as i64);
    let bq = big_q();
    let ab = mono(1, &[(Var::A, 1), (Var::B, 1)]);
    (0..=n)
        .map(|i| {
            (&(&gb(n, i, &bq) * &poch(&var(Var::A).neg(), &bq, n - i + nu))
                * &poch(&var(Var::C).neg(), &bq, i))
                .mul_monomial(&ab.powu(i as u32))
        })
        .sum()
}

/// `Psi_bound = sum_i [N;i]_Q (-a;Q)_{i+nu} (-abc;Q)_i (ac Q^(i+nu);Q)_{N-i} (ab)^(N-i)`,
/// the `(ac;Q)` ratio built by telescoping.
pub fn psi_bounded_telescoped(bound: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (n, nu) = (n as i64, nu as i64);
    let bq = big_q();
    let ab = mono(1, &[(Var::A, 1), (Var::B, 1)]);
    let abc = mono(-1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1)]);
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    (0..=n)
        .map(|i| {
            let tail = ac.mul(&bq.powu((i + nu) as u32));
            let p = &(&(&gb(n, i, &bq) * &poch(&var(Var::A).neg(), &bq, i + nu))
                * &poch(&abc, &bq, i))
                * &poch(&tail, &bq, n - i);
            p.mul_monomial(&ab.powu((n - i) as u32))
        })
        .sum()
}

/// `Psi / ((ac;Q)_{N+nu} (Q;Q)_N)` as a truncated series.
pub fn psi_to_phi_bounded(
    psi: &LaurentPoly,
    bound: u32,
    grading: &Grading,
) -> Result<TruncatedSeries> {
    let (n, nu) = split(bound);
    let bq = big_q();
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    product(
        grading,
        vec![
            series(psi.clone(), grading)?,
            pochhammer_inv(&ac, &bq, Some(n + nu), grading)?,
            pochhammer_inv(&bq, &bq, Some(n), grading)?,
        ],
    )
}

/// `Psi / (ac, Q; Q)_inf`.
pub fn psi_to_phi(psi: &TruncatedSeries, grading: &Grading) -> Result<TruncatedSeries> {
    let bq = big_q();
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    product(
        grading,
        vec![
            psi.clone(),
            pochhammer_inv(&ac, &bq, None, grading)?,
            pochhammer_inv(&bq, &bq, None, grading)?,
        ],
    )
}

/// `Phi_bound` from the bounded distinct-part sum.
pub fn phi_bounded(bound: u32, grading: &Grading) -> Result<TruncatedSeries> {
    psi_to_phi_bounded(&psi_bounded(bound), bound, grading)
}

/// `Phi_bound = 1/(Q;Q)_N sum_i [N;i]_Q (-a;Q)_{i+nu} (-abc;Q)_i / (ac;Q)_{i+nu} (ab)^(N-i)`,
/// summed term by term.
pub fn phi_bounded_direct(bound: u32, grading: &Grading) -> Result<TruncatedSeries> {
    let (n, nu) = split(bound);
    let bq = big_q();
    let ab = mono(1, &[(Var::A, 1), (Var::B, 1)]);
    let abc = mono(-1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1)]);
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    let mut acc = TruncatedSeries::zero(grading.clone());
    for i in 0..=n {
        let (ii, nn) = (i as i64, n as i64);
        let num = (&(&gb(nn, ii, &bq) * &poch(&var(Var::A).neg(), &bq, ii + nu as i64))
            * &poch(&abc, &bq, ii))
            .mul_monomial(&ab.powu(n - i));
        let term = series(num, grading)?.mul(&pochhammer_inv(&ac, &bq, Some(i + nu), grading)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc.mul(&pochhammer_inv(&bq, &bq, Some(n), grading)?)?)
}

/// `(-a, -abc; Q)_inf / (ab; Q)_inf`.
pub fn psi_infinite(grading: &Grading) -> Result<TruncatedSeries> {
    let bq = big_q();
    product(
        grading,
        vec![
            pochhammer_series(&var(Var::A).neg(), &bq, None, grading)?,
            pochhammer_series(
                &mono(-1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1)]),
                &bq,
                None,
                grading,
            )?,
            pochhammer_inv(&mono(1, &[(Var::A, 1), (Var::B, 1)]), &bq, None, grading)?,
        ],
    )
}

/// `(-a, -abc; Q)_inf / (ab, ac, Q; Q)_inf`.
pub fn phi_infinite(grading: &Grading) -> Result<TruncatedSeries> {
    let bq = big_q();
    product(
        grading,
        vec![
            psi_infinite(grading)?,
            pochhammer_inv(&mono(1, &[(Var::A, 1), (Var::C, 1)]), &bq, None, grading)?,
            pochhammer_inv(&bq, &bq, None, grading)?,
        ],
    )
}

/// Grading for the `x` generating series: norm grading plus a cap on `deg_x`.
pub fn x_grading(norm_cutoff: i64, x_cutoff: i32) -> Grading {
    Grading::norm(norm_cutoff).with_cap(Var::X, x_cutoff)
}

/// `sum_N x^N / (Q;Q)_N Psi_{2N+nu}`, with `psi(bound)` supplying each term.
pub fn x_series_lhs(
    nu: u32,
    grading: &Grading,
    mut psi: impl FnMut(u32) -> Result<LaurentPoly>,
) -> Result<TruncatedSeries> {
    let x_cap = grading
        .cap(Var::X)
        .ok_or_else(|| FormError::InvalidParameters("x series needs an x cap".into()))?;
    let bq = big_q();
    let mut acc = TruncatedSeries::zero(grading.clone());
    for n in 0..=x_cap.max(0) as u32 {
        let term = series(
            psi(2 * n + nu)?.mul_monomial(&Monomial::var(Var::X, n as i32)),
            grading,
        )?
        .mul(&pochhammer_inv(&bq, &bq, Some(n), grading)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `(1 + nu a) (-a x Q^nu; Q)_inf (-abcx; Q)_inf / ((x; Q)_inf (abx; Q)_inf)`.
pub fn x_series_rhs(nu: u32, grading: &Grading) -> Result<TruncatedSeries> {
    let bq = big_q();
    let x = var(Var::X);
    let mut lead = LaurentPoly::one();
    if nu == 1 {
        lead += &poly(var(Var::A));
    }
    let s = product(
        grading,
        vec![
            pochhammer_series(
                &mono(-1, &[(Var::A, 1), (Var::X, 1)]).mul(&bq.powu(nu)),
                &bq,
                None,
                grading,
            )?,
            pochhammer_series(
                &mono(-1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1), (Var::X, 1)]),
                &bq,
                None,
                grading,
            )?,
            pochhammer_inv(&x, &bq, None, grading)?,
            pochhammer_inv(
                &mono(1, &[(Var::A, 1), (Var::B, 1), (Var::X, 1)]),
                &bq,
                None,
                grading,
            )?,
        ],
    )?;
    Ok(s.mul_poly(&lead)?)
}

/// `sum_l [N;l]_{q^4} (-zq;q^4)_{N-l+nu} (-q/z;q^4)_l (zq)^(2l)`.
pub fn hermite_sum(bound: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (n, nu) = (n as i64, nu as i64);
    let zq = mono(1, &[(Var::Z, 1), (Var::Q, 1)]);
    let qz = mono(-1, &[(Var::Z, -1), (Var::Q, 1)]);
    (0..=n)
        .map(|l| {
            (&(&gb(n, l, &q(4)) * &poch(&zq.neg(), &q(4), n - l + nu)) * &poch(&qz, &q(4), l))
                .mul_monomial(&zq.powu(2 * l as u32))
        })
        .sum()
}

/// `H_bound(zq, q^2)`.
pub fn rogers_szego_zq(bound: u32) -> LaurentPoly {
    rogers_szego(bound, &mono(1, &[(Var::Z, 1), (Var::Q, 1)]), &q(2))
}

/// `q^k [N;k]_{q^2}`.
pub fn alt_extraction(bound: u32, k: u32) -> LaurentPoly {
    gb(bound as i64, k as i64, &q(2)).mul_monomial(&q(k as i32))
}

/// `q^k / ((q^2;q^2)_k (q^2;q^2)_{N-k})`, zero for `k > N`.
pub fn alt_extraction_phi(bound: u32, k: u32, grading: &Grading) -> Result<TruncatedSeries> {
    if k > bound {
        return Ok(TruncatedSeries::zero(grading.clone()));
    }
    let s = product(
        grading,
        vec![
            pochhammer_inv(&q(2), &q(2), Some(k), grading)?,
            pochhammer_inv(&q(2), &q(2), Some(bound - k), grading)?,
        ],
    )?;
    Ok(s.mul_monomial(&q(k as i32))?)
}

// ---------------------------------------------------------------------------
// Doubly bounded Boulet-Stanley sums

/// `Phi_{bound, parts}` for even `parts >= 2` and `bound >= 1`: the four-fold sum.
pub fn phi_box_even(bound: u32, parts: u32) -> Result<LaurentPoly> {
    if bound == 0 || parts == 0 || parts % 2 == 1 {
        return Err(FormError::InvalidParameters(format!(
            "four-fold sum needs bound >= 1 and even parts >= 2, got ({bound}, {parts})"
        )));
    }
    let (n, nu) = split(bound);
    let (n, nu, m) = (n as i64, nu as i64, (parts / 2) as i64);
    let bq = big_q();
    let ab = mono(1, &[(Var::A, 1), (Var::B, 1)]);
    let abc = mono(1, &[(Var::A, 1), (Var::B, 1), (Var::C, 1)]);
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    let a = var(Var::A);
    let mut acc = LaurentPoly::zero();
    for l in 0..=n {
        let outer = gb(n - l + m - 1, n - l, &bq).mul_monomial(&ab.powu((n - l) as u32));
        if outer.is_zero() {
            continue;
        }
        let mut inner_sum = LaurentPoly::zero();
        for m2 in 0..=l {
            let f2 =
                gb(l, m2, &bq).mul_monomial(&abc.powu(m2 as u32).mul(&bq.powu(binom2(m2) as u32)));
            for m1 in 0..=l + nu {
                if m1 + m2 > m {
                    break;
                }
                let f1 = gb(l + nu, m1, &bq)
                    .mul_monomial(&a.powu(m1 as u32).mul(&bq.powu(binom2(m1) as u32)));
                let mut inner = LaurentPoly::zero();
                for k in 0..=m - m1 - m2 {
                    let t = &gb(m + l - k - m1 - m2, m - k - m1 - m2, &bq)
                        * &q_ratio((l + nu) as u32, k as u32, &bq);
                    inner += &t.mul_monomial(&ac.powu(k as u32));
                }
                inner_sum += &(&(&f2 * &f1) * &inner);
            }
        }
        acc += &(&outer * &inner_sum);
    }
    Ok(acc)
}

/// `Phi_{bound, parts}` for any bounds, dispatching to the four-fold sum for even
/// `parts` and to the odd-parts relation otherwise. Empty bounds give 1.
pub fn phi_box(bound: u32, parts: u32) -> Result<LaurentPoly> {
    if bound == 0 || parts == 0 {
        return Ok(LaurentPoly::one());
    }
    if parts.is_multiple_of(2) {
        phi_box_even(bound, parts)
    } else {
        phi_box_odd(bound, parts)
    }
}

/// `Phi_{2N+nu, 2M+1} = (Phi_{2N+nu, 2M+2}(c,d,a,b) - Phi_{2N+nu-1, 2M+2}(c,d,a,b)) / (c^nu (cd)^N)`.
pub fn phi_box_odd(bound: u32, parts: u32) -> Result<LaurentPoly> {
    if bound == 0 || parts.is_multiple_of(2) {
        return Err(FormError::InvalidParameters(format!(
            "odd-parts relation needs bound >= 1 and odd parts, got ({bound}, {parts})"
        )));
    }
    let (n, nu) = split(bound);
    let swap = swap_rows();
    let upper = phi_box(bound, parts + 1)?.substitute(&swap)?;
    let lower = phi_box(bound - 1, parts + 1)?.substitute(&swap)?;
    let divisor = mono(1, &[(Var::C, (nu + n) as i32), (Var::D, n as i32)]);
    Ok((&upper - &lower).divide_exact(&poly(divisor))?)
}

/// The generalized Yee sum for `Phi_{2N+nu, 2M+mu}`, `(nu, mu) != (1, 0)`.
pub fn phi_box_yee(bound: u32, parts: u32) -> Result<LaurentPoly> {
    let (n, nu) = split(bound);
    let (m, mu) = split(parts);
    if bound == 0 || parts == 0 || (nu, mu) == (1, 0) {
        return Err(FormError::InvalidParameters(format!(
            "Yee sum needs positive bounds and (nu, mu) != (1, 0), got ({bound}, {parts})"
        )));
    }
    let (n, nu, m, mu) = (n as i64, nu as i64, m as i64, mu as i64);
    let bq = big_q();
    let ab = mono(1, &[(Var::A, 1), (Var::B, 1)]);
    let ac = mono(1, &[(Var::A, 1), (Var::C, 1)]);
    let a = var(Var::A);
    let c = var(Var::C);
    let mut lead = LaurentPoly::one();
    if nu * mu == 1 {
        lead += &poly(a.clone());
    }
    let mut acc = LaurentPoly::zero();
    for k in 0..=m {
        let outer = gb(n + k - 1 + nu, k, &bq).mul_monomial(&ac.powu(k as u32));
        if outer.is_zero() {
            continue;
        }
        for j in 0..=n {
            let mut s1 = LaurentPoly::zero();
            for m1 in 0..=j {
                let w = a
                    .powu(m1 as u32)
                    .mul(&bq.powu((binom2(m1) as i64 + nu * mu * m1) as u32));
                s1 += &(&gb(m - k + mu - nu, m1, &bq) * &gb(m - k + j - m1, j - m1, &bq))
                    .mul_monomial(&w);
            }
            s1 = &s1 * &lead;
            let mut s2 = LaurentPoly::zero();
            for m2 in 0..=n - j {
                let w = c.powu(m2 as u32).mul(&bq.powu(binom2(m2) as u32));
                let r = q_ratio((m - k + mu) as u32, (n - j - m2) as u32, &bq);
                s2 += &(&gb(m - k, m2, &bq) * &r).mul_monomial(&w);
            }
            acc += &(&(&outer * &s1) * &s2).mul_monomial(&ab.powu((n - j) as u32));
        }
    }
    Ok(acc)
}

/// `[bound + parts; parts]_q`.
pub fn q_bin_coeff(bound: u32, parts: u32) -> LaurentPoly {
    gb((bound + parts) as i64, parts as i64, &q(1))
}

/// `sum_{j=-N}^{N+nu} t^j q^(2j^2-j) [N+M+mu; N+j]_{q^2} [N+nu+M; M+j]_{q^2}`.
pub fn bg_double_bounded(bound: u32, parts: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let (m, mu) = split(parts);
    let (n, nu, m, mu) = (n as i64, nu as i64, m as i64, mu as i64);
    (-n..=n + nu)
        .map(|j| {
            (&gb(n + m + mu, n + j, &q(2)) * &gb(n + nu + m, m + j, &q(2))).mul_monomial(&mono(
                1,
                &[(Var::T, j as i32), (Var::Q, (2 * j * j - j) as i32)],
            ))
        })
        .sum()
}

/// `sum_{j=0}^{bound} z^j q^j [M+mu+j-1; j]_{q^2} [M+bound-j; M]_{q^2}`.
pub fn alt_double_bounded(bound: u32, parts: u32) -> LaurentPoly {
    let (m, mu) = split(parts);
    let (nb, m, mu) = (bound as i64, m as i64, mu as i64);
    (0..=nb)
        .map(|j| {
            (&gb(m + mu + j - 1, j, &q(2)) * &gb(m + nb - j, m, &q(2)))
                .mul_monomial(&mono(1, &[(Var::Z, j as i32), (Var::Q, j as i32)]))
        })
        .sum()
}

/// Which closed formula for distinct partitions refined by even parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PTildeForm {
    /// `P~_{2N+nu}(0, j, m)`
    NoOddIndexed,
    /// `P~_{2N+1}(i, 0, m)`
    NoEvenIndexedOddBound,
    /// `P~_{2N}(i, 0, m)`
    NoEvenIndexedEvenBound,
}

/// Distinct parts at most `bound` with `i` odd-indexed odd, `j` even-indexed
/// odd and `m` even parts, for `i = 0` or `j = 0`.
pub fn p_tilde(bound: u32, form: PTildeForm, x: u32, m: u32) -> Result<LaurentPoly> {
    let (n, nu) = split(bound);
    let (n, x, m) = (n as i64, x as i64, m as i64);
    let sign = if (m + x) % 2 == 0 { 1 } else { -1 };
    let floor_half = |v: i64| v.div_euclid(2);
    let ceil_half = |v: i64| -(-v).div_euclid(2);
    match form {
        PTildeForm::NoOddIndexed => {
            let e = x * (x + 1) + m * (m + 1) - x * sign;
            Ok(
                (&gb(n + x, x + m, &q(2)) * &gb(floor_half(m + x), x, &q(4)))
                    .mul_monomial(&q(e as i32)),
            )
        }
        PTildeForm::NoEvenIndexedOddBound => {
            if nu != 1 {
                return Err(FormError::InvalidParameters(
                    "this form needs an odd bound".into(),
                ));
            }
            let e = x * (x + 1) + m * (m + 1) + x * sign;
            Ok((&gb(n + x, x + m, &q(2)) * &gb(ceil_half(m + x), x, &q(4)))
                .mul_monomial(&q(e as i32)))
        }
        PTildeForm::NoEvenIndexedEvenBound => {
            if nu != 0 {
                return Err(FormError::InvalidParameters(
                    "this form needs an even bound".into(),
                ));
            }
            let e1 = x * (x + 1) + m * (m + 1) + x * sign;
            let e2 = x * (x + 1) + m * (m - 1) + x * sign + 2 * n;
            let t1 = (&gb(n + x - 1, x + m, &q(2)) * &gb(ceil_half(m + x), x, &q(4)))
                .mul_monomial(&q(e1 as i32));
            let t2 = (&gb(n + x - 1, x + m - 1, &q(2)) * &gb(floor_half(m + x - 1), x, &q(4)))
                .mul_monomial(&q(e2 as i32));
            Ok(&t1 + &t2)
        }
    }
}

/// `(-aq;q^2)_{N+nu} (-q^2;q^2)_N`.
pub fn psi_odd_parts_product(bound: u32) -> LaurentPoly {
    let (n, nu) = split(bound);
    let aq = mono(-1, &[(Var::A, 1), (Var::Q, 1)]);
    &pochhammer(&aq, &q(2), n + nu) * &pochhammer(&q(2).neg(), &q(2), n)
}

// ---------------------------------------------------------------------------
// Rational-point evaluations

fn rpow(x: &Rational, k: i64) -> Rational {
    let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `2phi1(q^-4N, -aq; -(aq)^-1 q^(-4(N - delta)); q^4, -q^(1+4 delta)/a)` with
/// `delta = [nu = 0]`.
pub fn odd_parts_phi(n: u32, nu: u32, a: &Rational, q: &Rational) -> Result<Rational> {
    let n = n as i64;
    let delta = if nu == 0 { 1 } else { 0 };
    let upper = [rpow(q, -4 * n), -(a * q)];
    let lower = [-(a * q).recip() * rpow(q, -4 * (n - delta))];
    let z = -rpow(q, 1 + 4 * delta) / a;
    Ok(phi_terminating(&upper, &lower, &rpow(q, 4), &z)?)
}

/// `(-q^2;q^2)_N (-aq^3;q^2)_{N-1+nu} / (-aq^5;q^4)_{N-1+nu}`.
pub fn odd_parts_phi_product(n: u32, nu: u32, a: &Rational, q: &Rational) -> Result<Rational> {
    let (n, len) = (n as i64, n as i64 - 1 + nu as i64);
    let q2 = rpow(q, 2);
    let num =
        rational_pochhammer(&-&q2, &q2, n)? * rational_pochhammer(&-(a * rpow(q, 3)), &q2, len)?;
    let den = rational_pochhammer(&-(a * rpow(q, 5)), &rpow(q, 4), len)?;
    if den == int(0) {
        return Err(QpolyError::DivisionByZero.into());
    }
    Ok(num / den)
}

/// Values of the Boulet-Stanley variables at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouletPoint {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl BouletPoint {
    pub fn big_q(&self) -> Rational {
        &self.a * &self.b * &self.c * &self.d
    }
}

/// `2phi1(Q^-N, -a Q^nu; -Q^(1-N)/c; Q, -d)`.
pub fn transform_2phi1(n: u32, nu: u32, p: &BouletPoint) -> Result<Rational> {
    let (n, nu) = (n as i64, nu as i64);
    let bq = p.big_q();
    let upper = [rpow(&bq, -n), -(&p.a * rpow(&bq, nu))];
    let lower = [-rpow(&bq, 1 - n) / &p.c];
    Ok(phi_terminating(&upper, &lower, &bq, &-&p.d)?)
}

/// `(-a Q^nu)^N (bd Q^(-N-nu); Q)_N / (-Q^(1-N)/c; Q)_N 3phi1(Q^-N, -a Q^nu, -abc; ac Q^nu; Q, Q^N/(ab))`.
pub fn transform_3phi1(n: u32, nu: u32, p: &BouletPoint) -> Result<Rational> {
    let (n, nu) = (n as i64, nu as i64);
    let bq = p.big_q();
    let lead = rpow(&-(&p.a * rpow(&bq, nu)), n);
    let num = rational_pochhammer(&(&p.b * &p.d * rpow(&bq, -n - nu)), &bq, n)?;
    let den = rational_pochhammer(&(-rpow(&bq, 1 - n) / &p.c), &bq, n)?;
    if den == int(0) {
        return Err(QpolyError::DivisionByZero.into());
    }
    let upper = [
        rpow(&bq, -n),
        -(&p.a * rpow(&bq, nu)),
        -(&p.a * &p.b * &p.c),
    ];
    let lower = [&p.a * &p.c * rpow(&bq, nu)];
    let z = rpow(&bq, n) / (&p.a * &p.b);
    Ok(lead * num / den * phi_terminating(&upper, &lower, &bq, &z)?)
}

/// `(ab)^N (-c;Q)_N (1 + nu a) 2phi1(...)`, the hypergeometric form of `Psi_{2N+nu}`.
pub fn psi_via_2phi1(n: u32, nu: u32, p: &BouletPoint) -> Result<Rational> {
    let bq = p.big_q();
    let lead = rpow(&(&p.a * &p.b), n as i64)
        * rational_pochhammer(&-&p.c, &bq, n as i64)?
        * (int(1) + int(nu as i64) * &p.a);
    Ok(lead * transform_2phi1(n, nu, p)?)
}

/// `(-a^2 b)^N Q^(N nu) (1 + nu a) (-c;Q)_N times the 3phi1 side`, the second
/// hypergeometric form of `Psi_{2N+nu}`.
pub fn psi_via_3phi1(n: u32, nu: u32, p: &BouletPoint) -> Result<Rational> {
    let (nn, nuu) = (n as i64, nu as i64);
    let bq = p.big_q();
    let lead = rpow(&-(&p.a * &p.a * &p.b), nn)
        * rpow(&bq, nn * nuu)
        * (int(1) + int(nuu) * &p.a)
        * rational_pochhammer(&-&p.c, &bq, nn)?;
    let num = rational_pochhammer(&(&p.b * &p.d * rpow(&bq, -nn - nuu)), &bq, nn)?;
    let den = rational_pochhammer(&(-rpow(&bq, 1 - nn) / &p.c), &bq, nn)?;
    if den == int(0) {
        return Err(QpolyError::DivisionByZero.into());
    }
    let upper = [
        rpow(&bq, -nn),
        -(&p.a * rpow(&bq, nuu)),
        -(&p.a * &p.b * &p.c),
    ];
    let lower = [&p.a * &p.c * rpow(&bq, nuu)];
    let z = rpow(&bq, nn) / (&p.a * &p.b);
    Ok(lead * num / den * phi_terminating(&upper, &lower, &bq, &z)?)
}

// ---------------------------------------------------------------------------
// Dispatchers by family

/// Bounded distinct-part generating function with both odd-part counts fixed.
pub fn p_distinct_closed(bound: u32, i: u32, j: u32) -> Result<LaurentPoly> {
    p_distinct(bound, i, j)
}

/// Unbounded limit of [`p_distinct_closed`].
pub fn p_distinct_limit_closed(i: u32, j: u32, grading: &Grading) -> Result<TruncatedSeries> {
    p_distinct_limit(i, j, grading)
}

/// Result of a builder that may be exact or truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Exact(LaurentPoly),
    Series(TruncatedSeries),
}

/// BG-rank generating function; `grading` selects the unrestricted case.
pub fn bg_closed(bound: u32, k: i64, grading: Option<&Grading>) -> Result<Built> {
    match grading {
        None => Ok(Built::Exact(bg_distinct(bound, k))),
        Some(g) => Ok(Built::Series(bg_unrestricted(bound, k, g)?)),
    }
}

/// Distinct (`Psi`) or unrestricted (`Phi`) Boulet-Stanley kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BouletKind {
    Psi,
    Phi,
}

/// `Psi_bound` exactly or `Phi_bound` truncated; `bound = None` is unbounded.
pub fn psi_phi_closed(bound: Option<u32>, kind: BouletKind, grading: &Grading) -> Result<Built> {
    match (bound, kind) {
        (Some(b), BouletKind::Psi) => Ok(Built::Exact(psi_bounded(b))),
        (Some(b), BouletKind::Phi) => Ok(Built::Series(phi_bounded(b, grading)?)),
        (None, BouletKind::Psi) => Ok(Built::Series(psi_infinite(grading)?)),
        (None, BouletKind::Phi) => Ok(Built::Series(phi_infinite(grading)?)),
    }
}

/// Left (`product = false`) or right side of the `x` generating series.
pub fn psi_x_series(nu: u32, product_side: bool, grading: &Grading) -> Result<TruncatedSeries> {
    if product_side {
        x_series_rhs(nu, grading)
    } else {
        x_series_lhs(nu, grading, |b| Ok(psi_bounded(b)))
    }
}

/// Finite Boulet-Stanley variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteBoulet {
    /// `Phi_bound`, term-by-term series.
    PhiDirect,
    /// `Psi_bound` with the telescoped `(ac;Q)` ratio.
    PsiTelescoped,
    /// `Phi_{bound, parts}`, even `parts`.
    FourFold,
    /// `Phi_{bound, parts}`, Yee form.
    Yee,
    /// `Phi_{bound, parts}`, odd `parts`.
    OddParts,
}

pub fn finite_boulet(
    bound: u32,
    parts: Option<u32>,
    variant: FiniteBoulet,
    grading: &Grading,
) -> Result<Built> {
    let need_parts =
        || parts.ok_or_else(|| FormError::InvalidParameters("parts bound required".into()));
    match variant {
        FiniteBoulet::PhiDirect => Ok(Built::Series(phi_bounded_direct(bound, grading)?)),
        FiniteBoulet::PsiTelescoped => Ok(Built::Exact(psi_bounded_telescoped(bound))),
        FiniteBoulet::FourFold => Ok(Built::Exact(phi_box_even(bound, need_parts()?)?)),
        FiniteBoulet::Yee => Ok(Built::Exact(phi_box_yee(bound, need_parts()?)?)),
        FiniteBoulet::OddParts => Ok(Built::Exact(phi_box_odd(bound, need_parts()?)?)),
    }
}

/// Rogers-Szegő specializations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsForm {
    /// The single-fold `q^4` sum.
    HermiteSum,
    /// `Psi_bound(zq, zq, q/z, q/z)`.
    PsiSpecialization,
}

pub fn rs_specializations(bound: u32, which: RsForm) -> Result<LaurentPoly> {
    match which {
        RsForm::HermiteSum => Ok(hermite_sum(bound)),
        RsForm::PsiSpecialization => Ok(psi_bounded(bound).substitute(&sub_alt())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn distinct_examples() {
        assert_eq!(p_distinct(2, 0, 0).unwrap(), p("1 + q^2"));
        assert_eq!(p_distinct(3, 1, 0).unwrap(), p("q + q^3 + q^5"));
        assert_eq!(p_distinct(2, 0, 1).unwrap(), p("q^3"));
        for b in 0..8 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(
                        p_distinct(b, i, j).unwrap(),
                        p_distinct_via_sum(b, i, j),
                        "{b} {i} {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn limit_examples() {
        let g = Grading::norm(8);
        assert_eq!(
            p_distinct_limit(0, 0, &g).unwrap().body(),
            &p("1 + q^2 + q^4 + 2*q^6 + 2*q^8")
        );
        let g = Grading::norm(14);
        assert_eq!(
            p_distinct_limit(1, 1, &g).unwrap().body().q_coeff(14),
            10.into()
        );
        let g = Grading::norm(9);
        assert_eq!(gf_1or3mod4(1, 1, &g).unwrap().body(), &p("q + q^5 + q^9"));
    }

    #[test]
    fn bg_examples() {
        assert_eq!(bg_distinct(2, 0), p("1 + q^2"));
        assert_eq!(bg_distinct(2, 1), p("q"));
        let g = Grading::norm(6);
        assert_eq!(
            bg_unrestricted(1, 0, &g).unwrap().body(),
            &p("1 + q^2 + q^4 + q^6")
        );
        for b in 0..=10 {
            let sum: LaurentPoly = bg_range(b).map(|k| bg_distinct(b, k)).sum();
            assert_eq!(sum, distinct_product(b));
        }
    }

    #[test]
    fn single_fold_examples() {
        assert_eq!(double_to_single(1), p("1 + q*t"));
        assert_eq!(double_to_single(2), p("1 + q*t + q^2 + q^3*z"));
        let ones = Substitution::new()
            .with(Var::T, Monomial::one())
            .with(Var::Z, Monomial::one());
        assert_eq!(
            double_to_single(4).substitute(&ones).unwrap(),
            distinct_product(4)
        );
    }

    #[test]
    fn little_gollnitz_examples() {
        assert_eq!(connect_rhs(1), p("1 + q^2 + q^3"));
        assert_eq!(
            little_gollnitz_rhs(LittleGollnitz::First, 1, 0),
            p("1 + q^2 + q^3")
        );
        for n in 0..5 {
            for nu in 0..2 {
                for which in [LittleGollnitz::First, LittleGollnitz::Second] {
                    assert_eq!(
                        little_gollnitz_lhs(which, n, nu).unwrap(),
                        little_gollnitz_rhs(which, n, nu),
                        "{which:?} {n} {nu}"
                    );
                }
            }
        }
        assert_eq!(cigler_lhs(1), p("1 + z - y*z"));
        assert_eq!(cigler_rhs(1), cigler_lhs(1));
    }

    #[test]
    fn boulet_examples() {
        assert_eq!(psi_bounded(2), p("1 + a + a*b + a*b*c"));
        assert_eq!(psi_bounded_telescoped(2), psi_bounded(2));
        for b in 0..6 {
            assert_eq!(
                psi_bounded(b).substitute(&sub_q()).unwrap(),
                distinct_product(b)
            );
        }
        let g = Grading::norm(6);
        let phi = phi_infinite(&g).unwrap().substitute(&sub_q()).unwrap();
        assert_eq!(
            phi.body(),
            &p("1 + q + 2*q^2 + 3*q^3 + 5*q^4 + 7*q^5 + 11*q^6")
        );
    }

    #[test]
    fn x_series_low_order() {
        let g = x_grading(4, 1);
        let lhs = psi_x_series(0, false, &g).unwrap();
        let rhs = psi_x_series(0, true, &g).unwrap();
        assert_eq!(lhs.coeff_extract(Var::X, 0).body(), &p("1"));
        assert_eq!(lhs, rhs);
        let g = x_grading(6, 0);
        assert_eq!(psi_x_series(1, true, &g).unwrap().body(), &p("1 + a"));
    }

    #[test]
    fn rogers_szego_examples() {
        let ones = Substitution::new().with(Var::Z, Monomial::one());
        assert_eq!(
            hermite_sum(2).substitute(&ones).unwrap(),
            p("1 + q") * p("1 + q^2")
        );
        assert_eq!(hermite_sum(2), rogers_szego_zq(2));
        assert_eq!(hermite_sum(1), p("1 + q*z"));
        assert_eq!(
            rs_specializations(5, RsForm::PsiSpecialization).unwrap(),
            rs_specializations(5, RsForm::HermiteSum).unwrap()
        );
    }

    #[test]
    fn box_examples() {
        let six = phi_box_even(2, 2).unwrap();
        assert_eq!(six.len(), 6);
        assert_eq!(six.substitute(&sub_q()).unwrap(), q_bin_coeff(2, 2));
        assert_eq!(phi_box_yee(2, 2).unwrap(), six);
        assert_eq!(phi_box_odd(1, 1).unwrap(), p("1 + a"));
        assert!(phi_box_yee(1, 2).is_err());
    }

    #[test]
    fn outlook_examples() {
        assert_eq!(
            bg_double_bounded(2, 2),
            p("1 + q*t + 2*q^2 + q^3*t^-1 + q^4")
        );
        assert_eq!(alt_double_bounded(1, 2), p("1 + q*z + q^2"));
        assert_eq!(
            p_tilde(7, PTildeForm::NoOddIndexed, 1, 2).unwrap(),
            p("q^9 + q^11 + q^13 + q^15")
        );
        assert_eq!(
            p_tilde(7, PTildeForm::NoEvenIndexedOddBound, 1, 1).unwrap(),
            p("q^5 + q^7 + 2*q^9 + q^11 + q^13")
        );
        assert_eq!(
            p_tilde(6, PTildeForm::NoEvenIndexedEvenBound, 2, 1).unwrap(),
            p("q^6 + q^8 + q^10 + q^12")
        );
    }

    #[test]
    fn rational_examples() {
        let (a, qq) = (int(2), Rational::new(1.into(), 3.into()));
        assert_eq!(
            odd_parts_phi(1, 0, &a, &qq).unwrap(),
            Rational::new(10.into(), 9.into())
        );
        assert_eq!(
            odd_parts_phi_product(1, 0, &a, &qq).unwrap(),
            Rational::new(10.into(), 9.into())
        );
        assert_eq!(odd_parts_phi_product(0, 0, &a, &qq).unwrap(), int(1));
        let pt = BouletPoint {
            a: Rational::new(2.into(), 3.into()),
            b: Rational::new(5.into(), 7.into()),
            c: Rational::new(11.into(), 4.into()),
            d: Rational::new(3.into(), 13.into()),
        };
        for n in 0..4 {
            for nu in 0..2 {
                assert_eq!(
                    transform_2phi1(n, nu, &pt).unwrap(),
                    transform_3phi1(n, nu, &pt).unwrap()
                );
            }
        }
    }

    mod oracle {
        use super::super::*;
        use crate::partition::{
            gf_enumerated, gf_series, PartitionConstraints as C, Stat, WeightKind as W,
        };

        #[test]
        fn distinct_by_odd_indexed_counts() {
            for b in 0..=9 {
                for i in 0..4 {
                    for j in 0..4 {
                        let c = C::new()
                            .max_part(b)
                            .distinct()
                            .filter(Stat::I, i as i64)
                            .filter(Stat::J, j as i64);
                        assert_eq!(
                            p_distinct(b, i, j).unwrap(),
                            gf_enumerated(&c, &W::Norm).unwrap(),
                            "{b} {i} {j}"
                        );
                    }
                }
            }
        }

        #[test]
        fn bg_rank() {
            let g = Grading::norm(16);
            for b in 0..=8 {
                for k in bg_range(b) {
                    let c = C::new().max_part(b).filter(Stat::Bg, k);
                    assert_eq!(
                        bg_distinct(b, k),
                        gf_enumerated(&c.clone().distinct(), &W::Norm).unwrap()
                    );
                    assert_eq!(
                        bg_unrestricted(b, k, &g).unwrap(),
                        gf_series(&c, &W::Norm, &g).unwrap()
                    );
                }
            }
        }

        #[test]
        fn boulet_sums() {
            for b in 0..=8 {
                let c = C::new().max_part(b).distinct();
                let oracle = gf_enumerated(&c, &W::Boulet).unwrap();
                assert_eq!(psi_bounded(b), oracle);
                assert_eq!(psi_bounded_telescoped(b), oracle);
            }
            let g = Grading::norm(10);
            for b in 0..=5 {
                let oracle = gf_series(&C::new().max_part(b), &W::Boulet, &g).unwrap();
                assert_eq!(phi_bounded(b, &g).unwrap(), oracle);
                assert_eq!(phi_bounded_direct(b, &g).unwrap(), oracle);
            }
        }

        #[test]
        fn boxes() {
            for b in 0..=5 {
                for m in 0..=5 {
                    let oracle =
                        gf_enumerated(&C::new().max_part(b).max_parts(m), &W::Boulet).unwrap();
                    assert_eq!(phi_box(b, m).unwrap(), oracle, "{b} {m}");
                    if b > 0 && m > 0 && (b % 2, m % 2) != (1, 0) {
                        assert_eq!(phi_box_yee(b, m).unwrap(), oracle, "yee {b} {m}");
                    }
                    assert_eq!(
                        bg_double_bounded(b, m),
                        gf_enumerated(&C::new().max_part(b).max_parts(m), &W::NormBg).unwrap()
                    );
                    if m > 0 {
                        assert_eq!(
                            alt_double_bounded(b, m),
                            gf_enumerated(&C::new().max_part(b).max_parts(m), &W::NormAlt).unwrap()
                        );
                    }
                }
            }
        }
    }
}
