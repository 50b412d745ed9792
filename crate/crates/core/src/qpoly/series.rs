use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Exponents, LaurentPoly, Monomial, QpolyError, Substitution, Var, NVARS};

/// Weighted degree plus a cutoff; optionally a separate degree cap per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    weights: [u32; NVARS],
    cutoff: i64,
    caps: [Option<i32>; NVARS],
}

impl Grading {
    /// Weight 1 on `q, a, b, c, d`, 0 elsewhere: the grade of a Boulet-Stanley
    /// weight is the norm of its partition.
    pub fn norm(cutoff: i64) -> Self {
        let mut weights = [0; NVARS];
        for v in [Var::Q, Var::A, Var::B, Var::C, Var::D] {
            weights[v.index()] = 1;
        }
        Grading {
            weights,
            cutoff,
            caps: [None; NVARS],
        }
    }

    pub fn with_weight(mut self, v: Var, w: u32) -> Self {
        self.weights[v.index()] = w;
        self
    }

    /// Keep only terms with `deg_v <= max`.
    pub fn with_cap(mut self, v: Var, max: i32) -> Self {
        self.caps[v.index()] = Some(max);
        self
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn weight(&self, v: Var) -> u32 {
        self.weights[v.index()]
    }

    pub fn cap(&self, v: Var) -> Option<i32> {
        self.caps[v.index()]
    }

    pub fn grade(&self, e: &Exponents) -> i64 {
        e.0.iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| x as i64 * w as i64)
            .sum()
    }

    pub fn admits(&self, e: &Exponents) -> bool {
        self.grade(e) <= self.cutoff
            && Var::ALL
                .iter()
                .all(|&v| self.cap(v).is_none_or(|max| e.get(v) <= max))
    }

    fn nonnegative(&self, e: &Exponents) -> bool {
        self.grade(e) >= 0
            && Var::ALL
                .iter()
                .all(|&v| self.cap(v).is_none() || e.get(v) >= 0)
    }

    /// True when `1 - m` is invertible in the truncated ring: `m` is
    /// nonnegative and strictly positive in the grade or in a capped variable.
    pub fn is_topologically_nilpotent(&self, e: &Exponents) -> bool {
        self.nonnegative(e)
            && (self.grade(e) > 0
                || Var::ALL
                    .iter()
                    .any(|&v| self.cap(v).is_some() && e.get(v) > 0))
    }
}

/// A Laurent polynomial known only up to a grading cutoff. All stored terms are
/// admitted by the grading, and arithmetic re-truncates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: LaurentPoly,
    grading: Grading,
}

impl TruncatedSeries {
    /// Truncates `body`; every term must have nonnegative grade.
    pub fn new(body: LaurentPoly, grading: Grading) -> Result<Self, QpolyError> {
        if let Some((e, _)) = body.terms().find(|(e, _)| !grading.nonnegative(e)) {
            return Err(QpolyError::NegativeGrade(e.to_string()));
        }
        let body = LaurentPoly::from_terms(
            body.terms()
                .filter(|(e, _)| grading.admits(e))
                .map(|(e, c)| (*e, c.clone())),
        );
        Ok(TruncatedSeries { body, grading })
    }

    pub fn zero(grading: Grading) -> Self {
        TruncatedSeries {
            body: LaurentPoly::zero(),
            grading,
        }
    }

    pub fn one(grading: Grading) -> Self {
        Self::new(LaurentPoly::one(), grading).expect("1 has grade 0")
    }

    pub fn from_monomial(m: &Monomial, grading: Grading) -> Result<Self, QpolyError> {
        Self::new(LaurentPoly::from_monomial(m), grading)
    }

    pub fn body(&self) -> &LaurentPoly {
        &self.body
    }

    pub fn into_body(self) -> LaurentPoly {
        self.body
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    fn same_grading(&self, other: &TruncatedSeries) -> Result<(), QpolyError> {
        if self.grading == other.grading {
            Ok(())
        } else {
            Err(QpolyError::GradingMismatch)
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, QpolyError> {
        self.same_grading(other)?;
        Ok(TruncatedSeries {
            body: &self.body + &other.body,
            grading: self.grading.clone(),
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, QpolyError> {
        self.same_grading(other)?;
        Ok(TruncatedSeries {
            body: &self.body - &other.body,
            grading: self.grading.clone(),
        })
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            body: -&self.body,
            grading: self.grading.clone(),
        }
    }

    /// Product, skipping every pair whose combined grade exceeds the cutoff.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, QpolyError> {
        self.same_grading(other)?;
        let g = &self.grading;
        let mut right: Vec<(i64, &Exponents, &BigInt)> = other
            .body
            .terms()
            .map(|(e, c)| (g.grade(e), e, c))
            .collect();
        right.sort_by_key(|&(grade, _, _)| grade);

        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (e1, c1) in self.body.terms() {
            let budget = g.cutoff - g.grade(e1);
            let end = right.partition_point(|&(grade, _, _)| grade <= budget);
            for &(_, e2, c2) in &right[..end] {
                let e = e1.mul(e2);
                if g.admits(&e) {
                    *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
                }
            }
        }
        Ok(TruncatedSeries {
            body: LaurentPoly::from_terms(acc),
            grading: g.clone(),
        })
    }

    /// Multiplies by an exact polynomial, truncating the result.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<TruncatedSeries, QpolyError> {
        self.mul(&TruncatedSeries::new(p.clone(), self.grading.clone())?)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<TruncatedSeries, QpolyError> {
        Self::new(self.body.mul_monomial(m), self.grading.clone())
    }

    /// Substitution is only sound when no variable's image has a smaller
    /// grade than the variable itself.
    pub fn substitute(&self, sub: &Substitution) -> Result<TruncatedSeries, QpolyError> {
        for v in self.body.vars() {
            if let Some(img) = sub.image(v) {
                if self.grading.grade(&img.exps) < self.grading.weight(v) as i64 {
                    return Err(QpolyError::GradeLoweringSubstitution(v));
                }
            }
        }
        Self::new(self.body.substitute(sub)?, self.grading.clone())
    }

    pub fn coeff_extract(&self, v: Var, e: i32) -> TruncatedSeries {
        TruncatedSeries {
            body: self.body.coeff_extract(v, e),
            grading: self.grading.clone(),
        }
    }

    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<(Exponents, BigInt, BigInt)> {
        self.body.first_difference(&other.body)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn product_truncates() {
        let g = Grading::norm(3);
        let s = TruncatedSeries::new(p("1 + q + q^2 + q^3 + q^4"), g.clone()).unwrap();
        assert_eq!(s.body(), &p("1 + q + q^2 + q^3"));
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.body(), &p("1 + 2*q + 3*q^2 + 4*q^3"));
    }

    #[test]
    fn t_and_z_are_free() {
        let g = Grading::norm(2);
        let s = TruncatedSeries::new(p("t^-5 + q*z^9 + q^3*t"), g).unwrap();
        assert_eq!(s.body(), &p("t^-5 + q*z^9"));
    }

    #[test]
    fn mixing_gradings_fails() {
        let a = TruncatedSeries::one(Grading::norm(3));
        let b = TruncatedSeries::one(Grading::norm(4));
        assert_eq!(a.mul(&b), Err(QpolyError::GradingMismatch));
        assert_eq!(a.add(&b), Err(QpolyError::GradingMismatch));
        let c = TruncatedSeries::one(Grading::norm(3).with_cap(Var::X, 2));
        assert_eq!(a.sub(&c), Err(QpolyError::GradingMismatch));
    }

    #[test]
    fn negative_grade_rejected() {
        assert!(TruncatedSeries::new(p("q^-1"), Grading::norm(3)).is_err());
    }

    #[test]
    fn capped_variable() {
        let g = Grading::norm(10).with_cap(Var::X, 1);
        let s = TruncatedSeries::new(p("1 + x + x^2*q"), g).unwrap();
        assert_eq!(s.body(), &p("1 + x"));
        assert!(s
            .grading()
            .is_topologically_nilpotent(&Exponents::var(Var::X, 1)));
        assert!(!s
            .grading()
            .is_topologically_nilpotent(&Exponents::var(Var::T, 1)));
    }

    #[test]
    fn grade_lowering_substitution_rejected() {
        let s = TruncatedSeries::new(p("1 + a"), Grading::norm(5)).unwrap();
        let bad = Substitution::new().with(Var::A, Monomial::var(Var::T, 1));
        assert!(s.substitute(&bad).is_err());
        let good = Substitution::new().with(Var::A, Monomial::new(1, &[(Var::Q, 1), (Var::Z, 1)]));
        assert_eq!(s.substitute(&good).unwrap().body(), &p("1 + q*z"));
    }
}
