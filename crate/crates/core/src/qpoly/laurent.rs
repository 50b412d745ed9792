use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hypergeometric::{rational_pow, Rational};
use super::{Exponents, Monomial, QpolyError, Var, NVARS};

/// Sparse Laurent polynomial in `q, t, z, a, b, c, d, x, y` with big-integer
/// coefficients. Always normalized: no zero coefficients are stored, and
/// iteration runs in ascending graded-lex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

/// Maps each variable to a monomial, or leaves it alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    images: [Option<Monomial>; NVARS],
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, image: Monomial) -> Self {
        self.images[v.index()] = Some(image);
        self
    }

    pub fn image(&self, v: Var) -> Option<&Monomial> {
        self.images[v.index()].as_ref()
    }

    /// `(a, b, c, d) -> (a', b', c', d')`.
    pub fn boulet(images: [Monomial; 4]) -> Self {
        let [a, b, c, d] = images;
        Substitution::new()
            .with(Var::A, a)
            .with(Var::B, b)
            .with(Var::C, c)
            .with(Var::D, d)
    }
}

/// Rational values for variables, used by [`LaurentPoly::eval`].
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: [Option<Rational>; NVARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.values[v.index()] = Some(value);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values[v.index()].as_ref()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_monomial(&Monomial {
            coeff: c.into(),
            exps: Exponents::ONE,
        })
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m.exps, m.coeff.clone());
        p
    }

    /// `v^e`.
    pub fn var(v: Var, e: i32) -> Self {
        Self::from_monomial(&Monomial::var(v, e))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Accumulates `c * x^e`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial {
            coeff: c.clone(),
            exps: *e,
        })
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^e` in a univariate-in-`q` polynomial.
    pub fn q_coeff(&self, e: i32) -> BigInt {
        self.coeff(&Exponents::var(Var::Q, e))
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() == 1 {
            self.monomials().next()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.terms.keys().any(|e| e.get(v) != 0))
            .collect()
    }

    pub fn max_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| e.get(v)).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| e.get(v)).min()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if m.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.mul(&m.exps), c * &m.coeff))
                .collect(),
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> LaurentPoly {
        self.mul_monomial(&Monomial {
            coeff: c.into(),
            exps: Exponents::ONE,
        })
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variables by monomials. Negative exponents of an image need a
    /// unit coefficient.
    pub fn substitute(&self, sub: &Substitution) -> Result<LaurentPoly, QpolyError> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut m = Monomial {
                coeff: c.clone(),
                exps: Exponents::ONE,
            };
            for (v, k) in e.support() {
                let factor = match sub.image(v) {
                    Some(img) => img.pow(k)?,
                    None => Monomial::var(v, k),
                };
                m = m.mul(&factor);
            }
            out.add_term(m.exps, m.coeff);
        }
        Ok(out)
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coeff_extract(&self, v: Var, e: i32) -> LaurentPoly {
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            if exps.get(v) == e {
                let mut rest = *exps;
                rest.set(v, 0);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Exact rational value at the given point.
    pub fn eval(&self, at: &Assignment) -> Result<Rational, QpolyError> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (v, k) in e.support() {
                let value = at.get(v).ok_or(QpolyError::UnassignedVariable(v))?;
                if value.is_zero() && k < 0 {
                    return Err(QpolyError::ZeroToNegativePower(v));
                }
                term *= rational_pow(value, k);
            }
            total += term;
        }
        Ok(total)
    }

    /// Exact quotient `self / den`. The divisor must be a single term or
    /// univariate; any remainder is reported as [`QpolyError::InexactDivision`].
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, QpolyError> {
        if den.is_zero() {
            return Err(QpolyError::DivisionByZero);
        }
        if let Some(m) = den.as_monomial() {
            let mut out = Self::zero();
            for (e, c) in &self.terms {
                let (quot, rem) = c.div_rem(&m.coeff);
                if !rem.is_zero() {
                    return Err(QpolyError::InexactDivision);
                }
                out.add_term(e.div(&m.exps), quot);
            }
            return Ok(out);
        }
        let vars = den.vars();
        let [v] = vars.as_slice() else {
            return Err(QpolyError::UnsupportedDivisor(den.to_string()));
        };
        let v = *v;

        // Univariate long division in `v` over coefficients in the other variables.
        let divisor: BTreeMap<i32, BigInt> = den
            .terms
            .iter()
            .map(|(e, c)| (e.get(v), c.clone()))
            .collect();
        let (&dmax, lead) = divisor.iter().next_back().expect("nonzero divisor");
        let dmin = *divisor.keys().next().expect("nonzero divisor");
        let span = dmax - dmin;

        let mut rem: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest.set(v, 0);
            rem.entry(e.get(v)).or_default().add_term(rest, c.clone());
        }
        let Some(&nmin) = rem.keys().next() else {
            return Ok(Self::zero());
        };

        let mut quotient = Self::zero();
        while let Some((&top, _)) = rem.iter().next_back() {
            if top - nmin < span {
                break;
            }
            let c = rem.remove(&top).expect("present");
            let mut step = Self::zero();
            for (e, k) in &c.terms {
                let (quot, r) = k.div_rem(lead);
                if !r.is_zero() {
                    return Err(QpolyError::InexactDivision);
                }
                step.add_term(*e, quot);
            }
            let shift = top - dmax;
            for (&de, dc) in divisor.iter().rev().skip(1) {
                let slot = rem.entry(shift + de).or_default();
                *slot -= &step.scale(dc.clone());
                if slot.is_zero() {
                    rem.remove(&(shift + de));
                }
            }
            quotient += &step.mul_monomial(&Monomial::var(v, shift));
        }
        if rem.values().any(|p| !p.is_zero()) {
            return Err(QpolyError::InexactDivision);
        }
        Ok(quotient)
    }

    /// The graded-lex least exponent at which `self` and `other` differ, with
    /// both coefficients.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<(Exponents, BigInt, BigInt)> {
        let diff = self - other;
        diff.terms
            .keys()
            .next()
            .map(|e| (*e, self.coeff(e), other.coeff(e)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let magnitude = Monomial {
                coeff: c.abs(),
                exps: *e,
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{magnitude}")?,
                (0, true) => write!(f, "-{magnitude}")?,
                (_, false) => write!(f, " + {magnitude}")?,
                (_, true) => write!(f, " - {magnitude}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = QpolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse_poly()
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> QpolyError {
        QpolyError::Parse(format!("{what} at byte {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, QpolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("bad integer"))
    }

    fn exponent(&mut self) -> Result<i32, QpolyError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.integer()?;
        let n: i32 = n
            .try_into()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn factor(&mut self, m: &mut Monomial) -> Result<(), QpolyError> {
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let n = self.integer()?;
                m.coeff *= n;
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                self.pos += 1;
                let v: Var = (ch as char)
                    .to_string()
                    .parse()
                    .map_err(|_| self.err("unknown variable"))?;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                m.exps = m.exps.mul(&Exponents::var(v, e));
            }
            _ => return Err(self.err("expected coefficient or variable")),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Monomial, QpolyError> {
        let mut m = Monomial::one();
        self.factor(&mut m)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut m)?;
        }
        Ok(m)
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, QpolyError> {
        let mut p = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.err("empty polynomial")),
            _ => 1,
        };
        loop {
            let m = self.term()?.scale(sign);
            p.add_term(m.exps, m.coeff);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
        Ok(p)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$method(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$method(rhs) }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::from_monomial(&m)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(1)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("1 + q") * p("1 - q"), p("1 - q^2"));
    }

    #[test]
    fn laurent_closure() {
        let prod = p("1 + q*t") * p("1 + q*t^-1");
        assert_eq!(prod.to_string(), "1 + q*t^-1 + q*t + q^2");
    }

    #[test]
    fn text_form_matches_documented_example() {
        let s = "1 + q*t + 2*q^2 + q^3*t^-1";
        assert_eq!(p(s).to_string(), s);
        assert_eq!(p("-3*q^2 + 5 - q").to_string(), "5 - q - 3*q^2");
        assert_eq!(p("0").to_string(), "0");
        assert!("1 + w".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn substitution_into_distinct_parts_weight() {
        let psi2 = p("1 + a + a*b + a*b*c");
        let sub = Substitution::boulet([
            Monomial::new(1, &[(Var::Q, 1), (Var::T, 1)]),
            Monomial::new(1, &[(Var::Q, 1), (Var::T, -1)]),
            Monomial::new(1, &[(Var::Q, 1), (Var::Z, 1)]),
            Monomial::new(1, &[(Var::Q, 1), (Var::Z, -1)]),
        ]);
        assert_eq!(psi2.substitute(&sub).unwrap(), p("1 + q*t + q^2 + q^3*z"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p("1 - q^6").divide_exact(&p("1 - q^2")).unwrap(),
            p("1 + q^2 + q^4")
        );
        assert_eq!(
            p("1 - q^4").divide_exact(&p("1 - q^3")),
            Err(QpolyError::InexactDivision)
        );
        assert_eq!(
            p("q^-2*t - t*q^4").divide_exact(&p("q^-1 - q^2")).unwrap(),
            p("q^-1*t + q^2*t")
        );
        assert_eq!(p("6*a*c^2").divide_exact(&p("2*c")).unwrap(), p("3*a*c"));
        assert!(p("1").divide_exact(&p("1 + a*b")).is_err());
        assert_eq!(
            p("q").divide_exact(&p("0")),
            Err(QpolyError::DivisionByZero)
        );
    }

    #[test]
    fn podd_assembly_divides() {
        // q (1 + q^2) [2;1]_{q^4} (1 - q^6) / (1 - q^8)
        let num = p("q") * p("1 + q^2") * p("1 + q^4") * p("1 - q^6");
        assert_eq!(num.divide_exact(&p("1 - q^8")).unwrap(), p("q + q^3 + q^5"));
    }

    #[test]
    fn extraction_and_evaluation() {
        let h2 = p("1 + z + q*z + z^2");
        assert_eq!(h2.coeff_extract(Var::Z, 1), p("1 + q"));
        assert!(h2.coeff_extract(Var::Z, 7).is_zero());

        let third = Rational::new(1.into(), 3.into());
        let at = Assignment::new().with(Var::Q, third.clone());
        assert_eq!(
            p("1 + q").eval(&at).unwrap(),
            Rational::new(4.into(), 3.into())
        );

        let at = at.with(Var::T, Rational::from_integer(2.into()));
        assert_eq!(
            p("t^-1*q^3").eval(&at).unwrap(),
            Rational::new(1.into(), 54.into())
        );

        let zero = Assignment::new().with(Var::Q, Rational::zero());
        assert_eq!(
            p("q^-1").eval(&zero),
            Err(QpolyError::ZeroToNegativePower(Var::Q))
        );
        assert_eq!(
            p("t").eval(&zero),
            Err(QpolyError::UnassignedVariable(Var::T))
        );
    }

    mod laws {
        use super::*;
        use crate::qpoly::{Grading, TruncatedSeries};
        use proptest::prelude::*;

        const VARS: [Var; 4] = [Var::Q, Var::T, Var::A, Var::B];

        /// Up to 5 terms in 4 variables, exponents in -3..=3 so total degree stays within 6 per factor pair.
        fn small_poly(min_exp: i32) -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((prop::array::uniform4(min_exp..=3i32), -5i64..=5), 0..=5)
                .prop_map(|terms| {
                    LaurentPoly::from_terms(terms.into_iter().map(|(es, c)| {
                        let pairs: Vec<(Var, i32)> = VARS.iter().copied().zip(es).collect();
                        (Exponents::from_pairs(&pairs), BigInt::from(c))
                    }))
                })
        }

        /// Divisors must be univariate; these live in `q` alone.
        fn q_poly() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((-3i32..=3, -5i64..=5), 0..=4).prop_map(|terms| {
                LaurentPoly::from_terms(
                    terms
                        .into_iter()
                        .map(|(e, c)| (Exponents::from_pairs(&[(Var::Q, e)]), BigInt::from(c))),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn ring_laws(a in small_poly(-3), b in small_poly(-3), c in small_poly(-3)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            }

            #[test]
            fn exact_division_inverts_multiplication(a in small_poly(-3), b in q_poly()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
            }

            #[test]
            fn text_round_trip(a in small_poly(-3)) {
                prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
            }

            #[test]
            fn series_agree_with_exact_products(a in small_poly(0), b in small_poly(0)) {
                // q, a, b carry weight 1 and t weight 0, so every grade is at most 9 + 9
                let g = Grading::norm(18);
                let sa = TruncatedSeries::new(a.clone(), g.clone()).unwrap();
                let sb = TruncatedSeries::new(b.clone(), g).unwrap();
                prop_assert_eq!(sa.mul(&sb).unwrap().into_body(), &a * &b);
                prop_assert_eq!(sa.add(&sb).unwrap().into_body(), &a + &b);
            }
        }
    }
}
