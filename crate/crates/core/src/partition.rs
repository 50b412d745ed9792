//! Partitions, their statistics, and constrained exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::qpoly::{
    Exponents, Grading, LaurentPoly, Monomial, QpolyError, Substitution, TruncatedSeries, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition `{0}`")]
    Parse(String),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("parts must be weakly decreasing")]
    NotDecreasing,
    #[error("constraints describe an infinite set; bound the norm or both the largest part and the number of parts")]
    InfiniteUniverse,
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error(transparent)]
    Qpoly(#[from] QpolyError),
}

/// A weakly decreasing list of positive parts; `()` is the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_distinct(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest();
        let parts = (1..=width)
            .map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    pub fn stats(&self) -> PartitionStats {
        let mut s = PartitionStats {
            num_parts: self.0.len() as i64,
            ..PartitionStats::default()
        };
        for (row, &part) in self.0.iter().enumerate() {
            let p = part as i64;
            let odd_row = row % 2 == 0;
            s.norm += p;
            if odd_row {
                s.alt_sum += p;
            } else {
                s.alt_sum -= p;
            }
            if p % 2 == 0 {
                s.m_even_parts += 1;
            } else {
                s.odd_parts += 1;
                if odd_row {
                    s.i_odd_indexed_odd += 1;
                } else {
                    s.j_even_indexed_odd += 1;
                }
            }
            match p % 4 {
                1 => s.c1mod4 += 1,
                3 => s.c3mod4 += 1,
                _ => {}
            }
            let (long, short) = ((p + 1) / 2, p / 2);
            if odd_row {
                s.boulet[0] += long;
                s.boulet[1] += short;
            } else {
                s.boulet[2] += long;
                s.boulet[3] += short;
            }
        }
        s.bg_rank = s.i_odd_indexed_odd - s.j_even_indexed_odd;
        s.r0 = s.boulet[0] + s.boulet[3];
        s.r1 = s.boulet[1] + s.boulet[2];
        s
    }

    /// `a^#a b^#b c^#c d^#d`.
    pub fn boulet_weight(&self) -> Exponents {
        let [a, b, c, d] = self.stats().boulet;
        Exponents::from_pairs(&[
            (Var::A, a as i32),
            (Var::B, b as i32),
            (Var::C, c as i32),
            (Var::D, d as i32),
        ])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    Err(PartitionError::Parse(s.to_string()))
                } else {
                    tok.parse::<u32>()
                        .map_err(|_| PartitionError::Parse(s.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every statistic used by the identities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub norm: i64,
    pub num_parts: i64,
    /// Odd parts in odd positions (1-based).
    pub i_odd_indexed_odd: i64,
    /// Odd parts in even positions.
    pub j_even_indexed_odd: i64,
    pub m_even_parts: i64,
    pub odd_parts: i64,
    pub bg_rank: i64,
    pub alt_sum: i64,
    pub c1mod4: i64,
    pub c3mod4: i64,
    /// Zeros and ones in the 2-residue diagram.
    pub r0: i64,
    pub r1: i64,
    /// Exponents of `a, b, c, d` in the Boulet-Stanley weight.
    pub boulet: [i64; 4],
}

/// A statistic usable as an exact-value filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stat {
    I,
    J,
    M,
    Bg,
    Alt,
    C1Mod4,
    C3Mod4,
    OddParts,
    NumParts,
}

impl Stat {
    pub const ALL: [Stat; 9] = [
        Stat::I,
        Stat::J,
        Stat::M,
        Stat::Bg,
        Stat::Alt,
        Stat::C1Mod4,
        Stat::C3Mod4,
        Stat::OddParts,
        Stat::NumParts,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Stat::I => "i",
            Stat::J => "j",
            Stat::M => "m",
            Stat::Bg => "bg",
            Stat::Alt => "alt",
            Stat::C1Mod4 => "c1mod4",
            Stat::C3Mod4 => "c3mod4",
            Stat::OddParts => "odd",
            Stat::NumParts => "parts",
        }
    }

    pub fn value(self, s: &PartitionStats) -> i64 {
        match self {
            Stat::I => s.i_odd_indexed_odd,
            Stat::J => s.j_even_indexed_odd,
            Stat::M => s.m_even_parts,
            Stat::Bg => s.bg_rank,
            Stat::Alt => s.alt_sum,
            Stat::C1Mod4 => s.c1mod4,
            Stat::C3Mod4 => s.c3mod4,
            Stat::OddParts => s.odd_parts,
            Stat::NumParts => s.num_parts,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Stat {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stat::ALL
            .iter()
            .copied()
            .find(|st| st.key() == s)
            .ok_or_else(|| PartitionError::InvalidConstraint(format!("unknown statistic `{s}`")))
    }
}

/// Allowed residues of every part modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residues {
    pub modulus: u32,
    pub allowed: Vec<u32>,
}

/// Declarative description of a set of partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionConstraints {
    pub max_part: Option<u32>,
    pub max_parts: Option<u32>,
    pub min_part: Option<u32>,
    pub distinct: bool,
    /// Consecutive parts differ by at least 2, and never by exactly 2 when both are odd.
    pub gollnitz_gap: bool,
    pub fixed_norm: Option<u32>,
    pub max_norm: Option<u32>,
    pub residues: Option<Residues>,
    pub filters: Vec<(Stat, i64)>,
}

impl PartitionConstraints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn max_part(mut self, n: u32) -> Self {
        self.max_part = Some(n);
        self
    }

    pub fn max_parts(mut self, m: u32) -> Self {
        self.max_parts = Some(m);
        self
    }

    pub fn min_part(mut self, n: u32) -> Self {
        self.min_part = Some(n);
        self
    }

    pub fn distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    pub fn gollnitz_gap(mut self) -> Self {
        self.gollnitz_gap = true;
        self
    }

    pub fn fixed_norm(mut self, n: u32) -> Self {
        self.fixed_norm = Some(n);
        self
    }

    pub fn max_norm(mut self, n: u32) -> Self {
        self.max_norm = Some(self.max_norm.map_or(n, |m| m.min(n)));
        self
    }

    pub fn residues(mut self, modulus: u32, allowed: &[u32]) -> Self {
        self.residues = Some(Residues {
            modulus,
            allowed: allowed.to_vec(),
        });
        self
    }

    pub fn filter(mut self, stat: Stat, value: i64) -> Self {
        self.filters.push((stat, value));
        self
    }

    fn norm_limit(&self) -> Option<u32> {
        match (self.fixed_norm, self.max_norm) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// A bounded norm, or a bounded box, or bounded parts that cannot repeat.
    pub fn is_finite(&self) -> bool {
        self.norm_limit().is_some()
            || self.max_part == Some(0)
            || self.max_parts == Some(0)
            || (self.max_part.is_some()
                && (self.max_parts.is_some() || self.distinct || self.gollnitz_gap))
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        if let Some(r) = &self.residues {
            if r.modulus == 0 {
                return Err(PartitionError::InvalidConstraint(
                    "residue modulus must be positive".into(),
                ));
            }
        }
        if !self.is_finite() {
            return Err(PartitionError::InfiniteUniverse);
        }
        Ok(())
    }

    fn part_allowed(&self, v: u32) -> bool {
        self.min_part.is_none_or(|m| v >= m)
            && self
                .residues
                .as_ref()
                .is_none_or(|r| r.allowed.contains(&(v % r.modulus)))
    }

    fn follows(&self, last: u32, v: u32) -> bool {
        if self.gollnitz_gap {
            last >= v + 2 && !(last % 2 == 1 && v % 2 == 1 && last == v + 2)
        } else if self.distinct {
            last > v
        } else {
            last >= v
        }
    }

    pub fn accepts(&self, p: &Partition) -> bool {
        let parts = p.parts();
        let norm = p.norm();
        self.max_part.is_none_or(|n| p.largest() <= n)
            && self.max_parts.is_none_or(|m| parts.len() <= m as usize)
            && parts.iter().all(|&v| self.part_allowed(v))
            && parts.windows(2).all(|w| self.follows(w[0], w[1]))
            && self.fixed_norm.is_none_or(|n| norm == n as u64)
            && self.max_norm.is_none_or(|n| norm <= n as u64)
            && self.passes_filters(p)
    }

    fn passes_filters(&self, p: &Partition) -> bool {
        if self.filters.is_empty() {
            return true;
        }
        let s = p.stats();
        self.filters.iter().all(|&(st, v)| st.value(&s) == v)
    }
}

/// Lazy post-order depth-first walk: yields in decreasing lexicographic order,
/// so every partition precedes its own prefixes and `()` comes last.
pub struct Enumeration {
    c: PartitionConstraints,
    limit: u64,
    top: u32,
    parts: Vec<u32>,
    /// Largest value still to try as the next part below each prefix.
    next: Vec<u32>,
    sum: u64,
    done: bool,
}

impl Enumeration {
    fn child(&self, depth: usize) -> Option<u32> {
        if self.c.max_parts.is_some_and(|m| depth >= m as usize) {
            return None;
        }
        let last = if depth == 0 {
            None
        } else {
            Some(self.parts[depth - 1])
        };
        let budget = self.limit.saturating_sub(self.sum).min(u32::MAX as u64) as u32;
        let mut v = self.next[depth].min(budget);
        let floor = self.c.min_part.unwrap_or(1).max(1);
        while v >= floor {
            if last.is_none_or(|l| self.c.follows(l, v)) && self.c.part_allowed(v) {
                return Some(v);
            }
            v -= 1;
        }
        None
    }
}

impl Iterator for Enumeration {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        while !self.done {
            let depth = self.parts.len();
            match self.child(depth) {
                Some(v) => {
                    self.next[depth] = v - 1;
                    self.parts.push(v);
                    self.sum += v as u64;
                    if self.next.len() <= depth + 1 {
                        self.next.push(0);
                    }
                    self.next[depth + 1] = v;
                }
                None => {
                    let node = Partition(self.parts.clone());
                    match self.parts.pop() {
                        Some(v) => self.sum -= v as u64,
                        None => self.done = true,
                    }
                    let fixed_ok = self.c.fixed_norm.is_none_or(|n| node.norm() == n as u64);
                    if fixed_ok && self.c.passes_filters(&node) {
                        return Some(node);
                    }
                }
            }
        }
        None
    }
}

/// Every partition satisfying `c`, each exactly once, in decreasing
/// lexicographic order.
pub fn enumerate(c: &PartitionConstraints) -> Result<Enumeration, PartitionError> {
    c.validate()?;
    let limit = c.norm_limit().map_or(u64::MAX, |n| n as u64);
    let mut top = c.max_part.unwrap_or(u32::MAX);
    if limit < top as u64 {
        top = limit as u32;
    }
    Ok(Enumeration {
        c: c.clone(),
        limit,
        top,
        parts: Vec::new(),
        next: vec![top],
        sum: 0,
        done: false,
    })
}

impl Enumeration {
    /// The largest part value considered.
    pub fn top(&self) -> u32 {
        self.top
    }
}

/// How a partition is turned into a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// `q^|pi|`
    Norm,
    /// `q^|pi| t^i z^j`
    NormIJ,
    /// `q^|pi| t^BG`
    NormBg,
    /// `q^|pi| z^alt`
    NormAlt,
    /// `a^#a b^#b c^#c d^#d`
    Boulet,
    /// Boulet-Stanley weight with `a, b, c, d` replaced by monomials.
    BouletSubstituted(Box<Substitution>),
}

impl WeightKind {
    pub fn weight(&self, p: &Partition) -> Result<Monomial, PartitionError> {
        let s = p.stats();
        let q = (Var::Q, s.norm as i32);
        let pairs: Vec<(Var, i32)> = match self {
            WeightKind::Norm => vec![q],
            WeightKind::NormIJ => vec![
                q,
                (Var::T, s.i_odd_indexed_odd as i32),
                (Var::Z, s.j_even_indexed_odd as i32),
            ],
            WeightKind::NormBg => vec![q, (Var::T, s.bg_rank as i32)],
            WeightKind::NormAlt => vec![q, (Var::Z, s.alt_sum as i32)],
            WeightKind::Boulet => vec![
                (Var::A, s.boulet[0] as i32),
                (Var::B, s.boulet[1] as i32),
                (Var::C, s.boulet[2] as i32),
                (Var::D, s.boulet[3] as i32),
            ],
            WeightKind::BouletSubstituted(sub) => {
                let mut m = Monomial::one();
                for (k, v) in [Var::A, Var::B, Var::C, Var::D].into_iter().enumerate() {
                    let image = sub.image(v).cloned().unwrap_or_else(|| Monomial::var(v, 1));
                    m = m.mul(&image.powu(s.boulet[k] as u32));
                }
                return Ok(m);
            }
        };
        Ok(Monomial::new(1, &pairs))
    }
}

/// Exact sum of `weight` over the enumerated set.
pub fn gf_enumerated(
    c: &PartitionConstraints,
    weight: &WeightKind,
) -> Result<LaurentPoly, PartitionError> {
    let mut acc = LaurentPoly::zero();
    for p in enumerate(c)? {
        let m = weight.weight(&p)?;
        acc.add_term(m.exps, m.coeff);
    }
    Ok(acc)
}

/// Truncated sum of `weight`; the norm is capped at the grading cutoff, which
/// is sound whenever the weight's grade equals the norm (all norm-graded weights).
pub fn gf_series(
    c: &PartitionConstraints,
    weight: &WeightKind,
    grading: &Grading,
) -> Result<TruncatedSeries, PartitionError> {
    let cutoff = u32::try_from(grading.cutoff().max(0)).unwrap_or(u32::MAX);
    let c = c.clone().max_norm(cutoff);
    Ok(TruncatedSeries::new(
        gf_enumerated(&c, weight)?,
        grading.clone(),
    )?)
}

/// Number of elements of the enumerated set.
pub fn count(c: &PartitionConstraints) -> Result<u64, PartitionError> {
    Ok(enumerate(c)?.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn list(c: &PartitionConstraints) -> Vec<String> {
        enumerate(c).unwrap().map(|p| p.to_string()).collect()
    }

    #[test]
    fn statistics_of_the_running_example() {
        let s = p("(12,10,7,5,2)").stats();
        assert_eq!(s.bg_rank, 0);
        assert_eq!(s.boulet, [11, 10, 8, 7]);
        assert_eq!(s.alt_sum, 6);
        assert_eq!(s.r0 - s.r1, s.bg_rank);
        let s = p("(13,1)").stats();
        assert_eq!(
            (s.i_odd_indexed_odd, s.j_even_indexed_odd, s.norm),
            (1, 1, 14)
        );
        assert_eq!(p("()").stats(), PartitionStats::default());
    }

    #[test]
    fn text_form() {
        assert_eq!(p("(7,5,2)").parts(), &[7, 5, 2]);
        assert_eq!(p("()").to_string(), "()");
        assert_eq!(p("(3,3,1)").to_string(), "(3,3,1)");
        for bad in [
            "(1,2)", "(3, 2)", "(3,0)", "3,2", "(3,,2)", "(a)", "( )", "(-1)",
        ] {
            assert!(bad.parse::<Partition>().is_err(), "{bad}");
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("()").conjugate(), p("()"));
        assert_eq!(p("(3,2)").conjugate(), p("(2,2,1)"));
        let five = p("(5,5)");
        assert_eq!(five.conjugate(), p("(2,2,2,2,2)"));
        assert_eq!(five.stats().odd_parts, five.conjugate().stats().alt_sum);
    }

    #[test]
    fn enumeration_order() {
        let c = PartitionConstraints::new().distinct().max_part(2);
        assert_eq!(list(&c), ["(2,1)", "(2)", "(1)", "()"]);
        let c = PartitionConstraints::new().max_part(1).fixed_norm(0);
        assert_eq!(list(&c), ["()"]);
        let c = PartitionConstraints::new().fixed_norm(4);
        assert_eq!(list(&c), ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn table_counts() {
        let base = PartitionConstraints::new().distinct().fixed_norm(14);
        assert_eq!(
            count(&base.clone().filter(Stat::I, 1).filter(Stat::J, 1)).unwrap(),
            10
        );
        assert_eq!(
            count(&base.filter(Stat::C1Mod4, 1).filter(Stat::C3Mod4, 1)).unwrap(),
            10
        );
        let c = PartitionConstraints::new()
            .max_part(3)
            .fixed_norm(10)
            .filter(Stat::Alt, 2);
        assert_eq!(count(&c).unwrap(), 9);
        let c = PartitionConstraints::new()
            .max_part(5)
            .max_parts(3)
            .fixed_norm(10)
            .filter(Stat::OddParts, 2);
        assert_eq!(count(&c).unwrap(), 4);
    }

    #[test]
    fn infinite_universe_rejected() {
        assert_eq!(
            enumerate(&PartitionConstraints::new().max_part(3)).err(),
            Some(PartitionError::InfiniteUniverse)
        );
        assert!(enumerate(&PartitionConstraints::new().max_part(3).distinct()).is_ok());
        assert!(enumerate(&PartitionConstraints::new().max_part(3).max_parts(2)).is_ok());
    }

    #[test]
    fn partition_numbers_match_euler_recurrence() {
        // p(n) = sum_k (-1)^{k+1} (p(n - k(3k-1)/2) + p(n - k(3k+1)/2))
        let mut euler = vec![1i64];
        for n in 1..=20i64 {
            let mut s = 0;
            for k in 1..=n {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                    if g <= n {
                        s += sign * euler[(n - g) as usize];
                    }
                }
            }
            euler.push(s);
        }
        let mut cumulative = 0;
        for n in 0..=20u32 {
            cumulative += euler[n as usize] as u64;
            assert_eq!(
                count(&PartitionConstraints::new().max_norm(n)).unwrap(),
                cumulative
            );
        }
    }

    #[test]
    fn weighted_generating_functions() {
        let c = PartitionConstraints::new().distinct().max_part(2);
        assert_eq!(
            gf_enumerated(&c, &WeightKind::NormIJ).unwrap(),
            "1 + q*t + q^2 + q^3*z".parse().unwrap()
        );
        let c = PartitionConstraints::new().distinct().max_part(1);
        assert_eq!(
            gf_enumerated(&c, &WeightKind::Boulet).unwrap(),
            "1 + a".parse().unwrap()
        );
        let zq = Monomial::new(1, &[(Var::Z, 1), (Var::Q, 1)]);
        let qz = Monomial::new(1, &[(Var::Z, -1), (Var::Q, 1)]);
        let sub = Substitution::boulet([zq.clone(), zq, qz.clone(), qz]);
        let c = PartitionConstraints::new().max_part(1).max_parts(2);
        assert_eq!(
            gf_enumerated(&c, &WeightKind::BouletSubstituted(Box::new(sub))).unwrap(),
            "1 + q*z + q^2".parse().unwrap()
        );
    }

    #[test]
    fn gollnitz_gap_condition() {
        let c = PartitionConstraints::new().gollnitz_gap().fixed_norm(8);
        assert_eq!(list(&c), ["(8)", "(7,1)", "(6,2)"]);
    }

    #[test]
    fn series_truncates_by_norm() {
        let g = Grading::norm(6);
        let c = PartitionConstraints::new().residues(2, &[0]);
        let s = gf_series(&c, &WeightKind::Norm, &g).unwrap();
        assert_eq!(s.body(), &"1 + q^2 + 2*q^4 + 3*q^6".parse().unwrap());
    }

    fn any_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..12, 0..8).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(p in any_partition()) {
            prop_assert_eq!(p.conjugate().conjugate(), p);
        }

        #[test]
        fn odd_parts_become_alternating_sum(p in any_partition()) {
            prop_assert_eq!(p.stats().odd_parts, p.conjugate().stats().alt_sum);
        }

        #[test]
        fn bg_rank_is_conjugation_invariant(p in any_partition()) {
            prop_assert_eq!(p.stats().bg_rank, p.conjugate().stats().bg_rank);
        }

        #[test]
        fn stat_invariants(p in any_partition()) {
            let s = p.stats();
            prop_assert_eq!(s.r0 - s.r1, s.bg_rank);
            prop_assert_eq!(s.boulet.iter().sum::<i64>(), s.norm);
            prop_assert!(s.alt_sum >= 0);
            prop_assert_eq!((s.alt_sum - s.norm).rem_euclid(2), 0);
        }

        #[test]
        fn text_round_trip(p in any_partition()) {
            prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        }
    }

    #[test]
    fn exhaustive_small_norm_invariants() {
        for p in enumerate(&PartitionConstraints::new().max_norm(25)).unwrap() {
            let s = p.stats();
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(s.odd_parts, p.conjugate().stats().alt_sum);
            assert_eq!(s.bg_rank, p.conjugate().stats().bg_rank);
            assert_eq!(s.r0 - s.r1, s.bg_rank);
            let sub = Substitution::boulet([
                Monomial::q(1),
                Monomial::q(1),
                Monomial::q(1),
                Monomial::q(1),
            ]);
            let w = WeightKind::BouletSubstituted(Box::new(sub))
                .weight(&p)
                .unwrap();
            assert_eq!(w, Monomial::q(s.norm as i32));
        }
    }

    #[test]
    fn filter_matches_post_hoc_selection() {
        let base = PartitionConstraints::new().max_part(6).max_parts(5);
        let all: Vec<Partition> = enumerate(&base).unwrap().collect();
        for k in -3..=3 {
            let filtered: Vec<Partition> = enumerate(&base.clone().filter(Stat::Bg, k))
                .unwrap()
                .collect();
            let manual: Vec<Partition> = all
                .iter()
                .filter(|p| p.stats().bg_rank == k)
                .cloned()
                .collect();
            assert_eq!(filtered, manual);
        }
        assert!(all.iter().all(|p| base.accepts(p)));
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }
}
