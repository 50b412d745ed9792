use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HarnessError, Result};
use crate::closed_forms::FormError;
use crate::qpoly::{QpolyError, Rational};

pub const DEFAULT_SEED: u64 = 0xB6;
pub const DEFAULT_POINTS: u32 = 20;

/// Attempts allowed per requested point before giving up.
const ATTEMPTS_PER_POINT: u32 = 200;

/// Deterministic source of rational sample points `+-n/d` with `n, d` in `2..=50`.
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_value(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(2..=50);
        let d: i64 = self.rng.gen_range(2..=50);
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        Rational::new((sign * n).into(), d.into())
    }

    /// A point of `dims` values, none of them `0` or `+-1`.
    pub fn next_point(&mut self, dims: usize) -> Vec<Rational> {
        loop {
            let p: Vec<Rational> = (0..dims).map(|_| self.next_value()).collect();
            if p.iter().all(|v| !v.is_zero() && !v.abs().is_one()) {
                return p;
            }
        }
    }

    /// Collects `count` points where `admissible` holds and `eval` succeeds,
    /// skipping points at which either side hits a pole.
    pub fn collect<T>(
        &mut self,
        count: u32,
        dims: usize,
        admissible: impl Fn(&[Rational]) -> bool,
        mut eval: impl FnMut(&[Rational]) -> std::result::Result<T, FormError>,
    ) -> Result<Vec<(Vec<Rational>, T)>> {
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count as usize {
            attempts += 1;
            if attempts > ATTEMPTS_PER_POINT * count.max(1) {
                return Err(HarnessError::SamplingExhausted(count));
            }
            let p = self.next_point(dims);
            if !admissible(&p) {
                continue;
            }
            match eval(&p) {
                Ok(v) => out.push((p, v)),
                Err(FormError::Qpoly(
                    QpolyError::DivisionByZero
                    | QpolyError::VanishingDenominator(_)
                    | QpolyError::DegenerateBase,
                )) => continue,
                Err(e) => return Err(e.into()),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a: Vec<Rational> = (0..10)
            .map({
                let mut s = RationalSampler::new(DEFAULT_SEED);
                move |_| s.next_value()
            })
            .collect();
        let mut s = RationalSampler::new(DEFAULT_SEED);
        let b: Vec<Rational> = (0..10).map(|_| s.next_value()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn values_in_range() {
        let mut s = RationalSampler::new(7);
        for _ in 0..500 {
            let p = s.next_point(3);
            for v in p {
                assert!(!v.abs().is_one());
                assert!(v.abs() <= Rational::from_integer(25.into()));
                assert!(v.abs() >= Rational::new(1.into(), 25.into()));
            }
        }
    }

    #[test]
    fn poles_are_skipped() {
        let mut s = RationalSampler::new(3);
        let mut calls = 0;
        let pts = s
            .collect(
                5,
                1,
                |_| true,
                |_| {
                    calls += 1;
                    if calls % 2 == 0 {
                        Err(FormError::Qpoly(QpolyError::DivisionByZero))
                    } else {
                        Ok(())
                    }
                },
            )
            .unwrap();
        assert_eq!(pts.len(), 5);
    }
}
