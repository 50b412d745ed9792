//! Exact arithmetic on sparse multivariate Laurent polynomials with big-integer
//! coefficients, norm-graded truncated series, the standard q-special
//! functions, and a terminating basic hypergeometric evaluator over rationals.
//!
//! Every polynomial lives over the fixed alphabet `q, t, z, a, b, c, d, x, y`.
//! `Q = abcd` is never a variable of its own; use [`Monomial::big_q`].

mod hypergeometric;
mod laurent;
mod monomial;
mod series;
mod special;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use hypergeometric::{phi_terminating, rational_pochhammer, Rational};
pub use laurent::{Assignment, LaurentPoly, Substitution};
pub use monomial::{Exponents, Monomial};
pub use series::{Grading, TruncatedSeries};
pub use special::{
    gaussian_binomial, pochhammer, pochhammer_inv, pochhammer_series, q_ratio, q_trinomial,
    rogers_szego,
};

/// Number of ring variables.
pub const NVARS: usize = 9;

/// A ring variable. The declaration order is the lexicographic order used by
/// the graded-lex term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    T,
    Z,
    A,
    B,
    C,
    D,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Q,
        Var::T,
        Var::Z,
        Var::A,
        Var::B,
        Var::C,
        Var::D,
        Var::X,
        Var::Y,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::Z => "z",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::D => "d",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = QpolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| QpolyError::Parse(format!("unknown variable `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpolyError {
    #[error("series gradings differ")]
    GradingMismatch,
    #[error("monomial `{0}` has negative grade; truncation would not be a ring map")]
    NegativeGrade(String),
    #[error("substitution lowers the grade of `{0}`")]
    GradeLoweringSubstitution(Var),
    #[error("factor 1 - ({0}) is not invertible as a truncated series")]
    NonUnitFactor(String),
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor `{0}` is not univariate")]
    UnsupportedDivisor(String),
    #[error("coefficient {0} has no integer inverse")]
    NonInvertibleCoefficient(String),
    #[error("variable {0} is zero but appears with a negative exponent")]
    ZeroToNegativePower(Var),
    #[error("no value assigned to variable {0}")]
    UnassignedVariable(Var),
    #[error("series does not terminate: no upper parameter equals base^-K")]
    NonTerminating,
    #[error("denominator factor vanishes at term {0}")]
    VanishingDenominator(usize),
    #[error("base must not be 0, 1 or -1")]
    DegenerateBase,
    #[error("parse error: {0}")]
    Parse(String),
}
