//! Row-pair extraction `rho` and odd-height column-pair extraction `rho*`.

use serde::Serialize;
use thiserror::Error;

use crate::partition::Partition;
use crate::qpoly::{Exponents, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BijectionKind {
    /// Pairs of equal rows.
    #[serde(rename = "rho")]
    Rho,
    /// Pairs of equal odd-height columns.
    #[serde(rename = "rho_star")]
    RhoStar,
}

/// Output of a bijection: a reduced core plus the extracted remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionImage {
    pub reduced: Partition,
    pub extracted: Partition,
    pub kind: BijectionKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("reduced part {0} is not in the image of rho: parts must be distinct")]
    ReducedNotDistinct(String),
    #[error("extracted part {0} of rho must occur an even number of times")]
    OddMultiplicityRow(String),
    #[error("extracted part {0} of rho* must have odd-height columns, each height an even number of times")]
    BadColumns(String),
    #[error("reduced part {0} of rho* violates the odd-to-even part difference condition")]
    ReducedNotInImage(String),
}

/// Which pair to remove first when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractionOrder {
    LargestFirst,
    SmallestFirst,
}

/// Repeatedly removes one pair of equal values from `values` (sorted
/// decreasing) until none repeats among those accepted by `eligible`.
/// Returns the remaining values and the removed ones.
fn extract_pairs(
    values: &[u32],
    eligible: impl Fn(u32) -> bool,
    order: ExtractionOrder,
) -> (Vec<u32>, Vec<u32>) {
    let mut rest = values.to_vec();
    let mut removed = Vec::new();
    loop {
        let positions: Vec<usize> = (0..rest.len().saturating_sub(1))
            .filter(|&k| rest[k] == rest[k + 1] && eligible(rest[k]))
            .collect();
        let pick = match order {
            ExtractionOrder::LargestFirst => positions.first(),
            ExtractionOrder::SmallestFirst => positions.last(),
        };
        let Some(&k) = pick else { break };
        removed.push(rest[k]);
        removed.push(rest[k + 1]);
        rest.drain(k..k + 2);
    }
    removed.sort_unstable_by(|a, b| b.cmp(a));
    (rest, removed)
}

/// Removes pairs of equal parts until the parts are distinct.
pub fn rho(p: &Partition) -> BijectionImage {
    rho_with_order(p, ExtractionOrder::LargestFirst)
}

pub fn rho_with_order(p: &Partition, order: ExtractionOrder) -> BijectionImage {
    let (rest, removed) = extract_pairs(p.parts(), |_| true, order);
    BijectionImage {
        reduced: Partition::from_unsorted(rest),
        extracted: Partition::from_unsorted(removed),
        kind: BijectionKind::Rho,
    }
}

/// Removes pairs of equal odd-height columns until no odd height repeats.
/// The extracted columns are stored as the partition they form.
pub fn rho_star(p: &Partition) -> BijectionImage {
    rho_star_with_order(p, ExtractionOrder::LargestFirst)
}

pub fn rho_star_with_order(p: &Partition, order: ExtractionOrder) -> BijectionImage {
    let columns = p.conjugate();
    let (rest, removed) = extract_pairs(columns.parts(), |h| h % 2 == 1, order);
    BijectionImage {
        reduced: Partition::from_unsorted(rest).conjugate(),
        extracted: Partition::from_unsorted(removed).conjugate(),
        kind: BijectionKind::RhoStar,
    }
}

fn multiplicities(parts: &[u32]) -> impl Iterator<Item = (u32, usize)> + '_ {
    parts.chunk_by(|a, b| a == b).map(|run| (run[0], run.len()))
}

/// Reduced outputs of `rho*`: `l_(2k-1) - l_(2k) <= 1` for every `k`, with
/// missing parts read as zero.
pub fn in_rho_star_core(p: &Partition) -> bool {
    let parts = p.parts();
    parts
        .iter()
        .step_by(2)
        .enumerate()
        .all(|(k, &odd)| odd - parts.get(2 * k + 1).copied().unwrap_or(0) <= 1)
}

impl BijectionImage {
    /// Checks the structural invariants of the image for its kind.
    pub fn validate(&self) -> Result<(), BijectionError> {
        match self.kind {
            BijectionKind::Rho => {
                if !self.reduced.is_distinct() {
                    return Err(BijectionError::ReducedNotDistinct(self.reduced.to_string()));
                }
                if multiplicities(self.extracted.parts()).any(|(_, m)| m % 2 == 1) {
                    return Err(BijectionError::OddMultiplicityRow(
                        self.extracted.to_string(),
                    ));
                }
            }
            BijectionKind::RhoStar => {
                let cols = self.extracted.conjugate();
                if multiplicities(cols.parts()).any(|(h, m)| h % 2 == 0 || m % 2 == 1) {
                    return Err(BijectionError::BadColumns(self.extracted.to_string()));
                }
                if !in_rho_star_core(&self.reduced) {
                    return Err(BijectionError::ReducedNotInImage(self.reduced.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Weight carried by the extracted pairs:
    /// rows of length `l` give `ac Q^((l-1)/2)` (odd `l`) or `Q^(l/2)` (even `l`);
    /// columns of height `2h+1` give `ab Q^h`.
    pub fn extracted_weight(&self) -> Exponents {
        let big_q = Exponents::from_pairs(&[(Var::A, 1), (Var::B, 1), (Var::C, 1), (Var::D, 1)]);
        let mut w = Exponents::default();
        let items = match self.kind {
            BijectionKind::Rho => self.extracted.parts().to_vec(),
            BijectionKind::RhoStar => self.extracted.conjugate().into_parts(),
        };
        for pair in items.chunks(2) {
            let l = pair[0] as i32;
            let factor = match (self.kind, l % 2) {
                (BijectionKind::Rho, 1) => {
                    Exponents::from_pairs(&[(Var::A, 1), (Var::C, 1)]).mul(&big_q.pow((l - 1) / 2))
                }
                (BijectionKind::Rho, _) => big_q.pow(l / 2),
                (BijectionKind::RhoStar, _) => {
                    Exponents::from_pairs(&[(Var::A, 1), (Var::B, 1)]).mul(&big_q.pow((l - 1) / 2))
                }
            };
            w = w.mul(&factor);
        }
        w
    }
}

/// Merges the reduced and extracted parts back into the original partition.
pub fn invert(img: &BijectionImage) -> Result<Partition, BijectionError> {
    img.validate()?;
    let merge = |a: &Partition, b: &Partition| {
        let mut v = a.parts().to_vec();
        v.extend_from_slice(b.parts());
        Partition::from_unsorted(v)
    };
    Ok(match img.kind {
        BijectionKind::Rho => merge(&img.reduced, &img.extracted),
        BijectionKind::RhoStar => {
            merge(&img.reduced.conjugate(), &img.extracted.conjugate()).conjugate()
        }
    })
}

/// Outcome of the bijection property checks over one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyViolation {
    RoundTrip,
    Invariant(BijectionError),
    Norm,
    BgRank,
    LargestPart,
    Weight,
    OrderDependence,
}

/// Checks every property of `kind` on `p`.
pub fn check_properties(p: &Partition, kind: BijectionKind) -> Result<(), PropertyViolation> {
    let (img, alt) = match kind {
        BijectionKind::Rho => (rho(p), rho_with_order(p, ExtractionOrder::SmallestFirst)),
        BijectionKind::RhoStar => (
            rho_star(p),
            rho_star_with_order(p, ExtractionOrder::SmallestFirst),
        ),
    };
    img.validate().map_err(PropertyViolation::Invariant)?;
    if img != alt {
        return Err(PropertyViolation::OrderDependence);
    }
    if invert(&img).map_err(PropertyViolation::Invariant)? != *p {
        return Err(PropertyViolation::RoundTrip);
    }
    if img.reduced.norm() + img.extracted.norm() != p.norm() {
        return Err(PropertyViolation::Norm);
    }
    if kind == BijectionKind::Rho {
        if img.reduced.stats().bg_rank != p.stats().bg_rank {
            return Err(PropertyViolation::BgRank);
        }
        if img.reduced.largest() > p.largest() || img.extracted.largest() > p.largest() {
            return Err(PropertyViolation::LargestPart);
        }
    }
    if p.boulet_weight() != img.reduced.boulet_weight().mul(&img.extracted_weight()) {
        return Err(PropertyViolation::Weight);
    }
    Ok(())
}
