//! Shattering of point sets in the probability simplex by threshold concepts
//! `C_b = {x : xᵀb > μ}`, `b ∈ [0,1]^m`.
//!
//! A subset `Z` is cut out iff the LP
//! `max δ  s.t.  δ_kᵀb ≥ μ + δ (k ∈ Z),  δ_kᵀb ≤ μ (k ∉ Z),  0 ≤ b ≤ 1,  0 ≤ δ ≤ 1`
//! has a strictly positive optimum.

use num_traits::{One, Signed, Zero};

use super::simplex::{maximize, LpOutcome};
use crate::error::{Error, Result};
use crate::scalar::Rational;

pub const MAX_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetVerdict {
    /// Bit `k` set iff point `k` is in the subset.
    pub mask: u32,
    pub feasible: bool,
    /// Threshold vector realising the subset, when feasible.
    pub witness: Option<Vec<Rational>>,
    /// Optimal strictness slack (zero for infeasible subsets).
    pub slack: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShatterInstance {
    pub points: Vec<Vec<Rational>>,
    pub mu: Rational,
    pub results: Vec<SubsetVerdict>,
}

impl ShatterInstance {
    pub fn shattered(&self) -> bool {
        self.results.iter().all(|r| r.feasible)
    }

    pub fn feasible_count(&self) -> usize {
        self.results.iter().filter(|r| r.feasible).count()
    }

    pub fn first_infeasible(&self) -> Option<Vec<usize>> {
        self.results
            .iter()
            .find(|r| !r.feasible)
            .map(|r| members(r.mask, self.points.len()))
    }
}

pub fn members(mask: u32, count: usize) -> Vec<usize> {
    (0..count).filter(|k| mask >> k & 1 == 1).collect()
}

fn check_points(points: &[Vec<Rational>]) -> Result<usize> {
    if points.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(points.len(), MAX_POINTS));
    }
    let m = points.first().map_or(0, Vec::len);
    for (k, p) in points.iter().enumerate() {
        if p.len() != m {
            return Err(Error::Dimension(format!("point {k} has {} coordinates, expected {m}", p.len())));
        }
        let sum = p.iter().fold(Rational::zero(), |a, b| a + b);
        if p.iter().any(Signed::is_negative) || !sum.is_one() {
            return Err(Error::Invalid(format!("point {k} is not a probability vector")));
        }
    }
    Ok(m)
}

fn subset_lp(points: &[Vec<Rational>], mu: &Rational, mask: u32) -> SubsetVerdict {
    let m = points[0].len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let mut row: Vec<Rational> = Vec::with_capacity(m + 1);
        if mask >> k & 1 == 1 {
            // −pᵀb + δ ≤ −μ
            row.extend(p.iter().map(|x| -x.clone()));
            row.push(Rational::one());
            b.push(-mu.clone());
        } else {
            row.extend(p.iter().cloned());
            row.push(Rational::zero());
            b.push(mu.clone());
        }
        a.push(row);
    }
    for i in 0..=m {
        let mut row = vec![Rational::zero(); m + 1];
        row[i] = Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = Rational::one();
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.truncate(m);
            SubsetVerdict {
                mask,
                feasible: true,
                witness: Some(x),
                slack: value,
            }
        }
        _ => SubsetVerdict {
            mask,
            feasible: false,
            witness: None,
            slack: Rational::zero(),
        },
    }
}

/// Decides every subset of `points` by exact LP feasibility.
pub fn halfspace_shatter(points: &[Vec<Rational>], mu: &Rational) -> Result<ShatterInstance> {
    check_points(points)?;
    let results = if points.is_empty() {
        vec![SubsetVerdict {
            mask: 0,
            feasible: true,
            witness: None,
            slack: Rational::zero(),
        }]
    } else {
        (0..1u32 << points.len()).map(|mask| subset_lp(points, mu, mask)).collect()
    };
    Ok(ShatterInstance {
        points: points.to_vec(),
        mu: mu.clone(),
        results,
    })
}

/// Cutpoint-zero variant: `xᵀb > 0` depends only on `supp(b)`, so the
/// `2^m` support sets are enumerated directly.
pub fn support_shatter(points: &[Vec<Rational>]) -> Result<ShatterInstance> {
    let m = check_points(points)?;
    if m > MAX_POINTS {
        return Err(Error::TooManyPoints(m, MAX_POINTS));
    }
    let p = points.len();
    let mut realised: Vec<Option<u32>> = vec![None; 1 << p];
    for support in 0..1u32 << m {
        let mask = points
            .iter()
            .enumerate()
            .filter(|(_, x)| x.iter().enumerate().any(|(i, v)| support >> i & 1 == 1 && v.is_positive()))
            .fold(0u32, |acc, (k, _)| acc | 1 << k);
        realised[mask as usize].get_or_insert(support);
    }
    let results = realised
        .into_iter()
        .enumerate()
        .map(|(mask, support)| SubsetVerdict {
            mask: mask as u32,
            feasible: support.is_some(),
            witness: support.map(|s| {
                (0..m)
                    .map(|i| if s >> i & 1 == 1 { Rational::one() } else { Rational::zero() })
                    .collect()
            }),
            slack: Rational::zero(),
        })
        .collect();
    Ok(ShatterInstance {
        points: points.to_vec(),
        mu: Rational::zero(),
        results,
    })
}
