//! Searching a linear solution space for a point satisfying a non-linear
//! acceptance test (typically invertibility of some blocks).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::Field;
use crate::subspace::SubspaceBasis;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub seed: u64,
    /// Random draws over `Q`, or over `F_p` when enumeration is too large.
    pub trials: usize,
    /// Largest number of points enumerated exhaustively over `F_p`.
    pub enum_budget: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            seed: 0,
            trials: 200,
            enum_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Every point was tried.
    Absent,
    /// The budget ran out first.
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Seed for the independent sub-search labelled `index`.
pub fn derive_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `accept` on points of `space` until it returns `Some`.
///
/// Over `F_p` the whole space is enumerated when it has at most
/// `enum_budget` points; otherwise, and over `Q`, `trials` random points are
/// drawn (over `Q` from a box that grows with the trial number, after first
/// trying the all-ones combination).
pub fn search_space<T>(
    space: &SubspaceBasis,
    budget: &SearchBudget,
    seed: u64,
    mut accept: impl FnMut(&Vector) -> Option<T>,
) -> SearchOutcome<T> {
    let f = space.field();
    let k = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempt = |c: &[i64], accept: &mut dyn FnMut(&Vector) -> Option<T>| {
        let coeffs: Vector = c.iter().map(|&x| f.from_i64(x)).collect();
        accept(&space.combine(&coeffs))
    };
    match f {
        Field::Prime(p) => {
            let points = (p as u128).checked_pow(k as u32);
            if points.is_some_and(|n| n <= budget.enum_budget as u128) {
                let mut c = vec![0i64; k];
                loop {
                    if let Some(t) = attempt(&c, &mut accept) {
                        return SearchOutcome::Found(t);
                    }
                    let mut i = 0;
                    while i < k {
                        c[i] += 1;
                        if (c[i] as u64) < p {
                            break;
                        }
                        c[i] = 0;
                        i += 1;
                    }
                    if i == k {
                        return SearchOutcome::Absent;
                    }
                }
            }
            for _ in 0..budget.trials {
                let c: Vec<i64> = (0..k).map(|_| rng.gen_range(0..p) as i64).collect();
                if let Some(t) = attempt(&c, &mut accept) {
                    return SearchOutcome::Found(t);
                }
            }
            SearchOutcome::Exhausted
        }
        Field::Rational => {
            if let Some(t) = attempt(&vec![1; k], &mut accept) {
                return SearchOutcome::Found(t);
            }
            if k == 0 {
                return SearchOutcome::Absent;
            }
            for trial in 0..budget.trials {
                let bound = 1 + (trial / 10) as i64;
                let c: Vec<i64> = (0..k).map(|_| rng.gen_range(-bound..=bound)).collect();
                if let Some(t) = attempt(&c, &mut accept) {
                    return SearchOutcome::Found(t);
                }
            }
            SearchOutcome::Exhausted
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    #[test]
    fn enumeration_is_exhaustive() {
        let f5 = Field::prime(5).unwrap();
        let space = SubspaceBasis::full(f5, 2);
        let mut seen = 0;
        let out: SearchOutcome<()> = search_space(&space, &SearchBudget::default(), 0, |_| {
            seen += 1;
            None
        });
        assert_eq!(out, SearchOutcome::Absent);
        assert_eq!(seen, 25);
    }

    #[test]
    fn finds_invertible_point() {
        // span of [[1,0],[0,0]] and [[0,0],[0,1]] flattened
        for f in [Field::Rational, Field::prime(3).unwrap()] {
            let vs = vec![
                vec![f.one(), f.zero(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.zero(), f.one()],
            ];
            let space = SubspaceBasis::span(f, 4, &vs);
            let out = search_space(&space, &SearchBudget::default(), 7, |x| {
                let m = Matrix::from_rows(f, 2, vec![x[..2].to_vec(), x[2..].to_vec()]);
                m.is_invertible().then_some(m)
            });
            assert!(out.found().is_some());
        }
    }

    #[test]
    fn rational_budget_is_reported() {
        let q = Field::Rational;
        let space = SubspaceBasis::full(q, 1);
        let out: SearchOutcome<()> = search_space(&space, &SearchBudget::default(), 0, |_| None);
        assert_eq!(out, SearchOutcome::Exhausted);
    }
}
