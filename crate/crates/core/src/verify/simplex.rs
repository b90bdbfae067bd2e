//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `max cᵀx  s.t.  A x ≤ b,  x ≥ 0` for the tiny LPs produced by the
//! shattering checker. Bland's rule guarantees termination; exactness makes
//! the sign of the optimum trustworthy.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows × (cols + 1)`; last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// `z + Σ obj_j x_j = obj_rhs`.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland pivoting over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| self.obj[j].is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// `max cᵀx` subject to `A x ≤ b`, `x ≥ 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "one bound per constraint");
    assert!(a.iter().all(|row| row.len() == n), "constraint width");

    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let art_base = n + m;
    let cols = n + m + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); cols + 1];
        let flip = b[i].is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
        }
        row[n + i] = sign.clone();
        row[cols] = &b[i] * &sign;
        if flip {
            let k = negative.iter().position(|&x| x == i).unwrap();
            row[art_base + k] = Rational::one();
            basis.push(art_base + k);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        obj: vec![Rational::zero(); cols + 1],
        basis,
        cols,
    };

    if !negative.is_empty() {
        // phase 1: max −Σ artificials
        for k in 0..negative.len() {
            t.obj[art_base + k] = Rational::one();
        }
        for (i, &bv) in t.basis.clone().iter().enumerate() {
            if bv >= art_base {
                let row = t.rows[i].clone();
                for (x, y) in t.obj.iter_mut().zip(&row) {
                    *x = &*x - y;
                }
            }
        }
        t.optimize(cols);
        if t.obj[cols].is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis
        for i in 0..m {
            if t.basis[i] >= art_base {
                if let Some(j) = (0..art_base).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
    }

    t.obj = vec![Rational::zero(); cols + 1];
    for j in 0..n {
        t.obj[j] = -c[j].clone();
    }
    for i in 0..m {
        let bv = t.basis[i];
        if !t.obj[bv].is_zero() {
            let f = t.obj[bv].clone();
            let row = t.rows[i].clone();
            for (x, y) in t.obj.iter_mut().zip(&row) {
                *x = &*x - &f * y;
            }
        }
    }
    if !t.optimize(art_base) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        value: t.obj[cols].clone(),
        x,
    }
}
