//! Sparse exact Gauss–Jordan elimination over Q.
//!
//! Rows are inserted one at a time and reduced against the stored pivots, so the
//! stored rows always form a row-echelon basis of the row space.  The pivot
//! columns of such a basis do not depend on the insertion order; solutions set
//! every non-pivot ("free") column to zero.  Callers therefore control the
//! tie-break between solutions purely through the column order: earlier columns
//! are preferred.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Q;

pub type SparseRow = BTreeMap<usize, Q>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("inconsistent linear system (row reduced to 0 = nonzero)")]
pub struct Inconsistent;

/// Incremental echelon form with `nrhs` simultaneous right-hand sides.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    nrhs: usize,
    rows: BTreeMap<usize, (SparseRow, Vec<Q>)>,
}

impl Echelon {
    pub fn new(ncols: usize, nrhs: usize) -> Self {
        Self { ncols, nrhs, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Insert a row.  Returns Ok(true) if it raised the rank, Ok(false) if it
    /// was a consistent combination of earlier rows.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: Vec<Q>) -> Result<bool, Inconsistent> {
        assert_eq!(rhs.len(), self.nrhs);
        row.retain(|c, x| {
            assert!(*c < self.ncols, "column {c} out of range");
            !x.is_zero()
        });
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let (prow, prhs) = &self.rows[&c];
            for (pc, pv) in prow {
                let e = row.entry(*pc).or_insert_with(Q::zero);
                *e -= &x * pv;
                if e.is_zero() {
                    row.remove(pc);
                }
            }
            for (r, p) in rhs.iter_mut().zip(prhs) {
                *r -= &x * p;
            }
            cursor = c + 1;
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            return if rhs.iter().all(|r| r.is_zero()) { Ok(false) } else { Err(Inconsistent) };
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for x in row.values_mut() {
                *x *= &inv;
            }
            for r in rhs.iter_mut() {
                *r *= &inv;
            }
        }
        self.rows.insert(pivot, (row, rhs));
        Ok(true)
    }

    /// Back substitution with free columns set to zero; one vector per rhs.
    pub fn solution(&self) -> Vec<SparseRow> {
        let mut out = vec![SparseRow::new(); self.nrhs];
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            for (k, sol) in out.iter_mut().enumerate() {
                let mut x = rhs[k].clone();
                for (c, a) in row.range(p + 1..) {
                    if let Some(y) = sol.get(c) {
                        x -= a * y;
                    }
                }
                if !x.is_zero() {
                    sol.insert(p, x);
                }
            }
        }
        out
    }

    /// Basis of the right nullspace: one vector per free column f (x_f = 1, the
    /// other free columns 0).
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect();
        free.into_iter()
            .map(|f| {
                let mut sol = SparseRow::new();
                sol.insert(f, Q::one());
                for (&p, (row, _)) in self.rows.iter().rev() {
                    if p > f {
                        continue;
                    }
                    let mut x = Q::zero();
                    for (c, a) in row.range(p + 1..) {
                        if let Some(y) = sol.get(c) {
                            x -= a * y;
                        }
                    }
                    if !x.is_zero() {
                        sol.insert(p, x);
                    }
                }
                sol
            })
            .collect()
    }
}

/// Solve A x = b (single right-hand side); free variables are zero.
pub fn solve<I>(ncols: usize, rows: I) -> Result<SparseRow, Inconsistent>
where
    I: IntoIterator<Item = (SparseRow, Q)>,
{
    let mut e = Echelon::new(ncols, 1);
    for (row, b) in rows {
        e.push(row, vec![b])?;
    }
    Ok(e.solution().pop().unwrap())
}

/// Rank of a set of sparse rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(ncols: usize, rows: I) -> usize {
    let mut e = Echelon::new(ncols, 0);
    for row in rows {
        e.push(row, vec![]).expect("homogeneous system");
    }
    e.rank()
}
