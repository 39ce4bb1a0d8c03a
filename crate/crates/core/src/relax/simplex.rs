//! Exact simplex over `{ M x = c, 0 ≤ x ≤ 1 }`.
//!
//! Phase 1 uses one artificial variable per row. Artificial columns are
//! never stored: once an artificial leaves the basis it cannot return. The
//! entering column has the largest reduced cost; after a run of degenerate
//! pivots the choice falls back to Bland's rule until the objective moves
//! again, so the method terminates.

use super::numeric::Rational;
use super::program::{Bounds, LinearSystem};
use crate::error::{Error, Result};

struct Tableau {
    /// Original columns, then one slack per explicit upper bound. Basis
    /// indices `>= structural` are artificials.
    structural: usize,
    /// Original columns of the system.
    original: usize,
    rows: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    /// Sets up phase 1. Upper bounds implied by a row `Σ_{j∈S} x_j = 1` are
    /// not added explicitly.
    fn new(sys: &LinearSystem) -> Result<Self> {
        if sys.bounds() != Bounds::UnitInterval {
            return Err(Error::WrongBounds("the linear relaxation needs variables in [0, 1]"));
        }
        let n = sys.columns();
        let mut implied = vec![false; n];
        for (row, c) in sys.rows().iter().zip(sys.rhs()) {
            let unit = *c == Rational::one() && row.iter().all(|a| a.is_zero() || *a == Rational::one());
            if unit {
                for (j, a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        implied[j] = true;
                    }
                }
            }
        }
        let explicit: Vec<usize> = (0..n).filter(|&j| !implied[j]).collect();
        let structural = n + explicit.len();
        let m = sys.rows().len() + explicit.len();
        let mut rows = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for (row, c) in sys.rows().iter().zip(sys.rhs()) {
            let mut r = vec![Rational::zero(); structural];
            r[..n].clone_from_slice(row);
            rows.push(r);
            b.push(c.clone());
        }
        for (k, &j) in explicit.iter().enumerate() {
            let mut r = vec![Rational::zero(); structural];
            r[j] = Rational::one();
            r[n + k] = Rational::one();
            rows.push(r);
            b.push(Rational::one());
        }
        for (r, bi) in rows.iter_mut().zip(b.iter_mut()) {
            if bi.is_negative() {
                for a in r.iter_mut() {
                    if !a.is_zero() {
                        *a = -&*a;
                    }
                }
                *bi = -&*bi;
            }
        }
        Ok(Tableau {
            structural,
            original: n,
            rows,
            b,
            basis: (structural..structural + m).collect(),
        })
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        if inv != Rational::one() {
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a = &*a * &inv;
                }
            }
            self.b[r] = &self.b[r] * &inv;
        }
        let nz: Vec<usize> = (0..self.structural).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_b = self.b[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] = &row[j] - &d;
            }
            if !pivot_b.is_zero() {
                self.b[i] = &self.b[i] - &(&f * &pivot_b);
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] = &obj[j] - &(&f * &pivot_row[j]);
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Reduced costs over the structural columns, for structural costs
    /// `cost` and cost `artificial` on every artificial.
    fn reduced_costs(&self, cost: &[Rational], artificial: &Rational) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = if bv < self.structural { &cost[bv] } else { artificial };
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *dj = &*dj - &(cb * a);
                }
            }
        }
        d
    }

    /// Maximises from the current basis; only structural columns enter.
    fn optimise(&mut self, cost: &[Rational], artificial: &Rational) -> Result<()> {
        let mut d = self.reduced_costs(cost, artificial);
        // Degenerate pivots tolerated before switching to Bland's rule.
        let patience = self.rows.len() + self.structural;
        let mut streak = 0;
        loop {
            let bland = streak >= patience;
            let entering = if !bland {
                let mut best: Option<usize> = None;
                for j in 0..self.structural {
                    if d[j].is_positive() && best.is_none_or(|k| d[j] > d[k]) {
                        best = Some(j);
                    }
                }
                best
            } else {
                (0..self.structural).find(|&j| d[j].is_positive())
            };
            let Some(c) = entering else {
                return Ok(());
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / a;
                let better = match &best {
                    None => true,
                    Some((r, _, bv)) => {
                        ratio < *r
                            || (ratio == *r
                                && if bland {
                                    self.basis[i] < *bv
                                } else {
                                    (self.basis[i] >= self.structural, std::cmp::Reverse(self.basis[i]))
                                        > (*bv >= self.structural, std::cmp::Reverse(*bv))
                                })
                    }
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            // The region is bounded, so some row always limits the step.
            let (ratio, r, _) = best.ok_or(Error::WrongBounds("unbounded direction in a bounded program"))?;
            streak = if ratio.is_zero() { streak + 1 } else { 0 };
            self.pivot(r, c, &mut d);
        }
    }

    /// Phase 1. Leaves a feasible basis of structural columns, with
    /// redundant rows removed, or returns false.
    fn phase_one(&mut self) -> Result<bool> {
        // Artificials sitting at zero leave for free: pivoting on a row with
        // b_i = 0 leaves every b unchanged, whatever the pivot's sign.
        for i in 0..self.rows.len() {
            if self.b[i].is_zero() && self.basis[i] >= self.structural {
                if let Some(c) = (0..self.structural).find(|&j| !self.rows[i][j].is_zero()) {
                    let mut dummy = vec![Rational::zero(); self.structural];
                    self.pivot(i, c, &mut dummy);
                }
            }
        }
        let cost = vec![Rational::zero(); self.structural];
        self.optimise(&cost, &-Rational::one())?;
        if self
            .basis
            .iter()
            .zip(&self.b)
            .any(|(&bv, bi)| bv >= self.structural && !bi.is_zero())
        {
            return Ok(false);
        }
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.structural {
                match (0..self.structural).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(c) => {
                        let mut dummy = vec![Rational::zero(); self.structural];
                        self.pivot(i, c, &mut dummy);
                    }
                    None => {
                        self.rows.remove(i);
                        self.b.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        Ok(true)
    }

    /// Maximises `objective` (over the original columns) from the current
    /// feasible basis.
    fn maximise(&mut self, objective: &[Rational]) -> Result<Rational> {
        let mut cost = vec![Rational::zero(); self.structural];
        cost[..self.original].clone_from_slice(objective);
        self.optimise(&cost, &Rational::zero())?;
        let x = self.point();
        let mut v = Rational::zero();
        for (c, xi) in objective.iter().zip(&x) {
            if !c.is_zero() && !xi.is_zero() {
                v = v + c * xi;
            }
        }
        Ok(v)
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.original];
        for (&bv, bi) in self.basis.iter().zip(&self.b) {
            if bv < self.original {
                x[bv] = bi.clone();
            }
        }
        x
    }
}

/// A feasible point of the relaxation, or `None`.
pub fn lp_feasible(sys: &LinearSystem) -> Result<Option<Vec<Rational>>> {
    let mut t = Tableau::new(sys)?;
    Ok(t.phase_one()?.then(|| t.point()))
}

/// The maximum of `objective · x` over the region with a maximising point,
/// or `None` if the region is empty.
pub fn maximize(sys: &LinearSystem, objective: &[Rational]) -> Result<Option<(Rational, Vec<Rational>)>> {
    assert_eq!(objective.len(), sys.columns());
    let mut t = Tableau::new(sys)?;
    if !t.phase_one()? {
        return Ok(None);
    }
    let v = t.maximise(objective)?;
    Ok(Some((v, t.point())))
}

/// `max x_j` over the region.
pub fn max_column(sys: &LinearSystem, j: usize) -> Result<Rational> {
    let mut obj = vec![Rational::zero(); sys.columns()];
    obj[j] = Rational::one();
    maximize(sys, &obj)?.map(|(v, _)| v).ok_or(Error::Infeasible)
}

/// The columns that are positive in some feasible point, with a point
/// positive on exactly those columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub columns: Vec<usize>,
    pub point: Vec<Rational>,
}

/// Repeatedly maximises the sum of the columns not yet seen positive; stops
/// once that maximum is zero. The returned point averages the optima found.
pub fn variable_support(sys: &LinearSystem) -> Result<Support> {
    let n = sys.columns();
    let mut t = Tableau::new(sys)?;
    if !t.phase_one()? {
        return Err(Error::Infeasible);
    }
    let mut seen = vec![false; n];
    let mut points = vec![t.point()];
    let mark = |x: &[Rational], seen: &mut [bool]| {
        for (s, v) in seen.iter_mut().zip(x) {
            if v.is_positive() {
                *s = true;
            }
        }
    };
    mark(&points[0], &mut seen);
    loop {
        let obj: Vec<Rational> = seen
            .iter()
            .map(|&s| if s { Rational::zero() } else { Rational::one() })
            .collect();
        if obj.iter().all(Rational::is_zero) {
            break;
        }
        let v = t.maximise(&obj)?;
        if v.is_zero() {
            break;
        }
        let x = t.point();
        mark(&x, &mut seen);
        points.push(x);
    }
    let k = Rational::from(points.len() as i64).recip();
    let mut point = vec![Rational::zero(); n];
    for x in &points {
        for (p, v) in point.iter_mut().zip(x) {
            if !v.is_zero() {
                *p = &*p + v;
            }
        }
    }
    for p in point.iter_mut() {
        if !p.is_zero() {
            *p = &*p * &k;
        }
    }
    Ok(Support {
        columns: (0..n).filter(|&j| seen[j]).collect(),
        point,
    })
}
