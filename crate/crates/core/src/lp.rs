//! Exact linear programming: two-phase tableau simplex over rationals with Bland's rule.
//!
//! Problems are stated as `A x = b` with a per-variable sign flag (`true` = `x_j >= 0`,
//! `false` = free). Free variables are split internally.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rat>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    /// Reduced costs, one per column.
    cost: Vec<Rat>,
    value: Rat,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn price(&mut self, c: &[Rat]) {
        let ncols = c.len();
        self.cost = c.to_vec();
        self.value = Rat::zero();
        for (r, &bj) in self.basis.iter().enumerate() {
            let cb = &c[bj];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if !self.rows[r][j].is_zero() {
                    self.cost[j] -= cb * &self.rows[r][j];
                }
            }
            self.value += cb * &self.rhs[r];
        }
    }

    /// Minimize the priced objective over columns `< limit`. Returns false when unbounded.
    fn run(&mut self, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][enter];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / coef;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

fn check_shape(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "{} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    if let Some(row) = a.iter().find(|row| row.len() != nvars) {
        return Err(Error::Shape(format!(
            "row of length {} for {nvars} variables",
            row.len()
        )));
    }
    Ok(())
}

/// Minimize `c x` subject to `A x = b` and the sign pattern.
pub fn minimize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat], nonneg: &[bool]) -> Result<LpOutcome> {
    let n = nonneg.len();
    if c.len() != n {
        return Err(Error::Shape(format!("{} costs for {n} variables", c.len())));
    }
    check_shape(a, b, n)?;

    // Column layout: one column per variable, plus a negative copy for each free one.
    let mut map: Vec<(usize, bool)> = (0..n).map(|j| (j, false)).collect();
    map.extend((0..n).filter(|&j| !nonneg[j]).map(|j| (j, true)));
    let ns = map.len();
    let m = a.len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, arow) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = map
            .iter()
            .map(|&(j, neg)| {
                let v = if neg { -arow[j].clone() } else { arow[j].clone() };
                if flip {
                    -v
                } else {
                    v
                }
            })
            .collect();
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (ns..ns + m).collect(),
        cost: Vec::new(),
        value: Rat::zero(),
    };

    let mut phase1 = vec![Rat::zero(); ns + m];
    for x in &mut phase1[ns..] {
        *x = Rat::one();
    }
    t.price(&phase1);
    t.run(ns + m);
    if t.value.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= ns {
            if let Some(j) = (0..ns).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            } else {
                t.rows.remove(r);
                t.rhs.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    for row in t.rows.iter_mut() {
        row.truncate(ns);
    }

    let cs: Vec<Rat> = map
        .iter()
        .map(|&(j, neg)| if neg { -c[j].clone() } else { c[j].clone() })
        .collect();
    t.price(&cs);
    if !t.run(ns) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut xs = vec![Rat::zero(); ns];
    for (r, &bj) in t.basis.iter().enumerate() {
        xs[bj] = t.rhs[r].clone();
    }
    let mut x = vec![Rat::zero(); n];
    for (k, &(j, neg)) in map.iter().enumerate() {
        if neg {
            x[j] -= &xs[k];
        } else {
            x[j] += &xs[k];
        }
    }
    Ok(LpOutcome::Optimal { x, value: t.value })
}

pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat], nonneg: &[bool]) -> Result<LpOutcome> {
    let neg: Vec<Rat> = c.iter().map(|v| -v.clone()).collect();
    Ok(match minimize(&neg, a, b, nonneg)? {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    })
}

/// Feasibility of `A x = b` under the sign pattern, with a rational witness.
pub fn lp_feasible(a: &[Vec<Rat>], b: &[Rat], nonneg: &[bool]) -> Result<Feasibility> {
    let zero = vec![Rat::zero(); nonneg.len()];
    Ok(match minimize(&zero, a, b, nonneg)? {
        LpOutcome::Optimal { x, .. } => Feasibility::Feasible(x),
        LpOutcome::Infeasible => Feasibility::Infeasible,
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    })
}

/// Whether `p` lies in `conv(points) + cone(rays)`.
pub fn in_conv_plus_cone(p: &[Rat], points: &[Vec<Rat>], rays: &[Vec<Rat>]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let dim = p.len();
    let nvars = points.len() + rays.len();
    let mut a: Vec<Vec<Rat>> = (0..dim)
        .map(|i| points.iter().chain(rays).map(|v| v[i].clone()).collect())
        .collect();
    let mut convexity = vec![Rat::one(); points.len()];
    convexity.resize(nvars, Rat::zero());
    a.push(convexity);
    let mut b = p.to_vec();
    b.push(Rat::one());
    Ok(lp_feasible(&a, &b, &vec![true; nvars])?.is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use proptest::prelude::*;

    fn r(v: i64) -> Rat {
        rat(v, 1)
    }

    #[test]
    fn one_variable_cases() {
        assert_eq!(
            lp_feasible(&[vec![r(1)]], &[r(1)], &[true]).unwrap(),
            Feasibility::Feasible(vec![r(1)])
        );
        assert_eq!(
            lp_feasible(&[vec![r(1)]], &[r(-1)], &[true]).unwrap(),
            Feasibility::Infeasible
        );
        assert!(lp_feasible(&[vec![r(1)]], &[r(-1)], &[false]).unwrap().is_feasible());
    }

    #[test]
    fn point_outside_hull_plus_orthant() {
        let pts = vec![vec![r(0), r(3)], vec![r(3), r(1)]];
        let rays = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        assert!(!in_conv_plus_cone(&[r(1), r(1)], &pts, &rays).unwrap());
        assert!(in_conv_plus_cone(&[r(2), r(3)], &pts, &rays).unwrap());
        // midpoint of the segment
        assert!(in_conv_plus_cone(&[rat(3, 2), r(2)], &pts, &rays).unwrap());
    }

    #[test]
    fn optimum_and_unbounded() {
        // min x + y s.t. x + 2y = 4, x, y >= 0  -> y = 2, value 2
        let out = minimize(&[r(1), r(1)], &[vec![r(1), r(2)]], &[r(4)], &[true, true]).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![r(0), r(2)],
                value: r(2)
            }
        );
        let out = minimize(&[r(-1), r(0)], &[vec![r(1), r(-1)]], &[r(0)], &[true, true]).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
        let out = maximize(&[r(1), r(0)], &[vec![r(2), r(1)]], &[r(7)], &[true, true]).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![rat(7, 2), r(0)],
                value: rat(7, 2)
            }
        );
    }

    #[test]
    fn redundant_rows_and_shape() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(lp_feasible(&a, &[r(1), r(2)], &[true, true]).unwrap().is_feasible());
        assert!(!lp_feasible(&a, &[r(1), r(3)], &[true, true]).unwrap().is_feasible());
        assert!(matches!(lp_feasible(&a, &[r(1)], &[true, true]), Err(Error::Shape(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // A feasible witness satisfies the system; planted solutions are always found.
        #[test]
        fn planted_feasible(entries in proptest::collection::vec(-5i64..=5, 8), sol in proptest::collection::vec(0i64..=4, 4)) {
            let a: Vec<Vec<Rat>> = entries.chunks(4).map(|c| c.iter().map(|&v| r(v)).collect()).collect();
            let x: Vec<Rat> = sol.iter().map(|&v| r(v)).collect();
            let b: Vec<Rat> = a.iter().map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
            match lp_feasible(&a, &b, &[true; 4]).unwrap() {
                Feasibility::Feasible(w) => {
                    prop_assert!(w.iter().all(|v| !v.is_negative()));
                    for (row, bi) in a.iter().zip(&b) {
                        let lhs: Rat = row.iter().zip(&w).map(|(p, q)| p * q).sum();
                        prop_assert_eq!(&lhs, bi);
                    }
                }
                Feasibility::Infeasible => prop_assert!(false, "planted solution missed"),
            }
        }
    }
}
