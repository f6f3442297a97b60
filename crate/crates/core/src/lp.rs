//! Exact covering LP: minimize `sum x_j` subject to `sum_{j : i in col_j} x_j >= 1`
//! for every row `i`, `x >= 0`.
//!
//! Two-phase revised simplex over `BigRational` with an explicit basis
//! inverse. Pricing uses the most negative reduced cost and falls back to
//! Bland's rule for good after a run of degenerate pivots, which rules out
//! cycling.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

const DEGENERATE_RUN_BEFORE_BLAND: usize = 50;

#[derive(Debug, Clone)]
pub(crate) struct CoveringSolution {
    pub value: Rational,
    /// Nonzero primal entries `(column, value)`, by increasing column.
    pub primal: Vec<(usize, Rational)>,
    /// Optimal dual row prices; nonnegative and summing to `value`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Column(usize),
    Surplus(usize),
    Artificial(usize),
}

struct Simplex<'c> {
    rows: usize,
    columns: &'c [Vec<usize>],
    basis: Vec<Var>,
    binv: Vec<Vec<BigRational>>,
    xb: Vec<BigRational>,
    pivots: usize,
    max_pivots: usize,
}

impl<'c> Simplex<'c> {
    fn new(rows: usize, columns: &'c [Vec<usize>], max_pivots: usize) -> Self {
        let binv = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Simplex {
            rows,
            columns,
            basis: (0..rows).map(Var::Artificial).collect(),
            binv,
            xb: vec![BigRational::one(); rows],
            pivots: 0,
            max_pivots,
        }
    }

    fn index(&self, v: Var) -> usize {
        let m = self.columns.len();
        match v {
            Var::Column(j) => j,
            Var::Surplus(i) => m + i,
            Var::Artificial(i) => m + self.rows + i,
        }
    }

    fn cost(phase_one: bool, v: Var) -> BigRational {
        match (phase_one, v) {
            (true, Var::Artificial(_)) | (false, Var::Column(_)) => BigRational::one(),
            _ => BigRational::zero(),
        }
    }

    /// Sparse column of the constraint matrix as `(row, coefficient)`.
    fn column(&self, v: Var) -> Vec<(usize, BigRational)> {
        match v {
            Var::Column(j) => self.columns[j].iter().map(|&i| (i, BigRational::one())).collect(),
            Var::Surplus(i) => vec![(i, -BigRational::one())],
            Var::Artificial(i) => vec![(i, BigRational::one())],
        }
    }

    fn prices(&self, phase_one: bool) -> Vec<BigRational> {
        let cb: Vec<BigRational> = self.basis.iter().map(|&v| Self::cost(phase_one, v)).collect();
        (0..self.rows)
            .map(|i| {
                cb.iter()
                    .zip(&self.binv)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(BigRational::zero(), |acc, (c, row)| acc + c * &row[i])
            })
            .collect()
    }

    fn reduced_cost(&self, phase_one: bool, v: Var, pi: &[BigRational]) -> BigRational {
        let mut d = Self::cost(phase_one, v);
        for (i, a) in self.column(v) {
            d -= a * &pi[i];
        }
        d
    }

    fn direction(&self, v: Var) -> Vec<BigRational> {
        let col = self.column(v);
        self.binv
            .iter()
            .map(|row| {
                col.iter()
                    .fold(BigRational::zero(), |acc, (i, a)| acc + a * &row[*i])
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, entering: Var, u: &[BigRational]) {
        let pr = u[r].clone();
        for x in self.binv[r].iter_mut() {
            *x /= &pr;
        }
        self.xb[r] /= &pr;
        let pivot_row = self.binv[r].clone();
        let pivot_x = self.xb[r].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == r || ui.is_zero() {
                continue;
            }
            for (x, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                *x -= ui * p;
            }
            self.xb[i] -= ui * &pivot_x;
        }
        self.basis[r] = entering;
        self.pivots += 1;
    }

    fn candidates(&self, phase_one: bool) -> impl Iterator<Item = Var> + '_ {
        let m = self.columns.len();
        let arts: Box<dyn Iterator<Item = Var>> = if phase_one {
            Box::new((0..self.rows).map(Var::Artificial))
        } else {
            Box::new(std::iter::empty())
        };
        (0..m)
            .map(Var::Column)
            .chain((0..self.rows).map(Var::Surplus))
            .chain(arts)
    }

    fn run(&mut self, phase_one: bool) -> Result<()> {
        let mut degenerate_run = 0usize;
        let mut bland = false;
        loop {
            if self.pivots >= self.max_pivots {
                return Err(Error::BudgetExhausted(format!(
                    "simplex exceeded {} pivots",
                    self.max_pivots
                )));
            }
            let pi = self.prices(phase_one);
            let mut entering: Option<(Var, BigRational)> = None;
            for v in self.candidates(phase_one) {
                if self.basis.contains(&v) {
                    continue;
                }
                let d = self.reduced_cost(phase_one, v, &pi);
                if !d.is_negative() {
                    continue;
                }
                if bland {
                    entering = Some((v, d));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| d < *best) {
                    entering = Some((v, d));
                }
            }
            let Some((entering, _)) = entering else {
                return Ok(());
            };
            let u = self.direction(entering);
            let mut leave: Option<(usize, BigRational)> = None;
            for (r, ur) in u.iter().enumerate() {
                if !ur.is_positive() {
                    continue;
                }
                let ratio = &self.xb[r] / ur;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best
                            || (ratio == *best
                                && self.index(self.basis[r]) < self.index(self.basis[*lr]))
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::InvalidParams("covering LP is unbounded".into()));
            };
            if ratio.is_zero() {
                degenerate_run += 1;
                if degenerate_run >= DEGENERATE_RUN_BEFORE_BLAND {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, entering, &u);
        }
    }

    /// Replaces artificials left in the basis at level zero.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows {
            if !matches!(self.basis[r], Var::Artificial(_)) {
                continue;
            }
            let replacement = (0..self.columns.len())
                .map(Var::Column)
                .chain((0..self.rows).map(Var::Surplus))
                .filter(|v| !self.basis.contains(v))
                .find_map(|v| {
                    let u = self.direction(v);
                    (!u[r].is_zero()).then_some((v, u))
                });
            if let Some((v, u)) = replacement {
                self.pivot(r, v, &u);
            }
        }
    }
}

/// Solves the covering LP whose column `j` covers the rows in `columns[j]`.
pub(crate) fn solve_covering(
    rows: usize,
    columns: &[Vec<usize>],
    max_pivots: usize,
) -> Result<CoveringSolution> {
    if rows == 0 {
        return Ok(CoveringSolution {
            value: Rational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            pivots: 0,
        });
    }
    let mut covered = vec![false; rows];
    for col in columns {
        for &i in col {
            covered[i] = true;
        }
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        return Err(Error::InvalidParams(format!(
            "covering LP is infeasible: row {i} is in no column"
        )));
    }

    let mut lp = Simplex::new(rows, columns, max_pivots);
    lp.run(true)?;
    debug_assert!(lp
        .basis
        .iter()
        .zip(&lp.xb)
        .all(|(v, x)| !matches!(v, Var::Artificial(_)) || x.is_zero()));
    lp.drive_out_artificials();
    lp.run(false)?;

    let mut primal: Vec<(usize, Rational)> = lp
        .basis
        .iter()
        .zip(&lp.xb)
        .filter_map(|(v, x)| match v {
            Var::Column(j) if !x.is_zero() => Some((*j, Rational::from(x.clone()))),
            _ => None,
        })
        .collect();
    primal.sort_by_key(|(j, _)| *j);
    let value: Rational = primal.iter().map(|(_, x)| x).sum();
    let dual: Vec<Rational> = lp.prices(false).into_iter().map(Rational::from).collect();
    Ok(CoveringSolution {
        value,
        primal,
        dual,
        pivots: lp.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_certificate(rows: usize, columns: &[Vec<usize>], sol: &CoveringSolution) {
        let mut cover = vec![Rational::zero(); rows];
        for (j, x) in &sol.primal {
            assert!(x.is_positive());
            for &i in &columns[*j] {
                cover[i] = &cover[i] + x;
            }
        }
        assert!(cover.iter().all(|c| *c >= Rational::one()));
        assert!(sol.dual.iter().all(|y| !y.is_negative()));
        for col in columns {
            let load: Rational = col.iter().map(|&i| &sol.dual[i]).sum();
            assert!(load <= Rational::one());
        }
        let dual_value: Rational = sol.dual.iter().sum();
        assert_eq!(dual_value, sol.value);
    }

    #[test]
    fn singleton_columns() {
        let columns: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        let sol = solve_covering(4, &columns, 1000).unwrap();
        assert_eq!(sol.value, Rational::from_integer(4));
        check_certificate(4, &columns, &sol);
    }

    #[test]
    fn one_column_covers_all() {
        let columns = vec![vec![0], vec![0, 1, 2], vec![2]];
        let sol = solve_covering(3, &columns, 1000).unwrap();
        assert_eq!(sol.value, Rational::one());
        assert_eq!(sol.primal, vec![(1, Rational::one())]);
    }

    #[test]
    fn odd_cycle_edges() {
        // cover the vertices of C5 by its edges: optimum 5/2
        let columns: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        let sol = solve_covering(5, &columns, 1000).unwrap();
        assert_eq!(sol.value, Rational::new(5, 2));
        check_certificate(5, &columns, &sol);
    }

    #[test]
    fn infeasible_and_empty() {
        assert!(solve_covering(2, &[vec![0]], 1000).is_err());
        assert_eq!(solve_covering(0, &[], 10).unwrap().value, Rational::zero());
    }

    #[test]
    fn pivot_budget() {
        let columns: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        assert!(matches!(
            solve_covering(5, &columns, 1),
            Err(Error::BudgetExhausted(_))
        ));
    }
}
