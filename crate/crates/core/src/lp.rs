//! Exact linear programming over the rationals.
//!
//! A dense two-phase tableau simplex with Bland's anti-cycling rule. Problems
//! are in standard form `min c·x  s.t.  A x = b, x ≥ 0`. Besides a primal
//! optimum the solver returns an optimal dual `y` (with `yᵀA ≤ c` and
//! `y·b = c·x`), which is how zero-sum game solutions get both strategies from
//! one solve.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program dimensions are inconsistent: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub duals: Vec<Rational>,
}

struct Tableau {
    /// `rows × (cols + 1)`; the last entry of each row is the right-hand side.
    t: Vec<Vec<Rational>>,
    /// Reduced costs, `cols + 1` entries; the last is minus the objective.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= d;
            }
        };
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.t[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Result<(), LpError> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][c];
                if a.is_positive() {
                    let ratio = &self.t[i][self.cols] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, c);
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &cost[bv];
            if !cb.is_zero() {
                for (o, t) in obj.iter_mut().zip(&self.t[i]) {
                    if !t.is_zero() {
                        *o -= cb * t;
                    }
                }
            }
        }
        self.obj = obj;
    }
}

/// Solves `min c·x  s.t.  A x = b, x ≥ 0` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let m = lp.a.len();
    let n = lp.c.len();
    if lp.b.len() != m {
        return Err(LpError::Dimension(format!("{m} rows but {} right-hand sides", lp.b.len())));
    }
    if let Some(row) = lp.a.iter().find(|r| r.len() != n) {
        return Err(LpError::Dimension(format!("row of length {} with {n} costs", row.len())));
    }
    let cols = n + m;
    let flip: Vec<bool> = lp.b.iter().map(|v| v.is_negative()).collect();
    let t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let s = if flip[i] { -Rational::one() } else { Rational::one() };
            let mut row: Vec<Rational> = lp.a[i].iter().map(|v| v * &s).collect();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(&lp.b[i] * &s);
            row
        })
        .collect();
    let mut tab = Tableau { t, obj: Vec::new(), basis: (n..cols).collect(), cols };

    let mut phase1 = vec![Rational::zero(); n];
    phase1.extend(std::iter::repeat_n(Rational::one(), m));
    tab.set_objective(&phase1);
    tab.run(cols)?;
    if !tab.obj[cols].is_zero() {
        return Err(LpError::Infeasible);
    }
    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    let mut phase2 = lp.c.clone();
    phase2.extend(std::iter::repeat_n(Rational::zero(), m));
    tab.set_objective(&phase2);
    tab.run(n)?;

    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[i][cols].clone();
        }
    }
    let value = -tab.obj[cols].clone();
    let duals = (0..m)
        .map(|i| {
            let y = -tab.obj[n + i].clone();
            if flip[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpSolution { value, x, duals })
}

/// Optimal strategies of the zero-sum game with payoff `a[i][k]`: the
/// maximising player mixes over columns, the minimising one over rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    /// `max_q min_i (A q)_i = min_p max_k (pᵀA)_k`.
    pub value: Rational,
    /// Column mixture `q` attaining the value.
    pub mixture: Vec<Rational>,
    /// Row distribution `p` attaining the value.
    pub adversary: Vec<Rational>,
}

/// Solves the game with a single LP over the column mixture; the row
/// strategy is read off the duals.
pub fn solve_game(a: &[Vec<Rational>]) -> Result<GameSolution, LpError> {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    if m == 0 || k == 0 {
        return Err(LpError::Dimension("empty payoff matrix".into()));
    }
    if a.iter().any(|r| r.len() != k) {
        return Err(LpError::Dimension("ragged payoff matrix".into()));
    }
    // variables: q (k), z+, z-, slack (m)
    let n = k + 2 + m;
    let mut rows = Vec::with_capacity(m + 1);
    for (i, ai) in a.iter().enumerate() {
        let mut row = ai.clone();
        row.push(-Rational::one());
        row.push(Rational::one());
        row.extend((0..m).map(|j| if j == i { -Rational::one() } else { Rational::zero() }));
        rows.push(row);
    }
    let mut simplex_row = vec![Rational::one(); k];
    simplex_row.resize(n, Rational::zero());
    rows.push(simplex_row);
    let mut b = vec![Rational::zero(); m];
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n];
    c[k] = -Rational::one();
    c[k + 1] = Rational::one();

    let sol = solve(&LinearProgram { a: rows, b, c })?;
    Ok(GameSolution {
        value: -sol.value,
        mixture: sol.x[..k].to_vec(),
        adversary: sol.duals[..m].to_vec(),
    })
}
