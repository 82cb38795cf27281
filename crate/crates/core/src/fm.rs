//! Fourier–Motzkin elimination over named real variables.
//!
//! Systems are lists of rows `Σ c_k v_k <= rhs`. Eliminating a variable
//! combines every row where it appears with a positive coefficient with
//! every row where it appears with a negative one. Redundant rows are
//! pruned after each step: duplicates and trivially true rows always, and
//! coefficient-wise dominated rows when the system is known to live in the
//! nonnegative orthant.

use std::fmt;

use crate::region::{HalfSpace, RateRegion, RegionError};

const COEFF_EPS: f64 = 1e-12;
const REDUNDANCY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FmError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("row has {got} coefficients, system has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("coefficient or bound is not finite")]
    NotFinite,
    #[error("expected a system over exactly two variables, got {0:?}")]
    NotPlanar(Vec<String>),
    #[error("system is infeasible: 0 <= {0}")]
    Infeasible(f64),
    #[error("row {0} cuts the nonnegative quadrant in a way that is not downward closed")]
    NotDownwardClosed(String),
    #[error("cannot decide redundancy of mixed-sign rows over an unbounded region")]
    Unbounded,
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// One row `coeffs · v <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ineq {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Ineq {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= COEFF_EPS)
    }

    fn is_nonnegativity(&self) -> bool {
        self.rhs.abs() <= COEFF_EPS
            && self.coeffs.iter().filter(|c| c.abs() > COEFF_EPS).count() == 1
            && self.coeffs.iter().any(|&c| c < -COEFF_EPS)
    }

    /// `self` is implied by `other` on the nonnegative orthant.
    fn dominated_by(&self, other: &Ineq) -> bool {
        other.rhs <= self.rhs + COEFF_EPS && other.coeffs.iter().zip(&self.coeffs).all(|(o, s)| *o >= *s - COEFF_EPS)
    }

    fn same_as(&self, other: &Ineq) -> bool {
        (self.rhs - other.rhs).abs() <= COEFF_EPS
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= COEFF_EPS)
    }
}

/// A system of linear inequalities over named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct IneqSystem {
    vars: Vec<String>,
    rows: Vec<Ineq>,
    nonnegative: bool,
}

impl IneqSystem {
    pub fn new(vars: &[&str]) -> Result<Self, FmError> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if names.iter().any(|n| n == v) {
                return Err(FmError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Self {
            vars: names,
            rows: Vec::new(),
            nonnegative: false,
        })
    }

    /// System whose variables are all constrained to be nonnegative; the
    /// constraints `-v <= 0` are added as rows and kept through elimination.
    pub fn nonnegative(vars: &[&str]) -> Result<Self, FmError> {
        let mut s = Self::new(vars)?;
        for v in vars {
            s.add(&[(v, -1.0)], 0.0)?;
        }
        s.nonnegative = true;
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &[Ineq] {
        &self.rows
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    fn index_of(&self, var: &str) -> Result<usize, FmError> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| FmError::UnknownVariable(var.to_string()))
    }

    /// Adds `Σ c v <= rhs`; repeated variables accumulate.
    pub fn add(&mut self, terms: &[(&str, f64)], rhs: f64) -> Result<(), FmError> {
        let mut coeffs = vec![0.0; self.vars.len()];
        for (v, c) in terms {
            coeffs[self.index_of(v)?] += c;
        }
        self.add_row(Ineq { coeffs, rhs })
    }

    pub fn add_row(&mut self, row: Ineq) -> Result<(), FmError> {
        if row.coeffs.len() != self.vars.len() {
            return Err(FmError::Arity {
                expected: self.vars.len(),
                got: row.coeffs.len(),
            });
        }
        if !row.rhs.is_finite() || row.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(FmError::NotFinite);
        }
        self.rows.push(row);
        Ok(())
    }

    /// Projects out `var`.
    pub fn eliminate(&self, var: &str) -> Result<Self, FmError> {
        let k = self.index_of(var)?;
        let drop_k = |c: &[f64]| -> Vec<f64> {
            c.iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &x)| if x.abs() <= COEFF_EPS { 0.0 } else { x })
                .collect()
        };
        let mut rows = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in &self.rows {
            let c = r.coeffs[k];
            if c > COEFF_EPS {
                pos.push(r);
            } else if c < -COEFF_EPS {
                neg.push(r);
            } else {
                rows.push(Ineq {
                    coeffs: drop_k(&r.coeffs),
                    rhs: r.rhs,
                });
            }
        }
        for p in &pos {
            for n in &neg {
                let sp = 1.0 / p.coeffs[k];
                let sn = -1.0 / n.coeffs[k];
                let coeffs: Vec<f64> = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * sp + b * sn).collect();
                rows.push(Ineq {
                    coeffs: drop_k(&coeffs),
                    rhs: p.rhs * sp + n.rhs * sn,
                });
            }
        }
        let mut vars = self.vars.clone();
        vars.remove(k);
        let mut out = Self {
            vars,
            rows,
            nonnegative: self.nonnegative,
        };
        out.prune();
        Ok(out)
    }

    /// Projects out several variables in order.
    pub fn eliminate_all(&self, vars: &[&str]) -> Result<Self, FmError> {
        let mut s = self.clone();
        for v in vars {
            s = s.eliminate(v)?;
        }
        Ok(s)
    }

    /// Removes trivially true rows, duplicates and, on the nonnegative
    /// orthant, dominated rows. Rows proving infeasibility are kept.
    fn prune(&mut self) {
        let rows = std::mem::take(&mut self.rows);
        let mut kept: Vec<Ineq> = Vec::with_capacity(rows.len());
        for r in rows {
            if r.is_zero() && r.rhs >= -COEFF_EPS {
                continue;
            }
            if kept.iter().any(|k| k.same_as(&r)) {
                continue;
            }
            kept.push(r);
        }
        if self.nonnegative {
            let n = kept.len();
            let mut alive = vec![true; n];
            for i in 0..n {
                if kept[i].is_nonnegativity() {
                    continue;
                }
                for j in 0..n {
                    if i != j && alive[j] && kept[i].dominated_by(&kept[j]) {
                        alive[i] = false;
                        break;
                    }
                }
            }
            kept = kept
                .into_iter()
                .zip(alive)
                .filter(|(_, a)| *a)
                .map(|(r, _)| r)
                .collect();
        }
        self.rows = kept;
    }

    /// Minimal description of a two-variable system restricted to the
    /// nonnegative quadrant. The result keeps only rows with nonnegative
    /// coefficients that touch the region, plus the two nonnegativity rows.
    pub fn reduce(&self) -> Result<Self, FmError> {
        if self.vars.len() != 2 {
            return Err(FmError::NotPlanar(self.vars.clone()));
        }
        let mut upper: Vec<Ineq> = Vec::new();
        let mut mixed: Vec<&Ineq> = Vec::new();
        for r in &self.rows {
            let (c1, c2) = (r.coeffs[0], r.coeffs[1]);
            let nonpos = c1 <= COEFF_EPS && c2 <= COEFF_EPS;
            let nonneg = c1 >= -COEFF_EPS && c2 >= -COEFF_EPS;
            if r.is_zero() || nonpos {
                if r.rhs < -REDUNDANCY_TOL {
                    return Err(if r.is_zero() {
                        FmError::Infeasible(r.rhs)
                    } else {
                        FmError::NotDownwardClosed(self.format_row(r))
                    });
                }
            } else if nonneg {
                if r.rhs < -REDUNDANCY_TOL {
                    return Err(FmError::NotDownwardClosed(self.format_row(r)));
                }
                upper.push(Ineq {
                    coeffs: vec![c1.max(0.0), c2.max(0.0)],
                    rhs: r.rhs.max(0.0),
                });
            } else {
                mixed.push(r);
            }
        }

        let mut sys = Self {
            vars: self.vars.clone(),
            rows: upper,
            nonnegative: true,
        };
        sys.prune();
        let mut upper = sys.rows;

        let bounded = |rows: &[Ineq]| {
            rows.iter().any(|r| r.coeffs[0] > COEFF_EPS) && rows.iter().any(|r| r.coeffs[1] > COEFF_EPS)
        };
        if bounded(&upper) {
            let mut i = 0;
            while i < upper.len() {
                let others: Vec<Ineq> = upper
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, r)| r.clone())
                    .collect();
                if bounded(&others) && vertices_satisfy(&others, &upper[i])? {
                    upper.remove(i);
                } else {
                    i += 1;
                }
            }
            for m in &mixed {
                if !vertices_satisfy(&upper, m)? {
                    return Err(FmError::NotDownwardClosed(self.format_row(m)));
                }
            }
        } else if !mixed.is_empty() {
            return Err(FmError::Unbounded);
        }

        upper.push(Ineq {
            coeffs: vec![-1.0, 0.0],
            rhs: 0.0,
        });
        upper.push(Ineq {
            coeffs: vec![0.0, -1.0],
            rhs: 0.0,
        });
        Ok(Self {
            vars: self.vars.clone(),
            rows: upper,
            nonnegative: true,
        })
    }

    /// The `(R1, R2)` region described by a system over variables named
    /// `R1` and `R2`.
    pub fn to_region(&self) -> Result<RateRegion, FmError> {
        let i1 = self.index_of("R1")?;
        let i2 = self.index_of("R2")?;
        let reduced = self.reduce()?;
        let hs = reduced
            .rows
            .iter()
            .filter(|r| r.coeffs.iter().all(|&c| c >= 0.0))
            .map(|r| HalfSpace::new(r.coeffs[i1], r.coeffs[i2], r.rhs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RateRegion::new(hs)?)
    }

    fn format_row(&self, r: &Ineq) -> String {
        let mut s = String::new();
        for (c, v) in r.coeffs.iter().zip(&self.vars) {
            if c.abs() <= COEFF_EPS {
                continue;
            }
            if s.is_empty() {
                if *c < 0.0 {
                    s.push('-');
                }
            } else {
                s.push_str(if *c < 0.0 { " - " } else { " + " });
            }
            if (c.abs() - 1.0).abs() > COEFF_EPS {
                s.push_str(&format!("{}·", c.abs()));
            }
            s.push_str(v);
        }
        if s.is_empty() {
            s.push('0');
        }
        format!("{s} <= {}", r.rhs)
    }
}

impl fmt::Display for IneqSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", self.format_row(r))?;
        }
        Ok(())
    }
}

/// Whether every vertex of the quadrant region `rows` satisfies `test`.
fn vertices_satisfy(rows: &[Ineq], test: &Ineq) -> Result<bool, FmError> {
    let hs = rows
        .iter()
        .map(|r| HalfSpace::new(r.coeffs[0], r.coeffs[1], r.rhs))
        .collect::<Result<Vec<_>, _>>()?;
    let region = RateRegion::new(hs)?;
    let scale = test.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    Ok(region.vertices().iter().all(|v| {
        let lhs = test.coeffs[0] * v[0] + test.coeffs[1] * v[1];
        (lhs - test.rhs) / scale <= REDUNDANCY_TOL
    }))
}
