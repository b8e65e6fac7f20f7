//! Applicability of the non-iterative method to a similarity model.
//!
//! Under `eta* = l^a1 eta`, `f* = l^a2 f`, `P* = l^a3 P` every term of the
//! governing equation picks up a power of `l` that is linear in
//! `(a1, a2, a3)`. The equation (and each wall condition) is invariant when
//! the powers of its terms agree. The resulting homogeneous system is solved
//! exactly over the rationals: a trivial nullspace means no extended scaling
//! group exists.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::problems::Family;

pub type Rational = Ratio<i64>;

/// A linear form `c1 a1 + c2 a2 + c3 a3`.
pub type LinearForm = [Rational; 3];

fn form(a1: i64, a2: i64, a3: i64) -> LinearForm {
    [Rational::from(a1), Rational::from(a2), Rational::from(a3)]
}

/// Power of `l` picked up by a model term, e.g. `f f''` -> `2 a2 - 2 a1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: &'static str,
    pub exponent: LinearForm,
}

impl Term {
    fn new(label: &'static str, a1: i64, a2: i64, a3: i64) -> Self {
        Term {
            label,
            exponent: form(a1, a2, a3),
        }
    }
}

/// Term table of a model: the equation and each wall condition with more
/// than one term. Conditions of the form `g(0) = 0` impose nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct TermTable {
    pub equation: Vec<Term>,
    pub wall_conditions: Vec<Vec<Term>>,
    /// Scaling of the quantity prescribed at infinity (`f'`).
    pub asymptotic: LinearForm,
}

impl TermTable {
    pub fn for_family(family: Family) -> Self {
        let d3f = Term::new("f'''", -3, 1, 0);
        let ffpp = Term::new("f f''", -2, 2, 0);
        let df = Term::new("f'", -1, 1, 0);
        let asymptotic = df.exponent;
        match family {
            Family::MovingWall | Family::ClassicBlasius => TermTable {
                equation: vec![d3f, ffpp],
                // f'(0) = P
                wall_conditions: vec![vec![df, Term::new("P", 0, 0, 1)]],
                asymptotic,
            },
            Family::Gasification => TermTable {
                equation: vec![d3f, ffpp],
                // f(0) = -P f''(0)
                wall_conditions: vec![vec![Term::new("f", 0, 1, 0), Term::new("P f''", -2, 1, 1)]],
                asymptotic,
            },
            Family::FalknerSkan => TermTable {
                equation: vec![
                    d3f,
                    ffpp,
                    Term::new("P", 0, 0, 1),
                    Term::new("P f'^2", -2, 2, 1),
                ],
                wall_conditions: vec![],
                asymptotic,
            },
        }
    }
}

/// A homogeneous linear system over `(a1, a2, a3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSystem {
    pub rows: Vec<LinearForm>,
    /// `"lhs = rhs"` per row.
    pub labels: Vec<String>,
    pub asymptotic: LinearForm,
}

impl ExponentSystem {
    /// The unconstrained system.
    pub fn empty() -> Self {
        ExponentSystem {
            rows: vec![],
            labels: vec![],
            asymptotic: form(-1, 1, 0),
        }
    }

    fn push_equalities(&mut self, terms: &[Term]) {
        for pair in terms.windows(2) {
            let row = [0, 1, 2].map(|i| pair[0].exponent[i] - pair[1].exponent[i]);
            self.rows.push(row);
            self.labels
                .push(format!("{} = {}", pair[0].label, pair[1].label));
        }
    }
}

/// Builds the invariance conditions of a family from its term table.
pub fn build_exponent_system(family: Family) -> ExponentSystem {
    let table = TermTable::for_family(family);
    let mut sys = ExponentSystem {
        rows: vec![],
        labels: vec![],
        asymptotic: table.asymptotic,
    };
    sys.push_equalities(&table.equation);
    for cond in &table.wall_conditions {
        sys.push_equalities(cond);
    }
    sys
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub nullspace_dim: usize,
    /// Canonical basis: reduced row echelon form of the nullspace, each
    /// vector signed so that its `f` exponent is positive when nonzero.
    pub basis: Vec<LinearForm>,
    /// A nontrivial group exists and it moves the asymptotic condition.
    pub applicable: bool,
}

impl InvarianceReport {
    pub fn basis_f64(&self) -> Vec<[f64; 3]> {
        self.basis
            .iter()
            .map(|v| v.map(|r| *r.numer() as f64 / *r.denom() as f64))
            .collect()
    }
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nullspace dimension: {}", self.nullspace_dim)?;
        if self.nullspace_dim == 0 {
            writeln!(f, "nullspace is trivial: a1 = a2 = a3 = 0")?;
        }
        for v in &self.basis {
            writeln!(f, "basis: ({}, {}, {})", v[0], v[1], v[2])?;
        }
        write!(
            f,
            "non-ITM applicable: {}",
            if self.applicable { "yes" } else { "no" }
        )
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut Vec<LinearForm>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col];
        for v in m[row].iter_mut() {
            *v /= lead;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col];
                let pivot_row = m[row];
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

fn nullspace(rows: &[LinearForm]) -> Vec<LinearForm> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..3).filter(|c| !pivots.contains(c)) {
        let mut v = [Rational::zero(); 3];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free];
        }
        basis.push(v);
    }
    basis
}

fn canonical_basis(vectors: Vec<LinearForm>) -> Vec<LinearForm> {
    let mut m = vectors;
    rref(&mut m);
    for v in m.iter_mut() {
        let flip = if !v[1].is_zero() {
            v[1].is_negative()
        } else {
            v.iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative())
        };
        if flip {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
    m
}

fn apply(form: &LinearForm, v: &LinearForm) -> Rational {
    (0..3)
        .map(|i| form[i] * v[i])
        .fold(Rational::zero(), |a, b| a + b)
}

/// Exact nullspace of the invariance conditions.
pub fn solve_exponent_system(sys: &ExponentSystem) -> InvarianceReport {
    let basis = canonical_basis(nullspace(&sys.rows));
    let applicable = basis.iter().any(|v| !apply(&sys.asymptotic, v).is_zero());
    InvarianceReport {
        nullspace_dim: basis.len(),
        basis,
        applicable,
    }
}

pub fn analyze_family(family: Family) -> InvarianceReport {
    solve_exponent_system(&build_exponent_system(family))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn falkner_skan_conditions() {
        let sys = build_exponent_system(Family::FalknerSkan);
        assert_eq!(sys.rows.len(), 3);
        // a2 - 3a1 = 2(a2 - a1) = a3 = a3 + 2(a2 - a1)
        assert_eq!(sys.rows[0], form(-1, -1, 0));
        assert_eq!(sys.rows[1], form(-2, 2, -1));
        assert_eq!(sys.rows[2], form(2, -2, 0));
        let rep = solve_exponent_system(&sys);
        assert_eq!(rep.nullspace_dim, 0);
        assert!(rep.basis.is_empty());
        assert!(!rep.applicable);
        assert!(rep.to_string().contains("nullspace is trivial"));
    }

    #[test]
    fn solvable_families() {
        let mw = analyze_family(Family::MovingWall);
        assert_eq!(mw.nullspace_dim, 1);
        assert_eq!(mw.basis, vec![[r(-1), r(1), r(2)]]);
        assert!(mw.applicable);

        let gas = analyze_family(Family::Gasification);
        assert_eq!(gas.nullspace_dim, 1);
        assert_eq!(gas.basis, vec![[r(-1), r(1), r(-2)]]);
        assert!(gas.applicable);
    }

    #[test]
    fn empty_system_is_full_space() {
        let rep = solve_exponent_system(&ExponentSystem::empty());
        assert_eq!(rep.nullspace_dim, 3);
        assert_eq!(rep.basis[0], form(1, 0, 0));
        assert_eq!(rep.basis[1], form(0, 1, 0));
        assert_eq!(rep.basis[2], form(0, 0, 1));
    }

    #[test]
    fn classic_blasius_equation_alone() {
        // Equation without any parameter constraint: (a1, a2) tied, a3 free.
        let mut sys = ExponentSystem::empty();
        let t = TermTable::for_family(Family::MovingWall);
        sys.push_equalities(&t.equation);
        let rep = solve_exponent_system(&sys);
        assert_eq!(rep.nullspace_dim, 2);
        assert!(rep.applicable);
    }

    #[test]
    fn nullspace_vectors_satisfy_rows() {
        for fam in [Family::MovingWall, Family::Gasification] {
            let sys = build_exponent_system(fam);
            let rep = solve_exponent_system(&sys);
            for v in &rep.basis {
                for row in &sys.rows {
                    assert!(apply(row, v).is_zero());
                }
            }
        }
    }

    #[test]
    fn non_integer_entries() {
        let sys = ExponentSystem {
            rows: vec![
                [Rational::new(1, 2), Rational::new(1, 3), r(0)],
                form(0, 0, 1),
            ],
            labels: vec![],
            asymptotic: form(-1, 1, 0),
        };
        let rep = solve_exponent_system(&sys);
        assert_eq!(rep.basis, vec![[r(-1), Rational::new(3, 2), r(0)]]);
    }
}
