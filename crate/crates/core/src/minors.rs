//! Polynomial matrices and their maximal-minor ideals.
//!
//! The matrices assembled here have the coefficient vectors of sections (or
//! 1-forms, with the differentials of the defining map prepended) as columns;
//! the determinants of all maximal square submatrices generate the ideal whose
//! colength is the index.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{OneForm, Polynomial, Ring};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("ragged input: column {col} has {got} entries, expected {expected}")]
    Ragged {
        col: usize,
        got: usize,
        expected: usize,
    },
    #[error("matrix must have at least one column")]
    NoColumns,
    #[error("matrix must have rows >= cols, got {rows}x{cols}")]
    Wide { rows: usize, cols: usize },
    #[error("expected {expected} columns, got {got}")]
    ColumnCount { expected: usize, got: usize },
}

/// A p x q matrix of polynomials with p >= q; its maximal minors are the
/// q x q determinants over all row subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    // row-major
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_columns(columns: Vec<Vec<Polynomial>>) -> Result<PolyMatrix, MatrixError> {
        if columns.is_empty() {
            return Err(MatrixError::NoColumns);
        }
        let rows = columns[0].len();
        for (i, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(MatrixError::Ragged {
                    col: i,
                    got: c.len(),
                    expected: rows,
                });
            }
        }
        let cols = columns.len();
        if rows < cols {
            return Err(MatrixError::Wide { rows, cols });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in &columns {
                entries.push(c[r].clone());
            }
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.entries[0].ring()
    }
}

/// Columns are the component vectors of the sections, in input order.
pub fn assemble_section_matrix(
    sections: &[Vec<Polynomial>],
) -> Result<PolyMatrix, MatrixError> {
    PolyMatrix::from_columns(sections.to_vec())
}

/// Builds the n x (l + forms.len()) matrix whose first l columns are the
/// differentials of the defining functions and whose remaining columns are
/// the 1-form coefficient vectors. With an empty map this reduces to
/// [`assemble_section_matrix`] on the cotangent data.
pub fn assemble_icis_matrix(
    map: &[Polynomial],
    forms: &[OneForm],
) -> Result<PolyMatrix, MatrixError> {
    let mut columns: Vec<Vec<Polynomial>> = Vec::with_capacity(map.len() + forms.len());
    for f in map {
        columns.push(f.differential().coeffs().to_vec());
    }
    for w in forms {
        columns.push(w.coeffs().to_vec());
    }
    PolyMatrix::from_columns(columns)
}

/// All maximal minors (one per cols-subset of rows, lexicographic subset
/// order) with identically-zero minors dropped.
///
/// Determinants are computed by Laplace expansion along the first remaining
/// column, memoized on (row subset, column offset) so sub-minors shared
/// between row subsets are reused.
pub fn maximal_minors(m: &PolyMatrix) -> Vec<Polynomial> {
    let mut memo: HashMap<(Vec<usize>, usize), Polynomial> = HashMap::new();
    let mut out = Vec::new();
    for subset in subsets(m.rows(), m.cols()) {
        let d = det_memo(m, &subset, 0, &mut memo);
        if !d.is_zero() {
            out.push(d);
        }
    }
    out
}

fn det_memo(
    m: &PolyMatrix,
    rows: &[usize],
    col: usize,
    memo: &mut HashMap<(Vec<usize>, usize), Polynomial>,
) -> Polynomial {
    let ring = m.ring();
    if rows.is_empty() {
        return Polynomial::one(ring);
    }
    let key = (rows.to_vec(), col);
    if let Some(d) = memo.get(&key) {
        return d.clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (i, &r) in rows.iter().enumerate() {
        let e = m.entry(r, col);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&s| s != r)
            .collect();
        let sub = det_memo(m, &rest, col + 1, memo);
        let signed = if i % 2 == 0 { e.mul(&sub) } else { e.mul(&sub).neg() };
        acc = acc.add(&signed);
    }
    memo.insert(key, acc.clone());
    acc
}

/// Lexicographically ordered k-subsets of {0, ..., n-1}.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn poly(s: &str, ring: &Arc<Ring>) -> Polynomial {
        parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn column_matrix_minors_are_entries() {
        let ring = Ring::new(vec!["x", "y"]);
        let m = assemble_section_matrix(&[vec![poly("x", &ring), poly("y", &ring)]]).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 1);
        let minors = maximal_minors(&m);
        assert_eq!(minors, vec![poly("x", &ring), poly("y", &ring)]);
    }

    #[test]
    fn identity_minor_is_unit() {
        let ring = Ring::new(vec!["x", "y"]);
        let m = assemble_section_matrix(&[
            vec![poly("1", &ring), poly("0", &ring)],
            vec![poly("0", &ring), poly("1", &ring)],
        ])
        .unwrap();
        let minors = maximal_minors(&m);
        assert_eq!(minors, vec![poly("1", &ring)]);
    }

    #[test]
    fn icis_matrix_for_a1() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let f = poly("x^2+y^2+z^2", &ring);
        let dz = OneForm::new(vec![poly("0", &ring), poly("0", &ring), poly("1", &ring)]);
        let m = assemble_icis_matrix(&[f], &[dz]).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(m.entry(0, 0), &poly("2*x", &ring));
        assert_eq!(m.entry(2, 1), &poly("1", &ring));
        // row pair {0,1} gives the zero minor, which is dropped
        let minors = maximal_minors(&m);
        assert_eq!(minors, vec![poly("2*x", &ring), poly("2*y", &ring)]);
    }

    #[test]
    fn empty_map_reduces_to_section_matrix() {
        let ring = Ring::new(vec!["x", "y"]);
        let forms = vec![
            OneForm::new(vec![poly("x", &ring), poly("0", &ring)]),
            OneForm::new(vec![poly("0", &ring), poly("y", &ring)]),
        ];
        let m = assemble_icis_matrix(&[], &forms).unwrap();
        let s = assemble_section_matrix(&[
            vec![poly("x", &ring), poly("0", &ring)],
            vec![poly("0", &ring), poly("y", &ring)],
        ])
        .unwrap();
        assert_eq!(m, s);
    }

    #[test]
    fn ragged_input_rejected() {
        let ring = Ring::new(vec!["x", "y"]);
        let err = assemble_section_matrix(&[
            vec![poly("x", &ring), poly("y", &ring)],
            vec![poly("x", &ring)],
        ])
        .unwrap_err();
        assert!(matches!(err, MatrixError::Ragged { col: 1, .. }));
        assert_eq!(
            assemble_section_matrix(&[]).unwrap_err(),
            MatrixError::NoColumns
        );
    }

    #[test]
    fn three_by_two_cofactor_expansion() {
        let ring = Ring::new(vec!["x", "y"]);
        // [[y, 1], [x, 0]] -> det = -x
        let m = assemble_section_matrix(&[
            vec![poly("y", &ring), poly("x", &ring)],
            vec![poly("1", &ring), poly("0", &ring)],
        ])
        .unwrap();
        let minors = maximal_minors(&m);
        assert_eq!(minors, vec![poly("-x", &ring)]);
    }
}
