//! Brute-force colength oracle.
//!
//! Computes dim O/(I + m^{N+1}) by exact rational row reduction over the
//! monomial basis of degree <= N, raising N until the estimate stabilizes.
//! Intentionally naive: this module exists to cross-check the standard-basis
//! pipeline, so it shares no code path with it beyond polynomial arithmetic.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{Monomial, Polynomial};

/// Per-degree estimates and the final verdict of the stabilization loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationReport {
    /// (truncation degree, estimated colength) pairs, in increasing degree.
    pub table: Vec<(u32, usize)>,
    pub verdict: OracleVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Stabilized(usize),
    /// Heuristic: the estimate kept growing; the standard-basis pure-power
    /// test is the authoritative check.
    NotZeroDimensional,
    Inconclusive,
}

/// All monomials of total degree <= bound in `nvars` variables, in increasing
/// degrevlex order.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(var: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == exps.len() {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[var] = e;
            rec(var + 1, remaining - e, exps, out);
        }
        exps[var] = 0;
    }
    rec(0, bound, &mut exps, &mut out);
    out.sort();
    out
}

/// Row space of the truncations of m*g (deg m <= N) in reduced echelon form,
/// supporting rank queries and membership reduction.
struct RowSpace {
    // pivot column -> normalized row (sparse over column indices)
    pivots: HashMap<usize, Vec<(usize, BigRational)>>,
}

impl RowSpace {
    fn new() -> RowSpace {
        RowSpace {
            pivots: HashMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; returns the remainder.
    fn reduce(&self, mut row: Vec<(usize, BigRational)>) -> Vec<(usize, BigRational)> {
        loop {
            row.retain(|(_, c)| !c.is_zero());
            let Some(&(lead, _)) = row.first() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            let scale = row[0].1.clone();
            row = sparse_sub_scaled(&row, &scale, pivot);
        }
    }

    /// Reduces and, if a remainder is left, inserts it as a new pivot row.
    fn insert(&mut self, row: Vec<(usize, BigRational)>) {
        let rem = self.reduce(row);
        if rem.is_empty() {
            return;
        }
        let lead = rem[0].0;
        let inv = rem[0].1.clone().recip();
        let normalized: Vec<(usize, BigRational)> =
            rem.iter().map(|(i, c)| (*i, c * &inv)).collect();
        self.pivots.insert(lead, normalized);
    }

    fn contains(&self, row: Vec<(usize, BigRational)>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// a - scale * b over sorted sparse vectors.
fn sparse_sub_scaled(
    a: &[(usize, BigRational)],
    scale: &BigRational,
    b: &[(usize, BigRational)],
) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, ca)), Some((ib, cb))) => {
                if ia < ib {
                    out.push((*ia, ca.clone()));
                    i += 1;
                } else if ib < ia {
                    out.push((*ib, -(scale * cb)));
                    j += 1;
                } else {
                    let v = ca - scale * cb;
                    if !v.is_zero() {
                        out.push((*ia, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ia, ca)), None) => {
                out.push((*ia, ca.clone()));
                i += 1;
            }
            (None, Some((ib, cb))) => {
                out.push((*ib, -(scale * cb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn poly_to_row(p: &Polynomial, index: &HashMap<Monomial, usize>, bound: u32) -> Vec<(usize, BigRational)> {
    let mut row: Vec<(usize, BigRational)> = p
        .terms()
        .filter(|(m, _)| m.total_degree() <= bound)
        .map(|(m, c)| (index[m], c.clone()))
        .collect();
    row.sort_by_key(|(i, _)| *i);
    row
}

fn build_row_space(
    gens: &[Polynomial],
    basis: &[Monomial],
    index: &HashMap<Monomial, usize>,
    bound: u32,
) -> RowSpace {
    let mut space = RowSpace::new();
    for g in gens {
        for m in basis {
            let shifted = shift(g, m);
            let row = poly_to_row(&shifted, index, bound);
            space.insert(row);
        }
    }
    space
}

fn shift(g: &Polynomial, m: &Monomial) -> Polynomial {
    let term = Polynomial::monomial_term(g.ring(), m.clone(), BigRational::one());
    term.mul(g)
}

/// dim of (monomials of degree <= N) modulo the truncated multiples of the
/// generators; equals dim O/(I + m^{N+1}).
pub fn truncated_colength(gens: &[Polynomial], bound: u32) -> usize {
    assert!(!gens.is_empty() && gens.iter().all(|g| !g.is_zero()));
    let nvars = gens[0].ring().nvars();
    let basis = monomials_up_to(nvars, bound);
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let space = build_row_space(gens, &basis, &index, bound);
    basis.len() - space.rank()
}

/// Raises the truncation degree until two consecutive estimates agree and
/// every pure power x_j^N lies in the truncated span (the certificate that
/// rules out coincidental agreement), or gives up with a verdict.
pub fn stabilized_colength(gens: &[Polynomial], n_max: u32) -> TruncationReport {
    assert!(!gens.is_empty() && gens.iter().all(|g| !g.is_zero()));
    let nvars = gens[0].ring().nvars();
    let gen_degree = gens
        .iter()
        .map(|g| g.total_degree().unwrap())
        .max()
        .unwrap();
    let start = gen_degree.max(1);

    let mut table: Vec<(u32, usize)> = Vec::new();
    let mut growth_streak = 0u32;
    for n in start..=n_max {
        let basis = monomials_up_to(nvars, n);
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let space = build_row_space(gens, &basis, &index, n);
        let estimate = basis.len() - space.rank();

        let prev = table.last().copied();
        table.push((n, estimate));

        if let Some((_, p)) = prev {
            if estimate > p && n > gen_degree {
                growth_streak += 1;
                if growth_streak >= 2 {
                    // strictly increasing across three consecutive degrees
                    return TruncationReport {
                        table,
                        verdict: OracleVerdict::NotZeroDimensional,
                    };
                }
            } else {
                growth_streak = 0;
            }
            if estimate == p {
                let certified = (0..nvars).all(|j| {
                    let mut exps = vec![0u32; nvars];
                    exps[j] = n;
                    let m = Monomial::new(exps);
                    space.contains(vec![(index[&m], BigRational::one())])
                });
                if certified {
                    return TruncationReport {
                        table,
                        verdict: OracleVerdict::Stabilized(estimate),
                    };
                }
            }
        }
    }
    TruncationReport {
        table,
        verdict: OracleVerdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, Ring};

    #[test]
    fn monomial_count_small() {
        assert_eq!(monomials_up_to(2, 4).len(), 15);
        assert_eq!(monomials_up_to(1, 6).len(), 7);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }

    #[test]
    fn maximal_ideal_truncates_to_one() {
        let ring = Ring::new(vec!["x", "y"]);
        let gens = vec![
            parse_polynomial("x", &ring).unwrap(),
            parse_polynomial("y", &ring).unwrap(),
        ];
        assert_eq!(truncated_colength(&gens, 3), 1);
    }

    #[test]
    fn unit_times_variable() {
        let ring = Ring::new(vec!["x"]);
        let gens = vec![parse_polynomial("x - x^2", &ring).unwrap()];
        assert_eq!(truncated_colength(&gens, 6), 1);
        let report = stabilized_colength(&gens, 24);
        assert_eq!(report.verdict, OracleVerdict::Stabilized(1));
    }

    #[test]
    fn monomial_curve_counts() {
        let ring = Ring::new(vec!["x", "y"]);
        let gens = vec![parse_polynomial("x*y", &ring).unwrap()];
        // 1, x, y, x^2, y^2, x^3, y^3, x^4, y^4
        assert_eq!(truncated_colength(&gens, 4), 9);
        let report = stabilized_colength(&gens, 24);
        assert_eq!(report.verdict, OracleVerdict::NotZeroDimensional);
    }

    #[test]
    fn a1_stabilizes_at_two() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let gens = vec![
            parse_polynomial("x", &ring).unwrap(),
            parse_polynomial("y", &ring).unwrap(),
            parse_polynomial("z^2", &ring).unwrap(),
        ];
        let report = stabilized_colength(&gens, 24);
        assert_eq!(report.verdict, OracleVerdict::Stabilized(2));
        // full A1 minor ideal, not just its leading ideal
        let gens = vec![
            parse_polynomial("x^2+y^2+z^2", &ring).unwrap(),
            parse_polynomial("2*x", &ring).unwrap(),
            parse_polynomial("2*y", &ring).unwrap(),
        ];
        let report = stabilized_colength(&gens, 24);
        assert_eq!(report.verdict, OracleVerdict::Stabilized(2));
    }

    #[test]
    fn invariance_under_row_operations() {
        let ring = Ring::new(vec!["x", "y"]);
        let p = |s| parse_polynomial(s, &ring).unwrap();
        let base = vec![p("x^2 - y^3"), p("x*y")];
        let permuted = vec![p("x*y"), p("x^2 - y^3")];
        let scaled = vec![p("3*x^2 - 3*y^3"), p("x*y")];
        let mixed = vec![p("x^2 - y^3 + x*y"), p("x*y")];
        let expect = stabilized_colength(&base, 24).verdict;
        assert!(matches!(expect, OracleVerdict::Stabilized(_)));
        assert_eq!(stabilized_colength(&permuted, 24).verdict, expect);
        assert_eq!(stabilized_colength(&scaled, 24).verdict, expect);
        assert_eq!(stabilized_colength(&mixed, 24).verdict, expect);
    }
}
