//! Orchestration of the two index computations: collections of sections of a
//! bundle at a smooth point, and collections of 1-forms on an isolated
//! complete intersection singularity. Owns validation of the combinatorial
//! constraints on the Chern degrees k_i.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::minors::{assemble_icis_matrix, assemble_section_matrix, maximal_minors};
use crate::oracle::{stabilized_colength, OracleVerdict, TruncationReport};
use crate::polyring::{Monomial, MonomialOrder, OneForm, Polynomial, Ring};
use crate::standard_basis::{
    colength, compute_standard_basis, BasisError, Budget, IdealGens,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Collections of sections of a rank-m bundle; the index ideal is
    /// generated by the maximal minors of the section matrices.
    Smooth,
    /// Collections of 1-forms on V = f^{-1}(0); the ideal adds the defining
    /// functions and prepends their differentials to each matrix.
    Icis,
}

/// One collection with its Chern degree k: m - k + 1 sections (smooth mode)
/// or n - l - k + 1 forms (ICIS mode).
#[derive(Debug, Clone)]
pub struct CollectionSpec {
    pub k: usize,
    /// Member coefficient vectors: length m in smooth mode, n in ICIS mode.
    pub members: Vec<Vec<Polynomial>>,
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub mode: Mode,
    pub ring: Arc<Ring>,
    /// Bundle rank m; smooth mode only.
    pub bundle_rank: Option<usize>,
    /// Defining map (f_1, ..., f_l); ICIS mode only, may be empty.
    pub map: Vec<Polynomial>,
    pub collections: Vec<CollectionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("smooth mode requires a bundle rank")]
    MissingRank,
    #[error("smooth mode takes no defining map")]
    MapInSmoothMode,
    #[error("collection {i}: k must be positive")]
    NonPositiveK { i: usize },
    #[error("collection {i}: k = {k} exceeds the bound {bound} ({context})")]
    KTooLarge {
        i: usize,
        k: usize,
        bound: usize,
        context: &'static str,
    },
    #[error("collection {i}: expected {expected} members for k = {k}, got {got}")]
    WrongMemberCount {
        i: usize,
        k: usize,
        expected: usize,
        got: usize,
    },
    #[error("collection {i}, member {j}: expected {expected} components, got {got}")]
    WrongComponentCount {
        i: usize,
        j: usize,
        expected: usize,
        got: usize,
    },
    #[error("sum of k_i is {got}, must equal {expected} ({context})")]
    DegreeSumMismatch {
        got: usize,
        expected: usize,
        context: &'static str,
    },
    #[error("defining map has {l} components but the ring has only {n} variables")]
    MapTooLong { l: usize, n: usize },
    #[error("no collections given")]
    NoCollections,
}

impl ProblemSpec {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }
}

/// Checks every combinatorial constraint; returns the full list of violations.
pub fn validate(spec: &ProblemSpec) -> Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let n = spec.nvars();
    let l = spec.map.len();
    match spec.mode {
        Mode::Smooth => {
            if spec.bundle_rank.is_none() {
                v.push(Violation::MissingRank);
            }
            if !spec.map.is_empty() {
                v.push(Violation::MapInSmoothMode);
            }
        }
        Mode::Icis => {
            if l > n {
                v.push(Violation::MapTooLong { l, n });
            }
        }
    }
    if spec.collections.is_empty() {
        v.push(Violation::NoCollections);
    }
    // per-member vector length: m components in smooth mode, n in ICIS mode
    let component_count = match spec.mode {
        Mode::Smooth => spec.bundle_rank.unwrap_or(n),
        Mode::Icis => n,
    };
    let (k_bound, bound_context) = match spec.mode {
        Mode::Smooth => (spec.bundle_rank.unwrap_or(n), "k <= m"),
        Mode::Icis => (n.saturating_sub(l), "k <= n - l"),
    };
    let mut k_sum = 0usize;
    for (i, c) in spec.collections.iter().enumerate() {
        if c.k == 0 {
            v.push(Violation::NonPositiveK { i });
            continue;
        }
        k_sum += c.k;
        if c.k > k_bound {
            v.push(Violation::KTooLarge {
                i,
                k: c.k,
                bound: k_bound,
                context: bound_context,
            });
            continue;
        }
        let expected = k_bound - c.k + 1;
        if c.members.len() != expected {
            v.push(Violation::WrongMemberCount {
                i,
                k: c.k,
                expected,
                got: c.members.len(),
            });
        }
        for (j, member) in c.members.iter().enumerate() {
            if member.len() != component_count {
                v.push(Violation::WrongComponentCount {
                    i,
                    j,
                    expected: component_count,
                    got: member.len(),
                });
            }
        }
    }
    let (expected_sum, sum_context) = match spec.mode {
        Mode::Smooth => (n, "sum k_i = n"),
        Mode::Icis => (n.saturating_sub(l), "sum k_i = n - l"),
    };
    if k_sum != expected_sum {
        v.push(Violation::DegreeSumMismatch {
            got: k_sum,
            expected: expected_sum,
            context: sum_context,
        });
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexValue {
    Finite(usize),
    /// The minors ideal is not zero-dimensional: the degeneracy locus is not
    /// isolated at the origin.
    Infinite,
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(v) => write!(f, "{v}"),
            IndexValue::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndexResult {
    pub index: IndexValue,
    pub generator_count: usize,
    pub basis_size: usize,
    pub staircase: Vec<Monomial>,
    pub oracle: Option<TruncationReport>,
}

#[derive(Debug, Clone, Error)]
pub enum IndexError {
    #[error("invalid problem: {}", format_violations(.0))]
    Validation(Vec<Violation>),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("oracle disagreement: pipeline says {pipeline}, oracle says {oracle}")]
    OracleDisagreement { pipeline: String, oracle: String },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Concatenates, in deterministic order, the generators of the index ideal:
/// the defining functions (ICIS mode) followed by the maximal minors of each
/// collection's matrix. Identically-zero generators are dropped.
pub fn build_index_ideal(spec: &ProblemSpec) -> Result<Vec<Polynomial>, IndexError> {
    validate(spec).map_err(IndexError::Validation)?;
    let mut gens: Vec<Polynomial> = Vec::new();
    match spec.mode {
        Mode::Smooth => {
            for c in &spec.collections {
                let m = assemble_section_matrix(&c.members)
                    .expect("validated dimensions");
                gens.extend(maximal_minors(&m));
            }
        }
        Mode::Icis => {
            gens.extend(spec.map.iter().filter(|f| !f.is_zero()).cloned());
            for c in &spec.collections {
                let forms: Vec<OneForm> = c
                    .members
                    .iter()
                    .map(|v| OneForm::new(v.clone()))
                    .collect();
                let m = assemble_icis_matrix(&spec.map, &forms)
                    .expect("validated dimensions");
                gens.extend(maximal_minors(&m));
            }
        }
    }
    Ok(gens)
}

/// The index as the colength of the minors ideal under the local order,
/// optionally cross-checked against the brute-force oracle. Oracle
/// disagreement is a hard error.
pub fn compute_index(
    spec: &ProblemSpec,
    with_oracle: bool,
    budget: &Budget,
    oracle_n_max: u32,
) -> Result<IndexResult, IndexError> {
    let gens = build_index_ideal(spec)?;
    if gens.is_empty() {
        // every minor vanished identically: the zero ideal, nothing isolated
        return Ok(IndexResult {
            index: IndexValue::Infinite,
            generator_count: 0,
            basis_size: 0,
            staircase: Vec::new(),
            oracle: None,
        });
    }
    let ideal = IdealGens::new(gens.clone(), MonomialOrder::NegDegRevLex)?;
    let basis = compute_standard_basis(&ideal, budget)?;
    let staircase = colength(&basis, spec.nvars());
    let index = match staircase.colength() {
        Some(c) => IndexValue::Finite(c),
        None => IndexValue::Infinite,
    };

    let oracle = if with_oracle {
        let report = stabilized_colength(&gens, oracle_n_max);
        match (&index, &report.verdict) {
            (IndexValue::Finite(c), OracleVerdict::Stabilized(o)) if c == o => {}
            (IndexValue::Infinite, OracleVerdict::NotZeroDimensional) => {}
            (_, OracleVerdict::Inconclusive) => {}
            (pipeline, verdict) => {
                return Err(IndexError::OracleDisagreement {
                    pipeline: pipeline.to_string(),
                    oracle: format!("{verdict:?}"),
                });
            }
        }
        Some(report)
    } else {
        None
    };

    Ok(IndexResult {
        index,
        generator_count: ideal.generators().len(),
        basis_size: basis.len(),
        staircase: staircase.monomials_outside,
        oracle,
    })
}
