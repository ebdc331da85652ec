//! Exact multivariate polynomial arithmetic over the rationals, monomial
//! orderings (global and local), parsing, printing and formal differentials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ambient polynomial ring context: an ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Exponent vector of a power product. Length equals the ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// True when this monomial is a pure power of a single variable (or 1).
    pub fn pure_power_var(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect();
        match nonzero.len() {
            1 => Some(nonzero[0]),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders the monomial in the input grammar, e.g. `x*y^2`, or `1`.
    pub fn format(&self, ring: &Ring) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.vars[i].clone()),
                _ => parts.push(format!("{}^{}", ring.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Degree reverse lexicographic comparison (ascending): higher total degree is
/// larger; on ties the monomial whose last differing exponent is smaller wins.
fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.exps.len()).rev() {
        if a.exps[i] != b.exps[i] {
            // last differing exponent smaller => larger monomial
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The intrinsic `Ord` on monomials is global degrevlex; local comparisons go
/// through [`MonomialOrder::compare`].
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.exps.len(), other.exps.len(), "monomial length mismatch");
        degrevlex_cmp(self, other)
    }
}

/// A total, multiplicative order on monomials.
///
/// `DegRevLex` is global (1 is the smallest monomial); `NegDegRevLex` is local
/// (1 is the largest monomial), which is what models computation in the ring
/// of germs at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    NegDegRevLex,
}

impl MonomialOrder {
    pub fn is_local(self) -> bool {
        matches!(self, MonomialOrder::NegDegRevLex)
    }

    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.exps.len(), b.exps.len(), "monomial length mismatch");
        match self {
            MonomialOrder::DegRevLex => degrevlex_cmp(a, b),
            MonomialOrder::NegDegRevLex => {
                match b.total_degree().cmp(&a.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // equal degrees: same tie-break as degrevlex
                degrevlex_cmp(a, b)
            }
        }
    }
}

/// Multivariate polynomial with exact rational coefficients, kept in canonical
/// form: no stored coefficient is zero.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars == other.ring.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn assert_same_ring(a: &Polynomial, b: &Polynomial) {
    assert_eq!(
        a.ring.vars, b.ring.vars,
        "mismatched ring contexts: {:?} vs {:?}",
        a.ring.vars, b.ring.vars
    );
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, BigRational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.terms.insert(Monomial::var(ring.nvars(), i), BigRational::one());
        p
    }

    pub fn monomial_term(ring: &Arc<Ring>, m: Monomial, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    /// A unit of the local ring: nonzero constant term.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Maximum total degree among terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Order-maximal term. None for the zero polynomial.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        match order {
            // intrinsic storage order is degrevlex ascending
            MonomialOrder::DegRevLex => self.terms.iter().next_back(),
            MonomialOrder::NegDegRevLex => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.compare(a, b)),
        }
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_same_ring(self, other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_same_ring(self, other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_same_ring(self, other);
        let mut r = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.insert_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// self - c * m * g, the basic reduction step.
    pub fn sub_scaled(&self, c: &BigRational, m: &Monomial, g: &Polynomial) -> Polynomial {
        assert_same_ring(self, g);
        let mut r = self.clone();
        for (mg, cg) in &g.terms {
            r.insert_term(m.mul(mg), -(c * cg));
        }
        r
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] = e - 1;
            r.insert_term(Monomial::new(exps), c * BigRational::from_integer(BigInt::from(e)));
        }
        r
    }

    /// Formal differential (∂/∂x_1, ..., ∂/∂x_n).
    pub fn differential(&self) -> OneForm {
        OneForm {
            coeffs: (0..self.ring.nvars())
                .map(|i| self.partial_derivative(i))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Drops every term of total degree > bound.
    pub fn truncate_degree(&self, bound: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scales by a positive rational so all coefficients become integers with
    /// content 1. No-op on zero.
    pub fn clear_content(&self) -> Polynomial {
        use num_bigint::Sign;
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            num_gcd = num_integer::gcd(num_gcd, scaled);
        }
        if num_gcd.sign() == Sign::NoSign {
            num_gcd = BigInt::one();
        }
        let factor = BigRational::new(denom_lcm, num_gcd);
        self.scalar_mul(&factor)
    }
}

impl fmt::Display for Polynomial {
    /// Prints terms in decreasing global degrevlex order with explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m.format(&self.ring))?;
            } else {
                write!(f, "{}*{}", abs, m.format(&self.ring))?;
            }
        }
        Ok(())
    }
}

/// A 1-form Σ a_j dx_j given by its coefficient vector (a_1, ..., a_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    coeffs: Vec<Polynomial>,
}

impl OneForm {
    pub fn new(coeffs: Vec<Polynomial>) -> OneForm {
        assert!(!coeffs.is_empty(), "1-form needs at least one coefficient");
        let n = coeffs[0].ring().nvars();
        assert_eq!(coeffs.len(), n, "1-form must have exactly n coefficients");
        OneForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }
}

mod num_integer {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    pub fn gcd(a: BigInt, b: BigInt) -> BigInt {
        let (mut a, mut b) = (a.abs(), b.abs());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(a: BigInt, b: BigInt) -> BigInt {
        if a.is_zero() || b.is_zero() {
            return BigInt::zero();
        }
        let g = gcd(a.clone(), b.clone());
        (a / g) * b
    }
}

pub mod parse;

pub use parse::{parse_polynomial, ParseError};
