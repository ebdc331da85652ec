//! Standard bases over a local monomial order via Mora's tangent-cone
//! algorithm, leading ideals, zero-dimensionality and colength.
//!
//! The colength of the maximal-minor ideal under the local order is the index
//! being computed; everything else in this module exists to make that number
//! fall out: weak normal forms with the ecart-controlled reducer rule, a
//! Buchberger-style completion loop, and staircase enumeration.

use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("ideal generators must be nonempty and nonzero (generator {0} is zero)")]
    ZeroGenerator(usize),
    #[error("ideal generators must be nonempty")]
    Empty,
    #[error("standard basis computation requires a local order")]
    NotLocal,
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

/// Caps on the completion loop. Exceeding a cap is a hard error, never a
/// wrong answer.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 50_000,
            max_steps: 2_000_000,
        }
    }
}

/// Generators of an ideal together with the order the basis will be computed in.
#[derive(Debug, Clone)]
pub struct IdealGens {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
}

impl IdealGens {
    pub fn new(generators: Vec<Polynomial>, order: MonomialOrder) -> Result<IdealGens, BasisError> {
        if generators.is_empty() {
            return Err(BasisError::Empty);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(BasisError::ZeroGenerator(i));
            }
        }
        Ok(IdealGens { generators, order })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.generators[0].ring()
    }
}

#[derive(Debug, Clone)]
pub struct StandardBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    leading_monomials: Vec<Monomial>,
}

impl StandardBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading_monomials
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Enumeration (or non-finiteness verdict) of the monomials outside the
/// leading ideal. When finite, the count is the colength dim O/I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub monomials_outside: Vec<Monomial>,
    pub finite: bool,
}

impl Staircase {
    pub fn colength(&self) -> Option<usize> {
        self.finite.then_some(self.monomials_outside.len())
    }
}

/// Total degree minus the total degree of the leading monomial; the control
/// quantity of Mora's reducer choice. Non-negative over a local order.
pub fn ecart(p: &Polynomial, order: MonomialOrder) -> u32 {
    let lm = p
        .leading_monomial(order)
        .expect("ecart of the zero polynomial");
    p.total_degree().unwrap() - lm.total_degree()
}

/// Mora weak normal form: returns r with u*p - r in <G> for a unit u of the
/// local ring, and either r = 0 or no leading monomial of G divides the
/// leading monomial of r.
///
/// Reducer choice: among applicable reducers take minimal ecart, smallest
/// index first; when the chosen reducer has strictly larger ecart than the
/// current remainder, the remainder itself joins the reducer set (Mora's
/// termination device).
pub fn mora_normal_form(
    p: &Polynomial,
    reducers: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<Polynomial, BasisError> {
    let mut steps = 0usize;
    mora_nf_counted(p, reducers, order, budget.max_steps, &mut steps)
}

fn mora_nf_counted(
    p: &Polynomial,
    reducers: &[Polynomial],
    order: MonomialOrder,
    max_steps: usize,
    steps: &mut usize,
) -> Result<Polynomial, BasisError> {
    // (polynomial, cached leading monomial, cached ecart)
    let mut pool: Vec<(Polynomial, Monomial, u32)> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let lm = g.leading_monomial(order).unwrap().clone();
            let e = ecart(g, order);
            (g.clone(), lm, e)
        })
        .collect();
    let mut h = p.clone();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        let lm_h = h.leading_monomial(order).unwrap().clone();
        let mut best: Option<usize> = None;
        for (i, (_, lm_g, e_g)) in pool.iter().enumerate() {
            if !lm_g.divides(&lm_h) {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    if *e_g < pool[b].2 {
                        best = Some(i);
                    }
                }
            }
        }
        let Some(i) = best else {
            return Ok(h);
        };
        *steps += 1;
        if *steps > max_steps {
            return Err(BasisError::Budget(format!(
                "reduction step limit {max_steps} exceeded"
            )));
        }
        let e_h = h.total_degree().unwrap() - lm_h.total_degree();
        if pool[i].2 > e_h {
            pool.push((h.clone(), lm_h.clone(), e_h));
        }
        let (g, lm_g, _) = &pool[i];
        let factor = lm_g.div_into(&lm_h);
        let scale: BigRational = h.coeff(&lm_h) / g.coeff(lm_g);
        h = h.sub_scaled(&scale, &factor, g);
        h = h.clear_content();
    }
}

/// The S-polynomial of a pair: both leading terms lifted to their lcm and
/// cancelled.
pub fn s_polynomial(a: &Polynomial, b: &Polynomial, order: MonomialOrder) -> Polynomial {
    let lm_a = a.leading_monomial(order).unwrap().clone();
    let lm_b = b.leading_monomial(order).unwrap().clone();
    let lcm = lm_a.lcm(&lm_b);
    let ca = a.coeff(&lm_a);
    let cb = b.coeff(&lm_b);
    let ta = Polynomial::monomial_term(a.ring(), lm_a.div_into(&lcm), ca.recip());
    let tb = Polynomial::monomial_term(b.ring(), lm_b.div_into(&lcm), cb.recip());
    ta.mul(a).sub(&tb.mul(b))
}

/// Mora's completion: Buchberger loop with weak normal forms. Pair selection
/// follows the normal strategy (order-smallest lcm first); pairs with coprime
/// leading monomials are skipped by the product criterion.
pub fn compute_standard_basis(ideal: &IdealGens, budget: &Budget) -> Result<StandardBasis, BasisError> {
    let order = ideal.order();
    if !order.is_local() {
        return Err(BasisError::NotLocal);
    }
    let mut basis: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.clear_content())
        .collect();
    let mut lms: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order).unwrap().clone())
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    let mut pairs_done = 0usize;
    let mut steps = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm in the ambient order, ties by index
        let mut best = 0usize;
        let mut best_lcm = lms[pairs[0].0].lcm(&lms[pairs[0].1]);
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = lms[i].lcm(&lms[j]);
            if order.compare(&l, &best_lcm) == Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.swap_remove(best);

        pairs_done += 1;
        if pairs_done > budget.max_pairs {
            return Err(BasisError::Budget(format!(
                "pair limit {} exceeded",
                budget.max_pairs
            )));
        }
        if lms[i].coprime(&lms[j]) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let nf = mora_nf_counted(&s, &basis, order, budget.max_steps, &mut steps)?;
        if nf.is_zero() {
            continue;
        }
        let nf = nf.clear_content();
        let lm = nf.leading_monomial(order).unwrap().clone();
        let idx = basis.len();
        basis.push(nf);
        lms.push(lm);
        for k in 0..idx {
            pairs.push((k, idx));
        }
    }

    Ok(StandardBasis {
        elements: basis,
        order,
        leading_monomials: lms,
    })
}

/// True iff every variable has some pure power among the leading monomials
/// (a leading monomial 1 counts for every variable: the ideal is the whole
/// ring).
pub fn is_zero_dimensional(basis: &StandardBasis, nvars: usize) -> bool {
    pure_power_bounds(basis, nvars).is_some()
}

/// For each variable, the least exponent of a pure-power leading monomial in
/// that variable; None when some variable has no pure power.
fn pure_power_bounds(basis: &StandardBasis, nvars: usize) -> Option<Vec<u32>> {
    if basis.leading_monomials.iter().any(|m| m.is_one()) {
        return Some(vec![0; nvars]);
    }
    let mut bounds = vec![u32::MAX; nvars];
    for m in &basis.leading_monomials {
        if let Some(v) = m.pure_power_var() {
            let e = m.exps()[v];
            if e < bounds[v] {
                bounds[v] = e;
            }
        }
    }
    bounds.iter().all(|&b| b < u32::MAX).then_some(bounds)
}

/// Enumerates the staircase: the monomials divisible by no leading monomial.
/// Finite exactly when the leading ideal contains a pure power of every
/// variable; the count is then the colength.
pub fn colength(basis: &StandardBasis, nvars: usize) -> Staircase {
    let Some(bounds) = pure_power_bounds(basis, nvars) else {
        return Staircase {
            monomials_outside: Vec::new(),
            finite: false,
        };
    };
    let mut outside = Vec::new();
    let mut exps = vec![0u32; nvars];
    enumerate_box(&bounds, 0, &mut exps, &mut |exps| {
        let m = Monomial::new(exps.to_vec());
        if !basis.leading_monomials.iter().any(|lm| lm.divides(&m)) {
            outside.push(m);
        }
    });
    // report order: by total degree, then lexicographically (1, x, y, y^2, ...)
    outside.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.exps().cmp(a.exps()))
    });
    Staircase {
        monomials_outside: outside,
        finite: true,
    }
}

fn enumerate_box(bounds: &[u32], var: usize, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if var == bounds.len() {
        f(exps);
        return;
    }
    // bounds[var] == 0 (a unit in the ideal) enumerates nothing
    for e in 0..bounds[var] {
        exps[var] = e;
        enumerate_box(bounds, var + 1, exps, f);
    }
    exps[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    const LOCAL: MonomialOrder = MonomialOrder::NegDegRevLex;

    fn gens(strs: &[&str], ring: &Arc<Ring>) -> IdealGens {
        let polys = strs
            .iter()
            .map(|s| parse_polynomial(s, ring).unwrap())
            .collect();
        IdealGens::new(polys, LOCAL).unwrap()
    }

    fn basis_of(strs: &[&str], ring: &Arc<Ring>) -> StandardBasis {
        compute_standard_basis(&gens(strs, ring), &Budget::default()).unwrap()
    }

    #[test]
    fn ecart_examples() {
        let ring = Ring::new(vec!["x", "y"]);
        let p = |s| parse_polynomial(s, &ring).unwrap();
        assert_eq!(ecart(&p("x"), LOCAL), 0);
        assert_eq!(ecart(&p("x + x^3"), LOCAL), 2);
        assert_eq!(ecart(&p("1 + x + y^2"), LOCAL), 2);
    }

    #[test]
    fn mora_nf_exact_division() {
        let ring = Ring::new(vec!["x"]);
        let p = |s| parse_polynomial(s, &ring).unwrap();
        let r = mora_normal_form(&p("x"), &[p("x")], LOCAL, &Budget::default()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn mora_nf_uses_unit() {
        // x reduces to 0 against x - x^2 because 1 - x is a local unit
        let ring = Ring::new(vec!["x"]);
        let p = |s| parse_polynomial(s, &ring).unwrap();
        let r = mora_normal_form(&p("x"), &[p("x - x^2")], LOCAL, &Budget::default()).unwrap();
        assert!(r.is_zero(), "got {r}");
    }

    #[test]
    fn mora_nf_irreducible() {
        let ring = Ring::new(vec!["x", "y"]);
        let p = |s| parse_polynomial(s, &ring).unwrap();
        let r = mora_normal_form(&p("y"), &[p("x")], LOCAL, &Budget::default()).unwrap();
        assert_eq!(r, p("y"));
    }

    #[test]
    fn already_a_basis() {
        let ring = Ring::new(vec!["x", "y"]);
        let b = basis_of(&["x", "y"], &ring);
        let lms: Vec<_> = b.leading_monomials().to_vec();
        assert!(lms.contains(&Monomial::new(vec![1, 0])));
        assert!(lms.contains(&Monomial::new(vec![0, 1])));
        assert!(is_zero_dimensional(&b, 2));
        assert_eq!(colength(&b, 2).colength(), Some(1));
    }

    #[test]
    fn local_leading_ideal_absorbs_unit_factor() {
        let ring = Ring::new(vec!["x"]);
        let b = basis_of(&["x - x^2"], &ring);
        let st = colength(&b, 1);
        assert_eq!(st.colength(), Some(1));
        assert!(st.monomials_outside[0].is_one());
    }

    #[test]
    fn a1_leading_ideal() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let b = basis_of(&["x^2+y^2+z^2", "2*x", "2*y"], &ring);
        assert!(is_zero_dimensional(&b, 3));
        let st = colength(&b, 3);
        assert_eq!(st.colength(), Some(2));
        let strs: Vec<String> = st
            .monomials_outside
            .iter()
            .map(|m| m.format(&ring))
            .collect();
        assert_eq!(strs, vec!["1", "z"]);
    }

    #[test]
    fn non_zero_dimensional_detected() {
        let ring = Ring::new(vec!["x", "y"]);
        let b = basis_of(&["x*y"], &ring);
        assert!(!is_zero_dimensional(&b, 2));
        assert!(!colength(&b, 2).finite);
    }

    #[test]
    fn staircase_enumeration() {
        let ring = Ring::new(vec!["x", "y"]);
        let b = basis_of(&["x^2", "x*y", "y^3"], &ring);
        let st = colength(&b, 2);
        assert_eq!(st.colength(), Some(4));
        let strs: Vec<String> = st
            .monomials_outside
            .iter()
            .map(|m| m.format(&ring))
            .collect();
        assert_eq!(strs, vec!["1", "x", "y", "y^2"]);
    }

    #[test]
    fn unit_generator_gives_colength_zero() {
        let ring = Ring::new(vec!["x", "y"]);
        let b = basis_of(&["1 + x"], &ring);
        let st = colength(&b, 2);
        assert_eq!(st.colength(), Some(0));
    }

    #[test]
    fn zero_generator_rejected() {
        let ring = Ring::new(vec!["x"]);
        let z = parse_polynomial("0", &ring).unwrap();
        let err = IdealGens::new(vec![z], LOCAL).unwrap_err();
        assert_eq!(err, BasisError::ZeroGenerator(0));
    }

    #[test]
    fn budget_is_enforced() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let ideal = gens(&["x^2+y^2+z^2", "2*x", "2*y"], &ring);
        let tiny = Budget {
            max_pairs: 1,
            max_steps: 2_000_000,
        };
        let err = compute_standard_basis(&ideal, &tiny);
        assert!(matches!(err, Err(BasisError::Budget(_))));
    }

    #[test]
    fn global_order_rejected() {
        let ring = Ring::new(vec!["x"]);
        let x = parse_polynomial("x", &ring).unwrap();
        let ideal = IdealGens::new(vec![x], MonomialOrder::DegRevLex).unwrap();
        assert!(matches!(
            compute_standard_basis(&ideal, &Budget::default()),
            Err(BasisError::NotLocal)
        ));
    }

    #[test]
    fn unit_scaling_leaves_colength_unchanged() {
        let ring = Ring::new(vec!["x", "y"]);
        let base = colength(&basis_of(&["x^2 - y^3", "x*y"], &ring), 2);
        // (1 + x) is a unit of the local ring
        let scaled = colength(
            &basis_of(&["(1 + x)*(x^2 - y^3)", "x*y"], &ring),
            2,
        );
        assert_eq!(base.colength(), scaled.colength());
    }

    #[test]
    fn generator_order_independence() {
        let ring = Ring::new(vec!["x", "y"]);
        let a = colength(&basis_of(&["x^2 - y^3", "x*y"], &ring), 2);
        let b = colength(&basis_of(&["x*y", "x^2 - y^3"], &ring), 2);
        assert_eq!(a.colength(), b.colength());
        assert_eq!(a.monomials_outside, b.monomials_outside);
    }
}
