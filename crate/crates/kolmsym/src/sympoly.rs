//! Exact multivariate Laurent polynomials over arbitrary-precision rationals,
//! with jet variables, total derivatives, and substitution modulo an evolution
//! PDE in solved form.
//!
//! This module is the symbolic backbone of the crate: structure constants,
//! prolongations, and determining-equation checks all reduce to exact
//! arithmetic here. No floating point enters this module.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

/// Arbitrary-precision rational. `BigRational` keeps values in lowest terms
/// with a positive denominator, which is exactly the canonical form we need.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Convenience constructor for small integers as rationals.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Largest total derivative order a jet variable may carry. Order 4 is enough
/// for the second prolongation of a second-order equation together with the
/// derivative consequences used during reduction.
pub const MAX_JET_ORDER: u8 = 4;

const MAX_VARS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymPolyError {
    #[error("jet order overflow: {0} exceeds maximum order {MAX_JET_ORDER}")]
    JetOrderOverflow(String),
    #[error("variable space mismatch: {0:?} vs {1:?}")]
    SpaceMismatch(VarSpace, VarSpace),
    #[error("right-hand side contains evolution-direction derivatives: {0}")]
    RhsNotSolved(String),
}

/// Fixed variable universe of a PDE fixture. Every polynomial carries its
/// space; mixing spaces is a programming error and panics in arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSpace {
    /// Independent (t, x, y), dependent u.
    Txy,
    /// Independent (z1, z2), dependent w. Reduced-equation fixtures.
    Z12,
    /// Independent (t, x), dependent u. Inverse-square-potential heat fixture.
    Tx,
}

impl VarSpace {
    pub fn nvars(self) -> usize {
        match self {
            VarSpace::Txy => 3,
            VarSpace::Z12 | VarSpace::Tx => 2,
        }
    }

    pub fn var_name(self, i: usize) -> &'static str {
        match (self, i) {
            (VarSpace::Txy, 0) => "t",
            (VarSpace::Txy, 1) => "x",
            (VarSpace::Txy, 2) => "y",
            (VarSpace::Z12, 0) => "z1",
            (VarSpace::Z12, 1) => "z2",
            (VarSpace::Tx, 0) => "t",
            (VarSpace::Tx, 1) => "x",
            _ => panic!("variable index {i} out of range for {self:?}"),
        }
    }

    /// Short subscript used when rendering jet variables (`u_tx`, `w_122`).
    fn sub_name(self, i: usize) -> &'static str {
        match (self, i) {
            (VarSpace::Z12, 0) => "1",
            (VarSpace::Z12, 1) => "2",
            _ => self.var_name(i),
        }
    }

    pub fn dep_name(self) -> &'static str {
        match self {
            VarSpace::Txy | VarSpace::Tx => "u",
            VarSpace::Z12 => "w",
        }
    }
}

/// Derivative multi-index applied to the dependent variable. The zero index
/// is the dependent variable itself. Entries count derivatives with respect
/// to the corresponding independent variable, so mixed derivatives are
/// automatically in canonical symmetric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    idx: [u8; MAX_VARS],
}

impl JetVar {
    /// The dependent variable itself (order-0 jet).
    pub const DEP: JetVar = JetVar { idx: [0; MAX_VARS] };

    pub fn new(idx: [u8; MAX_VARS]) -> Result<JetVar, SymPolyError> {
        let order: u8 = idx.iter().sum();
        if order > MAX_JET_ORDER {
            return Err(SymPolyError::JetOrderOverflow(format!("{idx:?}")));
        }
        Ok(JetVar { idx })
    }

    /// Panicking constructor for literal indices known to be in range.
    pub fn of(idx: [u8; MAX_VARS]) -> JetVar {
        JetVar::new(idx).expect("jet order within bound")
    }

    pub fn order(&self) -> u8 {
        self.idx.iter().sum()
    }

    pub fn count(&self, var: usize) -> u8 {
        self.idx[var]
    }

    /// One more derivative in direction `var`.
    pub fn bump(&self, var: usize) -> Result<JetVar, SymPolyError> {
        let mut idx = self.idx;
        idx[var] += 1;
        JetVar::new(idx)
    }

    /// One fewer derivative in direction `var`; None if there is none.
    pub fn drop(&self, var: usize) -> Option<JetVar> {
        if self.idx[var] == 0 {
            return None;
        }
        let mut idx = self.idx;
        idx[var] -= 1;
        Some(JetVar { idx })
    }

    pub fn render(&self, space: VarSpace) -> String {
        if self.order() == 0 {
            return space.dep_name().to_string();
        }
        let mut s = format!("{}_", space.dep_name());
        for (i, &c) in self.idx.iter().enumerate() {
            for _ in 0..c {
                s.push_str(space.sub_name(i));
            }
        }
        s
    }
}

/// Monomial: integer (possibly negative) exponents on the independent
/// variables and non-negative powers of jet variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono {
    base: [i32; MAX_VARS],
    jets: BTreeMap<JetVar, u32>,
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn base_var(i: usize, exp: i32) -> Mono {
        let mut base = [0; MAX_VARS];
        base[i] = exp;
        Mono { base, jets: BTreeMap::new() }
    }

    pub fn jet(j: JetVar, pow: u32) -> Mono {
        let mut jets = BTreeMap::new();
        if pow > 0 {
            jets.insert(j, pow);
        }
        Mono { base: [0; MAX_VARS], jets }
    }

    pub fn base_exp(&self, i: usize) -> i32 {
        self.base[i]
    }

    pub fn jet_pow(&self, j: &JetVar) -> u32 {
        self.jets.get(j).copied().unwrap_or(0)
    }

    pub fn jets(&self) -> impl Iterator<Item = (&JetVar, &u32)> {
        self.jets.iter()
    }

    /// Highest jet order among factors, 0 for a pure base monomial.
    pub fn jet_order(&self) -> u8 {
        self.jets.keys().map(|j| j.order()).max().unwrap_or(0)
    }

    fn product(&self, other: &Mono) -> Mono {
        let mut base = self.base;
        for i in 0..MAX_VARS {
            base[i] += other.base[i];
        }
        let mut jets = self.jets.clone();
        for (j, p) in &other.jets {
            *jets.entry(*j).or_insert(0) += p;
        }
        Mono { base, jets }
    }

    fn render(&self, space: VarSpace) -> String {
        let mut parts: Vec<String> = Vec::new();
        for i in 0..space.nvars() {
            let e = self.base[i];
            if e == 1 {
                parts.push(space.var_name(i).to_string());
            } else if e != 0 {
                parts.push(format!("{}^{}", space.var_name(i), e));
            }
        }
        for (j, p) in &self.jets {
            if *p == 1 {
                parts.push(j.render(space));
            } else {
                parts.push(format!("{}^{}", j.render(space), p));
            }
        }
        parts.join("*")
    }
}

/// Exact multivariate Laurent polynomial over a fixed variable space.
/// Zero coefficients are never stored; term order is the canonical monomial
/// order, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    space: VarSpace,
    terms: BTreeMap<Mono, Rat>,
}

impl LaurentPoly {
    pub fn zero(space: VarSpace) -> LaurentPoly {
        LaurentPoly { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, c: Rat) -> LaurentPoly {
        let mut p = LaurentPoly::zero(space);
        p.add_term(Mono::one(), c);
        p
    }

    pub fn one(space: VarSpace) -> LaurentPoly {
        LaurentPoly::constant(space, Rat::one())
    }

    /// Monomial `var_i^exp` with coefficient 1.
    pub fn var_pow(space: VarSpace, i: usize, exp: i32) -> LaurentPoly {
        assert!(i < space.nvars(), "variable index {i} out of range for {space:?}");
        let mut p = LaurentPoly::zero(space);
        p.add_term(Mono::base_var(i, exp), Rat::one());
        p
    }

    pub fn var(space: VarSpace, i: usize) -> LaurentPoly {
        LaurentPoly::var_pow(space, i, 1)
    }

    pub fn jet(space: VarSpace, j: JetVar) -> LaurentPoly {
        for i in space.nvars()..MAX_VARS {
            assert_eq!(j.count(i), 0, "jet index out of range for {space:?}");
        }
        let mut p = LaurentPoly::zero(space);
        p.add_term(Mono::jet(j, 1), Rat::one());
        p
    }

    /// The dependent variable (u or w) as a polynomial.
    pub fn dep(space: VarSpace) -> LaurentPoly {
        LaurentPoly::jet(space, JetVar::DEP)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Highest jet order appearing anywhere in the polynomial.
    pub fn jet_order(&self) -> u8 {
        self.terms.keys().map(Mono::jet_order).max().unwrap_or(0)
    }

    /// Every jet variable appearing with nonzero power.
    pub fn jet_vars(&self) -> BTreeSet<JetVar> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.jets.keys().copied());
        }
        out
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_space(&self, other: &LaurentPoly) {
        assert_eq!(
            self.space, other.space,
            "cross-fixture polynomial arithmetic: {:?} vs {:?}",
            self.space, other.space
        );
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.space);
        }
        let mut out = LaurentPoly::zero(self.space);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.space);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to independent variable `i`,
    /// treating the dependent variable and all jets as independent symbols.
    pub fn pderiv_var(&self, i: usize) -> LaurentPoly {
        assert!(i < self.space.nvars());
        let mut out = LaurentPoly::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.base[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.base[i] = e - 1;
            out.add_term(m2, c * rat_i(e as i64));
        }
        out
    }

    /// Formal partial derivative with respect to jet variable `j`.
    pub fn pderiv_jet(&self, j: &JetVar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.space);
        for (m, c) in &self.terms {
            let p = m.jet_pow(j);
            if p == 0 {
                continue;
            }
            let mut m2 = m.clone();
            if p == 1 {
                m2.jets.remove(j);
            } else {
                m2.jets.insert(*j, p - 1);
            }
            out.add_term(m2, c * rat_i(p as i64));
        }
        out
    }

    /// Numeric evaluation at a point: `base` supplies the independent
    /// variables in order, `dep` the dependent variable. Only order-0 jets
    /// are admitted; coefficient functions of vector fields satisfy this.
    pub fn eval_point(&self, base: &[f64], dep: f64) -> f64 {
        use num_traits::ToPrimitive;
        assert_eq!(base.len(), self.space.nvars());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().expect("rational coefficient representable in f64");
            for i in 0..self.space.nvars() {
                let e = m.base[i];
                if e != 0 {
                    term *= base[i].powi(e);
                }
            }
            for (j, p) in m.jets() {
                assert_eq!(j.order(), 0, "eval_point admits no positive-order jets");
                term *= dep.powi(*p as i32);
            }
            acc += term;
        }
        acc
    }

    /// Substitute a polynomial for the bare dependent variable (order-0 jet).
    /// Jets of positive order are untouched; used for evaluating η-type
    /// expressions, not for prolongation.
    pub fn subst_dep(&self, val: &LaurentPoly) -> LaurentPoly {
        self.assert_same_space(val);
        let mut out = LaurentPoly::zero(self.space);
        for (m, c) in &self.terms {
            let p = m.jet_pow(&JetVar::DEP);
            let mut m2 = m.clone();
            m2.jets.remove(&JetVar::DEP);
            let mut part = LaurentPoly::zero(self.space);
            part.add_term(m2, c.clone());
            out += &(&part * &val.pow(p));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono = m.render(self.space);
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.assert_same_space(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.assert_same_space(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.assert_same_space(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.assert_same_space(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.space);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.assert_same_space(rhs);
        let mut out = LaurentPoly::zero(self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.product(m2), c1 * c2);
            }
        }
        out
    }
}

/// Total derivative in direction `dir`: the chain rule treating the dependent
/// variable and all jets as functions of the independent variables.
pub fn total_derivative(p: &LaurentPoly, dir: usize) -> Result<LaurentPoly, SymPolyError> {
    assert!(dir < p.space.nvars());
    let mut out = p.pderiv_var(dir);
    for j in p.jet_vars() {
        let bumped = j.bump(dir)?;
        let dp = p.pderiv_jet(&j);
        if dp.is_zero() {
            continue;
        }
        out += &(&LaurentPoly::jet(p.space, bumped) * &dp);
    }
    Ok(out)
}

/// An evolution equation `dep_evol = rhs` in solved form: the right-hand side
/// carries no derivatives in the evolution direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionPDE {
    space: VarSpace,
    evol: usize,
    rhs: LaurentPoly,
}

impl EvolutionPDE {
    pub fn new(evol: usize, rhs: LaurentPoly) -> Result<EvolutionPDE, SymPolyError> {
        let space = rhs.space;
        assert!(evol < space.nvars());
        for j in rhs.jet_vars() {
            if j.count(evol) > 0 {
                return Err(SymPolyError::RhsNotSolved(j.render(space)));
            }
        }
        Ok(EvolutionPDE { space, evol, rhs })
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn evol_var(&self) -> usize {
        self.evol
    }

    pub fn rhs(&self) -> &LaurentPoly {
        &self.rhs
    }

    /// u_t = u_xx − x·u_y on (t, x, y).
    pub fn kolmogorov() -> EvolutionPDE {
        let s = VarSpace::Txy;
        let uxx = LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        let uy = LaurentPoly::jet(s, JetVar::of([0, 0, 1]));
        let rhs = &uxx - &(&LaurentPoly::var(s, 1) * &uy);
        EvolutionPDE::new(0, rhs).expect("rhs is t-free")
    }

    /// w_1 = w_22 on (z1, z2).
    pub fn heat() -> EvolutionPDE {
        let s = VarSpace::Z12;
        let w22 = LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        EvolutionPDE::new(0, w22).expect("rhs is z1-free")
    }

    /// u_t = u_xx + μ·x⁻²·u on (t, x).
    pub fn heat_isq(mu: Rat) -> EvolutionPDE {
        let s = VarSpace::Tx;
        let uxx = LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        let pot = LaurentPoly::var_pow(s, 1, -2).scale(&mu);
        let rhs = &uxx + &(&pot * &LaurentPoly::dep(s));
        EvolutionPDE::new(0, rhs).expect("rhs is t-free")
    }

    /// w_1 = z2⁻¹·w_22 on (z1, z2): the first reduced equation with the
    /// exponential factor at its base value.
    pub fn reduced_12_at_zero() -> EvolutionPDE {
        let s = VarSpace::Z12;
        let w22 = LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        let rhs = &LaurentPoly::var_pow(s, 1, -1) * &w22;
        EvolutionPDE::new(0, rhs).expect("rhs is z1-free")
    }

    /// The equation as a residual polynomial `dep_evol − rhs`, useful for
    /// symmetry checks.
    pub fn residual_poly(&self) -> LaurentPoly {
        let mut e = [0u8; MAX_VARS];
        e[self.evol] = 1;
        &LaurentPoly::jet(self.space, JetVar::of(e)) - &self.rhs
    }
}

/// Eliminate every evolution-direction derivative from `p` by substituting
/// the PDE and its total-derivative consequences. The result is reduced:
/// it contains no jets with derivatives in the evolution direction.
pub fn reduce_mod_pde(p: &LaurentPoly, eq: &EvolutionPDE) -> Result<LaurentPoly, SymPolyError> {
    assert_eq!(p.space, eq.space, "fixture mismatch in reduce_mod_pde");
    let mut cache: BTreeMap<JetVar, LaurentPoly> = BTreeMap::new();
    reduce_inner(p, eq, &mut cache)
}

fn reduce_inner(
    p: &LaurentPoly,
    eq: &EvolutionPDE,
    cache: &mut BTreeMap<JetVar, LaurentPoly>,
) -> Result<LaurentPoly, SymPolyError> {
    let evol = eq.evol;
    let mut out = LaurentPoly::zero(p.space);
    for (m, c) in &p.terms {
        let mut plain = Mono { base: m.base, jets: BTreeMap::new() };
        let mut factors: Vec<(JetVar, u32)> = Vec::new();
        for (j, pw) in &m.jets {
            if j.count(evol) > 0 {
                factors.push((*j, *pw));
            } else {
                plain.jets.insert(*j, *pw);
            }
        }
        let mut term = LaurentPoly::zero(p.space);
        term.add_term(plain, c.clone());
        for (j, pw) in factors {
            let rep = replacement(j, eq, cache)?;
            term = &term * &rep.pow(pw);
        }
        out += &term;
    }
    Ok(out)
}

/// Reduced replacement polynomial for a jet carrying at least one
/// evolution-direction derivative.
fn replacement(
    j: JetVar,
    eq: &EvolutionPDE,
    cache: &mut BTreeMap<JetVar, LaurentPoly>,
) -> Result<LaurentPoly, SymPolyError> {
    if let Some(r) = cache.get(&j) {
        return Ok(r.clone());
    }
    let evol = eq.evol;
    debug_assert!(j.count(evol) > 0);
    let r = if j.count(evol) == 1 {
        // Spatial derivatives of the (evolution-free) right-hand side.
        let mut r = eq.rhs.clone();
        for i in 0..eq.space.nvars() {
            if i == evol {
                continue;
            }
            for _ in 0..j.count(i) {
                r = total_derivative(&r, i)?;
            }
        }
        r
    } else {
        let below = j.drop(evol).expect("positive evolution count");
        let prev = replacement(below, eq, cache)?;
        let dt = total_derivative(&prev, evol)?;
        reduce_inner(&dt, eq, cache)?
    };
    cache.insert(j, r.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn txy() -> VarSpace {
        VarSpace::Txy
    }

    #[test]
    fn product_of_conjugates() {
        let s = txy();
        let x = LaurentPoly::var(s, 1);
        let t = LaurentPoly::var(s, 0);
        let prod = &(&x + &t) * &(&x - &t);
        let expect = &(&x * &x) - &(&t * &t);
        assert_eq!(prod, expect);
    }

    #[test]
    fn laurent_cancellation() {
        let s = txy();
        let xinv = LaurentPoly::var_pow(s, 1, -1);
        let x = LaurentPoly::var(s, 1);
        assert_eq!(&xinv * &x, LaurentPoly::one(s));
    }

    #[test]
    fn scaling() {
        let s = txy();
        let p = LaurentPoly::var_pow(s, 1, -2).scale(&rat(5, 36));
        let q = p.scale(&rat_i(36));
        assert_eq!(q, LaurentPoly::var_pow(s, 1, -2).scale(&rat_i(5)));
    }

    #[test]
    fn total_derivative_product_rule() {
        let s = txy();
        let x = LaurentPoly::var(s, 1);
        let u = LaurentPoly::dep(s);
        let p = &x * &u;
        let d = total_derivative(&p, 1).unwrap();
        let ux = LaurentPoly::jet(s, JetVar::of([0, 1, 0]));
        assert_eq!(d, &u + &(&x * &ux));
    }

    #[test]
    fn total_derivative_of_jet() {
        let s = txy();
        let uy = LaurentPoly::jet(s, JetVar::of([0, 0, 1]));
        let d = total_derivative(&uy, 0).unwrap();
        assert_eq!(d, LaurentPoly::jet(s, JetVar::of([1, 0, 1])));
    }

    #[test]
    fn total_derivative_laurent_coefficient() {
        let s = txy();
        let p = &LaurentPoly::var_pow(s, 1, -2) * &LaurentPoly::dep(s);
        let d = total_derivative(&p, 2).unwrap();
        let uy = LaurentPoly::jet(s, JetVar::of([0, 0, 1]));
        assert_eq!(d, &LaurentPoly::var_pow(s, 1, -2) * &uy);
    }

    #[test]
    fn jet_order_overflow_is_an_error() {
        let s = txy();
        let top = LaurentPoly::jet(s, JetVar::of([0, 4, 0]));
        assert!(matches!(
            total_derivative(&top, 1),
            Err(SymPolyError::JetOrderOverflow(_))
        ));
    }

    #[test]
    fn reduce_ut() {
        let eq = EvolutionPDE::kolmogorov();
        let s = eq.space();
        let ut = LaurentPoly::jet(s, JetVar::of([1, 0, 0]));
        assert_eq!(reduce_mod_pde(&ut, &eq).unwrap(), eq.rhs().clone());
    }

    #[test]
    fn reduce_utx_matches_hand_oracle() {
        // Differentiating u_t = u_xx − x·u_y by x gives
        // u_tx = u_xxx − u_y − x·u_xy; frozen by hand before implementation.
        let eq = EvolutionPDE::kolmogorov();
        let s = eq.space();
        let utx = LaurentPoly::jet(s, JetVar::of([1, 1, 0]));
        let got = reduce_mod_pde(&utx, &eq).unwrap();
        let uxxx = LaurentPoly::jet(s, JetVar::of([0, 3, 0]));
        let uy = LaurentPoly::jet(s, JetVar::of([0, 0, 1]));
        let uxy = LaurentPoly::jet(s, JetVar::of([0, 1, 1]));
        let expect = &(&uxxx - &uy) - &(&LaurentPoly::var(s, 1) * &uxy);
        assert_eq!(got, expect);
    }

    #[test]
    fn reduce_leaves_u_alone() {
        let eq = EvolutionPDE::kolmogorov();
        let u = LaurentPoly::dep(eq.space());
        assert_eq!(reduce_mod_pde(&u, &eq).unwrap(), u);
    }

    #[test]
    fn reduce_utt_then_idempotent() {
        let eq = EvolutionPDE::kolmogorov();
        let s = eq.space();
        let utt = LaurentPoly::jet(s, JetVar::of([2, 0, 0]));
        let once = reduce_mod_pde(&utt, &eq).unwrap();
        for j in once.jet_vars() {
            assert_eq!(j.count(0), 0, "t-derivative {} survived", j.render(s));
        }
        let twice = reduce_mod_pde(&once, &eq).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn reduce_heat_isq_fixture() {
        let eq = EvolutionPDE::heat_isq(rat(5, 36));
        let s = eq.space();
        let ut = LaurentPoly::jet(s, JetVar::of([1, 0, 0]));
        let got = reduce_mod_pde(&ut, &eq).unwrap();
        let uxx = LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        let u = LaurentPoly::dep(s);
        let expect = &uxx + &(&LaurentPoly::var_pow(s, 1, -2) * &u).scale(&rat(5, 36));
        assert_eq!(got, expect);
    }

    #[test]
    fn rhs_with_evolution_derivative_rejected() {
        let s = VarSpace::Txy;
        let bad = LaurentPoly::jet(s, JetVar::of([1, 0, 0]));
        assert!(matches!(
            EvolutionPDE::new(0, bad),
            Err(SymPolyError::RhsNotSolved(_))
        ));
    }

    #[test]
    fn display_is_canonical() {
        let s = txy();
        let p = &(&LaurentPoly::var_pow(s, 1, -2).scale(&rat(5, 36))
            * &LaurentPoly::dep(s))
            - &LaurentPoly::jet(s, JetVar::of([0, 2, 0]));
        let q = p.clone();
        assert_eq!(p.to_string(), q.to_string());
        assert!(p.to_string().contains("x^-2"));
    }

    #[test]
    fn subst_dep_replaces_only_order_zero() {
        let s = txy();
        let u = LaurentPoly::dep(s);
        let ux = LaurentPoly::jet(s, JetVar::of([0, 1, 0]));
        let p = &(&u * &u) + &ux;
        let val = LaurentPoly::var(s, 0);
        let got = p.subst_dep(&val);
        let expect = &(&val * &val) + &ux;
        assert_eq!(got, expect);
    }
}
