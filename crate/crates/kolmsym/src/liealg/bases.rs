//! Fixed bases of the symmetry algebras that the toolkit works with: the
//! essential algebra of the Kolmogorov equation, the essential algebras of
//! its reduced equations (heat-type fixtures on the (z1, z2) space), the
//! algebras they induce on reductions, and the essential algebra of the heat
//! equation with inverse-square potential.

use super::VectorField;
use crate::sympoly::{rat, rat_i, LaurentPoly, VarSpace};

/// Basis order used everywhere: (Pt, D, K, P3, P2, P1, P0, I).
pub const ESS_LABELS: [&str; 8] = ["Pt", "D", "K", "P3", "P2", "P1", "P0", "I"];

pub const HEAT_LABELS: [&str; 6] = ["Pz1", "Pz2", "D", "G", "K", "I"];

pub const HEAT_ISQ_LABELS: [&str; 4] = ["Pt", "D", "K", "I"];

/// Named element of the essential Kolmogorov algebra, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EssElem {
    Pt,
    D,
    K,
    P3,
    P2,
    P1,
    P0,
    I,
}

impl EssElem {
    pub const ALL: [EssElem; 8] = [
        EssElem::Pt,
        EssElem::D,
        EssElem::K,
        EssElem::P3,
        EssElem::P2,
        EssElem::P1,
        EssElem::P0,
        EssElem::I,
    ];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&e| e == self).unwrap()
    }

    pub fn label(self) -> &'static str {
        ESS_LABELS[self.index()]
    }

    pub fn field(self) -> VectorField {
        ess_basis().swap_remove(self.index())
    }
}

fn cst(s: VarSpace, n: i64) -> LaurentPoly {
    LaurentPoly::constant(s, rat_i(n))
}

fn zp(s: VarSpace) -> LaurentPoly {
    LaurentPoly::zero(s)
}

/// The essential Lie symmetry algebra of u_t + x·u_y = u_xx, spanned by
/// Pt = ∂t,
/// D  = 2t∂t + x∂x + 3y∂y − 2u∂u,
/// K  = t²∂t + (tx+3y)∂x + 3ty∂y − (x²+2t)u∂u,
/// P3 = 3t²∂x + t³∂y + 3(y−tx)u∂u,
/// P2 = 2t∂x + t²∂y − xu∂u,
/// P1 = ∂x + t∂y,
/// P0 = ∂y,
/// I  = u∂u.
pub fn ess_basis() -> Vec<VectorField> {
    let s = VarSpace::Txy;
    let t = LaurentPoly::var(s, 0);
    let x = LaurentPoly::var(s, 1);
    let y = LaurentPoly::var(s, 2);
    let u = LaurentPoly::dep(s);
    let t2 = &t * &t;
    let pt = VectorField::new(s, vec![cst(s, 1), zp(s), zp(s)], zp(s));
    let d = VectorField::new(
        s,
        vec![t.scale(&rat_i(2)), x.clone(), y.scale(&rat_i(3))],
        u.scale(&rat_i(-2)),
    );
    let k = VectorField::new(
        s,
        vec![
            t2.clone(),
            &(&t * &x) + &y.scale(&rat_i(3)),
            (&t * &y).scale(&rat_i(3)),
        ],
        -&(&(&(&x * &x) + &t.scale(&rat_i(2))) * &u),
    );
    let p3 = VectorField::new(
        s,
        vec![zp(s), t2.scale(&rat_i(3)), &t2 * &t],
        (&(&y - &(&t * &x)) * &u).scale(&rat_i(3)),
    );
    let p2 = VectorField::new(
        s,
        vec![zp(s), t.scale(&rat_i(2)), t2.clone()],
        -&(&x * &u),
    );
    let p1 = VectorField::new(s, vec![zp(s), cst(s, 1), t.clone()], zp(s));
    let p0 = VectorField::new(s, vec![zp(s), zp(s), cst(s, 1)], zp(s));
    let i = VectorField::new(s, vec![zp(s), zp(s), zp(s)], u);
    vec![pt, d, k, p3, p2, p1, p0, i]
}

/// The sl(2,R) Levi factor ⟨Pt, D, K⟩.
pub fn levi_factor() -> Vec<VectorField> {
    ess_basis()[0..3].to_vec()
}

/// The radical ⟨P3, P2, P1, P0, I⟩, a rank-two Heisenberg algebra.
pub fn radical() -> Vec<VectorField> {
    ess_basis()[3..8].to_vec()
}

/// Essential symmetry algebra of the heat equation w_{z1} = w_{z2z2}:
/// ⟨∂z1, ∂z2, 2z1∂z1+z2∂z2, 2z1∂z2−z2w∂w, 4z1²∂z1+4z1z2∂z2−(2z1+z2²)w∂w, w∂w⟩.
pub fn heat_algebra() -> Vec<VectorField> {
    let s = VarSpace::Z12;
    let z1 = LaurentPoly::var(s, 0);
    let z2 = LaurentPoly::var(s, 1);
    let w = LaurentPoly::dep(s);
    vec![
        VectorField::new(s, vec![cst(s, 1), zp(s)], zp(s)),
        VectorField::new(s, vec![zp(s), cst(s, 1)], zp(s)),
        VectorField::new(s, vec![z1.scale(&rat_i(2)), z2.clone()], zp(s)),
        VectorField::new(s, vec![zp(s), z1.scale(&rat_i(2))], -&(&z2 * &w)),
        VectorField::new(
            s,
            vec![(&z1 * &z1).scale(&rat_i(4)), (&z1 * &z2).scale(&rat_i(4))],
            -&(&(&z1.scale(&rat_i(2)) + &(&z2 * &z2)) * &w),
        ),
        VectorField::new(s, vec![zp(s), zp(s)], w),
    ]
}

/// Essential symmetry algebra of the reduced equation z2·w_{z1} = w_{z2z2}:
/// ⟨∂z1, 3z1∂z1+z2∂z2, 9z1²∂z1+6z1z2∂z2−(6z1+z2³)w∂w, w∂w⟩.
pub fn a2_zero_algebra() -> Vec<VectorField> {
    let s = VarSpace::Z12;
    let z1 = LaurentPoly::var(s, 0);
    let z2 = LaurentPoly::var(s, 1);
    let w = LaurentPoly::dep(s);
    vec![
        VectorField::new(s, vec![cst(s, 1), zp(s)], zp(s)),
        VectorField::new(s, vec![z1.scale(&rat_i(3)), z2.clone()], zp(s)),
        VectorField::new(
            s,
            vec![
                (&z1 * &z1).scale(&rat_i(9)),
                (&z1 * &z2).scale(&rat_i(6)),
            ],
            -&(&(&z1.scale(&rat_i(6)) + &(&(&z2 * &z2) * &z2)) * &w),
        ),
        VectorField::new(s, vec![zp(s), zp(s)], w),
    ]
}

/// Essential symmetry algebra of z2·w_{z1} = w_{z2z2} + δ·w for δ ≠ 0 (the
/// basis does not depend on δ): ⟨∂z1, w∂w⟩.
pub fn a2_delta_algebra() -> Vec<VectorField> {
    let s = VarSpace::Z12;
    let w = LaurentPoly::dep(s);
    vec![
        VectorField::new(s, vec![cst(s, 1), zp(s)], zp(s)),
        VectorField::new(s, vec![zp(s), zp(s)], w),
    ]
}

/// Symmetries of the reduced equation on codimension-one reduction 1.2 with
/// δ = 0 induced by normalizer elements upstairs: ⟨∂z1, 3z1∂z1+z2∂z2, w∂w⟩.
pub fn induced_a2_zero() -> Vec<VectorField> {
    let mut b = a2_zero_algebra();
    b.remove(2);
    b
}

/// Induced symmetries for reduction 1.2 with δ ≠ 0: the full essential
/// algebra ⟨∂z1, w∂w⟩ is induced, so nothing is hidden in that case.
pub fn induced_a2_delta() -> Vec<VectorField> {
    a2_delta_algebra()
}

/// Induced symmetries for reduction 1.5: ⟨∂z2, 2z1∂z2−z2w∂w, w∂w⟩.
pub fn induced_a5() -> Vec<VectorField> {
    let h = heat_algebra();
    vec![h[1].clone(), h[3].clone(), h[5].clone()]
}

/// Induced symmetries for reduction 1.6: those of 1.5 plus 2z1∂z1+z2∂z2.
pub fn induced_a6() -> Vec<VectorField> {
    let h = heat_algebra();
    vec![h[1].clone(), h[3].clone(), h[5].clone(), h[2].clone()]
}

/// Induced symmetries for reduction 1.7: those of 1.6 plus ∂z1.
pub fn induced_a7() -> Vec<VectorField> {
    let h = heat_algebra();
    vec![
        h[1].clone(),
        h[3].clone(),
        h[5].clone(),
        h[2].clone(),
        h[0].clone(),
    ]
}

/// Essential symmetry algebra of the heat equation with inverse-square
/// potential u_t = u_xx + μx⁻²u (μ ≠ 0), independent of μ:
/// ⟨∂t, t∂t+x∂x/2−u∂u/4, t²∂t+tx∂x−(x²+2t)u∂u/4, u∂u⟩ ≅ sl(2,R)⊕⟨I⟩.
pub fn heat_isq_basis() -> Vec<VectorField> {
    let s = VarSpace::Tx;
    let t = LaurentPoly::var(s, 0);
    let x = LaurentPoly::var(s, 1);
    let u = LaurentPoly::dep(s);
    vec![
        VectorField::new(s, vec![cst(s, 1), zp(s)], zp(s)),
        VectorField::new(
            s,
            vec![t.clone(), x.scale(&rat(1, 2))],
            u.scale(&rat(-1, 4)),
        ),
        VectorField::new(
            s,
            vec![&t * &t, &t * &x],
            (&(&(&x * &x) + &t.scale(&rat_i(2))) * &u).scale(&rat(-1, 4)),
        ),
        VectorField::new(s, vec![zp(s), zp(s)], u),
    ]
}
