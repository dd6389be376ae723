//! Classified subalgebra families of the essential Kolmogorov algebra (the
//! inequivalent one- and two-dimensional representatives used for Lie
//! reduction) and of the inverse-square-potential heat algebra, together with
//! the known normalizers of the one-dimensional family.

use super::bases::{ess_basis, heat_isq_basis};
use super::{Subalgebra, VectorField};
use crate::sympoly::{rat, rat_i, Rat};
use num_traits::Signed;

fn ess(i: usize) -> VectorField {
    ess_basis().swap_remove(i)
}

fn combo(parts: &[(usize, Rat)]) -> VectorField {
    let b = ess_basis();
    let mut f = VectorField::zero(b[0].space());
    for (i, c) in parts {
        f = f.add(&b[*i].scale(c));
    }
    f
}

// Index shorthand into the (Pt, D, K, P3, P2, P1, P0, I) basis.
const PT: usize = 0;
const D: usize = 1;
const K: usize = 2;
const P3: usize = 3;
const P2: usize = 4;
const P1: usize = 5;
const P0: usize = 6;
const I: usize = 7;

pub fn s1_1() -> Subalgebra {
    Subalgebra::new("s1.1", vec![ess(PT).add(&ess(P3))])
}

/// ⟨Pt + δI⟩ with δ ∈ {−1, 0, 1}.
pub fn s1_2(delta: i8) -> Subalgebra {
    assert!((-1..=1).contains(&delta));
    Subalgebra::new(
        format!("s1.2^({delta})"),
        vec![combo(&[(PT, rat_i(1)), (I, rat_i(delta as i64))])],
    )
}

/// ⟨D + νI⟩ with ν ≥ 0.
pub fn s1_3(nu: Rat) -> Subalgebra {
    assert!(!nu.is_negative());
    Subalgebra::new(
        format!("s1.3^({nu})"),
        vec![combo(&[(D, rat_i(1)), (I, nu)])],
    )
}

/// ⟨Pt + K + μI⟩, μ arbitrary.
pub fn s1_4(mu: Rat) -> Subalgebra {
    Subalgebra::new(
        format!("s1.4^({mu})"),
        vec![combo(&[(PT, rat_i(1)), (K, rat_i(1)), (I, mu)])],
    )
}

/// ⟨P2 + εP0⟩ with ε = ±1.
pub fn s1_5(eps: i8) -> Subalgebra {
    assert!(eps == 1 || eps == -1);
    Subalgebra::new(
        format!("s1.5^({eps})"),
        vec![combo(&[(P2, rat_i(1)), (P0, rat_i(eps as i64))])],
    )
}

pub fn s1_6() -> Subalgebra {
    Subalgebra::new("s1.6", vec![ess(P1)])
}

pub fn s1_7() -> Subalgebra {
    Subalgebra::new("s1.7", vec![ess(P0)])
}

pub fn s1_8() -> Subalgebra {
    Subalgebra::new("s1.8", vec![ess(I)])
}

pub fn s2_1(mu: Rat) -> Subalgebra {
    Subalgebra::new(
        format!("s2.1^({mu})"),
        vec![ess(PT), combo(&[(D, rat_i(1)), (I, mu)])],
    )
}

pub fn s2_2(delta: i8) -> Subalgebra {
    assert!((-1..=1).contains(&delta));
    Subalgebra::new(
        format!("s2.2^({delta})"),
        vec![
            combo(&[(PT, rat_i(1)), (I, rat_i(delta as i64))]),
            ess(P0),
        ],
    )
}

pub fn s2_3() -> Subalgebra {
    Subalgebra::new("s2.3", vec![ess(PT), ess(P0).add(&ess(I))])
}

pub fn s2_4(mu: Rat) -> Subalgebra {
    Subalgebra::new(
        format!("s2.4^({mu})"),
        vec![combo(&[(D, rat_i(1)), (I, mu)]), ess(P1)],
    )
}

pub fn s2_5(mu: Rat) -> Subalgebra {
    Subalgebra::new(
        format!("s2.5^({mu})"),
        vec![combo(&[(D, rat_i(1)), (I, mu)]), ess(P0)],
    )
}

pub fn s2_6() -> Subalgebra {
    Subalgebra::new("s2.6", vec![ess(P0), ess(P1)])
}

pub fn s2_7() -> Subalgebra {
    Subalgebra::new("s2.7", vec![ess(P0), ess(P2)])
}

pub fn s2_8(eps: i8) -> Subalgebra {
    assert!(eps == 1 || eps == -1);
    Subalgebra::new(
        format!("s2.8^({eps})"),
        vec![
            ess(P1),
            combo(&[(P3, rat_i(1)), (P0, rat_i(eps as i64))]),
        ],
    )
}

pub fn s2_9() -> Subalgebra {
    Subalgebra::new("s2.9", vec![ess(PT).add(&ess(P3)), ess(I)])
}

pub fn s2_10() -> Subalgebra {
    Subalgebra::new("s2.10", vec![ess(PT), ess(I)])
}

pub fn s2_11() -> Subalgebra {
    Subalgebra::new("s2.11", vec![ess(D), ess(I)])
}

pub fn s2_12() -> Subalgebra {
    Subalgebra::new("s2.12", vec![ess(PT).add(&ess(K)), ess(I)])
}

pub fn s2_13(eps: i8) -> Subalgebra {
    assert!(eps == 1 || eps == -1);
    Subalgebra::new(
        format!("s2.13^({eps})"),
        vec![
            combo(&[(P2, rat_i(1)), (P0, rat_i(eps as i64))]),
            ess(I),
        ],
    )
}

pub fn s2_14() -> Subalgebra {
    Subalgebra::new("s2.14", vec![ess(P1), ess(I)])
}

pub fn s2_15() -> Subalgebra {
    Subalgebra::new("s2.15", vec![ess(P0), ess(I)])
}

/// The one-dimensional classification with representative parameter values.
pub fn lemma1_representatives() -> Vec<Subalgebra> {
    vec![
        s1_1(),
        s1_2(-1),
        s1_2(0),
        s1_2(1),
        s1_3(rat_i(0)),
        s1_3(rat(5, 7)),
        s1_4(rat_i(0)),
        s1_4(rat(-3, 2)),
        s1_5(1),
        s1_5(-1),
        s1_6(),
        s1_7(),
        s1_8(),
    ]
}

/// The two-dimensional classification with representative parameter values.
pub fn lemma2_representatives() -> Vec<Subalgebra> {
    vec![
        s2_1(rat_i(0)),
        s2_1(rat(2, 3)),
        s2_2(-1),
        s2_2(0),
        s2_2(1),
        s2_3(),
        s2_4(rat_i(1)),
        s2_5(rat(-1, 2)),
        s2_6(),
        s2_7(),
        s2_8(1),
        s2_8(-1),
        s2_9(),
        s2_10(),
        s2_11(),
        s2_12(),
        s2_13(1),
        s2_13(-1),
        s2_14(),
        s2_15(),
    ]
}

/// Known normalizers in the essential algebra of every one-dimensional
/// representative, as (subalgebra, expected normalizer basis) pairs.
pub fn expected_normalizers() -> Vec<(Subalgebra, Vec<VectorField>)> {
    let mut out = Vec::new();
    out.push((s1_1(), vec![ess(PT).add(&ess(P3)), ess(I)]));
    out.push((s1_2(0), vec![ess(PT), ess(D), ess(P0), ess(I)]));
    for delta in [-1, 1] {
        out.push((s1_2(delta), vec![ess(PT), ess(P0), ess(I)]));
    }
    for nu in [rat_i(0), rat(5, 7)] {
        out.push((s1_3(nu), vec![ess(D), ess(I)]));
    }
    for mu in [rat_i(0), rat(-3, 2)] {
        out.push((s1_4(mu), vec![ess(PT).add(&ess(K)), ess(I)]));
    }
    for eps in [1i8, -1] {
        out.push((
            s1_5(eps),
            vec![
                ess(P2),
                ess(P0),
                combo(&[(P3, rat_i(1)), (P1, rat_i(-3 * eps as i64))]),
                ess(I),
            ],
        ));
    }
    out.push((s1_6(), vec![ess(D), ess(P3), ess(P1), ess(P0), ess(I)]));
    out.push((
        s1_7(),
        vec![ess(PT), ess(D), ess(P2), ess(P1), ess(P0), ess(I)],
    ));
    out
}

// ---------------------------------------------------------------------------
// Subalgebras of the inverse-square-potential heat algebra (Pt, D, K, I).

fn hisq(i: usize) -> VectorField {
    heat_isq_basis().swap_remove(i)
}

fn hisq_combo(parts: &[(usize, Rat)]) -> VectorField {
    let b = heat_isq_basis();
    let mut f = VectorField::zero(b[0].space());
    for (i, c) in parts {
        f = f.add(&b[*i].scale(c));
    }
    f
}

/// ⟨Pt + δI⟩ with δ ∈ {−1, 0, 1}.
pub fn hisq_s1_1(delta: i8) -> Subalgebra {
    assert!((-1..=1).contains(&delta));
    Subalgebra::new(
        format!("hisq.s1.1^({delta})"),
        vec![hisq_combo(&[(0, rat_i(1)), (3, rat_i(delta as i64))])],
    )
}

/// ⟨D + νI⟩ with ν ≥ 0.
pub fn hisq_s1_2(nu: Rat) -> Subalgebra {
    assert!(!nu.is_negative());
    Subalgebra::new(
        format!("hisq.s1.2^({nu})"),
        vec![hisq_combo(&[(1, rat_i(1)), (3, nu)])],
    )
}

/// ⟨Pt + K + 2νI⟩ with ν ≥ 0.
pub fn hisq_s1_3(nu: Rat) -> Subalgebra {
    assert!(!nu.is_negative());
    Subalgebra::new(
        format!("hisq.s1.3^({nu})"),
        vec![hisq_combo(&[
            (0, rat_i(1)),
            (2, rat_i(1)),
            (3, rat_i(2) * nu),
        ])],
    )
}

pub fn hisq_s1_4() -> Subalgebra {
    Subalgebra::new("hisq.s1.4", vec![hisq(3)])
}

pub fn hisq_s2_1(nu: Rat) -> Subalgebra {
    Subalgebra::new(
        format!("hisq.s2.1^({nu})"),
        vec![hisq(0), hisq_combo(&[(1, rat_i(1)), (3, nu)])],
    )
}

pub fn hisq_s2_2() -> Subalgebra {
    Subalgebra::new("hisq.s2.2", vec![hisq(0), hisq(3)])
}

pub fn hisq_s2_3() -> Subalgebra {
    Subalgebra::new("hisq.s2.3", vec![hisq(1), hisq(3)])
}

pub fn hisq_s2_4() -> Subalgebra {
    Subalgebra::new("hisq.s2.4", vec![hisq(0).add(&hisq(2)), hisq(3)])
}

pub fn hisq_s3_1() -> Subalgebra {
    Subalgebra::new("hisq.s3.1", vec![hisq(0), hisq(1), hisq(2)])
}

pub fn hisq_s3_2() -> Subalgebra {
    Subalgebra::new("hisq.s3.2", vec![hisq(0), hisq(1), hisq(3)])
}

pub fn hisq_s4_1() -> Subalgebra {
    Subalgebra::new("hisq.s4.1", heat_isq_basis())
}

/// The full inequivalent-subalgebra list with representative parameters.
pub fn hisq_representatives() -> Vec<Subalgebra> {
    vec![
        hisq_s1_1(-1),
        hisq_s1_1(0),
        hisq_s1_1(1),
        hisq_s1_2(rat_i(0)),
        hisq_s1_2(rat(3, 4)),
        hisq_s1_3(rat_i(0)),
        hisq_s1_3(rat(1, 2)),
        hisq_s1_4(),
        hisq_s2_1(rat(2, 5)),
        hisq_s2_2(),
        hisq_s2_3(),
        hisq_s2_4(),
        hisq_s3_1(),
        hisq_s3_2(),
        hisq_s4_1(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{closure_check, normalizer, spans_equal};

    #[test]
    fn all_classified_subalgebras_are_closed() {
        for s in lemma1_representatives()
            .into_iter()
            .chain(lemma2_representatives())
            .chain(hisq_representatives())
        {
            assert!(closure_check(&s), "{} is not closed", s.label);
        }
    }

    #[test]
    fn non_subalgebra_fails_closure() {
        let bad = Subalgebra::new("bad", vec![ess(PT).add(&ess(P3)), ess(D)]);
        assert!(!closure_check(&bad));
    }

    #[test]
    fn normalizers_match_expected_spans() {
        let ambient = ess_basis();
        for (s, expected) in expected_normalizers() {
            let n = normalizer(&s, &ambient).unwrap();
            assert_eq!(n.dim(), expected.len(), "dim N({})", s.label);
            assert!(
                spans_equal(&n.basis, &expected),
                "normalizer of {} differs from the expected span",
                s.label
            );
        }
    }

    #[test]
    fn normalizer_dims_minus_one_match_induced_counts() {
        // Induced symmetry algebras downstairs have dimension dim N − 1; the
        // expected values per family are frozen here.
        let ambient = ess_basis();
        let cases: Vec<(Subalgebra, usize)> = vec![
            (s1_1(), 1),
            (s1_2(0), 3),
            (s1_2(1), 2),
            (s1_3(rat(5, 7)), 1),
            (s1_4(rat_i(0)), 1),
            (s1_5(1), 3),
            (s1_6(), 4),
            (s1_7(), 5),
        ];
        for (s, want) in cases {
            let n = normalizer(&s, &ambient).unwrap();
            assert_eq!(n.dim() - 1, want, "induced dimension for {}", s.label);
        }
    }
}
