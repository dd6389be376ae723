//! The heat equation with inverse-square potential, u_t = u_xx + μx⁻²u
//! (μ ≠ 0), as a numeric companion to the symbolic layer in `liealg`: the
//! essential point-symmetry group in closed form, exact-solution families
//! for every reduction of its subalgebra classes, and a bridge packaging
//! those families as potential plugins for the Kolmogorov catalog.
//!
//! The spectral parameter pair runs through everything: κ = ½√(1−4μ) and
//! κ′ = κ/2, real for 4μ ≤ 1 and purely imaginary otherwise. [`KappaParams`]
//! carries the pair with its regime made explicit, so downstream formulas
//! never branch on raw discriminant signs.
//!
//! The essential group elements act as
//!
//! ```text
//! t̃ = (αt + β)/(γt + δ),  x̃ = x/(γt + δ),
//! ũ = σ·|γt + δ|^{1/2}·exp(γx²/(4(γt + δ)))·u,   αδ − βγ = 1, σ ≠ 0,
//! ```
//!
//! a product SL(2,ℝ)-action and scaling. Unlike the Kolmogorov group there
//! are no translation parameters to extract: compositions and inverses stay
//! in closed form (matrix product, σ product), so the group operations here
//! are exact.

use crate::catalog::{sf_jet, CatalogError, PlaneBox, PotentialPlugin};
use crate::group::{GroupError, Solution, UNIMODULAR_TOL};
use crate::jetcalc::{
    compose1, compose3, lift, seed, BiJet2, DomainBox, Elementary, Equation, FieldEval, Jet2,
    JetError, UniJet2,
};
use crate::specfun::{self, CylinderKind, WhittakerKind};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Base seed for per-family registration sweeps.
const REGISTRY_SEED: u64 = 0x0CA7_4151;

/// Collar half-width excluded around the coordinate degeneracies t = 0 and
/// x = 0; the same rationale as the catalog's sheet collar (fractional
/// powers and reciprocals of the coordinate lose relative accuracy inside).
const COORD_COLLAR: f64 = 1e-3;

/// Largest Whittaker argument the similarity families accept when only the
/// first-kind function is active, kept under the confluent series envelope
/// (40) so the parameter shifts used for derivatives stay valid.
const WHITTAKER_ARG_CAP: f64 = 38.0;

/// Cap when the second-kind function is active. It runs through the Kummer
/// connection formula, which cancels like e^z; relative accuracy at the cap
/// is ~e^10·1e-16 = 2e-12, still clear of the residual gates.
const WHITTAKER_W_ARG_CAP: f64 = 10.0;

/// Acceptance window for the defining relations 4κ² = 1 − 4μ and κ′ = κ/2,
/// which are pure f64 arithmetic and hold to a few ulps.
const KAPPA_CONSISTENCY_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Spectral parameters.

/// A quantity that is either real or purely imaginary, with the regime
/// carried in the type: `Imaginary(m)` stands for i·m with m real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KappaValue {
    Real(f64),
    Imaginary(f64),
}

impl KappaValue {
    /// The square as a signed real: (i·m)² = −m².
    pub fn squared(self) -> f64 {
        match self {
            KappaValue::Real(r) => r * r,
            KappaValue::Imaginary(m) => -m * m,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, KappaValue::Real(_))
    }
}

/// The spectral parameters of the potential strength μ: κ = ½√(1−4μ) and
/// κ′ = κ/2, with the real/imaginary regime explicit. μ = 0 is rejected
/// because it degenerates the equation to the plain heat equation, whose
/// symmetry group is strictly larger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaParams {
    mu: f64,
    kappa: KappaValue,
    kappa_prime: KappaValue,
}

impl KappaParams {
    pub fn new(mu: f64) -> Result<KappaParams, CatalogError> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(CatalogError::ParamOutOfRange {
                family: "heatisq",
                name: "mu",
                value: mu,
                expected: "nonzero finite (zero degenerates to the plain heat equation)".into(),
            });
        }
        let disc = 1.0 - 4.0 * mu;
        let kappa = if disc >= 0.0 {
            KappaValue::Real(0.5 * disc.sqrt())
        } else {
            KappaValue::Imaginary(0.5 * (-disc).sqrt())
        };
        let kappa_prime = match kappa {
            KappaValue::Real(r) => KappaValue::Real(r / 2.0),
            KappaValue::Imaginary(m) => KappaValue::Imaginary(m / 2.0),
        };
        Ok(KappaParams {
            mu,
            kappa,
            kappa_prime,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn kappa(&self) -> KappaValue {
        self.kappa
    }

    pub fn kappa_prime(&self) -> KappaValue {
        self.kappa_prime
    }

    /// The defining relations 4κ² = 1 − 4μ and κ′ = κ/2 (same regime, the
    /// squares in 4:1 ratio), to roundoff.
    pub fn consistent(&self) -> bool {
        let same_regime = self.kappa.is_real() == self.kappa_prime.is_real();
        let k2 = self.kappa.squared();
        let disc_ok = (4.0 * k2 - (1.0 - 4.0 * self.mu)).abs()
            <= KAPPA_CONSISTENCY_TOL * (1.0 - 4.0 * self.mu).abs().max(1.0);
        let half_ok =
            (4.0 * self.kappa_prime.squared() - k2).abs() <= KAPPA_CONSISTENCY_TOL * k2.abs().max(1.0);
        same_regime && disc_ok && half_ok
    }

    #[cfg(test)]
    fn raw(mu: f64, kappa: KappaValue, kappa_prime: KappaValue) -> KappaParams {
        KappaParams {
            mu,
            kappa,
            kappa_prime,
        }
    }
}

// ---------------------------------------------------------------------------
// The essential point-symmetry group.

#[derive(Debug, Clone, Copy, Deserialize)]
struct HisqElementRecord {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    sigma: f64,
}

/// An essential point symmetry of the inverse-square heat equation: the
/// SL(2,ℝ) block acting projectively on t and linearly-fractionally on x,
/// and the scaling σ. σ < 0 covers the discrete u-negation; the block −I
/// covers the discrete x-reflection, so the parametrization is faithful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HisqElementRecord")]
pub struct HeatIsqGroupElement {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    sigma: f64,
}

impl TryFrom<HisqElementRecord> for HeatIsqGroupElement {
    type Error = GroupError;
    fn try_from(r: HisqElementRecord) -> Result<HeatIsqGroupElement, GroupError> {
        HeatIsqGroupElement::new([r.alpha, r.beta, r.gamma, r.delta], r.sigma)
    }
}

impl fmt::Display for HeatIsqGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[({}, {}; {}, {}), σ = {}]",
            self.alpha, self.beta, self.gamma, self.delta, self.sigma
        )
    }
}

impl HeatIsqGroupElement {
    /// Element with SL₂ block `[α, β, γ, δ]` (row-major) and scaling σ.
    pub fn new(sl2: [f64; 4], sigma: f64) -> Result<HeatIsqGroupElement, GroupError> {
        let [alpha, beta, gamma, delta] = sl2;
        let det = alpha * delta - beta * gamma;
        if !det.is_finite() || (det - 1.0).abs() > UNIMODULAR_TOL {
            return Err(GroupError::NotUnimodular { det });
        }
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(GroupError::ZeroSigma);
        }
        Ok(HeatIsqGroupElement {
            alpha,
            beta,
            gamma,
            delta,
            sigma,
        })
    }

    pub fn identity() -> HeatIsqGroupElement {
        HeatIsqGroupElement {
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 1.0,
            sigma: 1.0,
        }
    }

    /// The discrete symmetry u ↦ −u.
    pub fn negate_u() -> HeatIsqGroupElement {
        HeatIsqGroupElement {
            sigma: -1.0,
            ..HeatIsqGroupElement::identity()
        }
    }

    pub fn sl2(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The factor M(t, x) in ũ = M·u.
    pub fn multiplier(&self, t: f64, x: f64) -> Result<f64, GroupError> {
        let den = self.gamma * t + self.delta;
        if den == 0.0 {
            return Err(GroupError::SingularHyperplane { t });
        }
        Ok(self.sigma * den.abs().sqrt() * (self.gamma * x * x / (4.0 * den)).exp())
    }

    /// Point action on (t, x, u).
    pub fn apply(&self, p: [f64; 3]) -> Result<[f64; 3], GroupError> {
        let [t, x, u] = p;
        let den = self.gamma * t + self.delta;
        if den == 0.0 {
            return Err(GroupError::SingularHyperplane { t });
        }
        Ok([
            (self.alpha * t + self.beta) / den,
            x / den,
            self.multiplier(t, x)? * u,
        ])
    }

    /// Inverse point map in closed form: invert the Möbius action on t,
    /// unwind x̃ = x/(γt+δ), and divide u by the forward multiplier at the
    /// recovered point.
    pub fn apply_inverse(&self, q: [f64; 3]) -> Result<[f64; 3], GroupError> {
        let [tt, xx, uu] = q;
        let den_inv = -self.gamma * tt + self.alpha;
        if den_inv == 0.0 {
            return Err(GroupError::SingularHyperplane { t: tt });
        }
        let t = (self.delta * tt - self.beta) / den_inv;
        let den = self.gamma * t + self.delta;
        if den == 0.0 || !den.is_finite() {
            return Err(GroupError::SingularHyperplane { t });
        }
        let x = xx * den;
        Ok([t, x, uu / self.multiplier(t, x)?])
    }

    /// Composition g∘other (other acts first). Exact: the SL₂ block is the
    /// matrix product and the scalings multiply. The multiplier exponents
    /// add up to the composed exponent identically (the cross terms cancel
    /// through αδ − βγ = 1), so no parameter extraction is involved.
    pub fn compose(&self, other: &HeatIsqGroupElement) -> Result<HeatIsqGroupElement, GroupError> {
        let a = self.sl2();
        let b = other.sl2();
        HeatIsqGroupElement::new(
            [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ],
            self.sigma * other.sigma,
        )
    }

    /// Group inverse, exact: (δ, −β; −γ, α) and 1/σ.
    pub fn inverse(&self) -> Result<HeatIsqGroupElement, GroupError> {
        HeatIsqGroupElement::new(
            [self.delta, -self.beta, -self.gamma, self.alpha],
            1.0 / self.sigma,
        )
    }
}

/// The four one-parameter subgroups generated by the essential algebra
/// basis, in the order of `liealg::heat_isq_basis`: time translation ∂t,
/// dilation t∂t + x∂x/2 − u∂u/4, the projective generator
/// t²∂t + tx∂x − (x² + 2t)u∂u/4, and the solution scaling u∂u.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HisqElementaryTag {
    Pt,
    D,
    K,
    I,
}

impl HisqElementaryTag {
    pub const ALL: [HisqElementaryTag; 4] = [
        HisqElementaryTag::Pt,
        HisqElementaryTag::D,
        HisqElementaryTag::K,
        HisqElementaryTag::I,
    ];

    pub fn label(self) -> &'static str {
        match self {
            HisqElementaryTag::Pt => "Pt",
            HisqElementaryTag::D => "D",
            HisqElementaryTag::K => "K",
            HisqElementaryTag::I => "I",
        }
    }
}

/// exp(ε·X) for the tagged basis field X.
pub fn elementary(tag: HisqElementaryTag, eps: f64) -> HeatIsqGroupElement {
    let mut e = HeatIsqGroupElement::identity();
    match tag {
        HisqElementaryTag::Pt => e.beta = eps,
        HisqElementaryTag::D => {
            e.alpha = (eps / 2.0).exp();
            e.delta = (-eps / 2.0).exp();
        }
        HisqElementaryTag::K => e.gamma = -eps,
        HisqElementaryTag::I => e.sigma = eps.exp(),
    }
    e
}

/// Transform a solution by a group element: pull the point back through the
/// inverse map, evaluate the original solution there, and multiply by the
/// forward multiplier, with derivatives transported by the chain rule. The
/// y coordinate rides along untouched (inverse-square heat solutions are
/// embedded in (t, x, y) space with no y dependence).
pub fn act_on_solution(g: &HeatIsqGroupElement, s: &Solution) -> Solution {
    let gc = *g;
    let sd = s.clone();
    let se = s.clone();
    let label = format!("transformed({})", s.label());
    let domain = move |tt: f64, xx: f64, yy: f64| match gc.apply_inverse([tt, xx, 1.0]) {
        Ok(p) => p.iter().all(|v| v.is_finite()) && sd.admissible(p[0], p[1], yy),
        Err(_) => false,
    };
    let evaluator = move |tt: f64, xx: f64, yy: f64| -> Result<Jet2, JetError> {
        let sing = JetError::Domain {
            func: "hisq_pullback",
            arg: tt,
        };
        let (aj, bj, yj) = seed(tt, xx, yy);
        let den_inv = aj.scale(-gc.gamma) + Jet2::constant(gc.alpha);
        if den_inv.value() == 0.0 {
            return Err(sing);
        }
        let di = den_inv.recip()?;
        let tj = (aj.scale(gc.delta) - Jet2::constant(gc.beta)) * di;
        let den = tj.scale(gc.gamma) + Jet2::constant(gc.delta);
        if den.value() == 0.0 || !den.is_finite() {
            return Err(sing);
        }
        let xj = bj * den;
        let root = lift(Elementary::AbsPow(0.5), &den)?;
        let ex = lift(Elementary::Exp, &(xj * xj * den.recip()?).scale(gc.gamma / 4.0))?;
        let mj = (root * ex).scale(gc.sigma);
        let inner = se.eval(tj.value(), xj.value(), yj.value())?;
        Ok(mj * compose3(&inner, [&tj, &xj, &yj]))
    };
    Solution::new(label, domain, evaluator)
}

// ---------------------------------------------------------------------------
// Solution family cores.

/// A solution evaluator over (t, x) alone; wrapped either into a [`Solution`]
/// with the y slot inert or into a catalog [`PotentialPlugin`] on (z₁, z₂).
struct Core {
    dom: Box<dyn Fn(f64, f64) -> bool + Send + Sync>,
    eval: Box<dyn Fn(f64, f64) -> Result<Jet2, JetError> + Send + Sync>,
}

fn register(
    label: String,
    core: Core,
    mu: f64,
    bx: &DomainBox,
    idx: u64,
) -> Result<Solution, CatalogError> {
    let Core { dom, eval } = core;
    let sweep_seed = REGISTRY_SEED.wrapping_add(idx.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    Solution::registered(
        label,
        move |t, x, _y| dom(t, x),
        move |t, x, _y| eval(t, x),
        &Equation::HeatIsq { mu },
        bx,
        sweep_seed,
    )
    .map_err(Into::into)
}

fn as_plugin(
    id: &str,
    mu: f64,
    core: Core,
    bx: PlaneBox,
) -> Result<PotentialPlugin, CatalogError> {
    let Core { dom, eval } = core;
    PotentialPlugin::registered(
        id,
        mu,
        move |z1, z2| dom(z1, z2),
        move |z1, z2| {
            let j = eval(z1, z2)?;
            Ok(BiJet2 {
                v: j.value(),
                d1: j.grad(0),
                d2: j.grad(1),
                d11: j.hess(0, 0),
                d12: j.hess(0, 1),
                d22: j.hess(1, 1),
            })
        },
        bx,
    )
}

/// Stationary solutions u = |x|^{1/2}·(radial part), the equidimensional
/// family. The radial part follows the κ regime: a pair of conjugate powers
/// for 4μ < 1, the logarithmic degeneration at 4μ = 1, and log-periodic
/// oscillations for 4μ > 1.
fn euler_core(kp: &KappaParams, c1: f64, c2: f64) -> Core {
    let kap = kp.kappa();
    Core {
        dom: Box::new(|_t, x| x.abs() > COORD_COLLAR),
        eval: Box::new(move |t, x| {
            let (_tj, xj, _yj) = seed(t, x, 0.0);
            match kap {
                KappaValue::Real(k) if k > 0.0 => {
                    let hi = lift(Elementary::AbsPow(0.5 + k), &xj)?;
                    let lo = lift(Elementary::AbsPow(0.5 - k), &xj)?;
                    Ok(hi.scale(c1) + lo.scale(c2))
                }
                KappaValue::Real(_) => {
                    // |x|^{1/2}(c1 + c2·ln|x|), written as an explicit
                    // univariate jet in x (ln|x| has no elementary lift).
                    let s = x.abs();
                    let l = s.ln();
                    let r = s.sqrt();
                    let f = r * (c1 + c2 * l);
                    let f1 = (c1 + 2.0 * c2 + c2 * l) / (2.0 * r);
                    let f2 = -(c1 + c2 * l) / (4.0 * r * s);
                    let tri: UniJet2 = [f, x.signum() * f1, f2];
                    Ok(compose1(tri, &xj))
                }
                KappaValue::Imaginary(m) => {
                    let s = x.abs();
                    let l = s.ln();
                    let r = s.sqrt();
                    let (cs, sn) = ((m * l).cos(), (m * l).sin());
                    let f = r * (c1 * cs + c2 * sn);
                    let f1 =
                        ((c1 + 2.0 * m * c2) * cs + (c2 - 2.0 * m * c1) * sn) / (2.0 * r);
                    let f2 = -(1.0 + 4.0 * m * m) / (4.0 * s * s) * f;
                    let tri: UniJet2 = [f, x.signum() * f1, f2];
                    Ok(compose1(tri, &xj))
                }
            }
        }),
    }
}

/// The two standard-pair choices for the separable family's radial part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylinderPairing {
    /// First/second kind (J, Y): oscillatory radial profiles.
    Oscillatory,
    /// Modified first/second kind (I, K): monotone radial profiles.
    Modified,
}

fn check_sign(family: &'static str, eps: f64) -> Result<(), CatalogError> {
    if eps == 1.0 || eps == -1.0 {
        Ok(())
    } else {
        Err(CatalogError::ParamOutOfRange {
            family,
            name: "eps",
            value: eps,
            expected: "-1 or 1".into(),
        })
    }
}

/// Separable solutions u = e^{εt}·|x|^{1/2}·Z(|x|) with Z a cylinder pair of
/// order κ. Which pair solves the equation depends on the sign: the reduced
/// radial equation is φ″ + μω⁻²φ = εφ, oscillatory (J, Y) for ε = −1 and
/// modified (I, K) for ε = +1. Requires 4μ ≤ 1 (real order).
fn cylinder_core(
    kp: &KappaParams,
    eps: f64,
    pairing: CylinderPairing,
    c1: f64,
    c2: f64,
) -> Result<Core, CatalogError> {
    let k = match kp.kappa() {
        KappaValue::Real(k) => k,
        KappaValue::Imaginary(_) => {
            return Err(CatalogError::ParamOutOfRange {
                family: "heatisq.cylinder",
                name: "mu",
                value: kp.mu(),
                expected: "4*mu <= 1 (the cylinder order must be real)".into(),
            });
        }
    };
    let (k1, k2) = match pairing {
        CylinderPairing::Oscillatory => (CylinderKind::J, CylinderKind::Y),
        CylinderPairing::Modified => (CylinderKind::I, CylinderKind::K),
    };
    Ok(Core {
        dom: Box::new(|_t, x| {
            x.abs() > COORD_COLLAR && x.abs() <= specfun::BESSEL_ENVELOPE_Z
        }),
        eval: Box::new(move |t, x| {
            let (tj, xj, _yj) = seed(t, x, 0.0);
            let s = x.abs();
            let b1 = specfun::bessel_triple(k1, k, s).map_err(sf_jet)?;
            let b2 = specfun::bessel_triple(k2, k, s).map_err(sf_jet)?;
            let b: [f64; 3] = std::array::from_fn(|i| c1 * b1[i].re + c2 * b2[i].re);
            let r = s.sqrt();
            let g0 = r * b[0];
            let g1 = b[0] / (2.0 * r) + r * b[1];
            let g2 = -b[0] / (4.0 * r * s) + b[1] / r + r * b[2];
            let radial = compose1([g0, x.signum() * g1, g2], &xj);
            let et = lift(Elementary::Exp, &tj.scale(eps))?;
            Ok(et * radial)
        }),
    })
}

/// The scaling-invariant similarity family, over the similarity variable
/// ω = x²/(4|t|) with ε′ = sgn t:
///
/// ```text
/// u = |t|^ν·|x|^{−1/2}·e^{−ε′ω/2}·(C₁·M_{−ε′ν,κ′}(ω) + C₂·W_{−ε′ν,κ′}(ω)).
/// ```
///
/// The reduced equation in the signed variable x²/(4t) is the same Whittaker
/// equation on both time branches; reflecting to |t| flips the sign of the
/// first index and of the exponential half-argument together, which is
/// exactly what the ε′ in the formula encodes. Requires 4μ < 1.
fn s12_core(kp: &KappaParams, nu: f64, c1: f64, c2: f64) -> Result<Core, CatalogError> {
    let kpr = match kp.kappa_prime() {
        KappaValue::Real(v) if v > 0.0 => v,
        _ => {
            return Err(CatalogError::ParamOutOfRange {
                family: "heatisq.s12",
                name: "mu",
                value: kp.mu(),
                expected: "4*mu < 1 (the scaling family needs a real positive order)".into(),
            });
        }
    };
    let cap = if c2 != 0.0 {
        WHITTAKER_W_ARG_CAP
    } else {
        WHITTAKER_ARG_CAP
    };
    Ok(Core {
        dom: Box::new(move |t, x| {
            t.abs() > COORD_COLLAR
                && x.abs() > COORD_COLLAR
                && x * x / (4.0 * t.abs()) <= cap
        }),
        eval: Box::new(move |t, x| {
            let ep = t.signum();
            let (tj, xj, _yj) = seed(t, x, 0.0);
            let om = (xj * xj * lift(Elementary::AbsPow(-1.0), &tj)?).scale(0.25);
            let z = Complex64::new(om.value(), 0.0);
            let a = Complex64::new(-ep * nu, 0.0);
            let m = specfun::whittaker_triple(WhittakerKind::M, a, kpr, z).map_err(sf_jet)?;
            let mut w: [f64; 3] = std::array::from_fn(|i| c1 * m[i].re);
            if c2 != 0.0 {
                let ww =
                    specfun::whittaker_triple(WhittakerKind::W, a, kpr, z).map_err(sf_jet)?;
                for i in 0..3 {
                    w[i] += c2 * ww[i].re;
                }
            }
            // Product with e^{−ε′z/2}: value, d/dz, d²/dz² (ε′² = 1).
            let e = (-ep * om.value() / 2.0).exp();
            let phi: UniJet2 = [
                e * w[0],
                e * (w[1] - ep * w[0] / 2.0),
                e * (w[2] - ep * w[1] + w[0] / 4.0),
            ];
            let pre = lift(Elementary::AbsPow(nu), &tj)? * lift(Elementary::AbsPow(-0.5), &xj)?;
            Ok(pre * compose1(phi, &om))
        }),
    })
}

/// The rotation-type similarity family, over s = x²/(2(t²+1)):
///
/// ```text
/// u = |x|^{−1/2}·exp(−x²t/(4(t²+1)) + 2ν·arctan t)·Re((C₁ − iC₂)·W_{iν,κ′}(i·s)),
/// ```
///
/// with the imaginary-order variant W_{iν,i|κ′|} for 4μ > 1 (the function is
/// genuinely complex at imaginary argument, so the real parts of the two
/// constants span a two-dimensional real solution space). Requires 4μ ≠ 1.
fn s13_core(kp: &KappaParams, nu: f64, c1: f64, c2: f64) -> Result<Core, CatalogError> {
    let order = match kp.kappa_prime() {
        KappaValue::Real(v) if v == 0.0 => {
            return Err(CatalogError::ParamOutOfRange {
                family: "heatisq.s13",
                name: "mu",
                value: kp.mu(),
                expected: "4*mu != 1 (integer Whittaker second index is outside the envelope)"
                    .into(),
            });
        }
        o => o,
    };
    Ok(Core {
        dom: Box::new(move |t, x| {
            x.abs() > COORD_COLLAR && x * x / (2.0 * (t * t + 1.0)) <= WHITTAKER_W_ARG_CAP
        }),
        eval: Box::new(move |t, x| {
            let (tj, xj, _yj) = seed(t, x, 0.0);
            let q = tj * tj + Jet2::constant(1.0);
            let qi = q.recip()?;
            let sj = (xj * xj * qi).scale(0.5);
            let ej = (xj * xj * tj * qi).scale(-0.25)
                + lift(Elementary::Atan, &tj)?.scale(2.0 * nu);
            let z = Complex64::new(0.0, sj.value());
            let a = Complex64::new(0.0, nu);
            let w = match order {
                KappaValue::Real(v) => {
                    specfun::whittaker_triple(WhittakerKind::W, a, v, z).map_err(sf_jet)?
                }
                KappaValue::Imaginary(m) => {
                    specfun::whittaker_imag_order_triple(WhittakerKind::W, a, m, z)
                        .map_err(sf_jet)?
                }
            };
            // g(s) = W(i·s): g′ = i·W′, g″ = −W″ along the imaginary axis.
            let coef = Complex64::new(c1, -c2);
            let g: UniJet2 = [
                (coef * w[0]).re,
                (coef * w[1] * Complex64::i()).re,
                -(coef * w[2]).re,
            ];
            let pre = lift(Elementary::AbsPow(-0.5), &xj)? * lift(Elementary::Exp, &ej)?;
            Ok(pre * compose1(g, &sj))
        }),
    })
}

// ---------------------------------------------------------------------------
// Public family constructors.

/// Stationary equidimensional solutions; see [`euler_core`] for the three κ
/// regimes. At μ = 5/36 with C₂ = 0 the family collapses to C₁·|x|^{5/6}.
pub fn euler_family(mu: f64, c1: f64, c2: f64) -> Result<Solution, CatalogError> {
    let kp = KappaParams::new(mu)?;
    let core = euler_core(&kp, c1, c2);
    let bx = DomainBox::new([-1.0, 0.3, 0.0], [1.0, 2.3, 1.0]);
    register(
        format!("heatisq.euler(mu={mu}, c1={c1}, c2={c2})"),
        core,
        mu,
        &bx,
        0,
    )
}

/// Separable exponential-in-time solutions with the cylinder pair resolved
/// by the sign: (J, Y) for ε = −1, (I, K) for ε = +1. Requires 4μ ≤ 1.
pub fn cylinder_family(mu: f64, eps: f64, c1: f64, c2: f64) -> Result<Solution, CatalogError> {
    check_sign("heatisq.cylinder", eps)?;
    let kp = KappaParams::new(mu)?;
    let pairing = if eps < 0.0 {
        CylinderPairing::Oscillatory
    } else {
        CylinderPairing::Modified
    };
    let core = cylinder_core(&kp, eps, pairing, c1, c2)?;
    let bx = DomainBox::new([-1.0, 0.5, 0.0], [1.0, 6.0, 1.0]);
    register(
        format!("heatisq.cylinder(mu={mu}, eps={eps}, c1={c1}, c2={c2})"),
        core,
        mu,
        &bx,
        1,
    )
}

/// The separable family with an explicit pairing choice and no registration
/// sweep, for resolution probes: of the two pairings exactly one solves the
/// equation for each sign ε, and this constructor lets a caller check both.
pub fn cylinder_candidate(
    mu: f64,
    eps: f64,
    pairing: CylinderPairing,
    c1: f64,
    c2: f64,
) -> Result<Solution, CatalogError> {
    check_sign("heatisq.cylinder", eps)?;
    let kp = KappaParams::new(mu)?;
    let Core { dom, eval } = cylinder_core(&kp, eps, pairing, c1, c2)?;
    Ok(Solution::new(
        format!("heatisq.cylinder(mu={mu}, eps={eps}, pairing={pairing:?}, c1={c1}, c2={c2})"),
        move |t, x, _y| dom(t, x),
        move |t, x, _y| eval(t, x),
    ))
}

/// The two Whittaker-type similarity families, labeled by their reducing
/// subalgebras in the classification of `liealg::hisq_representatives`:
/// `S12` from the scaling subalgebra ⟨D + νI⟩ and `S13` from the compact
/// one ⟨Pt + K + 2νI⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhittakerFamilyKind {
    S12,
    S13,
}

/// Similarity solutions of the scaling (S12) and rotation-type (S13)
/// reductions; see [`s12_core`] and [`s13_core`] for the closed forms and
/// their μ envelopes.
pub fn whittaker_family(
    kind: WhittakerFamilyKind,
    mu: f64,
    nu: f64,
    c1: f64,
    c2: f64,
) -> Result<Solution, CatalogError> {
    let kp = KappaParams::new(mu)?;
    match kind {
        WhittakerFamilyKind::S12 => {
            let core = s12_core(&kp, nu, c1, c2)?;
            let bx = DomainBox::new([0.2, 0.3, 0.0], [1.5, 2.0, 1.0]);
            register(
                format!("heatisq.s12(mu={mu}, nu={nu}, c1={c1}, c2={c2})"),
                core,
                mu,
                &bx,
                2,
            )
        }
        WhittakerFamilyKind::S13 => {
            let core = s13_core(&kp, nu, c1, c2)?;
            let bx = DomainBox::new([-1.0, 0.3, 0.0], [1.0, 2.0, 1.0]);
            register(
                format!("heatisq.s13(mu={mu}, nu={nu}, c1={c1}, c2={c2})"),
                core,
                mu,
                &bx,
                3,
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Catalog bridge.

/// Solution families available as catalog potential plugins, as (id, form)
/// pairs; here κ and κ′ are the spectral parameters of the plugin's μ and
/// ε′ = sgn z₁.
pub static THETA_MU_TABLE: &[(&str, &str)] = &[
    (
        "heatisq.euler",
        "c1 |z2|^(1/2+kappa) + c2 |z2|^(1/2-kappa), logarithmic at 4 mu = 1, log-periodic at 4 mu > 1",
    ),
    (
        "heatisq.cylinder",
        "exp(eps z1) |z2|^(1/2) (c1 J_kappa(|z2|) + c2 Y_kappa(|z2|)), with (I, K) in place of (J, Y) for eps = +1",
    ),
    (
        "heatisq.s12",
        "|z1|^nu |z2|^(-1/2) exp(-eps' w/2) (c1 M_{-eps' nu, kappa'}(w) + c2 W_{-eps' nu, kappa'}(w)), w = z2^2/(4 |z1|)",
    ),
    (
        "heatisq.s13",
        "|z2|^(-1/2) exp(-z2^2 z1/(4 (z1^2+1)) + 2 nu arctan z1) Re((c1 - i c2) W_{i nu, kappa'}(i z2^2/(2 (z1^2+1))))",
    ),
    ("heatisq.zero", "0"),
];

fn resolve_params(
    family: &'static str,
    allowed: &[(&'static str, f64)],
    given: &[(&str, f64)],
) -> Result<Vec<f64>, CatalogError> {
    let mut vals: Vec<f64> = allowed.iter().map(|(_, d)| *d).collect();
    for (name, v) in given {
        match allowed.iter().position(|(n, _)| n == name) {
            Some(i) => vals[i] = *v,
            None => {
                return Err(CatalogError::UnknownParam {
                    family,
                    name: (*name).to_string(),
                })
            }
        }
    }
    Ok(vals)
}

/// Packages a solution family as a catalog potential plugin: the (t, x)
/// evaluator is reinterpreted over (z₁, z₂) and registered behind the
/// catalog's independent potential-equation sweep. Parameters are
/// name-value pairs with family defaults, as in `catalog::instantiate`.
pub fn theta_mu_plugin(
    mu: f64,
    family: &str,
    params: &[(&str, f64)],
) -> Result<PotentialPlugin, CatalogError> {
    let kp = KappaParams::new(mu)?;
    match family {
        "heatisq.euler" => {
            let v = resolve_params("heatisq.euler", &[("c1", 1.0), ("c2", 0.0)], params)?;
            as_plugin(
                family,
                mu,
                euler_core(&kp, v[0], v[1]),
                PlaneBox::new([0.5, 0.3], [2.0, 2.3]),
            )
        }
        "heatisq.cylinder" => {
            let v = resolve_params(
                "heatisq.cylinder",
                &[("eps", -1.0), ("c1", 1.0), ("c2", 0.0)],
                params,
            )?;
            check_sign("heatisq.cylinder", v[0])?;
            let pairing = if v[0] < 0.0 {
                CylinderPairing::Oscillatory
            } else {
                CylinderPairing::Modified
            };
            as_plugin(
                family,
                mu,
                cylinder_core(&kp, v[0], pairing, v[1], v[2])?,
                PlaneBox::new([-1.0, 0.5], [1.0, 6.0]),
            )
        }
        "heatisq.s12" => {
            let v = resolve_params(
                "heatisq.s12",
                &[("nu", 1.0), ("c1", 1.0), ("c2", 0.0)],
                params,
            )?;
            as_plugin(
                family,
                mu,
                s12_core(&kp, v[0], v[1], v[2])?,
                PlaneBox::new([0.2, 0.3], [1.5, 2.0]),
            )
        }
        "heatisq.s13" => {
            let v = resolve_params(
                "heatisq.s13",
                &[("nu", 0.5), ("c1", 1.0), ("c2", 0.0)],
                params,
            )?;
            as_plugin(
                family,
                mu,
                s13_core(&kp, v[0], v[1], v[2])?,
                PlaneBox::new([-1.0, 0.3], [1.0, 2.0]),
            )
        }
        "heatisq.zero" => {
            resolve_params("heatisq.zero", &[], params)?;
            as_plugin(
                family,
                mu,
                Core {
                    dom: Box::new(|_, _| true),
                    eval: Box::new(|_, _| Ok(Jet2::constant(0.0))),
                },
                PlaneBox::new([0.0, 0.2], [1.0, 1.2]),
            )
        }
        _ => Err(CatalogError::UnknownFamily(family.to_string())),
    }
}
