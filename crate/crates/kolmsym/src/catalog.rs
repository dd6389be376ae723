//! Registry of exact-solution families of the Kolmogorov equation
//! u_t + x·u_y = u_xx, together with the plug-in catalogs of heat-equation
//! solutions θ(z₁,z₂) and inverse-square-potential solutions θ^μ(z₁,z₂)
//! that parameterize the open-ended families.
//!
//! Every family is exposed through a uniform interface: a schema of named
//! scalar parameters with defaults and ranges, a set of named plugin slots,
//! a default sampling box avoiding the family's singular loci, and an
//! evaluator producing full second-order jets. [`instantiate`] resolves the
//! schema, wires the plugins, and registers the result as a [`Solution`]
//! behind a residual smoke test, so a transcription error in any closed form
//! is caught at construction time rather than at use time.
//!
//! Heat plugins carry more than a bivariate 2-jet: a solution of
//! θ_1 = θ_22 has every mixed derivative reducible to a pure z₂-derivative,
//! θ_{1^a 2^b} = θ_{2^(2a+b)}, so a plugin evaluates the stack
//! [θ, θ_2, ..., θ_{2^6}] of the first six z₂-derivatives. Seven entries are
//! exactly what the generalized families need: they read θ¹_22 as a factor,
//! and the full second-order jet of θ¹_22 reaches θ_{2^6}. Registration
//! verifies the heat equation itself (z₁-derivative of the stack bottom
//! against the second entry, by high-order finite differences) plus the
//! internal coherence of the stack, so a plugin cannot claim derivatives it
//! does not have.

use crate::group::{fundamental_solution, GroupError, Solution};
use crate::jetcalc::{
    compose1, compose2, lift, seed, BiJet2, DomainBox, Elementary, Equation, FieldEval, Jet2,
    JetError, QuasiSampler, UniJet2,
};
use crate::specfun::{self, AiryKind, SpecFunError};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

// Re-exported for callers that act on catalog output; keeps the common
// workflow (instantiate, transform, re-sample) on one import path.
pub use crate::group::act_on_solution as transform_solution;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown solution family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` has no parameter `{name}`")]
    UnknownParam { family: &'static str, name: String },
    #[error("family `{family}` parameter `{name}` = {value} outside {expected}")]
    ParamOutOfRange {
        family: &'static str,
        name: &'static str,
        value: f64,
        expected: String,
    },
    #[error("family `{family}` requires a plugin in slot `{slot}`")]
    MissingPlugin {
        family: &'static str,
        slot: &'static str,
    },
    #[error("family `{family}` rejects plugin `{plugin}`: {detail}")]
    PluginMismatch {
        family: &'static str,
        plugin: String,
        detail: String,
    },
    #[error("plugin `{id}` rejected at registration: {detail}")]
    PluginRejected { id: String, detail: String },
    #[error("superposition of an empty list")]
    EmptySuperposition,
    #[error("registration rejected the instantiated family: {0}")]
    Rejected(#[from] GroupError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] JetError),
}

/// Potential strength of the inverse-square heat equation produced by the
/// stationary-in-t reduction; the quarter-power change of variables maps the
/// reduced equation z₂w_1 = w_22 to θ_1 = θ_22 + μz₂⁻²θ with exactly this μ.
pub const THETA12_MU: f64 = 5.0 / 36.0;

/// Gate for plugin registration sweeps. Plugins are closed forms, so their
/// stack must match finite differences to quadrature accuracy; the gate sits
/// two orders above the stencil's truncation floor (~1e-11 for the shipped
/// stacks) and far below any honest transcription error.
const PLUGIN_RESIDUAL_TOL: f64 = 1e-9;

/// Points per plugin registration sweep; enough to hit every quadrant of the
/// plugin's plane box while keeping constructors cheap.
const PLUGIN_SWEEP_POINTS: usize = 60;

/// Relative step of the five-point derivative stencil used in plugin
/// registration. Truncation scales as h⁴·f⁽⁵⁾/30 (~6e-12 for the sharpest
/// shipped stack, the kernel near z₁ = 1/2), roundoff as ε/h (~2e-13), both
/// below PLUGIN_RESIDUAL_TOL with margin.
const FD_STEP: f64 = 5e-4;

/// Collar half-width excluded around coordinate degeneracies (t = 0, x = 0,
/// y = 0) in families carrying fractional powers or reciprocals of that
/// coordinate. Inside the collar the jet entries grow like a negative power
/// of the distance and the evaluator loses relative accuracy; the default
/// boxes stay two orders of magnitude away.
const SHEET_COLLAR: f64 = 1e-3;

/// Largest confluent-hypergeometric argument a family evaluator accepts,
/// kept under the series envelope (40) so the two parameter shifts used for
/// derivatives stay valid as well.
const KUMMER_ARG_CAP: f64 = 38.0;

/// Cap on the argument of the second standard confluent solution U. Its
/// connection-formula evaluation cancels like e^z, so relative accuracy at
/// the cap is ~e^10·1e-16 = 2e-12, still clear of the residual gates.
const KUMMER_U_ARG_CAP: f64 = 10.0;

/// Largest Airy argument a family evaluator accepts, inside the validated
/// envelope (30) with margin.
const AIRY_ARG_CAP: f64 = 28.0;

/// Smallest heat time the kernel plugin admits. Below it the Gaussian spike
/// narrows past what the registration stencil can resolve at FD_STEP.
const KERNEL_MIN_TIME: f64 = 0.05;

/// Strict positivity margin for the 2t³ - 1 factor of the decaying Gaussian
/// family; at the margin the exponent is ~1e3, already deep in underflow
/// territory for the solution's tails but still finite.
const GAUSS3_MARGIN: f64 = 1e-3;

/// Gauss-Hermite points per axis for the mass integral. The integrand of a
/// correctly normalized kernel is exactly constant after the substitution,
/// so the rule's only job is to expose a wrong constant or a wrong quadratic
/// form; 20 points integrate polynomials through degree 39 exactly.
const HERMITE_POINTS: usize = 20;

/// Base seed for per-family registration sweeps.
const REGISTRY_SEED: u64 = 0x0CA7_A106;

/// Seed for plugin registration sweeps.
const PLUGIN_SWEEP_SEED: u64 = 0x0CA7_5EED;

pub(crate) fn sf_jet(e: SpecFunError) -> JetError {
    match e {
        SpecFunError::OutOfEnvelope { func, value }
        | SpecFunError::Domain { func, value }
        | SpecFunError::Pole { func, value } => JetError::Domain { func, arg: value },
        SpecFunError::UnsupportedOrder { func, nu } => JetError::Domain { func, arg: nu },
        SpecFunError::Convergence { func } => JetError::Domain {
            func,
            arg: f64::NAN,
        },
    }
}

// ---------------------------------------------------------------------------
// Plugins.

/// Rectangle in the (z₁, z₂) plane over which a plugin is registered.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlaneBox {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl PlaneBox {
    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> PlaneBox {
        for i in 0..2 {
            assert!(lo[i] <= hi[i], "empty plane box in slot {i}");
        }
        PlaneBox { lo, hi }
    }

    fn embed(&self) -> DomainBox {
        DomainBox::new([self.lo[0], self.lo[1], 0.0], [self.hi[0], self.hi[1], 1.0])
    }
}

/// Derivative stack of a heat-equation solution at one point: the value and
/// the first six pure z₂-derivatives, [θ, θ_2, θ_22, ..., θ_{2^6}].
pub type HeatStack = [f64; 7];

/// A solution θ(z₁, z₂) of the heat equation θ_1 = θ_22, evaluated as a
/// derivative stack. See the module documentation for why a stack of seven
/// pure z₂-derivatives determines every jet the solution families read.
#[derive(Clone)]
pub struct HeatPlugin {
    id: String,
    domain: Arc<dyn Fn(f64, f64) -> bool + Send + Sync>,
    eval: Arc<dyn Fn(f64, f64) -> Result<HeatStack, JetError> + Send + Sync>,
}

impl fmt::Debug for HeatPlugin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeatPlugin({})", self.id)
    }
}

/// Five-point first derivative from samples at -2h, -h, +h, +2h.
fn five_point(m2: f64, m1: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)
}

impl HeatPlugin {
    /// Registers a heat plugin after sweeping its box: at each sample point
    /// the z₁-derivative of the stack bottom must match the third stack
    /// entry (this is the heat equation; the stack asserts it structurally,
    /// the sweep checks it numerically), and each stack entry must be the
    /// z₂-derivative of the previous one. Both checks run through five-point
    /// stencils, so a plugin whose stack disagrees with its own values at
    /// the 1e-9 level is rejected.
    pub fn registered(
        id: impl Into<String>,
        domain: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
        eval: impl Fn(f64, f64) -> Result<HeatStack, JetError> + Send + Sync + 'static,
        bx: PlaneBox,
    ) -> Result<HeatPlugin, CatalogError> {
        let plugin = HeatPlugin {
            id: id.into(),
            domain: Arc::new(domain),
            eval: Arc::new(eval),
        };
        let reject = |detail: String| CatalogError::PluginRejected {
            id: plugin.id.clone(),
            detail,
        };
        let sampler = QuasiSampler::new(PLUGIN_SWEEP_SEED);
        let bx3 = bx.embed();
        let mut checked = 0usize;
        let mut max_rel = 0.0f64;
        for k in 0..PLUGIN_SWEEP_POINTS {
            let p = sampler.point(&bx3, k);
            let (z1, z2) = (p[0], p[1]);
            let h1 = FD_STEP * (1.0 + z1.abs());
            let h2 = FD_STEP * (1.0 + z2.abs());
            let stencil_ok = |dz1: f64, dz2: f64| (plugin.domain)(z1 + dz1, z2 + dz2);
            let all_ok = (plugin.domain)(z1, z2)
                && [-2.0, -1.0, 1.0, 2.0].iter().all(|m| {
                    stencil_ok(m * h1, 0.0) && stencil_ok(0.0, m * h2)
                });
            if !all_ok {
                continue;
            }
            let at = |dz1: f64, dz2: f64| -> Result<HeatStack, CatalogError> {
                (plugin.eval)(z1 + dz1, z2 + dz2)
                    .map_err(|e| reject(format!("evaluation failed inside its box: {e}")))
            };
            let c = at(0.0, 0.0)?;
            let scale = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let t_m2 = at(-2.0 * h1, 0.0)?;
            let t_m1 = at(-h1, 0.0)?;
            let t_p1 = at(h1, 0.0)?;
            let t_p2 = at(2.0 * h1, 0.0)?;
            let dt = five_point(t_m2[0], t_m1[0], t_p1[0], t_p2[0], h1);
            max_rel = max_rel.max((dt - c[2]).abs() / scale);
            let x_m2 = at(0.0, -2.0 * h2)?;
            let x_m1 = at(0.0, -h2)?;
            let x_p1 = at(0.0, h2)?;
            let x_p2 = at(0.0, 2.0 * h2)?;
            for j in 0..6 {
                let dj = five_point(x_m2[j], x_m1[j], x_p1[j], x_p2[j], h2);
                max_rel = max_rel.max((dj - c[j + 1]).abs() / scale);
            }
            checked += 1;
        }
        if checked * 2 < PLUGIN_SWEEP_POINTS {
            return Err(reject(format!(
                "domain too thin: {checked} of {PLUGIN_SWEEP_POINTS} sweep points admissible"
            )));
        }
        if max_rel > PLUGIN_RESIDUAL_TOL {
            return Err(reject(format!(
                "stack disagrees with finite differences: max relative deviation {max_rel:.3e}"
            )));
        }
        Ok(plugin)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn admissible(&self, z1: f64, z2: f64) -> bool {
        (self.domain)(z1, z2)
    }

    pub fn stack(&self, z1: f64, z2: f64) -> Result<HeatStack, JetError> {
        (self.eval)(z1, z2)
    }

    /// Bivariate 2-jet of the k-th z₂-derivative of θ, k ≤ 2, with the mixed
    /// and z₁ entries filled through θ_{1^a 2^b} = θ_{2^(2a+b)}.
    pub fn derived_bijet(&self, z1: f64, z2: f64, k: usize) -> Result<BiJet2, JetError> {
        assert!(k <= 2, "stack views support z2-derivative order up to two");
        let s = self.stack(z1, z2)?;
        Ok(BiJet2 {
            v: s[k],
            d1: s[k + 2],
            d2: s[k + 1],
            d11: s[k + 4],
            d12: s[k + 3],
            d22: s[k + 2],
        })
    }

    /// Bivariate 2-jet of θ itself.
    pub fn bijet(&self, z1: f64, z2: f64) -> Result<BiJet2, JetError> {
        self.derived_bijet(z1, z2, 0)
    }
}

/// A solution θ^μ(z₁, z₂) of the inverse-square-potential heat equation
/// θ_1 = θ_22 + μz₂⁻²θ, evaluated as a bivariate 2-jet. Unlike [`HeatPlugin`]
/// no deeper stack is needed: the one family consuming this slot reads θ^μ
/// undifferentiated, so its full jet needs nothing past second order.
#[derive(Clone)]
pub struct PotentialPlugin {
    id: String,
    mu: f64,
    domain: Arc<dyn Fn(f64, f64) -> bool + Send + Sync>,
    eval: Arc<dyn Fn(f64, f64) -> Result<BiJet2, JetError> + Send + Sync>,
}

impl fmt::Debug for PotentialPlugin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PotentialPlugin({}, mu={})", self.id, self.mu)
    }
}

impl PotentialPlugin {
    /// Registers a potential plugin after sweeping its box: the jet itself
    /// carries independent d1 and d22 slots, so the equation residual
    /// d1 - d22 - μz₂⁻²v is a direct, non-circular check.
    pub fn registered(
        id: impl Into<String>,
        mu: f64,
        domain: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
        eval: impl Fn(f64, f64) -> Result<BiJet2, JetError> + Send + Sync + 'static,
        bx: PlaneBox,
    ) -> Result<PotentialPlugin, CatalogError> {
        let plugin = PotentialPlugin {
            id: id.into(),
            mu,
            domain: Arc::new(domain),
            eval: Arc::new(eval),
        };
        let reject = |detail: String| CatalogError::PluginRejected {
            id: plugin.id.clone(),
            detail,
        };
        let sampler = QuasiSampler::new(PLUGIN_SWEEP_SEED);
        let bx3 = bx.embed();
        let mut checked = 0usize;
        let mut max_rel = 0.0f64;
        for k in 0..PLUGIN_SWEEP_POINTS {
            let p = sampler.point(&bx3, k);
            let (z1, z2) = (p[0], p[1]);
            if z2 == 0.0 || !(plugin.domain)(z1, z2) {
                continue;
            }
            let w = (plugin.eval)(z1, z2)
                .map_err(|e| reject(format!("evaluation failed inside its box: {e}")))?;
            let pot = mu / (z2 * z2) * w.v;
            let res = w.d1 - w.d22 - pot;
            let scale = 1.0f64.max(w.d1.abs()).max(w.d22.abs()).max(pot.abs());
            max_rel = max_rel.max(res.abs() / scale);
            checked += 1;
        }
        if checked * 2 < PLUGIN_SWEEP_POINTS {
            return Err(reject(format!(
                "domain too thin: {checked} of {PLUGIN_SWEEP_POINTS} sweep points admissible"
            )));
        }
        if max_rel > PLUGIN_RESIDUAL_TOL {
            return Err(reject(format!(
                "potential-equation residual too large: {max_rel:.3e}"
            )));
        }
        Ok(plugin)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Potential strength μ the plugin solves for.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn admissible(&self, z1: f64, z2: f64) -> bool {
        (self.domain)(z1, z2)
    }

    pub fn bijet(&self, z1: f64, z2: f64) -> Result<BiJet2, JetError> {
        (self.eval)(z1, z2)
    }
}

// ---------------------------------------------------------------------------
// Shipped heat plugins.

/// Heat kernel z₁^{-1/2}·e^{-z₂²/(4z₁)} on z₁ > KERNEL_MIN_TIME. The stack
/// follows the Gaussian derivative recurrence f⁽ᵏ⁺¹⁾ = -(z₂f⁽ᵏ⁾ + kf⁽ᵏ⁻¹⁾)/(2z₁),
/// which is exact arithmetic, not an approximation.
pub fn heat_kernel() -> HeatPlugin {
    HeatPlugin::registered(
        "heat.kernel",
        |z1, _| z1 > KERNEL_MIN_TIME,
        |z1, z2| {
            let mut s = [0.0; 7];
            s[0] = z1.powf(-0.5) * (-z2 * z2 / (4.0 * z1)).exp();
            s[1] = -(z2 / (2.0 * z1)) * s[0];
            for k in 1..6 {
                s[k + 1] = -(z2 * s[k] + k as f64 * s[k - 1]) / (2.0 * z1);
            }
            Ok(s)
        },
        PlaneBox::new([0.5, -2.0], [2.5, 2.0]),
    )
    .expect("closed-form heat kernel passes its own registration sweep")
}

/// Heat polynomial of the given degree: 1, z₂, z₂² + 2z₁, z₂³ + 6z₁z₂.
pub fn heat_poly(degree: usize) -> HeatPlugin {
    assert!(degree <= 3, "shipped heat polynomials stop at degree three");
    let eval = move |z1: f64, z2: f64| -> Result<HeatStack, JetError> {
        let mut s = [0.0; 7];
        match degree {
            0 => s[0] = 1.0,
            1 => {
                s[0] = z2;
                s[1] = 1.0;
            }
            2 => {
                s[0] = z2 * z2 + 2.0 * z1;
                s[1] = 2.0 * z2;
                s[2] = 2.0;
            }
            _ => {
                s[0] = z2 * z2 * z2 + 6.0 * z1 * z2;
                s[1] = 3.0 * z2 * z2 + 6.0 * z1;
                s[2] = 6.0 * z2;
                s[3] = 6.0;
            }
        }
        Ok(s)
    };
    HeatPlugin::registered(
        format!("heat.poly{degree}"),
        |_, _| true,
        eval,
        PlaneBox::new([-3.0, -3.0], [3.0, 3.0]),
    )
    .expect("heat polynomials pass their own registration sweep")
}

/// Exponential solution e^{z₁ + sign·z₂}; sign must be ±1.
pub fn heat_exp(sign: f64) -> HeatPlugin {
    assert!(
        sign == 1.0 || sign == -1.0,
        "exponential heat solution takes sign -1 or 1"
    );
    let id = if sign > 0.0 { "heat.exp+" } else { "heat.exp-" };
    HeatPlugin::registered(
        id,
        |_, _| true,
        move |z1, z2| {
            let v = (z1 + sign * z2).exp();
            let mut s = [0.0; 7];
            let mut f = 1.0;
            for e in &mut s {
                *e = f * v;
                f *= sign;
            }
            Ok(s)
        },
        PlaneBox::new([-3.0, -3.0], [3.0, 3.0]),
    )
    .expect("exponential heat solution passes its own registration sweep")
}

/// Decaying oscillation e^{-z₁}·sin z₂.
pub fn heat_trig() -> HeatPlugin {
    HeatPlugin::registered(
        "heat.trig",
        |_, _| true,
        |z1, z2| {
            let e = (-z1).exp();
            let (sn, cs) = (z2.sin() * e, z2.cos() * e);
            Ok([sn, cs, -sn, -cs, sn, cs, -sn])
        },
        PlaneBox::new([-3.0, -3.0], [3.0, 3.0]),
    )
    .expect("decaying trig heat solution passes its own registration sweep")
}

/// The zero solution; useful for emptying one slot of a two-slot family.
pub fn heat_zero() -> HeatPlugin {
    HeatPlugin::registered(
        "heat.zero",
        |_, _| true,
        |_, _| Ok([0.0; 7]),
        PlaneBox::new([-3.0, -3.0], [3.0, 3.0]),
    )
    .expect("zero solution passes its own registration sweep")
}

/// Shipped heat plugins by id and closed form, in manifest order.
static HEAT_PLUGIN_TABLE: &[(&str, &str)] = &[
    ("heat.kernel", "z1^(-1/2) exp(-z2^2/(4 z1))"),
    ("heat.poly0", "1"),
    ("heat.poly1", "z2"),
    ("heat.poly2", "z2^2 + 2 z1"),
    ("heat.poly3", "z2^3 + 6 z1 z2"),
    ("heat.exp+", "exp(z1 + z2)"),
    ("heat.exp-", "exp(z1 - z2)"),
    ("heat.trig", "exp(-z1) sin(z2)"),
    ("heat.zero", "0"),
];

/// Constructs a shipped heat plugin by manifest id.
pub fn heat_plugin(id: &str) -> Option<HeatPlugin> {
    match id {
        "heat.kernel" => Some(heat_kernel()),
        "heat.poly0" => Some(heat_poly(0)),
        "heat.poly1" => Some(heat_poly(1)),
        "heat.poly2" => Some(heat_poly(2)),
        "heat.poly3" => Some(heat_poly(3)),
        "heat.exp+" => Some(heat_exp(1.0)),
        "heat.exp-" => Some(heat_exp(-1.0)),
        "heat.trig" => Some(heat_trig()),
        "heat.zero" => Some(heat_zero()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Plugin slots and sets.

/// Named plugin slot of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Slot {
    Theta,
    Theta0,
    Theta1,
    ThetaMu,
}

impl Slot {
    pub fn name(self) -> &'static str {
        match self {
            Slot::Theta => "theta",
            Slot::Theta0 => "theta0",
            Slot::Theta1 => "theta1",
            Slot::ThetaMu => "theta_mu",
        }
    }
}

/// Plugins offered to [`instantiate`]; slots a family does not declare are
/// ignored, declared slots left empty are an error.
#[derive(Debug, Clone, Default)]
pub struct PluginSet {
    theta: Option<HeatPlugin>,
    theta0: Option<HeatPlugin>,
    theta1: Option<HeatPlugin>,
    theta_mu: Option<PotentialPlugin>,
}

impl PluginSet {
    pub fn new() -> PluginSet {
        PluginSet::default()
    }

    pub fn with_theta(mut self, p: HeatPlugin) -> PluginSet {
        self.theta = Some(p);
        self
    }

    pub fn with_theta0(mut self, p: HeatPlugin) -> PluginSet {
        self.theta0 = Some(p);
        self
    }

    pub fn with_theta1(mut self, p: HeatPlugin) -> PluginSet {
        self.theta1 = Some(p);
        self
    }

    pub fn with_theta_mu(mut self, p: PotentialPlugin) -> PluginSet {
        self.theta_mu = Some(p);
        self
    }

    fn heat(&self, slot: Slot) -> Option<&HeatPlugin> {
        match slot {
            Slot::Theta => self.theta.as_ref(),
            Slot::Theta0 => self.theta0.as_ref(),
            Slot::Theta1 => self.theta1.as_ref(),
            Slot::ThetaMu => None,
        }
    }
}

fn heat_slot<'a>(
    pl: &'a PluginSet,
    slot: Slot,
    family: &'static str,
) -> Result<&'a HeatPlugin, CatalogError> {
    pl.heat(slot).ok_or(CatalogError::MissingPlugin {
        family,
        slot: slot.name(),
    })
}

// ---------------------------------------------------------------------------
// Parameter schemas.

/// One named scalar parameter of a family.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub min: f64,
    pub max: f64,
    /// Constraint note carried into the manifest.
    pub note: &'static str,
}

const fn coef(name: &'static str, default: f64) -> ParamSpec {
    ParamSpec {
        name,
        default,
        min: -1e6,
        max: 1e6,
        note: "linear coefficient",
    }
}

const fn sign_spec(name: &'static str, note: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        default: 1.0,
        min: -1.0,
        max: 1.0,
        note,
    }
}

/// Resolved parameter values in schema order.
struct Resolved {
    vals: Vec<(&'static str, f64)>,
}

impl Resolved {
    fn get(&self, name: &str) -> f64 {
        self.vals
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .expect("parameter resolved against its own schema")
    }
}

fn resolve(def: &FamilyDef, overrides: &[(&str, f64)]) -> Result<Resolved, CatalogError> {
    let mut vals: Vec<(&'static str, f64)> =
        def.params.iter().map(|p| (p.name, p.default)).collect();
    for (name, value) in overrides {
        let spec = def
            .params
            .iter()
            .find(|p| p.name == *name)
            .ok_or_else(|| CatalogError::UnknownParam {
                family: def.id,
                name: (*name).to_string(),
            })?;
        if !value.is_finite() || *value < spec.min || *value > spec.max {
            return Err(CatalogError::ParamOutOfRange {
                family: def.id,
                name: spec.name,
                value: *value,
                expected: format!("[{}, {}]", spec.min, spec.max),
            });
        }
        let entry = vals
            .iter_mut()
            .find(|(n, _)| n == name)
            .expect("override matched the schema");
        entry.1 = *value;
    }
    Ok(Resolved { vals })
}

fn sign_param(r: &Resolved, family: &'static str, name: &'static str) -> Result<f64, CatalogError> {
    let v = r.get(name);
    if v == 1.0 || v == -1.0 {
        Ok(v)
    } else {
        Err(CatalogError::ParamOutOfRange {
            family,
            name,
            value: v,
            expected: "the set {-1, 1}".into(),
        })
    }
}

// ---------------------------------------------------------------------------
// Family registry.

type Dom = Box<dyn Fn(f64, f64, f64) -> bool + Send + Sync>;
type Eval = Box<dyn Fn(f64, f64, f64) -> Result<Jet2, JetError> + Send + Sync>;

struct Built {
    dom: Dom,
    eval: Eval,
}

struct FamilyDef {
    id: &'static str,
    /// Closed form in plain text; doubles as the manifest anchor.
    form: &'static str,
    params: &'static [ParamSpec],
    slots: &'static [Slot],
    default_box: fn(&Resolved) -> DomainBox,
    build: fn(&Resolved, &PluginSet) -> Result<Built, CatalogError>,
}

fn unit_box(_r: &Resolved) -> DomainBox {
    DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0])
}

// --- fundamental -----------------------------------------------------------

fn fundamental_box(r: &Resolved) -> DomainBox {
    let (t0, x0, y0) = (r.get("t0"), r.get("x0"), r.get("y0"));
    DomainBox::new([t0 + 0.5, x0 + 0.5, y0 + 0.5], [t0 + 2.0, x0 + 2.0, y0 + 2.0])
}

fn build_fundamental(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let src = [r.get("t0"), r.get("x0"), r.get("y0")];
    let fs = fundamental_solution(src);
    let fd = fs.clone();
    Ok(Built {
        dom: Box::new(move |t, x, y| fd.admissible(t, x, y)),
        eval: Box::new(move |t, x, y| fs.eval(t, x, y)),
    })
}

// --- quarter-power potential family ----------------------------------------

fn theta12_args(t: f64, x: f64, y: f64) -> (f64, f64) {
    let _ = t;
    (2.25 * y, x.abs().powf(1.5))
}

fn build_theta12(_r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let family = "s5.theta12";
    let plugin = pl
        .theta_mu
        .clone()
        .ok_or(CatalogError::MissingPlugin {
            family,
            slot: Slot::ThetaMu.name(),
        })?;
    if (plugin.mu() - THETA12_MU).abs() > 1e-12 {
        return Err(CatalogError::PluginMismatch {
            family,
            plugin: plugin.id().to_string(),
            detail: format!(
                "potential strength {} but the family requires {}",
                plugin.mu(),
                THETA12_MU
            ),
        });
    }
    let pd = plugin.clone();
    Ok(Built {
        dom: Box::new(move |t, x, y| {
            let (z1, z2) = theta12_args(t, x, y);
            x.abs() > SHEET_COLLAR && pd.admissible(z1, z2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let _ = tj;
            let z1 = yj.scale(2.25);
            let z2 = lift(Elementary::AbsPow(1.5), &xj)?;
            let w = plugin.bijet(z1.value(), z2.value())?;
            let pre = lift(Elementary::AbsPow(-0.25), &xj)?;
            Ok(pre * compose2(&w, &z1, &z2))
        }),
    })
}

// --- heat-equation pullback families ----------------------------------------

fn heat15_args(eps: f64, t: f64, x: f64, y: f64) -> (f64, f64) {
    let z1 = t * t * t / 3.0 + 2.0 * eps * t - 1.0 / t;
    let z2 = 2.0 * y - (t + eps / t) * x;
    (z1, z2)
}

fn build_heat15(r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let family = "s5.heat15";
    let eps = sign_param(r, family, "eps")?;
    let th = heat_slot(pl, Slot::Theta, family)?.clone();
    let td = th.clone();
    Ok(Built {
        dom: Box::new(move |t, x, y| {
            let (z1, z2) = heat15_args(eps, t, x, y);
            t.abs() > SHEET_COLLAR && td.admissible(z1, z2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let ti = tj.recip()?;
            let z1 = (tj * tj * tj).scale(1.0 / 3.0) + tj.scale(2.0 * eps) - ti;
            let z2 = yj.scale(2.0) - (tj + ti.scale(eps)) * xj;
            let w = th.bijet(z1.value(), z2.value())?;
            let pre = lift(Elementary::AbsPow(-0.5), &tj)?
                * lift(Elementary::Exp, &(xj * xj * ti).scale(-0.25))?;
            Ok(pre * compose2(&w, &z1, &z2))
        }),
    })
}

fn build_heat16(_r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let th = heat_slot(pl, Slot::Theta, "s5.heat16")?.clone();
    let td = th.clone();
    Ok(Built {
        dom: Box::new(move |t, x, y| td.admissible(t * t * t / 3.0, y - t * x)),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let z1 = (tj * tj * tj).scale(1.0 / 3.0);
            let z2 = yj - tj * xj;
            let w = th.bijet(z1.value(), z2.value())?;
            Ok(compose2(&w, &z1, &z2))
        }),
    })
}

fn build_heat17(_r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let th = heat_slot(pl, Slot::Theta, "s5.heat17")?.clone();
    let td = th.clone();
    Ok(Built {
        dom: Box::new(move |t, x, _y| td.admissible(t, x)),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            let w = th.bijet(t, x)?;
            Ok(compose2(&w, &tj, &xj))
        }),
    })
}

// --- confluent-hypergeometric families --------------------------------------

/// Univariate 2-jet of ω ↦ e^{-ω}(c₁M(a,b,ω) + c₂U(a,b,ω)), stable on both
/// signs of ω. For ω < 0 the damped first branch is rewritten through the
/// confluent transformation e^{-ω}M(a,b,ω) = M(b-a,b,-ω), which trades an
/// alternating series (cancellation ~e^{|ω|}) for a positive one; the second
/// branch U needs ω > 0 and is rejected otherwise. Derivatives come from the
/// parameter-shift identities inside the triples, not from the defining
/// equation, so downstream residual checks remain independent.
fn damped_kummer_triple(
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    om: f64,
) -> Result<UniJet2, JetError> {
    let cx = |re: f64| Complex64::new(re, 0.0);
    if om >= 0.0 {
        if c2 != 0.0 && om == 0.0 {
            return Err(JetError::Domain {
                func: "kummer_u",
                arg: 0.0,
            });
        }
        let m = specfun::kummer_m_triple(cx(a), cx(b), cx(om)).map_err(sf_jet)?;
        let mut c = [c1 * m[0].re, c1 * m[1].re, c1 * m[2].re];
        if c2 != 0.0 {
            let u = specfun::kummer_u_triple(a, b, om).map_err(sf_jet)?;
            for i in 0..3 {
                c[i] += c2 * u[i];
            }
        }
        let e = (-om).exp();
        Ok([e * c[0], e * (c[1] - c[0]), e * (c[2] - 2.0 * c[1] + c[0])])
    } else {
        if c2 != 0.0 {
            return Err(JetError::Domain {
                func: "kummer_u",
                arg: om,
            });
        }
        let m = specfun::kummer_m_triple(cx(b - a), cx(b), cx(-om)).map_err(sf_jet)?;
        Ok([c1 * m[0].re, -c1 * m[1].re, c1 * m[2].re])
    }
}

/// Shared argument guard for the confluent families: the series envelope cap
/// always, plus positivity and the tighter cap when the U branch is active.
fn kummer_arg_ok(om: f64, c2: f64) -> bool {
    om.abs() <= KUMMER_ARG_CAP && (c2 == 0.0 || (om > 0.0 && om <= KUMMER_U_ARG_CAP))
}

fn kummer21_arg(x: f64, y: f64) -> f64 {
    x * x * x / (9.0 * y)
}

fn build_kummer21(r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let _ = pl;
    let (kappa, c1, c2) = (r.get("kappa"), r.get("c1"), r.get("c2"));
    Ok(Built {
        dom: Box::new(move |_t, x, y| {
            y.abs() > SHEET_COLLAR && kummer_arg_ok(kummer21_arg(x, y), c2)
        }),
        eval: Box::new(move |t, x, y| {
            let (_tj, xj, yj) = seed(t, x, y);
            let om = (xj * xj * xj) * yj.recip()?.scale(1.0 / 9.0);
            let phi = damped_kummer_triple(kappa, 4.0 / 3.0, c1, c2, om.value())?;
            let pre = xj * lift(Elementary::AbsPow(kappa - 4.0 / 3.0), &yj)?;
            Ok(pre * compose1(phi, &om))
        }),
    })
}

fn kummer24_arg(t: f64, x: f64, y: f64) -> f64 {
    let q = y - t * x;
    0.75 * q * q / (t * t * t)
}

fn build_kummer24(r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let _ = pl;
    let family = "s6.kummer24";
    let (mu, c1, c2) = (r.get("mu"), r.get("c1"), r.get("c2"));
    let branch = sign_param(r, family, "branch")?;
    if branch < 0.0 && c2 != 0.0 {
        return Err(CatalogError::ParamOutOfRange {
            family,
            name: "c2",
            value: c2,
            expected: "0 on the t < 0 branch (the second confluent solution needs a positive argument)".into(),
        });
    }
    let a = mu / 6.0 + 2.0 / 3.0;
    let p = (mu - 5.0) / 2.0;
    Ok(Built {
        dom: Box::new(move |t, x, y| {
            t * branch > SHEET_COLLAR && kummer_arg_ok(kummer24_arg(t, x, y), c2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let q = yj - tj * xj;
            let om = (q * q) * (tj * tj * tj).recip()?.scale(0.75);
            let phi = damped_kummer_triple(a, 1.5, c1, c2, om.value())?;
            let pre = lift(Elementary::AbsPow(p), &tj)? * q;
            Ok(pre * compose1(phi, &om))
        }),
    })
}

fn kummer24_box(r: &Resolved) -> DomainBox {
    // The positive branch keeps the U argument inside [0.02, 4.7]; the
    // mirrored branch sees only the stabilized first-solution path.
    if r.get("branch") > 0.0 {
        DomainBox::new([0.75, 0.5, 1.5], [1.25, 1.0, 2.0])
    } else {
        DomainBox::new([-1.25, 0.5, 1.5], [-0.75, 1.0, 2.0])
    }
}

fn kummer25_arg(t: f64, x: f64) -> f64 {
    0.25 * x * x / t
}

fn build_kummer25(r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let _ = pl;
    let family = "s6.kummer25";
    let (mu, c1, c2) = (r.get("mu"), r.get("c1"), r.get("c2"));
    let branch = sign_param(r, family, "branch")?;
    if branch < 0.0 && c2 != 0.0 {
        return Err(CatalogError::ParamOutOfRange {
            family,
            name: "c2",
            value: c2,
            expected: "0 on the t < 0 branch (the second confluent solution needs a positive argument)".into(),
        });
    }
    let a = mu / 2.0;
    let p = (mu - 3.0) / 2.0;
    Ok(Built {
        dom: Box::new(move |t, x, _y| {
            t * branch > SHEET_COLLAR && kummer_arg_ok(kummer25_arg(t, x), c2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            let om = (xj * xj) * tj.recip()?.scale(0.25);
            let phi = damped_kummer_triple(a, 1.5, c1, c2, om.value())?;
            let pre = lift(Elementary::AbsPow(p), &tj)? * xj;
            Ok(pre * compose1(phi, &om))
        }),
    })
}

fn mirror_unit_box(r: &Resolved) -> DomainBox {
    if r.get("branch") > 0.0 {
        DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0])
    } else {
        DomainBox::new([-2.0, 0.5, 0.5], [-0.5, 2.0, 2.0])
    }
}

// --- elementary closed forms -------------------------------------------------

fn build_exp22(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let (c1, c2) = (r.get("c1"), r.get("c2"));
    Ok(Built {
        dom: Box::new(|_, _, _| true),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            let up = lift(Elementary::Exp, &(tj + xj))?;
            let dn = lift(Elementary::Exp, &(tj - xj))?;
            Ok(up.scale(c1) + dn.scale(c2))
        }),
    })
}

fn build_lin22(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let (c1, c2) = (r.get("c1"), r.get("c2"));
    Ok(Built {
        dom: Box::new(|_, _, _| true),
        eval: Box::new(move |t, x, y| {
            let (_tj, xj, _yj) = seed(t, x, y);
            Ok(xj.scale(c1) + Jet2::constant(c2))
        }),
    })
}

fn build_trig22(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let (c1, c2) = (r.get("c1"), r.get("c2"));
    Ok(Built {
        dom: Box::new(|_, _, _| true),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            let e = lift(Elementary::Exp, &tj.scale(-1.0))?;
            let sn = lift(Elementary::Sin, &xj)?;
            let cs = lift(Elementary::Cos, &xj)?;
            Ok(e * (sn.scale(c1) + cs.scale(c2)))
        }),
    })
}

fn build_airy23(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let (c1, c2) = (r.get("c1"), r.get("c2"));
    Ok(Built {
        dom: Box::new(|_, x, _| x.abs() <= AIRY_ARG_CAP),
        eval: Box::new(move |t, x, y| {
            let (_tj, xj, yj) = seed(t, x, y);
            let ai = specfun::airy_triple(AiryKind::Ai, x).map_err(sf_jet)?;
            let bi = specfun::airy_triple(AiryKind::Bi, x).map_err(sf_jet)?;
            let tri: UniJet2 = [
                c1 * ai[0] + c2 * bi[0],
                c1 * ai[1] + c2 * bi[1],
                c1 * ai[2] + c2 * bi[2],
            ];
            Ok(lift(Elementary::Exp, &yj)? * compose1(tri, &xj))
        }),
    })
}

fn build_gauss7(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let c0 = r.get("c0");
    Ok(Built {
        dom: Box::new(|t, _, _| t > SHEET_COLLAR),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            let pre = lift(Elementary::Powf(-0.5), &tj)?;
            let ex = lift(Elementary::Exp, &(xj * xj * tj.recip()?).scale(-0.25))?;
            Ok((pre * ex).scale(c0))
        }),
    })
}

fn build_const6(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let c0 = r.get("c0");
    Ok(Built {
        dom: Box::new(|_, _, _| true),
        eval: Box::new(move |_, _, _| Ok(Jet2::constant(c0))),
    })
}

fn build_gauss3(r: &Resolved, _pl: &PluginSet) -> Result<Built, CatalogError> {
    let c0 = r.get("c0");
    Ok(Built {
        dom: Box::new(|t, _, _| 2.0 * t * t * t - 1.0 > GAUSS3_MARGIN),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let d = (tj * tj * tj).scale(2.0) - Jet2::constant(1.0);
            let q = yj - tj * xj;
            let pre = lift(Elementary::Powf(-0.5), &d)?;
            let ex = lift(Elementary::Exp, &((q * q) * d.recip()?).scale(-1.5))?;
            Ok((pre * ex).scale(c0))
        }),
    })
}

fn gauss3_box(_r: &Resolved) -> DomainBox {
    // Stays clear of the 2t^3 = 1 singular sheet at t ~ 0.794.
    DomainBox::new([0.9, 0.5, 0.5], [2.0, 2.0, 2.0])
}

// --- generalized (recursion-operator) families -------------------------------

fn build_p2sq(r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let family = "s8.p2sq";
    let eps = sign_param(r, family, "eps")?;
    let th0 = heat_slot(pl, Slot::Theta0, family)?.clone();
    let th1 = heat_slot(pl, Slot::Theta1, family)?.clone();
    let (d0, d1) = (th0.clone(), th1.clone());
    Ok(Built {
        dom: Box::new(move |t, x, y| {
            let (z1, z2) = heat15_args(eps, t, x, y);
            t.abs() > SHEET_COLLAR && d0.admissible(z1, z2) && d1.admissible(z1, z2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let ti = tj.recip()?;
            let z1 = (tj * tj * tj).scale(1.0 / 3.0) + tj.scale(2.0 * eps) - ti;
            let z2 = yj.scale(2.0) - (tj + ti.scale(eps)) * xj;
            let (z1v, z2v) = (z1.value(), z2.value());
            let th1_v = compose2(&th1.derived_bijet(z1v, z2v, 0)?, &z1, &z2);
            let th1_d = compose2(&th1.derived_bijet(z1v, z2v, 1)?, &z1, &z2);
            let th0_v = compose2(&th0.bijet(z1v, z2v)?, &z1, &z2);
            let inner = ti.scale(0.5) * xj * th1_v - (tj - ti.scale(eps)) * th1_d + th0_v;
            let pre = lift(Elementary::AbsPow(-0.5), &tj)?
                * lift(Elementary::Exp, &(xj * xj * ti).scale(-0.25))?;
            Ok(pre * inner)
        }),
    })
}

fn build_p1sq(_r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let family = "s8.p1sq";
    let th0 = heat_slot(pl, Slot::Theta0, family)?.clone();
    let th1 = heat_slot(pl, Slot::Theta1, family)?.clone();
    let (d0, d1) = (th0.clone(), th1.clone());
    Ok(Built {
        dom: Box::new(move |t, x, y| {
            let (z1, z2) = (t * t * t / 3.0, y - t * x);
            d0.admissible(z1, z2) && d1.admissible(z1, z2)
        }),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let z1 = (tj * tj * tj).scale(1.0 / 3.0);
            let z2 = yj - tj * xj;
            let (z1v, z2v) = (z1.value(), z2.value());
            let th1_v = compose2(&th1.derived_bijet(z1v, z2v, 0)?, &z1, &z2);
            let th1_d = compose2(&th1.derived_bijet(z1v, z2v, 1)?, &z1, &z2);
            let th0_v = compose2(&th0.bijet(z1v, z2v)?, &z1, &z2);
            Ok(xj * th1_v - (tj * tj) * th1_d + th0_v)
        }),
    })
}

fn build_p0sq(_r: &Resolved, pl: &PluginSet) -> Result<Built, CatalogError> {
    let family = "s8.p0sq";
    let th0 = heat_slot(pl, Slot::Theta0, family)?.clone();
    let th1 = heat_slot(pl, Slot::Theta1, family)?.clone();
    let (d0, d1) = (th0.clone(), th1.clone());
    Ok(Built {
        dom: Box::new(move |t, x, _y| d0.admissible(t, x) && d1.admissible(t, x)),
        eval: Box::new(move |t, x, y| {
            let (tj, xj, yj) = seed(t, x, y);
            let th1_v = compose2(&th1.derived_bijet(t, x, 0)?, &tj, &xj);
            let th1_d = compose2(&th1.derived_bijet(t, x, 1)?, &tj, &xj);
            let th1_dd = compose2(&th1.derived_bijet(t, x, 2)?, &tj, &xj);
            let th0_v = compose2(&th0.bijet(t, x)?, &tj, &xj);
            Ok(yj * th1_dd + (xj * xj).scale(0.25) * th1_d - xj.scale(0.25) * th1_v + th0_v)
        }),
    })
}

// --- the registry ------------------------------------------------------------

static FAMILIES: &[FamilyDef] = &[
    FamilyDef {
        id: "fundamental",
        form: "sqrt(3)/(2 pi (t-t0)^2) exp(-(x-x0)^2/(4(t-t0)) - 3(y-y0-(x+x0)(t-t0)/2)^2/(t-t0)^3) for t > t0",
        params: &[
            ParamSpec { name: "t0", default: 0.0, min: -100.0, max: 100.0, note: "source time" },
            ParamSpec { name: "x0", default: 0.0, min: -100.0, max: 100.0, note: "source velocity coordinate" },
            ParamSpec { name: "y0", default: 0.0, min: -100.0, max: 100.0, note: "source position coordinate" },
        ],
        slots: &[],
        default_box: fundamental_box,
        build: build_fundamental,
    },
    FamilyDef {
        id: "s5.theta12",
        form: "|x|^(-1/4) theta_mu(9y/4, |x|^(3/2)) with potential strength mu = 5/36",
        params: &[],
        slots: &[Slot::ThetaMu],
        default_box: unit_box,
        build: build_theta12,
    },
    FamilyDef {
        id: "s5.heat15",
        form: "|t|^(-1/2) exp(-x^2/(4t)) theta(t^3/3 + 2 eps t - 1/t, 2y - (t + eps/t) x)",
        params: &[sign_spec("eps", "sign selecting the invariant combination, -1 or 1")],
        slots: &[Slot::Theta],
        default_box: unit_box,
        build: build_heat15,
    },
    FamilyDef {
        id: "s5.heat16",
        form: "theta(t^3/3, y - t x)",
        params: &[],
        slots: &[Slot::Theta],
        default_box: unit_box,
        build: build_heat16,
    },
    FamilyDef {
        id: "s5.heat17",
        form: "theta(t, x)",
        params: &[],
        slots: &[Slot::Theta],
        default_box: unit_box,
        build: build_heat17,
    },
    FamilyDef {
        id: "s6.kummer21",
        form: "x |y|^(kappa - 4/3) exp(-w) (c1 M(kappa, 4/3, w) + c2 U(kappa, 4/3, w)), w = x^3/(9y)",
        params: &[
            ParamSpec { name: "kappa", default: 0.5, min: -10.0, max: 10.0, note: "confluent parameter" },
            coef("c1", 1.0),
            coef("c2", 1.0),
        ],
        slots: &[],
        default_box: unit_box,
        build: build_kummer21,
    },
    FamilyDef {
        id: "s6.exp22",
        form: "c1 exp(t + x) + c2 exp(t - x)",
        params: &[coef("c1", 1.0), coef("c2", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_exp22,
    },
    FamilyDef {
        id: "s6.lin22",
        form: "c1 x + c2",
        params: &[coef("c1", 1.0), coef("c2", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_lin22,
    },
    FamilyDef {
        id: "s6.trig22",
        form: "exp(-t) (c1 sin x + c2 cos x)",
        params: &[coef("c1", 1.0), coef("c2", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_trig22,
    },
    FamilyDef {
        id: "s6.airy23",
        form: "exp(y) (c1 Ai(x) + c2 Bi(x))",
        params: &[coef("c1", 1.0), coef("c2", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_airy23,
    },
    FamilyDef {
        id: "s6.kummer24",
        form: "|t|^((mu-5)/2) (y - t x) exp(-w) (c1 M(mu/6 + 2/3, 3/2, w) + c2 U(mu/6 + 2/3, 3/2, w)), w = (3/4) t^(-3) (y - t x)^2 signed by the branch",
        params: &[
            ParamSpec { name: "mu", default: 1.0 / 3.0, min: -6.0, max: 6.0, note: "scaling weight" },
            coef("c1", 1.0),
            coef("c2", 1.0),
            sign_spec("branch", "sign of t on the instantiated branch, -1 or 1"),
        ],
        slots: &[],
        default_box: kummer24_box,
        build: build_kummer24,
    },
    FamilyDef {
        id: "s6.kummer25",
        form: "|t|^((mu-3)/2) x exp(-w) (c1 M(mu/2, 3/2, w) + c2 U(mu/2, 3/2, w)), w = x^2/(4t) signed by the branch",
        params: &[
            ParamSpec { name: "mu", default: 1.0 / 3.0, min: -6.0, max: 6.0, note: "scaling weight" },
            coef("c1", 1.0),
            coef("c2", 1.0),
            sign_spec("branch", "sign of t on the instantiated branch, -1 or 1"),
        ],
        slots: &[],
        default_box: mirror_unit_box,
        build: build_kummer25,
    },
    FamilyDef {
        id: "s6.gauss7",
        form: "c0 t^(-1/2) exp(-x^2/(4t)) for t > 0",
        params: &[coef("c0", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_gauss7,
    },
    FamilyDef {
        id: "s6.const",
        form: "c0",
        params: &[coef("c0", 1.0)],
        slots: &[],
        default_box: unit_box,
        build: build_const6,
    },
    FamilyDef {
        id: "s6.gauss3",
        form: "c0 (2t^3 - 1)^(-1/2) exp(-(3/2)(y - t x)^2/(2t^3 - 1)) for 2t^3 > 1",
        params: &[coef("c0", 1.0)],
        slots: &[],
        default_box: gauss3_box,
        build: build_gauss3,
    },
    FamilyDef {
        id: "s8.p2sq",
        form: "|t|^(-1/2) exp(-x^2/(4t)) ((1/2) x/t theta1 - (t - eps/t) theta1_2 + theta0) at (t^3/3 + 2 eps t - 1/t, 2y - (t + eps/t) x)",
        params: &[sign_spec("eps", "sign selecting the invariant combination, -1 or 1")],
        slots: &[Slot::Theta0, Slot::Theta1],
        default_box: unit_box,
        build: build_p2sq,
    },
    FamilyDef {
        id: "s8.p1sq",
        form: "x theta1 - t^2 theta1_2 + theta0 at (t^3/3, y - t x)",
        params: &[],
        slots: &[Slot::Theta0, Slot::Theta1],
        default_box: unit_box,
        build: build_p1sq,
    },
    FamilyDef {
        id: "s8.p0sq",
        form: "y theta1_22 + (1/4) x^2 theta1_2 - (1/4) x theta1 + theta0 at (t, x)",
        params: &[],
        slots: &[Slot::Theta0, Slot::Theta1],
        default_box: unit_box,
        build: build_p0sq,
    },
];

fn find(id: &str) -> Result<&'static FamilyDef, CatalogError> {
    FAMILIES
        .iter()
        .find(|def| def.id == id)
        .ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
}

/// Family ids in registry order.
pub fn family_ids() -> Vec<&'static str> {
    FAMILIES.iter().map(|def| def.id).collect()
}

// ---------------------------------------------------------------------------
// Manifest.

#[derive(Debug, Clone, Serialize)]
pub struct FamilyManifest {
    pub id: String,
    pub form: String,
    pub params: Vec<ParamSpec>,
    pub slots: Vec<&'static str>,
    pub default_box: DomainBox,
}

#[derive(Debug, Clone, Serialize)]
pub struct PluginManifest {
    pub id: String,
    pub form: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogManifest {
    pub families: Vec<FamilyManifest>,
    pub plugins: Vec<PluginManifest>,
    /// Potential-plugin families from the inverse-square-potential module,
    /// usable in the theta_mu slot of `s5.theta12`.
    pub theta_mu: Vec<PluginManifest>,
}

/// Deterministic manifest of every family (schema, slots, default box at
/// default parameters) and every shipped plugin family, both the heat-kernel
/// table and the inverse-square-potential table.
pub fn manifest() -> CatalogManifest {
    CatalogManifest {
        families: FAMILIES
            .iter()
            .map(|def| {
                let r = resolve(def, &[]).expect("defaults satisfy their own schema");
                FamilyManifest {
                    id: def.id.to_string(),
                    form: def.form.to_string(),
                    params: def.params.to_vec(),
                    slots: def.slots.iter().map(|s| s.name()).collect(),
                    default_box: (def.default_box)(&r),
                }
            })
            .collect(),
        plugins: HEAT_PLUGIN_TABLE
            .iter()
            .map(|(id, form)| PluginManifest {
                id: (*id).to_string(),
                form: (*form).to_string(),
            })
            .collect(),
        theta_mu: crate::heatisq::THETA_MU_TABLE
            .iter()
            .map(|(id, form)| PluginManifest {
                id: (*id).to_string(),
                form: (*form).to_string(),
            })
            .collect(),
    }
}

/// Default sampling box of a family at the given parameters (branch
/// parameters move the box to the matching side of the singular locus).
pub fn default_box(id: &str, params: &[(&str, f64)]) -> Result<DomainBox, CatalogError> {
    let def = find(id)?;
    let r = resolve(def, params)?;
    Ok((def.default_box)(&r))
}

fn label_for(def: &FamilyDef, r: &Resolved, pl: &PluginSet) -> String {
    let mut parts: Vec<String> = r.vals.iter().map(|(n, v)| format!("{n}={v}")).collect();
    for slot in def.slots {
        let name = match slot {
            Slot::ThetaMu => pl
                .theta_mu
                .as_ref()
                .map(|p| p.id().to_string())
                .unwrap_or_default(),
            s => pl.heat(*s).map(|p| p.id().to_string()).unwrap_or_default(),
        };
        parts.push(format!("{}={name}", slot.name()));
    }
    if parts.is_empty() {
        def.id.to_string()
    } else {
        format!("{}({})", def.id, parts.join(", "))
    }
}

/// Builds a family into a [`Solution`]: resolves the parameter schema, wires
/// the plugin slots, and registers the evaluator behind the 20-point
/// residual smoke test on the family's default box. A failure of that test
/// signals a transcription bug, not bad user input.
pub fn instantiate(
    id: &str,
    params: &[(&str, f64)],
    plugins: &PluginSet,
) -> Result<Solution, CatalogError> {
    let def = find(id)?;
    let index = FAMILIES
        .iter()
        .position(|d| d.id == def.id)
        .expect("definition found in its own registry") as u64;
    let r = resolve(def, params)?;
    let built = (def.build)(&r, plugins)?;
    let bx = (def.default_box)(&r);
    let label = label_for(def, &r, plugins);
    let sweep_seed = REGISTRY_SEED.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    Solution::registered(label, built.dom, built.eval, &Equation::Kolmogorov, &bx, sweep_seed)
        .map_err(Into::into)
}

// ---------------------------------------------------------------------------
// Superposition.

/// Linear combination Σ cᵢ·uᵢ of solutions; the domain is the intersection
/// of the term domains. Errors on an empty list (there is no natural label
/// or domain for it).
pub fn superpose(terms: &[(f64, Solution)]) -> Result<Solution, CatalogError> {
    if terms.is_empty() {
        return Err(CatalogError::EmptySuperposition);
    }
    let label = format!(
        "superposition({})",
        terms
            .iter()
            .map(|(c, s)| format!("{c}*{}", s.label()))
            .collect::<Vec<_>>()
            .join(" + ")
    );
    let for_dom: Vec<(f64, Solution)> = terms.to_vec();
    let for_eval: Vec<(f64, Solution)> = terms.to_vec();
    Ok(Solution::new(
        label,
        move |t, x, y| for_dom.iter().all(|(_, s)| s.admissible(t, x, y)),
        move |t, x, y| {
            let mut acc = Jet2::constant(0.0);
            for (c, s) in &for_eval {
                acc = acc + s.eval(t, x, y)?.scale(*c);
            }
            Ok(acc)
        },
    ))
}

// ---------------------------------------------------------------------------
// Mass integral.

/// Nodes and weights of the n-point Gauss-Hermite rule for ∫e^{-s²}f(s)ds,
/// from sign-change bracketing plus Newton refinement on the three-term
/// recurrence; weights via w = 2^{n-1} n! √π / (n² H_{n-1}(s)²).
fn hermite_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2 && n % 2 == 0, "even rule sizes only");
    let pair = |s: f64| -> (f64, f64) {
        let (mut prev, mut cur) = (0.0f64, 1.0f64);
        for k in 0..n {
            let next = 2.0 * s * cur - 2.0 * k as f64 * prev;
            prev = cur;
            cur = next;
        }
        (cur, prev)
    };
    let bound = (2.0 * n as f64 + 1.0).sqrt() + 0.5;
    let steps = 4000usize;
    let mut roots = Vec::with_capacity(n / 2);
    let mut last = pair(0.0).0;
    for i in 1..=steps {
        let s = bound * i as f64 / steps as f64;
        let here = pair(s).0;
        if last == 0.0 || here == 0.0 || (last < 0.0) != (here < 0.0) {
            let mut root = s - 0.5 * bound / steps as f64;
            for _ in 0..60 {
                let (h, hm) = pair(root);
                let step = h / (2.0 * n as f64 * hm);
                root -= step;
                if step.abs() < 1e-16 * (1.0 + root.abs()) {
                    break;
                }
            }
            roots.push(root);
        }
        last = here;
    }
    assert_eq!(roots.len(), n / 2, "every positive node bracketed");
    let fact: f64 = (1..=n as u64).product::<u64>() as f64;
    let lead = 2.0f64.powi(n as i32 - 1) * fact * std::f64::consts::PI.sqrt();
    let mut rule = Vec::with_capacity(n);
    for &s in &roots {
        let (_, hm) = pair(s);
        let w = lead / ((n * n) as f64 * hm * hm);
        rule.push((s, w));
        rule.push((-s, w));
    }
    rule
}

/// Total mass ∫∫ u dx dy at time src_t + gap, for a kernel-shaped field: the
/// substitution x = x0 + 2√gap·s₁, y = y0 + (x + x0)·gap/2 + √(gap³/3)·s₂
/// diagonalizes the kernel's quadratic form, after which Gauss-Hermite
/// integrates the remaining factor. For the correctly normalized kernel that
/// factor is the constant √3/(2π·gap²)·(jacobian terms), so the rule is
/// exact and any deviation of the result from 1 exposes a wrong constant or
/// a wrong quadratic form.
pub fn fundamental_mass(u: &Solution, src: [f64; 3], gap: f64) -> Result<f64, CatalogError> {
    assert!(gap > 0.0, "mass is integrated forward of the source time");
    let rule = hermite_rule(HERMITE_POINTS);
    let t = src[0] + gap;
    let half_width = 2.0 * gap.sqrt();
    let sheet = (gap * gap * gap / 3.0).sqrt();
    let jac = half_width * sheet;
    let mut total = 0.0;
    for &(s1, w1) in &rule {
        let x = src[1] + half_width * s1;
        for &(s2, w2) in &rule {
            let y = src[2] + 0.5 * (x + src[1]) * gap + sheet * s2;
            let v = u.eval(t, x, y)?.value();
            total += w1 * w2 * v * (s1 * s1 + s2 * s2).exp();
        }
    }
    Ok(total * jac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{act_on_solution, elementary, ElementaryTag};
    use crate::jetcalc::sample_residuals;
    use approx::assert_relative_eq;

    /// Reference values in this module were computed independently with
    /// 50-digit arbitrary-precision arithmetic.
    const FAMILY_SWEEP_POINTS: usize = 200;
    const FAMILY_RESIDUAL_TOL: f64 = 1e-8;
    const NEGATIVE_CONTROL_FLOOR: f64 = 1e-3;
    const DEGENERATION_TOL: f64 = 1e-12;
    const MASS_TOL: f64 = 1e-10;
    const ORBIT_TOL: f64 = 1e-8;

    /// Stationary power solution z₂^(5/6) of θ_1 = θ_22 + (5/36)z₂⁻²θ; the
    /// exponent solves a(a-1) + 5/36 = 0.
    fn power_potential_plugin() -> PotentialPlugin {
        PotentialPlugin::registered(
            "test.power56",
            THETA12_MU,
            |_, z2| z2 > 1e-6,
            |_, z2| {
                let v = z2.powf(5.0 / 6.0);
                let d2 = (5.0 / 6.0) * z2.powf(-1.0 / 6.0);
                let d22 = (5.0 / 6.0) * (-1.0 / 6.0) * z2.powf(-7.0 / 6.0);
                Ok(BiJet2 {
                    v,
                    d1: 0.0,
                    d2,
                    d11: 0.0,
                    d12: 0.0,
                    d22,
                })
            },
            PlaneBox::new([0.0, 0.2], [2.0, 3.0]),
        )
        .expect("stationary power solution passes registration")
    }

    /// Plugin assignments used throughout the tests: entire solutions for
    /// the families whose heat time can cross the kernel's threshold, the
    /// kernel where its domain covers the default box comfortably.
    fn default_plugins(id: &str) -> PluginSet {
        match id {
            "s5.theta12" => PluginSet::new().with_theta_mu(power_potential_plugin()),
            "s5.heat15" => PluginSet::new().with_theta(heat_trig()),
            "s5.heat16" => PluginSet::new().with_theta(heat_poly(3)),
            "s5.heat17" => PluginSet::new().with_theta(heat_kernel()),
            "s8.p2sq" => PluginSet::new()
                .with_theta0(heat_poly(2))
                .with_theta1(heat_trig()),
            "s8.p1sq" => PluginSet::new()
                .with_theta0(heat_poly(3))
                .with_theta1(heat_poly(2)),
            "s8.p0sq" => PluginSet::new()
                .with_theta0(heat_trig())
                .with_theta1(heat_poly(3)),
            _ => PluginSet::new(),
        }
    }

    fn probe_points(bx: &DomainBox, n: usize) -> Vec<[f64; 3]> {
        let sampler = QuasiSampler::new(0x7E57_CA7A);
        (0..n).map(|k| sampler.point(bx, k)).collect()
    }

    #[test]
    fn hermite_rule_reproduces_gaussian_moments() {
        let rule = hermite_rule(HERMITE_POINTS);
        assert_eq!(rule.len(), HERMITE_POINTS);
        let m = |p: i32| -> f64 { rule.iter().map(|(s, w)| w * s.powi(p)).sum() };
        let sq = std::f64::consts::PI.sqrt();
        assert_relative_eq!(m(0), sq, max_relative = 1e-13);
        assert_relative_eq!(m(2), sq / 2.0, max_relative = 1e-13);
        assert_relative_eq!(m(4), 0.75 * sq, max_relative = 1e-13);
        assert_relative_eq!(m(6), 15.0 / 8.0 * sq, max_relative = 1e-12);
        assert_eq!(m(1), 0.0);
    }

    #[test]
    fn shipped_heat_plugins_register() {
        for (id, _) in HEAT_PLUGIN_TABLE {
            let p = heat_plugin(id).expect("table id constructs");
            assert_eq!(p.id(), *id);
        }
        assert!(heat_plugin("heat.nope").is_none());
    }

    #[test]
    fn plugin_registration_rejects_non_solutions_and_bad_stacks() {
        // z1 z2^2 is not a heat solution: its z1-derivative is z2^2 while
        // its second z2-derivative is 2 z1.
        let fake = HeatPlugin::registered(
            "fake.notheat",
            |_, _| true,
            |z1, z2| {
                let mut s = [0.0; 7];
                s[0] = z1 * z2 * z2;
                s[1] = 2.0 * z1 * z2;
                s[2] = 2.0 * z1;
                Ok(s)
            },
            PlaneBox::new([0.5, 0.5], [2.0, 2.0]),
        );
        assert!(matches!(fake, Err(CatalogError::PluginRejected { .. })));

        // Correct solution, corrupted third stack entry.
        let bad_stack = HeatPlugin::registered(
            "fake.badstack",
            |_, _| true,
            |z1, z2| {
                let v = (z1 + z2).exp();
                let mut s = [v; 7];
                s[3] = 1.001 * v;
                Ok(s)
            },
            PlaneBox::new([-1.0, -1.0], [1.0, 1.0]),
        );
        assert!(matches!(bad_stack, Err(CatalogError::PluginRejected { .. })));
    }

    #[test]
    fn potential_plugin_rejects_wrong_strength() {
        let wrong = PotentialPlugin::registered(
            "fake.mu",
            0.25,
            |_, z2| z2 > 0.1,
            |_, z2| {
                // Stack of z2^(5/6), which solves mu = 5/36, not 1/4.
                let v = z2.powf(5.0 / 6.0);
                Ok(BiJet2 {
                    v,
                    d1: 0.0,
                    d2: (5.0 / 6.0) * z2.powf(-1.0 / 6.0),
                    d11: 0.0,
                    d12: 0.0,
                    d22: (5.0 / 6.0) * (-1.0 / 6.0) * z2.powf(-7.0 / 6.0),
                })
            },
            PlaneBox::new([0.0, 0.2], [2.0, 3.0]),
        );
        assert!(matches!(wrong, Err(CatalogError::PluginRejected { .. })));
    }

    #[test]
    fn manifest_is_deterministic_and_complete() {
        let m1 = manifest();
        let ids: Vec<&str> = m1.families.iter().map(|f| f.id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "fundamental",
                "s5.theta12",
                "s5.heat15",
                "s5.heat16",
                "s5.heat17",
                "s6.kummer21",
                "s6.exp22",
                "s6.lin22",
                "s6.trig22",
                "s6.airy23",
                "s6.kummer24",
                "s6.kummer25",
                "s6.gauss7",
                "s6.const",
                "s6.gauss3",
                "s8.p2sq",
                "s8.p1sq",
                "s8.p0sq",
            ]
        );
        assert_eq!(m1.plugins.len(), HEAT_PLUGIN_TABLE.len());
        assert_eq!(m1.theta_mu.len(), crate::heatisq::THETA_MU_TABLE.len());
        assert!(m1.theta_mu.iter().any(|p| p.id == "heatisq.s12"));
        let j1 = serde_json::to_string(&m1).unwrap();
        let j2 = serde_json::to_string(&manifest()).unwrap();
        assert_eq!(j1, j2);
        assert_eq!(family_ids().len(), 18);
    }

    #[test]
    fn every_family_passes_its_default_residual_sweep() {
        for id in family_ids() {
            let plugins = default_plugins(id);
            let sol = instantiate(id, &[], &plugins)
                .unwrap_or_else(|e| panic!("{id} failed to instantiate: {e}"));
            let bx = default_box(id, &[]).unwrap();
            let report = sample_residuals(
                &Equation::Kolmogorov,
                &sol,
                &bx,
                FAMILY_SWEEP_POINTS,
                0xFA41_71E5,
            )
            .unwrap_or_else(|e| panic!("{id} sweep failed: {e}"));
            assert!(
                report.failures.is_empty(),
                "{id}: evaluation failures {:?}",
                report.failures
            );
            assert!(
                report.points_used * 2 >= FAMILY_SWEEP_POINTS,
                "{id}: only {} points used",
                report.points_used
            );
            assert!(
                report.max_rel_residual <= FAMILY_RESIDUAL_TOL,
                "{id}: max relative residual {:.3e}",
                report.max_rel_residual
            );
        }
    }

    #[test]
    fn alternate_plugin_assignments_also_pass() {
        let cases: Vec<(&str, PluginSet)> = vec![
            ("s5.heat15", PluginSet::new().with_theta(heat_exp(-1.0))),
            ("s5.heat16", PluginSet::new().with_theta(heat_kernel())),
            ("s5.heat17", PluginSet::new().with_theta(heat_trig())),
            (
                "s8.p2sq",
                PluginSet::new()
                    .with_theta0(heat_trig())
                    .with_theta1(heat_poly(3)),
            ),
            (
                "s8.p1sq",
                PluginSet::new()
                    .with_theta0(heat_poly(0))
                    .with_theta1(heat_kernel()),
            ),
            (
                "s8.p0sq",
                PluginSet::new()
                    .with_theta0(heat_poly(1))
                    .with_theta1(heat_kernel()),
            ),
        ];
        for (id, plugins) in cases {
            let sol = instantiate(id, &[], &plugins)
                .unwrap_or_else(|e| panic!("{id} failed to instantiate: {e}"));
            let bx = default_box(id, &[]).unwrap();
            let report =
                sample_residuals(&Equation::Kolmogorov, &sol, &bx, FAMILY_SWEEP_POINTS, 0xA17E)
                    .unwrap();
            assert!(
                report.max_rel_residual <= FAMILY_RESIDUAL_TOL,
                "{id}: max relative residual {:.3e}",
                report.max_rel_residual
            );
        }
    }

    #[test]
    fn branch_parameters_flip_boxes_and_pass() {
        for (id, extra) in [
            ("s5.heat15", ("eps", -1.0)),
            ("s8.p2sq", ("eps", -1.0)),
            ("s6.kummer24", ("branch", -1.0)),
            ("s6.kummer25", ("branch", -1.0)),
        ] {
            let mut params: Vec<(&str, f64)> = vec![extra];
            if id.starts_with("s6.kummer2") {
                params.push(("c2", 0.0));
            }
            let plugins = default_plugins(id);
            let sol = instantiate(id, &params, &plugins)
                .unwrap_or_else(|e| panic!("{id} branch instantiation failed: {e}"));
            let bx = default_box(id, &params).unwrap();
            if id.starts_with("s6.kummer2") {
                assert!(bx.hi[0] < 0.0, "{id}: mirrored branch box sits in t < 0");
            }
            let report =
                sample_residuals(&Equation::Kolmogorov, &sol, &bx, FAMILY_SWEEP_POINTS, 0xB4A9)
                    .unwrap();
            assert!(
                report.failures.is_empty() && report.max_rel_residual <= FAMILY_RESIDUAL_TOL,
                "{id}: branch sweep residual {:.3e}, failures {:?}",
                report.max_rel_residual,
                report.failures
            );
        }
    }

    #[test]
    fn confluent_families_collapse_to_polynomial_solutions() {
        // When the first confluent parameter equals the second, M(a,a,w) is
        // the exponential and the damped combination collapses to a plain
        // polynomial solution; this pins the whole evaluator chain at value
        // level, derivatives included.
        let cases: Vec<(&str, Vec<(&str, f64)>, Box<dyn Fn(f64, f64, f64) -> f64>)> = vec![
            (
                "s6.kummer21",
                vec![("kappa", 4.0 / 3.0), ("c2", 0.0)],
                Box::new(|_t, x, _y| x),
            ),
            (
                "s6.kummer24",
                vec![("mu", 5.0), ("c2", 0.0)],
                Box::new(|t, x, y| y - t * x),
            ),
            (
                "s6.kummer25",
                vec![("mu", 3.0), ("c2", 0.0)],
                Box::new(|_t, x, _y| x),
            ),
        ];
        for (id, params, expected) in cases {
            let sol = instantiate(id, &params, &PluginSet::new()).unwrap();
            let bx = default_box(id, &params).unwrap();
            for p in probe_points(&bx, 20) {
                let jet = sol.eval(p[0], p[1], p[2]).unwrap();
                assert_relative_eq!(
                    jet.value(),
                    expected(p[0], p[1], p[2]),
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn stationary_power_plugin_collapses_family_to_absolute_value() {
        let plugins = PluginSet::new().with_theta_mu(power_potential_plugin());
        let sol = instantiate("s5.theta12", &[], &plugins).unwrap();
        let bx = default_box("s5.theta12", &[]).unwrap();
        for p in probe_points(&bx, 20) {
            let jet = sol.eval(p[0], p[1], p[2]).unwrap();
            // |x|^(-1/4) (|x|^(3/2))^(5/6) = |x|.
            assert_relative_eq!(jet.value(), p[1].abs(), max_relative = 1e-12);
            assert_relative_eq!(jet.grad(1), p[1].signum(), max_relative = 1e-11);
        }
    }

    #[test]
    fn negative_controls_fail_loudly() {
        // Perturbed exponential growth rate.
        let bad_exp = Solution::everywhere("control exp", |t, x, y| {
            let (tj, xj, _yj) = seed(t, x, y);
            lift(Elementary::Exp, &(tj.scale(1.01) + xj))
        });
        // The quarter-power prefactor with the wrong sign of the exponent.
        let plugin = power_potential_plugin();
        let bad_theta12 = Solution::new(
            "control theta12",
            |_, x, _| x.abs() > SHEET_COLLAR,
            move |t, x, y| {
                let (tj, xj, yj) = seed(t, x, y);
                let _ = tj;
                let z1 = yj.scale(2.25);
                let z2 = lift(Elementary::AbsPow(1.5), &xj)?;
                let w = plugin.bijet(z1.value(), z2.value())?;
                let pre = lift(Elementary::AbsPow(0.25), &xj)?;
                Ok(pre * compose2(&w, &z1, &z2))
            },
        );
        // The mirrored confluent branch without the sign carried into the
        // damping factor.
        let bad_kummer = Solution::new(
            "control kummer25 branch",
            |t, x, _| t < -SHEET_COLLAR && x.abs() > SHEET_COLLAR,
            move |t, x, y| {
                let (tj, xj, _yj) = seed(t, x, y);
                let om_abs = (xj * xj) * tj.recip()?.scale(-0.25);
                let m = specfun::kummer_m_triple(
                    Complex64::new(1.5, 0.0),
                    Complex64::new(1.5, 0.0),
                    Complex64::new(-om_abs.value(), 0.0),
                )
                .map_err(sf_jet)?;
                let tri: UniJet2 = [m[0].re, -m[1].re, m[2].re];
                let phi = compose1(tri, &om_abs);
                let damp = lift(Elementary::Exp, &om_abs.scale(-1.0))?;
                Ok(xj * damp * phi)
            },
        );
        let cube = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let mirror = DomainBox::new([-2.0, 0.5, 0.5], [-0.5, 2.0, 2.0]);
        for (label, sol, bx) in [
            ("exp", bad_exp, cube),
            ("theta12", bad_theta12, cube),
            ("kummer", bad_kummer, mirror),
        ] {
            let report =
                sample_residuals(&Equation::Kolmogorov, &sol, &bx, FAMILY_SWEEP_POINTS, 0xC0).unwrap();
            assert!(
                report.max_rel_residual > NEGATIVE_CONTROL_FLOOR,
                "{label}: control residual {:.3e} should exceed {NEGATIVE_CONTROL_FLOOR}",
                report.max_rel_residual
            );
        }
    }

    #[test]
    fn kernel_mass_is_one_across_time_gaps() {
        let sol = instantiate("fundamental", &[], &PluginSet::new()).unwrap();
        for gap in [0.5, 1.0, 2.0] {
            let mass = fundamental_mass(&sol, [0.0, 0.0, 0.0], gap).unwrap();
            assert!(
                (mass - 1.0).abs() <= MASS_TOL,
                "gap {gap}: mass deviates by {:.3e}",
                (mass - 1.0).abs()
            );
        }
        // Shifted source point.
        let params: [(&str, f64); 3] = [("t0", 0.3), ("x0", -0.2), ("y0", 0.15)];
        let shifted = instantiate("fundamental", &params, &PluginSet::new()).unwrap();
        let mass = fundamental_mass(&shifted, [0.3, -0.2, 0.15], 1.0).unwrap();
        assert!((mass - 1.0).abs() <= MASS_TOL);
        // A miscalibrated constant is exposed at full size.
        let off = superpose(&[(1.02, shifted)]).unwrap();
        let bad = fundamental_mass(&off, [0.3, -0.2, 0.15], 1.0).unwrap();
        assert!((bad - 1.02).abs() <= MASS_TOL);
    }

    #[test]
    fn superposition_is_linear_and_rejects_empty_input() {
        assert!(matches!(
            superpose(&[]),
            Err(CatalogError::EmptySuperposition)
        ));
        let u1 = instantiate("s6.exp22", &[], &PluginSet::new()).unwrap();
        let u2 = instantiate("s6.gauss7", &[], &PluginSet::new()).unwrap();
        let bx = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let combo = superpose(&[(0.7, u1.clone()), (-1.3, u2.clone())]).unwrap();
        let report =
            sample_residuals(&Equation::Kolmogorov, &combo, &bx, FAMILY_SWEEP_POINTS, 0xD1).unwrap();
        assert!(report.max_rel_residual <= FAMILY_RESIDUAL_TOL);

        let keep = superpose(&[(1.0, u1.clone()), (0.0, u2)]).unwrap();
        for p in probe_points(&bx, 10) {
            let a = keep.eval(p[0], p[1], p[2]).unwrap().value();
            let b = u1.eval(p[0], p[1], p[2]).unwrap().value();
            assert_relative_eq!(a, b, max_relative = 1e-15);
        }

        let f = instantiate("fundamental", &[], &PluginSet::new()).unwrap();
        let zero = superpose(&[(1.0, f.clone()), (-1.0, f)]).unwrap();
        for p in probe_points(&bx, 10) {
            assert!(zero.eval(p[0], p[1], p[2]).unwrap().value().abs() < 1e-300);
        }
    }

    #[test]
    fn generalized_families_degenerate_to_their_base_families() {
        let cases: [(&str, &str, HeatPlugin); 3] = [
            ("s8.p2sq", "s5.heat15", heat_trig()),
            ("s8.p1sq", "s5.heat16", heat_poly(3)),
            ("s8.p0sq", "s5.heat17", heat_kernel()),
        ];
        for (gen_id, base_id, theta) in cases {
            let gen = instantiate(
                gen_id,
                &[],
                &PluginSet::new()
                    .with_theta0(theta.clone())
                    .with_theta1(heat_zero()),
            )
            .unwrap();
            let base = instantiate(base_id, &[], &PluginSet::new().with_theta(theta)).unwrap();
            let bx = default_box(gen_id, &[]).unwrap();
            for p in probe_points(&bx, 20) {
                if !gen.admissible(p[0], p[1], p[2]) || !base.admissible(p[0], p[1], p[2]) {
                    continue;
                }
                let a = gen.eval(p[0], p[1], p[2]).unwrap();
                let b = base.eval(p[0], p[1], p[2]).unwrap();
                assert!(
                    (a.value() - b.value()).abs() <= DEGENERATION_TOL,
                    "{gen_id} vs {base_id} at {p:?}: {} vs {}",
                    a.value(),
                    b.value()
                );
                for i in 0..3 {
                    assert!((a.grad(i) - b.grad(i)).abs() <= 1e-10);
                }
            }
        }
    }

    /// Image box of the middle half of `bx` under the element, from the
    /// componentwise hull of the eight corner images. The acted solution is
    /// a global solution, so hull points that do not correspond to images of
    /// box points are still legitimate residual probes.
    fn image_hull(g: &crate::group::GroupElement, bx: &DomainBox) -> DomainBox {
        let mid = |lo: f64, hi: f64| (lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo));
        let (t0, t1) = mid(bx.lo[0], bx.hi[0]);
        let (x0, x1) = mid(bx.lo[1], bx.hi[1]);
        let (y0, y1) = mid(bx.lo[2], bx.hi[2]);
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &t in &[t0, t1] {
            for &x in &[x0, x1] {
                for &y in &[y0, y1] {
                    let q = g.apply([t, x, y, 1.0]).expect("corner in regular chart");
                    for i in 0..3 {
                        lo[i] = lo[i].min(q[i]);
                        hi[i] = hi[i].max(q[i]);
                    }
                }
            }
        }
        DomainBox::new(lo, hi)
    }

    #[test]
    fn elementary_transformations_preserve_every_family() {
        let eps_for = |tag: ElementaryTag| -> f64 {
            match tag {
                ElementaryTag::Pt => 0.3,
                ElementaryTag::D => 0.4,
                ElementaryTag::K => -0.35,
                ElementaryTag::P3 => 0.3,
                ElementaryTag::P2 => 0.3,
                ElementaryTag::P1 => 0.4,
                ElementaryTag::P0 => 0.5,
                ElementaryTag::I => 0.6,
                ElementaryTag::Rotation => 0.4,
                _ => 0.0,
            }
        };
        for id in family_ids() {
            let plugins = default_plugins(id);
            let sol = instantiate(id, &[], &plugins).unwrap();
            let bx = default_box(id, &[]).unwrap();
            for tag in ElementaryTag::ALL {
                let g = elementary(tag, eps_for(tag));
                let acted = act_on_solution(&g, &sol);
                let hull = image_hull(&g, &bx);
                let report = sample_residuals(
                    &Equation::Kolmogorov,
                    &acted,
                    &hull,
                    FAMILY_SWEEP_POINTS,
                    0x0B17,
                )
                .unwrap_or_else(|e| panic!("{id} under {}: sweep failed: {e}", tag.label()));
                assert!(
                    report.points_used >= 50,
                    "{id} under {}: only {} usable points",
                    tag.label(),
                    report.points_used
                );
                assert!(
                    report.max_rel_residual <= ORBIT_TOL,
                    "{id} under {}: residual {:.3e}",
                    tag.label(),
                    report.max_rel_residual
                );
            }
        }
    }

    #[test]
    fn schema_violations_are_rejected() {
        assert!(matches!(
            instantiate("nope", &[], &PluginSet::new()),
            Err(CatalogError::UnknownFamily(_))
        ));
        assert!(matches!(
            instantiate("s6.exp22", &[("c3", 1.0)], &PluginSet::new()),
            Err(CatalogError::UnknownParam { .. })
        ));
        assert!(matches!(
            instantiate("s6.kummer21", &[("kappa", 99.0)], &PluginSet::new()),
            Err(CatalogError::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            instantiate("s5.heat15", &[("eps", 0.5)], &default_plugins("s5.heat15")),
            Err(CatalogError::ParamOutOfRange { name: "eps", .. })
        ));
        assert!(matches!(
            instantiate("s5.heat16", &[], &PluginSet::new()),
            Err(CatalogError::MissingPlugin { slot: "theta", .. })
        ));
        assert!(matches!(
            instantiate("s8.p1sq", &[], &PluginSet::new().with_theta0(heat_poly(0))),
            Err(CatalogError::MissingPlugin { slot: "theta1", .. })
        ));
        // Mirrored confluent branch cannot carry the second solution.
        assert!(matches!(
            instantiate("s6.kummer25", &[("branch", -1.0)], &PluginSet::new()),
            Err(CatalogError::ParamOutOfRange { name: "c2", .. })
        ));
        // Potential plugin with the wrong strength is refused by the family.
        let off_mu = PotentialPlugin::registered(
            "test.mu_zero",
            0.0,
            |_, _| true,
            |_, z2| {
                Ok(BiJet2 {
                    v: z2,
                    d1: 0.0,
                    d2: 1.0,
                    d11: 0.0,
                    d12: 0.0,
                    d22: 0.0,
                })
            },
            PlaneBox::new([0.0, 0.5], [1.0, 2.0]),
        )
        .unwrap();
        assert!(matches!(
            instantiate("s5.theta12", &[], &PluginSet::new().with_theta_mu(off_mu)),
            Err(CatalogError::PluginMismatch { .. })
        ));
    }

    #[test]
    fn labels_identify_family_parameters_and_plugins() {
        let sol = instantiate(
            "s8.p1sq",
            &[],
            &PluginSet::new()
                .with_theta0(heat_poly(3))
                .with_theta1(heat_kernel()),
        )
        .unwrap();
        assert_eq!(sol.label(), "s8.p1sq(theta0=heat.poly3, theta1=heat.kernel)");
        let plain = instantiate("s5.heat17", &[], &default_plugins("s5.heat17")).unwrap();
        assert_eq!(plain.label(), "s5.heat17(theta=heat.kernel)");
        let with_params = instantiate("s6.gauss7", &[("c0", 2.5)], &PluginSet::new()).unwrap();
        assert_eq!(with_params.label(), "s6.gauss7(c0=2.5)");
    }
}
