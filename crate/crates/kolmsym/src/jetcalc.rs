//! Forward-mode numeric jets of order two in up to three variables, the PDE
//! residual evaluators built on them, and deterministic low-discrepancy
//! residual sampling over domain boxes. This is the numeric counterpart of
//! the exact machinery in `sympoly`: closed-form solutions are verified by
//! evaluating the equation's residual on jets of the solution.

use serde::Serialize;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("domain violation in {func}: argument {arg}")]
    Domain { func: &'static str, arg: f64 },
    #[error("non-finite value produced at ({t}, {x}, {y})")]
    NonFinite { t: f64, x: f64, y: f64 },
    #[error("domain too thin: {admissible} of {requested} sample points admissible")]
    DomainTooThin { admissible: usize, requested: usize },
}

/// Value, gradient, and symmetric second-derivative block of a scalar
/// function of (t, x, y). Reduced fixtures in fewer variables use the
/// leading slots and ignore the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    v: f64,
    g: [f64; 3],
    // Upper triangle in the order (tt, tx, ty, xx, xy, yy).
    h: [f64; 6],
}

const fn tri(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    }
}

impl Jet2 {
    pub fn constant(v: f64) -> Jet2 {
        Jet2 {
            v,
            g: [0.0; 3],
            h: [0.0; 6],
        }
    }

    /// Coordinate jet for variable slot `i` at value `v`.
    pub fn coordinate(v: f64, i: usize) -> Jet2 {
        let mut g = [0.0; 3];
        g[i] = 1.0;
        Jet2 { v, g, h: [0.0; 6] }
    }

    pub fn from_parts(v: f64, g: [f64; 3], h: [f64; 6]) -> Jet2 {
        Jet2 { v, g, h }
    }

    pub fn value(&self) -> f64 {
        self.v
    }

    pub fn grad(&self, i: usize) -> f64 {
        self.g[i]
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.h[tri(i, j)]
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite()
            && self.g.iter().all(|v| v.is_finite())
            && self.h.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, c: f64) -> Jet2 {
        Jet2 {
            v: c * self.v,
            g: self.g.map(|a| c * a),
            h: self.h.map(|a| c * a),
        }
    }

    pub fn recip(&self) -> Result<Jet2, JetError> {
        if self.v == 0.0 {
            return Err(JetError::Domain {
                func: "recip",
                arg: 0.0,
            });
        }
        let w = 1.0 / self.v;
        Ok(compose_scalar([w, -w * w, 2.0 * w * w * w], self))
    }
}

impl std::ops::Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        let mut g = self.g;
        let mut h = self.h;
        for i in 0..3 {
            g[i] += o.g[i];
        }
        for i in 0..6 {
            h[i] += o.h[i];
        }
        Jet2 {
            v: self.v + o.v,
            g,
            h,
        }
    }
}

impl std::ops::Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + o.scale(-1.0)
    }
}

impl std::ops::Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl std::ops::Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut g = [0.0; 3];
        for i in 0..3 {
            g[i] = self.g[i] * o.v + self.v * o.g[i];
        }
        let mut h = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                h[tri(i, j)] = self.h[tri(i, j)] * o.v
                    + self.v * o.h[tri(i, j)]
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i];
            }
        }
        Jet2 {
            v: self.v * o.v,
            g,
            h,
        }
    }
}

/// Coordinate jets (t, x, y) with unit gradients and zero second block.
pub fn seed(t: f64, x: f64, y: f64) -> (Jet2, Jet2, Jet2) {
    (
        Jet2::coordinate(t, 0),
        Jet2::coordinate(x, 1),
        Jet2::coordinate(y, 2),
    )
}

/// Chain rule: outer univariate 2-jet (f, f′, f″) at inner.value composed
/// with the inner jet.
pub fn compose_scalar(outer: [f64; 3], inner: &Jet2) -> Jet2 {
    let [w0, w1, w2] = outer;
    let mut g = [0.0; 3];
    for i in 0..3 {
        g[i] = w1 * inner.g[i];
    }
    let mut h = [0.0; 6];
    for i in 0..3 {
        for j in i..3 {
            h[tri(i, j)] = w1 * inner.h[tri(i, j)] + w2 * inner.g[i] * inner.g[j];
        }
    }
    Jet2 { v: w0, g, h }
}

/// Univariate 2-jet (value, first, second derivative) of a function of one
/// variable, used as the outer factor in `compose1`.
pub type UniJet2 = [f64; 3];

/// Bivariate 2-jet of a function w(z1, z2): value, both first derivatives,
/// and the symmetric second block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiJet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

/// Compose a univariate 2-jet with a jet argument: f(z(t,x,y)).
pub fn compose1(outer: UniJet2, z: &Jet2) -> Jet2 {
    compose_scalar(outer, z)
}

/// Compose a bivariate 2-jet with two jet arguments: w(z1(t,x,y), z2(t,x,y)).
pub fn compose2(w: &BiJet2, z1: &Jet2, z2: &Jet2) -> Jet2 {
    let mut g = [0.0; 3];
    for i in 0..3 {
        g[i] = w.d1 * z1.g[i] + w.d2 * z2.g[i];
    }
    let mut h = [0.0; 6];
    for i in 0..3 {
        for j in i..3 {
            h[tri(i, j)] = w.d1 * z1.h[tri(i, j)]
                + w.d2 * z2.h[tri(i, j)]
                + w.d11 * z1.g[i] * z1.g[j]
                + w.d12 * (z1.g[i] * z2.g[j] + z1.g[j] * z2.g[i])
                + w.d22 * z2.g[i] * z2.g[j];
        }
    }
    Jet2 { v: w.v, g, h }
}

/// Compose a trivariate 2-jet with three jet arguments: the outer jet holds
/// derivatives of f with respect to its own three slots at the inner values,
/// and the result carries derivatives of f(z0(·), z1(·), z2(·)) with respect
/// to the variables the inner jets were seeded in. Used to re-express a
/// solution jet through a coordinate change.
pub fn compose3(outer: &Jet2, inner: [&Jet2; 3]) -> Jet2 {
    let mut g = [0.0; 3];
    for a in 0..3 {
        for i in 0..3 {
            g[a] += outer.g[i] * inner[i].g[a];
        }
    }
    let mut h = [0.0; 6];
    for a in 0..3 {
        for b in a..3 {
            let mut s = 0.0;
            for i in 0..3 {
                s += outer.g[i] * inner[i].h[tri(a, b)];
                for j in 0..3 {
                    s += outer.h[tri(i, j)] * inner[i].g[a] * inner[j].g[b];
                }
            }
            h[tri(a, b)] = s;
        }
    }
    Jet2 { v: outer.v, g, h }
}

/// Elementary function lifted through the chain rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Atan,
    /// z^p for z > 0.
    Powf(f64),
    /// |z|^p with sign-aware derivatives; z = 0 is a domain error.
    AbsPow(f64),
    Erf,
}

/// Error function, accurate to full double precision on |z| ≤ 6 via the
/// confluent-series form erf(z) = (2/√π)·z·e^{−z²}·M(1, 3/2, z²), which has
/// no cancellation; |z| ≥ 6 saturates to ±1 (the tail is below 1 ulp).
pub fn erf(z: f64) -> f64 {
    if z < 0.0 {
        return -erf(-z);
    }
    if z >= 6.0 {
        return 1.0;
    }
    let z2 = z * z;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 0.0f64;
    while term > 1e-18 * sum {
        term *= z2 / (1.5 + k);
        sum += term;
        k += 1.0;
    }
    std::f64::consts::FRAC_2_SQRT_PI * z * (-z2).exp() * sum
}

pub fn lift(f: Elementary, arg: &Jet2) -> Result<Jet2, JetError> {
    let z = arg.v;
    let outer: UniJet2 = match f {
        Elementary::Exp => {
            let e = z.exp();
            [e, e, e]
        }
        Elementary::Ln => {
            if z <= 0.0 {
                return Err(JetError::Domain { func: "ln", arg: z });
            }
            [z.ln(), 1.0 / z, -1.0 / (z * z)]
        }
        Elementary::Sqrt => {
            if z <= 0.0 {
                return Err(JetError::Domain {
                    func: "sqrt",
                    arg: z,
                });
            }
            let r = z.sqrt();
            [r, 0.5 / r, -0.25 / (r * z)]
        }
        Elementary::Sin => [z.sin(), z.cos(), -z.sin()],
        Elementary::Cos => [z.cos(), -z.sin(), -z.cos()],
        Elementary::Atan => {
            let d = 1.0 + z * z;
            [z.atan(), 1.0 / d, -2.0 * z / (d * d)]
        }
        Elementary::Powf(p) => {
            if z <= 0.0 {
                return Err(JetError::Domain {
                    func: "powf",
                    arg: z,
                });
            }
            [z.powf(p), p * z.powf(p - 1.0), p * (p - 1.0) * z.powf(p - 2.0)]
        }
        Elementary::AbsPow(p) => {
            if z == 0.0 {
                return Err(JetError::Domain {
                    func: "abs_pow",
                    arg: z,
                });
            }
            let a = z.abs();
            let s = z.signum();
            [
                a.powf(p),
                p * s * a.powf(p - 1.0),
                p * (p - 1.0) * a.powf(p - 2.0),
            ]
        }
        Elementary::Erf => {
            let d = std::f64::consts::FRAC_2_SQRT_PI * (-z * z).exp();
            [erf(z), d, -2.0 * z * d]
        }
    };
    let out = compose_scalar(outer, arg);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(JetError::NonFinite {
            t: z,
            x: f64::NAN,
            y: f64::NAN,
        })
    }
}

// ---------------------------------------------------------------------------
// Equations and residuals.

/// Coefficient function of the reduced-equation variables (z1, z2).
pub type Coef = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// General linear second-order fixture c1·w_{z1} + c22·w_{z2z2} + c2·w_{z2}
/// + c0·w = 0 on the (z1, z2) slots; covers every reduced equation and the
/// mapped potential forms (ODE rows set c1 = 0).
#[derive(Clone)]
pub struct ReducedEq {
    pub label: String,
    pub c1: Coef,
    pub c22: Coef,
    pub c2: Coef,
    pub c0: Coef,
}

impl fmt::Debug for ReducedEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedEq({})", self.label)
    }
}

impl ReducedEq {
    /// w_{z1} = w_{z2z2} + V(z1, z2)·w.
    pub fn heat_with_potential(label: impl Into<String>, v: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> ReducedEq {
        ReducedEq {
            label: label.into(),
            c1: Arc::new(|_, _| 1.0),
            c22: Arc::new(|_, _| -1.0),
            c2: Arc::new(|_, _| 0.0),
            c0: Arc::new(move |a, b| -v(a, b)),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Equation {
    /// u_t + x·u_y = u_xx.
    Kolmogorov,
    /// w_{z1} = w_{z2z2} on the (t, x) slots.
    Heat,
    /// u_t = u_xx + μx⁻²u on the (t, x) slots.
    HeatIsq { mu: f64 },
    /// u_t + x·u_y = γu_xx + γ(x − (3/4)γy)u_x + γu.
    Kramers34 { gamma: f64 },
    /// u_t + x·u_y = γu_xx + γ(x + (3/16)γy)u_x + γu.
    Kramers316 { gamma: f64 },
    Reduced(ReducedEq),
}

impl Equation {
    pub fn label(&self) -> String {
        match self {
            Equation::Kolmogorov => "kolmogorov".into(),
            Equation::Heat => "heat".into(),
            Equation::HeatIsq { mu } => format!("heat_isq(mu={mu})"),
            Equation::Kramers34 { gamma } => format!("kramers34(gamma={gamma})"),
            Equation::Kramers316 { gamma } => format!("kramers316(gamma={gamma})"),
            Equation::Reduced(r) => format!("reduced({})", r.label),
        }
    }

    /// Signed residual terms at a point, returned alongside the relative
    /// normalization max(1, Σ|term|).
    fn terms(&self, u: &Jet2, p: [f64; 3]) -> Result<(f64, f64), JetError> {
        let [t, x, y] = p;
        let terms: Vec<f64> = match self {
            Equation::Kolmogorov => vec![u.grad(0), x * u.grad(2), -u.hess(1, 1)],
            Equation::Heat => vec![u.grad(0), -u.hess(1, 1)],
            Equation::HeatIsq { mu } => {
                if x == 0.0 {
                    return Err(JetError::Domain {
                        func: "heat_isq",
                        arg: 0.0,
                    });
                }
                vec![u.grad(0), -u.hess(1, 1), -mu / (x * x) * u.value()]
            }
            Equation::Kramers34 { gamma } => vec![
                u.grad(0),
                x * u.grad(2),
                -gamma * u.hess(1, 1),
                -gamma * (x - 0.75 * gamma * y) * u.grad(1),
                -gamma * u.value(),
            ],
            Equation::Kramers316 { gamma } => vec![
                u.grad(0),
                x * u.grad(2),
                -gamma * u.hess(1, 1),
                -gamma * (x + 3.0 / 16.0 * gamma * y) * u.grad(1),
                -gamma * u.value(),
            ],
            Equation::Reduced(r) => vec![
                (r.c1)(t, x) * u.grad(0),
                (r.c22)(t, x) * u.hess(1, 1),
                (r.c2)(t, x) * u.grad(1),
                (r.c0)(t, x) * u.value(),
            ],
        };
        let res: f64 = terms.iter().sum();
        let scale = terms.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        if res.is_finite() {
            Ok((res, scale))
        } else {
            Err(JetError::NonFinite {
                t: p[0],
                x: p[1],
                y: p[2],
            })
        }
    }
}

/// A field of jets over (t, x, y) with an optional domain predicate; the
/// evaluator must be shareable across threads (stateless or internally
/// synchronized).
pub trait FieldEval: Sync {
    fn eval(&self, t: f64, x: f64, y: f64) -> Result<Jet2, JetError>;
    fn admissible(&self, _t: f64, _x: f64, _y: f64) -> bool {
        true
    }
}

impl<F> FieldEval for F
where
    F: Fn(f64, f64, f64) -> Result<Jet2, JetError> + Sync,
{
    fn eval(&self, t: f64, x: f64, y: f64) -> Result<Jet2, JetError> {
        self(t, x, y)
    }
}

/// Signed residual of `eq` for the field `u` at one point.
pub fn residual(eq: &Equation, u: &dyn FieldEval, p: [f64; 3]) -> Result<f64, JetError> {
    let jet = u.eval(p[0], p[1], p[2])?;
    if !jet.is_finite() {
        return Err(JetError::NonFinite {
            t: p[0],
            x: p[1],
            y: p[2],
        });
    }
    Ok(eq.terms(&jet, p)?.0)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DomainBox {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl DomainBox {
    pub fn new(lo: [f64; 3], hi: [f64; 3]) -> DomainBox {
        for i in 0..3 {
            assert!(lo[i] <= hi[i], "empty box in slot {i}");
        }
        DomainBox { lo, hi }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic low-discrepancy points in the unit cube: a Kronecker
/// sequence with square-root-of-prime increments, phase-shifted by the seed.
pub struct QuasiSampler {
    phase: [f64; 3],
}

const KRONECKER_ALPHA: [f64; 3] = [
    0.41421356237309515,  // frac(√2)
    0.7320508075688772,   // frac(√3)
    0.23606797749978969,  // frac(√5)
];

impl QuasiSampler {
    pub fn new(seed: u64) -> QuasiSampler {
        let mut st = seed;
        let mut phase = [0.0; 3];
        for p in &mut phase {
            *p = (splitmix64(&mut st) >> 11) as f64 / (1u64 << 53) as f64;
        }
        QuasiSampler { phase }
    }

    /// k-th point of the sequence inside the box.
    pub fn point(&self, bx: &DomainBox, k: usize) -> [f64; 3] {
        let mut p = [0.0; 3];
        for i in 0..3 {
            let f = (self.phase[i] + (k as f64 + 1.0) * KRONECKER_ALPHA[i]).fract();
            p[i] = bx.lo[i] + f * (bx.hi[i] - bx.lo[i]);
        }
        p
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub points_requested: usize,
    /// Points passing the domain predicate.
    pub points_admissible: usize,
    /// Admissible points at which the evaluator produced a finite jet.
    pub points_used: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    /// Evaluation errors at admissible points, as "(t, x, y): message".
    pub failures: Vec<String>,
}

/// Residual sweep over `n` quasi-random points of the box, deterministic in
/// `seed`. Errors out if fewer than n/2 points pass the domain predicate.
pub fn sample_residuals(
    eq: &Equation,
    u: &dyn FieldEval,
    bx: &DomainBox,
    n: usize,
    seed: u64,
) -> Result<ResidualReport, JetError> {
    assert!(n >= 1, "at least one sample point");
    let sampler = QuasiSampler::new(seed);
    let mut admissible = 0usize;
    let mut used = 0usize;
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut failures = Vec::new();
    for k in 0..n {
        let p = sampler.point(bx, k);
        if !u.admissible(p[0], p[1], p[2]) {
            continue;
        }
        admissible += 1;
        let jet = match u.eval(p[0], p[1], p[2]) {
            Ok(j) if j.is_finite() => j,
            Ok(_) => {
                failures.push(format!(
                    "({}, {}, {}): non-finite jet",
                    p[0], p[1], p[2]
                ));
                continue;
            }
            Err(e) => {
                failures.push(format!("({}, {}, {}): {e}", p[0], p[1], p[2]));
                continue;
            }
        };
        match eq.terms(&jet, p) {
            Ok((res, scale)) => {
                used += 1;
                max_abs = max_abs.max(res.abs());
                max_rel = max_rel.max(res.abs() / scale);
            }
            Err(e) => failures.push(format!("({}, {}, {}): {e}", p[0], p[1], p[2])),
        }
    }
    if admissible * 2 < n {
        return Err(JetError::DomainTooThin {
            admissible,
            requested: n,
        });
    }
    Ok(ResidualReport {
        equation: eq.label(),
        points_requested: n,
        points_admissible: admissible,
        points_used: used,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn xsq(_t: f64, x: f64, _y: f64) -> Result<Jet2, JetError> {
        let (_, xj, _) = seed(0.0, x, 0.0);
        Ok(xj * xj)
    }

    #[test]
    fn seeds_are_coordinates() {
        let (t, x, y) = seed(1.0, 2.0, 3.0);
        assert_eq!(t.value(), 1.0);
        assert_eq!(t.grad(0), 1.0);
        assert_eq!(t.grad(1), 0.0);
        assert_eq!(t.hess(0, 0), 0.0);
        assert_eq!(x.value(), 2.0);
        assert_eq!(y.grad(2), 1.0);
    }

    #[test]
    fn product_rule_second_order() {
        let (_, x, y) = seed(0.0, 2.0, 3.0);
        let sq = x * x;
        assert_eq!(sq.value(), 4.0);
        assert_eq!(sq.grad(1), 4.0);
        assert_eq!(sq.hess(1, 1), 2.0);
        let xy = x * y;
        assert_eq!(xy.hess(1, 2), 1.0);
        assert_eq!(xy.hess(1, 1), 0.0);
    }

    #[test]
    fn lift_examples() {
        let (t, _, _) = seed(0.0, 0.0, 0.0);
        let e = lift(Elementary::Exp, &t).unwrap();
        assert_eq!(e.value(), 1.0);
        assert_eq!(e.grad(0), 1.0);

        let (_, x, _) = seed(0.0, 16.0, 0.0);
        let r = lift(Elementary::AbsPow(0.25), &x).unwrap();
        assert_relative_eq!(r.value(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(r.grad(1), 0.25 * 16.0f64.powf(-0.75), max_relative = 1e-15);

        let (t, _, _) = seed(std::f64::consts::PI, 0.0, 0.0);
        let s = lift(Elementary::Sin, &t).unwrap();
        assert!(s.value().abs() < 1e-15);
        assert_relative_eq!(s.grad(0), -1.0, max_relative = 1e-15);
    }

    #[test]
    fn lift_domain_errors() {
        let (t, _, _) = seed(-1.0, 0.0, 0.0);
        assert!(matches!(
            lift(Elementary::Ln, &t),
            Err(JetError::Domain { func: "ln", .. })
        ));
        let zero = Jet2::constant(0.0);
        assert!(lift(Elementary::AbsPow(0.25), &zero).is_err());
        assert!(zero.recip().is_err());
    }

    #[test]
    fn erf_reference_values() {
        // erf(1) = 0.8427007929497149, erf(2) = 0.9953222650189527.
        assert_relative_eq!(erf(1.0), 0.8427007929497149, max_relative = 1e-14);
        assert_relative_eq!(erf(2.0), 0.9953222650189527, max_relative = 1e-14);
        assert_eq!(erf(0.0), 0.0);
        assert_relative_eq!(erf(-1.0), -0.8427007929497149, max_relative = 1e-14);
    }

    #[test]
    fn linear_solution_has_zero_residual() {
        // u = 3x + 7.
        let u = |_t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (_, xj, _) = seed(0.0, x, 0.0);
            Ok(xj.scale(3.0) + Jet2::constant(7.0))
        };
        let r = residual(&Equation::Kolmogorov, &u, [0.3, 1.2, -0.5]).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn exponential_solution_residual_small() {
        // u = e^{t−x} solves u_t + x·u_y = u_xx.
        let u = |t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (tj, xj, _) = seed(t, x, 0.0);
            lift(Elementary::Exp, &(tj - xj))
        };
        let p = [0.4, 0.9, 1.3];
        let r = residual(&Equation::Kolmogorov, &u, p).unwrap();
        let scale = (0.4f64 - 0.9).exp() * 2.0;
        assert!(r.abs() / scale < 1e-12, "relative residual {}", r / scale);
    }

    #[test]
    fn x_squared_residual_is_exactly_minus_two() {
        let r = residual(&Equation::Kolmogorov, &xsq, [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r, -2.0);
    }

    #[test]
    fn residual_is_additive_over_superposition() {
        let u = |t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (tj, xj, _) = seed(t, x, 0.0);
            lift(Elementary::Exp, &(tj - xj))
        };
        let both = |t: f64, x: f64, y: f64| -> Result<Jet2, JetError> {
            Ok(u(t, x, y)? + xsq(t, x, y)?)
        };
        let p = [0.7, 1.1, 0.2];
        let ru = residual(&Equation::Kolmogorov, &u, p).unwrap();
        let rx = residual(&Equation::Kolmogorov, &xsq, p).unwrap();
        let rb = residual(&Equation::Kolmogorov, &both, p).unwrap();
        assert_relative_eq!(rb, ru + rx, epsilon = 1e-12);
    }

    #[test]
    fn constant_solution_sweeps_clean() {
        let u = |_t: f64, _x: f64, _y: f64| Ok(Jet2::constant(1.0));
        let bx = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let rep = sample_residuals(&Equation::Kolmogorov, &u, &bx, 64, 42).unwrap();
        assert_eq!(rep.max_abs_residual, 0.0);
        assert_eq!(rep.points_used, 64);
        assert!(rep.failures.is_empty());
    }

    #[test]
    fn reports_are_deterministic() {
        // A non-solution, so residuals are nonzero and vary with the sample
        // points; equal seeds must agree bit for bit, different seeds must not.
        let u = |t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (tj, xj, _) = seed(t, x, 0.0);
            lift(Elementary::Exp, &(tj - xj).scale(1.01))
        };
        let bx = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let a = sample_residuals(&Equation::Kolmogorov, &u, &bx, 100, 7).unwrap();
        let b = sample_residuals(&Equation::Kolmogorov, &u, &bx, 100, 7).unwrap();
        assert_eq!(a.max_abs_residual.to_bits(), b.max_abs_residual.to_bits());
        assert_eq!(a.max_rel_residual.to_bits(), b.max_rel_residual.to_bits());
        let c = sample_residuals(&Equation::Kolmogorov, &u, &bx, 100, 8).unwrap();
        assert_ne!(a.max_abs_residual.to_bits(), c.max_abs_residual.to_bits());
    }

    #[test]
    fn perturbed_solution_fails_loudly() {
        // Scaling the exponent argument by 1.01 breaks the equation.
        let u = |t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (tj, xj, _) = seed(t, x, 0.0);
            lift(Elementary::Exp, &(tj - xj).scale(1.01))
        };
        let bx = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let rep = sample_residuals(&Equation::Kolmogorov, &u, &bx, 50, 42).unwrap();
        assert!(rep.max_rel_residual > 1e-3);
    }

    #[test]
    fn thin_domain_is_an_error() {
        struct Thin;
        impl FieldEval for Thin {
            fn eval(&self, _t: f64, _x: f64, _y: f64) -> Result<Jet2, JetError> {
                Ok(Jet2::constant(1.0))
            }
            fn admissible(&self, t: f64, _x: f64, _y: f64) -> bool {
                t > 1.9
            }
        }
        let bx = DomainBox::new([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        assert!(matches!(
            sample_residuals(&Equation::Kolmogorov, &Thin, &bx, 50, 42),
            Err(JetError::DomainTooThin { .. })
        ));
    }

    #[test]
    fn heat_and_reduced_fixtures_agree() {
        // w = e^{z1 + z2} solves the heat equation; the generic reduced
        // fixture with V = 0 must give the same residuals.
        let w = |z1: f64, z2: f64, _y: f64| -> Result<Jet2, JetError> {
            let (a, b, _) = seed(z1, z2, 0.0);
            lift(Elementary::Exp, &(a + b))
        };
        let red = Equation::Reduced(ReducedEq::heat_with_potential("plain", |_, _| 0.0));
        let p = [0.8, 1.4, 0.0];
        let r1 = residual(&Equation::Heat, &w, p).unwrap();
        let r2 = residual(&red, &w, p).unwrap();
        assert_relative_eq!(r1, r2, epsilon = 1e-16);
    }

    #[test]
    fn heat_isq_residual_matches_potential_form() {
        // u = x^{1/2} is a stationary solution of u_t = u_xx + (1/4)x⁻²u.
        let u = |_t: f64, x: f64, _y: f64| -> Result<Jet2, JetError> {
            let (_, xj, _) = seed(0.0, x, 0.0);
            lift(Elementary::AbsPow(0.5), &xj)
        };
        let r = residual(&Equation::HeatIsq { mu: 0.25 }, &u, [1.0, 1.7, 0.0]).unwrap();
        assert!(r.abs() < 1e-15, "residual {r}");
    }

    #[test]
    fn jets_match_finite_differences() {
        // Composite expression f = exp(sin(x·t) − 0.3·y²)·atan(x + 0.5·y).
        let f = |t: f64, x: f64, y: f64| -> Result<Jet2, JetError> {
            let (tj, xj, yj) = seed(t, x, y);
            let s = lift(Elementary::Sin, &(xj * tj))?;
            let e = lift(Elementary::Exp, &(s - (yj * yj).scale(0.3)))?;
            let a = lift(Elementary::Atan, &(xj + yj.scale(0.5)))?;
            Ok(e * a)
        };
        let val = |t: f64, x: f64, y: f64| f(t, x, y).unwrap().value();
        let p = [0.7, 1.1, 0.4];
        let jet = f(p[0], p[1], p[2]).unwrap();
        let h = 1e-5;
        for i in 0..3 {
            let mut hi = p;
            let mut lo = p;
            hi[i] += h;
            lo[i] -= h;
            let fd = (val(hi[0], hi[1], hi[2]) - val(lo[0], lo[1], lo[2])) / (2.0 * h);
            assert_relative_eq!(jet.grad(i), fd, max_relative = 1e-6);
        }
        // Second derivatives, diagonal and mixed.
        for i in 0..3 {
            for j in 0..3 {
                let mut pp = p;
                pp[i] += h;
                pp[j] += h;
                let mut pm = p;
                pm[i] += h;
                pm[j] -= h;
                let mut mp = p;
                mp[i] -= h;
                mp[j] += h;
                let mut mm = p;
                mm[i] -= h;
                mm[j] -= h;
                let fd = (val(pp[0], pp[1], pp[2]) - val(pm[0], pm[1], pm[2])
                    - val(mp[0], mp[1], mp[2])
                    + val(mm[0], mm[1], mm[2]))
                    / (4.0 * h * h);
                assert_relative_eq!(jet.hess(i, j), fd, max_relative = 1e-4, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn compose2_chain_rule() {
        // w(z1, z2) = z1·z2², z1 = t+x, z2 = x·y; compare against direct jets.
        let p = [0.6, 1.3, 0.9];
        let (tj, xj, yj) = seed(p[0], p[1], p[2]);
        let z1 = tj + xj;
        let z2 = xj * yj;
        let direct = z1 * z2 * z2;
        let (a, b) = (z1.value(), z2.value());
        let w = BiJet2 {
            v: a * b * b,
            d1: b * b,
            d2: 2.0 * a * b,
            d11: 0.0,
            d12: 2.0 * b,
            d22: 2.0 * a,
        };
        let composed = compose2(&w, &z1, &z2);
        assert_relative_eq!(composed.value(), direct.value(), epsilon = 1e-14);
        for i in 0..3 {
            assert_relative_eq!(composed.grad(i), direct.grad(i), epsilon = 1e-13);
            for j in 0..3 {
                assert_relative_eq!(composed.hess(i, j), direct.hess(i, j), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn compose3_chain_rule() {
        // f(a, b, c) = a·b² + exp(c), with a = t+x·y, b = x−t², c = t·y;
        // compare the composed jet against direct jet arithmetic of the
        // fully substituted expression.
        let p = [0.7, 1.2, -0.4];
        let (tj, xj, yj) = seed(p[0], p[1], p[2]);
        let a = tj + xj * yj;
        let b = xj - tj * tj;
        let c = tj * yj;
        let direct = a * b * b + lift(Elementary::Exp, &c).unwrap();

        // Outer jet of f with respect to its own slots, built by seeding the
        // slot values as coordinates.
        let (ai, bi, ci) = seed(a.value(), b.value(), c.value());
        let outer = ai * bi * bi + lift(Elementary::Exp, &ci).unwrap();

        let composed = compose3(&outer, [&a, &b, &c]);
        assert_relative_eq!(composed.value(), direct.value(), epsilon = 1e-14);
        for i in 0..3 {
            assert_relative_eq!(composed.grad(i), direct.grad(i), epsilon = 1e-13);
            for j in 0..3 {
                assert_relative_eq!(composed.hess(i, j), direct.hess(i, j), epsilon = 1e-13);
            }
        }
    }
}
