//! Kantorovich operators on `L¹[0, 1]` and two non-positive perturbations:
//!
//! * `𝒦_n`, weights `C(n,k) x^k (1−x)^{n−k}`.
//! * `A_n`, weights `C(n,k) (x/2)^k (1 − a_n(x) − x/2)^{n−k}`, target `f(x/2)`.
//! * `B_n`, weights `C(n,k) (−x)^k (1−x)^{n−k}`, target `0`.
//!
//! Binding an operator to `f` computes the cell integrals
//! `(n+1)∫_{k/(n+1)}^{(k+1)/(n+1)} f` once; the bound function is immutable and
//! can be evaluated from several threads.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::function::{Domain, Interval, RealFunction, Smoothness};
use crate::quadrature::{integrate_split, modulus_of_continuity, QuadratureSpec};
use crate::report::{Cell, ReportTable};

/// Orders above this use log-space binomial weights.
pub const LOG_SPACE_ABOVE: usize = 50;
/// Tolerance for each cell integral.
pub const CELL_TOL: f64 = 1e-12;
/// Slack allowed below zero before `μ_n²` is declared inconsistent.
pub const MU_SLACK: f64 = 1e-8;

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

fn check_x(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("x must lie in [0, 1]"))
    }
}

/// `e_j(t) = t^j` on `[0, 1]`.
pub fn monomial(j: i32) -> RealFunction {
    RealFunction::new(Domain::Interval(unit()), Smoothness::C2, move |t| t.powi(j))
}

/// `χ_[a,b]` on `[0, 1]`.
pub fn indicator(iv: Interval) -> RealFunction {
    RealFunction::new(Domain::Interval(unit()), Smoothness::Continuous, move |t| {
        if iv.contains(t) {
            1.0
        } else {
            0.0
        }
    })
    .with_breakpoints(&[iv.lo(), iv.hi()])
}

/// `χ` of `[(n − 2^m)/2^m, (n − 2^m + 1)/2^m]` with `2^m ≤ n < 2^{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicIndicator {
    pub n: usize,
    pub m: u32,
    pub interval: Interval,
}

impl DyadicIndicator {
    pub fn eval(&self, x: f64) -> f64 {
        if self.interval.contains(x) {
            1.0
        } else {
            0.0
        }
    }

    /// `‖a_n‖₁ = 2^{−m}`.
    pub fn l1_norm(&self) -> f64 {
        self.interval.len()
    }
}

pub fn dyadic_indicator(n: usize) -> Result<DyadicIndicator> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let m = usize::BITS - 1 - n.leading_zeros();
    let scale = (1usize << m) as f64;
    let lo = (n - (1usize << m)) as f64 / scale;
    Ok(DyadicIndicator {
        n,
        m,
        interval: Interval::new(lo, lo + 1.0 / scale)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KantorovichKind {
    Classic,
    /// `A_n`.
    Dyadic,
    /// `B_n`.
    Alternating,
}

/// The limit operators paired with the sequences above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Identity,
    Zero,
    /// `f ↦ f(·/2)`.
    HalfDilation,
}

/// A linear operator on `L¹[0, 1]` together with its intended limit.
pub trait L1Operator: Send + Sync {
    fn label(&self) -> String;

    /// The image of `f`, as a function on `[0, 1]`.
    fn bind(&self, f: &RealFunction) -> Result<RealFunction>;

    fn target(&self) -> Target;

    fn apply(&self, f: &RealFunction, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(self.bind(f)?.eval(x))
    }
}

impl L1Operator for Target {
    fn label(&self) -> String {
        match self {
            Target::Identity => "identity".into(),
            Target::Zero => "zero".into(),
            Target::HalfDilation => "half-dilation".into(),
        }
    }

    fn bind(&self, f: &RealFunction) -> Result<RealFunction> {
        let dom = Domain::Interval(unit());
        Ok(match self {
            Target::Identity => {
                let g = f.clone();
                RealFunction::new(dom, f.smoothness(), move |x| g.eval(x))
                    .with_breakpoints(f.breakpoints())
            }
            Target::Zero => RealFunction::new(dom, Smoothness::C2, |_| 0.0),
            Target::HalfDilation => {
                let g = f.clone();
                let bp: Vec<f64> = f.breakpoints().iter().map(|b| 2.0 * b).collect();
                RealFunction::new(dom, f.smoothness(), move |x| g.eval(0.5 * x))
                    .with_breakpoints(&bp)
            }
        })
    }

    fn target(&self) -> Target {
        *self
    }
}

#[derive(Debug, Clone)]
pub struct KantorovichOperator {
    kind: KantorovichKind,
    n: usize,
    dyadic: DyadicIndicator,
    /// `ln C(n, k)`, filled only in log-space mode.
    log_binom: Arc<Vec<f64>>,
}

impl KantorovichOperator {
    pub fn new(kind: KantorovichKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1"));
        }
        let mut log_binom = Vec::new();
        if n > LOG_SPACE_ABOVE {
            log_binom.reserve(n + 1);
            log_binom.push(0.0);
            for k in 1..=n {
                let prev = log_binom[k - 1];
                log_binom.push(prev + ((n - k + 1) as f64 / k as f64).ln());
            }
        }
        Ok(KantorovichOperator {
            kind,
            n,
            dyadic: dyadic_indicator(n)?,
            log_binom: Arc::new(log_binom),
        })
    }

    pub fn classic(n: usize) -> Result<Self> {
        Self::new(KantorovichKind::Classic, n)
    }

    pub fn dyadic(n: usize) -> Result<Self> {
        Self::new(KantorovichKind::Dyadic, n)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        Self::new(KantorovichKind::Alternating, n)
    }

    pub fn kind(&self) -> KantorovichKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dyadic_part(&self) -> &DyadicIndicator {
        &self.dyadic
    }

    /// The pair `(p, q)` in `C(n,k) p^k q^{n−k}`.
    pub fn weight_bases(&self, x: f64) -> (f64, f64) {
        match self.kind {
            KantorovichKind::Classic => (x, 1.0 - x),
            KantorovichKind::Dyadic => (0.5 * x, 1.0 - self.dyadic.eval(x) - 0.5 * x),
            KantorovichKind::Alternating => (-x, 1.0 - x),
        }
    }

    /// `(n+1)∫ f` over each of the `n + 1` cells.
    pub fn cell_integrals(&self, f: &RealFunction) -> Result<Vec<f64>> {
        let n1 = (self.n + 1) as f64;
        let q = QuadratureSpec::with_tol(CELL_TOL);
        (0..=self.n)
            .map(|k| {
                let cell = Interval::new(k as f64 / n1, (k + 1) as f64 / n1)?;
                Ok(n1 * integrate_split(|t| f.eval(t), cell, f.breakpoints(), &q)?)
            })
            .collect()
    }

    /// `Σ_k C(n,k) p^k q^{n−k} cells[k]`.
    pub fn combine(&self, cells: &[f64], x: f64) -> f64 {
        let n = self.n;
        let (p, q) = self.weight_bases(x);
        if p == 0.0 {
            return q.powi(n as i32) * cells[0];
        }
        if q == 0.0 {
            return p.powi(n as i32) * cells[n];
        }
        if n <= LOG_SPACE_ABOVE {
            let mut binom = 1.0;
            let mut total = 0.0;
            for (k, &c) in cells.iter().enumerate() {
                total += binom * p.powi(k as i32) * q.powi((n - k) as i32) * c;
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            total
        } else {
            let (lp, lq) = (p.abs().ln(), q.abs().ln());
            let mut total = 0.0;
            for (k, &c) in cells.iter().enumerate() {
                let mag = (self.log_binom[k] + k as f64 * lp + (n - k) as f64 * lq).exp();
                let neg = (p < 0.0 && k % 2 == 1) ^ (q < 0.0 && (n - k) % 2 == 1);
                total += if neg { -mag } else { mag } * c;
            }
            total
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self.kind {
            KantorovichKind::Dyadic => {
                alloc::vec![self.dyadic.interval.lo(), self.dyadic.interval.hi()]
            }
            _ => Vec::new(),
        }
    }
}

impl L1Operator for KantorovichOperator {
    fn label(&self) -> String {
        let name = match self.kind {
            KantorovichKind::Classic => "K",
            KantorovichKind::Dyadic => "A",
            KantorovichKind::Alternating => "B",
        };
        format!("{name}_{}", self.n)
    }

    fn bind(&self, f: &RealFunction) -> Result<RealFunction> {
        let cells = self.cell_integrals(f)?;
        let op = self.clone();
        let smooth = if self.kind == KantorovichKind::Dyadic {
            Smoothness::Continuous
        } else {
            Smoothness::C2
        };
        Ok(
            RealFunction::new(Domain::Interval(unit()), smooth, move |x| op.combine(&cells, x))
                .with_breakpoints(&self.breakpoints()),
        )
    }

    fn target(&self) -> Target {
        match self.kind {
            KantorovichKind::Classic => Target::Identity,
            KantorovichKind::Dyadic => Target::HalfDilation,
            KantorovichKind::Alternating => Target::Zero,
        }
    }
}

/// `L_n(e_j)(x)` for `j ∈ {0, 1, 2}` from the binomial moment identities with
/// `s = p + q`:
///
/// * `e_0 → s^n`
/// * `e_1 → (2np s^{n−1} + s^n) / (2(n+1))`
/// * `e_2 → (3n(n−1)p² s^{n−2} + 6np s^{n−1} + s^n) / (3(n+1)²)`
pub fn moment_closed_form(op: &KantorovichOperator, j: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    let n = op.n() as f64;
    let (p, q) = op.weight_bases(x);
    let s = p + q;
    let sp = |e: f64| if e < 0.0 { 0.0 } else { s.powf(e) };
    match j {
        0 => Ok(sp(n)),
        1 => Ok((2.0 * n * p * sp(n - 1.0) + sp(n)) / (2.0 * (n + 1.0))),
        2 => Ok((3.0 * n * (n - 1.0) * p * p * sp(n - 2.0) + 6.0 * n * p * sp(n - 1.0) + sp(n))
            / (3.0 * (n + 1.0) * (n + 1.0))),
        _ => Err(Error::InvalidArgument("moments are available for j = 0, 1, 2")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KantorovichWitness {
    pub n: usize,
    pub x: f64,
    /// Value computed by the operator.
    pub value: f64,
    /// Value predicted in closed form.
    pub closed_form: f64,
}

/// `A_n(e^{−t})(x) < 0` for odd `n` at the midpoint `x` of the dyadic cell,
/// where it equals `−(n+1)(x/2)^n (e^{−1/(n+1)} − 1)^{n+1}`.
pub fn dyadic_witness(n: usize) -> Result<KantorovichWitness> {
    let op = KantorovichOperator::dyadic(n)?;
    let x = op.dyadic_part().interval.midpoint();
    let f = RealFunction::new(Domain::Interval(unit()), Smoothness::C2, |t| (-t).exp());
    let value = op.apply(&f, x)?;
    let n1 = (n + 1) as f64;
    let closed_form = -n1 * (0.5 * x).powi(n as i32) * ((-1.0 / n1).exp() - 1.0).powi(n as i32 + 1);
    if value < 0.0 {
        Ok(KantorovichWitness { n, x, value, closed_form })
    } else {
        Err(Error::WitnessNotFound { n })
    }
}

/// `B_n(e_0)(x) = (1 − 2x)^n < 0` for odd `n` and `x > ½`; probed at `x = ¾`.
pub fn alternating_witness(n: usize) -> Result<KantorovichWitness> {
    let op = KantorovichOperator::alternating(n)?;
    let x = 0.75;
    let value = op.apply(&monomial(0), x)?;
    let closed_form = (1.0 - 2.0 * x).powi(n as i32);
    if value < 0.0 {
        Ok(KantorovichWitness { n, x, value, closed_form })
    } else {
        Err(Error::WitnessNotFound { n })
    }
}

/// `∫₀¹ |f|`, split at the breakpoints of `f`.
pub fn l1_norm(f: &RealFunction, q: &QuadratureSpec) -> Result<f64> {
    integrate_split(|x| f.eval(x).abs(), unit(), f.breakpoints(), q)
}

fn merged(a: &RealFunction, b: &RealFunction) -> Vec<f64> {
    let mut bp: Vec<f64> = a.breakpoints().to_vec();
    bp.extend_from_slice(b.breakpoints());
    bp.sort_by(|x, y| x.total_cmp(y));
    bp.dedup();
    bp
}

/// `‖f − g‖₁` on `[0, 1]`.
pub fn l1_gap(f: &RealFunction, g: &RealFunction, q: &QuadratureSpec) -> Result<f64> {
    integrate_split(|x| (f.eval(x) - g.eval(x)).abs(), unit(), &merged(f, g), q)
}

/// `‖L_n(f) − L(f)‖₁` against the operator's own target.
pub fn target_gap(op: &dyn L1Operator, f: &RealFunction, q: &QuadratureSpec) -> Result<f64> {
    l1_gap(&op.bind(f)?, &op.target().bind(f)?, q)
}

/// `max ‖op(f)‖₁ / ‖f‖₁` over the probes: a lower bound for `‖op‖`.
pub fn l1_operator_norm_bound(
    op: &dyn L1Operator,
    probes: &[RealFunction],
    q: &QuadratureSpec,
) -> Result<f64> {
    if probes.is_empty() {
        return Err(Error::InvalidArgument("at least one probe is required"));
    }
    let mut best = 0.0f64;
    for f in probes {
        let denom = l1_norm(f, q)?;
        if !(denom > 0.0) {
            return Err(Error::InvalidArgument("probe has zero L1 norm"));
        }
        best = best.max(l1_norm(&op.bind(f)?, q)? / denom);
    }
    Ok(best)
}

/// `μ_n = (∫₀¹ L_n(e_2)L(e_0) − 2L_n(e_1)L(e_1) + L_n(e_0)L(e_2))^{1/2}`.
pub fn mu_n(ln: &dyn L1Operator, l: &dyn L1Operator, q: &QuadratureSpec) -> Result<f64> {
    let mut a = Vec::with_capacity(3);
    let mut b = Vec::with_capacity(3);
    for j in 0..3 {
        a.push(ln.bind(&monomial(j))?);
        b.push(l.bind(&monomial(j))?);
    }
    let bp = merged(&a[0], &a[1]);
    let sq = integrate_split(
        |x| {
            a[2].eval(x) * b[0].eval(x) - 2.0 * a[1].eval(x) * b[1].eval(x)
                + a[0].eval(x) * b[2].eval(x)
        },
        unit(),
        &bp,
        q,
    )?;
    if sq < -MU_SLACK {
        return Err(Error::Inconsistent { value: sq });
    }
    Ok(sq.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuBoundReport {
    pub mu: f64,
    /// `‖L_n(f)L(e_0) − L_n(e_0)L(f)‖₁`.
    pub lhs: f64,
    /// `(∫ L_n(e_0)L(e_0) + 1) ω(f, μ_n)`.
    pub rhs: f64,
    pub holds: bool,
}

pub fn mu_bound_check(
    ln: &dyn L1Operator,
    l: &dyn L1Operator,
    f: &RealFunction,
    q: &QuadratureSpec,
    grid_step: f64,
) -> Result<MuBoundReport> {
    let mu = mu_n(ln, l, q)?;
    let (lnf, ln0) = (ln.bind(f)?, ln.bind(&monomial(0))?);
    let (lf, l0) = (l.bind(f)?, l.bind(&monomial(0))?);
    let mut bp = merged(&lnf, &lf);
    bp.extend_from_slice(ln0.breakpoints());
    let lhs = integrate_split(
        |x| (lnf.eval(x) * l0.eval(x) - ln0.eval(x) * lf.eval(x)).abs(),
        unit(),
        &bp,
        q,
    )?;
    let mass = integrate_split(|x| ln0.eval(x) * l0.eval(x), unit(), ln0.breakpoints(), q)?;
    let omega = if mu > 0.0 {
        modulus_of_continuity(|x| f.eval(x), mu, unit(), grid_step)?
    } else {
        0.0
    };
    let rhs = (mass + 1.0) * omega;
    Ok(MuBoundReport {
        mu,
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-10,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicReport {
    pub g_norm: f64,
    /// `(n, ‖(L_n − L + I)(g)‖₁)`.
    pub sequence: Vec<(usize, f64)>,
    pub holds: bool,
}

impl CharacteristicReport {
    pub fn table(&self) -> Result<ReportTable> {
        let mut t = ReportTable::new(
            "characteristic_condition",
            &[("n", ""), ("norm", ""), ("g_norm", "")],
        )?;
        for &(n, v) in &self.sequence {
            t.push_row(alloc::vec![Cell::from(n), v.into(), self.g_norm.into()])?;
        }
        Ok(t)
    }
}

/// Slack on the final value of the sequence.
pub const CHARACTERISTIC_SLACK: f64 = 0.02;

/// `‖(L_n − L + I)(χ_g)‖₁` along `n_list`; holds when the last value is within
/// [`CHARACTERISTIC_SLACK`] of `‖χ_g‖₁` or below it.
pub fn characteristic_condition_check(
    family: &dyn Fn(usize) -> Result<Box<dyn L1Operator>>,
    l: &dyn L1Operator,
    g_interval: Interval,
    n_list: &[usize],
    q: &QuadratureSpec,
) -> Result<CharacteristicReport> {
    if g_interval.lo() < 0.0 || g_interval.hi() > 1.0 {
        return Err(Error::InvalidArgument("g interval must lie in [0, 1]"));
    }
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("n_list is empty"));
    }
    let g = indicator(g_interval);
    let lg = l.bind(&g)?;
    let g_norm = g_interval.len();
    let mut sequence = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let lng = family(n)?.bind(&g)?;
        let mut bp = merged(&lng, &lg);
        bp.extend_from_slice(g.breakpoints());
        let v = integrate_split(
            |x| (lng.eval(x) - lg.eval(x) + g.eval(x)).abs(),
            unit(),
            &bp,
            q,
        )?;
        sequence.push((n, v));
    }
    let last = sequence.last().map(|s| s.1).unwrap_or(f64::INFINITY);
    Ok(CharacteristicReport {
        g_norm,
        holds: last <= g_norm + CHARACTERISTIC_SLACK,
        sequence,
    })
}
