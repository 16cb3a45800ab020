use core::str::FromStr;

use aw_core::awcalc::{verify_identity, Rule};
use aw_core::families::{
    aw_family, aw_monic, cdqhahn_limit_target, extract_recurrence, limit_family_eval, LimitFamily,
    RecurrenceCoeffs,
};
use aw_core::structure::{
    band_profile, expand_in_d2_basis, pi_factored, structure_coefficients, verify_contiguous,
    verify_dde, verify_koornwinder, verify_shift, verify_structure_relation, Slot,
};
use aw_core::zeros::{extreme_zero_bounds, table1, zeros_sturm};
use aw_core::{AWParams, AwError, BigFloat, QContext, Rational, Scalar, XPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Base, Command, NRange, RunConfig};
use crate::output::{format_sig, Report, Verdict};
use crate::CliError;

const DIGITS: usize = 12;
const TABLE1_DIGITS: usize = 9;

fn num<S: Scalar>(v: &S) -> String {
    format_sig(v.to_f64(), DIGITS)
}

/// Runs `cfg` in backend `S`.
pub fn run<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Eval => eval::<S>(cfg),
        Command::Zeros => zeros::<S>(cfg),
        Command::Bounds => bounds::<S>(cfg),
        Command::Table1 => table::<S>(cfg),
        Command::Verify => verify::<S>(cfg),
        Command::Limits => limits::<S>(cfg),
    }
}

fn context<S: Scalar>(cfg: &RunConfig) -> Result<QContext<S>, CliError> {
    match cfg.require_base()? {
        Base::U(u) => Ok(QContext::from_u(S::from_rational(u))?),
        Base::Q(q) => {
            let q = S::from_rational(q);
            if S::EXACT {
                let u = q.sqrt().and_then(|s| s.sqrt()).ok_or_else(|| {
                    CliError::usage(format!(
                        "q = {} has an irrational fourth root; the exact backend needs a rational u = q^(1/4), pass --u or --backend float",
                        q
                    ))
                })?;
                Ok(QContext::from_u(u)?)
            } else {
                Ok(QContext::from_q(q)?)
            }
        }
    }
}

fn params<S: Scalar>(cfg: &RunConfig) -> Result<AWParams<S>, CliError> {
    let [a, b, c, d] = cfg.require_params()?.map(|v| S::from_rational(&v));
    Ok(AWParams::new(a, b, c, d, context(cfg)?)?)
}

/// Bisection width: 1e-12 in double precision, tighter in wider floats.
fn zero_tolerance<S: Scalar>(cfg: &RunConfig) -> S {
    let bits = S::PRECISION_BITS;
    let default = if bits == 0 || bits <= 53 {
        1e-12
    } else {
        let digits = (bits as f64 * core::f64::consts::LOG10_2) as i32;
        10f64.powi(-(digits - 4)).max(1e-30)
    };
    S::from_f64(cfg.tolerance.unwrap_or(default))
}

/// Relative residual tolerance of the float checks.
fn check_tolerance<S: Scalar>(cfg: &RunConfig) -> f64 {
    let bits = S::PRECISION_BITS;
    let default = if bits <= 53 {
        1e-8
    } else {
        let digits = (bits as f64 * core::f64::consts::LOG10_2) as i32;
        10f64.powi(-(digits / 2)).max(1e-30)
    };
    cfg.tolerance.unwrap_or(default)
}

/// Work that can run in any backend, so it can be moved to a wider float
/// than the one requested.
trait Job {
    type Out;
    fn run<W: Scalar>(&self, cfg: &RunConfig) -> Result<Self::Out, CliError>;
}

/// Runs `job` in the narrowest compiled float with at least `bits` bits.
fn at_width<J: Job>(job: &J, cfg: &RunConfig, bits: f64) -> Result<J::Out, CliError> {
    if bits <= 128.0 {
        job.run::<BigFloat<128>>(cfg)
    } else if bits <= 256.0 {
        job.run::<BigFloat<256>>(cfg)
    } else if bits <= 512.0 {
        job.run::<BigFloat<512>>(cfg)
    } else if bits <= 1024.0 {
        job.run::<BigFloat<1024>>(cfg)
    } else if bits <= 2048.0 {
        job.run::<BigFloat<2048>>(cfg)
    } else if bits <= 4096.0 {
        job.run::<BigFloat<4096>>(cfg)
    } else {
        job.run::<BigFloat<8192>>(cfg)
    }
}

/// Runs `job` in `S` when it is exact, otherwise in a float `extra` bits
/// wider than `S`.
fn widened<S: Scalar, J: Job>(job: &J, cfg: &RunConfig, extra: f64) -> Result<J::Out, CliError> {
    if S::EXACT {
        job.run::<S>(cfg)
    } else {
        at_width(job, cfg, S::PRECISION_BITS as f64 + extra)
    }
}

/// `|log2 q|`, the bits lost per unit of `n^2` when the series cancels.
fn log2_q(cfg: &RunConfig) -> Result<f64, CliError> {
    let q = match cfg.require_base()? {
        Base::U(u) => Scalar::to_f64(u).powi(4),
        Base::Q(q) => Scalar::to_f64(q),
    };
    Ok(q.log2().abs())
}

struct Extract {
    n_max: usize,
}

impl Job for Extract {
    type Out = RecurrenceCoeffs<Rational>;
    fn run<W: Scalar>(&self, cfg: &RunConfig) -> Result<Self::Out, CliError> {
        Ok(extract_recurrence(&params::<W>(cfg)?, self.n_max)?.map(Scalar::to_rational))
    }
}

/// Recurrence coefficients up to `n_max` in backend `S`.
///
/// The series loses up to about `n^2/2 |log2 q|` bits to cancellation, so
/// float backends extract in a float that much wider and round the
/// coefficients afterwards. Rounding a recurrence is benign; rounding the
/// series is not.
fn recurrence<S: Scalar>(cfg: &RunConfig, n_max: usize) -> Result<RecurrenceCoeffs<S>, CliError> {
    let n_max = n_max.max(1);
    if S::EXACT {
        return Ok(extract_recurrence(&params::<S>(cfg)?, n_max)?);
    }
    let loss = (n_max * n_max) as f64 / 2.0 * log2_q(cfg)? + 64.0;
    Ok(widened::<S, _>(&Extract { n_max }, cfg, loss)?.map(S::from_rational))
}

fn eval<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    let range = cfg.require_n()?;
    let x = S::from_rational(
        cfg.x
            .as_ref()
            .ok_or_else(|| CliError::usage("eval needs --x"))?,
    );
    let mut report = Report::new(&["n", "x", "value"]);
    let values: Vec<S> = if S::EXACT {
        let p = params::<S>(cfg)?;
        range
            .iter()
            .map(|n| Ok(aw_monic(&p, n)?.evaluate(&x)))
            .collect::<Result<_, CliError>>()?
    } else {
        let rec = recurrence::<S>(cfg, range.hi)?;
        let mut all = vec![S::one()];
        let mut prev = S::zero();
        for k in 0..range.hi {
            let mut next = (x.clone() - rec.a[k].clone()) * all[k].clone();
            if k >= 1 {
                next -= rec.b_n(k).clone() * prev;
            }
            prev = all[k].clone();
            all.push(next);
        }
        all.drain(range.lo..).collect()
    };
    for (n, v) in range.iter().zip(&values) {
        report.push(vec![n.to_string(), num(&x), num(v)]);
    }
    Ok(report)
}

fn zeros<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    let range = cfg.require_n()?;
    if range.lo < 1 {
        return Err(CliError::usage("zeros need n >= 1"));
    }
    let rec = recurrence::<S>(cfg, range.hi)?;
    let tol = zero_tolerance::<S>(cfg);
    let mut report = Report::new(&["n", "k", "zero"]);
    for n in range.iter() {
        let z = zeros_sturm(&rec, n, &tol)?;
        for (k, v) in z.values.iter().enumerate() {
            report.push(vec![n.to_string(), (k + 1).to_string(), num(v)]);
        }
    }
    Ok(report)
}

fn bounds<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    let range = cfg.require_n()?;
    if range.lo < 2 {
        return Err(CliError::usage("extreme-zero bounds need n >= 2"));
    }
    let p = params::<S>(cfg)?;
    let rec = recurrence::<S>(cfg, range.hi)?;
    let tol = zero_tolerance::<S>(cfg);
    let mut report = Report::new(&[
        "n",
        "smallest_zero",
        "upper_bound",
        "lower_bound",
        "largest_zero",
        "i_n",
    ]);
    for n in range.iter() {
        let b = extreme_zero_bounds(&p, n)?;
        let z = zeros_sturm(&rec, n, &tol)?;
        report.push(vec![
            n.to_string(),
            num(&z.values[0]),
            num(&b.upper_on_smallest),
            num(&b.lower_on_largest),
            num(&z.values[n - 1]),
            num(&b.i_n),
        ]);
    }
    Ok(report)
}

fn table<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.params.iter().any(Option::is_some)
        || cfg.base.is_some()
        || cfg.n.is_some()
        || cfg.x.is_some()
    {
        return Err(CliError::usage(
            "table1 has fixed parameters and takes no --a/--b/--c/--d/--u/--q/--n/--x",
        ));
    }
    let mut report = Report::new(&[
        "n",
        "smallest_zero",
        "upper_bound",
        "lower_bound",
        "largest_zero",
    ]);
    for row in table1::<S>(&zero_tolerance::<S>(cfg))? {
        let mut cells = vec![row.n.to_string()];
        cells.extend(row.to_f64().iter().map(|v| format_sig(*v, TABLE1_DIGITS)));
        report.push(cells);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    ProductRules,
    Dde,
    Structure,
    Contiguous,
    Expansion,
    Koornwinder,
    Band,
    Shift,
}

impl Check {
    const ALL: [Check; 8] = [
        Check::ProductRules,
        Check::Dde,
        Check::Structure,
        Check::Contiguous,
        Check::Expansion,
        Check::Koornwinder,
        Check::Band,
        Check::Shift,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Check::ProductRules => "product-rules",
            Check::Dde => "dde",
            Check::Structure => "structure",
            Check::Contiguous => "contiguous",
            Check::Expansion => "expansion",
            Check::Koornwinder => "koornwinder",
            Check::Band => "band",
            Check::Shift => "shift",
        }
    }

    fn min_n(self) -> usize {
        match self {
            Check::Structure | Check::Band => 2,
            Check::Expansion => 4,
            _ => 0,
        }
    }

    fn default_max_n(self) -> usize {
        match self {
            Check::ProductRules => 6,
            _ => 8,
        }
    }
}

impl FromStr for Check {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Check, CliError> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.as_str()).collect();
                CliError::usage(format!(
                    "unknown check {:?}; expected one of {}",
                    s,
                    names.join(", ")
                ))
            })
    }
}

/// A residual reduced to what the report needs.
struct Residual {
    zero: bool,
    size: f64,
}

impl Residual {
    fn of<S: Scalar>(polys: &[&XPoly<S>]) -> Residual {
        Residual {
            zero: polys.iter().all(|p| p.is_zero()),
            size: polys.iter().map(|p| p.max_abs_coeff()).fold(0.0, f64::max),
        }
    }

    fn passes<S: Scalar>(&self, tol: f64, scale: f64) -> bool {
        if S::EXACT {
            self.zero
        } else {
            self.size <= tol * scale.max(1.0)
        }
    }

    fn cell(&self) -> String {
        if self.zero {
            "0".into()
        } else {
            format_sig(self.size, DIGITS)
        }
    }
}

fn random_poly<S: Scalar>(rng: &mut ChaCha8Rng, degree: usize) -> XPoly<S> {
    let mut coeffs: Vec<S> = (0..=degree)
        .map(|_| S::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
        .collect();
    if coeffs[degree].is_zero() {
        coeffs[degree] = S::one();
    }
    XPoly::from_coeffs(coeffs)
}

fn verify<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    let check: Check = cfg
        .check
        .as_deref()
        .ok_or_else(|| CliError::usage("verify needs --check NAME"))?
        .parse()?;
    let range = cfg.n.unwrap_or(NRange {
        lo: check.min_n(),
        hi: check.default_max_n(),
    });
    if range.lo < check.min_n() {
        return Err(CliError::usage(format!(
            "check {} needs n >= {}",
            check.as_str(),
            check.min_n()
        )));
    }
    let job = VerifyJob {
        check,
        range,
        tol: check_tolerance::<S>(cfg),
    };
    // The series behind every check cancels like the recurrence extraction
    // does, and the operators add a little more on top.
    let loss = (range.hi * range.hi) as f64 * log2_q(cfg)? + 64.0;
    widened::<S, _>(&job, cfg, loss)
}

struct VerifyJob {
    check: Check,
    range: NRange,
    /// Relative tolerance for the requested precision.
    tol: f64,
}

impl Job for VerifyJob {
    type Out = Report;
    fn run<S: Scalar>(&self, cfg: &RunConfig) -> Result<Report, CliError> {
        let VerifyJob { check, range, tol } = *self;
        let mut report = Report::new(&["check", "case", "n", "status", "residual"]);
        let mut all = true;
        let mut row = |case: &str, n: usize, r: &Residual, ok: bool| {
            all &= ok;
            report.push(vec![
                check.as_str().into(),
                case.into(),
                n.to_string(),
                if ok { "PASS" } else { "FAIL" }.into(),
                r.cell(),
            ]);
        };

        if check == Check::ProductRules {
            let ctx = context::<S>(cfg)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for n in range.iter() {
                let f = random_poly::<S>(&mut rng, n);
                let g = random_poly::<S>(&mut rng, n);
                let scale = f.max_abs_coeff().max(1.0) * g.max_abs_coeff().max(1.0);
                for rule in Rule::ALL {
                    let r = Residual::of(&[&verify_identity(&ctx, rule, &f, Some(&g))?]);
                    let ok = r.passes::<S>(tol, scale);
                    row(rule.as_str(), n, &r, ok);
                }
            }
        } else {
            let p = params::<S>(cfg)?;
            let pi = pi_factored(&p);
            for n in range.iter() {
                let scale = aw_monic(&p, n)?.max_abs_coeff().max(1.0) * pi.max_abs_coeff().max(1.0);
                let mut single = |case: &str, r: Residual| {
                    let ok = r.passes::<S>(tol, scale);
                    row(case, n, &r, ok);
                };
                match check {
                    Check::ProductRules => unreachable!(),
                    Check::Dde => single("-", Residual::of(&[&verify_dde(&p, n)?])),
                    Check::Structure => {
                        single("-", Residual::of(&[&verify_structure_relation(&p, n)?]))
                    }
                    Check::Koornwinder => single("-", Residual::of(&[&verify_koornwinder(&p, n)?])),
                    Check::Shift => {
                        let (first, second) = verify_shift(&p, n)?;
                        single("-", Residual::of(&[&first, &second]));
                    }
                    Check::Contiguous => {
                        for slot in Slot::ALL {
                            single(
                                slot.name(),
                                Residual::of(&[&verify_contiguous(&p, n, slot)?]),
                            );
                        }
                    }
                    Check::Expansion => match expand_in_d2_basis(&p, n) {
                        Ok(c) => {
                            let ctx = p.ctx();
                            let top = (ctx.gamma(n as i64 + 2) * ctx.gamma(n as i64 + 1)).recip();
                            let mut off: Vec<S> = c[..n - 4].to_vec();
                            off.push(c[n].clone() - top);
                            single("-", Residual::of(&[&XPoly::from_coeffs(off)]));
                        }
                        Err(AwError::InvariantViolation(_)) => single(
                            "-",
                            Residual {
                                zero: false,
                                size: f64::INFINITY,
                            },
                        ),
                        Err(e) => return Err(e.into()),
                    },
                    Check::Band => {
                        let family = aw_family(&p, n + 2)?;
                        let prof = band_profile(p.ctx(), &family, &pi, n)?;
                        let band = structure_coefficients(&p, n)?.band;
                        let mut off: Vec<S> = prof[..n - 2].to_vec();
                        off.extend(prof[n - 2..].iter().zip(band).map(|(x, y)| x.clone() - y));
                        single("-", Residual::of(&[&XPoly::from_coeffs(off)]));
                    }
                }
            }
        }
        report.verdict = Verdict::from_passes(all);
        Ok(report)
    }
}

const LIMIT_SCALES: [i64; 3] = [100, 1000, 10000];

fn limits<S: Scalar>(cfg: &RunConfig) -> Result<Report, CliError> {
    let kinds: Vec<LimitFamily> = match cfg.check.as_deref() {
        Some(name) => vec![name.parse()?],
        None => LimitFamily::ALL.to_vec(),
    };
    let needed = kinds.iter().map(|k| k.survivors()).max().unwrap_or(0);
    let names = ["a", "b", "c", "d"];
    if let Some(i) = (needed..4).find(|&i| cfg.params[i].is_some()) {
        return Err(CliError::usage(format!(
            "--{} diverges in the selected limit and cannot be set",
            names[i]
        )));
    }
    if let Some(i) = (0..needed).find(|&i| cfg.params[i].is_none()) {
        return Err(CliError::usage(format!("limits need --{}", names[i])));
    }
    let range = cfg.n.unwrap_or(NRange { lo: 3, hi: 3 });
    let job = LimitsJob {
        kinds,
        needed,
        range,
    };
    // the scaled series carries powers of the large parameter on top of the
    // usual cancellation
    let n = range.hi as f64;
    let loss = n * n * log2_q(cfg)? + 4.0 * n * 17.0 + 64.0;
    widened::<S, _>(&job, cfg, loss)
}

struct LimitsJob {
    kinds: Vec<LimitFamily>,
    needed: usize,
    range: NRange,
}

impl Job for LimitsJob {
    type Out = Report;
    fn run<S: Scalar>(&self, cfg: &RunConfig) -> Result<Report, CliError> {
        let survivors: Vec<S> = (0..self.needed)
            .map(|i| S::from_rational(cfg.params[i].as_ref().expect("checked above")))
            .collect();
        let ctx = context::<S>(cfg)?;
        let range = self.range;
        let mut report = Report::new(&["family", "n", "large", "deviation", "target_deviation"]);
        let mut all = true;
        for &kind in &self.kinds {
            let surv = &survivors[..kind.survivors()];
            for n in range.iter() {
                let target = match kind {
                    LimitFamily::ContinuousDualQHahn => {
                        Some(cdqhahn_limit_target(&surv[0], &surv[1], &surv[2], &ctx, n)?)
                    }
                    _ => None,
                };
                let mut last = f64::INFINITY;
                for large in LIMIT_SCALES {
                    let est = limit_family_eval(kind, surv, &ctx, n, &S::from_i64(large))?;
                    let dev = est.deviation;
                    all &= dev < last || dev == 0.0;
                    last = dev;
                    let to_target = target
                        .as_ref()
                        .map(|t| format_sig((&est.estimate - t).max_abs_coeff(), DIGITS))
                        .unwrap_or_default();
                    report.push(vec![
                        kind.as_str().into(),
                        n.to_string(),
                        large.to_string(),
                        format_sig(dev, DIGITS),
                        to_target,
                    ]);
                }
            }
        }
        report.verdict = Verdict::from_passes(all);
        Ok(report)
    }
}
