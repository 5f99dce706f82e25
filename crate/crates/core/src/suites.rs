//! Oracle comparison suites behind `verify`: each check compares enclosures
//! against closed forms and reports the measured margin.

use std::collections::BTreeSet;

use num::{BigRational, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse, Expr};
use crate::extender::{extend, extend_from, step_lower_bound_check, ExtensionState};
use crate::gadgets::{
    cell_stream, cell_witness, closed_solution_s, decode_llpo, decode_threshold, gadget_solution, sample_point,
    BitStream, DecodeConfig, GadgetRef, Sign,
};
use crate::instance::{IvpInstance, OpenSet};
use crate::interval::{IBox, Interval, Precision};
use crate::rhs::Rhs;
use crate::solver::{enclose_all, solve_unique, SolveConfig, SolveError};

pub const SUITES: [&str; 5] = ["closed-forms", "funnel", "decode", "extension", "interval"];

pub const REPORT_FORMAT: &str = "ivp-funnel/verify-report";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Smallest slack observed; negative on failure. `None` for checks
    /// without a numeric margin.
    pub margin: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub format: String,
    pub version: String,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("unknown suite {0:?}; expected one of closed-forms, funnel, decode, extension, interval")]
pub struct UnknownSuite(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Random samples drawn by the interval suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 100_000,
            seed: 0x5eed,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, UnknownSuite> {
    let checks = match name {
        "closed-forms" => closed_forms(),
        "funnel" => funnel(),
        "decode" => decode(),
        "extension" => extension(),
        "interval" => interval(opts),
        _ => return Err(UnknownSuite(name.into())),
    };
    Ok(SuiteReport {
        format: REPORT_FORMAT.into(),
        version: crate::io::VERSION.into(),
        suite: name.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn check(name: impl Into<String>, passed: bool, margin: Option<f64>, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        margin,
        detail: detail.into(),
    }
}

fn failed(name: &str, err: impl std::fmt::Display) -> Check {
    check(name, false, None, err.to_string())
}

/// Slack of `oracle` inside `iv`; libm-based oracles are granted `2^-40`
/// relative tolerance, which the pass test applies.
fn slack(iv: Interval, oracle: f64) -> (f64, bool) {
    let tol = 2f64.powi(-40) * (1.0 + oracle.abs());
    let s = (oracle - iv.lo()).min(iv.hi() - oracle);
    (s, s >= -tol)
}

fn expr_instance(text: &str, x0: f64, y0: &[f64]) -> IvpInstance {
    let rhs = Rhs::Expr(parse(text, y0.len()).expect("suite expressions parse"));
    IvpInstance::new(rhs, OpenSet::auto_growing(y0.len()), x0, y0.to_vec()).expect("suite instances are valid")
}

fn single_gadget(p: &BitStream) -> IvpInstance {
    let rhs = Rhs::Gadget(GadgetRef::Single { stream: p.clone() });
    IvpInstance::new(rhs, OpenSet::auto_growing(1), 0.0, vec![0.0]).expect("origin is interior")
}

fn closed_forms() -> Vec<Check> {
    type Oracle = fn(f64) -> Vec<f64>;
    let cases: [(&str, &str, f64, &[f64], Oracle); 6] = [
        ("exponential", "y", 0.0, &[1.0], |x| vec![x.exp()]),
        ("decay", "-y", 0.0, &[1.0], |x| vec![(-x).exp()]),
        ("quadrature", "2*x", 0.0, &[0.5], |x| vec![0.5 + x * x]),
        ("zero", "0", 0.0, &[0.25], |_| vec![0.25]),
        ("rotation", "y2; -y1", 0.0, &[1.0, 0.0], |x| vec![x.cos(), -x.sin()]),
        ("blow-up", "y*y", 0.0, &[1.0], |x| vec![1.0 / (1.0 - x)]),
    ];
    let cfg = SolveConfig {
        depth: 10,
        ..SolveConfig::default()
    };
    cases
        .iter()
        .map(|(name, text, x0, y0, oracle)| {
            let inst = expr_instance(text, *x0, y0);
            let tube = match solve_unique(&inst, *x0, y0, &cfg) {
                Ok(t) => t,
                Err(e) => return failed(name, e),
            };
            let mut worst = f64::INFINITY;
            let mut ok = true;
            for (&x, n) in tube.xs().iter().zip(tube.nodes()) {
                for (c, o) in n.iter().zip(oracle(x)) {
                    let (s, pass) = slack(*c, o);
                    worst = worst.min(s);
                    ok &= pass;
                }
            }
            let width_ok = tube.max_width() <= 1e-2;
            check(
                *name,
                ok && width_ok,
                Some(worst),
                format!(
                    "{} nodes on [{}, {}], max width {:e}",
                    tube.xs().len(),
                    tube.interval().0,
                    tube.interval().1,
                    tube.max_width()
                ),
            )
        })
        .collect()
}

/// Every `(sign, c)` branch sample at every node is inside some tube.
fn funnel_union_check(name: &str, nodes: &[Vec<(f64, Interval)>], oracle: impl Fn(Sign, f64, f64) -> Option<f64>) -> Check {
    let cs = [0.0, 0.25, 0.5, 0.75, 1.0];
    let xs: BTreeSet<u64> = nodes.iter().flatten().map(|(x, _)| x.to_bits()).collect();
    let mut worst = f64::INFINITY;
    let mut ok = true;
    let mut samples = 0usize;
    for xb in xs {
        let x = f64::from_bits(xb);
        for sign in [Sign::Plus, Sign::Minus] {
            for c in cs {
                let Some(o) = oracle(sign, c, x) else { continue };
                samples += 1;
                let best = nodes
                    .iter()
                    .flat_map(|t| t.iter().filter(|(nx, _)| *nx == x))
                    .map(|(_, iv)| slack(*iv, o))
                    .max_by(|p, q| p.0.total_cmp(&q.0));
                match best {
                    Some((s, pass)) => {
                        worst = worst.min(s);
                        ok &= pass;
                    }
                    None => ok = false,
                }
            }
        }
    }
    check(name, ok, Some(worst), format!("{samples} branch samples, {} tubes", nodes.len()))
}

fn tube_nodes(t: &crate::tube::Tube) -> Vec<(f64, Interval)> {
    t.xs().iter().zip(t.nodes()).map(|(&x, n)| (x, n[0])).collect()
}

fn funnel() -> Vec<Check> {
    let mut out = Vec::new();
    let p = BitStream::all_twos();
    let inst = single_gadget(&p);
    // s-phase of g_p: y = 0 up to x = 1, then every branch leaving at 1 + c
    let oracle = |sign: Sign, c: f64, x: f64| -> Option<f64> {
        if (0.0..=1.0).contains(&x) {
            Some(0.0)
        } else if (1.0..=2.0).contains(&x) {
            closed_solution_s(0.0, sign, Some(c), x - 1.0).ok()
        } else {
            None
        }
    };
    for budget in [8usize, 16, 64] {
        let cfg = SolveConfig {
            max_bisections: budget,
            ..SolveConfig::default()
        };
        let name = format!("gadget all-2 s-phase, {budget} bisections");
        match enclose_all(&inst, 1.0, &[0.0], &cfg) {
            Ok(r) => {
                let nodes: Vec<_> = r.tubes().map(|t| tube_nodes(&t.tube)).collect();
                out.push(funnel_union_check(&name, &nodes, oracle));
            }
            Err(e) => out.push(failed(&name, e)),
        }
        let name = format!("gadget all-2 s-phase extended, {budget} bisections");
        match extend_from(&inst, 1.0, &IBox::point(&[0.0]), 12, &cfg, |_| false, |_| {}) {
            Ok(st) => {
                let nodes: Vec<_> = st.segments.iter().map(|s| tube_nodes(&s.tube)).collect();
                let mut c = funnel_union_check(&name, &nodes, oracle);
                c.detail = format!("{}, reached [{}, {}]", c.detail, st.a, st.b);
                out.push(c);
            }
            Err(e) => out.push(failed(&name, e)),
        }
    }
    let amp = expr_instance("9*x*(1-x)*scbrt(y)", 0.0, &[0.0]);
    let cfg = SolveConfig {
        max_bisections: 16,
        ..SolveConfig::default()
    };
    match enclose_all(&amp, 0.0, &[0.0], &cfg) {
        Ok(r) => {
            let nodes: Vec<_> = r.tubes().map(|t| tube_nodes(&t.tube)).collect();
            out.push(funnel_union_check("amplifier funnel at the origin", &nodes, |sign, c, x| {
                closed_solution_s(0.0, sign, Some(c), x).ok()
            }));
        }
        Err(e) => out.push(failed("amplifier funnel at the origin", e)),
    }
    let unique = solve_unique(&amp, 0.0, &[0.0], &cfg);
    out.push(check(
        "amplifier funnel is not certified unique",
        matches!(unique, Err(SolveError::NotProvenUnique { .. })),
        None,
        match unique {
            Ok(_) => "uniqueness was claimed".to_string(),
            Err(e) => e.to_string(),
        },
    ));
    out
}

/// Extends the single gadget from the origin until `x = 2` is covered.
fn gadget_at_two(p: &BitStream) -> Option<(ExtensionState, Vec<Interval>)> {
    let cfg = SolveConfig {
        depth: 10,
        refine_rounds: 60,
        max_bisections: 0,
        ..SolveConfig::default()
    };
    let inst = single_gadget(p);
    let st = extend_from(&inst, 0.0, &IBox::point(&[0.0]), 40, &cfg, |s| s.b >= 2.0, |_| {}).ok()?;
    let vals: Vec<Interval> = st
        .segments
        .iter()
        .filter(|s| s.lo <= 2.0 && 2.0 <= s.hi)
        .filter_map(|s| s.tube.evaluate(2.0).ok().map(|v| v[0]))
        .collect();
    (!vals.is_empty()).then_some((st, vals))
}

fn decode() -> Vec<Check> {
    let mut out = Vec::new();
    for prefix in [&[1u64][..], &[0], &[2, 2, 1], &[2, 2, 2, 2, 0], &[2, 2, 2, 2, 2, 2, 1]] {
        let p = BitStream::new(prefix).unwrap();
        let name = format!("sign forcing {prefix:?}");
        let Some((_, vals)) = gadget_at_two(&p) else {
            out.push(failed(&name, "extension did not reach x = 2"));
            continue;
        };
        let exact = gadget_solution(&p, None, 2.0).unwrap();
        // a 1 in p forces y(2) > 1 > -1, a 0 forces y(2) < -1 < 1
        let forced_one = p.forced().unwrap().0 == 1;
        let mut worst = f64::INFINITY;
        let mut ok = true;
        for v in &vals {
            let m = if forced_one { v.lo() + 1.0 } else { 1.0 - v.hi() };
            worst = worst.min(m);
            ok &= m > 0.0 && slack(*v, exact).1;
        }
        out.push(check(name, ok, Some(worst), format!("y(2) = {exact:.6}, {} tube(s)", vals.len())));
    }

    let streams = [BitStream::new(&[2, 2, 1]).unwrap(), BitStream::new(&[2, 0]).unwrap()];
    let inst = crate::gadgets::parallel_instance(&streams, 24);
    let cfg = DecodeConfig::default().solve;
    for m in 0..3u32 {
        let name = format!("scaling identity, cell {m}");
        let p = &streams[cell_stream(m)];
        let (Some((w, _)), Some((_, single))) = (cell_witness(&inst, m, &cfg, 8), gadget_at_two(p)) else {
            out.push(failed(&name, "no enclosure"));
            continue;
        };
        let thr = decode_threshold(m);
        let s = single.iter().fold(single[0], |a, v| a.intersect(*v).unwrap_or(a));
        let gap = (w.value.mid() - thr * s.mid()).abs();
        let allowed = w.value.width() + thr * s.width();
        out.push(check(
            name,
            gap <= allowed,
            Some(allowed - gap),
            format!("y({}) = {}, 2^-{} * y^(2) = {}", sample_point(m), w.value, 2 * (m + 3), s * thr),
        ));
    }

    let lists: [&[&[u64]]; 3] = [&[&[1], &[2, 0]], &[&[2, 2, 0], &[2, 1], &[0]], &[&[2, 2, 2, 1], &[], &[2, 0]]];
    for list in lists {
        let streams: Vec<BitStream> = list.iter().map(|s| BitStream::new(s).unwrap()).collect();
        let idx: Vec<usize> = (0..streams.len()).collect();
        let name = format!("decoder round trip {list:?}");
        match decode_llpo(&streams, 24, &idx, &DecodeConfig::default()) {
            Ok(report) => {
                let mut ok = report.unavailable.is_empty();
                let mut notes = Vec::new();
                for (&i, r) in &report.bits {
                    let p = &streams[i];
                    ok &= p.llpo_allows(r.bit) || !r.certified;
                    if p.forced().is_some() {
                        ok &= r.certified;
                    }
                    notes.push(format!("q({i}) = {}{}", r.bit, if r.certified { "" } else { "?" }));
                }
                out.push(check(name, ok, None, notes.join(", ")));
            }
            Err(e) => out.push(failed(&name, e)),
        }
    }
    out
}

fn extension() -> Vec<Check> {
    let mut out = Vec::new();
    let cfg = SolveConfig::default();

    let inst = expr_instance("y*y", 0.0, &[1.0]);
    match extend(&inst, 8, &cfg, |_| {}) {
        Ok(st) => {
            let bs: Vec<f64> = st.rounds.iter().map(|r| r.b).collect();
            let increasing = bs.windows(2).all(|w| w[0] < w[1]);
            let below = bs.iter().all(|&b| b < 1.0);
            out.push(check(
                "blow-up right ends stay below 1",
                increasing && below && bs.len() == 8,
                Some(1.0 - bs.last().copied().unwrap_or(1.0)),
                format!("b = {bs:?}"),
            ));
            let mut worst = f64::INFINITY;
            let mut ok = true;
            let nodes = st.glued_nodes();
            for (x, n) in &nodes {
                let (s, pass) = slack(n[0], 1.0 / (1.0 - x));
                worst = worst.min(s);
                ok &= pass;
            }
            out.push(check("blow-up glued tube contains 1/(1-x)", ok, Some(worst), format!("{} nodes", nodes.len())));
        }
        Err(e) => out.push(failed("blow-up extension", e)),
    }

    let inst = expr_instance("1", 0.0, &[0.0]);
    match extend(&inst, 8, &cfg, |_| {}) {
        Ok(st) => match step_lower_bound_check(&st) {
            Ok(m) => {
                let least = m.iter().map(|m| m.margin).fold(f64::INFINITY, f64::min);
                out.push(check(
                    "unit slope step lower bound",
                    least > 0.0 && st.rounds.len() == 8,
                    Some(least),
                    format!("{} steps over {} rounds", m.len(), st.rounds.len()),
                ));
            }
            Err(v) => out.push(failed("unit slope step lower bound", format!("violations in rounds {:?}", v.rounds))),
        },
        Err(e) => out.push(failed("unit slope extension", e)),
    }

    let inst = expr_instance("0", 0.0, &[0.5]);
    match extend(&inst, 3, &cfg, |_| {}) {
        Ok(st) => {
            let widening = st.rounds.windows(2).all(|w| w[1].a < w[0].a && w[1].b > w[0].b);
            let constant = st.glued_nodes().iter().all(|(_, n)| n[0].contains(0.5));
            out.push(check(
                "zero slope widening rounds",
                widening && constant && st.rounds.len() == 3,
                None,
                format!("final [{}, {}]", st.a, st.b),
            ));
        }
        Err(e) => out.push(failed("zero slope extension", e)),
    }
    out
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn within(iv: Interval, v: &BigRational) -> bool {
    rat(iv.lo()) <= *v && *v <= rat(iv.hi())
}

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let scale = [1e-3, 1.0, 8.0, 1e3][rng.random_range(0..4)];
    let lo = rng.random_range(-1.0..1.0) * scale;
    let w = match rng.random_range(0..4) {
        0 => 0.0,
        1 => rng.random_range(0.0..1e-9) * scale,
        _ => rng.random_range(0.0..1.0) * scale,
    };
    Interval::new(lo, lo + w)
}

fn point_in(rng: &mut ChaCha8Rng, iv: Interval) -> f64 {
    match rng.random_range(0..6) {
        0 => iv.lo(),
        1 => iv.hi(),
        _ => (iv.lo() + rng.random_range(0.0..=1.0) * iv.width()).clamp(iv.lo(), iv.hi()),
    }
}

fn sub_interval(rng: &mut ChaCha8Rng, iv: Interval) -> Interval {
    let a = point_in(rng, iv);
    let b = point_in(rng, iv);
    Interval::new(a.min(b), a.max(b))
}

fn cube(v: &BigRational) -> BigRational {
    v * v * v
}

/// Exact value of a binary or unary operation; `None` for the cube root.
fn exact_op(op: usize, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    Some(match op {
        0 => a + b,
        1 => a - b,
        2 => a * b,
        3 => -a,
        4 => a.abs(),
        5 => a.min(b).clone(),
        6 => a.max(b).clone(),
        7 => a * a,
        8 => cube(a),
        _ => return None,
    })
}

fn interval_op(op: usize, a: Interval, b: Interval) -> Interval {
    match op {
        0 => a + b,
        1 => a - b,
        2 => a * b,
        3 => -a,
        4 => a.abs(),
        5 => a.min(b),
        6 => a.max(b),
        7 => a.sqr(),
        8 => a.cube(),
        _ => a.scbrt(),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return match rng.random_range(0..4) {
            0 => Expr::X,
            1 => Expr::Y(0),
            2 => Expr::Y(1),
            _ => Expr::constant(rng.random_range(-16i32..=16) as f64 / 8.0),
        };
    }
    let op = rng.random_range(0..8);
    let a = Box::new(random_expr(rng, depth - 1));
    let b = Box::new(random_expr(rng, depth - 1));
    match op {
        0 => Expr::Add(a, b),
        1 => Expr::Sub(a, b),
        2 => Expr::Mul(a, b),
        3 => Expr::Neg(a),
        4 => Expr::Abs(a),
        5 => Expr::Min(a, b),
        6 => Expr::Max(a, b),
        _ => Expr::Scbrt(a),
    }
}

fn exact_expr(e: &Expr, args: &[BigRational]) -> Option<BigRational> {
    Some(match e {
        Expr::Const { value, .. } if value.is_point() => rat(value.lo()),
        Expr::Const { .. } | Expr::Scbrt(_) => return None,
        Expr::X => args[0].clone(),
        Expr::Y(j) => args[j + 1].clone(),
        Expr::Add(a, b) => exact_expr(a, args)? + exact_expr(b, args)?,
        Expr::Sub(a, b) => exact_expr(a, args)? - exact_expr(b, args)?,
        Expr::Mul(a, b) => exact_expr(a, args)? * exact_expr(b, args)?,
        Expr::Neg(a) => -exact_expr(a, args)?,
        Expr::Abs(a) => exact_expr(a, args)?.abs(),
        Expr::Min(a, b) => exact_expr(a, args)?.min(exact_expr(b, args)?),
        Expr::Max(a, b) => exact_expr(a, args)?.max(exact_expr(b, args)?),
    })
}

/// Randomized soundness of the interval operations and of expression
/// evaluation against exact rational arithmetic, plus isotonicity.
pub fn interval_samples(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prec = Precision::default();
    let op_samples = samples / 2;
    let (mut op_contain, mut op_iso, mut op_n) = (0usize, 0usize, 0usize);
    for _ in 0..op_samples {
        let op = rng.random_range(0..10);
        let (a, b) = (random_interval(&mut rng), random_interval(&mut rng));
        let r = interval_op(op, a, b);
        let (pa, pb) = (point_in(&mut rng, a), point_in(&mut rng, b));
        let (qa, qb) = (rat(pa), rat(pb));
        let contained = match exact_op(op, &qa, &qb) {
            Some(v) => within(r, &v),
            // r ⊇ cbrt(pa) iff lo^3 <= pa <= hi^3
            None => cube(&rat(r.lo())) <= qa && qa <= cube(&rat(r.hi())),
        };
        op_contain += usize::from(!contained);
        let (sa, sb) = (sub_interval(&mut rng, a), sub_interval(&mut rng, b));
        op_iso += usize::from(!interval_op(op, sa, sb).subset_of(r));
        op_n += 1;
    }

    let (mut ex_contain, mut ex_iso, mut ex_exact) = (0usize, 0usize, 0usize);
    let ex_samples = samples - op_samples;
    for _ in 0..ex_samples {
        let e = random_expr(&mut rng, 4);
        let args: Vec<Interval> = (0..3).map(|_| random_interval(&mut rng)).collect();
        let r = e.eval(&args, prec);
        let sub: Vec<Interval> = args.iter().map(|a| sub_interval(&mut rng, *a)).collect();
        ex_iso += usize::from(!e.eval(&sub, prec).subset_of(r));
        let pts: Vec<f64> = args.iter().map(|a| point_in(&mut rng, *a)).collect();
        let point_iv: Vec<Interval> = pts.iter().map(|&p| Interval::point(p)).collect();
        let pr = e.eval(&point_iv, prec);
        let exact: Vec<BigRational> = pts.iter().map(|&p| rat(p)).collect();
        let ok = match exact_expr(&e, &exact) {
            Some(v) => {
                ex_exact += 1;
                within(r, &v) && within(pr, &v)
            }
            None => pr.subset_of(r),
        };
        ex_contain += usize::from(!ok);
    }

    let mut cbrt_bad = 0usize;
    let cbrt_samples = (samples / 10).max(1);
    for _ in 0..cbrt_samples {
        let x = match rng.random_range(0..3) {
            0 => rng.random_range(-1.0..1.0),
            1 => rng.random_range(-1e6..1e6),
            _ => (rng.random_range(-64i64..=64) as f64).powi(3),
        };
        let r = Interval::point(x).scbrt();
        let q = rat(x);
        // each endpoint brackets x and lies within one ulp of the tightest bracket
        let tight_lo = cube(&rat(r.lo())) <= q && cube(&rat(r.lo().next_up().next_up())) > q;
        let tight_hi = cube(&rat(r.hi())) >= q && cube(&rat(r.hi().next_down().next_down())) < q;
        cbrt_bad += usize::from(!(tight_lo && tight_hi));
    }

    vec![
        check(
            "operation containment",
            op_contain == 0,
            None,
            format!("{op_contain} failures in {op_n} samples"),
        ),
        check("operation isotonicity", op_iso == 0, None, format!("{op_iso} failures in {op_n} samples")),
        check(
            "expression containment",
            ex_contain == 0,
            None,
            format!("{ex_contain} failures in {ex_samples} samples ({ex_exact} against exact rationals)"),
        ),
        check(
            "expression isotonicity",
            ex_iso == 0,
            None,
            format!("{ex_iso} failures in {ex_samples} samples"),
        ),
        check(
            "cube root brackets within one ulp",
            cbrt_bad == 0,
            None,
            format!("{cbrt_bad} failures in {cbrt_samples} samples"),
        ),
    ]
}

fn interval(opts: &SuiteOptions) -> Vec<Check> {
    interval_samples(opts.samples, opts.seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn small_interval_suite_passes() {
        let r = run_suite(
            "interval",
            &SuiteOptions {
                samples: 2000,
                seed: 7,
            },
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
    }
}
