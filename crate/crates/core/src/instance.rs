//! IVP instances over ball-union domains and local box selection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::round::{add_down, add_up, coarsen_down, coarsen_up, div_down, div_up, mul_down, pow2, sub_down, sub_up};
use crate::interval::{norm_max, IBox, Interval, Precision};
use crate::rhs::Rhs;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("ball {index}: {reason}")]
    BadBall { index: usize, reason: String },
    #[error("the domain needs at least one ball")]
    EmptyDomain,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("initial point is not verifiably inside any listed ball")]
    InitialPointOutside,
    #[error("no ball verifies a neighbourhood of ({x}, {y:?}) within k <= {max_k}")]
    NotInDomain { x: f64, y: Vec<f64>, max_k: u32 },
}

/// Open max-norm ball `B(center, radius)` in `R^{n+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    /// Upper bound of `||center - p||_inf`.
    fn dist_up(&self, p: &[f64]) -> f64 {
        self.center
            .iter()
            .zip(p)
            .map(|(&c, &q)| sub_up(c, q).max(sub_up(q, c)))
            .fold(0.0, f64::max)
    }

    /// Verifies `||center - p|| < radius - delta` in outward-rounded arithmetic.
    pub fn contains_with_margin(&self, p: &[f64], delta: f64) -> bool {
        self.dist_up(p) < sub_down(self.radius, delta)
    }
}

/// The open set `U` as a union of balls, in sweep order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpenSet {
    balls: Vec<Ball>,
}

impl OpenSet {
    pub fn new(balls: Vec<Ball>, dim: usize) -> Result<OpenSet, InstanceError> {
        if balls.is_empty() {
            return Err(InstanceError::EmptyDomain);
        }
        for (index, b) in balls.iter().enumerate() {
            if !(b.radius > 0.0 && b.radius.is_finite()) {
                return Err(InstanceError::BadBall {
                    index,
                    reason: format!("radius {} is not positive", b.radius),
                });
            }
            if b.center.len() != dim + 1 {
                return Err(InstanceError::BadBall {
                    index,
                    reason: format!("center has {} coordinates, expected {}", b.center.len(), dim + 1),
                });
            }
        }
        Ok(OpenSet { balls })
    }

    /// `B(0, 2^m)` for `m = 0..=31`, exhausting `R^{n+1}`.
    pub fn auto_growing(dim: usize) -> OpenSet {
        OpenSet {
            balls: (0..=31)
                .map(|m| Ball {
                    center: vec![0.0; dim + 1],
                    radius: pow2(m),
                })
                .collect(),
        }
    }

    /// The strip `(-1, 1) x R`, truncated: `levels` balls `B((0, 0), 1 - 2^{-(j+1)})`
    /// first, so points near the x axis get large balls early in the sweep,
    /// then balls of radius `1 - 2^{-levels}` centred at heights `±1, ..., ±levels`.
    pub fn strip(levels: u32) -> OpenSet {
        let outer = 1.0 - pow2(-(levels as i32));
        let central = (0..levels).map(|j| Ball {
            center: vec![0.0, 0.0],
            radius: 1.0 - pow2(-(j as i32) - 1),
        });
        let shifted = (1..=levels).flat_map(|h| {
            [h as f64, -(h as f64)].map(|y| Ball {
                center: vec![0.0, y],
                radius: outer,
            })
        });
        OpenSet {
            balls: central.chain(shifted).collect(),
        }
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn dim(&self) -> usize {
        self.balls[0].center.len() - 1
    }
}

/// The tuple `(f, U, x0, y0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IvpInstance {
    pub rhs: Rhs,
    pub domain: OpenSet,
    pub x0: f64,
    pub y0: Vec<f64>,
}

impl IvpInstance {
    pub fn new(rhs: Rhs, domain: OpenSet, x0: f64, y0: Vec<f64>) -> Result<IvpInstance, InstanceError> {
        let n = rhs.dim();
        if y0.len() != n {
            return Err(InstanceError::Dimension(format!("y0 has {} entries, rhs has dimension {n}", y0.len())));
        }
        if domain.dim() != n {
            return Err(InstanceError::Dimension(format!(
                "domain balls live in R^{}, expected R^{}",
                domain.dim() + 1,
                n + 1
            )));
        }
        let p = point(x0, &y0);
        if !domain.balls.iter().any(|b| b.contains_with_margin(&p, 0.0)) {
            return Err(InstanceError::InitialPointOutside);
        }
        Ok(IvpInstance { rhs, domain, x0, y0 })
    }

    pub fn dim(&self) -> usize {
        self.rhs.dim()
    }
}

fn point(x: f64, y: &[f64]) -> Vec<f64> {
    let mut p = Vec::with_capacity(y.len() + 1);
    p.push(x);
    p.extend_from_slice(y);
    p
}

/// Knobs for [`select_local_box`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectConfig {
    /// First `k` of the sweep; `delta <= 2^{-min_k}`.
    pub min_k: u32,
    /// Last `k` tried before giving up with `NotInDomain`.
    pub max_k: u32,
    /// Box evaluations allowed in [`compute_bound_m`].
    pub bound_budget: usize,
    pub precision: Precision,
}

impl Default for SelectConfig {
    fn default() -> Self {
        SelectConfig {
            min_k: 0,
            max_k: 60,
            bound_budget: 4096,
            precision: Precision::default(),
        }
    }
}

/// The local problem: `K`, the bound `M` and the interval `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalBox {
    pub m_sel: usize,
    pub k_sel: u32,
    pub delta: f64,
    /// Centre `(x, y)` of `K`.
    pub x: f64,
    pub y: Vec<f64>,
    /// `K = [x - delta, x + delta] x closed max-norm delta-ball around y`.
    pub k_box: IBox,
    /// `M >= max_K ||f|| + 1`.
    pub m_bound: f64,
    pub a: f64,
    pub b: f64,
}

impl LocalBox {
    /// The y-part of `K`.
    pub fn y_ball(&self) -> IBox {
        IBox::new(self.k_box.components()[1..].to_vec())
    }

    /// Checks the interval placement inequalities as strict dyadic comparisons:
    /// `x - delta/M <= a < x < b <= x + delta/M` and both half-steps exceed
    /// `delta / (2M)`.
    pub fn placement_holds(&self) -> bool {
        let reach = div_down(self.delta, self.m_bound);
        let half = div_up(self.delta, 2.0 * self.m_bound);
        self.m_bound >= 1.0
            && sub_up(self.x, self.a) <= reach
            && sub_up(self.b, self.x) <= reach
            && self.a < self.x
            && self.x < self.b
            && sub_down(self.x, self.a) > half
            && sub_down(self.b, self.x) > half
    }
}

/// Finds the first `<m, k>` in the sweep `k = min_k, min_k+1, ...`, `m <= k`,
/// with `||c_m - (x, y)|| < r_m - 2^{-k}`, and builds the local box there.
pub fn select_local_box(inst: &IvpInstance, x: f64, y: &[f64], cfg: &SelectConfig) -> Result<LocalBox, InstanceError> {
    let p = point(x, y);
    let balls = inst.domain.balls();
    for k in cfg.min_k..=cfg.max_k {
        let delta = pow2(-(k as i32));
        for (m, ball) in balls.iter().enumerate().take(k as usize + 1) {
            if ball.contains_with_margin(&p, delta) {
                return Ok(build_local_box(inst, m, k, x, y, cfg));
            }
        }
    }
    Err(InstanceError::NotInDomain {
        x,
        y: y.to_vec(),
        max_k: cfg.max_k,
    })
}

fn build_local_box(inst: &IvpInstance, m_sel: usize, k_sel: u32, x: f64, y: &[f64], cfg: &SelectConfig) -> LocalBox {
    let delta = pow2(-(k_sel as i32));
    let k_box = IBox::new(point(x, y).iter().map(|&c| Interval::centered(c, delta)).collect());
    let m_bound = compute_bound_m(&inst.rhs, &k_box, cfg.precision, cfg.bound_budget);
    // q ~ (3/4) delta / M, coarsened so that x +- q are exact when x allows
    // it and the step still exceeds delta / 2M; otherwise q keeps 8 bits and
    // the endpoints are rounded outward
    let q0 = coarsen_down(mul_down(0.75, div_down(delta, m_bound)), 8);
    let exact = |q: f64| sub_down(x, q) == sub_up(x, q) && add_down(x, q) == add_up(x, q);
    let make = |q: f64| LocalBox {
        m_sel,
        k_sel,
        delta,
        x,
        y: y.to_vec(),
        k_box: k_box.clone(),
        m_bound,
        a: sub_down(x, q),
        b: add_up(x, q),
    };
    let lb = (1..=8)
        .rev()
        .map(|bits| coarsen_down(q0, bits))
        .filter(|&q| exact(q))
        .map(make)
        .find(LocalBox::placement_holds)
        .unwrap_or_else(|| make(q0));
    assert!(lb.placement_holds(), "local box placement violated: {lb:?}");
    lb
}

#[derive(Debug)]
struct Cand {
    upper: f64,
    seq: usize,
    bx: IBox,
}

impl PartialEq for Cand {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Cand {}
impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cand {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .total_cmp(&other.upper)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Sound upper bound of `max_K ||f||_inf + 1`.
///
/// Best-first bisection of `K` on the largest upper bound, until that bound
/// is within `2^{-prec/2}` (relative) of the best sampled value or the
/// evaluation budget runs out.
pub fn compute_bound_m(rhs: &Rhs, k_box: &IBox, prec: Precision, budget: usize) -> f64 {
    let norm_upper = |b: &IBox| norm_max(&rhs.eval_joint(b, prec)).hi();
    let norm_at_mid = |b: &IBox| norm_max(&rhs.eval_joint(&IBox::point(&b.mid()), prec)).lo();
    let tol = prec.half_eps();
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    let mut best_lower = norm_at_mid(k_box);
    heap.push(Cand {
        upper: norm_upper(k_box),
        seq,
        bx: k_box.clone(),
    });
    let mut evals = 2;
    loop {
        let top = heap.peek().expect("heap never empties");
        let upper = top.upper;
        if upper - best_lower <= tol * upper.max(1.0) || evals + 4 > budget {
            break;
        }
        let cand = heap.pop().unwrap();
        let d = cand.bx.widest();
        if cand.bx[d].width() == 0.0 {
            // a point box cannot be refined further
            heap.push(cand);
            break;
        }
        let (l, r) = cand.bx[d].split();
        for half in [l, r] {
            let mut child = cand.bx.clone();
            child[d] = half;
            best_lower = best_lower.max(norm_at_mid(&child));
            seq += 1;
            heap.push(Cand {
                upper: norm_upper(&child).min(cand.upper),
                seq,
                bx: child,
            });
            evals += 2;
        }
    }
    let upper = heap.peek().unwrap().upper;
    coarsen_up(add_up(upper, 1.0), prec.bits())
}
