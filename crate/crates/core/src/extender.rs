//! Extension of the local enclosure toward the maximal interval of existence.
//!
//! Round 0 solves at the initial point. Every later round restarts at both
//! current endpoints from the interval enclosure of the solution values
//! there, glues the new segments on, and moves the endpoints outward. A side
//! whose restart leaves the domain freezes for good.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{InstanceError, IvpInstance};
use crate::interval::round::{div_up, exact_decimal, mul_down, sub_down};
use crate::interval::IBox;
use crate::solver::{enclose_from, SolveConfig, SolveError, SolveResult};
use crate::tube::Tube;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Center,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", content = "reason", rename_all = "snake_case")]
pub enum SideStatus {
    Growing,
    /// The restart point has no verified neighbourhood in the domain.
    BoundaryReached(String),
    /// The endpoint enclosure grew too wide to restart from.
    AnchorTooWide(String),
    /// Any other failure of the local solve.
    Failed(String),
}

impl SideStatus {
    pub fn is_growing(&self) -> bool {
        matches!(self, SideStatus::Growing)
    }

    pub fn label(&self) -> &'static str {
        match self {
            SideStatus::Growing => "growing",
            SideStatus::BoundaryReached(_) => "boundary_reached",
            SideStatus::AnchorTooWide(_) => "anchor_too_wide",
            SideStatus::Failed(_) => "failed",
        }
    }

    fn from_error(e: SolveError) -> SideStatus {
        match e {
            SolveError::NoLocalBox(InstanceError::NotInDomain { .. }) => SideStatus::BoundaryReached(e.to_string()),
            SolveError::AnchorTooWide { .. } => SideStatus::AnchorTooWide(e.to_string()),
            other => SideStatus::Failed(other.to_string()),
        }
    }
}

impl fmt::Display for SideStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideStatus::Growing => f.write_str("growing"),
            SideStatus::BoundaryReached(r) | SideStatus::AnchorTooWide(r) | SideStatus::Failed(r) => {
                write!(f, "{}: {r}", self.label())
            }
        }
    }
}

/// One local solve of the loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub side: Side,
    /// Restart abscissa.
    pub x: f64,
    pub delta: f64,
    pub m_bound: f64,
    pub k_sel: u32,
    pub m_sel: usize,
    /// Local interval of the solve.
    pub a: f64,
    pub b: f64,
    pub confirmed: usize,
    pub undecided: usize,
    pub pruned: usize,
}

/// The streamed per-round record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub a: f64,
    pub b: f64,
    pub steps: Vec<StepRecord>,
    pub left: SideStatus,
    pub right: SideStatus,
}

/// A glued piece: the cover of one local solve, responsible for `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub round: usize,
    pub side: Side,
    pub lo: f64,
    pub hi: f64,
    pub tube: Tube,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionState {
    pub x0: f64,
    pub a: f64,
    pub b: f64,
    pub left_value: IBox,
    pub right_value: IBox,
    pub left: SideStatus,
    pub right: SideStatus,
    pub rounds: Vec<RoundRecord>,
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtendError {
    #[error("initial solve failed: {0}")]
    Initial(#[from] SolveError),
    #[error("initial solve pruned every branch")]
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("step lower bound violated in rounds {rounds:?}")]
pub struct ViolationReport {
    pub rounds: Vec<usize>,
    pub margins: Vec<StepMargin>,
}

/// `b_{i+1} - b_i - δ_i/(2 M_i)` (or the left analogue), rounded down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepMargin {
    pub round: usize,
    pub side: Side,
    pub margin: f64,
}

fn step_record(side: Side, x: f64, r: &SolveResult) -> StepRecord {
    let lb = &r.local_box;
    StepRecord {
        side,
        x,
        delta: lb.delta,
        m_bound: lb.m_bound,
        k_sel: lb.k_sel,
        m_sel: lb.m_sel,
        a: lb.a,
        b: lb.b,
        confirmed: r.confirmed.len(),
        undecided: r.undecided.len(),
        pruned: r.pruned,
    }
}

enum SideStep {
    Advanced { record: StepRecord, cover: Box<Tube> },
    Frozen(SideStatus),
}

fn solve_side(inst: &IvpInstance, side: Side, x: f64, anchor: &IBox, cfg: &SolveConfig) -> SideStep {
    match enclose_from(inst, x, anchor, cfg) {
        Ok(r) => match r.cover() {
            Some(cover) => SideStep::Advanced {
                record: step_record(side, x, &r),
                cover: Box::new(cover),
            },
            None => SideStep::Frozen(SideStatus::Failed("every branch was pruned".into())),
        },
        Err(e) => SideStep::Frozen(SideStatus::from_error(e)),
    }
}

impl ExtensionState {
    /// Solves at `(x, anchor)`: round 0.
    fn start(inst: &IvpInstance, x: f64, anchor: &IBox, cfg: &SolveConfig) -> Result<ExtensionState, ExtendError> {
        let r = enclose_from(inst, x, anchor, cfg)?;
        let cover = r.cover().ok_or(ExtendError::NoSolution)?;
        let record = step_record(Side::Center, x, &r);
        let last = cover.nodes().len() - 1;
        let state = ExtensionState {
            x0: x,
            a: record.a,
            b: record.b,
            left_value: cover.node(0).clone(),
            right_value: cover.node(last).clone(),
            left: SideStatus::Growing,
            right: SideStatus::Growing,
            rounds: vec![RoundRecord {
                round: 0,
                a: record.a,
                b: record.b,
                steps: vec![record.clone()],
                left: SideStatus::Growing,
                right: SideStatus::Growing,
            }],
            segments: vec![Segment {
                round: 0,
                side: Side::Center,
                lo: record.a,
                hi: record.b,
                tube: cover,
            }],
        };
        Ok(state)
    }

    /// One more round on every growing side.
    fn advance(&mut self, inst: &IvpInstance, cfg: &SolveConfig) {
        let round = self.rounds.len();
        let (left, right) = rayon::join(
            || self.left.is_growing().then(|| solve_side(inst, Side::Left, self.a, &self.left_value, cfg)),
            || self.right.is_growing().then(|| solve_side(inst, Side::Right, self.b, &self.right_value, cfg)),
        );
        let mut steps = Vec::new();
        if let Some(step) = left {
            match step {
                SideStep::Advanced { record, cover } => {
                    self.segments.push(Segment {
                        round,
                        side: Side::Left,
                        lo: record.a,
                        hi: self.a,
                        tube: (*cover).clone(),
                    });
                    self.a = record.a;
                    self.left_value = cover.node(0).clone();
                    steps.push(record);
                }
                SideStep::Frozen(status) => self.left = status,
            }
        }
        if let Some(step) = right {
            match step {
                SideStep::Advanced { record, cover } => {
                    self.segments.push(Segment {
                        round,
                        side: Side::Right,
                        lo: self.b,
                        hi: record.b,
                        tube: (*cover).clone(),
                    });
                    self.b = record.b;
                    self.right_value = cover.node(cover.nodes().len() - 1).clone();
                    steps.push(record);
                }
                SideStep::Frozen(status) => self.right = status,
            }
        }
        self.rounds.push(RoundRecord {
            round,
            a: self.a,
            b: self.b,
            steps,
            left: self.left.clone(),
            right: self.right.clone(),
        });
    }

    pub fn is_stalled(&self) -> bool {
        !self.left.is_growing() && !self.right.is_growing()
    }

    /// Enclosure of `y(x)` for every solution: the intersection over all
    /// segments whose local interval contains `x`. `None` outside `[a, b]`.
    pub fn evaluate(&self, x: f64) -> Option<IBox> {
        if !(self.a <= x && x <= self.b) {
            return None;
        }
        let mut acc: Option<IBox> = None;
        for s in &self.segments {
            if let Ok(v) = s.tube.evaluate(x) {
                acc = Some(match acc {
                    Some(a) => a.intersect(&v).unwrap_or(a),
                    None => v,
                });
            }
        }
        acc
    }

    /// Glued node list over `[a, b]`: each segment contributes the nodes in
    /// its own piece; junction nodes are intersected.
    pub fn glued_nodes(&self) -> Vec<(f64, IBox)> {
        let mut out: Vec<(f64, IBox)> = Vec::new();
        for s in &self.segments {
            for (&x, n) in s.tube.xs().iter().zip(s.tube.nodes()) {
                if s.lo <= x && x <= s.hi {
                    out.push((x, n.clone()));
                }
            }
        }
        out.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut merged: Vec<(f64, IBox)> = Vec::with_capacity(out.len());
        for (x, n) in out {
            match merged.last_mut() {
                Some((lx, ln)) if *lx == x => *ln = ln.intersect(&n).unwrap_or(ln.clone()),
                _ => merged.push((x, n)),
            }
        }
        merged
    }

    /// CSV dump of [`glued_nodes`](Self::glued_nodes), same layout as a tube dump.
    pub fn glued_csv(&self) -> String {
        let nodes = self.glued_nodes();
        let mut out = String::from("x");
        for k in 1..=self.left_value.dim() {
            write!(out, ",lo_{k},hi_{k}").unwrap();
        }
        out.push('\n');
        for (x, n) in nodes {
            out.push_str(&exact_decimal(x));
            for c in n.iter() {
                write!(out, ",{},{}", exact_decimal(c.lo()), exact_decimal(c.hi())).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Junctions where the restart anchor is not contained in the previous
    /// segment's evaluation; empty on a consistent state.
    pub fn junction_failures(&self) -> Vec<(usize, Side)> {
        let mut bad = Vec::new();
        for (i, s) in self.segments.iter().enumerate().skip(1) {
            let junction = s.tube.x0();
            let anchor = s.tube.anchor_value();
            let prior = self.segments[..i]
                .iter()
                .filter(|p| p.lo <= junction && junction <= p.hi)
                .any(|p| p.tube.evaluate(junction).is_ok_and(|v| anchor.subset_of(&v)));
            if !prior {
                bad.push((s.round, s.side));
            }
        }
        bad
    }
}

/// Runs `rounds` rounds (round 0 included), streaming each record.
pub fn extend(
    inst: &IvpInstance,
    rounds: usize,
    cfg: &SolveConfig,
    on_round: impl FnMut(&RoundRecord),
) -> Result<ExtensionState, ExtendError> {
    extend_from(inst, inst.x0, &IBox::point(&inst.y0), rounds, cfg, |_| false, on_round)
}

/// As [`extend`], restarting from an arbitrary point with an interval value,
/// and stopping early once `done` holds or both sides froze.
pub fn extend_from(
    inst: &IvpInstance,
    x: f64,
    anchor: &IBox,
    rounds: usize,
    cfg: &SolveConfig,
    done: impl Fn(&ExtensionState) -> bool,
    mut on_round: impl FnMut(&RoundRecord),
) -> Result<ExtensionState, ExtendError> {
    let mut state = ExtensionState::start(inst, x, anchor, cfg)?;
    on_round(&state.rounds[0]);
    while state.rounds.len() < rounds.max(1) && !state.is_stalled() && !done(&state) {
        state.advance(inst, cfg);
        on_round(state.rounds.last().unwrap());
    }
    Ok(state)
}

/// Checks every growing step against `δ_i/(2 M_i)` and returns the margins.
pub fn step_lower_bound_check(state: &ExtensionState) -> Result<Vec<StepMargin>, ViolationReport> {
    let mut margins = Vec::new();
    let mut prev_a = state.x0;
    let mut prev_b = state.x0;
    for r in &state.rounds {
        for s in &r.steps {
            let need = div_up(s.delta, mul_down(2.0, s.m_bound));
            let (moved, side_list): (f64, Vec<Side>) = match s.side {
                Side::Center => (0.0, vec![Side::Left, Side::Right]),
                Side::Left => (sub_down(prev_a, s.a), vec![Side::Left]),
                Side::Right => (sub_down(s.b, prev_b), vec![Side::Right]),
            };
            for side in side_list {
                let step = match (s.side, side) {
                    (Side::Center, Side::Left) => sub_down(s.x, s.a),
                    (Side::Center, Side::Right) => sub_down(s.b, s.x),
                    _ => moved,
                };
                margins.push(StepMargin {
                    round: r.round,
                    side,
                    margin: sub_down(step, need),
                });
            }
        }
        prev_a = r.a;
        prev_b = r.b;
    }
    let bad: Vec<usize> = margins.iter().filter(|m| m.margin <= 0.0).map(|m| m.round).collect();
    if bad.is_empty() {
        Ok(margins)
    } else {
        Err(ViolationReport { rounds: bad, margins })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::instance::{Ball, OpenSet};
    use crate::rhs::Rhs;

    fn inst(text: &str, domain: OpenSet, x0: f64, y0: f64) -> IvpInstance {
        IvpInstance::new(Rhs::Expr(parse(text, 1).unwrap()), domain, x0, vec![y0]).unwrap()
    }

    #[test]
    fn zero_rhs_grows_both_ways() {
        let i = inst("0", OpenSet::auto_growing(1), 0.0, 0.0);
        let mut seen = Vec::new();
        let st = extend(&i, 4, &SolveConfig::default(), |r| seen.push(r.round)).unwrap();
        assert_eq!(seen, vec![0, 1, 2, 3]);
        let minimal = st.rounds[1].steps[1].delta / (2.0 * st.rounds[1].steps[1].m_bound);
        assert!(st.rounds[3].b >= st.rounds[1].b + 2.0 * minimal);
        assert!(st.rounds.windows(2).all(|w| w[1].b > w[0].b && w[1].a < w[0].a));
        assert!(step_lower_bound_check(&st).is_ok());
        assert!(st.junction_failures().is_empty());
        for (_, n) in st.glued_nodes() {
            assert!(n[0].contains(0.0) && n[0].width() < 1e-9);
        }
    }

    #[test]
    fn single_round_is_vacuous() {
        let i = inst("1", OpenSet::auto_growing(1), 0.0, 0.0);
        let st = extend(&i, 1, &SolveConfig::default(), |_| {}).unwrap();
        assert_eq!(st.rounds.len(), 1);
        assert!(step_lower_bound_check(&st).unwrap().iter().all(|m| m.margin > 0.0));
    }

    #[test]
    fn boundary_freezes_side() {
        let domain = OpenSet::new(
            vec![Ball {
                center: vec![0.0, 0.0],
                radius: 1.0,
            }],
            1,
        )
        .unwrap();
        let cfg = SolveConfig {
            select: crate::instance::SelectConfig {
                max_k: 12,
                ..Default::default()
            },
            ..Default::default()
        };
        let i = inst("0", domain, 0.0, 0.0);
        let st = extend(&i, 200, &cfg, |_| {}).unwrap();
        assert!(matches!(st.right, SideStatus::BoundaryReached(_)));
        assert!(matches!(st.left, SideStatus::BoundaryReached(_)));
        assert!(st.b < 1.0 && st.a > -1.0);
        assert!(st.rounds.len() < 200);
    }

    #[test]
    fn blow_up_stays_left_of_one() {
        let i = inst("y*y", OpenSet::auto_growing(1), 0.0, 1.0);
        let st = extend(&i, 8, &SolveConfig::default(), |_| {}).unwrap();
        assert!(st.rounds.iter().all(|r| r.b < 1.0));
        for (x, n) in st.glued_nodes() {
            let v = 1.0 / (1.0 - x);
            assert!(n[0].inflate(1e-9 * v).contains(v), "x = {x}: {n:?}");
        }
        assert!(step_lower_bound_check(&st).is_ok());
    }
}
