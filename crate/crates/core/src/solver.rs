//! Branch-and-prune enclosure of the whole local solution set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{select_local_box, InstanceError, IvpInstance, LocalBox, SelectConfig};
use crate::interval::round::{mul_up, pow2};
use crate::interval::{IBox, Interval, Precision};
use crate::tube::{InclusionVerdict, Refined, Tube, TubeError};

/// Relative inflation `2^{-6}` used to give confirmation some slack.
const INFLATE_LOG2: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub depth: u32,
    pub refine_rounds: usize,
    pub max_bisections: usize,
    pub precision: Precision,
    /// Branches whose widest node is at most this wide are not split further.
    pub target_width: Option<f64>,
    pub select: SelectConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            depth: 8,
            refine_rounds: 30,
            max_bisections: 64,
            precision: Precision::default(),
            target_width: None,
            select: SelectConfig::default(),
        }
    }
}

impl SolveConfig {
    fn select_config(&self) -> SelectConfig {
        SelectConfig {
            precision: self.precision,
            ..self.select
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no local box: {0}")]
    NoLocalBox(#[from] InstanceError),
    #[error("anchor enclosure radius {radius} exceeds a quarter of δ = {delta}")]
    AnchorTooWide { radius: f64, delta: f64 },
    #[error(transparent)]
    Tube(#[from] TubeError),
    #[error("uniqueness not proven: {confirmed} confirmed, {undecided} undecided tubes")]
    NotProvenUnique { confirmed: usize, undecided: usize },
}

/// A tube with its provenance in the bisection tree: `path` holds one
/// `'L'`/`'R'` per split, root first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeRecord {
    pub path: String,
    pub verdict: InclusionVerdict,
    pub tube: Tube,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub local_box: LocalBox,
    pub confirmed: Vec<TubeRecord>,
    pub undecided: Vec<TubeRecord>,
    pub pruned: usize,
    pub bisections: usize,
}

impl SolveResult {
    /// Confirmed tubes first, then undecided, in creation order.
    pub fn tubes(&self) -> impl Iterator<Item = &TubeRecord> {
        self.confirmed.iter().chain(&self.undecided)
    }

    /// Enclosure of `y(x)` over the union of all tubes; `None` if every
    /// branch was pruned, which cannot happen for a solvable instance.
    pub fn evaluate_hull(&self, x: f64) -> Result<Option<IBox>, TubeError> {
        let mut acc: Option<IBox> = None;
        for r in self.tubes() {
            let v = r.tube.evaluate(x)?;
            acc = Some(match acc {
                Some(a) => a.hull(&v),
                None => v,
            });
        }
        Ok(acc)
    }

    /// One tube containing every returned tube (all share one grid);
    /// `None` when everything was pruned.
    pub fn cover(&self) -> Option<Tube> {
        let mut it = self.tubes();
        let first = it.next()?.tube.clone();
        Some(it.fold(first, |acc, r| acc.hull(&r.tube)))
    }
}

enum Outcome {
    Pruned,
    Confirmed(Tube),
    Unknown(Tube),
}

fn process(t: &Tube, rhs: &crate::rhs::Rhs, cfg: &SolveConfig, delta: f64) -> Outcome {
    let t = match t.refine(rhs, cfg.refine_rounds) {
        Refined::Empty => return Outcome::Pruned,
        Refined::Narrowed(t, _) => t,
    };
    match t.inclusion_with_image(rhs) {
        (InclusionVerdict::Empty, _) => Outcome::Pruned,
        (InclusionVerdict::Inside, Some(img)) => Outcome::Confirmed(img),
        (_, narrowed) => {
            let t = narrowed.unwrap_or(t);
            // ε-inflation: a certificate for a superset still holds, and by
            // isotonicity its image covers every solution of `t`
            let slack = mul_up(delta, pow2(-40));
            let wide = t.inflate(INFLATE_LOG2, slack);
            match wide.inclusion_with_image(rhs) {
                (InclusionVerdict::Inside, Some(img)) => Outcome::Confirmed(img),
                _ => Outcome::Unknown(t),
            }
        }
    }
}

/// Encloses every solution through `(x, y)` on the selected local interval.
pub fn enclose_all(inst: &IvpInstance, x: f64, y: &[f64], cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    enclose_from(inst, x, &IBox::point(y), cfg)
}

/// As [`enclose_all`] with an interval anchor. The local box is centred at
/// the anchor's midpoint; the anchor radius must not exceed `δ/4` there.
pub fn enclose_from(inst: &IvpInstance, x: f64, anchor: &IBox, cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    let centre = anchor.mid();
    let lb = select_local_box(inst, x, &centre, &cfg.select_config())?;
    let quarter = lb.delta / 4.0;
    for (c, &m) in anchor.iter().zip(&centre) {
        if !c.subset_of(Interval::centered(m, quarter)) {
            return Err(SolveError::AnchorTooWide {
                radius: c.rad(),
                delta: lb.delta,
            });
        }
    }
    let root = Tube::initial(&lb, anchor.clone(), cfg.depth, cfg.precision)?;
    Ok(branch_and_prune(inst, lb, root, cfg))
}

fn branch_and_prune(inst: &IvpInstance, lb: LocalBox, root: Tube, cfg: &SolveConfig) -> SolveResult {
    let mut result = SolveResult {
        local_box: lb,
        confirmed: Vec::new(),
        undecided: Vec::new(),
        pruned: 0,
        bisections: 0,
    };
    let delta = result.local_box.delta;
    let mut wave = vec![(root, String::new())];
    while !wave.is_empty() {
        let outcomes: Vec<Outcome> = wave
            .par_iter()
            .map(|(t, _)| process(t, &inst.rhs, cfg, delta))
            .collect();
        let mut next = Vec::new();
        for ((_, path), outcome) in wave.into_iter().zip(outcomes) {
            match outcome {
                Outcome::Pruned => result.pruned += 1,
                Outcome::Confirmed(tube) => result.confirmed.push(TubeRecord {
                    path,
                    verdict: InclusionVerdict::Inside,
                    tube,
                }),
                Outcome::Unknown(tube) => {
                    let narrow_enough = cfg.target_width.is_some_and(|w| tube.max_width() <= w);
                    let site = tube.widest_site();
                    match site {
                        Some((node, comp)) if !narrow_enough && result.bisections < cfg.max_bisections => {
                            let (l, r) = tube.bisect(node, comp).expect("widest site is splittable");
                            result.bisections += 1;
                            next.push((l, format!("{path}L")));
                            next.push((r, format!("{path}R")));
                        }
                        _ => result.undecided.push(TubeRecord {
                            path,
                            verdict: InclusionVerdict::Unknown,
                            tube,
                        }),
                    }
                }
            }
        }
        wave = next;
    }
    result
}

/// The single certified tube, when the search leaves exactly one branch,
/// that branch is confirmed, and `f` is Lipschitz in `y` over it. A confirmed
/// tube alone only proves existence: a whole funnel fits in one.
pub fn solve_unique(inst: &IvpInstance, x: f64, y: &[f64], cfg: &SolveConfig) -> Result<Tube, SolveError> {
    let r = enclose_all(inst, x, y, cfg)?;
    let lipschitz = r.confirmed.len() == 1 && r.confirmed[0].tube.lipschitz_y(&inst.rhs).is_some();
    if lipschitz && r.undecided.is_empty() {
        Ok(r.confirmed.into_iter().next().unwrap().tube)
    } else {
        Err(SolveError::NotProvenUnique {
            confirmed: r.confirmed.len(),
            undecided: r.undecided.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::instance::OpenSet;
    use crate::rhs::Rhs;

    fn inst(text: &str, x0: f64, y0: f64) -> IvpInstance {
        IvpInstance::new(Rhs::Expr(parse(text, 1).unwrap()), OpenSet::auto_growing(1), x0, vec![y0]).unwrap()
    }

    #[test]
    fn zero_rhs_one_constant_tube() {
        let i = inst("0", 0.0, 0.5);
        let r = enclose_all(&i, 0.0, &[0.5], &SolveConfig::default()).unwrap();
        assert_eq!(r.confirmed.len(), 1);
        assert!(r.undecided.is_empty());
        assert!(r.confirmed[0].tube.nodes().iter().all(|n| n[0].contains(0.5) && n[0].width() < 1e-9));
        assert!(solve_unique(&i, 0.0, &[0.5], &SolveConfig::default()).is_ok());
    }

    #[test]
    fn exponential_is_unique() {
        let i = inst("y", 0.0, 1.0);
        let cfg = SolveConfig {
            depth: 10,
            ..Default::default()
        };
        let t = solve_unique(&i, 0.0, &[1.0], &cfg).unwrap();
        for (x, n) in t.xs().iter().zip(t.nodes()) {
            assert!(n[0].inflate(1e-12).contains(x.exp()));
        }
        assert!(t.max_width() <= 1e-2);
    }

    #[test]
    fn wide_anchor_is_rejected() {
        let i = inst("0", 0.0, 0.0);
        let wide = IBox::new(vec![Interval::new(-0.3, 0.3)]);
        assert!(matches!(
            enclose_from(&i, 0.0, &wide, &SolveConfig::default()),
            Err(SolveError::AnchorTooWide { .. })
        ));
        let far = inst("0", 0.0, 0.0);
        assert!(matches!(
            enclose_all(&far, 1e12, &[0.0], &SolveConfig::default()),
            Err(SolveError::NoLocalBox(_))
        ));
    }

    #[test]
    fn amplifier_funnel_is_not_unique() {
        let i = inst("9*x*(1-x)*scbrt(y1)", 0.25, 0.0);
        let cfg = SolveConfig {
            max_bisections: 8,
            ..Default::default()
        };
        assert!(matches!(
            solve_unique(&i, 0.25, &[0.0], &cfg),
            Err(SolveError::NotProvenUnique { .. })
        ));
    }

    #[test]
    fn deterministic_results() {
        let i = inst("9*x*(1-x)*scbrt(y1)", 0.25, 0.0);
        let cfg = SolveConfig {
            max_bisections: 16,
            depth: 6,
            ..Default::default()
        };
        let a = enclose_all(&i, 0.25, &[0.0], &cfg).unwrap();
        let b = enclose_all(&i, 0.25, &[0.0], &cfg).unwrap();
        assert_eq!(a, b);
    }
}
