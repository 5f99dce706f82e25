//! Reading LLPO answers off solution enclosures of the parallel gadget.
//!
//! Cell `m` serves stream `i = unpair(m).1`. At the sample point `t_m` every
//! solution satisfies `y(t_m) = 2^{-2(m+3)} ŷ(2)` for a solution `ŷ` of the
//! single gadget, so `y(t_m) > -2^{-2(m+3)}` certifies bit 0 and
//! `y(t_m) < 2^{-2(m+3)}` certifies bit 1.
//!
//! Enclosures of the funnel anchored at `x0 = 0` are far too coarse at the
//! sample points, so [`decode_llpo`] restarts at the cell's right boundary
//! `(-2^{-(m+1)}, 0)`, where every solution of a gadget window returns to 0,
//! and extends leftward until `t_m` is covered.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{decode_threshold, pair, sample_point, BitStream, GadgetError, GadgetRef};
use crate::extender::{extend_from, ExtensionState};
use crate::instance::{IvpInstance, OpenSet};
use crate::interval::round::pow2;
use crate::interval::{IBox, Interval};
use crate::rhs::Rhs;
use crate::solver::{SolveConfig, SolveResult};

/// Where an enclosure of `y(t_m)` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// A single Inside-certified tube: some solution lies in it.
    Confirmed,
    /// A union known to hold every solution.
    Cover,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub source: WitnessSource,
    pub cell: u32,
    pub value: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitReport {
    pub bit: u8,
    pub certified: bool,
    pub cell: u32,
    pub sample_point: f64,
    pub threshold: f64,
    /// Witness id; for uncertified bits, the first enclosure consulted.
    pub witness: Option<String>,
    pub enclosure: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DecodeReport {
    pub bits: BTreeMap<usize, BitReport>,
    /// Requested indices with no sample point inside any solved interval.
    pub unavailable: Vec<usize>,
}

impl DecodeReport {
    pub fn all_certified(&self) -> bool {
        self.unavailable.is_empty() && self.bits.values().all(|b| b.certified)
    }

    /// The first unavailable index as an error.
    pub fn check_available(&self) -> Result<(), GadgetError> {
        match self.unavailable.first() {
            Some(&i) => Err(GadgetError::CellUnavailable(i)),
            None => Ok(()),
        }
    }
}

/// Evidence a decoder can consult.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Result(&'a str, &'a SolveResult),
    Extension(&'a str, &'a ExtensionState),
}

impl Source<'_> {
    /// Enclosures of `y(t_m)` offered by this source.
    pub fn witnesses(&self, m: u32) -> Vec<Witness> {
        let t = sample_point(m);
        match *self {
            Source::Result(id, r) => {
                let mut out = Vec::new();
                let mut union: Option<Interval> = None;
                for (k, rec) in r.tubes().enumerate() {
                    let Ok(v) = rec.tube.evaluate(t) else { continue };
                    let v = v[0];
                    union = Some(union.map_or(v, |u| u.hull(v)));
                    if k < r.confirmed.len() {
                        out.push(Witness {
                            id: format!("{id}#{k}:{}", rec.path),
                            source: WitnessSource::Confirmed,
                            cell: m,
                            value: v,
                        });
                    }
                }
                // the union covers every solution only if all tubes reach t
                if let Some(u) = union.filter(|_| r.tubes().all(|rec| rec.tube.evaluate(t).is_ok())) {
                    out.push(Witness {
                        id: format!("{id}#union"),
                        source: WitnessSource::Cover,
                        cell: m,
                        value: u,
                    });
                }
                out
            }
            Source::Extension(id, st) => st
                .evaluate(t)
                .map(|v| Witness {
                    id: id.to_string(),
                    source: WitnessSource::Cover,
                    cell: m,
                    value: v[0],
                })
                .into_iter()
                .collect(),
        }
    }
}

/// Bit certified by one enclosure: `y(t_m) > -thr` gives 0, `y(t_m) < thr` gives 1.
fn certify(w: &Witness) -> Option<u8> {
    let thr = decode_threshold(w.cell);
    if w.value.lo() > -thr {
        Some(0)
    } else if w.value.hi() < thr {
        Some(1)
    } else {
        None
    }
}

/// Confirmed witnesses first, then covers.
fn judge(witnesses: &[Witness]) -> Option<(u8, &Witness)> {
    let by = |src| witnesses.iter().filter(move |w| w.source == src);
    by(WitnessSource::Confirmed)
        .chain(by(WitnessSource::Cover))
        .find_map(|w| certify(w).map(|b| (b, w)))
}

fn certified_report(bit: u8, w: &Witness) -> BitReport {
    BitReport {
        bit,
        certified: true,
        cell: w.cell,
        sample_point: sample_point(w.cell),
        threshold: decode_threshold(w.cell),
        witness: Some(w.id.clone()),
        enclosure: Some(w.value),
    }
}

/// Uncertified fallback: the sign most enclosures lean to (positive → 0).
fn majority_report(witnesses: &[Witness]) -> Option<BitReport> {
    let first = witnesses.first()?;
    let positive = witnesses.iter().filter(|w| w.value.mid() >= 0.0).count();
    let bit = if 2 * positive >= witnesses.len() { 0 } else { 1 };
    Some(BitReport {
        bit,
        certified: false,
        cell: first.cell,
        sample_point: sample_point(first.cell),
        threshold: decode_threshold(first.cell),
        witness: Some(first.id.clone()),
        enclosure: Some(first.value),
    })
}

/// Cells serving stream `i`, in increasing order, up to `max_cell`.
pub fn cells_for(i: usize, max_cell: u32) -> impl Iterator<Item = u32> {
    (0u64..)
        .map(move |k| pair(k, i as u64))
        .take_while(move |&m| m <= max_cell as u64)
        .map(|m| m as u32)
}

/// Decodes from existing solve results and extension states only.
pub fn decode_sources(sources: &[Source<'_>], indices: &[usize], max_cell: u32) -> DecodeReport {
    let mut report = DecodeReport::default();
    for &i in indices {
        let mut seen = Vec::new();
        let mut done = false;
        for m in cells_for(i, max_cell) {
            let ws: Vec<Witness> = sources.iter().flat_map(|s| s.witnesses(m)).collect();
            if let Some((bit, w)) = judge(&ws) {
                report.bits.insert(i, certified_report(bit, w));
                done = true;
                break;
            }
            seen.extend(ws);
        }
        if !done {
            match majority_report(&seen) {
                Some(r) => {
                    report.bits.insert(i, r);
                }
                None => report.unavailable.push(i),
            }
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecodeConfig {
    /// Solver settings; `select.min_k` is overridden per cell.
    pub solve: SolveConfig,
    /// Extension rounds allowed to reach a sample point.
    pub max_rounds: usize,
    /// How many cells per stream to try.
    pub cells_per_stream: usize,
    /// Retries per cell, each one grid level finer with doubled refinement.
    pub escalations: u32,
    pub max_cell: u32,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig {
            solve: SolveConfig {
                depth: 12,
                refine_rounds: 60,
                max_bisections: 0,
                ..SolveConfig::default()
            },
            max_rounds: 8,
            cells_per_stream: 2,
            escalations: 1,
            max_cell: 48,
        }
    }
}

/// The parallel gadget IVP `y' = f(x, y)`, `y(0) = 0` on `(-1, 1) x R`.
pub fn parallel_instance(streams: &[BitStream], cell_budget: u32) -> IvpInstance {
    let rhs = Rhs::Gadget(GadgetRef::Parallel {
        streams: streams.to_vec(),
        cell_budget,
    });
    IvpInstance::new(rhs, OpenSet::strip(30), 0.0, vec![0.0]).expect("the origin lies in the strip")
}

/// Solves at the right boundary of cell `m` and extends until `t_m` is
/// covered; `None` when the extension stalls first.
pub fn cell_witness(inst: &IvpInstance, m: u32, cfg: &SolveConfig, max_rounds: usize) -> Option<(Witness, ExtensionState)> {
    let t = sample_point(m);
    let cfg = SolveConfig {
        select: crate::instance::SelectConfig {
            min_k: cfg.select.min_k.max(m + 1),
            ..cfg.select
        },
        ..*cfg
    };
    let x = -pow2(-(m as i32) - 1);
    let st = extend_from(inst, x, &IBox::point(&[0.0]), max_rounds, &cfg, |s| s.a <= t, |_| {}).ok()?;
    let v = st.evaluate(t)?;
    let w = Witness {
        id: format!("cell {m}, {} round(s), depth {}", st.rounds.len(), cfg.depth),
        source: WitnessSource::Cover,
        cell: m,
        value: v[0],
    };
    Some((w, st))
}

/// Decodes bits `indices` by solving the parallel instance near the
/// relevant cells. Cells are tried in increasing order; an undecided cell is
/// retried at a finer grid before moving on, and bits no cell certifies get
/// the sign-majority bit flagged uncertified.
pub fn decode_llpo(
    streams: &[BitStream],
    cell_budget: u32,
    indices: &[usize],
    cfg: &DecodeConfig,
) -> Result<DecodeReport, GadgetError> {
    let inst = parallel_instance(streams, cell_budget);
    decode_with(&inst, &[], indices, cfg)
}

/// As [`decode_llpo`], consulting `sources` first.
pub fn decode_with(
    inst: &IvpInstance,
    sources: &[Source<'_>],
    indices: &[usize],
    cfg: &DecodeConfig,
) -> Result<DecodeReport, GadgetError> {
    let prior = decode_sources(sources, indices, cfg.max_cell);
    let results: Vec<(usize, Option<BitReport>)> = indices
        .par_iter()
        .map(|&i| {
            if let Some(r) = prior.bits.get(&i).filter(|r| r.certified) {
                return (i, Some(r.clone()));
            }
            let mut seen: Vec<Witness> = Vec::new();
            for m in cells_for(i, cfg.max_cell).take(cfg.cells_per_stream) {
                for level in 0..=cfg.escalations {
                    let solve = SolveConfig {
                        depth: (cfg.solve.depth + level).min(crate::tube::MAX_DEPTH),
                        refine_rounds: cfg.solve.refine_rounds << level,
                        ..cfg.solve
                    };
                    let Some((w, _)) = cell_witness(inst, m, &solve, cfg.max_rounds) else {
                        break;
                    };
                    if let Some(bit) = certify(&w) {
                        return (i, Some(certified_report(bit, &w)));
                    }
                    seen.push(w);
                }
            }
            let fallback = prior.bits.get(&i).cloned();
            (i, majority_report(&seen).or(fallback))
        })
        .collect();
    let mut report = DecodeReport::default();
    for (i, r) in results {
        match r {
            Some(r) => {
                report.bits.insert(i, r);
            }
            None => report.unavailable.push(i),
        }
    }
    if report.bits.is_empty() && !indices.is_empty() {
        report.check_available()?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u64]) -> BitStream {
        BitStream::new(v).unwrap()
    }

    #[test]
    fn cells_follow_the_pairing() {
        assert_eq!(cells_for(0, 20).collect::<Vec<_>>(), vec![0, 1, 3, 6, 10, 15]);
        assert_eq!(cells_for(3, 40).collect::<Vec<_>>(), vec![9, 13, 18, 24, 31, 39]);
    }

    #[test]
    fn forced_zero_decodes_to_one() {
        // 0 occurs in stream 0: ŷ(2) = -(1 + (1/2)^{2/3})^{3/2} < -1
        let streams = vec![s(&[0, 2])];
        let r = decode_llpo(&streams, 24, &[0], &DecodeConfig::default()).unwrap();
        let b = &r.bits[&0];
        assert!(b.certified);
        assert_eq!(b.bit, 1);
        let expect = -(1.0 + 0.5f64.powf(2.0 / 3.0)).powf(1.5) * b.threshold;
        assert!(b.enclosure.unwrap().inflate(1e-3 * b.threshold).contains(expect));
    }

    #[test]
    fn second_stream_late_one() {
        let streams = vec![BitStream::all_twos(), s(&[2, 2, 2, 1])];
        let r = decode_llpo(&streams, 24, &[1], &DecodeConfig::default()).unwrap();
        let b = &r.bits[&1];
        assert!(b.certified && b.bit == 0, "{b:?}");
        assert_eq!(b.cell, 2);
    }

    #[test]
    fn all_twos_stays_valid() {
        let streams = vec![BitStream::all_twos()];
        let cfg = DecodeConfig {
            cells_per_stream: 1,
            escalations: 0,
            ..Default::default()
        };
        let r = decode_llpo(&streams, 24, &[0], &cfg).unwrap();
        // both bits are correct answers; certification is not expected
        assert!(r.bits[&0].bit <= 1);
    }

    #[test]
    fn sources_without_coverage_are_unavailable() {
        let r = decode_sources(&[], &[0, 2], 20);
        assert_eq!(r.unavailable, vec![0, 2]);
        assert_eq!(r.check_available(), Err(GadgetError::CellUnavailable(0)));
    }
}
