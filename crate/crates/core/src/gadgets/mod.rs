//! Counterexample right-hand sides whose solution signs encode LLPO answers.
//!
//! A single gadget `g_p` on `[0,4]` is built from a triangle pulse `h_p`
//! whose sign is fixed by the first 0 or 1 in the stream `p`, followed by the
//! non-Lipschitz amplifier `s(x,y) = 9x(1-x) sign(y)|y|^{1/3}` and the mirror
//! image of both. Countably many scaled copies packed into `[-1,0)` (and
//! mirrored onto `(0,1]`) give the parallel right-hand side.

mod decode;

pub use decode::{
    cell_witness, cells_for, decode_llpo, decode_sources, decode_with, parallel_instance, BitReport, DecodeConfig,
    DecodeReport, Source, Witness, WitnessSource,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::round::{cbrt_up, mul_up, pow2};
use crate::interval::{Interval, Precision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("stream {stream} contains both 0 and 1")]
    DomainViolation { stream: usize },
    #[error("stream {stream} has entry {value} at position {position}; entries must be 0, 1 or 2")]
    InvalidEntry {
        stream: usize,
        position: usize,
        value: u64,
    },
    #[error("inconsistent closed-form parameters: {0}")]
    Parameter(String),
    #[error("no sample point for stream {0} lies in the solved interval")]
    CellUnavailable(usize),
}

/// A finite prefix over `{0,1,2}`; every position past the prefix holds 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct BitStream {
    entries: Vec<u8>,
}

impl BitStream {
    pub fn new(entries: &[u64]) -> Result<BitStream, GadgetError> {
        BitStream::for_stream(entries, 0)
    }

    fn for_stream(entries: &[u64], stream: usize) -> Result<BitStream, GadgetError> {
        if let Some((position, &value)) = entries.iter().enumerate().find(|(_, &v)| v > 2) {
            return Err(GadgetError::InvalidEntry {
                stream,
                position,
                value,
            });
        }
        let entries: Vec<u8> = entries.iter().map(|&v| v as u8).collect();
        if entries.contains(&0) && entries.contains(&1) {
            return Err(GadgetError::DomainViolation { stream });
        }
        Ok(BitStream { entries })
    }

    /// Validates a list of streams, reporting the index of the first bad one.
    pub fn parse_list(lists: &[Vec<u64>]) -> Result<Vec<BitStream>, GadgetError> {
        lists
            .iter()
            .enumerate()
            .map(|(i, s)| BitStream::for_stream(s, i))
            .collect()
    }

    pub fn all_twos() -> BitStream {
        BitStream { entries: vec![] }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> u8 {
        self.entries.get(j).copied().unwrap_or(2)
    }

    /// First position holding `bit`, if any.
    pub fn first(&self, bit: u8) -> Option<usize> {
        self.entries.iter().position(|&b| b == bit)
    }

    /// `T(p, i)`: `2^{-j}` for the first `j` with `p(j) = i`, else 0.
    pub fn t_value(&self, bit: u8) -> f64 {
        self.first(bit).map_or(0.0, |j| pow2(-(j as i32)))
    }

    /// Peak of the triangle pulse, `T(p,1) - T(p,0)` (exact).
    pub fn peak(&self) -> f64 {
        self.t_value(1) - self.t_value(0)
    }

    /// `(bit, position)` of the 0 or 1 occurring in the stream, if any.
    pub fn forced(&self) -> Option<(u8, usize)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, &b)| b < 2)
            .map(|(j, &b)| (b, j))
    }

    /// Whether `bit` is a correct LLPO answer, i.e. `bit` never occurs.
    pub fn llpo_allows(&self, bit: u8) -> bool {
        !self.entries.contains(&bit)
    }
}

impl TryFrom<Vec<u64>> for BitStream {
    type Error = GadgetError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        BitStream::new(&v)
    }
}

impl From<BitStream> for Vec<u64> {
    fn from(b: BitStream) -> Vec<u64> {
        b.entries.into_iter().map(u64::from).collect()
    }
}

/// Cantor pairing `<k, i> = (k+i)(k+i+1)/2 + i`.
pub fn pair(k: u64, i: u64) -> u64 {
    (k + i) * (k + i + 1) / 2 + i
}

/// Inverse of [`pair`]: `m -> (k, i)`.
pub fn unpair(m: u64) -> (u64, u64) {
    let mut w = (((8 * m + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= m {
        w += 1;
    }
    while w * (w + 1) / 2 > m {
        w -= 1;
    }
    let i = m - w * (w + 1) / 2;
    (w - i, i)
}

/// Enclosure of the triangle pulse `max(0, 1-|2x-1|) * (T(p,1)-T(p,0))`.
pub fn eval_h(p: &BitStream, x: Interval) -> Interval {
    let peak = p.peak();
    if peak == 0.0 {
        return Interval::ZERO;
    }
    let tri = (Interval::ONE - (x.scale_pow2(1) - Interval::ONE).abs()).max(Interval::ZERO);
    tri * peak
}

/// Enclosure of the amplifier `9u(1-u) sign(y)|y|^{1/3}`.
pub fn eval_s(u: Interval, y: Interval) -> Interval {
    // u(1-u) = 1/4 - (u - 1/2)^2 avoids the dependency blow-up
    let quad = Interval::point(0.25) - (u - Interval::point(0.5)).sqr();
    quad * Interval::point(9.0) * y.scbrt()
}

/// Enclosure of the single gadget `g_p` over the box `x * y`.
pub fn eval_g(p: &BitStream, x: Interval, y: Interval) -> Interval {
    let mut acc: Option<Interval> = None;
    let mut join = |v: Interval| {
        acc = Some(acc.map_or(v, |a| a.hull(v)));
    };
    if x.lo() < 0.0 || x.hi() > 4.0 {
        join(Interval::ZERO);
    }
    let piece = |lo: f64, hi: f64| x.intersect(Interval::new(lo, hi));
    if let Some(xi) = piece(0.0, 1.0) {
        join(eval_h(p, xi));
    }
    if let Some(xi) = piece(1.0, 2.0) {
        join(eval_s(xi - Interval::ONE, y));
    }
    if let Some(xi) = piece(2.0, 3.0) {
        join(-eval_s(xi - Interval::point(2.0), y));
    }
    if let Some(xi) = piece(3.0, 4.0) {
        join(-eval_h(p, xi - Interval::point(3.0)));
    }
    acc.unwrap_or(Interval::ZERO)
}

/// A built-in gadget right-hand side (dimension 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetRef {
    Single { stream: BitStream },
    Parallel {
        streams: Vec<BitStream>,
        cell_budget: u32,
    },
}

impl GadgetRef {
    pub fn eval(&self, x: Interval, y: Interval, prec: Precision) -> Interval {
        let v = match self {
            GadgetRef::Single { stream } => eval_g(stream, x, y),
            GadgetRef::Parallel {
                streams,
                cell_budget,
            } => eval_parallel_f(streams, *cell_budget, x, y),
        };
        v.coarsen(prec)
    }
}

/// Support `[-2^{-m}, -2^{-(m+1)}]` of cell `m`.
pub fn cell_support(m: u32) -> Interval {
    Interval::new(-pow2(-(m as i32)), -pow2(-(m as i32) - 1))
}

/// The point `-2^{-m} + 2^{-(m+2)}` that cell `m` maps to gadget `x = 2`.
pub fn sample_point(m: u32) -> f64 {
    -pow2(-(m as i32)) + pow2(-(m as i32) - 2)
}

/// Decoding threshold `2^{-2(m+3)}`: the parallel solution at the sample
/// point equals `2^{-2(m+3)}` times the gadget solution at `x = 2`.
pub fn decode_threshold(m: u32) -> f64 {
    pow2(-2 * (m as i32 + 3))
}

/// Stream index served by cell `m`.
pub fn cell_stream(m: u32) -> usize {
    unpair(m as u64).1 as usize
}

/// Term of cell `m`: `2^{-(m+3)} g_p(2^{m+3}(x + 2^{-m}), 2^{2(m+3)} y)`.
pub fn eval_cell(p: &BitStream, m: u32, x: Interval, y: Interval) -> Interval {
    let e = m as i32 + 3;
    let xh = (x + Interval::point(pow2(-(m as i32)))).scale_pow2(e);
    let yh = y.scale_pow2(2 * e);
    eval_g(p, xh, yh).scale_pow2(-e)
}

/// Bound on every cell term with index above `budget`.
pub fn tail_bound(budget: u32, y: Interval) -> f64 {
    let e = -(budget as i32 + 4);
    let pulse = pow2(e);
    let amp = mul_up(mul_up(2.25, cbrt_up(pow2(e))), cbrt_up(y.mag()));
    pulse.max(amp)
}

/// Enclosure of the parallel right-hand side; streams beyond the list
/// contribute nothing, cells past `cell_budget` are covered by [`tail_bound`].
pub fn eval_parallel_f(streams: &[BitStream], cell_budget: u32, x: Interval, y: Interval) -> Interval {
    // f(x,y) = f(-x,y) for x > 0, so evaluate on -|x|
    let xn = -x.abs();
    if streams.is_empty() {
        return Interval::ZERO;
    }
    let mut acc: Option<Interval> = None;
    let mut join = |v: Interval| {
        acc = Some(acc.map_or(v, |a| a.hull(v)));
    };
    if xn.lo() < -1.0 {
        join(Interval::ZERO);
    }
    let first = if xn.lo() <= -1.0 {
        0
    } else {
        // -xn.lo in (2^{-(m+1)}, 2^{-m}] for the leftmost cell touched
        let e = ((-xn.lo()).to_bits() >> 52) as i32 - 1023;
        (-e - 1).max(0) as u32
    };
    let mut m = first.saturating_sub(1);
    while m <= cell_budget {
        let support = cell_support(m);
        if support.lo() > xn.hi() {
            break;
        }
        if let Some(xs) = xn.intersect(support) {
            let i = cell_stream(m);
            match streams.get(i) {
                Some(p) => join(eval_cell(p, m, xs, y)),
                None => join(Interval::ZERO),
            }
        }
        m += 1;
    }
    if xn.hi() > -pow2(-(cell_budget as i32) - 1) {
        let t = tail_bound(cell_budget, y);
        join(Interval::new(-t, t));
    }
    acc.unwrap_or(Interval::ZERO)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn phi(u: f64) -> f64 {
    u * u * (3.0 - 2.0 * u)
}

/// Closed-form solutions of `y' = s(x, y)` on `[0, 1]`.
///
/// For `y0 != 0` the solution is unique and `c` must be `None`; `sign` must
/// agree with `y0`. For `y0 = 0` the solution stays at 0 up to `c` and then
/// leaves with the given sign.
pub fn closed_solution_s(y0: f64, sign: Sign, c: Option<f64>, x: f64) -> Result<f64, GadgetError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(GadgetError::Parameter(format!("x = {x} outside [0, 1]")));
    }
    if y0 != 0.0 {
        if c.is_some() {
            return Err(GadgetError::Parameter("c is only meaningful for y0 = 0".into()));
        }
        if (y0 > 0.0) != (sign == Sign::Plus) {
            return Err(GadgetError::Parameter("sign disagrees with y0".into()));
        }
        let base = phi(x) + y0.abs().powf(2.0 / 3.0);
        return Ok(y0.signum() * base.powf(1.5));
    }
    let c = c.ok_or_else(|| GadgetError::Parameter("y0 = 0 needs a branch point c".into()))?;
    if !(0.0..=1.0).contains(&c) {
        return Err(GadgetError::Parameter(format!("c = {c} outside [0, 1]")));
    }
    if x <= c {
        return Ok(0.0);
    }
    Ok(sign.value() * (phi(x) - phi(c)).powf(1.5))
}

fn tri_integral(x: f64) -> f64 {
    if x <= 0.5 {
        x * x
    } else {
        2.0 * x - x * x - 0.5
    }
}

/// Closed-form solution of `y' = g_p(x, y)`, `y(0) = 0`, on `[0, 4]`.
///
/// For a stream containing a 0 or 1 the solution is unique and `branch`
/// must be `None`. For an all-2 stream `branch = (sign, c)` selects the
/// member of the funnel that leaves 0 at `x = 1 + c`.
pub fn gadget_solution(p: &BitStream, branch: Option<(Sign, f64)>, x: f64) -> Result<f64, GadgetError> {
    if !(0.0..=4.0).contains(&x) {
        return Err(GadgetError::Parameter(format!("x = {x} outside [0, 4]")));
    }
    let peak = p.peak();
    let y1 = peak / 2.0;
    let (sign, c) = match (peak == 0.0, branch) {
        (false, None) => (if peak > 0.0 { Sign::Plus } else { Sign::Minus }, None),
        (true, Some((s, c))) => (s, Some(c)),
        (false, Some(_)) => {
            return Err(GadgetError::Parameter("forced stream has a unique solution".into()))
        }
        (true, None) => return Err(GadgetError::Parameter("all-2 stream needs a branch".into())),
    };
    if x <= 1.0 {
        return Ok(peak * tri_integral(x));
    }
    if x <= 2.0 {
        return closed_solution_s(y1, sign, c, x - 1.0);
    }
    // top value |y(2)|^{2/3}, then the mirrored descent
    let top = match c {
        None => 1.0 + y1.abs().powf(2.0 / 3.0),
        Some(c) => 1.0 - phi(c),
    };
    if x <= 3.0 {
        let v = (top - phi(x - 2.0)).max(0.0);
        return Ok(sign.value() * v.powf(1.5));
    }
    Ok(y1 - peak * tri_integral(x - 3.0))
}
