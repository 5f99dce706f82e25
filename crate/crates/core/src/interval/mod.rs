//! Outward-rounded interval arithmetic over binary64 endpoints.
//!
//! Endpoints are dyadic rationals; all operations return enclosures whose
//! lower endpoint is rounded toward -inf and upper endpoint toward +inf.
//! Division is deliberately absent from the interval language.

pub mod round;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use self::round::*;

/// Working precision of the endpoint significand, in bits.
///
/// Results are computed in binary64 with directed rounding and then
/// coarsened outward to this many bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision(u32);

impl Precision {
    pub const MAX: Precision = Precision(53);

    pub fn new(bits: u32) -> Option<Precision> {
        (2..=53).contains(&bits).then_some(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `2^{-bits/2}`, the default stabilisation threshold.
    pub fn half_eps(self) -> f64 {
        pow2(-(self.0 as i32) / 2)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::MAX
    }
}

/// A closed interval `[lo, hi]` with finite endpoints.
///
/// Serialized as the pair `[lo, hi]`; malformed pairs are rejected on read.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Panics unless `lo <= hi` and both are finite.
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval::try_new(lo, hi).unwrap_or_else(|| panic!("invalid interval [{lo}, {hi}]"))
    }

    pub fn try_new(lo: f64, hi: f64) -> Option<Interval> {
        (lo.is_finite() && hi.is_finite() && lo <= hi).then_some(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        })
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    /// `[c - r, c + r]`, outward rounded.
    pub fn centered(c: f64, r: f64) -> Interval {
        debug_assert!(r >= 0.0);
        Interval::new(sub_down(c, r), add_up(c, r))
    }

    /// Smallest interval containing the real number written in `text`
    /// (a decimal literal or anything `f64::from_str` accepts).
    pub fn from_decimal(text: &str) -> Option<Interval> {
        let v: f64 = text.trim().parse().ok()?;
        if !v.is_finite() {
            return None;
        }
        if decimal_is_exact(text.trim(), v) {
            Some(Interval::point(v))
        } else {
            Some(Interval::new(v.next_down(), v.next_up()))
        }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    /// Width rounded up.
    pub fn width(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Midpoint, clamped into the interval.
    pub fn mid(self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Half width rounded up.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    /// Largest absolute value.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the interior of `other` with at least one ulp to spare
    /// on each side.
    pub fn strictly_inside(self, other: Interval) -> bool {
        other.lo.next_up() <= self.lo && self.hi <= other.hi.next_down()
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// `None` when the intersection is empty.
    pub fn intersect(self, other: Interval) -> Option<Interval> {
        Interval::try_new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn is_disjoint(self, other: Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval::new(0.0, self.mag())
        }
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn sqr(self) -> Interval {
        let m = self.mig();
        let big = self.mag();
        Interval::new(mul_down(m, m), mul_up(big, big))
    }

    pub fn cube(self) -> Interval {
        self.sqr() * self
    }

    /// Signed real cube root `sign(t)|t|^{1/3}`.
    pub fn scbrt(self) -> Interval {
        Interval::new(cbrt_down(self.lo), cbrt_up(self.hi))
    }

    /// Multiplication by `2^k` (exact for the magnitudes used here).
    pub fn scale_pow2(self, k: i32) -> Interval {
        let f = pow2(k);
        Interval::new(mul_down(self.lo, f), mul_up(self.hi, f))
    }

    /// Interval grown by `r >= 0` on both sides.
    pub fn inflate(self, r: f64) -> Interval {
        Interval::new(sub_down(self.lo, r), add_up(self.hi, r))
    }

    /// Outward rounding of both endpoints to `p` significand bits.
    pub fn coarsen(self, p: Precision) -> Interval {
        if p.bits() >= 53 {
            return self;
        }
        Interval::new(coarsen_down(self.lo, p.bits()), coarsen_up(self.hi, p.bits()))
    }

    /// Bisects at the midpoint.
    pub fn split(self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }
}

fn decimal_is_exact(text: &str, v: f64) -> bool {
    // compare normalised decimal digits of the literal and of the double
    fn normalise(s: &str) -> Option<(bool, String, i64)> {
        let s = s.trim();
        let (neg, s) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (int, frac) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let scale = exp - frac.len() as i64;
        let trimmed_lead = digits.trim_start_matches('0');
        if trimmed_lead.is_empty() {
            return Some((false, String::new(), 0));
        }
        let trimmed = trimmed_lead.trim_end_matches('0');
        let scale = scale + (trimmed_lead.len() - trimmed.len()) as i64;
        Some((neg, trimmed.to_string(), scale))
    }
    match (normalise(text), normalise(&exact_decimal(v))) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = String;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, String> {
        Interval::try_new(lo, hi).ok_or_else(|| format!("invalid interval [{lo}, {hi}]"))
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::new(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::new(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        if a >= 0.0 && c >= 0.0 {
            return Interval::new(mul_down(a, c), mul_up(b, d));
        }
        let lo = mul_down(a, c).min(mul_down(a, d)).min(mul_down(b, c)).min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        Interval::new(lo, hi)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

/// A box in `R^d`: a nonempty vector of intervals.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct IBox(Vec<Interval>);

impl IBox {
    /// Panics on an empty component list.
    pub fn new(components: Vec<Interval>) -> IBox {
        assert!(!components.is_empty(), "a box needs at least one component");
        IBox(components)
    }

    pub fn point(coords: &[f64]) -> IBox {
        IBox::new(coords.iter().map(|&c| Interval::point(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Interval] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Interval> {
        self.0
    }

    pub fn subset_of(&self, other: &IBox) -> bool {
        self.dim() == other.dim() && self.iter().zip(other.iter()).all(|(a, b)| a.subset_of(*b))
    }

    pub fn hull(&self, other: &IBox) -> IBox {
        IBox(self.iter().zip(other.iter()).map(|(a, b)| a.hull(*b)).collect())
    }

    pub fn intersect(&self, other: &IBox) -> Option<IBox> {
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| a.intersect(*b))
            .collect::<Option<Vec<_>>>()
            .map(IBox)
    }

    pub fn is_disjoint(&self, other: &IBox) -> bool {
        self.iter().zip(other.iter()).any(|(a, b)| a.is_disjoint(*b))
    }

    pub fn inflate(&self, r: f64) -> IBox {
        IBox(self.iter().map(|c| c.inflate(r)).collect())
    }

    /// Componentwise `self + [-r, r]`.
    pub fn widen(&self, r: Interval) -> IBox {
        let sym = r.abs().hull(-r.abs());
        IBox(self.iter().map(|&c| c + sym).collect())
    }

    pub fn max_width(&self) -> f64 {
        self.iter().map(|c| c.width()).fold(0.0, f64::max)
    }

    pub fn mid(&self) -> Vec<f64> {
        self.iter().map(|c| c.mid()).collect()
    }

    /// Index of the widest component (first on ties).
    pub fn widest(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.iter().enumerate() {
            if c.width() > self.0[best].width() {
                best = i;
            }
        }
        best
    }

    pub fn coarsen(&self, p: Precision) -> IBox {
        IBox(self.iter().map(|c| c.coarsen(p)).collect())
    }

    /// Box `(head, tail...)`, the layout used for `(x, y)` arguments.
    pub fn prepend(head: Interval, tail: &IBox) -> IBox {
        let mut v = Vec::with_capacity(tail.dim() + 1);
        v.push(head);
        v.extend_from_slice(&tail.0);
        IBox(v)
    }
}

impl Index<usize> for IBox {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl IndexMut<usize> for IBox {
    fn index_mut(&mut self, i: usize) -> &mut Interval {
        &mut self.0[i]
    }
}

impl fmt::Debug for IBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Enclosure of `{ max_i |v_i| : v in b }`.
pub fn norm_max(b: &IBox) -> Interval {
    b.iter()
        .map(|c| c.abs())
        .reduce(|acc, c| acc.max(c))
        .expect("box is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 4.0), iv(4.0, 6.0));
        assert_eq!(iv(-1.0, 2.0) * iv(3.0, 4.0), iv(-4.0, 8.0));
        assert_eq!(iv(-3.0, 1.0).abs(), iv(0.0, 3.0));
        assert_eq!(iv(1.0, 2.0) - iv(3.0, 4.0), iv(-3.0, -1.0));
        assert_eq!(-iv(1.0, 2.0), iv(-2.0, -1.0));
        assert_eq!(iv(-1.0, 5.0).min(iv(0.0, 3.0)), iv(-1.0, 3.0));
        assert_eq!(iv(-1.0, 5.0).max(iv(0.0, 3.0)), iv(0.0, 5.0));
    }

    #[test]
    fn cube_root_examples() {
        assert_eq!(iv(-8.0, 8.0).scbrt(), iv(-2.0, 2.0));
        assert_eq!(iv(0.0, 0.0).scbrt(), iv(0.0, 0.0));
        assert_eq!(iv(1.0, 27.0).scbrt(), iv(1.0, 3.0));
        let r = iv(2.0, 2.0).scbrt();
        assert!(r.lo() < r.hi() && r.width() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_max(&IBox::new(vec![iv(-1.0, 2.0), iv(0.0, 1.0)])), iv(0.0, 2.0));
        assert_eq!(norm_max(&IBox::new(vec![iv(3.0, 3.0)])), iv(3.0, 3.0));
        assert_eq!(norm_max(&IBox::new(vec![iv(-2.0, -1.0), iv(0.0, 0.0)])), iv(1.0, 2.0));
    }

    #[test]
    fn set_op_examples() {
        assert!(iv(0.0, 1.0).intersect(iv(2.0, 3.0)).is_none());
        assert!(iv(0.0, 1.0).is_disjoint(iv(2.0, 3.0)));
        assert_eq!(iv(0.0, 1.0).hull(iv(2.0, 3.0)), iv(0.0, 3.0));
        assert_eq!(iv(0.0, 0.25).width(), 0.25);
        assert!(iv(0.0, 1.0).contains(0.5));
        assert_eq!(iv(0.0, 1.0).intersect(iv(1.0, 3.0)), Some(iv(1.0, 1.0)));
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(Interval::from_decimal("0.375"), Some(Interval::point(0.375)));
        assert_eq!(Interval::from_decimal("2.5e-1"), Some(Interval::point(0.25)));
        assert_eq!(Interval::from_decimal("-12"), Some(Interval::point(-12.0)));
        let tenth = Interval::from_decimal("0.1").unwrap();
        assert!(!tenth.is_point());
        assert!(tenth.contains(0.1));
        assert_eq!(tenth.hi(), tenth.lo().next_up().next_up());
    }

    #[test]
    fn coarsened_ops_stay_sound() {
        let p = Precision::new(12).unwrap();
        let third = (Interval::ONE * Interval::point(1.0 / 3.0)).coarsen(p);
        assert!(third.contains(1.0 / 3.0));
        assert!(third.width() <= pow2(-12));
    }

    #[test]
    fn serde_pairs() {
        let b = IBox::new(vec![iv(-0.5, 0.25), iv(1.0, 1.0)]);
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(text, "[[-0.5,0.25],[1.0,1.0]]");
        assert_eq!(serde_json::from_str::<IBox>(&text).unwrap(), b);
        assert!(serde_json::from_str::<Interval>("[2.0,1.0]").is_err());
    }
}
