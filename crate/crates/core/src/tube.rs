//! Grid function enclosures and the interval Picard operator.
//!
//! A tube over `[a, b]` is a uniform grid of node boxes `Y_0..Y_{2^L}` plus a
//! slope bound per cell. It denotes every continuous `y` with `y(x_j) ∈ Y_j`,
//! slope at most `slopes[i] <= M` on cell `i`, and values in the δ-ball of the
//! governing local box. The anchor node sits at `x0`, the centre of `[a, b]`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::LocalBox;
use crate::interval::round::{add_up, exact_decimal, mul_up, sub_up};
use crate::interval::{IBox, Interval, Precision};
use crate::rhs::Rhs;

pub const MAX_DEPTH: u32 = 24;

const MAG_SLACK: f64 = 1.0 / (1u64 << 44) as f64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TubeError {
    #[error("x = {x} lies outside the tube interval [{a}, {b}]")]
    OutOfRange { x: f64, a: f64, b: f64 },
    #[error("node {node} component {component} is too narrow to split")]
    DegenerateSplit { node: usize, component: usize },
    #[error("grid depth must lie in 1..={MAX_DEPTH}, got {0}")]
    BadDepth(u32),
    #[error("anchor value is not contained in the local δ-ball")]
    AnchorOutsideBall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InclusionVerdict {
    Inside,
    Empty,
    Unknown,
}

/// Outcome of [`Tube::refine`].
#[derive(Debug, Clone, PartialEq)]
pub enum Refined {
    /// The narrowed tube and the number of Picard rounds spent.
    Narrowed(Tube, usize),
    /// Some node became empty: the tube holds no solution.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    a: f64,
    b: f64,
    depth: u32,
    xs: Vec<f64>,
    nodes: Vec<IBox>,
    slopes: Vec<f64>,
    lip: f64,
    anchor: usize,
    anchor_value: IBox,
    ball: IBox,
    precision: Precision,
}

/// Per-cell data of one Picard evaluation.
struct Image {
    nodes: Vec<IBox>,
    f_mag: Vec<f64>,
}

fn moved(old: Interval, new: Interval) -> bool {
    new.lo() > old.lo().next_up() || new.hi() < old.hi().next_down()
}

fn box_moved(old: &IBox, new: &IBox) -> bool {
    old.iter().zip(new.iter()).any(|(o, n)| moved(*o, *n))
}

fn cell_width(x0: f64, x1: f64) -> f64 {
    sub_up(x1, x0)
}

fn spread(b: &IBox, r: f64) -> IBox {
    b.widen(Interval::point(r))
}

impl Tube {
    /// The class of Lipschitz-`M` functions through `anchor_value` at the
    /// grid resolution: node `j` is `anchor_value ± M|x_j - x0|`, clipped to
    /// the δ-ball.
    pub fn initial(lb: &LocalBox, anchor_value: IBox, depth: u32, precision: Precision) -> Result<Tube, TubeError> {
        if !(1..=MAX_DEPTH).contains(&depth) {
            return Err(TubeError::BadDepth(depth));
        }
        let ball = lb.y_ball();
        if !anchor_value.subset_of(&ball) {
            return Err(TubeError::AnchorOutsideBall);
        }
        let cells = 1usize << depth;
        let h = (lb.b - lb.a) / cells as f64;
        let mut xs: Vec<f64> = (0..=cells).map(|j| lb.a + j as f64 * h).collect();
        let anchor = cells / 2;
        xs[anchor] = lb.x;
        xs[cells] = lb.b;
        let mut t = Tube {
            a: lb.a,
            b: lb.b,
            depth,
            xs,
            nodes: vec![anchor_value.clone(); cells + 1],
            slopes: vec![lb.m_bound; cells],
            lip: lb.m_bound,
            anchor,
            anchor_value,
            ball,
            precision,
        };
        for j in 0..=cells {
            t.nodes[j] = t.cone(j);
        }
        Ok(t)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.anchor_value.dim()
    }

    pub fn node_x(&self, j: usize) -> f64 {
        self.xs[j]
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn nodes(&self) -> &[IBox] {
        &self.nodes
    }

    pub fn node(&self, j: usize) -> &IBox {
        &self.nodes[j]
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn lip(&self) -> f64 {
        self.lip
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn x0(&self) -> f64 {
        self.xs[self.anchor]
    }

    pub fn anchor_value(&self) -> &IBox {
        &self.anchor_value
    }

    pub fn ball(&self) -> &IBox {
        &self.ball
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn max_width(&self) -> f64 {
        self.nodes.iter().map(IBox::max_width).fold(0.0, f64::max)
    }

    /// `Y_{j0} ± M|x_j - x0|`, clipped to the ball.
    fn cone(&self, j: usize) -> IBox {
        let d = cell_width(self.x0(), self.xs[j]).max(cell_width(self.xs[j], self.x0()));
        let c = spread(&self.nodes[self.anchor], mul_up(self.lip, d));
        c.intersect(&self.ball).unwrap_or(c)
    }

    /// `[x_i, x_{i+1}]` and a box holding every tube function on that cell.
    pub fn cell_box(&self, i: usize) -> (Interval, IBox) {
        let reach = mul_up(self.slopes[i], cell_width(self.xs[i], self.xs[i + 1])) * 0.5;
        let hull = spread(&self.nodes[i].hull(&self.nodes[i + 1]), reach);
        let ycell = hull.intersect(&self.ball).unwrap_or(hull);
        (Interval::new(self.xs[i], self.xs[i + 1]), ycell)
    }

    /// A y-Lipschitz bound of `f` over the region swept by the tube, if
    /// one can be certified on every cell.
    pub fn lipschitz_y(&self, rhs: &Rhs) -> Option<f64> {
        (0..self.slopes.len()).try_fold(0.0f64, |acc, i| {
            let (x, y) = self.cell_box(i);
            rhs.lipschitz_y(x, &y, self.precision).map(|l| acc.max(l))
        })
    }

    fn image(&self, rhs: &Rhs) -> Image {
        let cells = self.slopes.len();
        let mut incr = Vec::with_capacity(cells);
        let mut f_mag = Vec::with_capacity(cells);
        for i in 0..cells {
            let h = Interval::point(self.xs[i + 1]) - Interval::point(self.xs[i]);
            let (xcell, ycell) = self.cell_box(i);
            let f = rhs.eval(xcell, &ycell, self.precision);
            f_mag.push(f.iter().map(|c| c.mag()).fold(0.0, f64::max));
            incr.push(IBox::new(f.iter().map(|&c| c * h).collect()));
        }
        let mut nodes = self.nodes.clone();
        let base = self.nodes[self.anchor].clone();
        let mut acc = base.clone();
        for (i, inc) in incr.iter().enumerate().skip(self.anchor) {
            acc = IBox::new(acc.iter().zip(inc.iter()).map(|(&s, &d)| s + d).collect()).coarsen(self.precision);
            nodes[i + 1] = acc.clone();
        }
        acc = base;
        for i in (0..self.anchor).rev() {
            acc = IBox::new(acc.iter().zip(incr[i].iter()).map(|(&s, &d)| s - d).collect()).coarsen(self.precision);
            nodes[i] = acc.clone();
        }
        for (j, n) in nodes.iter_mut().enumerate() {
            let cone = self.cone(j);
            // the exact image lies in both sets, so the intersection cannot be
            // empty; fall back to the cone against rounding accidents
            *n = n.intersect(&cone).unwrap_or(cone);
        }
        Image { nodes, f_mag }
    }

    /// `T#(t)`: an enclosure of the Picard image of every function in the tube.
    pub fn picard_step(&self, rhs: &Rhs) -> Tube {
        let img = self.image(rhs);
        Tube {
            nodes: img.nodes,
            slopes: img.f_mag.iter().map(|&m| m.min(self.lip)).collect(),
            ..self.clone()
        }
    }

    /// Intersects consecutive nodes with their slope-bounded neighbours, in a
    /// forward and a backward sweep. `None` if a node empties.
    fn propagate(mut self) -> Option<Tube> {
        let cells = self.slopes.len();
        for i in 0..cells {
            let r = mul_up(self.slopes[i], cell_width(self.xs[i], self.xs[i + 1]));
            self.nodes[i + 1] = self.nodes[i + 1].intersect(&spread(&self.nodes[i], r))?;
        }
        for i in (0..cells).rev() {
            let r = mul_up(self.slopes[i], cell_width(self.xs[i], self.xs[i + 1]));
            self.nodes[i] = self.nodes[i].intersect(&spread(&self.nodes[i + 1], r))?;
        }
        Some(self)
    }

    /// Narrows `t ← t ∩ T#(t)` followed by slope propagation, for at most
    /// `rounds` rounds or until no endpoint moves by more than one ulp.
    pub fn refine(&self, rhs: &Rhs, rounds: usize) -> Refined {
        let mut t = self.clone();
        for r in 1..=rounds.max(1) {
            let img = t.image(rhs);
            let mut next = t.clone();
            for (n, i) in next.nodes.iter_mut().zip(&img.nodes) {
                match n.intersect(i) {
                    Some(v) => *n = v,
                    None => return Refined::Empty,
                }
            }
            for (s, &m) in next.slopes.iter_mut().zip(&img.f_mag) {
                *s = s.min(m);
            }
            let Some(next) = next.propagate() else {
                return Refined::Empty;
            };
            let changed = t.nodes.iter().zip(&next.nodes).any(|(o, n)| box_moved(o, n));
            t = next;
            if !changed {
                return Refined::Narrowed(t, r);
            }
        }
        Refined::Narrowed(t, rounds.max(1))
    }

    /// Compares the tube with its Picard image.
    ///
    /// `Empty` when some node of the image misses the tube; `Inside` when every
    /// non-anchor node of the image lies in the interior of the tube node with
    /// one ulp to spare, the anchor node is contained and every cell's
    /// derivative bound respects the cell slope.
    pub fn check_inclusion(&self, rhs: &Rhs) -> InclusionVerdict {
        self.inclusion_with_image(rhs).0
    }

    /// Verdict plus `t ∩ T#(t)`, which keeps every solution of `t` and, after
    /// `Inside`, also the certified one.
    pub fn inclusion_with_image(&self, rhs: &Rhs) -> (InclusionVerdict, Option<Tube>) {
        let img = self.image(rhs);
        let mut narrowed = self.clone();
        let mut inside = true;
        for (j, (n, i)) in narrowed.nodes.iter_mut().zip(&img.nodes).enumerate() {
            let Some(v) = n.intersect(i) else {
                return (InclusionVerdict::Empty, None);
            };
            inside &= if j == self.anchor {
                i.subset_of(n)
            } else {
                i.iter().zip(n.iter()).all(|(a, b)| a.strictly_inside(*b))
            };
            *n = v;
        }
        for (s, &m) in narrowed.slopes.iter_mut().zip(&img.f_mag) {
            inside &= m <= *s;
            *s = s.min(m);
        }
        let verdict = if inside {
            InclusionVerdict::Inside
        } else {
            InclusionVerdict::Unknown
        };
        (verdict, Some(narrowed))
    }

    /// Enclosure of `y(x)` for every function in the tube.
    pub fn evaluate(&self, x: f64) -> Result<IBox, TubeError> {
        if !(self.a <= x && x <= self.b) {
            return Err(TubeError::OutOfRange {
                x,
                a: self.a,
                b: self.b,
            });
        }
        let j = self.xs.partition_point(|&v| v <= x) - 1;
        if self.xs[j] == x {
            return Ok(self.nodes[j].clone());
        }
        let s = self.slopes[j];
        let left = spread(&self.nodes[j], mul_up(s, cell_width(self.xs[j], x)));
        let right = spread(&self.nodes[j + 1], mul_up(s, cell_width(x, self.xs[j + 1])));
        Ok(left.intersect(&right).unwrap_or(left))
    }

    /// Splits node `node`, component `component` at its midpoint and
    /// propagates each half to the neighbours. A child whose propagation
    /// empties is returned unpropagated; refinement will discard it.
    pub fn bisect(&self, node: usize, component: usize) -> Result<(Tube, Tube), TubeError> {
        let c = self.nodes[node][component];
        if c.hi() <= c.lo().next_up().next_up() {
            return Err(TubeError::DegenerateSplit { node, component });
        }
        let (l, r) = c.split();
        let child = |half: Interval| {
            let mut t = self.clone();
            t.nodes[node][component] = half;
            if node == self.anchor {
                t.anchor_value[component] = half;
            }
            t.clone().propagate().unwrap_or(t)
        };
        Ok((child(l), child(r)))
    }

    /// The widest splittable node × component; ties go to the lowest node,
    /// then the lowest component.
    pub fn widest_site(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for (j, n) in self.nodes.iter().enumerate() {
            for (k, c) in n.iter().enumerate() {
                if c.hi() <= c.lo().next_up().next_up() {
                    continue;
                }
                let w = c.width();
                if best.is_none_or(|(_, _, bw)| w > bw) {
                    best = Some((j, k, w));
                }
            }
        }
        best.map(|(j, k, _)| (j, k))
    }

    /// Widens every non-anchor node by `2^{-rel_log2}` of its width plus
    /// `abs` plus a few ulps of its magnitude, clipped to the ball and the cone; slopes grow alike, capped at
    /// `M`. A superset of the tube, used to give inclusion tests slack.
    pub fn inflate(&self, rel_log2: i32, abs: f64) -> Tube {
        let rel = crate::interval::round::pow2(-rel_log2);
        let mut t = self.clone();
        for j in 0..t.nodes.len() {
            if j == t.anchor {
                continue;
            }
            let grown = IBox::new(
                t.nodes[j]
                    .iter()
                    .map(|c| c.inflate(add_up(add_up(mul_up(c.width(), rel), abs), mul_up(c.mag(), MAG_SLACK))))
                    .collect(),
            );
            let cone = t.cone(j);
            t.nodes[j] = grown.intersect(&cone).unwrap_or(cone);
        }
        for s in &mut t.slopes {
            *s = add_up(add_up(*s, mul_up(*s, rel)), abs).min(t.lip);
        }
        t
    }

    /// Nodewise hull with a tube on the same grid; the result contains the
    /// function sets of both.
    pub fn hull(&self, other: &Tube) -> Tube {
        assert_eq!(self.xs, other.xs, "hull needs a common grid");
        Tube {
            nodes: self.nodes.iter().zip(&other.nodes).map(|(a, b)| a.hull(b)).collect(),
            slopes: self.slopes.iter().zip(&other.slopes).map(|(a, b)| a.max(*b)).collect(),
            anchor_value: self.anchor_value.hull(&other.anchor_value),
            ..self.clone()
        }
    }

    /// `true` when the tube passes through `value` at every node, where
    /// `value(x)` is an enclosure of a candidate function at `x`.
    pub fn threads(&self, value: impl Fn(f64) -> IBox) -> bool {
        self.xs
            .iter()
            .zip(&self.nodes)
            .all(|(&x, n)| !value(x).is_disjoint(n))
    }

    /// CSV dump: header `x,lo_1,hi_1,...`, one row per node, exact decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for k in 1..=self.dim() {
            write!(out, ",lo_{k},hi_{k}").unwrap();
        }
        out.push('\n');
        for (x, n) in self.xs.iter().zip(&self.nodes) {
            out.push_str(&exact_decimal(*x));
            for c in n.iter() {
                write!(out, ",{},{}", exact_decimal(c.lo()), exact_decimal(c.hi())).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Same as [`Tube::initial`].
pub fn initial_tube(lb: &LocalBox, anchor_value: IBox, depth: u32, precision: Precision) -> Result<Tube, TubeError> {
    Tube::initial(lb, anchor_value, depth, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::instance::{select_local_box, Ball, IvpInstance, OpenSet, SelectConfig};

    fn rhs(text: &str) -> Rhs {
        Rhs::Expr(parse(text, 1).unwrap())
    }

    /// Local box with `[a, b] = [x - q, x + q]` built by hand.
    fn manual_lb(x: f64, y: f64, delta: f64, m: f64, q: f64) -> LocalBox {
        LocalBox {
            m_sel: 0,
            k_sel: 0,
            delta,
            x,
            y: vec![y],
            k_box: IBox::new(vec![Interval::centered(x, delta), Interval::centered(y, delta)]),
            m_bound: m,
            a: x - q,
            b: x + q,
        }
    }

    fn exp_lb() -> LocalBox {
        // [0, 1/2] with x0 = 1/4 and ball |y - 1| <= 1, M = e^{1/2}·2 + 1 bound
        manual_lb(0.25, 1.0, 1.0, 3.0, 0.25)
    }

    #[test]
    fn initial_cone_by_hand() {
        let inst = IvpInstance::new(
            rhs("0"),
            OpenSet::new(vec![Ball { center: vec![0.0, 0.0], radius: 1.0 }], 1).unwrap(),
            0.0,
            vec![0.0],
        )
        .unwrap();
        let lb = select_local_box(&inst, 0.0, &[0.0], &SelectConfig::default()).unwrap();
        let t = Tube::initial(&lb, IBox::point(&[0.0]), 1, Precision::MAX).unwrap();
        assert_eq!(t.xs(), &[-0.375, 0.0, 0.375]);
        let w = Interval::new(-0.375, 0.375);
        assert_eq!(t.nodes(), &[IBox::new(vec![w]), IBox::point(&[0.0]), IBox::new(vec![w])]);
        assert_eq!(t.check_inclusion(&rhs("0")), InclusionVerdict::Inside);
        let Refined::Narrowed(r, rounds) = t.refine(&rhs("0"), 30) else { panic!() };
        assert!(rounds <= 2);
        assert!(r.nodes().iter().all(|n| *n == IBox::point(&[0.0])));
    }

    #[test]
    fn interval_anchor_and_clipping() {
        let lb = manual_lb(0.0, 0.0, 0.5, 4.0, 0.125);
        let t = Tube::initial(&lb, IBox::new(vec![Interval::new(-0.05, 0.05)]), 2, Precision::MAX).unwrap();
        // node 0 at -1/8: cone radius 1/2 + 0.05 clipped to the ball
        assert_eq!(t.node(0)[0], Interval::new(-0.5, 0.5));
        assert_eq!(t.node(1)[0], Interval::new(-0.05, 0.05).inflate(0.25));
        let far = IBox::new(vec![Interval::new(0.4, 0.6)]);
        assert_eq!(Tube::initial(&lb, far, 2, Precision::MAX), Err(TubeError::AnchorOutsideBall));
        assert_eq!(Tube::initial(&lb, IBox::point(&[0.0]), 0, Precision::MAX), Err(TubeError::BadDepth(0)));
    }

    #[test]
    fn constant_rhs_integrates_exactly() {
        let lb = manual_lb(0.0, 0.0, 1.0, 2.0, 0.375);
        let t = Tube::initial(&lb, IBox::point(&[0.0]), 6, Precision::MAX).unwrap();
        let one = rhs("1");
        let s = t.picard_step(&one);
        for (x, n) in s.xs().iter().zip(s.nodes()) {
            assert!(n[0].contains(*x));
            assert!(n[0].width() <= 2.0 * f64::EPSILON * 64.0);
        }
        let Refined::Narrowed(r, _) = t.refine(&one, 10) else { panic!() };
        // a fully collapsed tube cannot hold its image strictly; slack can
        assert_eq!(r.check_inclusion(&one), InclusionVerdict::Unknown);
        assert_eq!(r.inflate(6, 1e-12).check_inclusion(&one), InclusionVerdict::Inside);
        // midway between nodes: slack at most M h / 2 plus node widths
        let h = r.node_x(1) - r.node_x(0);
        let x = r.node_x(40) + h / 2.0;
        let v = r.evaluate(x).unwrap()[0];
        assert!(v.contains(x));
        assert!(v.width() <= 2.0 * h / 2.0 + 1e-12);
        assert!(matches!(r.evaluate(0.5), Err(TubeError::OutOfRange { .. })));
        assert_eq!(r.evaluate(r.node_x(3)).unwrap(), r.node(3).clone());
    }

    #[test]
    fn exponential_after_twenty_steps() {
        let lb = manual_lb(0.0, 1.0, 1.0, 3.0, 0.5);
        let lb = LocalBox { a: 0.0, b: 0.5, x: 0.25, ..lb };
        // anchor at x0 = 1/4 carries e^{1/4}
        let e14 = Interval::new(0.25f64.exp().next_down(), 0.25f64.exp().next_up());
        let mut t = Tube::initial(&lb, IBox::new(vec![e14]), 10, Precision::MAX).unwrap();
        let f = rhs("y");
        for _ in 0..20 {
            t = t.picard_step(&f);
        }
        let at_half = t.node(1024)[0];
        let e = 0.5f64.exp();
        assert!(at_half.inflate(1e-15).contains(e), "{at_half:?}");
    }

    #[test]
    fn exponential_refine_contains_oracle() {
        let lb = exp_lb();
        let e14 = Interval::new(0.25f64.exp().next_down(), 0.25f64.exp().next_up());
        let t = Tube::initial(&lb, IBox::new(vec![e14]), 10, Precision::MAX).unwrap();
        let f = rhs("y");
        let Refined::Narrowed(r, _) = t.refine(&f, 60) else { panic!() };
        for (x, n) in r.xs().iter().zip(r.nodes()) {
            assert!(n[0].inflate(1e-12).contains(x.exp()), "x = {x}");
        }
        assert!(r.node(1024)[0].width() <= 1e-2);
        for (o, n) in t.nodes().iter().zip(r.nodes()) {
            assert!(n.subset_of(o));
        }
        let v = r.evaluate(0.3).unwrap()[0];
        assert!(v.inflate(1e-12).contains(0.3f64.exp()));
    }

    #[test]
    fn shifted_tube_is_empty() {
        let lb = exp_lb();
        let e14 = Interval::new(0.25f64.exp().next_down(), 0.25f64.exp().next_up());
        let t = Tube::initial(&lb, IBox::new(vec![e14]), 8, Precision::MAX).unwrap();
        let f = rhs("y");
        let Refined::Narrowed(r, _) = t.refine(&f, 60) else { panic!() };
        let mut shifted = r.clone();
        for (j, n) in shifted.nodes.iter_mut().enumerate() {
            if j != shifted.anchor {
                *n = IBox::new(vec![n[0] - Interval::point(0.5)]);
            }
        }
        assert_eq!(shifted.check_inclusion(&f), InclusionVerdict::Empty);
        assert_eq!(shifted.refine(&f, 5), Refined::Empty);
    }

    #[test]
    fn bisect_splits_and_propagates() {
        let lb = manual_lb(0.0, 0.0, 1.0, 2.0, 0.375);
        let t = Tube::initial(&lb, IBox::point(&[0.0]), 2, Precision::MAX).unwrap();
        assert_eq!(t.widest_site(), Some((0, 0)));
        let (l, r) = t.bisect(0, 0).unwrap();
        assert_eq!(l.node(0)[0], Interval::new(-0.75, 0.0));
        assert_eq!(r.node(0)[0], Interval::new(0.0, 0.75));
        // the neighbour is pulled toward the half within M h
        assert_eq!(l.node(1)[0], Interval::new(-0.375, 0.375));
        assert!(matches!(t.bisect(2, 0), Err(TubeError::DegenerateSplit { node: 2, component: 0 })));
    }

    #[test]
    fn csv_dump_is_exact() {
        let lb = manual_lb(0.0, 0.0, 1.0, 2.0, 0.375);
        let t = Tube::initial(&lb, IBox::point(&[0.0]), 1, Precision::MAX).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,lo_1,hi_1");
        assert_eq!(lines[1], "-0.375,-0.75,0.75");
        assert_eq!(lines[2], "0,0,0");
        assert_eq!(lines.len(), 4);
    }
}
