use crate::expr::RhsDef;
use crate::gadgets::GadgetRef;
use crate::interval::{IBox, Interval, Precision};

/// A right-hand side `f(x, y)`, either parsed or built in.
#[derive(Debug, Clone, PartialEq)]
pub enum Rhs {
    Expr(RhsDef),
    Gadget(GadgetRef),
}

impl Rhs {
    pub fn dim(&self) -> usize {
        match self {
            Rhs::Expr(r) => r.dim(),
            Rhs::Gadget(_) => 1,
        }
    }

    /// Enclosure of `f` over `x * y`; `y` has length `dim()`.
    pub fn eval(&self, x: Interval, y: &IBox, prec: Precision) -> IBox {
        debug_assert_eq!(y.dim(), self.dim());
        match self {
            Rhs::Expr(r) => r.eval_box(&IBox::prepend(x, y), prec),
            Rhs::Gadget(g) => IBox::new(vec![g.eval(x, y[0], prec)]),
        }
    }

    /// Bound on the y-Lipschitz constant of `f` over `x * y`, when one can
    /// be certified. Built-in gadgets are never certified.
    pub fn lipschitz_y(&self, x: Interval, y: &IBox, prec: Precision) -> Option<f64> {
        match self {
            Rhs::Expr(r) => r.lipschitz_y(&IBox::prepend(x, y), prec),
            Rhs::Gadget(_) => None,
        }
    }

    /// Enclosure over a combined `(x, y_1, ..., y_n)` box.
    pub fn eval_joint(&self, b: &IBox, prec: Precision) -> IBox {
        let y = IBox::new(b.components()[1..].to_vec());
        self.eval(b[0], &y, prec)
    }
}

impl From<RhsDef> for Rhs {
    fn from(r: RhsDef) -> Self {
        Rhs::Expr(r)
    }
}

impl From<GadgetRef> for Rhs {
    fn from(g: GadgetRef) -> Self {
        Rhs::Gadget(g)
    }
}
