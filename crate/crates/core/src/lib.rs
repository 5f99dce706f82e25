pub mod expr;
pub mod extender;
pub mod gadgets;
pub mod instance;
pub mod interval;
pub mod io;
pub mod rhs;
pub mod solver;
pub mod suites;
pub mod tube;

pub use expr::{parse, Expr, ParseError, RhsDef};
pub use extender::{extend, extend_from, step_lower_bound_check, ExtendError, ExtensionState, RoundRecord, Side, SideStatus};
pub use gadgets::{decode_llpo, BitStream, DecodeConfig, DecodeReport, GadgetError, GadgetRef};
pub use instance::{select_local_box, Ball, InstanceError, IvpInstance, LocalBox, OpenSet, SelectConfig};
pub use interval::{IBox, Interval, Precision};
pub use io::{InstanceFile, IoError};
pub use rhs::Rhs;
pub use solver::{enclose_all, enclose_from, solve_unique, SolveConfig, SolveError, SolveResult, TubeRecord};
pub use tube::{InclusionVerdict, Tube, TubeError};
