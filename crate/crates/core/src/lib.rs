//! Computation, classification and rendering of branch cuts for functions
//! of a single complex variable built from elementary multi-valued pieces.
//!
//! The crate is organized around five stages:
//!
//! * [`expr`] — expression trees, parser and printer;
//! * [`eval`] — principal-value floating-point evaluation and jump probing;
//! * [`catalog`] — the table of defining cuts for every supported symbol;
//! * [`engine`] — the cut computation itself (semi-algebraic plane solving
//!   for polynomial arguments, symbolic/numeric inversion otherwise);
//! * [`filter`] — numeric classification of candidate cuts as confirmed,
//!   possibly spurious, or spurious;
//! * [`viz`] — deterministic SVG/PPM/CSV renderers for the three plot modes.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod eval;
pub mod expr;
pub mod filter;
pub mod poly;
pub mod rat;
pub mod viz;

pub use catalog::{ArccotConvention, Catalog, CutFunction, DefiningCut};
pub use engine::{branch_cuts, union_cuts, Approach, Cut, CutGeometry, CutSet, CutStatus, EngineConfig};
pub use error::{EngineError, EvalError, ParseError, SampleError};
pub use eval::{eval, jump_probe, EvalCtx, JumpReport};
pub use expr::{parse, Expr, FuncSymbol};
pub use filter::{classify, ClassifyConfig, ClassifyOutcome, SpuriousVerdict};
pub use poly::{polynomial_argument, re_im_decompose, BiPoly, RealBiPoly, UniPoly};
pub use rat::{Extended, GaussianRat, Interval, Rat};
pub use viz::{plot2d, plot32d, plot3d, PlotPart, SurfaceGrid, Window};
