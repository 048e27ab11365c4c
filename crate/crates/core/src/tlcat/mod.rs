//! The Temperley-Lieb category with loop value `-q - q⁻¹`, and its
//! realization on graded vector spaces built from a modulated graph.

mod diagram;
mod element;
mod expr;
mod functor;
mod jw;

pub use diagram::{tl_basis, TLDiagram};
pub use element::{tl_compose, tl_tensor, TLElement};
pub use expr::{parse_tl_expression, GradedMap, TlExpr};
pub use functor::{functor_image, tl_evaluate, unit, GradedSpaceRep};
pub use jw::jones_wenzl;
