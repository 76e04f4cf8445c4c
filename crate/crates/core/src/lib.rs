//! Open book decompositions of closed oriented 3-manifolds, presented by a
//! page surface and a factorization of the monodromy into Dehn twists.

pub mod certificates;
pub mod curve;
pub mod error;
pub mod mcg;
pub mod open_book;
pub mod snf;
pub mod standard;
pub mod surface;
pub mod word;

pub use curve::{ArcClass, CurveClass, MinimalPosition, SignData};
pub use error::{Error, Result};
pub use mcg::{Twist, TwistWord};
pub use open_book::OpenBook;
pub use snf::AbelianGroup;
pub use standard::{standard_curves, NamedCurveSystem};
pub use surface::{Letter, Surface, SurfaceId};
