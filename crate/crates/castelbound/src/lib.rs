//! Exact tools for Castelnuovo-type genus bounds on threefolds: tilt-stability
//! walls, closed-form bounds, low-degree certification, the asymptotic constant
//! chain and Gopakumar-Vafa / Pandharipande-Thomas series.

pub mod bounds;
pub mod certifier;
pub mod cli;
pub mod constants;
pub mod error;
pub mod gvseries;
pub mod numerics;
pub mod svg;
pub mod targets;
pub mod tiltwalls;

pub use error::{Error, Result};
pub use numerics::{Rat, Surd};
