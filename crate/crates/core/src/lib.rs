//! Local-ring invariants of explicitly presented local rings
//! `A = (k[x]/I)` localized at the origin, together with checks of the
//! uniform regularity, relation-type and postulation bounds that hold for
//! generalized Cohen-Macaulay rings.

pub mod error;
pub mod poly;
pub mod ideal;
pub mod local;
pub mod config;
pub mod bounds;
pub mod invariants;
pub mod graded;
pub mod rees;
pub mod harness;
pub mod report;

pub use error::{EngineError, Result};
