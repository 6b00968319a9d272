//! Common finite covers of finite graphs and graphs of finite objects.

pub mod ball_system;
pub mod bounds;
pub mod cli;
pub mod cover_builder;
pub mod error;
pub mod gluing;
pub mod graph;
pub mod io;
pub mod groupoid;
pub mod iso;
pub mod local_iso;
pub mod object_graphs;
pub mod oracle;
pub mod refinement;
pub mod regular;
pub mod star_system;
pub mod universal_cover;

pub use error::{Error, Result};
