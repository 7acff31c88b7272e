//! Output formats, lattice diagrams and comparison with the reference tables.

pub mod catalog_file;
pub mod dot;
pub mod fixture;
pub mod render;

pub use dot::{render_lattice_dot, validate_dot, DotError, DotSummary};
pub use fixture::{diff_against_fixture, fixture_for, CellStatus, DiffStatus, FixtureDiff, FixtureTable};
pub use render::{render, Format, ReportSet};
