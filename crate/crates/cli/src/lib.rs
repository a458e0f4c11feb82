//! Document schema and output rendering for the `beurling` binary, exposed
//! as a library so integration tests can exercise the grammar directly.

pub mod output;
pub mod schema;
