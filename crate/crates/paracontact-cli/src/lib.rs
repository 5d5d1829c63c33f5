//! Model-file schema and report types behind the `paracontact` binary,
//! exposed as a library so integration tests can round-trip reports.

pub mod model;
pub mod report;
