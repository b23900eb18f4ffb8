//! Deterministic fixtures and random graph corpora shared by the test
//! suites. Everything here is seeded; two runs produce identical graphs.

pub mod corpus;
pub mod fixtures;
