//! Corpus ingestion, parallel invariant evaluation with caching, distinct
//! value tables and the growth-constant report, on top of
//! `knot-detect-core`.

pub mod corpus;
pub mod evaluate;
pub mod growth_report;
pub mod report;
