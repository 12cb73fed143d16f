//! Core library for Git-native collaborative RDF vocabulary development.
//!
//! The crate is organized around a small RDF data model ([`turtle`]) with a
//! deterministic "one triple per line" serialization, and tooling layered on
//! top of it: semantic diffs and activity classification ([`semdiff`]),
//! modeling-quality checks ([`lint`]), HTML documentation ([`docgen`]) and
//! role/branch commit policies ([`policy`]).

pub mod docgen;
pub mod lint;
pub mod policy;
pub mod semdiff;
pub mod turtle;
pub mod vocab;
