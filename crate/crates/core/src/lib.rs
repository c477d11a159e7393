//! Finite presentations of fundamental groups of glued configurations.
//!
//! A [`Configuration`](devissage::Configuration) describes a connected space
//! combinatorially: normalization components, connected pieces of the singular
//! locus, and the preimage pieces joining them, each carrying a presented
//! group and the two maps out of the preimage groups. From it the crate
//! assembles a presentation of the fundamental group in two independent ways
//! (a spanning-tree graph-of-groups presentation and a recursive split along
//! singular pieces) and checks both against covers enumerated directly as
//! descent data.
//!
//! - [`group`]: words, presentations, homomorphism enumeration into permutation groups.
//! - [`vk`]: the amalgam-with-conjugators construction and its equivalent forms.
//! - [`devissage`]: configurations, incidence graphs, assembly, discreteness verdicts.
//! - [`cover`]: descent tuples, their enumeration, and the dictionary with permutation actions.
//! - [`corpus`]: the reference configurations used by tests, benches and the CLI.

pub mod corpus;
pub mod cover;
pub mod devissage;
pub mod exec;
pub mod group;
pub mod vk;

pub use exec::Execution;
