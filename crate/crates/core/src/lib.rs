//! Alternating signed bipartite graphs and difference-k edge colourings.
//!
//! A difference-1 colouring of a graph is a blue/red edge colouring with
//! `deg_B(v) - deg_R(v) = 1` at every vertex; an ASBG additionally admits
//! vertex orders under which every vertex's incident edges alternate in
//! colour, starting and ending blue. This crate provides:
//!
//! - the bipartite graph model with canonical JSON serialization ([`graph`]),
//! - alternating sign matrix validation, conversion, and counting ([`asm`]),
//! - structural analysis: leaf-twig reduction, skeletons, vertex typing,
//!   limbs, common cycle classes, cactus detection ([`structure`]),
//! - integer max-flow and degree-constrained subgraphs ([`flow`]),
//! - the difference-1 decision and construction pipeline ([`colouring`]),
//! - configurations and the rotation structure of colouring spaces
//!   ([`config_space`]),
//! - deliberately simple brute-force reference implementations ([`oracle`]),
//! - deterministic random instance generators ([`generate`]) and a gallery of
//!   named small graphs ([`gallery`]).

pub mod asm;
pub mod colouring;
pub mod config_space;
pub mod error;
pub mod flow;
pub mod gallery;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Bipartition, CandidateReport, Colour, ColouredGraph, Colouring, Edge, Graph};
