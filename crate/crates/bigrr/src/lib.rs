//! Bipartite regular representations of finite groups.
//!
//! A pair `(R, M)` — a finite group `R` with an index-2 subgroup `M` — is
//! probed for bipartite digraphical/graphical regular representations:
//! Cayley digraphs `Cay(R, S)` with connection set `S ⊆ R∖M` whose full
//! automorphism group is exactly the right-regular copy of `R`.
//!
//! The crate provides multiplication-table groups ([`group`]), group
//! automorphism search ([`aut`]), the half-inverting-automorphism
//! obstruction with constructive witnesses ([`obstruction`]), Cayley
//! digraphs ([`cayley`]) and their automorphism groups via
//! individualization-refinement ([`graph_aut`]), randomized/exhaustive
//! connection-set search and counting-lemma checks ([`search`]),
//! asymptotic count bounds ([`bounds`]), and a catalog of small groups
//! with embedded reference classifications ([`catalog`], [`tables`]).

pub mod aut;
pub mod bounds;
pub mod catalog;
pub mod cayley;
pub mod graph_aut;
pub mod group;
pub mod obstruction;
pub mod rng;
pub mod search;
pub mod tables;
