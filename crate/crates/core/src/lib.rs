//! Computation with finite metric value sets (MVSs).
//!
//! The crate covers axiom checking of operation tables, the induced relations
//! `⊴` and `◁`, congruences and quotients, homomorphisms, the topologies
//! induced by quasimetric functions, metrizability search, and word
//! presentations with a bounded word-problem engine.

pub mod algebra;
pub mod congruence;
pub mod fixtures;
pub mod relation;
pub mod sub;

pub use algebra::{
    check_axioms, order_class, validate, validate_with, Axiom, AxiomReport, ElemId, FiniteMvs,
    Limits, MvsError, OrderClass, RawTable, TableError,
};
pub use congruence::{
    congruence_generated_by, is_congruence, mutual_order_congruence, quotient, CongruenceWitness,
    Quotient,
};
pub use relation::ElemRelation;
pub use sub::{adjoin_infinity, is_sub_mvs, restrict, Extension, SubMvs, SubMvsFailure};

pub mod iso;
pub mod morphism;

pub use iso::find_isomorphism;
pub use morphism::{
    canonical_projection, compose, first_isomorphism, make_hom, Factorization, HomError, MvsMap,
};

pub mod metrize;
pub mod quasimetric;
pub mod topology;

pub use metrize::{search_metrizable, SearchOptions};
pub use quasimetric::{
    are_equivalent, canonical_quasimetric, check_quasimetric, induced_topology, is_finer,
    open_ball, quotient_metrize, transform, DistanceTable, QuasimetricReport, QuasimetricTable,
    TopologyError,
};
pub use topology::{FiniteTopology, PointSet};

pub mod words;

pub use words::{Presentation, Relation, Tri, Word, WordError};

pub mod cli;
pub mod format;
pub mod generate;
