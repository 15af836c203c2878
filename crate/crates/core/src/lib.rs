//! Construction and analysis of the orbital (Schreier) graphs of spinal
//! groups acting on `d`-ary rooted trees.
//!
//! A spinal group is generated by the rooted rotation of order `d` together
//! with a family of spinal tree automorphisms directed by an eventually
//! periodic sequence of epimorphisms `(Z/d)^m -> Z/d`. The crate builds the
//! finite level graphs both directly from the action and by a recursive
//! block gluing, builds finite balls of the infinite orbital graphs on the
//! tree boundary, classifies their ends, constructs the limit graphs that
//! complete the space of orbital graphs, and decides rooted and unrooted
//! isomorphism of boundary graphs through an explicit combinatorial
//! criterion cross-checked by a backtracking oracle.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads.

pub mod action;
pub mod algebra;
pub mod boundary;
pub mod error;
pub mod graph;
pub mod isomorphism;
pub mod words;

pub use action::{
    act_point, act_rooted_point, act_rooted_word, act_spinal_point, act_spinal_word, act_word,
    fixed_by, fixed_by_all, GeneratorLabel,
};
pub use algebra::{
    all_b_elements, dihedral, fabrykowski_gupta, grigorchuk, grigorchuk_p, preset, sunic, AutB,
    BElement, Epimorphism, OmegaSequence, PSymbol, Params, PresetArgs, SpinalGroup,
};
pub use boundary::{
    annulus_components, ends, level_copy, limit_graph_ball, orbit_ball,
    schreier_map_continuous_at, spinal_block_at, verify_ball_identities, CoverVertex, Ends,
};
pub use error::{Error, Result};
pub use graph::{
    bfs_distances, diameter, equal_labeled, from_json, interior_vertices, level_graph_direct,
    level_graph_recursive, loop_block, pruned_level_graph, rotation_block, spinal_block, star,
    to_dot, to_json, Edge, LabeledMultigraph, RootedGraph,
};
pub use isomorphism::{
    assemble_blocks, block_class, compatible, labeled_rooted_iso, transport, unlabeled_rooted_iso,
    unrooted_witness, verify_transport_ball, witness_letter_position, zero_blocks,
    BlockDecomposition, BlockTail, CompatibilityVerdict, WitnessOutcome,
};
pub use words::{words_of_length, BoundaryPoint, FiniteWord};
