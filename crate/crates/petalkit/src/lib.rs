//! Petal permutations of knots: the move calculus (trivial petal
//! additions/deletions, crossing exchanges), stem diagrams and their planar
//! crossing data, Alexander-polynomial invariants, and breadth-first search
//! over the move graph.
//!
//! The core value types are [`PetalPermutation`] (a cyclic odd-length word
//! of strand heights, stored canonically) and [`StemPermutation`] (the
//! even-length axis-level word of a stem diagram). Everything here is an
//! immutable value and every operation is a pure function, so values can be
//! shared and evaluated concurrently without coordination.

pub mod diagram;
pub mod invariants;
pub mod laurent;
pub mod moves;
pub mod perm;
pub mod search;

pub use diagram::{
    build_diagram, crossing_height, crossing_pairs, petal_to_diagram, to_gauss_code, to_pd_code,
    Crossing, DiagramError, GaussCode, Height, Passage, PdCode, ReducedStemDiagram,
};
pub use invariants::{
    alexander_from_diagram, alexander_of_petal, alexander_of_stem, AlexanderResult, InvariantError,
};
pub use laurent::LaurentPolynomial;
pub use moves::{
    apply_crossing_exchange, apply_trivial_addition, apply_trivial_deletion, enumerate_legal_moves,
    find_deletable_pairs, invert_move, validate_crossing_exchange, CrossingExchange, Move,
    MoveError, MoveScript, Orientation, TrivialAddition, TrivialDeletion,
};
pub use perm::{Pairing, PermError, PetalPair, PetalPermutation, Rotation, Side, StemPermutation, Strand};
pub use search::{
    canonical_key, find_path, random_petal, verify_path, MovePath, SearchConfig, SearchError,
    VerifyError,
};
