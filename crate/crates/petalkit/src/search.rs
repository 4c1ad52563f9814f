//! Breadth-first exploration of the move graph on canonical petal words.
//!
//! States are canonical words; neighbors come from
//! [`enumerate_legal_moves`] with additions capped by the petal bound.
//! Search runs from both endpoints by default (the move set is closed
//! under inverses), expanding whole levels of the smaller frontier and
//! stopping once the completed depths certify that the best meeting found
//! is a shortest path. Neighbor enumeration is sorted and frontiers are
//! kept in discovery order, so results are deterministic regardless of how
//! the level expansion is scheduled.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::alexander_of_petal;
use crate::moves::{enumerate_legal_moves, invert_move, Move, MoveError, MoveScript};
use crate::perm::PetalPermutation;

/// Bounds and switches for [`find_path`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum word length explored; additions growing a word past this are
    /// not enumerated. Must be odd and at least the longer endpoint.
    pub petal_bound: usize,
    /// Maximum number of moves in a returned path.
    pub depth_bound: usize,
    /// Search from both endpoints, meeting in the middle.
    pub bidirectional: bool,
    /// Reject endpoint pairs with different Alexander results before
    /// searching; turns a guaranteed timeout into a definite negative.
    pub invariant_prefilter: bool,
}

impl SearchConfig {
    pub fn new(petal_bound: usize, depth_bound: usize) -> Self {
        SearchConfig {
            petal_bound,
            depth_bound,
            bidirectional: true,
            invariant_prefilter: true,
        }
    }

    /// Defaults sized to the endpoints: room for a couple of net additions
    /// and a moderate move budget.
    pub fn default_for(start: &PetalPermutation, goal: &PetalPermutation) -> Self {
        Self::new(start.len().max(goal.len()) + 6, 10)
    }

    fn validate(&self, start: &PetalPermutation, goal: &PetalPermutation) -> Result<(), SearchError> {
        if self.petal_bound.is_multiple_of(2) {
            return Err(SearchError::InvalidConfig(format!(
                "petal_bound must be odd, got {}",
                self.petal_bound
            )));
        }
        if self.petal_bound < start.len().max(goal.len()) {
            return Err(SearchError::InvalidConfig(format!(
                "petal_bound {} is smaller than the endpoints ({}, {})",
                self.petal_bound,
                start.len(),
                goal.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("alexander invariants of the endpoints differ; no move path can exist")]
    InvariantMismatch,
    #[error("no path within petal bound {petal_bound} and depth bound {depth_bound}")]
    BoundsExhausted { petal_bound: usize, depth_bound: usize },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

impl SearchError {
    pub fn code(&self) -> &'static str {
        match self {
            SearchError::InvariantMismatch => "InvariantMismatch",
            SearchError::BoundsExhausted { .. } => "BoundsExhausted",
            SearchError::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("illegal move at step {step}: {source}")]
    IllegalMoveAtStep { step: usize, source: MoveError },
    #[error("replay mismatch at step {0}: listed word differs from the move result")]
    ReplayMismatchAtStep(usize),
    #[error("alexander result changed at step {0}")]
    InvariantChangedAtStep(usize),
}

impl VerifyError {
    pub fn code(&self) -> &'static str {
        match self {
            VerifyError::IllegalMoveAtStep { .. } => "IllegalMoveAtStep",
            VerifyError::ReplayMismatchAtStep(_) => "ReplayMismatchAtStep",
            VerifyError::InvariantChangedAtStep(_) => "InvariantChangedAtStep",
        }
    }
}

/// A move sequence with its replay: `steps[k]` is the word after
/// `moves[k]`. Serializes as `{"script": [...], "steps": [...]}`, the move
/// script extended with the intermediate words for auditability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovePath {
    pub start: PetalPermutation,
    pub moves: Vec<Move>,
    pub steps: Vec<PetalPermutation>,
}

impl MovePath {
    /// Builds a path from a script by replaying it.
    pub fn from_script(script: MoveScript) -> Result<Self, MoveError> {
        let steps = script.replay()?;
        Ok(MovePath {
            start: script.start,
            moves: script.moves,
            steps,
        })
    }

    pub fn end(&self) -> &PetalPermutation {
        self.steps.last().unwrap_or(&self.start)
    }

    pub fn script(&self) -> MoveScript {
        MoveScript::new(self.start.clone(), self.moves.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct MovePathRepr {
    script: MoveScript,
    steps: Vec<Vec<u32>>,
}

impl Serialize for MovePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MovePathRepr {
            script: self.script(),
            steps: self.steps.iter().map(|p| p.word().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MovePath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MovePathRepr::deserialize(d)?;
        let steps = repr
            .steps
            .into_iter()
            .map(PetalPermutation::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if steps.len() != repr.script.moves.len() {
            return Err(serde::de::Error::custom(
                "steps list must parallel the move list",
            ));
        }
        Ok(MovePath {
            start: repr.script.start,
            moves: repr.script.moves,
            steps,
        })
    }
}

/// Token that two petal permutations share exactly when their canonical
/// words are equal; stable across runs.
pub fn canonical_key(sigma: &PetalPermutation) -> String {
    sigma.to_string()
}

/// Uniform sample over the `(2n)!` canonical words of length `2n+1`,
/// deterministic per seed (Fisher-Yates over the non-leading entries).
pub fn random_petal(n: usize, seed: u64) -> PetalPermutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<u32> = (0..=2 * n as u32).collect();
    for i in (2..word.len()).rev() {
        let j = rng.gen_range(1..=i);
        word.swap(i, j);
    }
    PetalPermutation::new(word).expect("shuffle preserves validity")
}

struct Node {
    depth: usize,
    parent: Option<(Vec<u32>, Move)>,
}

struct Wavefront {
    visited: HashMap<Vec<u32>, Node>,
    frontier: Vec<Vec<u32>>,
    depth: usize,
}

impl Wavefront {
    fn seeded(start: &PetalPermutation) -> Self {
        let key = start.word().to_vec();
        let mut visited = HashMap::new();
        visited.insert(
            key.clone(),
            Node {
                depth: 0,
                parent: None,
            },
        );
        Wavefront {
            visited,
            frontier: vec![key],
            depth: 0,
        }
    }

    /// Chain of `(state_before, move)` edges from `key` back to the seed,
    /// ordered seed-first.
    fn chain_to(&self, key: &[u32]) -> Vec<(PetalPermutation, Move)> {
        let mut edges = Vec::new();
        let mut cur = key.to_vec();
        while let Some((parent, mv)) = &self.visited[&cur].parent {
            edges.push((
                PetalPermutation::new(parent.clone()).expect("visited keys are canonical"),
                *mv,
            ));
            cur = parent.clone();
        }
        edges.reverse();
        edges
    }
}

const PARALLEL_FRONTIER: usize = 256;

type NeighborList = Vec<(Vec<u32>, Vec<(Move, PetalPermutation)>)>;

fn expand(
    side: &mut Wavefront,
    other: &Wavefront,
    petal_bound: usize,
    depth_bound: usize,
    best: &mut Option<(usize, Vec<u32>)>,
) {
    let frontier = std::mem::take(&mut side.frontier);
    let neighbor_lists: NeighborList = if frontier.len() >= PARALLEL_FRONTIER {
        frontier
            .par_iter()
            .map(|key| {
                let sigma = PetalPermutation::new(key.clone()).expect("canonical key");
                (key.clone(), enumerate_legal_moves(&sigma, Some(petal_bound)))
            })
            .collect()
    } else {
        frontier
            .iter()
            .map(|key| {
                let sigma = PetalPermutation::new(key.clone()).expect("canonical key");
                (key.clone(), enumerate_legal_moves(&sigma, Some(petal_bound)))
            })
            .collect()
    };

    let new_depth = side.depth + 1;
    let mut next = Vec::new();
    for (key, neighbors) in neighbor_lists {
        for (mv, result) in neighbors {
            let rk = result.word().to_vec();
            if side.visited.contains_key(&rk) {
                continue;
            }
            side.visited.insert(
                rk.clone(),
                Node {
                    depth: new_depth,
                    parent: Some((key.clone(), mv)),
                },
            );
            if let Some(o) = other.visited.get(&rk) {
                let total = new_depth + o.depth;
                if total <= depth_bound && best.as_ref().is_none_or(|(t, _)| total < *t) {
                    *best = Some((total, rk.clone()));
                }
            }
            next.push(rk);
        }
    }
    side.frontier = next;
    side.depth = new_depth;
}

/// Finds a shortest move path from `start` to `goal` within the configured
/// bounds. Deterministic for a given configuration; failure within bounds
/// is [`SearchError::BoundsExhausted`] and proves nothing about the knots.
pub fn find_path(
    start: &PetalPermutation,
    goal: &PetalPermutation,
    cfg: &SearchConfig,
) -> Result<MovePath, SearchError> {
    cfg.validate(start, goal)?;
    if start == goal {
        return Ok(MovePath {
            start: start.clone(),
            moves: Vec::new(),
            steps: Vec::new(),
        });
    }
    if cfg.invariant_prefilter {
        let a = alexander_of_petal(start).expect("valid word");
        let b = alexander_of_petal(goal).expect("valid word");
        if a != b {
            return Err(SearchError::InvariantMismatch);
        }
    }

    let mut fwd = Wavefront::seeded(start);
    let mut bwd = Wavefront::seeded(goal);
    let mut best: Option<(usize, Vec<u32>)> = None;

    loop {
        let horizon = best
            .as_ref()
            .map(|(t, _)| *t)
            .unwrap_or(usize::MAX)
            .min(cfg.depth_bound);
        if fwd.depth + bwd.depth >= horizon {
            break;
        }
        let side_is_fwd = if !cfg.bidirectional {
            true
        } else if fwd.frontier.is_empty() {
            false
        } else if bwd.frontier.is_empty() {
            true
        } else {
            fwd.frontier.len() <= bwd.frontier.len()
        };
        let (side, other) = if side_is_fwd {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        if side.frontier.is_empty() {
            break; // reachable set exhausted within bounds
        }
        expand(side, other, cfg.petal_bound, cfg.depth_bound, &mut best);
    }

    let Some((_, meeting)) = best else {
        return Err(SearchError::BoundsExhausted {
            petal_bound: cfg.petal_bound,
            depth_bound: cfg.depth_bound,
        });
    };

    let mut moves: Vec<Move> = fwd.chain_to(&meeting).into_iter().map(|(_, mv)| mv).collect();
    // The backward chain reads goal -> meeting; invert each edge to walk
    // meeting -> goal.
    for (before, mv) in bwd.chain_to(&meeting).into_iter().rev() {
        let inv = invert_move(&mv, &before).expect("edge moves are applicable");
        moves.push(inv);
    }

    let script = MoveScript::new(start.clone(), moves);
    let path = MovePath::from_script(script).expect("search edges replay");
    debug_assert_eq!(path.end(), goal);
    Ok(path)
}

/// Replays a path, checking move legality and the recorded intermediate
/// words, and optionally that the Alexander result never changes. Step
/// indices are 0-based.
pub fn verify_path(path: &MovePath, check_invariants: bool) -> Result<(), VerifyError> {
    if path.steps.len() != path.moves.len() {
        return Err(VerifyError::ReplayMismatchAtStep(
            path.moves.len().min(path.steps.len()),
        ));
    }
    let mut cur = path.start.clone();
    let mut prev_inv = if check_invariants {
        Some(alexander_of_petal(&cur).expect("valid word"))
    } else {
        None
    };
    for (step, mv) in path.moves.iter().enumerate() {
        let next = mv
            .apply(&cur)
            .map_err(|source| VerifyError::IllegalMoveAtStep { step, source })?;
        if next != path.steps[step] {
            return Err(VerifyError::ReplayMismatchAtStep(step));
        }
        if let Some(prev) = &prev_inv {
            let inv = alexander_of_petal(&next).expect("valid word");
            if inv != *prev {
                return Err(VerifyError::InvariantChangedAtStep(step));
            }
            prev_inv = Some(inv);
        }
        cur = next;
    }
    Ok(())
}
