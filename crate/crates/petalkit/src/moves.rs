//! The three petal moves: trivial petal addition, trivial petal deletion,
//! and crossing exchange.
//!
//! Additions insert an adjacent consecutive-level pair `m (m+1)` or
//! `(m+1) m` into a chosen rotation of the word, shifting existing levels
//! `>= m` up by two. Deletions are their inverses. A crossing exchange swaps
//! the positions of the values `m, m+1` and of `w, w+1`; it is legal when
//! two same-side pairs have endpoint sets `{m, w+1}` and `{m+1, w}` and no
//! pair on that side straddles the interval `[m+2, w-1]`. All three moves
//! preserve the knot type.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{PermError, PetalPermutation, Rotation, Side};

/// Order of the inserted pair: `m (m+1)` or `(m+1) m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "asc")]
    Ascending,
    #[serde(rename = "desc")]
    Descending,
}

/// Insert the pair after index `pos` of the word selected by `rotation`;
/// `pos = len-1` appends at the end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TrivialAddition {
    pub rotation: Rotation,
    pub pos: usize,
    pub m: u32,
    pub orient: Orientation,
}

/// Delete the cyclically adjacent pair at `(pos, pos+1)` of the word
/// selected by `rotation`; the two entries must have consecutive values.
/// The wrap-around pair `(len-1, 0)` is permitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TrivialDeletion {
    pub rotation: Rotation,
    pub pos: usize,
}

/// Swap the positions of values `m, m+1` and of `w, w+1` in the word
/// selected by `rotation`, subject to the pairing conditions on `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrossingExchange {
    pub rotation: Rotation,
    pub side: Side,
    pub m: u32,
    pub w: u32,
}

/// One petal move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Move {
    #[serde(rename = "add")]
    Add(TrivialAddition),
    #[serde(rename = "del")]
    Del(TrivialDeletion),
    #[serde(rename = "xchg")]
    Xchg(CrossingExchange),
}

impl Move {
    pub fn apply(&self, sigma: &PetalPermutation) -> Result<PetalPermutation, MoveError> {
        match self {
            Move::Add(a) => apply_trivial_addition(sigma, a),
            Move::Del(d) => apply_trivial_deletion(sigma, d),
            Move::Xchg(x) => apply_crossing_exchange(sigma, x),
        }
    }

    pub fn invert(&self, before: &PetalPermutation) -> Result<Move, MoveError> {
        invert_move(self, before)
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::Add(a) => write!(
                f,
                "add rotation={} pos={} m={} orient={}",
                a.rotation.0,
                a.pos,
                a.m,
                match a.orient {
                    Orientation::Ascending => "asc",
                    Orientation::Descending => "desc",
                }
            ),
            Move::Del(d) => write!(f, "del rotation={} pos={}", d.rotation.0, d.pos),
            Move::Xchg(x) => write!(
                f,
                "xchg rotation={} side={} m={} w={}",
                x.rotation.0, x.side, x.m, x.w
            ),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    InvalidRotation(PermError),
    #[error("insertion position {pos} out of range for word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("insertion level {m} out of range 0..={max}")]
    LevelOutOfRange { m: u32, max: u32 },
    #[error("entries at positions {pos},{next} have values {a},{b}, which are not consecutive")]
    NotConsecutivePair { pos: usize, next: usize, a: u32, b: u32 },
    #[error("cannot delete a petal from the single-petal word")]
    SingletonUnderflow,
    #[error("no {side} pairs match the endpoint sets required by the exchange m={m}, w={w}")]
    PairsNotFound { side: Side, m: u32, w: u32 },
    #[error("level {level} lies on the basepoint pair, which cannot take part in an exchange")]
    BasepointPairInvolved { level: u32 },
    #[error("pair ({lo},{hi}) straddles the exchange interval for m={m}, w={w}")]
    NestingViolation { lo: u32, hi: u32, m: u32, w: u32 },
    #[error("exchange requires w >= m+2, got m={m}, w={w}")]
    BadLevels { m: u32, w: u32 },
    #[error("move is not applicable to the given word: {0}")]
    NotApplicable(String),
}

impl MoveError {
    /// Stable machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            MoveError::InvalidRotation(_) => "InvalidRotation",
            MoveError::PositionOutOfRange { .. } => "PositionOutOfRange",
            MoveError::LevelOutOfRange { .. } => "LevelOutOfRange",
            MoveError::NotConsecutivePair { .. } => "NotConsecutivePair",
            MoveError::SingletonUnderflow => "SingletonUnderflow",
            MoveError::PairsNotFound { .. } => "PairsNotFound",
            MoveError::BasepointPairInvolved { .. } => "BasepointPairInvolved",
            MoveError::NestingViolation { .. } => "NestingViolation",
            MoveError::BadLevels { .. } => "BadLevels",
            MoveError::NotApplicable(_) => "NotApplicable",
        }
    }
}

fn rotated(sigma: &PetalPermutation, r: Rotation) -> Result<Vec<u32>, MoveError> {
    sigma.rotated(r).map_err(MoveError::InvalidRotation)
}

fn shift_up(a: u32, m: u32) -> u32 {
    if a >= m {
        a + 2
    } else {
        a
    }
}

/// The raw (uncanonicalized) word produced by an addition. The inserted
/// pair sits at indices `pos+1, pos+2`.
fn addition_raw(sigma: &PetalPermutation, a: &TrivialAddition) -> Result<Vec<u32>, MoveError> {
    let w = rotated(sigma, a.rotation)?;
    let len = w.len();
    if a.pos >= len {
        return Err(MoveError::PositionOutOfRange { pos: a.pos, len });
    }
    // Levels of the enlarged word are 0..=2n+2, so m+1 <= 2n+2.
    let max_m = len as u32;
    if a.m > max_m {
        return Err(MoveError::LevelOutOfRange { m: a.m, max: max_m });
    }
    let pair = match a.orient {
        Orientation::Ascending => [a.m, a.m + 1],
        Orientation::Descending => [a.m + 1, a.m],
    };
    let mut out = Vec::with_capacity(len + 2);
    out.extend(w[..=a.pos].iter().map(|&v| shift_up(v, a.m)));
    out.extend_from_slice(&pair);
    out.extend(w[a.pos + 1..].iter().map(|&v| shift_up(v, a.m)));
    Ok(out)
}

pub fn apply_trivial_addition(
    sigma: &PetalPermutation,
    a: &TrivialAddition,
) -> Result<PetalPermutation, MoveError> {
    let raw = addition_raw(sigma, a)?;
    Ok(PetalPermutation::new(raw).expect("addition preserves validity"))
}

/// All cyclic positions where adjacent entries have consecutive values,
/// reported against rotation 0. Empty for the single-petal word.
pub fn find_deletable_pairs(sigma: &PetalPermutation) -> Vec<TrivialDeletion> {
    let w = sigma.word();
    let len = w.len();
    if len == 1 {
        return Vec::new();
    }
    (0..len)
        .filter(|&k| {
            let (a, b) = (w[k], w[(k + 1) % len]);
            a.abs_diff(b) == 1
        })
        .map(|pos| TrivialDeletion {
            rotation: Rotation(0),
            pos,
        })
        .collect()
}

struct DeletionParts {
    /// Remaining word after removing the pair and shifting, starting at the
    /// entry that followed the pair (so the inverse addition appends at the
    /// cut when the pair was at the word boundary).
    remaining: Vec<u32>,
    /// Smaller value of the deleted pair.
    m: u32,
    orient: Orientation,
    /// Insertion index into `remaining` reconstructing the original word.
    insert_pos: usize,
}

fn deletion_parts(sigma: &PetalPermutation, d: &TrivialDeletion) -> Result<DeletionParts, MoveError> {
    let w = rotated(sigma, d.rotation)?;
    let len = w.len();
    if len == 1 {
        return Err(MoveError::SingletonUnderflow);
    }
    if d.pos >= len {
        return Err(MoveError::PositionOutOfRange { pos: d.pos, len });
    }
    let next = (d.pos + 1) % len;
    let (a, b) = (w[d.pos], w[next]);
    if a.abs_diff(b) != 1 {
        return Err(MoveError::NotConsecutivePair { pos: d.pos, next, a, b });
    }
    let m = a.min(b);
    let orient = if a < b {
        Orientation::Ascending
    } else {
        Orientation::Descending
    };
    let shift = |v: u32| if v > m + 1 { v - 2 } else { v };
    let (remaining, insert_pos) = if next == 0 {
        // wrap-around pair (last, first)
        (w[1..len - 1].iter().map(|&v| shift(v)).collect::<Vec<_>>(), len - 3)
    } else if d.pos == 0 {
        (w[2..].iter().map(|&v| shift(v)).collect::<Vec<_>>(), len - 3)
    } else {
        let mut r: Vec<u32> = Vec::with_capacity(len - 2);
        r.extend(w[..d.pos].iter().map(|&v| shift(v)));
        r.extend(w[d.pos + 2..].iter().map(|&v| shift(v)));
        (r, d.pos - 1)
    };
    Ok(DeletionParts {
        remaining,
        m,
        orient,
        insert_pos,
    })
}

pub fn apply_trivial_deletion(
    sigma: &PetalPermutation,
    d: &TrivialDeletion,
) -> Result<PetalPermutation, MoveError> {
    let parts = deletion_parts(sigma, d)?;
    Ok(PetalPermutation::new(parts.remaining).expect("deletion preserves validity"))
}

/// Checks the pairing conditions for a crossing exchange: pairs `Δ` and
/// `Δ'` with endpoint sets `{m, w+1}` and `{m+1, w}` exist on `side`,
/// neither is the basepoint pair, and every pair on that side is contained
/// in or disjoint from `[m+2, w-1]`.
pub fn validate_crossing_exchange(
    sigma: &PetalPermutation,
    x: &CrossingExchange,
) -> Result<(), MoveError> {
    let (m, w) = (x.m, x.w);
    if w < m + 2 {
        return Err(MoveError::BadLevels { m, w });
    }
    let pairing = sigma
        .pairing(x.rotation, x.side)
        .map_err(MoveError::InvalidRotation)?;

    let find = |level: u32| pairing.pairs.iter().find(|p| p.levels().any(|v| v == level));
    let not_found = || MoveError::PairsNotFound { side: x.side, m, w };

    // Δ must contain both m and w+1, Δ' both m+1 and w.
    for (lo, hi) in [(m, w + 1), (m + 1, w)] {
        let pair = find(lo).ok_or_else(not_found)?;
        if pair.is_basepoint() {
            return Err(MoveError::BasepointPairInvolved { level: lo });
        }
        if pair.endpoints() != (lo.min(hi), Some(lo.max(hi))) {
            return Err(not_found());
        }
    }

    // Interval condition. Singleton pairs are always contained or disjoint;
    // only two-element pairs can straddle.
    let (ilo, ihi) = (m + 2, w - 1); // may be empty when w == m+2
    for p in &pairing.pairs {
        if let (lo, Some(hi)) = p.endpoints() {
            let lo_in = ilo <= lo && lo <= ihi;
            let hi_in = ilo <= hi && hi <= ihi;
            if lo_in != hi_in {
                return Err(MoveError::NestingViolation { lo, hi, m, w });
            }
        }
    }
    Ok(())
}

/// The raw (uncanonicalized) word produced by an exchange.
fn exchange_raw(sigma: &PetalPermutation, x: &CrossingExchange) -> Result<Vec<u32>, MoveError> {
    validate_crossing_exchange(sigma, x)?;
    let mut w = rotated(sigma, x.rotation)?;
    for v in [x.m, x.w] {
        let i = w.iter().position(|&e| e == v).expect("validated above");
        let j = w.iter().position(|&e| e == v + 1).expect("validated above");
        w.swap(i, j);
    }
    Ok(w)
}

pub fn apply_crossing_exchange(
    sigma: &PetalPermutation,
    x: &CrossingExchange,
) -> Result<PetalPermutation, MoveError> {
    let raw = exchange_raw(sigma, x)?;
    Ok(PetalPermutation::new(raw).expect("exchange preserves validity"))
}

/// Rotation `r` such that `canonical.rotated(r)` equals `raw`, where
/// `canonical` is the canonical form of `raw`.
fn rotation_of_raw(raw: &[u32]) -> Rotation {
    let z = raw.iter().position(|&v| v == 0).expect("0 is present");
    Rotation((raw.len() - z) % raw.len())
}

/// The move undoing `mv`: applying `mv` to `before` and then the returned
/// move restores `before`. Additions and deletions swap; exchanges are
/// self-inverse up to re-anchoring their rotation.
pub fn invert_move(mv: &Move, before: &PetalPermutation) -> Result<Move, MoveError> {
    match mv {
        Move::Add(a) => {
            let raw = addition_raw(before, a)
                .map_err(|e| MoveError::NotApplicable(e.to_string()))?;
            // The inserted pair sits at raw indices pos+1, pos+2; express the
            // deletion against the canonical rotation of the result.
            let r = rotation_of_raw(&raw);
            let len = raw.len();
            // canonical.rotated(r) == raw, so the canonical index of raw
            // index i is (i + r) mod len.
            let pos = (a.pos + 1 + r.0) % len;
            Ok(Move::Del(TrivialDeletion {
                rotation: Rotation(0),
                pos,
            }))
        }
        Move::Del(d) => {
            let parts = deletion_parts(before, d)
                .map_err(|e| MoveError::NotApplicable(e.to_string()))?;
            let rotation = rotation_of_raw(&parts.remaining);
            Ok(Move::Add(TrivialAddition {
                rotation,
                pos: parts.insert_pos,
                m: parts.m,
                orient: parts.orient,
            }))
        }
        Move::Xchg(x) => {
            let raw = exchange_raw(before, x)
                .map_err(|e| MoveError::NotApplicable(e.to_string()))?;
            Ok(Move::Xchg(CrossingExchange {
                rotation: rotation_of_raw(&raw),
                side: x.side,
                m: x.m,
                w: x.w,
            }))
        }
    }
}

/// Enumerates every legal move on `sigma`, deduplicated by resulting
/// canonical word (the least move under the serialization order is kept).
/// Additions are included only when `level_cap` admits the grown word:
/// `len + 2 <= level_cap`. With `level_cap = None` additions are omitted,
/// keeping the result finite-by-construction for plain enumeration.
pub fn enumerate_legal_moves(
    sigma: &PetalPermutation,
    level_cap: Option<usize>,
) -> Vec<(Move, PetalPermutation)> {
    let len = sigma.len();
    let mut out: Vec<(Move, PetalPermutation)> = Vec::new();

    for d in find_deletable_pairs(sigma) {
        let result = apply_trivial_deletion(sigma, &d).expect("found pair is deletable");
        out.push((Move::Del(d), result));
    }

    for r in 0..len {
        for side in [Side::Left, Side::Right] {
            let pairing = sigma.pairing(Rotation(r), side).expect("rotation in range");
            // Index of the pair containing each level.
            let mut owner = vec![usize::MAX; len];
            for (i, p) in pairing.pairs.iter().enumerate() {
                for v in p.levels() {
                    owner[v as usize] = i;
                }
            }
            for delta in &pairing.pairs {
                // Candidate Δ with E(Δ) = {m, w+1}.
                let (lo, Some(hi)) = delta.endpoints() else { continue };
                if hi < lo + 3 {
                    continue; // w = hi-1 >= m+2 = lo+2 requires hi >= lo+3
                }
                let (m, w) = (lo, hi - 1);
                // Δ' is the pair containing m+1; quick structural checks
                // before the full validation.
                let dp = &pairing.pairs[owner[(m + 1) as usize]];
                if dp.is_basepoint() || dp.endpoints() != (m + 1, Some(w)) {
                    continue;
                }
                let x = CrossingExchange {
                    rotation: Rotation(r),
                    side,
                    m,
                    w,
                };
                if validate_crossing_exchange(sigma, &x).is_ok() {
                    let result = apply_crossing_exchange(sigma, &x).expect("just validated");
                    out.push((Move::Xchg(x), result));
                }
            }
        }
    }

    let additions_allowed = level_cap.is_some_and(|cap| len + 2 <= cap);
    if additions_allowed {
        for pos in 0..len {
            for m in 0..=len as u32 {
                for orient in [Orientation::Ascending, Orientation::Descending] {
                    let a = TrivialAddition {
                        rotation: Rotation(0),
                        pos,
                        m,
                        orient,
                    };
                    let result = apply_trivial_addition(sigma, &a).expect("parameters in range");
                    out.push((Move::Add(a), result));
                }
            }
        }
    }

    out.sort_by(|(m1, r1), (m2, r2)| r1.word().cmp(r2.word()).then(m1.cmp(m2)));
    out.dedup_by(|(_, r1), (_, r2)| r1 == r2);
    out
}

/// A replayable move sequence: the initial petal word followed by moves.
/// Serializes as a JSON array beginning with the bare word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveScript {
    pub start: PetalPermutation,
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn new(start: PetalPermutation, moves: Vec<Move>) -> Self {
        Self { start, moves }
    }

    /// Applies the moves in order, returning the word after each one.
    pub fn replay(&self) -> Result<Vec<PetalPermutation>, MoveError> {
        let mut steps = Vec::with_capacity(self.moves.len());
        let mut cur = self.start.clone();
        for mv in &self.moves {
            cur = mv.apply(&cur)?;
            steps.push(cur.clone());
        }
        Ok(steps)
    }
}

impl Serialize for MoveScript {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(1 + self.moves.len()))?;
        seq.serialize_element(&self.start.word().to_vec())?;
        for mv in &self.moves {
            seq.serialize_element(mv)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MoveScript {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ScriptVisitor;

        impl<'de> Visitor<'de> for ScriptVisitor {
            type Value = MoveScript;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array beginning with a petal word followed by move objects")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let word: Vec<u32> = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::custom("missing initial petal word"))?;
                let start = PetalPermutation::new(word).map_err(serde::de::Error::custom)?;
                let mut moves = Vec::new();
                while let Some(mv) = seq.next_element::<Move>()? {
                    moves.push(mv);
                }
                Ok(MoveScript { start, moves })
            }
        }

        d.deserialize_seq(ScriptVisitor)
    }
}
