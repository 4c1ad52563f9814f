//! Petal and stem permutations.
//!
//! A petal permutation is a cyclic word of odd length `2n+1` on the letters
//! `0..=2n`, recording strand heights counterclockwise around a petal
//! diagram. We store the rotation that begins with `0`, so two words denote
//! the same petal permutation exactly when the stored forms are equal.
//!
//! A stem permutation is a *linear* word of even length `2n+2` on the
//! letters `0..=2n+1`; entry `0` is the axis level of the basepoint. The two
//! representations convert into each other (`to_stem` / `to_petal`), with the
//! stem side carrying one extra level for the basepoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which half-plane of the axis a pair or strand belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "L"),
            Side::Right => write!(f, "R"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("word is not a permutation of 0..{expected_len}: {reason}")]
    NotAPermutation { expected_len: usize, reason: String },
    #[error("petal word must have odd length, got {0}")]
    EvenLength(usize),
    #[error("stem word must have even length, got {0}")]
    OddLength(usize),
    #[error("rotation offset {offset} out of range for word of length {len}")]
    InvalidRotation { offset: usize, len: usize },
    #[error("basepoint level {t0} out of range 0..={max}")]
    LevelOutOfRange { t0: u32, max: u32 },
}

impl PermError {
    /// Stable machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            PermError::NotAPermutation { .. } => "NotAPermutation",
            PermError::EvenLength(_) => "EvenLength",
            PermError::OddLength(_) => "OddLength",
            PermError::InvalidRotation { .. } => "InvalidRotation",
            PermError::LevelOutOfRange { .. } => "LevelOutOfRange",
        }
    }
}

fn check_permutation(word: &[u32]) -> Result<(), PermError> {
    let len = word.len();
    let mut seen = vec![false; len];
    for &v in word {
        let v = v as usize;
        if v >= len {
            return Err(PermError::NotAPermutation {
                expected_len: len,
                reason: format!("entry {v} out of range"),
            });
        }
        if seen[v] {
            return Err(PermError::NotAPermutation {
                expected_len: len,
                reason: format!("entry {v} repeated"),
            });
        }
        seen[v] = true;
    }
    Ok(())
}

/// A rotation offset selecting a word `W` from the cyclic class of a
/// [`PetalPermutation`]: offset `r` reads the canonical word starting at
/// index `r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rotation(pub usize);

/// A petal permutation, stored as the unique rotation beginning with `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PetalPermutation {
    word: Vec<u32>,
}

impl PetalPermutation {
    /// Canonicalizes `word`: validates it as an odd-length permutation of
    /// `{0,…,2n}` and rotates it to begin with `0`. Two inputs that are
    /// cyclic rotations of each other produce identical values.
    pub fn new(word: impl Into<Vec<u32>>) -> Result<Self, PermError> {
        let mut word = word.into();
        if word.len() % 2 == 0 {
            return Err(PermError::EvenLength(word.len()));
        }
        check_permutation(&word)?;
        let z = word.iter().position(|&v| v == 0).expect("0 is present");
        word.rotate_left(z);
        Ok(Self { word })
    }

    /// The single-petal unknot `(0)`.
    pub fn unknot() -> Self {
        Self { word: vec![0] }
    }

    /// Canonical word, beginning with 0.
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    /// `n` such that the word has length `2n+1`.
    pub fn petal_index(&self) -> usize {
        (self.word.len() - 1) / 2
    }

    fn check_rotation(&self, r: Rotation) -> Result<(), PermError> {
        if r.0 >= self.word.len() {
            Err(PermError::InvalidRotation {
                offset: r.0,
                len: self.word.len(),
            })
        } else {
            Ok(())
        }
    }

    /// The word `W` selected by rotation `r`: canonical word read starting
    /// at index `r.0`.
    pub fn rotated(&self, r: Rotation) -> Result<Vec<u32>, PermError> {
        self.check_rotation(r)?;
        let mut w = self.word.clone();
        w.rotate_left(r.0);
        Ok(w)
    }

    /// Interprets a literal word as a rotation of its cyclic class: returns
    /// the canonical permutation together with the rotation `r` such that
    /// `self.rotated(r)` reproduces `word` exactly.
    pub fn from_rotated_word(word: &[u32]) -> Result<(Self, Rotation), PermError> {
        let sigma = Self::new(word.to_vec())?;
        let z = word.iter().position(|&v| v == 0).expect("0 is present");
        // word = rotate_left(canonical, len - z)
        let r = Rotation((word.len() - z) % word.len());
        Ok((sigma, r))
    }

    /// Left- or right-pairs of the word selected by `r`.
    pub fn pairing(&self, r: Rotation, side: Side) -> Result<Pairing, PermError> {
        let w = self.rotated(r)?;
        let mut pairs = Vec::with_capacity(w.len() / 2 + 1);
        match side {
            Side::Left => {
                pairs.push(PetalPair::Basepoint(w[0]));
                for c in w[1..].chunks_exact(2) {
                    pairs.push(PetalPair::Pair(c[0], c[1]));
                }
            }
            Side::Right => {
                for c in w[..w.len() - 1].chunks_exact(2) {
                    pairs.push(PetalPair::Pair(c[0], c[1]));
                }
                pairs.push(PetalPair::Basepoint(w[w.len() - 1]));
            }
        }
        Ok(Pairing { side, pairs })
    }

    /// Builds the stem permutation for basepoint level `t0` and the word
    /// selected by `r`: level `t0` is prepended and every entry `>= t0`
    /// shifts up by one.
    pub fn to_stem(&self, r: Rotation, t0: u32) -> Result<StemPermutation, PermError> {
        let w = self.rotated(r)?;
        let max = self.word.len() as u32; // 2n+1
        if t0 > max {
            return Err(PermError::LevelOutOfRange { t0, max });
        }
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(t0);
        out.extend(w.iter().map(|&a| if a >= t0 { a + 1 } else { a }));
        Ok(StemPermutation { word: out })
    }

    /// Stem permutation under the default embedding: rotation 0, `t0 = 0`.
    pub fn to_stem_default(&self) -> StemPermutation {
        self.to_stem(Rotation(0), 0).expect("defaults are always valid")
    }

    /// Pairs each strand of `to_stem(r, ·)` with the petal pair it bounds,
    /// in traversal order `ℓ0, r1, ℓ1, …`.
    pub fn strand_pair_correspondence(
        &self,
        r: Rotation,
    ) -> Result<Vec<(Strand, PetalPair)>, PermError> {
        let stem = self.to_stem(r, 0)?;
        let left = self.pairing(r, Side::Left)?;
        let right = self.pairing(r, Side::Right)?;
        let out = stem
            .strands()
            .into_iter()
            .map(|s| {
                let pair = match s.side {
                    Side::Left => left.pairs[s.index],
                    Side::Right => right.pairs[s.index - 1],
                };
                (s, pair)
            })
            .collect();
        Ok(out)
    }
}

impl std::fmt::Display for PetalPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_csv(f, &self.word)
    }
}

/// One petal of a pairing: either the basepoint singleton or an ordered
/// pair of levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PetalPair {
    Basepoint(u32),
    Pair(u32, u32),
}

impl PetalPair {
    /// Endpoint set `E(Δ)`, sorted.
    pub fn endpoints(&self) -> (u32, Option<u32>) {
        match *self {
            PetalPair::Basepoint(a) => (a, None),
            PetalPair::Pair(a, b) => (a.min(b), Some(a.max(b))),
        }
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, PetalPair::Basepoint(_))
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> {
        let (a, b) = match *self {
            PetalPair::Basepoint(a) => (a, None),
            PetalPair::Pair(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

impl std::fmt::Display for PetalPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PetalPair::Basepoint(a) => write!(f, "({a})"),
            PetalPair::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// The set of left- or right-pairs of a chosen word `W`. Concatenating the
/// pairs in order reproduces `W`; exactly one pair is the basepoint
/// singleton (first on the left, last on the right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub side: Side,
    pub pairs: Vec<PetalPair>,
}

impl Pairing {
    /// Concatenation of the pairs, reproducing the word the pairing was
    /// built from.
    pub fn concat(&self) -> Vec<u32> {
        self.pairs.iter().flat_map(|p| p.levels()).collect()
    }

    pub fn basepoint(&self) -> &PetalPair {
        match self.side {
            Side::Left => &self.pairs[0],
            Side::Right => self.pairs.last().expect("pairing is never empty"),
        }
    }
}

/// A stem permutation: linear word of even length on `{0,…,2n+1}` whose
/// first entry is the basepoint level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StemPermutation {
    word: Vec<u32>,
}

impl StemPermutation {
    pub fn new(word: impl Into<Vec<u32>>) -> Result<Self, PermError> {
        let word = word.into();
        if word.len() % 2 != 0 || word.is_empty() {
            return Err(PermError::OddLength(word.len()));
        }
        check_permutation(&word)?;
        Ok(Self { word })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 2
    }

    /// `n` such that the word has length `2n+2`.
    pub fn stem_index(&self) -> usize {
        (self.word.len() - 2) / 2
    }

    /// Basepoint level `t_0`.
    pub fn basepoint_level(&self) -> u32 {
        self.word[0]
    }

    /// Deletes the basepoint level and shifts the remaining levels down,
    /// recovering the petal permutation of the associated petal diagram.
    pub fn to_petal(&self) -> PetalPermutation {
        let t0 = self.word[0];
        let shifted: Vec<u32> = self.word[1..]
            .iter()
            .map(|&a| if a > t0 { a - 1 } else { a })
            .collect();
        PetalPermutation::new(shifted).expect("deleting one level preserves validity")
    }

    /// Strands in traversal order `ℓ0, r1, ℓ1, r2, …, ℓn, r_{n+1}`, each with
    /// its entry and exit levels. Every level occurs in exactly two strands.
    pub fn strands(&self) -> Vec<Strand> {
        let w = &self.word;
        let n = self.stem_index();
        let mut out = Vec::with_capacity(w.len());
        for j in 0..=n {
            out.push(Strand {
                side: Side::Left,
                index: j,
                entry: w[2 * j],
                exit: w[2 * j + 1],
            });
            let (entry, exit) = if j < n {
                (w[2 * j + 1], w[2 * j + 2])
            } else {
                (w[2 * n + 1], w[0]) // r_{n+1} returns to the basepoint
            };
            out.push(Strand {
                side: Side::Right,
                index: j + 1,
                entry,
                exit,
            });
        }
        out
    }
}

impl std::fmt::Display for StemPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_csv(f, &self.word)
    }
}

/// One strand of a stem diagram: a half-circle on one side of the axis,
/// traversed from `entry` to `exit`. Left strands are `ℓ_j` (`index = j`),
/// right strands `r_i` (`index = i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub side: Side,
    pub index: usize,
    pub entry: u32,
    pub exit: u32,
}

impl Strand {
    /// Endpoint levels as an unordered (sorted) pair.
    pub fn levels(&self) -> (u32, u32) {
        (self.entry.min(self.exit), self.entry.max(self.exit))
    }

    /// +1 if the strand is traversed toward increasing level, -1 otherwise.
    pub fn direction(&self) -> i32 {
        if self.entry < self.exit {
            1
        } else {
            -1
        }
    }

    /// Axis coordinate of the half-circle's center.
    pub fn center_times_two(&self) -> u32 {
        self.entry + self.exit
    }
}

impl std::fmt::Display for Strand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.side {
            Side::Left => "l",
            Side::Right => "r",
        };
        write!(f, "{}{}{{{},{}}}", tag, self.index, self.entry, self.exit)
    }
}

pub(crate) fn write_csv(f: &mut std::fmt::Formatter<'_>, word: &[u32]) -> std::fmt::Result {
    for (i, v) in word.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

// Permutations serialize as {"kind": "...", "word": [...]} so petal and stem
// words stay distinguishable in mixed JSON streams.

#[derive(Serialize, Deserialize)]
struct TaggedWord {
    kind: String,
    word: Vec<u32>,
}

impl Serialize for PetalPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TaggedWord {
            kind: "petal".into(),
            word: self.word.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PetalPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TaggedWord::deserialize(d)?;
        if t.kind != "petal" {
            return Err(serde::de::Error::custom(format!(
                "expected kind \"petal\", got \"{}\"",
                t.kind
            )));
        }
        PetalPermutation::new(t.word).map_err(serde::de::Error::custom)
    }
}

impl Serialize for StemPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TaggedWord {
            kind: "stem".into(),
            word: self.word.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StemPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TaggedWord::deserialize(d)?;
        if t.kind != "stem" {
            return Err(serde::de::Error::custom(format!(
                "expected kind \"stem\", got \"{}\"",
                t.kind
            )));
        }
        StemPermutation::new(t.word).map_err(serde::de::Error::custom)
    }
}
