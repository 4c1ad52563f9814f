//! Reduced stem diagrams: exact planar crossing data for a stem
//! permutation, and the Gauss/PD codes read off a traversal.
//!
//! The axis is a vertical line with levels increasing downward. Each strand
//! is a half-circle whose diameter joins its two endpoint levels, left
//! strands in the left half-plane and right strands in the right. Two
//! same-side strands intersect (in exactly one point) precisely when their
//! level pairs interleave, which the quadruple-product criterion detects.
//! All heights are exact rationals; no floating point enters the crossing
//! order.

use num_rational::Ratio;
use thiserror::Error;

use crate::perm::{PetalPermutation, Side, StemPermutation, Strand};

/// Exact axis coordinate of a crossing.
pub type Height = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("strands {0} and {1} do not cross")]
    DoNotCross(String, String),
    #[error("malformed PD code: {0}")]
    PdParse(String),
}

impl DiagramError {
    pub fn code(&self) -> &'static str {
        match self {
            DiagramError::DoNotCross(..) => "DoNotCross",
            DiagramError::PdParse(_) => "PdParse",
        }
    }
}

fn interleaves(a: &Strand, b: &Strand) -> bool {
    // (δ-λ)(δ'-λ)(δ-λ')(δ'-λ') < 0 for endpoint levels δ,δ' and λ,λ'.
    let (d0, d1) = (a.entry as i64, a.exit as i64);
    let (l0, l1) = (b.entry as i64, b.exit as i64);
    (d0 - l0) * (d1 - l0) * (d0 - l1) * (d1 - l1) < 0
}

/// All same-side strand pairs of `tau` that cross, in traversal order of
/// the earlier strand.
pub fn crossing_pairs(tau: &StemPermutation) -> Vec<(Strand, Strand)> {
    let strands = tau.strands();
    crossing_index_pairs(&strands)
        .into_iter()
        .map(|(i, j)| (strands[i], strands[j]))
        .collect()
}

fn crossing_index_pairs(strands: &[Strand]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..strands.len() {
        for j in i + 1..strands.len() {
            if strands[i].side == strands[j].side && interleaves(&strands[i], &strands[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Axis coordinate of the intersection of two crossing strands: with level
/// pairs `{a,b}` and `{c,d}`, the radical line of the two circles meets the
/// axis at `(ab - cd) / (a + b - c - d)`.
pub fn crossing_height(a: &Strand, b: &Strand) -> Result<Height, DiagramError> {
    if a.side != b.side || !interleaves(a, b) {
        return Err(DiagramError::DoNotCross(a.to_string(), b.to_string()));
    }
    let (p, q) = (a.entry as i64, a.exit as i64);
    let (r, s) = (b.entry as i64, b.exit as i64);
    // Interleaving forbids equal center coordinates, so the denominator is
    // nonzero.
    Ok(Ratio::new(p * q - r * s, p + q - r - s))
}

/// Numerator and denominator of a crossing height as polynomials in the
/// perturbation parameter λ, for levels placed at y(l) = l + λl².
type HeightPolys = ([i128; 3], [i128; 3]);

fn perturbed_height_polys(a: &Strand, b: &Strand) -> HeightPolys {
    let (p, q) = (a.entry as i128, a.exit as i128);
    let (r, s) = (b.entry as i128, b.exit as i128);
    // y_p * y_q = pq + λ(p²q + pq²) + λ² p²q²
    let num = [
        p * q - r * s,
        p * p * q + p * q * q - r * r * s - r * s * s,
        p * p * q * q - r * r * s * s,
    ];
    let den = [p + q - r - s, p * p + q * q - r * r - s * s, 0];
    (num, den)
}

/// Orders two crossing heights in the limit λ -> 0+: the sign of
/// `N1*D2 - N2*D1` at its lowest nonzero coefficient, adjusted by the
/// denominator signs (nonzero at λ = 0 for any crossing pair).
fn cmp_perturbed_heights(h1: &HeightPolys, h2: &HeightPolys) -> std::cmp::Ordering {
    let (n1, d1) = h1;
    let (n2, d2) = h2;
    let mut diff = [0i128; 5];
    for i in 0..3 {
        for j in 0..3 {
            diff[i + j] += n1[i] * d2[j] - n2[i] * d1[j];
        }
    }
    let s = diff
        .iter()
        .find(|c| **c != 0)
        .map(|c| c.signum())
        .unwrap_or(0);
    let sd = d1[0].signum() * d2[0].signum();
    (s * sd).cmp(&0)
}

/// One crossing of a reduced stem diagram. `strand_a < strand_b` index into
/// the diagram's traversal-ordered strand list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    pub strand_a: usize,
    pub strand_b: usize,
    /// Which of the two strands passes over.
    pub over: usize,
    pub height: Height,
    pub sign: i8,
}

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// The reduced stem diagram of a stem permutation: strands, crossings, and
/// the per-strand crossing sequences in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedStemDiagram {
    stem: StemPermutation,
    strands: Vec<Strand>,
    crossings: Vec<Crossing>,
    strand_passages: Vec<Vec<Passage>>,
}

/// Builds the reduced stem diagram of `tau`: crossings from the
/// interleaving criterion, over/under from the stacking rules (left side:
/// higher-index strand over; right side: higher-index strand under), signs
/// from the tangent frame of the two half-circles, and per-strand crossing
/// sequences ordered monotonically in height along each traversal.
pub fn build_diagram(tau: &StemPermutation) -> ReducedStemDiagram {
    let strands = tau.strands();
    let mut crossings = Vec::new();
    for (id, (i, j)) in crossing_index_pairs(&strands).into_iter().enumerate() {
        let (a, b) = (&strands[i], &strands[j]);
        let over = match a.side {
            Side::Left => {
                if a.index > b.index {
                    i
                } else {
                    j
                }
            }
            Side::Right => {
                if a.index < b.index {
                    i
                } else {
                    j
                }
            }
        };
        let under = if over == i { j } else { i };
        let height = crossing_height(a, b).expect("pair was selected as crossing");
        let side_factor: i32 = match a.side {
            Side::Right => 1,
            Side::Left => -1,
        };
        let centers_diff =
            strands[over].center_times_two() as i64 - strands[under].center_times_two() as i64;
        let sign = strands[over].direction()
            * strands[under].direction()
            * side_factor
            * centers_diff.signum() as i32;
        crossings.push(Crossing {
            id,
            strand_a: i,
            strand_b: j,
            over,
            height,
            sign: sign as i8,
        });
    }

    // Several crossings can share a height (three half-circles through one
    // point). Ties are ordered under the perturbed embedding with axis
    // coordinates y(l) = l + λl², exact as λ -> 0+; that is a genuine
    // reduced stem diagram of the same stem permutation, so every tie
    // resolves consistently with a planar position of the strands.
    let height_polys: Vec<HeightPolys> = crossings
        .iter()
        .map(|c| perturbed_height_polys(&strands[c.strand_a], &strands[c.strand_b]))
        .collect();

    let mut strand_passages: Vec<Vec<Passage>> = vec![Vec::new(); strands.len()];
    for (s_idx, strand) in strands.iter().enumerate() {
        let mut on_strand: Vec<&Crossing> = crossings
            .iter()
            .filter(|c| c.strand_a == s_idx || c.strand_b == s_idx)
            .collect();
        // Height is monotone along a half-circle, so traversal order is
        // (perturbed) height order in the direction of travel.
        on_strand.sort_by(|x, y| {
            let ord = cmp_perturbed_heights(&height_polys[x.id], &height_polys[y.id]);
            debug_assert!(
                ord != std::cmp::Ordering::Equal || x.id == y.id,
                "distinct crossings stay distinct under perturbation"
            );
            let ord = if strand.direction() > 0 { ord } else { ord.reverse() };
            ord.then(x.id.cmp(&y.id))
        });
        strand_passages[s_idx] = on_strand
            .into_iter()
            .map(|c| Passage {
                crossing: c.id,
                over: c.over == s_idx,
            })
            .collect();
    }

    ReducedStemDiagram {
        stem: tau.clone(),
        strands,
        crossings,
        strand_passages,
    }
}

/// Diagram of a petal permutation under the default embedding (rotation 0
/// of the canonical word, basepoint level 0).
pub fn petal_to_diagram(sigma: &PetalPermutation) -> ReducedStemDiagram {
    build_diagram(&sigma.to_stem_default())
}

impl ReducedStemDiagram {
    pub fn stem(&self) -> &StemPermutation {
        &self.stem
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossing sequence of each strand, parallel to `strands()`.
    pub fn strand_passages(&self) -> &[Vec<Passage>] {
        &self.strand_passages
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// All passages in traversal order from the basepoint.
    pub fn passages(&self) -> Vec<Passage> {
        self.strand_passages.iter().flatten().copied().collect()
    }

    pub fn gauss_code(&self) -> GaussCode {
        let mut entries = Vec::new();
        let mut signs = Vec::new();
        for p in self.passages() {
            let id = (p.crossing + 1) as i64;
            entries.push(if p.over { id } else { -id });
            signs.push(self.crossings[p.crossing].sign);
        }
        GaussCode { entries, signs }
    }

    pub fn pd_code(&self) -> PdCode {
        let passages = self.passages();
        let total = passages.len();
        let k = self.crossings.len();
        if k == 0 {
            return PdCode { tuples: Vec::new() };
        }
        // Edges are numbered 1..=2K along the traversal; the edge entering
        // passage p is p+1, the edge leaving it is (p+1) mod 2K + 1.
        let mut under_at = vec![usize::MAX; k];
        let mut over_at = vec![usize::MAX; k];
        for (pos, p) in passages.iter().enumerate() {
            if p.over {
                over_at[p.crossing] = pos;
            } else {
                under_at[p.crossing] = pos;
            }
        }
        let incoming = |pos: usize| (pos + 1) as u32;
        let outgoing = |pos: usize| ((pos + 1) % total + 1) as u32;
        let tuples = self
            .crossings
            .iter()
            .map(|c| {
                let (pu, po) = (under_at[c.id], over_at[c.id]);
                let (a, c_out) = (incoming(pu), outgoing(pu));
                let (over_in, over_out) = (incoming(po), outgoing(po));
                // Counterclockwise from the incoming under-strand: a positive
                // crossing has the over-strand running d -> b.
                if c.sign > 0 {
                    [a, over_out, c_out, over_in]
                } else {
                    [a, over_in, c_out, over_out]
                }
            })
            .collect();
        PdCode { tuples }
    }
}

/// Signed Gauss code: `+id` for an over-pass, `-id` for an under-pass (ids
/// are 1-based), with a parallel list of crossing signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCode {
    pub entries: Vec<i64>,
    pub signs: Vec<i8>,
}

impl GaussCode {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl std::fmt::Display for GaussCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// PD code: one `X[a,b,c,d]` per crossing, arc labels counterclockwise from
/// the incoming under-strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub tuples: Vec<[u32; 4]>,
}

impl std::fmt::Display for PdCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, t) in self.tuples.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X[{},{},{},{}]", t[0], t[1], t[2], t[3])?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PdCode {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tuples = Vec::new();
        for token in s.split_whitespace() {
            let inner = token
                .strip_prefix("X[")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| DiagramError::PdParse(format!("bad token {token:?}")))?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(DiagramError::PdParse(format!("expected 4 labels in {token:?}")));
            }
            let mut t = [0u32; 4];
            for (slot, p) in t.iter_mut().zip(&parts) {
                *slot = p
                    .trim()
                    .parse()
                    .map_err(|_| DiagramError::PdParse(format!("bad label {p:?}")))?;
            }
            tuples.push(t);
        }
        Ok(PdCode { tuples })
    }
}

/// Gauss code of the reduced stem diagram of `tau`.
pub fn to_gauss_code(tau: &StemPermutation) -> GaussCode {
    build_diagram(tau).gauss_code()
}

/// PD code of the reduced stem diagram of `tau`.
pub fn to_pd_code(tau: &StemPermutation) -> PdCode {
    build_diagram(tau).pd_code()
}
