//! Shared helpers for the integration suites: exhaustive word enumeration
//! and brute-force geometric oracles that stay independent of the library's
//! combinatorial crossing criterion.
#![allow(dead_code)] // each test target uses its own subset

use petalkit::{PetalPermutation, Side, StemPermutation, Strand};

/// All canonical petal words of the given odd length.
pub fn canonical_petal_words(len: usize) -> Vec<PetalPermutation> {
    assert!(!len.is_multiple_of(2));
    let tail: Vec<u32> = (1..len as u32).collect();
    permutations(&tail)
        .into_iter()
        .map(|t| {
            let mut w = Vec::with_capacity(len);
            w.push(0);
            w.extend(t);
            PetalPermutation::new(w).unwrap()
        })
        .collect()
}

/// All stem words of the given even length.
pub fn all_stem_words(len: usize) -> Vec<StemPermutation> {
    assert!(len.is_multiple_of(2));
    let letters: Vec<u32> = (0..len as u32).collect();
    permutations(&letters)
        .into_iter()
        .map(|w| StemPermutation::new(w).unwrap())
        .collect()
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    // Heap's algorithm; order is deterministic.
    let mut a = items.to_vec();
    let n = a.len();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Perpendicular distance from the axis of the half-circle embedding of
/// `s` at axis coordinate `h` (nonnegative; both sides fold onto x >= 0).
fn arc_x(s: &Strand, h: f64) -> f64 {
    let (lo, hi) = s.levels();
    let c = (lo as f64 + hi as f64) / 2.0;
    let r = (hi as f64 - lo as f64) / 2.0;
    (r * r - (h - c) * (h - c)).max(0.0).sqrt()
}

/// Brute-force polyline test: samples both half-circles on a shared grid
/// over the overlap of their spans and counts sign changes of the gap
/// between them. Returns the number of transversal intersections (0 or 1;
/// anything else panics, since two circle graphs cross at most once).
pub fn polyline_crossing_count(a: &Strand, b: &Strand, samples: usize) -> usize {
    assert_eq!(a.side, b.side);
    let (alo, ahi) = a.levels();
    let (blo, bhi) = b.levels();
    let lo = alo.max(blo) as f64;
    let hi = ahi.min(bhi) as f64;
    if lo >= hi {
        return 0;
    }
    let mut signs = Vec::with_capacity(samples + 1);
    for k in 0..=samples {
        let h = lo + (hi - lo) * k as f64 / samples as f64;
        let d = arc_x(a, h) - arc_x(b, h);
        if d.abs() > 1e-9 {
            signs.push(d.signum() as i32);
        }
    }
    let flips = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert!(flips <= 1, "two half-circles can cross at most once");
    flips
}

/// Brute-force crossing sign: locates the intersection by bisecting the
/// sampled gap, takes the tangent of each strand by central finite
/// differences of the embedding, orients the tangents along the traversal,
/// and reads the sign off the determinant of the (over, under) frame.
pub fn tangent_frame_sign(over: &Strand, under: &Strand) -> i8 {
    assert_eq!(over.side, under.side);
    let (alo, ahi) = over.levels();
    let (blo, bhi) = under.levels();
    let lo = alo.max(blo) as f64;
    let hi = ahi.min(bhi) as f64;
    let gap = |h: f64| arc_x(over, h) - arc_x(under, h);
    // Shrink to a sign-changing bracket on the sample grid, then bisect.
    let samples = 256;
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=samples {
        let h = lo + (hi - lo) * k as f64 / samples as f64;
        let d = gap(h);
        if d.abs() <= 1e-12 {
            continue;
        }
        if let Some((ph, pd)) = prev {
            if pd.signum() != d.signum() {
                bracket = Some((ph, h));
                break;
            }
        }
        prev = Some((h, d));
    }
    let (mut l, mut r) = bracket.expect("strands must cross");
    for _ in 0..60 {
        let mid = (l + r) / 2.0;
        if gap(l).signum() == gap(mid).signum() {
            l = mid;
        } else {
            r = mid;
        }
    }
    let h_star = (l + r) / 2.0;

    // Tangent in (x, h) coordinates, where x is the unsigned distance from
    // the axis used by `arc_x`; the left half-plane is the mirror image, so
    // flip the x component there.
    let tangent = |s: &Strand| -> (f64, f64) {
        let delta = 1e-5;
        let dxdh = (arc_x(s, h_star + delta) - arc_x(s, h_star - delta)) / (2.0 * delta);
        let dir = s.direction() as f64;
        let mirror = match s.side {
            Side::Right => 1.0,
            Side::Left => -1.0,
        };
        (mirror * dxdh * dir, dir)
    };
    let (ox, oh) = tangent(over);
    let (ux, uh) = tangent(under);
    let det = ox * uh - oh * ux;
    assert!(det.abs() > 1e-6, "crossing must be transversal");
    if det > 0.0 {
        1
    } else {
        -1
    }
}
