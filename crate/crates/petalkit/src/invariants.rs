//! The Alexander polynomial as a knot-type oracle.
//!
//! Arcs of the diagram are the maximal runs between consecutive
//! under-passages of the traversal. Each crossing contributes one Wirtinger
//! relation, whose Fox derivatives give a matrix row over ℤ[t, t⁻¹] with
//! the pattern `{1-t, t, -1}` arranged by the crossing sign. Deleting one
//! row and one column and taking the determinant yields the polynomial up
//! to a unit `±t^k`; rows sum to zero, so the choice of deleted column does
//! not matter. The determinant is computed exactly: the degree is bounded
//! by the matrix size, so the symbolic matrix is evaluated at enough
//! integer points, each determinant taken by fraction-free elimination, and
//! the polynomial recovered by exact interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::{build_diagram, petal_to_diagram, ReducedStemDiagram};
use crate::laurent::LaurentPolynomial;
use crate::perm::PetalPermutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("degenerate diagram: the Wirtinger minor vanished (internal bug)")]
    DegenerateDiagram,
}

impl InvariantError {
    pub fn code(&self) -> &'static str {
        match self {
            InvariantError::DegenerateDiagram => "DegenerateDiagram",
        }
    }
}

/// Normalized Alexander polynomial together with the knot determinant
/// `|Δ(-1)|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderResult {
    pub polynomial: LaurentPolynomial,
    pub determinant: u64,
}

impl AlexanderResult {
    fn trivial() -> Self {
        AlexanderResult {
            polynomial: LaurentPolynomial::one(),
            determinant: 1,
        }
    }
}

/// Matrix entry `a + b*t`.
type Linear = (i64, i64);

fn fox_matrix(d: &ReducedStemDiagram) -> Vec<Vec<Linear>> {
    let k = d.crossing_count();
    let passages = d.passages();

    let mut under_pos = vec![usize::MAX; k];
    let mut over_pos = vec![usize::MAX; k];
    let mut unders_before = vec![0usize; passages.len()];
    let mut count = 0usize;
    for (pos, p) in passages.iter().enumerate() {
        unders_before[pos] = count;
        if p.over {
            over_pos[p.crossing] = pos;
        } else {
            under_pos[p.crossing] = pos;
            count += 1;
        }
    }

    let mut rows = vec![vec![(0i64, 0i64); k]; k];
    let bump = |row: &mut Vec<Linear>, col: usize, v: Linear| {
        row[col].0 += v.0;
        row[col].1 += v.1;
    };
    for c in d.crossings() {
        let over_arc = unders_before[over_pos[c.id]] % k;
        let in_arc = unders_before[under_pos[c.id]] % k;
        let out_arc = (unders_before[under_pos[c.id]] + 1) % k;
        let row = &mut rows[c.id];
        bump(row, over_arc, (1, -1)); // 1 - t
        if c.sign > 0 {
            bump(row, in_arc, (0, 1)); // t
            bump(row, out_arc, (-1, 0)); // -1
        } else {
            bump(row, in_arc, (-1, 0));
            bump(row, out_arc, (0, 1));
        }
        debug_assert_eq!(
            row.iter().fold((0, 0), |acc, e| (acc.0 + e.0, acc.1 + e.1)),
            (0, 0),
            "each Wirtinger row sums to zero"
        );
    }
    rows
}

/// Fraction-free determinant; `None` signals i128 overflow.
fn bareiss_det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut denom = 1i128;
    for p in 0..n - 1 {
        if m[p][p] == 0 {
            let Some(r) = (p + 1..n).find(|&r| m[r][p] != 0) else {
                return Some(0);
            };
            m.swap(p, r);
            sign = -sign;
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let t1 = m[p][p].checked_mul(m[i][j])?;
                let t2 = m[i][p].checked_mul(m[p][j])?;
                m[i][j] = t1.checked_sub(t2)? / denom;
            }
            m[i][p] = 0;
        }
        denom = m[p][p];
    }
    Some(sign * m[n - 1][n - 1])
}

fn bareiss_det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = BigInt::from(1);
    let mut denom = BigInt::from(1);
    for p in 0..n - 1 {
        if m[p][p].is_zero() {
            let Some(r) = (p + 1..n).find(|&r| !m[r][p].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(p, r);
            sign = -sign;
        }
        for i in p + 1..n {
            for j in p + 1..n {
                m[i][j] = (&m[p][p] * &m[i][j] - &m[i][p] * &m[p][j]) / &denom;
            }
            m[i][p] = BigInt::zero();
        }
        denom = m[p][p].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Determinant of the minor evaluated at `t = x`.
fn minor_det_at(rows: &[Vec<Linear>], x: i64) -> BigInt {
    let n = rows.len() - 1; // delete last row and column
    let eval: Vec<Vec<i128>> = rows[..n]
        .iter()
        .map(|r| {
            r[..n]
                .iter()
                .map(|&(a, b)| a as i128 + b as i128 * x as i128)
                .collect()
        })
        .collect();
    match bareiss_det_i128(eval) {
        Some(v) => BigInt::from(v),
        None => {
            let big: Vec<Vec<BigInt>> = rows[..n]
                .iter()
                .map(|r| {
                    r[..n]
                        .iter()
                        .map(|&(a, b)| BigInt::from(a) + BigInt::from(b) * BigInt::from(x))
                        .collect()
                })
                .collect();
            bareiss_det_bigint(big)
        }
    }
}

/// Exact Newton interpolation through `(xs[i], ys[i])`; the result must
/// have integer coefficients.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigInt> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = BigRational::from_integer(BigInt::from(xs[i] - xs[i - j]));
            dd[i] = (&dd[i] - &dd[i - 1]) / dx;
        }
    }
    let mut coeffs: Vec<BigRational> = vec![dd[n - 1].clone()];
    for j in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        let xj = BigRational::from_integer(BigInt::from(xs[j]));
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xj;
        }
        next[0] += &dd[j];
        coeffs = next;
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "interpolation of integer data is integral");
            c.to_integer()
        })
        .collect()
}

/// Alexander polynomial of a reduced stem diagram via the Wirtinger
/// presentation and Fox calculus. Diagrams with zero or one crossing are
/// unknot diagrams and return `Δ = 1` directly.
pub fn alexander_from_diagram(d: &ReducedStemDiagram) -> Result<AlexanderResult, InvariantError> {
    let k = d.crossing_count();
    if k <= 1 {
        return Ok(AlexanderResult::trivial());
    }
    let rows = fox_matrix(d);

    // The minor has size k-1 with entries of degree <= 1, so k sample
    // points pin the determinant polynomial down.
    let xs: Vec<i64> = (0..k as i64).map(|i| {
        let half = (i + 1) / 2;
        if i % 2 == 1 {
            half
        } else {
            -half
        }
    })
    .collect();
    let ys: Vec<BigInt> = xs.iter().map(|&x| minor_det_at(&rows, x)).collect();

    if ys.iter().all(|y| y.is_zero()) {
        return Err(InvariantError::DegenerateDiagram);
    }

    let coeffs = interpolate(&xs, &ys);
    let poly = LaurentPolynomial::new(coeffs.iter().enumerate().map(|(e, c)| {
        (
            e as i64,
            c.to_i64().expect("Alexander coefficients fit in i64"),
        )
    }));
    if poly.is_zero() {
        return Err(InvariantError::DegenerateDiagram);
    }
    let polynomial = poly.normalize();
    debug_assert_eq!(polynomial.evaluate(1).abs(), 1, "Δ(1) = ±1 for knots");
    debug_assert_eq!(
        polynomial.reversed().normalize(),
        polynomial,
        "Δ is symmetric under t -> 1/t"
    );
    let determinant = polynomial.evaluate_at_minus_one().unsigned_abs();
    Ok(AlexanderResult {
        polynomial,
        determinant,
    })
}

/// Alexander polynomial of a petal permutation through the default
/// embedding. The result is independent of the embedding parameters, so any
/// rotation and basepoint level would give the same answer.
pub fn alexander_of_petal(sigma: &PetalPermutation) -> Result<AlexanderResult, InvariantError> {
    alexander_from_diagram(&petal_to_diagram(sigma))
}

/// Convenience wrapper building the diagram from a stem permutation.
pub fn alexander_of_stem(
    tau: &crate::perm::StemPermutation,
) -> Result<AlexanderResult, InvariantError> {
    alexander_from_diagram(&build_diagram(tau))
}
