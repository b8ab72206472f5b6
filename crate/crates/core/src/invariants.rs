//! Classical invariants and closed forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{Color, CornerKind, Diagram};
use crate::error::{Error, Result};
use crate::poly::HalfLaurentPoly;
use crate::reduce::HfkReport;
use crate::states::{enumerate_states, BiGradedCensus};

/// `Σ (-1)^m T^s` over a census, normalized by `±T^c`.
pub fn alexander_from_census(census: &BiGradedCensus) -> Result<HalfLaurentPoly> {
    let mut raw = HalfLaurentPoly::zero();
    for (&(s, m), &count) in &census.counts {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        raw.add_term(2 * s, sign * count as i64);
    }
    raw.symmetrized().ok_or_else(|| Error::SymmetrizationFailure(raw.to_string()))
}

pub fn alexander_poly(d: &Diagram) -> Result<HalfLaurentPoly> {
    alexander_from_census(&BiGradedCensus::from_states(&enumerate_states(d)?))
}

/// `|Δ(-1)|`.
pub fn determinant_of(delta: &HalfLaurentPoly) -> u64 {
    let (re, im) = delta.value_at_minus_one();
    (re.abs() + im.abs()) as u64
}

pub fn determinant(d: &Diagram) -> Result<u64> {
    Ok(determinant_of(&alexander_poly(d)?))
}

/// Goeritz matrix of the regions of one color, with the correction term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoeritzData {
    /// regions of this color span the matrix
    pub color: Color,
    pub matrix: Vec<Vec<i64>>,
    pub correction: i64,
}

/// The other color shades the surface; crossings are weighted by how the
/// shaded corners sit relative to the over-strand.
pub fn goeritz(d: &Diagram, color: Color) -> GoeritzData {
    let mut index = vec![usize::MAX; d.faces().len()];
    let mut count = 0;
    for (f, face) in d.faces().iter().enumerate() {
        if face.color == color {
            index[f] = count;
            count += 1;
        }
    }
    let mut full = vec![vec![0i64; count]; count];
    let mut correction = 0;
    for (c, x) in d.crossings().iter().enumerate() {
        let shaded = if d.corner_color(c, 0) == color { 1 } else { 0 };
        // the over-strand lies along slots 1 and 3; turning it counterclockwise
        // sweeps corners 1 and 3
        let eta = if shaded == 1 { 1 } else { -1 };
        let (i, j) = (index[d.corner_face(c, 1 - shaded)], index[d.corner_face(c, 3 - shaded)]);
        if i != j {
            full[i][j] -= eta;
            full[j][i] -= eta;
            full[i][i] += eta;
            full[j][j] += eta;
        }
        if x.corner_kind(shaded) != CornerKind::Lateral {
            correction += eta;
        }
    }
    let matrix = full.iter().skip(1).map(|row| row[1..].to_vec()).collect();
    GoeritzData { color, matrix, correction }
}

/// (positive, negative) inertia of a symmetric integer matrix.
pub fn inertia(matrix: &[Vec<i64>]) -> (usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> =
        matrix.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // add row/column j to k: the new pivot is 2 a[k][j] != 0
                for col in 0..n {
                    let v = a[j][col].clone();
                    a[k][col] += v;
                }
                for row in 0..n {
                    let v = a[row][j].clone();
                    a[row][k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
            for j in k..n {
                let v = &factor * &a[j][k];
                a[j][i] -= v;
            }
        }
    }
    (pos, neg)
}

pub fn integer_determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> =
        matrix.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det.to_integer()
}

fn signature_for(d: &Diagram, color: Color) -> (i64, BigInt) {
    let g = goeritz(d, color);
    let (pos, neg) = inertia(&g.matrix);
    (pos as i64 - neg as i64 - g.correction, integer_determinant(&g.matrix).abs())
}

/// Signature via Goeritz matrices of both colorings, which must agree.
/// With this convention the right-handed trefoil has signature -2.
pub fn signature(d: &Diagram) -> Result<i64> {
    if d.is_unknot() {
        return Ok(0);
    }
    let (a, det_a) = signature_for(d, Color::White);
    let (b, det_b) = signature_for(d, Color::Black);
    if a != b || det_a != det_b {
        return Err(Error::ConventionMismatch(format!(
            "Goeritz data disagree between colorings: signature {a} vs {b}, determinant {det_a} vs {det_b}"
        )));
    }
    Ok(a)
}

/// `|det G|` of the Goeritz matrix.
pub fn goeritz_determinant(d: &Diagram) -> BigInt {
    if d.is_unknot() {
        return BigInt::one();
    }
    signature_for(d, Color::White).1
}

/// Ranks keyed by doubled gradings `(2s, 2m)`.
pub type DoubledTable = BTreeMap<(i64, i64), u64>;

/// Knot Floer homology of an alternating link with `components` components.
pub fn alternating_hfk(delta: &HalfLaurentPoly, sigma: i64, components: u32) -> Result<DoubledTable> {
    let balanced = if components % 2 == 1 { delta.is_symmetric() } else { delta.is_antisymmetric() };
    if !balanced {
        return Err(Error::NonSymmetricDelta(delta.to_string()));
    }
    let p = &HalfLaurentPoly::half_difference().pow(components.saturating_sub(1)) * delta;
    Ok(p.terms().map(|(s2, a)| ((s2, s2 + sigma), a.unsigned_abs())).collect())
}

/// Integral view of a knot table: (s, m) -> rank.
pub fn undoubled(table: &DoubledTable) -> Option<BTreeMap<(i64, i64), u64>> {
    table.iter().map(|(&(s2, m2), &r)| (s2 % 2 == 0 && m2 % 2 == 0).then_some(((s2 / 2, m2 / 2), r))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedFamily {
    Pretzel { p: i64, q: i64, r: i64 },
    Torus2 { m: i64 },
}

/// Alexander polynomial and (when known) signature from closed formulas.
pub fn closed_forms(family: ClosedFamily) -> Result<(HalfLaurentPoly, Option<i64>)> {
    match family {
        ClosedFamily::Pretzel { p, q, r } => {
            if [p, q, r].iter().any(|k| k % 2 == 0) {
                return Err(Error::BadParity(format!("pretzel parameters must be odd, got ({p},{q},{r})")));
            }
            let k = p * q + q * r + p * r;
            let delta = HalfLaurentPoly::from_int_terms([(1, (k + 1) / 4), (0, (2 - 2 * k) / 4), (-1, (k + 1) / 4)]);
            let sigma = if p > 0 && q > 0 && r > 0 {
                Some(2)
            } else if p < 0 && q < 0 && r < 0 {
                Some(-2)
            } else {
                None
            };
            Ok((delta, sigma))
        }
        ClosedFamily::Torus2 { m } => {
            if m % 2 != 0 {
                return Err(Error::BadParity(format!("T(2,{m}) is a knot; the closed form needs even m")));
            }
            Ok((HalfLaurentPoly::half_difference().scaled(m / 2), Some(m.signum())))
        }
    }
}

/// Genus bounds: from the report below, from Seifert's algorithm above.
pub fn genus_bounds(d: &Diagram, report: &HfkReport) -> (i64, i64) {
    let upper = (d.crossing_count() as i64 - d.seifert_circles() as i64 + 1) / 2;
    (report.genus_lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd, transform, Transform};
    use crate::states::tests::{FIGURE_EIGHT, FIVE_TWO, TREFOIL};

    fn diagram(text: &str) -> Diagram {
        build_diagram(&parse_pd(text).unwrap(), 0).unwrap()
    }

    #[test]
    fn alexander_and_determinant() {
        let t = diagram(TREFOIL);
        assert_eq!(alexander_poly(&t).unwrap(), HalfLaurentPoly::from_int_terms([(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(determinant(&t).unwrap(), 3);
        let f = diagram(FIGURE_EIGHT);
        assert_eq!(alexander_poly(&f).unwrap(), HalfLaurentPoly::from_int_terms([(1, -1), (0, 3), (-1, -1)]));
        assert_eq!(determinant(&f).unwrap(), 5);
        assert_eq!(goeritz_determinant(&f), BigInt::from(5));
        assert_eq!(determinant(&diagram("unknot")).unwrap(), 1);
    }

    #[test]
    fn signatures() {
        // this trefoil code has three negative crossings
        let t = diagram(TREFOIL);
        assert_eq!(signature(&t).unwrap(), 2);
        assert_eq!(signature(&transform(&t, Transform::Mirror).unwrap()).unwrap(), -2);
        assert_eq!(signature(&diagram(FIGURE_EIGHT)).unwrap(), 0);
        assert_eq!(signature(&diagram("unknot")).unwrap(), 0);
        let s = signature(&diagram(FIVE_TWO)).unwrap();
        assert_eq!(s.abs(), 2);
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1));
        assert_eq!(inertia(&[vec![0, 0], vec![0, 0]]), (0, 0));
        assert_eq!(inertia(&[vec![2, 1], vec![1, 2]]), (2, 0));
    }

    #[test]
    fn alternating_formula() {
        let trefoil = HalfLaurentPoly::from_int_terms([(1, 1), (0, -1), (-1, 1)]);
        let t = undoubled(&alternating_hfk(&trefoil, -2, 1).unwrap()).unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((-1, -2), 1), ((0, -1), 1), ((1, 0), 1)]);

        let (torus, sigma) = closed_forms(ClosedFamily::Torus2 { m: -6 }).unwrap();
        assert_eq!(sigma, Some(-1));
        let table = alternating_hfk(&torus, -1, 2).unwrap();
        // s = 1 carries rank b = 3 in grading 1/2
        assert_eq!(table.get(&(2, 1)), Some(&3));
        assert_eq!(alternating_hfk(&HalfLaurentPoly::one(), 0, 1).unwrap().into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        assert!(matches!(
            alternating_hfk(&HalfLaurentPoly::from_int_terms([(0, 1), (1, 1)]), 0, 1),
            Err(Error::NonSymmetricDelta(_))
        ));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_forms(ClosedFamily::Pretzel { p: 5, q: -3, r: 7 }).unwrap().0, HalfLaurentPoly::one());
        assert_eq!(closed_forms(ClosedFamily::Pretzel { p: 3, q: 5, r: 7 }).unwrap().1, Some(2));
        assert_eq!(closed_forms(ClosedFamily::Torus2 { m: 0 }).unwrap().0, HalfLaurentPoly::zero());
        assert!(matches!(closed_forms(ClosedFamily::Torus2 { m: 3 }), Err(Error::BadParity(_))));
        assert!(matches!(closed_forms(ClosedFamily::Pretzel { p: 2, q: 1, r: 1 }), Err(Error::BadParity(_))));
        let (t, _) = closed_forms(ClosedFamily::Pretzel { p: 1, q: 1, r: 1 }).unwrap();
        assert_eq!(t, HalfLaurentPoly::from_int_terms([(1, 1), (0, -1), (-1, 1)]));
    }
}
