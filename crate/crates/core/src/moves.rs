//! Matrix moves on linking matrices.
//!
//! M1 (canceling band pair) and M2 (stabilization) change the matrix size
//! and are performed as surgery: rows of untouched cycles are copied, rows of
//! new cycles are filled from the L1/L2 rules at the insertion site. M3
//! (conjugation) and M4 (braid relation) keep the size and come with a
//! unimodular `P` such that `Pᵀ M P` is the output.

use crate::braid::{r3_pattern, BraidMoveSpec, ClosedBraidDiagram, R3Direction, Sign, apply_braid_move};
use crate::error::{Error, Result};
use crate::linking::{encode, laundry_key, link_entry, CycleLabel, LaundryOrder, LinkingMatrix};
use crate::matrix::IntMatrix;

/// Positions are 0-based matrix row indices; heights are 1-based positions
/// in the diagram's canonical word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixMoveSpec {
    /// Add the bands of `σ_column^{-s} σ_column^{s}` with the lower one at
    /// `height`.
    M1Insert {
        column: usize,
        height: usize,
        upper_sign: Sign,
    },
    /// Remove a canceling pair of band rows.
    M1Delete { lower: usize, upper: usize },
    M2Stabilize { sign: Sign },
    M2Destabilize,
    M3Conjugate,
    /// `position` is the row of the lowest band of the pattern.
    M4 { position: usize, direction: R3Direction },
}

impl MatrixMoveSpec {
    /// The matrix move matching a braid move on `decode(m)`.
    pub fn from_braid(s: &BraidMoveSpec, m: &LinkingMatrix) -> Result<Self> {
        let order = m.order();
        Ok(match *s {
            BraidMoveSpec::R2Insert {
                column,
                height,
                upper_sign,
            } => MatrixMoveSpec::M1Insert {
                column,
                height,
                upper_sign,
            },
            BraidMoveSpec::R2Delete { height } => {
                let lower = band_at_height(&order, height)?;
                let upper = cancel_partner(&order, lower)?;
                MatrixMoveSpec::M1Delete { lower, upper }
            }
            BraidMoveSpec::Stabilize { sign } => MatrixMoveSpec::M2Stabilize { sign },
            BraidMoveSpec::Destabilize => MatrixMoveSpec::M2Destabilize,
            BraidMoveSpec::ConjugateRotate => MatrixMoveSpec::M3Conjugate,
            BraidMoveSpec::R3 { height, direction } => MatrixMoveSpec::M4 {
                position: band_at_height(&order, height)?,
                direction,
            },
        })
    }
}

/// A congruence matrix: column `j` expresses the `j`-th output cycle in the
/// input basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularWitness(IntMatrix);

impl UnimodularWitness {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_inner(self) -> IntMatrix {
        self.0
    }

    /// True when `det P = ±1` and `Pᵀ input P = output`.
    pub fn verify(&self, input: &IntMatrix, output: &IntMatrix) -> bool {
        is_unimodular(&self.0).unwrap_or(false)
            && self.0.rows() == input.rows()
            && input.congruence(&self.0) == *output
    }
}

/// Exact integer determinant test.
pub fn is_unimodular(p: &IntMatrix) -> Result<bool> {
    let d = p.determinant()?;
    Ok(d == 1 || d == -1)
}

fn band_at_height(order: &LaundryOrder, height: usize) -> Result<usize> {
    order
        .labels()
        .iter()
        .position(|l| matches!(*l, CycleLabel::Band { height: h, .. } if h == height))
        .ok_or_else(|| Error::OutOfRange(format!("no band at height {height}")))
}

fn band(order: &LaundryOrder, p: usize) -> Result<(usize, usize, Sign)> {
    match order.labels().get(p) {
        Some(&CycleLabel::Band { height, column, sign }) => Ok((height, column, sign)),
        Some(_) => Err(Error::PatternNotFound(format!("row {} is a circle", p + 1))),
        None => Err(Error::OutOfRange(format!("row {} outside the matrix", p + 1))),
    }
}

/// The first band above `lower` in columns `c-1..=c+1`, if it cancels it.
fn cancel_partner(order: &LaundryOrder, lower: usize) -> Result<usize> {
    let (h, c, s) = band(order, lower)?;
    let next = order
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(p, l)| match *l {
            CycleLabel::Band { height, column, .. } if height > h && column.abs_diff(c) <= 1 => Some((height, p)),
            _ => None,
        })
        .min();
    match next {
        Some((_, p)) if matches!(order.labels()[p], CycleLabel::Band { column, sign, .. } if column == c && sign == s.flip()) => {
            Ok(p)
        }
        _ => Err(Error::PatternNotFound(format!(
            "band row {} has no canceling partner",
            lower + 1
        ))),
    }
}

/// Builds the matrix of `cycles` in laundry order. Pairs of surviving
/// cycles keep their entry of `m`; pairs involving a new cycle follow the
/// L1/L2 rules. Returns the order and, per output row, the source row.
fn surgery(m: &IntMatrix, strands: usize, mut cycles: Vec<(CycleLabel, Option<usize>)>) -> (IntMatrix, Vec<Option<usize>>) {
    cycles.sort_by_key(|(l, _)| laundry_key(l, strands));
    let k = cycles.len();
    let out = IntMatrix::from_fn(k, k, |i, j| match (cycles[i].1, cycles[j].1) {
        (Some(a), Some(b)) => m[(a, b)],
        _ => link_entry(&cycles[i].0, &cycles[j].0, i == j),
    });
    (out, cycles.into_iter().map(|c| c.1).collect())
}

/// Sorted labels of a surgery, for witness construction.
fn sorted(strands: usize, cycles: Vec<(CycleLabel, Option<usize>)>) -> Vec<(CycleLabel, Option<usize>)> {
    let mut c = cycles;
    c.sort_by_key(|(l, _)| laundry_key(l, strands));
    c
}

fn kept(order: &LaundryOrder) -> Vec<(CycleLabel, Option<usize>)> {
    order.labels().iter().enumerate().map(|(p, l)| (*l, Some(p))).collect()
}

fn with_height(l: CycleLabel, f: impl Fn(usize) -> usize) -> CycleLabel {
    match l {
        CycleLabel::Band { height, column, sign } => CycleLabel::Band {
            height: f(height),
            column,
            sign,
        },
        c => c,
    }
}

fn finish(out: IntMatrix) -> Result<LinkingMatrix> {
    LinkingMatrix::new(out).map_err(|e| Error::Verification(format!("move produced an invalid matrix: {e}")))
}

fn insert(m: &LinkingMatrix, column: usize, height: usize, upper_sign: Sign) -> Result<LinkingMatrix> {
    let order = m.order();
    let n = order.strands();
    let len = order.band_positions().len();
    if column < 1 || column >= n {
        return Err(Error::OutOfRange(format!("column {column} outside 1..{}", n.saturating_sub(1).max(1))));
    }
    if height < 1 || height > len + 1 {
        return Err(Error::OutOfRange(format!("height {height} outside 1..={}", len + 1)));
    }
    let mut cycles: Vec<_> = kept(&order)
        .into_iter()
        .map(|(l, p)| (with_height(l, |h| if h >= height { h + 2 } else { h }), p))
        .collect();
    for (dh, sign) in [(0, upper_sign.flip()), (1, upper_sign)] {
        cycles.push((
            CycleLabel::Band {
                height: height + dh,
                column,
                sign,
            },
            None,
        ));
    }
    finish(surgery(m, n, cycles).0)
}

fn delete(m: &LinkingMatrix, lower: usize, upper: usize) -> Result<LinkingMatrix> {
    let order = m.order();
    let (hl, _, _) = band(&order, lower)?;
    let (hu, _, _) = band(&order, upper)?;
    if hl > hu || cancel_partner(&order, lower)? != upper {
        return Err(Error::PatternNotFound(format!(
            "rows {} and {} are not a canceling pair",
            lower + 1,
            upper + 1
        )));
    }
    let keep: Vec<usize> = (0..m.size()).filter(|&p| p != lower && p != upper).collect();
    finish(m.principal(&keep))
}

fn stabilize(m: &LinkingMatrix, sign: Sign) -> Result<LinkingMatrix> {
    let order = m.order();
    let n = order.strands();
    let mut cycles: Vec<_> = kept(&order)
        .into_iter()
        .map(|(l, p)| (with_height(l, |h| h + 1), p))
        .collect();
    cycles.push((CycleLabel::Circle(n + 1), None));
    cycles.push((
        CycleLabel::Band {
            height: 1,
            column: n,
            sign,
        },
        None,
    ));
    finish(surgery(m, n + 1, cycles).0)
}

fn destabilize(m: &LinkingMatrix) -> Result<LinkingMatrix> {
    let order = m.order();
    let n = order.strands();
    if n < 2 {
        return Err(Error::PatternNotFound("a single circle cannot destabilize".into()));
    }
    let last: Vec<usize> = order
        .band_positions()
        .into_iter()
        .filter(|&p| matches!(order.labels()[p], CycleLabel::Band { column, .. } if column == n - 1))
        .collect();
    if last.len() != 1 {
        return Err(Error::PatternNotFound(format!(
            "column {} has {} bands, need exactly one",
            n - 1,
            last.len()
        )));
    }
    let circle = order.position_of_circle(n).expect("every circle has a row");
    let keep: Vec<usize> = (0..m.size()).filter(|&p| p != last[0] && p != circle).collect();
    finish(m.principal(&keep))
}

/// Output matrix and witness from per-row input-basis combinations.
fn congruence_move(
    m: &LinkingMatrix,
    strands: usize,
    cycles: Vec<(CycleLabel, Option<usize>)>,
    combos: &[(usize, Vec<(usize, i64)>)],
) -> Result<(LinkingMatrix, UnimodularWitness)> {
    let cycles = sorted(strands, cycles);
    let size = m.size();
    let mut p = IntMatrix::zeros(size, size);
    for (j, (_, src)) in cycles.iter().enumerate() {
        let src = src.expect("congruence moves keep every row");
        match combos.iter().find(|(row, _)| *row == src) {
            Some((_, terms)) => {
                for &(i, c) in terms {
                    p[(i, j)] += c;
                }
            }
            None => p[(src, j)] = 1,
        }
    }
    let out = m.congruence(&p);
    // independent target: copied entries plus L1/L2 entries for moved bands
    let moved: Vec<usize> = combos.iter().map(|c| c.0).collect();
    let expected = IntMatrix::from_fn(size, size, |i, j| {
        let (a, b) = (cycles[i].1.unwrap(), cycles[j].1.unwrap());
        if moved.contains(&a) || moved.contains(&b) {
            link_entry(&cycles[i].0, &cycles[j].0, i == j)
        } else {
            m[(a, b)]
        }
    });
    if out != expected {
        return Err(Error::Verification("witness congruence disagrees with the L1/L2 entries".into()));
    }
    let w = UnimodularWitness(p);
    if !is_unimodular(w.matrix())? {
        return Err(Error::Verification("witness is not unimodular".into()));
    }
    Ok((finish(out)?, w))
}

fn conjugate(m: &LinkingMatrix) -> Result<(LinkingMatrix, UnimodularWitness)> {
    let order = m.order();
    let n = order.strands();
    let len = order.band_positions().len();
    if len == 0 {
        return Ok((m.clone(), UnimodularWitness(IntMatrix::identity(m.size()))));
    }
    let bottom = band_at_height(&order, 1)?;
    let (_, column, _) = band(&order, bottom)?;
    let cycles: Vec<_> = kept(&order)
        .into_iter()
        .map(|(l, p)| (with_height(l, |h| if h == 1 { len } else { h - 1 }), p))
        .collect();
    // X_old - X_new = C_i + C_{i+1}
    let ci = order.position_of_circle(column).expect("circle row");
    let cj = order.position_of_circle(column + 1).expect("circle row");
    congruence_move(m, n, cycles, &[(bottom, vec![(bottom, 1), (ci, -1), (cj, -1)])])
}

fn braid_relation(m: &LinkingMatrix, position: usize, direction: R3Direction) -> Result<(LinkingMatrix, UnimodularWitness)> {
    let order = m.order();
    let n = order.strands();
    let (height, _, _) = band(&order, position)?;
    let word = order.word();
    let site = r3_pattern(word.letters(), n, height - 1, direction)?;
    let [ka, kb, kc] = site.indices;
    let pos: Vec<usize> = [ka, kb, kc]
        .iter()
        .map(|&k| band_at_height(&order, k + 1))
        .collect::<Result<_>>()?;
    let (a, b, c) = (pos[0], pos[1], pos[2]);
    let outer = word.letters()[ka].column;
    let middle = word.letters()[kb].column;
    // heights in a B0-equivalent word where the pattern is contiguous
    let mut new_height = vec![0; site.order.len()];
    for (h, &k) in site.order.iter().enumerate() {
        new_height[k] = h + 1;
    }
    let cycles: Vec<_> = kept(&order)
        .into_iter()
        .map(|(l, p)| {
            let l = match with_height(l, |h| new_height[h - 1]) {
                CycleLabel::Band { height, sign, .. } if p == Some(a) || p == Some(c) => {
                    CycleLabel::Band { height, column: middle, sign }
                }
                CycleLabel::Band { height, sign, .. } if p == Some(b) => CycleLabel::Band { height, column: outer, sign },
                l => l,
            };
            (l, p)
        })
        .collect();
    // X_1 + X_4 = X_2 + X_3: one new band is a signed sum of the old three,
    // the other two are old bands in new slots
    let e = |r: usize, s: i64| (r, s);
    let candidates = [
        [vec![e(a, 1), e(b, 1), e(c, -1)], vec![e(a, 1)], vec![e(b, 1)]],
        [vec![e(b, 1)], vec![e(c, 1)], vec![e(c, 1), e(b, 1), e(a, -1)]],
        [vec![e(c, 1), e(b, 1), e(a, -1)], vec![e(a, 1)], vec![e(b, 1)]],
        [vec![e(b, 1)], vec![e(c, 1)], vec![e(a, 1), e(b, 1), e(c, -1)]],
    ];
    let mut last_err = None;
    for cand in candidates {
        let combos: Vec<(usize, Vec<(usize, i64)>)> = vec![(a, cand[0].clone()), (b, cand[1].clone()), (c, cand[2].clone())];
        match congruence_move(m, n, cycles.clone(), &combos) {
            Ok(r) => return Ok(r),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.expect("candidates are nonempty"))
}

/// Applies a matrix move; size-preserving moves also return their witness.
pub fn apply_matrix_move(m: &LinkingMatrix, s: &MatrixMoveSpec) -> Result<(LinkingMatrix, Option<UnimodularWitness>)> {
    match *s {
        MatrixMoveSpec::M1Insert {
            column,
            height,
            upper_sign,
        } => Ok((insert(m, column, height, upper_sign)?, None)),
        MatrixMoveSpec::M1Delete { lower, upper } => Ok((delete(m, lower, upper)?, None)),
        MatrixMoveSpec::M2Stabilize { sign } => Ok((stabilize(m, sign)?, None)),
        MatrixMoveSpec::M2Destabilize => Ok((destabilize(m)?, None)),
        MatrixMoveSpec::M3Conjugate => conjugate(m).map(|(o, w)| (o, Some(w))),
        MatrixMoveSpec::M4 { position, direction } => braid_relation(m, position, direction).map(|(o, w)| (o, Some(w))),
    }
}

/// Whether encoding after the braid move equals the matrix move applied to
/// the encoding, with any witness checked as well.
pub fn verify_commuting(d: &ClosedBraidDiagram, s: &BraidMoveSpec) -> Result<bool> {
    let target = encode(&apply_braid_move(d, s)?);
    let m = encode(d);
    let spec = MatrixMoveSpec::from_braid(s, &m)?;
    let (out, w) = apply_matrix_move(&m, &spec)?;
    let witness_ok = w.is_none_or(|w| w.verify(m.matrix(), out.matrix()));
    Ok(out == target && witness_ok)
}

/// Stabilization rebuilt from an M1 insertion followed by a slide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeDerivation {
    /// The input with a free circle added and a canceling pair inserted in
    /// the new last column, below every other band.
    pub inserted: LinkingMatrix,
    /// Rectangular change of basis: the old cycles, the upper new band, and
    /// `±(X_1 - X_2)` as the new circle. The free circle is dropped.
    pub slide: IntMatrix,
    /// `slideᵀ · inserted · slide`.
    pub result: LinkingMatrix,
}

pub fn stabilize_via_tube(m: &LinkingMatrix, sign: Sign) -> Result<TubeDerivation> {
    let order = m.order();
    let n = order.strands();
    // widen: a free circle C_{n+1} links nothing
    let mut cycles = kept(&order);
    cycles.push((CycleLabel::Circle(n + 1), None));
    let (widened, _) = surgery(m, n + 1, cycles);
    let widened = finish(widened)?;
    let inserted = insert(&widened, n, 1, sign)?;
    let big = inserted.order();
    // the two bands in column n; other letters may precede them canonically
    let mut pair: Vec<(usize, usize)> = big
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(p, l)| match *l {
            CycleLabel::Band { height, column, .. } if column == n => Some((height, p)),
            _ => None,
        })
        .collect();
    pair.sort();
    let (x1, x2) = (pair[0].1, pair[1].1);
    let free = big.position_of_circle(n + 1).expect("circle row");

    // output labels: the stabilized diagram's, matched to basis vectors
    let mut out_cycles: Vec<(CycleLabel, Vec<(usize, i64)>)> = Vec::new();
    for (p, l) in big.labels().iter().enumerate() {
        if p == free || p == x1 {
            continue;
        }
        if p == x2 {
            out_cycles.push((with_height(*l, |_| 0), vec![(x2, 1)]));
        } else {
            out_cycles.push((*l, vec![(p, 1)]));
        }
    }
    // lk(X_2, X_1 - X_2) = -sign
    let s = -sign.value();
    out_cycles.push((CycleLabel::Circle(n + 1), vec![(x1, s), (x2, -s)]));
    out_cycles.sort_by_key(|(l, _)| laundry_key(l, n + 1));
    let mut slide = IntMatrix::zeros(inserted.size(), out_cycles.len());
    for (j, (_, terms)) in out_cycles.iter().enumerate() {
        for &(i, c) in terms {
            slide[(i, j)] += c;
        }
    }
    let result = finish(inserted.congruence(&slide))?;
    Ok(TubeDerivation { inserted, slide, result })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> ClosedBraidDiagram {
        s.parse().unwrap()
    }

    fn m(s: &str) -> LinkingMatrix {
        encode(&d(s))
    }

    #[test]
    fn stabilize_unknot() {
        let one = LinkingMatrix::new(IntMatrix::from_rows(&[[0]])).unwrap();
        let (out, w) = apply_matrix_move(&one, &MatrixMoveSpec::M2Stabilize { sign: Sign::Positive }).unwrap();
        assert_eq!(out.matrix(), &IntMatrix::from_rows(&[[0, 1, 0], [1, 1, -1], [0, -1, 0]]));
        assert!(w.is_none());
    }

    #[test]
    fn conjugate_trefoil_has_witness() {
        let t = m("2: 1 1 1");
        let (out, w) = apply_matrix_move(&t, &MatrixMoveSpec::M3Conjugate).unwrap();
        assert_eq!(out, t);
        let w = w.unwrap();
        assert_ne!(w.matrix(), &IntMatrix::identity(t.size()));
        assert!(is_unimodular(w.matrix()).unwrap());
        assert!(w.verify(t.matrix(), out.matrix()));
    }

    #[test]
    fn r3_example() {
        let x = m("3: 1 2 1");
        let spec = MatrixMoveSpec::from_braid(
            &BraidMoveSpec::R3 {
                height: 1,
                direction: R3Direction::Right,
            },
            &x,
        )
        .unwrap();
        let (out, w) = apply_matrix_move(&x, &spec).unwrap();
        assert_eq!(out, m("3: 2 1 2"));
        let w = w.unwrap();
        assert_eq!(x.congruence(w.matrix()), *out.matrix());
        assert!(is_unimodular(w.matrix()).unwrap());
    }

    #[test]
    fn commuting_examples() {
        assert!(verify_commuting(&d("1:"), &BraidMoveSpec::Stabilize { sign: Sign::Positive }).unwrap());
        assert!(verify_commuting(
            &d("3: 1 2 1"),
            &BraidMoveSpec::R3 {
                height: 1,
                direction: R3Direction::Right
            }
        )
        .unwrap());
        for s in [Sign::Positive, Sign::Negative] {
            let top = BraidMoveSpec::R2Insert {
                column: 1,
                height: 2,
                upper_sign: s,
            };
            assert!(verify_commuting(&d("2: 1"), &top).unwrap());
        }
    }

    #[test]
    fn all_moves_commute_on_small_words() {
        let words = [
            "4: 3 -2 1 -2 1",
            "3: 1 2 1",
            "3: -1 -2 -1",
            "3: 2 1 2",
            "3: -2 -1 -2",
            "4: 1 3 2 1 3 2 -3",
            "2: 1 -1 1",
            "3: 1 -1 2 -2",
        ];
        for w in words {
            let x = d(w);
            let mut moves = crate::braid::applicable_moves(&x);
            for c in 1..x.strands() {
                for h in 1..=x.crossings() + 1 {
                    for s in [Sign::Positive, Sign::Negative] {
                        moves.push(BraidMoveSpec::R2Insert {
                            column: c,
                            height: h,
                            upper_sign: s,
                        });
                    }
                }
            }
            for mv in moves {
                assert!(verify_commuting(&x, &mv).unwrap(), "{w} {mv}");
            }
        }
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&IntMatrix::identity(3)).unwrap());
        assert!(!is_unimodular(&IntMatrix::from_rows(&[[1, 0], [0, 2]])).unwrap());
        assert!(is_unimodular(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap());
        assert!(is_unimodular(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn bad_patterns() {
        let t = m("2: 1 1 1");
        assert!(matches!(
            apply_matrix_move(&t, &MatrixMoveSpec::M1Delete { lower: 1, upper: 2 }),
            Err(Error::PatternNotFound(_))
        ));
        assert!(apply_matrix_move(&t, &MatrixMoveSpec::M2Destabilize).is_err());
        assert!(apply_matrix_move(
            &t,
            &MatrixMoveSpec::M4 {
                position: 1,
                direction: R3Direction::Right
            }
        )
        .is_err());
        assert!(apply_matrix_move(
            &t,
            &MatrixMoveSpec::M4 {
                position: 0,
                direction: R3Direction::Right
            }
        )
        .is_err());
    }

    #[test]
    fn tube_route_matches_stabilization() {
        for w in ["1:", "2: 1 1 1", "4: 3 -2 1 -2 1", "3: 1 -2"] {
            let x = m(w);
            for s in [Sign::Positive, Sign::Negative] {
                let t = stabilize_via_tube(&x, s).unwrap();
                let (direct, _) = apply_matrix_move(&x, &MatrixMoveSpec::M2Stabilize { sign: s }).unwrap();
                assert_eq!(t.result, direct, "{w} {s:?}");
            }
        }
    }
}
