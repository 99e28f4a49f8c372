//! Exact link invariants from a Seifert matrix, and an independent
//! Alexander polynomial computed from the reduced Burau representation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::braid::{apply_braid_move, BraidMoveSpec, BraidWord, ClosedBraidDiagram, Sign};
use crate::error::{Error, Result};
use crate::forms::{seifert_matrix, SeifertMatrix};
use crate::matrix::{bareiss_det, IntMatrix};
use crate::poly::{LaurentPoly, ZPoly};

/// `|det(S + Sᵀ)|`; 1 for the empty matrix.
pub fn determinant(s: &SeifertMatrix) -> u64 {
    let sym = s.add(&s.transpose());
    let det = sym.determinant().expect("Seifert matrices are square");
    u64::try_from(det.unsigned_abs()).expect("determinant exceeds u64")
}

/// Signature of `S + Sᵀ` by exact congruence diagonalization over the
/// rationals.
pub fn signature(s: &SeifertMatrix) -> i64 {
    symmetric_signature(&s.add(&s.transpose()))
}

pub(crate) fn symmetric_signature(m: &IntMatrix) -> i64 {
    integer_signature(m).unwrap_or_else(|| rational_signature(m))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Same elimination as [`rational_signature`] on integer multiples of the
/// Schur complements, reduced by their content. `None` on overflow.
fn integer_signature(m: &IntMatrix) -> Option<i64> {
    let mut a: Vec<Vec<i128>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut sig = 0i64;
    // the remaining block is (-1)^flip times a positive multiple of the true one
    let mut flip = false;
    while !a.is_empty() {
        let n = a.len();
        let (scale, next): (i128, Vec<Vec<i128>>) = if let Some(p) = (0..n).find(|&i| a[i][i] != 0) {
            let pivot = a[p][p];
            sig += if (pivot > 0) != flip { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            let mut next = Vec::with_capacity(rest.len());
            for &i in &rest {
                let mut row = Vec::with_capacity(rest.len());
                for &j in &rest {
                    row.push(pivot.checked_mul(a[i][j])?.checked_sub(a[i][p].checked_mul(a[p][j])?)?);
                }
                next.push(row);
            }
            (pivot, next)
        } else {
            let Some((p, q)) = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] != 0)
            else {
                break;
            };
            let b = a[p][q];
            let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
            let mut next = Vec::with_capacity(rest.len());
            for &i in &rest {
                let mut row = Vec::with_capacity(rest.len());
                for &j in &rest {
                    let cross = a[i][p].checked_mul(a[q][j])?.checked_add(a[i][q].checked_mul(a[p][j])?)?;
                    row.push(b.checked_mul(a[i][j])?.checked_sub(cross)?);
                }
                next.push(row);
            }
            (b, next)
        };
        if scale < 0 {
            flip = !flip;
        }
        let g = next.iter().flatten().fold(0, |g, &x| gcd(g, x));
        a = if g > 1 {
            next.into_iter().map(|r| r.into_iter().map(|x| x / g).collect()).collect()
        } else {
            next
        };
    }
    Some(sig)
}

fn rational_signature(m: &IntMatrix) -> i64 {
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut sig = 0i64;
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[p][p].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| &a[i][j] - &a[i][p] * &a[p][j] / &pivot)
                        .collect()
                })
                .collect();
            continue;
        }
        // zero diagonal: split off a hyperbolic 2x2 block, signature 0
        let Some((p, q)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        let b = a[p][q].clone();
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        // block inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / &b)
                    .collect()
            })
            .collect();
    }
    sig
}

/// `det(S - t·Sᵀ)` normalized up to `±t^k`; 1 for the empty matrix.
pub fn alexander(s: &SeifertMatrix) -> LaurentPoly {
    let n = s.rows();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ZPoly::linear(s[(i, j)] as i128, -(s[(j, i)] as i128)))
                .collect()
        })
        .collect();
    LaurentPoly::from_zpoly(&bareiss_det(rows)).normalized()
}

/// Reduced Burau matrix of one letter on `n` strands (size `n - 1`).
fn burau_letter(n: usize, column: usize, sign: Sign) -> Vec<Vec<LaurentPoly>> {
    let dim = n - 1;
    let mut g: Vec<Vec<LaurentPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect();
    let r = column - 1;
    match sign {
        Sign::Positive => {
            if r > 0 {
                g[r][r - 1] = LaurentPoly::monomial(1, 1);
            }
            g[r][r] = LaurentPoly::monomial(-1, 1);
            if r + 1 < dim {
                g[r][r + 1] = LaurentPoly::one();
            }
        }
        Sign::Negative => {
            if r > 0 {
                g[r][r - 1] = LaurentPoly::one();
            }
            g[r][r] = LaurentPoly::monomial(-1, -1);
            if r + 1 < dim {
                g[r][r + 1] = LaurentPoly::monomial(1, -1);
            }
        }
    }
    g
}

fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(LaurentPoly::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Alexander polynomial of the closure from
/// `det(I - Burau(w)) = Δ(t)·(1 + t + … + t^{n-1})` up to units.
pub fn alexander_oracle(w: &BraidWord) -> Result<LaurentPoly> {
    let n = w.strands();
    if n == 1 {
        return Ok(LaurentPoly::one());
    }
    let dim = n - 1;
    let mut b: Vec<Vec<LaurentPoly>> = burau_letter(n, 1, Sign::Positive);
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
        }
    }
    for l in w.letters() {
        b = mat_mul(&b, &burau_letter(n, l.column, l.sign));
    }
    let rows: Vec<Vec<ZPoly>> = (0..dim)
        .map(|i| {
            let row: Vec<LaurentPoly> = (0..dim)
                .map(|j| {
                    let id = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
                    &id - &b[i][j]
                })
                .collect();
            let shift = row
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| -p.low_degree())
                .max()
                .unwrap_or(0)
                .max(0);
            row.iter().map(|p| p.to_zpoly_shifted(shift)).collect()
        })
        .collect();
    let det = bareiss_det(rows);
    let divisor = ZPoly::new(vec![1; n]);
    let quotient = det.checked_div(&divisor).ok_or_else(|| {
        Error::Verification(format!("Burau determinant not divisible by [{n}]_t"))
    })?;
    Ok(LaurentPoly::from_zpoly(&quotient).normalized())
}

/// Determinant, absolute signature and normalized Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantTriple {
    pub determinant: u64,
    pub abs_signature: u64,
    pub alexander: LaurentPoly,
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(det {}, |sig| {}, {})",
            self.determinant, self.abs_signature, self.alexander
        )
    }
}

/// Invariants of a diagram with the signed signature kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkInvariants {
    pub determinant: u64,
    pub signature: i64,
    pub alexander: LaurentPoly,
}

impl LinkInvariants {
    pub fn of(d: &ClosedBraidDiagram) -> Result<Self> {
        let s = seifert_matrix(d)?;
        Ok(LinkInvariants {
            determinant: determinant(&s),
            signature: signature(&s),
            alexander: alexander(&s),
        })
    }

    pub fn triple(&self) -> InvariantTriple {
        InvariantTriple {
            determinant: self.determinant,
            abs_signature: self.signature.unsigned_abs(),
            alexander: self.alexander.clone(),
        }
    }
}

/// The command-line line format `det=<n> sig=<n> alexander=<c0> … <ck>`.
impl fmt::Display for LinkInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "det={} sig={} alexander={}",
            self.determinant,
            self.signature,
            self.alexander.coefficient_string()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    /// Invariants before any move, then after each move.
    pub steps: Vec<InvariantTriple>,
    /// Indices into `steps` where the triple differs from the start.
    pub changes: Vec<usize>,
}

impl InvarianceReport {
    pub fn is_constant(&self) -> bool {
        self.changes.is_empty()
    }
}

pub fn invariance_check(d: &ClosedBraidDiagram, moves: &[BraidMoveSpec]) -> Result<InvarianceReport> {
    let mut current = d.clone();
    let first = LinkInvariants::of(&current)?.triple();
    let mut steps = vec![first.clone()];
    let mut changes = Vec::new();
    for m in moves {
        current = apply_braid_move(&current, m)?;
        let t = LinkInvariants::of(&current)?.triple();
        if t != first {
            changes.push(steps.len());
        }
        steps.push(t);
    }
    Ok(InvarianceReport { steps, changes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> ClosedBraidDiagram {
        s.parse().unwrap()
    }

    fn inv(s: &str) -> LinkInvariants {
        LinkInvariants::of(&d(s)).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(inv("1:").determinant, 1);
        assert_eq!(inv("2: 1 1 1").determinant, 3);
        assert_eq!(inv("4: 3 -2 1 -2 1").determinant, 5);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(inv("1:").signature, 0);
        assert_eq!(inv("2: 1 1 1").signature.abs(), 2);
        assert_eq!(inv("4: 3 -2 1 -2 1").signature, 0);
        assert_eq!(inv("3: 1 1").signature, inv("2: 1 1").signature);
    }

    #[test]
    fn signature_handles_zero_diagonals() {
        let h = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(symmetric_signature(&h), 0);
        let m = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 3]]);
        assert_eq!(symmetric_signature(&m), 1);
        let neg = IntMatrix::from_rows(&[[-2, 1], [1, -2]]);
        assert_eq!(symmetric_signature(&neg), -2);
        assert_eq!(symmetric_signature(&IntMatrix::zeros(3, 3)), 0);
        let m = IntMatrix::from_rows(&[[0, 2, 1], [2, 0, 3], [1, 3, -1]]);
        assert_eq!(integer_signature(&m), Some(rational_signature(&m)));
    }

    #[test]
    fn integer_and_rational_paths_agree() {
        let mut r = crate::random::rng(5);
        for _ in 0..200 {
            let d = crate::random::random_diagram(&mut r);
            let s = seifert_matrix(&d).unwrap();
            let f = s.add(&s.transpose());
            assert_eq!(integer_signature(&f), Some(rational_signature(&f)), "{d}");
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(inv("1:").alexander, LaurentPoly::one());
        assert_eq!(inv("4: 3 -2 1 -2 1").alexander, LaurentPoly::from_coeffs(&[1, -3, 1]));
        assert!(inv("3: 1 1").alexander.is_zero());
    }

    #[test]
    fn oracle_examples() {
        let o = |s: &str| alexander_oracle(&s.parse().unwrap()).unwrap();
        assert_eq!(o("2: 1 1 1"), LaurentPoly::from_coeffs(&[1, -1, 1]));
        assert!(o("2: 1 1").eq_up_to_units(&LaurentPoly::from_coeffs(&[1, -1])));
        assert_eq!(o("1:"), LaurentPoly::one());
        assert!(o("2:").is_zero());
        assert_eq!(o("3: 1 -2 1 -2"), LaurentPoly::from_coeffs(&[1, -3, 1]));
        assert!(o("3: 1 1").is_zero());
    }

    #[test]
    fn determinant_is_alexander_at_minus_one() {
        for s in ["2: 1 1 1", "4: 3 -2 1 -2 1", "2: 1 1", "3: 1 1 2 -1 2 2", "3: 1 1"] {
            let i = inv(s);
            assert_eq!(i.determinant as i128, i.alexander.value_at_minus_one().abs(), "{s}");
        }
    }

    #[test]
    fn output_line() {
        let i = inv("2: 1 1 1");
        let line = i.to_string();
        assert!(line == "det=3 sig=-2 alexander=1 -1 1" || line == "det=3 sig=2 alexander=1 -1 1", "{line}");
    }

    #[test]
    fn invariance_examples() {
        use crate::braid::R3Direction;
        let moves = [
            BraidMoveSpec::Stabilize { sign: Sign::Positive },
            BraidMoveSpec::ConjugateRotate,
            BraidMoveSpec::R2Insert {
                column: 1,
                height: 1,
                upper_sign: Sign::Negative,
            },
            BraidMoveSpec::R2Delete { height: 1 },
            BraidMoveSpec::Destabilize,
        ];
        let r = invariance_check(&d("1:"), &moves).unwrap();
        assert!(r.is_constant());
        assert_eq!(r.steps.len(), 6);
        assert_eq!(r.steps[0].determinant, 1);

        let r = invariance_check(&d("4: 3 -2 1 -2 1"), &[BraidMoveSpec::Destabilize]).unwrap();
        assert!(r.is_constant());
        assert_eq!(r.steps[1].alexander, LaurentPoly::from_coeffs(&[1, -3, 1]));

        let r = invariance_check(
            &d("3: 1 2 1"),
            &[BraidMoveSpec::R3 {
                height: 1,
                direction: R3Direction::Right,
            }],
        )
        .unwrap();
        assert!(r.is_constant());
        assert!(invariance_check(&d("1:"), &[BraidMoveSpec::Destabilize]).is_err());
    }
}
