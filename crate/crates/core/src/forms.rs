//! Matrices derived from the linking matrix: the correction matrix `N`, the
//! orientable-surface matrix `M'`, the Gordon-Litherland form `F` and the
//! Seifert matrix `S`.
//!
//! `M = M' + M'ᵀ + N`. The symmetric part of `M'` is fixed by `M - N`; its
//! antisymmetric part is the intersection form of the cycles on the
//! orientable surface obtained by inserting a negative half-twisted band `T`
//! between the two halves of the laundry order. Cutting the disk there and
//! reattaching through `T` flips the second half, so on the resulting disk
//! the feet appear as the first half in order followed by the second half
//! reversed. Two cycles then intersect once exactly when their feet
//! interleave along that boundary.

use std::ops::Deref;

use crate::braid::ClosedBraidDiagram;
use crate::error::{Error, Result};
use crate::laundry_model::{feet_halves, End, Endpoint};
use crate::linking::{encode, laundry_order, LaundryOrder, LinkingMatrix};
use crate::matrix::IntMatrix;

macro_rules! matrix_newtype {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(IntMatrix);

        impl $name {
            pub fn matrix(&self) -> &IntMatrix {
                &self.0
            }

            pub fn into_inner(self) -> IntMatrix {
                self.0
            }
        }

        impl Deref for $name {
            type Target = IntMatrix;

            fn deref(&self) -> &IntMatrix {
                &self.0
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

matrix_newtype!(
    /// 1 on band-by-band entries, 0 elsewhere.
    CorrectionN
);
matrix_newtype!(
    /// Antisymmetric intersection form on the orientable laundry surface.
    IntersectionForm
);
matrix_newtype!(
    /// `lk(c_i⁺, c_j)` on the orientable laundry surface.
    MPrime
);
matrix_newtype!(
    /// The linking matrix without its last (`C_1`) row and column.
    GlForm
);
matrix_newtype!(
    /// `M'` without its last (`C_1`) row and column.
    SeifertMatrix
);

impl SeifertMatrix {
    /// Wraps an arbitrary square matrix, e.g. one read from a file.
    pub fn from_matrix(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(SeifertMatrix(m))
    }
}

impl GlForm {
    /// Wraps a square matrix; validity is checked by [`restore_m_from_gl`].
    pub fn from_matrix(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(GlForm(m))
    }
}

pub fn correction_n(order: &LaundryOrder) -> CorrectionN {
    let l = order.labels();
    CorrectionN(IntMatrix::from_fn(l.len(), l.len(), |i, j| {
        i64::from(l[i].is_band() && l[j].is_band())
    }))
}

/// Positions of every foot on the boundary of the orientable surface's disk.
fn orientable_boundary(order: &LaundryOrder) -> Vec<Endpoint> {
    let (mut boundary, mut second) = feet_halves(order);
    second.reverse();
    boundary.extend(second);
    boundary
}

/// `x` lies on the open arc running from `from` to `to` in increasing
/// (cyclic) boundary position.
fn on_arc(from: usize, to: usize, x: usize) -> bool {
    if from < to {
        from < x && x < to
    } else {
        x > from || x < to
    }
}

pub fn intersection_form(d: &ClosedBraidDiagram) -> IntersectionForm {
    intersection_form_of(&laundry_order(d))
}

pub(crate) fn intersection_form_of(order: &LaundryOrder) -> IntersectionForm {
    let boundary = orientable_boundary(order);
    let m = order.len();
    // Every cycle, circle or band, runs through its band from the first foot
    // (a) to the second foot (b) and returns across the disk from b to a.
    let mut feet = vec![(0usize, 0usize); m];
    for (pos, e) in boundary.iter().enumerate() {
        let slot = &mut feet[e.chord - 1];
        match e.end {
            End::A => slot.0 = pos,
            End::B => slot.1 = pos,
        }
    }
    IntersectionForm(IntMatrix::from_fn(m, m, |i, j| {
        if i == j {
            return 0;
        }
        let (head_i, tail_i) = feet[i];
        let (head_j, tail_j) = feet[j];
        let starts_on_arc = on_arc(tail_i, head_i, tail_j);
        let ends_on_arc = on_arc(tail_i, head_i, head_j);
        match (starts_on_arc, ends_on_arc) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }))
}

pub fn m_prime(d: &ClosedBraidDiagram) -> Result<MPrime> {
    let order = laundry_order(d);
    let m = encode(d);
    let n = correction_n(&order);
    let a = intersection_form_of(&order);
    let sum = m.matrix().sub(&n).add(&a);
    let size = sum.rows();
    let mut out = IntMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let v = sum[(i, j)];
            if v % 2 != 0 {
                return Err(Error::Verification(format!(
                    "M - N + A is odd at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            out[(i, j)] = v / 2;
        }
    }
    Ok(MPrime(out))
}

pub fn gl_form(m: &LinkingMatrix) -> GlForm {
    GlForm(m.matrix().without_last())
}

pub fn seifert_matrix(d: &ClosedBraidDiagram) -> Result<SeifertMatrix> {
    Ok(SeifertMatrix(m_prime(d)?.0.without_last()))
}

/// Appends the `C_1` row: minus the sum of the other circle rows.
pub fn restore_m_from_gl(f: &GlForm) -> Result<LinkingMatrix> {
    let g = f.matrix();
    let k = g.rows();
    let circles: Vec<usize> = (0..k).filter(|&i| g[(i, i)] == 0).collect();
    let last: Vec<i64> = (0..k).map(|j| -circles.iter().map(|&i| g[(i, j)]).sum::<i64>()).collect();
    let m = IntMatrix::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
        (true, true) => g[(i, j)],
        (true, false) => last[i],
        (false, true) => last[j],
        (false, false) => 0,
    });
    LinkingMatrix::new(m)
}

/// `S + Sᵀ + N` with `N` reduced like `S`.
pub fn f_from_s(s: &SeifertMatrix, order: &LaundryOrder) -> Result<GlForm> {
    let expected = order.len().saturating_sub(1);
    if s.rows() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: s.rows(),
        });
    }
    let n = correction_n(order).0.without_last();
    Ok(GlForm(s.add(&s.transpose()).add(&n)))
}
