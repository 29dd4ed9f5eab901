//! Compiled-in data for the automorphism `σ̃` of `D` and the witness `d`.
//!
//! Matrices are indexed `[i][j]` and stand for `Σ m_ij θ^i u^j`.

use crate::algebra_d::DElem;
use crate::field_tower::{KElem, LElem};
use crate::rational::{frac, int, Rational};
use crate::ring::Ring;

/// A 3×3 matrix of `K`-entries read as `Σ m_ij θ^i u^j`.
pub type KMatrix = [[KElem; 3]; 3];

/// Data determining `σ̃` (image of θ, and λ with `σ̃(u) = λu`) and the
/// element `d` with `σ̃³ = Inn(d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub theta_image: KMatrix,
    pub lambda: LElem,
    pub d: KMatrix,
}

/// `a2·α² + a1·α + a0`, written in the same order as it is usually printed.
fn desc(a2: i64, a1: i64, a0: i64) -> [i64; 3] {
    [a0, a1, a2]
}

fn matrix_over(rows: [[[i64; 3]; 3]; 3], denominator: i64) -> KMatrix {
    let scale: Rational = frac(1, denominator);
    rows.map(|row| row.map(|e| KElem::from_ints(e).scale(&scale)))
}

pub const THETA_IMAGE_DENOMINATOR: i64 = 673;

/// Integer numerators `c_ij` of `σ̃(θ) = (1/673) Σ c_ij θ^i u^j`.
pub fn theta_image_numerators() -> [[[i64; 3]; 3]; 3] {
    [
        [desc(303, -154, -276), desc(314, 218, -326), desc(-48, 151, 157)],
        [desc(390, 708, -855), desc(40, -238, 430), desc(-397, -27, 275)],
        [desc(-106, 25, 543), desc(-128, -46, -30), desc(135, 38, -63)],
    ]
}

/// Entries `d_ij` of the witness `d = Σ d_ij θ^i u^j`.
///
/// The `u¹` column is `(-52α² - 30α + 184, 350α² - 14α - 574, -14α² + 14α - 84)`.
/// With that column negated, conjugation by `d` no longer agrees with `σ̃³`;
/// see [`d_with_negated_u_column`].
pub fn d_entries() -> [[[i64; 3]; 3]; 3] {
    [
        [desc(468, 536, 136), desc(-52, -30, 184), desc(-126, -357, 77)],
        [desc(628, -244, -624), desc(350, -14, -574), desc(151, -163, -201)],
        [desc(-416, -240, 324), desc(-14, 14, -84), desc(74, 166, -124)],
    ]
}

/// `d` with the sign of its `u¹` column flipped (negative control).
pub fn d_with_negated_u_column() -> KMatrix {
    let mut m = matrix_over(d_entries(), 1);
    for row in m.iter_mut() {
        row[1] = -&row[1];
    }
    m
}

impl Constants {
    pub fn standard() -> Self {
        Self {
            theta_image: matrix_over(theta_image_numerators(), THETA_IMAGE_DENOMINATOR),
            lambda: LElem::lambda(),
            d: matrix_over(d_entries(), 1),
        }
    }

    pub fn theta_image_elem(&self) -> DElem {
        matrix_to_delem(&self.theta_image)
    }

    pub fn d_elem(&self) -> DElem {
        matrix_to_delem(&self.d)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::standard()
    }
}

/// `Σ m_ij θ^i u^j` as an element of `D` (left `L`-coefficients of `u^j`).
pub fn matrix_to_delem(m: &KMatrix) -> DElem {
    DElem::new(std::array::from_fn(|j| {
        LElem::new(std::array::from_fn(|i| m[i][j].clone()))
    }))
}

/// The identity matrix in the `θ^i u^j` layout: the element `1 ∈ D`.
pub fn unit_matrix() -> KMatrix {
    let mut m: KMatrix = std::array::from_fn(|_| std::array::from_fn(|_| KElem::zero()));
    m[0][0] = KElem::rational(int(1));
    m
}
