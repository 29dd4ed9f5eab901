//! Integer-coefficient kernels behind `K`, `L` and `D`.
//!
//! Every structure constant of the tower is integral (α³, θ³ and u³ reduce
//! with coefficients in `Z[α]`, and σ, φ map `Z[α][θ]` into itself), so an
//! element is stored as integer numerators over one shared denominator and
//! products never leave `Z` until a single final normalization.
//!
//! Flat layouts: `Z[α]` is `[a0, a1, a2]`; `Z[α][θ]` is 9 entries with
//! index `3j + k` for `θ^j α^k`; `D` is 27 entries with index `9i + 3j + k`
//! for `α^k θ^j u^i`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Zk = [BigInt; 3];
pub(crate) type Zl = [BigInt; 9];
pub(crate) type Zd = [BigInt; 27];

/// Numerators over a positive common denominator, in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Frac<const N: usize> {
    pub num: [BigInt; N],
    pub den: BigInt,
}

impl<const N: usize> Frac<N> {
    pub fn new(num: [BigInt; N], den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = Self { num, den };
        f.normalize();
        f
    }

    pub fn integral(num: [BigInt; N]) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::integral(std::array::from_fn(|_| BigInt::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in self.num.iter_mut() {
                *n = -&*n;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in self.num.iter().filter(|n| !n.is_zero()) {
            g = g.gcd(n);
            if g.is_one() {
                return;
            }
        }
        for n in self.num.iter_mut() {
            *n = &*n / &g;
        }
        self.den = &self.den / &g;
    }

    fn combine(&self, rhs: &Self, sign: i8) -> Self {
        let apply = |a: &BigInt, b: &BigInt| if sign > 0 { a + b } else { a - b };
        if self.den == rhs.den {
            return Self::new(
                std::array::from_fn(|i| apply(&self.num[i], &rhs.num[i])),
                self.den.clone(),
            );
        }
        let g = self.den.gcd(&rhs.den);
        let fa = &rhs.den / &g;
        let fb = &self.den / &g;
        Self::new(
            std::array::from_fn(|i| apply(&(&self.num[i] * &fa), &(&rhs.num[i] * &fb))),
            &self.den * &fa,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: std::array::from_fn(|i| -&self.num[i]),
            den: self.den.clone(),
        }
    }
}

/// `α³ = 1 + 2α − α²`.
pub(crate) fn zk_mul(a: &[BigInt], b: &[BigInt]) -> Zk {
    let mut p: [BigInt; 5] = std::array::from_fn(|_| BigInt::zero());
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            if !b[j].is_zero() {
                p[i + j] += &a[i] * &b[j];
            }
        }
    }
    for k in (3..5).rev() {
        if p[k].is_zero() {
            continue;
        }
        let top = std::mem::take(&mut p[k]);
        p[k - 3] += &top;
        p[k - 2] += &top * 2;
        p[k - 1] -= top;
    }
    let [p0, p1, p2, _, _] = p;
    [p0, p1, p2]
}

pub(crate) fn zk_is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn add_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s;
        }
    }
}

fn sub_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= s;
        }
    }
}

/// Images of `1, α, α²` under `σ^r`, `r = 0, 1, 2`.
fn sigma_table() -> &'static [[Zk; 3]; 3] {
    static TABLE: OnceLock<[[Zk; 3]; 3]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let z = |v: [i64; 3]| -> Zk { v.map(BigInt::from) };
        let one = z([1, 0, 0]);
        let s1 = z([1, -1, -1]);
        let s1_sq = zk_mul(&s1, &s1);
        // σ²(α) = σ(σ(α)) = 1 − σ(α) − σ(α)²
        let mut s2 = one.clone();
        sub_into(&mut s2, &s1);
        sub_into(&mut s2, &s1_sq);
        let s2_sq = zk_mul(&s2, &s2);
        [
            [one.clone(), z([0, 1, 0]), z([0, 0, 1])],
            [one.clone(), s1, s1_sq],
            [one, s2, s2_sq],
        ]
    })
}

pub(crate) fn zk_sigma(a: &[BigInt], power: u32) -> Zk {
    let r = (power % 3) as usize;
    if r == 0 {
        return std::array::from_fn(|i| a[i].clone());
    }
    let table = &sigma_table()[r];
    let mut out: Zk = std::array::from_fn(|_| BigInt::zero());
    for (c, img) in a.iter().zip(table) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(img) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Lower coefficients of `f`: `θ³ = −(c0 + c1 θ + c2 θ²)`.
fn f_low() -> &'static [Zk; 3] {
    static LOW: OnceLock<[Zk; 3]> = OnceLock::new();
    LOW.get_or_init(|| [[1, 0, 0], [-1, -1, 0], [-2, 1, 0]].map(|v| v.map(BigInt::from)))
}

pub(crate) fn zl_part(a: &[BigInt], j: usize) -> &[BigInt] {
    &a[3 * j..3 * j + 3]
}

pub(crate) fn zl_mul(a: &[BigInt], b: &[BigInt]) -> Zl {
    let mut p: [Zk; 5] = std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero()));
    for i in 0..3 {
        let ai = zl_part(a, i);
        if zk_is_zero(ai) {
            continue;
        }
        for j in 0..3 {
            let bj = zl_part(b, j);
            if !zk_is_zero(bj) {
                add_into(&mut p[i + j], &zk_mul(ai, bj));
            }
        }
    }
    let low = f_low();
    for k in (3..5).rev() {
        if zk_is_zero(&p[k]) {
            continue;
        }
        let top = std::mem::replace(&mut p[k], std::array::from_fn(|_| BigInt::zero()));
        for (m, c) in low.iter().enumerate() {
            sub_into(&mut p[k - 3 + m], &zk_mul(&top, c));
        }
    }
    std::array::from_fn(|n| p[n / 3][n % 3].clone())
}

/// `k · l` for `k ∈ Z[α]`, `l ∈ Z[α][θ]`.
pub(crate) fn zl_scale(k: &[BigInt], l: &[BigInt]) -> Zl {
    let mut out: Zl = std::array::from_fn(|_| BigInt::zero());
    for j in 0..3 {
        let part = zl_part(l, j);
        if !zk_is_zero(part) {
            let prod = zk_mul(k, part);
            out[3 * j..3 * j + 3].clone_from_slice(&prod);
        }
    }
    out
}

/// Images of `θ` and `θ²` under `φ^r`.
fn phi_table() -> &'static [[Zl; 2]; 3] {
    static TABLE: OnceLock<[[Zl; 2]; 3]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let zl = |v: [i64; 9]| -> Zl { v.map(BigInt::from) };
        let theta = zl([0, 0, 0, 1, 0, 0, 0, 0, 0]);
        let theta_sq = zl_mul(&theta, &theta);
        // φ(θ) = 2 + (1 − α)θ − θ²
        let p1 = zl([2, 0, 0, 1, -1, 0, -1, 0, 0]);
        let p1_sq = zl_mul(&p1, &p1);
        let p2 = zl_substitute(&p1, &p1, &p1_sq);
        let p2_sq = zl_mul(&p2, &p2);
        [[theta, theta_sq], [p1, p1_sq], [p2, p2_sq]]
    })
}

fn zl_substitute(a: &[BigInt], img: &[BigInt], img_sq: &[BigInt]) -> Zl {
    let mut out: Zl = std::array::from_fn(|_| BigInt::zero());
    out[..3].clone_from_slice(zl_part(a, 0));
    for (j, image) in [(1, img), (2, img_sq)] {
        let c = zl_part(a, j);
        if !zk_is_zero(c) {
            add_into(&mut out, &zl_scale(c, image));
        }
    }
    out
}

pub(crate) fn zl_phi(a: &[BigInt], power: u32) -> Zl {
    let r = (power % 3) as usize;
    if r == 0 {
        return std::array::from_fn(|i| a[i].clone());
    }
    let [img, img_sq] = &phi_table()[r];
    zl_substitute(a, img, img_sq)
}

pub(crate) fn zl_sigma_coeffs(a: &[BigInt], power: u32) -> Zl {
    let mut out: Zl = std::array::from_fn(|_| BigInt::zero());
    for j in 0..3 {
        out[3 * j..3 * j + 3].clone_from_slice(&zk_sigma(zl_part(a, j), power));
    }
    out
}

/// `u³ = 2π = 2(α² − α − 2)`.
fn two_pi() -> &'static Zk {
    static TWO_PI: OnceLock<Zk> = OnceLock::new();
    TWO_PI.get_or_init(|| [-4, -2, 2].map(BigInt::from))
}

pub(crate) fn zd_part(a: &[BigInt], i: usize) -> &[BigInt] {
    &a[9 * i..9 * i + 9]
}

/// `(l u^i)(m u^j) = l φ^i(m) u^(i+j)`, `u³ = 2π`.
pub(crate) fn zd_mul(a: &[BigInt], b: &[BigInt]) -> Zd {
    let mut out: Zd = std::array::from_fn(|_| BigInt::zero());
    let b_twisted: [Option<[Zl; 3]>; 3] = std::array::from_fn(|j| {
        let bj = zd_part(b, j);
        (!bj.iter().all(Zero::is_zero)).then(|| std::array::from_fn(|i| zl_phi(bj, i as u32)))
    });
    for i in 0..3 {
        let ai = zd_part(a, i);
        if ai.iter().all(Zero::is_zero) {
            continue;
        }
        for (j, bt) in b_twisted.iter().enumerate() {
            let Some(bt) = bt else { continue };
            let mut term = zl_mul(ai, &bt[i]);
            let mut e = i + j;
            if e >= 3 {
                term = zl_scale(two_pi(), &term);
                e -= 3;
            }
            add_into(&mut out[9 * e..9 * e + 9], &term);
        }
    }
    out
}

/// `k · a` for central `k ∈ Z[α]`.
pub(crate) fn zd_scale(k: &[BigInt], a: &[BigInt]) -> Zd {
    let mut out: Zd = std::array::from_fn(|_| BigInt::zero());
    for i in 0..3 {
        let part = zd_part(a, i);
        if !part.iter().all(Zero::is_zero) {
            out[9 * i..9 * i + 9].clone_from_slice(&zl_scale(k, part));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zk(v: [i64; 3]) -> Zk {
        v.map(BigInt::from)
    }

    #[test]
    fn alpha_cubed() {
        let a = zk([0, 1, 0]);
        let a2 = zk_mul(&a, &a);
        assert_eq!(zk_mul(&a, &a2), zk([1, 2, -1]));
    }

    #[test]
    fn sigma_has_order_three() {
        let a = zk([3, -1, 4]);
        let once = zk_sigma(&a, 1);
        let thrice = zk_sigma(&zk_sigma(&once, 1), 1);
        assert_eq!(thrice, a);
        assert_eq!(zk_sigma(&once, 1), zk_sigma(&a, 2));
    }

    #[test]
    fn normalization() {
        let f = Frac::new([4, -6, 0].map(BigInt::from), BigInt::from(-8));
        assert_eq!(f.num, [-2, 3, 0].map(BigInt::from));
        assert_eq!(f.den, BigInt::from(4));
        let z = Frac::new([0, 0, 0].map(BigInt::from), BigInt::from(5));
        assert_eq!(z, Frac::zero());
    }
}
