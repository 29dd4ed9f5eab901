//! Exact arithmetic in the tower `Q ⊂ K ⊂ L`.
//!
//! * `K = Q[α]/(α³ + α² − 2α − 1)`, the real cubic subfield of the 7th
//!   cyclotomic field, with generator `σ: α ↦ −α² − α + 1` of `Gal(K/Q)`.
//! * `L = K[θ]/(f)`, `f = x³ + (α−2)x² − (α+1)x + 1`, cyclic over `K` with
//!   generator `φ: θ ↦ −θ² + (1−α)θ + 2` of `Gal(L/K)`.
//!
//! Both fields are stored in power bases (integer numerators over a common
//! denominator, in lowest terms) and reduced after every product, so
//! equality is structural.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::integral::{self, Frac};
use crate::linalg;
use crate::macros::forward_ring_ops;
use crate::rational::{format_rational, int, random_small, Rational};
use crate::ring::{CubicPoly, Field, Ring};

/// `x³ + x² − 2x − 1`.
pub fn minpoly_alpha() -> CubicPoly<Rational> {
    CubicPoly::new(int(-1), int(-2), int(1), int(1))
}

/// `f = x³ + (α−2)x² − (α+1)x + 1 ∈ K[x]`.
pub fn f_poly() -> CubicPoly<KElem> {
    CubicPoly::new(
        KElem::from_ints([1, 0, 0]),
        KElem::from_ints([-1, -1, 0]),
        KElem::from_ints([-2, 1, 0]),
        KElem::one(),
    )
}

/// Common denominator representation of a list of rationals.
fn over_common_denominator<const N: usize>(coeffs: &[Rational; N]) -> Frac<N> {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = std::array::from_fn(|i| coeffs[i].numer() * (&den / coeffs[i].denom()));
    Frac::new(num, den)
}

/// Element `a0 + a1·α + a2·α²` of `K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KElem(pub(crate) Frac<3>);

impl KElem {
    pub fn new(coeffs: [Rational; 3]) -> Self {
        Self(over_common_denominator(&coeffs))
    }

    pub fn from_ints(coeffs: [i64; 3]) -> Self {
        Self(Frac::integral(coeffs.map(BigInt::from)))
    }

    pub(crate) fn from_parts(num: &[BigInt], den: &BigInt) -> Self {
        Self(Frac::new(std::array::from_fn(|i| num[i].clone()), den.clone()))
    }

    pub fn rational(q: Rational) -> Self {
        let (n, d) = q.into_raw();
        Self(Frac::new([n, BigInt::zero(), BigInt::zero()], d))
    }

    pub fn alpha() -> Self {
        Self::from_ints([0, 1, 0])
    }

    /// `π = α² − α − 2`, an element of norm 7.
    pub fn pi() -> Self {
        Self::from_ints([-2, -1, 1])
    }

    /// Coordinates in the basis `1, α, α²`.
    pub fn coeffs(&self) -> [Rational; 3] {
        std::array::from_fn(|i| Rational::new(self.0.num[i].clone(), self.0.den.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.0.num[1].is_zero() && self.0.num[2].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.0.num[0].clone(), self.0.den.clone()))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self(self.0.add(&rhs.0))
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self(self.0.sub(&rhs.0))
    }

    fn neg_ref(&self) -> Self {
        Self(self.0.neg())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self(Frac::new(
            integral::zk_mul(&self.0.num, &rhs.0.num),
            &self.0.den * &rhs.0.den,
        ))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self(Frac::new(
            self.0.num.clone().map(|n| n * q.numer()),
            &self.0.den * q.denom(),
        ))
    }

    /// `σ^power(self)`; the image of α under `σ²` is obtained by composing
    /// σ with itself, and powers are taken mod 3.
    pub fn sigma(&self, power: u32) -> Self {
        Self(Frac::new(integral::zk_sigma(&self.0.num, power), self.0.den.clone()))
    }

    /// `N_{K/Q}(a) = a·σ(a)·σ²(a)`.
    pub fn norm(&self) -> Result<Rational> {
        let n = &(self * &self.sigma(1)) * &self.sigma(2);
        n.as_rational().ok_or_else(|| {
            AlgebraError::Inconsistent(format!("norm of {self} is not rational: {n}"))
        })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(std::array::from_fn(|_| random_small(rng)))
    }
}

forward_ring_ops!(KElem);

impl Ring for KElem {
    fn zero() -> Self {
        Self(Frac::zero())
    }
    fn one() -> Self {
        Self::from_ints([1, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Field for KElem {
    /// Solves `M·x = e0` for the integer multiplication-by-numerator matrix
    /// `M` (columns `n·1, n·α, n·α²`) by Cramer's rule, then rescales by
    /// the denominator.
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = &self.0.num;
        let cols: [[BigInt; 3]; 3] = std::array::from_fn(|c| {
            let mut e: [BigInt; 3] = std::array::from_fn(|_| BigInt::zero());
            e[c] = BigInt::one();
            integral::zk_mul(n, &e)
        });
        let m = |r: usize, c: usize| &cols[c][r];
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)
        };
        let det = m(0, 0) * minor(1, 2, 1, 2) - m(0, 1) * minor(1, 2, 0, 2)
            + m(0, 2) * minor(1, 2, 0, 1);
        if det.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        // first column of the adjugate
        let adj = [minor(1, 2, 1, 2), -minor(1, 2, 0, 2), minor(1, 2, 0, 1)];
        Ok(Self(Frac::new(adj.map(|a| a * &self.0.den), det)))
    }
}

pub(crate) fn write_poly<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str, fmt_coeff: F) -> fmt::Result
where
    T: Ring,
    F: Fn(&T) -> String,
{
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{}", fmt_coeff(c))?,
            1 => write!(f, "({}){var}", fmt_coeff(c))?,
            _ => write!(f, "({}){var}^{i}", fmt_coeff(c))?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs(), "a", format_rational)
    }
}

/// Element `l0 + l1·θ + l2·θ²` of `L`, coordinates in `K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LElem(pub(crate) Frac<9>);

impl LElem {
    pub fn new(coeffs: [KElem; 3]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, k| acc.lcm(&k.0.den));
        let num = std::array::from_fn(|n| {
            let k = &coeffs[n / 3].0;
            &k.num[n % 3] * (&den / &k.den)
        });
        Self(Frac::new(num, den))
    }

    pub(crate) fn from_parts(num: &[BigInt], den: &BigInt) -> Self {
        Self(Frac::new(std::array::from_fn(|i| num[i].clone()), den.clone()))
    }

    pub fn from_k(k: KElem) -> Self {
        let KElem(Frac { num, den }) = k;
        let [a0, a1, a2] = num;
        let z = BigInt::zero;
        Self(Frac::new([a0, a1, a2, z(), z(), z(), z(), z(), z()], den))
    }

    pub fn theta() -> Self {
        Self::new([KElem::zero(), KElem::one(), KElem::zero()])
    }

    /// `λ = (α² + α) + (1 − α)θ − θ²`.
    pub fn lambda() -> Self {
        Self::new([
            KElem::from_ints([0, 1, 1]),
            KElem::from_ints([1, -1, 0]),
            KElem::from_ints([-1, 0, 0]),
        ])
    }

    /// Coordinates in the basis `1, θ, θ²`.
    pub fn coeffs(&self) -> [KElem; 3] {
        std::array::from_fn(|j| KElem::from_parts(integral::zl_part(&self.0.num, j), &self.0.den))
    }

    pub fn is_in_k(&self) -> bool {
        self.0.num[3..].iter().all(Zero::is_zero)
    }

    pub fn as_k(&self) -> Option<KElem> {
        self.is_in_k()
            .then(|| KElem::from_parts(&self.0.num[..3], &self.0.den))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self(self.0.add(&rhs.0))
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self(self.0.sub(&rhs.0))
    }

    fn neg_ref(&self) -> Self {
        Self(self.0.neg())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self(Frac::new(
            integral::zl_mul(&self.0.num, &rhs.0.num),
            &self.0.den * &rhs.0.den,
        ))
    }

    pub fn scale(&self, k: &KElem) -> Self {
        Self(Frac::new(
            integral::zl_scale(&k.0.num, &self.0.num),
            &self.0.den * &k.0.den,
        ))
    }

    /// `φ^power(self)`, via the images of θ and θ² under `φ^(power mod 3)`.
    pub fn phi(&self, power: u32) -> Self {
        Self(Frac::new(integral::zl_phi(&self.0.num, power), self.0.den.clone()))
    }

    /// Applies `σ^power` to the `K`-coordinates, fixing θ. This is the
    /// action needed to form `f^σ` and the semilinear extension of σ.
    pub fn sigma_coeffs(&self, power: u32) -> Self {
        Self(Frac::new(
            integral::zl_sigma_coeffs(&self.0.num, power),
            self.0.den.clone(),
        ))
    }

    /// `N_{L/K}(a) = a·φ(a)·φ²(a)`.
    pub fn norm_to_k(&self) -> Result<KElem> {
        let n = &(self * &self.phi(1)) * &self.phi(2);
        n.as_k().ok_or_else(|| {
            AlgebraError::Inconsistent(format!("relative norm of {self} is not in K: {n}"))
        })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(std::array::from_fn(|_| KElem::random(rng)))
    }
}

forward_ring_ops!(LElem);

impl Ring for LElem {
    fn zero() -> Self {
        Self(Frac::zero())
    }
    fn one() -> Self {
        Self::from_k(KElem::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Field for LElem {
    /// 3×3 solve over `K` in the basis `1, θ, θ²`.
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let columns: Vec<[KElem; 3]> = (0..3)
            .map(|n| {
                let mut e = [KElem::zero(), KElem::zero(), KElem::zero()];
                e[n] = KElem::one();
                (self * &LElem::new(e)).coeffs()
            })
            .collect();
        let matrix = (0..3)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let x = linalg::solve(matrix, vec![KElem::one(), KElem::zero(), KElem::zero()])
            .map_err(|_| AlgebraError::ZeroDivisor)?;
        let [x0, x1, x2]: [KElem; 3] = x.try_into().expect("length 3");
        Ok(Self::new([x0, x1, x2]))
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs(), "t", |k| k.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k(c: [i64; 3]) -> KElem {
        KElem::from_ints(c)
    }

    #[test]
    fn alpha_times_alpha_squared_reduces() {
        let a = KElem::alpha();
        assert_eq!(&a * &(&a * &a), k([1, 2, -1]));
        let x = KElem::random(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(&KElem::one() * &x, x);
    }

    #[test]
    fn pi_norm_is_seven() {
        let pi = KElem::pi();
        let prod = &(&pi * &pi.sigma(1)) * &pi.sigma(2);
        assert_eq!(prod, KElem::rational(int(7)));
        assert_eq!(pi.norm().unwrap(), int(7));
        assert_eq!(KElem::one().norm().unwrap(), int(1));
        assert_eq!(KElem::alpha().norm().unwrap(), int(1));
    }

    #[test]
    fn k_inverses() {
        assert_eq!(KElem::one().try_inv().unwrap(), KElem::one());
        // α(α² + α − 2) = α³ + α² − 2α = 1
        assert_eq!(KElem::alpha().try_inv().unwrap(), k([-2, 1, 1]));
        let pi = KElem::pi();
        assert_eq!(&pi.try_inv().unwrap() * &pi, KElem::one());
        assert_eq!(KElem::zero().try_inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn sigma_on_alpha() {
        let a = KElem::alpha();
        assert_eq!(a.sigma(1), k([1, -1, -1]));
        assert_eq!(a.sigma(2), k([-2, 0, 1]));
        assert_eq!(a.sigma(3), a);
        // σ³ by explicit iteration rather than power reduction
        assert_eq!(a.sigma(1).sigma(1).sigma(1), a);
        assert_eq!(minpoly_alpha().map(|q| KElem::rational(q.clone())).eval(&a.sigma(1)), KElem::zero());
    }

    #[test]
    fn theta_relations() {
        let t = LElem::theta();
        let t2 = &t * &t;
        // θ³ = −(α−2)θ² + (α+1)θ − 1
        let expected = LElem::new([k([-1, 0, 0]), k([1, 1, 0]), k([2, -1, 0])]);
        assert_eq!(&t * &t2, expected);
        let f = f_poly().map(|c| LElem::from_k(c.clone()));
        assert_eq!(f.eval(&t), LElem::zero());
        assert_eq!(f.eval(&t.phi(1)), LElem::zero());
        assert_eq!(f.eval(&t.phi(2)), LElem::zero());
    }

    #[test]
    fn phi_images() {
        let t = LElem::theta();
        assert_eq!(t.phi(1), LElem::new([k([2, 0, 0]), k([1, -1, 0]), k([-1, 0, 0])]));
        assert_eq!(t.phi(1).phi(1).phi(1), t);
        assert_eq!(t.phi(3), t);
        let alpha = LElem::from_k(KElem::alpha());
        assert_eq!(alpha.phi(1), alpha);
    }

    #[test]
    fn l_inverses() {
        assert_eq!(LElem::one().try_inv().unwrap(), LElem::one());
        // θ⁻¹ = −θ² − (α−2)θ + (α+1)
        let expected = LElem::new([k([1, 1, 0]), k([2, -1, 0]), k([-1, 0, 0])]);
        assert_eq!(LElem::theta().try_inv().unwrap(), expected);
        let lam = LElem::lambda();
        assert_eq!(&lam.try_inv().unwrap() * &lam, LElem::one());
        assert_eq!(LElem::zero().try_inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn relative_norms() {
        let pi = KElem::pi();
        let target = &pi.sigma(1) * &pi.try_inv().unwrap();
        assert_eq!(LElem::lambda().norm_to_k().unwrap(), target);
        assert_eq!(LElem::theta().norm_to_k().unwrap(), k([-1, 0, 0]));
        let c = k([1, 2, -3]);
        assert_eq!(LElem::from_k(c.clone()).norm_to_k().unwrap(), &(&c * &c) * &c);
        // N_{K/Q}(σ(π)/π) = 1
        assert_eq!(target.norm().unwrap(), int(1));
    }
}
