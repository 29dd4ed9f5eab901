//! Finite-field evidence for the arithmetic of the primes `(2)` and `(π)`,
//! root-of-unity predicates, and an equal-characteristic model
//! `F_q((s))`, `s ↦ ζs` of a tamely, totally ramified cyclic extension.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::field_tower::{f_poly, minpoly_alpha, KElem};
use crate::rational::{reduce_mod, Rational};
use crate::ring::CubicPoly;

/// Default truncation window for [`ResidueSeries`].
pub const DEFAULT_RESIDUE_PRECISION: usize = 16;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(is_prime(modulus), "{modulus} is not prime");
        Self {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "mixed prime fields");
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `F_q = F_p[y]/(m(y))` with `m` monic irreducible of degree `k ≤ 3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqField {
    p: u64,
    /// Monic modulus, ascending coefficients, length `k + 1`.
    modulus: Vec<u64>,
}

impl FqField {
    pub fn prime(p: u64) -> Arc<Self> {
        assert!(is_prime(p), "{p} is not prime");
        Arc::new(Self {
            p,
            modulus: vec![0, 1],
        })
    }

    /// Extension by a monic polynomial of degree 2 or 3, checked to be
    /// irreducible (for these degrees: no root in `F_p`).
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(AlgebraError::Precondition(format!("{p} is not prime")));
        }
        let k = modulus.len().saturating_sub(1);
        if !(1..=3).contains(&k) || modulus[k] % p != 1 {
            return Err(AlgebraError::Precondition(
                "modulus must be monic of degree 1, 2 or 3".into(),
            ));
        }
        if k == 1 {
            return Ok(Self::prime(p));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let has_root = (0..p).any(|r| {
            modulus
                .iter()
                .rev()
                .fold(0u64, |acc, c| (acc * r + c) % p)
                == 0
        });
        if has_root {
            return Err(AlgebraError::Precondition(format!(
                "modulus {modulus:?} has a root mod {p}"
            )));
        }
        Ok(Arc::new(Self { p, modulus }))
    }

    /// `F_8 = F_2[ᾱ]/(ᾱ³ + ᾱ² + 1)`, the residue field of `K` at `(2)`.
    pub fn residue_field_at_two() -> Arc<Self> {
        let m = reduce_minpoly_mod(2);
        let coeffs: Vec<u64> = m.coeffs.iter().map(FpElem::value).collect();
        Self::extension(2, &coeffs).expect("minimal polynomial is irreducible mod 2")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }
}

/// Element of an [`FqField`], coordinates in the basis `1, y, …, y^(k-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqElem {
    field: Arc<FqField>,
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn new(field: &Arc<FqField>, coeffs: &[i64]) -> Self {
        let k = field.degree();
        assert!(coeffs.len() <= k, "too many coordinates");
        let p = field.p as i64;
        let mut c: Vec<u64> = coeffs.iter().map(|x| x.rem_euclid(p) as u64).collect();
        c.resize(k, 0);
        Self {
            field: Arc::clone(field),
            coeffs: c,
        }
    }

    pub fn zero(field: &Arc<FqField>) -> Self {
        Self::new(field, &[])
    }

    pub fn one(field: &Arc<FqField>) -> Self {
        Self::new(field, &[1])
    }

    /// The class of `y` (for `F_8`, the residue `ᾱ` of α).
    pub fn generator(field: &Arc<FqField>) -> Self {
        if field.degree() == 1 {
            let r = (field.p - field.modulus[0]) % field.p;
            Self::new(field, &[r as i64])
        } else {
            Self::new(field, &[0, 1])
        }
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Every element of the field, ordered by the base-`p` integer
    /// `Σ c_i p^i` of its coordinates.
    pub fn all_elements(field: &Arc<FqField>) -> Vec<Self> {
        let (p, k) = (field.p, field.degree());
        (0..field.order())
            .map(|mut idx| {
                let coeffs = (0..k)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        c
                    })
                    .collect();
                Self {
                    field: Arc::clone(field),
                    coeffs,
                }
            })
            .collect()
    }

    pub fn from_fp(field: &Arc<FqField>, x: FpElem) -> Self {
        assert_eq!(field.p, x.modulus());
        Self::new(field, &[x.value() as i64])
    }

    fn check(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &rhs.field) || self.field == rhs.field,
            "mixed finite fields"
        );
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let p = self.field.p;
        Self {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        let p = self.field.p;
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| (p - a) % p).collect(),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let (p, k) = (self.field.p, self.field.degree());
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let m = &self.field.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, mi) in m[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + c * (p - mi % p)) % p;
            }
        }
        prod.truncate(k);
        Self {
            field: Arc::clone(&self.field),
            coeffs: prod,
        }
    }

    /// `self^e` for any integer `e` (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut base = base;
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        self.pow(self.field.order() as i64 - 2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let group = self.field.order() - 1;
        let mut acc = self.clone();
        for k in 1..=group {
            if acc.is_one() {
                return Ok(k);
            }
            acc = &acc * self;
        }
        Err(AlgebraError::Inconsistent("order exceeds group size".into()))
    }
}

crate::macros::forward_ring_ops!(FqElem);

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "y".into(),
                (1, c) => format!("{c}y"),
                (i, 1) => format!("y^{i}"),
                (i, c) => format!("{c}y^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Elements of a finite field that can enumerate their own field.
pub trait FiniteFieldElement: Clone + PartialEq + fmt::Debug + Add<Output = Self> + Mul<Output = Self> {
    fn field_elements(&self) -> Vec<Self>;
    fn is_zero_elem(&self) -> bool;
}

impl FiniteFieldElement for FpElem {
    fn field_elements(&self) -> Vec<Self> {
        (0..self.modulus)
            .map(|v| FpElem::new(v as i64, self.modulus))
            .collect()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl FiniteFieldElement for FqElem {
    fn field_elements(&self) -> Vec<Self> {
        FqElem::all_elements(&self.field)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Roots of a polynomial in its coefficient field, by exhaustive evaluation.
pub fn roots<T: FiniteFieldElement>(poly: &CubicPoly<T>) -> Vec<T> {
    poly.leading()
        .field_elements()
        .into_iter()
        .filter(|x| poly.eval(x).is_zero_elem())
        .collect()
}

/// A cubic over a finite field is irreducible iff it has no root there.
/// Exhaustive over all `q` candidates.
pub fn cubic_is_irreducible<T: FiniteFieldElement>(poly: &CubicPoly<T>) -> Result<bool> {
    if poly.leading().is_zero_elem() {
        return Err(AlgebraError::Precondition("leading coefficient is zero".into()));
    }
    Ok(roots(poly).is_empty())
}

/// Coefficient-wise reduction of `x³ + x² − 2x − 1` modulo `p`.
pub fn reduce_minpoly_mod(p: u64) -> CubicPoly<FpElem> {
    minpoly_alpha().map(|c| {
        FpElem::new(
            reduce_mod(c, p).expect("integer coefficients") as i64,
            p,
        )
    })
}

/// All `r ∈ F_p` with `minpoly ≡ (x − r)³ (mod p)`.
pub fn ramification_witnesses(p: u64) -> Vec<FpElem> {
    let m = reduce_minpoly_mod(p);
    (0..p as i64)
        .map(|r| FpElem::new(r, p))
        .filter(|&r| {
            // (x − r)³ = x³ − 3r x² + 3r² x − r³
            let three = FpElem::new(3, p);
            let cube = CubicPoly::new(-(r * r * r), three * r * r, -(three * r), FpElem::new(1, p));
            cube == m
        })
        .collect()
}

/// The root `r` with `x³ + x² − 2x − 1 ≡ (x − r)³ (mod 7)`.
pub fn total_ramification_witness_7() -> Result<FpElem> {
    ramification_witnesses(7)
        .into_iter()
        .next()
        .ok_or_else(|| AlgebraError::NoWitness("minimal polynomial mod 7 is not a cube".into()))
}

/// The two primes of `K` whose residue fields carry the inertia evidence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ResiduePrime {
    /// `(2)`, residue field `F_8`, `α ↦ ᾱ`.
    Two,
    /// `(π)`, residue field `F_7`, `α ↦ 2`.
    Pi,
}

impl ResiduePrime {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "two" => Ok(Self::Two),
            "pi" => Ok(Self::Pi),
            other => Err(AlgebraError::Precondition(format!("unknown prime tag {other:?}"))),
        }
    }

    pub fn residue_field(self) -> Result<Arc<FqField>> {
        Ok(match self {
            Self::Two => FqField::residue_field_at_two(),
            Self::Pi => FqField::prime(7),
        })
    }

    /// Image of α in the residue field.
    fn alpha_residue(self, field: &Arc<FqField>) -> Result<FqElem> {
        Ok(match self {
            Self::Two => FqElem::generator(field),
            Self::Pi => FqElem::from_fp(field, total_ramification_witness_7()?),
        })
    }

    /// Residue of a `K`-element whose coordinates are integral at this prime.
    pub fn reduce_k(self, field: &Arc<FqField>, k: &KElem) -> Result<FqElem> {
        let p = field.characteristic();
        let alpha = self.alpha_residue(field)?;
        let coord = |q: &Rational| -> Result<FqElem> {
            Ok(FqElem::new(field, &[reduce_mod(q, p)? as i64]))
        };
        let [a0, a1, a2] = &k.coeffs();
        Ok(coord(a0)? + &coord(a1)? * &alpha + &(&coord(a2)? * &alpha) * &alpha)
    }

    pub fn reduce_poly(self, poly: &CubicPoly<KElem>) -> Result<CubicPoly<FqElem>> {
        let field = self.residue_field()?;
        let [c0, c1, c2, c3] = &poly.coeffs;
        Ok(CubicPoly::new(
            self.reduce_k(&field, c0)?,
            self.reduce_k(&field, c1)?,
            self.reduce_k(&field, c2)?,
            self.reduce_k(&field, c3)?,
        ))
    }
}

/// `f` reduced at `(2)` or `(π)`.
pub fn reduce_f_at_residue(prime: ResiduePrime) -> Result<CubicPoly<FqElem>> {
    prime.reduce_poly(&f_poly())
}

/// Whether `F_q` contains a primitive `n`-th root of unity, i.e. `n | q − 1`.
pub fn mu_in_fq(n: u64, q: u64) -> Result<bool> {
    if n < 2 {
        return Err(AlgebraError::Precondition(format!("n = {n} must be at least 2")));
    }
    if prime_power_decomposition(q).is_none() {
        return Err(AlgebraError::Precondition(format!("{q} is not a prime power")));
    }
    if n.gcd(&q) != 1 {
        return Err(AlgebraError::Precondition(format!("gcd({n}, {q}) != 1")));
    }
    Ok((q - 1).is_multiple_of(n))
}

/// Least generator of `F_q^×` in the enumeration order of
/// [`FqElem::all_elements`].
pub fn primitive_root(field: &Arc<FqField>) -> FqElem {
    let group = field.order() - 1;
    FqElem::all_elements(field)
        .into_iter()
        .skip(1)
        .find(|x| x.multiplicative_order().ok() == Some(group))
        .expect("multiplicative group of a finite field is cyclic")
}

/// The fixed primitive `n`-th root of unity `g^((q−1)/n)`.
pub fn canonical_root_of_unity(field: &Arc<FqField>, n: u64) -> Result<FqElem> {
    let group = field.order() - 1;
    if n == 0 || !group.is_multiple_of(n) {
        return Err(AlgebraError::Precondition(format!(
            "{n} does not divide q - 1 = {group}"
        )));
    }
    primitive_root(field).pow((group / n) as i64)
}

/// Truncated Laurent series `Σ_{k ≤ i < k+N} c_i s^i` over `F_q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueSeries {
    field: Arc<FqField>,
    start: i64,
    coeffs: Vec<FqElem>,
    zero: bool,
}

impl ResidueSeries {
    /// Window `[start, start + coeffs.len())`; leading zeros are absorbed
    /// by shifting the window.
    pub fn new(field: &Arc<FqField>, start: i64, coeffs: Vec<FqElem>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(shift) => Self {
                field: Arc::clone(field),
                start: start + shift as i64,
                coeffs: coeffs[shift..].to_vec(),
                zero: false,
            },
            None => Self {
                field: Arc::clone(field),
                start,
                coeffs,
                zero: true,
            },
        }
    }

    /// `s` with `precision` known coefficients.
    pub fn uniformizer(field: &Arc<FqField>, precision: usize) -> Self {
        let mut coeffs = vec![FqElem::zero(field); precision];
        coeffs[0] = FqElem::one(field);
        Self::new(field, 1, coeffs)
    }

    /// `s · (u0 + u1 s + …)` with random unit part, `u0 ≠ 0`.
    pub fn random_uniformizer<R: Rng + ?Sized>(
        field: &Arc<FqField>,
        precision: usize,
        rng: &mut R,
    ) -> Self {
        let elems = FqElem::all_elements(field);
        let mut coeffs: Vec<FqElem> = (0..precision)
            .map(|_| elems[rng.gen_range(0..elems.len())].clone())
            .collect();
        coeffs[0] = elems[rng.gen_range(1..elems.len())].clone();
        Self::new(field, 1, coeffs)
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    /// Number of known coefficients from the leading term on.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `None` for a series that vanishes on its whole window.
    pub fn valuation(&self) -> Option<i64> {
        (!self.zero).then_some(self.start)
    }

    pub fn coefficient(&self, exponent: i64) -> Option<&FqElem> {
        let idx = exponent - self.start;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    fn require_nonzero(&self, what: &str) -> Result<()> {
        if self.zero || self.coeffs.is_empty() {
            return Err(AlgebraError::InsufficientPrecision(format!(
                "{what}: series vanishes on its whole window"
            )));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.require_nonzero("product")?;
        rhs.require_nonzero("product")?;
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|m| {
                (0..=m).fold(FqElem::zero(&self.field), |acc, i| {
                    acc + &self.coeffs[i] * &rhs.coeffs[m - i]
                })
            })
            .collect();
        Ok(Self::new(&self.field, self.start + rhs.start, coeffs))
    }

    pub fn inv(&self) -> Result<Self> {
        self.require_nonzero("inverse")?;
        let lead_inv = self.coeffs[0].try_inv()?;
        let mut out: Vec<FqElem> = Vec::with_capacity(self.coeffs.len());
        out.push(lead_inv.clone());
        for m in 1..self.coeffs.len() {
            let acc = (1..=m).fold(FqElem::zero(&self.field), |acc, i| {
                acc + &self.coeffs[i] * &out[m - i]
            });
            out.push(-(&acc * &lead_inv));
        }
        Ok(Self::new(&self.field, -self.start, out))
    }

    /// Image under the automorphism `s ↦ ζs`.
    pub fn scale_variable(&self, zeta: &FqElem) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Ok(c * &zeta.pow(self.start + i as i64)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.field, self.start, coeffs))
    }

    /// Residue class of a valuation unit.
    pub fn unit_residue(&self) -> Result<FqElem> {
        self.require_nonzero("residue")?;
        if self.start != 0 {
            return Err(AlgebraError::Inconsistent(format!(
                "expected a valuation unit, found valuation {}",
                self.start
            )));
        }
        Ok(self.coeffs[0].clone())
    }
}

/// Residue of `Δ_σ a = σ(a)/a` for `σ: s ↦ ζs`.
pub fn delta_residue(a: &ResidueSeries, zeta: &FqElem) -> Result<FqElem> {
    let image = a.scale_variable(zeta)?;
    image.mul(&a.inv()?)?.unit_residue()
}

/// Residue of `Δ_σ a` for the canonical generator `s ↦ ζs` of the cyclic
/// group of order `n`, with `a` a uniformizer of `F_q((s))`.
pub fn tame_delta_residue(field: &Arc<FqField>, n: u64, a: &ResidueSeries) -> Result<FqElem> {
    let q = field.order();
    if n < 2 || !(q - 1).is_multiple_of(n) {
        return Err(AlgebraError::Precondition(format!("{n} does not divide q - 1 = {}", q - 1)));
    }
    match a.valuation() {
        Some(1) => {}
        Some(v) => {
            return Err(AlgebraError::Precondition(format!(
                "expected a uniformizer, found valuation {v}"
            )))
        }
        None => {
            return Err(AlgebraError::InsufficientPrecision(
                "uniformizer vanishes on its window".into(),
            ))
        }
    }
    let zeta = canonical_root_of_unity(field, n)?;
    delta_residue(a, &zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp_poly(c: [i64; 4], p: u64) -> CubicPoly<FpElem> {
        CubicPoly::new(
            FpElem::new(c[0], p),
            FpElem::new(c[1], p),
            FpElem::new(c[2], p),
            FpElem::new(c[3], p),
        )
    }

    #[test]
    fn minpoly_reductions() {
        assert_eq!(reduce_minpoly_mod(2), fp_poly([1, 0, 1, 1], 2));
        assert_eq!(reduce_minpoly_mod(7), fp_poly([6, 5, 1, 1], 7));
        assert_eq!(reduce_minpoly_mod(3), fp_poly([2, 1, 1, 1], 3));
    }

    #[test]
    fn irreducibility() {
        assert!(cubic_is_irreducible(&fp_poly([1, 0, 1, 1], 2)).unwrap());
        assert!(cubic_is_irreducible(&fp_poly([1, -3, 0, 1], 7)).unwrap());
        assert!(!cubic_is_irreducible(&fp_poly([0, 0, 0, 1], 2)).unwrap());
        assert!(cubic_is_irreducible(&fp_poly([1, 0, 0, 0], 7)).is_err());
    }

    #[test]
    fn ramification_at_seven() {
        let r = total_ramification_witness_7().unwrap();
        assert_eq!(r.value(), 2);
        assert_eq!(ramification_witnesses(7).len(), 1);
        assert!(ramification_witnesses(2).is_empty());
        // minpoly(2) = 7, derivative 3·4 + 4 − 2 = 14
        let m = reduce_minpoly_mod(7);
        assert!(m.eval(&r).is_zero());
        let deriv = FpElem::new(3, 7) * r * r + FpElem::new(2, 7) * r - FpElem::new(2, 7);
        assert!(deriv.is_zero());
    }

    #[test]
    fn f_at_two() {
        let g = reduce_f_at_residue(ResiduePrime::Two).unwrap();
        let field = g.coeffs[0].field().clone();
        assert_eq!(field.order(), 8);
        let abar = FqElem::generator(&field);
        let one = FqElem::one(&field);
        assert_eq!(g.coeffs[3], one);
        assert_eq!(g.coeffs[2], abar);
        assert_eq!(g.coeffs[1], &abar + &one);
        assert_eq!(g.coeffs[0], one);
        assert!(cubic_is_irreducible(&g).unwrap());
    }

    #[test]
    fn f_at_pi() {
        let g = reduce_f_at_residue(ResiduePrime::Pi).unwrap();
        let field = FqField::prime(7);
        let e = |v: i64| FqElem::new(&field, &[v]);
        assert_eq!(g, CubicPoly::new(e(1), e(-3), e(0), e(1)));
        assert!(cubic_is_irreducible(&g).unwrap());
        assert_eq!(ResiduePrime::parse("pi").unwrap(), ResiduePrime::Pi);
        assert!(ResiduePrime::parse("three").is_err());
    }

    #[test]
    fn denominators_must_be_coprime() {
        let half = KElem::rational(crate::rational::frac(1, 2));
        let p = CubicPoly::new(half.clone(), KElem::from_ints([0; 3]), KElem::from_ints([0; 3]), KElem::from_ints([1, 0, 0]));
        assert!(matches!(ResiduePrime::Two.reduce_poly(&p), Err(AlgebraError::Precondition(_))));
        assert!(ResiduePrime::Pi.reduce_poly(&p).is_ok());
    }

    #[test]
    fn root_of_unity_predicate() {
        assert!(mu_in_fq(3, 7).unwrap());
        assert!(!mu_in_fq(9, 7).unwrap());
        assert!(!mu_in_fq(3, 2).unwrap());
        assert!(mu_in_fq(7, 8).unwrap());
        assert!(mu_in_fq(7, 7).is_err());
        assert!(mu_in_fq(3, 6).is_err());
        assert!(mu_in_fq(1, 7).is_err());
    }

    #[test]
    fn f8_is_a_field() {
        let f8 = FqField::residue_field_at_two();
        let elems = FqElem::all_elements(&f8);
        for a in elems.iter().filter(|a| !a.is_zero()) {
            assert!((a * &a.try_inv().unwrap()).is_one());
        }
        assert_eq!(primitive_root(&f8).multiplicative_order().unwrap(), 7);
        assert!(FqField::extension(2, &[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn canonical_roots_over_f7() {
        let f7 = FqField::prime(7);
        assert_eq!(primitive_root(&f7), FqElem::new(&f7, &[3]));
        assert_eq!(canonical_root_of_unity(&f7, 3).unwrap(), FqElem::new(&f7, &[2]));
        assert_eq!(canonical_root_of_unity(&f7, 2).unwrap(), FqElem::new(&f7, &[6]));
        assert!(canonical_root_of_unity(&f7, 4).is_err());
    }

    #[test]
    fn delta_residue_examples() {
        let f7 = FqField::prime(7);
        let e = |v: i64| FqElem::new(&f7, &[v]);
        let s = ResidueSeries::uniformizer(&f7, DEFAULT_RESIDUE_PRECISION);
        assert_eq!(tame_delta_residue(&f7, 3, &s).unwrap(), e(2));
        assert_eq!(tame_delta_residue(&f7, 2, &s).unwrap(), e(6));
        // s(1 + s)
        let mut c = vec![e(0); DEFAULT_RESIDUE_PRECISION];
        c[0] = e(1);
        c[1] = e(1);
        let a = ResidueSeries::new(&f7, 1, c);
        assert_eq!(tame_delta_residue(&f7, 3, &a).unwrap(), e(2));
        assert!(tame_delta_residue(&f7, 4, &a).is_err());
        let a2 = a.mul(&a).unwrap();
        assert!(matches!(tame_delta_residue(&f7, 3, &a2), Err(AlgebraError::Precondition(_))));
        let empty = ResidueSeries::new(&f7, 1, vec![e(0); 4]);
        assert!(matches!(
            tame_delta_residue(&f7, 3, &empty),
            Err(AlgebraError::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn series_inverse_roundtrip() {
        let f7 = FqField::prime(7);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = ResidueSeries::random_uniformizer(&f7, 8, &mut rng);
            let prod = a.mul(&a.inv().unwrap()).unwrap();
            assert_eq!(prod.valuation(), Some(0));
            assert!(prod.unit_residue().unwrap().is_one());
            for i in 1..8 {
                assert!(prod.coefficient(i).unwrap().is_zero());
            }
        }
    }
}
