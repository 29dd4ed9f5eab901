//! The cyclic algebra `D = (L/K, φ, 2π) = L ⊕ Lu ⊕ Lu²` with `u³ = 2π` and
//! `u·l = φ(l)·u`, together with the outer automorphism `σ̃` extending σ and
//! the element `d` realizing `σ̃³` as an inner automorphism.
//!
//! Elements are written with left coefficients, `e0 + e1·u + e2·u²`. As a
//! `K`-vector space `D` has the basis `θ^j u^i` (`0 ≤ i, j < 3`), indexed
//! here by `3i + j`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::field_tower::{f_poly, write_poly, KElem, LElem};
use crate::integral::{self, Frac};
use crate::linalg;
use crate::macros::forward_ring_ops;
use crate::ring::{CubicPoly, Field, Ring};

/// `u³ = 2π`.
pub fn u_cubed() -> &'static LElem {
    static U3: OnceLock<LElem> = OnceLock::new();
    U3.get_or_init(|| LElem::from_k(KElem::pi() + KElem::pi()))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DElem(Frac<27>);

impl DElem {
    pub fn new(coeffs: [LElem; 3]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, l| acc.lcm(&l.0.den));
        let num = std::array::from_fn(|n| {
            let l = &coeffs[n / 9].0;
            &l.num[n % 9] * (&den / &l.den)
        });
        Self(Frac::new(num, den))
    }

    pub fn from_l(l: LElem) -> Self {
        let LElem(Frac { num, den }) = l;
        let mut it = num.into_iter();
        Self(Frac::new(
            std::array::from_fn(|n| if n < 9 { it.next().expect("nine") } else { BigInt::zero() }),
            den,
        ))
    }

    pub fn from_k(k: KElem) -> Self {
        Self::from_l(LElem::from_k(k))
    }

    pub fn theta() -> Self {
        Self::from_l(LElem::theta())
    }

    pub fn u() -> Self {
        Self::new([LElem::zero(), LElem::one(), LElem::zero()])
    }

    /// Left `L`-coefficients of `1, u, u²`.
    pub fn coeffs(&self) -> [LElem; 3] {
        std::array::from_fn(|i| LElem::from_parts(integral::zd_part(&self.0.num, i), &self.0.den))
    }

    /// `K`-coordinates in the basis `θ^j u^i`, index `3i + j`.
    pub fn k_coords(&self) -> [KElem; 9] {
        std::array::from_fn(|n| KElem::from_parts(&self.0.num[3 * n..3 * n + 3], &self.0.den))
    }

    pub fn from_k_coords(coords: [KElem; 9]) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, k| acc.lcm(&k.0.den));
        let num = std::array::from_fn(|n| {
            let k = &coords[n / 3].0;
            &k.num[n % 3] * (&den / &k.den)
        });
        Self(Frac::new(num, den))
    }

    /// Basis element `θ^j u^i` for index `3i + j`.
    pub fn basis(n: usize) -> Self {
        assert!(n < 9);
        let mut num: [BigInt; 27] = std::array::from_fn(|_| BigInt::zero());
        num[3 * n] = BigInt::one();
        Self(Frac::integral(num))
    }

    pub fn as_k(&self) -> Option<KElem> {
        self.0.num[3..]
            .iter()
            .all(Zero::is_zero)
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

    /// `(l·u^i)(m·u^j) = l·φ^i(m)·u^(i+j)`, folding `u³` into the scalar `2π`.
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self(Frac::new(
            integral::zd_mul(&self.0.num, &rhs.0.num),
            &self.0.den * &rhs.0.den,
        ))
    }

    /// Multiplication by a central scalar of `K`.
    pub fn scale_k(&self, k: &KElem) -> Self {
        Self(Frac::new(
            integral::zd_scale(&k.0.num, &self.0.num),
            &self.0.den * &k.0.den,
        ))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Two-sided inverse from the 9×9 left-regular system over `K`.
    ///
    /// A singular system for a nonzero element would exhibit a zero divisor;
    /// this is reported as [`AlgebraError::ZeroDivisor`].
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let columns: Vec<[KElem; 9]> = (0..9)
            .map(|n| (self * &DElem::basis(n)).k_coords())
            .collect();
        let matrix = (0..9)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut rhs = vec![KElem::zero(); 9];
        rhs[0] = KElem::one();
        let x = linalg::solve(matrix, rhs).map_err(|e| match e {
            AlgebraError::Singular => AlgebraError::ZeroDivisor,
            other => other,
        })?;
        let inv = Self::from_k_coords(x.try_into().expect("nine coordinates"));
        if !(&inv * self).is_one() {
            return Err(AlgebraError::Inconsistent(
                "right inverse is not a left inverse".into(),
            ));
        }
        Ok(inv)
    }

    pub fn is_one(&self) -> bool {
        self.0.den.is_one()
            && self.0.num[0].is_one()
            && self.0.num[1..].iter().all(Zero::is_zero)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(std::array::from_fn(|_| LElem::random(rng)))
    }
}

forward_ring_ops!(DElem);

impl Ring for DElem {
    fn zero() -> Self {
        Self(Frac::zero())
    }
    fn one() -> Self {
        Self::from_l(LElem::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for DElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs(), "u", |l| l.to_string())
    }
}

/// Evaluates `p^(σ^twist)` at `a`, coefficients embedded as central scalars.
pub fn eval_poly_in_d(p: &CubicPoly<KElem>, twist: u32, a: &DElem) -> DElem {
    p.map(|c| DElem::from_k(c.sigma(twist))).eval(a)
}

/// The σ-semilinear automorphism `σ̃` of `D`, determined by
/// `Θ = σ̃(θ)` and `U = σ̃(u) = λu`:
/// `σ̃(Σ k_ij θ^j u^i) = Σ σ(k_ij) Θ^j U^i`.
#[derive(Clone, Debug)]
pub struct OuterAut {
    theta_image: DElem,
    lambda: LElem,
    u_image: DElem,
    /// `Θ^j U^i` at index `3i + j`.
    basis_images: Vec<DElem>,
}

impl OuterAut {
    /// Builds `σ̃` from its images and checks that it is well defined:
    /// `U³ = σ(2π)`, `U·Θ = σ̃(φ(θ))·U` and `f^σ(Θ) = 0`.
    pub fn new(theta_image: DElem, lambda: LElem) -> Result<Self> {
        let aut = Self::from_images_unverified(theta_image, lambda);
        for rel in [Relation::UCubed, Relation::Commutation, Relation::FSigma] {
            if !rel.holds(&aut, None)? {
                return Err(AlgebraError::RelationFailed { name: rel.name() });
            }
        }
        Ok(aut)
    }

    /// Builds the semilinear map without checking the defining relations.
    /// The verifier uses this so that broken data shows up as failed
    /// relations instead of a construction error.
    pub fn from_images_unverified(theta_image: DElem, lambda: LElem) -> Self {
        let u_image = &DElem::from_l(lambda.clone()) * &DElem::u();
        let theta_powers = [DElem::one(), theta_image.clone(), &theta_image * &theta_image];
        let u_powers = [DElem::one(), u_image.clone(), &u_image * &u_image];
        let basis_images = (0..9)
            .map(|n| &theta_powers[n % 3] * &u_powers[n / 3])
            .collect();
        Self {
            theta_image,
            lambda,
            u_image,
            basis_images,
        }
    }

    pub fn theta_image(&self) -> &DElem {
        &self.theta_image
    }

    pub fn u_image(&self) -> &DElem {
        &self.u_image
    }

    pub fn lambda(&self) -> &LElem {
        &self.lambda
    }

    /// `σ̃(a)`.
    pub fn apply_once(&self, a: &DElem) -> DElem {
        a.k_coords()
            .iter()
            .zip(&self.basis_images)
            .filter(|(k, _)| !k.is_zero())
            .fold(DElem::zero(), |acc, (k, img)| &acc + &img.scale_k(&k.sigma(1)))
    }

    /// `σ̃^power(a)` by iteration.
    pub fn apply(&self, a: &DElem, power: u32) -> DElem {
        (0..power).fold(a.clone(), |acc, _| self.apply_once(&acc))
    }

    /// `σ̃⁻¹(a) = σ̃²(d⁻¹·a·d)`, valid whenever `σ̃³ = Inn(d)`.
    pub fn apply_inverse(&self, witness: &InnerWitness, a: &DElem) -> DElem {
        let conj = &(&witness.d_inverse * a) * &witness.d;
        self.apply(&conj, 2)
    }
}

/// An element `d ∈ D^×` together with its inverse.
#[derive(Clone, Debug)]
pub struct InnerWitness {
    d: DElem,
    d_inverse: DElem,
}

impl InnerWitness {
    pub fn new(d: DElem) -> Result<Self> {
        let d_inverse = d.try_inv()?;
        Ok(Self { d, d_inverse })
    }

    pub fn d(&self) -> &DElem {
        &self.d
    }

    pub fn d_inverse(&self) -> &DElem {
        &self.d_inverse
    }

    /// `d·a·d⁻¹`.
    pub fn conjugate(&self, a: &DElem) -> DElem {
        &(&self.d * a) * &self.d_inverse
    }
}

/// The seven defining identities of `σ̃` and `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Relation {
    UCubed,
    Commutation,
    FSigma,
    InnerTheta,
    InnerU,
    DFixed,
    NormLambda,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::UCubed,
        Relation::Commutation,
        Relation::FSigma,
        Relation::InnerTheta,
        Relation::InnerU,
        Relation::DFixed,
        Relation::NormLambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::UCubed => "rel_u_cubed",
            Relation::Commutation => "rel_commutation",
            Relation::FSigma => "rel_f_sigma",
            Relation::InnerTheta => "rel_inner_theta",
            Relation::InnerU => "rel_inner_u",
            Relation::DFixed => "rel_d_fixed",
            Relation::NormLambda => "rel_norm_lambda",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Relation::UCubed => "σ̃(u)³ = σ(2π)",
            Relation::Commutation => "σ̃(u)σ̃(θ) = σ̃(φ(θ))σ̃(u)",
            Relation::FSigma => "f^σ(σ̃(θ)) = 0",
            Relation::InnerTheta => "σ̃³(θ) = dθd⁻¹",
            Relation::InnerU => "σ̃³(u) = dud⁻¹",
            Relation::DFixed => "σ̃(d) = d",
            Relation::NormLambda => "N_{L/K}(λ) = σ(π)/π",
        }
    }

    pub fn needs_witness(self) -> bool {
        matches!(self, Relation::InnerTheta | Relation::InnerU | Relation::DFixed)
    }

    /// Left and right side of the identity, both as elements of `D`.
    pub fn sides(self, aut: &OuterAut, witness: Option<&InnerWitness>) -> Result<(DElem, DElem)> {
        let witness = || {
            witness.ok_or_else(|| {
                AlgebraError::Precondition(format!("{} needs the witness d", self.name()))
            })
        };
        let theta = DElem::theta();
        let u = DElem::u();
        Ok(match self {
            Relation::UCubed => (
                aut.u_image.pow(3),
                DElem::from_l(u_cubed().sigma_coeffs(1)),
            ),
            Relation::Commutation => {
                let phi_theta = DElem::from_l(LElem::theta().phi(1));
                (
                    &aut.u_image * &aut.theta_image,
                    &aut.apply_once(&phi_theta) * &aut.u_image,
                )
            }
            Relation::FSigma => (eval_poly_in_d(&f_poly(), 1, &aut.theta_image), DElem::zero()),
            Relation::InnerTheta => (aut.apply(&theta, 3), witness()?.conjugate(&theta)),
            Relation::InnerU => (aut.apply(&u, 3), witness()?.conjugate(&u)),
            Relation::DFixed => {
                let d = witness()?.d();
                (aut.apply_once(d), d.clone())
            }
            Relation::NormLambda => {
                let pi = KElem::pi();
                let target = &pi.sigma(1) * &pi.try_inv()?;
                (DElem::from_k(aut.lambda.norm_to_k()?), DElem::from_k(target))
            }
        })
    }

    pub fn holds(self, aut: &OuterAut, witness: Option<&InnerWitness>) -> Result<bool> {
        let (lhs, rhs) = self.sides(aut, witness)?;
        Ok(lhs == rhs)
    }
}

/// Outcome of one exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub name: &'static str,
    pub holds: bool,
}

/// Evaluates all of [`Relation::ALL`] exactly. An identity whose sides
/// cannot be formed (e.g. λ = 0) counts as failing.
pub fn check_relations(aut: &OuterAut, witness: &InnerWitness) -> Vec<RelationOutcome> {
    Relation::ALL
        .iter()
        .map(|&rel| RelationOutcome {
            name: rel.name(),
            holds: rel.holds(aut, Some(witness)).unwrap_or(false),
        })
        .collect()
}

/// `N_{L/K}(λ) = σ(π)/π`.
pub fn norm_lambda_holds(lambda: &LElem) -> bool {
    let aut = OuterAut::from_images_unverified(DElem::zero(), lambda.clone());
    Relation::NormLambda.holds(&aut, None).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::Constants;
    use crate::field_tower::minpoly_alpha;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn standard() -> (OuterAut, InnerWitness) {
        let c = Constants::standard();
        let aut = OuterAut::new(c.theta_image_elem(), c.lambda.clone()).unwrap();
        let w = InnerWitness::new(c.d_elem()).unwrap();
        (aut, w)
    }

    #[test]
    fn commutation_rule() {
        let u = DElem::u();
        let t = DElem::theta();
        assert_eq!(&u * &t, &DElem::from_l(LElem::theta().phi(1)) * &u);
        assert_ne!(&u * &t, &t * &u);
        assert_eq!(u.pow(3), DElem::from_k(KElem::pi() + KElem::pi()));
        let tu = &t * &u;
        let expected = &DElem::from_l(&LElem::theta() * &LElem::theta().phi(1)) * &u.pow(2);
        assert_eq!(&tu * &tu, expected);
    }

    #[test]
    fn inverses() {
        assert_eq!(DElem::one().try_inv().unwrap(), DElem::one());
        let two_pi = KElem::pi() + KElem::pi();
        let expected = &DElem::from_k(two_pi.try_inv().unwrap()) * &DElem::u().pow(2);
        assert_eq!(DElem::u().try_inv().unwrap(), expected);
        let (_, w) = standard();
        assert!((w.d() * w.d_inverse()).is_one());
        assert_eq!(DElem::zero().try_inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn basis_coordinates_roundtrip() {
        let a = DElem::random(&mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(DElem::from_k_coords(a.k_coords()), a);
        // θ^j u^i really is the product of powers
        let t = DElem::theta();
        let u = DElem::u();
        for n in 0..9 {
            assert_eq!(DElem::basis(n), &t.pow((n % 3) as u32) * &u.pow((n / 3) as u32));
        }
    }

    #[test]
    fn sigma_tilde_on_generators() {
        let (aut, _) = standard();
        let c = Constants::standard();
        assert_eq!(aut.apply_once(&DElem::theta()), c.theta_image_elem());
        assert_eq!(
            aut.apply_once(&DElem::u()),
            &DElem::from_l(LElem::lambda()) * &DElem::u()
        );
        let alpha = DElem::from_k(KElem::alpha());
        assert_eq!(aut.apply_once(&alpha), DElem::from_k(KElem::alpha().sigma(1)));
    }

    #[test]
    fn polynomial_evaluation_in_d() {
        let (aut, _) = standard();
        assert!(eval_poly_in_d(&f_poly(), 1, aut.theta_image()).is_zero());
        assert!(eval_poly_in_d(&f_poly(), 0, &DElem::theta()).is_zero());
        let minpoly = minpoly_alpha().map(|q| KElem::rational(q.clone()));
        assert!(eval_poly_in_d(&minpoly, 0, &DElem::from_k(KElem::alpha())).is_zero());
        // f itself does not annihilate σ̃(θ)
        assert!(!eval_poly_in_d(&f_poly(), 0, aut.theta_image()).is_zero());
    }

    #[test]
    fn all_relations_hold_on_standard_data() {
        let (aut, w) = standard();
        for r in check_relations(&aut, &w) {
            assert!(r.holds, "{} fails", r.name);
        }
    }

    #[test]
    fn lambda_one_breaks_u_cubed() {
        let c = Constants::standard();
        let aut = OuterAut::from_images_unverified(c.theta_image_elem(), LElem::one());
        let w = InnerWitness::new(c.d_elem()).unwrap();
        let rels = check_relations(&aut, &w);
        let get = |n: &str| rels.iter().find(|r| r.name == n).unwrap().holds;
        assert!(!get("rel_u_cubed"));
        assert!(!get("rel_norm_lambda"));
        assert!(matches!(
            OuterAut::new(c.theta_image_elem(), LElem::one()),
            Err(AlgebraError::RelationFailed { name: "rel_u_cubed" })
        ));
    }

    #[test]
    fn negated_u_column_breaks_inner_relations() {
        let c = Constants::standard();
        let aut = OuterAut::new(c.theta_image_elem(), c.lambda.clone()).unwrap();
        let alt = crate::constants::matrix_to_delem(&crate::constants::d_with_negated_u_column());
        let w = InnerWitness::new(alt).unwrap();
        let rels = check_relations(&aut, &w);
        for name in ["rel_inner_theta", "rel_inner_u", "rel_d_fixed"] {
            assert!(!rels.iter().find(|r| r.name == name).unwrap().holds, "{name}");
        }
    }

    #[test]
    fn u_cubed_image_equals_norm_times_two_pi() {
        let (aut, _) = standard();
        let via_norm = DElem::from_l(&LElem::from_k(aut.lambda().norm_to_k().unwrap()) * u_cubed());
        assert_eq!(aut.u_image().pow(3), via_norm);
        assert_eq!(via_norm, DElem::from_l(u_cubed().sigma_coeffs(1)));
    }

    #[test]
    fn inverse_automorphism() {
        let (aut, w) = standard();
        for a in [DElem::theta(), DElem::u(), DElem::one()] {
            assert_eq!(aut.apply_inverse(&w, &aut.apply_once(&a)), a);
        }
        let t = aut.apply_once(&DElem::theta());
        assert_eq!(aut.apply_inverse(&w, &t), DElem::theta());
    }
}
