//! Bodies of the registered checks.

use rand_chacha::ChaCha8Rng;

use super::{CheckInfo, Verdict, Verifier};
use crate::algebra_d::{DElem, InnerWitness, OuterAut, Relation};
use crate::constants::{d_with_negated_u_column, matrix_to_delem, Constants};
use crate::error::{AlgebraError, Result};
use crate::field_tower::{KElem, LElem};
use crate::rational::{frac, int, Rational};
use crate::residue::{
    canonical_root_of_unity, cubic_is_irreducible, mu_in_fq, ramification_witnesses, reduce_f_at_residue,
    reduce_minpoly_mod, roots, tame_delta_residue, FiniteFieldElement, FpElem, FqElem, FqField, ResiduePrime,
    ResidueSeries,
};
use crate::ring::{CubicPoly, Field, Ring};
use crate::twisted_laurent::{random_series, valuation_laws_hold, TSeries};

macro_rules! relation_check {
    ($fn_name:ident, $rel:expr) => {
        fn $fn_name(v: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
            relation(v, $rel)
        }
    };
}

pub(super) static REGISTRY: &[CheckInfo] = &[
    CheckInfo { name: "rel_u_cubed", anchor: "σ̃(u)³ = σ(2π)", run: rel_u_cubed },
    CheckInfo { name: "rel_commutation", anchor: "σ̃(u)σ̃(θ) = σ̃(φ(θ))σ̃(u)", run: rel_commutation },
    CheckInfo { name: "rel_f_sigma", anchor: "f^σ(σ̃(θ)) = 0", run: rel_f_sigma },
    CheckInfo { name: "rel_inner_theta", anchor: "σ̃³ = Inn(d) on θ", run: rel_inner_theta },
    CheckInfo { name: "rel_inner_u", anchor: "σ̃³ = Inn(d) on u", run: rel_inner_u },
    CheckInfo { name: "rel_d_fixed", anchor: "σ̃(d) = d", run: rel_d_fixed },
    CheckInfo { name: "rel_norm_lambda", anchor: "N_{L/K}(λ) = σ(π)/π", run: rel_norm_lambda },
    CheckInfo { name: "norm_pi_is_7", anchor: "N_{K/Q}(π) = 7", run: norm_pi_is_7 },
    CheckInfo { name: "minpoly_irred_mod2", anchor: "2 is inert in K: x³+x²+1 irreducible over F₂", run: minpoly_irred_mod2 },
    CheckInfo { name: "minpoly_cube_mod7", anchor: "7 is totally ramified in K: minpoly ≡ (x−2)³ mod 7", run: minpoly_cube_mod7 },
    CheckInfo { name: "f_rootless_mod2", anchor: "(2) is inert in L: f irreducible over F₈", run: f_rootless_mod2 },
    CheckInfo { name: "f_rootless_modpi", anchor: "(π) is inert in L: x³−3x+1 irreducible over F₇", run: f_rootless_modpi },
    CheckInfo { name: "mu_9_not_in_F7", anchor: "μ₉ ⊄ F₇ since 9 ∤ 6", run: mu_9_not_in_f7 },
    CheckInfo { name: "mu_3_not_in_F2", anchor: "μ₃ ⊄ F₂ since 3 ∤ 1", run: mu_3_not_in_f2 },
    CheckInfo { name: "mu_3_in_F7", anchor: "μ₃ ⊂ F₇ since 3 | 6", run: mu_3_in_f7 },
    CheckInfo { name: "t_central", anchor: "t = d⁻¹x³ is central in D((x,σ̃))", run: t_central },
    CheckInfo { name: "t_centre_series", anchor: "rational series in t are central", run: t_centre_series },
    CheckInfo { name: "valuation_axioms", anchor: "x-adic valuation: v(ab) = v(a)v(b), ultrametric", run: valuation_axioms },
    CheckInfo { name: "series_inverse", anchor: "D((x,σ̃)) is a division ring: a·a⁻¹ = 1", run: series_inverse },
    CheckInfo { name: "automorphism_orders", anchor: "σ and φ have order 3", run: automorphism_orders },
    CheckInfo { name: "automorphism_homomorphisms", anchor: "σ and φ are ring homomorphisms", run: automorphism_homomorphisms },
    CheckInfo { name: "homomorphism_sigma_tilde", anchor: "σ̃ is a ring homomorphism of D", run: homomorphism_sigma_tilde },
    CheckInfo { name: "inner_random", anchor: "σ̃³(a) = d·a·d⁻¹ for all a ∈ D", run: inner_random },
    CheckInfo { name: "sigma_tilde_inverse", anchor: "σ̃⁻¹ = σ̃²∘Inn(d⁻¹)", run: sigma_tilde_inverse },
    CheckInfo { name: "d_ring_axioms", anchor: "D is an associative ring", run: d_ring_axioms },
    CheckInfo { name: "division_evidence", anchor: "D is a division algebra", run: division_evidence },
    CheckInfo { name: "field_inverses", anchor: "K and L are fields", run: field_inverses },
    CheckInfo { name: "norm_multiplicativity", anchor: "N_{K/Q} and N_{L/K} are multiplicative", run: norm_multiplicativity },
    CheckInfo { name: "tame_delta_residue", anchor: "residue of Δ_σ(uniformizer) is the primitive root ζ", run: tame_delta_residue_check },
    CheckInfo { name: "d_sign_sensitivity", anchor: "d with its u¹ column negated is not a witness", run: d_sign_sensitivity },
];

fn basis_label(n: usize) -> String {
    let (i, j) = (n / 3, n % 3);
    match (j, i) {
        (0, 0) => "1".into(),
        (_, 0) => format!("θ^{j}"),
        (0, _) => format!("u^{i}"),
        _ => format!("θ^{j}u^{i}"),
    }
}

/// Where two elements of `D` differ, in `K`-coordinates.
fn difference(lhs: &DElem, rhs: &DElem) -> String {
    let (a, b) = (lhs.k_coords(), rhs.k_coords());
    let diffs: Vec<usize> = (0..9).filter(|&n| a[n] != b[n]).collect();
    match diffs.first() {
        None => "sides agree".into(),
        Some(&n) => format!(
            "{} of 9 K-coordinates differ; coefficient of {}: lhs {}, rhs {}",
            diffs.len(),
            basis_label(n),
            a[n],
            b[n]
        ),
    }
}

fn relation(v: &Verifier, rel: Relation) -> Result<Verdict> {
    let witness = if rel.needs_witness() { Some(v.witness()?) } else { None };
    let (lhs, rhs) = rel.sides(v.aut(), witness)?;
    Ok(if lhs == rhs {
        Verdict::Pass(format!("{} holds exactly", rel.statement()))
    } else {
        Verdict::Fail(format!("{} fails: {}", rel.statement(), difference(&lhs, &rhs)))
    })
}

relation_check!(rel_u_cubed, Relation::UCubed);
relation_check!(rel_commutation, Relation::Commutation);
relation_check!(rel_f_sigma, Relation::FSigma);
relation_check!(rel_inner_theta, Relation::InnerTheta);
relation_check!(rel_inner_u, Relation::InnerU);
relation_check!(rel_d_fixed, Relation::DFixed);
relation_check!(rel_norm_lambda, Relation::NormLambda);

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let minor = |c0: usize, c1: usize| &m[1][c0] * &m[2][c1] - &m[1][c1] * &m[2][c0];
    &m[0][0] * minor(1, 2) - &m[0][1] * minor(0, 2) + &m[0][2] * minor(0, 1)
}

/// `N_{K/Q}(a)` as the determinant of multiplication by `a` on `1, α, α²`.
fn regular_norm(a: &KElem) -> Rational {
    let alpha = KElem::alpha();
    let basis = [KElem::one(), alpha.clone(), &alpha * &alpha];
    let cols: Vec<[Rational; 3]> = basis.iter().map(|b| (a * b).coeffs()).collect();
    let m: [[Rational; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
    det3(&m)
}

fn norm_pi_is_7(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let pi = KElem::pi();
    let conjugates = pi.norm()?;
    let regular = regular_norm(&pi);
    Ok(if conjugates == int(7) && regular == int(7) {
        Verdict::Pass("π·σ(π)·σ²(π) = 7 and det(mult. by π) = 7".into())
    } else {
        Verdict::Fail(format!(
            "π·σ(π)·σ²(π) = {conjugates}, det(mult. by π) = {regular}, expected 7"
        ))
    })
}

fn fp_poly(p: u64, coeffs: [i64; 4]) -> CubicPoly<FpElem> {
    CubicPoly::new(
        FpElem::new(coeffs[0], p),
        FpElem::new(coeffs[1], p),
        FpElem::new(coeffs[2], p),
        FpElem::new(coeffs[3], p),
    )
}

/// Irreducibility with the expected reduction; `what` names the polynomial.
fn rootless<T: FiniteFieldElement + std::fmt::Display>(
    what: &str,
    reduced: &CubicPoly<T>,
    expected: &CubicPoly<T>,
    expected_candidates: usize,
) -> Result<Verdict> {
    if reduced != expected {
        return Ok(Verdict::Fail(format!("{what} reduces to {reduced}, expected {expected}")));
    }
    let candidates = reduced.leading().field_elements().len();
    if candidates != expected_candidates {
        return Ok(Verdict::Fail(format!(
            "searched {candidates} candidates, expected {expected_candidates}"
        )));
    }
    let found = roots(reduced);
    Ok(if cubic_is_irreducible(reduced)? {
        Verdict::Pass(format!("{what} = {reduced}, no root among {candidates} candidates"))
    } else {
        let shown: Vec<String> = found.iter().map(|r| r.to_string()).collect();
        Verdict::Fail(format!("{what} = {reduced} has roots {}", shown.join(", ")))
    })
}

fn minpoly_irred_mod2(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    rootless("minpoly mod 2", &reduce_minpoly_mod(2), &fp_poly(2, [1, 0, 1, 1]), 2)
}

fn minpoly_cube_mod7(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let m = reduce_minpoly_mod(7);
    let expected = fp_poly(7, [6, 5, 1, 1]);
    if m != expected {
        return Ok(Verdict::Fail(format!("minpoly mod 7 = {m}, expected {expected}")));
    }
    let witnesses = ramification_witnesses(7);
    Ok(match witnesses.as_slice() {
        [r] if r.value() == 2 => Verdict::Pass(format!("minpoly mod 7 = {m} = (x − 2)³; r = 2 unique among 7 candidates")),
        _ => {
            let shown: Vec<String> = witnesses.iter().map(|r| r.to_string()).collect();
            Verdict::Fail(format!("cube witnesses among 7 candidates: [{}], expected [2]", shown.join(", ")))
        }
    })
}

fn fq_poly(field: &std::sync::Arc<FqField>, coeffs: [&[i64]; 4]) -> CubicPoly<FqElem> {
    CubicPoly::new(
        FqElem::new(field, coeffs[0]),
        FqElem::new(field, coeffs[1]),
        FqElem::new(field, coeffs[2]),
        FqElem::new(field, coeffs[3]),
    )
}

fn f_rootless_mod2(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let field = ResiduePrime::Two.residue_field()?;
    // x³ + ᾱx² + (ᾱ + 1)x + 1
    let expected = fq_poly(&field, [&[1], &[1, 1], &[0, 1], &[1]]);
    rootless("f mod (2)", &reduce_f_at_residue(ResiduePrime::Two)?, &expected, 8)
}

fn f_rootless_modpi(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let field = ResiduePrime::Pi.residue_field()?;
    // x³ − 3x + 1
    let expected = fq_poly(&field, [&[1], &[-3], &[0], &[1]]);
    rootless("f mod (π)", &reduce_f_at_residue(ResiduePrime::Pi)?, &expected, 7)
}

/// Compares `mu_in_fq(n, p)` with the expectation and with a count of
/// the `n`-th roots of unity in `F_p`.
fn mu(n: u64, p: u64, expected: bool) -> Result<Verdict> {
    let predicate = mu_in_fq(n, p)?;
    let field = FqField::prime(p);
    let one = FqElem::one(&field);
    let mut count = 0u64;
    for x in FqElem::all_elements(&field).into_iter().filter(|x| !x.is_zero()) {
        if x.pow(n as i64)? == one {
            count += 1;
        }
    }
    let by_count = count == n;
    Ok(if predicate == expected && by_count == expected {
        Verdict::Pass(format!(
            "mu_in_Fq({n}, {p}) = {predicate}; {count} of the {} units satisfy x^{n} = 1",
            p - 1
        ))
    } else {
        Verdict::Fail(format!(
            "mu_in_Fq({n}, {p}) = {predicate}, brute force {by_count} ({count} roots), expected {expected}"
        ))
    })
}

fn mu_9_not_in_f7(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    mu(9, 7, false)
}

fn mu_3_not_in_f2(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    mu(3, 2, false)
}

fn mu_3_in_f7(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    mu(3, 7, true)
}

fn nonzero<T: Ring>(rng: &mut ChaCha8Rng, gen: impl Fn(&mut ChaCha8Rng) -> T) -> T {
    loop {
        let x = gen(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_d(rng: &mut ChaCha8Rng) -> DElem {
    DElem::random(rng)
}

/// First failing trial, if any.
fn trials<F>(v: &Verifier, rng: &mut ChaCha8Rng, mut trial: F) -> Result<Option<(usize, String)>>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
{
    for i in 0..v.settings().trials {
        if let Some(msg) = trial(rng)? {
            return Ok(Some((i, msg)));
        }
    }
    Ok(None)
}

fn summarize(v: &Verifier, failure: Option<(usize, String)>, what: &str) -> Verdict {
    let n = v.settings().trials;
    match failure {
        None => Verdict::Pass(format!("{what} on {n} random samples")),
        Some((i, msg)) => Verdict::Fail(format!("trial {i} of {n}: {msg}")),
    }
}

fn t_central(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let ring = v.ring()?;
    let samples: Vec<DElem> = (0..v.settings().trials).map(|_| random_d(rng)).collect();
    let failed: Vec<&str> = ring
        .check_t_central(&samples)
        .into_iter()
        .filter(|o| !o.holds)
        .map(|o| o.name)
        .collect();
    Ok(if failed.is_empty() {
        Verdict::Pass(format!(
            "t commutes with θ, u, x and {} random elements of D",
            samples.len()
        ))
    } else {
        Verdict::Fail(format!("failed: {}", failed.join(", ")))
    })
}

fn t_centre_series(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let ring = v.ring()?;
    let coeffs = [(-1, frac(1, 2)), (0, int(-3)), (2, frac(5, 7))];
    let s = ring.rational_series_in_t(&coeffs, None)?;
    let commutes = |b: &TSeries| ring.mul(&s, b) == ring.mul(b, &s);
    if !commutes(&TSeries::x()) {
        return Ok(Verdict::Fail("½t⁻¹ − 3 + (5/7)t² does not commute with x".into()));
    }
    let failure = trials(v, rng, |rng| {
        let a = random_d(rng);
        Ok((!commutes(&TSeries::constant(a.clone()))).then(|| format!("fails to commute with {a}")))
    })?;
    Ok(summarize(v, failure, "½t⁻¹ − 3 + (5/7)t² commutes with x and with elements of D"))
}

fn valuation_axioms(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let ring = v.ring()?;
    let p = v.settings().precision;
    let failure = trials(v, rng, |rng| {
        let a = random_series(rng, p, -3..=3);
        let b = random_series(rng, p, -3..=3);
        Ok((!valuation_laws_hold(ring, &a, &b)).then(|| {
            format!("v(a) = {}, v(b) = {}", a.valuation(), b.valuation())
        }))
    })?;
    Ok(summarize(v, failure, &format!("v(ab) = v(a)+v(b) and ultrametric law (precision {p})")))
}

fn series_inverse(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let ring = v.ring()?;
    let p = v.settings().precision as i64;
    let one = TSeries::one().truncate(p);
    let failure = trials(v, rng, |rng| {
        let a = random_series(rng, p as usize, -3..=3);
        let inv = ring.inv(&a)?;
        let right = ring.mul(&a, &inv);
        let left = ring.mul(&inv, &a);
        Ok(if right != one {
            Some(format!("a·a⁻¹ ≠ 1 + O(x^{p}) for v(a) = {}", a.valuation()))
        } else if left != one {
            Some(format!("a⁻¹·a ≠ 1 + O(x^{p}) for v(a) = {}", a.valuation()))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, &format!("a·a⁻¹ = a⁻¹·a = 1 + O(x^{p})")))
}

fn automorphism_orders(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let alpha = KElem::alpha();
    if alpha.sigma(1) == alpha {
        return Ok(Verdict::Fail("σ(α) = α".into()));
    }
    let theta = LElem::theta();
    if theta.phi(1) == theta {
        return Ok(Verdict::Fail("φ(θ) = θ".into()));
    }
    let failure = trials(v, rng, |rng| {
        let k = KElem::random(rng);
        let l = LElem::random(rng);
        let k3 = k.sigma(1).sigma(1).sigma(1);
        let l3 = l.phi(1).phi(1).phi(1);
        let k_fixed = KElem::random(rng);
        Ok(if k3 != k {
            Some(format!("σ³({k}) = {k3}"))
        } else if l3 != l {
            Some(format!("φ³({l}) = {l3}"))
        } else if LElem::from_k(k_fixed.clone()).phi(1) != LElem::from_k(k_fixed.clone()) {
            Some(format!("φ moves {k_fixed} ∈ K"))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "σ(α) ≠ α, φ(θ) ≠ θ; σ³ = id, φ³ = id, φ|_K = id"))
}

fn automorphism_homomorphisms(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let failure = trials(v, rng, |rng| {
        let (a, b) = (KElem::random(rng), KElem::random(rng));
        let (x, y) = (LElem::random(rng), LElem::random(rng));
        let s = |k: &KElem| k.sigma(1);
        let f = |l: &LElem| l.phi(1);
        Ok(if s(&(&a + &b)) != &s(&a) + &s(&b) || s(&(&a * &b)) != &s(&a) * &s(&b) {
            Some(format!("σ is not a homomorphism on ({a}, {b})"))
        } else if f(&(&x + &y)) != &f(&x) + &f(&y) || f(&(&x * &y)) != &f(&x) * &f(&y) {
            Some(format!("φ is not a homomorphism on ({x}, {y})"))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "σ and φ preserve sums and products"))
}

fn homomorphism_sigma_tilde(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let aut = v.aut();
    let s = |a: &DElem| aut.apply_once(a);
    if !s(&DElem::one()).is_one() {
        return Ok(Verdict::Fail("σ̃(1) ≠ 1".into()));
    }
    let failure = trials(v, rng, |rng| {
        let (a, b) = (random_d(rng), random_d(rng));
        let (sa, sb) = (s(&a), s(&b));
        Ok(if s(&(&a + &b)) != &sa + &sb {
            Some("σ̃(a+b) ≠ σ̃(a)+σ̃(b)".into())
        } else if s(&(&a * &b)) != &sa * &sb {
            Some(format!("σ̃(ab) ≠ σ̃(a)σ̃(b): {}", difference(&s(&(&a * &b)), &(&sa * &sb))))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "σ̃(1) = 1, σ̃(a+b) = σ̃(a)+σ̃(b), σ̃(ab) = σ̃(a)σ̃(b)"))
}

fn inner_random(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let witness = v.witness()?;
    let aut = v.aut();
    let failure = trials(v, rng, |rng| {
        let a = random_d(rng);
        let (lhs, rhs) = (aut.apply(&a, 3), witness.conjugate(&a));
        Ok((lhs != rhs).then(|| format!("σ̃³(a) ≠ dad⁻¹: {}", difference(&lhs, &rhs))))
    })?;
    Ok(summarize(v, failure, "σ̃³(a) = d·a·d⁻¹"))
}

fn sigma_tilde_inverse(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let witness = v.witness()?;
    let aut = v.aut();
    let failure = trials(v, rng, |rng| {
        let a = random_d(rng);
        Ok(if aut.apply_inverse(witness, &aut.apply_once(&a)) != a {
            Some("σ̃⁻¹(σ̃(a)) ≠ a".into())
        } else if aut.apply_once(&aut.apply_inverse(witness, &a)) != a {
            Some("σ̃(σ̃⁻¹(a)) ≠ a".into())
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "σ̃⁻¹(σ̃(a)) = σ̃(σ̃⁻¹(a)) = a"))
}

fn d_ring_axioms(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let failure = trials(v, rng, |rng| {
        let (a, b, c) = (random_d(rng), random_d(rng), random_d(rng));
        Ok(if &(&a * &b) * &c != &a * &(&b * &c) {
            Some("(ab)c ≠ a(bc)".into())
        } else if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
            Some("a(b+c) ≠ ab+ac".into())
        } else if &(&a + &b) * &c != &(&a * &c) + &(&b * &c) {
            Some("(a+b)c ≠ ac+bc".into())
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "associativity and both distributive laws"))
}

fn division_evidence(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let failure = trials(v, rng, |rng| {
        let a = nonzero(rng, random_d);
        let inv = match a.try_inv() {
            Ok(inv) => inv,
            Err(AlgebraError::ZeroDivisor) => return Ok(Some(format!("zero divisor {a}"))),
            Err(e) => return Err(e),
        };
        Ok((!(&a * &inv).is_one() || !(&inv * &a).is_one()).then(|| format!("inverse of {a} is one-sided")))
    })?;
    Ok(summarize(v, failure, "nonsingular regular representation, a·a⁻¹ = a⁻¹·a = 1"))
}

fn field_inverses(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let failure = trials(v, rng, |rng| {
        let k = nonzero(rng, KElem::random);
        let l = nonzero(rng, LElem::random);
        Ok(if &k * &k.try_inv()? != KElem::one() {
            Some(format!("k·k⁻¹ ≠ 1 for k = {k}"))
        } else if &l * &l.try_inv()? != LElem::one() {
            Some(format!("l·l⁻¹ ≠ 1 for l = {l}"))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "k·k⁻¹ = 1 in K and l·l⁻¹ = 1 in L"))
}

fn norm_multiplicativity(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let failure = trials(v, rng, |rng| {
        let (a, b) = (KElem::random(rng), KElem::random(rng));
        let (x, y) = (LElem::random(rng), LElem::random(rng));
        Ok(if (&a * &b).norm()? != a.norm()? * b.norm()? {
            Some(format!("N(ab) ≠ N(a)N(b) for a = {a}, b = {b}"))
        } else if a.norm()? != regular_norm(&a) {
            Some(format!("product of conjugates ≠ determinant for {a}"))
        } else if (&x * &y).norm_to_k()? != &x.norm_to_k()? * &y.norm_to_k()? {
            Some(format!("N(xy) ≠ N(x)N(y) for x = {x}, y = {y}"))
        } else if LElem::from_k(a.clone()).norm_to_k()? != &(&a * &a) * &a {
            Some(format!("N_{{L/K}}({a}) ≠ {a}³"))
        } else {
            None
        })
    })?;
    Ok(summarize(v, failure, "N_{K/Q} and N_{L/K} multiplicative, N_{L/K}|_K = cube"))
}

fn tame_delta_residue_check(v: &Verifier, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let field = FqField::prime(7);
    let p = v.settings().precision;
    let mut seen = Vec::new();
    for n in [2u64, 3, 6] {
        let zeta = canonical_root_of_unity(&field, n)?;
        if zeta.multiplicative_order()? != n {
            return Ok(Verdict::Fail(format!("ζ = {zeta} is not a primitive {n}-th root")));
        }
        for i in 0..v.settings().trials {
            let a = ResidueSeries::random_uniformizer(&field, p, rng);
            let r = tame_delta_residue(&field, n, &a)?;
            if r != zeta {
                return Ok(Verdict::Fail(format!(
                    "n = {n}, uniformizer {i}: residue {r}, expected ζ = {zeta}"
                )));
            }
        }
        seen.push(format!("n = {n}: {zeta}"));
    }
    Ok(Verdict::Pass(format!(
        "over F₇, constant on {} random uniformizers each and of exact order n ({})",
        v.settings().trials,
        seen.join(", ")
    )))
}

fn d_sign_sensitivity(_: &Verifier, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let c = Constants::standard();
    let aut = OuterAut::from_images_unverified(c.theta_image_elem(), c.lambda.clone());
    let flipped = InnerWitness::new(matrix_to_delem(&d_with_negated_u_column()))?;
    let mut holding = Vec::new();
    for rel in [Relation::InnerTheta, Relation::InnerU, Relation::DFixed] {
        if rel.holds(&aut, Some(&flipped))? {
            holding.push(rel.name());
        }
    }
    Ok(if holding.is_empty() {
        Verdict::Pass("with the u¹ column negated, rel_inner_theta, rel_inner_u and rel_d_fixed all fail".into())
    } else {
        Verdict::Fail(format!("negated u¹ column still satisfies {}", holding.join(", ")))
    })
}
