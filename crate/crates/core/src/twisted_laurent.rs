//! Truncated twisted Laurent series `Σ_{i ≥ k} a_i x^i` over `D`, with
//! multiplication twisted by `x·a = σ̃(a)·x`, and the x-adic valuation.
//!
//! A [`TSeries`] knows its coefficients exactly below its `cutoff`
//! (exclusive) and nothing at or above it; `cutoff = None` marks an exact
//! finite sum. Binary operations propagate the weakest precision, and
//! asking for a coefficient at or beyond the cutoff is an error rather
//! than an implicit zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::algebra_d::{DElem, InnerWitness, OuterAut, RelationOutcome};
use crate::error::{AlgebraError, Result};
use crate::field_tower::KElem;
use crate::ring::Ring;

/// Default number of known coefficients for randomized series.
pub const DEFAULT_SERIES_PRECISION: usize = 12;

/// The additive form of the x-adic valuation: the exponent of the leading
/// term, or infinity for zero. The multiplicative valuation of the series
/// is `δ^exponent` for any fixed `0 < δ < 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum XadicValue {
    Finite(i64),
    Infinity,
}

impl XadicValue {
    pub fn exponent(self) -> Option<i64> {
        match self {
            Self::Finite(e) => Some(e),
            Self::Infinity => None,
        }
    }
}

impl std::ops::Add for XadicValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a + b),
            _ => Self::Infinity,
        }
    }
}

impl fmt::Display for XadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(e) => write!(f, "{e}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

fn min_cutoff(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TSeries {
    /// Exponent of `coeffs[0]`; meaningless for the zero series.
    start: i64,
    /// Leading entry nonzero, trailing entry nonzero; empty for zero.
    coeffs: Vec<DElem>,
    cutoff: Option<i64>,
}

impl TSeries {
    /// Series with `coeffs[i]` at exponent `start + i`, known below `cutoff`.
    /// Coefficients at or beyond the cutoff are discarded.
    pub fn new(start: i64, mut coeffs: Vec<DElem>, cutoff: Option<i64>) -> Self {
        if let Some(c) = cutoff {
            let keep = (c - start).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let start = if coeffs.is_empty() { 0 } else { start + lead as i64 };
        Self {
            start,
            coeffs,
            cutoff,
        }
    }

    pub fn from_terms(terms: BTreeMap<i64, DElem>, cutoff: Option<i64>) -> Self {
        let Some((&lo, _)) = terms.first_key_value() else {
            return Self::new(0, Vec::new(), cutoff);
        };
        let hi = *terms.last_key_value().expect("nonempty").0;
        let coeffs = (lo..=hi)
            .map(|e| terms.get(&e).cloned().unwrap_or_else(DElem::zero))
            .collect();
        Self::new(lo, coeffs, cutoff)
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new(), None)
    }

    /// `O(x^cutoff)`: zero as far as it is known.
    pub fn zero_to(cutoff: i64) -> Self {
        Self::new(0, Vec::new(), Some(cutoff))
    }

    /// Exact single term `a·x^exponent`.
    pub fn monomial(a: DElem, exponent: i64) -> Self {
        Self::new(exponent, vec![a], None)
    }

    pub fn constant(a: DElem) -> Self {
        Self::monomial(a, 0)
    }

    pub fn one() -> Self {
        Self::constant(DElem::one())
    }

    pub fn x() -> Self {
        Self::monomial(DElem::one(), 1)
    }

    pub fn cutoff(&self) -> Option<i64> {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    /// Zero as far as known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> XadicValue {
        if self.coeffs.is_empty() {
            XadicValue::Infinity
        } else {
            XadicValue::Finite(self.start)
        }
    }

    /// Lowest exponent that may carry a nonzero coefficient.
    fn low(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.cutoff
        } else {
            Some(self.start)
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &DElem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn coefficient(&self, exponent: i64) -> Result<DElem> {
        if self.cutoff.is_some_and(|c| exponent >= c) {
            return Err(AlgebraError::InsufficientPrecision(format!(
                "coefficient of x^{exponent} requested beyond cutoff {}",
                self.cutoff.expect("checked")
            )));
        }
        let idx = exponent - self.start;
        if self.coeffs.is_empty() || idx < 0 || idx as usize >= self.coeffs.len() {
            return Ok(DElem::zero());
        }
        Ok(self.coeffs[idx as usize].clone())
    }

    /// Drops everything at or above `cutoff`.
    pub fn truncate(&self, cutoff: i64) -> Self {
        Self::new(self.start, self.coeffs.clone(), min_cutoff(self.cutoff, Some(cutoff)))
    }

    /// Member of the valuation ring `B_v = {Σ_{i≥0} a_i x^i}`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= XadicValue::Finite(0)
    }

    /// Member of the maximal ideal `M_v = {Σ_{i≥1} a_i x^i}`.
    pub fn in_maximal_ideal(&self) -> bool {
        self.valuation() >= XadicValue::Finite(1)
    }

    fn combine(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let mut terms: BTreeMap<i64, DElem> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        for (e, c) in rhs.terms() {
            let c = if negate_rhs { -c } else { c.clone() };
            let slot = terms.entry(e).or_insert_with(DElem::zero);
            *slot = &*slot + &c;
        }
        Self::from_terms(terms, min_cutoff(self.cutoff, rhs.cutoff))
    }
}

impl std::ops::Add<&TSeries> for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        self.combine(rhs, false)
    }
}

impl std::ops::Sub<&TSeries> for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        self.combine(rhs, true)
    }
}

impl std::ops::Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        TSeries::zero().combine(self, true)
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]x^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(c) = self.cutoff {
            write!(f, " + O(x^{c})")?;
        }
        Ok(())
    }
}

/// The ring `D((x, σ̃))`: owns `σ̃`, the witness `d`, and a cache of
/// `σ̃^i` on the `K`-basis of `D`.
#[derive(Debug)]
pub struct TwistedLaurent {
    aut: OuterAut,
    witness: InnerWitness,
    precision: usize,
    max_cached: i64,
    /// Slot `i + max_cached` holds `σ̃^i(θ^j u^k)` for the nine basis elements.
    power_table: Vec<OnceLock<Vec<DElem>>>,
}

impl TwistedLaurent {
    /// `precision` is the relative precision used when inverting exact
    /// series with more than one term.
    pub fn new(aut: OuterAut, witness: InnerWitness, precision: usize) -> Self {
        let max_cached = 4 * precision as i64 + 8;
        let power_table = (0..=2 * max_cached).map(|_| OnceLock::new()).collect();
        Self {
            aut,
            witness,
            precision,
            max_cached,
            power_table,
        }
    }

    pub fn aut(&self) -> &OuterAut {
        &self.aut
    }

    pub fn witness(&self) -> &InnerWitness {
        &self.witness
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn basis_images(&self, power: i64) -> Vec<DElem> {
        if power == 0 {
            return (0..9).map(DElem::basis).collect();
        }
        let step = |imgs: Vec<DElem>| -> Vec<DElem> {
            imgs.iter()
                .map(|b| {
                    if power > 0 {
                        self.aut.apply_once(b)
                    } else {
                        self.aut.apply_inverse(&self.witness, b)
                    }
                })
                .collect()
        };
        let prev = power - power.signum();
        if power.abs() > self.max_cached {
            return step(self.basis_images(prev));
        }
        self.power_table[(power + self.max_cached) as usize]
            .get_or_init(|| step(self.basis_images(prev)))
            .clone()
    }

    /// `σ̃^power(a)` for any integer power; `σ̃^i` is `σ^i`-semilinear over `K`.
    pub fn twist(&self, a: &DElem, power: i64) -> DElem {
        if power == 0 {
            return a.clone();
        }
        let images = self.basis_images(power);
        let base_power = power.rem_euclid(3) as u32;
        a.k_coords()
            .iter()
            .zip(&images)
            .filter(|(k, _)| !k.is_zero())
            .fold(DElem::zero(), |acc, (k, img)| &acc + &img.scale_k(&k.sigma(base_power)))
    }

    /// Twisted Cauchy product: the coefficient of `x^n` is
    /// `Σ_{i+j=n} a_i σ̃^i(b_j)`.
    pub fn mul(&self, a: &TSeries, b: &TSeries) -> TSeries {
        if (a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero()) {
            return TSeries::zero();
        }
        let cutoff = match (a.low(), b.low()) {
            (Some(la), Some(lb)) => min_cutoff(
                a.cutoff.map(|ca| ca + lb),
                b.cutoff.map(|cb| la + cb),
            ),
            _ => unreachable!("a nonzero or truncated series has a lowest exponent"),
        };
        let mut terms: BTreeMap<i64, DElem> = BTreeMap::new();
        for (i, ai) in a.terms() {
            for (j, bj) in b.terms() {
                if cutoff.is_some_and(|c| i + j >= c) {
                    break;
                }
                let term = ai * &self.twist(bj, i);
                let slot = terms.entry(i + j).or_insert_with(DElem::zero);
                *slot = &*slot + &term;
            }
        }
        TSeries::from_terms(terms, cutoff)
    }

    /// Multiplicative inverse. The leading coefficient is inverted in `D`
    /// and the remaining coefficients are solved one exponent at a time.
    ///
    /// A truncated input yields the same relative precision; an exact input
    /// with several terms is inverted to the ring's default precision.
    pub fn inv(&self, a: &TSeries) -> Result<TSeries> {
        let Some((k, lead)) = a.terms().next() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let lead_inv = lead.try_inv()?;
        let single_term = a.terms().nth(1).is_none();
        if a.is_exact() && single_term {
            return Ok(TSeries::monomial(self.twist(&lead_inv, -k), -k));
        }
        let relative = match a.cutoff {
            Some(c) => (c - k) as usize,
            None => self.precision,
        };
        let mut s: Vec<DElem> = Vec::with_capacity(relative);
        s.push(self.twist(&lead_inv, -k));
        for n in 1..relative as i64 {
            // Σ_{i>k} a_i σ̃^i(s_{n-i})  with s indexed from −k
            let mut acc = DElem::zero();
            for (i, ai) in a.terms().skip(1) {
                let m = n - i;
                if m < -k {
                    break;
                }
                let sm = &s[(m + k) as usize];
                if !sm.is_zero() {
                    acc = &acc + &(ai * &self.twist(sm, i));
                }
            }
            let rhs = -&(&lead_inv * &acc);
            s.push(self.twist(&rhs, -k));
        }
        Ok(TSeries::new(-k, s, Some(-k + relative as i64)))
    }

    /// `t = d⁻¹x³`.
    pub fn make_t(&self) -> TSeries {
        TSeries::monomial(self.witness.d_inverse().clone(), 3)
    }

    /// Exact commutation checks for `t` against `θ`, `u`, `x` and the given
    /// sample elements of `D`. Every product involved is a single term, so
    /// each check is one identity in `D`.
    pub fn check_t_central(&self, samples: &[DElem]) -> Vec<RelationOutcome> {
        let t = self.make_t();
        let commutes = |s: &TSeries| self.mul(&t, s) == self.mul(s, &t);
        vec![
            RelationOutcome {
                name: "t_commutes_theta",
                holds: commutes(&TSeries::constant(DElem::theta())),
            },
            RelationOutcome {
                name: "t_commutes_u",
                holds: commutes(&TSeries::constant(DElem::u())),
            },
            RelationOutcome {
                name: "t_commutes_x",
                holds: commutes(&TSeries::x()),
            },
            RelationOutcome {
                name: "t_commutes_samples",
                holds: samples.iter().all(|c| commutes(&TSeries::constant(c.clone()))),
            },
        ]
    }

    /// `Σ c_m t^m` for rational `c_m`, truncated in `x` at `cutoff`.
    pub fn rational_series_in_t(&self, coeffs: &[(i64, crate::Rational)], cutoff: Option<i64>) -> Result<TSeries> {
        let t = self.make_t();
        let t_inv = self.inv(&t)?;
        let mut acc = TSeries::zero();
        for (m, c) in coeffs {
            let base = if *m >= 0 { &t } else { &t_inv };
            let mut power = TSeries::one();
            for _ in 0..m.unsigned_abs() {
                power = self.mul(&power, base);
            }
            let scaled = self.mul(&TSeries::constant(DElem::from_k(KElem::rational(c.clone()))), &power);
            acc = &acc + &scaled;
        }
        Ok(match cutoff {
            Some(c) => acc.truncate(c),
            None => acc,
        })
    }
}

/// Random truncated series with `precision` known coefficients starting at
/// an exponent in `start_range`; the leading coefficient is nonzero and
/// the others are zero with probability 1/4.
pub fn random_series<R: Rng + ?Sized>(
    rng: &mut R,
    precision: usize,
    start_range: std::ops::RangeInclusive<i64>,
) -> TSeries {
    let start = rng.gen_range(start_range);
    let coeffs = (0..precision)
        .map(|i| {
            if i > 0 && rng.gen_ratio(1, 4) {
                DElem::zero()
            } else {
                loop {
                    let c = DElem::random(rng);
                    if !c.is_zero() {
                        break c;
                    }
                }
            }
        })
        .collect();
    TSeries::new(start, coeffs, Some(start + precision as i64))
}

/// Checks `v(ab) = v(a) + v(b)` and the ultrametric law on one pair.
pub fn valuation_laws_hold(ring: &TwistedLaurent, a: &TSeries, b: &TSeries) -> bool {
    let (va, vb) = (a.valuation(), b.valuation());
    let product_ok = ring.mul(a, b).valuation() == va + vb;
    let sum = a + b;
    let lower = va.min(vb);
    let ultrametric_ok = match va.cmp(&vb) {
        Ordering::Equal => sum.valuation() >= lower,
        _ => sum.valuation() == lower,
    };
    product_ok && ultrametric_ok
}
