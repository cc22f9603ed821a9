//! Coherent-state expansions over the truncated Fock basis.
//!
//! Coefficients are assembled in log-modulus + phase form and normalized
//! before exponentiation: across the catalogue ρ(n) spans hundreds of
//! orders of magnitude and the naive zⁿ/√ρ(n) would overflow long before
//! the truncation cap.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{Dimension, FamilySpec};

/// Truncation policy for state construction: grow the basis until the
/// estimated tail mass drops below `tolerance`, never beyond `max_n`.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPolicy {
    pub tolerance: f64,
    pub max_n: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { tolerance: 1e-12, max_n: 512 }
    }
}

impl TruncationPolicy {
    /// Tighter tail for statistics-grade sums.
    pub fn tight() -> Self {
        TruncationPolicy { tolerance: 1e-15, max_n: 512 }
    }

    pub fn with_max_n(self, max_n: usize) -> Self {
        TruncationPolicy { max_n, ..self }
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        TruncationPolicy { tolerance, ..self }
    }
}

/// A normalized state Σ c_n |n⟩ on the truncated Fock basis.
#[derive(Debug, Clone)]
pub struct FockExpansion {
    coefficients: Vec<Complex64>,
    family: FamilySpec,
    label_z: Complex64,
    stabilization_alpha: Option<f64>,
    truncation_n: usize,
    tail_mass: f64,
}

impl FockExpansion {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn label_z(&self) -> Complex64 {
        self.label_z
    }

    pub fn stabilization_alpha(&self) -> Option<f64> {
        self.stabilization_alpha
    }

    pub fn truncation_n(&self) -> usize {
        self.truncation_n
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ℓ² distance between coefficient vectors, zero-padded to equal length.
    pub fn coefficient_distance(&self, other: &FockExpansion) -> f64 {
        let zero = Complex64::new(0.0, 0.0);
        let len = self.coefficients.len().max(other.coefficients.len());
        let mut acc = 0.0;
        for n in 0..len {
            let a = self.coefficients.get(n).copied().unwrap_or(zero);
            let b = other.coefficients.get(n).copied().unwrap_or(zero);
            acc += (a - b).norm_sqr();
        }
        acc.sqrt()
    }

    pub(crate) fn from_parts(
        coefficients: Vec<Complex64>,
        family: FamilySpec,
        label_z: Complex64,
        stabilization_alpha: Option<f64>,
        tail_mass: f64,
    ) -> FockExpansion {
        let truncation_n = coefficients.len().saturating_sub(1);
        FockExpansion {
            coefficients,
            family,
            label_z,
            stabilization_alpha,
            truncation_n,
            tail_mass,
        }
    }
}

/// Photon-number statistics of an expansion.
#[derive(Debug, Clone, Serialize)]
pub struct PhotonStatistics {
    pub distribution: Vec<f64>,
    pub mean_n: f64,
    pub variance_n: f64,
    pub mandel_q: f64,
}

/// Radius margin for infinite families with a finite convergence radius:
/// closer to the boundary the geometric tail estimate stops being
/// reachable under the default cap.
const RADIUS_MARGIN: f64 = 0.99;

/// Log-space weights ln w_n = n·ln x − ln ρ(n) of the (unnormalized)
/// squared coefficients, together with ln ρ and the achieved tail.
struct WeightAccumulation {
    ln_rho: Vec<f64>,
    ln_w: Vec<f64>,
    ln_max: f64,
    /// Σ exp(ln_w − ln_max)
    scaled_sum: f64,
    /// tail mass relative to the normalized distribution
    tail_mass: f64,
}

fn accumulate_weights(family: &FamilySpec, x: f64, trunc: &TruncationPolicy) -> Result<WeightAccumulation> {
    family.validate()?;
    let dimension = family.dimension();
    let finite_top = match dimension {
        Dimension::Finite(d) => Some(d - 1),
        Dimension::Infinite => None,
    };
    if finite_top.is_none() {
        let radius = family.convergence_radius().value;
        if radius.is_finite() && x.sqrt() > RADIUS_MARGIN * radius {
            return Err(Error::divergence(format!(
                "|z| = {} is at or beyond {RADIUS_MARGIN} of the convergence radius {radius} of {family}",
                x.sqrt()
            )));
        }
    }

    let ln_x = x.ln(); // -inf for x = 0 is fine below
    let top = finite_top.map_or(trunc.max_n, |t| t.min(trunc.max_n));
    let exact = finite_top.is_some_and(|t| t <= trunc.max_n);

    let mut ln_rho = Vec::with_capacity(top + 1);
    let mut ln_w = Vec::with_capacity(top + 1);
    let mut ln_max = f64::NEG_INFINITY;
    let mut scaled_sum = 0.0;
    let mut tail = 0.0;
    let mut satisfied = exact;

    for n in 0..=top {
        let lr = family.ln_weight(n)?;
        let lw = if n == 0 { -lr } else { n as f64 * ln_x - lr };
        ln_rho.push(lr);
        ln_w.push(lw);
        if lw > ln_max {
            // rescale the running sum to the new maximum
            scaled_sum *= (ln_max - lw).exp();
            ln_max = lw;
        }
        scaled_sum += (lw - ln_max).exp();

        if !exact && n >= 2 {
            let ratio_ln = lw - ln_w[n - 1];
            if ratio_ln < 0.0 {
                let r = ratio_ln.exp();
                let tail_est = (lw - ln_max).exp() * r / (1.0 - r);
                if tail_est < trunc.tolerance * scaled_sum {
                    tail = tail_est;
                    satisfied = true;
                    break;
                }
            }
        }
        // finite families keep their full (exact) dimension even at z = 0
        if x == 0.0 && !exact {
            tail = 0.0;
            satisfied = true;
            break;
        }
    }

    if !satisfied {
        // best-effort tail at the cap; a non-declining ratio means most of
        // the mass still lies beyond the cap
        let n = ln_w.len() - 1;
        let tail_mass = if n >= 1 && ln_w[n] < ln_w[n - 1] {
            let r = (ln_w[n] - ln_w[n - 1]).exp();
            let tail_est = (ln_w[n] - ln_max).exp() * r / (1.0 - r);
            tail_est / (scaled_sum + tail_est)
        } else {
            1.0
        };
        return Err(Error::Truncation { tail_mass, reached: n });
    }

    Ok(WeightAccumulation {
        ln_rho,
        ln_w,
        ln_max,
        scaled_sum,
        tail_mass: tail / (scaled_sum + tail),
    })
}

/// Build the normalized state with c_n ∝ zⁿ e^{−iα e_n}/√ρ(n).
///
/// The phase factors are omitted when `alpha` is absent. The truncation
/// level is chosen so the estimated tail mass stays below the policy
/// tolerance; finite-dimensional families are represented exactly.
pub fn build_state(
    family: &FamilySpec,
    z: Complex64,
    alpha: Option<f64>,
    trunc: &TruncationPolicy,
) -> Result<FockExpansion> {
    let acc = accumulate_weights(family, z.norm_sqr(), trunc)?;
    let theta = z.arg();
    let norm = acc.scaled_sum.sqrt();
    let mut coefficients = Vec::with_capacity(acc.ln_w.len());
    for (n, &lw) in acc.ln_w.iter().enumerate() {
        let modulus = (0.5 * (lw - acc.ln_max)).exp() / norm;
        let phase = match alpha {
            None => n as f64 * theta,
            Some(a) => {
                let e_n = if n == 0 {
                    0.0
                } else {
                    (acc.ln_rho[n] - acc.ln_rho[n - 1]).exp()
                };
                n as f64 * theta - a * e_n
            }
        };
        coefficients.push(Complex64::from_polar(modulus, phase));
    }
    Ok(FockExpansion::from_parts(
        coefficients,
        family.clone(),
        z,
        alpha,
        acc.tail_mass,
    ))
}

/// N(x) = Σ xⁿ/ρ(n) under the same truncation policy.
pub fn normalization_value(family: &FamilySpec, x: f64, trunc: &TruncationPolicy) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::domain("normalization argument x = |z|^2 must be >= 0"));
    }
    // the x-domain is the squared-label domain
    let radius = family.convergence_radius().value;
    if matches!(family.dimension(), Dimension::Infinite)
        && radius.is_finite()
        && x.sqrt() > RADIUS_MARGIN * radius
    {
        return Err(Error::divergence(format!(
            "x = {x} is at or beyond the squared convergence radius of {family}"
        )));
    }
    let acc = accumulate_weights(family, x, trunc)?;
    Ok((acc.ln_max + acc.scaled_sum.ln()).exp())
}

/// ⟨s1|s2⟩ = Σ conj(c1_n)·c2_n over the union truncation with zero-padding.
pub fn overlap(s1: &FockExpansion, s2: &FockExpansion) -> Complex64 {
    let len = s1.coefficients.len().min(s2.coefficients.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..len {
        acc += s1.coefficients[n].conj() * s2.coefficients[n];
    }
    acc
}

/// P(n) = |c_n|² plus mean, variance, and the Mandel Q parameter.
pub fn photon_statistics(state: &FockExpansion) -> PhotonStatistics {
    let distribution: Vec<f64> = state.coefficients.iter().map(|c| c.norm_sqr()).collect();
    let mean_n: f64 = distribution.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let second: f64 = distribution
        .iter()
        .enumerate()
        .map(|(n, p)| (n as f64) * (n as f64) * p)
        .sum();
    let variance_n = (second - mean_n * mean_n).max(0.0);
    let mandel_q = if mean_n > 0.0 { variance_n / mean_n - 1.0 } else { 0.0 };
    PhotonStatistics { distribution, mean_n, variance_n, mandel_q }
}

/// Parity of a cat superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Normalized |z,α⟩ ± |−z,α⟩. The even combination keeps only even n,
/// the odd combination only odd n.
pub fn cat_superposition(
    family: &FamilySpec,
    z: Complex64,
    alpha: Option<f64>,
    parity: Parity,
    trunc: &TruncationPolicy,
) -> Result<FockExpansion> {
    let base = build_state(family, z, alpha, trunc)?;
    let keep_even = parity == Parity::Even;
    let mut coefficients = base.coefficients.clone();
    for (n, c) in coefficients.iter_mut().enumerate() {
        if (n % 2 == 0) != keep_even {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    let norm: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Degenerate(format!(
            "{:?} cat superposition at z = {z} is the zero vector",
            parity
        )));
    }
    for c in &mut coefficients {
        *c /= norm;
    }
    Ok(FockExpansion::from_parts(
        coefficients,
        base.family,
        z,
        alpha,
        base.tail_mass,
    ))
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

/// Documented JSON shape of a state. The four trailing fields are present
/// only for states constructed from a Gazeau-Klauder label.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub family: String,
    pub z: [f64; 2],
    pub alpha: Option<f64>,
    pub coefficients: Vec<[f64; 2]>,
    pub tail_mass: f64,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

impl FockExpansion {
    pub fn to_json_value(&self) -> Result<StateJson> {
        if matches!(self.family, FamilySpec::KpsCustom { .. }) {
            return Err(Error::parse(
                "states over custom callback weights have no serializable family form",
            ));
        }
        Ok(StateJson {
            family: self.family.to_string(),
            z: [self.label_z.re, self.label_z.im],
            alpha: self.stabilization_alpha,
            coefficients: self.coefficients.iter().map(|c| [c.re, c.im]).collect(),
            tail_mass: self.tail_mass,
            j: None,
            theta: None,
            t: None,
            omega: None,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let value = self.to_json_value()?;
        serde_json::to_string_pretty(&value).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<FockExpansion> {
        let value: StateJson =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid state JSON: {e}")))?;
        let family = FamilySpec::parse(&value.family)?;
        let coefficients: Vec<Complex64> = value
            .coefficients
            .iter()
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        if coefficients.is_empty() {
            return Err(Error::parse("state JSON has no coefficients"));
        }
        Ok(FockExpansion::from_parts(
            coefficients,
            family,
            Complex64::new(value.z[0], value.z[1]),
            value.alpha,
            value.tail_mass,
        ))
    }
}
