//! State-level constructors tying the catalogue together: Gazeau-Klauder
//! states |J,γ⟩, their duals, temporal stabilization of arbitrary states,
//! and the time-evolved generalization |J,θ,t⟩ together with its dual.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{Dimension, FamilySpec, Spectrum};
use crate::fock::{build_state, FockExpansion, TruncationPolicy};

/// Action-angle label (J, θ) with evolution time t and frequency ω
/// (ħ = 1 units; ω defaults to 1 so that α = ωt).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GKLabel {
    pub j: f64,
    pub theta: f64,
    pub t: f64,
    pub omega: f64,
}

impl Default for GKLabel {
    fn default() -> Self {
        GKLabel { j: 0.0, theta: 0.0, t: 0.0, omega: 1.0 }
    }
}

impl GKLabel {
    pub fn new(j: f64) -> Self {
        GKLabel { j, ..Default::default() }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        GKLabel { theta, ..self }
    }

    pub fn with_time(self, t: f64) -> Self {
        GKLabel { t, ..self }
    }

    pub fn with_omega(self, omega: f64) -> Self {
        GKLabel { omega, ..self }
    }

    fn validate(&self, family: &FamilySpec) -> Result<()> {
        if self.j < 0.0 {
            return Err(Error::domain("GK label requires J >= 0"));
        }
        if self.omega <= 0.0 {
            return Err(Error::domain("GK label requires omega > 0"));
        }
        if matches!(family.dimension(), Dimension::Infinite) {
            let radius = family.convergence_radius().value;
            if radius.is_finite() && self.j >= radius * radius {
                return Err(Error::divergence(format!(
                    "J = {} is outside J < radius^2 = {} for {family}",
                    self.j,
                    radius * radius
                )));
            }
        }
        Ok(())
    }
}

/// Gazeau-Klauder state |J,γ⟩ with γ = ωt: coefficients ∝ J^{n/2} e^{−i e_n γ}/√ρ(n).
/// Equal to `build_state(family, √J, α=γ)`; θ must be zero.
pub fn gk_state(family: &FamilySpec, label: &GKLabel, trunc: &TruncationPolicy) -> Result<FockExpansion> {
    if label.theta != 0.0 {
        return Err(Error::domain(
            "gk_state requires theta = 0; use generalized_gk_state for theta != 0",
        ));
    }
    label.validate(family)?;
    let gamma = label.omega * label.t;
    build_state(family, Complex64::new(label.j.sqrt(), 0.0), Some(gamma), trunc)
}

/// Dual GK state: coefficients ∝ zⁿ e^{−iα ε_n}/√μ(n) with μ(n) = (n!)²/ρ(n)
/// and ε_n = n²/e_n. Identical to building on the dual family.
pub fn dual_gk_state(
    family: &FamilySpec,
    z: Complex64,
    alpha: f64,
    trunc: &TruncationPolicy,
) -> Result<FockExpansion> {
    build_state(&family.dual(), z, Some(alpha), trunc)
}

/// Multiply c_n by e^{−iα e_n}; the spectrum is the state's own family's,
/// so stabilizing a dual state uses ε_n automatically. Norm is preserved.
pub fn stabilize(state: &FockExpansion, alpha: f64) -> Result<FockExpansion> {
    let n_top = state.truncation_n();
    let spectrum = Spectrum::tabulate(state.family(), n_top)?;
    let coefficients: Vec<Complex64> = state
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -alpha * spectrum.values[n]))
        .collect();
    let total_alpha = state.stabilization_alpha().unwrap_or(0.0) + alpha;
    Ok(FockExpansion::from_parts(
        coefficients,
        state.family().clone(),
        state.label_z(),
        Some(total_alpha),
        state.tail_mass(),
    ))
}

/// Time-evolved state |J,θ,t⟩: coefficients ∝ J^{n/2} e^{inθ} e^{−iω e_n t}/√ρ(n).
/// At t = 0 it is the plain family state at z = √J e^{iθ}; at θ = 0 it is
/// the GK state with γ = ωt.
pub fn generalized_gk_state(
    family: &FamilySpec,
    label: &GKLabel,
    trunc: &TruncationPolicy,
) -> Result<FockExpansion> {
    label.validate(family)?;
    let z = Complex64::from_polar(label.j.sqrt(), label.theta);
    build_state(family, z, Some(label.omega * label.t), trunc)
}

/// Dual of the time-evolved state: same construction over μ(n) = [ε_n]!.
pub fn dual_generalized_gk_state(
    family: &FamilySpec,
    label: &GKLabel,
    trunc: &TruncationPolicy,
) -> Result<FockExpansion> {
    let dual = family.dual();
    label.validate(&dual)?;
    let z = Complex64::from_polar(label.j.sqrt(), label.theta);
    build_state(&dual, z, Some(label.omega * label.t), trunc)
}
