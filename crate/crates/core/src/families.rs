//! The family catalogue: every coherent-state family is reduced to its
//! weight sequence ρ(n) (normalized so ρ(0) = 1), from which the spectrum
//! e_n = ρ(n)/ρ(n−1), the nonlinearity f(n) = √(e_n/n), the convergence
//! radius and the dual family all follow.
//!
//! Weights are kept in log space throughout: ρ(n) spans hundreds of orders
//! of magnitude across the catalogue, and every Gamma ratio is formed as a
//! difference of `log_gamma` values exponentiated once.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::specfun;

/// Callback returning ln ρ(n) for a custom KPS family (library-only:
/// the CLI grammar intentionally excludes it). The returned sequence is
/// re-normalized so that ρ(0) = 1.
pub type LnWeightFn = Arc<dyn Fn(u32) -> f64 + Send + Sync>;

/// A coherent-state family and its parameters. Single source of truth for
/// ρ(n), f(n) and e_n.
#[derive(Clone)]
pub enum FamilySpec {
    /// ρ(n) = n!, the harmonic oscillator.
    Canonical,
    /// Custom weight via a ln ρ(n) callback.
    KpsCustom { name: String, ln_weight: LnWeightFn },
    /// ρ(n) = Γ(αn+β)/Γ(β), α, β > 0.
    MittagLeffler { alpha: f64, beta: f64 },
    /// ρ(n) = n!·(β₁)_n⋯(βq)_n / ((α₁)_n⋯(αₚ)_n), q−1 ≤ p ≤ q+1.
    Hypergeometric { alphas: Vec<f64>, betas: Vec<f64> },
    /// First-kind Tricomi weights, ρ(n) = n!·d_p(n)/d_p(0).
    TricomiFirst { p: f64 },
    /// Second-kind Tricomi weights, ρ(n) = n!·βⁿ U(n+1, n+2−λ, β)/U(1, 2−λ, β).
    TricomiSecond { lambda: f64, beta: f64 },
    /// ρ(n) = n!·q^{−n(n−1)}, 0 < q ≤ 1.
    PensonSolomon { q: f64 },
    /// ρ(n) = n!·(2κ)_n, κ ∈ {1, 3/2, 2, …}.
    BarutGirardello { kappa: f64 },
    /// ρ(n) = n!/(2κ)_n; defined on the unit disk.
    GilmorePerelomov { kappa: f64 },
    /// Landau levels re-indexed by k = n − m: ρ(k) = k!·(α+m+1)_k.
    LandauLevel { m: u32, alpha: f64 },
    /// ρ(n) = [e_n]! from a user-supplied spectrum table (e_0 = 0).
    GazeauKlauderFromSpectrum { spectrum: Arc<Vec<f64>> },
    /// ρ(n) = n!·Γ(n+ν+1)/Γ(ν+1), ν > 2; e_n = n(n+ν).
    PoschlTeller { nu: f64 },
    /// ρ(n) = n!(n+2)!/2; e_n = n(n+2).
    InfiniteWell,
    /// ρ(n) = (n+2)/(2(n+1)); e_n = 1 − 1/(n+1)².
    HydrogenLike,
    /// Finite-dimensional Morse weights, n = 0..M.
    Morse { m: u32 },
    /// μ(n) = (n!)²/ρ(n) of the inner family.
    DualOf(Box<FamilySpec>),
}

/// Hilbert-space dimension of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    /// Does the family define index n?
    pub fn contains(&self, n: usize) -> bool {
        match self {
            Dimension::Finite(d) => n < *d,
            Dimension::Infinite => true,
        }
    }

    pub fn min_with(&self, cap: usize) -> usize {
        match self {
            Dimension::Finite(d) => (*d).min(cap),
            Dimension::Infinite => cap,
        }
    }
}

/// Convergence radius of the state label. The value is lim e_n; for every
/// registered family (and its duals) this limit is 1 or ∞, where it equals
/// the |z|-domain bound. For exotic custom duals with lim e_n strictly
/// between 0 and 1 the quoted value is a conservative bound on |z|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    pub closed_form: bool,
    pub oscillating: bool,
}

impl RadiusEstimate {
    fn exact(value: f64) -> Self {
        RadiusEstimate { value, closed_form: true, oscillating: false }
    }
}

/// ρ(n) table in log space, normalized so that ρ(0) = 1 exactly.
#[derive(Debug, Clone)]
pub struct WeightSequence {
    ln_values: Vec<f64>,
    pub normalized_at_zero: bool,
}

impl WeightSequence {
    /// Tabulate ρ(0..=n_max).
    pub fn tabulate(family: &FamilySpec, n_max: usize) -> Result<WeightSequence> {
        let mut ln_values = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            ln_values.push(family.ln_weight(n)?);
        }
        Ok(WeightSequence { ln_values, normalized_at_zero: true })
    }

    pub fn len(&self) -> usize {
        self.ln_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_values.is_empty()
    }

    pub fn ln_value(&self, n: usize) -> f64 {
        self.ln_values[n]
    }

    pub fn value(&self, n: usize) -> f64 {
        self.ln_values[n].exp()
    }

    /// e_n = ρ(n)/ρ(n−1) from the table.
    pub fn spectrum_value(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            (self.ln_values[n] - self.ln_values[n - 1]).exp()
        }
    }
}

/// Spectrum table e_0..e_max with its monotonicity diagnostic.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Largest n such that e_0 < e_1 < … < e_n strictly.
    pub monotone_up_to: usize,
}

impl Spectrum {
    pub fn tabulate(family: &FamilySpec, n_max: usize) -> Result<Spectrum> {
        let weights = WeightSequence::tabulate(family, n_max)?;
        Ok(Spectrum::from_weights(&weights))
    }

    pub fn from_weights(weights: &WeightSequence) -> Spectrum {
        let values: Vec<f64> = (0..weights.len()).map(|n| weights.spectrum_value(n)).collect();
        Spectrum::from_values(values)
    }

    pub fn from_values(values: Vec<f64>) -> Spectrum {
        let mut monotone_up_to = 0;
        for n in 1..values.len() {
            if values[n] > values[n - 1] {
                monotone_up_to = n;
            } else {
                break;
            }
        }
        Spectrum { values, monotone_up_to }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.monotone_up_to + 1 == self.values.len() || self.values.len() <= 1
    }
}

/// |f(n)| table for n = 1..=n_max, with the optional phase rates
/// e_n − e_{n−1} used by α-stabilized operators.
#[derive(Debug, Clone)]
pub struct NonlinearityFn {
    /// modulus[k] = f(k+1).
    pub modulus: Vec<f64>,
    /// phase_rate[k] = e_{k+1} − e_k.
    pub phase_rate: Option<Vec<f64>>,
}

impl NonlinearityFn {
    pub fn tabulate(family: &FamilySpec, n_max: usize, with_phases: bool) -> Result<NonlinearityFn> {
        let spectrum = Spectrum::tabulate(family, n_max)?;
        let modulus = (1..=n_max)
            .map(|n| (spectrum.values[n] / n as f64).sqrt())
            .collect();
        let phase_rate = with_phases.then(|| {
            (1..=n_max)
                .map(|n| spectrum.values[n] - spectrum.values[n - 1])
                .collect()
        });
        Ok(NonlinearityFn { modulus, phase_rate })
    }

    /// f(n) for n ≥ 1.
    pub fn value(&self, n: usize) -> f64 {
        self.modulus[n - 1]
    }
}

impl FamilySpec {
    /// Wrap in the duality transform, collapsing the involution.
    pub fn dual(&self) -> FamilySpec {
        match self {
            FamilySpec::DualOf(inner) => (**inner).clone(),
            FamilySpec::Canonical => FamilySpec::Canonical,
            other => FamilySpec::DualOf(Box::new(other.clone())),
        }
    }

    /// Parameter-domain validation.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Canonical
            | FamilySpec::InfiniteWell
            | FamilySpec::HydrogenLike
            | FamilySpec::KpsCustom { .. } => Ok(()),
            FamilySpec::MittagLeffler { alpha, beta } => {
                if *alpha > 0.0 && *beta > 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain("mittag_leffler requires alpha > 0 and beta > 0"))
                }
            }
            FamilySpec::Hypergeometric { alphas, betas } => {
                let p = alphas.len();
                let q = betas.len();
                if p + 1 < q || p > q + 1 {
                    return Err(Error::domain(format!(
                        "hypergeometric requires q-1 <= p <= q+1, got p = {p}, q = {q}"
                    )));
                }
                if alphas.iter().chain(betas.iter()).any(|v| *v <= 0.0) {
                    return Err(Error::domain("hypergeometric parameters must be positive"));
                }
                Ok(())
            }
            FamilySpec::TricomiFirst { p } => {
                if *p > 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain("tricomi_first requires p > 0"))
                }
            }
            FamilySpec::TricomiSecond { lambda, beta } => {
                if !beta.is_finite() || *beta <= 0.0 {
                    Err(Error::domain("tricomi_second requires beta > 0"))
                } else if !lambda.is_finite() {
                    Err(Error::domain("tricomi_second lambda must be finite"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::PensonSolomon { q } => {
                if *q > 0.0 && *q <= 1.0 {
                    Ok(())
                } else {
                    Err(Error::domain("penson_solomon requires q in (0, 1]"))
                }
            }
            FamilySpec::BarutGirardello { kappa } | FamilySpec::GilmorePerelomov { kappa } => {
                let two_kappa = 2.0 * *kappa;
                if *kappa >= 1.0 && (two_kappa - two_kappa.round()).abs() < 1e-12 {
                    Ok(())
                } else {
                    Err(Error::domain("kappa must be >= 1 in half-integer steps"))
                }
            }
            FamilySpec::LandauLevel { alpha, .. } => {
                if *alpha > -1.0 {
                    Ok(())
                } else {
                    Err(Error::domain("landau_level requires alpha > -1"))
                }
            }
            FamilySpec::GazeauKlauderFromSpectrum { spectrum } => {
                if spectrum.is_empty() || spectrum[0] != 0.0 {
                    return Err(Error::domain("spectrum table must start with e_0 = 0"));
                }
                if spectrum.iter().skip(1).any(|e| !(*e > 0.0) || !e.is_finite()) {
                    return Err(Error::domain("spectrum values for n >= 1 must be finite and positive"));
                }
                Ok(())
            }
            FamilySpec::PoschlTeller { nu } => {
                if *nu > 2.0 {
                    Ok(())
                } else {
                    Err(Error::domain("poschl_teller requires nu > 2"))
                }
            }
            FamilySpec::Morse { m } => {
                if *m >= 1 {
                    Ok(())
                } else {
                    Err(Error::domain("morse requires M >= 1"))
                }
            }
            FamilySpec::DualOf(inner) => inner.validate(),
        }
    }

    /// Hilbert-space dimension: M+1 for Morse, the table length for
    /// spectrum-defined families, ∞ otherwise. Duality preserves dimension.
    pub fn dimension(&self) -> Dimension {
        match self {
            FamilySpec::Morse { m } => Dimension::Finite(*m as usize + 1),
            FamilySpec::GazeauKlauderFromSpectrum { spectrum } => Dimension::Finite(spectrum.len()),
            FamilySpec::DualOf(inner) => inner.dimension(),
            _ => Dimension::Infinite,
        }
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if self.dimension().contains(n) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "index n = {n} is beyond the dimension of {self}"
            )))
        }
    }

    /// ln ρ(n), normalized so that ln ρ(0) = 0 exactly: the raw catalogue
    /// expression is divided by its n = 0 value (this is what makes e.g.
    /// the raw Barut-Girardello n!Γ(n+2κ) conform to the ρ(0) = 1
    /// convention that e_n = ρ(n)/ρ(n−1) and duality rely on).
    pub fn ln_weight(&self, n: usize) -> Result<f64> {
        self.validate()?;
        self.check_index(n)?;
        if n == 0 {
            return Ok(0.0);
        }
        Ok(self.ln_weight_raw(n)? - self.ln_weight_raw(0)?)
    }

    // TODO: memoize ln_weight_raw(0) for the Tricomi families; tabulating a
    // long weight table currently pays two U-quadratures per index.
    fn ln_weight_raw(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let n32 = u32::try_from(n).map_err(|_| Error::domain("index exceeds u32"))?;
        match self {
            FamilySpec::Canonical => specfun::log_gamma(nf + 1.0),
            FamilySpec::KpsCustom { ln_weight, .. } => Ok(ln_weight(n32)),
            FamilySpec::MittagLeffler { alpha, beta } => {
                Ok(specfun::log_gamma(alpha * nf + beta)? - specfun::log_gamma(*beta)?)
            }
            FamilySpec::Hypergeometric { alphas, betas } => {
                let mut ln = specfun::log_gamma(nf + 1.0)?;
                for &b in betas {
                    ln += specfun::ln_pochhammer(b, n32)?.0;
                }
                for &a in alphas {
                    ln -= specfun::ln_pochhammer(a, n32)?.0;
                }
                Ok(ln)
            }
            FamilySpec::TricomiFirst { p } => {
                let z = 1.0 / (4.0 * p);
                let ln_d = -0.5 * nf * p.ln() - nf * std::f64::consts::LN_2
                    + specfun::ln_tricomi_u(0.5 * (nf + 1.0), 0.5, z)?;
                let ln_d0 = specfun::ln_tricomi_u(0.5, 0.5, z)?;
                Ok(specfun::log_gamma(nf + 1.0)? + ln_d - ln_d0)
            }
            FamilySpec::TricomiSecond { lambda, beta } => {
                let ln_d = nf * beta.ln()
                    + specfun::ln_tricomi_u(nf + 1.0, nf + 2.0 - lambda, *beta)?;
                let ln_d0 = specfun::ln_tricomi_u(1.0, 2.0 - lambda, *beta)?;
                Ok(specfun::log_gamma(nf + 1.0)? + ln_d - ln_d0)
            }
            FamilySpec::PensonSolomon { q } => {
                Ok(specfun::log_gamma(nf + 1.0)? - nf * (nf - 1.0) * q.ln())
            }
            FamilySpec::BarutGirardello { kappa } => {
                Ok(specfun::log_gamma(nf + 1.0)? + specfun::ln_pochhammer(2.0 * kappa, n32)?.0)
            }
            FamilySpec::GilmorePerelomov { kappa } => {
                Ok(specfun::log_gamma(nf + 1.0)? - specfun::ln_pochhammer(2.0 * kappa, n32)?.0)
            }
            FamilySpec::LandauLevel { m, alpha } => {
                Ok(specfun::log_gamma(nf + 1.0)?
                    + specfun::ln_pochhammer(alpha + *m as f64 + 1.0, n32)?.0)
            }
            FamilySpec::GazeauKlauderFromSpectrum { spectrum } => {
                let mut ln = 0.0;
                for e in spectrum.iter().take(n + 1).skip(1) {
                    ln += e.ln();
                }
                Ok(ln)
            }
            FamilySpec::PoschlTeller { nu } => Ok(specfun::log_gamma(nf + 1.0)?
                + specfun::log_gamma(nf + nu + 1.0)?
                - specfun::log_gamma(nu + 1.0)?),
            FamilySpec::InfiniteWell => Ok(specfun::log_gamma(nf + 1.0)?
                + specfun::log_gamma(nf + 3.0)?
                - std::f64::consts::LN_2),
            FamilySpec::HydrogenLike => Ok((nf + 2.0).ln() - (nf + 1.0).ln() - std::f64::consts::LN_2),
            FamilySpec::Morse { m } => {
                let mf = *m as f64;
                Ok(specfun::log_gamma(nf + 1.0)? + specfun::log_gamma(mf + 1.0)?
                    - nf * (mf + 2.0).ln()
                    - specfun::log_gamma(mf + 1.0 - nf)?)
            }
            FamilySpec::DualOf(inner) => {
                Ok(2.0 * specfun::log_gamma(nf + 1.0)? - inner.ln_weight(n)?)
            }
        }
    }

    /// ρ(n), normalized so that ρ(0) = 1.
    pub fn weight(&self, n: usize) -> Result<f64> {
        Ok(self.ln_weight(n)?.exp())
    }

    /// e_n = ρ(n)/ρ(n−1) for n ≥ 1, e_0 = 0.
    pub fn spectrum_value(&self, n: usize) -> Result<f64> {
        if n == 0 {
            self.validate()?;
            self.check_index(0)?;
            return Ok(0.0);
        }
        Ok((self.ln_weight(n)? - self.ln_weight(n - 1)?).exp())
    }

    /// f(n) = √(ρ(n)/(n·ρ(n−1))) = √(e_n/n), n ≥ 1.
    pub fn nonlinearity_value(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("nonlinearity f(n) is defined for n >= 1"));
        }
        Ok((self.spectrum_value(n)? / n as f64).sqrt())
    }

    /// lim e_n: the label-domain bound. Closed forms for the whole
    /// catalogue; a Richardson-style tail probe only for custom weights.
    pub fn convergence_radius(&self) -> RadiusEstimate {
        match self {
            FamilySpec::Canonical
            | FamilySpec::MittagLeffler { .. }
            | FamilySpec::TricomiFirst { .. }
            | FamilySpec::TricomiSecond { .. }
            | FamilySpec::PensonSolomon { .. }
            | FamilySpec::BarutGirardello { .. }
            | FamilySpec::LandauLevel { .. }
            | FamilySpec::PoschlTeller { .. }
            | FamilySpec::InfiniteWell => RadiusEstimate::exact(f64::INFINITY),
            FamilySpec::GilmorePerelomov { .. } | FamilySpec::HydrogenLike => RadiusEstimate::exact(1.0),
            // finite-dimensional states converge for every label
            FamilySpec::Morse { .. } | FamilySpec::GazeauKlauderFromSpectrum { .. } => {
                RadiusEstimate::exact(f64::INFINITY)
            }
            FamilySpec::Hypergeometric { alphas, betas } => {
                if alphas.len() == betas.len() + 1 {
                    RadiusEstimate::exact(1.0)
                } else {
                    RadiusEstimate::exact(f64::INFINITY)
                }
            }
            FamilySpec::KpsCustom { .. } => self.probe_radius(),
            FamilySpec::DualOf(inner) => match &**inner {
                // ε_n = n²/e_n limits for the registered catalogue
                FamilySpec::Canonical => RadiusEstimate::exact(f64::INFINITY),
                FamilySpec::PoschlTeller { .. }
                | FamilySpec::InfiniteWell
                | FamilySpec::BarutGirardello { .. }
                | FamilySpec::LandauLevel { .. } => RadiusEstimate::exact(1.0),
                FamilySpec::GilmorePerelomov { .. }
                | FamilySpec::HydrogenLike
                | FamilySpec::TricomiFirst { .. }
                | FamilySpec::TricomiSecond { .. } => RadiusEstimate::exact(f64::INFINITY),
                FamilySpec::MittagLeffler { alpha, .. } => {
                    if *alpha < 2.0 {
                        RadiusEstimate::exact(f64::INFINITY)
                    } else if *alpha == 2.0 {
                        RadiusEstimate::exact(0.25)
                    } else {
                        RadiusEstimate::exact(0.0)
                    }
                }
                FamilySpec::PensonSolomon { q } => {
                    if *q < 1.0 {
                        RadiusEstimate::exact(0.0)
                    } else {
                        RadiusEstimate::exact(f64::INFINITY)
                    }
                }
                FamilySpec::Hypergeometric { alphas, betas } => {
                    if betas.len() == alphas.len() + 1 {
                        RadiusEstimate::exact(1.0)
                    } else {
                        RadiusEstimate::exact(f64::INFINITY)
                    }
                }
                FamilySpec::Morse { .. } | FamilySpec::GazeauKlauderFromSpectrum { .. } => {
                    RadiusEstimate::exact(f64::INFINITY)
                }
                FamilySpec::KpsCustom { .. } | FamilySpec::DualOf(_) => self.probe_radius(),
            },
        }
    }

    /// Tail probe for custom weights: sample e_n on a geometric grid up to
    /// n = 10⁴ and extrapolate the ratio-limit.
    fn probe_radius(&self) -> RadiusEstimate {
        let cap = match self.dimension() {
            Dimension::Finite(_) => return RadiusEstimate::exact(f64::INFINITY),
            Dimension::Infinite => 10_000usize,
        };
        let grid = [cap / 16, cap / 8, cap / 4, cap / 2, cap];
        let mut samples = Vec::new();
        for &n in &grid {
            match self.spectrum_value(n.max(1)) {
                Ok(e) => samples.push(e),
                Err(_) => return RadiusEstimate { value: f64::NAN, closed_form: false, oscillating: true },
            }
        }
        let last = samples[samples.len() - 1];
        let prev = samples[samples.len() - 2];
        if last > prev && last > 1e6 {
            return RadiusEstimate { value: f64::INFINITY, closed_form: false, oscillating: false };
        }
        let monotone = samples.windows(2).all(|w| w[1] >= w[0]) || samples.windows(2).all(|w| w[1] <= w[0]);
        if (last - prev).abs() <= 1e-3 * last.abs().max(1e-12) {
            // Richardson-style: assume geometric approach to the limit
            let extrap = last + (last - prev);
            RadiusEstimate { value: extrap.max(0.0), closed_form: false, oscillating: !monotone }
        } else if monotone && last > prev {
            RadiusEstimate { value: f64::INFINITY, closed_form: false, oscillating: false }
        } else {
            RadiusEstimate { value: last, closed_form: false, oscillating: !monotone }
        }
    }

    /// The per-family nonlinearity expressions printed in the literature,
    /// retained as cross-check oracles. Returns None for families whose f
    /// was never quoted separately. The HG, first-kind Tricomi and
    /// Landau-level expressions are known transcription slips; see
    /// `crate::verify::verify_published_f`.
    pub fn published_nonlinearity(&self, n: usize) -> Option<Result<f64>> {
        if n == 0 {
            return None;
        }
        let nf = n as f64;
        match self {
            FamilySpec::BarutGirardello { kappa } => Some(Ok((nf + 2.0 * kappa - 1.0).sqrt())),
            FamilySpec::GilmorePerelomov { kappa } => Some(Ok(1.0 / (nf + 2.0 * kappa - 1.0).sqrt())),
            FamilySpec::PensonSolomon { q } => Some(Ok(q.powf(1.0 - nf))),
            FamilySpec::Hypergeometric { alphas, betas } => {
                let mut f2 = nf - 1.0;
                for &b in betas {
                    f2 *= b + nf - 1.0;
                }
                for &a in alphas {
                    f2 /= a + nf - 1.0;
                }
                Some(Ok(f2.max(0.0).sqrt()))
            }
            FamilySpec::TricomiFirst { p } => {
                let z = 1.0 / (4.0 * p);
                let ratio = specfun::ln_tricomi_u(0.5 * (nf + 1.0), 0.5, z)
                    .and_then(|num| Ok(num - specfun::ln_tricomi_u(0.5 * nf, 0.5, z)?));
                Some(ratio.map(|r| (2.0 / p.sqrt() * r.exp()).sqrt()))
            }
            FamilySpec::TricomiSecond { lambda, beta } => {
                let ratio = specfun::ln_tricomi_u(nf + 1.0, nf + 2.0 - lambda, *beta)
                    .and_then(|num| Ok(num - specfun::ln_tricomi_u(nf, nf + 1.0 - lambda, *beta)?));
                Some(ratio.map(|r| (beta * r.exp()).sqrt()))
            }
            FamilySpec::LandauLevel { m, alpha } => {
                // quoted in the original (un-shifted) index n' = n + m
                let np = nf + *m as f64;
                Some(Ok((np - *m as f64 + 1.0) * (np + alpha + 1.0) / (np + 1.0).sqrt()))
            }
            _ => None,
        }
    }

    /// Is the published expression for this family a known transcription
    /// slip (generic ρ-derivation authoritative)?
    pub fn published_f_is_discrepant(&self) -> bool {
        matches!(
            self,
            FamilySpec::Hypergeometric { .. }
                | FamilySpec::TricomiFirst { .. }
                | FamilySpec::LandauLevel { .. }
        )
    }

    /// Parse the canonical text form `name(param=value,...)`.
    ///
    /// Names: `canonical`, `ml(alpha=,beta=)`, `hg(alphas=a:b,betas=c)`,
    /// `tc1(p=)`, `tc2(lambda=,beta=)`, `ps(q=)`, `bg(kappa=)`,
    /// `gp(kappa=)`, `ll(m=,alpha=)`, `gk(en=0:e1:e2:...)`,
    /// `poschl_teller(nu=)`, `infinite_well`, `hydrogen`, `morse(m=)`,
    /// `dual(<family>)`. Long aliases (`mittag_leffler`, …) are accepted.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let text = text.trim();
        let (name, args) = split_call(text)?;
        let family = match name {
            "canonical" | "ccs" => {
                expect_no_args(name, &args)?;
                FamilySpec::Canonical
            }
            "ml" | "mittag_leffler" => FamilySpec::MittagLeffler {
                alpha: get_param(&args, "alpha")?,
                beta: get_param(&args, "beta")?,
            },
            "hg" | "hypergeometric" => FamilySpec::Hypergeometric {
                alphas: get_list(&args, "alphas")?,
                betas: get_list(&args, "betas")?,
            },
            "tc1" | "tricomi_first" => FamilySpec::TricomiFirst { p: get_param(&args, "p")? },
            "tc2" | "tricomi_second" => FamilySpec::TricomiSecond {
                lambda: get_param(&args, "lambda")?,
                beta: get_param(&args, "beta")?,
            },
            "ps" | "penson_solomon" => FamilySpec::PensonSolomon { q: get_param(&args, "q")? },
            "bg" | "barut_girardello" => FamilySpec::BarutGirardello { kappa: get_param(&args, "kappa")? },
            "gp" | "gilmore_perelomov" => FamilySpec::GilmorePerelomov { kappa: get_param(&args, "kappa")? },
            "ll" | "landau_level" => {
                let m = get_param(&args, "m")?;
                if m < 0.0 || m.fract() != 0.0 {
                    return Err(Error::parse("landau_level m must be a non-negative integer"));
                }
                FamilySpec::LandauLevel { m: m as u32, alpha: get_param(&args, "alpha")? }
            }
            "gk" | "gk_spectrum" => FamilySpec::GazeauKlauderFromSpectrum {
                spectrum: Arc::new(get_list(&args, "en")?),
            },
            "pt" | "poschl_teller" => FamilySpec::PoschlTeller { nu: get_param(&args, "nu")? },
            "iw" | "infinite_well" => {
                expect_no_args(name, &args)?;
                FamilySpec::InfiniteWell
            }
            "hydrogen" | "hydrogen_like" => {
                expect_no_args(name, &args)?;
                FamilySpec::HydrogenLike
            }
            "morse" => {
                let m = get_param(&args, "m")?;
                if m < 1.0 || m.fract() != 0.0 {
                    return Err(Error::parse("morse M must be a positive integer"));
                }
                FamilySpec::Morse { m: m as u32 }
            }
            "dual" => {
                let inner = args
                    .raw
                    .as_deref()
                    .ok_or_else(|| Error::parse("dual(...) requires an inner family"))?;
                FamilySpec::parse(inner)?.dual()
            }
            other => {
                return Err(Error::parse(format!("unknown family `{other}`")));
            }
        };
        family.validate().map_err(|e| Error::parse(e.to_string()))?;
        Ok(family)
    }
}

impl fmt::Display for FamilySpec {
    /// The canonical text form; round-trips through `parse` for every
    /// family except `KpsCustom`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Canonical => write!(f, "canonical"),
            FamilySpec::KpsCustom { name, .. } => write!(f, "kps_custom:{name}"),
            FamilySpec::MittagLeffler { alpha, beta } => write!(f, "ml(alpha={alpha},beta={beta})"),
            FamilySpec::Hypergeometric { alphas, betas } => {
                write!(f, "hg(alphas={},betas={})", join_list(alphas), join_list(betas))
            }
            FamilySpec::TricomiFirst { p } => write!(f, "tc1(p={p})"),
            FamilySpec::TricomiSecond { lambda, beta } => write!(f, "tc2(lambda={lambda},beta={beta})"),
            FamilySpec::PensonSolomon { q } => write!(f, "ps(q={q})"),
            FamilySpec::BarutGirardello { kappa } => write!(f, "bg(kappa={kappa})"),
            FamilySpec::GilmorePerelomov { kappa } => write!(f, "gp(kappa={kappa})"),
            FamilySpec::LandauLevel { m, alpha } => write!(f, "ll(m={m},alpha={alpha})"),
            FamilySpec::GazeauKlauderFromSpectrum { spectrum } => {
                write!(f, "gk(en={})", join_list(spectrum))
            }
            FamilySpec::PoschlTeller { nu } => write!(f, "poschl_teller(nu={nu})"),
            FamilySpec::InfiniteWell => write!(f, "infinite_well"),
            FamilySpec::HydrogenLike => write!(f, "hydrogen"),
            FamilySpec::Morse { m } => write!(f, "morse(m={m})"),
            FamilySpec::DualOf(inner) => write!(f, "dual({inner})"),
        }
    }
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilySpec({self})")
    }
}

fn join_list(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(":")
}

struct CallArgs {
    pairs: Vec<(String, String)>,
    /// raw inner text, for `dual(...)`
    raw: Option<String>,
}

fn split_call(text: &str) -> Result<(&str, CallArgs)> {
    if text.is_empty() {
        return Err(Error::parse("empty family specification"));
    }
    match text.find('(') {
        None => Ok((text, CallArgs { pairs: Vec::new(), raw: None })),
        Some(open) => {
            if !text.ends_with(')') {
                return Err(Error::parse(format!("unbalanced parentheses in `{text}`")));
            }
            let name = &text[..open];
            let inner = &text[open + 1..text.len() - 1];
            if name == "dual" {
                return Ok((name, CallArgs { pairs: Vec::new(), raw: Some(inner.to_string()) }));
            }
            let mut pairs = Vec::new();
            for part in inner.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::parse(format!("expected key=value, got `{part}`")))?;
                pairs.push((k.trim().to_string(), v.trim().to_string()));
            }
            Ok((name, CallArgs { pairs, raw: None }))
        }
    }
}

fn expect_no_args(name: &str, args: &CallArgs) -> Result<()> {
    if args.pairs.is_empty() {
        Ok(())
    } else {
        Err(Error::parse(format!("family `{name}` takes no parameters")))
    }
}

fn lookup<'a>(args: &'a CallArgs, key: &str) -> Result<&'a str> {
    args.pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::parse(format!("missing parameter `{key}`")))
}

fn get_param(args: &CallArgs, key: &str) -> Result<f64> {
    lookup(args, key)?
        .parse::<f64>()
        .map_err(|_| Error::parse(format!("parameter `{key}` is not a number")))
}

fn get_list(args: &CallArgs, key: &str) -> Result<Vec<f64>> {
    lookup(args, key)?
        .split(':')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(format!("list parameter `{key}` has a non-numeric entry")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    fn catalogue() -> Vec<FamilySpec> {
        vec![
            FamilySpec::Canonical,
            FamilySpec::MittagLeffler { alpha: 2.0, beta: 1.0 },
            FamilySpec::Hypergeometric { alphas: vec![2.0], betas: vec![3.0] },
            FamilySpec::TricomiFirst { p: 1.0 },
            FamilySpec::TricomiSecond { lambda: 0.5, beta: 1.0 },
            FamilySpec::PensonSolomon { q: 0.8 },
            FamilySpec::BarutGirardello { kappa: 1.0 },
            FamilySpec::GilmorePerelomov { kappa: 1.0 },
            FamilySpec::LandauLevel { m: 1, alpha: 0.5 },
            FamilySpec::PoschlTeller { nu: 3.0 },
            FamilySpec::InfiniteWell,
            FamilySpec::HydrogenLike,
            FamilySpec::Morse { m: 3 },
        ]
    }

    #[test]
    fn weight_examples() {
        assert!(rel_close(FamilySpec::Canonical.weight(3).unwrap(), 6.0, 1e-13));
        assert!(rel_close(FamilySpec::PoschlTeller { nu: 3.0 }.weight(1).unwrap(), 4.0, 1e-12));
        assert!(rel_close(FamilySpec::HydrogenLike.weight(1).unwrap(), 0.75, 1e-13));
        assert!(rel_close(FamilySpec::InfiniteWell.weight(1).unwrap(), 3.0, 1e-13));
    }

    #[test]
    fn weight_normalized_at_zero() {
        for family in catalogue() {
            assert_eq!(family.weight(0).unwrap(), 1.0, "{family}");
            assert_eq!(family.dual().weight(0).unwrap(), 1.0, "dual of {family}");
        }
    }

    #[test]
    fn spectrum_examples() {
        assert!(rel_close(FamilySpec::Canonical.spectrum_value(7).unwrap(), 7.0, 1e-12));
        assert!(rel_close(FamilySpec::PoschlTeller { nu: 3.0 }.spectrum_value(1).unwrap(), 4.0, 1e-12));
        assert!(rel_close(FamilySpec::HydrogenLike.spectrum_value(1).unwrap(), 0.75, 1e-12));
        assert!(rel_close(FamilySpec::Morse { m: 3 }.spectrum_value(2).unwrap(), 0.8, 1e-12));
        assert_eq!(FamilySpec::InfiniteWell.spectrum_value(0).unwrap(), 0.0);
    }

    #[test]
    fn spectrum_closed_forms() {
        // e_n closed forms from the catalogue, n <= 40
        for n in 1..=40usize {
            let nf = n as f64;
            assert!(rel_close(
                FamilySpec::PoschlTeller { nu: 3.0 }.spectrum_value(n).unwrap(),
                nf * (nf + 3.0),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::InfiniteWell.spectrum_value(n).unwrap(),
                nf * (nf + 2.0),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::HydrogenLike.spectrum_value(n).unwrap(),
                1.0 - 1.0 / ((nf + 1.0) * (nf + 1.0)),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::BarutGirardello { kappa: 1.5 }.spectrum_value(n).unwrap(),
                nf * (nf + 2.0),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::GilmorePerelomov { kappa: 1.0 }.spectrum_value(n).unwrap(),
                nf / (nf + 1.0),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::PensonSolomon { q: 0.8 }.spectrum_value(n).unwrap(),
                nf * 0.8f64.powf(2.0 * (1.0 - nf)),
                1e-10
            ));
            assert!(rel_close(
                FamilySpec::LandauLevel { m: 1, alpha: 0.5 }.spectrum_value(n).unwrap(),
                nf * (nf + 1.5),
                1e-10
            ));
        }
    }

    #[test]
    fn nonlinearity_examples() {
        assert!(rel_close(FamilySpec::Canonical.nonlinearity_value(5).unwrap(), 1.0, 1e-12));
        assert!(rel_close(
            FamilySpec::BarutGirardello { kappa: 1.0 }.nonlinearity_value(1).unwrap(),
            std::f64::consts::SQRT_2,
            1e-12
        ));
        // published oracle f = q^{1-n} at q = 0.5, n = 3 gives 4
        assert!(rel_close(
            FamilySpec::PensonSolomon { q: 0.5 }.nonlinearity_value(3).unwrap(),
            4.0,
            1e-12
        ));
    }

    #[test]
    fn spectrum_equals_n_f_squared() {
        for family in catalogue() {
            let n_max = family.dimension().min_with(51) - 1;
            for n in 1..=n_max {
                let e = family.spectrum_value(n).unwrap();
                let f = family.nonlinearity_value(n).unwrap();
                assert!(
                    rel_close(e, n as f64 * f * f, 1e-10),
                    "{family} at n = {n}: {e} vs {}",
                    n as f64 * f * f
                );
            }
        }
    }

    #[test]
    fn tricomi_family_spectra_frozen() {
        // frozen from a high-precision evaluation of the d-ratios
        assert!(rel_close(
            FamilySpec::TricomiFirst { p: 1.0 }.spectrum_value(1).unwrap(),
            0.4163528206493492,
            1e-8
        ));
        assert!(rel_close(
            FamilySpec::TricomiSecond { lambda: 0.5, beta: 1.0 }.spectrum_value(1).unwrap(),
            0.8194837571173956,
            1e-8
        ));
    }

    #[test]
    fn dual_examples() {
        // canonical is self-dual
        let dual = FamilySpec::Canonical.dual();
        assert!(matches!(dual, FamilySpec::Canonical));
        // dual(BG κ=1) weights match GP κ=1: μ(2) = 1/3
        let bg_dual = FamilySpec::BarutGirardello { kappa: 1.0 }.dual();
        assert!(rel_close(bg_dual.weight(2).unwrap(), 1.0 / 3.0, 1e-12));
        assert!(rel_close(
            FamilySpec::GilmorePerelomov { kappa: 1.0 }.weight(2).unwrap(),
            1.0 / 3.0,
            1e-12
        ));
        // dual(PT ν=3): μ(1) = 1/4
        let pt_dual = FamilySpec::PoschlTeller { nu: 3.0 }.dual();
        assert!(rel_close(pt_dual.weight(1).unwrap(), 0.25, 1e-12));
    }

    #[test]
    fn dual_involution_and_product() {
        for family in catalogue() {
            let dual = family.dual();
            let dd = dual.dual();
            let n_max = family.dimension().min_with(51) - 1;
            for n in 0..=n_max {
                let rho = family.weight(n).unwrap();
                let back = dd.weight(n).unwrap();
                assert!(rel_close(back, rho, 1e-12), "{family} n={n}");
                // μ(n)·ρ(n)/(n!)² = 1, compared in log space
                let ln_mu = dual.ln_weight(n).unwrap();
                let ln_rho = family.ln_weight(n).unwrap();
                let ln_sq_fact = 2.0 * specfun::log_gamma(n as f64 + 1.0).unwrap();
                let ratio = (ln_mu + ln_rho - ln_sq_fact).exp();
                assert!((ratio - 1.0).abs() <= 1e-11, "{family} n={n}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn bg_gp_duality_elementwise() {
        for kappa in [1.0, 1.5, 2.0] {
            let bg = FamilySpec::BarutGirardello { kappa };
            let gp = FamilySpec::GilmorePerelomov { kappa };
            let bg_dual = bg.dual();
            let gp_dual = gp.dual();
            for n in 0..=50usize {
                assert!(rel_close(bg_dual.weight(n).unwrap(), gp.weight(n).unwrap(), 1e-11));
                assert!(rel_close(gp_dual.weight(n).unwrap(), bg.weight(n).unwrap(), 1e-11));
            }
        }
    }

    #[test]
    fn dimension_rules() {
        assert_eq!(FamilySpec::Canonical.dimension(), Dimension::Infinite);
        assert_eq!(FamilySpec::Morse { m: 3 }.dimension(), Dimension::Finite(4));
        assert_eq!(FamilySpec::Morse { m: 3 }.dual().dimension(), Dimension::Finite(4));
        assert!(FamilySpec::Morse { m: 3 }.weight(4).is_err());
    }

    #[test]
    fn radius_rules() {
        assert_eq!(FamilySpec::Canonical.convergence_radius().value, f64::INFINITY);
        assert_eq!(FamilySpec::GilmorePerelomov { kappa: 1.0 }.convergence_radius().value, 1.0);
        assert_eq!(FamilySpec::PoschlTeller { nu: 3.0 }.dual().convergence_radius().value, 1.0);
        assert_eq!(FamilySpec::HydrogenLike.convergence_radius().value, 1.0);
        assert_eq!(FamilySpec::HydrogenLike.dual().convergence_radius().value, f64::INFINITY);
    }

    #[test]
    fn radius_probe_on_custom_weight() {
        // custom family equal to GP κ=1 in disguise: e_n = n/(n+1) -> 1
        let family = FamilySpec::KpsCustom {
            name: "gp_disguised".into(),
            ln_weight: Arc::new(|n| {
                let mut ln = 0.0;
                for k in 1..=n {
                    ln += (k as f64 / (k as f64 + 1.0)).ln();
                }
                ln
            }),
        };
        let r = family.convergence_radius();
        assert!(!r.closed_form);
        assert!((r.value - 1.0).abs() < 1e-2, "probe gave {}", r.value);
    }

    #[test]
    fn nonlinearity_table() {
        let family = FamilySpec::InfiniteWell;
        let table = NonlinearityFn::tabulate(&family, 30, true).unwrap();
        let spectrum = Spectrum::tabulate(&family, 30).unwrap();
        for n in 1..=30usize {
            let f = table.value(n);
            // modulus(n) = sqrt(e_n/n)
            assert!(
                rel_close(f, (spectrum.values[n] / n as f64).sqrt(), 1e-12),
                "n = {n}"
            );
            let rate = table.phase_rate.as_ref().unwrap()[n - 1];
            assert!(rel_close(rate, spectrum.values[n] - spectrum.values[n - 1], 1e-12));
        }
    }

    #[test]
    fn monotonicity_diagnostics() {
        for family in [
            FamilySpec::Canonical,
            FamilySpec::BarutGirardello { kappa: 1.0 },
            FamilySpec::PoschlTeller { nu: 3.0 },
            FamilySpec::InfiniteWell,
            FamilySpec::HydrogenLike,
        ] {
            let s = Spectrum::tabulate(&family, 50).unwrap();
            assert!(s.monotone_up_to >= 50, "{family}");
        }
        let morse = Spectrum::tabulate(&FamilySpec::Morse { m: 3 }, 3).unwrap();
        assert_eq!(morse.monotone_up_to, 2);
        assert!(!morse.is_strictly_increasing());
    }

    #[test]
    fn canonical_limits() {
        // ML(1,1), PS(1), HG(p=q=0) all reduce to ρ(n) = n!
        let reducible = [
            FamilySpec::MittagLeffler { alpha: 1.0, beta: 1.0 },
            FamilySpec::PensonSolomon { q: 1.0 },
            FamilySpec::Hypergeometric { alphas: vec![], betas: vec![] },
        ];
        for family in reducible {
            for n in 0..=30usize {
                assert!(
                    rel_close(family.weight(n).unwrap(), FamilySpec::Canonical.weight(n).unwrap(), 1e-12),
                    "{family} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn published_f_crosschecks() {
        // BG, PS, GP, TC2 published forms agree with the generic derivation
        let agreeing: Vec<FamilySpec> = vec![
            FamilySpec::BarutGirardello { kappa: 1.5 },
            FamilySpec::GilmorePerelomov { kappa: 1.5 },
            FamilySpec::PensonSolomon { q: 0.8 },
            FamilySpec::TricomiSecond { lambda: 0.5, beta: 1.0 },
        ];
        for family in agreeing {
            for n in 1..=10usize {
                let published = family.published_nonlinearity(n).unwrap().unwrap();
                let generic = family.nonlinearity_value(n).unwrap();
                assert!(
                    rel_close(published, generic, 1e-8),
                    "{family} n={n}: {published} vs {generic}"
                );
            }
            assert!(!family.published_f_is_discrepant());
        }
        // HG, TC1, LL are flagged
        let discrepant: Vec<FamilySpec> = vec![
            FamilySpec::Hypergeometric { alphas: vec![2.0], betas: vec![3.0] },
            FamilySpec::TricomiFirst { p: 1.0 },
            FamilySpec::LandauLevel { m: 1, alpha: 0.5 },
        ];
        // n = 3: the HG slip factor (n−1) = 2 (it degenerates to 1 at n = 2)
        for family in discrepant {
            assert!(family.published_f_is_discrepant(), "{family}");
            let published = family.published_nonlinearity(3).unwrap().unwrap();
            let generic = family.nonlinearity_value(3).unwrap();
            assert!(
                !rel_close(published, generic, 1e-6),
                "{family}: published {published} unexpectedly matches {generic}"
            );
        }
    }

    #[test]
    fn parse_round_trip() {
        let texts = [
            "canonical",
            "ml(alpha=2,beta=1)",
            "hg(alphas=2:3,betas=1.5)",
            "tc1(p=1)",
            "tc2(lambda=0.5,beta=1)",
            "ps(q=0.8)",
            "bg(kappa=1.5)",
            "gp(kappa=2)",
            "ll(m=1,alpha=0.5)",
            "poschl_teller(nu=3)",
            "infinite_well",
            "hydrogen",
            "morse(m=3)",
            "dual(bg(kappa=1.5))",
            "gk(en=0:1:2.5:4.1)",
        ];
        for text in texts {
            let family = FamilySpec::parse(text).unwrap();
            let rendered = family.to_string();
            let reparsed = FamilySpec::parse(&rendered).unwrap();
            assert_eq!(rendered, reparsed.to_string(), "{text}");
        }
    }

    #[test]
    fn parse_rejections() {
        assert!(FamilySpec::parse("nosuch()").is_err());
        assert!(FamilySpec::parse("bg(kappa=0.7)").is_err());
        assert!(FamilySpec::parse("poschl_teller(nu=2)").is_err());
        assert!(FamilySpec::parse("morse(m=0)").is_err());
        assert!(FamilySpec::parse("ml(alpha=2)").is_err());
        assert!(FamilySpec::parse("canonical(x=1)").is_err());
        assert!(FamilySpec::parse("gk(en=1:2)").is_err()); // e_0 must be 0
    }

    #[test]
    fn dual_of_dual_parse_normalizes() {
        let family = FamilySpec::parse("dual(dual(poschl_teller(nu=3)))").unwrap();
        assert_eq!(family.to_string(), "poschl_teller(nu=3)");
    }

    proptest! {
        #[test]
        fn dual_product_identity(n in 1usize..40, kappa_i in 2u32..6) {
            let kappa = kappa_i as f64 / 2.0;
            let family = FamilySpec::BarutGirardello { kappa };
            let mu = family.dual().ln_weight(n).unwrap();
            let rho = family.ln_weight(n).unwrap();
            let target = 2.0 * specfun::log_gamma(n as f64 + 1.0).unwrap();
            prop_assert!((mu + rho - target).abs() <= 1e-11 * target.max(1.0));
        }
    }
}
