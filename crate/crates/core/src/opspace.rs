//! Dense matrix realizations of every operator on the truncated Fock space:
//! bosonic and f-deformed ladders, the conjugate pair B/B†, Hamiltonians,
//! diagonal transforms T/T⁻¹/Ŝ(α), displacement operators via the matrix
//! exponential, shift exponentials, and the one-photon intensity-dependent
//! Jaynes-Cummings block Hamiltonian.
//!
//! Truncation corrupts any identity that touches the top basis index, so
//! every operator carries `valid_interior`: algebraic assertions are only
//! meaningful up to that index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{FamilySpec, Spectrum};
use crate::fock::FockExpansion;

/// A dense operator on the (N+1)-dimensional truncated Fock space.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub entries: DMatrix<Complex64>,
    pub label: String,
    /// Largest basis index whose algebraic identities are uncorrupted by
    /// the truncation.
    pub valid_interior: usize,
}

impl TruncatedOperator {
    fn new(entries: DMatrix<Complex64>, label: impl Into<String>, valid_interior: usize) -> Self {
        TruncatedOperator { entries, label: label.into(), valid_interior }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn adjoint(&self) -> TruncatedOperator {
        TruncatedOperator::new(self.entries.adjoint(), format!("{}^dag", self.label), self.valid_interior)
    }

    /// Apply to a coefficient vector (zero-padded/truncated to the dim).
    pub fn apply(&self, coefficients: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d.min(coefficients.len()) {
                acc += self.entries[(i, j)] * coefficients[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn apply_state(&self, state: &FockExpansion) -> Vec<Complex64> {
        self.apply(state.coefficients())
    }

    /// Largest |entry| difference against another operator, restricted to
    /// the shared interior block.
    pub fn interior_max_diff(&self, other: &TruncatedOperator) -> f64 {
        let top = self.valid_interior.min(other.valid_interior);
        let mut max = 0.0f64;
        for i in 0..=top {
            for j in 0..=top {
                max = max.max((self.entries[(i, j)] - other.entries[(i, j)]).norm());
            }
        }
        max
    }
}

fn real_mat(dim: usize, f: impl Fn(usize, usize) -> f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| Complex64::new(f(i, j), 0.0))
}

/// Standard bosonic a, a†, n̂ at truncation N (dimension N+1).
pub fn ladder_matrices(n: usize) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator)> {
    if n < 1 {
        return Err(Error::domain("ladder matrices need N >= 1"));
    }
    let dim = n + 1;
    let a = real_mat(dim, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 });
    let adag = real_mat(dim, |i, j| if i == j + 1 { (i as f64).sqrt() } else { 0.0 });
    let num = real_mat(dim, |i, j| if i == j { i as f64 } else { 0.0 });
    Ok((
        TruncatedOperator::new(a, "a", n - 1),
        TruncatedOperator::new(adag, "a_dag", n - 1),
        TruncatedOperator::new(num, "n", n - 1),
    ))
}

fn spectrum_for(family: &FamilySpec, n_top: usize) -> Result<Spectrum> {
    if !family.dimension().contains(n_top) {
        return Err(Error::domain(format!(
            "truncation N = {n_top} exceeds the dimension of {family}"
        )));
    }
    Spectrum::tabulate(family, n_top)
}

/// f-deformed ladder pair: A|n⟩ = √e_n e^{iα(e_n−e_{n−1})}|n−1⟩ and its
/// conjugate transpose. α = 0 when absent.
pub fn deformed_ladder(
    family: &FamilySpec,
    n: usize,
    alpha: Option<f64>,
) -> Result<(TruncatedOperator, TruncatedOperator)> {
    if n < 1 {
        return Err(Error::domain("deformed ladder needs N >= 1"));
    }
    let spectrum = spectrum_for(family, n)?;
    let a = alpha.unwrap_or(0.0);
    let dim = n + 1;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for k in 1..=n {
        let e = spectrum.values[k];
        let rate = e - spectrum.values[k - 1];
        m[(k - 1, k)] = Complex64::from_polar(e.sqrt(), a * rate);
    }
    let op = TruncatedOperator::new(m, format!("A[{family}]"), n - 1);
    let opd = op.adjoint();
    Ok((op, opd))
}

/// Conjugate pair B = a/f(n̂) with the −α phase rule, so that [A, B†] = 1
/// on the interior: B|n⟩ = (n/√e_n) e^{iα(e_n−e_{n−1})}|n−1⟩.
pub fn conjugate_ladder(
    family: &FamilySpec,
    n: usize,
    alpha: Option<f64>,
) -> Result<(TruncatedOperator, TruncatedOperator)> {
    if n < 1 {
        return Err(Error::domain("conjugate ladder needs N >= 1"));
    }
    let spectrum = spectrum_for(family, n)?;
    let a = alpha.unwrap_or(0.0);
    let dim = n + 1;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for k in 1..=n {
        let e = spectrum.values[k];
        if e <= 0.0 {
            return Err(Error::Singularity { index: k });
        }
        let rate = e - spectrum.values[k - 1];
        m[(k - 1, k)] = Complex64::from_polar(k as f64 / e.sqrt(), a * rate);
    }
    let op = TruncatedOperator::new(m, format!("B[{family}]"), n - 1);
    let opd = op.adjoint();
    Ok((op, opd))
}

/// Hamiltonian variant: the normal-ordered A†A with eigenvalues e_n, or
/// the symmetric (AA† + A†A)/2 form with diagonal ((n+1)f(n+1)² + nf(n)²)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianVariant {
    NormalOrdered,
    Manko,
}

pub fn hamiltonian(family: &FamilySpec, n: usize, variant: HamiltonianVariant) -> Result<TruncatedOperator> {
    if n < 1 {
        return Err(Error::domain("hamiltonian needs N >= 1"));
    }
    match variant {
        HamiltonianVariant::NormalOrdered => {
            let spectrum = spectrum_for(family, n)?;
            let m = real_mat(n + 1, |i, j| if i == j { spectrum.values[i] } else { 0.0 });
            Ok(TruncatedOperator::new(m, format!("H_normal[{family}]"), n))
        }
        HamiltonianVariant::Manko => {
            // the top diagonal entry needs e_{N+1}; use it when the family
            // dimension allows, otherwise keep only the defined term and
            // flag the top row through valid_interior
            let has_top = family.dimension().contains(n + 1);
            let spectrum = spectrum_for(family, if has_top { n + 1 } else { n })?;
            let m = real_mat(n + 1, |i, j| {
                if i != j {
                    0.0
                } else if i < n || has_top {
                    0.5 * (spectrum.values[i + 1] + spectrum.values[i])
                } else {
                    0.5 * spectrum.values[i]
                }
            });
            Ok(TruncatedOperator::new(m, format!("H_manko[{family}]"), n - 1))
        }
    }
}

/// Diagonal transform kind: T = diag √(n!/ρ(n)), its inverse, or the
/// temporal-stabilization unitary Ŝ(α) = diag e^{−iα e_n}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalKind {
    T,
    TInverse,
    S { alpha: f64 },
}

pub fn diagonal_transform(family: &FamilySpec, n: usize, kind: DiagonalKind) -> Result<TruncatedOperator> {
    if n < 1 {
        return Err(Error::domain("diagonal transforms need N >= 1"));
    }
    let dim = n + 1;
    match kind {
        DiagonalKind::T | DiagonalKind::TInverse => {
            let weights = crate::families::WeightSequence::tabulate(family, n)?;
            let sign = if matches!(kind, DiagonalKind::T) { 1.0 } else { -1.0 };
            let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
            for k in 0..dim {
                let ln_fact = crate::specfun::log_gamma(k as f64 + 1.0)?;
                let ln = 0.5 * sign * (ln_fact - weights.ln_value(k));
                m[(k, k)] = Complex64::new(ln.exp(), 0.0);
            }
            let label = if sign > 0.0 { "T" } else { "T_inv" };
            Ok(TruncatedOperator::new(m, format!("{label}[{family}]"), n))
        }
        DiagonalKind::S { alpha } => {
            let spectrum = spectrum_for(family, n)?;
            let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
            for k in 0..dim {
                m[(k, k)] = Complex64::from_polar(1.0, -alpha * spectrum.values[k]);
            }
            Ok(TruncatedOperator::new(m, format!("S({alpha})[{family}]"), n))
        }
    }
}

/// Displacement flavor: D = exp(zB† − z̄A) reconstructs the family state
/// from the vacuum; D̃ = exp(zA† − z̄B) builds the dual state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementKind {
    D,
    DTilde,
}

pub fn displacement(
    family: &FamilySpec,
    z: Complex64,
    n: usize,
    kind: DisplacementKind,
    alpha: Option<f64>,
) -> Result<TruncatedOperator> {
    let (a, adag) = deformed_ladder(family, n, alpha)?;
    let (b, bdag) = conjugate_ladder(family, n, alpha)?;
    let zc = Complex64::new(z.re, z.im);
    let generator = match kind {
        DisplacementKind::D => &bdag.entries * zc - &a.entries * zc.conj(),
        DisplacementKind::DTilde => &adag.entries * zc - &b.entries * zc.conj(),
    };
    let exp = expm(&generator)?;
    // interior shrinks as the displacement pushes weight toward the cut
    let n_eff = n.saturating_sub((8.0 * z.norm() * (n as f64).sqrt()).ceil() as usize);
    let label = match kind {
        DisplacementKind::D => format!("D({z})[{family}]"),
        DisplacementKind::DTilde => format!("D_tilde({z})[{family}]"),
    };
    Ok(TruncatedOperator::new(exp, label, n_eff))
}

/// Shift exponential kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftKind {
    /// e^{λ a†}: lower-triangular, photon-added basis generator.
    Raise { lambda: f64 },
    /// e^{μ a}: upper-triangular, binomial basis generator.
    Lower { mu: f64 },
}

/// Triangular exponential computed exactly by its finite series:
/// entry (n+k, n) of e^{λa†} is λᵏ√((n+k)!/n!)/k! (and transposed for e^{μa}).
pub fn exp_shift(n: usize, kind: ShiftKind) -> Result<TruncatedOperator> {
    if n < 1 {
        return Err(Error::domain("exp_shift needs N >= 1"));
    }
    let dim = n + 1;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let (coeff, raise) = match kind {
        ShiftKind::Raise { lambda } => (lambda, true),
        ShiftKind::Lower { mu } => (mu, false),
    };
    for col in 0..dim {
        m[(col, col)] = Complex64::new(1.0, 0.0);
        let mut factor = 1.0f64;
        if raise {
            for k in 1..dim - col {
                factor *= coeff * ((col + k) as f64).sqrt() / k as f64;
                m[(col + k, col)] = Complex64::new(factor, 0.0);
            }
        } else {
            for k in 1..=col {
                factor *= coeff * ((col + 1 - k) as f64).sqrt() / k as f64;
                m[(col - k, col)] = Complex64::new(factor, 0.0);
            }
        }
    }
    let label = match kind {
        ShiftKind::Raise { lambda } => format!("exp({lambda} a_dag)"),
        ShiftKind::Lower { mu } => format!("exp({mu} a)"),
    };
    Ok(TruncatedOperator::new(m, label, n))
}

/// [X, Y] = XY − YX.
pub fn commutator(x: &TruncatedOperator, y: &TruncatedOperator) -> Result<TruncatedOperator> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of dims {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    let m = &x.entries * &y.entries - &y.entries * &x.entries;
    let interior = x.valid_interior.min(y.valid_interior).saturating_sub(1);
    Ok(TruncatedOperator::new(m, format!("[{}, {}]", x.label, y.label), interior))
}

/// One-photon intensity-dependent Jaynes-Cummings interaction,
/// g(A ⊗ |a⟩⟨b| + A† ⊗ |b⟩⟨a|), on the ordered atom⊗field basis with the
/// excited block first: dimension 2(N+1).
pub fn jaynes_cummings_h(family: &FamilySpec, g: f64, n: usize) -> Result<TruncatedOperator> {
    let (a, adag) = deformed_ladder(family, n, None)?;
    let dim = n + 1;
    let mut m = DMatrix::from_element(2 * dim, 2 * dim, Complex64::new(0.0, 0.0));
    for i in 0..dim {
        for j in 0..dim {
            m[(i, dim + j)] = g * a.entries[(i, j)];
            m[(dim + i, j)] = g * adag.entries[(i, j)];
        }
    }
    Ok(TruncatedOperator::new(m, format!("H_JC(g={g})[{family}]"), n - 1))
}

/// Scaling-and-squaring matrix exponential with the squaring count chosen
/// from the 1-norm; the Taylor stage runs at scaled norm ≤ 1/2. The
/// displacement generator is not normal, so no diagonalization shortcut.
fn expm(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let dim = m.nrows();
    let norm1 = one_norm(m);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i64
    } else {
        0
    };
    if squarings > 64 {
        return Err(Error::Truncation { tail_mass: f64::INFINITY, reached: 300 });
    }
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let scaled = m * scale;
    let mut result = DMatrix::identity(dim, dim);
    let mut term: DMatrix<Complex64> = DMatrix::identity(dim, dim);
    let mut converged = false;
    for k in 1..=300usize {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        if one_norm(&term) < 1e-16 * one_norm(&result) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Truncation { tail_mass: f64::INFINITY, reached: 300 });
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for j in 0..m.ncols() {
        let mut acc = 0.0;
        for i in 0..m.nrows() {
            acc += m[(i, j)].norm();
        }
        max = max.max(acc);
    }
    max
}

// ---------------------------------------------------------------------------
// Export forms
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct OperatorJson {
    pub label: String,
    pub dim: usize,
    pub valid_interior: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl TruncatedOperator {
    pub fn to_json_value(&self) -> OperatorJson {
        OperatorJson {
            label: self.label.clone(),
            dim: self.dim(),
            valid_interior: self.valid_interior,
            entries: (0..self.dim())
                .map(|i| {
                    (0..self.dim())
                        .map(|j| {
                            let e = self.entries[(i, j)];
                            [e.re, e.im]
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Column-compressed text form: one `col row re im` line per nonzero,
    /// columns in order.
    pub fn to_column_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {}\n# dim {} valid_interior {}\n# col row re im\n",
            self.label,
            self.dim(),
            self.valid_interior
        ));
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let e = self.entries[(i, j)];
                if e.norm() > 0.0 {
                    out.push_str(&format!("{} {} {:.17e} {:.17e}\n", j, i, e.re, e.im));
                }
            }
        }
        out
    }
}
