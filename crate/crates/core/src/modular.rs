//! Modular conjugation, modular operator, flow, and the Tomita operator.
//!
//! The modular conjugation `J` acts on a square composite space by swapping
//! the two occupation indices, flipping the spin, and conjugating
//! amplitudes: `J (c |n,m,s⟩) = c̄ |m,n,s̄⟩`. It is an anti-unitary
//! involution that exchanges the side-A and side-B operator algebras:
//! `J Q_a J = Q_b` and `J H_a J = H_b` hold exactly on the truncated space.
//!
//! The modular operator is `Δ = exp[-β (H_a - H_b)]`, diagonal in the
//! occupation basis with entry `e^{-β(n - m - σ)}` on `|n,m,s⟩`
//! (`σ = ±1` for spin up/down). The flow `Δ^{it}` rotates the supercharges
//! by the opposite phases `e^{∓iβt}`, and the Tomita operator
//! `S = J Δ^{1/2}` sends `X Ω` to its mirror `X' Ω` for every supercharge
//! generator `X`.
//!
//! Two thermal vectors appear:
//!
//! * [`omega_vector`] — geometric weights on the equal-occupation states
//!   `|n,n,up⟩ + |n,n,down⟩`. It is J-invariant, and `S` acts on its
//!   supercharge orbit exactly; but it is *not* Δ-invariant: on its support
//!   the exponent `n - m - σ` reduces to `-σ ≠ 0`, so `Δ` scales the two
//!   spin components by `e^{±β}`.
//! * [`paired_omega_vector`] — the same weights on the doublet-paired states
//!   `|k,k-1,up⟩ + |k-1,k,down⟩`, which span the kernel of `H_a - H_b`.
//!   This vector is invariant under both `J` and `Δ` (exactly, including
//!   truncation), and is the vector the Δ-invariance check is run on.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fock::{BasisLabel, FockSpec, LinearOp, PureState, Spin};
use crate::linalg;
use crate::report::{CheckEntry, RunConfig, VerificationReport};
use crate::susy::SusySystem;

/// Residual tolerance for the exact J-conjugation identities.
pub const J_CONJUGATION_TOL: f64 = 1e-13;
/// Residual tolerance for sampled anti-unitarity and for `J Δ^{1/2} J = Δ^{-1/2}`.
pub const ANTI_UNITARITY_TOL: f64 = 1e-12;
/// Residual tolerance for the modular-flow phase identities.
pub const FLOW_PHASE_TOL: f64 = 1e-12;
/// Largest admissible thermal tail `e^{-β·min_cut}`: beyond this the
/// Ω-dependent identities certify nothing at a meaningful tolerance, and
/// the suite reports the configuration itself as tail-limited.
pub const TAIL_GUARD: f64 = 1e-3;
/// Number of random state pairs for the sampled anti-unitarity check.
pub const ANTI_UNITARITY_SAMPLES: usize = 100;

/// Anti-linear map, stored as a linear part `P` with the action
/// `v ↦ P · conj(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiLinearOp {
    spec: FockSpec,
    linear_part: DMatrix<Complex64>,
}

impl AntiLinearOp {
    pub fn new(spec: FockSpec, linear_part: DMatrix<Complex64>) -> Result<Self> {
        let dim = spec.total_dim();
        if linear_part.nrows() != dim || linear_part.ncols() != dim {
            return Err(Error::ShapeMismatch {
                rows: linear_part.nrows(),
                cols: linear_part.ncols(),
                dim,
            });
        }
        Ok(AntiLinearOp { spec, linear_part })
    }

    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn linear_part(&self) -> &DMatrix<Complex64> {
        &self.linear_part
    }

    /// Apply to a raw amplitude vector: `P · conj(v)`.
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let conj = v.map(|z| z.conj());
        linalg::mat_vec(&self.linear_part, &conj)
    }

    /// Apply to a state; anti-unitary maps preserve the norm, so the image
    /// is re-wrapped as a state (errors if the map shrank it).
    pub fn apply_state(&self, state: &PureState) -> Result<PureState> {
        self.spec.check_same(&state.spec())?;
        PureState::new(self.spec, self.apply(state.amplitudes()))
    }

    /// Composition `self ∘ A` with a linear operator: linear part `P · conj(A)`.
    pub fn compose_with_linear(&self, a: &LinearOp) -> Result<AntiLinearOp> {
        self.spec.check_same(&a.spec())?;
        let conj_a = a.matrix().map(|z| z.conj());
        Ok(AntiLinearOp {
            spec: self.spec,
            linear_part: linalg::mat_mul(&self.linear_part, &conj_a),
        })
    }

    /// Composition `A ∘ self` with a linear operator: linear part `A · P`.
    pub fn linear_then(&self, a: &LinearOp) -> Result<AntiLinearOp> {
        self.spec.check_same(&a.spec())?;
        Ok(AntiLinearOp {
            spec: self.spec,
            linear_part: linalg::mat_mul(a.matrix(), &self.linear_part),
        })
    }

    /// Composition of two anti-linear maps is linear: `self ∘ other` has
    /// matrix `P_self · conj(P_other)`.
    pub fn compose_antilinear(&self, other: &AntiLinearOp) -> Result<LinearOp> {
        self.spec.check_same(&other.spec)?;
        let conj_other = other.linear_part.map(|z| z.conj());
        LinearOp::new(
            self.spec,
            linalg::mat_mul(&self.linear_part, &conj_other),
        )
    }
}

/// The modular conjugation: occupation swap, spin flip, amplitude
/// conjugation. Needs `na_cut == nb_cut` so the swap stays inside the
/// truncation. Its linear part is a real permutation matrix.
pub fn modular_conjugation(spec: FockSpec) -> Result<AntiLinearOp> {
    if !spec.is_square() {
        return Err(Error::NonSquareSpace {
            na_cut: spec.na_cut(),
            nb_cut: spec.nb_cut(),
        });
    }
    let dim = spec.total_dim();
    let mut p = DMatrix::zeros(dim, dim);
    for label in spec.labels() {
        let from = spec.index(label)?;
        let to = spec.index(swapped(label))?;
        p[(to, from)] = Complex64::new(1.0, 0.0);
    }
    AntiLinearOp::new(spec, p)
}

fn swapped(label: BasisLabel) -> BasisLabel {
    BasisLabel::new(label.m, label.n, label.spin.flipped())
}

/// `J A J` as a linear operator: `P · conj(A) · P`.
pub fn conjugate_by_j(j: &AntiLinearOp, a: &LinearOp) -> Result<LinearOp> {
    j.spec().check_same(&a.spec())?;
    let conj_a = a.matrix().map(|z| z.conj());
    let inner = linalg::mat_mul(&conj_a, j.linear_part());
    LinearOp::new(j.spec(), linalg::mat_mul(j.linear_part(), &inner))
}

/// Thermal vector with geometric weights `e^{-βn/2}` on both spin
/// components of the equal-occupation states `|n,n,s⟩`, renormalized to
/// unit norm after truncation.
pub fn omega_vector(spec: FockSpec, beta: f64) -> Result<PureState> {
    let raw = omega_raw(spec, beta)?;
    PureState::normalized(spec, raw)
}

/// The raw (un-renormalized) thermal vector with the infinite-sum
/// prefactor `(1 - e^{-β})^{1/2}` and the spin pair scaled by `1/√2`.
/// Its norm deficit from 1 is exactly the truncated tail mass and is the
/// numerical carrier of the a-priori bound `e^{-β·min_cut}`.
fn omega_raw(spec: FockSpec, beta: f64) -> Result<DVector<Complex64>> {
    check_beta(beta)?;
    require_square(spec)?;
    let prefactor = (1.0 - (-beta).exp()).sqrt() / 2.0f64.sqrt();
    let mut raw = DVector::zeros(spec.total_dim());
    for n in 0..spec.min_cut() {
        let w = Complex64::new(prefactor * (-beta * n as f64 / 2.0).exp(), 0.0);
        raw[spec.index(BasisLabel::new(n, n, Spin::Up))?] = w;
        raw[spec.index(BasisLabel::new(n, n, Spin::Down))?] = w;
    }
    Ok(raw)
}

/// Norm deficit `|1 - ‖Ω_raw‖|` of the truncated thermal vector; decays
/// like `e^{-β·min_cut} / 2` and is always below the tail bound.
pub fn omega_truncation_deficit(spec: FockSpec, beta: f64) -> Result<f64> {
    Ok((1.0 - omega_raw(spec, beta)?.norm()).abs())
}

/// Thermal vector over the doublet-paired states
/// `|k,k-1,up⟩ + |k-1,k,down⟩`, `k = 1..min_cut`, with weights `e^{-βk/2}`.
///
/// Its support spans the kernel of `H_a - H_b`, so it is fixed exactly by
/// the modular operator, and the pairing is aligned with the occupation
/// swap so it is fixed by `J` as well.
pub fn paired_omega_vector(spec: FockSpec, beta: f64) -> Result<PureState> {
    check_beta(beta)?;
    require_square(spec)?;
    let mut raw = DVector::zeros(spec.total_dim());
    for k in 1..spec.min_cut() {
        let w = Complex64::new((-beta * k as f64 / 2.0).exp(), 0.0);
        raw[spec.index(BasisLabel::new(k, k - 1, Spin::Up))?] = w;
        raw[spec.index(BasisLabel::new(k - 1, k, Spin::Down))?] = w;
    }
    PureState::normalized(spec, raw)
}

/// Diagonal exponent of `H_a - H_b` on `|n,m,s⟩`: `n - m - σ_z`.
fn relative_exponent(label: BasisLabel) -> f64 {
    label.n as f64 - label.m as f64 - label.spin.sigma_z()
}

/// The modular operator `Δ = exp[-β (H_a - H_b)]`, in closed diagonal form.
pub fn modular_delta(spec: FockSpec, beta: f64) -> Result<LinearOp> {
    modular_delta_pow(spec, beta, 1.0)
}

/// `Δ^p` for real `p`, diagonal entries `e^{-β p (n - m - σ)}`.
///
/// Exponents are assembled so that `Δ^{p}` and `Δ^{-p}` carry bitwise
/// negated arguments; together with the sign symmetry of the occupation
/// swap this makes `J Δ^{1/2} J = Δ^{-1/2}` exact in floating point.
pub fn modular_delta_pow(spec: FockSpec, beta: f64, power: f64) -> Result<LinearOp> {
    check_beta(beta)?;
    Ok(LinearOp::diagonal_real(spec, |l| {
        (-beta * power * relative_exponent(l)).exp()
    }))
}

/// The modular flow `Δ^{it}`: diagonal unitary with phases
/// `e^{-iβt(n - m - σ)}`.
pub fn modular_flow(spec: FockSpec, beta: f64, t: f64) -> Result<LinearOp> {
    check_beta(beta)?;
    Ok(LinearOp::diagonal_complex(spec, |l| {
        Complex64::new(0.0, -beta * t * relative_exponent(l)).exp()
    }))
}

/// `Δ^{it} X Δ^{-it}`, computed entrywise from the phase differences of the
/// diagonal flow (no matrix products).
pub fn flow_conjugate(spec: FockSpec, beta: f64, t: f64, x: &LinearOp) -> Result<LinearOp> {
    check_beta(beta)?;
    spec.check_same(&x.spec())?;
    let exponents: Vec<f64> = spec.labels().map(relative_exponent).collect();
    let dim = spec.total_dim();
    let mut matrix = x.matrix().clone();
    for j in 0..dim {
        for i in 0..dim {
            let phase = Complex64::new(0.0, -beta * t * (exponents[i] - exponents[j])).exp();
            matrix[(i, j)] *= phase;
        }
    }
    LinearOp::new(spec, matrix)
}

fn check_beta(beta: f64) -> Result<()> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::ParameterOutOfDomain {
            name: "beta",
            value: beta,
            requirement: "must be finite and positive",
        });
    }
    Ok(())
}

fn require_square(spec: FockSpec) -> Result<()> {
    if !spec.is_square() {
        return Err(Error::NonSquareSpace {
            na_cut: spec.na_cut(),
            nb_cut: spec.nb_cut(),
        });
    }
    Ok(())
}

/// The assembled modular objects for one `(spec, β)`.
#[derive(Debug, Clone)]
pub struct ModularData {
    spec: FockSpec,
    beta: f64,
    j: AntiLinearOp,
    delta: LinearOp,
    omega: PureState,
    paired_omega: PureState,
    s: AntiLinearOp,
    truncation_tail: f64,
}

impl ModularData {
    /// Build `J`, `Δ`, both thermal vectors, and `S = J ∘ Δ^{1/2}`.
    pub fn new(spec: FockSpec, beta: f64) -> Result<Self> {
        let j = modular_conjugation(spec)?;
        let delta = modular_delta(spec, beta)?;
        let delta_half = modular_delta_pow(spec, beta, 0.5)?;
        let omega = omega_vector(spec, beta)?;
        let paired_omega = paired_omega_vector(spec, beta)?;
        let s = j.compose_with_linear(&delta_half)?;
        Ok(ModularData {
            spec,
            beta,
            j,
            delta,
            omega,
            paired_omega,
            s,
            truncation_tail: (-beta * spec.min_cut() as f64).exp(),
        })
    }

    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn j(&self) -> &AntiLinearOp {
        &self.j
    }

    pub fn delta(&self) -> &LinearOp {
        &self.delta
    }

    /// The equal-occupation thermal vector.
    pub fn omega(&self) -> &PureState {
        &self.omega
    }

    /// The doublet-paired thermal vector (Δ-invariant).
    pub fn paired_omega(&self) -> &PureState {
        &self.paired_omega
    }

    /// The Tomita operator `S = J Δ^{1/2}`.
    pub fn s(&self) -> &AntiLinearOp {
        &self.s
    }

    /// A-priori bound `e^{-β·min_cut}` on the thermal truncation error.
    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }
}

/// The Tomita operator of the assembled modular data, `S = J Δ^{1/2}`,
/// with linear part `P · Δ^{1/2}` (the diagonal is real).
pub fn tomita_s(data: &ModularData) -> AntiLinearOp {
    data.s.clone()
}

/// Residual-check suite for the modular structure.
///
/// Exact permutation identities are held to zero; conjugation identities to
/// [`J_CONJUGATION_TOL`]; sampled anti-unitarity, the flow phases, and
/// `J Δ^{1/2} J = Δ^{-1/2}` to their pinned tolerances; and every
/// Ω-dependent identity to `max(tolerance, 10·e^{-β·min_cut})`. The
/// `omega_tail_bound` entry fails when the configured tail exceeds
/// [`TAIL_GUARD`], flagging a `(β, cutoff)` combination whose thermal
/// identities cannot certify anything tighter than the tail itself.
pub fn verify_modular(
    data: &ModularData,
    sys_a: &SusySystem,
    sys_b: &SusySystem,
    config: &RunConfig,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let spec = data.spec;
    spec.check_same(&sys_a.spec())?;
    spec.check_same(&sys_b.spec())?;
    let tail_tol = config.tolerance.max(10.0 * data.truncation_tail);
    let mut entries = Vec::new();

    // (1) involution: J^2 = I, exact permutation arithmetic
    let j_squared = data.j.compose_antilinear(&data.j)?;
    let involution_defect = j_squared.sub(&LinearOp::identity(spec))?;
    entries.push(CheckEntry::new(
        "j_squared_identity",
        "J\u{00b2} = I",
        involution_defect.frobenius_norm(),
        0.0,
    ));

    // (2) anti-unitarity on seeded random pairs: <Jx|Jy> = <y|x>
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..ANTI_UNITARITY_SAMPLES {
        let xi = random_state(spec, &mut rng);
        let psi = random_state(spec, &mut rng);
        let jxi = data.j.apply(&xi);
        let jpsi = data.j.apply(&psi);
        let lhs = jxi.dotc(&jpsi);
        let rhs = psi.dotc(&xi);
        worst = worst.max((lhs - rhs).norm());
    }
    entries.push(CheckEntry::new(
        "j_antiunitarity",
        "\u{27e8}J\u{03be}|J\u{03c8}\u{27e9} = \u{27e8}\u{03c8}|\u{03be}\u{27e9} on sampled pairs",
        worst,
        ANTI_UNITARITY_TOL,
    ));

    // (3) algebra swap under conjugation
    for (id, anchor, x, image) in [
        ("j_maps_qa_to_qb", "J Q_a J = Q_b", sys_a.q(), sys_b.q()),
        (
            "j_maps_qadag_to_qbdag",
            "J Q_a\u{2020} J = Q_b\u{2020}",
            sys_a.q_dag(),
            sys_b.q_dag(),
        ),
        (
            "j_maps_ha_to_hb",
            "J H_a J = H_b",
            sys_a.hamiltonian(),
            sys_b.hamiltonian(),
        ),
        (
            "j_maps_hb_to_ha",
            "J H_b J = H_a",
            sys_b.hamiltonian(),
            sys_a.hamiltonian(),
        ),
    ] {
        let residual = conjugate_by_j(&data.j, x)?.sub(image)?.spectral_norm();
        entries.push(CheckEntry::new(id, anchor, residual, J_CONJUGATION_TOL));
    }

    // (4) invariance of the thermal vectors under J
    let j_om = data.j.apply(data.omega.amplitudes());
    entries.push(CheckEntry::new(
        "j_fixes_omega",
        "J \u{03a9} = \u{03a9}",
        (j_om - data.omega.amplitudes()).norm(),
        0.0,
    ));
    let j_omp = data.j.apply(data.paired_omega.amplitudes());
    entries.push(CheckEntry::new(
        "j_fixes_paired_omega",
        "J \u{03a9}' = \u{03a9}' (doublet-paired thermal vector)",
        (j_omp - data.paired_omega.amplitudes()).norm(),
        0.0,
    ));

    // (5) Delta-invariance, run on the paired thermal vector: the
    // equal-occupation vector is not in the kernel of H_a - H_b (its
    // exponent reduces to the spin term), the paired vector is.
    let d_omp = data.delta.apply(data.paired_omega.amplitudes());
    entries.push(CheckEntry::new(
        "delta_fixes_paired_omega",
        "\u{0394} \u{03a9}' = \u{03a9}' (doublet-paired thermal vector)",
        (d_omp - data.paired_omega.amplitudes()).norm(),
        tail_tol,
    ));

    // (6) truncation accounting for the equal-occupation vector
    let deficit = omega_truncation_deficit(spec, data.beta)?;
    entries.push(CheckEntry::new(
        "omega_truncation_deficit",
        "|1 - \u{2016}\u{03a9}_raw\u{2016}| \u{2264} e^{-\u{03b2}\u{00b7}min_cut}",
        deficit,
        data.truncation_tail,
    ));
    entries.push(CheckEntry::new(
        "omega_tail_bound",
        "thermal tail e^{-\u{03b2}\u{00b7}min_cut} small enough to certify \u{03a9}-identities",
        data.truncation_tail,
        TAIL_GUARD,
    ));

    // (7) J Delta^{1/2} J = Delta^{-1/2}
    let delta_half = modular_delta_pow(spec, data.beta, 0.5)?;
    let delta_inv_half = modular_delta_pow(spec, data.beta, -0.5)?;
    let conj_half = conjugate_by_j(&data.j, &delta_half)?;
    entries.push(CheckEntry::new(
        "j_delta_half_conjugation",
        "J \u{0394}^{1/2} J = \u{0394}^{-1/2}",
        conj_half.sub(&delta_inv_half)?.spectral_norm(),
        ANTI_UNITARITY_TOL,
    ));

    // (8) Tomita operator on the generator orbit of Omega:
    // S X Omega = X' Omega with the mirror generator X'
    for (id, anchor, x, image) in [
        ("s_action_qa", "S Q_a \u{03a9} = Q_b \u{03a9}", sys_a.q(), sys_b.q()),
        (
            "s_action_qadag",
            "S Q_a\u{2020} \u{03a9} = Q_b\u{2020} \u{03a9}",
            sys_a.q_dag(),
            sys_b.q_dag(),
        ),
        ("s_action_qb", "S Q_b \u{03a9} = Q_a \u{03a9}", sys_b.q(), sys_a.q()),
        (
            "s_action_qbdag",
            "S Q_b\u{2020} \u{03a9} = Q_a\u{2020} \u{03a9}",
            sys_b.q_dag(),
            sys_a.q_dag(),
        ),
    ] {
        let orbit = x.apply(data.omega.amplitudes());
        let s_orbit = data.s.apply(&orbit);
        let mirror = image.apply(data.omega.amplitudes());
        entries.push(CheckEntry::new(
            id,
            anchor,
            (s_orbit - mirror).norm(),
            tail_tol,
        ));
    }

    // (9) flow phases on the supercharges; t fixed, sign settled by the
    // triple-product oracle in the test suite
    let t = 0.7;
    for (id, anchor, x, sign) in [
        (
            "flow_phase_qa",
            "\u{0394}^{it} Q_a \u{0394}^{-it} = e^{-i\u{03b2}t} Q_a",
            sys_a.q(),
            -1.0,
        ),
        (
            "flow_phase_qb",
            "\u{0394}^{it} Q_b \u{0394}^{-it} = e^{+i\u{03b2}t} Q_b",
            sys_b.q(),
            1.0,
        ),
    ] {
        let flowed = flow_conjugate(spec, data.beta, t, x)?;
        let phase = Complex64::new(0.0, sign * data.beta * t).exp();
        let residual = flowed.sub(&x.scaled(phase))?.spectral_norm();
        entries.push(CheckEntry::new(id, anchor, residual, FLOW_PHASE_TOL));
    }

    Ok(VerificationReport::from_entries(
        "modular",
        *config,
        entries,
        t0.elapsed().as_secs_f64() * 1e3,
    ))
}

/// Uniform random unit vector (all components drawn from `[-1, 1]²`).
fn random_state(spec: FockSpec, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let dim = spec.total_dim();
    let mut v = DVector::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}
