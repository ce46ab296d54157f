//! Concurrence of entangled doublet states via the modular conjugation,
//! with a partial-trace oracle and the entanglement of formation.
//!
//! The state family is `|Φ_k⟩ = α |k, k-1, up⟩ + β |k-1, k, down⟩`. The
//! occupation swap of `J` maps the two branches onto each other, so
//! `⟨Φ_k| J |Φ_k⟩ = 2 ᾱ β̄` and its modulus `2|αβ|` is the concurrence of
//! the qubit-versus-rest bipartition. The independent route traces out both
//! bosonic modes and evaluates the pure-state concurrence `2√(det ρ_spin)`.
//!
//! The modular expectation value is validated on this doublet family only;
//! outside it the quantity is still computable but carries no claim here.

use nalgebra::{DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{BasisLabel, FockSpec, PureState, Spin, NORM_TOL};
use crate::modular::AntiLinearOp;

/// Entangled doublet state `α |k,k-1,up⟩ + β |k-1,k,down⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupermultipletState {
    k: usize,
    alpha: Complex64,
    beta: Complex64,
    state: PureState,
}

impl SupermultipletState {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }
}

/// Build the entangled doublet state. The amplitudes must already satisfy
/// `|α|² + |β|² = 1`; nothing is silently renormalized.
pub fn supermultiplet_state(
    spec: FockSpec,
    k: usize,
    alpha: Complex64,
    beta: Complex64,
) -> Result<SupermultipletState> {
    if k == 0 || k >= spec.min_cut() {
        return Err(Error::LevelOutOfRange {
            k,
            requirement: "entangled doublet needs 1 <= k < min cutoff",
        });
    }
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq.sqrt() - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm: norm_sq.sqrt(),
            tol: NORM_TOL,
        });
    }
    let mut raw = DVector::zeros(spec.total_dim());
    raw[spec.index(BasisLabel::new(k, k - 1, Spin::Up))?] = alpha;
    raw[spec.index(BasisLabel::new(k - 1, k, Spin::Down))?] = beta;
    Ok(SupermultipletState {
        k,
        alpha,
        beta,
        state: PureState::new(spec, raw)?,
    })
}

/// Concurrence as the modular expectation value `|⟨ψ| J |ψ⟩|`.
pub fn concurrence_via_modular(j: &AntiLinearOp, state: &PureState) -> Result<f64> {
    j.spec().check_same(&state.spec())?;
    let j_state = j.apply(state.amplitudes());
    Ok(state.amplitudes().dotc(&j_state).norm())
}

/// Reduced density matrix of the spin factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinDensity {
    matrix: Matrix2<Complex64>,
}

impl SpinDensity {
    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix[(0, 0)] + self.matrix[(1, 1)]
    }

    /// Real determinant of the Hermitian 2x2 matrix.
    pub fn det(&self) -> f64 {
        (self.matrix[(0, 0)] * self.matrix[(1, 1)] - self.matrix[(0, 1)] * self.matrix[(1, 0)]).re
    }

    /// Eigenvalues in closed form, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let tr = self.trace().re;
        let disc = (tr * tr - 4.0 * self.det()).max(0.0).sqrt();
        [(tr - disc) / 2.0, (tr + disc) / 2.0]
    }

    /// Hermiticity, unit trace, and positive semidefiniteness within `tol`.
    pub fn validate(&self, tol: f64) -> bool {
        let hermitian = (self.matrix[(0, 1)] - self.matrix[(1, 0)].conj()).norm() <= tol
            && self.matrix[(0, 0)].im.abs() <= tol
            && self.matrix[(1, 1)].im.abs() <= tol;
        let unit_trace = (self.trace().re - 1.0).abs() <= tol && self.trace().im.abs() <= tol;
        let psd = self.eigenvalues()[0] >= -tol;
        hermitian && unit_trace && psd
    }
}

/// Partial trace over both bosonic modes:
/// `ρ[s, s'] = Σ_{n,m} ψ(n,m,s) conj(ψ(n,m,s'))`.
pub fn spin_reduced_density(state: &PureState) -> SpinDensity {
    let spec = state.spec();
    let mut rho = Matrix2::zeros();
    for n in 0..spec.na_cut() {
        for m in 0..spec.nb_cut() {
            let up = state
                .amplitude(BasisLabel::new(n, m, Spin::Up))
                .expect("label in range");
            let down = state
                .amplitude(BasisLabel::new(n, m, Spin::Down))
                .expect("label in range");
            rho[(0, 0)] += up * up.conj();
            rho[(0, 1)] += up * down.conj();
            rho[(1, 0)] += down * up.conj();
            rho[(1, 1)] += down * down.conj();
        }
    }
    SpinDensity { matrix: rho }
}

/// Pure-state concurrence of the qubit bipartition: `2 √(det ρ_spin)`.
pub fn concurrence_wootters(state: &PureState) -> f64 {
    2.0 * spin_reduced_density(state).det().max(0.0).sqrt()
}

/// Entanglement of formation from the concurrence:
/// `H_bin((1 + √(1 - c²)) / 2)` with the binary entropy `H_bin`.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) || !c.is_finite() {
        return Err(Error::ParameterOutOfDomain {
            name: "concurrence",
            value: c,
            requirement: "must lie in [0, 1]",
        });
    }
    let x = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
    Ok(binary_entropy(x))
}

/// Shannon binary entropy in bits, with `H(0) = H(1) = 0` by continuity.
fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::modular_conjugation;

    fn spec() -> FockSpec {
        FockSpec::square(8).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_state_is_a_basis_state() {
        let phi = supermultiplet_state(spec(), 1, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let expect = PureState::basis_state(spec(), BasisLabel::new(1, 0, Spin::Up)).unwrap();
        assert_eq!(phi.state(), &expect);
    }

    #[test]
    fn construction_guards() {
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!(matches!(
            supermultiplet_state(spec(), 0, c(inv_sqrt2, 0.0), c(inv_sqrt2, 0.0)),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            supermultiplet_state(spec(), 8, c(inv_sqrt2, 0.0), c(inv_sqrt2, 0.0)),
            Err(Error::LevelOutOfRange { .. })
        ));
        // no silent renormalization
        assert!(matches!(
            supermultiplet_state(spec(), 1, c(0.9, 0.0), c(0.9, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn maximal_and_product_concurrence() {
        let j = modular_conjugation(spec()).unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let maximal = supermultiplet_state(spec(), 1, c(inv_sqrt2, 0.0), c(inv_sqrt2, 0.0)).unwrap();
        assert!((concurrence_via_modular(&j, maximal.state()).unwrap() - 1.0).abs() <= 1e-12);
        let product = supermultiplet_state(spec(), 1, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(concurrence_via_modular(&j, product.state()).unwrap() <= 1e-15);
        assert!(concurrence_wootters(product.state()) <= 1e-15);
    }

    #[test]
    fn concurrence_is_twice_alpha_beta() {
        let j = modular_conjugation(spec()).unwrap();
        let phi = supermultiplet_state(spec(), 2, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let conc = concurrence_via_modular(&j, phi.state()).unwrap();
        assert!((conc - 0.96).abs() <= 1e-12);
        assert!((concurrence_wootters(phi.state()) - 0.96).abs() <= 1e-12);
    }

    #[test]
    fn phase_invariance() {
        let j = modular_conjugation(spec()).unwrap();
        let alpha = c(0.6, 0.0);
        let beta = c(0.8, 0.0);
        let base = supermultiplet_state(spec(), 3, alpha, beta).unwrap();
        let base_conc = concurrence_via_modular(&j, base.state()).unwrap();
        for phase in [0.3, 1.9, 4.4] {
            let rotated = supermultiplet_state(
                spec(),
                3,
                alpha * Complex64::new(0.0, phase).exp(),
                beta * Complex64::new(0.0, -0.7 * phase).exp(),
            )
            .unwrap();
            let conc = concurrence_via_modular(&j, rotated.state()).unwrap();
            assert!((conc - base_conc).abs() <= 1e-12);
        }
    }

    #[test]
    fn reduced_density_examples() {
        // product basis state
        let basis = PureState::basis_state(spec(), BasisLabel::new(2, 5, Spin::Up)).unwrap();
        let rho = spin_reduced_density(&basis);
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() <= 1e-14);
        assert!(rho.matrix()[(1, 1)].norm() <= 1e-14);
        assert!(rho.validate(1e-12));

        // maximally entangled doublet
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let maximal = supermultiplet_state(spec(), 1, c(inv_sqrt2, 0.0), c(inv_sqrt2, 0.0)).unwrap();
        let rho = spin_reduced_density(maximal.state());
        assert!((rho.matrix()[(0, 0)].re - 0.5).abs() <= 1e-14);
        assert!((rho.matrix()[(1, 1)].re - 0.5).abs() <= 1e-14);

        // (0.6, 0.8): diagonal weights, vanishing off-diagonals because the
        // two branches differ in both occupation labels
        let phi = supermultiplet_state(spec(), 2, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let rho = spin_reduced_density(phi.state());
        assert!((rho.matrix()[(0, 0)].re - 0.36).abs() <= 1e-14);
        assert!((rho.matrix()[(1, 1)].re - 0.64).abs() <= 1e-14);
        assert!(rho.matrix()[(0, 1)].norm() <= 1e-15);
        assert!(rho.validate(1e-12));
    }

    #[test]
    fn formation_examples() {
        assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
        assert!((entanglement_of_formation(1.0).unwrap() - 1.0).abs() <= 1e-15);
        // frozen high-precision value of H_bin(0.64)
        let e = entanglement_of_formation(0.96).unwrap();
        assert!((e - 0.942683189255492).abs() <= 1e-12);
        assert!(entanglement_of_formation(-0.1).is_err());
        assert!(entanglement_of_formation(1.1).is_err());
    }

    #[test]
    fn formation_is_strictly_increasing() {
        let mut prev = 0.0;
        for i in 1..=1000 {
            let cval = i as f64 / 1000.0 * 0.999;
            let e = entanglement_of_formation(cval).unwrap();
            assert!(e > prev, "not increasing at c = {cval}");
            prev = e;
        }
    }

    #[test]
    fn mirror_family_has_the_same_concurrence() {
        // swapping the roles of the two branches mirrors the side-B
        // doublet pattern; the expectation value is unchanged
        let j = modular_conjugation(spec()).unwrap();
        let a_side = supermultiplet_state(spec(), 2, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let b_side = supermultiplet_state(spec(), 2, c(0.0, 0.8), c(0.6, 0.0)).unwrap();
        let ca = concurrence_via_modular(&j, a_side.state()).unwrap();
        let cb = concurrence_via_modular(&j, b_side.state()).unwrap();
        assert!((ca - cb).abs() <= 1e-12);
        assert!((ca - 0.96).abs() <= 1e-12);
    }
}
