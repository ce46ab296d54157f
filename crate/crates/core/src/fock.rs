//! Truncated two-mode Fock space with a spin-1/2 factor.
//!
//! The carrier space is `F_a ⊗ F_b ⊗ C²`: two bosonic modes truncated at
//! `na_cut` and `nb_cut` occupation quanta, tensored with a single qubit.
//! A basis state is labeled `(n, m, s)` and stored at the flat index
//! `(n·nb_cut + m)·2 + s` with `s = 0` for spin up and `s = 1` for spin
//! down — spin fastest, then the b occupation, then the a occupation. This
//! ordering is a file-format contract: the modular conjugation permutation
//! and all serialized dumps rely on it.
//!
//! Truncation convention: raising operators annihilate the top occupation
//! state instead of erroring, so every operator is a total map on the
//! truncated space. Identity checks that would be spoiled by the clipped
//! edge are restored exactly by restricting to the interior subspace, see
//! [`interior_projector`]: a ladder chain of degree ≤ `margin` starting
//! inside the interior never reaches the edge.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Unit-norm tolerance for state construction.
pub const NORM_TOL: f64 = 1e-12;

/// Spin-1/2 basis orientation. `Up` is the `σ_z = +1` eigenvector `(1, 0)`,
/// `Down` is `σ_z = -1` ↔ `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// The `σ_z` eigenvalue, `+1` or `-1`.
    pub fn sigma_z(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub(crate) fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub(crate) fn from_offset(s: usize) -> Spin {
        if s == 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Spin::Up => write!(f, "up"),
            Spin::Down => write!(f, "down"),
        }
    }
}

/// Occupation-plus-spin label `(n, m, s)` of one basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    /// Mode-a occupation.
    pub n: usize,
    /// Mode-b occupation.
    pub m: usize,
    pub spin: Spin,
}

impl BasisLabel {
    pub fn new(n: usize, m: usize, spin: Spin) -> Self {
        BasisLabel { n, m, spin }
    }
}

/// Truncation cutoffs and the basis-ordering contract of the joint space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockSpec {
    na_cut: usize,
    nb_cut: usize,
}

impl FockSpec {
    /// New spec with `na_cut` levels in mode a and `nb_cut` in mode b.
    /// Both cutoffs must be at least 2.
    pub fn new(na_cut: usize, nb_cut: usize) -> Result<Self> {
        if na_cut < 2 || nb_cut < 2 {
            return Err(Error::CutoffTooSmall { na_cut, nb_cut });
        }
        Ok(FockSpec { na_cut, nb_cut })
    }

    /// Square spec, `na_cut == nb_cut == cut`.
    pub fn square(cut: usize) -> Result<Self> {
        FockSpec::new(cut, cut)
    }

    pub fn na_cut(&self) -> usize {
        self.na_cut
    }

    pub fn nb_cut(&self) -> usize {
        self.nb_cut
    }

    pub fn min_cut(&self) -> usize {
        self.na_cut.min(self.nb_cut)
    }

    pub fn is_square(&self) -> bool {
        self.na_cut == self.nb_cut
    }

    /// Dimension of the joint space, `na_cut · nb_cut · 2`.
    pub fn total_dim(&self) -> usize {
        self.na_cut * self.nb_cut * 2
    }

    /// Flat index of a label: `(n·nb_cut + m)·2 + s`, spin fastest.
    pub fn index(&self, label: BasisLabel) -> Result<usize> {
        if label.n >= self.na_cut || label.m >= self.nb_cut {
            return Err(Error::LabelOutOfRange {
                label,
                na_cut: self.na_cut,
                nb_cut: self.nb_cut,
            });
        }
        Ok((label.n * self.nb_cut + label.m) * 2 + label.spin.offset())
    }

    /// Inverse of [`FockSpec::index`].
    pub fn label(&self, index: usize) -> Result<BasisLabel> {
        if index >= self.total_dim() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.total_dim(),
            });
        }
        let s = index % 2;
        let rest = index / 2;
        Ok(BasisLabel {
            n: rest / self.nb_cut,
            m: rest % self.nb_cut,
            spin: Spin::from_offset(s),
        })
    }

    /// All labels in flat-index order.
    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.total_dim()).map(move |i| self.label(i).expect("index in range"))
    }

    /// Whether a label survives an interior restriction of the given margin.
    pub fn is_interior(&self, label: BasisLabel, margin: usize) -> bool {
        label.n + margin < self.na_cut && label.m + margin < self.nb_cut
    }

    /// Flat indices of the interior subspace.
    pub fn interior_indices(&self, margin: usize) -> Result<Vec<usize>> {
        self.check_margin(margin)?;
        Ok(self
            .labels()
            .filter(|&l| self.is_interior(l, margin))
            .map(|l| self.index(l).expect("label in range"))
            .collect())
    }

    pub(crate) fn check_margin(&self, margin: usize) -> Result<()> {
        if margin >= self.min_cut() {
            return Err(Error::MarginTooLarge {
                margin,
                na_cut: self.na_cut,
                nb_cut: self.nb_cut,
            });
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &FockSpec) -> Result<()> {
        if self != other {
            return Err(Error::SpecMismatch(*self, *other));
        }
        Ok(())
    }
}

/// Dense complex operator on the joint space, tagged with its spec.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp {
    spec: FockSpec,
    matrix: DMatrix<Complex64>,
}

impl LinearOp {
    /// Wrap an explicit matrix; the shape must match `spec.total_dim()`.
    pub fn new(spec: FockSpec, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = spec.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::ShapeMismatch {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                dim,
            });
        }
        Ok(LinearOp { spec, matrix })
    }

    pub fn zeros(spec: FockSpec) -> Self {
        let dim = spec.total_dim();
        LinearOp {
            spec,
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(spec: FockSpec) -> Self {
        let dim = spec.total_dim();
        LinearOp {
            spec,
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// Build an operator column by column from its action on basis states:
    /// `action(label)` lists the `(target, amplitude)` pairs of the image of
    /// `|label⟩`. Targets outside the truncation are clipped to zero.
    pub fn from_action<F>(spec: FockSpec, action: F) -> Self
    where
        F: Fn(BasisLabel) -> Vec<(BasisLabel, Complex64)>,
    {
        let dim = spec.total_dim();
        let mut matrix = DMatrix::zeros(dim, dim);
        for col_label in spec.labels() {
            let col = spec.index(col_label).expect("label in range");
            for (row_label, amp) in action(col_label) {
                if let Ok(row) = spec.index(row_label) {
                    matrix[(row, col)] += amp;
                }
            }
        }
        LinearOp { spec, matrix }
    }

    /// Diagonal operator from a real function of the basis label.
    pub fn diagonal_real<F>(spec: FockSpec, f: F) -> Self
    where
        F: Fn(BasisLabel) -> f64,
    {
        LinearOp::diagonal_complex(spec, |l| Complex64::new(f(l), 0.0))
    }

    /// Diagonal operator from a complex function of the basis label.
    pub fn diagonal_complex<F>(spec: FockSpec, f: F) -> Self
    where
        F: Fn(BasisLabel) -> Complex64,
    {
        let dim = spec.total_dim();
        let mut matrix = DMatrix::zeros(dim, dim);
        for label in spec.labels() {
            let i = spec.index(label).expect("label in range");
            matrix[(i, i)] = f(label);
        }
        LinearOp { spec, matrix }
    }

    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.spec.total_dim()
    }

    pub fn adjoint(&self) -> LinearOp {
        LinearOp {
            spec: self.spec,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn entrywise_conjugate(&self) -> LinearOp {
        LinearOp {
            spec: self.spec,
            matrix: self.matrix.map(|z| z.conj()),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> LinearOp {
        LinearOp {
            spec: self.spec,
            matrix: self.matrix.map(|z| z * factor),
        }
    }

    pub fn scaled_real(&self, factor: f64) -> LinearOp {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// Checked product.
    pub fn mul(&self, rhs: &LinearOp) -> Result<LinearOp> {
        self.spec.check_same(&rhs.spec)?;
        Ok(LinearOp {
            spec: self.spec,
            matrix: linalg::mat_mul(&self.matrix, &rhs.matrix),
        })
    }

    /// Checked sum.
    pub fn add(&self, rhs: &LinearOp) -> Result<LinearOp> {
        self.spec.check_same(&rhs.spec)?;
        Ok(LinearOp {
            spec: self.spec,
            matrix: &self.matrix + &rhs.matrix,
        })
    }

    /// Checked difference.
    pub fn sub(&self, rhs: &LinearOp) -> Result<LinearOp> {
        self.spec.check_same(&rhs.spec)?;
        Ok(LinearOp {
            spec: self.spec,
            matrix: &self.matrix - &rhs.matrix,
        })
    }

    /// Apply to a raw amplitude vector.
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        linalg::mat_vec(&self.matrix, v)
    }

    /// Apply to a state, returning the raw (generally unnormalized) image.
    pub fn apply_state(&self, state: &PureState) -> Result<DVector<Complex64>> {
        self.spec.check_same(&state.spec)?;
        Ok(self.apply(state.amplitudes()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value. This is the residual metric of every
    /// verification report: basis independent, and directly the worst-case
    /// error the operator can inflict on a unit state.
    pub fn spectral_norm(&self) -> f64 {
        linalg::spectral_norm(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let diff = &self.matrix - self.matrix.adjoint();
        diff.iter().all(|z| z.norm() <= tol)
    }

    /// `P · X · P` for the interior projector of the given margin, realized
    /// by zeroing every row and column that touches the truncation edge.
    pub fn compressed_interior(&self, margin: usize) -> Result<LinearOp> {
        self.spec.check_margin(margin)?;
        let keep: Vec<bool> = self
            .spec
            .labels()
            .map(|l| self.spec.is_interior(l, margin))
            .collect();
        let dim = self.dim();
        let mut matrix = self.matrix.clone();
        for j in 0..dim {
            for i in 0..dim {
                if !(keep[i] && keep[j]) {
                    matrix[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        Ok(LinearOp {
            spec: self.spec,
            matrix,
        })
    }

    /// Interior residual in one step: `‖P X P‖` (spectral norm).
    pub fn interior_residual(&self, margin: usize) -> Result<f64> {
        Ok(self.compressed_interior(margin)?.spectral_norm())
    }

    /// Principal submatrix on an explicit flat-index set, e.g. a fixed
    /// spectator block for a small eigensolve.
    pub fn submatrix(&self, indices: &[usize]) -> DMatrix<Complex64> {
        linalg::principal_submatrix(&self.matrix, indices)
    }

    /// Eigenvalues, assuming `self` is Hermitian; ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }
}

/// `AB - BA`.
pub fn commutator(a: &LinearOp, b: &LinearOp) -> Result<LinearOp> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `AB + BA`.
pub fn anticommutator(a: &LinearOp, b: &LinearOp) -> Result<LinearOp> {
    a.mul(b)?.add(&b.mul(a)?)
}

/// Unit-norm state on the joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    spec: FockSpec,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wrap amplitudes that are already unit norm (within [`NORM_TOL`]).
    pub fn new(spec: FockSpec, amplitudes: DVector<Complex64>) -> Result<Self> {
        let dim = spec.total_dim();
        if amplitudes.len() != dim {
            return Err(Error::ShapeMismatch {
                rows: amplitudes.len(),
                cols: 1,
                dim,
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(PureState { spec, amplitudes })
    }

    /// Normalize a raw vector into a state. Errors on (near-)zero input.
    pub fn normalized(spec: FockSpec, raw: DVector<Complex64>) -> Result<Self> {
        let dim = spec.total_dim();
        if raw.len() != dim {
            return Err(Error::ShapeMismatch {
                rows: raw.len(),
                cols: 1,
                dim,
            });
        }
        let norm = raw.norm();
        if norm <= NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(PureState {
            spec,
            amplitudes: raw / Complex64::new(norm, 0.0),
        })
    }

    /// The basis state `|n, m, s⟩`.
    pub fn basis_state(spec: FockSpec, label: BasisLabel) -> Result<Self> {
        let idx = spec.index(label)?;
        let mut amplitudes = DVector::zeros(spec.total_dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(PureState { spec, amplitudes })
    }

    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: BasisLabel) -> Result<Complex64> {
        Ok(self.amplitudes[self.spec.index(label)?])
    }

    /// `⟨self | other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        self.spec.check_same(&other.spec)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// Annihilation operator of mode a: `a|n,m,s⟩ = √n |n-1,m,s⟩`.
pub fn ladder_a(spec: FockSpec) -> LinearOp {
    LinearOp::from_action(spec, |l| {
        if l.n == 0 {
            vec![]
        } else {
            vec![(
                BasisLabel::new(l.n - 1, l.m, l.spin),
                Complex64::new((l.n as f64).sqrt(), 0.0),
            )]
        }
    })
}

/// Creation operator of mode a; the top row truncates to zero.
pub fn ladder_a_dag(spec: FockSpec) -> LinearOp {
    LinearOp::from_action(spec, |l| {
        vec![(
            BasisLabel::new(l.n + 1, l.m, l.spin),
            Complex64::new((l.n as f64 + 1.0).sqrt(), 0.0),
        )]
    })
}

/// Annihilation operator of mode b.
pub fn ladder_b(spec: FockSpec) -> LinearOp {
    LinearOp::from_action(spec, |l| {
        if l.m == 0 {
            vec![]
        } else {
            vec![(
                BasisLabel::new(l.n, l.m - 1, l.spin),
                Complex64::new((l.m as f64).sqrt(), 0.0),
            )]
        }
    })
}

/// Creation operator of mode b.
pub fn ladder_b_dag(spec: FockSpec) -> LinearOp {
    LinearOp::from_action(spec, |l| {
        vec![(
            BasisLabel::new(l.n, l.m + 1, l.spin),
            Complex64::new((l.m as f64 + 1.0).sqrt(), 0.0),
        )]
    })
}

/// Which Pauli operator to embed on the spin factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    /// `σ_z = diag(+1, -1)`.
    Z,
    /// `σ_+`: maps down to up.
    Plus,
    /// `σ_-`: maps up to down.
    Minus,
}

/// `I_a ⊗ I_b ⊗ σ` on the joint space.
pub fn pauli(spec: FockSpec, which: Pauli) -> LinearOp {
    match which {
        Pauli::Z => LinearOp::diagonal_real(spec, |l| l.spin.sigma_z()),
        Pauli::Plus => LinearOp::from_action(spec, |l| match l.spin {
            Spin::Down => vec![(
                BasisLabel::new(l.n, l.m, Spin::Up),
                Complex64::new(1.0, 0.0),
            )],
            Spin::Up => vec![],
        }),
        Pauli::Minus => LinearOp::from_action(spec, |l| match l.spin {
            Spin::Up => vec![(
                BasisLabel::new(l.n, l.m, Spin::Down),
                Complex64::new(1.0, 0.0),
            )],
            Spin::Down => vec![],
        }),
    }
}

/// Orthogonal projector onto the interior subspace
/// `span{ |n,m,s⟩ : n < na_cut - margin, m < nb_cut - margin }`.
///
/// An operator identity of ladder degree ≤ `margin` holds exactly on this
/// subspace: no chain of that length can reach the truncation edge.
pub fn interior_projector(spec: FockSpec, margin: usize) -> Result<LinearOp> {
    spec.check_margin(margin)?;
    Ok(LinearOp::diagonal_real(spec, |l| {
        if spec.is_interior(l, margin) {
            1.0
        } else {
            0.0
        }
    }))
}
