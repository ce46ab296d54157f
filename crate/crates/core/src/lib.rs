//! Supersymmetric Landau levels on truncated Fock spaces, their modular
//! structure, and a residual-based verification engine.
//!
//! The carrier space is `F_a ⊗ F_b ⊗ C²`: two truncated bosonic modes and
//! one spin. On it live two mirrored supersymmetric systems (`Q_a = a⊗σ_-`
//! and `Q_b = b⊗σ_+` with Hamiltonians `{Q, Q†}`), the modular conjugation
//! `J` that exchanges them, the modular operator `Δ = e^{-β(H_a - H_b)}`
//! with its flow `Δ^{it}`, and the Tomita operator `S = JΔ^{1/2}`. The
//! entanglement module evaluates concurrence as the modular expectation
//! value `|⟨Φ|J|Φ⟩|` with an independent partial-trace oracle, and the
//! models module applies the algebra to planar Dirac fermions and the
//! Jaynes-Cummings pair.
//!
//! Every structural identity is checkable as a numerical residual through
//! the `verify_*` suites, which return [`report::VerificationReport`]
//! values with per-check residuals, tolerances, and verdicts.
//!
//! ```
//! use susy_modular::fock::FockSpec;
//! use susy_modular::susy::{build_system, Side};
//! use susy_modular::report::RunConfig;
//! use susy_modular::susy::verify_superalgebra;
//!
//! let config = RunConfig { na_cut: 8, nb_cut: 8, ..RunConfig::default() };
//! let spec = config.spec().unwrap();
//! let report = verify_superalgebra(
//!     &build_system(spec, Side::A),
//!     &build_system(spec, Side::B),
//!     &config,
//! ).unwrap();
//! assert!(report.overall_pass);
//! ```

pub mod entanglement;
pub mod error;
pub mod fock;
mod linalg;
pub mod models;
pub mod modular;
pub mod report;
pub mod susy;

pub use error::{Error, Result};
pub use fock::{BasisLabel, FockSpec, LinearOp, Pauli, PureState, Spin};
pub use modular::{AntiLinearOp, ModularData};
pub use report::{CheckEntry, RunConfig, VerificationReport};
pub use susy::{Side, SusySystem};

// The guide's code fences run as doctests so the book cannot drift from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fock-spaces.md")]
    mod fock_spaces {}
    #[doc = include_str!("../../../book/src/susy-landau.md")]
    mod susy_landau {}
    #[doc = include_str!("../../../book/src/modular-structure.md")]
    mod modular_structure {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/applications.md")]
    mod applications {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
