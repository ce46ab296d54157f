//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::fock::{BasisLabel, FockSpec};

/// Domain errors raised by constructors and operations.
///
/// Every failure here is a precondition violation; no operation fails
/// spuriously once its inputs are in range.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A supermultiplet needs at least two levels per mode.
    #[error("cutoffs ({na_cut}, {nb_cut}) too small: both modes need at least 2 levels")]
    CutoffTooSmall { na_cut: usize, nb_cut: usize },

    /// Occupation numbers outside the truncation window.
    #[error("label {label:?} out of range for cutoffs ({na_cut}, {nb_cut})")]
    LabelOutOfRange {
        label: BasisLabel,
        na_cut: usize,
        nb_cut: usize,
    },

    /// Flat basis index outside `[0, total_dim)`.
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Two values built over different truncations were combined.
    #[error("spec mismatch: ({0:?}) vs ({1:?})")]
    SpecMismatch(FockSpec, FockSpec),

    /// Interior margin must leave at least one retained level per mode.
    #[error("margin {margin} too large for cutoffs ({na_cut}, {nb_cut})")]
    MarginTooLarge {
        margin: usize,
        na_cut: usize,
        nb_cut: usize,
    },

    /// The occupation swap of the modular conjugation needs `na_cut == nb_cut`.
    #[error("operation needs a square composite space, got cutoffs ({na_cut}, {nb_cut})")]
    NonSquareSpace { na_cut: usize, nb_cut: usize },

    /// A state vector failed the unit-norm contract.
    #[error("amplitude vector has norm {norm}, expected 1 within {tol}")]
    NotNormalized { norm: f64, tol: f64 },

    /// A matrix of the wrong shape was handed to a constructor.
    #[error("matrix shape ({rows}, {cols}) does not match total dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },

    /// Scalar parameter outside its admissible range.
    #[error("parameter `{name}` = {value} out of domain: {requirement}")]
    ParameterOutOfDomain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// Level index outside the range supported by the truncation.
    #[error("level k = {k} out of range: {requirement}")]
    LevelOutOfRange { k: usize, requirement: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
