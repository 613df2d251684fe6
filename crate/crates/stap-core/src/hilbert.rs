//! Composite Hilbert-space bookkeeping: N five-level atoms ⊗ one truncated
//! cavity mode, with basis labels, state vectors, density matrices, and the
//! primitive operators (atomic transitions and cavity couplings) every other
//! module consumes.
//!
//! Flat-index convention (fixed so CSV output is stable): atom 0 is the most
//! significant digit (base 5), the photon number is the least significant
//! (base `n_max + 1`).

use crate::linalg::{c64, vec_dist, vec_inner, vec_norm, CMat, C64, CONE, CZERO};
use crate::{dim_err, param_err, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // no_std builds resolve float math through this trait
use num_traits::Float;

/// Number of levels per atom; the level scheme is |0⟩, |1⟩, |2⟩ (ground) and
/// |3⟩, |4⟩ (excited) throughout.
pub const ATOM_LEVELS: u8 = 5;

/// Shape of the composite space: `n_atoms` five-level atoms plus one cavity
/// mode truncated at `n_max` photons.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SpaceDescriptor {
    pub n_atoms: usize,
    pub n_max: usize,
}

impl SpaceDescriptor {
    pub fn new(n_atoms: usize, n_max: usize) -> Result<Self> {
        if n_atoms == 0 {
            return param_err("space needs at least one atom");
        }
        let mut dim: usize = n_max + 1;
        for _ in 0..n_atoms {
            dim = dim
                .checked_mul(5)
                .ok_or_else(|| Error::Parameter("space dimension overflows".into()))?;
        }
        if dim > 4_000_000 {
            return param_err(format!("dimension {dim} exceeds the desk-scale budget"));
        }
        Ok(SpaceDescriptor { n_atoms, n_max })
    }

    #[inline]
    pub fn photon_dim(&self) -> usize {
        self.n_max + 1
    }

    #[inline]
    pub fn dim(&self) -> usize {
        5usize.pow(self.n_atoms as u32) * self.photon_dim()
    }

    /// Flat index of a configuration, atom 0 most significant, photon least.
    pub fn flat_index(&self, atom_levels: &[u8], photons: usize) -> Result<usize> {
        if atom_levels.len() != self.n_atoms {
            return dim_err(format!(
                "label has {} atoms, space has {}",
                atom_levels.len(),
                self.n_atoms
            ));
        }
        if photons > self.n_max {
            return param_err(format!("photon number {photons} exceeds cutoff {}", self.n_max));
        }
        let mut idx = 0usize;
        for &l in atom_levels {
            if l >= ATOM_LEVELS {
                return param_err(format!("atom level {l} out of range 0..4"));
            }
            idx = idx * 5 + l as usize;
        }
        Ok(idx * self.photon_dim() + photons)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn label_of(&self, mut idx: usize) -> BasisLabel {
        debug_assert!(idx < self.dim());
        let photons = idx % self.photon_dim();
        idx /= self.photon_dim();
        let mut levels = vec![0u8; self.n_atoms];
        for k in (0..self.n_atoms).rev() {
            levels[k] = (idx % 5) as u8;
            idx /= 5;
        }
        BasisLabel { atom_levels: levels, photons }
    }

    /// All basis labels in flat-index order.
    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.dim()).map(move |i| self.label_of(i))
    }
}

/// One basis configuration: per-atom levels plus the photon number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub atom_levels: Vec<u8>,
    pub photons: usize,
}

impl BasisLabel {
    pub fn new(atom_levels: &[u8], photons: usize) -> Self {
        BasisLabel { atom_levels: atom_levels.to_vec(), photons }
    }

    /// Compact text form, e.g. `|12;0>` for levels (1,2) and vacuum.
    pub fn text(&self) -> String {
        let mut s = String::from("|");
        for &l in &self.atom_levels {
            s.push((b'0' + l) as char);
        }
        s.push(';');
        s.push_str(&format!("{}", self.photons));
        s.push('>');
        s
    }
}

impl core::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Dense complex state vector over a [`SpaceDescriptor`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub space: SpaceDescriptor,
    pub amps: Vec<C64>,
}

impl StateVector {
    pub fn zero(space: SpaceDescriptor) -> Self {
        StateVector { space, amps: vec![CZERO; space.dim()] }
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }

    /// ⟨self|other⟩ (self conjugated).
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.space != other.space {
            return dim_err("inner product across different spaces");
        }
        Ok(vec_inner(&self.amps, &other.amps))
    }

    pub fn population(&self, label: &BasisLabel) -> Result<f64> {
        let i = self.space.flat_index(&label.atom_levels, label.photons)?;
        Ok(self.amps[i].norm_sqr())
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Result<C64> {
        let i = self.space.flat_index(&label.atom_levels, label.photons)?;
        Ok(self.amps[i])
    }

    pub fn scale(&mut self, s: C64) {
        for a in self.amps.iter_mut() {
            *a *= s;
        }
    }

    pub fn add_scaled(&mut self, s: C64, other: &StateVector) {
        debug_assert_eq!(self.space, other.space);
        crate::linalg::vec_add_scaled(&mut self.amps, s, &other.amps);
    }

    pub fn normalized(mut self) -> Result<StateVector> {
        let n = self.norm();
        if n < 1e-300 {
            return param_err("cannot normalize the zero vector");
        }
        self.scale(c64(1.0 / n, 0.0));
        Ok(self)
    }

    pub fn distance_to(&self, other: &StateVector) -> f64 {
        vec_dist(&self.amps, &other.amps)
    }

    /// Total population on labels satisfying the predicate.
    pub fn population_where(&self, mut pred: impl FnMut(&BasisLabel) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(&self.space.label_of(*i)))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Unit basis ket for a label.
pub fn ket(space: SpaceDescriptor, label: &BasisLabel) -> Result<StateVector> {
    let i = space.flat_index(&label.atom_levels, label.photons)?;
    let mut v = StateVector::zero(space);
    v.amps[i] = CONE;
    Ok(v)
}

/// Dense operator over a [`SpaceDescriptor`].
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub space: SpaceDescriptor,
    pub mat: CMat,
}

impl OperatorMatrix {
    pub fn zeros(space: SpaceDescriptor) -> Self {
        OperatorMatrix { space, mat: CMat::zeros(space.dim(), space.dim()) }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.space != state.space {
            return dim_err("operator/state space mismatch");
        }
        Ok(StateVector { space: state.space, amps: self.mat.apply(&state.amps) })
    }

    pub fn dagger(&self) -> OperatorMatrix {
        OperatorMatrix { space: self.space, mat: self.mat.dagger() }
    }

    /// AB − BA.
    pub fn commutator(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.space != other.space {
            return dim_err("commutator across different spaces");
        }
        Ok(OperatorMatrix { space: self.space, mat: self.mat.commutator(&other.mat) })
    }
}

/// ⟨state|op|state⟩.
pub fn expectation(op: &OperatorMatrix, state: &StateVector) -> Result<C64> {
    let applied = op.apply(state)?;
    state.inner(&applied)
}

/// ⟨a|b⟩ convenience wrapper.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    a.inner(b)
}

/// op|state⟩ convenience wrapper.
pub fn matrix_apply(op: &OperatorMatrix, state: &StateVector) -> Result<StateVector> {
    op.apply(state)
}

/// Density matrix over a [`SpaceDescriptor`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    pub space: SpaceDescriptor,
    pub mat: CMat,
}

impl DensityMatrix {
    pub fn from_pure(state: &StateVector) -> Self {
        let n = state.space.dim();
        let mut mat = CMat::zeros(n, n);
        for i in 0..n {
            let ai = state.amps[i];
            if ai == CZERO {
                continue;
            }
            for j in 0..n {
                mat[(i, j)] = ai * state.amps[j].conj();
            }
        }
        DensityMatrix { space: state.space, mat }
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn population(&self, label: &BasisLabel) -> Result<f64> {
        let i = self.space.flat_index(&label.atom_levels, label.photons)?;
        Ok(self.mat[(i, i)].re)
    }

    /// ⟨target|ρ|target⟩ (real part; exact for Hermitian ρ).
    pub fn matrix_element(&self, target: &StateVector) -> Result<f64> {
        if self.space != target.space {
            return dim_err("density matrix/state space mismatch");
        }
        let applied = self.mat.apply(&target.amps);
        Ok(vec_inner(&target.amps, &applied).re)
    }

    /// Total population on labels satisfying the predicate.
    pub fn population_where(&self, mut pred: impl FnMut(&BasisLabel) -> bool) -> f64 {
        (0..self.space.dim())
            .filter(|i| pred(&self.space.label_of(*i)))
            .map(|i| self.mat[(i, i)].re)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// sparse transition terms
// ---------------------------------------------------------------------------

/// A real-amplitude transition operator stored as an entry list
/// (row, column, amplitude). This is the non-Hermitian "raw" half of a
/// Hamiltonian term; builders add the Hermitian conjugate.
///
/// All the operators used by the protocols (atomic |u⟩⟨l|, cavity a|3⟩⟨2|,
/// photon annihilation) have at most one nonzero per row and per column,
/// which keeps their application O(entries).
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionTerm {
    pub space: SpaceDescriptor,
    /// (row, col, amplitude) triples in ascending column order.
    pub entries: Vec<(usize, usize, f64)>,
}

impl TransitionTerm {
    /// |upper⟩⟨lower| on one atom, identity on everything else.
    pub fn atomic(space: SpaceDescriptor, atom: usize, upper: u8, lower: u8) -> Result<Self> {
        if atom >= space.n_atoms {
            return param_err(format!("atom index {atom} out of range"));
        }
        if upper >= ATOM_LEVELS || lower >= ATOM_LEVELS {
            return param_err("atom level out of range 0..4");
        }
        let mut entries = Vec::new();
        for col in 0..space.dim() {
            let mut label = space.label_of(col);
            if label.atom_levels[atom] == lower {
                label.atom_levels[atom] = upper;
                let row = space.flat_index(&label.atom_levels, label.photons)?;
                entries.push((row, col, 1.0));
            }
        }
        Ok(TransitionTerm { space, entries })
    }

    /// Cavity absorption on one atom: a·|3⟩⟨2| maps |2, n+1⟩ → √(n+1)|3, n⟩.
    ///
    /// With `n_max = 0` the operator is identically zero (the builder that
    /// consumes it reports a diagnostic warning).
    pub fn cavity(space: SpaceDescriptor, atom: usize) -> Result<Self> {
        if atom >= space.n_atoms {
            return param_err(format!("atom index {atom} out of range"));
        }
        let mut entries = Vec::new();
        for col in 0..space.dim() {
            let mut label = space.label_of(col);
            if label.atom_levels[atom] == 2 && label.photons >= 1 {
                label.atom_levels[atom] = 3;
                let row = space.flat_index(&label.atom_levels, label.photons - 1)?;
                entries.push((row, col, (label.photons as f64).sqrt()));
            }
        }
        Ok(TransitionTerm { space, entries })
    }

    /// Photon annihilation a: |n⟩ → √n|n−1⟩, identity on the atoms.
    pub fn photon_annihilation(space: SpaceDescriptor) -> Self {
        let mut entries = Vec::new();
        for col in 0..space.dim() {
            let label = space.label_of(col);
            if label.photons >= 1 {
                let row = space
                    .flat_index(&label.atom_levels, label.photons - 1)
                    .expect("label is in range");
                entries.push((row, col, (label.photons as f64).sqrt()));
            }
        }
        TransitionTerm { space, entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every row and every column carries at most one entry (true for all
    /// protocol operators; relied on by the Lindblad integrator).
    pub fn has_unique_rows_and_cols(&self) -> bool {
        let mut rows: Vec<usize> = self.entries.iter().map(|e| e.0).collect();
        let mut cols: Vec<usize> = self.entries.iter().map(|e| e.1).collect();
        rows.sort_unstable();
        cols.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1]) && cols.windows(2).all(|w| w[0] != w[1])
    }

    /// Dense matrix of the bare (non-Hermitian) term.
    pub fn matrix(&self) -> OperatorMatrix {
        let mut op = OperatorMatrix::zeros(self.space);
        for &(r, c, a) in &self.entries {
            op.mat[(r, c)] += c64(a, 0.0);
        }
        op
    }

    /// out += scale · T · v
    #[inline]
    pub fn apply_accumulate(&self, scale: f64, v: &[C64], out: &mut [C64]) {
        for &(r, c, a) in &self.entries {
            let s = scale * a;
            out[r] += C64 { re: s * v[c].re, im: s * v[c].im };
        }
    }

    /// out += scale · T† · v
    #[inline]
    pub fn apply_dagger_accumulate(&self, scale: f64, v: &[C64], out: &mut [C64]) {
        for &(r, c, a) in &self.entries {
            let s = scale * a;
            out[c] += C64 { re: s * v[r].re, im: s * v[r].im };
        }
    }
}

/// Spec-level wrapper: dense |upper⟩⟨lower| on `atom`.
pub fn transition_op(
    space: SpaceDescriptor,
    atom: usize,
    upper: u8,
    lower: u8,
) -> Result<OperatorMatrix> {
    Ok(TransitionTerm::atomic(space, atom, upper, lower)?.matrix())
}

/// Spec-level wrapper: dense a·|3⟩⟨2| on `atom` (zero when `n_max = 0`).
pub fn cavity_coupling_op(space: SpaceDescriptor, atom: usize) -> Result<OperatorMatrix> {
    Ok(TransitionTerm::cavity(space, atom)?.matrix())
}
