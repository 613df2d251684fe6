//! Hamiltonian assembly for the gate protocols: time-dependent drive terms
//! over sparse atomic transitions, static cavity couplings, collective-dark-
//! subspace (quantum Zeno) reduction, and single-atom dark states.
//!
//! All Hamiltonians have the form
//!   H(t) = Σ_d  Ω_d(t) (T_d + T_d†)  +  Σ_a  g_a (C_a + C_a†)
//! with real envelopes Ω_d, atomic transitions T_d = |upper⟩⟨lower|, and
//! cavity couplings C_a = a·|3⟩⟨2| on atom a.

use crate::hilbert::{BasisLabel, SpaceDescriptor, StateVector, TransitionTerm};
use crate::invariant::PulsePair;
use crate::linalg::{c64, hermitian_eigen, vec_norm, CMat, C64, CZERO};
use crate::{dim_err, param_err, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // no_std builds resolve float math through this trait
use num_traits::Float;

/// Real scalar envelope for a drive term.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Pulse {
    Zero,
    Constant(f64),
    /// amplitude · sin(rate·t + phase)
    Sine { amplitude: f64, rate: f64, phase: f64 },
    /// amplitude · cos(rate·t + phase)
    Cosine { amplitude: f64, rate: f64, phase: f64 },
}

impl Pulse {
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Pulse::Zero => 0.0,
            Pulse::Constant(c) => c,
            Pulse::Sine { amplitude, rate, phase } => amplitude * (rate * t + phase).sin(),
            Pulse::Cosine { amplitude, rate, phase } => amplitude * (rate * t + phase).cos(),
        }
    }

    /// Upper bound on |value| over all times.
    #[inline]
    pub fn peak(&self) -> f64 {
        match *self {
            Pulse::Zero => 0.0,
            Pulse::Constant(c) => c.abs(),
            Pulse::Sine { amplitude, .. } | Pulse::Cosine { amplitude, .. } => amplitude.abs(),
        }
    }
}

/// The two envelopes of a shortcut pulse pair as [`Pulse`] values
/// (first element drives the sine role unless the pair is swapped).
pub fn drives_from_pair(pair: &PulsePair) -> (Pulse, Pulse) {
    let sine = Pulse::Sine { amplitude: pair.amplitude, rate: pair.rate, phase: pair.beta_start };
    let cosine =
        Pulse::Cosine { amplitude: pair.amplitude, rate: pair.rate, phase: pair.beta_start };
    if pair.swapped {
        (cosine, sine)
    } else {
        (sine, cosine)
    }
}

/// Level pairs (lower, upper) a drive may address. |4⟩ is the cavity-free
/// excited level; |3⟩ is the cavity-coupled one.
pub const ALLOWED_DRIVE_PAIRS: [(u8, u8); 4] = [(1, 4), (2, 4), (1, 3), (0, 3)];

/// One laser drive: envelope × (|upper⟩⟨lower| on `atom` + h.c.).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DriveSpec {
    pub atom: usize,
    pub upper: u8,
    pub lower: u8,
    pub pulse: Pulse,
}

impl DriveSpec {
    pub fn new(atom: usize, upper: u8, lower: u8, pulse: Pulse) -> Result<Self> {
        if !ALLOWED_DRIVE_PAIRS.contains(&(lower, upper)) {
            return param_err(format!(
                "drive pair (lower={lower}, upper={upper}) is not one of the level scheme's allowed transitions"
            ));
        }
        Ok(DriveSpec { atom, upper, lower, pulse })
    }
}

/// Static cavity coupling of strength `g` on one atom.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CouplingSpec {
    pub atom: usize,
    pub g: f64,
}

impl CouplingSpec {
    pub fn new(atom: usize, g: f64) -> Result<Self> {
        if !(g >= 0.0 && g.is_finite()) {
            return param_err(format!("coupling strength {g} must be finite and nonnegative"));
        }
        Ok(CouplingSpec { atom, g })
    }
}

/// Anything the integrators can treat as H(t).
pub trait Hamiltonian {
    fn dim(&self) -> usize;
    /// out ← H(t)·v  (out is overwritten).
    fn apply_into(&self, t: f64, v: &[C64], out: &mut [C64]);
    /// Dense H(t).
    fn evaluate(&self, t: f64) -> CMat;
}

/// Sparse-term Hamiltonian over a composite space.
#[derive(Clone, Debug)]
pub struct HamiltonianModel {
    pub space: SpaceDescriptor,
    drives: Vec<(Pulse, TransitionTerm)>,
    statics: Vec<(f64, TransitionTerm)>,
    pub warnings: Vec<String>,
}

impl HamiltonianModel {
    pub fn new(space: SpaceDescriptor) -> Self {
        HamiltonianModel { space, drives: Vec::new(), statics: Vec::new(), warnings: Vec::new() }
    }

    pub fn add_drive(&mut self, spec: DriveSpec) -> Result<()> {
        let term = TransitionTerm::atomic(self.space, spec.atom, spec.upper, spec.lower)?;
        self.drives.push((spec.pulse, term));
        Ok(())
    }

    pub fn add_coupling(&mut self, spec: CouplingSpec) -> Result<()> {
        let term = TransitionTerm::cavity(self.space, spec.atom)?;
        if term.is_empty() {
            self.warnings.push(format!(
                "cavity coupling on atom {} is identically zero (photon cutoff n_max = {})",
                spec.atom, self.space.n_max
            ));
        }
        self.statics.push((spec.g, term));
        Ok(())
    }

    pub fn drives(&self) -> &[(Pulse, TransitionTerm)] {
        &self.drives
    }

    pub fn statics(&self) -> &[(f64, TransitionTerm)] {
        &self.statics
    }

    /// Largest drive envelope bound (for strong-coupling advisories).
    pub fn peak_drive(&self) -> f64 {
        self.drives.iter().map(|(p, _)| p.peak()).fold(0.0, f64::max)
    }
}

impl Hamiltonian for HamiltonianModel {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn apply_into(&self, t: f64, v: &[C64], out: &mut [C64]) {
        for o in out.iter_mut() {
            *o = CZERO;
        }
        for (pulse, term) in &self.drives {
            let val = pulse.value(t);
            if val != 0.0 {
                term.apply_accumulate(val, v, out);
                term.apply_dagger_accumulate(val, v, out);
            }
        }
        for (g, term) in &self.statics {
            if *g != 0.0 {
                term.apply_accumulate(*g, v, out);
                term.apply_dagger_accumulate(*g, v, out);
            }
        }
    }

    fn evaluate(&self, t: f64) -> CMat {
        let n = self.dim();
        let mut h = CMat::zeros(n, n);
        for (pulse, term) in &self.drives {
            let val = pulse.value(t);
            for &(r, c, a) in &term.entries {
                h[(r, c)] += c64(val * a, 0.0);
                h[(c, r)] += c64(val * a, 0.0);
            }
        }
        for (g, term) in &self.statics {
            for &(r, c, a) in &term.entries {
                h[(r, c)] += c64(g * a, 0.0);
                h[(c, r)] += c64(g * a, 0.0);
            }
        }
        h
    }
}

/// Dense Hamiltonian with scalar envelopes: H(t) = Σ Ω_d(t)·M_d + S.
/// Used for Zeno-reduced effective dynamics.
#[derive(Clone, Debug)]
pub struct DenseModel {
    pub drives: Vec<(Pulse, CMat)>,
    pub static_mat: CMat,
}

impl DenseModel {
    pub fn new(dim: usize) -> Self {
        DenseModel { drives: Vec::new(), static_mat: CMat::zeros(dim, dim) }
    }
}

impl Hamiltonian for DenseModel {
    fn dim(&self) -> usize {
        self.static_mat.n_rows
    }

    fn apply_into(&self, t: f64, v: &[C64], out: &mut [C64]) {
        let n = self.dim();
        for o in out.iter_mut() {
            *o = CZERO;
        }
        for (pulse, mat) in &self.drives {
            let val = pulse.value(t);
            if val == 0.0 {
                continue;
            }
            for r in 0..n {
                let row = mat.row(r);
                let mut acc = CZERO;
                for c in 0..n {
                    let m = row[c];
                    if m != CZERO {
                        acc += m * v[c];
                    }
                }
                out[r] += c64(val, 0.0) * acc;
            }
        }
        for r in 0..n {
            let row = self.static_mat.row(r);
            let mut acc = CZERO;
            for c in 0..n {
                let m = row[c];
                if m != CZERO {
                    acc += m * v[c];
                }
            }
            out[r] += acc;
        }
    }

    fn evaluate(&self, t: f64) -> CMat {
        let mut h = self.static_mat.clone();
        for (pulse, mat) in &self.drives {
            h.add_scaled(c64(pulse.value(t), 0.0), mat);
        }
        h
    }
}

// ---------------------------------------------------------------------------
// protocol step builders
// ---------------------------------------------------------------------------

/// Single-atom shortcut model: Ω₁ on |1⟩↔|4⟩ and Ω₂ on |2⟩↔|4⟩ of a lone
/// atom with no cavity excitation.
pub fn one_qubit_hamiltonian(pulses: &PulsePair) -> Result<HamiltonianModel> {
    let space = SpaceDescriptor::new(1, 0)?;
    let (p1, p2) = drives_from_pair(pulses);
    let mut m = HamiltonianModel::new(space);
    m.add_drive(DriveSpec::new(0, 4, 1, p1)?)?;
    m.add_drive(DriveSpec::new(0, 4, 2, p2)?)?;
    Ok(m)
}

/// Population-transfer step: the shortcut pair drives |1⟩↔|4⟩ / |2⟩↔|4⟩ on
/// one atom of a composite space; every atom keeps its cavity coupling `g`
/// (inert for cavity-free inputs, but part of the physical model).
pub fn transfer_hamiltonian(
    space: SpaceDescriptor,
    atom: usize,
    pulses: &PulsePair,
    g: f64,
) -> Result<HamiltonianModel> {
    let (p1, p2) = drives_from_pair(pulses);
    let mut m = HamiltonianModel::new(space);
    m.add_drive(DriveSpec::new(atom, 4, 1, p1)?)?;
    m.add_drive(DriveSpec::new(atom, 4, 2, p2)?)?;
    for a in 0..space.n_atoms {
        m.add_coupling(CouplingSpec::new(a, g)?)?;
    }
    Ok(m)
}

/// Collectively driven step: the sine envelope drives |lower⟩↔|3⟩ on each of
/// `sine_atoms`, the cosine envelope on `cosine_atom`, with cavity coupling
/// `g` on every atom of the space.
pub fn zeno_step_hamiltonian(
    space: SpaceDescriptor,
    sine_atoms: &[usize],
    cosine_atom: usize,
    driven_lower_level: u8,
    pulses: &PulsePair,
    g: f64,
) -> Result<HamiltonianModel> {
    if sine_atoms.is_empty() {
        return param_err("at least one sine-driven atom is required");
    }
    if sine_atoms.contains(&cosine_atom) {
        return param_err("the cosine-driven atom cannot also carry the sine drive");
    }
    if !(driven_lower_level == 0 || driven_lower_level == 1) {
        return param_err("the cavity-assisted drives act on lower level 0 or 1 only");
    }
    let (p_sin, p_cos) = drives_from_pair(pulses);
    let mut m = HamiltonianModel::new(space);
    for &a in sine_atoms {
        m.add_drive(DriveSpec::new(a, 3, driven_lower_level, p_sin)?)?;
    }
    m.add_drive(DriveSpec::new(cosine_atom, 3, driven_lower_level, p_cos)?)?;
    for a in 0..space.n_atoms {
        m.add_coupling(CouplingSpec::new(a, g)?)?;
    }
    Ok(m)
}

/// Two-atom collectively driven step (sine on `atom_a`, cosine on `atom_b`).
pub fn pair_step_hamiltonian(
    space: SpaceDescriptor,
    atom_a: usize,
    atom_b: usize,
    pulses: &PulsePair,
    driven_lower_level: u8,
    g: f64,
) -> Result<HamiltonianModel> {
    if atom_a == atom_b {
        return param_err("pair step needs two distinct atoms");
    }
    zeno_step_hamiltonian(space, &[atom_a], atom_b, driven_lower_level, pulses, g)
}

// ---------------------------------------------------------------------------
// Zeno reduction
// ---------------------------------------------------------------------------

/// Dynamics restricted to the decoupled (zero-coupling-eigenvalue) subspace
/// of the sector reachable from one initial configuration.
#[derive(Clone, Debug)]
pub struct ZenoReduction {
    pub space: SpaceDescriptor,
    /// Flat indices of the reachable sector, ascending.
    pub sector: Vec<usize>,
    /// Orthonormal basis of the zero-eigenvalue subspace (full-space vectors),
    /// ordered by Gram–Schmidt over the sector's basis kets in flat order.
    pub zero_basis: Vec<StateVector>,
    /// Effective Hamiltonian on the zero subspace (same drive envelopes,
    /// matrices expressed in `zero_basis` coordinates; no static part).
    pub effective: DenseModel,
    /// True when every effective drive matrix vanishes: the initial state
    /// cannot move inside the protected subspace.
    pub frozen: bool,
    pub warnings: Vec<String>,
}

impl ZenoReduction {
    /// Coordinates of a full-space state in the `zero_basis`.
    pub fn coords_of(&self, state: &StateVector) -> Result<Vec<C64>> {
        if state.space != self.space {
            return dim_err("state space does not match the reduction");
        }
        self.zero_basis.iter().map(|b| b.inner(state)).collect()
    }

    /// Full-space state for zero-subspace coordinates.
    pub fn expand(&self, coords: &[C64]) -> Result<StateVector> {
        if coords.len() != self.zero_basis.len() {
            return dim_err("coordinate count does not match the zero basis");
        }
        let mut out = StateVector::zero(self.space);
        for (c, b) in coords.iter().zip(&self.zero_basis) {
            out.add_scaled(*c, b);
        }
        Ok(out)
    }

    /// The first zero-basis vector supported on more than one basis ket: the
    /// shared intermediate ("bright within the dark subspace") that the
    /// effective drives couple through. `None` for frozen/trivial sectors.
    pub fn bright_state(&self) -> Option<&StateVector> {
        self.zero_basis
            .iter()
            .find(|b| b.amps.iter().filter(|a| a.norm() > 1e-9).count() > 1)
    }
}

/// Reduce a model to the decoupled subspace of the sector reachable from
/// `initial_label`.
///
/// The sector is the closure of the initial configuration under every term
/// of the model (drives and statics); the static coupling operator is
/// diagonalized on it and the span of its (numerically) zero eigenvectors is
/// kept. Eigenvalues below 1e−9 of the largest magnitude count as zero.
pub fn zeno_reduce(model: &HamiltonianModel, initial_label: &BasisLabel) -> Result<ZenoReduction> {
    let space = model.space;
    let start = space.flat_index(&initial_label.atom_levels, initial_label.photons)?;

    // adjacency over all term entries
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); space.dim()];
    for (_, term) in model.drives() {
        for &(r, c, _) in &term.entries {
            adjacency[r].push(c);
            adjacency[c].push(r);
        }
    }
    for (_, term) in model.statics() {
        for &(r, c, _) in &term.entries {
            adjacency[r].push(c);
            adjacency[c].push(r);
        }
    }

    // breadth-first closure
    let mut seen = vec![false; space.dim()];
    let mut queue = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        for &j in &adjacency[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push(j);
            }
        }
    }
    let mut sector = queue;
    sector.sort_unstable();
    let k = sector.len();
    let mut local_of = vec![usize::MAX; space.dim()];
    for (loc, &flat) in sector.iter().enumerate() {
        local_of[flat] = loc;
    }

    // static coupling operator on the sector
    let mut g_local = CMat::zeros(k, k);
    for (g, term) in model.statics() {
        for &(r, c, a) in &term.entries {
            let (lr, lc) = (local_of[r], local_of[c]);
            if lr == usize::MAX || lc == usize::MAX {
                continue; // entry lives outside the reachable sector
            }
            g_local[(lr, lc)] += c64(g * a, 0.0);
            g_local[(lc, lr)] += c64(g * a, 0.0);
        }
    }

    let (vals, vecs) = hermitian_eigen(&g_local);
    let max_abs = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let zero_cols: Vec<usize> = (0..k).filter(|&i| vals[i].abs() <= 1e-9 * max_abs).collect();
    // (when max_abs = 0 every eigenvalue is zero and the filter keeps all)

    // deterministic basis: project sector kets in flat order onto the zero
    // space, Gram–Schmidt, fix the phase of the first significant component
    let n_zero = zero_cols.len();
    let mut zero_basis_local: Vec<Vec<C64>> = Vec::with_capacity(n_zero);
    for j in 0..k {
        if zero_basis_local.len() == n_zero {
            break;
        }
        // projection of e_j: Σ_i z_i ⟨z_i|e_j⟩
        let mut v = vec![CZERO; k];
        for &zc in &zero_cols {
            let overlap = vecs[(j, zc)].conj();
            for r in 0..k {
                v[r] += vecs[(r, zc)] * overlap;
            }
        }
        for b in &zero_basis_local {
            let overlap = crate::linalg::vec_inner(b, &v);
            crate::linalg::vec_add_scaled(&mut v, -overlap, b);
        }
        let norm = vec_norm(&v);
        if norm < 1e-10 {
            continue;
        }
        let inv = c64(1.0 / norm, 0.0);
        for a in v.iter_mut() {
            *a *= inv;
        }
        if let Some(first) = v.iter().position(|a| a.norm() > 1e-10) {
            let phase = v[first].conj() / c64(v[first].norm(), 0.0);
            for a in v.iter_mut() {
                *a *= phase;
            }
        }
        zero_basis_local.push(v);
    }

    let mut zero_basis = Vec::with_capacity(zero_basis_local.len());
    for v in &zero_basis_local {
        let mut full = StateVector::zero(space);
        for (loc, &flat) in sector.iter().enumerate() {
            full.amps[flat] = v[loc];
        }
        zero_basis.push(full);
    }

    // effective drive matrices ⟨b_i|(T + T†)|b_j⟩
    let nb = zero_basis.len();
    let mut effective = DenseModel::new(nb);
    let mut frozen = true;
    for (pulse, term) in model.drives() {
        let mut mat = CMat::zeros(nb, nb);
        for (j, bj) in zero_basis.iter().enumerate() {
            let mut applied = vec![CZERO; space.dim()];
            term.apply_accumulate(1.0, &bj.amps, &mut applied);
            term.apply_dagger_accumulate(1.0, &bj.amps, &mut applied);
            for (i, bi) in zero_basis.iter().enumerate() {
                mat[(i, j)] = crate::linalg::vec_inner(&bi.amps, &applied);
            }
        }
        if mat.max_abs() > 1e-12 {
            frozen = false;
        }
        effective.drives.push((*pulse, mat));
    }

    let mut warnings = Vec::new();
    if frozen {
        warnings.push(format!(
            "initial configuration {initial_label} is frozen: no drive acts inside the protected subspace"
        ));
    }

    Ok(ZenoReduction { space, sector, zero_basis, effective, frozen, warnings })
}

// ---------------------------------------------------------------------------
// dark states
// ---------------------------------------------------------------------------

/// Instantaneous single-atom dark state of a driven cavity lambda system:
/// the drive couples |lower⟩↔|3⟩ with value Ω, the cavity couples
/// |2⟩↔|3⟩ with strength g, and  g·|lower; 0⟩ − Ω·|2; 1⟩  (normalized) is
/// annihilated by both.
///
/// The drive value is taken from the model's first drive at time `t` unless
/// an explicit `pulse_override` is supplied. Errors when g and Ω both vanish.
pub fn dark_state(
    model: &HamiltonianModel,
    t: f64,
    pulse_override: Option<f64>,
) -> Result<StateVector> {
    if model.space.n_atoms != 1 {
        return param_err("dark_state expects a single-atom model");
    }
    if model.space.n_max < 1 {
        return param_err("dark_state needs at least one photon in the cutoff");
    }
    let (pulse, term) = model
        .drives()
        .first()
        .ok_or_else(|| crate::Error::Parameter("dark_state needs a driven model".into()))?;
    let lower = {
        // recover the lower level from the term's action on basis kets
        let &(r, c, _) = term
            .entries
            .first()
            .ok_or_else(|| crate::Error::Parameter("drive term is empty".into()))?;
        let from = model.space.label_of(c);
        let to = model.space.label_of(r);
        debug_assert_eq!(to.atom_levels[0], 3);
        let _ = to;
        from.atom_levels[0]
    };
    let omega = pulse_override.unwrap_or_else(|| pulse.value(t));
    let g = model.statics().first().map(|(g, _)| *g).unwrap_or(0.0);
    if g.abs() < 1e-300 && omega.abs() < 1e-300 {
        return param_err("dark state undefined: both the coupling and the drive vanish");
    }
    let mut v = StateVector::zero(model.space);
    let i_low = model.space.flat_index(&[lower], 0)?;
    let i_ph = model.space.flat_index(&[2], 1)?;
    v.amps[i_low] = c64(g, 0.0);
    v.amps[i_ph] = c64(-omega, 0.0);
    v.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{pulses_from_trajectory, AuxiliaryTrajectory};

    const PI: f64 = core::f64::consts::PI;

    fn half_pair(eps: f64, t_f: f64) -> PulsePair {
        pulses_from_trajectory(&AuxiliaryTrajectory::half_sweep(eps, t_f).unwrap())
    }

    #[test]
    fn pulse_values_and_peaks() {
        let s = Pulse::Sine { amplitude: 2.0, rate: 0.5, phase: 0.0 };
        assert!((s.value(PI) - 2.0).abs() < 1e-15);
        assert!((s.peak() - 2.0).abs() < 1e-15);
        assert_eq!(Pulse::Zero.value(3.0), 0.0);
        assert!((Pulse::Constant(-0.4).peak() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn drive_spec_rejects_unknown_pairs() {
        assert!(DriveSpec::new(0, 4, 0, Pulse::Zero).is_err());
        assert!(DriveSpec::new(0, 3, 2, Pulse::Zero).is_err());
        assert!(DriveSpec::new(0, 4, 1, Pulse::Zero).is_ok());
        assert!(DriveSpec::new(0, 3, 0, Pulse::Zero).is_ok());
    }

    #[test]
    fn one_qubit_model_matches_reference_matrix() {
        let traj = AuxiliaryTrajectory::full_sweep(0.25, 10.0).unwrap();
        let pair = pulses_from_trajectory(&traj);
        let m = one_qubit_hamiltonian(&pair).unwrap();
        for t in [0.0, 2.5, 7.1] {
            let h = m.evaluate(t);
            let reference = crate::invariant::single_atom_hamiltonian(
                pair.omega1(t),
                pair.omega2(t),
            );
            assert!(h.sub(&reference.mat).max_abs() < 1e-15);
            assert!(h.hermiticity_defect() < 1e-15);
        }
    }

    #[test]
    fn apply_matches_dense_evaluate() {
        let sp = SpaceDescriptor::new(2, 1).unwrap();
        let m = pair_step_hamiltonian(sp, 0, 1, &half_pair(0.25, 10.0), 1, 1.0).unwrap();
        let t = 3.3;
        let h = m.evaluate(t);
        // pseudo-random dense vector
        let mut v = vec![CZERO; sp.dim()];
        let mut x = 0.37f64;
        for a in v.iter_mut() {
            x = (x * 997.0).fract();
            let re = x - 0.5;
            x = (x * 997.0).fract();
            *a = c64(re, x - 0.5);
        }
        let mut fast = vec![CZERO; sp.dim()];
        m.apply_into(t, &v, &mut fast);
        let dense = h.apply(&v);
        assert!(crate::linalg::vec_dist(&fast, &dense) < 1e-13);
    }

    #[test]
    fn pair_step_rejects_equal_atoms() {
        let sp = SpaceDescriptor::new(2, 1).unwrap();
        assert!(pair_step_hamiltonian(sp, 1, 1, &half_pair(0.25, 10.0), 1, 1.0).is_err());
    }

    #[test]
    fn coupling_warns_at_zero_photon_cutoff() {
        let sp = SpaceDescriptor::new(1, 0).unwrap();
        let mut m = HamiltonianModel::new(sp);
        m.add_coupling(CouplingSpec::new(0, 1.0).unwrap()).unwrap();
        assert_eq!(m.warnings.len(), 1);
    }

    #[test]
    fn zeno_reduction_of_the_pair_sector() {
        let sp = SpaceDescriptor::new(2, 1).unwrap();
        let m = pair_step_hamiltonian(sp, 0, 1, &half_pair(0.25, 10.0), 1, 1.0).unwrap();
        let red = zeno_reduce(&m, &BasisLabel::new(&[1, 2], 0)).unwrap();
        assert_eq!(red.sector.len(), 5);
        assert_eq!(red.zero_basis.len(), 3);
        assert!(!red.frozen);
        // basis kets |12;0⟩ and |21;0⟩ survive untouched
        let phi1 = crate::hilbert::ket(sp, &BasisLabel::new(&[1, 2], 0)).unwrap();
        let phi5 = crate::hilbert::ket(sp, &BasisLabel::new(&[2, 1], 0)).unwrap();
        assert!(red.zero_basis[0].distance_to(&phi1) < 1e-12);
        assert!(red.zero_basis[1].distance_to(&phi5) < 1e-12);
        // the shared intermediate is (|23;0⟩ − |32;0⟩)/√2
        let mu = red.bright_state().unwrap();
        let a23 = mu.amplitude(&BasisLabel::new(&[2, 3], 0)).unwrap();
        let a32 = mu.amplitude(&BasisLabel::new(&[3, 2], 0)).unwrap();
        assert!((a23.re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((a32.re + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(a23.im.abs() < 1e-14 && a32.im.abs() < 1e-14);
        // effective couplings: sine drive connects |12;0⟩↔μ with −1/√2,
        // cosine drive connects |21;0⟩↔μ with +1/√2
        let e_sin = &red.effective.drives[0].1;
        let e_cos = &red.effective.drives[1].1;
        assert!((e_sin[(2, 0)].re + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((e_cos[(2, 1)].re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(e_sin[(2, 1)].norm() < 1e-12);
        assert!(e_cos[(2, 0)].norm() < 1e-12);
        // effective matrices are Hermitian
        assert!(e_sin.hermiticity_defect() < 1e-13);
        assert!(e_cos.hermiticity_defect() < 1e-13);
    }

    #[test]
    fn zeno_reduction_freezes_undriven_configurations() {
        let sp = SpaceDescriptor::new(2, 1).unwrap();
        let m = pair_step_hamiltonian(sp, 0, 1, &half_pair(0.25, 10.0), 1, 1.0).unwrap();
        let red = zeno_reduce(&m, &BasisLabel::new(&[0, 0], 0)).unwrap();
        assert!(red.frozen);
        assert_eq!(red.sector.len(), 1);
        assert_eq!(red.zero_basis.len(), 1);
        assert!(!red.warnings.is_empty());
        assert!(red.bright_state().is_none());
    }

    #[test]
    fn dark_state_is_annihilated() {
        let sp = SpaceDescriptor::new(1, 1).unwrap();
        let mut m = HamiltonianModel::new(sp);
        m.add_drive(DriveSpec::new(0, 3, 1, Pulse::Constant(0.3)).unwrap()).unwrap();
        m.add_coupling(CouplingSpec::new(0, 1.0).unwrap()).unwrap();
        let d = dark_state(&m, 0.0, None).unwrap();
        assert!((d.norm() - 1.0).abs() < 1e-14);
        let h = m.evaluate(0.0);
        let hv = h.apply(&d.amps);
        assert!(crate::linalg::vec_norm(&hv) < 1e-10);
        // override picks a different drive value
        let d2 = dark_state(&m, 0.0, Some(0.7)).unwrap();
        let ratio = d2.amps[sp.flat_index(&[2], 1).unwrap()].re
            / d2.amps[sp.flat_index(&[1], 0).unwrap()].re;
        assert!((ratio + 0.7).abs() < 1e-12);
    }

    #[test]
    fn dark_state_rejects_fully_off_configurations() {
        let sp = SpaceDescriptor::new(1, 1).unwrap();
        let mut m = HamiltonianModel::new(sp);
        m.add_drive(DriveSpec::new(0, 3, 1, Pulse::Zero).unwrap()).unwrap();
        m.add_coupling(CouplingSpec::new(0, 0.0).unwrap()).unwrap();
        assert!(dark_state(&m, 0.0, None).is_err());
    }
}
