//! Time evolution: fixed-step RK4 for the Schrödinger equation (closed
//! systems) and for the Lindblad master equation (open systems), with
//! conservation auditing, trajectory recording, fidelity reports, and a
//! 2-D parameter sweep driver.
//!
//! The Lindblad right-hand side is evaluated term-by-term from the model's
//! sparse transitions, so a step costs O(dim² + entries·dim) rather than a
//! dense matrix product.

use crate::hilbert::{DensityMatrix, StateVector, TransitionTerm};
use crate::linalg::{c64, hermitian_eigen, vec_inner, vec_norm, CMat, C64, CZERO};
use crate::models::{Hamiltonian, HamiltonianModel};
use crate::{dim_err, param_err, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Integration window and resolution. Fewer than 1000 steps is rejected:
/// the protocols' fastest oscillations need that much even at desk scale.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EvolutionConfig {
    pub t_f: f64,
    pub n_steps: usize,
    /// Record a sample every this many steps (0 = endpoints only).
    pub record_every: usize,
}

impl EvolutionConfig {
    pub fn new(t_f: f64, n_steps: usize) -> Result<Self> {
        if !(t_f > 0.0 && t_f.is_finite()) {
            return param_err(format!("t_f {t_f} must be positive and finite"));
        }
        if n_steps < 1000 {
            return param_err(format!("n_steps {n_steps} is below the minimum of 1000"));
        }
        Ok(EvolutionConfig { t_f, n_steps, record_every: 0 })
    }

    /// Default resolution (20000 steps, endpoints only).
    pub fn default_for(t_f: f64) -> Result<Self> {
        Self::new(t_f, 20_000)
    }

    pub fn with_recording(mut self, every: usize) -> Self {
        self.record_every = every;
        self
    }

    fn record_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let every = if self.record_every == 0 { self.n_steps } else { self.record_every };
        (0..=self.n_steps).filter(move |k| k % every == 0 || *k == self.n_steps)
    }
}

/// Recorded snapshots of one evolution.
#[derive(Clone, Debug)]
pub enum TrajectoryStates {
    /// State-vector amplitudes per sample.
    Pure(Vec<Vec<C64>>),
    /// Density matrices per sample.
    Mixed(Vec<CMat>),
}

/// Result of an evolution: sample times, states, and conservation audit.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub states: TrajectoryStates,
    /// Largest |norm − norm₀| (closed) or |trace − trace₀| (open) seen.
    pub drift: f64,
    /// Smallest eigenvalue of the final density matrix (open runs only).
    pub min_eigenvalue: Option<f64>,
    pub warnings: Vec<String>,
}

impl TrajectoryRecord {
    pub fn final_pure(&self) -> Option<&[C64]> {
        match &self.states {
            TrajectoryStates::Pure(v) => v.last().map(|a| a.as_slice()),
            TrajectoryStates::Mixed(_) => None,
        }
    }

    pub fn final_mixed(&self) -> Option<&CMat> {
        match &self.states {
            TrajectoryStates::Mixed(v) => v.last(),
            TrajectoryStates::Pure(_) => None,
        }
    }

    pub fn n_samples(&self) -> usize {
        self.times.len()
    }

    /// Basis populations of sample `k` (diagonal of ρ for open runs).
    pub fn sample_populations(&self, k: usize) -> Vec<f64> {
        match &self.states {
            TrajectoryStates::Pure(v) => v[k].iter().map(|a| a.norm_sqr()).collect(),
            TrajectoryStates::Mixed(v) => {
                (0..v[k].n_rows).map(|i| v[k][(i, i)].re).collect()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// closed-system RK4
// ---------------------------------------------------------------------------

fn rk4_derivative(model: &impl Hamiltonian, t: f64, v: &[C64], scratch: &mut [C64], k: &mut [C64]) {
    model.apply_into(t, v, scratch);
    for (ki, si) in k.iter_mut().zip(scratch.iter()) {
        *ki = C64 { re: si.im, im: -si.re }; // −i·(Hψ)
    }
}

/// Evolve raw amplitudes under any Hamiltonian (used directly for reduced
/// effective models, and by [`schrodinger_evolve`] for full-space states).
pub fn schrodinger_evolve_raw(
    model: &impl Hamiltonian,
    initial: &[C64],
    config: &EvolutionConfig,
) -> Result<TrajectoryRecord> {
    let n = model.dim();
    if initial.len() != n {
        return dim_err("initial state length does not match the model dimension");
    }
    let norm0 = vec_norm(initial);
    if norm0 < 1e-300 {
        return param_err("initial state has zero norm");
    }
    let h = config.t_f / config.n_steps as f64;
    let mut psi = initial.to_vec();
    let mut scratch = vec![CZERO; n];
    let mut stage = vec![CZERO; n];
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![CZERO; n], vec![CZERO; n], vec![CZERO; n], vec![CZERO; n]);

    let mut record_at: Vec<usize> = config.record_indices().collect();
    record_at.dedup();
    let mut times = Vec::with_capacity(record_at.len());
    let mut states = Vec::with_capacity(record_at.len());
    let mut next_record = 0usize;
    let mut drift = 0.0f64;

    let maybe_record = |step: usize,
                            psi: &Vec<C64>,
                            next_record: &mut usize,
                            times: &mut Vec<f64>,
                            states: &mut Vec<Vec<C64>>| {
        if *next_record < record_at.len() && record_at[*next_record] == step {
            times.push(step as f64 * h);
            states.push(psi.clone());
            *next_record += 1;
        }
    };
    maybe_record(0, &psi, &mut next_record, &mut times, &mut states);

    for step in 0..config.n_steps {
        let t = step as f64 * h;
        rk4_derivative(model, t, &psi, &mut scratch, &mut k1);
        for i in 0..n {
            stage[i] = psi[i] + c64(0.5 * h, 0.0) * k1[i];
        }
        rk4_derivative(model, t + 0.5 * h, &stage, &mut scratch, &mut k2);
        for i in 0..n {
            stage[i] = psi[i] + c64(0.5 * h, 0.0) * k2[i];
        }
        rk4_derivative(model, t + 0.5 * h, &stage, &mut scratch, &mut k3);
        for i in 0..n {
            stage[i] = psi[i] + c64(h, 0.0) * k3[i];
        }
        rk4_derivative(model, t + h, &stage, &mut scratch, &mut k4);
        let w = h / 6.0;
        for i in 0..n {
            psi[i] += c64(w, 0.0)
                * (k1[i] + c64(2.0, 0.0) * k2[i] + c64(2.0, 0.0) * k3[i] + k4[i]);
        }
        let d = (vec_norm(&psi) - norm0).abs();
        if d > drift {
            drift = d;
        }
        if drift > 1e-6 {
            return Err(Error::Accuracy(format!(
                "norm drift {drift:.3e} exceeded 1e-6 at step {} of {}; increase n_steps",
                step + 1,
                config.n_steps
            )));
        }
        maybe_record(step + 1, &psi, &mut next_record, &mut times, &mut states);
    }

    Ok(TrajectoryRecord {
        times,
        states: TrajectoryStates::Pure(states),
        drift,
        min_eigenvalue: None,
        warnings: Vec::new(),
    })
}

/// Closed-system evolution of a full-space state vector.
pub fn schrodinger_evolve(
    model: &HamiltonianModel,
    initial: &StateVector,
    config: &EvolutionConfig,
) -> Result<TrajectoryRecord> {
    if initial.space != model.space {
        return dim_err("initial state lives on a different space than the model");
    }
    schrodinger_evolve_raw(model, &initial.amps, config)
}

// ---------------------------------------------------------------------------
// Lindblad master equation
// ---------------------------------------------------------------------------

/// One collapse channel: ρ̇ gains rate·(LρL† − ½{L†L, ρ}) with L the sparse
/// transition term (unit amplitudes scaled by the term's own entries).
#[derive(Clone, Debug)]
pub struct LindbladOp {
    pub rate: f64,
    pub term: TransitionTerm,
}

impl LindbladOp {
    pub fn new(rate: f64, term: TransitionTerm) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return param_err(format!("collapse rate {rate} must be finite and nonnegative"));
        }
        if !term.has_unique_rows_and_cols() {
            return Err(Error::Unsupported(
                "collapse operators must have at most one entry per row and column".into(),
            ));
        }
        Ok(LindbladOp { rate, term })
    }
}

/// A set of collapse channels.
#[derive(Clone, Debug, Default)]
pub struct LindbladSet {
    pub ops: Vec<LindbladOp>,
}

impl LindbladSet {
    pub fn none() -> Self {
        LindbladSet { ops: Vec::new() }
    }

    pub fn push(&mut self, op: LindbladOp) {
        self.ops.push(op);
    }

    /// Spontaneous decay of the cavity-free excited level |4⟩ of one atom,
    /// branching equally into |1⟩ and |2⟩: L_i = √(γ/2)·|i⟩⟨4|.
    pub fn excited_branching(
        space: crate::hilbert::SpaceDescriptor,
        atom: usize,
        gamma: f64,
    ) -> Result<Self> {
        let mut set = LindbladSet::none();
        for target in [1u8, 2u8] {
            set.push(LindbladOp::new(
                gamma / 2.0,
                TransitionTerm::atomic(space, atom, target, 4)?,
            )?);
        }
        Ok(set)
    }

    /// Losses of the cavity-assisted step: photon loss at rate κ plus decay
    /// of each atom's |3⟩ into |1⟩ and |2⟩, each branch at rate γ.
    pub fn cavity_and_atomic_loss(
        space: crate::hilbert::SpaceDescriptor,
        kappa: f64,
        gamma: f64,
    ) -> Result<Self> {
        let mut set = LindbladSet::none();
        set.push(LindbladOp::new(kappa, TransitionTerm::photon_annihilation(space))?);
        for atom in 0..space.n_atoms {
            for target in [1u8, 2u8] {
                set.push(LindbladOp::new(
                    gamma,
                    TransitionTerm::atomic(space, atom, target, 3)?,
                )?);
            }
        }
        Ok(set)
    }
}

/// Accumulate −i[H(t), ρ] into `out` from the model's sparse terms.
fn commutator_accumulate(model: &HamiltonianModel, t: f64, rho: &CMat, out: &mut CMat) {
    let n = rho.n_rows;
    let mut add_term = |term: &TransitionTerm, w: f64| {
        if w == 0.0 {
            return;
        }
        for &(r, c, a) in &term.entries {
            let s = w * a;
            // H += s(|r⟩⟨c| + |c⟩⟨r|); contribute −i(Hρ) and +i(ρH)
            for k in 0..n {
                let m_i_s = c64(0.0, -s);
                out[(r, k)] += m_i_s * rho[(c, k)];
                out[(c, k)] += m_i_s * rho[(r, k)];
            }
            for k in 0..n {
                let p_i_s = c64(0.0, s);
                out[(k, c)] += p_i_s * rho[(k, r)];
                out[(k, r)] += p_i_s * rho[(k, c)];
            }
        }
    };
    for (pulse, term) in model.drives() {
        add_term(term, pulse.value(t));
    }
    for (g, term) in model.statics() {
        add_term(term, *g);
    }
}

fn lindblad_rhs(
    model: &HamiltonianModel,
    ops: &LindbladSet,
    decay_diag: &[f64],
    t: f64,
    rho: &CMat,
    out: &mut CMat,
) {
    let n = rho.n_rows;
    for v in out.as_mut_slice().iter_mut() {
        *v = CZERO;
    }
    commutator_accumulate(model, t, rho, out);
    // jump terms: (LρL†)[r_i, r_j] = a_i a_j ρ[c_i, c_j]
    for op in &ops.ops {
        if op.rate == 0.0 {
            continue;
        }
        for &(ri, ci, ai) in &op.term.entries {
            for &(rj, cj, aj) in &op.term.entries {
                out[(ri, rj)] += c64(op.rate * ai * aj, 0.0) * rho[(ci, cj)];
            }
        }
    }
    // −½{L†L, ρ} with Σ rate·L†L diagonal
    for p in 0..n {
        for q in 0..n {
            let w = 0.5 * (decay_diag[p] + decay_diag[q]);
            if w != 0.0 {
                out[(p, q)] -= c64(w, 0.0) * rho[(p, q)];
            }
        }
    }
}

/// Open-system evolution under the model Hamiltonian and collapse set.
pub fn lindblad_evolve(
    model: &HamiltonianModel,
    initial: &DensityMatrix,
    ops: &LindbladSet,
    config: &EvolutionConfig,
) -> Result<TrajectoryRecord> {
    if initial.space != model.space {
        return dim_err("initial density matrix lives on a different space than the model");
    }
    let n = model.dim();
    for op in &ops.ops {
        if op.term.space != model.space {
            return dim_err("collapse operator lives on a different space than the model");
        }
    }
    let mut decay_diag = vec![0.0f64; n];
    for op in &ops.ops {
        for &(_, c, a) in &op.term.entries {
            decay_diag[c] += op.rate * a * a;
        }
    }

    let trace0 = initial.mat.trace().re;
    let h = config.t_f / config.n_steps as f64;
    let mut rho = initial.mat.clone();
    let mut stage = CMat::zeros(n, n);
    let mut k1 = CMat::zeros(n, n);
    let mut k2 = CMat::zeros(n, n);
    let mut k3 = CMat::zeros(n, n);
    let mut k4 = CMat::zeros(n, n);

    let mut record_at: Vec<usize> = config.record_indices().collect();
    record_at.dedup();
    let mut times = Vec::with_capacity(record_at.len());
    let mut states: Vec<CMat> = Vec::with_capacity(record_at.len());
    let mut next_record = 0usize;
    if record_at.first() == Some(&0) {
        times.push(0.0);
        states.push(rho.clone());
        next_record = 1;
    }
    let mut drift = 0.0f64;
    let mut warnings = Vec::new();

    for step in 0..config.n_steps {
        let t = step as f64 * h;
        lindblad_rhs(model, ops, &decay_diag, t, &rho, &mut k1);
        stage.assign(&rho);
        stage.add_scaled(c64(0.5 * h, 0.0), &k1);
        lindblad_rhs(model, ops, &decay_diag, t + 0.5 * h, &stage, &mut k2);
        stage.assign(&rho);
        stage.add_scaled(c64(0.5 * h, 0.0), &k2);
        lindblad_rhs(model, ops, &decay_diag, t + 0.5 * h, &stage, &mut k3);
        stage.assign(&rho);
        stage.add_scaled(c64(h, 0.0), &k3);
        lindblad_rhs(model, ops, &decay_diag, t + h, &stage, &mut k4);
        let w = h / 6.0;
        rho.add_scaled(c64(w, 0.0), &k1);
        rho.add_scaled(c64(2.0 * w, 0.0), &k2);
        rho.add_scaled(c64(2.0 * w, 0.0), &k3);
        rho.add_scaled(c64(w, 0.0), &k4);
        rho.hermitize();

        let d = (rho.trace().re - trace0).abs();
        if d > drift {
            drift = d;
        }
        if drift > 1e-5 {
            return Err(Error::Accuracy(format!(
                "trace drift {drift:.3e} exceeded 1e-5 at step {} of {}; increase n_steps",
                step + 1,
                config.n_steps
            )));
        }
        if next_record < record_at.len() && record_at[next_record] == step + 1 {
            times.push((step + 1) as f64 * h);
            states.push(rho.clone());
            next_record += 1;
        }
    }

    let (vals, _) = hermitian_eigen(&rho);
    let min_eig = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -1e-6 {
        warnings.push(format!(
            "final density matrix has a negative eigenvalue {min_eig:.3e}; results may be unreliable"
        ));
    }

    Ok(TrajectoryRecord {
        times,
        states: TrajectoryStates::Mixed(states),
        drift,
        min_eigenvalue: Some(min_eig),
        warnings,
    })
}

// ---------------------------------------------------------------------------
// fidelity
// ---------------------------------------------------------------------------

/// Overlap-based and population-based fidelity against a pure target.
#[derive(Clone, Debug)]
pub struct FidelityReport {
    /// ⟨target|ψ⟩ (pure) — zero for mixed states, where only the moduli
    /// below are meaningful.
    pub overlap: C64,
    /// |⟨target|ψ⟩|² or ⟨target|ρ|target⟩.
    pub fidelity_overlap: f64,
    /// Populations weighted by the target's basis weights (equals the bare
    /// target-level population when the target is a basis ket).
    pub fidelity_population: f64,
    pub target_label: String,
}

/// Fidelity of a pure state against a pure target.
pub fn fidelity_pure(amps: &[C64], target: &StateVector, label: &str) -> Result<FidelityReport> {
    if amps.len() != target.amps.len() {
        return dim_err("state and target dimensions differ");
    }
    let overlap = vec_inner(&target.amps, amps);
    let pop = target
        .amps
        .iter()
        .zip(amps.iter())
        .map(|(t, a)| t.norm_sqr() * a.norm_sqr())
        .sum();
    Ok(FidelityReport {
        overlap,
        fidelity_overlap: overlap.norm_sqr(),
        fidelity_population: pop,
        target_label: label.into(),
    })
}

/// Fidelity of a density matrix against a pure target.
pub fn fidelity_mixed(rho: &CMat, target: &StateVector, label: &str) -> Result<FidelityReport> {
    if rho.n_rows != target.amps.len() {
        return dim_err("density matrix and target dimensions differ");
    }
    let applied = rho.apply(&target.amps);
    let f = vec_inner(&target.amps, &applied).re;
    let pop = target
        .amps
        .iter()
        .enumerate()
        .map(|(i, t)| t.norm_sqr() * rho[(i, i)].re)
        .sum();
    Ok(FidelityReport {
        overlap: CZERO,
        fidelity_overlap: f,
        fidelity_population: pop,
        target_label: label.into(),
    })
}

// ---------------------------------------------------------------------------
// parameter sweeps
// ---------------------------------------------------------------------------

/// One sweep cell: coordinates plus the cell's outcome. Failed cells carry
/// the error (annotated with the coordinates) without aborting the sweep.
#[derive(Clone, Debug)]
pub struct SweepCell {
    pub x: f64,
    pub y: f64,
    pub report: Result<FidelityReport>,
}

/// Row-major grid of sweep cells: index `[iy * xs.len() + ix]`.
#[derive(Clone, Debug)]
pub struct SweepGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> &SweepCell {
        &self.cells[iy * self.xs.len() + ix]
    }

    pub fn n_failed(&self) -> usize {
        self.cells.iter().filter(|c| c.report.is_err()).count()
    }
}

/// Evaluate `f(x, y)` over the grid. Cell errors are captured in place with
/// their coordinates; the sweep always completes.
pub fn sweep_2d(
    xs: &[f64],
    ys: &[f64],
    mut f: impl FnMut(f64, f64) -> Result<FidelityReport>,
) -> SweepGrid {
    let mut cells = Vec::with_capacity(xs.len() * ys.len());
    for &y in ys {
        for &x in xs {
            let report = f(x, y).map_err(|e| match e {
                Error::Parameter(m) => Error::Parameter(format!("cell (x={x}, y={y}): {m}")),
                Error::Dimension(m) => Error::Dimension(format!("cell (x={x}, y={y}): {m}")),
                Error::Accuracy(m) => Error::Accuracy(format!("cell (x={x}, y={y}): {m}")),
                Error::Unsupported(m) => Error::Unsupported(format!("cell (x={x}, y={y}): {m}")),
            });
            cells.push(SweepCell { x, y, report });
        }
    }
    SweepGrid { xs: xs.to_vec(), ys: ys.to_vec(), cells }
}

/// Evenly spaced grid including both endpoints.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    (0..count).map(|k| a + (b - a) * k as f64 / (count - 1) as f64).collect()
}
