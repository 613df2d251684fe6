//! Lewis–Riesenfeld invariant machinery for the lambda-type driving scheme:
//! an auxiliary angle trajectory (β ramps linearly, γ held at ε) generates a
//! pulse pair that transports the invariant's eigenstates exactly, with the
//! accumulated dressed-state phases available both in closed form and by
//! quadrature.
//!
//! Level roles within a single atom: the two drives couple |1⟩↔|4⟩ and
//! |2⟩↔|4⟩ with real envelopes Ω₁(t), Ω₂(t) (no ½ factor), so
//! H(t) = Ω₁(t)(|4⟩⟨1| + h.c.) + Ω₂(t)(|4⟩⟨2| + h.c.).

use crate::hilbert::{OperatorMatrix, SpaceDescriptor, StateVector};
use crate::linalg::{c64, C64, CZERO};
use crate::{param_err, Error, Result};
use alloc::format;
#[allow(unused_imports)] // no_std builds resolve float math through this trait
use num_traits::Float;

const SQRT_HALF: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// Workhorse single-atom space (five levels, no cavity excitation).
pub fn single_atom_space() -> SpaceDescriptor {
    SpaceDescriptor::new(1, 0).expect("1-atom space is valid")
}

/// Auxiliary angle trajectory: β(t) = β_start + Δβ·t/t_f, γ(t) ≡ ε.
///
/// `chi` sets the invariant's eigenvalue scale (dimensionally a frequency);
/// the dynamics never depend on it.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AuxiliaryTrajectory {
    pub epsilon: f64,
    pub beta_start: f64,
    pub beta_end: f64,
    pub t_f: f64,
    pub chi: f64,
}

impl AuxiliaryTrajectory {
    /// Trajectory with the default invariant scale χ = 1 (in units of the
    /// coupling rate used elsewhere).
    pub fn new(epsilon: f64, beta_start: f64, beta_end: f64, t_f: f64) -> Result<Self> {
        Self::with_chi(epsilon, beta_start, beta_end, t_f, 1.0)
    }

    pub fn with_chi(
        epsilon: f64,
        beta_start: f64,
        beta_end: f64,
        t_f: f64,
        chi: f64,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < core::f64::consts::FRAC_PI_2) {
            return param_err(format!("epsilon {epsilon} must lie in (0, pi/2)"));
        }
        if !(t_f > 0.0) {
            return param_err(format!("t_f {t_f} must be positive"));
        }
        if beta_end == beta_start {
            return param_err("beta_end must differ from beta_start");
        }
        if !(chi > 0.0) {
            return param_err(format!("chi {chi} must be positive"));
        }
        if !(epsilon.is_finite() && beta_start.is_finite() && beta_end.is_finite()) {
            return param_err("trajectory parameters must be finite");
        }
        Ok(AuxiliaryTrajectory { epsilon, beta_start, beta_end, t_f, chi })
    }

    /// Full sweep β: 0 → π on [0, t_f].
    pub fn full_sweep(epsilon: f64, t_f: f64) -> Result<Self> {
        Self::new(epsilon, 0.0, core::f64::consts::PI, t_f)
    }

    /// Half sweep β: 0 → π/2 on [0, t_f].
    pub fn half_sweep(epsilon: f64, t_f: f64) -> Result<Self> {
        Self::new(epsilon, 0.0, core::f64::consts::FRAC_PI_2, t_f)
    }

    #[inline]
    pub fn delta_beta(&self) -> f64 {
        self.beta_end - self.beta_start
    }

    #[inline]
    pub fn beta(&self, t: f64) -> f64 {
        self.beta_start + self.delta_beta() * t / self.t_f
    }

    #[inline]
    pub fn beta_dot(&self) -> f64 {
        self.delta_beta() / self.t_f
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.epsilon
    }
}

/// The two drive envelopes generated by a trajectory:
/// Ω₁(t) = A·sin(β(t)), Ω₂(t) = A·cos(β(t)) with A = β̇·cot ε.
///
/// `swapped` exchanges the two roles (Ω₁ gets the cosine), which is how the
/// mirrored population-return step is realized.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PulsePair {
    pub amplitude: f64,
    pub rate: f64,
    pub beta_start: f64,
    pub t_f: f64,
    pub swapped: bool,
}

impl PulsePair {
    #[inline]
    fn phase(&self, t: f64) -> f64 {
        self.beta_start + self.rate * t
    }

    /// Envelope on the |1⟩↔|4⟩ drive.
    #[inline]
    pub fn omega1(&self, t: f64) -> f64 {
        if self.swapped {
            self.amplitude * self.phase(t).cos()
        } else {
            self.amplitude * self.phase(t).sin()
        }
    }

    /// Envelope on the |2⟩↔|4⟩ drive.
    #[inline]
    pub fn omega2(&self, t: f64) -> f64 {
        if self.swapped {
            self.amplitude * self.phase(t).sin()
        } else {
            self.amplitude * self.phase(t).cos()
        }
    }

    /// Largest envelope magnitude over the run (the envelopes are ±A·sin/cos
    /// of a monotone phase, so it is |A| whenever the sweep spans a node).
    #[inline]
    pub fn peak(&self) -> f64 {
        self.amplitude.abs()
    }

    /// Same amplitudes with the sine/cosine roles exchanged.
    pub fn swap(mut self) -> Self {
        self.swapped = !self.swapped;
        self
    }
}

/// Pulse pair that makes the invariant of `traj` an exact constant of motion.
pub fn pulses_from_trajectory(traj: &AuxiliaryTrajectory) -> PulsePair {
    PulsePair {
        amplitude: traj.beta_dot() / traj.epsilon.tan(),
        rate: traj.beta_dot(),
        beta_start: traj.beta_start,
        t_f: traj.t_f,
        swapped: false,
    }
}

// ---------------------------------------------------------------------------
// invariant matrix, residual, eigenstates
// ---------------------------------------------------------------------------

/// Single-atom Hamiltonian for envelope values (Ω₁, Ω₂):
/// Ω₁(|4⟩⟨1| + h.c.) + Ω₂(|4⟩⟨2| + h.c.).
pub fn single_atom_hamiltonian(omega1: f64, omega2: f64) -> OperatorMatrix {
    let sp = single_atom_space();
    let mut op = OperatorMatrix::zeros(sp);
    op.mat[(4, 1)] = c64(omega1, 0.0);
    op.mat[(1, 4)] = c64(omega1, 0.0);
    op.mat[(4, 2)] = c64(omega2, 0.0);
    op.mat[(2, 4)] = c64(omega2, 0.0);
    op
}

/// The invariant I(t) for a trajectory, as a dense single-atom operator:
///
/// I = χ[cos γ sin β (|4⟩⟨1| + h.c.) + cos γ cos β (|4⟩⟨2| + h.c.)
///      + i sin γ |2⟩⟨1| − i sin γ |1⟩⟨2|].
pub fn invariant_matrix(traj: &AuxiliaryTrajectory, t: f64) -> OperatorMatrix {
    let (beta, gamma, chi) = (traj.beta(t), traj.gamma(), traj.chi);
    let (sb, cb) = (beta.sin(), beta.cos());
    let (sg, cg) = (gamma.sin(), gamma.cos());
    let sp = single_atom_space();
    let mut op = OperatorMatrix::zeros(sp);
    op.mat[(4, 1)] = c64(chi * cg * sb, 0.0);
    op.mat[(1, 4)] = c64(chi * cg * sb, 0.0);
    op.mat[(4, 2)] = c64(chi * cg * cb, 0.0);
    op.mat[(2, 4)] = c64(chi * cg * cb, 0.0);
    op.mat[(2, 1)] = c64(0.0, chi * sg);
    op.mat[(1, 2)] = c64(0.0, -chi * sg);
    op
}

/// Defect ‖i·∂I/∂t − [H, I]‖ (max-entry norm) with H built from the given
/// envelope values. Vanishes (to rounding) when the envelopes come from
/// [`pulses_from_trajectory`]; any mismatch shows up at first order.
pub fn invariant_residual_values(
    traj: &AuxiliaryTrajectory,
    omega1: f64,
    omega2: f64,
    t: f64,
) -> f64 {
    let (beta, gamma, chi) = (traj.beta(t), traj.gamma(), traj.chi);
    let bdot = traj.beta_dot();
    let (sb, cb) = (beta.sin(), beta.cos());
    let cg = gamma.cos();
    // analytic dI/dt (γ is constant along the trajectory, so only the β
    // chain rule contributes)
    let sp = single_atom_space();
    let mut idot = OperatorMatrix::zeros(sp);
    idot.mat[(4, 1)] = c64(chi * cg * cb * bdot, 0.0);
    idot.mat[(1, 4)] = c64(chi * cg * cb * bdot, 0.0);
    idot.mat[(4, 2)] = c64(-chi * cg * sb * bdot, 0.0);
    idot.mat[(2, 4)] = c64(-chi * cg * sb * bdot, 0.0);

    let h = single_atom_hamiltonian(omega1, omega2);
    let inv = invariant_matrix(traj, t);
    let comm = h.mat.commutator(&inv.mat);
    let mut defect = idot.mat.scale(c64(0.0, 1.0));
    defect = defect.sub(&comm);
    defect.max_abs()
}

/// Defect of the invariant equation for a pulse pair at time `t`.
pub fn invariant_residual(traj: &AuxiliaryTrajectory, pulses: &PulsePair, t: f64) -> f64 {
    invariant_residual_values(traj, pulses.omega1(t), pulses.omega2(t), t)
}

/// Instantaneous eigenstates of the invariant, eigenvalues (0, +χ, −χ).
#[derive(Clone, Debug)]
pub struct InvariantEigenstates {
    pub phi_zero: StateVector,
    pub phi_plus: StateVector,
    pub phi_minus: StateVector,
}

fn eigenstate_amps(beta: f64, gamma: f64) -> ([C64; 5], [C64; 5], [C64; 5]) {
    let (sb, cb) = (beta.sin(), beta.cos());
    let (sg, cg) = (gamma.sin(), gamma.cos());
    let mut zero = [CZERO; 5];
    zero[1] = c64(cg * cb, 0.0);
    zero[2] = c64(-cg * sb, 0.0);
    zero[4] = c64(0.0, -sg);
    let mut plus = [CZERO; 5];
    plus[1] = c64(SQRT_HALF * sg * cb, SQRT_HALF * sb);
    plus[2] = c64(-SQRT_HALF * sg * sb, SQRT_HALF * cb);
    plus[4] = c64(0.0, SQRT_HALF * cg);
    let mut minus = [CZERO; 5];
    minus[1] = c64(SQRT_HALF * sg * cb, -SQRT_HALF * sb);
    minus[2] = c64(-SQRT_HALF * sg * sb, -SQRT_HALF * cb);
    minus[4] = c64(0.0, SQRT_HALF * cg);
    (zero, plus, minus)
}

/// ∂/∂β of the eigenstate amplitudes (the |4⟩ components are β-independent).
fn eigenstate_amps_dbeta(beta: f64, gamma: f64) -> ([C64; 5], [C64; 5], [C64; 5]) {
    let (sb, cb) = (beta.sin(), beta.cos());
    let (sg, cg) = (gamma.sin(), gamma.cos());
    let mut zero = [CZERO; 5];
    zero[1] = c64(-cg * sb, 0.0);
    zero[2] = c64(-cg * cb, 0.0);
    let mut plus = [CZERO; 5];
    plus[1] = c64(-SQRT_HALF * sg * sb, SQRT_HALF * cb);
    plus[2] = c64(-SQRT_HALF * sg * cb, -SQRT_HALF * sb);
    let mut minus = [CZERO; 5];
    minus[1] = c64(-SQRT_HALF * sg * sb, -SQRT_HALF * cb);
    minus[2] = c64(-SQRT_HALF * sg * cb, SQRT_HALF * sb);
    (zero, plus, minus)
}

fn amps_to_state(a: [C64; 5]) -> StateVector {
    StateVector { space: single_atom_space(), amps: a.to_vec() }
}

/// Eigenstates of [`invariant_matrix`] at time `t`.
pub fn invariant_eigenstates(traj: &AuxiliaryTrajectory, t: f64) -> InvariantEigenstates {
    let (z, p, m) = eigenstate_amps(traj.beta(t), traj.gamma());
    InvariantEigenstates {
        phi_zero: amps_to_state(z),
        phi_plus: amps_to_state(p),
        phi_minus: amps_to_state(m),
    }
}

/// Accumulated dressed-state phases over one sweep (units: radians).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LRPhaseResult {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub alpha_zero: f64,
}

/// Composite Simpson on [a, b] with `n` points (`n` odd, ≥ 3).
fn simpson(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    debug_assert!(n >= 3 && n % 2 == 1);
    let h = (b - a) / (n - 1) as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n - 1 {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * k as f64);
    }
    acc * h / 3.0
}

/// Simpson + one Richardson refinement; errors if the two resolutions
/// disagree by more than 1e−8 (relative to the larger of 1 and the value).
fn refined_quadrature(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, n: usize) -> Result<f64> {
    let n1 = if n % 2 == 0 { n + 1 } else { n };
    let s1 = simpson(f, a, b, n1);
    let s2 = simpson(f, a, b, 2 * n1 - 1);
    let scale = 1.0f64.max(s2.abs());
    if (s2 - s1).abs() > 1e-8 * scale {
        return Err(Error::Accuracy(format!(
            "phase quadrature did not converge: |{s2:.3e} - {s1:.3e}| exceeds 1e-8"
        )));
    }
    Ok((16.0 * s2 - s1) / 15.0)
}

/// Dressed-state phase rate α̇ = ⟨Φ| i∂/∂t − H(t) |Φ⟩ for one eigenstate,
/// with H built from the envelope values at `t`.
fn phase_rate(traj: &AuxiliaryTrajectory, pulses: &PulsePair, t: f64, which: usize) -> f64 {
    let beta = traj.beta(t);
    let gamma = traj.gamma();
    let (z, p, m) = eigenstate_amps(beta, gamma);
    let (dz, dp, dm) = eigenstate_amps_dbeta(beta, gamma);
    let (amps, damps) = match which {
        0 => (z, dz),
        1 => (p, dp),
        _ => (m, dm),
    };
    let bdot = traj.beta_dot();
    // i⟨Φ|∂tΦ⟩ with ∂tΦ = β̇ ∂βΦ
    let mut geom = CZERO;
    for k in 0..5 {
        geom += amps[k].conj() * damps[k];
    }
    let geom = (c64(0.0, 1.0) * geom * c64(bdot, 0.0)).re;
    // ⟨Φ|H|Φ⟩ directly from the two couplings to |4⟩
    let (o1, o2) = (pulses.omega1(t), pulses.omega2(t));
    let dyn_part = 2.0
        * (c64(o1, 0.0) * amps[1].conj() * amps[4] + c64(o2, 0.0) * amps[2].conj() * amps[4]).re;
    geom - dyn_part
}

/// Quadrature of the dressed-state phases over [0, t_f], using at least 2001
/// Simpson points plus a Richardson refinement.
pub fn lr_phase_quadrature(
    traj: &AuxiliaryTrajectory,
    pulses: &PulsePair,
) -> Result<LRPhaseResult> {
    let n = 2001;
    let mut fz = |t: f64| phase_rate(traj, pulses, t, 0);
    let alpha_zero = refined_quadrature(&mut fz, 0.0, traj.t_f, n)?;
    let mut fp = |t: f64| phase_rate(traj, pulses, t, 1);
    let alpha_plus = refined_quadrature(&mut fp, 0.0, traj.t_f, n)?;
    let mut fm = |t: f64| phase_rate(traj, pulses, t, 2);
    let alpha_minus = refined_quadrature(&mut fm, 0.0, traj.t_f, n)?;
    Ok(LRPhaseResult { alpha_plus, alpha_minus, alpha_zero })
}

/// Magnitude of the dressed-state phase for a sweep: |Δβ| / sin ε.
pub fn phase_magnitude(traj: &AuxiliaryTrajectory) -> f64 {
    traj.delta_beta().abs() / traj.epsilon.sin()
}

/// Final state of a full sweep (β: 0 → π) started in |1⟩, in closed form:
///
/// ψ(t_f) = (−cos²ε − sin²ε cos α)|1⟩ − sin ε sin α |2⟩
///          − i sin ε cos ε (1 − cos α)|4⟩,   α = π / sin ε.
///
/// Errors unless the trajectory is exactly a full sweep from β = 0.
pub fn closed_form_final_state(traj: &AuxiliaryTrajectory) -> Result<StateVector> {
    if traj.beta_start.abs() > 1e-12 || (traj.delta_beta() - core::f64::consts::PI).abs() > 1e-12 {
        return param_err("closed form requires a full sweep with beta: 0 -> pi");
    }
    let eps = traj.epsilon;
    let alpha = core::f64::consts::PI / eps.sin();
    let (se, ce) = (eps.sin(), eps.cos());
    let (sa, ca) = (alpha.sin(), alpha.cos());
    let mut amps = [CZERO; 5];
    amps[1] = c64(-ce * ce - se * se * ca, 0.0);
    amps[2] = c64(-se * sa, 0.0);
    amps[4] = c64(0.0, -se * ce * (1.0 - ca));
    Ok(amps_to_state(amps))
}

/// Smallest ε for which a sweep of `delta_beta` accumulates a dressed-state
/// phase of 2πN, optionally corrected for a collective-coupling enhancement
/// of the effective mixing angle (tan ε_eff = zeno_scale · tan ε).
///
/// Solves |Δβ| / sin ε_eff = 2πN, then maps back through the enhancement.
pub fn epsilon_for_phase_condition(
    delta_beta: f64,
    n_windings: u32,
    zeno_scale: f64,
) -> Result<f64> {
    if n_windings == 0 {
        return param_err("winding number must be at least 1");
    }
    if !(delta_beta > 0.0) {
        return param_err("delta_beta must be positive");
    }
    if !(zeno_scale > 0.0) {
        return param_err("zeno_scale must be positive");
    }
    let s = delta_beta / (2.0 * core::f64::consts::PI * n_windings as f64);
    if s >= 1.0 {
        return param_err(format!(
            "no solution: delta_beta/(2*pi*N) = {s:.6} must be below 1"
        ));
    }
    let eps_eff = s.asin();
    Ok((eps_eff.tan() / zeno_scale).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_norm;

    const PI: f64 = core::f64::consts::PI;

    fn full(eps: f64, t_f: f64) -> AuxiliaryTrajectory {
        AuxiliaryTrajectory::full_sweep(eps, t_f).unwrap()
    }

    #[test]
    fn trajectory_validation() {
        assert!(AuxiliaryTrajectory::new(0.0, 0.0, PI, 10.0).is_err());
        assert!(AuxiliaryTrajectory::new(1.6, 0.0, PI, 10.0).is_err());
        assert!(AuxiliaryTrajectory::new(0.25, 0.0, PI, 0.0).is_err());
        assert!(AuxiliaryTrajectory::new(0.25, 1.0, 1.0, 10.0).is_err());
        assert!(AuxiliaryTrajectory::with_chi(0.25, 0.0, PI, 10.0, 0.0).is_err());
    }

    #[test]
    fn full_sweep_pulse_endpoints() {
        let traj = full(0.25, 10.0);
        let p = pulses_from_trajectory(&traj);
        assert!(p.omega1(0.0).abs() < 1e-14);
        assert!(p.omega1(traj.t_f).abs() < 1e-13);
        let expect_peak = (PI / 10.0) / 0.25f64.tan();
        assert!((p.peak() - expect_peak).abs() < 1e-14);
        // interior maximum of the sine envelope reaches the peak
        assert!((p.omega1(traj.t_f / 2.0) - expect_peak).abs() < 1e-13);
    }

    #[test]
    fn half_sweep_pulse_endpoints() {
        let traj = AuxiliaryTrajectory::half_sweep(0.25, 10.0).unwrap();
        let p = pulses_from_trajectory(&traj);
        assert!(p.omega1(0.0).abs() < 1e-14);
        assert!(p.omega2(traj.t_f).abs() < 1e-13);
        // the swap exchanges the envelopes
        let q = p.swap();
        assert!(q.omega2(0.0).abs() < 1e-14);
        assert!(q.omega1(0.0) > 0.0);
        assert_eq!(q.omega1(3.7), p.omega2(3.7));
    }

    #[test]
    fn residual_vanishes_on_matched_pulses() {
        let traj = full(0.25, 10.0);
        let p = pulses_from_trajectory(&traj);
        for k in 0..=20 {
            let t = traj.t_f * k as f64 / 20.0;
            assert!(invariant_residual(&traj, &p, t) < 1e-12);
        }
    }

    #[test]
    fn residual_detects_perturbed_envelope() {
        let traj = full(0.25, 10.0);
        let p = pulses_from_trajectory(&traj);
        let t = 4.0;
        let r = invariant_residual_values(&traj, p.omega1(t) + 0.1, p.omega2(t), t);
        assert!(r > 1e-3, "residual {r} should flag the perturbation");
    }

    #[test]
    fn eigenstates_diagonalize_the_invariant() {
        let traj = AuxiliaryTrajectory::with_chi(0.7, 0.2, 2.9, 8.0, 1.3).unwrap();
        for k in 0..=10 {
            let t = traj.t_f * k as f64 / 10.0;
            let inv = invariant_matrix(&traj, t);
            let es = invariant_eigenstates(&traj, t);
            for (state, lambda) in [
                (&es.phi_zero, 0.0),
                (&es.phi_plus, traj.chi),
                (&es.phi_minus, -traj.chi),
            ] {
                assert!((state.norm() - 1.0).abs() < 1e-14);
                let mut residue = inv.apply(state).unwrap();
                residue.add_scaled(c64(-lambda, 0.0), state);
                assert!(vec_norm(&residue.amps) < 1e-13);
            }
            assert!(es.phi_plus.inner(&es.phi_minus).unwrap().norm() < 1e-14);
            assert!(es.phi_plus.inner(&es.phi_zero).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn quadrature_matches_closed_form_phase() {
        for eps in [0.1, 0.25, 0.5, 1.0] {
            let traj = full(eps, 10.0);
            let p = pulses_from_trajectory(&traj);
            let phases = lr_phase_quadrature(&traj, &p).unwrap();
            let expect = PI / eps.sin();
            assert!((phases.alpha_plus.abs() - expect).abs() < 1e-9);
            assert!((phases.alpha_minus.abs() - expect).abs() < 1e-9);
            assert!((phases.alpha_plus + phases.alpha_minus).abs() < 1e-9);
            assert!(phases.alpha_zero.abs() < 1e-9);
            assert!((phase_magnitude(&traj) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_returns_minus_one_at_matched_epsilon() {
        let eps = 0.25f64.asin();
        let traj = full(eps, 10.0);
        let psi = closed_form_final_state(&traj).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!((psi.amps[1].re + 1.0).abs() < 1e-12);
        assert!(psi.amps[2].norm() < 1e-12);
        assert!(psi.amps[4].norm() < 1e-12);
    }

    #[test]
    fn closed_form_rejects_partial_sweeps() {
        let traj = AuxiliaryTrajectory::half_sweep(0.25, 10.0).unwrap();
        assert!(closed_form_final_state(&traj).is_err());
    }

    #[test]
    fn phase_condition_solutions() {
        // full sweep, two windings
        let e = epsilon_for_phase_condition(PI, 2, 1.0).unwrap();
        assert!((e - 0.25f64.asin()).abs() < 1e-15);
        // half sweep, one winding: same mixing angle
        let eh = epsilon_for_phase_condition(PI / 2.0, 1, 1.0).unwrap();
        assert!((eh - e).abs() < 1e-15);
        // collective enhancement by sqrt(2)
        let ez = epsilon_for_phase_condition(PI, 2, core::f64::consts::SQRT_2).unwrap();
        assert!((ez - (0.25f64.asin().tan() / core::f64::consts::SQRT_2).atan()).abs() < 1e-15);
        assert!(ez < e);
        // no solution when the sweep outruns the winding budget
        assert!(epsilon_for_phase_condition(7.0, 1, 1.0).is_err());
        assert!(epsilon_for_phase_condition(PI, 0, 1.0).is_err());
    }
}
