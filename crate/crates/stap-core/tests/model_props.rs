//! Structural properties of the Hamiltonian models and the protected-space
//! reduction: hermiticity, conserved excitation weight, sector independence
//! of the photon cutoff, and the behaviour of frozen configurations.

use proptest::prelude::*;
use stap_core::hilbert::{ket, BasisLabel, SpaceDescriptor};
use stap_core::invariant::{pulses_from_trajectory, AuxiliaryTrajectory, PulsePair};
use stap_core::linalg::{c64, CMat};
use stap_core::models::{
    dark_state, pair_step_hamiltonian, transfer_hamiltonian, zeno_reduce, zeno_step_hamiltonian,
    Hamiltonian, HamiltonianModel,
};

fn pulses(eps: f64, t_f: f64, full: bool) -> PulsePair {
    let traj = if full {
        AuxiliaryTrajectory::full_sweep(eps, t_f).unwrap()
    } else {
        AuxiliaryTrajectory::half_sweep(eps, t_f).unwrap()
    };
    pulses_from_trajectory(&traj)
}

/// Conserved excitation weight for a model: per-level atomic weights plus
/// one unit per photon. [H(t), N] must vanish identically.
fn weight_operator(space: SpaceDescriptor, level_weights: [f64; 5]) -> CMat {
    let mut n_op = CMat::zeros(space.dim(), space.dim());
    for (idx, label) in space.labels().enumerate() {
        let mut w = label.photons as f64;
        for &l in &label.atom_levels {
            w += level_weights[l as usize];
        }
        n_op[(idx, idx)] = c64(w, 0.0);
    }
    n_op
}

fn commutation_defect(model: &HamiltonianModel, t: f64, n_op: &CMat) -> f64 {
    let h = model.evaluate(t);
    h.commutator(n_op).max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn models_are_hermitian(
        eps in 0.05f64..1.4,
        t_f in 2.0f64..40.0,
        frac in 0.0f64..=1.0,
        g in 0.1f64..3.0,
    ) {
        let t = frac * t_f;
        let space = SpaceDescriptor::new(2, 1).unwrap();
        let p_full = pulses(eps, t_f, true);
        let p_half = pulses(eps, t_f, false);

        let transfer = transfer_hamiltonian(space, 1, &p_half, g).unwrap();
        let pair = pair_step_hamiltonian(space, 0, 1, &p_full, 1, g).unwrap();
        prop_assert!(transfer.evaluate(t).hermiticity_defect() < 1e-12);
        prop_assert!(pair.evaluate(t).hermiticity_defect() < 1e-12);
    }

    /// The transfer step conserves N with weights (0, 1, 1, 2, 1) + photons;
    /// the collective steps conserve it with weights set by the driven lower
    /// level: lower=1 → (0, 2, 1, 2, 0), lower=0 → (2, 0, 1, 2, 0).
    #[test]
    fn excitation_weight_is_conserved(
        eps in 0.05f64..1.4,
        t_f in 2.0f64..40.0,
        frac in 0.0f64..=1.0,
        g in 0.1f64..3.0,
    ) {
        let t = frac * t_f;
        let space = SpaceDescriptor::new(2, 1).unwrap();
        let p_full = pulses(eps, t_f, true);
        let p_half = pulses(eps, t_f, false);

        let transfer = transfer_hamiltonian(space, 0, &p_half, g).unwrap();
        let n_t = weight_operator(space, [0.0, 1.0, 1.0, 2.0, 1.0]);
        prop_assert!(commutation_defect(&transfer, t, &n_t) < 1e-12);

        let pair1 = pair_step_hamiltonian(space, 0, 1, &p_full, 1, g).unwrap();
        let n_1 = weight_operator(space, [0.0, 2.0, 1.0, 2.0, 0.0]);
        prop_assert!(commutation_defect(&pair1, t, &n_1) < 1e-12);

        let pair0 = pair_step_hamiltonian(space, 0, 1, &p_full, 0, g).unwrap();
        let n_0 = weight_operator(space, [2.0, 0.0, 1.0, 2.0, 0.0]);
        prop_assert!(commutation_defect(&pair0, t, &n_0) < 1e-12);
    }

    /// The reduced basis is orthonormal, annihilated by the static coupling,
    /// carries Hermitian effective drives, and does not depend on the
    /// coupling strength.
    #[test]
    fn reduction_invariants(g in 0.2f64..4.0, eps in 0.1f64..1.2) {
        let space = SpaceDescriptor::new(2, 1).unwrap();
        let p = pulses(eps, 20.0, true);
        let model = pair_step_hamiltonian(space, 0, 1, &p, 1, g).unwrap();
        let start = BasisLabel::new(&[1, 2], 0);
        let red = zeno_reduce(&model, &start).unwrap();

        // orthonormality
        for (i, a) in red.zero_basis.iter().enumerate() {
            for (j, b) in red.zero_basis.iter().enumerate() {
                let ov = a.inner(b).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ov.re - expect).abs() < 1e-10 && ov.im.abs() < 1e-10);
            }
        }
        // static coupling annihilates every zero-basis vector
        for b in &red.zero_basis {
            let mut out = vec![stap_core::linalg::CZERO; space.dim()];
            for (w, term) in model.statics() {
                term.apply_accumulate(*w, &b.amps, &mut out);
                term.apply_dagger_accumulate(*w, &b.amps, &mut out);
            }
            let n: f64 = out.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(n < 1e-9 * g, "coupling leaks {n}");
        }
        // Hermitian effective drives
        for (_, mat) in &red.effective.drives {
            prop_assert!(mat.hermiticity_defect() < 1e-12);
        }
        // coupling-strength independence of the decoupled basis
        let model_unit = pair_step_hamiltonian(space, 0, 1, &p, 1, 1.0).unwrap();
        let red_unit = zeno_reduce(&model_unit, &start).unwrap();
        prop_assert_eq!(red.zero_basis.len(), red_unit.zero_basis.len());
        for (a, b) in red.zero_basis.iter().zip(red_unit.zero_basis.iter()) {
            prop_assert!(a.distance_to(b) < 1e-9);
        }
        // round trip through coordinates
        let psi = ket(space, &start).unwrap();
        let coords = red.coords_of(&psi).unwrap();
        let back = red.expand(&coords).unwrap();
        prop_assert!(back.distance_to(&psi) < 1e-12);
    }

    /// The instantaneous dark state is annihilated by the full Hamiltonian.
    #[test]
    fn dark_state_is_a_zero_mode(
        eps in 0.1f64..1.2,
        g in 0.3f64..3.0,
        frac in 0.0f64..=1.0,
    ) {
        let space = SpaceDescriptor::new(1, 1).unwrap();
        let p = pulses(eps, 15.0, true);
        let mut model = HamiltonianModel::new(space);
        let (omega1, _) = stap_core::models::drives_from_pair(&p);
        model.add_drive(stap_core::models::DriveSpec::new(0, 3, 1, omega1).unwrap()).unwrap();
        model.add_coupling(stap_core::models::CouplingSpec::new(0, g).unwrap()).unwrap();
        let t = frac * 15.0;
        let dark = dark_state(&model, t, None).unwrap();
        let h = model.evaluate(t);
        let applied = h.apply(&dark.amps);
        let n: f64 = applied.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(n < 1e-10, "dark state driven by {n}");
        prop_assert!((dark.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn photon_cutoff_does_not_change_the_driven_sector() {
    // the collectively driven sector from |12;0> never reaches 2 photons,
    // so n_max = 1 and n_max = 2 give identical dynamics
    let p = pulses(0.25, 10.0, true);
    let mut finals = Vec::new();
    for n_max in [1usize, 2] {
        let space = SpaceDescriptor::new(2, n_max).unwrap();
        let model = pair_step_hamiltonian(space, 0, 1, &p, 1, 1.0).unwrap();
        let start = ket(space, &BasisLabel::new(&[1, 2], 0)).unwrap();
        let cfg = stap_core::dynamics::EvolutionConfig::new(10.0, 2000).unwrap();
        let rec = stap_core::dynamics::schrodinger_evolve(&model, &start, &cfg).unwrap();
        let fin = rec.final_pure().unwrap();
        let mut by_label = Vec::new();
        for label in [
            BasisLabel::new(&[1, 2], 0),
            BasisLabel::new(&[2, 1], 0),
            BasisLabel::new(&[2, 2], 1),
            BasisLabel::new(&[3, 2], 0),
            BasisLabel::new(&[2, 3], 0),
        ] {
            by_label.push(fin[space.flat_index(&label.atom_levels, label.photons).unwrap()]);
        }
        finals.push(by_label);
    }
    for (a, b) in finals[0].iter().zip(finals[1].iter()) {
        assert!((*a - *b).norm() < 1e-10, "cutoff changed an amplitude: {a:?} vs {b:?}");
    }
}

#[test]
fn undriven_configurations_are_frozen_with_a_warning() {
    let space = SpaceDescriptor::new(2, 1).unwrap();
    let p = pulses(0.25, 10.0, true);
    let model = pair_step_hamiltonian(space, 0, 1, &p, 1, 1.0).unwrap();
    let red = zeno_reduce(&model, &BasisLabel::new(&[0, 0], 0)).unwrap();
    assert!(red.frozen);
    assert_eq!(red.sector.len(), 1);
    assert!(red.bright_state().is_none());
    assert!(red.warnings.iter().any(|w| w.contains("frozen")));
}

#[test]
fn spectator_atom_is_untouched_by_a_transfer() {
    let space = SpaceDescriptor::new(2, 1).unwrap();
    let p = pulses(0.25f64.asin(), 10.0, false);
    let model = transfer_hamiltonian(space, 1, &p, 1.0).unwrap();
    let start = ket(space, &BasisLabel::new(&[0, 1], 0)).unwrap();
    let cfg = stap_core::dynamics::EvolutionConfig::new(10.0, 4000).unwrap();
    let rec = stap_core::dynamics::schrodinger_evolve(&model, &start, &cfg).unwrap();
    let fin = rec.final_pure().unwrap();
    let mut spectator_zero = 0.0;
    for (idx, label) in space.labels().enumerate() {
        if label.atom_levels[0] == 0 {
            spectator_zero += fin[idx].norm_sqr();
        }
    }
    assert!((spectator_zero - 1.0).abs() < 1e-12, "spectator leaked: {spectator_zero}");
}

#[test]
fn collective_step_with_three_sine_atoms_builds_and_is_hermitian() {
    let space = SpaceDescriptor::new(4, 1).unwrap();
    let p = pulses(0.2, 20.0, true);
    let model = zeno_step_hamiltonian(space, &[0, 1, 2], 3, 0, &p, 1.0).unwrap();
    assert_eq!(model.drives().len(), 4);
    assert_eq!(model.statics().len(), 4);
    assert!(model.evaluate(3.0).hermiticity_defect() < 1e-12);
}
