//! Integrator-level checks: fourth-order convergence against an analytic
//! solution, agreement of the master-equation path with the pure-state path
//! at zero loss rate, recording cadence, and sweep error capture.

use stap_core::dynamics::{
    fidelity_pure, lindblad_evolve, linspace, schrodinger_evolve, sweep_2d, EvolutionConfig,
    LindbladSet,
};
use stap_core::hilbert::{ket, BasisLabel, DensityMatrix, SpaceDescriptor, StateVector};
use stap_core::invariant::{pulses_from_trajectory, AuxiliaryTrajectory};
use stap_core::models::{pair_step_hamiltonian, DriveSpec, HamiltonianModel, Pulse};

/// Constant drive between |1⟩ and |4⟩: the populations follow a Rabi cosine,
/// which pins the integrator's global error exactly.
fn rabi_model(space: SpaceDescriptor, omega: f64) -> HamiltonianModel {
    let mut m = HamiltonianModel::new(space);
    m.add_drive(DriveSpec::new(0, 4, 1, Pulse::Constant(omega)).unwrap()).unwrap();
    m
}

fn rabi_error(space: SpaceDescriptor, omega: f64, t_f: f64, n_steps: usize) -> f64 {
    let model = rabi_model(space, omega);
    let start = ket(space, &BasisLabel::new(&[1], 0)).unwrap();
    let cfg = EvolutionConfig::new(t_f, n_steps).unwrap();
    let rec = schrodinger_evolve(&model, &start, &cfg).unwrap();
    let fin = rec.final_pure().unwrap();
    let i1 = space.flat_index(&[1], 0).unwrap();
    let i4 = space.flat_index(&[4], 0).unwrap();
    let expect_1 = stap_core::linalg::c64((omega * t_f).cos(), 0.0);
    let expect_4 = stap_core::linalg::c64(0.0, -(omega * t_f).sin());
    (fin[i1] - expect_1).norm() + (fin[i4] - expect_4).norm()
}

#[test]
fn integrator_is_fourth_order() {
    let space = SpaceDescriptor::new(1, 0).unwrap();
    let e_coarse = rabi_error(space, 0.9, 10.0, 1000);
    let e_fine = rabi_error(space, 0.9, 10.0, 2000);
    assert!(e_coarse > 1e-12, "coarse error too small to resolve the order: {e_coarse}");
    let ratio = e_coarse / e_fine;
    assert!(
        ratio > 12.0,
        "halving the step should cut the error ~16x (fourth order), got {ratio:.2}"
    );
}

#[test]
fn zero_rate_master_equation_matches_pure_evolution() {
    let space = SpaceDescriptor::new(2, 1).unwrap();
    let traj = AuxiliaryTrajectory::full_sweep(0.25, 10.0).unwrap();
    let pulses = pulses_from_trajectory(&traj);
    let model = pair_step_hamiltonian(space, 0, 1, &pulses, 1, 1.0).unwrap();
    let start = ket(space, &BasisLabel::new(&[1, 2], 0)).unwrap();
    let cfg = EvolutionConfig::new(10.0, 2000).unwrap();

    let pure = schrodinger_evolve(&model, &start, &cfg).unwrap();
    let open = lindblad_evolve(&model, &DensityMatrix::from_pure(&start), &LindbladSet::none(), &cfg)
        .unwrap();

    let fin = StateVector { space, amps: pure.final_pure().unwrap().to_vec() };
    let rho_pure = DensityMatrix::from_pure(&fin);
    let rho_open = open.final_mixed().unwrap();
    let dev = rho_open.sub(&rho_pure.mat).max_abs();
    assert!(dev < 1e-6, "master equation deviates from pure evolution by {dev}");
}

#[test]
fn closed_evolution_reports_negligible_norm_drift() {
    let space = SpaceDescriptor::new(2, 1).unwrap();
    let traj = AuxiliaryTrajectory::full_sweep(0.25, 10.0).unwrap();
    let pulses = pulses_from_trajectory(&traj);
    let model = pair_step_hamiltonian(space, 0, 1, &pulses, 1, 1.0).unwrap();
    let start = ket(space, &BasisLabel::new(&[1, 2], 0)).unwrap();
    let rec = schrodinger_evolve(&model, &start, &EvolutionConfig::new(10.0, 4000).unwrap())
        .unwrap();
    assert!(rec.drift < 1e-10, "norm drift {a}", a = rec.drift);
    assert!(rec.min_eigenvalue.is_none());
}

#[test]
fn recording_cadence_counts_samples_and_endpoints() {
    let space = SpaceDescriptor::new(1, 0).unwrap();
    let model = rabi_model(space, 0.5);
    let start = ket(space, &BasisLabel::new(&[1], 0)).unwrap();
    let cfg = EvolutionConfig::new(10.0, 20_000).unwrap().with_recording(500);
    let rec = schrodinger_evolve(&model, &start, &cfg).unwrap();
    assert_eq!(rec.n_samples(), 41);
    assert_eq!(rec.times.len(), 41);
    assert!(rec.times[0].abs() < 1e-15);
    assert!((rec.times.last().unwrap() - 10.0).abs() < 1e-12);
    let i1 = space.flat_index(&[1], 0).unwrap();
    for k in 0..rec.n_samples() {
        let pops = rec.sample_populations(k);
        assert_eq!(pops.len(), space.dim());
        let t = rec.times[k];
        let p = pops[i1];
        assert!((p - (0.5 * t).cos().powi(2)).abs() < 1e-8, "sample {k} off: {p} at t={t}");
    }
}

#[test]
fn open_evolution_tracks_the_smallest_eigenvalue() {
    let space = SpaceDescriptor::new(1, 1).unwrap();
    let model = rabi_model(space, 0.7);
    let start = DensityMatrix::from_pure(&ket(space, &BasisLabel::new(&[1], 0)).unwrap());
    let losses = LindbladSet::excited_branching(space, 0, 0.1).unwrap();
    let rec = lindblad_evolve(&model, &start, &losses, &EvolutionConfig::new(8.0, 1500).unwrap())
        .unwrap();
    let min_eig = rec.min_eigenvalue.expect("open runs must track positivity");
    assert!(min_eig > -1e-8, "density matrix went indefinite: {min_eig}");
    let rho = rec.final_mixed().unwrap();
    assert!((rho.trace().re - 1.0).abs() < 1e-8);
}

#[test]
fn sweeps_capture_cell_failures_without_aborting() {
    let space = SpaceDescriptor::new(1, 0).unwrap();
    let target = ket(space, &BasisLabel::new(&[1], 0)).unwrap();
    let xs = linspace(-1.0, 1.0, 3); // -1, 0, 1
    let ys = linspace(0.5, 1.0, 2);
    let grid = sweep_2d(&xs, &ys, |x, y| {
        if x < 0.0 {
            return Err(stap_core::Error::Parameter("negative drive rejected".into()));
        }
        let model = rabi_model(space, x * y);
        let rec = schrodinger_evolve(
            &model,
            &target,
            &EvolutionConfig::new(1.0, 1000).unwrap(),
        )?;
        fidelity_pure(rec.final_pure().unwrap(), &target, "stay")
    });
    assert_eq!(grid.cells.len(), 6);
    assert_eq!(grid.n_failed(), 2);
    // failed cells keep their coordinates in the error text
    let bad = grid.cell(0, 0);
    assert!(bad.report.is_err());
    match &bad.report {
        Err(stap_core::Error::Parameter(msg)) => assert!(msg.contains("x=-1")),
        other => panic!("expected a parameter error, got {other:?}"),
    }
    // x = 0 cell: no drive at all, state stays put with fidelity 1
    let still = grid.cell(1, 0).report.as_ref().unwrap();
    assert!((still.fidelity_population - 1.0).abs() < 1e-12);
}

#[test]
fn fidelity_reports_agree_between_pure_and_mixed_paths() {
    let space = SpaceDescriptor::new(1, 0).unwrap();
    let a = ket(space, &BasisLabel::new(&[1], 0)).unwrap();
    let mut b = StateVector::zero(space);
    b.add_scaled(stap_core::linalg::c64(0.6, 0.0), &a);
    b.add_scaled(
        stap_core::linalg::c64(0.8, 0.0),
        &ket(space, &BasisLabel::new(&[2], 0)).unwrap(),
    );
    let pure = fidelity_pure(&b.amps, &a, "level one").unwrap();
    assert!((pure.fidelity_population - 0.36).abs() < 1e-12);
    assert!((pure.overlap.re - 0.6).abs() < 1e-12);
    let rho = DensityMatrix::from_pure(&b);
    let mixed = stap_core::dynamics::fidelity_mixed(&rho.mat, &a, "level one").unwrap();
    assert!((mixed.fidelity_population - 0.36).abs() < 1e-12);
}
