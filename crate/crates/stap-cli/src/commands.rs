//! The four commands (`pulse`, `evolve`, `gate`, `sweep`) plus the figure
//! presets that bind caption-default parameters to them.

use std::path::PathBuf;

use stap_core::dynamics::{
    fidelity_pure, lindblad_evolve, linspace, schrodinger_evolve, sweep_2d, EvolutionConfig,
    LindbladOp, LindbladSet, TrajectoryStates,
};
use stap_core::gates::{
    ccz_plan_for_mode, cz_plan_for_mode, execute_plan, multiqubit_plan, one_qubit_phase_plan,
    BoundaryPolicy, EpsilonChoice, ExecutionOptions, GatePlan, OpenRates, DEFAULT_IMPRINT_TIME,
    DEFAULT_PAIR_TIME, DEFAULT_TRANSFER_TIME, NOMINAL_EPSILON,
};
use stap_core::hilbert::{ket, BasisLabel, DensityMatrix, SpaceDescriptor, TransitionTerm};
use stap_core::invariant::{pulses_from_trajectory, AuxiliaryTrajectory, PulsePair};
use stap_core::models::{
    one_qubit_hamiltonian, pair_step_hamiltonian, transfer_hamiltonian, HamiltonianModel,
};

use crate::config::{parse_label, RunConfig};
use crate::error::{config_err, CliError, EXIT_THRESHOLD};
use crate::output::{csv_field, sig12, CsvBuilder};

/// Resolved invocation: merged configuration plus output behavior.
pub struct Ctx {
    pub cfg: RunConfig,
    pub no_timestamp: bool,
}

impl Ctx {
    fn out(&self, default_name: &str) -> PathBuf {
        self.cfg.output.clone().unwrap_or_else(|| PathBuf::from(default_name))
    }

    fn exact(&self) -> bool {
        self.cfg.exact_epsilon.unwrap_or(false)
    }

    /// ε resolution order: explicit value > mode default.
    fn epsilon(&self, exact_value: f64) -> f64 {
        self.cfg.epsilon.unwrap_or(if self.exact() { exact_value } else { NOMINAL_EPSILON })
    }

    fn g(&self) -> Result<f64, CliError> {
        let g = self.cfg.g.unwrap_or(1.0);
        if !(g > 0.0 && g.is_finite()) {
            return Err(config_err(format!("g = {g} must be positive")));
        }
        Ok(g)
    }
}

/// Smallest step count ≥ `base` (and ≥ 1000) divisible by `rows − 1`, with
/// the recording stride that yields exactly `rows` samples.
fn steps_for_rows(base: usize, rows: usize) -> Result<(usize, usize), CliError> {
    if rows < 2 {
        return Err(config_err(format!("rows = {rows}: at least 2 samples are needed")));
    }
    let r = rows - 1;
    let n = base.max(1000).div_ceil(r) * r;
    Ok((n, n / r))
}

fn sweep_name(eps: f64, t_f: f64, full: bool) -> Result<AuxiliaryTrajectory, CliError> {
    Ok(if full {
        AuxiliaryTrajectory::full_sweep(eps, t_f)?
    } else {
        AuxiliaryTrajectory::half_sweep(eps, t_f)?
    })
}

// ---------------------------------------------------------------------------
// pulse
// ---------------------------------------------------------------------------

pub fn cmd_pulse(ctx: Ctx) -> Result<i32, CliError> {
    let full = match ctx.cfg.delta_beta.as_deref() {
        None | Some("full") => true,
        Some("half") => false,
        Some(other) => {
            return Err(config_err(format!("delta_beta = '{other}' (expected full or half)")))
        }
    };
    let eps = ctx.epsilon(0.25f64.asin());
    let t_f = ctx.cfg.tf_over_g.unwrap_or(10.0);
    let rows = ctx.cfg.rows.unwrap_or(1001);
    if rows < 2 {
        return Err(config_err("rows must be at least 2"));
    }
    let traj = sweep_name(eps, t_f, full)?;
    let pulses = pulses_from_trajectory(&traj);

    let mut doc = CsvBuilder::new("pulse", !ctx.no_timestamp);
    doc.param_f64("epsilon", eps)
        .param_f64("t_f", t_f)
        .param("delta_beta", if full { "full (pi)" } else { "half (pi/2)" })
        .param("rows", rows)
        .param_f64("peak", pulses.peak())
        .comment("frequencies in units of g, times in units of 1/g")
        .header(&["t", "omega1", "omega2"]);
    for k in 0..rows {
        let t = t_f * k as f64 / (rows - 1) as f64;
        doc.numeric_row(&[t, pulses.omega1(t), pulses.omega2(t)]);
    }
    doc.write_atomic(&ctx.out("pulse.csv"))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

struct EvolveModel {
    space: SpaceDescriptor,
    model: HamiltonianModel,
    pulses: PulsePair,
    epsilon: f64,
    default_initial: &'static str,
    default_target: &'static str,
    default_labels: &'static [&'static str],
    losses: LindbladSet,
}

fn build_evolve_model(
    ctx: &Ctx,
    name: &str,
    t_f: f64,
    gamma: f64,
    kappa: f64,
) -> Result<EvolveModel, CliError> {
    let g = ctx.g()?;
    match name {
        "one_qubit" => {
            if kappa > 0.0 {
                return Err(config_err("the one_qubit model has no cavity; kappa must be 0"));
            }
            let eps = ctx.epsilon(0.25f64.asin());
            let pulses = pulses_from_trajectory(&sweep_name(eps, t_f, true)?);
            let model = one_qubit_hamiltonian(&pulses)?;
            let space = model.space;
            Ok(EvolveModel {
                space,
                model,
                pulses,
                epsilon: eps,
                default_initial: "1",
                default_target: "1",
                default_labels: &["1", "2", "4"],
                losses: LindbladSet::excited_branching(space, 0, gamma)?,
            })
        }
        "transfer" => {
            let eps = ctx.epsilon(0.25f64.asin());
            let space = SpaceDescriptor::new(2, 1)?;
            let pulses = pulses_from_trajectory(&sweep_name(eps, t_f, false)?);
            let model = transfer_hamiltonian(space, 1, &pulses, g)?;
            let mut losses = LindbladSet::excited_branching(space, 1, gamma)?;
            if kappa > 0.0 {
                losses.push(LindbladOp::new(kappa, TransitionTerm::photon_annihilation(space))?);
            }
            Ok(EvolveModel {
                space,
                model,
                pulses,
                epsilon: eps,
                default_initial: "01",
                default_target: "02",
                default_labels: &["01", "02", "04"],
                losses,
            })
        }
        "pair" => {
            let eps = ctx.epsilon(EpsilonChoice::PhaseMatched.collective_epsilon());
            let space = SpaceDescriptor::new(2, 1)?;
            let pulses = pulses_from_trajectory(&sweep_name(eps, t_f, true)?);
            let model = pair_step_hamiltonian(space, 0, 1, &pulses, 1, g)?;
            Ok(EvolveModel {
                space,
                model,
                pulses,
                epsilon: eps,
                default_initial: "12",
                default_target: "12",
                default_labels: &["12", "21"],
                losses: LindbladSet::cavity_and_atomic_loss(space, kappa, gamma)?,
            })
        }
        other => Err(config_err(format!(
            "unknown model '{other}' (expected one_qubit, transfer, or pair)"
        ))),
    }
}

pub fn cmd_evolve(ctx: Ctx) -> Result<i32, CliError> {
    let model_name = ctx
        .cfg
        .model
        .clone()
        .ok_or_else(|| config_err("evolve needs a model (one_qubit | transfer | pair)"))?;
    let open = ctx.cfg.gamma.is_some() || ctx.cfg.kappa.is_some();
    let gamma = ctx.cfg.gamma.unwrap_or(0.0);
    let kappa = ctx.cfg.kappa.unwrap_or(0.0);
    let t_f = ctx.cfg.tf_over_g.unwrap_or(10.0);
    let rows = ctx.cfg.rows.unwrap_or(201);
    let base = ctx.cfg.n_steps.unwrap_or(if open { 6000 } else { 20_000 });
    let (n_steps, every) = steps_for_rows(base, rows)?;

    let em = build_evolve_model(&ctx, &model_name, t_f, gamma, kappa)?;
    let initial_text =
        ctx.cfg.initial.clone().unwrap_or_else(|| em.default_initial.to_string());
    let target_text = ctx.cfg.target.clone().unwrap_or_else(|| em.default_target.to_string());
    let label_texts: Vec<String> = match &ctx.cfg.labels {
        Some(ls) => ls.clone(),
        None => em.default_labels.iter().map(|s| s.to_string()).collect(),
    };

    let initial_levels = parse_label(&initial_text, em.space.n_atoms)?;
    let target_levels = parse_label(&target_text, em.space.n_atoms)?;
    let initial = ket(em.space, &BasisLabel::new(&initial_levels, 0))?;
    let target_idx = em.space.flat_index(&target_levels, 0)?;
    let mut label_indices = Vec::new();
    for text in &label_texts {
        let levels = parse_label(text, em.space.n_atoms)?;
        label_indices.push(em.space.flat_index(&levels, 0)?);
    }

    let cfg_evo = EvolutionConfig::new(t_f, n_steps)?.with_recording(every);
    let rec = if open {
        lindblad_evolve(&em.model, &DensityMatrix::from_pure(&initial), &em.losses, &cfg_evo)?
    } else {
        schrodinger_evolve(&em.model, &initial, &cfg_evo)?
    };

    let mut doc = CsvBuilder::new("evolve", !ctx.no_timestamp);
    doc.param("model", &model_name)
        .param_f64("epsilon", em.epsilon)
        .param_f64("t_f", t_f)
        .param_f64("g", ctx.g()?)
        .param("mode", if open { "open (master equation)" } else { "closed" });
    if open {
        doc.param_f64("gamma", gamma).param_f64("kappa", kappa);
    }
    doc.param("n_steps", n_steps)
        .param("rows", rows)
        .param("initial", &initial_text)
        .param("target", &target_text)
        .param_f64("peak_drive", em.pulses.peak());
    for w in em.model.warnings.iter().chain(rec.warnings.iter()) {
        doc.comment(&format!("warning: {w}"));
    }

    let mut columns: Vec<String> = vec!["t".into()];
    columns.extend(label_texts.iter().map(|l| format!("pop_{l}")));
    columns.push("fidelity".into());
    columns.push("target_phase".into());
    doc.header(&columns.iter().map(|s| s.as_str()).collect::<Vec<_>>());

    for k in 0..rec.n_samples() {
        let pops = rec.sample_populations(k);
        let mut row = vec![rec.times[k]];
        row.extend(label_indices.iter().map(|&i| pops[i]));
        row.push(pops[target_idx]);
        let phase = match &rec.states {
            TrajectoryStates::Pure(states) => {
                let amp = states[k][target_idx];
                if amp.norm() > 1e-9 {
                    amp.arg()
                } else {
                    f64::NAN
                }
            }
            TrajectoryStates::Mixed(_) => f64::NAN,
        };
        row.push(phase);
        doc.numeric_row(&row);
    }
    doc.write_atomic(&ctx.out("evolve.csv"))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// gate
// ---------------------------------------------------------------------------

fn build_plan(ctx: &Ctx, protocol: &str) -> Result<GatePlan, CliError> {
    let g = ctx.g()?;
    let mode = if ctx.exact() { EpsilonChoice::PhaseMatched } else { EpsilonChoice::Nominal };
    let reject_scalar_overrides = |what: &str| -> Result<(), CliError> {
        if ctx.cfg.epsilon.is_some() || ctx.cfg.tf_over_g.is_some() {
            return Err(config_err(format!(
                "{what} uses per-step angles/durations; drop epsilon/tf_over_g and pick a mode \
                 via exact_epsilon"
            )));
        }
        Ok(())
    };
    match protocol {
        "one_qubit" => {
            let eps = ctx.epsilon(0.25f64.asin());
            let t_f = ctx.cfg.tf_over_g.unwrap_or(10.0);
            Ok(one_qubit_phase_plan(eps, t_f)?)
        }
        "two_qubit" => {
            reject_scalar_overrides("the two_qubit protocol")?;
            Ok(cz_plan_for_mode(mode, g)?)
        }
        "three_qubit" => {
            reject_scalar_overrides("the three_qubit protocol")?;
            Ok(ccz_plan_for_mode(mode, g)?)
        }
        other => {
            if let Some(n_text) = other.strip_prefix("multiqubit:") {
                let n: usize = n_text.parse().map_err(|_| {
                    config_err(format!("protocol '{other}': '{n_text}' is not a qubit count"))
                })?;
                reject_scalar_overrides("a multiqubit protocol")?;
                Ok(multiqubit_plan(
                    n,
                    mode.bare_epsilon(),
                    mode.collective_epsilon(),
                    mode.collective_epsilon(),
                    DEFAULT_TRANSFER_TIME,
                    DEFAULT_PAIR_TIME,
                    DEFAULT_IMPRINT_TIME,
                    g,
                )?)
            } else {
                Err(config_err(format!(
                    "unknown protocol '{other}' (expected one_qubit, two_qubit, three_qubit, \
                     or multiqubit:N)"
                )))
            }
        }
    }
}

/// Sibling path `<stem>_matrix.csv` for the realized-matrix artifact.
fn matrix_path(report_path: &std::path::Path) -> PathBuf {
    let stem = report_path.file_stem().map(|s| s.to_string_lossy().into_owned());
    let name = format!("{}_matrix.csv", stem.unwrap_or_else(|| "gate_report".into()));
    report_path.with_file_name(name)
}

fn label_digits(label: &BasisLabel) -> String {
    label.atom_levels.iter().map(|l| char::from(b'0' + l)).collect()
}

pub fn cmd_gate(ctx: Ctx) -> Result<i32, CliError> {
    let protocol = ctx
        .cfg
        .protocol
        .clone()
        .ok_or_else(|| config_err("gate needs a protocol (one_qubit | two_qubit | three_qubit | multiqubit:N)"))?;
    let plan = build_plan(&ctx, &protocol)?;
    let open = ctx.cfg.gamma.is_some() || ctx.cfg.kappa.is_some();
    let rates = OpenRates {
        kappa: ctx.cfg.kappa.unwrap_or(0.0),
        gamma: ctx.cfg.gamma.unwrap_or(0.0),
    };
    let threshold = ctx.cfg.threshold.unwrap_or(0.0);
    let opts = ExecutionOptions {
        n_steps_per_segment: ctx.cfg.n_steps.unwrap_or(20_000),
        use_effective: false,
        open: open.then_some(rates),
        boundary_policy: BoundaryPolicy::Flag,
    };
    let report = execute_plan(&plan, &opts)?;

    let out = ctx.out("gate_report.csv");
    let mut doc = CsvBuilder::new("gate", !ctx.no_timestamp);
    doc.param("protocol", &protocol)
        .param("mode", if ctx.exact() { "phase_matched" } else { "nominal" });
    if plan.g > 0.0 {
        doc.param_f64("g", plan.g);
    }
    doc.param("n_steps_per_segment", opts.n_steps_per_segment)
        .param("segments", plan.n_segments())
        .param_f64("total_time", plan.total_time());
    if open {
        doc.param_f64("gamma", rates.gamma).param_f64("kappa", rates.kappa);
    }
    doc.param_f64("threshold", threshold)
        .param_f64("gate_fidelity", report.gate_fidelity)
        .param_f64("unitarity_defect", report.unitarity_defect)
        .param_f64("max_boundary_impurity", report.max_boundary_impurity());
    for w in plan.warnings.iter().chain(report.warnings.iter()) {
        doc.comment(&format!("warning: {w}"));
    }
    doc.header(&["state", "fidelity", "phase", "phase_error", "leakage"]);
    for (j, label) in report.computational_labels.iter().enumerate() {
        let phase = report
            .realized_matrix
            .as_ref()
            .map(|m| {
                let a = m[(j, j)];
                if a.norm() > 1e-9 {
                    a.arg()
                } else {
                    f64::NAN
                }
            })
            .unwrap_or(f64::NAN);
        doc.row(&[
            label_digits(label),
            sig12(report.per_state_fidelity[j]),
            sig12(phase),
            sig12(report.per_state_phase_error[j]),
            sig12(report.per_state_leakage[j]),
        ]);
    }
    doc.write_atomic(&out)?;

    if let Some(m) = &report.realized_matrix {
        let mut mdoc = CsvBuilder::new("gate (realized matrix)", !ctx.no_timestamp);
        mdoc.param("protocol", &protocol)
            .comment("row i, columns re_<state>/im_<state>: <comp_i|U|comp_j>");
        let mut cols = vec!["state".to_string()];
        for label in &report.computational_labels {
            cols.push(format!("re_{}", label_digits(label)));
            cols.push(format!("im_{}", label_digits(label)));
        }
        mdoc.header(&cols.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        for (i, label) in report.computational_labels.iter().enumerate() {
            let mut fields = vec![label_digits(label)];
            for j in 0..report.computational_labels.len() {
                fields.push(sig12(m[(i, j)].re));
                fields.push(sig12(m[(i, j)].im));
            }
            mdoc.row(&fields);
        }
        mdoc.write_atomic(&matrix_path(&out))?;
    }

    println!(
        "gate_fidelity = {} (threshold {}); report: {}",
        sig12(report.gate_fidelity),
        sig12(threshold),
        out.display()
    );
    if report.gate_fidelity < threshold {
        eprintln!(
            "stap: gate fidelity {} is below the threshold {}",
            sig12(report.gate_fidelity),
            sig12(threshold)
        );
        return Ok(EXIT_THRESHOLD);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn forbid_time_axis_overrides(ctx: &Ctx) -> Result<(), CliError> {
    if ctx.cfg.grid_y.min.is_some() || ctx.cfg.grid_y.max.is_some() {
        return Err(config_err(
            "the time axis is pinned to [0, t_f]; set tf_over_g and grid.y.count instead",
        ));
    }
    Ok(())
}

/// Time-resolved open sweep: one master-equation run per x value, sampling
/// the target population on the y (time) grid.
#[allow(clippy::too_many_arguments)]
fn rate_time_sweep(
    doc: &mut CsvBuilder,
    x_name: &str,
    xs: &[f64],
    t_f: f64,
    y_count: usize,
    make_losses: &dyn Fn(f64) -> Result<LindbladSet, stap_core::Error>,
    model: &HamiltonianModel,
    initial: &BasisLabel,
    target_idx: usize,
    base_steps: usize,
) -> Result<(), CliError> {
    let (n_steps, every) = steps_for_rows(base_steps, y_count)?;
    doc.param("n_steps", n_steps);
    doc.header(&[x_name, "t", "fidelity", "status"]);
    let rho0 = DensityMatrix::from_pure(&ket(model.space, initial)?);
    for &x in xs {
        let run = make_losses(x).and_then(|losses| {
            let cfg = EvolutionConfig::new(t_f, n_steps)?.with_recording(every);
            lindblad_evolve(model, &rho0, &losses, &cfg)
        });
        match run {
            Ok(rec) => {
                for k in 0..rec.n_samples() {
                    let f = rec.sample_populations(k)[target_idx];
                    doc.row(&[sig12(x), sig12(rec.times[k]), sig12(f), "ok".into()]);
                }
            }
            Err(e) => {
                for k in 0..y_count {
                    let t = t_f * k as f64 / (y_count - 1) as f64;
                    doc.row(&[
                        sig12(x),
                        sig12(t),
                        sig12(f64::NAN),
                        csv_field(&format!("error: {e}")),
                    ]);
                }
            }
        }
    }
    Ok(())
}

pub fn cmd_sweep(ctx: Ctx) -> Result<i32, CliError> {
    let kind = ctx.cfg.sweep.clone().ok_or_else(|| {
        config_err(
            "sweep needs a kind: one_qubit_epsilon_tf | one_qubit_gamma_time | \
             pair_kappa_time | pair_gamma_time",
        )
    })?;
    let g = ctx.g()?;
    let mut doc = CsvBuilder::new("sweep", !ctx.no_timestamp);
    doc.param("sweep", &kind).param_f64("g", g);

    match kind.as_str() {
        "one_qubit_epsilon_tf" => {
            let (x0, x1, xc) = ctx.cfg.grid_x.resolve(0.1, 1.0, 30);
            let (y0, y1, yc) = ctx.cfg.grid_y.resolve(5.0, 50.0, 30);
            let n_steps = ctx.cfg.n_steps.unwrap_or(4000);
            doc.param("n_steps", n_steps)
                .comment("closed one-qubit phase sweep; fidelity = final population on the qubit level")
                .header(&["epsilon", "g_tf", "fidelity", "status"]);
            let xs = linspace(x0, x1, xc);
            let ys = linspace(y0, y1, yc);
            let space = SpaceDescriptor::new(1, 0)?;
            let start = ket(space, &BasisLabel::new(&[1], 0))?;
            let grid = sweep_2d(&xs, &ys, |eps, t_f| {
                let traj = AuxiliaryTrajectory::full_sweep(eps, t_f)?;
                let model = one_qubit_hamiltonian(&pulses_from_trajectory(&traj))?;
                let cfg = EvolutionConfig::new(t_f, n_steps)?;
                let rec = schrodinger_evolve(&model, &start, &cfg)?;
                fidelity_pure(rec.final_pure().expect("closed run"), &start, "qubit level")
            });
            for ix in 0..xs.len() {
                for iy in 0..ys.len() {
                    let cell = grid.cell(ix, iy);
                    match &cell.report {
                        Ok(rep) => doc.row(&[
                            sig12(cell.x),
                            sig12(cell.y),
                            sig12(rep.fidelity_population),
                            "ok".into(),
                        ]),
                        Err(e) => doc.row(&[
                            sig12(cell.x),
                            sig12(cell.y),
                            sig12(f64::NAN),
                            csv_field(&format!("error: {e}")),
                        ]),
                    };
                }
            }
        }
        "one_qubit_gamma_time" => {
            forbid_time_axis_overrides(&ctx)?;
            let (x0, x1, xc) = ctx.cfg.grid_x.resolve(0.0, 0.1, 30);
            let yc = ctx.cfg.grid_y.count.unwrap_or(30);
            let t_f = ctx.cfg.tf_over_g.unwrap_or(10.0);
            let eps = ctx.epsilon(0.25f64.asin());
            let pulses = pulses_from_trajectory(&AuxiliaryTrajectory::full_sweep(eps, t_f)?);
            let model = one_qubit_hamiltonian(&pulses)?;
            let space = model.space;
            doc.param_f64("epsilon", eps).param_f64("t_f", t_f);
            doc.comment("open one-qubit sweep; fidelity = population on the qubit level");
            rate_time_sweep(
                &mut doc,
                "gamma",
                &linspace(x0, x1, xc),
                t_f,
                yc,
                &|gamma| LindbladSet::excited_branching(space, 0, gamma),
                &model,
                &BasisLabel::new(&[1], 0),
                space.flat_index(&[1], 0)?,
                ctx.cfg.n_steps.unwrap_or(5800),
            )?;
        }
        "pair_kappa_time" | "pair_gamma_time" => {
            forbid_time_axis_overrides(&ctx)?;
            let (x0, x1, xc) = ctx.cfg.grid_x.resolve(0.0, 0.1, 30);
            let yc = ctx.cfg.grid_y.count.unwrap_or(30);
            let t_f = ctx.cfg.tf_over_g.unwrap_or(DEFAULT_IMPRINT_TIME);
            let eps = ctx.epsilon(EpsilonChoice::PhaseMatched.collective_epsilon());
            let space = SpaceDescriptor::new(2, 1)?;
            let pulses = pulses_from_trajectory(&AuxiliaryTrajectory::full_sweep(eps, t_f)?);
            let model = pair_step_hamiltonian(space, 0, 1, &pulses, 1, g)?;
            doc.param_f64("epsilon", eps).param_f64("t_f", t_f);
            let target_idx = space.flat_index(&[1, 2], 0)?;
            let initial = BasisLabel::new(&[1, 2], 0);
            if kind == "pair_kappa_time" {
                let gamma = ctx.cfg.gamma.unwrap_or(0.0);
                doc.param_f64("gamma", gamma);
                doc.comment("open collective-step sweep; fidelity = returned population of the initial pair configuration");
                rate_time_sweep(
                    &mut doc,
                    "kappa",
                    &linspace(x0, x1, xc),
                    t_f,
                    yc,
                    &|kappa| LindbladSet::cavity_and_atomic_loss(space, kappa, gamma),
                    &model,
                    &initial,
                    target_idx,
                    ctx.cfg.n_steps.unwrap_or(5800),
                )?;
            } else {
                let kappa = ctx.cfg.kappa.unwrap_or(0.0);
                doc.param_f64("kappa", kappa);
                doc.comment("open collective-step sweep; fidelity = returned population of the initial pair configuration");
                rate_time_sweep(
                    &mut doc,
                    "gamma",
                    &linspace(x0, x1, xc),
                    t_f,
                    yc,
                    &|gamma| LindbladSet::cavity_and_atomic_loss(space, kappa, gamma),
                    &model,
                    &initial,
                    target_idx,
                    ctx.cfg.n_steps.unwrap_or(5800),
                )?;
            }
        }
        other => {
            return Err(config_err(format!(
                "unknown sweep kind '{other}' (expected one_qubit_epsilon_tf, \
                 one_qubit_gamma_time, pair_kappa_time, or pair_gamma_time)"
            )))
        }
    }

    doc.write_atomic(&ctx.out("sweep.csv"))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

pub enum FigureCommand {
    Pulse,
    Evolve,
    Sweep,
}

/// Caption-default preset for one figure id, plus the command it runs and
/// the default output name.
pub fn figure_preset(id: &str) -> Result<(FigureCommand, RunConfig, String), CliError> {
    let mut cfg = RunConfig::default();
    let command = match id {
        "fig2a" => {
            cfg.delta_beta = Some("full".into());
            FigureCommand::Pulse
        }
        "fig2b" => {
            cfg.model = Some("one_qubit".into());
            cfg.initial = Some("1".into());
            cfg.target = Some("1".into());
            FigureCommand::Evolve
        }
        "fig3a" => {
            cfg.sweep = Some("one_qubit_epsilon_tf".into());
            FigureCommand::Sweep
        }
        "fig3b" => {
            cfg.sweep = Some("one_qubit_gamma_time".into());
            FigureCommand::Sweep
        }
        "fig4a" => {
            cfg.delta_beta = Some("half".into());
            FigureCommand::Pulse
        }
        "fig4b" => {
            cfg.model = Some("transfer".into());
            cfg.initial = Some("01".into());
            cfg.target = Some("02".into());
            FigureCommand::Evolve
        }
        "fig4c" => {
            cfg.model = Some("pair".into());
            cfg.initial = Some("12".into());
            cfg.target = Some("12".into());
            FigureCommand::Evolve
        }
        "fig5a" => {
            cfg.sweep = Some("pair_kappa_time".into());
            cfg.tf_over_g = Some(DEFAULT_IMPRINT_TIME);
            FigureCommand::Sweep
        }
        "fig5b" => {
            cfg.sweep = Some("pair_gamma_time".into());
            cfg.tf_over_g = Some(DEFAULT_IMPRINT_TIME);
            FigureCommand::Sweep
        }
        other => {
            return Err(config_err(format!(
                "unknown figure '{other}' (expected fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, \
                 fig4c, fig5a, or fig5b)"
            )))
        }
    };
    Ok((command, cfg, format!("{id}.csv")))
}
