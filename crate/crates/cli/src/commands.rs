use std::f64::consts::{PI, TAU};

use hybridsim::hybrid::{
    commutator_table_check, compare_spectra, dispersive_params, qnd_invariant_check, sw_transform,
    transmon_transition, truncation_stability, EffectiveParams, SystemKind, SystemSpec, ENSEMBLE,
};
use hybridsim::magnetostatics::{coupling_map, ensemble_coupling};
use hybridsim::protocols::{
    protection_dynamic, protection_factor, pulse_bandwidth_check, qnd_sequence_sim, sequence_feasibility, swap_sim,
    transmon_transition_at, virtual_exchange_sim, ExchangeOptions, PulseSequence,
};
use hybridsim::transmon::{
    cubic_coefficient, perturbed_states, phase_zpf, plasma_frequency, spectrum, substitution_error,
};
use serde_json::{json, Map, Value};

use crate::config::{decoherence, ProtocolConfig, RunConfig};
use crate::error::{CliError, Context};
use crate::output::{Format, Output, Table};

fn hz(omega: f64) -> f64 {
    omega / TAU
}

fn kv_table(pairs: &[(&str, f64)]) -> Table {
    let mut t = Table::new(vec!["quantity", "value"]);
    for (k, v) in pairs {
        t.push(vec![(*k).into(), (*v).into()]);
    }
    t
}

fn kv_json(pairs: &[(&str, f64)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()
}

pub fn transmon(cfg: &RunConfig) -> Result<Output, CliError> {
    let layout = cfg.transmon()?.layout;
    let p = cfg.transmon_params()?.effective()?;
    let ratio = p.ratio();
    let levels = spectrum(&p)?;
    let pert = perturbed_states(ratio)?;
    let quantities = [
        ("ej_over_ec", ratio),
        ("ec_hz", hz(p.ec)),
        ("ej_hz", hz(p.ej)),
        ("plasma_frequency_hz", hz(plasma_frequency(&p))),
        ("phi_zpf", phase_zpf(&p)),
        ("cubic_coefficient", cubic_coefficient(&p)),
        ("qubit_frequency_hz", hz(levels.qubit_frequency())),
        ("anharmonicity_hz", hz(levels.anharmonicity())),
        ("ground_0", pert.down[0]),
        ("ground_2", pert.down[1]),
        ("ground_4", pert.down[2]),
        ("excited_1", pert.up[0]),
        ("excited_3", pert.up[1]),
        ("excited_5", pert.up[2]),
        ("tau_x_matrix_element", pert.x_element),
        ("substitution_error", substitution_error(ratio)?),
        ("exact_ground_overlap", levels.ground_overlap),
        ("exact_excited_overlap", levels.excited_overlap),
    ];
    let mut json = kv_json(&quantities);
    json.insert("layout".into(), json!(layout.name()));
    let summary = vec![format!(
        "E_J/E_C = {ratio}, phi_zpf = {:.4}, substitution error = {:.4}",
        phase_zpf(&p),
        substitution_error(ratio)?
    )];
    Ok(Output { json: Value::Object(json), table: kv_table(&quantities), trace: None, summary, default_format: Format::Json })
}

pub fn coupling_map_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let geometry = cfg.geometry()?;
    let params = cfg.transmon_params()?;
    let plane = cfg.grid()?;
    let axis = cfg.spin_axis();
    let points = coupling_map(&geometry, &params, &plane, axis)?;

    let mut table = Table::new(vec!["x_m", "y_m", "z_m", "g_abs_hz"]);
    let mut best: Option<(usize, f64)> = None;
    let mut masked = 0usize;
    for (k, pt) in points.iter().enumerate() {
        let g = pt.g_abs.map_or(f64::NAN, hz);
        match pt.g_abs {
            Some(_) if best.map_or(true, |(_, b)| g > b) => best = Some((k, g)),
            None => masked += 1,
            _ => {}
        }
        table.push(vec![pt.position.x.into(), pt.position.y.into(), pt.position.z.into(), g.into()]);
    }

    let mut summary = Vec::new();
    let mut json = Map::new();
    json.insert("layout".into(), json!(cfg.transmon()?.layout.name()));
    json.insert("nv_axis".into(), json!([axis.x, axis.y, axis.z]));
    json.insert("masked_points".into(), json!(masked));
    if let Some((k, g)) = best {
        let p = points[k].position;
        summary.push(format!("max |g_ts|/2pi = {g:.4e} Hz at ({:.4e}, {:.4e}, {:.4e}) m, grid index {k}", p.x, p.y, p.z));
        json.insert("max_g_abs_hz".into(), json!(g));
        json.insert("max_position_m".into(), json!([p.x, p.y, p.z]));
        json.insert("max_grid_index".into(), json!(k));
    }
    if masked > 0 {
        summary.push(format!("{masked} grid points within the wire cutoff were masked"));
    }
    json.insert("points".into(), table.to_json());
    Ok(Output { json: Value::Object(json), table, trace: None, summary, default_format: Format::Csv })
}

pub fn ensemble(cfg: &RunConfig, seed: u64) -> Result<Output, CliError> {
    let geometry = cfg.geometry()?;
    let params = cfg.transmon_params()?;
    let specs = cfg.ensembles(seed)?;
    let mut table = Table::new(vec![
        "edge_m",
        "density_per_cm3",
        "spins",
        "seed",
        "g_hz",
        "rms_single_hz",
        "longitudinal_mean_hz",
        "longitudinal_spread_hz",
    ]);
    let mut summary = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let density = spec.density * 1e-6;
        let r = ensemble_coupling(&geometry, &params, spec)
            .context(|| format!("ensemble row {i} (edge {:e} m, density {density:e} cm^-3)", spec.edge))?;
        summary.push(format!(
            "L_N = {:.3e} m, n = {density:.3e} cm^-3: N = {}, g_t-ens/2pi = {:.4e} Hz",
            spec.edge,
            r.spins,
            hz(r.g)
        ));
        table.push(vec![
            spec.edge.into(),
            density.into(),
            r.spins.into(),
            r.seed.into(),
            hz(r.g).into(),
            hz(r.rms_single).into(),
            hz(r.longitudinal_mean).into(),
            hz(r.longitudinal_spread).into(),
        ]);
    }
    let json = json!({
        "layout": cfg.transmon()?.layout.name(),
        "seed": seed,
        "rows": table.to_json(),
    });
    Ok(Output { json, table, trace: None, summary, default_format: Format::Csv })
}

fn effective_json(eff: &EffectiveParams<f64>) -> Value {
    let pairs: Vec<Value> = eff
        .pairs
        .iter()
        .map(|p| {
            json!({
                "partner": p.partner,
                "g_abs_hz": hz(p.g.norm()),
                "g_phase_rad": p.g.arg(),
                "delta_hz": hz(p.delta),
                "chi_hz": hz(p.chi),
                "g_over_delta": p.ratio(),
            })
        })
        .collect();
    json!({
        "pairs": pairs,
        "chi_hz": eff.chi.map(hz),
        "two_chi_hz": eff.chi.map(|c| 2.0 * hz(c)),
        "j_abs_hz": eff.j.map(|j| hz(j.norm())),
        "g_virtual_abs_hz": eff.g_virtual.map(|g| hz(g.norm())),
        "transmon_shift_hz": hz(eff.transmon_shift),
        "warnings": eff.warnings,
    })
}

/// Exact change of the transmon transition when each partner gains one
/// excitation.
fn exact_partner_shifts(spec: &SystemSpec<f64>) -> Result<Map<String, Value>, CliError> {
    let space = spec.space()?;
    let pairs = spec.pairs();
    let zero = vec![0usize; pairs.len() + 1];
    let base = transmon_transition(spec, &zero)?;
    let mut out = Map::new();
    for p in &pairs {
        let mut levels = zero.clone();
        levels[space.position(p.partner)?] = 1;
        out.insert(p.partner.to_string(), json!(hz(transmon_transition(spec, &levels)? - base)));
    }
    Ok(out)
}

pub fn spectrum_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let spec = cfg.system()?;
    let opts = cfg.spectrum.clone().unwrap_or_default();
    let eff = dispersive_params(&spec)?;
    let rows = compare_spectra(&spec, opts.max_excitations)?;
    let sw = sw_transform(&spec)?;
    let shifts = exact_partner_shifts(&spec)?;

    let mut table = Table::new(vec!["label", "excitations", "exact_hz", "dispersive_hz", "difference_hz", "weight"]);
    for r in &rows {
        table.push(vec![
            r.label.as_str().into(),
            r.excitations.into(),
            hz(r.exact).into(),
            hz(r.dispersive).into(),
            hz(r.exact - r.dispersive).into(),
            r.weight.into(),
        ]);
    }

    let mut identities = Vec::new();
    for (name, kind) in [("s-t-s", SystemKind::Sts), ("c-t-ens", SystemKind::CTEns)] {
        for r in commutator_table_check::<f64>(kind, opts.commutator_levels)? {
            identities.push(json!({"table": name, "identity": r.identity, "max_error": r.max_error, "pass": r.pass}));
        }
    }
    let passed = identities.iter().filter(|v| v["pass"] == json!(true)).count();
    let qnd = match spec.kind() {
        SystemKind::TEns => Some(qnd_invariant_check(&spec)?),
        _ => None,
    };
    let stability = match spec.kind() {
        SystemKind::TEns | SystemKind::CTEns => Some(truncation_stability(&spec)?),
        _ => None,
    };

    let mut summary = Vec::new();
    if let Some(c) = eff.chi {
        summary.push(format!("2chi/2pi = {:.6e} Hz", 2.0 * hz(c)));
    }
    if let Some(s) = shifts.get(ENSEMBLE) {
        summary.push(format!("exact ensemble-number shift of the transmon line = {:.6e} Hz", s.as_f64().unwrap_or(f64::NAN)));
    }
    summary.push(format!("Schrieffer-Wolff residual/2pi = {:.4e} Hz", hz(sw.residual)));
    summary.push(format!("commutator identities: {passed}/{} pass", identities.len()));
    summary.extend(eff.warnings.iter().map(|w| format!("warning: {w}")));

    let json = json!({
        "system": spec.kind().name(),
        "effective": effective_json(&eff),
        "exact_partner_shift_hz": shifts,
        "levels": table.to_json(),
        "schrieffer_wolff": {
            "residual_hz": hz(sw.residual),
            "relative_residual": sw.relative_residual(),
            "h_norm_hz": hz(sw.h_norm),
            "max_excitations": sw.max_excitations,
        },
        "commutators": {"passed": passed, "total": identities.len(), "identities": identities},
        "qnd_commutator": qnd,
        "truncation_stability": stability,
    });
    Ok(Output { json, table, trace: None, summary, default_format: Format::Json })
}

pub fn protocol(cfg: &RunConfig) -> Result<Output, CliError> {
    let spec = cfg.system()?;
    let proto = cfg.protocol()?;
    let name = proto.name();
    let out = match proto {
        ProtocolConfig::Swap(c) => {
            let deco = decoherence(c.transmon_t1_s, c.dark_leak_rate_per_s)?;
            let r = swap_sim(&spec, &deco, c.points)?;
            let g = spec.pairs()[0].g.norm();
            let expected = PI / g;
            let fitted = TAU / r.fitted_angular_frequency;
            let mut trace = Table::new(vec!["time_s", "p_bright", "p_transmon"]);
            for p in &r.trace {
                trace.push(vec![p.time_s.into(), p.p_bright.into(), p.p_transmon.into()]);
            }
            let json = json!({
                "swap_time_s": r.swap_time_s,
                "fidelity": r.fidelity,
                "rabi_period_s": fitted,
                "expected_period_s": expected,
                "period_relative_error": (fitted - expected).abs() / expected,
                "fit_residual": r.fit_residual,
                "decoherence": deco,
                "trace": trace.to_json(),
            });
            let summary = vec![format!("swap fidelity {:.6}, Rabi period {fitted:.6e} s", r.fidelity)];
            (json, trace.clone(), Some(trace), summary)
        }
        ProtocolConfig::Qnd(c) => {
            let deco = decoherence(c.transmon_t1_s, c.dark_leak_rate_per_s)?;
            let seq = match &c.steps {
                Some(steps) => {
                    let transition =
                        |n: usize| transmon_transition_at(&spec, spec.omega_t(), n).map_err(CliError::from);
                    let steps = steps
                        .iter()
                        .enumerate()
                        .map(|(i, s)| s.to_step(i, transition))
                        .collect::<Result<Vec<_>, _>>()?;
                    PulseSequence::new(steps)?
                }
                None if c.swap => PulseSequence::qnd_readout(&spec, c.pulse_duration_s)?,
                None => PulseSequence::without_swap(&spec, c.pulse_duration_s)?,
            };
            let r = qnd_sequence_sim(&spec, &seq, &deco, c.dynamics.dynamics())?;
            let chi = dispersive_params(&spec)?.chi.unwrap_or(0.0);
            let mut json = serde_json::to_value(&r).expect("QND record serializes");
            let obj = json.as_object_mut().expect("record is an object");
            obj.insert("inferred_state".into(), json!(r.inferred.label()));
            obj.insert("steps".into(), json!(seq.steps.len()));
            obj.insert("pulse_selectivity".into(), json!(pulse_bandwidth_check(chi, c.pulse_duration_s)));
            if let Some(rate) = c.dark_leak_rate_per_s {
                obj.insert("pulse_feasibility".into(), json!(sequence_feasibility(c.pulse_duration_s, rate)));
            }
            obj.insert("decoherence".into(), json!(deco));
            let table = kv_table(&[
                ("p_excited_probe", r.p_excited_probe),
                ("p_excited_before_probe", r.p_excited_before_probe),
                ("p_inferred", r.p_inferred),
                ("p_bright", r.p_bright),
                ("ensemble_number_before_probe", r.ensemble_number_before_probe),
                ("ensemble_number_after_probe", r.ensemble_number_after_probe),
                ("max_excitation_drift", r.max_excitation_drift),
            ]);
            let summary = vec![format!("inferred {} with probability {:.6}", r.inferred.label(), r.p_inferred)];
            (json, table, None, summary)
        }
        ProtocolConfig::VirtualExchange(c) => {
            let opts = ExchangeOptions { transmon_excited: c.transmon_excited, t_max: c.t_max_s };
            let r = virtual_exchange_sim(&spec, c.points, &opts)?;
            let mut trace = Table::new(vec!["time_s", "p_first", "p_second", "predicted_first", "predicted_second"]);
            for p in &r.trace {
                trace.push(vec![
                    p.time_s.into(),
                    p.p_first.into(),
                    p.p_second.into(),
                    p.predicted_first.into(),
                    p.predicted_second.into(),
                ]);
            }
            let json = json!({
                "rate_hz": hz(r.rate),
                "transfer_time_s": r.transfer_time_s,
                "transfer_population": r.transfer_population,
                "max_deviation": r.max_deviation,
                "transmon_excited": c.transmon_excited,
                "trace": trace.to_json(),
            });
            let summary = vec![format!(
                "exchange rate/2pi {:.6e} Hz, max deviation from the effective model {:.4e}",
                hz(r.rate),
                r.max_deviation
            )];
            (json, trace.clone(), Some(trace), summary)
        }
        ProtocolConfig::Protection(c) => {
            let factors = protection_factor(&spec)?;
            let check = protection_dynamic(&spec, c.transmon_t1_s)?;
            let json = json!({
                "factors": factors,
                "predicted_rate_per_s": check.predicted_rate,
                "measured_rate_per_s": check.measured_rate,
                "window_s": [check.window_s.0, check.window_s.1],
            });
            let table = kv_table(&[
                ("predicted_rate_per_s", check.predicted_rate),
                ("measured_rate_per_s", check.measured_rate),
                ("window_start_s", check.window_s.0),
                ("window_end_s", check.window_s.1),
            ]);
            let summary =
                vec![format!("loss rate {:.4e} 1/s, predicted {:.4e} 1/s", check.measured_rate, check.predicted_rate)];
            (json, table, None, summary)
        }
    };
    let (mut json, table, trace, summary) = out;
    let obj = json.as_object_mut().expect("protocol report is an object");
    obj.insert("protocol".into(), json!(name));
    obj.insert("system".into(), json!(spec.kind().name()));
    Ok(Output { json, table, trace, summary, default_format: Format::Json })
}
