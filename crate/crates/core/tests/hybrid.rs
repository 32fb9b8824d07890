use std::f64::consts::PI;

use hybridsim::hybrid::*;
use hybridsim::Complex;
use proptest::prelude::*;

const MHZ: f64 = 2.0 * PI * 1e6;
const GHZ: f64 = 2.0 * PI * 1e9;

fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

fn ts(omega_t: f64, omega_s: f64, g: Complex<f64>) -> SystemSpec<f64> {
    SystemSpec::Ts(TsSpec { omega_t, omega_s, g })
}

fn t_ens(omega_t: f64, omega_s: f64, g: f64) -> SystemSpec<f64> {
    SystemSpec::TEns(TEnsSpec { omega_t, omega_s, g: c(g), ensemble_levels: DEFAULT_BOSON_LEVELS })
}

fn s_t_s(omega_t: f64, w1: f64, w2: f64, g1: f64, g2: f64) -> SystemSpec<f64> {
    SystemSpec::Sts(StsSpec { omega_t, omega_s1: w1, omega_s2: w2, g1: c(g1), g2: c(g2) })
}

fn c_t_ens(omega_r: f64, omega_t: f64, omega_s: f64, g_tc: f64, g_ens: f64) -> SystemSpec<f64> {
    SystemSpec::CTEns(CTEnsSpec {
        omega_r,
        omega_t,
        omega_s,
        g_tc: c(g_tc),
        g_ens: c(g_ens),
        cavity_levels: DEFAULT_BOSON_LEVELS,
        ensemble_levels: DEFAULT_BOSON_LEVELS,
    })
}

fn working_c_t_ens() -> SystemSpec<f64> {
    c_t_ens(5.0 * GHZ, 3.27 * GHZ, 2.88 * GHZ, 80.0 * MHZ, 15.0 * MHZ)
}

fn working_t_ens() -> SystemSpec<f64> {
    t_ens(3.27 * GHZ, 2.88 * GHZ, 15.0 * MHZ)
}

/// Closed-form Jaynes–Cummings level of the bare state `|↑,n⟩` (`up`) or
/// `|↓,n+1⟩` in the `n+1` excitation block, for `Δ > 0`.
fn jc_level(omega_t: f64, omega_s: f64, g: f64, n: usize, up: bool) -> f64 {
    let delta = omega_t - omega_s;
    let root = (delta * delta / 4.0 + g * g * (n as f64 + 1.0)).sqrt();
    omega_s * (n as f64 + 0.5) + if up { root } else { -root }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn uncoupled_ts_spectrum_is_sum_of_halves() {
    let (wt, ws) = (3.0 * GHZ, 2.5 * GHZ);
    let h = build_h_ts(&ts(wt, ws, c(0.0))).unwrap();
    let expected = sorted(vec![-wt / 2.0 - ws / 2.0, -wt / 2.0 + ws / 2.0, wt / 2.0 - ws / 2.0, wt / 2.0 + ws / 2.0]);
    for (a, b) in h.eigenvalues().unwrap().iter().zip(expected) {
        assert!((a - b).abs() < 1e-6 * GHZ);
    }
}

#[test]
fn resonant_ts_one_excitation_splits_by_two_g() {
    let (w, g) = (2.88 * GHZ, 5.0 * MHZ);
    let ev = build_h_ts(&ts(w, w, c(g))).unwrap().eigenvalues().unwrap();
    // ascending: −ω, −g, +g, +ω
    assert!(((ev[2] - ev[1]) - 2.0 * g).abs() < 1e-6 * g);
}

#[test]
fn counter_rotating_contrast_breaks_excitation_conservation() {
    let spec = TsSpec { omega_t: 3.0 * GHZ, omega_s: 2.9 * GHZ, g: Complex::new(3.0 * MHZ, 1.0 * MHZ) };
    let full = spec.hamiltonian_with_counter_rotating().unwrap();
    assert!(full.is_hermitian());
    let n = SystemSpec::Ts(spec).excitation_number().unwrap();
    assert!(n.commutator(&full).unwrap().max_abs() > 1e6);
    let rwa = SystemSpec::Ts(spec).hamiltonian().unwrap();
    assert_eq!(n.commutator(&rwa).unwrap().max_abs(), 0.0);
}

#[test]
fn builders_reject_wrong_kind_and_small_truncation() {
    let spec = working_t_ens();
    assert!(matches!(build_h_ts(&spec), Err(hybridsim::Error::KindMismatch { .. })));
    assert!(build_h_t_ens(&spec).is_ok());
    assert!(build_h_s_t_s(&spec).is_err());
    assert!(build_h_c_t_ens(&spec).is_err());
    let small = SystemSpec::TEns(TEnsSpec { omega_t: GHZ, omega_s: GHZ, g: c(MHZ), ensemble_levels: 2 });
    assert!(small.hamiltonian().is_err());
    assert!(ts(-GHZ, GHZ, c(MHZ)).hamiltonian().is_err());
}

#[test]
fn t_ens_resonant_vacuum_rabi_splitting() {
    let (w, g) = (2.88 * GHZ, 15.0 * MHZ);
    let ev = build_h_t_ens(&t_ens(w, w, g)).unwrap().eigenvalues().unwrap();
    // ground −ω/2, then the one-excitation doublet ω/2 ± g
    assert!(((ev[2] - ev[1]) - 2.0 * g).abs() < 1e-6 * g);
    assert!(((ev[1] + ev[2]) / 2.0 - w / 2.0).abs() < 1e-6 * g);
}

#[test]
fn t_ens_exact_levels_match_jaynes_cummings() {
    let (wt, ws, g) = (3.27 * GHZ, 2.88 * GHZ, 15.0 * MHZ);
    let levels = labelled_spectrum(&t_ens(wt, ws, g), 3).unwrap();
    for l in levels.iter().filter(|l| l.excitations >= 1) {
        let up = l.levels[0] == 1;
        let n = if up { l.levels[1] } else { l.levels[1] - 1 };
        let oracle = jc_level(wt, ws, g, n, up);
        assert!((l.energy - oracle).abs() < 1e-6 * MHZ, "{}: {} vs {}", l.label, l.energy, oracle);
    }
}

#[test]
fn c_t_ens_uncoupled_is_product_spectrum() {
    let (wr, wt, ws) = (5.0 * GHZ, 3.27 * GHZ, 2.88 * GHZ);
    let spec = c_t_ens(wr, wt, ws, 0.0, 0.0);
    let mut expected = Vec::new();
    for a in 0..5 {
        for t in [-0.5, 0.5] {
            for s in 0..5 {
                expected.push(wr * a as f64 + wt * t + ws * s as f64);
            }
        }
    }
    let ev = build_h_c_t_ens(&spec).unwrap().eigenvalues().unwrap();
    for (a, b) in ev.iter().zip(sorted(expected)) {
        assert!((a - b).abs() < 1e-6 * MHZ);
    }
}

#[test]
fn c_t_ens_working_point_one_excitation_states_keep_their_bare_labels() {
    let levels = labelled_spectrum(&working_c_t_ens(), 1).unwrap();
    assert_eq!(levels.len(), 4);
    for l in &levels {
        assert!(l.weight > 0.95, "{} weight {}", l.label, l.weight);
    }
}

#[test]
fn excitation_number_commutes_with_every_rwa_hamiltonian() {
    let specs = [
        ts(3.0 * GHZ, 2.9 * GHZ, Complex::new(2.0 * MHZ, -1.0 * MHZ)),
        working_t_ens(),
        s_t_s(3.0 * GHZ, 2.8 * GHZ, 2.7 * GHZ, 10.0 * MHZ, 12.0 * MHZ),
        working_c_t_ens(),
    ];
    for spec in specs {
        let h = spec.hamiltonian().unwrap();
        assert!(h.is_hermitian());
        let n = spec.excitation_number().unwrap();
        assert!(n.commutator(&h).unwrap().max_abs() < 1e-12 * h.max_abs(), "{}", spec.kind());
    }
}

#[test]
fn dispersive_shift_at_working_point() {
    let p = dispersive_params(&working_t_ens()).unwrap();
    let chi = p.chi.unwrap();
    // 15² / 390 MHz
    assert!((chi / MHZ - 225.0 / 390.0).abs() < 1e-12);
    // quoted as 2χ ≈ 1.15 MHz
    assert!((2.0 * chi / MHZ - 1.15).abs() < 0.005);
    assert!(p.warnings.is_empty());
    assert_eq!(p.partner_shift(ENSEMBLE), Some(-chi));
}

#[test]
fn virtual_coupling_of_one_megahertz() {
    let wt = 3.27 * GHZ;
    let spec = c_t_ens(wt - 100.0 * MHZ, wt, wt - 100.0 * MHZ, 10.0 * MHZ, 10.0 * MHZ);
    let gv = dispersive_params(&spec).unwrap().g_virtual.unwrap();
    assert!((gv.re / MHZ - 1.0).abs() < 1e-12);
    assert_eq!(gv.im, 0.0);
}

#[test]
fn equal_detunings_reduce_j() {
    let (g1, g2, d) = (8.0 * MHZ, 11.0 * MHZ, 150.0 * MHZ);
    let wt = 3.0 * GHZ;
    let j = dispersive_params(&s_t_s(wt, wt - d, wt - d, g1, g2)).unwrap().j.unwrap();
    assert!((j.re - g1 * g2 / d).abs() < 1e-9 * j.re);
}

#[test]
fn chi_sign_follows_detuning() {
    let below = dispersive_params(&t_ens(3.0 * GHZ, 2.9 * GHZ, 5.0 * MHZ)).unwrap();
    let above = dispersive_params(&t_ens(2.9 * GHZ, 3.0 * GHZ, 5.0 * MHZ)).unwrap();
    assert!(below.chi.unwrap() > 0.0);
    assert!(above.chi.unwrap() < 0.0);
}

#[test]
fn dispersive_limits() {
    let wt = 3.0 * GHZ;
    assert!(matches!(
        dispersive_params(&t_ens(wt, wt - 100.0 * MHZ, 25.0 * MHZ)),
        Err(hybridsim::Error::NonDispersive { .. })
    ));
    let warn = dispersive_params(&t_ens(wt, wt - 100.0 * MHZ, 15.0 * MHZ)).unwrap();
    assert_eq!(warn.warnings.len(), 1);
    assert!(dispersive_params(&t_ens(wt, wt, 1.0 * MHZ)).is_err());
    assert!(dispersive_params(&t_ens(wt, wt, 0.0)).is_ok());
}

#[test]
fn dispersive_t_ens_is_diagonal_with_two_chi_ladder() {
    let spec = working_t_ens();
    let chi = dispersive_params(&spec).unwrap().chi.unwrap();
    let h = build_dispersive_h_t_ens(&spec).unwrap();
    let off = (0..h.dim())
        .flat_map(|i| (0..h.dim()).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .fold(0.0f64, |m, (i, j)| m.max(h.get(i, j).norm()));
    assert_eq!(off, 0.0);
    let transition = |n: usize| bare_energy(&h, &[1, n]).unwrap() - bare_energy(&h, &[0, n]).unwrap();
    let wt = spec.omega_t();
    for n in 0..4 {
        assert!((transition(n) - (wt + (2 * n + 1) as f64 * chi)).abs() < 1e-6 * chi);
    }
    assert!((transition(1) - transition(0) - 2.0 * chi).abs() < 1e-6 * chi);
    // the s†s = 2 probe sits at ω_t + 5χ on this ladder
    assert!((transition(2) - (wt + 5.0 * chi)).abs() < 1e-6 * chi);
    let uncoupled = build_dispersive_h_t_ens(&t_ens(wt, 2.88 * GHZ, 0.0)).unwrap();
    assert!((bare_energy(&uncoupled, &[1, 1]).unwrap() - (wt / 2.0 + 2.88 * GHZ)).abs() < 1e-3);
}

#[test]
fn exact_ensemble_shift_matches_two_chi() {
    let spec = working_t_ens();
    let chi = dispersive_params(&spec).unwrap().chi.unwrap();
    let shift = transmon_transition(&spec, &[0, 1]).unwrap() - transmon_transition(&spec, &[0, 0]).unwrap();
    assert!((shift / (2.0 * chi) - 1.0).abs() < 0.03, "shift {} vs 2χ {}", shift, 2.0 * chi);
}

#[test]
fn sw_residual_vanishes_without_coupling() {
    for spec in [s_t_s(3.0 * GHZ, 2.8 * GHZ, 2.7 * GHZ, 0.0, 0.0), c_t_ens(5.0 * GHZ, 3.0 * GHZ, 2.8 * GHZ, 0.0, 0.0)] {
        assert_eq!(sw_transform(&spec).unwrap().residual, 0.0);
    }
}

#[test]
fn sw_residual_is_third_order() {
    let wt = 3.0 * GHZ;
    let (d1, d2) = (200.0 * MHZ, 260.0 * MHZ);
    let run = |ratio: f64| {
        let spec = s_t_s(wt, wt - d1, wt - d2, ratio * d1, ratio * d2);
        sw_transform(&spec).unwrap().relative_residual()
    };
    let r = run(0.1) / run(0.05);
    assert!((6.0..=10.0).contains(&r), "ratio {r}");
}

#[test]
fn sw_residual_at_c_t_ens_working_point() {
    let res = sw_transform(&working_c_t_ens()).unwrap();
    assert_eq!(res.max_excitations, Some(1));
    assert!(res.residual < 0.5 * MHZ, "residual {} MHz", res.residual / MHZ);
}

#[test]
fn sw_rejects_non_dispersive() {
    assert!(sw_transform(&s_t_s(3.0 * GHZ, 2.9 * GHZ, 2.8 * GHZ, 30.0 * MHZ, 1.0 * MHZ)).is_err());
}

#[test]
fn commutator_tables_hold() {
    for kind in [SystemKind::Sts, SystemKind::CTEns] {
        let report = commutator_table_check::<f64>(kind, DEFAULT_BOSON_LEVELS).unwrap();
        assert_eq!(report.len(), 10);
        for r in &report {
            assert!(r.pass, "{}: {}", r.identity, r.max_error);
        }
    }
    assert!(commutator_table_check::<f64>(SystemKind::TEns, 5).is_err());
}

#[test]
fn vanishing_identities_are_exact() {
    let sts = commutator_table_check::<f64>(SystemKind::Sts, 5).unwrap();
    let cte = commutator_table_check::<f64>(SystemKind::CTEns, 5).unwrap();
    let find = |r: &[IdentityReport], name: &str| r.iter().find(|x| x.identity == name).unwrap().max_error;
    assert_eq!(find(&sts, "[σ_z1, X₂] = 0"), 0.0);
    assert_eq!(find(&cte, "[s†s, Y₁] = 0"), 0.0);
    assert!(find(&cte, "[a†a, Y₁] = a†τ₋ + aτ₊") < 1e-12);
}

#[test]
fn identity_report_serializes() {
    let report = commutator_table_check::<f64>(SystemKind::Sts, 5).unwrap();
    let json = serde_json::to_value(&report[0]).unwrap();
    assert!(json.get("identity").is_some() && json.get("max_error").is_some() && json.get("pass").is_some());
}

#[test]
fn qnd_invariant() {
    let r = qnd_invariant_check(&working_t_ens()).unwrap();
    assert!(r.dispersive < 1e-12);
    assert!(r.full > 1.0 * MHZ);
    let free = qnd_invariant_check(&t_ens(3.27 * GHZ, 2.88 * GHZ, 0.0)).unwrap();
    assert_eq!(free.full, 0.0);
    assert!(qnd_invariant_check(&working_c_t_ens()).is_err());
}

#[test]
fn spectra_are_stable_under_truncation_growth() {
    for spec in [working_t_ens(), working_c_t_ens()] {
        assert!(truncation_stability(&spec).unwrap() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ts_spectrum_independent_of_coupling_phase(alpha in 0.0..(2.0 * PI), g in 0.1f64..20.0) {
        let base = build_h_ts(&ts(3.0 * GHZ, 2.95 * GHZ, c(g * MHZ))).unwrap().eigenvalues().unwrap();
        let rot = build_h_ts(&ts(3.0 * GHZ, 2.95 * GHZ, Complex::from_polar(g * MHZ, alpha)))
            .unwrap().eigenvalues().unwrap();
        for (a, b) in base.iter().zip(&rot) {
            prop_assert!((a - b).abs() < 1e-6 * MHZ);
        }
    }

    #[test]
    fn exchange_couplings_are_symmetric(
        g1 in 1.0f64..30.0, g2 in 1.0f64..30.0, d1 in 150.0f64..600.0, d2 in -600.0f64..-150.0,
    ) {
        let (g1, g2, d1, d2) = (g1 * MHZ, g2 * MHZ, d1 * MHZ, d2 * MHZ);
        let wt = 3.0 * GHZ;
        let j12 = dispersive_params(&s_t_s(wt, wt - d1, wt - d2, g1, g2)).unwrap().j.unwrap();
        let j21 = dispersive_params(&s_t_s(wt, wt - d2, wt - d1, g2, g1)).unwrap().j.unwrap();
        prop_assert!((j12 - j21).norm() <= 1e-12 * j12.norm());
        prop_assert!((j12.re - g1 * g2 * (1.0 / d1 + 1.0 / d2) / 2.0).abs() <= 1e-9 * g1 * g2 / d1.abs());
        let gv12 = dispersive_params(&c_t_ens(wt - d1, wt, wt - d2, g1, g2)).unwrap().g_virtual.unwrap();
        let gv21 = dispersive_params(&c_t_ens(wt - d2, wt, wt - d1, g2, g1)).unwrap().g_virtual.unwrap();
        prop_assert!((gv12 - gv21).norm() <= 1e-12 * gv12.norm());
    }

    #[test]
    fn dispersive_eigenvalues_track_exact(ratio in 0.01f64..0.1, delta in 100.0f64..500.0, sign in prop::bool::ANY) {
        let delta = if sign { delta * MHZ } else { -delta * MHZ };
        let g = ratio * delta.abs();
        let spec = t_ens(3.0 * GHZ, 3.0 * GHZ - delta, g);
        let bound = 2.0 * g.powi(3) / (delta * delta);
        for row in compare_spectra(&spec, 1).unwrap() {
            prop_assert!((row.exact - row.dispersive).abs() < bound, "{}: {} vs bound {}", row.label,
                (row.exact - row.dispersive).abs(), bound);
        }
    }

    #[test]
    fn complex_couplings_keep_hermiticity(
        re in -20.0f64..20.0, im in -20.0f64..20.0, re2 in -20.0f64..20.0, im2 in -20.0f64..20.0,
    ) {
        let spec = SystemSpec::CTEns(CTEnsSpec {
            omega_r: 5.0 * GHZ, omega_t: 3.27 * GHZ, omega_s: 2.88 * GHZ,
            g_tc: Complex::new(re * MHZ, im * MHZ), g_ens: Complex::new(re2 * MHZ, im2 * MHZ),
            cavity_levels: 3, ensemble_levels: 3,
        });
        prop_assert!(spec.hamiltonian().unwrap().is_hermitian());
        prop_assert!(dispersive_hamiltonian(&spec).unwrap().is_hermitian());
    }
}
