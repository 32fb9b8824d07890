use std::f64::consts::PI;

use hybridsim::transmon::*;
use proptest::prelude::*;

const EC: f64 = 2.0 * PI * 92e6;

fn exact_spectrum() -> TransmonSpectrum<f64> {
    spectrum(&SingleJJParams::from_ratio(100.0, EC, 500e-9, 30).unwrap()).unwrap()
}

#[test]
fn exact_ground_state_overlaps_perturbed_state() {
    let s = exact_spectrum();
    assert!(s.ground_overlap > 0.999, "{}", s.ground_overlap);
}

// Known failure: the tabulated admixtures carry the opposite sign to the
// ones produced by −(E_C/12)(b+b†)⁴, which costs 0.3% of overlap here.
#[test]
fn exact_excited_state_overlaps_perturbed_state() {
    let s = exact_spectrum();
    assert!(s.excited_overlap > 0.999, "{}", s.excited_overlap);
}

#[test]
fn exact_admixtures_are_in_phase_with_leading_component() {
    let p = SingleJJParams::from_ratio(100.0, EC, 500e-9, 30).unwrap();
    let eig = build_transmon_hamiltonian(&p).unwrap().eigh().unwrap();
    for (lead, admix) in [(0usize, [2usize, 4]), (1, [3, 5])] {
        let (col, _) = (0..eig.values.len())
            .map(|k| (k, eig.vectors[(lead, k)].norm()))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        let phase = eig.vectors[(lead, col)];
        for m in admix {
            let rel = eig.vectors[(m, col)] / phase;
            assert!(rel.re > 0.0 && rel.im.abs() < 1e-12, "|{m}> relative amplitude {rel}");
        }
        // first-order magnitudes agree with the closed forms to within higher-order terms
        let [c2, _, c3, _] = first_order_coefficients(100.0f64).unwrap();
        let first = if lead == 0 { c2 } else { c3 };
        let exact = (eig.vectors[(admix[0], col)] / phase).re;
        assert!((exact - first.abs()).abs() / first.abs() < 0.15);
    }
}

#[test]
fn double_junction_reduces_to_single_at_zero_flux() {
    let d = DoubleJJParams::new(50.0 * EC, 50.0 * EC, 250e-9, 250e-9, 0.0, EC, 10).unwrap();
    let s = d.equivalent_single().unwrap();
    assert!((s.ratio() - 100.0).abs() < 1e-12);
    // asymmetric junctions keep a finite E_J at half flux
    let a = DoubleJJParams::new(40.0 * EC, 60.0 * EC, 2e-7, 3e-7, 0.5, EC, 10).unwrap();
    assert!((a.effective_josephson_energy() - 20.0 * EC).abs() / EC < 1e-9);
}

proptest! {
    #[test]
    fn junction_currents_are_flux_periodic(flux in -3.0f64..3.0, phi in -0.5f64..0.5) {
        let p = DoubleJJParams::new(4e11, 6e11, 3e-7, 4e-7, flux, EC, 10).unwrap();
        let q = DoubleJJParams { flux: flux + 2.0, ..p };
        let (a1, a2) = junction_currents(&p, phi);
        let (b1, b2) = junction_currents(&q, phi);
        prop_assert!((a1 - b1).abs() < 1e-18 && (a2 - b2).abs() < 1e-18);
    }

    #[test]
    fn perturbed_states_are_normalized(ratio in 20.0f64..1e5) {
        let q = perturbed_states(ratio).unwrap();
        let nd: f64 = q.down.iter().map(|c| c * c).sum();
        let nu: f64 = q.up.iter().map(|c| c * c).sum();
        prop_assert!((nd - 1.0).abs() < 1e-12 && (nu - 1.0).abs() < 1e-12);
        if ratio >= 50.0 {
            prop_assert!(q.x_element > 0.9 && q.x_element < 1.0);
        }
    }

    #[test]
    fn substitution_error_scales_as_inverse_root_ratio(ratio in 50.0f64..5000.0) {
        let reference = substitution_error(500.0).unwrap() * 500f64.sqrt();
        let scaled = substitution_error(ratio).unwrap() * ratio.sqrt();
        prop_assert!((scaled / reference - 1.0).abs() < 0.2);
    }
}
