use std::f64::consts::PI;

use hybridsim::constants::MU0;
use hybridsim::magnetostatics::*;
use hybridsim::transmon::{DoubleJJParams, SingleJJParams, TransmonParams};
use hybridsim::Error;
use proptest::prelude::*;

const EC: f64 = 2.0 * PI * 92e6;
const IC: f64 = 500e-9;

fn single(ic: f64) -> (Geometry<f64>, TransmonParams<f64>) {
    let p = SingleJJParams::from_ratio(100.0, EC, ic, 10).unwrap();
    (Geometry::single_jj(3e-6, 1e-7, ic).unwrap(), p.into())
}

fn double(ic1: f64, ic2: f64, flux: f64) -> (Geometry<f64>, TransmonParams<f64>) {
    let ej = 50.0 * EC;
    let p = DoubleJJParams::new(ej, ej * ic2 / ic1, ic1, ic2, flux, EC, 10).unwrap();
    (Geometry::double_jj(3e-6, 1e-7, ic1, ic2).unwrap(), p.into())
}

/// `(μ0 I/4π) ∫ dl × (P − l)/|P − l|³` by tanh-sinh quadrature.
fn quadrature_field(seg: &WireSegment<f64>, current: f64, p: &Vec3<f64>) -> Vec3<f64> {
    let d = seg.end - seg.start;
    let integrand = |s: f64, k: usize| {
        let r = p - (seg.start + d * s);
        d.cross(&r)[k] / r.norm().powi(3)
    };
    let pre = MU0 / (4.0 * PI) * current * seg.current_fraction;
    Vec3::from_fn(|k, _| pre * quadrature::double_exponential::integrate(|s| integrand(s, k), 0.0, 1.0, 1e-15).integral)
}

#[test]
fn long_chain_approaches_infinite_wire() {
    let n = 10;
    let len = 1e-3;
    let segs: Vec<_> = (0..n)
        .map(|i| {
            let x0 = -len / 2.0 + len * i as f64 / n as f64;
            let x1 = -len / 2.0 + len * (i + 1) as f64 / n as f64;
            WireSegment::new(Vec3::new(x0, 0.0, 0.0), Vec3::new(x1, 0.0, 0.0), 1.0).unwrap()
        })
        .collect();
    let b = path_field(&segs, 1.0, &Vec3::new(0.0, 1e-6, 0.0)).unwrap();
    let expected = MU0 / (2.0 * PI * 1e-6);
    assert!((b.norm() - expected).abs() / expected < 1e-3);
    assert!((expected - 0.2).abs() < 1e-9);
}

#[test]
fn bisector_field_is_azimuthal() {
    let seg = WireSegment::new(Vec3::new(-1e-6, 0.0, 0.0), Vec3::new(1e-6, 0.0, 0.0), 1.0).unwrap();
    for p in [Vec3::<f64>::new(0.0, 3e-7, 0.0), Vec3::new(0.0, -2e-7, 5e-7), Vec3::new(0.0, 1e-6, 1e-6)] {
        let b = segment_field(&seg, 1e-3, &p).unwrap();
        assert!(b.x.abs() / b.norm() < 1e-15);
        assert!(b.dot(&p).abs() / (b.norm() * p.norm()) < 1e-15);
    }
}

#[test]
fn reversing_current_negates_segment_field() {
    let seg = WireSegment::new(Vec3::new(0.1, -0.3, 0.2), Vec3::new(0.7, 0.4, -0.5), 0.8).unwrap();
    let p = Vec3::new(0.3, 0.9, 0.1);
    let b = segment_field(&seg, 2.0, &p).unwrap();
    assert_eq!(segment_field(&seg.reversed(), 2.0, &p).unwrap(), -b);
    assert_eq!(segment_field(&seg, -2.0, &p).unwrap(), -b);
}

#[test]
fn points_near_the_wire_are_rejected() {
    let seg = WireSegment::new(Vec3::new(0.0, 0.0, 0.0), Vec3::new(1e-6, 0.0, 0.0), 1.0).unwrap();
    let e = segment_field(&seg, 1.0, &Vec3::new(5e-7, 5e-10, 0.0)).unwrap_err();
    assert!(matches!(e, Error::SingularPoint { .. }));
    assert!(segment_field(&seg, 1.0, &Vec3::new(5e-7, 2e-9, 0.0)).is_ok());
    // on the axis beyond the segment the field is zero, not singular
    assert_eq!(segment_field(&seg, 1.0, &Vec3::new(3e-6, 0.0, 0.0)).unwrap().norm(), 0.0);
    assert!(WireSegment::new(Vec3::zeros(), Vec3::zeros(), 1.0).is_err());
}

#[test]
fn reversed_geometry_negates_transmon_field() {
    for (g, p) in [single(IC), double(IC, 3e-7, 0.0)] {
        let pt = Vec3::new(2e-7, -4e-7, 3e-7);
        let b = transmon_field(&g, &p, &pt).unwrap();
        assert_eq!(transmon_field(&g.reversed(), &p, &pt).unwrap(), -b);
    }
}

#[test]
fn symmetric_loop_center_has_no_in_plane_field() {
    let (g, p) = double(IC, IC, 0.0);
    let scale = transmon_field(&g, &p, &Vec3::new(0.0, 1.4e-6, 1e-7)).unwrap().norm();
    let b = transmon_field(&g, &p, &Vec3::zeros()).unwrap();
    assert!(b.x.abs() / scale < 1e-10 && b.y.abs() / scale < 1e-10);
}

#[test]
fn field_is_linear_in_critical_current() {
    let pt = Vec3::new(1e-7, 2e-7, 3e-7);
    let (g1, p1) = single(IC);
    let (g2, p2) = single(2.0 * IC);
    let b1 = transmon_field(&g1, &p1, &pt).unwrap();
    let b2 = transmon_field(&g2, &p2, &pt).unwrap();
    assert!((b2 - b1 * 2.0).norm() / b2.norm() < 1e-14);
}

#[test]
fn params_must_match_geometry() {
    let (g, _) = single(IC);
    let (_, pd) = double(IC, IC, 0.0);
    assert!(matches!(transmon_field(&g, &pd, &Vec3::new(0.0, 0.0, 1e-7)), Err(Error::KindMismatch { .. })));
    let (_, p_other) = single(2.0 * IC);
    assert!(transmon_field(&g, &p_other, &Vec3::new(0.0, 0.0, 1e-7)).is_err());
}

#[test]
fn coupling_vanishes_for_field_along_axis() {
    let (g, p) = single(IC);
    // above the wire the field is along y
    let site = SpinSite::new(Vec3::new(0.0, 0.0, 2e-7), Vec3::new(0.0, 1.0, 0.0)).unwrap();
    let c = single_spin_coupling(&g, &p, &site).unwrap();
    assert!(c.g.norm() < 1e-12 * c.longitudinal.abs());
}

#[test]
fn single_junction_estimate_matches_order_of_magnitude() {
    let (g, p) = single(IC);
    let site = SpinSite::new(Vec3::new(0.0, 0.0, 1e-7), Vec3::new(1.0, 0.0, 0.0)).unwrap();
    let khz = single_spin_coupling(&g, &p, &site).unwrap().g.norm() / (2.0 * PI) / 1e3;
    assert!((4.0..16.0).contains(&khz), "{khz} kHz");
    // independent estimate: infinite wire carrying I_c φ_zpf at 0.1 μm
    let current = IC * 0.08f64.powf(0.25) / 2f64.sqrt();
    let b = MU0 * current / (2.0 * PI * 1e-7);
    let expected = gyromagnetic_ratio::<f64>() * b / 2f64.sqrt() / (2.0 * PI) / 1e3;
    assert!((khz - expected).abs() / expected < 0.01, "{khz} vs {expected}");
}

#[test]
fn nv_axes_have_equal_projection_on_cube_axis() {
    let b = Vec3::new(1.0, 0.0, 0.0);
    let s = 1.0 / 3f64.sqrt();
    for a in nv_axes::<f64>() {
        assert_eq!(a.dot(&b).abs(), s);
    }
}

#[test]
fn coupling_map_decays_with_height() {
    let (g, p) = single(IC);
    let plane = GridPlane {
        fixed: Axis::X,
        fixed_value: 0.0,
        u: Range::new(0.0, 0.0, 1).unwrap(),
        v: Range::new(1e-7, 4e-7, 4).unwrap(),
    };
    let map = coupling_map(&g, &p, &plane, Vec3::new(1.0, 0.0, 0.0)).unwrap();
    let values: Vec<f64> = map.iter().map(|m| m.g_abs.unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn coupling_map_masks_wire_points() {
    let (g, p) = single(IC);
    let plane = GridPlane {
        fixed: Axis::X,
        fixed_value: 0.0,
        u: Range::new(-1e-7, 1e-7, 3).unwrap(),
        v: Range::new(-1e-7, 1e-7, 3).unwrap(),
    };
    let map = coupling_map(&g, &p, &plane, Vec3::new(1.0, 0.0, 0.0)).unwrap();
    assert_eq!(map.len(), 9);
    assert_eq!(map.iter().filter(|m| m.g_abs.is_none()).count(), 1);
    assert_eq!(map[4].position, Vec3::new(0.0, 0.0, 0.0));
    assert!(map[4].g_abs.is_none());
}

fn double_map() -> (Vec<MapPoint<f64>>, usize) {
    let (g, p) = double(IC, IC, 0.0);
    let n = 61;
    let plane = GridPlane {
        fixed: Axis::X,
        fixed_value: 0.0,
        u: Range::new(-3e-6, 3e-6, n).unwrap(),
        v: Range::new(1e-7, 1e-7, 1).unwrap(),
    };
    (coupling_map(&g, &p, &plane, Vec3::new(1.0, 0.0, 0.0)).unwrap(), n)
}

#[test]
fn double_junction_map_peaks_near_junctions() {
    let (map, n) = double_map();
    let g: Vec<f64> = map.iter().map(|m| m.g_abs.unwrap()).collect();
    let maxima: Vec<f64> =
        (1..n - 1).filter(|&i| g[i] > g[i - 1] && g[i] > g[i + 1]).map(|i| map[i].position.y).collect();
    assert_eq!(maxima.len(), 2, "{maxima:?}");
    for (y, junction) in maxima.iter().zip([-1.5e-6, 1.5e-6]) {
        assert!((y - junction).abs() <= 2e-7, "maximum at {y}");
    }
}

#[test]
fn double_junction_map_is_mirror_symmetric() {
    let (map, n) = double_map();
    for i in 0..n {
        let (a, b) = (map[i].g_abs.unwrap(), map[n - 1 - i].g_abs.unwrap());
        assert!((a - b).abs() / a.max(b) < 1e-9);
    }
}

#[test]
fn single_spin_ensemble_equals_its_coupling() {
    let (g, p) = double(IC, IC, 0.0);
    let spec = EnsembleSpec { edge: 1e-6, density: 1e18, center: (2e-7, -3e-7), gap: 5e-8, seed: 11 };
    let sites = Placement::new(&spec, &g).unwrap().sites().unwrap();
    assert_eq!(sites.len(), 1);
    let single = single_spin_coupling(&g, &p, &sites[0]).unwrap().g.norm();
    let ens = ensemble_coupling(&g, &p, &spec).unwrap();
    assert_eq!(ens.spins, 1);
    assert!((ens.g - single).abs() / single < 1e-14);
}

#[test]
fn ensemble_validation() {
    let (g, p) = double(IC, IC, 0.0);
    let empty = EnsembleSpec::new(1e-7, 1e18, 0).unwrap();
    assert!(matches!(ensemble_coupling(&g, &p, &empty), Err(Error::ZeroSpins(_))));
    let sunk = EnsembleSpec { gap: -1e-6, ..EnsembleSpec::new(2e-6, 1e20, 0).unwrap() };
    assert!(matches!(ensemble_coupling(&g, &p, &sunk), Err(Error::CubeIntersectsWire)));
    assert!(EnsembleSpec::new(-1e-6, 1e20, 0).is_err());
    assert!(EnsembleSpec::new(1e-6, 0.0, 0).is_err());
}

#[test]
fn ensemble_placement_is_inside_the_cube_and_cycles_axes() {
    let (g, _) = double(IC, IC, 0.0);
    let spec = EnsembleSpec::new(2e-6, 2e21, 5).unwrap();
    let sites = Placement::new(&spec, &g).unwrap().sites().unwrap();
    assert_eq!(sites.len(), 16000);
    let axes = nv_axes::<f64>();
    for (i, s) in sites.iter().enumerate() {
        let p = s.position;
        assert!(p.x.abs() <= 1e-6 && p.y.abs() <= 1e-6);
        assert!(p.z >= 5e-8 && p.z <= 5e-8 + 2e-6);
        assert_eq!(s.axis, axes[i % 4]);
    }
}

#[test]
fn ensemble_result_is_independent_of_thread_count() {
    let (g, p) = double(IC, IC, 0.0);
    let spec = EnsembleSpec::new(2e-6, 5e21, 42).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ensemble_coupling(&g, &p, &spec).unwrap())
    };
    let a = run(1);
    assert_eq!(a, run(4));
    assert_eq!(a.seed, 42);
}

#[test]
fn ensemble_scales_as_root_density() {
    let (g, p) = double(IC, IC, 0.0);
    let base = EnsembleSpec::new(2e-6, 5e22, 3).unwrap();
    let a = ensemble_coupling(&g, &p, &base).unwrap().g;
    let b = ensemble_coupling(&g, &p, &EnsembleSpec { density: 2e23, ..base }).unwrap().g;
    assert!((b / a - 2.0).abs() / 2.0 < 0.05, "ratio {}", b / a);
}

#[test]
fn single_spin_coupling_scales_with_phase_zpf() {
    let pt = Vec3::new(0.0, 1e-7, 2e-7);
    let site = SpinSite::new(pt, Vec3::new(1.0, 0.0, 0.0)).unwrap();
    let g_at = |ratio: f64| {
        let p = SingleJJParams::from_ratio(ratio, EC, IC, 10).unwrap();
        let (g, _) = single(IC);
        single_spin_coupling(&g, &p.into(), &site).unwrap().g.norm()
    };
    let r = g_at(400.0) / g_at(100.0);
    assert!((r - 0.25f64.powf(0.25)).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_form_matches_quadrature(
        a in prop::array::uniform3(-1.0f64..1.0),
        b in prop::array::uniform3(-1.0f64..1.0),
        q in prop::array::uniform3(-1.5f64..1.5),
        frac in 0.1f64..2.0,
    ) {
        let (a, b, q) = (Vec3::from(a) * 1e-6, Vec3::from(b) * 1e-6, Vec3::from(q) * 1e-6);
        let seg = WireSegment::new(a, b, frac).unwrap();
        prop_assume!(seg.length() > 1e-7 && seg.distance_to(&q) > 0.05 * seg.length());
        let closed = segment_field(&seg, 1e-6, &q).unwrap();
        let numeric = quadrature_field(&seg, 1e-6, &q);
        prop_assert!((closed - numeric).norm() / closed.norm() < 1e-9);
    }

    #[test]
    fn spin_frame_is_orthonormal(axis in prop::array::uniform3(-1.0f64..1.0)) {
        let axis = Vec3::from(axis);
        prop_assume!(axis.norm() > 1e-3);
        let site = SpinSite::new(Vec3::zeros(), axis).unwrap();
        prop_assert!(site.frame_error() < 1e-12);
    }

    #[test]
    fn frame_rotation_multiplies_coupling_by_phase(alpha in -PI..PI, axis in prop::array::uniform3(-1.0f64..1.0)) {
        let axis = Vec3::from(axis);
        prop_assume!(axis.norm() > 1e-3);
        let (g, p) = single(IC);
        let site = SpinSite::new(Vec3::new(1e-7, 2e-7, 3e-7), axis).unwrap();
        let g0 = single_spin_coupling(&g, &p, &site).unwrap().g;
        let g1 = single_spin_coupling(&g, &p, &site.rotated(alpha)).unwrap().g;
        let phase = hybridsim::Complex::new(alpha.cos(), alpha.sin());
        prop_assert!((g1 - g0 * phase).norm() <= 1e-12 * g0.norm().max(1e-30));
        prop_assert!((g1.norm() - g0.norm()).abs() <= 1e-12 * g0.norm().max(1e-30));
    }

    #[test]
    fn coupling_is_linear_in_critical_current(scale in 0.1f64..10.0) {
        let site = SpinSite::new(Vec3::new(3e-7, -1e-7, 2e-7), Vec3::new(1.0, 1.0, 1.0)).unwrap();
        let (g1, p1) = single(IC);
        let (g2, p2) = single(IC * scale);
        let a = single_spin_coupling(&g1, &p1, &site).unwrap().g.norm();
        let b = single_spin_coupling(&g2, &p2, &site).unwrap().g.norm();
        prop_assert!((b / a - scale).abs() / scale < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn ensemble_grows_with_cube_edge(edge in 1.0e-6f64..2.0e-6, grow in 1.2f64..1.6) {
        let (g, p) = double(IC, IC, 0.0);
        let small = EnsembleSpec::new(edge, 5e21, 9).unwrap();
        let large = EnsembleSpec { edge: edge * grow, ..small };
        let a = ensemble_coupling(&g, &p, &small).unwrap().g;
        let b = ensemble_coupling(&g, &p, &large).unwrap().g;
        prop_assert!(b >= a);
    }
}
