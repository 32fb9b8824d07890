//! Transmon magnetic field and its coupling to NV spins.

pub mod biot_savart;
pub mod coupling;
pub mod ensemble;
pub mod geometry;

pub use biot_savart::{path_field, segment_field, Vec3, WireSegment, SINGULAR_DISTANCE};
pub use coupling::{
    coupling_from_field, coupling_map, gyromagnetic_ratio, single_spin_coupling, Axis, GridPlane, MapPoint, Range,
    SpinCoupling, SpinSite,
};
pub use ensemble::{ensemble_coupling, nv_axes, EnsembleCoupling, EnsembleSpec, Placement};
pub use geometry::{transmon_field, FieldSource, Geometry, GeometryKind};
