//! Coupled transmon–spin, transmon–ensemble and cavity–transmon–ensemble
//! Hamiltonians, their dispersive limits and the checks that relate them.

pub mod dispersive;
pub mod identities;
pub mod spectrum;
pub mod system;

pub use dispersive::{
    build_dispersive_h_t_ens, dispersive_hamiltonian, dispersive_params, exchange_coupling, scalar_offset,
    sw_generator, sw_transform, sw_transform_within, EffectiveParams, PairShift, SwResult, DISPERSIVE_LIMIT,
    DISPERSIVE_WARNING,
};
pub use identities::{commutator_table_check, qnd_invariant_check, IdentityReport, QndReport, IDENTITY_TOLERANCE};
pub use spectrum::{
    bare_energy, bare_label, compare_spectra, labelled_dispersive_spectrum, labelled_spectrum, transmon_transition,
    truncation_stability, LabelledLevel, SpectrumRow,
};
pub use system::{
    build_h_c_t_ens, build_h_s_t_s, build_h_t_ens, build_h_ts, CTEnsSpec, Ops, Pair, StsSpec, SystemKind, SystemSpec,
    TEnsSpec, TsSpec, CAVITY, DEFAULT_BOSON_LEVELS, ENSEMBLE, MIN_BOSON_LEVELS, SPIN, SPIN1, SPIN2, TRANSMON,
};
