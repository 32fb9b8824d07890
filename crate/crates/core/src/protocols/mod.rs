//! Time-domain procedures: resonant SWAP, dispersive QND readout of the
//! ensemble, and virtual exchange through the transmon bus.

pub mod common;
pub mod exchange;
pub mod fit;
pub mod qnd;
pub mod swap;

pub use common::{DecoherenceSpec, DEFAULT_DARK_LEAK_RATE, TYPICAL_T1};
pub use exchange::{
    protection_dynamic, protection_factor, virtual_exchange_sim, ExchangeOptions, ExchangePoint, ExchangeResult,
    ProtectionCheck, ProtectionFactor,
};
pub use fit::{fit_sinusoid, SinusoidFit};
pub use qnd::{
    dressed_tuning, pulse_bandwidth_check, qnd_sequence_from, qnd_sequence_sim, sequence_feasibility,
    transmon_transition_at, Dynamics, EnsembleInference, Feasibility, PulseSequence, QndRecord, Selectivity, Step,
    Target,
};
pub use swap::{swap_sim, SwapResult, SwapTracePoint, RESONANCE_TOLERANCE};
