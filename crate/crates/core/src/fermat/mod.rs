//! Index sets, periods and iterated integrals on the Fermat curve
//! `x^N + y^N = 1`, based at `(0, 1)`.

mod harmonic;
mod index;
mod iterated;

pub use harmonic::{harmonic_volume_closed_form, harmonic_volume_exact, harmonic_volume_sigma, harmonic_volume_trace, phi_pairing};
pub use index::{
    all_indices, angle_rep, assumption_check, holomorphic_indices, AssumptionFlags, FermatCurve, FermatIndex, LoopIndex,
    TripleConfig,
};
pub use iterated::{
    delta_iterated_integral, kappa_exact, kappa_iterated_integral, kappa_record, kappa_rs_exact, kappa_rs_iterated_integral,
    kappa_rs_record, period_integral, ChenRecord, DeltaAffine,
};
