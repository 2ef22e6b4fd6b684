//! Heat and wave trace signatures sampled on a grid of scales.

mod compute;
mod grid;
mod io;
mod trace;

pub use compute::{
    compute_signature, compute_spectrum, signature_from_spectrum, Signature, SignatureMeta,
    SpectrumOptions, Strategy, DEFAULT_APPROX_K,
};
pub(crate) use compute::check_grid;
pub use grid::{make_time_grid, GridSpec, Spacing, TimeGrid};
pub use io::{format_header, format_row, parse_header, SignatureFile};
pub use trace::{heat_trace, normalization_trace, taylor_heat_trace, wave_trace, Kernel, Normalization};
