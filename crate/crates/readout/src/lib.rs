//! Multiplexed digital readout.
//!
//! The ADC stream is split into 8 frequency channels by a polyphase filter
//! bank with 50% passband overlap between neighbors, so a tone anywhere in
//! the band lands inside at least one channel's passband at useful gain.
//! Each channel is then demodulated by its own DDS and integrated to an I/Q
//! pair. Frequency-bin assignment and collision checking decide where a
//! given readout tone will land before anything is synthesized.

mod bins;
mod demod;
mod error;
mod io;
mod pfb;

pub use bins::{assign_bin, assign_bins, fold_to_first_nyquist};
pub use demod::{
    demodulate_accumulate, demodulate_simultaneous, recover_tone, ReadoutResult, ToneEstimate,
    MAX_SIMULTANEOUS_READOUTS,
};
pub use error::ReadoutError;
pub use io::{read_prototype_csv, write_readout_csv, ReadoutRow};
pub use pfb::{ChannelStream, PfbChannelizer, PfbConfig, N_CHANNELS, PFB_BRANCHES};
