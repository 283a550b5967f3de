use crate::error::ReadoutError;

/// Fold a frequency into the first Nyquist zone `[-f_adc/2, f_adc/2)` of a
/// sampler running at `f_adc`.
pub fn fold_to_first_nyquist(f: f64, f_adc: f64) -> f64 {
    let r = f.rem_euclid(f_adc);
    if r >= f_adc / 2.0 {
        r - f_adc
    } else {
        r
    }
}

/// Frequency bin a tone lands in after sampling: bins are `f_adc/16` wide,
/// indexed by `floor(|folded| / (f_adc/16))`, giving 8 bins across the
/// Nyquist band.
pub fn assign_bin(f: f64, f_adc: f64) -> Result<usize, ReadoutError> {
    let folded = fold_to_first_nyquist(f, f_adc).abs();
    if folded >= f_adc / 2.0 {
        return Err(ReadoutError::OnNyquistEdge { freq: f, f_adc });
    }
    Ok((folded / (f_adc / 16.0)).floor() as usize)
}

/// Bin assignment for a tone set; fails naming the first colliding pair.
pub fn assign_bins(freqs: &[f64], f_adc: f64) -> Result<Vec<usize>, ReadoutError> {
    let mut bins = Vec::with_capacity(freqs.len());
    for (idx, &f) in freqs.iter().enumerate() {
        let bin = assign_bin(f, f_adc)?;
        if let Some(prev) = bins.iter().position(|&b| b == bin) {
            return Err(ReadoutError::BinCollision {
                f_a: freqs[prev],
                f_b: freqs[idx],
                bin,
            });
        }
        bins.push(bin);
    }
    Ok(bins)
}
