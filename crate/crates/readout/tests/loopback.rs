//! Closed-loop generation/readout checks: multiplexed tones synthesized with
//! dsp-core, channelized, demodulated, and compared against what went in.

use dsp_core::{synthesize_mux, DdsChannel, SampleClock};
use num_complex::Complex64;
use proptest::prelude::*;
use readout::{
    assign_bins, fold_to_first_nyquist, recover_tone, PfbChannelizer, PfbConfig, PFB_BRANCHES,
};

const F_ADC: f64 = 2_457_600_000.0;

/// Synthesize real multi-tone input as the ADC would see it: each requested
/// tone is folded into the first Nyquist zone before generation.
fn synthesize_adc_input(tones: &[(f64, f64, f64)], len: usize) -> Vec<f64> {
    let clock = SampleClock::new(F_ADC).unwrap();
    let mux: Vec<(DdsChannel, f64)> = tones
        .iter()
        .map(|&(f, phi, amp)| {
            let folded = fold_to_first_nyquist(f, F_ADC);
            (DdsChannel::new(folded, phi, amp), 1.0)
        })
        .collect();
    synthesize_mux(&mux, 0, len, &clock).unwrap().to_real()
}

fn wrap_angle(a: f64) -> f64 {
    let mut a = a.rem_euclid(std::f64::consts::TAU);
    if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    }
    a
}

#[test]
fn paper_tone_set_recovers_within_tolerance() {
    // The four readout tones of the 950 MHz mux plan, as seen by the ADC
    // after the external mix-down: 950 + {-70, -816, 822, 91} MHz.
    let freqs: Vec<f64> = [-70.0, -816.0, 822.0, 91.0]
        .iter()
        .map(|o| (950.0 + o) * 1e6)
        .collect();
    assign_bins(&freqs, F_ADC).unwrap();

    let tones: Vec<(f64, f64, f64)> = freqs
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, 0.3 + 0.7 * i as f64, 0.2))
        .collect();
    let input = synthesize_adc_input(&tones, 1 << 14);

    let pfb = PfbChannelizer::new(&PfbConfig::default(), F_ADC).unwrap();
    let channels = pfb.channelize_real(&input).unwrap();
    let skip = channels[0].valid_from + 16;
    let window = channels[0].samples.len() - skip - 8;

    for &(f, phi, amp) in &tones {
        let est = recover_tone(&pfb, &channels, f, F_ADC, skip, window).unwrap();
        let amp_err = (est.amplitude - amp).abs() / amp;
        let phase_err = wrap_angle(est.phase - phi).abs();
        assert!(amp_err < 0.01, "tone {f}: amplitude error {amp_err}");
        assert!(
            phase_err < 1.0f64.to_radians(),
            "tone {f}: phase error {} deg",
            phase_err.to_degrees()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Any four tones in distinct bins (with sane margins from bin edges)
    /// round-trip within 1% amplitude and 1 degree phase.
    #[test]
    fn random_distinct_bin_tones_round_trip(
        bins in proptest::sample::subsequence(vec![0usize, 1, 2, 3, 4, 5, 6, 7], 4),
        offsets in prop::collection::vec(0.10f64..0.45, 4),
        phases in prop::collection::vec(0.0f64..std::f64::consts::TAU, 4),
        amps in prop::collection::vec(0.05f64..0.22, 4),
    ) {
        let spacing = F_ADC / PFB_BRANCHES as f64;
        let tones: Vec<(f64, f64, f64)> = bins
            .iter()
            .zip(offsets.iter())
            .zip(phases.iter().zip(amps.iter()))
            .map(|((&b, &u), (&p, &a))| ((b as f64 + u) * spacing, p, a))
            .collect();
        let freqs: Vec<f64> = tones.iter().map(|t| t.0).collect();
        prop_assert!(assign_bins(&freqs, F_ADC).is_ok());

        let input = synthesize_adc_input(&tones, 1 << 14);
        let pfb = PfbChannelizer::new(&PfbConfig::default(), F_ADC).unwrap();
        let channels = pfb.channelize_real(&input).unwrap();
        let skip = channels[0].valid_from + 16;
        let window = channels[0].samples.len() - skip - 8;

        for &(f, phi, amp) in &tones {
            let est = recover_tone(&pfb, &channels, f, F_ADC, skip, window).unwrap();
            let amp_err = (est.amplitude - amp).abs() / amp;
            let phase_err = wrap_angle(est.phase - phi).abs();
            prop_assert!(amp_err < 0.01, "tone {} amp err {}", f, amp_err);
            prop_assert!(
                phase_err < 1.0f64.to_radians(),
                "tone {} phase err {} deg", f, phase_err.to_degrees()
            );
        }
    }

    /// Total channelized energy matches the prototype-filter prediction:
    /// for a tone at `f`, E_out/E_in = sum_k |H(f - f_k)|^2 / 8, and that
    /// prediction stays within the band's ripple envelope.
    #[test]
    fn energy_conservation_within_ripple_bound(
        f_mhz in 90.0f64..1070.0,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let f = f_mhz * 1e6;
        let clock = SampleClock::new(F_ADC).unwrap();
        let len = 1 << 14;
        let tone = synthesize_mux(&[(DdsChannel::new(f, phi, 0.5), 1.0)], 0, len, &clock).unwrap();

        let pfb = PfbChannelizer::new(&PfbConfig::default(), F_ADC).unwrap();
        let channels = pfb.channelize_complex(&tone.samples).unwrap();
        let v = channels[0].valid_from + 8;
        let n = channels[0].samples.len() - 8;

        let e_out: f64 = channels
            .iter()
            .map(|c| c.samples[v..n].iter().map(|s| s.norm_sqr()).sum::<f64>())
            .sum();
        let e_in = 0.25 * ((n - v) * 8) as f64; // |A|^2 per input sample

        let rho = |f: f64| -> f64 {
            (0..8)
                .map(|k| pfb.response(f - k as f64 * F_ADC / 16.0).norm_sqr())
                .sum::<f64>()
                / 8.0
        };
        let measured = e_out / e_in;
        let predicted = rho(f);
        prop_assert!(
            (measured - predicted).abs() / predicted < 0.015,
            "measured {} predicted {}", measured, predicted
        );

        // Ripple envelope over the covered band, from the prototype alone.
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        let mut g = 40e6;
        while g < 1080e6 {
            let r = rho(g);
            lo = lo.min(r);
            hi = hi.max(r);
            g += 2.5e6;
        }
        prop_assert!(measured >= lo * 0.98 && measured <= hi * 1.02,
            "measured {} outside ripple bound [{}, {}]", measured, lo, hi);
    }
}

#[test]
fn flat_coverage_across_band() {
    // Sweeping a unit tone across the band, the best channel's raw recovered
    // amplitude never falls below the crossover floor: 50% overlap leaves no
    // gain holes between channels.
    let pfb = PfbChannelizer::new(&PfbConfig::default(), F_ADC).unwrap();
    let clock = SampleClock::new(F_ADC).unwrap();
    let spacing = F_ADC / PFB_BRANCHES as f64;
    let floor = 0.45;

    let mut worst = f64::INFINITY;
    let mut worst_f = 0.0;
    for step in 0..=72 {
        let f = 20e6 + step as f64 * 15e6; // 20 MHz .. 1100 MHz
        let wave = synthesize_mux(&[(DdsChannel::new(f, 0.0, 1.0), 1.0)], 0, 8192, &clock).unwrap();
        let channels = pfb.channelize_real(&wave.to_real()).unwrap();
        let skip = channels[0].valid_from + 8;
        let window = channels[0].samples.len() - skip - 8;

        let mut best = 0.0f64;
        for ch in &channels {
            let delta = f - ch.center_hz;
            if delta.abs() > spacing {
                continue;
            }
            let dds = DdsChannel::new(delta, 0.0, 1.0);
            let r = readout::demodulate_accumulate(
                &readout::ChannelStream {
                    samples: ch.samples[skip..skip + window].to_vec(),
                    valid_from: 0,
                    ..ch.clone()
                },
                &DdsChannel {
                    // keep demod phase-continuous with the trimmed stream
                    reset_epoch: -(skip as i64),
                    ..dds
                },
                window,
            )
            .unwrap();
            best = best.max(r.magnitude() / window as f64);
        }
        if best < worst {
            worst = best;
            worst_f = f;
        }
    }
    assert!(
        worst >= floor,
        "coverage floor violated: {worst:.3} at {worst_f} Hz"
    );
}
