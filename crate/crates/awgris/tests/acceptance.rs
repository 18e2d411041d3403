//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Tolerances and runtime budgets are fixed here.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use awgris::config::Scenario;
use awgris::runner::{pattern_grid, run_loaded, Task};
use awgris_core::array::{
    beam_pattern, beam_pattern_with, scattered_field, waveform_factor, AngleGrid, ArrayScene,
    Codebook, Incidence, Wiring,
};
use awgris_core::control::ControlCircuitModel;
use awgris_core::diode::{angular, UnitModel};
use awgris_core::fft::{convolve, convolve_direct};
use awgris_core::link::{dc_filter, modulation_efficiency, received_signal, LinkConfig};
use awgris_core::signal::{normalized_correlation, SampledSignal, SignalUnit};
use awgris_core::stft::{band_mask, dft_matrix, istft, stft, StftPlan};
use awgris_core::synth::design_single_input;
use awgris_core::waveform::Waveform;
use awgris_core::{Complex64, SPEED_OF_LIGHT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FS: f64 = 1.28e6;
const CARRIER: f64 = 5.8e9;

type Check = Result<String, String>;

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn load(name: &str) -> Scenario {
    Scenario::load(&scenario_path(name)).expect("bundled scenario loads")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scene(rows: usize, cols: usize) -> ArrayScene {
    ArrayScene {
        rows,
        cols,
        spacing: SPEED_OF_LIGHT / CARRIER / 2.0,
        feed_pos: [0.02, -0.03, 0.25],
        carrier_freq: CARRIER,
        incidence: Incidence::Spherical,
        unit: UnitModel::default(),
    }
}

fn c1_beam_robustness() -> Check {
    let s = load("fig5.json");
    let mut bins = Vec::new();
    for (name, v) in s.expand().map_err(|e| e.to_string())? {
        let scene = v.array_scene();
        let cb = v.codebook(&scene).map_err(|e| e.to_string())?;
        let grid = pattern_grid(&v, &scene).map_err(|e| e.to_string())?;
        ensure(grid.d_theta == 1f64.to_radians() && grid.phi.len() == 1, || "grid is not a 1° cut".into())?;
        let p = beam_pattern_with(&scene, &cb, &grid, v.pattern.form.into()).map_err(|e| e.to_string())?;
        let best = (0..p.values.len()).fold(0, |b, i| if p.values[i] > p.values[b] { i } else { b });
        bins.push((name.unwrap_or_else(|| "reference".into()), v.unit.phi_on_deg, best));
    }
    ensure(bins.len() == 3, || format!("expected 3 runs, got {}", bins.len()))?;
    let reference = bins[0].2;
    let detail: Vec<String> = bins.iter().map(|(_, phi, b)| format!("φ_on={phi}°→θ={b}°")).collect();
    ensure(bins.iter().all(|b| b.2 == reference), || detail.join(", "))?;
    Ok(detail.join(", "))
}

fn c2_global_phase() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = scene(4, 4);
    let grid = AngleGrid::hemisphere(3.0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cb = Codebook::new((0..16).map(|_| rng.random_bool(0.5)).collect());
        let base = beam_pattern(&s, &cb, &grid).map_err(|e| e.to_string())?;
        let shift = rng.random_range(-PI..PI);
        let mut shifted = s.clone();
        shifted.unit.phi_on += shift;
        shifted.unit.phi_off += shift;
        let p = beam_pattern(&shifted, &cb, &grid).map_err(|e| e.to_string())?;
        for (a, b) in base.values.iter().zip(&p.values) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("max change {worst:.3e} > 1e-12"))?;
    Ok(format!("100 codebooks, max change {worst:.2e}"))
}

fn random_drive(rng: &mut ChaCha8Rng, i: usize) -> Waveform {
    let offset = rng.random_range(0.85..0.9);
    let amplitude = rng.random_range(0.02..0.08);
    let freq_hz = rng.random_range(2e3..60e3);
    match i % 4 {
        0 => Waveform::Sine {
            freq_hz,
            amplitude,
            offset,
            phase_deg: rng.random_range(0.0..360.0),
        },
        1 => Waveform::Square {
            freq_hz,
            amplitude,
            offset,
            phase_deg: rng.random_range(0.0..360.0),
            duty: rng.random_range(0.2..0.8),
        },
        2 => Waveform::Chirp {
            f0_hz: freq_hz,
            f1_hz: rng.random_range(2e3..60e3),
            amplitude,
            offset,
            phase_deg: 0.0,
        },
        _ => Waveform::GaussPulse {
            center_s: rng.random_range(0.1e-3..1.5e-3),
            sigma_s: rng.random_range(10e-6..200e-6),
            amplitude,
            offset,
        },
    }
}

fn c3_decoupling() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = scene(4, 4);
    let (theta, phi) = (30f64.to_radians(), 45f64.to_radians());
    let cb = Codebook::design_for_direction(&s, theta, phi).map_err(|e| e.to_string())?;
    let grid = AngleGrid::hemisphere(2.0);
    let reference = beam_pattern(&s, &cb, &grid).map_err(|e| e.to_string())?;
    let cc = ControlCircuitModel::identity(FS, (0.0, 0.4 * FS)).map_err(|e| e.to_string())?;
    let mut envelopes = Vec::new();
    for i in 0..20 {
        let x = random_drive(&mut rng, i).render(FS, 2048, SignalUnit::Volt).map_err(|e| e.to_string())?;
        let a = waveform_factor(&cb, &Wiring::uniform(16), &s.unit, &[cc.clone()], &[x], s.omega())
            .map_err(|e| e.to_string())?;
        let field = scattered_field(&s, &cb, &a, theta, phi, 5.0, None).map_err(|e| e.to_string())?;
        envelopes.push(field.field.magnitude().samples);
        let p = beam_pattern(&s, &cb, &grid).map_err(|e| e.to_string())?;
        let identical = p
            .values
            .iter()
            .zip(&reference.values)
            .all(|(a, b)| a.to_bits() == b.to_bits());
        ensure(identical, || format!("pattern changed for input {i}"))?;
    }
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in i + 1..20 {
            worst = worst.max(normalized_correlation(&envelopes[i], &envelopes[j]).abs());
        }
    }
    ensure(worst < 0.99, || format!("envelope correlation {worst:.4} ≥ 0.99"))?;
    Ok(format!("20 inputs, patterns bit-identical, max |corr| {worst:.3}"))
}

fn c4_stft_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 1 << 14;
    let l = 256;
    let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let sig = SampledSignal::dimensionless(y.clone(), FS).map_err(|e| e.to_string())?;
    let peak = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut report = Vec::new();
    for hop in [64, 128] {
        let plan = StftPlan::hamming(l, hop, FS).map_err(|e| e.to_string())?;
        let back = istft(&stft(&sig, &plan).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        // interior: every sample covered by the full set of overlapping frames
        let err = (l..n - l).map(|i| (back.samples[i] - y[i]).abs()).fold(0.0f64, f64::max) / peak;
        ensure(err <= 1e-10, || format!("H={hop}: relative error {err:.3e}"))?;
        report.push(format!("H={hop}: {err:.1e}"));
    }
    Ok(report.join(", "))
}

fn c5_mask_partition() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = 128;
    let y: Vec<f64> = (0..4096).map(|_| rng.random_range(-1.0..1.0)).collect();
    let sig = SampledSignal::dimensionless(y, FS).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (trial, k) in [2usize, 3, 5, 8].into_iter().enumerate() {
        let plan = StftPlan::hamming(l, if trial % 2 == 0 { l / 2 } else { l / 4 }, FS).map_err(|e| e.to_string())?;
        let s = stft(&sig, &plan).map_err(|e| e.to_string())?;
        let whole = istft(&s).map_err(|e| e.to_string())?;
        let mut parts = vec![BTreeSet::new(); k];
        for b in 0..l {
            parts[rng.random_range(0..k)].insert(b);
        }
        let mut sum = vec![0.0; whole.len()];
        for p in &parts {
            let c = istft(&band_mask(&s, p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            for (a, v) in sum.iter_mut().zip(&c.samples) {
                *a += v;
            }
        }
        for (a, b) in sum.iter().zip(&whole.samples) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:.3e}"))?;
    Ok(format!("random partitions into 2/3/5/8 sets, max deviation {worst:.1e}"))
}

fn c6_algorithm1() -> Check {
    let n = 4096;
    let dur = n as f64 / FS;
    let unit = UnitModel::default();
    let omega = angular(CARRIER);
    let cc = ControlCircuitModel::identity(FS, (0.0, 0.4 * FS)).map_err(|e| e.to_string())?;
    let targets = [
        ("square", Waveform::Square { freq_hz: 10e3, amplitude: 1.0, offset: 0.0, phase_deg: 0.0, duty: 0.5 }),
        ("gauss", Waveform::GaussPulse { center_s: dur / 2.0, sigma_s: 100e-6, amplitude: 1.0, offset: 0.0 }),
        ("sinc", Waveform::Sinc { center_s: dur / 2.0, bandwidth_hz: 50e3, amplitude: 1.0, offset: 0.0 }),
        ("chirp", Waveform::Chirp { f0_hz: 5e3, f1_hz: 50e3, amplitude: 1.0, offset: 0.0, phase_deg: 0.0 }),
    ];
    let cb = Codebook::all(1, true);
    let mut report = Vec::new();
    for (name, w) in targets {
        let y = w.render(FS, n, SignalUnit::Dimensionless).map_err(|e| e.to_string())?;
        let x = design_single_input(&y, &unit, &cc, omega).map_err(|e| format!("{name}: {e}"))?;
        let a = waveform_factor(&cb, &Wiring::uniform(1), &unit, &[cc.clone()], &[x], omega)
            .map_err(|e| e.to_string())?;
        let link = LinkConfig::default();
        let r = dc_filter(&received_signal(&a, &link).map_err(|e| e.to_string())?, &link)
            .map_err(|e| e.to_string())?;
        let c = normalized_correlation(&r.samples, &y.samples);
        ensure(c >= 0.99, || format!("{name}: correlation {c:.5}"))?;
        report.push(format!("{name} {c:.5}"));
    }
    Ok(report.join(", "))
}

fn c7_superposition() -> Check {
    let s = load("fig13.json");
    let mut worst = 0.0f64;
    let mut runs = 0;
    for (_, v) in s.expand().map_err(|e| e.to_string())? {
        let scene = v.array_scene();
        let cb = v.codebook(&scene).map_err(|e| e.to_string())?;
        let wiring = v.wiring().map_err(|e| e.to_string())?;
        let cc = v.control_circuit().map_err(|e| e.to_string())?;
        let inputs = awgris::runner::render_inputs(&v.inputs, v.sample_rate, v.num_samples.unwrap(), SignalUnit::Volt)
            .map_err(|e| e.to_string())?;
        ensure(inputs.len() == 2 && v.link.noise_std == 0.0, || "fig13 is not a noiseless two-input scenario".into())?;
        let sim = |bits: Vec<bool>| -> Result<Vec<f64>, String> {
            let a = waveform_factor(&Codebook::new(bits), &wiring, &scene.unit, &[cc.clone()], &inputs, scene.omega())
                .map_err(|e| e.to_string())?;
            Ok(received_signal(&a, &v.link).map_err(|e| e.to_string())?.samples)
        };
        let both = sim(cb.bits.clone())?;
        // one input at a time: every unit of the other group reflects α
        let mut singles = Vec::new();
        let mut idle = 0.0;
        for g in 0..2 {
            let bits: Vec<bool> = cb
                .bits
                .iter()
                .enumerate()
                .map(|(k, &b)| b && wiring.input_of_unit[k] == g)
                .collect();
            let others = (0..bits.len()).filter(|&k| wiring.input_of_unit[k] != g).count();
            idle += others as f64 * scene.unit.alpha * v.link.beam_gain * v.link.mod_attenuation;
            singles.push(sim(bits)?);
        }
        for n in 0..both.len() {
            let sum = singles[0][n] + singles[1][n] - idle;
            worst = worst.max((both[n] - sum).abs());
        }
        runs += 1;
    }
    ensure(runs == 4, || format!("expected 4 phase offsets, got {runs}"))?;
    ensure(worst <= 1e-10, || format!("max deviation {worst:.3e}"))?;
    Ok(format!("0/45/90/135°, max deviation {worst:.1e}"))
}

fn c8_eight_tones() -> Check {
    let s = load("fig15.json");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report = run_loaded(&s, dir.path(), Task::Simulate).map_err(|e| e.to_string())?;
    let run = &report.runs[0];
    let peaks = run.peaks.as_ref().ok_or("no spectrum in fig15 run")?;
    let freqs: Vec<f64> = peaks.iter().map(|p| p.freq_hz).collect();
    let want: Vec<f64> = (1..=8).map(|k| 10e3 * k as f64).collect();
    ensure(freqs == want, || format!("peaks at {freqs:?}"))?;
    let low = peaks.iter().map(|p| p.above_floor_db).fold(f64::INFINITY, f64::min);
    ensure(low >= 30.0, || format!("weakest peak {low:.1} dB above floor"))?;
    let amp: Vec<f64> = peaks.iter().map(|p| 10f64.powf(p.magnitude_db / 20.0)).collect();
    let ratio = amp.iter().cloned().fold(0.0, f64::max) / amp.iter().cloned().fold(f64::INFINITY, f64::min);
    ensure(ratio > 1.05, || format!("max/min peak ratio {ratio:.4}"))?;
    Ok(format!("8 peaks 10–80 kHz, ≥ {low:.0} dB above floor, max/min {ratio:.2}"))
}

fn c9_letter_image() -> Check {
    let s = load("fig16.json");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report = run_loaded(&s, dir.path(), Task::SynthImage).map_err(|e| e.to_string())?;
    let r = report.runs[0].image_correlation.ok_or("no image correlation")?;
    ensure(r >= 0.9, || format!("correlation {r:.4}"))?;
    Ok(format!("in-band correlation {r:.4}"))
}

fn c10_efficiency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let unit = UnitModel::default();
    let omega = angular(CARRIER);
    let cc = ControlCircuitModel::identity(FS, (0.0, 0.4 * FS)).map_err(|e| e.to_string())?;
    let len = 256;
    let err = |e: awgris_core::Error| e.to_string();
    for trial in 0..1000 {
        let units = rng.random_range(1..12);
        let inputs = rng.random_range(1..=units.min(3));
        let wiring = Wiring::new((0..units).map(|k| k % inputs).collect(), inputs).map_err(err)?;
        let drives: Vec<SampledSignal> = (0..inputs)
            .map(|i| random_drive(&mut rng, i).render(FS, len, SignalUnit::Volt))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let bits: Vec<bool> = (0..units).map(|_| rng.random_bool(0.6)).collect();
        let a = waveform_factor(&Codebook::new(bits.clone()), &wiring, &unit, &[cc.clone()], &drives, omega).map_err(err)?;
        let eta = modulation_efficiency(&a, &Codebook::new(bits.clone())).map_err(err)?;
        ensure((0.0..=1.0).contains(&eta), || format!("trial {trial}: η = {eta}"))?;

        let off = Codebook::all(units, false);
        let a0 = waveform_factor(&off, &wiring, &unit, &[cc.clone()], &drives, omega).map_err(err)?;
        let e0 = modulation_efficiency(&a0, &off).map_err(err)?;
        ensure(e0 == 0.0, || format!("trial {trial}: empty ON set gives η = {e0}"))?;

        let flat: Vec<SampledSignal> = (0..inputs)
            .map(|_| SampledSignal::constant(rng.random_range(0.75..1.0), len, FS, SignalUnit::Volt))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let ac = waveform_factor(&Codebook::new(bits.clone()), &wiring, &unit, &[cc.clone()], &flat, omega).map_err(err)?;
        let ec = modulation_efficiency(&ac, &Codebook::new(bits.clone())).map_err(err)?;
        ensure(ec == 0.0, || format!("trial {trial}: constant drive gives η = {ec}"))?;

        let extra = rng.random_range(1..6);
        let mut more_bits = bits.clone();
        more_bits.extend(std::iter::repeat_n(false, extra));
        let mut map = wiring.input_of_unit.clone();
        map.extend(std::iter::repeat_n(0, extra));
        let more = Codebook::new(more_bits);
        let a2 = waveform_factor(&more, &Wiring::new(map, inputs).map_err(err)?, &unit, &[cc.clone()], &drives, omega)
            .map_err(err)?;
        let e2 = modulation_efficiency(&a2, &more).map_err(err)?;
        ensure(e2 <= eta, || format!("trial {trial}: adding OFF units raised η {eta} → {e2}"))?;
    }
    let target = Waveform::Sine { freq_hz: 10e3, amplitude: 1.0, offset: 0.0, phase_deg: 0.0 }
        .render(FS, 1280, SignalUnit::Dimensionless)
        .map_err(err)?;
    let x = design_single_input(&target, &unit, &cc, omega).map_err(err)?;
    let cb = Codebook::all(1, true);
    let a = waveform_factor(&cb, &Wiring::uniform(1), &unit, &[cc], &[x], omega).map_err(err)?;
    let eta = modulation_efficiency(&a, &cb).map_err(err)?;
    ensure((eta - 0.25).abs() <= 0.05, || format!("calibrated η = {eta:.4}"))?;
    Ok(format!("1000 configurations in [0,1]; calibrated unit η = {eta:.4}"))
}

fn c11_oracles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let signal: Vec<f64> = (0..8192).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut conv = 0.0f64;
    for taps in [1, 2, 17, 255, 1024, 4096] {
        let h: Vec<f64> = (0..taps).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (a, b) = (convolve(&signal, &h), convolve_direct(&signal, &h));
        ensure(a.len() == b.len(), || "length mismatch".into())?;
        for (x, y) in a.iter().zip(&b) {
            conv = conv.max((x - y).abs());
        }
    }
    ensure(conv <= 1e-10, || format!("fast vs direct convolution {conv:.3e}"))?;

    let mut unitary = 0.0f64;
    for l in [1, 2, 4, 8, 64, 256] {
        let d = dft_matrix(l).map_err(|e| e.to_string())?;
        for i in 0..l {
            for j in 0..l {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..l {
                    acc += d[i * l + k] * d[j * l + k].conj();
                }
                let want = if i == j { 1.0 } else { 0.0 };
                unitary = unitary.max((acc - want).norm());
            }
        }
    }
    ensure(unitary <= 1e-12, || format!("DFT unitarity {unitary:.3e}"))?;

    let unit = UnitModel::default();
    let omega = angular(CARRIER);
    let (vf, vr) = (unit.diode.v_forward, unit.diode.v_ref);
    let mut inv = 0.0f64;
    for i in 0..=200 {
        let v = vf + (vr - vf) * i as f64 / 200.0;
        let m = unit.magnitude_map(v, omega).map_err(|e| e.to_string())?;
        let back = unit.inverse_magnitude_map(m, omega).map_err(|e| e.to_string())?;
        inv = inv.max((back - v).abs());
    }
    ensure(inv <= 1e-6, || format!("inverse map round trip {inv:.3e} V"))?;
    Ok(format!("conv {conv:.1e}, unitarity {unitary:.1e}, inverse map {inv:.1e} V"))
}

fn files_under(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn c12_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_awgris");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut total = 0;
    for name in ["fig5", "fig13", "fig15", "fig16"] {
        let mut dirs = Vec::new();
        for attempt in 0..2 {
            let out = tmp.path().join(format!("{name}_{attempt}"));
            let status = Command::new(bin)
                .args(["simulate", "--seed", "7", "--config"])
                .arg(scenario_path(&format!("{name}.json")))
                .arg("--out")
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(status.status.success(), || {
                format!("{name}: {}", String::from_utf8_lossy(&status.stderr))
            })?;
            dirs.push(out);
        }
        let (a, b) = (files_under(&dirs[0]), files_under(&dirs[1]));
        ensure(a == b && !a.is_empty(), || format!("{name}: different file sets"))?;
        for f in &a {
            let same = std::fs::read(dirs[0].join(f)).unwrap() == std::fs::read(dirs[1].join(f)).unwrap();
            ensure(same, || format!("{name}: {} differs", f.display()))?;
        }
        total += a.len();
    }
    Ok(format!("{total} artifacts byte-identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 12] = [
        ("beam-pattern robustness", Some(Duration::from_secs(1)), c1_beam_robustness),
        ("global-phase invariance", Some(Duration::from_secs(10)), c2_global_phase),
        ("decoupling of inputs and pattern", Some(Duration::from_secs(10)), c3_decoupling),
        ("STFT round trip", Some(Duration::from_secs(5)), c4_stft_round_trip),
        ("mask partition linearity", Some(Duration::from_secs(5)), c5_mask_partition),
        ("single-input synthesis fidelity", Some(Duration::from_secs(10)), c6_algorithm1),
        ("two-input superposition", Some(Duration::from_secs(5)), c7_superposition),
        ("eight-tone spectrum", Some(Duration::from_secs(10)), c8_eight_tones),
        ("spectrogram letter", Some(Duration::from_secs(30)), c9_letter_image),
        ("modulation efficiency", Some(Duration::from_secs(10)), c10_efficiency),
        ("oracle equivalence", Some(Duration::from_secs(10)), c11_oracles),
        ("CLI determinism", None, c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (ok, detail) = match (result, budget) {
            (Ok(d), Some(b)) if took > *b => (false, format!("{d}; over budget {:.0?}", b)),
            (Ok(d), _) => (true, d),
            (Err(e), _) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(" / {:.0?}", b));
        println!(
            "{} [{:>2}] {name} ({:.3}s{budget}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64()
        );
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
