//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any criterion fails.

mod support;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use sonoprint::commands::cmd_evaluate;
use sonoprint::config::{ClassifierKind, ExperimentConfig, FeatureChoice};
use sonoprint::pipeline::{extract_all, resample_all, simulate};
use sonoprint::wav::write_wav;
use sonoprint_core::classify::gmm_fit;
use sonoprint_core::features::{self, FeatureId};
use sonoprint_core::metrics::{evaluate_vectors, harmonic_mean, ClassifierSpec, ExperimentSpec};
use sonoprint_core::seed;
use sonoprint_core::select::sfs;
use sonoprint_core::simulate::sources;
use sonoprint_core::spectral::magnitude_spectrum;
use sonoprint_core::{AudioClip, Error, FeatureVector, Spectrum};
use support::oracle;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion(n: usize, name: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = out.pass && in_time;
    println!(
        "[{}] {n:>2}. {name}: {}; {:.1}s{}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        if in_time { String::new() } else { format!(" (limit {}s)", limit.as_secs()) }
    );
    pass
}

fn sine(freqs: &[(f64, f64)], rate: u32, secs: f64) -> AudioClip {
    let n = (secs * rate as f64) as usize;
    AudioClip::new(
        (0..n)
            .map(|i| freqs.iter().map(|(f, a)| a * (2.0 * PI * f * i as f64 / rate as f64).sin()).sum())
            .collect(),
        rate,
    )
    .unwrap()
}

fn spectrum(bins: &[(f64, f64)]) -> Spectrum {
    Spectrum::from_bins(bins.iter().map(|b| b.0).collect(), bins.iter().map(|b| b.1).collect(), 44100.0).unwrap()
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// 1 ------------------------------------------------------------------------

fn metric_formulas() -> Outcome {
    let rows = [((96.7, 96.0), 96.3), ((78.9, 84.0), 81.4)];
    let mut ok = true;
    let mut got = Vec::new();
    for ((pr, re), expected) in rows {
        let f1 = 100.0 * harmonic_mean(pr / 100.0, re / 100.0);
        let rounded = (f1 * 10.0).round() / 10.0;
        ok &= near(rounded, expected, 0.05);
        got.push(format!("({pr}, {re}) -> {rounded:.1}"));
    }
    outcome(ok, got.join(", "))
}

// 2 ------------------------------------------------------------------------

fn feature_examples() -> Vec<(&'static str, bool)> {
    let rate = 44100;
    let mut checks = Vec::new();
    let mut check = |name: &'static str, ok: bool| checks.push((name, ok));

    check("rms [3,4]", near(features::rms(&[3.0, 4.0]), 12.5f64.sqrt(), 1e-12));
    check("rms zeros", features::rms(&[0.0; 8]) == 0.0);
    check("rms constant", near(features::rms(&[-0.25; 5]), 0.25, 1e-15));
    check("zcr alternating", near(features::zcr(&[1.0, -1.0, 1.0, -1.0]).unwrap(), 0.75, 1e-15));
    check("zcr positive", features::zcr(&[0.1, 0.2, 0.3]).unwrap() == 0.0);
    check("zcr [1,1,-1,-1]", near(features::zcr(&[1.0, 1.0, -1.0, -1.0]).unwrap(), 0.25, 1e-15));

    let n = rate as usize;
    let half: Vec<f64> = (0..n)
        .map(|i| if i < n / 2 { (2.0 * PI * 441.0 * i as f64 / rate as f64).sin() } else { 0.0 })
        .collect();
    let hop = 1103.0 / n as f64;
    check("low energy half silence", near(features::low_energy_rate(&AudioClip::new(half, rate).unwrap()).unwrap(), 0.5, 2.0 * hop));
    // whole periods in every hop, so every frame has the same RMS
    let steady = sine(&[(1000.0, 0.5)], 8000, 1.0);
    check("low energy steady tone", features::low_energy_rate(&steady).unwrap() == 0.0);
    check("low energy silence", features::low_energy_rate(&AudioClip::new(vec![0.0; n], rate).unwrap()).unwrap() == 0.0);

    check("centroid single bin", near(features::spectral_centroid(&spectrum(&[(0.0, 0.0), (1000.0, 1.0)])).unwrap(), 1000.0, 1e-9));
    check("centroid two bins", near(features::spectral_centroid(&spectrum(&[(100.0, 1.0), (300.0, 1.0)])).unwrap(), 200.0, 1e-9));
    let flat = magnitude_spectrum(&{
        let mut x = vec![0.0; 1024];
        x[0] = 1.0;
        x
    }, 8000.0)
    .unwrap();
    let bin = 8000.0 / 1024.0;
    check("centroid flat", near(features::spectral_centroid(&flat).unwrap(), 2000.0, bin));

    let uniform8 = spectrum(&(0..8).map(|i| (i as f64 * 10.0, 1.0)).collect::<Vec<_>>());
    check("entropy uniform 8", near(features::spectral_entropy(&uniform8), 3.0, 1e-12));
    check("entropy delta", features::spectral_entropy(&spectrum(&[(0.0, 0.0), (5.0, 2.0)])).abs() < 1e-15);
    check("entropy two bins", near(features::spectral_entropy(&spectrum(&[(1.0, 1.0), (2.0, 1.0)])), 1.0, 1e-12));

    let peaks = |mags: &[f64]| {
        let mut bins = vec![(0.0, 0.0)];
        for (i, &m) in mags.iter().enumerate() {
            bins.push((100.0 * (2 * i + 1) as f64, m));
            bins.push((100.0 * (2 * i + 2) as f64, 0.0));
        }
        features::spectral_irregularity(&spectrum(&bins))
    };
    check("irregularity [2,2,2]", near(peaks(&[2.0, 2.0, 2.0]), 1.0 / 3.0, 1e-12));
    check("irregularity [2]", near(peaks(&[2.0]), 1.0, 1e-12));
    check("irregularity [3,1]", near(peaks(&[3.0, 1.0]), 0.5, 1e-12));

    check("spread single", features::spectral_spread(&spectrum(&[(50.0, 1.0)])).unwrap() == 0.0);
    check("spread two", near(features::spectral_spread(&spectrum(&[(100.0, 1.0), (300.0, 1.0)])).unwrap(), 100.0, 1e-9));
    check("spread three", near(features::spectral_spread(&spectrum(&[(0.0, 1.0), (100.0, 1.0), (200.0, 1.0)])).unwrap(), (20000.0f64 / 3.0).sqrt(), 1e-6));
    check("skewness symmetric", features::spectral_skewness(&spectrum(&[(1.0, 1.0), (3.0, 1.0)])).unwrap().abs() < 1e-12);
    check("skewness 0.75/0.25", near(features::spectral_skewness(&spectrum(&[(0.0, 0.75), (4.0, 0.25)])).unwrap(), 6.0 / 3f64.powf(1.5), 1e-9));
    check("skewness single", features::spectral_skewness(&spectrum(&[(9.0, 1.0)])).unwrap() == 0.0);
    check("kurtosis two-point", near(features::spectral_kurtosis(&spectrum(&[(1.0, 1.0), (3.0, 1.0)])).unwrap(), 1.0, 1e-12));
    check("kurtosis three", near(features::spectral_kurtosis(&spectrum(&[(9.0, 1.0), (10.0, 1.0), (11.0, 1.0)])).unwrap(), 1.5, 1e-12));
    check("kurtosis single", features::spectral_kurtosis(&spectrum(&[(9.0, 1.0)])).unwrap() == 0.0);

    check("rolloff single", near(features::spectral_rolloff(&spectrum(&[(0.0, 0.0), (2000.0, 1.0)])).unwrap(), 2000.0, 1e-9));
    let hundred: Vec<(f64, f64)> = (1..=100).map(|i| (i as f64 * 10.0, 1.0)).collect();
    check("rolloff uniform", near(features::spectral_rolloff(&spectrum(&hundred)).unwrap(), 850.0, 1e-9));
    check("rolloff 0.9/0.1", near(features::spectral_rolloff(&spectrum(&[(100.0, 0.9), (5000.0, 0.1)])).unwrap(), 100.0, 1e-9));
    check("brightness above", near(features::spectral_brightness(&spectrum(&[(2000.0, 1.0), (3000.0, 1.0)])).unwrap(), 1.0, 1e-15));
    check("brightness below", features::spectral_brightness(&spectrum(&[(200.0, 1.0), (300.0, 1.0)])).unwrap() == 0.0);
    check("brightness split", near(features::spectral_brightness(&spectrum(&[(200.0, 1.0), (3000.0, 1.0)])).unwrap(), 0.5, 1e-15));
    check("flatness flat", near(features::spectral_flatness(&uniform8), 1.0, 1e-12));
    check("flatness [1,4]", near(features::spectral_flatness(&spectrum(&[(1.0, 1.0), (2.0, 4.0)])), 0.8, 1e-12));
    let mut delta_bins: Vec<(f64, f64)> = (0..64).map(|i| (i as f64, 0.0)).collect();
    delta_bins[10].1 = 1.0;
    check("flatness delta", features::spectral_flatness(&spectrum(&delta_bins)) <= 1e-3);

    let tone = sine(&[(1000.0, 0.5)], rate, 1.0);
    let mfcc = features::mfcc(&tone).unwrap();
    check("mfcc length", mfcc.len() == 13);
    check("mfcc 1 kHz vs oracle", oracle::close(&mfcc, &oracle::mfcc(tone.samples(), rate), 1e-6));
    let consts = features::cepstrum(&[0.37; 26], 13);
    check("mfcc constant bands", consts[1..].iter().all(|c| c.abs() < 1e-9));

    let a440 = features::chromagram(&sine(&[(440.0, 0.5)], rate, 1.0)).unwrap();
    check("chroma 440", a440[0] >= 0.99);
    let a880 = features::chromagram(&sine(&[(880.0, 0.5)], rate, 1.0)).unwrap();
    let argmax = |c: &[f64; 12]| (0..12).max_by(|&i, &j| c[i].total_cmp(&c[j])).unwrap();
    check("chroma octave", argmax(&a880) == argmax(&a440));
    let ac = features::chromagram(&sine(&[(440.0, 0.3), (261.63, 0.3)], rate, 1.0)).unwrap();
    check("chroma A+C", near(ac[0], 0.5, 0.05) && near(ac[3], 0.5, 0.05));

    let tc = features::tonal_centroid_of(&[1.0 / 12.0; 12]);
    check("tonal uniform", tc.iter().all(|v| v.abs() < 1e-9));
    let mut delta = [0.0; 12];
    delta[0] = 1.0;
    let td = features::tonal_centroid_of(&delta);
    check("tonal delta", oracle::close(&td, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.5], 1e-12));
    let c: [f64; 12] = std::array::from_fn(|i| (i as f64 * 1.7).sin().abs() + 0.1);
    let shifted: [f64; 12] = std::array::from_fn(|i| c[(i + 11) % 12]);
    let (t0, t1) = (features::tonal_centroid_of(&c), features::tonal_centroid_of(&shifted));
    let rotated = [7.0 * PI / 6.0, 3.0 * PI / 2.0, 2.0 * PI / 3.0].iter().enumerate().all(|(j, th)| {
        let (s, co) = (t0[2 * j], t0[2 * j + 1]);
        let (rs, rc) = (s * th.cos() + co * th.sin(), co * th.cos() - s * th.sin());
        near(rs, t1[2 * j], 1e-9) && near(rc, t1[2 * j + 1], 1e-9)
    });
    check("tonal shift rotates", rotated);

    check("all dims 43", features::total_dimension(&FeatureId::ALL) == 43);
    check("[1,5] dims 2", features::total_dimension(&[FeatureId::Rms, FeatureId::SpectralEntropy]) == 2);
    check("empty selection", features::extract(&tone, &[]) == Err(Error::EmptySelection));
    checks
}

fn random_clip(rng: &mut impl Rng, rate: u32) -> AudioClip {
    let n = rate as usize;
    let tones: Vec<(f64, f64, f64)> = (0..rng.random_range(1..6))
        .map(|_| (rng.random_range(60.0..rate as f64 * 0.45), rng.random_range(0.02..0.2), rng.random_range(0.0..6.3)))
        .collect();
    let noise = rng.random_range(0.0..0.05);
    AudioClip::new(
        (0..n)
            .map(|i| {
                let t = i as f64 / rate as f64;
                let s: f64 = tones.iter().map(|(f, a, p)| a * (2.0 * PI * f * t + p).sin()).sum();
                (s + noise * rng.random_range(-1.0..1.0)).clamp(-1.0, 1.0)
            })
            .collect(),
        rate,
    )
    .unwrap()
}

fn feature_oracles() -> Outcome {
    let examples = feature_examples();
    let failed: Vec<&str> = examples.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let mut rng = seed::rng(77);
    let mut worst: f64 = 0.0;
    let mut mismatches = 0;
    for i in 0..10 {
        let rate = [8000, 16000, 22050][i % 3];
        let clip = random_clip(&mut rng, rate);
        let fv = features::extract(&clip, &[FeatureId::Mfcc, FeatureId::Chromagram, FeatureId::TonalCentroid]).unwrap();
        let ref_chroma = oracle::chroma(clip.samples(), rate);
        let pairs = [
            (fv.get(FeatureId::Mfcc).unwrap().to_vec(), oracle::mfcc(clip.samples(), rate)),
            (fv.get(FeatureId::Chromagram).unwrap().to_vec(), ref_chroma.to_vec()),
            (fv.get(FeatureId::TonalCentroid).unwrap().to_vec(), oracle::tonal_centroid(&ref_chroma).to_vec()),
        ];
        for (got, want) in &pairs {
            if !oracle::close(got, want, 1e-6) {
                mismatches += 1;
            }
            for (g, w) in got.iter().zip(want) {
                if w.abs() > 1e-9 {
                    worst = worst.max((g - w).abs() / w.abs());
                }
            }
        }
    }
    outcome(
        failed.is_empty() && mismatches == 0,
        format!(
            "{}/{} examples pass{}; oracle mismatches {mismatches}/30, worst relative error {worst:.1e}",
            examples.len() - failed.len(),
            examples.len(),
            if failed.is_empty() { String::new() } else { format!(" (failed: {})", failed.join(", ")) }
        ),
    )
}

// 3 ------------------------------------------------------------------------

fn em_correctness() -> Outcome {
    let mut rng = seed::rng(5);
    let mut worst_drop: f64 = 0.0;
    let mut worst_closed: f64 = 0.0;
    for d in 0..50 {
        let dim = rng.random_range(1..5);
        let n = rng.random_range(10..80);
        let centres: Vec<Vec<f64>> = (0..3).map(|_| (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect()).collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let c = &centres[rng.random_range(0..3)];
                c.iter().map(|m| m + rng.random_range(-2.0..2.0)).collect()
            })
            .collect();
        let fit = gmm_fit(&rows, rng.random_range(1..5), d).unwrap();
        for w in fit.log_likelihood.windows(2) {
            worst_drop = worst_drop.max(w[0] - w[1]);
        }
        let one = gmm_fit(&rows, 1, d).unwrap().mixture;
        for j in 0..dim {
            let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n as f64;
            let var = (rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n as f64).max(1e-6);
            worst_closed = worst_closed.max((one.means[0][j] - mean).abs()).max((one.variances[0][j] - var).abs());
        }
    }
    outcome(
        worst_drop <= 1e-9 && worst_closed <= 1e-9,
        format!("largest log-likelihood drop {worst_drop:.1e}, 1-component deviation {worst_closed:.1e} over 50 datasets"),
    )
}

// 4-8 ----------------------------------------------------------------------

fn spec(features: &[FeatureId], classifier: ClassifierSpec, train: usize) -> ExperimentSpec {
    ExperimentSpec {
        features: features.to_vec(),
        classifier,
        train_per_class: train,
        seed: 7,
    }
}

const SAME_MODEL_FEATURES: [FeatureId; 2] = [FeatureId::Mfcc, FeatureId::Chromagram];

fn f1(vectors: &[FeatureVector], classifier: ClassifierSpec, features: &[FeatureId], train: usize) -> f64 {
    evaluate_vectors(vectors, &spec(features, classifier, train)).unwrap().avg_f1
}

fn vendor_proxy() -> Outcome {
    let cfg = ExperimentConfig {
        devices: 5,
        scale: "vendor".into(),
        ..ExperimentConfig::default()
    };
    let corpus = simulate(&cfg).unwrap();
    let ids = [FeatureId::Rms, FeatureId::SpectralEntropy];
    let v = extract_all(&corpus.clips(), &ids).unwrap();
    let score = f1(&v, ClassifierSpec::knn(), &ids, 5);
    outcome(score >= 0.95, format!("{} clips, AvgF1 {score:.3} (need >= 0.95)", v.len()))
}

fn same_model_clips() -> Vec<AudioClip> {
    simulate(&ExperimentConfig::default()).unwrap().clips()
}

fn same_model_proxy(v: &[FeatureVector]) -> Outcome {
    let score = f1(v, ClassifierSpec::gmm(), &SAME_MODEL_FEATURES, 5);
    outcome(score >= 0.90, format!("{} clips, AvgF1 {score:.3} (need >= 0.90)", v.len()))
}

fn training_size(v: &[FeatureVector]) -> Outcome {
    let s: Vec<f64> = [1, 3, 5].iter().map(|&t| f1(v, ClassifierSpec::gmm(), &SAME_MODEL_FEATURES, t)).collect();
    let ok = s[0] <= s[1] && s[1] <= s[2] && s[2] - s[0] >= 0.15;
    outcome(ok, format!("AvgF1 train=1 {:.3}, train=3 {:.3}, train=5 {:.3}; gap {:.3} (need >= 0.15)", s[0], s[1], s[2], s[2] - s[0]))
}

fn sampling_rate(clips: &[AudioClip], full: f64) -> Outcome {
    let low = resample_all(clips, 8000).unwrap();
    let v = extract_all(&low, &SAME_MODEL_FEATURES).unwrap();
    let at8 = f1(&v, ClassifierSpec::gmm(), &SAME_MODEL_FEATURES, 5);
    outcome(at8 <= full + 0.02, format!("AvgF1 8 kHz {at8:.3} vs 44.1 kHz {full:.3}"))
}

fn noise_robustness() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let noise = dir.path().join("ambience.wav");
    write_wav(&sources::ambience(44100, 3.0, 31), &noise).unwrap();
    let scores: Vec<f64> = [20.0, 10.0, 0.0]
        .iter()
        .map(|&snr| {
            let cfg = ExperimentConfig {
                noise: Some(noise.display().to_string()),
                snr_db: snr,
                ..ExperimentConfig::default()
            };
            let v = extract_all(&simulate(&cfg).unwrap().clips(), &SAME_MODEL_FEATURES).unwrap();
            f1(&v, ClassifierSpec::gmm(), &SAME_MODEL_FEATURES, 5)
        })
        .collect();
    let ok = scores[1] >= 0.80 && scores[1] <= scores[0] + 0.02 && scores[2] <= scores[1] + 0.02;
    outcome(ok, format!("AvgF1 at 20/10/0 dB SNR: {:.3} / {:.3} / {:.3} (need >= 0.80 at 10 dB, non-increasing)", scores[0], scores[1], scores[2]))
}

// 9 ------------------------------------------------------------------------

const TOY: [FeatureId; 4] = [FeatureId::Rms, FeatureId::Zcr, FeatureId::LowEnergyRate, FeatureId::SpectralCentroid];

/// Algorithm 1 step by step, over a table indexed by subset bitmask.
fn hand_simulation(table: &[f64; 16]) -> (Vec<FeatureId>, f64, usize) {
    let mut calls = 0;
    let mut classify = |set: &[usize]| {
        calls += 1;
        table[set.iter().fold(0, |m, &i| m | (1 << i))]
    };
    let scores: Vec<f64> = (0..4).map(|i| classify(&[i])).collect();
    let mut order: Vec<usize> = (0..4).collect();
    for i in 1..4 {
        // insertion sort, descending, earlier codes first among equals
        let mut j = i;
        while j > 0 && scores[order[j]] > scores[order[j - 1]] {
            order.swap(j, j - 1);
            j -= 1;
        }
    }
    let mut max_score = 0.0;
    let mut d: Vec<usize> = Vec::new();
    for f in order {
        d.push(f);
        let temp = classify(&d);
        if temp > max_score {
            max_score = temp;
        } else {
            d.pop();
        }
    }
    (d.iter().map(|&i| TOY[i]).collect(), max_score, calls)
}

fn sfs_fidelity() -> Outcome {
    let mut rng = seed::rng(9);
    let mut tables: Vec<[f64; 16]> = vec![[0.0; 16], [0.5; 16]];
    for t in 0..500 {
        let mut table = [0.0; 16];
        for v in table.iter_mut().skip(1) {
            // coarse values so that ties are common
            *v = if t % 2 == 0 { rng.random_range(0..5) as f64 / 4.0 } else { rng.random_range(0.0..1.0) };
        }
        tables.push(table);
    }
    let mut mismatches = 0;
    for table in &tables {
        let (want, want_score, want_calls) = hand_simulation(table);
        let mut calls = 0;
        let got = sfs(&TOY, |set: &[FeatureId]| -> Result<f64, Error> {
            calls += 1;
            let mask = set.iter().fold(0, |m, f| m | (1 << (f.code() - 1)));
            Ok(table[mask])
        })
        .unwrap();
        if got.chosen != want || got.final_score != want_score || calls != 8 || want_calls != 8 {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{} tables, {mismatches} mismatches, 8 oracle calls each", tables.len()))
}

// 10 -----------------------------------------------------------------------

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        ExperimentConfig {
            devices: 6,
            source_seconds: 0.5,
            features: FeatureChoice::Codes(vec![FeatureId::Mfcc, FeatureId::Chromagram]),
            ..ExperimentConfig::default()
        },
        ExperimentConfig {
            devices: 5,
            scale: "vendor".into(),
            features: FeatureChoice::Codes(vec![FeatureId::Rms, FeatureId::SpectralEntropy]),
            classifier: ClassifierKind::Knn,
            ..ExperimentConfig::default()
        },
    ];
    let mut identical = 0;
    for (i, cfg) in configs.iter().enumerate() {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("c{i}_r{run}"));
            cmd_evaluate(&ExperimentConfig { out: out.clone(), ..cfg.clone() }).unwrap();
            bytes.push(std::fs::read(out.join("report.json")).unwrap());
        }
        identical += usize::from(bytes[0] == bytes[1]);
    }
    outcome(identical == configs.len(), format!("{identical}/{} repeated evaluations byte-identical", configs.len()))
}

fn main() {
    let secs = Duration::from_secs;
    let mut results = vec![
        criterion(1, "metric formulas", secs(1), metric_formulas),
        criterion(2, "feature oracle suite", secs(30), feature_oracles),
        criterion(3, "EM correctness", secs(30), em_correctness),
        criterion(4, "vendor-scale proxy", secs(120), vendor_proxy),
    ];

    let start = Instant::now();
    let clips = same_model_clips();
    let vectors = extract_all(&clips, &SAME_MODEL_FEATURES).unwrap();
    let shared = start.elapsed();
    let mut full = 0.0;
    results.push(criterion(5, "same-model proxy", secs(300) - shared, || {
        let o = same_model_proxy(&vectors);
        full = f1(&vectors, ClassifierSpec::gmm(), &SAME_MODEL_FEATURES, 5);
        o
    }));
    results.push(criterion(6, "training-size trend", secs(300) - shared, || training_size(&vectors)));
    results.push(criterion(7, "sampling-rate trend", secs(300), || sampling_rate(&clips, full)));
    results.push(criterion(8, "noise robustness", secs(300), noise_robustness));
    results.push(criterion(9, "SFS fidelity", secs(1), sfs_fidelity));
    results.push(criterion(10, "determinism", secs(300), determinism));

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
