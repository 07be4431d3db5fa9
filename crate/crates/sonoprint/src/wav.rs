//! 16-bit PCM WAV files, mono or stereo.

use std::fs::File;
use std::io::{self, BufReader, BufWriter};
use std::path::Path;

use sonoprint_core::audio::downmix;
use sonoprint_core::AudioClip;

const SCALE: f64 = 32768.0;

#[derive(Debug, thiserror::Error)]
pub enum WavError {
    #[error("not a RIFF/WAVE file: {0}")]
    MalformedContainer(String),
    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),
    #[error("file holds no audio frames")]
    EmptyAudio,
    #[error("sample {index} is {value}, outside [-1, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error(transparent)]
    IoFailure(#[from] io::Error),
    #[error(transparent)]
    Clip(#[from] sonoprint_core::Error),
}

fn from_hound(err: hound::Error) -> WavError {
    match err {
        hound::Error::IoError(e) => WavError::IoFailure(e),
        hound::Error::FormatError(msg) => WavError::MalformedContainer(msg.to_string()),
        hound::Error::Unsupported => WavError::UnsupportedEncoding("format not handled".into()),
        other => WavError::UnsupportedEncoding(other.to_string()),
    }
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<AudioClip, WavError> {
    let file = File::open(path.as_ref())?;
    let reader = hound::WavReader::new(BufReader::new(file)).map_err(from_hound)?;
    let spec = reader.spec();
    if spec.sample_format != hound::SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(WavError::UnsupportedEncoding(format!(
            "{}-bit {:?}, expected 16-bit PCM",
            spec.bits_per_sample, spec.sample_format
        )));
    }
    if !(1..=2).contains(&spec.channels) {
        return Err(WavError::UnsupportedEncoding(format!("{} channels", spec.channels)));
    }
    let interleaved = reader
        .into_samples::<i16>()
        .map(|s| s.map(|v| f64::from(v) / SCALE))
        .collect::<Result<Vec<_>, _>>()
        .map_err(from_hound)?;
    if interleaved.is_empty() {
        return Err(WavError::EmptyAudio);
    }
    let mono = downmix(&interleaved, usize::from(spec.channels));
    Ok(AudioClip::new(mono, spec.sample_rate)?)
}

/// Writes mono 16-bit PCM.
pub fn write_wav(clip: &AudioClip, path: impl AsRef<Path>) -> Result<(), WavError> {
    write_samples(clip.samples(), clip.sample_rate_hz(), path)
}

/// Like [`write_wav`] for raw samples, which are range-checked before the
/// file is created.
pub fn write_samples(samples: &[f64], sample_rate_hz: u32, path: impl AsRef<Path>) -> Result<(), WavError> {
    if samples.is_empty() {
        return Err(WavError::EmptyAudio);
    }
    if let Some((index, &value)) = samples.iter().enumerate().find(|(_, s)| !(s.abs() <= 1.0 + 1e-9)) {
        return Err(WavError::OutOfRange { index, value });
    }
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: sample_rate_hz,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let file = BufWriter::new(File::create(path.as_ref())?);
    let mut writer = hound::WavWriter::new(file, spec).map_err(from_hound)?;
    for &s in samples {
        let q = (s * SCALE).round().clamp(-SCALE, SCALE - 1.0) as i16;
        writer.write_sample(q).map_err(from_hound)?;
    }
    writer.finalize().map_err(from_hound)
}
