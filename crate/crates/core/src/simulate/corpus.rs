use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{mix_noise, render, DeviceProfile, NoiseScene, ProfileRanges};
use crate::{seed, AudioClip, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSource {
    pub name: String,
    pub clip: AudioClip,
}

impl NamedSource {
    pub fn new(name: impl Into<String>, clip: AudioClip) -> Self {
        Self { name: name.into(), clip }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub device_id: String,
    pub source: String,
    pub rep: usize,
    /// Noise seed this rendering used.
    pub seed: u64,
    /// Labeled with `device_id`.
    pub clip: AudioClip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub profiles: Vec<DeviceProfile>,
    /// Device-major, then source, then repetition.
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn clips(&self) -> Vec<AudioClip> {
        self.entries.iter().map(|e| e.clip.clone()).collect()
    }
}

pub fn device_id(index: usize) -> String {
    format!("dev{:02}", index + 1)
}

/// `n_devices` profiles; device `i` draws from sub-seed `derive(master, [1, i])`.
pub fn draw_profiles(n_devices: usize, ranges: &ProfileRanges, master_seed: u64) -> Result<Vec<DeviceProfile>> {
    if n_devices < 2 {
        return Err(Error::TooFewDevices(n_devices));
    }
    Ok((0..n_devices)
        .map(|i| ranges.draw(device_id(i), seed::derive(master_seed, &[1, i as u64])))
        .collect())
}

/// Noise seed for one (device, source, repetition) rendering.
pub fn render_seed(master_seed: u64, device: usize, source: usize, rep: usize) -> u64 {
    seed::derive(master_seed, &[2, device as u64, source as u64, rep as u64])
}

/// Renders every source `repetitions` times through each of `n_devices`
/// freshly drawn devices. Repetitions differ only in their noise draw.
pub fn generate_corpus(
    sources: &[NamedSource],
    n_devices: usize,
    repetitions: usize,
    ranges: &ProfileRanges,
    master_seed: u64,
) -> Result<Corpus> {
    generate_corpus_in(sources, n_devices, repetitions, ranges, master_seed, None)
}

/// Like [`generate_corpus`], but with room noise playing during each
/// recording. The noise is mixed into the source before the device, so the
/// device colors it too. Every rendering starts reading the noise at an
/// offset taken from its render seed.
pub fn generate_corpus_in(
    sources: &[NamedSource],
    n_devices: usize,
    repetitions: usize,
    ranges: &ProfileRanges,
    master_seed: u64,
    room: Option<&NoiseScene>,
) -> Result<Corpus> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("at least one source clip required"));
    }
    if repetitions == 0 {
        return Err(Error::InvalidParameter("at least one repetition required"));
    }
    let profiles = draw_profiles(n_devices, ranges, master_seed)?;
    let mut entries = Vec::with_capacity(n_devices * sources.len() * repetitions);
    for (d, profile) in profiles.iter().enumerate() {
        for (s, source) in sources.iter().enumerate() {
            for rep in 0..repetitions {
                entries.push(render_entry(master_seed, (d, profile), (s, source), rep, room)?);
            }
        }
    }
    Ok(Corpus { profiles, entries })
}

/// One recording of the corpus: source `s` through device `d`, take `rep`.
/// Renderings are independent, so callers may produce them in any order.
pub fn render_entry(
    master_seed: u64,
    (d, profile): (usize, &DeviceProfile),
    (s, source): (usize, &NamedSource),
    rep: usize,
    room: Option<&NoiseScene>,
) -> Result<CorpusEntry> {
    let seed = render_seed(master_seed, d, s, rep);
    let heard = match room {
        Some(scene) => {
            let offset = scene.offset + (seed % scene.noise.len().max(1) as u64) as usize;
            mix_noise(&source.clip, &NoiseScene { offset, ..scene.clone() })?
        }
        None => source.clip.clone(),
    };
    Ok(CorpusEntry {
        device_id: profile.device_id.clone(),
        source: source.name.clone(),
        rep,
        seed,
        clip: render(&heard, profile, seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::{sources, ProfileScale};

    #[test]
    fn counts_and_determinism() {
        let src = [NamedSource::new("tone", sources::instrumental(8000, 0.3, 1))];
        let ranges = ProfileScale::Vendor.ranges();
        let a = generate_corpus(&src, 5, 10, &ranges, 42).unwrap();
        assert_eq!(a.entries.len(), 50);
        assert_eq!(a, generate_corpus(&src, 5, 10, &ranges, 42).unwrap());
        assert_eq!(a.entries[0].clip.source_label.as_deref(), Some("dev01"));
        assert_eq!(generate_corpus(&src, 1, 10, &ranges, 42), Err(Error::TooFewDevices(1)));
    }
}
