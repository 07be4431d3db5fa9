//! Virtual devices: each one imprints a gain offset, a smooth frequency
//! response deviation, a weak cubic nonlinearity and a white noise floor on
//! whatever passes through it. Rendering a set of sources through a set of
//! drawn devices yields a labeled corpus.

mod corpus;
mod noise;
mod profile;
mod response;
pub mod sources;

pub use corpus::{device_id, draw_profiles, generate_corpus, generate_corpus_in, render_entry, render_seed, Corpus, CorpusEntry, NamedSource};
pub use noise::{at_distance, mix_noise, DistanceModel, NoiseScene};
pub use profile::{apply_profile, render, ControlPoint, DeviceProfile, ProfileRanges, ProfileScale};
pub use response::ResponseCurve;
