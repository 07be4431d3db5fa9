use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sample rate {0} Hz is below the 4000 Hz minimum")]
    RateTooLow(u32),
    #[error("sample {index} has amplitude {value}, outside [-1, 1]")]
    SampleOutOfRange { index: usize, value: f64 },
    #[error("clip contains no samples")]
    EmptyAudio,
    #[error("clip has {got} samples, at least {needed} required")]
    ClipTooShort { needed: usize, got: usize },
    #[error("band [{low} Hz, {high} Hz] is empty or exceeds Nyquist")]
    BadBand { low: f64, high: f64 },
    #[error("clip is silent")]
    SilentClip,
    #[error("no features selected")]
    EmptySelection,
    #[error("unknown feature code {0}; valid codes are 1..=15")]
    UnknownFeature(u8),
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("k = {k} exceeds the {exemplars} stored exemplars")]
    KTooLarge { k: usize, exemplars: usize },
    #[error("expected a {expected}-dimensional vector, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{samples} samples cannot support {components} mixture components")]
    TooFewSamples { samples: usize, components: usize },
    #[error("feature set is empty")]
    EmptyFeatureSet,
    #[error("class {label:?} has {available} clips; more than {requested} needed")]
    InsufficientSamples {
        label: String,
        available: usize,
        requested: usize,
    },
    #[error("feature vector has no label")]
    Unlabeled,
    #[error("noise clip has zero power")]
    SilentNoise,
    #[error("at least two devices are required, got {0}")]
    TooFewDevices(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
