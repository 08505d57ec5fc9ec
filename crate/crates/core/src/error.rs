use thiserror::Error;

/// Pipeline stage an error originated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Estimation,
    DesignPoints,
    Bootstrap,
    Calibration,
    Pointwise,
    Simulation,
    Ingestion,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Estimation => "estimation",
            Stage::DesignPoints => "design-points",
            Stage::Bootstrap => "bootstrap",
            Stage::Calibration => "calibration",
            Stage::Pointwise => "pointwise",
            Stage::Simulation => "simulation",
            Stage::Ingestion => "ingestion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("groups are not comparable: {0}")]
    NotComparable(String),

    #[error("design points lack spread: {0}")]
    InsufficientSpread(String),

    #[error("degenerate bootstrap cloud: {0}")]
    DegenerateCloud(String),

    #[error("bootstrap resampling exhausted: {0}")]
    ResampleExhausted(String),

    #[error("too many failed replications: {0}")]
    ExcessiveFailures(String),

    #[error("ingestion failed: {0}")]
    Ingestion(String),

    #[error("{stage} stage: {source}")]
    AtStage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the failing stage, unless one is already attached.
    pub fn at(self, stage: Stage) -> Error {
        match self {
            Error::AtStage { .. } => self,
            other => Error::AtStage {
                stage,
                source: Box::new(other),
            },
        }
    }

    /// The innermost error, with any stage annotation stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStage { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::AtStage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// True for errors that stem from numerics rather than input data.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::DegenerateCloud(_) | Error::ResampleExhausted(_) | Error::ExcessiveFailures(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) trait ResultExt<T> {
    fn at(self, stage: Stage) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn at(self, stage: Stage) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}
