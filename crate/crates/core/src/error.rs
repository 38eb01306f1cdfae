use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonFinite: coordinate is NaN or infinite")]
    NonFinite,
    #[error("DegenerateTriangle: vertices are collinear")]
    DegenerateTriangle,
    #[error("UnboundedRegion: half-planes do not bound a finite region")]
    UnboundedRegion,
    #[error("DuplicateSites: sites {0} and {1} coincide")]
    DuplicateSites(usize, usize),
    #[error("AllCollinear: all sites lie on one line")]
    AllCollinear,
    #[error("TooFewSites: need at least 3 sites, got {0}")]
    TooFewSites(usize),
    #[error("CenterOutsideTriangle: center must lie in the open interior")]
    CenterOutsideTriangle,
    #[error("ProjectionOffEdge: perpendicular foot from the center leaves edge {0}")]
    ProjectionOffEdge(usize),
    #[error("InvalidScheme: {0}")]
    InvalidScheme(String),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("OutsideTriangle: point is not in the closed triangle")]
    OutsideTriangle,
    #[error("EmptyX: no X points")]
    EmptyX,
    #[error("TooFewVertices: need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("InstanceTooLarge: {0}")]
    InstanceTooLarge(String),
    #[error("InvalidParam: {0}")]
    InvalidParam(String),
    #[error("OutOfSupport: {0}")]
    OutOfSupport(String),
    #[error("DegenerateSample: {0}")]
    DegenerateSample(String),
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
