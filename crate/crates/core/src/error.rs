use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("half-edge `{0}` is not covered exactly once by a node slot and an arc")]
    DanglingHalfEdge(String),
    #[error("crossing `{id}` has {slots} slots, expected 4")]
    MalformedCrossing { id: String, slots: usize },
    #[error("vertex `{0}` has no slots")]
    EmptyVertex(String),
    #[error("arc `{0}` joins a half-edge to itself")]
    DegenerateArc(String),
    #[error("rotation system is not spherical (V - E + F - 1 - C = {surrogate})")]
    NonSpherical { surrogate: i64 },
    #[error("unknown crossing `{0}`")]
    UnknownCrossing(String),
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("component {component} is not Eulerian (odd vertices: {odd:?})")]
    NotEulerian { component: usize, odd: Vec<String> },
    #[error("component {0} is not connected")]
    NotConnected(usize),
    #[error("component {0} is not a closed strand")]
    NotAKnotComponent(usize),
    #[error("abstract graph is not planar")]
    NonPlanarGraph,
    #[error("linking parity between components {0} and {1} is odd")]
    OddInterCrossingParity(usize, usize),
    #[error("vertex split groups must be nonempty and cyclically contiguous")]
    NonContiguousPairing,
    #[error("path terminates at vertex `{0}` of even degree")]
    EvenTerminalVertex(String),
    #[error("path passes through vertex `{0}` of odd degree")]
    OddInteriorVertex(String),
    #[error("path is not incident: {0}")]
    PathNotIncident(String),
    #[error("crossing `{0}` lies on the same component as the gadget vertices")]
    CrossingOnSameComponent(String),
    #[error("no finger route from the base path to crossing `{0}`")]
    NoRoute(String),
    #[error("spur cannot be retracted: {0}")]
    NotRetractable(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("replay failed: {0}")]
    Replay(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// The underlying error with any line annotation removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { inner, .. } => inner.root(),
            e => e,
        }
    }

    /// Stable kebab-case name of the variant, ignoring line annotations.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::Syntax { .. } => "syntax",
            Error::AtLine { .. } => "at-line",
            Error::DuplicateId { .. } => "duplicate-id",
            Error::DanglingHalfEdge { .. } => "dangling-half-edge",
            Error::MalformedCrossing { .. } => "malformed-crossing",
            Error::EmptyVertex { .. } => "empty-vertex",
            Error::DegenerateArc { .. } => "degenerate-arc",
            Error::NonSpherical { .. } => "non-spherical",
            Error::UnknownCrossing { .. } => "unknown-crossing",
            Error::UnknownFace { .. } => "unknown-face",
            Error::UnknownVertex { .. } => "unknown-vertex",
            Error::UnknownArc { .. } => "unknown-arc",
            Error::UnknownComponent { .. } => "unknown-component",
            Error::NotEulerian { .. } => "not-eulerian",
            Error::NotConnected { .. } => "not-connected",
            Error::NotAKnotComponent { .. } => "not-a-knot-component",
            Error::NonPlanarGraph => "non-planar-graph",
            Error::OddInterCrossingParity { .. } => "odd-inter-crossing-parity",
            Error::NonContiguousPairing => "non-contiguous-pairing",
            Error::EvenTerminalVertex { .. } => "even-terminal-vertex",
            Error::OddInteriorVertex { .. } => "odd-interior-vertex",
            Error::PathNotIncident { .. } => "path-not-incident",
            Error::CrossingOnSameComponent { .. } => "crossing-on-same-component",
            Error::NoRoute { .. } => "no-route",
            Error::NotRetractable { .. } => "not-retractable",
            Error::TooLarge { .. } => "too-large",
            Error::Replay { .. } => "replay",
            Error::TheoremViolation { .. } => "theorem-violation",
            Error::Unsupported { .. } => "unsupported",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            Error::AtLine { line, .. } | Error::Syntax { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
