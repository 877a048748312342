use thiserror::Error;

pub type Result<T> = std::result::Result<T, ReachError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReachError {
    #[error("TooFewVertices: a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("DuplicateVertex: vertex {0} repeats a neighbour")]
    DuplicateVertex(usize),
    #[error("CollinearVertices: vertices around index {0} are collinear")]
    CollinearVertices(usize),
    #[error("NotConvex: vertices are not in strictly convex counterclockwise order (at index {0})")]
    NotConvex(usize),
    #[error("CoordinateOutOfRange: coordinates must be finite with magnitude at most 1e6")]
    CoordinateOutOfRange,
    #[error("InvalidDirection: heading must be a finite unit vector")]
    InvalidDirection,
    #[error("InvalidTolerance: tolerances must be strictly positive")]
    InvalidTolerance,
    #[error("StartOutsidePolygon: the start configuration is not inside the polygon")]
    StartOutsidePolygon,
    #[error("TargetOutsidePolygon: the query point is not inside the polygon")]
    TargetOutsidePolygon,
    #[error("VertexStart: boundary configurations may not start on a polygon vertex")]
    VertexStart,
    #[error("NotOnBoundary: the configuration is not tangent to the polygon boundary")]
    NotOnBoundary,
    #[error("CoincidentCircles: the two circles coincide")]
    CoincidentCircles,
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(&'static str),
    #[error("DegenerateInput: {0}")]
    DegenerateInput(&'static str),
    #[error("NoWitnessFound: the point is classified reachable but no witness path validated")]
    NoWitnessFound,
}
