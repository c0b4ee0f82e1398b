use alloc::string::String;

use crate::color::Color;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid color token {0:?}")]
    InvalidColor(String),
    #[error("duplicate color {0}")]
    DuplicateColor(Color),
    #[error("color {0} is not in the declared color set")]
    UnknownColor(Color),

    #[error("vertex id {0} declared twice")]
    DuplicateVertex(u32),
    #[error("edge refers to undeclared vertex {0}")]
    UnknownVertex(u32),
    #[error("vertex {vertex} has no slot {slot}")]
    InvalidSlot { vertex: u32, slot: u8 },
    #[error("slot {vertex}.{slot} appears in more than one edge")]
    SlotReused { vertex: u32, slot: u8 },
    #[error("slot {vertex}.{slot} is not attached to any edge")]
    DanglingSlot { vertex: u32, slot: u8 },
    #[error("edge joins slot {vertex}.{slot} to itself")]
    SelfPairedSlot { vertex: u32, slot: u8 },
    #[error("diagram has no vertices")]
    EmptyDiagram,
    #[error("diagram is not connected")]
    Disconnected,

    #[error("series are over different color sets")]
    ColorSetMismatch,
    #[error("series is not primitive (a term is not a single connected diagram)")]
    NotPrimitive,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series constant term is not 1")]
    ConstantTermNotOne,

    #[error("struts appear in both arguments of a pairing")]
    StrutsOnBothSides,
    #[error("right argument contains a same-color strut")]
    SameColorStrutOnRight,
    #[error("argument must be strutless")]
    StrutsPresent,
    #[error("gluing closed a strut into a vertex-free circle")]
    CircleComponent,

    #[error("matrix is not square with the declared dimension")]
    DimensionMismatch,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("{q} and {p} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("independent computation routes disagree")]
    RouteMismatch,
}
