//! Explicit low-palette edge colorings of complete graphs and 3-uniform
//! hypergraphs, built by lifting a 4-coordinate pair coloring through the
//! stepping-up map, together with a generic (p,q) verification engine and
//! an exact brute-force oracle for tiny instances.
//!
//! A (p,q)-coloring of the complete k-graph gives every p-vertex subset at
//! least q distinct colors among its internal edges. The `sigma` module
//! builds such a coloring of K_n on weight-t bit vectors; `chi` lifts it to
//! triples of {0,1}^n; `verify` machine-checks the (p,q) property and the
//! structural facts the lifted coloring relies on; `exact` computes true
//! minima by canonical backtracking at very small n.

pub mod chi;
pub mod combinat;
pub mod dump;
pub mod exact;
pub mod sample;
pub mod sigma;
pub mod verify;

/// Errors shared across the crate. Variants map onto the CLI exit-code
/// contract: `Io` exits 3, `MalformedDump` and the parameter/capacity
/// family exit 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("binomial overflow: C({m}, {t}) exceeds the supported range")]
    Overflow { m: u64, t: u64 },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("order violation: {0}")]
    Order(String),
    #[error("degenerate edge: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed dump: {0}")]
    MalformedDump(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
