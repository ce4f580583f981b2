//! Binary `.tgrf` graph files, little-endian throughout:
//!
//! ```text
//! 0..4    magic "TGRF"
//! 4..6    version (u16) = 1
//! 6..10   map width (u32)
//! 10..14  map height (u32)
//! 14..18  node count n (u32)
//! then    n x (x: u32, y: u32)
//! then    per node: degree d (u32), d ascending neighbor indices (u32)
//! ```
//!
//! Edge lengths are recomputed from coordinates on load.

use thiserror::Error;

use super::TangentGraph;
use crate::grid::GridCoord;

pub const MAGIC: &[u8; 4] = b"TGRF";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("byte offset {offset}: {kind}")]
pub struct GraphFormatError {
    pub offset: usize,
    pub kind: GraphFormatErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphFormatErrorKind {
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported version {0}")]
    UnsupportedVersion(u16),
    #[error("truncated payload")]
    Truncated,
    #[error("zero map dimension")]
    ZeroDimension,
    #[error("node ({0},{1}) outside the map")]
    NodeOutOfBounds(u32, u32),
    #[error("nodes not in row-major order")]
    NodeOrder,
    #[error("neighbor index {index} >= node count {count}")]
    NeighborOutOfRange { index: u32, count: u32 },
    #[error("adjacency list not strictly ascending")]
    UnsortedAdjacency,
    #[error("self loop on node {0}")]
    SelfLoop(u32),
    #[error("edge {0} -> {1} has no reverse entry")]
    Asymmetric(u32, u32),
    #[error("{0} trailing bytes")]
    TrailingBytes(usize),
}

pub fn serialize_graph(graph: &TangentGraph) -> Vec<u8> {
    let n = graph.node_count();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * n + 4 * (n + 2 * graph.edge_count()));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&graph.width().to_le_bytes());
    out.extend_from_slice(&graph.height().to_le_bytes());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for g in graph.nodes() {
        out.extend_from_slice(&(g.x as u32).to_le_bytes());
        out.extend_from_slice(&(g.y as u32).to_le_bytes());
    }
    for i in 0..n as u32 {
        let list = graph.neighbors(i);
        out.extend_from_slice(&(list.len() as u32).to_le_bytes());
        for &j in list {
            out.extend_from_slice(&j.to_le_bytes());
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8], GraphFormatError> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or(GraphFormatError {
                offset: self.pos,
                kind: GraphFormatErrorKind::Truncated,
            })?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16, GraphFormatError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, GraphFormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn fail<T>(&self, offset: usize, kind: GraphFormatErrorKind) -> Result<T, GraphFormatError> {
        Err(GraphFormatError { offset, kind })
    }
}

/// Parses and validates a `.tgrf` file. The map dimensions are carried on
/// the returned graph.
pub fn deserialize_graph(bytes: &[u8]) -> Result<TangentGraph, GraphFormatError> {
    use GraphFormatErrorKind as K;
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4).map_err(|e| GraphFormatError {
        kind: K::BadMagic,
        ..e
    })? != MAGIC
    {
        return r.fail(0, K::BadMagic);
    }
    let version = r.u16()?;
    if version != VERSION {
        return r.fail(4, K::UnsupportedVersion(version));
    }
    let width = r.u32()?;
    let height = r.u32()?;
    if width == 0 || height == 0 {
        return r.fail(6, K::ZeroDimension);
    }
    let n = r.u32()?;

    // Bound the allocation by what the payload can actually hold.
    let max_nodes = (bytes.len().saturating_sub(HEADER_LEN)) / 12;
    if n as usize > max_nodes {
        return r.fail(HEADER_LEN + 8 * max_nodes, K::Truncated);
    }
    let mut nodes = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let at = r.pos;
        let (x, y) = (r.u32()?, r.u32()?);
        if x >= width || y >= height {
            return r.fail(at, K::NodeOutOfBounds(x, y));
        }
        let g = GridCoord::new(x as i32, y as i32);
        if nodes
            .last()
            .is_some_and(|p: &GridCoord| p.row_major() >= g.row_major())
        {
            return r.fail(at, K::NodeOrder);
        }
        nodes.push(g);
    }

    let mut adjacency = Vec::with_capacity(n as usize);
    let mut offsets = Vec::with_capacity(n as usize);
    for i in 0..n {
        let degree = r.u32()?;
        if degree as usize > (bytes.len() - r.pos) / 4 {
            return r.fail(r.pos + (bytes.len() - r.pos) / 4 * 4, K::Truncated);
        }
        offsets.push(r.pos);
        let mut list: Vec<u32> = Vec::with_capacity(degree as usize);
        for _ in 0..degree {
            let at = r.pos;
            let j = r.u32()?;
            if j >= n {
                return r.fail(at, K::NeighborOutOfRange { index: j, count: n });
            }
            if j == i {
                return r.fail(at, K::SelfLoop(i));
            }
            if list.last().is_some_and(|&p| p >= j) {
                return r.fail(at, K::UnsortedAdjacency);
            }
            list.push(j);
        }
        adjacency.push(list);
    }
    if r.pos != bytes.len() {
        return r.fail(r.pos, K::TrailingBytes(bytes.len() - r.pos));
    }
    for (i, list) in adjacency.iter().enumerate() {
        for (k, &j) in list.iter().enumerate() {
            if adjacency[j as usize].binary_search(&(i as u32)).is_err() {
                return r.fail(offsets[i] + 4 * k, K::Asymmetric(i as u32, j));
            }
        }
    }
    Ok(TangentGraph {
        width,
        height,
        nodes,
        adjacency,
    })
}
