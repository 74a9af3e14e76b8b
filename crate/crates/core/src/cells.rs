//! Cell identifiers and the cell records of a delta-complex.
//!
//! Cells carry explicit identities for edges and triangles rather than
//! being keyed by vertex tuples: with parallel edges allowed, two distinct
//! edges may share an endpoint pair, so vertex tuples are ambiguous.

use std::fmt;

use crate::error::{Error, Result};

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", $prefix, self.0)
            }
        }
    };
}

id_type!(VertexId, "v");
id_type!(EdgeId, "e");
id_type!(TriId, "t");
id_type!(TetId, "T");

/// An edge between two distinct vertices. Endpoints are unordered and
/// stored normalized (smaller id first). Loops are forbidden; parallel
/// edges (same endpoint pair, distinct ids) are allowed.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: EdgeId,
    endpoints: (VertexId, VertexId),
}

impl Edge {
    pub fn new(id: EdgeId, u: VertexId, v: VertexId) -> Result<Self> {
        if u == v {
            return Err(Error::precondition(format!("edge {id} would be a loop at {u}")));
        }
        let endpoints = if u <= v { (u, v) } else { (v, u) };
        Ok(Edge { id, endpoints })
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        self.endpoints
    }

    pub fn has_endpoints(&self, u: VertexId, v: VertexId) -> bool {
        let p = if u <= v { (u, v) } else { (v, u) };
        self.endpoints == p
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            assert_eq!(self.endpoints.1, v, "vertex {v} not on edge {}", self.id);
            self.endpoints.0
        }
    }
}

/// A triangle with ordered corners `(v0, v1, v2)` and side cells
/// `(e01, e12, e02)`. The corner order is the orientation: the boundary is
/// traversed v0 -> v1 -> v2 -> v0, so side slot 2 holds the edge {v0,v2}
/// but is traversed v2 -> v0.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Triangle {
    pub id: TriId,
    pub corners: [VertexId; 3],
    pub sides: [EdgeId; 3],
}

impl Triangle {
    pub fn new(id: TriId, corners: [VertexId; 3], sides: [EdgeId; 3]) -> Result<Self> {
        if corners[0] == corners[1] || corners[1] == corners[2] || corners[0] == corners[2] {
            return Err(Error::precondition(format!(
                "triangle {id} has repeated corners {corners:?}"
            )));
        }
        Ok(Triangle { id, corners, sides })
    }

    /// Corner pair of side slot `k`, in traversal order.
    pub fn side_traversal(&self, k: usize) -> (VertexId, VertexId) {
        match k {
            0 => (self.corners[0], self.corners[1]),
            1 => (self.corners[1], self.corners[2]),
            2 => (self.corners[2], self.corners[0]),
            _ => panic!("side slot {k} out of range"),
        }
    }

    pub fn has_side(&self, e: EdgeId) -> bool {
        self.sides.contains(&e)
    }

    pub fn side_slot(&self, e: EdgeId) -> Option<usize> {
        self.sides.iter().position(|&s| s == e)
    }

    pub fn has_corner(&self, v: VertexId) -> bool {
        self.corners.contains(&v)
    }

    /// The corner not on side slot `k`: slot 0 omits corner 2, slot 1 omits
    /// corner 0, slot 2 omits corner 1.
    pub fn corner_opposite_slot(&self, k: usize) -> VertexId {
        self.corners[[2, 0, 1][k]]
    }

    /// The side slot opposite corner position `p`.
    pub fn slot_opposite_corner(&self, p: usize) -> usize {
        [1, 2, 0][p]
    }

    /// Same cell with reversed orientation: corners (v0, v2, v1), sides
    /// permuted to match.
    pub fn reversed(&self) -> Triangle {
        Triangle {
            id: self.id,
            corners: [self.corners[0], self.corners[2], self.corners[1]],
            sides: [self.sides[2], self.sides[1], self.sides[0]],
        }
    }
}

/// One face slot of a tetrahedron: the triangle cell glued there plus the
/// corner map sending triangle corner j to tetrahedron corner `map[j]`.
/// Face slot i omits tetrahedron corner i.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct TetFace {
    pub tri: TriId,
    pub map: [u8; 3],
}

/// A tetrahedron with ordered corners and four glued triangle faces.
/// The six tet edges are not stored; they are derived through the face
/// triangles' side cells, and validation checks that the two faces seeing
/// each tet edge agree on its identity.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Tetrahedron {
    pub id: TetId,
    pub corners: [VertexId; 4],
    pub faces: [TetFace; 4],
}

impl Tetrahedron {
    pub fn has_corner(&self, v: VertexId) -> bool {
        self.corners.contains(&v)
    }

    pub fn face_tris(&self) -> [TriId; 4] {
        [self.faces[0].tri, self.faces[1].tri, self.faces[2].tri, self.faces[3].tri]
    }

    /// Face slot whose triangle is `t`, if any.
    pub fn face_slot(&self, t: TriId) -> Option<usize> {
        self.faces.iter().position(|f| f.tri == t)
    }
}

/// Deterministic fresh-id source: identifiers are handed out sequentially
/// starting above the largest id seen, so all constructions replay
/// bit-identically.
#[derive(Clone, Debug, Default)]
pub struct IdAllocator {
    next_vertex: u32,
    next_edge: u32,
    next_tri: u32,
    next_tet: u32,
}

impl IdAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe_vertex(&mut self, v: VertexId) {
        self.next_vertex = self.next_vertex.max(v.0 + 1);
    }

    pub fn observe_edge(&mut self, e: EdgeId) {
        self.next_edge = self.next_edge.max(e.0 + 1);
    }

    pub fn observe_tri(&mut self, t: TriId) {
        self.next_tri = self.next_tri.max(t.0 + 1);
    }

    pub fn observe_tet(&mut self, t: TetId) {
        self.next_tet = self.next_tet.max(t.0 + 1);
    }

    pub fn fresh_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        id
    }

    pub fn fresh_edge(&mut self) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        id
    }

    pub fn fresh_tri(&mut self) -> TriId {
        let id = TriId(self.next_tri);
        self.next_tri += 1;
        id
    }

    pub fn fresh_tet(&mut self) -> TetId {
        let id = TetId(self.next_tet);
        self.next_tet += 1;
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_rejects_loop() {
        assert!(Edge::new(EdgeId(0), VertexId(3), VertexId(3)).is_err());
    }

    #[test]
    fn edge_normalizes_endpoints() {
        let e = Edge::new(EdgeId(0), VertexId(5), VertexId(2)).unwrap();
        assert_eq!(e.endpoints(), (VertexId(2), VertexId(5)));
        assert!(e.has_endpoints(VertexId(5), VertexId(2)));
        assert_eq!(e.other(VertexId(2)), VertexId(5));
    }

    #[test]
    fn triangle_side_traversal_directions() {
        let t = Triangle::new(
            TriId(0),
            [VertexId(0), VertexId(1), VertexId(2)],
            [EdgeId(0), EdgeId(1), EdgeId(2)],
        )
        .unwrap();
        assert_eq!(t.side_traversal(0), (VertexId(0), VertexId(1)));
        assert_eq!(t.side_traversal(1), (VertexId(1), VertexId(2)));
        // slot 2 stores {v0,v2} but is walked v2 -> v0
        assert_eq!(t.side_traversal(2), (VertexId(2), VertexId(0)));
        assert_eq!(t.corner_opposite_slot(1), VertexId(0));
        assert_eq!(t.slot_opposite_corner(0), 1);
    }

    #[test]
    fn reversed_triangle_swaps_traversals() {
        let t = Triangle::new(
            TriId(0),
            [VertexId(0), VertexId(1), VertexId(2)],
            [EdgeId(10), EdgeId(11), EdgeId(12)],
        )
        .unwrap();
        let r = t.reversed();
        assert_eq!(r.corners, [VertexId(0), VertexId(2), VertexId(1)]);
        assert_eq!(r.sides, [EdgeId(12), EdgeId(11), EdgeId(10)]);
        // the edge {v0,v1} is still on a slot and now runs v1 -> v0
        assert_eq!(r.side_traversal(2), (VertexId(1), VertexId(0)));
    }

    #[test]
    fn allocator_is_sequential() {
        let mut a = IdAllocator::new();
        a.observe_vertex(VertexId(7));
        assert_eq!(a.fresh_vertex(), VertexId(8));
        assert_eq!(a.fresh_vertex(), VertexId(9));
        assert_eq!(a.fresh_edge(), EdgeId(0));
    }
}
