//! Two-dimensional delta-complexes: closed surfaces and disks with
//! boundary, their validation, vertex links, and the bigon surgeries used
//! by the parallel-edge constructions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cells::{Edge, EdgeId, IdAllocator, TriId, Triangle, VertexId};
use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SurfaceMode {
    Closed,
    Disk,
}

/// A 2-dimensional delta-complex with explicit vertex, edge and triangle
/// cells. Loop edges are forbidden, parallel edges are allowed. In `Closed`
/// mode every edge must lie in exactly two triangle-side slots; in `Disk`
/// mode edges in exactly one slot form the boundary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surface2 {
    mode: SurfaceMode,
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    triangles: BTreeMap<TriId, Triangle>,
}

/// A single violated invariant found by [`Surface2::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceIssue {
    MissingVertex { edge: EdgeId, vertex: VertexId },
    MissingEdge { tri: TriId, edge: EdgeId },
    SideMismatch { tri: TriId, slot: usize },
    EdgeSlotCount { edge: EdgeId, slots: usize },
    IncoherentOrientation { edge: EdgeId },
    BoundaryNotSingleCycle { component_count: usize },
    Disconnected,
    BadLink { vertex: VertexId },
    WrongEuler { got: i64, want: i64 },
    IsolatedVertex { vertex: VertexId },
}

impl std::fmt::Display for SurfaceIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceIssue::MissingVertex { edge, vertex } => {
                write!(f, "edge {edge} references missing vertex {vertex}")
            }
            SurfaceIssue::MissingEdge { tri, edge } => {
                write!(f, "triangle {tri} references missing edge {edge}")
            }
            SurfaceIssue::SideMismatch { tri, slot } => {
                write!(f, "triangle {tri} side slot {slot} does not match its corner pair")
            }
            SurfaceIssue::EdgeSlotCount { edge, slots } => {
                write!(f, "edge {edge} lies in {slots} triangle-side slots")
            }
            SurfaceIssue::IncoherentOrientation { edge } => {
                write!(f, "edge {edge} is traversed twice in the same direction")
            }
            SurfaceIssue::BoundaryNotSingleCycle { component_count } => {
                write!(f, "boundary edges form {component_count} chains instead of one cycle")
            }
            SurfaceIssue::Disconnected => write!(f, "surface is not connected"),
            SurfaceIssue::BadLink { vertex } => {
                write!(f, "link of {vertex} is not a single cycle/arc")
            }
            SurfaceIssue::WrongEuler { got, want } => {
                write!(f, "Euler characteristic is {got}, expected {want}")
            }
            SurfaceIssue::IsolatedVertex { vertex } => {
                write!(f, "vertex {vertex} lies on no edge")
            }
        }
    }
}

/// Everything [`Surface2::validate`] found, plus whether parallel edges
/// are present. An empty issue list means the surface is valid.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub issues: Vec<SurfaceIssue>,
    pub has_parallel_edges: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// A cyclic sequence of (vertex, edge) steps: step i walks from
/// `steps[i].0` along `steps[i].1` to `steps[i+1].0` (indices mod n).
/// Vertices and edge cells may repeat (links in complexes with parallel
/// edges are closed walks), but consecutive steps share exactly the
/// listed vertex and no edge is a loop.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleGraph {
    steps: Vec<(VertexId, EdgeId)>,
}

impl CycleGraph {
    pub fn new(steps: Vec<(VertexId, EdgeId)>) -> Result<Self> {
        if steps.len() < 2 {
            return Err(Error::precondition("cycle must have length >= 2"));
        }
        Ok(CycleGraph { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(VertexId, EdgeId)] {
        &self.steps
    }

    pub fn vertex(&self, i: usize) -> VertexId {
        self.steps[i % self.steps.len()].0
    }

    pub fn edge(&self, i: usize) -> EdgeId {
        self.steps[i % self.steps.len()].1
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.steps.iter().map(|s| s.0)
    }

    /// True when no vertex repeats along the cycle.
    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.vertices().collect();
        set.len() == self.steps.len()
    }

    /// Checks each step's edge joins its vertex to the next vertex.
    pub fn check_against(&self, surface: &Surface2) -> Result<()> {
        let n = self.steps.len();
        for i in 0..n {
            let (u, e) = self.steps[i];
            let w = self.steps[(i + 1) % n].0;
            let edge = surface
                .edge(e)
                .ok_or_else(|| Error::structural(format!("cycle edge {e} missing")))?;
            if !edge.has_endpoints(u, w) {
                return Err(Error::structural(format!(
                    "cycle step {i} edge {e} does not join {u} and {w}"
                )));
            }
        }
        Ok(())
    }
}

impl Surface2 {
    pub fn new(mode: SurfaceMode) -> Self {
        Surface2 {
            mode,
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            triangles: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> SurfaceMode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: SurfaceMode) {
        self.mode = mode;
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn triangle(&self, t: TriId) -> Option<&Triangle> {
        self.triangles.get(&t)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> + '_ {
        self.triangles.values()
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, edge: Edge) -> Result<()> {
        if self.edges.contains_key(&edge.id) {
            return Err(Error::precondition(format!("edge id {} already present", edge.id)));
        }
        self.edges.insert(edge.id, edge);
        Ok(())
    }

    pub fn add_triangle(&mut self, tri: Triangle) -> Result<()> {
        if self.triangles.contains_key(&tri.id) {
            return Err(Error::precondition(format!("triangle id {} already present", tri.id)));
        }
        self.triangles.insert(tri.id, tri);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Option<Edge> {
        self.edges.remove(&e)
    }

    pub fn remove_triangle(&mut self, t: TriId) -> Option<Triangle> {
        self.triangles.remove(&t)
    }

    /// An allocator primed above every id in this surface.
    pub fn allocator(&self) -> IdAllocator {
        let mut a = IdAllocator::new();
        for &v in &self.vertices {
            a.observe_vertex(v);
        }
        for &e in self.edges.keys() {
            a.observe_edge(e);
        }
        for &t in self.triangles.keys() {
            a.observe_tri(t);
        }
        a
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Map from each edge to the triangle side slots using it, with the
    /// traversal direction of each slot.
    pub fn edge_slots(&self) -> BTreeMap<EdgeId, Vec<(TriId, usize)>> {
        let mut slots: BTreeMap<EdgeId, Vec<(TriId, usize)>> = BTreeMap::new();
        for tri in self.triangles.values() {
            for (k, &e) in tri.sides.iter().enumerate() {
                slots.entry(e).or_default().push((tri.id, k));
            }
        }
        slots
    }

    /// All parallel pairs (e, e') with e < e', ordered lexicographically.
    pub fn parallel_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut by_endpoints: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        for e in self.edges.values() {
            by_endpoints.entry(e.endpoints()).or_default().push(e.id);
        }
        let mut pairs = Vec::new();
        for ids in by_endpoints.values() {
            for i in 0..ids.len() {
                for j in (i + 1)..ids.len() {
                    pairs.push((ids[i], ids[j]));
                }
            }
        }
        pairs.sort();
        pairs
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().any(|e| !seen.insert(e.endpoints()))
    }

    /// Boundary edges: those in exactly one triangle-side slot.
    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        self.edge_slots()
            .into_iter()
            .filter(|(_, s)| s.len() == 1)
            .map(|(e, _)| e)
            .collect()
    }

    /// Checks every invariant of the mode and reports each violation.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();

        for e in self.edges.values() {
            let (u, v) = e.endpoints();
            for w in [u, v] {
                if !self.vertices.contains(&w) {
                    issues.push(SurfaceIssue::MissingVertex { edge: e.id, vertex: w });
                }
            }
        }

        let mut refs_ok = true;
        for tri in self.triangles.values() {
            for k in 0..3 {
                match self.edges.get(&tri.sides[k]) {
                    None => {
                        issues.push(SurfaceIssue::MissingEdge { tri: tri.id, edge: tri.sides[k] });
                        refs_ok = false;
                    }
                    Some(e) => {
                        let (a, b) = tri.side_traversal(k);
                        if !e.has_endpoints(a, b) {
                            issues.push(SurfaceIssue::SideMismatch { tri: tri.id, slot: k });
                            refs_ok = false;
                        }
                    }
                }
            }
        }

        let report_parallel = self.has_parallel_edges();
        if !refs_ok {
            return ValidationReport { issues, has_parallel_edges: report_parallel };
        }

        // Slot counts and orientation coherence.
        let slots = self.edge_slots();
        let mut used_edges: BTreeSet<EdgeId> = BTreeSet::new();
        let mut boundary: Vec<EdgeId> = Vec::new();
        for e in self.edges.values() {
            let s = slots.get(&e.id).map(|v| v.as_slice()).unwrap_or(&[]);
            used_edges.insert(e.id);
            let count = s.len();
            let ok = match self.mode {
                SurfaceMode::Closed => count == 2,
                SurfaceMode::Disk => count == 1 || count == 2,
            };
            if !ok {
                issues.push(SurfaceIssue::EdgeSlotCount { edge: e.id, slots: count });
                continue;
            }
            if count == 1 {
                boundary.push(e.id);
            }
            if count == 2 {
                let d0 = self.triangles[&s[0].0].side_traversal(s[0].1);
                let d1 = self.triangles[&s[1].0].side_traversal(s[1].1);
                if d0 == d1 {
                    issues.push(SurfaceIssue::IncoherentOrientation { edge: e.id });
                }
            }
        }

        for &v in &self.vertices {
            if !self.edges.values().any(|e| e.contains(v)) {
                issues.push(SurfaceIssue::IsolatedVertex { vertex: v });
            }
        }

        if !issues.is_empty() {
            return ValidationReport { issues, has_parallel_edges: report_parallel };
        }

        // Connectivity over triangles via shared edges.
        if !self.triangles.is_empty() {
            let mut seen: BTreeSet<TriId> = BTreeSet::new();
            let first = *self.triangles.keys().next().unwrap();
            let mut queue = VecDeque::from([first]);
            seen.insert(first);
            while let Some(t) = queue.pop_front() {
                for &e in &self.triangles[&t].sides {
                    for &(t2, _) in &slots[&e] {
                        if seen.insert(t2) {
                            queue.push_back(t2);
                        }
                    }
                }
            }
            if seen.len() != self.triangles.len() {
                issues.push(SurfaceIssue::Disconnected);
            }
        }

        // Boundary must chain into a single cycle (disk mode).
        if self.mode == SurfaceMode::Disk {
            match self.boundary_cycle() {
                Ok(c) => {
                    if c.len() != boundary.len() {
                        issues.push(SurfaceIssue::BoundaryNotSingleCycle { component_count: 2 });
                    }
                }
                Err(_) => {
                    issues.push(SurfaceIssue::BoundaryNotSingleCycle { component_count: 0 });
                }
            }
        }

        // Vertex links.
        let boundary_set: BTreeSet<EdgeId> = boundary.iter().copied().collect();
        for &v in &self.vertices {
            if self.link_walk(v, &slots, &boundary_set).is_err() {
                issues.push(SurfaceIssue::BadLink { vertex: v });
            }
        }

        let want = match self.mode {
            SurfaceMode::Closed => 2,
            SurfaceMode::Disk => 1,
        };
        let got = self.euler_characteristic();
        if got != want {
            issues.push(SurfaceIssue::WrongEuler { got, want });
        }

        ValidationReport { issues, has_parallel_edges: report_parallel }
    }

    /// The link of `v` as a directed cycle, ordered the way the triangles
    /// around `v` traverse their opposite sides. Requires a valid closed
    /// surface; fails when the triangles around `v` do not close into one
    /// cycle.
    pub fn vertex_link(&self, v: VertexId) -> Result<CycleGraph> {
        if !self.vertices.contains(&v) {
            return Err(Error::precondition(format!("vertex {v} not in surface")));
        }
        let slots = self.edge_slots();
        let boundary: BTreeSet<EdgeId> = slots
            .iter()
            .filter(|(_, s)| s.len() == 1)
            .map(|(&e, _)| e)
            .collect();
        let steps = self.link_walk(v, &slots, &boundary)?;
        CycleGraph::new(steps)
    }

    /// Rotational walk around `v`. In closed mode the walk must return to
    /// its start covering every triangle at `v`; errors otherwise. Arcs at
    /// disk boundary vertices are rejected here (single-cycle check only);
    /// `validate` treats arcs separately.
    fn link_walk(
        &self,
        v: VertexId,
        slots: &BTreeMap<EdgeId, Vec<(TriId, usize)>>,
        boundary: &BTreeSet<EdgeId>,
    ) -> Result<Vec<(VertexId, EdgeId)>> {
        // Triangles at v, each contributing: spoke-in, link step, spoke-out.
        struct AtV {
            spoke_in: EdgeId,
            spoke_out: EdgeId,
            from: VertexId,
            to: VertexId,
            opp: EdgeId,
        }
        let mut at_v: BTreeMap<TriId, AtV> = BTreeMap::new();
        for tri in self.triangles.values() {
            if let Some(p) = tri.corners.iter().position(|&c| c == v) {
                let k = tri.slot_opposite_corner(p);
                let (from, to) = tri.side_traversal(k);
                // spoke holding `from` and spoke holding `to`
                let mut spoke_in = None;
                let mut spoke_out = None;
                for (kk, &e) in tri.sides.iter().enumerate() {
                    if kk == k {
                        continue;
                    }
                    let (a, b) = tri.side_traversal(kk);
                    let other = if a == v { b } else { a };
                    if other == from && spoke_in.is_none() {
                        spoke_in = Some(e);
                    } else {
                        spoke_out = Some(e);
                    }
                }
                let (spoke_in, spoke_out) = match (spoke_in, spoke_out) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::structural(format!("triangle {} spokes at {v}", tri.id))),
                };
                at_v.insert(tri.id, AtV { spoke_in, spoke_out, from, to, opp: tri.sides[k] });
            }
        }
        if at_v.is_empty() {
            return Err(Error::structural(format!("no triangles at {v}")));
        }
        // Spoke -> triangles at v using it.
        let mut by_spoke: BTreeMap<EdgeId, Vec<TriId>> = BTreeMap::new();
        for (&t, a) in &at_v {
            by_spoke.entry(a.spoke_in).or_default().push(t);
            by_spoke.entry(a.spoke_out).or_default().push(t);
        }
        for (e, ts) in &by_spoke {
            let expect = if boundary.contains(e) { 1 } else { 2 };
            if ts.len() != expect {
                return Err(Error::structural(format!("spoke {e} at {v} has {} users", ts.len())));
            }
            if slots.get(e).map(|s| s.len()).unwrap_or(0) != expect {
                return Err(Error::structural(format!("spoke {e} slot count")));
            }
        }
        // Walk: start at the smallest triangle id, follow spoke_out to the
        // next triangle, which must continue from the same link vertex.
        let start = *at_v.keys().next().unwrap();
        let mut steps = Vec::with_capacity(at_v.len());
        let mut current = start;
        loop {
            let a = &at_v[&current];
            steps.push((a.from, a.opp));
            let out = a.spoke_out;
            let users = &by_spoke[&out];
            if users.len() != 2 {
                return Err(Error::structural(format!("link of {v} hits boundary spoke {out}")));
            }
            let next = if users[0] == current { users[1] } else { users[0] };
            let na = &at_v[&next];
            if na.spoke_in != out || na.from != a.to {
                return Err(Error::structural(format!("link of {v} breaks orientation at {out}")));
            }
            if next == start {
                break;
            }
            current = next;
            if steps.len() > at_v.len() {
                return Err(Error::structural(format!("link walk of {v} does not close")));
            }
        }
        if steps.len() != at_v.len() {
            return Err(Error::structural(format!("link of {v} is not a single cycle")));
        }
        Ok(steps)
    }

    /// Boundary of a disk as a directed cycle, in the direction the disk's
    /// triangles traverse their boundary sides.
    pub fn boundary_cycle(&self) -> Result<CycleGraph> {
        let slots = self.edge_slots();
        let mut steps: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
        for (e, s) in &slots {
            if s.len() == 1 {
                let (t, k) = s[0];
                let (a, b) = self.triangles[&t].side_traversal(k);
                if steps.insert(a, (b, *e)).is_some() {
                    return Err(Error::structural(format!(
                        "boundary vertex {a} has two outgoing boundary edges"
                    )));
                }
            }
        }
        if steps.is_empty() {
            return Err(Error::precondition("surface has no boundary"));
        }
        let start = *steps.keys().next().unwrap();
        let mut walk = Vec::with_capacity(steps.len());
        let mut cur = start;
        loop {
            let &(next, e) = steps
                .get(&cur)
                .ok_or_else(|| Error::structural(format!("boundary chain breaks at {cur}")))?;
            walk.push((cur, e));
            cur = next;
            if cur == start {
                break;
            }
            if walk.len() > steps.len() {
                return Err(Error::structural("boundary does not close".to_string()));
            }
        }
        if walk.len() != steps.len() {
            return Err(Error::structural("boundary is not a single cycle".to_string()));
        }
        CycleGraph::new(walk)
    }

    /// The subsurface induced by a set of triangles: those triangles plus
    /// every side and corner they reference.
    pub fn induced_subsurface(&self, tris: &BTreeSet<TriId>, mode: SurfaceMode) -> Surface2 {
        let mut out = Surface2::new(mode);
        for t in tris {
            let tri = self.triangles[t];
            out.triangles.insert(tri.id, tri);
            for &e in &tri.sides {
                let edge = self.edges[&e];
                out.edges.insert(e, edge);
                let (u, v) = edge.endpoints();
                out.vertices.insert(u);
                out.vertices.insert(v);
            }
        }
        out
    }

    /// Star and deletion of a vertex of a sphere without parallel edges:
    /// the disk of triangles at `v` and the complementary disk. Their
    /// shared boundary is the link of `v`.
    pub fn star_and_deletion(&self, v: VertexId) -> Result<(Surface2, Surface2)> {
        if self.mode != SurfaceMode::Closed {
            return Err(Error::precondition("star/deletion needs a closed surface"));
        }
        if self.has_parallel_edges() {
            return Err(Error::precondition(
                "star/deletion of a vertex is unsupported with parallel edges",
            ));
        }
        if !self.vertices.contains(&v) {
            return Err(Error::precondition(format!("vertex {v} not in surface")));
        }
        let star_tris: BTreeSet<TriId> = self
            .triangles
            .values()
            .filter(|t| t.has_corner(v))
            .map(|t| t.id)
            .collect();
        let rest: BTreeSet<TriId> = self
            .triangles
            .keys()
            .copied()
            .filter(|t| !star_tris.contains(t))
            .collect();
        if star_tris.is_empty() || rest.is_empty() {
            return Err(Error::structural(format!("deletion of {v} is empty")));
        }
        Ok((
            self.induced_subsurface(&star_tris, SurfaceMode::Disk),
            self.induced_subsurface(&rest, SurfaceMode::Disk),
        ))
    }

    /// Splits a closed surface along the bigon formed by two parallel
    /// edges into the two disks it bounds. The disk containing the
    /// smallest triangle id comes first. Both disks must contain an inner
    /// vertex; on a valid sphere this always holds.
    pub fn split_along_bigon(&self, e: EdgeId, e2: EdgeId) -> Result<(Surface2, Surface2)> {
        if e == e2 {
            return Err(Error::precondition("need two distinct edges"));
        }
        let (ea, eb) = match (self.edges.get(&e), self.edges.get(&e2)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::precondition("edge not in surface")),
        };
        if ea.endpoints() != eb.endpoints() {
            return Err(Error::precondition(format!("edges {e} and {e2} are not parallel")));
        }
        let (vi, vj) = ea.endpoints();
        let slots = self.edge_slots();
        // Flood triangles without crossing e or e2.
        let first = *self.triangles.keys().next().ok_or_else(|| {
            Error::precondition("empty surface")
        })?;
        let mut side: BTreeMap<TriId, bool> = BTreeMap::new();
        let mut queue = VecDeque::from([first]);
        side.insert(first, true);
        while let Some(t) = queue.pop_front() {
            let mark = side[&t];
            for &s in &self.triangles[&t].sides {
                if s == e || s == e2 {
                    continue;
                }
                for &(t2, _) in &slots[&s] {
                    if !side.contains_key(&t2) {
                        side.insert(t2, mark);
                        queue.push_back(t2);
                    }
                }
            }
        }
        let remaining: Vec<TriId> = self
            .triangles
            .keys()
            .copied()
            .filter(|t| !side.contains_key(t))
            .collect();
        if let Some(&seed) = remaining.first() {
            let mut queue = VecDeque::from([seed]);
            side.insert(seed, false);
            while let Some(t) = queue.pop_front() {
                for &s in &self.triangles[&t].sides {
                    if s == e || s == e2 {
                        continue;
                    }
                    for &(t2, _) in &slots[&s] {
                        if !side.contains_key(&t2) {
                            side.insert(t2, false);
                            queue.push_back(t2);
                        }
                    }
                }
            }
        }
        if side.len() != self.triangles.len() || !side.values().any(|&m| !m) {
            return Err(Error::structural("bigon does not separate into two pieces"));
        }
        let part_a: BTreeSet<TriId> = side.iter().filter(|(_, &m)| m).map(|(&t, _)| t).collect();
        let part_b: BTreeSet<TriId> =
            side.iter().filter(|(_, &m)| !m).map(|(&t, _)| t).collect();
        let d1 = self.induced_subsurface(&part_a, SurfaceMode::Disk);
        let d2 = self.induced_subsurface(&part_b, SurfaceMode::Disk);
        for d in [&d1, &d2] {
            let inner = d.vertices().filter(|&u| u != vi && u != vj).count();
            if inner == 0 {
                return Err(Error::structural("bigon disk has no inner vertex"));
            }
            let b = d.boundary_edges();
            if b.len() != 2 {
                return Err(Error::structural(format!(
                    "bigon disk has {} boundary edges",
                    b.len()
                )));
            }
        }
        Ok((d1, d2))
    }
}

/// Result of closing a bigon-bounded disk by identifying its two boundary
/// edges. `tri_at_e` / `tri_at_e2` remember which triangle carried which
/// original edge, so the glueing can be undone later.
#[derive(Clone, Debug)]
pub struct GluedBigon {
    pub surface: Surface2,
    pub estar: EdgeId,
    pub e: EdgeId,
    pub e2: EdgeId,
    pub tri_at_e: TriId,
    pub tri_at_e2: TriId,
}

/// Identifies the two boundary edges of a bigon-bounded disk into a single
/// edge `estar`, producing a closed surface on the same vertex set.
pub fn glue_bigon_shut_with(disk: &Surface2, estar: EdgeId) -> Result<GluedBigon> {
    let boundary = disk.boundary_edges();
    if boundary.len() != 2 {
        return Err(Error::precondition(format!(
            "boundary is not a bigon ({} edges)",
            boundary.len()
        )));
    }
    let (e, e2) = (boundary[0].min(boundary[1]), boundary[0].max(boundary[1]));
    let edge_e = disk.edge(e).unwrap();
    let edge_e2 = disk.edge(e2).unwrap();
    if edge_e.endpoints() != edge_e2.endpoints() {
        return Err(Error::precondition("boundary bigon edges are not parallel"));
    }
    if disk.edge(estar).is_some() {
        return Err(Error::precondition(format!("edge id {estar} already in use")));
    }
    let (vi, vj) = edge_e.endpoints();
    let slots = disk.edge_slots();
    let tri_at_e = slots[&e][0].0;
    let tri_at_e2 = slots[&e2][0].0;
    let mut out = Surface2::new(SurfaceMode::Closed);
    for v in disk.vertices() {
        out.add_vertex(v);
    }
    for edge in disk.edges() {
        if edge.id != e && edge.id != e2 {
            out.add_edge(*edge)?;
        }
    }
    out.add_edge(Edge::new(estar, vi, vj)?)?;
    for tri in disk.triangles() {
        let mut t = *tri;
        for s in t.sides.iter_mut() {
            if *s == e || *s == e2 {
                *s = estar;
            }
        }
        out.add_triangle(t)?;
    }
    Ok(GluedBigon { surface: out, estar, e, e2, tri_at_e, tri_at_e2 })
}

/// Convenience wrapper: `estar` is the next free edge id.
pub fn glue_bigon_shut(disk: &Surface2) -> Result<GluedBigon> {
    let estar = disk.allocator().fresh_edge();
    glue_bigon_shut_with(disk, estar)
}

/// Cone of a cycle: one triangle per cycle edge through a fresh apex. The
/// produced disk traverses the cycle edges in the direction of the given
/// cycle, so its induced boundary direction equals the input's. Works for
/// bigons: the cone of a 2-cycle is the two-triangle pillow cap.
pub fn cone_cycle(
    cycle: &CycleGraph,
    apex: VertexId,
    alloc: &mut IdAllocator,
) -> Result<Surface2> {
    if cycle.vertices().any(|v| v == apex) {
        return Err(Error::precondition(format!("apex {apex} lies on the cycle")));
    }
    let mut out = Surface2::new(SurfaceMode::Disk);
    out.add_vertex(apex);
    let n = cycle.len();
    let mut spokes: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    for i in 0..n {
        let u = cycle.vertex(i);
        out.add_vertex(u);
        if !spokes.contains_key(&u) {
            let s = alloc.fresh_edge();
            out.add_edge(Edge::new(s, u, apex)?)?;
            spokes.insert(u, s);
        }
    }
    for i in 0..n {
        let u = cycle.vertex(i);
        let w = cycle.vertex(i + 1);
        let x = cycle.edge(i);
        if out.edge(x).is_none() {
            out.add_edge(Edge::new(x, u, w)?)?;
        }
        let t = alloc.fresh_tri();
        out.add_triangle(Triangle::new(t, [u, w, apex], [x, spokes[&w], spokes[&u]])?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tetrahedron_boundary_is_valid_sphere() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let report = s.validate();
        assert!(report.is_valid(), "{:?}", report.issues);
        assert!(!report.has_parallel_edges);
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn tetrahedron_with_missing_triangle_is_invalid() {
        let (mut s, _) = fixtures::tetrahedron_sphere();
        let t = *s.triangles().next().map(|t| &t.id).unwrap();
        s.remove_triangle(t);
        let report = s.validate();
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, SurfaceIssue::EdgeSlotCount { slots: 1, .. })));
    }

    #[test]
    fn tetrahedron_links_are_triangles() {
        let (s, _) = fixtures::tetrahedron_sphere();
        for v in s.vertices() {
            let link = s.vertex_link(v).unwrap();
            assert_eq!(link.len(), 3);
            assert!(link.is_simple());
            assert!(!link.vertices().any(|u| u == v));
        }
    }

    #[test]
    fn bipyramid_apex_link_is_equator() {
        let (s, _) = fixtures::bipyramid();
        let link = s.vertex_link(VertexId(0)).unwrap();
        let verts: BTreeSet<_> = link.vertices().collect();
        assert_eq!(verts, BTreeSet::from([VertexId(2), VertexId(3), VertexId(4)]));
        assert_eq!(link.len(), 3);
    }

    #[test]
    fn star_and_deletion_of_octahedron() {
        let (s, _) = fixtures::octahedron();
        let v = VertexId(0);
        let (st, dl) = s.star_and_deletion(v).unwrap();
        assert_eq!(st.triangle_count(), 4);
        assert_eq!(dl.triangle_count(), 4);
        assert_eq!(st.euler_characteristic(), 1);
        assert_eq!(dl.euler_characteristic(), 1);
        assert!(st.validate().is_valid());
        assert!(dl.validate().is_valid());
        // shared boundary is the link of v
        let link = s.vertex_link(v).unwrap();
        let link_edges: BTreeSet<_> = link.steps().iter().map(|s| s.1).collect();
        let st_boundary: BTreeSet<_> = st.boundary_edges().into_iter().collect();
        assert_eq!(link_edges, st_boundary);
    }

    #[test]
    fn star_and_deletion_of_tetrahedron() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let (st, dl) = s.star_and_deletion(VertexId(0)).unwrap();
        assert_eq!(st.triangle_count(), 3);
        assert_eq!(dl.triangle_count(), 1);
    }

    #[test]
    fn cone_of_three_cycle_is_fan() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let link = s.vertex_link(VertexId(0)).unwrap();
        let mut alloc = s.allocator();
        let apex = alloc.fresh_vertex();
        let cap = cone_cycle(&link, apex, &mut alloc).unwrap();
        assert_eq!(cap.triangle_count(), 3);
        assert!(cap.validate().is_valid());
        assert_eq!(cap.euler_characteristic(), 1);
    }

    #[test]
    fn cone_of_bigon_is_pillow_cap() {
        let mut base = Surface2::new(SurfaceMode::Disk);
        for v in [0, 1] {
            base.add_vertex(VertexId(v));
        }
        base.add_edge(Edge::new(EdgeId(0), VertexId(0), VertexId(1)).unwrap()).unwrap();
        base.add_edge(Edge::new(EdgeId(1), VertexId(0), VertexId(1)).unwrap()).unwrap();
        let cycle = CycleGraph::new(vec![
            (VertexId(0), EdgeId(0)),
            (VertexId(1), EdgeId(1)),
        ])
        .unwrap();
        let mut alloc = base.allocator();
        let apex = alloc.fresh_vertex();
        let cap = cone_cycle(&cycle, apex, &mut alloc).unwrap();
        assert_eq!(cap.triangle_count(), 2);
        assert_eq!(cap.edge_count(), 4);
        assert!(cap.validate().is_valid());
    }

    #[test]
    fn cone_of_five_cycle_counts() {
        let mut s = Surface2::new(SurfaceMode::Disk);
        let mut steps = Vec::new();
        for i in 0..5u32 {
            s.add_vertex(VertexId(i));
        }
        for i in 0..5u32 {
            let e = EdgeId(i);
            s.add_edge(Edge::new(e, VertexId(i), VertexId((i + 1) % 5)).unwrap()).unwrap();
            steps.push((VertexId(i), e));
        }
        let cycle = CycleGraph::new(steps).unwrap();
        let mut alloc = s.allocator();
        let apex = alloc.fresh_vertex();
        let cap = cone_cycle(&cycle, apex, &mut alloc).unwrap();
        assert_eq!(cap.triangle_count(), 5);
        assert_eq!(cap.euler_characteristic(), 1);
        assert!(cap.validate().is_valid());
    }

    #[test]
    fn split_flipped_tetrahedron_along_its_bigon() {
        let (s, _) = fixtures::flipped_tetrahedron_sphere();
        let pairs = s.parallel_pairs();
        assert_eq!(pairs.len(), 1);
        let (e, e2) = pairs[0];
        let (d1, d2) = s.split_along_bigon(e, e2).unwrap();
        assert_eq!(d1.triangle_count(), 2);
        assert_eq!(d2.triangle_count(), 2);
        assert!(d1.validate().is_valid(), "{:?}", d1.validate().issues);
        assert!(d2.validate().is_valid());
        // each disk holds exactly one inner vertex
        let (vi, vj) = s.edge(e).unwrap().endpoints();
        for d in [&d1, &d2] {
            let inner: Vec<_> = d.vertices().filter(|&u| u != vi && u != vj).collect();
            assert_eq!(inner.len(), 1);
        }
    }

    #[test]
    fn split_without_parallel_pair_errors() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let e0 = s.edges().next().unwrap().id;
        let e1 = s.edges().nth(1).unwrap().id;
        assert!(s.split_along_bigon(e0, e1).is_err());
    }

    #[test]
    fn glue_bigon_shut_produces_smaller_sphere() {
        let (s, _) = fixtures::flipped_tetrahedron_sphere();
        let (e, e2) = s.parallel_pairs()[0];
        let (d1, _) = s.split_along_bigon(e, e2).unwrap();
        let glued = glue_bigon_shut(&d1).unwrap();
        let report = glued.surface.validate();
        assert!(report.is_valid(), "{:?}", report.issues);
        assert_eq!(glued.surface.euler_characteristic(), 2);
        assert_eq!(glued.surface.vertex_count(), 3);
        assert_eq!(glued.surface.triangle_count(), 2);
        assert_eq!(glued.surface.edge_count(), 3);
        assert!(glued.surface.vertex_count() < s.vertex_count());
    }

    #[test]
    fn glue_rejects_non_bigon_boundary() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let (_, dl) = s.star_and_deletion(VertexId(0)).unwrap();
        assert!(glue_bigon_shut(&dl).is_err());
    }

    #[test]
    fn flipped_tetrahedron_link_walks() {
        let (s, _) = fixtures::flipped_tetrahedron_sphere();
        let (e, _) = s.parallel_pairs()[0];
        let (vi, vj) = s.edge(e).unwrap().endpoints();
        // endpoints of the parallel pair see every triangle once: walk of
        // length 4 revisiting the opposite vertex
        for v in [vi, vj] {
            let link = s.vertex_link(v).unwrap();
            assert_eq!(link.len(), 4);
            assert!(!link.is_simple());
        }
        // the other two vertices have bigon links
        for v in s.vertices().filter(|&v| v != vi && v != vj) {
            let link = s.vertex_link(v).unwrap();
            assert_eq!(link.len(), 2);
        }
    }

    #[test]
    fn boundary_cycle_direction_matches_triangles() {
        let (s, _) = fixtures::tetrahedron_sphere();
        let (st, _) = s.star_and_deletion(VertexId(0)).unwrap();
        let cycle = st.boundary_cycle().unwrap();
        cycle.check_against(&st).unwrap();
        assert_eq!(cycle.len(), 3);
    }
}
