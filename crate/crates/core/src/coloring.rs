//! Vertex colors over the additive group of F4, the induced edge
//! 3-coloring, and triangle signs.
//!
//! Colors are the elements {0,1,2,3} with addition realized as XOR. A
//! proper vertex coloring induces nonzero edge colors (the XOR of the two
//! endpoint colors), and every properly colored triangle carries the three
//! nonzero colors on its sides. With the color order fixed to (1,2,3), a
//! triangle is signed Plus when its side colors read along the oriented
//! boundary form a cyclic rotation of (1,2,3), Minus when of (3,2,1).

use std::collections::{BTreeMap, BTreeSet};

use crate::cells::{EdgeId, TriId, VertexId};
use crate::complex3::Complex3;
use crate::error::{Error, Result};
use crate::surface::Surface2;

/// An element of F4, using only its additive (XOR) structure.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Color(u8);

impl Color {
    pub fn new(value: u8) -> Result<Self> {
        if value > 3 {
            return Err(Error::precondition(format!("color {value} outside 0..=3")));
        }
        Ok(Color(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn xor(self, other: Color) -> Color {
        Color(self.0 ^ other.0)
    }

    pub const ZERO: Color = Color(0);

    pub fn all() -> [Color; 4] {
        [Color(0), Color(1), Color(2), Color(3)]
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Total map from vertices to colors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coloring {
    map: BTreeMap<VertexId, Color>,
}

impl Coloring {
    pub fn new() -> Self {
        Coloring::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, Color)>) -> Self {
        Coloring { map: pairs.into_iter().collect() }
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        self.map.insert(v, c);
    }

    pub fn remove(&mut self, v: VertexId) {
        self.map.remove(&v);
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.map.get(&v).copied()
    }

    /// Color of `v`; panics when `v` is unmapped. Use after totality has
    /// been checked.
    pub fn color(&self, v: VertexId) -> Color {
        self.map[&v]
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.map.iter().map(|(&v, &c)| (v, c))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Restriction to the given vertex set.
    pub fn restricted_to(&self, vs: impl IntoIterator<Item = VertexId>) -> Coloring {
        Coloring {
            map: vs
                .into_iter()
                .filter_map(|v| self.map.get(&v).map(|&c| (v, c)))
                .collect(),
        }
    }

    pub fn colors_used(&self, vs: impl IntoIterator<Item = VertexId>) -> BTreeSet<Color> {
        vs.into_iter().filter_map(|v| self.get(v)).collect()
    }
}

/// Findings of a properness/strictness check.
#[derive(Clone, Debug)]
pub struct ColoringReport {
    /// Vertices of the complex with no assigned color.
    pub unmapped: Vec<VertexId>,
    /// Edges whose endpoints share a color.
    pub improper_edges: Vec<EdgeId>,
    /// Distinct colors appearing on the complex's vertices.
    pub colors_used: BTreeSet<Color>,
    /// Number of colors required for strictness, when requested.
    pub strict_k: Option<u8>,
    /// For 3-complexes: whether every tetrahedron has four distinct corner
    /// colors. Follows from properness and is checked explicitly.
    pub all_tets_rainbow: Option<bool>,
}

impl ColoringReport {
    pub fn proper(&self) -> bool {
        self.unmapped.is_empty() && self.improper_edges.is_empty()
    }

    pub fn strict(&self) -> bool {
        match self.strict_k {
            Some(k) => self.proper() && self.colors_used.len() == k as usize,
            None => self.proper(),
        }
    }
}

fn check_cells(
    vertices: impl Iterator<Item = VertexId>,
    edges: impl Iterator<Item = (EdgeId, VertexId, VertexId)>,
    coloring: &Coloring,
    require_strict: Option<u8>,
) -> ColoringReport {
    let mut unmapped = Vec::new();
    let mut colors_used = BTreeSet::new();
    for v in vertices {
        match coloring.get(v) {
            Some(c) => {
                colors_used.insert(c);
            }
            None => unmapped.push(v),
        }
    }
    let mut improper = Vec::new();
    for (id, u, v) in edges {
        if let (Some(a), Some(b)) = (coloring.get(u), coloring.get(v)) {
            if a == b {
                improper.push(id);
            }
        }
    }
    ColoringReport {
        unmapped,
        improper_edges: improper,
        colors_used,
        strict_k: require_strict,
        all_tets_rainbow: None,
    }
}

/// Properness and strictness of a coloring on a surface.
pub fn check_surface_coloring(
    surface: &Surface2,
    coloring: &Coloring,
    require_strict: Option<u8>,
) -> ColoringReport {
    check_cells(
        surface.vertices(),
        surface.edges().map(|e| {
            let (u, v) = e.endpoints();
            (e.id, u, v)
        }),
        coloring,
        require_strict,
    )
}

/// Properness, strictness and tetrahedron rainbow-ness on a 3-complex.
pub fn check_complex_coloring(
    complex: &Complex3,
    coloring: &Coloring,
    require_strict: Option<u8>,
) -> ColoringReport {
    let mut report = check_cells(
        complex.vertices(),
        complex.edges().map(|e| {
            let (u, v) = e.endpoints();
            (e.id, u, v)
        }),
        coloring,
        require_strict,
    );
    let rainbow = complex.tets().all(|tet| {
        let colors: BTreeSet<_> = tet.corners.iter().filter_map(|&v| coloring.get(v)).collect();
        colors.len() == 4
    });
    report.all_tets_rainbow = Some(rainbow);
    report
}

/// Induced edge colors: color(e) = psi(u) xor psi(v), nonzero on proper
/// colorings. Errors when some edge would receive 0.
pub fn edge_colors(surface: &Surface2, coloring: &Coloring) -> Result<BTreeMap<EdgeId, Color>> {
    let mut out = BTreeMap::new();
    for e in surface.edges() {
        let (u, v) = e.endpoints();
        let (a, b) = match (coloring.get(u), coloring.get(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::precondition(format!("edge {} endpoint uncolored", e.id))),
        };
        let c = a.xor(b);
        if c == Color::ZERO {
            return Err(Error::precondition(format!(
                "coloring improper: edge {} endpoints share color {a}",
                e.id
            )));
        }
        out.insert(e.id, c);
    }
    Ok(out)
}

/// Sign of one triangle from its corner colors read along the orientation.
pub fn triangle_sign(corner_colors: [Color; 3]) -> Result<Sign> {
    let x1 = corner_colors[0].xor(corner_colors[1]).value();
    let x2 = corner_colors[1].xor(corner_colors[2]).value();
    let x3 = corner_colors[2].xor(corner_colors[0]).value();
    if x1 == 0 || x2 == 0 || x3 == 0 {
        return Err(Error::precondition("triangle is not properly colored".to_string()));
    }
    // proper => {x1,x2,x3} = {1,2,3}
    match (x1, x2, x3) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => Ok(Sign::Plus),
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => Ok(Sign::Minus),
        _ => Err(Error::structural(format!("side colors ({x1},{x2},{x3}) not a 3-rainbow"))),
    }
}

/// Signs of all triangles of a coherently oriented, properly colored
/// surface, with the color order fixed to (1,2,3).
pub fn triangle_signs(surface: &Surface2, coloring: &Coloring) -> Result<BTreeMap<TriId, Sign>> {
    let mut out = BTreeMap::new();
    for tri in surface.triangles() {
        let colors = [
            coloring.get(tri.corners[0]),
            coloring.get(tri.corners[1]),
            coloring.get(tri.corners[2]),
        ];
        let colors = match colors {
            [Some(a), Some(b), Some(c)] => [a, b, c],
            _ => return Err(Error::precondition(format!("triangle {} corner uncolored", tri.id))),
        };
        out.insert(tri.id, triangle_sign(colors)?);
    }
    Ok(out)
}

/// The unique fourth color absent from three pairwise distinct colors.
/// Since 0^1^2^3 = 0, it is the XOR of the three given colors.
pub fn missing_color(colors: [Color; 3]) -> Color {
    colors[0].xor(colors[1]).xor(colors[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    #[test]
    fn xor_arithmetic() {
        assert_eq!(c(0).xor(c(1)), c(1));
        assert_eq!(c(2).xor(c(3)), c(1));
        assert_eq!(c(1).xor(c(3)), c(2));
        assert_eq!(c(2).xor(c(2)), c(0));
    }

    #[test]
    fn tetrahedron_coloring_is_proper_strict4() {
        let (s, psi) = fixtures::tetrahedron_sphere();
        let report = check_surface_coloring(&s, &psi, Some(4));
        assert!(report.proper());
        assert!(report.strict());
    }

    #[test]
    fn bipyramid_coloring_proper_strict4() {
        let (s, psi) = fixtures::bipyramid();
        let report = check_surface_coloring(&s, &psi, Some(4));
        assert!(report.proper());
        assert!(report.strict());
    }

    #[test]
    fn octahedron_three_coloring_not_strict4() {
        let (s, psi) = fixtures::octahedron();
        let report = check_surface_coloring(&s, &psi, Some(4));
        assert!(report.proper());
        assert!(!report.strict());
        assert_eq!(report.colors_used.len(), 3);
    }

    #[test]
    fn edge_colors_are_nonzero_and_rainbow_per_triangle() {
        let (s, psi) = fixtures::tetrahedron_sphere();
        let ec = edge_colors(&s, &psi).unwrap();
        for tri in s.triangles() {
            let side_colors: BTreeSet<_> = tri.sides.iter().map(|e| ec[e]).collect();
            assert_eq!(side_colors, BTreeSet::from([c(1), c(2), c(3)]));
        }
    }

    #[test]
    fn sign_of_triangle_colored_1_2_3() {
        // side colors along the boundary: (3,1,2), a rotation of (1,2,3)
        assert_eq!(triangle_sign([c(1), c(2), c(3)]).unwrap(), Sign::Plus);
        // reversing the orientation negates the sign
        assert_eq!(triangle_sign([c(3), c(2), c(1)]).unwrap(), Sign::Minus);
    }

    #[test]
    fn tetrahedron_faces_carry_the_same_sign() {
        let (s, psi) = fixtures::tetrahedron_sphere();
        let signs = triangle_signs(&s, &psi).unwrap();
        let first = *signs.values().next().unwrap();
        assert!(signs.values().all(|&sg| sg == first));
    }

    #[test]
    fn missing_color_is_xor_complement() {
        assert_eq!(missing_color([c(1), c(2), c(3)]), c(0));
        assert_eq!(missing_color([c(0), c(1), c(2)]), c(3));
        assert_eq!(missing_color([c(0), c(1), c(3)]), c(2));
    }

    #[test]
    fn improper_coloring_rejected_by_edge_colors() {
        let (s, mut psi) = fixtures::tetrahedron_sphere();
        psi.set(VertexId(1), c(0));
        assert!(edge_colors(&s, &psi).is_err());
        let report = check_surface_coloring(&s, &psi, Some(4));
        assert!(!report.proper());
        assert_eq!(report.improper_edges.len(), 1);
    }
}
