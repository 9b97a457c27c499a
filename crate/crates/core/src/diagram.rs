//! PD-code knot diagrams: planar face tracing, checkerboard colorings, and
//! Goeritz matrices of alternating diagrams.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise
//! starting from the incoming under-strand, so positions 0 and 2 carry the
//! under-strand and positions 1 and 3 the over-strand. Faces are traced as
//! orbits of the dart permutation `rotate(partner(dart))`; quadrant `q` of a
//! crossing is the corner between positions `q` and `q+1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::form::{certify_definiteness, SymmetricForm};
use crate::matrix::IntMatrix;

/// Validated PD-code diagram of a knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<[usize; 4]>,
    /// label -> the two darts (crossing, position) carrying it
    slots: BTreeMap<usize, [(usize, usize); 2]>,
}

impl KnotDiagram {
    pub fn new(crossings: Vec<[usize; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Parse("empty PD code".into()));
        }
        let mut seen: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, tup) in crossings.iter().enumerate() {
            for (p, &label) in tup.iter().enumerate() {
                if label == 0 {
                    return Err(Error::Validation("edge labels must be positive".into()));
                }
                seen.entry(label).or_default().push((c, p));
            }
        }
        let mut slots = BTreeMap::new();
        for (label, at) in &seen {
            if at.len() != 2 {
                return Err(Error::Validation(format!(
                    "edge label {label} occurs {} times, expected 2",
                    at.len()
                )));
            }
            slots.insert(*label, [at[0], at[1]]);
        }
        let diagram = KnotDiagram { crossings, slots };
        diagram.check_connected()?;
        Ok(diagram)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.crossings.len();
        let mut reached = vec![false; n];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(c) = stack.pop() {
            for p in 0..4 {
                let (c2, _) = self.partner((c, p));
                if !reached[c2] {
                    reached[c2] = true;
                    stack.push(c2);
                }
            }
        }
        if reached.iter().all(|&r| r) {
            Ok(())
        } else {
            Err(Error::Validation("diagram is disconnected".into()))
        }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.slots.len()
    }

    fn partner(&self, dart: (usize, usize)) -> (usize, usize) {
        let label = self.crossings[dart.0][dart.1];
        let [a, b] = self.slots[&label];
        if a == dart {
            b
        } else {
            a
        }
    }

    /// An alternating diagram passes every edge once as under-strand and once
    /// as over-strand, which in PD position terms means the two slots of each
    /// label have opposite parity. Returns the offending label otherwise.
    pub fn alternation_defect(&self) -> Option<usize> {
        for (&label, &[a, b]) in &self.slots {
            if a.1 % 2 == b.1 % 2 {
                return Some(label);
            }
        }
        None
    }

    pub fn is_alternating(&self) -> bool {
        self.alternation_defect().is_none()
    }

    /// Mirror diagram: every tuple rotated one position, which swaps the
    /// over- and under-strands at each crossing and keeps the shadow.
    pub fn mirror(&self) -> KnotDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|t| [t[1], t[2], t[3], t[0]])
            .collect();
        KnotDiagram::new(crossings).expect("mirror of a valid diagram is valid")
    }
}

/// Parse a PD code, either in text form `X(1,4,2,5) X(3,6,4,1) ...` or as a
/// bracket list `[[1,4,2,5],[3,6,4,1],...]`.
pub fn parse_pd(text: &str) -> Result<KnotDiagram> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty PD code".into()));
    }
    let mut rest = trimmed;
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|s| s.strip_suffix(']')) {
        rest = inner;
    }
    let mut tuples = Vec::new();
    let bytes = rest.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        // closers of an outer [..] list we stepped inside are skipped too
        if ch.is_whitespace() || ch == ',' || ch == ';' || ch == ']' || ch == ')' {
            i += 1;
            continue;
        }
        let open = match ch {
            'X' | 'x' => {
                i += 1;
                match bytes.get(i).map(|&b| b as char) {
                    Some('(') => '(',
                    Some('[') => '[',
                    _ => return Err(Error::Parse(format!("expected ( or [ after X at byte {i}"))),
                }
            }
            '(' | '[' => ch,
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {ch:?} at byte {i}"
                )))
            }
        };
        let close = if open == '(' { ')' } else { ']' };
        let start = i + 1;
        let end = rest[start..]
            .find(close)
            .map(|k| start + k)
            .ok_or_else(|| Error::Parse(format!("unclosed {open:?} at byte {i}")))?;
        let body = &rest[start..end];
        // the outermost bracket of a [[..],[..]] list opens straight into
        // another bracket; step inside it
        if !body.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
            i = start;
            continue;
        }
        let entries: Vec<usize> = body
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad edge label {s:?}")))
            })
            .collect::<Result<_>>()?;
        if entries.len() != 4 {
            return Err(Error::Parse(format!(
                "crossing needs 4 edge labels, got {}",
                entries.len()
            )));
        }
        tuples.push([entries[0], entries[1], entries[2], entries[3]]);
        i = end + 1;
    }
    if tuples.is_empty() {
        return Err(Error::Parse("no crossings found".into()));
    }
    KnotDiagram::new(tuples)
}

/// One complementary region of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Edge labels along the boundary, in tracing order.
    pub edges: Vec<usize>,
    /// Smallest edge label on the boundary.
    pub min_edge: usize,
}

/// Faces plus the quadrant-to-face incidence used by the Goeritz pipeline.
#[derive(Debug, Clone)]
pub struct FaceData {
    pub faces: Vec<Face>,
    /// quadrant_owner[c][q] = face containing the corner of crossing c
    /// between positions q and q+1
    quadrant_owner: Vec<[usize; 4]>,
}

impl FaceData {
    /// Face containing the corner of `crossing` between PD positions
    /// `corner` and `corner + 1`.
    pub fn quadrant_owner(&self, crossing: usize, corner: usize) -> usize {
        self.quadrant_owner[crossing][corner]
    }
}

/// Trace the complementary faces of the diagram. A planar diagram with n
/// crossings has exactly n + 2.
pub fn face_data(d: &KnotDiagram) -> Result<FaceData> {
    let n = d.crossing_count();
    let mut owner = vec![[usize::MAX; 4]; n];
    let mut visited = vec![[false; 4]; n];
    let mut faces = Vec::new();
    for c0 in 0..n {
        for p0 in 0..4 {
            if visited[c0][p0] {
                continue;
            }
            let face_index = faces.len();
            let mut edges = Vec::new();
            let mut cur = (c0, p0);
            while !visited[cur.0][cur.1] {
                visited[cur.0][cur.1] = true;
                edges.push(d.crossings[cur.0][cur.1]);
                let (c2, p2) = d.partner(cur);
                owner[c2][p2] = face_index;
                cur = (c2, (p2 + 1) % 4);
            }
            let min_edge = *edges.iter().min().expect("face has edges");
            faces.push(Face { edges, min_edge });
        }
    }
    if faces.len() != n + 2 {
        return Err(Error::NonPlanar(format!(
            "{} faces for {} crossings, expected {}",
            faces.len(),
            n,
            n + 2
        )));
    }
    Ok(FaceData {
        faces,
        quadrant_owner: owner,
    })
}

/// Face boundary cycles of the diagram.
pub fn faces(d: &KnotDiagram) -> Result<Vec<Face>> {
    Ok(face_data(d)?.faces)
}

/// The two opposite-quadrant pairs at a crossing, named by PD positions.
/// In an alternating diagram every crossing shows the same pair in white.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrantPair {
    /// corners 0-1 and 2-3 (counterclockwise of the under-strand rays)
    Q01Q23,
    /// corners 1-2 and 3-0 (clockwise of the under-strand rays)
    Q12Q30,
}

/// The white-quadrant pair whose coloring produces the Goeritz form of the
/// diagrammed knot itself rather than of its mirror, fixed by calibrating
/// the whole pipeline against a knot whose reduced form, its mirror's form,
/// and their correction-term tables are all known independently.
pub const DEFINITE_WHITE_PAIR: QuadrantPair = QuadrantPair::Q12Q30;

/// One of the two checkerboard colorings of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// 0 if this coloring's white set contains face 0, else 1
    pub class_index: usize,
    /// face indices painted white, ascending
    pub white_faces: Vec<usize>,
    /// index into `white_faces` of the deleted region: the white face whose
    /// smallest boundary edge label is lowest
    pub region0: usize,
}

impl Coloring {
    pub fn white_count(&self) -> usize {
        self.white_faces.len()
    }
}

fn two_color(d: &KnotDiagram, data: &FaceData) -> Result<Vec<usize>> {
    let nf = data.faces.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for c in 0..d.crossing_count() {
        for q in 0..4 {
            let here = data.quadrant_owner[c][q];
            let next = data.quadrant_owner[c][(q + 1) % 4];
            adjacency[here].push(next);
            adjacency[next].push(here);
        }
    }
    let mut color = vec![usize::MAX; nf];
    color[0] = 0;
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        for &g in &adjacency[f] {
            if color[g] == usize::MAX {
                color[g] = 1 - color[f];
                stack.push(g);
            } else if color[g] == color[f] {
                return Err(Error::NonPlanar(
                    "regions admit no checkerboard coloring".into(),
                ));
            }
        }
    }
    if color.contains(&usize::MAX) {
        return Err(Error::NonPlanar("regions are not edge-connected".into()));
    }
    Ok(color)
}

fn coloring_for_class(data: &FaceData, color: &[usize], class: usize) -> Coloring {
    let white_faces: Vec<usize> = (0..data.faces.len())
        .filter(|&f| color[f] == class)
        .collect();
    let region0 = white_faces
        .iter()
        .enumerate()
        .min_by_key(|(_, &f)| data.faces[f].min_edge)
        .map(|(i, _)| i)
        .expect("a coloring has at least one white face");
    Coloring {
        class_index: class,
        white_faces,
        region0,
    }
}

/// Both checkerboard colorings. Coloring 0 is the one whose white set
/// contains face 0.
pub fn checkerboard(d: &KnotDiagram) -> Result<(Coloring, Coloring)> {
    let data = face_data(d)?;
    let color = two_color(d, &data)?;
    Ok((
        coloring_for_class(&data, &color, 0),
        coloring_for_class(&data, &color, 1),
    ))
}

/// Reduced Goeritz matrix of an alternating diagram under a coloring.
#[derive(Debug, Clone)]
pub struct GoeritzMatrix {
    pub form: SymmetricForm,
    /// which coloring produced this matrix
    pub class_index: usize,
    /// quadrant pair shown white at every crossing
    pub white_pair: QuadrantPair,
    /// number of white regions before deletion
    pub white_regions: usize,
    /// smallest boundary edge label of the deleted region
    pub deleted_region_min_edge: usize,
}

/// The white-quadrant pair of a coloring, checked to be uniform over all
/// crossings (it always is when the diagram alternates).
fn white_pair(d: &KnotDiagram, data: &FaceData, white: &[bool]) -> Result<QuadrantPair> {
    let mut pair: Option<QuadrantPair> = None;
    for c in 0..d.crossing_count() {
        let wq: Vec<usize> = (0..4)
            .filter(|&q| white[data.quadrant_owner[c][q]])
            .collect();
        let kind = match wq.as_slice() {
            [0, 2] => QuadrantPair::Q01Q23,
            [1, 3] => QuadrantPair::Q12Q30,
            _ => return Err(Error::ConventionMismatch),
        };
        match pair {
            None => pair = Some(kind),
            Some(k) if k == kind => {}
            Some(_) => return Err(Error::ConventionMismatch),
        }
    }
    pair.ok_or(Error::ConventionMismatch)
}

/// Goeritz matrix of an alternating diagram: white regions are the vertices
/// of a Tait graph with one edge per crossing joining its two white
/// quadrants; the matrix is the negated reduced Laplacian with the deleted
/// region removed, certified negative definite.
pub fn goeritz_matrix(d: &KnotDiagram, coloring: &Coloring) -> Result<GoeritzMatrix> {
    if let Some(label) = d.alternation_defect() {
        return Err(Error::NotAlternating(label));
    }
    let data = face_data(d)?;
    let nf = data.faces.len();
    let mut white = vec![false; nf];
    for &f in &coloring.white_faces {
        white[f] = true;
    }
    let pair = white_pair(d, &data, &white)?;

    let w = coloring.white_faces.len();
    if w < 2 {
        return Err(Error::Validation(
            "coloring has a single white region; the reduced Goeritz matrix is empty".into(),
        ));
    }
    // order regions: deleted region first, the rest by smallest boundary label
    let mut order: Vec<usize> = (0..w).collect();
    order.sort_by_key(|&i| data.faces[coloring.white_faces[i]].min_edge);
    debug_assert_eq!(order[0], coloring.region0);
    let position: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(pos, &i)| (coloring.white_faces[i], pos))
        .collect();

    let mut pre = vec![vec![0i64; w]; w];
    for c in 0..d.crossing_count() {
        let wq: Vec<usize> = (0..4)
            .filter(|&q| white[data.quadrant_owner[c][q]])
            .collect();
        let (fa, fb) = (data.quadrant_owner[c][wq[0]], data.quadrant_owner[c][wq[1]]);
        if fa != fb {
            let (ia, ib) = (position[&fa], position[&fb]);
            pre[ia][ib] += 1;
            pre[ib][ia] += 1;
        }
    }
    for (i, row) in pre.iter_mut().enumerate() {
        let off: i64 = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v)
            .sum();
        row[i] = -off;
    }

    let reduced: Vec<Vec<i64>> = (1..w)
        .map(|i| (1..w).map(|j| pre[i][j]).collect())
        .collect();
    let form = certify_definiteness(IntMatrix::from_i64_rows(&reduced)?)?;
    if !form.is_negative_definite() {
        return Err(Error::ConventionMismatch);
    }
    let deleted_face = coloring.white_faces[order[0]];
    Ok(GoeritzMatrix {
        form,
        class_index: coloring.class_index,
        white_pair: pair,
        white_regions: w,
        deleted_region_min_edge: data.faces[deleted_face].min_edge,
    })
}

/// The coloring whose Goeritz matrix belongs to the diagrammed knot itself.
pub fn definite_coloring(d: &KnotDiagram) -> Result<Coloring> {
    if let Some(label) = d.alternation_defect() {
        return Err(Error::NotAlternating(label));
    }
    let data = face_data(d)?;
    let color = two_color(d, &data)?;
    for class in 0..2 {
        let coloring = coloring_for_class(&data, &color, class);
        let mut white = vec![false; data.faces.len()];
        for &f in &coloring.white_faces {
            white[f] = true;
        }
        if white_pair(d, &data, &white)? == DEFINITE_WHITE_PAIR {
            return Ok(coloring);
        }
    }
    Err(Error::ConventionMismatch)
}

/// |det| of the reduced Goeritz matrix; equals the knot determinant.
pub fn determinant_from_goeritz(g: &GoeritzMatrix) -> BigInt {
    g.form.det().abs()
}
