//! The mating pipeline: project a walk onto its two coordinate paths, draw
//! them facing each other joined by rungs, sew each path into a tree and
//! contract the oblique quadrilaterals.
//!
//! Every cell of the diagram is a polygon listed clockwise in the picture
//! (time runs upward, the horizontal coordinate is on the left):
//! left segments upward, the top rung left to right, right segments downward,
//! the bottom rung right to left. With this listing the derived vertex
//! rotations are counterclockwise in the picture.
//!
//! Gluing happens in two phases. Rungs and the right path are sewn first;
//! left segments and boundary sides stay free and carry a label. Oblique
//! cells are then contracted, which may move a label onto another side or join
//! two labels into a bridge. Finally the labelled sides are sewn by the left
//! matching and the boundary policy. Edges created in the first phase form the
//! "tree" part of the result and edges created in the second phase the "cut"
//! part; this is what the spanning-tree bijections read off.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, Dart, DecoratedMap, UnionFind};
use crate::walks::{Step, Walk};

/// A one-dimensional lattice path: a start height and integer steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: i64,
    pub steps: Vec<i64>,
}

impl LatticePath {
    pub fn new(start: i64, steps: Vec<i64>) -> Self {
        LatticePath { start, steps }
    }

    pub fn from_updown(word: &str) -> Result<Self> {
        let steps = word
            .chars()
            .map(|c| match c {
                'u' => Ok(1),
                'd' => Ok(-1),
                'h' => Ok(0),
                other => Err(Error::InvalidPath(format!("unexpected letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePath::new(0, steps))
    }

    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![self.start];
        for &s in &self.steps {
            h.push(h.last().copied().unwrap_or(0) + s);
        }
        h
    }

    pub fn end(&self) -> i64 {
        self.start + self.steps.iter().sum::<i64>()
    }

    pub fn is_confined(&self) -> bool {
        self.heights().iter().all(|&h| h >= 0)
    }

    pub fn is_dyck(&self) -> bool {
        self.start == 0 && self.end() == 0 && self.is_confined() && self.steps.iter().all(|s| s.abs() == 1)
    }

    /// Unit expansion: a step `s != 0` becomes `|s|` unit steps of its sign,
    /// a zero step stays a single flat entry. Each entry carries the index of
    /// the step that produced it.
    pub fn units(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for (k, &s) in self.steps.iter().enumerate() {
            if s == 0 {
                out.push((0, k));
            } else {
                out.extend(std::iter::repeat((s.signum(), k)).take(s.unsigned_abs() as usize));
            }
        }
        out
    }
}

/// Projections of a walk: the horizontal and the vertical coordinate paths.
pub fn project(walk: &Walk) -> (LatticePath, LatticePath) {
    let start = walk.start();
    (
        LatticePath::new(start.x, walk.steps().iter().map(|s| s.dx).collect()),
        LatticePath::new(start.y, walk.steps().iter().map(|s| s.dy).collect()),
    )
}

/// Up/down matching of a path. Indices are 1-based positions in the unit
/// expansion, which coincide with step indices for paths with steps in
/// `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathMatching {
    /// `(up, down)` pairs sorted by the up index.
    pub matched: Vec<(usize, usize)>,
    /// Pre-minimum downs and post-minimum ups, ascending.
    pub unmatched: Vec<usize>,
}

impl PathMatching {
    /// Partner of every unit position (1-based), if matched.
    pub fn partners(&self, len: usize) -> Vec<Option<usize>> {
        let mut p = vec![None; len + 1];
        for &(a, b) in &self.matched {
            p[a] = Some(b);
            p[b] = Some(a);
        }
        p
    }
}

pub fn match_path(path: &LatticePath) -> PathMatching {
    let mut stack = Vec::new();
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    for (i, (u, _)) in path.units().into_iter().enumerate() {
        let pos = i + 1;
        match u {
            1 => stack.push(pos),
            -1 => match stack.pop() {
                Some(up) => matched.push((up, pos)),
                None => unmatched.push(pos),
            },
            _ => {}
        }
    }
    unmatched.extend(stack);
    unmatched.sort_unstable();
    matched.sort_unstable();
    PathMatching { matched, unmatched }
}

/// Up/down word of a non-crossing perfect matching of `1..=2n`.
pub fn pairing_to_dyck(pairs: &[(usize, usize)]) -> Result<LatticePath> {
    let n = pairs.len() * 2;
    let mut steps = vec![0i64; n];
    for &(a, b) in pairs {
        let (a, b) = (a.min(b), a.max(b));
        if a == 0 || b > n || steps[a - 1] != 0 || steps[b - 1] != 0 {
            return Err(Error::InvalidPath("not a perfect matching of 1..2n".into()));
        }
        steps[a - 1] = 1;
        steps[b - 1] = -1;
    }
    let path = LatticePath::new(0, steps);
    let mut canon: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    canon.sort_unstable();
    if match_path(&path).matched != canon {
        return Err(Error::InvalidPath("pairing is crossing".into()));
    }
    Ok(path)
}

/// Rooted planar binary tree; `Empty` has no vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Inverse of [`dyck_to_tree`].
    pub fn to_dyck(&self) -> LatticePath {
        fn go(t: &BinaryTree, out: &mut Vec<i64>) {
            if let BinaryTree::Node(l, r) = t {
                out.push(1);
                go(l, out);
                out.push(-1);
                go(r, out);
            }
        }
        let mut steps = Vec::new();
        go(self, &mut steps);
        LatticePath::new(0, steps)
    }
}

/// Binary tree of a Dyck path: `u D1 d D2` has left subtree `D1` and right
/// subtree `D2`.
pub fn dyck_to_tree(path: &LatticePath) -> Result<BinaryTree> {
    if !path.is_dyck() {
        return Err(Error::InvalidPath("not a Dyck path".into()));
    }
    let partner = match_path(path).partners(path.steps.len());
    // Iterative: build subtrees for each interval [from, to) right to left.
    fn build(from: usize, to: usize, partner: &[Option<usize>]) -> BinaryTree {
        if from >= to {
            return BinaryTree::Empty;
        }
        let close = partner[from + 1].expect("Dyck paths are fully matched");
        BinaryTree::node(build(from + 1, close - 1, partner), build(close, to, partner))
    }
    Ok(build(0, path.steps.len(), &partner))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A vertex of the rectangle picture: the end of rung `rung` on one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramVertex {
    pub rung: usize,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// Exactly one coordinate is a unit step: becomes a triangle.
    Straight,
    /// Both coordinates are unit steps: a quadrilateral to contract.
    Oblique,
    /// Any other step: a face with `|i|+|j|+2` sides that is never contracted.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCell {
    /// 1-based step number.
    pub index: usize,
    pub step: Step,
    pub kind: CellKind,
    /// 0-based unit positions of this cell's left and right segments.
    pub left_units: Vec<usize>,
    pub right_units: Vec<usize>,
    /// Step number owning the partner of this cell's left segment, if the
    /// cell has a single matched left segment.
    pub matched_left: Option<usize>,
    pub matched_right: Option<usize>,
}

impl QuadCell {
    pub fn u(&self) -> DiagramVertex {
        DiagramVertex { rung: self.index, side: Side::Left }
    }
    pub fn v(&self) -> DiagramVertex {
        DiagramVertex { rung: self.index, side: Side::Right }
    }
    pub fn w(&self) -> DiagramVertex {
        DiagramVertex { rung: self.index - 1, side: Side::Left }
    }
    pub fn z(&self) -> DiagramVertex {
        DiagramVertex { rung: self.index - 1, side: Side::Right }
    }
}

/// Which pair of opposite corners of an oblique cell is identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diagonal {
    /// NW with SE: left sewn to bottom, top sewn to right.
    UZ,
    /// NE with SW: left sewn to top, right sewn to bottom.
    VW,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractionRule {
    /// Leave every quadrilateral in place.
    Keep,
    /// Identify the NW and SE corners of every oblique cell.
    NorthwestSoutheast,
    /// Compare the steps matched below the left and right sides of the cell:
    /// NW–SE if the left one is older, NE–SW otherwise.
    Kreweras,
    /// Contract only `(1,-1)` cells, along NW–SE; every other cell is a face.
    Tandem,
    /// One choice per oblique cell, in cell order.
    Explicit(Vec<Diagonal>),
}

impl ContractionRule {
    /// Parses a string of `0` (NW–SE) and `1` (NE–SW) choices.
    pub fn from_bits(bits: &str) -> Result<Self> {
        bits.chars()
            .map(|c| match c {
                '0' => Ok(Diagonal::UZ),
                '1' => Ok(Diagonal::VW),
                _ => Err(Error::Rule(format!("bad rule character `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ContractionRule::Explicit)
    }

    fn decide(&self, diagram: &MatingDiagram, cell: &QuadCell, oblique_rank: usize) -> Result<Option<Diagonal>> {
        if cell.kind != CellKind::Oblique {
            if let ContractionRule::Explicit(_) = self {
                return Ok(None);
            }
            return Ok(None);
        }
        match self {
            ContractionRule::Keep => Ok(None),
            ContractionRule::NorthwestSoutheast => Ok(Some(Diagonal::UZ)),
            ContractionRule::Tandem => Ok((cell.step == Step::new(1, -1)).then_some(Diagonal::UZ)),
            ContractionRule::Kreweras => {
                let (Some(i), Some(j)) = (cell.matched_left, cell.matched_right) else {
                    return Err(Error::Rule(format!("cell {} has an unmatched side", cell.index)));
                };
                if i > cell.index || j > cell.index {
                    return Err(Error::Rule(format!("cell {} is not matched below", cell.index)));
                }
                let _ = diagram;
                Ok(Some(if i < j { Diagonal::UZ } else { Diagonal::VW }))
            }
            ContractionRule::Explicit(choices) => choices
                .get(oblique_rank)
                .copied()
                .map(Some)
                .ok_or_else(|| Error::Rule(format!("no choice given for oblique cell {}", cell.index))),
        }
    }
}

/// What to do with the unmatched path segments and the top and bottom rungs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Sew the top rung to the bottom rung; requires no unmatched segments.
    Closed,
    /// Keep the boundary as an exterior face.
    Open,
    /// Sew boundary sides by a non-crossing pairing of positions in
    /// [`MatingDiagram::boundary`] order.
    Paired(Vec<(usize, usize)>),
}

/// A side on the outer boundary of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundarySide {
    Bottom,
    Top,
    /// Unmatched left unit (0-based unit position).
    Left(usize),
    Right(usize),
}

#[derive(Clone, Debug)]
pub struct MatingDiagram {
    pub walk: Walk,
    pub left: LatticePath,
    pub right: LatticePath,
    pub left_units: Vec<(i64, usize)>,
    pub right_units: Vec<(i64, usize)>,
    pub left_matching: PathMatching,
    pub right_matching: PathMatching,
    pub cells: Vec<QuadCell>,
}

impl MatingDiagram {
    /// Boundary sides in exterior-face order: bottom rung, unmatched right
    /// segments upward, top rung, unmatched left segments downward.
    pub fn boundary(&self) -> Vec<BoundarySide> {
        let mut out = vec![BoundarySide::Bottom];
        out.extend(self.right_unmatched().into_iter().map(BoundarySide::Right));
        out.push(BoundarySide::Top);
        out.extend(self.left_unmatched().into_iter().rev().map(BoundarySide::Left));
        out
    }

    /// 0-based unit positions of unmatched non-flat left units.
    pub fn left_unmatched(&self) -> Vec<usize> {
        self.left_matching.unmatched.iter().map(|p| p - 1).collect()
    }

    pub fn right_unmatched(&self) -> Vec<usize> {
        self.right_matching.unmatched.iter().map(|p| p - 1).collect()
    }

    pub fn oblique_count(&self) -> usize {
        self.cells.iter().filter(|c| c.kind == CellKind::Oblique).count()
    }
}

pub fn build_diagram(walk: &Walk) -> Result<MatingDiagram> {
    if let Some(i) = walk.first_exit() {
        return Err(Error::NotConfined(i));
    }
    let (left, right) = project(walk);
    let left_units = left.units();
    let right_units = right.units();
    let left_matching = match_path(&left);
    let right_matching = match_path(&right);
    let lp = left_matching.partners(left_units.len());
    let rp = right_matching.partners(right_units.len());
    let cells = walk
        .steps()
        .iter()
        .enumerate()
        .map(|(k, &step)| {
            let lu: Vec<usize> = (0..left_units.len())
                .filter(|&i| left_units[i].1 == k && left_units[i].0 != 0)
                .collect();
            let ru: Vec<usize> = (0..right_units.len())
                .filter(|&i| right_units[i].1 == k && right_units[i].0 != 0)
                .collect();
            let kind = match (step.dx.abs(), step.dy.abs()) {
                (1, 0) | (0, 1) => CellKind::Straight,
                (1, 1) => CellKind::Oblique,
                _ => CellKind::General,
            };
            let partner_step = |units: &[usize], partners: &[Option<usize>], owners: &[(i64, usize)]| {
                if units.len() != 1 {
                    return None;
                }
                partners[units[0] + 1].map(|p| owners[p - 1].1 + 1)
            };
            QuadCell {
                index: k + 1,
                step,
                kind,
                matched_left: partner_step(&lu, &lp, &left_units),
                matched_right: partner_step(&ru, &rp, &right_units),
                left_units: lu,
                right_units: ru,
            }
        })
        .collect();
    Ok(MatingDiagram {
        walk: walk.clone(),
        left,
        right,
        left_units,
        right_units,
        left_matching,
        right_matching,
        cells,
    })
}

/// What a side of the glued picture originally was.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideKind {
    Bottom,
    Top,
    Left(usize),
    Right(usize),
    /// Side of the exterior face, glued to the given boundary side.
    Exterior(BoundarySide),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SideRef {
    /// 0-based cell index; `None` for exterior sides.
    pub cell: Option<usize>,
    pub kind: SideKind,
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cell {
            Some(c) => write!(f, "cell{}:{:?}", c + 1, self.kind),
            None => write!(f, "ext:{:?}", self.kind),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Glued(usize),
    Leaf(usize),
    Removed,
}

/// Result of mating a walk.
#[derive(Clone, Debug)]
pub struct Mating {
    pub diagram: MatingDiagram,
    pub map: CombinatorialMap,
    /// Original side of every dart.
    pub dart_side: Vec<SideRef>,
    /// Whether the edge of a dart was sewn in the first phase.
    pub tree_dart: Vec<bool>,
    /// Whether each dart runs along the west-to-east orientation of its side.
    pub agrees: Vec<bool>,
    /// Dart of every side that survived contraction.
    side_dart: Vec<Option<Dart>>,
    sides: Vec<SideRef>,
    class_members: Vec<Vec<usize>>,
    dart_class: Vec<usize>,
    /// Dart holding the bottom-rung label after contraction.
    pub bottom_leaf: Option<Dart>,
    /// Dart holding the top-rung label after contraction.
    pub top_leaf: Option<Dart>,
}

impl Mating {
    /// Original sides sewn into the edge of `d`.
    pub fn edge_sides(&self, d: Dart) -> Vec<SideRef> {
        self.class_members[self.dart_class[d.0]].iter().map(|&s| self.sides[s]).collect()
    }

    pub fn dart_of(&self, side: SideRef) -> Option<Dart> {
        let i = self.sides.iter().position(|&s| s == side)?;
        self.side_dart[i]
    }

    /// Edge ids sewn in the first phase.
    pub fn tree_edges(&self) -> BTreeSet<Dart> {
        self.map.edges().into_iter().filter(|e| self.tree_dart[e.0]).collect()
    }

    /// West-to-east orientation of every edge, if consistent.
    pub fn orientation(&self) -> Option<BTreeSet<Dart>> {
        let mut out = BTreeSet::new();
        for d in self.map.darts() {
            let o = self.map.opp(d);
            if self.agrees[d.0] == self.agrees[o.0] {
                return None;
            }
            if self.agrees[d.0] {
                out.insert(d);
            }
        }
        Some(out)
    }

    /// Cell (0-based) of the face containing `d`; `None` for the exterior.
    pub fn cell_of(&self, d: Dart) -> Option<usize> {
        self.dart_side[d.0].cell
    }

    fn has_kind(&self, d: Dart, pred: impl Fn(SideKind) -> bool) -> bool {
        self.edge_sides(d).iter().any(|s| pred(s.kind))
    }

    /// Decorated view: left-path edges red, right-path edges blue, the
    /// first-phase edges as the tree.
    pub fn decorated(&self) -> DecoratedMap {
        use crate::map::Color;
        let mut colors = std::collections::BTreeMap::new();
        for e in self.map.edges() {
            let l = self.has_kind(e, |k| matches!(k, SideKind::Left(_)));
            let r = self.has_kind(e, |k| matches!(k, SideKind::Right(_)));
            match (l, r) {
                (true, false) => {
                    colors.insert(e, Color::Red);
                }
                (false, true) => {
                    colors.insert(e, Color::Blue);
                }
                _ => {}
            }
        }
        let mut d = DecoratedMap::plain(self.map.clone());
        d.colors = Some(colors);
        d.tree = Some(self.tree_edges());
        d
    }
}

fn validate_pairing(pairs: &[(usize, usize)], n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Boundary(format!("odd number ({n}) of boundary sides")));
    }
    if pairs.len() * 2 != n {
        return Err(Error::Boundary("pairing must cover every boundary side".into()));
    }
    let mut seen = vec![false; n];
    for &(a, b) in pairs {
        if a >= n || b >= n || a == b || seen[a] || seen[b] {
            return Err(Error::Boundary("pairing is not a perfect matching".into()));
        }
        seen[a] = true;
        seen[b] = true;
    }
    for &(a, b) in pairs {
        let (a, b) = (a.min(b), a.max(b));
        for &(c, d) in pairs {
            let (c, d) = (c.min(d), c.max(d));
            if a < c && c < b && b < d {
                return Err(Error::Boundary("pairing is crossing".into()));
            }
        }
    }
    Ok(())
}

/// Mates a confined walk into a planar map.
pub fn mate(walk: &Walk, rule: &ContractionRule, boundary: &Boundary) -> Result<Mating> {
    let diagram = build_diagram(walk)?;
    mate_diagram(diagram, rule, boundary)
}

pub fn mate_diagram(diagram: MatingDiagram, rule: &ContractionRule, boundary: &Boundary) -> Result<Mating> {
    let boundary_sides = diagram.boundary();
    match boundary {
        Boundary::Closed if boundary_sides.len() != 2 => {
            return Err(Error::Boundary("closed policy needs a walk with no unmatched segments".into()))
        }
        Boundary::Paired(p) => validate_pairing(p, boundary_sides.len())?,
        _ => {}
    }
    let n = diagram.cells.len();
    if n == 0 {
        return Ok(empty_mating(diagram, boundary));
    }

    // Sides and face cycles.
    let mut sides: Vec<SideRef> = Vec::new();
    let mut agrees: Vec<bool> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut bottom = vec![0; n];
    let mut top = vec![0; n];
    let mut left_side = vec![usize::MAX; diagram.left_units.len()];
    let mut right_side = vec![usize::MAX; diagram.right_units.len()];
    for (k, cell) in diagram.cells.iter().enumerate() {
        let mut face = Vec::new();
        let push = |kind: SideKind, agree: bool, sides: &mut Vec<SideRef>, agrees: &mut Vec<bool>| {
            sides.push(SideRef { cell: Some(k), kind });
            agrees.push(agree);
            sides.len() - 1
        };
        for &u in &cell.left_units {
            let s = push(SideKind::Left(u), diagram.left_units[u].0 > 0, &mut sides, &mut agrees);
            left_side[u] = s;
            face.push(s);
        }
        top[k] = push(SideKind::Top, true, &mut sides, &mut agrees);
        face.push(top[k]);
        for &u in cell.right_units.iter().rev() {
            let s = push(SideKind::Right(u), diagram.right_units[u].0 > 0, &mut sides, &mut agrees);
            right_side[u] = s;
            face.push(s);
        }
        bottom[k] = push(SideKind::Bottom, false, &mut sides, &mut agrees);
        face.push(bottom[k]);
        faces.push(face);
    }
    let boundary_side_id = |b: BoundarySide| match b {
        BoundarySide::Bottom => bottom[0],
        BoundarySide::Top => top[n - 1],
        BoundarySide::Left(u) => left_side[u],
        BoundarySide::Right(u) => right_side[u],
    };

    let mut state: Vec<State> = (0..sides.len()).map(State::Leaf).collect();
    let mut uf = UnionFind::new(sides.len() + boundary_sides.len());
    let glue = |state: &mut Vec<State>, uf: &mut UnionFind, a: usize, b: usize| {
        state[a] = State::Glued(b);
        state[b] = State::Glued(a);
        uf.union(a, b);
    };
    for k in 0..n - 1 {
        glue(&mut state, &mut uf, top[k], bottom[k + 1]);
    }
    for &(a, b) in &diagram.right_matching.matched {
        glue(&mut state, &mut uf, right_side[a - 1], right_side[b - 1]);
    }

    // Contractions.
    let mut bridges: Vec<(usize, usize)> = Vec::new();
    let mut removed_cell = vec![false; n];
    let mut rank = 0;
    for (k, cell) in diagram.cells.iter().enumerate() {
        let choice = rule.decide(&diagram, cell, rank)?;
        if cell.kind == CellKind::Oblique {
            rank += 1;
        }
        let Some(diag) = choice else { continue };
        let l = left_side[cell.left_units[0]];
        let r = right_side[cell.right_units[0]];
        let pairs = match diag {
            Diagonal::UZ => [(l, bottom[k]), (top[k], r)],
            Diagonal::VW => [(l, top[k]), (r, bottom[k])],
        };
        for (s1, s2) in pairs {
            uf.union(s1, s2);
            match (state[s1], state[s2]) {
                (State::Glued(p1), State::Glued(p2)) => {
                    if p1 == s2 {
                        return Err(Error::Rule(format!("cell {} folds onto itself", k + 1)));
                    }
                    state[p1] = State::Glued(p2);
                    state[p2] = State::Glued(p1);
                }
                (State::Glued(p), State::Leaf(label)) | (State::Leaf(label), State::Glued(p)) => {
                    state[p] = State::Leaf(label);
                }
                (State::Leaf(a), State::Leaf(b)) => bridges.push((a, b)),
                _ => return Err(Error::Rule(format!("cell {} touches a removed side", k + 1))),
            }
            state[s1] = State::Removed;
            state[s2] = State::Removed;
        }
        for &s in &faces[k] {
            state[s] = State::Removed;
        }
        removed_cell[k] = true;
    }
    let first_phase: Vec<bool> = state.iter().map(|s| matches!(s, State::Glued(_))).collect();

    // Second phase: pair labels.
    let mut pairing: Vec<(usize, usize)> = diagram
        .left_matching
        .matched
        .iter()
        .map(|&(a, b)| (left_side[a - 1], left_side[b - 1]))
        .collect();
    let mut exterior_face = Vec::new();
    match boundary {
        Boundary::Closed => pairing.push((bottom[0], top[n - 1])),
        Boundary::Paired(p) => {
            for &(a, b) in p {
                pairing.push((boundary_side_id(boundary_sides[a]), boundary_side_id(boundary_sides[b])));
            }
        }
        Boundary::Open => {
            for &b in &boundary_sides {
                let inner = boundary_side_id(b);
                sides.push(SideRef { cell: None, kind: SideKind::Exterior(b) });
                agrees.push(!agrees[inner]);
                let ext = sides.len() - 1;
                state.push(State::Leaf(ext));
                exterior_face.push(ext);
                pairing.push((inner, ext));
            }
        }
    }
    let total = sides.len();
    let mut holder = vec![None; total];
    for (s, st) in state.iter().enumerate() {
        if let State::Leaf(label) = *st {
            holder[label] = Some(s);
        }
    }
    let mut bridge_of = vec![None; total];
    for &(a, b) in &bridges {
        bridge_of[a] = Some(b);
        bridge_of[b] = Some(a);
        uf.union(a, b);
    }
    let mut pair_of = vec![None; total];
    for &(a, b) in &pairing {
        pair_of[a] = Some(b);
        pair_of[b] = Some(a);
        uf.union(a, b);
    }
    let mut opp_side = vec![usize::MAX; total];
    // Walk a label chain from a held label to the other held end.
    let chain_end = |start: usize| -> Result<usize> {
        let mut label = start;
        for _ in 0..=total {
            let p = pair_of[label].ok_or_else(|| Error::Boundary(format!("label {label} is never sewn")))?;
            if holder[p].is_some() {
                return Ok(p);
            }
            label = bridge_of[p].ok_or_else(|| Error::Boundary(format!("label {p} is lost")))?;
        }
        Err(Error::Boundary("label chain does not terminate".into()))
    };
    for label in 0..total {
        let Some(s) = holder[label] else { continue };
        if opp_side[s] != usize::MAX {
            continue;
        }
        let end = chain_end(label)?;
        let t = holder[end].expect("chain ends at a held label");
        if t == s {
            return Err(Error::Boundary("a side is sewn to itself".into()));
        }
        opp_side[s] = t;
        opp_side[t] = s;
    }
    for s in 0..total {
        if let State::Glued(p) = state[s] {
            opp_side[s] = p;
        }
    }

    // Renumber surviving sides.
    let mut side_dart = vec![None; total];
    let mut dart_side_idx = Vec::new();
    for s in 0..total {
        if state[s] != State::Removed {
            side_dart[s] = Some(Dart(dart_side_idx.len()));
            dart_side_idx.push(s);
        }
    }
    let nd = dart_side_idx.len();
    if nd == 0 {
        return Err(Error::Rule("every cell is contracted; no edge is left".into()));
    }
    let opp: Vec<usize> = dart_side_idx
        .iter()
        .map(|&s| side_dart[opp_side[s]].expect("partners survive").0)
        .collect();
    let mut final_faces: Vec<Vec<usize>> = faces
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed_cell[*k])
        .map(|(_, f)| f.iter().map(|&s| side_dart[s].expect("surviving face").0).collect())
        .collect();
    if !exterior_face.is_empty() {
        final_faces.push(exterior_face.iter().map(|&s| side_dart[s].expect("exterior survives").0).collect());
    }
    // Dart carrying a label, following bridges when the label's own side was
    // contracted away.
    let label_dart = |label: usize| -> Option<Dart> {
        let mut cur = label;
        for _ in 0..=total {
            if let Some(s) = holder[cur] {
                return side_dart[s];
            }
            cur = pair_of[bridge_of[cur]?]?;
        }
        None
    };
    let bottom_leaf = label_dart(bottom[0]);
    let top_leaf = label_dart(top[n - 1]);
    let root = bottom_leaf.map(|d| d.0).unwrap_or(0);
    let map = CombinatorialMap::from_faces(opp, &final_faces, root).map_err(|e| match e {
        Error::InvalidMap(m) if m.contains("connected") => {
            Error::Rule("contraction pinches the map into several components".into())
        }
        other => other,
    })?;

    let mut class_members: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root = std::collections::HashMap::new();
    let mut dart_class = vec![0; nd];
    for s in 0..sides.len() {
        let r = uf.find(s);
        let idx = *class_of_root.entry(r).or_insert_with(|| {
            class_members.push(Vec::new());
            class_members.len() - 1
        });
        class_members[idx].push(s);
    }
    for (d, &s) in dart_side_idx.iter().enumerate() {
        dart_class[d] = class_of_root[&uf.find(s)];
    }
    let tree_dart = dart_side_idx.iter().map(|&s| s < first_phase.len() && first_phase[s]).collect();
    Ok(Mating {
        dart_side: dart_side_idx.iter().map(|&s| sides[s]).collect(),
        agrees: dart_side_idx.iter().map(|&s| agrees[s]).collect(),
        tree_dart,
        side_dart,
        class_members,
        dart_class,
        bottom_leaf,
        top_leaf,
        sides,
        map,
        diagram,
    })
}

fn empty_mating(diagram: MatingDiagram, boundary: &Boundary) -> Mating {
    let (map, sides) = match boundary {
        Boundary::Open => (
            CombinatorialMap::single_edge(),
            vec![
                SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Bottom) },
                SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Top) },
            ],
        ),
        _ => (
            CombinatorialMap::single_loop(),
            vec![
                SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Bottom) },
                SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Top) },
            ],
        ),
    };
    Mating {
        diagram,
        map,
        dart_side: sides.clone(),
        tree_dart: vec![false, false],
        agrees: vec![true, false],
        side_dart: vec![Some(Dart(0)), Some(Dart(1))],
        sides,
        class_members: vec![vec![0, 1]],
        dart_class: vec![0, 0],
        bottom_leaf: Some(Dart(0)),
        top_leaf: Some(Dart(1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{enumerate_walks, parse_walk_text, Family, Point, StepAlphabet};

    fn small(text: &str) -> Walk {
        parse_walk_text(text, &StepAlphabet::family(Family::Small)).unwrap()
    }

    const EXAMPLE: &str = "(1,0);(0,1);(-1,1);(1,0);(0,-1);(1,0);(0,-1);(0,1);(-1,0);(-1,0);(1,0);(-1,-1)";

    #[test]
    fn projections_of_the_twelve_step_walk() {
        let (l, r) = project(&small(EXAMPLE));
        assert_eq!(l.steps, vec![1, 0, -1, 1, 0, 1, 0, 0, -1, -1, 1, -1]);
        assert_eq!(r.steps, vec![0, 1, 1, 0, -1, 0, -1, 1, 0, 0, 0, -1]);
        let (l, r) = project(&small(""));
        assert!(l.steps.is_empty() && r.steps.is_empty());
        let ry = parse_walk_text("(0,1);(0,1);(1,-1);(-1,-1)", &StepAlphabet::family(Family::Ry)).unwrap();
        let (l, r) = project(&ry);
        assert_eq!(l.steps, vec![0, 0, 1, -1]);
        assert_eq!(r.steps, vec![1, 1, -1, -1]);
    }

    #[test]
    fn matchings() {
        let m = match_path(&LatticePath::from_updown("uudd").unwrap());
        assert_eq!(m.matched, vec![(1, 4), (2, 3)]);
        assert!(m.unmatched.is_empty());
        let m = match_path(&LatticePath::new(1, vec![1, -1, -1, 1]));
        assert_eq!(m.matched, vec![(1, 2)]);
        assert_eq!(m.unmatched, vec![3, 4]);
        let p = pairing_to_dyck(&[(1, 8), (2, 3), (4, 7), (5, 6)]).unwrap();
        assert_eq!(p, LatticePath::from_updown("uuduuddd").unwrap());
        assert!(pairing_to_dyck(&[(1, 3), (2, 4)]).is_err());
    }

    #[test]
    fn dyck_trees() {
        let ud = LatticePath::from_updown("ud").unwrap();
        assert_eq!(dyck_to_tree(&ud).unwrap(), BinaryTree::node(BinaryTree::Empty, BinaryTree::Empty));
        let uudd = LatticePath::from_updown("uudd").unwrap();
        let t = dyck_to_tree(&uudd).unwrap();
        assert_eq!(
            t,
            BinaryTree::node(BinaryTree::node(BinaryTree::Empty, BinaryTree::Empty), BinaryTree::Empty)
        );
        assert_eq!(t.size(), 2);
        assert_eq!(t.to_dyck(), uudd);
        assert!(dyck_to_tree(&LatticePath::from_updown("du").unwrap()).is_err());
    }

    #[test]
    fn diagram_cells() {
        let d = build_diagram(&small(EXAMPLE)).unwrap();
        assert_eq!(d.cells.len(), 12);
        assert_eq!(d.cells.iter().filter(|c| c.kind == CellKind::Straight).count(), 10);
        assert_eq!(d.oblique_count(), 2);
        assert!(build_diagram(&small("")).unwrap().cells.is_empty());
        let ry = parse_walk_text("(0,1);(0,1);(1,-1);(-1,-1)", &StepAlphabet::family(Family::Ry)).unwrap();
        let kinds: Vec<CellKind> = build_diagram(&ry).unwrap().cells.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![CellKind::Straight, CellKind::Straight, CellKind::Oblique, CellKind::Oblique]);
        assert!(matches!(build_diagram(&small("(-1,0)")), Err(Error::NotConfined(1))));
    }

    #[test]
    fn twelve_step_example_gives_ten_triangles_for_every_choice() {
        let w = small(EXAMPLE);
        for bits in ["00", "01", "10", "11"] {
            let m = mate(&w, &ContractionRule::from_bits(bits).unwrap(), &Boundary::Closed).unwrap();
            assert_eq!(m.map.euler_characteristic(), 2);
            assert_eq!(m.map.face_degrees(), vec![3; 10]);
            assert!(m.map.dual().vertex_degrees().iter().all(|&d| d == 3));
        }
        let kept = mate(&w, &ContractionRule::Keep, &Boundary::Closed).unwrap();
        let mut degs = kept.map.face_degrees();
        degs.sort_unstable();
        assert_eq!(degs, [vec![3; 10], vec![4; 2]].concat());
    }

    #[test]
    fn smallest_ry_walk_gives_two_triangles() {
        let ry = parse_walk_text("(0,1);(0,1);(1,-1);(-1,-1)", &StepAlphabet::family(Family::Ry)).unwrap();
        let m = mate(&ry, &ContractionRule::NorthwestSoutheast, &Boundary::Closed).unwrap();
        assert_eq!((m.map.num_vertices(), m.map.num_edges(), m.map.num_faces()), (3, 3, 2));
    }

    #[test]
    fn empty_walk() {
        let m = mate(&small(""), &ContractionRule::Keep, &Boundary::Closed).unwrap();
        assert_eq!(m.map.canonical_code(), CombinatorialMap::single_loop().canonical_code());
        let m = mate(&small(""), &ContractionRule::Keep, &Boundary::Open).unwrap();
        assert_eq!(m.map.canonical_code(), CombinatorialMap::single_edge().canonical_code());
    }

    #[test]
    fn boundary_errors() {
        let w = small("(1,0)");
        assert!(matches!(mate(&w, &ContractionRule::Keep, &Boundary::Closed), Err(Error::Boundary(_))));
        // bottom, top, one left segment: odd.
        assert!(matches!(
            mate(&w, &ContractionRule::Keep, &Boundary::Paired(vec![(0, 1)])),
            Err(Error::Boundary(_))
        ));
        let open = mate(&w, &ContractionRule::Keep, &Boundary::Open).unwrap();
        assert_eq!(open.map.euler_characteristic(), 2);
    }

    #[test]
    fn closed_small_step_walks_are_spheres() {
        let a = StepAlphabet::family(Family::Small);
        for len in 0..=6 {
            for w in enumerate_walks(&a, len, Point::ORIGIN, Point::ORIGIN).unwrap() {
                let m = mate(&w, &ContractionRule::Keep, &Boundary::Closed).unwrap();
                assert_eq!(m.map.euler_characteristic(), 2, "{w}");
                let straight = w.steps().iter().filter(|s| s.is_straight()).count();
                let mut expected = vec![3; straight];
                expected.extend(vec![4; len - straight]);
                let mut degs = m.map.face_degrees();
                degs.sort_unstable();
                if len > 0 {
                    assert_eq!(degs, expected, "{w}");
                }
                // Contracting can fail only by pinching, never silently.
                match mate(&w, &ContractionRule::NorthwestSoutheast, &Boundary::Closed) {
                    Ok(m) => assert_eq!(m.map.euler_characteristic(), 2, "{w}"),
                    Err(e) => assert!(matches!(e, Error::Rule(_)), "{w}: {e}"),
                }
            }
        }
    }
}
