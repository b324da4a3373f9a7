//! Walks with steps `(0,k)`, `(1,-1)`, `(-1,-1)` and maps with a complete
//! spanning tree. The vertical coordinate is the contour of the tree, the
//! horizontal coordinate pairs its leaves. Reversed-Y walks give cubic maps,
//! `k = 2` only gives quartic maps.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, Dart, DecoratedMap};
use crate::mating::{build_diagram, mate_diagram, Boundary, BoundarySide, ContractionRule};
use crate::walks::{Family, Point, Step, StepAlphabet, Walk};

use super::{expect_confined, expect_end, over};

const SPECIAL_END: Point = Point { x: 0, y: 0 };
const OPEN_END: Point = Point { x: 2, y: 0 };

/// Cubic map with a complete spanning tree rooted at a marked leaf.
pub fn ry_forward(walk: &Walk) -> Result<DecoratedMap> {
    let walk = over(walk, Family::Ry)?;
    super::expect_multiple(&walk, 4)?;
    forward(&walk)
}

pub fn ry_inverse(map: &DecoratedMap) -> Result<Walk> {
    if map.map.vertex_degrees().iter().any(|&d| d != 3) {
        return Err(Error::InvalidDecoration("map is not cubic".into()));
    }
    lukasiewicz_inverse(map)?.with_alphabet(Arc::new(StepAlphabet::family(Family::Ry)))
}

pub fn quartic_forward(walk: &Walk) -> Result<DecoratedMap> {
    let walk = over(walk, Family::Quartic)?;
    super::expect_multiple(&walk, 3)?;
    forward(&walk)
}

pub fn lukasiewicz_forward(walk: &Walk) -> Result<DecoratedMap> {
    forward(&over(walk, Family::Lukasiewicz)?)
}

fn forward(walk: &Walk) -> Result<DecoratedMap> {
    expect_confined(walk)?;
    expect_end(walk, &[SPECIAL_END, OPEN_END])?;
    let diagram = build_diagram(walk)?;
    let boundary = if walk.end() == SPECIAL_END {
        Boundary::Closed
    } else {
        // Bottom rung with the first unmatched horizontal up step, the second
        // one with the top rung.
        let sides = diagram.boundary();
        let unmatched = diagram.left_unmatched();
        let at = |b: BoundarySide| sides.iter().position(|&s| s == b).expect("boundary side");
        Boundary::Paired(vec![
            (at(BoundarySide::Bottom), at(BoundarySide::Left(unmatched[0]))),
            (at(BoundarySide::Left(unmatched[1])), at(BoundarySide::Top)),
        ])
    };
    let mating = mate_diagram(diagram, &ContractionRule::NorthwestSoutheast, &boundary)?;
    let root = mating.bottom_leaf.ok_or_else(|| Error::Rule("bottom rung lost".into()))?;
    let mut out = DecoratedMap::plain(mating.map.dual().with_root(root));
    out.tree = Some(mating.tree_edges());
    out.marked_leaf = Some(root);
    Ok(out)
}

/// Checks that the tree decoration spans every vertex and that the root is a
/// leaf, i.e. half of an edge outside the tree.
pub fn validate_complete_tree(map: &DecoratedMap) -> Result<&BTreeSet<Dart>> {
    let tree = map
        .tree
        .as_ref()
        .ok_or_else(|| Error::InvalidDecoration("no spanning tree".into()))?;
    if !map.map.validate_spanning_tree(tree) {
        return Err(Error::InvalidDecoration("tree edges do not form a spanning tree".into()));
    }
    if tree.contains(&map.map.edge_id(map.map.root())) {
        return Err(Error::InvalidDecoration("root is not a leaf".into()));
    }
    Ok(tree)
}

enum Item {
    Vertex(usize),
    Leaf(Dart),
}

pub fn lukasiewicz_inverse(map: &DecoratedMap) -> Result<Walk> {
    let tree = validate_complete_tree(map)?;
    let mut items = Vec::new();
    contour(&map.map, tree, map.map.root(), &mut items);
    finish(map, items)
}

/// Whether the root leaf is paired with the last leaf of the contour, which
/// is what walks ending at the origin produce.
pub fn is_special(map: &DecoratedMap) -> Result<bool> {
    let tree = validate_complete_tree(map)?;
    let mut items = Vec::new();
    contour(&map.map, tree, map.map.root(), &mut items);
    match items.last() {
        Some(Item::Leaf(d)) => Ok(map.map.opp(*d) == map.map.root()),
        _ => Err(Error::InvalidDecoration("contour does not end on a leaf".into())),
    }
}

/// Preorder of the tree: each vertex is entered through one dart and its other
/// darts are its children, in rotation order.
fn contour(m: &CombinatorialMap, tree: &BTreeSet<Dart>, entry: Dart, items: &mut Vec<Item>) {
    let mut children = Vec::new();
    let mut d = m.rot(entry);
    while d != entry {
        children.push(d);
        d = m.rot(d);
    }
    items.push(Item::Vertex(children.len()));
    for c in children {
        if tree.contains(&m.edge_id(c)) {
            contour(m, tree, m.opp(c), items);
        } else {
            items.push(Item::Leaf(c));
        }
    }
}

fn finish(map: &DecoratedMap, mut items: Vec<Item>) -> Result<Walk> {
    let m = &map.map;
    let root = m.root();
    let last = match items.pop() {
        Some(Item::Leaf(d)) => d,
        _ => return Err(Error::InvalidDecoration("contour does not end on a leaf".into())),
    };
    let mut position = vec![usize::MAX; m.num_darts()];
    for (i, item) in items.iter().enumerate() {
        if let Item::Leaf(d) = item {
            position[d.0] = i;
        }
    }
    let steps = items
        .iter()
        .enumerate()
        .map(|(i, item)| match *item {
            Item::Vertex(children) => Step::new(0, children as i64 - 1),
            Item::Leaf(d) => {
                let p = m.opp(d);
                let dx = if p == root || p == last || position[p.0] > i { 1 } else { -1 };
                Step::new(dx, -1)
            }
        })
        .collect();
    let walk = Walk::new(Arc::new(StepAlphabet::family(Family::Lukasiewicz)), Point::ORIGIN, steps)?;
    expect_confined(&walk)?;
    expect_end(&walk, &[SPECIAL_END, OPEN_END])?;
    Ok(walk)
}
