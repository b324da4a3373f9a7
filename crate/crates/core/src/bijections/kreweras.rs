//! Kreweras walks and loopless triangulations with a spanning tree of the
//! dual cubic map.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::map::{Dart, DecoratedMap};
use crate::mating::{mate, Boundary, ContractionRule, SideKind};
use crate::walks::{Family, Point, Walk};

use super::{expect_confined, expect_end, expect_multiple, over};

/// Mates a closed Kreweras walk. The tree decoration lists the primal edges
/// whose dual edges form the spanning tree of the dual.
///
/// Every dual half-edge is oriented out of its triangle except the one
/// crossing the triangle's base, which points in. The tree keeps the dual
/// edges whose two halves agree, leaving out the root edge that closes the
/// picture.
pub fn kreweras_forward(walk: &Walk) -> Result<DecoratedMap> {
    let walk = over(walk, Family::Kreweras)?;
    expect_confined(&walk)?;
    expect_multiple(&walk, 3)?;
    expect_end(&walk, &[Point::ORIGIN])?;
    let mating = mate(&walk, &ContractionRule::Kreweras, &Boundary::Closed)?;
    let map = mating.map.clone();
    let is_base = |d: Dart| mating.dart_side[d.0].kind == SideKind::Bottom;
    let root_edge = map.edge_id(map.root());
    let tree: BTreeSet<Dart> = map
        .edges()
        .into_iter()
        .filter(|&e| e != root_edge && is_base(e) != is_base(map.opp(e)))
        .collect();
    let mut out = DecoratedMap::plain(map);
    out.tree = Some(tree);
    Ok(out)
}

/// Checks the output shape: a loopless triangulation whose tree decoration is
/// a spanning tree of the dual.
pub fn validate_kreweras(map: &DecoratedMap) -> Result<()> {
    let m = &map.map;
    if m.face_degrees().iter().any(|&d| d != 3) {
        return Err(Error::InvalidMap("not a triangulation".into()));
    }
    if !m.is_loopless() {
        return Err(Error::InvalidMap("triangulation has a loop".into()));
    }
    let tree = map
        .tree
        .as_ref()
        .ok_or_else(|| Error::InvalidDecoration("no dual tree".into()))?;
    if !m.dual().validate_spanning_tree(tree) {
        return Err(Error::InvalidDecoration("dual tree does not span the dual".into()));
    }
    Ok(())
}
