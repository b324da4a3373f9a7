//! Closed walks with straight steps and triangulations whose dual carries a
//! Hamiltonian cycle. The cycle visits the faces in walk order; the edges it
//! does not cross form two trees, one per coordinate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::map::{Dart, DecoratedMap, Hamiltonian, UnionFind};
use crate::mating::{mate, Boundary, ContractionRule, SideKind};
use crate::walks::{Family, Point, Step, StepAlphabet, Walk};

use super::{expect_confined, expect_end, over};

/// Triangulation of a closed straight-step walk. The Hamiltonian decoration
/// crosses the top rung of every cell; the root lies in the first face.
pub fn mullin_map(walk: &Walk) -> Result<DecoratedMap> {
    let walk = over(walk, Family::Straight)?;
    expect_confined(&walk)?;
    expect_end(&walk, &[Point::ORIGIN])?;
    if walk.is_empty() {
        return Err(Error::WrongLength("empty walk has no face".into()));
    }
    let mating = mate(&walk, &ContractionRule::Keep, &Boundary::Closed)?;
    let mut tops = vec![Dart(0); walk.len()];
    for d in mating.map.darts() {
        let side = mating.dart_side[d.0];
        if side.kind == SideKind::Top {
            tops[side.cell.expect("cell side")] = d;
        }
    }
    let mut out = DecoratedMap::plain(mating.map.clone());
    out.hamiltonian = Some(Hamiltonian { crossings: tops });
    Ok(out)
}

/// Reads the walk back: in face `i`, entered across the previous crossing,
/// the side that is neither the entry nor the exit belongs to the horizontal
/// tree if it follows the exit in the face, otherwise to the vertical one.
/// Its first visit is a positive step, its second a negative one.
pub fn mullin_walk(map: &DecoratedMap) -> Result<Walk> {
    validate_mullin(map)?;
    let m = &map.map;
    let crossings = &map.hamiltonian.as_ref().expect("validated").crossings;
    let n = crossings.len();
    let mut seen = BTreeSet::new();
    let mut steps = Vec::with_capacity(n);
    for i in 0..n {
        let entry = m.opp(crossings[(i + n - 1) % n]);
        let exit = crossings[i];
        let (third, vertical) = if m.face_next(entry) == exit {
            (m.face_next(exit), true)
        } else {
            (m.face_next(entry), false)
        };
        let sign = if seen.insert(m.edge_id(third)) { 1 } else { -1 };
        steps.push(if vertical { Step::new(0, sign) } else { Step::new(sign, 0) });
    }
    let walk = Walk::from_origin(&StepAlphabet::family(Family::Straight), steps)?;
    expect_confined(&walk)?;
    expect_end(&walk, &[Point::ORIGIN])?;
    Ok(walk)
}

/// Triangulation, valid Hamiltonian decoration, root in the first face, and
/// the uncrossed edges forming exactly two trees.
pub fn validate_mullin(map: &DecoratedMap) -> Result<()> {
    let m = &map.map;
    if m.face_degrees().iter().any(|&d| d != 3) {
        return Err(Error::InvalidMap("not a triangulation".into()));
    }
    map.validate_hamiltonian()?;
    let crossings = &map.hamiltonian.as_ref().expect("validated").crossings;
    let fi = m.face_index();
    if fi[m.root().0] != fi[crossings[0].0] {
        return Err(Error::InvalidDecoration("root is not in the first face".into()));
    }
    let crossed: BTreeSet<Dart> = crossings.iter().map(|&d| m.edge_id(d)).collect();
    let vi = m.vertex_index();
    let mut uf = UnionFind::new(m.num_vertices());
    let mut uncrossed = 0;
    for e in m.edges() {
        if crossed.contains(&e) {
            continue;
        }
        uncrossed += 1;
        if !uf.union(vi[e.0], vi[m.opp(e).0]) {
            return Err(Error::InvalidDecoration("uncrossed edges contain a cycle".into()));
        }
    }
    if uncrossed + 2 != m.num_vertices() {
        return Err(Error::InvalidDecoration("uncrossed edges do not form two trees".into()));
    }
    Ok(())
}
