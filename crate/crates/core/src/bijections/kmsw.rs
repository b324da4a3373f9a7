//! Walks with steps `(1,-1)` and `(-i,j)` from the vertical axis to the
//! horizontal axis, and bipolar oriented maps.
//!
//! Only `(1,-1)` cells are contracted; a `(-i,j)` cell stays a face with
//! `i+j+2` sides. Every side is oriented west to east, which makes the map
//! acyclic with its unique source and sink on the outer face.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::map::DecoratedMap;
use crate::mating::{mate, Boundary, BoundarySide, ContractionRule, SideKind, SideRef};
use crate::walks::{Family, Step, Walk};

use super::{expect_confined, over};

/// Bipolar map of a walk from `(0,n)` to `(m,0)`. The root is the outer-face
/// dart along the bottom rung.
pub fn kmsw_to_bipolar(walk: &Walk) -> Result<DecoratedMap> {
    let walk = over(walk, Family::Kmsw)?;
    expect_confined(&walk)?;
    if walk.start().x != 0 || walk.end().y != 0 {
        return Err(Error::WrongEndpoint {
            expected: "a walk from (0,n) to (m,0)".into(),
            got: format!("{} to {}", walk.start(), walk.end()),
        });
    }
    let mating = mate(&walk, &ContractionRule::Tandem, &Boundary::Open)?;
    let orientation = mating
        .orientation()
        .ok_or_else(|| Error::InvalidDecoration("west-to-east orientation is inconsistent".into()))?;
    let root = mating
        .dart_of(SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Bottom) })
        .ok_or_else(|| Error::Boundary("outer face lost its bottom side".into()))?;
    let mut out = DecoratedMap::plain(mating.map.with_root(root));
    out.orientation = Some(orientation);
    Ok(out)
}

/// Face degrees a walk's non-contracted steps must produce.
pub fn expected_face_degrees(walk: &Walk) -> Vec<usize> {
    let mut d: Vec<usize> = walk
        .steps()
        .iter()
        .filter(|&&s| s != Step::new(1, -1))
        .map(|s| (s.dy - s.dx) as usize + 2)
        .collect();
    d.sort_unstable();
    d
}

/// Degrees of the faces other than the root face, sorted.
pub fn internal_face_degrees(map: &DecoratedMap) -> Vec<usize> {
    let m = &map.map;
    let outer = m.face_index()[m.root().0];
    let mut d: Vec<usize> = m
        .faces()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != outer)
        .map(|(_, f)| f.len())
        .collect();
    d.sort_unstable();
    d
}

/// Every edge oriented, no directed cycle, exactly one source and one sink,
/// both on the root face.
pub fn validate_bipolar(map: &DecoratedMap) -> Result<()> {
    let m = &map.map;
    let bad = |msg: &str| Err(Error::InvalidDecoration(msg.to_string()));
    let vi = m.vertex_index();
    let nv = m.num_vertices();
    let mut indeg = vec![0usize; nv];
    let mut outdeg = vec![0usize; nv];
    let mut succ = vec![Vec::new(); nv];
    for d in m.darts() {
        match map.is_forward(d) {
            None => return bad("edge without orientation"),
            Some(true) => {
                let (a, b) = (vi[d.0], vi[m.opp(d).0]);
                outdeg[a] += 1;
                indeg[b] += 1;
                succ[a].push(b);
            }
            Some(false) => {}
        }
    }
    let sources: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<usize> = (0..nv).filter(|&v| outdeg[v] == 0).collect();
    if sources.len() != 1 || sinks.len() != 1 {
        return bad("orientation needs exactly one source and one sink");
    }
    let fi = m.face_index();
    let outer = fi[m.root().0];
    let on_outer = |v: usize| m.darts().any(|d| vi[d.0] == v && fi[d.0] == outer);
    if !on_outer(sources[0]) || !on_outer(sinks[0]) {
        return bad("source or sink is not on the outer face");
    }
    let mut queue: VecDeque<usize> = sources.into_iter().collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if seen != nv {
        return bad("orientation has a directed cycle");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{parse_walk_text, StepAlphabet};

    const FIFTEEN_STEPS: &str =
        "(1,-1);(0,2);(-1,0);(0,1);(1,-1);(1,-1);(-1,1);(0,1);(1,-1);(1,-1);(1,-1);(1,-1);(-1,0);(-2,1);(1,-1)";

    fn parse(text: &str) -> Walk {
        parse_walk_text(text, &StepAlphabet::family(Family::Kmsw).bounded(3)).unwrap()
    }

    #[test]
    fn fifteen_step_example() {
        let w = parse(&format!("{FIFTEEN_STEPS} @ (0,2)"));
        assert_eq!(w.end(), crate::walks::Point { x: 3, y: 0 });
        let map = kmsw_to_bipolar(&w).unwrap();
        validate_bipolar(&map).unwrap();
        assert_eq!(internal_face_degrees(&map), vec![3, 3, 3, 3, 4, 4, 5]);
        assert_eq!(internal_face_degrees(&map), expected_face_degrees(&w));
        assert_eq!(map.map.num_edges(), w.len() + 1);
    }

    #[test]
    fn smallest_cases() {
        let map = kmsw_to_bipolar(&parse("")).unwrap();
        assert_eq!(map.map.num_edges(), 1);
        validate_bipolar(&map).unwrap();
        let map = kmsw_to_bipolar(&parse("(1,-1) @ (0,1)")).unwrap();
        validate_bipolar(&map).unwrap();
        assert_eq!((map.map.num_vertices(), map.map.num_edges()), (3, 2));
        assert!(matches!(kmsw_to_bipolar(&parse("(0,1)")), Err(Error::WrongEndpoint { .. })));
    }
}
