//! Schnyder woods and tandem walks in the transposed convention
//! (`a=(1,0)`, `b=(-1,1)`, `c=(0,-1)`) from `(0,0)` to `(1,0)` avoiding `bc`.
//!
//! The walk is transposed and mated with only the `b` cells contracted and the
//! top and bottom rungs left open; they close the outer triangle together with
//! the last `a` segment. The right path gives the blue tree, bases of `c`
//! triangles are red and every other rung-like edge is green.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, Color, Dart, DecoratedMap};
use crate::mating::{mate, Boundary, BoundarySide, ContractionRule, SideKind, SideRef};
use crate::walks::{Family, Point, Step, StepAlphabet, Walk};

use super::{expect_confined, expect_end, over};

const END: Point = Point { x: 1, y: 0 };

fn clockwise(m: &CombinatorialMap, d: Dart) -> Dart {
    m.rot_inv(d)
}

fn schnyder_walk(walk: &Walk) -> Result<Walk> {
    let walk = over(walk, Family::Schnyder)?;
    if let Some((pattern, at)) = walk.forbidden_violation() {
        return Err(Error::ForbiddenPattern(pattern, at));
    }
    expect_confined(&walk)?;
    expect_end(&walk, &[END])?;
    Ok(walk)
}

/// Builds the wood. The root is the outer dart of the blue external edge.
pub fn tandem_to_schnyder(walk: &Walk) -> Result<DecoratedMap> {
    let walk = schnyder_walk(walk)?;
    let transposed: Vec<Step> = walk.steps().iter().map(|s| s.transpose()).collect();
    let tandem = Walk::from_origin(&StepAlphabet::family(Family::Tandem), transposed)?;
    let mating = mate(&tandem, &ContractionRule::Tandem, &Boundary::Open)?;
    let agrees = mating
        .orientation()
        .ok_or_else(|| Error::InvalidDecoration("inconsistent orientation".into()))?;
    let is_c_base = |s: &SideRef| {
        s.kind == SideKind::Bottom && s.cell.is_some_and(|k| tandem.steps()[k] == Step::new(-1, 0))
    };
    let mut colors = BTreeMap::new();
    let mut orientation = BTreeSet::new();
    for e in mating.map.edges() {
        let sides = mating.edge_sides(e);
        let outer_rung = sides.iter().any(|s| {
            matches!(s.kind, SideKind::Exterior(BoundarySide::Bottom) | SideKind::Exterior(BoundarySide::Top))
        });
        if outer_rung {
            continue;
        }
        let color = if sides.iter().any(|s| matches!(s.kind, SideKind::Right(_))) {
            Color::Blue
        } else if sides.iter().any(is_c_base) {
            Color::Red
        } else {
            Color::Green
        };
        colors.insert(e, color);
        let along = if agrees.contains(&e) { e } else { mating.map.opp(e) };
        orientation.insert(if color == Color::Green { mating.map.opp(along) } else { along });
    }
    let root = mating
        .dart_of(SideRef { cell: None, kind: SideKind::Exterior(BoundarySide::Right(last_right_unit(&mating)?)) })
        .ok_or_else(|| Error::Boundary("outer triangle lost its blue side".into()))?;
    let mut out = DecoratedMap::plain(mating.map.with_root(root));
    out.colors = Some(colors);
    out.orientation = Some(orientation);
    Ok(out)
}

fn last_right_unit(mating: &crate::mating::Mating) -> Result<usize> {
    match mating.diagram.right_unmatched().as_slice() {
        [u] => Ok(*u),
        _ => Err(Error::Boundary("expected exactly one unmatched vertical step".into())),
    }
}

/// External vertices `(green, red, blue)` of a wood, as vertex indices.
fn external(map: &DecoratedMap) -> Result<(usize, usize, usize)> {
    let m = &map.map;
    let vi = m.vertex_index();
    let root = m.root();
    let outer: Vec<Dart> = m.faces()[m.face_index()[root.0]].clone();
    if outer.len() != 3 {
        return Err(Error::InvalidMap("outer face is not a triangle".into()));
    }
    let (tail, head) = match map.is_forward(root) {
        Some(true) => (vi[root.0], vi[m.opp(root).0]),
        Some(false) => (vi[m.opp(root).0], vi[root.0]),
        None => return Err(Error::InvalidDecoration("root edge is not oriented".into())),
    };
    if map.color_of(root) != Some(Color::Blue) {
        return Err(Error::InvalidDecoration("root edge is not blue".into()));
    }
    let green = outer
        .iter()
        .map(|d| vi[d.0])
        .find(|&v| v != tail && v != head)
        .ok_or_else(|| Error::InvalidMap("outer face has a repeated vertex".into()))?;
    Ok((green, tail, head))
}

fn is_incoming(map: &DecoratedMap, d: Dart) -> bool {
    map.is_forward(d) == Some(false)
}

/// Checks triangulation, colors, orientations, the clockwise local condition
/// at every internal vertex and that each color class is a tree directed to
/// its external vertex.
pub fn validate_schnyder(map: &DecoratedMap) -> Result<()> {
    let m = &map.map;
    let bad = |msg: String| Err(Error::InvalidDecoration(msg));
    if m.face_degrees().iter().any(|&d| d != 3) {
        return Err(Error::InvalidMap("not a triangulation".into()));
    }
    let (green, red, blue) = external(map)?;
    let vi = m.vertex_index();
    let ext = [green, red, blue];
    let mut parent: BTreeMap<(usize, Color), usize> = BTreeMap::new();
    for (v, darts) in m.vertices().iter().enumerate() {
        if ext.contains(&v) {
            continue;
        }
        // Start at the outgoing blue edge and read clockwise.
        let start = darts
            .iter()
            .copied()
            .find(|&d| map.color_of(d) == Some(Color::Blue) && map.is_forward(d) == Some(true));
        let Some(start) = start else {
            return bad(format!("internal vertex {v} has no outgoing blue edge"));
        };
        let mut seq = Vec::new();
        let mut d = start;
        loop {
            let Some(c) = map.color_of(d) else {
                return bad(format!("uncolored edge at internal vertex {v}"));
            };
            if map.is_forward(d).is_none() {
                return bad(format!("unoriented edge at internal vertex {v}"));
            }
            seq.push((c, is_incoming(map, d)));
            if !is_incoming(map, d) {
                if parent.insert((v, c), vi[m.opp(d).0]).is_some() {
                    return bad(format!("vertex {v} has two outgoing {} edges", c.name()));
                }
            }
            d = clockwise(m, d);
            if d == start {
                break;
            }
        }
        if !local_condition(&seq) {
            return bad(format!("local condition fails at vertex {v}"));
        }
    }
    for (color, root) in [(Color::Green, green), (Color::Red, red), (Color::Blue, blue)] {
        for v in 0..m.num_vertices() {
            if ext.contains(&v) {
                continue;
            }
            let mut cur = v;
            let mut steps = 0;
            while cur != root {
                cur = match parent.get(&(cur, color)) {
                    Some(&p) => p,
                    None => return bad(format!("{} path from vertex {v} stops early", color.name())),
                };
                steps += 1;
                if steps > m.num_vertices() {
                    return bad(format!("{} edges contain a cycle", color.name()));
                }
            }
        }
    }
    Ok(())
}

/// Out-blue, in-red*, out-green, in-blue*, out-red, in-green*.
fn local_condition(seq: &[(Color, bool)]) -> bool {
    let pattern = [
        (Color::Blue, false),
        (Color::Red, true),
        (Color::Green, false),
        (Color::Blue, true),
        (Color::Red, false),
        (Color::Green, true),
    ];
    let mut i = 0;
    for (k, &(c, incoming)) in pattern.iter().enumerate() {
        if incoming {
            while i < seq.len() && seq[i] == (c, true) {
                i += 1;
            }
        } else {
            if seq.get(i) != Some(&(c, false)) {
                return false;
            }
            i += 1;
        }
        let _ = k;
    }
    i == seq.len()
}

/// Contour of the blue tree, clockwise from the green side of the blue root:
/// `a` on entering a vertex, `c` for each incoming red edge, `b` on leaving;
/// the last `b` is dropped.
pub fn schnyder_to_tandem(map: &DecoratedMap) -> Result<Walk> {
    validate_schnyder(map)?;
    let m = &map.map;
    let (green, _red, blue) = external(map)?;
    let vi = m.vertex_index();
    let darts = m.vertices();
    let start = darts[blue]
        .iter()
        .copied()
        .find(|&d| vi[m.opp(d).0] == green)
        .ok_or_else(|| Error::InvalidMap("blue and green external vertices are not adjacent".into()))?;
    let (a, b, c) = (Step::new(1, 0), Step::new(-1, 1), Step::new(0, -1));
    let mut steps = Vec::new();
    // Explicit stack of (entry dart, current dart) to scan clockwise.
    let mut stack = vec![(start, clockwise(m, start))];
    while let Some(&mut (entry, ref mut d)) = stack.last_mut() {
        if *d == entry {
            stack.pop();
            if !stack.is_empty() {
                steps.push(b);
            }
            continue;
        }
        let cur = *d;
        *d = clockwise(m, cur);
        if !is_incoming(map, cur) {
            continue;
        }
        match map.color_of(cur) {
            Some(Color::Red) => steps.push(c),
            Some(Color::Blue) => {
                steps.push(a);
                let child = m.opp(cur);
                stack.push((child, clockwise(m, child)));
            }
            _ => {}
        }
    }
    if steps.pop() != Some(b) {
        return Err(Error::InvalidDecoration("blue contour does not end with a descent".into()));
    }
    schnyder_walk(&Walk::from_origin(&StepAlphabet::family(Family::Schnyder), steps)?)
}
