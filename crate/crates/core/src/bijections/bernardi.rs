//! Step-by-step growth of the dual cubic map of a Kreweras walk.
//!
//! Each `a` or `b` step hangs a new trivalent vertex on the arrow; the new
//! vertex keeps one free half-edge (on the left for `a`, on the right for `b`)
//! and passes the arrow to its top. A `c` step sews the arrow to the closest
//! free half-edge on one side and moves the arrow to the closest free half-edge
//! on the other side: the one nearer the root of the growing tree is sewn.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, Dart, DecoratedMap};
use crate::walks::{Family, Point, Step, Walk};

use super::{expect_confined, expect_end, expect_multiple, over};

/// Partial cubic map during the growth.
#[derive(Clone, Debug, Default)]
pub struct GrowthState {
    /// Partner of each half-edge, once sewn.
    pub opp: Vec<Option<usize>>,
    /// Counterclockwise successor of each half-edge around its vertex.
    pub rot: Vec<usize>,
    /// Vertex of each half-edge.
    pub owner: Vec<usize>,
    /// Parent of each vertex in the growing tree.
    pub parent: Vec<Option<usize>>,
    /// Free half-edges left and right of the arrow, nearest last.
    pub left_free: Vec<usize>,
    pub right_free: Vec<usize>,
    /// Half-edge carrying the arrow; `None` before the first step.
    pub arrow: Option<usize>,
    /// Edges of the growing tree, as one of their half-edges.
    pub tree: Vec<usize>,
    /// Every `(s, t)` choice made by a `c` step.
    pub choices: Vec<(usize, usize)>,
}

impl GrowthState {
    fn sew(&mut self, a: usize, b: usize) {
        self.opp[a] = Some(b);
        self.opp[b] = Some(a);
    }

    /// Hangs a new vertex on the arrow. Rotation: base, then the left free
    /// half-edge or the new arrow, then the other.
    fn grow(&mut self, free_on_left: bool) {
        let v = self.parent.len();
        let base = self.opp.len();
        let (free, top) = (base + 1, base + 2);
        self.opp.extend([None, None, None]);
        self.owner.extend([v, v, v]);
        if free_on_left {
            self.rot.extend([free, top, base]);
            self.left_free.push(free);
        } else {
            self.rot.extend([top, base, free]);
            self.right_free.push(free);
        }
        self.parent.push(self.arrow.map(|a| self.owner[a]));
        if let Some(a) = self.arrow {
            self.sew(a, base);
            self.tree.push(base);
        }
        self.arrow = Some(top);
    }

    fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        loop {
            if v == anc {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    fn close_step(&mut self) -> Result<()> {
        let arrow = self.arrow.ok_or_else(|| Error::Growth("c step before any vertex".into()))?;
        let (Some(&l), Some(&r)) = (self.left_free.last(), self.right_free.last()) else {
            return Err(Error::Growth("no free half-edge on one side of the arrow".into()));
        };
        let (ol, or) = (self.owner[l], self.owner[r]);
        let left_is_ancestor = if self.is_ancestor(ol, or) {
            true
        } else if self.is_ancestor(or, ol) {
            false
        } else {
            return Err(Error::Growth("candidate half-edges are not nested in the tree".into()));
        };
        self.left_free.pop();
        self.right_free.pop();
        let (s, t) = if left_is_ancestor { (l, r) } else { (r, l) };
        self.sew(arrow, s);
        self.choices.push((s, t));
        self.arrow = Some(t);
        Ok(())
    }
}

/// Grows the dual of the Kreweras triangulation and returns the triangulation
/// with its dual tree, rooted like [`super::kreweras_forward`].
pub fn bernardi_grow(walk: &Walk) -> Result<DecoratedMap> {
    Ok(grow(walk)?.1)
}

/// Same as [`bernardi_grow`], also returning the final growth state.
pub fn grow(walk: &Walk) -> Result<(GrowthState, DecoratedMap)> {
    let walk = over(walk, Family::Kreweras)?;
    expect_confined(&walk)?;
    expect_multiple(&walk, 3)?;
    expect_end(&walk, &[Point::ORIGIN])?;
    if walk.is_empty() {
        return Err(Error::Growth("empty walk".into()));
    }
    let mut g = GrowthState::default();
    for &s in walk.steps() {
        match s {
            Step { dx: 1, dy: 0 } => g.grow(true),
            Step { dx: 0, dy: 1 } => g.grow(false),
            _ => g.close_step()?,
        }
    }
    // Final step: the last arrow closes onto the base of the first vertex.
    let arrow = g.arrow.expect("non-empty walk");
    if !g.left_free.is_empty() || !g.right_free.is_empty() {
        return Err(Error::Growth("free half-edges remain".into()));
    }
    g.sew(arrow, 0);
    let opp = g.opp.iter().map(|o| o.expect("every half-edge sewn")).collect();
    let cubic = CombinatorialMap::from_permutations(opp, g.rot.clone(), 0)?;
    let tree: BTreeSet<Dart> = g.tree.iter().map(|&d| cubic.edge_id(Dart(d))).collect();
    let mut out = DecoratedMap::plain(cubic.dual());
    out.tree = Some(tree);
    Ok((g, out))
}
