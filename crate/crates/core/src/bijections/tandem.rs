//! Tandem walks (`a=(0,1)`, `b=(1,-1)`, `c=(-1,0)`), prographs and
//! rectangular standard Young tableaux.
//!
//! A prograph is the dual of the triangulation obtained by contracting every
//! `b` cell along its bent: each `a` cell becomes a coproduct (one input, two
//! outputs) and each `c` cell a product (two inputs, one output). Edges run
//! from bottom to top; the root edge joins the global output back to the
//! global input.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{Dart, DecoratedMap};
use crate::mating::{mate, Boundary, ContractionRule, SideKind};
use crate::walks::{Family, Point, Step, StepAlphabet, Walk};

use super::ry::lukasiewicz_inverse;
use super::{expect_confined, expect_end, expect_multiple, over};

/// Oriented cubic map: `map.orientation` holds the output half of every edge
/// and the root is the global input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prograph {
    pub map: DecoratedMap,
}

impl Prograph {
    pub fn is_output(&self, d: Dart) -> bool {
        self.map.orientation.as_ref().is_some_and(|o| o.contains(&d))
    }

    /// Vertices with two inputs, as indices into `map.map.vertices()`.
    pub fn products(&self) -> Vec<usize> {
        self.vertices_with_outputs(1)
    }

    pub fn coproducts(&self) -> Vec<usize> {
        self.vertices_with_outputs(2)
    }

    fn vertices_with_outputs(&self, k: usize) -> Vec<usize> {
        self.map
            .map
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().filter(|&&d| self.is_output(d)).count() == k)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn canonical_code(&self) -> Vec<usize> {
        self.map.canonical_code()
    }
}

fn tandem_walk(walk: &Walk) -> Result<Walk> {
    let walk = over(walk, Family::Tandem)?;
    expect_confined(&walk)?;
    expect_multiple(&walk, 3)?;
    expect_end(&walk, &[Point::ORIGIN])?;
    Ok(walk)
}

pub fn tandem_to_prograph(walk: &Walk) -> Result<Prograph> {
    let walk = tandem_walk(walk)?;
    if walk.is_empty() {
        return Err(Error::WrongLength("empty walk has no prograph".into()));
    }
    let mating = mate(&walk, &ContractionRule::Tandem, &Boundary::Closed)?;
    let outputs: BTreeSet<Dart> = mating
        .map
        .darts()
        .filter(|d| matches!(mating.dart_side[d.0].kind, SideKind::Top | SideKind::Right(_)))
        .collect();
    let mut map = DecoratedMap::plain(mating.map.dual());
    map.orientation = Some(outputs);
    let p = Prograph { map };
    validate_prograph(&p)?;
    Ok(p)
}

/// Every vertex a product or a coproduct, every edge from an output to an
/// input, the root a global input, and no directed cycle once the root edge
/// is removed.
pub fn validate_prograph(p: &Prograph) -> Result<()> {
    let m = &p.map.map;
    let bad = |msg: &str| Err(Error::InvalidDecoration(msg.to_string()));
    if p.map.orientation.is_none() {
        return bad("prograph has no orientation");
    }
    if m.vertex_degrees().iter().any(|&d| d != 3) {
        return bad("prograph vertex is not trivalent");
    }
    for d in m.darts() {
        if p.is_output(d) == p.is_output(m.opp(d)) {
            return bad("edge does not join an output to an input");
        }
    }
    for v in m.vertices() {
        let outs = v.iter().filter(|&&d| p.is_output(d)).count();
        if outs == 0 || outs == 3 {
            return bad("vertex is neither a product nor a coproduct");
        }
    }
    let root = m.root();
    if p.is_output(root) {
        return bad("root is not an input");
    }
    // Kahn's algorithm without the root edge.
    let vi = m.vertex_index();
    let nv = m.num_vertices();
    let root_edge = m.edge_id(root);
    let mut indeg = vec![0usize; nv];
    let mut out_edges = vec![Vec::new(); nv];
    for d in m.darts() {
        if p.is_output(d) && m.edge_id(d) != root_edge {
            out_edges[vi[d.0]].push(vi[m.opp(d).0]);
            indeg[vi[m.opp(d).0]] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &out_edges[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if seen != nv {
        return bad("prograph has a directed cycle");
    }
    Ok(())
}

/// Cuts the second input of every product and the root edge; what remains is
/// a complete spanning tree whose contour is a reversed-Y walk, in which each
/// `(0,1)` immediately followed by `(-1,-1)` is one `c` step.
pub fn prograph_to_tandem(p: &Prograph) -> Result<Walk> {
    validate_prograph(p)?;
    let m = &p.map.map;
    let mut cut = BTreeSet::new();
    cut.insert(m.edge_id(m.root()));
    for d in m.darts() {
        let before = m.rot_inv(d);
        if p.is_output(d) && !p.is_output(before) && !p.is_output(m.rot_inv(before)) {
            // `d` is a product's output; the input just before it is cut.
            cut.insert(m.edge_id(before));
        }
    }
    let mut with_tree = p.map.clone();
    with_tree.tree = Some(m.edges().into_iter().filter(|e| !cut.contains(e)).collect());
    let ry = lukasiewicz_inverse(&with_tree)?;
    let mut steps = Vec::new();
    let mut it = ry.steps().iter().peekable();
    while let Some(&s) = it.next() {
        if s == Step::new(0, 1) && it.peek() == Some(&&Step::new(-1, -1)) {
            it.next();
            steps.push(Step::new(-1, 0));
        } else if s.dy == 1 && s.dx == 0 || s == Step::new(1, -1) {
            steps.push(s);
        } else {
            return Err(Error::InvalidDecoration(format!("contour step {s} has no tandem reading")));
        }
    }
    let walk = Walk::new(Arc::new(StepAlphabet::family(Family::Tandem)), Point::ORIGIN, steps)?;
    tandem_walk(&walk)
}

/// Rectangular standard Young tableau with three rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syt {
    pub rows: [Vec<usize>; 3],
}

impl Syt {
    pub fn new(rows: [Vec<usize>; 3]) -> Result<Self> {
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTableau("rows have different lengths".into()));
        }
        let mut all: Vec<usize> = rows.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (1..=3 * n).collect::<Vec<_>>() {
            return Err(Error::InvalidTableau(format!("entries are not 1..{}", 3 * n)));
        }
        for r in &rows {
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTableau("row is not increasing".into()));
            }
        }
        for k in 0..n {
            if !(rows[0][k] < rows[1][k] && rows[1][k] < rows[2][k]) {
                return Err(Error::InvalidTableau(format!("column {} is not increasing", k + 1)));
            }
        }
        Ok(Syt { rows })
    }

    /// Three lines of comma-separated entries, first row first.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != 3 {
            return Err(Error::InvalidTableau(format!("expected 3 rows, got {}", lines.len())));
        }
        let mut rows: [Vec<usize>; 3] = Default::default();
        for (row, line) in rows.iter_mut().zip(&lines) {
            *row = line
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidTableau(format!("bad entry: {e}")))?;
        }
        Syt::new(rows)
    }
}

impl fmt::Display for Syt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Row `i` lists the positions of the `i`-th letter.
pub fn tandem_to_syt(walk: &Walk) -> Result<Syt> {
    let walk = tandem_walk(walk)?;
    let mut rows: [Vec<usize>; 3] = Default::default();
    for (i, s) in walk.steps().iter().enumerate() {
        let r = match (s.dx, s.dy) {
            (0, 1) => 0,
            (1, -1) => 1,
            _ => 2,
        };
        rows[r].push(i + 1);
    }
    Syt::new(rows)
}

pub fn syt_to_tandem(t: &Syt) -> Result<Walk> {
    let t = Syt::new(t.rows.clone())?;
    let letters = [Step::new(0, 1), Step::new(1, -1), Step::new(-1, 0)];
    let mut steps = vec![Step::new(0, 0); 3 * t.rows[0].len()];
    for (r, row) in t.rows.iter().enumerate() {
        for &p in row {
            steps[p - 1] = letters[r];
        }
    }
    tandem_walk(&Walk::from_origin(&StepAlphabet::family(Family::Tandem), steps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijections::ry_forward;
    use crate::walks::enumerate_walks;

    fn tandem(word: &str) -> Walk {
        Walk::from_word(&StepAlphabet::family(Family::Tandem), word).unwrap()
    }

    #[test]
    fn smallest_prograph() {
        let p = tandem_to_prograph(&tandem("abc")).unwrap();
        assert_eq!((p.products().len(), p.coproducts().len()), (1, 1));
        assert_eq!(prograph_to_tandem(&p).unwrap().word().unwrap(), "abc");
        let p = tandem_to_prograph(&tandem("abacbc")).unwrap();
        assert_eq!((p.products().len(), p.coproducts().len()), (2, 2));
    }

    #[test]
    fn round_trips_and_ry_compatibility() {
        let a = StepAlphabet::family(Family::Tandem);
        let ry = StepAlphabet::family(Family::Ry);
        for len in [3, 6] {
            for w in enumerate_walks(&a, len, Point::ORIGIN, Point::ORIGIN).unwrap() {
                let p = tandem_to_prograph(&w).unwrap();
                assert_eq!(prograph_to_tandem(&p).unwrap().steps(), w.steps(), "{w}");
                assert_eq!(syt_to_tandem(&tandem_to_syt(&w).unwrap()).unwrap().steps(), w.steps());
                let expanded: Vec<Step> = w
                    .steps()
                    .iter()
                    .flat_map(|&s| if s == Step::new(-1, 0) { vec![Step::new(0, 1), Step::new(-1, -1)] } else { vec![s] })
                    .collect();
                let r = ry_forward(&Walk::from_origin(&ry, expanded).unwrap()).unwrap();
                assert_eq!(r.map.canonical_code(), p.map.map.canonical_code(), "{w}");
            }
        }
    }

    #[test]
    fn tableau_of_abacbc() {
        let t = tandem_to_syt(&tandem("abacbc")).unwrap();
        assert_eq!(t.rows, [vec![1, 3], vec![2, 5], vec![4, 6]]);
        assert_eq!(t.to_string(), "1,3\n2,5\n4,6\n");
        assert_eq!(Syt::parse("1,3\n2,5\n4,6").unwrap(), t);
        assert!(matches!(Syt::parse("1,2\n3,5\n4,6"), Ok(_)));
        assert!(matches!(Syt::parse("1,4\n2,5\n3,6\n"), Ok(_)));
        assert!(matches!(Syt::parse("2,3\n1,5\n4,6"), Err(Error::InvalidTableau(_))));
        assert!(matches!(Syt::parse("1,3\n2,5"), Err(Error::InvalidTableau(_))));
    }
}
