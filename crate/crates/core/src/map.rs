//! Dart-based rooted planar maps.
//!
//! A map on darts `0..2E` is a fixed-point-free involution `opp` (the two
//! halves of an edge) together with a permutation `rot` whose cycles list the
//! darts leaving each vertex in counterclockwise order. Faces are the cycles of
//! `d -> rot(opp(d))`. Text serialization numbers darts from 1.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    opp: Vec<usize>,
    rot: Vec<usize>,
    root: usize,
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = perm[d];
        }
        out.push(cycle);
    }
    out
}

fn cycle_index(cycles: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, c) in cycles.iter().enumerate() {
        for &d in c {
            idx[d] = i;
        }
    }
    idx
}

impl CombinatorialMap {
    /// Builds a map from explicit opposite pairs and rotation cycles.
    pub fn build(pairs: &[(Dart, Dart)], cycles: &[Vec<Dart>], root: Dart) -> Result<Self> {
        let n = pairs.len() * 2;
        let mut opp = vec![usize::MAX; n];
        for &(Dart(a), Dart(b)) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidMap(format!("dart out of range in pair ({}, {})", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::InvalidMap(format!("dart {} is its own opposite", a + 1)));
            }
            if opp[a] != usize::MAX || opp[b] != usize::MAX {
                return Err(Error::InvalidMap("a dart appears in two opposite pairs".into()));
            }
            opp[a] = b;
            opp[b] = a;
        }
        let mut rot = vec![usize::MAX; n];
        for cycle in cycles {
            for (i, &Dart(d)) in cycle.iter().enumerate() {
                if d >= n || rot[d] != usize::MAX {
                    return Err(Error::InvalidMap("rotation cycles do not partition the darts".into()));
                }
                rot[d] = cycle[(i + 1) % cycle.len()].0;
            }
        }
        Self::from_permutations(opp, rot, root.0)
    }

    /// Builds a map from its two permutations, validating every invariant.
    pub fn from_permutations(opp: Vec<usize>, rot: Vec<usize>, root: usize) -> Result<Self> {
        let n = opp.len();
        if n == 0 || n % 2 != 0 || rot.len() != n {
            return Err(Error::InvalidMap("need a positive even number of darts".into()));
        }
        for d in 0..n {
            if opp[d] >= n || opp[opp[d]] != d {
                return Err(Error::InvalidMap(format!("opposite is not an involution at dart {}", d + 1)));
            }
            if opp[d] == d {
                return Err(Error::InvalidMap(format!("dart {} is its own opposite", d + 1)));
            }
        }
        let mut hit = vec![false; n];
        for &r in &rot {
            if r >= n || hit[r] {
                return Err(Error::InvalidMap("rotation is not a permutation".into()));
            }
            hit[r] = true;
        }
        if root >= n {
            return Err(Error::InvalidMap("root dart out of range".into()));
        }
        let map = CombinatorialMap { opp, rot, root };
        if map.bfs_order().len() != n {
            return Err(Error::InvalidMap("map is not connected".into()));
        }
        Ok(map)
    }

    /// Builds a map from its face cycles: `rot(x) = next_in_face(opp(x))`.
    pub fn from_faces(opp: Vec<usize>, faces: &[Vec<usize>], root: usize) -> Result<Self> {
        let n = opp.len();
        let mut next = vec![usize::MAX; n];
        for face in faces {
            for (i, &d) in face.iter().enumerate() {
                if d >= n || next[d] != usize::MAX {
                    return Err(Error::InvalidMap("face cycles do not partition the darts".into()));
                }
                next[d] = face[(i + 1) % face.len()];
            }
        }
        if next.iter().any(|&d| d == usize::MAX) {
            return Err(Error::InvalidMap("face cycles do not cover the darts".into()));
        }
        let rot = (0..n).map(|x| next[opp[x]]).collect();
        Self::from_permutations(opp, rot, root)
    }

    /// One edge, two vertices.
    pub fn single_edge() -> Self {
        CombinatorialMap { opp: vec![1, 0], rot: vec![0, 1], root: 0 }
    }

    /// One loop on one vertex.
    pub fn single_loop() -> Self {
        CombinatorialMap { opp: vec![1, 0], rot: vec![1, 0], root: 0 }
    }

    pub fn num_darts(&self) -> usize {
        self.opp.len()
    }

    pub fn num_edges(&self) -> usize {
        self.opp.len() / 2
    }

    pub fn root(&self) -> Dart {
        Dart(self.root)
    }

    pub fn with_root(&self, root: Dart) -> Self {
        CombinatorialMap { root: root.0, ..self.clone() }
    }

    pub fn opp(&self, d: Dart) -> Dart {
        Dart(self.opp[d.0])
    }

    /// Next dart counterclockwise around the origin of `d`.
    pub fn rot(&self, d: Dart) -> Dart {
        Dart(self.rot[d.0])
    }

    /// Next dart clockwise around the origin of `d`.
    pub fn rot_inv(&self, d: Dart) -> Dart {
        Dart(self.rot.iter().position(|&x| x == d.0).expect("rotation is a permutation"))
    }

    /// Next dart along the face of `d`; it leaves the head of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        Dart(self.rot[self.opp[d.0]])
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.opp.len()).map(Dart)
    }

    /// Edge identifier: the smaller of its two darts.
    pub fn edge_id(&self, d: Dart) -> Dart {
        Dart(d.0.min(self.opp[d.0]))
    }

    pub fn edges(&self) -> Vec<Dart> {
        self.darts().filter(|&d| d.0 < self.opp[d.0]).collect()
    }

    fn face_perm(&self) -> Vec<usize> {
        (0..self.opp.len()).map(|d| self.rot[self.opp[d]]).collect()
    }

    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        cycles_of(&self.rot).into_iter().map(|c| c.into_iter().map(Dart).collect()).collect()
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        cycles_of(&self.face_perm()).into_iter().map(|c| c.into_iter().map(Dart).collect()).collect()
    }

    /// Vertex index (into [`Self::vertices`]) of the origin of every dart.
    pub fn vertex_index(&self) -> Vec<usize> {
        cycle_index(&cycles_of(&self.rot), self.opp.len())
    }

    /// Face index (into [`Self::faces`]) of every dart.
    pub fn face_index(&self) -> Vec<usize> {
        cycle_index(&cycles_of(&self.face_perm()), self.opp.len())
    }

    pub fn num_vertices(&self) -> usize {
        cycles_of(&self.rot).len()
    }

    pub fn num_faces(&self) -> usize {
        cycles_of(&self.face_perm()).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        cycles_of(&self.rot).iter().map(Vec::len).collect()
    }

    pub fn face_degrees(&self) -> Vec<usize> {
        cycles_of(&self.face_perm()).iter().map(Vec::len).collect()
    }

    pub fn is_loopless(&self) -> bool {
        let v = self.vertex_index();
        (0..self.opp.len()).all(|d| v[d] != v[self.opp[d]])
    }

    /// Vertices and faces exchanged; the same darts and root.
    pub fn dual(&self) -> Self {
        CombinatorialMap { opp: self.opp.clone(), rot: self.face_perm(), root: self.root }
    }

    /// Darts in first-visit order of a breadth-first search from the root that
    /// explores `rot` before `opp`.
    fn bfs_order(&self) -> Vec<usize> {
        let n = self.opp.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        seen[self.root] = true;
        queue.push_back(self.root);
        while let Some(d) = queue.pop_front() {
            order.push(d);
            for e in [self.rot[d], self.opp[d]] {
                if !seen[e] {
                    seen[e] = true;
                    queue.push_back(e);
                }
            }
        }
        order
    }

    /// Position of every dart in the root-anchored traversal order.
    pub fn canonical_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.opp.len()];
        for (i, d) in self.bfs_order().into_iter().enumerate() {
            label[d] = i;
        }
        label
    }

    /// Sequence identifying the rooted map up to root-preserving isomorphism.
    pub fn canonical_code(&self) -> Vec<usize> {
        let label = self.canonical_labels();
        let mut code = vec![self.opp.len()];
        for d in self.bfs_order() {
            code.push(label[self.rot[d]]);
            code.push(label[self.opp[d]]);
        }
        code
    }

    /// Applies the dart renaming `d -> perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.opp.len();
        let mut opp = vec![0; n];
        let mut rot = vec![0; n];
        for d in 0..n {
            opp[perm[d]] = perm[self.opp[d]];
            rot[perm[d]] = perm[self.rot[d]];
        }
        CombinatorialMap { opp, rot, root: perm[self.root] }
    }

    /// True iff `edges` (edge ids) is acyclic, connected and covers every vertex.
    pub fn validate_spanning_tree(&self, edges: &BTreeSet<Dart>) -> bool {
        let v = self.vertex_index();
        let nv = self.num_vertices();
        let mut uf = UnionFind::new(nv);
        for &e in edges {
            if e.0 >= self.opp.len() {
                return false;
            }
            if !uf.union(v[e.0], v[self.opp[e.0]]) {
                return false;
            }
        }
        edges.len() + 1 == nv
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("darts {}\nopposite: ", self.opp.len());
        for e in self.edges() {
            s.push_str(&format!("({} {})", e, self.opp(e)));
        }
        s.push('\n');
        let mut cycles = cycles_of(&self.rot);
        cycles.sort_by_key(|c| c[0]);
        for c in cycles {
            let items: Vec<String> = c.iter().map(|&d| Dart(d).to_string()).collect();
            s.push_str(&format!("vertex: {}\n", items.join(" ")));
        }
        s.push_str(&format!("root: {}\n", self.root()));
        s
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }

    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "red" => Some(Color::Red),
            "green" => Some(Color::Green),
            "blue" => Some(Color::Blue),
            _ => None,
        }
    }
}

/// A Hamiltonian cycle of the dual: `crossings[i]` lies in face `f_i` and its
/// opposite dart lies in face `f_{i+1}` (indices modulo the length).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hamiltonian {
    pub crossings: Vec<Dart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedMap {
    pub map: CombinatorialMap,
    /// Spanning-tree edges, by edge id.
    pub tree: Option<BTreeSet<Dart>>,
    pub marked_leaf: Option<Dart>,
    /// Edge colors, by edge id.
    pub colors: Option<BTreeMap<Dart, Color>>,
    /// One dart per oriented edge, pointing from tail to head.
    pub orientation: Option<BTreeSet<Dart>>,
    pub hamiltonian: Option<Hamiltonian>,
}

impl DecoratedMap {
    pub fn plain(map: CombinatorialMap) -> Self {
        DecoratedMap { map, tree: None, marked_leaf: None, colors: None, orientation: None, hamiltonian: None }
    }

    pub fn color_of(&self, d: Dart) -> Option<Color> {
        self.colors.as_ref()?.get(&self.map.edge_id(d)).copied()
    }

    /// True if the edge of `d` is oriented and `d` points along it.
    pub fn is_forward(&self, d: Dart) -> Option<bool> {
        let o = self.orientation.as_ref()?;
        if o.contains(&d) {
            Some(true)
        } else if o.contains(&self.map.opp(d)) {
            Some(false)
        } else {
            None
        }
    }

    /// Faces visited by the Hamiltonian decoration, as indices into `map.faces()`.
    pub fn hamiltonian_faces(&self) -> Option<Vec<usize>> {
        let h = self.hamiltonian.as_ref()?;
        let fi = self.map.face_index();
        Some(h.crossings.iter().map(|d| fi[d.0]).collect())
    }

    /// Checks the Hamiltonian decoration: every face once, consecutive faces
    /// sharing the crossing edge.
    pub fn validate_hamiltonian(&self) -> Result<()> {
        let h = self
            .hamiltonian
            .as_ref()
            .ok_or_else(|| Error::InvalidDecoration("no hamiltonian cycle".into()))?;
        let fi = self.map.face_index();
        let n = h.crossings.len();
        if n != self.map.num_faces() {
            return Err(Error::InvalidDecoration("cycle length differs from face count".into()));
        }
        let mut seen = vec![false; n];
        for (i, d) in h.crossings.iter().enumerate() {
            if d.0 >= self.map.num_darts() {
                return Err(Error::InvalidDecoration("crossing dart out of range".into()));
            }
            let f = fi[d.0];
            if seen[f] {
                return Err(Error::InvalidDecoration("face visited twice".into()));
            }
            seen[f] = true;
            let next = h.crossings[(i + 1) % n];
            if fi[self.map.opp(*d).0] != fi[next.0] {
                return Err(Error::InvalidDecoration(format!("crossing {} does not lead to the next face", i + 1)));
            }
        }
        Ok(())
    }

    /// Canonical code including every decoration.
    pub fn canonical_code(&self) -> Vec<usize> {
        let m = &self.map;
        let label = m.canonical_labels();
        let mut order = vec![0; m.num_darts()];
        for (d, &l) in label.iter().enumerate() {
            order[l] = d;
        }
        let mut code = m.canonical_code();
        for &d in &order {
            let dart = Dart(d);
            let mut token = 0usize;
            if let Some(t) = &self.tree {
                token |= 1 + usize::from(t.contains(&m.edge_id(dart)));
            }
            if self.marked_leaf == Some(dart) {
                token |= 4;
            }
            if let Some(c) = self.color_of(dart) {
                token |= 8 * (1 + c as usize);
            }
            match self.is_forward(dart) {
                Some(true) => token |= 64,
                Some(false) => token |= 128,
                None => {}
            }
            code.push(token);
        }
        if let Some(h) = &self.hamiltonian {
            code.push(usize::MAX);
            code.extend(h.crossings.iter().map(|d| label[d.0]));
        }
        code
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let m = self.map.relabel(perm);
        let eid = |d: Dart| m.edge_id(Dart(perm[d.0]));
        DecoratedMap {
            tree: self.tree.as_ref().map(|t| t.iter().map(|&e| eid(e)).collect()),
            marked_leaf: self.marked_leaf.map(|d| Dart(perm[d.0])),
            colors: self.colors.as_ref().map(|c| c.iter().map(|(&e, &col)| (eid(e), col)).collect()),
            orientation: self.orientation.as_ref().map(|o| o.iter().map(|d| Dart(perm[d.0])).collect()),
            hamiltonian: self
                .hamiltonian
                .as_ref()
                .map(|h| Hamiltonian { crossings: h.crossings.iter().map(|d| Dart(perm[d.0])).collect() }),
            map: m,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = self.map.to_text();
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
        if let Some(t) = &self.tree {
            s.push_str(&format!("tree: {}\n", join(&mut t.iter().map(|d| d.to_string()))).replace(" \n", "\n"));
        }
        if let Some(m) = self.marked_leaf {
            s.push_str(&format!("marked: {m}\n"));
        }
        if let Some(c) = &self.colors {
            let items = join(&mut c.iter().map(|(e, col)| format!("{e}={}", col.name())));
            s.push_str(&format!("color: {items}\n").replace(" \n", "\n"));
        }
        if let Some(o) = &self.orientation {
            s.push_str(&format!("orient: {}\n", join(&mut o.iter().map(|d| d.to_string()))).replace(" \n", "\n"));
        }
        if let Some(h) = &self.hamiltonian {
            let faces = self.map.faces();
            let fi = self.map.face_index();
            let f = join(&mut h.crossings.iter().map(|d| {
                let face = &faces[fi[d.0]];
                face.iter().min().expect("faces are nonempty").to_string()
            }));
            let e = join(&mut h.crossings.iter().map(|d| d.to_string()));
            s.push_str(&format!("ham: {f} / {e}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        parse_map_text(text)
    }
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { column: line, message: msg.into() }
}

fn parse_dart(tok: &str, n: usize, line: usize) -> Result<Dart> {
    let v: usize = tok.parse().map_err(|_| bad(line, format!("line {line}: bad dart `{tok}`")))?;
    if v == 0 || v > n {
        return Err(bad(line, format!("line {line}: dart {v} out of range")));
    }
    Ok(Dart(v - 1))
}

fn parse_map_text(text: &str) -> Result<DecoratedMap> {
    let mut n = None;
    let mut pairs = Vec::new();
    let mut cycles = Vec::new();
    let mut root = None;
    let mut tree = None;
    let mut marked = None;
    let mut colors = None;
    let mut orient = None;
    let mut ham = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("darts ") {
            n = Some(rest.trim().parse::<usize>().map_err(|_| bad(line, "bad dart count"))?);
            continue;
        }
        let total = n.ok_or_else(|| bad(line, "`darts N` must come first"))?;
        let (key, rest) = l.split_once(':').ok_or_else(|| bad(line, format!("line {line}: missing `:`")))?;
        let rest = rest.trim();
        let toks = || rest.split_whitespace();
        match key {
            "opposite" => {
                for chunk in rest.split(')').map(str::trim).filter(|c| !c.is_empty()) {
                    let inner = chunk
                        .strip_prefix('(')
                        .ok_or_else(|| bad(line, format!("line {line}: expected `(`")))?;
                    let ds: Vec<&str> = inner.split_whitespace().collect();
                    if ds.len() != 2 {
                        return Err(bad(line, format!("line {line}: pairs have two darts")));
                    }
                    pairs.push((parse_dart(ds[0], total, line)?, parse_dart(ds[1], total, line)?));
                }
            }
            "vertex" => cycles.push(toks().map(|t| parse_dart(t, total, line)).collect::<Result<Vec<_>>>()?),
            "root" => root = Some(parse_dart(rest, total, line)?),
            "tree" => tree = Some(toks().map(|t| parse_dart(t, total, line)).collect::<Result<BTreeSet<_>>>()?),
            "marked" => marked = Some(parse_dart(rest, total, line)?),
            "color" => {
                let mut m = BTreeMap::new();
                for t in toks() {
                    let (e, c) = t.split_once('=').ok_or_else(|| bad(line, "color entries are edge=color"))?;
                    let col = Color::parse(c).ok_or_else(|| bad(line, format!("unknown color `{c}`")))?;
                    m.insert(parse_dart(e, total, line)?, col);
                }
                colors = Some(m);
            }
            "orient" => orient = Some(toks().map(|t| parse_dart(t, total, line)).collect::<Result<BTreeSet<_>>>()?),
            "ham" => {
                let (_, e) = rest.split_once('/').ok_or_else(|| bad(line, "ham needs `faces / edges`"))?;
                let crossings = e.split_whitespace().map(|t| parse_dart(t, total, line)).collect::<Result<Vec<_>>>()?;
                ham = Some(Hamiltonian { crossings });
            }
            other => return Err(bad(line, format!("line {line}: unknown key `{other}`"))),
        }
    }
    if n.is_none() {
        return Err(bad(1, "empty map text"));
    }
    let root = root.ok_or_else(|| bad(0, "missing `root:` line"))?;
    let map = CombinatorialMap::build(&pairs, &cycles, root)?;
    if pairs.len() * 2 != n.unwrap_or(0) {
        return Err(Error::InvalidMap("opposite pairs do not cover the darts".into()));
    }
    Ok(DecoratedMap { map, tree, marked_leaf: marked, colors, orientation: orient, hamiltonian: ham })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> CombinatorialMap {
        // Darts 0,2,4 leave vertex A; 1,3,5 leave vertex B.
        CombinatorialMap::build(
            &[(Dart(0), Dart(1)), (Dart(2), Dart(3)), (Dart(4), Dart(5))],
            &[vec![Dart(0), Dart(2), Dart(4)], vec![Dart(1), Dart(5), Dart(3)]],
            Dart(0),
        )
        .unwrap()
    }

    #[test]
    fn small_maps_have_expected_counts() {
        let e = CombinatorialMap::single_edge();
        assert_eq!((e.num_vertices(), e.num_edges(), e.num_faces()), (2, 1, 1));
        assert_eq!(e.euler_characteristic(), 2);
        assert_eq!(e.face_degrees(), vec![2]);
        let l = CombinatorialMap::single_loop();
        assert_eq!((l.num_vertices(), l.num_edges(), l.num_faces()), (1, 1, 2));
        assert_eq!(l.euler_characteristic(), 2);
        assert_eq!(l.face_degrees(), vec![1, 1]);
        let t = theta();
        assert_eq!((t.num_vertices(), t.num_edges(), t.num_faces()), (2, 3, 3));
        assert_eq!(t.euler_characteristic(), 2);
    }

    #[test]
    fn build_rejects_bad_input() {
        let err = CombinatorialMap::build(&[(Dart(0), Dart(0))], &[vec![Dart(0)]], Dart(0));
        assert!(err.is_err());
        let err = CombinatorialMap::build(
            &[(Dart(0), Dart(1))],
            &[vec![Dart(0), Dart(1)], vec![Dart(1)]],
            Dart(0),
        );
        assert!(err.is_err());
        // Two disjoint loops.
        let err = CombinatorialMap::build(
            &[(Dart(0), Dart(1)), (Dart(2), Dart(3))],
            &[vec![Dart(0), Dart(1)], vec![Dart(2), Dart(3)]],
            Dart(0),
        );
        assert!(matches!(err, Err(Error::InvalidMap(m)) if m.contains("connected")));
    }

    #[test]
    fn duality() {
        let e = CombinatorialMap::single_edge();
        assert_eq!(e.dual().canonical_code(), CombinatorialMap::single_loop().canonical_code());
        let t = theta();
        assert_eq!(t.dual().dual(), t);
        assert_eq!(t.dual().num_vertices(), t.num_faces());
    }

    #[test]
    fn codes_separate_and_are_relabeling_invariant() {
        assert_ne!(
            CombinatorialMap::single_edge().canonical_code(),
            CombinatorialMap::single_loop().canonical_code()
        );
        let t = theta();
        let r = t.relabel(&[3, 5, 0, 1, 4, 2]);
        assert_ne!(r, t);
        assert_eq!(r.canonical_code(), t.canonical_code());
    }

    #[test]
    fn spanning_trees_of_theta() {
        let t = theta();
        for e in t.edges() {
            assert!(t.validate_spanning_tree(&BTreeSet::from([e])));
        }
        assert!(!t.validate_spanning_tree(&BTreeSet::from([Dart(0), Dart(2)])));
        assert!(!t.validate_spanning_tree(&BTreeSet::new()));
    }

    #[test]
    fn text_round_trip() {
        let mut d = DecoratedMap::plain(theta());
        d.tree = Some(BTreeSet::from([Dart(2)]));
        d.colors = Some(BTreeMap::from([(Dart(0), Color::Red), (Dart(4), Color::Blue)]));
        d.orientation = Some(BTreeSet::from([Dart(0), Dart(3)]));
        d.marked_leaf = Some(Dart(5));
        let text = d.to_text();
        let back = DecoratedMap::from_text(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_text(), text);
    }
}
