//! Step alphabets, walks in the quarter plane, and their enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub dx: i64,
    pub dy: i64,
}

impl Step {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Step { dx, dy }
    }

    /// Both coordinates in {-1, 0, 1} and not the zero step.
    pub fn is_small(self) -> bool {
        self.dx.abs() <= 1 && self.dy.abs() <= 1 && (self.dx, self.dy) != (0, 0)
    }

    pub fn is_straight(self) -> bool {
        (self.dx == 0) != (self.dy == 0)
    }

    pub fn is_oblique(self) -> bool {
        self.dx != 0 && self.dy != 0
    }

    pub fn transpose(self) -> Step {
        Step::new(self.dy, self.dx)
    }

    /// Number of sides of the face bounded by this step in a mating diagram.
    pub fn face_size(self) -> usize {
        (self.dx.unsigned_abs() + self.dy.unsigned_abs() + 2) as usize
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Replaces an `(i, j)` step by `|i|` horizontal unit steps followed by `|j|`
/// vertical unit steps.
pub fn expand_step(step: Step) -> Vec<Step> {
    let h = Step::new(step.dx.signum(), 0);
    let v = Step::new(0, step.dy.signum());
    std::iter::repeat(h)
        .take(step.dx.unsigned_abs() as usize)
        .chain(std::iter::repeat(v).take(step.dy.unsigned_abs() as usize))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn shift(self, s: Step) -> Point {
        Point::new(self.x + s.dx, self.y + s.dy)
    }

    pub fn in_quadrant(self) -> bool {
        self.x >= 0 && self.y >= 0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The registered step families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(1,0),(0,1),(-1,0),(0,-1)`.
    Straight,
    /// All eight small steps.
    Small,
    /// `a=(1,0), b=(0,1), c=(-1,-1)`.
    Kreweras,
    /// Reversed Y: `(0,1),(-1,-1),(1,-1)`.
    Ry,
    /// `a=(0,1), b=(1,-1), c=(-1,0)`.
    Tandem,
    /// Tandem steps reflected in the diagonal: `a=(1,0), b=(-1,1), c=(0,-1)`.
    TandemT,
    /// `TandemT` with the pattern `bc` forbidden.
    Schnyder,
    /// `(-1,-1),(1,-1),(0,2)`.
    Quartic,
    /// `(-1,-1),(1,-1)` and `(0,k)` for every `k >= 0`.
    Lukasiewicz,
    /// `(1,-1)` and `(-i,j)` for `i,j >= 0`, `i+j > 0`.
    Kmsw,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Straight,
        Family::Small,
        Family::Kreweras,
        Family::Ry,
        Family::Tandem,
        Family::TandemT,
        Family::Schnyder,
        Family::Quartic,
        Family::Lukasiewicz,
        Family::Kmsw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Straight => "straight",
            Family::Small => "small",
            Family::Kreweras => "kreweras",
            Family::Ry => "rY",
            Family::Tandem => "tandem",
            Family::TandemT => "tandem-t",
            Family::Schnyder => "schnyder",
            Family::Quartic => "quartic",
            Family::Lukasiewicz => "lukasiewicz",
            Family::Kmsw => "kmsw",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        let lower = name.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Infinite {
    Lukasiewicz,
    Kmsw,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepAlphabet {
    name: String,
    steps: Vec<Step>,
    letters: Option<Vec<char>>,
    forbidden: Vec<(char, char)>,
    infinite: Option<Infinite>,
    bound: Option<u64>,
}

fn lettered(name: &str, steps: &[(char, i64, i64)]) -> StepAlphabet {
    StepAlphabet {
        name: name.to_string(),
        steps: steps.iter().map(|&(_, x, y)| Step::new(x, y)).collect(),
        letters: Some(steps.iter().map(|&(c, _, _)| c).collect()),
        forbidden: Vec::new(),
        infinite: None,
        bound: None,
    }
}

impl StepAlphabet {
    pub fn family(family: Family) -> StepAlphabet {
        match family {
            Family::Straight => StepAlphabet::custom(
                "straight",
                vec![Step::new(1, 0), Step::new(0, 1), Step::new(-1, 0), Step::new(0, -1)],
            ),
            Family::Small => {
                let mut steps = Vec::new();
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        if (dx, dy) != (0, 0) {
                            steps.push(Step::new(dx, dy));
                        }
                    }
                }
                StepAlphabet::custom("small", steps)
            }
            Family::Kreweras => lettered("kreweras", &[('a', 1, 0), ('b', 0, 1), ('c', -1, -1)]),
            Family::Ry => StepAlphabet::custom(
                "rY",
                vec![Step::new(0, 1), Step::new(-1, -1), Step::new(1, -1)],
            ),
            Family::Tandem => lettered("tandem", &[('a', 0, 1), ('b', 1, -1), ('c', -1, 0)]),
            Family::TandemT => lettered("tandem-t", &[('a', 1, 0), ('b', -1, 1), ('c', 0, -1)]),
            Family::Schnyder => {
                let mut a = lettered("schnyder", &[('a', 1, 0), ('b', -1, 1), ('c', 0, -1)]);
                a.forbidden.push(('b', 'c'));
                a
            }
            Family::Quartic => StepAlphabet::custom(
                "quartic",
                vec![Step::new(-1, -1), Step::new(1, -1), Step::new(0, 2)],
            ),
            Family::Lukasiewicz => StepAlphabet {
                name: "lukasiewicz".into(),
                steps: Vec::new(),
                letters: None,
                forbidden: Vec::new(),
                infinite: Some(Infinite::Lukasiewicz),
                bound: None,
            },
            Family::Kmsw => StepAlphabet {
                name: "kmsw".into(),
                steps: Vec::new(),
                letters: None,
                forbidden: Vec::new(),
                infinite: Some(Infinite::Kmsw),
                bound: None,
            },
        }
    }

    /// Looks up a registered family by name.
    pub fn named(name: &str) -> Result<StepAlphabet> {
        Family::from_name(name).map(StepAlphabet::family)
    }

    pub fn custom(name: &str, steps: Vec<Step>) -> StepAlphabet {
        StepAlphabet {
            name: name.to_string(),
            steps,
            letters: None,
            forbidden: Vec::new(),
            infinite: None,
            bound: None,
        }
    }

    pub fn with_letters(mut self, letters: Vec<char>) -> Result<StepAlphabet> {
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if letters.len() != self.steps.len() || sorted.len() != letters.len() {
            return Err(Error::InvalidPath(
                "letters must be distinct and cover all steps".into(),
            ));
        }
        self.letters = Some(letters);
        Ok(self)
    }

    pub fn with_forbidden(mut self, first: char, second: char) -> Result<StepAlphabet> {
        let known = |c: char| self.letters.as_ref().is_some_and(|l| l.contains(&c));
        if !known(first) || !known(second) {
            return Err(Error::InvalidPath(format!(
                "pattern {first}{second} uses letters outside the alphabet"
            )));
        }
        self.forbidden.push((first, second));
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite.is_some() && self.bound.is_none()
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    /// Materialises an infinite alphabet up to `|i|+|j| <= bound`. Finite
    /// alphabets are returned unchanged.
    pub fn bounded(&self, bound: u64) -> StepAlphabet {
        let Some(kind) = self.infinite else {
            return self.clone();
        };
        let steps = match kind {
            Infinite::Lukasiewicz => {
                let mut s = vec![Step::new(-1, -1), Step::new(1, -1)];
                s.extend((0..=bound as i64).map(|k| Step::new(0, k)));
                s
            }
            Infinite::Kmsw => {
                let mut s = vec![Step::new(1, -1)];
                for total in 1..=bound as i64 {
                    for i in 0..=total {
                        s.push(Step::new(-i, total - i));
                    }
                }
                s
            }
        };
        StepAlphabet { steps, bound: Some(bound), ..self.clone() }
    }

    /// Materialised steps in declaration order.
    pub fn steps(&self) -> Result<&[Step]> {
        if self.is_infinite() {
            return Err(Error::UnboundedAlphabet(self.name.clone()));
        }
        Ok(&self.steps)
    }

    pub fn contains(&self, step: Step) -> bool {
        match self.infinite {
            Some(Infinite::Lukasiewicz) => {
                let ok = step == Step::new(-1, -1)
                    || step == Step::new(1, -1)
                    || (step.dx == 0 && step.dy >= 0);
                ok && self.bound.map_or(true, |b| step.dy <= b as i64 || step.dx != 0)
            }
            Some(Infinite::Kmsw) => {
                let ok = step == Step::new(1, -1)
                    || (step.dx <= 0 && step.dy >= 0 && (step.dx, step.dy) != (0, 0));
                ok && self
                    .bound
                    .map_or(true, |b| step == Step::new(1, -1) || -step.dx + step.dy <= b as i64)
            }
            None => self.steps.contains(&step),
        }
    }

    pub fn letters(&self) -> Option<&[char]> {
        self.letters.as_deref()
    }

    pub fn forbidden(&self) -> &[(char, char)] {
        &self.forbidden
    }

    pub fn letter_of(&self, step: Step) -> Option<char> {
        let letters = self.letters.as_ref()?;
        let i = self.steps.iter().position(|&s| s == step)?;
        Some(letters[i])
    }

    pub fn step_of(&self, letter: char) -> Option<Step> {
        let letters = self.letters.as_ref()?;
        let i = letters.iter().position(|&c| c == letter)?;
        Some(self.steps[i])
    }

    /// The alphabet obtained by swapping the coordinates of every step,
    /// keeping letters and forbidden patterns. Registered families map to
    /// registered families where one matches.
    pub fn reflected(&self) -> StepAlphabet {
        let mut r = self.clone();
        r.steps = self.steps.iter().map(|s| s.transpose()).collect();
        if self.infinite.is_some() {
            // Infinite families are not closed under reflection; keep them finite.
            r.infinite = None;
        }
        let registered = Family::ALL
            .into_iter()
            .map(StepAlphabet::family)
            .find(|a| a.steps == r.steps && a.letters == r.letters && a.forbidden == r.forbidden);
        r.name = match registered {
            Some(a) => a.name,
            None => match self.name.strip_suffix("^T") {
                Some(base) => base.to_string(),
                None => format!("{}^T", self.name),
            },
        };
        r
    }
}

/// A finite walk: a start point and a sequence of steps from an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    alphabet: Arc<StepAlphabet>,
    start: Point,
    steps: Vec<Step>,
}

impl Walk {
    pub fn new(alphabet: Arc<StepAlphabet>, start: Point, steps: Vec<Step>) -> Result<Walk> {
        if let Some(s) = steps.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::StepNotInAlphabet(s.dx, s.dy, alphabet.name.clone()));
        }
        Ok(Walk { alphabet, start, steps })
    }

    pub fn from_origin(alphabet: &StepAlphabet, steps: Vec<Step>) -> Result<Walk> {
        Walk::new(Arc::new(alphabet.clone()), Point::ORIGIN, steps)
    }

    pub fn from_word(alphabet: &StepAlphabet, word: &str) -> Result<Walk> {
        parse_walk_text(word, alphabet)
    }

    pub fn alphabet(&self) -> &StepAlphabet {
        &self.alphabet
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn positions(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = self.start;
        out.push(p);
        for &s in &self.steps {
            p = p.shift(s);
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, &s| p.shift(s))
    }

    /// Index (1-based) of the first step that leaves the quadrant, or 0 if the
    /// start point is already outside.
    pub fn first_exit(&self) -> Option<usize> {
        self.positions().iter().position(|p| !p.in_quadrant())
    }

    pub fn is_confined(&self) -> bool {
        self.first_exit().is_none()
    }

    pub fn word(&self) -> Option<String> {
        self.steps.iter().map(|&s| self.alphabet.letter_of(s)).collect()
    }

    /// First occurrence of a forbidden pattern as (pattern, 1-based position).
    pub fn forbidden_violation(&self) -> Option<(String, usize)> {
        let word: Vec<char> = self.word()?.chars().collect();
        for (i, pair) in word.windows(2).enumerate() {
            if self.alphabet.forbidden.contains(&(pair[0], pair[1])) {
                return Some((format!("{}{}", pair[0], pair[1]), i + 1));
            }
        }
        None
    }

    pub fn count_step(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    pub fn to_text(&self) -> String {
        let body = match self.word() {
            Some(w) if self.alphabet.letters.is_some() && !w.is_empty() => w,
            _ => self.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"),
        };
        if self.start == Point::ORIGIN {
            body
        } else {
            format!("{body} @ {}", self.start)
        }
    }

    pub fn with_alphabet(&self, alphabet: Arc<StepAlphabet>) -> Result<Walk> {
        Walk::new(alphabet, self.start, self.steps.clone())
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Swaps the coordinates of every step and of the start point.
pub fn reflect_diagonal(walk: &Walk) -> Walk {
    Walk {
        alphabet: Arc::new(walk.alphabet.reflected()),
        start: Point::new(walk.start.y, walk.start.x),
        steps: walk.steps.iter().map(|s| s.transpose()).collect(),
    }
}

fn parse_int(chars: &[char], pos: &mut usize) -> Result<i64> {
    let begin = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let text: String = chars[begin..*pos].iter().collect();
    text.parse().map_err(|_| Error::Parse {
        column: begin + 1,
        message: format!("expected integer, found `{text}`"),
    })
}

fn expect(chars: &[char], pos: &mut usize, want: char) -> Result<()> {
    while *pos < chars.len() && chars[*pos] == ' ' {
        *pos += 1;
    }
    if chars.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Parse {
            column: *pos + 1,
            message: match chars.get(*pos) {
                Some(c) => format!("expected `{want}`, found `{c}`"),
                None => format!("expected `{want}`, found end of line"),
            },
        })
    }
}

fn parse_pair(chars: &[char], pos: &mut usize) -> Result<(i64, i64)> {
    expect(chars, pos, '(')?;
    let x = parse_int(chars, pos)?;
    expect(chars, pos, ',')?;
    let y = parse_int(chars, pos)?;
    expect(chars, pos, ')')?;
    Ok((x, y))
}

/// Parses one line of walk text: letter form (`aabbccbac`) or token form
/// (`(1,0);(0,1)`), with an optional ` @ (x,y)` start point.
pub fn parse_walk_text(line: &str, alphabet: &StepAlphabet) -> Result<Walk> {
    let chars: Vec<char> = line.trim_end().chars().collect();
    let (body_end, start) = match chars.iter().position(|&c| c == '@') {
        Some(at) => {
            let mut pos = at + 1;
            let (x, y) = parse_pair(&chars, &mut pos)?;
            if let Some(extra) = chars[pos..].iter().position(|c| !c.is_whitespace()) {
                return Err(Error::Parse {
                    column: pos + extra + 1,
                    message: "trailing characters after start point".into(),
                });
            }
            (at, Point::new(x, y))
        }
        None => (chars.len(), Point::ORIGIN),
    };
    let body = &chars[..body_end];
    let first = body.iter().position(|c| !c.is_whitespace());
    let mut steps = Vec::new();
    match first {
        None => {}
        Some(i) if body[i] == '(' => {
            let mut pos = i;
            loop {
                let (x, y) = parse_pair(body, &mut pos)?;
                let step = Step::new(x, y);
                if !alphabet.contains(step) {
                    return Err(Error::Parse {
                        column: pos,
                        message: format!("step {step} is not in alphabet `{}`", alphabet.name),
                    });
                }
                steps.push(step);
                while pos < body.len() && body[pos] == ' ' {
                    pos += 1;
                }
                if pos >= body.len() {
                    break;
                }
                expect(body, &mut pos, ';')?;
                while pos < body.len() && body[pos] == ' ' {
                    pos += 1;
                }
                if pos >= body.len() {
                    break;
                }
            }
        }
        Some(_) => {
            for (i, &c) in body.iter().enumerate() {
                if c.is_whitespace() {
                    continue;
                }
                match alphabet.step_of(c) {
                    Some(s) => steps.push(s),
                    None => {
                        return Err(Error::Parse {
                            column: i + 1,
                            message: format!("unknown letter `{c}` for alphabet `{}`", alphabet.name),
                        })
                    }
                }
            }
        }
    }
    Walk::new(Arc::new(alphabet.clone()), start, steps)
}

/// Positions from which `end` is reachable in exactly `r` steps, for every
/// `r <= length`, ignoring confinement outside the quadrant boundary.
fn reachability(steps: &[Step], length: usize, end: Point) -> Vec<std::collections::HashSet<Point>> {
    let mut layers = vec![std::collections::HashSet::from([end])];
    for r in 1..=length {
        let mut next = std::collections::HashSet::new();
        for &p in &layers[r - 1] {
            for &s in steps {
                let q = Point::new(p.x - s.dx, p.y - s.dy);
                if q.in_quadrant() {
                    next.insert(q);
                }
            }
        }
        layers.push(next);
    }
    layers
}

struct Search<'a> {
    alphabet: &'a Arc<StepAlphabet>,
    steps: &'a [Step],
    forbidden: Vec<(usize, usize)>,
    reach: Vec<std::collections::HashSet<Point>>,
    length: usize,
    start: Point,
}

impl Search<'_> {
    fn new<'a>(
        alphabet: &'a Arc<StepAlphabet>,
        length: usize,
        start: Point,
        end: Point,
    ) -> Result<Search<'a>> {
        let steps = alphabet.steps()?;
        let forbidden = forbidden_indices(alphabet);
        Ok(Search {
            alphabet,
            steps,
            forbidden,
            reach: reachability(steps, length, end),
            length,
            start,
        })
    }

    fn allowed(&self, prev: Option<usize>, next: usize) -> bool {
        prev.map_or(true, |p| !self.forbidden.contains(&(p, next)))
    }

    fn run(&self, prefix: &mut Vec<usize>, pos: Point, out: &mut Vec<Walk>) {
        let remaining = self.length - prefix.len();
        if !self.reach[remaining].contains(&pos) {
            return;
        }
        if remaining == 0 {
            out.push(Walk {
                alphabet: Arc::clone(self.alphabet),
                start: self.start,
                steps: prefix.iter().map(|&i| self.steps[i]).collect(),
            });
            return;
        }
        for (i, &s) in self.steps.iter().enumerate() {
            let q = pos.shift(s);
            if q.in_quadrant() && self.allowed(prefix.last().copied(), i) {
                prefix.push(i);
                self.run(prefix, q, out);
                prefix.pop();
            }
        }
    }
}

fn forbidden_indices(alphabet: &StepAlphabet) -> Vec<(usize, usize)> {
    let Some(letters) = alphabet.letters() else {
        return Vec::new();
    };
    let idx = |c: char| letters.iter().position(|&l| l == c);
    alphabet
        .forbidden()
        .iter()
        .filter_map(|&(a, b)| Some((idx(a)?, idx(b)?)))
        .collect()
}

/// All confined walks of `length` steps from `start` to `end` avoiding the
/// alphabet's forbidden patterns, in lexicographic order of step indices.
pub fn enumerate_walks(
    alphabet: &StepAlphabet,
    length: usize,
    start: Point,
    end: Point,
) -> Result<Vec<Walk>> {
    let alphabet = Arc::new(alphabet.clone());
    let search = Search::new(&alphabet, length, start, end)?;
    let mut out = Vec::new();
    if start.in_quadrant() {
        search.run(&mut Vec::new(), start, &mut out);
    }
    Ok(out)
}

/// Same output as [`enumerate_walks`], with the search split by first step and
/// run in parallel.
pub fn enumerate_walks_par(
    alphabet: &StepAlphabet,
    length: usize,
    start: Point,
    end: Point,
) -> Result<Vec<Walk>> {
    if length == 0 || !start.in_quadrant() {
        return enumerate_walks(alphabet, length, start, end);
    }
    let alphabet = Arc::new(alphabet.clone());
    let search = Search::new(&alphabet, length, start, end)?;
    let parts: Vec<Vec<Walk>> = (0..search.steps.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let q = start.shift(search.steps[i]);
            if q.in_quadrant() {
                search.run(&mut vec![i], q, &mut out);
            }
            out
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// Exact number of walks [`enumerate_walks`] would return, by dynamic
/// programming over (position, last step).
pub fn count_walks(
    alphabet: &StepAlphabet,
    length: usize,
    start: Point,
    end: Point,
) -> Result<BigUint> {
    let steps = alphabet.steps()?;
    if !start.in_quadrant() {
        return Ok(BigUint::zero());
    }
    let forbidden = forbidden_indices(alphabet);
    let track_last = !forbidden.is_empty();
    let mut layer: HashMap<(Point, Option<usize>), BigUint> = HashMap::new();
    layer.insert((start, None), BigUint::one());
    for _ in 0..length {
        let mut next: HashMap<(Point, Option<usize>), BigUint> = HashMap::new();
        for ((p, last), n) in &layer {
            for (i, &s) in steps.iter().enumerate() {
                if let Some(l) = last {
                    if forbidden.contains(&(*l, i)) {
                        continue;
                    }
                }
                let q = p.shift(s);
                if q.in_quadrant() {
                    let key = (q, if track_last { Some(i) } else { None });
                    *next.entry(key).or_insert_with(BigUint::zero) += n;
                }
            }
        }
        layer = next;
    }
    Ok(layer
        .into_iter()
        .filter(|((p, _), _)| *p == end)
        .map(|(_, n)| n)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(s: &str) -> Vec<Step> {
        parse_walk_text(s, &StepAlphabet::family(Family::Small)).unwrap().steps
    }

    #[test]
    fn registered_alphabets() {
        let k = StepAlphabet::family(Family::Kreweras);
        assert_eq!(k.step_of('a'), Some(Step::new(1, 0)));
        assert_eq!(k.step_of('b'), Some(Step::new(0, 1)));
        assert_eq!(k.step_of('c'), Some(Step::new(-1, -1)));
        let ry = StepAlphabet::named("rY").unwrap();
        assert_eq!(ry.steps().unwrap(), &[Step::new(0, 1), Step::new(-1, -1), Step::new(1, -1)]);
        let t = StepAlphabet::named("tandem").unwrap();
        assert_eq!(t.steps().unwrap(), &[Step::new(0, 1), Step::new(1, -1), Step::new(-1, 0)]);
        assert!(matches!(StepAlphabet::named("bogus"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn twelve_step_example_is_confined() {
        let w = Walk::from_origin(
            &StepAlphabet::family(Family::Small),
            tokens("(1,0);(0,1);(-1,1);(1,0);(0,-1);(1,0);(0,-1);(0,1);(-1,0);(-1,0);(1,0);(-1,-1)"),
        )
        .unwrap();
        assert!(w.is_confined());
        assert_eq!(w.end(), Point::ORIGIN);
        assert_eq!(w.steps().iter().filter(|s| s.is_oblique()).count(), 2);
    }

    #[test]
    fn confinement_edge_cases() {
        let small = StepAlphabet::family(Family::Small);
        assert!(!Walk::from_origin(&small, vec![Step::new(-1, 0)]).unwrap().is_confined());
        assert!(Walk::from_origin(&small, vec![]).unwrap().is_confined());
    }

    #[test]
    fn ry_length_four() {
        let ry = StepAlphabet::family(Family::Ry);
        let walks = enumerate_walks(&ry, 4, Point::ORIGIN, Point::ORIGIN).unwrap();
        let got: Vec<Vec<Step>> = walks.iter().map(|w| w.steps().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![Step::new(0, 1), Step::new(0, 1), Step::new(1, -1), Step::new(-1, -1)],
                vec![Step::new(0, 1), Step::new(1, -1), Step::new(0, 1), Step::new(-1, -1)],
            ]
        );
    }

    #[test]
    fn small_counts() {
        let straight = StepAlphabet::family(Family::Straight);
        let o = Point::ORIGIN;
        assert_eq!(count_walks(&straight, 1, o, o).unwrap(), BigUint::from(0u32));
        assert_eq!(count_walks(&straight, 2, o, o).unwrap(), BigUint::from(2u32));
        let tandem = StepAlphabet::family(Family::Tandem);
        assert_eq!(count_walks(&tandem, 9, o, o).unwrap(), BigUint::from(42u32));
        assert_eq!(enumerate_walks(&tandem, 6, o, o).unwrap().len(), 5);
        let empty = enumerate_walks(&tandem, 0, Point::new(2, 1), Point::new(2, 1)).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
    }

    #[test]
    fn unbounded_alphabet_is_an_error() {
        let l = StepAlphabet::family(Family::Lukasiewicz);
        assert!(matches!(
            count_walks(&l, 3, Point::ORIGIN, Point::ORIGIN),
            Err(Error::UnboundedAlphabet(_))
        ));
        let b = l.bounded(2);
        assert!(b.contains(Step::new(0, 0)));
        assert!(!b.contains(Step::new(0, 3)));
        // (0,0)^3 and (0,2),(1,-1),(-1,-1).
        assert_eq!(count_walks(&b, 3, Point::ORIGIN, Point::ORIGIN).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn expansion_and_face_size() {
        let e = expand_step(Step::new(3, 4));
        assert_eq!(e.len(), 7);
        assert!(e[..3].iter().all(|&s| s == Step::new(1, 0)));
        assert!(e[3..].iter().all(|&s| s == Step::new(0, 1)));
        assert_eq!(Step::new(3, 4).face_size(), 9);
        assert_eq!(expand_step(Step::new(1, 0)), vec![Step::new(1, 0)]);
        assert_eq!(
            expand_step(Step::new(-2, 1)),
            vec![Step::new(-1, 0), Step::new(-1, 0), Step::new(0, 1)]
        );
        assert_eq!(Step::new(-2, 1).face_size(), 5);
    }

    #[test]
    fn reflection_bridges_tandem_conventions() {
        let t = StepAlphabet::family(Family::Tandem);
        let w = Walk::from_word(&t, "abacbc").unwrap();
        let r = reflect_diagonal(&w);
        assert_eq!(r.alphabet().name(), "tandem-t");
        assert_eq!(r.word().unwrap(), "abacbc");
        assert_eq!(r.steps()[0], Step::new(1, 0));
        assert_eq!(reflect_diagonal(&r), w);
        let one = Walk::from_origin(&StepAlphabet::family(Family::Small), vec![Step::new(1, 0)]).unwrap();
        assert_eq!(reflect_diagonal(&one).steps(), &[Step::new(0, 1)]);
    }

    #[test]
    fn parse_forms() {
        let k = StepAlphabet::family(Family::Kreweras);
        let w = parse_walk_text("aabbccbac", &k).unwrap();
        assert_eq!(w.len(), 9);
        assert_eq!(w.to_text(), "aabbccbac");
        let err = parse_walk_text("abx", &k).unwrap_err();
        assert_eq!(err, Error::Parse { column: 3, message: "unknown letter `x` for alphabet `kreweras`".into() });
        let small = StepAlphabet::family(Family::Small);
        let t = parse_walk_text("(1,0);(0,1);(-1,1)", &small).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.to_text(), "(1,0);(0,1);(-1,1)");
        let s = parse_walk_text("(1,-1) @ (0,1)", &StepAlphabet::family(Family::Kmsw).bounded(3)).unwrap();
        assert_eq!(s.start(), Point::new(0, 1));
        assert_eq!(s.to_text(), "(1,-1) @ (0,1)");
    }

    #[test]
    fn forbidden_patterns_filter_enumeration() {
        let s = StepAlphabet::family(Family::Schnyder);
        let walks = enumerate_walks(&s, 4, Point::ORIGIN, Point::new(1, 0)).unwrap();
        for w in &walks {
            assert!(!w.word().unwrap().contains("bc"));
        }
        assert_eq!(
            BigUint::from(walks.len()),
            count_walks(&s, 4, Point::ORIGIN, Point::new(1, 0)).unwrap()
        );
    }
}
