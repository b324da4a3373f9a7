//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Counts are checked against a naive recursive walk counter written here,
//! independent of the library's pruned enumeration.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use mating_core::bijections::{self, Prograph};
use mating_core::map::CombinatorialMap;
use mating_core::mating::{dyck_to_tree, match_path, BinaryTree, LatticePath};
use mating_core::walks::{enumerate_walks, parse_walk_text, Family, Point, StepAlphabet, Walk};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn naive_count(steps: &[(i64, i64)], len: usize, at: (i64, i64), end: (i64, i64)) -> u64 {
    if at.0 < 0 || at.1 < 0 {
        return 0;
    }
    if len == 0 {
        return u64::from(at == end);
    }
    steps.iter().map(|&(dx, dy)| naive_count(steps, len - 1, (at.0 + dx, at.1 + dy), end)).sum()
}

fn walks(family: Family, len: usize, end: Point) -> Vec<Walk> {
    enumerate_walks(&StepAlphabet::family(family), len, Point::ORIGIN, end).unwrap()
}

const RY: [(i64, i64); 3] = [(0, 1), (1, -1), (-1, -1)];
const KREWERAS: [(i64, i64); 3] = [(1, 0), (0, 1), (-1, -1)];
const TANDEM: [(i64, i64); 3] = [(0, 1), (1, -1), (-1, 0)];
const QUARTIC: [(i64, i64); 3] = [(0, 2), (1, -1), (-1, -1)];

fn criterion_1() -> Outcome {
    let mut detail = Vec::new();
    for (n, expected) in [(1, 2u64), (2, 28), (3, 660)] {
        let len = 4 * n;
        let brute = naive_count(&RY, len, (0, 0), (0, 0));
        ensure!(brute == expected, "brute count at {len} is {brute}, expected {expected}");
        let ws = walks(Family::Ry, len, Point::ORIGIN);
        ensure!(ws.len() as u64 == brute, "enumeration gives {} at {len}", ws.len());
        let mut codes = BTreeSet::new();
        for w in &ws {
            let map = bijections::ry_forward(w).map_err(|e| format!("{w}: {e}"))?;
            ensure!(codes.insert(map.canonical_code()), "duplicate image for {w}");
            let back = bijections::ry_inverse(&map).map_err(|e| format!("{w}: {e}"))?;
            ensure!(back.steps() == w.steps(), "inverse of {w} gives {back}");
        }
        detail.push(format!("{len}:{}", codes.len()));
    }
    Ok(format!("counts/images {}", detail.join(" ")))
}

fn criterion_2() -> Outcome {
    let mut codes = BTreeSet::new();
    let mut specials = 0;
    let mut total = 0;
    for end in [Point::ORIGIN, Point::new(2, 0)] {
        let brute = naive_count(&RY, 4, (0, 0), (end.x, end.y));
        let ws = walks(Family::Ry, 4, end);
        ensure!(ws.len() as u64 == brute, "enumeration/brute mismatch at end {end}");
        for w in ws {
            let map = bijections::ry_forward(&w).map_err(|e| format!("{w}: {e}"))?;
            if bijections::is_special(&map).map_err(|e| e.to_string())? {
                specials += 1;
            }
            let back = bijections::ry_inverse(&map).map_err(|e| e.to_string())?;
            ensure!(back.steps() == w.steps(), "inverse of {w} gives {back}");
            codes.insert(map.canonical_code());
            total += 1;
        }
    }
    ensure!(total == 4, "total {total}, expected 4");
    ensure!(codes.len() == 4, "{} distinct images, expected 4", codes.len());
    ensure!(specials == 2, "{specials} special maps, expected 2");
    Ok(format!("total {total}, distinct {}, specials {specials}", codes.len()))
}

fn criterion_3() -> Outcome {
    for (n, expected) in [(1, 1u64), (2, 6)] {
        let len = 3 * n;
        let brute = naive_count(&QUARTIC, len, (0, 0), (0, 0));
        ensure!(brute == expected, "quartic brute count at {len} is {brute}, expected {expected}");
        let mut codes = BTreeSet::new();
        for w in walks(Family::Quartic, len, Point::ORIGIN) {
            let map = bijections::quartic_forward(&w).map_err(|e| format!("{w}: {e}"))?;
            ensure!(map.map.vertex_degrees().iter().all(|&d| d == 4), "{w} is not quartic");
            codes.insert(map.canonical_code());
        }
        ensure!(codes.len() as u64 == expected, "{} quartic images at {len}", codes.len());
    }
    let luk = StepAlphabet::family(Family::Lukasiewicz).bounded(3);
    let mut checked = 0;
    for len in 0..=6 {
        for end in [Point::ORIGIN, Point::new(2, 0)] {
            for w in enumerate_walks(&luk, len, Point::ORIGIN, end).unwrap() {
                if w.is_empty() {
                    continue;
                }
                let map = bijections::lukasiewicz_forward(&w).map_err(|e| format!("{w}: {e}"))?;
                let mut degrees = map.map.vertex_degrees();
                degrees.sort_unstable();
                let mut expected: Vec<usize> =
                    w.steps().iter().filter(|s| s.dx == 0).map(|s| s.dy as usize + 2).collect();
                expected.sort_unstable();
                ensure!(degrees == expected, "{w}: degrees {degrees:?}, expected {expected:?}");
                let back = bijections::lukasiewicz_inverse(&map).map_err(|e| e.to_string())?;
                ensure!(back.steps() == w.steps(), "inverse of {w} gives {back}");
                checked += 1;
            }
        }
    }
    Ok(format!("quartic 1, 6; degree law on {checked} walks"))
}

fn criterion_4() -> Outcome {
    let mut round_trips = 0;
    for (n, expected) in [(1, 1u64), (2, 5), (3, 42)] {
        let len = 3 * n;
        let brute = naive_count(&TANDEM, len, (0, 0), (0, 0));
        ensure!(brute == expected, "tandem brute count at {len} is {brute}");
        let mut codes = BTreeSet::new();
        for w in walks(Family::Tandem, len, Point::ORIGIN) {
            let p = bijections::tandem_to_prograph(&w).map_err(|e| format!("{w}: {e}"))?;
            codes.insert(p.canonical_code());
            let back = bijections::prograph_to_tandem(&p).map_err(|e| e.to_string())?;
            ensure!(back.steps() == w.steps(), "prograph round trip of {w} gives {back}");
            let t = bijections::tandem_to_syt(&w).map_err(|e| e.to_string())?;
            let back = bijections::syt_to_tandem(&t).map_err(|e| e.to_string())?;
            ensure!(back.steps() == w.steps(), "tableau round trip of {w} gives {back}");
            round_trips += 1;
        }
        ensure!(codes.len() as u64 == expected, "{} prographs at {len}", codes.len());
    }
    ensure!(round_trips == 48, "{round_trips} round trips, expected 48");
    let w = Walk::from_word(&StepAlphabet::family(Family::Tandem), "abacbc").unwrap();
    let t = bijections::tandem_to_syt(&w).map_err(|e| e.to_string())?;
    ensure!(t.rows == [vec![1, 3], vec![2, 5], vec![4, 6]], "abacbc tableau is {:?}", t.rows);
    let p: Prograph = bijections::tandem_to_prograph(&w).map_err(|e| e.to_string())?;
    ensure!(p.products().len() == 2 && p.coproducts().len() == 2, "abacbc prograph shape");
    Ok(format!("counts 1,5,42; {round_trips} round trips; abacbc rows 1,3/2,5/4,6"))
}

fn criterion_5() -> Outcome {
    let at3 = naive_count(&KREWERAS, 3, (0, 0), (0, 0));
    ensure!(at3 == 2, "brute count at 3 is {at3}");
    let at6 = naive_count(&KREWERAS, 6, (0, 0), (0, 0));
    let (a, b) = mating_core::counting::kreweras_formula(2);
    let reading = match (a == at6.into(), b == at6.into()) {
        (true, true) => "both",
        (true, false) => "A",
        (false, true) => "B",
        (false, false) => "neither",
    };
    let mut checked = 0;
    for len in [3, 6, 9] {
        for w in walks(Family::Kreweras, len, Point::ORIGIN) {
            let mated = bijections::kreweras_forward(&w).map_err(|e| format!("{w}: {e}"))?;
            bijections::validate_kreweras(&mated).map_err(|e| format!("{w}: {e}"))?;
            ensure!(mated.map.is_loopless() && mated.map.dual().is_loopless(), "{w} has a loop");
            let grown = bijections::bernardi_grow(&w).map_err(|e| format!("{w}: {e}"))?;
            ensure!(grown.canonical_code() == mated.canonical_code(), "growth differs from mating on {w}");
            checked += 1;
        }
    }
    Ok(format!("brute 2 at 3; brute {at6} at 6 (A={a}, B={b}, matches {reading}); {checked} walks equal and loopless"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for len in [2, 4, 6] {
        let mut codes = BTreeSet::new();
        for w in walks(Family::Straight, len, Point::ORIGIN) {
            let map = bijections::mullin_map(&w).map_err(|e| format!("{w}: {e}"))?;
            let back = bijections::mullin_walk(&map).map_err(|e| format!("{w}: {e}"))?;
            ensure!(back.steps() == w.steps(), "round trip of {w} gives {back}");
            codes.insert(map.canonical_code());
            checked += 1;
        }
        if len == 2 {
            ensure!(codes.len() == 2, "{} images at length 2", codes.len());
        }
    }
    Ok(format!("{checked} round trips; 2 images at length 2"))
}

fn criterion_7() -> Outcome {
    let alphabet = StepAlphabet::family(Family::Kmsw).bounded(3);
    let mut checked = 0;
    for len in 0..=6i64 {
        for n in 0..=len {
            for m in 0..=3 * len {
                for w in enumerate_walks(&alphabet, len as usize, Point::new(0, n), Point::new(m, 0)).unwrap() {
                    let map = bijections::kmsw_to_bipolar(&w).map_err(|e| format!("{w}: {e}"))?;
                    bijections::validate_bipolar(&map).map_err(|e| format!("{w}: {e}"))?;
                    let got = bijections::kmsw::internal_face_degrees(&map);
                    let want = bijections::kmsw::expected_face_degrees(&w);
                    ensure!(got == want, "{w}: faces {got:?}, expected {want:?}");
                    checked += 1;
                }
            }
        }
    }
    let text = "(1,-1);(0,2);(-1,0);(0,1);(1,-1);(1,-1);(-1,1);(0,1);(1,-1);(1,-1);(1,-1);(1,-1);(-1,0);(-2,1);(1,-1) @ (0,2)";
    let w = parse_walk_text(text, &alphabet).map_err(|e| e.to_string())?;
    let map = bijections::kmsw_to_bipolar(&w).map_err(|e| e.to_string())?;
    bijections::validate_bipolar(&map).map_err(|e| e.to_string())?;
    let faces = bijections::kmsw::internal_face_degrees(&map);
    ensure!(faces == vec![3, 3, 3, 3, 4, 4, 5], "example faces {faces:?}");
    Ok(format!("{checked} walks bipolar with face law; example faces {faces:?}"))
}

fn criterion_8() -> Outcome {
    let alphabet = StepAlphabet::family(Family::Schnyder);
    let word = "aabbacabaccabacbbaacbbbacccc";
    let w = Walk::from_word(&alphabet, word).map_err(|e| e.to_string())?;
    let wood = bijections::tandem_to_schnyder(&w).map_err(|e| e.to_string())?;
    let back = bijections::schnyder_to_tandem(&wood).map_err(|e| e.to_string())?;
    ensure!(back.word().as_deref() == Some(word), "running word gives {back}");
    let mut checked = 0;
    for len in [1, 4, 7, 10] {
        for w in enumerate_walks(&alphabet, len, Point::ORIGIN, Point::new(1, 0)).unwrap() {
            ensure!(!w.word().unwrap().contains("bc"), "enumeration produced {w}");
            let wood = bijections::tandem_to_schnyder(&w).map_err(|e| format!("{w}: {e}"))?;
            bijections::validate_schnyder(&wood).map_err(|e| format!("{w}: {e}"))?;
            let back = bijections::schnyder_to_tandem(&wood).map_err(|e| format!("{w}: {e}"))?;
            ensure!(back.steps() == w.steps(), "{w} re-extracts as {back}");
            checked += 1;
        }
    }
    Ok(format!("running word round trips; {checked} words valid and re-extracted"))
}

fn check_map(m: &CombinatorialMap) -> Result<(), String> {
    ensure!(m.euler_characteristic() == 2, "euler characteristic {}", m.euler_characteristic());
    let face_sum: usize = m.face_degrees().iter().sum();
    ensure!(face_sum == 2 * m.num_edges(), "face degrees sum to {face_sum}");
    for d in m.darts() {
        ensure!(m.opp(d) != d && m.opp(m.opp(d)) == d, "opposite is not a fixed-point-free involution");
        ensure!(m.rot(m.rot_inv(d)) == d, "rotation is not a permutation");
    }
    ensure!(m.dual().dual().canonical_code() == m.canonical_code(), "dual of dual differs");
    Ok(())
}

fn naive_dyck(len: usize) -> Vec<Vec<i64>> {
    fn go(prefix: &mut Vec<i64>, height: i64, left: usize, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if height == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for s in [1, -1] {
            if height + s >= 0 && height + s <= left as i64 - 1 {
                prefix.push(s);
                go(prefix, height + s, left - 1, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, len, &mut out);
    out
}

/// First-return decomposition straight from the definition.
fn naive_tree(path: &[i64]) -> BinaryTree {
    if path.is_empty() {
        return BinaryTree::Empty;
    }
    let mut h = 0;
    let close = path
        .iter()
        .position(|&s| {
            h += s;
            h == 0
        })
        .unwrap();
    BinaryTree::node(naive_tree(&path[1..close]), naive_tree(&path[close + 1..]))
}

/// Each down step pairs with the nearest earlier up step at the same level.
fn naive_pairing(path: &[i64]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (j, &s) in path.iter().enumerate() {
        if s != -1 {
            continue;
        }
        let mut h = 0;
        for i in (0..j).rev() {
            h += path[i];
            if h == 1 {
                pairs.push((i + 1, j + 1));
                break;
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

fn criterion_9() -> Outcome {
    let mut maps = 0;
    let mut push = |m: &CombinatorialMap| -> Result<(), String> {
        maps += 1;
        check_map(m)
    };
    for len in [4, 8, 12] {
        for w in walks(Family::Ry, len, Point::ORIGIN) {
            push(&bijections::ry_forward(&w).unwrap().map)?;
        }
    }
    for len in [3, 6, 9, 12] {
        for w in walks(Family::Kreweras, len, Point::ORIGIN) {
            push(&bijections::kreweras_forward(&w).unwrap().map)?;
        }
        for w in walks(Family::Tandem, len, Point::ORIGIN) {
            push(&bijections::tandem_to_prograph(&w).unwrap().map.map)?;
        }
    }
    for len in [2, 4, 6, 8, 10, 12] {
        for w in walks(Family::Straight, len, Point::ORIGIN) {
            push(&bijections::mullin_map(&w).unwrap().map)?;
        }
    }
    let mut paths = 0;
    for len in (0..=12).step_by(2) {
        for p in naive_dyck(len) {
            let path = LatticePath::new(0, p.clone());
            let tree = dyck_to_tree(&path).map_err(|e| e.to_string())?;
            ensure!(tree == naive_tree(&p), "tree of {p:?} differs from the recursive oracle");
            ensure!(tree.to_dyck() == path, "tree of {p:?} does not return to its path");
            ensure!(match_path(&path).matched == naive_pairing(&p), "pairing of {p:?} differs");
            paths += 1;
        }
    }
    Ok(format!("{maps} maps structurally valid; {paths} Dyck paths agree with oracles"))
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("mating-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let map_path = dir.join("wood.map");
    let map_arg = map_path.to_str().unwrap().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--family", "tandem", "--length", "6"],
        vec!["count", "--family", "kreweras", "--length", "9"],
        vec!["verify", "--family", "kreweras", "--n", "2", "--format", "csv"],
        vec!["mate", "--family", "kreweras", "--walk", "aabbccbac"],
        vec!["mate", "--family", "kreweras", "--walk", "aabbccbac", "--format", "svg"],
        vec!["forward", "--bijection", "ry", "--walk", "(0,1);(0,1);(1,-1);(-1,-1)", "--format", "dot"],
        vec!["forward", "--bijection", "schnyder", "--walk", "aabbacabaccabacbbaacbbbacccc", "--out", &map_arg],
        vec!["inverse", "--bijection", "schnyder", "--in", &map_arg],
        vec!["forward", "--bijection", "syt", "--walk", "abacbc"],
        vec!["render", "--family", "tandem", "--walk", "abacbc", "--format", "svg"],
    ];
    let bin = env!("CARGO_BIN_EXE_mating");
    for args in &runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
            let file = std::fs::read(&map_path).unwrap_or_default();
            outputs.push((out.stdout, file));
        }
        ensure!(outputs[0] == outputs[1], "{args:?} is not reproducible");
    }
    let inverse = Command::new(bin).args(&runs[7]).output().map_err(|e| e.to_string())?;
    ensure!(
        String::from_utf8_lossy(&inverse.stdout).trim() == "aabbacabaccabacbbaacbbbacccc",
        "CLI round trip changed the word"
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rY counts, distinct images, inverse", criterion_1),
        ("rY both endpoints at length 4", criterion_2),
        ("quartic counts and degree law", criterion_3),
        ("tandem, prographs and tableaux", criterion_4),
        ("Kreweras counts, growth equivalence, loopless", criterion_5),
        ("straight walks and Hamiltonian triangulations", criterion_6),
        ("bipolar maps", criterion_7),
        ("Schnyder woods", criterion_8),
        ("structural map and path invariants", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
