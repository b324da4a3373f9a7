//! Command dispatch for the `mating` binary. Every verb is a pure function of
//! its flags and input files, so repeated runs produce identical output.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::bijections::{self, Prograph, Syt};
use crate::counting::{self, CountReport};
use crate::error::{Error, Result};
use crate::map::DecoratedMap;
use crate::mating::{build_diagram, mate_diagram, Boundary, ContractionRule};
use crate::render;
use crate::walks::{count_walks, enumerate_walks, Family, Point, StepAlphabet, Walk};

pub use crate::walks::parse_walk_text;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Enumerate,
    Count,
    Mate,
    Forward,
    Inverse,
    Verify,
    Render,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Map,
    Dot,
    Svg,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Bijection {
    Ry,
    Quartic,
    Lukasiewicz,
    Mullin,
    Kreweras,
    Bernardi,
    Prograph,
    Syt,
    Kmsw,
    Schnyder,
}

impl Bijection {
    fn for_family(f: Family) -> Result<Bijection> {
        Ok(match f {
            Family::Ry => Bijection::Ry,
            Family::Quartic => Bijection::Quartic,
            Family::Lukasiewicz => Bijection::Lukasiewicz,
            Family::Straight => Bijection::Mullin,
            Family::Kreweras => Bijection::Kreweras,
            Family::Tandem => Bijection::Prograph,
            Family::Kmsw => Bijection::Kmsw,
            Family::Schnyder => Bijection::Schnyder,
            other => return Err(Error::UnknownFamily(format!("no bijection for {}", other.name()))),
        })
    }

    fn family(self) -> Family {
        match self {
            Bijection::Ry => Family::Ry,
            Bijection::Quartic => Family::Quartic,
            Bijection::Lukasiewicz => Family::Lukasiewicz,
            Bijection::Mullin => Family::Straight,
            Bijection::Kreweras | Bijection::Bernardi => Family::Kreweras,
            Bijection::Prograph | Bijection::Syt => Family::Tandem,
            Bijection::Kmsw => Family::Kmsw,
            Bijection::Schnyder => Family::Schnyder,
        }
    }
}

/// Parsed command line.
#[derive(Clone, Debug, Parser)]
#[command(name = "mating", about = "Walks in the quarter plane and the planar maps they encode")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub bijection: Option<Bijection>,
    /// Size parameter for `verify`.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub length: Option<usize>,
    /// Start point `x,y` for `enumerate` and `count`.
    #[arg(long, value_parser = parse_point)]
    pub start: Option<Point>,
    /// End point `x,y`.
    #[arg(long, value_parser = parse_point)]
    pub end: Option<Point>,
    #[arg(long)]
    pub walk: Option<String>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// One `0` (NW-SE) or `1` (NE-SW) per oblique cell.
    #[arg(long)]
    pub rule: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
}

pub fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad coordinate `{t}`: {e}"));
    Ok(Point::new(p(x)?, p(y)?))
}

impl Command {
    fn family(&self) -> Result<Family> {
        match (&self.family, self.bijection) {
            (Some(f), _) => Family::from_name(f),
            (None, Some(b)) => Ok(b.family()),
            (None, None) => Err(Error::UnknownFamily("missing --family".into())),
        }
    }

    fn bijection(&self) -> Result<Bijection> {
        match self.bijection {
            Some(b) => Ok(b),
            None => Bijection::for_family(self.family()?),
        }
    }

    fn alphabet(&self) -> Result<StepAlphabet> {
        let f = self.family()?;
        let a = StepAlphabet::family(f);
        Ok(match f {
            Family::Kmsw | Family::Lukasiewicz if self.verb == Verb::Enumerate || self.verb == Verb::Count => {
                a.bounded(self.budget.unwrap_or(counting::KMSW_BOUND))
            }
            _ => a,
        })
    }

    fn input_text(&self) -> Result<String> {
        if let Some(path) = &self.input {
            return Ok(fs::read_to_string(path)?);
        }
        if let Some(w) = &self.walk {
            return Ok(w.clone());
        }
        Err(Error::Io("missing --walk or --in".into()))
    }

    fn walk(&self) -> Result<Walk> {
        let text = self.input_text()?;
        let line = text.lines().next().unwrap_or("");
        parse_walk_text(line, &self.alphabet()?)
    }

    fn length(&self) -> Result<usize> {
        self.length.ok_or_else(|| Error::WrongLength("missing --length".into()))
    }
}

/// Runs a command and returns what it prints. With `--out` the output goes to
/// that file instead and the return value is empty.
pub fn run(cmd: &Command) -> Result<String> {
    let text = match cmd.verb {
        Verb::Enumerate => {
            let start = cmd.start.unwrap_or(Point::ORIGIN);
            let end = cmd.end.unwrap_or(Point::ORIGIN);
            let walks = enumerate_walks(&cmd.alphabet()?, cmd.length()?, start, end)?;
            walks.iter().map(|w| format!("{w}\n")).collect()
        }
        Verb::Count => {
            let start = cmd.start.unwrap_or(Point::ORIGIN);
            let end = cmd.end.unwrap_or(Point::ORIGIN);
            format!("{}\n", count_walks(&cmd.alphabet()?, cmd.length()?, start, end)?)
        }
        Verb::Mate => mate_command(cmd)?,
        Verb::Forward => forward_command(cmd)?,
        Verb::Inverse => inverse_command(cmd)?,
        Verb::Verify => verify_command(cmd)?,
        Verb::Render => {
            let walk = cmd.walk()?;
            match cmd.format.unwrap_or(Format::Svg) {
                Format::Svg => render::diagram_svg(&build_diagram(&walk)?),
                Format::Dot => render::map_dot(&forward(cmd.bijection()?, &walk)?, "map"),
                other => return Err(Error::Io(format!("render cannot produce {other:?}"))),
            }
        }
    };
    match &cmd.out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn default_rule(family: Family) -> ContractionRule {
    match family {
        Family::Kreweras => ContractionRule::Kreweras,
        Family::Tandem | Family::TandemT | Family::Schnyder | Family::Kmsw => ContractionRule::Tandem,
        Family::Straight => ContractionRule::Keep,
        _ => ContractionRule::NorthwestSoutheast,
    }
}

fn mate_command(cmd: &Command) -> Result<String> {
    let walk = cmd.walk()?;
    let rule = match &cmd.rule {
        Some(bits) => ContractionRule::from_bits(bits)?,
        None => default_rule(cmd.family()?),
    };
    let diagram = build_diagram(&walk)?;
    if cmd.format == Some(Format::Svg) {
        return Ok(render::diagram_svg(&diagram));
    }
    let boundary = if diagram.boundary().len() == 2 { Boundary::Closed } else { Boundary::Open };
    let mating = mate_diagram(diagram, &rule, &boundary)?;
    let map = mating.decorated();
    Ok(match cmd.format.unwrap_or(Format::Map) {
        Format::Dot => render::map_dot(&map, "mating"),
        _ => map.to_text(),
    })
}

fn forward(b: Bijection, walk: &Walk) -> Result<DecoratedMap> {
    match b {
        Bijection::Ry => bijections::ry_forward(walk),
        Bijection::Quartic => bijections::quartic_forward(walk),
        Bijection::Lukasiewicz => bijections::lukasiewicz_forward(walk),
        Bijection::Mullin => bijections::mullin_map(walk),
        Bijection::Kreweras => bijections::kreweras_forward(walk),
        Bijection::Bernardi => bijections::bernardi_grow(walk),
        Bijection::Prograph => bijections::tandem_to_prograph(walk).map(|p| p.map),
        Bijection::Kmsw => bijections::kmsw_to_bipolar(walk),
        Bijection::Schnyder => bijections::tandem_to_schnyder(walk),
        Bijection::Syt => Err(Error::InvalidDecoration("the tableau bijection has no map".into())),
    }
}

fn forward_command(cmd: &Command) -> Result<String> {
    let b = cmd.bijection()?;
    let walk = cmd.walk()?;
    if b == Bijection::Syt {
        return Ok(bijections::tandem_to_syt(&walk)?.to_string());
    }
    let map = forward(b, &walk)?;
    Ok(match cmd.format.unwrap_or(Format::Map) {
        Format::Dot => render::map_dot(&map, "map"),
        _ => map.to_text(),
    })
}

fn inverse_command(cmd: &Command) -> Result<String> {
    let b = cmd.bijection()?;
    let text = cmd.input_text()?;
    let walk = match b {
        Bijection::Syt => bijections::syt_to_tandem(&Syt::parse(&text)?)?,
        _ => {
            let map = DecoratedMap::from_text(&text)?;
            match b {
                Bijection::Ry => bijections::ry_inverse(&map)?,
                Bijection::Quartic | Bijection::Lukasiewicz => bijections::lukasiewicz_inverse(&map)?,
                Bijection::Mullin => bijections::mullin_walk(&map)?,
                Bijection::Prograph => bijections::prograph_to_tandem(&Prograph { map })?,
                Bijection::Schnyder => bijections::schnyder_to_tandem(&map)?,
                other => {
                    return Err(Error::InvalidDecoration(format!("{other:?} has no inverse here")));
                }
            }
        }
    };
    Ok(format!("{walk}\n"))
}

fn validate(b: Bijection, map: &DecoratedMap) -> Result<()> {
    match b {
        Bijection::Ry | Bijection::Quartic | Bijection::Lukasiewicz => {
            bijections::validate_complete_tree(map).map(|_| ())
        }
        Bijection::Mullin => bijections::validate_mullin(map),
        Bijection::Kreweras | Bijection::Bernardi => bijections::validate_kreweras(map),
        Bijection::Prograph => bijections::validate_prograph(&Prograph { map: map.clone() }),
        Bijection::Kmsw => bijections::validate_bipolar(map),
        Bijection::Schnyder => bijections::validate_schnyder(map),
        Bijection::Syt => Err(Error::InvalidDecoration("the tableau bijection has no map".into())),
    }
}

/// With `--in`, validates a decorated map (or tableau); otherwise prints the
/// counting report for `--family` at `--n`.
fn verify_command(cmd: &Command) -> Result<String> {
    if cmd.input.is_some() {
        let b = cmd.bijection()?;
        let text = cmd.input_text()?;
        if b == Bijection::Syt {
            Syt::parse(&text)?;
        } else {
            validate(b, &DecoratedMap::from_text(&text)?)?;
        }
        return Ok("valid\n".to_string());
    }
    let n = cmd.n.ok_or_else(|| Error::WrongLength("missing --n".into()))?;
    let report = counting::verify_family(cmd.family()?, n, cmd.budget)?;
    Ok(format!("{}\n{}\n", CountReport::CSV_HEADER, report.to_csv_row()))
}
