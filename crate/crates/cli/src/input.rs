//! Resolving the single input source of a command into graphs.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use tdom_core::generators::{
    complete, corona_p2, cycle, enumerate_small_graphs, fixture, path, random_block_graph, random_tree, star,
    FixtureName, GraphFilter,
};
use tdom_core::io::{parse_graph, parse_graph6_stream, Format};
use tdom_core::Graph;

use crate::CliError;

/// A `--generate` request, e.g. `cycle:6`, `corona-cycle:500`, `tree:12`,
/// `block:4:3`, `small:5:connected`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateSpec {
    Cycle(usize),
    Path(usize),
    Star(usize),
    Complete(usize),
    CoronaCycle(usize),
    CoronaPath(usize),
    /// Random tree on `n` vertices.
    Tree(usize),
    /// Random block graph: block count, largest clique.
    Block(usize, usize),
    /// Every labeled graph on `n` vertices passing the filter.
    Small(usize, GraphFilter),
}

impl FromStr for GenerateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("`{s}` is missing a size"))?
                .parse()
                .map_err(|_| format!("`{}` in `{s}` is not a number", parts[i]))
        };
        let at_least = |i: usize, min: usize| -> Result<usize, String> {
            let k = num(i)?;
            if k < min {
                return Err(format!("`{s}` needs a size of at least {min}"));
            }
            Ok(k)
        };
        let arity = |expected: &[usize]| -> Result<(), String> {
            if expected.contains(&parts.len()) {
                Ok(())
            } else {
                Err(format!("`{s}` has the wrong number of fields"))
            }
        };
        let spec = match parts[0] {
            "cycle" => GenerateSpec::Cycle(at_least(1, 3)?),
            "path" => GenerateSpec::Path(at_least(1, 1)?),
            "star" => GenerateSpec::Star(at_least(1, 1)?),
            "complete" => GenerateSpec::Complete(at_least(1, 1)?),
            "corona-cycle" => GenerateSpec::CoronaCycle(at_least(1, 3)?),
            "corona-path" => GenerateSpec::CoronaPath(at_least(1, 1)?),
            "tree" => GenerateSpec::Tree(at_least(1, 1)?),
            "block" => {
                arity(&[3])?;
                GenerateSpec::Block(at_least(1, 2)?, at_least(2, 2)?)
            }
            "small" => {
                arity(&[2, 3])?;
                let filter = match parts.get(2) {
                    Some(f) => f.parse()?,
                    None => GraphFilter::All,
                };
                GenerateSpec::Small(num(1)?, filter)
            }
            other => return Err(format!("unknown generator `{other}`")),
        };
        if !matches!(spec, GenerateSpec::Block(..) | GenerateSpec::Small(..)) {
            arity(&[2])?;
        }
        Ok(spec)
    }
}

impl GenerateSpec {
    pub fn generate(&self, seed: u64) -> Result<Vec<Graph>, CliError> {
        Ok(match *self {
            GenerateSpec::Cycle(k) => vec![cycle(k)],
            GenerateSpec::Path(k) => vec![path(k)],
            GenerateSpec::Star(k) => vec![star(k)],
            GenerateSpec::Complete(k) => vec![complete(k)],
            GenerateSpec::CoronaCycle(k) => vec![corona_p2(&cycle(k))],
            GenerateSpec::CoronaPath(k) => vec![corona_p2(&path(k))],
            GenerateSpec::Tree(n) => vec![random_tree(n, seed)],
            GenerateSpec::Block(blocks, clique) => vec![random_block_graph(blocks, clique, seed)],
            GenerateSpec::Small(n, filter) => enumerate_small_graphs(n, filter)?.collect(),
        })
    }
}

/// Where graphs come from.
#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Fixture(FixtureName),
    Generate(GenerateSpec),
}

impl Source {
    /// Picks the one source given; more than one is a usage error.
    pub fn resolve(
        positional: Option<PathBuf>,
        input: Option<PathBuf>,
        fixture: Option<FixtureName>,
        generate: Option<GenerateSpec>,
    ) -> Result<Option<Source>, CliError> {
        let mut given: Vec<Source> = Vec::new();
        given.extend(positional.map(Source::File));
        given.extend(input.map(Source::File));
        given.extend(fixture.map(Source::Fixture));
        given.extend(generate.map(Source::Generate));
        match given.len() {
            0 => Ok(None),
            1 => Ok(given.pop()),
            _ => Err(CliError::Usage(
                "give exactly one input: a file, --input, --fixture or --generate".into(),
            )),
        }
    }

    pub fn load(&self, format: Option<Format>, seed: u64) -> Result<Vec<Graph>, CliError> {
        match self {
            Source::Fixture(name) => Ok(vec![fixture(*name)]),
            Source::Generate(spec) => spec.generate(seed),
            Source::File(path) => {
                let text = read_source(path)?;
                let format = format.unwrap_or_else(|| guess_format(path, &text));
                match format {
                    Format::Graph6 => Ok(parse_graph6_stream(&text)?),
                    Format::EdgeList => Ok(vec![parse_graph(&text, Format::EdgeList)?]),
                }
            }
        }
    }
}

fn read_source(path: &Path) -> Result<String, CliError> {
    let io_error = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_error)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_error)
    }
}

/// Extension first (`.g6`, `.graph6` or `.txt`, `.edges`, `.el`); otherwise a
/// first data line containing whitespace means an edge list.
fn guess_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return Format::Graph6,
        Some("edges" | "el" | "txt" | "edgelist") => return Format::EdgeList,
        _ => {}
    }
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(line) if line.starts_with('#') || line.split_whitespace().count() > 1 => Format::EdgeList,
        _ => Format::Graph6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_specs_parse() {
        assert_eq!("cycle:6".parse(), Ok(GenerateSpec::Cycle(6)));
        assert_eq!("corona-cycle:500".parse(), Ok(GenerateSpec::CoronaCycle(500)));
        assert_eq!("block:4:3".parse(), Ok(GenerateSpec::Block(4, 3)));
        assert_eq!("small:4".parse(), Ok(GenerateSpec::Small(4, GraphFilter::All)));
        assert_eq!("small:5:connected".parse(), Ok(GenerateSpec::Small(5, GraphFilter::Connected)));
        for bad in ["cycle:2", "cycle", "cycle:x", "cycle:5:1", "block:1:3", "hypercube:3", "small:4:odd"] {
            assert!(bad.parse::<GenerateSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn generated_shapes() {
        let g = GenerateSpec::CoronaCycle(4).generate(0).unwrap();
        assert_eq!(g[0].order(), 12);
        assert_eq!(GenerateSpec::Small(3, GraphFilter::All).generate(0).unwrap().len(), 8);
        assert_eq!(GenerateSpec::Tree(9).generate(5).unwrap(), GenerateSpec::Tree(9).generate(5).unwrap());
        assert!(GenerateSpec::Small(9, GraphFilter::All).generate(0).is_err());
    }

    #[test]
    fn format_guessing() {
        assert_eq!(guess_format(Path::new("x.g6"), "0 1"), Format::Graph6);
        assert_eq!(guess_format(Path::new("x.edges"), "A_"), Format::EdgeList);
        assert_eq!(guess_format(Path::new("x"), "A_\nBw\n"), Format::Graph6);
        assert_eq!(guess_format(Path::new("x"), "\n0 1\n1 2\n"), Format::EdgeList);
        assert_eq!(guess_format(Path::new("x"), "# comment\nn 3\n"), Format::EdgeList);
    }

    #[test]
    fn at_most_one_source() {
        let fixture = Some(FixtureName::G1);
        assert!(Source::resolve(None, None, None, None).unwrap().is_none());
        assert!(Source::resolve(Some("a".into()), None, fixture, None).is_err());
        assert!(matches!(
            Source::resolve(None, None, fixture, None).unwrap(),
            Some(Source::Fixture(FixtureName::G1))
        ));
    }
}
