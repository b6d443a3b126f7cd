//! Textual strategy notation.
//!
//! ```text
//! spec    := [label ":"] "GMDE" ["#" digits] "(" base "," control "," d1 "," d2 ")"
//! d1, d2  := block | "[" block ("," block)* "]"
//! block   := rand | best | current | base | top[:p] | worst[:p] | tour:k
//! control := jDE | F | fixed, optionally suffixed with "+k"
//! ```
//!
//! `d1` lists the first element of every difference pair and `d2` the second,
//! so `GMDE(best, jDE, [rand, rand], [rand, rand])` is `DE/best/2`. The
//! control token names the scaling-factor source; only its `+k` suffix is
//! stored, selecting [`CoefficientMode::CurrentToRand`].
//!
//! The id of a parsed spec is the label when given, `GMDE#<n>` when numbered,
//! and otherwise the canonical text of the spec itself.

use super::{Block, CoefficientMode, DiffPair, StrategySpec, DEFAULT_P};
use crate::error::{Error, Result};

pub fn render_spec(spec: &StrategySpec) -> String {
    let body = render_body(spec);
    if is_numbered_id(&spec.id) {
        format!("{}{}", spec.id, &body["GMDE".len()..])
    } else if spec.id == body {
        body
    } else {
        format!("{}: {}", spec.id, body)
    }
}

fn is_numbered_id(id: &str) -> bool {
    id.strip_prefix("GMDE#")
        .is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
}

pub(super) fn render_body(spec: &StrategySpec) -> String {
    let control = match spec.mode {
        CoefficientMode::Standard => "jDE",
        CoefficientMode::CurrentToRand => "jDE+k",
    };
    let list = |blocks: Vec<Block>| -> String {
        let parts: Vec<String> = blocks.iter().map(render_block).collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("[{}]", parts.join(", "))
        }
    };
    format!(
        "GMDE({}, {}, {}, {})",
        render_block(&spec.base),
        control,
        list(spec.diffs.iter().map(|d| d.plus).collect()),
        list(spec.diffs.iter().map(|d| d.minus).collect()),
    )
}

fn render_block(block: &Block) -> String {
    match block {
        Block::Rand => "rand".into(),
        Block::Best => "best".into(),
        Block::Current => "current".into(),
        Block::BaseEcho => "base".into(),
        Block::TopP(p) => format!("top:{p}"),
        Block::WorstP(p) => format!("worst:{p}"),
        Block::Tournament(k) => format!("tour:{k}"),
    }
}

pub fn parse_spec(text: &str) -> Result<StrategySpec> {
    let paren = text.find('(').ok_or_else(|| Error::Parse {
        position: text.len(),
        message: "expected `(`".into(),
    })?;
    let head = &text[..paren];
    let (label, keyword, keyword_at) = match head.rfind(':') {
        Some(colon) => (Some(head[..colon].trim()), &head[colon + 1..], colon + 1),
        None => (None, head, 0),
    };
    let kw = keyword.trim();
    let numbered = if kw == "GMDE" {
        None
    } else if is_numbered_id(kw) {
        Some(kw.to_string())
    } else {
        return Err(Error::Parse {
            position: keyword_at + (keyword.len() - keyword.trim_start().len()),
            message: format!("expected `GMDE` or `GMDE#<n>`, found `{kw}`"),
        });
    };
    if label.is_some_and(str::is_empty) {
        return Err(Error::Parse {
            position: 0,
            message: "empty label".into(),
        });
    }

    let mut p = Parser {
        text,
        pos: paren + 1,
    };
    let base_at = p.skip_ws();
    let base = p.block()?;
    if base == Block::BaseEcho {
        return Err(Error::Parse {
            position: base_at,
            message: "`base` cannot be the base block".into(),
        });
    }
    p.expect(',')?;
    let mode = p.control()?;
    p.expect(',')?;
    let d1_at = p.skip_ws();
    let d1 = p.list()?;
    p.expect(',')?;
    let d2 = p.list()?;
    p.expect(')')?;
    let end = p.skip_ws();
    if end != text.len() {
        return Err(Error::Parse {
            position: end,
            message: "unexpected trailing input".into(),
        });
    }
    if d1.len() != d2.len() {
        return Err(Error::Parse {
            position: d1_at,
            message: format!(
                "d1 has {} elements but d2 has {}; both list one element per difference",
                d1.len(),
                d2.len()
            ),
        });
    }
    let diffs: Vec<DiffPair> = d1
        .into_iter()
        .zip(d2)
        .map(|(plus, minus)| DiffPair { plus, minus })
        .collect();

    let mut spec = StrategySpec {
        id: String::new(),
        base,
        diffs,
        mode,
    };
    spec.id = match (label, numbered) {
        (Some(label), _) => label.to_string(),
        (None, Some(numbered)) => numbered,
        (None, None) => render_body(&spec),
    };
    spec.validate().map_err(|e| Error::Parse {
        position: 0,
        message: e.to_string(),
    })?;
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) -> usize {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
        self.pos
    }

    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let at = self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(at, format!("expected `{c}`"))
        }
    }

    /// Longest run of characters that can appear inside a token.
    fn token(&mut self) -> (usize, &'a str) {
        let at = self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, ':' | '.' | '+' | '-' | '_')))
            .unwrap_or(self.rest().len());
        self.pos += len;
        (at, &self.text[at..at + len])
    }

    fn block(&mut self) -> Result<Block> {
        let (at, tok) = self.token();
        let (name, arg) = match tok.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (tok, None),
        };
        let fraction = |arg: Option<&str>| -> Result<f64> {
            match arg {
                None => Ok(DEFAULT_P),
                Some(a) => a.parse::<f64>().map_err(|_| Error::Parse {
                    position: at + name.len() + 1,
                    message: format!("invalid fraction `{a}`"),
                }),
            }
        };
        let block = match (name, arg) {
            ("rand", None) => Block::Rand,
            ("best", None) => Block::Best,
            ("current", None) => Block::Current,
            ("base", None) => Block::BaseEcho,
            ("top", a) => Block::TopP(fraction(a)?),
            ("worst", a) => Block::WorstP(fraction(a)?),
            ("tour", Some(a)) => Block::Tournament(a.parse().map_err(|_| Error::Parse {
                position: at + name.len() + 1,
                message: format!("invalid tournament size `{a}`"),
            })?),
            ("tour", None) => return self.err(at, "tournament needs a size, e.g. `tour:2`"),
            ("", _) => return self.err(at, "expected a block name"),
            _ => return self.err(at, format!("unknown block `{tok}`")),
        };
        if let Err(e) = block.validate() {
            return self.err(at, e.to_string());
        }
        Ok(block)
    }

    fn list(&mut self) -> Result<Vec<Block>> {
        self.skip_ws();
        if !self.rest().starts_with('[') {
            return Ok(vec![self.block()?]);
        }
        self.pos += 1;
        let mut blocks = vec![self.block()?];
        loop {
            let at = self.skip_ws();
            match self.rest().chars().next() {
                Some(',') => {
                    self.pos += 1;
                    blocks.push(self.block()?);
                }
                Some(']') => {
                    self.pos += 1;
                    return Ok(blocks);
                }
                _ => return self.err(at, "expected `,` or `]`"),
            }
        }
    }

    fn control(&mut self) -> Result<CoefficientMode> {
        let (at, tok) = self.token();
        let (name, mode) = match tok.strip_suffix("+k") {
            Some(name) => (name, CoefficientMode::CurrentToRand),
            None => (tok, CoefficientMode::Standard),
        };
        match name.to_ascii_lowercase().as_str() {
            "jde" | "f" | "fixed" => Ok(mode),
            _ => self.err(at, format!("unknown control `{tok}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{lookup, registry};

    fn shape(s: &StrategySpec) -> (Block, Vec<DiffPair>, CoefficientMode) {
        (s.base, s.diffs.clone(), s.mode)
    }

    #[test]
    fn parses_rand1() {
        let s = parse_spec("GMDE(rand, jDE, rand, rand)").unwrap();
        assert_eq!(shape(&s), shape(&lookup("GMDE#1").unwrap()));
        assert_eq!(s.id, "GMDE(rand, jDE, rand, rand)");
    }

    #[test]
    fn parses_best2() {
        let s = parse_spec("GMDE(best, jDE, [rand,rand], [rand,rand])").unwrap();
        assert_eq!(shape(&s), shape(&lookup("DE/best/2").unwrap()));
    }

    #[test]
    fn numbered_and_labelled_ids() {
        let s = parse_spec("GMDE#4(rand, jDE, best, rand)").unwrap();
        assert_eq!(s, lookup("GMDE#4").unwrap());
        let s = parse_spec("DE/rand-to-best/1: GMDE(rand, jDE, [best, rand], [base, rand])").unwrap();
        assert_eq!(s, lookup("DE/rand-to-best/1").unwrap());
    }

    #[test]
    fn rejects_unknown_block_with_position() {
        let err = parse_spec("GMDE(rand, jDE, foo, rand)").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                position: 16,
                message: "unknown block `foo`".into()
            }
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "GMDE",
            "GDE(rand, jDE, rand, rand)",
            "GMDE(rand, jDE, rand)",
            "GMDE(rand, jDE, [rand, rand], rand)",
            "GMDE(base, jDE, rand, rand)",
            "GMDE(rand, jDE, rand, rand) extra",
            "GMDE(rand, sade, rand, rand)",
            "GMDE(rand, jDE, tour:1, rand)",
            "GMDE(rand, jDE, top:1.5, rand)",
            "GMDE(rand, jDE, tour, rand)",
            "GMDE(rand, jDE, [rand, rand, rand)",
        ] {
            assert!(
                matches!(parse_spec(bad), Err(Error::Parse { .. })),
                "accepted `{bad}`"
            );
        }
    }

    #[test]
    fn selective_blocks() {
        let s = parse_spec("GMDE(top, jDE, worst:0.25, tour:3)").unwrap();
        assert_eq!(s.base, Block::TopP(DEFAULT_P));
        assert_eq!(s.diffs[0], DiffPair::new(Block::WorstP(0.25), Block::Tournament(3)));
        assert_eq!(render_spec(&s), "GMDE(top:0.1, jDE, worst:0.25, tour:3)");
    }

    #[test]
    fn registry_round_trips() {
        for s in registry() {
            let text = render_spec(&s);
            assert_eq!(parse_spec(&text).unwrap(), s, "{text}");
        }
    }
}
