//! Resolution of `--poset`, `--ring`, `--order`, and `--ideal` arguments.

use std::path::Path;

use anyhow::{bail, Result};
use macaulay_core::constructions::Family;
use macaulay_core::export::parse_json;
use macaulay_core::hilbert::IdealSpec;
use macaulay_core::order::{BlockSpec, RankOverride, Recipe};
use macaulay_core::poset::RankedPoset;
use macaulay_core::ring::{Polynomial, QuotientRingSpec};

/// A poset together with the family it came from, if any.
pub struct PosetInput {
    pub descriptor: String,
    pub family: Option<Family>,
    pub poset: RankedPoset,
}

pub struct RingInput {
    pub descriptor: String,
    pub family: Option<Family>,
    pub example: Option<Example>,
    pub spec: QuotientRingSpec,
}

/// Small rings used as worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// `K[x, y]` with the mixed order: lex in degree 1, colex elsewhere.
    ImiStrict,
    /// `K[x, y, z]/(x^2 + xy - xz)`, not level linearly independent.
    HilbNotEqual,
}

impl Example {
    fn parse(name: &str) -> Option<Example> {
        match name {
            "imi-strict" => Some(Example::ImiStrict),
            "hilb-not-equal" => Some(Example::HilbNotEqual),
            _ => None,
        }
    }

    pub fn spec(self) -> QuotientRingSpec {
        match self {
            Example::ImiStrict => QuotientRingSpec::new(2, vec![], 2),
            Example::HilbNotEqual => QuotientRingSpec::new(
                3,
                vec![Polynomial::from_int_terms(&[
                    (&[2, 0, 0], 1),
                    (&[1, 1, 0], 1),
                    (&[1, 0, 1], -1),
                ])],
                2,
            ),
        }
    }

    pub fn order(self) -> Recipe {
        match self {
            Example::ImiStrict => mixed_order(),
            Example::HilbNotEqual => Recipe::Lex,
        }
    }

    pub fn ideal(self) -> IdealSpec {
        let generators = match self {
            Example::ImiStrict => vec![Polynomial::from_int_terms(&[(&[1, 0], 1), (&[0, 1], 1)])],
            Example::HilbNotEqual => vec![
                Polynomial::monomial(vec![0, 0, 2]),
                Polynomial::monomial(vec![0, 1, 1]),
                Polynomial::monomial(vec![0, 2, 0]),
            ],
        };
        IdealSpec { generators }
    }
}

/// Degree-major order using lex in degree 1 and colex in every other degree.
pub fn mixed_order() -> Recipe {
    Recipe::ByRank {
        default: Box::new(Recipe::Colex),
        overrides: vec![RankOverride {
            rank: 1,
            order: Recipe::Lex,
        }],
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| macaulay_core::Error::Config(format!("reading {path}: {e}")).into())
}

fn read_json_arg(s: &str) -> Result<Option<String>> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(s.to_string()));
    }
    if s.ends_with(".json") || Path::new(s).is_file() {
        return read_file(s).map(Some);
    }
    Ok(None)
}

pub fn resolve_poset(s: &str) -> Result<PosetInput> {
    if let Some(text) = read_json_arg(s)? {
        return Ok(PosetInput {
            descriptor: s.to_string(),
            family: None,
            poset: parse_json(&text)?,
        });
    }
    let family: Family = s.parse()?;
    Ok(PosetInput {
        descriptor: family.to_string(),
        poset: family.poset()?,
        family: Some(family),
    })
}

/// Reads a ring from a family string, `example:<name>`, or a JSON spec.
/// `degree` overrides the truncation degree.
pub fn resolve_ring(s: &str, degree: Option<usize>) -> Result<RingInput> {
    let mut input = if let Some(text) = read_json_arg(s)? {
        RingInput {
            descriptor: s.to_string(),
            family: None,
            example: None,
            spec: QuotientRingSpec::from_json(&text)?,
        }
    } else if let Some(name) = s.strip_prefix("example:") {
        let Some(ex) = Example::parse(name) else {
            bail!(macaulay_core::Error::Config(format!("unknown example `{name}`")));
        };
        RingInput {
            descriptor: s.to_string(),
            family: None,
            example: Some(ex),
            spec: ex.spec(),
        }
    } else {
        let family: Family = s.parse()?;
        if !family.has_ring() {
            bail!(macaulay_core::Error::Config(format!(
                "`{family}` is a poset family without a ring"
            )));
        }
        RingInput {
            descriptor: family.to_string(),
            spec: family.ring_spec()?,
            family: Some(family),
            example: None,
        }
    };
    if let Some(d) = degree {
        input.spec.max_degree = d;
    }
    Ok(input)
}

/// How an order argument is to be applied.
pub struct OrderChoice {
    pub recipe: Recipe,
    /// The recipe is written against family labels rather than exponent
    /// vectors or poset labels.
    pub family_labels: bool,
}

/// Parses `lex`, `colex`, `hc`, `bc`, `dom:<perm>`, `block:<file>`,
/// `explicit:<file>`, `mixed`, `family-default`, `example`, `dual:<order>`,
/// or a JSON recipe.
pub fn resolve_order(
    s: &str,
    family: Option<&Family>,
    example: Option<Example>,
) -> Result<OrderChoice> {
    if let Some(inner) = s.strip_prefix("dual:") {
        let o = resolve_order(inner, family, example)?;
        return Ok(OrderChoice {
            recipe: o.recipe.dual(),
            family_labels: o.family_labels,
        });
    }
    let plain = |recipe| {
        Ok(OrderChoice {
            recipe,
            family_labels: false,
        })
    };
    match s {
        "family-default" => {
            let Some(f) = family else {
                bail!(macaulay_core::Error::Argument(
                    "family-default needs a built-in family".into()
                ));
            };
            match f.default_order()? {
                Some(recipe) => Ok(OrderChoice {
                    recipe,
                    family_labels: true,
                }),
                None => bail!(macaulay_core::Error::Argument(format!(
                    "`{f}` has no published order"
                ))),
            }
        }
        "example" => match example {
            Some(ex) => plain(ex.order()),
            None => bail!(macaulay_core::Error::Argument(
                "`example` order needs an example ring".into()
            )),
        },
        "mixed" => plain(mixed_order()),
        _ if s.starts_with("block:") => {
            let text = read_file(&s["block:".len()..])?;
            let spec: BlockSpec = serde_json::from_str(&text).map_err(macaulay_core::Error::from)?;
            plain(Recipe::Block(spec))
        }
        _ if s.starts_with("explicit:") => {
            let text = read_file(&s["explicit:".len()..])?;
            // either a bare list of labels or `{"sequence": [...]}`
            let recipe = match serde_json::from_str::<Vec<Vec<u32>>>(&text) {
                Ok(sequence) => Recipe::Explicit { sequence },
                Err(_) => {
                    let v: serde_json::Value =
                        serde_json::from_str(&text).map_err(macaulay_core::Error::from)?;
                    let sequence = serde_json::from_value(v["sequence"].clone())
                        .map_err(macaulay_core::Error::from)?;
                    Recipe::Explicit { sequence }
                }
            };
            plain(recipe)
        }
        _ => {
            if let Some(text) = read_json_arg(s)? {
                let recipe: Recipe =
                    serde_json::from_str(&text).map_err(macaulay_core::Error::from)?;
                return plain(recipe);
            }
            plain(Recipe::parse_simple(s)?)
        }
    }
}

pub fn resolve_ideal(s: &str) -> Result<IdealSpec> {
    match read_json_arg(s)? {
        Some(text) => Ok(IdealSpec::from_json(&text)?),
        None => bail!(macaulay_core::Error::Argument(format!(
            "ideal `{s}` is neither JSON nor a file"
        ))),
    }
}
