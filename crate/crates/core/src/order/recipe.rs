use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

/// Describes how an order table is generated. Regenerating from the same
/// recipe over the same poset yields the same table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    Lex,
    Colex,
    /// Compare `(x[perm[0]], x[perm[1]], ...)` lexicographically. 0-based.
    Domination { perm: Vec<usize> },
    HyperrectangleChaser {
        #[serde(default)]
        choices: Vec<SubsetChoice>,
    },
    BorderChaser {
        #[serde(default)]
        choices: Vec<SubsetChoice>,
    },
    Block(BlockSpec),
    /// Elements listed by label, smallest first.
    Explicit { sequence: Vec<Vec<u32>> },
    DualOf { of: Box<Recipe> },
    /// Rank-major, with a different recipe on selected ranks.
    ByRank {
        default: Box<Recipe>,
        #[serde(default)]
        overrides: Vec<RankOverride>,
    },
}

/// Domination pick for one coordinate subset of a chaser order. `perm` is
/// 0-based over the positions of `coords` (which are sorted ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetChoice {
    pub coords: Vec<usize>,
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOverride {
    pub rank: usize,
    pub order: Recipe,
}

/// Ordered partition of every coordinate toset plus the orders on starts and
/// inside blocks. `cuts[i]` holds the 0-based first position of each part of
/// toset `i`; it starts at 0 and is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub cuts: Vec<Vec<u32>>,
    pub starts: Box<Recipe>,
    pub blocks: BlockRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum BlockRule {
    /// The same recipe in every block, on block-local coordinates.
    Uniform { order: Box<Recipe> },
    /// Recipes keyed by block index vector, with a fallback.
    PerBlock {
        blocks: Vec<(Vec<u32>, Recipe)>,
        default: Box<Recipe>,
    },
    /// Domination order whose coordinate priority sorts coordinates by
    /// (block index, coordinate): the leg-scan rule for spider products.
    DominationByBlockIndex,
}

impl BlockRule {
    pub fn uniform(order: Recipe) -> BlockRule {
        BlockRule::Uniform {
            order: Box::new(order),
        }
    }
}

impl Recipe {
    pub fn domination(perm: Vec<usize>) -> Recipe {
        Recipe::Domination { perm }
    }

    pub fn hc() -> Recipe {
        Recipe::HyperrectangleChaser { choices: vec![] }
    }

    pub fn bc() -> Recipe {
        Recipe::BorderChaser { choices: vec![] }
    }

    pub fn dual(self) -> Recipe {
        match self {
            Recipe::DualOf { of } => *of,
            r => Recipe::DualOf { of: Box::new(r) },
        }
    }

    /// Parses the short CLI forms `lex`, `colex`, `hc`, `bc`, and
    /// `dom:<1-based comma list>`.
    pub fn parse_simple(s: &str) -> Result<Recipe> {
        match s {
            "lex" => Ok(Recipe::Lex),
            "colex" => Ok(Recipe::Colex),
            "hc" => Ok(Recipe::hc()),
            "bc" => Ok(Recipe::bc()),
            _ => {
                let Some(rest) = s.strip_prefix("dom:") else {
                    return arg(format!("unknown order `{s}`"));
                };
                let perm: std::result::Result<Vec<usize>, _> =
                    rest.split(',').map(|t| t.trim().parse::<usize>()).collect();
                match perm {
                    Ok(p) if p.iter().all(|&v| v >= 1) => {
                        Ok(Recipe::domination(p.into_iter().map(|v| v - 1).collect()))
                    }
                    _ => arg(format!("bad permutation in `{s}`")),
                }
            }
        }
    }
}

pub(crate) fn check_perm(perm: &[usize], d: usize) -> Result<()> {
    let mut seen = vec![false; d];
    if perm.len() != d {
        return arg(format!("permutation {perm:?} has length {} not {d}", perm.len()));
    }
    for &p in perm {
        if p >= d || seen[p] {
            return arg(format!("{perm:?} is not a permutation of 0..{d}"));
        }
        seen[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = Recipe::Block(BlockSpec {
            cuts: vec![vec![0, 2], vec![0, 1, 3]],
            starts: Box::new(Recipe::bc()),
            blocks: BlockRule::uniform(Recipe::Lex),
        })
        .dual();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Recipe>(&s).unwrap(), r);
        assert_eq!(r.clone().dual().dual(), r);
    }

    #[test]
    fn parse_short_forms() {
        assert_eq!(Recipe::parse_simple("dom:2,1").unwrap(), Recipe::domination(vec![1, 0]));
        assert!(Recipe::parse_simple("dom:0,1").is_err());
        assert!(Recipe::parse_simple("nope").is_err());
    }
}
