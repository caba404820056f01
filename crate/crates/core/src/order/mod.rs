//! Total orders on ranked posets, materialized as position tables.
//!
//! Every recipe maps an element label to a sort key. Keys of two distinct
//! elements always differ before either one ends, so keys can be nested and
//! concatenated (block orders, rank-major orders) and reversed entrywise.

mod recipe;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

pub use recipe::{BlockRule, BlockSpec, RankOverride, Recipe, SubsetChoice};

use crate::error::{arg, Error, Result};
use crate::poset::{ElementId, RankedPoset};
use recipe::check_perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTable {
    recipe: Recipe,
    position: Vec<usize>,
    sequence: Vec<ElementId>,
}

impl OrderTable {
    /// Generates the table for `recipe` over the labels of `p`.
    pub fn build(p: &RankedPoset, recipe: Recipe) -> Result<OrderTable> {
        let grid = p.grid();
        let keyer = Keyer::new(&recipe, p)?;
        let mut keyed = Vec::with_capacity(p.len());
        for x in 0..p.len() {
            let label = p.label(x);
            keyed.push((keyer.key(&recipe, label, &grid, p.rank(x))?, x));
        }
        keyed.sort();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                return arg(format!(
                    "order does not separate elements {:?} and {:?}",
                    p.label(w[0].1),
                    p.label(w[1].1)
                ));
            }
        }
        let sequence: Vec<ElementId> = keyed.into_iter().map(|(_, x)| x).collect();
        Ok(OrderTable::from_parts(recipe, sequence))
    }

    /// Wraps an explicit element sequence, recording it as an explicit recipe.
    pub fn from_sequence(p: &RankedPoset, sequence: Vec<ElementId>) -> Result<OrderTable> {
        let mut seen = vec![false; p.len()];
        if sequence.len() != p.len() {
            return arg(format!("sequence has {} of {} elements", sequence.len(), p.len()));
        }
        for &x in &sequence {
            if x >= p.len() || seen[x] {
                return arg(format!("sequence repeats or misses element {x}"));
            }
            seen[x] = true;
        }
        let recipe = Recipe::Explicit {
            sequence: sequence.iter().map(|&x| p.label(x).clone()).collect(),
        };
        Ok(OrderTable::from_parts(recipe, sequence))
    }

    fn from_parts(recipe: Recipe, sequence: Vec<ElementId>) -> OrderTable {
        let mut position = vec![0; sequence.len()];
        for (i, &x) in sequence.iter().enumerate() {
            position[x] = i;
        }
        OrderTable {
            recipe,
            position,
            sequence,
        }
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn position(&self, x: ElementId) -> usize {
        self.position[x]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Elements from smallest to largest.
    pub fn sequence(&self) -> &[ElementId] {
        &self.sequence
    }

    pub fn compare(&self, a: ElementId, b: ElementId) -> Ordering {
        self.position[a].cmp(&self.position[b])
    }

    /// Reversed table; the recipe is wrapped (or unwrapped) as a dual.
    pub fn dual(&self) -> OrderTable {
        let sequence = self.sequence.iter().rev().copied().collect();
        OrderTable::from_parts(self.recipe.clone().dual(), sequence)
    }

    /// Elements of one level, smallest first.
    pub fn level_sequence(&self, p: &RankedPoset, level: usize) -> Vec<ElementId> {
        let mut v = p.level(level).to_vec();
        v.sort_by_key(|&x| self.position[x]);
        v
    }

    /// The `q` smallest elements of a level.
    pub fn initial_segment(
        &self,
        p: &RankedPoset,
        level: usize,
        q: usize,
    ) -> Result<BTreeSet<ElementId>> {
        let seq = self.level_sequence(p, level);
        if q > seq.len() {
            return arg(format!("level {level} has {} elements, asked for {q}", seq.len()));
        }
        Ok(seq[..q].iter().copied().collect())
    }

    /// The `q` largest elements of a level.
    pub fn final_segment(
        &self,
        p: &RankedPoset,
        level: usize,
        q: usize,
    ) -> Result<BTreeSet<ElementId>> {
        let seq = self.level_sequence(p, level);
        if q > seq.len() {
            return arg(format!("level {level} has {} elements, asked for {q}", seq.len()));
        }
        Ok(seq[seq.len() - q..].iter().copied().collect())
    }
}

pub fn lex_order(p: &RankedPoset) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::Lex)
}

pub fn colex_order(p: &RankedPoset) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::Colex)
}

pub fn domination_order(p: &RankedPoset, perm: Vec<usize>) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::domination(perm))
}

pub fn hyperrectangle_chaser(p: &RankedPoset, choices: Vec<SubsetChoice>) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::HyperrectangleChaser { choices })
}

pub fn border_chaser(p: &RankedPoset, choices: Vec<SubsetChoice>) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::BorderChaser { choices })
}

pub fn block_order(p: &RankedPoset, spec: BlockSpec) -> Result<OrderTable> {
    OrderTable::build(p, Recipe::Block(spec))
}

pub fn dual_order(o: &OrderTable) -> OrderTable {
    o.dual()
}

pub fn initial_segment(
    o: &OrderTable,
    p: &RankedPoset,
    level: usize,
    q: usize,
) -> Result<BTreeSet<ElementId>> {
    o.initial_segment(p, level, q)
}

/// Computes sort keys. Explicit sequences are indexed once up front.
struct Keyer<'a> {
    explicit: HashMap<*const Recipe, HashMap<&'a [u32], u32>>,
}

impl<'a> Keyer<'a> {
    fn new(recipe: &'a Recipe, p: &RankedPoset) -> Result<Keyer<'a>> {
        let mut k = Keyer {
            explicit: HashMap::new(),
        };
        k.index(recipe, p)?;
        Ok(k)
    }

    fn index(&mut self, r: &'a Recipe, p: &RankedPoset) -> Result<()> {
        match r {
            Recipe::Explicit { sequence } => {
                let mut m = HashMap::new();
                for (i, l) in sequence.iter().enumerate() {
                    if m.insert(l.as_slice(), i as u32).is_some() {
                        return arg(format!("explicit sequence repeats {l:?}"));
                    }
                }
                if sequence.len() < p.len() {
                    return arg(format!(
                        "explicit sequence lists {} of {} elements",
                        sequence.len(),
                        p.len()
                    ));
                }
                self.explicit.insert(r as *const Recipe, m);
            }
            Recipe::DualOf { of } => self.index(of, p)?,
            Recipe::ByRank { default, overrides } => {
                self.index(default, p)?;
                for o in overrides {
                    self.index(&o.order, p)?;
                }
            }
            Recipe::Block(spec) => {
                self.index(&spec.starts, p)?;
                match &spec.blocks {
                    BlockRule::Uniform { order } => self.index(order, p)?,
                    BlockRule::PerBlock { blocks, default } => {
                        self.index(default, p)?;
                        for (_, o) in blocks {
                            self.index(o, p)?;
                        }
                    }
                    BlockRule::DominationByBlockIndex => {}
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn key(&self, r: &Recipe, x: &[u32], grid: &[u32], rank: usize) -> Result<Vec<u32>> {
        let vector = |x: &[u32]| -> Result<()> {
            if x.len() != grid.len() || x.iter().zip(grid).any(|(v, g)| v >= g) {
                return arg(format!("label {x:?} is not a vector in grid {grid:?}"));
            }
            Ok(())
        };
        match r {
            Recipe::Lex => {
                vector(x)?;
                Ok(x.to_vec())
            }
            Recipe::Colex => {
                vector(x)?;
                Ok(x.iter().rev().copied().collect())
            }
            Recipe::Domination { perm } => {
                vector(x)?;
                check_perm(perm, x.len())?;
                Ok(perm.iter().map(|&i| x[i]).collect())
            }
            Recipe::HyperrectangleChaser { choices } => {
                vector(x)?;
                let mut out = Vec::new();
                let coords: Vec<usize> = (0..x.len()).collect();
                hc_key(x, &coords, choices, &mut out)?;
                Ok(out)
            }
            Recipe::BorderChaser { choices } => {
                vector(x)?;
                let c: Vec<u32> = x.iter().zip(grid).map(|(v, g)| g - 1 - v).collect();
                let mut out = Vec::new();
                let coords: Vec<usize> = (0..x.len()).collect();
                hc_key(&c, &coords, choices, &mut out)?;
                Ok(invert(out))
            }
            Recipe::Block(spec) => {
                vector(x)?;
                self.block_key(spec, x, grid, rank)
            }
            Recipe::Explicit { .. } => {
                let m = &self.explicit[&(r as *const Recipe)];
                match m.get(x) {
                    Some(&i) => Ok(vec![i]),
                    None => arg(format!("explicit sequence misses {x:?}")),
                }
            }
            Recipe::DualOf { of } => Ok(invert(self.key(of, x, grid, rank)?)),
            Recipe::ByRank { default, overrides } => {
                let inner = overrides
                    .iter()
                    .find(|o| o.rank == rank)
                    .map_or(default.as_ref(), |o| &o.order);
                let mut out = vec![rank as u32];
                out.extend(self.key(inner, x, grid, rank)?);
                Ok(out)
            }
        }
    }

    fn block_key(&self, spec: &BlockSpec, x: &[u32], grid: &[u32], rank: usize) -> Result<Vec<u32>> {
        if spec.cuts.len() != x.len() {
            return arg(format!(
                "block spec has {} coordinates, labels have {}",
                spec.cuts.len(),
                x.len()
            ));
        }
        let d = x.len();
        let mut index = Vec::with_capacity(d);
        let mut counts = Vec::with_capacity(d);
        let mut local = Vec::with_capacity(d);
        let mut sizes = Vec::with_capacity(d);
        for i in 0..d {
            let cuts = &spec.cuts[i];
            validate_cuts(cuts, grid[i])?;
            let b = cuts.partition_point(|&c| c <= x[i]) - 1;
            let end = cuts.get(b + 1).copied().unwrap_or(grid[i]);
            index.push(b as u32);
            counts.push(cuts.len() as u32);
            local.push(x[i] - cuts[b]);
            sizes.push(end - cuts[b]);
        }
        let mut out = self.key(&spec.starts, &index, &counts, rank)?;
        match &spec.blocks {
            BlockRule::Uniform { order } => out.extend(self.key(order, &local, &sizes, rank)?),
            BlockRule::PerBlock { blocks, default } => {
                let order = blocks
                    .iter()
                    .find(|(b, _)| *b == index)
                    .map_or(default.as_ref(), |(_, o)| o);
                out.extend(self.key(order, &local, &sizes, rank)?);
            }
            BlockRule::DominationByBlockIndex => {
                let mut perm: Vec<usize> = (0..d).collect();
                perm.sort_by_key(|&i| (index[i], i));
                out.extend(perm.iter().map(|&i| local[i]));
            }
        }
        Ok(out)
    }
}

fn validate_cuts(cuts: &[u32], len: u32) -> Result<()> {
    if cuts.first() != Some(&0) {
        return Err(Error::Argument(format!("cuts {cuts:?} must start at 0")));
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.iter().any(|&c| c >= len) {
        return Err(Error::Argument(format!(
            "cuts {cuts:?} are not strictly increasing inside a toset of size {len}"
        )));
    }
    Ok(())
}

fn invert(key: Vec<u32>) -> Vec<u32> {
    key.into_iter().map(|v| u32::MAX - v).collect()
}

/// Key of the chaser order restricted to `coords`: scd, then the ICscd
/// vector under the chosen domination order, then (if scd exceeds the first
/// index) the key of the coordinates not attaining scd.
fn hc_key(x: &[u32], coords: &[usize], choices: &[SubsetChoice], out: &mut Vec<u32>) -> Result<()> {
    match coords.len() {
        0 => return Ok(()),
        1 => {
            out.push(x[coords[0]]);
            return Ok(());
        }
        _ => {}
    }
    let vals: Vec<u32> = coords.iter().map(|&c| x[c]).collect();
    let top = *vals.iter().max().expect("nonempty");
    let scd = top + 1;
    out.push(scd);
    let ic: Vec<u32> = vals.iter().map(|&v| if v == top { v } else { 0 }).collect();
    match choices.iter().find(|c| c.coords == coords) {
        Some(c) => {
            check_perm(&c.perm, coords.len())?;
            out.extend(c.perm.iter().map(|&i| ic[i]));
        }
        None => out.extend(ic.iter().copied()),
    }
    if scd > 1 {
        let rest: Vec<usize> = coords
            .iter()
            .zip(&vals)
            .filter(|(_, &v)| v != top)
            .map(|(&c, _)| c)
            .collect();
        hc_key(x, &rest, choices, out)?;
    }
    Ok(())
}

/// Single coordinate distance: the largest toset index (exponent + 1).
pub fn scd(x: &[u32]) -> u32 {
    x.iter().max().map_or(0, |m| m + 1)
}

/// Keeps the coordinates attaining scd; the rest drop to the first element.
pub fn ic_scd(x: &[u32]) -> Vec<u32> {
    let top = x.iter().copied().max().unwrap_or(0);
    x.iter().map(|&v| if v == top { v } else { 0 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{multiset_lattice, LatticeShape};

    fn m(l: &[u32]) -> RankedPoset {
        multiset_lattice(&LatticeShape::finite(l)).unwrap()
    }

    fn labels(p: &RankedPoset, o: &OrderTable) -> Vec<Vec<u32>> {
        o.sequence().iter().map(|&x| p.label(x).clone()).collect()
    }

    #[test]
    fn lex_fills_columns() {
        let p = m(&[3, 4]);
        let o = lex_order(&p).unwrap();
        assert_eq!(
            labels(&p, &o)[..5],
            [vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 0]]
        );
        let l1 = o.level_sequence(&p, 1);
        assert_eq!(p.label(l1[0]), &vec![0, 1]);
    }

    #[test]
    fn colex_begins_along_first_coordinate() {
        let p = m(&[3, 3, 3]);
        let o = colex_order(&p).unwrap();
        assert_eq!(
            labels(&p, &o)[..4],
            [vec![0, 0, 0], vec![1, 0, 0], vec![2, 0, 0], vec![0, 1, 0]]
        );
        let c = chain_lattice(5);
        assert_eq!(colex_order(&c).unwrap(), {
            let mut l = lex_order(&c).unwrap();
            l.recipe = Recipe::Colex;
            l
        });
    }

    fn chain_lattice(n: u32) -> RankedPoset {
        m(&[n])
    }

    #[test]
    fn domination_cases() {
        let p = m(&[3, 4]);
        assert_eq!(
            domination_order(&p, vec![0, 1]).unwrap().sequence(),
            lex_order(&p).unwrap().sequence()
        );
        assert_eq!(
            domination_order(&p, vec![1, 0]).unwrap().sequence(),
            colex_order(&p).unwrap().sequence()
        );
        let q = m(&[2, 2]);
        let o = domination_order(&q, vec![1, 0]).unwrap();
        assert_eq!(labels(&q, &o), [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(domination_order(&q, vec![0, 0]).is_err());
    }

    #[test]
    fn scd_examples() {
        assert_eq!(scd(&[1, 2]), 3);
        assert_eq!(ic_scd(&[1, 2]), vec![0, 2]);
        let p = m(&[3, 4]);
        let o = hyperrectangle_chaser(&p, vec![]).unwrap();
        let a = p.find_label(&[1, 1]).unwrap();
        let b = p.find_label(&[2, 0]).unwrap();
        assert_eq!(o.compare(a, b), Ordering::Less);
    }

    #[test]
    fn hc_starts_with_square() {
        let p = m(&[3, 4]);
        let o = hyperrectangle_chaser(&p, vec![]).unwrap();
        let first: BTreeSet<Vec<u32>> = labels(&p, &o)[..4].iter().cloned().collect();
        let square: BTreeSet<Vec<u32>> =
            [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]].into_iter().collect();
        assert_eq!(first, square);
    }

    #[test]
    fn bc_hugs_the_border() {
        let p = m(&[3, 4]);
        let o = border_chaser(&p, vec![]).unwrap();
        let seq = labels(&p, &o);
        assert_eq!(seq[0], vec![0, 0]);
        assert!(seq[..3].iter().all(|x| x[0] == 0 || x[1] == 0));
        let c = chain_lattice(4);
        assert_eq!(
            border_chaser(&c, vec![]).unwrap().sequence(),
            lex_order(&c).unwrap().sequence()
        );
    }

    #[test]
    fn chasers_on_boolean_lattice_are_lex() {
        let p = m(&[2, 2, 2]);
        let lex = lex_order(&p).unwrap();
        assert_eq!(hyperrectangle_chaser(&p, vec![]).unwrap().sequence(), lex.sequence());
        assert_eq!(border_chaser(&p, vec![]).unwrap().sequence(), lex.sequence());
    }

    #[test]
    fn block_order_visits_first_block_first() {
        let p = m(&[4, 4]);
        let spec = BlockSpec {
            cuts: vec![vec![0, 2], vec![0, 2]],
            starts: Box::new(Recipe::Lex),
            blocks: BlockRule::uniform(Recipe::Lex),
        };
        let o = block_order(&p, spec).unwrap();
        let seq = labels(&p, &o);
        assert!(seq[..4].iter().all(|x| x[0] < 2 && x[1] < 2));
        assert!(seq[4..8].iter().all(|x| x[0] < 2 && x[1] >= 2));
    }

    #[test]
    fn trivial_block_partitions() {
        let p = m(&[3, 4]);
        let singletons = BlockSpec {
            cuts: vec![vec![0, 1, 2], vec![0, 1, 2, 3]],
            starts: Box::new(Recipe::Colex),
            blocks: BlockRule::uniform(Recipe::Lex),
        };
        assert_eq!(
            block_order(&p, singletons).unwrap().sequence(),
            colex_order(&p).unwrap().sequence()
        );
        let whole = BlockSpec {
            cuts: vec![vec![0], vec![0]],
            starts: Box::new(Recipe::Lex),
            blocks: BlockRule::uniform(Recipe::hc()),
        };
        assert_eq!(
            block_order(&p, whole).unwrap().sequence(),
            hyperrectangle_chaser(&p, vec![]).unwrap().sequence()
        );
        let bad = BlockSpec {
            cuts: vec![vec![1], vec![0]],
            starts: Box::new(Recipe::Lex),
            blocks: BlockRule::uniform(Recipe::Lex),
        };
        assert!(block_order(&p, bad).is_err());
    }

    #[test]
    fn segments() {
        let p = m(&[2, 2, 2]);
        let o = lex_order(&p).unwrap();
        assert!(o.initial_segment(&p, 2, 0).unwrap().is_empty());
        assert_eq!(o.initial_segment(&p, 2, 3).unwrap().len(), 3);
        let two: BTreeSet<_> = [p.find_label(&[0, 1, 1]).unwrap(), p.find_label(&[1, 0, 1]).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(o.initial_segment(&p, 2, 2).unwrap(), two);
        assert!(o.initial_segment(&p, 2, 4).is_err());
    }

    #[test]
    fn dual_reverses() {
        let p = m(&[2, 2]);
        let o = lex_order(&p).unwrap();
        let d = dual_order(&o);
        assert_eq!(labels(&p, &d), [vec![1, 1], vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(d.dual(), o);
        assert_eq!(OrderTable::build(&p, d.recipe().clone()).unwrap(), d);
    }

    #[test]
    fn explicit_and_by_rank() {
        let p = m(&[3, 3]);
        let mixed = Recipe::ByRank {
            default: Box::new(Recipe::Colex),
            overrides: vec![RankOverride {
                rank: 1,
                order: Recipe::Lex,
            }],
        };
        let o = OrderTable::build(&p, mixed).unwrap();
        let l1 = o.level_sequence(&p, 1);
        assert_eq!(p.label(l1[0]), &vec![0, 1]);
        let l2 = o.level_sequence(&p, 2);
        assert_eq!(p.label(l2[0]), &vec![2, 0]);
        let e = OrderTable::from_sequence(&p, o.sequence().to_vec()).unwrap();
        assert_eq!(OrderTable::build(&p, e.recipe().clone()).unwrap().sequence(), o.sequence());
    }
}
