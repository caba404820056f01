//! Finite ranked posets stored as dense element IDs with a cover relation.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{arg, config, Error, Result};

pub type ElementId = usize;
/// Per-element label: an exponent vector, a tuple of toset positions, or an
/// opaque integer tag.
pub type Label = Vec<u32>;

/// Default cap on the number of elements a product may materialize.
pub const DEFAULT_PRODUCT_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone)]
pub struct RankedPoset {
    ranks: Vec<usize>,
    labels: Vec<Label>,
    /// `down[b]` lists the elements covered by `b`, ascending.
    down: Vec<Vec<ElementId>>,
    up: Vec<Vec<ElementId>>,
    levels: Vec<Vec<ElementId>>,
    grid: Option<Vec<u32>>,
}

impl PartialEq for RankedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.ranks == other.ranks && self.labels == other.labels && self.down == other.down
    }
}

impl Eq for RankedPoset {}

impl RankedPoset {
    /// Builds a poset from a rank vector, labels, and cover pairs `(a, b)`
    /// meaning "b covers a". The result is audited before it is returned.
    pub fn from_covers(
        ranks: Vec<usize>,
        labels: Vec<Label>,
        covers: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self> {
        let n = ranks.len();
        if labels.len() != n {
            return arg(format!("{} labels for {n} elements", labels.len()));
        }
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (a, b) in covers {
            if a >= n || b >= n {
                return arg(format!("cover ({a},{b}) names an unknown element"));
            }
            down[b].push(a);
            up[a].push(b);
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let max_rank = ranks.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); if n == 0 { 0 } else { max_rank + 1 }];
        for (x, &r) in ranks.iter().enumerate() {
            levels[r].push(x);
        }
        let p = RankedPoset {
            ranks,
            labels,
            down,
            up,
            levels,
            grid: None,
        };
        p.audit()?;
        Ok(p)
    }

    /// Checks the ranked-poset invariants: covers raise rank by exactly one
    /// (which also rules out cycles), some element has rank 0, and every
    /// element of positive rank covers something.
    pub fn audit(&self) -> Result<()> {
        if self.ranks.is_empty() {
            return Err(Error::Invariant("poset has no elements".into()));
        }
        for b in 0..self.len() {
            for &a in &self.down[b] {
                if a == b {
                    return Err(Error::Invariant(format!("element {a} covers itself")));
                }
                if self.ranks[b] != self.ranks[a] + 1 {
                    return Err(Error::Invariant(format!(
                        "cover ({a},{b}) joins ranks {} and {}",
                        self.ranks[a], self.ranks[b]
                    )));
                }
            }
            if self.ranks[b] > 0 && self.down[b].is_empty() {
                return Err(Error::Invariant(format!(
                    "element {b} of rank {} covers nothing",
                    self.ranks[b]
                )));
            }
        }
        if self.levels.first().is_none_or(|l| l.is_empty()) {
            return Err(Error::Invariant("no element of rank 0".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, x: ElementId) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_rank(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn label(&self, x: ElementId) -> &Label {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Elements covered by `x`.
    pub fn down(&self, x: ElementId) -> &[ElementId] {
        &self.down[x]
    }

    /// Elements covering `x`.
    pub fn up(&self, x: ElementId) -> &[ElementId] {
        &self.up[x]
    }

    pub fn level(&self, i: usize) -> &[ElementId] {
        self.levels.get(i).map_or(&[], |v| v.as_slice())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// All cover pairs `(a, b)` with `b` covering `a`, sorted.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|b| self.down[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.down.iter().map(|d| d.len()).sum()
    }

    /// Per-coordinate toset sizes the labels live in. Falls back to
    /// `max + 1` per coordinate when no grid was recorded.
    pub fn grid(&self) -> Vec<u32> {
        if let Some(g) = &self.grid {
            return g.clone();
        }
        let dim = self.labels.iter().map(|l| l.len()).max().unwrap_or(0);
        (0..dim)
            .map(|i| {
                self.labels
                    .iter()
                    .filter_map(|l| l.get(i))
                    .max()
                    .map_or(1, |m| m + 1)
            })
            .collect()
    }

    pub fn with_grid(mut self, grid: Vec<u32>) -> Result<Self> {
        for l in &self.labels {
            if l.len() != grid.len() || l.iter().zip(&grid).any(|(x, g)| x >= g) {
                return arg(format!("label {l:?} lies outside grid {grid:?}"));
            }
        }
        self.grid = Some(grid);
        Ok(self)
    }

    /// Same elements and covers under new labels.
    pub fn relabeled(&self, labels: Vec<Label>, grid: Option<Vec<u32>>) -> Result<Self> {
        if labels.len() != self.len() {
            return arg(format!("{} labels for {} elements", labels.len(), self.len()));
        }
        let mut p = self.clone();
        p.labels = labels;
        p.grid = None;
        match grid {
            Some(g) => p.with_grid(g),
            None => Ok(p),
        }
    }

    pub fn find_label(&self, label: &[u32]) -> Option<ElementId> {
        self.labels.iter().position(|l| l.as_slice() == label)
    }

    pub fn label_index(&self) -> HashMap<&[u32], ElementId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_slice(), i))
            .collect()
    }

    fn check_ids(&self, a: &BTreeSet<ElementId>) -> Result<()> {
        match a.iter().find(|&&x| x >= self.len()) {
            Some(x) => arg(format!("unknown element {x}")),
            None => Ok(()),
        }
    }

    /// Union of the elements covered by members of `a`.
    pub fn lower_shadow(&self, a: &BTreeSet<ElementId>) -> Result<BTreeSet<ElementId>> {
        self.check_ids(a)?;
        Ok(a.iter().flat_map(|&x| self.down[x].iter().copied()).collect())
    }

    /// Union of the elements covering members of `a`.
    pub fn upper_shadow(&self, a: &BTreeSet<ElementId>) -> Result<BTreeSet<ElementId>> {
        self.check_ids(a)?;
        Ok(a.iter().flat_map(|&x| self.up[x].iter().copied()).collect())
    }

    /// The dual poset: covers reversed and rank `max_rank - rank`.
    /// Element IDs and labels are kept, so orders on `self` apply unchanged.
    pub fn dual(&self) -> Result<RankedPoset> {
        let top = self.max_rank();
        if let Some(x) = (0..self.len()).find(|&x| self.up[x].is_empty() && self.ranks[x] != top) {
            return Err(Error::NotDuallyRanked(format!(
                "maximal element {x} has rank {} below the top rank {top}",
                self.ranks[x]
            )));
        }
        let ranks = self.ranks.iter().map(|r| top - r).collect();
        let covers = self.covers().into_iter().map(|(a, b)| (b, a));
        let mut d = RankedPoset::from_covers(ranks, self.labels.clone(), covers)?;
        d.grid = self.grid.clone();
        Ok(d)
    }

    /// Keeps the elements of rank at most `n`.
    pub fn truncate(&self, n: usize) -> RankedPoset {
        if n >= self.max_rank() {
            return self.clone();
        }
        let keep: Vec<ElementId> = (0..self.len()).filter(|&x| self.ranks[x] <= n).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            new_id[x] = i;
        }
        let ranks = keep.iter().map(|&x| self.ranks[x]).collect();
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .filter(|&(_, b)| self.ranks[b] <= n)
            .map(|(a, b)| (new_id[a], new_id[b]))
            .collect();
        let mut p = RankedPoset::from_covers(ranks, labels, covers)
            .expect("truncation of a valid poset is valid");
        p.grid = self.grid.clone();
        p
    }

    /// Renumbers elements by (rank, label).
    pub fn canonicalize(&self) -> RankedPoset {
        let mut order: Vec<ElementId> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            (self.ranks[a], &self.labels[a]).cmp(&(self.ranks[b], &self.labels[b]))
        });
        self.permuted(&order)
    }

    /// Poset whose element `i` is `self`'s element `order[i]`.
    fn permuted(&self, order: &[ElementId]) -> RankedPoset {
        let mut new_id = vec![0; self.len()];
        for (i, &x) in order.iter().enumerate() {
            new_id[x] = i;
        }
        let ranks = order.iter().map(|&x| self.ranks[x]).collect();
        let labels = order.iter().map(|&x| self.labels[x].clone()).collect();
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (new_id[a], new_id[b]))
            .collect();
        let mut p = RankedPoset::from_covers(ranks, labels, covers)
            .expect("renumbering preserves validity");
        p.grid = self.grid.clone();
        p
    }

    pub fn is_canonical(&self) -> bool {
        (1..self.len()).all(|i| {
            (self.ranks[i - 1], &self.labels[i - 1]) < (self.ranks[i], &self.labels[i])
        })
    }

    /// Whether `map` (element of `self` -> element of `other`) is a rank- and
    /// cover-preserving bijection.
    pub fn is_isomorphism(&self, other: &RankedPoset, map: &[ElementId]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; other.len()];
        for &y in map {
            if y >= other.len() || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        if (0..self.len()).any(|x| self.ranks[x] != other.ranks[map[x]]) {
            return false;
        }
        let mut mine: Vec<_> = self.covers().into_iter().map(|(a, b)| (map[a], map[b])).collect();
        mine.sort_unstable();
        mine == other.covers()
    }

    /// Builds the element map to `other` from a label translation and checks
    /// that it is an isomorphism.
    pub fn isomorphism_by_labels(
        &self,
        other: &RankedPoset,
        translate: impl Fn(&[u32]) -> Label,
    ) -> Option<Vec<ElementId>> {
        let index = other.label_index();
        let map: Option<Vec<_>> = self
            .labels
            .iter()
            .map(|l| index.get(translate(l).as_slice()).copied())
            .collect();
        let map = map?;
        self.is_isomorphism(other, &map).then_some(map)
    }

    /// Undirected Hasse graph is a tree.
    pub fn hasse_is_tree(&self) -> bool {
        self.cover_count() + 1 == self.len() && self.hasse_is_connected()
    }

    pub fn hasse_is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in self.down[x].iter().chain(&self.up[x]) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the Hasse graph is a single cycle.
    pub fn hasse_is_cycle(&self) -> bool {
        self.len() >= 3
            && self.hasse_is_connected()
            && (0..self.len()).all(|x| self.down[x].len() + self.up[x].len() == 2)
    }

    /// True when `a` is closed downward.
    pub fn is_downset(&self, a: &BTreeSet<ElementId>) -> bool {
        a.iter().all(|&x| self.down[x].iter().all(|y| a.contains(y)))
    }

    pub fn is_upset(&self, a: &BTreeSet<ElementId>) -> bool {
        a.iter().all(|&x| self.up[x].iter().all(|y| a.contains(y)))
    }
}

/// Dimension, per-coordinate lengths (`None` = unbounded) and an optional
/// rank truncation for a lattice of multisets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeShape {
    pub lengths: Vec<Option<u32>>,
    pub truncation: Option<usize>,
}

impl LatticeShape {
    pub fn finite(lengths: &[u32]) -> Self {
        LatticeShape {
            lengths: lengths.iter().map(|&l| Some(l)).collect(),
            truncation: None,
        }
    }

    pub fn truncated(lengths: Vec<Option<u32>>, truncation: usize) -> Self {
        LatticeShape {
            lengths,
            truncation: Some(truncation),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lengths.is_empty() {
            return config("lattice shape needs at least one coordinate");
        }
        if self.lengths.contains(&Some(0)) {
            return config("lattice lengths must be at least 1");
        }
        if self.truncation.is_none() && self.lengths.iter().any(|l| l.is_none()) {
            return config("an unbounded coordinate requires a truncation");
        }
        Ok(())
    }
}

/// Lattice of multisets: exponent vectors `0 <= x_i < l_i` ordered
/// componentwise, optionally cut at total degree `truncation`.
pub fn multiset_lattice(shape: &LatticeShape) -> Result<RankedPoset> {
    shape.validate()?;
    let t = shape.truncation.unwrap_or(usize::MAX);
    let caps: Vec<u32> = shape
        .lengths
        .iter()
        .map(|l| match *l {
            Some(l) => l - 1,
            None => t.min(u32::MAX as usize - 1) as u32,
        })
        .collect();
    let mut count: usize = 1;
    for &c in &caps {
        count = count.saturating_mul(c as usize + 1);
    }
    if shape.truncation.is_none() && count > DEFAULT_PRODUCT_LIMIT {
        return Err(Error::Resource(format!("lattice would hold {count} elements")));
    }
    let mut labels = Vec::new();
    let mut cur = vec![0u32; caps.len()];
    enumerate_box(&caps, t, 0, 0, &mut cur, &mut labels, DEFAULT_PRODUCT_LIMIT)?;
    labels.sort_by(|a, b| (degree(a), a).cmp(&(degree(b), b)));
    let index: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut covers = Vec::new();
    for (a, l) in labels.iter().enumerate() {
        for i in 0..l.len() {
            let mut m = l.clone();
            m[i] += 1;
            if let Some(&b) = index.get(&m) {
                covers.push((a, b));
            }
        }
    }
    let ranks = labels.iter().map(|l| degree(l)).collect();
    let grid: Vec<u32> = caps.iter().map(|c| c + 1).collect();
    RankedPoset::from_covers(ranks, labels.clone(), covers)?.with_grid(grid)
}

fn enumerate_box(
    caps: &[u32],
    budget: usize,
    i: usize,
    used: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Label>,
    limit: usize,
) -> Result<()> {
    if i == caps.len() {
        if out.len() >= limit {
            return Err(Error::Resource(format!("more than {limit} elements")));
        }
        out.push(cur.clone());
        return Ok(());
    }
    let max = (caps[i] as usize).min(budget - used);
    for v in 0..=max {
        cur[i] = v as u32;
        enumerate_box(caps, budget, i + 1, used + v, cur, out, limit)?;
    }
    cur[i] = 0;
    Ok(())
}

pub fn degree(v: &[u32]) -> usize {
    v.iter().map(|&x| x as usize).sum()
}

/// A chain with `n` elements, labelled `[0]..[n-1]`.
pub fn chain(n: u32) -> Result<RankedPoset> {
    multiset_lattice(&LatticeShape::finite(&[n]))
}

/// Cartesian product: tuples ordered componentwise, rank = sum of ranks,
/// labels concatenated. `truncation` drops tuples above that rank.
pub fn cartesian_product(
    factors: &[RankedPoset],
    truncation: Option<usize>,
    limit: usize,
) -> Result<RankedPoset> {
    if factors.is_empty() {
        return arg("product of no posets");
    }
    let mut size: usize = 1;
    for f in factors {
        size = size.saturating_mul(f.len());
    }
    if truncation.is_none() && size > limit {
        return Err(Error::Resource(format!(
            "product would hold {size} elements (limit {limit})"
        )));
    }
    let t = truncation.unwrap_or(usize::MAX);
    let mut tuples: Vec<Vec<ElementId>> = vec![vec![]];
    for f in factors {
        let mut next = Vec::new();
        for tup in &tuples {
            let r: usize = tup.iter().zip(factors).map(|(&x, g)| g.rank(x)).sum();
            for y in 0..f.len() {
                if r + f.rank(y) <= t {
                    let mut n = tup.clone();
                    n.push(y);
                    next.push(n);
                    if next.len() > limit {
                        return Err(Error::Resource(format!(
                            "product exceeds {limit} elements"
                        )));
                    }
                }
            }
        }
        tuples = next;
    }
    let rank_of = |tup: &[ElementId]| -> usize {
        tup.iter().zip(factors).map(|(&x, f)| f.rank(x)).sum()
    };
    let label_of = |tup: &[ElementId]| -> Label {
        tup.iter()
            .zip(factors)
            .flat_map(|(&x, f)| f.label(x).iter().copied())
            .collect()
    };
    tuples.sort_by(|a, b| (rank_of(a), label_of(a)).cmp(&(rank_of(b), label_of(b))));
    let index: HashMap<&Vec<ElementId>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut covers = Vec::new();
    for (a, tup) in tuples.iter().enumerate() {
        for (i, f) in factors.iter().enumerate() {
            for &y in f.up(tup[i]) {
                let mut m = tup.clone();
                m[i] = y;
                if let Some(&b) = index.get(&m) {
                    covers.push((a, b));
                }
            }
        }
    }
    let ranks = tuples.iter().map(|t| rank_of(t)).collect();
    let labels = tuples.iter().map(|t| label_of(t)).collect();
    let grid: Vec<u32> = factors.iter().flat_map(|f| f.grid()).collect();
    let p = RankedPoset::from_covers(ranks, labels, covers)?;
    if p.labels.iter().all(|l| l.len() == grid.len()) {
        p.with_grid(grid)
    } else {
        Ok(p)
    }
}

/// `p` multiplied with itself `n` times.
pub fn cartesian_power(p: &RankedPoset, n: usize, limit: usize) -> Result<RankedPoset> {
    if n == 0 {
        return arg("zeroth power");
    }
    cartesian_product(&vec![p.clone(); n], None, limit)
}
