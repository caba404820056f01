//! Exhaustive Macaulay verification.
//!
//! For a level with `k` elements every subset is visited once in Gray-code
//! order while per-target cover counts are kept, which yields the minimum
//! shadow size for each subset size. The Def then holds on that level iff for
//! every `q` the initial segment of size `q` has a shadow that is itself an
//! initial segment of size at most that minimum.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::order::OrderTable;
use crate::par::{self, Parallelism};
use crate::poset::{ElementId, RankedPoset};

pub const DEFAULT_MAX_SUBSETS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Direction> {
        match s {
            "lower" => Ok(Direction::Lower),
            "upper" => Ok(Direction::Upper),
            _ => arg(format!("direction must be lower or upper, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reason {
    /// Some subset has a smaller shadow than the initial segment of its size.
    Nestedness,
    /// The shadow of an initial segment is not an initial segment.
    Continuity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub level: usize,
    pub q: usize,
    pub reason: Reason,
    pub witness: Vec<ElementId>,
    pub witness_shadow: Vec<ElementId>,
    pub segment: Vec<ElementId>,
    pub segment_shadow: Vec<ElementId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub levels_checked: usize,
    pub subsets_examined: u64,
    pub cover_updates: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacaulayVerdict {
    pub holds: bool,
    pub direction: Direction,
    pub failures: Vec<Failure>,
    pub stats: Stats,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_subsets: u64,
    pub all_failures: bool,
    pub parallelism: Parallelism,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_subsets: DEFAULT_MAX_SUBSETS,
            all_failures: false,
            parallelism: Parallelism::default(),
        }
    }
}

/// One level prepared for scanning: source elements in scan order and, for
/// each, the positions of its shadow neighbours in the target level's order.
struct LevelScan {
    level: usize,
    src: Vec<ElementId>,
    tgt: Vec<ElementId>,
    nbrs: Vec<Vec<u32>>,
}

impl LevelScan {
    fn new(p: &RankedPoset, src: Vec<ElementId>, tgt: Vec<ElementId>, dir: Direction, level: usize) -> Self {
        let mut pos = vec![u32::MAX; p.len()];
        for (i, &t) in tgt.iter().enumerate() {
            pos[t] = i as u32;
        }
        let nbrs = src
            .iter()
            .map(|&x| {
                let n = match dir {
                    Direction::Lower => p.down(x),
                    Direction::Upper => p.up(x),
                };
                n.iter().map(|&y| pos[y]).collect()
            })
            .collect();
        LevelScan { level, src, tgt, nbrs }
    }

    fn for_order(p: &RankedPoset, o: &OrderTable, dir: Direction, level: usize) -> Self {
        let (mut src, mut tgt) = match dir {
            Direction::Lower => (o.level_sequence(p, level), o.level_sequence(p, level - 1)),
            Direction::Upper => (o.level_sequence(p, level), o.level_sequence(p, level + 1)),
        };
        if dir == Direction::Upper {
            src.reverse();
            tgt.reverse();
        }
        LevelScan::new(p, src, tgt, dir, level)
    }

    fn check_size(&self, cap: u64) -> Result<()> {
        let k = self.src.len();
        if k >= 63 || (1u64 << k) > cap {
            return Err(Error::Resource(format!(
                "level {} has {k} elements; 2^{k} subsets exceed the cap of {cap}",
                self.level
            )));
        }
        Ok(())
    }

    fn elements(&self, mask: u64) -> Vec<ElementId> {
        (0..self.src.len())
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| self.src[j])
            .collect()
    }

    fn shadow_positions(&self, mask: u64) -> BTreeSet<u32> {
        (0..self.src.len())
            .filter(|j| mask >> j & 1 == 1)
            .flat_map(|j| self.nbrs[j].iter().copied())
            .collect()
    }

    fn targets(&self, positions: &BTreeSet<u32>) -> Vec<ElementId> {
        positions.iter().map(|&t| self.tgt[t as usize]).collect()
    }
}

/// Minimum shadow per subset size with the smallest minimizing mask.
#[derive(Debug, Clone)]
struct Profile {
    best: Vec<(u32, u64)>,
    subsets: u64,
    updates: u64,
}

impl Profile {
    fn merge(mut self, other: Profile) -> Profile {
        for (a, b) in self.best.iter_mut().zip(other.best) {
            if b < *a {
                *a = b;
            }
        }
        self.subsets += other.subsets;
        self.updates += other.updates;
        self
    }
}

/// Scans all subsets whose top `k - low` bits equal `prefix`.
fn scan_chunk(scan: &LevelScan, low: usize, prefix: u64) -> Profile {
    let k = scan.src.len();
    let mut count = vec![0u32; scan.tgt.len()];
    let mut shadow = 0u32;
    let mut mask = prefix << low;
    let mut updates = 0u64;
    for j in low..k {
        if mask >> j & 1 == 1 {
            for &t in &scan.nbrs[j] {
                if count[t as usize] == 0 {
                    shadow += 1;
                }
                count[t as usize] += 1;
            }
        }
    }
    let mut best = vec![(u32::MAX, u64::MAX); k + 1];
    let mut size = mask.count_ones() as usize;
    best[size] = (shadow, mask);
    let steps: u64 = 1 << low;
    for t in 1..steps {
        let j = t.trailing_zeros() as usize;
        let bit = 1u64 << j;
        mask ^= bit;
        if mask & bit != 0 {
            size += 1;
            for &n in &scan.nbrs[j] {
                let c = &mut count[n as usize];
                if *c == 0 {
                    shadow += 1;
                }
                *c += 1;
            }
        } else {
            size -= 1;
            for &n in &scan.nbrs[j] {
                let c = &mut count[n as usize];
                *c -= 1;
                if *c == 0 {
                    shadow -= 1;
                }
            }
        }
        updates += scan.nbrs[j].len() as u64;
        let cand = (shadow, mask);
        if cand < best[size] {
            best[size] = cand;
        }
    }
    Profile {
        best,
        subsets: steps,
        updates,
    }
}

fn profile(scan: &LevelScan, mode: Parallelism) -> Profile {
    let k = scan.src.len();
    let high = if k >= 14 { 6.min(k) } else { 0 };
    let low = k - high;
    let chunks = par::map_indices(mode, 1usize << high, |prefix| {
        scan_chunk(scan, low, prefix as u64)
    });
    chunks
        .into_iter()
        .reduce(Profile::merge)
        .expect("at least one chunk")
}

/// Checks every initial segment of a scanned level against the profile.
fn level_failures(scan: &LevelScan, prof: &Profile, all: bool) -> Vec<Failure> {
    let mut out = Vec::new();
    let mut seg_shadow: BTreeSet<u32> = BTreeSet::new();
    for q in 1..=scan.src.len() {
        seg_shadow.extend(scan.nbrs[q - 1].iter().copied());
        let (min, min_mask) = prof.best[q];
        let need = seg_shadow.iter().next_back().map_or(0, |&m| m as usize + 1);
        let seg_mask = (1u64 << q) - 1;
        let reason = if seg_shadow.len() > min as usize {
            Some((Reason::Nestedness, min_mask))
        } else if need > seg_shadow.len() {
            Some((Reason::Continuity, seg_mask))
        } else {
            None
        };
        if let Some((reason, wmask)) = reason {
            out.push(Failure {
                level: scan.level,
                q,
                reason,
                witness: scan.elements(wmask),
                witness_shadow: scan.targets(&scan.shadow_positions(wmask)),
                segment: scan.elements(seg_mask),
                segment_shadow: scan.targets(&seg_shadow),
            });
            if !all {
                break;
            }
        }
    }
    out
}

fn levels_for(p: &RankedPoset, dir: Direction) -> Vec<usize> {
    match dir {
        Direction::Lower => (1..=p.max_rank()).collect(),
        Direction::Upper => (0..p.max_rank()).collect(),
    }
}

pub fn is_macaulay(p: &RankedPoset, o: &OrderTable, dir: Direction) -> Result<MacaulayVerdict> {
    is_macaulay_with(p, o, dir, &VerifyOptions::default())
}

/// Exhaustive check of every level (lower: ranks 1..=max, upper: 0..max).
pub fn is_macaulay_with(
    p: &RankedPoset,
    o: &OrderTable,
    dir: Direction,
    opts: &VerifyOptions,
) -> Result<MacaulayVerdict> {
    if o.len() != p.len() {
        return arg(format!("order has {} elements, poset has {}", o.len(), p.len()));
    }
    let start = Instant::now();
    let levels = levels_for(p, dir);
    let scans: Vec<LevelScan> = levels
        .iter()
        .map(|&i| LevelScan::for_order(p, o, dir, i))
        .collect();
    for s in &scans {
        s.check_size(opts.max_subsets)?;
    }
    let mut stats = Stats::default();
    let mut failures = Vec::new();
    for scan in &scans {
        let prof = profile(scan, opts.parallelism);
        stats.levels_checked += 1;
        stats.subsets_examined += prof.subsets;
        stats.cover_updates += prof.updates;
        failures.extend(level_failures(scan, &prof, opts.all_failures));
        if !failures.is_empty() && !opts.all_failures {
            break;
        }
    }
    Ok(MacaulayVerdict {
        holds: failures.is_empty(),
        direction: dir,
        failures,
        stats,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

impl Failure {
    /// Independently re-evaluates the Def with `A = witness`: the shadow of
    /// the initial segment of size `|A|` must not fit inside the initial
    /// segment of size `|shadow(A)|` of the next level.
    pub fn recheck(&self, p: &RankedPoset, o: &OrderTable, dir: Direction) -> Result<bool> {
        let a: BTreeSet<ElementId> = self.witness.iter().copied().collect();
        if a.len() != self.q || a.iter().any(|&x| p.rank(x) != self.level) {
            return Ok(false);
        }
        let (seg, target) = match dir {
            Direction::Lower => {
                let seg = o.initial_segment(p, self.level, self.q)?;
                let sa = p.lower_shadow(&a)?;
                let t = o.initial_segment(p, self.level - 1, sa.len())?;
                (p.lower_shadow(&seg)?, t)
            }
            Direction::Upper => {
                let seg = o.final_segment(p, self.level, self.q)?;
                let sa = p.upper_shadow(&a)?;
                let t = o.final_segment(p, self.level + 1, sa.len())?;
                (p.upper_shadow(&seg)?, t)
            }
        };
        Ok(!seg.is_subset(&target))
    }
}

/// Smallest shadow over all `q`-subsets of a level, with the minimizer that
/// comes first in element-ID order.
pub fn min_shadow(
    p: &RankedPoset,
    level: usize,
    q: usize,
    dir: Direction,
    opts: &VerifyOptions,
) -> Result<(usize, BTreeSet<ElementId>)> {
    let src = p.level(level).to_vec();
    if q > src.len() {
        return arg(format!("level {level} has {} elements, asked for {q}", src.len()));
    }
    if q == 0 {
        return Ok((0, BTreeSet::new()));
    }
    let tgt = match dir {
        Direction::Lower if level > 0 => p.level(level - 1).to_vec(),
        Direction::Upper => p.level(level + 1).to_vec(),
        _ => Vec::new(),
    };
    let scan = LevelScan::new(p, src, tgt, dir, level);
    scan.check_size(opts.max_subsets)?;
    let prof = profile(&scan, opts.parallelism);
    let (size, mask) = prof.best[q];
    Ok((size as usize, scan.elements(mask).into_iter().collect()))
}

/// Whether the verdicts on `(P, o)` and `(P*, o*)` agree, both read in the
/// lower direction.
pub fn check_dual_lemma(p: &RankedPoset, o: &OrderTable, opts: &VerifyOptions) -> Result<bool> {
    let a = is_macaulay_with(p, o, Direction::Lower, opts)?;
    let d = p.dual()?;
    let b = is_macaulay_with(&d, &o.dual(), Direction::Lower, opts)?;
    Ok(a.holds == b.holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(OrderTable),
    NoneExists,
    BudgetExhausted { nodes: u64 },
}

/// Backtracking search for a per-level order that passes the lower-direction
/// check. Levels are filled bottom-up; each prefix of a level is pruned as
/// soon as its shadow fails to be an initial segment no larger than the
/// minimum shadow for its size. Candidates are tried in element-ID order.
pub fn search_macaulay_order(p: &RankedPoset, budget: u64, opts: &VerifyOptions) -> Result<SearchOutcome> {
    let mut mins = vec![Vec::new()];
    for i in 1..=p.max_rank() {
        let scan = LevelScan::new(p, p.level(i).to_vec(), p.level(i - 1).to_vec(), Direction::Lower, i);
        scan.check_size(opts.max_subsets)?;
        let prof = profile(&scan, opts.parallelism);
        mins.push(prof.best.iter().map(|b| b.0 as usize).collect::<Vec<_>>());
    }
    let mut s = Search {
        p,
        mins,
        pos: vec![usize::MAX; p.len()],
        chosen: vec![Vec::new(); p.max_rank() + 1],
        nodes: 0,
        budget,
    };
    match s.level(0)? {
        true => {
            let seq: Vec<ElementId> = s.chosen.concat();
            Ok(SearchOutcome::Found(OrderTable::from_sequence(p, seq)?))
        }
        false if s.nodes > s.budget => Ok(SearchOutcome::BudgetExhausted { nodes: s.nodes }),
        false => Ok(SearchOutcome::NoneExists),
    }
}

struct Search<'a> {
    p: &'a RankedPoset,
    mins: Vec<Vec<usize>>,
    /// Position of an element inside its level's chosen sequence.
    pos: Vec<usize>,
    chosen: Vec<Vec<ElementId>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn level(&mut self, i: usize) -> Result<bool> {
        if i > self.p.max_rank() {
            return Ok(true);
        }
        let mut used = vec![false; self.p.level(i).len()];
        self.extend(i, &mut used, &mut BTreeSet::new())
    }

    fn extend(&mut self, i: usize, used: &mut [bool], shadow: &mut BTreeSet<usize>) -> Result<bool> {
        let level = self.p.level(i).to_vec();
        if self.chosen[i].len() == level.len() {
            return self.level(i + 1);
        }
        for (j, &x) in level.iter().enumerate() {
            if used[j] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Ok(false);
            }
            let q = self.chosen[i].len() + 1;
            let mut next = shadow.clone();
            if i > 0 {
                next.extend(self.p.down(x).iter().map(|&y| self.pos[y]));
                let need = next.iter().next_back().map_or(0, |&m| m + 1);
                if need > self.mins[i][q] {
                    continue;
                }
            }
            used[j] = true;
            self.pos[x] = q - 1;
            self.chosen[i].push(x);
            if self.extend(i, used, &mut next)? {
                return Ok(true);
            }
            self.chosen[i].pop();
            used[j] = false;
            if self.nodes > self.budget {
                return Ok(false);
            }
        }
        Ok(false)
    }
}
