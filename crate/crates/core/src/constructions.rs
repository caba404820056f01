//! Named poset and ring families with their published Macaulay orders.
//!
//! Every family is a product of basic factors. Each factor carries a toset
//! labelling (one coordinate holding the toset position) or, for the Leck
//! and Kruskal-Katona factors, plain exponent vectors. The combinatorial
//! poset and the poset of monomials of the ring use the same labels, so an
//! order recipe written for one applies to the other.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{arg, config, Error, Result};
use crate::field::Field;
use crate::order::{BlockRule, BlockSpec, OrderTable, Recipe};
use crate::poset::{
    cartesian_product, multiset_lattice, ElementId, Label, LatticeShape, RankedPoset,
    DEFAULT_PRODUCT_LIMIT,
};
use crate::ring::{Polynomial, QuotientRingSpec, RingModel};
use crate::verify::Direction;

/// One factor of a family product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "factor", rename_all = "kebab-case")]
pub enum Factor {
    /// Chain with `len` elements; the ring `K[x]/(x^len)`.
    Chain { len: u32 },
    /// `n` minimal elements below one top.
    Star { n: u32 },
    /// `k + 1` legs of length `l` below a head.
    Spider { k: u32, l: u32 },
    /// `K[x_1..x_n]/(x_1..x_n)^2`: dual of a star, toset `1 < x_1 < ... < x_n`.
    Colored { n: u32 },
    /// `K[x_1..x_{k+1}]/(x_i^{l+1}, x_i x_j)`: dual of `Spider(k, l)`, labelled
    /// by the spider toset.
    SpiderDual { k: u32, l: u32 },
    /// `K[x_1..x_d]/(x_i^2, x_1 ... x_d)`, labelled by exponents.
    Leck { d: u32 },
    /// `K[x_1..x_d]/(x_i^2)`, labelled by exponents.
    Boolean { d: u32 },
    /// Even cycle of length `2p`.
    Torus { p: u32 },
    Diamond,
}

impl Factor {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Factor::Chain { len } => len >= 1,
            Factor::Star { n } | Factor::Colored { n } => n >= 1,
            Factor::Spider { l, .. } | Factor::SpiderDual { l, .. } => l >= 1,
            Factor::Leck { d } => d >= 2,
            Factor::Boolean { d } => d >= 1,
            Factor::Torus { p } => p >= 2,
            Factor::Diamond => true,
        };
        if ok {
            Ok(())
        } else {
            config(format!("factor {self:?} is outside its parameter range"))
        }
    }

    fn num_vars(&self) -> Option<usize> {
        match *self {
            Factor::Chain { .. } => Some(1),
            Factor::Star { .. } | Factor::Spider { .. } => None,
            Factor::Colored { n } => Some(n as usize),
            Factor::SpiderDual { k, .. } => Some(k as usize + 1),
            Factor::Leck { d } | Factor::Boolean { d } => Some(d as usize),
            Factor::Torus { .. } => Some(2),
            Factor::Diamond => Some(3),
        }
    }

    /// Toset sizes of the coordinates.
    fn grid(&self) -> Vec<u32> {
        match *self {
            Factor::Chain { len } => vec![len],
            Factor::Star { n } => vec![n + 1],
            Factor::Colored { n } => vec![n + 1],
            Factor::Spider { k, l } | Factor::SpiderDual { k, l } => vec![(k + 1) * l + 1],
            Factor::Leck { d } | Factor::Boolean { d } => vec![2; d as usize],
            Factor::Torus { p } => vec![2 * p],
            Factor::Diamond => vec![5],
        }
    }

    pub fn poset(&self) -> Result<RankedPoset> {
        self.validate()?;
        match *self {
            Factor::Chain { len } => multiset_lattice(&LatticeShape::finite(&[len])),
            Factor::Star { n } => spider(n - 1, 1),
            Factor::Spider { k, l } => spider(k, l),
            Factor::Colored { n } => {
                let ranks = std::iter::once(0).chain((0..n).map(|_| 1)).collect();
                let labels = (0..=n).map(|i| vec![i]).collect();
                let covers = (1..=n as usize).map(|i| (0, i));
                RankedPoset::from_covers(ranks, labels, covers)?.with_grid(self.grid())
            }
            Factor::SpiderDual { k, l } => spider(k, l)?.dual(),
            Factor::Leck { d } => Ok(multiset_lattice(&LatticeShape::finite(&vec![2; d as usize]))?
                .truncate(d as usize - 1)),
            Factor::Boolean { d } => multiset_lattice(&LatticeShape::finite(&vec![2; d as usize])),
            Factor::Torus { p } => {
                // x_1 chain at positions 0..p-1, x_2 chain at p..2p-2, top at 2p-1
                let mut ranks = vec![0; 2 * p as usize];
                let mut covers = Vec::new();
                for a in 1..p as usize {
                    ranks[a] = a;
                    covers.push((a - 1, a));
                    ranks[p as usize + a - 1] = a;
                    let below = if a == 1 { 0 } else { p as usize + a - 2 };
                    covers.push((below, p as usize + a - 1));
                }
                let top = 2 * p as usize - 1;
                ranks[top] = p as usize;
                covers.push((p as usize - 1, top));
                covers.push((top - 1, top));
                let labels = (0..2 * p).map(|i| vec![i]).collect();
                RankedPoset::from_covers(ranks, labels, covers)?
                    .canonicalize()
                    .with_grid(self.grid())
            }
            Factor::Diamond => RankedPoset::from_covers(
                vec![0, 1, 1, 1, 2],
                (0..5).map(|i| vec![i]).collect(),
                [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            )?
            .with_grid(self.grid()),
        }
    }

    /// Generators of the basic ring, in `num_vars` variables.
    fn generators(&self) -> Option<Vec<Polynomial>> {
        let pair = QuotientRingSpec::distinct_pair_generators;
        let pow = |d: usize, e: u32| QuotientRingSpec::pow_generators(&vec![e; d]);
        let mono = |e: &[u32]| Polynomial::monomial(e.to_vec());
        match *self {
            Factor::Chain { len } => Some(pow(1, len)),
            Factor::Star { .. } | Factor::Spider { .. } => None,
            Factor::Colored { n } => Some([pow(n as usize, 2), pair(n as usize)].concat()),
            Factor::SpiderDual { k, l } => {
                let d = k as usize + 1;
                Some([pow(d, l + 1), pair(d)].concat())
            }
            Factor::Leck { d } => {
                let mut g = pow(d as usize, 2);
                g.push(mono(&vec![1; d as usize]));
                Some(g)
            }
            Factor::Boolean { d } => Some(pow(d as usize, 2)),
            Factor::Torus { p } => Some(vec![
                mono(&[p + 1, 0]),
                mono(&[0, p + 1]),
                mono(&[1, 1]),
                Polynomial::from_int_terms(&[(&[p, 0], 1), (&[0, p], -1)]),
            ]),
            Factor::Diamond => {
                let mut g = [pow(3, 3), pair(3)].concat();
                g.push(Polynomial::from_int_terms(&[(&[2, 0, 0], 1), (&[0, 2, 0], -1)]));
                g.push(Polynomial::from_int_terms(&[(&[0, 2, 0], 1), (&[0, 0, 2], -1)]));
                Some(g)
            }
        }
    }

    fn top_rank(&self) -> usize {
        match *self {
            Factor::Chain { len } => len as usize - 1,
            Factor::Star { .. } | Factor::Colored { .. } => 1,
            Factor::Spider { l, .. } | Factor::SpiderDual { l, .. } => l as usize,
            Factor::Leck { d } => d as usize - 1,
            Factor::Boolean { d } => d as usize,
            Factor::Torus { p } => p as usize,
            Factor::Diamond => 2,
        }
    }

    fn ring_spec(&self) -> Option<QuotientRingSpec> {
        let gens = self.generators()?;
        Some(QuotientRingSpec::new(self.num_vars()?, gens, self.top_rank()))
    }

    /// Label of a monomial of the basic ring, given its exponent vector. Any
    /// member of a class maps to the class label; zero monomials to `None`.
    fn monomial_label(&self, e: &[u32]) -> Option<Label> {
        let deg: u32 = e.iter().sum();
        let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        let single = || (support.len() == 1).then(|| support[0] as u32);
        match *self {
            Factor::Chain { len } => (e[0] < len).then(|| vec![e[0]]),
            Factor::Star { .. } | Factor::Spider { .. } => None,
            Factor::Colored { .. } => match deg {
                0 => Some(vec![0]),
                1 => Some(vec![single()? + 1]),
                _ => None,
            },
            Factor::SpiderDual { k, l } => {
                if deg == 0 {
                    return Some(vec![(k + 1) * l]);
                }
                let i = single()?;
                (deg <= l).then(|| vec![i * l + (l - deg)])
            }
            Factor::Leck { d } => {
                (e.iter().all(|&v| v <= 1) && deg < d).then(|| e.to_vec())
            }
            Factor::Boolean { .. } => e.iter().all(|&v| v <= 1).then(|| e.to_vec()),
            Factor::Torus { p } => {
                if deg == 0 {
                    return Some(vec![0]);
                }
                let i = single()?;
                match (i, deg) {
                    (_, d) if d == p => Some(vec![2 * p - 1]),
                    (_, d) if d > p => None,
                    (0, d) => Some(vec![d]),
                    (_, d) => Some(vec![p + d - 1]),
                }
            }
            Factor::Diamond => match deg {
                0 => Some(vec![0]),
                1 => Some(vec![single()? + 1]),
                2 => single().map(|_| vec![4]),
                _ => None,
            },
        }
    }
}

/// `Spider(k, l)`: the elements `0..=(k+1)l`, where `a <= b` iff `a` and `b`
/// lie on the same leg (equal modulo `k+1`) with `a <= b`, or `b` is the head
/// `(k+1)l`. Labels are toset positions: leg by leg, bottom to top, head last.
pub fn spider(k: u32, l: u32) -> Result<RankedPoset> {
    if l == 0 {
        return config("spider legs need length at least 1");
    }
    let legs = k + 1;
    let head = legs * l;
    let pos = |a: u32| if a == head { head } else { (a % legs) * l + a / legs };
    let ranks = (0..=head).map(|a| (a / legs) as usize).collect();
    let labels = (0..=head).map(|a| vec![pos(a)]).collect();
    let mut covers = Vec::new();
    for a in 0..head {
        let b = a + legs;
        covers.push((a as ElementId, b.min(head) as ElementId));
    }
    RankedPoset::from_covers(ranks, labels, covers)?
        .canonicalize()
        .with_grid(vec![head + 1])
}

/// `Star(n)`: `n` minimal elements below a single top.
pub fn star(n: u32) -> Result<RankedPoset> {
    Factor::Star { n }.poset()
}

/// Block order on products of `Spider(k_i, l)` tosets: every leg is a part
/// (the last one with the head), starts by the lexicographic border chaser,
/// blocks by the domination order that ranks coordinates by leg index.
pub fn bezrukov_elsasser_order(spiders: &[(u32, u32)]) -> Recipe {
    Recipe::Block(BlockSpec {
        cuts: spiders
            .iter()
            .map(|&(k, l)| (0..=k).map(|i| i * l).collect())
            .collect(),
        starts: Box::new(Recipe::bc()),
        blocks: BlockRule::DominationByBlockIndex,
    })
}

/// Order on colored square-free rings with `n_1 >= ... >= n_d` variables:
/// toset `1 < x_1 < ... < x_n` cut into `{1, x_1}` and singletons, starts by
/// the lexicographic border chaser, blocks by lex.
pub fn mermin_murai_order(sizes: &[u32]) -> Result<Recipe> {
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return arg(format!("sizes {sizes:?} are not nonincreasing"));
    }
    if sizes.contains(&0) {
        return arg("a colored factor needs at least one variable");
    }
    Ok(Recipe::Block(BlockSpec {
        cuts: sizes
            .iter()
            .map(|&n| std::iter::once(0).chain(2..=n).collect())
            .collect(),
        starts: Box::new(Recipe::bc()),
        blocks: BlockRule::uniform(Recipe::Lex),
    }))
}

/// Order on `T(k_1, ..., k_n)` with `k_1 <= ... <= k_n`: each cycle cut into
/// `{1 < x_1 < ... < x_1^{k-1}}` and `{x_2 < ... < x_2^k}`, starts by colex,
/// blocks by lex.
pub fn torus_order(ks: &[u32]) -> Result<Recipe> {
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return arg(format!("cycle parameters {ks:?} are not nondecreasing"));
    }
    if ks.iter().any(|&k| k < 2) {
        return arg("cycle parameters must be at least 2");
    }
    Ok(Recipe::Block(BlockSpec {
        cuts: ks.iter().map(|&k| vec![0, k]).collect(),
        starts: Box::new(Recipe::Colex),
        blocks: BlockRule::uniform(Recipe::Lex),
    }))
}

/// Order on powers of the diamond: toset cut into `{1 < x_1}`, `{x_2}`,
/// `{x_3 < x_1^2}`, starts by lex, blocks by colex.
pub fn diamond_order(n: usize) -> Recipe {
    Recipe::Block(BlockSpec {
        cuts: vec![vec![0, 2, 3]; n],
        starts: Box::new(Recipe::Lex),
        blocks: BlockRule::uniform(Recipe::Colex),
    })
}

pub fn torus_ring(ks: &[u32]) -> Result<QuotientRingSpec> {
    Family::Torus { ks: ks.to_vec() }.ring_spec()
}

pub fn diamond_ring(n: usize) -> Result<QuotientRingSpec> {
    Family::Diamond { n }.ring_spec()
}

pub fn leck_ring(ds: &[u32], kk: u32) -> Result<QuotientRingSpec> {
    Family::Leck {
        ds: ds.to_vec(),
        kk,
    }
    .ring_spec()
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Multiset lattice, the poset of the Clements-Lindström ring.
    Multiset { lengths: Vec<u32> },
    /// `K[x_1..x_d]/(x_i^2)`.
    Kk { d: u32 },
    /// `K[x_1..x_d]/(x_i^{l_i})`.
    Cl { lengths: Vec<u32> },
    Star { legs: Vec<u32> },
    /// `Spider(k, l)^n`.
    Spider { k: u32, l: u32, n: u32 },
    /// Tensor product of colored square-free rings.
    Colored { sizes: Vec<u32> },
    /// `(K[x_1..x_d]/(x_i^l, x_i x_j))^{n}`.
    BeRing { l: u32, d: u32, n: u32 },
    /// Basic Leck rings with `ds` variables and one Kruskal-Katona ring on
    /// `kk` variables (none when 0).
    Leck { ds: Vec<u32>, kk: u32 },
    Torus { ks: Vec<u32> },
    Diamond { n: usize },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Multiset { .. } => "multiset",
            Family::Kk { .. } => "kk",
            Family::Cl { .. } => "cl",
            Family::Star { .. } => "star",
            Family::Spider { .. } => "be",
            Family::Colored { .. } => "colored",
            Family::BeRing { .. } => "be-ring",
            Family::Leck { .. } => "leck",
            Family::Torus { .. } => "torus",
            Family::Diamond { .. } => "diamond",
        }
    }

    pub fn factors(&self) -> Vec<Factor> {
        match self {
            Family::Multiset { lengths } | Family::Cl { lengths } => {
                lengths.iter().map(|&len| Factor::Chain { len }).collect()
            }
            Family::Kk { d } => vec![Factor::Chain { len: 2 }; *d as usize],
            Family::Star { legs } => legs.iter().map(|&n| Factor::Star { n }).collect(),
            Family::Spider { k, l, n } => vec![Factor::Spider { k: *k, l: *l }; *n as usize],
            Family::Colored { sizes } => sizes.iter().map(|&n| Factor::Colored { n }).collect(),
            Family::BeRing { l, d, n } => vec![
                Factor::SpiderDual {
                    k: d.saturating_sub(1),
                    l: l.saturating_sub(1),
                };
                *n as usize
            ],
            Family::Leck { ds, kk } => {
                let mut f: Vec<Factor> = ds.iter().map(|&d| Factor::Leck { d }).collect();
                if *kk > 0 {
                    f.push(Factor::Boolean { d: *kk });
                }
                f
            }
            Family::Torus { ks } => ks.iter().map(|&p| Factor::Torus { p }).collect(),
            Family::Diamond { n } => vec![Factor::Diamond; *n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let factors = self.factors();
        if factors.is_empty() {
            return config(format!("{} family with no factors", self.tag()));
        }
        match self {
            Family::BeRing { l, d, .. } if *l < 2 || *d < 1 => {
                return config("be-ring needs l >= 2 and d >= 1")
            }
            _ => {}
        }
        factors.iter().try_for_each(|f| f.validate())
    }

    /// The combinatorial poset, built as a product of the basic factors.
    pub fn poset(&self) -> Result<RankedPoset> {
        self.validate()?;
        let parts = self
            .factors()
            .iter()
            .map(|f| f.poset())
            .collect::<Result<Vec<_>>>()?;
        cartesian_product(&parts, None, DEFAULT_PRODUCT_LIMIT)
    }

    pub fn has_ring(&self) -> bool {
        self.factors().iter().all(|f| f.num_vars().is_some())
    }

    /// The quotient ring whose poset of monomials is [`Family::poset`].
    pub fn ring_spec(&self) -> Result<QuotientRingSpec> {
        self.validate()?;
        let parts = self
            .factors()
            .iter()
            .map(|f| {
                f.ring_spec()
                    .ok_or_else(|| Error::Config(format!("{} is not a ring family", self.tag())))
            })
            .collect::<Result<Vec<_>>>()?;
        QuotientRingSpec::tensor(&parts)
    }

    /// The published Macaulay order, as a recipe over the family labels.
    /// Leck rings have none.
    pub fn default_order(&self) -> Result<Option<Recipe>> {
        self.validate()?;
        Ok(match self {
            Family::Multiset { .. } | Family::Kk { .. } | Family::Cl { .. } => Some(Recipe::Lex),
            Family::Star { legs } => Some(bezrukov_elsasser_order(
                &legs.iter().map(|&n| (n - 1, 1)).collect::<Vec<_>>(),
            )),
            Family::Spider { k, l, n } => {
                Some(bezrukov_elsasser_order(&vec![(*k, *l); *n as usize]))
            }
            Family::Colored { sizes } => Some(mermin_murai_order(sizes)?),
            Family::BeRing { l, d, n } => Some(
                bezrukov_elsasser_order(&vec![(d - 1, l - 1); *n as usize]).dual(),
            ),
            Family::Leck { .. } => None,
            Family::Torus { ks } => Some(torus_order(ks)?),
            Family::Diamond { n } => Some(diamond_order(*n)),
        })
    }

    /// Direction in which the default order is Macaulay on [`Family::poset`].
    /// Ring families use the upper direction, matching ideals as upsets.
    pub fn direction(&self) -> Direction {
        match self {
            Family::Star { .. } | Family::Spider { .. } | Family::Multiset { .. } => Direction::Lower,
            _ => Direction::Upper,
        }
    }

    pub fn default_order_table(&self, p: &RankedPoset) -> Result<Option<OrderTable>> {
        self.default_order()?
            .map(|r| OrderTable::build(p, r))
            .transpose()
    }

    /// The ring's poset of monomials relabelled with the family labels. The
    /// element IDs are the ring's class IDs, so order tables built on the
    /// result apply to the ring directly.
    pub fn label_ring<F: Field>(&self, ring: &RingModel<F>) -> Result<RankedPoset> {
        let factors = self.factors();
        let mut labels = Vec::with_capacity(ring.classes().len());
        for c in ring.classes() {
            let mut label = Vec::new();
            let mut offset = 0;
            for f in &factors {
                let nv = f.num_vars().ok_or_else(|| {
                    Error::Config(format!("{} is not a ring family", self.tag()))
                })?;
                let part = &c.rep[offset..offset + nv];
                match f.monomial_label(part) {
                    Some(l) => label.extend(l),
                    None => {
                        return Err(Error::Invariant(format!(
                            "class of {:?} has no label in factor {f:?}",
                            c.rep
                        )))
                    }
                }
                offset += nv;
            }
            labels.push(label);
        }
        let grid = factors.iter().flat_map(|f| f.grid()).collect();
        ring.poset().relabeled(labels, Some(grid))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Family::Multiset { lengths } => write!(f, "multiset:{}", join(lengths)),
            Family::Kk { d } => write!(f, "kk:{d}"),
            Family::Cl { lengths } => write!(f, "cl:{}", join(lengths)),
            Family::Star { legs } => write!(f, "star:{}", join(legs)),
            Family::Spider { k, l, n } => write!(f, "be:{k},{l},{n}"),
            Family::Colored { sizes } => write!(f, "colored:{}", join(sizes)),
            Family::BeRing { l, d, n } => write!(f, "be-ring:{l},{d},{n}"),
            Family::Leck { ds, kk } => {
                let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "leck:{},{kk}", ds.join("+"))
            }
            Family::Torus { ks } => {
                if ks.windows(2).all(|w| w[0] == w[1]) {
                    write!(f, "torus:{},{}", ks[0], ks.len())
                } else {
                    write!(f, "torus-list:{}", join(ks))
                }
            }
            Family::Diamond { n } => write!(f, "diamond:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:params` with an optional `builtin:` prefix, e.g.
    /// `multiset:3,4`, `star:3`, `spider:2,2`, `be:2,2,2`, `torus:3,2`,
    /// `diamond:2`, `leck:2+2,1`, `colored:3,2`, `kk:3`, `be-ring:3,2,2`.
    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums = |p: &str| -> Result<Vec<u32>> {
            p.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Config(format!("bad parameter `{t}` in `{s}`")))
                })
                .collect()
        };
        let exact = |v: Vec<u32>, n: usize| -> Result<Vec<u32>> {
            if v.len() == n {
                Ok(v)
            } else {
                config(format!("`{s}` needs {n} parameters"))
            }
        };
        let fam = match name {
            "multiset" => Family::Multiset {
                lengths: nums(params)?,
            },
            "cl" => Family::Cl {
                lengths: nums(params)?,
            },
            "kk" => Family::Kk {
                d: exact(nums(params)?, 1)?[0],
            },
            "star" => Family::Star { legs: nums(params)? },
            "spider" => {
                let v = exact(nums(params)?, 2)?;
                Family::Spider {
                    k: v[0],
                    l: v[1],
                    n: 1,
                }
            }
            "be" => {
                let v = exact(nums(params)?, 3)?;
                Family::Spider {
                    k: v[0],
                    l: v[1],
                    n: v[2],
                }
            }
            "colored" => Family::Colored {
                sizes: nums(params)?,
            },
            "be-ring" => {
                let v = exact(nums(params)?, 3)?;
                Family::BeRing {
                    l: v[0],
                    d: v[1],
                    n: v[2],
                }
            }
            "leck" => {
                let (ds, kk) = params.split_once(',').unwrap_or((params, "0"));
                let ds: Result<Vec<u32>> = ds
                    .split('+')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Config(format!("bad parameter `{t}` in `{s}`")))
                    })
                    .collect();
                Family::Leck {
                    ds: ds?,
                    kk: exact(nums(kk)?, 1)?[0],
                }
            }
            "torus" => {
                let v = exact(nums(params)?, 2)?;
                Family::Torus {
                    ks: vec![v[0]; v[1] as usize],
                }
            }
            "torus-list" => Family::Torus { ks: nums(params)? },
            "diamond" => Family::Diamond {
                n: exact(nums(params)?, 1)?[0] as usize,
            },
            _ => return config(format!("unknown family `{name}`")),
        };
        fam.validate()?;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::verify::is_macaulay;

    fn fam(s: &str) -> Family {
        s.parse().unwrap()
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(star(1).unwrap().level_sizes(), vec![1, 1]);
        assert_eq!(spider(2, 2).unwrap().level_sizes(), vec![3, 3, 1]);
        assert_eq!(spider(2, 2).unwrap().len(), 7);
        let t3 = Factor::Torus { p: 3 }.poset().unwrap();
        assert_eq!(t3.level_sizes(), vec![1, 2, 2, 1]);
        assert!(t3.hasse_is_cycle());
        assert_eq!(Factor::Diamond.poset().unwrap().level_sizes(), vec![1, 3, 1]);
        assert_eq!(Factor::Leck { d: 3 }.poset().unwrap().level_sizes(), vec![1, 3, 3]);
    }

    #[test]
    fn spider_with_unit_legs_is_a_star() {
        for k in 0..4 {
            let s = spider(k, 1).unwrap();
            let t = star(k + 1).unwrap();
            assert_eq!(s.canonicalize(), t.canonicalize());
        }
    }

    #[test]
    fn parse_round_trips() {
        for s in [
            "multiset:3,4",
            "kk:3",
            "cl:2,3",
            "star:3",
            "be:2,2,2",
            "colored:3,2",
            "be-ring:3,2,2",
            "leck:2+2,1",
            "torus:3,2",
            "diamond:2",
        ] {
            assert_eq!(fam(s).to_string(), s);
        }
        assert_eq!(fam("builtin:spider:2,2"), fam("be:2,2,1"));
        assert!("torus:1,2".parse::<Family>().is_err());
        assert!("nope:1".parse::<Family>().is_err());
    }

    #[test]
    fn ring_posets_match_constructions() {
        for s in [
            "kk:3",
            "cl:3,4",
            "colored:3,2",
            "be-ring:3,2,2",
            "leck:2+2,1",
            "leck:3,0",
            "torus:3,2",
            "torus:2,1",
            "diamond:2",
        ] {
            let f = fam(s);
            let ring = RingModel::build(&f.ring_spec().unwrap(), Rationals).unwrap();
            let labelled = f.label_ring(&ring).unwrap();
            assert_eq!(labelled.canonicalize(), f.poset().unwrap().canonicalize(), "{s}");
        }
    }

    #[test]
    fn colored_order_on_one_factor_is_the_toset() {
        let f = fam("colored:3");
        let p = f.poset().unwrap();
        let o = f.default_order_table(&p).unwrap().unwrap();
        let labels: Vec<_> = o.sequence().iter().map(|&x| p.label(x)[0]).collect();
        assert_eq!(labels, vec![0, 1, 2, 3]);
        assert!(mermin_murai_order(&[2, 3]).is_err());
    }

    #[test]
    fn small_default_orders_are_macaulay() {
        for s in ["star:3,2", "be:1,2,2", "colored:2,2", "torus:3,1", "diamond:1", "multiset:3,3"] {
            let f = fam(s);
            let p = f.poset().unwrap();
            let o = f.default_order_table(&p).unwrap().unwrap();
            assert!(is_macaulay(&p, &o, f.direction()).unwrap().holds, "{s}");
        }
    }
}
