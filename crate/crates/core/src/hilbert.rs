//! Hilbert functions of homogeneous ideals, initial monomial data, initial
//! segment spaces, and the Macaulay-ring checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::field::Field;
use crate::linalg::{inverse, vec_mul, Rref};
use crate::order::{OrderTable, Recipe};
use crate::par;
use crate::ring::{monomials_of_degree, ClassId, Polynomial, RingModel};
use crate::verify::{is_macaulay_with, Direction, Failure, MacaulayVerdict, VerifyOptions};

/// Generators of a homogeneous ideal of `S`, given as polynomials of `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub generators: Vec<Polynomial>,
}

impl IdealSpec {
    pub fn from_json(s: &str) -> Result<IdealSpec> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A homogeneous ideal cut at the ring's truncation degree, stored as one
/// RREF basis per degree in residue coordinates.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    levels: Vec<Rref<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn generate(ring: &RingModel<F>, spec: &IdealSpec) -> Result<Ideal<F>> {
        let f = ring.field();
        let d = ring.num_vars();
        let mut gens = Vec::new();
        for g in &spec.generators {
            if g.is_zero() {
                continue;
            }
            let Some(deg) = g.degree() else {
                return arg("ideal generator is not homogeneous");
            };
            if g.num_vars() != Some(d) {
                return arg(format!("ideal generator is not in {d} variables"));
            }
            let mut terms = Vec::new();
            for (e, c) in g.terms() {
                terms.push((e.clone(), f.from_rational(c)?));
            }
            gens.push((deg, terms));
        }
        let mut levels = Vec::new();
        for i in 0..=ring.max_degree() {
            let mut rows = Vec::new();
            for (deg, terms) in &gens {
                if *deg > i {
                    continue;
                }
                for m in monomials_of_degree(d, i - deg) {
                    let shifted: Vec<(Vec<u32>, F::Elem)> = terms
                        .iter()
                        .map(|(e, c)| (e.iter().zip(&m).map(|(a, b)| a + b).collect(), c.clone()))
                        .collect();
                    rows.push(ring.residue_of_terms(i, &shifted));
                }
            }
            levels.push(Rref::new(f.clone(), rows, ring.hilb(i)));
        }
        Ok(Ideal { levels })
    }

    /// The monomial ideal generated by classes.
    pub fn from_classes(ring: &RingModel<F>, gens: &[ClassId]) -> Ideal<F> {
        let members = monomial_ideal_members(ring, gens);
        let levels = (0..=ring.max_degree())
            .map(|i| {
                let rows = ring
                    .classes_of_degree(i)
                    .filter(|&c| members[c])
                    .map(|c| ring.residue(c).to_vec())
                    .collect();
                Rref::new(ring.field().clone(), rows, ring.hilb(i))
            })
            .collect();
        Ideal { levels }
    }

    pub fn level(&self, i: usize) -> &Rref<F> {
        &self.levels[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.rank()).collect()
    }

    /// Checks `I_i * x_j` is inside `I_{i+1}` for all `i < D`.
    pub fn is_closed(&self, ring: &RingModel<F>) -> bool {
        let f = ring.field();
        for i in 0..ring.max_degree() {
            for row in self.levels[i].rows() {
                for j in 0..ring.num_vars() {
                    let mut terms: Vec<(Vec<u32>, F::Elem)> = Vec::new();
                    for c in ring.classes_of_degree(i) {
                        let _ = c;
                    }
                    // expand the row over standard monomials of degree i
                    let standard = standard_monomials(ring, i);
                    for (k, m) in standard.iter().enumerate() {
                        if f.is_zero(&row[k]) {
                            continue;
                        }
                        let mut e = m.clone();
                        e[j] += 1;
                        terms.push((e, row[k].clone()));
                    }
                    let v = ring.residue_of_terms(i + 1, &terms);
                    if !self.levels[i + 1].contains(&v) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Monomials whose residues form the standard basis of `S_i`, in column order.
fn standard_monomials<F: Field>(ring: &RingModel<F>, i: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); ring.hilb(i)];
    let f = ring.field();
    for m in ring.monomials(i) {
        if let Ok(Some(c)) = ring.class_of_monomial(m) {
            let r = ring.residue(c);
            let ones: Vec<usize> = (0..r.len()).filter(|&k| !f.is_zero(&r[k])).collect();
            if ones.len() == 1 && r[ones[0]] == f.one() && out[ones[0]].is_empty() {
                out[ones[0]] = m.clone();
            }
        }
    }
    out
}

/// Membership of every class in the monomial ideal generated by `gens`.
pub fn monomial_ideal_members<F: Field>(ring: &RingModel<F>, gens: &[ClassId]) -> Vec<bool> {
    let p = ring.poset();
    let mut member = vec![false; p.len()];
    for &g in gens {
        member[g] = true;
    }
    // class IDs ascend with degree, so one forward pass closes upward
    for x in 0..p.len() {
        if !member[x] && p.down(x).iter().any(|&y| member[y]) {
            member[x] = true;
        }
    }
    member
}

pub fn hilbert_function<F: Field>(_ring: &RingModel<F>, ideal: &Ideal<F>) -> Vec<usize> {
    ideal.dims()
}

/// Per degree, a list of classes forming a basis of `S_i`, sorted ascending
/// by the order used to build it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeveledMonomialBasis {
    pub levels: Vec<Vec<ClassId>>,
}

impl LeveledMonomialBasis {
    /// Scans classes in ascending order and keeps each one independent of
    /// those already kept. On a level linearly independent ring this keeps
    /// every class.
    pub fn greedy<F: Field>(ring: &RingModel<F>, o: &OrderTable) -> LeveledMonomialBasis {
        let levels = (0..=ring.max_degree())
            .map(|i| {
                let mut classes: Vec<ClassId> = ring.classes_of_degree(i).collect();
                classes.sort_by_key(|&c| o.position(c));
                let mut span = Rref::empty(ring.field().clone(), ring.hilb(i));
                classes
                    .into_iter()
                    .filter(|&c| span.insert(ring.residue(c)))
                    .collect()
            })
            .collect();
        LeveledMonomialBasis { levels }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialMonomialData {
    /// Initial monomial set per degree, ascending by the order.
    pub ims: Vec<Vec<ClassId>>,
    pub imv_dims: Vec<usize>,
    pub imi_dims: Vec<usize>,
}

/// Initial monomials are the RREF pivots of `I_i` written in the basis
/// `B_i` with columns ascending by `o`: the first nonzero coefficient of
/// each reduced row marks the smallest monomial of that element.
pub fn initial_monomial_data<F: Field>(
    ring: &RingModel<F>,
    ideal: &Ideal<F>,
    o: &OrderTable,
    basis: &LeveledMonomialBasis,
) -> Result<InitialMonomialData> {
    let f = ring.field();
    let mut ims = Vec::new();
    for i in 0..=ring.max_degree() {
        let mut b = basis.levels[i].clone();
        b.sort_by_key(|&c| o.position(c));
        if b.len() != ring.hilb(i) {
            return arg(format!(
                "basis of degree {i} has {} classes, the degree has dimension {}",
                b.len(),
                ring.hilb(i)
            ));
        }
        let change: Vec<Vec<F::Elem>> = b.iter().map(|&c| ring.residue(c).to_vec()).collect();
        let Some(inv) = inverse(f, &change) else {
            return arg(format!("basis of degree {i} is not linearly independent"));
        };
        let rows: Vec<Vec<F::Elem>> = ideal
            .level(i)
            .rows()
            .iter()
            .map(|r| vec_mul(f, r, &inv))
            .collect();
        let rref = Rref::new(f.clone(), rows, b.len());
        ims.push(rref.pivots().iter().map(|&c| b[c]).collect::<Vec<_>>());
    }
    let imv_dims = ims.iter().map(|s| s.len()).collect();
    let gens: Vec<ClassId> = ims.iter().flatten().copied().collect();
    let members = monomial_ideal_members(ring, &gens);
    let imi_dims = (0..=ring.max_degree())
        .map(|i| {
            let cls: Vec<ClassId> = ring.classes_of_degree(i).filter(|&c| members[c]).collect();
            ring.span_rank(i, &cls)
        })
        .collect();
    Ok(InitialMonomialData {
        ims,
        imv_dims,
        imi_dims,
    })
}

/// Per degree the span of the `dims[i]` largest classes under `o`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSpace {
    pub classes: Vec<Vec<ClassId>>,
    pub dims: Vec<usize>,
}

/// Classes of each degree sorted ascending by `o`.
pub fn sorted_levels<F: Field>(ring: &RingModel<F>, o: &OrderTable) -> Vec<Vec<ClassId>> {
    (0..=ring.max_degree())
        .map(|i| {
            let mut v: Vec<ClassId> = ring.classes_of_degree(i).collect();
            v.sort_by_key(|&c| o.position(c));
            v
        })
        .collect()
}

pub fn initial_segment_space<F: Field>(
    ring: &RingModel<F>,
    dims: &[usize],
    o: &OrderTable,
) -> Result<SegmentSpace> {
    let levels = sorted_levels(ring, o);
    let mut classes = Vec::new();
    let mut out_dims = Vec::new();
    for i in 0..=ring.max_degree() {
        let want = dims.get(i).copied().unwrap_or(0);
        let l = &levels[i];
        if want > l.len() {
            return arg(format!(
                "degree {i} has {} classes, asked for {want}",
                l.len()
            ));
        }
        let seg: Vec<ClassId> = l[l.len() - want..].to_vec();
        out_dims.push(ring.span_rank(i, &seg));
        classes.push(seg);
    }
    Ok(SegmentSpace {
        classes,
        dims: out_dims,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentIdealReport {
    pub holds: bool,
    pub failing_degree: Option<usize>,
    /// Upper-shadow classes of the failing degree outside the next segment.
    pub escaped: Vec<ClassId>,
}

/// A span of classes is an ideal iff the upper shadow of each degree lies in
/// the next degree.
pub fn segment_is_ideal<F: Field>(ring: &RingModel<F>, seg: &[Vec<ClassId>]) -> SegmentIdealReport {
    let p = ring.poset();
    let mut member = vec![false; p.len()];
    for &c in seg.iter().flatten() {
        member[c] = true;
    }
    for i in 0..ring.max_degree() {
        let escaped: BTreeSet<ClassId> = seg
            .get(i)
            .into_iter()
            .flatten()
            .flat_map(|&c| p.up(c).iter().copied())
            .filter(|&t| !member[t])
            .collect();
        if !escaped.is_empty() {
            return SegmentIdealReport {
                holds: false,
                failing_degree: Some(i),
                escaped: escaped.into_iter().collect(),
            };
        }
    }
    SegmentIdealReport {
        holds: true,
        failing_degree: None,
        escaped: vec![],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    MonomialIdeals,
    Poset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingFailureReason {
    /// The segment space is not closed under multiplication.
    NotIdeal,
    /// The segment space has a smaller Hilbert function than the ideal.
    HilbertMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFailure {
    pub degree: usize,
    pub reason: RingFailureReason,
    /// Minimal generators of the monomial ideal.
    pub generators: Vec<ClassId>,
    pub profile: Vec<usize>,
    pub segment: Vec<ClassId>,
    pub escaped: Vec<ClassId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub level_linearly_independent: bool,
    pub lli_failure_degree: Option<usize>,
    /// A recipe verified to be a monomial order on the classes, if any.
    pub monomial_order: Option<Recipe>,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.level_linearly_independent && self.monomial_order.is_some()
    }

    pub fn describe_failure(&self) -> Option<String> {
        if !self.level_linearly_independent {
            Some(format!(
                "not level linearly independent (degree {})",
                self.lli_failure_degree.unwrap_or(0)
            ))
        } else if self.monomial_order.is_none() {
            Some("no monomial order found among the candidates".into())
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingVerdict {
    pub mode: Mode,
    pub holds: bool,
    /// All claims hold up to this degree.
    pub max_degree: usize,
    /// False when only monomial ideals were examined outside the
    /// correspondence hypotheses.
    pub covers_all_ideals: bool,
    pub ideals_checked: usize,
    pub max_gen_degree: Option<usize>,
    pub failures: Vec<RingFailure>,
    pub poset_verdict: Option<MacaulayVerdict>,
}

#[derive(Debug, Clone)]
pub struct RingCheckOptions {
    pub max_gen_degree: Option<usize>,
    pub max_ideals: usize,
    pub all_failures: bool,
    pub verify: VerifyOptions,
}

impl Default for RingCheckOptions {
    fn default() -> Self {
        RingCheckOptions {
            max_gen_degree: None,
            max_ideals: 1 << 20,
            all_failures: false,
            verify: VerifyOptions::default(),
        }
    }
}

/// Candidate monomial orders tried when checking the hypotheses: the given
/// order, lex and colex on representatives, and every domination order
/// when there are at most six variables.
pub fn find_monomial_order<F: Field>(ring: &RingModel<F>, given: Option<&OrderTable>) -> Result<Option<Recipe>> {
    if let Some(o) = given {
        if ring.is_monomial_order(o)?.holds {
            return Ok(Some(o.recipe().clone()));
        }
    }
    let d = ring.num_vars();
    let mut cands = vec![Recipe::Lex, Recipe::Colex];
    if d <= 6 {
        for perm in permutations(d) {
            cands.push(Recipe::domination(perm));
        }
    }
    for r in cands {
        let o = OrderTable::build(ring.poset(), r.clone())?;
        if ring.is_monomial_order(&o)?.holds {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn check_hypotheses<F: Field>(ring: &RingModel<F>, o: Option<&OrderTable>) -> Result<Hypotheses> {
    let lli = ring.level_linear_independence();
    Ok(Hypotheses {
        level_linearly_independent: lli.holds,
        lli_failure_degree: lli.failure.map(|f| f.degree),
        monomial_order: find_monomial_order(ring, o)?,
    })
}

/// Enumerates the upsets of the classes of degree at most `g`, i.e. the
/// monomial ideals generated in those degrees, as membership bitmaps over
/// class IDs `0..n_g`.
fn upsets_up_to<F: Field>(ring: &RingModel<F>, g: usize, cap: usize) -> Result<Vec<Vec<bool>>> {
    let p = ring.poset();
    let n = ring.classes_of_degree(g).end;
    let mut out = Vec::new();
    let mut member = vec![false; n];
    // decide elements from the top rank down, so all covers above are known
    fn rec(
        p: &crate::poset::RankedPoset,
        n: usize,
        k: usize,
        member: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        cap: usize,
    ) -> Result<()> {
        if k == 0 {
            if out.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} monomial ideals")));
            }
            out.push(member.clone());
            return Ok(());
        }
        let x = k - 1;
        rec(p, n, x, member, out, cap)?;
        if p.up(x).iter().all(|&y| y >= n || member[y]) {
            member[x] = true;
            rec(p, n, x, member, out, cap)?;
            member[x] = false;
        }
        Ok(())
    }
    rec(p, n, n, &mut member, &mut out, cap)?;
    Ok(out)
}

/// Checks one monomial ideal (given by its members of degree `<= g`):
/// its segment space must be an ideal with the same Hilbert function.
fn check_monomial_ideal<F: Field>(
    ring: &RingModel<F>,
    levels: &[Vec<ClassId>],
    low: &[bool],
) -> Option<RingFailure> {
    let p = ring.poset();
    let mut member = vec![false; p.len()];
    member[..low.len()].copy_from_slice(low);
    for x in low.len()..p.len() {
        if p.down(x).iter().any(|&y| member[y]) {
            member[x] = true;
        }
    }
    let generators: Vec<ClassId> = (0..low.len())
        .filter(|&x| member[x] && p.down(x).iter().all(|&y| !member[y]))
        .collect();
    let lli = ring.is_level_linearly_independent();
    let profile: Vec<usize> = (0..=ring.max_degree())
        .map(|i| {
            let cls: Vec<ClassId> = ring.classes_of_degree(i).filter(|&c| member[c]).collect();
            if lli {
                cls.len()
            } else {
                ring.span_rank(i, &cls)
            }
        })
        .collect();
    let seg: Vec<Vec<ClassId>> = levels
        .iter()
        .zip(&profile)
        .map(|(l, &q)| l[l.len() - q..].to_vec())
        .collect();
    if !lli {
        for (i, s) in seg.iter().enumerate() {
            if ring.span_rank(i, s) != profile[i] {
                return Some(RingFailure {
                    degree: i,
                    reason: RingFailureReason::HilbertMismatch,
                    generators,
                    profile,
                    segment: s.clone(),
                    escaped: vec![],
                });
            }
        }
    }
    let rep = segment_is_ideal(ring, &seg);
    rep.failing_degree.map(|i| RingFailure {
        degree: i,
        reason: RingFailureReason::NotIdeal,
        generators,
        profile,
        segment: seg[i].clone(),
        escaped: rep.escaped,
    })
}

/// Macaulay check of `(S, o)`. `MonomialIdeals` examines every monomial
/// ideal generated in degrees up to `g` (default `min(3, D - 1)`);
/// `Poset` runs the upper-direction verifier on the poset of monomials and
/// requires the correspondence hypotheses.
pub fn is_macaulay_ring<F: Field>(
    ring: &RingModel<F>,
    o: &OrderTable,
    mode: Mode,
    opts: &RingCheckOptions,
) -> Result<RingVerdict> {
    if o.len() != ring.classes().len() {
        return arg("order does not cover the classes of the ring");
    }
    let max_degree = ring.max_degree();
    match mode {
        Mode::Poset => {
            let hyp = check_hypotheses(ring, Some(o))?;
            if let Some(msg) = hyp.describe_failure() {
                return Err(Error::Hypothesis(msg));
            }
            let v = is_macaulay_with(ring.poset(), o, Direction::Upper, &opts.verify)?;
            Ok(RingVerdict {
                mode,
                holds: v.holds,
                max_degree,
                covers_all_ideals: true,
                ideals_checked: 0,
                max_gen_degree: None,
                failures: vec![],
                poset_verdict: Some(v),
            })
        }
        Mode::MonomialIdeals => {
            let lli = ring.is_level_linearly_independent();
            let g = opts
                .max_gen_degree
                .unwrap_or_else(|| 3.min(max_degree.saturating_sub(1)))
                .min(max_degree);
            let levels = sorted_levels(ring, o);
            let upsets = upsets_up_to(ring, g, opts.max_ideals)?;
            let results = par::map_slice(opts.verify.parallelism, &upsets, |u| {
                check_monomial_ideal(ring, &levels, u)
            });
            let mut failures: Vec<RingFailure> = results.into_iter().flatten().collect();
            if !opts.all_failures {
                failures.truncate(1);
            }
            Ok(RingVerdict {
                mode,
                holds: failures.is_empty(),
                max_degree,
                covers_all_ideals: lli,
                ideals_checked: upsets.len(),
                max_gen_degree: Some(g),
                failures,
                poset_verdict: None,
            })
        }
    }
}

/// Reads a poset failure as a ring failure: the monomial ideal generated
/// by the witness must produce a segment space that is not an ideal.
pub fn poset_witness_to_ring<F: Field>(
    ring: &RingModel<F>,
    o: &OrderTable,
    f: &Failure,
) -> Option<RingFailure> {
    let levels = sorted_levels(ring, o);
    let members = monomial_ideal_members(ring, &f.witness);
    let n = ring.classes_of_degree(ring.max_degree()).end;
    check_monomial_ideal(ring, &levels, &members[..n])
}

/// Reads a ring failure as a poset failure: the ideal's classes at the
/// failing degree violate the upper-direction Def.
pub fn ring_witness_to_poset<F: Field>(
    ring: &RingModel<F>,
    o: &OrderTable,
    f: &RingFailure,
) -> Result<Failure> {
    let members = monomial_ideal_members(ring, &f.generators);
    let p = ring.poset();
    let a: BTreeSet<ClassId> = ring.classes_of_degree(f.degree).filter(|&c| members[c]).collect();
    let seg = o.final_segment(p, f.degree, a.len())?;
    let shadow_a = p.upper_shadow(&a)?;
    let seg_shadow = p.upper_shadow(&seg)?;
    let failure = Failure {
        level: f.degree,
        q: a.len(),
        reason: crate::verify::Reason::Continuity,
        witness: a.into_iter().collect(),
        witness_shadow: shadow_a.into_iter().collect(),
        segment: seg.into_iter().collect(),
        segment_shadow: seg_shadow.into_iter().collect(),
    };
    Ok(failure)
}

/// Reproducible corpus of small homogeneous ideals: one or two generators,
/// each with two or three distinct terms of degree one or two and nonzero
/// integer coefficients in `-3..=3`.
pub fn random_ideals(d: usize, max_degree: usize, count: usize, seed: u64) -> Vec<IdealSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ngens = rng.gen_range(1..=2);
            let generators = (0..ngens)
                .map(|_| {
                    let deg = rng.gen_range(1..=2.min(max_degree.max(1)));
                    let mut monos = monomials_of_degree(d, deg);
                    monos.shuffle(&mut rng);
                    let nterms = rng.gen_range(2..=3).min(monos.len());
                    Polynomial::from_terms(monos.into_iter().take(nterms).map(|e| {
                        let mut c = 0i64;
                        while c == 0 {
                            c = rng.gen_range(-3..=3);
                        }
                        (e, BigRational::from_integer(c.into()))
                    }))
                })
                .collect();
            IdealSpec { generators }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::order::RankOverride;
    use crate::ring::QuotientRingSpec;

    fn p(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(terms)
    }

    fn not_lli_ring() -> RingModel<Rationals> {
        let gens = vec![p(&[(&[2, 0, 0], 1), (&[1, 1, 0], 1), (&[1, 0, 1], -1)])];
        RingModel::build(&QuotientRingSpec::new(3, gens, 2), Rationals).unwrap()
    }

    #[test]
    fn hilbert_of_trivial_ideals() {
        let r = not_lli_ring();
        let zero = Ideal::generate(&r, &IdealSpec { generators: vec![] }).unwrap();
        assert_eq!(hilbert_function(&r, &zero), vec![0, 0, 0]);
        let one = IdealSpec {
            generators: vec![p(&[(&[0, 0, 0], 1)])],
        };
        let whole = Ideal::generate(&r, &one).unwrap();
        assert_eq!(hilbert_function(&r, &whole), r.hilbert_function());
    }

    #[test]
    fn not_lli_segment_space_loses_dimension() {
        let r = not_lli_ring();
        let spec = IdealSpec {
            generators: vec![p(&[(&[0, 0, 2], 1)]), p(&[(&[0, 1, 1], 1)]), p(&[(&[0, 2, 0], 1)])],
        };
        let i = Ideal::generate(&r, &spec).unwrap();
        assert_eq!(i.dims()[2], 3);
        assert!(i.is_closed(&r));
        let lex = OrderTable::build(r.poset(), Recipe::Lex).unwrap();
        let seg = initial_segment_space(&r, &i.dims(), &lex).unwrap();
        let reps: Vec<_> = seg.classes[2].iter().map(|&c| r.class(c).rep.clone()).collect();
        assert_eq!(reps, vec![vec![1, 0, 1], vec![1, 1, 0], vec![2, 0, 0]]);
        assert_eq!(seg.dims[2], 2);
    }

    #[test]
    fn mixed_order_initial_ideal_grows() {
        let r = RingModel::build(&QuotientRingSpec::new(2, vec![], 2), Rationals).unwrap();
        let mixed = Recipe::ByRank {
            default: Box::new(Recipe::Colex),
            overrides: vec![RankOverride {
                rank: 1,
                order: Recipe::Lex,
            }],
        };
        let o = OrderTable::build(r.poset(), mixed).unwrap();
        let i = Ideal::generate(
            &r,
            &IdealSpec {
                generators: vec![p(&[(&[1, 0], 1), (&[0, 1], 1)])],
            },
        )
        .unwrap();
        let b = LeveledMonomialBasis::greedy(&r, &o);
        let data = initial_monomial_data(&r, &i, &o, &b).unwrap();
        assert_eq!(i.dims()[2], 2);
        assert_eq!(data.imv_dims[2], 2);
        assert_eq!(data.imi_dims[2], 3);
    }

    #[test]
    fn monomial_ideal_initial_data_is_itself() {
        let r = RingModel::build(
            &QuotientRingSpec::new(2, QuotientRingSpec::pow_generators(&[3, 4]), 5),
            Rationals,
        )
        .unwrap();
        let spec = IdealSpec {
            generators: vec![p(&[(&[1, 1], 1)]), p(&[(&[0, 3], 1)])],
        };
        let i = Ideal::generate(&r, &spec).unwrap();
        for recipe in [Recipe::Lex, Recipe::Colex, Recipe::hc()] {
            let o = OrderTable::build(r.poset(), recipe).unwrap();
            let data = initial_monomial_data(&r, &i, &o, &LeveledMonomialBasis::greedy(&r, &o)).unwrap();
            assert_eq!(data.imv_dims, i.dims());
            assert_eq!(data.imi_dims, i.dims());
        }
    }

    #[test]
    fn clements_lindstrom_ring_both_modes() {
        let r = RingModel::build(
            &QuotientRingSpec::new(2, QuotientRingSpec::pow_generators(&[3, 4]), 5),
            Rationals,
        )
        .unwrap();
        let lex = OrderTable::build(r.poset(), Recipe::Lex).unwrap();
        let opts = RingCheckOptions::default();
        let a = is_macaulay_ring(&r, &lex, Mode::MonomialIdeals, &opts).unwrap();
        let b = is_macaulay_ring(&r, &lex, Mode::Poset, &opts).unwrap();
        assert!(a.holds && b.holds);
        assert!(a.ideals_checked > 10);
    }

    #[test]
    fn m43_ring_fails_in_both_modes_with_matching_witnesses() {
        let r = RingModel::build(
            &QuotientRingSpec::new(2, QuotientRingSpec::pow_generators(&[4, 3]), 5),
            Rationals,
        )
        .unwrap();
        let lex = OrderTable::build(r.poset(), Recipe::Lex).unwrap();
        let opts = RingCheckOptions::default();
        let a = is_macaulay_ring(&r, &lex, Mode::MonomialIdeals, &opts).unwrap();
        let b = is_macaulay_ring(&r, &lex, Mode::Poset, &opts).unwrap();
        assert!(!a.holds && !b.holds);
        let pf = &b.poset_verdict.as_ref().unwrap().failures[0];
        assert!(poset_witness_to_ring(&r, &lex, pf).is_some());
        let rf = ring_witness_to_poset(&r, &lex, &a.failures[0]).unwrap();
        assert!(rf.recheck(r.poset(), &lex, Direction::Upper).unwrap());
    }

    #[test]
    fn poset_mode_requires_lli() {
        let r = not_lli_ring();
        let lex = OrderTable::build(r.poset(), Recipe::Lex).unwrap();
        assert!(matches!(
            is_macaulay_ring(&r, &lex, Mode::Poset, &RingCheckOptions::default()),
            Err(Error::Hypothesis(_))
        ));
        let v = is_macaulay_ring(&r, &lex, Mode::MonomialIdeals, &RingCheckOptions::default()).unwrap();
        assert!(!v.covers_all_ideals);
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_ideals(3, 3, 5, 7), random_ideals(3, 3, 5, 7));
        assert_ne!(random_ideals(3, 3, 5, 7), random_ideals(3, 3, 5, 8));
    }
}
