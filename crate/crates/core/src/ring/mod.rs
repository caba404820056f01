//! Truncated graded quotient rings `S = K[x_1..x_d]/H` and their posets of
//! monomials.

mod spec;
mod tree;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use spec::{Polynomial, QuotientRingSpec};
pub use tree::{recognize_tree_ring, TreeLegs};

use crate::error::{arg, Error, Result};
use crate::field::Field;
use crate::linalg::Rref;
use crate::order::OrderTable;
use crate::poset::{ElementId, Label, RankedPoset};

pub type ClassId = ElementId;

/// Monomials of one degree sharing a nonzero residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialClass {
    pub degree: usize,
    /// Lexicographically smallest member.
    pub rep: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
struct Degree<F: Field> {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// `H_i` in monomial coordinates (columns in lex order).
    h: Rref<F>,
    /// Class of each monomial, `None` when it lies in `H`.
    class_of: Vec<Option<ClassId>>,
    /// Residue of each class of this degree in the basis of standard
    /// monomials (the non-pivot columns of `h`).
    residues: Vec<Vec<F::Elem>>,
}

#[derive(Debug, Clone)]
pub struct RingModel<F: Field> {
    spec: QuotientRingSpec,
    field: F,
    degrees: Vec<Degree<F>>,
    classes: Vec<MonomialClass>,
    /// First class ID of each degree; one extra entry closes the last degree.
    class_start: Vec<ClassId>,
    poset: RankedPoset,
}

/// All exponent vectors of total degree `deg` in `d` variables, lex ascending.
pub fn monomials_of_degree(d: usize, deg: usize) -> Vec<Vec<u32>> {
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(d, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, deg as u32, &mut Vec::with_capacity(d), &mut out);
    out
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<F: Field> RingModel<F> {
    /// Computes `H_i`, residues, and monomial classes for every degree up
    /// to the spec's truncation degree.
    pub fn build(spec: &QuotientRingSpec, field: F) -> Result<RingModel<F>> {
        spec.validate()?;
        let d = spec.d;
        let mut gens = Vec::with_capacity(spec.generators.len());
        for g in &spec.generators {
            let mut terms = Vec::new();
            for (e, c) in g.terms() {
                let v = field.from_rational(c)?;
                if !field.is_zero(&v) {
                    terms.push((e.clone(), v));
                }
            }
            if terms.is_empty() {
                continue;
            }
            gens.push((g.degree().expect("validated homogeneous"), terms));
        }
        let mut degrees = Vec::with_capacity(spec.max_degree + 1);
        let mut classes = Vec::new();
        let mut class_start = Vec::with_capacity(spec.max_degree + 2);
        for deg in 0..=spec.max_degree {
            class_start.push(classes.len());
            let monomials = monomials_of_degree(d, deg);
            let index: HashMap<Vec<u32>, usize> =
                monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let n = monomials.len();
            let mut rows = Vec::new();
            for (gd, terms) in &gens {
                if *gd > deg {
                    continue;
                }
                for m in monomials_of_degree(d, deg - gd) {
                    let mut row = vec![field.zero(); n];
                    for (e, c) in terms {
                        let j = index[&add(&m, e)];
                        row[j] = field.add(&row[j], c);
                    }
                    rows.push(row);
                }
            }
            let h = Rref::new(field.clone(), rows, n);
            if deg == 0 && h.rank() > 0 {
                return Err(Error::UnitIdeal);
            }
            let free = h.free_columns();
            let mut free_pos = vec![usize::MAX; n];
            for (k, &c) in free.iter().enumerate() {
                free_pos[c] = k;
            }
            // residue of a standard monomial is its unit vector; a pivot
            // monomial reduces to minus the free part of its pivot row
            let mut residue = Vec::with_capacity(n);
            let pivot_row: HashMap<usize, usize> =
                h.pivots().iter().enumerate().map(|(r, &c)| (c, r)).collect();
            for j in 0..n {
                let mut v = vec![field.zero(); free.len()];
                match pivot_row.get(&j) {
                    None => v[free_pos[j]] = field.one(),
                    Some(&r) => {
                        for (k, &c) in free.iter().enumerate() {
                            v[k] = field.neg(&h.rows()[r][c]);
                        }
                    }
                }
                residue.push(v);
            }
            let mut groups: Vec<(Vec<F::Elem>, Vec<usize>)> = Vec::new();
            let mut group_of: HashMap<Vec<F::Elem>, usize> = HashMap::new();
            for (j, v) in residue.into_iter().enumerate() {
                if v.iter().all(|x| field.is_zero(x)) {
                    continue;
                }
                match group_of.get(&v) {
                    Some(&g) => groups[g].1.push(j),
                    None => {
                        group_of.insert(v.clone(), groups.len());
                        groups.push((v, vec![j]));
                    }
                }
            }
            // monomials are lex ascending, so each group's first member is
            // its rep and groups come out sorted by rep
            let mut class_of = vec![None; n];
            let mut residues = Vec::with_capacity(groups.len());
            for (v, members) in groups {
                let id = classes.len();
                for &j in &members {
                    class_of[j] = Some(id);
                }
                classes.push(MonomialClass {
                    degree: deg,
                    rep: monomials[members[0]].clone(),
                    members: members.iter().map(|&j| monomials[j].clone()).collect(),
                });
                residues.push(v);
            }
            degrees.push(Degree {
                monomials,
                index,
                h,
                class_of,
                residues,
            });
        }
        class_start.push(classes.len());
        let poset = Self::make_poset(d, &degrees, &classes)?;
        Ok(RingModel {
            spec: spec.clone(),
            field,
            degrees,
            classes,
            class_start,
            poset,
        })
    }

    fn make_poset(d: usize, degrees: &[Degree<F>], classes: &[MonomialClass]) -> Result<RankedPoset> {
        let mut covers = Vec::new();
        for (id, c) in classes.iter().enumerate() {
            let Some(next) = degrees.get(c.degree + 1) else {
                continue;
            };
            for j in 0..d {
                let mut e = c.rep.clone();
                e[j] += 1;
                if let Some(t) = next.class_of[next.index[&e]] {
                    covers.push((id, t));
                }
            }
        }
        let ranks = classes.iter().map(|c| c.degree).collect();
        let labels: Vec<Label> = classes.iter().map(|c| c.rep.clone()).collect();
        RankedPoset::from_covers(ranks, labels, covers)
    }

    pub fn spec(&self) -> &QuotientRingSpec {
        &self.spec
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.spec.d
    }

    pub fn max_degree(&self) -> usize {
        self.spec.max_degree
    }

    pub fn classes(&self) -> &[MonomialClass] {
        &self.classes
    }

    pub fn class(&self, c: ClassId) -> &MonomialClass {
        &self.classes[c]
    }

    /// Class IDs of one degree, ascending (rep lex order).
    pub fn classes_of_degree(&self, deg: usize) -> std::ops::Range<ClassId> {
        if deg > self.spec.max_degree {
            return 0..0;
        }
        self.class_start[deg]..self.class_start[deg + 1]
    }

    /// `Hilb_S(i)` for `i <= D`.
    pub fn hilb(&self, deg: usize) -> usize {
        let dg = &self.degrees[deg];
        dg.monomials.len() - dg.h.rank()
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.spec.max_degree).map(|i| self.hilb(i)).collect()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        (0..=self.spec.max_degree)
            .map(|i| self.classes_of_degree(i).len())
            .collect()
    }

    pub fn monomials(&self, deg: usize) -> &[Vec<u32>] {
        &self.degrees[deg].monomials
    }

    /// `dim H_i`.
    pub fn h_rank(&self, deg: usize) -> usize {
        self.degrees[deg].h.rank()
    }

    /// Class of a monomial of degree at most `D`; `None` if it vanishes.
    pub fn class_of_monomial(&self, exp: &[u32]) -> Result<Option<ClassId>> {
        if exp.len() != self.spec.d {
            return arg(format!("{exp:?} is not a monomial in {} variables", self.spec.d));
        }
        let deg: usize = exp.iter().map(|&v| v as usize).sum();
        let Some(dg) = self.degrees.get(deg) else {
            return arg(format!("degree {deg} exceeds the truncation {}", self.spec.max_degree));
        };
        Ok(dg.class_of[dg.index[exp]])
    }

    /// Product of two classes through their representatives.
    pub fn multiply(&self, a: ClassId, b: ClassId) -> Result<Option<ClassId>> {
        self.class_of_monomial(&add(&self.classes[a].rep, &self.classes[b].rep))
    }

    pub fn multiply_var(&self, c: ClassId, j: usize) -> Option<ClassId> {
        let mut e = self.classes[c].rep.clone();
        e[j] += 1;
        self.class_of_monomial(&e).ok().flatten()
    }

    /// Residue of a class in the standard-monomial basis of `S_i`.
    pub fn residue(&self, c: ClassId) -> &[F::Elem] {
        let deg = self.classes[c].degree;
        &self.degrees[deg].residues[c - self.class_start[deg]]
    }

    /// Residue of a homogeneous polynomial with coefficients in the field.
    pub fn residue_of_terms(&self, deg: usize, terms: &[(Vec<u32>, F::Elem)]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.hilb(deg)];
        for (e, c) in terms {
            if let Ok(Some(cl)) = self.class_of_monomial(e) {
                for (x, r) in v.iter_mut().zip(self.residue(cl)) {
                    *x = f.add(x, &f.mul(c, r));
                }
            }
        }
        v
    }

    /// Residue of a homogeneous polynomial given with rational coefficients.
    pub fn residue_of(&self, p: &Polynomial) -> Result<(usize, Vec<F::Elem>)> {
        let Some(deg) = p.degree() else {
            return arg("polynomial is zero or not homogeneous");
        };
        if p.num_vars() != Some(self.spec.d) {
            return arg(format!("polynomial is not in {} variables", self.spec.d));
        }
        if deg > self.spec.max_degree {
            return arg(format!("degree {deg} exceeds the truncation {}", self.spec.max_degree));
        }
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            terms.push((e.clone(), self.field.from_rational(c)?));
        }
        Ok((deg, self.residue_of_terms(deg, &terms)))
    }

    /// The poset of monomials: classes ranked by degree, covered via
    /// multiplication by a variable, labelled by representatives.
    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    /// Rank of a set of class residues of one degree.
    pub fn span_rank(&self, deg: usize, classes: &[ClassId]) -> usize {
        let rows = classes.iter().map(|&c| self.residue(c).to_vec()).collect();
        crate::linalg::rank(&self.field, rows, self.hilb(deg))
    }

    /// Level linear independence: class count equals `Hilb_S(i)` for all
    /// `i <= D`. Returns the first failing degree with both numbers.
    pub fn level_linear_independence(&self) -> LliReport {
        for deg in 0..=self.spec.max_degree {
            let classes = self.classes_of_degree(deg).len();
            let dim = self.hilb(deg);
            if classes != dim {
                return LliReport {
                    holds: false,
                    failure: Some(LliFailure {
                        degree: deg,
                        classes,
                        dimension: dim,
                    }),
                };
            }
        }
        LliReport {
            holds: true,
            failure: None,
        }
    }

    pub fn is_level_linearly_independent(&self) -> bool {
        self.level_linear_independence().holds
    }

    /// Checks the monomial-order condition for every class pair of equal
    /// degree and every variable; longer multipliers follow by induction
    /// since every nonzero product passes through nonzero partial products.
    pub fn is_monomial_order(&self, o: &OrderTable) -> Result<MonomialOrderReport> {
        if o.len() != self.classes.len() {
            return arg(format!(
                "order has {} elements, ring has {} classes",
                o.len(),
                self.classes.len()
            ));
        }
        for deg in 0..self.spec.max_degree {
            let mut level: Vec<ClassId> = self.classes_of_degree(deg).collect();
            level.sort_by_key(|&c| o.position(c));
            for j in 0..self.spec.d {
                let mut prev: Option<(ClassId, ClassId)> = None;
                for &c in &level {
                    let Some(img) = self.multiply_var(c, j) else {
                        continue;
                    };
                    if let Some((pc, pimg)) = prev {
                        if o.position(img) <= o.position(pimg) {
                            let mut m = vec![0; self.spec.d];
                            m[j] = 1;
                            return Ok(MonomialOrderReport {
                                holds: false,
                                counterexample: Some(MonomialOrderCounterexample {
                                    smaller: pc,
                                    larger: c,
                                    multiplier: self.class_of_monomial(&m)?.expect("variable survives"),
                                    smaller_product: pimg,
                                    larger_product: img,
                                }),
                            });
                        }
                    }
                    prev = Some((c, img));
                }
            }
        }
        Ok(MonomialOrderReport {
            holds: true,
            counterexample: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LliFailure {
    pub degree: usize,
    pub classes: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LliReport {
    pub holds: bool,
    pub failure: Option<LliFailure>,
}

/// `smaller < larger` but `multiplier * smaller >= multiplier * larger`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrderCounterexample {
    pub smaller: ClassId,
    pub larger: ClassId,
    pub multiplier: ClassId,
    pub smaller_product: ClassId,
    pub larger_product: ClassId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrderReport {
    pub holds: bool,
    pub counterexample: Option<MonomialOrderCounterexample>,
}

pub fn build_ring<F: Field>(spec: &QuotientRingSpec, field: F) -> Result<RingModel<F>> {
    RingModel::build(spec, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};
    use crate::order::{OrderTable, RankOverride, Recipe};
    use crate::poset::{multiset_lattice, LatticeShape};

    fn ring(d: usize, gens: Vec<Polynomial>, max_degree: usize) -> RingModel<Rationals> {
        RingModel::build(&QuotientRingSpec::new(d, gens, max_degree), Rationals).unwrap()
    }

    fn p(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(terms)
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn squares_give_boolean_lattice() {
        let r = ring(3, QuotientRingSpec::pow_generators(&[2, 2, 2]), 3);
        assert_eq!(r.hilbert_function(), vec![1, 3, 3, 1]);
        let m = multiset_lattice(&LatticeShape::finite(&[2, 2, 2])).unwrap();
        assert!(r.poset().isomorphism_by_labels(&m, |l| l.to_vec()).is_some());
        assert!(r.is_level_linearly_independent());
    }

    #[test]
    fn binomial_merges_squares() {
        let gens = vec![
            p(&[(&[3, 0], 1)]),
            p(&[(&[0, 3], 1)]),
            p(&[(&[1, 1], 1)]),
            p(&[(&[2, 0], 1), (&[0, 2], -1)]),
        ];
        let r = ring(2, gens, 2);
        let two: Vec<_> = r.classes_of_degree(2).collect();
        assert_eq!(two.len(), 1);
        assert_eq!(r.class(two[0]).members, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(r.class(two[0]).rep, vec![0, 2]);
    }

    #[test]
    fn not_lli_example() {
        let gens = vec![p(&[(&[2, 0, 0], 1), (&[1, 1, 0], 1), (&[1, 0, 1], -1)])];
        let r = ring(3, gens, 2);
        assert_eq!(r.classes_of_degree(2).len(), 6);
        assert_eq!(r.hilb(2), 5);
        let rep = r.level_linear_independence();
        assert_eq!(
            rep.failure,
            Some(LliFailure {
                degree: 2,
                classes: 6,
                dimension: 5
            })
        );
    }

    #[test]
    fn unit_ideal_rejected() {
        let spec = QuotientRingSpec::new(1, vec![p(&[(&[0], 1)])], 2);
        assert!(matches!(RingModel::build(&spec, Rationals), Err(Error::UnitIdeal)));
    }

    #[test]
    fn prime_and_rational_agree() {
        let gens = vec![p(&[(&[2, 0, 0], 1), (&[1, 1, 0], 1), (&[1, 0, 1], -1)])];
        let spec = QuotientRingSpec::new(3, gens, 3);
        let a = RingModel::build(&spec, Rationals).unwrap();
        let b = RingModel::build(&spec, PrimeField::new(DEFAULT_PRIME).unwrap()).unwrap();
        assert_eq!(a.classes(), b.classes());
        assert_eq!(a.hilbert_function(), b.hilbert_function());
    }

    #[test]
    fn mixed_order_is_not_monomial() {
        let r = ring(2, vec![], 2);
        let mixed = Recipe::ByRank {
            default: Box::new(Recipe::Colex),
            overrides: vec![RankOverride {
                rank: 1,
                order: Recipe::Lex,
            }],
        };
        let o = OrderTable::build(r.poset(), mixed).unwrap();
        let rep = r.is_monomial_order(&o).unwrap();
        assert!(!rep.holds);
        let c = rep.counterexample.unwrap();
        assert_eq!(r.class(c.smaller).rep, vec![0, 1]);
        assert_eq!(r.class(c.larger).rep, vec![1, 0]);
        let lex = OrderTable::build(r.poset(), Recipe::Lex).unwrap();
        assert!(r.is_monomial_order(&lex).unwrap().holds);
    }
}
