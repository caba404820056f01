use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{config, Error, Result};
use crate::field::{format_rational, parse_rational, FieldSpec};

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

impl Polynomial {
    pub fn new() -> Self {
        Polynomial::default()
    }

    pub fn monomial(exp: Vec<u32>) -> Self {
        Polynomial::from_terms([(exp, BigRational::one())])
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Polynomial::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience for integer coefficients.
    pub fn from_int_terms(terms: &[(&[u32], i64)]) -> Self {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from_integer((*c).into()))),
        )
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coef: BigRational) {
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if !coef.is_zero() {
                    v.insert(coef);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.terms.keys().next().map(|e| e.len())
    }

    /// Common degree of all terms, or `None` if inhomogeneous or zero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&v| v as usize).sum::<usize>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Renames variables: variable `i` becomes `offset + i` in `d` variables.
    pub fn shifted(&self, offset: usize, d: usize) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(e, c)| {
            let mut v = vec![0; d];
            v[offset..offset + e.len()].copy_from_slice(e);
            (v, c.clone())
        }))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coef: format_rational(c),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c = parse_rational(&t.coef).map_err(serde::de::Error::custom)?;
            out.push((t.exp, c));
        }
        Ok(Polynomial::from_terms(out))
    }
}

fn field_to_str<S: Serializer>(f: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        FieldSpec::Rationals => s.serialize_str("q"),
        FieldSpec::Prime { p } => s.serialize_str(&format!("p:{p}")),
    }
}

fn field_from_str<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<FieldSpec, D::Error> {
    let s = String::deserialize(d)?;
    FieldSpec::parse(&s).map_err(serde::de::Error::custom)
}

/// `K[x_1..x_d] / (generators)`, studied up to degree `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRingSpec {
    pub d: usize,
    #[serde(
        default,
        serialize_with = "field_to_str",
        deserialize_with = "field_from_str"
    )]
    pub field: FieldSpec,
    pub generators: Vec<Polynomial>,
    #[serde(rename = "D")]
    pub max_degree: usize,
    /// Variable counts of tensor factors, when the ring was built as a
    /// tensor product. Empty means a single factor.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<usize>,
}

impl QuotientRingSpec {
    pub fn new(d: usize, generators: Vec<Polynomial>, max_degree: usize) -> Self {
        QuotientRingSpec {
            d,
            field: FieldSpec::default(),
            generators,
            max_degree,
            factors: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: QuotientRingSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ring spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return config("a ring needs at least one variable");
        }
        self.field.validate()?;
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_zero() {
                return config(format!("generator {i} is zero"));
            }
            if g.num_vars() != Some(self.d) || g.terms().any(|(e, _)| e.len() != self.d) {
                return config(format!("generator {i} does not have {} variables", self.d));
            }
            match g.degree() {
                None => return config(format!("generator {i} is not homogeneous")),
                Some(0) => return Err(Error::UnitIdeal),
                Some(_) => {}
            }
        }
        if !self.factors.is_empty() && self.factors.iter().sum::<usize>() != self.d {
            return config("factor sizes do not add up to the variable count");
        }
        Ok(())
    }

    /// Variable blocks of the tensor factors.
    pub fn factor_sizes(&self) -> Vec<usize> {
        if self.factors.is_empty() {
            vec![self.d]
        } else {
            self.factors.clone()
        }
    }

    /// The combined quotient `K[x, y, ...] / (H_1 + H_2 + ...)` representing
    /// the tensor product of the parts; degrees add.
    pub fn tensor(parts: &[QuotientRingSpec]) -> Result<QuotientRingSpec> {
        let Some(first) = parts.first() else {
            return config("tensor product of no rings");
        };
        if parts.iter().any(|p| p.field != first.field) {
            return config("tensor factors use different fields");
        }
        let d: usize = parts.iter().map(|p| p.d).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for p in parts {
            gens.extend(p.generators.iter().map(|g| g.shifted(offset, d)));
            offset += p.d;
        }
        Ok(QuotientRingSpec {
            d,
            field: first.field,
            generators: gens,
            max_degree: parts.iter().map(|p| p.max_degree).sum(),
            factors: parts.iter().flat_map(|p| p.factor_sizes()).collect(),
        })
    }

    pub fn power(&self, n: usize) -> Result<QuotientRingSpec> {
        QuotientRingSpec::tensor(&vec![self.clone(); n])
    }

    /// `(x_1^{p_1}, ..., x_d^{p_d})`.
    pub fn pow_generators(caps: &[u32]) -> Vec<Polynomial> {
        let d = caps.len();
        (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = caps[i];
                Polynomial::monomial(e)
            })
            .collect()
    }

    /// All products `x_i x_j` with `i < j`.
    pub fn distinct_pair_generators(d: usize) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut e = vec![0; d];
                e[i] = 1;
                e[j] = 1;
                out.push(Polynomial::monomial(e));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = r#"{"d":2,"field":"q","generators":[[{"exp":[2,0],"coef":"1"},{"exp":[0,2],"coef":"-1/2"}]],"D":3}"#;
        let spec = QuotientRingSpec::from_json(s).unwrap();
        assert_eq!(spec.field, FieldSpec::Rationals);
        assert_eq!(spec.generators[0].degree(), Some(2));
        assert_eq!(QuotientRingSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn rejects_bad_generators() {
        let inhom = r#"{"d":2,"generators":[[{"exp":[2,0],"coef":"1"},{"exp":[0,1],"coef":"1"}]],"D":3}"#;
        assert!(matches!(QuotientRingSpec::from_json(inhom), Err(Error::Config(_))));
        let unit = r#"{"d":1,"generators":[[{"exp":[0],"coef":"3"}]],"D":3}"#;
        assert!(matches!(QuotientRingSpec::from_json(unit), Err(Error::UnitIdeal)));
    }

    #[test]
    fn like_terms_cancel() {
        let p = Polynomial::from_int_terms(&[(&[1, 0], 2), (&[1, 0], -2)]);
        assert!(p.is_zero());
    }

    #[test]
    fn tensor_shifts_variables() {
        let a = QuotientRingSpec::new(1, QuotientRingSpec::pow_generators(&[2]), 1);
        let t = QuotientRingSpec::tensor(&[a.clone(), a]).unwrap();
        assert_eq!(t.d, 2);
        assert_eq!(t.max_degree, 2);
        assert_eq!(t.factors, vec![1, 1]);
        assert_eq!(t.generators[1], Polynomial::monomial(vec![0, 2]));
    }
}
