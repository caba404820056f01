//! Acceptance suite. Prints one PASS/FAIL line per criterion with its time
//! against a fixed bound; exits nonzero when any criterion fails. Arithmetic
//! is exact, so every numeric comparison is equality.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Result};
use macaulay_core::constructions::Family;
use macaulay_core::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use macaulay_core::hilbert::{
    find_monomial_order, hilbert_function, initial_monomial_data, initial_segment_space,
    is_macaulay_ring, poset_witness_to_ring, random_ideals, ring_witness_to_poset, Ideal,
    IdealSpec, LeveledMonomialBasis, Mode, RingCheckOptions,
};
use macaulay_core::order::{lex_order, OrderTable, RankOverride, Recipe};
use macaulay_core::poset::RankedPoset;
use macaulay_core::ring::{monomials_of_degree, Polynomial, QuotientRingSpec, RingModel};
use macaulay_core::verify::{
    check_dual_lemma, is_macaulay, min_shadow, Direction, VerifyOptions,
};
use serde_json::Value;

/// Integers a ring criterion produced, compared across fields.
type Fingerprint = Vec<i64>;

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit_s: u64, f: impl FnOnce() -> Result<String>) {
        let start = Instant::now();
        let res = f();
        let t = start.elapsed();
        let limit = Duration::from_secs(limit_s);
        let (ok, detail) = match res {
            Ok(d) if t <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time bound")),
            Err(e) => (false, format!("{e:#}")),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} {id:>2} {name} [{:.3}s / {limit_s}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64()
        );
    }
}

fn prime() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn family(s: &str) -> Family {
    s.parse().unwrap()
}

fn cli(args: &[&str]) -> Result<(i32, Value)> {
    let out = Command::new(env!("CARGO_BIN_EXE_macaulay"))
        .args(args)
        .arg("--json")
        .output()?;
    let code = out.status.code().ok_or_else(|| anyhow!("killed"))?;
    let v: Value = serde_json::from_slice(&out.stdout)
        .map_err(|e| anyhow!("{e}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, v))
}

/// Subsets the verifier must visit to be exhaustive: every subset of every
/// level above the bottom.
fn all_subsets(p: &RankedPoset) -> u64 {
    (1..=p.max_rank()).map(|i| 1u64 << p.level(i).len()).sum()
}

fn check_lex_cli(lengths: &str, expect_holds: bool) -> Result<Value> {
    let name = format!("multiset:{lengths}");
    let (code, v) = cli(&["check-poset", "--poset", &name, "--order", "lex"])?;
    let verdict = &v["outcome"]["verdict"];
    ensure!(verdict["holds"] == expect_holds, "{name}: holds = {}", verdict["holds"]);
    ensure!(code == if expect_holds { 0 } else { 1 }, "{name}: exit {code}");
    if expect_holds {
        let p = family(&name).poset()?;
        let seen = verdict["stats"]["subsets_examined"].as_u64().unwrap_or(0);
        ensure!(seen == all_subsets(&p), "{name}: {seen} subsets, expected {}", all_subsets(&p));
    }
    Ok(v)
}

fn c1() -> Result<String> {
    for l in ["2,2,2,2", "2,2,2"] {
        check_lex_cli(l, true)?;
    }
    Ok("M(2,2,2,2) and M(2,2,2) lex Macaulay, every subset of every level visited".into())
}

fn c2() -> Result<String> {
    for l in ["3,4", "2,3,4", "2,2,5"] {
        check_lex_cli(l, true)?;
    }
    let v = check_lex_cli("4,3", false)?;
    let f = &v["outcome"]["verdict"]["failures"][0];
    ensure!(f["reason"] == "nestedness", "reason {}", f["reason"]);
    ensure!(f["level"] == 3 && f["q"] == 1, "failure at level {} q {}", f["level"], f["q"]);
    // the witness must be a minimizer found by plain enumeration
    let p = family("multiset:4,3").poset()?;
    let (best, _) = min_shadow(&p, 3, 1, Direction::Lower, &VerifyOptions::default())?;
    let shadow = f["witness_shadow"].as_array().map_or(0, |a| a.len());
    let seg = f["segment_shadow"].as_array().map_or(0, |a| a.len());
    ensure!(shadow == best && seg > best, "witness shadow {shadow}, min {best}, segment {seg}");
    Ok(format!(
        "(3,4), (2,3,4), (2,2,5) hold; (4,3) fails: level-3 singleton {} has shadow {shadow} < {seg}",
        f["witness"]
    ))
}

const TEN: &[&str] = &[
    "multiset:3,4",
    "kk:4",
    "cl:2,3,4",
    "star:3,2",
    "be:2,2,2",
    "colored:3,2",
    "be-ring:3,2,2",
    "leck:2+2,1",
    "torus:3,2",
    "diamond:2",
];

fn c3() -> Result<String> {
    let opts = VerifyOptions::default();
    for s in TEN {
        let f = family(s);
        let p = f.poset()?;
        // Leck rings ship without an order; the lemma holds for any order
        let o = match f.default_order_table(&p)? {
            Some(o) => o,
            None => lex_order(&p)?,
        };
        ensure!(check_dual_lemma(&p, &o, &opts)?, "{s}: lower verdicts differ");
        let up = is_macaulay(&p, &o, Direction::Upper)?.holds;
        let dual_up = is_macaulay(&p.dual()?, &o.dual(), Direction::Upper)?.holds;
        let low = is_macaulay(&p, &o, Direction::Lower)?.holds;
        ensure!(up == is_macaulay(&p.dual()?, &o.dual(), Direction::Lower)?.holds, "{s}: upper");
        ensure!(low == dual_up, "{s}: lower vs dual upper");
    }
    Ok(format!("{} constructions, both directions", TEN.len()))
}

fn family_holds(s: &str) -> Result<()> {
    let f = family(s);
    let p = f.poset()?;
    let o = f
        .default_order_table(&p)?
        .ok_or_else(|| anyhow!("{s} has no order"))?;
    let v = is_macaulay(&p, &o, f.direction())?;
    ensure!(v.holds, "{s}: {:?}", v.failures.first());
    Ok(())
}

fn ring_family_holds(s: &str) -> Result<()> {
    let f = family(s);
    let ring = RingModel::build(&f.ring_spec()?, prime())?;
    let labelled = f.label_ring(&ring)?;
    let o = OrderTable::build(&labelled, f.default_order()?.unwrap())?;
    let v = is_macaulay_ring(&ring, &o, Mode::Poset, &RingCheckOptions::default())?;
    ensure!(v.holds, "{s} ring side fails");
    Ok(())
}

fn c4() -> Result<String> {
    for s in ["colored:2,2", "colored:3,2"] {
        family_holds(s)?;
    }
    Ok("colored (2,2) and (3,2) under the block order".into())
}

fn c5() -> Result<String> {
    // Spider(1,2) and Spider(2,2) duals are the rings with l = 3, d = 2, 3
    for s in ["be-ring:3,2,2", "be-ring:3,3,2"] {
        family_holds(s)?;
        ring_family_holds(s)?;
    }
    Ok("Spider(1,2)^2 and Spider(2,2)^2 duals, poset and ring side".into())
}

fn c6() -> Result<String> {
    for s in ["torus:3,1", "torus:3,2"] {
        family_holds(s)?;
        ring_family_holds(s)?;
    }
    for p in 2..=4 {
        let t = family(&format!("torus:{p},1")).poset()?;
        ensure!(t.len() == 2 * p && t.hasse_is_cycle(), "T({p}) is not a {}-cycle", 2 * p);
    }
    Ok("T(3), T(3)^2 hold; T(2..4) Hasse graphs are 2p-cycles".into())
}

fn c7() -> Result<String> {
    for s in ["diamond:1", "diamond:2"] {
        family_holds(s)?;
        ring_family_holds(s)?;
    }
    Ok("diamond^1 and diamond^2".into())
}

/// Both modes on one family ring under its published order; witnesses of
/// each side must fail on the other.
fn modes_agree<F: Field>(name: &str, degree: Option<usize>, field: F) -> Result<Fingerprint> {
    let f = family(name);
    let mut spec = f.ring_spec()?;
    if let Some(d) = degree {
        spec.max_degree = d;
    }
    let ring = RingModel::build(&spec, field)?;
    let o = OrderTable::build(&f.label_ring(&ring)?, f.default_order()?.unwrap())?;
    let opts = RingCheckOptions::default();
    let m = is_macaulay_ring(&ring, &o, Mode::MonomialIdeals, &opts)?;
    let p = is_macaulay_ring(&ring, &o, Mode::Poset, &opts)?;
    ensure!(m.holds == p.holds, "{name}: mode verdicts differ");
    let pv = p.poset_verdict.as_ref().unwrap();
    let mut fp = vec![m.holds as i64, m.ideals_checked as i64];
    if let Some(f) = m.failures.first() {
        let w = ring_witness_to_poset(&ring, &o, f)?;
        ensure!(w.recheck(ring.poset(), &o, Direction::Upper)?, "{name}: ring witness passes poset side");
        fp.extend([f.degree as i64, w.q as i64]);
        fp.extend(f.generators.iter().map(|&c| c as i64));
    }
    if let Some(f) = pv.failures.first() {
        let r = poset_witness_to_ring(&ring, &o, f)
            .ok_or_else(|| anyhow!("{name}: poset witness passes ring side"))?;
        fp.extend([f.level as i64, r.degree as i64]);
        fp.extend(f.witness.iter().map(|&c| c as i64));
    }
    fp.extend(ring.hilbert_function().iter().map(|&h| h as i64));
    Ok(fp)
}

fn c8<F: Field>(field: F) -> Result<Fingerprint> {
    let mut fp = Vec::new();
    // CL(4,3) under lex fails, so witnesses are compared too
    for (name, degree, holds) in [("cl:3,4", Some(5), true), ("colored:2,2", Some(4), true), ("cl:4,3", None, false)] {
        let part = modes_agree(name, degree, field.clone())?;
        ensure!((part[0] == 1) == holds, "{name}: verdict {}", part[0]);
        fp.extend(part);
    }
    Ok(fp)
}

fn mixed_order() -> Recipe {
    Recipe::ByRank {
        default: Box::new(Recipe::Colex),
        overrides: vec![RankOverride {
            rank: 1,
            order: Recipe::Lex,
        }],
    }
}

fn c9<F: Field>(field: F) -> Result<Fingerprint> {
    let ring = RingModel::build(&QuotientRingSpec::new(2, vec![], 2), field)?;
    let o = OrderTable::build(ring.poset(), mixed_order())?;
    ensure!(!ring.is_monomial_order(&o)?.holds, "mixed order accepted as a monomial order");
    let ideal = IdealSpec {
        generators: vec![Polynomial::from_int_terms(&[(&[1, 0], 1), (&[0, 1], 1)])],
    };
    let id = Ideal::generate(&ring, &ideal)?;
    let h = hilbert_function(&ring, &id);
    let basis = LeveledMonomialBasis::greedy(&ring, &o);
    let data = initial_monomial_data(&ring, &id, &o, &basis)?;
    ensure!(h[2] == 2 && data.imi_dims[2] == 3, "Hilb_I(2) = {}, Hilb_IMI(2) = {}", h[2], data.imi_dims[2]);
    Ok(vec![h[2] as i64, data.imv_dims[2] as i64, data.imi_dims[2] as i64])
}

fn c10<F: Field>(field: F) -> Result<Fingerprint> {
    let gens = vec![Polynomial::from_int_terms(&[
        (&[2, 0, 0], 1),
        (&[1, 1, 0], 1),
        (&[1, 0, 1], -1),
    ])];
    let ring = RingModel::build(&QuotientRingSpec::new(3, gens, 2), field)?;
    let lli = ring.level_linear_independence();
    let f = lli.failure.ok_or_else(|| anyhow!("ring is level linearly independent"))?;
    ensure!(
        f.degree == 2 && f.classes == 6 && f.dimension == 5,
        "LLI fails at degree {} with {} classes of dimension {}",
        f.degree,
        f.classes,
        f.dimension
    );
    let ideal = IdealSpec {
        generators: vec![
            Polynomial::monomial(vec![0, 0, 2]),
            Polynomial::monomial(vec![0, 1, 1]),
            Polynomial::monomial(vec![0, 2, 0]),
        ],
    };
    let h = hilbert_function(&ring, &Ideal::generate(&ring, &ideal)?);
    let o = OrderTable::build(ring.poset(), Recipe::Lex)?;
    let seg = initial_segment_space(&ring, &h, &o)?;
    ensure!(h[2] == 3 && seg.dims[2] == 2, "Hilb_I(2) = {}, segment {}", h[2], seg.dims[2]);
    Ok(vec![f.degree as i64, f.classes as i64, f.dimension as i64, h[2] as i64, seg.dims[2] as i64])
}

const P: i64 = DEFAULT_PRIME as i64;

fn inv(a: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i64, P - 2, a);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let k = inv(rows[r][c]);
        rows[r].iter_mut().for_each(|v| *v = *v * k % P);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] - f * rows[r][j]).rem_euclid(P);
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim (I_i + H_i) - dim H_i` in the polynomial ring, degree by degree.
fn hilbert_oracle(spec: &QuotientRingSpec, ideal: &[Polynomial]) -> Vec<usize> {
    let rows_of = |gens: &[Polynomial], deg: usize, index: &HashMap<Vec<u32>, usize>| {
        let mut rows = Vec::new();
        for g in gens {
            let Some(gd) = g.degree().filter(|&gd| gd <= deg) else { continue };
            for m in monomials_of_degree(spec.d, deg - gd) {
                let mut row = vec![0i64; index.len()];
                for (e, c) in g.terms() {
                    let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    let k = index[&prod];
                    row[k] = (row[k] + prime().from_rational(c).unwrap() as i64) % P;
                }
                rows.push(row);
            }
        }
        rows
    };
    (0..=spec.max_degree)
        .map(|i| {
            let index: HashMap<Vec<u32>, usize> = monomials_of_degree(spec.d, i)
                .into_iter()
                .enumerate()
                .map(|(k, m)| (m, k))
                .collect();
            let h = rows_of(&spec.generators, i, &index);
            let mut both = h.clone();
            both.extend(rows_of(ideal, i, &index));
            rank_mod_p(both) - rank_mod_p(h)
        })
        .collect()
}

fn c11_rings() -> Vec<QuotientRingSpec> {
    let mut colored = family("colored:2,2").ring_spec().unwrap();
    colored.max_degree = 4;
    vec![family("cl:3,4").ring_spec().unwrap(), colored, family("be-ring:3,2,2").ring_spec().unwrap()]
}

fn c11<F: Field>(field: F) -> Result<Fingerprint> {
    let mut fp = Vec::new();
    for (k, spec) in c11_rings().iter().enumerate() {
        let ring = RingModel::build(spec, field.clone())?;
        ensure!(ring.is_level_linearly_independent(), "ring {k} is not LLI");
        let recipe = find_monomial_order(&ring, None)?.ok_or_else(|| anyhow!("ring {k}: no monomial order"))?;
        let o = OrderTable::build(ring.poset(), recipe)?;
        ensure!(ring.is_monomial_order(&o)?.holds, "ring {k}: order not monomial");
        let basis = LeveledMonomialBasis::greedy(&ring, &o);
        for ideal in random_ideals(spec.d, spec.max_degree, 20, 11 + k as u64) {
            let id = Ideal::generate(&ring, &ideal)?;
            let h = hilbert_function(&ring, &id);
            let data = initial_monomial_data(&ring, &id, &o, &basis)?;
            ensure!(h == hilbert_oracle(spec, &ideal.generators), "ring {k}: Hilb_I {h:?} vs oracle");
            ensure!(h == data.imv_dims && h == data.imi_dims, "ring {k}: {h:?} {:?} {:?}", data.imv_dims, data.imi_dims);
            fp.extend(h.iter().map(|&v| v as i64));
        }
    }
    Ok(fp)
}

fn main() {
    let mut suite = Suite { failed: 0 };
    suite.run(1, "Kruskal-Katona lex", 1, c1);
    suite.run(2, "Clements-Lindstrom lex", 5, c2);
    suite.run(3, "dual lemma", 10, c3);
    suite.run(4, "Mermin-Murai colored products", 10, c4);
    suite.run(5, "Bezrukov-Elsasser spider duals", 60, c5);
    suite.run(6, "torus", 60, c6);
    suite.run(7, "diamond", 60, c7);

    // prime-field results of criteria 8-11, for the cross-audit
    let mut prime_fp: [Option<Fingerprint>; 4] = Default::default();
    let mut keep = |k: usize, r: Result<Fingerprint>, what: &str| -> Result<String> {
        let fp = r?;
        let s = format!("{what} ({} integers)", fp.len());
        prime_fp[k] = Some(fp);
        Ok(s)
    };
    suite.run(8, "correspondence cross-check", 60, || {
        keep(0, c8(prime()), "CL(3,4), colored(2,2) D=4 agree; CL(4,3) witnesses fail both ways")
    });
    suite.run(9, "mixed order example", 5, || {
        keep(1, c9(prime()), "Hilb_I(2) = 2 < Hilb_IMI(2) = 3, not a monomial order")
    });
    suite.run(10, "non-LLI example", 5, || {
        keep(2, c10(prime()), "LLI fails at degree 2 (6 classes, dim 5); Hilb_I(2) = 3 > 2")
    });
    suite.run(11, "reduction to monomials", 60, || {
        keep(3, c11(prime()), "60 random ideals in 3 rings, Hilb_I = Hilb_IMV = Hilb_IMI = oracle")
    });
    suite.run(12, "field cross-audit", 60, || {
        let q = [c8(Rationals)?, c9(Rationals)?, c10(Rationals)?, c11(Rationals)?];
        for (k, fq) in q.iter().enumerate() {
            match &prime_fp[k] {
                Some(fp) => ensure!(fp == fq, "criterion {} differs between fields", k + 8),
                _ => return Err(anyhow!("criterion {} has no prime-field result", k + 8)),
            }
        }
        Ok("criteria 8-11 identical over Q and GF(32003)".into())
    });

    if suite.failed > 0 {
        println!("{} criteria failed", suite.failed);
        std::process::exit(1);
    }
}
