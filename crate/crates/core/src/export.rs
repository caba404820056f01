//! Hasse-graph export as DOT or JSON, and JSON import.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::order::OrderTable;
use crate::poset::{ElementId, Label, RankedPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub ranks: Vec<usize>,
    pub covers: Vec<[ElementId; 2]>,
    pub labels: Vec<Label>,
}

impl PosetJson {
    pub fn from_poset(p: &RankedPoset) -> PosetJson {
        let p = p.canonicalize();
        PosetJson {
            n: p.len(),
            ranks: p.ranks().to_vec(),
            covers: p.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: p.labels().to_vec(),
        }
    }

    pub fn into_poset(self) -> Result<RankedPoset> {
        if self.ranks.len() != self.n {
            return crate::error::arg(format!("n = {} but {} ranks", self.n, self.ranks.len()));
        }
        let labels = if self.labels.is_empty() {
            (0..self.n as u32).map(|i| vec![i]).collect()
        } else {
            self.labels
        };
        RankedPoset::from_covers(self.ranks, labels, self.covers.into_iter().map(|[a, b]| (a, b)))
    }
}

pub fn export_hasse(p: &RankedPoset, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &PosetJson::from_poset(p))?;
            out.write_all(b"\n")?;
        }
        Format::Dot => write_dot(&p.canonicalize(), out)?,
    }
    Ok(())
}

pub fn to_json_string(p: &RankedPoset) -> String {
    serde_json::to_string(&PosetJson::from_poset(p)).expect("poset JSON serializes")
}

pub fn parse_json(s: &str) -> Result<RankedPoset> {
    let j: PosetJson = serde_json::from_str(s)?;
    j.into_poset()
}

fn label_text(l: &[u32]) -> String {
    l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn write_dot(p: &RankedPoset, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "digraph poset {{")?;
    writeln!(out, "  rankdir=BT;")?;
    for r in 0..=p.max_rank() {
        writeln!(out, "  subgraph rank_{r} {{")?;
        writeln!(out, "    rank=same;")?;
        for &x in p.level(r) {
            writeln!(out, "    v{x} [label=\"{}\"];", label_text(p.label(x)))?;
        }
        writeln!(out, "  }}")?;
    }
    for (a, b) in p.covers() {
        writeln!(out, "  v{a} -> v{b};")?;
    }
    writeln!(out, "}}")
}

/// One line per element in order: position, element ID, rank, label.
pub fn export_order(p: &RankedPoset, o: &OrderTable, out: &mut dyn Write) -> Result<()> {
    for (i, &x) in o.sequence().iter().enumerate() {
        writeln!(out, "{i}\tv{x}\t{}\t{}", p.rank(x), label_text(p.label(x)))?;
    }
    Ok(())
}

/// Cube-diagram coordinates as CSV: each element is the unit cube whose
/// lower corner is its label, in the grid the labels live in. The optional
/// order adds each element's position.
pub fn export_cube(p: &RankedPoset, o: Option<&OrderTable>, out: &mut dyn Write) -> Result<()> {
    let dim = p.grid().len();
    let mut header = vec!["id".to_string(), "rank".to_string()];
    header.extend((0..dim).map(|i| format!("c{i}")));
    if o.is_some() {
        header.push("position".into());
    }
    writeln!(out, "{}", header.join(","))?;
    let q = p.canonicalize();
    let index = p.label_index();
    for x in 0..q.len() {
        let mut row = vec![x.to_string(), q.rank(x).to_string()];
        row.extend(q.label(x).iter().map(|v| v.to_string()));
        if let Some(o) = o {
            row.push(o.position(index[q.label(x).as_slice()]).to_string());
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{multiset_lattice, LatticeShape};

    #[test]
    fn cube_rows() {
        let p = multiset_lattice(&LatticeShape::finite(&[2, 3])).unwrap();
        let o = crate::order::lex_order(&p).unwrap();
        let mut buf = Vec::new();
        export_cube(&p, Some(&o), &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "id,rank,c0,c1,position");
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[6], "5,3,1,2,5");
    }

    fn dot(p: &RankedPoset) -> String {
        let mut buf = Vec::new();
        export_hasse(p, Format::Dot, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn square_dot() {
        let p = multiset_lattice(&LatticeShape::finite(&[2, 2])).unwrap();
        let s = dot(&p);
        assert_eq!(s.matches("->").count(), 4);
        assert_eq!(s.matches("[label=").count(), 4);
        assert_eq!(s, dot(&p));
    }

    #[test]
    fn json_round_trip() {
        let p = multiset_lattice(&LatticeShape::finite(&[3, 2, 2])).unwrap();
        let mut buf = Vec::new();
        export_hasse(&p, Format::Json, &mut buf).unwrap();
        assert_eq!(parse_json(std::str::from_utf8(&buf).unwrap()).unwrap(), p);
    }

    #[test]
    fn json_without_labels() {
        let p = parse_json(r#"{"n":3,"ranks":[0,0,1],"covers":[[0,2],[1,2]],"labels":[]}"#)
            .unwrap();
        assert_eq!(p.level_sizes(), vec![2, 1]);
        assert!(parse_json(r#"{"n":2,"ranks":[0,2],"covers":[[0,1]],"labels":[]}"#).is_err());
    }
}
