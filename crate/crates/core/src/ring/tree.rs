use serde::{Deserialize, Serialize};

use super::RingModel;
use crate::field::Field;

/// Live variables with the number of their nonzero positive powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLegs {
    /// `(variable index, leg length)`, 0-based variables in increasing order.
    pub legs: Vec<(usize, u32)>,
}

/// Recognizes rings whose Hasse graph is a tree and returns the leg of each
/// live variable. Returns `None` when the Hasse graph is not a tree or when
/// a certifying condition fails (which a tree forces, so that indicates the
/// truncation cut the poset short).
pub fn recognize_tree_ring<F: Field>(r: &RingModel<F>) -> Option<TreeLegs> {
    let p = r.poset();
    if !p.hasse_is_tree() {
        return None;
    }
    let d = r.num_vars();
    let var_class = |j: usize| {
        let mut e = vec![0; d];
        e[j] = 1;
        r.class_of_monomial(&e).ok().flatten()
    };
    // first variable of each distinct nonzero class
    let mut live: Vec<(usize, usize)> = Vec::new();
    for j in 0..d {
        if let Some(c) = var_class(j) {
            if live.iter().all(|&(_, lc)| lc != c) {
                live.push((j, c));
            }
        }
    }
    for (a, &(i, _)) in live.iter().enumerate() {
        for &(j, _) in &live[a + 1..] {
            let mut e = vec![0; d];
            e[i] = 1;
            e[j] = 1;
            if r.max_degree() >= 2 && r.class_of_monomial(&e).ok().flatten().is_some() {
                return None;
            }
        }
    }
    let mut seen = vec![None; r.classes().len()];
    let mut legs = Vec::new();
    for &(j, _) in &live {
        let mut len = 0u32;
        let mut e = vec![0; d];
        for pow in 1..=r.max_degree() {
            e[j] = pow as u32;
            match r.class_of_monomial(&e).ok().flatten() {
                Some(c) => {
                    if seen[c].is_some() {
                        return None;
                    }
                    seen[c] = Some(j);
                    len += 1;
                }
                None => break,
            }
        }
        legs.push((j, len));
    }
    // every class other than 1 is a power of a live variable
    if seen.iter().skip(1).any(|s| s.is_none()) {
        return None;
    }
    Some(TreeLegs { legs })
}
