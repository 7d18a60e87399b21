//! Property AI over all abelian groups of bounded order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_prime, make_group, GroupSpec};
use crate::ideal::{abelian_ai_criterion, property_ai};

pub const MAX_ATLAS_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub order: usize,
    pub label: String,
    /// Prime-power orders of the cyclic factors.
    pub factors: Vec<usize>,
    /// Verdict of the coset-span test on the minimal subgroups.
    pub ai_span: bool,
    /// At most one subgroup of order `p` for each prime `p`.
    pub ai_criterion: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub max_order: usize,
    pub rows: Vec<AtlasRow>,
    pub disagreements: usize,
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn prime_factorization(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    out
}

/// Isomorphism types of abelian groups of order `n`, each as its list of
/// prime-power cyclic factors (primes ascending, powers descending).
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    let mut types = vec![Vec::new()];
    for (p, e) in prime_factorization(n) {
        debug_assert!(is_prime(p));
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                let mut t = t.clone();
                t.extend(part.iter().map(|&k| p.pow(k as u32)));
                next.push(t);
            }
        }
        types = next;
    }
    types
}

fn spec_for(factors: &[usize]) -> GroupSpec {
    match factors {
        [] => GroupSpec::Cyclic { n: 1 },
        [n] => GroupSpec::Cyclic { n: *n },
        _ => GroupSpec::Product {
            factors: factors.iter().map(|&n| GroupSpec::Cyclic { n }).collect(),
        },
    }
}

fn row(order: usize, factors: Vec<usize>) -> Result<AtlasRow> {
    let spec = spec_for(&factors);
    let group = make_group(&spec, order)?;
    let ai_span = property_ai(&group)?
        .ai_verdict
        .ok_or_else(|| Error::InternalInconsistency("missing AI verdict".into()))?;
    let ai_criterion = abelian_ai_criterion(&group)?;
    Ok(AtlasRow {
        order,
        label: spec.label(),
        factors,
        ai_span,
        ai_criterion,
        agree: ai_span == ai_criterion,
    })
}

/// One row per abelian group of order `1..=max_order`, sorted by order and
/// then by decreasing largest factor. Rows are computed in parallel.
pub fn abelian_atlas(max_order: usize) -> Result<AtlasReport> {
    if max_order == 0 || max_order > MAX_ATLAS_ORDER {
        return Err(Error::InvalidParameter(format!(
            "max order must lie in 1..={MAX_ATLAS_ORDER}"
        )));
    }
    let cases: Vec<(usize, Vec<usize>)> = (1..=max_order)
        .flat_map(|n| abelian_types(n).into_iter().map(move |t| (n, t)))
        .collect();
    let mut rows = cases
        .into_par_iter()
        .map(|(n, t)| row(n, t))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.order);
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    Ok(AtlasReport {
        max_order,
        rows,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_counts() {
        assert_eq!(abelian_types(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_types(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(abelian_types(12), vec![vec![4, 3], vec![2, 2, 3]]);
        assert_eq!(abelian_types(64).len(), 11);
        assert_eq!(abelian_types(36).len(), 4);
    }

    #[test]
    fn small_atlas() {
        let r = abelian_atlas(4).unwrap();
        let summary: Vec<(&str, bool)> = r.rows.iter().map(|r| (r.label.as_str(), r.ai_span)).collect();
        assert_eq!(
            summary,
            vec![("Z1", true), ("Z2", true), ("Z3", true), ("Z4", true), ("Z2xZ2", false)]
        );
        assert_eq!(r.disagreements, 0);
        let r = abelian_atlas(1).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.rows[0].ai_span);
    }

    #[test]
    fn order_eight_failures() {
        let r = abelian_atlas(8).unwrap();
        let failing: Vec<&str> = r.rows.iter().filter(|r| !r.ai_span).map(|r| r.label.as_str()).collect();
        assert_eq!(failing, vec!["Z2xZ2", "Z4xZ2", "Z2xZ2xZ2"]);
        assert!(abelian_atlas(65).is_err());
        assert!(abelian_atlas(0).is_err());
    }
}
