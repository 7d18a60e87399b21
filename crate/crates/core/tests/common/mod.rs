#![allow(dead_code)]

use std::collections::BTreeSet;

use coset_ideal::group::{subgroup_conjugacy_classes, DEFAULT_ENUMERATION_CAP};
use coset_ideal::{FiniteGroup, Rational, SubgroupFamily};
use num::Zero;

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).unwrap()
}

/// The test catalog of small groups.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=12).map(|n| (format!("Z{n}"), cyclic(n))).collect();
    out.push(("Z2xZ2".into(), FiniteGroup::direct_product(&[cyclic(2), cyclic(2)])));
    out.push(("Z2xZ2xZ2".into(), FiniteGroup::direct_product(&[cyclic(2), cyclic(2), cyclic(2)])));
    out.push(("Z2xZ4".into(), FiniteGroup::direct_product(&[cyclic(2), cyclic(4)])));
    out.push(("S3".into(), FiniteGroup::symmetric(3).unwrap()));
    out.push(("S4".into(), FiniteGroup::symmetric(4).unwrap()));
    out.push(("D4".into(), FiniteGroup::dihedral(4).unwrap()));
    out.push(("D5".into(), FiniteGroup::dihedral(5).unwrap()));
    out.push(("Q8".into(), FiniteGroup::quaternion8()));
    out
}

/// Every catalog group paired with every single conjugacy class of subgroups.
pub fn catalog_cases() -> Vec<(String, FiniteGroup, SubgroupFamily)> {
    let mut out = Vec::new();
    for (name, g) in catalog() {
        for (i, family) in subgroup_conjugacy_classes(&g, DEFAULT_ENUMERATION_CAP).unwrap().into_iter().enumerate() {
            out.push((format!("{name}/class{i}"), g.clone(), family));
        }
    }
    out
}

/// Left cosets `gX` of every member, recomputed by brute force.
pub fn brute_cosets(g: &FiniteGroup, family: &SubgroupFamily) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for x in family.members() {
        for a in 0..g.order() {
            out.insert(x.elements().iter().map(|&h| g.mul(a, h)).collect());
        }
    }
    out
}

/// All coset sums of `v` vanish.
pub fn satisfies_coset_constraints(g: &FiniteGroup, family: &SubgroupFamily, v: &[Rational]) -> bool {
    brute_cosets(g, family)
        .iter()
        .all(|c| c.iter().fold(Rational::zero(), |acc, &h| acc + &v[h]).is_zero())
}
