//! Finite groups given by multiplication tables, their subgroups, conjugation
//! and left cosets.
//!
//! Elements are the indices `0..order` and the identity is always index `0`.
//! Constructors fix a canonical element ordering so that every derived object
//! (subgroups, cosets, families) has a reproducible canonical form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by [`make_group`] unless overridden.
pub const DEFAULT_ORDER_CAP: usize = 5040;
/// Largest group order for which the full subgroup lattice is enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 48;

/// Description of a group to construct.
///
/// Serialized as `{"kind":"cyclic","n":6}`, `{"kind":"product","factors":[..]}`,
/// `{"kind":"symmetric","n":4}`, `{"kind":"dihedral","n":5}`,
/// `{"kind":"quaternion8"}` or `{"kind":"cayley","table":[[..],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Product { factors: Vec<GroupSpec> },
    Symmetric { n: usize },
    Dihedral { n: usize },
    Quaternion8,
    Cayley { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    /// Order of the described group, computed without building it.
    /// Saturates on overflow.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic { n } => *n,
            GroupSpec::Product { factors } => factors
                .iter()
                .fold(1usize, |acc, f| acc.saturating_mul(f.order())),
            GroupSpec::Symmetric { n } => (1..=*n).fold(1usize, |acc, k| acc.saturating_mul(k)),
            GroupSpec::Dihedral { n } => n.saturating_mul(2),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Cayley { table } => table.len(),
        }
    }

    /// Short human-readable name such as `Z2xZ4` or `S3`.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("Z{n}"),
            GroupSpec::Product { factors } if factors.is_empty() => "1".to_string(),
            GroupSpec::Product { factors } => factors
                .iter()
                .map(|f| f.label())
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Dihedral { n } => format!("D{n}"),
            GroupSpec::Quaternion8 => "Q8".to_string(),
            GroupSpec::Cayley { table } => format!("Cayley({})", table.len()),
        }
    }
}

/// Builds the group described by `spec`, refusing orders above `cap`.
pub fn make_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let order = spec.order();
    if order > cap {
        return Err(Error::SizeCapExceeded { order, cap });
    }
    match spec {
        GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
        GroupSpec::Product { factors } => {
            let built = factors
                .iter()
                .map(|f| make_group(f, cap))
                .collect::<Result<Vec<_>>>()?;
            Ok(FiniteGroup::direct_product(&built))
        }
        GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
        GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
        GroupSpec::Quaternion8 => Ok(FiniteGroup::quaternion8()),
        GroupSpec::Cayley { table } => FiniteGroup::from_table(table.clone()),
    }
}

/// A finite group stored as a dense multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish()
    }
}

impl FiniteGroup {
    /// Trusted constructor for tables produced by the canonical constructors.
    fn from_mul(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mul(a, b);
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("canonical constructor produced a table without inverses")
            })
            .collect();
        FiniteGroup {
            order,
            table,
            inverse,
        }
    }

    /// Validates an explicit Cayley table (`table[a][b] = a·b`, identity at 0).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if let Some(row) = table.iter().position(|r| r.len() != order) {
            return Err(Error::InvalidTable(format!("row {row} has the wrong length")));
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            flat.extend_from_slice(row);
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            if let Some(b) = (0..order).find(|&b| flat[a * order + b] == 0) {
                inverse[a] = b;
            }
        }
        let group = FiniteGroup {
            order,
            table: flat,
            inverse,
        };
        group.check_axioms()?;
        Ok(group)
    }

    /// Exhaustively checks the identity, inverse and associativity laws.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidTable(format!(
                    "index 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        for a in 0..n {
            let b = self.inverse[a];
            if b >= n || self.mul(a, b) != 0 || self.mul(b, a) != 0 {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// ℤ/n with elements the residues `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic group needs n >= 1".into()));
        }
        Ok(Self::from_mul(n, |a, b| (a + b) % n))
    }

    /// Direct product in mixed radix, the first factor being the most
    /// significant digit.
    pub fn direct_product(factors: &[FiniteGroup]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|f| f.order).collect();
        let order = sizes.iter().product();
        let digits = |mut x: usize| {
            let mut out = vec![0; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                out[i] = x % s;
                x /= s;
            }
            out
        };
        Self::from_mul(order, |a, b| {
            let (da, db) = (digits(a), digits(b));
            factors
                .iter()
                .zip(da.iter().zip(&db))
                .fold(0, |acc, (f, (&x, &y))| acc * f.order + f.mul(x, y))
        })
    }

    /// Symmetric group on `n` points. Elements are permutations in
    /// lexicographic order; `(a·b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        Ok(Self::from_mul(perms.len(), |a, b| {
            let composed: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
            index[composed.as_slice()]
        }))
    }

    /// Dihedral group of order `2n`: index `k` is the rotation `r^k`, index
    /// `n + k` is the reflection `r^k s`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dihedral group needs n >= 1".into()));
        }
        Ok(Self::from_mul(2 * n, |a, b| {
            let (ra, sa) = (a % n, a / n);
            let (rb, sb) = (b % n, b / n);
            let rot = if sa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
            rot + n * ((sa + sb) % 2)
        }))
    }

    /// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion8() -> Self {
        // unit * unit -> (negate, unit) for units 1, i, j, k
        const UNIT_MUL: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::from_mul(8, |a, b| {
            let (neg, unit) = UNIT_MUL[a / 2][b / 2];
            let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
            2 * unit + sign
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inverse[g])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// A subgroup as its sorted list of element indices.
///
/// Ordered by size first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<usize>);

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Validates that `elements` form a subgroup of `group`.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        for &x in &set {
            group.check_index(x)?;
        }
        let elements: Vec<usize> = set.iter().copied().collect();
        let closed = set.contains(&0)
            && set.iter().all(|&a| {
                set.contains(&group.inv(a)) && set.iter().all(|&b| set.contains(&group.mul(a, b)))
            });
        if closed {
            Ok(Subgroup(elements))
        } else {
            Err(Error::NotASubgroup(elements))
        }
    }

    /// The trivial subgroup `{0}`.
    pub fn trivial() -> Self {
        Subgroup(vec![0])
    }

    /// The whole group.
    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup((0..group.order()).collect())
    }

    fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// `g X g⁻¹`.
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.0.iter().map(|&x| group.conjugate(g, x)).collect();
        elements.sort_unstable();
        Subgroup(elements)
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| self.conjugate_by(group, g) == *self)
    }
}

/// A set of subgroups in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupFamily(BTreeSet<Subgroup>);

impl SubgroupFamily {
    pub fn new(members: impl IntoIterator<Item = Subgroup>) -> Self {
        SubgroupFamily(members.into_iter().collect())
    }

    pub fn members(&self) -> impl Iterator<Item = &Subgroup> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Subgroup) -> bool {
        self.0.contains(x)
    }

    pub fn contains_trivial(&self) -> bool {
        self.0.contains(&Subgroup::trivial())
    }

    pub fn union(&self, other: &SubgroupFamily) -> SubgroupFamily {
        SubgroupFamily(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_conjugation_invariant(&self, group: &FiniteGroup) -> bool {
        self.0.iter().all(|x| {
            (0..group.order()).all(|g| self.0.contains(&x.conjugate_by(group, g)))
        })
    }

    /// Fails with [`Error::NotInvariant`] or [`Error::EmptyFamily`] unless the
    /// family is a valid non-empty invariant family of `group`.
    pub fn ensure_invariant(&self, group: &FiniteGroup) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if !self.is_conjugation_invariant(group) {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }

    pub fn as_lists(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|x| x.0.clone()).collect()
    }
}

impl FromIterator<Subgroup> for SubgroupFamily {
    fn from_iter<I: IntoIterator<Item = Subgroup>>(iter: I) -> Self {
        SubgroupFamily::new(iter)
    }
}

/// A left coset `representative · subgroup`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    pub elements: Vec<usize>,
    /// Smallest element of the coset.
    pub representative: usize,
    pub subgroup: Subgroup,
}

impl Coset {
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(group: &FiniteGroup, gens: &[usize]) -> Result<Subgroup> {
    for &g in gens {
        group.check_index(g)?;
    }
    Ok(closure(group, gens))
}

fn closure(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    Subgroup::from_sorted((0..group.order()).filter(|&x| seen[x]).collect())
}

/// All subgroups, sorted by size then lexicographically.
pub fn enumerate_subgroups(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if group.order() > cap {
        return Err(Error::EnumerationCapExceeded {
            order: group.order(),
            cap,
        });
    }
    let cyclic: BTreeSet<Subgroup> = (0..group.order()).map(|a| closure(group, &[a])).collect();
    // every subgroup is a join of cyclic subgroups
    let mut found = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let mut gens = h.0.clone();
            gens.extend_from_slice(&c.0);
            let joined = closure(group, &gens);
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// The cyclic subgroups of prime order.
pub fn minimal_subgroups(group: &FiniteGroup) -> SubgroupFamily {
    (1..group.order())
        .filter(|&a| is_prime(group.element_order(a)))
        .map(|a| closure(group, &[a]))
        .collect()
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest conjugation-invariant family containing `seeds`.
pub fn conjugation_closure<'a>(
    group: &FiniteGroup,
    seeds: impl IntoIterator<Item = &'a Subgroup>,
) -> SubgroupFamily {
    seeds
        .into_iter()
        .flat_map(|x| (0..group.order()).map(move |g| x.conjugate_by(group, g)))
        .collect()
}

/// The conjugacy classes of subgroups, each as an invariant family, in the
/// order of their smallest member.
pub fn subgroup_conjugacy_classes(group: &FiniteGroup, cap: usize) -> Result<Vec<SubgroupFamily>> {
    let mut assigned = HashSet::new();
    let mut classes = Vec::new();
    for x in enumerate_subgroups(group, cap)? {
        if assigned.contains(&x) {
            continue;
        }
        let class = conjugation_closure(group, [&x]);
        assigned.extend(class.members().cloned());
        classes.push(class);
    }
    Ok(classes)
}

/// Subgroup generated by all members of `family` and their conjugates.
pub fn normal_closure_subgroup(group: &FiniteGroup, family: &SubgroupFamily) -> Subgroup {
    let mut gens = BTreeSet::new();
    for x in family.members() {
        for &a in x.elements() {
            for g in 0..group.order() {
                gens.insert(group.conjugate(g, a));
            }
        }
    }
    closure(group, &gens.into_iter().collect::<Vec<_>>())
}

/// Left cosets of `subgroup`, ordered by representative.
pub fn left_cosets(group: &FiniteGroup, subgroup: &Subgroup) -> Vec<Coset> {
    let mut covered = vec![false; group.order()];
    let mut out = Vec::with_capacity(group.order() / subgroup.len().max(1));
    for g in 0..group.order() {
        if covered[g] {
            continue;
        }
        let mut elements: Vec<usize> = subgroup.elements().iter().map(|&x| group.mul(g, x)).collect();
        elements.sort_unstable();
        for &e in &elements {
            covered[e] = true;
        }
        out.push(Coset {
            representative: elements[0],
            elements,
            subgroup: subgroup.clone(),
        });
    }
    out
}

/// All left cosets `gX` for `X` in the family, deduplicated as sets. Members
/// are visited in canonical order and each member's cosets by representative.
pub fn distinct_cosets(group: &FiniteGroup, family: &SubgroupFamily) -> Vec<Coset> {
    let mut seen = HashSet::new();
    family
        .members()
        .flat_map(|x| left_cosets(group, x))
        .filter(|c| seen.insert(c.elements.clone()))
        .collect()
}

/// A subgroup `Λ` viewed as a group in its own right.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    /// `Λ` with local indices `0..|Λ|`.
    pub group: FiniteGroup,
    /// `embedding[i]` is the ambient index of local element `i` (increasing).
    pub embedding: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(group: &FiniteGroup, lambda: &Subgroup) -> Self {
        let embedding = lambda.elements().to_vec();
        let local: HashMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let sub = FiniteGroup::from_mul(embedding.len(), |a, b| {
            local[&group.mul(embedding[a], embedding[b])]
        });
        SubgroupEmbedding {
            group: sub,
            embedding,
        }
    }

    /// Local index of an ambient element, if it lies in `Λ`.
    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }

    /// Re-expresses a subgroup of `Λ` (ambient indices) in local indices.
    pub fn localize(&self, subgroup: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            subgroup
                .elements()
                .iter()
                .map(|&x| self.local_index(x).expect("subgroup not contained in Λ"))
                .collect(),
        )
    }
}

/// Result of [`restrict_family`].
#[derive(Clone, Debug)]
pub struct RestrictedFamily {
    pub subgroup: SubgroupEmbedding,
    /// `{Λ ∩ X : X ∈ family}` in the local indexing of `Λ`.
    pub family: SubgroupFamily,
}

/// `Λ ∩ 𝒳`, re-indexed as a family of subgroups of the group `Λ`.
pub fn restrict_family(
    group: &FiniteGroup,
    lambda: &Subgroup,
    family: &SubgroupFamily,
) -> RestrictedFamily {
    let subgroup = SubgroupEmbedding::new(group, lambda);
    let family = family
        .members()
        .map(|x| subgroup.localize(&x.intersection(lambda)))
        .collect();
    RestrictedFamily { subgroup, family }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(s3().order(), 6);
        assert_eq!(FiniteGroup::dihedral(5).unwrap().order(), 10);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::quaternion8().order(), 8);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = FiniteGroup::quaternion8();
        let involutions = (0..8).filter(|&a| q.element_order(a) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn symmetric_ordering_is_lexicographic() {
        // [0,1,2] [0,2,1] [1,0,2] [1,2,0] [2,0,1] [2,1,0]
        let g = s3();
        // (0 1) then (1 2): a(b(i))
        assert_eq!(g.mul(2, 1), 3);
        assert_eq!(g.inv(3), 4);
        assert_eq!(g.element_order(3), 3);
    }

    #[test]
    fn cayley_validation() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(FiniteGroup::from_table(z2).unwrap().order(), 2);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(bad), Err(Error::InvalidTable(_))));
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(FiniteGroup::from_table(ragged), Err(Error::InvalidTable(_))));
        // a quasigroup that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn size_cap() {
        let spec = GroupSpec::Symmetric { n: 5 };
        assert!(make_group(&spec, 100).is_err());
        assert_eq!(make_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 120);
        let spec = GroupSpec::Cyclic { n: 6000 };
        assert_eq!(
            make_group(&spec, DEFAULT_ORDER_CAP),
            Err(Error::SizeCapExceeded { order: 6000, cap: 5040 })
        );
    }

    #[test]
    fn generated_subgroups() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(subgroup_generated(&z6, &[3]).unwrap().elements(), &[0, 3]);
        assert_eq!(subgroup_generated(&z6, &[]).unwrap().elements(), &[0]);
        assert!(matches!(
            subgroup_generated(&z6, &[6]),
            Err(Error::IndexOutOfRange { index: 6, order: 6 })
        ));
        let g = s3();
        assert_eq!(subgroup_generated(&g, &[1, 3]).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_counts() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(enumerate_subgroups(&z6, 48).unwrap().len(), 4);
        let one = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(enumerate_subgroups(&one, 48).unwrap().len(), 1);
        assert_eq!(enumerate_subgroups(&s3(), 48).unwrap().len(), 6);
        assert_eq!(
            enumerate_subgroups(&FiniteGroup::symmetric(4).unwrap(), 48).unwrap().len(),
            30
        );
        let s5 = FiniteGroup::symmetric(5).unwrap();
        assert!(matches!(
            enumerate_subgroups(&s5, 48),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn minimal_subgroup_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(minimal_subgroups(&z4).as_lists(), vec![vec![0, 2]]);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&[z2.clone(), z2]);
        assert_eq!(minimal_subgroups(&klein).len(), 3);
        assert!(minimal_subgroups(&FiniteGroup::cyclic(1).unwrap()).is_empty());
    }

    #[test]
    fn conjugation_closure_examples() {
        let g = s3();
        let t = Subgroup::new(&g, [0, 1]).unwrap();
        let class = conjugation_closure(&g, [&t]);
        assert_eq!(class.as_lists(), vec![vec![0, 1], vec![0, 2], vec![0, 5]]);
        assert_eq!(conjugation_closure(&g, class.members()), class);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let x = Subgroup::new(&z6, [0, 3]).unwrap();
        assert_eq!(conjugation_closure(&z6, [&x]).as_lists(), vec![vec![0, 3]]);
    }

    #[test]
    fn normal_closure_examples() {
        let g = s3();
        let t = Subgroup::new(&g, [0, 1]).unwrap();
        let class = conjugation_closure(&g, [&t]);
        assert_eq!(normal_closure_subgroup(&g, &class).len(), 6);
        let triv = SubgroupFamily::new([Subgroup::trivial()]);
        assert_eq!(normal_closure_subgroup(&g, &triv), Subgroup::trivial());
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let x = Subgroup::new(&z6, [0, 2, 4]).unwrap();
        let fam = SubgroupFamily::new([x.clone()]);
        assert_eq!(normal_closure_subgroup(&z6, &fam), x);
    }

    #[test]
    fn coset_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let x = Subgroup::new(&z6, [0, 3]).unwrap();
        let cosets = distinct_cosets(&z6, &SubgroupFamily::new([x]));
        let sets: Vec<_> = cosets.iter().map(|c| c.elements.clone()).collect();
        assert_eq!(sets, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(
            distinct_cosets(&z6, &SubgroupFamily::new([Subgroup::trivial()])).len(),
            6
        );
        assert_eq!(
            distinct_cosets(&z6, &SubgroupFamily::new([Subgroup::whole(&z6)])).len(),
            1
        );
    }

    #[test]
    fn restriction_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let fam = SubgroupFamily::new([Subgroup::new(&z6, [0, 3]).unwrap()]);
        let lambda = Subgroup::new(&z6, [0, 2, 4]).unwrap();
        let r = restrict_family(&z6, &lambda, &fam);
        assert_eq!(r.family.as_lists(), vec![vec![0]]);
        assert_eq!(r.subgroup.group.order(), 3);
        let whole = restrict_family(&z6, &Subgroup::whole(&z6), &fam);
        assert_eq!(whole.family, fam);
        let triv = restrict_family(&z6, &Subgroup::trivial(), &fam);
        assert_eq!(triv.family.as_lists(), vec![vec![0]]);
    }

    #[test]
    fn non_subgroup_rejected() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(matches!(Subgroup::new(&z6, [0, 1]), Err(Error::NotASubgroup(_))));
    }
}
