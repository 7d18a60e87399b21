//! Finite groupoids, their convolution algebras, and the coset groupoid `Γ·𝒳`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{distinct_cosets, FiniteGroup, Subgroup, SubgroupFamily};
use crate::ideal::{algebraic_ideal_kernel, class_i_check, GroupAlgebraElement, IdealReport};
use crate::linalg::{self, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub range: usize,
    /// Underlying data: the coset elements for a coset groupoid, `[γ]` for a
    /// group.
    pub payload: Vec<usize>,
}

/// A finite groupoid with units `0..num_units` and arrows `0..num_arrows`.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    unit_arrows: Vec<usize>,
    arrows: Vec<Arrow>,
    inverse: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    by_source: Vec<Vec<usize>>,
    fingerprint: u64,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.unit_arrows == other.unit_arrows
            && self.arrows == other.arrows
            && self.inverse == other.inverse
            && self.compose == other.compose
    }
}

impl FiniteGroupoid {
    /// Assembles a groupoid from explicit data and checks every axiom.
    pub fn new(
        unit_arrows: Vec<usize>,
        arrows: Vec<Arrow>,
        inverse: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let g = Self::assemble(unit_arrows, arrows, inverse, compose)?;
        g.check_axioms()?;
        Ok(g)
    }

    fn assemble(
        unit_arrows: Vec<usize>,
        arrows: Vec<Arrow>,
        inverse: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n = arrows.len();
        let units = unit_arrows.len();
        let bad = |msg: String| Err(Error::GroupoidAxiom(msg));
        if inverse.len() != n {
            return bad(format!("inverse map has {} entries for {n} arrows", inverse.len()));
        }
        if let Some(a) = arrows.iter().position(|a| a.source >= units || a.range >= units) {
            return bad(format!("arrow {a} has an endpoint outside the unit space"));
        }
        if inverse.iter().chain(&unit_arrows).any(|&a| a >= n)
            || compose.iter().any(|(&(a, b), &c)| a >= n || b >= n || c >= n)
        {
            return bad("arrow index out of range".into());
        }
        let mut by_source = vec![Vec::new(); units];
        for (id, a) in arrows.iter().enumerate() {
            by_source[a.source].push(id);
        }
        let mut hasher = DefaultHasher::new();
        unit_arrows.hash(&mut hasher);
        arrows.hash(&mut hasher);
        inverse.hash(&mut hasher);
        let mut table: Vec<_> = compose.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        table.sort_unstable();
        table.hash(&mut hasher);
        Ok(FiniteGroupoid {
            unit_arrows,
            arrows,
            inverse,
            compose,
            by_source,
            fingerprint: hasher.finish(),
        })
    }

    /// A group as a groupoid with one unit; arrow `γ` is the element `γ`.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let n = group.order();
        let arrows = (0..n)
            .map(|g| Arrow {
                source: 0,
                range: 0,
                payload: vec![g],
            })
            .collect();
        let compose = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a, b), group.mul(a, b))))
            .collect();
        let inverse = (0..n).map(|a| group.inv(a)).collect();
        Self::assemble(vec![0], arrows, inverse, compose).expect("group tables are well formed")
    }

    /// Disjoint union; units and arrows of later parts are shifted.
    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> Self {
        let mut unit_arrows = Vec::new();
        let mut arrows = Vec::new();
        let mut inverse = Vec::new();
        let mut compose = HashMap::new();
        for part in parts {
            let (du, da) = (unit_arrows.len(), arrows.len());
            unit_arrows.extend(part.unit_arrows.iter().map(|a| a + da));
            arrows.extend(part.arrows.iter().map(|a| Arrow {
                source: a.source + du,
                range: a.range + du,
                payload: a.payload.clone(),
            }));
            inverse.extend(part.inverse.iter().map(|a| a + da));
            compose.extend(part.compose.iter().map(|(&(a, b), &c)| ((a + da, b + da), c + da)));
        }
        Self::assemble(unit_arrows, arrows, inverse, compose).expect("parts are well formed")
    }

    pub fn num_units(&self) -> usize {
        self.unit_arrows.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn range(&self, a: usize) -> usize {
        self.arrows[a].range
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The identity arrow at unit `u`.
    pub fn unit_arrow(&self, u: usize) -> usize {
        self.unit_arrows[u]
    }

    pub fn is_unit_arrow(&self, a: usize) -> bool {
        self.unit_arrows[self.arrows[a].source] == a
    }

    /// `ab`, defined iff `s(a) = r(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    /// Arrows with source `u`, in increasing order.
    pub fn arrows_from(&self, u: usize) -> &[usize] {
        &self.by_source[u]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    fn check_unit(&self, u: usize) -> Result<()> {
        if u < self.num_units() {
            Ok(())
        } else {
            Err(Error::UnitNotFound(u))
        }
    }

    /// Exhaustive check of the groupoid axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::GroupoidAxiom(msg));
        for (u, &e) in self.unit_arrows.iter().enumerate() {
            if self.source(e) != u || self.range(e) != u {
                return fail(format!("unit arrow {e} does not sit at unit {u}"));
            }
        }
        for a in 0..self.num_arrows() {
            let b = self.inverse[a];
            if self.range(b) != self.source(a) || self.source(b) != self.range(a) {
                return fail(format!("inverse of {a} has the wrong endpoints"));
            }
            if self.compose(b, a) != Some(self.unit_arrow(self.source(a)))
                || self.compose(a, b) != Some(self.unit_arrow(self.range(a)))
            {
                return fail(format!("{a} composed with its inverse is not a unit"));
            }
            if self.compose(self.unit_arrow(self.range(a)), a) != Some(a)
                || self.compose(a, self.unit_arrow(self.source(a))) != Some(a)
            {
                return fail(format!("units do not act neutrally on {a}"));
            }
        }
        let mut expected = 0;
        for a in 0..self.num_arrows() {
            for b in 0..self.num_arrows() {
                let composable = self.source(a) == self.range(b);
                match (composable, self.compose(a, b)) {
                    (true, Some(c)) => {
                        expected += 1;
                        if self.range(c) != self.range(a) || self.source(c) != self.source(b) {
                            return fail(format!("{a}·{b} has the wrong endpoints"));
                        }
                    }
                    (true, None) => return fail(format!("{a}·{b} missing")),
                    (false, Some(_)) => return fail(format!("{a}·{b} defined but not composable")),
                    (false, None) => {}
                }
            }
        }
        if expected != self.compose.len() {
            return fail("composition table has stray entries".into());
        }
        for (&(a, b), &ab) in &self.compose {
            for c in (0..self.num_arrows()).filter(|&c| self.range(c) == self.source(b)) {
                let bc = self.compose[&(b, c)];
                if self.compose.get(&(ab, c)) != self.compose.get(&(a, bc)) {
                    return fail(format!("associativity fails on ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }

    /// The reduction `G|_X`: arrows with source and range in `units`.
    /// Returns the groupoid and, for each of its arrows, the ambient arrow.
    pub fn restrict(&self, units: &[usize]) -> Result<(FiniteGroupoid, Vec<usize>)> {
        if units.is_empty() {
            return Err(Error::EmptyUnitSet);
        }
        let mut local_unit = vec![None; self.num_units()];
        let mut kept_units = units.to_vec();
        kept_units.sort_unstable();
        kept_units.dedup();
        for (i, &u) in kept_units.iter().enumerate() {
            self.check_unit(u)?;
            local_unit[u] = Some(i);
        }
        let kept: Vec<usize> = (0..self.num_arrows())
            .filter(|&a| local_unit[self.source(a)].is_some() && local_unit[self.range(a)].is_some())
            .collect();
        let mut local_arrow = vec![usize::MAX; self.num_arrows()];
        for (i, &a) in kept.iter().enumerate() {
            local_arrow[a] = i;
        }
        let arrows = kept
            .iter()
            .map(|&a| Arrow {
                source: local_unit[self.source(a)].unwrap(),
                range: local_unit[self.range(a)].unwrap(),
                payload: self.arrows[a].payload.clone(),
            })
            .collect();
        let inverse = kept.iter().map(|&a| local_arrow[self.inverse[a]]).collect();
        let unit_arrows = kept_units.iter().map(|&u| local_arrow[self.unit_arrows[u]]).collect();
        let compose = self
            .compose
            .iter()
            .filter(|(&(a, b), _)| local_arrow[a] != usize::MAX && local_arrow[b] != usize::MAX)
            .map(|(&(a, b), &c)| ((local_arrow[a], local_arrow[b]), local_arrow[c]))
            .collect();
        Ok((Self::assemble(unit_arrows, arrows, inverse, compose)?, kept))
    }

    /// Serializable description for debugging and embedding.
    pub fn dump(&self) -> GroupoidDump {
        let mut composition: Vec<[usize; 3]> = self.compose.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        composition.sort_unstable();
        GroupoidDump {
            unit_arrows: self.unit_arrows.clone(),
            arrows: self.arrows.clone(),
            inverse: self.inverse.clone(),
            composition,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDump {
    pub unit_arrows: Vec<usize>,
    pub arrows: Vec<Arrow>,
    pub inverse: Vec<usize>,
    /// Triples `[a, b, ab]`.
    pub composition: Vec<[usize; 3]>,
}

impl GroupoidDump {
    pub fn into_groupoid(self) -> Result<FiniteGroupoid> {
        let compose = self.composition.iter().map(|&[a, b, c]| ((a, b), c)).collect();
        FiniteGroupoid::new(self.unit_arrows, self.arrows, self.inverse, compose)
    }
}

/// A rational-valued function on the arrows of a specific groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunction {
    fingerprint: u64,
    values: Vec<Rational>,
}

impl GroupoidFunction {
    pub fn zero(g: &FiniteGroupoid) -> Self {
        GroupoidFunction {
            fingerprint: g.fingerprint,
            values: vec![Rational::zero(); g.num_arrows()],
        }
    }

    pub fn from_values(g: &FiniteGroupoid, values: Vec<Rational>) -> Result<Self> {
        if values.len() != g.num_arrows() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} arrows",
                values.len(),
                g.num_arrows()
            )));
        }
        Ok(GroupoidFunction {
            fingerprint: g.fingerprint,
            values,
        })
    }

    /// Indicator of a set of arrows.
    pub fn indicator(g: &FiniteGroupoid, arrows: impl IntoIterator<Item = usize>) -> Self {
        let mut f = Self::zero(g);
        for a in arrows {
            f.values[a] = Rational::from_integer(1.into());
        }
        f
    }

    /// Indicator of the unit arrows at the given units.
    pub fn unit_indicator(g: &FiniteGroupoid, units: &[usize]) -> Self {
        Self::indicator(g, units.iter().map(|&u| g.unit_arrow(u)))
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, a: usize) -> &Rational {
        &self.values[a]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn belongs_to(&self, g: &FiniteGroupoid) -> bool {
        self.fingerprint == g.fingerprint && self.values.len() == g.num_arrows()
    }

    fn check(&self, g: &FiniteGroupoid) -> Result<()> {
        if self.belongs_to(g) {
            Ok(())
        } else {
            Err(Error::MismatchedGroupoid)
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num::ToPrimitive;
        self.values.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `(f₁*f₂)(γ) = Σ_{h ∈ G_{s(γ)}} f₁(γh⁻¹) f₂(h)`.
pub fn convolve(g: &FiniteGroupoid, f1: &GroupoidFunction, f2: &GroupoidFunction) -> Result<GroupoidFunction> {
    f1.check(g)?;
    f2.check(g)?;
    let mut out = GroupoidFunction::zero(g);
    for gamma in 0..g.num_arrows() {
        let mut acc = Rational::zero();
        for &h in g.arrows_from(g.source(gamma)) {
            let b = &f2.values[h];
            if b.is_zero() {
                continue;
            }
            let a = &f1.values[g.compose(gamma, g.inverse(h)).expect("s(γ) = r(h⁻¹)")];
            if !a.is_zero() {
                acc += a * b;
            }
        }
        out.values[gamma] = acc;
    }
    Ok(out)
}

/// `f*(γ) = f(γ⁻¹)` (conjugation is trivial on rational values).
pub fn involution(g: &FiniteGroupoid, f: &GroupoidFunction) -> Result<GroupoidFunction> {
    f.check(g)?;
    let values = (0..g.num_arrows()).map(|a| f.values[g.inverse(a)].clone()).collect();
    GroupoidFunction::from_values(g, values)
}

/// The coset groupoid `Γ·𝒳` with arrows the distinct cosets `γX`.
///
/// `s(Y) = y⁻¹Y`, `r(Y) = Yy⁻¹`, `YZ = yz·s(Z)` and `Y⁻¹` is the pointwise
/// inverse. Units are the members of `𝒳`, in canonical order.
#[derive(Clone, Debug)]
pub struct CosetGroupoid {
    group: FiniteGroup,
    family: SubgroupFamily,
    groupoid: FiniteGroupoid,
    arrow_of: HashMap<Vec<usize>, usize>,
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

impl CosetGroupoid {
    pub fn build(group: &FiniteGroup, family: &SubgroupFamily) -> Result<Self> {
        family.ensure_invariant(group)?;
        let cosets = distinct_cosets(group, family);
        let arrow_of: HashMap<Vec<usize>, usize> =
            cosets.iter().enumerate().map(|(i, c)| (c.elements.clone(), i)).collect();
        let unit_of: HashMap<&[usize], usize> =
            family.members().enumerate().map(|(i, x)| (x.elements(), i)).collect();
        let inconsistent = |msg: String| Error::InternalInconsistency(msg);

        let mut arrows = Vec::with_capacity(cosets.len());
        for c in &cosets {
            let endpoints = |y: usize| {
                let yi = group.inv(y);
                let s = sorted(c.elements.iter().map(|&h| group.mul(yi, h)).collect());
                let r = sorted(c.elements.iter().map(|&h| group.mul(h, yi)).collect());
                (s, r)
            };
            let (s, r) = endpoints(c.representative);
            if c.elements.iter().any(|&y| endpoints(y) != (s.clone(), r.clone())) {
                return Err(inconsistent(format!("endpoints of {:?} depend on the representative", c.elements)));
            }
            let lookup = |set: &[usize]| {
                unit_of
                    .get(set)
                    .copied()
                    .ok_or_else(|| inconsistent(format!("{set:?} is not a unit")))
            };
            arrows.push(Arrow {
                source: lookup(&s)?,
                range: lookup(&r)?,
                payload: c.elements.clone(),
            });
        }

        let find = |set: Vec<usize>| {
            arrow_of
                .get(&set)
                .copied()
                .ok_or_else(|| inconsistent(format!("{set:?} is not an arrow")))
        };
        let inverse = cosets
            .iter()
            .map(|c| find(sorted(c.elements.iter().map(|&y| group.inv(y)).collect())))
            .collect::<Result<Vec<_>>>()?;
        let unit_arrows = family
            .members()
            .map(|x| find(x.elements().to_vec()))
            .collect::<Result<Vec<_>>>()?;

        let mut into_unit: Vec<Vec<usize>> = vec![Vec::new(); family.len()];
        for (id, a) in arrows.iter().enumerate() {
            into_unit[a.range].push(id);
        }
        let members: Vec<&Subgroup> = family.members().collect();
        let mut compose = HashMap::new();
        for (y, a) in arrows.iter().enumerate() {
            for &z in &into_unit[a.source] {
                let yz = group.mul(cosets[y].representative, cosets[z].representative);
                let sz = members[arrows[z].source];
                let product = sorted(sz.elements().iter().map(|&x| group.mul(yz, x)).collect());
                compose.insert((y, z), find(product)?);
            }
        }
        let groupoid = FiniteGroupoid::new(unit_arrows, arrows, inverse, compose)?;
        Ok(CosetGroupoid {
            group: group.clone(),
            family: family.clone(),
            groupoid,
            arrow_of,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn family(&self) -> &SubgroupFamily {
        &self.family
    }

    /// Arrow id of a coset given by its elements (any order).
    pub fn arrow_of_coset(&self, elements: &[usize]) -> Option<usize> {
        self.arrow_of.get(&sorted(elements.to_vec())).copied()
    }

    /// Unit index of a family member.
    pub fn unit_of_subgroup(&self, x: &Subgroup) -> Option<usize> {
        self.family.members().position(|y| y == x)
    }

    /// `q(a)(Y) = Σ_{y∈Y} a(y)`.
    pub fn q_map(&self, a: &GroupAlgebraElement) -> Result<GroupoidFunction> {
        if a.order() != self.group.order() {
            return Err(Error::InvalidParameter(format!(
                "element of length {} over a group of order {}",
                a.order(),
                self.group.order()
            )));
        }
        let values = self
            .groupoid
            .arrows()
            .iter()
            .map(|arrow| a.coset_sum(&arrow.payload))
            .collect();
        GroupoidFunction::from_values(&self.groupoid, values)
    }

    /// Matrix of `q` in the bases `δ_g` and `δ_Y`, built column by column from
    /// `q(δ_g)`.
    pub fn q_matrix(&self) -> Result<RationalMatrix> {
        let n = self.group.order();
        let mut m = RationalMatrix::zeros(self.groupoid.num_arrows(), n);
        for g in 0..n {
            let column = self.q_map(&GroupAlgebraElement::delta(n, g))?;
            for (i, v) in column.values().iter().enumerate() {
                m.set(i, g, v.clone());
            }
        }
        Ok(m)
    }

    pub fn q_kernel_basis(&self) -> Result<Vec<Vec<Rational>>> {
        Ok(linalg::kernel_basis(&self.q_matrix()?))
    }
}

/// `dim ker q` for the coset groupoid of `(G, 𝒳)`.
pub fn kernel_of_q_dimension(group: &FiniteGroup, family: &SubgroupFamily) -> Result<usize> {
    Ok(CosetGroupoid::build(group, family)?.q_kernel_basis()?.len())
}

/// [`class_i_check`] with the q-map kernel recorded as a third oracle.
pub fn cross_checked_report(group: &FiniteGroup, family: &SubgroupFamily) -> Result<IdealReport> {
    let mut report = class_i_check(group, family)?;
    let q_kernel = CosetGroupoid::build(group, family)?.q_kernel_basis()?;
    let algebraic = algebraic_ideal_kernel(group, family)?;
    report.cross_checks.q_kernel_dim = Some(q_kernel.len());
    report.cross_checks.q_kernel_equal = Some(linalg::same_subspace(&q_kernel, &algebraic, group.order()));
    report.validate()?;
    Ok(report)
}
