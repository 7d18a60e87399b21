//! Finite truncation of `Γ×{∞} ⊔ (Γ·𝒳)×ℕ`.
//!
//! Levels `1..=N` each carry a copy of the coset groupoid; the fibre at `∞` is
//! the group itself. A basic neighbourhood of `(γ,∞)` with cutoff `n` is
//! `{(γ,∞)} ∪ {(γX, m) : X ∈ 𝒳, n ≤ m ≤ N}`. Every verdict here depends only on
//! the coset sums, which are the same at every level, so the truncation is
//! exact for the questions asked.

use std::collections::BTreeSet;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupFamily};
use crate::groupoid::{CosetGroupoid, FiniteGroupoid};
use crate::ideal::{integer_witness, GroupAlgebraElement, Witness};
use crate::linalg::Rational;

/// An arrow of the truncated groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HlsArrow {
    /// `(γ, ∞)`.
    Infinity(usize),
    /// `(coset arrow, level)`.
    Level(usize, usize),
}

#[derive(Clone, Debug)]
pub struct TruncatedHls {
    group: FiniteGroup,
    family: SubgroupFamily,
    depth: usize,
    levels: Vec<CosetGroupoid>,
}

impl TruncatedHls {
    pub fn build(group: &FiniteGroup, family: &SubgroupFamily, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameter("depth must be at least 1".into()));
        }
        let level = CosetGroupoid::build(group, family)?;
        Ok(TruncatedHls {
            group: group.clone(),
            family: family.clone(),
            depth,
            levels: vec![level; depth],
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn family(&self) -> &SubgroupFamily {
        &self.family
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The coset groupoid at level `n` (1-based).
    pub fn level(&self, n: usize) -> &CosetGroupoid {
        &self.levels[n - 1]
    }

    pub fn num_units(&self) -> usize {
        1 + self.family.len() * self.depth
    }

    pub fn infinity_arrows(&self) -> usize {
        self.group.order()
    }

    pub fn arrows_per_level(&self) -> usize {
        self.levels[0].groupoid().num_arrows()
    }

    /// The underlying groupoid (topology forgotten): `Γ` followed by the
    /// levels in order.
    pub fn as_groupoid(&self) -> FiniteGroupoid {
        let infinity = FiniteGroupoid::from_group(&self.group);
        let mut parts = vec![&infinity];
        parts.extend(self.levels.iter().map(CosetGroupoid::groupoid));
        FiniteGroupoid::disjoint_union(&parts)
    }

    /// The basic neighbourhood of `(γ,∞)` with the given cutoff.
    pub fn basic_neighborhood(&self, gamma: usize, cutoff: usize) -> BTreeSet<HlsArrow> {
        let mut out = BTreeSet::from([HlsArrow::Infinity(gamma)]);
        for m in cutoff.max(1)..=self.depth {
            let level = self.level(m);
            for x in self.family.members() {
                let coset: Vec<usize> = x.elements().iter().map(|&h| self.group.mul(gamma, h)).collect();
                let a = level.arrow_of_coset(&coset).expect("γX is a coset of a member");
                out.insert(HlsArrow::Level(a, m));
            }
        }
        out
    }

    /// The unit `(X, n)` as an arrow.
    fn level_unit(&self, x: &Subgroup, n: usize) -> Result<HlsArrow> {
        let level = self.level(n);
        let u = level
            .unit_of_subgroup(x)
            .ok_or_else(|| Error::SubgroupNotInFamily(x.elements().to_vec()))?;
        Ok(HlsArrow::Level(level.groupoid().unit_arrow(u), n))
    }

    fn check_level_values(&self, level_values: &[Vec<Rational>]) -> bool {
        level_values.len() == self.depth && level_values.iter().all(|v| v.len() == self.arrows_per_level())
    }
}

/// Limit set of the unit sequence `(X, n)`, `n → ∞`: the `γ` such that every
/// basic neighbourhood of `(γ,∞)` contains the tail of the sequence.
pub fn limit_set(hls: &TruncatedHls, tail_subgroup: &Subgroup) -> Result<Vec<usize>> {
    if !hls.family.contains(tail_subgroup) {
        return Err(Error::SubgroupNotInFamily(tail_subgroup.elements().to_vec()));
    }
    let mut out = Vec::new();
    for gamma in 0..hls.group.order() {
        let mut absorbed = true;
        for cutoff in 1..=hls.depth {
            let nbhd = hls.basic_neighborhood(gamma, cutoff);
            for n in cutoff..=hls.depth {
                if !nbhd.contains(&hls.level_unit(tail_subgroup, n)?) {
                    absorbed = false;
                }
            }
        }
        if absorbed {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// The limit sets of all constant-tail unit sequences, as subgroups.
pub fn essential_fiber(hls: &TruncatedHls) -> SubgroupFamily {
    hls.family
        .members()
        .map(|x| {
            let set = limit_set(hls, x).expect("member of the family");
            Subgroup::new(&hls.group, set).expect("limit sets of units are subgroups")
        })
        .collect()
}

/// `{e}` is absent from the essential fibre over the point at infinity.
pub fn is_extremely_dangerous(hls: &TruncatedHls) -> bool {
    !essential_fiber(hls).contains_trivial()
}

/// A function on the truncated groupoid built from a group-algebra element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularCandidate {
    pub infinity_values: Vec<Rational>,
    /// `level_values[n-1][a]` is the value on coset arrow `a` at level `n`.
    pub level_values: Vec<Vec<Rational>>,
    pub cutoff: usize,
}

/// `f = Σ_γ b(γ)·(φ∘s)|_{U_γ}` where `U_γ` is the basic neighbourhood of
/// `(γ,∞)` at `cutoff` and `φ` the indicator of the basic neighbourhood of the
/// unit at infinity. No witness check is made.
pub fn lift_unchecked(hls: &TruncatedHls, b: &GroupAlgebraElement, cutoff: usize) -> Result<SingularCandidate> {
    if cutoff == 0 || cutoff > hls.depth {
        return Err(Error::InvalidParameter(format!(
            "cutoff {cutoff} outside 1..={}",
            hls.depth
        )));
    }
    if b.order() != hls.group.order() {
        return Err(Error::InvalidParameter("element over a different group".into()));
    }
    let phi = hls.basic_neighborhood(0, cutoff);
    let phi_of_source = |a: HlsArrow| -> bool {
        match a {
            HlsArrow::Infinity(_) => phi.contains(&HlsArrow::Infinity(0)),
            HlsArrow::Level(arrow, n) => {
                let g = hls.level(n).groupoid();
                phi.contains(&HlsArrow::Level(g.unit_arrow(g.source(arrow)), n))
            }
        }
    };
    let mut infinity_values = vec![Rational::zero(); hls.group.order()];
    let mut level_values = vec![vec![Rational::zero(); hls.arrows_per_level()]; hls.depth];
    for (gamma, coeff) in b.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for a in hls.basic_neighborhood(gamma, cutoff) {
            if !phi_of_source(a) {
                continue;
            }
            match a {
                HlsArrow::Infinity(g) => infinity_values[g] += coeff,
                HlsArrow::Level(arrow, n) => level_values[n - 1][arrow] += coeff,
            }
        }
    }
    Ok(SingularCandidate {
        infinity_values,
        level_values,
        cutoff,
    })
}

/// Lifts an integer witness; fails if `b` violates a coset constraint.
pub fn singular_function_from_witness(hls: &TruncatedHls, b: &Witness, cutoff: usize) -> Result<SingularCandidate> {
    let element = b.to_element();
    if let Some(coset) = element.violated_coset(&hls.group, &hls.family) {
        return Err(Error::NotAWitness(coset));
    }
    let candidate = lift_unchecked(hls, &element, cutoff)?;
    for (n, values) in candidate.level_values.iter().enumerate() {
        if let Some(a) = values.iter().position(|v| !v.is_zero()) {
            let payload = hls.level(n + 1).groupoid().arrow(a).payload.clone();
            return Err(Error::NotAWitness(payload));
        }
    }
    Ok(candidate)
}

/// Vanishes on every level arrow and is non-zero somewhere at infinity.
pub fn verify_singular(hls: &TruncatedHls, f: &SingularCandidate) -> bool {
    f.infinity_values.len() == hls.group.order()
        && hls.check_level_values(&f.level_values)
        && f.level_values.iter().flatten().all(Zero::is_zero)
        && f.infinity_values.iter().any(|v| !v.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HlsReport {
    pub depth: usize,
    pub units: usize,
    pub extremely_dangerous: bool,
    pub essential_fiber: Vec<Vec<usize>>,
    pub witness: Option<Witness>,
    pub witness_lifted: bool,
    pub verify_singular: Option<bool>,
}

/// Builds the truncation and lifts the witness (if any) at cutoff 1.
pub fn hls_report(group: &FiniteGroup, family: &SubgroupFamily, depth: usize) -> Result<HlsReport> {
    let hls = TruncatedHls::build(group, family, depth)?;
    let fiber = essential_fiber(&hls);
    let witness = integer_witness(group, family)?;
    let lifted = witness
        .as_ref()
        .map(|w| singular_function_from_witness(&hls, w, 1))
        .transpose()?;
    Ok(HlsReport {
        depth,
        units: hls.num_units(),
        extremely_dangerous: !fiber.contains_trivial(),
        essential_fiber: fiber.as_lists(),
        witness_lifted: lifted.is_some(),
        verify_singular: lifted.map(|f| verify_singular(&hls, &f)),
        witness,
    })
}

impl SingularCandidate {
    pub fn is_zero(&self) -> bool {
        self.infinity_values
            .iter()
            .chain(self.level_values.iter().flatten())
            .all(Zero::is_zero)
    }

    /// Indicator of a single level arrow.
    pub fn level_indicator(hls: &TruncatedHls, arrow: usize, level: usize) -> Self {
        let mut level_values = vec![vec![Rational::zero(); hls.arrows_per_level()]; hls.depth];
        level_values[level - 1][arrow] = Rational::one();
        SingularCandidate {
            infinity_values: vec![Rational::zero(); hls.group.order()],
            level_values,
            cutoff: 1,
        }
    }
}
