//! Vanishing of `J_{Γ,𝒳}` and `J_{Γ,𝒳} ∩ ℂ[Γ]` for a finite group.
//!
//! For finite `Γ` the stacked quasi-regular representation together with the
//! regular one is faithful on `ℂ[Γ]`, so both ideals are subspaces of `ℚ^Γ`
//! (coefficients over `ℚ` suffice since every constraint is integral). Two
//! routes compute them:
//!
//! * the coset constraints `Σ_{h∈gX} a(h) = 0` for every distinct coset;
//! * the kernel of `a ↦ Σ_g a(g) λ_{Γ/X}(g)` for every `X ∈ 𝒳`, linearized
//!   entry by entry.
//!
//! For finite groups these always agree; a disagreement is reported as an
//! internal inconsistency.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{distinct_cosets, left_cosets, minimal_subgroups, FiniteGroup, Subgroup, SubgroupFamily};
use crate::linalg::{self, Rational, RationalMatrix};

/// An element of `ℚ[Γ]`, indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    coeffs: Vec<Rational>,
}

impl GroupAlgebraElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        GroupAlgebraElement { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order])
    }

    /// `δ_g`.
    pub fn delta(order: usize, g: usize) -> Self {
        let mut a = Self::zero(order);
        a.coeffs[g] = Rational::one();
        a
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(linalg::to_rational(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `(a*b)(g) = Σ_h a(h) b(h⁻¹g)`.
    pub fn convolve(&self, group: &FiniteGroup, other: &Self) -> Self {
        let mut out = Self::zero(group.order());
        for (h, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out.coeffs[group.mul(h, k)] += x * y;
            }
        }
        out
    }

    /// `a*(g) = a(g⁻¹)`; conjugation is trivial on rational coefficients.
    pub fn star(&self, group: &FiniteGroup) -> Self {
        Self::new((0..group.order()).map(|g| self.coeffs[group.inv(g)].clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `Σ_{h∈Y} a(h)`.
    pub fn coset_sum(&self, coset: &[usize]) -> Rational {
        coset.iter().fold(Rational::zero(), |acc, &h| acc + &self.coeffs[h])
    }

    /// The first distinct coset whose sum does not vanish, if any.
    pub fn violated_coset(&self, group: &FiniteGroup, family: &SubgroupFamily) -> Option<Vec<usize>> {
        distinct_cosets(group, family)
            .into_iter()
            .find(|c| !self.coset_sum(&c.elements).is_zero())
            .map(|c| c.elements)
    }
}

/// An integer element of `ℤ[Γ]` whose coset sums all vanish. Serialized as
/// `{"coeffs":["1","-1",..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub coeffs: Vec<BigInt>,
}

impl Witness {
    pub fn to_element(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::from_integers(&self.coeffs)
    }

    pub fn is_primitive(&self) -> bool {
        use num::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x))
            .is_one()
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    coeffs: Vec<String>,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessRepr {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WitnessRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Witness { coeffs })
    }
}

/// Consistency checks recorded alongside a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossChecks {
    /// The two kernels coincide as subspaces.
    pub kernels_equal: bool,
    /// The coset indicator vectors span `ℚ^Γ`.
    pub coset_span_full: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_valid: Option<bool>,
    /// Kernel dimension of `q: ℚ[Γ] → C_c(Γ·𝒳)`, when computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_kernel_dim: Option<usize>,
    /// `ker q` equals the algebraic kernel as a subspace, when computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_kernel_equal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub algebraic_kernel_dim: usize,
    pub full_kernel_dim: usize,
    pub witness: Option<Witness>,
    pub weak_containment: bool,
    #[serde(rename = "in_class_I")]
    pub in_class_i: bool,
    pub ai_verdict: Option<bool>,
    pub cross_checks: CrossChecks,
}

impl IdealReport {
    /// Checks the report invariants and the finite-group coincidences.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InternalInconsistency(msg.to_string()));
        if self.witness.is_some() != (self.algebraic_kernel_dim > 0) {
            return fail("witness present iff the algebraic kernel is non-trivial");
        }
        if self.weak_containment != (self.full_kernel_dim == 0) {
            return fail("weak containment must equal faithfulness");
        }
        if self.in_class_i != (self.full_kernel_dim == 0 || self.algebraic_kernel_dim > 0) {
            return fail("class I verdict does not match the kernel dimensions");
        }
        if self.algebraic_kernel_dim != self.full_kernel_dim || !self.cross_checks.kernels_equal {
            return fail("algebraic and full kernels differ on a finite group");
        }
        if !self.in_class_i {
            return fail("finite group reported outside class I");
        }
        if self.cross_checks.witness_valid == Some(false) {
            return fail("emitted witness violates a coset constraint");
        }
        if self.cross_checks.q_kernel_equal == Some(false)
            || self
                .cross_checks
                .q_kernel_dim
                .is_some_and(|d| d != self.algebraic_kernel_dim)
        {
            return fail("q-map kernel differs from the algebraic kernel");
        }
        Ok(())
    }
}

fn indicator_row(order: usize, elements: &[usize]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); order];
    for &h in elements {
        row[h] = Rational::one();
    }
    row
}

/// One row per distinct coset `gX`, with 1 on the elements of the coset.
pub fn coset_constraint_matrix(group: &FiniteGroup, family: &SubgroupFamily) -> RationalMatrix {
    let rows = distinct_cosets(group, family)
        .iter()
        .map(|c| indicator_row(group.order(), &c.elements))
        .collect();
    RationalMatrix::from_rows(group.order(), rows)
}

/// Basis of `J_{Γ,𝒳} ∩ ℂ[Γ]` from the coset constraints.
pub fn algebraic_ideal_kernel(group: &FiniteGroup, family: &SubgroupFamily) -> Result<Vec<Vec<Rational>>> {
    family.ensure_invariant(group)?;
    Ok(linalg::kernel_basis(&coset_constraint_matrix(group, family)))
}

/// A primitive integer element of the algebraic kernel, if it is non-trivial.
pub fn integer_witness(group: &FiniteGroup, family: &SubgroupFamily) -> Result<Option<Witness>> {
    let kernel = algebraic_ideal_kernel(group, family)?;
    witness_from_kernel(&kernel)
}

fn witness_from_kernel(kernel: &[Vec<Rational>]) -> Result<Option<Witness>> {
    kernel
        .first()
        .map(|v| linalg::integerize(v).map(|coeffs| Witness { coeffs }))
        .transpose()
}

/// Image of each coset of `subgroup` under left multiplication by `g`, cosets
/// ordered by representative.
fn coset_permutation(group: &FiniteGroup, subgroup: &Subgroup, g: usize) -> Vec<usize> {
    let cosets = left_cosets(group, subgroup);
    let mut coset_of = vec![0; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &h in &c.elements {
            coset_of[h] = i;
        }
    }
    cosets
        .iter()
        .map(|c| coset_of[group.mul(g, c.representative)])
        .collect()
}

/// Matrix of `λ_{Γ/X}(δ_g): δ_{hX} ↦ δ_{ghX}` on the left cosets of `X`.
pub fn quasi_regular_matrix(group: &FiniteGroup, subgroup: &Subgroup, g: usize) -> Result<RationalMatrix> {
    if g >= group.order() {
        return Err(Error::IndexOutOfRange {
            index: g,
            order: group.order(),
        });
    }
    let perm = coset_permutation(group, subgroup, g);
    let mut m = RationalMatrix::zeros(perm.len(), perm.len());
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, Rational::one());
    }
    Ok(m)
}

/// Basis of `J_{Γ,𝒳} = ⋂_X ker λ_{Γ/X}` inside `ℚ[Γ]`.
///
/// Each entry `(i, j)` of `λ_{Γ/X}` contributes the row `g ↦ λ_{Γ/X}(g)_{ij}`.
/// Repeated rows are dropped; this does not change the kernel.
pub fn full_ideal_kernel(group: &FiniteGroup, family: &SubgroupFamily) -> Result<Vec<Vec<Rational>>> {
    family.ensure_invariant(group)?;
    let n = group.order();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut rows = Vec::new();
    for x in family.members() {
        let k = n / x.len();
        let mut entries = vec![vec![false; n]; k * k];
        for g in 0..n {
            let m = quasi_regular_matrix(group, x, g)?;
            for (idx, pattern) in entries.iter_mut().enumerate() {
                pattern[g] = m.get(idx / k, idx % k).is_one();
            }
        }
        for pattern in entries {
            if pattern.iter().any(|&b| b) && seen.insert(pattern.clone()) {
                rows.push(pattern.iter().map(|&b| Rational::from_integer(BigInt::from(u8::from(b)))).collect());
            }
        }
    }
    Ok(linalg::kernel_basis(&RationalMatrix::from_rows(n, rows)))
}

/// Whether `λ_Γ` is weakly contained in `⊕_X λ_{Γ/X}`, i.e. `J_{Γ,𝒳} = 0`.
pub fn weak_containment_regular(group: &FiniteGroup, family: &SubgroupFamily) -> Result<bool> {
    Ok(full_ideal_kernel(group, family)?.is_empty())
}

/// Full report for `(Γ, 𝒳)`, including the cross-check of the two kernels.
pub fn class_i_check(group: &FiniteGroup, family: &SubgroupFamily) -> Result<IdealReport> {
    let algebraic = algebraic_ideal_kernel(group, family)?;
    let full = full_ideal_kernel(group, family)?;
    let report = assemble_report(group, family, &algebraic, &full)?;
    report.validate()?;
    Ok(report)
}

fn assemble_report(
    group: &FiniteGroup,
    family: &SubgroupFamily,
    algebraic: &[Vec<Rational>],
    full: &[Vec<Rational>],
) -> Result<IdealReport> {
    let n = group.order();
    let witness = witness_from_kernel(algebraic)?;
    let witness_valid = witness
        .as_ref()
        .map(|w| !w.coeffs.iter().all(Zero::is_zero) && w.to_element().violated_coset(group, family).is_none());
    let coset_rows: Vec<Vec<Rational>> = coset_constraint_matrix(group, family).row_iter().map(<[Rational]>::to_vec).collect();
    Ok(IdealReport {
        algebraic_kernel_dim: algebraic.len(),
        full_kernel_dim: full.len(),
        weak_containment: full.is_empty(),
        in_class_i: full.is_empty() || !algebraic.is_empty(),
        ai_verdict: None,
        cross_checks: CrossChecks {
            kernels_equal: linalg::same_subspace(algebraic, full, n),
            coset_span_full: linalg::spans_full(&coset_rows, n),
            witness_valid,
            q_kernel_dim: None,
            q_kernel_equal: None,
        },
        witness,
    })
}

/// Property AI for a finite group, decided on the minimal subgroups.
///
/// For the trivial group the family of minimal subgroups is empty: nothing
/// constrains `ℚ[Γ]`, both kernels are the whole (one-dimensional) algebra and
/// the verdict is vacuously true.
pub fn property_ai(group: &FiniteGroup) -> Result<IdealReport> {
    let family = minimal_subgroups(group);
    if family.is_empty() {
        let report = IdealReport {
            algebraic_kernel_dim: 1,
            full_kernel_dim: 1,
            witness: Some(Witness {
                coeffs: vec![BigInt::one(); group.order()],
            }),
            weak_containment: false,
            in_class_i: true,
            ai_verdict: Some(true),
            cross_checks: CrossChecks {
                kernels_equal: true,
                coset_span_full: false,
                witness_valid: Some(true),
                ..CrossChecks::default()
            },
        };
        return Ok(report);
    }
    let mut report = class_i_check(group, &family)?;
    if report.cross_checks.coset_span_full != (report.algebraic_kernel_dim == 0) {
        return Err(Error::InternalInconsistency(
            "coset span and algebraic kernel disagree".into(),
        ));
    }
    report.ai_verdict = Some(report.algebraic_kernel_dim > 0);
    Ok(report)
}

/// For abelian groups: at most one subgroup of order `p` for every prime `p`.
pub fn abelian_ai_criterion(group: &FiniteGroup) -> Result<bool> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = group.order();
    let mut counts = std::collections::BTreeMap::<usize, usize>::new();
    for a in 1..n {
        let k = group.element_order(a);
        if crate::group::is_prime(k) {
            *counts.entry(k).or_default() += 1;
        }
    }
    // each subgroup of order p holds p - 1 elements of order p
    Ok(counts.iter().all(|(&p, &elements)| elements / (p - 1) <= 1))
}

/// Coefficients of `v` at the elements of `Λ`, in increasing element order.
pub fn restrict_coefficients(v: &[Rational], lambda: &Subgroup) -> Vec<Rational> {
    lambda.elements().iter().map(|&g| v[g].clone()).collect()
}

/// Basis of the elements of the algebraic kernel supported on `Λ`, written in
/// the coordinates of `Λ`.
pub fn kernel_supported_on(
    group: &FiniteGroup,
    family: &SubgroupFamily,
    lambda: &Subgroup,
) -> Result<Vec<Vec<Rational>>> {
    family.ensure_invariant(group)?;
    let rows = coset_constraint_matrix(group, family)
        .row_iter()
        .map(|row| restrict_coefficients(row, lambda))
        .collect();
    Ok(linalg::kernel_basis(&RationalMatrix::from_rows(lambda.len(), rows)))
}
