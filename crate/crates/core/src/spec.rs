//! JSON descriptions of subgroup families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{conjugation_closure, minimal_subgroups, subgroup_generated, FiniteGroup, Subgroup, SubgroupFamily};

/// Exactly one of the fields must be set:
/// `{"subgroups":[[0,1],..]}`, `{"minimal":true}` or
/// `{"conjugacy_class_of":[generators..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    /// Generators of one subgroup; the family is its conjugacy class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugacy_class_of: Option<Vec<usize>>,
}

/// Builds the family. A non-invariant family is replaced by its conjugation
/// closure when `auto_close` is set and rejected otherwise.
pub fn resolve_family(group: &FiniteGroup, spec: &FamilySpec, auto_close: bool) -> Result<SubgroupFamily> {
    let set = [spec.subgroups.is_some(), spec.minimal.is_some(), spec.conjugacy_class_of.is_some()];
    if set.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::InvalidSpec(
            "family needs exactly one of subgroups, minimal, conjugacy_class_of".into(),
        ));
    }
    let family = if let Some(lists) = &spec.subgroups {
        lists
            .iter()
            .map(|l| Subgroup::new(group, l.iter().copied()))
            .collect::<Result<SubgroupFamily>>()?
    } else if let Some(minimal) = spec.minimal {
        if !minimal {
            return Err(Error::InvalidSpec("\"minimal\" must be true".into()));
        }
        minimal_subgroups(group)
    } else {
        let gens = spec.conjugacy_class_of.as_deref().unwrap_or_default();
        let x = subgroup_generated(group, gens)?;
        conjugation_closure(group, [&x])
    };
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.is_conjugation_invariant(group) {
        return Ok(family);
    }
    if !auto_close {
        return Err(Error::NotInvariant);
    }
    let closed = conjugation_closure(group, family.members());
    log::warn!(
        "family of {} subgroups is not conjugation invariant; using its closure ({} subgroups)",
        family.len(),
        closed.len()
    );
    Ok(closed)
}
