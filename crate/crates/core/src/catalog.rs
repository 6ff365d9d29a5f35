//! Descriptor files and the built-in catalog.
//!
//! Files are JSON with exact integers only. Field names are fixed; unknown
//! fields are rejected with the path of the offending value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{l_series, multiplicative_sequence, Monomial, Partition};
use crate::equivariant::{
    EquivariantError, FixedComponentDescriptor, RotationDatum, S1ManifoldDescriptor,
};
use crate::genera::{GenusError, ManifoldDescriptor};
use crate::involution::{InvolutionError, SigmaComponentDescriptor};
use crate::ring::rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("bad key at `{path}`: {message}")]
    Key { path: String, message: String },
    #[error("manifold `{name}`: signature {given} disagrees with the L-genus {computed}")]
    SignatureMismatch {
        name: String,
        given: i64,
        computed: String,
    },
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub name: String,
    pub dimension: u32,
    pub spin: bool,
    pub pontryagin_numbers: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology_vanishing_r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1_action: Option<ActionFile>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub lifts_to_spin: bool,
    pub fixed_components: Vec<ComponentFile>,
    /// Fixed components of `σ = -1 ∈ S¹`, optional.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_fixed_components: Option<Vec<SigmaComponentFile>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub name: String,
    pub dimension: u32,
    pub orientation_sign: i64,
    pub rotation_numbers: Vec<RotationFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mixed_char_numbers: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RotationFile {
    pub k: i64,
    pub multiplicity: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SigmaComponentFile {
    pub name: String,
    pub dimension: u32,
    pub normal_rank: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub euler_class_zero: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mixed_char_numbers: BTreeMap<String, i64>,
}

/// A parsed descriptor, with or without a circle action.
#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    Plain(ManifoldDescriptor),
    Action(S1ManifoldDescriptor),
}

impl Descriptor {
    pub fn manifold(&self) -> &ManifoldDescriptor {
        match self {
            Descriptor::Plain(m) => m,
            Descriptor::Action(a) => &a.underlying,
        }
    }

    pub fn action(&self) -> Option<&S1ManifoldDescriptor> {
        match self {
            Descriptor::Plain(_) => None,
            Descriptor::Action(a) => Some(a),
        }
    }

    pub fn name(&self) -> &str {
        &self.manifold().name
    }
}

fn monomials(
    path: &str,
    keys: &BTreeMap<String, i64>,
) -> Result<BTreeMap<Monomial, i64>, CatalogError> {
    keys.iter()
        .map(|(k, v)| {
            let m = k.parse::<Monomial>().map_err(|e| CatalogError::Key {
                path: format!("{path}.{k}"),
                message: e.to_string(),
            })?;
            Ok((m, *v))
        })
        .collect()
}

fn from_file(f: DescriptorFile) -> Result<Descriptor, CatalogError> {
    let mut pontryagin_numbers = BTreeMap::new();
    for (k, v) in &f.pontryagin_numbers {
        let p = k.parse::<Partition>().map_err(|e| CatalogError::Key {
            path: format!("pontryagin_numbers.{k}"),
            message: e.to_string(),
        })?;
        pontryagin_numbers.insert(p, *v);
    }
    let m = ManifoldDescriptor {
        name: f.name,
        dim: f.dimension,
        spin: f.spin,
        pontryagin_numbers,
        signature: f.signature,
        cohomology_vanishing_r: f.cohomology_vanishing_r,
    };
    m.validate()?;
    check_signature(&m)?;
    let Some(action) = f.s1_action else {
        return Ok(Descriptor::Plain(m));
    };
    let components = action
        .fixed_components
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(FixedComponentDescriptor {
                mixed_char_numbers: monomials(
                    &format!("s1_action.fixed_components[{i}].mixed_char_numbers"),
                    &c.mixed_char_numbers,
                )?,
                name: c.name,
                dim: c.dimension,
                rotation: c
                    .rotation_numbers
                    .iter()
                    .map(|r| RotationDatum {
                        k: r.k,
                        multiplicity: r.multiplicity,
                    })
                    .collect(),
                orientation_sign: c.orientation_sign,
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    let sigma_components = action
        .sigma_fixed_components
        .map(|list| {
            list.into_iter()
                .enumerate()
                .map(|(i, s)| {
                    let path = format!("s1_action.sigma_fixed_components[{i}].mixed_char_numbers");
                    let numbers = monomials(&path, &s.mixed_char_numbers)?;
                    let f = SigmaComponentDescriptor::new(
                        &s.name,
                        s.dimension,
                        s.normal_rank,
                        numbers,
                        s.euler_class_zero,
                    );
                    f.validate(m.dim)?;
                    Ok(f)
                })
                .collect::<Result<Vec<_>, CatalogError>>()
        })
        .transpose()?;
    let a = S1ManifoldDescriptor {
        underlying: m,
        lifts_to_spin: action.lifts_to_spin,
        components,
        sigma_components,
    };
    a.validate()?;
    Ok(Descriptor::Action(a))
}

/// A supplied signature must agree with the L-genus of the Pontryagin numbers.
fn check_signature(m: &ManifoldDescriptor) -> Result<(), CatalogError> {
    let Some(given) = m.signature else {
        return Ok(());
    };
    let computed = if m.dim.is_multiple_of(4) {
        let k = m.dim / 4;
        m.pair(&multiplicative_sequence(&l_series(2 * k as usize), k)[k as usize])
    } else {
        rat(0, 1)
    };
    if computed != rat(given, 1) {
        return Err(CatalogError::SignatureMismatch {
            name: m.name.clone(),
            given,
            computed: computed.to_string(),
        });
    }
    Ok(())
}

pub fn parse_descriptor(bytes: &[u8]) -> Result<Descriptor, CatalogError> {
    let text = std::str::from_utf8(bytes).map_err(|_| CatalogError::Utf8)?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: DescriptorFile =
        serde_path_to_error::deserialize(de).map_err(|e| CatalogError::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
    from_file(file)
}

fn keys_of<K: ToString>(m: &BTreeMap<K, i64>) -> BTreeMap<String, i64> {
    m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn to_file(d: &Descriptor) -> DescriptorFile {
    let m = d.manifold();
    DescriptorFile {
        name: m.name.clone(),
        dimension: m.dim,
        spin: m.spin,
        pontryagin_numbers: keys_of(&m.pontryagin_numbers),
        signature: m.signature,
        cohomology_vanishing_r: m.cohomology_vanishing_r,
        s1_action: d.action().map(|a| ActionFile {
            lifts_to_spin: a.lifts_to_spin,
            fixed_components: a
                .components
                .iter()
                .map(|c| ComponentFile {
                    name: c.name.clone(),
                    dimension: c.dim,
                    orientation_sign: c.orientation_sign,
                    rotation_numbers: c
                        .rotation
                        .iter()
                        .map(|r| RotationFile {
                            k: r.k,
                            multiplicity: r.multiplicity,
                        })
                        .collect(),
                    mixed_char_numbers: keys_of(&c.mixed_char_numbers),
                })
                .collect(),
            sigma_fixed_components: a.sigma_components.as_ref().map(|list| {
                list.iter()
                    .map(|f| SigmaComponentFile {
                        name: f.name.clone(),
                        dimension: f.dim,
                        normal_rank: f.normal_rank,
                        euler_class_zero: f.euler_class_zero,
                        mixed_char_numbers: keys_of(&f.mixed_char_numbers),
                    })
                    .collect()
            }),
        }),
    }
}

/// Canonical text: two-space indented JSON with a trailing newline.
pub fn serialize_descriptor(d: &Descriptor) -> String {
    let mut s =
        serde_json::to_string_pretty(&to_file(d)).expect("descriptor files always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    /// Deliberately corrupted data that must fail rigidity or a verdict.
    pub negative_control: bool,
}

impl CatalogEntry {
    pub fn descriptor(&self) -> Descriptor {
        parse_descriptor(self.source.as_bytes()).expect("catalog entries are valid")
    }
}

macro_rules! entry {
    ($name:literal, $neg:literal) => {
        CatalogEntry {
            name: $name,
            source: include_str!(concat!("../catalog/", $name, ".json")),
            negative_control: $neg,
        }
    };
}

const ENTRIES: &[CatalogEntry] = &[
    entry!("S2_rotation", false),
    entry!("S4_rotation", false),
    entry!("S4_rotation_12", false),
    entry!("K3_type", false),
    entry!("HP2_type", false),
    entry!("HP2_type_action", false),
    entry!("HP2_hp1_action", false),
    entry!("trivial_action_K3", false),
    entry!("trivial_action_HP2", false),
    entry!("S4_rotation_corrupted", true),
    entry!("HP2_type_corrupted", true),
    entry!("K3_fake_action", true),
];

pub fn catalog() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}
