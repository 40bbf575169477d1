//! The JSON vector document shared by every compute verb.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use witt_burnside::{CyclicVector, Flavor, GroupContext, IndexedVector, RingSpec, TruncationSet};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDescriptor {
    Named(String),
    Cyclic { cyclic_trunc: Vec<u64> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub schema_version: u32,
    pub group: GroupDescriptor,
    pub flavor: String,
    pub ring: String,
    pub components: Vec<String>,
    pub labels: Vec<String>,
}

impl VectorFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let file: VectorFile =
            serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Schema(format!(
                "{}: schema_version {} is not supported",
                path.display(),
                file.schema_version
            )));
        }
        if file.labels.len() != file.components.len() {
            return Err(CliError::Schema(format!("{}: labels and components differ in length", path.display())));
        }
        Ok(file)
    }

    pub fn from_indexed(v: &IndexedVector, group: &str) -> Self {
        VectorFile {
            schema_version: SCHEMA_VERSION,
            group: GroupDescriptor::Named(group.to_string()),
            flavor: v.flavor().name().to_string(),
            ring: v.ring().to_string(),
            components: v.to_strings(),
            labels: v.labels(),
        }
    }

    pub fn from_cyclic(v: &CyclicVector) -> Self {
        VectorFile {
            schema_version: SCHEMA_VERSION,
            group: GroupDescriptor::Cyclic { cyclic_trunc: v.truncation().members().to_vec() },
            flavor: v.flavor().name().to_string(),
            ring: v.ring().to_string(),
            components: v.to_strings(),
            labels: v.truncation().labels(),
        }
    }

    /// Checks the declared ring against the accepted rings, the first being the
    /// `--ring` flag; there is no coercion.
    fn ring_matching(&self, rings: &[Arc<RingSpec>]) -> Result<Arc<RingSpec>, CliError> {
        let declared = RingSpec::parse(&self.ring)?;
        rings
            .iter()
            .find(|r| ***r == declared)
            .cloned()
            .ok_or_else(|| CliError::Schema(format!("file ring {} disagrees with --ring {}", self.ring, rings[0])))
    }

    fn flavor_matching(&self, expected: Option<Flavor>) -> Result<Flavor, CliError> {
        let f = Flavor::parse(&self.flavor)?;
        match expected {
            Some(e) if e != f => Err(CliError::Schema(format!("expected a {e} vector, file holds {f}"))),
            _ => Ok(f),
        }
    }

    /// Interprets the document over `ctx`, whose descriptor is `descriptor`.
    /// `rings` lists the accepted coefficient rings, `--ring` first.
    pub fn to_indexed(
        &self,
        ctx: &Arc<GroupContext>,
        descriptor: &str,
        rings: &[Arc<RingSpec>],
        flavor: Option<Flavor>,
    ) -> Result<IndexedVector, CliError> {
        match &self.group {
            GroupDescriptor::Named(g) if g == descriptor => {}
            g => return Err(CliError::Schema(format!("file group {g:?} disagrees with {descriptor}"))),
        }
        if self.labels != ctx.labels() {
            return Err(CliError::Schema(format!("labels {:?} do not match class order {:?}", self.labels, ctx.labels())));
        }
        let ring = self.ring_matching(rings)?;
        let f = self.flavor_matching(flavor)?;
        let comps: Vec<&str> = self.components.iter().map(String::as_str).collect();
        Ok(IndexedVector::parse(ctx, f, &ring, &comps)?)
    }

    pub fn to_cyclic(
        &self,
        trunc: &Arc<TruncationSet>,
        rings: &[Arc<RingSpec>],
        flavor: Option<Flavor>,
    ) -> Result<CyclicVector, CliError> {
        match &self.group {
            GroupDescriptor::Cyclic { cyclic_trunc } if cyclic_trunc == trunc.members() => {}
            g => return Err(CliError::Schema(format!("file group {g:?} disagrees with truncation {:?}", trunc.members()))),
        }
        if self.labels != trunc.labels() {
            return Err(CliError::Schema("labels do not match the sorted truncation set".into()));
        }
        let ring = self.ring_matching(rings)?;
        let f = self.flavor_matching(flavor)?;
        let comps: Vec<&str> = self.components.iter().map(String::as_str).collect();
        Ok(CyclicVector::parse(trunc, f, &ring, &comps)?)
    }
}
