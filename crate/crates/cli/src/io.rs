use std::fs;
use std::path::Path;

use orthoset_lab::hermspace::{raw_subspace_from_json, HermitianSpace, SemilinearMap, Subspace, Vector};
use orthoset_lab::starfields::{SfieldTag, StarField};
use orthoset_lab::suites::{tag_of, Inputs};
use orthoset_lab::{Error, Result};
use serde_json::Value;

/// Raw documents named on the command line.
#[derive(Default)]
pub struct Documents {
    pub space: Option<Value>,
    pub map: Option<Value>,
    pub subspace: Option<Value>,
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

impl Documents {
    pub fn load(space: Option<&Path>, map: Option<&Path>, subspace: Option<&Path>) -> Result<Self> {
        let read = |p: Option<&Path>| p.map(read_json).transpose();
        Ok(Documents {
            space: read(space)?,
            map: read(map)?,
            subspace: read(subspace)?,
        })
    }

    /// The sfield shared by all documents, `None` when there are none.
    pub fn tag(&self) -> Result<Option<SfieldTag>> {
        let mut tag = None;
        for doc in [&self.space, &self.map, &self.subspace].into_iter().flatten() {
            let t = tag_of(doc)?;
            if tag.is_some_and(|s| s != t) {
                return Err(Error::parse("input files use different sfields"));
            }
            tag = Some(t);
        }
        Ok(tag)
    }

    pub fn inputs<F: StarField>(&self) -> Result<Inputs<F>> {
        let map = self.map.as_ref().map(SemilinearMap::from_json).transpose()?;
        let adjoint = self
            .map
            .as_ref()
            .and_then(|m| m.get("adjoint"))
            .map(SemilinearMap::from_json)
            .transpose()?;
        Ok(Inputs {
            space: self.space.as_ref().map(HermitianSpace::from_json).transpose()?,
            map,
            adjoint,
            subspace: self.subspace.as_ref().map(Subspace::from_json).transpose()?,
        })
    }

    pub fn need_map(&self) -> Result<&Value> {
        self.map.as_ref().ok_or_else(|| Error::parse("this construction needs --map"))
    }

    pub fn need_subspace(&self) -> Result<&Value> {
        self.subspace
            .as_ref()
            .ok_or_else(|| Error::parse("this construction needs --subspace"))
    }
}

/// Space and vectors of a subspace file in file order, plus its optional
/// extra `"vector"`.
pub fn raw_subspace<F: StarField>(v: &Value) -> Result<(HermitianSpace<F>, Vec<Vector<F>>, Option<Vector<F>>)> {
    let (space, vectors) = raw_subspace_from_json::<F>(v)?;
    let extra = v.get("vector").map(Vector::from_json).transpose()?;
    if let Some(u) = &extra {
        space.check_vector(u).map_err(|e| Error::parse(e.to_string()))?;
    }
    Ok((space, vectors, extra))
}
