use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::CategoryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
struct Morphism {
    name: String,
    source: ObjId,
    target: ObjId,
}

/// A finite category given by explicit tables, with a designated family
/// `inner(a) ⊆ hom(a, a)` for every object.
///
/// Identifiers are strings on the outside and dense indices inside. The
/// composition table is stored row by row: the row of `f` lists `f then g`
/// for every `g` leaving the target of `f`.
///
/// Construction checks the tables are well formed (typing, totality);
/// the category laws and the invertibility of inner elements are checked by
/// [`FiniteCategorySpec::validate`], which caches its result.
#[derive(Debug)]
pub struct FiniteCategorySpec {
    objects: Vec<String>,
    object_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, MorId>,
    homs: Vec<Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    position_out: Vec<u32>,
    row_offset: Vec<usize>,
    compose: Vec<MorId>,
    identities: Vec<MorId>,
    inner: Vec<Vec<MorId>>,
    validated: OnceLock<Result<(), CategoryError>>,
}

impl Clone for FiniteCategorySpec {
    fn clone(&self) -> Self {
        FiniteCategorySpec {
            objects: self.objects.clone(),
            object_index: self.object_index.clone(),
            morphisms: self.morphisms.clone(),
            morphism_index: self.morphism_index.clone(),
            homs: self.homs.clone(),
            outgoing: self.outgoing.clone(),
            position_out: self.position_out.clone(),
            row_offset: self.row_offset.clone(),
            compose: self.compose.clone(),
            identities: self.identities.clone(),
            inner: self.inner.clone(),
            validated: self.validated.clone(),
        }
    }
}

/// Incremental construction of a [`FiniteCategorySpec`]. Ids handed out
/// here are the ids of the built spec.
#[derive(Debug, Default)]
pub struct SpecBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, MorId>,
    identities: Vec<Option<MorId>>,
    inner: Vec<Vec<MorId>>,
}

impl SpecBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Result<ObjId, CategoryError> {
        let name = name.into();
        if self.object_index.contains_key(&name) {
            return Err(CategoryError::DuplicateName(name));
        }
        let id = ObjId(self.objects.len() as u32);
        self.object_index.insert(name.clone(), id);
        self.objects.push(name);
        self.identities.push(None);
        self.inner.push(Vec::new());
        Ok(id)
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphism_id(&self, name: &str) -> Result<MorId, CategoryError> {
        self.morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    }

    pub fn add_morphism(
        &mut self,
        name: impl Into<String>,
        source: ObjId,
        target: ObjId,
    ) -> Result<MorId, CategoryError> {
        let name = name.into();
        if self.morphism_index.contains_key(&name) {
            return Err(CategoryError::DuplicateName(name));
        }
        for o in [source, target] {
            if o.index() >= self.objects.len() {
                return Err(CategoryError::UnknownObject(format!("#{}", o.0)));
            }
        }
        let id = MorId(self.morphisms.len() as u32);
        self.morphism_index.insert(name.clone(), id);
        self.morphisms.push(Morphism { name, source, target });
        Ok(id)
    }

    pub fn set_identity(&mut self, object: ObjId, morphism: MorId) -> Result<(), CategoryError> {
        let m = self
            .morphisms
            .get(morphism.index())
            .ok_or_else(|| CategoryError::UnknownMorphism(format!("#{}", morphism.0)))?;
        if m.source != object || m.target != object {
            return Err(CategoryError::IllTyped(format!(
                "identity {} of {} is not an endomorphism of it",
                m.name, self.objects[object.index()]
            )));
        }
        self.identities[object.index()] = Some(morphism);
        Ok(())
    }

    pub fn add_inner(&mut self, object: ObjId, morphism: MorId) -> Result<(), CategoryError> {
        let m = self
            .morphisms
            .get(morphism.index())
            .ok_or_else(|| CategoryError::UnknownMorphism(format!("#{}", morphism.0)))?;
        if m.source != object || m.target != object {
            return Err(CategoryError::IllTyped(format!(
                "inner element {} of {} is not an endomorphism of it",
                m.name, self.objects[object.index()]
            )));
        }
        if !self.inner[object.index()].contains(&morphism) {
            self.inner[object.index()].push(morphism);
        }
        Ok(())
    }

    /// Fills the composition table by calling `compose(f, g)` for every
    /// composable pair; `None` means the composite is missing.
    pub fn build(
        self,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Result<FiniteCategorySpec, CategoryError> {
        let n_obj = self.objects.len();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut position_out = Vec::with_capacity(self.morphisms.len());
        for (i, m) in self.morphisms.iter().enumerate() {
            let id = MorId(i as u32);
            homs[m.source.index() * n_obj + m.target.index()].push(id);
            position_out.push(outgoing[m.source.index()].len() as u32);
            outgoing[m.source.index()].push(id);
        }
        let mut row_offset = Vec::with_capacity(self.morphisms.len() + 1);
        let mut total = 0usize;
        for m in &self.morphisms {
            row_offset.push(total);
            total += outgoing[m.target.index()].len();
        }
        row_offset.push(total);
        let mut table = Vec::with_capacity(total);
        for (i, f) in self.morphisms.iter().enumerate() {
            for &g in &outgoing[f.target.index()] {
                let fg = compose(MorId(i as u32), g).ok_or_else(|| {
                    CategoryError::MissingComposite(format!(
                        "{} then {}",
                        f.name,
                        self.morphisms[g.index()].name
                    ))
                })?;
                let h = self
                    .morphisms
                    .get(fg.index())
                    .ok_or_else(|| CategoryError::UnknownMorphism(format!("#{}", fg.0)))?;
                let gm = &self.morphisms[g.index()];
                if h.source != f.source || h.target != gm.target {
                    return Err(CategoryError::IllTyped(format!(
                        "{} then {} = {} has the wrong source or target",
                        f.name, gm.name, h.name
                    )));
                }
                table.push(fg);
            }
        }
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(o, id)| id.ok_or_else(|| CategoryError::MissingIdentity(self.objects[o].clone())))
            .collect::<Result<_, _>>()?;
        Ok(FiniteCategorySpec {
            objects: self.objects,
            object_index: self.object_index,
            morphisms: self.morphisms,
            morphism_index: self.morphism_index,
            homs,
            outgoing,
            position_out,
            row_offset,
            compose: table,
            identities,
            inner: self.inner,
            validated: OnceLock::new(),
        })
    }
}

impl FiniteCategorySpec {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.index()]
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f.index()].name
    }

    pub fn morphism_id(&self, name: &str) -> Result<MorId, CategoryError> {
        self.morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].target
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.index() * self.objects.len() + b.index()]
    }

    /// Morphisms with source `a`.
    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a.index()]
    }

    /// `f then g`, if the pair is composable.
    #[inline]
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        (self.target(f) == self.source(g)).then(|| self.compose_unchecked(f, g))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, f: MorId, g: MorId) -> MorId {
        self.compose[self.row_offset[f.index()] + self.position_out[g.index()] as usize]
    }

    /// The row of `f`: `f then g` for `g` in `outgoing(target(f))`.
    pub(crate) fn compose_row(&self, f: MorId) -> &[MorId] {
        &self.compose[self.row_offset[f.index()]..self.row_offset[f.index() + 1]]
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a.index()]
    }

    pub fn inner(&self, a: ObjId) -> &[MorId] {
        &self.inner[a.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.source(f).index()] == f
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose_unchecked(f, g) == self.identity(a)
                && self.compose_unchecked(g, f) == self.identity(b)
        })
    }

    pub fn is_invertible(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Checks identity laws, associativity on every composable triple, and
    /// that every inner element is invertible. The result is cached.
    pub fn validate(&self) -> Result<(), CategoryError> {
        self.validated.get_or_init(|| self.check_laws()).clone()
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        for f in self.morphisms() {
            let (a, b) = (self.source(f), self.target(f));
            if self.compose_unchecked(self.identity(a), f) != f
                || self.compose_unchecked(f, self.identity(b)) != f
            {
                return Err(CategoryError::IdentityLaw(self.morphism_name(f).to_string()));
            }
        }
        for f in self.morphisms() {
            let row_f = self.compose_row(f);
            let out_b = self.outgoing(self.target(f));
            for (&g, &fg) in out_b.iter().zip(row_f) {
                let row_g = self.compose_row(g);
                let row_fg = self.compose_row(fg);
                for (j, (&gh, &fg_h)) in row_g.iter().zip(row_fg).enumerate() {
                    if row_f[self.position_out[gh.index()] as usize] != fg_h {
                        let h = self.outgoing(self.target(g))[j];
                        return Err(CategoryError::NotAssociative(format!(
                            "({} then {}) then {} != {} then ({} then {})",
                            self.morphism_name(f),
                            self.morphism_name(g),
                            self.morphism_name(h),
                            self.morphism_name(f),
                            self.morphism_name(g),
                            self.morphism_name(h),
                        )));
                    }
                }
            }
        }
        for a in self.objects() {
            for &h in self.inner(a) {
                if !self.is_invertible(h) {
                    return Err(CategoryError::NonInvertibleInner {
                        object: self.object_name(a).to_string(),
                        morphism: self.morphism_name(h).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The same category with the inner family replaced.
    pub fn with_inner(&self, inner: Vec<Vec<MorId>>) -> Result<FiniteCategorySpec, CategoryError> {
        if inner.len() != self.objects.len() {
            return Err(CategoryError::IllTyped("one inner list per object".into()));
        }
        for (a, list) in inner.iter().enumerate() {
            for &h in list {
                if h.index() >= self.morphisms.len()
                    || self.source(h).index() != a
                    || self.target(h).index() != a
                {
                    return Err(CategoryError::IllTyped(format!(
                        "inner element #{} of {} is not an endomorphism of it",
                        h.0, self.objects[a]
                    )));
                }
            }
        }
        let mut out = self.clone();
        out.inner = inner;
        // the laws do not depend on the inner family, but invertibility does
        out.validated = OnceLock::new();
        if let Some(Ok(())) = self.validated.get() {
            let inner_ok = out.objects().all(|a| out.inner(a).iter().all(|&h| out.is_invertible(h)));
            if inner_ok {
                let _ = out.validated.set(Ok(()));
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> SpecJson {
        let mut homs: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
        for a in self.objects() {
            for b in self.objects() {
                let list = self.hom(a, b);
                if !list.is_empty() {
                    homs.entry(self.object_name(a).to_string())
                        .or_default()
                        .insert(
                            self.object_name(b).to_string(),
                            list.iter().map(|&f| self.morphism_name(f).to_string()).collect(),
                        );
                }
            }
        }
        let mut compose: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for f in self.morphisms() {
            let row: BTreeMap<String, String> = self
                .outgoing(self.target(f))
                .iter()
                .zip(self.compose_row(f))
                .map(|(&g, &fg)| (self.morphism_name(g).to_string(), self.morphism_name(fg).to_string()))
                .collect();
            compose.insert(self.morphism_name(f).to_string(), row);
        }
        SpecJson {
            objects: self.objects.clone(),
            homs,
            compose,
            identities: self
                .objects()
                .map(|a| (self.object_name(a).to_string(), self.morphism_name(self.identity(a)).to_string()))
                .collect(),
            inner: self
                .objects()
                .map(|a| {
                    (
                        self.object_name(a).to_string(),
                        self.inner(a).iter().map(|&h| self.morphism_name(h).to_string()).collect(),
                    )
                })
                .collect(),
        }
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FiniteCategorySpec, CategoryError> {
        let raw: SpecJson = serde_json::from_str(text).map_err(|e| CategoryError::Json(e.to_string()))?;
        Self::from_json_value(&raw)
    }

    pub fn from_json_value(raw: &SpecJson) -> Result<FiniteCategorySpec, CategoryError> {
        let mut b = SpecBuilder::new();
        for o in &raw.objects {
            b.add_object(o.clone())?;
        }
        for src in raw.homs.keys() {
            b.object_id(src)?;
        }
        // morphism ids follow the object list order, then the listed order
        for src in &raw.objects {
            let Some(row) = raw.homs.get(src) else { continue };
            for tgt in row.keys() {
                b.object_id(tgt)?;
            }
            for tgt in &raw.objects {
                if let Some(list) = row.get(tgt) {
                    let (s, t) = (b.object_id(src)?, b.object_id(tgt)?);
                    for name in list {
                        b.add_morphism(name.clone(), s, t)?;
                    }
                }
            }
        }
        for (o, id) in &raw.identities {
            let (o, id) = (b.object_id(o)?, b.morphism_id(id)?);
            b.set_identity(o, id)?;
        }
        for (o, list) in &raw.inner {
            let o = b.object_id(o)?;
            for h in list {
                let h = b.morphism_id(h)?;
                b.add_inner(o, h)?;
            }
        }
        // every table entry must name known morphisms, and nothing extra
        let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
        for (f, row) in &raw.compose {
            let fid = b.morphism_id(f)?;
            for (g, h) in row {
                let gid = b.morphism_id(g)?;
                if b.morphisms[fid.index()].target != b.morphisms[gid.index()].source {
                    return Err(CategoryError::ExtraComposite(format!("{f} then {g}")));
                }
                table.insert((fid, gid), b.morphism_id(h)?);
            }
        }
        b.build(|f, g| table.get(&(f, g)).copied())
    }
}

impl fmt::Display for FiniteCategorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "finite category with {} objects and {} morphisms",
            self.object_count(),
            self.morphism_count()
        )
    }
}

/// The JSON file layout of a [`FiniteCategorySpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub objects: Vec<String>,
    /// `homs[source][target]` lists the morphism identifiers.
    pub homs: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    /// `compose[f][g]` is `f then g`.
    pub compose: BTreeMap<String, BTreeMap<String, String>>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub inner: BTreeMap<String, Vec<String>>,
}
