//! JSON schemas for categories, groupoids, actions, bundles and representations.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{validate_action, ActionError, ActionSpec, ActionTables};
use crate::catcore::{from_group_bundle, validate_groupoid, CatError, CategoryBuilder, FiniteCategory, FiniteGroupoid, GroupBundle};
use crate::fixtures;
use crate::matrix::ExactMatrix;
use crate::report::{Rule, ValidationReport};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{origin}: malformed JSON: {source}")]
    Json {
        origin: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: {msg}")]
    Schema { origin: String, msg: String },
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `{"objects", "morphisms", "composition", "identities", "inverses"?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    /// Triples `[f, g, fg]` meaning `f∘g = fg`.
    pub composition: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<BTreeMap<String, String>>,
}

impl CategoryJson {
    pub fn from_category(cat: &FiniteCategory) -> Self {
        CategoryJson {
            objects: cat.object_names().to_vec(),
            morphisms: cat
                .morphisms()
                .map(|m| MorphismJson {
                    id: cat.morphism_name(m).into(),
                    src: cat.object_name(cat.src(m)).into(),
                    tgt: cat.object_name(cat.tgt(m)).into(),
                })
                .collect(),
            composition: cat.composition_triples().into_iter().map(|(f, g, fg)| [f, g, fg]).collect(),
            identities: cat
                .objects()
                .map(|o| (cat.object_name(o).to_string(), cat.morphism_name(cat.identity(o)).to_string()))
                .collect(),
            inverses: None,
        }
    }

    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let mut j = Self::from_category(g.category());
        j.inverses = Some(g.inverse_pairs().into_iter().collect());
        j
    }

    pub fn build_category(&self) -> Result<FiniteCategory, CatError> {
        let mut b = CategoryBuilder::new();
        for o in &self.objects {
            b.add_object(o.clone());
        }
        for m in &self.morphisms {
            b.add_morphism(m.id.clone(), m.src.clone(), m.tgt.clone());
        }
        for (o, m) in &self.identities {
            b.add_identity(o.clone(), m.clone());
        }
        for [f, g, fg] in &self.composition {
            b.add_composite(f.clone(), g.clone(), fg.clone());
        }
        b.build()
    }

    /// Requires `inverses`; falls back to discovering them from the table when absent.
    pub fn build_groupoid(&self) -> Result<FiniteGroupoid, CatError> {
        let cat = self.build_category()?;
        match &self.inverses {
            Some(inv) => FiniteGroupoid::with_inverses(cat, inv.iter().map(|(a, b)| (a.as_str(), b.as_str()))),
            None => FiniteGroupoid::from_category(cat),
        }
    }
}

/// A reference to a category document: a path or an inline object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatRef {
    Path(String),
    Inline(CategoryJson),
}

/// `{"groupoid", "category", "phi", "alpha", "alpha_obj"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub groupoid: CatRef,
    pub category: CatRef,
    pub phi: BTreeMap<String, String>,
    pub alpha: Vec<[String; 3]>,
    #[serde(default)]
    pub alpha_obj: Vec<[String; 3]>,
}

impl ActionJson {
    pub fn from_spec(spec: &ActionSpec) -> Self {
        let t = spec.tables();
        ActionJson {
            groupoid: CatRef::Inline(CategoryJson::from_groupoid(&spec.g)),
            category: CatRef::Inline(CategoryJson::from_category(&spec.h)),
            phi: t.phi.into_iter().collect(),
            alpha: t.alpha.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
            alpha_obj: t.alpha_obj.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
        }
    }
}

/// `{"dim", "assign": {"f": matrix}}`, optionally with the category inline or by path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CatRef>,
    pub dim: usize,
    pub assign: BTreeMap<String, ExactMatrix>,
}

/// Header shared by the mutated fixtures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutantHeader {
    pub kind: String,
    pub expect: String,
    #[serde(default)]
    pub witness: Option<Vec<String>>,
}

/// Any loadable document.
#[derive(Clone, Debug)]
pub enum Document {
    Category(FiniteCategory),
    Groupoid(FiniteGroupoid),
    Action(ActionSpec),
    Bundle(GroupBundle),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Groupoid(_) => "groupoid",
            Document::Action(_) => "action",
            Document::Bundle(_) => "bundle",
        }
    }
}

/// Where relative references are resolved: a directory on disk, or the built-in fixtures.
#[derive(Clone, Debug)]
pub struct Resolver {
    pub base: Option<PathBuf>,
}

impl Resolver {
    pub fn builtin() -> Self {
        Resolver { base: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Resolver { base: Some(dir.into()) }
    }

    /// Text of a reference. `@name` always means the fixture directory
    /// (`GCAT_FIXTURES` if set, else the built-in corpus).
    pub fn read(&self, reference: &str) -> Result<(String, Resolver), IoError> {
        if let Some(name) = reference.strip_prefix('@') {
            return match std::env::var_os("GCAT_FIXTURES") {
                Some(dir) => read_file(&Path::new(&dir).join(name)),
                None => builtin(name),
            };
        }
        match &self.base {
            Some(dir) => read_file(&dir.join(reference)),
            None => builtin(reference),
        }
    }

    fn category_ref(&self, r: &CatRef) -> Result<CategoryJson, IoError> {
        match r {
            CatRef::Inline(c) => Ok(c.clone()),
            CatRef::Path(p) => {
                let (text, _) = self.read(p)?;
                parse_json(&text, p)
            }
        }
    }

    pub fn action(&self, a: &ActionJson) -> Result<ActionSpec, IoError> {
        let g = self.category_ref(&a.groupoid)?.build_groupoid()?;
        let h = self.category_ref(&a.category)?.build_category()?;
        let tables = ActionTables {
            phi: a.phi.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            alpha: a.alpha.iter().map(|[x, y, z]| (x.clone(), y.clone(), z.clone())).collect(),
            alpha_obj: a.alpha_obj.iter().map(|[x, y, z]| (x.clone(), y.clone(), z.clone())).collect(),
        };
        Ok(ActionSpec::from_tables(g, h, &tables)?)
    }

    pub fn rep_category(&self, r: &RepJson) -> Result<Option<FiniteCategory>, IoError> {
        r.category.as_ref().map(|c| Ok(self.category_ref(c)?.build_category()?)).transpose()
    }
}

fn read_file(path: &Path) -> Result<(String, Resolver), IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((text, Resolver::at(base)))
}

fn builtin(name: &str) -> Result<(String, Resolver), IoError> {
    fixtures::text(name).map(|t| (t.to_string(), Resolver::builtin())).ok_or_else(|| IoError::Schema {
        origin: name.to_string(),
        msg: "no such built-in fixture".into(),
    })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|source| IoError::Json {
        origin: origin.to_string(),
        source,
    })
}

/// Parses a document, detecting its kind from `kind` or from the keys present.
pub fn parse_document(text: &str, origin: &str, resolver: &Resolver) -> Result<Document, IoError> {
    let value: serde_json::Value = parse_json(text, origin)?;
    let obj = value.as_object().ok_or_else(|| IoError::Schema {
        origin: origin.into(),
        msg: "top level must be an object".into(),
    })?;
    let kind = match obj.get("kind").and_then(|k| k.as_str()) {
        Some(k) => k.to_string(),
        None if obj.contains_key("groupoid") && obj.contains_key("category") => "action".into(),
        None if obj.contains_key("classes") => "bundle".into(),
        None if obj.contains_key("inverses") => "groupoid".into(),
        None if obj.contains_key("objects") => "category".into(),
        None => {
            return Err(IoError::Schema {
                origin: origin.into(),
                msg: "cannot tell what kind of document this is".into(),
            })
        }
    };
    Ok(match kind.as_str() {
        "category" => Document::Category(parse_json::<CategoryJson>(text, origin)?.build_category()?),
        "groupoid" => Document::Groupoid(parse_json::<CategoryJson>(text, origin)?.build_groupoid()?),
        "action" => Document::Action(resolver.action(&parse_json::<ActionJson>(text, origin)?)?),
        "bundle" => Document::Bundle(parse_json::<GroupBundle>(text, origin)?),
        other => {
            return Err(IoError::Schema {
                origin: origin.into(),
                msg: format!("unknown document kind `{other}`"),
            })
        }
    })
}

pub fn load_document(path: &Path) -> Result<Document, IoError> {
    let (text, resolver) = read_file(path)?;
    parse_document(&text, &path.display().to_string(), &resolver)
}

/// Loads a path, or `@name` from the fixture directory.
pub fn load(reference: &str) -> Result<Document, IoError> {
    if reference.starts_with('@') {
        let (text, resolver) = Resolver::builtin().read(reference)?;
        return parse_document(&text, reference, &resolver);
    }
    load_document(Path::new(reference))
}

pub fn to_pretty_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Runs the validator matching the document kind.
pub fn validate_document(doc: &Document) -> ValidationReport {
    match doc {
        Document::Category(c) => c.validate(),
        Document::Groupoid(g) => validate_groupoid(g),
        Document::Action(a) => validate_action(a),
        Document::Bundle(b) => {
            let mut r = ValidationReport::new("bundle");
            match from_group_bundle(b) {
                Ok(g) => r.absorb_as(Rule::GroupoidInvalid, &validate_groupoid(&g)),
                Err(e) => r.push(Rule::GroupoidInvalid, Vec::<String>::new(), e.to_string()),
            }
            r
        }
    }
}

/// What a mutated fixture was expected to trigger, and whether it did.
#[derive(Clone, Debug, Serialize)]
pub struct MutantOutcome {
    pub name: String,
    pub expect: String,
    pub witness: Option<Vec<String>>,
    pub cited: Vec<String>,
    pub caught: bool,
}

/// Validates a mutated fixture and compares the cited rules (and witness, if given) with its header.
pub fn check_mutant(text: &str, origin: &str, resolver: &Resolver) -> Result<MutantOutcome, IoError> {
    let header: MutantHeader = parse_json(text, origin)?;
    let report = validate_document(&parse_document(text, origin, resolver)?);
    let caught = report.violations.iter().any(|v| {
        v.rule.to_string() == header.expect && header.witness.as_ref().is_none_or(|w| *w == v.witness)
    });
    Ok(MutantOutcome {
        name: origin.to_string(),
        expect: header.expect,
        witness: header.witness,
        cited: report.rules().iter().map(Rule::to_string).collect(),
        caught,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_shipped_mutant_is_caught() {
        let mut n = 0;
        for (name, text) in fixtures::mutants() {
            let o = check_mutant(text, name, &Resolver::builtin()).unwrap();
            assert!(o.caught, "{name}: expected {} at {:?}, cited {:?}", o.expect, o.witness, o.cited);
            n += 1;
        }
        assert!(n >= 10);
    }

    #[test]
    fn clean_fixtures_validate() {
        for name in fixtures::names().filter(|n| !n.starts_with("mutants/")) {
            let r = validate_document(&fixtures::document(name));
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn malformed_json_reports_location() {
        let e = parse_document("{\"objects\": [", "x.json", &Resolver::builtin()).unwrap_err();
        let msg = e.to_string();
        assert!(msg.starts_with("x.json: malformed JSON") && msg.contains("line 1"), "{msg}");
    }
}
