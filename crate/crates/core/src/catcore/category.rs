use std::collections::HashMap;

use crate::report::{Rule, ValidationReport};

use super::CatError;

/// A finite small category given by an explicit composition table.
///
/// Objects and morphisms are addressed by dense indices; the original
/// string identifiers are kept for reporting and serialization.
/// `compose(f, g)` is the composite `f∘g` (first `g`, then `f`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    table: Vec<Option<usize>>,
    identity: Vec<usize>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

/// String-keyed builder for [`FiniteCategory`].
#[derive(Default, Debug, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composition: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, id: impl Into<String>) -> Self {
        self.objects.push(id.into());
        self
    }

    pub fn morphism(mut self, id: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        self.morphisms.push((id.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(mut self, object: impl Into<String>, morphism: impl Into<String>) -> Self {
        self.identities.push((object.into(), morphism.into()));
        self
    }

    /// Records `f∘g = fg`.
    pub fn compose(mut self, f: impl Into<String>, g: impl Into<String>, fg: impl Into<String>) -> Self {
        self.composition.push((f.into(), g.into(), fg.into()));
        self
    }

    pub fn add_object(&mut self, id: impl Into<String>) {
        self.objects.push(id.into());
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) {
        self.morphisms.push((id.into(), src.into(), tgt.into()));
    }

    pub fn add_identity(&mut self, object: impl Into<String>, morphism: impl Into<String>) {
        self.identities.push((object.into(), morphism.into()));
    }

    pub fn add_composite(&mut self, f: impl Into<String>, g: impl Into<String>, fg: impl Into<String>) {
        self.composition.push((f.into(), g.into(), fg.into()));
    }

    pub fn build(self) -> Result<FiniteCategory, CatError> {
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(CatError::DuplicateObject(o.clone()));
            }
        }
        let obj = |id: &str| obj_index.get(id).copied().ok_or_else(|| CatError::UnknownObject(id.to_string()));

        let mut mor_index = HashMap::new();
        let mut morphisms = Vec::with_capacity(self.morphisms.len());
        let mut src = Vec::with_capacity(self.morphisms.len());
        let mut tgt = Vec::with_capacity(self.morphisms.len());
        for (i, (id, s, t)) in self.morphisms.iter().enumerate() {
            if mor_index.insert(id.clone(), i).is_some() {
                return Err(CatError::DuplicateMorphism(id.clone()));
            }
            morphisms.push(id.clone());
            src.push(obj(s)?);
            tgt.push(obj(t)?);
        }
        let mor = |id: &str| mor_index.get(id).copied().ok_or_else(|| CatError::UnknownMorphism(id.to_string()));

        let mut identity: Vec<Option<usize>> = vec![None; self.objects.len()];
        for (o, m) in &self.identities {
            let (o, m) = (obj(o)?, mor(m)?);
            if identity[o].is_some_and(|prev| prev != m) {
                return Err(CatError::ConflictingIdentity(self.objects[o].clone()));
            }
            identity[o] = Some(m);
        }
        let identity = identity
            .into_iter()
            .enumerate()
            .map(|(o, m)| m.ok_or_else(|| CatError::MissingIdentity(self.objects[o].clone())))
            .collect::<Result<Vec<_>, _>>()?;

        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for (f, g, fg) in &self.composition {
            let (fi, gi, fgi) = (mor(f)?, mor(g)?, mor(fg)?);
            match table[fi * n + gi] {
                Some(prev) if prev != fgi => {
                    return Err(CatError::ConflictingComposition(f.clone(), g.clone()));
                }
                _ => table[fi * n + gi] = Some(fgi),
            }
        }

        Ok(FiniteCategory {
            objects: self.objects,
            morphisms,
            src,
            tgt,
            table,
            identity,
            obj_index,
            mor_index,
        })
    }
}

impl FiniteCategory {
    pub fn builder() -> CategoryBuilder {
        CategoryBuilder::new()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = usize> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = usize> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.morphisms[m]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn obj(&self, id: &str) -> Result<usize, CatError> {
        self.obj_index.get(id).copied().ok_or_else(|| CatError::UnknownObject(id.to_string()))
    }

    pub fn mor(&self, id: &str) -> Result<usize, CatError> {
        self.mor_index.get(id).copied().ok_or_else(|| CatError::UnknownMorphism(id.to_string()))
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f && self.src[f] == self.tgt[f]
    }

    /// The table entry for `f∘g`, if any.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.morphisms.len() + g]
    }

    /// Whether `(f, g)` is a composable pair, i.e. `src(f) = tgt(g)`.
    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.src[f] == self.tgt[g]
    }

    /// Composition table as `(f, g, fg)` name triples in index order.
    pub fn composition_triples(&self) -> Vec<(String, String, String)> {
        let n = self.morphisms.len();
        (0..n)
            .flat_map(|f| (0..n).map(move |g| (f, g)))
            .filter_map(|(f, g)| {
                self.compose(f, g)
                    .map(|fg| (self.morphisms[f].clone(), self.morphisms[g].clone(), self.morphisms[fg].clone()))
            })
            .collect()
    }

    /// Restriction to a morphism subset (kept in index order), the objects it
    /// touches plus `extra_objects`, and their identities. Composites leaving
    /// the subset are dropped.
    pub fn restrict(&self, keep: &[usize], extra_objects: &[usize]) -> Result<FiniteCategory, CatError> {
        let mut keep_flag = vec![false; self.morphisms.len()];
        for &m in keep {
            keep_flag[m] = true;
        }
        let mut obj_flag = vec![false; self.objects.len()];
        for &o in extra_objects {
            obj_flag[o] = true;
        }
        for m in self.morphisms().filter(|&m| keep_flag[m]) {
            obj_flag[self.src[m]] = true;
            obj_flag[self.tgt[m]] = true;
        }
        for o in self.objects().filter(|&o| obj_flag[o]) {
            keep_flag[self.identity[o]] = true;
        }
        let mut b = CategoryBuilder::new();
        for o in self.objects().filter(|&o| obj_flag[o]) {
            b.add_object(self.objects[o].clone());
            b.add_identity(self.objects[o].clone(), self.morphisms[self.identity[o]].clone());
        }
        for m in self.morphisms().filter(|&m| keep_flag[m]) {
            b.add_morphism(
                self.morphisms[m].clone(),
                self.objects[self.src[m]].clone(),
                self.objects[self.tgt[m]].clone(),
            );
        }
        for f in self.morphisms().filter(|&m| keep_flag[m]) {
            for g in self.morphisms().filter(|&m| keep_flag[m]) {
                if let Some(fg) = self.compose(f, g).filter(|&fg| keep_flag[fg]) {
                    b.add_composite(
                        self.morphisms[f].clone(),
                        self.morphisms[g].clone(),
                        self.morphisms[fg].clone(),
                    );
                }
            }
        }
        b.build()
    }

    /// Searches for `g` with `f∘g` and `g∘f` both identities.
    pub fn find_inverse(&self, f: usize) -> Option<usize> {
        self.morphisms().find(|&g| {
            self.compose(f, g) == Some(self.identity[self.tgt[f]])
                && self.compose(g, f) == Some(self.identity[self.src[f]])
        })
    }

    /// Exhaustively checks the category axioms against the table.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new("category");
        let name = |m: usize| self.morphisms[m].as_str();

        for o in self.objects() {
            let id = self.identity[o];
            r.check(
                self.src[id] == o && self.tgt[id] == o,
                Rule::IdentityEndpoints,
                [self.objects[o].as_str(), name(id)],
                || format!("identity of {} must be an endomorphism of {}", self.objects[o], self.objects[o]),
            );
        }

        for f in self.morphisms() {
            for g in self.morphisms() {
                let entry = self.compose(f, g);
                match (self.composable(f, g), entry) {
                    (true, None) => r.push(
                        Rule::Composability,
                        [name(f), name(g)],
                        "composable pair has no composite",
                    ),
                    (false, Some(_)) => r.push(
                        Rule::Composability,
                        [name(f), name(g)],
                        "composite recorded for a non-composable pair",
                    ),
                    _ => {}
                }
                let Some(fg) = entry else { continue };
                r.check(self.src[fg] == self.src[g], Rule::SrcCoherence, [name(f), name(g)], || {
                    format!("src({}) = {} but src({}) = {}", name(fg), self.objects[self.src[fg]], name(g), self.objects[self.src[g]])
                });
                r.check(self.tgt[fg] == self.tgt[f], Rule::TgtCoherence, [name(f), name(g)], || {
                    format!("tgt({}) = {} but tgt({}) = {}", name(fg), self.objects[self.tgt[fg]], name(f), self.objects[self.tgt[f]])
                });
            }
        }

        for f in self.morphisms() {
            let (lu, ru) = (self.identity[self.tgt[f]], self.identity[self.src[f]]);
            r.check(self.compose(lu, f) == Some(f), Rule::UnitLaw, [name(lu), name(f)], || {
                format!("left identity law fails for {}", name(f))
            });
            r.check(self.compose(f, ru) == Some(f), Rule::UnitLaw, [name(f), name(ru)], || {
                format!("right identity law fails for {}", name(f))
            });
        }

        for f in self.morphisms() {
            for g in self.morphisms() {
                for h in self.morphisms() {
                    let left = self.compose(f, g).and_then(|fg| self.compose(fg, h));
                    let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                    r.check(left == right, Rule::Associativity, [name(f), name(g), name(h)], || {
                        format!(
                            "(fg)h = {} but f(gh) = {}",
                            left.map_or("undefined", name),
                            right.map_or("undefined", name)
                        )
                    });
                }
            }
        }
        r
    }
}

/// Precomputed divisibility relation of a category.
#[derive(Clone, Debug)]
pub struct Divisibility {
    n: usize,
    divides: Vec<bool>,
}

impl Divisibility {
    pub fn new(cat: &FiniteCategory) -> Self {
        let n = cat.morphism_count();
        let mut divides = vec![false; n * n];
        for f in 0..n {
            for h in 0..n {
                if let Some(fh) = cat.compose(f, h) {
                    divides[f * n + fh] = true;
                }
            }
        }
        Divisibility { n, divides }
    }

    /// `f | g`: some `h` has `f∘h = g`.
    pub fn divides(&self, f: usize, g: usize) -> bool {
        self.divides[f * self.n + g]
    }

    /// `f` and `g` admit a common multiple.
    pub fn intersects(&self, f: usize, g: usize) -> bool {
        (0..self.n).any(|m| self.divides(f, m) && self.divides(g, m))
    }

    pub fn disjoint(&self, f: usize, g: usize) -> bool {
        !self.intersects(f, g)
    }
}

impl FiniteCategory {
    pub fn divides(&self, f: usize, g: usize) -> bool {
        self.morphisms().any(|h| self.compose(f, h) == Some(g))
    }

    pub fn intersects(&self, f: usize, g: usize) -> bool {
        self.morphisms().any(|m| self.divides(f, m) && self.divides(g, m))
    }

    pub fn disjoint(&self, f: usize, g: usize) -> bool {
        !self.intersects(f, g)
    }

    pub fn divides_by_name(&self, f: &str, g: &str) -> Result<bool, CatError> {
        Ok(self.divides(self.mor(f)?, self.mor(g)?))
    }

    pub fn intersects_by_name(&self, f: &str, g: &str) -> Result<bool, CatError> {
        Ok(self.intersects(self.mor(f)?, self.mor(g)?))
    }

    pub fn disjoint_by_name(&self, f: &str, g: &str) -> Result<bool, CatError> {
        Ok(self.disjoint(self.mor(f)?, self.mor(g)?))
    }
}
