use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::report::{Rule, ValidationReport};

use super::{CatError, FiniteCategory, FiniteGroup};

/// A finite category together with an explicit inverse map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    cat: FiniteCategory,
    inv: Vec<usize>,
}

impl Deref for FiniteGroupoid {
    type Target = FiniteCategory;

    fn deref(&self) -> &FiniteCategory {
        &self.cat
    }
}

/// A partition of `0..n` into classes, each sorted, classes ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut seen: std::collections::HashMap<usize, usize> = Default::default();
        let mut class_of = vec![0; labels.len()];
        for (i, &l) in labels.iter().enumerate() {
            let c = *seen.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(i);
            class_of[i] = c;
        }
        Partition { classes, class_of }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

impl FiniteGroupoid {
    /// Wraps `cat` with the given inverse assignment (by name). Every morphism must be covered.
    pub fn with_inverses<'a>(cat: FiniteCategory, inverses: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, CatError> {
        let mut inv = vec![usize::MAX; cat.morphism_count()];
        for (f, g) in inverses {
            inv[cat.mor(f)?] = cat.mor(g)?;
        }
        if let Some(m) = inv.iter().position(|&i| i == usize::MAX) {
            return Err(CatError::MissingInverse(cat.morphism_name(m).to_string()));
        }
        Ok(FiniteGroupoid { cat, inv })
    }

    /// Discovers inverses from the composition table.
    pub fn from_category(cat: FiniteCategory) -> Result<Self, CatError> {
        let inv = cat
            .morphisms()
            .map(|f| cat.find_inverse(f).ok_or_else(|| CatError::MissingInverse(cat.morphism_name(f).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroupoid { cat, inv })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn into_category(self) -> FiniteCategory {
        self.cat
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inv[f]
    }

    /// `(name, inverse name)` pairs in index order.
    pub fn inverse_pairs(&self) -> Vec<(String, String)> {
        self.morphisms()
            .map(|f| (self.morphism_name(f).to_string(), self.morphism_name(self.inv[f]).to_string()))
            .collect()
    }

    /// Objects `x ~ y` iff some morphism runs between them.
    pub fn orbit_relation(&self) -> Partition {
        let mut parent: Vec<usize> = self.objects().collect();
        for f in self.morphisms() {
            let (a, b) = (find(&mut parent, self.src(f)), find(&mut parent, self.tgt(f)));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let labels: Vec<usize> = self.objects().map(|o| find(&mut parent, o)).collect();
        Partition::from_labels(&labels)
    }

    /// Morphisms with source and target `x`, in index order.
    pub fn isotropy_morphisms(&self, x: usize) -> Vec<usize> {
        self.morphisms().filter(|&f| self.src(f) == x && self.tgt(f) == x).collect()
    }

    /// The isotropy group at `x`, labelled by morphism names.
    pub fn isotropy_group(&self, x: usize) -> FiniteGroup {
        let elems = self.isotropy_morphisms(x);
        let pos = |m: usize| elems.iter().position(|&e| e == m).expect("isotropy closed under composition");
        FiniteGroup {
            elements: elems.iter().map(|&m| self.morphism_name(m).to_string()).collect(),
            table: elems
                .iter()
                .map(|&a| elems.iter().map(|&b| pos(self.compose(a, b).expect("loops compose"))).collect())
                .collect(),
        }
    }

    pub fn isotropy_group_by_name(&self, x: &str) -> Result<FiniteGroup, CatError> {
        Ok(self.isotropy_group(self.obj(x)?))
    }

    /// Some morphism `x → y` (source `x`, target `y`).
    pub fn arrow(&self, x: usize, y: usize) -> Option<usize> {
        self.morphisms().find(|&f| self.src(f) == x && self.tgt(f) == y)
    }
}

/// Category axioms plus `f∘f⁻¹ = 1`, `f⁻¹∘f = 1` and `(f⁻¹)⁻¹ = f`.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut r = g.cat.validate();
    r.subject = "groupoid".into();
    for f in g.morphisms() {
        let fi = g.inv[f];
        let name = g.morphism_name(f);
        let (lt, ls) = (g.identity(g.tgt(f)), g.identity(g.src(f)));
        let right = g.compose(f, fi);
        r.check(right == Some(lt), Rule::InverseLaw, [name, g.morphism_name(fi)], || {
            format!(
                "{name}∘{} = {}, expected {}",
                g.morphism_name(fi),
                right.map_or("undefined", |m| g.morphism_name(m)),
                g.morphism_name(lt)
            )
        });
        let left = g.compose(fi, f);
        r.check(left == Some(ls), Rule::InverseLaw, [g.morphism_name(fi), name], || {
            format!(
                "{}∘{name} = {}, expected {}",
                g.morphism_name(fi),
                left.map_or("undefined", |m| g.morphism_name(m)),
                g.morphism_name(ls)
            )
        });
        r.check(g.inv[fi] == f, Rule::InverseInvolution, [name], || {
            format!("inv(inv({name})) = {}", g.morphism_name(g.inv[fi]))
        });
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::CategoryBuilder;

    fn pair_groupoid() -> FiniteGroupoid {
        let cat = CategoryBuilder::new()
            .object("a")
            .object("b")
            .morphism("1_a", "a", "a")
            .morphism("1_b", "b", "b")
            .morphism("f", "a", "b")
            .morphism("f'", "b", "a")
            .identity("a", "1_a")
            .identity("b", "1_b")
            .compose("1_a", "1_a", "1_a")
            .compose("1_b", "1_b", "1_b")
            .compose("f", "1_a", "f")
            .compose("1_b", "f", "f")
            .compose("f'", "1_b", "f'")
            .compose("1_a", "f'", "f'")
            .compose("f", "f'", "1_b")
            .compose("f'", "f", "1_a")
            .build()
            .unwrap();
        FiniteGroupoid::from_category(cat).unwrap()
    }

    #[test]
    fn pair_groupoid_valid_single_orbit() {
        let g = pair_groupoid();
        assert!(validate_groupoid(&g).is_valid());
        assert_eq!(g.orbit_relation().classes, vec![vec![0, 1]]);
        assert_eq!(g.isotropy_group(0).order(), 1);
    }

    #[test]
    fn self_inverse_flagged() {
        let g = pair_groupoid();
        let pairs = g.inverse_pairs();
        let mut bad: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        bad[2].1 = "f";
        let g2 = FiniteGroupoid::with_inverses(g.category().clone(), bad).unwrap();
        let r = validate_groupoid(&g2);
        assert!(r.cites(Rule::InverseLaw));
        assert!(r.cites_at(Rule::InverseLaw, &["f", "f"]));
    }

    #[test]
    fn identities_only_split_into_points() {
        let cat = CategoryBuilder::new()
            .object("a")
            .object("b")
            .morphism("1_a", "a", "a")
            .morphism("1_b", "b", "b")
            .identity("a", "1_a")
            .identity("b", "1_b")
            .compose("1_a", "1_a", "1_a")
            .compose("1_b", "1_b", "1_b")
            .build()
            .unwrap();
        let g = FiniteGroupoid::from_category(cat).unwrap();
        assert_eq!(g.orbit_relation().classes, vec![vec![0], vec![1]]);
    }
}
