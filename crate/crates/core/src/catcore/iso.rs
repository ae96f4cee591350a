use serde::{Deserialize, Serialize};

use super::{CategoryBuilder, FiniteCategory};

/// An explicit isomorphism of finite categories: object and morphism bijections by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryIso {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl CategoryIso {
    /// The isomorphism as name pairs, for reports.
    pub fn named(&self, a: &FiniteCategory, b: &FiniteCategory) -> Vec<(String, String)> {
        self.morphisms
            .iter()
            .enumerate()
            .map(|(m, &n)| (a.morphism_name(m).to_string(), b.morphism_name(n).to_string()))
            .collect()
    }

    pub fn inverse(&self) -> CategoryIso {
        let inv = |v: &[usize]| {
            let mut out = vec![0; v.len()];
            for (i, &j) in v.iter().enumerate() {
                out[j] = i;
            }
            out
        };
        CategoryIso {
            objects: inv(&self.objects),
            morphisms: inv(&self.morphisms),
        }
    }
}

fn is_bijection(v: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    v.len() == n && v.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
}

/// Checks that `iso` is a bijection preserving src, tgt, identities and the full composition table.
pub fn is_isomorphism(a: &FiniteCategory, b: &FiniteCategory, iso: &CategoryIso) -> bool {
    if !is_bijection(&iso.objects, b.object_count()) || !is_bijection(&iso.morphisms, b.morphism_count()) {
        return false;
    }
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return false;
    }
    let (om, mm) = (&iso.objects, &iso.morphisms);
    a.morphisms().all(|f| b.src(mm[f]) == om[a.src(f)] && b.tgt(mm[f]) == om[a.tgt(f)])
        && a.objects().all(|o| mm[a.identity(o)] == b.identity(om[o]))
        && a.morphisms().all(|f| a.morphisms().all(|g| a.compose(f, g).map(|fg| mm[fg]) == b.compose(mm[f], mm[g])))
}

/// Bounded brute-force isomorphism search with degree pruning.
pub fn find_isomorphism(a: &FiniteCategory, b: &FiniteCategory) -> Option<CategoryIso> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let hom = |c: &FiniteCategory, x: usize, y: usize| c.morphisms().filter(|&f| c.src(f) == x && c.tgt(f) == y).count();
    let sig = |c: &FiniteCategory, o: usize| {
        let out = c.morphisms().filter(|&f| c.src(f) == o).count();
        let inn = c.morphisms().filter(|&f| c.tgt(f) == o).count();
        (out, inn, hom(c, o, o))
    };
    let na = a.object_count();
    let mut objects = vec![usize::MAX; na];
    let mut used = vec![false; na];

    fn objects_ok(a: &FiniteCategory, b: &FiniteCategory, objects: &[usize], k: usize, hom: &dyn Fn(&FiniteCategory, usize, usize) -> usize) -> bool {
        (0..=k).all(|x| (0..=k).all(|y| hom(a, x, y) == hom(b, objects[x], objects[y])))
    }

    fn map_morphisms(a: &FiniteCategory, b: &FiniteCategory, objects: &[usize]) -> Option<Vec<usize>> {
        let n = a.morphism_count();
        let mut mm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        // identities are forced
        for o in a.objects() {
            mm[a.identity(o)] = b.identity(objects[o]);
            used[b.identity(objects[o])] = true;
        }
        let order: Vec<usize> = a.morphisms().filter(|&f| !a.is_identity(f)).collect();
        fn consistent(a: &FiniteCategory, b: &FiniteCategory, mm: &[usize]) -> bool {
            a.morphisms().filter(|&f| mm[f] != usize::MAX).all(|f| {
                a.morphisms().filter(|&g| mm[g] != usize::MAX).all(|g| match a.compose(f, g) {
                    Some(fg) if mm[fg] != usize::MAX => b.compose(mm[f], mm[g]) == Some(mm[fg]),
                    Some(_) => b.compose(mm[f], mm[g]).is_some(),
                    None => b.compose(mm[f], mm[g]).is_none(),
                })
            })
        }
        fn go(a: &FiniteCategory, b: &FiniteCategory, objects: &[usize], order: &[usize], k: usize, mm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if k == order.len() {
                return true;
            }
            let f = order[k];
            let (s, t) = (objects[a.src(f)], objects[a.tgt(f)]);
            for cand in b.morphisms() {
                if used[cand] || b.src(cand) != s || b.tgt(cand) != t {
                    continue;
                }
                mm[f] = cand;
                used[cand] = true;
                if consistent(a, b, mm) && go(a, b, objects, order, k + 1, mm, used) {
                    return true;
                }
                used[cand] = false;
                mm[f] = usize::MAX;
            }
            false
        }
        if !consistent(a, b, &mm) {
            return None;
        }
        go(a, b, objects, &order, 0, &mut mm, &mut used).then_some(mm)
    }

    #[allow(clippy::too_many_arguments)]
    fn go_obj(
        a: &FiniteCategory,
        b: &FiniteCategory,
        k: usize,
        objects: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&FiniteCategory, usize) -> (usize, usize, usize),
        hom: &dyn Fn(&FiniteCategory, usize, usize) -> usize,
    ) -> Option<Vec<usize>> {
        if k == a.object_count() {
            return map_morphisms(a, b, objects);
        }
        for cand in b.objects() {
            if used[cand] || sig(a, k) != sig(b, cand) {
                continue;
            }
            objects[k] = cand;
            used[cand] = true;
            if objects_ok(a, b, objects, k, hom) {
                if let Some(mm) = go_obj(a, b, k + 1, objects, used, sig, hom) {
                    return Some(mm);
                }
            }
            used[cand] = false;
        }
        objects[k] = usize::MAX;
        None
    }

    let mm = go_obj(a, b, 0, &mut objects, &mut used, &sig, &hom)?;
    Some(CategoryIso { objects, morphisms: mm })
}

/// Rebuilds `cat` with objects and morphisms listed in the given orders and renamed by `name`.
/// Returns the new category and the isomorphism old → new.
pub fn relabel(
    cat: &FiniteCategory,
    object_order: &[usize],
    morphism_order: &[usize],
    obj_name: impl Fn(&str) -> String,
    mor_name: impl Fn(&str) -> String,
) -> (FiniteCategory, CategoryIso) {
    let mut b = CategoryBuilder::new();
    let on = |o: usize| obj_name(cat.object_name(o));
    let mn = |m: usize| mor_name(cat.morphism_name(m));
    for &o in object_order {
        b.add_object(on(o));
    }
    for &m in morphism_order {
        b.add_morphism(mn(m), on(cat.src(m)), on(cat.tgt(m)));
    }
    for &o in object_order {
        b.add_identity(on(o), mn(cat.identity(o)));
    }
    for &f in morphism_order {
        for &g in morphism_order {
            if let Some(fg) = cat.compose(f, g) {
                b.add_composite(mn(f), mn(g), mn(fg));
            }
        }
    }
    let new = b.build().expect("relabelling preserves well-formedness");
    let mut objects = vec![0; cat.object_count()];
    for (i, &o) in object_order.iter().enumerate() {
        objects[o] = i;
    }
    let mut morphisms = vec![0; cat.morphism_count()];
    for (i, &m) in morphism_order.iter().enumerate() {
        morphisms[m] = i;
    }
    (new, CategoryIso { objects, morphisms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FiniteCategory {
        CategoryBuilder::new()
            .object("x")
            .object("y")
            .morphism("1x", "x", "x")
            .morphism("1y", "y", "y")
            .morphism("p", "x", "y")
            .identity("x", "1x")
            .identity("y", "1y")
            .compose("1x", "1x", "1x")
            .compose("1y", "1y", "1y")
            .compose("p", "1x", "p")
            .compose("1y", "p", "p")
            .build()
            .unwrap()
    }

    #[test]
    fn relabel_then_find() {
        let c = arrow();
        let (d, iso) = relabel(&c, &[1, 0], &[2, 1, 0], |s| format!("o{s}"), |s| format!("m{s}"));
        assert!(is_isomorphism(&c, &d, &iso));
        let found = find_isomorphism(&c, &d).unwrap();
        assert!(is_isomorphism(&c, &d, &found));
        assert!(is_isomorphism(&d, &c, &found.inverse()));
    }

    #[test]
    fn non_isomorphic_rejected() {
        let c = arrow();
        let discrete = CategoryBuilder::new()
            .object("x")
            .object("y")
            .morphism("1x", "x", "x")
            .morphism("1y", "y", "y")
            .morphism("e", "x", "x")
            .identity("x", "1x")
            .identity("y", "1y")
            .compose("1x", "1x", "1x")
            .compose("1y", "1y", "1y")
            .compose("e", "1x", "e")
            .compose("1x", "e", "e")
            .compose("e", "e", "1x")
            .build()
            .unwrap();
        assert!(find_isomorphism(&c, &discrete).is_none());
    }
}
