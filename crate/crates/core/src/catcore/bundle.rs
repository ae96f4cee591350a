use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{is_isomorphism, CatError, CategoryBuilder, CategoryIso, FiniteGroup, FiniteGroupoid};

/// One equivalence class of a group bundle with its group and chosen anchor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleClass {
    pub members: Vec<String>,
    pub anchor: String,
    pub group: FiniteGroup,
}

/// A partition of a finite set with a finite group attached to each class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupBundle {
    pub base: Vec<String>,
    pub classes: Vec<BundleClass>,
}

impl GroupBundle {
    pub fn validate(&self) -> Result<(), CatError> {
        let bad = |m: String| Err(CatError::InvalidBundle(m));
        let mut owner: HashMap<&str, usize> = HashMap::new();
        for x in &self.base {
            if owner.insert(x, usize::MAX).is_some() {
                return bad(format!("`{x}` listed twice in the base"));
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.members.is_empty() {
                return bad(format!("class {i} is empty"));
            }
            for m in &c.members {
                match owner.get_mut(m.as_str()) {
                    None => return bad(format!("`{m}` is not in the base")),
                    Some(o) if *o != usize::MAX => return bad(format!("`{m}` lies in two classes")),
                    Some(o) => *o = i,
                }
            }
            if !c.members.contains(&c.anchor) {
                return bad(format!("anchor `{}` is not in its class", c.anchor));
            }
            let r = c.group.validate();
            if !r.is_valid() {
                return bad(format!("group of class {i}: {}", r.violations[0].detail));
            }
        }
        if let Some((x, _)) = owner.iter().find(|(_, &o)| o == usize::MAX) {
            return bad(format!("`{x}` is not covered by any class"));
        }
        Ok(())
    }
}

fn triple(x: &str, g: &str, y: &str) -> String {
    format!("({x},{g},{y})")
}

/// The groupoid of triples `(x, g, y): y → x` with `(x,g,y)(y,h,z) = (x,gh,z)`.
pub fn from_group_bundle(bundle: &GroupBundle) -> Result<FiniteGroupoid, CatError> {
    bundle.validate()?;
    let mut b = CategoryBuilder::new();
    for x in &bundle.base {
        b.add_object(x.clone());
    }
    let mut inverses = Vec::new();
    for c in &bundle.classes {
        let grp = &c.group;
        let e = grp.identity().expect("validated group");
        for x in &c.members {
            for (gi, g) in grp.elements.iter().enumerate() {
                for y in &c.members {
                    b.add_morphism(triple(x, g, y), y.clone(), x.clone());
                    let ginv = &grp.elements[grp.inverse(gi).expect("validated group")];
                    inverses.push((triple(x, g, y), triple(y, ginv, x)));
                }
            }
            b.add_identity(x.clone(), triple(x, &grp.elements[e], x));
        }
        for x in &c.members {
            for y in &c.members {
                for z in &c.members {
                    for (gi, g) in grp.elements.iter().enumerate() {
                        for (hi, h) in grp.elements.iter().enumerate() {
                            b.add_composite(triple(x, g, y), triple(y, h, z), triple(x, &grp.elements[grp.mul(gi, hi)], z));
                        }
                    }
                }
            }
        }
    }
    let cat = b.build()?;
    FiniteGroupoid::with_inverses(cat, inverses.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

/// Orbit classes with their isotropy groups; the anchor is the first object of each class.
pub fn to_group_bundle(g: &FiniteGroupoid) -> GroupBundle {
    let part = g.orbit_relation();
    GroupBundle {
        base: g.object_names().to_vec(),
        classes: part
            .classes
            .iter()
            .map(|cls| BundleClass {
                members: cls.iter().map(|&o| g.object_name(o).to_string()).collect(),
                anchor: g.object_name(cls[0]).to_string(),
                group: g.isotropy_group(cls[0]),
            })
            .collect(),
    }
}

/// Outcome of `from(to(G))` and `to(from(to(G)))`.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub bundle: GroupBundle,
    pub rebuilt: FiniteGroupoid,
    /// Explicit isomorphism `rebuilt → G`.
    pub iso: CategoryIso,
    pub iso_verified: bool,
    /// `to(from(B)) = B` after stripping the canonical `(x,g,x)` labels.
    pub bundle_fixed: bool,
}

/// Canonical isomorphism `from(to(G)) → G`: `(p, k, q) ↦ γ_p k γ_q⁻¹` with `γ_p` a chosen arrow anchor → p.
pub fn round_trip(g: &FiniteGroupoid) -> Result<RoundTrip, CatError> {
    let bundle = to_group_bundle(g);
    let rebuilt = from_group_bundle(&bundle)?;
    let mut mor = vec![usize::MAX; rebuilt.morphism_count()];
    for c in &bundle.classes {
        let anchor = g.obj(&c.anchor)?;
        let gamma: HashMap<&str, usize> = c
            .members
            .iter()
            .map(|p| {
                let po = g.obj(p)?;
                g.arrow(anchor, po)
                    .map(|a| (p.as_str(), a))
                    .ok_or_else(|| CatError::InvalidGroupoid(format!("no arrow {} → {p}", c.anchor)))
            })
            .collect::<Result<_, CatError>>()?;
        for p in &c.members {
            for k in &c.group.elements {
                for q in &c.members {
                    let (gp, gq) = (gamma[p.as_str()], gamma[q.as_str()]);
                    let km = g.mor(k)?;
                    let image = g
                        .compose(km, g.inv(gq))
                        .and_then(|x| g.compose(gp, x))
                        .ok_or_else(|| CatError::InvalidGroupoid(format!("cannot compose transport for {}", triple(p, k, q))))?;
                    mor[rebuilt.mor(&triple(p, k, q))?] = image;
                }
            }
        }
    }
    let objects = rebuilt.objects().map(|o| g.obj(rebuilt.object_name(o))).collect::<Result<Vec<_>, _>>()?;
    let iso = CategoryIso { objects, morphisms: mor };
    let iso_verified = is_isomorphism(rebuilt.category(), g.category(), &iso)
        && rebuilt.morphisms().all(|f| iso.morphisms[rebuilt.inv(f)] == g.inv(iso.morphisms[f]));
    let bundle_fixed = same_bundle_up_to_labels(&bundle, &to_group_bundle(&rebuilt));
    Ok(RoundTrip {
        bundle,
        rebuilt,
        iso,
        iso_verified,
        bundle_fixed,
    })
}

/// Compares two bundles over the same base, reading labels `(a,g,a)` in `recovered` as `g`.
pub fn same_bundle_up_to_labels(original: &GroupBundle, recovered: &GroupBundle) -> bool {
    if original.base != recovered.base || original.classes.len() != recovered.classes.len() {
        return false;
    }
    recovered.classes.iter().all(|rc| {
        let members: BTreeSet<&String> = rc.members.iter().collect();
        let Some(oc) = original.classes.iter().find(|oc| oc.members.iter().collect::<BTreeSet<_>>() == members) else {
            return false;
        };
        if oc.anchor != rc.anchor {
            return oc.group.find_isomorphism(&rc.group).is_some();
        }
        let strip: Vec<String> = rc
            .group
            .elements
            .iter()
            .map(|l| {
                l.strip_prefix(&format!("({},", rc.anchor))
                    .and_then(|s| s.strip_suffix(&format!(",{})", rc.anchor)))
                    .unwrap_or(l)
                    .to_string()
            })
            .collect();
        let perm: Option<Vec<usize>> = strip.iter().map(|l| oc.group.elements.iter().position(|e| e == l)).collect();
        let Some(perm) = perm else { return false };
        let n = perm.len();
        n == oc.group.order() && (0..n).all(|a| (0..n).all(|b| perm[rc.group.mul(a, b)] == oc.group.mul(perm[a], perm[b])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::validate_groupoid;

    fn f3_bundle() -> GroupBundle {
        GroupBundle {
            base: vec!["x".into(), "y".into(), "z".into()],
            classes: vec![
                BundleClass {
                    members: vec!["x".into(), "y".into()],
                    anchor: "x".into(),
                    group: FiniteGroup::cyclic(2),
                },
                BundleClass {
                    members: vec!["z".into()],
                    anchor: "z".into(),
                    group: FiniteGroup::trivial(),
                },
            ],
        }
    }

    #[test]
    fn f3_has_nine_morphisms_and_two_orbits() {
        let g = from_group_bundle(&f3_bundle()).unwrap();
        assert_eq!(g.morphism_count(), 9);
        assert!(validate_groupoid(&g).is_valid());
        assert_eq!(g.orbit_relation().classes, vec![vec![0, 1], vec![2]]);
        let iso = g.isotropy_group_by_name("x").unwrap();
        assert!(iso.find_isomorphism(&FiniteGroup::cyclic(2)).is_some());
    }

    #[test]
    fn round_trip_on_bundle_groupoid() {
        let g = from_group_bundle(&f3_bundle()).unwrap();
        let rt = round_trip(&g).unwrap();
        assert!(rt.iso_verified);
        assert!(rt.bundle_fixed);
    }

    #[test]
    fn singleton_trivial_bundle() {
        let b = GroupBundle {
            base: vec!["x".into()],
            classes: vec![BundleClass {
                members: vec!["x".into()],
                anchor: "x".into(),
                group: FiniteGroup::trivial(),
            }],
        };
        let g = from_group_bundle(&b).unwrap();
        assert_eq!(g.morphism_count(), 1);
        assert!(g.is_identity(0));
    }

    #[test]
    fn overlapping_classes_rejected() {
        let mut b = f3_bundle();
        b.classes[1].members.push("x".into());
        assert!(matches!(from_group_bundle(&b), Err(CatError::InvalidBundle(_))));
    }
}
