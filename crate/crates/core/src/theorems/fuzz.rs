use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{validate_action, ActionSpec, ActionTables};
use crate::catcore::{from_group_bundle, relabel, BundleClass, CategoryBuilder, FiniteGroup, FiniteGroupoid, GroupBundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCaps {
    pub max_g: usize,
    pub max_h: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { max_g: 6, max_h: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub id: usize,
    pub seed: u64,
    pub spec: ActionSpec,
}

/// A small category with an action of `Z/n` by automorphisms, given by the action of the generator.
#[derive(Clone, Debug, Default)]
struct Fiber {
    objects: Vec<String>,
    /// `(name, src, tgt)`
    morphisms: Vec<(String, usize, usize)>,
    identities: Vec<usize>,
    composites: Vec<(usize, usize, usize)>,
    /// Generator action on objects and morphisms.
    gen_obj: Vec<usize>,
    gen_mor: Vec<usize>,
}

impl Fiber {
    fn append(&mut self, other: Fiber) {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        self.objects.extend(other.objects);
        self.morphisms.extend(other.morphisms.into_iter().map(|(n, s, t)| (n, s + no, t + no)));
        self.identities.extend(other.identities.into_iter().map(|m| m + nm));
        self.composites.extend(other.composites.into_iter().map(|(f, g, fg)| (f + nm, g + nm, fg + nm)));
        self.gen_obj.extend(other.gen_obj.into_iter().map(|o| o + no));
        self.gen_mor.extend(other.gen_mor.into_iter().map(|m| m + nm));
    }

    fn power(map: &[usize], start: usize, k: usize) -> usize {
        (0..k).fold(start, |x, _| map[x])
    }
}

/// A preorder on up to three objects, invariant under a permutation of order dividing `n`.
fn thin_component(rng: &mut impl Rng, n: usize, tag: usize) -> Fiber {
    let c = rng.gen_range(1..=3usize);
    let mut sigma: Vec<usize> = (0..c).collect();
    if n.is_multiple_of(2) && c >= 2 && rng.gen_bool(0.5) {
        sigma.swap(0, 1);
    } else if n.is_multiple_of(3) && c == 3 && rng.gen_bool(0.5) {
        sigma = vec![1, 2, 0];
    }
    let mut le = vec![vec![false; c]; c];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..c {
        for j in 0..c {
            if i != j && rng.gen_bool(0.4) {
                let (mut a, mut b) = (i, j);
                for _ in 0..n {
                    le[a][b] = true;
                    a = sigma[a];
                    b = sigma[b];
                }
            }
        }
    }
    for k in 0..c {
        for i in 0..c {
            for j in 0..c {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut f = Fiber {
        objects: (0..c).map(|i| format!("o{tag}{i}")).collect(),
        gen_obj: sigma.clone(),
        ..Fiber::default()
    };
    let mut index = vec![vec![usize::MAX; c]; c];
    for i in 0..c {
        for j in 0..c {
            if le[i][j] {
                index[i][j] = f.morphisms.len();
                let name = if i == j { format!("1_{tag}{i}") } else { format!("t{tag}:{i}{j}") };
                f.morphisms.push((name, i, j));
            }
        }
    }
    f.identities = (0..c).map(|i| index[i][i]).collect();
    for i in 0..c {
        for j in 0..c {
            for k in 0..c {
                if le[i][j] && le[j][k] {
                    // (j -> k) after (i -> j)
                    f.composites.push((index[j][k], index[i][j], index[i][k]));
                }
            }
        }
    }
    f.gen_mor = f.morphisms.iter().map(|&(_, s, t)| index[sigma[s]][sigma[t]]).collect();
    f
}

/// `Z/m` on one object, with the generator of `Z/n` acting by inversion when `flip` (needs `n` even).
fn cyclic_component(m: usize, flip: bool, tag: usize) -> Fiber {
    Fiber {
        objects: vec![format!("o{tag}0")],
        morphisms: (0..m).map(|r| (if r == 0 { format!("1_{tag}0") } else { format!("c{tag}:{r}") }, 0, 0)).collect(),
        identities: vec![0],
        composites: (0..m).flat_map(|a| (0..m).map(move |b| (a, b, (a + b) % m))).collect(),
        gen_obj: vec![0],
        gen_mor: (0..m).map(|r| if flip { (m - r) % m } else { r }).collect(),
    }
}

fn random_fiber(rng: &mut impl Rng, n: usize) -> Fiber {
    let mut f = Fiber::default();
    for tag in 0..rng.gen_range(1..=2) {
        let comp = if rng.gen_bool(0.65) {
            thin_component(rng, n, tag)
        } else {
            let m = rng.gen_range(2..=3);
            cyclic_component(m, n.is_multiple_of(2) && rng.gen_bool(0.5), tag)
        };
        f.append(comp);
    }
    f
}

/// Draws one valid action with `|G| ≤ max_g` and `|H| ≤ max_h`.
///
/// `G` is a random group bundle of cyclic groups. Over the anchor of each class sits a
/// fibre category with an action of the isotropy group; the other fibres are copies, and
/// `(p, k, q)` sends `q.m` to `p.(k·m)`. Sometimes arrows are added between objects over
/// different units, which makes the action non-regular.
pub fn random_instance(rng: &mut impl Rng, caps: SizeCaps) -> ActionSpec {
    // decided once, so that rejection below does not bias towards regular instances
    let bridged = rng.gen_bool(0.35);
    for attempt in 0..2000 {
        if let Some(spec) = try_instance(rng, caps, bridged && attempt < 1000) {
            return spec;
        }
    }
    // caps too tight for anything else: one unit acting on one object
    let h = CategoryBuilder::new().object("o").morphism("1_o", "o", "o").identity("o", "1_o").compose("1_o", "1_o", "1_o").build().expect("point");
    ActionSpec::trivial(h)
}

fn try_instance(rng: &mut impl Rng, caps: SizeCaps, bridged: bool) -> Option<ActionSpec> {
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut room = caps.max_g;
    for _ in 0..rng.gen_range(1..=3usize) {
        let options: Vec<(usize, usize)> = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)].into_iter().filter(|&(m, n)| m * m * n <= room).collect();
        let Some(&(m, n)) = options.choose(rng) else { break };
        room -= m * m * n;
        classes.push((m, n));
    }
    if classes.is_empty() {
        return None;
    }
    let fibers: Vec<Fiber> = classes.iter().map(|&(_, n)| random_fiber(rng, n)).collect();
    let total: usize = classes.iter().zip(&fibers).map(|(&(m, _), f)| m * f.morphisms.len()).sum();
    let units: usize = classes.iter().map(|&(m, _)| m).sum();
    if total + usize::from(bridged) > caps.max_h || (bridged && units < 2) {
        return None;
    }

    let unit = |c: usize, i: usize| format!("x{c}{i}");
    let bundle = GroupBundle {
        base: classes.iter().enumerate().flat_map(|(c, &(m, _))| (0..m).map(move |i| unit(c, i))).collect(),
        classes: classes
            .iter()
            .enumerate()
            .map(|(c, &(m, n))| BundleClass {
                members: (0..m).map(|i| unit(c, i)).collect(),
                anchor: unit(c, 0),
                group: FiniteGroup::cyclic(n),
            })
            .collect(),
    };
    let g = from_group_bundle(&bundle).expect("generated bundle");

    let mut b = CategoryBuilder::new();
    let mut t = ActionTables::default();
    // per object: (name, unit, has a non-identity arrow in, has one out)
    let mut objects: Vec<(String, String, bool, bool)> = Vec::new();
    for (c, (&(m, n), f)) in classes.iter().zip(&fibers).enumerate() {
        for i in 0..m {
            let p = unit(c, i);
            for (o, name) in f.objects.iter().enumerate() {
                let full = format!("{p}.{name}");
                b.add_object(full.clone());
                t.phi.push((full.clone(), p.clone()));
                let has_in = f.morphisms.iter().any(|&(_, s, tg)| tg == o && s != o) || f.morphisms.iter().filter(|&&(_, s, tg)| s == o && tg == o).count() > 1;
                let has_out = f.morphisms.iter().any(|&(_, s, tg)| s == o && tg != o) || f.morphisms.iter().filter(|&&(_, s, tg)| s == o && tg == o).count() > 1;
                objects.push((full, p.clone(), has_in, has_out));
            }
            for (name, s, tg) in &f.morphisms {
                b.add_morphism(format!("{p}.{name}"), format!("{p}.{}", f.objects[*s]), format!("{p}.{}", f.objects[*tg]));
            }
            for (o, &idm) in f.identities.iter().enumerate() {
                b.add_identity(format!("{p}.{}", f.objects[o]), format!("{p}.{}", f.morphisms[idm].0));
            }
            for &(x, y, xy) in &f.composites {
                b.add_composite(format!("{p}.{}", f.morphisms[x].0), format!("{p}.{}", f.morphisms[y].0), format!("{p}.{}", f.morphisms[xy].0));
            }
            for k in 0..n {
                for j in 0..m {
                    let q = unit(c, j);
                    let gname = format!("({p},{k},{q})");
                    for (o, name) in f.objects.iter().enumerate() {
                        let img = Fiber::power(&f.gen_obj, o, k);
                        t.alpha_obj.push((gname.clone(), format!("{q}.{name}"), format!("{p}.{}", f.objects[img])));
                    }
                    for (x, (name, _, _)) in f.morphisms.iter().enumerate() {
                        let img = Fiber::power(&f.gen_mor, x, k);
                        t.alpha.push((gname.clone(), format!("{q}.{name}"), format!("{p}.{}", f.morphisms[img].0)));
                    }
                }
            }
        }
    }

    if bridged {
        let bridges = rng.gen_range(1..=2).min(caps.max_h - total);
        for k in 0..bridges {
            let pairs: Vec<(usize, usize)> = (0..objects.len())
                .flat_map(|u| (0..objects.len()).map(move |v| (u, v)))
                .filter(|&(u, v)| !objects[u].2 && !objects[v].3 && objects[u].1 != objects[v].1)
                .collect();
            // a bridge was asked for; redraw rather than silently fall back to a regular instance
            let Some(&(u, v)) = pairs.choose(rng) else { return None };
            let name = format!("b{k}");
            b.add_morphism(name.clone(), objects[u].0.clone(), objects[v].0.clone());
            b.add_composite(name.clone(), format!("{}.{}", objects[u].1, identity_of(&objects[u].0, &fibers)), name.clone());
            b.add_composite(format!("{}.{}", objects[v].1, identity_of(&objects[v].0, &fibers)), name.clone(), name.clone());
            objects[u].3 = true;
            objects[v].2 = true;
        }
    }
    let h = b.build().ok()?;
    let spec = ActionSpec::from_tables(g, h, &t).ok()?;
    debug_assert!(validate_action(&spec).is_valid(), "{}", validate_action(&spec));
    Some(spec)
}

/// Local name of the identity at a fully qualified object `unit.local`.
fn identity_of(full: &str, fibers: &[Fiber]) -> String {
    let (unit, local) = full.split_once('.').expect("qualified object");
    let c: usize = unit[1..unit.len() - 1].parse().expect("unit name");
    let f = &fibers[c];
    let o = f.objects.iter().position(|x| x == local).expect("fibre object");
    f.morphisms[f.identities[o]].0.clone()
}

/// `budget` instances, each from its own seed drawn from `seed`.
pub fn fuzz_instances(seed: u64, budget: usize, caps: SizeCaps) -> Vec<FuzzInstance> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..budget)
        .map(|id| {
            let s: u64 = master.gen();
            FuzzInstance {
                id,
                seed: s,
                spec: random_instance(&mut ChaCha8Rng::seed_from_u64(s), caps),
            }
        })
        .collect()
}

/// A random finite groupoid with at most `max_morphisms` morphisms, relabelled so that
/// its names and order carry no trace of the bundle it was built from.
pub fn random_groupoid(rng: &mut impl Rng, max_morphisms: usize) -> FiniteGroupoid {
    let groups = [
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::dihedral(3),
    ];
    let mut room = max_morphisms.max(1);
    let mut classes = Vec::new();
    for c in 0..rng.gen_range(1..=4) {
        let options: Vec<(usize, &FiniteGroup)> =
            (1..=3).flat_map(|m| groups.iter().map(move |g| (m, g))).filter(|(m, g)| m * m * g.order() <= room).collect();
        let Some(&(m, grp)) = options.choose(rng) else { break };
        room -= m * m * grp.order();
        classes.push(BundleClass {
            members: (0..m).map(|i| format!("y{c}{i}")).collect(),
            anchor: format!("y{c}0"),
            group: grp.clone(),
        });
    }
    let bundle = GroupBundle {
        base: classes.iter().flat_map(|c| c.members.clone()).collect(),
        classes,
    };
    let g = from_group_bundle(&bundle).expect("generated bundle");
    let mut objs: Vec<usize> = g.objects().collect();
    let mut mors: Vec<usize> = g.morphisms().collect();
    objs.shuffle(rng);
    mors.shuffle(rng);
    let onames: std::collections::HashMap<String, usize> = objs.iter().enumerate().map(|(i, &o)| (g.object_name(o).to_string(), i)).collect();
    let mnames: std::collections::HashMap<String, usize> = mors.iter().enumerate().map(|(i, &m)| (g.morphism_name(m).to_string(), i)).collect();
    let (cat, _) = relabel(g.category(), &objs, &mors, |n| format!("v{}", onames[n]), |n| format!("m{}", mnames[n]));
    FiniteGroupoid::from_category(cat).expect("relabelled groupoid")
}

pub fn fuzz_groupoids(seed: u64, budget: usize, max_morphisms: usize) -> Vec<FiniteGroupoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).map(|_| random_groupoid(&mut rng, max_morphisms)).collect()
}
