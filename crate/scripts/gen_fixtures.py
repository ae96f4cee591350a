#!/usr/bin/env python3
"""Regenerates crates/core/fixtures/ (canonical instances and mutated variants)."""
import copy
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "fixtures")


def category(objects, morphisms, identities, compose):
    """morphisms: list of (id, src, tgt); compose(f, g) -> name or None for composable pairs."""
    comp = []
    for f, fs, _ in morphisms:
        for g, _, gt in morphisms:
            if fs == gt:
                fg = compose(f, g)
                if fg is not None:
                    comp.append([f, g, fg])
    return {
        "objects": objects,
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, s, t in morphisms],
        "composition": comp,
        "identities": identities,
    }


def group_table(elems, mul):
    return {"elements": elems, "table": [[elems.index(mul(a, b)) for b in elems] for a in elems]}


def from_bundle(base, classes):
    """classes: list of (members, elems, mul, inv, unit) -> groupoid json with triples (x,g,y): y -> x."""
    morphisms, ids, inverses = [], {}, {}
    table = {}
    for members, elems, mul, inv, unit in classes:
        for x in members:
            for g in elems:
                for y in members:
                    m = f"({x},{g},{y})"
                    morphisms.append((m, y, x))
                    inverses[m] = f"({y},{inv(g)},{x})"
            ids[x] = f"({x},{unit},{x})"
        for x in members:
            for y in members:
                for z in members:
                    for g in elems:
                        for h in elems:
                            table[(f"({x},{g},{y})", f"({y},{h},{z})")] = f"({x},{mul(g, h)},{z})"
    cat = category(base, morphisms, ids, lambda f, g: table.get((f, g)))
    cat["inverses"] = inverses
    return cat


def pair_groupoid_f1():
    ms = [("1_a", "a", "a"), ("1_b", "b", "b"), ("f", "a", "b"), ("f'", "b", "a")]
    t = {("f", "f'"): "1_b", ("f'", "f"): "1_a"}

    def comp(f, g):
        if f.startswith("1_"):
            return g
        if g.startswith("1_"):
            return f
        return t[(f, g)]

    c = category(["a", "b"], ms, {"a": "1_a", "b": "1_b"}, comp)
    c["inverses"] = {"1_a": "1_a", "1_b": "1_b", "f": "f'", "f'": "f"}
    return c


def cyclic_groupoid(n, obj="u", names=None):
    names = names or [obj] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    ms = [(m, obj, obj) for m in names]
    c = category([obj], ms, {obj: names[0]}, lambda f, g: names[(names.index(f) + names.index(g)) % n])
    c["inverses"] = {m: names[(-k) % n] for k, m in enumerate(names)}
    return c


def units_groupoid(objs):
    c = category(objs, [(o, o, o) for o in objs], {o: o for o in objs}, lambda f, g: f)
    c["inverses"] = {o: o for o in objs}
    return c


def arrow_cat_f2():
    ms = [("1_a", "a", "a"), ("1_b", "b", "b"), ("f", "a", "b")]
    return category(["a", "b"], ms, {"a": "1_a", "b": "1_b"}, lambda f, g: g if f.startswith("1_") else f)


def f4():
    ms = [("1_x", "x", "x"), ("1_y", "y", "y"), ("1_z", "z", "z"), ("p", "y", "x"), ("q", "z", "x")]
    return category(["x", "y", "z"], ms, {"x": "1_x", "y": "1_y", "z": "1_z"}, lambda f, g: g if f.startswith("1_") else f)


def monoid(elems, mul):
    return category(["o"], [(m, "o", "o") for m in elems], {"o": elems[0]}, mul)


def n3():
    def mul(f, g):
        if f == "1":
            return g
        if g == "1":
            return f
        return "z"

    return monoid(["1", "a", "z"], mul)


Z2 = (["0", "1"], lambda a, b: str((int(a) + int(b)) % 2), lambda a: a, "0")
TRIV = (["0"], lambda a, b: "0", lambda a: a, "0")


def f3_bundle():
    return {
        "base": ["x", "y", "z"],
        "classes": [
            {"members": ["x", "y"], "anchor": "x", "group": group_table(["0", "1"], Z2[1])},
            {"members": ["z"], "anchor": "z", "group": group_table(["0"], TRIV[1])},
        ],
    }


def f3_groupoid():
    return from_bundle(["x", "y", "z"], [(["x", "y"],) + Z2, (["z"],) + TRIV])


FLIP_OBJ = {"a": "b", "b": "a"}
FLIP_MOR = {"1_a": "1_b", "1_b": "1_a", "f": "f'", "f'": "f"}


def f3_h():
    ms, objs, ids = [], [], {}
    for p in ["x", "y"]:
        objs += [f"{p}a", f"{p}b"]
        ids[f"{p}a"], ids[f"{p}b"] = f"{p}.1_a", f"{p}.1_b"
        ms += [(f"{p}.1_a", f"{p}a", f"{p}a"), (f"{p}.1_b", f"{p}b", f"{p}b"), (f"{p}.f", f"{p}a", f"{p}b"), (f"{p}.f'", f"{p}b", f"{p}a")]
    objs.append("zc")
    ids["zc"] = "1_zc"
    ms.append(("1_zc", "zc", "zc"))
    f1 = pair_groupoid_f1()
    inner = {(f, g): fg for f, g, fg in f1["composition"]}

    def comp(f, g):
        if f == "1_zc":
            return g
        pf, mf = f.split(".", 1)
        pg, mg = g.split(".", 1)
        return f"{pf}.{inner[(mf, mg)]}"

    c = category(objs, ms, ids, comp)
    c["inverses"] = {m: (m if m == "1_zc" else m.split(".")[0] + "." + f1["inverses"][m.split(".")[1]]) for m, _, _ in ms}
    return c


def f3_action(flip_on=None):
    """alpha_{(p,k,q)} moves the copy over q to the copy over p, flipping when k = 1."""
    g = f3_groupoid()
    alpha, alpha_obj = [], []
    for p in ["x", "y"]:
        for k in ["0", "1"]:
            for q in ["x", "y"]:
                gm = f"({p},{k},{q})"
                flip = k == "1"
                if flip_on == gm:
                    flip = not flip
                for o in ["a", "b"]:
                    alpha_obj.append([gm, f"{q}{o}", f"{p}{FLIP_OBJ[o] if flip else o}"])
                for m in ["1_a", "1_b", "f", "f'"]:
                    alpha.append([gm, f"{q}.{m}", f"{p}.{FLIP_MOR[m] if flip else m}"])
    alpha_obj.append(["(z,0,z)", "zc", "zc"])
    alpha.append(["(z,0,z)", "1_zc", "1_zc"])
    phi = {"xa": "x", "xb": "x", "ya": "y", "yb": "y", "zc": "z"}
    return {"groupoid": "F3.groupoid.json", "category": "F3H.category.json", "phi": phi, "alpha": alpha, "alpha_obj": alpha_obj}, g


def f1_flip():
    alpha = [["u", m, m] for m in FLIP_MOR] + [["g", m, FLIP_MOR[m]] for m in FLIP_MOR]
    alpha_obj = [["u", o, o] for o in FLIP_OBJ] + [["g", o, FLIP_OBJ[o]] for o in FLIP_OBJ]
    return {
        "groupoid": "Z2.groupoid.json",
        "category": "F1.groupoid.json",
        "phi": {"a": "u", "b": "u"},
        "alpha": alpha,
        "alpha_obj": alpha_obj,
    }


def f2_action():
    return {
        "groupoid": "U2.groupoid.json",
        "category": "F2.category.json",
        "phi": {"a": "u1", "b": "u2"},
        "alpha": [["u1", "1_a", "1_a"], ["u2", "1_b", "1_b"]],
        "alpha_obj": [["u1", "a", "a"], ["u2", "b", "b"]],
    }


def dumps(obj, level=0):
    """Indented JSON that keeps flat lists and small records on one line."""
    pad = "  " * (level + 1)
    flat = json.dumps(obj, ensure_ascii=False)
    if not isinstance(obj, (dict, list)) or len(flat) <= 72:
        return flat
    if isinstance(obj, list):
        items = [dumps(v, level + 1) for v in obj]
        return "[\n" + ",\n".join(pad + i for i in items) + "\n" + "  " * level + "]"
    items = [json.dumps(k, ensure_ascii=False) + ": " + dumps(v, level + 1) for k, v in obj.items()]
    return "{\n" + ",\n".join(pad + i for i in items) + "\n" + "  " * level + "}"


def write(name, obj):
    path = os.path.join(OUT, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")


def inline(action, parts):
    a = copy.deepcopy(action)
    a["groupoid"] = parts[a["groupoid"]]
    a["category"] = parts[a["category"]]
    return a


def mutant(kind, expect, body, witness=None, note=""):
    out = {"kind": kind, "expect": expect}
    if witness:
        out["witness"] = witness
    if note:
        out["note"] = note
    out.update(body)
    return out


def main():
    parts = {
        "F1.groupoid.json": pair_groupoid_f1(),
        "Z2.groupoid.json": cyclic_groupoid(2),
        "U2.groupoid.json": units_groupoid(["u1", "u2"]),
        "F2.category.json": arrow_cat_f2(),
        "F3.groupoid.json": f3_groupoid(),
        "F3H.category.json": f3_h(),
        "F4.category.json": f4(),
        "N3.category.json": n3(),
    }
    for k, v in parts.items():
        write(k, v)
    write("F3.bundle.json", f3_bundle())
    write("F1-flip.action.json", f1_flip())
    write("F2.action.json", f2_action())
    f3a, _ = f3_action()
    write("F3.action.json", f3a)

    muts = {}
    c = copy.deepcopy(parts["F1.groupoid.json"])
    del c["inverses"]
    c["composition"] = [[f, g, "1_a" if (f, g) == ("f", "f'") else fg] for f, g, fg in c["composition"]]
    muts["cat-tgt-coherence"] = mutant("category", "tgt-coherence", c, ["f", "f'"], "f∘f' redirected to 1_a")

    c = copy.deepcopy(parts["F4.category.json"])
    c["composition"] = [t for t in c["composition"] if t[:2] != ["p", "1_y"]]
    muts["cat-missing-composite"] = mutant("category", "composability", c, ["p", "1_y"])

    c = copy.deepcopy(parts["F4.category.json"])
    c["composition"].append(["p", "q", "p"])
    muts["cat-extra-composite"] = mutant("category", "composability", c, ["p", "q"])

    bad = {("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "a"}
    c = monoid(["1", "a", "b"], lambda f, g: g if f == "1" else f if g == "1" else bad[(f, g)])
    muts["cat-associativity"] = mutant("category", "associativity", c, ["b", "b", "b"])

    c = monoid(["1", "e"], lambda f, g: {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "1", ("e", "e"): "e"}[(f, g)])
    muts["cat-unit-law"] = mutant("category", "unit-law", c, ["e", "1"])

    c = copy.deepcopy(parts["F4.category.json"])
    c["identities"]["x"] = "p"
    muts["cat-identity-endpoints"] = mutant("category", "identity-endpoints", c, ["x", "p"])

    c = copy.deepcopy(parts["F1.groupoid.json"])
    c["inverses"]["f"] = "f"
    muts["grp-inverse-law"] = mutant("groupoid", "inverse-law", c, ["f", "f"], "inv(f) = f")

    c = cyclic_groupoid(3, names=["e", "g", "g2"])
    c["inverses"]["g2"] = "g2"
    muts["grp-inverse-involution"] = mutant("groupoid", "inverse-involution", c, ["g"])

    a = inline(f1_flip(), parts)
    a["alpha"] = [[g, h, "f" if (g, h) == ("g", "f") else out] for g, h, out in a["alpha"]]
    muts["act-axiom-i"] = mutant("action", "axiom-i", a, ["g", "f"], "alpha_g(f) = f")

    a = inline(f1_flip(), parts)
    a["alpha"] = [[g, h, "f'" if (g, h) == ("u", "f") else out] for g, h, out in a["alpha"]]
    muts["act-axiom-iv"] = mutant("action", "axiom-iv", a, ["u", "f"], "the unit moves f")

    a = inline(f1_flip(), parts)
    a["alpha"] = [t for t in a["alpha"] if t[:2] != ["g", "1_a"]]
    muts["act-alpha-domain"] = mutant("action", "alpha-domain", a, ["g", "1_a"])

    a = inline(f3_action()[0], parts)
    a["alpha_obj"] = [[g, u, "ya" if (g, u) == ("(x,0,y)", "ya") else out] for g, u, out in a["alpha_obj"]]
    muts["act-axiom-iii"] = mutant("action", "axiom-iii", a, ["(x,0,y)", "ya"])

    a = inline(f3_action(flip_on="(x,0,y)")[0], parts)
    muts["act-axiom-v"] = mutant("action", "axiom-v", a, None, "(x,0,y) flips the fibre")

    a = inline(f2_action(), parts)
    a["phi"]["b"] = "u1"
    a["alpha"] = [["u1", "1_a", "1_a"], ["u1", "1_b", "1_b"], ["u1", "f", "f"]]
    a["alpha_obj"] = [["u1", "a", "a"], ["u1", "b", "b"]]
    muts["act-phi-surjective"] = mutant("action", "phi-surjective", a, ["u2"])

    swap = {"1": "1", "a": "z", "z": "a"}
    a = {
        "groupoid": parts["Z2.groupoid.json"],
        "category": parts["N3.category.json"],
        "phi": {"o": "u"},
        "alpha": [["u", m, m] for m in swap] + [["g", m, swap[m]] for m in swap],
        "alpha_obj": [["u", "o", "o"], ["g", "o", "o"]],
    }
    muts["act-axiom-vi"] = mutant("action", "axiom-vi", a, ["g", "a", "a"], "swapping a and z is not a functor")

    for k, v in muts.items():
        write(f"mutants/{k}.json", v)


if __name__ == "__main__":
    main()
