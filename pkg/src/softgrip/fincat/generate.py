"""Random finite categories built by closure, and corruptions of them."""
import itertools

from .core import FinCat, preorder_category


def random_preorder(rng, n_objects, density=0.3):
    objs = list(range(n_objects))
    rel = [(i, j) for i in objs for j in objs if i != j and rng.random() < density]
    return preorder_category(objs, rel, name="preorder")


def random_concrete(rng, n_objects, n_generators, max_set=3, max_arrows=24):
    """Category of functions between small finite sets, generated and closed.

    Objects are ``0..n_objects-1`` standing for sets of random size in
    ``1..max_set``; arrows are ``(dom, cod, table)`` with ``table`` a
    function as a tuple. Returns None if closure exceeds ``max_arrows``.
    """
    sizes = [int(rng.integers(1, max_set + 1)) for _ in range(n_objects)]
    arrows = {(x, x, tuple(range(sizes[x]))) for x in range(n_objects)}
    for _ in range(n_generators):
        x, y = (int(v) for v in rng.integers(0, n_objects, size=2))
        arrows.add((x, y, tuple(int(v) for v in rng.integers(0, sizes[y], size=sizes[x]))))
    frontier = set(arrows)
    while frontier:
        new = set()
        for f in arrows:
            for g in arrows:
                if f[1] == g[0] and (f in frontier or g in frontier):
                    h = (f[0], g[1], tuple(g[2][i] for i in f[2]))
                    if h not in arrows:
                        new.add(h)
        if len(arrows) + len(new) > max_arrows:
            return None
        arrows |= new
        frontier = new
    table = {a: (a[0], a[1]) for a in arrows}
    comp = {}
    for f in arrows:
        for g in arrows:
            if f[1] == g[0]:
                comp[(g, f)] = (f[0], g[1], tuple(g[2][i] for i in f[2]))
    identity = {x: (x, x, tuple(range(sizes[x]))) for x in range(n_objects)}
    return FinCat(range(n_objects), table, comp, identity, name="concrete")


def random_category(rng, max_objects=4, max_arrows=24):
    """A valid category, from one of the closure constructions."""
    while True:
        n = int(rng.integers(1, max_objects + 1))
        if rng.random() < 0.35:
            return random_preorder(rng, n, density=float(rng.uniform(0.1, 0.8)))
        c = random_concrete(rng, n, int(rng.integers(0, 4)), max_arrows=max_arrows)
        if c is not None:
            return c


MUTATIONS = ("drop-composite", "retype-composite", "break-identity", "add-illegal", "break-unit")


def mutate(c, rng, kind=None):
    """Single corruption of ``c`` that always violates a law.

    Returns ``(kind, corrupted)`` or None when ``kind`` does not apply to ``c``.
    """
    kind = kind or MUTATIONS[int(rng.integers(len(MUTATIONS)))]
    arrows, comp, ident = dict(c.arrows), dict(c.compose), dict(c.identity)
    keys = list(comp)
    if kind == "drop-composite":
        del comp[keys[int(rng.integers(len(keys)))]]
    elif kind == "retype-composite":
        options = [
            (k, a) for k in keys for a in arrows
            if arrows[a] != (arrows[k[1]][0], arrows[k[0]][1])
        ]
        if not options:
            return None
        k, a = options[int(rng.integers(len(options)))]
        comp[k] = a
    elif kind == "break-identity":
        options = [(x, a) for x in c.objects for a in c.hom(x, x) if a != ident[x]]
        if not options:
            return None
        x, a = options[int(rng.integers(len(options)))]
        ident[x] = a
    elif kind == "add-illegal":
        options = [
            (g, f) for g, f in itertools.product(arrows, arrows)
            if arrows[f][1] != arrows[g][0]
        ]
        if not options:
            return None
        g, f = options[int(rng.integers(len(options)))]
        comp[(g, f)] = next(iter(arrows))
    elif kind == "break-unit":
        # change f.1 to another arrow of the same type
        options = [
            (f, a) for f, (x, y) in arrows.items() for a in c.hom(x, y) if a != f
        ]
        if not options:
            return None
        f, a = options[int(rng.integers(len(options)))]
        comp[(f, ident[arrows[f][0]])] = a
    else:
        raise ValueError(f"unknown mutation {kind!r}")
    return kind, FinCat(c.objects, arrows, comp, ident, name=f"{c.name}~{kind}")


def relabel(c, rng):
    """Isomorphic copy of ``c`` with shuffled object and arrow ids."""
    objs = list(c.objects)
    perm = rng.permutation(len(objs))
    omap = {x: f"o{int(perm[i])}" for i, x in enumerate(objs)}
    arr = list(c.arrows)
    aperm = rng.permutation(len(arr))
    amap = {a: f"a{int(aperm[i])}" for i, a in enumerate(arr)}
    order = sorted(objs, key=lambda x: omap[x])
    return FinCat(
        [omap[x] for x in order],
        {amap[a]: (omap[x], omap[y]) for a, (x, y) in c.arrows.items()},
        {(amap[g], amap[f]): amap[h] for (g, f), h in c.compose.items()},
        {omap[x]: amap[i] for x, i in c.identity.items()},
        name=f"{c.name}'",
    )


def inflate(c, x):
    """Equivalent category in which ``x`` gains an isomorphic twin ``(x, 1)``.

    Objects are ``(y, k)`` with ``k = 1`` only for the twin; an arrow is an
    arrow of ``c`` together with a choice of copies for its endpoints.
    """
    objs = [(y, 0) for y in c.objects] + [(x, 1)]
    copies = {y: [(y, 0)] + ([(y, 1)] if y == x else []) for y in c.objects}
    arrows, comp = {}, {}
    for f, (a, b) in c.arrows.items():
        for s in copies[a]:
            for t in copies[b]:
                arrows[(f, s, t)] = (s, t)
    for (g, f), h in c.compose.items():
        a, b = c.arrows[f]
        d = c.arrows[g][1]
        for s in copies[a]:
            for m in copies[b]:
                for t in copies[d]:
                    comp[((g, m, t), (f, s, m))] = (h, s, t)
    identity = {o: (c.identity[o[0]], o, o) for o in objs}
    return FinCat(objs, arrows, comp, identity, name=f"{c.name}+")
