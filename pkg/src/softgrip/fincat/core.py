"""Finite categories stored as explicit composition tables.

Objects and arrows are arbitrary hashable ids. ``compose[(g, f)]`` is
``g . f`` (first ``f``, then ``g``) and must be defined exactly when
``cod(f) == dom(g)``.
"""
from dataclasses import dataclass, field
from types import MappingProxyType

from ..exceptions import StructureError


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.kind} at {self.where}: {self.detail}"


class FinCat:
    """A finite category.

    Parameters
    ----------
    objects : iterable
    arrows : mapping arrow -> (dom, cod)
    compose : mapping (g, f) -> arrow
    identity : mapping object -> arrow
    """

    def __init__(self, objects, arrows, compose, identity, name=""):
        self.objects = tuple(objects)
        self.arrows = MappingProxyType(dict(arrows))
        self.compose = MappingProxyType(dict(compose))
        self.identity = MappingProxyType(dict(identity))
        self.name = name
        self._hom = None

    @classmethod
    def build(cls, objects, arrows=(), compose=(), name=""):
        """Add identities ``("id", x)`` and their unit compositions automatically.

        ``arrows`` lists the non-identity arrows as ``(id, dom, cod)``;
        ``compose`` lists ``(g, f, g.f)`` for non-identity pairs.
        """
        objects = tuple(objects)
        table = {a: (x, y) for a, x, y in arrows}
        identity = {x: ("id", x) for x in objects}
        for x, i in identity.items():
            table[i] = (x, x)
        comp = {(g, f): h for g, f, h in compose}
        for a, (x, y) in table.items():
            comp[(a, identity[x])] = a
            comp[(identity[y], a)] = a
        return cls(objects, table, comp, identity, name)

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def hom(self, x, y):
        if self._hom is None:
            hom = {}
            for a, (d, c) in self.arrows.items():
                hom.setdefault((d, c), []).append(a)
            self._hom = hom
        return self._hom.get((x, y), [])

    def then(self, f, g):
        """``g . f``."""
        return self.compose[(g, f)]

    def composable_pairs(self):
        leaving = {}
        for a, (x, _) in self.arrows.items():
            leaving.setdefault(x, []).append(a)
        for f, (_, y) in self.arrows.items():
            for g in leaving.get(y, ()):
                yield g, f

    def is_identity(self, f):
        d, c = self.arrows[f]
        return d == c and self.identity.get(d) == f

    def __len__(self):
        return len(self.arrows)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCat{label} objects={len(self.objects)} arrows={len(self.arrows)}>"


def _check_structure(c):
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        raise StructureError("duplicate object ids")
    for a, (x, y) in c.arrows.items():
        if x not in objs or y not in objs:
            raise StructureError(f"arrow {a!r} has undeclared endpoint(s) {x!r} -> {y!r}")
    for x, i in c.identity.items():
        if x not in objs:
            raise StructureError(f"identity declared for unknown object {x!r}")
        if i not in c.arrows:
            raise StructureError(f"identity of {x!r} is unknown arrow {i!r}")
    missing = objs - set(c.identity)
    if missing:
        raise StructureError(f"objects without identity: {sorted(map(repr, missing))}")
    for (g, f), h in c.compose.items():
        for a in (g, f, h):
            if a not in c.arrows:
                raise StructureError(f"composition {g!r}.{f!r} = {h!r} mentions unknown arrow {a!r}")


def check_category(c):
    """Return every law violation of ``c`` (empty list when ``c`` is a category).

    Raises
    ------
    StructureError
        Ids that are referenced but never declared.
    """
    _check_structure(c)
    out = []
    for x, i in c.identity.items():
        if c.arrows[i] != (x, x):
            out.append(Violation("identity", (x,), f"{i!r} is not an endomorphism of {x!r}"))
    for (g, f), h in c.compose.items():
        if c.cod(f) != c.dom(g):
            out.append(Violation("ill-defined", (g, f), "composition of non-composable pair"))
        elif c.arrows[h] != (c.dom(f), c.cod(g)):
            out.append(Violation("typing", (g, f), f"{h!r} has type {c.arrows[h]}"))
    for g, f in c.composable_pairs():
        if (g, f) not in c.compose:
            out.append(Violation("missing", (g, f), "composable pair without composite"))
    comp = c.compose
    for f, (x, y) in c.arrows.items():
        right = comp.get((f, c.identity[x]))
        left = comp.get((c.identity[y], f))
        if right != f:
            out.append(Violation("unit", (f, c.identity[x]), f"f.1 = {right!r}"))
        if left != f:
            out.append(Violation("unit", (c.identity[y], f), f"1.f = {left!r}"))
    leaving = {x: [] for x in c.objects}
    for a, (x, _) in c.arrows.items():
        leaving[x].append(a)
    for g, f in c.composable_pairs():
        gf = comp.get((g, f))
        for h in leaving[c.cod(g)]:
            hg = comp.get((h, g))
            if gf is None or hg is None:
                continue
            a = comp.get((h, gf))
            b = comp.get((hg, f))
            if a != b:
                out.append(Violation("assoc", (h, g, f), f"(h.g).f = {b!r} but h.(g.f) = {a!r}"))
    return out


def is_isomorphism(c, f):
    """Inverse of ``f`` if it is invertible, else None."""
    x, y = c.arrows[f]
    for g in c.hom(y, x):
        if c.compose.get((g, f)) == c.identity[x] and c.compose.get((f, g)) == c.identity[y]:
            return g
    return None


class FunctorMap:
    """Object and arrow assignment from ``source`` to ``target``."""

    def __init__(self, source, target, obj_map, arr_map):
        self.source = source
        self.target = target
        self.obj_map = MappingProxyType(dict(obj_map))
        self.arr_map = MappingProxyType(dict(arr_map))

    def __call__(self, item):
        if item in self.arr_map:
            return self.arr_map[item]
        return self.obj_map[item]

    def __eq__(self, other):
        return (
            isinstance(other, FunctorMap)
            and self.source is other.source
            and self.target is other.target
            and dict(self.obj_map) == dict(other.obj_map)
            and dict(self.arr_map) == dict(other.arr_map)
        )

    __hash__ = None

    def __repr__(self):
        return f"<FunctorMap {self.source!r} -> {self.target!r}>"


def identity_functor(c):
    return FunctorMap(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows})


def compose_functors(g, f):
    """``g . f``: apply ``f`` first."""
    return FunctorMap(
        f.source, g.target,
        {x: g.obj_map[y] for x, y in f.obj_map.items()},
        {a: g.arr_map[b] for a, b in f.arr_map.items()},
    )


def check_functor(F):
    """Violations of the three functor conditions (dom/cod, composition, identities)."""
    c, d = F.source, F.target
    out = []
    for x in c.objects:
        if x not in F.obj_map:
            out.append(Violation("object-map", (x,), "unmapped object"))
        elif F.obj_map[x] not in d.identity:
            out.append(Violation("object-map", (x,), f"{F.obj_map[x]!r} not in target"))
    for a in c.arrows:
        if a not in F.arr_map:
            out.append(Violation("arrow-map", (a,), "unmapped arrow"))
        elif F.arr_map[a] not in d.arrows:
            out.append(Violation("arrow-map", (a,), f"{F.arr_map[a]!r} not in target"))
    if out:
        return out
    for a, (x, y) in c.arrows.items():
        if d.arrows[F.arr_map[a]] != (F.obj_map[x], F.obj_map[y]):
            out.append(Violation(
                "dom/cod", (a,),
                f"F({a!r}) : {d.arrows[F.arr_map[a]]} but F(dom), F(cod) = "
                f"{(F.obj_map[x], F.obj_map[y])}",
            ))
    for x in c.objects:
        if F.arr_map[c.identity[x]] != d.identity[F.obj_map[x]]:
            out.append(Violation("identity", (x,), "identity not preserved"))
    for (g, f), h in c.compose.items():
        image = d.compose.get((F.arr_map[g], F.arr_map[f]))
        if image != F.arr_map[h]:
            out.append(Violation("composition", (g, f), f"F(g.f) = {F.arr_map[h]!r}, F(g).F(f) = {image!r}"))
    return out


@dataclass
class NatTrans:
    """Natural transformation ``F => G`` given by one target arrow per source object."""

    F: FunctorMap
    G: FunctorMap
    components: dict = field(default_factory=dict)


def check_natural(t):
    """Arrows ``f: X -> Y`` of the source whose naturality square fails.

    Raises
    ------
    StructureError
        Mismatched functors or a component of the wrong type.
    """
    F, G = t.F, t.G
    if F.source is not G.source or F.target is not G.target:
        raise StructureError("functors of a natural transformation must share source and target")
    c, d = F.source, F.target
    for x in c.objects:
        if x not in t.components:
            raise StructureError(f"missing component at {x!r}")
        comp = t.components[x]
        if comp not in d.arrows or d.arrows[comp] != (F.obj_map[x], G.obj_map[x]):
            raise StructureError(
                f"component at {x!r} must be an arrow {F.obj_map[x]!r} -> {G.obj_map[x]!r}"
            )
    failing = []
    for f, (x, y) in c.arrows.items():
        lhs = d.compose[(t.components[y], F.arr_map[f])]
        rhs = d.compose[(G.arr_map[f], t.components[x])]
        if lhs != rhs:
            failing.append(Violation("naturality", (f,), f"t_Y.F(f) = {lhs!r}, G(f).t_X = {rhs!r}"))
    return failing


def is_natural_isomorphism(t):
    return not check_natural(t) and all(
        is_isomorphism(t.F.target, a) is not None for a in t.components.values()
    )


def full_subcategory(c, objects, name=""):
    keep = [x for x in c.objects if x in set(objects)]
    ks = set(keep)
    arrows = {a: xy for a, xy in c.arrows.items() if xy[0] in ks and xy[1] in ks}
    comp = {(g, f): h for (g, f), h in c.compose.items() if g in arrows and f in arrows}
    return FinCat(keep, arrows, comp, {x: c.identity[x] for x in keep}, name)


def preorder_category(objects, relation, name=""):
    """Thin category of the reflexive-transitive closure of ``relation``.

    The arrow ``x -> y`` is the pair ``(x, y)``.
    """
    objects = tuple(dict.fromkeys(objects))
    index = {x: i for i, x in enumerate(objects)}
    n = len(objects)
    reach = [set([i]) for i in range(n)]
    for x, y in relation:
        reach[index[x]].add(index[y])
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set().union(*(reach[j] for j in reach[i])) - reach[i]
            if extra:
                reach[i] |= extra
                changed = True
    arrows = {(objects[i], objects[j]): (objects[i], objects[j]) for i in range(n) for j in reach[i]}
    comp = {}
    for (x, y) in arrows:
        for z in (objects[k] for k in reach[index[y]]):
            comp[((y, z), (x, y))] = (x, z)
    return FinCat(objects, arrows, comp, {x: (x, x) for x in objects}, name)


def terminal_category():
    return preorder_category(["*"], [], name="terminal")


def discrete_category(n):
    return preorder_category(list(range(n)), [], name=f"discrete{n}")


def indiscrete_category(n):
    objs = list(range(n))
    return preorder_category(objs, [(i, j) for i in objs for j in objs], name=f"indiscrete{n}")
