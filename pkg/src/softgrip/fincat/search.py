"""Isomorphism and equivalence decisions for small finite categories."""
import itertools
from dataclasses import dataclass

from ..exceptions import CapacityError
from .core import (
    FinCat, FunctorMap, NatTrans, check_natural, compose_functors, full_subcategory,
    identity_functor, is_isomorphism,
)

MAX_OBJECTS = 8
MAX_ARROWS = 24
ORACLE_MAX_OBJECTS = 4


def _guard(*cats, max_objects=MAX_OBJECTS, max_arrows=MAX_ARROWS):
    for c in cats:
        if len(c.objects) > max_objects:
            raise CapacityError(
                f"{c!r} has {len(c.objects)} objects (limit {max_objects})", size=len(c.objects)
            )
        if len(c.arrows) > max_arrows:
            raise CapacityError(
                f"{c!r} has {len(c.arrows)} arrows (limit {max_arrows})", size=len(c.arrows)
            )


def _triples(c):
    """For each arrow, the composition triples ``(g, f, g.f)`` it takes part in."""
    by_arrow = {a: [] for a in c.arrows}
    for (g, f), h in c.compose.items():
        t = (g, f, h)
        for a in {g, f, h}:
            by_arrow[a].append(t)
    return by_arrow


def _object_maps(c, d, injective):
    hom_c = {(x, y): len(c.hom(x, y)) for x in c.objects for y in c.objects}
    objs = list(c.objects)

    def extend(assigned, used):
        if len(assigned) == len(objs):
            yield dict(assigned)
            return
        x = objs[len(assigned)]
        for y in d.objects:
            if injective and y in used:
                continue
            if injective:
                # isomorphisms preserve every hom-set size
                ok = len(d.hom(y, y)) == hom_c[(x, x)] and all(
                    len(d.hom(y, assigned[z])) == hom_c[(x, z)]
                    and len(d.hom(assigned[z], y)) == hom_c[(z, x)]
                    for z in assigned
                )
            else:
                ok = all(
                    (hom_c[(x, z)] == 0 or d.hom(y, assigned[z]))
                    and (hom_c[(z, x)] == 0 or d.hom(assigned[z], y))
                    for z in assigned
                ) and (hom_c[(x, x)] == 0 or d.hom(y, y))
            if not ok:
                continue
            assigned[x] = y
            used.add(y)
            yield from extend(assigned, used)
            del assigned[x]
            used.discard(y)

    yield from extend({}, set())


def _arrow_maps(c, d, obj_map, injective):
    triples = _triples(c)
    fixed = {c.identity[x]: d.identity[obj_map[x]] for x in c.objects}
    free = [a for a in c.arrows if a not in fixed]
    # most constrained arrows first
    free.sort(key=lambda a: len(d.hom(obj_map[c.dom(a)], obj_map[c.cod(a)])))

    def consistent(amap, a):
        for g, f, h in triples[a]:
            if g in amap and f in amap and h in amap:
                if d.compose.get((amap[g], amap[f])) != amap[h]:
                    return False
        return True

    for a in fixed:
        if not consistent(fixed, a):
            return

    def extend(i, amap, used):
        if i == len(free):
            yield dict(amap)
            return
        a = free[i]
        for b in d.hom(obj_map[c.dom(a)], obj_map[c.cod(a)]):
            if injective and b in used:
                continue
            amap[a] = b
            if consistent(amap, a):
                used.add(b)
                yield from extend(i + 1, amap, used)
                used.discard(b)
            del amap[a]

    yield from extend(0, dict(fixed), set(fixed.values()))


def functors(c, d, injective=False):
    """Enumerate every functor ``c -> d`` (injective on arrows if requested)."""
    for omap in _object_maps(c, d, injective):
        for amap in _arrow_maps(c, d, omap, injective):
            yield FunctorMap(c, d, omap, amap)


def _inverse(F):
    return FunctorMap(
        F.target, F.source,
        {y: x for x, y in F.obj_map.items()},
        {b: a for a, b in F.arr_map.items()},
    )


def _hom_profile(c):
    return sorted(
        (
            len(c.hom(x, x)),
            sorted(len(c.hom(x, y)) for y in c.objects),
            sorted(len(c.hom(y, x)) for y in c.objects),
        )
        for x in c.objects
    )


def categories_isomorphic(c, d, max_objects=MAX_OBJECTS, max_arrows=MAX_ARROWS):
    """An inverse pair ``(F, G)`` of functors, or None."""
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None
    _guard(c, d, max_objects=max_objects, max_arrows=max_arrows)
    if _hom_profile(c) != _hom_profile(d):
        return None
    for F in functors(c, d, injective=True):
        return F, _inverse(F)
    return None


@dataclass
class Skeleton:
    """Full subcategory on one representative per isomorphism class.

    ``rep[x]`` is the representative of ``x`` and ``to_rep[x]`` an
    isomorphism ``x -> rep[x]`` (the identity on representatives).
    """

    category: FinCat
    rep: dict
    to_rep: dict


def skeleton(c):
    rep, to_rep = {}, {}
    reps = []
    for x in c.objects:
        for r in reps:
            iso = next((f for f in c.hom(x, r) if is_isomorphism(c, f) is not None), None)
            if iso is not None:
                rep[x], to_rep[x] = r, iso
                break
        else:
            reps.append(x)
            rep[x], to_rep[x] = x, c.identity[x]
    sub = full_subcategory(c, reps, name=f"sk({c.name})" if c.name else "")
    return Skeleton(sub, rep, to_rep)


def _collapse(c, sk):
    """Functor ``c -> c`` sending every object to its representative."""
    inv = {x: is_isomorphism(c, a) for x, a in sk.to_rep.items()}
    arr = {}
    for f, (x, y) in c.arrows.items():
        arr[f] = c.compose[(sk.to_rep[y], c.compose[(f, inv[x])])]
    return FunctorMap(c, c, dict(sk.rep), arr)


@dataclass
class EquivalenceWitness:
    """Functors ``F: C -> D``, ``G: D -> C`` with natural isomorphisms
    ``unit: Id_C => G.F`` and ``counit: F.G => Id_D``."""

    F: FunctorMap
    G: FunctorMap
    unit: NatTrans
    counit: NatTrans


def categories_equivalent(c, d, max_objects=MAX_OBJECTS, max_arrows=MAX_ARROWS):
    """Decide equivalence through isomorphism of skeletons.

    Returns an :class:`EquivalenceWitness` or None.
    """
    _guard(c, d, max_objects=max_objects, max_arrows=max_arrows)
    sc, sd = skeleton(c), skeleton(d)
    pair = categories_isomorphic(sc.category, sd.category, max_objects, max_arrows)
    if pair is None:
        return None
    K, Kinv = pair
    # F = incl_D . K . collapse_C, G = incl_C . K^-1 . collapse_D
    pc, pd = _collapse(c, sc), _collapse(d, sd)
    F = FunctorMap(
        c, d,
        {x: K.obj_map[y] for x, y in pc.obj_map.items()},
        {a: K.arr_map[b] for a, b in pc.arr_map.items()},
    )
    G = FunctorMap(
        d, c,
        {x: Kinv.obj_map[y] for x, y in pd.obj_map.items()},
        {a: Kinv.arr_map[b] for a, b in pd.arr_map.items()},
    )
    GF, FG = compose_functors(G, F), compose_functors(F, G)
    unit = NatTrans(identity_functor(c), GF, dict(sc.to_rep))
    counit = NatTrans(FG, identity_functor(d), {y: is_isomorphism(d, sd.to_rep[y]) for y in d.objects})
    return EquivalenceWitness(F, G, unit, counit)


def _natural_iso(F, G):
    """Some natural isomorphism ``F => G``, or None (exhaustive)."""
    c, d = F.source, F.target
    objs = list(c.objects)
    cands = [
        [a for a in d.hom(F.obj_map[x], G.obj_map[x]) if is_isomorphism(d, a) is not None]
        for x in objs
    ]
    if any(not cs for cs in cands):
        return None
    for choice in itertools.product(*cands):
        t = NatTrans(F, G, dict(zip(objs, choice)))
        if not check_natural(t):
            return t
    return None


def brute_force_equivalent(c, d, max_objects=ORACLE_MAX_OBJECTS):
    """Reference decision: search all functor pairs and natural isomorphisms.

    Independent of skeletons; exponential, so limited to tiny categories.
    """
    _guard(c, d, max_objects=max_objects, max_arrows=MAX_ARROWS)
    id_c, id_d = identity_functor(c), identity_functor(d)
    gs = list(functors(d, c))
    for F in functors(c, d):
        for G in gs:
            unit = _natural_iso(id_c, compose_functors(G, F))
            if unit is None:
                continue
            counit = _natural_iso(compose_functors(F, G), id_d)
            if counit is not None:
                return EquivalenceWitness(F, G, unit, counit)
    return None
