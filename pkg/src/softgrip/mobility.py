"""Categories of mobility of small, fully enumerable gripper instances.

A :class:`MobilityCat` is a thin category: its objects are the states
reachable from the flat gripper within ``horizon`` cycles, where every cycle
branches over all tied maximizers and all random particle placements, and
there is one arrow ``a -> b`` whenever ``b`` is reachable from ``a``.

With a fixed target the target's own category of mobility is the
one-object category, so a state is critical exactly when nothing else can
be reached from it, i.e. when it is absorbing.
"""
import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import CapacityError, ConfigError
from .fincat import preorder_category
from .multiscale import maximizers

MAX_TOY_N = 16
MAX_TOY_AMPLITUDE = 4
MAX_STATES = 10**5


@dataclass
class MobilityCat:
    """Reachability preorder over enumerated states.

    ``states[i]`` is the height tuple of state ``i``; ``succ[i]`` its one-step
    successors; ``reach[i]`` every state reachable from ``i`` (including
    ``i``). States on the horizon boundary are not ``expanded``: their
    successors are unknown.
    """

    states: list
    succ: list
    reach: list
    initial: int = 0
    horizon: int = None
    expanded: set = field(default_factory=set)
    label: str = ""
    resolution: str = "column"
    block_width: int = 1

    def __len__(self):
        return len(self.states)

    def index(self, state):
        return self._index[tuple(state)]

    def __post_init__(self):
        self._index = {s: i for i, s in enumerate(self.states)}

    @property
    def arrows(self):
        return [(a, b) for a in range(len(self.states)) for b in sorted(self.reach[a])]

    def absorbing(self):
        return {i for i in self.expanded if not self.succ[i]}

    def future(self, i):
        """Mobility category from state ``i``, restricted to this one."""
        keep = sorted(self.reach[i])
        pos = {s: k for k, s in enumerate(keep)}
        return MobilityCat(
            states=[self.states[s] for s in keep],
            succ=[{pos[t] for t in self.succ[s] if t in pos} for s in keep],
            reach=[{pos[t] for t in self.reach[s]} for s in keep],
            initial=pos[i],
            horizon=self.horizon,
            expanded={pos[s] for s in keep if s in self.expanded},
            resolution=self.resolution,
            block_width=self.block_width,
        )

    def to_fincat(self):
        return preorder_category(range(len(self.states)), self.arrows, name=self.label)

    def quotient(self):
        """Poset of mutual-reachability classes, as a FinCat (equivalent to ``self``)."""
        cls = {}
        reps = []
        for i in range(len(self.states)):
            for r in reps:
                if r in self.reach[i] and i in self.reach[r]:
                    cls[i] = r
                    break
            else:
                reps.append(i)
                cls[i] = i
        rel = {(cls[a], cls[b]) for a, b in self.arrows}
        return preorder_category(reps, rel, name=f"{self.label}/~")


def thin_category(states, edges, initial=0, label=""):
    """MobilityCat from an explicit one-step edge list, fully expanded."""
    states = [tuple(s) if isinstance(s, (list, tuple)) else (s,) for s in states]
    succ = [set() for _ in states]
    for a, b in edges:
        succ[a].add(b)
    return MobilityCat(
        states, succ, _closure(succ), initial, None, set(range(len(states))), label
    )


def _closure(succ):
    reach = []
    for i in range(len(succ)):
        seen = {i}
        queue = deque([i])
        while queue:
            for t in succ[queue.popleft()]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        reach.append(seen)
    return reach


def successors(h, s_min, s_max, edge_argmax=True):
    """All column states one cycle away: every tied site, every placement."""
    h = np.asarray(h, dtype=np.int64)
    out = set()
    for site in maximizers(h, s_min, s_max, edge_argmax):
        if site.max_value == 0:
            return set()
        w = 1 << site.scale
        blocks = h.shape[0] >> site.scale
        base = h.copy()
        p = site.position
        base[p * w:(p + 1) * w] -= site.sign
        if p == 0 or p == blocks - 1:
            q = 1 if p == 0 else blocks - 2
            base[q * w:(q + 1) * w] += site.sign
            out.add(tuple(int(v) for v in base))
            continue
        half = w >> 1
        for left in itertools.combinations(range(w), half):
            for right in itertools.combinations(range(w), half):
                nxt = base.copy()
                nxt[(p - 1) * w + np.array(left)] += site.sign
                nxt[(p + 1) * w + np.array(right)] += site.sign
                out.add(tuple(int(v) for v in nxt))
    return out


def _count_vectors(parts, cap, total):
    """Ways to split ``total`` placed particles over ``parts`` sub-blocks of ``cap`` columns."""
    return [c for c in itertools.product(range(cap + 1), repeat=parts) if sum(c) == total]


def block_successors(sums, s_min, s_max, edge_argmax=True):
    """Successors of a state given as block sums at scale ``s_min``.

    The fitting measure at every scale >= ``s_min`` is a function of these
    sums, and a placement changes them only through how many particles land
    in each sub-block, so this is the exact image of :func:`successors`.
    """
    sums = np.asarray(sums, dtype=np.int64)
    u = 1 << s_min
    out = set()
    for site in maximizers(sums, s_min, s_max, edge_argmax, block_sums=True):
        if site.max_value == 0:
            return set()
        k = 1 << (site.scale - s_min)
        blocks = sums.shape[0] // k
        p = site.position
        base = sums.copy()
        base[p * k:(p + 1) * k] -= site.sign * u
        if p == 0 or p == blocks - 1:
            q = 1 if p == 0 else blocks - 2
            base[q * k:(q + 1) * k] += site.sign * u
            out.add(tuple(int(v) for v in base))
            continue
        splits = _count_vectors(k, u, (k * u) // 2)
        for cl in splits:
            for cr in splits:
                nxt = base.copy()
                nxt[(p - 1) * k:p * k] += site.sign * np.array(cl)
                nxt[(p + 1) * k:(p + 2) * k] += site.sign * np.array(cr)
                out.add(tuple(int(v) for v in nxt))
    return out


def build_mobility(cfg, horizon=None, max_states=MAX_STATES, resolution="block"):
    """Enumerate the category of mobility of a toy configuration.

    ``resolution="block"`` records a state as its block sums at scale
    ``s_min`` (the particle size); ``"column"`` keeps every column height.
    Column states can drift without bound inside a block whenever the
    dynamics loop, so only the block resolution is finite in general.
    ``horizon=None`` expands until no new state appears.

    Raises
    ------
    CapacityError
        More than ``max_states`` states; ``err.size`` is the frontier length.
    """
    cfg.validate()
    target = cfg.target_profile()
    if target.n > MAX_TOY_N:
        raise CapacityError(f"toy instances need N <= {MAX_TOY_N}, got {target.n}", size=target.n)
    if np.abs(target.heights).max(initial=0) > MAX_TOY_AMPLITUDE:
        raise CapacityError(
            f"toy targets need |height| <= {MAX_TOY_AMPLITUDE}",
            size=int(np.abs(target.heights).max()),
        )
    if horizon is not None and horizon < 0:
        raise ConfigError("horizon must be non-negative", field="horizon")
    h0 = -target.heights
    if resolution == "block":
        start = tuple(int(v) for v in h0.reshape(-1, 1 << cfg.s_min).sum(axis=1))
        expand = block_successors
    elif resolution == "column":
        start = tuple(int(v) for v in h0)
        expand = successors
    else:
        raise ConfigError(f"unknown resolution {resolution!r}", field="resolution")
    states = [start]
    index = {start: 0}
    succ = [set()]
    expanded = set()
    frontier = [0]
    depth = 0
    while frontier and (horizon is None or depth < horizon):
        nxt = []
        for i in frontier:
            for s in expand(states[i], cfg.s_min, cfg.s_max, cfg.edge_argmax):
                j = index.get(s)
                if j is None:
                    if len(states) >= max_states:
                        raise CapacityError(
                            f"more than {max_states} states (frontier {len(frontier)})",
                            size=len(frontier),
                        )
                    j = index[s] = len(states)
                    states.append(s)
                    succ.append(set())
                    nxt.append(j)
                succ[i].add(j)
            expanded.add(i)
        frontier = nxt
        depth += 1
    return MobilityCat(
        states, succ, _closure(succ), 0, horizon, expanded,
        label=f"Mob({target.label})", resolution=resolution,
        block_width=(1 << cfg.s_min) if resolution == "block" else 1,
    )


def static_target_category(target):
    """The one-object category of a target that never moves."""
    heights = tuple(int(v) for v in getattr(target, "heights", target))
    return thin_category([heights], [], label="target")


@dataclass
class ProjectionFunctor:
    source: MobilityCat
    target: MobilityCat
    state_map: dict

    def __call__(self, i):
        return self.state_map[i]

    def violations(self):
        out = []
        if self.state_map.get(self.source.initial) != self.target.initial:
            out.append(("initial", self.source.initial))
        for a, b in self.source.arrows:
            if self.state_map[b] not in self.target.reach[self.state_map[a]]:
                out.append(("monotone", (a, b)))
        return out


def target_projection(composite, target_cat):
    """Projection onto a static target: every state goes to its single state."""
    return ProjectionFunctor(composite, target_cat, {i: 0 for i in range(len(composite))})


def image_category(composite, fn, label=""):
    """Category of the component obtained by applying ``fn`` to every state.

    Returns the component category and the projection onto it.
    """
    images, index, state_map = [], {}, {}
    for i, s in enumerate(composite.states):
        key = tuple(fn(s))
        if key not in index:
            index[key] = len(images)
            images.append(key)
        state_map[i] = index[key]
    edges = {(state_map[a], state_map[b]) for a in range(len(composite)) for b in composite.succ[a]}
    cat = thin_category(images, edges, initial=state_map[composite.initial], label=label)
    return cat, ProjectionFunctor(composite, cat, state_map)


def gripper_projection(composite, target):
    """Projection onto the gripper's own surface ``h + TARGET``.

    For block-resolution categories the target is summed per block too.
    """
    t = np.asarray(getattr(target, "heights", target), dtype=np.int64)
    t = t.reshape(-1, composite.block_width).sum(axis=1)
    return image_category(composite, lambda s: np.asarray(s) + t, label="gripper")


def verify_control(P0, s0):
    """Check that ``s0`` is a functorial section of ``P0`` (``P0 . s0 = Id``).

    ``s0`` maps component state ids to composite state ids, either as a
    dict or as a FunctorMap (its object map is used). Returns a list of
    ``(kind, where)`` violations.
    """
    smap = getattr(s0, "obj_map", s0)
    comp, whole = P0.target, P0.source
    out = []
    for c in range(len(comp)):
        if c not in smap:
            out.append(("unmapped", c))
        elif P0.state_map[smap[c]] != c:
            out.append(("section", c))
    for a, b in comp.arrows:
        if a in smap and b in smap and smap[b] not in whole.reach[smap[a]]:
            out.append(("functor", (a, b)))
    return out


def _as_thin(cat):
    return cat.to_fincat() if isinstance(cat, MobilityCat) else cat


def _relation(cat):
    """Arrow types of a FinCat, or None when some hom-set has two arrows."""
    rel = set()
    for x, y in cat.arrows.values():
        if (x, y) in rel:
            return None
        rel.add((x, y))
    return rel


def preorders_isomorphic(c, d):
    """Object bijection between thin categories that preserves and reflects arrows.

    Arrows of a thin category are determined by their endpoints, so this
    is the whole isomorphism. Returns the object map or None (also when
    either category is not thin).
    """
    rc, rd = _relation(c), _relation(d)
    if rc is None or rd is None or len(c.objects) != len(d.objects) or len(rc) != len(rd):
        return None

    def signature(objs, rel):
        out_deg = Counter(x for x, _ in rel)
        in_deg = Counter(y for _, y in rel)
        return {x: (out_deg[x], in_deg[x]) for x in objs}

    sc, sd = signature(c.objects, rc), signature(d.objects, rd)
    if sorted(sc.values()) != sorted(sd.values()):
        return None
    freq = Counter(sc.values())
    order = sorted(c.objects, key=lambda x: freq[sc[x]])
    by_sig = {}
    for y in d.objects:
        by_sig.setdefault(sd[y], []).append(y)
    m, used = {}, set()

    def extend(k):
        if k == len(order):
            return True
        x = order[k]
        for y in by_sig[sc[x]]:
            if y in used:
                continue
            if all(
                ((x, z) in rc) == ((y, w) in rd) and ((z, x) in rc) == ((w, y) in rd)
                for z, w in m.items()
            ):
                m[x] = y
                used.add(y)
                if extend(k + 1):
                    return True
                del m[x]
                used.discard(y)
        return False

    return dict(m) if extend(0) else None


def _thin_quotient(cat):
    """Poset of isomorphism classes of a thin FinCat."""
    rel = _relation(cat)
    reps, cls = [], {}
    for x in cat.objects:
        cls[x] = next((r for r in reps if (x, r) in rel and (r, x) in rel), x)
        if cls[x] == x:
            reps.append(x)
    return preorder_category(reps, {(cls[x], cls[y]) for x, y in rel})


def classify_rigidity(composite, robot):
    """``"hard"`` (isomorphic), ``"soft-not-hard"`` (equivalent only) or ``"neither"``.

    ``robot`` is a MobilityCat or any FinCat. A category of mobility is
    thin, and a category equivalent to a thin one is thin, so a robot with
    a hom-set of two or more arrows is never soft. Thin categories are
    equivalent exactly when their posets of isomorphism classes are
    isomorphic.
    """
    c_full, r_full = _as_thin(composite), _as_thin(robot)
    if _relation(r_full) is None:
        return "neither"
    if preorders_isomorphic(c_full, r_full) is not None:
        return "hard"
    if preorders_isomorphic(_thin_quotient(c_full), _thin_quotient(r_full)) is not None:
        return "soft-not-hard"
    return "neither"


def find_critical_states(composite, P):
    """States whose future is isomorphic to the target's future from their image.

    Only expanded states qualify; a state on the horizon boundary has an
    unknown future.
    """
    critical = set()
    for i in sorted(composite.expanded):
        if any(j not in composite.expanded for j in composite.reach[i]):
            continue
        mine = composite.reach[i]
        theirs = P.target.reach[P.state_map[i]]
        if len(mine) != len(theirs):
            continue
        if len(mine) == 1 or preorders_isomorphic(
            composite.future(i).to_fincat(), P.target.future(P.state_map[i]).to_fincat()
        ) is not None:
            critical.add(i)
    return critical


@dataclass(frozen=True)
class Effectiveness:
    effective: bool
    has_critical: bool


def is_effective(composite, critical):
    """Every state reaches a critical one; ``has_critical`` is the weaker test."""
    critical = set(critical)
    if not critical <= set(range(len(composite))):
        raise ValueError("critical states must belong to the category")
    effective = bool(critical) and all(composite.reach[i] & critical for i in range(len(composite)))
    return Effectiveness(effective, bool(critical))


def export_mobility(mob, stem):
    """Write ``<stem>.cat`` (edge list, parseable as a category file) and
    ``<stem>.states.tsv`` (state id and height vector)."""
    stem = Path(stem)
    lines = ["object " + " ".join(f"s{i}" for i in range(len(mob)))]
    lines += [f"leq s{a} s{b}" for a in range(len(mob)) for b in sorted(mob.succ[a])]
    cat_path = stem.with_suffix(".cat")
    cat_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tsv = stem.with_suffix(".states.tsv")
    tsv.write_text(
        "id\theights\n" + "".join(
            f"s{i}\t{','.join(str(v) for v in s)}\n" for i, s in enumerate(mob.states)
        ),
        encoding="utf-8",
    )
    return cat_path, tsv
