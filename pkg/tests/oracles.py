"""Independent reference implementations shared by several test modules."""
import itertools
from collections import deque
from fractions import Fraction

import numpy as np


def oracle_block_space(cfg):
    """Breadth-first enumeration over block sums, written from the definitions."""
    k = 2**cfg.s_min
    t = np.array(cfg.target)
    start = tuple(int(v) for v in (-t).reshape(-1, k).sum(axis=1))

    def fields(state):
        out = []
        for s in range(cfg.s_min, cfg.s_max + 1):
            g = 2 ** (s - cfg.s_min)
            sums = [sum(state[i:i + g]) for i in range(0, len(state), g)]
            means = [Fraction(v, 2**s) for v in sums]
            for p, m in enumerate(means):
                if p in (0, len(means) - 1):
                    if not cfg.edge_argmax:
                        continue
                    dev = m - means[1 if p == 0 else -2]
                else:
                    dev = m - (means[p - 1] + means[p + 1]) / 2
                out.append((abs(dev), s, p, (dev > 0) - (dev < 0)))
        return out

    def moves(state):
        fs = fields(state)
        best = max(f[0] for f in fs)
        if best == 0:
            return set()
        out = set()
        for r, s, p, sign in fs:
            if r != best:
                continue
            g = 2 ** (s - cfg.s_min)
            w = 2**s
            base = list(state)
            for j in range(p * g, (p + 1) * g):
                base[j] -= sign * k
            nblocks = len(state) // g
            if p in (0, nblocks - 1):
                q = 1 if p == 0 else nblocks - 2
                nxt = list(base)
                for j in range(q * g, (q + 1) * g):
                    nxt[j] += sign * k
                out.add(tuple(nxt))
                continue
            splits = [c for c in itertools.product(range(k + 1), repeat=g) if sum(c) == w // 2]
            for cl in splits:
                for cr in splits:
                    nxt = list(base)
                    for i in range(g):
                        nxt[(p - 1) * g + i] += sign * cl[i]
                        nxt[(p + 1) * g + i] += sign * cr[i]
                    out.add(tuple(nxt))
        return out

    seen, edges, queue = {start}, {}, deque([start])
    while queue:
        s = queue.popleft()
        edges[s] = moves(s)
        for t2 in edges[s]:
            if t2 not in seen:
                seen.add(t2)
                queue.append(t2)
    return seen, {s for s, e in edges.items() if not e}
