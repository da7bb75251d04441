"""State and transition counts of the single-block arrangement model.

At scale ``S`` there are ``B = N / 2**S`` indistinguishable blocks spread
over ``B`` ordered cells (weak compositions). A transition moves one block
from an occupied cell to the left or right neighbouring cell.
"""
import csv
import itertools
from dataclasses import dataclass
from math import comb, log10

from .exceptions import CapacityError, DomainError

ENUMERATION_LIMIT = 6


@dataclass(frozen=True)
class ArrangementSpace:
    blocks: int
    state_count: int
    transition_count: int

    @property
    def log10_states(self):
        return _log10(self.state_count)

    @property
    def log10_transitions(self):
        return _log10(self.transition_count)


def _log10(n):
    # float(n) overflows past ~1e308; go through the digit count instead.
    if n <= 0:
        return float("-inf")
    digits = len(str(n))
    if digits < 300:
        return log10(n)
    lead = int(str(n)[:17])
    return log10(lead) + digits - 17


def count_states(blocks):
    if blocks < 1:
        raise DomainError("need at least one block")
    return comb(2 * blocks - 1, blocks - 1)


def count_transitions(blocks):
    """Number of (state, occupied cell, legal direction) triples.

    Interior occupied cells contribute two moves, edge cells one.
    """
    if blocks < 2:
        raise DomainError("a single cell admits no moves")
    return (2 * blocks - 2) * (comb(2 * blocks - 1, blocks - 1) - comb(2 * blocks - 2, blocks - 2))


def arrangement_space(blocks):
    return ArrangementSpace(blocks, count_states(blocks), count_transitions(blocks))


def weak_compositions(total, parts):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def enumerate_space(blocks):
    """Explicit states and directed single-block moves, for small ``blocks``."""
    if blocks > ENUMERATION_LIMIT:
        raise CapacityError(
            f"enumeration limited to {ENUMERATION_LIMIT} blocks, got {blocks}", size=blocks
        )
    if blocks < 1:
        raise DomainError("need at least one block")
    states = list(weak_compositions(blocks, blocks))
    edges = []
    for s in states:
        for i, k in enumerate(s):
            if k == 0:
                continue
            for j in (i - 1, i + 1):
                if 0 <= j < blocks:
                    t = list(s)
                    t[i] -= 1
                    t[j] += 1
                    edges.append((s, tuple(t)))
    return states, edges


def table(n_exp, scales):
    return [arrangement_space(2 ** (n_exp - s)) for s in scales]


def write_table_csv(n_exp, scales, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["S", "B", "state_count", "transition_count", "log10_states", "log10_transitions"])
        for s, row in zip(scales, table(n_exp, scales)):
            w.writerow([
                s, row.blocks, row.state_count, row.transition_count,
                f"{row.log10_states:.6f}", f"{row.log10_transitions:.6f}",
            ])


def read_table_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [
        {
            "S": int(r["S"]), "B": int(r["B"]),
            "state_count": int(r["state_count"]), "transition_count": int(r["transition_count"]),
            "log10_states": float(r["log10_states"]), "log10_transitions": float(r["log10_transitions"]),
        }
        for r in rows
    ]
