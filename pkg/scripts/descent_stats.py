"""Shape of the genus descent: states per (genus, number of etas), the
largest eta weight reached, and how often each kind of child appears.

    python scripts/descent_stats.py
"""

from collections import Counter
from dataclasses import dataclass

from boussinesq.engine import Reducer, expand_once


@dataclass
class Stats:
    by_genus_t: Counter
    child_kinds: Counter
    max_weight: int
    dp_range: tuple


def collect(reducer: Reducer) -> Stats:
    for m in (0, 1):
        reducer.theorem1_assemble(m)
    states = [s for s in reducer.cache if s.m == 0]
    kinds = Counter()
    for s in states:
        if s.genus == 0:
            continue
        for _, child in expand_once(s):
            kinds[(s.genus - child.genus, s.t - child.t, s.dp - child.dp)] += 1
    return Stats(
        by_genus_t=Counter((s.genus, s.t) for s in states),
        child_kinds=kinds,
        max_weight=max(f.weight for s in states for f in s.etas),
        dp_range=(min(s.dp for s in states), max(s.dp for s in states)),
    )


def main():
    stats = collect(Reducer())
    print("states (m=0) by genus and eta count:")
    for (g, t), n in sorted(stats.by_genus_t.items(), reverse=True):
        print(f"  g={g} t={t}: {n}")
    print("expansion edges by (genus drop, eta-count drop, tail drop):")
    for kind, n in sorted(stats.child_kinds.items()):
        print(f"  {kind}: {n}")
    print(f"max eta weight: {stats.max_weight}")
    print(f"tail offset range: {stats.dp_range}")


if __name__ == "__main__":
    main()
