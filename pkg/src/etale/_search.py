"""Backtracking search for structure-preserving bijections."""
from __future__ import annotations

from collections import Counter


def find_bijection(sources, targets, sig_source, sig_target, consistent, fixed=None):
    """Return a bijection ``sources -> targets`` or ``None``.

    Only targets with the same signature are tried for each source.
    ``consistent(mapping, x)`` is called right after ``x`` is mapped and must
    check every constraint between ``x`` and the previously mapped sources.
    ``fixed`` pre-assigns some sources.
    """
    sources = list(sources)
    targets = list(targets)
    if len(sources) != len(targets):
        return None
    ss = {x: sig_source(x) for x in sources}
    ts = {y: sig_target(y) for y in targets}
    if Counter(ss.values()) != Counter(ts.values()):
        return None
    by_sig = {}
    for y in targets:
        by_sig.setdefault(ts[y], []).append(y)

    mapping = {}
    used = set()
    for x, y in (fixed or {}).items():
        if ss[x] != ts[y] or y in used:
            return None
        mapping[x] = y
        used.add(y)
        if not consistent(mapping, x):
            return None
    todo = [x for x in sources if x not in mapping]
    # most constrained first, stable otherwise
    todo.sort(key=lambda x: len(by_sig[ss[x]]))

    def extend(k):
        if k == len(todo):
            return True
        x = todo[k]
        for y in by_sig[ss[x]]:
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(mapping, x) and extend(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None
