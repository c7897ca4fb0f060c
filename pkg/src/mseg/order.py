"""The partial order generated by elementary operations, and its posets.

An elementary operation replaces a linked pair of segments by their
union together with their intersection, dropping the intersection when
it is empty.  ``ge(a, b)`` holds when ``b`` is reachable from ``a`` by a
(possibly empty) sequence of such operations; the search is exact, with
two provable prunes: every genuine operation preserves the support and
strictly increases the rank ``sum of squared lengths`` while never
increasing the number of segments.

``enumerate_support`` lists every multi-segment with a given support by
tiling each maximal run of consecutive exponents, and ``build_poset``
materializes the full order on one support with its cover relation.
Enumeration refuses supports with more than ``bound`` points in a
single (label, translation-class) family, since the number of tilings
grows quickly.

Internally multi-segments travel as their canonical key tuples; only
the public entry points touch MultiSegment objects.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations_with_replacement, groupby, product
from multiprocessing import get_context

from .core import BoundExceededError, DomainError, MultiSegment, Support

DEFAULT_ENUMERATION_BOUND = 12


def _canon_key(triples):
    return tuple(sorted(triples, key=lambda t: (t[0], -t[1], -t[2])))


def _ms_order(key):
    """Sort key ordering whole multi-segments (segment-wise, canonical)."""
    return tuple((r, -e2, -b2) for (r, e2, b2) in key)


def _rank_key(key) -> int:
    return sum(((e2 - b2) // 2 + 1) ** 2 for (_r, e2, b2) in key)


def _succ_keys(key):
    """Keys one elementary operation below ``key``."""
    out = set()
    n = len(key)
    for i in range(n):
        ri, ei, bi = key[i]
        for j in range(i + 1, n):
            rj, ej, bj = key[j]
            if rj != ri:
                break
            # Canonical order gives ei >= ej; equal ends always nest.
            if ei == ej or (bi - bj) % 2:
                continue
            if not bj < bi <= ej + 2:
                continue
            merged = [(ri, ei, bj)]
            if bi <= ej:
                merged.append((ri, ej, bi))
            out.add(_canon_key(key[:i] + key[i + 1 : j] + key[j + 1 :] + tuple(merged)))
    return out


def elementary_successors(ms: MultiSegment) -> set[MultiSegment]:
    """All results of one elementary operation applied to ``ms``."""
    return {MultiSegment._from_key(k) for k in _succ_keys(ms.key)}


def ge(a: MultiSegment, b: MultiSegment) -> bool:
    """True iff ``b`` is reachable from ``a`` by elementary operations."""
    if a.key == b.key:
        return True
    if a.support() != b.support():
        return False
    return _reaches(a.key, b.key)


def _reaches(akey, bkey) -> bool:
    target_rank = _rank_key(bkey)
    target_len = len(bkey)
    if _rank_key(akey) >= target_rank or len(akey) < target_len:
        return False
    seen = {akey}
    stack = [akey]
    while stack:
        for child in _succ_keys(stack.pop()):
            if child == bkey:
                return True
            if child in seen:
                continue
            # A strict descent to bkey needs strictly smaller rank and at
            # least as many segments at every intermediate stage.
            if _rank_key(child) >= target_rank or len(child) < target_len:
                continue
            seen.add(child)
            stack.append(child)
    return False


def ge_path(a: MultiSegment, b: MultiSegment) -> list[MultiSegment] | None:
    """A shortest witnessing chain from ``a`` to ``b``, or None."""
    if a.key == b.key:
        return [a]
    if a.support() != b.support():
        return None
    target = b.key
    target_rank = _rank_key(target)
    target_len = len(target)
    parent = {a.key: None}
    frontier = [a.key]
    while frontier:
        upnext = []
        for k in frontier:
            for child in sorted(_succ_keys(k), key=_ms_order):
                if child in parent:
                    continue
                if child != target and (
                    _rank_key(child) >= target_rank or len(child) < target_len
                ):
                    continue
                parent[child] = k
                if child == target:
                    chain = [child]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    chain.reverse()
                    return [MultiSegment._from_key(kk) for kk in chain]
                upnext.append(child)
        frontier = upnext
    return None


def downset(a: MultiSegment) -> set[MultiSegment]:
    """Everything reachable from ``a``, including ``a`` itself."""
    seen = {a.key}
    stack = [a.key]
    while stack:
        for child in _succ_keys(stack.pop()):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return {MultiSegment._from_key(k) for k in seen}


def _island_tilings(vals, counts):
    """Tilings of one run of consecutive exponents with multiplicities.

    ``vals`` are doubled exponents ascending in steps of 2; ``counts``
    the positive multiplicities.  Returns every multiset of (e2, b2)
    pairs covering each point exactly its count, as tuples.
    """
    n = len(vals)
    results = []

    def rec(cnt, acc):
        first = next((k for k in range(n) if cnt[k]), None)
        if first is None:
            results.append(tuple(acc))
            return
        m0 = cnt[first]
        reach = first
        while reach + 1 < n and cnt[reach + 1]:
            reach += 1
        for ends in combinations_with_replacement(range(first, reach + 1), m0):
            new = list(cnt)
            new[first] = 0
            feasible = True
            for epos in ends:
                for k in range(first + 1, epos + 1):
                    new[k] -= 1
                    if new[k] < 0:
                        feasible = False
                        break
                if not feasible:
                    break
            if feasible:
                rec(tuple(new), acc + [(vals[epos], vals[first]) for epos in ends])

    rec(tuple(counts), [])
    return results


def _enumerate_keys(support_key, bound=None):
    """All canonical keys with the given support key, in canonical order."""
    if bound is None:
        bound = DEFAULT_ENUMERATION_BOUND
    if bound < 1:
        raise DomainError("enumeration bound must be at least 1")
    factors = []
    for rho, group in groupby(support_key, key=lambda p: p[0]):
        xs = [x2 for (_r, x2) in group]
        for par in (0, 1):
            cls = [x2 for x2 in xs if x2 % 2 == par]
            if not cls:
                continue
            if len(cls) > bound:
                raise BoundExceededError(
                    f"support has {len(cls)} points in one translation class"
                    f" of {rho!r}, exceeding the bound {bound}"
                )
            vals = sorted(set(cls))
            run = [vals[0]]
            islands = []
            for v in vals[1:]:
                if v == run[-1] + 2:
                    run.append(v)
                else:
                    islands.append(run)
                    run = [v]
            islands.append(run)
            for isl in islands:
                counts = [cls.count(v) for v in isl]
                tilings = _island_tilings(isl, counts)
                factors.append([
                    tuple((rho, e2, b2) for (e2, b2) in t) for t in tilings
                ])
    keys = [_canon_key(sum(combo, ())) for combo in product(*factors)]
    keys.sort(key=_ms_order)
    return keys


def enumerate_support(s: Support, bound: int | None = None) -> list[MultiSegment]:
    """Every multi-segment with support ``s``, each once, in canonical order."""
    return [MultiSegment._from_key(k) for k in _enumerate_keys(s.key, bound)]


@dataclass(frozen=True)
class PosetNode:
    ms: MultiSegment
    rank: int


@dataclass(frozen=True)
class Poset:
    """The full order on one support: nodes plus the cover relation.

    ``covers`` pairs (parent, child) node indices with the child one
    genuine elementary operation below the parent and no longer path
    between them.
    """

    nodes: tuple[PosetNode, ...]
    covers: tuple[tuple[int, int], ...]

    def index_of(self, ms: MultiSegment) -> int:
        for i, node in enumerate(self.nodes):
            if node.ms == ms:
                return i
        raise DomainError(f"{ms} is not a node of this poset")


def _parallel_map(fn, items, parallel: bool):
    """Order-preserving map, forked across cores when asked and worthwhile."""
    if not parallel or len(items) < 256:
        return [fn(x) for x in items]
    try:
        ctx = get_context("fork")
    except ValueError:
        return [fn(x) for x in items]
    chunk = max(16, len(items) // (8 * (os.cpu_count() or 1)))
    with ctx.Pool() as pool:
        return pool.map(fn, items, chunksize=chunk)


def _succ_sorted(key):
    return sorted(_succ_keys(key), key=_ms_order)


def build_poset(s: Support, bound: int | None = None, parallel: bool = False) -> Poset:
    """Materialize the order on support ``s`` with its cover relation."""
    keys = _enumerate_keys(s.key, bound)
    index = {k: i for i, k in enumerate(keys)}
    succ_lists = _parallel_map(_succ_sorted, keys, parallel)
    succ = [tuple(index[c] for c in lst) for lst in succ_lists]
    n = len(keys)
    ranks = [_rank_key(k) for k in keys]
    # Children always rank higher, so a descending-rank sweep sees every
    # child's reachable set before its parents need it.
    reach = [0] * n
    for i in sorted(range(n), key=lambda i: -ranks[i]):
        m = 0
        for j in succ[i]:
            m |= reach[j] | (1 << j)
        reach[i] = m
    covers = []
    for i in range(n):
        for j in succ[i]:
            if not any((reach[w] >> j) & 1 for w in succ[i] if w != j):
                covers.append((i, j))
    nodes = tuple(
        PosetNode(MultiSegment._from_key(k), ranks[i]) for i, k in enumerate(keys)
    )
    return Poset(nodes, tuple(covers))


def poset_to_dot(poset: Poset, highlight=()) -> str:
    """DOT digraph of the cover relation, larger elements on top.

    Node indices listed in ``highlight`` are drawn with a double border.
    """
    marked = set(highlight)
    lines = [
        "digraph poset {",
        "  rankdir=TB;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for i, node in enumerate(poset.nodes):
        attrs = f'label="{node.ms}"'
        if i in marked:
            attrs += ", peripheries=2"
        lines.append(f"  n{i} [{attrs}];")
    for p, c in poset.covers:
        lines.append(f"  n{p} -> n{c};")
    lines.append("}")
    return "\n".join(lines)


def poset_to_json_dict(poset: Poset) -> dict:
    return {
        "nodes": [
            {"ms": str(node.ms), "rank": node.rank} for node in poset.nodes
        ],
        "covers": [list(pair) for pair in poset.covers],
    }
