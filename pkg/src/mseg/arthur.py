"""Arthur-type multi-segments, their parameters, and exhaustive verifiers.

A parameter is a multiset of summands (rho, d, a); each summand yields
the staircase multi-segment ``delta_da`` of a+1 segments of length d+1,
and a multi-segment is of Arthur type when it is the multiset sum of
such staircases.  ``detect_arthur`` decides that by greedy extraction:
the summand with the largest end and base is forced, so repeatedly
peeling it either reconstructs a parameter or proves there is none.

The verifiers check, over every multi-segment on a fixed support, the
statements this package exists to test at desk scale:

* ``verify_main_lemma``: for Arthur-type alpha, the only beta reachable
  from alpha whose dual is also reachable from the dual of alpha is
  alpha itself.
* ``verify_prop_main``: every such qualifying beta contains the
  extremal staircase of alpha's parameter, and removing one copy from
  both sides preserves both reachability relations.
* ``verify_bounds``: along beta's extraction trace, all exponents stay
  within the support window, and a segment ending at the window top
  persists untouched and starts no higher than the extremal base.
* ``strip_identity_check``: removing a maximal staircase commutes with
  duality in the precise sense of the strip identity.

Reachability questions on one support are answered by a cached
``_SupportGraph`` holding every tiling of the support, its operation
edges, and the duality permutation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import groupby

from .core import (
    ConstraintError,
    DomainError,
    HalfInt,
    MultiSegment,
    PreconditionError,
    Segment,
)
from .involution import _dual_key, mw_dual, mw_trace
from .order import _enumerate_keys, _ms_order, _parallel_map, _succ_sorted, ge


def _summand_order(summand):
    rho, d, a = summand
    return (rho, -(d + a), d)


class ArthurParameter:
    """A multiset of summands (rho, d, a) with d, a integers >= 0.

    Summands are kept sorted by label, then by d+a descending, then by
    d ascending, so equal parameters compare and print identically.
    """

    __slots__ = ("_summands", "_hash")

    def __init__(self, summands=()):
        clean = []
        for item in summands:
            rho, d, a = item
            if not isinstance(rho, str) or not rho:
                raise ConstraintError("summand labels must be non-empty strings")
            for v in (d, a):
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise ConstraintError(
                        f"summand exponents must be integers >= 0, got {item!r}"
                    )
            clean.append((rho, d, a))
        clean.sort(key=_summand_order)
        self._summands: tuple[tuple[str, int, int], ...] = tuple(clean)
        self._hash = hash(self._summands)

    @property
    def summands(self) -> tuple[tuple[str, int, int], ...]:
        return self._summands

    def __iter__(self):
        return iter(self._summands)

    def __len__(self) -> int:
        return len(self._summands)

    def __bool__(self) -> bool:
        return bool(self._summands)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArthurParameter):
            return NotImplemented
        return self._summands == other._summands

    def __hash__(self) -> int:
        return self._hash

    def rhos(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(rho for (rho, _d, _a) in self._summands))

    def restrict(self, rho: str) -> "ArthurParameter":
        return ArthurParameter(s for s in self._summands if s[0] == rho)

    def dim(self) -> int:
        """Total number of support points contributed by all summands."""
        return sum((d + 1) * (a + 1) for (_rho, d, a) in self._summands)

    def __str__(self) -> str:
        if not self._summands:
            return "{}"
        parts = []
        for rho, group in groupby(self._summands, key=lambda s: s[0]):
            parts.append(rho + ":" + "+".join(f"({d},{a})" for (_r, d, a) in group))
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"ArthurParameter({str(self)!r})"


@dataclass(frozen=True)
class ExtremalPair:
    """The reduction pivot of a parameter at one label.

    ``sum`` is the largest d+a over the label's summands and ``d`` the
    smallest d among summands attaining it.
    """

    sum: int
    d: int

    @property
    def a(self) -> int:
        return self.sum - self.d


def delta_da(rho: str, d: int, a: int) -> MultiSegment:
    """The staircase of a+1 segments of length d+1 centered at 0."""
    for v in (d, a):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DomainError(f"exponents must be integers >= 0, got ({d!r}, {a!r})")
    return MultiSegment(
        Segment(rho, HalfInt(a - d - 2 * j), HalfInt(a + d - 2 * j))
        for j in range(a + 1)
    )


def delta_psi(psi: ArthurParameter) -> MultiSegment:
    """The multiset sum of the staircases of all summands."""
    segs = []
    for rho, d, a in psi:
        segs.extend(delta_da(rho, d, a))
    return MultiSegment(segs)


def staircase(rho: str, b, e, s: int) -> MultiSegment:
    """The s+1 parallel translates {[b-r, e-r]} of the segment [b,e]."""
    b = HalfInt.coerce(b)
    e = HalfInt.coerce(e)
    if not isinstance(s, int) or isinstance(s, bool) or s < 0:
        raise DomainError(f"translate count must be an integer >= 0, got {s!r}")
    return MultiSegment(
        Segment(rho, HalfInt(b.twice - 2 * r), HalfInt(e.twice - 2 * r))
        for r in range(s + 1)
    )


def staircase_dual(rho: str, b, e, s: int) -> MultiSegment:
    """The dual staircase {[e-s, e], [e-s-1, e-1], ..., [b-s, b]}."""
    b = HalfInt.coerce(b)
    e = HalfInt.coerce(e)
    if not isinstance(s, int) or isinstance(s, bool) or s < 0:
        raise DomainError(f"translate count must be an integer >= 0, got {s!r}")
    return MultiSegment(
        Segment(rho, HalfInt(e.twice - 2 * s - 2 * j), HalfInt(e.twice - 2 * j))
        for j in range((e.twice - b.twice) // 2 + 1)
    )


def dual_parameter(psi: ArthurParameter) -> ArthurParameter:
    """Swap the two exponents of every summand."""
    return ArthurParameter((rho, a, d) for (rho, d, a) in psi)


def extremal_pair(psi: ArthurParameter, rho: str) -> ExtremalPair:
    """Largest d+a at ``rho``, with the smallest d among the ties."""
    pairs = [(d, a) for (r, d, a) in psi if r == rho]
    if not pairs:
        raise DomainError(f"parameter has no summands labeled {rho!r}")
    total = max(d + a for (d, a) in pairs)
    d = min(d for (d, a) in pairs if d + a == total)
    return ExtremalPair(total, d)


def detect_arthur(ms: MultiSegment) -> ArthurParameter | None:
    """The parameter whose staircases sum to ``ms``, or None.

    Greedy and complete: the segment with maximal end, then maximal
    base, must be the top rung of some summand's staircase, which pins
    that summand entirely; extract it and repeat on the remainder.
    """
    summands = []
    for rho, block in ms.by_rho().items():
        counts = Counter((e2, b2) for (_r, e2, b2) in block.key)
        while counts:
            e2 = max(k[0] for k in counts)
            b2 = max(k[1] for k in counts if k[0] == e2)
            a = (e2 + b2) // 2
            d = (e2 - b2) // 2
            if a < 0:
                return None
            for j in range(a + 1):
                rung = (e2 - 2 * j, b2 - 2 * j)
                if not counts[rung]:
                    return None
                counts[rung] -= 1
                if not counts[rung]:
                    del counts[rung]
            summands.append((rho, d, a))
    return ArthurParameter(summands)


def reduce_pair(
    alpha: MultiSegment, beta: MultiSegment, rho: str
) -> tuple[MultiSegment, MultiSegment]:
    """Remove one copy of alpha's extremal staircase at ``rho`` from both."""
    psi = detect_arthur(alpha)
    if psi is None:
        raise PreconditionError("alpha is not of Arthur type")
    pair = extremal_pair(psi, rho)
    delta = delta_da(rho, pair.d, pair.a)
    if not beta.contains(delta):
        raise PreconditionError(
            f"beta lacks a copy of the extremal staircase {delta}"
        )
    return alpha - delta, beta - delta


def strip_identity_check(beta: MultiSegment, rho: str, b, e, s: int) -> bool:
    """Check that removing a maximal staircase commutes with duality.

    Requires beta's ``rho`` block to contain the staircase
    ``staircase(rho, b, e, s)``, every segment of the block to start at
    or above b-s, and every segment to end at or below e.  Under those
    hypotheses the dual of beta must equal the dual of beta minus the
    staircase, plus the dual staircase; returns whether it does.
    """
    b = HalfInt.coerce(b)
    e = HalfInt.coerce(e)
    delta = staircase(rho, b, e, s)
    block = beta.restrict(rho)
    if not block.contains(delta):
        raise PreconditionError(f"the {rho!r} block lacks a copy of {delta}")
    lo2 = b.twice - 2 * s
    for seg in block:
        if seg.b.twice < lo2:
            raise PreconditionError(
                f"{seg!r} starts below the staircase floor {HalfInt(lo2)}"
            )
        if seg.e.twice > e.twice:
            raise PreconditionError(f"{seg!r} ends above the staircase top {e}")
    return mw_dual(beta) == mw_dual(beta - delta) + staircase_dual(rho, b, e, s)


class _SupportGraph:
    """Every tiling of one support, with operation edges and duals.

    Node i's successors are the tilings one elementary operation below
    tiling i; ``dual[i]`` is the node index of tiling i's dual (duality
    permutes the tilings of a support).
    """

    __slots__ = ("keys", "index", "succ", "dual")

    def __init__(self, support_key, bound=None, parallel: bool = False):
        self.keys = _enumerate_keys(support_key, bound)
        self.index = {k: i for i, k in enumerate(self.keys)}
        succ_lists = _parallel_map(_succ_sorted, self.keys, parallel)
        self.succ = [tuple(self.index[c] for c in lst) for lst in succ_lists]
        duals = _parallel_map(_dual_key, self.keys, parallel)
        self.dual = [self.index[d] for d in duals]

    def reach_from(self, key) -> set[int]:
        seen = {self.index[key]}
        stack = list(seen)
        while stack:
            for j in self.succ[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen


_GRAPH_CACHE: dict = {}


def _graph_for(support_key, bound, parallel: bool) -> _SupportGraph:
    cache_key = (support_key, bound)
    graph = _GRAPH_CACHE.get(cache_key)
    if graph is None:
        graph = _SupportGraph(support_key, bound, parallel)
        _GRAPH_CACHE[cache_key] = graph
    return graph


def _qualifying(alpha: MultiSegment, bound, parallel):
    """Node indices of all beta reachable from alpha with dual reachable
    from alpha's dual, together with the graph they live in."""
    graph = _graph_for(alpha.support().key, bound, parallel)
    down = graph.reach_from(alpha.key)
    down_dual = graph.reach_from(_dual_key(alpha.key))
    return graph, sorted(i for i in down if graph.dual[i] in down_dual)


@dataclass(frozen=True)
class LemmaReport:
    """Exhaustive verdict for one Arthur-type alpha.

    ``candidates_checked`` counts every multi-segment sharing alpha's
    support; ``violations`` lists the qualifying ones other than alpha.
    """

    alpha: MultiSegment
    candidates_checked: int
    violations: tuple[MultiSegment, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = [
            f"alpha: {self.alpha}",
            f"candidates checked: {self.candidates_checked}",
            f"violations: {len(self.violations)}",
        ]
        lines.extend(f"  {v}" for v in self.violations)
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "candidates_checked": self.candidates_checked,
            "violations": [str(v) for v in self.violations],
            "ok": self.ok,
        }


def verify_main_lemma(
    alpha: MultiSegment, *, bound: int | None = None, parallel: bool = False
) -> LemmaReport:
    """Search alpha's support for a qualifying beta other than alpha.

    Qualifying means reachable from alpha with dual reachable from
    alpha's dual; the expected outcome is that no such beta exists.
    """
    if detect_arthur(alpha) is None:
        raise PreconditionError("alpha is not of Arthur type")
    graph, qualifying = _qualifying(alpha, bound, parallel)
    akey = alpha.key
    violations = tuple(
        MultiSegment._from_key(graph.keys[i])
        for i in qualifying
        if graph.keys[i] != akey
    )
    return LemmaReport(alpha, len(graph.keys), violations)


@dataclass(frozen=True)
class PropFailure:
    beta: MultiSegment
    rho: str
    reason: str


@dataclass(frozen=True)
class PropositionReport:
    """Reduction check over every qualifying beta for one alpha.

    ``qualifying`` counts the betas examined (alpha always qualifies);
    a failure records which label's extremal reduction broke and how.
    """

    alpha: MultiSegment
    candidates_checked: int
    qualifying: int
    failures: tuple[PropFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [
            f"alpha: {self.alpha}",
            f"candidates checked: {self.candidates_checked}",
            f"qualifying: {self.qualifying}",
            f"failures: {len(self.failures)}",
        ]
        lines.extend(
            f"  {f.beta} at {f.rho}: {f.reason}" for f in self.failures
        )
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "candidates_checked": self.candidates_checked,
            "qualifying": self.qualifying,
            "failures": [
                {"beta": str(f.beta), "rho": f.rho, "reason": f.reason}
                for f in self.failures
            ],
            "ok": self.ok,
        }


def verify_prop_main(
    alpha: MultiSegment, *, bound: int | None = None, parallel: bool = False
) -> PropositionReport:
    """Check the extremal reduction on every qualifying beta.

    For each label of alpha: the qualifying beta must contain the
    extremal staircase, and removing one copy from both alpha and beta
    must preserve reachability and dual reachability.
    """
    psi = detect_arthur(alpha)
    if psi is None:
        raise PreconditionError("alpha is not of Arthur type")
    graph, qualifying = _qualifying(alpha, bound, parallel)
    failures = []
    for i in qualifying:
        beta = MultiSegment._from_key(graph.keys[i])
        for rho in psi.rhos():
            pair = extremal_pair(psi, rho)
            delta = delta_da(rho, pair.d, pair.a)
            if not beta.contains(delta):
                failures.append(
                    PropFailure(beta, rho, "missing the extremal staircase")
                )
                continue
            alpha_minus = alpha - delta
            beta_minus = beta - delta
            if not ge(alpha_minus, beta_minus):
                failures.append(
                    PropFailure(beta, rho, "reduction breaks reachability")
                )
            elif not ge(mw_dual(alpha_minus), mw_dual(beta_minus)):
                failures.append(
                    PropFailure(beta, rho, "reduction breaks dual reachability")
                )
    return PropositionReport(alpha, len(graph.keys), len(qualifying), tuple(failures))


def verify_bounds(beta: MultiSegment, alpha: MultiSegment) -> bool:
    """Window and persistence bounds along beta's extraction traces.

    Requires alpha of Arthur type and beta qualifying against it.  For
    each label, with m the largest d+a of alpha's parameter there:
    every residue segment keeps its exponents within [-m/2, m/2], and a
    residue segment ending exactly at m/2 must appear unshrunk in every
    earlier residue and start at or below m/2 - d for the extremal d.
    """
    psi = detect_arthur(alpha)
    if psi is None:
        raise PreconditionError("alpha is not of Arthur type")
    if beta.support() != alpha.support():
        raise PreconditionError("beta and alpha have different supports")
    if not ge(alpha, beta) or not ge(mw_dual(alpha), mw_dual(beta)):
        raise PreconditionError("beta does not qualify against alpha")
    for rho in psi.rhos():
        pair = extremal_pair(psi, rho)
        hi2, lo2 = pair.sum, -pair.sum
        cap2 = pair.sum - 2 * pair.d
        prev_tops: Counter | None = None
        for residue in mw_trace(beta, rho).residues:
            tops: Counter = Counter()
            for _r, e2, b2 in residue.key:
                if b2 < lo2 or e2 > hi2:
                    return False
                if e2 == hi2:
                    if b2 > cap2:
                        return False
                    tops[(e2, b2)] += 1
            if prev_tops is not None and tops - prev_tops:
                return False
            prev_tops = tops
    return True
