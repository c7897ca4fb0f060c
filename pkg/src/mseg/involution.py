"""Duality of multi-segments by leading-segment extraction.

One extraction pass scans a single-label block in canonical order: take
the segment with the largest end value (largest base among those), then
repeatedly pick, among segments that precede the current one with end
value exactly one lower, the one with the largest base.  The ends of the
chosen chain form the leading segment; shrinking every chosen segment by
one and dropping the empty ones gives the residue.  Iterating until the
block is empty emits the segments of the dual, and running this per
label computes the full dual ``mw_dual``.

``mw_trace`` records the whole derivation for one block: the residues,
and for every pass the leading segment plus the chosen positions.  The
positions are stable slots in the canonical order of the initial block:
a shrunk segment keeps its slot and emptied slots are tombstoned, so the
per-pass index sets can be compared directly across passes.
``validate_index_sets`` decides whether a proposed family of slot sets
is a legal labeling of the first ``t`` passes, where ``t`` counts the
segments sharing the maximal end value; equal segments make the choice
non-unique, and the validator accepts every legal variant while the
trace itself always breaks ties toward the smallest slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

from .core import (
    DomainError,
    HalfInt,
    MultiSegment,
    PreconditionError,
    Segment,
    ValidationError,
)


@dataclass(frozen=True)
class MWStep:
    """One extraction pass: the leading segment and the chosen slots.

    ``chosen`` lists slot indices in chain order, i.e. by descending end
    value of the chosen segments, from the leading end down to its base.
    """

    leading: Segment
    chosen: tuple[int, ...]


@dataclass(frozen=True)
class MWTrace:
    """Full extraction record of one label block.

    ``residues[0]`` is the initial block and ``residues[i+1]`` is what
    remains after pass ``i``; the last residue is empty.  Step slots
    refer to the canonical order of ``initial`` throughout.
    """

    rho: str
    initial: MultiSegment
    steps: tuple[MWStep, ...]
    residues: tuple[MultiSegment, ...]

    @property
    def t(self) -> int:
        """Number of segments of the initial block with maximal end."""
        if not self.initial:
            return 0
        top = self.initial.segments[0].e
        return sum(1 for s in self.initial if s.e == top)

    def leadings(self) -> MultiSegment:
        """The extracted leading segments; equals the dual of the block."""
        return MultiSegment(step.leading for step in self.steps)

    def slot_segment(self, slot: int, i: int) -> Segment | None:
        """Value held by ``slot`` entering pass ``i`` (None once emptied)."""
        seg = self.initial.segments[slot]
        shrinks = sum(1 for step in self.steps[:i] if slot in step.chosen)
        e2 = seg.e.twice - 2 * shrinks
        if e2 < seg.b.twice:
            return None
        return Segment(seg.rho, seg.b, HalfInt(e2))

    def chosen_segments(self, i: int) -> MultiSegment:
        """The segments shrunk by pass ``i``, at their pass-``i`` values."""
        return MultiSegment(
            self.slot_segment(slot, i) for slot in self.steps[i].chosen
        )

    def index_sets(self) -> tuple[frozenset[int], ...]:
        """The slot sets of the first ``t`` passes."""
        return tuple(frozenset(step.chosen) for step in self.steps[: self.t])

    def to_text(self) -> str:
        lines = [f"block {self.rho}: {len(self.initial)} segments, t={self.t}"]
        lines.append(f"initial: {self.initial}")
        for i, step in enumerate(self.steps):
            slots = ",".join(str(k) for k in step.chosen)
            lines.append(
                f"step {i}: leading {step.leading}; chosen slots {slots};"
                f" residue {self.residues[i + 1]}"
            )
        lines.append(f"dual: {self.leadings()}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "initial": str(self.initial),
            "t": self.t,
            "steps": [
                {
                    "i": i,
                    "leading": str(step.leading),
                    "chosen": list(step.chosen),
                    "residue": str(self.residues[i + 1]),
                }
                for i, step in enumerate(self.steps)
            ],
            "dual": str(self.leadings()),
        }


def _extract(order):
    """Greedy chain over one block.

    ``order`` lists (e2, b2, id) sorted by end descending, base
    descending, id ascending; ties therefore resolve to the smallest id.
    Returns (m2, e2_top, ids) with ids in chain order.
    """
    e2_top, chain_b, first = order[0]
    ids = [first]
    m2 = e2_top
    i = 1
    n = len(order)
    while True:
        target = m2 - 2
        while i < n and order[i][0] > target:
            i += 1
        found = None
        j = i
        while j < n and order[j][0] == target:
            if order[j][1] < chain_b:
                found = j
                break
            j += 1
        if found is None:
            return m2, e2_top, ids
        ids.append(order[found][2])
        chain_b = order[found][1]
        m2 = target
        i = found + 1


def _dual_block(pairs) -> list[tuple[int, int]]:
    """Dual of one block given as (e2, b2) pairs; returns dual pairs."""
    cur = sorted(pairs, key=lambda p: (-p[0], -p[1]))
    out = []
    while cur:
        e2_top, chain_b = cur[0]
        m2 = e2_top
        chosen = {0}
        i = 1
        n = len(cur)
        while True:
            target = m2 - 2
            while i < n and cur[i][0] > target:
                i += 1
            found = None
            j = i
            while j < n and cur[j][0] == target:
                if cur[j][1] < chain_b:
                    found = j
                    break
                j += 1
            if found is None:
                break
            chosen.add(found)
            chain_b = cur[found][1]
            m2 = target
            i = found + 1
        out.append((e2_top, m2))
        nxt = []
        for idx, (e2, b2) in enumerate(cur):
            if idx in chosen:
                if e2 > b2:
                    nxt.append((e2 - 2, b2))
            else:
                nxt.append((e2, b2))
        cur = sorted(nxt, key=lambda p: (-p[0], -p[1]))
    return out


def _dual_key(key):
    """Dual on canonical key tuples; the fast path under the verifiers."""
    out = []
    for rho, group in groupby(key, key=lambda k: k[0]):
        block = _dual_block([(e2, b2) for (_r, e2, b2) in group])
        out.extend((rho, e2, b2) for (e2, b2) in block)
    out.sort(key=lambda k: (k[0], -k[1], -k[2]))
    return tuple(out)


def mw_leading(ms: MultiSegment, rho: str) -> MWStep:
    """One extraction pass over the block labeled ``rho``.

    The chosen indices refer to the canonical order of that block.
    """
    block = ms.restrict(rho)
    if not block:
        raise DomainError(f"no segments labeled {rho!r}")
    order = [(e2, b2, i) for i, (_r, e2, b2) in enumerate(block.key)]
    m2, e2_top, ids = _extract(order)
    return MWStep(Segment(rho, HalfInt(m2), HalfInt(e2_top)), tuple(ids))


def _chain_violation(key, avail, kset) -> str | None:
    """Why ``kset`` is not a legal extraction chain, or None if it is.

    ``key`` holds the block's (e2, b2) pairs in canonical order; the
    maximality conditions are evaluated over the indices in ``avail``
    (which include ``kset``).  Legality is checked on values, so any
    choice among equal segments is accepted.
    """
    if not kset:
        return "empty index set"
    chain = sorted(kset, key=lambda j: -key[j][0])
    e2_top = max(key[j][0] for j in avail)
    for r, j in enumerate(chain):
        if key[j][0] != e2_top - 2 * r:
            return (
                f"slot {j} ends at {HalfInt(key[j][0])}, breaking the"
                f" consecutive run from {HalfInt(e2_top)}"
            )
    top_b = key[chain[0]][1]
    best = max(key[j][1] for j in avail if key[j][0] == e2_top)
    if top_b != best:
        return (
            f"slot {chain[0]} does not have the maximal base"
            f" {HalfInt(best)} among ends {HalfInt(e2_top)}"
        )
    prev_b = top_b
    for j in chain[1:]:
        e2, b2 = key[j]
        if b2 >= prev_b:
            return f"slot {j} does not descend below base {HalfInt(prev_b)}"
        best = max(
            (key[k][1] for k in avail if key[k][0] == e2 and key[k][1] < prev_b),
        )
        if b2 != best:
            return (
                f"slot {j} skips the larger eligible base {HalfInt(best)}"
                f" at end {HalfInt(e2)}"
            )
        prev_b = b2
    m2 = key[chain[-1]][0]
    last_b = key[chain[-1]][1]
    if any(key[k][0] == m2 - 2 and key[k][1] < last_b for k in avail):
        return "the chain stops although a continuation exists"
    return None


def mw_strip(ms: MultiSegment, step: MWStep) -> MultiSegment:
    """Shrink the chosen chain of ``step`` inside ``ms``.

    The step is validated against ``ms`` before anything is modified; a
    step whose chain is not a legal extraction raises.
    """
    rho = step.leading.rho
    block = ms.restrict(rho)
    key = [(e2, b2) for (_r, e2, b2) in block.key]
    n = len(key)
    chosen = step.chosen
    if len(set(chosen)) != len(chosen):
        raise ValidationError("step repeats a slot")
    for j in chosen:
        if not isinstance(j, int) or not 0 <= j < n:
            raise ValidationError(f"slot {j} is out of range for the block")
    msg = _chain_violation(key, range(n), chosen)
    if msg is not None:
        raise ValidationError(f"inconsistent step: {msg}")
    e2_top = max(key[j][0] for j in chosen)
    m2 = min(key[j][0] for j in chosen)
    if step.leading != Segment(rho, HalfInt(m2), HalfInt(e2_top)):
        raise ValidationError(
            f"leading {step.leading} does not match its chain [{HalfInt(m2)},"
            f"{HalfInt(e2_top)}]"
        )
    taken = set(chosen)
    segs = [s for s in ms if s.rho != rho]
    for i, seg in enumerate(block):
        if i in taken:
            small = seg.shrink()
            if small is not None:
                segs.append(small)
        else:
            segs.append(seg)
    return MultiSegment(segs)


def mw_dual(ms: MultiSegment) -> MultiSegment:
    """The dual multi-segment, computed blockwise."""
    return MultiSegment._from_key(_dual_key(ms.key))


def mw_trace(ms: MultiSegment, rho: str) -> MWTrace:
    """Record every extraction pass of the block labeled ``rho``."""
    initial = ms.restrict(rho)
    slots: list[tuple[int, int] | None] = [
        (e2, b2) for (_r, e2, b2) in initial.key
    ]
    steps: list[MWStep] = []
    residues = [initial]
    while True:
        alive = [
            (e2b2[0], e2b2[1], idx)
            for idx, e2b2 in enumerate(slots)
            if e2b2 is not None
        ]
        if not alive:
            break
        alive.sort(key=lambda p: (-p[0], -p[1], p[2]))
        m2, e2_top, ids = _extract(alive)
        steps.append(MWStep(Segment(rho, HalfInt(m2), HalfInt(e2_top)), tuple(ids)))
        for idx in ids:
            e2, b2 = slots[idx]
            slots[idx] = (e2 - 2, b2) if e2 > b2 else None
        live = [v for v in slots if v is not None]
        residues.append(
            MultiSegment(Segment(rho, HalfInt(b2), HalfInt(e2)) for (e2, b2) in live)
        )
    return MWTrace(rho, initial, tuple(steps), tuple(residues))


def validate_index_sets(
    ms: MultiSegment,
    rho: str,
    ksets: Sequence[Iterable[int]],
    *,
    partial: bool = False,
) -> bool:
    """Decide whether ``ksets`` labels the first passes of the block.

    The family must list one slot set per pass, in pass order, covering
    exactly the passes whose leading segment ends at the block's maximal
    end value; ``partial=True`` allows validating a shorter prefix.
    Structural defects (slots out of range, overlapping sets, repeats,
    wrong family length) raise; a well-formed family that simply is not
    an extraction labeling returns False.
    """
    block = ms.restrict(rho)
    key = [(e2, b2) for (_r, e2, b2) in block.key]
    n = len(key)
    clean: list[list[int]] = []
    used: set[int] = set()
    for kset in ksets:
        idxs = list(kset)
        for j in idxs:
            if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j < n:
                raise ValidationError(f"slot {j} is out of range for the block")
        if len(set(idxs)) != len(idxs):
            raise ValidationError("an index set repeats a slot")
        if used & set(idxs):
            raise ValidationError("index sets overlap")
        used |= set(idxs)
        clean.append(idxs)
    t = 0 if n == 0 else sum(1 for (e2, _b2) in key if e2 == key[0][0])
    if partial:
        if len(clean) > t:
            raise PreconditionError(
                f"family lists {len(clean)} passes but only {t} share the top end"
            )
    elif len(clean) != t:
        raise PreconditionError(
            f"family must list {t} passes, got {len(clean)}"
        )
    avail = set(range(n))
    for idxs in clean:
        if _chain_violation(key, avail, idxs) is not None:
            return False
        avail -= set(idxs)
    return True
