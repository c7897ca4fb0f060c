"""Exact data model for segments and multi-segments.

Exponents are half-integers stored as doubled integers (``HalfInt``), so
every comparison and difference is exact integer arithmetic; no floating
point appears anywhere.  A ``Segment`` [b,e]_rho is the run of exponents
b, b+1, ..., e carrying an opaque cuspidal label rho, and a
``MultiSegment`` is a finite multiset of segments kept in a fixed
canonical order (label ascending, then end descending, then base
descending), which makes equality, hashing and printing deterministic.

``linked`` and ``precedes`` are the segment predicates that drive both
the elementary operations of the partial order and the duality scan.
``Support`` records the multiset of labeled exponent points covered by a
multi-segment; every operation in this package preserves it.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Iterator


class MsegError(Exception):
    """Base class for every error raised by this package."""


class ConstraintError(MsegError, ValueError):
    """A value violates a structural constraint of its type."""


class DomainError(MsegError, ValueError):
    """An operation was applied outside its domain."""


class ValidationError(MsegError, ValueError):
    """A derived object (step, index family) is inconsistent with its source."""


class PreconditionError(MsegError, ValueError):
    """A stated hypothesis of an operation does not hold for the input."""


class BoundExceededError(MsegError, RuntimeError):
    """An enumeration would exceed the configured size bound."""


_HALF_RE = re.compile(r"([+-]?\d+)(/2)?\Z")


@dataclass(frozen=True, order=True)
class HalfInt:
    """A half-integer x stored exactly as the integer ``twice`` = 2x.

    The generated ordering compares ``twice`` and therefore agrees with
    the rational order on the values themselves.
    """

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise ConstraintError(f"half-integer must wrap an int, got {self.twice!r}")

    @classmethod
    def coerce(cls, value) -> "HalfInt":
        """Accept a HalfInt, an int, or a string such as ``-3/2`` or ``2``."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise ConstraintError("booleans are not exponents")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            m = _HALF_RE.match(value.strip())
            if m is None:
                raise ConstraintError(f"cannot read half-integer from {value!r}")
            n = int(m.group(1))
            if m.group(2) is None:
                return cls(2 * n)
            if n % 2 == 0:
                raise ConstraintError(
                    f"{value!r}: only an odd numerator may carry /2"
                )
            return cls(n)
        raise ConstraintError(f"cannot read half-integer from {value!r}")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice - 2 * other)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


# Cuspidal labels are opaque identifier strings; equality is exact.
CuspidalLabel = str


@dataclass(frozen=True)
class Segment:
    """The segment [b,e]_rho: exponents b, b+1, ..., e labeled by rho.

    Requires e - b to be a non-negative integer, so both endpoints lie in
    the same integer-translation class.
    """

    rho: str
    b: HalfInt
    e: HalfInt

    def __post_init__(self) -> None:
        if not isinstance(self.rho, str) or not self.rho:
            raise ConstraintError("cuspidal label must be a non-empty string")
        object.__setattr__(self, "b", HalfInt.coerce(self.b))
        object.__setattr__(self, "e", HalfInt.coerce(self.e))
        d = self.e.twice - self.b.twice
        if d < 0 or d % 2:
            raise ConstraintError(
                f"end - base must be a non-negative integer, got [{self.b},{self.e}]"
            )

    @property
    def length(self) -> int:
        return (self.e.twice - self.b.twice) // 2 + 1

    def points(self) -> tuple[HalfInt, ...]:
        """The exponents covered by this segment, ascending."""
        return tuple(HalfInt(t) for t in range(self.b.twice, self.e.twice + 1, 2))

    def shrink(self) -> "Segment | None":
        """Drop the largest exponent; ``None`` marks the empty result."""
        if self.b == self.e:
            return None
        return Segment(self.rho, self.b, HalfInt(self.e.twice - 2))

    def contains(self, other: "Segment") -> bool:
        """Containment of exponent sets (labels and classes must match)."""
        return (
            self.rho == other.rho
            and (self.b.twice - other.b.twice) % 2 == 0
            and self.b.twice <= other.b.twice
            and other.e.twice <= self.e.twice
        )

    def __str__(self) -> str:
        return f"[{self.b},{self.e}]"

    def __repr__(self) -> str:
        return f"[{self.b},{self.e}]_{self.rho}"


def linked(d1: Segment, d2: Segment) -> bool:
    """True iff the exponent sets union to one segment and neither contains the other.

    Segments with different labels, or endpoints in different
    integer-translation classes, are never linked.
    """
    if d1.rho != d2.rho:
        return False
    if (d1.b.twice - d2.b.twice) % 2:
        return False
    if d1.contains(d2) or d2.contains(d1):
        return False
    # No gap between the two exponent runs (adjacency counts as touching).
    return d1.b.twice <= d2.e.twice + 2 and d2.b.twice <= d1.e.twice + 2


def precedes(d1: Segment, d2: Segment) -> bool:
    """True iff d1 and d2 are linked with d1 starting and ending strictly earlier."""
    return linked(d1, d2) and d1.b < d2.b and d1.e < d2.e


def _seg_sort(s: Segment):
    return (s.rho, -s.e.twice, -s.b.twice)


class MultiSegment:
    """A finite multiset of segments, held in canonical order.

    Canonical order sorts by label ascending, then end descending, then
    base descending; it matches the scan direction of the duality
    algorithm.  Instances are immutable values: equality, hashing and
    printing all read the canonical form.
    """

    __slots__ = ("_segs", "_key", "_hash")

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = list(segments)
        for s in segs:
            if not isinstance(s, Segment):
                raise ConstraintError(f"multi-segment element is not a segment: {s!r}")
        segs.sort(key=_seg_sort)
        self._segs: tuple[Segment, ...] = tuple(segs)
        self._key = tuple((s.rho, s.e.twice, s.b.twice) for s in segs)
        self._hash = hash(self._key)

    @classmethod
    def _from_key(cls, key) -> "MultiSegment":
        return cls(Segment(r, HalfInt(b2), HalfInt(e2)) for (r, e2, b2) in key)

    @property
    def segments(self) -> tuple[Segment, ...]:
        return self._segs

    @property
    def key(self):
        """Canonical tuple of (rho, twice end, twice base) triples."""
        return self._key

    def sort_key(self):
        return tuple((r, -e2, -b2) for (r, e2, b2) in self._key)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self._segs)

    def __len__(self) -> int:
        return len(self._segs)

    def __bool__(self) -> bool:
        return bool(self._segs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSegment):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        if not isinstance(other, MultiSegment):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __add__(self, other) -> "MultiSegment":
        if not isinstance(other, MultiSegment):
            return NotImplemented
        return MultiSegment(self._segs + other._segs)

    def __sub__(self, other) -> "MultiSegment":
        """Multiset difference; the subtrahend must be contained in self."""
        if not isinstance(other, MultiSegment):
            return NotImplemented
        take = Counter(other._key)
        left = []
        for s, k in zip(self._segs, self._key):
            if take.get(k, 0):
                take[k] -= 1
            else:
                left.append(s)
        missing = [k for k, c in take.items() if c]
        if missing:
            r, e2, b2 = missing[0]
            raise DomainError(
                f"not a sub-multiset: missing [{HalfInt(b2)},{HalfInt(e2)}]_{r}"
            )
        return MultiSegment(left)

    def __contains__(self, seg: Segment) -> bool:
        return (seg.rho, seg.e.twice, seg.b.twice) in self._key

    def contains(self, other: "MultiSegment") -> bool:
        """Multiset containment of other in self."""
        have = Counter(self._key)
        return all(have.get(k, 0) >= c for k, c in Counter(other._key).items())

    def count(self, seg: Segment) -> int:
        return self._key.count((seg.rho, seg.e.twice, seg.b.twice))

    def rank(self) -> int:
        """Sum of squared segment lengths; strictly increasing along operations."""
        return sum(((e2 - b2) // 2 + 1) ** 2 for (_r, e2, b2) in self._key)

    def support(self) -> "Support":
        pts = []
        for s in self._segs:
            pts.extend((s.rho, HalfInt(t)) for t in range(s.b.twice, s.e.twice + 1, 2))
        return Support(pts)

    def rhos(self) -> tuple[str, ...]:
        """Distinct labels, ascending."""
        return tuple(dict.fromkeys(s.rho for s in self._segs))

    def restrict(self, rho: str) -> "MultiSegment":
        return MultiSegment(s for s in self._segs if s.rho == rho)

    def by_rho(self) -> dict[str, "MultiSegment"]:
        """Decomposition into label blocks; concatenating the parts gives self back."""
        return {
            rho: MultiSegment(group)
            for rho, group in groupby(self._segs, key=lambda s: s.rho)
        }

    def __str__(self) -> str:
        if not self._segs:
            return "{}"
        parts = []
        for rho, group in groupby(self._segs, key=lambda s: s.rho):
            parts.append(rho + ":" + "+".join(str(s) for s in group))
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"MultiSegment({str(self)!r})"


class Support:
    """A multiset of labeled exponent points (rho, x)."""

    __slots__ = ("_points", "_hash")

    def __init__(self, points: Iterable[tuple[str, object]] = ()):
        pts = []
        for rho, x in points:
            if not isinstance(rho, str) or not rho:
                raise ConstraintError("support labels must be non-empty strings")
            pts.append((rho, HalfInt.coerce(x)))
        pts.sort(key=lambda p: (p[0], p[1].twice))
        self._points: tuple[tuple[str, HalfInt], ...] = tuple(pts)
        self._hash = hash(self.key)

    @classmethod
    def _from_key(cls, key) -> "Support":
        return cls((r, HalfInt(x2)) for (r, x2) in key)

    @property
    def points(self) -> tuple[tuple[str, HalfInt], ...]:
        return self._points

    @property
    def key(self):
        return tuple((r, x.twice) for (r, x) in self._points)

    def __iter__(self):
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __bool__(self) -> bool:
        return bool(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Support):
            return NotImplemented
        return self._points == other._points

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "Support":
        if not isinstance(other, Support):
            return NotImplemented
        return Support(self._points + other._points)

    def rhos(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(r for r, _ in self._points))

    def restrict(self, rho: str) -> "Support":
        return Support(p for p in self._points if p[0] == rho)

    def __str__(self) -> str:
        if not self._points:
            return "{}"
        return "{" + ", ".join(f"({r},{x})" for r, x in self._points) + "}"

    def __repr__(self) -> str:
        return f"Support({str(self)})"
