"""Data model: half-integers, segments, multi-segments, supports."""
import pytest
from hypothesis import given

from mseg import (
    ConstraintError,
    DomainError,
    HalfInt,
    MultiSegment,
    Segment,
    Support,
    linked,
    precedes,
)
from strategies import multisegments, segments


class TestHalfInt:
    def test_coerce_forms(self):
        assert HalfInt.coerce(2).twice == 4
        assert HalfInt.coerce("3/2").twice == 3
        assert HalfInt.coerce("-3/2").twice == -3
        assert HalfInt.coerce("-7").twice == -14
        assert HalfInt.coerce(HalfInt(5)).twice == 5

    def test_coerce_rejects_garbage(self):
        for bad in ("4/2", "1/3", "", "x", "1.5", "3 / 2"):
            with pytest.raises(ConstraintError):
                HalfInt.coerce(bad)
        with pytest.raises(ConstraintError):
            HalfInt.coerce(True)
        with pytest.raises(ConstraintError):
            HalfInt.coerce(1.5)

    def test_arithmetic_is_exact(self):
        x = HalfInt.coerce("1/2")
        assert (x + x).twice == 2
        assert (x + 1).twice == 5 - 2
        assert (1 + x).twice == 3
        assert (x - 1).twice == -1
        assert (-x).twice == -1

    def test_order_matches_rationals(self):
        vals = [HalfInt(t) for t in (-3, -2, 0, 1, 4)]
        assert vals == sorted(vals)
        assert HalfInt(1) < HalfInt(2)
        assert not HalfInt(2) < HalfInt(2)

    def test_integrality(self):
        assert HalfInt(4).is_integer
        assert not HalfInt(3).is_integer
        assert HalfInt(4).as_int() == 2
        with pytest.raises(DomainError):
            HalfInt(3).as_int()

    def test_str(self):
        assert str(HalfInt(4)) == "2"
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(-1)) == "-1/2"
        assert str(HalfInt(0)) == "0"


class TestSegment:
    def test_singleton(self):
        s = Segment("rho", 0, 0)
        assert s.length == 1
        assert str(s) == "[0,0]"

    def test_half_integer_endpoints(self):
        s = Segment("rho", "-3/2", "1/2")
        assert s.length == 3
        assert [p.twice for p in s.points()] == [-3, -1, 1]

    def test_reversed_endpoints_rejected(self):
        with pytest.raises(ConstraintError):
            Segment("rho", 1, 0)

    def test_non_integral_span_rejected(self):
        with pytest.raises(ConstraintError):
            Segment("rho", 0, "1/2")

    def test_empty_label_rejected(self):
        with pytest.raises(ConstraintError):
            Segment("", 0, 0)

    def test_shrink(self):
        assert Segment("rho", 0, 2).shrink() == Segment("rho", 0, 1)
        assert Segment("rho", 1, 1).shrink() is None
        assert Segment("rho", "-3/2", "-1/2").shrink() == Segment("rho", "-3/2", "-3/2")

    @given(segments())
    def test_shrink_length_times_empties(self, seg):
        cur, steps = seg, 0
        while cur is not None:
            nxt = cur.shrink()
            if nxt is not None:
                assert nxt.length == cur.length - 1
            cur = nxt
            steps += 1
        assert steps == seg.length

    def test_contains(self):
        assert Segment("rho", 0, 2).contains(Segment("rho", 1, 1))
        assert not Segment("rho", 0, 2).contains(Segment("sigma", 1, 1))
        assert not Segment("rho", 0, 2).contains(Segment("rho", "1/2", "1/2"))


class TestLinked:
    def test_overlapping(self):
        assert linked(Segment("rho", 0, 1), Segment("rho", 1, 2))

    def test_containment_is_not_linked(self):
        assert not linked(Segment("rho", 0, 2), Segment("rho", 1, 1))

    def test_gap_is_not_linked(self):
        assert not linked(Segment("rho", 0, 1), Segment("rho", 3, 4))

    def test_adjacent_is_linked(self):
        assert linked(Segment("rho", 0, 1), Segment("rho", 2, 3))

    def test_distinct_labels_never_linked(self):
        assert not linked(Segment("rho", 0, 1), Segment("sigma", 0, 1))

    def test_distinct_translation_classes_never_linked(self):
        assert not linked(Segment("rho", 0, 1), Segment("rho", "1/2", "3/2"))

    @given(segments(), segments())
    def test_symmetric(self, d1, d2):
        assert linked(d1, d2) == linked(d2, d1)


class TestPrecedes:
    def test_basic(self):
        assert precedes(Segment("rho", 0, 1), Segment("rho", 1, 2))
        assert not precedes(Segment("rho", 1, 2), Segment("rho", 0, 1))

    def test_containment_does_not_precede(self):
        assert not precedes(Segment("rho", -1, 1), Segment("rho", 0, 1))

    @given(segments(), segments())
    def test_implies_linked_and_antisymmetric(self, d1, d2):
        if precedes(d1, d2):
            assert linked(d1, d2)
            assert not precedes(d2, d1)


class TestMultiSegment:
    def test_canonical_order(self):
        ms = MultiSegment(
            [Segment("rho", 0, 0), Segment("rho", 0, 1), Segment("rho", 1, 1)]
        )
        assert [str(s) for s in ms] == ["[1,1]", "[0,1]", "[0,0]"]

    def test_equality_ignores_input_order(self):
        a = MultiSegment([Segment("rho", 0, 1), Segment("rho", 1, 2)])
        b = MultiSegment([Segment("rho", 1, 2), Segment("rho", 0, 1)])
        assert a == b
        assert hash(a) == hash(b)

    @given(multisegments())
    def test_canonicalization_idempotent(self, ms):
        assert MultiSegment(ms.segments) == ms

    def test_add_and_subtract(self):
        a = MultiSegment([Segment("rho", 0, 1)])
        b = MultiSegment([Segment("rho", 1, 1)])
        both = a + b
        assert len(both) == 2
        assert both - b == a

    def test_subtract_missing_segment(self):
        a = MultiSegment([Segment("rho", 0, 1)])
        with pytest.raises(DomainError):
            a - MultiSegment([Segment("rho", 0, 0)])

    def test_multiplicity(self):
        dup = MultiSegment([Segment("rho", 0, 0), Segment("rho", 0, 0)])
        assert dup.count(Segment("rho", 0, 0)) == 2
        assert Segment("rho", 0, 0) in dup
        assert dup.contains(MultiSegment([Segment("rho", 0, 0)]))
        assert not MultiSegment([Segment("rho", 0, 0)]).contains(dup)

    def test_support_examples(self):
        one = MultiSegment([Segment("rho", 0, 1)])
        assert one.support() == Support([("rho", 0), ("rho", 1)])
        two = MultiSegment([Segment("rho", 0, 1), Segment("rho", 1, 1)])
        assert two.support() == Support([("rho", 0), ("rho", 1), ("rho", 1)])
        assert MultiSegment().support() == Support()

    @given(multisegments(max_size=4), multisegments(max_size=4))
    def test_support_is_additive(self, a, b):
        assert (a + b).support() == a.support() + b.support()

    def test_by_rho_partition(self):
        ms = MultiSegment([Segment("rho1", 0, 1), Segment("rho2", 0, 0)])
        parts = ms.by_rho()
        assert set(parts) == {"rho1", "rho2"}
        assert parts["rho1"] == MultiSegment([Segment("rho1", 0, 1)])
        assert parts["rho2"] == MultiSegment([Segment("rho2", 0, 0)])
        assert MultiSegment().by_rho() == {}

    @given(multisegments())
    def test_by_rho_reassembles(self, ms):
        total = MultiSegment()
        for part in ms.by_rho().values():
            total = total + part
        assert total == ms

    def test_rank(self):
        assert MultiSegment([Segment("rho", 0, 1)]).rank() == 4
        assert MultiSegment([Segment("rho", 0, 0), Segment("rho", 1, 1)]).rank() == 2

    def test_str_empty(self):
        assert str(MultiSegment()) == "{}"

    def test_str_two_blocks(self):
        ms = MultiSegment([Segment("sigma", 0, 0), Segment("rho", 0, 1)])
        assert str(ms) == "rho:[0,1]; sigma:[0,0]"


class TestSupport:
    def test_sorted_points(self):
        s = Support([("rho", 1), ("rho", 0), ("rho", 0)])
        assert [x.twice for (_r, x) in s.points] == [0, 0, 2]

    def test_restrict(self):
        s = Support([("rho", 0), ("sigma", 1)])
        assert s.restrict("sigma") == Support([("sigma", 1)])
        assert s.rhos() == ("rho", "sigma")

    def test_str(self):
        assert str(Support()) == "{}"
        assert str(Support([("rho", "1/2")])) == "{(rho,1/2)}"
