from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphertet.angles import RationalAngle, angle
from sphertet.cyclotomic import cos_as_cyclotomic
from sphertet.geometry import (
    PreconditionError,
    PythagoreanQuadruple,
    RawQuadruple,
    edge_lengths,
    gram_matrix,
    is_pythagorean,
    is_realizable,
    pair_to_quadruple,
    quadruple_residual,
    realizability,
    vertex_links,
    volume,
)

open_angles = st.builds(
    RationalAngle,
    st.integers(min_value=1, max_value=29),
    st.sampled_from((2, 3, 5, 6, 10, 15, 30)),
).filter(lambda a: a.in_open_0_pi())


def quad(p, q, r, s):
    return PythagoreanQuadruple.of(angle(*p), angle(*q), angle(*r), angle(*s))


ALL_RIGHT = quad((1, 2), (1, 2), (1, 2), (1, 2))
ROW_1 = quad((2, 3), (1, 3), (3, 5), (1, 5))
ROW_4 = quad((2, 5), (1, 5), (2, 3), (1, 2))
ROW_30 = quad((3, 5), (2, 5), (3, 5), (1, 3))


def test_canonical_ordering():
    q = PythagoreanQuadruple.of(angle(1, 3), angle(2, 3), angle(1, 5), angle(3, 5))
    assert q.p >= q.q and q.r >= q.s
    assert q.p == angle(2, 3) and q.r == angle(3, 5)


def test_angles_must_be_interior():
    with pytest.raises(ValueError):
        PythagoreanQuadruple.of(angle(0), angle(1, 2), angle(1, 2), angle(1, 2))
    with pytest.raises(ValueError):
        PythagoreanQuadruple.of(angle(1), angle(1, 2), angle(1, 2), angle(1, 2))


@pytest.mark.parametrize("q", [ALL_RIGHT, ROW_1, ROW_4, ROW_30])
def test_known_solutions_have_zero_residual(q):
    assert quadruple_residual(q).is_zero()
    assert is_pythagorean(q)


def test_non_solution_detected():
    q = quad((1, 3), (1, 3), (1, 2), (1, 2))
    assert not is_pythagorean(q)


@given(open_angles, open_angles)
def test_pair_form_matches_four_cosine_form(a, b):
    """The (p, q) = ((a+b)/2, (a-b)/2) substitution sends the four-term
    cosine sum to the quadruple residual, doubled."""
    if a <= b or a.frac + b.frac >= 2:
        return
    c, d = angle(1, 3), angle(3, 5)
    q = pair_to_quadruple(a, b, c, d)
    if q is None:
        return
    lhs = sum(
        (cos_as_cyclotomic(x) for x in (a, b, c, d)),
        cos_as_cyclotomic(angle(0)) * 0,
    )
    assert (quadruple_residual(q) * 2 - lhs).is_zero()


def test_volume_of_the_all_right_tetrahedron():
    assert volume(ALL_RIGHT).value == Fraction(1, 8)


@pytest.mark.parametrize(
    "q,expected",
    [
        (ROW_1, Fraction(7, 90)),
        (ROW_4, Fraction(7, 720)),
        (ROW_30, Fraction(49, 450)),
    ],
)
def test_volumes_of_reference_rows(q, expected):
    assert volume(q).value == expected


def test_volume_requires_a_solution():
    with pytest.raises(PreconditionError):
        volume(quad((1, 3), (1, 3), (1, 2), (1, 2)))


def test_edge_lengths_pattern():
    lengths = edge_lengths(ROW_1)
    assert lengths.lp == ROW_1.p
    assert lengths.lq == ROW_1.q
    assert lengths.lr == ROW_1.r.supplement()
    assert lengths.ls == ROW_1.s.supplement()


def test_realizability_certificates():
    cert = realizability(ALL_RIGHT)
    assert cert.realizable
    # nearly degenerate but strictly positive definite
    thin = PythagoreanQuadruple.of(
        angle(1, 18), angle(1, 18), angle(17, 18), angle(17, 18)
    )
    assert is_realizable(thin)
    # an indefinite Gram matrix
    flat = PythagoreanQuadruple.of(
        angle(5, 6), angle(5, 6), angle(1, 2), angle(1, 2)
    )
    cert = realizability(flat)
    assert not cert.realizable
    assert cert.g3_sign <= 0 or cert.g4_sign <= 0


def test_gram_matrix_shape():
    g = gram_matrix(ROW_1)
    assert g.is_symmetric()
    assert g.leading_minor(1).rational_value == 1
    # the 2x2 minor is sin^2 r
    sin2 = 1 - cos_as_cyclotomic(ROW_1.r) * cos_as_cyclotomic(ROW_1.r)
    assert (g.leading_minor(2) - sin2).is_zero()


def test_vertex_links_shape():
    links = vertex_links(ROW_1)
    assert len(links) == 4
    p, q, r, s = ROW_1.angles
    assert links[0] == (p, q, s)
    assert links[2] == (p, q, r)


def test_raw_quadruple_round_trip():
    raw = RawQuadruple(angle(2, 3), angle(1, 3), angle(3, 5), angle(1, 5))
    assert len(raw.angles) == 4
