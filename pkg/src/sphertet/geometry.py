"""Z2-symmetric spherical tetrahedra with rational dihedral angles.

A quadruple (p, q, r, s) of dihedral angles is "Pythagorean" when

    cos p cos q + cos((r+s)/2) cos((r-s)/2) = 0,

equivalently cos a + cos b + cos c + cos d = 0 under a = p+q, b = p-q,
c = r, d = s.  Such a quadruple bounds an actual spherical tetrahedron
iff its Gram matrix is positive definite, in which case the volume is
the rational multiple of pi^2 given by the closed form in volume() and
the edge lengths are (p, q, pi-r, pi-s).

Everything here is decided exactly: residuals and Gram minors are
cyclotomic numbers, signs come from certified interval refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .angles import RationalAngle
from .cyclotomic import (
    CyclotomicNumber,
    SignedInterval,
    common_order,
    cos_as_cyclotomic,
    sign,
)


class PreconditionError(ValueError):
    """A geometric operation was called outside its domain of validity."""


@dataclass(frozen=True)
class RawQuadruple:
    """Angles (a, b, c, d) in (0, pi) entering the four-cosine equation."""

    a: RationalAngle
    b: RationalAngle
    c: RationalAngle
    d: RationalAngle

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v: RationalAngle = getattr(self, name)
            if not v.in_open_0_pi():
                raise ValueError(f"angle {name} = {v} outside (0, pi)")

    @property
    def angles(self) -> tuple[RationalAngle, ...]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class PythagoreanQuadruple:
    """Dihedral angles (p, q, r, s), canonical: p >= q and r >= s.

    Swapping p with q, or r with s, is an isometry of the underlying
    tetrahedron, so one representative per orbit is kept.
    """

    p: RationalAngle
    q: RationalAngle
    r: RationalAngle
    s: RationalAngle

    def __post_init__(self) -> None:
        for name in ("p", "q", "r", "s"):
            v: RationalAngle = getattr(self, name)
            if not v.in_open_0_pi():
                raise ValueError(f"angle {name} = {v} outside (0, pi)")
        if self.p < self.q or self.r < self.s:
            raise ValueError("quadruple not canonical; use PythagoreanQuadruple.of")

    @classmethod
    def of(cls, p: RationalAngle, q: RationalAngle, r: RationalAngle,
           s: RationalAngle) -> "PythagoreanQuadruple":
        """Canonicalizing constructor."""
        if p < q:
            p, q = q, p
        if r < s:
            r, s = s, r
        return cls(p, q, r, s)

    @classmethod
    def from_fractions(cls, p, q, r, s) -> "PythagoreanQuadruple":
        return cls.of(*(RationalAngle.from_fraction(Fraction(x)) for x in (p, q, r, s)))

    @property
    def angles(self) -> tuple[RationalAngle, ...]:
        return (self.p, self.q, self.r, self.s)

    @property
    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(a.frac for a in self.angles)

    def sort_key(self) -> tuple[Fraction, ...]:
        return self.fractions

    def __str__(self) -> str:
        return "(" + ", ".join(str(a.frac) for a in self.angles) + ")*pi"


@dataclass(frozen=True)
class EdgeLengths:
    lp: RationalAngle
    lq: RationalAngle
    lr: RationalAngle
    ls: RationalAngle

    @property
    def lengths(self) -> tuple[RationalAngle, ...]:
        return (self.lp, self.lq, self.lr, self.ls)


@dataclass(frozen=True)
class VolumeCoefficient:
    """Volume as the coefficient v in Vol = v * pi^2."""

    value: Fraction

    def __post_init__(self) -> None:
        if not (0 < self.value < 2):
            raise ValueError(f"volume coefficient {self.value} outside (0, 2)")

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class RealizabilityCertificate:
    """Exact outcome of the positive-definiteness test of the Gram matrix.

    g3_sign / g4_sign are exact signs of the order-3 and order-4 leading
    minors; the intervals are the certified enclosures that decided any
    nonzero sign (None for minors that are exactly zero).
    """

    quadruple: PythagoreanQuadruple
    g3_sign: int
    g4_sign: int
    g3_interval: Optional[SignedInterval]
    g4_interval: Optional[SignedInterval]

    @property
    def realizable(self) -> bool:
        return self.g3_sign > 0 and self.g4_sign > 0


@dataclass(frozen=True)
class GramMatrix:
    """The 4x4 Gram matrix of outward face normals, entries cyclotomic."""

    entries: tuple[tuple[CyclotomicNumber, ...], ...]

    @classmethod
    def from_quadruple(cls, quad: PythagoreanQuadruple) -> "GramMatrix":
        n = common_order(*(2 * a.den for a in quad.angles))
        cp = (-cos_as_cyclotomic(quad.p)).embed(n)
        cq = (-cos_as_cyclotomic(quad.q)).embed(n)
        cr = (-cos_as_cyclotomic(quad.r)).embed(n)
        cs = (-cos_as_cyclotomic(quad.s)).embed(n)
        one = CyclotomicNumber.from_rational(1).embed(n)
        rows = (
            (one, cr, cp, cq),
            (cr, one, cq, cp),
            (cp, cq, one, cs),
            (cq, cp, cs, one),
        )
        return cls(rows)

    def leading_minor(self, k: int) -> CyclotomicNumber:
        sub = [list(row[:k]) for row in self.entries[:k]]
        return _det(sub)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all((e[i][j] - e[j][i]).is_zero() for i in range(4) for j in range(i))


def _det(m: list[list[CyclotomicNumber]]) -> CyclotomicNumber:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total: Optional[CyclotomicNumber] = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return CyclotomicNumber.zero()
    return total


# -- residuals ------------------------------------------------------------


def raw_residual(raw: RawQuadruple) -> CyclotomicNumber:
    """cos a + cos b + cos c + cos d, exactly."""
    total = cos_as_cyclotomic(raw.a)
    for x in (raw.b, raw.c, raw.d):
        total = total + cos_as_cyclotomic(x)
    return total


def quadruple_residual(quad: PythagoreanQuadruple) -> CyclotomicNumber:
    """cos p cos q + cos((r+s)/2) cos((r-s)/2), exactly.

    Computed through the product-to-sum identity, so it equals half the
    four-cosine residual of the (a, b, c, d) form; the product route is
    kept alongside for cross-checks (see residual_product_form).
    """
    total = cos_as_cyclotomic(quad.p + quad.q)
    for x in (quad.p - quad.q, quad.r, quad.s):
        total = total + cos_as_cyclotomic(x)
    return total / 2


def residual_product_form(quad: PythagoreanQuadruple) -> CyclotomicNumber:
    """The same residual evaluated literally as a sum of two products."""
    half_sum = (quad.r + quad.s) / 2
    half_diff = (quad.r - quad.s) / 2
    return (
        cos_as_cyclotomic(quad.p) * cos_as_cyclotomic(quad.q)
        + cos_as_cyclotomic(half_sum) * cos_as_cyclotomic(half_diff)
    )


def triple_residual(p: RationalAngle, q: RationalAngle,
                    r: RationalAngle) -> CyclotomicNumber:
    """cos p cos q + cos r, exactly."""
    total = cos_as_cyclotomic(p + q) + cos_as_cyclotomic(p - q)
    return total / 2 + cos_as_cyclotomic(r)


def is_pythagorean(quad: PythagoreanQuadruple) -> bool:
    return quadruple_residual(quad).is_zero()


# -- coordinate changes ----------------------------------------------------


def abcd_to_pqrs(raw: RawQuadruple) -> Optional[PythagoreanQuadruple]:
    """Map (a, b, c, d) to the canonical (p, q, r, s), or None when the
    image leaves the open range (e.g. q = 0 for a = b)."""
    return pair_to_quadruple(raw.a, raw.b, raw.c, raw.d)


def pair_to_quadruple(a: RationalAngle, b: RationalAngle, c: RationalAngle,
                      d: RationalAngle) -> Optional[PythagoreanQuadruple]:
    """Like abcd_to_pqrs but accepts the wider search ranges
    (a in (0, 2pi), b in [0, pi))."""
    p = (a + b) / 2
    q = (a - b) / 2
    for v in (p, q, c, d):
        if not v.in_open_0_pi():
            return None
    return PythagoreanQuadruple.of(p, q, c, d)


def pqrs_to_abcd(quad: PythagoreanQuadruple) -> tuple[RationalAngle, ...]:
    """Inverse change of variables; a = p + q may reach [pi, 2pi)."""
    return (quad.p + quad.q, quad.p - quad.q, quad.r, quad.s)


# -- realizability ---------------------------------------------------------


def gram_matrix(quad: PythagoreanQuadruple) -> GramMatrix:
    return GramMatrix.from_quadruple(quad)


def _minor_sign(minor: CyclotomicNumber) -> tuple[int, Optional[SignedInterval]]:
    if minor.is_zero():
        return 0, None
    s = sign(minor)
    bits = 64
    ivl = minor.float_interval(bits)
    while ivl.sign == 0:
        bits *= 2
        ivl = minor.float_interval(bits)
    return s, ivl


@lru_cache(maxsize=None)
def realizability(quad: PythagoreanQuadruple) -> RealizabilityCertificate:
    """Exact positive-definiteness certificate for the Gram matrix.

    The leading 1x1 and 2x2 minors are 1 and sin^2 r, positive whenever
    the angles lie in (0, pi), so only the order-3 minor and the full
    determinant have to be sign-checked.
    """
    g = gram_matrix(quad)
    g3, iv3 = _minor_sign(g.leading_minor(3))
    if g3 <= 0:
        # determinant still reported for the certificate, but a failed G3
        # already settles non-realizability
        g4, iv4 = _minor_sign(g.leading_minor(4))
        return RealizabilityCertificate(quad, g3, g4, iv3, iv4)
    g4, iv4 = _minor_sign(g.leading_minor(4))
    return RealizabilityCertificate(quad, g3, g4, iv3, iv4)


def is_realizable(quad: PythagoreanQuadruple) -> bool:
    return realizability(quad).realizable


# -- metric data -----------------------------------------------------------


def _require_tetrahedron(quad: PythagoreanQuadruple, caller: str) -> None:
    if not is_pythagorean(quad):
        raise PreconditionError(
            f"{caller}: residual of {quad} is not zero; the closed-form "
            "volume only applies to exact solutions"
        )
    if not is_realizable(quad):
        cert = realizability(quad)
        raise PreconditionError(
            f"{caller}: {quad} has no realization (G3 sign {cert.g3_sign}, "
            f"G4 sign {cert.g4_sign})"
        )


def volume(quad: PythagoreanQuadruple, checked: bool = True) -> VolumeCoefficient:
    """Volume of the tetrahedron as a rational multiple of pi^2:

        Vol = 1/2 ( r(2pi - r)/2 + p^2 + q^2 + s(2pi - s)/2 - pi^2 ).

    With angles x = f*pi this is pure Fraction arithmetic on the f's.
    """
    if checked:
        _require_tetrahedron(quad, "volume")
    p, q, r, s = quad.fractions
    v = (r * (2 - r) / 2 + p * p + q * q + s * (2 - s) / 2 - 1) / 2
    return VolumeCoefficient(v)


def edge_lengths(quad: PythagoreanQuadruple, checked: bool = True) -> EdgeLengths:
    """Edge lengths (p, q, pi - r, pi - s) of the realized tetrahedron."""
    if checked:
        _require_tetrahedron(quad, "edge_lengths")
    return EdgeLengths(quad.p, quad.q, quad.r.supplement(), quad.s.supplement())


def vertex_links(quad: PythagoreanQuadruple) -> tuple[tuple[RationalAngle, ...], ...]:
    """Angle triples of the four vertex links.

    Two vertices see the triangle (p, q, s), the other two see (p, q, r);
    all four are returned in vertex order.
    """
    p, q, r, s = quad.angles
    return ((p, q, s), (p, q, s), (p, q, r), (p, q, r))
