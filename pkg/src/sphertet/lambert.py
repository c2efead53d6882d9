"""Rational Lambert cubes and their equal-volume companion tetrahedra.

A Lambert cube L(a, b, c) is a combinatorial cube with essential
dihedral angles a, b, c on three pairwise non-adjacent edges and right
angles elsewhere.  It is realizable as a spherical polytope exactly
when pi/2 < a, b, c < pi and

    cos^2 a + cos^2 b + cos^2 c = 1,

in which case its volume is  (pi^2/2 - (pi-a)^2 - (pi-b)^2 - (pi-c)^2)/4.

Squaring doubles the angles:  cos^2 x = (1 + cos 2x)/2 turns the
constraint into the three-cosine equation cos 2a + cos 2b + cos 2c = -1
with rational target, which the vanishing-sums classification makes
finite: substituting y = 2*pi - 2x maps the window x in (pi/2, pi) onto
y in (0, pi), so the standard denominator grid applies.  The search
returns exactly two cubes.  No continuous family exists: the only
parameter-bearing sub-sum available to a target of -1 with unit
coefficients is the pair cos t + cos(pi - t) = 0, which would force a
third cosine equal to -1 and hence an angle outside the open window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .angles import RationalAngle
from .cyclotomic import CyclotomicNumber, cos_as_cyclotomic, sign
from .geometry import PreconditionError, PythagoreanQuadruple, VolumeCoefficient
from .search import SearchConfig, grid_angles


@dataclass(frozen=True)
class LambertCube:
    """Essential angles of a spherical Lambert cube, largest first."""

    a: RationalAngle
    b: RationalAngle
    c: RationalAngle

    def __post_init__(self) -> None:
        angles = sorted((self.a, self.b, self.c), reverse=True)
        object.__setattr__(self, "a", angles[0])
        object.__setattr__(self, "b", angles[1])
        object.__setattr__(self, "c", angles[2])
        for x in angles:
            if not Fraction(1, 2) < x.frac < 1:
                raise PreconditionError(
                    f"essential angle {x} outside (pi/2, pi)"
                )

    @property
    def angles(self) -> tuple[RationalAngle, RationalAngle, RationalAngle]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"L({self.a}, {self.b}, {self.c})"


def lambert_residual(a: RationalAngle, b: RationalAngle,
                     c: RationalAngle) -> CyclotomicNumber:
    """Exact cos^2 a + cos^2 b + cos^2 c - 1."""
    total = CyclotomicNumber.zero(1) - Fraction(1)
    for x in (a, b, c):
        cx = cos_as_cyclotomic(x)
        total = total + cx * cx
    return total


def doubled_residual(a: RationalAngle, b: RationalAngle,
                     c: RationalAngle) -> CyclotomicNumber:
    """(cos 2a + cos 2b + cos 2c + 1)/2; equals lambert_residual exactly."""
    total = CyclotomicNumber.zero(1) + Fraction(1)
    for x in (a, b, c):
        total = total + cos_as_cyclotomic(x + x)
    return total * Fraction(1, 2)


def lambert_volume(cube: LambertCube) -> VolumeCoefficient:
    """Volume as an exact rational coefficient of pi^2."""
    if not lambert_residual(*cube.angles).is_zero():
        raise PreconditionError(f"{cube} violates the cosine-square relation")
    total = Fraction(1, 2)
    for x in cube.angles:
        total -= (1 - x.frac) ** 2
    return VolumeCoefficient(total / 4)


@dataclass(frozen=True)
class LambertSearchReport:
    cubes: tuple[LambertCube, ...]
    candidates_scanned: int
    prefilter_hits: int
    no_continuous_family: bool
    volumes: tuple[VolumeCoefficient, ...]


def search_rational_lambert_cubes(
    cfg: Optional[SearchConfig] = None,
) -> LambertSearchReport:
    """Exhaustive search for rational Lambert cubes; returns both found.

    Scans unordered triples from the folded grid y = 2*pi - 2x in
    (0, pi) for cos y1 + cos y2 + cos y3 = -1 (float prefilter, exact
    confirmation), then maps back to essential angles.
    """
    cfg = cfg or SearchConfig()
    ys = grid_angles(cfg.profile.union_denominators(), Fraction(0), Fraction(1))
    cos_f = [math.cos(float(y)) for y in ys]
    cubes = []
    candidates = 0
    hits = 0
    n = len(ys)
    for i in range(n):
        for j in range(i, n):
            partial = cos_f[i] + cos_f[j]
            for k in range(j, n):
                candidates += 1
                if abs(partial + cos_f[k] + 1.0) >= cfg.tolerance:
                    continue
                hits += 1
                total = (cos_as_cyclotomic(ys[i]) + cos_as_cyclotomic(ys[j])
                         + cos_as_cyclotomic(ys[k]) + Fraction(1))
                if not total.is_zero():
                    continue
                essential = tuple(
                    RationalAngle.from_fraction(1 - y.frac / 2)
                    for y in (ys[i], ys[j], ys[k])
                )
                cubes.append(LambertCube(*essential))
    cubes.sort(key=lambda cu: tuple(x.frac for x in cu.angles), reverse=True)
    # the would-be parametric pattern needs a third angle with cosine -1,
    # i.e. y = pi, excluded by the open window; verified exactly:
    no_family = not any(y.frac == 1 for y in ys) and sign(
        cos_as_cyclotomic(RationalAngle(1, 1)) + Fraction(1)
    ) == 0
    return LambertSearchReport(
        cubes=tuple(cubes),
        candidates_scanned=candidates,
        prefilter_hits=hits,
        no_continuous_family=no_family,
        volumes=tuple(lambert_volume(cu) for cu in cubes),
    )


@dataclass(frozen=True)
class CompanionTetrahedron:
    """An equal-volume tetrahedron paired with a Lambert cube.

    The quadruple (pi/2, pi/2, pi/2, s) does not satisfy the four-cosine
    equation (its residual is cos(s)/2), so its volume comes from the
    one-essential-angle reflection-group family: a tetrahedron with a
    single essential angle s = pi/k and right angles elsewhere has
    volume pi^2/(4k) = pi*s/4, extended to rational k.
    """

    quadruple: PythagoreanQuadruple
    vol: VolumeCoefficient
    volume_route: str
    coxeter_parameter: Fraction  # the k of the I2(k) x A1 x A1 pattern


def companion_tetrahedra() -> tuple[CompanionTetrahedron, CompanionTetrahedron]:
    """The two tetrahedra matching the Lambert cube volumes exactly."""
    out = []
    for s_num, s_den in ((31, 144), (17, 90)):
        s = RationalAngle(s_num, s_den)
        half = RationalAngle(1, 2)
        quad = PythagoreanQuadruple.of(half, half, half, s)
        from .geometry import quadruple_residual

        residual = quadruple_residual(quad)
        if residual.is_zero():
            from .geometry import volume

            vol = volume(quad)
            route = "four-cosine"
        else:
            # residual = cos(s)/2 exactly; cross-checked here
            expected = cos_as_cyclotomic(s) * Fraction(1, 2)
            if not (residual - expected).is_zero():
                raise ArithmeticError("unexpected residual shape for companion")
            vol = VolumeCoefficient(s.frac / 4)
            route = "coxeter-parametric"
        out.append(
            CompanionTetrahedron(
                quadruple=quad,
                vol=vol,
                volume_route=route,
                coxeter_parameter=1 / s.frac,
            )
        )
    t1, t2 = out
    if t1.vol.value != Fraction(31, 576) or t2.vol.value != Fraction(17, 360):
        raise ArithmeticError("companion volumes disagree with the cube volumes")
    return t1, t2
