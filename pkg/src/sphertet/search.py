"""Exhaustive search for rational solutions of the four-cosine equation.

The Conway-Jones classification of vanishing rational sums of cosines
confines the angles of any sporadic solution of

    cos a + cos b + cos c + cos d = 0

to reduced denominators in {1, 2, 3, 5, 7, 15} (the union of the lists
attached to each rational length; length-4 relations never vanish, which
the search re-verifies at startup from the four known denominator-21
relations).  That makes the solution set finite up to the continuous
families, and a grid scan over

    a in (0, 2pi), b in {0} union (0, pi), c >= d in (0, pi),
    a > b, a + b < 2pi

(complements to pi and 2pi included, b = 0 covering the degenerate
"infinite denominator" case p = q) reaches every canonical quadruple
p = (a+b)/2, q = (a-b)/2, r = c, s = d with p >= q, r >= s.

Candidates pass a fast float prefilter (|S| < tolerance) and are then
confirmed exactly in Q(zeta_420).  Survivors are deduplicated, filtered
through the exact Gram positive-definiteness test, and matched against
the continuous-family catalog; what remains is the sporadic list.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .angles import RationalAngle
from .cyclotomic import CyclotomicNumber, cos_as_cyclotomic
from .geometry import (
    EdgeLengths,
    PythagoreanQuadruple,
    RawQuadruple,
    VolumeCoefficient,
    edge_lengths,
    pair_to_quadruple,
    realizability,
    volume,
)

# The four denominator-21 relations that would be needed for a vanishing
# sum of rational length 4; each equals 1/2, so no such solution exists.
_LENGTH4_RELATIONS = (
    ((1, (1, 7)), (1, (3, 7)), (-1, (1, 21)), (1, (8, 21))),
    ((1, (1, 7)), (-1, (2, 7)), (1, (2, 21)), (-1, (5, 21))),
    ((-1, (2, 7)), (1, (3, 7)), (1, (4, 21)), (1, (10, 21))),
    ((-1, (1, 15)), (1, (2, 15)), (1, (4, 15)), (-1, (7, 15))),
)


@dataclass(frozen=True)
class DenominatorProfile:
    """Denominator lists per rational length of a vanishing sub-sum.

    length1 covers fully rational cosines (the zero angle plays the role
    of the infinite denominator and is toggled by include_zero); length2
    and the two length3 lists come with the sporadic relations of the
    cosine classification.
    """

    length1: tuple[int, ...] = (1, 2, 3)
    length2: tuple[int, ...] = (3, 5)
    length3_a: tuple[int, ...] = (3, 7)
    length3_b: tuple[int, ...] = (3, 5, 15)
    include_zero: bool = True

    def union_denominators(self) -> tuple[int, ...]:
        return tuple(
            sorted(set(self.length1) | set(self.length2)
                   | set(self.length3_a) | set(self.length3_b))
        )

    @classmethod
    def length1_only(cls) -> "DenominatorProfile":
        return cls(length2=(), length3_a=(), length3_b=())


@dataclass(frozen=True)
class SearchConfig:
    tolerance: float = 1e-8
    workers: int = 1
    profile: DenominatorProfile = field(default_factory=DenominatorProfile)

    def describe(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "workers": self.workers,
            "denominators": list(self.profile.union_denominators()),
            "include_zero": self.profile.include_zero,
        }


def grid_angles(dens: Sequence[int], lo: Fraction, hi: Fraction) -> list[RationalAngle]:
    """All angles nu/den*pi with reduced denominator in dens, lo < nu/den < hi."""
    out = set()
    for den in dens:
        nu = 1
        while Fraction(nu, den) < hi:
            if Fraction(nu, den) > lo and math.gcd(nu, den) == 1:
                out.add(RationalAngle(nu, den))
            nu += 1
    return sorted(out, key=lambda x: x.frac)


def enumerate_candidates(profile: DenominatorProfile) -> Iterator[RawQuadruple]:
    """Ordered tuples (a, b, c, d), each in (0, pi), from the profile grid.

    This is the textbook candidate stream; the sporadic pipeline scans
    the wider complement-extended stream (see _pair_candidates).
    """
    angles = grid_angles(profile.union_denominators(), Fraction(0), Fraction(1))
    for a in angles:
        for b in angles:
            for c in angles:
                for d in angles:
                    yield RawQuadruple(a, b, c, d)


def confirm_zero(raw_angles: Sequence[RationalAngle], cfg: SearchConfig) -> bool:
    """Two-stage zero test for sum(cos x_i).

    A float evaluation rejects when |S| >= tolerance; only near-zeros
    reach the exact cyclotomic test, which has the final word.
    """
    approx = sum(math.cos(float(x)) for x in raw_angles)
    if abs(approx) >= cfg.tolerance:
        return False
    total: Optional[CyclotomicNumber] = None
    for x in raw_angles:
        c = cos_as_cyclotomic(x)
        total = c if total is None else total + c
    return total.is_zero()


def _exact_cosine_sum_is_zero(angles: Sequence[RationalAngle]) -> bool:
    total: Optional[CyclotomicNumber] = None
    for x in angles:
        c = cos_as_cyclotomic(x)
        total = c if total is None else total + c
    return total.is_zero()


# -- rational length -------------------------------------------------------


def rational_length(raw: RawQuadruple) -> Optional[int]:
    """Size of the largest minimal rational sub-sum of cos a + ... + cos d.

    A sub-sum is minimal-rational when it is rational but none of its
    proper nonempty sub-sums is.  Returns None when no sub-sum at all is
    rational.  (Values 1..4 are possible for arbitrary inputs; vanishing
    sums never have length 4.)
    """
    cosines = [cos_as_cyclotomic(x) for x in raw.angles]
    rational_mask = []
    for mask in range(1, 16):
        total: Optional[CyclotomicNumber] = None
        for i in range(4):
            if mask & (1 << i):
                total = cosines[i] if total is None else total + cosines[i]
        if total.is_rational():
            rational_mask.append(mask)
    rational_set = set(rational_mask)
    best: Optional[int] = None
    for mask in rational_mask:
        proper_rational = any(
            sub in rational_set
            for sub in range(1, mask)
            if sub & mask == sub and sub != mask
        )
        if not proper_rational:
            size = bin(mask).count("1")
            if best is None or size > best:
                best = size
    return best


def verify_no_length4_solutions() -> bool:
    """The four length-4 relations each sum to 1/2 exactly, hence never 0."""
    for relation in _LENGTH4_RELATIONS:
        total: Optional[CyclotomicNumber] = None
        for coeff, (num, den) in relation:
            term = cos_as_cyclotomic(RationalAngle(num, den)) * coeff
            total = term if total is None else total + term
        if not (total - Fraction(1, 2)).is_zero() or total.is_zero():
            return False
    return True


# -- the sporadic pipeline ---------------------------------------------------


def _search_grids(profile: DenominatorProfile):
    dens = profile.union_denominators()
    a_vals = grid_angles(dens, Fraction(0), Fraction(2))
    b_vals = grid_angles(dens, Fraction(0), Fraction(1))
    if profile.include_zero:
        b_vals = [RationalAngle(0)] + b_vals
    cd_vals = grid_angles(dens, Fraction(0), Fraction(1))
    return a_vals, b_vals, cd_vals


def _pair_candidates(a_vals, b_vals):
    pairs = []
    for a in a_vals:
        for b in b_vals:
            if a > b and (a.frac + b.frac) < 2:
                pairs.append((a, b))
    return pairs


def candidate_count(profile: DenominatorProfile) -> int:
    """Size of the extended candidate stream (used as a cross-check)."""
    a_vals, b_vals, cd_vals = _search_grids(profile)
    n_cd = len(cd_vals) * (len(cd_vals) + 1) // 2
    return len(_pair_candidates(a_vals, b_vals)) * n_cd


def _scan_block(a_vals, b_vals, cd_vals, tolerance: float):
    """Prefilter + exact confirmation for one block of a-values.

    Returns exact solutions as (a, b, c, d) RationalAngle tuples with
    c >= d; also returns (candidates, prefilter hits) tallies.
    """
    pairs = _pair_candidates(a_vals, b_vals)
    if not pairs:
        return [], 0, 0
    cd_pairs = []
    for i, c in enumerate(cd_vals):
        for d in cd_vals[: i + 1]:
            cd_pairs.append((c, d))
    pair_sum = np.array(
        [math.cos(float(a)) + math.cos(float(b)) for a, b in pairs]
    )
    cd_sum = np.array(
        [math.cos(float(c)) + math.cos(float(d)) for c, d in cd_pairs]
    )
    total = pair_sum[:, None] + cd_sum[None, :]
    hit_i, hit_j = np.nonzero(np.abs(total) < tolerance)
    solutions = []
    for i, j in zip(hit_i.tolist(), hit_j.tolist()):
        a, b = pairs[i]
        c, d = cd_pairs[j]
        angles = [x for x in (a, b, c, d) if not x.is_zero()]
        extra = 1 if len(angles) == 3 else 0  # cos(0) = 1 from b = 0
        total_exact: Optional[CyclotomicNumber] = None
        for x in angles:
            cx = cos_as_cyclotomic(x)
            total_exact = cx if total_exact is None else total_exact + cx
        if extra:
            total_exact = total_exact + Fraction(1)
        if total_exact.is_zero():
            solutions.append((a, b, c, d))
    return solutions, len(pairs) * len(cd_pairs), len(hit_i)


def _scan_block_worker(args):
    a_fracs, b_fracs, cd_fracs, tolerance = args
    a_vals = [RationalAngle.from_fraction(f) for f in a_fracs]
    b_vals = [RationalAngle.from_fraction(f) for f in b_fracs]
    cd_vals = [RationalAngle.from_fraction(f) for f in cd_fracs]
    sols, cands, hits = _scan_block(a_vals, b_vals, cd_vals, tolerance)
    return (
        [tuple(x.frac for x in sol) for sol in sols],
        cands,
        hits,
    )


@dataclass(frozen=True)
class SporadicRow:
    quadruple: PythagoreanQuadruple
    lengths: EdgeLengths
    vol: VolumeCoefficient


@dataclass(frozen=True)
class SearchReport:
    config: SearchConfig
    candidates_scanned: int
    prefilter_hits: int
    raw_solution_count: int
    realizable_count: int
    family_member_count: int
    sporadic: tuple[SporadicRow, ...]
    raw_solutions: tuple[PythagoreanQuadruple, ...]
    realizable: tuple[PythagoreanQuadruple, ...]
    length4_skip_verified: bool
    elapsed_seconds: float
    notes: tuple[str, ...] = ()

    @property
    def sporadic_count(self) -> int:
        return len(self.sporadic)

    def stage_quadruples(self, stage: str) -> tuple[PythagoreanQuadruple, ...]:
        if stage == "raw":
            return self.raw_solutions
        if stage == "realizable":
            return self.realizable
        if stage == "sporadic":
            return tuple(row.quadruple for row in self.sporadic)
        raise ValueError(f"unknown stage {stage!r}")

    def comparable(self) -> dict:
        """Everything except timing, for determinism comparisons."""
        return {
            "candidates": self.candidates_scanned,
            "hits": self.prefilter_hits,
            "raw": [q.fractions for q in self.raw_solutions],
            "realizable": [q.fractions for q in self.realizable],
            "sporadic": [row.quadruple.fractions for row in self.sporadic],
        }


def run_sporadic_search(cfg: Optional[SearchConfig] = None) -> SearchReport:
    cfg = cfg or SearchConfig()
    t0 = time.monotonic()
    length4_ok = verify_no_length4_solutions()
    if not length4_ok:
        raise ArithmeticError(
            "length-4 relations failed exact verification; search space invalid"
        )
    a_vals, b_vals, cd_vals = _search_grids(cfg.profile)

    solutions: list[tuple[RationalAngle, ...]] = []
    candidates = 0
    hits = 0
    if cfg.workers <= 1:
        sols, candidates, hits = _scan_block(a_vals, b_vals, cd_vals, cfg.tolerance)
        solutions.extend(sols)
    else:
        chunks = [a_vals[i:: cfg.workers] for i in range(cfg.workers)]
        b_fracs = [x.frac for x in b_vals]
        cd_fracs = [x.frac for x in cd_vals]
        jobs = [
            ([x.frac for x in chunk], b_fracs, cd_fracs, cfg.tolerance)
            for chunk in chunks
            if chunk
        ]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for sols, cands, h in pool.map(_scan_block_worker, jobs):
                solutions.extend(
                    tuple(RationalAngle.from_fraction(f) for f in sol)
                    for sol in sols
                )
                candidates += cands
                hits += h

    seen: set[tuple[Fraction, ...]] = set()
    raw_quads: list[PythagoreanQuadruple] = []
    for a, b, c, d in solutions:
        quad = pair_to_quadruple(a, b, c, d)
        if quad is None:
            continue
        key = quad.fractions
        if key not in seen:
            seen.add(key)
            raw_quads.append(quad)
    raw_quads.sort(key=lambda q: q.sort_key())

    realizable = [q for q in raw_quads if realizability(q).realizable]

    from .families import builtin_families, member_of

    families = builtin_families()
    sporadic_quads = []
    member_count = 0
    for quad in realizable:
        if any(member_of(quad, fam, extent="curve") is not None
               for fam in families):
            member_count += 1
        else:
            sporadic_quads.append(quad)

    rows = tuple(
        SporadicRow(q, edge_lengths(q, checked=False), volume(q, checked=False))
        for q in sporadic_quads
    )
    notes = []
    if len(realizable) != 172:
        notes.append(
            f"realizable-stage count {len(realizable)} differs from the "
            "published 172; orbit conventions differ, sporadic stage is "
            "the authoritative comparison"
        )
    return SearchReport(
        config=cfg,
        candidates_scanned=candidates,
        prefilter_hits=hits,
        raw_solution_count=len(raw_quads),
        realizable_count=len(realizable),
        family_member_count=member_count,
        sporadic=rows,
        raw_solutions=tuple(raw_quads),
        realizable=tuple(realizable),
        length4_skip_verified=length4_ok,
        elapsed_seconds=time.monotonic() - t0,
        notes=tuple(notes),
    )


# -- Pythagorean triples (three-cosine equation) -----------------------------


@dataclass(frozen=True)
class TripleReport:
    config: SearchConfig
    nontrivial: tuple[tuple[RationalAngle, RationalAngle, RationalAngle], ...]
    trivial_hits: int
    orbit_sizes: dict
    elapsed_seconds: float


def _fold_triple(p: RationalAngle, q: RationalAngle, r: RationalAngle):
    """Canonical representative under complements and the p<->q swap.

    cos p cos q + cos r = 0 is preserved by (p,q,r) -> (pi-p, q, pi-r)
    and (p, pi-q, pi-r); folding puts p, q in (0, pi/2].
    """
    if p.frac > Fraction(1, 2):
        p, r = p.supplement(), r.supplement()
    if q.frac > Fraction(1, 2):
        q, r = q.supplement(), r.supplement()
    if p < q:
        p, q = q, p
    return (p, q, r)


def search_triples(cfg: Optional[SearchConfig] = None) -> TripleReport:
    """All rational solutions of cos p cos q + cos r = 0 with angles in
    (0, pi), reported as canonical complement-orbit representatives.

    The trivial family p = pi/2 (or q = pi/2), which forces r = pi/2, is
    counted but excluded from the nontrivial list.
    """
    cfg = cfg or SearchConfig()
    t0 = time.monotonic()
    a_vals, b_vals, c_vals = _search_grids(cfg.profile)
    canonical: dict[tuple[Fraction, ...], set] = {}
    trivial = 0
    for a in a_vals:
        ca = math.cos(float(a))
        for b in b_vals:
            if not (a > b and a.frac + b.frac < 2):
                continue
            cb = math.cos(float(b))
            for c in c_vals:
                if abs(ca + cb + 2 * math.cos(float(c))) >= cfg.tolerance:
                    continue
                angles = [x for x in (a, b) if not x.is_zero()] + [c, c]
                pad = Fraction(1) if b.is_zero() else Fraction(0)
                total = cos_as_cyclotomic(angles[0])
                for x in angles[1:]:
                    total = total + cos_as_cyclotomic(x)
                if not (total + pad).is_zero():
                    continue
                p, q, r = (a + b) / 2, (a - b) / 2, c
                if not (p.in_open_0_pi() and q.in_open_0_pi()):
                    continue
                if p.frac == Fraction(1, 2) or q.frac == Fraction(1, 2):
                    trivial += 1
                    continue
                key_p, key_q, key_r = _fold_triple(p, q, r)
                key = (key_p.frac, key_q.frac, key_r.frac)
                canonical.setdefault(key, set()).add((p.frac, q.frac, r.frac))
    nontrivial = tuple(
        tuple(RationalAngle.from_fraction(f) for f in key)
        for key in sorted(canonical)
    )
    return TripleReport(
        config=cfg,
        nontrivial=nontrivial,
        trivial_hits=trivial,
        orbit_sizes={key: len(v) for key, v in canonical.items()},
        elapsed_seconds=time.monotonic() - t0,
    )
