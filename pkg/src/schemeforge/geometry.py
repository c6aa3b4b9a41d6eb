"""Concrete geometry for the order-(9,3) generalized quadrangle.

GF(9) is realized as GF(3)[w]/(w^2+1); an element c0 + c1*w is encoded as
the integer c0 + 3*c1, so the field fits in lookup tables. Projective
3-space over the field has 820 points, canonicalized by scaling the first
nonzero coordinate to 1. The surface x0^4 + x1^4 + x2^4 + x3^4 = 0 (each
fourth power is the field norm, landing in GF(3)) carries 280 points and
112 fully-contained projective lines; points and lines form a generalized
quadrangle of order (9,3). A hemisystem is a set of half the lines meeting
every point exactly (t+1)/2 times; the search is depth-first over lines
with exact per-point counters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .scheme_params import ValidationReport


class NotFound(RuntimeError):
    """Exhaustive search ended without a hemisystem."""


# ----------------------------------------------------------------- GF(9)

def _build_tables():
    def enc(c0, c1):
        return c0 + 3 * c1

    add = [[0] * 9 for _ in range(9)]
    mul = [[0] * 9 for _ in range(9)]
    for a in range(9):
        a0, a1 = a % 3, a // 3
        for b in range(9):
            b0, b1 = b % 3, b // 3
            add[a][b] = enc((a0 + b0) % 3, (a1 + b1) % 3)
            # (a0 + a1 w)(b0 + b1 w) with w^2 = -1
            mul[a][b] = enc((a0 * b0 - a1 * b1) % 3, (a0 * b1 + a1 * b0) % 3)
    neg = [enc((-(a % 3)) % 3, (-(a // 3)) % 3) for a in range(9)]
    inv = [0] * 9
    for a in range(1, 9):
        inv[a] = next(b for b in range(1, 9) if mul[a][b] == 1)
    # norm a^4 = a * a^3 = (a0^2 + a1^2) mod 3, always in GF(3)
    fourth = [((a % 3) ** 2 + (a // 3) ** 2) % 3 for a in range(9)]
    frob = [enc(a % 3, (-(a // 3)) % 3) for a in range(9)]
    to_t = tuple
    return (to_t(to_t(r) for r in add), to_t(to_t(r) for r in mul),
            to_t(neg), to_t(inv), to_t(fourth), to_t(frob))


ADD, MUL, NEG, INV, FOURTH, FROBENIUS = _build_tables()


def field_elements() -> tuple:
    return tuple(range(9))


# ------------------------------------------------------------- PG(3, 9)

@lru_cache(maxsize=1)
def proj_points() -> tuple:
    """All 820 points of PG(3,9), first nonzero coordinate normalized to 1."""
    pts = []
    for lead in range(4):
        head = (0,) * lead + (1,)
        free = 3 - lead
        for rest in range(9 ** free):
            tail = []
            r = rest
            for _ in range(free):
                tail.append(r % 9)
                r //= 9
            pts.append(head + tuple(tail))
    return tuple(pts)


def hermitian_value(point) -> int:
    return sum(FOURTH[x] for x in point) % 3


@lru_cache(maxsize=1)
def hermitian_coordinates() -> tuple:
    return tuple(p for p in proj_points() if hermitian_value(p) == 0)


def normalize(vec) -> tuple:
    lead = next((x for x in vec if x != 0), 0)
    if lead == 0:
        raise ValueError("zero vector has no projective image")
    if lead == 1:
        return tuple(vec)
    s = INV[lead]
    return tuple(MUL[s][x] for x in vec)


def line_through(p, q) -> tuple:
    """The 10 projective points on the line spanned by p and q."""
    pts = [tuple(p), tuple(q)]
    for lam in range(1, 9):
        pts.append(normalize([ADD[a][MUL[lam][b]] for a, b in zip(p, q)]))
    return tuple(sorted(set(pts)))


# ------------------------------------------------------------------- GQ

@dataclass(frozen=True)
class GQ:
    """Point-line geometry with GQ order parameters (s, t)."""

    s: int
    t: int
    points: tuple
    lines: tuple   # of sorted point-id tuples

    @cached_property
    def lines_through(self) -> tuple:
        per = {p: [] for p in self.points}
        for li, line in enumerate(self.lines):
            for p in line:
                per[p].append(li)
        return tuple(tuple(per[p]) for p in self.points)

    @cached_property
    def _pair_line(self) -> dict:
        seen = {}
        for li, line in enumerate(self.lines):
            for i, a in enumerate(line):
                for b in line[i + 1:]:
                    seen[(a, b)] = li
        return seen

    def common_line(self, x: int, y: int):
        """Line id joining two collinear points, else None."""
        if x == y:
            raise ValueError("points must differ")
        return self._pair_line.get((min(x, y), max(x, y)))


def build_hermitian_gq() -> GQ:
    """The 280-point, 112-line quadrangle carried by the quartic surface."""
    coords = hermitian_coordinates()
    index = {c: i for i, c in enumerate(coords)}
    on_surface = set(coords)
    lines = set()
    covered = set()
    for i, p in enumerate(coords):
        for j in range(i + 1, len(coords)):
            if (i, j) in covered:
                continue
            q = coords[j]
            full = []
            good = True
            for lam in range(1, 9):
                r = normalize([ADD[a][MUL[lam][b]] for a, b in zip(p, q)])
                if r not in on_surface:
                    good = False
                    break
                full.append(index[r])
            if not good:
                continue
            ids = tuple(sorted([i, j] + full))
            lines.add(ids)
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    covered.add((ids[a], ids[b]))
    return GQ(s=9, t=3, points=tuple(range(len(coords))),
              lines=tuple(sorted(lines)))


def verify_gq(gq: GQ) -> ValidationReport:
    """Check the defining axioms by exhaustive counting."""
    checks = []

    n_pts, n_lines = len(gq.points), len(gq.lines)
    want_pts = (gq.s + 1) * (gq.s * gq.t + 1)
    want_lines = (gq.t + 1) * (gq.s * gq.t + 1)
    checks.append(("size_formulas",
                   n_pts == want_pts and n_lines == want_lines,
                   f"{n_pts} points (want {want_pts}), "
                   f"{n_lines} lines (want {want_lines})"))

    bad = next((li for li, line in enumerate(gq.lines)
                if len(line) != gq.s + 1), None)
    checks.append(("points_per_line", bad is None,
                   None if bad is None else f"line {bad}"))

    bad = next((p for p in gq.points
                if len(gq.lines_through[p]) != gq.t + 1), None)
    checks.append(("lines_per_point", bad is None,
                   None if bad is None else f"point {bad}"))

    # at most one line through two points
    seen = {}
    witness = None
    for li, line in enumerate(gq.lines):
        for i, a in enumerate(line):
            for b in line[i + 1:]:
                if (a, b) in seen:
                    witness = f"points {a},{b} on lines {seen[(a, b)]},{li}"
                    break
                seen[(a, b)] = li
            if witness:
                break
        if witness:
            break
    checks.append(("unique_joining_line", witness is None, witness))

    # the quadrangle axiom: one connector per non-incident point-line pair
    witness = None
    for p in gq.points:
        on_p = set(gq.lines_through[p])
        for li, line in enumerate(gq.lines):
            if li in on_p:
                continue
            connectors = sum(1 for y in line
                             if y != p and gq.common_line(p, y) is not None)
            if connectors != 1:
                witness = f"point {p}, line {li}: {connectors} connectors"
                break
        if witness:
            break
    checks.append(("one_connector", witness is None, witness))

    return ValidationReport.from_checks(checks)


# ------------------------------------------------------------ hemisystem

@dataclass(frozen=True)
class Hemisystem:
    """Line ids of one half; the complement is implicitly the other."""

    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(sorted(self.lines)))

    def complement(self, gq: GQ) -> "Hemisystem":
        mine = set(self.lines)
        return Hemisystem(tuple(li for li in range(len(gq.lines))
                                if li not in mine))


def verify_hemisystem(gq: GQ, candidate) -> bool:
    lines = set(candidate.lines if isinstance(candidate, Hemisystem)
                else candidate)
    if 2 * len(lines) != len(gq.lines):
        return False
    quota = (gq.t + 1) // 2
    return all(sum(1 for li in gq.lines_through[p] if li in lines) == quota
               for p in gq.points)


def find_hemisystem(gq: GQ, seed: int | None = None) -> Hemisystem:
    """Depth-first search with exact per-point quota propagation.

    Lines are decided in index order (shuffled when a seed is given); each
    decision propagates: a point holding its quota excludes its remaining
    lines, a point that can only just reach quota includes them. The first
    completed assignment is returned, so the default search is fully
    deterministic.
    """
    if gq.t % 2 == 0:
        raise ValueError("hemisystems need odd t")
    quota = (gq.t + 1) // 2
    nlines = len(gq.lines)
    order = list(range(nlines))
    if seed is not None:
        random.Random(seed).shuffle(order)
    lines_through = gq.lines_through
    line_points = gq.lines

    def propagate(status, cin, cunk, pending) -> bool:
        while pending:
            li, val = pending.pop()
            if status[li] == val:
                continue
            if status[li] == -val:
                return False
            status[li] = val
            for p in line_points[li]:
                cunk[p] -= 1
                if val == 1:
                    cin[p] += 1
                if cin[p] > quota or cin[p] + cunk[p] < quota:
                    return False
                if cunk[p] > 0:
                    if cin[p] == quota:
                        pending.extend((lj, -1) for lj in lines_through[p]
                                       if status[lj] == 0)
                    elif cin[p] + cunk[p] == quota:
                        pending.extend((lj, 1) for lj in lines_through[p]
                                       if status[lj] == 0)
        return True

    def dfs(status, cin, cunk):
        li = next((l for l in order if status[l] == 0), None)
        if li is None:
            return [i for i in range(nlines) if status[i] == 1]
        for val in (1, -1):
            st, ci, cu = status[:], cin[:], cunk[:]
            if propagate(st, ci, cu, [(li, val)]):
                hit = dfs(st, ci, cu)
                if hit is not None:
                    return hit
        return None

    status = [0] * nlines
    cin = [0] * len(gq.points)
    cunk = [len(lines_through[p]) for p in gq.points]
    hit = dfs(status, cin, cunk)
    if hit is None:
        raise NotFound("no hemisystem found by exhaustive search")
    return Hemisystem(tuple(hit))
