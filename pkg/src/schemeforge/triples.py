"""Triple intersection number systems and nonnegativity forcing.

For points x, y, u with (x,y) in R_A, (y,u) in R_B, (u,x) in R_C, the
symbol [l m n] counts points z with (x,z) in R_l, (y,z) in R_m and
(u,z) in R_n. Boundary symbols (any index 0) are Kronecker deltas; the d^3
inner symbols satisfy three families of sum equations whose right-hand
sides are ordinary intersection numbers. The system can be widened by
symmetry identities when some of A, B, C coincide and by one linear
equation per vanishing Krein parameter, and nonnegativity of the symbols
then pins many of them to exact values.

Unknowns are ordered lexicographically by (l, m, n). Solving is exact; the
forcing step is interval propagation over the rationals, not an LP.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import AffineSolutionSpace, Inconsistent, RatMatrix, solve_linear
from .scheme_params import SchemeParameters, closed_form_parameters

Rat = Fraction


class VacuousConfig(ValueError):
    """No triple realizes the requested relation pattern (p^A_CB = 0)."""


class NotVanishing(ValueError):
    """A Krein-vanishing equation was requested for a nonzero parameter."""


class Infeasible(ValueError):
    """Nonnegativity contradicts the linear system."""


@dataclass(frozen=True)
class TripleConfig:
    """A relation pattern (A, B, C) over a fixed parameter set."""

    params: SchemeParameters
    abc: tuple

    def __post_init__(self):
        a, b, c = self.abc
        d = self.params.d
        if not all(1 <= x <= d for x in (a, b, c)):
            raise ValueError("pattern classes must lie in 1..d")

    @property
    def is_vacuous(self) -> bool:
        a, b, c = self.abc
        return self.params.p[a][c][b] == 0


@dataclass(frozen=True)
class TripleSystem:
    """Linear equations over the d^3 inner symbols.

    rows[i] is a coefficient tuple over `names`; kinds[i] tags where the
    row came from ("sum", "zero", "symmetry", "krein").
    """

    config: TripleConfig
    names: tuple   # of (l, m, n)
    rows: tuple    # of coefficient tuples
    rhs: tuple
    kinds: tuple

    def index(self, lmn) -> int:
        d = self.config.params.d
        l, m, n = lmn
        return (l - 1) * d * d + (m - 1) * d + (n - 1)

    def extended(self, new_rows, new_rhs, kind) -> "TripleSystem":
        return replace(self,
                       rows=self.rows + tuple(new_rows),
                       rhs=self.rhs + tuple(new_rhs),
                       kinds=self.kinds + (kind,) * len(new_rows))

    def select(self, kinds) -> "TripleSystem":
        keep = [i for i, k in enumerate(self.kinds) if k in kinds]
        return replace(self,
                       rows=tuple(self.rows[i] for i in keep),
                       rhs=tuple(self.rhs[i] for i in keep),
                       kinds=tuple(self.kinds[i] for i in keep))


@dataclass(frozen=True)
class TripleSolution:
    """Solution space plus everything nonnegativity managed to pin."""

    config: TripleConfig
    space: AffineSolutionSpace
    forced: dict        # (l, m, n) -> Fraction
    residual_free: tuple  # of (l, m, n) still undetermined


def _names(d: int) -> tuple:
    return tuple((l, m, n)
                 for l in range(1, d + 1)
                 for m in range(1, d + 1)
                 for n in range(1, d + 1))


def build_base_system(cfg: TripleConfig) -> TripleSystem:
    """Sum equations over the inner symbols, plus forced zero rows.

    Each of the 3 d^2 equations fixes one coordinate pair and sums over the
    remaining index; the right-hand side subtracts the boundary symbol.
    A zero right-hand side forces every summand to zero (the symbols are
    counts), which is emitted as one extra row per unknown involved.
    """
    if cfg.is_vacuous:
        a, b, c = cfg.abc
        raise VacuousConfig(f"p^{a}_{c}{b} = 0: no ({a},{b},{c}) triple exists")
    d = cfg.params.d
    A, B, C = cfg.abc
    p = cfg.params.p
    names = _names(d)
    idx = {nm: i for i, nm in enumerate(names)}
    rows, rhs, kinds = [], [], []
    zero_rows = []

    def emit(members, value):
        row = [Fraction(0)] * len(names)
        for nm in members:
            row[idx[nm]] = Fraction(1)
        rows.append(tuple(row))
        rhs.append(value)
        kinds.append("sum")
        if value == 0:
            zero_rows.extend(members)
        elif value < 0:
            raise Inconsistent(f"negative right-hand side {value}")

    rng = range(1, d + 1)
    for m in rng:
        for n in rng:
            emit([(r, m, n) for r in rng],
                 p[B][m][n] - (1 if (m, n) == (A, C) else 0))
    for l in rng:
        for n in rng:
            emit([(l, r, n) for r in rng],
                 p[C][l][n] - (1 if (l, n) == (A, B) else 0))
    for l in rng:
        for m in rng:
            emit([(l, m, r) for r in rng],
                 p[A][l][m] - (1 if (l, m) == (C, B) else 0))

    sys_ = TripleSystem(cfg, names, tuple(rows), tuple(rhs), tuple(kinds))
    zrows = []
    for nm in sorted(set(zero_rows)):
        row = [Fraction(0)] * len(names)
        row[idx[nm]] = Fraction(1)
        zrows.append(tuple(row))
    return sys_.extended(zrows, [Fraction(0)] * len(zrows), "zero")


def _slot_permutations(abc) -> list:
    """Index-slot permutations valid for this pattern.

    Swapping two of the three base points preserves the pattern exactly
    when the corresponding pair of A, B, C coincides; all of S3 applies
    when the three are equal.
    """
    A, B, C = abc
    swaps = []
    if B == C:
        swaps.append(lambda t: (t[1], t[0], t[2]))
    if A == C:
        swaps.append(lambda t: (t[0], t[2], t[1]))
    if A == B:
        swaps.append(lambda t: (t[2], t[1], t[0]))
    if A == B == C:
        swaps.append(lambda t: (t[1], t[2], t[0]))
        swaps.append(lambda t: (t[2], t[0], t[1]))
    return swaps


def add_symmetry(sys_: TripleSystem, cfg: TripleConfig | None = None
                 ) -> TripleSystem:
    """Widen with [l m n] = [sigma(l m n)] for each valid slot swap."""
    if cfg is not None and cfg != sys_.config:
        raise ValueError("config does not match the system")
    perms = _slot_permutations(sys_.config.abc)
    if not perms:
        return sys_
    n = len(sys_.names)
    seen = set()
    rows, rhs = [], []
    for nm in sys_.names:
        for perm in perms:
            other = perm(nm)
            if other == nm:
                continue
            key = (min(nm, other), max(nm, other))
            if key in seen:
                continue
            seen.add(key)
            row = [Fraction(0)] * n
            row[sys_.index(nm)] = Fraction(1)
            row[sys_.index(other)] = Fraction(-1)
            rows.append(tuple(row))
            rhs.append(Fraction(0))
    return sys_.extended(rows, rhs, "symmetry")


def vanishing_tuples(params: SchemeParameters) -> tuple:
    """All ordered (r, s, t) with q^t_rs = 0, inner indices only."""
    d = params.d
    rng = range(1, d + 1)
    return tuple((r, s, t) for r in rng for s in rng for t in rng
                 if params.q[t][r][s] == 0)


def add_krein_vanishing(sys_: TripleSystem,
                        cfg: TripleConfig | None = None,
                        tuples: Iterable | None = None) -> TripleSystem:
    """One equation per vanishing Krein parameter q^t_rs = 0.

    sum_{l,m,n} Q_lr Q_ms Q_nt [l m n] = -(Q_0r Q_As Q_Ct
    + Q_Ar Q_0s Q_Bt + Q_Cr Q_Bs Q_0t), the boundary symbols having been
    moved to the right-hand side. Explicitly requested tuples are expanded
    to all their index permutations; by default every ordered tuple with
    q^t_rs = 0 is used.
    """
    if cfg is not None and cfg != sys_.config:
        raise ValueError("config does not match the system")
    cfg = sys_.config
    params = cfg.params
    if tuples is None:
        tuples = vanishing_tuples(params)
    else:
        tuples = sorted({p for tup in tuples
                         for p in itertools.permutations(tup)})
    A, B, C = cfg.abc
    Q = params.Q
    d = params.d
    rows, rhs = [], []
    for (r, s, t) in tuples:
        if params.q[t][r][s] != 0:
            raise NotVanishing(f"q^{t}_{r}{s} = {params.q[t][r][s]} != 0")
        row = [Fraction(0)] * len(sys_.names)
        for (l, m, n) in sys_.names:
            row[sys_.index((l, m, n))] = Q.at(l, r) * Q.at(m, s) * Q.at(n, t)
        rows.append(tuple(row))
        rhs.append(-(Q.at(0, r) * Q.at(A, s) * Q.at(C, t)
                     + Q.at(A, r) * Q.at(0, s) * Q.at(B, t)
                     + Q.at(C, r) * Q.at(B, s) * Q.at(0, t)))
    return sys_.extended(rows, rhs, "krein")


def widened_system(cfg: TripleConfig,
                   krein_tuples: Iterable | None = None) -> TripleSystem:
    """Base system plus symmetry identities plus Krein-vanishing rows."""
    return add_krein_vanishing(add_symmetry(build_base_system(cfg)),
                               tuples=krein_tuples)


def solve(sys_: TripleSystem) -> TripleSolution:
    """Exact solution space; `forced` holds what linear algebra alone pins."""
    mat = RatMatrix.from_rows(sys_.rows)
    space = solve_linear(mat, sys_.rhs,
                         names=[f"[{l},{m},{n}]" for l, m, n in sys_.names])
    forced = {}
    nvar = len(sys_.names)
    for v in range(nvar):
        if all(vec[v] == 0 for vec in space.basis):
            forced[sys_.names[v]] = space.particular[v]
    residual = tuple(sys_.names[f] for f in space.free_indices)
    return TripleSolution(sys_.config, space, forced, residual)


def nonneg_force(sys_: TripleSystem, sol: TripleSolution,
                 max_rounds: int = 60) -> TripleSolution:
    """Pin unknowns by exact interval propagation under x >= 0.

    Every equation a.x = rhs bounds each participating unknown once the
    others are boxed; iterating to a fixpoint shrinks the boxes, and any
    unknown whose box collapses to a point is forced. This is a syntactic
    fixpoint over the rationals; no optimization is involved. Raises
    Infeasible when a box empties, which would falsify nonnegativity.
    """
    n = len(sys_.names)
    lo = [Fraction(0)] * n
    hi: list = [None] * n
    # equation list: original rows plus the solved basic-variable rows,
    # which tie basic unknowns to the free ones directly.
    eqs = [(row, r) for row, r in zip(sys_.rows, sys_.rhs)]
    space = sol.space
    free = set(space.free_indices)
    for v in range(n):
        if v in free:
            continue
        row = [Fraction(0)] * n
        row[v] = Fraction(1)
        for fi, f in enumerate(space.free_indices):
            row[f] = -space.basis[fi][v]
        eqs.append((tuple(row), space.particular[v]))
    supports = [[(v, c) for v, c in enumerate(row) if c != 0] for row, _ in eqs]

    for _ in range(max_rounds):
        changed = False
        for (row, rhs), supp in zip(eqs, supports):
            # extremes of sum a_v x_v over current boxes
            smin: Fraction | None = Fraction(0)
            smax: Fraction | None = Fraction(0)
            for v, c in supp:
                if c > 0:
                    if smin is not None:
                        smin += c * lo[v]
                    if smax is not None:
                        smax = None if hi[v] is None else smax + c * hi[v]
                else:
                    if smax is not None:
                        smax += c * lo[v]
                    if smin is not None:
                        smin = None if hi[v] is None else smin + c * hi[v]
            for v, c in supp:
                # bounds on x_v from rhs = a_v x_v + (rest)
                if c > 0:
                    rest_max = None if (smax is None or hi[v] is None) \
                        else smax - c * hi[v]
                    rest_min = None if smin is None else smin - c * lo[v]
                else:
                    rest_max = None if smax is None else smax - c * lo[v]
                    rest_min = None if (smin is None or hi[v] is None) \
                        else smin - c * hi[v]
                cand_lo = cand_hi = None
                if c > 0:
                    if rest_max is not None:
                        cand_lo = (rhs - rest_max) / c
                    if rest_min is not None:
                        cand_hi = (rhs - rest_min) / c
                else:
                    if rest_max is not None:
                        cand_hi = (rhs - rest_max) / c
                    if rest_min is not None:
                        cand_lo = (rhs - rest_min) / c
                if cand_lo is not None and cand_lo > lo[v]:
                    lo[v] = cand_lo
                    changed = True
                if cand_hi is not None and (hi[v] is None or cand_hi < hi[v]):
                    hi[v] = cand_hi
                    changed = True
                if hi[v] is not None and lo[v] > hi[v]:
                    raise Infeasible(
                        f"{sys_.names[v]} boxed to [{lo[v]}, {hi[v]}]")
        if not changed:
            break

    forced = dict(sol.forced)
    residual = []
    for v in range(n):
        if hi[v] is not None and lo[v] == hi[v]:
            forced[sys_.names[v]] = lo[v]
        elif v in free:
            residual.append(sys_.names[v])
    for nm, val in forced.items():
        if val < 0:
            raise Infeasible(f"{nm} forced to {val} < 0")
    return TripleSolution(sys_.config, space, forced, tuple(residual))


def forced_triple_values(params: SchemeParameters, abc,
                         krein_tuples: Iterable | None = None
                         ) -> TripleSolution:
    """Build, widen, solve and force the system for one pattern."""
    cfg = TripleConfig(params, tuple(abc))
    sys_ = widened_system(cfg, krein_tuples)
    return nonneg_force(sys_, solve(sys_))


def worker_count() -> int:
    """Parallelism cap taken from SCHEME_FORGE_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("SCHEME_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def forced_values_sweep(ts: Sequence, abc,
                        max_workers: int | None = None) -> dict:
    """forced_triple_values over many t; threads capped by the env var."""
    if max_workers is None:
        max_workers = worker_count()

    def run(t):
        return t, forced_triple_values(closed_form_parameters(t), abc)

    if max_workers == 1:
        return dict(run(t) for t in ts)
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return dict(pool.map(run, ts))


def triple_pattern(sch, x: int, y: int, u: int) -> tuple:
    """(A, B, C) for the relations (x,y), (y,u), (u,x)."""
    rel = sch.rel
    return (int(rel[x][y]), int(rel[y][u]), int(rel[u][x]))


def direct_triple_counts(sch, x: int, y: int, u: int) -> tuple:
    """Brute-force tensor [l][m][n] over all classes including 0.

    Counts every z in the scheme, so summing the full tensor gives the
    scheme's size.
    """
    if len({x, y, u}) != 3:
        raise ValueError("x, y, u must be three distinct elements")
    import numpy as np
    rel = sch.rel
    c = sch.classes
    code = rel[x].astype(np.int64) * c * c + rel[y].astype(np.int64) * c \
        + rel[u].astype(np.int64)
    counts = np.bincount(code, minlength=c ** 3)
    return tuple(tuple(tuple(int(counts[l * c * c + m * c + n])
                             for n in range(c))
                       for m in range(c))
                 for l in range(c))


def integer_residual_checker(sys_: TripleSystem):
    """Precompiled exact residual test for direct-count tensors.

    Every row is scaled by the least common denominator into integers
    once, so the per-tensor check is a single integer matrix product.
    Returns a function mapping a tensor to the index of the first
    violated row, or None when every equation is satisfied.
    """
    import numpy as np
    scaled_rows = []
    scaled_rhs = []
    for row, rhs in zip(sys_.rows, sys_.rhs):
        denom = rhs.denominator
        for c in row:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        scaled_rows.append([int(c * denom) for c in row])
        scaled_rhs.append(int(rhs * denom))
    mat = np.array(scaled_rows, dtype=np.int64)
    vec_rhs = np.array(scaled_rhs, dtype=np.int64)
    names = sys_.names

    def check(tensor):
        vec = np.fromiter((tensor[l][m][n] for l, m, n in names),
                          dtype=np.int64, count=len(names))
        bad = np.nonzero(mat @ vec - vec_rhs)[0]
        return int(bad[0]) if bad.size else None

    return check


def count_residuals(sys_: TripleSystem, tensor) -> list:
    """Row-by-row residuals of a direct-count tensor against a system.

    The tensor is indexed [l][m][n] with classes from 0; only inner entries
    participate. Returns (kind, row_index, residual) for nonzero residuals.
    """
    out = []
    for i, (row, rhs, kind) in enumerate(zip(sys_.rows, sys_.rhs, sys_.kinds)):
        acc = -rhs
        for v, coeff in enumerate(row):
            if coeff:
                l, m, n = sys_.names[v]
                acc += coeff * tensor[l][m][n]
        if acc != 0:
            out.append((kind, i, acc))
    return out


def boundary_violations(cfg_abc, tensor) -> list:
    """Check the boundary symbols of a direct-count tensor.

    [0 m n] = delta_mA delta_nC, [l 0 n] = delta_lA delta_nB,
    [l m 0] = delta_lC delta_mB, and [0 0 n] etc. vanish for distinct
    base points.
    """
    A, B, C = cfg_abc
    d = len(tensor) - 1
    bad = []
    for m in range(d + 1):
        for n in range(d + 1):
            want = 1 if (m, n) == (A, C) else 0
            if tensor[0][m][n] != want:
                bad.append(((0, m, n), tensor[0][m][n], want))
    for l in range(1, d + 1):
        for n in range(d + 1):
            want = 1 if (l, n) == (A, B) else 0
            if tensor[l][0][n] != want:
                bad.append(((l, 0, n), tensor[l][0][n], want))
    for l in range(1, d + 1):
        for m in range(1, d + 1):
            want = 1 if (l, m) == (C, B) else 0
            if tensor[l][m][0] != want:
                bad.append(((l, m, 0), tensor[l][m][0], want))
    return bad
