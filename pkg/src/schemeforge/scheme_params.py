"""Association scheme parameters from a Krein array.

The generic pipeline runs Krein array -> dual intersection matrix L1* ->
second eigenmatrix Q (rows generated by the three-term dual recurrence) ->
first eigenmatrix P = order * Q^(-1) -> intersection and Krein number
tensors. For the hemisystem family (one cometric Q-antipodal 4-class scheme
for each odd t >= 3) the same data is also available in closed form; the two
routes are independent and cross-check each other.

Conventions: P rows are indexed by eigenspaces and columns by relations,
Q rows by relations and columns by eigenspaces, so that P Q = order * I.
Tensors are nested tuples indexed [k][i][j].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, char_poly, invert, rational_roots

Rat = Fraction


class BadParameter(ValueError):
    """Parameter outside the family's domain (t must be odd and >= 3)."""


class IrrationalEigenvalue(ValueError):
    """The dual intersection matrix has eigenvalues outside Q."""


class DegenerateSpectrum(ValueError):
    """The dual eigenvalues are not simple (or no multiplicity row exists)."""


class NonIntegral(ValueError):
    """A quantity that must be a nonnegative integer is not."""


class NegativeKrein(ValueError):
    """A Krein parameter came out negative."""


@dataclass(frozen=True)
class KreinArray:
    """Cometric parameter array {b*_0..b*_{d-1}; c*_1..c*_d}."""

    d: int
    bstar: tuple
    cstar: tuple

    def __post_init__(self):
        if self.d < 1:
            raise BadParameter("need at least one class")
        if len(self.bstar) != self.d or len(self.cstar) != self.d:
            raise BadParameter("array lengths must equal the class count")
        if any(x <= 0 for x in self.bstar + self.cstar):
            raise BadParameter("Krein array entries must be positive")

    @classmethod
    def make(cls, bstar: Sequence, cstar: Sequence) -> "KreinArray":
        b = tuple(Fraction(x) for x in bstar)
        c = tuple(Fraction(x) for x in cstar)
        return cls(len(b), b, c)

    def is_antipodal(self) -> bool:
        """b*_i = c*_{d-i} for every i except possibly i = floor(d/2)."""
        skip = self.d // 2
        for i in range(self.d):
            if i == skip:
                continue
            # cstar is 0-indexed as c*_1..c*_d, so c*_{d-i} sits at d-i-1
            if self.bstar[i] != self.cstar[self.d - i - 1]:
                return False
        return True


@dataclass(frozen=True)
class SchemeParameters:
    """Full parameter set of a d-class symmetric scheme."""

    d: int
    order: Rat
    t: int | None
    s: int | None
    bcoef: int | None
    valencies: tuple
    multiplicities: tuple
    P: RatMatrix
    Q: RatMatrix
    p: tuple   # intersection numbers, [k][i][j]
    q: tuple   # Krein parameters,     [k][i][j]


@dataclass(frozen=True)
class ValidationReport:
    """Named check outcomes; witness strings are empty on success."""

    checks: tuple  # of (name, passed, witness)
    overall: bool

    @classmethod
    def from_checks(cls, checks) -> "ValidationReport":
        cs = tuple(checks)
        return cls(cs, all(ok for _, ok, _ in cs))

    def failed(self) -> list:
        return [c for c in self.checks if not c[1]]


def hemisystem_krein_array(t: int) -> KreinArray:
    """Krein array of the hemisystem scheme family at odd t >= 3."""
    if not isinstance(t, int) or t < 3 or t % 2 == 0:
        raise BadParameter(f"t must be an odd integer >= 3, got {t!r}")
    s = t * t - t + 1
    b0 = Fraction((s + t) * (t - 1))
    b1 = Fraction(s * s, t)
    b2 = Fraction(s * (t - 1), t)
    return KreinArray.make((b0, b1, b2, 1), (1, b2, b1, b0))


def match_family_t(k: KreinArray) -> int | None:
    """Recover t if the array is exactly the family array, else None."""
    if k.d != 4:
        return None
    t = 3
    while Fraction((t - 1) * (t * t + 1)) <= k.bstar[0]:
        if hemisystem_krein_array(t) == k:
            return t
        t += 2
    return None


def build_L1star(k: KreinArray) -> RatMatrix:
    """Dual intersection matrix (q^k_{1j})_{k,j}, tridiagonal.

    Row j carries c*_j below the diagonal, a*_j = b*_0 - b*_j - c*_j on it
    and b*_j above it (with b*_d = 0, c*_0 = 0), so every row sums to b*_0.
    """
    d = k.d
    b = list(k.bstar) + [Fraction(0)]
    c = [Fraction(0)] + list(k.cstar)
    rows = []
    for j in range(d + 1):
        row = [Fraction(0)] * (d + 1)
        if j > 0:
            row[j - 1] = c[j]
        row[j] = k.bstar[0] - b[j] - c[j]
        if j < d:
            row[j + 1] = b[j]
        rows.append(row)
    return RatMatrix.from_rows(rows)


def _dual_row(k: KreinArray, theta: Rat) -> tuple:
    """One row of Q from the three-term recurrence at dual eigenvalue theta."""
    d = k.d
    b = list(k.bstar) + [Fraction(0)]
    c = [Fraction(0)] + list(k.cstar)
    a = [k.bstar[0] - b[j] - c[j] for j in range(d + 1)]
    row = [Fraction(1), theta / c[1]]
    for j in range(1, d):
        nxt = ((theta - a[j]) * row[j] - b[j - 1] * row[j - 1]) / c[j + 1]
        row.append(nxt)
    # terminal consistency: theta must be an actual eigenvalue
    if (theta - a[d]) * row[d] - b[d - 1] * row[d - 1] != 0:
        raise DegenerateSpectrum(
            f"recurrence does not close at eigenvalue {theta}")
    return tuple(row)


def dual_eigenmatrix(k: KreinArray) -> tuple:
    """(Q, multiplicities, order) from the Krein array alone.

    Q's first row is the multiplicity row (the unique all-positive one);
    the remaining rows are sorted by dual eigenvalue, descending. Callers
    that know the family reorder them against the closed form.
    """
    d = k.d
    cp = char_poly(build_L1star(k))
    roots = rational_roots(cp)
    if len(roots) < d + 1:
        raise IrrationalEigenvalue(
            f"only {len(roots)} of {d + 1} dual eigenvalues are rational")
    if len(set(roots)) < d + 1:
        raise DegenerateSpectrum("repeated dual eigenvalue")
    rows = {theta: _dual_row(k, theta) for theta in roots}
    positive = [theta for theta, row in rows.items()
                if all(x > 0 for x in row)]
    if len(positive) != 1:
        raise DegenerateSpectrum(
            f"expected exactly one all-positive row, found {len(positive)}")
    m_theta = positive[0]
    mults = rows[m_theta]
    order = sum(mults, Fraction(0))
    rest = sorted((theta for theta in roots if theta != m_theta),
                  reverse=True)
    q = RatMatrix.from_rows([rows[m_theta]] + [rows[t_] for t_ in rest])
    return q, mults, order


def first_eigenmatrix(q: RatMatrix, order: Rat) -> RatMatrix:
    """P = order * Q^(-1); its first row lists the valencies."""
    return invert(q).scale(order)


def intersection_numbers(p_mat: RatMatrix, valencies: Sequence,
                         multiplicities: Sequence, order: Rat) -> tuple:
    """Tensor p[k][i][j] via the spectral triple-product identity.

    p^k_ij * n_k * order = sum_r m_r P_ri P_rj P_rk. Every entry must be a
    nonnegative integer; NonIntegral carries the first offending index.
    """
    d = p_mat.cols - 1
    cols = [[p_mat.at(r, j) for r in range(d + 1)] for j in range(d + 1)]
    out = []
    for kk in range(d + 1):
        plane = []
        for i in range(d + 1):
            row = []
            for j in range(d + 1):
                tot = sum(m * cols[i][r] * cols[j][r] * cols[kk][r]
                          for r, m in enumerate(multiplicities))
                val = tot / (order * valencies[kk])
                if val.denominator != 1 or val < 0:
                    raise NonIntegral(
                        f"p^{kk}_{i}{j} = {val} is not a nonnegative integer")
                row.append(val)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def krein_numbers(q_mat: RatMatrix, valencies: Sequence,
                  multiplicities: Sequence, order: Rat) -> tuple:
    """Tensor q[k][i][j], the dual of intersection_numbers.

    q^k_ij * m_k * order = sum_r n_r Q_ri Q_rj Q_rk. Entries must be
    nonnegative rationals (integrality is not required).
    """
    d = q_mat.cols - 1
    cols = [[q_mat.at(r, j) for r in range(d + 1)] for j in range(d + 1)]
    out = []
    for kk in range(d + 1):
        plane = []
        for i in range(d + 1):
            row = []
            for j in range(d + 1):
                tot = sum(n * cols[i][r] * cols[j][r] * cols[kk][r]
                          for r, n in enumerate(valencies))
                val = tot / (order * multiplicities[kk])
                if val < 0:
                    raise NegativeKrein(f"q^{kk}_{i}{j} = {val} is negative")
                row.append(val)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def closed_form_parameters(t: int) -> SchemeParameters:
    """The family's parameter set, straight from the closed-form tables."""
    if not isinstance(t, int) or t < 3 or t % 2 == 0:
        raise BadParameter(f"t must be an odd integer >= 3, got {t!r}")
    F = Fraction
    s = t * t - t + 1
    b = t * (t + 1) // 2
    n = (F(1), F((t + 1) * (t * t + 1), 2), F((t - 1) * (t * t + 1), 2),
         F(t * t * (t * t - 1), 2), F(t * t * (t * t + 1), 2))
    m = (F(1), F((t - 1) * (t * t + 1)), F(s * (s + t)),
         F((t - 1) * (t * t + 1)), F(1))
    order = F((t ** 3 + 1) * (t + 1))
    p_mat = RatMatrix.from_rows([
        [1, n[1], n[2], n[3], n[4]],
        [1, F(b), F(-(s + 1), 2), F(-b), F(s - 1, 2)],
        [1, 0, F(t - 1), 0, F(-t)],
        [1, F(-b), F(-(s + 1), 2), F(b), F(s - 1, 2)],
        [1, -n[1], n[2], -n[3], n[4]],
    ])
    q_mat = RatMatrix.from_rows([
        [1, m[1], m[2], m[3], m[4]],
        [1, F(s - 1), 0, F(1 - s), -1],
        [1, F(-s - 1), F(2 * s), F(-s - 1), 1],
        [1, F(-(s + t), t), 0, F(s + t, t), -1],
        [1, F(s - t, t), F(-2 * s, t), F(s - t, t), 1],
    ])

    def tensor(inner, boundary_weights):
        # inner: 4x4 table for indices 1..4; boundary from the scheme axioms
        full = []
        for kk in range(5):
            plane = []
            for i in range(5):
                row = []
                for j in range(5):
                    if kk == 0:
                        v = boundary_weights[i] if i == j else F(0)
                    elif i == 0:
                        v = F(1) if kk == j else F(0)
                    elif j == 0:
                        v = F(1) if kk == i else F(0)
                    else:
                        v = F(inner[kk - 1][i - 1][j - 1])
                    row.append(v)
                plane.append(tuple(row))
            full.append(tuple(plane))
        return tuple(full)

    half = lambda x: F(x, 2)
    p_inner = (
        ((0, half(t - 1), 0, t * b),
         (half(t - 1), 0, half(t * (s - 1)), 0),
         (0, half(t * (s - 1)), 0, half(t * t * (s - 1))),
         (t * b, 0, half(t * t * (s - 1)), 0)),
        ((half(t + 1), 0, t * b, 0),
         (0, half(t - 3), 0, half(t * (s - 1))),
         (t * b, 0, half(t * t * (s - 3)), 0),
         (0, half(t * (s - 1)), 0, half(t * t * (s + 1)))),
        ((0, half(t * t + 1), 0, half(t * (t * t + 1))),
         (half(t * t + 1), 0, half((t - 2) * (t * t + 1)), 0),
         (0, half((t - 2) * (t * t + 1)), 0, half((s - 1) * (t * t + 1))),
         (half(t * (t * t + 1)), 0, half((s - 1) * (t * t + 1)), 0)),
        ((half((t + 1) ** 2), 0, b * (t - 1), 0),
         (0, half((t - 1) ** 2), 0, half((t - 1) * (s + 1))),
         (b * (t - 1), 0, b * (t - 1) ** 2, 0),
         (0, half((t - 1) * (s + 1)), 0, half((s - 1) * (t * t + 3)))),
    )
    # q^1..q^3 are tabulated times t; q^4 is tabulated unscaled.
    ot = lambda x: F(x, t)
    q_inner = (
        ((ot((t - 1) * s - 2 * t), ot(s * s), 0, 0),
         (ot(s * s), ot((t - 1) * (s + 1) * s), ot(s * s), 0),
         (0, ot(s * s), ot((t - 1) * s - 2 * t), 1),
         (0, 0, 1, 0)),
        ((ot((t - 1) * s), ot((t - 1) ** 2 * (s + 1)), ot((t - 1) * s), 0),
         (ot((t - 1) ** 2 * (s + 1)), ot((t - 1) * (s + 3) * s),
          ot((t - 1) ** 2 * (s + 1)), 1),
         (ot((t - 1) * s), ot((t - 1) ** 2 * (s + 1)), ot((t - 1) * s), 0),
         (0, 1, 0, 0)),
        ((0, ot(s * s), ot((t - 1) * s - 2 * t), 1),
         (ot(s * s), ot((t - 1) * (s + 1) * s), ot(s * s), 0),
         (ot((t - 1) * s - 2 * t), ot(s * s), 0, 0),
         (1, 0, 0, 0)),
        ((0, 0, t * s - 1, 0),
         (0, (s + t) * s, 0, 0),
         (t * s - 1, 0, 0, 0),
         (0, 0, 0, 0)),
    )
    return SchemeParameters(
        d=4, order=order, t=t, s=s, bcoef=b,
        valencies=n, multiplicities=m, P=p_mat, Q=q_mat,
        p=tensor(p_inner, n), q=tensor(q_inner, m))


def derive_parameters(k: KreinArray, t: int | None = None) -> SchemeParameters:
    """Run the generic pipeline on a Krein array.

    When t is given (or the array is recognized as the family array) the Q
    rows are ordered to match the closed form, which fixes the relation
    labelling; otherwise the deterministic eigenvalue-descending order is
    kept. Raises the pipeline's typed errors on infeasible arrays.
    """
    if t is None:
        t = match_family_t(k)
    q_mat, mults, order = dual_eigenmatrix(k)
    if order <= 0 or order.denominator != 1:
        raise NonIntegral(f"order {order} is not a positive integer")
    if t is not None:
        target = closed_form_parameters(t)
        by_row = {target.Q.row(i): i for i in range(k.d + 1)}
        perm = [None] * (k.d + 1)
        for i in range(k.d + 1):
            ti = by_row.get(q_mat.row(i))
            if ti is None:
                raise BadParameter(
                    "array is not the family array at t = %d" % t)
            perm[ti] = i
        q_mat = RatMatrix.from_rows([q_mat.row(perm[i])
                                     for i in range(k.d + 1)])
        mults = q_mat.row(0)
    p_mat = first_eigenmatrix(q_mat, order)
    valencies = p_mat.row(0)
    for v in valencies:
        if v.denominator != 1 or v <= 0:
            raise NonIntegral(f"valency {v} is not a positive integer")
    p = intersection_numbers(p_mat, valencies, mults, order)
    q = krein_numbers(q_mat, valencies, mults, order)
    s = t * t - t + 1 if t is not None else None
    bcoef = t * (t + 1) // 2 if t is not None else None
    return SchemeParameters(d=k.d, order=order, t=t, s=s, bcoef=bcoef,
                            valencies=valencies, multiplicities=mults,
                            P=p_mat, Q=q_mat, p=p, q=q)


def candidate_orderings(k: KreinArray) -> list:
    """All relation orderings of the pipeline output that stay feasible.

    Permutes the non-multiplicity rows of Q, keeping permutations whose
    intersection tensor is nonnegative-integral and whose Krein tensor is
    nonnegative. Any valid ordering's relabelling is again valid, so for a
    feasible array this reports all of them.
    """
    q_mat, mults, order = dual_eigenmatrix(k)
    out = []
    base = [q_mat.row(i) for i in range(k.d + 1)]
    for perm in itertools.permutations(range(1, k.d + 1)):
        rows = [base[0]] + [base[i] for i in perm]
        qm = RatMatrix.from_rows(rows)
        try:
            pm = first_eigenmatrix(qm, order)
            valencies = pm.row(0)
            if any(v.denominator != 1 or v <= 0 for v in valencies):
                continue
            p = intersection_numbers(pm, valencies, mults, order)
            q = krein_numbers(qm, valencies, mults, order)
        except (NonIntegral, NegativeKrein):
            continue
        out.append(SchemeParameters(
            d=k.d, order=order, t=None, s=None, bcoef=None,
            valencies=valencies, multiplicities=mults,
            P=pm, Q=qm, p=p, q=q))
    return out


def validate(params: SchemeParameters,
             krein: KreinArray | None = None) -> ValidationReport:
    """Structural sanity of a parameter set, reported check by check."""
    d = params.d
    checks = []

    def check(name, ok, witness=""):
        checks.append((name, bool(ok), "" if ok else witness))

    prod = params.P @ params.Q
    ident = RatMatrix.identity(d + 1).scale(params.order)
    check("eigenmatrix_inverse_pair", prod == ident,
          "P Q != order * I")

    ok, wit = True, ""
    for kk in range(d + 1):
        for i in range(d + 1):
            tot = sum(params.p[kk][i][j] for j in range(d + 1))
            if tot != params.valencies[i]:
                ok, wit = False, f"sum_j p^{kk}_{i}j = {tot} != n_{i}"
                break
        if not ok:
            break
    check("intersection_row_sums", ok, wit)

    ok, wit = True, ""
    for kk in range(d + 1):
        for i in range(d + 1):
            for j in range(d + 1):
                lhs = params.valencies[kk] * params.p[kk][i][j]
                rhs = params.valencies[i] * params.p[i][kk][j]
                if lhs != rhs:
                    ok, wit = False, f"n_k p^k_ij != n_i p^i_kj at {kk},{i},{j}"
    check("valency_weighted_symmetry", ok, wit)

    ok, wit = True, ""
    for kk in range(d + 1):
        for i in range(d + 1):
            want = Fraction(1) if i == kk else Fraction(0)
            if params.p[kk][i][0] != want:
                ok, wit = False, f"p^{kk}_{i}0 != delta"
    check("intersection_boundary", ok, wit)

    bad = [(kk, i, j) for kk in range(d + 1) for i in range(d + 1)
           for j in range(d + 1)
           if params.p[kk][i][j].denominator != 1 or params.p[kk][i][j] < 0]
    check("intersection_integrality", not bad,
          f"p^{bad[0][0]}_{bad[0][1]}{bad[0][2]}" if bad else "")

    badq = [(kk, i, j) for kk in range(d + 1) for i in range(d + 1)
            for j in range(d + 1) if params.q[kk][i][j] < 0]
    check("krein_nonnegativity", not badq,
          f"q^{badq[0][0]}_{badq[0][1]}{badq[0][2]}" if badq else "")

    if krein is None and params.t is not None:
        krein = hemisystem_krein_array(params.t)
    if krein is not None:
        ok, wit = True, ""
        for i in range(d):
            if params.q[i][1][i + 1] != krein.bstar[i]:
                ok, wit = False, f"q^{i}_1,{i + 1} != b*_{i}"
        for i in range(1, d + 1):
            if params.q[i][1][i - 1] != krein.cstar[i - 1]:
                ok, wit = False, f"q^{i}_1,{i - 1} != c*_{i}"
        check("krein_array_round_trip", ok, wit)
        check("antipodality", krein.is_antipodal(), "b*_i != c*_{d-i}")

    ok, wit = True, ""
    for kk in range(d + 1):
        for j in range(d + 1):
            if abs(kk - j) > 1 and params.q[kk][1][j] != 0:
                ok, wit = False, f"q^{kk}_1{j} != 0 breaks the cometric band"
    check("cometric_band", ok, wit)

    sn = sum(params.valencies, Fraction(0))
    sm = sum(params.multiplicities, Fraction(0))
    check("size_sums", sn == params.order == sm,
          f"sum n = {sn}, sum m = {sm}, order = {params.order}")

    return ValidationReport.from_checks(checks)
