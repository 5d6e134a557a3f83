"""Quadratic algebras attached to a Hecke operator, and Koszulness checks.

A quadratic algebra is the tensor algebra on m generators modulo relations
spanned by a subspace of the degree-two component.  The three families
built from an operator R on V (x) V:

* Lambda: relations Im(R + 1), the q-exterior algebra of V,
* S:      relations Im(R - q), the q-symmetric algebra of V,
* E:      relations Im(Rbar - 1) on W = V* (x) V, the function algebra of
          the associated matrix bialgebra.

Graded dimensions come from honest subspace arithmetic: the degree-n
component of A is W^(x)n modulo the sum of shifted relation subspaces, and
the degree-n component of the quadratic dual is their intersection.

``distributivity_check`` decides the lattice criterion for Koszulness: the
subspace lattice generated by the shifted relation spaces must be
distributive.  The closure is certified symbolically throughout; a random
rational specialization of p is used only to rank candidate identities, and
the sandwich certificate (containment row-reductions plus the modular
dimension law) replaces most eliminations.
"""

import time
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    Subspace,
    echelonize,
    lift_rows,
    specialize_rows,
    subspace_intersect,
    subspace_sum,
)
from .rmatrix import matrix_space_operator

__all__ = [
    "QuadraticAlgebra",
    "build_lambda",
    "build_s",
    "build_e",
    "algebra_by_key",
    "relation_lifts",
    "graded_dimension",
    "dual_graded_dimension",
    "KoszulSeriesReport",
    "koszul_series_check",
    "DistributivityReport",
    "distributivity_check",
    "subspace_lattice_distributivity",
]


@dataclass(frozen=True)
class QuadraticAlgebra:
    """m generators and a relation subspace inside the m^2-dim square."""

    generators: int
    relations: Subspace
    label: str

    def __post_init__(self):
        assert self.relations.ambient == self.generators**2


def build_lambda(op):
    """The q-exterior algebra: relations Im(R + 1)."""
    m = op.d * op.d
    rel = echelonize((op.R + Matrix.identity(m)).data, m)
    return QuadraticAlgebra(op.d, rel, f"Lambda({op.name})")


def build_s(op):
    """The q-symmetric algebra (quantum plane): relations Im(R - q)."""
    m = op.d * op.d
    rel = echelonize((op.R - Matrix.identity(m).scale(op.q)).data, m)
    return QuadraticAlgebra(op.d, rel, f"S({op.name})")


def build_e(op, wop=None):
    """The matrix-bialgebra function algebra: relations Im(Rbar - 1) on W."""
    if wop is None:
        wop = matrix_space_operator(op)
    m = wop.d * wop.d
    rel = echelonize((wop.R - Matrix.identity(m)).data, m)
    return QuadraticAlgebra(wop.d, rel, f"E({op.name})")


def algebra_by_key(op, key):
    key = key.lower()
    if key in ("s", "sym"):
        return build_s(op)
    if key in ("lambda", "lam", "ext"):
        return build_lambda(op)
    if key in ("e", "end", "edual"):
        return build_e(op)
    raise ValueError(f"unknown algebra key {key!r}")


def relation_lifts(algebra, n):
    """R_i^n(A) for i = 1..n-1, as echelonized subspaces of m^n."""
    m = algebra.generators
    out = []
    for i in range(1, n):
        rows = lift_rows(algebra.relations.basis, i, n, m)
        out.append(echelonize(rows, m**n))
    return out


def graded_dimension(algebra, n):
    """dim A_n = m^n - dim(sum of shifted relation spaces)."""
    m = algebra.generators
    if n == 0:
        return 1
    if n == 1:
        return m
    rows = []
    for i in range(1, n):
        rows.extend(lift_rows(algebra.relations.basis, i, n, m))
    return m**n - echelonize(rows, m**n).dim


def dual_graded_dimension(algebra, n):
    """dim (A^!)_n read off A: the intersection of the shifted relations."""
    return dual_component(algebra, n).dim if n >= 2 else (1 if n == 0 else algebra.generators)


def dual_component(algebra, n):
    """The subspace whose dimension is dim (A^!)_n, for n >= 2."""
    assert n >= 2
    lifts = relation_lifts(algebra, n)
    acc = lifts[0]
    for nxt in lifts[1:]:
        if acc.dim == 0:
            break
        acc = subspace_intersect(acc, nxt)
    return acc


# ---------------------------------------------------------------------------
# numerical Koszul criterion on Hilbert series


@dataclass
class KoszulSeriesReport:
    label: str
    max_degree: int
    dims: list
    dual_dims: list
    residuals: list  # coefficient n of P_A(t) * P_dual(-t), n = 1..N
    ok: bool

    def __str__(self):
        state = "pass" if self.ok else "FAIL"
        return (
            f"koszul-series {self.label} N={self.max_degree} {state} "
            f"dims={self.dims} dual={self.dual_dims}"
        )


def koszul_series_check(algebra, max_degree):
    """Check sum_j (-1)^j dim(A^!)_j dim A_(n-j) = 0 for 1 <= n <= N.

    This is the coefficientwise form of P_A(t) P_{A^!}(-t) = 1, the series
    identity a Koszul algebra must satisfy.
    """
    a = [graded_dimension(algebra, k) for k in range(max_degree + 1)]
    b = [dual_graded_dimension(algebra, k) for k in range(max_degree + 1)]
    residuals = []
    for n in range(1, max_degree + 1):
        residuals.append(sum((-1) ** j * b[j] * a[n - j] for j in range(n + 1)))
    return KoszulSeriesReport(
        label=algebra.label,
        max_degree=max_degree,
        dims=a,
        dual_dims=b,
        residuals=residuals,
        ok=all(r == 0 for r in residuals),
    )


# ---------------------------------------------------------------------------
# lattice distributivity


@dataclass
class DistributivityReport:
    label: str
    degree: int
    status: str  # "distributive" | "non_distributive" | "inconclusive"
    closure_size: int = 0
    rounds: int = 0
    honest_ops: int = 0
    certified_ops: int = 0
    witness: tuple = None  # (u, v, w, lhs, rhs) as Subspaces
    note: str = ""

    def __bool__(self):
        return self.status == "distributive"

    def __str__(self):
        extra = f" witness dims {tuple(s.dim for s in self.witness[:3])}" if self.witness else ""
        return (
            f"distributivity {self.label} n={self.degree}: {self.status}"
            f" (closure {self.closure_size}, {self.honest_ops} eliminations,"
            f" {self.certified_ops} certified){extra}{self.note}"
        )


class _Lattice:
    """Closure of subspaces under sum and intersection, fully certified.

    Every table entry is backed either by an honest echelon computation or
    by the sandwich certificate: if members m and g satisfy u, w <= m,
    g <= u, g <= w and dim m + dim g = dim u + dim w, then m = u + w and
    g = u cap w (the modular law pins both dimensions at once).  The
    specialized shadow only proposes which members to try.
    """

    def __init__(self, ambient, shadow_point):
        self.ambient = ambient
        self.members = []
        self.shadow = [] if shadow_point is not None else None
        self.by_shape = {}
        self.shadow_point = shadow_point
        self.sum_table = {}
        self.meet_table = {}
        self.honest_ops = 0
        self.certified_ops = 0

    def add(self, sub):
        """Deduplicated insert; returns the member index."""
        key = (sub.dim, sub.pivots)
        for k in self.by_shape.get(key, ()):
            if self.members[k] == sub:
                return k
        idx = len(self.members)
        self.members.append(sub)
        self.by_shape.setdefault(key, []).append(idx)
        if self.shadow is not None:
            try:
                rows = specialize_rows(sub.basis, self.shadow_point)
                self.shadow.append(echelonize(rows, self.ambient))
            except ZeroDivisionError:
                self.shadow = None  # pole at the sample point: drop the advisor
        return idx

    def _shadow_pair(self, i, j):
        if self.shadow is None:
            return None, None
        return (
            subspace_sum(self.shadow[i], self.shadow[j]),
            subspace_intersect(self.shadow[i], self.shadow[j]),
        )

    def _find_shadow_match(self, shadow_sub):
        if self.shadow is None:
            return []
        return [
            k
            for k, sh in enumerate(self.shadow)
            if sh.dim == shadow_sub.dim and sh == shadow_sub
        ]

    def _contains(self, big, small):
        return self.members[small].is_subspace_of(self.members[big])

    def resolve_pair(self, i, j):
        """Fill sum_table and meet_table at the unordered pair (i, j)."""
        key = (i, j) if i <= j else (j, i)
        if key in self.sum_table:
            return
        if i == j:
            self.sum_table[key] = i
            self.meet_table[key] = i
            return
        u, w = self.members[i], self.members[j]
        di, dj = u.dim, w.dim
        sh_sum, sh_meet = self._shadow_pair(i, j)

        # comparable pair: one containment settles both entries
        if sh_sum is None or sh_sum.dim == dj:
            if di <= dj and self._contains(j, i):
                self.certified_ops += 2
                self.sum_table[key] = j
                self.meet_table[key] = i
                return
        if sh_sum is None or sh_sum.dim == di:
            if dj <= di and self._contains(i, j):
                self.certified_ops += 2
                self.sum_table[key] = i
                self.meet_table[key] = j
                return

        # sandwich certificate from existing members
        sum_cands = self._find_shadow_match(sh_sum) if sh_sum is not None else []
        meet_cands = self._find_shadow_match(sh_meet) if sh_meet is not None else []
        for m in sum_cands:
            for g in meet_cands:
                if self.members[m].dim + self.members[g].dim != di + dj:
                    continue
                if (
                    self._contains(m, i)
                    and self._contains(m, j)
                    and self._contains(i, g)
                    and self._contains(j, g)
                ):
                    self.certified_ops += 2
                    self.sum_table[key] = m
                    self.meet_table[key] = g
                    return

        # one honest elimination, then certify the other side if possible
        if sum_cands and not meet_cands:
            meet = subspace_intersect(u, w)
            self.honest_ops += 1
            g = self.add(meet)
            target = di + dj - meet.dim
            for m in sum_cands:
                if self.members[m].dim == target and self._contains(m, i) and self._contains(m, j):
                    self.certified_ops += 1
                    self.sum_table[key] = m
                    self.meet_table[key] = g
                    return
            s = self.add(subspace_sum(u, w))
            self.honest_ops += 1
            self.sum_table[key] = s
            self.meet_table[key] = g
            return

        total = subspace_sum(u, w)
        self.honest_ops += 1
        s = self.add(total)
        target = di + dj - total.dim
        for g in meet_cands:
            if self.members[g].dim == target and self._contains(i, g) and self._contains(j, g):
                self.certified_ops += 1
                self.sum_table[key] = s
                self.meet_table[key] = g
                return
        # no certified meet: compute it
        meet = subspace_intersect(u, w)
        self.honest_ops += 1
        self.meet_table[key] = self.add(meet)
        self.sum_table[key] = s

    def op(self, table, i, j):
        return table[(i, j) if i <= j else (j, i)]


def distributivity_check(
    algebra,
    n,
    cap=200,
    max_rounds=12,
    shadow_point=Fraction(5, 7),
    time_budget=None,
):
    """Decide distributivity of the lattice generated by the shifted
    relation spaces in degree n.

    Returns a DistributivityReport whose status is ``distributive``,
    ``non_distributive`` (with a witness triple and both sides), or
    ``inconclusive`` when the closure exceeds ``cap`` subspaces,
    ``max_rounds`` closure rounds, or the optional time budget.
    """
    return subspace_lattice_distributivity(
        relation_lifts(algebra, n),
        algebra.generators**n,
        cap=cap,
        max_rounds=max_rounds,
        shadow_point=shadow_point,
        time_budget=time_budget,
        label=algebra.label,
        degree=n,
    )


def subspace_lattice_distributivity(
    gens,
    ambient,
    cap=200,
    max_rounds=12,
    shadow_point=Fraction(5, 7),
    time_budget=None,
    label="lattice",
    degree=0,
):
    started = time.monotonic()
    lat = _Lattice(ambient, shadow_point)
    for g in gens:
        lat.add(g)

    report = DistributivityReport(label=label, degree=degree, status="inconclusive")
    rounds = 0
    while True:
        size = len(lat.members)
        if size > cap:
            report.note = f" closure exceeded cap {cap}"
            break
        pending = [
            (i, j)
            for i in range(size)
            for j in range(i, size)
            if (i, j) not in lat.sum_table
        ]
        if not pending:
            report.status = "closed"
            break
        if rounds >= max_rounds:
            report.note = f" not closed after {max_rounds} rounds"
            break
        rounds += 1
        for i, j in pending:
            lat.resolve_pair(i, j)
            if time_budget is not None and time.monotonic() - started > time_budget:
                report.note = " time budget exhausted"
                report.rounds = rounds
                report.closure_size = len(lat.members)
                report.honest_ops = lat.honest_ops
                report.certified_ops = lat.certified_ops
                return report

    report.rounds = rounds
    report.closure_size = len(lat.members)
    report.honest_ops = lat.honest_ops
    report.certified_ops = lat.certified_ops
    if report.status != "closed":
        return report

    # closure complete: distributivity is now pure table lookup
    size = len(lat.members)
    for u in range(size):
        for v in range(size):
            for w in range(v, size):
                lhs = lat.op(lat.meet_table, u, lat.op(lat.sum_table, v, w))
                rhs = lat.op(
                    lat.sum_table,
                    lat.op(lat.meet_table, u, v),
                    lat.op(lat.meet_table, u, w),
                )
                if lhs != rhs:
                    report.status = "non_distributive"
                    report.witness = (
                        lat.members[u],
                        lat.members[v],
                        lat.members[w],
                        lat.members[lhs],
                        lat.members[rhs],
                    )
                    return report
    report.status = "distributive"
    return report
