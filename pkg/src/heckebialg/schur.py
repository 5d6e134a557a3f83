"""Centralizer algebras and symmetric-group multiplicities.

The commutant of the represented Hecke generators on V^(x)n is the degree-n
dual component of the matrix bialgebra, so its dimension must match both the
rank computation and the multiplicity formula sum m_lambda^2.  The m_lambda
come from evaluating traces at q = 1 against the ordinary symmetric-group
character table, computed here by the Murnaghan-Nakayama rule on beta-sets.
"""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import rf_eval_at_one
from .linalg import Matrix, commutant, echelonize
from .qalg import build_e, graded_dimension
from .rmatrix import character, rho_basis

__all__ = [
    "partitions",
    "class_size",
    "cycle_type_representative",
    "CharacterTable",
    "sn_character_table",
    "hook_length_dimension",
    "MultiplicityTable",
    "multiplicities",
    "centralizer_dimension",
    "hecke_span_dimension",
    "BicommutantReport",
    "bicommutant_check",
    "SchurDimensionReport",
    "schur_dimension_check",
]


def partitions(n):
    """All partitions of n as descending tuples, largest part first."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(largest, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def class_size(mu):
    """Size of the conjugacy class of cycle type mu: n! / z_mu."""
    n = sum(mu)
    z = 1
    for part, count in Counter(mu).items():
        z *= part**count * math.factorial(count)
    return math.factorial(n) // z


def cycle_type_representative(mu):
    """A minimal-length permutation of cycle type mu, in one-line form.

    Built from disjoint consecutive blocks, each a shifted copy of the
    long cycle (k, 1, 2, ..., k-1).
    """
    word = []
    offset = 0
    for part in mu:
        word.append(offset + part)
        word.extend(range(offset + 1, offset + part))
        offset += part
    return tuple(word)


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama on beta-sets


def _beta_set(lam):
    l = len(lam)
    return tuple(sorted(lam[i] + (l - 1 - i) for i in range(l)))


def _partition_from_beta(beta_sorted):
    parts = [beta_sorted[i] - i for i in range(len(beta_sorted))]
    return tuple(sorted((p for p in parts if p > 0), reverse=True))


@lru_cache(maxsize=None)
def _mn_character(lam, mu):
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        # removing the strip: swap b for b-k; the height is the number of
        # occupied beta positions jumped over
        height = sum(1 for x in beta if nb < x < b)
        new_beta = tuple(sorted((bset - {b}) | {nb}))
        total += (-1) ** height * _mn_character(_partition_from_beta(new_beta), rest)
    return total


def hook_length_dimension(lam):
    """f_lambda by the hook length formula, an independent route."""
    n = sum(lam)
    if n == 0:
        return 1
    cols = [0] * lam[0]
    for row_len in lam:
        for j in range(row_len):
            cols[j] += 1
    prod = 1
    for i, row_len in enumerate(lam):
        for j in range(row_len):
            prod *= (row_len - j) + (cols[j] - i) - 1
    return math.factorial(n) // prod


@dataclass(frozen=True)
class CharacterTable:
    n: int
    parts: tuple  # partitions of n, largest-first order
    values: dict  # (lam, mu) -> integer character value

    def chi(self, lam, mu):
        return self.values[(tuple(lam), tuple(mu))]

    def dimension(self, lam):
        return self.chi(lam, (1,) * self.n)


def sn_character_table(n):
    """Irreducible characters of the symmetric group on n letters, n <= 8."""
    if not 1 <= n <= 8:
        raise ValueError("character table supported for 1 <= n <= 8")
    parts = tuple(partitions(n))
    values = {
        (lam, mu): _mn_character(lam, mu) for lam in parts for mu in parts
    }
    return CharacterTable(n, parts, values)


# ---------------------------------------------------------------------------
# multiplicities at q = 1


@dataclass(frozen=True)
class MultiplicityTable:
    n: int
    mult: dict  # partition -> nonnegative integer
    dims: dict  # partition -> f_lambda

    def __post_init__(self):
        assert set(self.mult) == set(self.dims)
        for lam, m in self.mult.items():
            assert m >= 0, f"negative multiplicity at {lam}"

    def sum_of_squares(self):
        return sum(m * m for m in self.mult.values())

    def total_dimension(self):
        return sum(m * self.dims[lam] for lam, m in self.mult.items())

    def __str__(self):
        cells = ", ".join(
            f"{lam}: {self.mult[lam]}" for lam in sorted(self.mult, reverse=True)
        )
        return f"multiplicities n={self.n} {{{cells}}}"


def multiplicities(op, n):
    """m_lambda = (1/n!) sum_mu |class mu| (chi(T_w_mu))_t chi^lambda(mu).

    Traces are evaluated at q = 1; each multiplicity must come out a
    nonnegative integer or the operator is not a valid input.
    """
    if op.specialized_at is not None:
        raise ValueError(
            "multiplicities need the symbolic operator; "
            f"this one is specialized at p = {op.specialized_at}"
        )
    table = sn_character_table(n)
    traces = {}
    for mu in table.parts:
        w = cycle_type_representative(mu)
        traces[mu] = rf_eval_at_one(character(op, n, w))
    fact = math.factorial(n)
    mult = {}
    for lam in table.parts:
        acc = Fraction(0)
        for mu in table.parts:
            acc += class_size(mu) * traces[mu] * table.chi(lam, mu)
        m = acc / fact
        if m.denominator != 1 or m < 0:
            raise ValueError(f"multiplicity at {lam} is {m}, not a nonnegative integer")
        mult[lam] = int(m)
    dims = {lam: table.dimension(lam) for lam in table.parts}
    out = MultiplicityTable(n, mult, dims)
    if out.total_dimension() != op.d**n:
        raise ValueError(
            f"multiplicities sum to {out.total_dimension()}, expected {op.d**n}"
        )
    return out


# ---------------------------------------------------------------------------
# centralizer and bicommutant


def centralizer_dimension(op, n):
    """dim of the commutant of the represented generators on V^(x)n."""
    assert n >= 1
    gens = [op.lifted(i, n) for i in range(1, n)]
    return commutant(gens, op.d**n).dim


def _vec_row(mat):
    row = {}
    for r, entries in enumerate(mat.data):
        base = r * mat.cols
        for c, v in entries.items():
            row[base + c] = v
    return row


def _unvec(row, dim):
    data = [dict() for _ in range(dim)]
    for k, v in row.items():
        data[k // dim][k % dim] = v
    return Matrix(dim, dim, data)


def hecke_span_dimension(op, n):
    """dim span{rho(T_w) : w in S_n} inside End(V^(x)n)."""
    images = rho_basis(op, n)
    size = op.d**n
    rows = [_vec_row(images[w]) for w in sorted(images)]
    return echelonize(rows, size * size).dim


@dataclass
class BicommutantReport:
    operator: str
    n: int
    hecke_span: int
    centralizer: int
    bicommutant: int
    ok: bool

    def __str__(self):
        state = "pass" if self.ok else "FAIL"
        return (
            f"double centralizer {self.operator} n={self.n}: span {self.hecke_span}"
            f" = bicommutant {self.bicommutant} (centralizer {self.centralizer}) {state}"
        )


def bicommutant_check(op, n):
    """The represented Hecke algebra equals its own bicommutant on V^(x)n."""
    size = op.d**n
    gens = [op.lifted(i, n) for i in range(1, n)]
    c1 = commutant(gens, size)
    c2 = commutant([_unvec(row, size) for row in c1.basis], size)
    images = rho_basis(op, n)
    span = echelonize([_vec_row(images[w]) for w in sorted(images)], size * size)
    ok = span.dim == c2.dim and span == c2
    return BicommutantReport(
        operator=op.name,
        n=n,
        hecke_span=span.dim,
        centralizer=c1.dim,
        bicommutant=c2.dim,
        ok=ok,
    )


# ---------------------------------------------------------------------------
# the three-route dimension check


@dataclass
class SchurDimensionReport:
    operator: str
    n: int
    sum_of_squares: int
    centralizer: int
    e_dimension: int
    table: MultiplicityTable
    ok: bool

    def __str__(self):
        state = "pass" if self.ok else "FAIL"
        return (
            f"schur dimensions {self.operator} n={self.n}: "
            f"sum m^2 = {self.sum_of_squares}, centralizer = {self.centralizer}, "
            f"dim E_{self.n} = {self.e_dimension} {state}"
        )


def schur_dimension_check(op, n, e_algebra=None):
    """Verify sum m_lambda^2 = centralizer dimension = dim E_n."""
    table = multiplicities(op, n)
    cdim = centralizer_dimension(op, n)
    if e_algebra is None:
        e_algebra = build_e(op)
    edim = graded_dimension(e_algebra, n)
    squares = table.sum_of_squares()
    return SchurDimensionReport(
        operator=op.name,
        n=n,
        sum_of_squares=squares,
        centralizer=cdim,
        e_dimension=edim,
        table=table,
        ok=squares == cdim == edim,
    )
