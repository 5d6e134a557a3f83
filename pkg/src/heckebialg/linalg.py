"""Sparse exact linear algebra over an exact field.

Matrices are rows of {column: entry} dicts; entries are Scalars (or, after
specialization, Fractions).  Stored entries are never zero.  All operators
act on row vectors from the right, x -> x*M, so the image of an operator is
the row space of its matrix and products compose left to right.

Subspaces are kept in reduced row echelon form, which is unique, so
subspace equality is literal row equality.  Sums stack and re-echelonize;
intersections use the Zassenhaus doubled-block trick (no inner products,
exactness preserved).
"""

from fractions import Fraction

from .exactnum import ONE, ZERO, Scalar

__all__ = [
    "Matrix",
    "Subspace",
    "echelonize",
    "subspace_sum",
    "subspace_intersect",
    "kernel",
    "commutant",
    "lift_to_position",
    "lift_rows",
    "specialize_scalar",
    "specialize_matrix",
    "specialize_rows",
]


class Matrix:
    """A sparse rows x cols matrix over an exact field."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [dict() for _ in range(rows)]
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n, one=ONE):
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_rows(cls, rows_of_entries, cols=None):
        rows_of_entries = [list(r) for r in rows_of_entries]
        if cols is None:
            cols = len(rows_of_entries[0]) if rows_of_entries else 0
        data = []
        for r in rows_of_entries:
            data.append({j: v for j, v in enumerate(r) if v})
        return cls(len(data), cols, data)

    def entry(self, i, j):
        return self.data[i].get(j, ZERO)

    def nnz(self):
        return sum(len(r) for r in self.data)

    def copy(self):
        return Matrix(self.rows, self.cols, [dict(r) for r in self.data])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        data = []
        for a, b in zip(self.data, other.data):
            r = dict(a)
            for j, v in b.items():
                s = r.get(j)
                s = v if s is None else s + v
                if s:
                    r[j] = s
                elif j in r:
                    del r[j]
            data.append(r)
        return Matrix(self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(
            self.rows, self.cols, [{j: -v for j, v in r.items()} for r in self.data]
        )

    def scale(self, c):
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix(
            self.rows, self.cols, [{j: v * c for j, v in r.items()} for r in self.data]
        )

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        assert self.cols == other.rows, "shape mismatch"
        odata = other.data
        out = []
        for arow in self.data:
            acc = {}
            for k, a in arow.items():
                for j, b in odata[k].items():
                    cur = acc.get(j)
                    v = a * b if cur is None else cur + a * b
                    acc[j] = v
            out.append({j: v for j, v in acc.items() if v})
        return Matrix(self.rows, other.cols, out)

    def transpose(self):
        data = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                data[j][i] = v
        return Matrix(self.cols, self.rows, data)

    def trace(self):
        acc = None
        for i in range(min(self.rows, self.cols)):
            v = self.data[i].get(i)
            if v is not None:
                acc = v if acc is None else acc + v
        return acc if acc is not None else ZERO

    def kron(self, other):
        """Kronecker product in the row-lex index convention."""
        rr, rc = other.rows, other.cols
        data = [dict() for _ in range(self.rows * rr)]
        for i, arow in enumerate(self.data):
            for k, brow in enumerate(other.data):
                tgt = data[i * rr + k]
                for j, a in arow.items():
                    base = j * rc
                    for l, b in brow.items():
                        tgt[base + l] = a * b
        return Matrix(self.rows * rr, self.cols * rc, data)

    def inverse(self):
        """Gauss-Jordan inverse; raises ValueError when singular."""
        assert self.rows == self.cols
        n = self.rows
        work = [dict(r) for r in self.data]
        aug = [dict() for _ in range(n)]
        # take the multiplicative unit from the entries themselves so the
        # routine works over Scalars and Fractions alike
        sample = next((v for r in self.data for v in r.values()), None)
        one = ONE if sample is None else sample**0
        for i in range(n):
            aug[i][i] = one
        pivot_of_col = {}
        for i in range(n):
            row, rhs = work[i], aug[i]
            if not row:
                raise ValueError("matrix is singular")
            col = min(row)
            inv = one / row.pop(col)
            for j in list(row):
                row[j] = row[j] * inv
            for j in list(rhs):
                rhs[j] = rhs[j] * inv
            row[col] = one
            pivot_of_col[col] = i
            # Jordan step: clear the pivot column from every other row now,
            # so no row ever holds an established pivot column
            for k in range(n):
                if k == i:
                    continue
                f = work[k].get(col)
                if f is None:
                    continue
                del work[k][col]
                _row_axpy(work[k], -f, row, skip=col)
                _row_axpy(aug[k], -f, rhs)
        # rows of the inverse, ordered by pivot column
        data = [None] * n
        for col, i in pivot_of_col.items():
            data[col] = aug[i]
        return Matrix(n, n, data)


def _row_axpy(target, factor, source, skip=None):
    """target += factor * source, dropping zeros; 'skip' omits one column."""
    for j, v in source.items():
        if j == skip:
            continue
        cur = target.get(j)
        s = factor * v if cur is None else cur + factor * v
        if s:
            target[j] = s
        elif cur is not None:
            del target[j]


class Subspace:
    """A subspace of k^ambient held as unique reduced row echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, basis, pivots):
        self.ambient = ambient
        self.basis = basis  # tuple of row dicts, pivot entries are exact ones
        self.pivots = pivots  # tuple of pivot columns, increasing

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and list(self.basis) == list(other.basis)
        )

    def __hash__(self):
        # cheap structural hash; equality does the fine screening
        return hash((self.ambient, self.pivots))

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce_vector(self, vec):
        """Remainder of a row vector after reduction by this basis."""
        vec = {j: v for j, v in vec.items() if v}
        for p, row in zip(self.pivots, self.basis):
            f = vec.get(p)
            if f is not None:
                del vec[p]
                _row_axpy(vec, -f, row, skip=p)
        return vec

    def contains_vector(self, vec):
        return not self.reduce_vector(vec)

    def is_subspace_of(self, other):
        assert self.ambient == other.ambient
        if self.dim > other.dim:
            return False
        return all(other.contains_vector(row) for row in self.basis)

    def matrix(self):
        return Matrix(self.dim, self.ambient, [dict(r) for r in self.basis])


def echelonize(rows, ambient):
    """Reduced row echelon Subspace spanned by the given sparse rows."""
    pivots = []  # increasing pivot columns
    prows = []  # matching rows
    for raw in rows:
        vec = {j: v for j, v in raw.items() if v}
        # one pass in pivot order suffices: stored rows are fully reduced,
        # so reductions only introduce entries at non-pivot columns
        for idx, p in enumerate(pivots):
            f = vec.get(p)
            if f is not None:
                del vec[p]
                _row_axpy(vec, -f, prows[idx], skip=p)
        if not vec:
            continue
        col = min(vec)
        inv = None
        lead = vec.pop(col)
        one = lead**0
        if lead != one:
            inv = one / lead
            for j in list(vec):
                vec[j] = vec[j] * inv
        vec[col] = one
        # eliminate the new pivot column from existing rows
        for idx, row in enumerate(prows):
            f = row.get(col)
            if f is not None:
                del row[col]
                _row_axpy(row, -f, vec, skip=col)
        at = 0
        while at < len(pivots) and pivots[at] < col:
            at += 1
        pivots.insert(at, col)
        prows.insert(at, vec)
    return Subspace(ambient, tuple(prows), tuple(pivots))


def subspace_sum(u, w):
    assert u.ambient == w.ambient
    if u.dim == 0:
        return w
    if w.dim == 0:
        return u
    return echelonize(list(u.basis) + list(w.basis), u.ambient)


def subspace_intersect(u, w):
    """Zassenhaus: echelonize [u|u] over [w|0]; left-zero rows carry it."""
    assert u.ambient == w.ambient
    m = u.ambient
    if u.dim == 0 or w.dim == 0:
        return echelonize([], m)
    stacked = []
    for row in u.basis:
        d = dict(row)
        for j, v in row.items():
            d[j + m] = v
        stacked.append(d)
    stacked.extend(dict(row) for row in w.basis)
    big = echelonize(stacked, 2 * m)
    inter_rows = []
    for p, row in zip(big.pivots, big.basis):
        if p >= m:
            inter_rows.append({j - m: v for j, v in row.items()})
    return echelonize(inter_rows, m)


def kernel(mat):
    """Right kernel {x : M x = 0} as a Subspace of k^cols."""
    ech = echelonize(mat.data, mat.cols)
    pivot_set = set(ech.pivots)
    free_cols = [j for j in range(mat.cols) if j not in pivot_set]
    sample = next((v for r in ech.basis for v in r.values()), None)
    one = ONE if sample is None else sample**0
    rows = []
    for f in free_cols:
        vec = {f: one}
        for p, row in zip(ech.pivots, ech.basis):
            v = row.get(f)
            if v is not None:
                vec[p] = -v
        rows.append(vec)
    return echelonize(rows, mat.cols)


def commutant(gens, dim):
    """Matrices commuting with every generator, vectorized row-major.

    Returns the solution space of X G = G X for all G as a Subspace of
    k^(dim*dim); the commutant algebra dimension is its dim.
    """
    eq_rows = []
    for g in gens:
        assert g.rows == dim and g.cols == dim
        gt = g.transpose()
        for i in range(dim):
            for j in range(dim):
                row = {}
                # (XG)_ij term: X_ib G_bj  -> coefficient at column i*dim+b
                for b, v in gt.data[j].items():
                    row[i * dim + b] = v
                # (GX)_ij term: -G_ia X_aj -> coefficient at column a*dim+j
                for a, v in g.data[i].items():
                    key = a * dim + j
                    cur = row.get(key)
                    s = -v if cur is None else cur - v
                    if s:
                        row[key] = s
                    elif cur is not None:
                        del row[key]
                if row:
                    eq_rows.append(row)
    eq = Matrix(len(eq_rows), dim * dim, eq_rows)
    return kernel(eq)


def lift_to_position(mat, i, n, d):
    """Embed an operator on V(x)V as position (i, i+1) of V^(x)n.

    Basis of V^(x)n is lexicographic in the multi-index, first factor most
    significant.  1 <= i <= n-1.
    """
    assert mat.rows == d * d and mat.cols == d * d
    assert 1 <= i <= n - 1
    pre = d ** (i - 1)
    suf = d ** (n - i - 1)
    size = d**n
    data = [dict() for _ in range(size)]
    for rc in range(d * d):
        row_entries = mat.data[rc]
        if not row_entries:
            continue
        for a in range(pre):
            base_r = (a * d * d + rc) * suf
            for cc, v in row_entries.items():
                base_c = (a * d * d + cc) * suf
                for s in range(suf):
                    data[base_r + s][base_c + s] = v
    return Matrix(size, size, data)


def lift_rows(basis_rows, i, n, d):
    """Rows spanning V^(i-1) (x) U (x) V^(n-i-1) for U spanned on V(x)V."""
    pre = d ** (i - 1)
    suf = d ** (n - i - 1)
    out = []
    for a in range(pre):
        for s in range(suf):
            for row in basis_rows:
                out.append({(a * d * d + j) * suf + s: v for j, v in row.items()})
    return out


# ---------------------------------------------------------------------------
# specialization at a rational point (advisory fast path; symbolic stays
# authoritative everywhere a verdict is produced)


def specialize_scalar(value, x):
    if isinstance(value, Scalar):
        return value.evaluate(x)
    return Fraction(value)


def specialize_rows(rows, x):
    return [{j: specialize_scalar(v, x) for j, v in r.items()} for r in rows]


def specialize_matrix(mat, x):
    return Matrix(mat.rows, mat.cols, specialize_rows(mat.data, x))
