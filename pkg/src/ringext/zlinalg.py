"""Exact linear algebra over free Z-modules.

Everything here works with arbitrary-precision Python integers; there is no
rounding anywhere.  Pivoting is deterministic (smallest nonzero absolute
value, then lowest row, then lowest column), so normal forms, kernel bases
and canonical solutions are reproducible between runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Optional, Sequence

from .errors import StructuralError


class FormalSum:
    """Integer combination of hashable generators; zero coefficients are
    never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Hashable, int]] = None):
        self.terms: dict = {}
        if terms:
            for g, c in terms.items():
                if c:
                    self.terms[g] = self.terms.get(g, 0) + c
            self.terms = {g: c for g, c in self.terms.items() if c}

    @classmethod
    def of(cls, gen: Hashable, coeff: int = 1) -> "FormalSum":
        return cls({gen: coeff}) if coeff else cls()

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return FormalSum(out)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) - c
        return FormalSum(out)

    def __neg__(self) -> "FormalSum":
        return FormalSum({g: -c for g, c in self.terms.items()})

    def scale(self, n: int) -> "FormalSum":
        return FormalSum({g: n * c for g, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "FormalSum(0)"
        parts = [f"{c}*{g}" for g, c in sorted(self.terms.items(), key=lambda t: repr(t[0]))]
        return "FormalSum(" + " + ".join(parts) + ")"

    def to_vector(self, index: Mapping[Hashable, int], n: int) -> list[int]:
        vec = [0] * n
        for g, c in self.terms.items():
            if g not in index:
                raise StructuralError(f"generator {g!r} not in declared basis")
            vec[index[g]] = c
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence[int], basis: Sequence[Hashable]) -> "FormalSum":
        return cls({g: c for g, c in zip(basis, vec) if c})


class IntMatrix:
    """Immutable integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = len(entries)
        if rows == 0:
            if cols is None:
                raise StructuralError("matrix with 0 rows needs an explicit column count")
            self.rows, self.cols, self.entries = 0, cols, ()
            return
        width = len(entries[0])
        for r in entries:
            if len(r) != width:
                raise StructuralError("ragged matrix")
            for v in r:
                if not isinstance(v, int):
                    raise StructuralError(f"non-integer entry {v!r}")
        if cols is not None and cols != width:
            raise StructuralError("declared column count disagrees with entries")
        self.rows, self.cols = rows, width
        self.entries = tuple(tuple(r) for r in entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], dim: int) -> "IntMatrix":
        return cls([[col[i] for col in cols] for i in range(dim)], cols=len(cols))

    def column(self, j: int) -> list[int]:
        return [self.entries[i][j] for i in range(self.rows)]

    def mat_mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise StructuralError("dimension mismatch in product")
        out = [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix(out, cols=other.cols)

    def vec_mul(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise StructuralError("vector length mismatch")
        return [sum(row[k] * vec[k] for k in range(self.cols)) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = _as_matrix(m)
    if m.rows != m.cols:
        raise StructuralError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class NormalForm:
    """U * original * V = D with U, V unimodular."""

    original: IntMatrix
    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    def verify(self) -> None:
        if self.U.mat_mul(self.original).mat_mul(self.V) != self.D:
            raise StructuralError("normal form product check failed")
        if abs(det(self.U)) != 1 or abs(det(self.V)) != 1:
            raise StructuralError("transform not unimodular")


def _pivot(a, k, rows, cols):
    """Deterministic pivot: least |value|, then least row, then least column."""
    best = None
    for i in range(k, rows):
        for j in range(k, cols):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return best


class _Worksheet:
    """Mutable matrix with recorded row transform U and column transform V."""

    def __init__(self, m: IntMatrix):
        self.rows, self.cols = m.rows, m.cols
        self.a = [list(r) for r in m.entries]
        self.u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
        self.v = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]

    def row_op(self, i1, i2, q):  # row i2 -= q * row i1
        a, u = self.a, self.u
        for j in range(self.cols):
            a[i2][j] -= q * a[i1][j]
        for j in range(self.rows):
            u[i2][j] -= q * u[i1][j]

    def col_op(self, j1, j2, q):  # col j2 -= q * col j1
        for row in self.a:
            row[j2] -= q * row[j1]
        for row in self.v:
            row[j2] -= q * row[j1]

    def swap_rows(self, i1, i2):
        self.a[i1], self.a[i2] = self.a[i2], self.a[i1]
        self.u[i1], self.u[i2] = self.u[i2], self.u[i1]

    def swap_cols(self, j1, j2):
        for row in self.a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in self.v:
            row[j1], row[j2] = row[j2], row[j1]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def diagonalize_from(self, k0: int) -> None:
        """Clear everything off the diagonal from position k0 on.  Each pass
        either finishes a pivot or strictly shrinks the least |entry| of the
        working submatrix, so this terminates."""
        a = self.a
        k = k0
        while True:
            p = _pivot(a, k, self.rows, self.cols)
            if p is None:
                return
            _, pi, pj = p
            if pi != k:
                self.swap_rows(pi, k)
            if pj != k:
                self.swap_cols(pj, k)
            clean = True
            for i in range(k + 1, self.rows):
                if a[i][k]:
                    self.row_op(k, i, a[i][k] // a[k][k])
                    if a[i][k]:
                        clean = False
            for j in range(k + 1, self.cols):
                if a[k][j]:
                    self.col_op(k, j, a[k][j] // a[k][k])
                    if a[k][j]:
                        clean = False
            if clean:
                if a[k][k] < 0:
                    self.negate_row(k)
                k += 1


_SMITH_CACHE: dict = {}


def smith_form(m, check: bool = True) -> NormalForm:
    """Smith normal form with recorded unimodular transforms.

    The diagonal is nonnegative and satisfies the divisibility chain
    d1 | d2 | ... ; the factorization ``U*M*V = D`` is re-verified exactly
    unless ``check`` is disabled.
    """
    m = _as_matrix(m)
    cached = _SMITH_CACHE.get(m)
    if cached is not None:
        return cached
    ws = _Worksheet(m)
    ws.diagonalize_from(0)
    n = min(m.rows, m.cols)
    # divisibility chain: fold offending later entries back and re-reduce
    while True:
        bad = next((i for i in range(n - 1)
                    if ws.a[i + 1][i + 1] and ws.a[i][i]
                    and ws.a[i + 1][i + 1] % ws.a[i][i] != 0), None)
        if bad is None:
            break
        ws.col_op(bad + 1, bad, -1)  # col bad += col bad+1
        ws.diagonalize_from(bad)
    nf = NormalForm(m, IntMatrix(ws.u, cols=m.rows), IntMatrix(ws.v, cols=m.cols),
                    IntMatrix(ws.a, cols=m.cols))
    if check:
        if nf.U.mat_mul(m).mat_mul(nf.V) != nf.D:
            raise StructuralError("normal form product check failed")
        d = [nf.D.entries[i][i] for i in range(n)]
        for i in range(n - 1):
            if d[i + 1] and (d[i] == 0 or d[i + 1] % d[i] != 0):
                raise StructuralError(f"divisibility chain broken: {d}")
        if any(nf.D.entries[i][j] for i in range(nf.D.rows) for j in range(nf.D.cols) if i != j):
            raise StructuralError("off-diagonal residue in Smith form")
    _SMITH_CACHE[m] = nf
    return nf


def hermite_row_form(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H = U*M``: positive pivots, entries
    above each pivot reduced into ``[0, pivot)``, zero rows at the bottom."""
    m = _as_matrix(m)
    ws = _Worksheet(m)
    a = ws.a
    r = 0
    for c in range(m.cols):
        while True:
            cand = [(abs(a[i][c]), i) for i in range(r, m.rows) if a[i][c]]
            if not cand:
                break
            _, pi = min(cand)
            if pi != r:
                ws.swap_rows(pi, r)
            clean = True
            for i in range(r + 1, m.rows):
                if a[i][c]:
                    ws.row_op(r, i, a[i][c] // a[r][c])
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < m.rows and a[r][c]:
            if a[r][c] < 0:
                ws.negate_row(r)
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    ws.row_op(r, i, q)
            r += 1
            if r == m.rows:
                break
    return IntMatrix(a, cols=m.cols), IntMatrix(ws.u, cols=m.rows)


_KERNEL_CACHE: dict = {}


def kernel_basis_vectors(m) -> list[list[int]]:
    """Z-basis of the integer kernel of ``m`` (columns of the Smith V at the
    zero invariant factors, Hermite-canonicalized).  Saturated by
    construction: V is unimodular."""
    m = _as_matrix(m)
    cached = _KERNEL_CACHE.get(m)
    if cached is not None:
        return [list(v) for v in cached]
    nf = smith_form(m)
    n = min(m.rows, m.cols)
    ker_cols = [j for j in range(m.cols) if j >= n or nf.D.entries[j][j] == 0]
    vecs = [nf.V.column(j) for j in ker_cols]
    if vecs:
        h, _ = hermite_row_form(IntMatrix(vecs, cols=m.cols))
        vecs = [list(r) for r in h.entries if any(r)]
    _KERNEL_CACHE[m] = [tuple(v) for v in vecs]
    return vecs


def kernel_basis(m, basis: Optional[Sequence[Hashable]] = None) -> list[FormalSum]:
    """Kernel basis as formal sums over ``basis`` (defaults to indices)."""
    m = _as_matrix(m)
    if basis is None:
        basis = list(range(m.cols))
    return [FormalSum.from_vector(v, basis) for v in kernel_basis_vectors(m)]


def solve_vector(m, b: Sequence[int]) -> Optional[list[int]]:
    """One integer solution of ``M x = b``, or None.

    Deterministic: the Smith-form particular solution with free coordinates
    zero, reduced modulo the kernel lattice against its Hermite basis.
    """
    m = _as_matrix(m)
    if len(b) != m.rows:
        raise StructuralError("right-hand side length mismatch")
    nf = smith_form(m)
    c = nf.U.vec_mul(list(b))
    n = min(m.rows, m.cols)
    y = [0] * m.cols
    for i in range(m.rows):
        d = nf.D.entries[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d != 0:
            return None
        else:
            y[i] = c[i] // d
    x = nf.V.vec_mul(y)
    ker = kernel_basis_vectors(m)
    for row in ker:
        piv = next(j for j, v in enumerate(row) if v)
        q = x[piv] // row[piv]
        if q:
            x = [xv - q * rv for xv, rv in zip(x, row)]
    return x


def solve(m, b: FormalSum, row_basis: Sequence[Hashable],
          col_basis: Sequence[Hashable]) -> Optional[FormalSum]:
    """Formal-sum front end of :func:`solve_vector`."""
    m = _as_matrix(m)
    index = {g: i for i, g in enumerate(row_basis)}
    vec = b.to_vector(index, m.rows)
    x = solve_vector(m, vec)
    if x is None:
        return None
    return FormalSum.from_vector(x, col_basis)


def lattice_contains(gens: Sequence[Sequence[int]], v: Sequence[int], dim: int) -> bool:
    """Is ``v`` an integer combination of ``gens`` inside Z^dim?"""
    if not gens:
        return all(x == 0 for x in v)
    m = IntMatrix.from_columns(gens, dim)
    return solve_vector(m, list(v)) is not None


def subgroup_equal(gens1: Sequence, gens2: Sequence, dim: Optional[int] = None,
                   basis: Optional[Sequence[Hashable]] = None) -> bool:
    """Do two generating sets span the same subgroup of the free Z-module?

    Accepts plain vectors, or FormalSums together with ``basis``.
    """
    def to_vecs(gens):
        out = []
        for g in gens:
            if isinstance(g, FormalSum):
                if basis is None:
                    raise StructuralError("FormalSum generators need an explicit basis")
                index = {b: i for i, b in enumerate(basis)}
                out.append(g.to_vector(index, len(basis)))
            else:
                out.append(list(g))
        return out

    v1, v2 = to_vecs(gens1), to_vecs(gens2)
    if dim is None:
        if basis is not None:
            dim = len(basis)
        elif v1:
            dim = len(v1[0])
        elif v2:
            dim = len(v2[0])
        else:
            return True
    return (all(lattice_contains(v2, v, dim) for v in v1)
            and all(lattice_contains(v1, v, dim) for v in v2))
