"""Dense matrices over exact or float scalars, echelon forms and matrix spaces.

Matrices are flattened row-major into coordinate vectors when they are
treated as points of a vector space; every ``MatSpace`` keeps its basis in
reduced row echelon form (leftmost pivot, pivot scaled to 1), so the basis
is canonical and equality of spaces is equality of bases.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence

from .scalar import EXACT, Backend, Cyc, FloatScalar

log = logging.getLogger(__name__)


class LinAlgError(ValueError):
    """Shape mismatch, singular matrix, or a zero entry where an inverse is needed."""


def _backend_of(x) -> Backend:
    if isinstance(x, FloatScalar):
        return x.backend
    return EXACT


class Mat:
    """Immutable dense matrix.  ``M[i, j]`` indexes entries (0-based)."""

    __slots__ = ("rows", "nrows", "ncols", "backend")

    def __init__(self, rows: Iterable[Iterable], backend: Backend | None = None):
        raw = [list(r) for r in rows]
        if not raw:
            raise LinAlgError("matrix needs at least one row")
        ncols = len(raw[0])
        if ncols == 0 or any(len(r) != ncols for r in raw):
            raise LinAlgError("ragged or empty rows")
        if backend is None:
            backend = EXACT
            for r in raw:
                for x in r:
                    if isinstance(x, FloatScalar):
                        backend = x.backend
                        break
        self.backend = backend
        sc = backend.scalar
        self.rows = tuple(tuple(sc(x) for x in r) for r in raw)
        self.nrows = len(raw)
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows: list[list], backend: Backend) -> Mat:
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(rows)
        obj.ncols = len(rows[0])
        obj.backend = backend
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_function(cls, nrows: int, ncols: int, f: Callable[[int, int], object], backend: Backend = EXACT) -> Mat:
        return cls(([f(i, j) for j in range(ncols)] for i in range(nrows)), backend)

    @classmethod
    def identity(cls, n: int, backend: Backend = EXACT) -> Mat:
        return cls.from_function(n, n, lambda i, j: int(i == j), backend)

    @classmethod
    def ones(cls, n: int, ncols: int | None = None, backend: Backend = EXACT) -> Mat:
        return cls.from_function(n, n if ncols is None else ncols, lambda i, j: 1, backend)

    @classmethod
    def zeros(cls, n: int, ncols: int | None = None, backend: Backend = EXACT) -> Mat:
        return cls.from_function(n, n if ncols is None else ncols, lambda i, j: 0, backend)

    @classmethod
    def unit(cls, n: int, i: int, j: int, backend: Backend = EXACT) -> Mat:
        """Matrix unit E_ij of order n."""
        return cls.from_function(n, n, lambda a, b: int(a == i and b == j), backend)

    @classmethod
    def diag(cls, values: Sequence, backend: Backend | None = None) -> Mat:
        n = len(values)
        vals = list(values)
        bk = backend or _backend_of(vals[0])
        return cls.from_function(n, n, lambda i, j: vals[i] if i == j else 0, bk)

    # -- basic protocol ------------------------------------------------------
    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise LinAlgError(f"matrix is {self.nrows}x{self.ncols}, not square")
        return self.nrows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def flat(self) -> list:
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s)
        )

    __hash__ = None

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Mat([{body}])"

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def _check_shape(self, other: Mat):
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- linear structure ----------------------------------------------------
    def __add__(self, other: Mat) -> Mat:
        self._check_shape(other)
        return Mat._wrap([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.backend)

    def __sub__(self, other: Mat) -> Mat:
        self._check_shape(other)
        return Mat._wrap([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.backend)

    def __neg__(self) -> Mat:
        return Mat._wrap([[-x for x in r] for r in self.rows], self.backend)

    def scale(self, c) -> Mat:
        c = self.backend.scalar(c)
        return Mat._wrap([[c * x for x in r] for r in self.rows], self.backend)

    def __mul__(self, c) -> Mat:
        if isinstance(c, Mat):
            raise TypeError("use @ for the matrix product and schur() for the Schur product")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Mat) -> Mat:
        return matmul(self, other)

    @property
    def T(self) -> Mat:
        return transpose(self)

    def schur(self, other: Mat) -> Mat:
        return schur(self, other)


# ---------------------------------------------------------------------------
# products and inverses


def matmul(M: Mat, N: Mat) -> Mat:
    """Matrix product; skips zero entries, so products with sparse factors are cheap."""
    if M.ncols != N.nrows:
        raise LinAlgError(f"cannot multiply {M.shape} by {N.shape}")
    zero = M.backend.zero()
    nz = [[(j, x) for j, x in enumerate(r) if not x.is_zero()] for r in N.rows]
    out = []
    for r in M.rows:
        acc = [zero] * N.ncols
        for k, a in enumerate(r):
            if a.is_zero():
                continue
            for j, b in nz[k]:
                acc[j] = acc[j] + a * b
        out.append(acc)
    return Mat._wrap(out, M.backend)


def schur(M: Mat, N: Mat) -> Mat:
    """Entrywise (Schur) product."""
    M._check_shape(N)
    return Mat._wrap([[x * y for x, y in zip(r, s)] for r, s in zip(M.rows, N.rows)], M.backend)


def transpose(M: Mat) -> Mat:
    return Mat._wrap([list(c) for c in zip(*M.rows)], M.backend)


def is_schur_invertible(M: Mat) -> bool:
    return all(not x.is_zero() for r in M.rows for x in r)


def schur_inverse(M: Mat) -> Mat:
    """Entrywise reciprocal; raises on a zero entry."""
    for i, r in enumerate(M.rows):
        for j, x in enumerate(r):
            if x.is_zero():
                raise LinAlgError(f"zero entry at ({i + 1},{j + 1}); not Schur invertible")
    return Mat._wrap([[x.inv() for x in r] for r in M.rows], M.backend)


def inverse(M: Mat) -> Mat:
    """Matrix inverse by Gauss-Jordan elimination; raises if singular."""
    n = M.n
    bk = M.backend
    one, zero = bk.one(), bk.zero()
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(M.rows)]
    for c in range(n):
        piv = _choose_pivot(aug, c, c, bk)
        if piv is None:
            raise LinAlgError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c].inv()
        aug[c] = [x * p for x in aug[c]]
        for r in range(n):
            if r != c and not aug[r][c].is_zero():
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return Mat._wrap([r[n:] for r in aug], bk)


def is_type2(W: Mat) -> bool:
    """True iff W times the transposed Schur inverse of W is n*I (type-II)."""
    if not W.is_square():
        return False
    if not is_schur_invertible(W):
        return False
    n = W.n
    P = matmul(W, transpose(schur_inverse(W)))
    return P == Mat.identity(n, W.backend).scale(n)


def is_symmetric(M: Mat) -> bool:
    return M.is_square() and M == transpose(M)


def trace(M: Mat):
    acc = M.backend.zero()
    for i in range(M.n):
        acc = acc + M.rows[i][i]
    return acc


# ---------------------------------------------------------------------------
# block assembly


def block(grid: Sequence[Sequence[Mat]]) -> Mat:
    """Assemble a block matrix from a grid of conformal blocks."""
    rows = []
    for brow in grid:
        h = brow[0].nrows
        if any(b.nrows != h for b in brow):
            raise LinAlgError("blocks in one block-row differ in height")
        for i in range(h):
            rows.append([x for b in brow for x in b.rows[i]])
    widths = [b.ncols for b in grid[0]]
    for brow in grid:
        if [b.ncols for b in brow] != widths:
            raise LinAlgError("blocks in one block-column differ in width")
    return Mat._wrap(rows, grid[0][0].backend)


def block4(blocks: Sequence[Sequence[Mat]]) -> Mat:
    """4x4 grid of n x n blocks -> matrix of order 4n."""
    if len(blocks) != 4 or any(len(r) != 4 for r in blocks):
        raise LinAlgError("block4 needs a 4x4 grid")
    n = blocks[0][0].nrows
    for r in blocks:
        for b in r:
            if b.shape != (n, n):
                raise LinAlgError("block4 needs square blocks of one order")
    return block(blocks)


def sub_block(M: Mat, bi: int, bj: int, size: int) -> Mat:
    """The (bi, bj) block (0-based) of a matrix cut into size x size blocks."""
    return Mat._wrap([list(M.rows[bi * size + i][bj * size:(bj + 1) * size]) for i in range(size)], M.backend)


def restrict(M: Mat, Y: Sequence[int]) -> Mat:
    """Principal submatrix on the 0-based index list Y (order kept as given)."""
    Y = list(Y)
    if not Y:
        raise LinAlgError("empty index set")
    if any(y < 0 or y >= M.nrows or y >= M.ncols for y in Y):
        raise LinAlgError("index out of range")
    return Mat._wrap([[M.rows[a][b] for b in Y] for a in Y], M.backend)


# ---------------------------------------------------------------------------
# echelon machinery


def _choose_pivot(rows: list[list], col: int, start: int, bk: Backend):
    if bk.exact:
        for r in range(start, len(rows)):
            if not rows[r][col].is_zero():
                return r
        return None
    best, best_abs = None, bk.eps
    for r in range(start, len(rows)):
        a = abs(rows[r][col].z)
        if a > best_abs:
            best, best_abs = r, a
    return best


class Echelon:
    """Incrementally maintained row echelon form of a set of coordinate vectors.

    Rows are kept sorted by pivot column with each pivot scaled to 1; call
    ``reduced()`` for the fully reduced (canonical) form.
    """

    def __init__(self, ncols: int, backend: Backend = EXACT):
        self.ncols = ncols
        self.backend = backend
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.min_pivot: float | None = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def full(self) -> bool:
        return len(self.rows) == self.ncols

    def reduce(self, vec: Sequence) -> list:
        """Residual of ``vec`` after eliminating against the current pivots."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if not f.is_zero():
                for j in range(p, self.ncols):
                    y = row[j]
                    if not y.is_zero():
                        v[j] = v[j] - f * y
                if not self.backend.exact:
                    v[p] = self.backend.zero()
        return v

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; returns True if it increased the rank."""
        if len(vec) != self.ncols:
            raise LinAlgError("vector length does not match the ambient dimension")
        v = self.reduce(vec)
        bk = self.backend
        if bk.exact:
            p = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        else:
            p = None
            for j, x in enumerate(v):
                if abs(x.z) > bk.eps:
                    p = j
                    break
        if p is None:
            return False
        piv = v[p]
        if not bk.exact:
            a = abs(piv.z)
            self.min_pivot = a if self.min_pivot is None else min(self.min_pivot, a)
            v = [bk.zero() if abs(x.z) <= bk.eps else x for x in v]
        inv = piv.inv()
        v = [x * inv if not x.is_zero() else x for x in v]
        # keep rows ordered by pivot
        k = 0
        while k < len(self.pivots) and self.pivots[k] < p:
            k += 1
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        return True

    def reduced(self) -> list[list]:
        """Reduced row echelon form (each pivot column is a unit column)."""
        rows = [list(r) for r in self.rows]
        for k in range(len(rows) - 1, -1, -1):
            p = self.pivots[k]
            for t in range(k):
                f = rows[t][p]
                if not f.is_zero():
                    rows[t] = [x - f * y for x, y in zip(rows[t], rows[k])]
        if not self.backend.exact:
            eps = self.backend.eps
            rows = [[self.backend.zero() if abs(x.z) <= eps else x for x in r] for r in rows]
        return rows


def rref(rows: Sequence[Sequence], ncols: int, backend: Backend = EXACT) -> tuple[list[list], list[int]]:
    ech = Echelon(ncols, backend)
    for r in rows:
        ech.add(r)
        if ech.full():
            break
    _log_pivot(ech)
    return ech.reduced(), list(ech.pivots)


def rank(rows: Sequence[Sequence], ncols: int, backend: Backend = EXACT) -> int:
    return len(rref(rows, ncols, backend)[1])


def _log_pivot(ech: Echelon):
    if not ech.backend.exact and ech.min_pivot is not None:
        log.info("float rank decision: rank %d, minimum pivot magnitude %.3e", ech.rank, ech.min_pivot)


def nullspace_from_echelon(ech: Echelon) -> list[list]:
    red = ech.reduced()
    piv = ech.pivots
    bk = ech.backend
    one, zero = bk.one(), bk.zero()
    free = [j for j in range(ech.ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [zero] * ech.ncols
        v[f] = one
        for row, p in zip(red, piv):
            if not row[f].is_zero():
                v[p] = -row[f]
        basis.append(v)
    return basis


def nullspace(rows: Iterable[Sequence], ncols: int, backend: Backend = EXACT) -> list[list]:
    """Basis of {x : r.x = 0 for all rows r}, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, so the basis is canonical for the exact backend.
    """
    ech = Echelon(ncols, backend)
    for r in rows:
        ech.add(r)
        if ech.full():
            break
    _log_pivot(ech)
    return nullspace_from_echelon(ech)


def solve(Mrows: Sequence[Sequence], rhs: Sequence, backend: Backend = EXACT) -> list | None:
    """One solution x of M x = rhs (free variables set to 0), or None if inconsistent."""
    ncols = len(Mrows[0]) if Mrows else 0
    sc = backend.scalar
    aug = [[sc(x) for x in r] + [sc(b)] for r, b in zip(Mrows, rhs)]
    red, piv = rref(aug, ncols + 1, backend)
    if ncols in piv:
        return None
    x = [backend.zero()] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


# ---------------------------------------------------------------------------
# matrix spaces


class MatSpace:
    """Linear span of matrices of one shape, with a canonical reduced basis."""

    __slots__ = ("shape", "backend", "_rows", "_pivots")

    def __init__(self, shape: tuple[int, int], rows: list[list], pivots: list[int], backend: Backend):
        self.shape = shape
        self.backend = backend
        self._rows = rows
        self._pivots = pivots

    @classmethod
    def span(cls, mats: Iterable[Mat], shape: tuple[int, int] | None = None, backend: Backend | None = None) -> MatSpace:
        mats = list(mats)
        if shape is None:
            if not mats:
                raise LinAlgError("shape needed for an empty span")
            shape = mats[0].shape
        if backend is None:
            backend = mats[0].backend if mats else EXACT
        for M in mats:
            if M.shape != shape:
                raise LinAlgError(f"order mismatch: {M.shape} vs {shape}")
        rows, piv = rref([M.flat() for M in mats], shape[0] * shape[1], backend)
        return cls(shape, rows, piv, backend)

    @classmethod
    def from_vectors(cls, shape: tuple[int, int], vecs: Iterable[Sequence], backend: Backend = EXACT) -> MatSpace:
        rows, piv = rref(list(vecs), shape[0] * shape[1], backend)
        return cls(shape, rows, piv, backend)

    @property
    def order(self) -> int:
        return self.shape[0]

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> list[Mat]:
        r, c = self.shape
        return [Mat._wrap([v[i * c:(i + 1) * c] for i in range(r)], self.backend) for v in self._rows]

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    def vectors(self) -> list[list]:
        return [list(v) for v in self._rows]

    def coordinates(self, M: Mat) -> list | None:
        """Coordinates of M in the reduced basis, or None if M is not in the space."""
        if M.shape != self.shape:
            raise LinAlgError(f"order mismatch: {M.shape} vs {self.shape}")
        v = M.flat()
        coords = [v[p] for p in self._pivots]
        resid = list(v)
        for c, row in zip(coords, self._rows):
            if not c.is_zero():
                resid = [x - c * y for x, y in zip(resid, row)]
        if any(not x.is_zero() for x in resid):
            return None
        return coords

    def member(self, M: Mat) -> bool:
        return self.coordinates(M) is not None

    __contains__ = member

    def contains_space(self, other: MatSpace) -> bool:
        return all(self.member(M) for M in other.basis)

    def __eq__(self, other):
        if not isinstance(other, MatSpace):
            return NotImplemented
        return space_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"MatSpace(shape={self.shape}, dim={self.dim})"

    def combine(self, coords: Sequence) -> Mat:
        r, c = self.shape
        acc = [self.backend.zero()] * (r * c)
        for a, row in zip(coords, self._rows):
            a = self.backend.scalar(a)
            if not a.is_zero():
                acc = [x + a * y for x, y in zip(acc, row)]
        return Mat._wrap([acc[i * c:(i + 1) * c] for i in range(r)], self.backend)

    def sum(self, other: MatSpace) -> MatSpace:
        return MatSpace.span(self.basis + other.basis, self.shape, self.backend)

    def intersection_dim(self, other: MatSpace) -> int:
        return self.dim + other.dim - self.sum(other).dim

    def transpose(self) -> MatSpace:
        r, c = self.shape
        return MatSpace.span([transpose(M) for M in self.basis], (c, r), self.backend)

    def map(self, f: Callable[[Mat], Mat]) -> MatSpace:
        images = [f(M) for M in self.basis]
        shape = images[0].shape if images else self.shape
        return MatSpace.span(images, shape, self.backend)


def span_reduce(mats: Iterable[Mat], shape: tuple[int, int] | None = None) -> MatSpace:
    return MatSpace.span(mats, shape)


def member(S: MatSpace, M: Mat) -> bool:
    return S.member(M)


def space_equal(S1: MatSpace, S2: MatSpace) -> bool:
    if S1.shape != S2.shape:
        raise LinAlgError(f"order mismatch: {S1.shape} vs {S2.shape}")
    if S1.dim != S2.dim:
        return False
    if S1.backend.exact and S2.backend.exact:
        return S1._pivots == S2._pivots and all(
            x == y for r, s in zip(S1._rows, S2._rows) for x, y in zip(r, s)
        )
    return S1.contains_space(S2)
