"""Bose-Mesner algebras: axioms, Schur idempotents, quotients, induced schemes, duality maps."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .linalg import LinAlgError, Mat, MatSpace, matmul, restrict, schur, transpose


@dataclass
class BMVerdict:
    contains_I: bool
    contains_J: bool
    transpose_closed: bool
    schur_closed: bool
    product_closed: bool
    commutative: bool

    @property
    def passed(self) -> bool:
        return all(vars(self).values())

    def failures(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


def check_bose_mesner(S: MatSpace) -> BMVerdict:
    """Bose-Mesner axioms, with closure checked on all pairs of basis matrices."""
    n = S.order
    bk = S.backend
    basis = S.basis
    I = Mat.identity(n, bk)
    J = Mat.ones(n, backend=bk)
    t_closed = all(transpose(M) in S for M in basis)
    s_closed = p_closed = comm = True
    for a, M in enumerate(basis):
        for N in basis[a:]:
            if s_closed and schur(M, N) not in S:
                s_closed = False
            MN = matmul(M, N)
            if p_closed and MN not in S:
                p_closed = False
            if comm and MN != matmul(N, M):
                comm = False
    return BMVerdict(I in S, J in S, t_closed, s_closed, p_closed, comm)


@dataclass
class Scheme:
    """A Bose-Mesner algebra with its Schur idempotents (0/1 basis summing to J)."""

    space: MatSpace
    idempotents: list[Mat]
    valencies: list[int | None] = field(default_factory=list)
    duality: Callable[[Mat], Mat] | None = None

    @property
    def order(self) -> int:
        return self.space.order

    @property
    def rank(self) -> int:
        return len(self.idempotents)


class SchemeError(ValueError):
    pass


def position_classes(S: MatSpace) -> list[list[tuple[int, int]]]:
    """Group positions (a, b) by the tuple of basis values at (a, b), in first-seen order."""
    n, m = S.shape
    basis = S.basis
    bk = S.backend
    classes: dict = {}
    reps: list = []  # float backend: representative tuples
    order: list = []
    for a in range(n):
        for b in range(m):
            vals = tuple(M[a, b] for M in basis)
            if bk.exact:
                key = vals
            else:
                key = next((k for k, r in enumerate(reps) if all(x == y for x, y in zip(r, vals))), None)
                if key is None:
                    key = len(reps)
                    reps.append(vals)
            if key not in classes:
                classes[key] = []
                order.append(key)
            classes[key].append((a, b))
    return [classes[k] for k in order]


def schur_idempotents(S: MatSpace) -> Scheme:
    """Extract the 0/1 Schur idempotents of a Schur-closed space containing J.

    Positions are colored by their value tuples across the reduced basis; the
    color classes span S exactly when S is Schur closed and contains J.  The
    idempotent equal to I (if any) is listed first, the rest by first position.
    """
    n, m = S.shape
    bk = S.backend
    mats = []
    for cls in position_classes(S):
        rows = [[0] * m for _ in range(n)]
        for a, b in cls:
            rows[a][b] = 1
        mats.append(Mat(rows, bk))
    if MatSpace.span(mats, S.shape, bk) != S:
        raise SchemeError("color classes do not span the space (not Schur closed or J missing)")
    I = Mat.identity(n, bk) if n == m else None
    mats.sort(key=lambda E: 0 if E == I else 1)
    vals = [_valency(E) for E in mats]
    return Scheme(S, mats, vals)


def _valency(E: Mat) -> int | None:
    sums = {sum(1 for x in r if not x.is_zero()) for r in E.rows}
    return sums.pop() if len(sums) == 1 else None


# ---------------------------------------------------------------------------
# partitions, quotients, induced schemes


@dataclass(frozen=True)
class Partition:
    """Cells of 0-based indices covering range(size)."""

    cells: tuple[tuple[int, ...], ...]
    size: int

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]], size: int | None = None, one_based: bool = False) -> Partition:
        off = 1 if one_based else 0
        cs = tuple(tuple(x - off for x in c) for c in cells)
        if any(not c for c in cs):
            raise ValueError("empty cell")
        flat = sorted(x for c in cs for x in c)
        size = len(flat) if size is None else size
        if flat != list(range(size)):
            raise ValueError(f"cells must partition {{{off}..{size - 1 + off}}}")
        return cls(cs, size)

    def characteristic(self, backend=None) -> Mat:
        """The size x r 0/1 matrix S with S[u, k] = 1 iff u lies in cell k."""
        rows = [[0] * len(self.cells) for _ in range(self.size)]
        for k, c in enumerate(self.cells):
            for u in c:
                rows[u][k] = 1
        return Mat(rows, backend)


def quotient_matrix(M: Mat, S: Mat) -> Mat | None:
    """Z with M S = S Z, or None if the partition is not equitable for M.

    Z = (S^T S)^-1 S^T M S; S^T S is diagonal with the cell sizes.
    """
    StMS = matmul(transpose(S), matmul(M, S))
    sizes = [sum(1 for x in S.col(k) if not x.is_zero()) for k in range(S.ncols)]
    bk = M.backend
    Z = Mat._wrap([[x * bk.scalar(sizes[k]).inv() for x in r] for k, r in enumerate(StMS.rows)], bk)
    if matmul(M, S) != matmul(S, Z):
        return None
    return Z


def quotient(S: MatSpace, pi: Partition) -> MatSpace | None:
    if pi.size != S.order:
        raise LinAlgError(f"partition of {pi.size} points for an algebra of order {S.order}")
    C = pi.characteristic(S.backend)
    Zs = []
    for M in S.basis:
        Z = quotient_matrix(M, C)
        if Z is None:
            return None
        Zs.append(Z)
    r = len(pi.cells)
    return MatSpace.span(Zs, (r, r), S.backend)


def induced(S: MatSpace, Y: Sequence[int]) -> tuple[MatSpace, BMVerdict]:
    """Restriction of S to the 0-based index list Y, with its Bose-Mesner verdict."""
    Y = list(Y)
    if not Y:
        raise LinAlgError("empty index set")
    k = len(Y)
    R = MatSpace.span([restrict(M, Y) for M in S.basis], (k, k), S.backend)
    return R, check_bose_mesner(R)


# ---------------------------------------------------------------------------
# duality maps


@dataclass
class DualityVerdict:
    image_closed: bool  # Theta maps S into the codomain
    product_to_schur: bool  # Theta(MN) = Theta(M) o Theta(N)
    schur_to_product: bool  # Theta(M o N) = n^-1 Theta(M) Theta(N)
    involution: bool  # Theta'(Theta(M)) = n M^T
    theta_I: bool  # Theta(I) = J
    theta_J: bool  # Theta(J) = nI
    self_dual: bool  # image equals S

    @property
    def passed(self) -> bool:
        return all(vars(self).values())


def check_duality(
    S: MatSpace,
    theta: Callable[[Mat], Mat],
    theta_back: Callable[[Mat], Mat] | None = None,
    codomain: MatSpace | None = None,
) -> DualityVerdict:
    """Certify Theta as a duality map on all basis pairs of S.

    ``theta_back`` is the map applied to the image (Theta_{A^T} for Theta_A);
    it defaults to ``theta``.  ``codomain`` defaults to S.
    """
    n = S.order
    bk = S.backend
    theta_back = theta_back or theta
    codomain = codomain or S
    basis = S.basis
    imgs = [theta(M) for M in basis]
    image_closed = all(T in codomain for T in imgs)
    if not image_closed:
        raise SchemeError("duality map sends a basis matrix outside the codomain")
    ninv = bk.scalar(n).inv()
    p2s = s2p = True
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            M, N = basis[a], basis[b]
            if p2s and theta(matmul(M, N)) != schur(imgs[a], imgs[b]):
                p2s = False
            if s2p and theta(schur(M, N)) != matmul(imgs[a], imgs[b]).scale(ninv):
                s2p = False
    inv = all(theta_back(T) == transpose(M).scale(n) for M, T in zip(basis, imgs))
    I = Mat.identity(n, bk)
    J = Mat.ones(n, backend=bk)
    tI = theta(I) == J
    tJ = theta(J) == I.scale(n)
    image = MatSpace.span(imgs, S.shape, bk)
    return DualityVerdict(image_closed, p2s, s2p, inv, tI, tJ, image == S)


# ---------------------------------------------------------------------------
# valency subset sums

EXHAUSTIVE_LIMIT = 24


def valency_subset_sum(valencies: Sequence[int], target: int) -> list[int] | None:
    """A sub-multiset of ``valencies`` summing to ``target`` (in input order), or None.

    Up to 24 values every subset sum is enumerated; beyond that the two halves
    are enumerated separately and matched (meet in the middle).
    """
    vals = [int(v) for v in valencies]
    if any(v <= 0 for v in vals):
        raise ValueError("valencies must be positive integers")
    if len(vals) <= EXHAUSTIVE_LIMIT:
        sums = _subset_sums(vals)
        idx = sums.get(target)
        return None if idx is None else [vals[i] for i in idx]
    half = len(vals) // 2
    lo, hi = vals[:half], vals[half:]
    left = _subset_sums(lo)
    right = _subset_sums(hi)
    for s in sorted(left):
        rest = right.get(target - s)
        if rest is not None:
            return [lo[i] for i in left[s]] + [hi[i] for i in rest]
    return None


def _subset_sums(vals: Sequence[int]) -> dict[int, tuple[int, ...]]:
    # every subset, grown one element at a time; each reachable sum keeps its first witness
    sums: dict[int, tuple[int, ...]] = {0: ()}
    for i, v in enumerate(vals):
        for s, idx in list(sums.items()):
            sums.setdefault(s + v, idx + (i,))
    return sums


def kasami_valencies(t: int) -> tuple[list[int], list[int]]:
    """The two valency lists of the formally dual pair from the Kasami codes."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    a = 2 ** (2 * t + 1) - 1
    first = [1, a, a, a, (2 ** (2 * t) - 1) * a, (2 ** (2 * t) - 1) * a]
    lo = 2 ** (t - 1) * (2**t - 1) * a
    hi = 2 ** (t - 1) * (2**t + 1) * a
    second = [1, a, lo, lo, hi, hi]
    return first, second


def kasami_target(t: int) -> int:
    return 2 ** (4 * t + 1)
