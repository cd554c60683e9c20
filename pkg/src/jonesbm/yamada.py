"""Constructions attached to an invertible Jones pair (A, B) with A symmetric.

The pairing H -> K, the 4n x 4n matrices M(F, G, H) spanning the algebra B,
the type-II matrices W (order 2n) and V (order 4n), the duality map of V on
B, and the complementary space R with N_V = B + R.

Blocks of 4n x 4n matrices are numbered 1..4 in docstrings and 0..3 in code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Mat,
    MatSpace,
    block,
    block4,
    inverse,
    is_symmetric,
    matmul,
    nullspace,
    schur,
    schur_inverse,
    sub_block,
    transpose,
)
from .nomura import (
    NomuraError,
    NomuraResult,
    check_jones_pair,
    default_d,
    eigenvalue_table,
    nomura,
    nomura_single,
)
from .operators import D, X, is_schur_operator, word


class ClosureError(AssertionError):
    """A closed-form formula disagreed with raw arithmetic (invalid context or a bug)."""


class YamadaContext:
    """An invertible Jones pair with A symmetric, a choice of d, and its Nomura algebras."""

    def __init__(self, A: Mat, B: Mat, d=None, verify: bool = True):
        if not is_symmetric(A):
            raise NomuraError("A must be symmetric (apply symmetrize_gauge first)")
        self.A, self.B = A, B
        self.n = A.n
        self.backend = A.backend
        self.d = self.backend.scalar(default_d(self.n, self.backend) if d is None else d)
        if not (self.d * self.d - self.n).is_zero():
            raise ValueError(f"d^2 must equal n = {self.n}")
        if verify:
            v = check_jones_pair(A, B)
            if not v.invertible:
                raise NomuraError("(A, B) is not an invertible Jones pair", v)
        self.BT = transpose(B)
        self.sA = schur_inverse(A)
        self.sB = schur_inverse(B)
        self.Ainv = inverse(A)
        self.NA: NomuraResult = nomura_single(A)
        self.NAB: NomuraResult = nomura(A, B)
        self.NABT: NomuraResult = nomura(A, self.BT)

    # -- duality maps used by the displays ------------------------------------
    def theta_A(self, F: Mat) -> Mat:
        return self._theta(F, self.A, self.sA)

    def theta_AB(self, G: Mat) -> Mat:
        return self._theta(G, self.A, self.B)

    def theta_sB(self, F: Mat) -> Mat:
        """Theta_{Sinv B}(F) = Theta_{Sinv B, B}(F)."""
        return self._theta(F, self.sB, self.B)

    def theta_sBsA(self, G: Mat) -> Mat:
        return self._theta(G, self.sB, self.sA)

    @staticmethod
    def _theta(M: Mat, A: Mat, B: Mat) -> Mat:
        t = eigenvalue_table(M, A, B)
        if t is None:
            raise NomuraError("matrix is outside the Nomura algebra required here")
        return t

    @property
    def r(self) -> int:
        return self.NA.dim

    def zero(self) -> Mat:
        return Mat.zeros(self.n, backend=self.backend)


def pair_of(ctx: YamadaContext, H: Mat) -> Mat:
    """The unique K in (N_{A,B^T})^T with Theta_{A,B}(H) = Theta_{A,B^T}(K^T)^T."""
    if H not in ctx.NAB:
        raise NomuraError("H is not in N_{A,B}")
    Kt = ctx.NABT.preimage(transpose(ctx.theta_AB(H)))
    if Kt is None:
        raise NomuraError("Theta_{A,B}(H)^T is not in the image of Theta_{A,B^T}")
    return transpose(Kt)


def is_paired(ctx: YamadaContext, H: Mat, K: Mat) -> bool:
    t = eigenvalue_table(transpose(K), ctx.A, ctx.BT)
    return t is not None and transpose(t) == ctx.theta_AB(H)


@dataclass(frozen=True, eq=False)
class BMatrix:
    F: Mat
    G: Mat
    H: Mat
    K: Mat
    assembled: Mat

    def __eq__(self, other):
        if not isinstance(other, BMatrix):
            return NotImplemented
        return self.assembled == other.assembled

    __hash__ = None


def m_matrix(ctx: YamadaContext, F: Mat, G: Mat, H: Mat, check: bool = True) -> BMatrix:
    """M(F, G, H) with K paired with H."""
    if check:
        if F not in ctx.NA:
            raise NomuraError("F is not in N_A")
        if G not in ctx.NAB:
            raise NomuraError("G is not in N_{A,B}")
    K = pair_of(ctx, H)
    tF, tG = ctx.theta_A(F), ctx.theta_AB(G)
    tGt = transpose(ctx.theta_AB(transpose(G)))
    tsF = ctx.theta_sB(F)
    grid = [
        [tF + H, tF - H, tG, tG],
        [tF - H, tF + H, tG, tG],
        [tGt, tGt, tsF + K, tsF - K],
        [tGt, tGt, tsF - K, tsF + K],
    ]
    return BMatrix(F, G, H, K, block4(grid))


def bm_generators(ctx: YamadaContext) -> list[BMatrix]:
    """M(F,0,0), M(0,G,0), M(0,0,H) over the bases of N_A and N_{A,B}."""
    Z = ctx.zero()
    out = [m_matrix(ctx, F, Z, Z) for F in ctx.NA.basis]
    out += [m_matrix(ctx, Z, G, Z) for G in ctx.NAB.basis]
    out += [m_matrix(ctx, Z, Z, H) for H in ctx.NAB.basis]
    return out


def bm_space(ctx: YamadaContext) -> MatSpace:
    n4 = 4 * ctx.n
    return MatSpace.span([m.assembled for m in bm_generators(ctx)], (n4, n4), ctx.backend)


def bm_combination(ctx: YamadaContext, cF, cG, cH) -> BMatrix:
    """M(F, G, H) for F, G, H given by coordinates in the reduced bases."""
    F = ctx.NA.space.combine(cF)
    G = ctx.NAB.space.combine(cG)
    H = ctx.NAB.space.combine(cH)
    return m_matrix(ctx, F, G, H, check=False)


def bm_product(ctx: YamadaContext, M: BMatrix, M1: BMatrix, verify: bool = True) -> BMatrix:
    """M M1 = M(2n F o F1 + 2n G o G1, 2n F o G1 + 2n G o F1, 2 H H1)."""
    n2 = 2 * ctx.n
    F = (schur(M.F, M1.F) + schur(M.G, M1.G)).scale(n2)
    G = (schur(M.F, M1.G) + schur(M.G, M1.F)).scale(n2)
    H = matmul(M.H, M1.H).scale(2)
    out = m_matrix(ctx, F, G, H, check=False)
    if verify and out.assembled != matmul(M.assembled, M1.assembled):
        raise ClosureError("product formula disagrees with the 4n x 4n product")
    return out


def bm_schur(ctx: YamadaContext, M: BMatrix, M1: BMatrix, verify: bool = True) -> BMatrix:
    """M o M1 = M(F F1 + n^-1 Theta_A(H o H1)^T, G G1, Theta_A(F) o H1 + Theta_A(F1) o H)."""
    bk = ctx.backend
    ninv = bk.scalar(ctx.n).inv()
    F = matmul(M.F, M1.F) + transpose(ctx.theta_A(schur(M.H, M1.H))).scale(ninv)
    G = matmul(M.G, M1.G)
    H = schur(ctx.theta_A(M.F), M1.H) + schur(ctx.theta_A(M1.F), M.H)
    out = m_matrix(ctx, F, G, H, check=False)
    if verify and out.assembled != schur(M.assembled, M1.assembled):
        raise ClosureError("Schur formula disagrees with the 4n x 4n Schur product")
    return out


# ---------------------------------------------------------------------------
# W and V


def build_w(ctx_or_A, B: Mat | None = None) -> Mat:
    """W = [[A, Sinv B], [-A, Sinv B]] (order 2n)."""
    A, B = (ctx_or_A.A, ctx_or_A.B) if isinstance(ctx_or_A, YamadaContext) else (ctx_or_A, B)
    sB = schur_inverse(B)
    return block([[A, sB], [-A, sB]])


def build_v(ctx_or_A, B: Mat | None = None, d=None) -> Mat:
    """Yamada's symmetric V of order 4n; blocks dA, -dA, Sinv B and Sinv(B)^T."""
    if isinstance(ctx_or_A, YamadaContext):
        A, B, d = ctx_or_A.A, ctx_or_A.B, ctx_or_A.d
    else:
        A = ctx_or_A
        d = A.backend.scalar(default_d(A.n, A.backend) if d is None else d)
    dA = A.scale(d)
    sB = schur_inverse(B)
    sBT = transpose(sB)
    return block4([
        [dA, -dA, sB, sB],
        [-dA, dA, sB, sB],
        [sBT, sBT, dA, -dA],
        [sBT, sBT, -dA, dA],
    ])


def v_as_bm(ctx: YamadaContext) -> BMatrix:
    """V = M(0, A^-1, dA)."""
    return m_matrix(ctx, ctx.zero(), ctx.Ainv, ctx.A.scale(ctx.d))


def theta_v_readoff(ctx: YamadaContext, M: Mat, V: Mat | None = None) -> Mat | None:
    """Theta_V(M) by eigenvalue read-off on the 16n^2 vectors y = V e_r o Sinv(V) e_s."""
    V = build_v(ctx) if V is None else V
    return eigenvalue_table(M, V, schur_inverse(V))


def theta_v_on_bm(ctx: YamadaContext, M: BMatrix, route: str = "both", V: Mat | None = None) -> BMatrix:
    """Theta_V(M) for M in B.

    ``closed``: M(2 Fhat, 2H, 2n G^T) with Theta_A(Fhat) = n F^T.  ``readoff``:
    eigenvalues of M on the y-vectors.  ``both`` computes the two and raises
    ClosureError if they differ.
    """
    if route not in ("closed", "readoff", "both"):
        raise ValueError(f"unknown route {route!r}")
    out = None
    if route in ("closed", "both"):
        Fhat = ctx.NA.preimage(transpose(M.F).scale(ctx.n))
        if Fhat is None:
            raise ClosureError("n F^T is not in the image of Theta_A")
        out = m_matrix(ctx, Fhat.scale(2), M.H.scale(2), transpose(M.G).scale(2 * ctx.n), check=False)
    if route in ("readoff", "both"):
        T = theta_v_readoff(ctx, M.assembled, V)
        if T is None:
            raise ClosureError("M is not in N_V")
        if out is None:
            return _bm_from_assembled(ctx, T)
        if T != out.assembled:
            raise ClosureError("closed form of Theta_V disagrees with eigenvalue read-off")
    return out


def _bm_from_assembled(ctx: YamadaContext, T: Mat) -> BMatrix:
    # recover (F, G, H) from the blocks: (1,1)+(1,2) = 2 Theta_A(F), (1,1)-(1,2) = 2H
    n = ctx.n
    half = ctx.backend.scalar(2).inv()
    b11, b12, b13 = (sub_block(T, 0, j, n) for j in range(3))
    tF = (b11 + b12).scale(half)
    H = (b11 - b12).scale(half)
    F = ctx.NA.preimage(tF)
    G = ctx.NAB.preimage(b13)
    if F is None or G is None:
        raise ClosureError("matrix does not have the block form of B")
    M = m_matrix(ctx, F, G, H, check=False)
    if M.assembled != T:
        raise ClosureError("matrix does not have the block form of B")
    return M


# ---------------------------------------------------------------------------
# N_W, N_{W^T} and the subschemes


def nw_claimed(ctx: YamadaContext) -> MatSpace:
    """span of [[F+G, F-G], [F-G, F+G]] for F in N_A, G in N_{A,B}."""
    mats = [block([[F, F], [F, F]]) for F in ctx.NA.basis]
    mats += [block([[G, -G], [-G, G]]) for G in ctx.NAB.basis]
    return MatSpace.span(mats, (2 * ctx.n, 2 * ctx.n), ctx.backend)


def nwt_claimed(ctx: YamadaContext) -> MatSpace:
    """span of [[Theta_A(F), Theta_{A,B}(G)], [Theta_{Sinv B, Sinv A}(G), Theta_{Sinv B}(F)]]."""
    Z = ctx.zero()
    mats = [block([[ctx.theta_A(F), Z], [Z, ctx.theta_sB(F)]]) for F in ctx.NA.basis]
    mats += [block([[Z, ctx.theta_AB(G)], [ctx.theta_sBsA(G), Z]]) for G in ctx.NAB.basis]
    return MatSpace.span(mats, (2 * ctx.n, 2 * ctx.n), ctx.backend)


@dataclass
class NWReport:
    nw: MatSpace  # computed N_W
    nwt: MatSpace  # computed N_{W^T}
    nw_claimed: MatSpace
    nwt_claimed: MatSpace

    @property
    def nw_matches(self) -> bool:
        return self.nw == self.nw_claimed

    @property
    def nwt_matches(self) -> bool:
        return self.nwt == self.nwt_claimed


def nw_spaces(ctx: YamadaContext) -> NWReport:
    W = build_w(ctx)
    return NWReport(nomura_single(W).space, nomura_single(transpose(W)).space, nw_claimed(ctx), nwt_claimed(ctx))


def bm_subscheme(ctx: YamadaContext) -> MatSpace:
    """span{M(F, 0, H)} + span{M(0, I, 0)}, of dimension 2r + 1."""
    Z = ctx.zero()
    mats = [m_matrix(ctx, F, Z, Z).assembled for F in ctx.NA.basis]
    mats += [m_matrix(ctx, Z, Z, H).assembled for H in ctx.NAB.basis]
    mats.append(m_matrix(ctx, Z, Mat.identity(ctx.n, ctx.backend), Z).assembled)
    n4 = 4 * ctx.n
    return MatSpace.span(mats, (n4, n4), ctx.backend)


def nwt_subscheme(ctx: YamadaContext) -> MatSpace:
    """span{diag(Theta_A(F), Theta_{Sinv B}(F))} + span{[[0, J], [J, 0]]}, of dimension r + 1."""
    Z = ctx.zero()
    J = Mat.ones(ctx.n, backend=ctx.backend)
    mats = [block([[ctx.theta_A(F), Z], [Z, ctx.theta_sB(F)]]) for F in ctx.NA.basis]
    mats.append(block([[Z, J], [J, Z]]))
    return MatSpace.span(mats, (2 * ctx.n, 2 * ctx.n), ctx.backend)


def pi_cells(n: int) -> list[list[int]]:
    """Cells {i, n+i} of the partition of {0..2n-1} (0-based)."""
    return [[i, n + i] for i in range(n)]


def pi_prime_cells(n: int) -> list[list[int]]:
    """Cells of the partition of {0..4n-1} whose characteristic matrix is [[I,0],[I,0],[0,I],[0,I]]."""
    return [[i, n + i] for i in range(n)] + [[2 * n + i, 3 * n + i] for i in range(n)]


# ---------------------------------------------------------------------------
# the space R


def _composite_rows(P: Mat, Q: Mat, R: Mat, T: Mat, i: int, j: int) -> list[list]:
    """Coefficients of X_P D_Q X_N D_R X_T (E_ij) in the unknown entries of N.

    The output is supported on column j; row p of the returned list gives the
    (p, j) entry as a linear form in N (row-major).
    """
    n = P.n
    z = [R[b, j] * T[b, i] for b in range(n)]
    out = []
    for p in range(n):
        row = []
        for a in range(n):
            c = P[p, a] * Q[a, j]
            row.extend(c * zb for zb in z)
        out.append(row)
    return out


def r_composites(ctx: YamadaContext):
    """The two pairs of composite words, as (P, Q, R, T) with word X_P D_Q X_N D_R X_T."""
    A, B = ctx.A, ctx.B
    Binv = inverse(B)
    return (
        ((ctx.Ainv, ctx.sB, ctx.sA, Binv), (B, A, B, A)),
        ((ctx.BT, A, ctx.BT, A), (ctx.Ainv, transpose(ctx.sB), ctx.sA, transpose(Binv))),
    )


def r_block(N: Mat, N1: Mat) -> Mat:
    Z = Mat.zeros(N.n, backend=N.backend)
    return block4([[Z, Z, N, -N], [Z, Z, -N, N], [N1, -N1, Z, Z], [-N1, N1, Z, Z]])


def r_pairs(ctx: YamadaContext) -> list[tuple[Mat, Mat]]:
    """Basis of the solution space of (N, N1) for the two Schur-operator conditions."""
    n = ctx.n
    bk = ctx.backend
    zero = bk.zero()
    pad = [zero] * (n * n)
    rows = []
    for left, right in r_composites(ctx):
        for i in range(n):
            for j in range(n):
                L = _composite_rows(*left, i, j)
                Rr = _composite_rows(*right, i, j)
                for p in range(n):
                    if p == i:
                        rows.append(L[p] + [-x for x in Rr[p]])
                    else:
                        rows.append(L[p] + pad)
                        rows.append(pad + Rr[p])
    sols = nullspace(rows, 2 * n * n, bk)
    out = []
    for v in sols:
        N = Mat._wrap([v[a * n:(a + 1) * n] for a in range(n)], bk)
        N1 = Mat._wrap([v[n * n + a * n:n * n + (a + 1) * n] for a in range(n)], bk)
        out.append((N, N1))
    return out


def r_schur_matrices(ctx: YamadaContext, N: Mat, N1: Mat) -> tuple[Mat | None, Mat | None, Mat | None, Mat | None]:
    """S and S1 read off from each composite word via is_schur_operator."""
    out = []
    for left, right in r_composites(ctx):
        for (P, Q, R, T), M in ((left, N), (right, N1)):
            out.append(is_schur_operator(word(X(P), D(Q), X(M), D(R), X(T))))
    return tuple(out)


@dataclass
class RSpaceReport:
    n: int
    r: int
    space: MatSpace  # R
    dim_nv: int  # computed independently from N_V
    dim_bm_cap_r: int

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def decomposition_holds(self) -> bool:
        return self.dim_nv == 3 * self.r + self.dim and self.dim_bm_cap_r == 0

    @property
    def bounds_hold(self) -> bool:
        return 3 * self.r <= self.dim_nv <= 3 * self.r + self.n


def r_space(ctx: YamadaContext, nv: NomuraResult | None = None) -> RSpaceReport:
    pairs = r_pairs(ctx)
    n4 = 4 * ctx.n
    R = MatSpace.span([r_block(N, N1) for N, N1 in pairs], (n4, n4), ctx.backend)
    if nv is None:
        nv = nomura_single(build_v(ctx))
    bm = bm_space(ctx)
    return RSpaceReport(ctx.n, ctx.r, R, nv.dim, bm.intersection_dim(R))


def v_blocks_pair(V: Mat, n: int) -> tuple[Mat, Mat, Mat]:
    """(dA, Sinv B, Sinv(B)^T) read from the (1,1), (1,3), (3,1) blocks of V."""
    return sub_block(V, 0, 0, n), sub_block(V, 0, 2, n), sub_block(V, 2, 0, n)


__all__ = [
    "BMatrix",
    "ClosureError",
    "NWReport",
    "RSpaceReport",
    "YamadaContext",
    "bm_combination",
    "bm_generators",
    "bm_product",
    "bm_schur",
    "bm_space",
    "bm_subscheme",
    "build_v",
    "build_w",
    "is_paired",
    "m_matrix",
    "nw_spaces",
    "nwt_subscheme",
    "pair_of",
    "pi_cells",
    "pi_prime_cells",
    "r_pairs",
    "r_schur_matrices",
    "r_space",
    "theta_v_on_bm",
    "theta_v_readoff",
    "v_as_bm",
]
