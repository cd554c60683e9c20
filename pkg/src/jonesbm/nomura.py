"""Nomura algebras N_{A,B}, duality maps Theta_{A,B}, and the pair/model predicates.

N_{A,B} is the set of matrices having every vector Y_ij = (A e_i) o (B e_j) as
an eigenvector; Theta_{A,B}(M)_ij is the eigenvalue on Y_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (
    LinAlgError,
    Mat,
    MatSpace,
    Echelon,
    inverse,
    is_schur_invertible,
    is_symmetric,
    is_type2,
    matmul,
    nullspace,
    nullspace_from_echelon,
    schur,
    schur_inverse,
    transpose,
)
from .operators import D, X, op_equal, op_equal_scaled, word
from .scalar import Cyc, sqrt_exact, sqrt_int


class NomuraError(ValueError):
    """A precondition of the Nomura construction failed; ``certificate`` says where."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


def _inverse_of(A: Mat) -> Mat:
    if is_type2(A):
        return transpose(schur_inverse(A)).scale(Cyc.rational(1) / A.n if A.backend.exact else 1 / A.n)
    return inverse(A)


def _check_pre(A: Mat, B: Mat):
    if A.shape != B.shape or not A.is_square():
        raise NomuraError(f"A and B must be square of one order, got {A.shape} and {B.shape}")
    for i, r in enumerate(B.rows):
        for j, x in enumerate(r):
            if x.is_zero():
                raise NomuraError(f"B has a zero entry at ({i + 1},{j + 1})", ("zero-entry", i, j))
    try:
        return _inverse_of(A)
    except LinAlgError as exc:
        raise NomuraError("A is singular", ("singular", None)) from exc


def eigen_vectors(A: Mat, B: Mat) -> dict[tuple[int, int], list]:
    """The n^2 vectors Y_ij = (A e_i) o (B e_j), keyed by 0-based (i, j)."""
    n = A.n
    return {(i, j): [A[k, i] * B[k, j] for k in range(n)] for i in range(n) for j in range(n)}


def eigenvalue_table(M: Mat, A: Mat, B: Mat) -> Mat | None:
    """Theta_{A,B}(M) if every Y_ij is an eigenvector of M, else None.

    Each eigenvalue is read off at the first nonzero coordinate of Y_ij
    (coordinate 1 whenever A and B have no zero entries).
    """
    n = A.n
    if M.shape != A.shape:
        raise LinAlgError(f"order mismatch: {M.shape} vs {A.shape}")
    theta = [[None] * n for _ in range(n)]
    for j in range(n):
        # columns of P_j = diag(B e_j) A are the Y_ij
        Pj = Mat._wrap([[B[k, j] * A[k, i] for i in range(n)] for k in range(n)], A.backend)
        MP = matmul(M, Pj)
        for i in range(n):
            y = [Pj[k, i] for k in range(n)]
            z = [MP[k, i] for k in range(n)]
            r = next((k for k in range(n) if not y[k].is_zero()), None)
            if r is None:
                return None
            lam = z[r] / y[r]
            if any(not (z[k] - lam * y[k]).is_zero() for k in range(n)):
                return None
            theta[i][j] = lam
    return Mat._wrap(theta, A.backend)


def theta(A: Mat, B: Mat, M: Mat) -> Mat:
    """Theta_{A,B}(M); raises if M is not in N_{A,B}."""
    t = eigenvalue_table(M, A, B)
    if t is None:
        raise NomuraError("matrix is not in the Nomura algebra of the pair")
    return t


def theta_single(A: Mat, M: Mat) -> Mat:
    """Theta_A(M) = Theta_{A, Sinv(A)}(M)."""
    return theta(A, schur_inverse(A), M)


@dataclass
class NomuraResult:
    """N_{A,B} with its canonical basis and Theta_{A,B} on that basis."""

    A: Mat
    B: Mat
    space: MatSpace
    thetas: list[Mat]
    method: str = "eigenbasis"

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def basis(self) -> list[Mat]:
        return self.space.basis

    @property
    def vectors(self) -> dict[tuple[int, int], list]:
        return eigen_vectors(self.A, self.B)

    def __contains__(self, M: Mat) -> bool:
        return self.space.member(M)

    def theta(self, M: Mat) -> Mat:
        """Theta_{A,B}(M) by linearity from the basis; raises if M is not in the space."""
        coords = self.space.coordinates(M)
        if coords is None:
            raise NomuraError("matrix is not in the Nomura algebra")
        bk = self.A.backend
        acc = Mat.zeros(self.n, backend=bk)
        for c, T in zip(coords, self.thetas):
            if not c.is_zero():
                acc = acc + T.scale(c)
        return acc

    def image(self) -> MatSpace:
        """N'_{A,B}, the image of Theta_{A,B}."""
        return MatSpace.span(self.thetas, self.A.shape, self.A.backend)

    def preimage(self, T: Mat) -> Mat | None:
        """The unique M in the space with Theta(M) = T, or None if T is not in the image."""
        img = self.image()
        coords = img.coordinates(T)
        if coords is None:
            return None
        # express T in the theta-images of the basis: solve sum c_k thetas[k] = T
        from .linalg import solve

        cols = [Tk.flat() for Tk in self.thetas]
        rows = [[cols[k][p] for k in range(len(cols))] for p in range(len(cols[0]))]
        sol = solve(rows, T.flat(), self.A.backend)
        if sol is None:
            return None
        acc = Mat.zeros(self.n, backend=self.A.backend)
        for c, Bk in zip(sol, self.basis):
            if not c.is_zero():
                acc = acc + Bk.scale(c)
        return acc


def _finish(A: Mat, B: Mat, mats: list[Mat], method: str) -> NomuraResult:
    space = MatSpace.span(mats, A.shape, A.backend)
    thetas = []
    for M in space.basis:
        t = eigenvalue_table(M, A, B)
        if t is None:
            raise AssertionError("computed basis matrix fails the eigenvector test")
        thetas.append(t)
    return NomuraResult(A, B, space, thetas, method)


def nomura(A: Mat, B: Mat, method: str = "eigenbasis") -> NomuraResult:
    """Compute N_{A,B} (A invertible, B without zero entries).

    ``eigenbasis`` writes M = P_1 diag(lam) P_1^{-1} with P_j = diag(B e_j) A and
    solves the linear conditions on lam making P_j^{-1} M P_j diagonal for every
    other j.  ``direct`` solves for the n^2 entries of M from the eigenvector
    conditions (M Y)_k Y_r - (M Y)_r Y_k = 0 and is only practical for small n.
    """
    Ainv = _check_pre(A, B)
    if method == "eigenbasis":
        return _nomura_eigenbasis(A, B, Ainv)
    if method == "direct":
        return _nomura_direct(A, B)
    raise ValueError(f"unknown method {method!r}")


def _nomura_eigenbasis(A: Mat, B: Mat, Ainv: Mat) -> NomuraResult:
    n = A.n
    bk = A.backend
    ech = Echelon(n, bk)
    for j in range(1, n):
        # E_j = diag(B e_1 / B e_j); U = A^-1 E_j A, V = A^-1 E_j^-1 A; need U diag(lam) V diagonal
        e = [B[k, 0] / B[k, j] for k in range(n)]
        U = matmul(Ainv, Mat._wrap([[e[r] * A[r, c] for c in range(n)] for r in range(n)], bk))
        V = matmul(Ainv, Mat._wrap([[A[r, c] / e[r] for c in range(n)] for r in range(n)], bk))
        for p in range(n):
            for q in range(n):
                if p != q:
                    ech.add([U[p, k] * V[k, q] for k in range(n)])
                    if ech.full():
                        break
            if ech.full():
                break
        if ech.full():
            break
    lams = nullspace_from_echelon(ech)
    P1 = Mat._wrap([[B[k, 0] * A[k, i] for i in range(n)] for k in range(n)], bk)
    P1inv = Mat._wrap([[Ainv[i, k] / B[k, 0] for k in range(n)] for i in range(n)], bk)
    mats = [matmul(matmul(P1, Mat.diag(lam, bk)), P1inv) for lam in lams]
    return _finish(A, B, mats, "eigenbasis")


def _nomura_direct(A: Mat, B: Mat) -> NomuraResult:
    n = A.n
    bk = A.backend
    Y = eigen_vectors(A, B)
    rows = []
    zero = bk.zero()
    for i in range(n):
        for j in range(n):
            y = Y[i, j]
            r = next(k for k in range(n) if not y[k].is_zero())
            for k in range(n):
                if k == r:
                    continue
                row = [zero] * (n * n)
                # (M y)_k y_r - (M y)_r y_k, unknown M_ab at index a*n + b
                for b in range(n):
                    row[k * n + b] = row[k * n + b] + y[b] * y[r]
                    row[r * n + b] = row[r * n + b] - y[b] * y[k]
                rows.append(row)
    vecs = nullspace(rows, n * n, bk)
    mats = [Mat._wrap([v[a * n:(a + 1) * n] for a in range(n)], bk) for v in vecs]
    return _finish(A, B, mats, "direct")


def nomura_single(A: Mat, method: str = "eigenbasis") -> NomuraResult:
    """N_A = N_{A, Sinv(A)} for a type-II matrix A."""
    if not is_type2(A):
        raise NomuraError("A is not a type-II matrix", ("not-type-II", None))
    return nomura(A, schur_inverse(A), method)


def in_nomura(M: Mat, A: Mat, B: Mat) -> bool:
    """Membership M in N_{A,B} without computing the whole algebra."""
    return eigenvalue_table(M, A, B) is not None


# ---------------------------------------------------------------------------
# predicates


def default_d(n: int, backend=None):
    """The positive square root of n in the matrix backend."""
    if backend is None or backend.exact:
        return sqrt_int(n)
    return backend.scalar(n**0.5)


def _loop_variable(n: int, bk, d):
    d = bk.scalar(default_d(n, bk) if d is None else d)
    if not (d * d - n).is_zero():
        raise ValueError(f"d^2 must equal the order n = {n}")
    return d


@dataclass
class FourWeightVerdict:
    d: object
    inverse_relations: bool  # W3 = Sinv(W1)^T and W2 = Sinv(W4)^T
    type2_relations: bool  # W1 W3 = nI and W2 W4 = nI
    star_triangle: bool  # sum_h (W1)_kh (W1)_hi (W4)_hj = d (W4)_ij (W1)_ki (W4)_kj
    star_triangle_t: bool  # the transposed relation

    @property
    def passed(self) -> bool:
        return self.inverse_relations and self.type2_relations and self.star_triangle and self.star_triangle_t


class StarTerms:
    """Both sides of the star-triangle relations by direct summation over h.

    ``eq3[k,i,j]`` holds (sum_h (W1)_kh (W1)_hi (W4)_hj, (W4)_ij (W1)_ki (W4)_kj)
    and ``eq4`` the transposed relation; the right-hand sides omit the factor d,
    so one table serves both signs of d.  Independent of the operator route.
    """

    def __init__(self, W1: Mat, W4: Mat):
        n = W1.n
        zero = W1.backend.zero()
        self.eq3, self.eq4 = [], []
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    lhs = sum((W1[k, h] * W1[h, i] * W4[h, j] for h in range(n)), zero)
                    self.eq3.append((lhs, W4[i, j] * W1[k, i] * W4[k, j]))
                    lhs = sum((W1[h, k] * W1[i, h] * W4[j, h] for h in range(n)), zero)
                    self.eq4.append((lhs, W4[j, i] * W1[i, k] * W4[j, k]))

    @staticmethod
    def _holds(terms, d) -> bool:
        return all((lhs - d * rhs).is_zero() for lhs, rhs in terms)

    def holds(self, d) -> tuple[bool, bool]:
        return self._holds(self.eq3, d), self._holds(self.eq4, d)

    def constant_ratio(self):
        """lam if lhs = lam * rhs throughout both relations, else None."""
        lam = None
        for lhs, rhs in self.eq3 + self.eq4:
            if rhs.is_zero():
                if lhs.is_zero():
                    continue
                return None
            if lam is None:
                lam = lhs / rhs
            elif not (lhs - lam * rhs).is_zero():
                return None
        return lam


def check_four_weight(W1: Mat, W2: Mat, W3: Mat, W4: Mat, d) -> FourWeightVerdict:
    """Check the four displayed conditions of a four-weight spin model (W1, W2, W3, W4; d)."""
    n = W1.n
    bk = W1.backend
    d = bk.scalar(d)
    if not (d * d - n).is_zero():
        raise ValueError(f"d^2 must equal n = {n}")
    for W in (W2, W3, W4):
        if W.shape != W1.shape:
            raise LinAlgError("four-weight matrices must share one order")
    inv_rel = (
        is_schur_invertible(W1)
        and is_schur_invertible(W4)
        and W3 == transpose(schur_inverse(W1))
        and W2 == transpose(schur_inverse(W4))
    )
    nI = Mat.identity(n, bk).scale(n)
    t2 = matmul(W1, W3) == nI and matmul(W2, W4) == nI
    eq3, eq4 = StarTerms(W1, W4).holds(d)
    return FourWeightVerdict(d, inv_rel, t2, eq3, eq4)


def four_weight_from_pair(A: Mat, B: Mat, d) -> tuple[Mat, Mat, Mat, Mat]:
    """(W1, W2, W3, W4) = (dA, Sinv(B)^T, Sinv(dA)^T, B)."""
    W1 = A.scale(d)
    return W1, transpose(schur_inverse(B)), transpose(schur_inverse(W1)), B


@dataclass
class JonesVerdict:
    eq1: bool  # X_A D_B X_A = D_B X_A D_B
    eq2: bool  # X_A D_{B^T} X_A = D_{B^T} X_A D_{B^T}
    x_invertible: bool  # A invertible
    delta_invertible: bool  # B has no zero entries
    a_type2: bool
    b_type2: bool
    summation: dict = field(default_factory=dict)  # str(d) -> FourWeightVerdict

    @property
    def operator_route(self) -> bool:
        return self.eq1 and self.eq2

    @property
    def summation_route(self) -> bool:
        vals = [v.star_triangle and v.star_triangle_t for v in self.summation.values()]
        return bool(vals) and all(vals)

    @property
    def routes_agree(self) -> bool:
        return all((v.star_triangle and v.star_triangle_t) == self.operator_route for v in self.summation.values())

    @property
    def is_jones_pair(self) -> bool:
        return self.operator_route and self.x_invertible and self.delta_invertible

    @property
    def invertible(self) -> bool:
        return self.is_jones_pair and self.a_type2 and self.b_type2


def check_jones_pair(A: Mat, B: Mat, d=None) -> JonesVerdict:
    """Check (A, B) by operator identities and by the four-weight summations for both signs of d."""
    n = A.n
    bk = A.backend
    x_inv = True
    try:
        inverse(A)
    except LinAlgError:
        x_inv = False
    d_inv = is_schur_invertible(B)
    BT = transpose(B)
    eq1 = op_equal(word(X(A), D(B), X(A)), word(D(B), X(A), D(B)))
    eq2 = op_equal(word(X(A), D(BT), X(A)), word(D(BT), X(A), D(BT)))
    a2, b2 = is_type2(A), is_type2(B)
    verdict = JonesVerdict(eq1, eq2, x_inv, d_inv, a2, b2)
    d = _loop_variable(n, bk, d)
    if d_inv and is_schur_invertible(A):
        for dd in (d, -d):
            W = four_weight_from_pair(A, B, dd)
            verdict.summation[str(dd)] = check_four_weight(*W, dd)
    else:
        # summation route needs the Schur inverses; compare the star-triangle sums directly
        for dd in (d, -d):
            eq3, eq4 = StarTerms(A.scale(dd), B).holds(dd)
            verdict.summation[str(dd)] = FourWeightVerdict(dd, False, False, eq3, eq4)
    return verdict


@dataclass
class SpinVerdict:
    type2: bool
    symmetric: bool
    strict: dict = field(default_factory=dict)  # str(d) -> (summation bool, operator bool)
    in_own_nomura: bool = False  # W in N_W
    ratio_constant: bool = False  # summation route of the up-to-scalar test
    ratio: object = None  # lambda with sum = lambda * (rhs / d); cW is a spin model iff c^2 = d / lambda

    @property
    def is_spin_model(self) -> bool:
        return any(s and o for s, o in self.strict.values())

    @property
    def up_to_scalar(self) -> bool:
        return self.type2 and self.in_own_nomura

    @property
    def routes_agree(self) -> bool:
        strict_ok = all(s == o for s, o in self.strict.values())
        return strict_ok and (self.type2 and self.ratio_constant) == self.up_to_scalar

    @property
    def passing_d(self) -> list[str]:
        return [k for k, (s, o) in self.strict.items() if s and o]


def check_spin_model(W: Mat, d=None) -> SpinVerdict:
    """Spin-model test.

    Strictly: (W, W, Sinv W, Sinv W; d) is a four-weight spin model, tested for
    both signs of d by summation and by the Jones-pair operator identities of
    (W/d, Sinv W).  Up to a scalar: W is type-II and W lies in N_W, tested by
    eigenvectors and, independently, by the star-triangle ratio being constant.
    """
    n = W.n
    bk = W.backend
    d = _loop_variable(n, bk, d)
    t2 = is_type2(W)
    sym = is_symmetric(W)
    v = SpinVerdict(t2, sym)
    if not t2:
        return v
    Wi = schur_inverse(W)
    WiT = transpose(Wi)
    terms = StarTerms(W, Wi)
    # W3 = Sinv(W1)^T and W2 = Sinv(W4)^T reduce to W symmetric; type-II gives W1 W3 = nI
    signs = (d, -d)
    # (W/d, Sinv W) satisfies the Jones identities iff X_W D X_W = d D X_W D for D = Sinv W, Sinv W^T
    op1 = op_equal_scaled(word(X(W), D(Wi), X(W)), word(D(Wi), X(W), D(Wi)), signs)
    op2 = op_equal_scaled(word(X(W), D(WiT), X(W)), word(D(WiT), X(W), D(WiT)), signs)
    for dd, o1, o2 in zip(signs, op1, op2):
        eq3, eq4 = terms.holds(dd)
        v.strict[str(dd)] = (sym and eq3 and eq4, sym and o1 and o2)
    v.in_own_nomura = in_nomura(W, W, Wi)
    lam = terms.constant_ratio() if sym else None
    v.ratio_constant, v.ratio = lam is not None and not lam.is_zero(), lam
    return v


def normalizing_scalar_squared(verdict: SpinVerdict, d):
    """c^2 such that cW is a spin model with this d (from the constant star-triangle ratio)."""
    if verdict.ratio is None:
        return None
    return d / verdict.ratio


# ---------------------------------------------------------------------------
# odd gauge


def symmetrize_gauge(A: Mat) -> tuple[Mat, Mat] | None:
    """Find diagonal D with D A D^-1 symmetric; returns (D, D A D^-1) or None.

    Along the star tree rooted at index 1, d_1 = 1 and d_j^2 = A_1j / A_j1; the
    remaining pairs are then verified.  Only the squares d_j^2 enter the
    symmetry condition, so the sign of each root is immaterial.
    """
    n = A.n
    bk = A.backend
    if not is_type2(A):
        raise NomuraError("A is not a type-II matrix")
    ds = [bk.one()]
    for j in range(1, n):
        ratio = A[0, j] / A[j, 0]
        r = sqrt_exact(ratio)
        if r is None:
            return None
        ds.append(bk.scalar(r))
    for i in range(n):
        for j in range(i + 1, n):
            if not (ds[i] * ds[i] * A[i, j] - ds[j] * ds[j] * A[j, i]).is_zero():
                return None
    Dm = Mat.diag(ds, bk)
    Dinv = Mat.diag([x.inv() for x in ds], bk)
    Asym = matmul(matmul(Dm, A), Dinv)
    if not is_symmetric(Asym):
        return None
    return Dm, Asym
