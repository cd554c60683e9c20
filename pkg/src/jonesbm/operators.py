"""Words in the operators X_C (left multiplication) and D_C (Schur multiplication).

A word is a sequence of atoms applied right-to-left, so ``[X(A), D(B), X(A)]``
is the operator M -> A (B o (A M)).  Two words are equal as operators iff they
agree on every matrix unit E_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .linalg import LinAlgError, Mat, matmul, schur, schur_inverse, transpose


@dataclass(frozen=True, eq=False)
class Atom:
    kind: str  # "X" or "D"
    C: Mat

    def __call__(self, M: Mat) -> Mat:
        if self.C.shape != M.shape:
            raise LinAlgError(f"operator of order {self.C.nrows} applied to a {M.shape} matrix")
        return matmul(self.C, M) if self.kind == "X" else schur(self.C, M)

    def transpose(self) -> Atom:
        # X_C^T = X_{C^T} and D_C^T = D_C for the form tr(M^T N)
        return Atom("X", transpose(self.C)) if self.kind == "X" else self

    def __repr__(self):
        return f"{self.kind}({self.C.nrows}x{self.C.ncols})"


def X(C: Mat) -> Atom:
    return Atom("X", C)


def D(C: Mat) -> Atom:
    return Atom("D", C)


OpExpr = tuple  # tuple[Atom, ...]


def word(*atoms: Atom) -> OpExpr:
    return tuple(atoms)


def order_of(E: OpExpr) -> int:
    orders = {a.C.nrows for a in E}
    if len(orders) != 1:
        raise LinAlgError("atoms of one word must share an order")
    return orders.pop()


def apply(E: OpExpr, M: Mat) -> Mat:
    """Apply the word to M, rightmost atom first."""
    for atom in reversed(E):
        M = atom(M)
    return M


def op_transpose(E: OpExpr) -> OpExpr:
    return tuple(a.transpose() for a in reversed(E))


def apply_unit(E: OpExpr, i: int, j: int) -> list:
    """Column j of apply(E, E_ij); every X/D word keeps E_ij supported on column j."""
    C0 = E[0].C
    n = C0.nrows
    zero, one = C0.backend.zero(), C0.backend.one()
    v = [zero] * n
    v[i] = one
    for atom in reversed(E):
        C = atom.C
        if atom.kind == "D":
            v = [C[k, j] * x if not x.is_zero() else x for k, x in enumerate(v)]
        else:
            nz = [(k, x) for k, x in enumerate(v) if not x.is_zero()]
            out = []
            for r in C.rows:
                acc = zero
                for k, x in nz:
                    acc = acc + r[k] * x
                out.append(acc)
            v = out
    return v


def _unit_columns(E: OpExpr, n: int):
    for i in range(n):
        for j in range(n):
            yield i, j, apply_unit(E, i, j)


def op_equal(E1: OpExpr, E2: OpExpr) -> bool:
    """Decide E1 == E2 as operators on n x n matrices via the n^2 matrix units."""
    n = order_of(E1)
    if order_of(E2) != n:
        return False
    return all(apply_unit(E1, i, j) == apply_unit(E2, i, j) for i in range(n) for j in range(n))


def op_equal_scaled(E1: OpExpr, E2: OpExpr, scalars) -> list[bool]:
    """For each c in ``scalars``, decide E1 == c E2; each word is applied to the units once."""
    n = order_of(E1)
    bk = E1[0].C.backend
    scalars = [bk.scalar(c) for c in scalars]
    ok = [order_of(E2) == n] * len(scalars)
    for i in range(n):
        for j in range(n):
            if not any(ok):
                return ok
            L, R = apply_unit(E1, i, j), apply_unit(E2, i, j)
            ok = [f and all(x == c * y for x, y in zip(L, R)) for f, c in zip(ok, scalars)]
    return ok


def is_schur_operator(E: OpExpr) -> Mat | None:
    """If E acts as D_S for some S, return S; otherwise None."""
    n = order_of(E)
    bk = E[0].C.backend
    S = [[None] * n for _ in range(n)]
    for i, j, col in _unit_columns(E, n):
        if any(not x.is_zero() for p, x in enumerate(col) if p != i):
            return None
        S[i][j] = col[i]
    return Mat(S, bk)


def exchange_check(A: Mat, B: Mat, C: Mat, Q: Mat, R: Mat, S: Mat) -> tuple[bool, bool]:
    """Both sides of the exchange equivalence.

    Returns (X_A D_B X_C == D_Q X_R D_S, X_A D_C X_B == D_R X_Q D_{S^T}); the two
    values always coincide.
    """
    lhs = op_equal(word(X(A), D(B), X(C)), word(D(Q), X(R), D(S)))
    rhs = op_equal(word(X(A), D(C), X(B)), word(D(R), X(Q), D(transpose(S))))
    return lhs, rhs


class ThetaIdentities(NamedTuple):
    """The five equivalent descriptions of S = Theta_{A,B}(R)."""

    eigen: bool  # R in N_{A,B} and S = Theta_{A,B}(R)
    xdx_rba: bool  # X_R D_B X_A = D_B X_A D_S
    xdx_rab: bool  # X_R D_A X_B = D_A X_B D_{S^T}
    dxd_dual: bool  # D_{B^T} X_{B^(-T)} D_{nR} = X_{S^T} D_{A^(-T)} X_{A^T}
    dxd_dual_t: bool  # D_{A^(-T)} X_{A^T} D_{nR^T} = X_S D_{B^T} X_{B^(-T)}

    def all_equal(self) -> bool:
        return len(set(self)) == 1


def theta_identities(A: Mat, B: Mat, R: Mat, S: Mat) -> ThetaIdentities:
    """Evaluate the five conditions for type-II A, B (B^(-T) is the transposed Schur inverse)."""
    from .nomura import eigenvalue_table

    n = A.n
    sA_T = transpose(schur_inverse(A))
    sB_T = transpose(schur_inverse(B))
    table = eigenvalue_table(R, A, B)
    eigen = table is not None and table == S
    b = op_equal(word(X(R), D(B), X(A)), word(D(B), X(A), D(S)))
    c = op_equal(word(X(R), D(A), X(B)), word(D(A), X(B), D(transpose(S))))
    d = op_equal(word(D(transpose(B)), X(sB_T), D(R.scale(n))), word(X(transpose(S)), D(sA_T), X(transpose(A))))
    e = op_equal(word(D(sA_T), X(transpose(A)), D(transpose(R).scale(n))), word(X(S), D(transpose(B)), X(sB_T)))
    return ThetaIdentities(eigen, b, c, d, e)
