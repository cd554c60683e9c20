"""Bundled examples: Jones pairs, spin models and type-II matrices, built exactly.

The same matrices ship as text files under ``jonesbm/data`` (see ``data_path``);
the test suite checks that files and builders agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .linalg import Mat, matmul, schur_inverse
from .scalar import Cyc, sqrt_int, zeta


def circulant(v) -> Mat:
    """circ(v)_ij = v[(j - i) mod n]."""
    n = len(v)
    return Mat([[v[(j - i) % n] for j in range(n)] for i in range(n)])


def dft(n: int) -> Mat:
    w = zeta(n)
    return Mat([[w ** (j * k) for k in range(n)] for j in range(n)])


def potts_raw() -> Mat:
    i = zeta(4)
    return Mat([[1, i], [i, 1]])


def potts2() -> Mat:
    """zeta_16^-1 [[1, i], [i, 1]]: a spin model for d = sqrt(2)."""
    return potts_raw().scale(zeta(16) ** 15)


@dataclass(frozen=True)
class PairExample:
    name: str
    A: Mat
    B: Mat
    note: str


def _twist(A: Mat, diag) -> Mat:
    """D A D^-1 for the diagonal matrix with the given entries."""
    D = Mat.diag(diag)
    Dinv = Mat.diag([x.inv() for x in diag])
    return matmul(matmul(D, A), Dinv)


def twist_diagonal(n: int) -> list:
    """The diagonal (k + 1) zeta_8^k, k = 0..n-1, used for the gauge-twisted variants."""
    return [Cyc.rational(k + 1) * zeta(8) ** k for k in range(n)]


def jones_pairs() -> list[PairExample]:
    """Invertible Jones pairs with A symmetric."""
    z3, z8 = zeta(3), zeta(8)
    W = potts2()
    out = [
        PairExample("trivial", Mat([[1]]), Mat([[1]]), "n = 1"),
        PairExample("potts2", W.scale(sqrt_int(2).inv()), schur_inverse(W), "(W/d, Sinv W) for the n = 2 spin model"),
        PairExample(
            "circ3",
            circulant([1, z3, z3]).scale(zeta(12) / sqrt_int(3)),
            circulant([1, z3, 1]),
            "n = 3, B not symmetric",
        ),
        PairExample(
            "circ4",
            circulant([1, z8**3, z8**4, z8**3]).scale(Cyc.rational(1) / 2),
            circulant([1, z8**7, 1, z8**3]),
            "n = 4, B not symmetric",
        ),
        PairExample(
            "potts4",
            Mat([[-1 if i == j else 1 for j in range(4)] for i in range(4)]).scale(Cyc.rational(-1) / 2),
            Mat([[-1 if i == j else 1 for j in range(4)] for i in range(4)]),
            "(W/-2, Sinv W) for W = J - 2I",
        ),
    ]
    return out


def twisted_pairs() -> list[PairExample]:
    """(D A D^-1, B) for each bundled pair: odd-gauge equivalent, A no longer symmetric (n > 1)."""
    return [
        PairExample(p.name + "_twisted", _twist(p.A, twist_diagonal(p.A.n)), p.B, "gauge twist of " + p.name)
        for p in jones_pairs()
    ]


def type2_examples() -> dict[str, Mat]:
    return {"dft4": dft(4), "dft4_twisted": _twist(dft(4), twist_diagonal(4))}


def spin_models() -> dict[str, Mat]:
    """Type-II matrices W with W in N_W; some multiple cW satisfies the star-triangle relation."""
    return {"potts2": potts_raw(), "potts4": Mat([[-1 if i == j else 1 for j in range(4)] for i in range(4)])}


def strict_spin_models() -> dict[str, Mat]:
    """Spin models as they stand, with no rescaling (d = sqrt(2) and d = 2 respectively)."""
    return {"potts2_strict": potts2(), "potts4": spin_models()["potts4"]}


def non_type2() -> dict[str, Mat]:
    return {"ones2": Mat([[1, 1], [1, 1]])}


def corpus_files() -> dict[str, Mat]:
    """File name -> matrix for everything shipped under jonesbm/data."""
    files: dict[str, Mat] = {}
    for p in jones_pairs() + twisted_pairs():
        files[f"{p.name}_A.mat"] = p.A
        files[f"{p.name}_B.mat"] = p.B
    for name, M in type2_examples().items():
        files[f"{name}.mat"] = M
    for name, M in {**spin_models(), **strict_spin_models()}.items():
        files[f"{name}.mat"] = M
    for name, M in non_type2().items():
        files[f"{name}.mat"] = M
    return files


def data_path(name: str = "") -> Path:
    base = Path(str(resources.files("jonesbm") / "data"))
    return base / name if name else base
