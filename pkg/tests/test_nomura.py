from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jonesbm.corpus import dft, jones_pairs, potts_raw, strict_spin_models, twisted_pairs, type2_examples
from jonesbm.linalg import Mat, is_symmetric, matmul, schur, schur_inverse, transpose
from jonesbm.nomura import (
    NomuraError,
    check_four_weight,
    check_jones_pair,
    check_spin_model,
    default_d,
    eigenvalue_table,
    four_weight_from_pair,
    in_nomura,
    nomura,
    nomura_single,
    normalizing_scalar_squared,
    symmetrize_gauge,
)
from jonesbm.scalar import Cyc, sqrt_exact, sqrt_int, zeta

ROOTS = [1, -1, zeta(3), zeta(4), zeta(8), zeta(8) ** 3, zeta(3) ** 2, -zeta(4)]


def kron(A: Mat, B: Mat) -> Mat:
    n, m = A.n, B.n
    return Mat([[A[i // m, j // m] * B[i % m, j % m] for j in range(n * m)] for i in range(n * m)])


def hadamard_like():
    H = Mat([[1, 1], [1, -1]])
    return {"dft2": dft(2), "dft3": dft(3), "dft4": dft(4), "dft5": dft(5), "H2xH2": kron(H, H), "dft2xdft3": kron(dft(2), dft(3))}


@pytest.mark.parametrize("name,A", sorted(hadamard_like().items()))
def test_eigenbasis_matches_direct(name, A):
    N1 = nomura_single(A)
    N2 = nomura_single(A, method="direct")
    assert N1.space == N2.space
    for M in N1.basis:
        assert N2.theta(M) == N1.theta(M)


@pytest.mark.parametrize("name,A", sorted(hadamard_like().items()))
def test_nomura_of_character_table_is_group_algebra(name, A):
    # for the character table of an abelian group of order n, N_A has dimension n
    N = nomura_single(A)
    assert N.dim == A.n
    assert Mat.identity(A.n) in N and Mat.ones(A.n) in N


def test_pair_algebras_match_direct():
    for p in jones_pairs() + twisted_pairs():
        assert nomura(p.A, p.B).space == nomura(p.A, p.B, method="direct").space


def test_theta_is_eigenvalue_table():
    A = dft(4)
    sA = schur_inverse(A)
    N = nomura_single(A)
    for M in N.basis:
        T = N.theta(M)
        for i in range(4):
            for j in range(4):
                y = [A[k, i] * sA[k, j] for k in range(4)]
                My = [sum((M[r, k] * y[k] for k in range(4)), Cyc.rational(0)) for r in range(4)]
                assert My == [T[i, j] * x for x in y]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(hadamard_like())), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_theta_linear_and_preimage(name, coords):
    A = hadamard_like()[name]
    N = nomura_single(A)
    M = N.space.combine(coords[: N.dim])
    T = N.theta(M)
    assert T == eigenvalue_table(M, A, schur_inverse(A))
    assert N.preimage(T) == M


def test_duality_identities_on_dft():
    A = dft(4)
    N, Nt = nomura_single(A), nomura_single(transpose(A))
    n = 4
    for M in N.basis:
        for P in N.basis:
            assert N.theta(matmul(M, P)) == schur(N.theta(M), N.theta(P))
            assert N.theta(schur(M, P)) == matmul(N.theta(M), N.theta(P)).scale(Cyc.rational(1) / n)
        assert Nt.theta(N.theta(M)) == transpose(M).scale(n)


def test_preconditions_raise():
    with pytest.raises(NomuraError) as exc:
        nomura(dft(2), Mat([[1, 0], [1, 1]]))
    assert exc.value.certificate == ("zero-entry", 0, 1)
    with pytest.raises(NomuraError):
        nomura(Mat([[1, 1], [1, 1]]), Mat.ones(2))
    assert not in_nomura(Mat([[0, 1], [0, 0]]), dft(2), schur_inverse(dft(2)))


def test_corpus_pairs_are_invertible_jones_pairs():
    for p in jones_pairs() + twisted_pairs():
        v = check_jones_pair(p.A, p.B)
        assert v.invertible and v.routes_agree, p.name


def test_type2_corpus_and_spin_models():
    for name, W in type2_examples().items():
        assert schur(W, schur_inverse(W)) == Mat.ones(W.n), name
    for name, W in strict_spin_models().items():
        v = check_spin_model(W)
        assert v.is_spin_model and v.routes_agree, name


def test_potts2_is_spin_model_only_up_to_scalar():
    W = potts_raw()
    v = check_spin_model(W)
    assert v.up_to_scalar and not v.is_spin_model and v.routes_agree
    assert v.ratio == 1 + zeta(4)
    d = sqrt_int(2)
    c = sqrt_exact(normalizing_scalar_squared(v, d))
    w = check_spin_model(W.scale(c), d)
    assert w.is_spin_model and str(d) in w.passing_d


def test_four_weight_from_pair():
    p = jones_pairs()[1]
    d = default_d(2)
    v = check_four_weight(*four_weight_from_pair(p.A, p.B, d), d)
    assert v.passed
    with pytest.raises(ValueError):
        check_four_weight(p.A, p.A, p.A, p.A, 3)


def test_symmetrize_gauge_recovers_pairs():
    for p, q in zip(jones_pairs(), twisted_pairs()):
        D, Asym = symmetrize_gauge(q.A)
        assert is_symmetric(Asym)
        assert nomura_single(Asym).space == nomura_single(p.A).space
        assert check_jones_pair(Asym, q.B).is_jones_pair


# operator route vs summation route on random candidates


@st.composite
def candidate_pairs(draw):
    pairs = [p for p in jones_pairs() + twisted_pairs() if p.A.n <= 3]
    p = draw(st.sampled_from(pairs))
    A, B = p.A, p.B
    n = A.n
    which = draw(st.sampled_from(["none", "A", "B", "both"]))
    f = draw(st.sampled_from([2, -1, zeta(3), zeta(4), 1]))
    i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
    bump = Mat([[f if (a, b) == (i, j) else 1 for b in range(n)] for a in range(n)])
    if which in ("A", "both"):
        A = schur(A, bump)
    if which in ("B", "both"):
        B = schur(B, bump)
    return A, B


@st.composite
def random_type2_pairs(draw):
    n = draw(st.sampled_from([2, 3]))
    entries = st.sampled_from(ROOTS)
    W = Mat([[draw(entries) for _ in range(n)] for _ in range(n)])
    V = Mat([[draw(entries) for _ in range(n)] for _ in range(n)])
    scale = draw(st.sampled_from([1, sqrt_int(n).inv(), -sqrt_int(n).inv(), zeta(8)]))
    return W.scale(scale), V


@settings(max_examples=150, deadline=None)
@given(st.one_of(candidate_pairs(), random_type2_pairs()))
def test_jones_routes_agree(pair):
    A, B = pair
    v = check_jones_pair(A, B)
    assert v.routes_agree


def _circ3():
    z = zeta(3)
    return Mat([[1 if a == b else z for b in range(3)] for a in range(3)])


@lru_cache(maxsize=None)
def _normalised_bases():
    # (W, c) with cW a spin model, c read off from the constant star-triangle ratio
    out = []
    for W in (potts_raw(), _circ3(), Mat([[-1 if a == b else 1 for b in range(4)] for a in range(4)])):
        d = default_d(W.n)
        out.append((W, sqrt_exact(normalizing_scalar_squared(check_spin_model(W), d))))
    return out


@st.composite
def spin_candidates(draw):
    kind = draw(st.sampled_from(["known", "perturbed", "random"]))
    if kind == "random":
        n = draw(st.sampled_from([2, 3]))
        entries = st.sampled_from(ROOTS)
        vals = {}
        for a in range(n):
            for b in range(a, n):
                vals[a, b] = vals[b, a] = draw(entries)
        W = Mat([[vals[a, b] for b in range(n)] for a in range(n)])
    else:
        W, c = draw(st.sampled_from(_normalised_bases()))
        if draw(st.booleans()):
            return W.scale(c * draw(st.sampled_from([1, -1])))
        if kind == "perturbed":
            n = W.n
            i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
            f = draw(st.sampled_from([zeta(3), -1, zeta(4)]))
            W = Mat([[W[a, b] * (f if {a, b} == {i, j} else 1) for b in range(n)] for a in range(n)])
    return W.scale(draw(st.sampled_from([1, zeta(16) ** 15, zeta(16), zeta(12), zeta(12) ** 11, -1, zeta(4)])))


@settings(max_examples=150, deadline=None)
@given(spin_candidates())
def test_spin_routes_agree(W):
    v = check_spin_model(W)
    assert v.routes_agree


def test_loop_variable_must_square_to_order():
    with pytest.raises(ValueError):
        check_spin_model(potts_raw(), 2)
    with pytest.raises(ValueError):
        check_jones_pair(dft(2), dft(2), 1)
