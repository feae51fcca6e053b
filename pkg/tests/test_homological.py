import copy

import pytest

from stratkit.errors import HypothesisViolated, NotTruncatedModule
from stratkit.homological import (
    AtLeast,
    embedding_certificate,
    ext_dims,
    ext_module,
    global_dimension,
    projective_resolution,
    right_flat_dimension,
    segment_modules,
    spectral_corner_check,
    tor_dims,
)
from stratkit.linalg import Subspace
from stratkit.modules import direct_sum, inflate, isomorphism, regular_projective, twisted_dual
from stratkit.radical import radical_and_simples
from stratkit.stratification import check_hypotheses, standard_module, truncate

from conftest import load
from oracles import dual_numbers_ext, ext1_by_arrows


def simples(A):
    return radical_and_simples(A).simples


def test_resolution_of_Sf(sl2):
    A = sl2[2]
    Se, Sf = simples(A)
    res = projective_resolution(A, Sf, 3)
    assert res.verify() == []
    assert res.terms[0].vertices == ["f"] and res.terms[1].vertices == ["e"]
    # first syzygy = rad Af = K c, which is S_e
    P0 = res.terms[0].module
    K = Subspace([[row[j] for row in res.maps[1]] for j in range(res.terms[1].module.dim)], P0.dim)
    assert K.dim == 1
    syz = P0.restrict(K)
    assert isomorphism(syz, Se).is_iso()


def test_projective_resolution_length_zero(sl2):
    A = sl2[2]
    for x in A.vertices:
        res = projective_resolution(A, regular_projective(A, x), 4)
        assert res.length() == 0 and res.verify() == []


def test_Se_resolution_does_not_stop(sl2):
    A = sl2[2]
    res = projective_resolution(A, simples(A)[0], 6)
    assert len(res.terms) == 8 and all(t.vertices for t in res.terms)
    assert res.verify() == [] and res.minimal


def test_tampered_resolution_is_rejected(sl2):
    A = sl2[2]
    res = projective_resolution(A, simples(A)[0], 2)
    bad = copy.deepcopy(res)
    bad.maps[1] = [[0] * len(r) for r in bad.maps[1]]
    assert bad.verify()


def test_ext_tables(sl2):
    A = sl2[2]
    Se, Sf = simples(A)
    assert ext_dims(A, Se, Se, 6).dims == [1] * 7
    assert ext_dims(A, Se, Sf, 6).dims[0] == 0
    assert ext_dims(A, Sf, Se, 6).dims[1] == 1
    assert ext_dims(A, Sf, Sf, 3).dims == [1, 0, 1, 1]


@pytest.mark.parametrize("name", ["sl2_z0", "sl2_reversed", "a2_quiver", "semisimple_pair", "loop_dualnumbers"])
def test_ext1_counts_arrows(name):
    A = load(name)[2]
    sl = radical_and_simples(A)
    by_vertex = {S.support[0]: S for S in sl.simples}
    for x in A.vertices:
        for y in A.vertices:
            assert ext_dims(A, by_vertex[x], by_vertex[y], 1).dims[1] == ext1_by_arrows(A, sl.radical.basis, x, y)


def test_dual_numbers_oracle_matches():
    _, _, A, _ = load("loop_dualnumbers")
    (S,) = simples(A)
    assert ext_dims(A, S, S, 6).dims == dual_numbers_ext(6)


def test_tor_examples(sl2):
    _, _, A, P = sl2
    Se, Sf = simples(A)
    tq = truncate(A, P, ["e"])
    _, BR = segment_modules(A, tq)
    assert tor_dims(A, BR, Se, 6).dims == [1, 0, 0, 0, 0, 0, 0]
    assert tor_dims(A, BR, Sf, 6).dims[0] == 0
    _, AR = segment_modules(A, truncate(A, P, ["e", "f"]))
    for W in (Se, Sf, regular_projective(A, "e")):
        assert not any(tor_dims(A, AR, W, 4).dims[1:])


def test_flat_dimensions(sl2):
    _, _, A, P = sl2
    assert right_flat_dimension(A, truncate(A, P, ["e"]), 6) == 1
    assert right_flat_dimension(A, truncate(A, P, ["e", "f"]), 6) == 0
    assert right_flat_dimension(A, truncate(A, P, []), 6) == 0


def test_global_dimensions():
    assert global_dimension(load("semisimple_pair")[2], 6) == 0
    assert global_dimension(load("a2_quiver")[2], 6) == 1
    assert global_dimension(load("sl2_z1")[2], 6) == 0
    for N in (2, 4, 6):
        assert global_dimension(load("sl2_z0")[2], N) == AtLeast(N)


def corpus_modules(name):
    _, _, A, P = load(name)
    mods = list(simples(A)) + [regular_projective(A, x) for x in A.vertices]
    mods += [standard_module(A, P, y).module for y in A.vertices]
    return A, P, mods


@pytest.mark.property
@pytest.mark.parametrize("name", ["sl2_z0", "a2_quiver", "loop_dualnumbers"])
def test_ext_additivity(name):
    A, _, mods = corpus_modules(name)
    N = 3
    for i, V1 in enumerate(mods):
        for V2 in mods[i:]:
            if V1.dim + V2.dim > 8:
                continue
            V = direct_sum([V1, V2])
            for W in simples(A):
                lhs = ext_dims(A, V, W, N).dims
                rhs = [a + b for a, b in zip(ext_dims(A, V1, W, N).dims, ext_dims(A, V2, W, N).dims)]
                assert lhs == rhs
                lhs = ext_dims(A, W, V, N).dims
                rhs = [a + b for a, b in zip(ext_dims(A, W, V1, N).dims, ext_dims(A, W, V2, N).dims)]
                assert lhs == rhs


def sigma_matrix(A):
    swap = {"a": "c", "c": "a"}
    cols = [A.basis_vector(A.labels.index(swap.get(lab, lab))) for lab in A.labels]
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


@pytest.mark.property
def test_anti_involution_ext_symmetry(sl2):
    _, _, A, P = sl2
    sig = sigma_matrix(A)
    N = 4
    mods = list(simples(A)) + [standard_module(A, P, y).module for y in A.vertices]
    mods.append(regular_projective(A, "f"))
    for V in mods:
        for W in mods:
            lhs = ext_dims(A, V, W, N).dims
            rhs = ext_dims(A, twisted_dual(W, sig), twisted_dual(V, sig), N).dims
            assert lhs == rhs, (V.name, W.name)


@pytest.mark.parametrize("name", ["sl2_z0", "a2_quiver", "semisimple_pair", "loop_dualnumbers"])
def test_minimal_and_bar_style_resolutions_agree(name):
    A, _, mods = corpus_modules(name)
    N = 3
    for V in mods:
        full = projective_resolution(A, V, N, minimal=False)
        assert full.verify() == []
        for W in simples(A):
            assert ext_dims(A, V, W, N).dims == ext_dims(A, V, W, N, full).dims


def test_embedding_certificate_sl2(sl2):
    _, _, A, P = sl2
    cert = embedding_certificate(A, P, ["e"], 6)
    assert cert.verdict == "PASS" and cert.flat_dim == 1
    (unit,) = cert.unit
    assert unit["evaluation_iso"] and unit["hom_dim"] == 1 and unit["ext"] == [0] * 6
    (counit,) = cert.counit
    assert counit["multiplication_iso"] and counit["tor"] == [0] * 6
    (row,) = cert.fullness
    assert row["A"] == row["B"] == [1] * 7 == dual_numbers_ext(6)
    B = truncate(A, P, ["e"]).table
    bb = B.mul(B.basis_vector(1), B.basis_vector(1))
    assert B.labels == ["e", "b"] and not any(bb)


def test_embedding_certificate_whole_and_empty(sl2):
    _, _, A, P = sl2
    assert embedding_certificate(A, P, ["e", "f"], 3).verdict == "PASS"
    empty = embedding_certificate(A, P, [], 3)
    assert empty.verdict == "PASS" and empty.unit == [] and empty.fullness == []


def test_embedding_certificate_z1():
    _, _, A, P = load("sl2_z1")
    cert = embedding_certificate(A, P, ["e"], 6)
    assert cert.verdict == "PASS"
    assert len(cert.unit) == 2
    for row in cert.fullness:
        assert not any(row["A"][1:]) and row["A"] == row["B"]


def test_embedding_certificate_requires_hypotheses():
    _, _, A, P = load("sl2_reversed")
    with pytest.raises(HypothesisViolated):
        embedding_certificate(A, P, ["f"], 2)


@pytest.mark.parametrize("name", ["sl2_z0", "sl2_z1", "a2_quiver", "semisimple_pair", "loop_dualnumbers"])
def test_tor_vanishes_when_chain_exists(name):
    _, _, A, P = load(name)
    assert check_hypotheses(A, P).passed
    for Y in P.initial_segments():
        tq = truncate(A, P, Y)
        if not tq.table.dim:
            continue
        _, BR = segment_modules(A, tq)
        for S in simples(tq.table):
            W = inflate(S, A, tq.projection)
            assert not any(tor_dims(A, BR, W, 4).dims[1:])


def test_spectral_corner_collapse(sl2):
    _, _, A, P = sl2
    Se, Sf = simples(A)
    rep = spectral_corner_check(A, P, ["e"], Se, Se, 6)
    assert rep.collapse and rep.passed
    assert [r["A"] for r in rep.rows] == [1] * 7
    whole = spectral_corner_check(A, P, ["e", "f"], Sf, Se, 4)
    assert whole.collapse and whole.passed
    with pytest.raises(NotTruncatedModule):
        spectral_corner_check(A, P, ["e"], Sf, Se, 2)


def test_spectral_corner_without_collapse():
    # reversed order: B = A / AeA = K, and Ext_A(S_f, S_f) does not vanish
    _, _, A, P = load("sl2_reversed")
    Sf = [S for S in simples(A) if S.support == ["f"]][0]
    rep = spectral_corner_check(A, P, ["f"], Sf, Sf, 4)
    assert not rep.collapse and rep.passed
    assert [r["A"] for r in rep.rows] == [r["bound"] for r in rep.rows]


def test_ext_module_structure(sl2):
    _, _, A, P = sl2
    Se = simples(A)[0]
    tq = truncate(A, P, ["e"])
    E0 = ext_module(A, tq, Se, 0)
    assert E0.dim == 1 and E0.verify() == []
    assert ext_module(A, tq, Se, 1).dim == 0
