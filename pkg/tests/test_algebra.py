from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from stratkit.algebra import check_anti_involution
from stratkit.errors import NotIsomorphic, NotStable, UnknownVertex, VectorOutOfSpace
from stratkit.linalg import Subspace, identity, mat_mul, nullspace, transpose
from stratkit.modules import (
    ModuleMap,
    direct_sum,
    hom_space,
    is_isomorphic,
    isomorphism,
    quotient_module,
    regular_module,
    regular_projective,
    submodule_generated,
    support,
    twisted_dual,
    zero_module,
)
from stratkit.radical import nilpotency_index, radical_and_simples
from stratkit.stratification import standard_module

from conftest import CORPUS, load


def coords(A, label):
    return A.basis_vector(A.labels.index(label))


def block_labels(A, x, y):
    return sorted(A.label(v) for v in A.peirce_block(x, y))


@pytest.mark.parametrize("z", [0, 1, 3])
def test_peirce_blocks(z):
    _, _, A, _ = load("sl2_z0", z=z)
    assert block_labels(A, "e", "e") == ["b", "b^2", "e"]
    assert block_labels(A, "e", "f") == ["c"]
    assert block_labels(A, "f", "e") == ["a"]
    assert block_labels(A, "f", "f") == ["f"]
    with pytest.raises(UnknownVertex):
        A.peirce_block("e", "g")


@pytest.mark.parametrize("name", CORPUS)
def test_associativity_and_unit(name):
    _, _, A, _ = load(name)
    assert A.associativity_failures() == []
    assert A.idempotent_failures() == []


def test_opposite_table(sl2):
    A = sl2[2]
    Aop = A.opposite()
    for i in range(A.dim):
        for j in range(A.dim):
            assert Aop.table[i][j] == A.table[j][i]


def sigma_matrix(A):
    """a <-> c, b -> b, e and f fixed, extended to products."""
    swap = {"a": "c", "c": "a"}
    cols = [coords(A, swap.get(lab, lab)) for lab in A.labels]
    return transpose(cols, A.dim)


@pytest.mark.parametrize("z", [0, 1, 2])
def test_sl2_anti_involution(z):
    A = load("sl2_z0", z=z)[2]
    assert check_anti_involution(A, sigma_matrix(A)) == []
    # sending a to a + c breaks both conditions
    bad = sigma_matrix(A)
    bad[A.labels.index("a")][A.labels.index("a")] = 1
    assert check_anti_involution(A, bad)


def test_regular_projectives(sl2):
    A = sl2[2]
    Ae, Af = regular_projective(A, "e"), regular_projective(A, "f")
    assert sorted(A.label(v) for v in Ae.ambient) == ["a", "b", "b^2", "e"]
    assert sorted(A.label(v) for v in Af.ambient) == ["c", "f"]
    assert Ae.verify() == [] and Af.verify() == []
    assert support(Af) == ["e", "f"]
    with pytest.raises(UnknownVertex):
        regular_projective(A, "g")
    one = load("loop_dualnumbers")[2]
    assert regular_projective(one, "v").dim == 2


def test_submodules_and_quotients(sl2):
    A = sl2[2]
    Ae = regular_projective(A, "e")
    a = Ae._space.coords(coords(A, "a"))
    sub, inc = submodule_generated(Ae, [a])
    assert sub.dim == 2 and inc.intertwines()
    spanned = Subspace(transpose(inc.matrix, sub.dim), Ae.dim)
    ca = Ae._space.coords(A.mul(coords(A, "c"), coords(A, "a")))
    assert spanned.contains(a) and spanned.contains(ca)
    Q, proj = quotient_module(Ae, spanned)
    assert Q.dim == 2 and proj.intertwines() and Q.verify() == []
    zero, _ = submodule_generated(Ae, [])
    assert zero.dim == 0
    full, _ = quotient_module(Ae, Subspace([], Ae.dim))
    assert full.dim == Ae.dim
    nothing, _ = quotient_module(Ae, Subspace(identity(Ae.dim), Ae.dim))
    assert nothing.dim == 0
    with pytest.raises(NotStable):
        quotient_module(Ae, [Ae._space.coords(coords(A, "b"))])
    with pytest.raises(VectorOutOfSpace):
        submodule_generated(Ae, [[1, 0]])
    assert support(zero_module(A)) == []


def dickson_radical(A):
    """Characteristic-zero oracle: rad A = {x : trace(L_{xy}) = 0 for all y}."""
    rows = []
    for j in range(A.dim):
        row = []
        for i in range(A.dim):
            L = A.left_matrix(A.table[i][j])
            row.append(sum(L[k][k] for k in range(A.dim)))
        rows.append(row)
    return Subspace(nullspace(rows, A.dim), A.dim)


@pytest.mark.parametrize("name", CORPUS)
def test_radical_matches_trace_form(name):
    _, _, A, _ = load(name)
    sl = radical_and_simples(A)
    assert sl.radical == dickson_radical(A)
    assert nilpotency_index(A, sl.radical) is not None
    # A/rad is split semisimple: sum of (dim S)^2 over simples
    assert sum(S.dim ** 2 for S in sl.simples) == A.dim - sl.radical.dim
    for S in sl.simples:
        assert S.verify() == []


def test_sl2_simples():
    A = load("sl2_z0")[2]
    sl = radical_and_simples(A)
    assert sorted(A.label(v) for v in sl.radical.basis) == ["a", "b", "b^2", "c"]
    assert sl.nilpotency == 3
    assert [S.name for S in sl.simples] == ["S_e", "S_f"]
    assert sl.basic
    A1 = load("sl2_z1")[2]
    sl1 = radical_and_simples(A1)
    assert sl1.radical.dim == 0
    assert not sl1.basic
    assert sorted(S.dim for S in sl1.simples) == [1, 1, 2]
    assert radical_and_simples(load("semisimple_pair")[2]).radical.dim == 0


def corpus_modules(A, P):
    mods = [regular_projective(A, x) for x in A.vertices]
    mods += radical_and_simples(A).simples
    mods += [standard_module(A, P, y).module for y in A.vertices]
    return mods


@pytest.mark.parametrize("name", CORPUS)
def test_hom_from_projective(name):
    _, _, A, P = load(name)
    for W in corpus_modules(A, P):
        for x in A.vertices:
            ex = W.idempotent_matrix(x) if W.dim else []
            expect = Subspace(transpose(ex, W.dim), W.dim).dim if W.dim else 0
            assert len(hom_space(regular_projective(A, x), W)) == expect


def test_hom_examples(sl2):
    _, _, A, P = sl2
    Se, Sf = radical_and_simples(A).simples
    assert hom_space(Se, Sf) == []
    Me = standard_module(A, P, "e").module
    assert len(hom_space(regular_projective(A, "e"), Me)) == 2
    for h in hom_space(regular_projective(A, "e"), Me):
        assert h.intertwines()


def test_isomorphism_cases(sl2):
    _, _, A, P = sl2
    Af = regular_projective(A, "f")
    w = isomorphism(Af, Af)
    assert w.is_iso()
    Mf = standard_module(A, P, "f").module
    assert isomorphism(Af, Mf).is_iso()
    Me = standard_module(A, P, "e").module
    Se = radical_and_simples(A).simples[0]
    with pytest.raises(NotIsomorphic):
        isomorphism(Me, Se)
    assert not is_isomorphic(regular_projective(A, "e"), direct_sum([Af, Af]))


def test_twisted_dual_is_module(sl2):
    A = sl2[2]
    sig = sigma_matrix(A)
    for x in A.vertices:
        D = twisted_dual(regular_projective(A, x), sig)
        assert D.verify() == []


@pytest.mark.property
@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_regular_action_is_multiplicative(u, v):
    A = load("sl2_z0", z=2)[2]
    R = regular_module(A)
    u = [Fraction(c) for c in u]
    v = [Fraction(c) for c in v]
    assert mat_mul(R.element_matrix(u), R.element_matrix(v)) == R.element_matrix(A.mul(u, v))


def test_module_map_kernel_image(sl2):
    A = sl2[2]
    Ae = regular_projective(A, "e")
    Me = standard_module(A, sl2[3], "e")
    f = Me.projection
    assert isinstance(f, ModuleMap) and f.intertwines()
    assert f.image().dim == 2 and f.kernel().dim == 2
    assert f.rank() == 2 and Ae.dim == 4
