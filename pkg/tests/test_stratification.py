import copy

import pytest

from stratkit.errors import (
    DivisibilityFailure,
    HypothesisViolated,
    NoFiltrationFound,
    NotInitialSegment,
    TooLarge,
    UnknownVertex,
)
from stratkit.linalg import Subspace, mat_vec, transpose
from stratkit.modules import direct_sum, inflate, regular_projective, support
from stratkit.radical import radical_and_simples
from stratkit.stratification import (
    Poset,
    check_hypotheses,
    check_standard_welldefined,
    check_standard_welldefined_exhaustive,
    exhaustive_filtration_search,
    heredity_chain,
    standard_filtration,
    standard_module,
    standard_modules,
    truncate,
)

from conftest import CORPUS, load


def vec(A, label):
    return A.basis_vector(A.labels.index(label))


def test_initial_segments():
    assert Poset("ef", [("e", "f")]).initial_segments() == [(), ("e",), ("e", "f")]
    assert len(Poset("xy").initial_segments()) == 4
    assert len(Poset("xyw", [("x", "y"), ("y", "w")]).initial_segments()) == 4
    diamond = Poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert diamond.initial_segments() == [(), ("a",), ("a", "b"), ("a", "c"), ("a", "b", "c"), ("a", "b", "c", "d")]
    with pytest.raises(TooLarge):
        Poset([str(i) for i in range(21)]).initial_segments()
    with pytest.raises(ValueError):
        Poset("xy", [("x", "y"), ("y", "x")])


def test_poset_queries():
    P = Poset("xyw", [("x", "y"), ("y", "w")])
    assert P.le("x", "w") and not P.lt("w", "x")
    assert P.down("y") == ("x", "y")
    assert P.maximal(["x", "y"]) == ["y"]
    assert P.down_closure(["w"]) == ("x", "y", "w")
    assert P.not_above("y") == ("x", "y")


def kernel_oracle(A, outside):
    """Span of u e_x v over basis elements u, v: the two-sided ideal."""
    vecs = []
    for x in outside:
        ex = A.idempotent(x)
        for i in range(A.dim):
            for j in range(A.dim):
                vecs.append(A.mul(A.mul(A.basis_vector(i), ex), A.basis_vector(j)))
    return Subspace(vecs, A.dim)


def test_truncation_examples(sl2):
    _, _, A, P = sl2
    tq = truncate(A, P, ["e"])
    assert tq.table.dim == 2 and tq.table.labels == ["e", "b"]
    assert tq.kernel == Subspace([vec(A, x) for x in ("f", "a", "c", "b^2")], A.dim)
    assert Subspace(tq.kernel.basis, A.dim) == kernel_oracle(A, ["f"])
    bb = tq.table.mul(tq.table.basis_vector(1), tq.table.basis_vector(1))
    assert all(c == 0 for c in bb)
    full = truncate(A, P, ["e", "f"])
    assert full.table.dim == 6 and full.projection == [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    empty = truncate(A, P, [])
    assert empty.table.dim == 0
    with pytest.raises(NotInitialSegment):
        truncate(A, P, ["f"])


@pytest.mark.parametrize("name", CORPUS)
def test_truncation_kernel_matches_oracle(name):
    _, _, A, P = load(name)
    for Y in P.initial_segments():
        tq = truncate(A, P, Y)
        outside = [x for x in A.vertices if x not in Y]
        assert Subspace(tq.kernel.basis, A.dim) == kernel_oracle(A, outside)
        assert tq.table.associativity_failures() == []
        assert tq.table.idempotent_failures() == []


def segment_test_modules(A, P):
    mods = [regular_projective(A, x) for x in A.vertices]
    mods += radical_and_simples(A).simples
    mods += [standard_module(A, P, y).module for y in A.vertices]
    for Y in P.initial_segments():
        tq = truncate(A, P, Y)
        if tq.table.dim:
            mods += [inflate(S, A, tq.projection) for S in radical_and_simples(tq.table).simples]
    return mods


@pytest.mark.property
@pytest.mark.parametrize("name", CORPUS)
def test_support_truncation_universal_property(name):
    _, _, A, P = load(name)
    mods = segment_test_modules(A, P)
    for Y in P.initial_segments():
        tq = truncate(A, P, Y)
        for V in mods:
            assert (set(support(V)) <= set(Y)) == tq.factors_through(V)


def test_standard_modules(sl2):
    _, _, A, P = sl2
    Mf = standard_module(A, P, "f")
    assert Mf.module.dim == 2
    Me = standard_module(A, P, "e")
    assert Me.module.dim == 2 and support(Me.module) == ["e"]
    # oracle: Ae / A f A e straight from the structure constants
    AfAe = Subspace(
        [A.mul(A.mul(A.mul(A.basis_vector(i), vec(A, "f")), A.basis_vector(j)), vec(A, "e"))
         for i in range(A.dim) for j in range(A.dim)],
        A.dim,
    )
    assert len(A.left_ideal_basis("e")) - AfAe.dim == Me.module.dim
    assert AfAe == Subspace([vec(A, "a"), vec(A, "b^2")], A.dim)
    b = Me.module.element_matrix(vec(A, "b"))
    bb = Me.module.element_matrix(A.mul(vec(A, "b"), vec(A, "b")))
    assert any(c != 0 for row in b for c in row)
    assert all(c == 0 for row in bb for c in row)
    assert Me.module.act(vec(A, "e"), Me.generator) == Me.generator
    with pytest.raises(UnknownVertex):
        standard_module(A, P, "g")
    one = load("loop_dualnumbers")
    assert standard_module(one[2], one[3], "v").module.dim == 2


def test_standard_module_at_nonzero_parameter():
    _, _, A, P = load("sl2_z0", z=1)
    AfAe = Subspace(
        [A.mul(A.mul(A.mul(A.basis_vector(i), vec(A, "f")), A.basis_vector(j)), vec(A, "e"))
         for i in range(A.dim) for j in range(A.dim)],
        A.dim,
    )
    e_minus_bb = [x - y for x, y in zip(vec(A, "e"), vec(A, "b^2"))]
    assert AfAe == Subspace([vec(A, "a"), e_minus_bb], A.dim)
    assert AfAe != Subspace([vec(A, "a"), vec(A, "b^2")], A.dim)
    assert standard_module(A, P, "e").module.dim == 2


@pytest.mark.parametrize("name", CORPUS)
def test_welldefined_single_check_matches_exhaustive(name):
    _, _, A, P = load(name)
    single = {y: r.ok for y, r in check_standard_welldefined(A, P).items()}
    assert single == check_standard_welldefined_exhaustive(A, P)
    for y in A.vertices:
        assert set(support(standard_module(A, P, y).module)) <= set(P.down(y))


@pytest.mark.parametrize("name", ["sl2_z0", "sl2_z1", "a2_quiver", "semisimple_pair"])
def test_welldefined_on_antichain(name):
    _, _, A, _ = load(name)
    P = Poset(A.vertices)
    single = {y: r.ok for y, r in check_standard_welldefined(A, P).items()}
    assert single == check_standard_welldefined_exhaustive(A, P)


def test_welldefined_reversed_passes():
    _, _, A, P = load("sl2_reversed")
    assert all(r.ok for r in check_standard_welldefined(A, P).values())


@pytest.mark.parametrize("z", [0, 1])
def test_filtration_of_Ae(z):
    _, _, A, P = load("sl2_z0", z=z)
    Ae = regular_projective(A, "e")
    cert = standard_filtration(A, P, Ae)
    assert cert.labels == ["f", "e"]
    assert cert.verify() == []
    # bottom witness is right multiplication by a on Af
    Af = cert.standards["f"].module
    Af_ambient = regular_projective(A, "f").ambient
    W = cert.witnesses[0]
    for j, u in enumerate(Af_ambient):
        col = [row[j] for row in W]
        image = mat_vec(transpose(Ae.ambient, A.dim), col)
        assert image == A.mul(u, vec(A, "a"))
    assert Af.dim == 2


def test_filtration_of_Af(sl2):
    _, _, A, P = sl2
    cert = standard_filtration(A, P, regular_projective(A, "f"))
    assert cert.labels == ["f"] and cert.verify() == []


def test_reversed_order_fails_at_Af():
    _, _, A, P = load("sl2_reversed")
    Af = regular_projective(A, "f")
    with pytest.raises(DivisibilityFailure):
        standard_filtration(A, P, Af)
    assert issubclass(DivisibilityFailure, NoFiltrationFound)
    found, exact = exhaustive_filtration_search(A, P, Af)
    assert found is None and exact
    rep = check_hypotheses(A, P)
    assert not rep.passed
    assert rep.failures[0].startswith("filtration of Af")
    with pytest.raises(HypothesisViolated):
        heredity_chain(A, P)


@pytest.mark.parametrize("name", ["sl2_z0", "sl2_z1", "semisimple_pair", "a2_quiver", "loop_dualnumbers"])
def test_check_passes(name):
    _, _, A, P = load(name)
    rep = check_hypotheses(A, P)
    assert rep.passed, rep.failures
    for cert in rep.filtrations.values():
        assert cert.verify() == []


def test_semisimple_pair_any_order():
    _, _, A, _ = load("semisimple_pair")
    for P in (Poset("ef", [("e", "f")]), Poset("ef", [("f", "e")]), Poset("ef")):
        assert check_hypotheses(A, P).passed


@pytest.mark.property
@pytest.mark.parametrize("name", CORPUS)
def test_filtration_certificates_self_verify(name):
    _, _, A, P = load(name)
    std = standard_modules(A, P)
    mods = [regular_projective(A, x) for x in A.vertices]
    mods += [s.module for s in std.values() if s.module.dim]
    mods.append(direct_sum(mods[:2]))
    for V in mods:
        try:
            cert = standard_filtration(A, P, V, std)
        except NoFiltrationFound:
            found, exact = exhaustive_filtration_search(A, P, V, std)
            assert found is None or found.verify() == []
            continue
        assert cert.verify() == []
        assert sum(std[y].module.dim for y in cert.labels) == V.dim
        if V.dim <= 8:
            found, _ = exhaustive_filtration_search(A, P, V, std)
            assert found is not None and found.verify() == []


def test_tampered_certificates_are_rejected(sl2):
    _, _, A, P = sl2
    cert = standard_filtration(A, P, regular_projective(A, "e"))
    bad = copy.deepcopy(cert)
    bad.witnesses[0] = [[0] * len(row) for row in bad.witnesses[0]]
    assert bad.verify()
    bad = copy.deepcopy(cert)
    bad.chain = bad.chain[:-1]
    bad.labels = bad.labels[:-1]
    bad.witnesses = bad.witnesses[:-1]
    assert bad.verify()
    bad = copy.deepcopy(cert)
    bad.labels = ["e", "f"]
    assert bad.verify()


def test_heredity_chain_sl2(sl2):
    _, _, A, P = sl2
    chain = heredity_chain(A, P)
    assert chain.order == ["f", "e"]
    first = chain.steps[0]
    assert first.ideal.dim == 4 and first.n == 2
    assert first.multiplicities == {"e": 1, "f": 1}
    # oracle: images of right multiplication Af -> Ae by a and Af -> Af by f
    images = [A.mul(u, vec(A, r)) for u in regular_projective(A, "f").ambient for r in ("a", "f")]
    assert Subspace(first.ideal.basis, A.dim) == Subspace(images, A.dim)
    assert first.generators == {"e": [vec(A, "a")], "f": [vec(A, "f")]}
    assert first.quotient.dim == 2
    assert chain.verify() == []


def test_heredity_chain_semisimple():
    _, _, A, P = load("semisimple_pair")
    chain = heredity_chain(A, P)
    assert [s.ideal.dim for s in chain.steps] == [1, 1]
