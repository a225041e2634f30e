import pytest

from taucluster.errors import InputError
from taucluster.exactlinalg import RatMatrix
from taucluster.fdmodules import (
    FdModule,
    ModuleMap,
    SuppTauRigidPair,
    decompose,
    direct_sum,
    enumerate_indecomposables,
    ext1_dim,
    gen_membership,
    hom_basis,
    hom_dim,
    injective_module,
    is_isomorphic,
    is_supp_tau_rigid,
    is_supp_tau_tilting,
    kernel,
    min_proj_presentation,
    projective_cover,
    projective_module,
    registry_for,
    simple_module,
    support_tau_rigid_pairs,
    tau,
    tau_inverse,
    torsion_free_quotient,
)


@pytest.fixture
def a2_mods(A2):
    return simple_module(A2, 0), simple_module(A2, 1), projective_module(A2, 0), projective_module(A2, 1)


def test_module_validation_rejects_bad_action(A3):
    with pytest.raises(InputError):
        # the matrix for a must be 1x1
        FdModule.from_arrows(A3, [1, 1, 1], {"a": RatMatrix([[1, 2]]), "b": RatMatrix([[1]])})


def test_module_must_respect_relations(N3):
    with pytest.raises(InputError):
        FdModule.from_arrows(N3, [1, 1, 1], {"a": RatMatrix([[1]]), "b": RatMatrix([[1]])})


def test_hom_s1_s2_zero(a2_mods):
    S1, S2, _, _ = a2_mods
    assert hom_dim(S1, S2) == 0


def test_hom_simple_endomorphisms(a2_mods):
    assert hom_dim(a2_mods[0], a2_mods[0]) == 1


def test_hom_from_projective_evaluates_at_vertex(a2_mods):
    _, S2, P1, _ = a2_mods
    assert hom_dim(P1, S2) == 0
    assert hom_dim(P1, P1) == 1


def test_hom_basis_maps_are_homomorphisms(A3):
    M = projective_module(A3, 0)
    N = injective_module(A3, 2)
    for f in hom_basis(M, N):
        f.validate()


def test_projective_cover_of_projective(A2):
    P = projective_module(A2, 0)
    pc = projective_cover(P)
    assert pc.verts == [0] and pc.surjection.is_iso()


def test_projective_cover_of_simple(A2, N3):
    pc = projective_cover(simple_module(A2, 0))
    assert pc.verts == [0] and pc.surjection.is_surjective()
    pc = projective_cover(simple_module(N3, 1))
    K, _ = kernel(pc.surjection)
    assert pc.verts == [1] and K.dims == (0, 0, 1)


def test_presentations(A2, N3):
    p = min_proj_presentation(projective_module(A2, 0))
    assert p.p1 == [] and p.p0 == [0]
    p = min_proj_presentation(simple_module(A2, 0))
    assert p.p1 == [1] and p.p0 == [0]
    p = min_proj_presentation(simple_module(N3, 0))
    assert p.p1 == [1] and p.p0 == [0]


def test_tau_examples(A2, N3):
    assert tau(projective_module(A2, 0)).dim == 0
    assert is_isomorphic(tau(simple_module(A2, 0)), simple_module(A2, 1))
    assert is_isomorphic(tau(simple_module(N3, 1)), simple_module(N3, 2))


def test_tau_inverse(A2):
    assert is_isomorphic(tau_inverse(simple_module(A2, 1)), simple_module(A2, 0))


def test_ext_examples(a2_mods):
    S1, S2, P1, _ = a2_mods
    assert ext1_dim(P1, S2) == 0
    assert ext1_dim(S1, S2) == 1
    assert ext1_dim(S2, S1) == 0


def test_decompose_indecomposable(a2_mods):
    P1 = a2_mods[2]
    assert [(m.dims, k) for m, k in decompose(P1)] == [((1, 1), 1)]


def test_decompose_multiplicity(A2):
    S1 = simple_module(A2, 0)
    parts = decompose(direct_sum([S1, S1], A2))
    assert len(parts) == 1 and is_isomorphic(parts[0][0], S1) and parts[0][1] == 2


def test_decompose_regular(A2):
    reg = direct_sum([projective_module(A2, 0), projective_module(A2, 1)], A2)
    got = sorted((m.dims, k) for m, k in decompose(reg))
    assert got == [((0, 1), 1), ((1, 1), 1)]


def test_is_isomorphic(A2):
    S1, S2 = simple_module(A2, 0), simple_module(A2, 1)
    assert is_isomorphic(S1, S1)
    assert not is_isomorphic(S1, S2)
    P1 = projective_module(A2, 0)
    other = FdModule.from_arrows(A2, [1, 1], {"a": RatMatrix([[5]])})
    assert is_isomorphic(P1, other)


def test_torsion_free_quotient(a2_mods):
    S1, S2, P1, _ = a2_mods
    assert torsion_free_quotient(S2, S1)[0].dims == S1.dims
    assert is_isomorphic(torsion_free_quotient(S2, P1)[0], S1)
    assert torsion_free_quotient(P1, S1)[0].dim == 0


def test_gen_membership(a2_mods):
    S1, S2, P1, _ = a2_mods
    assert gen_membership(P1, P1)
    assert not gen_membership(S2, P1)
    assert gen_membership(P1, S1)


def test_support_tau_rigid_examples(A2):
    P1, P2 = projective_module(A2, 0), projective_module(A2, 1)
    assert is_supp_tau_tilting(SuppTauRigidPair((P1, P2), (), A2))
    assert is_supp_tau_tilting(SuppTauRigidPair((), (0, 1), A2))
    assert is_supp_tau_tilting(SuppTauRigidPair((simple_module(A2, 1),), (0,), A2))
    assert not is_supp_tau_rigid(SuppTauRigidPair((simple_module(A2, 1),), (1,), A2))


@pytest.mark.parametrize("name,count", [("A2", 3), ("A3", 6), ("N3", 5)])
def test_indecomposable_counts(name, count, request):
    alg = request.getfixturevalue(name)
    assert len(enumerate_indecomposables(alg).reps) == count


@pytest.mark.parametrize("name,pairs,tilting", [("A2", 11, 5), ("A3", 45, 14), ("N3", 39, 12)])
def test_pair_counts(name, pairs, tilting, request):
    alg = request.getfixturevalue(name)
    found = support_tau_rigid_pairs(alg)
    assert len(found) == pairs
    assert sum(1 for p in found if is_supp_tau_tilting(p)) == tilting


def test_registry_identifies_isomorphic_modules(A2):
    reg = registry_for(A2)
    other = FdModule.from_arrows(A2, [1, 1], {"a": RatMatrix([[3]])})
    assert reg.index(other) == reg.index(projective_module(A2, 0))


def test_module_map_composition(A2):
    P1, S1 = projective_module(A2, 0), simple_module(A2, 0)
    (f,) = hom_basis(P1, S1)
    assert (f @ ModuleMap.identity(P1)).flat() == f.flat()
    assert f.is_surjective() and not f.is_injective()
