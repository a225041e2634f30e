import pytest

from taucluster.errors import InputError
from taucluster.fdmodules import is_isomorphic, projective_module, simple_module
from taucluster.taured import pair_key
from taucluster.twoterm import (
    basic_sum,
    bongartz_completion,
    complex_key,
    direct_sum,
    euler_form,
    euler_form_from_classes,
    exchange_graph,
    g_vector,
    h_inverse,
    h_map,
    hom_mod_P_dim,
    homotopy_hom_dim,
    indecomposable_presilting,
    is_in_Z_P,
    is_isomorphic_complex,
    is_presilting,
    is_presilting_in_reduction,
    is_silting,
    minimize,
    mutate,
    phi_reduce,
    presentation_complex,
    regular_complex,
    shift_in_reduction,
    shifted_regular,
    stalk,
    two_term,
    zero_complex,
)
from taucluster.fdmodules import SuppTauRigidPair


@pytest.fixture
def cx(A2):
    """Two-term complexes over A2; vertex 0 is 1 and vertex 1 is 2, basis element 2 is the arrow."""
    return {
        "P1": stalk(A2, [0], 0),
        "P2": stalk(A2, [1], 0),
        "SP1": stalk(A2, [0], -1),
        "SP2": stalk(A2, [1], -1),
        "S1": two_term(A2, [1], [0], [[{2: 1}]]),
    }


def test_hom_of_stalk(cx):
    assert homotopy_hom_dim(cx["P1"], cx["P1"], 0) == 1


def test_s1_complex_is_presilting(cx):
    X = cx["S1"]
    assert homotopy_hom_dim(X, X, 0) == 1
    assert homotopy_hom_dim(X, X, 1) == 0
    assert homotopy_hom_dim(X, X, -1) == 0


def test_no_map_between_degrees(cx):
    assert homotopy_hom_dim(cx["SP2"], cx["P2"], 0) == 0


def test_shift_window(cx):
    with pytest.raises(InputError):
        homotopy_hom_dim(cx["P1"], cx["P1"], 2)


def test_silting_examples(A2, cx):
    assert is_silting(regular_complex(A2))
    assert is_silting(shifted_regular(A2))
    assert is_silting(direct_sum([cx["S1"], cx["P1"]]))
    assert not is_presilting(direct_sum([cx["P2"], cx["SP2"]]))


def test_minimize_cancels_identity(A2):
    X = two_term(A2, [0], [0], [[{0: 1}]])
    assert minimize(X).is_zero()


def test_minimize_keeps_minimal(cx):
    assert complex_key(minimize(cx["S1"])) == complex_key(cx["S1"])


def test_minimize_block(A2, cx):
    # (P2 + P1 -> P1) with d = [a, id] leaves P2 in degree -1
    X = two_term(A2, [1, 0], [0], [[{2: 1}, {0: 1}]])
    assert is_isomorphic_complex(minimize(X), cx["SP2"])


def test_h_map_examples(A2, cx):
    assert pair_key(A2, h_map(regular_complex(A2))) == pair_key(
        A2, SuppTauRigidPair((projective_module(A2, 0), projective_module(A2, 1)), (), A2)
    )
    p = h_map(cx["SP1"])
    assert p.summands == () or all(X.dim == 0 for X in p.summands)
    assert tuple(p.projectives) == (0,)
    q = h_map(cx["S1"])
    assert len(q.summands) == 1 and is_isomorphic(q.summands[0], simple_module(A2, 0))


def test_h_inverse_examples(A2, cx):
    S1, S2 = simple_module(A2, 0), simple_module(A2, 1)
    assert is_isomorphic_complex(h_inverse(SuppTauRigidPair((S1,), (), A2)), cx["S1"])
    got = h_inverse(SuppTauRigidPair((S2,), (0,), A2))
    assert is_isomorphic_complex(got, direct_sum([cx["P2"], cx["SP1"]]))


def test_g_vectors(cx):
    assert g_vector(cx["P1"]) == (1, 0)
    assert g_vector(cx["S1"]) == (1, -1)
    assert g_vector(cx["SP1"]) == (-1, 0)


def test_euler_form(A2, cx):
    assert euler_form(cx["P1"], cx["P1"]) == 1
    assert euler_form(cx["S1"], cx["S1"]) == 1
    assert euler_form(cx["SP2"], cx["P1"]) == -1
    for X in cx.values():
        for Y in cx.values():
            assert euler_form(X, Y) == euler_form_from_classes(X, Y)


def test_bongartz(A2, cx):
    assert is_isomorphic_complex(bongartz_completion(zero_complex(A2)), regular_complex(A2))
    assert is_isomorphic_complex(bongartz_completion(regular_complex(A2)), regular_complex(A2))
    assert is_isomorphic_complex(bongartz_completion(cx["S1"]), direct_sum([cx["S1"], cx["P1"]]))


def test_mutation_and_involution(A2, cx):
    T = [cx["P1"], cx["P2"]]
    U = mutate(T, 1, "left")
    assert {complex_key(X) for X in U} == {complex_key(cx["P1"]), complex_key(cx["S1"])}
    back = mutate(U, [complex_key(X) for X in U].index(complex_key(cx["S1"])), "right")
    assert {complex_key(X) for X in back} == {complex_key(X) for X in T}


def test_a2_exchange_graph_is_a_pentagon(A2):
    g = exchange_graph(A2)
    assert len(g.nodes) == 5 and len(g.edges) == 5
    degree = {k: 0 for k in g.nodes}
    for a, b in g.edges:
        degree[a] += 1
        degree[b] += 1
    assert set(degree.values()) == {2}


@pytest.mark.parametrize("name,nodes,ind", [("A3", 14, 9), ("N3", 12, 8)])
def test_exchange_graph_sizes(name, nodes, ind, request):
    alg = request.getfixturevalue(name)
    g = exchange_graph(alg)
    assert len(g.nodes) == nodes
    assert len(indecomposable_presilting(alg, g)) == ind


def test_hom_mod_P(A2, cx):
    X = cx["P1"]
    assert hom_mod_P_dim(zero_complex(A2), X, X) == homotopy_hom_dim(X, X, 0)
    assert hom_mod_P_dim(cx["S1"], cx["S1"], cx["S1"]) == 0
    assert hom_mod_P_dim(cx["S1"], X, X) == 1


def test_is_in_Z_P(cx):
    assert is_in_Z_P(cx["S1"], cx["S1"])
    assert is_in_Z_P(cx["S1"], cx["P1"])
    assert not is_in_Z_P(cx["P2"], cx["SP2"])


def test_shift_in_reduction(cx):
    shifted = shift_in_reduction(cx["S1"], cx["P1"])
    assert is_isomorphic_complex(shifted, cx["SP2"])
    assert is_in_Z_P(cx["S1"], shifted)


def test_phi_reduce(A2, cx):
    P = cx["S1"]
    assert phi_reduce(P, P).is_zero()
    T = bongartz_completion(P)
    assert is_isomorphic_complex(phi_reduce(P, T), cx["P1"])
    rank_one = [
        Y for Y in indecomposable_presilting(A2)
        if not is_isomorphic_complex(Y, P) and is_presilting(basic_sum([Y, P], A2))
    ]
    assert sorted(g_vector(Y) for Y in rank_one) == [(0, -1), (1, 0)]
    assert all(is_presilting_in_reduction(P, Y) for Y in rank_one)


def test_presentation_complex(N3):
    X = presentation_complex(simple_module(N3, 0))
    assert list(X.p1) == [1] and list(X.p0) == [0]
    assert is_isomorphic(h_map(X).summands[0], simple_module(N3, 0))
