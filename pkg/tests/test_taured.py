import pytest

from taucluster.fdmodules import (
    SuppTauRigidPair,
    direct_sum,
    is_supp_tau_rigid,
    projective_module,
    simple_module,
    support_tau_rigid_pairs,
    zero_module,
)
from taucluster.taured import (
    WidePair,
    bongartz_pair,
    e_case_module,
    e_case_projective,
    e_case_shifted,
    e_inverse,
    e_reduce,
    h_prime,
    j_perp,
    pair_key,
    supp_tau_rigid_in_wide,
    verify_reduction_square,
)
from taucluster.twoterm import (
    bongartz_completion,
    direct_sum as complex_sum,
    h_map,
    indecomposable_presilting,
    presilting_cliques,
    basic_sum,
    phi_reduce,
    stalk,
    two_term,
    zero_complex,
)


@pytest.fixture
def m(A2):
    return {
        "S1": simple_module(A2, 0),
        "S2": simple_module(A2, 1),
        "P1": projective_module(A2, 0),
        "P2": projective_module(A2, 1),
        "0": zero_module(A2),
    }


def dims(wp):
    return sorted(X.dims for X in wp.modules), sorted(X.dims for X in wp.projectives)


def test_bongartz_pair(A2, m):
    top = SuppTauRigidPair((m["P1"], m["P2"]), (), A2)
    assert pair_key(A2, bongartz_pair(top)) == pair_key(A2, top)
    s1 = bongartz_pair(SuppTauRigidPair.of(m["S1"]))
    assert sorted(X.dims for X in s1.summands) == [(1, 0), (1, 1)]
    bottom = SuppTauRigidPair((), (0, 1), A2)
    assert pair_key(A2, bongartz_pair(bottom)) == pair_key(A2, bottom)


def test_j_perp_whole_category(A2, m):
    W = j_perp(SuppTauRigidPair.of(m["0"]))
    assert W.C.dim == 3 and W.rank() == 2
    assert sorted(S.dims for S in W.simples()) == [(0, 1), (1, 0)]


@pytest.mark.parametrize(
    "mod,proj,simple",
    [("S2", (), (1, 0)), ("S1", (), (1, 1)), ("0", (1,), (1, 0))],
)
def test_j_perp_rank_one(A2, m, mod, proj, simple):
    W = j_perp(SuppTauRigidPair.of(m[mod], list(proj)))
    assert W.C.dim == 1 and W.rank() == 1
    assert [S.dims for S in W.simples()] == [simple]


def test_j_perp_of_tilting_pair_is_zero(A2, m):
    assert j_perp(SuppTauRigidPair.of(m["S1"], [1])).rank() == 0


def test_e_case_module(m):
    assert dims(e_case_module(m["0"], m["P1"])) == ([(1, 1)], [])
    assert dims(e_case_module(m["S2"], m["P1"])) == ([(1, 0)], [])
    assert dims(e_case_module(m["P1"], m["S1"])) == ([], [(0, 1)])


def test_e_case_shifted(m):
    assert dims(e_case_shifted(m["0"], 0)) == ([], [(1, 1)])
    assert dims(e_case_shifted(m["S2"], 0)) == ([], [(1, 0)])


def test_e_case_projective(m):
    assert dims(e_case_projective(m["P2"], WidePair((m["S1"],), ()))) == ([(1, 0)], [])
    assert dims(e_case_projective(m["P2"], WidePair((), (m["P1"],)))) == ([], [(1, 0)])


def test_e_reduce_examples(A2, m):
    base = SuppTauRigidPair.of(m["S2"])
    assert e_reduce(base, base).size() == 0
    assert dims(e_reduce(base, SuppTauRigidPair.of(direct_sum([m["P1"], m["S2"]])))) == ([(1, 0)], [])
    # the Bongartz completion reduces to the projective generator of J
    W = j_perp(base)
    red = e_reduce(base, bongartz_pair(base))
    assert red.key() == WidePair(tuple(W.relative_projectives()), ()).key()


def test_e_inverse(A2, m):
    base = SuppTauRigidPair.of(m["S2"])
    pairs = support_tau_rigid_pairs(A2)
    assert pair_key(A2, e_inverse(base, WidePair((), ()), pairs)) == pair_key(A2, base)
    back = e_inverse(base, WidePair((m["S1"],), ()), pairs)
    assert pair_key(A2, back) == pair_key(A2, SuppTauRigidPair.of(direct_sum([m["P1"], m["S2"]])))


def test_supp_tau_rigid_in_wide(A2, m):
    W = j_perp(SuppTauRigidPair.of(m["S1"]))
    P1 = m["P1"]
    assert supp_tau_rigid_in_wide(W, WidePair((), ()), cross_check=True)
    assert supp_tau_rigid_in_wide(W, WidePair((P1,), ()), cross_check=True)
    assert supp_tau_rigid_in_wide(W, WidePair((), (P1,)), cross_check=True)
    assert not supp_tau_rigid_in_wide(W, WidePair((P1,), (P1,)), cross_check=True)


def test_wide_of_whole_category_agrees_with_ambient(A2, m):
    W = j_perp(SuppTauRigidPair.of(m["0"]))
    for p in support_tau_rigid_pairs(A2):
        wp = WidePair(tuple(p.summands), tuple(projective_module(A2, v) for v in p.projectives))
        assert supp_tau_rigid_in_wide(W, wp) == is_supp_tau_rigid(p)


def test_h_prime(A2, m):
    S1cx = two_term(A2, [1], [0], [[{2: 1}]])
    P1 = stalk(A2, [0], 0)
    # reducer 0 gives the ordinary h_map
    X = complex_sum([S1cx, P1])
    assert h_prime(zero_complex(A2), X).key() == WidePair(tuple(h_map(X).summands), ()).key()
    # the Bongartz complement goes to the projective generator of J = add P1
    T = bongartz_completion(S1cx)
    assert dims(h_prime(S1cx, phi_reduce(S1cx, T))) == ([(1, 1)], [])
    # the shifted complement goes to the shifted relative projective
    assert dims(h_prime(S1cx, stalk(A2, [1], -1))) == ([], [(1, 1)])


def test_reduction_square_rows(A2):
    ind = indecomposable_presilting(A2)
    objs = [basic_sum([ind[i] for i in c], A2) for c in presilting_cliques(ind)]
    zero = verify_reduction_square(zero_complex(A2), objs)
    assert zero.passed and len(zero.rows) == len(objs)
    S1cx = two_term(A2, [1], [0], [[{2: 1}]])
    rep = verify_reduction_square(S1cx, objs)
    assert rep.passed and len(rep.rows) == 3
    assert rep.to_json()["passed"] is True


def test_reduction_square_a3_indecomposable_reducers(A3):
    ind = indecomposable_presilting(A3)
    objs = [basic_sum([ind[i] for i in c], A3) for c in presilting_cliques(ind)]
    for P in ind:
        assert verify_reduction_square(P, objs).passed
