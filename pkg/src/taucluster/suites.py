"""Verification suites run by ``taucluster verify``.

Each suite returns a CheckReport; ``run_all`` strings them together over one
algebra and shares the expensive enumerations between them.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, List, Optional

from .algebra import BasedAlgebra
from .fdmodules import support_tau_rigid_pairs
from .taured import (
    WidePair,
    e_reduce,
    intrinsic_supp_tau_rigid,
    j_perp,
    pair_key,
    stau_rigid_completions,
    verify_reduction_square,
    wide_indecomposables,
)
from .tcmc import (
    CheckReport,
    SiltingData,
    build_module_side,
    build_silting_side,
    check_associativity,
    check_composition_closure,
    check_equivalence,
    check_identities,
    check_k0_suite,
    check_order_isomorphism,
    check_realization_independence,
    check_sequence_bijection,
)
from .twoterm import h_map


def check_h_bijection(data: SiltingData, max_ind: int = 200) -> CheckReport:
    """H sends basic presilting complexes bijectively onto support tau-rigid pairs."""
    rep = CheckReport("h_bijection")
    alg = data.alg
    images = [pair_key(alg, h_map(data.complex(c))) for c in data.cliques]
    oracle = {pair_key(alg, p) for p in support_tau_rigid_pairs(alg, cap=max_ind)}
    rep.checked = len(images)
    if len(set(images)) != len(images):
        rep.fail("two presilting complexes have the same image")
    if set(images) != oracle:
        rep.fail(f"image has {len(set(images))} pairs, enumeration has {len(oracle)}")
    return rep


def check_exchange_graph(data: SiltingData) -> CheckReport:
    """Nodes are silting, the mutation graph is connected, and the order matches Gen inclusion."""
    rep = CheckReport("exchange_graph")
    g = data.graph
    for key, T in g.nodes.items():
        rep.checked += 1
        if len(T) != data.alg.n:
            rep.fail(f"node {key} has {len(T)} summands")
    adj: Dict[tuple, set] = {k: set() for k in g.nodes}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = set(), [next(iter(g.nodes))] if g.nodes else []
    while stack:
        k = stack.pop()
        if k not in seen:
            seen.add(k)
            stack.extend(adj[k] - seen)
    if seen != set(g.nodes):
        rep.fail("mutation graph is disconnected")
    if any(len(adj[k]) != data.alg.n for k in g.nodes):
        rep.fail("some silting complex does not have exactly n neighbours")
    order = check_order_isomorphism(data.alg, g)
    rep.checked += order.checked
    rep.failures.extend(order.failures)
    return rep


def check_reduction_squares(data: SiltingData) -> CheckReport:
    rep = CheckReport("reduction_square")
    objs = [data.complex(c) for c in data.cliques]
    for P in objs:
        square = verify_reduction_square(P, objs)
        rep.checked += len(square.rows)
        for row in square.rows:
            if not row.ok:
                rep.fail(f"reducer {square.reducer}, object {row.complex_key}: {row.via_silting} vs {row.via_modules}")
    return rep


def intrinsic_pairs(W, rank: int) -> List[tuple]:
    """Keys of all basic pairs in W passing the intrinsic support tau-rigidity test."""
    mods = wide_indecomposables(W)
    projs = W.relative_projectives()
    items = [("m", X) for X in mods] + [("p", R) for R in projs]

    def pair(sel):
        return WidePair(tuple(X for t, X in sel if t == "m"), tuple(X for t, X in sel if t == "p"))

    single = [intrinsic_supp_tau_rigid(W, pair([it])) for it in items]
    ok2 = {}
    for i, j in itertools.combinations(range(len(items)), 2):
        ok2[(i, j)] = single[i] and single[j] and intrinsic_supp_tau_rigid(W, pair([items[i], items[j]]))
    found = [WidePair((), ()).key()]

    def extend(chosen, start):
        for j in range(start, len(items)):
            if not single[j] or not all(ok2[(i, j)] for i in chosen):
                continue
            c = chosen + (j,)
            if len(c) > 2 and not intrinsic_supp_tau_rigid(W, pair([items[i] for i in c])):
                continue
            found.append(pair([items[i] for i in c]).key())
            if len(c) < rank:
                extend(c, j + 1)

    extend((), 0)
    return found


def check_e_bijectivity(alg: BasedAlgebra, max_ind: int = 200) -> CheckReport:
    """For every pair p, E_p maps pairs containing p bijectively onto pairs of J(p)."""
    rep = CheckReport("e_bijectivity")
    pairs = support_tau_rigid_pairs(alg, cap=max_ind)
    for p in pairs:
        W = j_perp(p)
        images = [e_reduce(p, r).key() for r in stau_rigid_completions(p, pairs)]
        rep.checked += len(images)
        if len(set(images)) != len(images):
            rep.fail(f"E is not injective for {pair_key(alg, p)}")
        target = intrinsic_pairs(W, W.rank())
        if len(set(target)) != len(target) or set(images) != set(target):
            rep.fail(f"E image for {pair_key(alg, p)} has {len(set(images))} pairs, J has {len(set(target))}")
    return rep


def check_categories(alg: BasedAlgebra, max_ind: int = 200, max_mut: int = 10000) -> List[CheckReport]:
    ms = build_module_side(alg, max_ind=max_ind)
    ss = build_silting_side(alg, max_mut=max_mut)
    out = []
    for cat in (ms.graph, ss.graph):
        for check in (check_composition_closure, check_identities, check_associativity):
            r = check(cat)
            r.name = f"{cat.kind}.{r.name}"
            out.append(r)
    out.append(check_realization_independence(ms, max_ind))
    out.append(check_equivalence(ms.graph, ss.graph))
    return out


def run_all(alg: BasedAlgebra, max_ind: int = 200, max_mut: int = 10000, only: Optional[List[str]] = None) -> List[CheckReport]:
    """Every suite on one algebra, in a fixed order."""
    data = SiltingData(alg, max_mut=max_mut)
    suites: Dict[str, Callable[[], List[CheckReport]]] = {
        "h_bijection": lambda: [check_h_bijection(data, max_ind)],
        "exchange_graph": lambda: [check_exchange_graph(data)],
        "reduction_square": lambda: [check_reduction_squares(data)],
        "e_bijectivity": lambda: [check_e_bijectivity(alg, max_ind)],
        "categories": lambda: check_categories(alg, max_ind, max_mut),
        "sequences": lambda: [check_sequence_bijection(alg, t, data, max_ind) for t in range(alg.n + 1)],
        "k0": lambda: [check_k0_suite(alg, data)],
    }
    out = []
    for name, run in suites.items():
        if only and name not in only:
            continue
        out.extend(run())
    return out


SUITE_NAMES = ("h_bijection", "exchange_graph", "reduction_square", "e_bijectivity", "categories", "sequences", "k0")
