"""tau-tilting reduction.

For a support tau-rigid pair (M, Q) with Bongartz completion (M+, Q) the
perpendicular category J(M, Q) is equivalent to mod C, C = End(M+)/[M], via
F = Hom(M+, -) and G = - (x)_C M+.  This module builds C, F and G, the
reduction map E on pairs and the comparison with silting reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import BasedAlgebra, EndAlgebra, QuotientAlgebra, endomorphism_algebra, quotient_by_ideal
from .errors import InputError, VerificationError
from .exactlinalg import ONE, ZERO, RatMatrix, Subspace, solve
from .fdmodules import (
    FdModule,
    ModuleMap,
    SuppTauRigidPair,
    decompose,
    direct_sum,
    ext1_dim,
    gen_membership,
    hom_basis,
    hom_dim,
    is_supp_tau_rigid,
    projective_module,
    quotient,
    registry_for,
    simple_module,
    summand_hom_data,
    tau,
    torsion_free_quotient,
    zero_module,
)
from .twoterm import (
    ProjComplex,
    basic_summands,
    bongartz_completion,
    cocone,
    complex_key,
    complex_summands,
    h0,
    h_inverse,
    h_map,
    minimize,
    phi_reduce,
    presentation_complex,
    right_approximation,
    stalk,
)


def f_quotient(M: FdModule, X: FdModule) -> FdModule:
    if M.dim == 0 or X.dim == 0:
        return X
    return torsion_free_quotient(M, X)[0]


def indecomposables_of(X: FdModule) -> List[FdModule]:
    out = []
    for Y, mult in decompose(X):
        out.extend([Y] * mult)
    return out


# ---------------------------------------------------------------------------
# pairs inside a perpendicular category


@dataclass(frozen=True)
class WidePair:
    """A pair of objects of J(M, Q): modules U and relative projectives R, both as lists of indecomposables."""

    modules: Tuple[FdModule, ...]
    projectives: Tuple[FdModule, ...]

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        if not self.modules and not self.projectives:
            return ((), ())
        alg = (self.modules or self.projectives)[0].alg
        reg = registry_for(alg)
        return (tuple(sorted(reg.index(X) for X in self.modules)), tuple(sorted(reg.index(X) for X in self.projectives)))

    def __add__(self, other: "WidePair") -> "WidePair":
        return WidePair(self.modules + other.modules, self.projectives + other.projectives)

    def size(self) -> int:
        return len(self.modules) + len(self.projectives)


EMPTY = WidePair((), ())


def pair_key(alg: BasedAlgebra, pair: SuppTauRigidPair) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    reg = registry_for(alg)
    return (tuple(sorted(reg.index(X) for X in pair.summands)), tuple(sorted(pair.projectives)))


def as_wide_pair(pair: SuppTauRigidPair) -> WidePair:
    alg = pair.alg
    return WidePair(tuple(pair.summands), tuple(projective_module(alg, v) for v in pair.projectives))


# ---------------------------------------------------------------------------
# Bongartz completion of pairs


def bongartz_pair(pair: SuppTauRigidPair) -> SuppTauRigidPair:
    """(M+, Q) computed through the silting side."""
    if not is_supp_tau_rigid(pair):
        raise InputError("Bongartz completion needs a support tau-rigid pair")
    return h_map(bongartz_completion(h_inverse(pair)))


# ---------------------------------------------------------------------------
# the perpendicular category and its algebra


class WideSubcat:
    """J(M, Q) together with C = End(M+)/[M] and the functors F and G."""

    def __init__(self, pair: SuppTauRigidPair):
        alg = pair.alg
        self.ambient = alg
        self.pair = pair
        reg = registry_for(alg)
        plus = bongartz_pair(pair)
        m_ids = {reg.index(X) for X in pair.summands}
        summands = list(plus.summands)
        # summands outside add(M) first so they become the vertices of C
        summands.sort(key=lambda X: (reg.index(X) in m_ids, reg.index(X)))
        self.summands = summands
        self.in_m = [reg.index(X) in m_ids for X in summands]
        self.bongartz = plus
        r = len(summands)
        hd = summand_hom_data(summands)
        self.end: EndAlgebra = endomorphism_algebra(hd)
        E = self.end.algebra
        ideal = []
        for m in range(r):
            if not self.in_m[m]:
                continue
            for s in range(r):
                for t in range(r):
                    for a in E.piece(s, m):
                        for b in E.piece(m, t):
                            prod = E.mul({a: ONE}, {b: ONE})
                            if prod:
                                ideal.append(E.to_vector(prod))
        self.quotient: QuotientAlgebra = quotient_by_ideal(E, ideal)
        self.C: BasedAlgebra = self.quotient.algebra
        self.vertex_summand = list(self.quotient.kept_vertices)  # C vertex -> summand index
        self._map_cache: Dict[int, ModuleMap] = {}
        self._key = None
        self._projectives = None

    # -- maps realizing the algebra ------------------------------------------
    def _end_map(self, k: int) -> ModuleMap:
        hit = self._map_cache.get(k)
        if hit is None:
            s, t = self.end.piece_of[k]
            hit = ModuleMap.from_flat(self.summands[t], self.summands[s], self.end.maps[k])
            self._map_cache[k] = hit
        return hit

    # -- membership ------------------------------------------------------------
    def contains(self, X: FdModule) -> bool:
        M = self.pair.module
        if any(X.dims[i] for i in self.pair.projectives):
            return False
        if M.dim == 0:
            return True
        return hom_dim(M, X) == 0 and hom_dim(X, tau(M)) == 0

    # -- F and G ---------------------------------------------------------------
    def F(self, X: FdModule) -> FdModule:
        """Hom(M+, X) as a right C-module (X must lie in M-perp)."""
        C = self.C
        bases = [hom_basis(self.summands[s], X) for s in self.vertex_summand]
        dims = [len(b) for b in bases]
        act = {}
        for k in C.radical:
            j, jj = C.src[k], C.tgt[k]
            f = self._end_map(self.quotient.representatives[k])
            target = bases[jj]
            if not dims[j] or not dims[jj]:
                continue
            mat = RatMatrix.from_columns([g.flat() for g in target], len(target[0].flat()))
            cols = []
            for h in bases[j]:
                c = solve(mat, (h @ f).flat())
                if c is None:
                    raise VerificationError("Hom(M+, X) is not closed under the C-action")
                cols.append(c)
            act[k] = RatMatrix.from_columns(cols, dims[jj])
        return FdModule(C, dims, act)

    def G(self, N: FdModule) -> FdModule:
        """N (x)_C M+ as an A-module."""
        if N.alg is not self.C:
            raise InputError("G expects a module over the reduced algebra")
        E = self.end.algebra
        alg = self.ambient
        pieces = []
        offsets = {}
        pos = [0] * alg.n
        for j, s in enumerate(self.vertex_summand):
            X = self.summands[s]
            for n in range(N.dims[j]):
                offsets[(j, n)] = list(pos)
                pieces.append(X)
                for i in range(alg.n):
                    pos[i] += X.dims[i]
        V = direct_sum(pieces, alg)
        if V.dim == 0:
            return zero_module(alg)
        cvert = {s: j for j, s in enumerate(self.vertex_summand)}
        rels: List[List[List[Fraction]]] = [[] for _ in range(alg.n)]
        for c in E.radical:
            s, t = self.end.piece_of[c]
            if s not in cvert:
                continue
            js = cvert[s]
            jt = cvert.get(t)
            f = self._end_map(c)  # X_t -> X_s
            image = self.quotient.projection[c]
            for n in range(N.dims[js]):
                e = [ZERO] * N.dims[js]
                e[n] = ONE
                nc = [ZERO] * (N.dims[jt] if jt is not None else 0)
                for k, coeff in image.items():
                    if jt is None:
                        break
                    w = N.action(k).apply(e)
                    nc = [a + coeff * b for a, b in zip(nc, w)]
                Xt = self.summands[t]
                for i in range(alg.n):
                    for x in range(Xt.dims[i]):
                        vec = [ZERO] * V.dims[i]
                        # (n.c) (x) x
                        if jt is not None:
                            for m, val in enumerate(nc):
                                if val:
                                    vec[offsets[(jt, m)][i] + x] += val
                        # - n (x) c(x)
                        ex = [ZERO] * Xt.dims[i]
                        ex[x] = ONE
                        cx = f.blocks[i].apply(ex)
                        base = offsets[(js, n)][i]
                        for y, val in enumerate(cx):
                            if val:
                                vec[base + y] -= val
                        if any(vec):
                            rels[i].append(vec)
        spaces = [Subspace(V.dims[i], rels[i]) for i in range(alg.n)]
        return quotient(V, spaces)[0]

    # -- structure -----------------------------------------------------------
    def rank(self) -> int:
        return self.C.n

    def simples(self) -> List[FdModule]:
        return [self.G(simple_module(self.C, j)) for j in range(self.C.n)]

    def relative_projectives(self) -> List[FdModule]:
        """G(e_j C): the Ext-projective generators of J."""
        if self._projectives is None:
            self._projectives = [self.G(projective_module(self.C, j)) for j in range(self.C.n)]
        return self._projectives

    def key(self) -> Tuple[int, ...]:
        """Sorted isomorphism-class ids of the simple objects."""
        if self._key is None:
            reg = registry_for(self.ambient)
            self._key = tuple(sorted(reg.index(S) for S in self.simples()))
        return self._key

    def projective_vertex(self, R: FdModule) -> Optional[int]:
        """Vertex j of C with G(e_j C) isomorphic to the indecomposable R, if any."""
        reg = registry_for(self.ambient)
        rid = reg.index(R)
        for j, P in enumerate(self.relative_projectives()):
            if reg.index(P) == rid:
                return j
        return None

    def to_c_pair(self, wp: WidePair) -> Optional[SuppTauRigidPair]:
        """(F U, F R) as a pair over C; None if R is not relative projective."""
        verts = []
        for R in wp.projectives:
            j = self.projective_vertex(R)
            if j is None:
                return None
            verts.append(j)
        mods = [self.F(U) for U in wp.modules]
        return SuppTauRigidPair(tuple(mods), tuple(sorted(verts)), self.C)

    def from_c_pair(self, pair: SuppTauRigidPair) -> WidePair:
        return WidePair(
            tuple(self.G(U) for U in pair.summands),
            tuple(self.relative_projectives()[j] for j in pair.projectives),
        )


_WIDE_CACHE: Dict[tuple, WideSubcat] = {}


def j_perp(pair: SuppTauRigidPair) -> WideSubcat:
    key = (pair.alg.uid, pair_key(pair.alg, pair))
    hit = _WIDE_CACHE.get(key)
    if hit is None:
        hit = WideSubcat(pair)
        _WIDE_CACHE[key] = hit
    return hit


# ---------------------------------------------------------------------------
# support tau-rigid pairs in a perpendicular category


def supp_tau_rigid_in_wide(W: WideSubcat, wp: WidePair, cross_check: bool = False) -> bool:
    for X in wp.modules + wp.projectives:
        if not W.contains(X):
            raise InputError("object does not lie in the perpendicular category")
    cp = W.to_c_pair(wp)
    verdict = cp is not None and is_supp_tau_rigid(cp)
    if cross_check:
        intrinsic = intrinsic_supp_tau_rigid(W, wp)
        if intrinsic != verdict:
            raise VerificationError("C-side and intrinsic support tau-rigidity disagree")
    return verdict


def wide_indecomposables(W: WideSubcat) -> List[FdModule]:
    from .fdmodules import enumerate_indecomposables

    reg = enumerate_indecomposables(W.C, registry=registry_for(W.C))
    return [W.G(X) for X in reg.reps]


def intrinsic_supp_tau_rigid(W: WideSubcat, wp: WidePair) -> bool:
    """Ext-projectivity of R in W, Hom(R, U) = 0 and Ext^1(U, X) = 0 for X in W generated by U."""
    members = wide_indecomposables(W)
    reg = registry_for(W.ambient)
    ids = [reg.index(X) for X in wp.modules]
    if len(set(ids)) != len(ids):
        return False
    pids = [reg.index(X) for X in wp.projectives]
    if len(set(pids)) != len(pids):
        return False
    U = direct_sum(list(wp.modules), W.ambient)
    for R in wp.projectives:
        if any(ext1_dim(R, X) for X in members):
            return False
        if U.dim and hom_dim(R, U):
            return False
    if U.dim:
        for X in members:
            if gen_membership(U, X) and ext1_dim(U, X):
                return False
    return True


# ---------------------------------------------------------------------------
# the reduction map E


def _approx_cocone(P_M: ProjComplex, Y: ProjComplex) -> ProjComplex:
    parts = basic_summands(P_M) if not P_M.is_zero() else []
    appr = right_approximation(parts, Y)
    R = minimize(cocone(appr.chain, appr.source, Y))
    if not R.is_two_term():
        raise VerificationError("approximation cocone left the two-term window")
    return R


def e_case_module(M: FdModule, X: FdModule) -> WidePair:
    """Cases I(a) and I(b): X indecomposable, M + X tau-rigid, X not in add(M)."""
    if M.dim == 0:
        return WidePair((X,), ())
    if not gen_membership(M, X):
        fx = f_quotient(M, X)
        return WidePair(tuple(indecomposables_of(fx)), ())
    R = _approx_cocone(presentation_complex(M), presentation_complex(X))
    return WidePair((), tuple(indecomposables_of(f_quotient(M, h0(R)))))


def e_case_shifted(M: FdModule, v: int) -> WidePair:
    """Case I(c): the shifted projective P_v with Hom(P_v, M) = 0."""
    alg = M.alg
    if M.dims[v]:
        raise InputError("Case I(c) needs Hom(R, M) = 0")
    if M.dim == 0:
        return WidePair((), (projective_module(alg, v),))
    SR = stalk(alg, [v], -1)
    C = _approx_cocone(presentation_complex(M), SR)
    return WidePair((), tuple(indecomposables_of(f_quotient(M, h0(C)))))


def e_case_projective(Q: FdModule, wp: WidePair) -> WidePair:
    """Cases II(a) and II(b) for a projective reducer Q."""
    for X in wp.modules:
        if Q.dim and hom_dim(Q, X):
            raise InputError("Case II needs Hom(Q, X) = 0")
    projs = []
    for R in wp.projectives:
        projs.extend(indecomposables_of(f_quotient(Q, R)))
    return WidePair(tuple(wp.modules), tuple(projs))


def _e_module_side(M: FdModule, wp_mod: Sequence[FdModule], wp_proj_verts: Sequence[int]) -> WidePair:
    out = EMPTY
    for X in wp_mod:
        out = out + e_case_module(M, X)
    for v in wp_proj_verts:
        out = out + e_case_shifted(M, v)
    return out


def e_reduce(base: SuppTauRigidPair, target: SuppTauRigidPair) -> WidePair:
    """E_{(M,Q)} applied to the complement of (M, Q) in ``target``."""
    alg = base.alg
    reg = registry_for(alg)
    m_ids = {reg.index(X) for X in base.summands}
    q_set = set(base.projectives)
    extra_mods = [X for X in target.summands if reg.index(X) not in m_ids]
    extra_proj = [v for v in target.projectives if v not in q_set]
    if len(extra_mods) + len(m_ids) != len(target.summands) or len(extra_proj) + len(q_set) != len(target.projectives):
        raise InputError("target pair does not contain the reducing pair")
    M = base.module
    if not base.projectives:
        return _e_module_side(M, extra_mods, extra_proj)
    if M.dim == 0:
        Q = base.projective
        return e_case_projective(Q, WidePair(tuple(extra_mods), tuple(projective_module(alg, v) for v in extra_proj)))
    # general case: psi = F o E_{(M,0)}, then Case II over C_{(M,0)}, then back
    W0 = j_perp(SuppTauRigidPair(tuple(base.summands), (), alg))
    step = _e_module_side(M, extra_mods, extra_proj)
    qstep = _e_module_side(M, [], sorted(q_set))
    Qc = direct_sum([W0.F(R) for R in qstep.projectives], W0.C)
    c_mods = [W0.F(X) for X in step.modules]
    c_projs = [W0.F(R) for R in step.projectives]
    reduced = e_case_projective(Qc, WidePair(tuple(c_mods), tuple(c_projs)))
    mods = []
    for U in reduced.modules:
        mods.extend(indecomposables_of(W0.G(U)))
    projs = []
    for R in reduced.projectives:
        projs.extend(indecomposables_of(W0.G(R)))
    return WidePair(tuple(mods), tuple(projs))


def stau_rigid_completions(base: SuppTauRigidPair, all_pairs: Sequence[SuppTauRigidPair]) -> List[SuppTauRigidPair]:
    """Pairs from ``all_pairs`` containing ``base``."""
    alg = base.alg
    bk = pair_key(alg, base)
    out = []
    for p in all_pairs:
        pk = pair_key(alg, p)
        if set(bk[0]) <= set(pk[0]) and set(bk[1]) <= set(pk[1]):
            out.append(p)
    return out


def e_inverse(base: SuppTauRigidPair, reduced: WidePair, all_pairs: Sequence[SuppTauRigidPair]) -> SuppTauRigidPair:
    """Unique pair containing ``base`` whose reduction is ``reduced``."""
    want = reduced.key()
    hits = [p for p in stau_rigid_completions(base, all_pairs) if e_reduce(base, p).key() == want]
    if len(hits) != 1:
        raise VerificationError(f"reduced pair has {len(hits)} preimages, expected exactly one")
    return hits[0]


# ---------------------------------------------------------------------------
# comparison with silting reduction


def _is_shifted_bongartz_summand(P: ProjComplex, T_keys: set, Z: ProjComplex) -> Tuple[bool, Optional[ProjComplex]]:
    R = _approx_cocone(P, Z)
    rest = phi_reduce(P, R)
    if rest.is_zero():
        return False, None
    if all(complex_key(C) in T_keys for C in complex_summands(rest)):
        return True, rest
    return False, None


def h_prime(P: ProjComplex, Y: ProjComplex, T_P: Optional[ProjComplex] = None) -> WidePair:
    """(f(H^0 Y_0), f(H^0 Y_1)) where Y = Y_0 + Y_1<1> with Y_1 in add(T_P)."""
    alg = Y.alg
    H0P = h0(P) if not P.is_zero() else zero_module(alg)
    if T_P is None:
        T_P = bongartz_completion(P)
    T_keys = {complex_key(C) for C in complex_summands(T_P)}
    mods: List[FdModule] = []
    projs: List[FdModule] = []
    for Z in complex_summands(Y):
        fz = f_quotient(H0P, h0(Z))
        if fz.dim:
            mods.extend(indecomposables_of(fz))
            continue
        shifted, Y1 = _is_shifted_bongartz_summand(P, T_keys, Z)
        if not shifted:
            raise VerificationError("summand with vanishing torsion-free part is not in add(T_P)<1>")
        projs.extend(indecomposables_of(f_quotient(H0P, h0(Y1))))
    return WidePair(tuple(mods), tuple(projs))


@dataclass
class ReductionSquareRow:
    complex_key: tuple
    via_silting: tuple
    via_modules: tuple
    ok: bool


@dataclass
class ReductionSquareReport:
    reducer: tuple
    rows: List[ReductionSquareRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {
            "reducer": [list(x) for x in self.reducer],
            "passed": self.passed,
            "rows": [
                {
                    "complex": [list(x) for x in r.complex_key],
                    "via_silting": [list(x) for x in r.via_silting],
                    "via_modules": [list(x) for x in r.via_modules],
                    "ok": r.ok,
                }
                for r in self.rows
            ],
        }


def verify_reduction_square(P: ProjComplex, presilting: Sequence[ProjComplex]) -> ReductionSquareReport:
    """Compare h_prime(P, phi_P X) with E(h_map P, h_map X) for every X containing P.

    ``presilting`` lists the basic presilting complexes to scan."""
    report = ReductionSquareReport(complex_key(P))
    T_P = bongartz_completion(P)
    base = h_map(P)
    pkeys = {complex_key(C) for C in complex_summands(P)} if not P.is_zero() else set()
    for X in presilting:
        xkeys = {complex_key(C) for C in complex_summands(X)} if not X.is_zero() else set()
        if not pkeys <= xkeys:
            continue
        lhs = h_prime(P, phi_reduce(P, X), T_P).key()
        rhs = e_reduce(base, h_map(X)).key()
        report.rows.append(ReductionSquareRow(complex_key(X), lhs, rhs, lhs == rhs))
    return report
