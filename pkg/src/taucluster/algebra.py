"""Finite-dimensional based algebras.

A :class:`BasedAlgebra` has a basis whose first ``n`` elements are a complete
set of primitive orthogonal idempotents ``e_0 .. e_{n-1}``.  Every other basis
element ``b`` is homogeneous: ``b = e_s b e_t`` for a unique pair ``(s, t)``
and the non-idempotent basis elements span the Jacobson radical.  Path
algebras, endomorphism algebras of basic modules and their quotients all fit
this shape.

Conventions: paths compose left to right, so an arrow ``a: i -> j`` lies in
``e_i A e_j`` and acts on a right module as a linear map ``M_i -> M_j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactlinalg import ONE, ZERO, RatMatrix, Subspace, kernel_basis, solve, to_q
from .errors import InputError, SplitBasicError

Element = Dict[int, Fraction]

_SERIAL = itertools.count()


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("vertex labels must be unique")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("arrow labels must be unique")
        if set(names) & set(self.vertices):
            raise InputError("arrow and vertex labels must differ")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise InputError(f"arrow {name} references an unknown vertex")

    def arrow(self, name: str) -> Tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise InputError(f"unknown arrow {name}")


@dataclass(frozen=True)
class MonomialPresentation:
    quiver: Quiver
    relations: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) < 2:
                raise InputError(f"relation {rel} must have length at least 2")
            for a, b in zip(rel, rel[1:]):
                if self.quiver.arrow(a)[2] != self.quiver.arrow(b)[1]:
                    raise InputError(f"relation {'*'.join(rel)} is not a composable path")


class BasedAlgebra:
    """Basis, structure constants and idempotents of a split basic algebra."""

    def __init__(
        self,
        n_vertices: int,
        labels: Sequence[str],
        src: Sequence[int],
        tgt: Sequence[int],
        radical_products: Dict[Tuple[int, int], Element],
        generators: Optional[Sequence[int]] = None,
        vertex_labels: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        self.uid = next(_SERIAL)  # stable cache key, never reused
        self.n = n_vertices
        self.dim = len(labels)
        self.labels = tuple(labels)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.vertex_labels = tuple(vertex_labels) if vertex_labels else tuple(str(i + 1) for i in range(self.n))
        for i in range(self.n):
            if self.src[i] != i or self.tgt[i] != i:
                raise ValueError("the first basis elements must be the idempotents in order")
        self.table: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
        for k in range(self.dim):
            s, t = self.src[k], self.tgt[k]
            self.table[(s, k)] = ((k, ONE),)
            self.table[(k, t)] = ((k, ONE),)
        for (k, l), val in radical_products.items():
            if k < self.n or l < self.n:
                continue
            items = tuple(sorted((m, to_q(c)) for m, c in val.items() if c))
            if items:
                self.table[(k, l)] = items
        self.pieces: Dict[Tuple[int, int], List[int]] = {}
        for k in range(self.dim):
            self.pieces.setdefault((self.src[k], self.tgt[k]), []).append(k)
        self.radical = [k for k in range(self.n, self.dim)]
        self.generators = tuple(generators) if generators is not None else self._minimal_generators()
        self._trace_radical: Optional[Subspace] = None
        if validate:
            self.validate()

    # -- basic arithmetic --------------------------------------------------
    def piece(self, s: int, t: int) -> List[int]:
        """Basis indices spanning e_s A e_t."""
        return self.pieces.get((s, t), [])

    def mul_basis(self, k: int, l: int) -> Tuple[Tuple[int, Fraction], ...]:
        return self.table.get((k, l), ())

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for k, a in x.items():
            for l, b in y.items():
                for m, c in self.table.get((k, l), ()):
                    v = out.get(m, ZERO) + a * b * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def _minimal_generators(self) -> Tuple[int, ...]:
        # radical basis elements spanning rad modulo rad^2 generate rad
        span = Subspace(self.dim, [self._products_vector(k, l) for k in self.radical for l in self.radical if (k, l) in self.table])
        gens = []
        for k in self.radical:
            e = [ONE if j == k else ZERO for j in range(self.dim)]
            if not span.contains(e):
                gens.append(k)
                span = span + Subspace(self.dim, [e])
        return tuple(gens)

    def _products_vector(self, k: int, l: int) -> List[Fraction]:
        v = [ZERO] * self.dim
        for m, c in self.table.get((k, l), ()):
            v[m] = c
        return v

    def unit(self) -> Element:
        return {i: ONE for i in range(self.n)}

    def idempotent(self, i: int) -> Element:
        return {i: ONE}

    @property
    def idempotents(self) -> List[List[Fraction]]:
        return [[ONE if k == i else ZERO for k in range(self.dim)] for i in range(self.n)]

    def to_vector(self, x: Element) -> List[Fraction]:
        v = [ZERO] * self.dim
        for k, c in x.items():
            v[k] = c
        return v

    def from_vector(self, v: Sequence[Fraction]) -> Element:
        return {k: to_q(c) for k, c in enumerate(v) if c}

    # -- validation ----------------------------------------------------------
    def validate(self) -> None:
        for k, l in self.table:
            if self.tgt[k] != self.src[l]:
                raise ValueError(f"nonzero product of non-composable basis elements {k},{l}")
            for m, _ in self.table[(k, l)]:
                if (self.src[m], self.tgt[m]) != (self.src[k], self.tgt[l]):
                    raise ValueError("structure constants are not graded by the idempotents")
        self._check_associative()
        self._check_idempotents()
        self._check_radical()

    def _check_associative(self) -> None:
        rad = self.radical
        for a in rad:
            for b in rad:
                if self.tgt[a] != self.src[b] or (a, b) not in self.table:
                    continue
                ab = dict(self.table[(a, b)])
                for c in rad:
                    if self.tgt[b] != self.src[c]:
                        continue
                    left = self.mul(ab, {c: ONE})
                    right = self.mul({a: ONE}, dict(self.table.get((b, c), ())))
                    if left != right:
                        raise ValueError(f"multiplication is not associative on ({a},{b},{c})")

    def _check_idempotents(self) -> None:
        for i in range(self.n):
            for j in range(self.n):
                prod = self.mul({i: ONE}, {j: ONE})
                if prod != ({i: ONE} if i == j else {}):
                    raise ValueError("idempotents are not orthogonal")
        one = self.unit()
        for k in range(self.dim):
            if self.mul(one, {k: ONE}) != {k: ONE} or self.mul({k: ONE}, one) != {k: ONE}:
                raise ValueError("the idempotents do not sum to the identity")

    def _check_radical(self) -> None:
        rad = self.radical_basis()
        expected = Subspace(self.dim, [[ONE if k == r else ZERO for k in range(self.dim)] for r in self.radical])
        if rad != expected:
            bad = [i for i in range(self.n) if len(self.piece(i, i)) - sum(
                1 for k in self.piece(i, i) if k >= self.n) != 1]
            raise SplitBasicError(
                "the radical is not spanned by the non-idempotent basis elements"
                + (f" (vertex {bad[0]})" if bad else "")
            )
        # nilpotency: products of radical elements eventually vanish
        layer = set(self.radical)
        for _ in range(self.dim + 1):
            nxt = set()
            for a in layer:
                for b in self.radical:
                    for m, _ in self.table.get((a, b), ()):
                        nxt.add(m)
            if not nxt:
                return
            layer = nxt
        raise SplitBasicError("radical candidate is not nilpotent")

    def trace_vector(self) -> List[Fraction]:
        """tr(L_m) for every basis element m."""
        t = []
        for m in range(self.dim):
            acc = ZERO
            for k in range(self.dim):
                for r, c in self.table.get((m, k), ()):
                    if r == k:
                        acc += c
            t.append(acc)
        return t

    def radical_basis(self) -> Subspace:
        """Jacobson radical as the kernel of the trace form (characteristic 0)."""
        if self._trace_radical is None:
            t = self.trace_vector()
            form = [[ZERO] * self.dim for _ in range(self.dim)]
            for (k, l), items in self.table.items():
                form[k][l] = sum((c * t[m] for m, c in items), ZERO)
            self._trace_radical = kernel_basis(RatMatrix(form, self.dim))
        return self._trace_radical

    # -- derived structures ----------------------------------------------
    def opposite(self) -> "BasedAlgebra":
        prods = {(l, k): dict(items) for (k, l), items in self.table.items() if k >= self.n and l >= self.n}
        return BasedAlgebra(
            self.n,
            [lab + "^op" if k >= self.n else lab for k, lab in enumerate(self.labels)],
            self.tgt,
            self.src,
            prods,
            generators=self.generators,
            vertex_labels=self.vertex_labels,
            validate=False,
        )

    def cartan(self) -> List[List[int]]:
        """C[k][l] = dim e_l A e_k = dim Hom(P_k, P_l) = dim of P_l at vertex k."""
        return [[len(self.piece(l, k)) for l in range(self.n)] for k in range(self.n)]

    def is_hereditary(self) -> bool:
        # global dimension <= 1: radicals of projectives are projective
        from .fdmodules import projective_module, radical_submodule, is_projective

        return all(is_projective(radical_submodule(projective_module(self, i))) for i in range(self.n))

    def describe(self) -> str:
        return f"BasedAlgebra(dim {self.dim}, {self.n} vertices)"

    def __repr__(self) -> str:
        return self.describe()


class PathAlgebra(BasedAlgebra):
    """Monomial bound quiver algebra with basis the relation-free paths."""

    def __init__(self, pres: MonomialPresentation, paths: List[Tuple[str, ...]], starts, ends):
        self.presentation = pres
        self.paths = paths
        index = {p: k for k, p in enumerate(paths)}
        self.path_index = index
        q = pres.quiver
        vidx = {v: i for i, v in enumerate(q.vertices)}
        n = len(q.vertices)
        labels = [f"e{q.vertices[i]}" for i in range(n)] + ["*".join(p) for p in paths[n:]]
        prods = {}
        for k in range(n, len(paths)):
            for l in range(n, len(paths)):
                if ends[k] != starts[l]:
                    continue
                cat = paths[k] + paths[l]
                if cat in index:
                    prods[(k, l)] = {index[cat]: ONE}
        gens = [index[(a[0],)] for a in q.arrows if (a[0],) in index]
        super().__init__(n, labels, starts, ends, prods, generators=gens, vertex_labels=list(q.vertices))
        self.arrow_index = {a[0]: index[(a[0],)] for a in q.arrows if (a[0],) in index}
        self.vertex_index = vidx


def build_path_algebra(pres: MonomialPresentation) -> PathAlgebra:
    """Path algebra of a quiver modulo monomial relations."""
    q = pres.quiver
    vidx = {v: i for i, v in enumerate(q.vertices)}
    arrows = {a[0]: (vidx[a[1]], vidx[a[2]]) for a in q.arrows}
    rels = set(pres.relations)
    maxrel = max((len(r) for r in rels), default=1)
    # a relation-free path longer than this bound runs through a repeated
    # automaton state and can be pumped, so the algebra is infinite
    bound = (len(arrows) + 1) ** max(maxrel - 1, 1) + maxrel + len(q.vertices)
    paths: List[Tuple[str, ...]] = [() for _ in q.vertices]
    starts = list(range(len(q.vertices)))
    ends = list(range(len(q.vertices)))
    frontier = [((name,), s, t) for name, (s, t) in sorted(arrows.items(), key=lambda x: [a[0] for a in q.arrows].index(x[0]))]
    length = 1
    while frontier:
        if length > bound:
            raise InputError("the presentation defines an infinite-dimensional algebra")
        nxt = []
        for p, s, t in frontier:
            paths.append(p)
            starts.append(s)
            ends.append(t)
            for a in q.arrows:
                name = a[0]
                if arrows[name][0] != t:
                    continue
                cand = p + (name,)
                if any(cand[-len(r):] == r for r in rels if len(r) <= len(cand)):
                    continue
                nxt.append((cand, s, arrows[name][1]))
        frontier = nxt
        length += 1
    return PathAlgebra(pres, paths, starts, ends)


def path_algebra(vertices, arrows, relations=()) -> PathAlgebra:
    """Convenience constructor: ``arrows`` is a list of (name, source, target)."""
    quiver = Quiver(tuple(str(v) for v in vertices), tuple((str(a), str(s), str(t)) for a, s, t in arrows))
    return build_path_algebra(MonomialPresentation(quiver, tuple(tuple(r) for r in relations)))


def load_algebra_json(text: str) -> PathAlgebra:
    """Parse the algebra definition format
    ``{"vertices": [...], "arrows": [{"name","from","to"}...], "relations": [[...]...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("algebra file must be an object with a 'vertices' list")
    try:
        verts = [str(v) for v in data["vertices"]]
        arrows = [(str(a["name"]), str(a["from"]), str(a["to"])) for a in data.get("arrows", [])]
        rels = [tuple(str(x) for x in r) for r in data.get("relations", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra description: {exc}") from exc
    return path_algebra(verts, arrows, rels)


def algebra_to_json(alg: PathAlgebra) -> dict:
    q = alg.presentation.quiver
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a, "from": s, "to": t} for a, s, t in q.arrows],
        "relations": [list(r) for r in alg.presentation.relations],
    }


# ---------------------------------------------------------------------------
# endomorphism algebras and quotients


@dataclass
class HomData:
    """Hom-space bases between the summands X_0..X_{r-1} of a module.

    ``basis[(s, t)]`` lists maps X_t -> X_s as flat coordinate vectors,
    ``compose(s, t, u, f, g)`` returns the flat vector of f o g for
    f: X_t -> X_s and g: X_u -> X_t, and ``identity[s]`` is the identity of X_s.
    """

    count: int
    basis: Dict[Tuple[int, int], List[List[Fraction]]]
    compose: Callable[[int, int, int, List[Fraction], List[Fraction]], List[Fraction]]
    identity: List[List[Fraction]]
    names: Optional[List[str]] = None


@dataclass
class EndAlgebra:
    """An endomorphism algebra together with the maps realizing its basis."""

    algebra: BasedAlgebra
    maps: List[List[Fraction]]  # flat map for every basis element
    piece_of: List[Tuple[int, int]]


def _local_radical(hd: HomData, s: int) -> List[List[Fraction]]:
    """Radical of End(X_s) via the trace form; raises if End/rad is not k."""
    basis = hd.basis.get((s, s), [])
    d = len(basis)
    if d == 0:
        raise SplitBasicError(f"summand {s} has no endomorphisms")
    mat = RatMatrix.from_columns(basis, len(basis[0]))
    prods = {}
    for i in range(d):
        for j in range(d):
            v = hd.compose(s, s, s, basis[i], basis[j])
            c = solve(mat, v)
            if c is None:
                raise ValueError("Hom basis is not closed under composition")
            prods[(i, j)] = c
    trace = []
    for m in range(d):
        trace.append(sum(prods[(m, k)][k] for k in range(d)))
    form = [[sum(prods[(i, j)][m] * trace[m] for m in range(d)) for j in range(d)] for i in range(d)]
    rad = kernel_basis(RatMatrix(form, d))
    if rad.dim != d - 1:
        name = hd.names[s] if hd.names else str(s)
        raise SplitBasicError(
            f"End of summand {name} modulo its radical has dimension {d - rad.dim}, expected 1"
        )
    return [[sum(c * basis[i][x] for i, c in enumerate(row)) for x in range(len(basis[0]))] for row in rad.basis]


def endomorphism_algebra(hd: HomData, labels_prefix: str = "f") -> EndAlgebra:
    """End(X_0 + ... + X_{r-1}) with the summand projections as idempotents.

    The product of basis elements is composition: f * g = f o g, which makes
    Hom(X, -) a right module over the result."""
    r = hd.count
    maps: List[List[Fraction]] = []
    src: List[int] = []
    tgt: List[int] = []
    piece_of: List[Tuple[int, int]] = []
    labels: List[str] = []
    for s in range(r):
        maps.append(list(hd.identity[s]))
        src.append(s)
        tgt.append(s)
        piece_of.append((s, s))
        labels.append(f"e{s}")
    piece_basis: Dict[Tuple[int, int], List[int]] = {(s, s): [s] for s in range(r)}
    for s in range(r):
        for t in range(r):
            if s == t:
                vecs = _local_radical(hd, s)
            else:
                vecs = hd.basis.get((s, t), [])
            for v in vecs:
                k = len(maps)
                maps.append(list(v))
                src.append(s)
                tgt.append(t)
                piece_of.append((s, t))
                labels.append(f"{labels_prefix}{s}_{t}_{len(piece_basis.get((s, t), []))}")
                piece_basis.setdefault((s, t), []).append(k)
    solvers = {}
    for key, idx in piece_basis.items():
        solvers[key] = RatMatrix.from_columns([maps[k] for k in idx], len(maps[idx[0]]))
    prods: Dict[Tuple[int, int], Element] = {}
    for k in range(r, len(maps)):
        s, t = piece_of[k]
        for l in range(r, len(maps)):
            t2, u = piece_of[l]
            if t2 != t:
                continue
            v = hd.compose(s, t, u, maps[k], maps[l])
            if not any(v):
                continue
            key = (s, u)
            if key not in solvers:
                raise ValueError("composite lands outside the Hom basis")
            c = solve(solvers[key], v)
            if c is None:
                raise ValueError("Hom basis is not closed under composition")
            prods[(k, l)] = {piece_basis[key][i]: x for i, x in enumerate(c) if x}
    alg = BasedAlgebra(r, labels, src, tgt, prods)
    return EndAlgebra(alg, maps, piece_of)


@dataclass
class QuotientAlgebra:
    """Quotient algebra with the projection from the ambient algebra."""

    algebra: BasedAlgebra
    ambient: BasedAlgebra
    kept_vertices: List[int]  # ambient vertex of each quotient vertex
    representatives: List[int]  # ambient basis index of each quotient basis element
    projection: List[Element]  # image of each ambient basis element

    def project(self, x: Element) -> Element:
        out: Element = {}
        for k, a in x.items():
            for m, c in self.projection[k].items():
                v = out.get(m, ZERO) + a * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out


def quotient_by_ideal(alg: BasedAlgebra, ideal_gens: Sequence[Sequence[Fraction]]) -> QuotientAlgebra:
    """A / I for a two-sided ideal I spanned by ``ideal_gens``.

    I may contain whole idempotents (those vertices disappear); elsewhere it
    must lie in the radical so the remaining idempotents survive."""
    d = alg.dim
    gens = [list(map(to_q, v)) for v in ideal_gens]
    # split into homogeneous pieces e_s I e_t
    piece_vecs: Dict[Tuple[int, int], List[List[Fraction]]] = {}
    for v in gens:
        for (s, t), idx in alg.pieces.items():
            w = [v[k] if k in idx else ZERO for k in range(d)]
            if any(w):
                piece_vecs.setdefault((s, t), []).append(w)
    ideal = Subspace(d, [w for ws in piece_vecs.values() for w in ws])
    for v in gens:
        if not ideal.contains(v):
            raise ValueError("ideal generators are not homogeneous")
    for w in ideal.basis:
        for k in range(d):
            for prod in (alg.mul({k: ONE}, alg.from_vector(w)), alg.mul(alg.from_vector(w), {k: ONE})):
                if not ideal.contains(alg.to_vector(prod)):
                    raise ValueError("ideal is not two-sided")
    killed = [i for i in range(alg.n) if ideal.contains(alg.to_vector({i: ONE}))]
    for i in range(alg.n):
        if i in killed:
            continue
        comp = ideal.reduce(alg.to_vector({i: ONE}))
        if any(comp[k] for k in alg.piece(i, i) if k >= alg.n) or comp[i] != 1:
            raise ValueError("ideal meets an idempotent piece outside the radical")
    for w in ideal.basis:
        for i in range(alg.n):
            if i not in killed and w[i]:
                raise ValueError("ideal is not contained in the radical")
    kept = [i for i in range(alg.n) if i not in killed]
    free = ideal.complement_coordinates()
    reps = [i for i in kept] + [k for k in free if k >= alg.n]
    for k in free:
        if k < alg.n and k in killed:
            raise ValueError("ideal computation inconsistent")
    newidx = {k: j for j, k in enumerate(reps)}
    vmap = {i: j for j, i in enumerate(kept)}

    def proj_vec(v: List[Fraction]) -> Element:
        w = ideal.reduce(v)
        out = {}
        for k, c in enumerate(w):
            if c:
                if k not in newidx:
                    raise ValueError("projection left the chosen complement")
                out[newidx[k]] = c
        return out

    projection = [proj_vec([ONE if j == k else ZERO for j in range(d)]) for k in range(d)]
    prods: Dict[Tuple[int, int], Element] = {}
    n_new = len(kept)
    for a in reps[n_new:]:
        for b in reps[n_new:]:
            if alg.tgt[a] != alg.src[b]:
                continue
            p = alg.mul({a: ONE}, {b: ONE})
            if p:
                img = proj_vec(alg.to_vector(p))
                if img:
                    prods[(newidx[a], newidx[b])] = img
    labels = [alg.labels[k] for k in reps]
    src = [vmap[alg.src[k]] for k in reps]
    tgt = [vmap[alg.tgt[k]] for k in reps]
    qalg = BasedAlgebra(
        n_new, labels, src, tgt, prods, vertex_labels=[alg.vertex_labels[i] for i in kept]
    )
    return QuotientAlgebra(qalg, alg, kept, reps, projection)
