"""Bounded complexes of projectives, with the two-term slice in focus.

A complex stores, per cohomological degree ``n``, a tuple of vertices
(the indecomposable projectives of ``C^n``) and the differential
``d^n: C^n -> C^{n+1}`` as an A-matrix: ``d[c][a]`` is an algebra element of
``e_w A e_v`` where ``v`` is source summand ``a`` and ``w`` target summand
``c``; it acts by left multiplication ``P_v -> P_w``.  A two-term complex
``P1 -> P0`` lives in degrees -1 and 0, so ``SigmaA = (A -> 0)`` sits in
degree -1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import BasedAlgebra, Element
from .errors import CapOverflowError, InputError, VerificationError
from .exactlinalg import ONE, ZERO, RatMatrix, Subspace, kernel_rows, solve
from .fdmodules import (
    FdModule,
    SuppTauRigidPair,
    amatrix_to_map,
    cokernel,
    decompose,
    image_spaces,
    min_proj_presentation,
    projective_cover,
    registry_for,
    submodule,
)

AMatrix = List[List[Element]]


# ---------------------------------------------------------------------------
# algebra-element matrices


def el_add(x: Element, y: Element, c: Fraction = ONE) -> Element:
    out = dict(x)
    for k, v in y.items():
        w = out.get(k, ZERO) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def el_scale(x: Element, c: Fraction) -> Element:
    return {k: c * v for k, v in x.items()} if c else {}


def amat_zero(rows: int, cols: int) -> AMatrix:
    return [[{} for _ in range(cols)] for _ in range(rows)]


def amat_mul(alg: BasedAlgebra, G: AMatrix, F: AMatrix, inner: int) -> AMatrix:
    """G o F for F with ``inner`` rows."""
    rows = len(G)
    cols = len(F[0]) if F else 0
    out = amat_zero(rows, cols)
    for c in range(rows):
        gc = G[c]
        for b in range(inner):
            g = gc[b]
            if not g:
                continue
            fb = F[b]
            for a in range(cols):
                f = fb[a]
                if f:
                    out[c][a] = el_add(out[c][a], alg.mul(g, f))
    return out


def amat_add(F: AMatrix, G: AMatrix, c: Fraction = ONE) -> AMatrix:
    return [[el_add(x, y, c) for x, y in zip(fr, gr)] for fr, gr in zip(F, G)]


def amat_is_zero(F: AMatrix) -> bool:
    return all(not x for row in F for x in row)


def amat_key(F: AMatrix) -> tuple:
    return tuple(tuple(tuple(sorted(x.items())) for x in row) for row in F)


class HomSpace:
    """Hom(sum P_src, sum P_tgt) with basis the single entries (c, a, k)."""

    __slots__ = ("alg", "src", "tgt", "basis", "index")

    def __init__(self, alg: BasedAlgebra, src: Sequence[int], tgt: Sequence[int]):
        self.alg = alg
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.basis = [(c, a, k) for c, w in enumerate(self.tgt) for a, v in enumerate(self.src) for k in alg.piece(w, v)]
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_vec(self, F: AMatrix) -> List[Fraction]:
        v = [ZERO] * len(self.basis)
        for c, row in enumerate(F):
            for a, x in enumerate(row):
                for k, val in x.items():
                    v[self.index[(c, a, k)]] = val
        return v

    def from_vec(self, v: Sequence[Fraction]) -> AMatrix:
        F = amat_zero(len(self.tgt), len(self.src))
        for (c, a, k), val in zip(self.basis, v):
            if val:
                F[c][a][k] = Fraction(val)
        return F

    def unit(self, i: int) -> AMatrix:
        c, a, k = self.basis[i]
        F = amat_zero(len(self.tgt), len(self.src))
        F[c][a] = {k: ONE}
        return F


# ---------------------------------------------------------------------------
# complexes


class ProjComplex:
    __slots__ = ("alg", "terms", "diffs", "_key")

    def __init__(self, alg: BasedAlgebra, terms: Dict[int, Sequence[int]], diffs: Dict[int, AMatrix], check: bool = True):
        self.alg = alg
        self.terms = {n: tuple(v) for n, v in terms.items() if v}
        self.diffs = {}
        for n in self.terms:
            if n + 1 in self.terms:
                D = diffs.get(n) or amat_zero(len(self.terms[n + 1]), len(self.terms[n]))
                self.diffs[n] = [[dict(x) for x in row] for row in D]
        self._key = None
        if check:
            self.validate()

    def validate(self) -> None:
        for n, D in self.diffs.items():
            src, tgt = self.terms[n], self.terms[n + 1]
            if len(D) != len(tgt) or any(len(r) != len(src) for r in D):
                raise InputError(f"differential in degree {n} has the wrong shape")
            for c, w in enumerate(tgt):
                for a, v in enumerate(src):
                    for k in D[c][a]:
                        if (self.alg.src[k], self.alg.tgt[k]) != (w, v):
                            raise InputError(f"differential entry ({c},{a}) in degree {n} is not in e_w A e_v")
            if n + 1 in self.diffs and not amat_is_zero(amat_mul(self.alg, self.diffs[n + 1], D, len(tgt))):
                raise InputError(f"d^{n + 1} d^{n} is not zero")

    # -- accessors ----------------------------------------------------------
    def term(self, n: int) -> Tuple[int, ...]:
        return self.terms.get(n, ())

    def d(self, n: int) -> AMatrix:
        if n in self.diffs:
            return self.diffs[n]
        return amat_zero(len(self.term(n + 1)), len(self.term(n)))

    @property
    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_two_term(self) -> bool:
        return set(self.terms) <= {-1, 0}

    @property
    def p1(self) -> Tuple[int, ...]:
        return self.term(-1)

    @property
    def p0(self) -> Tuple[int, ...]:
        return self.term(0)

    @property
    def dmat(self) -> AMatrix:
        return self.d(-1)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (tuple(sorted(self.terms.items())), tuple((n, amat_key(D)) for n, D in sorted(self.diffs.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjComplex) and self.alg is other.alg and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self.is_two_term():
            return f"Complex({list(self.p1)} -> {list(self.p0)})"
        return f"Complex({ {n: list(v) for n, v in sorted(self.terms.items())} })"

    def describe(self) -> str:
        lab = self.alg.vertex_labels

        def word(vs):
            if not vs:
                return "0"
            return "+".join(f"P{lab[v]}" for v in vs)

        if self.is_two_term():
            return f"{word(self.p1)} -> {word(self.p0)}"
        return " -> ".join(f"[{n}]{word(self.term(n))}" for n in self.degrees)

    def to_json(self) -> dict:
        lab = self.alg.vertex_labels
        return {
            "terms": {str(n): [lab[v] for v in vs] for n, vs in sorted(self.terms.items())},
            "differentials": {
                str(n): [[{self.alg.labels[k]: str(c) for k, c in sorted(x.items())} for x in row] for row in D]
                for n, D in sorted(self.diffs.items())
            },
        }


def two_term(alg: BasedAlgebra, p1: Sequence[int], p0: Sequence[int], d: Optional[AMatrix] = None) -> ProjComplex:
    return ProjComplex(alg, {-1: p1, 0: p0}, {-1: d} if d is not None else {})


def zero_complex(alg: BasedAlgebra) -> ProjComplex:
    return ProjComplex(alg, {}, {}, check=False)


def stalk(alg: BasedAlgebra, verts: Sequence[int], degree: int = 0) -> ProjComplex:
    return ProjComplex(alg, {degree: verts}, {}, check=False)


def regular_complex(alg: BasedAlgebra) -> ProjComplex:
    return stalk(alg, range(alg.n), 0)


def shift(X: ProjComplex, k: int = 1) -> ProjComplex:
    """Sigma^k X: (Sigma^k X)^n = X^{n+k}, differential (-1)^k d."""
    sign = -ONE if k % 2 else ONE
    terms = {n - k: v for n, v in X.terms.items()}
    diffs = {n - k: [[el_scale(x, sign) for x in row] for row in D] for n, D in X.diffs.items()}
    return ProjComplex(X.alg, terms, diffs, check=False)


def direct_sum(parts: Sequence[ProjComplex], alg: Optional[BasedAlgebra] = None) -> ProjComplex:
    if not parts:
        return zero_complex(alg)
    alg = parts[0].alg
    degs = sorted({n for X in parts for n in X.terms})
    terms = {n: tuple(v for X in parts for v in X.term(n)) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        D = amat_zero(len(terms[n + 1]), len(terms[n]))
        r0 = c0 = 0
        for X in parts:
            Dx = X.d(n)
            for c, row in enumerate(Dx):
                for a, x in enumerate(row):
                    if x:
                        D[r0 + c][c0 + a] = dict(x)
            r0 += len(X.term(n + 1))
            c0 += len(X.term(n))
        diffs[n] = D
    return ProjComplex(alg, terms, diffs, check=False)


# ---------------------------------------------------------------------------
# chain maps and homotopy classes

ChainMap = Dict[int, AMatrix]


def chain_compose(alg: BasedAlgebra, g: ChainMap, f: ChainMap, mid: ProjComplex) -> ChainMap:
    """g o f where f lands in ``mid``."""
    out = {}
    for n in set(f) & set(g):
        out[n] = amat_mul(alg, g[n], f[n], len(mid.term(n)))
    return out


class HomotopyHom:
    """Hom_K(X, Y) as chain maps modulo null-homotopic maps."""

    def __init__(self, X: ProjComplex, Y: ProjComplex):
        alg = X.alg
        self.X, self.Y, self.alg = X, Y, alg
        self.fdegs = sorted(n for n in X.terms if n in Y.terms)
        self.fspaces = {n: HomSpace(alg, X.term(n), Y.term(n)) for n in self.fdegs}
        self.foff = {}
        pos = 0
        for n in self.fdegs:
            self.foff[n] = pos
            pos += self.fspaces[n].dim
        self.nf = pos
        # constraint targets: X^n -> Y^{n+1}
        cdegs = sorted(n for n in X.terms if n + 1 in Y.terms)
        cspaces = {n: HomSpace(alg, X.term(n), Y.term(n + 1)) for n in cdegs}
        coff = {}
        pos = 0
        for n in cdegs:
            coff[n] = pos
            pos += cspaces[n].dim
        nc = pos
        columns = []
        for n in self.fdegs:
            sp = self.fspaces[n]
            for i in range(sp.dim):
                u = sp.unit(i)
                col = [ZERO] * nc
                # d_Y^n f^n contributes to X^n -> Y^{n+1}
                if n in cspaces:
                    img = amat_mul(alg, Y.d(n), u, len(Y.term(n)))
                    self._acc(col, coff[n], cspaces[n], img, ONE)
                # - f^n d_X^{n-1} contributes to X^{n-1} -> Y^n
                if n - 1 in cspaces:
                    img = amat_mul(alg, u, X.d(n - 1), len(X.term(n)))
                    self._acc(col, coff[n - 1], cspaces[n - 1], img, -ONE)
                columns.append(col)
        rows = [[columns[j][i] for j in range(self.nf)] for i in range(nc)]
        self.cycles = Subspace(self.nf, kernel_rows(rows, self.nf))
        # null-homotopic: h^n: X^n -> Y^{n-1}, f^n = d_Y^{n-1} h^n + h^{n+1} d_X^n
        hvecs = []
        for n in sorted(n for n in X.terms if n - 1 in Y.terms):
            sp = HomSpace(alg, X.term(n), Y.term(n - 1))
            for i in range(sp.dim):
                u = sp.unit(i)
                vec = [ZERO] * self.nf
                if n in self.fspaces:
                    img = amat_mul(alg, Y.d(n - 1), u, len(Y.term(n - 1)))
                    self._acc(vec, self.foff[n], self.fspaces[n], img, ONE)
                if n - 1 in self.fspaces:
                    img = amat_mul(alg, u, X.d(n - 1), len(X.term(n)))
                    self._acc(vec, self.foff[n - 1], self.fspaces[n - 1], img, ONE)
                hvecs.append(vec)
        self.boundaries = Subspace(self.nf, hvecs)
        reps = []
        span = self.boundaries
        for v in self.cycles.basis:
            if not span.contains(v):
                reps.append(list(v))
                span = span + Subspace(self.nf, [v])
        self.reps = reps
        self._solver = None

    @staticmethod
    def _acc(vec, off, space, F, sign):
        for c, row in enumerate(F):
            for a, x in enumerate(row):
                for k, val in x.items():
                    vec[off + space.index[(c, a, k)]] += sign * val

    @property
    def dim(self) -> int:
        return len(self.reps)

    def to_map(self, v: Sequence[Fraction]) -> ChainMap:
        return {n: self.fspaces[n].from_vec(v[self.foff[n]: self.foff[n] + self.fspaces[n].dim]) for n in self.fdegs}

    def basis(self) -> List[ChainMap]:
        return [self.to_map(v) for v in self.reps]

    def to_vec(self, f: ChainMap) -> List[Fraction]:
        v = [ZERO] * self.nf
        for n in self.fdegs:
            if n in f:
                sub = self.fspaces[n].to_vec(f[n])
                v[self.foff[n]: self.foff[n] + len(sub)] = sub
        return v

    def class_coords(self, f: ChainMap) -> List[Fraction]:
        """Coordinates of the class of f in the basis ``reps``."""
        v = self.to_vec(f)
        if self._solver is None:
            cols = list(self.reps) + list(self.boundaries.basis)
            self._solver = RatMatrix.from_columns(cols, self.nf) if cols else None
        if self._solver is None:
            if any(v):
                raise ValueError("not a chain map")
            return []
        x = solve(self._solver, v)
        if x is None:
            raise ValueError("not a chain map")
        return x[: len(self.reps)]

    def is_null(self, f: ChainMap) -> bool:
        return not any(self.class_coords(f))


_HH_CACHE: Dict[tuple, HomotopyHom] = {}


def homotopy_hom(X: ProjComplex, Y: ProjComplex) -> HomotopyHom:
    key = (X.alg.uid, X.key(), Y.key())
    hit = _HH_CACHE.get(key)
    if hit is None:
        if len(_HH_CACHE) > 100000:
            _HH_CACHE.clear()
        hit = HomotopyHom(X, Y)
        _HH_CACHE[key] = hit
    return hit


def homotopy_hom_dim(X: ProjComplex, Y: ProjComplex, shift_by: int = 0) -> int:
    """dim Hom_K(X, Sigma^shift Y) for two-term complexes (shift in -1, 0, 1)."""
    if shift_by not in (-1, 0, 1):
        raise InputError("only shifts -1, 0 and 1 occur between two-term complexes")
    if X.is_zero() or Y.is_zero():
        return 0
    return homotopy_hom(X, shift(Y, shift_by) if shift_by else Y).dim


def hom_shift_one_formula(X: ProjComplex, Y: ProjComplex) -> int:
    """dim Hom(p1_X, p0_Y) modulo d_Y o Hom(p1_X, p1_Y) + Hom(p0_X, p0_Y) o d_X."""
    alg = X.alg
    target = HomSpace(alg, X.p1, Y.p0)
    vecs = []
    sp = HomSpace(alg, X.p1, Y.p1)
    for i in range(sp.dim):
        vecs.append(target.to_vec(amat_mul(alg, Y.dmat, sp.unit(i), len(Y.p1))))
    sp = HomSpace(alg, X.p0, Y.p0)
    for i in range(sp.dim):
        vecs.append(target.to_vec(amat_mul(alg, sp.unit(i), X.dmat, len(X.p0))))
    return target.dim - Subspace(target.dim, vecs).dim


# ---------------------------------------------------------------------------
# cones and minimization


def cone(f: ChainMap, X: ProjComplex, Y: ProjComplex) -> ProjComplex:
    """Cone(f)^n = X^{n+1} + Y^n with d = [[-d_X, 0], [f, d_Y]]."""
    alg = X.alg
    degs = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms = {n: X.term(n + 1) + Y.term(n) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        xs, ys = len(X.term(n + 1)), len(Y.term(n))
        xt, yt = len(X.term(n + 2)), len(Y.term(n + 1))
        D = amat_zero(xt + yt, xs + ys)
        dx = X.d(n + 1)
        for c in range(xt):
            for a in range(xs):
                if dx[c][a]:
                    D[c][a] = el_scale(dx[c][a], -ONE)
        fn = f.get(n + 1)
        if fn is not None:
            for c in range(yt):
                for a in range(xs):
                    if fn[c][a]:
                        D[xt + c][a] = dict(fn[c][a])
        dy = Y.d(n)
        for c in range(yt):
            for a in range(ys):
                if dy[c][a]:
                    D[xt + c][xs + a] = dict(dy[c][a])
        diffs[n] = D
    return ProjComplex(alg, terms, diffs, check=False)


def cocone(f: ChainMap, X: ProjComplex, Y: ProjComplex) -> ProjComplex:
    return shift(cone(f, X, Y), -1)


def unit_inverse(alg: BasedAlgebra, u: Element, v: int) -> Element:
    """Inverse of an element of e_v A e_v with nonzero idempotent coefficient."""
    lam = u.get(v, ZERO)
    if not lam:
        raise ValueError("element is not a unit")
    r = {k: -c / lam for k, c in u.items() if k != v}
    total: Element = {v: ONE}
    power: Element = {v: ONE}
    for _ in range(alg.dim + 1):
        power = alg.mul(power, r)
        if not power:
            break
        total = el_add(total, power)
    return el_scale(total, ONE / lam)


def minimize(X: ProjComplex) -> ProjComplex:
    """Cancel every summand pair joined by a unit entry of the differential."""
    alg = X.alg
    terms = {n: list(v) for n, v in X.terms.items()}
    diffs = {n: [[dict(x) for x in row] for row in D] for n, D in X.diffs.items()}
    while True:
        found = None
        for n in sorted(diffs):
            D = diffs[n]
            for c, row in enumerate(D):
                w = terms[n + 1][c]
                for a, x in enumerate(row):
                    if terms[n][a] == w and x.get(w):
                        found = (n, c, a)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        n, c, a = found
        D = diffs[n]
        w = terms[n][a]
        phi_inv = unit_inverse(alg, D[c][a], w)
        rows = [r for r in range(len(D)) if r != c]
        cols = [q for q in range(len(D[0])) if q != a]
        newD = []
        for r in rows:
            gamma = D[r][a]
            row = []
            for q in cols:
                x = D[r][q]
                if gamma and D[c][q]:
                    x = el_add(x, alg.mul(alg.mul(gamma, phi_inv), D[c][q]), -ONE)
                row.append(x)
            newD.append(row)
        diffs[n] = newD
        if n - 1 in diffs:
            diffs[n - 1] = [diffs[n - 1][r] for r in range(len(diffs[n - 1])) if r != a]
        if n + 1 in diffs:
            diffs[n + 1] = [[row[q] for q in range(len(row)) if q != c] for row in diffs[n + 1]]
        terms[n] = [terms[n][q] for q in cols]
        terms[n + 1] = [terms[n + 1][r] for r in rows]
        for m in (n, n + 1):
            if not terms[m]:
                del terms[m]
        diffs = {m: E for m, E in diffs.items() if m in terms and m + 1 in terms}
    return ProjComplex(alg, terms, diffs, check=False)


def is_minimal(X: ProjComplex) -> bool:
    for n, D in X.diffs.items():
        for c, row in enumerate(D):
            for a, x in enumerate(row):
                w = X.terms[n + 1][c]
                if X.terms[n][a] == w and x.get(w):
                    return False
    return True


# ---------------------------------------------------------------------------
# modules <-> complexes


def h0(X: ProjComplex) -> FdModule:
    """Zeroth cohomology of a two-term complex: coker(P1 -> P0)."""
    alg = X.alg
    f = amatrix_to_map(alg, X.p1, X.p0, X.dmat)
    return cokernel(f)[0]


def stalk_part(X: ProjComplex) -> Tuple[int, ...]:
    """Vertices of the maximal summand (Q -> 0) of a minimal two-term complex."""
    alg = X.alg
    if not X.p1:
        return ()
    f = amatrix_to_map(alg, X.p1, X.p0, X.dmat)
    im = submodule(f.target, image_spaces(f))[0]
    cover = Counter(projective_cover(im, allow_zero=True).verts)
    rest = Counter(X.p1) - cover
    return tuple(sorted(rest.elements()))


def presentation_complex(M: FdModule) -> ProjComplex:
    pres = min_proj_presentation(M)
    return two_term(M.alg, pres.p1, pres.p0, pres.d if pres.p1 and pres.p0 else None)


def h_map(X: ProjComplex) -> SuppTauRigidPair:
    """(H^0 X, Q) where (Q -> 0) is the maximal stalk summand in degree -1."""
    X = minimize(X)
    if not X.is_two_term():
        raise InputError("h_map needs a two-term complex")
    pair = SuppTauRigidPair.of(h0(X), stalk_part(X))
    return pair


def h_inverse(pair: SuppTauRigidPair) -> ProjComplex:
    alg = pair.alg
    parts = [presentation_complex(M) for M in pair.summands]
    parts.append(stalk(alg, pair.projectives, -1))
    return direct_sum(parts, alg)


def complex_summands(X: ProjComplex) -> List[ProjComplex]:
    """Indecomposable summands (with repetition) of a minimal two-term complex."""
    X = minimize(X)
    if not X.is_two_term():
        raise InputError("decomposition implemented for two-term complexes")
    out = []
    for M, mult in decompose(h0(X)):
        C = presentation_complex(M)
        out.extend([C] * mult)
    for v in stalk_part(X):
        out.append(stalk(X.alg, [v], -1))
    return out


def complex_key(X: ProjComplex) -> tuple:
    """Isomorphism invariant of a two-term complex: (H^0 summand ids, stalk part)."""
    X = minimize(X)
    reg = registry_for(X.alg)
    return (reg.ids(h0(X)), stalk_part(X))


def is_isomorphic_complex(X: ProjComplex, Y: ProjComplex) -> bool:
    return complex_key(X) == complex_key(Y)


def basic_summands(X: ProjComplex) -> List[ProjComplex]:
    seen = set()
    out = []
    for C in complex_summands(X):
        k = complex_key(C)
        if k not in seen:
            seen.add(k)
            out.append(C)
    return out


def basic_sum(parts: Sequence[ProjComplex], alg: BasedAlgebra) -> ProjComplex:
    pieces = []
    seen = set()
    for P in parts:
        for C in complex_summands(P):
            k = complex_key(C)
            if k not in seen:
                seen.add(k)
                pieces.append(C)
    return direct_sum(pieces, alg)


def num_summands(X: ProjComplex) -> int:
    return len(basic_summands(X))


# ---------------------------------------------------------------------------
# presilting, g-vectors, Euler form


def is_presilting(X: ProjComplex) -> bool:
    return X.is_zero() or homotopy_hom_dim(X, X, 1) == 0


def is_silting(X: ProjComplex) -> bool:
    return is_presilting(X) and num_summands(X) == X.alg.n


def g_vector(X: ProjComplex) -> Tuple[int, ...]:
    g = [0] * X.alg.n
    for v in X.p0:
        g[v] += 1
    for v in X.p1:
        g[v] -= 1
    return tuple(g)


def g_matrix(Xs: Sequence[ProjComplex]) -> List[List[int]]:
    return [list(g_vector(X)) for X in Xs]


def euler_form(X: ProjComplex, Y: ProjComplex) -> int:
    return sum((-1) ** i * homotopy_hom_dim(X, Y, i) for i in (-1, 0, 1))


def euler_form_from_classes(X: ProjComplex, Y: ProjComplex) -> int:
    """g(X)^T C g(Y) with C[k][l] = dim Hom(P_k, P_l)."""
    alg = X.alg
    C = alg.cartan()
    gx, gy = g_vector(X), g_vector(Y)
    return sum(gx[k] * C[k][l] * gy[l] for k in range(alg.n) for l in range(alg.n))


def silting_geq(T: ProjComplex, U: ProjComplex) -> bool:
    """T >= U iff Hom(T, Sigma U) = 0."""
    return T.is_zero() or U.is_zero() or homotopy_hom_dim(T, U, 1) == 0


# ---------------------------------------------------------------------------
# approximations


def top_trace(alg: BasedAlgebra, X: ProjComplex, f: ChainMap) -> Fraction:
    """Trace of the semisimple part (idempotent coefficients) of an endomorphism."""
    tr = ZERO
    for n, F in f.items():
        for a, v in enumerate(X.term(n)):
            tr += F[a][a].get(v, ZERO)
    return tr


def endo_radical_classes(X: ProjComplex) -> List[List[Fraction]]:
    """rad End_K(X) in class coordinates, for a minimal complex X."""
    H = homotopy_hom(X, X)
    B = H.basis()
    d = len(B)
    form = [[top_trace(X.alg, X, chain_compose(X.alg, B[i], B[j], X)) for j in range(d)] for i in range(d)]
    return kernel_rows(form, d)


def _radical_maps(P: Sequence[ProjComplex], i: int, j: int) -> List[ChainMap]:
    """Radical maps P[i] -> P[j] between indecomposables."""
    H = homotopy_hom(P[i], P[j])
    B = H.basis()
    if i != j:
        return B
    out = []
    for coeffs in endo_radical_classes(P[i]):
        f = {}
        for c, g in zip(coeffs, B):
            if c:
                for n, F in g.items():
                    f[n] = amat_add(f.get(n, amat_zero(len(F), len(F[0]) if F else 0)), F, c)
        out.append(f)
    return out


@dataclass
class Approximation:
    source: ProjComplex  # the sum of copies
    target: ProjComplex
    chain: ChainMap
    multiplicities: List[int]


def _lin_comb(maps: Sequence[ChainMap], coeffs: Sequence[Fraction], template: HomotopyHom) -> ChainMap:
    v = [ZERO] * template.nf
    for f, c in zip(maps, coeffs):
        if c:
            w = template.to_vec(f)
            v = [x + c * y for x, y in zip(v, w)]
    return template.to_map(v)


def right_approximation(P: Sequence[ProjComplex], Y: ProjComplex) -> Approximation:
    """Minimal right add(P)-approximation of Y for pairwise non-isomorphic indecomposables P."""
    alg = Y.alg
    P = [minimize(p) for p in P]
    chosen: List[Tuple[int, ChainMap]] = []
    mults = []
    for i, Pi in enumerate(P):
        H = homotopy_hom(Pi, Y)
        if H.dim == 0:
            mults.append(0)
            continue
        vecs = [list(v) for v in H.boundaries.basis]
        for j, Pj in enumerate(P):
            Hj = homotopy_hom(Pj, Y)
            if Hj.dim == 0:
                continue
            for r in _radical_maps(P, i, j):
                for g in Hj.basis():
                    vecs.append(H.to_vec(chain_compose(alg, g, r, Pj)))
        span = Subspace(H.nf, vecs)
        count = 0
        for v in H.reps:
            if not span.contains(v):
                span = span + Subspace(H.nf, [v])
                chosen.append((i, H.to_map(v)))
                count += 1
        mults.append(count)
    S = direct_sum([P[i] for i, _ in chosen], alg)
    chain = _row_chain([P[i] for i, _ in chosen], [f for _, f in chosen], Y)
    return Approximation(S, Y, chain, mults)


def left_approximation(X: ProjComplex, P: Sequence[ProjComplex]) -> Approximation:
    """Minimal left add(P)-approximation X -> sum of copies of P."""
    alg = X.alg
    P = [minimize(p) for p in P]
    chosen: List[Tuple[int, ChainMap]] = []
    mults = []
    for i, Pi in enumerate(P):
        H = homotopy_hom(X, Pi)
        if H.dim == 0:
            mults.append(0)
            continue
        vecs = [list(v) for v in H.boundaries.basis]
        for j, Pj in enumerate(P):
            Hj = homotopy_hom(X, Pj)
            if Hj.dim == 0:
                continue
            for r in _radical_maps(P, j, i):
                for g in Hj.basis():
                    vecs.append(H.to_vec(chain_compose(alg, r, g, Pj)))
        span = Subspace(H.nf, vecs)
        count = 0
        for v in H.reps:
            if not span.contains(v):
                span = span + Subspace(H.nf, [v])
                chosen.append((i, H.to_map(v)))
                count += 1
        mults.append(count)
    T = direct_sum([P[i] for i, _ in chosen], alg)
    chain = _column_chain(X, [P[i] for i, _ in chosen], [f for _, f in chosen])
    return Approximation(T, X, chain, mults)


def _row_chain(sources: Sequence[ProjComplex], maps: Sequence[ChainMap], Y: ProjComplex) -> ChainMap:
    """[f_1 ... f_m]: sum of sources -> Y."""
    out: ChainMap = {}
    for n in Y.terms:
        cols = []
        for S, f in zip(sources, maps):
            F = f.get(n) or amat_zero(len(Y.term(n)), len(S.term(n)))
            cols.append(F)
        width = sum(len(S.term(n)) for S in sources)
        if width == 0:
            continue
        D = amat_zero(len(Y.term(n)), width)
        c0 = 0
        for S, F in zip(sources, cols):
            for r in range(len(Y.term(n))):
                for a in range(len(S.term(n))):
                    D[r][c0 + a] = dict(F[r][a]) if F and F[r][a] else {}
            c0 += len(S.term(n))
        out[n] = D
    return out


def _column_chain(X: ProjComplex, targets: Sequence[ProjComplex], maps: Sequence[ChainMap]) -> ChainMap:
    """[f_1; ...; f_m]: X -> sum of targets."""
    out: ChainMap = {}
    for n in X.terms:
        height = sum(len(T.term(n)) for T in targets)
        if height == 0:
            continue
        D = amat_zero(height, len(X.term(n)))
        r0 = 0
        for T, f in zip(targets, maps):
            F = f.get(n)
            if F:
                for r in range(len(T.term(n))):
                    for a in range(len(X.term(n))):
                        if F[r][a]:
                            D[r0 + r][a] = dict(F[r][a])
            r0 += len(T.term(n))
        out[n] = D
    return out


# ---------------------------------------------------------------------------
# Bongartz completion and mutation


def shifted_regular(alg: BasedAlgebra) -> ProjComplex:
    return stalk(alg, range(alg.n), -1)


def bongartz_complement(U: ProjComplex) -> ProjComplex:
    """Cocone Q of a minimal right add(U)-approximation of Sigma A."""
    alg = U.alg
    parts = basic_summands(U) if not U.is_zero() else []
    SA = shifted_regular(alg)
    appr = right_approximation(parts, SA)
    Q = minimize(cocone(appr.chain, appr.source, SA))
    if not Q.is_two_term():
        raise VerificationError("Bongartz cocone left the two-term window")
    return Q


def bongartz_completion(U: ProjComplex) -> ProjComplex:
    if not is_presilting(U):
        raise InputError("Bongartz completion needs a presilting complex")
    alg = U.alg
    return basic_sum([U, bongartz_complement(U)], alg)


def mutate(T: Sequence[ProjComplex], k: int, direction: str = "left") -> Optional[List[ProjComplex]]:
    """Replace summand k by the (co)cone of its minimal approximation by the rest.

    Returns None when the result leaves the two-term window."""
    others = [X for i, X in enumerate(T) if i != k]
    X = T[k]
    if direction == "left":
        appr = left_approximation(X, others)
        Y = minimize(cone(appr.chain, X, appr.source))
    elif direction == "right":
        appr = right_approximation(others, X)
        Y = minimize(cocone(appr.chain, appr.source, X))
    else:
        raise InputError("direction must be 'left' or 'right'")
    if Y.is_zero() or not Y.is_two_term():
        return None
    parts = complex_summands(Y)
    if len(parts) != 1:
        raise VerificationError("mutation produced a decomposable complement")
    out = list(T)
    out[k] = parts[0]
    return out


def silting_key(T: Sequence[ProjComplex]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(g_vector(X) for X in T))


@dataclass
class ExchangeGraph:
    nodes: Dict[tuple, List[ProjComplex]]
    edges: List[Tuple[tuple, tuple]]
    pairs: Dict[tuple, SuppTauRigidPair] = field(default_factory=dict)

    def to_dot(self) -> str:
        def name(key):
            return '"' + " ".join("(" + ",".join(str(x) for x in g) + ")" for g in key) + '"'

        lines = ["graph exchange {"]
        for key in sorted(self.nodes):
            lines.append(f"  {name(key)};")
        for a, b in sorted(self.edges):
            lines.append(f"  {name(a)} -- {name(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def exchange_graph(alg: BasedAlgebra, max_nodes: int = 10000) -> ExchangeGraph:
    """All basic two-term silting complexes reachable from A by mutation."""
    start = [stalk(alg, [i], 0) for i in range(alg.n)]
    nodes = {silting_key(start): start}
    edges = set()
    frontier = [start]
    while frontier:
        nxt = []
        for T in frontier:
            kT = silting_key(T)
            for k in range(len(T)):
                U = mutate(T, k, "left") or mutate(T, k, "right")
                if U is None:
                    raise VerificationError("no two-term mutation exists at a summand")
                kU = silting_key(U)
                edges.add(tuple(sorted((kT, kU))))
                if kU not in nodes:
                    if len(nodes) >= max_nodes:
                        raise CapOverflowError(f"more than {max_nodes} silting complexes; the algebra may be tau-tilting infinite")
                    nodes[kU] = U
                    nxt.append(U)
        frontier = nxt
    return ExchangeGraph(nodes, sorted(edges))


def indecomposable_presilting(alg: BasedAlgebra, graph: Optional[ExchangeGraph] = None) -> List[ProjComplex]:
    """Indecomposable two-term presilting complexes, sorted by g-vector."""
    graph = graph or exchange_graph(alg)
    found = {}
    for T in graph.nodes.values():
        for X in T:
            found.setdefault(g_vector(X), X)
    return [found[g] for g in sorted(found)]


def presilting_cliques(items: Sequence[ProjComplex]) -> List[Tuple[int, ...]]:
    """All index sets whose direct sum is presilting (pairwise Hom(-, Sigma -) vanishing)."""
    n = len(items)
    ok = [[homotopy_hom_dim(items[i], items[j], 1) == 0 for j in range(n)] for i in range(n)]
    out = [()]

    def extend(clique, start):
        for j in range(start, n):
            if ok[j][j] and all(ok[i][j] and ok[j][i] for i in clique):
                c = clique + (j,)
                out.append(c)
                extend(c, j + 1)

    extend((), 0)
    return out


# ---------------------------------------------------------------------------
# reduction by a presilting complex


def hom_mod_P(P: ProjComplex, X: ProjComplex, Y: ProjComplex) -> Tuple[HomotopyHom, Subspace]:
    """Hom_K(X, Y) together with the subspace of classes factoring through add(P).

    The subspace is spanned by composites X -> P' -> Y over the indecomposable
    summands P' of P; the quotient dimension is ``H.dim - ideal.dim``."""
    alg = X.alg
    H = homotopy_hom(X, Y)
    vecs = []
    if not P.is_zero():
        for Pi in basic_summands(P):
            A1 = homotopy_hom(X, Pi)
            A2 = homotopy_hom(Pi, Y)
            for f in A1.basis():
                for g in A2.basis():
                    vecs.append(H.class_coords(chain_compose(alg, g, f, Pi)))
    return H, Subspace(H.dim, vecs)


def hom_mod_P_dim(P: ProjComplex, X: ProjComplex, Y: ProjComplex) -> int:
    if X.is_zero() or Y.is_zero():
        return 0
    H, ideal = hom_mod_P(P, X, Y)
    return H.dim - ideal.dim


def is_in_Z_P(P: ProjComplex, X: ProjComplex) -> bool:
    if P.is_zero() or X.is_zero():
        return True
    return homotopy_hom_dim(X, P, 1) == 0 and homotopy_hom_dim(P, X, 1) == 0


def shift_in_reduction(P: ProjComplex, X: ProjComplex) -> ProjComplex:
    """X<1>: cone of a minimal left add(P)-approximation of X, minimized."""
    if not is_in_Z_P(P, X):
        raise InputError("object is not in Z_P")
    parts = basic_summands(P) if not P.is_zero() else []
    appr = left_approximation(X, parts)
    return minimize(cone(appr.chain, X, appr.source))


def in_add(P: ProjComplex, X: ProjComplex) -> bool:
    keys = {complex_key(C) for C in basic_summands(P)} if not P.is_zero() else set()
    return all(complex_key(C) in keys for C in complex_summands(X))


def phi_reduce(P: ProjComplex, X: ProjComplex) -> ProjComplex:
    """X with its add(P)-summands removed (an object of Z_P/[P])."""
    keys = {complex_key(C) for C in basic_summands(P)} if not P.is_zero() else set()
    return direct_sum([C for C in complex_summands(X) if complex_key(C) not in keys], X.alg)


def phi_inverse(P: ProjComplex, Y: ProjComplex) -> ProjComplex:
    return basic_sum([Y, P], P.alg)


def is_presilting_in_reduction(P: ProjComplex, Y: ProjComplex) -> bool:
    """Y presilting in Z_P/[P]: Hom(Y, Y<1>) vanishes modulo [P]."""
    if Y.is_zero():
        return True
    Y1 = shift_in_reduction(P, Y)
    return hom_mod_P_dim(P, Y, Y1) == 0


@dataclass
class ReducedCategory:
    reducer: ProjComplex
    bongartz: ProjComplex

    @classmethod
    def of(cls, P: ProjComplex) -> "ReducedCategory":
        return cls(P, bongartz_completion(P) if not P.is_zero() else regular_complex(P.alg))

    def hom_dim(self, X: ProjComplex, Y: ProjComplex) -> int:
        return hom_mod_P_dim(self.reducer, X, Y)

    def generator(self) -> ProjComplex:
        return phi_reduce(self.reducer, self.bongartz)
