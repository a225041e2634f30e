"""Finite-dimensional right modules over a :class:`BasedAlgebra`.

A module stores one vector space per vertex and, for every radical basis
element ``b`` in ``e_s A e_t``, a matrix ``M_b`` of shape
``dims[t] x dims[s]`` acting on column vectors.  Right-module compatibility
reads ``M_{bc} = M_c M_b``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import BasedAlgebra, Element, HomData
from .errors import CapOverflowError, InputError, SplitBasicError
from .exactlinalg import (
    ONE,
    ZERO,
    RatMatrix,
    Subspace,
    block_diag,
    is_invertible,
    kernel_rows,
    minpoly_split,
    poly_eval_matrix,
    poly_pow,
    rank,
    solve,
)


class FdModule:
    __slots__ = ("alg", "dims", "act", "_key", "_hash")

    def __init__(self, alg: BasedAlgebra, dims: Sequence[int], act: Dict[int, RatMatrix], validate: bool = True):
        if len(dims) != alg.n:
            raise InputError("dimension vector length differs from the number of vertices")
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        full = {}
        for b in alg.radical:
            s, t = alg.src[b], alg.tgt[b]
            m = act.get(b)
            if m is None:
                m = RatMatrix.zeros(self.dims[t], self.dims[s])
            if m.shape != (self.dims[t], self.dims[s]):
                raise InputError(f"action of {alg.labels[b]} has shape {m.shape}, expected {(self.dims[t], self.dims[s])}")
            full[b] = m
        self.act = full
        self._key = None
        self._hash = None
        if validate:
            self.validate()

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_arrows(cls, alg, dims: Sequence[int], mats: Dict[str, object]) -> "FdModule":
        """Representation of a path algebra from one matrix per arrow."""
        if not hasattr(alg, "paths"):
            raise InputError("arrow matrices need a path algebra")
        dims = [int(d) for d in dims]
        amats = {}
        for name, k in alg.arrow_index.items():
            s, t = alg.src[k], alg.tgt[k]
            raw = mats.get(name)
            if raw is None:
                amats[name] = RatMatrix.zeros(dims[t], dims[s])
            else:
                amats[name] = raw if isinstance(raw, RatMatrix) else RatMatrix(raw, dims[s])
            if amats[name].shape != (dims[t], dims[s]):
                raise InputError(f"matrix of arrow {name} has the wrong shape")
        unknown = set(mats) - set(alg.arrow_index)
        if unknown:
            raise InputError(f"unknown arrows {sorted(unknown)}")
        act = {}
        for k in alg.radical:
            path = alg.paths[k]
            m = amats[path[0]]
            for a in path[1:]:
                m = amats[a] @ m
            act[k] = m
        for rel in alg.presentation.relations:
            m = amats[rel[0]]
            for a in rel[1:]:
                m = amats[a] @ m
            if not m.is_zero():
                raise InputError(f"relation {'*'.join(rel)} does not act as zero")
        return cls(alg, dims, act)

    # -- structure ------------------------------------------------------------
    def validate(self) -> None:
        alg = self.alg
        for k in alg.radical:
            for l in alg.radical:
                if alg.tgt[k] != alg.src[l]:
                    continue
                lhs = self.act[l] @ self.act[k]
                rhs = RatMatrix.zeros(lhs.rows, lhs.cols)
                for m, c in alg.mul_basis(k, l):
                    rhs = rhs + self.act[m].scale(c)
                if lhs != rhs:
                    raise InputError(f"action violates the product {alg.labels[k]}*{alg.labels[l]}")

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def action(self, k: int) -> RatMatrix:
        """Matrix of any basis element (idempotents act as identities)."""
        if k < self.alg.n:
            return RatMatrix.identity(self.dims[k])
        return self.act[k]

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.dims, tuple(self.act[b] for b in self.alg.radical))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, FdModule) and self.alg is other.alg and self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        return f"FdModule(dims={list(self.dims)})"

    def to_json(self) -> dict:
        alg = self.alg
        out = {"dims": list(self.dims)}
        if hasattr(alg, "arrow_index"):
            out["arrows"] = {name: self.act[k].to_strings() for name, k in alg.arrow_index.items()}
        else:
            out["action"] = {alg.labels[k]: self.act[k].to_strings() for k in alg.radical}
        return out


def module_from_json(alg, data) -> FdModule:
    """Module literal: ``{"dims": [...], "arrows": {"a": [["1", "0"], ...]}}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    try:
        return FdModule.from_arrows(alg, data["dims"], data.get("arrows", {}))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed module literal: {exc}") from exc


# ---------------------------------------------------------------------------
# maps


class ModuleMap:
    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: FdModule, target: FdModule, blocks: Sequence[RatMatrix], validate: bool = False):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        if validate:
            self.validate()

    def validate(self) -> None:
        alg = self.source.alg
        if self.target.alg is not alg:
            raise ValueError("algebra mismatch")
        for i, blk in enumerate(self.blocks):
            if blk.shape != (self.target.dims[i], self.source.dims[i]):
                raise ValueError("block shape mismatch")
        for b in alg.generators:
            s, t = alg.src[b], alg.tgt[b]
            if self.target.act[b] @ self.blocks[s] != self.blocks[t] @ self.source.act[b]:
                raise ValueError(f"map does not commute with {alg.labels[b]}")

    @classmethod
    def zero(cls, source: FdModule, target: FdModule) -> "ModuleMap":
        return cls(source, target, [RatMatrix.zeros(target.dims[i], source.dims[i]) for i in range(source.alg.n)])

    @classmethod
    def identity(cls, m: FdModule) -> "ModuleMap":
        return cls(m, m, [RatMatrix.identity(d) for d in m.dims])

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a.scale(c) for a in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_iso(self) -> bool:
        return all(b.rows == b.cols and is_invertible(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(rank(b) == b.cols for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks)

    def rank(self) -> int:
        return sum(rank(b) for b in self.blocks)

    def flat(self) -> List[Fraction]:
        out: List[Fraction] = []
        for b in self.blocks:
            for row in b.data:
                out.extend(row)
        return out

    @classmethod
    def from_flat(cls, source: FdModule, target: FdModule, v: Sequence[Fraction]) -> "ModuleMap":
        blocks = []
        pos = 0
        for i in range(source.alg.n):
            r, c = target.dims[i], source.dims[i]
            blocks.append(RatMatrix._raw([tuple(v[pos + x * c: pos + (x + 1) * c]) for x in range(r)], c))
            pos += r * c
        return cls(source, target, blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleMap) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)


def linear_combination(maps: Sequence[ModuleMap], coeffs: Sequence[Fraction], source=None, target=None) -> ModuleMap:
    if not maps:
        return ModuleMap.zero(source, target)
    out = ModuleMap.zero(maps[0].source, maps[0].target)
    for f, c in zip(maps, coeffs):
        if c:
            out = out + f.scale(c)
    return out


# ---------------------------------------------------------------------------
# Hom spaces

_HOM_CACHE: Dict[tuple, List[ModuleMap]] = {}
_CACHE_LIMIT = 200000


def _hom_system(M: FdModule, N: FdModule) -> Tuple[List[List[Fraction]], int]:
    alg = M.alg
    offsets = []
    pos = 0
    for i in range(alg.n):
        offsets.append(pos)
        pos += N.dims[i] * M.dims[i]
    nvars = pos
    rows: List[List[Fraction]] = []
    for b in alg.generators:
        s, t = alg.src[b], alg.tgt[b]
        Nb, Mb = N.act[b], M.act[b]
        ms, nt = M.dims[s], N.dims[t]
        ns, mt = N.dims[s], M.dims[t]
        if ms == 0 or nt == 0:
            continue
        for r in range(nt):
            for c in range(ms):
                row = [ZERO] * nvars
                nz = False
                # (N_b f_s)[r][c] = sum_k N_b[r][k] f_s[k][c]
                for k in range(ns):
                    x = Nb.data[r][k]
                    if x:
                        row[offsets[s] + k * ms + c] += x
                        nz = True
                # (f_t M_b)[r][c] = sum_k f_t[r][k] M_b[k][c]
                for k in range(mt):
                    x = Mb.data[k][c]
                    if x:
                        row[offsets[t] + r * mt + k] -= x
                        nz = True
                if nz:
                    rows.append(row)
    return rows, nvars


def hom_basis(M: FdModule, N: FdModule) -> List[ModuleMap]:
    """Basis of Hom_A(M, N)."""
    if M.alg is not N.alg:
        raise InputError("modules live over different algebras")
    key = (M.key(), N.key(), M.alg.uid)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return [ModuleMap(M, N, f.blocks) for f in hit]
    rows, nvars = _hom_system(M, N)
    vecs = kernel_rows(rows, nvars)
    maps = [ModuleMap.from_flat(M, N, v) for v in vecs]
    if len(_HOM_CACHE) > _CACHE_LIMIT:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = maps
    return list(maps)


def hom_dim(M: FdModule, N: FdModule) -> int:
    if M.dim == 0 or N.dim == 0:
        return 0
    return len(hom_basis(M, N))


def coordinates(maps: Sequence[ModuleMap], f: ModuleMap) -> Optional[List[Fraction]]:
    """Coordinates of f in the span of ``maps`` (None if outside)."""
    if not maps:
        return [] if f.is_zero() else None
    mat = RatMatrix.from_columns([g.flat() for g in maps], len(f.flat()))
    return solve(mat, f.flat())


# ---------------------------------------------------------------------------
# basic modules and sums


def zero_module(alg: BasedAlgebra) -> FdModule:
    return FdModule(alg, [0] * alg.n, {}, validate=False)


def simple_module(alg: BasedAlgebra, i: int) -> FdModule:
    return FdModule(alg, [1 if j == i else 0 for j in range(alg.n)], {}, validate=False)


def _coeff_matrix(alg: BasedAlgebra, rows_basis: Sequence[int], cols_basis: Sequence[int], fn) -> RatMatrix:
    """Matrix whose column for basis element x lists the coefficients of fn(x)."""
    pos = {k: r for r, k in enumerate(rows_basis)}
    data = [[ZERO] * len(cols_basis) for _ in rows_basis]
    for c, x in enumerate(cols_basis):
        for m, v in fn(x).items():
            data[pos[m]][c] += v
    return RatMatrix._raw([tuple(r) for r in data], len(cols_basis))


def projective_module(alg: BasedAlgebra, i: int) -> FdModule:
    """P_i = e_i A with basis the basis elements starting at i."""
    return proj_sum(alg, [i])


def injective_module(alg: BasedAlgebra, i: int) -> FdModule:
    """I_i = D(A e_i), dual to the basis elements ending at i."""
    dims = [len(alg.piece(s, i)) for s in range(alg.n)]
    act = {}
    for b in alg.radical:
        s, t = alg.src[b], alg.tgt[b]
        xs, ys = alg.piece(s, i), alg.piece(t, i)
        # (x* . b)(y) = x*(b y)
        data = [[ZERO] * len(xs) for _ in ys]
        xpos = {x: c for c, x in enumerate(xs)}
        for r, y in enumerate(ys):
            for m, v in alg.mul({b: ONE}, {y: ONE}).items():
                data[r][xpos[m]] += v
        act[b] = RatMatrix(data, len(xs))
    return FdModule(alg, dims, act, validate=False)


_PROJ_CACHE: Dict[tuple, FdModule] = {}


def proj_sum(alg: BasedAlgebra, verts: Sequence[int]) -> FdModule:
    """Direct sum of the indecomposable projectives P_v for v in ``verts``."""
    key = (alg.uid, tuple(verts))
    hit = _PROJ_CACHE.get(key)
    if hit is not None and hit.alg is alg:
        return hit
    dims = [sum(len(alg.piece(v, t)) for v in verts) for t in range(alg.n)]
    act = {}
    for b in alg.radical:
        s, t = alg.src[b], alg.tgt[b]
        blocks = []
        for v in verts:
            blocks.append(_coeff_matrix(alg, alg.piece(v, t), alg.piece(v, s), lambda x: alg.mul({x: ONE}, {b: ONE})))
        act[b] = block_diag(blocks) if blocks else RatMatrix.zeros(0, 0)
    m = FdModule(alg, dims, act, validate=False)
    _PROJ_CACHE[key] = m
    return m


def amatrix_to_map(alg: BasedAlgebra, src: Sequence[int], tgt: Sequence[int], D) -> ModuleMap:
    """Module map between sums of projectives given by algebra elements.

    ``D[c][a]`` lies in e_{tgt[c]} A e_{src[a]} and acts by left multiplication."""
    S, T = proj_sum(alg, src), proj_sum(alg, tgt)
    blocks = []
    for t in range(alg.n):
        rows = [[ZERO] * S.dims[t] for _ in range(T.dims[t])]
        col = 0
        for a, v in enumerate(src):
            for p in alg.piece(v, t):
                row0 = 0
                for c, w in enumerate(tgt):
                    piece = alg.piece(w, t)
                    x = D[c][a]
                    if x:
                        pos = {k: r for r, k in enumerate(piece)}
                        for m, val in alg.mul(x, {p: ONE}).items():
                            rows[row0 + pos[m]][col] += val
                    row0 += len(piece)
                col += 1
        blocks.append(RatMatrix(rows, S.dims[t]))
    return ModuleMap(S, T, blocks)


def map_to_amatrix(alg: BasedAlgebra, src: Sequence[int], tgt: Sequence[int], f: ModuleMap) -> List[List[Element]]:
    """Inverse of :func:`amatrix_to_map`: read off images of the generators e_v."""
    D = [[{} for _ in src] for _ in tgt]
    for a, v in enumerate(src):
        col = sum(len(alg.piece(u, v)) for u in src[:a])  # position of e_v in (P_src)_v
        vec = f.blocks[v].column(col)
        row0 = 0
        for c, w in enumerate(tgt):
            piece = alg.piece(w, v)
            D[c][a] = {k: vec[row0 + r] for r, k in enumerate(piece) if vec[row0 + r]}
            row0 += len(piece)
    return D


def map_from_projectives(verts: Sequence[int], target: FdModule, vectors: Sequence[Sequence[Fraction]]) -> ModuleMap:
    """Map from the sum of P_v sending the generator of each summand to the given vector."""
    alg = target.alg
    S = proj_sum(alg, verts)
    blocks = []
    for t in range(alg.n):
        cols = []
        for v, vec in zip(verts, vectors):
            for p in alg.piece(v, t):
                cols.append(target.action(p).apply(vec) if p >= alg.n else list(vec))
        blocks.append(RatMatrix.from_columns(cols, target.dims[t]))
    return ModuleMap(S, target, blocks)


def direct_sum(mods: Sequence[FdModule], alg: Optional[BasedAlgebra] = None) -> FdModule:
    if not mods:
        return zero_module(alg)
    alg = mods[0].alg
    dims = [sum(m.dims[i] for m in mods) for i in range(alg.n)]
    act = {b: block_diag([m.act[b] for m in mods]) for b in alg.radical}
    return FdModule(alg, dims, act, validate=False)


def sum_inclusions(mods: Sequence[FdModule], total: FdModule) -> List[ModuleMap]:
    alg = total.alg
    out = []
    offs = [0] * alg.n
    for m in mods:
        blocks = []
        for i in range(alg.n):
            data = [[ZERO] * m.dims[i] for _ in range(total.dims[i])]
            for r in range(m.dims[i]):
                data[offs[i] + r][r] = ONE
            blocks.append(RatMatrix(data, m.dims[i]))
            offs[i] += m.dims[i]
        out.append(ModuleMap(m, total, blocks))
    return out


def sum_projections(mods: Sequence[FdModule], total: FdModule) -> List[ModuleMap]:
    return [ModuleMap(total, m, [b.transpose() for b in inc.blocks]) for m, inc in zip(mods, sum_inclusions(mods, total))]


def map_matrix(maps: Sequence[Sequence[ModuleMap]], sources: Sequence[FdModule], targets: Sequence[FdModule]) -> ModuleMap:
    """Block map from the sum of ``sources`` to the sum of ``targets``; maps[c][a]: sources[a] -> targets[c]."""
    S, T = direct_sum(sources, None if sources else targets[0].alg), direct_sum(targets, None if targets else sources[0].alg)
    alg = S.alg
    blocks = []
    for i in range(alg.n):
        rows = []
        for c, tg in enumerate(targets):
            for r in range(tg.dims[i]):
                row = []
                for a, sc in enumerate(sources):
                    blk = maps[c][a].blocks[i]
                    row.extend(blk.data[r])
                rows.append(row)
        blocks.append(RatMatrix(rows, S.dims[i]))
    return ModuleMap(S, T, blocks)


# ---------------------------------------------------------------------------
# submodules, quotients, kernels, images


def _span_columns(vecs: Iterable[Sequence[Fraction]], n: int) -> Subspace:
    return Subspace(n, vecs)


def submodule(M: FdModule, spaces: Sequence[Subspace]) -> Tuple[FdModule, ModuleMap]:
    """Submodule with the given per-vertex subspaces (must be action-stable)."""
    alg = M.alg
    bases = [list(sp.basis) for sp in spaces]
    dims = [len(b) for b in bases]
    act = {}
    for b in alg.radical:
        s, t = alg.src[b], alg.tgt[b]
        if dims[s] == 0 or dims[t] == 0:
            act[b] = RatMatrix.zeros(dims[t], dims[s])
            continue
        cols = []
        for v in bases[s]:
            w = M.act[b].apply(v)
            c = _coords_in_rref(spaces[t], w)
            if c is None:
                raise ValueError("subspaces are not stable under the action")
            cols.append(c)
        act[b] = RatMatrix.from_columns(cols, dims[t])
    S = FdModule(alg, dims, act, validate=False)
    inc = ModuleMap(S, M, [RatMatrix.from_columns(bases[i], M.dims[i]) for i in range(alg.n)])
    return S, inc


def _coords_in_rref(sp: Subspace, w: Sequence[Fraction]) -> Optional[List[Fraction]]:
    # basis is in rref: coordinates are the pivot entries
    c = [w[p] for p in sp.pivots]
    recon = [ZERO] * sp.ambient_dim
    for coef, vec in zip(c, sp.basis):
        if coef:
            for j, x in enumerate(vec):
                if x:
                    recon[j] += coef * x
    if any(a != b for a, b in zip(recon, w)):
        return None
    return c


def quotient(M: FdModule, spaces: Sequence[Subspace]) -> Tuple[FdModule, ModuleMap]:
    """M / U for a submodule U given by per-vertex subspaces; returns the projection."""
    alg = M.alg
    keeps = [sp.complement_coordinates() for sp in spaces]
    dims = [len(k) for k in keeps]

    def project(i: int, v: Sequence[Fraction]) -> List[Fraction]:
        w = spaces[i].reduce(v)
        return [w[j] for j in keeps[i]]

    act = {}
    for b in alg.radical:
        s, t = alg.src[b], alg.tgt[b]
        cols = []
        for j in keeps[s]:
            e = [ZERO] * M.dims[s]
            e[j] = ONE
            cols.append(project(t, M.act[b].apply(e)))
        act[b] = RatMatrix.from_columns(cols, dims[t])
    Qm = FdModule(alg, dims, act, validate=False)
    blocks = []
    for i in range(alg.n):
        cols = []
        for j in range(M.dims[i]):
            e = [ZERO] * M.dims[i]
            e[j] = ONE
            cols.append(project(i, e))
        blocks.append(RatMatrix.from_columns(cols, dims[i]))
    return Qm, ModuleMap(M, Qm, blocks)


def kernel(f: ModuleMap) -> Tuple[FdModule, ModuleMap]:
    spaces = [Subspace(blk.cols, kernel_rows([list(r) for r in blk.data], blk.cols)) for blk in f.blocks]
    return submodule(f.source, spaces)


def image_spaces(f: ModuleMap) -> List[Subspace]:
    return [Subspace(blk.rows, blk.columns()) for blk in f.blocks]


def image(f: ModuleMap) -> Tuple[FdModule, ModuleMap]:
    return submodule(f.target, image_spaces(f))


def cokernel(f: ModuleMap) -> Tuple[FdModule, ModuleMap]:
    return quotient(f.target, image_spaces(f))


def radical_spaces(M: FdModule) -> List[Subspace]:
    alg = M.alg
    cols: List[List[List[Fraction]]] = [[] for _ in range(alg.n)]
    for b in alg.generators:
        cols[alg.tgt[b]].extend(M.act[b].columns())
    return [Subspace(M.dims[i], cols[i]) for i in range(alg.n)]


def radical_submodule(M: FdModule) -> FdModule:
    return submodule(M, radical_spaces(M))[0]


def top_dims(M: FdModule) -> List[int]:
    return [M.dims[i] - sp.dim for i, sp in enumerate(radical_spaces(M))]


def socle_spaces(M: FdModule) -> List[Subspace]:
    alg = M.alg
    out = []
    for i in range(alg.n):
        rows = []
        for b in alg.generators:
            if alg.src[b] == i:
                rows.extend(list(r) for r in M.act[b].data)
        out.append(Subspace(M.dims[i], kernel_rows(rows, M.dims[i])))
    return out


def socle_quotient(M: FdModule) -> FdModule:
    return quotient(M, socle_spaces(M))[0]


def is_projective(M: FdModule) -> bool:
    """M is projective iff its projective cover is an isomorphism (dimension test)."""
    td = top_dims(M)
    return sum(td[i] * len(M.alg.piece(i, t)) for i in range(M.alg.n) for t in range(M.alg.n)) == M.dim


# ---------------------------------------------------------------------------
# projective covers and presentations


@dataclass
class ProjectiveCover:
    verts: List[int]
    module: FdModule
    surjection: ModuleMap


def projective_cover(M: FdModule, allow_zero: bool = False) -> ProjectiveCover:
    """Projective cover P -> M with generators chosen on a complement of rad M."""
    if M.dim == 0 and not allow_zero:
        raise InputError("the zero module has no projective cover in this sense")
    verts: List[int] = []
    vecs: List[List[Fraction]] = []
    for i, sp in enumerate(radical_spaces(M)):
        for j in sp.complement_coordinates():
            e = [ZERO] * M.dims[i]
            e[j] = ONE
            verts.append(i)
            vecs.append(e)
    f = map_from_projectives(verts, M, vecs)
    return ProjectiveCover(verts, f.source, f)


@dataclass
class Presentation:
    """Minimal projective presentation P1 --d--> P0 --> M --> 0."""

    p1: List[int]
    p0: List[int]
    d: List[List[Element]]  # d[c][a] in e_{p0[c]} A e_{p1[a]}
    cover: ModuleMap  # P0 -> M

    def d_map(self, alg) -> ModuleMap:
        return amatrix_to_map(alg, self.p1, self.p0, self.d)


def min_proj_presentation(M: FdModule) -> Presentation:
    alg = M.alg
    if M.dim == 0:
        return Presentation([], [], [], ModuleMap.zero(proj_sum(alg, []), M))
    pc = projective_cover(M)
    K, inc = kernel(pc.surjection)
    if K.dim == 0:
        return Presentation([], pc.verts, [[] for _ in pc.verts], pc.surjection)
    kc = projective_cover(K)
    dmap = inc @ kc.surjection
    D = map_to_amatrix(alg, kc.verts, pc.verts, dmap)
    return Presentation(kc.verts, pc.verts, D, pc.surjection)


def syzygy(M: FdModule) -> Tuple[FdModule, ModuleMap, ProjectiveCover]:
    pc = projective_cover(M, allow_zero=True)
    K, inc = kernel(pc.surjection)
    return K, inc, pc


# ---------------------------------------------------------------------------
# Nakayama functor, tau and its inverse


def nakayama_map(alg: BasedAlgebra, src: Sequence[int], tgt: Sequence[int], D) -> ModuleMap:
    """nu applied to the map between projective sums given by ``D``: sum I_src -> sum I_tgt."""
    Isrc = direct_sum([injective_module(alg, v) for v in src], alg)
    Itgt = direct_sum([injective_module(alg, v) for v in tgt], alg)
    blocks = []
    for s in range(alg.n):
        rows = [[ZERO] * Isrc.dims[s] for _ in range(Itgt.dims[s])]
        row0 = 0
        for c, w in enumerate(tgt):
            ys = alg.piece(s, w)
            col0 = 0
            for a, v in enumerate(src):
                xs = alg.piece(s, v)
                x = D[c][a]
                if x:
                    xpos = {k: j for j, k in enumerate(xs)}
                    for r, y in enumerate(ys):
                        for m, val in alg.mul({y: ONE}, x).items():
                            rows[row0 + r][col0 + xpos[m]] += val
                col0 += len(xs)
            row0 += len(ys)
        blocks.append(RatMatrix(rows, Isrc.dims[s]))
    return ModuleMap(Isrc, Itgt, blocks)


_TAU_CACHE: Dict[tuple, FdModule] = {}


def tau(M: FdModule) -> FdModule:
    """Auslander-Reiten translate D Tr M = ker(nu(P1) -> nu(P0))."""
    key = (M.alg.uid, M.key())
    hit = _TAU_CACHE.get(key)
    if hit is not None:
        return hit
    alg = M.alg
    pres = min_proj_presentation(M)
    if not pres.p1:
        out = zero_module(alg)
    else:
        out = kernel(nakayama_map(alg, pres.p1, pres.p0, pres.d))[0]
    _TAU_CACHE[key] = out
    return out


_OPPOSITE: Dict[int, BasedAlgebra] = {}


def opposite_of(alg: BasedAlgebra) -> BasedAlgebra:
    op = _OPPOSITE.get(alg.uid)
    if op is None:
        op = alg.opposite()
        _OPPOSITE[alg.uid] = op
        _OPPOSITE[op.uid] = alg
    return op


def dual_module(M: FdModule) -> FdModule:
    """Vector space dual, a right module over the opposite algebra."""
    op = opposite_of(M.alg)
    return FdModule(op, M.dims, {b: m.transpose() for b, m in M.act.items()}, validate=False)


def tau_inverse(M: FdModule) -> FdModule:
    """Tr D M computed as D tau (D M) over the opposite algebra."""
    return dual_module(tau(dual_module(M)))


# ---------------------------------------------------------------------------
# Ext


def ext1_dim(X: FdModule, Y: FdModule) -> int:
    """dim Ext^1(X, Y) from 0 -> Hom(X,Y) -> Hom(P0,Y) -> Hom(Omega X,Y) -> Ext -> 0."""
    if X.dim == 0 or Y.dim == 0:
        return 0
    K, inc, pc = syzygy(X)
    if K.dim == 0:
        return 0
    return hom_dim(K, Y) - hom_dim(pc.module, Y) + hom_dim(X, Y)


def extension_middle_terms(X: FdModule, Y: FdModule) -> List[FdModule]:
    """Middle terms of extensions 0 -> Y -> E -> X -> 0 for a basis of Ext^1(X, Y)."""
    if X.dim == 0 or Y.dim == 0:
        return []
    K, inc, pc = syzygy(X)
    if K.dim == 0:
        return []
    restricted = [g @ inc for g in hom_basis(pc.module, Y)]
    span = Subspace(len(ModuleMap.zero(K, Y).flat()), [g.flat() for g in restricted])
    out = []
    for g in hom_basis(K, Y):
        v = g.flat()
        if span.contains(v):
            continue
        span = span + Subspace(len(v), [v])
        out.append(pushout_middle(g, inc))
    return out


def pushout_middle(g: ModuleMap, inc: ModuleMap) -> FdModule:
    """Pushout of Y <-g- K -inc-> P, i.e. (Y + P) / {(g k, -inc k)}."""
    Y, P = g.target, inc.target
    S = direct_sum([Y, P])
    alg = S.alg
    spaces = []
    for i in range(alg.n):
        cols = []
        for j in range(g.source.dims[i]):
            e = [ZERO] * g.source.dims[i]
            e[j] = ONE
            cols.append(g.blocks[i].apply(e) + [-x for x in inc.blocks[i].apply(e)])
        spaces.append(Subspace(S.dims[i], cols))
    return quotient(S, spaces)[0]


# ---------------------------------------------------------------------------
# endomorphism rings, decomposition, isomorphism


def endo_radical(M: FdModule, basis: Optional[List[ModuleMap]] = None) -> Subspace:
    """rad End(M) inside the coordinate space of ``basis`` via the trace form on M."""
    basis = hom_basis(M, M) if basis is None else basis
    d = len(basis)
    form = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            comp = basis[i] @ basis[j]
            tr = ZERO
            for blk in comp.blocks:
                for k in range(blk.rows):
                    tr += blk.data[k][k]
            form[i][j] = tr
            form[j][i] = tr
    return Subspace(d, kernel_rows(form, d))


def _poly_kernel_spaces(phi: ModuleMap, poly: List[Fraction]) -> List[Subspace]:
    spaces = []
    for blk in phi.blocks:
        if blk.rows == 0:
            spaces.append(Subspace(0, []))
            continue
        m = poly_eval_matrix(poly, blk)
        spaces.append(Subspace(blk.cols, kernel_rows([list(r) for r in m.data], blk.cols)))
    return spaces


def _splitting_candidates(basis: List[ModuleMap]):
    yield from basis
    for f, g in itertools.combinations(basis, 2):
        yield f + g
        yield f - g
        yield f + g.scale(2)
    for f, g, h in itertools.combinations(basis, 3):
        yield f + g.scale(2) + h.scale(3)


def _split_once(M: FdModule) -> Optional[List[Tuple[FdModule, ModuleMap]]]:
    """Try to split M by a Fitting decomposition; None when M is indecomposable."""
    basis = hom_basis(M, M)
    rad = endo_radical(M, basis)
    top = len(basis) - rad.dim
    if top == 1:
        return None
    for phi in _splitting_candidates(basis):
        full = block_diag([b for b in phi.blocks if b.rows])
        if full.rows == 0:
            continue
        factors = minpoly_split(full)
        if len(factors) < 2:
            continue
        parts = []
        for p, mult in factors:
            spaces = _poly_kernel_spaces(phi, poly_pow(p, mult))
            parts.append(submodule(M, spaces))
        return parts
    raise SplitBasicError(f"module with dimension vector {list(M.dims)} has End/rad of dimension {top} but no splitting endomorphism was found")


@dataclass
class Decomposition:
    summands: List[FdModule]  # indecomposable, in order
    inclusions: List[ModuleMap]  # summand -> M, jointly an isomorphism
    grouped: List[Tuple[FdModule, int]]


_DECOMP_CACHE: Dict[tuple, Decomposition] = {}


def decompose_full(M: FdModule) -> Decomposition:
    key = (M.alg.uid, M.key())
    hit = _DECOMP_CACHE.get(key)
    if hit is not None:
        return hit
    stack: List[Tuple[FdModule, ModuleMap]] = [(M, ModuleMap.identity(M))]
    done: List[Tuple[FdModule, ModuleMap]] = []
    while stack:
        X, inc = stack.pop()
        if X.dim == 0:
            continue
        parts = _split_once(X)
        if parts is None:
            done.append((X, inc))
        else:
            for S, j in parts:
                stack.append((S, inc @ j))
    done.sort(key=lambda x: (x[0].dim, x[0].dims))
    summands = [d[0] for d in done]
    incs = [d[1] for d in done]
    total = direct_sum(summands, M.alg)
    iso = map_matrix([incs], summands, [M]) if summands else ModuleMap.zero(total, M)
    if not iso.is_iso():
        raise ValueError("decomposition failed to produce an isomorphism")
    grouped: List[Tuple[FdModule, int]] = []
    for S in summands:
        for idx, (R, mult) in enumerate(grouped):
            if is_isomorphic_indecomposable(R, S):
                grouped[idx] = (R, mult + 1)
                break
        else:
            grouped.append((S, 1))
    out = Decomposition(summands, incs, grouped)
    _DECOMP_CACHE[key] = out
    return out


def decompose(M: FdModule) -> List[Tuple[FdModule, int]]:
    """Indecomposable summands with multiplicities."""
    return list(decompose_full(M).grouped)


def is_indecomposable(M: FdModule) -> bool:
    return M.dim > 0 and _split_once(M) is None


def find_isomorphism(X: FdModule, Y: FdModule) -> Optional[ModuleMap]:
    """An isomorphism between indecomposables X and Y, or None."""
    if X.dims != Y.dims:
        return None
    if X.dim == 0:
        return ModuleMap.zero(X, Y)
    hxy = hom_basis(X, Y)
    if not hxy:
        return None
    if len(hxy) != hom_dim(Y, X) or len(hxy) != hom_dim(X, X):
        return None
    # non-isomorphisms form a hyperplane, so some basis element or a small combination is invertible
    for f in hxy:
        if f.is_iso():
            return f
    for f, g in itertools.combinations(hxy, 2):
        for h in (f + g, f - g, f + g.scale(2)):
            if h.is_iso():
                return h
    return None


def is_isomorphic_indecomposable(X: FdModule, Y: FdModule) -> bool:
    return find_isomorphism(X, Y) is not None


def is_isomorphic(M: FdModule, N: FdModule) -> bool:
    if M.alg is not N.alg or M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    if M == N:
        return True
    dm, dn = decompose(M), decompose(N)
    if sorted(m for _, m in dm) != sorted(m for _, m in dn):
        return False
    used = [False] * len(dn)
    for X, mx in dm:
        for j, (Y, my) in enumerate(dn):
            if not used[j] and mx == my and is_isomorphic_indecomposable(X, Y):
                used[j] = True
                break
        else:
            return False
    return True


def basic_part(M: FdModule) -> List[FdModule]:
    return [X for X, _ in decompose(M)]


class ModuleRegistry:
    """Isomorphism classes of indecomposables, numbered in order of discovery."""

    def __init__(self, alg: BasedAlgebra):
        self.alg = alg
        self.reps: List[FdModule] = []
        self._by_dims: Dict[tuple, List[int]] = {}
        self._memo: Dict[tuple, int] = {}

    def index(self, X: FdModule, add: bool = True) -> Optional[int]:
        """Id of an indecomposable (registering it when new)."""
        k = X.key()
        hit = self._memo.get(k)
        if hit is not None:
            return hit
        for idx in self._by_dims.get(X.dims, []):
            if is_isomorphic_indecomposable(self.reps[idx], X):
                self._memo[k] = idx
                return idx
        if not add:
            return None
        idx = len(self.reps)
        self.reps.append(X)
        self._by_dims.setdefault(X.dims, []).append(idx)
        self._memo[k] = idx
        return idx

    def ids(self, M: FdModule, add: bool = True) -> Tuple[int, ...]:
        """Sorted ids of the indecomposable summands of M (with multiplicity)."""
        out = []
        for X, mult in decompose(M):
            i = self.index(X, add)
            if i is None:
                return None
            out.extend([i] * mult)
        return tuple(sorted(out))

    def __len__(self) -> int:
        return len(self.reps)


# ---------------------------------------------------------------------------
# torsion theory


def trace_spaces(M: FdModule, X: FdModule) -> List[Subspace]:
    cols: List[List[List[Fraction]]] = [[] for _ in range(X.alg.n)]
    if M.dim and X.dim:
        for f in hom_basis(M, X):
            for i, blk in enumerate(f.blocks):
                cols[i].extend(blk.columns())
    return [Subspace(X.dims[i], cols[i]) for i in range(X.alg.n)]


def torsion_part(M: FdModule, X: FdModule) -> Tuple[FdModule, ModuleMap]:
    return submodule(X, trace_spaces(M, X))


def torsion_free_quotient(M: FdModule, X: FdModule, check: bool = False) -> Tuple[FdModule, ModuleMap]:
    """f_M(X) = X / (trace of M in X) with the quotient map."""
    if check and not is_tau_rigid(M):
        raise InputError("torsion-free functor requires a tau-rigid module")
    Qm, proj = quotient(X, trace_spaces(M, X))
    if check and hom_dim(M, Qm) != 0:
        raise ValueError("torsion-free quotient is not in the perpendicular category")
    return Qm, proj


def gen_membership(M: FdModule, X: FdModule) -> bool:
    return all(sp.dim == X.dims[i] for i, sp in enumerate(trace_spaces(M, X)))


def is_tau_rigid(M: FdModule) -> bool:
    return M.dim == 0 or hom_dim(M, tau(M)) == 0


# ---------------------------------------------------------------------------
# support tau-rigid pairs


@dataclass(frozen=True)
class SuppTauRigidPair:
    """(M, Q) with M given by its indecomposable summands and Q by vertex indices."""

    summands: Tuple[FdModule, ...]
    projectives: Tuple[int, ...]
    alg: BasedAlgebra

    @property
    def module(self) -> FdModule:
        return direct_sum(list(self.summands), self.alg)

    @property
    def projective(self) -> FdModule:
        return proj_sum(self.alg, list(self.projectives))

    def size(self) -> int:
        return len(self.summands) + len(self.projectives)

    @classmethod
    def of(cls, M: FdModule, Q: Sequence[int] = ()) -> "SuppTauRigidPair":
        return cls(tuple(basic_part(M)), tuple(sorted(Q)), M.alg)


def is_basic(summands: Sequence[FdModule]) -> bool:
    for X, Y in itertools.combinations(summands, 2):
        if is_isomorphic_indecomposable(X, Y):
            return False
    return True


def is_supp_tau_rigid(pair: SuppTauRigidPair) -> bool:
    if len(set(pair.projectives)) != len(pair.projectives):
        return False
    M = pair.module
    if not is_basic(pair.summands):
        return False
    if not is_tau_rigid(M):
        return False
    # Hom(P_i, M) = M_i
    return all(M.dims[i] == 0 for i in pair.projectives)


def is_supp_tau_tilting(pair: SuppTauRigidPair) -> bool:
    return is_supp_tau_rigid(pair) and pair.size() == pair.alg.n


# ---------------------------------------------------------------------------
# indecomposable enumeration


def enumerate_indecomposables(alg: BasedAlgebra, cap: int = 200, registry: Optional[ModuleRegistry] = None) -> ModuleRegistry:
    """Closure of the projectives under tau, tau^-, radicals, socle quotients and extensions."""
    reg = registry or ModuleRegistry(alg)
    queue: List[FdModule] = []

    def add(M: FdModule) -> None:
        if M.dim == 0:
            return
        for X, _ in decompose(M):
            before = len(reg)
            reg.index(X)
            if len(reg) > before:
                if len(reg) > cap:
                    raise CapOverflowError(f"more than {cap} indecomposables found")
                queue.append(X)

    for i in range(alg.n):
        add(projective_module(alg, i))
        add(injective_module(alg, i))
    processed = 0
    ext_done = set()
    while True:
        while processed < len(queue):
            X = queue[processed]
            processed += 1
            add(tau(X))
            add(tau_inverse(X))
            add(radical_submodule(X))
            add(socle_quotient(X))
        size = len(reg)
        for i, X in enumerate(list(reg.reps)):
            for j, Y in enumerate(list(reg.reps)):
                if (i, j) in ext_done:
                    continue
                ext_done.add((i, j))
                for E in extension_middle_terms(X, Y):
                    add(E)
        if len(reg) == size and processed == len(queue):
            return reg


_REGISTRIES: Dict[int, ModuleRegistry] = {}


def registry_for(alg: BasedAlgebra) -> ModuleRegistry:
    """Shared isomorphism-class registry for an algebra."""
    reg = _REGISTRIES.get(alg.uid)
    if reg is None or reg.alg is not alg:
        reg = ModuleRegistry(alg)
        _REGISTRIES[alg.uid] = reg
    return reg


def support_tau_rigid_pairs(alg: BasedAlgebra, cap: int = 200) -> List[SuppTauRigidPair]:
    """All basic support tau-rigid pairs, by exhaustive search over indecomposables.

    Candidates are the tau-rigid indecomposables and the indecomposable
    projectives (shifted); compatibility is pairwise, since Hom(X + Y, tau X + tau Y)
    and Hom(Q, M) split over summands."""
    reg = enumerate_indecomposables(alg, cap=cap, registry=registry_for(alg))
    rigid = [X for X in reg.reps if is_tau_rigid(X)]
    taus = [tau(X) for X in rigid]
    items = [("m", i) for i in range(len(rigid))] + [("p", v) for v in range(alg.n)]

    def compatible(a, b) -> bool:
        if a[0] == "m" and b[0] == "m":
            return hom_dim(rigid[a[1]], taus[b[1]]) == 0 and hom_dim(rigid[b[1]], taus[a[1]]) == 0
        if a[0] == "p" and b[0] == "p":
            return True
        m, p = (a, b) if a[0] == "m" else (b, a)
        return rigid[m[1]].dims[p[1]] == 0

    n = len(items)
    ok = [[compatible(items[i], items[j]) for j in range(n)] for i in range(n)]
    cliques: List[Tuple[int, ...]] = [()]

    def extend(clique, start):
        for j in range(start, n):
            if all(ok[i][j] for i in clique):
                c = clique + (j,)
                cliques.append(c)
                extend(c, j + 1)

    extend((), 0)
    out = []
    for c in cliques:
        mods = tuple(rigid[items[i][1]] for i in c if items[i][0] == "m")
        projs = tuple(sorted(items[i][1] for i in c if items[i][0] == "p"))
        out.append(SuppTauRigidPair(mods, projs, alg))
    return out


def summand_hom_data(summands: Sequence[FdModule]) -> HomData:
    """Hom bases and composition between the listed modules, for endomorphism_algebra."""
    r = len(summands)
    hom = {(s, t): hom_basis(summands[t], summands[s]) for s in range(r) for t in range(r)}

    def compose(s, t, u, f, g):
        F = ModuleMap.from_flat(summands[t], summands[s], f)
        G = ModuleMap.from_flat(summands[u], summands[t], g)
        return (F @ G).flat()

    return HomData(
        r,
        {k: [f.flat() for f in v] for k, v in hom.items()},
        compose,
        [ModuleMap.identity(X).flat() for X in summands],
    )
