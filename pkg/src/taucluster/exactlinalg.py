"""Exact rational linear algebra.

Matrices hold :class:`fractions.Fraction` entries and are immutable.  All
routines are exact; there is no tolerance anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def to_q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class RatMatrix:
    """Immutable rows x cols matrix of rationals.  Zero sizes are allowed."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = tuple(tuple(to_q(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count needed for a matrix with no rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: Sequence[Sequence[Fraction]], cols: int) -> "RatMatrix":
        m = object.__new__(cls)
        m.data = tuple(tuple(r) for r in rows)
        m.rows = len(m.data)
        m.cols = cols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls._raw([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        cols = [list(map(to_q, c)) for c in columns]
        return cls._raw([[c[i] for c in cols] for i in range(rows)], len(cols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> List[Fraction]:
        return [r[j] for r in self.data]

    def columns(self) -> List[List[Fraction]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        return RatMatrix._raw([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    T = property(transpose)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        _same_shape(self, other)
        return RatMatrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        _same_shape(self, other)
        return RatMatrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw([[-a for a in r] for r in self.data], self.cols)

    def scale(self, c) -> "RatMatrix":
        c = to_q(c)
        return RatMatrix._raw([[c * a for a in r] for r in self.data], self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns() if other.cols else []
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), ZERO) for c in ocols])
        return RatMatrix._raw(out, other.cols)

    def apply(self, v: Sequence[Fraction]) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(r, v) if a), ZERO) for r in self.data]

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return RatMatrix._raw([a + b for a, b in zip(self.data, other.data)], self.cols + other.cols)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return RatMatrix._raw(self.data + other.data, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw([[self.data[i][j] for j in cols] for i in rows], len(cols))

    def to_strings(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.data]


def _same_shape(a: RatMatrix, b: RatMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def block_diag(blocks: Sequence[RatMatrix]) -> RatMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[ZERO] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0 : c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return RatMatrix._raw(out, cols)


def stack_rows(rows: Sequence[Sequence[Fraction]], cols: int) -> RatMatrix:
    return RatMatrix._raw(rows, cols)


# ---------------------------------------------------------------------------
# elimination on plain lists


def rref_rows(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form of a list of rows (consumed).  Returns the
    nonzero rows and the pivot columns."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            m[r] = pr
        nzc = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nzc:
                        row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_rows(rows: List[List[Fraction]], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def rref(m: RatMatrix) -> Tuple[RatMatrix, int]:
    """Reduced row-echelon form and rank; zero rows are kept at the bottom."""
    red, piv = rref_rows(m.tolist(), m.cols)
    rk = len(piv)
    red = red + [[ZERO] * m.cols for _ in range(m.rows - rk)]
    return RatMatrix._raw(red, m.cols), rk


def rank(m: RatMatrix) -> int:
    return rank_rows(m.tolist(), m.cols)


def kernel_rows(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    red, piv = rref_rows(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


class Subspace:
    """A subspace of Q^n stored by its canonical rref basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [list(map(to_q, v)) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, piv = rref_rows(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} in Q^{self.ambient_dim})"

    def reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        """Remainder of v after eliminating the pivot coordinates."""
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(list(map(to_q, v))))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def complement_coordinates(self) -> List[int]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def as_matrix(self) -> RatMatrix:
        return RatMatrix._raw(self.basis, self.ambient_dim)


def kernel_basis(m: RatMatrix) -> Subspace:
    """Canonical basis of the null space {v : m v = 0}."""
    return Subspace(m.cols, kernel_rows(m.tolist(), m.cols))


def row_space(m: RatMatrix) -> Subspace:
    return Subspace(m.cols, m.data)


def column_space(m: RatMatrix) -> Subspace:
    return Subspace(m.rows, m.columns())


def solve(m: RatMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    b = [to_q(x) for x in b]
    aug = [list(r) + [bi] for r, bi in zip(m.data, b)]
    red, piv = rref_rows(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(red, piv):
        x[p] = row[m.cols]
    return x


def solve_matrix(m: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Some X with m X = b (column by column), or None."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.column(j))
        if x is None:
            return None
        cols.append(x)
    return RatMatrix.from_columns(cols, m.cols) if cols else RatMatrix.zeros(m.cols, 0)


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.data)]
    red, piv = rref_rows(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix._raw([r[n:] for r in red], n)


def is_invertible(m: RatMatrix) -> bool:
    return m.is_square() and rank(m) == m.rows


def determinant(m: RatMatrix) -> Fraction:
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    a = m.tolist()
    n = m.rows
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)


def poly_trim(p: List[Fraction]) -> List[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_pow(p: Sequence[Fraction], k: int) -> List[Fraction]:
    out = [ONE]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_eval_matrix(p: Sequence[Fraction], m: RatMatrix) -> RatMatrix:
    """p(m) by Horner's rule."""
    n = m.rows
    acc = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    for c in reversed(list(p)):
        acc = acc @ m + ident.scale(c)
    return acc


def minimal_polynomial(m: RatMatrix) -> List[Fraction]:
    """Monic minimal polynomial of a square matrix, lowest degree first."""
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return [ONE]
    powers = [RatMatrix.identity(n)]
    flat = [[x for row in powers[0].data for x in row]]
    while True:
        nxt = powers[-1] @ m
        v = [x for row in nxt.data for x in row]
        # solve sum c_i flat_i = v
        cols = RatMatrix.from_columns(flat, n * n)
        c = solve(cols, v)
        if c is not None:
            return [-x for x in c] + [ONE]
        powers.append(nxt)
        flat.append(v)


def _poly_to_sympy(p: Sequence[Fraction]):
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p))
    return sympy.Poly(expr, x, domain="QQ")


def factor_rational(p: Sequence[Fraction]) -> List[Tuple[List[Fraction], int]]:
    """Monic irreducible factors over Q with multiplicities."""
    p = poly_trim(list(p))
    if len(p) <= 1:
        return []
    # strip rational roots first; most factors met in practice are linear
    factors: List[Tuple[List[Fraction], int]] = []
    rest = [c / p[-1] for c in p]
    for root in _rational_roots(rest):
        mult = 0
        while True:
            q, r = _divide_linear(rest, root)
            if r != 0:
                break
            rest = q
            mult += 1
        if mult:
            factors.append(([-root, ONE], mult))
    if len(rest) > 2:
        poly = _poly_to_sympy(rest)
        _, parts = poly.factor_list()
        for f, mult in parts:
            coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
            lead = coeffs[-1]
            factors.append(([c / lead for c in coeffs], int(mult)))
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return factors


def _divide_linear(p: List[Fraction], root: Fraction) -> Tuple[List[Fraction], Fraction]:
    # synthetic division by (x - root)
    n = len(p) - 1
    q = [ZERO] * n
    acc = ZERO
    for i in range(n, 0, -1):
        acc = acc * root + p[i]
        q[i - 1] = acc
    rem = acc * root + p[0]
    return q, rem


def _rational_roots(p: List[Fraction]) -> List[Fraction]:
    from math import gcd, lcm

    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots = []
    if len(p) - len(ints) > 0:
        roots.append(ZERO)
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    g = 0
    for c in ints:
        g = gcd(g, c)
    cand = set()
    for num in _divisors(a0):
        for d in _divisors(an):
            cand.add(Fraction(num, d))
            cand.add(Fraction(-num, d))
    for r in sorted(cand):
        if _divide_linear(p, r)[1] == 0:
            roots.append(r)
    return roots


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def minpoly_split(op: RatMatrix) -> List[Tuple[List[Fraction], int]]:
    """Irreducible factorization of the minimal polynomial of ``op``.

    Factors are monic coefficient lists (lowest degree first) paired with
    their multiplicities."""
    return factor_rational(minimal_polynomial(op))
