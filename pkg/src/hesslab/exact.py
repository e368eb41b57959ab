"""Exact integer and rational linear algebra primitives.

Everything in this module works over arbitrary-precision integers (or
``fractions.Fraction`` where division is unavoidable); no floating point
arithmetic is used anywhere.  The central objects are square integer
matrices, integer vectors and monic integer polynomials of degree at most
four, together with the lattice-index computations (Smith normal form)
that the reduction machinery in the rest of the package is built on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ExactError(ValueError):
    """Raised on violated preconditions of exact-arithmetic operations."""


# ---------------------------------------------------------------------------
# vectors and matrices


@dataclass(frozen=True)
class IntVector:
    coords: tuple

    def __init__(self, coords: Iterable[int]):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "IntVector") -> "IntVector":
        return IntVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "IntVector") -> "IntVector":
        return IntVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "IntVector":
        return IntVector(-a for a in self.coords)

    def scale(self, k: int) -> "IntVector":
        return IntVector(k * a for a in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_primitive(self) -> bool:
        g = 0
        for c in self.coords:
            g = math.gcd(g, c)
        return g == 1

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __init__(self, rows: Iterable[Iterable[int]]):
        rs = tuple(tuple(int(x) for x in row) for row in rows)
        if not rs or any(len(r) != len(rs) for r in rs):
            raise ExactError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rs)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> IntVector:
        return IntVector(self.rows[i])

    def column(self, j: int) -> IntVector:
        return IntVector(r[j] for r in self.rows)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols: Sequence[IntVector]) -> "IntMatrix":
        return IntMatrix([[c[i] for c in cols] for i in range(len(cols))])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([-x for x in r] for r in self.rows)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([k * x for x in r] for r in self.rows)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            n = self.n
            ot = other.transpose().rows
            return IntMatrix(
                [sum(a * b for a, b in zip(row, col)) for col in ot]
                for row in self.rows
            )
        if isinstance(other, IntVector):
            return IntVector(sum(a * b for a, b in zip(row, other.coords))
                             for row in self.rows)
        return NotImplemented

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            return self.inverse_unimodular() ** (-k)
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def is_sl(self) -> bool:
        return det(self) == 1

    def adjugate(self) -> "IntMatrix":
        n = self.n
        if n == 1:
            return IntMatrix([[1]])
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.rows[r][c] for c in range(n) if c != j]
                    for r in range(n) if r != i
                ]
                adj[j][i] = (-1) ** (i + j) * _det_rows(minor)
        return IntMatrix(adj)

    def inverse_unimodular(self) -> "IntMatrix":
        d = det(self)
        if d not in (1, -1):
            raise ExactError("matrix is not unimodular")
        adj = self.adjugate()
        return adj if d == 1 else -adj

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in r) for r in self.rows)


def _det_rows(rows) -> int:
    """Fraction-free Gauss-Bareiss determinant of a list-of-lists."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 1:
        return a[0][0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: IntMatrix) -> int:
    return _det_rows(m.rows)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial c0 + c1 t + ... + cd t^d, low-degree first."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        if self.degree == 0:
            return IntPoly([0])
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            if i == 0:
                t = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                t = mag + ("t" if i == 1 else "t^%d" % i)
            if not terms:
                terms.append(("-" if c < 0 else "") + t)
            else:
                terms.append(("- " if c < 0 else "+ ") + t)
        return " ".join(terms)


def char_poly(m: IntMatrix) -> IntPoly:
    """Characteristic polynomial det(tI - M), exact integer coefficients.

    Evaluated at n+1 integer points and recovered by Lagrange interpolation
    over the rationals; the result is integral for an integer matrix.
    """
    n = m.n
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        rows = [
            [(x if i == j else 0) - m.rows[i][j] for j in range(n)]
            for i in range(n)
        ]
        ys.append(_det_rows(rows))
    coeffs = _lagrange_interpolate(xs, ys)
    if len(coeffs) < n + 1:
        coeffs = coeffs + [0] * (n + 1 - len(coeffs))
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ExactError("characteristic polynomial interpolation failed")
        out.append(c.numerator)
    return IntPoly(out)


def _lagrange_interpolate(xs, ys):
    """Coefficients (Fractions, low first) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] += -xs[j] * b
                new[k + 1] += b
            basis = new
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    return coeffs


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Sylvester-matrix resultant of two integer polynomials."""
    dp, dq = p.degree, q.degree
    if dp == 0 or dq == 0:
        # deg-0 cases: Res(c, q) = c^deg(q)
        if dp == 0:
            return p.coeffs[0] ** dq
        return q.coeffs[0] ** dp
    size = dp + dq
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(dq):
        rows.append([0] * i + pc + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + qc + [0] * (size - dq - 1 - i))
    return _det_rows(rows)


def discriminant(p: IntPoly) -> int:
    """Discriminant of an integer polynomial of degree 2..4."""
    d = p.degree
    if not 2 <= d <= 4:
        raise ExactError("discriminant requires degree in 2..4, got %d" % d)
    lc = p.coeffs[-1]
    res = resultant(p, p.derivative())
    sign = (-1) ** (d * (d - 1) // 2)
    val = Fraction(sign * res, lc)
    if val.denominator != 1:
        raise ExactError("non-integral discriminant")
    return val.numerator


# ---------------------------------------------------------------------------
# Smith normal form and lattice indices


def smith_normal_form(rows: Sequence[Sequence[int]]):
    """Smith normal form with transforms: returns (U, D, V, rank).

    U (r x r) and V (c x c) are unimodular with U * A * V = D, D diagonal
    with d_1 | d_2 | ... ; D is returned as a list of lists.
    """
    a = [list(map(int, r)) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(nr, nc):
        # find pivot
        pr = pc = -1
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, pr, pc = x, i, j
        if best is None:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # divisibility condition
        fixed = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    add_row(t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    rank = sum(1 for i in range(min(nr, nc)) if a[i][i] != 0)
    return u, a, v, rank


def elementary_divisors(rows: Sequence[Sequence[int]]):
    _, d, _, rank = smith_normal_form(rows)
    return [d[i][i] for i in range(rank)]


def saturation_basis(rows: Sequence[Sequence[int]]):
    """Basis (list of IntVector) of all integer points in the span of rows."""
    _, _, v, rank = smith_normal_form(rows)
    # U A V = D, so A = U^-1 D V^-1; the row space of A equals the row space
    # of D V^-1, i.e. span of the first `rank` rows of V^-1 scaled by d_i.
    vinv = IntMatrix(v).inverse_unimodular()
    return [vinv.row(i) for i in range(rank)]


def integer_volume(vs: Sequence[IntVector]) -> int:
    """Index of the sublattice spanned by vs inside the integer lattice of
    their span (product of elementary divisors)."""
    rows = [list(v) for v in vs]
    divs = elementary_divisors(rows)
    if len(divs) != len(vs):
        raise ExactError("vectors are linearly dependent")
    vol = 1
    for d in divs:
        vol *= d
    return vol


def integer_distance(v: IntVector, basis: Sequence[IntVector]) -> int:
    """Lattice-index distance from v to the plane spanned by basis.

    The plane carries its full integer sublattice (the saturation of
    span(basis)); the distance is the index of the lattice generated by
    that sublattice together with v inside the full integer lattice of the
    bigger span.
    """
    rows = [list(b) for b in basis]
    divs = elementary_divisors(rows)
    if len(divs) != len(basis):
        raise ExactError("basis vectors are linearly dependent")
    sat = saturation_basis(rows)
    stacked = [list(b) for b in sat] + [list(v)]
    divs2 = elementary_divisors(stacked)
    if len(divs2) != len(sat) + 1:
        raise ExactError("vector lies in the span of the basis")
    dist = 1
    for d in divs2:
        dist *= d
    return dist


# ---------------------------------------------------------------------------
# factorization over Q (monic, degree <= 4)


def _divisors(n: int):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _integer_roots(p: IntPoly):
    """Integer roots of a monic integer polynomial (with multiplicity 1 each
    in the returned list; callers re-divide)."""
    c0 = p.coeffs[0]
    if c0 == 0:
        return [0]
    roots = []
    for d in _divisors(c0):
        for r in (d, -d):
            if p(r) == 0:
                roots.append(r)
    return roots


def _divide_linear(p: IntPoly, r: int) -> IntPoly:
    """Divide monic p by (t - r), exact."""
    out = []
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * r + c
        out.append(acc)
    assert out[-1] == 0
    # out[:-1] holds the quotient coefficients, high first
    return IntPoly(list(reversed(out[:-1])))


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def factor_small(p: IntPoly):
    """Irreducible monic integer factors of a monic polynomial, degree <= 4.

    Rational roots are peeled off first; a remaining quartic is tested for
    quadratic splittings by enumerating divisor pairs of the constant term.
    Returns the factors sorted by (degree, coefficients) so the output is
    deterministic.
    """
    if not p.monic:
        raise ExactError("factor_small requires a monic polynomial")
    if p.degree > 4:
        raise ExactError("factor_small supports degree <= 4")
    factors = []
    work = p
    while work.degree >= 1:
        roots = _integer_roots(work)
        if not roots:
            break
        r = min(roots)
        factors.append(IntPoly([-r, 1]))
        work = _divide_linear(work, r)
    if work.degree == 2:
        b, c = work.coeffs[1], work.coeffs[0]
        d = b * b - 4 * c
        if _is_square(d):
            s = math.isqrt(d)
            if (s - b) % 2 == 0:
                r1 = (-b + s) // 2
                r2 = (-b - s) // 2
                factors.append(IntPoly([-r1, 1]))
                factors.append(IntPoly([-r2, 1]))
                work = IntPoly([1])
    if work.degree == 4:
        split = _split_quartic(work)
        if split is not None:
            factors.extend(split)
            work = IntPoly([1])
    if work.degree >= 1:
        factors.append(work)
    return sorted(factors, key=lambda f: (f.degree, f.coeffs))


def _split_quartic(p: IntPoly):
    """Factor a monic quartic with no rational roots into two monic integer
    quadratics, if possible."""
    c0, c1, c2, c3, _ = p.coeffs
    candidates = set()
    for c in _divisors(c0):
        for cc in (c, -c):
            if c0 % cc == 0:
                candidates.add((cc, c0 // cc))
    for c, cp in sorted(candidates):
        # (t^2+a t+c)(t^2+b t+cp): a+b = c3, ab = c2-c-cp, a cp + b c = c1
        s = c3
        prod = c2 - c - cp
        disc = s * s - 4 * prod
        if not _is_square(disc):
            continue
        root = math.isqrt(disc)
        for a2 in ((s + root), (s - root)):
            if a2 % 2:
                continue
            a = a2 // 2
            b = s - a
            if a * cp + b * c == c1:
                f1 = IntPoly([c, a, 1])
                f2 = IntPoly([cp, b, 1])
                return sorted([f1, f2], key=lambda f: f.coeffs)
    return None


def has_repeated_factor(p: IntPoly) -> bool:
    fs = factor_small(p)
    return len(set(fs)) != len(fs)


# ---------------------------------------------------------------------------
# Sturm chains (rational coefficients)


def sturm_chain(coeffs: Sequence[Fraction]):
    """Sturm chain of a polynomial given as Fraction coefficients, low first."""

    def deg(c):
        return len(c) - 1

    def polydiv_rem(a, b):
        a = list(a)
        while deg(a) >= deg(b) and any(a):
            k = deg(a) - deg(b)
            f = a[-1] / b[-1]
            for i, bc in enumerate(b):
                a[i + k] -= f * bc
            while len(a) > 1 and a[-1] == 0:
                a.pop()
            if all(x == 0 for x in a):
                return [Fraction(0)]
        return a

    p0 = [Fraction(c) for c in coeffs]
    while len(p0) > 1 and p0[-1] == 0:
        p0.pop()
    p1 = [i * c for i, c in enumerate(p0)][1:] or [Fraction(0)]
    chain = [p0, p1]
    while deg(chain[-1]) > 0:
        rem = polydiv_rem(chain[-2], chain[-1])
        rem = [-c for c in rem]
        if all(c == 0 for c in rem):
            break
        chain.append(rem)
    return chain


def _sign_changes_at(chain, x):
    signs = []
    for c in chain:
        acc = Fraction(0)
        for cc in reversed(c):
            acc = acc * x + cc
        if acc != 0:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: IntPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in (lo, hi]; None means +/-inf.

    p must be squarefree for exact counts on half-open intervals containing
    roots at the endpoints; the usual Sturm caveats apply.
    """
    chain = sturm_chain([Fraction(c) for c in p.coeffs])
    bound = Fraction(1) + max(
        (Fraction(abs(c), abs(p.coeffs[-1])) for c in p.coeffs[:-1]),
        default=Fraction(0),
    )
    a = Fraction(lo) if lo is not None else -bound
    b = Fraction(hi) if hi is not None else bound
    return _sign_changes_at(chain, a) - _sign_changes_at(chain, b)


# ---------------------------------------------------------------------------
# parsing / serialization


def parse_matrix(text: str) -> IntMatrix:
    """Parse the `a b c; d e f; g h i` matrix text format."""
    rows = []
    for rn, chunk in enumerate(text.strip().split(";")):
        entries = chunk.split()
        if not entries:
            raise ExactError("row %d is empty" % (rn + 1))
        row = []
        for cn, tok in enumerate(entries):
            try:
                row.append(int(tok))
            except ValueError:
                raise ExactError(
                    "row %d, entry %d: %r is not an integer" % (rn + 1, cn + 1, tok)
                ) from None
        rows.append(row)
    return IntMatrix(rows)


def parse_vector(text: str) -> IntVector:
    toks = text.replace(",", " ").split()
    try:
        return IntVector(int(t) for t in toks)
    except ValueError:
        raise ExactError("vector entry is not an integer: %r" % text) from None


def matrix_to_json(m: IntMatrix) -> dict:
    return {"n": m.n, "rows": [list(r) for r in m.rows]}


def matrix_from_json(obj) -> IntMatrix:
    if isinstance(obj, str):
        obj = json.loads(obj)
    m = IntMatrix(obj["rows"])
    if "n" in obj and obj["n"] != m.n:
        raise ExactError("declared dimension disagrees with rows")
    return m
