"""Classical Gauss reduction theory in SL(2,Z).

Conjugacy classes split by trace: |tr| < 2 gives three finite classes,
tr = +-2 the unipotent families, and |tr| > 2 the real-spectrum classes,
classified completely by the period of the characteristic sequence
(alternating integer lengths and integer angles) of a sail of the
Klein continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .exact import ExactError, IntMatrix, IntVector, det


@dataclass(frozen=True)
class Period:
    entries: Tuple[int, ...]

    def __init__(self, entries):
        es = tuple(int(x) for x in entries)
        if not es or any(x < 1 for x in es):
            raise ExactError("period entries must be positive")
        object.__setattr__(self, "entries", es)

    def __len__(self):
        return len(self.entries)


def periods_equal(p: Period, q: Period) -> bool:
    """Cyclic-shift equality; multiplicity matters, so lengths must match."""
    if len(p) != len(q):
        return False
    doubled = p.entries + p.entries
    n = len(p)
    return any(doubled[i:i + n] == q.entries for i in range(n))


@dataclass(frozen=True)
class Sl2Class:
    kind: str                    # ComplexSpectrum | MultipleEigen | RealSpectrum
    canonical: IntMatrix = None  # ComplexSpectrum representative
    epsilon: int = 0             # MultipleEigen
    k: int = 0                   # MultipleEigen
    period: Period = None        # RealSpectrum

    def to_json(self) -> dict:
        if self.kind == "ComplexSpectrum":
            return {"kind": self.kind,
                    "canonical": [list(r) for r in self.canonical.rows]}
        if self.kind == "MultipleEigen":
            return {"kind": self.kind, "epsilon": self.epsilon, "k": self.k}
        return {"kind": self.kind, "period": list(self.period.entries)}


_COMPLEX_REPS = {
    1: IntMatrix([[1, 1], [-1, 0]]),
    0: IntMatrix([[0, 1], [-1, 0]]),
    -1: IntMatrix([[0, 1], [-1, -1]]),
}


def _primitive_kernel_vector(m: IntMatrix, eps: int) -> IntVector:
    """A primitive integer eigenvector of m for eigenvalue eps (tr = 2 eps)."""
    a, b = m[0, 0] - eps, m[0, 1]
    c, d = m[1, 0], m[1, 1] - eps
    for (p, q) in ((b, -a), (d, -c)):
        if (p, q) != (0, 0):
            g = math.gcd(abs(p), abs(q))
            return IntVector((p // g, q // g))
    return IntVector((1, 0))  # m = eps * E


def classify_sl2(m: IntMatrix) -> Sl2Class:
    if m.n != 2:
        raise ExactError("classify_sl2 requires a 2x2 matrix")
    if det(m) != 1:
        raise ExactError("matrix is not in SL(2,Z)")
    tr = m.trace()
    if abs(tr) < 2:
        return Sl2Class("ComplexSpectrum", canonical=_COMPLEX_REPS[tr])
    if abs(tr) == 2:
        eps = tr // 2
        b1 = _primitive_kernel_vector(m, eps)
        # complete b1 to a determinant-one basis via the extended gcd
        g, s, t = _xgcd(b1[0], b1[1])
        assert g == 1
        b2 = IntVector((-t, s))
        u = IntMatrix.from_columns([b1, b2])
        h = u.inverse_unimodular() * m * u
        assert h[0, 0] == eps and h[1, 0] == 0 and h[1, 1] == eps
        return Sl2Class("MultipleEigen", epsilon=eps, k=h[0, 1])
    return Sl2Class("RealSpectrum", period=sail_period(m))


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def integer_length(p: IntVector, q: IntVector) -> int:
    return math.gcd(abs(q[0] - p[0]), abs(q[1] - p[1]))


def integer_angle(p: IntVector, q: IntVector, r: IntVector) -> int:
    u = (p[0] - q[0], p[1] - q[1])
    v = (r[0] - q[0], r[1] - q[1])
    d = abs(u[0] * v[1] - u[1] * v[0])
    num = d
    den = integer_length(p, q) * integer_length(q, r)
    if num % den != 0:
        raise ExactError("integer angle is not integral")
    return num // den


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _triangle_points(u, v) -> List[Tuple[int, int]]:
    """Integer points of the closed triangle O, u, v except the origin.

    Scanline over x: for each column the three half planes
    alpha = s (x v1 - y v0) >= 0, beta = s (u0 y - u1 x) >= 0 and
    alpha + beta <= s d cut out one y interval, so the cost is linear
    in the bounding box width plus the number of points found.
    """
    d = _cross(u, v)
    if d == 0:
        raise ExactError("degenerate sail triangle")
    s = 1 if d > 0 else -1
    xs = sorted((0, u[0], v[0]))
    ys = sorted((0, u[1], v[1]))
    out: List[Tuple[int, int]] = []
    for x in range(xs[0], xs[2] + 1):
        lo, hi = ys[0], ys[2]
        # each constraint c_y * y >= rhs intersects [lo, hi]
        for c_y, rhs in (
                (-s * v[0], -s * x * v[1]),
                (s * u[0], s * u[1] * x),
                (s * v[0] - s * u[0], s * x * v[1] - s * u[1] * x - s * d)):
            if c_y > 0:
                lo = max(lo, -((-rhs) // c_y))
            elif c_y < 0:
                hi = min(hi, rhs // c_y)
            elif rhs > 0:
                lo, hi = 1, 0
                break
        for y in range(lo, hi + 1):
            if x or y:
                out.append((x, y))
    return out


def _fixed_form_reduction(g: IntMatrix) -> IntMatrix:
    """A unimodular u such that u^-1 g u has entries of size O(|trace|).

    Gauss reduction of the fixed-point quadratic form of g (the binary
    form c x^2 + (d - a) x y - b y^2 with discriminant tr^2 - 4); the
    conjugated matrix is an automorph of the reduced form and so has
    entries bounded by its coefficients plus the trace.
    """
    a, b = g[0, 0], g[0, 1]
    c, d = g[1, 0], g[1, 1]
    qa, qb, qc = c, d - a, -b
    disc = qb * qb - 4 * qa * qc
    rd = math.isqrt(disc)
    u = IntMatrix.identity(2)
    seen = set()
    for _ in range(4000):
        if (qa, qb, qc) in seen or qc == 0:
            break
        seen.add((qa, qb, qc))
        if max(abs(qa), abs(qc)) <= rd and 0 < qb <= rd:
            break
        c2 = 2 * qc
        if abs(qc) >= rd:
            m = (2 * qb + c2) // (2 * c2)
        elif qc > 0:
            m = (qb + rd) // c2
        else:
            m = -((-(qb + rd)) // c2)
        qa, qb, qc = qc, -qb + c2 * m, qa - qb * m + qc * m * m
        u = u * IntMatrix([[0, -1], [1, m]])
    return u


def _near_hull(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Origin-facing convex hull chain of points inside one cone, listed
    clockwise (decreasing angle)."""
    import functools

    def cmp(a, b):
        c = _cross(a, b)
        if c:
            return -1 if c < 0 else 1
        # same ray: nearer point first
        na = abs(a[0]) + abs(a[1])
        nb = abs(b[0]) + abs(b[1])
        return -1 if na < nb else (1 if na > nb else 0)

    pts = sorted(set(points), key=functools.cmp_to_key(cmp))
    hull: List[Tuple[int, int]] = []
    for p in pts:
        if hull and _cross(hull[-1], p) == 0:
            continue  # farther point on the same ray
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if _cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def sail_period(m: IntMatrix, periods: int = 1) -> Period:
    """Period of the characteristic sequence of a sail of m.

    Works geometrically: g (= m or -m, whichever has positive eigenvalues)
    acts on the cone of p0 = (1,0); the sail piece between the rays of
    g^-1 p0 and g^2 p0 lies in the union of the triangles O, g^k p0,
    g^(k+1) p0, so its vertices are read off the origin-facing hull of
    their integer points; the induced index shift gives the period.
    """
    if m.n != 2:
        raise ExactError("sail_period requires a 2x2 matrix")
    if det(m) != 1:
        raise ExactError("matrix is not in SL(2,Z)")
    tr = m.trace()
    if abs(tr) <= 2:
        raise ExactError("sail periods require |trace| > 2")
    g = m if tr > 2 else IntMatrix([[-m[0, 0], -m[0, 1]], [-m[1, 0], -m[1, 1]]])
    if max(abs(g[i, j]) for i in range(2) for j in range(2)) > 64:
        # the period only depends on the conjugacy class, so shrink the
        # entries first; otherwise the triangle scan is hopeless
        u = _fixed_form_reduction(g)
        g = u.inverse_unimodular() * g * u

    p0 = IntVector((1, 0))
    orbit = [p0]
    ginv = g.inverse_unimodular()
    orbit.insert(0, ginv * p0)
    for _ in range(2):
        orbit.append(g * orbit[-1])
    pts: List[Tuple[int, int]] = []
    for a, b in zip(orbit, orbit[1:]):
        pts.extend(_triangle_points((a[0], a[1]), (b[0], b[1])))

    # mirror to make the g action run counterclockwise; swapping the two
    # coordinates is in GL(2,Z), so it preserves all lattice invariants
    mirrored = _cross(tuple(p0), tuple(g * p0)) < 0
    if mirrored:
        pts = [(y, x) for x, y in pts]
        gm = IntMatrix([[g[1, 1], g[1, 0]], [g[0, 1], g[0, 0]]])
    else:
        gm = g
    hull = _near_hull(pts)
    if len(hull) < 3:
        raise ExactError("sail hull degenerated")

    # near the window boundary the hull can pick up points that are not
    # sail vertices (their supporting vertex fell outside the orbit
    # window); genuine vertices are recognized by equivariance, since
    # the window spans three fundamental domains
    sset = set(hull)
    gminv = gm.inverse_unimodular()
    flags = []
    for v in hull:
        q = gm * IntVector(v)
        q2 = gminv * IntVector(v)
        flags.append((q[0], q[1]) in sset or (q2[0], q2[1]) in sset)
    core = _longest_true_run(hull, flags)
    if len(core) < 3:
        raise ExactError("sail hull degenerated")

    # index shift induced by the generator
    pos = {v: i for i, v in enumerate(core)}
    i0 = image = None
    for probe in range(len(core)):
        q = gm * IntVector(core[probe])
        j = pos.get((q[0], q[1]))
        if j is None or j == probe:
            continue
        step = 1 if j > probe else -1
        if 0 <= j + step < len(core):
            i0, image = probe, j
            break
    if i0 is None:
        raise ExactError("period shift not visible in the computed hull window")
    shift = image - i0
    p = abs(shift)
    step = 1 if shift > 0 else -1

    entries: List[int] = []
    idx = i0
    for _ in range(p):
        nxt = idx + step
        after = nxt + step
        entries.append(integer_length(IntVector(core[idx]), IntVector(core[nxt])))
        entries.append(integer_angle(IntVector(core[idx]), IntVector(core[nxt]),
                                     IntVector(core[after])))
        idx = nxt
    return Period(_canonical_rotation(entries))


def _longest_true_run(items, flags):
    best: List[Tuple[int, int]] = []
    cur: List[Tuple[int, int]] = []
    for item, ok in zip(items, flags):
        if ok:
            cur.append(item)
            if len(cur) > len(best):
                best = list(cur)
        else:
            cur = []
    return best


def _canonical_rotation(entries: List[int]) -> List[int]:
    """The lexicographically largest even rotation: rerooting the sequence at
    another vertex shifts it by two (length/angle alternation preserved), so
    this picks a canonical starting vertex."""
    best = tuple(entries)
    for i in range(2, len(entries), 2):
        cand = tuple(entries[i:] + entries[:i])
        if cand > best:
            best = cand
    return list(best)
