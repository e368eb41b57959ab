"""Reducedness verdicts and conjugacy fingerprints.

A perfect Hessenberg matrix is reduced when no integer-conjugate perfect
matrix has smaller Hessenberg complexity; equivalently, when the minimum of
the MD-characteristic over nonzero integer vectors equals the complexity.
The Sail strategy certifies that minimum by scanning a certified superset
of Gamma^0(e1), which contains the integer points of a fundamental domain
of the sails; the Bounded strategy is a plain box scan and is only ever a
heuristic certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exact import ExactError, IntMatrix, IntVector, char_poly, det, factor_small
from .hessenberg import hessenberg_complexity, is_perfect, reduce_to_perfect
from .mdchar import md_characteristic, md_form3
from .numberfield import PrecisionExhausted
from .sail3 import Inconclusive as SailInconclusive
from .sail3 import (
    SailError,
    compute_sail,
    eigen_data,
    gamma0_slab_points,
    improve_seed,
    _x_coord,
)


@dataclass(frozen=True)
class Bounded:
    B: int


@dataclass(frozen=True)
class Sail:
    precision: int = 4096
    region: int = 40_000_000


@dataclass(frozen=True)
class ReducedVerdict:
    status: str                      # Reduced | Nonreduced | Inconclusive
    certificate: Optional[str] = None  # SailCertified | BoundChecked
    bound: Optional[int] = None        # for BoundChecked
    witness: Optional[IntVector] = None
    reason: Optional[str] = None

    def __post_init__(self):
        assert self.status in ("Reduced", "Nonreduced", "Inconclusive")

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.status == "Reduced":
            cert = {"kind": self.certificate}
            if self.certificate == "BoundChecked":
                cert["bound"] = self.bound
            out["certificate"] = cert
        elif self.status == "Nonreduced":
            out["witness"] = list(self.witness)
        else:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class Fingerprint:
    """Sorted distinct perfect matrices reached from MD-minimal sail
    vertices, plus the shared minimal MD value."""

    matrices: Tuple[IntMatrix, ...]
    min_value: int

    def to_json(self) -> dict:
        return {
            "min_value": self.min_value,
            "matrices": [[list(r) for r in m.rows] for m in self.matrices],
        }


def _canonical_sign(v: IntVector) -> IntVector:
    """md is even in v; keep the lexicographically larger of v and -v."""
    return v if tuple(v) >= tuple(-v) else -v


def _eval_form_batch(coeffs, pts):
    """Vectorized signed-det cubic over an (N, 3) int array; falls back to
    exact Python integers when int64 could overflow."""
    import numpy as np
    bmax = int(np.abs(pts).max()) if len(pts) else 0
    cmax = max((abs(c) for c in coeffs), default=0)
    if cmax * (bmax ** 3) * 10 < 2 ** 62:
        x = pts[:, 0].astype(np.int64)
        y = pts[:, 1].astype(np.int64)
        z = pts[:, 2].astype(np.int64)
        from .mdchar import _EXPONENTS3
        out = np.zeros(len(pts), dtype=np.int64)
        for c, (a, b, g) in zip(coeffs, _EXPONENTS3):
            if c:
                out += c * x ** a * y ** b * z ** g
        return out
    from .mdchar import MDForm3
    form = MDForm3(tuple(coeffs))
    return np.array([form(p) for p in pts.tolist()], dtype=object)


def minimize_md_bounded(m: IntMatrix, bound: int) -> Tuple[int, List[IntVector]]:
    """Exact minimum of the MD-characteristic over primitive vectors with
    sup-norm at most `bound`, with every attaining vector (up to sign)."""
    if bound < 1:
        raise ExactError("bound must be positive")
    n = m.n
    if n == 3:
        import numpy as np
        coeffs = md_form3(m).coeffs
        rng = np.arange(-bound, bound + 1)
        side = 2 * bound + 1
        # slice along the first axis so memory stays bounded for large B
        step = max(1, 4_000_000 // (side * side))
        best = None
        wits = []
        for x0 in range(-bound, bound + 1, step):
            xs = np.arange(x0, min(x0 + step, bound + 1))
            gx, gy, gz = np.meshgrid(xs, rng, rng, indexing="ij")
            pts = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
            pts = pts[np.any(pts != 0, axis=1)]
            vals = np.abs(_eval_form_batch(coeffs, pts))
            nz = vals > 0
            pts, vals = pts[nz], vals[nz]
            if not len(vals):
                continue
            chunk_best = int(vals.min())
            if best is None or chunk_best < best:
                best = chunk_best
                wits = [pts[vals == chunk_best]]
            elif chunk_best == best:
                wits.append(pts[vals == chunk_best])
        wits = np.concatenate(wits) if wits else np.empty((0, 3), dtype=np.int64)
    else:
        import itertools
        best = None
        wits = []
        for p in itertools.product(range(-bound, bound + 1), repeat=n):
            if all(c == 0 for c in p):
                continue
            v = IntVector(p)
            val = md_characteristic(m, v)
            if val == 0:
                continue
            if best is None or val < best:
                best, wits = val, [p]
            elif val == best:
                wits.append(p)
    seen = set()
    out = []
    for p in wits:
        v = IntVector(int(c) for c in p)
        if not v.is_primitive():
            continue
        v = _canonical_sign(v)
        if tuple(v) not in seen:
            seen.add(tuple(v))
            out.append(v)
    out.sort(key=tuple)
    return best, out


def _sail_minimum(m: IntMatrix, strategy: Sail) -> Tuple[int, List[IntVector]]:
    """Certified global MD minimum over nonzero integer vectors, from the
    Gamma^0(e1) slab (it contains the integer points of the orbits of a
    fundamental domain, where the minimum is attained)."""
    import numpy as np
    e = eigen_data(m, strategy.precision)
    seed = IntVector((1, 0, 0))
    if _x_coord(e, seed).sign() < 0:
        seed = -seed
    pts = None
    for attempt in range(3):
        try:
            pts = gamma0_slab_points(e, seed, strategy.region)
            break
        except SailInconclusive:
            better = improve_seed(e, seed)
            if better is None or tuple(better) == tuple(seed):
                raise
            seed = better
    if pts is None:
        pts = gamma0_slab_points(e, seed, strategy.region)
    if len(pts) == 0:
        raise SailInconclusive("empty slab enumeration")
    vals = np.abs(_eval_form_batch(md_form3(m).coeffs, pts))
    nz = vals > 0
    pts, vals = pts[nz], vals[nz]
    best = int(vals.min())
    wits = []
    seen = set()
    for p in pts[vals == best].tolist():
        v = IntVector(int(c) for c in p)
        if not v.is_primitive():
            continue
        v = _canonical_sign(v)
        if tuple(v) not in seen:
            seen.add(tuple(v))
            wits.append(v)
    wits.sort(key=tuple)
    return best, wits


def is_reduced(m: IntMatrix, strategy) -> ReducedVerdict:
    if not is_perfect(m):
        raise ExactError("matrix is not a perfect Hessenberg matrix")
    if len(factor_small(char_poly(m))) != 1:
        raise ExactError("characteristic polynomial is reducible")
    target = hessenberg_complexity(m)
    if isinstance(strategy, Bounded):
        best, wits = minimize_md_bounded(m, strategy.B)
        if best < target:
            return ReducedVerdict("Nonreduced", witness=wits[0])
        return ReducedVerdict("Reduced", certificate="BoundChecked",
                              bound=strategy.B)
    if isinstance(strategy, Sail):
        try:
            best, wits = _sail_minimum(m, strategy)
        except (SailInconclusive, PrecisionExhausted) as ex:
            return ReducedVerdict("Inconclusive", reason=str(ex))
        if best < target:
            return ReducedVerdict("Nonreduced", witness=wits[0])
        return ReducedVerdict("Reduced", certificate="SailCertified")
    raise ExactError("unknown strategy %r" % (strategy,))


def fingerprint(m: IntMatrix, precision: int = 4096,
                region: int = 40_000_000) -> Fingerprint:
    """Distinct perfect forms reached from the MD-minimal vertices of a
    fundamental domain (both sails; the second sail is the -E image of the
    first, and reduce_to_perfect is even in the seed, so each vertex is
    processed through both signs)."""
    if det(m) != 1 or m.n != 3:
        raise ExactError("fingerprints require SL(3,Z) input")
    sail = compute_sail(m, bits=precision, point_cap=region)
    fund = sail.fundamental_vertices()
    if not fund:
        raise ExactError("empty fundamental domain")
    values = [md_characteristic(m, p.preimage) for p in fund]
    best = min(values)
    seen = {}
    for p, val in zip(fund, values):
        if val != best:
            continue
        for v in (p.preimage, -p.preimage):
            h, _ = reduce_to_perfect(m, v)
            seen[tuple(tuple(r) for r in h.rows)] = h
    mats = [seen[k] for k in sorted(seen)]
    for h in mats:
        assert hessenberg_complexity(h) == best
    return Fingerprint(tuple(mats), best)
