"""Family-scale experiments: discriminant grids, NRS parabola bounds,
ray scans, the 4D quartic family, and grid rendering.

A family H(Omega) is scanned cell by cell: reducibility first, then the
discriminant sign (RS vs NRS), then a reducedness verdict for NRS cells.
The parabola machinery gives the asymptotic two-parabola picture of the
NRS region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    ExactError,
    IntMatrix,
    IntPoly,
    IntVector,
    char_poly,
    count_real_roots,
    discriminant,
    det,
    factor_small,
)
from .hessenberg import FamilyPoint, HessType, family_member
from .reducedness import Bounded, ReducedVerdict, Sail, is_reduced


def discriminant_at(fp: FamilyPoint) -> int:
    return discriminant(char_poly(family_member(fp)))


@dataclass(frozen=True)
class ParabolaParams:
    """Exact coefficients of the two bounding parabolas of the NRS region."""

    alpha1: Fraction
    beta1: Fraction
    gamma1: Fraction
    alpha2: Fraction
    beta2: Fraction
    gamma2: Fraction
    a11: int
    a21: int

    def p1(self, m, n) -> Fraction:
        m, n = Fraction(m), Fraction(n)
        return m - self.alpha1 * n * n - self.beta1 * n - self.gamma1

    def p2(self, m, n) -> Fraction:
        m, n = Fraction(m), Fraction(n)
        u = (self.a21 * m - self.a11 * n) / Fraction(self.a21)
        return n / Fraction(self.a21) - self.alpha2 * u * u - self.beta2 * u \
            - self.gamma2


def _symmetric_functions(m: IntMatrix) -> Tuple[int, int, int]:
    """(b1, b2, b3): trace, sum of principal 2-minors, determinant."""
    b1 = m.trace()
    b2 = 0
    n = m.n
    for i in range(n):
        for j in range(i + 1, n):
            b2 += m[i, i] * m[j, j] - m[i, j] * m[j, i]
    return b1, b2, det(m)


def parabola_params(t: HessType, anchor) -> ParabolaParams:
    if t.n != 3:
        raise ExactError("parabola parameters are defined for 3x3 families")
    base = family_member(FamilyPoint(t, IntVector(anchor), (0, 0)))
    a11, a21 = base[0, 0], base[1, 0]
    a22, a32 = base[1, 1], base[2, 1]
    a33 = base[2, 2]
    b1, b2, b3 = _symmetric_functions(base)
    return ParabolaParams(
        alpha1=Fraction(-a32, 4 * a21),
        beta1=Fraction(a11 - a22 - a33, 2 * a21),
        gamma1=Fraction(4 * b2 - b1 * b1, 4 * a21 * a32),
        alpha2=Fraction(a32 * a21, 4 * b3),
        beta2=Fraction(-b2, 2 * b3),
        gamma2=Fraction(b2 * b2 - 4 * b1 * b3, 4 * a21 * a32 * b3),
        a11=a11,
        a21=a21,
    )


def lambda_membership(pp: ParabolaParams, eps, mn) -> bool:
    m, n = mn
    eps = Fraction(eps)
    return (pp.p1(m, n) - eps) * (pp.p2(m, n) - eps) < 0


def normalize_to_frobenius(fp: FamilyPoint) -> Tuple[int, int]:
    """Parameters of the Frobenius matrix with the same characteristic
    polynomial; the affine map is the printed one and preserves the
    discriminant exactly."""
    t = fp.type
    if t.n != 3:
        raise ExactError("defined for 3x3 families")
    base = family_member(FamilyPoint(t, fp.anchor, (0, 0)))
    a11, a12, a13 = base[0, 0], base[0, 1], base[0, 2]
    a21, a22, a23 = base[1, 0], base[1, 1], base[1, 2]
    a32, a33 = base[2, 1], base[2, 2]
    m, n = fp.params
    c1 = a23 * a32 - a11 * a33 + a12 * a21 - a22 * a33 - a11 * a22
    c2 = a11 + a22 + a33
    return (a21 * a32 * m - a11 * a32 * n + c1, a32 * n + c2)


@dataclass(frozen=True)
class GridCell:
    params: tuple
    cls: str            # ReduciblePoly | RS | NRS_Reduced | NRS_Nonreduced
    #                     | NRS_Unknown | Spectrum4(...)
    verdict: Optional[ReducedVerdict] = None

    def to_json(self) -> dict:
        out = {"params": list(self.params), "class": self.cls}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        return out


def _classify_cell(args) -> GridCell:
    type_str, anchor, mn, strategy = args
    t = HessType.parse(type_str)
    fp = FamilyPoint(t, IntVector(anchor), mn)
    mat = family_member(fp)
    p = char_poly(mat)
    if len(factor_small(p)) != 1:
        return GridCell(mn, "ReduciblePoly")
    d = discriminant(p)
    assert d != 0  # squarefree since irreducible over Q
    if d > 0:
        return GridCell(mn, "RS")
    verdict = is_reduced(mat, strategy)
    if verdict.status == "Inconclusive" and isinstance(strategy, Sail):
        verdict = is_reduced(mat, Bounded(1000))
    if verdict.status == "Nonreduced":
        return GridCell(mn, "NRS_Nonreduced", verdict)
    if verdict.status == "Reduced":
        return GridCell(mn, "NRS_Reduced", verdict)
    return GridCell(mn, "NRS_Unknown", verdict)


def classify_grid(t: HessType, anchor, m_range, n_range,
                  strategy=None, jobs: int = 1):
    """Classify every cell of the window; returns (cells, counts) with the
    cells ordered by (m, n) regardless of execution order."""
    if strategy is None:
        strategy = Sail()
    work = [(str(t), tuple(anchor), (m, n), strategy)
            for m in range(m_range[0], m_range[1] + 1)
            for n in range(n_range[0], n_range[1] + 1)]
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            cells = pool.map(_classify_cell, work, chunksize=8)
    else:
        cells = [_classify_cell(w) for w in work]
    cells.sort(key=lambda c: c.params)
    counts: Dict[str, int] = {}
    for c in cells:
        counts[c.cls] = counts.get(c.cls, 0) + 1
    return cells, counts


def ray_scan(t: HessType, anchor, start, direction, t_max: int,
             strategy=None):
    """Verdicts along the ray start + t*direction, t = 0..t_max.

    Returns (entries, last_nonreduced) where entries are
    (t, cell class, verdict-or-None); non-NRS cells are flagged by their
    class and carry no verdict.
    """
    if strategy is None:
        strategy = Sail()
    if tuple(direction) not in ((-1, 0), (t.columns[0][0], t.columns[0][1])):
        raise ExactError("ray direction must be (-1,0) or (a11,a21)")
    entries = []
    last_nonreduced = None
    for k in range(t_max + 1):
        mn = (start[0] + k * direction[0], start[1] + k * direction[1])
        cell = _classify_cell((str(t), tuple(anchor), mn, strategy))
        entries.append((k, cell.cls, cell.verdict))
        if cell.cls == "NRS_Nonreduced":
            last_nonreduced = k
    return entries, last_nonreduced


# the fixed 4D family of the quartic atlas
FAMILY_4D_TYPE = HessType([[0, 1], [0, 0, 1], [1, 3, 1, 4]])
# the anchor reproducing the printed quartic (see docs/decisions on the
# off-by-one in the printed matrix display)
FAMILY_4D_ANCHOR = IntVector((0, 0, 0, 1))


def quartic_4d(l: int, m: int, n: int) -> IntPoly:
    """t^4 + (-4n-2)t^3 + (-4m-2)t^2 + (2-4l)t + 1."""
    return IntPoly((1, 2 - 4 * l, -4 * m - 2, -4 * n - 2, 1))


def _is_square(k: int) -> bool:
    return k >= 0 and math.isqrt(k) ** 2 == k


def reducible_4d(l: int, m: int, n: int) -> bool:
    """Reducibility of the quartic by the closed-form criteria: a root at
    +-1 or a splitting into two integer quadratics with constant terms
    both +1 or both -1."""
    if l + m + n == 0 or n - m + l == 0:
        return True
    s = -4 * n - 2
    if l - n - 1 == 0 and _is_square(s * s - 4 * (-4 * m - 4)):
        return True
    if l + n == 0 and _is_square(s * s - 4 * (-4 * m)):
        return True
    return False


def classify_family_4d(bound: int = 15) -> List[GridCell]:
    """Classification of the fixed 4D family on |l|,|m|,|n| <= bound:
    reducible cells and, for irreducible ones, the spectrum kind counted
    exactly by Sturm sequences."""
    cells = []
    rng = range(-bound, bound + 1)
    for l in rng:
        for m in rng:
            for n in rng:
                fp = FamilyPoint(FAMILY_4D_TYPE, FAMILY_4D_ANCHOR, (l, m, n))
                p = char_poly(family_member(fp))
                assert p == quartic_4d(l, m, n)
                if len(factor_small(p)) != 1:
                    cells.append(GridCell((l, m, n), "ReduciblePoly"))
                    continue
                bound_r = Fraction(1) + max(abs(c) for c in p.coeffs[:-1])
                real = count_real_roots(p, -bound_r, bound_r)
                kind = {0: "Spectrum4(complex)", 2: "Spectrum4(2+2)",
                        4: "Spectrum4(real)"}[real]
                cells.append(GridCell((l, m, n), kind))
    return cells


DEFAULT_PALETTE = {
    "ReduciblePoly": (0, 0, 0),
    "RS": (200, 200, 200),
    "NRS_Nonreduced": (100, 100, 100),
    "NRS_Reduced": (255, 255, 255),
    "NRS_Unknown": (150, 150, 150),
}


def render_grid(cells: Sequence[GridCell], fmt: str = "PPM",
                palette: Dict[str, tuple] = None) -> bytes:
    """Render 2-parameter cells as one square per cell; n grows rightward,
    m grows downward (row-major in m)."""
    palette = dict(DEFAULT_PALETTE, **(palette or {}))
    ms = sorted({c.params[0] for c in cells})
    ns = sorted({c.params[1] for c in cells})
    lookup = {c.params: c.cls for c in cells}
    if len(lookup) != len(ms) * len(ns):
        raise ExactError("cells do not fill a rectangular window")
    if fmt.upper() == "PPM":
        lines = ["P3", "%d %d" % (len(ns), len(ms)), "255"]
        for m in ms:
            row = []
            for n in ns:
                row.extend(str(x) for x in palette[lookup[(m, n)]])
            lines.append(" ".join(row))
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt.upper() == "SVG":
        cell_px = 8
        out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
               % (len(ns) * cell_px, len(ms) * cell_px)]
        for i, m in enumerate(ms):
            for j, n in enumerate(ns):
                r, g, b = palette[lookup[(m, n)]]
                out.append(
                    '<rect x="%d" y="%d" width="%d" height="%d" '
                    'fill="rgb(%d,%d,%d)"><title>m=%d n=%d</title></rect>'
                    % (j * cell_px, i * cell_px, cell_px, cell_px, r, g, b, m, n))
        out.append("</svg>")
        return "\n".join(out).encode("ascii")
    raise ExactError("unknown render format %r" % fmt)
