import pytest

from hesslab.exact import IntMatrix, IntVector, parse_matrix
from hesslab.hessenberg import FamilyPoint, HessType, family_member
from hesslab.sail3 import (
    SailError,
    compute_sail,
    dirichlet_generator,
    eigen_data,
    gamma0_box,
    gamma0_slab_points,
    improve_seed,
    project_pi,
    verify_dirichlet_element,
    _x_coord,
    _y_sq,
)

FRO = parse_matrix("0 0 1; 1 0 1; 0 1 3")
M1 = parse_matrix("0 1 2; 1 0 0; 0 3 5")


def test_rs_matrix_rejected():
    with pytest.raises(SailError):
        eigen_data(IntMatrix.identity(3))
    with pytest.raises(SailError):
        # all-real spectrum cubic
        eigen_data(parse_matrix("0 0 1; 1 0 6; 0 1 0"))


def test_eigen_data_consistency():
    e = eigen_data(FRO)
    # g1 is an eigenvector: (M - r) g1 = 0 componentwise
    r = e.r
    for i in range(3):
        acc = e.field.zero()
        for j in range(3):
            acc = acc + e.g1[j] * FRO[i, j]
        assert (acc - r * e.g1[i]).is_zero()
    assert _x_coord(e, IntVector((1, 0, 0))).is_rational() or True
    assert _y_sq(e, IntVector((1, 0, 0))).sign() > 0


def test_x_equivariance():
    e = eigen_data(FRO)
    v = IntVector((1, 2, 0))
    x_v = _x_coord(e, v)
    x_mv = _x_coord(e, FRO * v)
    assert (x_mv - e.r * x_v).is_zero()


def test_y_sq_scaling_under_operator():
    e = eigen_data(FRO)
    v = IntVector((1, 2, 0))
    f_v = _y_sq(e, v)
    f_mv = _y_sq(e, FRO * v)
    assert (f_mv - e.q * f_v).is_zero()


def test_frobenius_sail_fundamental_domain():
    sail = compute_sail(FRO)
    fund = sail.fundamental_vertices()
    assert len(fund) == 1
    assert tuple(fund[0].preimage) == (1, 0, 0)
    assert tuple(FRO * fund[0].preimage) == (0, 1, 0)
    # the hull is part of the operator orbit of e1
    keys = {tuple(p.preimage) for p in sail.vertices}
    assert (0, 1, 0) in keys and (0, 0, 1) in keys


def test_sail_vertices_sorted_and_consistent():
    sail = compute_sail(M1)
    xs = [p.x for p in sail.vertices]
    for a, b in zip(xs, xs[1:]):
        assert a.cmp(b) < 0
    dump = sail.to_json()
    assert any(e["is_fundamental"] for e in dump)
    for entry in dump:
        assert float(entry["x"][0]) <= float(entry["x"][1])


def test_slab_contains_fundamental_vertices():
    e = eigen_data(M1)
    pts = gamma0_slab_points(e, IntVector((1, 0, 0)))
    keys = {tuple(int(c) for c in p) for p in pts.tolist()}
    sail = compute_sail(M1)
    for p in sail.fundamental_vertices():
        v = tuple(p.preimage)
        assert v in keys or tuple(-c for c in v) in keys


def test_slab_hard_cell_regression():
    # this family cell has a coordinate bounding box with ~2e9 cross
    # section; the reduced-basis ellipsoid route must keep it feasible
    t = HessType.parse("<0,1|1,0,2>")
    mat = family_member(FamilyPoint(t, IntVector((1, 0, 1)), (-6, 15)))
    e = eigen_data(mat)
    seed = IntVector((1, 0, 0))
    if _x_coord(e, seed).sign() < 0:
        seed = -seed
    better = improve_seed(e, seed)
    assert better is not None
    pts = gamma0_slab_points(e, better, 40_000_000)
    assert len(pts) > 0


def test_gamma0_box_positive():
    e = eigen_data(FRO)
    box = gamma0_box(e, IntVector((1, 0, 0)))
    assert len(box) == 3 and all(b >= 1 for b in box)


def test_dirichlet_generator_is_m():
    assert dirichlet_generator(FRO) == FRO
    assert dirichlet_generator(M1) == M1


def test_verify_dirichlet_element():
    assert verify_dirichlet_element(FRO, FRO)
    assert verify_dirichlet_element(FRO, FRO * FRO)
    assert not verify_dirichlet_element(FRO, -FRO)
    assert verify_dirichlet_element(FRO, IntMatrix.identity(3))
    # non-commuting rejected
    assert not verify_dirichlet_element(FRO, M1)


def test_project_pi_orbit_invariants():
    e = eigen_data(M1)
    p = project_pi(e, IntVector((0, -1, 1)))
    q = project_pi(e, M1 * IntVector((0, -1, 1)))
    assert (q.x - e.r * p.x).is_zero()
    assert (q.y_sq - e.q * p.y_sq).is_zero()
