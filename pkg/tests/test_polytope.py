import random

import pytest

from ampleangles import polytope as pt
from _util import F, brute_force_vertices_2d, hull_2d


def figure1_open():
    # 0 < beta < 1 together with 2*b2 - b1 > 0
    return pt.polytope(
        2, pt.cube_halfspaces(2, strict=True) + [pt.halfspace([-1, 2], 0, True)]
    )


def test_feasibility_examples():
    assert not pt.is_feasible(
        pt.polytope(1, [pt.halfspace([1], 0, True), pt.halfspace([-1], 0, True)])
    )
    assert pt.is_feasible(pt.polytope(2, pt.cube_halfspaces(2, strict=True)))
    assert pt.is_feasible(figure1_open())


def test_feasibility_boundary_strictness():
    # x >= 1 and x <= 1 meet in a point; making either strict empties it
    weak = pt.polytope(1, [pt.halfspace([1], -1, False), pt.halfspace([-1], 1, False)])
    assert pt.is_feasible(weak)
    assert not pt.is_feasible(
        pt.polytope(1, [pt.halfspace([1], -1, True), pt.halfspace([-1], 1, False)])
    )


def test_closure_examples():
    closed = pt.closure(figure1_open())
    assert all(not hs.strict for hs in closed.halfspaces)
    empty = pt.closure(
        pt.polytope(1, [pt.halfspace([1], 0, True), pt.halfspace([-1], 0, True)])
    )
    assert not pt.is_feasible(empty)
    assert pt.canonical_text(pt.closure(closed)) == pt.canonical_text(closed)


def test_contains():
    closed = pt.closure(figure1_open())
    assert pt.contains(closed, [0, 0])
    assert not pt.contains(closed, [1, F(1, 4)])
    open_square = pt.polytope(2, pt.cube_halfspaces(2, strict=True))
    assert not pt.contains(open_square, [0, 0])
    with pytest.raises(ValueError):
        pt.contains(closed, [0, 0, 0])


def test_vertices_figure1_against_brute_force():
    closed = pt.closure(figure1_open())
    oracle = brute_force_vertices_2d(
        [(tuple(hs.normal), hs.offset) for hs in closed.halfspaces]
    )
    got = pt.vertices(closed).vertices
    assert list(got) == oracle
    assert set(got) == {(F(0), F(0)), (F(0), F(1)), (F(1), F(1, 2)), (F(1), F(1))}


def test_vertices_unit_square_and_point():
    square = pt.polytope(2, pt.cube_halfspaces(2, strict=False))
    assert set(pt.vertices(square).vertices) == {
        (F(0), F(0)), (F(0), F(1)), (F(1), F(0)), (F(1), F(1))
    }
    point = pt.polytope(1, [pt.halfspace([1], 0, False), pt.halfspace([-1], 0, False)])
    assert pt.vertices(point).vertices == ((F(0),),)


def test_vertices_rejects_strict_and_unbounded():
    with pytest.raises(ValueError):
        pt.vertices(figure1_open())
    halfline = pt.polytope(1, [pt.halfspace([1], 0, False)])
    with pytest.raises(ValueError):
        pt.vertices(halfline)


def test_affine_preimage():
    p = pt.polytope(1, [pt.halfspace([1], 0, False)])
    m = pt.affine_map([[2]], [-1])  # x = 2b - 1
    pre = pt.affine_preimage(m, p)
    assert pt.canonical_lines(pre) == ["2 | -1 >= 0"]
    ident = pt.identity_map(2)
    body = pt.closure(figure1_open())
    assert pt.canonical_text(pt.affine_preimage(ident, body)) == pt.canonical_text(body)


def test_affine_preimage_commutes_with_intersection():
    m = pt.affine_map([[1, 1], [1, -1]], [0, F(1, 2)])
    p = pt.polytope(2, [pt.halfspace([1, 0], 0, False), pt.halfspace([0, 1], -1, True)])
    q = pt.polytope(2, [pt.halfspace([1, 1], 2, False)])
    lhs = pt.affine_preimage(m, pt.intersection(p, q))
    rhs = pt.intersection(pt.affine_preimage(m, p), pt.affine_preimage(m, q))
    assert pt.canonical_text(lhs) == pt.canonical_text(rhs)


def test_remove_redundant():
    p = pt.polytope(1, [pt.halfspace([1], 0, False), pt.halfspace([1], 1, False)])
    assert pt.canonical_lines(pt.remove_redundant(p)) == ["1 | 0 >= 0"]
    # a tighter halfspace dominates two cube faces
    q = pt.polytope(
        2,
        pt.cube_halfspaces(2, strict=False)
        + [pt.halfspace([-1, 0], F(1, 2), False)],
    )
    reduced = pt.remove_redundant(q)
    assert "-1 0 | 1 >= 0" not in pt.canonical_lines(reduced)
    assert "-2 0 | 1 >= 0" in pt.canonical_lines(reduced)


def test_substitute():
    body = pt.closure(figure1_open())
    section = pt.substitute(body, 0, F(1, 2))  # b1 = 1/2
    assert section.dim == 1
    assert pt.contains(section, [F(1, 2)])
    assert not pt.contains(section, [F(1, 8)])  # 2*b2 >= 1/2 fails


def _hull_round_trip(closed):
    """vertices -> convex hull -> H-rep must define the same set: the hull
    facets agree with the minimal representation of the input."""
    verts = pt.vertices(closed).vertices
    hull = pt.polytope(2, [pt.halfspace(nm, c, False) for nm, c in hull_2d(verts)])
    assert pt.canonical_lines(hull) == pt.canonical_lines(pt.remove_redundant(closed))
    for v in verts:
        assert pt.contains(hull, v)


def test_vertex_hull_round_trip():
    _hull_round_trip(pt.closure(figure1_open()))
    _hull_round_trip(pt.polytope(2, pt.cube_halfspaces(2, strict=False)))
    rng = random.Random(5)
    done = 0
    while done < 25:
        system = _random_system(rng, 2)
        weak = pt.polytope(2, [hs.weakened() for hs in system.halfspaces])
        verts = pt.vertices(weak).vertices if pt.is_feasible(weak) else ()
        if len(verts) < 3:
            continue  # hull oracle needs a full-dimensional polygon
        _hull_round_trip(weak)
        done += 1


def test_canonical_text_round_trip():
    body = pt.closure(figure1_open())
    text = pt.canonical_text(body)
    reparsed = pt.parse_canonical(text, 2)
    assert pt.canonical_text(reparsed) == text


def test_canonical_scaling_normalization():
    a = pt.polytope(2, [pt.halfspace([F(1, 2), F(-1, 3)], F(1, 6), True)])
    b = pt.polytope(2, [pt.halfspace([3, -2], 1, True)])
    assert pt.canonical_text(a) == pt.canonical_text(b)


def _random_system(rng, dim):
    rows = []
    for _ in range(rng.randint(1, 4)):
        normal = [rng.randint(-3, 3) for _ in range(dim)]
        rows.append(pt.halfspace(normal, rng.randint(-2, 2), rng.random() < 0.5))
    return pt.polytope(dim, pt.cube_halfspaces(dim, strict=False) + rows)


def test_infeasibility_certificates():
    empty = pt.polytope(
        1, [pt.halfspace([1], 0, True), pt.halfspace([-1], 0, True)]
    )
    cert = pt.infeasibility_certificate(empty)
    assert cert is not None
    assert pt.verify_certificate(empty, cert)
    assert pt.infeasibility_certificate(figure1_open()) is None
    # a weak-only contradiction needs a strictly negative constant
    weak = pt.polytope(1, [pt.halfspace([1], -2, False), pt.halfspace([-1], 1, False)])
    cert = pt.infeasibility_certificate(weak)
    assert cert is not None and pt.verify_certificate(weak, cert)
    # dropping a multiplier breaks the cancellation and must not verify
    assert not pt.verify_certificate(weak, (cert[0], F(0)))
    assert not pt.verify_certificate(weak, (-cert[0], -cert[1]))
    rng = random.Random(99)
    for _ in range(150):
        system = _random_system(rng, rng.randint(1, 3))
        cert = pt.infeasibility_certificate(system)
        if cert is None:
            assert pt.is_feasible(system)
        else:
            assert not pt.is_feasible(system)
            assert pt.verify_certificate(system, cert)


def test_feasibility_agrees_with_grid_search():
    from itertools import product

    rng = random.Random(1729)
    for _ in range(120):
        dim = rng.randint(1, 3)
        denom = 64 if dim <= 2 else 8  # 1/64 steps where the scan stays cheap
        steps = [F(k, denom) for k in range(denom + 1)]
        system = _random_system(rng, dim)
        feasible = pt.is_feasible(system)
        grid_hit = next(
            (point for point in product(steps, repeat=dim) if pt.contains(system, point)),
            None,
        )
        if grid_hit is not None:
            # substitution re-verifies the certificate and refutes infeasibility
            assert feasible
            assert all(hs.holds(grid_hit) for hs in system.halfspaces)
