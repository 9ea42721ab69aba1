import pytest

from cases import sweep
from symwsc.core import Collection, cyclic_intervals
from symwsc.generator import generate
from symwsc.tiling import BLACK, WHITE, TilingError, build_tiling, cliques, nontrivial_cliques, position

HEXAGON = Collection.parse("123 234 345 456 156 126 136 236 346 356".split(), 6, 3)


def area(poly):
    return 0.5 * sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]))


def cores(D, color):
    return {"".join(map(str, sorted(c.core))) for c in nontrivial_cliques(D) if c.color == color}


def test_hexagon_white_cliques():
    assert cores(HEXAGON, WHITE) == {"23", "56", "16", "34", "36"}
    w36 = next(c for c in cliques(HEXAGON) if c.color == WHITE and c.core == {3, 6})
    assert [S.compact() for S in w36.members] == ["136", "236", "346", "356"]


def test_hexagon_black_cliques():
    assert cores(HEXAGON, BLACK) == {"1236", "3456", "2346", "1356"}
    b = next(c for c in cliques(HEXAGON) if c.color == BLACK and c.core == {1, 3, 5, 6})
    assert sorted(S.compact() for S in b.members) == ["136", "156", "356"]


def test_clique_membership_definitions():
    for c in cliques(HEXAGON):
        for S in c.members:
            if c.color == WHITE:
                assert c.core < S.as_set() and len(c.core) == 2
            else:
                assert S.as_set() < c.core and len(c.core) == 4
    # every member containing a white core is listed
    for c in cliques(HEXAGON):
        if c.color == WHITE:
            assert set(c.members) == {S for S in HEXAGON if c.core <= S.as_set()}


def test_hexagon_tiling_shape():
    T = build_tiling(HEXAGON)
    assert T.euler_characteristic() == 1
    assert len(T.faces) == 9 and len(T.vertices) == 10
    for i in range(1, 7):
        a, b = T.boundary_edge(i)
        assert {a, b} <= set(cyclic_intervals(3, 6))
        assert None in T.edge_faces(a, b)


@pytest.mark.parametrize("k,n,ell", [c for c in sweep(9) if c[1] >= 3])
def test_faces_tile_the_polygon(k, n, ell):
    D = generate(k, n, ell)
    T = build_tiling(D)
    assert T.euler_characteristic() == 1
    outer = [position(I) for I in cyclic_intervals(k, n)]
    # faces are counterclockwise, non-degenerate and exactly fill the region
    areas = [area([position(S) for S in f.members]) for f in T.faces]
    assert min(areas) > 1e-9
    assert sum(areas) == pytest.approx(abs(area(outer)))
    # interior edges touch two faces, boundary edges one
    for S, U in T.edges:
        inside = [f for f in T.edge_faces(S, U) if f is not None]
        assert len(inside) in (1, 2)


def test_rejects_bad_input():
    with pytest.raises(TilingError):
        build_tiling(Collection.parse(["135", "246"], 6, 3))
    with pytest.raises(TilingError):
        build_tiling(Collection.parse(["123", "234"], 6, 3))
