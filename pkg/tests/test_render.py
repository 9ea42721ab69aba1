import xml.etree.ElementTree as ET

import pytest

from symwsc.generator import generate
from symwsc.plabic import EquivariantResolution, dual_plabic_graph, make_trivalent
from symwsc.render import RenderError, render
from symwsc.tiling import build_tiling
from symwsc.weave import ENDPOINT, HEXAVALENT, TRIVALENT, build_weave, symmetric_weave_pipeline

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    root = ET.fromstring(svg)
    assert root.tag == NS + "svg"
    return root


def by_class(root, tag, prefix):
    return [e for e in root.iter(NS + tag) if e.get("class", "").startswith(prefix)]


@pytest.fixture(scope="module")
def D():
    return generate(3, 6, 3)


def test_tiling_svg(D):
    T = build_tiling(D)
    root = parse(render(T))
    assert len(by_class(root, "polygon", "face")) == len(T.faces)
    assert len(by_class(root, "polygon", "face white")) == sum(f.color == "white" for f in T.faces)
    assert len(by_class(root, "line", "edge")) == len(T.edges)
    assert len(by_class(root, "circle", "vertex")) == len(D)
    assert {t.text for t in by_class(root, "text", "label")} == set(D.compact())


def test_collection_renders_as_tiling(D):
    assert render(D) == render(build_tiling(D))


def test_graph_svg(D):
    G = dual_plabic_graph(build_tiling(D))
    root = parse(render(G))
    assert len(by_class(root, "line", "edge")) == len(G.ends)
    assert len(by_class(root, "circle", "vertex")) == len(G.color)
    assert len(by_class(root, "circle", "marked")) == G.n
    assert {t.text for t in by_class(root, "text", "label")} == set(D.compact())


def test_weave_svg(D):
    W = build_weave(make_trivalent(dual_plabic_graph(build_tiling(D)), EquivariantResolution(3)))
    root = parse(render(W))
    assert len(by_class(root, "line", "edge")) == len(W.edges)
    assert len(by_class(root, "line", "tick")) == W.count(ENDPOINT)
    assert len(by_class(root, "circle", "vertex hexavalent")) == W.count(HEXAVALENT)
    assert len(by_class(root, "circle", "vertex trivalent")) == W.count(TRIVALENT)
    assert {e.get("class") for e in by_class(root, "line", "tick")} == {"tick s1", "tick s2"}


def test_pipeline_renders_weave():
    r = symmetric_weave_pipeline(3, 6, 3)
    assert render(r) == render(r.weave)


def test_tikz(D):
    out = render(build_tiling(D), "tikz")
    assert out.startswith("\\begin{tikzpicture}") and out.rstrip().endswith("\\end{tikzpicture}")
    assert out.count("-- cycle;") == 9
    assert out.count("% label") == len(D)


def test_coordinates_are_finite(D):
    root = parse(render(dual_plabic_graph(build_tiling(D))))
    for c in root.iter(NS + "circle"):
        assert 0 <= float(c.get("cx")) <= 480 and 0 <= float(c.get("cy")) <= 480


def test_errors(D):
    with pytest.raises(RenderError):
        render(D, "png")
    with pytest.raises(RenderError):
        render(42)
