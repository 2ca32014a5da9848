import os

import pytest

import netsight as ns

HERE = os.path.dirname(__file__)
DATA_DIR = os.path.abspath(os.path.join(HERE, "..", "data"))
FIXTURE_DIR = os.path.join(HERE, "fixtures")


def data_path(name):
    return os.path.join(DATA_DIR, name)


@pytest.fixture(scope="session")
def karate():
    return ns.load_edge_list_path(data_path("karate.edges"))


@pytest.fixture(scope="session")
def lesmis():
    return ns.load_edge_list_path(data_path("lesmis.edges"))


@pytest.fixture()
def path3():
    return ns.build_graph(range(3), [(0, 1), (1, 2)])


@pytest.fixture()
def star5():
    return ns.build_graph(range(5), [(0, i) for i in range(1, 5)])


@pytest.fixture(scope="session")
def path3_svg_only():
    from netsight.layout import circle_layout
    from netsight.render import RenderSpec, render
    g = ns.build_graph(range(3), [(0, 1), (1, 2)])
    return render(g, circle_layout(g), None, RenderSpec(canvas_px=(256, 256)))


@pytest.fixture(scope="session")
def path3_png(path3_svg_only):
    from netsight.render import rasterize
    return rasterize(path3_svg_only)
