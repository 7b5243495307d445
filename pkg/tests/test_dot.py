import re
from pathlib import Path

import pytest

from immersion import graph as gr
from immersion.catalog import catalog_certificate
from immersion.certificates import ImmersionCertificate
from immersion.constructions import cycle_witness
from immersion.dot import export_dot

GOLDEN = Path(__file__).parent / "golden"


def _trail_classes(text):
    return set(re.findall(r'class="(trail_\d+_\d+)"', text))


def test_cycle_arcs_give_three_groups():
    w = cycle_witness(5)
    text = export_dot(w.graph, w.cert)
    assert len(_trail_classes(text)) == 3
    assert text.count("doublecircle") == 3
    assert "dashed" not in text  # every edge of C_5 lies on some arc


def test_p6_squared_matches_golden():
    g, c = catalog_certificate("p6_squared")
    text = export_dot(g, c, name="p6_squared")
    assert len(_trail_classes(text)) == 10
    assert text.count("doublecircle") == 5
    assert "dashed" in text
    assert text == (GOLDEN / "p6_squared.dot").read_text()


def test_plain_graph():
    text = export_dot(gr.cycle(4))
    assert "doublecircle" not in text and "class=" not in text
    assert text.count(" -- ") == 4


def test_byte_stable():
    g, c = catalog_certificate("cm_cn", 6, 6)
    assert export_dot(g, c) == export_dot(g, c)


def test_invalid_certificate_refused():
    w = cycle_witness(5)
    bad = ImmersionCertificate(3, w.cert.terminals, {**w.cert.trails, (0, 1): (0, 1, 0, 1)})
    with pytest.raises(ValueError):
        export_dot(w.graph, bad)
