import xml.etree.ElementTree as ET

import pytest

from tilekit.arctic import aztec_t0_curves, hexagon_tinf_curves
from tilekit.aztec import enumerate_tilings
from tilekit.hexagon import enumerate_lozenge
from tilekit.render import RenderSpec, render_svg
from tilekit.sampler import SamplerConfig, run
from tilekit.schroder import tiling_to_paths

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg)


def by_class(root, name):
    return [el for el in root.iter() if el.get("class") == name]


def test_rank_two_tiling_has_six_dominos():
    root = parse(render_svg(RenderSpec(enumerate_tilings(2)[0])))
    assert root.tag == NS + "svg"
    assert len(by_class(root, "domino")) == 6


def test_ktiling_groups_per_color(fig_ktiling):
    root = parse(render_svg(RenderSpec(fig_ktiling, legend={"k": 3})))
    groups = [g for g in root.iter(NS + "g") if (g.get("id") or "").startswith("color")]
    assert len(groups) == 3
    assert len(by_class(root, "domino")) == 36


def test_heat_map_with_overlay_has_one_path_per_branch():
    res = run(SamplerConfig(6, 2, 0, 5000, seed=1, thinning=100))
    fam = aztec_t0_curves(2)
    root = parse(render_svg(RenderSpec(res.stats, overlay=fam)))
    assert len(by_class(root, "branch")) == len(fam.branches) == 4


def test_paths_and_lozenges():
    root = parse(render_svg(RenderSpec(tiling_to_paths(enumerate_tilings(3)[5]))))
    assert len(by_class(root, "path")) == 3
    layers = list(enumerate_lozenge(2, 1, 2)[:2])
    root = parse(render_svg(RenderSpec(layers, overlay=hexagon_tinf_curves())))
    assert len(by_class(root, "lozenge")) == 2 * (2 * 1 + 1 * 2 + 2 * 2)
    assert len(by_class(root, "branch")) == 6


def test_legend_records_run():
    legend = {"model": "purple-gray", "rank": 2, "k": 1, "t": "1", "seed": 7}
    root = parse(render_svg(RenderSpec(enumerate_tilings(2)[0], legend=legend)))
    text = "".join(el.text or "" for el in root.iter(NS + "text"))
    assert text == "k=1 model=purple-gray rank=2 seed=7 t=1"


def test_identical_inputs_identical_bytes(fig_ktiling):
    spec = RenderSpec(fig_ktiling, overlay=aztec_t0_curves(3), legend={"seed": 1})
    assert render_svg(spec) == render_svg(spec)


def test_spec_validation(fig_ktiling):
    with pytest.raises(ValueError):
        RenderSpec(fig_ktiling, palette=("#000000",))
    with pytest.raises(ValueError):
        RenderSpec(fig_ktiling, scale=0)
    with pytest.raises(TypeError):
        render_svg(RenderSpec(object()))
