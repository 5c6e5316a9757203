import numpy as np
import pytest

from adapters.kl_table_cache_adapter import KL_CACHE_FORMAT_VERSION, KLTableCacheAdapter
from adapters.render_adapter import RenderAdapter
from core.errors import ParseError, PreconditionError
from core.tableau import StandardTableau
from core.web import Web


def _rewrite(path, **changes):
    with np.load(path) as archive:
        contents = {key: archive[key] for key in archive.files}
    contents.update(changes)
    np.savez_compressed(path, **contents)


def test_cache_round_trip(tmp_path, kl_table_4):
    cache = KLTableCacheAdapter(tmp_path)
    assert cache.load(4) is None
    path = cache.save(kl_table_4)
    assert path == tmp_path / "kl_S4.npz"
    loaded = cache.load(4)
    assert loaded.elements == kl_table_4.elements
    assert np.array_equal(loaded.mu_matrix(), kl_table_4.mu_matrix())
    for w in kl_table_4.elements:
        for y in kl_table_4.elements:
            assert loaded.polynomial(y, w) == kl_table_4.polynomial(y, w)


def test_cache_rejects_foreign_versions(tmp_path, kl_table_3):
    cache = KLTableCacheAdapter(tmp_path)
    path = cache.save(kl_table_3)
    _rewrite(path, format_version=np.array(KL_CACHE_FORMAT_VERSION + 1))
    with pytest.raises(ParseError):
        cache.load(3)


def test_cache_rejects_a_mismatched_size(tmp_path, kl_table_3):
    cache = KLTableCacheAdapter(tmp_path)
    cache.save(kl_table_3).rename(cache.path_for(4))
    with pytest.raises(ParseError):
        cache.load(4)


def test_web_dot(kk):
    star = kk.tableau_to_web(StandardTableau.parse("13/25/46"))
    dot = RenderAdapter().web_to_dot(star, depths=True)
    assert dot.startswith("digraph web {")
    assert dot.count("->") == len(star.edges)
    assert dot.count("fillcolor=white") == 1
    assert dot.count("fillcolor=black") == 3
    assert sum(1 for line in dot.splitlines() if line.startswith("  f")) == len(star.faces)


def test_layout_keeps_boundary_on_the_line(kk):
    web = kk.tableau_to_web(StandardTableau.parse("1,3,7,9/2,5,8,11/4,6,10,12"))
    positions = RenderAdapter().web_layout(web)
    assert len(positions) == web.boundary_count + web.internal_count
    assert all(positions[v] == (v + 1.0, 0.0) for v in range(web.boundary_count))
    assert all(positions[v][1] > 0 for v in range(web.boundary_count, len(positions)))


def test_tableau_dot():
    dot = RenderAdapter().tableau_to_dot(StandardTableau.parse("13/25/46"))
    assert "{{1 | 3} | {2 | 5} | {4 | 6}}" in dot


@pytest.mark.parametrize("item", [
    StandardTableau.parse("125/34/6"),
    Web.empty(),
    Web.empty(2),
])
def test_svg_files(tmp_path, item):
    path = RenderAdapter().render(item, "svg", tmp_path / "out.svg")
    assert "<svg" in path.read_text(encoding="utf-8")


def test_svg_of_a_web(tmp_path, kk):
    web = kk.tableau_to_web(StandardTableau.parse("13/25/46"))
    path = RenderAdapter().render(web, "svg", tmp_path / "star.svg", depths=True)
    assert "<svg" in path.read_text(encoding="utf-8")
    dot = RenderAdapter().render(web, "dot", tmp_path / "star.dot")
    assert dot.read_text(encoding="utf-8") == RenderAdapter().web_to_dot(web)


def test_unknown_format(tmp_path):
    with pytest.raises(PreconditionError):
        RenderAdapter().render(Web.empty(), "png", tmp_path / "out.png")
