import json

import pytest
from click.testing import CliRunner

from adapters.kl_table_cache_adapter import KLTableCacheAdapter
from core.tableau import StandardTableau
from core.web import Web
from interfaces import cli_interface
from interfaces.cli_interface import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(autouse=True)
def private_cache(monkeypatch, tmp_path):
    monkeypatch.setattr(cli_interface, "KLTableCacheAdapter",
                        lambda: KLTableCacheAdapter(tmp_path / "cache"))


@pytest.fixture
def star_file(runner, tmp_path):
    path = tmp_path / "star.web"
    result = runner.invoke(cli, ["web", "from-tableau", "13/25/46", "-o", str(path)])
    assert result.exit_code == 0
    return path


def test_rs(runner):
    result = runner.invoke(cli, ["rs", "54312"])
    assert result.exit_code == 0
    assert result.output == "54312\t1,2/3/4/5\t1,5/2/3/4\n"


def test_rs_steps(runner):
    result = runner.invoke(cli, ["rs", "--steps", "21"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["1\t2\t1", "2\t1/2\t1/2"]


def test_library_errors_exit_with_one(runner):
    assert runner.invoke(cli, ["rs", "5431"]).exit_code == 1
    assert runner.invoke(cli, ["kl", "act", "3", "1", "2134"]).exit_code == 1
    assert runner.invoke(cli, ["web", "from-tableau", "125/34/6"]).exit_code == 1


def test_kl_table(runner):
    result = runner.invoke(cli, ["kl", "table", "3", "--no-cache"])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 19
    result = runner.invoke(cli, ["kl", "table", "4", "--nontrivial"])
    lines = [line.split("\t") for line in result.output.splitlines()]
    assert len(lines) == 6
    assert {fields[2] for fields in lines} == {"v + 1"}


def test_kl_cells_and_action(runner):
    result = runner.invoke(cli, ["kl", "cells", "3"])
    assert result.exit_code == 0
    assert "1,3/2\t2\t213,312" in result.output.splitlines()
    result = runner.invoke(cli, ["kl", "act", "3", "2", "213"])
    assert result.exit_code == 0
    assert result.output == "C_213\tv\nC_312\tv^(1/2)\n"


def test_web_from_tableau_prints_the_text_format(runner, kk):
    result = runner.invoke(cli, ["web", "from-tableau", "1/2/3"])
    assert result.exit_code == 0
    assert Web.parse(result.output) == kk.tableau_to_web(StandardTableau.parse("1/2/3"))


def test_web_yamanouchi(runner, star_file):
    result = runner.invoke(cli, ["web", "yamanouchi", str(star_file)])
    assert result.exit_code == 0
    assert result.output == "+0+-0-\t1,3/2,5/4,6\t0,1,1,2,1,1,0\n"


def test_web_act(runner, star_file):
    result = runner.invoke(cli, ["web", "act", "s2s1", str(star_file)])
    assert result.exit_code == 0
    assert set(result.output.splitlines()) == {"-1\t1,3/2,5/4,6", "-1\t1,4/2,5/3,6",
                                               "-1\t1,2/3,5/4,6"}


def test_web_files_need_the_header(runner, tmp_path):
    path = tmp_path / "bad.web"
    path.write_text("boundary 0\n", encoding="utf-8")
    assert runner.invoke(cli, ["web", "yamanouchi", str(path)]).exit_code == 1


def test_search_negative_on_three_points(runner):
    result = runner.invoke(cli, ["web", "search-negative", "1", "--threads", "1"])
    assert result.exit_code == 0
    assert result.output == ""


def test_gentau_match(runner):
    result = runner.invoke(cli, ["gentau", "match", "tableaux:2,2,2", "webs:2", "--n", "6"])
    assert result.exit_code == 0
    pairs = [line.split("\t") for line in result.output.splitlines()]
    assert len(pairs) == 5
    assert all(web == f"W[{tableau}]" for tableau, web in pairs)


def test_gentau_match_failure_exits_with_one(runner):
    result = runner.invoke(cli, ["gentau", "match", "perms", "tableaux", "--n", "3"])
    assert result.exit_code == 1


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "rs-example"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["passed"]
    assert report["details"] == {"P": "1,2/3/4/5", "Q": "1,5/2/3/4"}
    assert runner.invoke(cli, ["verify", "everything"]).exit_code == 2
    result = runner.invoke(cli, ["verify", "negative-coefficient", "--n", "2", "--generator", "3",
                                 "--generator", "1", "--threads", "1"])
    assert result.exit_code == 0
    assert json.loads(result.output)["details"]["generators"] == [1, 3]


def test_render(runner, tmp_path, star_file):
    output = tmp_path / "tableau.dot"
    result = runner.invoke(cli, ["render", "tableau", "13/25/46", "--format", "dot", "-o", str(output)])
    assert result.exit_code == 0
    assert output.read_text(encoding="utf-8").startswith("digraph tableau")
    output = tmp_path / "web.dot"
    result = runner.invoke(cli, ["render", "web", str(star_file), "--format", "dot", "-o", str(output)])
    assert result.exit_code == 0
    assert output.read_text(encoding="utf-8").startswith("digraph web")
