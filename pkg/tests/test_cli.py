import io
import json
import shutil
import subprocess
import sys

import pytest
from hypothesis import given

from mutlab import Quiver, canonical_key, enumerate_mutation_class, markov_quiver
from mutlab.cli import export_dot, load_cached_class, main, save_class
from mutlab.fixtures import fixture_names, load_fixture
from mutlab.laurent import parse_ratfunc, ratfunc_eq
from mutlab.surface import build_genus

from .conftest import quivers


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin=None: run(capsys, monkeypatch, argv, stdin)


def genus_doc(cli, g):
    code, out, _ = cli(["genus", str(g)])
    assert code == 0
    return out


class TestGenusAndMu:
    def test_genus_document(self, cli):
        doc = json.loads(genus_doc(cli, 2))
        assert Quiver.from_dict(doc["quiver"]) == build_genus(2)[1]
        assert len(doc["triangulation"]["triangles"]) == 6

    def test_genus2_mu(self, cli):
        code, out, _ = cli(["mu"], genus_doc(cli, 2))
        d = json.loads(out)
        assert code == 0 and len(d["terms"]) == 6
        want = " + ".join(d["terms"])
        assert ratfunc_eq(parse_ratfunc(d["mu"], 9), parse_ratfunc(want, 9))
        assert "(x1^2+x2^2+x5^2)/(x1*x2*x5)" in d["terms"]

    def test_mu_needs_triangulation(self, cli):
        code, _, err = cli(["mu"], markov_quiver().to_json())
        assert code == 1 and json.loads(err)["error"] == "usage"

    def test_invalid_genus(self, cli):
        code, _, err = cli(["genus", "0"])
        assert code == 1 and "error" in json.loads(err)


class TestClass:
    def test_torus_class(self, cli):
        code, out, _ = cli(["class", "--cap", "10"], genus_doc(cli, 1))
        assert code == 0 and json.loads(out)["size"] == 1

    def test_cap_exit_code(self, cli):
        code, out, _ = cli(["class", "--cap", "3", "--fixture", "genus2"])
        d = json.loads(out)
        assert code == 2 and not d["complete"] and d["size"] == 3

    def test_cache_round_trip(self, cli, tmp_path):
        code, out, _ = cli(["class", "--fixture", "genus2", "--cache-dir", str(tmp_path)])
        assert code == 0 and not json.loads(out)["cached"]
        q = load_fixture("genus2")[0]
        keys, manifest = load_cached_class(tmp_path, q)
        assert keys == enumerate_mutation_class(q).keys
        assert manifest["start_key"] == canonical_key(q).hex() and manifest["complete"]
        code, out, _ = cli(["class", "--fixture", "genus2", "--cache-dir", str(tmp_path)])
        assert json.loads(out) == {"size": 9, "complete": True, "cap": 10**6, "cached": True}

    def test_cache_env(self, cli, tmp_path, monkeypatch):
        monkeypatch.setenv("MUTLAB_CACHE", str(tmp_path))
        cli(["class", "--fixture", "markov"])
        assert load_cached_class(tmp_path, markov_quiver())[1]["size"] == 1

    def test_partial_cache_recomputed(self, cli, tmp_path):
        cli(["class", "--cap", "2", "--fixture", "genus2", "--cache-dir", str(tmp_path)])
        code, out, _ = cli(["class", "--fixture", "genus2", "--cache-dir", str(tmp_path)])
        assert code == 0 and json.loads(out)["size"] == 9

    def test_save_and_load(self, tmp_path):
        q = build_genus(2)[1]
        cls = enumerate_mutation_class(q)
        save_class(tmp_path, q, cls.keys, 100, True)
        assert load_cached_class(tmp_path, q)[0] == cls.keys
        assert load_cached_class(tmp_path / "missing", q) is None


class TestOtherCommands:
    def test_mutate_flips_too(self, cli):
        code, out, _ = cli(["mutate", "-k", "1", "4", "--fixture", "genus2"])
        d = json.loads(out)
        from mutlab import mutate
        from mutlab.surface import Triangulation, adjacency_quiver

        q = mutate(mutate(load_fixture("genus2")[0], 1), 4)
        assert Quiver.from_dict(d["quiver"]) == q
        assert adjacency_quiver(Triangulation.from_dict(d["triangulation"])) == q

    def test_mutate_pipeline_into_mu(self, cli):
        _, moved, _ = cli(["mutate", "-k", "2", "3"], genus_doc(cli, 2))
        code, out, _ = cli(["mu"], moved)
        d = json.loads(out)
        # mu of the flipped triangulation, written in its own initial cluster
        assert code == 0 and len(d["terms"]) == 6
        assert ratfunc_eq(parse_ratfunc(d["mu"], 9), parse_ratfunc(" + ".join(d["terms"]), 9))

    def test_mutate_frozen(self, cli):
        code, _, err = cli(["mutate", "-k", "5", "--fixture", "q11"])
        assert code == 1 and json.loads(err)["error"] == "invalid_vertex"

    def test_classp(self, cli):
        code, out, _ = cli(["classp", "--fixture", "markov"])
        assert code == 0 and json.loads(out)["answer"] == "no"
        code, out, _ = cli(["classp"], Quiver(3, 0, [(1, 2), (2, 3)]).to_json())
        assert json.loads(out)["answer"] == "yes" and json.loads(out)["witness"]

    def test_classp_prime(self, cli):
        code, out, _ = cli(["classp", "--prime", "--fixture", "q11"])
        assert code == 0 and json.loads(out)["answer"] == "yes"

    def test_classp_budget(self, cli):
        q = Quiver(3, 0, [(1, 2)] * 3 + [(2, 3)] * 3 + [(3, 1)] * 3)
        code, out, _ = cli(["classp", "--budget", "20"], q.to_json())
        assert code == 2 and json.loads(out)["answer"] == "budget-exhausted"

    def test_angles(self, cli):
        code, out, _ = cli(["angles", "--fixture", "hexagon", "--specialize-frozen"])
        rows = json.loads(out)
        assert code == 0 and len(rows) == 6
        by_point = {r["point"]: r["angle_sum"] for r in rows}
        assert ratfunc_eq(parse_ratfunc(by_point["L"], 9), parse_ratfunc("(1+x2)/x3", 9))

    def test_angles_one_point(self, cli):
        code, out, _ = cli(["angles", "--point", "1", "--fixture", "q11"])
        d = json.loads(out)
        assert code == 0 and d["boundary"] and d["incident"][0] == 5

    def test_angles_unknown_point(self, cli):
        code, _, err = cli(["angles", "--point", "Z", "--fixture", "hexagon"])
        assert code == 1 and json.loads(err)["error"] == "invalid_point"

    def test_index(self, cli):
        code, out, _ = cli(["index", "--walk", "200", "--seed", "3", "--fixture", "genus2"])
        d = json.loads(out)
        assert code == 0 and d["constant"] and d["first"] == d["last"] == -9

    def test_index_reproducible(self, cli):
        a = cli(["index", "--walk", "50", "--seed", "7", "--fixture", "genus3"])[1]
        b = cli(["index", "--walk", "50", "--seed", "7", "--fixture", "genus3"])[1]
        assert a == b

    def test_obstruction(self, cli):
        code, out, _ = cli(["obstruction"], genus_doc(cli, 2))
        d = json.loads(out)
        assert (d["start_sum"], d["target_sum"]) == (-9, 9)
        assert d["verdict"] == "unreachable by any mutation sequence"

    def test_obstruction_not_two_regular(self, cli):
        code, _, err = cli(["obstruction", "--fixture", "hexagon"])
        assert code == 1 and json.loads(err)["error"] == "not_two_regular"

    def test_potential(self, cli):
        code, out, _ = cli(["potential", "--which", "w1", "--fixture", "torus"])
        assert code == 0 and len(out.strip().splitlines()) == 3
        code, out, _ = cli(["potential", "--json", "--fixture", "genus2"])
        assert len(json.loads(out)["terms"]) == 6

    def test_export_dot(self, cli, tmp_path):
        path = tmp_path / "g3.dot"
        code, _, _ = cli(["export-dot", "--fixture", "genus3", "--out", str(path)])
        text = path.read_text()
        assert code == 0 and text.startswith("digraph")
        assert text.count("shape=circle") == 15 and text.count(" -> ") == 30

    def test_bad_json(self, cli):
        code, _, err = cli(["class"], "{not json")
        assert code == 1 and json.loads(err)["error"] == "usage"

    def test_empty_input(self, cli):
        code, _, err = cli(["class"], "")
        assert code == 1

    def test_unknown_fixture(self, cli):
        code, _, err = cli(["class", "--fixture", "nope"])
        assert code == 1 and "nope" in json.loads(err)["message"]

    def test_bad_quiver(self, cli):
        code, _, err = cli(["class"], json.dumps({"n_mutable": 2, "arrows": [[1, 1]]}))
        assert code == 1 and json.loads(err)["error"] == "invalid_quiver"

    def test_out_file(self, cli, tmp_path):
        path = tmp_path / "o.json"
        cli(["obstruction", "--fixture", "markov", "--out", str(path)])
        assert json.loads(path.read_text())["start_sum"] == -3


class TestExportDot:
    def test_markov(self):
        text = export_dot(markov_quiver())
        assert text.count("shape=circle") == 3 and text.count(" -> ") == 6

    def test_hexagon(self, tmp_path):
        q = load_fixture("hexagon")[0]
        export_dot(q, tmp_path / "h.dot")
        text = (tmp_path / "h.dot").read_text()
        assert text.count("shape=circle") == 3 and text.count("shape=box") == 6

    def test_stable(self):
        q = build_genus(2)[1]
        assert export_dot(q) == export_dot(Quiver.from_json(q.to_json()))


@given(quivers())
def test_json_round_trip(q):
    assert Quiver.from_json(q.to_json()) == q


def test_fixtures_listed():
    assert {"markov", "q11", "genus2", "genus3", "hexagon"} <= set(fixture_names())


@pytest.mark.skipif(shutil.which("mutlab") is None, reason="console script not installed")
def test_console_pipeline():
    gen = subprocess.run(["mutlab", "genus", "2"], capture_output=True, text=True, check=True)
    mu = subprocess.run(["mutlab", "mu"], input=gen.stdout, capture_output=True, text=True)
    assert mu.returncode == 0 and len(json.loads(mu.stdout)["terms"]) == 6
    bad = subprocess.run(["mutlab", "mu", "--fixture", "markov"], capture_output=True, text=True)
    assert bad.returncode == 1 and json.loads(bad.stderr)["error"] == "usage"
