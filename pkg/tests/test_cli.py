import json

import pytest

from lorentz_genset.cli import EXIT_CAP, EXIT_CONFIG, EXIT_FAIL, EXIT_OK, RunConfig, main, run


def _run(tmp_path, name, *args):
    out = tmp_path / name
    code = main([*args, "-o", str(out)])
    return code, out.read_text() if out.exists() else None


def test_enumerate_bound_1(tmp_path):
    code, text = _run(tmp_path, "e.json", "enumerate", "--n", "7", "--bound", "1")
    data = json.loads(text)
    assert code == EXIT_OK and data["count"] == 24 and data["strata"] == {"1": 24}
    assert data["schema"] == "lorentz-genset/1"


def test_enumerate_uncertified_n_warns(tmp_path, caplog):
    code, text = _run(tmp_path, "e.json", "enumerate", "--n", "5", "--bound", "3")
    assert code == EXIT_OK and json.loads(text)["n"] == 5
    assert "not certified" in caplog.text


def test_enumerate_self_check(tmp_path):
    code, _ = _run(tmp_path, "e.json", "enumerate", "--bound", "6", "--self-check")
    assert code == EXIT_OK


def test_enumerate_deterministic_across_workers(tmp_path):
    _, a = _run(tmp_path, "a.json", "enumerate", "--bound", "21", "--threads", "1")
    _, b = _run(tmp_path, "b.json", "enumerate", "--bound", "21", "--threads", "4")
    _, c = _run(tmp_path, "c.json", "enumerate", "--bound", "21")
    assert a == b == c


def test_domain_and_export(tmp_path):
    code, a = _run(tmp_path, "d1.json", "domain", "--threads", "1")
    assert code == EXIT_OK and json.loads(a)["certified"]
    _, b = _run(tmp_path, "d2.json", "domain", "--threads", "4")
    assert a == b
    code, obj = _run(tmp_path, "d.obj", "domain", "--format", "obj", "--which", "voronoi")
    assert code == EXIT_OK and sum(line.startswith("v ") for line in obj.splitlines()) == 80
    code, obj2 = _run(tmp_path, "x.obj", "export", "--input", str(tmp_path / "d1.json"), "--which", "voronoi")
    assert code == EXIT_OK and obj2 == obj


def test_verify_reference_exits_nonzero(tmp_path):
    code, text = _run(tmp_path, "v.json", "verify-paper")
    rep = json.loads(text)
    assert code == EXIT_FAIL
    assert rep["relations_passed"] == "2/4"
    assert all(v["valid"] for v in rep["catalog"].values())
    assert all(rep["inverses"].values())
    assert all(all(f.values()) for f in rep["facts"].values())


@pytest.mark.parametrize(
    "cfg",
    [
        RunConfig("domain", n=5),
        RunConfig("generators", n=3),
        RunConfig("enumerate", bound_T=0),
        RunConfig("domain", bound_T=1),
        RunConfig("enumerate", threads=0),
        RunConfig("export"),
        RunConfig("bogus"),
        RunConfig("domain", format="stl"),
    ],
)
def test_config_errors(cfg):
    assert run(cfg) == EXIT_CONFIG


def test_iteration_cap(tmp_path):
    assert run(RunConfig("domain", bound_T=6, max_doublings=0, output_path=tmp_path / "x")) == EXIT_CAP


def test_generators_small_radius(tmp_path):
    code, text = _run(tmp_path, "g.json", "generators", "--bfs-radius", "12")
    data = json.loads(text)
    assert code == EXIT_FAIL
    assert [r["catalog"] for r in data["representatives"]] == [["A", "A^-1"], ["B", "B^-1"], ["C"]]
    assert all(r["facet_supported"] for r in data["representatives"])
    assert len(data["generation"]["missing"]) == 11


def test_argparse_rejects_missing_input():
    with pytest.raises(SystemExit):
        main(["export"])
