#!/usr/bin/env python3
"""
Tests for the brattelikit command-line front end.
"""

import json

import pytest

from src.core.application import BratteliKitApp
from src.diagram.bidiagram import BiInfiniteDiagram
from src.diagram.matrix import TransitionMatrix
from src.diagram.sources import ExplicitWindowSource, StationarySource


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.delenv("BRATTELIKIT_MODE", raising=False)
    settings = str(tmp_path / "settings.json")

    def _run(*argv):
        return BratteliKitApp().run([*argv, "--config", settings])
    return _run


def test_examples_list(run, capsys):
    assert run("examples", "list") == 0
    doc = json.loads(capsys.readouterr().out)
    names = [e["name"] for e in doc["examples"]]
    assert "fibonacci" in names and "chacon" in names
    assert doc["config"]["depth"] == 8, "every document records the run configuration"


def test_unknown_bundle_exits_with_validation_code(run, capsys):
    assert run("certify", "penrose") == 2
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(err)["error"] == "UnknownBundle"


def test_validate_bundle_and_broken_file(run, capsys, tmp_path):
    assert run("validate", "fibonacci", "--depth", "4") == 0
    assert json.loads(capsys.readouterr().out)["validation"]["valid"] is True

    broken = BiInfiniteDiagram(ExplicitWindowSource(([[1, 1], [0, 0]],)),
                               StationarySource((TransitionMatrix.identity(2),)), 2)
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"diagram": broken.to_dict()}))
    assert run("validate", str(path), "--depth", "3") == 2


def test_vershik_json_lines(run, capsys):
    assert run("vershik", "fibonacci", "--steps", "3", "--depth", "4") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    records = [json.loads(line) for line in lines]
    assert [r["step"] for r in records] == [0, 1, 2, 3]
    assert records[0]["startVertexIndex"] == 0
    assert len(records[0]["prefixEdges"]) == 4


def test_weights_series(run, capsys):
    assert run("weights", "mpn-bounded", "--series", "--depth", "4") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["series"]["verdict"] == "bounded"
    assert doc["method"] == "series"


def test_surface_writes_files(run, capsys, tmp_path):
    svg = tmp_path / "odo.svg"
    assert run("surface", "odometer", "--depth", "2", "--svg", str(svg), "--approximant", "0") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rectangles"] == 1
    assert doc["approximant"]["genera"] == [1]
    assert svg.read_text().startswith("<?xml")


def test_renormalize_checks_functoriality(run, capsys):
    assert run("renormalize", "chacon", "--k", "1", "--depth", "3", "--check-functoriality") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["functoriality"]["ok"] is True
    assert doc["k"] == 1


def test_certify_odometer(run, capsys):
    assert run("certify", "odometer") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "UNIQUELY_ERGODIC"
    assert doc["route"] == "single-vertex"


def test_strict_inconclusive_certificate(run, capsys):
    assert run("certify", "chacon", "--strict") == 4
    captured = capsys.readouterr()
    assert json.loads(captured.out)["verdict"] == "INCONCLUSIVE"
    assert json.loads(captured.err.strip().splitlines()[-1])["error"] == "InconclusiveStrict"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
