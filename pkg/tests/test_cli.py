import json

import pytest

from vabelian import catalog
from vabelian.catalog import builtin, presentation_to_dict
from vabelian.cli import main
from vabelian.core import Cocycle, VAPresentation
from vabelian.reports import SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert json.loads(json.dumps(doc)) == doc
    return code, doc


class TestShow:
    def test_dinf(self, capsys):
        code, doc = run_json(capsys, "show", "Dinf")
        assert code == 0 and doc["rank"] == 1 and doc["q_order"] == 2 and doc["faithful"]

    def test_p4_quotient(self, capsys):
        code, doc = run_json(capsys, "show", "p4", "--m", "3")
        assert doc["quotient_order"] == 36

    def test_text(self, capsys):
        code, out, _ = run(capsys, "show", "p4", "--m", "3")
        assert "|G/A^3| = 36" in out

    def test_bad_file(self, capsys, tmp_path):
        d = presentation_to_dict(builtin("Dinf"))
        d["cocycle"][1][1] = [1]
        path = tmp_path / "badfile.json"
        path.write_text(json.dumps(d))
        code, out, err = run(capsys, "show", str(path))
        assert code == 2 and "cocycle identity" in err

    def test_unknown_group(self, capsys):
        code, _, err = run(capsys, "show", "nosuchgroup")
        assert code == 2 and "nosuchgroup" in err


class TestClassify:
    def test_dinf(self, capsys):
        code, doc = run_json(capsys, "classify", "Dinf", "--p", "3", "--r", "1")
        assert code == 0
        assert sorted((row["order"], row["tag"]) for row in doc["rows"]) == [
            (1, "NotOnto"),
            (2, "Iso"),
            (3, "NotOnto"),
            (6, "OntoNotInjective"),
        ]

    def test_bad_prime(self, capsys):
        code, _, err = run(capsys, "classify", "p4", "--p", "5", "--r", "1")
        assert code == 2 and "3 mod 4" in err

    def test_missing_p(self, capsys):
        code, _, _ = run(capsys, "classify", "p4")
        assert code == 2


class TestOtherCommands:
    def test_qproj(self, capsys):
        code, doc = run_json(capsys, "qproj", "p4", "--bound", "2")
        assert code == 0 and len(doc["orbits"]) == 4 and doc["lines"] == 8

    def test_kernelhom(self, capsys):
        code, doc = run_json(capsys, "kernelhom", "--p", "13", "--gen", "1,5")
        (row,) = doc["rows"]
        assert row["norm2"] < 26

    def test_reduce(self, capsys):
        code, doc = run_json(capsys, "reduce", "Dinf", "--p", "3")
        assert code == 0 and doc["found"] and doc["a_hat"] == [2]

    def test_espace(self, capsys):
        code, doc = run_json(capsys, "espace", "Z/2", "--family", "all", "--d", "1")
        assert code == 0 and doc["counts"] == [3, 4]

    def test_espace_quotient_group(self, capsys):
        code, doc = run_json(capsys, "espace", "Dinf/3", "--family", "cyclic", "--d", "1", "--union", "2,3")
        assert code == 0 and doc["union"]["union_equal"]

    def test_capacity(self, capsys):
        code, _, err = run(capsys, "show", "Z3", "--m", "20")
        assert code == 3

    def test_cap_ceiling(self, capsys):
        code, _, err = run(capsys, "show", "Z3", "--m", "2", "--cap-order", "10000000")
        assert code == 2 and "ceiling" in err

    def test_cap_override(self, capsys):
        code, doc = run_json(capsys, "show", "Z3", "--m", "20", "--cap-order", "50000")
        assert code == 0 and doc["quotient_order"] == 8000


class TestCheck:
    def test_subset_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--module", "cli", "--module", "qproj")
        assert code == 0 and "qproj: 3/3 checks passed" in out

    def test_json(self, capsys):
        code, doc = run_json(capsys, "check", "--module", "cli")
        assert code == 0 and doc["ok"]

    def test_corrupted_builtin(self, capsys, monkeypatch):
        good = catalog._BUILDERS["Dinf"]

        def broken():
            P = good()
            return VAPresentation(P.rank, P.Q, P.action, Cocycle(1, (((0,), (0,)), ((0,), (1,)))), "Dinf")

        monkeypatch.setitem(catalog._BUILDERS, "Dinf", broken)
        catalog.builtin.cache_clear()
        try:
            code, out, _ = run(capsys, "check", "--module", "va-core")
        finally:
            catalog.builtin.cache_clear()
        assert code == 1
        assert "FAIL every catalog presentation satisfies the action and cocycle identities" in out
        assert "cocycle identity fails" in out
