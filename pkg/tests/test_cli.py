import json

import pytest

from relmon.cli import main
from relmon.etperm import mover, transfer
from relmon.relations import Relation, fence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestRelationCommands:
    def test_minlen_fence(self, capsys):
        data = run_json(capsys, "minlen", "--poset", "fence", "--n", "5")
        assert data == {"start": "forward", "length": 5}
        data = run_json(capsys, "minlen", "--poset", "fence", "--n", "5",
                        "--start", "converse")
        assert data == {"start": "converse", "length": 4}

    def test_chain(self, capsys):
        data = run_json(capsys, "chain", "--poset", "fence", "--n", "3",
                        "--m", "2")
        assert Relation.from_json(data) == \
            fence(3).compose(fence(3).converse())

    def test_classify(self, capsys):
        data = run_json(capsys, "classify", "--poset", "k135")
        assert data == {"class": "preorder"}

    def test_compose_from_file(self, capsys, tmp_path):
        f = fence(3)
        path = tmp_path / "rels.json"
        path.write_text(json.dumps(
            {"relations": [f.to_json(), f.converse().to_json()]}))
        data = run_json(capsys, "compose", "--in", str(path))
        assert Relation.from_json(data) == f.compose(f.converse())

    def test_graphop(self, capsys, tmp_path):
        f = fence(3)
        path = tmp_path / "rels.json"
        path.write_text(json.dumps({"relations": [f.to_json(),
                                                  f.converse().to_json()]}))
        data = run_json(capsys, "graphop", "--graph", "compose",
                        "--in", str(path))
        assert Relation.from_json(data) == f.compose(f.converse())

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "classify", "--poset", "fence", "--n", "4",
                         "--out", str(out))
        assert code == 0
        assert json.loads(out.read_text()) == {"class": "preorder"}


class TestScenarioCommands:
    def test_fence_report(self, capsys):
        data = run_json(capsys, "fence", "--n-lo", "2", "--n-hi", "4")
        assert data["pass"] is True
        assert all(c["pass"] for c in data["claims"])

    def test_abc_report(self, capsys):
        data = run_json(capsys, "abc", "--seed", "1", "--trials", "2")
        assert data["pass"] is True

    def test_asymmetry_report(self, capsys):
        data = run_json(capsys, "asymmetry", "--n-lo", "3", "--n-hi", "5")
        assert data["pass"] is True

    def test_layers(self, capsys):
        data = run_json(capsys, "layers", "--poset", "fence", "--n", "4",
                        "--seed", "0", "--trials", "5")
        assert data["pass"] is True

    def test_theorem_suite(self, capsys):
        data = run_json(capsys, "theorem-suite", "--n-max", "3",
                        "--seed", "0", "--trials", "3")
        assert data["pass"] is True

    def test_free_counterexample(self, capsys):
        data = run_json(capsys, "free-counterexample")
        assert data["pass"] is True
        assert len(data["clauses"]) == 4


class TestGroupCommands:
    def test_cayley(self, capsys):
        data = run_json(capsys, "cayley", "--group", "cyclic", "--n", "4",
                        "--subset", "0,1")
        rel = Relation.from_json(data)
        assert (0, 1) in rel and (3, 0) in rel and (0, 2) not in rel

    def test_coset_embed(self, capsys):
        data = run_json(capsys, "coset-embed", "--group", "cyclic", "--n", "6",
                        "--subgroup", "0,3", "--subset", "0,3")
        assert Relation.from_json(data) == Relation.diagonal(3)

    def test_coset_embed_rejects_bad_subset(self, capsys):
        code, _, err = run(capsys, "coset-embed", "--group", "symmetric",
                           "--n", "3", "--subgroup", "0,3,4", "--subset", "0,1")
        assert code == 2
        assert "bi-invariant" in err


class TestPermCommands:
    def test_apply(self, capsys, tmp_path):
        f = mover(2, 0, 1)
        path = tmp_path / "perm.json"
        path.write_text(json.dumps({"perm": f.to_json(), "point": [0, 0]}))
        data = run_json(capsys, "perm", "apply", "--in", str(path))
        assert data == {"point": [1, 0]}

    def test_compose(self, capsys, tmp_path):
        f = mover(2, 0, 1)
        path = tmp_path / "perms.json"
        path.write_text(json.dumps({"perms": [f.to_json(),
                                              f.invert().to_json()]}))
        data = run_json(capsys, "perm", "compose", "--in", str(path))
        assert data["exceptions"] == [] and data["top"] == [0, 0]

    def test_validate(self, capsys, tmp_path):
        perm = {"n": 2, "top": [0, 0], "bottom": [0, 0],
                "exceptions": [[[0, 0], [1, 0]]]}
        path = tmp_path / "perm.json"
        path.write_text(json.dumps({"perm": perm}))
        data = run_json(capsys, "perm", "validate", "--in", str(path))
        assert data["valid"] is False
        assert "flow law" in data["reason"]

    def test_factorize(self, capsys, tmp_path):
        sigma = fence(3)
        rho = sigma.converse()
        f = transfer(3, {(0, 0): (2, 0)})
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"perm": f.to_json(),
                                    "rho": rho.to_json(),
                                    "sigma": sigma.to_json()}))
        data = run_json(capsys, "perm", "factorize", "--in", str(path))
        from relmon.etperm import EventualPermutation
        g = EventualPermutation.from_json(data["g"])
        h = EventualPermutation.from_json(data["h"])
        assert g.respects(rho) and h.respects(sigma)
        assert g.compose(h) == f


class TestErrorPaths:
    def test_missing_n(self, capsys):
        code, _, err = run(capsys, "minlen", "--poset", "fence")
        assert code == 2 and "needs --n" in err

    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "classify")
        assert code == 2

    def test_unreadable_file(self, capsys):
        code, _, err = run(capsys, "compose", "--in", "/nonexistent.json")
        assert code == 2 and "cannot read" in err

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "compose", "--in", str(path))
        assert code == 2 and "invalid JSON" in err

    def test_layers_rejects_non_preorder(self, capsys, tmp_path):
        bad = Relation.from_pairs(3, [(0, 1), (1, 2)])
        path = tmp_path / "rel.json"
        path.write_text(json.dumps(bad.to_json()))
        code, _, err = run(capsys, "layers", "--in", str(path))
        assert code == 2 and "preorder" in err

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
