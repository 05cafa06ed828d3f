import json

import pytest

from ultragreed.cli import canonical_json, main
from ultragreed.geg import VectorFamily, enumerate_greedoid
from ultragreed.represent import Representation, build_representation
from ultragreed.setsys import SetSystem, bhargava_greedoid
from ultragreed.field import field_make
from ultragreed.ultra import UltraTriple

from conftest import FIXTURES, load_fixture

BH0 = str(FIXTURES / "bhargava0.json")
BH1 = str(FIXTURES / "bhargava1.json")
MATRIX2 = str(FIXTURES / "geg_matrix2_gf7.json")


def write_json(path, obj):
    path.write_text(canonical_json(obj), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_valid_fixture(self, capsys):
        assert main(["validate", BH1]) == 0
        assert "valid" in capsys.readouterr().out

    def test_invalid_triple(self, tmp_path, capsys):
        bad = write_json(
            tmp_path / "bad.json",
            {
                "labels": [0, 1, 2],
                "weights": {"0": 0, "1": 0, "2": 0},
                "distances": [[0, 1, 1], [1, 0, 3], [1, 3, 0]],
            },
        )
        assert main(["validate", bad]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["validate", "no-such-file.json"]) == 1


class TestGreedoidCommand:
    def test_prints_four_sets(self, capsys):
        assert main(["greedoid", BH0]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["sets"] == [[], [3], [2, 3], [1, 2, 3]]

    def test_output_file(self, tmp_path):
        target = tmp_path / "sets.json"
        assert main(["greedoid", BH1, "-o", str(target)]) == 0
        assert len(json.loads(target.read_text())["sets"]) == 14


class TestScheduleAndMcs:
    def test_schedule(self, capsys):
        assert main(["schedule", BH1]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["order"][0] == 4
        assert sum(out["rho"][:3]) == 15

    def test_mcs(self, capsys):
        assert main(["mcs", BH1]) == 0
        assert capsys.readouterr().out.strip() == "3"


class TestRepresent:
    def test_verified_build(self, tmp_path, capsys):
        out = tmp_path / "matrix.json"
        code = main(["represent", BH1, "--field", "3", "--verify", "-o", str(out)])
        assert code == 0
        family = VectorFamily.from_json(json.loads(out.read_text()))
        assert enumerate_greedoid(family) == bhargava_greedoid(
            UltraTriple.from_json(load_fixture("bhargava1.json"))
        )

    def test_field_too_small(self, capsys):
        assert main(["represent", BH1, "--field", "2"]) == 1
        assert "field size 2 < mcs 3" in capsys.readouterr().err

    def test_extension_field_syntax(self, tmp_path):
        out = tmp_path / "matrix.json"
        assert main(["represent", BH1, "--field", "2^2", "-o", str(out)]) == 0
        obj = json.loads(out.read_text())
        assert obj["field"] == {"p": 2, "n": 2, "modulus": [1, 1, 1]}

    def test_explicit_modulus(self, tmp_path):
        out = tmp_path / "matrix.json"
        code = main(
            ["represent", BH1, "--field", "2^2", "--modulus", "1,1,1", "-o", str(out)]
        )
        assert code == 0

    def test_bundle_output(self, tmp_path):
        out = tmp_path / "matrix.json"
        bundle = tmp_path / "bundle.json"
        code = main(
            ["represent", BH0, "--field", "3", "-o", str(out), "--bundle", str(bundle)]
        )
        assert code == 0
        rep = Representation.from_json(json.loads(bundle.read_text()))
        assert rep.family == VectorFamily.from_json(json.loads(out.read_text()))

    def test_bad_field_syntax(self, capsys):
        assert main(["represent", BH1, "--field", "abc"]) == 1


class TestGegAndCheck:
    def test_geg_fixture(self, capsys):
        assert main(["geg", MATRIX2]) == 0
        out = json.loads(capsys.readouterr().out)
        assert len(out["sets"]) == 12

    def test_geg_accepts_bundle(self, tmp_path, capsys):
        bundle = tmp_path / "bundle.json"
        main(["represent", BH0, "--field", "3", "-o", str(tmp_path / "m.json"),
              "--bundle", str(bundle)])
        assert main(["geg", str(bundle)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["sets"] == [[], [3], [2, 3], [1, 2, 3]]

    def test_check_matching_pair(self, tmp_path, capsys):
        matrix = tmp_path / "matrix.json"
        main(["represent", BH1, "--field", "3", "-o", str(matrix)])
        assert main(["check", str(matrix), BH1]) == 0
        assert "equal" in capsys.readouterr().out

    def test_check_mismatch(self, tmp_path, capsys):
        matrix = tmp_path / "matrix.json"
        main(["represent", BH1, "--field", "3", "-o", str(matrix)])
        assert main(["check", str(matrix), BH0]) == 1


class TestFromNewick:
    def test_balanced_tree(self, tmp_path, capsys):
        tree = tmp_path / "tree.nwk"
        tree.write_text("((A:1,B:1):1,C:2);\n", encoding="utf-8")
        assert main(["from-newick", str(tree)]) == 0
        triple = UltraTriple.from_json(json.loads(capsys.readouterr().out))
        assert triple.d("A", "B") == 1
        assert triple.d("A", "C") == 2

    def test_clock_violation(self, tmp_path, capsys):
        tree = tmp_path / "tree.nwk"
        tree.write_text("((A:1,B:2):1,C:2);\n", encoding="utf-8")
        assert main(["from-newick", str(tree)]) == 1
        assert "equidistant" in capsys.readouterr().err


class TestConverseSearch:
    def test_found(self, tmp_path, capsys):
        target = write_json(
            tmp_path / "target.json",
            {"ground": [1, 2, 3], "sets": [[], [3], [2, 3], [1, 2, 3]]},
        )
        assert main(["converse-search", target, "--field", "2"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["found"] is True
        family = VectorFamily.from_json(out["matrix"])
        assert enumerate_greedoid(family) == SetSystem.from_json(
            json.loads(open(target).read())
        )

    def test_absent(self, tmp_path, capsys):
        ground = [1, 2, 3]
        all_sets = [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]]
        target = write_json(
            tmp_path / "target.json", {"ground": ground, "sets": all_sets}
        )
        assert main(["converse-search", target, "--field", "2"]) == 0
        assert json.loads(capsys.readouterr().out) == {"found": False}


class TestUsage:
    def test_no_command_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


def test_check_holds_on_random_triples(tmp_path):
    import random

    from conftest import available_order, random_ultrametric

    rng = random.Random(71)
    for i in range(5):
        t = random_ultrametric(rng, rng.randint(1, 6))
        triple_path = write_json(tmp_path / f"t{i}.json", t.to_json())
        matrix_path = tmp_path / f"m{i}.json"
        q = available_order(t.mcs())
        field_arg = "3^2" if q == 9 else str(q) if q not in (4, 8) else f"2^{q.bit_length() - 1}"
        assert main(["represent", triple_path, "--field", field_arg,
                     "-o", str(matrix_path)]) == 0
        assert main(["check", str(matrix_path), triple_path]) == 0


def test_round_trips_are_bit_exact(tmp_path):
    triple = UltraTriple.from_json(load_fixture("bhargava1.json"))
    rep = build_representation(triple, field_make(3))
    system = bhargava_greedoid(triple)
    for obj, parse in (
        (triple.to_json(), UltraTriple.from_json),
        (system.to_json(), SetSystem.from_json),
        (rep.family.to_json(), VectorFamily.from_json),
        (rep.to_json(), Representation.from_json),
    ):
        text = canonical_json(obj)
        again = canonical_json(parse(json.loads(text)).to_json())
        assert text == again
