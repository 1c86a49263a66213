import json
from pathlib import Path

from torrigid.cli import main

FANS = Path(__file__).resolve().parent.parent / "fans"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestT1Command:
    def test_square_cone_json(self, capsys):
        code, out, _ = run(capsys, "t1", FANS / "square_cone.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["total"] == 1
        assert report["der_dimension"] == 0
        assert report["homq_dimension"] == 1
        assert report["completeness"] == "guaranteed"

    def test_a1(self, capsys):
        code, out, _ = run(
            capsys, "t1", FANS / "a1_cone.json", "--bound", "3", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["mode"] == "simplicial"
        assert report["total"] == 1

    def test_polygon(self, capsys):
        code, out, _ = run(
            capsys, "t1", FANS / "hexagon_polygon.json", "--polygon", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["total"] == 3

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{ rays: oops")
        code, _, err = run(capsys, "t1", bad)
        assert code == 1
        assert "line" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "t1", "no-such-file.json")
        assert code == 1

    def test_multi_cone_rejected(self, capsys):
        code, _, err = run(capsys, "t1", FANS / "p2.json")
        assert code == 1
        assert "one maximal cone" in err

    def test_env_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("TORRIGID_BOUND", "3")
        code, out, _ = run(capsys, "t1", FANS / "a1_cone.json", "--format", "json")
        assert code == 0
        assert json.loads(out)["bound"] == 3


class TestRigidityCommand:
    def test_third_cone_rigid(self, capsys):
        code, out, _ = run(
            capsys, "rigidity", FANS / "third_cone.json", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        verdicts = {c["criterion"]: c["verdict"] for c in report["certificates"]}
        assert verdicts["qgorenstein"] == "rigid"
        assert verdicts["quotient"] == "rigid"

    def test_wps_not_rigid(self, capsys):
        code, out, _ = run(capsys, "rigidity", "--wps", "1,1,2,2", "--format", "json")
        assert code == 3
        report = json.loads(out)
        assert report["certificates"][0]["verdict"] == "condition_not_satisfied"

    def test_wps_rigid(self, capsys):
        code, out, _ = run(capsys, "rigidity", "--wps", "1,1,2,3", "--format", "json")
        assert code == 0

    def test_fano(self, capsys):
        code, out, _ = run(
            capsys, "rigidity", FANS / "p2.json", "--criterion", "fano", "--format", "json"
        )
        assert code == 0

    def test_square_cone_not_certified(self, capsys):
        code, out, _ = run(capsys, "rigidity", FANS / "square_cone.json", "--format", "json")
        assert code == 3

    def test_requires_one_input(self, capsys):
        code, _, err = run(capsys, "rigidity")
        assert code == 1


class TestLocalcohCommand:
    def test_square_top_with_oracle(self, capsys):
        code, out, _ = run(
            capsys,
            "localcoh",
            FANS / "square_faces.json",
            "--i", "3",
            "--p=-1,-1,-1,-1",
            "--oracle",
            "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["dimension"] == 1
        assert report["cech_dimension"] == 1
        assert report["oracle_agrees"] is True

    def test_h2_components(self, capsys):
        code, out, _ = run(
            capsys,
            "localcoh",
            FANS / "square_faces.json",
            "--i", "2",
            "--p=-1,0,-1,0",
            "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["dimension"] == 1
        assert report["gamma_components"] == [[1], [3]]
        assert report["h2_via_graph"] == 1

    def test_wrong_length(self, capsys):
        code, _, err = run(
            capsys, "localcoh", FANS / "square_faces.json", "--i", "2", "--p=-1,0"
        )
        assert code == 1


class TestCyCommand:
    def test_quintic(self, capsys):
        code, out, _ = run(
            capsys, "cy", FANS / "p4.json", FANS / "fermat_quintic.json", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["dimension"] == 101
        assert report["monomial_count"] == 126

    def test_k3_gate(self, capsys):
        code, out, _ = run(
            capsys, "cy", FANS / "p3.json", FANS / "fermat_quartic.json", "--format", "json"
        )
        assert code == 2
        report = json.loads(out)
        failed = [h["name"] for h in report["hypotheses"] if h["status"] == "failed"]
        assert "dim_at_least_4" in failed

    def test_degree_mismatch(self, capsys):
        code, out, _ = run(
            capsys, "cy", FANS / "p4.json", FANS / "degree4_on_p4.json", "--format", "json"
        )
        assert code == 2
        report = json.loads(out)
        bad = [h for h in report["hypotheses"] if h["name"] == "degree_anticanonical"]
        assert bad[0]["status"] == "failed"
        assert "4, 0, 0, 0, 0" in bad[0]["detail"]


class TestCheckFan:
    def test_p2(self, capsys):
        code, out, _ = run(capsys, "check-fan", FANS / "p2.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["complete"] is True
        assert report["fano"] is True
        assert report["class_group"]["free_rank"] == 1

    def test_warning_on_nonprimitive(self, tmp_path, capsys):
        f = tmp_path / "fan.json"
        f.write_text(json.dumps({"rays": [[2, 0], [0, 1]], "max_cones": [[0, 1]]}))
        code, out, _ = run(capsys, "check-fan", f, "--format", "json")
        assert code == 0
        assert json.loads(out)["warnings"]


class TestReportContract:
    def test_byte_identical_runs(self, capsys):
        _, out1, _ = run(capsys, "t1", FANS / "square_cone.json", "--format", "json")
        _, out2, _ = run(capsys, "t1", FANS / "square_cone.json", "--format", "json")
        assert out1.encode() == out2.encode()

    def test_round_trip(self, capsys):
        _, out, _ = run(capsys, "cy", FANS / "p4.json", FANS / "fermat_quintic.json", "--format", "json")
        report = json.loads(out)
        assert json.dumps(report, sort_keys=True, indent=2) + "\n" == out

    def test_text_format_runs(self, capsys):
        code, out, _ = run(capsys, "t1", FANS / "square_cone.json")
        assert code == 0
        assert "total: 1" in out
