import json

import pytest

from qdepth.cli import main
from qdepth.classical import ClassicalCircuit, ClassicalGate, to_json
from qdepth.ir import circuit_from_json, circuit_to_json
from qdepth.verify import build_construction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSynth:
    def test_empty_cat_circuit(self, tmp_path, capsys):
        out = tmp_path / "cat.json"
        code, text, _ = run_cli(capsys, "synth", "--construction", "cat",
                                "--n", "1", "--out", str(out))
        assert code == 0 and "depth=0" in text
        assert circuit_from_json(out.read_text()).depth == 0

    def test_modq_summary_reports_ancillae(self, tmp_path, capsys):
        out = tmp_path / "m.json"
        code, text, _ = run_cli(capsys, "synth", "--construction", "modq-const",
                                "--n", "4", "--q", "3", "--out", str(out))
        assert code == 0
        assert "ancillae=8" in text and "work=2" in text

    def test_round_trip_preserves_circuit_exactly(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        for args, kw in (
            (("modq-const",), {"n": 3, "q": 5}),
            (("parity-cat",), {"n": 4}),
            (("ctrl-u",), {"n": 2}),
        ):
            name = args[0]
            argv = ["synth", "--construction", name, "--n", str(kw["n"]),
                    "--out", str(out)]
            if "q" in kw:
                argv += ["--q", str(kw["q"])]
            assert main(argv) == 0
            capsys.readouterr()
            built = build_construction(name, **kw)
            assert circuit_from_json(out.read_text()) == built.circuit

    def test_unknown_construction_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["synth", "--construction", "nope", "--n", "2", "--out", "x"])
        assert exc.value.code == 2

    def test_missing_q_is_usage_error(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "synth", "--construction", "modq-const",
                               "--n", "4", "--out", str(tmp_path / "x.json"))
        assert code == 2 and "q" in err


class TestSim:
    def test_cat_plus_input(self, tmp_path, capsys):
        out = tmp_path / "cat.json"
        run_cli(capsys, "synth", "--construction", "cat", "--n", "4",
                "--builder", "log-cat", "--out", str(out))
        code, text, _ = run_cli(capsys, "sim", str(out), "--input", "plus@0")
        assert code == 0
        lines = text.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("0000 0.707106781")
        assert lines[1].startswith("1111 0.707106781")

    def test_empty_circuit_zero_input(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        run_cli(capsys, "synth", "--construction", "cat", "--n", "3",
                "--builder", "log-cat", "--out", str(out))
        # overwrite with an empty circuit of width 3
        built = build_construction("cat", n=1)
        out.write_text(circuit_to_json(built.circuit))
        code, text, _ = run_cli(capsys, "sim", str(out), "--input", "0")
        assert code == 0 and text.strip() == "0 1 0"

    def test_modq_flips_target_for_nonmultiple(self, tmp_path, capsys):
        out = tmp_path / "m.json"
        run_cli(capsys, "synth", "--construction", "modq-const", "--n", "3",
                "--q", "3", "--out", str(out))
        width = 3 + 1 + 2 + 6
        bits = "110" + "0" + "0" * (width - 4)  # qubit 0 first
        code, text, _ = run_cli(capsys, "sim", str(out), "--input", bits)
        assert code == 0
        index = text.split()[0]
        # two true inputs, 2 mod 3 != 0: target (qubit 3) reads 1
        assert index[::-1][3] == "1"
        assert index[::-1][:3] == "110"

    def test_width_mismatch_is_usage_error(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        run_cli(capsys, "synth", "--construction", "fanout", "--n", "2",
                "--out", str(out))
        code, _, err = run_cli(capsys, "sim", str(out), "--input", "01")
        assert code == 2 and "3 bits" in err

    def test_unparseable_file_is_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        code, _, _ = run_cli(capsys, "sim", str(bad), "--input", "0")
        assert code == 2


class TestVerify:
    def test_pass_exit_zero(self, capsys):
        code, text, _ = run_cli(capsys, "verify", "--construction",
                                "modq-const", "--n", "4", "--q", "3")
        assert code == 0 and "pass" in text

    def test_parity_cat_pipes_from_synth_parameters(self, capsys):
        code, text, _ = run_cli(capsys, "verify", "--construction",
                                "parity-cat", "--n", "5", "--builder", "fanout")
        assert code == 0 and "pass" in text

    def test_cap_exit_three_and_structural_fallback(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--construction", "modq-const",
                               "--n", "20", "--q", "3")
        assert code == 3 and "cap" in err
        code, text, _ = run_cli(capsys, "verify", "--construction", "modq-const",
                                "--n", "20", "--q", "3", "--structural-only")
        assert code == 0 and "structural" in text and "depth=12" in text

    def test_json_report(self, capsys):
        code, text, _ = run_cli(capsys, "verify", "--construction", "fanout",
                                "--n", "3", "--json")
        doc = json.loads(text)
        assert code == 0 and doc["pass"] is True and doc["depth"] == 1

    def test_rev_embed_from_file(self, tmp_path, capsys):
        c = ClassicalCircuit(2, (
            (ClassicalGate("and", (0, 1)), ClassicalGate("or", (0, 1))),
            (ClassicalGate("xor", (2, 3)),),
        ))
        path = tmp_path / "classical.json"
        path.write_text(to_json(c))
        code, text, _ = run_cli(capsys, "verify", "--construction", "rev-embed",
                                "--classical", str(path))
        assert code == 0 and "pass" in text and "depth=3" in text


class TestScaleAndIdentities:
    def test_constant_verdict(self, capsys):
        code, text, _ = run_cli(capsys, "scale", "--construction", "modq-const",
                                "--q", "3", "--n-min", "2", "--n-max", "12")
        assert code == 0 and text.strip().endswith("verdict: constant")

    def test_cat_depth_column(self, capsys):
        code, text, _ = run_cli(capsys, "scale", "--construction", "cat",
                                "--builder", "log-cat",
                                "--n-min", "2", "--n-max", "16")
        assert code == 0
        depths = [int(line.split("\t")[1])
                  for line in text.strip().splitlines()[1:-1]]
        assert depths == [1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4]
        assert text.strip().endswith("verdict: logarithmic")

    def test_bad_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["scale", "--construction", "cat", "--n-min", "5",
                  "--n-max", "2"])
        assert exc.value.code == 2

    def test_identities_pass(self, capsys):
        code, text, _ = run_cli(capsys, "identities")
        lines = text.strip().splitlines()
        assert code == 0 and len(lines) == 2
        assert all("pass" in line for line in lines)

    def test_identities_json(self, capsys):
        code, text, _ = run_cli(capsys, "identities", "--json")
        doc = json.loads(text)
        assert code == 0 and len(doc) == 2 and all(d["pass"] for d in doc)
