import json
import subprocess
import sys

import pytest

from dioidpart.cli import RunConfig, UsageError, main

Z5 = '{"type": "cyclic", "n": 5}'
Z6 = '{"type": "cyclic", "n": 6}'
Z7 = '{"type": "cyclic", "n": 7}'
S3 = '{"type": "symmetric", "n": 3}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, (json.loads(out) if out.strip() else None), err


class TestVerify:
    def test_d_partition(self, capsys):
        code, out, _ = run_json(capsys, "verify", "--group", Z5, "--partition", "[[0],[1,4],[2,3]]")
        assert code == 0 and out["schema"] == "1"
        assert out["report"]["ok"] is True
        sc = out["structure_constants"]
        assert sc["h"] == 3 and sc["pairing"] == [0, 1, 2]
        assert [sc["d"][1][1][k] for k in range(3)] == [1, 0, 1]

    def test_closure_failure(self, capsys):
        code, out, _ = run_json(capsys, "verify", "--group", Z5, "--partition", "[[0],[1],[2,3,4]]")
        assert code == 1 and out["report"]["ok"] is False
        assert "structure_constants" not in out

    def test_malformed_json(self, capsys):
        code, out, err = run(capsys, "verify", "--group", Z5, "--partition", "[[0],[1")
        assert code == 2 and "not valid JSON" in err and out == ""

    def test_not_a_partition(self, capsys):
        code, _, err = run(capsys, "verify", "--group", Z5, "--partition", "[[0],[1,4]]")
        assert code == 2 and "not covered" in err

    def test_bad_group(self, capsys):
        code, _, err = run(capsys, "verify", "--group", '{"type": "klein"}', "--partition", "whole")
        assert code == 2 and "unknown group type" in err

    def test_named_partition_text_output(self, capsys):
        code, out, _ = run(capsys, "verify", "--group", S3, "--partition", "conjugacy")
        assert code == 0
        assert "partition: [[0], [1, 2, 5], [3, 4]]" in out
        assert "schema" not in out


class TestConstruct:
    def test_orbit(self, capsys):
        code, out, _ = run_json(capsys, "construct", "orbit-coarsen", "--group", Z7,
                                "--partition", "singleton", "--units", "[1,2,4]")
        assert code == 0 and out["result"]["parts"] == [[0], [1, 2, 4], [3, 5, 6]]
        assert out["report"]["ok"]

    def test_complement(self, capsys):
        code, out, _ = run_json(capsys, "construct", "complement-coarsen", "--group", Z6,
                                "--partition", "singleton", "--subgroup", "[0,3]")
        assert code == 0 and out["result"]["parts"] == [[0], [1, 2, 4, 5], [3]]

    def test_residual_blocks(self, capsys):
        code, out, err = run(capsys, "construct", "coarsen-identity", "--group", Z6,
                             "--partition", "singleton", "--subgroup", "[0,3]")
        assert code == 1 and out == "" and "neither inside the subgroup" in err

    def test_spec_object(self, capsys):
        spec = {"construction": "lift-quotient", "group": {"type": "cyclic", "n": 6},
                "normal": [0, 3], "partition": "singleton"}
        code, out, _ = run_json(capsys, "construct", "--spec", json.dumps(spec))
        assert code == 0 and out["result"]["parts"] == [[0, 3], [1, 4], [2, 5]]

    def test_supplement(self, capsys):
        code, out, _ = run_json(capsys, "construct", "supplement", "--group", S3,
                                "--normal", "[0,3,4]", "--subgroup", "[0,1]")
        assert code == 0
        assert out["on_normal"] == [[0], [3, 4]]
        assert out["result"]["parts"] == [[0, 1], [2, 3, 4, 5]]
        assert out["bijection"] == [0, 1]

    def test_refine_and_double_coset(self, capsys):
        code, out, _ = run_json(capsys, "construct", "refine-identity", "--group", Z6,
                                "--partition", "[[0,3],[1,4],[2,5]]")
        assert code == 0 and out["result"]["parts"] == [[0], [1, 4], [2, 5], [3]]
        code, out, _ = run_json(capsys, "construct", "double-coset-coarsen", "--group", Z6,
                                "--partition", "singleton", "--subgroup", "[0,2,4]")
        assert code == 0 and out["on_subgroup"] == [[0], [2], [4]]
        assert out["result"]["parts"] == [[0, 2, 4], [1, 3, 5]]

    def test_missing_argument(self, capsys):
        code, _, err = run(capsys, "construct", "complement-coarsen", "--group", Z6, "--partition", "singleton")
        assert code == 2 and "--subgroup" in err

    def test_input_not_d_partition(self, capsys):
        code, out, _ = run_json(capsys, "construct", "complement-coarsen", "--group", Z5,
                                "--partition", "[[0],[1],[2,3,4]]", "--subgroup", "[0]")
        assert code == 1 and out["report"]["closure_ok"] is False

    def test_not_normal(self, capsys):
        code, _, err = run(capsys, "construct", "lift-quotient", "--group", S3,
                           "--normal", "[0,1]", "--partition", "singleton")
        assert code == 1 and "not normal" in err


class TestEnumerate:
    def test_z3(self, capsys):
        code, out, _ = run_json(capsys, "enumerate", "--group", '{"type": "cyclic", "n": 3}')
        assert code == 0 and out["count"] == 3
        code, out, _ = run_json(capsys, "enumerate", "--group", '{"type": "cyclic", "n": 3}', "--exclude-whole")
        assert out["partitions"] == [[[0], [1], [2]], [[0], [1, 2]]]

    def test_parts_filter(self, capsys):
        code, out, _ = run_json(capsys, "enumerate", "--group", Z5, "--parts", "3")
        assert out["partitions"] == [[[0], [1, 4], [2, 3]]]

    def test_cap(self, capsys):
        code, _, err = run(capsys, "enumerate", "--group", '{"type": "cyclic", "n": 13}')
        assert code == 1 and "cap" in err


class TestCensus:
    def test_p7(self, capsys):
        code, out, _ = run_json(capsys, "census", "--p", "7")
        assert code == 0
        assert out["T5"] == 1 and out["eq3_formula"] == 1 and out["eq3_enumerated"] == 1 and out["match"]

    def test_p5(self, capsys):
        code, out, _ = run_json(capsys, "census", "--p", "5")
        assert code == 0 and out["T2"] == 1 and not any(k in out for k in ("T1", "T3", "T4", "T5"))

    def test_not_prime(self, capsys):
        code, _, err = run(capsys, "census", "--p", "9")
        assert code == 2 and "not prime" in err

    def test_budget(self, capsys):
        code, _, err = run(capsys, "census", "--p", "13", "--cap", "11")
        assert code == 1 and "budget" in err

    def test_full(self, capsys):
        code, out, _ = run_json(capsys, "census", "--p", "11", "--full")
        assert len(out["partitions"]) == 16 and out["partitions"][0]["tag"].startswith("T")

    def test_workers_byte_identical(self, capsys):
        _, one, _ = run(capsys, "census", "--p", "17", "--json", "--full")
        _, two, _ = run(capsys, "census", "--p", "17", "--json", "--full", "--workers", "2")
        assert one == two


class TestOther:
    def test_gordon(self, capsys):
        code, out, _ = run_json(capsys, "gordon", "--p", "7")
        assert code == 0 and out["count"] == 4 and out["match"]

    def test_gordon_cap(self, capsys):
        code, _, _ = run(capsys, "gordon", "--p", "13")
        assert code == 1

    def test_dfield(self, capsys):
        code, out, _ = run_json(capsys, "dfield", "--n", "2")
        assert code == 0 and out["count"] == 1
        assert out["tables"][0]["add"] == [[0, 1], [1, 1]]
        code, out, _ = run_json(capsys, "dfield", "--n", "3", "--idempotent")
        assert out["count"] == 0

    def test_iso(self, capsys):
        code, out, _ = run_json(capsys, "iso", "--group", '{"type": "cyclic", "n": 2}', "--partition", "singleton",
                                "--group2", '{"type": "cyclic", "n": 3}', "--partition2", "singleton")
        assert code == 1 and out["isomorphic"] is False
        code, out, _ = run_json(capsys, "iso", "--group", '{"type": "cyclic", "n": 2}', "--partition", "singleton",
                                "--group2", Z6, "--partition2", "[[0,2,4],[1,3,5]]")
        assert code == 0 and out["isomorphic"] is True

    def test_no_subcommand(self, capsys):
        assert main([]) == 2

    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "census" in capsys.readouterr().out

    def test_bad_config(self):
        with pytest.raises(UsageError):
            RunConfig(workers=0)

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "enumerate", "--group", S3, "--json")
        _, b, _ = run(capsys, "enumerate", "--group", S3, "--json")
        assert a == b

    def test_console_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "dioidpart.cli", "verify", "--group", Z5,
                               "--partition", "[[0],[1,4],[2,3]]", "--json"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0 and json.loads(proc.stdout)["report"]["ok"]
