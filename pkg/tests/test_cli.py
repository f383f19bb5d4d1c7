import json

from psu4designs import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_sieve_line8_small(capsys):
    code, out = run(capsys, "sieve", "--line", "8", "--pmax", "2", "--amax", "1")
    assert code == 0
    assert "line  8 q=2" in out
    assert "survivor" in out
    assert "(36, 15, 6)" in out


def test_sieve_line6_unresolved(capsys):
    code, out = run(capsys, "sieve", "--line", "6", "--pmax", "5", "--amax", "2")
    assert code == 0
    assert "(41600,2448,144) [unresolved]" in out


def test_sieve_json_deterministic(tmp_path, capsys):
    paths = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code, _ = run(
            capsys, "sieve", "--line", "all", "--pmax", "3", "--amax", "1",
            "--json", str(path), "--no-timestamp",
        )
        assert code == 0
        paths.append(path)
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1]
    payload = json.loads(blobs[0])
    assert payload["version"] == cli.__version__
    assert "timestamp" not in payload
    assert payload["command"] == "sieve --line all --pmax 3 --amax 1"
    lines_qs = [(oc["line"], oc["q"]) for oc in payload["outcomes"]]
    assert lines_qs == sorted(lines_qs)
    survivor = next(oc for oc in payload["outcomes"] if oc["line"] == 8 and oc["q"] == 2)
    assert survivor["status"] == "survivor"
    assert survivor["candidates"][0]["k"] == 15
    assert survivor["candidates"][0]["lambda"] == 6
    eliminated = next(oc for oc in payload["outcomes"] if oc["line"] == 2 and oc["q"] == 2)
    assert eliminated["reason"]


def test_sieve_json_has_timestamp(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _ = run(capsys, "sieve", "--line", "8", "--pmax", "2", "--amax", "1",
                  "--json", str(path))
    assert code == 0
    assert "timestamp" in json.loads(path.read_text())


def test_sieve_bad_range(capsys):
    code, out = run(capsys, "sieve", "--line", "all", "--pmax", "1", "--amax", "1")
    assert code == 2


def test_tables_all_match(capsys):
    for table in ("3", "4", "6", "7", "8", "9"):
        code, out = run(capsys, "tables", "--table", table)
        assert code == 0, table
        assert f"table {table}: MATCH" in out


def test_tables_9_reports_divergence(capsys):
    code, out = run(capsys, "tables", "--table", "9")
    assert code == 0
    assert "line 14: q in [3, 5]  reported, not compared (DIVERGES from golden [])" in out
    assert "line 13: q in []  reported, not compared (matches golden)" in out


def test_tables_unknown_id_usage_error(capsys):
    assert cli.main(["tables", "--table", "5"]) == 2


def test_construct_and_verify(tmp_path, capsys):
    path = tmp_path / "pg33c.des"
    code, out = run(capsys, "construct", "pg33", "--complement", "--out", str(path))
    assert code == 0
    assert "(40,27,18)" in out
    code, out = run(capsys, "verify", str(path))
    assert code == 0
    assert "symmetric design (40,27,18)" in out


def test_construct_io_failure(capsys):
    code, out = run(capsys, "construct", "menon36", "--out", "/nonexistent-dir/x.des")
    assert code == 3


def test_verify_violation_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.des"
    # parseable file that is not a symmetric design
    path.write_text("4 4\n0 1\n2 3\n0 2\n1 3\n")
    code, out = run(capsys, "verify", str(path))
    assert code == 1
    assert "not a symmetric design" in out


def test_verify_parse_error_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.des"
    path.write_text("3 1\n0 zero\n")
    code, out = run(capsys, "verify", str(path))
    assert code == 2
    assert "line 2" in out


def test_iso_two_40_27_18_files(tmp_path, capsys):
    p1 = tmp_path / "a.des"
    p2 = tmp_path / "b.des"
    run(capsys, "construct", "pg33", "--complement", "--out", str(p1))
    run(capsys, "construct", "higman40", "--complement", "--out", str(p2))
    code, out = run(capsys, "iso", str(p1), str(p2))
    assert code == 0
    assert out.strip().endswith("no")
    code, out = run(capsys, "iso", str(p1), str(p1))
    assert code == 0
    assert "yes" in out
    assert "witness:" in out


def test_group_checks(capsys):
    code, out = run(capsys, "group", "--design", "minus45", "--check", "flagtrans")
    assert (code, out.strip()) == (0, "yes")
    code, out = run(capsys, "group", "--design", "minus45", "--check", "order")
    assert code == 0
    assert "order 51840 (PSU4(2):2)" in out
    code, out = run(capsys, "group", "--design", "higman40", "--complement", "--check", "flagtrans")
    assert (code, out.strip()) == (0, "yes")
    code, out = run(capsys, "group", "--design", "higman40", "--check", "flagtrans")
    assert (code, out.strip()) == (0, "no")
    code, out = run(capsys, "group", "--design", "menon36", "--check", "rank")
    assert code == 0
    assert "rank 3" in out
    code, out = run(capsys, "group", "--design", "menon36", "--check", "primitive")
    assert (code, out.strip()) == (0, "yes")


def test_usage_errors(capsys):
    assert cli.main(["sieve", "--line", "17", "--pmax", "2", "--amax", "1"]) == 2
    assert cli.main(["nonsense"]) == 2
    assert cli.main(["construct", "unknown-kind"]) == 2


def test_stdout_byte_identical_across_runs(capsys):
    outputs = []
    for _ in range(2):
        code, out = run(capsys, "tables", "--table", "9")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
    outputs = []
    for _ in range(2):
        code, out = run(capsys, "sieve", "--line", "all", "--pmax", "3", "--amax", "1")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
