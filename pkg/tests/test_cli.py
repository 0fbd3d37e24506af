import io
from contextlib import redirect_stdout

import pytest

from mdyck.cli import main


def run(argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


def test_dims_table():
    code, out = run(["dims", "--m", "2", "--max-n", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].split() == ["3", "12", "12", "12", "MATCH"]
    assert all("MISMATCH" not in line for line in lines)


def test_dims_catalan_column():
    code, out = run(["dims", "--m", "1", "--max-n", "4"])
    assert code == 0
    counts = [line.split()[1] for line in out.splitlines()[1:]]
    assert counts == ["1", "2", "5", "14"]


def test_dims_rejects_m_zero():
    code, _ = run(["dims", "--m", "0", "--max-n", "3"])
    assert code == 2


def test_mul_paths_matches_printed_expansion():
    code, out = run(["mul", "--model", "paths", "--m", "2", "--i", "0", "1,3", "0,2,4,2"])
    assert code == 0
    assert out == (
        "+1*[1,0,0,2,7,2] +1*[1,1,0,2,6,2] +1*[1,2,0,2,5,2] +1*[1,3,0,2,4,2]\n"
    )


def test_mul_trees():
    code, out = run(["mul", "--model", "trees", "--m", "1", "--i", "1", "(1 | |)", "|"])
    assert code == 0
    assert out == "+1*[(1 | (0 | |))] +1*[(1 | (1 | |))]\n"


def test_mul_ordm():
    code, out = run(
        ["mul", "--model", "ordm", "--m", "2", "--i", "1", "(| |);(| |)", "(| |);(| |)"]
    )
    assert code == 0
    assert out == "+1*[((| |) |);(| (| |))]\n"


def test_mul_parse_error():
    code, _ = run(["mul", "--model", "paths", "--m", "2", "--i", "0", "3,1", "2"])
    assert code == 2
    code, _ = run(["mul", "--model", "trees", "--m", "1", "--i", "5", "|", "|"])
    assert code == 2


def test_hasse():
    code, out = run(["hasse", "--m", "2", "--n", "1"])
    assert code == 0
    assert '"2"' in out and "->" not in out
    code, out = run(["hasse", "--m", "2", "--n", "2"])
    assert code == 0
    assert out.count("->") == 2
    code, again = run(["hasse", "--m", "2", "--n", "2"])
    assert again == out  # byte-stable
    code, out = run(["hasse", "--m", "1", "--n", "3"])
    assert out.count("->") == 5


def test_hasse_cap():
    code, _ = run(["hasse", "--m", "2", "--n", "6", "--cap", "100"])
    assert code == 2


def test_verify_negative():
    code, out = run(["verify", "--suite", "negative", "--m", "1"])
    assert code == 0
    assert "ok" in out


def test_verify_axioms_small():
    code, out = run(["verify", "--suite", "axioms", "--m", "1", "--max-degree", "4"])
    assert code == 0


def test_verify_series():
    code, out = run(["verify", "--suite", "series", "--max-m", "3", "--order", "8"])
    assert code == 0


def test_verify_poset_file(tmp_path):
    content = "\n".join(
        [
            "degree 1",
            "elem e",
            "degree 2",
            "elem a",
            "elem b",
            "elem c",
            "cover a b",
            "cover b c",
            "prod / e e -> a",
            "prod bot e e -> a",
            "prod top e e -> b",
            "prod \\ e e -> c",
        ]
    )
    path = tmp_path / "family.poset"
    path.write_text(content, encoding="utf-8")
    code, out = run(
        ["verify", "--suite", "poset", "--file", str(path), "--max-degree", "2"]
    )
    assert code == 0


def test_verify_unknown_suite_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_byte_stability_of_mul():
    args = ["mul", "--model", "paths", "--m", "2", "--i", "1", "2,2", "1,3"]
    assert run(args) == run(args)
