import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclolrs import cli
from cyclolrs.cli import (
    PolySyntaxError,
    format_poly,
    main,
    parse_poly,
    poly_from_arg,
    read_poly_file,
)


# ----------------------------------------------------------------- parsing


def test_parse_poly_pinned():
    assert parse_poly("x^4+2*x^2+4*x+2") == [2, 4, 2, 0, 1]
    assert parse_poly("(x^2+x+1)*(x^2-x+1)") == [1, 0, 1, 0, 1]
    assert parse_poly("0") == []  # canonical zero polynomial


def test_parse_poly_precedence():
    # ^ before unary minus before * before +
    assert parse_poly("-x^2") == [0, 0, -1]
    assert parse_poly("3*-x") == [0, -3]
    assert parse_poly("2*x+1*x^2") == [0, 2, 1]
    assert parse_poly("-(x+1)^2") == [-1, -2, -1]


def test_parse_poly_whitespace_and_constants():
    assert parse_poly("  x ^ 3 - 7 ") == [-7, 0, 0, 1]
    assert parse_poly("(2)*(3)") == [6]
    assert parse_poly("x^0") == [1]


def test_parse_poly_syntax_errors_carry_position():
    with pytest.raises(PolySyntaxError) as e:
        parse_poly("x^-2")
    assert "column 3" in str(e.value)
    with pytest.raises(PolySyntaxError):
        parse_poly("x+")
    with pytest.raises(PolySyntaxError):
        parse_poly("x y")
    with pytest.raises(PolySyntaxError):
        parse_poly("(x+1")
    with pytest.raises(PolySyntaxError):
        parse_poly("x$1")


def test_format_poly_pinned():
    assert format_poly([2, 4, 2, 0, 1]) == "x^4+2*x^2+4*x+2"
    assert format_poly([-2, 0, 1]) == "x^2-2"
    assert format_poly([0, -1]) == "-x"
    assert format_poly([0]) == "0"
    assert format_poly([5]) == "5"
    assert format_poly([1, 1]) == "x+1"


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(-999, 999), min_size=1, max_size=9))
def test_format_parse_round_trip(coeffs):
    f = cli.P.canonical(coeffs)
    assert parse_poly(format_poly(f)) == f


def test_inline_coefficient_lists():
    assert poly_from_arg("2,4,2,0,1") == [2, 4, 2, 0, 1]
    assert poly_from_arg("2 4 2 0 1") == [2, 4, 2, 0, 1]
    assert poly_from_arg("-7, 0, 1") == [-7, 0, 1]


def test_poly_files(tmp_path):
    p = tmp_path / "coeffs.txt"
    p.write_text("# a quartic\n2 4 2 0 1\n")
    assert read_poly_file(p) == [2, 4, 2, 0, 1]
    q = tmp_path / "expr.txt"
    q.write_text("(x^2+x+1)*(x^2-x+1)  # product form\n")
    assert read_poly_file(q) == [1, 0, 1, 0, 1]
    bad = tmp_path / "two.txt"
    bad.write_text("x+1\nx+2\n")
    with pytest.raises(ValueError):
        read_poly_file(bad)
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n")
    with pytest.raises(ValueError):
        read_poly_file(empty)


# -------------------------------------------------------------- subcommands


def run_json(capsys, argv):
    code = main(["--format", "json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_index_identifies_cyclotomic(capsys):
    code, doc, _ = run_json(capsys, ["index", "x^6+x^3+1"])
    assert code == 0
    assert doc["result"]["cyclotomic"] is True
    assert doc["result"]["index"] == 9
    assert doc["input_degree"] == 6
    assert doc["command"] == "index"


def test_index_negative_is_exit_zero(capsys):
    code, doc, _ = run_json(capsys, ["index", "x^2+x+2"])
    assert code == 0
    assert doc["result"]["cyclotomic"] is False
    assert doc["result"]["index"] is None


def test_index_eval_method(capsys):
    code, doc, _ = run_json(capsys, ["index", "x^6+x^3+1", "--method", "eval"])
    assert code == 0
    assert doc["result"]["index"] == 9
    assert doc["result"]["method"] == "eval"


def test_index_no_verify_reports_candidate(capsys):
    code, doc, _ = run_json(capsys, ["index", "x^6+x^3+1", "--no-verify"])
    assert code == 0
    assert doc["result"]["outcome"] == "candidate_unverified"
    assert doc["result"]["index"] == 9


def test_lrs_verified_orders(capsys):
    code, doc, _ = run_json(capsys, ["lrs", "x^4+2*x^2+4*x+2", "--verify"])
    assert code == 0
    assert doc["result"]["orders"] == [{"k": 8, "status": "verified"}]
    assert doc["seed"] == 0
    assert doc["timings_ms"] is None
    assert isinstance(doc["preprocessing_log"], list)


def test_lrs_modes_and_flags(capsys):
    code, doc, _ = run_json(
        capsys,
        ["lrs", "(x^2+x+1)*(x^4+x^3+x^2+x+1)", "--verify", "--mode", "first"],
    )
    assert code == 0
    assert doc["result"]["orders"] == [{"k": 3, "status": "verified"}]
    assert doc["result"]["mode"] == "first_order"


def test_lrs_threads_match_sequential(capsys):
    argv = ["lrs", "3*x^0+6*x^3+6*x^4+3*x^5+x^6", "--verify", "--seed", "11"]
    _, solo, _ = run_json(capsys, argv)
    _, pooled, _ = run_json(capsys, argv + ["--threads", "2"])
    assert solo["result"] == pooled["result"]


def test_lrs_conjecture_bound_flag(capsys):
    code, doc, _ = run_json(
        capsys,
        ["lrs", "(x^2+x+1)*(x^4+x^3+x^2+x+1)", "--verify", "--conjecture-bound"],
    )
    assert code == 0
    ks = [o["k"] for o in doc["result"]["orders"] if o["status"] == "verified"]
    assert ks == [3, 5]
    assert doc["result"]["conjecture_bound_used"] is True


def test_factors_ground_truth(capsys):
    code, doc, _ = run_json(
        capsys, ["factors", "(x^2+x+1)*(x^2-x+1)", "--verify", "--seed", "4"]
    )
    assert code == 0
    kept = [int(k) for k, ok in doc["result"]["verified"].items() if ok]
    assert kept == [3, 6]


def test_factors_without_verify_leaves_candidates(capsys):
    code, doc, _ = run_json(capsys, ["factors", "x^2+x+1", "--seed", "4"])
    assert code == 0
    assert doc["result"]["verified"] is None
    assert 3 in doc["result"]["candidates"]


def test_text_output_lrs(capsys):
    code = main(["lrs", "x^4+2*x^2+4*x+2", "--verify"])
    assert code == 0
    assert "order 8: verified" in capsys.readouterr().out


def test_timings_flag_fills_field(capsys):
    _, doc, _ = run_json(capsys, ["--timings", "lrs", "x^2+3*x+3", "--verify"])
    assert doc["timings_ms"] is not None and doc["timings_ms"]["total"] >= 0


def test_json_output_is_byte_identical(capsys):
    argv = ["--format", "json", "lrs", "x^6+3*x^5+6*x^4+6*x^3+3", "--verify", "--seed", "7"]
    code = main(argv)
    first = capsys.readouterr().out
    assert code == 0
    main(argv)
    assert capsys.readouterr().out == first


def test_bench_factors_reports_no_misses(capsys):
    code, doc, _ = run_json(capsys, ["bench", "factors", "--seed", "6"])
    assert code == 0
    rows = doc["result"]["cases"]
    assert len(rows) == 3
    assert all(r["missed"] == 0 for r in rows)
    assert all(r["ms"] >= 0 and r["degree"] > 0 for r in rows)


def test_bench_rejects_unknown_scenario():
    with pytest.raises(SystemExit) as e:
        main(["bench", "everything"])
    assert e.value.code == 2


# -------------------------------------------------------------- bad input


def test_parse_error_exits_two(capsys):
    assert main(["index", "x^^2"]) == 2
    assert "error" in capsys.readouterr().err


def test_zero_polynomial_rejected_downstream(capsys):
    assert main(["index", "0"]) == 2
    assert main(["lrs", "0"]) == 2
    capsys.readouterr()


def test_missing_file_exits_two(capsys):
    assert main(["factors", "@/no/such/file.txt"]) == 2
    assert "error" in capsys.readouterr().err


def test_bfile_flows_into_prefix_method(tmp_path, capsys):
    b = tmp_path / "heights.txt"
    b.write_text("# prefix height maxima\n1 1\n2 1\n3 2\n4 3\n")
    code, doc, _ = run_json(
        capsys, ["--bfile", str(b), "index", "x^6+x^3+1"]
    )
    assert code == 0 and doc["result"]["index"] == 9


def test_malformed_bfile_exits_two(tmp_path, capsys):
    b = tmp_path / "bad.txt"
    b.write_text("3 1\n2 1\n")
    assert main(["--bfile", str(b), "index", "x^2+1"]) == 2
    assert "increasing" in capsys.readouterr().err
