import argparse
from fractions import Fraction

import pandas as pd
import pytest
from sympy import nextprime

from cli import main, parse_filter, parse_limit, parse_rational
from datamodules.split_filters import FieldTag


def test_trace(capsys):
    assert main(["trace", "--family", "c1", "--c", "1", "--p", "7"]) == 0
    p, t, a1 = capsys.readouterr().out.strip().split(",")
    assert (p, t) == ("7", "0")
    assert float(a1) == 0.0


def test_trace_zero_class(capsys):
    assert main(["trace", "--family", "c2", "--c", "1", "--p", "11"]) == 0
    assert capsys.readouterr().out.split(",")[1] == "0"


def test_trace_large_prime(capsys):
    assert main(["trace", "--family", "c2", "--c", "2", "--p", "1000003", "--strategy", "cipolla"]) == 0
    p, t, a1 = capsys.readouterr().out.strip().split(",")
    assert p == "1000003"
    assert int(t) ** 2 <= 36 * 1000003
    assert float(a1) == pytest.approx(-int(t) / 1000003**0.5)


def test_trace_beyond_sieve_ceiling(capsys):
    p = nextprime(2**50)
    assert main(["trace", "--family", "c1", "--c", "1", "--p", str(p)]) == 0
    out_p, t, _ = capsys.readouterr().out.strip().split(",")
    assert out_p == str(p)
    assert int(t) ** 2 <= 36 * p


@pytest.mark.parametrize(
    "argv",
    [
        ["trace", "--family", "c1", "--c", "1", "--p", "9"],
        ["trace", "--family", "c1", "--c", "1", "--p", str(nextprime(2**62))],
        ["trace", "--family", "c2", "--c", "1", "--p", "3"],
        ["trace", "--family", "c1", "--c", "7", "--p", "7"],
        ["st-moments", "--group", "USp6"],
        ["components", "--group", "nope"],
        ["endotype", "--subgroup", "(rs"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_scan_writes_outputs(tmp_path, capsys):
    stem = tmp_path / "c2_small"
    argv = ["scan", "--family", "c2", "--c", "2", "--limit", "2^12", "--threads", "1", "--no-log", "--quiet", "--output", str(stem)]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert out.startswith("scan results: count:")
    moments = pd.read_csv(tmp_path / "c2_small.moments.csv")
    assert moments["n"].tolist() == list(range(1, 11))
    assert (tmp_path / "c2_small.hist.csv").exists()


def test_scan_progress_follows_quiet_flag(tmp_path, capsys):
    argv = ["scan", "--family", "c1", "--c", "1", "--limit", "2000", "--chunk-size", "500", "--threads", "1", "--no-log"]
    assert main(argv + ["--output", str(tmp_path / "loud")]) == 0
    captured = capsys.readouterr()
    assert "100%" in captured.err
    assert captured.out.count("scan results:") == 1

    assert main(argv + ["--quiet", "--output", str(tmp_path / "quiet")]) == 0
    assert "100%" not in capsys.readouterr().err


def test_scan_unknown_filter(tmp_path, capsys):
    argv = ["scan", "--family", "c1", "--c", "1", "--limit", "100", "--filter", "qi-sqrt7", "--no-log", "--output", str(tmp_path / "x")]
    assert main(argv) == 2
    assert "unknown filter" in capsys.readouterr().err


def test_scan_unwritable_output_exit_3(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    argv = ["scan", "--family", "c1", "--c", "1", "--limit", "100", "--threads", "1", "--no-log", "--quiet", "--output", str(blocker / "run")]
    assert main(argv) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_st_moments(capsys, tmp_path):
    path = tmp_path / "st.csv"
    assert main(["st-moments", "--group", "st-c2-generic", "--nmax", "4", "--quiet", "--output", str(path)]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["n,Mn", "1,0", "2,2", "3,0", "4,30"]
    assert path.exists()


def test_components(capsys):
    assert main(["components", "--group", "st-c1-generic"]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header == "order,abelian,element_orders"
    assert row.startswith("16,False,1:1 ")


def test_endotype(capsys):
    assert main(["endotype", "--subgroup", "t"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1] == '"<t>",6,True,6,CxCxC'


def test_lattice(capsys, tmp_path):
    path = tmp_path / "lattice.csv"
    assert main(["lattice", "--quiet", "--output", str(path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "subgroup,dim,commutative,center_dim,identified_algebra"
    assert len(lines) == 17
    assert path.exists()


def test_unknown_flag_exits():
    with pytest.raises(SystemExit):
        main(["trace", "--family", "c1", "--c", "1", "--p", "7", "--bogus"])


def test_parse_limit():
    assert parse_limit("2^22") == 2**22
    assert parse_limit("2**10") == 1024
    assert parse_limit("1000") == 1000
    with pytest.raises(argparse.ArgumentTypeError):
        parse_limit("lots")


def test_parse_rational():
    assert parse_rational("3/5") == Fraction(3, 5)
    assert parse_rational("-2") == -2
    with pytest.raises(argparse.ArgumentTypeError):
        parse_rational("0")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_rational("1/0")


def test_parse_filter():
    assert parse_filter("QI-SQRT2-C4") is FieldTag.Q_i_sqrt2_c14
    assert parse_filter("Q_i_minus3_14") is FieldTag.Q_i_minus3_14
    assert parse_filter("qi-c3-sqrt-cm3") is FieldTag.Q_i_c13_sqrt_c_minus3
    with pytest.raises(KeyError):
        parse_filter("nope")
