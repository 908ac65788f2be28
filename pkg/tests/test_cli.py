from __future__ import annotations

import io
import json
import random
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from rpalab import gen
from rpalab.cli import main, run_lines
from rpalab.errors import KindError, ParseError, UnboundName
from rpalab.index_filters import EVENS, Frechet, PrincipalAt, SupersetOf
from rpalab.parser import (BinOp, ClassLit, Cmp, Fuzz, Let, Num, Pow, Show, Sym, parse,
                           parse_expr, tokenize)
from rpalab.render import render_json, render_text, value_from_json
from rpalab.session import Session, evaluate, run_line

PAULI = """\
# Pauli matrices on the unit grid
let sx = op { grid = [0, 1, 2]; matrix = [[0, 1], [1, 0]] }
let sy = op { grid = [0, 1, 2]; matrix = [[0, -i], [i, 0]] }
let psi0 = wave { breaks = [0, 1, 2]; coeffs = [1, 0] }
heisenberg sx sy psi0
"""


def run(text: str, F=None, fmt="text"):
    out, err = io.StringIO(), io.StringIO()
    _, code = run_lines(Session(filter=F or Frechet()), text.splitlines(), fmt, out, err)
    return code, out.getvalue(), err.getvalue()


def value(src: str, F=None):
    return evaluate(parse_expr(src), Session(filter=F or Frechet()))


def test_tokenizer_inserts_implicit_products():
    kinds = [(t.kind, t.text) for t in tokenize("3i + 2n")]
    assert kinds == [("INT", "3"), ("OP", "*"), ("NAME", "i"), ("OP", "+"),
                     ("INT", "2"), ("OP", "*"), ("NAME", "n"), ("END", "")]


def test_parse_shapes():
    e = parse_expr("1/n + n^(1/2)")
    assert isinstance(e, BinOp) and e.op == "+"
    assert e.right == Pow(Sym("n", 6), Fr(1, 2))
    assert isinstance(parse_expr("class mod 2 { n; 1/n }"), ClassLit)
    assert parse("let x = 2") == Let("x", Num(Fr(2)))
    assert isinstance(parse("cmp 1 2"), Cmp)
    assert parse("fuzz ring 10 3") == Fuzz("ring", 10, 3)
    assert parse("fuzz ring") == Fuzz("ring", None, None)
    assert isinstance(parse("n + 1"), Show)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("1 + * 2")
    assert info.value.position == 4
    assert "'*'" in str(info.value)
    for bad in ("class mod 2 { 1 }", "n^x", "let = 3", "(1 + 2", "1 $ 2", "patch{1: 1/0}"):
        with pytest.raises(ParseError):
            parse(bad)


def test_precedence_and_associativity():
    assert value("2 - 3 - 4") == value("-5")
    assert value("12 / 3 / 2") == value("2")
    assert value("-n^2") == value("0 - n*n")
    assert value("2 * n^(-1)") == value("2/n")
    assert value("omega") == value("n")
    assert value("i * i") == value("-1")


def test_expression_values():
    assert render_text(value("1/n + n^(1/2)")) == "n^(1/2) + n^(-1)"
    assert render_text(value("class mod 2 { n; 1/n }")) == "class mod 2 { n; n^(-1) }"
    assert render_text(value("sqrt(n^2 + 1)")) == "n + 1/2*n^(-1) - 1/8*n^(-3) + 1/16*n^(-5)"
    assert render_text(value("n patch{4: 99}", PrincipalAt(4))) == "99"
    assert render_text(value("patch{4: 99}", Frechet())) == "0"
    assert render_text(value("abs2(1/n + i*n)")) == "n^2 + n^(-2)"
    assert render_text(value("re(2 + 3i)")) == "2" and render_text(value("im(2 + 3i)")) == "3"
    assert render_text(value("conj(2 + 3i)")) == "2 - 3*i"
    assert render_text(value("integrate(wave { breaks = [0, omega]; coeffs = [1/n] })")) == "1"


def test_session_errors():
    with pytest.raises(UnboundName):
        value("x + 1")
    with pytest.raises(UnboundName):
        value("frobnicate(1)")
    with pytest.raises(KindError):
        value("wave { breaks = [0, 1]; coeffs = [1] } + 1")
    with pytest.raises(KindError):
        value("(1 + n)^(1/2)")
    with pytest.raises(KindError):
        run_line(Session(), "let n = 3")
    with pytest.raises(KindError):
        run_line(Session(), "evalat n 0")


def test_spec_command_examples():
    assert run("classify 1/n") == (0, "Infinitesimal\n", "")
    assert run("cmp class mod 2 {1; -1} 0")[1] == "incomparable\n"
    code, out, _ = run(PAULI)
    assert code == 0
    assert out.splitlines()[-1].startswith("holds=true residual=0")


def test_json_rendering():
    assert render_json(value("1/n")) == '{"modulus":1,"classes":[[{"exp":"-1","coef":"1"}]]}'
    code, out, _ = run(PAULI, fmt="json")
    verdict = json.loads(out.splitlines()[-1])
    assert code == 0 and verdict["holds"] is True
    assert verdict["residual"] == {"modulus": 1, "classes": [[]]}
    assert json.loads(render_json(value("2 + 3i"))) == {
        "re": {"modulus": 1, "classes": [[{"exp": "0", "coef": "2"}]]},
        "im": {"modulus": 1, "classes": [[{"exp": "0", "coef": "3"}]]}}


def test_json_round_trip():
    rng = random.Random(5)
    for F in gen.FILTERS:
        for x in (gen.cplx(rng, F), gen.wave(rng, F, 2)):
            y = value_from_json(json.loads(render_json(x)), F)
            assert render_text(y) == render_text(x)


def test_text_round_trip_examples():
    for F in (Frechet(), PrincipalAt(9), SupersetOf(EVENS)):
        for src in ("n^(3/2) - 2*n + 7/3", "class mod 2 {n; 1/n}", "-i", "(1 + n)*i - 1/n",
                    "op { grid = [0, n]; matrix = [[i]] }",
                    "wave { breaks = [-1, 0, omega]; coeffs = [2i, 1/n] }"):
            x = value(src, F)
            assert value(render_text(x), F) == x


def test_exit_codes():
    assert run("1 + * 2")[0] == 2
    assert run("inv(class mod 2 {1; 0})")[0] == 3
    assert run("x")[0] == 3
    assert run("sqrt(-n)")[0] == 3
    assert run("fuzz nosuch")[0] == 3
    code, out, _ = run("fuzz broken 40 0")
    assert code == 4 and "counterexample" in out
    assert run("fuzz ring 5 0")[0] == 0


def test_errors_stop_the_script_and_report_the_line():
    code, out, err = run("classify n\n\nbad + * \nclassify 1/n")
    assert code == 2 and out == "InfinitelyLarge\n"
    assert err.startswith("line 3: error E_PARSE")
    _, _, err = run("1/0", fmt="json")
    assert json.loads(err)["error"] == "E_NOT_INVERTIBLE"


def test_main_entry_point(tmp_path, capsys):
    script = tmp_path / "pauli.rpa"
    script.write_text(PAULI)
    assert main(["--format", "json", str(script)]) == 0
    assert '"holds":true' in capsys.readouterr().out
    assert main(["--filter", "principal:3", "-e", "n^2 + 1"]) == 0
    assert capsys.readouterr().out == "10\n"
    assert main(["--filter", "superset:2:0", "-e", "classify class mod 2 {1/n; n}"]) == 0
    assert capsys.readouterr().out == "Infinitesimal\n"
    assert main(["--trunc", "1", "-e", "sqrt(n^2 + 1)"]) == 0
    assert capsys.readouterr().out == "n\n"
    assert main([str(tmp_path / "missing.rpa")]) == 2
    with pytest.raises(SystemExit) as info:
        main(["--filter", "nonsense", "-e", "1"])
    assert info.value.code == 2


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "rpalab", "-e", "fuzz broken 30 1"],
                          capture_output=True, text=True)
    assert proc.returncode == 4
    line = proc.stdout.splitlines()[1]
    cx = json.loads(line.split(" ", 1)[1])
    assert cx["claim"].startswith("any two elements are comparable")
    assert set(cx["values"]) == {"a", "b"}


def test_fuzz_is_deterministic():
    a = run("fuzz order 20 7")[1]
    b = run("fuzz order 20 7")[1]
    assert a == b
