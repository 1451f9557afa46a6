import io
import subprocess
import sys
from pathlib import Path

import pytest

from nilcenter.cli import main

GOLDEN = Path(__file__).parent / "golden"
INVOCATIONS = [line.split("|", 1) for line in (GOLDEN / "INVOCATIONS").read_text().splitlines() if line]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,args", INVOCATIONS, ids=[n for n, _ in INVOCATIONS])
def test_golden(name, args):
    # the only argument carrying spaces would be --v, and the goldens avoid them
    code, out, err = run(*args.split())
    assert code == 0, err
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_reports_are_deterministic():
    a = run("ijm", "@mu_system", "--seed", "zy2", "--max-degree", "9", "--solve-kernel")
    b = run("ijm", "@mu_system", "--seed", "zy2", "--max-degree", "9", "--solve-kernel")
    assert a == b


def test_poincare_reports():
    code, out, _ = run("poincare", "@hamiltonian")
    assert code == 0 and out.endswith("verdict: center-consistent (numerical corroboration)\n")
    assert out == run("poincare", "@hamiltonian")[1]
    code, out, _ = run("poincare", "@jerk", "--params", "g300=-1,g210=0,g120=0,g030=0,g011=0")
    assert code == 0 and "verdict: unstable-focus" in out
    assert out.count("status=ok") == 3


def test_file_argument(tmp_path):
    f = tmp_path / "h.sys"
    f.write_text("lambda = 1\ndx = y - 2*x*y\ndy = -2*x^3 + y^2\ndz = -z\n")
    code, out, _ = run("check-monodromy", str(f))
    assert code == 0 and "verdict: monodromic, n=2, beta>n-1" in out
    assert out.startswith(f"system: {f}\n")


@pytest.mark.parametrize("argv,fragment", [
    ([], "a command is required"),
    (["frobnicate", "@jerk"], "invalid choice"),
    (["ijm", "@abd_family", "--max-degree", "1", "--seed", "zy2"], "below the seed degree"),
    (["poincare", "@jerk"], "unbound parameter"),
    (["lyapunov", "@abd_family", "--g", "random"], "invalid choice"),
    (["verify-iif", "@jerk", "--v", "1+z"], "must not involve z"),
    (["ijm", "@no_such_system"], "no bundled system"),
])
def test_usage_errors_exit_1(argv, fragment):
    code, out, err = run(*argv)
    assert code == 1 and fragment in err and out == ""


def test_parse_error_exits_1(tmp_path):
    f = tmp_path / "bad.sys"
    f.write_text("lambda = 1\ndx = y +* x\ndy = 0\ndz = -z\n")
    code, _, err = run("ijm", str(f))
    assert code == 1 and err.startswith("parse error:")


def test_math_errors_exit_2():
    code, _, err = run("ijm", "@jerk", "--max-degree", "8", "--solve", "g210,v011,g300")
    assert code == 2 and err.startswith("error:") and "manual reduction required" in err
    code, _, err = run("check-monodromy", "@abd_family", "--subst", "a=x")
    assert code == 1 and "phase variables" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "nilcenter", "center-manifold", "@linear"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0 and p.stdout == "h = 0\n"
