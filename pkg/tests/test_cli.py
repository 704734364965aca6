import json

import pytest

from biserial.cli import run

KRONECKER = """\
quiver kronecker
vertex 1
vertex 2
arrow a : 1 -> 2
arrow b : 1 -> 2
"""


@pytest.fixture
def kron(tmp_path):
    p = tmp_path / "kronecker.q"
    p.write_text(KRONECKER)
    return str(p)


def test_validate(kron):
    code, out, _ = run(["validate", kron])
    assert code == 0
    assert out.splitlines()[0] == "special biserial: yes; gentle: yes; complete gentle: no"


def test_moduli(kron):
    code, out, _ = run(["moduli", kron, "--dim", "1=2,2=2", "--theta", "1=1,2=-1"])
    assert code == 0
    assert out.splitlines()[0] == "r=(a:2,b:2,w1:0,w2:0)  ->  P^2  (dim 2)"


def test_dim():
    assert run(["dim", "--n", "2,2", "--r", "1,1"]) == (0, "4\n", "")


def test_count_points():
    code, out, _ = run(["count-points", "--n", "2", "--r", "1", "--q", "2,3,5"])
    assert code == 0 and out.split() == ["q=2:", "4", "q=3:", "9", "q=5:", "25"]


def test_components_and_cycles(kron):
    code, out, _ = run(["components", kron, "--dim", "1=1,2=1"])
    assert code == 0 and out.strip() == "r=(a:1,b:1,w1:0,w2:0)  dim 2"
    code, out, _ = run(["cycles", kron])
    assert code == 0 and len(out.splitlines()) == 2


def test_complete_output_parses(kron, tmp_path):
    code, out, _ = run(["complete", kron])
    assert code == 0
    p = tmp_path / "big.q"
    p.write_text(out)
    code, out, _ = run(["validate", str(p)])
    assert out.startswith("special biserial: yes; gentle: yes; complete gentle: yes")


def test_decompose_generic_point(kron):
    code, out, _ = run(["decompose", kron, "--dim", "1=1,2=1", "--rank", "a=1,b=1"])
    assert code == 0 and out.startswith("1 x band a.b^-1 lambda=")


def test_decompose_and_stability_of_a_module(kron, tmp_path):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"dim": {"1": 1, "2": 1}, "mats": {"a": [[0]], "b": [[0]]}}))
    code, out, _ = run(["decompose", kron, "--module", str(mod)])
    assert code == 0 and sorted(out.splitlines()) == ["1 x simple 1  dim=(1:1,2:0)", "1 x simple 2  dim=(1:0,2:1)"]
    code, out, _ = run(["stability", kron, "--module", str(mod), "--theta", "1=1,2=-1"])
    assert code == 0 and out.strip() == "unstable (witness (1:1,2:0))"


def test_degenerate():
    code, out, _ = run(["degenerate", "--n", "1,1", "--r", "1,0", "--to", "0,0"])
    assert code == 0
    assert out.splitlines()[0] == "a0 = [[lam]]"


def test_json_output_is_deterministic(kron):
    args = ["moduli", kron, "--dim", "1=2,2=2", "--theta", "1=1,2=-1", "--format", "json"]
    first, second = run(args), run(args)
    assert first == second
    data = json.loads(first[1])
    assert data["components"][0]["moduli"] == "P^2"


def test_exit_codes(kron, tmp_path):
    assert run(["frobnicate"])[0] == 2
    assert run(["dim", "--n", "2,2"])[0] == 2
    assert run(["validate", str(tmp_path / "missing.q")])[0] == 2
    bad = tmp_path / "bad.q"
    bad.write_text("vertex 1\narrow a : 1 -> 7\n")
    code, _, err = run(["validate", str(bad)])
    assert code == 2 and "line 2" in err
    assert run(["dim", "--n", "2,2", "--r", "2,1"])[0] == 1
    code, _, err = run(["moduli", kron, "--dim", "1=1,2=0", "--theta", "1=1,2=-1"])
    assert code == 1 and err.startswith("error: ")
