import os
import subprocess
from fractions import Fraction

import pytest

import chevalley as c


def test_fixture_d34():
    r = c.verify_chevalley(34)
    assert r["verdict"] is True
    assert r["lhs"] == r["rhs"] == "2"
    assert r["h1_units"]["order"] == "4"


def test_fixture_gaussian_with_five():
    r = c.verify_chevalley(-1, ["inf", 5])
    assert r["verdict"] is True
    assert r["ambiguous"]["order"] == "1"


def test_hilbert_symbols():
    assert c.hilbert_symbol(-1, -1, "inf") == -1
    assert c.hilbert_symbol(-1, -1, 2) == -1
    assert c.hilbert_symbol(-1, -1, 3) == 1
    assert c.hilbert_symbol(2, 5, 5) == -1
    assert c.hilbert_symbol(Fraction(3, 4), 7, 7) == c.hilbert_symbol(3, 7, 7)


def test_product_formula_small_range():
    primes = [2, 3, 5, 7, 11, 13]
    for a in range(-13, 14):
        for b in range(-13, 14):
            if a and b:
                prod = c.hilbert_symbol(a, b, "inf")
                for p in primes:
                    prod *= c.hilbert_symbol(a, b, p)
                assert prod == 1


def test_global_norms():
    assert c.is_global_norm(-1, 2)["is_norm"] is True
    assert c.is_global_norm(-1, -1) == {"is_norm": False, "witness": None}
    assert c.is_global_norm(5, -1)["witness"] is not None


def test_norm_torus_gaussian():
    r = c.norm_torus(-1)
    assert r["residual"] == "2"
    assert r["w_index"] == "2"
    assert (r["mu"], r["nu"]) == ("1", "1")


def test_explorer_chain():
    chain = c.explore_h0(-1, [2, 3, 5, 7, 11])
    assert chain[-2]["group"]["invariant_factors"] == ["2", "2", "2"]
    assert chain[-1]["group"]["invariant_factors"] == ["2", "2", "2", "2"]


def test_cohomology_q8():
    r = c.cohomology_check("q8", "i=z4", "q_delta")
    assert r["ok"] is True and r["q"] == "1/4"


def test_sweep_deterministic():
    a = c.sweep(1, 200, threads=1)
    b = c.sweep(1, 200, threads=3)
    assert a == b
    assert a["summary"]["failed"] == "0"
    assert a["summary"]["verified"] == a["summary"]["total"]


def test_errors():
    with pytest.raises(c.InputError):
        c.field(12)
    with pytest.raises(ValueError):
        c.explore_h0(-1, [4])
    with pytest.raises(ValueError):
        c.cohomology_check("c2", "i=c2", "nope")


CLI = os.environ.get("CHEV_CLI")


@pytest.mark.skipif(not CLI, reason="CHEV_CLI not set")
@pytest.mark.parametrize(
    "args,code",
    [
        (["field", "12"], 2),
        (["field", "-5"], 0),
        (["verify-chevalley", "--dmin", "2", "--dmax", "60"], 0),
        (["cohomology", "--group", "q8", "--tower", "i=z4", "--lemma", "4.3"], 0),
        (["explore-h0", "--d", "-1", "--t-primes", "2,3"], 0),
        (["--bogus"], 2),
    ],
)
def test_cli_exit_codes(args, code):
    assert subprocess.run([CLI, *args], capture_output=True).returncode == code
