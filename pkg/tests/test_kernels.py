"""Compiled and pure-Python kernels must agree term for term."""

import pytest
from hypothesis import given, settings, strategies as st

from eqpieri import kernels
from eqpieri.poly import Polynomial, Variable, divided_difference

NSLOTS = 8  # x1..x4, y1..y4

compiled = pytest.mark.skipif(kernels.CKPoly is None, reason="compiled kernels not built")


def terms_strategy(max_exp=4):
    exps = st.tuples(*[st.integers(0, max_exp)] * NSLOTS)
    return st.lists(st.tuples(exps, st.integers(-20, 20)), max_size=12)


def as_generic(kp):
    names = [Variable("x", i) for i in range(1, 5)] + [Variable("y", i) for i in range(1, 5)]
    return Polynomial({tuple((names[s], e) for s, e in enumerate(exps) if e): c
                       for exps, c in kp.terms()})


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
    assert "python" in kernels.backends()


@given(terms_strategy())
def test_python_matches_generic_polynomial(terms):
    kp = kernels.PyKPoly.from_terms(NSLOTS, terms)
    generic = as_generic(kp)
    for slot in range(3):
        assert as_generic(kp.divdiff(slot)) == divided_difference(generic, slot + 1, "x")
    assert as_generic(kp.mul(kp)) == generic * generic


@compiled
@settings(max_examples=150)
@given(terms_strategy(), terms_strategy())
def test_compiled_matches_python(a, b):
    ca, cb = kernels.CKPoly.from_terms(NSLOTS, a), kernels.CKPoly.from_terms(NSLOTS, b)
    pa, pb = kernels.PyKPoly.from_terms(NSLOTS, a), kernels.PyKPoly.from_terms(NSLOTS, b)
    assert ca.terms() == pa.terms()
    assert ca.mul(cb).terms() == pa.mul(pb).terms()
    for slot in range(NSLOTS - 1):
        assert ca.divdiff(slot).terms() == pa.divdiff(slot).terms()
    assert ca.specialize(4) == pa.specialize(4)
    assert len(ca) == len(pa) and bool(ca) == bool(pa)


@compiled
def test_compiled_exponent_overflow():
    big = kernels.CKPoly.from_terms(2, [((8, 0), 1)])
    with pytest.raises(OverflowError):
        big.mul(big)
    with pytest.raises(OverflowError):
        kernels.CKPoly.from_terms(2, [((16, 0), 1)])


@compiled
def test_compiled_coefficient_overflow():
    huge = kernels.CKPoly.from_terms(2, [((1, 0), 2 ** 62)])
    with pytest.raises(OverflowError):
        huge.mul(huge)
    with pytest.raises(OverflowError):
        kernels.CKPoly.from_terms(2, [((1, 0), 2 ** 63)])


@compiled
def test_compiled_slot_limit():
    with pytest.raises(OverflowError):
        kernels.CKPoly(17)


def test_python_has_no_overflow():
    huge = kernels.PyKPoly.from_terms(2, [((100, 0), 2 ** 80)])
    sq = huge.mul(huge)
    assert sq.terms() == [((200, 0), 2 ** 160)]


@pytest.mark.parametrize("cls", list(kernels.backends().values()))
def test_divdiff_closed_form(cls):
    # d(x1^3 x2) = x1^2 x2 + x1 x2^2
    kp = cls.from_terms(2, [((3, 1), 1)])
    assert sorted(kp.divdiff(0).terms()) == [((1, 2), 1), ((2, 1), 1)]
    assert not cls.from_terms(2, [((2, 2), 5)]).divdiff(0)


def test_pure_python_fallback_selected_by_env():
    import json
    import os
    import subprocess
    import sys

    code = ("import json; from eqpieri import kernels, oracle; "
            "r = oracle.verify(3); print(json.dumps([kernels.BACKEND, len(r['mismatches'])]))")
    env = dict(os.environ, EQPIERI_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout) == ["python", 0]
