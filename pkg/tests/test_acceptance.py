"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
complete; the two Monte Carlo criteria (3 and 10) dominate the runtime.
"""

import pytest

from coulomblab import acceptance


def _run(index):
    entry = next(c for c in acceptance.CRITERIA if c[0] == index)
    idx, name, fn = entry
    passed, detail = fn()
    print(f"criterion {idx:02d} {'PASS' if passed else 'FAIL'}: {name}: {detail}")
    assert passed, f"criterion {idx} failed: {detail}"


def test_criterion_01_closed_form_vs_oracle():
    _run(1)


def test_criterion_02_sum_rule_and_dilation():
    _run(2)


def test_criterion_03_cube_self_energy_mc():
    _run(3)


def test_criterion_04_riesz_circle():
    _run(4)


def test_criterion_05_free_energy_asymptotics():
    _run(5)


def test_criterion_06_sinh_model():
    _run(6)


def test_criterion_07_fluctuations():
    _run(7)


def test_criterion_08_balayage():
    _run(8)


def test_criterion_09_hole_probability():
    _run(9)


def test_criterion_10_sampler_statistics():
    _run(10)


def test_criterion_11_green_functions():
    _run(11)
