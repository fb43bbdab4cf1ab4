"""Twisted components, presentations, chains, and the isotropy oracle."""
from fractions import Fraction as F
from math import gcd

import pytest

from orbicurve.curves import (
    GENERIC,
    CurveChain,
    MarkedPoint,
    TwistedComponent,
    brute_force_isotropy_counts,
    isotropy_order,
    present,
    validate_chain,
)


def test_present_examples():
    assert present(1, 1) == TwistedComponent(1, 1, 1, 1)
    assert present(2, 3) == TwistedComponent(2, 3, 1, 1)
    assert present(4, 6) == TwistedComponent(2, 3, 2, 1)


def test_present_4_6_is_the_unique_split():
    # oracle: factor pairs of l = 2 against the gcd constraints
    l, a, b = 2, 2, 3
    admissible = [
        (l1, l // l1)
        for l1 in (1, 2)
        if gcd(l1, l // l1) == 1 and gcd(l1, b) == 1 and gcd(l // l1, a) == 1
    ]
    assert admissible == [(2, 1)]


def test_isotropy_orders():
    comp = present(4, 6)
    assert isotropy_order(comp, MarkedPoint.X1) == 4
    assert isotropy_order(comp, MarkedPoint.X2) == 6
    assert isotropy_order(comp, GENERIC) == 1


def test_present_reproduces_orders_up_to_50():
    for c in range(1, 51):
        for d in range(1, 51):
            comp = present(c, d)
            assert comp.c == c and comp.d == d
            # invariants are enforced by the constructor; re-presenting is stable
            assert present(comp.c, comp.d) == comp


def test_component_invariant_violations():
    with pytest.raises(ValueError, match=r"gcd\(a,b\)"):
        TwistedComponent(2, 4)
    with pytest.raises(ValueError, match=r"gcd\(l1,l2\)"):
        TwistedComponent(1, 1, 2, 2)
    with pytest.raises(ValueError, match=r"gcd\(l1,b\)"):
        TwistedComponent(1, 2, 2, 1)
    with pytest.raises(ValueError, match=r"gcd\(l2,a\)"):
        TwistedComponent(2, 1, 1, 2)
    with pytest.raises(ValueError, match="positive"):
        TwistedComponent(0, 1)


def test_brute_force_isotropy_oracle_small():
    for c in range(1, 9):
        for d in range(1, 9):
            comp = present(c, d)
            counts = brute_force_isotropy_counts(comp)
            assert counts == {"x1": c, "x2": d, "generic": 1}, (c, d)


def test_validate_chain_single_component():
    chain = CurveChain((present(1, 1),), (F(1),))
    assert validate_chain(chain).valid


def test_validate_chain_two_p1():
    chain = CurveChain((present(1, 1), present(1, 1)), (F(1), F(1)))
    assert validate_chain(chain).valid


def test_validate_chain_node_mismatch():
    # X2 of the first has order 2, X1 of the second has order 3
    chain = CurveChain((present(1, 2), present(3, 1)))
    report = validate_chain(chain)
    assert not report.valid
    assert any("node isotropy mismatch" in v for v in report.violations)


def test_validate_chain_degree_positivity():
    chain = CurveChain((present(1, 1),), (F(0),))
    report = validate_chain(chain)
    assert not report.valid
    assert any("not positive" in v for v in report.violations)


def test_chain_defaults_degree_tags():
    chain = CurveChain((present(1, 1), present(1, 1)))
    assert chain.degree_tags == (F(1), F(1))
    assert chain.nodes == [(0, 1)]
