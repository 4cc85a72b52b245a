from fractions import Fraction

import pytest

from astk.errors import UnsupportedGroup
from astk.groups.finite import bundled_group
from astk.groups.repring import regular_representation, rep_ring
from astk.groups.spec import GL, SL2, Mu, SplitTorus, group_label
from astk.trace import (VectorCertificate, class_function_ring, dennis_trace, radical_compare,
                        unipotent_reduced_check, unit_ideal_J, vector_member)

RADICAL_GROUPS = [GL(2), SL2(), SplitTorus(1)] + [Mu(n) for n in range(1, 7)] + [
    bundled_group("s3"), bundled_group("c3")]


def test_regular_trace_s3():
    tr = dennis_trace(regular_representation(bundled_group("s3")))
    assert tr.value == (6, 0, 0)


def test_regular_trace_mu():
    tr = dennis_trace(regular_representation(Mu(3)))
    t = class_function_ring(Mu(3)).ring.gen(0)
    assert tr.value == t ** 2 + t + 1


def test_trace_is_additive_and_multiplicative():
    pres = rep_ring(bundled_group("s3"))
    a, b = pres.gen("std"), pres.gen("sgn")
    assert dennis_trace(a * b) == dennis_trace(a) * dennis_trace(b)
    assert dennis_trace(a + b) == dennis_trace(a) + dennis_trace(b)
    gl = rep_ring(GL(2))
    e1, e2 = gl.gen("e1"), gl.gen("e2")
    assert dennis_trace(e1 * e2) == dennis_trace(e1) * dennis_trace(e2)


def test_unit_evaluation_is_dimension():
    gl = rep_ring(GL(3))
    cf = class_function_ring(GL(3))
    assert cf.unit_evaluation(dennis_trace(gl.gen("e2"))) == 3


@pytest.mark.parametrize("g", RADICAL_GROUPS, ids=group_label)
def test_radical_exponent_one(g):
    rep = radical_compare(g, 3)
    assert rep.status == "pass" and rep.exponent == 1
    assert rep.validate()
    assert all(v == 0 for v in rep.reverse_unit_values)


def test_radical_report_tamper():
    rep = radical_compare(bundled_group("s3"), 2)
    broken = type(rep)(**{**rep.__dict__, "reverse_unit_values": (Fraction(1),)})
    assert not broken.validate()


def test_unit_ideal_for_finite_group():
    J = unit_ideal_J(bundled_group("s3"))
    assert len(J) == 2
    assert all(f.value[bundled_group("s3").identity_class] == 0 for f in J)


def test_vector_member():
    assert vector_member((1, 0, 2), [(0, 0, 1), (3, 0, 0)]).validate()
    assert vector_member((0, 1, 0), [(0, 0, 1), (3, 0, 0)]) is None
    cert = VectorCertificate((1, 1), ((1, 0),), ((1, 0),))
    assert not cert.validate()


@pytest.mark.parametrize("g", [Mu(2), Mu(4), Mu(6), SplitTorus(1), SplitTorus(2),
                               bundled_group("s3")], ids=group_label)
def test_unipotent_locus(g):
    rep = unipotent_reduced_check(g)
    assert rep.holds and rep.validate() and rep.quotient_dim == 1


def test_unipotent_finite_zero_set():
    rep = unipotent_reduced_check(bundled_group("s3"))
    assert rep.zero_set == ("e",)


def test_unipotent_mu_separable():
    rep = unipotent_reduced_check(Mu(5))
    assert rep.diagnostics["separable"] is True
    assert rep.diagnostics["gcd(t^5-1, 5*t^4)"] == "1"


@pytest.mark.parametrize("g", [SL2(), GL(2)], ids=group_label)
def test_unipotent_rejects_non_nice(g):
    with pytest.raises(UnsupportedGroup, match="nice"):
        unipotent_reduced_check(g)
