import json

import pytest

from astk.containment import (PAIRS, ContainmentReport, containment_exponent, pair_groups,
                              restriction_sandwich)

EXPECTED = {"mu_n-gm": 1, "t1-sl2": 2, "t2-gl2": 2}


@pytest.fixture(scope="module")
def reports():
    return {name: containment_exponent(*pair_groups(name), 6) for name in PAIRS}


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_exponents(reports, name):
    rep = reports[name]
    assert rep.status == "pass"
    assert rep.exponent == EXPECTED[name]
    assert rep.validate()
    assert rep.oracle["forward_found"] and rep.oracle["below_rejected"]


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_json_revalidation(reports, name):
    data = json.loads(json.dumps(reports[name].to_json()))
    again = ContainmentReport.from_json(data)
    assert again.validate()
    assert again.to_json() == reports[name].to_json()


def test_tampered_certificate_rejected(reports):
    data = json.loads(json.dumps(reports["t1-sl2"].to_json()))
    data["reverse_augmentations"][0] = 1
    assert not ContainmentReport.from_json(data).validate()
    data = json.loads(json.dumps(reports["t1-sl2"].to_json()))
    data["forward"] = data["forward"][:-1]
    assert not ContainmentReport.from_json(data).validate()


def test_smaller_exponent_refuted(reports):
    below = reports["t1-sl2"].below
    assert below and below[0][0] == 1


def test_undetermined_when_bound_too_small():
    rep = containment_exponent(*pair_groups("t1-sl2"), 1)
    assert rep.status == "undetermined" and rep.exponent is None


@pytest.mark.parametrize("n", [1, 2, 5])
def test_mu_n_in_gm(n):
    rep = containment_exponent(*pair_groups("mu_n-gm", n), 3, oracle_bound=None)
    assert rep.exponent == 1 and rep.validate()


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_restriction_lands_in_augmentation_ideal(name):
    assert restriction_sandwich(*pair_groups(name))


def test_unknown_pair():
    with pytest.raises(KeyError):
        pair_groups("gl3-t3")
