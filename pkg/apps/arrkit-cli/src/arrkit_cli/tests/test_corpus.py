import pytest

from arrkit_topology import JumpTable, delta_metabelian

from arrkit_cli.corpus import FAIL, PASS, QUICK_OPTIONS, load_bundled, verify_file


def _with_expected(name: str, **update):
    file = load_bundled(name)
    return file.model_copy(update={"expected": file.expected.model_copy(update=update)})


def test_listed_mismatch_is_a_known_discrepancy():
    file = _with_expected(
        "braid",
        nu={2: {1: 16}},
        discrepancies={"nu.2.1": "tabulated off by one"},
    )
    verdict = verify_file(file, QUICK_OPTIONS)
    assert verdict.status == PASS
    assert verdict.failures == {}
    assert verdict.discrepancies["nu.2.1"].startswith("computed 15, reference 16")


def test_unlisted_mismatch_fails():
    verdict = verify_file(_with_expected("braid", s=8), QUICK_OPTIONS)
    assert verdict.status == FAIL
    assert verdict.failures == {"s": "computed 7, reference 8"}


@pytest.mark.parametrize("name, beta", [("b3", {1: 36, 2: 24}), ("deleted-b3", {1: 27, 2: 9})])
def test_characteristic_two_jumps_are_listed(name, beta):
    expected = load_bundled(name).expected
    assert {"nu.2.1", "nu.2.2"} <= set(expected.discrepancies)
    # the recorded counts are the beta_2^(3) ones
    assert expected.beta_table(2, 3) == beta


@pytest.mark.parametrize("name", ["ziegler-a1", "ziegler-a2"])
def test_ziegler_delta_a4_is_listed(name):
    expected = load_bundled(name).expected
    s3 = JumpTable("beta", 2, 3, expected.beta_table(2, 3))
    a4 = JumpTable("beta", 3, 2, expected.beta_table(3, 2))
    # the tabulated S3 count follows from its beta table, the A4 count does not
    assert delta_metabelian(s3) == expected.delta_s3
    assert delta_metabelian(a4) - expected.delta_a4 == 640
    assert "delta_a4" in expected.discrepancies
