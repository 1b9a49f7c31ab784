import pytest

from charscheme.groebner import Budget
from charscheme.registry import CASES, SLOW, list_cases, run_case


@pytest.mark.parametrize("name", list_cases(fast_only=True))
def test_fast_case_passes(name):
    records = run_case(name)
    assert records
    bad = [r for r in records if r["status"] != "pass"]
    assert not bad, bad


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n, c in CASES.items() if c.runtime == SLOW])
def test_slow_case_passes(name):
    records = run_case(name)
    assert all(r["status"] == "pass" for r in records), records


def test_records_have_fields():
    r = run_case("trefoil")[0]
    assert set(r) >= {"case", "assertion", "status", "wall_ms"}
    assert r["case"] == "trefoil"
    assert r["wall_ms"] >= 0


def test_borromean_cases_are_slow():
    assert "borromean_full" not in list_cases(fast_only=True)
    assert "borromean_full" in list_cases()


def test_every_case_cites_a_reference():
    for case in CASES.values():
        assert case.reference and case.description


def test_unknown_case():
    with pytest.raises(KeyError):
        run_case("knot_of_doom")


def test_tiny_budget_is_reported():
    records = run_case("whitehead_84", Budget(max_pairs=1))
    assert any(r["status"] == "budget_exceeded" for r in records)
