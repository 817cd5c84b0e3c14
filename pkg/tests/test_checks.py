"""Tests for the structural check suite and its catalog."""

import json
from collections import Counter

import pytest

from nrtloops.checks import (
    CHECK_IDS,
    CatalogEntry,
    CheckReport,
    default_catalog,
    load_catalog,
    run_suite,
    suite_passed,
)

EXPECTED_LABELS = [
    "sym3-point-swap",
    "alt4-double-swap",
    "dihedral3-mirror",
    "dihedral4-mirror",
    "dihedral5-mirror",
    "dihedral6-mirror",
    "dihedral7-mirror",
    "dihedral3-rotations",
    "dihedral6-center",
    "dihedral6-klein",
    "cyclic8-even",
]


def test_catalog_entries():
    catalog = default_catalog()
    assert [e.label for e in catalog] == EXPECTED_LABELS
    for entry in catalog:
        facts = entry.facts_dict()
        assert set(facts) == {
            "normal",
            "isotopy_classes",
            "isomorphism_classes",
            "loop_transversals",
        }
    by_label = {e.label: e.facts_dict() for e in catalog}
    assert by_label["sym3-point-swap"]["isotopy_classes"] == 2
    assert by_label["alt4-double-swap"]["isomorphism_classes"] == 5
    assert by_label["alt4-double-swap"]["loop_transversals"] == 0
    assert by_label["dihedral6-center"]["loop_transversals"] == 32
    assert by_label["dihedral7-mirror"]["isotopy_classes"] == 5


def test_catalog_entry_validation():
    entry = CatalogEntry("demo", "sym:3", "(2,3)", {"normal": False})
    assert entry.facts == (("normal", False),)
    with pytest.raises(ValueError, match="fact key"):
        CatalogEntry("demo", "sym:3", "(2,3)", {"color": "red"})


def test_check_report_validation():
    report = CheckReport("facts", "demo", "pass", {"b": 2, "a": 1})
    assert report.details == (("a", 1), ("b", 2))
    assert report.details_dict() == {"a": 1, "b": 2}
    obj = report.to_json_obj()
    assert obj == {
        "check": "facts",
        "label": "demo",
        "verdict": "pass",
        "details": {"a": 1, "b": 2},
    }
    with pytest.raises(ValueError, match="verdict"):
        CheckReport("facts", "demo", "maybe")
    # non-JSON detail values are stringified
    odd = CheckReport("facts", "demo", "pass", {"x": frozenset({1})})
    assert isinstance(odd.to_json_obj()["details"]["x"], str)


def test_full_suite_verdicts():
    reports = run_suite()
    assert suite_passed(reports)
    tally = Counter(r.verdict for r in reports)
    assert tally == {"pass": 62, "vacuous": 28}
    by_check = Counter(r.check_id for r in reports)
    assert by_check == {
        "facts": 11,
        "prop3.2": 11,
        "prop3.3": 11,
        "prop3.5": 11,
        "prop3.7": 2,
        "prop3.8": 6,
        "cor3.8": 5,
        "prop3.9": 16,
        "thm3.12": 11,
        "thm4.1": 3,
        "thm4.2": 3,
    }
    per_check = {}
    for r in reports:
        per_check.setdefault(r.check_id, Counter())[r.verdict] += 1
    assert per_check["facts"] == {"pass": 11}
    assert per_check["prop3.2"] == {"pass": 11}
    assert per_check["prop3.3"] == {"pass": 11}
    assert per_check["prop3.5"] == {"vacuous": 11}
    assert per_check["prop3.7"] == {"pass": 2}
    assert per_check["prop3.8"] == {"pass": 1, "vacuous": 5}
    assert per_check["cor3.8"] == {"pass": 1, "vacuous": 4}
    assert per_check["prop3.9"] == {"pass": 16}
    assert per_check["thm3.12"] == {"pass": 3, "vacuous": 8}

    transitive_passes = [
        r.label for r in reports if r.check_id == "thm3.12" and r.verdict == "pass"
    ]
    assert transitive_passes == [
        "dihedral3-rotations",
        "dihedral6-klein",
        "cyclic8-even",
    ]
    nilpotent_rows = [(r.label, r.verdict) for r in reports if r.check_id == "prop3.7"]
    assert nilpotent_rows == [
        ("dihedral4-mirror", "pass"),
        ("cyclic8-even", "pass"),
    ]


def test_counting_check_details():
    reports = run_suite(check_ids=["thm4.2"])
    assert [r.label for r in reports] == ["p=3", "p=5", "p=7"]
    assert [r.verdict for r in reports] == ["pass", "pass", "pass"]
    expected = {
        "p=3": {"direct": 2, "families": 2, "formula": 2, "orbit_count": 4},
        "p=5": {"direct": 3, "families": 3, "formula": 3, "orbit_count": 6},
        "p=7": {"direct": 5, "families": 5, "formula": 5, "orbit_count": 10},
    }
    for r in reports:
        assert r.details_dict() == expected[r.label]


def test_prime_parameter():
    reports = run_suite(check_ids=["thm4.1", "thm4.2"], ps=(3, 11))
    rows = {(r.check_id, r.label): r for r in reports}
    assert rows[("thm4.1", "p=3")].verdict == "pass"
    # pairwise isotopy scans are capped, larger primes report vacuous
    assert rows[("thm4.1", "p=11")].verdict == "vacuous"
    assert rows[("thm4.2", "p=11")].verdict == "pass"
    assert rows[("thm4.2", "p=11")].details_dict() == {
        "families": 15,
        "formula": 15,
        "orbit_count": 30,
    }


def test_check_id_selection():
    reports = run_suite(check_ids=["thm4.2", "facts"])
    # reports follow the canonical check order, not the requested order
    assert [r.check_id for r in reports] == ["facts"] * 11 + ["thm4.2"] * 3
    with pytest.raises(ValueError, match="unknown check ids: nope"):
        run_suite(check_ids=["nope"])
    assert CHECK_IDS[0] == "facts"
    assert suite_passed([])


def test_load_catalog(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(
        json.dumps(
            [
                {
                    "label": "one",
                    "group": "sym:3",
                    "subgroup": "(2,3)",
                    "facts": {"isotopy_classes": 2},
                },
                {"label": "two", "group": "cyclic:4", "subgroup": "2"},
            ]
        )
    )
    catalog = load_catalog(path)
    assert len(catalog) == 2
    assert catalog[0].label == "one"
    assert catalog[1].facts == ()
    reports = run_suite(catalog=catalog, check_ids=["facts"])
    assert [r.verdict for r in reports] == ["pass", "vacuous"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"label": "x"}))
    with pytest.raises(ValueError, match="JSON list"):
        load_catalog(bad)


def test_wrong_fact_is_reported(tmp_path):
    path = tmp_path / "wrong.json"
    path.write_text(
        json.dumps(
            [
                {
                    "label": "wrong",
                    "group": "sym:3",
                    "subgroup": "(2,3)",
                    "facts": {"isotopy_classes": 3, "normal": False},
                }
            ]
        )
    )
    reports = run_suite(catalog=load_catalog(path), check_ids=["facts"])
    assert len(reports) == 1
    report = reports[0]
    assert report.verdict == "fail"
    assert report.details_dict() == {
        "isotopy_classes": {"expected": 3, "computed": 2}
    }
    assert not suite_passed(reports)
