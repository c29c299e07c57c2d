import json
from fractions import Fraction

from dsscapacity import DssConfig, bounds_report, permutation_lift
from dsscapacity.report import Report, bounds_payload, config_summary, lift_payload


def test_json_is_sorted_and_exact():
    report = Report("demo", "abc", {"b": Fraction(10, 3), "a": [Fraction(1), 2]}, [])
    text = report.to_json()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["results"] == {"a": ["1", 2], "b": "10/3"}


def test_table_rendering():
    report = Report(
        "demo", "0123456789abcdef0123", {"x": {"y": Fraction(1, 3)}, "z": None, "ok": True}
    )
    lines = report.to_table().splitlines()
    assert lines[1].endswith("0123456789abcdef")
    assert lines[2].startswith("x.y") and lines[2].endswith("1/3 (≈0.333)")
    assert lines[3].split() == ["z", "-"]
    assert lines[4].split() == ["ok", "yes"]


def test_warnings_in_table():
    report = Report("demo", "d", {}, ["careful"])
    assert report.render("table").splitlines()[-1] == "warning: careful"
    assert json.loads(report.render("json"))["warnings"] == ["careful"]


def test_bounds_payload(example1: DssConfig):
    payload = bounds_payload(bounds_report(example1, compute_exact=True))
    assert payload["exact"] == 3
    assert payload["witness"]["helper_sets"] == [[2, 3], [3]]
    assert payload["special_case"] is None


def test_lift_payload_without_certificate(example1: DssConfig):
    payload = lift_payload(permutation_lift(example1), "formula")
    assert "certificate" not in payload
    assert payload["implied_bound"] == Fraction(10, 3)


def test_config_summary(example2: DssConfig):
    summary = config_summary(example2)
    assert (summary["alpha_bar"], summary["gamma_bar"]) == (6, 8)
    assert summary["integer_scale"] == 1
    assert summary["model"] == "helper_only"


def test_sequence_cells():
    report = Report("demo", "d", {"sets": [[2, 3], [2]], "pair": (1, 2), "single": (2,)})
    rows = {line.split()[0]: line.split(None, 1)[1] for line in report.to_table().splitlines()}
    assert rows["sets"] == "[[2, 3], [2]]"
    assert rows["pair"] == "(1, 2)"
    assert rows["single"] == "(2,)"
