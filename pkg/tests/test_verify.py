import json
from fractions import Fraction

import pytest

from nilaut import bounds, cli, verify


def test_criteria_are_numbered_in_order():
    assert [fn.__name__ for fn in verify.CRITERIA][0] == "check_bound_tables"
    assert len(verify.CRITERIA) == 8


def test_bad_scale():
    with pytest.raises(ValueError):
        verify.verify_paper("huge")


def test_injected_wrong_coefficient_is_reported(monkeypatch):
    real = bounds.max_order_coefficient

    def wrong(p, d):
        return real(p, d) + (Fraction(1, 7) if (p, d) == ("nilpotent", 4) else 0)

    monkeypatch.setattr(bounds, "max_order_coefficient", wrong)
    check = verify.run_check(verify.check_bound_tables, "quick", 1)
    assert check.status == "fail"
    assert any("4" in i.label and not i.ok for i in check.items)


def test_crash_becomes_failed_check(monkeypatch):
    def boom(p, d):
        raise RuntimeError("kaput")

    monkeypatch.setattr(bounds, "max_order_coefficient", boom)
    check = verify.run_check(verify.check_bound_tables, "quick", 1)
    assert check.status == "fail" and "kaput" in check.error


def test_report_json_has_no_timings():
    check = verify.run_check(verify.check_small_exception, "quick", 7)
    text = json.dumps(check.to_json())
    assert "seconds" not in text and check.seconds > 0
    assert check.status == "pass"


def test_verify_paper_cli_quick(capsys, monkeypatch):
    # the property suite is covered by the acceptance run; keep this one short
    monkeypatch.setattr(verify, "CRITERIA", verify.CRITERIA[:7])
    code = cli.main(["verify-paper", "--scale", "quick", "--json"])
    data = json.loads(capsys.readouterr().out)
    failing = [c["criterion"] for c in data["checks"] if c["status"] != "pass"]
    # the orbit count of the odd-prime family is the one known disagreement
    assert failing == [5]
    assert code == 1 and data["ok"] is False
    bad = [i["label"] for i in data["checks"][4]["items"] if not i["ok"]]
    assert bad == ["(p,n)=(3,3) orbit count"]
