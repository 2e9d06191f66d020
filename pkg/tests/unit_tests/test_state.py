import pytest

from hyperext.state import Check, Command, RunConfig, VerificationReport


def test_report_records_failures() -> None:
    report = VerificationReport("demo", seed=1)
    report.record(True, "fine")
    report.record(False, "broken")
    report.absorb(["a", "b"])
    assert report.checked == 3
    assert report.failures == ["broken", "a", "b"]
    assert not report.ok
    assert report.to_dict() == {"check": "demo", "seed": 1, "checked": 3, "ok": False, "failures": ["broken", "a", "b"]}


def test_merge_prefixes_failures() -> None:
    outer = VerificationReport("outer")
    inner = VerificationReport("inner")
    inner.record(False, "x")
    assert outer.merge(inner).failures == ["inner: x"]
    assert outer.checked == 1


def test_run_config_validation() -> None:
    with pytest.raises(ValueError):
        RunConfig(Command.CLASSIFY, trials=0)
    with pytest.raises(ValueError):
        RunConfig(Command.VERIFY)
    assert RunConfig(Command.VERIFY, check=Check.NBC).check is Check.NBC
