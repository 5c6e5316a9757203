import pytest

from core.errors import PreconditionError, ResourceLimitError
from services.verification_service import CHECKS, VerificationService


@pytest.fixture(scope="module")
def verifier() -> VerificationService:
    return VerificationService(threads=1)


def test_registered_checks(verifier):
    assert verifier.checks == list(CHECKS)


@pytest.mark.parametrize("check,n,webs", [
    ("rs-example", None, None),
    ("f-yt-chain", None, None),
    ("tau-commute", None, 2),
    ("cells-equal-rs-fibers", 4, None),
    ("klexchange", 4, None),
    ("klexchange", 5, None),
    ("kk-roundtrip", None, 2),
    ("gentau-match", None, 2),
    ("s-squared", None, 3),
    ("negative-coefficient", 2, None),
])
def test_fast_checks_pass(verifier, check, n, webs):
    report = verifier.run(check, n=n, webs=webs)
    assert report.passed, report.counterexample
    assert report.check == check
    assert report.counterexample is None
    assert report.duration_seconds >= 0


def test_report_contents(verifier):
    report = verifier.run("f-yt-chain")
    assert report.params == {}
    assert report.details == {"path": [[5, 4], [4, 3], [2, 1], [3, 4]], "end": "1,4,6/2,5/3"}
    report = verifier.run("kk-roundtrip", webs=2)
    assert report.params == {"webs": 2}
    assert report.details == {"webs": {1: 1, 2: 5}}


def test_negative_coefficient_scans_every_generator_by_default(verifier):
    report = verifier.run("negative-coefficient", n=2)
    assert report.passed
    assert report.details["generators"] == [1, 2, 3, 4, 5]
    assert "generators" not in report.params
    report = verifier.run("negative-coefficient", n=3, generators=[4, 1, 4])
    assert report.passed
    assert report.params["generators"] == [1, 4]
    assert report.details["generators"] == [1, 4]
    assert set(report.details["per_generator"]) <= {1, 4}


def test_unknown_check(verifier):
    with pytest.raises(PreconditionError):
        verifier.run("everything")


def test_parameter_bounds(verifier):
    with pytest.raises(ResourceLimitError):
        verifier.run("kk-roundtrip", webs=6)
    with pytest.raises(ResourceLimitError):
        verifier.run("s-squared", webs=4)
    with pytest.raises(ResourceLimitError):
        verifier.run("negative-coefficient", n=8)


@pytest.mark.slow
def test_character_on_six_points(verifier):
    assert verifier.run("character-n2").passed


@pytest.mark.slow
def test_negative_coefficient_on_eighteen_points():
    report = VerificationService().run("negative-coefficient", n=6, generators=[1])
    assert report.passed
    assert report.details["generators"] == [1]
    assert report.details["witness"]["coefficient"] == -2
