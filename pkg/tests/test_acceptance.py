"""Acceptance criteria 1-10. Each prints one PASS/FAIL line and asserts.

Tolerances live in isingx.verify next to each check: exact Fraction
equality for coefficients and counts; 1e-8 for the order-30 series against
512^2-node quadrature at x = 0.05; 1e-10 between the Wannier and triangular
integrands; 1e-8 for the Onsager kappa form at betaJ = 0.1, 0.2; runtime
budgets of 10 s, 30 s, 300 s (V = 25 enumeration) and 60 s.
"""
import json

import pytest

from isingx import cli, verify


def _line(res):
    status = "PASS" if res.passed else "FAIL"
    line = f"criterion {res.id}: {status} {res.name} ({res.seconds:.2f} s)"
    if not res.passed:
        line += f" | {res.detail}: expected {res.expected}, got {res.actual}"
    return line


@pytest.mark.parametrize("cid", sorted(verify.CHECKS), ids=lambda c: f"criterion_{c}")
def test_criterion(cid, capsys):
    res = verify.CHECKS[cid]()
    with capsys.disabled():
        print("\n" + _line(res))
    failed = [s["name"] for s in res.subchecks if not s["passed"]]
    assert res.passed, f"criterion {cid} failed: {failed}"


def test_verify_report(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = cli.main(["verify", "--suite", "fast", "--report", str(report)])
    capsys.readouterr()
    data = json.loads(report.read_text())
    assert data["schema_version"] == "1"
    assert [c["id"] for c in data["checks"]] == list(range(1, 11))
    assert data["triangular_sign_convention"] == "coefficient-list"
    assert code == (0 if data["passed"] else 1)
