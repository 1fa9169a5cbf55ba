"""Acceptance criteria, each at its stated tolerance.

Every test prints one PASS/FAIL line; the lines are also collected into an
"acceptance criteria" section at the end of the pytest report.  Randomised
criteria use the committed seed ``checks.DEFAULT_SEED``.
"""

import pytest

from qcentral import checks

CASES = [
    ("eigenvector", "1 eigenvector certification"),
    ("holomorphic", "2 holomorphic family identity"),
    ("decay", "3 decay law"),
    ("summability", "4 summability threshold"),
    ("relations", "5 operator relations"),
    ("spectrum", "6 spectral interval"),
    ("fusion", "7 fusion homomorphisms"),
    ("structure", "8 structural criteria"),
    ("scheduler", "9 scheduler"),
    ("oracle", "10 closed form vs recurrence"),
]


@pytest.mark.parametrize("key,label", CASES, ids=[c[0] for c in CASES])
def test_criterion(key, label, record_property):
    fn = checks.CRITERIA[key]
    res = fn(checks.DEFAULT_SEED) if key in checks._SEEDED else fn()
    line = res.line()
    if key == "holomorphic":
        line += f" cauchy_riemann={res.detail['max_cauchy_riemann']:.3e} tol=1.0e-06"
    print(line)
    record_property("acceptance_line", line)
    assert res.name == label
    assert res.passed, f"{res.line()} {res.detail}"
