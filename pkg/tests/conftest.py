"""Shared generators for random test matrices plus the acceptance summary.

test_acceptance.py records one line per criterion through record(); the
terminal summary hook prints them after the run so the outcome of every
criterion is visible at a glance even when -q swallows individual tests.
"""

import numpy as np

# criterion number -> (ok, detail line)
_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(num: int, ok: bool, detail: str) -> None:
    _ACCEPTANCE[num] = (ok, detail)


def rand_herm(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, n))
    y = rng.standard_normal((n, n))
    return (x + x.T) / 2.0 + 1j * (y - y.T) / 2.0


def rand_traceless_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    """Hermitian, exactly zero trace, spectrum scaled into [-1, 1]."""
    a = rand_herm(rng, n)
    a = a - (np.trace(a).real / n) * np.eye(n)
    ev = np.linalg.eigvalsh(a)
    return a / max(abs(ev[0]), abs(ev[-1]))


def rand_contraction(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random positive contraction via a unitary conjugation of uniform eigenvalues."""
    _, q = np.linalg.eigh(rand_herm(rng, n))
    u = rng.uniform(0.0, 1.0, n)
    a = (q * u) @ q.conj().T
    return (a + a.conj().T) / 2.0


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
