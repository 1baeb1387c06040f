import os

import pytest
from hypothesis import HealthCheck, settings

from planar_emulator import build, gen_instance, suite, two_ring

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def ring():
    return two_ring()


@pytest.fixture(scope="session")
def ring_build(ring):
    return build(ring)


@pytest.fixture(scope="session")
def suite_specs():
    return suite(50)


@pytest.fixture(scope="session")
def suite_builds(suite_specs):
    """``(spec, instance, build result, wall seconds)`` for the whole suite."""
    import time
    out = []
    for spec in suite_specs:
        inst = gen_instance(spec)
        t0 = time.perf_counter()
        res = build(inst, seed=spec.seed)
        out.append((spec, inst, res, time.perf_counter() - t0))
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
