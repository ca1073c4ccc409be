import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from abdim.exactmath import FieldCtx  # noqa: E402
from abdim.paperlab import JSConfig, ci_ring, js_module, js_ring  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GF7 = FieldCtx.prime(7)
GF5 = FieldCtx.prime(5)
QQ = FieldCtx.rationals()


@pytest.fixture(scope="session")
def js_cfg():
    return JSConfig(GF7, 3)


@pytest.fixture(scope="session")
def js_algebra(js_cfg):
    return js_ring(js_cfg)


@pytest.fixture(scope="session")
def js_M(js_cfg, js_algebra):
    return js_module(js_cfg, js_algebra)


@pytest.fixture(scope="session")
def ci5():
    return ci_ring(GF5)


@pytest.fixture(scope="session")
def ci_qq():
    return ci_ring(QQ)
