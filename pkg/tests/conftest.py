import pytest

from leometa import SystemConfig, default_rules, derive


@pytest.fixture(scope="session")
def dense_config():
    # Roughly a thousand satellites at 200 km.
    return SystemConfig(altitude=2e5, density=1e-12, sir_threshold=0.1)


@pytest.fixture(scope="session")
def dense_geo(dense_config):
    return derive(dense_config)


@pytest.fixture(scope="session")
def rules_default():
    return default_rules()


@pytest.fixture(scope="session")
def rules_fast():
    # Plenty for unit-level checks with loose tolerances; the default
    # order is reserved for the acceptance gates.
    return default_rules(256)
