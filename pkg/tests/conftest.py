import warnings

import pytest

from feqtool.exceptions import AccuracyWarning


@pytest.fixture(autouse=True)
def _accuracy_warnings_are_errors():
    # a silent accuracy shortfall in any test should surface loudly
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        yield


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b)


from hypothesis import settings as _settings

_settings.register_profile("repro", derandomize=True, deadline=None)
_settings.load_profile("repro")
