import os
import sys

import pytest

# allow running the tests from a fresh checkout without installing
_SRC = os.path.join(os.path.dirname(__file__), "..", "src")
if os.path.isdir(_SRC) and _SRC not in sys.path:
    try:
        import dedsums  # noqa: F401
    except ImportError:
        sys.path.insert(0, os.path.abspath(_SRC))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("DEDSUMS_RELEASE") == "1":
        return
    skip = pytest.mark.skip(reason="release-scale sweep; set DEDSUMS_RELEASE=1 to run")
    for item in items:
        if "release" in item.keywords:
            item.add_marker(skip)
