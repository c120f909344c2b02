"""ctest entry point: exit 77 when the extension is not installed."""

import sys

try:
    import biasprobe  # noqa: F401
except ImportError:
    print("biasprobe module not installed; run `pip install --no-build-isolation .`")
    sys.exit(77)

import pytest

sys.exit(pytest.main(["-q", "-p", "no:cacheprovider", *sys.argv[1:]]))
