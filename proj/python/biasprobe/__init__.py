"""Python bindings for the biasprobe C++ core."""

import json as _json

from ._core import (  # noqa: F401
    DomainError,
    InputError,
    TransportError,
    __version__,
    bias_ratio,
    builtin_lexicon,
    certainty,
    coefficient_of_variation,
    determiner,
    normalized_ratio,
    pearson,
    probe_set,
    render_template,
    total_frequency,
)
from ._core import analyze_config as _analyze_config


def analyze(config, out=None):
    """Run frequency estimation and analysis; return the report as a dict."""
    return _json.loads(_analyze_config(str(config), None if out is None else str(out)))
