"""Layered runtime configuration for the service.

Sources merge in increasing precedence: built-in defaults, a ``key = value``
config file, ``SENSEKIT_<KEY>`` environment variables, and explicit
command-line flags.  Unknown keys are rejected early so typos surface at
startup instead of silently falling back to defaults.
"""

from __future__ import annotations

import os

from .errors import ConfigError, FormatError
from .thesaurus import _data_lines

ENV_PREFIX = "SENSEKIT_"

DEFAULTS: dict[str, object] = {
    "host": "127.0.0.1",
    "port": 8000,
    "lexicon": None,
    "thesaurus": None,
    "examples": None,
    "test": None,
    "annotation_log": None,
    "static_dir": None,
    "measure": "table",
    "cooc": None,
    "sbl_model": None,
    "mode": "weighted",
    "alpha": 1.0,
    "lambda": 0.5,
    "smoothing_level": 5,
    "strategy": "tu",
    "k": 1,
    "committee_size": 2,
    "seed": 0,
    "rb_threshold": 0.0,
    "nb_level": 5,
}

_INT_KEYS = {"port", "smoothing_level", "k", "committee_size", "seed", "nb_level"}
_FLOAT_KEYS = {"alpha", "lambda", "rb_threshold"}


def _coerce(key: str, value: object):
    if value is None or not isinstance(value, str):
        return value
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
    except ValueError:
        raise ConfigError(f"config key {key!r} expects a number, got {value!r}") from None
    return value


def load_config_file(source, path=None) -> dict[str, object]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments ignored."""
    out: dict[str, object] = {}
    for number, text in _data_lines(source):
        key, sep, value = text.partition("=")
        if not sep:
            raise FormatError(f"expected 'key = value', got {text!r}", path, number)
        key = key.strip().lower()
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        out[key] = _coerce(key, value.strip())
    return out


def build_config(file_values: dict | None = None, environ=None,
                 flag_values: dict | None = None) -> dict[str, object]:
    """Merge defaults < config file < environment < flags."""
    merged = dict(DEFAULTS)
    if file_values:
        for key, value in file_values.items():
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, value)
    environ = os.environ if environ is None else environ
    for key in DEFAULTS:
        env_key = ENV_PREFIX + key.upper()
        if env_key in environ:
            merged[key] = _coerce(key, environ[env_key])
    if flag_values:
        for key, value in flag_values.items():
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            if value is not None:
                merged[key] = _coerce(key, value)
    return merged
