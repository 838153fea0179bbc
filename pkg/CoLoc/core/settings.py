"""Runtime settings for planners, simulator and oracle budgets."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from typing import Any


def _to_bool(value: Any, default: bool = False) -> bool:
    if isinstance(value, bool):
        return value
    if value is None:
        return default
    text = str(value).strip().lower()
    if text in {"1", "true", "yes", "on"}:
        return True
    if text in {"0", "false", "no", "off"}:
        return False
    return default


def _to_int(value: Any, default: int) -> int:
    try:
        return int(value)
    except Exception:
        return default


@dataclass(frozen=True)
class RuntimeSettings:
    """Budgets and defaults consumed across the package."""

    log_level: str = "INFO"
    default_modulus: int = 65537
    exhaustive_pattern_limit: int = 100_000
    sampled_patterns: int = 1_000
    corruption_values: int = 3
    simulator_threads: int = 1
    oracle_max_symbols: int = 14
    oracle_max_domain: int = 32
    oracle_max_class: int = 10_000
    sparse_search_budget: int = 10_000_000
    sparse_search_max_e: int = 3
    line_search_limit: int = 512
    line_enumeration_budget: int = 2_000_000
    color_output: bool = True

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def load_runtime_settings(**overrides: Any) -> RuntimeSettings:
    """Load settings from env with explicit override precedence."""
    env = os.environ
    defaults = RuntimeSettings()
    return RuntimeSettings(
        log_level=str(overrides.get("log_level", env.get("COLOC_LOG_LEVEL", defaults.log_level))),
        default_modulus=_to_int(
            overrides.get("default_modulus", env.get("COLOC_DEFAULT_MODULUS")), defaults.default_modulus
        ),
        exhaustive_pattern_limit=_to_int(
            overrides.get("exhaustive_pattern_limit", env.get("COLOC_EXHAUSTIVE_PATTERN_LIMIT")),
            defaults.exhaustive_pattern_limit,
        ),
        sampled_patterns=_to_int(
            overrides.get("sampled_patterns", env.get("COLOC_SAMPLED_PATTERNS")), defaults.sampled_patterns
        ),
        corruption_values=_to_int(
            overrides.get("corruption_values", env.get("COLOC_CORRUPTION_VALUES")), defaults.corruption_values
        ),
        simulator_threads=max(
            1,
            _to_int(overrides.get("simulator_threads", env.get("COLOC_SIMULATOR_THREADS")), defaults.simulator_threads),
        ),
        oracle_max_symbols=_to_int(
            overrides.get("oracle_max_symbols", env.get("COLOC_ORACLE_MAX_SYMBOLS")), defaults.oracle_max_symbols
        ),
        oracle_max_domain=_to_int(
            overrides.get("oracle_max_domain", env.get("COLOC_ORACLE_MAX_DOMAIN")), defaults.oracle_max_domain
        ),
        oracle_max_class=_to_int(
            overrides.get("oracle_max_class", env.get("COLOC_ORACLE_MAX_CLASS")), defaults.oracle_max_class
        ),
        sparse_search_budget=_to_int(
            overrides.get("sparse_search_budget", env.get("COLOC_SPARSE_SEARCH_BUDGET")),
            defaults.sparse_search_budget,
        ),
        sparse_search_max_e=_to_int(
            overrides.get("sparse_search_max_e", env.get("COLOC_SPARSE_SEARCH_MAX_E")), defaults.sparse_search_max_e
        ),
        line_search_limit=_to_int(
            overrides.get("line_search_limit", env.get("COLOC_LINE_SEARCH_LIMIT")), defaults.line_search_limit
        ),
        line_enumeration_budget=_to_int(
            overrides.get("line_enumeration_budget", env.get("COLOC_LINE_ENUMERATION_BUDGET")),
            defaults.line_enumeration_budget,
        ),
        color_output=_to_bool(overrides.get("color_output", env.get("COLOC_COLOR_OUTPUT")), default=True),
    )
