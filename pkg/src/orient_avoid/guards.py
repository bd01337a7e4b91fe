"""Size limits for the exhaustive searches.

Setting ``ORIENT_AVOID_GUARD_OVERRIDE=1`` disables every limit.  That is
unsafe: the searches are exponential and will happily run for hours.
"""

from __future__ import annotations

import os

ENV_VAR = "ORIENT_AVOID_GUARD_OVERRIDE"


class GuardExceeded(ValueError):
    """Input is too large for an exhaustive routine."""


def overridden() -> bool:
    return os.environ.get(ENV_VAR, "").strip().lower() not in ("", "0", "false", "no")


def check(what: str, value, limit) -> None:
    if value > limit and not overridden():
        raise GuardExceeded(f"{what} = {value} exceeds the limit {limit} (set {ENV_VAR}=1 to lift)")
