"""Global size limits and tolerances."""

import os

# Largest table we are willing to materialize (number of complex entries).
DEFAULT_SIZE_CAP = 10**8

# All constructed values are sums of p-th roots of unity scaled by powers
# of p; double precision keeps them well inside this comparison tolerance.
DEFAULT_TOL = 1e-10


def size_cap() -> int:
    """Current table-size cap, overridable via VILWAV_SIZE_CAP."""
    raw = os.environ.get("VILWAV_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    return int(raw)


class SizeCapError(ValueError):
    """A requested table would exceed the configured size cap."""
