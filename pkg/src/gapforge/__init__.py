"""gapforge: exact-arithmetic verification of prime-gap inequalities,
computable thresholds, and prime-in-interval claims over configurable
ranges."""

from .errors import (
    CheckpointCorruptionError,
    ConfigError,
    GapforgeError,
    PrecisionExhaustedError,
    ResourceLimitError,
)
from .records import IntervalReport, ViolationRecord
from .sieve import (
    IntervalScan,
    PrimePair,
    PrimeTable,
    floor_pow_rational,
    floor_root,
    is_prime,
    next_prime_after,
    nth_prime,
    prev_prime_before,
    primes_in_open_interval,
    primes_up_to,
)

__version__ = "0.1.0"

__all__ = [
    "CheckpointCorruptionError",
    "ConfigError",
    "GapforgeError",
    "IntervalReport",
    "IntervalScan",
    "PrecisionExhaustedError",
    "PrimePair",
    "PrimeTable",
    "ResourceLimitError",
    "ViolationRecord",
    "floor_pow_rational",
    "floor_root",
    "is_prime",
    "next_prime_after",
    "nth_prime",
    "prev_prime_before",
    "primes_in_open_interval",
    "primes_up_to",
    "__version__",
]
