import math

from core.errors import DomainError

_AGM_RTOL = 1e-15
_AGM_MAX_ITER = 64


def complete_elliptic_K(m: float) -> float:
    """
    K(m) = integral of 1/sqrt(1 - m sin(t)**2) over [0, pi/2], parameter convention.

    Computed as pi / (2 AGM(1, sqrt(1 - m))), which converges quadratically
    for every m < 1, negative parameters included.

    Raises:
        DomainError: If m >= 1
    """
    if not m < 1.0:
        raise DomainError(f"K(m) diverges for m >= 1, got m={m}")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= _AGM_RTOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)
