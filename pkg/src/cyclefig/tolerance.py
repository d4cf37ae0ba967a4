"""Global comparison tolerance.

Every test for "is this zero" in the package goes through
:func:`is_less_than_epsilon`.  The default of 1e-8 is the square root of the
double precision unit roundoff, i.e. half of the available digits.
"""
from contextlib import contextmanager

DEFAULT_EPSILON = 1e-8

_state = {"eps": DEFAULT_EPSILON}


def get_epsilon() -> float:
    return _state["eps"]


def set_epsilon(eps: float) -> None:
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    _state["eps"] = float(eps)


@contextmanager
def epsilon(eps):
    """Temporarily switch the tolerance (``None`` keeps the current one)."""
    old = _state["eps"]
    if eps is not None:
        set_epsilon(eps)
    try:
        yield _state["eps"]
    finally:
        _state["eps"] = old


def is_less_than_epsilon(x, eps=None) -> bool:
    """True iff ``x`` is exactly zero or its modulus is below epsilon."""
    if eps is None:
        eps = _state["eps"]
    return x == 0 or abs(x) < eps
