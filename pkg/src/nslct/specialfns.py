"""Self-contained gamma and digamma for the inequality constants.

Only positive real arguments are needed (constants like pi^a * (Gamma((n-a)/4)
/ Gamma((n+a)/4))^2 and psi(n/2)), so both routines stay double precision and
dependency-free: gamma uses a 15-term rational coefficient table, digamma the
shift recurrence followed by the asymptotic log series.
"""
from __future__ import annotations

import math

from .errors import DomainError

_LANCZOS_G = 607.0 / 128.0
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

# coefficients of -psi's tail: psi(x) ~ ln x - 1/(2x) - sum c_k / x^(2k)
_PSI_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def _check_arg(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} needs a positive finite argument, got {x!r}")
    return x


def gamma_fn(x: float) -> float:
    """Gamma(x) for x > 0, accurate to ~1e-14 relative on [0.05, 10]."""
    x = _check_arg(x, "gamma_fn")
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (x - 1.0 + k)
    t = x + _LANCZOS_G - 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x - 0.5) * math.exp(-t) * acc


def digamma_fn(x: float) -> float:
    """psi(x) = Gamma'(x) / Gamma(x) for x > 0.

    Shift x upward with psi(x) = psi(x + 1) - 1/x until the asymptotic
    series converges at double precision, then sum it in 1/x^2.
    """
    x = _check_arg(x, "digamma_fn")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    u = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_PSI_TAIL):
        tail = tail * u + c
    return acc + math.log(x) - 0.5 / x - tail * u
