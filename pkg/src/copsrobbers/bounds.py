"""Closed-form cop-number bounds for bounded diameter, girth and digraphs.

Exponents are exact :class:`~fractions.Fraction` values wherever the bound
is rational; ``o(1)`` corrections are never given a number and only show
up as the ``asymptotic`` flag. Logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any


class BoundError(ValueError):
    pass


def ceil_log2(x: Fraction | int) -> int:
    """Exact ``ceil(log2(x))`` for rational ``x > 0``."""
    x = Fraction(x)
    if x <= 0:
        raise BoundError("log of a non-positive number")
    k = 0
    if x >= 1:
        while Fraction(2) ** k < x:
            k += 1
        return k
    while Fraction(2) ** (k - 1) >= x:
        k -= 1
    return k


def rho_from_girth(g: int) -> int:
    return (g + 1) // 4


@dataclass
class BoundReport:
    name: str
    params: dict[str, Any]
    exponent: Fraction | float
    cops: int
    slack_cops: int
    asymptotic: bool = True
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        e = self.exponent
        d["exponent"] = str(e) if isinstance(e, Fraction) else e
        d["exponent_float"] = float(e)
        return d


def _need(params: dict[str, Any], *keys: str) -> list[Any]:
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise BoundError(f"missing parameter(s): {', '.join(missing)}")
    for k in keys:
        if params[k] <= 0:
            raise BoundError(f"parameter {k} must be positive")
    return [params[k] for k in keys]


def lu_peng_exponent(n: int) -> float:
    # n * 2^{-sqrt(log n)} = n^{1 - 1/sqrt(log n)}
    lg = math.log2(n)
    return 1.0 - 1.0 / math.sqrt(lg) if lg > 0 else 1.0


def cor2_exponent(d: int) -> Fraction:
    if d < 2:
        raise BoundError("diameter bounds need d >= 2")
    return 1 - Fraction(1, ceil_log2(d) + 1)


def thm7_exponent(d: int) -> Fraction:
    if d < 2:
        raise BoundError("diameter bounds need d >= 2")
    return 1 - Fraction(2, 2 * ceil_log2(d) + 1)


def thm9_exponent(d: int, rho: int) -> Fraction:
    if rho < 1:
        raise BoundError("rho must be at least 1")
    k = ceil_log2(Fraction(d, rho))
    if k < 1:
        raise BoundError("girth bound needs d > rho")
    return 1 - Fraction(2, 2 * k + 1)


def densification_gamma(alpha: Fraction, i: int) -> Fraction:
    """``(1 - 2 alpha) * sum_{j<=i} 2^-j``: density gain after ``i`` repeats."""
    alpha = Fraction(alpha)
    return (1 - 2 * alpha) * (1 - Fraction(1, 2**i))


def gamma_limit(alpha: Fraction) -> Fraction:
    return 1 - 2 * Fraction(alpha)


def diam4_conditions(alpha: Fraction, gamma: Fraction) -> bool:
    """gamma = 1 - 2 alpha (o(1) dropped) and 2 alpha - gamma <= 1 - alpha."""
    alpha, gamma = Fraction(alpha), Fraction(gamma)
    return gamma == 1 - 2 * alpha and 2 * alpha - gamma <= 1 - alpha


def diam3_conditions(alpha: Fraction, gamma: Fraction) -> bool:
    """gamma = 1 - 2 alpha (o(1) dropped) and 2 alpha - 2 gamma <= 1 - alpha."""
    alpha, gamma = Fraction(alpha), Fraction(gamma)
    return gamma == 1 - 2 * alpha and 2 * alpha - 2 * gamma <= 1 - alpha


def polylog_slack(n: int) -> float:
    return max(1.0, math.log2(n) ** 2) if n > 1 else 1.0


def _count(n: int | None, exponent: Fraction | float) -> int:
    if n is None:
        return 0
    return math.ceil(n ** float(exponent))


NAMES = ("thm1", "cor2", "thm5", "thm6", "thm7", "thm9", "thm11")


def evaluate(name: str, params: dict[str, Any]) -> BoundReport:
    """Evaluate one named bound.

    Accepted names: ``thm1`` (general graphs), ``cor2`` (diameter, prior
    bound), ``thm5`` (diameter 4), ``thm6`` (diameter 3), ``thm7``
    (diameter ``d``), ``thm9`` (diameter ``d`` and girth ``g`` or ``rho``),
    ``thm11`` (digraphs of diameter 2).
    """
    key = str(name).lower().replace(" ", "")
    key = {"1": "thm1", "2": "cor2", "5": "thm5", "6": "thm6", "7": "thm7", "9": "thm9", "11": "thm11"}.get(key, key)
    p = {k: v for k, v in params.items() if v is not None}
    n = p.get("n")
    notes: list[str] = []
    if key == "thm1":
        (n,) = _need(p, "n")
        e: Fraction | float = lu_peng_exponent(n)
        notes.append("exponent of n * 2^-sqrt(log n); the o(1) in the 2-exponent is dropped")
    elif key == "cor2":
        (d,) = _need(p, "d")
        e = cor2_exponent(d)
    elif key == "thm5":
        e = Fraction(3, 5)
    elif key == "thm6":
        e = Fraction(4, 7)
    elif key == "thm7":
        (d,) = _need(p, "d")
        e = thm7_exponent(d)
    elif key == "thm9":
        (d,) = _need(p, "d")
        if p.get("rho") is None:
            (g,) = _need(p, "g")
            p["rho"] = rho_from_girth(g)
            notes.append(f"rho = floor((g+1)/4) = {p['rho']}")
        e = thm9_exponent(d, p["rho"])
    elif key == "thm11":
        (n,) = _need(p, "n")
        cops = math.isqrt(2 * n)
        return BoundReport("thm11", p, Fraction(1, 2), cops, cops, asymptotic=False,
                           notes=["c(D) <= floor(sqrt(2n)), exact"])
    else:
        raise BoundError(f"unknown bound {name!r}; known: {', '.join(NAMES)}")
    cops = _count(n, e)
    slack = math.ceil(cops * polylog_slack(n)) if n else 0
    return BoundReport(key, p, e, cops, slack, asymptotic=True, notes=notes)
