"""Nonnegative rationals extended by an explicit infinity.

``INF`` is a singleton that compares above every rational and absorbs
addition, so ``min`` and ``+`` stay exact without floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union


@total_ordering
class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("gleafkit.INF")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtRational = Union[Fraction, _Infinity]


def ext(value) -> ExtRational:
    """Coerce ints, Fractions, rational strings and ``"inf"`` to an extended rational."""
    if value is INF:
        return INF
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "infinity", "+inf"):
            return INF
        return Fraction(s)
    if not isinstance(value, Rational):
        raise TypeError(f"{value!r} is not rational; pass an int, a Fraction or a rational string")
    return Fraction(value)


def fmt(value: ExtRational) -> str:
    return "inf" if value is INF else str(value)
