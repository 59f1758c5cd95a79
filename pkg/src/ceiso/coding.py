"""Bijective integer codings shared by several modules."""
from __future__ import annotations

from math import isqrt


def pair(a: int, b: int) -> int:
    """Cantor pairing, strictly increasing in each argument."""
    if a < 0 or b < 0:
        raise ValueError("pair() takes non-negative integers")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(code: int) -> tuple[int, int]:
    if code < 0:
        raise ValueError("unpair() takes a non-negative integer")
    w = (isqrt(8 * code + 1) - 1) // 2
    b = code - w * (w + 1) // 2
    return w - b, b


def tuple_code(values) -> int:
    """Iterated left-to-right pairing; a bijection from N^k onto N for each fixed k."""
    values = list(values)
    if not values:
        return 0
    acc = values[0]
    if acc < 0:
        raise ValueError("tuple_code() takes non-negative integers")
    for v in values[1:]:
        acc = pair(acc, v)
    return acc


def tuple_decode(code: int, length: int) -> tuple[int, ...]:
    if length == 0:
        if code != 0:
            raise ValueError("the empty tuple has code 0 only")
        return ()
    out = []
    for _ in range(length - 1):
        code, last = unpair(code)
        out.append(last)
    out.append(code)
    return tuple(reversed(out))


def zigzag(z: int) -> int:
    """Code an integer as a natural number: 0, -1, 1, -2, 2, ... get 0, 1, 2, 3, 4, ..."""
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(code: int) -> int:
    if code < 0:
        raise ValueError("codes are non-negative")
    return code // 2 if code % 2 == 0 else -(code + 1) // 2
