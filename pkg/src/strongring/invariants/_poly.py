"""Integer polynomials as ascending coefficient tuples, trailing zeros dropped."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

Poly = tuple[int, ...]


def trim(coeffs: Iterable[int]) -> Poly:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def scale(c: int, a: Sequence[int]) -> Poly:
    return trim(c * x for x in a)


def mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return ()
    return trim(np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object)))


def evaluate(a: Sequence[int], t) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * t + c
    return acc


def multi_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def multi_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}
