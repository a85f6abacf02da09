"""Square-free polynomial picture of ring elements.

Each factor of each term receives its own block of fresh variables; a cell
``(x_1, ..., x_m)`` becomes the monomial of all variables of all ``x_i``.
"""

from __future__ import annotations

import string
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product

from .ring import RingElement

Monomial = tuple[int, ...]


def _var_name(i: int) -> str:
    letters = string.ascii_lowercase
    return letters[i % 26] + (str(i // 26) if i >= 26 else "")


@dataclass(frozen=True)
class StanleyReisnerPoly:
    """Integer combination of square-free monomials.

    ``monomials`` maps sorted variable-index tuples to coefficients;
    ``blocks[b]`` lists the variable indices belonging to one factor copy.
    """

    monomials: Mapping[Monomial, int]
    nvars: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(_var_name(i) for i in range(self.nvars))

    def __len__(self) -> int:
        return len(self.monomials)

    def evaluate(self, point) -> int:
        """Value at ``point`` (a scalar used for every variable, or a sequence)."""
        if isinstance(point, (int, float)):
            point = [point] * self.nvars
        total = 0
        for mono, c in self.monomials.items():
            term = c
            for v in mono:
                term *= point[v]
            total += term
        return total

    def euler_characteristic(self) -> int:
        """Block-signed evaluation at all variables equal to -1.

        Every factor block touched by a monomial contributes
        ``-(-1)^(degree in that block)``, i.e. the Euler weight of the factor
        cell.  For single-factor terms this is exactly ``-f(-1, ..., -1)``.
        """
        block_of = {}
        for b, vs in enumerate(self.blocks):
            for v in vs:
                block_of[v] = b
        total = 0
        for mono, c in self.monomials.items():
            degs: dict[int, int] = {}
            for v in mono:
                degs[block_of[v]] = degs.get(block_of[v], 0) + 1
            w = c
            for d in degs.values():
                w *= 1 if d % 2 else -1
            total += w
        return total

    def specialize(self) -> tuple[int, ...]:
        """Univariate image ``f(t, t, ..., t)`` as a coefficient tuple."""
        if not self.monomials:
            return ()
        top = max(len(m) for m in self.monomials)
        out = [0] * (top + 1)
        for mono, c in self.monomials.items():
            out[len(mono)] += c
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def linear_part(self) -> dict[Monomial, int]:
        return {m: c for m, c in self.monomials.items() if len(m) == 1}

    def _shifted(self, k: int) -> StanleyReisnerPoly:
        return StanleyReisnerPoly(
            {tuple(v + k for v in m): c for m, c in self.monomials.items()},
            self.nvars,
            tuple(tuple(v + k for v in b) for b in self.blocks),
        )

    def __add__(self, other: StanleyReisnerPoly) -> StanleyReisnerPoly:
        """Disjoint union: the variables of ``other`` are renamed past ours."""
        o = other._shifted(self.nvars)
        mono = dict(self.monomials)
        for m, c in o.monomials.items():
            mono[m] = mono.get(m, 0) + c
        return StanleyReisnerPoly(_clean(mono), self.nvars + other.nvars, self.blocks + o.blocks)

    def __neg__(self) -> StanleyReisnerPoly:
        return StanleyReisnerPoly({m: -c for m, c in self.monomials.items()}, self.nvars, self.blocks)

    def __mul__(self, other: StanleyReisnerPoly) -> StanleyReisnerPoly:
        """Product with disjoint variables; no monomial can repeat a variable."""
        o = other._shifted(self.nvars)
        mono: dict[Monomial, int] = {}
        for (ma, ca), (mb, cb) in product(self.monomials.items(), o.monomials.items()):
            m = tuple(sorted(ma + mb))
            mono[m] = mono.get(m, 0) + ca * cb
        return StanleyReisnerPoly(_clean(mono), self.nvars + other.nvars, self.blocks + o.blocks)

    def pretty(self) -> str:
        names = self.variables
        parts = []
        for m, c in sorted(self.monomials.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = "".join(names[v] for v in m)
            parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{word}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else (s or "0")


def _clean(mono: dict[Monomial, int]) -> dict[Monomial, int]:
    return {m: c for m, c in mono.items() if c}


def stanley_reisner(e: RingElement) -> StanleyReisnerPoly:
    """Polynomial of ``e`` with fresh variables per factor of every term."""
    mono: dict[Monomial, int] = {}
    blocks: list[tuple[int, ...]] = []
    nvars = 0
    for coef, term in e.terms:
        var_maps = []
        for f in term.factors:
            vmap = {v: nvars + i for i, v in enumerate(f.vertices)}
            blocks.append(tuple(vmap.values()))
            nvars += len(vmap)
            var_maps.append(vmap)
        for cell in term.kron_cells:
            m = tuple(sorted(vm[v] for vm, s in zip(var_maps, cell) for v in s))
            mono[m] = mono.get(m, 0) + coef
    return StanleyReisnerPoly(_clean(mono), nvars, tuple(blocks))
