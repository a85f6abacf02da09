"""Bundled invariants with a stable JSON layout."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..core.ring import RingElement
from ..errors import TooLarge
from .characteristics import (
    as_element,
    clique_number,
    euler_characteristic,
    euler_polynomial,
    f_matrix,
    f_vector,
    fermi_characteristic,
    wu_characteristic,
)
from .cohomology import betti_numbers, interaction_betti
from .curvature import curvature
from .dimension import dimension

FIELDS = (
    "chi",
    "fermi",
    "wu",
    "f_vector",
    "euler_polynomial",
    "f_matrix",
    "betti",
    "poincare_polynomial",
    "interaction_betti",
    "dim_inductive",
    "clique_number",
)


@dataclass
class InvariantReport:
    chi: int
    fermi: int | None
    wu: dict[int, int]
    f_vector: list[int]
    euler_polynomial: list[int]
    f_matrix: list[list[int]]
    betti: list[int] | None
    poincare_polynomial: list[int] | None
    interaction_betti: list[int] | None
    dim_inductive: list[Fraction] | None
    clique_number: int
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "chi": self.chi,
            "fermi": self.fermi,
            "wu": {str(k): v for k, v in sorted(self.wu.items())},
            "f_vector": self.f_vector,
            "euler_polynomial": self.euler_polynomial,
            "f_matrix": self.f_matrix,
            "betti": self.betti,
            "poincare_polynomial": self.poincare_polynomial,
            "interaction_betti": self.interaction_betti,
            "dim_inductive": None if self.dim_inductive is None else [str(d) for d in self.dim_inductive],
            "clique_number": self.clique_number,
        }
        out.update(self.extras)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def invariant_report(
    e: RingElement,
    betti: bool = True,
    wu_orders: tuple[int, ...] = (2,),
    with_curvature: bool = False,
    interaction_cap: int = 40,
    dimension_cap: int = 200,
) -> InvariantReport:
    """Compute the report; fields too expensive for ``e`` are left as ``None``."""
    el = as_element(e)
    single_positive = len(el.terms) == 1 and el.terms[0][0] == 1
    b = list(betti_numbers(el)) if betti else None
    inter = None
    if single_positive and len(el.terms[0][1].factors) == 1:
        g = el.terms[0][1].factors[0]
        try:
            inter = list(interaction_betti(g, cap=interaction_cap))
        except TooLarge:
            inter = None
    dims = None
    if el.terms and all(len(f) <= dimension_cap for _, t in el.terms for f in t.factors):
        dims = dimension(el)
    report = InvariantReport(
        chi=euler_characteristic(el),
        fermi=fermi_characteristic(el) if single_positive else None,
        wu={k: wu_characteristic(el, k) for k in wu_orders},
        f_vector=list(f_vector(el)),
        euler_polynomial=list(euler_polynomial(el)),
        f_matrix=f_matrix(el).tolist(),
        betti=b,
        poincare_polynomial=b,
        interaction_betti=inter,
        dim_inductive=dims,
        clique_number=clique_number(el),
    )
    if with_curvature:
        cmap = curvature(el)
        report.extras["curvature"] = {
            f"{i}:{','.join(map(str, v))}": str(k) for (i, v), k in sorted(cmap.values.items())
        }
    return report
