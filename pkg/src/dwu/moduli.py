"""Moduli of orientation-twisted bundles on surfaces via holonomy tuples.

A surface is a fundamental-group presentation: one generator list with
orientation characters (+1 for orientable handles, -1 for crosscap loops) and
one relator word.  Holonomy points are generator tuples satisfying the relator
whose signs match the orientation characters; the even subgroup acts by
simultaneous conjugation.

Presentations used:
  sphere         no generators, empty relator
  orientable g   a1 b1 .. ag bg, relator prod_i [b_i, a_i]
  Klein bottle   <a, b | a b a b^-1> with a even, b odd (the two-generator
                 model whose holonomy set is {(g, s): s g^-1 s^-1 = g})
  nonorientable k (k != 2)   x1 .. xk all odd, relator x1^2 .. xk^2

The commutators in the orientable relator are ordered so that the transgressed
pairing reproduces the standard torus phase lambda(g2,g1) - lambda(g1,g2).
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass

from dwu.groups import FiniteGroup, GradedGroup, ResourceBudgetError

DEFAULT_BUDGET = 5_000_000


def enumeration_budget() -> int:
    env = os.environ.get("DW_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Surface:
    """A closed surface with its presentation data."""

    kind: str  # "orientable" | "nonorientable"
    param: int  # genus g >= 0 | crosscaps k >= 1

    def __post_init__(self):
        if self.kind == "orientable":
            if self.param < 0:
                raise ValueError("genus must be >= 0")
        elif self.kind == "nonorientable":
            if self.param < 1:
                raise ValueError("crosscap count must be >= 1")
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.param if self.kind == "orientable" else 2 - self.param

    @property
    def orientable(self) -> bool:
        return self.kind == "orientable"

    def generator_characters(self) -> tuple:
        """+1/-1 orientation character per generator."""
        if self.kind == "orientable":
            return (1,) * (2 * self.param)
        if self.param == 2:
            return (1, -1)  # Klein bottle model: a even, b odd
        return (-1,) * self.param

    def relator(self) -> list[tuple[int, int]]:
        """The relator word as (generator index, exponent) letters."""
        if self.kind == "orientable":
            word = []
            for i in range(self.param):
                a, b = 2 * i, 2 * i + 1
                word += [(b, 1), (a, 1), (b, -1), (a, -1)]
            return word
        if self.param == 2:
            return [(0, 1), (1, 1), (0, 1), (1, -1)]
        return [(i, 1) for i in range(self.param) for _ in range(2)]

    @property
    def name(self) -> str:
        if self.kind == "orientable":
            return {0: "S2", 1: "T2"}.get(self.param, f"Sigma_g={self.param}")
        return {1: "RP2", 2: "K"}.get(self.param, f"N_k={self.param}")

    def __repr__(self):
        return f"Surface({self.name})"


SPHERE = Surface("orientable", 0)
TORUS = Surface("orientable", 1)
RP2 = Surface("nonorientable", 1)
KLEIN = Surface("nonorientable", 2)


def parse_surface(spec: str) -> Surface:
    spec = spec.strip()
    fixed = {"S2": SPHERE, "T2": TORUS, "RP2": RP2, "K": KLEIN}
    if spec in fixed:
        return fixed[spec]
    m = re.fullmatch(r"Sigma_g=(\d+)", spec)
    if m:
        return Surface("orientable", int(m.group(1)))
    m = re.fullmatch(r"N_k=(\d+)", spec)
    if m:
        return Surface("nonorientable", int(m.group(1)))
    raise ValueError(f"cannot parse surface spec {spec!r}")


def word_value(group: FiniteGroup, word, holonomy) -> int:
    acc = 0
    for gen, exp in word:
        g = holonomy[gen] if exp == 1 else group.inverse[holonomy[gen]]
        acc = group.table[acc][g]
    return acc


def holonomy_points(surface: Surface, GG: GradedGroup, budget: int | None = None) -> list[tuple]:
    """All generator tuples satisfying the relator and orientation characters."""
    G = GG.group
    chars = surface.generator_characters()
    budget = budget or enumeration_budget()
    pools = []
    for c in chars:
        pools.append([g for g in range(G.order) if GG.sign[g] == c])
    total = 1
    for p in pools:
        total *= len(p)
    if total > budget:
        raise ResourceBudgetError(
            f"holonomy enumeration size {total} exceeds budget {budget}"
        )
    word = surface.relator()
    out = []
    for tup in itertools.product(*pools):
        if word_value(G, word, tup) == 0:
            out.append(tup)
    if not chars:
        out = [()]
    return out


def is_valid_holonomy(surface: Surface, GG: GradedGroup, tup) -> bool:
    chars = surface.generator_characters()
    if len(tup) != len(chars):
        return False
    if any(GG.sign[g] != c for g, c in zip(tup, chars)):
        return False
    return word_value(GG.group, surface.relator(), tup) == 0


def bundle_groupoid(surface: Surface, GG: GradedGroup, budget: int | None = None):
    """Holonomy tuples modulo simultaneous conjugation by the even subgroup."""
    from dwu.groupoids import ActionGroupoid

    G = GG.group
    sub = GG.even_subgroup
    points = holonomy_points(surface, GG, budget)

    def act(k, tup):
        h = GG.even_part[k]
        return tuple(G.conj(h, g) for g in tup)

    return ActionGroupoid.build(points, sub, act, label=f"Bun^or({surface.name})")


def circle_groupoid(GG: GradedGroup):
    """Bundles on the circle: the even part under its own conjugation."""
    from dwu.groupoids import ActionGroupoid

    sub = GG.even_subgroup
    return ActionGroupoid.build(
        range(sub.order), sub, lambda k, g: sub.conj(k, g), label="Bun(S1)"
    )


def crosscap_groupoid(GG: GradedGroup):
    """Odd elements under even conjugation, plus the boundary map t(s) = s^2.

    Boundary values are element indices of the ambient group (always even);
    GG.even_index converts them to circle_groupoid coordinates.
    """
    from dwu.groupoids import ActionGroupoid

    G = GG.group
    sub = GG.even_subgroup
    odd = GG.odd_part()

    def act(k, s):
        return G.conj(GG.even_part[k], s)

    gpd = ActionGroupoid.build(odd, sub, act, label="Bun^or(M)")
    boundary = {s: G.table[s][s] for s in odd}
    return gpd, boundary


def one_loop_groupoid(GG: GradedGroup):
    """Torus and Klein-bottle moduli glued: pairs (g, w) with w g^{sign w} w^{-1} = g,
    under even conjugation."""
    from dwu.groupoids import ActionGroupoid
    from dwu.groups import real_conjugate

    G = GG.group
    carrier = [
        (g, w)
        for g in GG.even_part
        for w in range(G.order)
        if real_conjugate(GG, w, g) == g
    ]
    sub = GG.even_subgroup

    def act(k, pt):
        h = GG.even_part[k]
        g, w = pt
        return (G.conj(h, g), G.conj(h, w))

    return ActionGroupoid.build(carrier, sub, act, label="Bun^or(1-loop)")
