"""Finite action groupoids and groupoid-cardinality integration.

A groupoid is presented as a finite set with a group action; components carry
their orbit size and automorphism (stabilizer) order, and integration weights
a class function by 1/|Aut|.  Loop groupoids and the double reflective loop
groupoid of a graded group are built as explicit action groupoids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from dwu.groups import FiniteGroup, GradedGroup, real_conjugate


@dataclass(frozen=True)
class ActionGroupoid:
    """A finite set with a group action, action law checked on construction."""

    carrier: tuple
    acting_group: FiniteGroup
    action: dict  # (h, x) -> x
    label: str = "groupoid"
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        H = self.acting_group
        for x in self.carrier:
            if self.action[(0, x)] != x:
                raise ValueError(f"identity does not fix {x}")
        for h1 in range(H.order):
            for h2 in range(H.order):
                for x in self.carrier:
                    if self.action[(h2, self.action[(h1, x)])] != self.action[(H.table[h2][h1], x)]:
                        raise ValueError(f"action law fails at {(h2, h1, x)}")
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.carrier)})

    @classmethod
    def build(cls, carrier, acting_group: FiniteGroup, act, label: str = "groupoid"):
        carrier = tuple(carrier)
        action = {
            (h, x): act(h, x) for h in range(acting_group.order) for x in carrier
        }
        return cls(carrier=carrier, acting_group=acting_group, action=action, label=label)

    def components(self) -> list[tuple]:
        """(representative, orbit size, automorphism order) per orbit."""
        H = self.acting_group
        seen = set()
        out = []
        for x in self.carrier:
            if x in seen:
                continue
            orbit = {self.action[(h, x)] for h in range(H.order)}
            seen |= orbit
            stab = sum(1 for h in range(H.order) if self.action[(h, x)] == x)
            assert len(orbit) * stab == H.order
            out.append((x, len(orbit), stab))
        return out

    def integrate(self, f):
        """Sum of f(representative)/|Aut| over components; f must be invariant."""
        H = self.acting_group
        for x in self.carrier:
            fx = f(x)
            for h in range(H.order):
                y = self.action[(h, x)]
                if f(y) != fx:
                    raise ValueError(f"integrand not invariant: f({x}) != f({y}) under h={h}")
        total = None
        for rep, _, stab in self.components():
            term = _scale(f(rep), Fraction(1, stab))
            total = term if total is None else total + term
        if total is None:
            return 0
        return total

    def cardinality(self) -> Fraction:
        return sum((Fraction(1, stab) for _, _, stab in self.components()), Fraction(0))


def _scale(value, q: Fraction):
    if hasattr(value, "scale"):
        return value.scale(q)
    return value * float(q)


def loop_groupoid(gpd: ActionGroupoid) -> ActionGroupoid:
    """Carrier {(x, h) : h.x = x} with the acting group unchanged, k.(x,h) = (k.x, khk^-1)."""
    H = gpd.acting_group
    carrier = [
        (x, h) for x in gpd.carrier for h in range(H.order) if gpd.action[(h, x)] == x
    ]

    def act(k, pt):
        x, h = pt
        return (gpd.action[(k, x)], H.conj(k, h))

    return ActionGroupoid.build(carrier, H, act, label=f"loop({gpd.label})")


def point_mod_group(G: FiniteGroup) -> ActionGroupoid:
    return ActionGroupoid.build(["pt"], G, lambda h, x: x, label=f"pt//{G.name}")


def conjugation_groupoid(G: FiniteGroup) -> ActionGroupoid:
    return ActionGroupoid.build(range(G.order), G, lambda h, g: G.conj(h, g), label=f"{G.name}//conj")


def double_real_loop(GG: GradedGroup) -> ActionGroupoid:
    """Pairs (g, w) with w g^{sign(w)} w^{-1} = g, the whole group acting by
    Real conjugation on g and conjugation on w."""
    G = GG.group
    carrier = [
        (g, w)
        for g in GG.even_part
        for w in range(G.order)
        if real_conjugate(GG, w, g) == g
    ]

    def act(h, pt):
        g, w = pt
        return (real_conjugate(GG, h, g), G.conj(h, w))

    return ActionGroupoid.build(carrier, G, act, label=f"LLref({G.name})")
