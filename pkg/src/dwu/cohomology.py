"""Twisted group cochains on a Z2-graded group with U(1) coefficients.

Cochains are normalized (zero on tuples containing the identity) and store
exact phases.  The differential carries the grading twist on its first face:

    (dc)(w0,...,wn) = sign(w0)*c(w1..wn)
                      + sum_j (-1)^j c(.., w_{j-1} w_j, ..)
                      + (-1)^(n+1) c(w0..w_{n-1})

Cohomology with U(1) coefficients is computed from Z/N-valued cochains
(N = |G^| annihilates everything) and then reduced by the connecting images
d(z/N), z in Z^{n-1}(Z/N), which identifies Z/N-classes that merge over Q/Z.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from dwu.groups import FiniteGroup, GradedGroup, ResourceBudgetError
from dwu.intlinalg import kernel_mod, quotient_invariants, solve_mod
from dwu.phases import Phase, lcm_of

ZERO = Phase(0, 1)


def _group_signs(ref) -> tuple[FiniteGroup, tuple]:
    if isinstance(ref, tuple):
        return ref
    if isinstance(ref, GradedGroup):
        return ref.group, ref.sign
    if isinstance(ref, FiniteGroup):
        return ref, (1,) * ref.order
    raise TypeError(f"expected FiniteGroup or GradedGroup, got {type(ref)}")


@dataclass(frozen=True)
class TwistedCochain:
    """A normalized cochain G^^n -> Q/Z; signs record the coefficient twist."""

    group: FiniteGroup
    signs: tuple
    degree: int
    values: tuple  # sorted ((args, Phase), ...), total on nonidentity tuples

    def __post_init__(self):
        object.__setattr__(self, "_cache", dict(self.values))

    @classmethod
    def from_dict(cls, ref, degree: int, mapping) -> "TwistedCochain":
        group, signs = _group_signs(ref)
        full = {}
        for tup, p in mapping.items():
            if any(t == 0 for t in tup):
                if not p.is_zero():
                    raise ValueError(f"not normalized: nonzero value on {tup}")
                continue
            full[tup] = p
        for tup in itertools.product(range(1, group.order), repeat=degree):
            full.setdefault(tup, ZERO)
        return cls(group, signs, degree, tuple(sorted(full.items())))

    @classmethod
    def zero(cls, ref, degree: int) -> "TwistedCochain":
        return cls.from_dict(ref, degree, {})

    def value(self, tup) -> Phase:
        if any(t == 0 for t in tup):
            return ZERO
        return self._cache[tup]

    def denominator(self) -> int:
        return lcm_of((p.denominator for _, p in self.values), 1)

    def same_base(self, other: "TwistedCochain") -> bool:
        return self.group.table == other.group.table and self.signs == other.signs

    def _require_same(self, other: "TwistedCochain"):
        if self.degree != other.degree or not self.same_base(other):
            raise ValueError("cochains live on different graded groups or degrees")

    def __add__(self, other: "TwistedCochain") -> "TwistedCochain":
        self._require_same(other)
        return TwistedCochain.from_dict(
            (self.group, self.signs),
            self.degree,
            {t: p + other._cache[t] for t, p in self.values},
        )

    def __sub__(self, other: "TwistedCochain") -> "TwistedCochain":
        self._require_same(other)
        return TwistedCochain.from_dict(
            (self.group, self.signs),
            self.degree,
            {t: p - other._cache[t] for t, p in self.values},
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for _, p in self.values)

    def __repr__(self):
        nz = sum(1 for _, p in self.values if not p.is_zero())
        return f"TwistedCochain(deg={self.degree}, {self.group.name}, nonzero={nz})"


def _faces(group: FiniteGroup, signs, tup):
    """(coefficient, face tuple) terms of the twisted differential at tup."""
    n = len(tup) - 1
    yield signs[tup[0]], tup[1:]
    for j in range(1, n + 1):
        merged = tup[: j - 1] + (group.table[tup[j - 1]][tup[j]],) + tup[j + 1 :]
        yield (-1) ** j, merged
    yield (-1) ** (n + 1), tup[:-1]


def twisted_differential(c: TwistedCochain) -> TwistedCochain:
    """Degree n -> n+1 bar differential with the sign twist on the first face."""
    group, signs = c.group, c.signs
    out = {}
    for tup in itertools.product(range(1, group.order), repeat=c.degree + 1):
        acc = ZERO
        for coeff, face in _faces(group, signs, tup):
            if c.degree == 0:
                acc = acc + c.value(()).scale(coeff)
            elif not any(t == 0 for t in face):
                acc = acc + c.value(face).scale(coeff)
        out[tup] = acc
    return TwistedCochain.from_dict((group, signs), c.degree + 1, out)


def is_twisted_cocycle(c: TwistedCochain) -> bool:
    return twisted_differential(c).is_zero()


def _tuples(group: FiniteGroup, degree: int):
    return list(itertools.product(range(1, group.order), repeat=degree))


def differential_matrix(group: FiniteGroup, signs, degree: int) -> np.ndarray:
    """Integer matrix of d: C^degree -> C^(degree+1) on the normalized complex."""
    src = _tuples(group, degree)
    dst = _tuples(group, degree + 1)
    src_index = {t: i for i, t in enumerate(src)}
    D = np.zeros((len(dst), len(src)), dtype=np.int64)
    for r, tup in enumerate(dst):
        for coeff, face in _faces(group, signs, tup):
            if degree == 0:
                D[r, 0] += coeff
            elif not any(t == 0 for t in face):
                D[r, src_index[face]] += coeff
    return D


def _numerator_vector(c: TwistedCochain, N: int):
    vec = np.zeros(len(_tuples(c.group, c.degree)), dtype=np.int64)
    for i, tup in enumerate(_tuples(c.group, c.degree)):
        p = c.value(tup)
        if N % p.denominator:
            return None
        vec[i] = p.numerator * (N // p.denominator) % N
    return vec


def is_twisted_coboundary(c: TwistedCochain, denominator: int | None = None):
    """A witness nu with d(nu) = c, searched over denominators dividing N, or None."""
    group, signs = c.group, c.signs
    N = denominator or lcm_of([c.denominator()], group.order)
    if c.degree == 0:
        return None
    D = differential_matrix(group, signs, c.degree - 1)
    target = _numerator_vector(c, N)
    if target is None:
        return None
    x = solve_mod(D, target, N)
    if x is None:
        return None
    nu_map = {
        tup: Phase(int(x[i]), N) for i, tup in enumerate(_tuples(group, c.degree - 1))
    }
    nu = TwistedCochain.from_dict((group, signs), c.degree - 1, nu_map)
    assert (twisted_differential(nu) - c).is_zero()
    return nu


def cohomology_classes(ref, degree: int, cap: int = 32):
    """Representatives and invariant factors of H^degree(BG^; U(1)_pi).

    Every class is N-torsion for N = |G^|, so Z/N-valued cocycles suffice;
    Z/N-classes that merge over U(1) are identified via the connecting images
    d(z/N).  Returns (reps, factors) with reps sorted lexicographically by
    numerator vector and factors the invariant-factor chain of the group.
    """
    if degree not in (1, 2):
        raise ValueError("cohomology computed in degrees 1 and 2 only")
    group, signs = _group_signs(ref)
    if group.order > cap:
        raise ResourceBudgetError(f"group order {group.order} exceeds cohomology cap {cap}")
    N = group.order
    if N == 1:
        return [TwistedCochain.zero((group, signs), degree)], []
    D_up = differential_matrix(group, signs, degree)
    D_down = differential_matrix(group, signs, degree - 1)
    Z = kernel_mod(D_up, N)
    relations = [row % N for row in D_down.T]
    # connecting images: a (degree-1)-cocycle z mod N lifts to z/N over Q/Z and
    # d(z/N) is again Z/N-valued; these are exactly the U(1)-coboundaries
    # that are invisible over Z/N
    for z in kernel_mod(D_down, N):
        img = D_down @ z.astype(np.int64)
        assert not (img % N).any(), "kernel generator is not a cocycle"
        relations.append((img // N) % N)
    R = (
        np.array(relations, dtype=np.int64)
        if relations
        else np.zeros((0, Z.shape[1]), dtype=np.int64)
    )
    factors, basis = quotient_invariants(Z, R, N)
    tuples = _tuples(group, degree)
    reps = set()
    for combo in itertools.product(*(range(f) for f in factors)):
        vec = np.zeros(len(tuples), dtype=np.int64)
        for a, row in zip(combo, basis):
            vec = (vec + a * row) % N
        reps.add(tuple(int(v) for v in vec))
    out = []
    for vec in sorted(reps):
        mapping = {tup: Phase(int(v), N) for tup, v in zip(tuples, vec)}
        out.append(TwistedCochain.from_dict((group, signs), degree, mapping))
    return out, _invariant_factor_chain(factors)


def _invariant_factor_chain(factors) -> list[int]:
    """Canonical invariant-factor chain (each dividing the next) of sum Z/f_i."""
    primes: dict[int, list[int]] = {}
    for f in factors:
        ff, p = f, 2
        while ff > 1:
            e = 0
            while ff % p == 0:
                ff //= p
                e += 1
            if e:
                primes.setdefault(p, []).append(p**e)
            p += 1
    if not primes:
        return []
    for p in primes:
        primes[p].sort(reverse=True)
    depth = max(len(v) for v in primes.values())
    chain = []
    for i in range(depth):
        val = 1
        for powers in primes.values():
            if i < len(powers):
                val *= powers[i]
        chain.append(val)
    return sorted(chain)


def restrict_to_even(c: TwistedCochain, GG: GradedGroup) -> TwistedCochain:
    """Restriction to the even subgroup; the twist disappears there."""
    sub = GG.even_subgroup
    out = {}
    for tup in itertools.product(range(1, sub.order), repeat=c.degree):
        big = tuple(GG.even_part[t] for t in tup)
        out[tup] = c.value(big)
    return TwistedCochain.from_dict(sub, c.degree, out)


def pullback_split(lmbda: TwistedCochain, GG: GradedGroup) -> TwistedCochain:
    """Pull an order-2 cocycle on the even part back along a split projection."""
    if not all(p.scale(2).is_zero() for _, p in lmbda.values):
        raise ValueError("pullback to a twisted cocycle needs 2*lambda = 0")
    G = GG.group
    odd = GG.odd_part()[0]
    proj = []
    for ghat in range(G.order):
        even = ghat if GG.sign[ghat] == 1 else G.table[ghat][G.inverse[odd]]
        proj.append(GG.even_index[even])
    out = {}
    for tup in itertools.product(range(1, G.order), repeat=lmbda.degree):
        out[tup] = lmbda.value(tuple(proj[t] for t in tup))
    return TwistedCochain.from_dict(GG, lmbda.degree, out)


def random_cochain(ref, degree: int, denominator: int, rng) -> TwistedCochain:
    group, signs = _group_signs(ref)
    out = {}
    for tup in itertools.product(range(1, group.order), repeat=degree):
        out[tup] = Phase(rng.randrange(denominator), denominator)
    return TwistedCochain.from_dict((group, signs), degree, out)


def cochain_to_json(c: TwistedCochain, group_name: str | None = None) -> str:
    N = c.denominator()
    vals = {}
    for tup, p in c.values:
        if not p.is_zero():
            vals[",".join(str(t) for t in tup)] = p.numerator * (N // p.denominator)
    return json.dumps(
        {
            "degree": c.degree,
            "group": group_name or c.group.name,
            "denominator": N,
            "values": vals,
        },
        sort_keys=True,
    )


def cochain_from_json(text: str, ref) -> TwistedCochain:
    data = json.loads(text)
    group, signs = _group_signs(ref)
    N = int(data["denominator"])
    out = {}
    for key, num in data.get("values", {}).items():
        tup = tuple(int(x) for x in key.split(",")) if key else ()
        out[tup] = Phase(int(num), N)
    return TwistedCochain.from_dict((group, signs), int(data["degree"]), out)
