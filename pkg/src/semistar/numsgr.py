"""Numerical semigroup rings K[[S]] and their monomial fractional ideals.

An ideal is a finite set of integer generator values g; the represented
value set is the union of the translates g + S.  The coefficient field
never enters: monomial ideal arithmetic only sees values.  All window
bounds used by colon/intersection carry an explicit tail-stability check
rather than a silent assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .algebra.fields import AlgebraError


@dataclass(frozen=True)
class NumericalSemigroup:
    """The additive submonoid of N generated by a gcd-1 set of positives."""

    generators: tuple
    gaps: tuple
    frobenius: int

    @staticmethod
    def create(generators) -> "NumericalSemigroup":
        gens = tuple(sorted(set(int(g) for g in generators)))
        if not gens or any(g <= 0 for g in gens):
            raise AlgebraError("semigroup generators must be positive")
        g = 0
        for x in gens:
            g = gcd(g, x)
        if g != 1:
            raise AlgebraError("semigroup generators must have gcd 1")
        limit = max(gens) * max(gens) + max(gens)
        member = [False] * (limit + 1)
        member[0] = True
        for n in range(1, limit + 1):
            member[n] = any(n >= x and member[n - x] for x in gens)
        frob = -1
        for n in range(limit, -1, -1):
            if not member[n]:
                frob = n
                break
        gaps = tuple(n for n in range(frob + 1) if not member[n])
        return NumericalSemigroup(gens, gaps, frob)

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    @cached_property
    def _gapset(self) -> frozenset:
        return frozenset(self.gaps)

    def member(self, n: int) -> bool:
        if n < 0:
            return False
        if n > self.frobenius:
            return True
        return n not in self._gapset

    def __repr__(self):
        return "<" + ",".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class MonomialIdeal:
    """A nonzero monomial fractional ideal, kept with minimal generators."""

    ring: NumericalSemigroup
    gens: tuple

    def min_value(self) -> int:
        return self.gens[0]

    def __repr__(self):
        return "(" + ",".join(f"x^{g}" for g in self.gens) + ")"


def _check_ring(a: MonomialIdeal, b: MonomialIdeal):
    if a.ring != b.ring:
        raise AlgebraError("ideals over different semigroup rings")


def ideal_normalize(ring: NumericalSemigroup, values) -> MonomialIdeal:
    vals = sorted(set(int(v) for v in values))
    if not vals:
        raise AlgebraError("a monomial ideal needs at least one generator")
    kept = []
    for v in vals:
        if not any(ring.member(v - g) for g in kept):
            kept.append(v)
    return MonomialIdeal(ring, tuple(kept))


def ideal_membership(a: MonomialIdeal, z: int) -> bool:
    return any(a.ring.member(z - g) for g in a.gens)


def ring_ideal(ring: NumericalSemigroup) -> MonomialIdeal:
    return MonomialIdeal(ring, (0,))


def maximal_ideal(ring: NumericalSemigroup) -> MonomialIdeal:
    return ideal_normalize(ring, ring.generators)


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_ring(a, b)
    return ideal_normalize(a.ring, a.gens + b.gens)


def ideal_mul(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_ring(a, b)
    return ideal_normalize(a.ring, [x + y for x in a.gens for y in b.gens])


def ideal_shift(a: MonomialIdeal, h: int) -> MonomialIdeal:
    return MonomialIdeal(a.ring, tuple(g + h for g in a.gens))


def ideal_intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_ring(a, b)
    c = a.ring.conductor
    lo = max(a.min_value(), b.min_value())
    hi = lo + c
    vals = [z for z in range(lo, hi) if ideal_membership(a, z) and ideal_membership(b, z)]
    # all z >= hi lie in both translates of the minimal generators; assert it
    for z in range(hi, hi + c + 1):
        if not (ideal_membership(a, z) and ideal_membership(b, z)):
            raise AlgebraError("intersection window tail not stable")
    vals.extend(range(hi, hi + c + 1))
    return ideal_normalize(a.ring, vals)


def ideal_colon(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """(a : b) = {z : z + values(b) inside values(a)}."""
    _check_ring(a, b)
    c = a.ring.conductor
    lo = a.min_value() - max(b.gens) - c
    hi = a.min_value() - b.min_value() + c

    def ok(z):
        return all(ideal_membership(a, z + g) for g in b.gens)

    vals = [z for z in range(lo, hi) if ok(z)]
    for z in range(hi, hi + c + 1):
        if not ok(z):
            raise AlgebraError("colon window tail not stable")
    vals.extend(range(hi, hi + c + 1))
    return ideal_normalize(a.ring, vals)


def v_closure(a: MonomialIdeal) -> MonomialIdeal:
    d = ring_ideal(a.ring)
    return ideal_colon(d, ideal_colon(d, a))


def hull_extension(a: MonomialIdeal) -> MonomialIdeal:
    """a * K[[X]]: the full tail {z >= min a}, as an ideal of the ring."""
    m = a.min_value()
    return ideal_normalize(a.ring, range(m, m + a.ring.conductor + 1))


def ideal_leq(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """a a subset of b, decided on generators."""
    _check_ring(a, b)
    return all(ideal_membership(b, g) for g in a.gens)


def enumerate_ideals(ring: NumericalSemigroup, lo: int, hi: int):
    """Every normalized ideal with all generators in [lo, hi], no duplicates.

    Normalized generator sets are exactly the antichains of the divisibility
    order v <= w iff w - v in S, built here by increasing value.
    """
    values = list(range(lo, hi + 1))
    out = []

    def extend(chosen, start):
        if chosen:
            out.append(MonomialIdeal(ring, tuple(chosen)))
        for i in range(start, len(values)):
            w = values[i]
            if any(ring.member(w - g) for g in chosen):
                continue
            chosen.append(w)
            extend(chosen, i + 1)
            chosen.pop()

    extend([], 0)
    return out


# ---------------------------------------------------------------------------
# independent bitmask oracle (used by the test suite, exposed for reuse)

class BitsetOracle:
    """Value sets as bitmasks on a fixed window [offset, offset + width).

    Bit i of a mask stands for the value offset + i.  Operations are plain
    set arithmetic on the masks, independent of the generator-level
    normalize/colon algebra above.  Every mask fed to mul/colon must end in
    an all-ones run longer than the conductor (tail_ok), which makes the
    off-window behaviour determined.
    """

    def __init__(self, ring: NumericalSemigroup, offset: int, width: int):
        self.ring = ring
        self.offset = offset
        self.width = width
        self.window_mask = (1 << width) - 1

    def expand(self, gens) -> int:
        out = 0
        for i in range(self.width):
            v = self.offset + i
            if any(self.ring.member(v - g) for g in gens):
                out |= 1 << i
        return out

    def tail_ok(self, x: int) -> bool:
        run = self.ring.conductor + 1
        high = ((1 << run) - 1) << (self.width - run)
        return (x & high) == high

    def _shifted(self, x: int, s: int) -> int:
        """Mask whose bit j answers: is the value at bit j+s in x, where bits
        above the window count as present (tail_ok required on x)."""
        if s >= self.width:
            return self.window_mask
        if s >= 0:
            fill = self.window_mask & ~((1 << (self.width - s)) - 1)
            return ((x >> s) | fill) & self.window_mask
        return (x << -s) & self.window_mask

    def sum(self, x: int, y: int) -> int:
        return (x | y) & self.window_mask

    def mul(self, x: int, y: int) -> int:
        """Minkowski sum of value sets; operands must vanish below value 0."""
        if self.offset < 0:
            low = -self.offset
            if (x & ((1 << low) - 1)) or (y & ((1 << low) - 1)):
                raise AlgebraError("oracle mul needs nonnegative value sets")
        out = 0
        for i in range(self.width):
            if x >> i & 1:
                out |= y << (self.offset + i) if self.offset + i >= 0 else y >> -(self.offset + i)
        return out & self.window_mask

    def intersect(self, x: int, y: int) -> int:
        return x & y

    def colon(self, x: int, y: int) -> int:
        """{z : z + y inside x} on the window; x and y must be tail_ok."""
        out = self.window_mask
        top = self.offset + self.width
        for w in range(self.offset, top):
            if y >> (w - self.offset) & 1:
                out &= self._shifted(x, w)
        # values of y beyond the window (present by tail_ok) still constrain
        # window positions when the window extends below zero
        for w in range(top, self.width):
            out &= self._shifted(x, w)
        return out

    def minimal_generators(self, mask: int):
        gens = []
        for i in range(self.width):
            if not (mask >> i & 1):
                continue
            v = self.offset + i
            if not any(self.ring.member(v - g) for g in gens):
                gens.append(v)
        return tuple(gens)
