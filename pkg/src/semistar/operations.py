"""Semistar operation terms and their exact evaluators.

An operation is a closed term over {identity, v, overring extension,
spectral, finite-type, stable, tilde, ascent, descent}.  Evaluation is
family-specific but routed through a small engine protocol so that the
predicate layer never needs to know which domain it is talking to.

Whenever no exact evaluator exists the evaluator raises
UnsupportedOperation; nothing is ever silently approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import dplusm, numsgr
from .algebra.fields import AlgebraError
from .algebra.groups import Segment, ValueGroup, segment_add, segment_colon, segment_intersect, segment_union, segment_shift
from .dplusm import DomainPrime, PullbackDomain, ValuationDomain
from .numsgr import NumericalSemigroup


class UnsupportedOperation(Exception):
    """No exact evaluator for this (domain, operation) pair."""


class UnsupportedMaximalSpectrum(UnsupportedOperation):
    """The quasi-maximal spectrum is not computable from the representable
    universe; reported rather than guessed."""


class ConsistencyError(AssertionError):
    """Two evaluation routes that must agree disagreed: an internal bug."""


# ---------------------------------------------------------------------------
# operation terms

@dataclass(frozen=True)
class SemistarOp:
    kind: str  # identity | v | st | spec | ft | bar | tilde | asc | desc
    inner: "SemistarOp | None" = None
    tag: "str | None" = None

    def __repr__(self):
        return op_to_text(self)


def d_op() -> SemistarOp:
    return SemistarOp("identity")


def v_op() -> SemistarOp:
    return SemistarOp("v")


def st_op(tag: str) -> SemistarOp:
    if tag not in ("V", "ic", "K"):
        raise AlgebraError(f"unknown overring tag {tag!r}")
    return SemistarOp("st", tag=tag)


def spec_op(tag: str) -> SemistarOp:
    if tag not in ("M", "P1"):
        raise AlgebraError(f"unknown spectral tag {tag!r}")
    return SemistarOp("spec", tag=tag)


def ft_op(inner: SemistarOp) -> SemistarOp:
    if known_finite_type(inner):
        return inner  # already of finite type; the closure is the identity
    if inner.kind == "ft":
        return inner
    return SemistarOp("ft", inner=inner)


def bar_op(inner: SemistarOp) -> SemistarOp:
    return SemistarOp("bar", inner=inner)


def tilde_op(inner: SemistarOp) -> SemistarOp:
    return SemistarOp("tilde", inner=inner)


def asc_op(inner: SemistarOp, tag: str = "V") -> SemistarOp:
    return SemistarOp("asc", inner=inner, tag=tag)


def desc_op(inner: SemistarOp, tag: str = "V") -> SemistarOp:
    return SemistarOp("desc", inner=inner, tag=tag)


def t_op() -> SemistarOp:
    return ft_op(v_op())


def w_op() -> SemistarOp:
    return tilde_op(v_op())


def op_to_text(op: SemistarOp) -> str:
    if op.kind == "identity":
        return "d"
    if op.kind == "v":
        return "v"
    if op.kind == "st":
        return f"st[{op.tag}]"
    if op.kind == "spec":
        return "spec{" + op.tag + "}"
    if op.kind == "ft":
        if op.inner.kind == "v":
            return "t"
        return f"ft({op_to_text(op.inner)})"
    if op.kind == "tilde":
        if op.inner.kind == "v":
            return "w"
        return f"tilde({op_to_text(op.inner)})"
    if op.kind == "bar":
        return f"bar({op_to_text(op.inner)})"
    if op.kind == "asc":
        return f"asc({op_to_text(op.inner)})"
    if op.kind == "desc":
        return f"desc({op_to_text(op.inner)})"
    raise AlgebraError(f"unknown op kind {op.kind!r}")


def known_finite_type(op: SemistarOp) -> bool:
    """Sound, incomplete: True only when the term shape forces finite type."""
    if op.kind in ("identity", "st", "spec", "ft"):
        return True
    if op.kind == "tilde":
        return True  # stable finite-type closure by construction
    if op.kind == "desc":
        return known_finite_type(op.inner)
    return False


def known_stable(op: SemistarOp, domain: "DomainHandle") -> bool:
    """Sound, incomplete: True only when stability is forced."""
    if "all_ops_stable" in domain.capabilities:
        return True
    if op.kind in ("identity", "spec", "bar", "tilde"):
        return True
    if op.kind == "st" and op.tag == "K":
        return True
    return False


# ---------------------------------------------------------------------------
# domain and ideal handles

CAPABILITIES = {
    "numsgr": frozenset({"noetherian", "local", "all_fg"}),
    "pullback": frozenset({"local"}),
    "valuation": frozenset({"local", "valuation", "all_ops_stable", "integrally_closed"}),
}


@dataclass(frozen=True)
class DomainHandle:
    family: str  # "numsgr" | "pullback" | "valuation"
    payload: object
    name: str = ""

    @cached_property
    def capabilities(self) -> frozenset:
        caps = set(CAPABILITIES[self.family])
        if self.family in ("pullback", "valuation"):
            if self.payload_group.discrete:
                caps.add("all_fg")
                if self.payload_group.kind == "Z":
                    caps.add("noetherian")
        if self.family == "pullback" and not self.payload.is_proper:
            caps.update(CAPABILITIES["valuation"])
        return frozenset(caps)

    @property
    def payload_group(self) -> ValueGroup:
        return self.payload.group

    @cached_property
    def engine(self):
        if self.family == "numsgr":
            return _NumsgrEngine(self.payload)
        if self.family == "pullback":
            return _PullbackEngine(self.payload)
        return _ValuationEngine(self.payload)

    def __repr__(self):
        return self.name or f"{self.family}({self.payload!r})"


def semigroup_domain(generators, name="") -> DomainHandle:
    ring = NumericalSemigroup.create(generators)
    return DomainHandle("numsgr", ring, name or f"numsgr{ring!r}")


def pullback_domain(residue_ext, group_kind: str, name="") -> DomainHandle:
    vd = ValuationDomain(residue_ext, ValueGroup(group_kind))
    return DomainHandle("pullback", PullbackDomain(vd), name)


def valuation_domain(residue_ext, group_kind: str, name="") -> DomainHandle:
    vd = ValuationDomain(residue_ext, ValueGroup(group_kind))
    return DomainHandle("valuation", vd, name)


@dataclass(frozen=True)
class IdealHandle:
    domain: DomainHandle
    payload: object
    fg_witness: "tuple | None"

    @property
    def finitely_generated(self) -> bool:
        return self.fg_witness is not None

    def __repr__(self):
        return self.domain.engine.fmt(self.payload)


def make_handle(domain: DomainHandle, payload) -> IdealHandle:
    eng = domain.engine
    witness = eng.fg_witness(payload)
    if witness is not None and not eng.eq(eng.regenerate(witness), payload):
        raise ConsistencyError("finite-generation witness does not regenerate the ideal")
    return IdealHandle(domain, payload, witness)


def unit_handle(domain: DomainHandle) -> IdealHandle:
    return make_handle(domain, domain.engine.unit())


def maximal_handle(domain: DomainHandle) -> IdealHandle:
    return make_handle(domain, domain.engine.maximal())


def handle_add(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    return make_handle(a.domain, a.domain.engine.add(a.payload, b.payload))


def handle_mul(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    return make_handle(a.domain, a.domain.engine.mul(a.payload, b.payload))


def handle_intersect(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    return make_handle(a.domain, a.domain.engine.intersect(a.payload, b.payload))


def handle_colon(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    return make_handle(a.domain, a.domain.engine.colon(a.payload, b.payload))


def handle_inverse(a: IdealHandle) -> IdealHandle:
    return handle_colon(unit_handle(a.domain), a)


def handle_leq(a: IdealHandle, b: IdealHandle) -> bool:
    if a.domain == b.domain:
        return a.domain.engine.leq(a.payload, b.payload)
    # mixed comparison across a spectral localization: compare against the
    # preimage of the projected segment
    pa, pb = a.payload, b.payload
    if isinstance(pa, Segment) and isinstance(pb, Segment) and pb.group.kind == "Z" and pa.group.kind == "ZxZ":
        if pa.shape == "empty" or pb.shape == "whole":
            return True
        if pa.shape == "whole" or pb.shape == "empty":
            return False
        return pa.cut[0] >= pb.cut
    raise AlgebraError("handles over incomparable domains")


def handle_eq(a: IdealHandle, b: IdealHandle) -> bool:
    if a.domain == b.domain:
        return a.domain.engine.eq(a.payload, b.payload)
    return handle_leq(a, b) and handle_leq(b, a)


def handle_is_integral(a: IdealHandle) -> bool:
    return handle_leq(a, unit_handle(a.domain))


# ---------------------------------------------------------------------------
# engines

class _NumsgrEngine:
    family = "numsgr"

    def __init__(self, ring: NumericalSemigroup):
        self.ring = ring

    def unit(self):
        return numsgr.ring_ideal(self.ring)

    def maximal(self):
        return numsgr.maximal_ideal(self.ring)

    def add(self, a, b):
        return numsgr.ideal_sum(a, b)

    def mul(self, a, b):
        return numsgr.ideal_mul(a, b)

    def intersect(self, a, b):
        return numsgr.ideal_intersect(a, b)

    def colon(self, a, b):
        return numsgr.ideal_colon(a, b)

    def v(self, a):
        return numsgr.v_closure(a)

    def extend(self, tag, a):
        if tag in ("V", "ic"):
            return numsgr.hull_extension(a)
        raise UnsupportedOperation("the full quotient field of a semigroup ring is not representable")

    def whole(self):
        raise UnsupportedOperation("the full quotient field of a semigroup ring is not representable")

    def is_whole(self, a) -> bool:
        return False

    def leq(self, a, b):
        return numsgr.ideal_leq(a, b)

    def eq(self, a, b):
        return a == b

    def scale(self, a, scalar):
        return numsgr.ideal_shift(a, int(scalar))

    def fg_witness(self, a):
        return a.gens

    def regenerate(self, witness):
        return numsgr.ideal_normalize(self.ring, witness)

    def sample_scalar(self, rng, spec):
        return rng.randint(-spec.value_window, spec.value_window)

    def sample_ideal(self, rng, spec, integral=False):
        lo = 0 if integral else -spec.value_window
        hi = self.ring.conductor + 6
        n = rng.randint(1, spec.generator_bound)
        vals = [rng.randint(lo, hi) for _ in range(n)]
        return numsgr.ideal_normalize(self.ring, vals)

    def sample_fg_ideal(self, rng, spec, integral=False):
        return self.sample_ideal(rng, spec, integral)

    def proper_subideal_samples(self, rng):
        m = self.maximal()
        out = []
        for g in self.ring.generators[:2]:
            out.append(numsgr.ideal_shift(m, g))
        return out

    def fmt(self, a) -> str:
        return "<" + ", ".join(f"x^{g}" for g in a.gens) + ">"


class _ValuationEngine:
    family = "valuation"

    def __init__(self, vd: ValuationDomain):
        self.vd = vd
        self.group = vd.group

    def unit(self):
        return self.vd.unit_segment()

    def maximal(self):
        return self.vd.maximal_segment()

    def add(self, a, b):
        return segment_union(a, b)  # module sum of chain ideals is union

    def mul(self, a, b):
        return segment_add(a, b)

    def intersect(self, a, b):
        return segment_intersect(a, b)

    def colon(self, a, b):
        out = segment_colon(a, b)
        if out.is_empty():
            raise AlgebraError("colon collapses to the zero module")
        return out

    def v(self, a):
        d = self.unit()
        return self.colon(d, self.colon(d, a))

    def extend(self, tag, a):
        if tag in ("V", "ic"):
            return a  # integrally closed; V is the ring itself
        return Segment.whole(self.group)

    def whole(self):
        return Segment.whole(self.group)

    def is_whole(self, a) -> bool:
        return a.is_whole()

    def leq(self, a, b):
        return a.leq(b)

    def eq(self, a, b):
        return a.eq(b)

    def scale(self, a, scalar):
        return segment_shift(a, scalar)

    def fg_witness(self, a):
        if a.shape == "closed":
            return (a.cut,)
        return None

    def regenerate(self, witness):
        cuts = [self.group.coerce(c) for c in witness]
        out = Segment.closed(self.group, cuts[0])
        for c in cuts[1:]:
            out = segment_union(out, Segment.closed(self.group, c))
        return out

    def sample_scalar(self, rng, spec):
        return self.group.rand(rng, spec.value_window, spec.denominator_bound)

    def sample_ideal(self, rng, spec, integral=False):
        cut = self.group.rand(rng, spec.value_window, spec.denominator_bound)
        if integral:
            zero = self.group.zero
            if self.group.lt(cut, zero):
                cut = self.group.neg(cut)
        shape = "closed" if (self.group.discrete or rng.random() < 0.5) else "open"
        return Segment.make(self.group, shape, cut)

    def sample_fg_ideal(self, rng, spec, integral=False):
        s = self.sample_ideal(rng, spec, integral)
        if s.shape != "closed":
            s = Segment.closed(self.group, s.cut)
        return s

    def proper_subideal_samples(self, rng):
        g = self.group
        out = []
        for _ in range(4):
            cut = g.rand(rng, 5)
            zero = g.zero
            if not g.lt(zero, cut):
                cut = g.add(g.neg(cut), g.coerce(1) if g.kind != "ZxZ" else (1, 0))
            if g.lt(zero, cut):
                out.append(Segment.closed(g, cut))
        return out

    def fmt(self, a) -> str:
        if a.is_whole():
            return "K"
        if a.shape == "closed":
            return f"<1*t({self.group.fmt(a.cut)})>"
        return f"t({self.group.fmt(a.cut)})*M"


class _PullbackEngine:
    family = "pullback"

    def __init__(self, pd: PullbackDomain):
        self.pd = pd
        self.group = pd.group
        self.K = pd.residue_ext

    def unit(self):
        return dplusm.unit_module(self.pd)

    def maximal(self):
        return dplusm.maximal_module(self.pd)

    def add(self, a, b):
        return dplusm.module_sum(a, b)

    def mul(self, a, b):
        return dplusm.module_mul(a, b)

    def intersect(self, a, b):
        return dplusm.module_intersect(a, b)

    def colon(self, a, b):
        return dplusm.module_colon(a, b)

    def v(self, a):
        return dplusm.v_closure_pullback(a)

    def extend(self, tag, a):
        if tag in ("V", "ic"):
            return dplusm.extend_to_V(a)
        return dplusm.whole_module(self.pd)

    def whole(self):
        return dplusm.whole_module(self.pd)

    def is_whole(self, a) -> bool:
        return a.tail.is_whole()

    def leq(self, a, b):
        return dplusm.module_leq(a, b)

    def eq(self, a, b):
        return dplusm.module_eq(a, b)

    def scale(self, a, scalar):
        coeff, level = scalar
        return dplusm.module_scale(a, coeff, level)

    def fg_witness(self, a):
        return dplusm.fg_witness(a)

    def regenerate(self, witness):
        return dplusm.module_from_generators(self.pd, [(c, g) for c, g in witness])

    def sample_scalar(self, rng, spec):
        return (self.K.rand_nonzero(rng, 4), self.group.rand(rng, spec.value_window, spec.denominator_bound))

    def sample_ideal(self, rng, spec, integral=False):
        roll = rng.random()
        level = self.group.rand(rng, spec.value_window, spec.denominator_bound)
        zero = self.group.zero
        if integral:
            if self.group.lt(level, zero):
                level = self.group.neg(level)
            if not self.group.lt(zero, level):
                return self.unit() if roll < 0.5 else self.maximal()
        if roll < 0.55:
            gens = []
            for _ in range(rng.randint(1, spec.generator_bound)):
                gens.append((self.K.rand_nonzero(rng, 4), level))
            return dplusm.module_from_generators(self.pd, gens)
        shape = "closed" if (roll < 0.8 or self.group.discrete) else "open"
        return dplusm.canonical(self.pd, (), Segment.make(self.group, shape, level))

    def sample_fg_ideal(self, rng, spec, integral=False):
        while True:
            m = self.sample_ideal(rng, spec, integral)
            if dplusm.fg_witness(m) is not None:
                return m

    def proper_subideal_samples(self, rng):
        out = []
        one = self.K.one
        for _ in range(4):
            g = self.group.rand(rng, 5)
            zero = self.group.zero
            if not self.group.lt(zero, g):
                g = self.group.add(self.group.neg(g), self.group.coerce(1) if self.group.kind != "ZxZ" else (1, 0))
            if self.group.lt(zero, g):
                out.append(dplusm.module_from_generators(self.pd, [(one, g)]))
                out.append(dplusm.canonical(self.pd, (), Segment.closed(self.group, g)))
        return out

    def fmt(self, a) -> str:
        w = dplusm.fg_witness(a)
        if w is not None:
            gens = ", ".join(f"{self.K.fmt(c)}*t({self.group.fmt(g)})" for c, g in w)
            return f"<{gens}>"
        if a.tail.is_whole():
            return "K"
        return f"t({self.group.fmt(a.tail.cut)})*M"


# ---------------------------------------------------------------------------
# evaluation

def apply(op: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    eng = dom.engine
    if op.kind == "identity":
        return e
    if op.kind == "v":
        return make_handle(dom, eng.v(e.payload))
    if op.kind == "st":
        if op.tag == "K":
            return make_handle(dom, eng.whole())
        return make_handle(dom, eng.extend(op.tag, e.payload))
    if op.kind == "spec":
        return _spectral_apply(op, e)
    if op.kind == "ft":
        return finite_type_apply(op.inner, e)
    if op.kind == "bar":
        return stable_apply(op.inner, e)
    if op.kind == "tilde":
        return tilde_apply(op.inner, e)
    if op.kind == "asc":
        return _ascent_apply(op, e)
    if op.kind == "desc":
        return _descent_apply(op, e)
    raise UnsupportedOperation(f"unknown operation kind {op.kind!r}")


def _spectral_apply(op: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    if op.tag == "M":
        return e  # localization at the maximal ideal of a local domain
    if dom.family != "valuation":
        raise UnsupportedOperation("coarsening primes exist only on the rank-2 valuation instance")
    if dom.payload_group.kind == "Z":
        return e  # already living over the localized domain
    if dom.payload_group.kind != "ZxZ":
        raise UnsupportedOperation("spectral localization needs the rank-2 lex group")
    prime = DomainPrime(dom.payload)
    seg = dplusm.localize_at(e.payload, prime)
    localized = valuation_domain(dom.payload.residue_ext, "Z", name=f"{dom.name}@P1")
    return make_handle(localized, seg)


def _overring_domain(dom: DomainHandle, tag: str) -> DomainHandle:
    if tag == "K":
        raise UnsupportedOperation("the quotient field is not an overring with its own ideal engine")
    if dom.family == "numsgr":
        return semigroup_domain([1], name=f"{dom.name}^hull")
    if dom.family == "pullback":
        return DomainHandle("valuation", dom.payload.valuation, name=f"{dom.name}^V")
    return dom


def _to_overring_handle(e: IdealHandle, tag: str) -> IdealHandle:
    dom = e.domain
    over = _overring_domain(dom, tag)
    if dom.family == "numsgr":
        if numsgr.hull_extension(e.payload) != e.payload:
            raise UnsupportedOperation("not an ideal of the overring")
        return make_handle(over, numsgr.ideal_normalize(over.payload, [min(e.payload.gens)]))
    if dom.family == "pullback":
        m = e.payload
        if m.jumps:
            raise UnsupportedOperation("not an ideal of the overring")
        return make_handle(over, m.tail)
    return e


def _from_overring_handle(dom: DomainHandle, h: IdealHandle, tag: str) -> IdealHandle:
    if dom.family == "numsgr":
        m = min(h.payload.gens)
        ring = dom.payload
        return make_handle(dom, numsgr.ideal_normalize(ring, range(m, m + ring.conductor + 1)))
    if dom.family == "pullback":
        return make_handle(dom, dplusm.canonical(dom.payload, (), h.payload))
    return h


def _ascent_apply(op: SemistarOp, e: IdealHandle) -> IdealHandle:
    # the ascended operation only acts on modules over the overring; there it
    # is the restriction of the original map
    t = _to_overring_handle(e, op.tag)  # raises if e is not an overring module
    del t
    return apply(op.inner, e)


def _descent_apply(op: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    if op.tag == "K":
        return make_handle(dom, dom.engine.whole())
    extended = make_handle(dom, dom.engine.extend(op.tag, e.payload))
    over = _to_overring_handle(extended, op.tag)
    image = apply(op.inner, over)
    if image.domain != over.domain:
        raise UnsupportedOperation("descent through a domain-changing operation")
    return _from_overring_handle(dom, image, op.tag)


def finite_type_apply(inner: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    eng = dom.engine
    if "all_fg" in dom.capabilities or e.finitely_generated:
        return apply(inner, e)
    # dense-group families: exhaust an open-tail module by the principal
    # closed-cut envelopes t^b V (b decreasing to the cut), whose images are
    # shifts of (V)^inner; the union is again representable
    v_image = apply(inner, make_handle(dom, _v_module_payload(dom)))
    if eng.is_whole(e.payload):
        # shifts of the envelope image over arbitrarily low cuts cover the group
        return e
    open_tail = _open_tail_of(dom, e.payload)
    hull = _min_support_segment(dom, v_image.payload)
    out_tail = segment_add(open_tail, hull)
    return make_handle(dom, _tail_only_payload(dom, out_tail))


def _v_module_payload(dom: DomainHandle):
    if dom.family == "pullback":
        return dplusm.overring_module(dom.payload)
    if dom.family == "valuation":
        return dom.payload.unit_segment()
    raise UnsupportedOperation("no overring envelope for this family")


def _open_tail_of(dom: DomainHandle, payload) -> Segment:
    if dom.family == "pullback":
        if payload.jumps:
            raise ConsistencyError("finitely generated module slipped past the shortcut")
        return payload.tail
    return payload


def _min_support_segment(dom: DomainHandle, payload) -> Segment:
    if dom.family == "pullback":
        return dplusm._hull(payload)
    return payload


def _tail_only_payload(dom: DomainHandle, tail: Segment):
    if dom.family == "pullback":
        return dplusm.canonical(dom.payload, (), tail)
    return tail


def stable_apply(inner: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    if known_stable(inner, dom):
        return apply(inner, e)
    dstar = apply(inner, unit_handle(dom))
    if dom.engine.is_whole(dstar.payload):
        # the operation is the constant map to the quotient field, which is
        # already stable
        return apply(inner, e)
    ls = localizing_system(inner, dom)
    meet = ls.members[0]
    for j in ls.members[1:]:
        meet = handle_intersect(meet, j)
    return handle_colon(e, meet)


@dataclass(frozen=True)
class LocalizingSystemView:
    """F^op presented by a finite cofinal family of certified members."""

    domain: DomainHandle
    op: SemistarOp
    members: tuple
    trivial: bool  # the system is {D}

    def contains(self, i: IdealHandle) -> bool:
        dstar = apply(self.op, unit_handle(self.domain))
        return handle_eq(apply(self.op, i), dstar)


def localizing_system(op: SemistarOp, dom: DomainHandle) -> LocalizingSystemView:
    """Cofinal family for {I integral : I^op = D^op} on a local domain.

    If M^op differs from D^op, monotonicity pins the system to {D}.  When
    they agree, {M} is cofinal provided no proper representable subideal of
    M lands on D^op; that exclusion is certified on a structured sample and
    by the principal-envelope argument (every proper subideal sits inside
    some x D with positive value, and x D^op is strictly below D^op once
    D^op is cut-based).
    """
    import random

    eng = dom.engine
    dstar = apply(op, unit_handle(dom))
    if eng.is_whole(dstar.payload):
        raise UnsupportedOperation("constant-field operation has no finite cofinal family")
    mstar = apply(op, maximal_handle(dom))
    if not handle_eq(mstar, dstar):
        return LocalizingSystemView(dom, op, (unit_handle(dom),), True)
    if dom.family == "numsgr":
        raise UnsupportedOperation("no certified cofinal family below M for this ring")
    rng = random.Random(0xC0F1)
    for payload in eng.proper_subideal_samples(rng):
        sub = make_handle(dom, payload)
        if handle_eq(apply(op, sub), dstar):
            raise UnsupportedOperation("cofinal family {M} failed its exclusion guard")
    member = maximal_handle(dom)
    if not handle_eq(apply(op, member), dstar):
        raise ConsistencyError("certified member lost its defining property")
    return LocalizingSystemView(dom, op, (member,), False)


def ls_contains(ls: LocalizingSystemView, i: IdealHandle) -> bool:
    return ls.contains(i)


def tilde_apply(inner: SemistarOp, e: IdealHandle) -> IdealHandle:
    dom = e.domain
    maxes = quasi_star_maximals(inner, dom)
    if maxes:
        return e  # local domain, M quasi-maximal: E D_M = E
    return make_handle(dom, dom.engine.whole())


def quasi_star_ideal_check(op: SemistarOp, i: IdealHandle) -> bool:
    if not handle_is_integral(i):
        raise AlgebraError("quasi-ideal check needs an integral ideal")
    closed = apply(op, i)
    met = handle_intersect(closed, unit_handle(i.domain))
    return handle_eq(met, i)


def quasi_star_maximals(op: SemistarOp, dom: DomainHandle) -> tuple:
    """Quasi-maximal tags of the finite-type closure: ("M",) or ()."""
    ftop = ft_op(op)
    if quasi_star_ideal_check(ftop, maximal_handle(dom)):
        return ("M",)
    dstarf = apply(ftop, unit_handle(dom))
    if dom.engine.is_whole(dstarf.payload):
        return ()
    raise UnsupportedMaximalSpectrum(
        "M is not a quasi-ideal of the finite-type closure and the closure of D "
        "is not the quotient field; the quasi-maximal spectrum is not representable"
    )


# ---------------------------------------------------------------------------
# ordering and equality between operations

def op_leq_syntactic(a: SemistarOp, b: SemistarOp) -> "str | None":
    """A theorem tag when a <= b follows from term shape, else None."""
    if a == b:
        return "same-term"
    if a.kind == "identity":
        return "identity-minimal"
    if a.kind == "ft" and a.inner == b:
        return "finite-type-below"
    if a.kind == "bar" and a.inner == b:
        return "stable-closure-below"
    if a.kind == "tilde":
        if a.inner == b:
            return "tilde-below"
        if b.kind in ("ft", "bar") and b.inner == a.inner:
            return "tilde-below-derived"
    return None


def op_closed_form(op: SemistarOp, dom: DomainHandle) -> "str | None":
    """Reduce an operation to one of the closed forms the local families
    admit: "identity", "constant-K", or "colon-M" (the stable closure by the
    maximal ideal).  None when no exact reduction applies."""
    if op.kind == "identity" or (op.kind == "spec" and op.tag == "M"):
        return "identity"
    if op.kind == "st":
        if op.tag == "K":
            return "constant-K"
        if dom.family == "valuation":
            return "identity"  # integrally closed: V extension fixes every ideal
        return None
    if op.kind == "tilde":
        try:
            return "identity" if quasi_star_maximals(op.inner, dom) else "constant-K"
        except UnsupportedOperation:
            return None
    if op.kind == "bar":
        if known_stable(op.inner, dom):
            return op_closed_form(op.inner, dom)
        try:
            dstar = apply(op.inner, unit_handle(dom))
            if dom.engine.is_whole(dstar.payload):
                return "constant-K"
            return "identity" if localizing_system(op.inner, dom).trivial else "colon-M"
        except UnsupportedOperation:
            return None
    if op.kind == "ft":
        inner_form = op_closed_form(op.inner, dom)
        if inner_form in ("identity", "constant-K"):
            return inner_form  # both are finite-type maps already
        return None
    return None


def _form_separating_probe(form1: str, form2: str, dom: DomainHandle) -> IdealHandle:
    pair = {form1, form2}
    if pair == {"identity", "colon-M"}:
        return maximal_handle(dom)  # (M : M) is the overring, never M
    return unit_handle(dom)


def ops_equal_on(op1: SemistarOp, op2: SemistarOp, universe) -> "Verdict":
    """Equality of two operations, decided exactly where the family allows."""
    from .verdict import holds, refuted, unknown

    dom = universe[0].domain
    if op1 == op2:
        return holds("same-term")
    for e in universe:
        if not handle_eq(apply(op1, e), apply(op2, e)):
            return refuted(e, detail="operations differ at this ideal")
    f1, f2 = op_closed_form(op1, dom), op_closed_form(op2, dom)
    if f1 is not None and f2 is not None:
        if f1 == f2:
            return holds("closed-forms-agree", detail=f"both reduce to {f1}")
        probe = _form_separating_probe(f1, f2, dom)
        if handle_eq(apply(op1, probe), apply(op2, probe)):
            raise ConsistencyError("closed forms disagree but the probe does not separate")
        return refuted(probe, detail=f"closed forms differ: {f1} vs {f2}")
    if dom.family == "valuation":
        # homogeneity: a segment is a shift of the unit or the maximal ideal,
        # so agreement on those two decides agreement everywhere
        for probe in (unit_handle(dom), maximal_handle(dom)):
            if not handle_eq(apply(op1, probe), apply(op2, probe)):
                return refuted(probe, detail="operations differ at this ideal")
        return holds("determined-by-unit-and-maximal")
    return unknown(len(universe), detail="agree on the whole universe")


def op_leq(op1: SemistarOp, op2: SemistarOp, universe) -> "Verdict":
    from .verdict import holds, refuted, unknown

    tag = op_leq_syntactic(op1, op2)
    if tag is not None:
        return holds(tag)
    for e in universe:
        if not handle_leq(apply(op1, e), apply(op2, e)):
            return refuted(e, detail="first operation is not below the second here")
    dom = universe[0].domain
    if dom.family == "valuation":
        for probe in (unit_handle(dom), maximal_handle(dom)):
            if not handle_leq(apply(op1, probe), apply(op2, probe)):
                return refuted(probe, detail="first operation is not below the second here")
        return holds("determined-by-unit-and-maximal")
    return unknown(len(universe))
