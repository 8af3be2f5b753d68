"""Predicates of multiplicative ideal theory, with verdicts and witnesses.

Every universally quantified predicate returns Holds only through a named
structural theorem about the family, Refuted with a replayable witness, and
Unknown otherwise.  Refutations of non-existence claims rest on two exact
certificates: the cut-parity argument (an open tail with no jump cannot be
the closure image of a finitely generated module once the overring envelope
is fixed by the operation) and exhausted finite windows in semigroup rings.
"""

from __future__ import annotations

from .algebra.fields import AlgebraError
from .operations import (
    ConsistencyError,
    DomainHandle,
    IdealHandle,
    SemistarOp,
    UnsupportedMaximalSpectrum,
    UnsupportedOperation,
    apply,
    bar_op,
    ft_op,
    handle_eq,
    handle_intersect,
    handle_inverse,
    handle_is_integral,
    handle_leq,
    handle_mul,
    known_finite_type,
    localizing_system,
    make_handle,
    maximal_handle,
    quasi_star_ideal_check,
    tilde_op,
    unit_handle,
)
from .verdict import SampleSpec, Verdict, holds, refuted, unknown


def theorem_suite(domain, op, spec):
    """Run the executable implication lattice; see semistar.theorems."""
    from .theorems import theorem_suite as _suite

    return _suite(domain, op, spec)


# ---------------------------------------------------------------------------
# sampling universes

def probe_ideals(domain: DomainHandle, spec: SampleSpec, n=None, integral=False, fg=False):
    """Deterministic list of ideals: canonical landmarks plus seeded samples."""
    eng = domain.engine
    out = [unit_handle(domain), maximal_handle(domain)]
    if domain.family in ("pullback", "valuation"):
        v = make_handle(domain, eng.extend("V", eng.unit()))
        if not handle_eq(v, out[0]):
            out.append(v)
    rng = spec.rng(f"probe/{domain.name}/{integral}/{fg}")
    want = n if n is not None else spec.count
    while len(out) < want + 2:
        sampler = eng.sample_fg_ideal if fg else eng.sample_ideal
        out.append(make_handle(domain, sampler(rng, spec, integral=integral)))
    if integral:
        out = [h for h in out if handle_is_integral(h)]
    if fg:
        out = [h for h in out if h.finitely_generated]
    return out


def fg_ideal_pairs(domain: DomainHandle, spec: SampleSpec, n=None):
    """Seeded pairs of finitely generated integral ideals (both nonzero)."""
    rng = spec.rng(f"pairs/{domain.name}")
    eng = domain.engine
    want = n if n is not None else spec.count
    pairs = []
    while len(pairs) < want:
        a = make_handle(domain, eng.sample_fg_ideal(rng, spec, integral=True))
        b = make_handle(domain, eng.sample_fg_ideal(rng, spec, integral=True))
        pairs.append((a, b))
    return pairs


# ---------------------------------------------------------------------------
# invertibility and finiteness

def is_star_invertible(op: SemistarOp, i: IdealHandle) -> bool:
    dom = i.domain
    prod = handle_mul(i, handle_inverse(i))
    return handle_eq(apply(op, prod), apply(op, unit_handle(dom)))


def _envelope_fixed(op: SemistarOp, dom: DomainHandle) -> bool:
    """True when the operation maps the overring V to itself, which pins the
    minimal support level of every finitely generated module's image."""
    if dom.family == "numsgr":
        return False
    eng = dom.engine
    v = make_handle(dom, eng.extend("V", eng.unit()))
    return handle_eq(apply(op, v), v)


def _no_min_support(h: IdealHandle) -> bool:
    """True when the payload has no minimal support level (open tail with no
    jump, or the whole quotient field)."""
    dom = h.domain
    if dom.family == "numsgr":
        return False
    p = h.payload
    if dom.family == "valuation":
        return p.shape in ("open", "whole")
    return not p.jumps and p.tail.shape in ("open", "whole")


def _min_support_cut(h: IdealHandle):
    """The minimal support level of a cut-based payload, None if open/whole."""
    dom = h.domain
    p = h.payload
    if dom.family == "numsgr":
        return p.min_value()
    if dom.family == "valuation":
        return p.cut if p.shape == "closed" else None
    if p.jumps:
        return p.jumps[0][0]
    return p.tail.cut if p.tail.shape == "closed" else None


def _open_cut_of(h: IdealHandle):
    """The open-tail cut of a non-finitely-generated payload, None for whole."""
    dom = h.domain
    p = h.payload
    if dom.family == "valuation":
        return p.cut if p.shape == "open" else None
    return p.tail.cut if p.tail.shape == "open" else None


def is_star_finite(op: SemistarOp, i: IdealHandle, spec: SampleSpec, within: bool = False) -> Verdict:
    """Is there a finitely generated J with J^op = i^op (within: J inside i)?"""
    dom = i.domain
    if i.finitely_generated:
        return holds("self-witness")
    if "all_fg" in dom.capabilities:
        return holds("all-representable-ideals-finitely-generated")
    image = apply(op, i)
    if _envelope_fixed(op, dom):
        if _no_min_support(image):
            return refuted(i, image, detail="cut-parity: image of any finitely generated module has a minimal support level")
        if within:
            cut = _open_cut_of(i)
            c0 = _min_support_cut(image)
            if cut is not None and c0 is not None and not dom.payload_group.lt(cut, c0):
                return refuted(
                    i, image,
                    detail="support-below-envelope: the image reaches a level no subideal's closure can",
                )
    # search for an explicit witness
    candidates = []
    eng = dom.engine
    if not within:
        candidates.append(unit_handle(dom))
        candidates.append(make_handle(dom, eng.extend("V", eng.unit())))
    rng = spec.rng(f"finite/{dom.name}")
    for _ in range(spec.count):
        j = make_handle(dom, eng.sample_fg_ideal(rng, spec))
        candidates.append(j)
    for j in candidates:
        if within and not handle_leq(j, i):
            continue
        if handle_eq(apply(op, j), image):
            return holds("witness-found", detail=repr(j))
    return unknown(spec.count)


# ---------------------------------------------------------------------------
# star-domains and their relatives

def is_star_domain(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    if "valuation" in domain.capabilities:
        return holds("valuation-fg-principal", detail="every finitely generated ideal is principal, hence invertible under any operation")
    for i in probe_ideals(domain, spec, n=spec.count, fg=True):
        if not i.finitely_generated:
            continue
        if not is_star_invertible(op, i):
            return refuted(i, detail="finitely generated ideal that is not star-invertible")
    return unknown(spec.count)


def is_pstarmd(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    routes = {
        "finite-type-route": is_star_domain(domain, ft_op(op), spec),
        "tilde-route": is_star_domain(domain, tilde_op(op), spec),
    }
    direct = holds("valuation-fg-principal") if "valuation" in domain.capabilities else None
    if direct is None:
        fop = ft_op(op)
        direct = unknown(spec.count)
        for i in probe_ideals(domain, spec, n=spec.count, fg=True):
            if not is_star_invertible(fop, i):
                direct = refuted(i, detail="finitely generated ideal that is not invertible under the finite-type closure")
                break
    routes["direct-route"] = direct
    decided_holds = [k for k, v in routes.items() if v.is_holds]
    decided_refuted = [k for k, v in routes.items() if v.is_refuted]
    if decided_holds and decided_refuted:
        raise ConsistencyError(f"pstarmd routes disagree: {routes}")
    if decided_refuted:
        return routes[decided_refuted[0]]
    if decided_holds:
        return routes[decided_holds[0]]
    return unknown(spec.count)


def _induced_by_valuation_overring(op: SemistarOp, domain: DomainHandle) -> bool:
    if domain.family in ("pullback", "valuation") and op.kind == "st" and op.tag in ("V", "ic"):
        return True
    if domain.family == "numsgr" and op.kind == "st" and op.tag in ("V", "ic"):
        return True  # the hull ring is a discrete valuation ring
    if op.kind == "desc" and op.tag in ("V", "ic"):
        return op.inner.kind == "identity"
    return False


def _cancellation_verdict(domain, op, spec, fg_only: bool) -> Verdict:
    sd = is_star_domain(domain, op, spec)
    if sd.is_holds:
        return holds("star-domain-cancellation", detail=sd.reason)
    if _induced_by_valuation_overring(op, domain):
        return holds("valuation-overring-ab")
    eng = domain.engine
    if domain.family == "numsgr":
        from .numsgr import enumerate_ideals

        window = enumerate_ideals(domain.payload, 0, domain.payload.conductor + 2)
        ideals = [make_handle(domain, i) for i in window]
    else:
        ideals = probe_ideals(domain, spec, n=24, fg=fg_only)
    budget = min(spec.count * 40, len(ideals) ** 3)
    checked = 0
    import itertools

    for e, f, g in itertools.product(ideals, repeat=3):
        if checked >= budget:
            break
        checked += 1
        if not e.finitely_generated:
            continue
        if fg_only and not (f.finitely_generated and g.finitely_generated):
            continue
        ef = apply(op, handle_mul(e, f))
        eg = apply(op, handle_mul(e, g))
        if handle_leq(ef, eg) and not handle_leq(apply(op, f), apply(op, g)):
            return refuted(e, f, g, detail="cancellation failure")
    return unknown(checked)


def is_eab(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    return _cancellation_verdict(domain, op, spec, fg_only=True)


def is_ab(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    return _cancellation_verdict(domain, op, spec, fg_only=False)


# ---------------------------------------------------------------------------
# coherence variants

EXTRACOHERENT = "Extracoherent"
COHERENT = "Coherent"
TRULY_COHERENT = "TrulyCoherent"
QUASI_COHERENT = "QuasiCoherent"


def _maps_into_chain(op: SemistarOp, domain: DomainHandle) -> bool:
    """True when every image of the operation is a module over a valuation
    overring, so that images are totally ordered by inclusion."""
    if domain.family == "valuation":
        return True
    if op.kind == "st" and op.tag in ("V", "ic"):
        return True
    if op.kind == "desc" and op.tag in ("V", "ic"):
        return True
    if op.kind == "ft":
        return _maps_into_chain(op.inner, domain)
    return False


def _coherent_pair_witness(domain, op, spec, e, f) -> "Verdict":
    """Existence of fg J with J^op = e^op meet f^op, decided per pair."""
    x = handle_intersect(apply(op, e), apply(op, f))
    candidates = [e, f]
    if x.finitely_generated:
        candidates.append(x)
    rng = spec.rng(f"coh/{domain.name}")
    eng = domain.engine
    for _ in range(24):
        candidates.append(make_handle(domain, eng.sample_fg_ideal(rng, spec)))
    for j in candidates:
        if j.finitely_generated and handle_eq(apply(op, j), x):
            return holds("witness-found", detail=repr(j))
    if _envelope_fixed(op, domain) and _no_min_support(x):
        return refuted(e, f, detail="cut-parity: the intersection of the images is an open tail")
    return unknown(24)


def landmark_pairs(domain: DomainHandle):
    """Canonical finitely generated integral pairs whose interplay the
    worked families hinge on."""
    from . import dplusm

    out = []
    if domain.family == "pullback" and domain.payload.is_proper:
        K = domain.payload.residue_ext
        one = (1, 0) if domain.payload_group.kind == "ZxZ" else 1
        md = make_handle(domain, dplusm.module_from_generators(domain.payload, [(K.one, one)]))
        mxd = make_handle(domain, dplusm.module_from_generators(domain.payload, [(K.gen(), one)]))
        out.append((md, mxd))
    if domain.family == "numsgr" and len(domain.payload.generators) >= 3:
        from .numsgr import ideal_normalize

        s1, s2, s3 = domain.payload.generators[:3]
        e = make_handle(domain, ideal_normalize(domain.payload, [s1, s2]))
        f = make_handle(domain, ideal_normalize(domain.payload, [s1, s3]))
        out.append((e, f))
    m = maximal_handle(domain)
    if m.finitely_generated:
        out.append((unit_handle(domain), m))
    return out


def coherence_check(domain: DomainHandle, kind: str, op: SemistarOp, spec: SampleSpec) -> Verdict:
    eng = domain.engine
    pairs = landmark_pairs(domain) + fg_ideal_pairs(domain, spec)
    if "valuation" in domain.capabilities:
        # finitely generated ideals are principal; the chain order makes the
        # meet of any two of them one of the two, hence its own witness
        return holds("chain-meet-finitely-generated")
    if kind == QUASI_COHERENT:
        if "all_fg" in domain.capabilities:
            return holds("all-representable-ideals-finitely-generated")
        for f, _ in pairs:
            inv = handle_inverse(f)
            sub = is_star_finite(op, inv, spec)
            if sub.is_refuted:
                return refuted(f, detail=f"(D:F) not star-finite: {sub.detail}")
        return unknown(len(pairs))

    if kind == TRULY_COHERENT:
        if "all_fg" in domain.capabilities:
            return holds("all-representable-ideals-finitely-generated")
        for e, f in pairs:
            meet = handle_intersect(e, f)
            sub = is_star_finite(op, meet, spec)
            if sub.is_refuted:
                return refuted(e, f, detail=f"E meet F not star-finite: {sub.detail}")
        return unknown(len(pairs))

    if kind == COHERENT:
        if "all_fg" in domain.capabilities:
            return holds("all-representable-ideals-finitely-generated",
                         detail="the meet of two closed images is representable and finitely generated")
        chain = _maps_into_chain(op, domain)
        for e, f in pairs:
            sub = _coherent_pair_witness(domain, op, spec, e, f)
            if sub.is_refuted:
                return refuted(*sub.witness, detail=sub.detail)
            if chain and not sub.is_holds:
                raise ConsistencyError("chain-image family failed to exhibit a witness")
        if chain:
            return holds("overring-chain-images",
                         detail="images are ideals of a valuation overring, so either image is the meet")
        return unknown(len(pairs))

    if kind == EXTRACOHERENT:
        for e, f in pairs:
            meet = handle_intersect(e, f)
            gap_lhs = apply(op, meet)
            gap_rhs = handle_intersect(apply(op, e), apply(op, f))
            if not handle_eq(gap_lhs, gap_rhs):
                return refuted(e, f, detail="strict-gap: (E meet F)^op sits strictly below E^op meet F^op, and any J inside E meet F closes below it")
            sub = is_star_finite(op, meet, spec, within=True)
            if sub.is_refuted:
                return refuted(e, f, detail=f"no finitely generated J inside the meet closes onto it: {sub.detail}")
        from .operations import known_stable

        if known_stable(op, domain) and "all_fg" in domain.capabilities:
            # stability kills the gap and the meet is its own witness
            return holds("stable-all-fg", detail="J = E meet F is finitely generated and closes onto the meet of the images")
        return unknown(len(pairs))

    raise AlgebraError(f"unknown coherence kind {kind!r}")


# ---------------------------------------------------------------------------
# H and I domains

def _raw_quasi_maximals(op: SemistarOp, domain: DomainHandle):
    """Quasi-op-maximal tags, exact on rank-1 families where the nonzero
    prime spectrum is just {M}; None when not decidable (rank 2)."""
    m = maximal_handle(domain)
    if quasi_star_ideal_check(op, m):
        return ("M",)
    if domain.family == "valuation" and domain.payload_group.kind == "ZxZ":
        return None
    return ()


def h_clauses(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> dict:
    """The decidable clauses of the finite-character equivalence, each exact
    on these families (the nonzero prime spectrum is {M} in rank one)."""
    from .operations import ops_equal_on, quasi_star_maximals

    out = {}
    dstar = apply(op, unit_handle(domain))
    m = maximal_handle(domain)

    # clause: the localizing systems of op and its finite-type closure agree
    try:
        ls_full = localizing_system(op, domain)
        ls_fin = localizing_system(ft_op(op), domain)
        if ls_full.trivial == ls_fin.trivial:
            out["systems-equal"] = holds("cofinal-families-agree")
        else:
            wit = m if not ls_full.trivial else unit_handle(domain)
            out["systems-equal"] = refuted(wit, detail="the two localizing systems have different cofinal families")
    except UnsupportedOperation:
        pass

    # clause: tilde and bar coincide
    universe = probe_ideals(domain, spec, n=24)
    try:
        out["tilde-equals-bar"] = ops_equal_on(tilde_op(op), bar_op(op), universe)
    except (UnsupportedOperation, UnsupportedMaximalSpectrum):
        pass

    # clause: every nonzero prime with P^op = D^op has an fg subideal doing the same
    if domain.family != "valuation" or domain.payload_group.kind != "ZxZ":
        mstar = apply(op, m)
        if not handle_eq(mstar, dstar):
            out["prime-witness"] = holds("no-qualifying-prime", detail="the only nonzero prime does not close onto D^op")
        else:
            sub = is_star_finite(op, m, spec, within=True)
            if sub.is_refuted:
                out["prime-witness"] = refuted(m, detail=sub.detail)
            elif sub.is_holds:
                out["prime-witness"] = holds("prime-finitely-witnessed", detail=sub.detail)

    # clause: quasi-maximal spectra of op and its finite-type closure agree
    try:
        raw = _raw_quasi_maximals(op, domain)
        fin = quasi_star_maximals(op, domain)
        if raw is not None:
            if raw == fin:
                out["maximal-spectra-agree"] = holds("spectra-coincide", detail=f"both are {set(fin) or 'empty'}")
            else:
                out["maximal-spectra-agree"] = refuted(m, detail=f"quasi-maximals differ: {raw} vs {fin}")
    except (UnsupportedOperation, UnsupportedMaximalSpectrum):
        pass

    return out


def is_H_domain(domain: DomainHandle, op: SemistarOp, spec: SampleSpec = SampleSpec()) -> Verdict:
    if known_finite_type(op):
        return holds("finite-type", detail="finite-type operations satisfy the finite-character condition trivially")
    if "all_fg" in domain.capabilities:
        return holds("all-representable-ideals-finitely-generated")
    clauses = h_clauses(domain, op, spec)
    decided_h = [k for k, v in clauses.items() if v.is_holds]
    decided_r = [k for k, v in clauses.items() if v.is_refuted]
    if decided_h and decided_r:
        raise ConsistencyError(f"H clauses disagree: {clauses}")
    if decided_r:
        v = clauses[decided_r[0]]
        return refuted(*v.witness, detail=f"{decided_r[0]}: {v.detail}")
    if decided_h:
        v = clauses[decided_h[0]]
        return holds(v.reason, detail=f"{decided_h[0]}: {v.detail}")
    return unknown(len(clauses))


def is_I_domain(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    if known_finite_type(op):
        return holds("finite-type", detail="invertibility under op and its finite-type closure coincide syntactically")
    if "valuation" in domain.capabilities:
        return holds("valuation-fg-principal", detail="finitely generated ideals are principal and invertible under every operation")
    h = is_H_domain(domain, op, spec)
    if h.is_holds:
        return holds("finite-character", detail="the finite-character condition forces the invertibility classes to agree")
    fop = ft_op(op)
    for i in probe_ideals(domain, spec, fg=True):
        if is_star_invertible(op, i) and not is_star_invertible(fop, i):
            return refuted(i, detail="invertible under op but not under its finite-type closure")
    return unknown(spec.count)


# ---------------------------------------------------------------------------
# chain conditions

def is_star_noetherian(domain: DomainHandle, op: SemistarOp, chain_length: int = 8) -> Verdict:
    if "noetherian" in domain.capabilities:
        return holds("noetherian")
    eng = domain.engine
    group = domain.payload_group
    from fractions import Fraction

    from .algebra.groups import Segment

    cuts = []
    if group.kind == "Q":
        cuts = [Fraction(1, n) for n in range(1, chain_length + 1)]
    elif group.kind == "ZxZ":
        cuts = [(1, -n) for n in range(1, chain_length + 1)]
    if not cuts:
        return unknown(0)
    chain = []
    for c in cuts:
        if domain.family == "pullback":
            from . import dplusm

            payload = dplusm.canonical(domain.payload, (), Segment.closed(group, c))
        else:
            payload = Segment.closed(group, c)
        chain.append(make_handle(domain, payload))
    for h in chain:
        if not handle_is_integral(h) or not quasi_star_ideal_check(op, h):
            return unknown(len(chain), detail="standard ascending chain left the quasi-ideal class")
    for lo, hi in zip(chain, chain[1:]):
        if not (handle_leq(lo, hi) and not handle_eq(lo, hi)):
            raise ConsistencyError("chain is not strictly ascending")
    return refuted(*chain, detail="strictly ascending chain of quasi-ideals")


def is_star_dedekind(domain: DomainHandle, op: SemistarOp, spec: SampleSpec) -> Verdict:
    p = is_pstarmd(domain, op, spec)
    n = is_star_noetherian(domain, op)
    s = is_star_domain(domain, op, spec)
    # the two routes of the equivalence must not contradict each other
    if p.is_holds and n.is_holds and s.is_refuted:
        raise ConsistencyError("P*MD with refuted star-domain")
    if s.is_holds and n.is_holds and p.is_refuted:
        raise ConsistencyError("noetherian star-domain with refuted P*MD")
    if n.is_refuted:
        return refuted(*n.witness, detail="not star-noetherian")
    if p.is_refuted:
        return refuted(*p.witness, detail="not a P*MD")
    if p.is_holds and n.is_holds:
        return holds("pstarmd-and-noetherian")
    return unknown(spec.count)
