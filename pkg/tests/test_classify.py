"""Predicate verdicts on the worked instances, with witness replay."""

from __future__ import annotations

from semistar.classify import (
    COHERENT,
    EXTRACOHERENT,
    QUASI_COHERENT,
    TRULY_COHERENT,
    coherence_check,
    h_clauses,
    is_H_domain,
    is_I_domain,
    is_ab,
    is_eab,
    is_pstarmd,
    is_star_dedekind,
    is_star_domain,
    is_star_finite,
    is_star_invertible,
    is_star_noetherian,
    probe_ideals,
)
from semistar.operations import (
    apply,
    d_op,
    handle_eq,
    handle_inverse,
    handle_intersect,
    handle_leq,
    handle_mul,
    maximal_handle,
    quasi_star_ideal_check,
    st_op,
    t_op,
    unit_handle,
    v_op,
)
from semistar.verdict import SampleSpec

SPEC = SampleSpec(seed=5, count=60)


# ---------------------------------------------------------------------------
# invertibility and finiteness

def test_invertibility(dom_pvd, dom_345, dom_vq):
    st = st_op("V")
    assert not is_star_invertible(st, maximal_handle(dom_pvd))
    # principal ideals are invertible under every operation
    rng = SPEC.rng("inv")
    for domain, op in ((dom_pvd, st), (dom_345, v_op()), (dom_vq, v_op())):
        principal = probe_ideals(domain, SPEC, n=10, fg=True)
        for h in principal:
            if h.fg_witness and len(h.fg_witness) == 1:
                assert is_star_invertible(op, h)
    e = dom_345.engine
    from semistar.numsgr import ideal_normalize

    from semistar.operations import make_handle

    eh = make_handle(dom_345, ideal_normalize(dom_345.payload, [3, 4]))
    assert not is_star_invertible(v_op(), eh)


def test_star_finiteness(dom_318, dom_vq):
    st = st_op("V")
    md = _mk_module(dom_318, 1, one=True)
    mxd = _mk_module(dom_318, 1, one=False)
    mm = handle_intersect(md, mxd)
    verdict = is_star_finite(st, mm, SPEC)
    assert verdict.is_refuted and "cut-parity" in verdict.detail
    assert is_star_finite(st, md, SPEC).is_holds  # self-witness
    # M over the dense valuation domain: v-finite (D itself works) but not
    # within-finite, and t-finiteness fails by parity
    m = maximal_handle(dom_vq)
    assert is_star_finite(v_op(), m, SPEC).is_holds
    within = is_star_finite(v_op(), m, SPEC, within=True)
    assert within.is_refuted and "support-below-envelope" in within.detail
    assert is_star_finite(t_op(), m, SPEC, within=True).is_refuted


def _mk_module(domain, level, one: bool):
    from semistar.dplusm import module_from_generators
    from semistar.operations import make_handle

    K = domain.payload.residue_ext
    coeff = K.one if one else K.gen()
    return make_handle(domain, module_from_generators(domain.payload, [(coeff, level)]))


# ---------------------------------------------------------------------------
# star-domain family

def test_star_domain_verdicts(dom_pvd, dom_318, dom_345, dom_vq):
    st = st_op("V")
    v1 = is_star_domain(dom_pvd, st, SPEC)
    assert v1.is_refuted and handle_eq(v1.witness[0], maximal_handle(dom_pvd))
    assert is_star_domain(dom_318, st, SPEC).is_refuted
    assert is_star_domain(dom_345, v_op(), SPEC).is_refuted
    assert is_star_domain(dom_vq, v_op(), SPEC).is_holds


def test_star_domain_witness_replay(dom_pvd):
    st = st_op("V")
    verdict = is_star_domain(dom_pvd, st, SPEC)
    witness = verdict.witness[0]
    prod = handle_mul(witness, handle_inverse(witness))
    assert not handle_eq(apply(st, prod), apply(st, unit_handle(dom_pvd)))


def test_pstarmd_routes_consistent(dom_pvd, dom_318, dom_345, dom_vq, dom_vz, dom_lex):
    cases = [
        (dom_pvd, st_op("V"), "refuted"),
        (dom_318, st_op("V"), "refuted"),
        (dom_345, v_op(), "refuted"),
        (dom_vq, v_op(), "holds"),
        (dom_vz, v_op(), "holds"),
        (dom_lex, v_op(), "holds"),
    ]
    for domain, op, expected in cases:
        verdict = is_pstarmd(domain, op, SPEC)
        assert verdict.outcome == expected, f"{domain.name}: {verdict}"


def test_ab_eab(dom_pvd, dom_vq, dom_345):
    assert is_ab(dom_pvd, st_op("V"), SPEC).is_holds
    assert is_ab(dom_vq, v_op(), SPEC).is_holds
    assert is_eab(dom_vq, d_op(), SPEC).is_holds
    verdict = is_eab(dom_345, d_op(), SPEC)
    assert verdict.is_refuted
    e, f, g = verdict.witness
    # replay the cancellation failure
    assert handle_leq(apply(d_op(), handle_mul(e, f)), apply(d_op(), handle_mul(e, g)))
    assert not handle_leq(apply(d_op(), f), apply(d_op(), g))


# ---------------------------------------------------------------------------
# coherence

def test_coherence_numsgr(dom_345):
    v = v_op()
    extra = coherence_check(dom_345, EXTRACOHERENT, v, SPEC)
    assert extra.is_refuted and "strict-gap" in extra.detail
    e, f = extra.witness
    assert sorted(e.payload.gens) == [3, 4] and sorted(f.payload.gens) == [3, 5]
    # replay: the gap is strict
    meet = handle_intersect(e, f)
    assert not handle_eq(apply(v, meet), handle_intersect(apply(v, e), apply(v, f)))
    for kind in (COHERENT, TRULY_COHERENT, QUASI_COHERENT):
        assert coherence_check(dom_345, kind, v, SPEC).is_holds


def test_coherence_318(dom_318):
    st = st_op("V")
    assert coherence_check(dom_318, COHERENT, st, SPEC).is_holds
    truly = coherence_check(dom_318, TRULY_COHERENT, st, SPEC)
    assert truly.is_refuted
    e, f = truly.witness[:2]
    meet = handle_intersect(e, f)
    assert is_star_finite(st, meet, SPEC).is_refuted  # replay
    assert coherence_check(dom_318, EXTRACOHERENT, st, SPEC).is_refuted
    # (D : mV) is an open-tail module, so the domain is not even
    # quasi-coherent for this operation; coherent does not imply
    # quasi-coherent without stability
    quasi = coherence_check(dom_318, QUASI_COHERENT, st, SPEC)
    assert quasi.is_refuted and "cut-parity" in quasi.detail


def test_coherence_valuation(dom_vq):
    for kind in (EXTRACOHERENT, COHERENT, TRULY_COHERENT, QUASI_COHERENT):
        assert coherence_check(dom_vq, kind, v_op(), SPEC).is_holds


def test_coherence_lattice(dom_345, dom_pvd, dom_318, dom_vq):
    for domain, op in ((dom_345, v_op()), (dom_pvd, st_op("V")), (dom_318, st_op("V")), (dom_vq, v_op())):
        verdicts = {k: coherence_check(domain, k, op, SPEC)
                    for k in (EXTRACOHERENT, COHERENT, TRULY_COHERENT, QUASI_COHERENT)}
        if verdicts[EXTRACOHERENT].is_holds:
            assert not verdicts[COHERENT].is_refuted
            assert not verdicts[TRULY_COHERENT].is_refuted
        if verdicts[TRULY_COHERENT].is_holds:
            assert not verdicts[QUASI_COHERENT].is_refuted


# ---------------------------------------------------------------------------
# H / I conditions

def test_h_domain(dom_vq, dom_345, dom_pvd):
    verdict = is_H_domain(dom_vq, v_op(), SPEC)
    assert verdict.is_refuted
    clauses = h_clauses(dom_vq, v_op(), SPEC)
    decided = {k: v for k, v in clauses.items() if not v.is_unknown}
    assert len(decided) >= 3
    assert all(v.is_refuted for v in decided.values())
    assert is_H_domain(dom_345, v_op(), SPEC).is_holds
    assert is_H_domain(dom_pvd, st_op("V"), SPEC).is_holds  # finite type


def test_h_witness_replay(dom_vq):
    """The H-refutation witness M belongs to F^v but no finitely generated
    subideal reaches the same closure."""
    m = maximal_handle(dom_vq)
    assert handle_eq(apply(v_op(), m), apply(v_op(), unit_handle(dom_vq)))
    assert is_star_finite(v_op(), m, SPEC, within=True).is_refuted


def test_i_domain(dom_vq, dom_pvd):
    assert is_I_domain(dom_vq, v_op(), SPEC).is_holds
    assert is_I_domain(dom_pvd, st_op("V"), SPEC).is_holds


def test_noetherian_and_dedekind(dom_345, dom_vq, dom_vz, dom_lex, dom_pvd):
    assert is_star_noetherian(dom_345, v_op()).is_holds
    assert is_star_noetherian(dom_pvd, st_op("V")).is_holds
    chain = is_star_noetherian(dom_vq, v_op())
    assert chain.is_refuted
    for lo, hi in zip(chain.witness, chain.witness[1:]):
        assert handle_leq(lo, hi) and not handle_eq(lo, hi)
        assert quasi_star_ideal_check(v_op(), lo)
    assert is_star_noetherian(dom_lex, d_op()).is_refuted
    assert is_star_dedekind(dom_vz, d_op(), SPEC).is_holds
    assert is_star_dedekind(dom_vq, v_op(), SPEC).is_refuted
    assert is_star_dedekind(dom_345, v_op(), SPEC).is_refuted  # noetherian non-P*MD


def test_quasi_chain_members_integral(dom_vq):
    chain = is_star_noetherian(dom_vq, v_op()).witness
    d = unit_handle(dom_vq)
    for h in chain:
        assert handle_leq(h, d)
