"""Closure-operation laws checked on seeded random inputs, exactly.

check_axioms covers homogeneity, monotonicity, extensivity and idempotency;
check_basic_formulas covers the four product/sum/colon/intersection chains
that every closure of this kind must satisfy.  Both return a list of failure
descriptions (empty means every sampled instance passed).
"""

from __future__ import annotations

from .algebra.fields import AlgebraError
from .operations import (
    DomainHandle,
    SemistarOp,
    apply,
    handle_add,
    handle_colon,
    handle_eq,
    handle_intersect,
    handle_leq,
    handle_mul,
    make_handle,
)
from .verdict import SampleSpec


def _sample(domain: DomainHandle, rng, spec: SampleSpec):
    return make_handle(domain, domain.engine.sample_ideal(rng, spec))


def _scale(h, scalar):
    return make_handle(h.domain, h.domain.engine.scale(h.payload, scalar))


def _project_scalar(domain: DomainHandle, image_domain: DomainHandle, scalar):
    if domain == image_domain:
        return scalar
    # lex-group scalar projected to the coarsened first coordinate
    return scalar[0] if isinstance(scalar, tuple) and not isinstance(scalar[0], tuple) else scalar


def check_axioms(domain: DomainHandle, op: SemistarOp, spec: SampleSpec, count=None):
    failures = []
    rng = spec.rng(f"axioms/{domain.name}/{op!r}")
    n = count if count is not None else spec.count
    eng = domain.engine
    for k in range(n):
        e = _sample(domain, rng, spec)
        f = handle_add(e, _sample(domain, rng, spec))  # guarantees e <= f
        x = eng.sample_scalar(rng, spec)
        try:
            image = apply(op, e)
        except AlgebraError as exc:
            failures.append(f"#{k}: evaluation failed on {e!r}: {exc}")
            continue
        # homogeneity (x E)^op = x E^op
        lhs = apply(op, _scale(e, x))
        rhs = _scale(image, _project_scalar(domain, image.domain, x))
        if not handle_eq(lhs, rhs):
            failures.append(f"#{k}: homogeneity failed at {e!r} with scalar {x!r}")
        # monotonicity
        if not handle_leq(image, apply(op, f)):
            failures.append(f"#{k}: monotonicity failed at {e!r} <= {f!r}")
        # extensivity and idempotency
        if not handle_leq(e, image):
            failures.append(f"#{k}: extensivity failed at {e!r}")
        if not handle_eq(apply(op, image), image):
            failures.append(f"#{k}: idempotency failed at {e!r}")
    return failures


def check_basic_formulas(domain: DomainHandle, op: SemistarOp, spec: SampleSpec, count=None):
    failures = []
    rng = spec.rng(f"formulas/{domain.name}/{op!r}")
    n = count if count is not None else spec.count
    for k in range(n):
        e = _sample(domain, rng, spec)
        f = _sample(domain, rng, spec)
        es, fs = apply(op, e), apply(op, f)
        crossing = es.domain != domain
        star = (lambda h: apply(op, h))

        prod = star(handle_mul(e, f))
        if crossing:
            # images live over the localized domain; the chain collapses there
            if not handle_eq(prod, handle_mul(es, fs)):
                failures.append(f"#{k}: product formula failed at {e!r}, {f!r}")
        else:
            for mid in (handle_mul(es, f), handle_mul(e, fs), handle_mul(es, fs)):
                if not handle_eq(prod, star(mid)):
                    failures.append(f"#{k}: product formula failed at {e!r}, {f!r}")
                    break

        tot = star(handle_add(e, f))
        if crossing:
            if not handle_eq(tot, handle_add(es, fs)):
                failures.append(f"#{k}: sum formula failed at {e!r}, {f!r}")
        else:
            for mid in (handle_add(es, f), handle_add(e, fs), handle_add(es, fs)):
                if not handle_eq(tot, star(mid)):
                    failures.append(f"#{k}: sum formula failed at {e!r}, {f!r}")
                    break

        try:
            quot = star(handle_colon(e, f))
        except AlgebraError:
            quot = None
        if quot is not None:
            if crossing:
                if not handle_leq(quot, handle_colon(es, fs)):
                    failures.append(f"#{k}: colon formula failed at {e!r}, {f!r}")
            else:
                rhs = handle_colon(es, fs)
                ok = (
                    handle_leq(quot, rhs)
                    and handle_eq(rhs, handle_colon(es, f))
                    and handle_eq(rhs, star(handle_colon(es, f)))
                )
                if not ok:
                    failures.append(f"#{k}: colon formula failed at {e!r}, {f!r}")

        meet = star(handle_intersect(e, f))
        rhs = handle_intersect(es, fs)
        if not handle_leq(meet, rhs):
            failures.append(f"#{k}: intersection formula failed at {e!r}, {f!r}")
        elif not crossing and not handle_eq(rhs, star(rhs)):
            failures.append(f"#{k}: intersection closure failed at {e!r}, {f!r}")
    return failures
