"""Exact fractional-ideal closures under semistar operations.

The package computes d, v, t, w, overring-induced, spectral, finite-type,
stable, and tilde closures on three concrete families of integral domains
(numerical semigroup rings, k+M pullbacks of valuation domains, and
valuation domains themselves), entirely in exact arithmetic, and checks
the multiplicative-ideal-theory predicates built on top of them.
"""

from .operations import (
    DomainHandle,
    IdealHandle,
    SemistarOp,
    UnsupportedMaximalSpectrum,
    UnsupportedOperation,
    apply,
    asc_op,
    bar_op,
    d_op,
    desc_op,
    ft_op,
    localizing_system,
    make_handle,
    maximal_handle,
    op_leq,
    ops_equal_on,
    pullback_domain,
    quasi_star_ideal_check,
    quasi_star_maximals,
    semigroup_domain,
    spec_op,
    st_op,
    t_op,
    tilde_op,
    unit_handle,
    v_op,
    valuation_domain,
    w_op,
)
from .verdict import SampleSpec, Verdict

__version__ = "0.1.0"

__all__ = [
    "DomainHandle",
    "IdealHandle",
    "SampleSpec",
    "SemistarOp",
    "UnsupportedMaximalSpectrum",
    "UnsupportedOperation",
    "Verdict",
    "apply",
    "asc_op",
    "bar_op",
    "d_op",
    "desc_op",
    "ft_op",
    "localizing_system",
    "make_handle",
    "maximal_handle",
    "op_leq",
    "ops_equal_on",
    "pullback_domain",
    "quasi_star_ideal_check",
    "quasi_star_maximals",
    "semigroup_domain",
    "spec_op",
    "st_op",
    "t_op",
    "tilde_op",
    "unit_handle",
    "v_op",
    "valuation_domain",
    "w_op",
]
