"""Differential Nullstellensatz consistency checks over the rationals."""

import json

from ._dnss import (
    CertificateError,
    Error,
    ParseError,
    Poly,
    parse_document,
    run_cli,
)
from . import _dnss

__all__ = [
    "CertificateError",
    "Error",
    "ParseError",
    "Poly",
    "bound",
    "decide",
    "parse_document",
    "run_cli",
    "strong_nss",
    "verify",
]


def _equations(system):
    if isinstance(system, str):
        return parse_document(system)
    return [str(p) for p in system]


def decide(system, max_order=16, c=1, tower_cap_bits=1_000_000):
    """Search for the least prolongation order putting 1 in the ideal.

    `system` is document text or a sequence of polynomials (str or Poly).
    """
    return json.loads(_dnss._decide(_equations(system), max_order, c, tower_cap_bits))


def strong_nss(system, f, max_order=16, max_power=64):
    """Certificate for f^M in the prolonged ideal, or None."""
    out = _dnss._strong_nss(_equations(system), str(f), max_order, max_power)
    return None if out is None else json.loads(out)


def verify(certificate, system):
    """Exact check of a certificate (dict or JSON text) against a system."""
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return _dnss._verify(text, _equations(system))


def bound(n, degree, m=0, order=1, dim=None, L=None, c=1, tower_cap_bits=1_000_000):
    """Bound report for a system profile."""
    return json.loads(
        _dnss._bound(n, m, order, str(degree), dim, None if L is None else str(L), c, tower_cap_bits)
    )
