"""Exact Hochschild theory of the quantum zigzag algebra A_q of type affine A1."""

from .scalars import QSpec, make_field, parse_qspec, q_pow, classify_q

__all__ = ["QSpec", "make_field", "parse_qspec", "q_pow", "classify_q"]
__version__ = "0.1.0"
