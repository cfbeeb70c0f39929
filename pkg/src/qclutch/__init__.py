"""Exact and numeric verification toolkit for Toeplitz-type quantum spaces and their clutching data."""

from .algebra import (
    CIRCLE,
    TOEPLITZ,
    Element,
    S,
    SSstar,
    Sstar,
    circle_word,
    one,
    tensor,
    toeplitz_word,
    u,
)
from .scalars import GaussianRational

__all__ = [
    "CIRCLE",
    "TOEPLITZ",
    "Element",
    "GaussianRational",
    "S",
    "SSstar",
    "Sstar",
    "circle_word",
    "one",
    "tensor",
    "toeplitz_word",
    "u",
]
