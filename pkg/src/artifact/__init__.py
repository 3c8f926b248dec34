"""Exact computation of delta-constant stratum multiplicities of plane curve singularities."""

from .kernel import BACKEND as KERNEL_BACKEND
from .polyalg import MonomialOrder, Polynomial, polynomial_ring

__all__ = ["KERNEL_BACKEND", "MonomialOrder", "Polynomial", "polynomial_ring"]
__version__ = "0.1.0"
