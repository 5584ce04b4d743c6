"""Random-matrix workbench.

Monte Carlo Gaussian ensembles, equilibrium densities, orthogonal
polynomials and Fredholm determinants, exact Wick map enumeration and a
one-cut topological recursion engine, plus unitary angular integrals.
"""
__version__ = "0.1.0"

from ._kernels import compiled_available

__all__ = ["__version__", "compiled_available"]
