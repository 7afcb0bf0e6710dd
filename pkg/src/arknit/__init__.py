"""Exact representation theory of finite-dimensional algebras.

Knitting of Auslander-Reiten quivers, morphism and monomorphism categories,
the functors Theta and Psi, and push-down along the line covering of the
self-injective Nakayama algebras.
"""
__version__ = "0.1.0"
