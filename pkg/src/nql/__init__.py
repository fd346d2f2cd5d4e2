"""Exact certification of nondegeneracy of the norm map f -> prod_g g.f
for representations of finite abelian groups."""

__version__ = "0.1.0"
