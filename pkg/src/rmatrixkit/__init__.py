"""Explicit matrix constructions and randomized verification for
free-fermion R-matrices, the tetrahedron structure tensor, the two-layer
glued R-matrix, centrally extended superalgebra generators, and the
derived 16x16 S-matrix."""

__version__ = "0.1.0"
