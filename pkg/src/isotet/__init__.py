"""Isogonal conjugation in tetrahedra, with the inversive and quadric
geometry of isosceles tetrahedra."""

from ._core import BACKEND
from .errors import GeometryError
from .geom3 import AtInfinity, Circle3, Line3, Plane, Sphere, Tolerance
from .isogonal import OnEdgeLine, Point, VertexDegenerate, is_isogonal_pair, isogonal_conjugate, pedal_sphere
from .tetra import CanonicalFrame, IsoscelesParams, Tetrahedron, canonical_embedding, fit_canonical_frame, quantities

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GeometryError",
    "AtInfinity",
    "Circle3",
    "Line3",
    "Plane",
    "Sphere",
    "Tolerance",
    "OnEdgeLine",
    "Point",
    "VertexDegenerate",
    "is_isogonal_pair",
    "isogonal_conjugate",
    "pedal_sphere",
    "CanonicalFrame",
    "IsoscelesParams",
    "Tetrahedron",
    "canonical_embedding",
    "fit_canonical_frame",
    "quantities",
]
