"""Exception hierarchy shared by all geometry modules."""


class GeometryError(ValueError):
    """Base class for every error raised by isotet."""


class CollinearPoints(GeometryError):
    pass


class CoplanarPoints(GeometryError):
    pass


class ParallelPlanes(GeometryError):
    pass


class ZeroParameter(GeometryError):
    pass


class DegenerateTetrahedron(GeometryError):
    pass


class NotIsosceles(GeometryError):
    pass


class DegenerateParams(GeometryError):
    pass


class DegenerateProjections(GeometryError):
    """The four face projections do not span a sphere."""


class PointOnEdgeLine(GeometryError):
    pass


class CenterInput(GeometryError):
    """The point to invert coincides with the inversion center."""


class Disjoint(GeometryError):
    pass


class NotOnSphere(GeometryError):
    pass


class GreatCircle(GeometryError):
    pass


class IdenticalSpheres(GeometryError):
    pass


class EqualRadii(GeometryError):
    pass


class NotCoplanar(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class NotOnSurface(GeometryError):
    pass


class DegenerateSection(GeometryError):
    pass


class NotThroughX(GeometryError):
    pass


class VertexInput(GeometryError):
    pass


class UnknownSuite(KeyError):
    pass


class BadSurfaceId(ValueError):
    pass
