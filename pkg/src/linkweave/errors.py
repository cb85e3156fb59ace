"""Exception types shared across the package."""


class LinkweaveError(Exception):
    """Base class for all linkweave errors."""


# -- geometry ---------------------------------------------------------------

class SelfIntersection(LinkweaveError):
    """A curve is not simple: segments i and j meet illegally."""

    def __init__(self, curve, i, j):
        self.curve = curve
        self.i = i
        self.j = j
        super().__init__(f"curve {curve!r}: segments {i} and {j} intersect")


class MutualIntersection(LinkweaveError):
    """Two curves share a point: segment i of the first meets segment j of the second."""

    def __init__(self, i, j):
        self.i = i
        self.j = j
        super().__init__(f"segment {i} of first curve meets segment {j} of second")


class NonGenericPair(LinkweaveError):
    """A projection degeneracy was hit mid-scan; caller skipped make_generic."""


class DegenerateFamily(LinkweaveError):
    """The shear schedule was exhausted; indicates a bug, not bad input."""


class PrecisionWarning(LinkweaveError):
    """The numeric linking estimate cannot be certified to within 0.25."""

    def __init__(self, estimate, bound):
        self.estimate = estimate
        self.bound = bound
        super().__init__(f"estimate {estimate} has error bound {bound} > 0.25")


# -- combinatorics ----------------------------------------------------------

class OrderTooLarge(LinkweaveError):
    """Graph order beyond the exhaustive-search guard."""


class BaseNotOnCycle(LinkweaveError):
    """Fan decomposition base vertex does not lie on the cycle."""


class DuplicateVertex(LinkweaveError):
    """Vertices expected to be distinct are not."""


# -- stars ------------------------------------------------------------------

class ValuesOutOfRange(LinkweaveError):
    """A link map has |value| >= 2 where only -1, 0, +1 are allowed."""


class SameApex(LinkweaveError):
    """Mutual orientation requires distinct apexes."""


# -- link tables ------------------------------------------------------------

class Inconsistent(LinkweaveError):
    """A table violates a tetrahedron sum, so it comes from no embedding."""

    def __init__(self, quadruple, fixed_triangle, side):
        self.quadruple = quadruple
        self.fixed_triangle = fixed_triangle
        self.side = side
        super().__init__(
            f"tetrahedron {quadruple} on side {side} has nonzero sum against {fixed_triangle}"
        )


class InconsistentTable(LinkweaveError):
    """Cycle-pair linking came out base-dependent; consistency was skipped."""


# -- classification ---------------------------------------------------------

class NotWeaklyLinked(LinkweaveError):
    """Input link maps imply a strong link."""


class NotWeak(LinkweaveError):
    """Table is not weakly linked, so the classifier does not apply."""


class CommonApex(LinkweaveError):
    """The two stars share an apex; the no-common-apex cases do not apply."""


class NoLinkingTriangles(LinkweaveError):
    """No triangle on the requested side links the other graph."""


class NotTransitive(LinkweaveError):
    """The unlinked-pair relation failed transitivity; table is not weak."""

    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"~ not transitive on {x}, {y}, {z}")


class NeitherCase(LinkweaveError):
    """Neither orientation case holds for the class triple."""


class NoConsistentOrder(LinkweaveError):
    """No cyclic order of the classes is compatible with all triples."""


class PatternMismatch(LinkweaveError):
    """Table deviates from the expected star pattern."""

    def __init__(self, message, g_triangle=None, h_triangle=None):
        self.g_triangle = g_triangle
        self.h_triangle = h_triangle
        super().__init__(message)


class DichotomyViolation(LinkweaveError):
    """No classification case matches; input is non-weak or inconsistent."""


# -- construction -----------------------------------------------------------

class ConstructionInvalid(LinkweaveError):
    """A procedural embedding failed its exact validity checks."""


class AssetValidationFailed(LinkweaveError):
    """A curated dataset disagrees with its stored expectation."""
