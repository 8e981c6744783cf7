import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from errors import InputError
from models import QPoint

logger = logging.getLogger(__name__)

GramMatrix = Sequence[Sequence[Fraction]]

def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]

def orientation(a: QPoint, b: QPoint, c: QPoint) -> int:
    """
    +1 for a counterclockwise turn a -> b -> c, -1 for clockwise, 0 when collinear.
    """
    value: Fraction = cross([b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]])
    return (value > 0) - (value < 0)

def onSegment(x: QPoint, a: QPoint, b: QPoint) -> bool:
    if orientation(a, b, x) != 0:
        return False
    return (
        min(a[0], b[0]) <= x[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= x[1] <= max(a[1], b[1])
    )

def segmentIntersectionPoint(p1: QPoint, p2: QPoint, q1: QPoint, q2: QPoint) -> Optional[QPoint]:
    """
    An exact common point of [p1, p2] and [q1, q2]: a shared vertex first, then a
    transversal crossing, then the smallest common endpoint of a collinear overlap.
    """
    for point in (p1, p2, q1, q2):
        if point.dimension != 2:
            raise InputError("Planar predicates need points in R^2")
    shared: List[QPoint] = sorted({p1, p2} & {q1, q2})
    if shared:
        return shared[0]

    r: List[Fraction] = [p2[0] - p1[0], p2[1] - p1[1]]
    s: List[Fraction] = [q2[0] - q1[0], q2[1] - q1[1]]
    offset: List[Fraction] = [q1[0] - p1[0], q1[1] - p1[1]]
    denominator: Fraction = cross(r, s)
    if denominator != 0:
        t: Fraction = cross(offset, s) / denominator
        u: Fraction = cross(offset, r) / denominator
        if 0 <= t <= 1 and 0 <= u <= 1:
            return QPoint([p1[0] + t * r[0], p1[1] + t * r[1]])
        return None

    candidates: List[QPoint] = [x for x in (p1, p2) if onSegment(x, q1, q2)]
    candidates += [x for x in (q1, q2) if onSegment(x, p1, p2)]
    return min(candidates) if candidates else None

def innerProduct(u: Sequence[Fraction], v: Sequence[Fraction], gram: Optional[GramMatrix] = None) -> Fraction:
    if gram is None:
        return u[0] * v[0] + u[1] * v[1]
    return sum(
        (u[i] * gram[i][j] * v[j] for i in range(2) for j in range(2)),
        Fraction(0)
    )

def angleKey(u: Sequence[Fraction], v: Sequence[Fraction], gram: Optional[GramMatrix] = None) -> Fraction:
    """
    A rational that increases with the angle between u and v in [0, pi]:
    -cos|cos| = -sign(<u,v>) <u,v>^2 / (|u|^2 |v|^2). No square roots needed.
    """
    uv: Fraction = innerProduct(u, v, gram)
    uu: Fraction = innerProduct(u, u, gram)
    vv: Fraction = innerProduct(v, v, gram)
    if uu == 0 or vv == 0:
        raise InputError("Angle with a zero-length vector is undefined")
    signedSquare: Fraction = uv * uv / (uu * vv)
    return -signedSquare if uv > 0 else signedSquare
