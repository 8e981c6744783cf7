import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from errors import InputError, InternalConsistencyError
from globalUtils import combine, dot, isZeroVector, solveLinearSystem, subtract
from models import Hyperplane, LinearConstraint, LPOutcome, QPoint
from resources import Relation
from simplexSolver import lpFeasible, lpOptimize

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

Interval = Tuple[Fraction, Fraction]

def checkDimensions(points: Sequence[QPoint], dimension: int) -> None:
    for point in points:
        if point.dimension != dimension:
            raise InputError(f"Dimension mismatch: {point} is not in dimension {dimension}")

def boundingBox(points: Sequence[QPoint]) -> List[Interval]:
    return [
        (min(p[k] for p in points), max(p[k] for p in points))
        for k in range(points[0].dimension)
    ]

def boxesMeet(first: List[Interval], second: List[Interval]) -> bool:
    return all(lo1 <= hi2 and lo2 <= hi1 for (lo1, hi1), (lo2, hi2) in zip(first, second))

def barycentricConstraints(
    points: Sequence[QPoint],
    prefix: str,
    target: Sequence[Dict[str, Fraction]],
    targetConstants: Sequence[Fraction]
) -> List[LinearConstraint]:
    """
    lambda_i >= 0, sum lambda_i = 1 and, per coordinate k,
    sum_i lambda_i * points[i][k] + target[k] = targetConstants[k].
    """
    names: List[str] = [f"{prefix}{i}" for i in range(len(points))]
    constraints: List[LinearConstraint] = [
        LinearConstraint({name: ONE for name in names}, Relation.EQUAL, ONE)
    ]
    for k in range(len(targetConstants)):
        coefficients: Dict[str, Fraction] = {}
        for name, point in zip(names, points):
            if point[k] != 0:
                coefficients[name] = coefficients.get(name, ZERO) + point[k]
        for name, value in target[k].items():
            coefficients[name] = coefficients.get(name, ZERO) + value
        constraints.append(LinearConstraint(coefficients, Relation.EQUAL, targetConstants[k]))
    constraints.extend(
        LinearConstraint({name: ONE}, Relation.GREATER_EQUAL, ZERO) for name in names
    )
    return constraints

def weightsFrom(outcome: LPOutcome, prefix: str, count: int) -> List[Fraction]:
    witness: Dict[str, Fraction] = outcome.witness or {}
    return [witness.get(f"{prefix}{i}", ZERO) for i in range(count)]

def inConvexHull(p: QPoint, S: Sequence[QPoint]) -> Optional[List[Fraction]]:
    """
    Barycentric weights expressing p as a convex combination of S, or None.
    """
    if not S:
        return None
    checkDimensions(S, p.dimension)
    for index, point in enumerate(S):
        if point == p:
            return [ONE if i == index else ZERO for i in range(len(S))]
    if not boxesMeet(boundingBox([p]), boundingBox(S)):
        return None
    constraints: List[LinearConstraint] = barycentricConstraints(
        S, "lam", [{} for _ in range(p.dimension)], list(p)
    )
    outcome: LPOutcome = lpFeasible(constraints)
    if not outcome.feasible:
        return None
    return weightsFrom(outcome, "lam", len(S))

def simplicesIntersect(family: Sequence[Sequence[QPoint]]) -> Optional[QPoint]:
    """
    A common point of the convex hulls of all members, decided by one LP with
    per-member barycentric weights tied to shared point variables.
    """
    if not family or any(not member for member in family):
        raise InputError("simplicesIntersect needs a nonempty family of nonempty members")
    dimension: int = family[0][0].dimension
    for member in family:
        checkDimensions(member, dimension)
    if len(family) == 1:
        return family[0][0]

    boxes: List[List[Interval]] = [boundingBox(list(member)) for member in family]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxesMeet(boxes[i], boxes[j]):
                return None

    shared: List[Dict[str, Fraction]] = [{f"y{k}": -ONE} for k in range(dimension)]
    constraints: List[LinearConstraint] = []
    for index, member in enumerate(family):
        constraints.extend(
            barycentricConstraints(member, f"m{index}l", shared, [ZERO] * dimension)
        )
    outcome: LPOutcome = lpFeasible(constraints)
    if not outcome.feasible:
        return None
    witness: Dict[str, Fraction] = outcome.witness or {}
    return QPoint([witness.get(f"y{k}", ZERO) for k in range(dimension)])

def nearestPointInHull(o: QPoint, S: Sequence[QPoint]) -> QPoint:
    """
    Exact nearest point of conv S to o, by Wolfe's minimum-norm-point method on
    the translated points S - o.
    """
    if not S:
        raise InputError("Nearest point of an empty hull is undefined")
    checkDimensions(S, o.dimension)
    shifted: List[List[Fraction]] = [subtract(list(s), list(o)) for s in S]
    norms: List[Fraction] = [dot(q, q) for q in shifted]

    start: int = min(range(len(shifted)), key=lambda i: (norms[i], i))
    corral: List[int] = [start]
    weights: List[Fraction] = [ONE]
    x: List[Fraction] = list(shifted[start])

    while not isZeroVector(x):
        xx: Fraction = dot(x, x)
        candidate: int = min(range(len(shifted)), key=lambda i: (dot(x, shifted[i]), i))
        if dot(x, shifted[candidate]) >= xx or candidate in corral:
            break
        corral.append(candidate)
        weights.append(ZERO)

        while True:
            alphas: List[Fraction] = affineMinimizer([shifted[i] for i in corral])
            if all(alpha > 0 for alpha in alphas):
                weights = alphas
                break
            theta: Fraction = ONE
            for weight, alpha in zip(weights, alphas):
                if alpha <= 0:
                    gap: Fraction = weight - alpha
                    theta = min(theta, weight / gap if gap > 0 else ZERO)
            weights = [(1 - theta) * w + theta * a for w, a in zip(weights, alphas)]
            kept: List[int] = [i for i, w in enumerate(weights) if w > 0]
            corral = [corral[i] for i in kept]
            weights = [weights[i] for i in kept]
        x = combine(weights, [shifted[i] for i in corral])

    return QPoint([a + b for a, b in zip(x, o)])

def affineMinimizer(points: List[List[Fraction]]) -> List[Fraction]:
    """
    Affine weights of the minimum-norm point of the affine hull of affinely
    independent points.
    """
    size: int = len(points)
    matrix: List[List[Fraction]] = [
        [dot(points[i], points[j]) for j in range(size)] + [ONE] for i in range(size)
    ]
    matrix.append([ONE] * size + [ZERO])
    solution: List[Fraction] = solveLinearSystem(matrix, [ZERO] * size + [ONE])
    return solution[:size]

def separatingHyperplane(A: Sequence[QPoint], o: QPoint) -> Optional[Hyperplane]:
    """
    A hyperplane with A strictly on the positive side and o strictly on the
    negative side, or None exactly when o lies in conv A. The normal points
    from o to the nearest point of conv A and the offset sits at the midpoint.
    """
    if not A:
        return Hyperplane(
            [ONE] + [ZERO] * (o.dimension - 1),
            o[0] + 1
        )
    nearest: QPoint = nearestPointInHull(o, A)
    normal: List[Fraction] = subtract(list(nearest), list(o))
    if isZeroVector(normal):
        return None
    offset: Fraction = dot(normal, list(o)) + dot(normal, normal) / 2
    hyperplane: Hyperplane = Hyperplane(normal, offset)
    if __debug__:
        if hyperplane.evaluate(o) >= 0 or any(hyperplane.evaluate(a) <= 0 for a in A):
            raise InternalConsistencyError(f"{hyperplane} does not separate {o} from the set")
    return hyperplane

def rayHitsConvex(direction: QPoint, S: Sequence[QPoint]) -> bool:
    """
    Whether {s * direction : s >= 0} meets conv S.
    """
    if isZeroVector(list(direction)):
        raise InputError("Ray direction must be nonzero")
    if not S:
        return False
    checkDimensions(S, direction.dimension)
    constraints: List[LinearConstraint] = barycentricConstraints(
        S,
        "lam",
        [{"s": -direction[k]} for k in range(direction.dimension)],
        [ZERO] * direction.dimension
    )
    constraints.append(LinearConstraint({"s": ONE}, Relation.GREATER_EQUAL, ZERO))
    return lpFeasible(constraints).feasible

def segmentInterval(a: QPoint, b: QPoint, member: Sequence[QPoint]) -> Optional[Interval]:
    """
    The exact parameter interval {tau in [0, 1] : a + tau (b - a) in conv member}.
    """
    constraints: List[LinearConstraint] = barycentricConstraints(
        member,
        "lam",
        [{"tau": a[k] - b[k]} for k in range(a.dimension)],
        list(a)
    )
    constraints.append(LinearConstraint({"tau": ONE}, Relation.GREATER_EQUAL, ZERO))
    constraints.append(LinearConstraint({"tau": ONE}, Relation.LESS_EQUAL, ONE))
    lower: LPOutcome = lpOptimize(constraints, {"tau": ONE})
    if not lower.feasible or lower.value is None:
        return None
    if lower.value == 1:
        return (ONE, ONE)
    upper: LPOutcome = lpOptimize(constraints, {"tau": ONE}, maximize=True)
    if upper.value is None:
        raise InternalConsistencyError("Segment interval lost feasibility between LPs")
    return (lower.value, upper.value)

def segmentInUnion(a: QPoint, b: QPoint, family: Sequence[Sequence[QPoint]]) -> bool:
    """
    Whether the closed segment [a, b] lies in the union of the hulls of family,
    by exact covering of [0, 1] with per-member parameter intervals.
    """
    if not family:
        return False
    checkDimensions([b], a.dimension)
    for member in family:
        checkDimensions(member, a.dimension)
    if a == b:
        return any(inConvexHull(a, member) is not None for member in family if member)

    segmentBox: List[Interval] = boundingBox([a, b])
    intervals: List[Interval] = []
    for member in family:
        if not member or not boxesMeet(segmentBox, boundingBox(list(member))):
            continue
        interval: Optional[Interval] = segmentInterval(a, b, member)
        if interval is None:
            continue
        if interval == (ZERO, ONE):
            return True
        intervals.append(interval)

    # closed intervals, so touching endpoints chain
    reach: Fraction = ZERO
    for lower, upper in sorted(intervals):
        if lower > reach:
            break
        reach = max(reach, upper)
        if reach >= 1:
            return True
    logger.debug("Segment %s-%s covered only up to parameter %s", a, b, reach)
    return False
