import logging
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from convexity import inConvexHull, segmentInUnion, separatingHyperplane, simplicesIntersect, rayHitsConvex
from errors import InputError, InternalConsistencyError, PreconditionError
from globalUtils import dot, isZeroVector, scale, subtract
from joinCore import (
    augment,
    enumerateBases,
    enumerateIndependent,
    isIndependent,
    joinContains,
    matroidRank,
    requireColorClasses
)
from models import Face, Hyperplane, Instance, QPoint
from planarGeometry import GramMatrix, angleKey, segmentIntersectionPoint
from reportModels import (
    PlanarKernelReport,
    RayWitness,
    SegmentCheck,
    SeparationCertificate,
    StarCenterReport,
    TverbergCertificate
)
from resources import Resources

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

def setPartitions(size: int, parts: int) -> Iterator[List[int]]:
    """
    Restricted growth strings of the given length using exactly `parts` blocks,
    in lexicographic order. Entry i is the block of element i.
    """
    def extend(prefix: List[int], used: int) -> Iterator[List[int]]:
        if len(prefix) == size:
            if used == parts:
                yield list(prefix)
            return
        if parts - used > size - len(prefix):
            return
        for block in range(min(used + 1, parts)):
            prefix.append(block)
            yield from extend(prefix, max(used, block + 1))
            prefix.pop()

    yield from extend([], 0)

def findTverberg(
    points: Sequence[QPoint],
    parts: int,
    labels: Optional[Sequence[int]] = None
) -> Optional[TverbergCertificate]:
    """
    First partition (canonical order) of the points into `parts` blocks whose
    hulls share a point, with barycentric weights of that point in every block.
    """
    if parts < 2:
        raise InputError(f"A Tverberg partition needs at least 2 parts, got {parts}")
    if len(points) < parts:
        raise InputError(f"Cannot split {len(points)} points into {parts} nonempty parts")
    names: List[int] = list(labels) if labels is not None else list(range(len(points)))
    if len(names) != len(points):
        raise InputError("labels and points differ in length")
    dimension: int = points[0].dimension

    for assignment in setPartitions(len(points), parts):
        blocks: List[List[int]] = [[] for _ in range(parts)]
        for index, block in enumerate(assignment):
            blocks[block].append(index)
        common: Optional[QPoint] = simplicesIntersect([[points[i] for i in block] for block in blocks])
        if common is None:
            continue
        witnesses: List[List[Fraction]] = []
        for block in blocks:
            weights: Optional[List[Fraction]] = inConvexHull(common, [points[i] for i in block])
            if weights is None:
                raise InternalConsistencyError(f"Tverberg point {common} left the hull of block {block}")
            witnesses.append(weights)
        logger.debug("Tverberg partition %s meets at %s", blocks, common)
        return TverbergCertificate(
            {names[i]: points[i] for i in range(len(points))},
            [tuple(names[i] for i in block) for block in blocks],
            common,
            witnesses
        )

    if len(points) >= (dimension + 1) * (parts - 1) + 1:
        raise InternalConsistencyError(
            f"No Tverberg partition of {len(points)} points into {parts} parts in dimension {dimension}"
        )
    return None

def greedyIndependentSet(instance: Instance, size: int) -> Face:
    chosen: List[int] = []
    for label in instance.labels:
        if len(chosen) == size:
            break
        if isIndependent(instance, chosen + [label]):
            chosen.append(label)
    if len(chosen) < size:
        raise PreconditionError(f"No independent set of size {size}")
    return tuple(chosen)

def pigeonholePart(instance: Instance, parts: List[Face], transversal: Face, Y: Face) -> int:
    """
    Index j with T_j u Y independent. For color classes every y rules out at
    most one part; otherwise Y is augmented from T to S u Y and some part lies
    inside S.
    """
    if instance.isPartition:
        for j, part in enumerate(parts):
            if isIndependent(instance, list(part) + list(Y)):
                return j
        raise InternalConsistencyError(f"No part of the Tverberg partition extends {Y}")

    extended: List[int] = list(Y)
    while len(extended) < len(transversal):
        extended.append(augment(instance, extended, transversal))
    S: Set[int] = set(extended) - set(Y)
    for j, part in enumerate(parts):
        if set(part) <= S:
            if not isIndependent(instance, list(part) + list(Y)):
                raise InternalConsistencyError(f"Part {part} inside the augmentation of {Y} is dependent with it")
            return j
    raise InternalConsistencyError(f"No part of the Tverberg partition lies in the augmentation of {Y}")

def randomSimplexPoint(rng: random.Random, vertices: Sequence[QPoint]) -> QPoint:
    weights: List[int] = [rng.randint(1, Resources.weightBound) for _ in vertices]
    total: int = sum(weights)
    return QPoint([
        sum((Fraction(w, total) * v[k] for w, v in zip(weights, vertices)), ZERO)
        for k in range(vertices[0].dimension)
    ])

def starCertificate(instance: Instance, segmentChecks: int = 20, seed: int = 0) -> StarCenterReport:
    """
    A point t from which every point of the join is visible: the Tverberg point
    of an independent set of size d(d+1)+1, with the pigeonhole table that
    proves visibility and a few exact segment spot checks.
    """
    d: int = instance.dimension
    r: int = matroidRank(instance)
    if r <= d * (d + 1):
        raise PreconditionError(f"Star certificate needs rank > d(d+1) = {d * (d + 1)}, got {r}")

    transversal: Face = greedyIndependentSet(instance, d * (d + 1) + 1)
    tverberg: Optional[TverbergCertificate] = findTverberg(
        instance.pointsOf(transversal), d + 1, labels=transversal
    )
    if tverberg is None:
        raise InternalConsistencyError(f"No Tverberg partition of the independent set {transversal}")
    center: QPoint = tverberg.point

    pigeonhole: List[Tuple[Face, int]] = [
        (Y, pigeonholePart(instance, tverberg.parts, transversal, Y))
        for Y in enumerateIndependent(instance, d)
    ]
    logger.info("Star center %s with %d pigeonhole entries", center, len(pigeonhole))

    bases: List[Face] = enumerateBases(instance)
    family: List[List[QPoint]] = [instance.pointsOf(basis) for basis in bases]
    rng: random.Random = random.Random(seed)
    checks: List[SegmentCheck] = []
    for _ in range(segmentChecks):
        basis: Face = bases[rng.randrange(len(bases))]
        target: QPoint = randomSimplexPoint(rng, instance.pointsOf(basis))
        passed: bool = segmentInUnion(center, target, family)
        if not passed:
            raise InternalConsistencyError(f"Segment from star center {center} to {target} leaves the join")
        checks.append(SegmentCheck(basis, target, passed))

    return StarCenterReport(center, transversal, tverberg, pigeonhole, checks)

def colorfulOfSize(instance: Instance, size: int) -> List[Face]:
    return [Y for Y in enumerateIndependent(instance, size) if len(Y) == size]

def dCorePoint(instance: Instance) -> Optional[QPoint]:
    """
    A point common to conv(X - Y) for every colorful Y of size d, or None when
    that intersection is empty.
    """
    if not instance.isPartition:
        raise PreconditionError("The d-core point needs color classes (partition matroid)")
    d: int = instance.dimension
    if d > matroidRank(instance):
        raise InputError(f"d = {d} exceeds the rank {matroidRank(instance)}")
    members: List[List[QPoint]] = []
    for Y in colorfulOfSize(instance, d):
        rest: List[int] = [label for label in instance.labels if label not in Y]
        if not rest:
            return None
        members.append(instance.pointsOf(rest))
    return simplicesIntersect(members)

def checkOrigin(instance: Instance, origin: Optional[QPoint]) -> QPoint:
    point: QPoint = origin if origin is not None else QPoint.origin(instance.dimension)
    if point.dimension != instance.dimension:
        raise InputError(f"Origin has dimension {point.dimension}, expected {instance.dimension}")
    if joinContains(instance, point) is not None:
        raise PreconditionError(f"{point} lies in the join, no separation certificate exists")
    return point

def strongSeparation(instance: Instance, origin: Optional[QPoint] = None) -> SeparationCertificate:
    """
    First pair of classes (lexicographic) whose union is strictly separated
    from the origin. Exists whenever m >= d+1 and the origin misses the join.
    """
    requireColorClasses(instance)
    point: QPoint = checkOrigin(instance, origin)
    for i, j in combinations(range(instance.classCount), 2):
        hyperplane: Optional[Hyperplane] = separatingHyperplane(
            instance.classPoints(i) + instance.classPoints(j), point
        )
        if hyperplane is not None:
            return SeparationCertificate((i, j), hyperplane, point)
    raise InternalConsistencyError(f"No pair of classes separable from {point} although it misses the join")

def separatedFamily(instance: Instance, origin: Optional[QPoint] = None) -> SeparationCertificate:
    """
    m-d+1 classes whose union is strictly separated from the origin.
    """
    requireColorClasses(instance)
    point: QPoint = checkOrigin(instance, origin)
    size: int = instance.classCount - instance.dimension + 1
    for indices in combinations(range(instance.classCount), size):
        union: List[QPoint] = [p for i in indices for p in instance.classPoints(i)]
        hyperplane: Optional[Hyperplane] = separatingHyperplane(union, point)
        if hyperplane is not None:
            return SeparationCertificate(indices, hyperplane, point)
    raise InternalConsistencyError(f"No {size} classes separable from {point} although it misses the join")

def colorfulEdges(X1: Sequence[QPoint], X2: Sequence[QPoint]) -> List[Tuple[QPoint, QPoint]]:
    return [(v, w) for v in sorted(X1) for w in sorted(X2) if v != w]

def planarStarCenter(
    X1: Sequence[QPoint],
    X2: Sequence[QPoint],
    gram: Optional[GramMatrix] = None
) -> QPoint:
    """
    The meeting point of the two directed colorful edges v -> w that meet and
    enclose the largest angle, ties going to the first pair in edge order.
    """
    if not X1 or not X2:
        raise InputError("planarStarCenter needs two nonempty classes")
    for point in list(X1) + list(X2):
        if point.dimension != 2:
            raise InputError("planarStarCenter works in the plane")
    if len(X1) == 1:
        return X1[0]
    if len(X2) == 1:
        return X2[0]

    edges: List[Tuple[QPoint, QPoint]] = colorfulEdges(X1, X2)
    bestKey: Optional[Fraction] = None
    bestPoint: Optional[QPoint] = None
    for (v1, w1), (v2, w2) in combinations(edges, 2):
        meeting: Optional[QPoint] = segmentIntersectionPoint(v1, w1, v2, w2)
        if meeting is None:
            continue
        key: Fraction = angleKey(subtract(list(w1), list(v1)), subtract(list(w2), list(v2)), gram)
        if bestKey is None or key > bestKey:
            bestKey, bestPoint = key, meeting
    if bestPoint is None:
        return sorted(X1)[0]
    return bestPoint

def verifyPlanarKernel(
    X1: Sequence[QPoint],
    X2: Sequence[QPoint],
    x: QPoint,
    samples: int
) -> PlanarKernelReport:
    """
    Visibility of sample points on the colorful edges from x, inside the union
    of the edges and the triangles spanned by edges with a common vertex.
    Misses are reported, they may lie in the bounded region beyond the join.
    """
    edges: List[Tuple[QPoint, QPoint]] = colorfulEdges(X1, X2)
    family: List[List[QPoint]] = [[v, w] for v, w in edges]
    triangles: Set[Tuple[QPoint, ...]] = set()
    for (v1, w1), (v2, w2) in combinations(edges, 2):
        corners: Set[QPoint] = {v1, w1, v2, w2}
        if len(corners) == 3:
            triangles.add(tuple(sorted(corners)))
    family.extend(list(triangle) for triangle in sorted(triangles))

    results: List[Tuple[QPoint, bool]] = []
    if not edges:
        return PlanarKernelReport(x, results)
    for k in range(samples):
        v, w = edges[k % len(edges)]
        parameter: Fraction = Fraction(k + 1, samples + 1)
        p: QPoint = QPoint([v[i] + parameter * (w[i] - v[i]) for i in range(2)])
        passed: bool = segmentInUnion(x, p, family)
        if not passed:
            logger.info("Sample %s is outside the join but may be inside the kernel region", p)
        results.append((p, passed))
    return PlanarKernelReport(x, results)

def cross3(u: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0]
    ]

class GnomonicChart:
    """
    Central projection from the origin onto the plane <normal, y> = 1, with
    rational chart coordinates along two directions orthogonal to the normal.
    """
    def __init__(self, normal: Sequence[Fraction]) -> None:
        self.normal: List[Fraction] = list(normal)
        self.base: List[Fraction] = scale(1 / dot(self.normal, self.normal), self.normal)
        axis: int = min(range(3), key=lambda k: (abs(self.normal[k]), k))
        unit: List[Fraction] = [ONE if k == axis else ZERO for k in range(3)]
        self.e1: List[Fraction] = cross3(self.normal, unit)
        self.e2: List[Fraction] = cross3(self.normal, self.e1)
        self.gram: List[List[Fraction]] = [
            [dot(self.e1, self.e1), dot(self.e1, self.e2)],
            [dot(self.e2, self.e1), dot(self.e2, self.e2)]
        ]

    def project(self, y: Sequence[Fraction]) -> QPoint:
        height: Fraction = dot(self.normal, y)
        if height <= 0:
            raise InputError(f"{list(y)} is not in the open halfspace of the chart")
        onPlane: List[Fraction] = subtract(scale(1 / height, y), self.base)
        # e1 and e2 are orthogonal, so the Gram system is diagonal
        return QPoint([
            dot(self.e1, onPlane) / self.gram[0][0],
            dot(self.e2, onPlane) / self.gram[1][1]
        ])

    def lift(self, c: QPoint) -> List[Fraction]:
        return [self.base[k] + c[0] * self.e1[k] + c[1] * self.e2[k] for k in range(3)]

def rayMisses(direction: List[Fraction], family: List[List[QPoint]]) -> bool:
    ray: QPoint = QPoint(direction)
    return not any(rayHitsConvex(ray, member) for member in family)

def jitteredDirection(
    direction: List[Fraction],
    rng: random.Random,
    attempt: int
) -> List[Fraction]:
    magnitude: Fraction = max(abs(c) for c in direction)
    step: Fraction = magnitude / 2 ** (1 + (attempt - 1) // 3)
    return [c + step * Fraction(rng.randint(-8, 8), 8) for c in direction]

def rayWitness(
    instance: Instance,
    origin: Optional[QPoint] = None,
    retryBudget: int = 24,
    seed: int = 0
) -> Optional[RayWitness]:
    """
    A direction whose ray from the origin misses the join, for d = 3 and m >= 4.
    Each separable pair of classes is projected into a gnomonic chart, its
    planar star center c is lifted and -c is tried first, then jittered
    copies. Every candidate is checked exactly against all bases.
    """
    if instance.dimension != 3:
        raise PreconditionError(f"Ray witnesses are defined for d = 3, got d = {instance.dimension}")
    requireColorClasses(instance)
    point: QPoint = checkOrigin(instance, origin)

    family: List[List[QPoint]] = [
        [QPoint(subtract(list(p), list(point))) for p in instance.pointsOf(basis)]
        for basis in enumerateBases(instance)
    ]
    attempts: int = 0
    for i, j in combinations(range(instance.classCount), 2):
        union: List[QPoint] = instance.classPoints(i) + instance.classPoints(j)
        hyperplane: Optional[Hyperplane] = separatingHyperplane(union, point)
        if hyperplane is None:
            continue
        chart: GnomonicChart = GnomonicChart(hyperplane.normal)
        shifted: List[List[QPoint]] = [
            [QPoint(subtract(list(p), list(point))) for p in instance.classPoints(k)]
            for k in (i, j)
        ]
        c: QPoint = planarStarCenter(
            [chart.project(list(p)) for p in shifted[0]],
            [chart.project(list(p)) for p in shifted[1]],
            gram=chart.gram
        )
        candidate: List[Fraction] = scale(Fraction(-1), chart.lift(c))
        rng: random.Random = random.Random(seed)
        for attempt in range(retryBudget + 1):
            attempts += 1
            direction: List[Fraction] = (
                candidate if attempt == 0 else jitteredDirection(candidate, rng, attempt)
            )
            if isZeroVector(direction):
                continue
            if rayMisses(direction, family):
                logger.debug("Ray direction %s verified after %d attempts", direction, attempts)
                return RayWitness(QPoint(direction), point, (i, j), attempts, seed)
        logger.warning("Ray construction from classes (%d, %d) failed after %d retries", i, j, retryBudget)
    return None
