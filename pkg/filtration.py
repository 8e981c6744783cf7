import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from convexity import simplicesIntersect
from errors import InputError
from joinCore import enumerateBases
from models import Face, Instance, QPoint, SimplicialComplex
from nerve import candidateFaces
from reportModels import ClosestSet, CriticalRadiusEstimate, MorseProbeReport
from resources import Resources

logger = logging.getLogger(__name__)

def projectOntoHull(x: np.ndarray, vertices: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Numeric nearest point of conv(vertices) to x and its distance.
    """
    count: int = vertices.shape[0]
    if count == 1:
        return vertices[0].copy(), float(np.linalg.norm(x - vertices[0]))

    def objective(mu: np.ndarray) -> float:
        diff: np.ndarray = x - mu @ vertices
        return float(diff @ diff)

    def gradient(mu: np.ndarray) -> np.ndarray:
        return -2.0 * vertices @ (x - mu @ vertices)

    result = minimize(
        objective,
        np.full(count, 1.0 / count),
        jac=gradient,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * count,
        constraints=[{
            "type": "eq",
            "fun": lambda mu: float(np.sum(mu) - 1.0),
            "jac": lambda mu: np.ones_like(mu)
        }],
        options={"ftol": Resources.slsqpPrecision, "maxiter": Resources.slsqpMaxIterations}
    )
    weights: np.ndarray = np.clip(result.x, 0.0, None)
    weights = weights / weights.sum()
    nearest: np.ndarray = weights @ vertices
    return nearest, float(np.linalg.norm(x - nearest))

def minimaxRadius(hulls: List[np.ndarray]) -> Tuple[float, np.ndarray]:
    """
    Smallest r such that some x is within r of every hull, by SLSQP on
    (x, per-hull weights, s = r^2) starting at the centroid of all vertices.
    """
    dimension: int = hulls[0].shape[1]
    sizes: List[int] = [hull.shape[0] for hull in hulls]
    offsets: List[int] = [dimension + sum(sizes[:i]) for i in range(len(hulls))]
    last: int = dimension + sum(sizes)

    centroid: np.ndarray = np.vstack(hulls).mean(axis=0)
    start: np.ndarray = np.zeros(last + 1)
    start[:dimension] = centroid
    for hull, offset, size in zip(hulls, offsets, sizes):
        start[offset:offset + size] = 1.0 / size
    start[last] = max(float(np.sum((centroid - hull.mean(axis=0)) ** 2)) for hull in hulls)

    def split(z: np.ndarray, index: int) -> np.ndarray:
        return z[offsets[index]:offsets[index] + sizes[index]]

    constraints: List[Dict] = []
    for index, hull in enumerate(hulls):
        def gap(z: np.ndarray, index: int = index, hull: np.ndarray = hull) -> float:
            diff: np.ndarray = z[:dimension] - split(z, index) @ hull
            return float(z[last] - diff @ diff)

        def gapGradient(z: np.ndarray, index: int = index, hull: np.ndarray = hull) -> np.ndarray:
            diff: np.ndarray = z[:dimension] - split(z, index) @ hull
            grad: np.ndarray = np.zeros_like(z)
            grad[:dimension] = -2.0 * diff
            grad[offsets[index]:offsets[index] + sizes[index]] = 2.0 * hull @ diff
            grad[last] = 1.0
            return grad

        def simplex(z: np.ndarray, index: int = index) -> float:
            return float(np.sum(split(z, index)) - 1.0)

        def simplexGradient(z: np.ndarray, index: int = index) -> np.ndarray:
            grad: np.ndarray = np.zeros_like(z)
            grad[offsets[index]:offsets[index] + sizes[index]] = 1.0
            return grad

        constraints.append({"type": "ineq", "fun": gap, "jac": gapGradient})
        constraints.append({"type": "eq", "fun": simplex, "jac": simplexGradient})

    objectiveGradient: np.ndarray = np.zeros(last + 1)
    objectiveGradient[last] = 1.0
    bounds = [(None, None)] * dimension + [(0.0, 1.0)] * sum(sizes) + [(0.0, None)]
    result = minimize(
        lambda z: float(z[last]),
        start,
        jac=lambda z: objectiveGradient,
        method="SLSQP",
        bounds=bounds,
        constraints=constraints,
        options={"ftol": Resources.slsqpPrecision, "maxiter": Resources.slsqpMaxIterations}
    )
    if not result.success:
        logger.debug("SLSQP stopped early: %s", result.message)
    x: np.ndarray = result.x[:dimension]
    # the radius is re-measured at x, so it never understates the distance
    radius: float = max(projectOntoHull(x, hull)[1] for hull in hulls)
    return radius, x

def hullArrays(instance: Instance, bases: List[Face], subfamily: Face) -> List[np.ndarray]:
    return [
        np.array([p.toFloats() for p in instance.pointsOf(bases[v])], dtype=float)
        for v in subfamily
    ]

def radiusOf(
    hulls: List[List[QPoint]],
    numericHulls: List[np.ndarray],
    subfamily: Face
) -> CriticalRadiusEstimate:
    common: Optional[QPoint] = simplicesIntersect(hulls)
    if common is not None:
        return CriticalRadiusEstimate(subfamily, 0.0, common.toFloats(), exact=True)
    radius, x = minimaxRadius(numericHulls)
    return CriticalRadiusEstimate(subfamily, radius, [float(c) for c in x])

def criticalRadius(instance: Instance, subfamily: Sequence[int]) -> CriticalRadiusEstimate:
    """
    Smallest t at which the t-neighborhoods of the chosen basis simplices share
    a point. Radius 0 is decided exactly, positive radii are numeric.
    """
    if not subfamily:
        raise InputError("criticalRadius needs a nonempty subfamily")
    bases: List[Face] = enumerateBases(instance)
    face: Face = tuple(sorted(subfamily))
    if any(not 0 <= v < len(bases) for v in face):
        raise InputError(f"Subfamily {list(face)} refers to unknown bases")
    return radiusOf(
        [instance.pointsOf(bases[v]) for v in face],
        hullArrays(instance, bases, face),
        face
    )

def offsetNerve(
    instance: Instance,
    t: float,
    tolerance: float = Resources.defaultTolerance,
    dimensionCap: Optional[int] = None
) -> SimplicialComplex:
    """
    Nerve of the t-neighborhoods of the basis simplices. At t = 0 only the
    exact oracle decides, so the result equals buildNerve.
    """
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    cap: int = instance.dimension + 1 if dimensionCap is None else dimensionCap
    bases: List[Face] = enumerateBases(instance)
    hulls: List[List[QPoint]] = [instance.pointsOf(basis) for basis in bases]

    faces: Dict[int, List[Face]] = {0: [(v,) for v in range(len(bases))]}
    for dimension in range(1, cap + 1):
        level: List[Face] = []
        for face in candidateFaces(faces[dimension - 1]):
            members: List[List[QPoint]] = [hulls[v] for v in face]
            if simplicesIntersect(members) is not None:
                level.append(face)
            elif t > 0 and minimaxRadius(hullArrays(instance, bases, face))[0] <= t + tolerance:
                level.append(face)
        if not level:
            break
        faces[dimension] = level
    complete: bool = cap not in faces or not candidateFaces(faces[cap])
    return SimplicialComplex(len(bases), faces, cap, complete)

def filtrationTrace(
    instance: Instance,
    dimensionCap: Optional[int] = None,
    workers: int = 1
) -> List[CriticalRadiusEstimate]:
    """
    Critical radius of every subfamily of at least two bases up to the cap,
    sorted by radius. Simultaneous radii stay as ties.
    """
    cap: int = instance.dimension + 1 if dimensionCap is None else dimensionCap
    bases: List[Face] = enumerateBases(instance)
    subfamilies: List[Face] = [
        face
        for size in range(2, min(cap + 1, len(bases)) + 1)
        for face in combinations(range(len(bases)), size)
    ]
    arguments = (
        [[instance.pointsOf(bases[v]) for v in face] for face in subfamilies],
        [hullArrays(instance, bases, face) for face in subfamilies],
        subfamilies
    )
    if workers > 1 and len(subfamilies) > workers:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            trace: List[CriticalRadiusEstimate] = list(executor.map(radiusOf, *arguments))
    else:
        trace = [radiusOf(*args) for args in zip(*arguments)]
    trace.sort(key=lambda estimate: (estimate.radius, estimate.subfamily))
    logger.info("Filtration trace of %d subfamilies on %d bases", len(trace), len(bases))
    return trace

def radiusTies(trace: List[CriticalRadiusEstimate], tolerance: float = Resources.defaultTolerance) -> List[List[Face]]:
    """Groups of subfamilies whose positive radii agree within tolerance."""
    groups: List[List[Face]] = []
    previous: Optional[CriticalRadiusEstimate] = None
    for estimate in trace:
        if estimate.radius <= 0:
            continue
        if previous is not None and estimate.radius - previous.radius <= tolerance:
            if groups and previous.subfamily in groups[-1]:
                groups[-1].append(estimate.subfamily)
            else:
                groups.append([previous.subfamily, estimate.subfamily])
        previous = estimate
    return groups

def monotonicityAudit(
    trace: List[CriticalRadiusEstimate],
    tolerance: float = Resources.defaultTolerance
) -> List[Tuple[Face, Face]]:
    """
    (sub, super) pairs in the trace where the smaller subfamily needs the
    larger radius. Logged as warnings; numeric results never gate anything.
    """
    byFace: Dict[Face, float] = {estimate.subfamily: estimate.radius for estimate in trace}
    violations: List[Tuple[Face, Face]] = []
    for face, radius in byFace.items():
        for i in range(len(face)):
            facet: Face = face[:i] + face[i + 1:]
            if facet in byFace and byFace[facet] > radius + tolerance:
                violations.append((facet, face))
                logger.warning(
                    "Critical radius of %s (%.12g) exceeds that of %s (%.12g)",
                    list(facet), byFace[facet], list(face), radius
                )
    return violations

def offsetMonotonicityAudit(
    instance: Instance,
    grid: Sequence[float],
    tolerance: float = Resources.defaultTolerance,
    dimensionCap: Optional[int] = None
) -> bool:
    """Faces present at t1 are present at every t2 >= t1 on the grid."""
    previous: Optional[SimplicialComplex] = None
    for t in sorted(grid):
        current: SimplicialComplex = offsetNerve(instance, t, tolerance, dimensionCap)
        if previous is not None and not set(previous.allFaces()) <= set(current.allFaces()):
            logger.warning("Offset nerve lost faces between consecutive grid values up to t=%g", t)
            return False
        previous = current
    return True

def morseProbe(
    instance: Instance,
    x0: Sequence[float],
    tolerance: float = Resources.defaultTolerance
) -> MorseProbeReport:
    """
    Nearest points of the basis simplices to x0 and whether x0 lies in the hull
    of the closest ones. Diagnostic only.
    """
    point: np.ndarray = np.array(x0, dtype=float)
    if point.shape != (instance.dimension,):
        raise InputError(f"x0 must have {instance.dimension} coordinates")
    # squared distances are accurate to the tolerance, distances to its root
    slack: float = math.sqrt(tolerance)
    bases: List[Face] = enumerateBases(instance)
    perBody: List[np.ndarray] = []
    distances: List[float] = []
    for basis in bases:
        vertices: np.ndarray = np.array([p.toFloats() for p in instance.pointsOf(basis)], dtype=float)
        nearest, distance = projectOntoHull(point, vertices)
        perBody.append(nearest)
        distances.append(distance)

    closest: float = min(distances)
    if closest <= slack:
        return MorseProbeReport(list(x0), MorseProbeReport.INTERIOR, None)
    active: List[int] = [i for i, distance in enumerate(distances) if distance <= closest + slack]
    closestSet: ClosestSet = ClosestSet(
        list(x0), [p.tolist() for p in perBody], distances, active
    )
    activePoints: np.ndarray = np.array([perBody[i] for i in active])
    _, gap = projectOntoHull(point, activePoints)
    status: str = MorseProbeReport.FAILS if gap <= slack else MorseProbeReport.HOLDS
    logger.debug("Morse probe at %s: %d active bodies, %s", list(x0), len(active), status)
    return MorseProbeReport(list(x0), status, closestSet)
