import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from convexity import inConvexHull
from errors import InputError, InternalConsistencyError, PreconditionError
from models import Face, Instance, MembershipWitness, QPoint
from reportModels import CaratheodoryReport, GuaranteeClaim
from resources import MatroidKind

logger = logging.getLogger(__name__)

def checkLabels(instance: Instance, subset: Iterable[int]) -> Set[int]:
    labels: Set[int] = set(subset)
    for label in labels:
        if label not in instance.ground.points:
            raise InputError(f"Unknown label {label}")
    return labels

def rank(instance: Instance, subset: Iterable[int]) -> int:
    """
    Matroid rank: the size of a largest independent set inside subset.
    """
    labels: Set[int] = checkLabels(instance, subset)
    kind: MatroidKind = instance.matroid.kind
    if kind == MatroidKind.PARTITION:
        return len({instance.labelToClass[label] for label in labels})
    if kind == MatroidKind.UNIFORM:
        return min(len(labels), instance.matroid.rank or 0)
    return max(len(labels.intersection(basis)) for basis in instance.matroid.bases)

def matroidRank(instance: Instance) -> int:
    return rank(instance, instance.labels)

def isIndependent(instance: Instance, subset: Sequence[int]) -> bool:
    if len(set(subset)) != len(subset):
        return False
    return rank(instance, subset) == len(subset)

def augment(instance: Instance, A: Sequence[int], B: Sequence[int]) -> int:
    """
    The smallest b in B - A with A + b independent.
    """
    if not isIndependent(instance, A) or not isIndependent(instance, B):
        raise InputError("augment needs two independent sets")
    if len(A) >= len(B):
        raise InputError(f"augment needs |A| < |B|, got {len(A)} and {len(B)}")
    for label in sorted(set(B) - set(A)):
        if isIndependent(instance, list(A) + [label]):
            return label
    raise InternalConsistencyError(f"Augmentation failed for A={sorted(A)}, B={sorted(B)}")

def enumerateIndependent(instance: Instance, maxSize: int) -> Iterator[Face]:
    """
    All independent sets of size at most maxSize, by size and then lexicographically.
    """
    if not 0 <= maxSize <= matroidRank(instance):
        raise InputError(f"maxSize must lie in [0, rank], got {maxSize}")
    labels: List[int] = instance.labels
    for size in range(maxSize + 1):
        yield from independentOfSize(instance, labels, size, 0, ())

def independentOfSize(
    instance: Instance,
    labels: List[int],
    size: int,
    start: int,
    prefix: Face
) -> Iterator[Face]:
    if len(prefix) == size:
        yield prefix
        return
    for index in range(start, len(labels) - (size - len(prefix)) + 1):
        candidate: Face = prefix + (labels[index],)
        # independent sets are closed under subsets, so dependent prefixes are pruned
        if isIndependent(instance, candidate):
            yield from independentOfSize(instance, labels, size, index + 1, candidate)

def enumerateBases(instance: Instance) -> List[Face]:
    """
    Maximal independent sets in lexicographic order.
    """
    kind: MatroidKind = instance.matroid.kind
    if kind == MatroidKind.PARTITION:
        return sorted(tuple(sorted(choice)) for choice in product(*instance.matroid.classes))
    if kind == MatroidKind.UNIFORM:
        return list(combinations(instance.labels, instance.matroid.rank or 0))
    return list(instance.matroid.bases)

def joinContains(instance: Instance, p: QPoint) -> Optional[MembershipWitness]:
    """
    First independent set (size <= d+1, lexicographic order) whose hull holds p.
    """
    if p.dimension != instance.dimension:
        raise InputError(f"Query point has dimension {p.dimension}, expected {instance.dimension}")
    maxSize: int = min(matroidRank(instance), instance.dimension + 1)
    for labels in enumerateIndependent(instance, maxSize):
        if not labels:
            continue
        weights = inConvexHull(p, instance.pointsOf(labels))
        if weights is not None:
            return MembershipWitness(labels, weights)
    return None

def requireColorClasses(instance: Instance) -> None:
    if not instance.isPartition:
        raise PreconditionError("This operation needs color classes (partition matroid)")
    if instance.classCount < instance.dimension + 1:
        raise PreconditionError(
            f"Needs m >= d+1 color classes, got m={instance.classCount}, d={instance.dimension}"
        )

def colorfulCaratheodoryCheck(instance: Instance, p: QPoint) -> CaratheodoryReport:
    """
    If p lies in every conv X_i then p lies in the join. A miss means a bug.
    """
    requireColorClasses(instance)
    hypothesisMet: bool = all(
        inConvexHull(p, instance.classPoints(i)) is not None
        for i in range(instance.classCount)
    )
    return caratheodoryConclusion(instance, p, hypothesisMet, strong=False)

def strongColorfulCaratheodoryCheck(instance: Instance, p: QPoint) -> CaratheodoryReport:
    """
    Pairwise version: p in conv(X_i u X_j) for all i != j forces p into the join.
    """
    requireColorClasses(instance)
    hypothesisMet: bool = all(
        inConvexHull(p, instance.classPoints(i) + instance.classPoints(j)) is not None
        for i, j in combinations(range(instance.classCount), 2)
    )
    return caratheodoryConclusion(instance, p, hypothesisMet, strong=True)

def caratheodoryConclusion(
    instance: Instance,
    p: QPoint,
    hypothesisMet: bool,
    strong: bool
) -> CaratheodoryReport:
    if not hypothesisMet:
        return CaratheodoryReport(p, strong, hypothesisMet=False, witness=None)
    witness: Optional[MembershipWitness] = joinContains(instance, p)
    if witness is None:
        raise InternalConsistencyError(
            f"Colorful Caratheodory violated at {p}: hypothesis holds but no colorful witness"
        )
    return CaratheodoryReport(p, strong, hypothesisMet=True, witness=witness)

def largestConnectivityParameter(m: int, d: int) -> int:
    """Largest k with m > d k / 2."""
    return (2 * m - 1) // d

def theoremGuarantees(instance: Instance) -> List[GuaranteeClaim]:
    """
    Topological properties of the join implied by proved results for the
    instance's parameters.
    """
    d: int = instance.dimension
    r: int = matroidRank(instance)
    claims: List[GuaranteeClaim] = []
    if r > d * (d + 1):
        claims.append(GuaranteeClaim("starshaped", None, f"rank {r} > d(d+1) = {d * (d + 1)}"))
    if 2 * r > d + 2:
        claims.append(GuaranteeClaim("simply-connected", 1, f"rank {r} > (d+2)/2"))
    if instance.isPartition:
        m: int = instance.classCount
        if 2 * m > d * (d + 1):
            claims.append(GuaranteeClaim("contractible", None, f"m = {m} > d(d+1)/2"))
        k: int = largestConnectivityParameter(m, d)
        if k >= 2:
            claims.append(
                GuaranteeClaim(f"{k - 2}-connected", k - 2, f"m = {m} > d*{k}/2")
            )
        if 2 <= d <= 3 and m >= d + 1:
            claims.append(GuaranteeClaim("contractible", None, f"2 <= d = {d} <= 3 and m >= d+1"))
    return claims

def basisMembership(instance: Instance, p: QPoint) -> Optional[Tuple[Face, List[Fraction]]]:
    """
    First basis whose hull contains p; agrees with joinContains on every input.
    """
    for basis in enumerateBases(instance):
        weights = inConvexHull(p, instance.pointsOf(basis))
        if weights is not None:
            return basis, weights
    return None
