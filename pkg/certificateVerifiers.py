import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Set

from convexity import boundingBox, segmentInUnion, simplicesIntersect
from errors import InputError
from globalUtils import combine, isZeroVector, subtract
from joinCore import enumerateBases, enumerateIndependent, isIndependent, joinContains
from models import CollapseCertificate, Face, Instance, MembershipWitness, QPoint, SimplicialComplex
from nerve import buildNerve
from reportModels import RayWitness, SeparationCertificate, StarCenterReport, TverbergCertificate
from resources import CertificateKind

logger = logging.getLogger(__name__)

def isConvexCombination(point: QPoint, weights: Sequence[Fraction], vertices: Sequence[QPoint]) -> bool:
    if len(weights) != len(vertices) or not vertices:
        return False
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return False
    return QPoint(combine(weights, [list(v) for v in vertices])) == point

def verifyMembershipWitness(instance: Instance, p: QPoint, witness: MembershipWitness) -> bool:
    if not isIndependent(instance, witness.labels):
        return False
    return isConvexCombination(p, witness.barycentric, instance.pointsOf(witness.labels))

def verifyTverbergCertificate(certificate: TverbergCertificate) -> bool:
    seen: Set[int] = set()
    for part in certificate.parts:
        if not part or seen & set(part):
            return False
        seen |= set(part)
    if seen != set(certificate.points):
        return False
    if len(certificate.perPartWitness) != len(certificate.parts):
        return False
    return all(
        isConvexCombination(
            certificate.point, weights, [certificate.points[label] for label in part]
        )
        for part, weights in zip(certificate.parts, certificate.perPartWitness)
    )

def verifyStarCenterReport(
    instance: Instance,
    report: StarCenterReport,
    recheckSegments: bool = True
) -> bool:
    """
    Recheck the Tverberg witness, totality and validity of the pigeonhole
    table and, optionally, every recorded segment check.
    """
    d: int = instance.dimension
    if not verifyTverbergCertificate(report.tverberg) or report.center != report.tverberg.point:
        return False
    if set(report.transversal) != set(report.tverberg.points) or len(report.transversal) != d * (d + 1) + 1:
        return False
    if not isIndependent(instance, report.transversal):
        return False
    if any(instance.point(label) != p for label, p in report.tverberg.points.items()):
        return False
    if len(report.tverberg.parts) != d + 1:
        return False

    table: Dict[Face, int] = {tuple(sorted(Y)): j for Y, j in report.pigeonhole}
    expected: Set[Face] = set(enumerateIndependent(instance, d))
    if set(table) != expected:
        logger.info("Pigeonhole table covers %d of %d independent sets", len(table), len(expected))
        return False
    for Y, j in table.items():
        if not 0 <= j < len(report.tverberg.parts):
            return False
        if not isIndependent(instance, list(report.tverberg.parts[j]) + list(Y)):
            return False

    if recheckSegments and report.segmentChecks:
        family: List[List[QPoint]] = [instance.pointsOf(basis) for basis in enumerateBases(instance)]
        for check in report.segmentChecks:
            if not isIndependent(instance, check.basis):
                return False
            if not segmentInUnion(report.center, check.target, family):
                return False
    return True

def verifySeparationCertificate(instance: Instance, certificate: SeparationCertificate) -> bool:
    indices = certificate.classIndices
    if len(set(indices)) != len(indices) or len(indices) < 2:
        return False
    if any(not 0 <= i < instance.classCount for i in indices):
        return False
    if certificate.hyperplane.evaluate(certificate.origin) >= 0:
        return False
    return all(
        certificate.hyperplane.evaluate(p) > 0
        for i in indices for p in instance.classPoints(i)
    )

def verifySeparatedFamily(instance: Instance, certificate: SeparationCertificate) -> bool:
    if len(certificate.classIndices) < instance.classCount - instance.dimension + 1:
        return False
    return verifySeparationCertificate(instance, certificate)

def rayReachBeyond(points: Sequence[QPoint], origin: QPoint, direction: QPoint) -> QPoint:
    """
    A point on the ray past which the ray stays outside the bounding box of points.
    """
    axis: int = max(range(direction.dimension), key=lambda k: (abs(direction[k]), -k))
    box = boundingBox(list(points) + [origin])
    low, high = box[axis]
    length: Fraction = (high - low) / abs(direction[axis]) + 1
    return QPoint([origin[k] + length * direction[k] for k in range(direction.dimension)])

def verifyRayWitness(instance: Instance, witness: RayWitness) -> bool:
    """
    The ray misses every basis simplex. Checked as a bounded segment, long
    enough to leave the bounding box of the instance, against each basis.
    """
    if isZeroVector(list(witness.direction)) or witness.direction.dimension != instance.dimension:
        return False
    far: QPoint = rayReachBeyond(instance.pointsOf(instance.labels), witness.origin, witness.direction)
    segment: List[QPoint] = [witness.origin, far]
    return all(
        simplicesIntersect([instance.pointsOf(basis), segment]) is None
        for basis in enumerateBases(instance)
    )

def raySpotCheck(instance: Instance, witness: RayWitness, samples: int = 100) -> bool:
    """
    joinContains must miss the ray at `samples` evenly spaced parameters up to
    the far end of the bounding box.
    """
    far: QPoint = rayReachBeyond(instance.pointsOf(instance.labels), witness.origin, witness.direction)
    step: List[Fraction] = subtract(list(far), list(witness.origin))
    for k in range(1, samples + 1):
        s: Fraction = Fraction(k, samples)
        probe: QPoint = QPoint([o + s * v for o, v in zip(witness.origin, step)])
        if joinContains(instance, probe) is not None:
            logger.warning("Ray %s enters the join at %s", witness.direction, probe)
            return False
    return True

def verifyCollapseCertificate(simplicialComplex: SimplicialComplex, certificate: CollapseCertificate) -> bool:
    """
    Replay the elementary collapses: each free face must have its pair as the
    only remaining coface. The replay must end at the recorded residual.
    """
    present: Set[Face] = set(simplicialComplex.allFaces())
    for free, coface in certificate.pairs:
        if free not in present or coface not in present:
            return False
        if len(coface) != len(free) + 1 or not set(free) < set(coface):
            return False
        others: List[Face] = [
            face for face in present
            if len(face) > len(free) and face != coface and set(free) < set(face)
        ]
        if others:
            return False
        present.discard(free)
        present.discard(coface)
    return present == set(certificate.residual.allFaces())

def verifyCertificateJson(instance: Instance, certificateJson: Dict[str, Any]) -> bool:
    """
    Re-check a stored certificate ({"kind", "payload", ...}) against its instance.
    Collapse certificates are replayed on a freshly built nerve.
    """
    try:
        kind: CertificateKind = CertificateKind(certificateJson["kind"])
        payload: Dict[str, Any] = certificateJson["payload"]
    except (KeyError, ValueError) as e:
        raise InputError(f"Malformed certificate: {e}") from e
    if payload is None:
        raise InputError(f"Certificate of kind {kind.value} carries no payload")

    if kind == CertificateKind.COLLAPSE:
        certificate: CollapseCertificate = CollapseCertificate.fromJsonableDict(payload)
        nerve: SimplicialComplex = buildNerve(instance, certificate.residual.dimensionCap)
        return verifyCollapseCertificate(nerve, certificate)

    verifiers: Dict[CertificateKind, Callable[[Dict[str, Any]], bool]] = {
        CertificateKind.MEMBERSHIP: lambda data: verifyMembershipWitness(
            instance, QPoint(data["point"]), MembershipWitness.fromJsonableDict(data["witness"])
        ),
        CertificateKind.TVERBERG: lambda data: verifyTverbergCertificate(
            TverbergCertificate.fromJsonableDict(data)
        ),
        CertificateKind.STAR_CENTER: lambda data: verifyStarCenterReport(
            instance, StarCenterReport.fromJsonableDict(data)
        ),
        CertificateKind.SEPARATION: lambda data: verifySeparationCertificate(
            instance, SeparationCertificate.fromJsonableDict(data)
        ),
        CertificateKind.SEPARATED_FAMILY: lambda data: verifySeparatedFamily(
            instance, SeparationCertificate.fromJsonableDict(data)
        ),
        CertificateKind.RAY: lambda data: verifyRayWitness(
            instance, RayWitness.fromJsonableDict(data)
        )
    }
    try:
        return verifiers[kind](payload)
    except KeyError as e:
        raise InputError(f"Certificate payload is missing {e}") from e

def membershipPayload(p: QPoint, witness: Optional[MembershipWitness]) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    return {"point": p.toJsonableList(), "witness": witness.toJsonableDict()}
