import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional

import networkx as nx

from certificateVerifiers import (
    membershipPayload,
    verifyCollapseCertificate,
    verifyMembershipWitness,
    verifyRayWitness,
    verifySeparatedFamily,
    verifySeparationCertificate,
    verifyStarCenterReport
)
from certificates import rayWitness, separatedFamily, starCertificate, strongSeparation
from errors import BudgetExceededError, InternalConsistencyError
from globalUtils import digestOf
from homology import eulerCharacteristicAudit, greedyCollapse, homology, pi1Presentation
from joinCore import joinContains, matroidRank, theoremGuarantees
from models import CollapseCertificate, HomologyReport, Instance, MembershipWitness, QPoint, SimplicialComplex
from nerve import auditDownwardClosed, buildNerve, dumpComplex, intersectionGraph
from reportModels import (
    AnalysisReport,
    CertificateAttempt,
    GuaranteeClaim,
    RayWitness,
    SearchConfig,
    SeparationCertificate,
    StarCenterReport
)
from resources import CertificateKind, FindingFlag
from simplexSolver import lpBudget

logger = logging.getLogger(__name__)

@contextmanager
def timed(timings: Dict[str, float], stage: str) -> Iterator[None]:
    start: float = time.perf_counter()
    try:
        yield
    finally:
        timings[stage] = round(time.perf_counter() - start, 6)

def requireVerified(verified: bool, what: str) -> None:
    if not verified:
        raise InternalConsistencyError(f"{what} failed its own verification")

def checkGuarantees(
    claims: List[GuaranteeClaim],
    report: HomologyReport,
    collapsedToPoint: bool
) -> List[str]:
    """
    Compare measured reduced homology with every proved claim; a contradiction
    is fatal. Returns one audit line per claim.
    """
    lines: List[str] = []
    for claim in claims:
        through: int = len(report.betti) - 1 if claim.vanishingThrough is None else claim.vanishingThrough
        through = min(through, len(report.betti) - 1)
        nonzero: List[int] = [
            k for k in range(through + 1)
            if report.betti[k] != 0 or report.torsion[k]
        ]
        if nonzero:
            raise InternalConsistencyError(
                f"Claim '{claim.name}' ({claim.reason}) contradicted: reduced homology "
                f"nonzero in dimensions {nonzero}"
            )
        if claim.name == "contractible" and not collapsedToPoint:
            logger.debug("Contractible by %s although the greedy collapse got stuck", claim.reason)
        lines.append(f"claim {claim.name} consistent through dimension {through}")
    return lines

def auditHomology(
    instance: Instance,
    nerve: SimplicialComplex,
    report: HomologyReport,
    collapsedToPoint: bool
) -> List[str]:
    """
    Properties every nerve of convex sets in R^d must have; any failure is an
    internal inconsistency.
    """
    audits: List[str] = []
    if auditDownwardClosed(nerve):
        raise InternalConsistencyError("Nerve is not downward closed")
    audits.append("downward closed")

    if not eulerCharacteristicAudit(nerve, report):
        raise InternalConsistencyError(f"Euler characteristic disagrees with {report}")
    audits.append("euler characteristic")

    components: int = nx.number_connected_components(intersectionGraph(instance))
    if report.betti[0] + 1 != components:
        raise InternalConsistencyError(
            f"beta_0 = {report.betti[0]} (reduced) but the intersection graph has {components} components"
        )
    audits.append(f"beta_0 matches {components} component(s)")

    high: List[int] = [
        k for k in range(instance.dimension, len(report.betti))
        if report.betti[k] != 0 or report.torsion[k]
    ]
    if high:
        raise InternalConsistencyError(f"Homology in dimensions {high} >= d = {instance.dimension}")
    audits.append("no homology in dimensions >= d")

    if collapsedToPoint and not report.isTrivial():
        raise InternalConsistencyError(f"Collapsible complex with nontrivial homology {report}")
    return audits

def contractibilityStatus(collapse: CollapseCertificate, report: HomologyReport, complete: bool) -> str:
    if collapse.collapsedToPoint and complete:
        return "contractible (collapse certificate)"
    if collapse.collapsedToPoint:
        return "collapsible below the cap"
    if report.isTrivial():
        return "homology trivial, collapse inconclusive"
    return "not contractible (nontrivial homology)"

def collapseAttempt(nerve: SimplicialComplex, collapse: CollapseCertificate) -> CertificateAttempt:
    if collapse.collapsedToPoint:
        requireVerified(verifyCollapseCertificate(nerve, collapse), "Collapse certificate")
        return CertificateAttempt(CertificateKind.COLLAPSE, CertificateAttempt.VERIFIED, collapse.toJsonableDict())
    return CertificateAttempt(
        CertificateKind.COLLAPSE,
        CertificateAttempt.ABSENT,
        detail=f"greedy collapse stuck at f-vector {collapse.residual.fVector()}"
    )

def regimeCertificates(instance: Instance, config: SearchConfig, seed: int) -> List[CertificateAttempt]:
    """
    Certificates applicable to the instance's parameter regime, each verified
    by the independent checker before it is recorded.
    """
    attempts: List[CertificateAttempt] = []
    d: int = instance.dimension

    if matroidRank(instance) > d * (d + 1):
        star: StarCenterReport = starCertificate(instance, config.starSegmentChecks, seed)
        requireVerified(verifyStarCenterReport(instance, star, recheckSegments=False), "Star certificate")
        attempts.append(CertificateAttempt(
            CertificateKind.STAR_CENTER, CertificateAttempt.VERIFIED, star.toJsonableDict()
        ))

    if not instance.isPartition or instance.classCount < d + 1:
        return attempts

    origin: QPoint = QPoint.origin(d)
    witness: Optional[MembershipWitness] = joinContains(instance, origin)
    if witness is not None:
        requireVerified(verifyMembershipWitness(instance, origin, witness), "Membership witness")
        attempts.append(CertificateAttempt(
            CertificateKind.MEMBERSHIP, CertificateAttempt.VERIFIED, membershipPayload(origin, witness)
        ))
        return attempts

    attempts.append(CertificateAttempt(
        CertificateKind.MEMBERSHIP, CertificateAttempt.ABSENT, detail="origin outside the join"
    ))
    separation: SeparationCertificate = strongSeparation(instance, origin)
    requireVerified(verifySeparationCertificate(instance, separation), "Separation certificate")
    attempts.append(CertificateAttempt(
        CertificateKind.SEPARATION, CertificateAttempt.VERIFIED, separation.toJsonableDict()
    ))
    family: SeparationCertificate = separatedFamily(instance, origin)
    requireVerified(verifySeparatedFamily(instance, family), "Separated family")
    attempts.append(CertificateAttempt(
        CertificateKind.SEPARATED_FAMILY, CertificateAttempt.VERIFIED, family.toJsonableDict()
    ))

    if d == 3:
        ray: Optional[RayWitness] = rayWitness(instance, origin, config.rayRetryBudget, seed)
        if ray is None:
            logger.warning("No ray witness within the retry budget of %d", config.rayRetryBudget)
            attempts.append(CertificateAttempt(CertificateKind.RAY, CertificateAttempt.NOT_FOUND))
        else:
            requireVerified(verifyRayWitness(instance, ray), "Ray witness")
            attempts.append(CertificateAttempt(
                CertificateKind.RAY, CertificateAttempt.VERIFIED, ray.toJsonableDict()
            ))
    return attempts

def findingFlags(instance: Instance, report: AnalysisReport, pi1Empty: Optional[bool]) -> List[FindingFlag]:
    """
    Flags for the conjectured regime m >= d+1: nontrivial reduced homology, or
    trivial homology with a presentation the simplifier could not kill.
    """
    if not instance.isPartition or instance.classCount < instance.dimension + 1 or report.homology is None:
        return []
    if not report.homology.isTrivial():
        return [FindingFlag.NONTRIVIAL_HOMOLOGY]
    if pi1Empty is False:
        return [FindingFlag.SUSPICIOUS_PI1]
    return []

def analyze(
    instance: Instance,
    config: SearchConfig,
    seed: Optional[int] = None,
    index: Optional[int] = None
) -> AnalysisReport:
    """
    Nerve, homology, collapse, edge-path group, audits and certificates of one
    instance. Budget overruns give a partial report flagged incomplete.
    """
    report: AnalysisReport = AnalysisReport(
        digestOf(instance.toJsonableDict()),
        instance.toJsonableDict(),
        seed,
        index,
        config.configHash(),
        config.toJsonableDict()
    )
    report.dimensionCap = config.effectiveCap(instance.dimension)
    report.guarantees = theoremGuarantees(instance)
    certificateSeed: int = seed if seed is not None else config.seed

    with lpBudget(config.lpBudget) as counter:
        try:
            with timed(report.timings, "nerve"):
                nerve: SimplicialComplex = buildNerve(
                    instance, report.dimensionCap, config.faceBudget, config.workers
                )
            report.nerveSizes = nerve.fVector()
            if config.complexDumpFilePath:
                dumpComplex(nerve, config.complexDumpFilePath)
            report.nerveComplete = nerve.complete

            with timed(report.timings, "homology"):
                report.homology = homology(nerve)
            with timed(report.timings, "collapse"):
                collapse: CollapseCertificate = greedyCollapse(nerve)
            report.collapsedToPoint = collapse.collapsedToPoint
            report.collapsePairs = len(collapse.pairs)
            report.residualSizes = collapse.residual.fVector()
            report.contractibility = contractibilityStatus(collapse, report.homology, nerve.complete)

            pi1Empty: Optional[bool] = None
            if report.dimensionCap >= 2 or nerve.complete:
                with timed(report.timings, "pi1"):
                    presentation = pi1Presentation(nerve)
                report.pi1Generators = presentation.generatorCount()
                report.pi1Relators = presentation.relatorCount()
                pi1Empty = presentation.isEmpty()

            with timed(report.timings, "audits"):
                report.audits = auditHomology(instance, nerve, report.homology, collapse.collapsedToPoint)
                report.audits += checkGuarantees(report.guarantees, report.homology, collapse.collapsedToPoint)
            report.flags = findingFlags(instance, report, pi1Empty)

            with timed(report.timings, "certificates"):
                report.certificates = [collapseAttempt(nerve, collapse)]
                report.certificates += regimeCertificates(instance, config, certificateSeed)
        except BudgetExceededError as e:
            logger.warning("Analysis of %s stopped early: %s", report.digest[:12], e)
            report.incomplete = True
            report.incompleteReason = str(e)
        finally:
            report.lpCalls = counter.calls

    logger.info(
        "Instance %s: nerve %s, homology %s, %s",
        report.digest[:12],
        report.nerveSizes,
        report.homology.betti if report.homology else None,
        report.contractibility
    )
    return report