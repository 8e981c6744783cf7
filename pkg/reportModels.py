import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from globalUtils import digestOf, formatRational, parseRational
from models import (
    Face,
    HomologyReport,
    Hyperplane,
    MembershipWitness,
    QPoint
)
from resources import CertificateKind, FindingFlag, Mode, SearchConfigDefaults

logger = logging.getLogger(__name__)

class GuaranteeClaim:
    """
    A property of the join implied by a proved result. vanishingThrough is the
    highest dimension whose reduced homology must vanish (None: all of it).
    """
    def __init__(self, name: str, vanishingThrough: Optional[int], reason: str) -> None:
        self.name: str = name
        self.vanishingThrough: Optional[int] = vanishingThrough
        self.reason: str = reason

    def __repr__(self) -> str:
        return f"GuaranteeClaim({self.name}: {self.reason})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {"name": self.name, "vanishingThrough": self.vanishingThrough, "reason": self.reason}

class CaratheodoryReport:
    def __init__(
        self,
        point: QPoint,
        strong: bool,
        hypothesisMet: bool,
        witness: Optional[MembershipWitness]
    ) -> None:
        self.point: QPoint = point
        self.strong: bool = strong
        self.hypothesisMet: bool = hypothesisMet
        self.witness: Optional[MembershipWitness] = witness

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "point": self.point.toJsonableList(),
            "strong": self.strong,
            "hypothesisMet": self.hypothesisMet,
            "witness": self.witness.toJsonableDict() if self.witness else None
        }

class TverbergCertificate:
    def __init__(
        self,
        points: Dict[int, QPoint],
        parts: List[Face],
        point: QPoint,
        perPartWitness: List[List[Fraction]]
    ) -> None:
        self.points: Dict[int, QPoint] = points
        self.parts: List[Face] = parts
        self.point: QPoint = point
        self.perPartWitness: List[List[Fraction]] = perPartWitness

    def __repr__(self) -> str:
        return f"TverbergCertificate(parts={self.parts}, point={self.point})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "points": {str(label): p.toJsonableList() for label, p in self.points.items()},
            "parts": [list(part) for part in self.parts],
            "point": self.point.toJsonableList(),
            "perPartWitness": [[formatRational(w) for w in weights] for weights in self.perPartWitness]
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'TverbergCertificate':
        return TverbergCertificate(
            {int(label): QPoint(coords) for label, coords in jsonableDict["points"].items()},
            [tuple(part) for part in jsonableDict["parts"]],
            QPoint(jsonableDict["point"]),
            [[parseRational(w) for w in weights] for weights in jsonableDict["perPartWitness"]]
        )

class SeparationCertificate:
    """
    Color classes whose union lies strictly on the positive side of the
    hyperplane while the origin lies strictly on the negative side.
    """
    def __init__(self, classIndices: Sequence[int], hyperplane: Hyperplane, origin: QPoint) -> None:
        self.classIndices: Tuple[int, ...] = tuple(classIndices)
        self.hyperplane: Hyperplane = hyperplane
        self.origin: QPoint = origin

    @property
    def i(self) -> int:
        return self.classIndices[0]

    @property
    def j(self) -> int:
        return self.classIndices[1]

    def __repr__(self) -> str:
        return f"SeparationCertificate(classes={list(self.classIndices)}, {self.hyperplane})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "classIndices": list(self.classIndices),
            "hyperplane": self.hyperplane.toJsonableDict(),
            "origin": self.origin.toJsonableList()
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'SeparationCertificate':
        return SeparationCertificate(
            jsonableDict["classIndices"],
            Hyperplane.fromJsonableDict(jsonableDict["hyperplane"]),
            QPoint(jsonableDict["origin"])
        )

class RayWitness:
    def __init__(
        self,
        direction: QPoint,
        origin: QPoint,
        separatedPair: Tuple[int, int],
        attempts: int,
        seed: int
    ) -> None:
        self.direction: QPoint = direction
        self.origin: QPoint = origin
        self.separatedPair: Tuple[int, int] = separatedPair
        self.attempts: int = attempts
        self.seed: int = seed

    def __repr__(self) -> str:
        return f"RayWitness(direction={self.direction}, attempts={self.attempts})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "direction": self.direction.toJsonableList(),
            "origin": self.origin.toJsonableList(),
            "separatedPair": list(self.separatedPair),
            "attempts": self.attempts,
            "seed": self.seed
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'RayWitness':
        pair: List[int] = jsonableDict.get("separatedPair", [0, 1])
        return RayWitness(
            QPoint(jsonableDict["direction"]),
            QPoint(jsonableDict["origin"]),
            (pair[0], pair[1]),
            jsonableDict.get("attempts", 0),
            jsonableDict.get("seed", 0)
        )

class SegmentCheck:
    def __init__(self, basis: Face, target: QPoint, passed: bool) -> None:
        self.basis: Face = basis
        self.target: QPoint = target
        self.passed: bool = passed

    def toJsonableDict(self) -> Dict[str, Any]:
        return {"basis": list(self.basis), "target": self.target.toJsonableList(), "passed": self.passed}

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'SegmentCheck':
        return SegmentCheck(
            tuple(jsonableDict["basis"]), QPoint(jsonableDict["target"]), jsonableDict["passed"]
        )

class StarCenterReport:
    """
    Tverberg point t of an independent set T together with, for every
    independent Y with |Y| <= d, a part T_j such that T_j u Y is independent.
    """
    def __init__(
        self,
        center: QPoint,
        transversal: Face,
        tverberg: TverbergCertificate,
        pigeonhole: List[Tuple[Face, int]],
        segmentChecks: List[SegmentCheck]
    ) -> None:
        self.center: QPoint = center
        self.transversal: Face = transversal
        self.tverberg: TverbergCertificate = tverberg
        self.pigeonhole: List[Tuple[Face, int]] = pigeonhole
        self.segmentChecks: List[SegmentCheck] = segmentChecks

    def __repr__(self) -> str:
        return (
            f"StarCenterReport(center={self.center}, entries={len(self.pigeonhole)}, "
            f"segmentChecks={len(self.segmentChecks)})"
        )

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "center": self.center.toJsonableList(),
            "transversal": list(self.transversal),
            "tverberg": self.tverberg.toJsonableDict(),
            "pigeonhole": [[list(y), j] for y, j in self.pigeonhole],
            "segmentChecks": [check.toJsonableDict() for check in self.segmentChecks]
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'StarCenterReport':
        return StarCenterReport(
            QPoint(jsonableDict["center"]),
            tuple(jsonableDict["transversal"]),
            TverbergCertificate.fromJsonableDict(jsonableDict["tverberg"]),
            [(tuple(y), j) for y, j in jsonableDict["pigeonhole"]],
            [SegmentCheck.fromJsonableDict(c) for c in jsonableDict.get("segmentChecks", [])]
        )

class PlanarKernelReport:
    def __init__(self, center: QPoint, samples: List[Tuple[QPoint, bool]]) -> None:
        self.center: QPoint = center
        self.samples: List[Tuple[QPoint, bool]] = samples

    @property
    def failures(self) -> List[QPoint]:
        """Samples seen from the center only through the kernel region, not the join."""
        return [point for point, passed in self.samples if not passed]

    @property
    def allPassed(self) -> bool:
        return not self.failures

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "center": self.center.toJsonableList(),
            "samples": [[p.toJsonableList(), passed] for p, passed in self.samples],
            "failures": len(self.failures)
        }

class CriticalRadiusEstimate:
    """
    Numeric, tolerance-flagged: smallest t at which the t-neighborhoods of the
    subfamily share a point.
    """
    def __init__(self, subfamily: Face, radius: float, argmin: List[float], exact: bool = False) -> None:
        self.subfamily: Face = subfamily
        self.radius: float = radius
        self.argmin: List[float] = argmin
        # radius 0 confirmed by the exact intersection oracle
        self.exact: bool = exact

    def __repr__(self) -> str:
        return f"CriticalRadiusEstimate({list(self.subfamily)}, radius={self.radius:.12g})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "subfamily": list(self.subfamily),
            "radius": self.radius,
            "argmin": self.argmin,
            "exact": self.exact,
            "approximate": not self.exact
        }

class ClosestSet:
    def __init__(
        self,
        x0: List[float],
        perBody: List[List[float]],
        distances: List[float],
        active: List[int]
    ) -> None:
        self.x0: List[float] = x0
        self.perBody: List[List[float]] = perBody
        self.distances: List[float] = distances
        self.active: List[int] = active

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "x0": self.x0,
            "perBody": self.perBody,
            "distances": self.distances,
            "active": self.active
        }

class MorseProbeReport:
    INTERIOR: str = "interior, condition vacuous"
    HOLDS: str = "condition holds"
    FAILS: str = "condition fails"

    def __init__(self, x0: List[float], status: str, closest: Optional[ClosestSet]) -> None:
        self.x0: List[float] = x0
        self.status: str = status
        self.closest: Optional[ClosestSet] = closest

    @property
    def conditionHolds(self) -> Optional[bool]:
        if self.status == MorseProbeReport.INTERIOR:
            return None
        return self.status == MorseProbeReport.HOLDS

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "x0": self.x0,
            "status": self.status,
            "closest": self.closest.toJsonableDict() if self.closest else None,
            "approximate": True
        }

class SearchConfig:
    """
    Resolved configuration of one run; every absent key takes its default from
    SearchConfigDefaults.
    """
    def __init__(
        self,
        dimension: int = SearchConfigDefaults.dimension,
        classSizes: Optional[List[int]] = None,
        matroid: str = SearchConfigDefaults.matroid,
        bound: int = SearchConfigDefaults.bound,
        seed: int = SearchConfigDefaults.seed,
        count: int = SearchConfigDefaults.count,
        dimensionCap: Optional[int] = SearchConfigDefaults.dimensionCap,
        mode: Mode = SearchConfigDefaults.mode,
        outputFilePath: str = SearchConfigDefaults.outputFilePath,
        findingsFilePath: str = SearchConfigDefaults.findingsFilePath,
        lpBudget: Optional[int] = SearchConfigDefaults.lpBudget,
        faceBudget: Optional[int] = SearchConfigDefaults.faceBudget,
        tolerance: float = SearchConfigDefaults.tolerance,
        workers: int = SearchConfigDefaults.workers,
        starSegmentChecks: int = SearchConfigDefaults.starSegmentChecks,
        rayRetryBudget: int = SearchConfigDefaults.rayRetryBudget,
        offset: int = SearchConfigDefaults.offset,
        instanceFilePath: Optional[str] = SearchConfigDefaults.instanceFilePath,
        certificateFilePath: Optional[str] = SearchConfigDefaults.certificateFilePath,
        complexDumpFilePath: Optional[str] = SearchConfigDefaults.complexDumpFilePath,
        index: int = SearchConfigDefaults.index
    ) -> None:
        self.dimension: int = dimension
        self.classSizes: List[int] = (
            list(classSizes) if classSizes is not None else list(SearchConfigDefaults.classSizes)
        )
        self.matroid: str = matroid
        self.bound: int = bound
        self.seed: int = seed
        self.count: int = count
        self.dimensionCap: Optional[int] = dimensionCap
        self.mode: Mode = mode
        self.outputFilePath: str = outputFilePath
        self.findingsFilePath: str = findingsFilePath
        self.lpBudget: Optional[int] = lpBudget
        self.faceBudget: Optional[int] = faceBudget
        self.tolerance: float = tolerance
        self.workers: int = workers
        self.starSegmentChecks: int = starSegmentChecks
        self.rayRetryBudget: int = rayRetryBudget
        self.offset: int = offset
        self.instanceFilePath: Optional[str] = instanceFilePath
        self.certificateFilePath: Optional[str] = certificateFilePath
        self.complexDumpFilePath: Optional[str] = complexDumpFilePath
        self.index: int = index

    @property
    def classCount(self) -> int:
        return len(self.classSizes)

    def effectiveCap(self, dimension: Optional[int] = None) -> int:
        if self.dimensionCap is not None:
            return self.dimensionCap
        return (dimension if dimension is not None else self.dimension) + 1

    def replayFields(self) -> Dict[str, Any]:
        """The fields that determine generated instances and their analysis."""
        return {
            "dimension": self.dimension,
            "classSizes": self.classSizes,
            "matroid": self.matroid,
            "bound": self.bound,
            "seed": self.seed,
            "offset": self.offset,
            "dimensionCap": self.dimensionCap
        }

    def configHash(self) -> str:
        return digestOf(self.replayFields())

    def toJsonableDict(self) -> Dict[str, Any]:
        jsonableDict: Dict[str, Any] = dict(vars(self))
        jsonableDict["mode"] = self.mode.value
        return jsonableDict

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'SearchConfig':
        values: Dict[str, Any] = dict(jsonableDict)
        if "mode" in values:
            values["mode"] = Mode(values["mode"])
        return SearchConfig(**values)

class CertificateAttempt:
    VERIFIED: str = "verified"
    ABSENT: str = "absent"
    NOT_FOUND: str = "witness not found"
    SKIPPED: str = "skipped"

    def __init__(
        self,
        kind: CertificateKind,
        status: str,
        payload: Optional[Dict[str, Any]] = None,
        detail: str = ""
    ) -> None:
        self.kind: CertificateKind = kind
        self.status: str = status
        self.payload: Optional[Dict[str, Any]] = payload
        self.detail: str = detail

    def __repr__(self) -> str:
        return f"CertificateAttempt({self.kind.value}: {self.status})"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "status": self.status,
            "payload": self.payload,
            "detail": self.detail
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'CertificateAttempt':
        return CertificateAttempt(
            CertificateKind(jsonableDict["kind"]),
            jsonableDict["status"],
            jsonableDict.get("payload"),
            jsonableDict.get("detail", "")
        )

class AnalysisReport:
    """
    Self-contained record of one analyzed instance: the embedded instance,
    seed, index and config hash are enough to regenerate and re-check it.
    """
    def __init__(
        self,
        digest: str,
        instance: Dict[str, Any],
        seed: Optional[int],
        index: Optional[int],
        configHash: Optional[str],
        config: Optional[Dict[str, Any]] = None
    ) -> None:
        self.digest: str = digest
        self.instance: Dict[str, Any] = instance
        self.seed: Optional[int] = seed
        self.index: Optional[int] = index
        self.configHash: Optional[str] = configHash
        self.config: Optional[Dict[str, Any]] = config
        self.dimensionCap: int = 0
        self.nerveSizes: List[int] = []
        self.nerveComplete: bool = True
        self.homology: Optional[HomologyReport] = None
        self.collapsedToPoint: Optional[bool] = None
        self.collapsePairs: int = 0
        self.residualSizes: List[int] = []
        self.contractibility: str = "not analyzed"
        self.pi1Generators: Optional[int] = None
        self.pi1Relators: Optional[int] = None
        self.guarantees: List[GuaranteeClaim] = []
        self.certificates: List[CertificateAttempt] = []
        self.audits: List[str] = []
        self.flags: List[FindingFlag] = []
        self.timings: Dict[str, float] = {}
        self.lpCalls: int = 0
        self.incomplete: bool = False
        self.incompleteReason: str = ""

    def __repr__(self) -> str:
        betti: Optional[List[int]] = self.homology.betti if self.homology else None
        return f"AnalysisReport(digest={self.digest[:12]}, nerve={self.nerveSizes}, betti={betti})"

    def certificate(self, kind: CertificateKind) -> Optional[CertificateAttempt]:
        return next((c for c in self.certificates if c.kind == kind), None)

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "digest": self.digest,
            "seed": self.seed,
            "index": self.index,
            "configHash": self.configHash,
            "config": self.config,
            "instance": self.instance,
            "dimensionCap": self.dimensionCap,
            "nerveSizes": self.nerveSizes,
            "nerveComplete": self.nerveComplete,
            "homology": self.homology.toJsonableDict() if self.homology else None,
            "collapse": {
                "collapsedToPoint": self.collapsedToPoint,
                "pairs": self.collapsePairs,
                "residualSizes": self.residualSizes
            },
            "contractibility": self.contractibility,
            "pi1": {"generators": self.pi1Generators, "relators": self.pi1Relators},
            "guarantees": [claim.toJsonableDict() for claim in self.guarantees],
            "certificates": [attempt.toJsonableDict() for attempt in self.certificates],
            "audits": self.audits,
            "flags": [flag.value for flag in self.flags],
            "timings": self.timings,
            "lpCalls": self.lpCalls,
            "incomplete": self.incomplete,
            "incompleteReason": self.incompleteReason
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'AnalysisReport':
        report: AnalysisReport = AnalysisReport(
            jsonableDict["digest"],
            jsonableDict["instance"],
            jsonableDict.get("seed"),
            jsonableDict.get("index"),
            jsonableDict.get("configHash"),
            jsonableDict.get("config")
        )
        report.dimensionCap = jsonableDict.get("dimensionCap", 0)
        report.nerveSizes = jsonableDict.get("nerveSizes", [])
        report.nerveComplete = jsonableDict.get("nerveComplete", True)
        homologyJson: Optional[Dict[str, Any]] = jsonableDict.get("homology")
        report.homology = HomologyReport.fromJsonableDict(homologyJson) if homologyJson else None
        collapse: Dict[str, Any] = jsonableDict.get("collapse", {})
        report.collapsedToPoint = collapse.get("collapsedToPoint")
        report.collapsePairs = collapse.get("pairs", 0)
        report.residualSizes = collapse.get("residualSizes", [])
        report.contractibility = jsonableDict.get("contractibility", "")
        pi1: Dict[str, Any] = jsonableDict.get("pi1", {})
        report.pi1Generators = pi1.get("generators")
        report.pi1Relators = pi1.get("relators")
        report.guarantees = [
            GuaranteeClaim(c["name"], c["vanishingThrough"], c["reason"])
            for c in jsonableDict.get("guarantees", [])
        ]
        report.certificates = [
            CertificateAttempt.fromJsonableDict(c) for c in jsonableDict.get("certificates", [])
        ]
        report.audits = jsonableDict.get("audits", [])
        report.flags = [FindingFlag(flag) for flag in jsonableDict.get("flags", [])]
        report.timings = jsonableDict.get("timings", {})
        report.lpCalls = jsonableDict.get("lpCalls", 0)
        report.incomplete = jsonableDict.get("incomplete", False)
        report.incompleteReason = jsonableDict.get("incompleteReason", "")
        return report
