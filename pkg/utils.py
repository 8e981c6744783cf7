import logging
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, Iterator, List, Optional

from tqdm import tqdm

from analysis import analyze, regimeCertificates
from certificateVerifiers import verifyCertificateJson
from certificates import dCorePoint
from errors import InputError, InternalConsistencyError
from filtration import filtrationTrace, monotonicityAudit, morseProbe, offsetMonotonicityAudit, radiusTies
from generators import generateInstance
from globalUtils import digestOf
from homology import homology
from joinCore import colorfulCaratheodoryCheck, strongColorfulCaratheodoryCheck
from models import Instance, QPoint
from nerve import buildNerve
from readWrite import appendJsonLine, readJsonFile, readJsonLines, writeJsonFile
from reportModels import AnalysisReport, CertificateAttempt, CriticalRadiusEstimate, SearchConfig
from resources import FindingFlag

logger = logging.getLogger(__name__)

# Offset-nerve checks run on at most this many distinct trace radii
OFFSET_GRID_SIZE: int = 8

def loadInstanceFile(filePath: str) -> Instance:
    content: Optional[str] = readJsonFile(filePath)
    if content is None:
        raise InputError(f"Instance file '{filePath}' not found")
    try:
        return Instance.fromJsonableDict(json.loads(content))
    except json.JSONDecodeError as e:
        raise InputError(f"Instance file '{filePath}' is not valid JSON: {e}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Instance file '{filePath}' is malformed: {e}") from e

def instanceFor(config: SearchConfig, index: Optional[int] = None) -> Instance:
    """
    The instance a single-instance mode works on: the instance file when one
    is configured, otherwise the generated instance at `index`.
    """
    if config.instanceFilePath:
        return loadInstanceFile(config.instanceFilePath)
    return generateInstance(config, config.index if index is None else index)

def analyzeConfigured(config: SearchConfig) -> AnalysisReport:
    instance: Instance = instanceFor(config)
    if config.instanceFilePath:
        return analyze(instance, config)
    return analyze(instance, config, config.seed, config.index)

def analyzeIndex(config: SearchConfig, index: int) -> Dict[str, Any]:
    """Worker entry point; returns the jsonable report so results pickle cheaply."""
    return analyze(generateInstance(config, index), config, config.seed, index).toJsonableDict()

def reportsInOrder(config: SearchConfig, indices: List[int]) -> Iterator[Dict[str, Any]]:
    if config.workers > 1:
        # Instances are already spread over processes, so nerves stay sequential
        workerConfig: SearchConfig = SearchConfig.fromJsonableDict(
            {**config.toJsonableDict(), "workers": 1}
        )
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            yield from executor.map(analyzeIndex, [workerConfig] * len(indices), indices)
    else:
        for index in indices:
            yield analyzeIndex(config, index)

def searchCounterexamples(config: SearchConfig) -> Dict[str, Any]:
    """
    Analyze `count` generated instances from `index` on and append every
    flagged report to the findings file. Reports arrive in index order, so
    the findings file is written by this process only.
    """
    indices: List[int] = list(range(config.index, config.index + config.count))
    statuses: List[Dict[str, Any]] = []
    flagCounts: Dict[str, int] = {flag.value: 0 for flag in FindingFlag}

    with tqdm(total=len(indices), desc="Analyzing instances") as pbar:
        for reportJson in reportsInOrder(config, indices):
            flags: List[str] = reportJson["flags"]
            status: str = "flagged" if flags else "incomplete" if reportJson["incomplete"] else "clean"
            if flags:
                appendJsonLine(config.findingsFilePath, reportJson)
                for flag in flags:
                    flagCounts[flag] += 1
                logger.warning("Instance %d flagged %s", reportJson["index"], flags)
            statuses.append({
                "index": reportJson["index"],
                "digest": reportJson["digest"],
                "status": status,
                "betti": reportJson["homology"]["betti"] if reportJson["homology"] else None
            })
            pbar.update(1)

    summary: Dict[str, Any] = {
        "configHash": config.configHash(),
        "config": config.toJsonableDict(),
        "requested": len(indices),
        "processed": len(statuses),
        "flagged": sum(1 for s in statuses if s["status"] == "flagged"),
        "incomplete": sum(1 for s in statuses if s["status"] == "incomplete"),
        "flagCounts": flagCounts,
        "instances": statuses
    }
    if summary["processed"] != summary["requested"]:
        raise InternalConsistencyError(
            f"Campaign processed {summary['processed']} of {summary['requested']} instances"
        )
    logger.info(
        "Campaign done: %d processed, %d flagged, %d incomplete",
        summary["processed"], summary["flagged"], summary["incomplete"]
    )
    return summary

def replayFinding(entry: Dict[str, Any]) -> List[str]:
    """
    Re-derive one findings entry from its embedded data. Returns the problems
    found; an empty list means the entry replays.
    """
    problems: List[str] = []
    config: SearchConfig = SearchConfig.fromJsonableDict(entry["config"])
    if entry.get("configHash") != config.configHash():
        problems.append("config hash does not match the embedded config")

    instance: Instance = Instance.fromJsonableDict(entry["instance"])
    if digestOf(instance.toJsonableDict()) != entry["digest"]:
        problems.append("embedded instance does not match its digest")
    if entry.get("index") is not None and not config.instanceFilePath:
        regenerated: Instance = generateInstance(config, entry["index"])
        if digestOf(regenerated.toJsonableDict()) != entry["digest"]:
            problems.append(f"seed {entry['seed']} index {entry['index']} regenerates a different instance")

    for attempt in entry.get("certificates", []):
        if attempt["status"] != CertificateAttempt.VERIFIED:
            continue
        if not verifyCertificateJson(instance, attempt):
            problems.append(f"{attempt['kind']} certificate fails re-verification")

    if entry.get("homology") is not None:
        betti: List[int] = homology(buildNerve(instance, entry["dimensionCap"])).betti
        if betti != entry["homology"]["betti"]:
            problems.append(f"recomputed Betti numbers {betti} differ from {entry['homology']['betti']}")
    return problems

def verifyFindings(findingsFilePath: str) -> Dict[str, Any]:
    try:
        entries: List[Dict[str, Any]] = list(readJsonLines(findingsFilePath))
    except FileNotFoundError as e:
        raise InputError(f"Findings file '{findingsFilePath}' not found") from e

    failures: List[Dict[str, Any]] = []
    with tqdm(total=len(entries), desc="Replaying findings") as pbar:
        for lineNumber, entry in enumerate(entries, start=1):
            try:
                problems: List[str] = replayFinding(entry)
            except KeyError as e:
                raise InputError(f"Findings entry {lineNumber} is missing {e}") from e
            if problems:
                logger.error("Findings entry %d: %s", lineNumber, "; ".join(problems))
                failures.append({"entry": lineNumber, "digest": entry.get("digest"), "problems": problems})
            pbar.update(1)
    return {"entries": len(entries), "verified": len(entries) - len(failures), "failures": failures}

def readCertificateFile(filePath: str) -> List[Dict[str, Any]]:
    """
    A certificate file holds one {"kind", "payload"} object, a list of them,
    or a certify result with a "certificates" list.
    """
    content: Optional[str] = readJsonFile(filePath)
    if content is None:
        raise InputError(f"Certificate file '{filePath}' not found")
    try:
        data: Any = json.loads(content)
    except json.JSONDecodeError as e:
        raise InputError(f"Certificate file '{filePath}' is not valid JSON: {e}") from e
    if isinstance(data, dict) and "certificates" in data:
        data = data["certificates"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise InputError(f"Certificate file '{filePath}' holds no certificates")
    return [
        certificate for certificate in data
        if certificate.get("status", CertificateAttempt.VERIFIED) == CertificateAttempt.VERIFIED
    ]

def verifyCertificateFile(instance: Instance, filePath: str) -> Dict[str, Any]:
    results: List[Dict[str, Any]] = []
    for certificate in readCertificateFile(filePath):
        verified: bool = verifyCertificateJson(instance, certificate)
        if not verified:
            logger.error("%s certificate fails verification", certificate.get("kind"))
        results.append({"kind": certificate.get("kind"), "verified": verified})
    return {"instanceDigest": digestOf(instance.toJsonableDict()), "results": results}

def certifyInstance(instance: Instance, config: SearchConfig) -> Dict[str, Any]:
    """
    Every certificate the parameter regime allows, plus the colorful
    Caratheodory checks at the origin and the d-core point.
    """
    attempts: List[CertificateAttempt] = regimeCertificates(instance, config, config.seed)
    result: Dict[str, Any] = {
        "instanceDigest": digestOf(instance.toJsonableDict()),
        "certificates": [attempt.toJsonableDict() for attempt in attempts]
    }
    if instance.isPartition and instance.classCount >= instance.dimension + 1:
        origin: QPoint = QPoint.origin(instance.dimension)
        result["caratheodory"] = [
            colorfulCaratheodoryCheck(instance, origin).toJsonableDict(),
            strongColorfulCaratheodoryCheck(instance, origin).toJsonableDict()
        ]
        if instance.dimension <= instance.classCount:
            core: Optional[QPoint] = dCorePoint(instance)
            result["dCorePoint"] = core.toJsonableList() if core is not None else None
    logger.info("Certified %s: %s", result["instanceDigest"][:12], [repr(a) for a in attempts])
    return result

def filtrationReport(instance: Instance, config: SearchConfig) -> Dict[str, Any]:
    cap: int = config.effectiveCap(instance.dimension)
    trace: List[CriticalRadiusEstimate] = filtrationTrace(instance, cap, config.workers)
    radii: List[float] = sorted({round(estimate.radius, 9) for estimate in trace if estimate.radius > 0})
    grid: List[float] = [0.0] + radii[:OFFSET_GRID_SIZE]
    return {
        "instanceDigest": digestOf(instance.toJsonableDict()),
        "approximate": True,
        "tolerance": config.tolerance,
        "trace": [estimate.toJsonableDict() for estimate in trace],
        "ties": [[list(face) for face in group] for group in radiusTies(trace, config.tolerance)],
        "monotonicityViolations": [
            [list(sub), list(sup)] for sub, sup in monotonicityAudit(trace, config.tolerance)
        ],
        "offsetGrid": grid,
        "offsetNerveMonotone": offsetMonotonicityAudit(instance, grid, config.tolerance, cap),
        "morseProbeAtOrigin": morseProbe(instance, [0.0] * instance.dimension, config.tolerance).toJsonableDict()
    }

def writeReport(filePath: str, data: Any) -> None:
    writeJsonFile(filePath, data)
    logger.info("Wrote %s", filePath)
