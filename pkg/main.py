import logging
import os
from typing import Any, Dict, Optional

from configUtils import loadSearchConfig
from errors import BudgetExceededError, InputError, InternalConsistencyError
from generators import generateInstance
from readWrite import writeTextFile
from reportModels import AnalysisReport, SearchConfig
from resources import Mode
from svgRender import defaultOverlays, renderSvg
from utils import (
    analyzeConfigured,
    certifyInstance,
    filtrationReport,
    instanceFor,
    searchCounterexamples,
    verifyCertificateFile,
    verifyFindings,
    writeReport
)

logger = logging.getLogger(__name__)

# Main Function
# Runs one mode of the toolkit with the config file plus terminal overrides
def main(configFilePath: str, overrides: Optional[Dict[str, Any]] = None) -> Any:
    config: SearchConfig = loadSearchConfig(configFilePath, overrides)
    logger.info("Running %s with %s", config.mode.value, configFilePath)

    if config.mode == Mode.GENERATE:
        return generateInstances(config)
    if config.mode == Mode.ANALYZE:
        return analyzeInstance(config)
    if config.mode == Mode.SEARCH:
        return runSearch(config)
    if config.mode == Mode.CERTIFY:
        return certifyConfigured(config)
    if config.mode == Mode.VERIFY:
        return verifyConfigured(config)
    if config.mode == Mode.RENDER:
        return renderConfigured(config)
    if config.mode == Mode.FILTRATION:
        return filtrationConfigured(config)
    raise InputError(f"Unknown mode {config.mode}")

def numberedPath(filePath: str, index: int) -> str:
    stem, extension = os.path.splitext(filePath)
    return f"{stem}_{index}{extension}"

def generateInstances(config: SearchConfig) -> Dict[str, Any]:
    """
    One instance file per index; a single instance goes to the output path
    itself, several get the index appended.
    """
    written: Dict[str, Any] = {}
    for index in range(config.index, config.index + config.count):
        filePath: str = config.outputFilePath if config.count == 1 else numberedPath(config.outputFilePath, index)
        instanceJson: Dict[str, Any] = generateInstance(config, index).toJsonableDict()
        writeReport(filePath, instanceJson)
        written[filePath] = instanceJson
    return written

def analyzeInstance(config: SearchConfig) -> Dict[str, Any]:
    report: AnalysisReport = analyzeConfigured(config)
    reportJson: Dict[str, Any] = report.toJsonableDict()
    writeReport(config.outputFilePath, reportJson)
    if report.incomplete:
        raise BudgetExceededError(f"Partial report written to {config.outputFilePath}: {report.incompleteReason}")
    return reportJson

def runSearch(config: SearchConfig) -> Dict[str, Any]:
    summary: Dict[str, Any] = searchCounterexamples(config)
    writeReport(config.outputFilePath, summary)
    if summary["incomplete"]:
        raise BudgetExceededError(f"{summary['incomplete']} instance(s) hit a budget, see {config.outputFilePath}")
    return summary

def certifyConfigured(config: SearchConfig) -> Dict[str, Any]:
    result: Dict[str, Any] = certifyInstance(instanceFor(config), config)
    writeReport(config.certificateFilePath or config.outputFilePath, result)
    return result

def verifyConfigured(config: SearchConfig) -> Dict[str, Any]:
    """
    A findings file replays on its own; any other certificate file is checked
    against the configured instance. Failures are internal inconsistencies.
    """
    target: Optional[str] = config.certificateFilePath
    if target is None or target.endswith(".jsonl"):
        summary: Dict[str, Any] = verifyFindings(target or config.findingsFilePath)
        if summary["failures"]:
            raise InternalConsistencyError(f"{len(summary['failures'])} findings entries fail to replay")
        logger.info("All %d findings entries replay", summary["entries"])
        return summary

    result: Dict[str, Any] = verifyCertificateFile(instanceFor(config), target)
    failed = [entry["kind"] for entry in result["results"] if not entry["verified"]]
    if failed:
        raise InternalConsistencyError(f"Certificates fail verification: {failed}")
    logger.info("%d certificate(s) verified", len(result["results"]))
    return result

def renderConfigured(config: SearchConfig) -> str:
    instance = instanceFor(config)
    svg: str = renderSvg(instance, defaultOverlays(instance, config.starSegmentChecks, config.seed))
    writeTextFile(config.outputFilePath, svg)
    return svg

def filtrationConfigured(config: SearchConfig) -> Dict[str, Any]:
    result: Dict[str, Any] = filtrationReport(instanceFor(config), config)
    writeReport(config.outputFilePath, result)
    return result
