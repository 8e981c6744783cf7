from enum import Enum
from typing import List, Optional

class Resources:
    """
    A class to hold various constants used across the toolkit.
    """
    defaultTolerance: float = 1e-9
    slsqpMaxIterations: int = 500
    slsqpPrecision: float = 1e-15
    # Weights for random points inside a simplex are drawn from 1..weightBound
    weightBound: int = 9
    svgViewportInches: float = 6.0
    svgHashSalt: str = "geometric-join"
    classColors: List[str] = [
        "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"
    ]

class Mode(Enum):
    ANALYZE = "analyze"
    SEARCH = "search"
    CERTIFY = "certify"
    VERIFY = "verify"
    RENDER = "render"
    GENERATE = "gen"
    FILTRATION = "filtration"

    @staticmethod
    def getTerminalOptions() -> List[str]:
        """
        Returns a list of terminal options for the mode.
        """
        return [mode.value for mode in Mode]

class MatroidKind(Enum):
    PARTITION = "partition"
    UNIFORM = "uniform"
    EXPLICIT_BASES = "bases"

class Relation(Enum):
    LESS_EQUAL = "<="
    GREATER_EQUAL = ">="
    EQUAL = "=="

class LPStatus(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"

class CertificateKind(Enum):
    MEMBERSHIP = "membership"
    TVERBERG = "tverberg"
    STAR_CENTER = "star-center"
    SEPARATION = "separation"
    SEPARATED_FAMILY = "separated-family"
    RAY = "ray"
    COLLAPSE = "collapse"

    @staticmethod
    def getTerminalOptions() -> List[str]:
        return [kind.value for kind in CertificateKind]

class ExitCode(Enum):
    CLEAN = 0
    INPUT_ERROR = 1
    BUDGET_EXCEEDED = 2
    INTERNAL_INCONSISTENCY = 3

class FindingFlag(Enum):
    NONTRIVIAL_HOMOLOGY = "nontrivial-homology"
    SUSPICIOUS_PI1 = "suspicious-pi1"

class SearchConfigDefaults:
    """
    Default values for the search configuration.
    """
    dimension: int = 2
    classSizes: List[int] = [2, 2, 2]
    matroid: str = "partition"
    bound: int = 10
    seed: int = 0
    count: int = 10
    dimensionCap: Optional[int] = None
    mode: Mode = Mode.ANALYZE
    outputFilePath: str = "defaultData/report.json"
    findingsFilePath: str = "defaultData/findings.jsonl"
    instanceFilePath: Optional[str] = None
    certificateFilePath: Optional[str] = None
    complexDumpFilePath: Optional[str] = None
    index: int = 0
    lpBudget: Optional[int] = None
    faceBudget: Optional[int] = None
    tolerance: float = Resources.defaultTolerance
    workers: int = 1
    starSegmentChecks: int = 20
    rayRetryBudget: int = 24
    offset: int = 0

class SearchConfigMapping:
    requiredKeys: List[str] = [
        "name",
        "file"
    ]
