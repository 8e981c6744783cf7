import json
import logging
from typing import Any, Dict, List, Optional, Tuple

from errors import InputError
from models import GroundSet, Instance, MatroidSpec, QPoint
from readWrite import readJsonFile
from reportModels import SearchConfig
from resources import MatroidKind

logger = logging.getLogger(__name__)

MASK64: int = (1 << 64) - 1
GOLDEN_GAMMA: int = 0x9E3779B97F4A7C15

class SplitMix64:
    """
    64-bit splitmix stream; the state for (seed, index) is seed * gamma + index.
    """
    def __init__(self, seed: int, index: int = 0) -> None:
        self.state: int = (seed * GOLDEN_GAMMA + index) & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z: int = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def integer(self, bound: int) -> int:
        """Uniform-ish integer in [-bound, bound]."""
        return self.next() % (2 * bound + 1) - bound

def parseMatroid(text: str) -> Tuple[MatroidKind, Optional[int], Optional[str]]:
    """
    "partition", "uniform:r" or "bases:<file>".
    """
    kindText, _, argument = text.partition(":")
    try:
        kind: MatroidKind = MatroidKind(kindText.strip())
    except ValueError as e:
        raise InputError(f"Unknown matroid '{text}', expected partition, uniform:r or bases:<file>") from e
    if kind == MatroidKind.PARTITION:
        return kind, None, None
    if kind == MatroidKind.UNIFORM:
        try:
            return kind, int(argument), None
        except ValueError as e:
            raise InputError(f"uniform needs an integer rank, got '{argument}'") from e
    if not argument:
        raise InputError("bases needs a file path, e.g. bases:myBases.json")
    return kind, None, argument

def readBasesFile(filePath: str) -> List[List[int]]:
    content: Optional[str] = readJsonFile(filePath)
    if content is None:
        raise InputError(f"Bases file '{filePath}' not found")
    try:
        data: Any = json.loads(content)
    except json.JSONDecodeError as e:
        raise InputError(f"Bases file '{filePath}' is not valid JSON: {e}") from e
    bases: Any = data.get("bases") if isinstance(data, dict) else data
    if not isinstance(bases, list):
        raise InputError(f"Bases file '{filePath}' must hold a list of label lists")
    return [list(basis) for basis in bases]

def checkConfig(config: SearchConfig) -> None:
    if config.dimension < 1:
        raise InputError(f"dimension must be >= 1, got {config.dimension}")
    if config.classCount < 1 or any(size < 1 for size in config.classSizes):
        raise InputError(f"classSizes must be positive, got {config.classSizes}")
    if config.bound < 1:
        raise InputError(f"bound must be >= 1, got {config.bound}")

def matroidFor(config: SearchConfig) -> MatroidSpec:
    kind, rank, basesFile = parseMatroid(config.matroid)
    if kind == MatroidKind.PARTITION:
        classes: List[List[int]] = []
        start: int = 0
        for size in config.classSizes:
            classes.append(list(range(start, start + size)))
            start += size
        return MatroidSpec(kind, classes=classes)
    if kind == MatroidKind.UNIFORM:
        return MatroidSpec(kind, rank=rank)
    return MatroidSpec(kind, bases=readBasesFile(basesFile or ""))

def generateInstance(config: SearchConfig, index: int) -> Instance:
    """
    Integer points drawn from [-B, B]^d by the (seed, index) stream, labels
    assigned class by class. Duplicates are kept.
    """
    checkConfig(config)
    stream: SplitMix64 = SplitMix64(config.seed, index)
    labelCount: int = sum(config.classSizes)
    points: Dict[int, QPoint] = {}
    for label in range(labelCount):
        coords: List[int] = [stream.integer(config.bound) for _ in range(config.dimension)]
        coords[0] += config.offset
        points[label] = QPoint(coords)
    return Instance(GroundSet(points, config.dimension), matroidFor(config))

def generateCaratheodoryInstance(config: SearchConfig, index: int) -> Instance:
    """
    m classes of d random integer points plus their negated sum, so the origin
    is the centroid of every class.
    """
    checkConfig(config)
    d: int = config.dimension
    stream: SplitMix64 = SplitMix64(config.seed, index)
    points: Dict[int, QPoint] = {}
    classes: List[List[int]] = []
    label: int = 0
    for _ in range(config.classCount):
        members: List[List[int]] = [
            [stream.integer(config.bound) for _ in range(d)] for _ in range(d)
        ]
        members.append([-sum(member[k] for member in members) for k in range(d)])
        classes.append(list(range(label, label + d + 1)))
        for member in members:
            points[label] = QPoint(member)
            label += 1
    return Instance(GroundSet(points, d), MatroidSpec(MatroidKind.PARTITION, classes=classes))

def tightnessFixture(k: int) -> Instance:
    """
    k+1 two-point classes in R^{2k}: the + vertices form a k-simplex around the
    origin in the subspace {(c, c)}, the - vertices one in {(c, -c)}, so the
    two opposite simplices cross at the origin. For k = 1 this is
    X1 = {(-1,-1), (1,-1)}, X2 = {(1,1), (-1,1)}.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    simplex: List[List[int]] = [
        [1 if i == j else 0 for i in range(k)] for j in range(k)
    ] + [[-1] * k]
    plus: List[QPoint] = [QPoint(c + c) for c in simplex]
    minus: List[QPoint] = [QPoint(c + [-x for x in c]) for c in simplex]
    points: Dict[int, QPoint] = {}
    classes: List[List[int]] = []
    for i in range(k + 1):
        points[2 * i] = plus[(i + 1) % (k + 1)]
        points[2 * i + 1] = minus[i]
        classes.append([2 * i, 2 * i + 1])
    return Instance(GroundSet(points, 2 * k), MatroidSpec(MatroidKind.PARTITION, classes=classes))

def squareFixture() -> Instance:
    """X1 = {(-1,-1), (1,1)}, X2 = {(-1,1), (1,-1)}: the colorful segments bound a square."""
    points: Dict[int, QPoint] = {
        0: QPoint([-1, -1]), 1: QPoint([1, 1]), 2: QPoint([-1, 1]), 3: QPoint([1, -1])
    }
    return Instance(GroundSet(points, 2), MatroidSpec(MatroidKind.PARTITION, classes=[[0, 1], [2, 3]]))
