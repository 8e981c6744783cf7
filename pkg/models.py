import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from errors import InputError
from globalUtils import RationalLike, formatRational, parseRational
from resources import LPStatus, MatroidKind, Relation

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]
Word = List[Tuple[int, int]]

class QPoint:
    """
    A point of Q^d with exact rational coordinates.
    """
    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[RationalLike]) -> None:
        self.coords: Tuple[Fraction, ...] = tuple(parseRational(c) for c in coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: 'QPoint') -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return "QPoint(" + ", ".join(str(c) for c in self.coords) + ")"

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def toFloats(self) -> List[float]:
        return [float(c) for c in self.coords]

    def toJsonableList(self) -> List[str]:
        return [formatRational(c) for c in self.coords]

    @staticmethod
    def fromJsonableList(values: Sequence[RationalLike]) -> 'QPoint':
        return QPoint(values)

    @staticmethod
    def origin(dimension: int) -> 'QPoint':
        return QPoint([0] * dimension)

class Hyperplane:
    """
    The affine hyperplane {x : <normal, x> = offset}.
    """
    def __init__(self, normal: Sequence[RationalLike], offset: RationalLike) -> None:
        self.normal: Tuple[Fraction, ...] = tuple(parseRational(c) for c in normal)
        self.offset: Fraction = parseRational(offset)
        if all(c == 0 for c in self.normal):
            raise InputError("Hyperplane normal must not be the zero vector")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.normal == other.normal and self.offset == other.offset

    def __repr__(self) -> str:
        return f"Hyperplane(normal={list(map(str, self.normal))}, offset={self.offset})"

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Signed value <normal, point> - offset."""
        return sum((a * b for a, b in zip(self.normal, point)), Fraction(0)) - self.offset

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "normal": [formatRational(c) for c in self.normal],
            "offset": formatRational(self.offset)
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'Hyperplane':
        return Hyperplane(jsonableDict["normal"], jsonableDict["offset"])

class LinearConstraint:
    """
    sum_v coefficients[v] * v  (relation)  rhs, over named variables.
    """
    def __init__(
        self,
        coefficients: Dict[str, RationalLike],
        relation: Relation,
        rhs: RationalLike
    ) -> None:
        self.coefficients: Dict[str, Fraction] = {
            name: parseRational(value)
            for name, value in coefficients.items()
            if parseRational(value) != 0
        }
        self.relation: Relation = relation
        self.rhs: Fraction = parseRational(rhs)

    def __repr__(self) -> str:
        terms: str = " + ".join(f"{c}*{v}" for v, c in self.coefficients.items()) or "0"
        return f"{terms} {self.relation.value} {self.rhs}"

    def evaluate(self, assignment: Dict[str, Fraction]) -> Fraction:
        return sum(
            (c * assignment.get(name, Fraction(0)) for name, c in self.coefficients.items()),
            Fraction(0)
        )

    def isSatisfiedBy(self, assignment: Dict[str, Fraction]) -> bool:
        value: Fraction = self.evaluate(assignment)
        if self.relation == Relation.LESS_EQUAL:
            return value <= self.rhs
        if self.relation == Relation.GREATER_EQUAL:
            return value >= self.rhs
        return value == self.rhs

    def canonical(self) -> Tuple[Dict[str, Fraction], Fraction, bool]:
        """
        The constraint as (a, b, isEquality) with the relation turned into
        ">=" or "==" (a "<=" row is negated).
        """
        if self.relation == Relation.LESS_EQUAL:
            return {v: -c for v, c in self.coefficients.items()}, -self.rhs, False
        return dict(self.coefficients), self.rhs, self.relation == Relation.EQUAL

class LPOutcome:
    def __init__(
        self,
        status: LPStatus,
        witness: Optional[Dict[str, Fraction]] = None,
        farkas: Optional[List[Fraction]] = None,
        value: Optional[Fraction] = None
    ) -> None:
        self.status: LPStatus = status
        self.witness: Optional[Dict[str, Fraction]] = witness
        # Farkas multipliers are aligned with the constraint list, in canonical (>=, ==) form
        self.farkas: Optional[List[Fraction]] = farkas
        # Objective value, only set by lpOptimize
        self.value: Optional[Fraction] = value

    @property
    def feasible(self) -> bool:
        return self.status == LPStatus.FEASIBLE

    def __repr__(self) -> str:
        if self.feasible:
            return f"LPOutcome(feasible, witness={self.witness})"
        return f"LPOutcome(infeasible, farkas={self.farkas})"

class GroundSet:
    """
    Labeled points of Q^d. Labels, not coordinates, are identities.
    """
    def __init__(self, points: Dict[int, QPoint], dimension: int) -> None:
        if dimension < 1:
            raise InputError(f"Dimension must be at least 1, got {dimension}")
        for label, point in points.items():
            if point.dimension != dimension:
                raise InputError(
                    f"Point {label} has dimension {point.dimension}, expected {dimension}"
                )
        self.points: Dict[int, QPoint] = dict(sorted(points.items()))
        self.dimension: int = dimension

    @property
    def labels(self) -> List[int]:
        return list(self.points.keys())

    def __len__(self) -> int:
        return len(self.points)

    def point(self, label: int) -> QPoint:
        if label not in self.points:
            raise InputError(f"Unknown label {label}")
        return self.points[label]

    def pointsOf(self, labels: Sequence[int]) -> List[QPoint]:
        return [self.point(label) for label in labels]

class MatroidSpec:
    """
    Kind-tagged matroid description; explicit bases are checked for the
    basis exchange property when the matroid is validated.
    """
    def __init__(
        self,
        kind: MatroidKind,
        classes: Optional[List[List[int]]] = None,
        rank: Optional[int] = None,
        bases: Optional[List[Sequence[int]]] = None
    ) -> None:
        self.kind: MatroidKind = kind
        self.classes: List[List[int]] = [sorted(c) for c in classes] if classes else []
        self.rank: Optional[int] = rank
        self.bases: List[Face] = sorted(tuple(sorted(b)) for b in bases) if bases else []

    def validate(self, labels: Sequence[int]) -> None:
        labelSet: Set[int] = set(labels)
        if self.kind == MatroidKind.PARTITION:
            self.validatePartition(labelSet)
        elif self.kind == MatroidKind.UNIFORM:
            if self.rank is None or not 1 <= self.rank <= len(labelSet):
                raise InputError(
                    f"Uniform rank must satisfy 1 <= r <= {len(labelSet)}, got {self.rank}"
                )
        else:
            self.validateBases(labelSet)

    def validatePartition(self, labelSet: Set[int]) -> None:
        if not self.classes:
            raise InputError("A partition matroid needs at least one class")
        seen: Set[int] = set()
        for index, colorClass in enumerate(self.classes):
            if not colorClass:
                raise InputError(f"Class {index} is empty")
            for label in colorClass:
                if label in seen:
                    raise InputError(f"Label {label} appears in more than one class")
                seen.add(label)
        if seen != labelSet:
            raise InputError("Classes must partition the labels of the ground set")

    def validateBases(self, labelSet: Set[int]) -> None:
        if not self.bases:
            raise InputError("An explicit-bases matroid needs at least one basis")
        sizes: Set[int] = {len(b) for b in self.bases}
        if len(sizes) != 1 or 0 in sizes:
            raise InputError("All bases must have the same nonzero cardinality")
        if len(set(self.bases)) != len(self.bases):
            raise InputError("Duplicate bases listed")
        covered: Set[int] = set()
        for basis in self.bases:
            for label in basis:
                if label not in labelSet:
                    raise InputError(f"Basis {basis} uses unknown label {label}")
            covered.update(basis)
        if covered != labelSet:
            raise InputError("Matroid has loops: some labels are in no basis")

        basisSet: Set[FrozenSet[int]] = {frozenset(b) for b in self.bases}
        for first in basisSet:
            for second in basisSet:
                for removed in first - second:
                    if not any(
                        (first - {removed}) | {added} in basisSet
                        for added in second - first
                    ):
                        raise InputError(
                            f"Bases fail the exchange property: {sorted(first)}, "
                            f"{sorted(second)} at {removed}"
                        )

    def toJsonableDict(self) -> Dict[str, Any]:
        if self.kind == MatroidKind.PARTITION:
            return {"kind": self.kind.value, "classes": self.classes}
        if self.kind == MatroidKind.UNIFORM:
            return {"kind": self.kind.value, "rank": self.rank}
        return {"kind": self.kind.value, "bases": [list(b) for b in self.bases]}

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'MatroidSpec':
        try:
            kind: MatroidKind = MatroidKind(jsonableDict.get("kind", "partition"))
        except ValueError as e:
            raise InputError(f"Unknown matroid kind {jsonableDict.get('kind')!r}") from e
        return MatroidSpec(
            kind,
            classes=jsonableDict.get("classes"),
            rank=jsonableDict.get("rank"),
            bases=jsonableDict.get("bases")
        )

class Instance:
    """
    Ground set in R^d together with a matroid on its labels. Immutable after load.
    """
    def __init__(self, ground: GroundSet, matroid: MatroidSpec) -> None:
        matroid.validate(ground.labels)
        self.ground: GroundSet = ground
        self.matroid: MatroidSpec = matroid
        self.labelToClass: Dict[int, int] = {}
        if matroid.kind == MatroidKind.PARTITION:
            for index, colorClass in enumerate(matroid.classes):
                for label in colorClass:
                    self.labelToClass[label] = index

    @property
    def dimension(self) -> int:
        return self.ground.dimension

    @property
    def labels(self) -> List[int]:
        return self.ground.labels

    @property
    def isPartition(self) -> bool:
        return self.matroid.kind == MatroidKind.PARTITION

    @property
    def classCount(self) -> int:
        """m, the number of color classes (partition kind only)."""
        return len(self.matroid.classes)

    def point(self, label: int) -> QPoint:
        return self.ground.point(label)

    def pointsOf(self, labels: Sequence[int]) -> List[QPoint]:
        return self.ground.pointsOf(labels)

    def classLabels(self, index: int) -> List[int]:
        return self.matroid.classes[index]

    def classPoints(self, index: int) -> List[QPoint]:
        return self.pointsOf(self.matroid.classes[index])

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "points": {
                str(label): point.toJsonableList()
                for label, point in self.ground.points.items()
            },
            "matroid": self.matroid.toJsonableDict()
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'Instance':
        try:
            dimension: int = int(jsonableDict["dimension"])
            rawPoints: Dict[str, List[str]] = jsonableDict["points"]
            matroidJson: Dict[str, Any] = jsonableDict["matroid"]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed instance: {e}") from e
        points: Dict[int, QPoint] = {}
        for label, coords in rawPoints.items():
            try:
                points[int(label)] = QPoint.fromJsonableList(coords)
            except ValueError as e:
                raise InputError(f"Malformed label {label!r}") from e
        return Instance(GroundSet(points, dimension), MatroidSpec.fromJsonableDict(matroidJson))

class MembershipWitness:
    def __init__(self, labels: Sequence[int], barycentric: Sequence[Fraction]) -> None:
        self.labels: Tuple[int, ...] = tuple(labels)
        self.barycentric: Tuple[Fraction, ...] = tuple(barycentric)

    def __repr__(self) -> str:
        weights: str = ", ".join(str(w) for w in self.barycentric)
        return f"MembershipWitness(labels={list(self.labels)}, weights=[{weights}])"

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "labels": list(self.labels),
            "barycentric": [formatRational(w) for w in self.barycentric]
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'MembershipWitness':
        return MembershipWitness(
            jsonableDict["labels"],
            [parseRational(w) for w in jsonableDict["barycentric"]]
        )

class SimplicialComplex:
    """
    Faces stored per dimension as sorted vertex tuples, downward closed up to
    dimensionCap. `complete` is True when no face above the cap can exist.
    """
    def __init__(
        self,
        vertexCount: int,
        faces: Dict[int, List[Face]],
        dimensionCap: int,
        complete: bool = True
    ) -> None:
        self.vertexCount: int = vertexCount
        self.faces: Dict[int, List[Face]] = {
            dim: sorted(tuple(sorted(f)) for f in faceList)
            for dim, faceList in faces.items()
            if faceList
        }
        self.dimensionCap: int = dimensionCap
        self.complete: bool = complete

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.faces == other.faces and self.vertexCount == other.vertexCount

    def __repr__(self) -> str:
        return f"SimplicialComplex(fVector={self.fVector()}, cap={self.dimensionCap})"

    @staticmethod
    def fromFaces(
        faces: Sequence[Sequence[int]],
        dimensionCap: Optional[int] = None,
        closeDownward: bool = True
    ) -> 'SimplicialComplex':
        """
        Build a complex from a list of faces; with closeDownward every subface is added.
        """
        faceSet: Set[Face] = set()
        for face in faces:
            ordered: Face = tuple(sorted(face))
            if closeDownward:
                for size in range(1, len(ordered) + 1):
                    faceSet.update(combinations(ordered, size))
            else:
                faceSet.add(ordered)
        top: int = max((len(f) - 1 for f in faceSet), default=0)
        cap: int = top if dimensionCap is None else dimensionCap
        byDimension: Dict[int, List[Face]] = {}
        for face in faceSet:
            if len(face) - 1 <= cap:
                byDimension.setdefault(len(face) - 1, []).append(face)
        vertexCount: int = max((max(f) for f in faceSet), default=-1) + 1
        return SimplicialComplex(vertexCount, byDimension, cap, complete=top <= cap)

    def facesOfDimension(self, dimension: int) -> List[Face]:
        return self.faces.get(dimension, [])

    def faceCount(self, dimension: int) -> int:
        return len(self.faces.get(dimension, []))

    def fVector(self) -> List[int]:
        top: int = max(self.faces.keys(), default=-1)
        return [self.faceCount(dim) for dim in range(top + 1)]

    def topDimension(self) -> int:
        return max(self.faces.keys(), default=-1)

    def allFaces(self) -> List[Face]:
        return [face for dim in sorted(self.faces) for face in self.faces[dim]]

    def isEmpty(self) -> bool:
        return not self.faces

    def toDumpLines(self) -> List[str]:
        """One face per line, dimension-major then lexicographic."""
        return [" ".join(str(v) for v in face) for face in self.allFaces()]

    @staticmethod
    def fromDumpLines(lines: Sequence[str], dimensionCap: Optional[int] = None) -> 'SimplicialComplex':
        faces: List[Face] = [
            tuple(int(token) for token in line.split()) for line in lines if line.strip()
        ]
        return SimplicialComplex.fromFaces(faces, dimensionCap, closeDownward=False)

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "vertexCount": self.vertexCount,
            "dimensionCap": self.dimensionCap,
            "complete": self.complete,
            "faces": {str(dim): [list(f) for f in faceList] for dim, faceList in self.faces.items()}
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'SimplicialComplex':
        return SimplicialComplex(
            jsonableDict["vertexCount"],
            {int(dim): [tuple(f) for f in faceList] for dim, faceList in jsonableDict["faces"].items()},
            jsonableDict["dimensionCap"],
            jsonableDict.get("complete", True)
        )

class HomologyReport:
    def __init__(self, betti: List[int], torsion: List[List[int]], reduced: bool) -> None:
        self.betti: List[int] = betti
        self.torsion: List[List[int]] = torsion
        self.reduced: bool = reduced

    def __repr__(self) -> str:
        return f"HomologyReport(betti={self.betti}, torsion={self.torsion}, reduced={self.reduced})"

    def isTrivial(self) -> bool:
        """
        All (reduced) Betti numbers and torsion vanish. Only meaningful for
        reduced reports.
        """
        return all(b == 0 for b in self.betti) and all(not t for t in self.torsion)

    def toJsonableDict(self) -> Dict[str, Any]:
        return {"betti": self.betti, "torsion": self.torsion, "reduced": self.reduced}

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'HomologyReport':
        return HomologyReport(jsonableDict["betti"], jsonableDict["torsion"], jsonableDict["reduced"])

class CollapseCertificate:
    def __init__(self, pairs: List[Tuple[Face, Face]], residual: SimplicialComplex) -> None:
        self.pairs: List[Tuple[Face, Face]] = pairs
        self.residual: SimplicialComplex = residual

    @property
    def collapsedToPoint(self) -> bool:
        return self.residual.fVector() == [1]

    def __repr__(self) -> str:
        return (
            f"CollapseCertificate(pairs={len(self.pairs)}, "
            f"residual={self.residual.fVector()})"
        )

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "pairs": [[list(free), list(coface)] for free, coface in self.pairs],
            "residual": self.residual.toJsonableDict(),
            "collapsedToPoint": self.collapsedToPoint
        }

    @staticmethod
    def fromJsonableDict(jsonableDict: Dict[str, Any]) -> 'CollapseCertificate':
        return CollapseCertificate(
            [(tuple(free), tuple(coface)) for free, coface in jsonableDict["pairs"]],
            SimplicialComplex.fromJsonableDict(jsonableDict["residual"])
        )

class ComponentPresentation:
    """
    Edge-path group presentation of one connected component. Generators are
    the surviving non-tree edges, relators are words of (generator, +-1).
    """
    def __init__(self, basepoint: int, generators: List[Tuple[int, int]], relators: List[Word]) -> None:
        self.basepoint: int = basepoint
        self.generators: List[Tuple[int, int]] = generators
        self.relators: List[Word] = relators

    def isEmpty(self) -> bool:
        return not self.generators

    def toJsonableDict(self) -> Dict[str, Any]:
        return {
            "basepoint": self.basepoint,
            "generators": [list(g) for g in self.generators],
            "relators": [[[g, e] for g, e in word] for word in self.relators]
        }

class Pi1Presentation:
    def __init__(self, components: List[ComponentPresentation]) -> None:
        self.components: List[ComponentPresentation] = components

    def isEmpty(self) -> bool:
        """An empty presentation certifies a trivial fundamental group."""
        return all(c.isEmpty() for c in self.components)

    def generatorCount(self) -> int:
        return sum(len(c.generators) for c in self.components)

    def relatorCount(self) -> int:
        return sum(len(c.relators) for c in self.components)

    def toJsonableDict(self) -> Dict[str, Any]:
        return {"components": [c.toJsonableDict() for c in self.components]}
