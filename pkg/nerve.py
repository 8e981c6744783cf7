import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set

import networkx as nx

from convexity import simplicesIntersect
from errors import BudgetExceededError, InputError
from joinCore import enumerateBases
from models import Face, Instance, QPoint, SimplicialComplex
from readWrite import readLines, writeLines

logger = logging.getLogger(__name__)

def familyIntersects(labelSets: Sequence[Face], hulls: Sequence[Sequence[QPoint]]) -> bool:
    """
    Whether the hulls share a point; a label common to all members is a shared
    point without any LP.
    """
    common: Set[int] = set(labelSets[0])
    for labels in labelSets[1:]:
        common &= set(labels)
    if common:
        return True
    return simplicesIntersect(hulls) is not None

def candidateFaces(previous: List[Face]) -> List[Face]:
    """
    Faces one dimension up whose every facet is in previous (sorted input, sorted output).
    """
    previousSet: Set[Face] = set(previous)
    byPrefix: Dict[Face, List[int]] = {}
    for face in previous:
        byPrefix.setdefault(face[:-1], []).append(face[-1])
    candidates: List[Face] = []
    for prefix, lasts in byPrefix.items():
        for a, b in combinations(sorted(lasts), 2):
            candidate: Face = prefix + (a, b)
            if all(
                candidate[:i] + candidate[i + 1:] in previousSet
                for i in range(len(candidate) - 2)
            ):
                candidates.append(candidate)
    return sorted(candidates)

def testCandidates(
    candidates: List[Face],
    bases: List[Face],
    hulls: List[List[QPoint]],
    workers: int
) -> List[bool]:
    families = [
        ([bases[v] for v in face], [hulls[v] for v in face]) for face in candidates
    ]
    if workers > 1 and len(candidates) > workers:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(
                familyIntersects,
                [labels for labels, _ in families],
                [members for _, members in families],
                chunksize=max(1, len(families) // (4 * workers))
            ))
    return [familyIntersects(labels, members) for labels, members in families]

def buildNerve(
    instance: Instance,
    dimensionCap: Optional[int] = None,
    maxFaces: Optional[int] = None,
    workers: int = 1
) -> SimplicialComplex:
    """
    Nerve of the basis simplices: vertex i per basis, a face per intersecting
    subfamily, built level by level up to dimensionCap (default d+1).
    """
    cap: int = instance.dimension + 1 if dimensionCap is None else dimensionCap
    if cap < 0:
        raise InputError(f"dimensionCap must be >= 0, got {cap}")
    bases: List[Face] = enumerateBases(instance)
    hulls: List[List[QPoint]] = [instance.pointsOf(basis) for basis in bases]
    vertexCount: int = len(bases)

    faces: Dict[int, List[Face]] = {0: [(v,) for v in range(vertexCount)]}
    totalFaces: int = vertexCount
    for dimension in range(1, cap + 1):
        candidates: List[Face] = candidateFaces(faces[dimension - 1])
        if not candidates:
            break
        present: List[bool] = testCandidates(candidates, bases, hulls, workers)
        level: List[Face] = [face for face, ok in zip(candidates, present) if ok]
        logger.debug(
            "Nerve level %d: %d of %d candidates intersect",
            dimension, len(level), len(candidates)
        )
        if not level:
            break
        faces[dimension] = level
        totalFaces += len(level)
        if maxFaces is not None and totalFaces > maxFaces:
            raise BudgetExceededError(f"Nerve face budget of {maxFaces} exceeded at dimension {dimension}")

    complete: bool = cap not in faces or not candidateFaces(faces[cap])
    logger.info(
        "Nerve on %d bases: f-vector %s (cap %d)",
        vertexCount, [len(faces[k]) for k in sorted(faces)], cap
    )
    return SimplicialComplex(vertexCount, faces, cap, complete)

def intersectionGraph(instance: Instance) -> nx.Graph:
    """
    Pairwise intersection graph of the basis simplices, computed independently
    of the nerve levels.
    """
    bases: List[Face] = enumerateBases(instance)
    hulls: List[List[QPoint]] = [instance.pointsOf(basis) for basis in bases]
    graph: nx.Graph = nx.Graph()
    graph.add_nodes_from(range(len(bases)))
    for i, j in combinations(range(len(bases)), 2):
        if set(bases[i]) & set(bases[j]) or simplicesIntersect([hulls[i], hulls[j]]) is not None:
            graph.add_edge(i, j)
    return graph

def auditDownwardClosed(simplicialComplex: SimplicialComplex) -> List[Face]:
    """
    Stored faces with a missing facet (empty when the complex is sound).
    """
    stored: Set[Face] = set(simplicialComplex.allFaces())
    return [
        face for face in simplicialComplex.allFaces()
        if len(face) > 1
        and any(face[:i] + face[i + 1:] not in stored for i in range(len(face)))
    ]

def dumpComplex(simplicialComplex: SimplicialComplex, filePath: str) -> None:
    writeLines(filePath, simplicialComplex.toDumpLines())

def loadComplex(filePath: str, dimensionCap: Optional[int] = None) -> SimplicialComplex:
    return SimplicialComplex.fromDumpLines(readLines(filePath), dimensionCap)
