import logging
from math import gcd
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from errors import InputError
from models import (
    CollapseCertificate,
    ComponentPresentation,
    Face,
    HomologyReport,
    Pi1Presentation,
    SimplicialComplex,
    Word
)

logger = logging.getLogger(__name__)

SparseMatrix = Dict[int, Dict[int, int]]

def boundaryMatrix(simplicialComplex: SimplicialComplex, dimension: int) -> SparseMatrix:
    """
    Rows index (dimension-1)-faces, columns index dimension-faces, entries (-1)^i.
    """
    lower: Dict[Face, int] = {
        face: i for i, face in enumerate(simplicialComplex.facesOfDimension(dimension - 1))
    }
    matrix: SparseMatrix = {}
    for column, face in enumerate(simplicialComplex.facesOfDimension(dimension)):
        for i in range(len(face)):
            row: int = lower[face[:i] + face[i + 1:]]
            matrix.setdefault(row, {})[column] = -1 if i % 2 else 1
    return matrix

class SmithReducer:
    """
    Sparse integer diagonalization by unimodular row and column operations,
    pivoting on unit entries when present and on smallest entries otherwise.
    """
    def __init__(self, matrix: SparseMatrix) -> None:
        self.rows: SparseMatrix = {r: dict(cols) for r, cols in matrix.items() if cols}
        self.columns: Dict[int, Set[int]] = {}
        for r, cols in self.rows.items():
            for c in cols:
                self.columns.setdefault(c, set()).add(r)

    def setEntry(self, r: int, c: int, value: int) -> None:
        if value == 0:
            self.rows[r].pop(c, None)
            self.columns.get(c, set()).discard(r)
        else:
            self.rows[r][c] = value
            self.columns.setdefault(c, set()).add(r)

    def addRow(self, target: int, source: int, factor: int) -> None:
        for c, value in list(self.rows[source].items()):
            self.setEntry(target, c, self.rows[target].get(c, 0) + factor * value)
        if not self.rows[target]:
            del self.rows[target]

    def addColumn(self, target: int, source: int, factor: int) -> None:
        for r in list(self.columns.get(source, ())):
            self.setEntry(r, target, self.rows[r].get(target, 0) + factor * self.rows[r][source])
            if not self.rows[r]:
                del self.rows[r]

    def choosePivot(self) -> Tuple[int, int]:
        for r, cols in self.rows.items():
            for c, value in cols.items():
                if value in (1, -1):
                    return r, c
        return min(
            ((r, c) for r, cols in self.rows.items() for c in cols),
            key=lambda rc: (abs(self.rows[rc[0]][rc[1]]), rc)
        )

    def diagonal(self) -> List[int]:
        entries: List[int] = []
        while self.rows:
            r, c = self.choosePivot()
            while True:
                pivot: int = self.rows[r][c]
                changed: bool = False
                for other in sorted(self.columns[c] - {r}):
                    self.addRow(other, r, -(self.rows[other][c] // pivot))
                    if other in self.rows and c in self.rows[other]:
                        changed = True
                for otherColumn in sorted(set(self.rows[r]) - {c}):
                    self.addColumn(otherColumn, c, -(self.rows[r][otherColumn] // pivot))
                    if otherColumn in self.rows[r]:
                        changed = True
                if not changed:
                    break
                # a nonzero remainder is smaller than the pivot, move there
                candidates: List[Tuple[int, int, int]] = (
                    [(abs(v), r, cc) for cc, v in self.rows[r].items()]
                    + [(abs(self.rows[rr][c]), rr, c) for rr in self.columns[c]]
                )
                _, r, c = min(candidates)
            entries.append(abs(self.rows[r][c]))
            del self.rows[r]
            self.columns.pop(c, None)
        return entries

def invariantFactors(diagonal: List[int]) -> List[int]:
    """
    Turn any nonsingular diagonal into the divisibility chain d_1 | d_2 | ...
    """
    factors: List[int] = sorted(diagonal)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            divisor: int = gcd(factors[i], factors[j])
            factors[i], factors[j] = divisor, factors[i] * factors[j] // divisor
    return factors

def boundaryInvariants(simplicialComplex: SimplicialComplex, dimension: int) -> List[int]:
    """
    Invariant factors of the boundary map out of the given dimension.
    """
    if dimension <= 0 or simplicialComplex.faceCount(dimension) == 0:
        return []
    return invariantFactors(SmithReducer(boundaryMatrix(simplicialComplex, dimension)).diagonal())

def availableDimension(simplicialComplex: SimplicialComplex) -> int:
    """
    Highest dimension whose homology the stored faces determine.
    """
    if simplicialComplex.complete:
        return max(simplicialComplex.dimensionCap, simplicialComplex.topDimension())
    return simplicialComplex.dimensionCap - 1

def homology(
    simplicialComplex: SimplicialComplex,
    reduced: bool = True,
    upToDimension: Optional[int] = None
) -> HomologyReport:
    """
    Betti numbers and torsion coefficients over Z, from the Smith normal form of
    the boundary matrices.
    """
    available: int = availableDimension(simplicialComplex)
    top: int = available if upToDimension is None else upToDimension
    if top > available or top < 0:
        raise InputError(
            f"Homology in dimension {top} needs faces above the cap {simplicialComplex.dimensionCap}"
        )
    factors: Dict[int, List[int]] = {
        k: boundaryInvariants(simplicialComplex, k) for k in range(1, top + 2)
    }
    betti: List[int] = []
    torsion: List[List[int]] = []
    for k in range(top + 1):
        rankOut: int = len(factors.get(k, []))
        if k == 0 and reduced and simplicialComplex.faceCount(0) > 0:
            rankOut = 1
        rankIn: int = len(factors[k + 1])
        betti.append(simplicialComplex.faceCount(k) - rankOut - rankIn)
        torsion.append([f for f in factors[k + 1] if f > 1])
    report: HomologyReport = HomologyReport(betti, torsion, reduced)
    logger.debug("Homology of %s: %s", simplicialComplex, report)
    return report

def eulerCharacteristicAudit(simplicialComplex: SimplicialComplex, report: HomologyReport) -> bool:
    """
    Rank-nullity check: the alternating face count equals the alternating Betti
    sum, with the top cycle rank standing in for truncated complexes.
    """
    top: int = len(report.betti) - 1
    faceSum: int = sum((-1) ** k * simplicialComplex.faceCount(k) for k in range(top + 1))
    betti: List[int] = list(report.betti)
    if report.reduced and simplicialComplex.faceCount(0) > 0:
        betti[0] += 1
    # the top chain group contributes its cycles, not its homology
    topCorrection: int = len(boundaryInvariants(simplicialComplex, top + 1))
    bettiSum: int = sum((-1) ** k * b for k, b in enumerate(betti)) + (-1) ** top * topCorrection
    return faceSum == bettiSum

def greedyCollapse(simplicialComplex: SimplicialComplex) -> CollapseCertificate:
    """
    Remove free-face pairs in a fixed scan order (highest dimension first,
    lexicographic) until none is left. Only a single-vertex residual certifies
    anything.
    """
    present: Set[Face] = set(simplicialComplex.allFaces())
    cofaces: Dict[Face, Set[Face]] = {face: set() for face in present}
    for face in present:
        if len(face) > 1:
            for i in range(len(face)):
                cofaces[face[:i] + face[i + 1:]].add(face)

    pairs: List[Tuple[Face, Face]] = []
    changed: bool = True
    while changed:
        changed = False
        top: int = max((len(face) for face in present), default=0) - 1
        for dimension in range(top - 1, -1, -1):
            for face in sorted(f for f in present if len(f) == dimension + 1):
                if face not in present or len(cofaces[face]) != 1:
                    continue
                coface: Face = next(iter(cofaces[face]))
                if cofaces[coface]:
                    continue
                for removed in (coface, face):
                    present.discard(removed)
                    if len(removed) > 1:
                        for i in range(len(removed)):
                            cofaces[removed[:i] + removed[i + 1:]].discard(removed)
                pairs.append((face, coface))
                changed = True

    byDimension: Dict[int, List[Face]] = {}
    for face in present:
        byDimension.setdefault(len(face) - 1, []).append(face)
    residual: SimplicialComplex = SimplicialComplex(
        simplicialComplex.vertexCount,
        byDimension,
        simplicialComplex.dimensionCap,
        simplicialComplex.complete
    )
    logger.debug("Collapsed %d pairs, residual f-vector %s", len(pairs), residual.fVector())
    return CollapseCertificate(pairs, residual)

def edgeWord(edge: Tuple[int, int], generatorOf: Dict[Tuple[int, int], int]) -> Word:
    u, v = edge
    if (u, v) in generatorOf:
        return [(generatorOf[(u, v)], 1)]
    if (v, u) in generatorOf:
        return [(generatorOf[(v, u)], -1)]
    return []

def freelyReduce(word: Word) -> Word:
    reducedWord: Word = []
    for letter in word:
        if reducedWord and reducedWord[-1][0] == letter[0] and reducedWord[-1][1] == -letter[1]:
            reducedWord.pop()
        else:
            reducedWord.append(letter)
    # relators are cyclic words
    while len(reducedWord) > 1 and reducedWord[0][0] == reducedWord[-1][0] and reducedWord[0][1] == -reducedWord[-1][1]:
        reducedWord = reducedWord[1:-1]
    return reducedWord

def substitute(word: Word, generator: int, replacement: Word) -> Word:
    result: Word = []
    for g, exponent in word:
        if g != generator:
            result.append((g, exponent))
        elif exponent > 0:
            result.extend(replacement)
        else:
            result.extend((h, -e) for h, e in reversed(replacement))
    return freelyReduce(result)

def tietzeSimplify(generators: List[int], relators: List[Word]) -> Tuple[List[int], List[Word]]:
    """
    Drop trivial relators, delete generators killed by length-one relators and
    eliminate generators expressed by length-two relators, until stable.
    """
    alive: List[int] = list(generators)
    words: List[Word] = [freelyReduce(w) for w in relators]
    changed: bool = True
    while changed:
        changed = False
        words = [w for w in words if w]
        for index, word in enumerate(words):
            replacement: Optional[Word] = None
            eliminated: int = word[0][0]
            if len(word) == 1:
                replacement = []
            elif len(word) == 2 and word[0][0] != word[1][0]:
                (_, e1), (h, e2) = word
                # g^e1 h^e2 = 1 gives g = h^(-e1 e2)
                replacement = [(h, -e1 * e2)]
            if replacement is None:
                continue
            del words[index]
            words = [substitute(w, eliminated, replacement) for w in words]
            alive.remove(eliminated)
            changed = True
            break
    return alive, [w for w in words if w]

def pi1Presentation(simplicialComplex: SimplicialComplex) -> Pi1Presentation:
    """
    Edge-path presentation per connected component: generators are non-tree
    edges of a BFS spanning tree, relators come from triangles, then Tietze
    passes. Empty means simply connected; anything else is inconclusive.
    """
    if simplicialComplex.dimensionCap < 2 and not simplicialComplex.complete:
        raise InputError("The edge-path group needs the 2-skeleton (cap >= 2)")
    graph: nx.Graph = nx.Graph()
    vertices: List[int] = sorted({face[0] for face in simplicialComplex.facesOfDimension(0)})
    graph.add_nodes_from(vertices)
    graph.add_edges_from(simplicialComplex.facesOfDimension(1))
    triangles: List[Face] = simplicialComplex.facesOfDimension(2)

    components: List[ComponentPresentation] = []
    for componentVertices in sorted(nx.connected_components(graph), key=min):
        basepoint: int = min(componentVertices)
        tree: nx.Graph = nx.Graph(nx.bfs_tree(graph, basepoint, sort_neighbors=sorted))
        nonTreeEdges: List[Tuple[int, int]] = sorted(
            (min(u, v), max(u, v))
            for u, v in graph.subgraph(componentVertices).edges()
            if not tree.has_edge(u, v)
        )
        generatorOf: Dict[Tuple[int, int], int] = {edge: i for i, edge in enumerate(nonTreeEdges)}
        relators: List[Word] = []
        for a, b, c in triangles:
            if a not in componentVertices:
                continue
            word: Word = (
                edgeWord((a, b), generatorOf)
                + edgeWord((b, c), generatorOf)
                + edgeWord((c, a), generatorOf)
            )
            relators.append(word)
        alive, simplified = tietzeSimplify(list(range(len(nonTreeEdges))), relators)
        renumber: Dict[int, int] = {g: i for i, g in enumerate(alive)}
        components.append(ComponentPresentation(
            basepoint,
            [nonTreeEdges[g] for g in alive],
            [[(renumber[g], e) for g, e in word] for word in simplified]
        ))
    presentation: Pi1Presentation = Pi1Presentation(components)
    logger.debug(
        "Edge-path group: %d generators, %d relators over %d components",
        presentation.generatorCount(), presentation.relatorCount(), len(components)
    )
    return presentation
