import pytest

from errors import BudgetExceededError, InputError
from generators import squareFixture, tightnessFixture
from homology import eulerCharacteristicAudit, greedyCollapse, homology, pi1Presentation
from models import SimplicialComplex
from nerve import auditDownwardClosed, buildNerve, dumpComplex, intersectionGraph, loadComplex

# six-vertex real projective plane
PROJECTIVE_PLANE = [
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5)
]

class TestBuildNerve:
    def testCrossingDiagonalsFixture(self) -> None:
        nerve = buildNerve(tightnessFixture(1))
        assert nerve.fVector() == [4, 5]
        assert nerve.complete
        assert homology(nerve).betti[:2] == [0, 2]

    def testSquareFixture(self) -> None:
        nerve = buildNerve(squareFixture())
        assert nerve.fVector() == [4, 4]
        assert homology(nerve).betti[:2] == [0, 1]

    def testEdgesMatchTheIntersectionGraph(self) -> None:
        instance = tightnessFixture(1)
        nerve = buildNerve(instance)
        graph = intersectionGraph(instance)
        assert sorted(tuple(sorted(edge)) for edge in graph.edges()) == nerve.facesOfDimension(1)

    def testNerveIsDownwardClosed(self) -> None:
        assert auditDownwardClosed(buildNerve(tightnessFixture(1))) == []

    def testFaceBudget(self) -> None:
        with pytest.raises(BudgetExceededError):
            buildNerve(tightnessFixture(1), maxFaces=5)

    def testVertexOnlyCap(self) -> None:
        nerve = buildNerve(squareFixture(), dimensionCap=0)
        assert nerve.fVector() == [4]
        assert not nerve.complete

    def testNegativeCapIsRejected(self) -> None:
        with pytest.raises(InputError):
            buildNerve(squareFixture(), dimensionCap=-1)

    def testDumpAndLoad(self, tmp_path) -> None:
        nerve = buildNerve(squareFixture())
        filePath = str(tmp_path / "nerve.txt")
        dumpComplex(nerve, filePath)
        assert (tmp_path / "nerve.txt").read_text(encoding="utf-8").splitlines()[:2] == ["0", "1"]
        assert loadComplex(filePath) == nerve

class TestHomology:
    def testHollowTriangle(self) -> None:
        sc = SimplicialComplex.fromFaces([(0, 1), (1, 2), (0, 2)])
        assert homology(sc, reduced=False).betti == [1, 1]
        assert homology(sc).betti == [0, 1]

    def testCycleWithAChord(self) -> None:
        sc = SimplicialComplex.fromFaces([(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        assert homology(sc, reduced=False).betti == [1, 2]
        assert pi1Presentation(sc).generatorCount() == 2

    def testFilledTriangleIsAcyclic(self) -> None:
        sc = SimplicialComplex.fromFaces([(0, 1, 2)])
        assert homology(sc).isTrivial()
        assert pi1Presentation(sc).isEmpty()

    def testTwoComponents(self) -> None:
        sc = SimplicialComplex.fromFaces([(0, 1), (2, 3)])
        assert homology(sc).betti == [1, 0]
        assert len(pi1Presentation(sc).components) == 2

    def testProjectivePlaneHasTwoTorsion(self) -> None:
        report = homology(SimplicialComplex.fromFaces(PROJECTIVE_PLANE), reduced=False)
        assert report.betti == [1, 0, 0]
        assert report.torsion[1] == [2]
        assert not report.torsion[0]

    def testEulerCharacteristicAudit(self) -> None:
        for faces in ([(0, 1), (1, 2), (0, 2)], PROJECTIVE_PLANE, [(0, 1, 2, 3)]):
            sc = SimplicialComplex.fromFaces(faces)
            assert eulerCharacteristicAudit(sc, homology(sc))

    def testTruncatedComplexLimitsTheDimensions(self) -> None:
        sc = SimplicialComplex.fromFaces([(0, 1, 2, 3)], dimensionCap=1)
        assert not sc.complete
        assert homology(sc).betti == [0]
        with pytest.raises(InputError):
            homology(sc, upToDimension=1)
        with pytest.raises(InputError):
            pi1Presentation(sc)

class TestGreedyCollapse:
    def testFilledTriangleCollapsesToAPoint(self) -> None:
        certificate = greedyCollapse(SimplicialComplex.fromFaces([(0, 1, 2)]))
        assert certificate.collapsedToPoint
        assert len(certificate.pairs) == 3

    def testHollowTriangleIsStuck(self) -> None:
        certificate = greedyCollapse(SimplicialComplex.fromFaces([(0, 1), (1, 2), (0, 2)]))
        assert not certificate.collapsedToPoint
        assert certificate.pairs == []

    def testTreeCollapses(self) -> None:
        assert greedyCollapse(SimplicialComplex.fromFaces([(0, 1), (1, 2), (1, 3)])).collapsedToPoint
