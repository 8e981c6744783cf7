from fractions import Fraction

import pytest

from convexity import (
    boundingBox,
    inConvexHull,
    nearestPointInHull,
    rayHitsConvex,
    segmentInterval,
    segmentInUnion,
    separatingHyperplane,
    simplicesIntersect
)
from errors import InputError
from models import Hyperplane, QPoint

def points(*coordinates):
    return [QPoint(c) for c in coordinates]

class TestInConvexHull:
    def testBarycentricWeightsOfAnInteriorPoint(self) -> None:
        weights = inConvexHull(QPoint(["1/4", "1/4"]), points([0, 0], [1, 0], [0, 1]))
        assert weights == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]

    def testPointOutsideTheHull(self) -> None:
        assert inConvexHull(QPoint([1, 1]), points([0, 0], [1, 0], [0, 1])) is None

    def testVertexIsItsOwnCombination(self) -> None:
        assert inConvexHull(QPoint([1, 0]), points([0, 0], [1, 0])) == [0, 1]

    def testMidpointOfASegment(self) -> None:
        assert inConvexHull(QPoint([1, 1]), points([0, 0], [2, 2])) == [Fraction(1, 2), Fraction(1, 2)]

    def testDimensionMismatchIsAnInputError(self) -> None:
        with pytest.raises(InputError):
            inConvexHull(QPoint([0, 0]), points([0, 0, 0]))

class TestSimplicesIntersect:
    def testCrossingSegmentsMeetAtTheirCrossing(self) -> None:
        assert simplicesIntersect([points([0, 0], [2, 2]), points([0, 2], [2, 0])]) == QPoint([1, 1])

    def testDisjointSegments(self) -> None:
        assert simplicesIntersect([points([0, 0], [1, 0]), points([0, 1], [1, 1])]) is None

    def testThreeTrianglesWithACommonPoint(self) -> None:
        common = simplicesIntersect([
            points([0, 0], [4, 0], [0, 4]),
            points([1, 1], [5, 1], [1, 5]),
            points([-1, 2], [3, -2], [3, 2])
        ])
        assert common is not None
        assert inConvexHull(common, points([1, 1], [5, 1], [1, 5])) is not None

    def testEmptyFamilyIsAnInputError(self) -> None:
        with pytest.raises(InputError):
            simplicesIntersect([])

class TestSeparation:
    def testNearestPointOfASegment(self) -> None:
        assert nearestPointInHull(QPoint([0, 0]), points([1, -1], [1, 1])) == QPoint([1, 0])

    def testNearestPointOfATriangleCorner(self) -> None:
        assert nearestPointInHull(QPoint([0, 0]), points([2, 2], [3, 2], [2, 3])) == QPoint([2, 2])

    def testBisectorOfTheNearestPoint(self) -> None:
        hyperplane = separatingHyperplane(points([1, 0], [2, 0]), QPoint([0, 0]))
        assert hyperplane == Hyperplane([1, 0], "1/2")

    def testSingletonSeparation(self) -> None:
        assert separatingHyperplane(points([1, 1]), QPoint([0, 0])) == Hyperplane([1, 1], 1)

    def testNoSeparationFromAnInteriorPoint(self) -> None:
        assert separatingHyperplane(points([-1, 0], [1, 0]), QPoint([0, 0])) is None

class TestRaysAndSegments:
    def testRayHitsASegment(self) -> None:
        assert rayHitsConvex(QPoint([1, 1]), points([0, 2], [2, 0]))

    def testOppositeRayMisses(self) -> None:
        assert not rayHitsConvex(QPoint([-1, -1]), points([0, 2], [2, 0]))

    def testZeroDirectionIsAnInputError(self) -> None:
        with pytest.raises(InputError):
            rayHitsConvex(QPoint([0, 0]), points([0, 2], [2, 0]))

    def testSegmentIntervalThroughATriangle(self) -> None:
        interval = segmentInterval(QPoint([0, 0]), QPoint([4, 0]), points([1, -1], [1, 1], [3, 0]))
        assert interval == (Fraction(1, 4), Fraction(3, 4))

    def testSegmentIntervalMissingTheTriangle(self) -> None:
        assert segmentInterval(QPoint([0, 5]), QPoint([4, 5]), points([1, -1], [1, 1], [3, 0])) is None

    def testTouchingIntervalsCoverTheLine(self) -> None:
        family = [points([0], [1]), points([1], [2])]
        assert segmentInUnion(QPoint([0]), QPoint([2]), family)

    def testGapBreaksTheCover(self) -> None:
        family = [points([0], [1]), points(["3/2"], [2])]
        assert not segmentInUnion(QPoint([0]), QPoint([2]), family)

    def testBoundingBox(self) -> None:
        assert boundingBox(points([0, 3], [2, -1])) == [(0, 2), (-1, 3)]
