from fractions import Fraction

import pytest

from certificates import (
    GnomonicChart,
    dCorePoint,
    findTverberg,
    planarStarCenter,
    rayWitness,
    separatedFamily,
    setPartitions,
    starCertificate,
    strongSeparation,
    verifyPlanarKernel
)
from errors import InputError, PreconditionError
from generators import squareFixture
from models import Hyperplane, QPoint
from tests.instanceBuilders import partitionInstance, uniformInstance

def points(*coordinates):
    return [QPoint(c) for c in coordinates]

def positiveOrthantInstance():
    return partitionInstance([
        [[1, 1, 1], [2, 1, 1]],
        [[1, 2, 1], [1, 3, 2]],
        [[1, 1, 2], [2, 2, 3]],
        [[3, 1, 1], [1, 4, 1]]
    ])

def separableInstance():
    return partitionInstance([[[1, 1], [1, -1]], [[2, 1], [2, -1]], [[3, 0]]])

class TestTverberg:
    def testSetPartitionsUseEveryBlock(self) -> None:
        assert list(setPartitions(3, 2)) == [[0, 0, 1], [0, 1, 0], [0, 1, 1]]
        assert len(list(setPartitions(4, 2))) == 7

    def testFirstPartitionOfThreeCollinearPoints(self) -> None:
        certificate = findTverberg(points([0], [1], [2]), 2)
        assert certificate.parts == [(0, 2), (1,)]
        assert certificate.point == QPoint([1])
        assert certificate.perPartWitness == [[Fraction(1, 2), Fraction(1, 2)], [1]]

    def testRadonPartitionOfASquare(self) -> None:
        certificate = findTverberg(points([0, 0], [2, 0], [0, 2], [2, 2]), 2, labels=[10, 11, 12, 13])
        assert certificate.point == QPoint([1, 1])
        assert sorted(certificate.parts) == [(10, 13), (11, 12)]

    def testTooFewPointsMayHaveNoPartition(self) -> None:
        assert findTverberg(points([0, 0], [1, 0], [0, 1]), 2) is None

    def testArgumentChecks(self) -> None:
        with pytest.raises(InputError):
            findTverberg(points([0], [1]), 1)
        with pytest.raises(InputError):
            findTverberg(points([0], [1]), 3)
        with pytest.raises(InputError):
            findTverberg(points([0], [1]), 2, labels=[0])

class TestStarCertificate:
    def testCenterOfAnIntervalJoin(self) -> None:
        instance = uniformInstance([[0], [1], [2], [3]], 3)
        report = starCertificate(instance, segmentChecks=5, seed=7)
        assert report.transversal == (0, 1, 2)
        assert report.center == QPoint([1])
        assert len(report.pigeonhole) == 5
        assert len(report.segmentChecks) == 5
        assert all(check.passed for check in report.segmentChecks)

    def testLowRankIsAPreconditionError(self) -> None:
        with pytest.raises(PreconditionError):
            starCertificate(squareFixture())

class TestDCorePoint:
    def testIntervalCore(self) -> None:
        core = dCorePoint(partitionInstance([[[0], [10]], [[4], [6]]]))
        assert core is not None
        assert 4 <= core[0] <= 6

    def testNeedsColorClasses(self) -> None:
        with pytest.raises(PreconditionError):
            dCorePoint(uniformInstance([[0], [1], [2]], 2))

class TestSeparation:
    def testFirstSeparablePair(self) -> None:
        certificate = strongSeparation(separableInstance())
        assert certificate.classIndices == (0, 1)
        assert certificate.hyperplane == Hyperplane([1, 0], "1/2")

    def testSeparatedFamilySize(self) -> None:
        certificate = separatedFamily(separableInstance())
        assert len(certificate.classIndices) == 2

    def testOriginInsideTheJoin(self) -> None:
        instance = partitionInstance([[[-1, 0]], [[1, 0]], [[0, 5]]])
        with pytest.raises(PreconditionError):
            strongSeparation(instance)

    def testTooFewClasses(self) -> None:
        with pytest.raises(PreconditionError):
            strongSeparation(squareFixture())

class TestPlanarStarCenter:
    def testRhombusCenterIsTheFirstBestMeeting(self) -> None:
        X1 = points([-1, 0], [1, 0])
        X2 = points([0, 1], [0, -1])
        assert planarStarCenter(X1, X2) == QPoint([-1, 0])

    def testSingletonClassIsTheCenter(self) -> None:
        assert planarStarCenter(points([5, 5]), points([0, 0], [1, 0])) == QPoint([5, 5])

    def testKernelSamplesOfTheRhombus(self) -> None:
        X1 = points([-1, 0], [1, 0])
        X2 = points([0, 1], [0, -1])
        report = verifyPlanarKernel(X1, X2, QPoint([-1, 0]), samples=8)
        assert len(report.samples) == 8
        assert report.allPassed

    def testSpacePointsAreRejected(self) -> None:
        with pytest.raises(InputError):
            planarStarCenter(points([0, 0, 0]), points([1, 0, 0]))

class TestRayWitness:
    def testChartLiftInvertsProjection(self) -> None:
        chart = GnomonicChart([Fraction(1), Fraction(1), Fraction(1)])
        lifted = chart.lift(chart.project([Fraction(1), Fraction(2), Fraction(3)]))
        assert lifted == [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)]

    def testChartRejectsTheBackHalfspace(self) -> None:
        chart = GnomonicChart([Fraction(1), Fraction(0), Fraction(0)])
        with pytest.raises(InputError):
            chart.project([Fraction(-1), Fraction(0), Fraction(0)])

    def testRayLeavesThePositiveOrthant(self) -> None:
        witness = rayWitness(positiveOrthantInstance())
        assert witness is not None
        assert all(c < 0 for c in witness.direction)
        assert witness.attempts == 1

    def testOnlyInSpace(self) -> None:
        with pytest.raises(PreconditionError):
            rayWitness(separableInstance())
