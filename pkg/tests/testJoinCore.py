from fractions import Fraction

import pytest

from errors import InputError, PreconditionError
from generators import squareFixture, tightnessFixture
from joinCore import (
    augment,
    basisMembership,
    colorfulCaratheodoryCheck,
    enumerateBases,
    enumerateIndependent,
    isIndependent,
    joinContains,
    matroidRank,
    rank,
    strongColorfulCaratheodoryCheck,
    theoremGuarantees
)
from models import GroundSet, Instance, MatroidSpec, QPoint
from resources import MatroidKind
from tests.instanceBuilders import partitionInstance, uniformInstance

class TestMatroids:
    def testPartitionRankCountsClasses(self) -> None:
        instance = partitionInstance([[[0], [1]], [[2]]])
        assert rank(instance, [0, 1]) == 1
        assert rank(instance, [0, 2]) == 2
        assert matroidRank(instance) == 2

    def testUniformRankIsCapped(self) -> None:
        instance = uniformInstance([[0], [1], [2], [3]], 2)
        assert rank(instance, [0, 1, 2]) == 2
        assert isIndependent(instance, [1, 3])
        assert not isIndependent(instance, [1, 1])

    def testExplicitBasesBehaveLikeTheirMatroid(self) -> None:
        points = {label: QPoint([label]) for label in range(3)}
        instance = Instance(
            GroundSet(points, 1),
            MatroidSpec(MatroidKind.EXPLICIT_BASES, bases=[[0, 1], [0, 2], [1, 2]])
        )
        assert rank(instance, [0, 1, 2]) == 2
        assert enumerateBases(instance) == [(0, 1), (0, 2), (1, 2)]

    def testBasesWithoutExchangeAreRejected(self) -> None:
        points = {label: QPoint([label]) for label in range(4)}
        with pytest.raises(InputError):
            Instance(GroundSet(points, 1), MatroidSpec(MatroidKind.EXPLICIT_BASES, bases=[[0, 1], [2, 3]]))

    def testOverlappingClassesAreRejected(self) -> None:
        points = {label: QPoint([label]) for label in range(3)}
        with pytest.raises(InputError):
            Instance(GroundSet(points, 1), MatroidSpec(MatroidKind.PARTITION, classes=[[0, 1], [1, 2]]))

    def testUniformRankOutOfRangeIsRejected(self) -> None:
        with pytest.raises(InputError):
            uniformInstance([[0], [1]], 3)

    def testAugmentPicksTheSmallestLabel(self) -> None:
        instance = uniformInstance([[0], [1], [2], [3]], 2)
        assert augment(instance, [0], [1, 2]) == 1

    def testAugmentNeedsALargerSet(self) -> None:
        instance = uniformInstance([[0], [1], [2], [3]], 2)
        with pytest.raises(InputError):
            augment(instance, [0, 1], [2, 3])

class TestEnumeration:
    def testIndependentSetsBySizeThenLexicographic(self) -> None:
        instance = partitionInstance([[[0], [1]], [[2]]])
        assert list(enumerateIndependent(instance, 2)) == [(), (0,), (1,), (2,), (0, 2), (1, 2)]

    def testMaxSizeAboveRankIsRejected(self) -> None:
        instance = partitionInstance([[[0], [1]], [[2]]])
        with pytest.raises(InputError):
            list(enumerateIndependent(instance, 3))

    def testPartitionBasesAreTransversals(self) -> None:
        assert enumerateBases(squareFixture()) == [(0, 2), (0, 3), (1, 2), (1, 3)]

class TestJoinContains:
    def testOriginOnTheCrossingDiagonal(self) -> None:
        witness = joinContains(tightnessFixture(1), QPoint([0, 0]))
        assert witness is not None
        assert witness.labels == (0, 2)
        assert witness.barycentric == (Fraction(1, 2), Fraction(1, 2))

    def testOriginOutsideTheSquare(self) -> None:
        instance = squareFixture()
        assert joinContains(instance, QPoint([0, 0])) is None
        assert basisMembership(instance, QPoint([0, 0])) is None

    def testPointOnASquareEdge(self) -> None:
        witness = joinContains(squareFixture(), QPoint([-1, 0]))
        assert witness.labels == (0, 2)

    def testBasisMembershipAgrees(self) -> None:
        instance = tightnessFixture(1)
        for point in (QPoint([0, 0]), QPoint(["1/2", "1/2"]), QPoint([0, 1]), QPoint([3, 3])):
            assert (joinContains(instance, point) is None) == (basisMembership(instance, point) is None)

    def testWrongDimensionIsRejected(self) -> None:
        with pytest.raises(InputError):
            joinContains(squareFixture(), QPoint([0, 0, 0]))

class TestCaratheodory:
    def testColorfulHypothesisYieldsAWitness(self) -> None:
        instance = partitionInstance([[[-1], [1]], [[-2], [2]]])
        report = colorfulCaratheodoryCheck(instance, QPoint([0]))
        assert report.hypothesisMet
        assert report.witness is not None

    def testStrongVersionOnlyNeedsPairs(self) -> None:
        instance = partitionInstance([[[-1], [-2]], [[1], [2]]])
        report = strongColorfulCaratheodoryCheck(instance, QPoint([0]))
        assert report.hypothesisMet
        assert report.witness is not None

    def testHypothesisNotMet(self) -> None:
        instance = partitionInstance([[[-1], [-2]], [[1], [2]]])
        assert not colorfulCaratheodoryCheck(instance, QPoint([0])).hypothesisMet

    def testTooFewClassesIsAPreconditionError(self) -> None:
        with pytest.raises(PreconditionError):
            colorfulCaratheodoryCheck(squareFixture(), QPoint([0, 0]))

class TestTheoremGuarantees:
    def testTwoPlanarClassesPromiseNothing(self) -> None:
        assert theoremGuarantees(squareFixture()) == []

    def testThreePlanarClasses(self) -> None:
        instance = partitionInstance([[[0, 0], [1, 0]], [[0, 1], [1, 1]], [[2, 2], [3, 2]]])
        names = [claim.name for claim in theoremGuarantees(instance)]
        assert "simply-connected" in names
        assert "contractible" in names
        assert "0-connected" in names
        assert "starshaped" not in names

    def testHighRankIsStarshaped(self) -> None:
        instance = uniformInstance([[i, i * i] for i in range(8)], 7)
        assert "starshaped" in [claim.name for claim in theoremGuarantees(instance)]

    def testLowDimensionRuleSkipsTheLine(self) -> None:
        line = partitionInstance([[[0], [1]], [[2], [3]]])
        assert not any("<= 3" in claim.reason for claim in theoremGuarantees(line))
        plane = partitionInstance([[[0, 0], [1, 0]], [[0, 1], [1, 1]], [[2, 2], [3, 2]]])
        assert any("<= 3" in claim.reason for claim in theoremGuarantees(plane))
