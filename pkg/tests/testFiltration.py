import pytest

from errors import InputError
from filtration import (
    criticalRadius,
    filtrationTrace,
    monotonicityAudit,
    morseProbe,
    offsetMonotonicityAudit,
    offsetNerve,
    radiusTies
)
from generators import squareFixture, tightnessFixture
from models import SimplicialComplex
from nerve import buildNerve
from reportModels import CriticalRadiusEstimate, MorseProbeReport
from tests.instanceBuilders import uniformInstance

def estimate(subfamily, radius):
    return CriticalRadiusEstimate(subfamily, radius, [0.0])

class TestCriticalRadius:
    def testTwoPointsOnALine(self) -> None:
        result = criticalRadius(uniformInstance([[0], [2]], 1), [0, 1])
        assert result.radius == pytest.approx(1.0, abs=1e-4)
        assert result.argmin[0] == pytest.approx(1.0, abs=1e-3)
        assert not result.exact

    def testCrossingBasesMeetExactly(self) -> None:
        result = criticalRadius(tightnessFixture(1), [0, 3])
        assert result.radius == 0.0
        assert result.exact

    def testUnknownBasisIsRejected(self) -> None:
        with pytest.raises(InputError):
            criticalRadius(squareFixture(), [0, 9])
        with pytest.raises(InputError):
            criticalRadius(squareFixture(), [])

class TestOffsetNerve:
    def testZeroOffsetIsTheNerve(self) -> None:
        instance = squareFixture()
        assert offsetNerve(instance, 0.0) == buildNerve(instance)

    def testOppositeSidesJoinPastTheirDistance(self) -> None:
        nerve: SimplicialComplex = offsetNerve(squareFixture(), 1.5)
        assert nerve.fVector()[:2] == [4, 6]

    def testNegativeOffsetIsRejected(self) -> None:
        with pytest.raises(InputError):
            offsetNerve(squareFixture(), -1.0)

    def testOffsetNervesGrow(self) -> None:
        assert offsetMonotonicityAudit(squareFixture(), [1.5, 0.0, 0.5])

class TestTrace:
    def testSquareTrace(self) -> None:
        trace = filtrationTrace(squareFixture())
        assert len(trace) == 11
        assert [e.subfamily for e in trace[:4]] == [(0, 1), (0, 2), (1, 3), (2, 3)]
        assert all(e.exact for e in trace[:4])
        byFace = {e.subfamily: e.radius for e in trace}
        assert byFace[(0, 3)] == pytest.approx(1.0, abs=1e-4)
        assert byFace[(1, 2)] == pytest.approx(1.0, abs=1e-4)

    def testTiesGroupConsecutiveRadii(self) -> None:
        trace = [estimate((0, 1), 0.0), estimate((0, 2), 1.0), estimate((1, 2), 1.0), estimate((0, 1, 2), 2.0)]
        assert radiusTies(trace) == [[(0, 2), (1, 2)]]

    def testMonotonicityViolation(self) -> None:
        trace = [estimate((0, 1, 2), 1.0), estimate((0, 1), 2.0), estimate((1, 2), 0.5)]
        assert monotonicityAudit(trace) == [((0, 1), (0, 1, 2))]

class TestMorseProbe:
    def testMidpointBetweenTwoPoints(self) -> None:
        report = morseProbe(uniformInstance([[-1, 0], [1, 0]], 1), [0.0, 0.0])
        assert report.status == MorseProbeReport.FAILS
        assert report.closest.active == [0, 1]

    def testSingleClosestBody(self) -> None:
        report = morseProbe(uniformInstance([[1, 0], [2, 0]], 1), [0.0, 0.0])
        assert report.status == MorseProbeReport.HOLDS
        assert report.conditionHolds

    def testPointOnABody(self) -> None:
        report = morseProbe(uniformInstance([[1, 0], [2, 0]], 1), [1.0, 0.0])
        assert report.status == MorseProbeReport.INTERIOR
        assert report.conditionHolds is None

    def testWrongDimension(self) -> None:
        with pytest.raises(InputError):
            morseProbe(squareFixture(), [0.0])
