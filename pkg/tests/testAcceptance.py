from fractions import Fraction
from typing import List, Tuple

import pytest

from analysis import analyze
from certificateVerifiers import (
    verifyMembershipWitness,
    verifyRayWitness,
    verifySeparationCertificate,
    verifyStarCenterReport
)
from certificates import rayWitness, starCertificate, strongSeparation
from filtration import offsetMonotonicityAudit, offsetNerve
from generators import generateCaratheodoryInstance, generateInstance, tightnessFixture
from homology import homology
from joinCore import enumerateBases, joinContains
from models import QPoint
from nerve import buildNerve
from reportModels import SearchConfig
from tests.testCertificates import positiveOrthantInstance

def componentsByIntervalMerging(intervals: List[Tuple[Fraction, Fraction]]) -> int:
    components: int = 0
    reach: Fraction = Fraction(0)
    for lo, hi in sorted(intervals):
        if components == 0 or lo > reach:
            components += 1
            reach = hi
        else:
            reach = max(reach, hi)
    return components

def planarClassSizes(index: int) -> List[int]:
    """Even instances use pairs; odd ones mix class sizes from 1 to 4."""
    m: int = 3 + (index // 2) % 3
    if index % 2 == 0:
        return [2] * m
    return [1 + (index // 2 + i) % 4 for i in range(m)]

def planarCampaignConfigs(count: int) -> List[Tuple[SearchConfig, int]]:
    return [
        (SearchConfig(dimension=2, classSizes=planarClassSizes(index), bound=10, seed=101), index)
        for index in range(count)
    ]

class TestNerveCriteria:
    def testCrossingDiagonalsGoldenValues(self) -> None:
        report = analyze(tightnessFixture(1), SearchConfig(dimension=2, classSizes=[2, 2]))
        assert report.nerveSizes == [4, 5]
        assert report.homology.betti[:2] == [0, 2]
        assert not report.collapsedToPoint
        assert report.pi1Generators == 2

    @pytest.mark.parametrize("count", [
        2,
        pytest.param(100, marks=pytest.mark.slow)
    ])
    def testPlanarJoinsHaveTrivialHomology(self, count) -> None:
        for config, index in planarCampaignConfigs(count):
            report = analyze(generateInstance(config, index), config, config.seed, index)
            assert report.homology.betti[:2] == [0, 0], f"instance {index}"

    @pytest.mark.slow
    def testSpatialFourClassJoinsHaveTrivialHomology(self) -> None:
        config = SearchConfig(dimension=3, classSizes=[2, 2, 2, 2], bound=10, seed=202)
        for index in range(50):
            report = analyze(generateInstance(config, index), config, config.seed, index)
            assert report.homology.betti[:3] == [0, 0, 0], f"instance {index}"

    @pytest.mark.parametrize("count", [
        10,
        pytest.param(100, marks=pytest.mark.slow)
    ])
    def testNerveComponentsOnTheLine(self, count) -> None:
        config = SearchConfig(dimension=1, classSizes=[2, 2, 2], bound=10, seed=303)
        for index in range(count):
            instance = generateInstance(config, index)
            intervals = []
            for basis in enumerateBases(instance):
                values = [point[0] for point in instance.pointsOf(basis)]
                intervals.append((min(values), max(values)))
            components = componentsByIntervalMerging(intervals)
            assert homology(buildNerve(instance)).betti[0] == components - 1, f"instance {index}"

class TestCertificateCriteria:
    @pytest.mark.parametrize("dimensions, count", [
        ([1, 2], 5),
        pytest.param([1, 2, 3], 100, marks=pytest.mark.slow)
    ])
    def testCentroidInstancesContainTheOrigin(self, dimensions, count) -> None:
        for index in range(count):
            d = dimensions[index % len(dimensions)]
            config = SearchConfig(dimension=d, classSizes=[d + 1] * (d + 1), seed=404)
            instance = generateCaratheodoryInstance(config, index)
            origin = QPoint.origin(d)
            witness = joinContains(instance, origin)
            assert witness is not None, f"instance {index}"
            assert verifyMembershipWitness(instance, origin, witness)

    @pytest.mark.parametrize("dimensions, count", [
        ([2, 3], 4),
        pytest.param([2, 3], 100, marks=pytest.mark.slow)
    ])
    def testShiftedInstancesAreStronglySeparated(self, dimensions, count) -> None:
        for index in range(count):
            d = dimensions[index % len(dimensions)]
            config = SearchConfig(dimension=d, classSizes=[2] * (d + 1), bound=10, offset=25, seed=505)
            instance = generateInstance(config, index)
            assert joinContains(instance, QPoint.origin(d)) is None
            assert verifySeparationCertificate(instance, strongSeparation(instance))

    @pytest.mark.parametrize("count, segmentChecks", [
        (1, 2),
        pytest.param(50, 20, marks=pytest.mark.slow)
    ])
    def testSevenPlanarClassesAreStarshaped(self, count, segmentChecks) -> None:
        config = SearchConfig(dimension=2, classSizes=[2] * 7, bound=10, seed=606)
        for index in range(count):
            instance = generateInstance(config, index)
            report = starCertificate(instance, segmentChecks=segmentChecks, seed=index)
            assert len(report.segmentChecks) == segmentChecks
            assert verifyStarCenterReport(instance, report)

    @pytest.mark.parametrize("count, segmentChecks", [
        (1, 2),
        pytest.param(20, 20, marks=pytest.mark.slow)
    ])
    def testHighRankUniformMatroidIsStarshaped(self, count, segmentChecks) -> None:
        config = SearchConfig(dimension=2, classSizes=[10], matroid="uniform:7", bound=10, seed=707)
        for index in range(count):
            instance = generateInstance(config, index)
            report = starCertificate(instance, segmentChecks=segmentChecks, seed=index)
            assert verifyStarCenterReport(instance, report)

    def testEmittedRayWitnessesVerify(self) -> None:
        instance = positiveOrthantInstance()
        witness = rayWitness(instance)
        assert witness is not None
        assert verifyRayWitness(instance, witness)

        config = SearchConfig(dimension=3, classSizes=[2, 2, 2, 2], bound=10, offset=25, seed=808)
        found = 0
        for index in range(3):
            instance = generateInstance(config, index)
            witness = rayWitness(instance, seed=index)
            if witness is not None:
                assert verifyRayWitness(instance, witness)
                found += 1
        assert found >= 1

    @pytest.mark.slow
    def testRayWitnessSuccessRate(self) -> None:
        config = SearchConfig(dimension=3, classSizes=[2, 2, 2, 2], bound=10, offset=25, seed=808)
        found = 0
        for index in range(30):
            instance = generateInstance(config, index)
            witness = rayWitness(instance, seed=index)
            if witness is not None:
                assert verifyRayWitness(instance, witness)
                found += 1
        assert found >= 27

class TestFiltrationCriteria:
    @pytest.mark.parametrize("count", [
        3,
        pytest.param(20, marks=pytest.mark.slow)
    ])
    def testOffsetNerveAtZeroAndMonotoneGrid(self, count) -> None:
        config = SearchConfig(dimension=2, classSizes=[2, 2, 2], bound=10, seed=909)
        for index in range(count):
            instance = generateInstance(config, index)
            assert offsetNerve(instance, 0.0) == buildNerve(instance)
            assert offsetMonotonicityAudit(instance, [0.0, 1.0, 4.0], tolerance=1e-9)
