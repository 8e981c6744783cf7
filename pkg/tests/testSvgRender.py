import pytest

from errors import InputError
from generators import squareFixture
from models import QPoint
from svgRender import defaultOverlays, renderSvg
from tests.instanceBuilders import partitionInstance, uniformInstance

class TestRenderSvg:
    def testOutputIsDeterministic(self) -> None:
        first = renderSvg(squareFixture(), {"star center": QPoint([0, 0])})
        second = renderSvg(squareFixture(), {"star center": QPoint([0, 0])})
        assert first == second
        assert "<svg" in first

    def testOnlyPlanarInstances(self) -> None:
        with pytest.raises(InputError):
            renderSvg(partitionInstance([[[0, 0, 0]], [[1, 1, 1]]]))

class TestDefaultOverlays:
    def testTwoClassesGetAPlanarStarCenter(self) -> None:
        instance = partitionInstance([[[-1, 0], [1, 0]], [[0, 1], [0, -1]]])
        assert defaultOverlays(instance)["star center"] == QPoint([-1, 0])

    def testHighRankGetsATverbergStarCenter(self) -> None:
        instance = uniformInstance([[0, 0], [4, 0], [0, 4], [4, 4], [2, 1], [1, 2], [3, 3]], 7)
        overlays = defaultOverlays(instance)
        assert "star center" in overlays
        assert "tverberg point" not in overlays
