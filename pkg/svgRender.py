import io
import logging
from typing import Dict, List, Optional

import matplotlib
matplotlib.use("Agg")
from matplotlib.figure import Figure
from matplotlib.patches import Polygon

from certificates import dCorePoint, findTverberg, planarStarCenter, starCertificate
from errors import InputError
from joinCore import enumerateIndependent, matroidRank
from models import Face, Instance, QPoint
from resources import Resources

logger = logging.getLogger(__name__)

OVERLAY_MARKERS: Dict[str, str] = {
    "star center": "*",
    "tverberg point": "D",
    "d-core point": "s"
}

def classColorOf(instance: Instance) -> Dict[int, str]:
    """Per-class colors for partition matroids, one color otherwise."""
    if not instance.isPartition:
        return {label: Resources.classColors[0] for label in instance.labels}
    colors: Dict[int, str] = {}
    for i in range(instance.classCount):
        for label in instance.classLabels(i):
            colors[label] = Resources.classColors[i % len(Resources.classColors)]
    return colors

def counterClockwise(points: List[QPoint]) -> List[QPoint]:
    a, b, c = points
    turn = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return [a, c, b] if turn < 0 else [a, b, c]

def defaultOverlays(instance: Instance, segmentChecks: int = 0, seed: int = 0) -> Dict[str, QPoint]:
    """
    The constructive points the instance admits: a star center (rank > 6, or
    two color classes), a Tverberg point of the first seven points and the
    d-core point of a partition instance.
    """
    overlays: Dict[str, QPoint] = {}
    rank: int = matroidRank(instance)
    if rank > 6:
        overlays["star center"] = starCertificate(instance, segmentChecks, seed).center
    elif instance.isPartition and instance.classCount == 2:
        overlays["star center"] = planarStarCenter(instance.classPoints(0), instance.classPoints(1))
    if rank <= 6 and len(instance.labels) >= 7:
        labels: List[int] = instance.labels[:7]
        tverberg = findTverberg(instance.pointsOf(labels), 3, labels)
        if tverberg is not None:
            overlays["tverberg point"] = tverberg.point
    if instance.isPartition and instance.classCount >= 2:
        core: Optional[QPoint] = dCorePoint(instance)
        if core is not None:
            overlays["d-core point"] = core
    return overlays

def renderSvg(instance: Instance, overlays: Optional[Dict[str, QPoint]] = None) -> str:
    """
    Every independent set of at most three points drawn as a point, segment or
    triangle, plus labelled overlay markers. Output bytes depend only on the
    instance and the overlays.
    """
    if instance.dimension != 2:
        raise InputError(f"Only planar instances can be rendered, got dimension {instance.dimension}")
    matplotlib.rcParams["svg.hashsalt"] = Resources.svgHashSalt
    overlays = overlays or {}
    colors: Dict[int, str] = classColorOf(instance)

    figure: Figure = Figure(figsize=(Resources.svgViewportInches, Resources.svgViewportInches))
    ax = figure.add_subplot(1, 1, 1)
    faces: List[Face] = list(enumerateIndependent(instance, min(3, matroidRank(instance))))
    for face in faces:
        points: List[QPoint] = instance.pointsOf(face)
        if len(face) == 3:
            corners = [p.toFloats() for p in counterClockwise(points)]
            ax.add_patch(Polygon(corners, closed=True, facecolor="#bbbbbb", alpha=0.25, edgecolor="none", zorder=0))
        elif len(face) == 2:
            xs, ys = zip(*(p.toFloats() for p in points))
            ax.plot(xs, ys, color="#444444", linewidth=0.6, zorder=1)

    for label in instance.labels:
        x, y = instance.point(label).toFloats()
        ax.scatter([x], [y], color=colors[label], s=30, zorder=3)
        ax.annotate(str(label), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=7)

    for name in sorted(overlays):
        x, y = overlays[name].toFloats()
        ax.scatter([x], [y], marker=OVERLAY_MARKERS.get(name, "x"), color="black", s=80, zorder=4, label=name)
    if overlays:
        ax.legend(loc="upper right", fontsize=7)

    coordinates: List[List[float]] = [instance.point(label).toFloats() for label in instance.labels]
    coordinates += [p.toFloats() for p in overlays.values()]
    xs = [c[0] for c in coordinates]
    ys = [c[1] for c in coordinates]
    pad: float = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * 0.1
    ax.set_xlim(min(xs) - pad, max(xs) + pad)
    ax.set_ylim(min(ys) - pad, max(ys) + pad)
    ax.set_aspect("equal")
    ax.set_axis_off()

    buffer: io.StringIO = io.StringIO()
    figure.savefig(buffer, format="svg", metadata={"Date": None})
    logger.debug("Rendered %d faces and %d overlays", len(faces), len(overlays))
    return buffer.getvalue()
