import json
import logging
import sys
import os
from typing import Any, Dict, List

# Add the parent directory to the path to import main
root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, root_dir)

from main import main  # pylint: disable=wrong-import-position,import-error

logger = logging.getLogger(__name__)

def compareWithExpected(configFilePath: str, result: Any) -> bool:
    """
    Fixture folders with an expected.json hold golden values for the report;
    reduced Betti numbers are compared on the listed prefix.
    """
    expectedFilePath: str = os.path.join(os.path.dirname(configFilePath), "expected.json")
    if not os.path.exists(expectedFilePath):
        return True
    with open(expectedFilePath, 'r', encoding='utf-8') as file:
        expected: Dict[str, Any] = json.load(file)

    actual: Dict[str, Any] = {
        "nerveSizes": result["nerveSizes"],
        "reducedBetti": result["homology"]["betti"][:len(expected["reducedBetti"])],
        "collapsedToPoint": result["collapse"]["collapsedToPoint"],
        "pi1Generators": result["pi1"]["generators"]
    }
    mismatches: List[str] = [
        f"{key}: expected {value}, got {actual[key]}"
        for key, value in expected.items() if actual.get(key) != value
    ]
    for mismatch in mismatches:
        logger.critical("%s %s", configFilePath, mismatch)
    return not mismatches

if __name__ == "__main__":
    # Configure logging
    logging.basicConfig(
        level=logging.CRITICAL, # Options are DEBUG, INFO, WARNING, ERROR, CRITICAL
        format='%(levelname)s: %(message)s'
    )

    configFilePaths: List[str] = [
        "manualTests/tightnessCrossing/config.json",
        "manualTests/squareCycle/config.json",
        "manualTests/planarStarCenter/config.json"
    ]

    allPassed: bool = True
    for configFilePath in configFilePaths:
        allPassed = compareWithExpected(configFilePath, main(configFilePath)) and allPassed

    sys.exit(0 if allPassed else 1)
