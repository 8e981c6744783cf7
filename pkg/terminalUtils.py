import logging
from typing import Any, Dict, Optional

from main import main

logger = logging.getLogger(__name__)

def runAlgorithm(configFilePath: str, overrides: Optional[Dict[str, Any]] = None) -> Any:
    """
    Runs the mode selected by the overrides (or the config file) with the
    configuration specified in the config file.
    """
    return main(
        configFilePath,
        overrides
    )
