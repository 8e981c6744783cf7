import logging
import json
import os
from typing import Any, Iterator, List, Optional

logger = logging.getLogger(__name__)

def ensureParentDirectory(filePath: str) -> None:
    directory: str = os.path.dirname(filePath)
    if directory:
        os.makedirs(directory, exist_ok=True)

def readLines(filePath: str) -> List[str]:
    """
    Read lines from a file and return them as a list of strings.
    """
    with open(filePath, 'r', encoding='utf-8') as file:
        lines: List[str] = [
            line.strip() for line in file if line.strip('\n')
        ]
        return lines

def writeLines(filePath: str, lines: List[str]) -> None:
    ensureParentDirectory(filePath)
    with open(filePath, 'w', encoding='utf-8') as file:
        for line in lines:
            file.write(line + "\n")

def readJsonFile(filePath: str) -> Optional[str]:
    """
    Read a JSON file and return its content as a string.
    """
    try:
        with open(filePath, 'r', encoding='utf-8') as file:
            return file.read()
    except FileNotFoundError:
        logger.warning("File '%s' not found.", filePath)
        return None

def writeJsonFile(
    filePath: str,
    data: Any
) -> None:
    """
    Dump the data to a JSON file.
    """
    ensureParentDirectory(filePath)
    with open(filePath, 'w', encoding='utf-8') as file:
        json.dump(data, file, ensure_ascii=False, indent=4)

def appendJsonLine(filePath: str, data: Any) -> None:
    """
    Append one record to a JSON Lines file; existing lines are never rewritten.
    """
    ensureParentDirectory(filePath)
    with open(filePath, 'a', encoding='utf-8') as file:
        file.write(json.dumps(data, ensure_ascii=False, sort_keys=True) + "\n")

def readJsonLines(filePath: str) -> Iterator[Any]:
    with open(filePath, 'r', encoding='utf-8') as file:
        for lineNumber, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as e:
                logger.error("Skipping malformed line %d of '%s': %s", lineNumber, filePath, e)

def writeTextFile(filePath: str, text: str) -> None:
    ensureParentDirectory(filePath)
    with open(filePath, 'w', encoding='utf-8') as file:
        file.write(text)
