import hashlib
import json
import logging
from fractions import Fraction
from typing import Any, List, Sequence, Union

from errors import InputError

logger = logging.getLogger(__name__)

RationalLike = Union[Fraction, int, str]

def parseRational(value: RationalLike) -> Fraction:
    """
    Parse a "p/q" (or "p") string, an int or a Fraction into a Fraction.
    Floats are rejected.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"Rational expected, got {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Malformed rational '{value}'") from e
    raise InputError(f"Rational expected, got {value!r}")

def formatRational(value: Fraction) -> str:
    """
    Always "p/q", the denominator is written even when it is 1.
    """
    return f"{value.numerator}/{value.denominator}"

def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise InputError(f"Dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))

def subtract(u: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
    if len(u) != len(v):
        raise InputError(f"Dimension mismatch: {len(u)} vs {len(v)}")
    return [a - b for a, b in zip(u, v)]

def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
    if len(u) != len(v):
        raise InputError(f"Dimension mismatch: {len(u)} vs {len(v)}")
    return [a + b for a, b in zip(u, v)]

def scale(factor: Fraction, u: Sequence[Fraction]) -> List[Fraction]:
    return [factor * a for a in u]

def combine(weights: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """
    Linear combination sum_i weights[i] * vectors[i].
    """
    if not vectors:
        raise InputError("Cannot combine an empty list of vectors")
    dimension: int = len(vectors[0])
    result: List[Fraction] = [Fraction(0)] * dimension
    for weight, vector in zip(weights, vectors):
        if weight == 0:
            continue
        for k in range(dimension):
            result[k] += weight * vector[k]
    return result

def isZeroVector(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)

def canonicalJson(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)

def digestOf(data: Any) -> str:
    """
    sha256 of the canonical JSON form, used for instance digests and config hashes.
    """
    return hashlib.sha256(canonicalJson(data).encode()).hexdigest()

def solveLinearSystem(
    matrix: List[List[Fraction]],
    rightHandSide: List[Fraction]
) -> List[Fraction]:
    """
    Exact Gauss-Jordan elimination for a square nonsingular system.
    """
    size: int = len(matrix)
    rows: List[List[Fraction]] = [
        list(row) + [rightHandSide[i]] for i, row in enumerate(matrix)
    ]
    for column in range(size):
        pivotRow: int = -1
        for r in range(column, size):
            if rows[r][column] != 0:
                pivotRow = r
                break
        if pivotRow < 0:
            raise ArithmeticError("Singular linear system")
        rows[column], rows[pivotRow] = rows[pivotRow], rows[column]
        pivot: Fraction = rows[column][column]
        rows[column] = [entry / pivot for entry in rows[column]]
        for r in range(size):
            if r != column and rows[r][column] != 0:
                factor: Fraction = rows[r][column]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[column])]
    return [rows[i][size] for i in range(size)]
