from fractions import Fraction

import pytest

from errors import InputError
from globalUtils import combine, digestOf, formatRational, parseRational, solveLinearSystem

class TestRationals:
    @pytest.mark.parametrize("value, expected", [
        ("3/6", Fraction(1, 2)),
        (" -4 ", Fraction(-4)),
        (7, Fraction(7)),
        (Fraction(2, 3), Fraction(2, 3))
    ])
    def testParse(self, value, expected) -> None:
        assert parseRational(value) == expected

    @pytest.mark.parametrize("value", [0.5, True, "1/0", "half", None])
    def testRejected(self, value) -> None:
        with pytest.raises(InputError):
            parseRational(value)

    def testDenominatorIsAlwaysWritten(self) -> None:
        assert formatRational(Fraction(3)) == "3/1"
        assert formatRational(Fraction(-2, 4)) == "-1/2"

class TestVectors:
    def testCombine(self) -> None:
        vectors = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(4)]]
        assert combine([Fraction(1, 2), Fraction(1, 4)], vectors) == [1, 1]

    def testSolveLinearSystem(self) -> None:
        matrix = [[Fraction(0), Fraction(2)], [Fraction(3), Fraction(1)]]
        assert solveLinearSystem(matrix, [Fraction(1), Fraction(2)]) == [Fraction(1, 2), Fraction(1, 2)]

    def testSingularSystem(self) -> None:
        with pytest.raises(ArithmeticError):
            solveLinearSystem([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [Fraction(1), Fraction(2)])

class TestDigests:
    def testKeyOrderDoesNotMatter(self) -> None:
        assert digestOf({"a": 1, "b": [2, 3]}) == digestOf({"b": [2, 3], "a": 1})
        assert digestOf({"a": 1}) != digestOf({"a": 2})
