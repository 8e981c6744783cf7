import logging
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from errors import BudgetExceededError, InputError, InternalConsistencyError, PreconditionError
from models import LinearConstraint, LPOutcome
from resources import LPStatus

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

class LPCallCounter:
    def __init__(self, maxCalls: Optional[int]) -> None:
        self.maxCalls: Optional[int] = maxCalls
        self.calls: int = 0

    def consume(self) -> None:
        self.calls += 1
        if self.maxCalls is not None and self.calls > self.maxCalls:
            raise BudgetExceededError(f"LP budget of {self.maxCalls} calls exceeded")

currentCounter: ContextVar[Optional[LPCallCounter]] = ContextVar("currentCounter", default=None)

@contextmanager
def lpBudget(maxCalls: Optional[int]) -> Iterator[LPCallCounter]:
    """
    Count (and cap, when maxCalls is set) the LPs solved inside the block.
    """
    counter: LPCallCounter = LPCallCounter(maxCalls)
    token = currentCounter.set(counter)
    try:
        yield counter
    finally:
        currentCounter.reset(token)

def consumeLpCall() -> None:
    counter: Optional[LPCallCounter] = currentCounter.get()
    if counter is not None:
        counter.consume()

class StandardForm:
    """
    Constraints rewritten as A z = b, z >= 0, b >= 0, with one starting basic
    column per row (a slack with coefficient +1 or an artificial).

    Variables bounded below by zero through a single-variable constraint keep one
    column, every other variable is split into a positive and a negative part.
    """
    def __init__(self, constraints: Sequence[LinearConstraint]) -> None:
        for constraint in constraints:
            if not isinstance(constraint, LinearConstraint):
                raise InputError(f"Not a linear constraint: {constraint!r}")
            for name in constraint.coefficients:
                if not isinstance(name, str) or not name:
                    raise InputError(f"Malformed variable name {name!r}")

        self.constraints: List[LinearConstraint] = list(constraints)
        self.variables: List[str] = []
        seen: Set[str] = set()
        for constraint in self.constraints:
            for name in constraint.coefficients:
                if name not in seen:
                    seen.add(name)
                    self.variables.append(name)
        self.signRows: Dict[int, str] = {}
        nonnegative: Set[str] = set()
        for index, constraint in enumerate(self.constraints):
            signVariable: Optional[str] = signConstraintVariable(constraint)
            if signVariable is not None:
                self.signRows[index] = signVariable
                nonnegative.add(signVariable)

        # (variable, +1/-1) per structural column
        self.columns: List[Tuple[str, int]] = []
        self.positiveColumn: Dict[str, int] = {}
        self.negativeColumn: Dict[str, int] = {}
        for name in self.variables:
            self.positiveColumn[name] = len(self.columns)
            self.columns.append((name, 1))
            if name not in nonnegative:
                self.negativeColumn[name] = len(self.columns)
                self.columns.append((name, -1))

        self.rowOrigins: List[int] = []
        self.rowSigns: List[int] = []
        rows: List[Dict[int, Fraction]] = []
        rhs: List[Fraction] = []
        slackOf: List[Optional[int]] = []
        for index, constraint in enumerate(self.constraints):
            if index in self.signRows:
                continue
            coefficients, bound, isEquality = constraint.canonical()
            row: Dict[int, Fraction] = {}
            for name, value in coefficients.items():
                row[self.positiveColumn[name]] = value
                if name in self.negativeColumn:
                    row[self.negativeColumn[name]] = -value
            sign: int = -1 if bound < 0 or (bound == 0 and not isEquality) else 1
            if sign < 0:
                row = {column: -value for column, value in row.items()}
                bound = -bound
            rows.append(row)
            rhs.append(bound)
            slackOf.append(None if isEquality else -sign)
            self.rowOrigins.append(index)
            self.rowSigns.append(sign)

        structuralCount: int = len(self.columns)
        slackColumns: List[Optional[int]] = []
        columnCount: int = structuralCount
        for slackSign in slackOf:
            if slackSign is None:
                slackColumns.append(None)
            else:
                slackColumns.append(columnCount)
                columnCount += 1
        self.artificialStart: int = columnCount
        self.startBasis: List[int] = []
        for i, slackSign in enumerate(slackOf):
            slackColumn: Optional[int] = slackColumns[i]
            if slackColumn is not None:
                rows[i][slackColumn] = Fraction(slackSign)
            if slackColumn is not None and slackSign > 0:
                self.startBasis.append(slackColumn)
            else:
                rows[i][columnCount] = ONE
                self.startBasis.append(columnCount)
                columnCount += 1
        self.columnCount: int = columnCount
        self.matrix: List[List[Fraction]] = [
            [row.get(j, ZERO) for j in range(columnCount)] for row in rows
        ]
        self.rhs: List[Fraction] = rhs

    def isArtificial(self, column: int) -> bool:
        return column >= self.artificialStart

    def assignment(self, columnValues: Dict[int, Fraction]) -> Dict[str, Fraction]:
        witness: Dict[str, Fraction] = {name: ZERO for name in self.variables}
        for column, (name, direction) in enumerate(self.columns):
            value: Fraction = columnValues.get(column, ZERO)
            if value != 0:
                witness[name] += direction * value
        return witness

def signConstraintVariable(constraint: LinearConstraint) -> Optional[str]:
    """
    The variable v when the constraint reads c*v >= 0 with c > 0 (or c*v <= 0 with c < 0).
    """
    coefficients, bound, isEquality = constraint.canonical()
    if isEquality or bound != 0 or len(coefficients) != 1:
        return None
    name, value = next(iter(coefficients.items()))
    return name if value > 0 else None

class SimplexTableau:
    """
    Dense exact tableau driven by Bland's rule.
    """
    def __init__(self, matrix: List[List[Fraction]], rhs: List[Fraction], basis: List[int]) -> None:
        self.matrix: List[List[Fraction]] = [list(row) for row in matrix]
        self.rhs: List[Fraction] = list(rhs)
        self.basis: List[int] = list(basis)
        self.costs: List[Fraction] = []
        self.reducedCosts: List[Fraction] = []

    def setCosts(self, costs: List[Fraction]) -> None:
        self.costs = costs
        self.reducedCosts = list(costs)
        for i, basic in enumerate(self.basis):
            weight: Fraction = costs[basic]
            if weight != 0:
                self.reducedCosts = [
                    d - weight * a for d, a in zip(self.reducedCosts, self.matrix[i])
                ]

    def objectiveValue(self) -> Fraction:
        return sum((self.costs[basic] * self.rhs[i] for i, basic in enumerate(self.basis)), ZERO)

    def pivot(self, row: int, column: int) -> None:
        pivotValue: Fraction = self.matrix[row][column]
        pivotRow: List[Fraction] = [a / pivotValue for a in self.matrix[row]]
        pivotRhs: Fraction = self.rhs[row] / pivotValue
        self.matrix[row] = pivotRow
        self.rhs[row] = pivotRhs
        for i in range(len(self.matrix)):
            if i == row:
                continue
            factor: Fraction = self.matrix[i][column]
            if factor != 0:
                self.matrix[i] = [a - factor * p for a, p in zip(self.matrix[i], pivotRow)]
                self.rhs[i] -= factor * pivotRhs
        factor = self.reducedCosts[column] if self.reducedCosts else ZERO
        if factor != 0:
            self.reducedCosts = [d - factor * p for d, p in zip(self.reducedCosts, pivotRow)]
        self.basis[row] = column

    def run(self, allowedColumns: Sequence[int]) -> bool:
        """
        Minimize the current costs. Returns False when the objective is unbounded.
        """
        while True:
            entering: Optional[int] = next(
                (j for j in allowedColumns if self.reducedCosts[j] < 0), None
            )
            if entering is None:
                return True
            leaving: Optional[int] = None
            bestRatio: Optional[Fraction] = None
            for i, row in enumerate(self.matrix):
                if row[entering] <= 0:
                    continue
                ratio: Fraction = self.rhs[i] / row[entering]
                if (
                    bestRatio is None
                    or ratio < bestRatio
                    or (ratio == bestRatio and self.basis[i] < self.basis[leaving])
                ):
                    bestRatio = ratio
                    leaving = i
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def columnValues(self) -> Dict[int, Fraction]:
        return {basic: self.rhs[i] for i, basic in enumerate(self.basis) if self.rhs[i] != 0}

    def dropRow(self, row: int) -> None:
        del self.matrix[row]
        del self.rhs[row]
        del self.basis[row]

def runPhaseOne(form: StandardForm) -> Tuple[SimplexTableau, bool]:
    tableau: SimplexTableau = SimplexTableau(form.matrix, form.rhs, form.startBasis)
    tableau.setCosts([ONE if form.isArtificial(j) else ZERO for j in range(form.columnCount)])
    tableau.run(range(form.columnCount))
    return tableau, tableau.objectiveValue() == 0

def farkasFromPhaseOne(form: StandardForm, tableau: SimplexTableau) -> List[Fraction]:
    """
    Dual of the phase one optimum mapped back onto the canonical constraint rows.
    """
    multipliers: List[Fraction] = [ZERO] * len(form.constraints)
    for i, startColumn in enumerate(form.startBasis):
        dual: Fraction = tableau.costs[startColumn] - tableau.reducedCosts[startColumn]
        multipliers[form.rowOrigins[i]] = form.rowSigns[i] * dual

    # sign constraints v >= 0 absorb what is left on nonnegative variables
    residual: Dict[str, Fraction] = combinedCoefficients(form.constraints, multipliers)
    assigned: Set[str] = set()
    for index, name in form.signRows.items():
        if name in assigned:
            continue
        assigned.add(name)
        coefficients, _, _ = form.constraints[index].canonical()
        if residual.get(name, ZERO) != 0:
            multipliers[index] = -residual[name] / coefficients[name]
    return multipliers

def combinedCoefficients(
    constraints: Sequence[LinearConstraint],
    multipliers: Sequence[Fraction]
) -> Dict[str, Fraction]:
    combined: Dict[str, Fraction] = {}
    for constraint, multiplier in zip(constraints, multipliers):
        if multiplier == 0:
            continue
        coefficients, _, _ = constraint.canonical()
        for name, value in coefficients.items():
            combined[name] = combined.get(name, ZERO) + multiplier * value
    return combined

def lpFeasible(constraints: Sequence[LinearConstraint]) -> LPOutcome:
    """
    Decide feasibility of an exact linear system over named (free unless sign
    constrained) variables. Feasible answers carry a witness, infeasible ones a
    Farkas multiplier vector.
    """
    consumeLpCall()
    form: StandardForm = StandardForm(constraints)
    tableau, feasible = runPhaseOne(form)
    if feasible:
        outcome: LPOutcome = LPOutcome(
            LPStatus.FEASIBLE,
            witness=form.assignment(tableau.columnValues())
        )
    else:
        outcome = LPOutcome(LPStatus.INFEASIBLE, farkas=farkasFromPhaseOne(form, tableau))
    logger.debug(
        "LP with %d constraints over %d variables: %s",
        len(form.constraints), len(form.variables), outcome.status.value
    )
    if __debug__:
        if not verifyLpOutcome(constraints, outcome):
            raise InternalConsistencyError(f"LP answer failed re-substitution: {outcome}")
    return outcome

def lpOptimize(
    constraints: Sequence[LinearConstraint],
    objective: Dict[str, Fraction],
    maximize: bool = False
) -> LPOutcome:
    """
    Optimize a linear objective over a bounded feasible region. Unbounded
    problems are a precondition error.
    """
    consumeLpCall()
    form: StandardForm = StandardForm(constraints)
    for name in objective:
        if name not in form.positiveColumn:
            raise InputError(f"Objective uses variable {name!r} absent from the constraints")
    tableau, feasible = runPhaseOne(form)
    if not feasible:
        return LPOutcome(LPStatus.INFEASIBLE, farkas=farkasFromPhaseOne(form, tableau))

    # drive artificial columns out of the basis, dropping redundant rows
    row: int = 0
    while row < len(tableau.basis):
        if form.isArtificial(tableau.basis[row]):
            column: Optional[int] = next(
                (
                    j for j in range(form.artificialStart)
                    if tableau.matrix[row][j] != 0
                ),
                None
            )
            if column is None:
                tableau.dropRow(row)
                continue
            tableau.pivot(row, column)
        row += 1

    direction: int = -1 if maximize else 1
    costs: List[Fraction] = [ZERO] * form.columnCount
    for name, value in objective.items():
        coefficient: Fraction = direction * Fraction(value)
        costs[form.positiveColumn[name]] = coefficient
        if name in form.negativeColumn:
            costs[form.negativeColumn[name]] = -coefficient
    tableau.setCosts(costs)
    if not tableau.run(range(form.artificialStart)):
        raise PreconditionError("lpOptimize called on an unbounded problem")
    witness: Dict[str, Fraction] = form.assignment(tableau.columnValues())
    value: Fraction = sum(
        (Fraction(c) * witness[name] for name, c in objective.items()), ZERO
    )
    outcome: LPOutcome = LPOutcome(LPStatus.FEASIBLE, witness=witness, value=value)
    if __debug__:
        if not verifyLpOutcome(constraints, outcome):
            raise InternalConsistencyError(f"LP optimum failed re-substitution: {outcome}")
    return outcome

def verifyLpOutcome(constraints: Sequence[LinearConstraint], outcome: LPOutcome) -> bool:
    """
    Exact re-substitution of a witness, or of a Farkas combination that must
    read 0 >= (positive) or 0 == (nonzero).
    """
    if outcome.status == LPStatus.FEASIBLE:
        if outcome.witness is None:
            return False
        return all(constraint.isSatisfiedBy(outcome.witness) for constraint in constraints)

    farkas: Optional[List[Fraction]] = outcome.farkas
    if farkas is None or len(farkas) != len(constraints):
        return False
    bound: Fraction = ZERO
    hasInequality: bool = False
    for constraint, multiplier in zip(constraints, farkas):
        _, rhs, isEquality = constraint.canonical()
        if not isEquality:
            if multiplier < 0:
                return False
            if multiplier > 0:
                hasInequality = True
        bound += multiplier * rhs
    if any(value != 0 for value in combinedCoefficients(constraints, farkas).values()):
        return False
    if hasInequality:
        return bound > 0
    return bound != 0
