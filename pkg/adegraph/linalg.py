"""Exact integer linear algebra: determinants, definiteness and inertia.

Everything here runs over Python integers and ``Fraction``; no floating
point value ever reaches a verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .graph import GramMatrix

MatrixLike = Union[GramMatrix, Sequence[Sequence[int]], np.ndarray]


class Verdict(str, Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class DefinitenessReport:
    verdict: Verdict
    witness: Optional[Tuple[int, ...]]
    leading_minors: Tuple[int, ...]

    @property
    def positive(self) -> bool:
        return self.verdict is Verdict.POSITIVE_DEFINITE

    @property
    def determinant(self) -> int:
        return self.leading_minors[-1] if self.leading_minors else 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "leading_minors": list(self.leading_minors),
            "determinant": self.determinant,
        }


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_zero: int
    n_minus: int

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


def as_rows(m: MatrixLike) -> List[List[int]]:
    if isinstance(m, GramMatrix):
        return [list(row) for row in m.rows]
    return [[int(x) for x in row] for row in m]


def determinant(m: MatrixLike) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting."""
    a = as_rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def leading_minors(m: MatrixLike) -> List[int]:
    """Leading principal minors det(M[:k, :k]) for k = 1..n.

    Bareiss without pivoting yields them as successive pivots. After a zero
    pivot the remaining minors are computed directly.
    """
    rows = as_rows(m)
    a = [list(row) for row in rows]
    n = len(a)
    minors: List[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            minors.extend(
                determinant([row[:size] for row in rows[:size]]) for size in range(k + 2, n + 1)
            )
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def congruence_diagonalize(m: MatrixLike) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Symmetric congruence diagonalization over the rationals.

    Returns (d, P) with P^T M P = diag(d). Columns of P are tracked so that
    kernel and negativity witnesses can be read off directly.
    """
    a = [[Fraction(x) for x in row] for row in as_rows(m)]
    n = len(a)
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add(target: int, source: int, c: Fraction) -> None:
        # congruence by I + c * e_source e_target^T
        for j in range(n):
            a[target][j] += c * a[source][j]
        for i in range(n):
            a[i][target] += c * a[i][source]
        for i in range(n):
            p[i][target] += c * p[i][source]

    def swap(k: int, j: int) -> None:
        a[k], a[j] = a[j], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        for row in p:
            row[k], row[j] = row[j], row[k]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                # a[j][j] == 0 here, so the new a[k][k] is 2 * a[k][j]
                add(k, j, Fraction(1))
        pivot = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add(i, k, -a[i][k] / pivot)
    return [a[k][k] for k in range(n)], p


def integer_vector(values: Sequence[Fraction]) -> Tuple[int, ...]:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive."""
    fractions = [Fraction(v) for v in values]
    lcm = 1
    for f in fractions:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fractions]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def quadratic_form(m: MatrixLike, x: Sequence[int]) -> int:
    rows = as_rows(m)
    return sum(x[i] * rows[i][j] * x[j] for i in range(len(rows)) for j in range(len(rows)))


def mat_vec(m: MatrixLike, x: Sequence[int]) -> List[int]:
    rows = as_rows(m)
    return [sum(row[j] * x[j] for j in range(len(row))) for row in rows]


def semidefinite_verdict(m: MatrixLike) -> Verdict:
    """Verdict alone, by integer elimination with symmetric diagonal pivoting.

    After eliminating pivot set S every remaining entry a[i][j] equals the
    bordered minor det(M[S+i, S+j]) and all pivots so far are positive, so
    entry signs are the signs of the Schur complement.
    """
    a = as_rows(m)
    remaining = list(range(len(a)))
    prev = 1
    while remaining:
        if any(a[i][i] < 0 for i in remaining):
            return Verdict.INDEFINITE
        k = next((i for i in remaining if a[i][i] > 0), None)
        if k is None:
            if any(a[i][j] for i in remaining for j in remaining if i != j):
                return Verdict.INDEFINITE
            return Verdict.POSITIVE_SEMIDEFINITE
        remaining.remove(k)
        pivot = a[k][k]
        for i in remaining:
            for j in remaining:
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return Verdict.POSITIVE_DEFINITE


def definiteness(m: MatrixLike, *, witness: bool = True) -> DefinitenessReport:
    """Verdict, leading minors and a witness vector for non-definite input.

    With ``witness=False`` the verdict comes from integer elimination and the
    report carries no witness.
    """
    rows = as_rows(m)
    minors = tuple(leading_minors(rows))
    if all(value > 0 for value in minors):
        return DefinitenessReport(Verdict.POSITIVE_DEFINITE, None, minors)
    if not witness:
        return DefinitenessReport(semidefinite_verdict(rows), None, minors)

    diag, p = congruence_diagonalize(rows)
    n = len(rows)
    negative = next((k for k, d in enumerate(diag) if d < 0), None)
    if negative is not None:
        witness = integer_vector([p[i][negative] for i in range(n)])
        return DefinitenessReport(Verdict.INDEFINITE, witness, minors)
    zero = next(k for k, d in enumerate(diag) if d == 0)
    witness = integer_vector([p[i][zero] for i in range(n)])
    return DefinitenessReport(Verdict.POSITIVE_SEMIDEFINITE, witness, minors)


def inertia(m: MatrixLike) -> Inertia:
    diag, _ = congruence_diagonalize(m)
    return Inertia(
        n_plus=sum(1 for d in diag if d > 0),
        n_zero=sum(1 for d in diag if d == 0),
        n_minus=sum(1 for d in diag if d < 0),
    )


def check_witness(m: MatrixLike, report: DefinitenessReport) -> bool:
    """True when the report's witness satisfies its defining equation."""
    if report.verdict is Verdict.POSITIVE_DEFINITE:
        return report.witness is None
    x = report.witness
    if x is None or not any(x):
        return False
    if report.verdict is Verdict.POSITIVE_SEMIDEFINITE:
        return all(value == 0 for value in mat_vec(m, x))
    return quadratic_form(m, x) < 0


def to_object_array(m: MatrixLike) -> np.ndarray:
    """Exact integer matrix as a numpy object array (Python ints inside)."""
    rows = as_rows(m)
    n = len(rows)
    cols = len(rows[0]) if rows else 0
    array = np.empty((n, cols), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = int(value)
    return array


def identity(n: int) -> np.ndarray:
    return to_object_array([[int(i == j) for j in range(n)] for i in range(n)])
