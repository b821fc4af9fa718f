"""Exact value and optimal mixed strategies of zero-sum matrix games.

A matrix game is identified with its rational payoff matrix (rows are the
maximizer's pure actions, columns the minimizer's).  `solve_matrix_game`
runs an exact rational simplex on the standard LP formulation;
`shapley_snow_value` recomputes the value by enumerating square kernels
and certifying one, which serves as an independent cross-check of the LP
throughout the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .ratlinalg import RatMatrix, RationalLike, int_det, to_fraction


@dataclass(frozen=True)
class GameSolution:
    """Exact value plus optimal mixed strategies for both players.

    The strategies satisfy the optimality inequalities exactly:
    x_opt guarantees at least `value` against every column, and y_opt
    concedes at most `value` against every row.
    """

    value: Fraction
    x_opt: tuple[Fraction, ...]
    y_opt: tuple[Fraction, ...]


@dataclass(frozen=True)
class SnowCertificate:
    """A certified square kernel: value = kernel_det / cofactor_total."""

    value: Fraction
    row_support: tuple[int, ...]
    col_support: tuple[int, ...]
    kernel_det: Fraction
    cofactor_total: Fraction
    x_opt: tuple[Fraction, ...]
    y_opt: tuple[Fraction, ...]


def solve_matrix_game(payoff: RatMatrix) -> GameSolution:
    """Exact simplex solve of the matrix game.

    Payoffs are shifted to be strictly positive (undone on output), then
    the minimizer's LP  max 1.w  s.t. M w <= 1, w >= 0  is solved with
    Bland's rule; the maximizer's strategy is read off the dual values.
    """
    p, q = payoff.shape
    low = min(min(row) for row in payoff.rows)
    shift = Fraction(1) - low if low <= 0 else Fraction(0)
    m = [[x + shift for x in row] for row in payoff.rows]

    # tableau rows: [M | I | 1], reduced-cost row kept separately
    tableau = [m[i] + [Fraction(int(i == r)) for r in range(p)] + [Fraction(1)] for i in range(p)]
    cost = [Fraction(-1)] * q + [Fraction(0)] * p + [Fraction(0)]
    basis = list(range(q, q + p))

    while True:
        enter = next((j for j in range(q + p) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(p):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:  # impossible with strictly positive columns
            raise ArithmeticError("unbounded matrix-game LP")
        pivot = tableau[leave][enter]
        tableau[leave] = [x / pivot for x in tableau[leave]]
        pivot_row = tableau[leave]
        for i in range(p):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], pivot_row)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, pivot_row)]
        basis[leave] = enter

    total = cost[-1]  # optimal 1.w = 1 / val(shifted game) > 0
    w = [Fraction(0)] * q
    for i, var in enumerate(basis):
        if var < q:
            w[var] = tableau[i][-1]
    duals = cost[q : q + p]
    value = 1 / total - shift
    x_opt = tuple(u / total for u in duals)
    y_opt = tuple(v / total for v in w)
    return GameSolution(value=value, x_opt=x_opt, y_opt=y_opt)


def _minor_table(memo: dict, int_rows: list[list[int]], prefix: tuple[int, ...], q: int) -> dict:
    """Memoized minors over the rows in `prefix`, keyed by column subset.

    Level t is built from level t-1 by Laplace expansion along the newest
    row, so every table is computed once and shared across all candidate
    kernels with the same row prefix.
    """
    table = memo.get(prefix)
    if table is None:
        parent = _minor_table(memo, int_rows, prefix[:-1], q)
        row = int_rows[prefix[-1]]
        depth = len(prefix) - 1
        table = {}
        for cols in itertools.combinations(range(q), len(prefix)):
            acc = 0
            for pos in range(len(cols)):
                minor = parent[cols[:pos] + cols[pos + 1 :]]
                if minor:
                    term = row[cols[pos]] * minor
                    acc += term if (depth + pos) % 2 == 0 else -term
            table[cols] = acc
        memo[prefix] = table
    return table


def _int_adjugate(sub: list[list[int]]) -> list[list[int]]:
    """Adjugate of a small integer matrix via cofactor minors."""
    size = len(sub)
    if size == 1:
        return [[1]]
    idx = range(size)
    out = [[0] * size for _ in idx]
    for i in idx:
        rows = [sub[r] for r in idx if r != i]
        for j in idx:
            minor = [[row[c] for c in idx if c != j] for row in rows]
            cof = int_det(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def shapley_snow_certificate(payoff: RatMatrix) -> SnowCertificate:
    """Find a square kernel certifying the game value.

    Square submatrices are enumerated by size ascending and lexicographic
    position within a size; the first candidate whose induced strategies
    are nonnegative and pass the exact optimality inequalities is returned.

    Candidate screening runs over an integer view with one global
    denominator D: a size-s kernel's determinant and cofactor sum both
    scale by D**s, so det/phi is a ratio of integers, and the cofactor sum
    comes from the rank-one identity det(M + D*J) = det(M) + D**s * phi.
    A candidate whose det/phi falls outside the maximin..minimax sandwich
    cannot certify (the certified ratio is the unique game value), so only
    the rare survivors pay for exact rational strategies.
    """
    p, q = payoff.shape
    rows = payoff.rows
    maximin = max(min(row) for row in rows)
    minimax = min(max(col) for col in zip(*rows))
    lo_n, lo_d = maximin.numerator, maximin.denominator
    hi_n, hi_d = minimax.numerator, minimax.denominator
    denom = math.lcm(*(x.denominator for row in rows for x in row))
    int_rows = [[int(x * denom) for x in row] for row in rows]
    shift_rows = [[x + denom for x in row] for row in int_rows]
    memo_raw: dict = {(): {(): 1}}
    memo_shift: dict = {(): {(): 1}}
    for size in range(1, min(p, q) + 1):
        depth = size - 1
        for row_support in itertools.combinations(range(p), size):
            prefix = row_support[:-1]
            raw_table = _minor_table(memo_raw, int_rows, prefix, q)
            shift_table = _minor_table(memo_shift, shift_rows, prefix, q)
            raw_last = int_rows[row_support[-1]]
            shift_last = shift_rows[row_support[-1]]
            for col_support in itertools.combinations(range(q), size):
                kernel_int = 0
                shifted_int = 0
                for pos in range(size):
                    sub_cols = col_support[:pos] + col_support[pos + 1 :]
                    c = col_support[pos]
                    negate = (depth + pos) % 2
                    minor = raw_table[sub_cols]
                    if minor:
                        term = raw_last[c] * minor
                        kernel_int += -term if negate else term
                    minor = shift_table[sub_cols]
                    if minor:
                        term = shift_last[c] * minor
                        shifted_int += -term if negate else term
                phi_int = shifted_int - kernel_int
                if phi_int == 0:
                    continue
                if phi_int > 0:
                    if (
                        kernel_int * lo_d < lo_n * phi_int
                        or kernel_int * hi_d > hi_n * phi_int
                    ):
                        continue
                else:
                    if (
                        kernel_int * lo_d > lo_n * phi_int
                        or kernel_int * hi_d < hi_n * phi_int
                    ):
                        continue
                # a certified ratio is also the value of the kernel itself,
                # so it must fall in the kernel's own (scaled) sandwich
                sub_int = [[int_rows[r][c] for c in col_support] for r in row_support]
                sub_lo = max(min(row) for row in sub_int)
                sub_hi = min(max(col) for col in zip(*sub_int))
                scaled = kernel_int * denom
                if phi_int > 0:
                    if scaled < sub_lo * phi_int or scaled > sub_hi * phi_int:
                        continue
                else:
                    if scaled > sub_lo * phi_int or scaled < sub_hi * phi_int:
                        continue
                # induced strategies: adjugate column/row sums over phi,
                # computed on the integer view (the D**(s-1) scale and the
                # sign of phi cancel out of every test below)
                adj_int = _int_adjugate(sub_int)
                phi_sign = 1 if phi_int > 0 else -1
                col_sums = [sum(adj_int[i][j] for i in range(size)) for j in range(size)]
                if any(cs * phi_sign < 0 for cs in col_sums):
                    continue
                row_sums = [sum(adj_int[i][j] for j in range(size)) for i in range(size)]
                if any(rs * phi_sign < 0 for rs in row_sums):
                    continue
                if any(
                    (
                        sum(
                            col_sums[pos] * int_rows[row_support[pos]][b]
                            for pos in range(size)
                        )
                        - kernel_int
                    )
                    * phi_sign
                    < 0
                    for b in range(q)
                ):
                    continue
                if any(
                    (
                        sum(
                            row_sums[pos] * int_rows[a][col_support[pos]]
                            for pos in range(size)
                        )
                        - kernel_int
                    )
                    * phi_sign
                    > 0
                    for a in range(p)
                ):
                    continue
                x = [Fraction(0)] * p
                for pos, r in enumerate(row_support):
                    x[r] = Fraction(denom * col_sums[pos], phi_int)
                y = [Fraction(0)] * q
                for pos, c in enumerate(col_support):
                    y[c] = Fraction(denom * row_sums[pos], phi_int)
                area = denom**size
                return SnowCertificate(
                    value=Fraction(kernel_int, phi_int),
                    row_support=row_support,
                    col_support=col_support,
                    kernel_det=Fraction(kernel_int, area),
                    cofactor_total=Fraction(phi_int, area),
                    x_opt=tuple(x),
                    y_opt=tuple(y),
                )
    raise RuntimeError(
        "internal error: no square submatrix certifies the game value"
    )


def shapley_snow_value(payoff: RatMatrix) -> Fraction:
    """Game value via kernel enumeration; equals solve_matrix_game exactly."""
    return shapley_snow_certificate(payoff).value


def affine_transform(payoff: RatMatrix, c: RationalLike, d: RationalLike) -> RatMatrix:
    """Entrywise c * M + d; requires c > 0 so the value maps to c*val + d."""
    c = to_fraction(c)
    d = to_fraction(d)
    if c <= 0:
        raise ValueError(f"scale factor must be positive, got {c}")
    return RatMatrix([[c * x + d for x in row] for row in payoff.rows])
