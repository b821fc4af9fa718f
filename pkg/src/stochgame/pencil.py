"""Parameterized matrix games over pure stationary profile pairs.

For a fixed initial state k and discount rate lam, each profile pair
(i_vec, j_vec) contributes two exact determinants: the system determinant
det(Id - (1-lam) Q) and the Cramer numerator obtained by replacing its
k-th column with lam * g.  Their ratio is the discounted payoff, and the
pencil numerator - z * denominator defines, entry by entry, the matrix
game whose value changes sign exactly at the discounted value.

`pencil_matrix_kronecker` rebuilds the same matrix from Kronecker products
of per-state blocks, never forming a per-profile chain matrix, so the two
constructions check each other.

Every entry is a pure function of its own profile pair, so grids may be
filled independently (and in parallel) with no shared state; all results
here are immutable once built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ResourceCapError
from .gamecore import Game, check_discount
from .ratlinalg import RatMatrix, RationalLike, det, kron, permutations_with_parity, to_fraction

DEFAULT_MAX_ENTRIES = 10**6


def player1_profiles(game: Game) -> Iterator[tuple[int, ...]]:
    """All pure stationary strategies of player 1, state 1 most significant."""
    return itertools.product(range(game.n_actions1), repeat=game.n_states)


def player2_profiles(game: Game) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(game.n_actions2), repeat=game.n_states)


def profile_row_index(i_vec: Sequence[int], n_actions: int) -> int:
    """Mixed-radix rank of a profile, first state most significant."""
    idx = 0
    for a in i_vec:
        idx = idx * n_actions + a
    return idx


def _system_matrix(game: Game, i_vec, j_vec, lam: Fraction) -> RatMatrix:
    beta = 1 - lam
    n = game.n_states
    return RatMatrix(
        [
            [
                Fraction(int(l == t)) - beta * game.transitions[l][i_vec[l]][j_vec[l]][t]
                for t in range(n)
            ]
            for l in range(n)
        ]
    )


def payoff_denominator(game: Game, i_vec, j_vec, lam: RationalLike) -> Fraction:
    """det(Id - (1-lam) Q) for a pure profile; at least lam**n_states."""
    lam = check_discount(lam)
    return det(_system_matrix(game, i_vec, j_vec, lam))


def payoff_numerator(game: Game, k: int, i_vec, j_vec, lam: RationalLike) -> Fraction:
    """Cramer numerator: column k of the system matrix replaced by lam * g."""
    lam = check_discount(lam)
    game.check_state(k)
    system = _system_matrix(game, i_vec, j_vec, lam)
    g = [lam * game.rewards[l][i_vec[l]][j_vec[l]] for l in range(game.n_states)]
    return det(system.replace_column(k, g))


def _check_cap(game: Game, max_entries: int) -> tuple[int, int]:
    n_rows = game.n_actions1**game.n_states
    n_cols = game.n_actions2**game.n_states
    if n_rows * n_cols > max_entries:
        raise ResourceCapError(
            f"profile matrix would have {n_rows} x {n_cols} = {n_rows * n_cols} "
            f"entries, above the cap of {max_entries}; raise the cap only if "
            f"you accept the exponential cost"
        )
    return n_rows, n_cols


@dataclass(frozen=True)
class GamePencil:
    """Precomputed numerator/denominator grids for one (state, lam).

    The bisection over z reuses these: the matrix at z is assembled in
    one pass as numerator - z * denominator.
    """

    state: int
    lam: Fraction
    numerators: tuple[tuple[Fraction, ...], ...]
    denominators: tuple[tuple[Fraction, ...], ...]

    @property
    def n_rows(self) -> int:
        return len(self.numerators)

    @property
    def n_cols(self) -> int:
        return len(self.numerators[0])

    def matrix_at(self, z: RationalLike) -> RatMatrix:
        z = to_fraction(z)
        return RatMatrix(
            [
                [num - z * den for num, den in zip(num_row, den_row)]
                for num_row, den_row in zip(self.numerators, self.denominators)
            ]
        )

    def max_denominator(self) -> Fraction:
        return max(max(row) for row in self.denominators)


def build_pencil(
    game: Game, k: int, lam: RationalLike, max_entries: int = DEFAULT_MAX_ENTRIES
) -> GamePencil:
    lam = check_discount(lam)
    game.check_state(k)
    _check_cap(game, max_entries)
    nums = []
    dens = []
    cols = list(player2_profiles(game))
    for i_vec in player1_profiles(game):
        num_row = []
        den_row = []
        for j_vec in cols:
            system = _system_matrix(game, i_vec, j_vec, lam)
            g = [lam * game.rewards[l][i_vec[l]][j_vec[l]] for l in range(game.n_states)]
            num_row.append(det(system.replace_column(k, g)))
            den_row.append(det(system))
        nums.append(tuple(num_row))
        dens.append(tuple(den_row))
    return GamePencil(
        state=k, lam=lam, numerators=tuple(nums), denominators=tuple(dens)
    )


@dataclass(frozen=True)
class PencilMatrix:
    """The assembled profile matrix game at a target z.

    Row r corresponds to the player-1 profile with mixed-radix rank r
    (state 1 most significant); columns likewise for player 2.
    """

    payoff: RatMatrix
    state: int
    lam: Fraction
    z: Fraction


def pencil_matrix(
    game: Game,
    k: int,
    lam: RationalLike,
    z: RationalLike,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> PencilMatrix:
    """Profile matrix with entries numerator - z * denominator."""
    pencil = build_pencil(game, k, lam, max_entries)
    return PencilMatrix(
        payoff=pencil.matrix_at(z), state=k, lam=pencil.lam, z=to_fraction(z)
    )


def _reward_block(game: Game, l: int) -> RatMatrix:
    return RatMatrix(game.rewards[l])


def _kernel_block(game: Game, l: int, t: int) -> RatMatrix:
    return RatMatrix(
        [
            [game.transitions[l][i][j][t] for j in range(game.n_actions2)]
            for i in range(game.n_actions1)
        ]
    )


def _block_determinant(blocks: list[list[RatMatrix]]) -> RatMatrix:
    """Determinant of a square block array with Kronecker products.

    Expansion over column assignments; each term keeps its Kronecker
    factors ordered by block row, which is the orientation under which
    the result matches the per-profile determinants entry by entry.
    """
    n = len(blocks)
    total: RatMatrix | None = None
    for perm, parity in permutations_with_parity(n):
        term = blocks[0][perm[0]]
        for r in range(1, n):
            term = kron(term, blocks[r][perm[r]])
        term = term.scaled(parity)
        total = term if total is None else total + term
    return total


def pencil_matrix_kronecker(
    game: Game,
    k: int,
    lam: RationalLike,
    z: RationalLike,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> PencilMatrix:
    """Same contract as pencil_matrix, built from Kronecker block arrays.

    The n x (n+1) array [-lam*G | U*delta - (1-lam)*Q] is reduced by
    deleting one block column: deleting the first yields the denominator
    grid, deleting block column k (with a (-1)**k sign, which compensates
    for moving the reward column into first position and negating it)
    yields the numerator grid.
    """
    lam = check_discount(lam)
    game.check_state(k)
    z = to_fraction(z)
    _check_cap(game, max_entries)
    n = game.n_states
    beta = 1 - lam
    ones = RatMatrix.constant(game.n_actions1, game.n_actions2, 1)

    def chain_block(r: int, t: int) -> RatMatrix:
        block = _kernel_block(game, r, t).scaled(-beta)
        return block + ones if r == t else block

    den_blocks = [[chain_block(r, t) for t in range(n)] for r in range(n)]
    num_cols = [c for c in range(n) if c != k - 1]
    num_blocks = [
        [_reward_block(game, r).scaled(-lam)] + [chain_block(r, t) for t in num_cols]
        for r in range(n)
    ]
    den_grid = _block_determinant(den_blocks)
    num_grid = _block_determinant(num_blocks).scaled((-1) ** k)
    return PencilMatrix(
        payoff=num_grid + den_grid.scaled(-z), state=k, lam=lam, z=z
    )
