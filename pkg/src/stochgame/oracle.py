"""Independent reference computations used to cross-check the solvers.

The Shapley operator evaluates, per state, the exact value of the one-shot
game with discounted continuation payoffs; iterating it from zero
converges geometrically to the discounted value vector.  Iterates are
snapped to a dyadic grid fine enough that the rounding is absorbed by the
stopping certificate, because raw fixed-point iterates roughly double
their bit size per step.  One-player games additionally get a brute-force
reference over pure stationary strategies.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import GameValidationError, UndecidedSignError
from .gamecore import (
    Game,
    StationaryStrategy,
    check_discount,
    discounted_payoff,
)
from .matrixgame import solve_matrix_game
from .ratlinalg import RatMatrix, RationalLike, simplest_between, to_fraction


def shapley_auxiliary(
    game: Game, lam: RationalLike, u: Sequence[RationalLike], state: int
) -> RatMatrix:
    """One-shot payoff matrix at a state: lam*g + (1-lam) * q . u."""
    lam = check_discount(lam)
    game.check_state(state)
    cont = [to_fraction(x) for x in u]
    if len(cont) != game.n_states:
        raise GameValidationError(
            f"continuation vector length {len(cont)} != state count {game.n_states}"
        )
    l = state - 1
    beta = 1 - lam
    return RatMatrix(
        [
            [
                lam * game.rewards[l][i][j]
                + beta * sum(p * v for p, v in zip(game.transitions[l][i][j], cont))
                for j in range(game.n_actions2)
            ]
            for i in range(game.n_actions1)
        ]
    )


def shapley_operator(
    game: Game, lam: RationalLike, u: Sequence[RationalLike]
) -> tuple[Fraction, ...]:
    """Per-state value of the one-shot games; a (1-lam)-contraction in u."""
    return tuple(
        solve_matrix_game(shapley_auxiliary(game, lam, u, l + 1)).value
        for l in range(game.n_states)
    )


def _grid_bits(tol: Fraction, lam: Fraction) -> int:
    """Grid exponent p with 2**-(p+1) <= tol * lam**2 / 8."""
    target = 8 / (tol * lam * lam)
    p = 0
    while Fraction(2) ** (p + 1) < target:
        p += 1
    return max(p, 1)


def value_iteration(
    game: Game, lam: RationalLike, tol: RationalLike
) -> tuple[Fraction, ...]:
    """Vector within sup-norm tol of the discounted value vector.

    Starts from zero and applies the Shapley operator, snapping each
    iterate to the dyadic grid 2**-p (only when an entry's denominator
    would outgrow the grid).  The stopping rule certifies
    ((1-lam) * step + rounding) / lam <= tol, which bounds the distance to
    the unique fixed point.  Before returning, the simplest rational in
    each certified interval is tried as an exact fixed point; when the
    check passes the returned vector is exact, not just within tol.
    """
    lam = check_discount(lam)
    tol = to_fraction(tol)
    if tol <= 0:
        raise GameValidationError(f"tolerance must be positive, got {tol}")
    p = _grid_bits(tol, lam)
    grid = 2**p
    beta = 1 - lam

    def polish(u: Sequence[Fraction], bound: Fraction) -> tuple[Fraction, ...] | None:
        candidate = tuple(simplest_between(x - bound, x + bound) for x in u)
        if shapley_operator(game, lam, candidate) == candidate:
            return candidate
        return None

    u = tuple(Fraction(0) for _ in range(game.n_states))
    step = 0
    while True:
        step += 1
        image = shapley_operator(game, lam, u)
        snapped = tuple(
            x if x.denominator <= grid else Fraction(round(x * grid), grid)
            for x in image
        )
        round_err = max(abs(a - b) for a, b in zip(snapped, image))
        delta = max(abs(a - b) for a, b in zip(snapped, u))
        bound = (beta * delta + round_err) / lam
        u = snapped
        if bound <= tol:
            exact = polish(u, bound)
            return exact if exact is not None else u
        if step % 8 == 0 and bound <= Fraction(1, 256):
            exact = polish(u, bound)
            if exact is not None:
                return exact


def _one_player_profiles(game: Game):
    """Yield (strategy1, strategy2, maximizing) for one-player games."""
    from .pencil import player1_profiles, player2_profiles

    if game.n_actions2 == 1:
        fixed = StationaryStrategy.pure((0,) * game.n_states, 1)
        for i_vec in player1_profiles(game):
            yield StationaryStrategy.pure(i_vec, game.n_actions1), fixed, True
    elif game.n_actions1 == 1:
        fixed = StationaryStrategy.pure((0,) * game.n_states, 1)
        for j_vec in player2_profiles(game):
            yield fixed, StationaryStrategy.pure(j_vec, game.n_actions2), False
    else:
        raise GameValidationError(
            "brute force needs a one-player game (some side with a single action)"
        )


def mdp_brute_force(game: Game, k: int, lam: RationalLike) -> Fraction:
    """Exact discounted value of a one-player game from state k.

    Optimizes over pure stationary strategies of the free player, which
    is exhaustive because one-player games admit pure optimal stationary
    strategies.
    """
    lam = check_discount(lam)
    game.check_state(k)
    best: Fraction | None = None
    maximizing = True
    for x, y, maximizing in _one_player_profiles(game):
        value = discounted_payoff(game, x, y, lam)[k - 1]
        if best is None or (value > best if maximizing else value < best):
            best = value
    assert best is not None
    return best


def mdp_limit_brute_force(
    game: Game,
    k: int,
    window: int = 3,
    diff_tol: RationalLike = Fraction(1, 2**12),
    depth_cap: int = 64,
) -> Fraction:
    """Vanishing-discount value of a one-player game via a discount ladder.

    Each pure stationary strategy's payoff is evaluated at lam = 2**-t
    until `window` consecutive successive differences stay within
    diff_tol; the free player's best stabilized payoff is returned.
    """
    game.check_state(k)
    diff_tol = to_fraction(diff_tol)
    best: Fraction | None = None
    maximizing = True
    for x, y, maximizing in _one_player_profiles(game):
        prev: Fraction | None = None
        run = 0
        limit: Fraction | None = None
        for t in range(1, depth_cap + 1):
            value = discounted_payoff(game, x, y, Fraction(1, 2**t))[k - 1]
            if prev is not None and abs(value - prev) <= diff_tol:
                run += 1
            else:
                run = 0
            prev = value
            if run >= window:
                limit = value
                break
        if limit is None:
            raise UndecidedSignError(
                f"pure-profile payoff did not stabilize within ladder depth {depth_cap}"
            )
        if best is None or (limit > best if maximizing else limit < best):
            best = limit
    assert best is not None
    return best
