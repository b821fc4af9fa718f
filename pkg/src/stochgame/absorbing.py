"""Absorbing games: all states but one never change once reached.

For these games every absorbed state's value is just the value of its
reward matrix, independent of the discount rate.  The live state's
vanishing-discount value is characterized by the sign of the Kohlberg
quotient (Phi(lam, u(z)) - z) / lam built from the Shapley operator, and
at every finite discount rate that quotient coincides exactly with the
profile matrix-game value divided by lam**n; `verify_kohlberg_identity`
checks the chain of equalities entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GameValidationError
from .gamecore import Game, check_discount
from .matrixgame import solve_matrix_game
from .pencil import DEFAULT_MAX_ENTRIES, pencil_matrix
from .ratlinalg import RatMatrix, RationalLike, to_fraction


def is_absorbing(game: Game, live_state: int = 1) -> bool:
    """True when every state except live_state is absorbing."""
    game.check_state(live_state)
    for l in range(game.n_states):
        if l == live_state - 1:
            continue
        for row in game.transitions[l]:
            for dist in row:
                if dist[l] != 1:
                    return False
    return True


def _permuted_game(game: Game, live_state: int) -> Game:
    """Relabel states so live_state becomes state 1."""
    order = [live_state - 1] + [l for l in range(game.n_states) if l != live_state - 1]
    rewards = tuple(game.rewards[l] for l in order)
    transitions = tuple(
        tuple(
            tuple(tuple(dist[t] for t in order) for dist in row)
            for row in game.transitions[l]
        )
        for l in order
    )
    return Game(rewards, transitions)


@dataclass(frozen=True)
class AbsorbingGame:
    """An absorbing game normalized so state 1 is the live state."""

    game: Game
    original_live_state: int

    @classmethod
    def from_game(cls, game: Game, live_state: int = 1) -> "AbsorbingGame":
        game.check_state(live_state)
        normalized = game if live_state == 1 else _permuted_game(game, live_state)
        for l in range(1, normalized.n_states):
            for i, row in enumerate(normalized.transitions[l]):
                for j, dist in enumerate(row):
                    if dist[l] != 1:
                        raise GameValidationError(
                            f"state {l + 1} is not absorbing: stay probability "
                            f"{dist[l]} at actions ({i + 1}, {j + 1})"
                        )
        return cls(game=normalized, original_live_state=live_state)


def absorbed_values(ab: AbsorbingGame) -> tuple[Fraction, ...]:
    """Values of the absorbed states 2..n: each is its reward-matrix value."""
    return tuple(
        solve_matrix_game(RatMatrix(ab.game.rewards[l])).value
        for l in range(1, ab.game.n_states)
    )


def _continuation(ab: AbsorbingGame, z: Fraction) -> tuple[Fraction, ...]:
    return (z,) + absorbed_values(ab)


def kohlberg_quotient(ab: AbsorbingGame, lam: RationalLike, z: RationalLike) -> Fraction:
    """Pre-limit quotient (Phi_1(lam, (z, v_2, ..., v_n)) - z) / lam."""
    from .oracle import shapley_auxiliary

    lam = check_discount(lam)
    z = to_fraction(z)
    aux = shapley_auxiliary(ab.game, lam, _continuation(ab, z), 1)
    return (solve_matrix_game(aux).value - z) / lam


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of the finite-discount identity check at one (lam, z)."""

    values_equal: bool
    dependence_ok: bool
    reduction_exact: bool
    pencil_side: Fraction
    quotient_side: Fraction
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.values_equal and self.dependence_ok and self.reduction_exact


def value_reduced_game(ab: AbsorbingGame) -> Game:
    """Copy with every absorbed state's rewards replaced by its value.

    The substitution changes no state value: the absorbed matrix games
    become constant at their own value, and the live-state pencil value
    is preserved exactly because each player can commit to an optimal
    mixture of the absorbed reward matrix independently of the live
    action (the absorption weights are nonnegative).
    """
    game = ab.game
    values = absorbed_values(ab)
    rewards = (game.rewards[0],) + tuple(
        tuple(tuple(values[l - 1] for _ in row) for row in game.rewards[l])
        for l in range(1, game.n_states)
    )
    return Game(rewards, game.transitions)


def verify_kohlberg_identity(
    ab: AbsorbingGame,
    lam: RationalLike,
    z: RationalLike,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> IdentityReport:
    """Check val(profile matrix)/lam**n == Kohlberg quotient, exactly.

    Also verifies the structure behind the identity.  Raw profile-matrix
    entries depend on absorbed-state actions whenever absorbed rewards
    vary with actions (the Cramer numerator carries the absorbed stage
    reward, not the absorbed value), so the block-constancy of rows and
    columns is checked on the value-reduced game, together with the exact
    equality of the two pencils' values.  The first violated equality is
    reported with the offending entry.
    """
    lam = check_discount(lam)
    z = to_fraction(z)
    game = ab.game
    n = game.n_states
    payoff = pencil_matrix(game, 1, lam, z, max_entries).payoff
    reduced = value_reduced_game(ab)
    reduced_payoff = pencil_matrix(reduced, 1, lam, z, max_entries).payoff
    row_block = game.n_actions1 ** (n - 1)
    col_block = game.n_actions2 ** (n - 1)

    dependence_ok = True
    detail = ""
    for r in range(reduced_payoff.n_rows):
        for c in range(reduced_payoff.n_cols):
            rep = reduced_payoff.entry(
                (r // row_block) * row_block, (c // col_block) * col_block
            )
            if reduced_payoff.entry(r, c) != rep:
                dependence_ok = False
                detail = (
                    f"reduced-game entry at profile pair ({r}, {c}) is "
                    f"{reduced_payoff.entry(r, c)}, expected {rep} from its "
                    f"live-state action block"
                )
                break
        if not dependence_ok:
            break

    value = solve_matrix_game(payoff).value
    reduced_value = solve_matrix_game(reduced_payoff).value
    reduction_exact = value == reduced_value
    lhs = value / lam**n
    rhs = kohlberg_quotient(ab, lam, z)
    values_equal = lhs == rhs
    if not values_equal and not detail:
        detail = f"scaled matrix value {lhs} != quotient {rhs} at lam={lam}, z={z}"
    elif not reduction_exact and not detail:
        detail = (
            f"value-reduced pencil value {reduced_value} != raw pencil value "
            f"{value} at lam={lam}, z={z}"
        )
    return IdentityReport(
        values_equal=values_equal,
        dependence_ok=dependence_ok,
        reduction_exact=reduction_exact,
        pencil_side=lhs,
        quotient_side=rhs,
        detail=detail,
    )
