"""Line-oriented text format for stochastic games.

Every line is `key value...` with 1-based indices and rationals written as
"p/q" or "p" (never binary floating point), e.g.:

    label my game
    states 2
    actions1 2
    actions2 2
    initial_state 1
    reward 1 1 1 1/2
    transition 1 1 1 2 1
    ...

Full-line comments start with '#'.  Every (state, i, j) reward and every
(state, i, j, target) transition entry must be present explicitly; there
are no defaults.  Parse errors carry the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import IO, Union

from .errors import GameFileError
from .gamecore import Game
from .ratlinalg import parse_rational

Source = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class GameFile:
    """A parsed game document: the game plus optional metadata."""

    game: Game
    initial_state: int | None = None
    label: str | None = None


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


def _parse_index(token: str, upper: int, what: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GameFileError(f"{what} must be an integer, got {token!r}", line_no)
    if not 1 <= value <= upper:
        raise GameFileError(f"{what} {value} out of range 1..{upper}", line_no)
    return value


def parse_game(source: Source) -> GameFile:
    """Parse and fully validate a game document from a path or stream."""
    text = _read_text(source)
    header: dict[str, int] = {}
    label: str | None = None
    initial_state: int | None = None
    reward_entries: dict[tuple[int, int, int], Fraction] = {}
    transition_entries: dict[tuple[int, int, int, int], Fraction] = {}
    body: list[tuple[int, str, list[str]]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "label":
            if label is not None:
                raise GameFileError("duplicate label", line_no)
            if not rest.strip():
                raise GameFileError("label needs a value", line_no)
            label = rest.strip()
            continue
        tokens = rest.split()
        if key in ("states", "actions1", "actions2"):
            if key in header:
                raise GameFileError(f"duplicate {key}", line_no)
            if len(tokens) != 1:
                raise GameFileError(f"{key} takes exactly one value", line_no)
            try:
                count = int(tokens[0])
            except ValueError:
                raise GameFileError(f"{key} must be an integer, got {tokens[0]!r}", line_no)
            if count < 1:
                raise GameFileError(f"{key} must be at least 1, got {count}", line_no)
            header[key] = count
        elif key in ("initial_state", "reward", "transition"):
            body.append((line_no, key, tokens))
        else:
            raise GameFileError(f"unknown key {key!r}", line_no)

    for field in ("states", "actions1", "actions2"):
        if field not in header:
            raise GameFileError(f"missing {field} declaration")
    n, n_i, n_j = header["states"], header["actions1"], header["actions2"]

    for line_no, key, tokens in body:
        if key == "initial_state":
            if initial_state is not None:
                raise GameFileError("duplicate initial_state", line_no)
            if len(tokens) != 1:
                raise GameFileError("initial_state takes exactly one value", line_no)
            initial_state = _parse_index(tokens[0], n, "initial_state", line_no)
        elif key == "reward":
            if len(tokens) != 4:
                raise GameFileError(
                    "reward takes: state i j value", line_no
                )
            s = _parse_index(tokens[0], n, "reward state", line_no)
            i = _parse_index(tokens[1], n_i, "reward action i", line_no)
            j = _parse_index(tokens[2], n_j, "reward action j", line_no)
            try:
                value = parse_rational(tokens[3])
            except ValueError as exc:
                raise GameFileError(str(exc), line_no)
            if (s, i, j) in reward_entries:
                raise GameFileError(f"duplicate reward for (state {s}, i {i}, j {j})", line_no)
            reward_entries[(s, i, j)] = value
        else:  # transition
            if len(tokens) != 5:
                raise GameFileError(
                    "transition takes: state i j target probability", line_no
                )
            s = _parse_index(tokens[0], n, "transition state", line_no)
            i = _parse_index(tokens[1], n_i, "transition action i", line_no)
            j = _parse_index(tokens[2], n_j, "transition action j", line_no)
            t = _parse_index(tokens[3], n, "transition target", line_no)
            try:
                prob = parse_rational(tokens[4])
            except ValueError as exc:
                raise GameFileError(str(exc), line_no)
            if prob < 0:
                raise GameFileError(f"negative transition probability {prob}", line_no)
            if (s, i, j, t) in transition_entries:
                raise GameFileError(
                    f"duplicate transition for (state {s}, i {i}, j {j}, target {t})",
                    line_no,
                )
            transition_entries[(s, i, j, t)] = prob

    for s in range(1, n + 1):
        for i in range(1, n_i + 1):
            for j in range(1, n_j + 1):
                if (s, i, j) not in reward_entries:
                    raise GameFileError(f"missing reward for (state {s}, i {i}, j {j})")
                for t in range(1, n + 1):
                    if (s, i, j, t) not in transition_entries:
                        raise GameFileError(
                            f"missing transition for (state {s}, i {i}, j {j}, target {t})"
                        )
                row_sum = sum(transition_entries[(s, i, j, t)] for t in range(1, n + 1))
                if row_sum != 1:
                    raise GameFileError(
                        f"transition row at (state {s}, i {i}, j {j}) sums to "
                        f"{row_sum}, expected exactly 1"
                    )

    rewards = [
        [[reward_entries[(s, i, j)] for j in range(1, n_j + 1)] for i in range(1, n_i + 1)]
        for s in range(1, n + 1)
    ]
    transitions = [
        [
            [
                [transition_entries[(s, i, j, t)] for t in range(1, n + 1)]
                for j in range(1, n_j + 1)
            ]
            for i in range(1, n_i + 1)
        ]
        for s in range(1, n + 1)
    ]
    return GameFile(
        game=Game(rewards, transitions), initial_state=initial_state, label=label
    )


def serialize_game(doc: GameFile) -> str:
    """Render a document that parses back to an identical game."""
    game = doc.game
    lines: list[str] = []
    if doc.label is not None:
        lines.append(f"label {doc.label}")
    lines.append(f"states {game.n_states}")
    lines.append(f"actions1 {game.n_actions1}")
    lines.append(f"actions2 {game.n_actions2}")
    if doc.initial_state is not None:
        lines.append(f"initial_state {doc.initial_state}")
    for s in range(game.n_states):
        for i in range(game.n_actions1):
            for j in range(game.n_actions2):
                lines.append(f"reward {s + 1} {i + 1} {j + 1} {game.rewards[s][i][j]}")
    for s in range(game.n_states):
        for i in range(game.n_actions1):
            for j in range(game.n_actions2):
                for t in range(game.n_states):
                    lines.append(
                        f"transition {s + 1} {i + 1} {j + 1} {t + 1} "
                        f"{game.transitions[s][i][j][t]}"
                    )
    return "\n".join(lines) + "\n"


def fixture_path(name: str) -> Path:
    """Path of a bundled example game (with or without the .game suffix)."""
    if not name.endswith(".game"):
        name += ".game"
    path = resources.files("stochgame").joinpath("fixtures", name)
    return Path(str(path))


def list_fixtures() -> list[str]:
    base = resources.files("stochgame").joinpath("fixtures")
    return sorted(p.name[: -len(".game")] for p in Path(str(base)).glob("*.game"))


def load_fixture(name: str) -> GameFile:
    return parse_game(fixture_path(name))
