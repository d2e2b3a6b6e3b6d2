"""Event log ingestion: wire-format parsing, validation and the in-memory store.

The wire format is one JSON object per event with the fields
``id, eventName, subEventName, subEventId, eventSec, playerId, matchId,
teamId, positions, tags``.  Matches and players arrive in companion files.
Everything downstream (feature extraction, role discovery, ratings) works
off the :class:`EventStore` built here.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping

__all__ = [
    "EventType",
    "Period",
    "Event",
    "MatchRecord",
    "PlayerRecord",
    "CompetitionRecord",
    "EventStore",
    "CorpusStats",
    "DistSummary",
    "IngestError",
    "ParseError",
    "SchemaError",
    "ValidationError",
    "MissingPositionError",
    "EmptyCorpusError",
    "parse_event",
    "event_to_record",
    "build_store",
    "load_corpus",
    "save_store",
    "load_store",
    "corpus_stats",
    "TAG_NAME_TO_ID",
    "TAG_ID_TO_NAME",
    "event_has_tag",
    "canonical_subtype",
]


class IngestError(Exception):
    """Base class for everything that can go wrong while ingesting."""


class ParseError(IngestError):
    """Malformed text. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class SchemaError(IngestError):
    """A required field is missing or has the wrong shape."""

    def __init__(self, field_name: str, detail: str = "missing required field"):
        super().__init__(f"{detail}: {field_name!r}")
        self.field_name = field_name


class ValidationError(IngestError):
    """A field is present but its value is out of contract."""


class MissingPositionError(ValidationError):
    """Event carries no usable pitch position."""


class EmptyCorpusError(IngestError):
    """An operation that needs data was handed an empty store."""


class EventType(str, Enum):
    PASS = "pass"
    DUEL = "duel"
    FOUL = "foul"
    FREE_KICK = "free kick"
    SHOT = "shot"
    OFFSIDE = "offside"
    TOUCH = "touch"


class Period(str, Enum):
    FIRST_HALF = "first_half"
    SECOND_HALF = "second_half"
    EXTRA = "extra"


_PERIOD_ORDER = {Period.FIRST_HALF: 0, Period.SECOND_HALF: 1, Period.EXTRA: 2}

_PERIOD_ALIASES = {
    "1h": Period.FIRST_HALF,
    "2h": Period.SECOND_HALF,
    "e1": Period.EXTRA,
    "e2": Period.EXTRA,
    "p": Period.EXTRA,
    "first_half": Period.FIRST_HALF,
    "second_half": Period.SECOND_HALF,
    "extra": Period.EXTRA,
}

_EVENT_NAME_ALIASES = {
    "pass": EventType.PASS,
    "duel": EventType.DUEL,
    "foul": EventType.FOUL,
    "free kick": EventType.FREE_KICK,
    "free_kick": EventType.FREE_KICK,
    "shot": EventType.SHOT,
    "offside": EventType.OFFSIDE,
    "touch": EventType.TOUCH,
    "others on the ball": EventType.TOUCH,
}

# Canonical subtype vocabulary per event type, with accepted spelling
# variants mapped onto the canonical form.  The canonical strings are the
# ones feature descriptors are written in; note "accelleration" keeps the
# double L used throughout the tag vocabulary on purpose.
_CANONICAL_SUBTYPES: dict[EventType, frozenset[str]] = {
    EventType.DUEL: frozenset(
        {
            "air duel",
            "ground attacking duel",
            "ground defending duel",
            "ground loose ball duel",
        }
    ),
    EventType.FOUL: frozenset(
        {
            "hand foul",
            "late card foul",
            "normal foul",
            "out of game foul",
            "protest foul",
            "simulation foul",
            "violent foul",
        }
    ),
    EventType.FREE_KICK: frozenset(
        {
            "corner free kick",
            "cross free kick",
            "normal free kick",
            "penalty free kick",
            "shot free kick",
            "throw in free kick",
            "goal kick",
        }
    ),
    EventType.TOUCH: frozenset({"accelleration", "clearance", "touch"}),
    EventType.PASS: frozenset(
        {
            "cross pass",
            "hand pass",
            "head pass",
            "high pass",
            "launch pass",
            "simple pass",
            "smart pass",
        }
    ),
    EventType.SHOT: frozenset({"shot"}),
    EventType.OFFSIDE: frozenset(),
}

_SUBTYPE_ALIASES: dict[EventType, dict[str, str]] = {
    EventType.DUEL: {
        "dribbles": "ground attacking duel",
        "tackles": "ground defending duel",
        "ground loose ball": "ground loose ball duel",
    },
    EventType.FOUL: {
        "foul": "normal foul",
        "hand": "hand foul",
        "late card": "late card foul",
        "out of game": "out of game foul",
        "protest": "protest foul",
        "simulation": "simulation foul",
        "violent": "violent foul",
    },
    EventType.FREE_KICK: {
        "corner": "corner free kick",
        "cross": "cross free kick",
        "free kick cross": "cross free kick",
        "free kick": "normal free kick",
        "simple kick": "normal free kick",
        "penalty": "penalty free kick",
        "free kick shot": "shot free kick",
        "shot": "shot free kick",
        "throw in": "throw in free kick",
    },
    EventType.TOUCH: {
        "acceleration": "accelleration",
        "simple touch": "touch",
    },
    EventType.PASS: {
        "cross": "cross pass",
        "launch": "launch pass",
    },
    EventType.SHOT: {},
    EventType.OFFSIDE: {},
}

# Default registry of numeric tag identifiers.  Identifiers outside this
# table are preserved verbatim on the event and simply never match a named
# descriptor; the vocabulary is open by design.
TAG_NAME_TO_ID: dict[str, int] = {
    "goal": 101,
    "own goal": 102,
    "opportunity": 201,
    "assist": 301,
    "key pass": 302,
    "feint": 1301,
    "missed ball": 1302,
    "interception": 1401,
    "red card": 1701,
    "yellow card": 1702,
    "second yellow card": 1703,
    "accurate": 1801,
    "not accurate": 1802,
    "counter attack": 1901,
    "dangerous ball lost": 2001,
    "blocked": 2101,
}

TAG_ID_TO_NAME: dict[int, str] = {v: k for k, v in TAG_NAME_TO_ID.items()}

_TAG_NAME_ALIASES = {"block": "blocked"}


def _normalize_label(s: str) -> str:
    return " ".join(s.strip().lower().replace("_", " ").split())


def canonical_subtype(event_type: EventType, raw: str | None) -> str | None:
    """Map a wire subtype string onto its canonical form.

    Raises ValidationError when the subtype is not legal for the type.
    Shots with no subtype default to the lone "shot" subtype.
    """
    if raw is None or raw == "":
        if event_type is EventType.SHOT:
            return "shot"
        return None
    label = _normalize_label(raw)
    label = _SUBTYPE_ALIASES[event_type].get(label, label)
    if label not in _CANONICAL_SUBTYPES[event_type]:
        raise ValidationError(
            f"subtype {raw!r} is not legal for event type {event_type.value!r}"
        )
    return label


@dataclass(frozen=True, slots=True)
class Event:
    """One touch-level action by one player in one match.

    Attributes:
        event_id: Unique identifier from the provider.
        event_type: One of the seven supported on-the-ball event types.
        subtype: Canonical subtype label, None when the type has none.
        tags: Outcome/qualifier identifiers exactly as parsed; numeric ids
            stay ints, names are normalized lowercase strings.
        player_id: Player who generated the event.
        team_id: Player's team in this match.
        match_id: Match the event belongs to.
        period: Match period the timestamp is relative to.
        event_sec: Seconds elapsed within the period.
        positions: Pitch coordinates in [0, 100] x [0, 100]; the first pair
            is where the event happened.
        subtype_raw: Wire subtype string, kept for faithful serialization.
        subtype_id: Provider's numeric subtype id, if any.
    """

    event_id: int
    event_type: EventType
    subtype: str | None
    tags: frozenset[int | str]
    player_id: int
    team_id: int
    match_id: int
    period: Period
    event_sec: float
    positions: tuple[tuple[float, float], ...]
    subtype_raw: str | None = None
    subtype_id: int | None = None

    @property
    def position(self) -> tuple[float, float]:
        return self.positions[0]

    def sort_key(self) -> tuple[int, float, int]:
        return (_PERIOD_ORDER[self.period], self.event_sec, self.event_id)


def event_has_tag(event: Event, name: str) -> bool:
    """True when the event carries the named tag, by name or registry id."""
    if name in event.tags:
        return True
    tag_id = TAG_NAME_TO_ID.get(name)
    return tag_id is not None and tag_id in event.tags


@dataclass(frozen=True, slots=True)
class PlayerRecord:
    player_id: int
    name: str
    is_goalkeeper: bool
    club_id: int | None = None


@dataclass(frozen=True, slots=True)
class CompetitionRecord:
    competition_id: int
    name: str = ""
    area: str = ""
    # national, continental or international; free-form because the store
    # only ever groups by competition_id.
    kind: str = ""


@dataclass(frozen=True)
class MatchRecord:
    """One match: teams, score, outcome labels and its ordered event list.

    ``outcomes`` maps team_id to 1 for a victory and 0 otherwise, so a draw
    is (0, 0) and a decided match has exactly one 1.  ``player_goals`` counts
    goal-tagged events per (player_id, team_id).
    """

    match_id: int
    competition_id: int
    season_id: int
    home_team_id: int
    away_team_id: int
    team_scores: dict[int, int]
    outcomes: dict[int, int]
    player_goals: dict[tuple[int, int], int]
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        wins = sum(self.outcomes.values())
        scores = self.team_scores
        if set(self.outcomes) != {self.home_team_id, self.away_team_id}:
            raise ValidationError(f"match {self.match_id}: outcomes must cover both teams")
        if scores[self.home_team_id] == scores[self.away_team_id]:
            if wins != 0:
                raise ValidationError(f"match {self.match_id}: drawn match cannot have a winner")
        elif wins != 1:
            raise ValidationError(f"match {self.match_id}: exactly one winner expected")

    @property
    def team_ids(self) -> tuple[int, int]:
        return (self.home_team_id, self.away_team_id)


def _require(record: Mapping[str, Any], field_name: str) -> Any:
    if field_name not in record:
        raise SchemaError(field_name)
    return record[field_name]


def _as_int(value: Any, field_name: str) -> int:
    # JSON object keys arrive as strings, so digit strings count too.
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            raise SchemaError(field_name, "expected an integer for") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field_name, "expected an integer for")
    if isinstance(value, float):
        if not value.is_integer():
            raise SchemaError(field_name, "expected an integer for")
        value = int(value)
    return value


def parse_event(record: str | bytes | Mapping[str, Any]) -> Event:
    """Parse one wire-format event record into an :class:`Event`.

    Accepts a JSON string/bytes or an already-decoded mapping.  Raises
    ParseError (with byte offset) for malformed text, SchemaError for a
    missing field, MissingPositionError when no position is present and
    ValidationError for out-of-contract values.
    """
    if isinstance(record, (str, bytes)):
        try:
            record = json.loads(record)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed event record: {exc.msg}", exc.pos) from exc
    if not isinstance(record, Mapping):
        raise ValidationError("event record must be a JSON object")

    event_id = _as_int(_require(record, "id"), "id")
    raw_name = _require(record, "eventName")
    if not isinstance(raw_name, str):
        raise SchemaError("eventName", "expected a string for")
    event_type = _EVENT_NAME_ALIASES.get(_normalize_label(raw_name))
    if event_type is None:
        allowed = sorted(t.value for t in EventType)
        raise ValidationError(f"unknown event type {raw_name!r}; expected one of {allowed}")

    subtype_raw = record.get("subEventName")
    if subtype_raw is not None and not isinstance(subtype_raw, str):
        raise SchemaError("subEventName", "expected a string for")
    subtype = canonical_subtype(event_type, subtype_raw)

    sub_id = record.get("subEventId")
    subtype_id = None
    if sub_id is not None and sub_id != "":
        subtype_id = _as_int(sub_id, "subEventId")

    event_sec = _require(record, "eventSec")
    if not isinstance(event_sec, (int, float)) or isinstance(event_sec, bool):
        raise SchemaError("eventSec", "expected a number for")
    event_sec = float(event_sec)
    if not math.isfinite(event_sec) or event_sec < 0:
        raise ValidationError(f"eventSec must be finite and non-negative, got {event_sec}")

    player_id = _as_int(_require(record, "playerId"), "playerId")
    match_id = _as_int(_require(record, "matchId"), "matchId")
    team_id = _as_int(_require(record, "teamId"), "teamId")

    raw_positions = record.get("positions")
    if not raw_positions:
        raise MissingPositionError(f"event {event_id} has no pitch position")
    positions = []
    for pos in raw_positions:
        if not isinstance(pos, Mapping) or "x" not in pos or "y" not in pos:
            raise SchemaError("positions", "expected {x, y} objects in")
        x, y = float(pos["x"]), float(pos["y"])
        if not (0 <= x <= 100 and 0 <= y <= 100):
            raise ValidationError(
                f"event {event_id}: position ({x}, {y}) outside the 0-100 pitch range"
            )
        positions.append((x, y))

    raw_tags = record.get("tags", [])
    tags: set[int | str] = set()
    for tag in raw_tags:
        ident = tag.get("id") if isinstance(tag, Mapping) else tag
        if isinstance(ident, bool) or ident is None:
            raise SchemaError("tags", "expected {id} objects in")
        if isinstance(ident, (int, float)):
            tags.add(_as_int(ident, "tags"))
        else:
            name = _normalize_label(str(ident))
            tags.add(_TAG_NAME_ALIASES.get(name, name))

    raw_period = record.get("matchPeriod")
    if raw_period is None:
        period = Period.FIRST_HALF
    else:
        period = _PERIOD_ALIASES.get(_normalize_label(str(raw_period)))
        if period is None:
            raise ValidationError(f"unknown match period {raw_period!r}")

    return Event(
        event_id=event_id,
        event_type=event_type,
        subtype=subtype,
        tags=frozenset(tags),
        player_id=player_id,
        team_id=team_id,
        match_id=match_id,
        period=period,
        event_sec=event_sec,
        positions=tuple(positions),
        subtype_raw=subtype_raw,
        subtype_id=subtype_id,
    )


def _sentence_case(s: str) -> str:
    return s[:1].upper() + s[1:]


def _coord(v: float) -> float | int:
    return int(v) if float(v).is_integer() else v


def event_to_record(event: Event) -> dict[str, Any]:
    """Serialize an Event back to its wire-format dict."""
    record: dict[str, Any] = {
        "id": event.event_id,
        "eventName": _sentence_case(event.event_type.value),
        "eventSec": event.event_sec,
        "playerId": event.player_id,
        "matchId": event.match_id,
        "teamId": event.team_id,
        "positions": [{"x": _coord(x), "y": _coord(y)} for x, y in event.positions],
        "subEventId": event.subtype_id,
        "subEventName": event.subtype_raw
        if event.subtype_raw is not None
        else (_sentence_case(event.subtype) if event.subtype else None),
        "tags": [{"id": t} for t in sorted(event.tags, key=lambda t: (isinstance(t, str), t))],
    }
    if event.period is not Period.FIRST_HALF:
        record["matchPeriod"] = {
            Period.SECOND_HALF: "2H",
            Period.EXTRA: "E1",
        }[event.period]
    return record


def _parse_player(record: Mapping[str, Any]) -> PlayerRecord:
    player_id = _as_int(_require(record, "playerId"), "playerId")
    name = str(record.get("shortName", f"player {player_id}"))
    role = record.get("role")
    is_gk = False
    if isinstance(role, Mapping):
        markers = {str(v).strip().lower() for v in role.values() if isinstance(v, str)}
        is_gk = bool(markers & {"gk", "goalkeeper"})
    elif isinstance(role, str):
        is_gk = role.strip().lower() in {"gk", "goalkeeper"}
    club = record.get("currentTeamId")
    return PlayerRecord(
        player_id=player_id,
        name=name,
        is_goalkeeper=is_gk,
        club_id=_as_int(club, "currentTeamId") if club is not None else None,
    )


def _parse_match(record: Mapping[str, Any]) -> MatchRecord:
    match_id = _as_int(_require(record, "matchId"), "matchId")
    competition_id = _as_int(record.get("competitionId", 0), "competitionId")
    season_id = _as_int(record.get("seasonId", 0), "seasonId")
    teams_data = _require(record, "teamsData")
    if not isinstance(teams_data, Mapping) or len(teams_data) != 2:
        raise ValidationError(f"match {match_id}: teamsData must describe exactly 2 teams")
    home = away = None
    scores: dict[int, int] = {}
    for key, team in teams_data.items():
        team_id = _as_int(key, "teamsData")
        side = str(team.get("side", "")).lower()
        scores[team_id] = _as_int(_require(team, "score"), "score")
        if side == "home":
            home = team_id
        elif side == "away":
            away = team_id
        else:
            raise ValidationError(f"match {match_id}: team {team_id} has no home/away side")
    assert home is not None and away is not None
    if scores[home] > scores[away]:
        outcomes = {home: 1, away: 0}
    elif scores[away] > scores[home]:
        outcomes = {home: 0, away: 1}
    else:
        outcomes = {home: 0, away: 0}
    return MatchRecord(
        match_id=match_id,
        competition_id=competition_id,
        season_id=season_id,
        home_team_id=home,
        away_team_id=away,
        team_scores=scores,
        outcomes=outcomes,
        player_goals={},
    )


@dataclass
class EventStore:
    """Validated, indexed corpus of events, matches, players and competitions.

    Events are stored in canonical order (period, seconds, event id) inside
    each match and matches are ordered chronologically by ascending match id.
    ``warnings`` counts records dropped during lenient ingestion, by reason.
    """

    events: tuple[Event, ...]
    matches: dict[int, MatchRecord]
    players: dict[int, PlayerRecord]
    competitions: dict[int, CompetitionRecord]
    warnings: dict[str, int] = field(default_factory=dict)
    _by_player_match: dict[tuple[int, int], tuple[Event, ...]] = field(
        default_factory=dict, repr=False
    )

    def __post_init__(self) -> None:
        if not self._by_player_match:
            index: dict[tuple[int, int], list[Event]] = {}
            for ev in self.events:
                index.setdefault((ev.player_id, ev.match_id), []).append(ev)
            self._by_player_match = {k: tuple(v) for k, v in index.items()}

    def player_match_events(self, player_id: int, match_id: int) -> tuple[Event, ...]:
        return self._by_player_match.get((player_id, match_id), ())

    def player_match_slices(self) -> Iterator[tuple[tuple[int, int], tuple[Event, ...]]]:
        yield from self._by_player_match.items()

    def match_ids(self) -> list[int]:
        return sorted(self.matches)

    def __len__(self) -> int:
        return len(self.events)


def build_store(
    event_records: Iterable[Mapping[str, Any] | str | bytes],
    match_records: Iterable[Mapping[str, Any]],
    player_records: Iterable[Mapping[str, Any]],
    competition_records: Iterable[Mapping[str, Any]] | None = None,
    *,
    keep_goalkeepers: bool = False,
    strict: bool = False,
) -> EventStore:
    """Assemble an :class:`EventStore` from decoded wire records.

    Lenient mode (the default) drops events with a missing position or an
    unknown event type and counts them in ``store.warnings``; strict mode
    raises instead.  Goalkeeper events are excluded unless asked otherwise.
    Dangling player or match references are an error in either mode.
    """
    players = {}
    for rec in player_records:
        p = _parse_player(rec)
        players[p.player_id] = p
    matches = {}
    for rec in match_records:
        m = _parse_match(rec)
        matches[m.match_id] = m

    competitions: dict[int, CompetitionRecord] = {}
    if competition_records:
        for rec in competition_records:
            comp = CompetitionRecord(
                competition_id=_as_int(_require(rec, "competitionId"), "competitionId"),
                name=str(rec.get("name", "")),
                area=str(rec.get("area", "")),
                kind=str(rec.get("type", "")),
            )
            competitions[comp.competition_id] = comp
    for m in matches.values():
        competitions.setdefault(m.competition_id, CompetitionRecord(m.competition_id))

    warnings = Counter()
    events: list[Event] = []
    dangling_players: set[int] = set()
    dangling_matches: set[int] = set()
    for rec in event_records:
        try:
            ev = parse_event(rec)
        except MissingPositionError:
            if strict:
                raise
            warnings["missing_position"] += 1
            continue
        except ValidationError:
            if strict:
                raise
            warnings["invalid_event"] += 1
            continue
        if ev.player_id not in players:
            dangling_players.add(ev.player_id)
            continue
        if ev.match_id not in matches:
            dangling_matches.add(ev.match_id)
            continue
        if not keep_goalkeepers and players[ev.player_id].is_goalkeeper:
            warnings["goalkeeper_excluded"] += 1
            continue
        events.append(ev)

    if dangling_players or dangling_matches:
        parts = []
        if dangling_players:
            parts.append(f"unknown players {sorted(dangling_players)}")
        if dangling_matches:
            parts.append(f"unknown matches {sorted(dangling_matches)}")
        raise IngestError("dangling event references: " + "; ".join(parts))

    events.sort(key=lambda e: (e.match_id, *e.sort_key()))

    by_match: dict[int, list[Event]] = {m: [] for m in matches}
    for ev in events:
        by_match[ev.match_id].append(ev)
    rebuilt = {}
    for match_id in sorted(matches):
        m = matches[match_id]
        match_events = tuple(by_match[match_id])
        goals: Counter = Counter()
        for ev in match_events:
            if event_has_tag(ev, "goal"):
                goals[(ev.player_id, ev.team_id)] += 1
        rebuilt[match_id] = MatchRecord(
            match_id=m.match_id,
            competition_id=m.competition_id,
            season_id=m.season_id,
            home_team_id=m.home_team_id,
            away_team_id=m.away_team_id,
            team_scores=m.team_scores,
            outcomes=m.outcomes,
            player_goals=dict(goals),
            events=match_events,
        )

    return EventStore(
        events=tuple(events),
        matches=rebuilt,
        players=players,
        competitions=competitions,
        warnings=dict(warnings),
    )


def _read_records(path: Path) -> list[dict[str, Any]]:
    """Read a JSON array or JSON-lines file of records."""
    text = path.read_text()
    stripped = text.lstrip()
    if not stripped:
        return []
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path.name}: {exc.msg}", exc.pos) from exc
        if not isinstance(data, list):
            raise ValidationError(f"{path.name}: expected a JSON array of records")
        return data
    records = []
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path.name}: {exc.msg}", offset + exc.pos) from exc
        offset += len(line.encode("utf-8"))
    return records


def load_corpus(
    events_path: str | Path,
    matches_path: str | Path,
    players_path: str | Path,
    competitions_path: str | Path | None = None,
    *,
    keep_goalkeepers: bool = False,
    strict: bool = False,
) -> EventStore:
    """Load a corpus from events/matches/players files (JSON array or JSONL)."""
    comps = _read_records(Path(competitions_path)) if competitions_path else None
    return build_store(
        _read_records(Path(events_path)),
        _read_records(Path(matches_path)),
        _read_records(Path(players_path)),
        comps,
        keep_goalkeepers=keep_goalkeepers,
        strict=strict,
    )


_STORE_FORMAT_VERSION = 1


def save_store(store: EventStore, path: str | Path) -> None:
    """Persist a store to a single JSON file."""
    payload = {
        "version": _STORE_FORMAT_VERSION,
        "warnings": store.warnings,
        "events": [event_to_record(ev) for ev in store.events],
        "matches": [
            {
                "matchId": m.match_id,
                "competitionId": m.competition_id,
                "seasonId": m.season_id,
                "teamsData": {
                    str(m.home_team_id): {"side": "home", "score": m.team_scores[m.home_team_id]},
                    str(m.away_team_id): {"side": "away", "score": m.team_scores[m.away_team_id]},
                },
            }
            for m in store.matches.values()
        ],
        "players": [
            {
                "playerId": p.player_id,
                "shortName": p.name,
                "role": "GK" if p.is_goalkeeper else "",
                **({"currentTeamId": p.club_id} if p.club_id is not None else {}),
            }
            for p in store.players.values()
        ],
        "competitions": [
            {"competitionId": c.competition_id, "name": c.name, "area": c.area, "type": c.kind}
            for c in store.competitions.values()
        ],
    }
    Path(path).write_text(json.dumps(payload))


def load_store(path: str | Path) -> EventStore:
    """Load a store persisted by :func:`save_store`."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"store file: {exc.msg}", exc.pos) from exc
    if payload.get("version") != _STORE_FORMAT_VERSION:
        raise ValidationError(f"unsupported store file version {payload.get('version')!r}")
    store = build_store(
        payload["events"],
        payload["matches"],
        payload["players"],
        payload.get("competitions"),
        keep_goalkeepers=True,  # exclusion already happened when the store was built
    )
    store.warnings = dict(payload.get("warnings", {}))
    return store


@dataclass(frozen=True, slots=True)
class DistSummary:
    """Mean/population-std summary of a sample."""

    mean: float
    std: float
    min: float
    max: float
    count: int


def _summarize(values: list[float]) -> DistSummary:
    import numpy as np

    arr = np.asarray(values, dtype=float)
    return DistSummary(
        mean=float(arr.mean()),
        std=float(arr.std()),
        min=float(arr.min()),
        max=float(arr.max()),
        count=len(arr),
    )


@dataclass(frozen=True, slots=True)
class CorpusStats:
    events_per_match: DistSummary
    events_per_player_match: DistSummary
    inter_event_seconds: DistSummary
    event_type_frequencies: dict[str, float]
    n_events: int
    n_matches: int
    n_players: int


def corpus_stats(store: EventStore) -> CorpusStats:
    """Descriptive statistics over a store.

    Inter-event times are gaps between consecutive events within the same
    match and period, in canonical order.  Type frequencies sum to 1.
    """
    if not store.events:
        raise EmptyCorpusError("cannot compute statistics on an empty corpus")

    per_match = [float(len(m.events)) for m in store.matches.values()]
    per_player_match = [float(len(evs)) for _, evs in store.player_match_slices()]

    gaps: list[float] = []
    for m in store.matches.values():
        prev: Event | None = None
        for ev in m.events:
            if prev is not None and prev.period is ev.period:
                gaps.append(ev.event_sec - prev.event_sec)
            prev = ev
    if not gaps:
        gaps = [0.0]

    counts = Counter(ev.event_type.value for ev in store.events)
    total = len(store.events)
    freqs = {name: counts.get(name, 0) / total for name in sorted(c.value for c in EventType)}

    return CorpusStats(
        events_per_match=_summarize(per_match),
        events_per_player_match=_summarize(per_player_match),
        inter_event_seconds=_summarize(gaps),
        event_type_frequencies=freqs,
        n_events=total,
        n_matches=len(store.matches),
        n_players=len(store.players),
    )
